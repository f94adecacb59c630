//! Exact multivariate Laurent polynomials in Z_1, ..., Z_k and the formal
//! prime power q, with rational coefficients, plus the palindromic
//! fold/unfold transform between P(X) = prod (X - x_i)(X - x_i^{-1}) and
//! Ptilde(X) = prod (X - (x_i + x_i^{-1})).
//!
//! The q-exponent is stored doubled so that half-integer powers of q can
//! appear in intermediate computations; results exposed externally must
//! have integral q-exponents.

use crate::poly::Poly;
use crate::ring::{rat_from_string, rat_to_string, Rationals, Ring};
use crate::weyl::{GroupDescriptor, SignedPerm};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable count mismatch")]
    VarMismatch,
    #[error("missing or non-invertible value for a variable with negative exponent")]
    BadAssignment,
    #[error("polynomial is not palindromic monic of even degree")]
    NotPalindromic,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("result has a half-integer q-exponent")]
    HalfIntegerQ,
}

/// Exponent vector: one slot per Z-variable, then the doubled q-exponent.
type Expo = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    /// number of Z-variables
    pub nvars: usize,
    pub terms: BTreeMap<Expo, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars + 1], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::constant(nvars, BigRational::one())
    }

    /// The monomial Z_i^e (1-based variable index).
    pub fn var(nvars: usize, i: usize, e: i32) -> Self {
        assert!(1 <= i && i <= nvars);
        let mut expo = vec![0; nvars + 1];
        expo[i - 1] = e;
        let mut p = LaurentPoly::zero(nvars);
        p.terms.insert(expo, BigRational::one());
        p
    }

    /// q^e with integral exponent e.
    pub fn q_power(nvars: usize, e: i32) -> Self {
        Self::q_half_power(nvars, 2 * e)
    }

    /// q^{e2/2}: exponent given in halves.
    pub fn q_half_power(nvars: usize, e2: i32) -> Self {
        let mut expo = vec![0; nvars + 1];
        expo[nvars] = e2;
        let mut p = LaurentPoly::zero(nvars);
        p.terms.insert(expo, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Expo, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let key: Vec<Expo> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Expo = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Substitution of the action of a signed permutation on the Z-variables:
    /// sigma sends Z_i to Z_{|sigma(i)|}^{sign sigma(i)}.
    pub fn act_signed(&self, sigma: &SignedPerm) -> Self {
        assert_eq!(self.nvars, sigma.n as usize);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0i32; self.nvars + 1];
            ne[self.nvars] = e[self.nvars];
            for i in 0..self.nvars {
                let img = sigma.apply((i + 1) as i32);
                let idx = (img.abs() - 1) as usize;
                ne[idx] += if img > 0 { e[i] } else { -e[i] };
            }
            out.insert(ne, c.clone());
        }
        out
    }

    /// Exact evaluation; z_values must cover all Z-variables, q invertible
    /// where needed. Fails on half-integer q-exponents.
    pub fn eval(
        &self,
        z_values: &[BigRational],
        q_value: &BigRational,
    ) -> Result<BigRational, LaurentError> {
        if z_values.len() != self.nvars {
            return Err(LaurentError::VarMismatch);
        }
        let qq = Rationals;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            if e[self.nvars] % 2 != 0 {
                return Err(LaurentError::HalfIntegerQ);
            }
            let mut t = c.clone();
            for (i, &exp) in e.iter().take(self.nvars).enumerate() {
                if exp == 0 {
                    continue;
                }
                if z_values[i].is_zero() && exp < 0 {
                    return Err(LaurentError::BadAssignment);
                }
                t *= qq.pow(&z_values[i], exp as i64);
            }
            let qe = e[self.nvars] / 2;
            if qe != 0 {
                if q_value.is_zero() && qe < 0 {
                    return Err(LaurentError::BadAssignment);
                }
                t *= qq.pow(q_value, qe as i64);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// True when every term has an integral q-exponent.
    pub fn has_integral_q(&self) -> bool {
        self.terms.keys().all(|e| e[self.nvars] % 2 == 0)
    }
}

/// Serialized term list: exponents [z_1, ..., z_k, q], coefficient "p/q".
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LaurentJson {
    pub nvars: usize,
    pub terms: Vec<LaurentTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LaurentTermJson {
    pub exponents: Vec<i64>,
    pub coeff: String,
}

impl LaurentPoly {
    pub fn to_json(&self) -> Result<LaurentJson, LaurentError> {
        if !self.has_integral_q() {
            return Err(LaurentError::HalfIntegerQ);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exps: Vec<i64> = e.iter().take(self.nvars).map(|&x| x as i64).collect();
                exps.push((e[self.nvars] / 2) as i64);
                LaurentTermJson {
                    exponents: exps,
                    coeff: rat_to_string(c),
                }
            })
            .collect();
        Ok(LaurentJson {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn from_json(j: &LaurentJson) -> Option<Self> {
        let mut p = LaurentPoly::zero(j.nvars);
        for t in &j.terms {
            if t.exponents.len() != j.nvars + 1 {
                return None;
            }
            let mut e: Vec<i32> = t.exponents.iter().map(|&x| x as i32).collect();
            let q = e.pop().unwrap();
            e.push(2 * q);
            p.insert(e, rat_from_string(&t.coeff)?);
        }
        Some(p)
    }
}

/// Sum of e_j(sigma(Z_1, ..., Z_ns)) over the full Weyl group W^s of the
/// descriptor (each group element contributes one summand).
pub fn orbit_sum(desc: &GroupDescriptor, j: usize) -> Result<LaurentPoly, LaurentError> {
    let ns = desc.n_s;
    if j < 1 || j > ns {
        return Err(LaurentError::VarMismatch);
    }
    let elems = crate::weyl::enumerate_group(desc).map_err(|_| LaurentError::VarMismatch)?;
    let ej = elem_sym_in_vars(ns, j);
    let mut acc = LaurentPoly::zero(ns);
    for sigma in &elems {
        acc = acc.add(&ej.act_signed(sigma));
    }
    Ok(acc)
}

/// The elementary symmetric polynomial e_j(Z_1, ..., Z_ns) as a Laurent
/// polynomial.
pub fn elem_sym_in_vars(ns: usize, j: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(ns);
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        let mut e = vec![0i32; ns + 1];
        for &i in &idx {
            e[i] = 1;
        }
        acc.insert(e, BigRational::one());
        // next combination
        let mut k = j;
        loop {
            if k == 0 {
                return acc;
            }
            k -= 1;
            if idx[k] + 1 <= ns - (j - k) {
                idx[k] += 1;
                for t in k + 1..j {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Sum over j-subsets I of {1..ns} of prod_{i in I} (Z_i + Z_i^{-1}); the
/// hyperoctahedral orbit of the extreme monomial Z_1...Z_j, with extreme
/// coefficient 1. This is the normalization under which the Satake image
/// evaluates exactly to the displayed Hecke eigenvalue.
pub fn signed_subset_sum(ns: usize, j: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(ns);
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        // expand prod (Z_i + Z_i^{-1}) over the chosen subset
        let mut term = LaurentPoly::one(ns);
        for &i in &idx {
            let pair = LaurentPoly::var(ns, i + 1, 1).add(&LaurentPoly::var(ns, i + 1, -1));
            term = term.mul(&pair);
        }
        acc = acc.add(&term);
        let mut k = j;
        loop {
            if k == 0 {
                return acc;
            }
            k -= 1;
            if idx[k] + 1 <= ns - (j - k) {
                idx[k] += 1;
                for t in k + 1..j {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A monic polynomial P of even degree 2r whose roots come in pairs
/// x, x^{-1}, together with the degree-r polynomial Ptilde satisfying
/// X^r Ptilde(X + X^{-1}) = P(X).
#[derive(Clone, Debug, PartialEq)]
pub struct PalindromicPair {
    pub p: Poly<Rationals>,
    pub ptilde: Poly<Rationals>,
}

/// unfold: Ptilde -> P via P(X) = X^r Ptilde(X + X^{-1}).
pub fn unfold(ptilde: &Poly<Rationals>) -> Result<Poly<Rationals>, LaurentError> {
    let q = Rationals;
    if !ptilde.is_monic(&q) {
        return Err(LaurentError::NotMonic);
    }
    let r = ptilde.degree();
    // X^r * sum c_j (X + 1/X)^j = sum c_j X^{r-j} (X^2+1)^j
    let x2p1 = Poly::new(&q, vec![BigRational::one(), BigRational::zero(), BigRational::one()]);
    let mut acc = Poly::<Rationals>::zero();
    for (j, c) in ptilde.coeffs.iter().enumerate() {
        let mut t = x2p1.pow(&q, j);
        t = t.scale(&q, c);
        // multiply by X^{r-j}
        let mut shifted = vec![BigRational::zero(); r - j];
        shifted.extend(t.coeffs);
        acc = acc.add(&q, &Poly::new(&q, shifted));
    }
    Ok(acc)
}

/// fold: P -> Ptilde by triangular coefficient elimination; errors unless
/// P is monic palindromic of even degree.
pub fn fold(p: &Poly<Rationals>) -> Result<Poly<Rationals>, LaurentError> {
    let q = Rationals;
    if !p.is_monic(&q) {
        return Err(LaurentError::NotMonic);
    }
    let deg = p.degree();
    if deg % 2 != 0 {
        return Err(LaurentError::NotPalindromic);
    }
    let r = deg / 2;
    // solve for c_r = 1, c_{r-1}, ..., c_0 from the top coefficients
    let mut c = vec![BigRational::zero(); r + 1];
    c[r] = BigRational::one();
    // coefficient of X^{r+j} in X^r (X + 1/X)^m is binom(m, (m-j)/2)
    let binom = |m: usize, k: usize| -> BigRational {
        if k > m {
            return BigRational::zero();
        }
        let mut num = BigRational::one();
        for t in 0..k {
            num *= BigRational::from_integer(((m - t) as i64).into());
            num /= BigRational::from_integer(((t + 1) as i64).into());
        }
        num
    };
    for j in (0..r).rev() {
        // target: coefficient of X^{r+j} in P
        let mut val = p.coeff(&q, r + j);
        for m in (j + 1)..=r {
            if (m - j) % 2 == 0 {
                val -= &c[m] * binom(m, (m - j) / 2);
            }
        }
        // contribution of c_j itself: binom(j, 0) = 1
        c[j] = val;
    }
    let ptilde = Poly::new(&q, c);
    // verify the full identity; this is what rejects non-palindromic input
    let back = unfold(&ptilde)?;
    if &back != p {
        return Err(LaurentError::NotPalindromic);
    }
    Ok(ptilde)
}

pub fn fold_pair(p: &Poly<Rationals>) -> Result<PalindromicPair, LaurentError> {
    let ptilde = fold(p)?;
    Ok(PalindromicPair {
        p: p.clone(),
        ptilde,
    })
}
