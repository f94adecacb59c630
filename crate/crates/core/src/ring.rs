//! Coefficient rings used across the toolkit: exact rationals, truncated
//! local rings Z/p^e (finite fields when e = 1) and dual numbers over them.
//!
//! Rings are passed around as small handle objects and elements are plain
//! values; every operation is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Ring {
    type El: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Multiplicative inverse, when the element is a unit.
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn from_i64(&self, n: i64) -> Self::El;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        *a == self.zero()
    }
    fn is_unit(&self, a: &Self::El) -> bool {
        self.inv(a).is_some()
    }
    fn pow(&self, a: &Self::El, n: i64) -> Self::El {
        if n < 0 {
            let inv = self.inv(a).expect("negative power of a non-unit");
            return self.pow(&inv, -n);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
    fn sum<I: IntoIterator<Item = Self::El>>(&self, it: I) -> Self::El {
        it.into_iter().fold(self.zero(), |a, b| self.add(&a, &b))
    }
    fn product<I: IntoIterator<Item = Self::El>>(&self, it: I) -> Self::El {
        it.into_iter().fold(self.one(), |a, b| self.mul(&a, &b))
    }
}

/// The field of rationals with arbitrary-precision coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Serialize a rational as "num/den" ("num" when the denominator is 1).
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// The truncated local ring Z/p^e with p an odd prime; e = 1 gives F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zpe {
    pub p: u64,
    pub e: u32,
    pub modulus: u64,
}

impl Zpe {
    pub fn new(p: u64, e: u32) -> Self {
        assert!(p >= 2 && e >= 1, "invalid residue ring parameters");
        let modulus = p.checked_pow(e).expect("p^e overflows u64");
        // all arithmetic goes through u128, so modulus^2 must fit there
        assert!(modulus < (1u64 << 62), "p^e too large");
        Zpe { p, e, modulus }
    }

    pub fn field(p: u64) -> Self {
        Zpe::new(p, 1)
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }

    /// p-adic valuation of a residue, capped at the precision e.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.modulus;
        if a == 0 {
            return self.e;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// The residue map Z/p^e -> F_p.
    pub fn residue_field(&self) -> Zpe {
        Zpe::field(self.p)
    }

    pub fn to_residue(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Exact division a / (p^v * unit) when v_p(a) >= v; None otherwise.
    pub fn divide_exact(&self, a: u64, b: u64) -> Option<u64> {
        let a = a % self.modulus;
        let b = b % self.modulus;
        let vb = self.valuation(b);
        if vb == self.e {
            return None;
        }
        if self.valuation(a) < vb {
            return None;
        }
        let pv = self.p.pow(vb);
        let a1 = a / pv;
        let b1 = b / pv;
        // b1 is now a unit modulo p^(e-vb); lift its inverse mod p^e
        let r = Zpe::new(self.p, self.e);
        let binv = r.inv(&(b1 % self.modulus))?;
        Some(r.mul(&(a1 % self.modulus), &binv))
    }
}

impl Ring for Zpe {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a % self.modulus == 0 {
            0
        } else {
            self.modulus - (*a % self.modulus)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        let a = *a % self.modulus;
        if a == 0 || a % self.p == 0 {
            return None;
        }
        // extended Euclid on (a, modulus)
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.modulus as i128) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
}

/// Dual numbers a + b*eps (eps^2 = 0) over a base ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualRing<R: Ring>(pub R);

impl<R: Ring> Ring for DualRing<R> {
    type El = (R::El, R::El);

    fn zero(&self) -> Self::El {
        (self.0.zero(), self.0.zero())
    }
    fn one(&self) -> Self::El {
        (self.0.one(), self.0.zero())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (self.0.add(&a.0, &b.0), self.0.add(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        (self.0.neg(&a.0), self.0.neg(&a.1))
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (
            self.0.mul(&a.0, &b.0),
            self.0.add(&self.0.mul(&a.0, &b.1), &self.0.mul(&a.1, &b.0)),
        )
    }
    fn inv(&self, a: &Self::El) -> Option<Self::El> {
        // (a + b eps)^-1 = a^-1 - a^-2 b eps
        let ai = self.0.inv(&a.0)?;
        let corr = self.0.neg(&self.0.mul(&self.0.mul(&ai, &ai), &a.1));
        Some((ai, corr))
    }
    fn from_i64(&self, n: i64) -> Self::El {
        (self.0.from_i64(n), self.0.zero())
    }
}
