//! The normalized Satake transform for the four classical kinds, the
//! unramified Hecke eigenvalue formula, the palindromic Hecke
//! characteristic polynomial and the diagonal of the V-operator on
//! U_0-invariants.
//!
//! The Satake image of T^(j) is pinned to q^{E(j)} times the sum over
//! j-subsets I of prod_{i in I}(Z_i + Z_i^{-1}); under Z_i = chi_i/q this
//! evaluates exactly to the displayed eigenvalue
//! q^{E(j)} sum_{I,J} prod_{i in J}(chi_i/q) prod_{i in I\J}(chi_i/q)^{-1}.

use crate::laurent::{signed_subset_sum, unfold, LaurentError, LaurentPoly, PalindromicPair};
use crate::poly::Poly;
use crate::ring::{Rationals, Ring};
use crate::weyl::GroupDescriptor;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SatakeError {
    #[error("index j out of range")]
    BadIndex,
    #[error("chi must consist of n_s invertible scalars")]
    BadChi,
    #[error("q must be invertible")]
    BadQ,
    #[error("representative tuple is not valid for P_ns / P_(ns - n0)")]
    BadRepresentative,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Unramified input data: exact q and the values chi_i(pi).
#[derive(Clone, Debug)]
pub struct HeckeEvalInput {
    pub desc: GroupDescriptor,
    pub q: BigRational,
    pub chi: Vec<BigRational>,
}

impl HeckeEvalInput {
    pub fn new(
        desc: GroupDescriptor,
        q: BigRational,
        chi: Vec<BigRational>,
    ) -> Result<Self, SatakeError> {
        if q.is_zero() {
            return Err(SatakeError::BadQ);
        }
        if chi.len() != desc.n_s || chi.iter().any(|c| c.is_zero()) {
            return Err(SatakeError::BadChi);
        }
        Ok(HeckeEvalInput { desc, q, chi })
    }
}

/// Satake image of the spherical operator T^(j), as a Laurent polynomial in
/// Z_1, ..., Z_ns and q.
pub fn satake_image(desc: &GroupDescriptor, j: usize) -> Result<LaurentPoly, SatakeError> {
    if j < 1 || j > desc.n_s {
        return Err(SatakeError::BadIndex);
    }
    let e = desc.satake_exponent(j);
    let body = signed_subset_sum(desc.n_s, j);
    Ok(body.mul(&LaurentPoly::q_power(desc.n_s, e as i32)))
}

/// The eigenvalue of T^(j) on the spherical line, symbolically in q and the
/// chi values (variable i is chi_i).
pub fn unramified_eigenvalue_symbolic(
    desc: &GroupDescriptor,
    j: usize,
) -> Result<LaurentPoly, SatakeError> {
    if j < 1 || j > desc.n_s {
        return Err(SatakeError::BadIndex);
    }
    let ns = desc.n_s;
    let mut acc = LaurentPoly::zero(ns);
    let mut subset: Vec<usize> = (0..j).collect();
    loop {
        // sum over J subset of I: prod_{i in J} chi_i q^{-1} * prod_{I\J} (chi_i q^{-1})^{-1}
        for mask in 0u32..(1 << j) {
            let mut term = LaurentPoly::one(ns);
            for (t, &i) in subset.iter().enumerate() {
                let sign = if mask >> t & 1 == 1 { 1 } else { -1 };
                term = term.mul(&LaurentPoly::var(ns, i + 1, sign));
                term = term.mul(&LaurentPoly::q_power(ns, -sign));
            }
            acc = acc.add(&term);
        }
        let mut k = j;
        let done = loop {
            if k == 0 {
                break true;
            }
            k -= 1;
            if subset[k] + 1 <= ns - (j - k) {
                subset[k] += 1;
                for t in k + 1..j {
                    subset[t] = subset[t - 1] + 1;
                }
                break false;
            }
        };
        if done {
            break;
        }
    }
    Ok(acc.mul(&LaurentPoly::q_power(ns, desc.satake_exponent(j) as i32)))
}

/// The eigenvalue at exact scalar inputs.
pub fn unramified_eigenvalue(input: &HeckeEvalInput, j: usize) -> Result<BigRational, SatakeError> {
    let sym = unramified_eigenvalue_symbolic(&input.desc, j)?;
    Ok(sym.eval(&input.chi, &input.q)?)
}

/// Ptilde(X) = X^ns + sum_j (-1)^j q^{-D(j)} t^(j) X^{ns-j} and its unfold.
pub fn hecke_char_poly(
    desc: &GroupDescriptor,
    t_values: &[BigRational],
    q: &BigRational,
) -> Result<PalindromicPair, SatakeError> {
    if t_values.len() != desc.n_s {
        return Err(SatakeError::BadChi);
    }
    if q.is_zero() {
        return Err(SatakeError::BadQ);
    }
    let qq = Rationals;
    let ns = desc.n_s;
    let mut coeffs = vec![BigRational::zero(); ns + 1];
    coeffs[ns] = BigRational::one();
    for j in 1..=ns {
        // q-exponent of ttilde^(j): -base + (j + ns - n) j, i.e. the Satake
        // exponent with the sign of the base term flipped
        let njj = (j as i64 + ns as i64 - desc.n as i64) * j as i64;
        let base = match desc.kind {
            crate::weyl::GroupKind::Sp => ns as i64 * (ns as i64 + 1) / 2,
            _ => ns as i64 * (ns as i64 - 1) / 2,
        };
        let qe = qq.pow(q, -base + njj);
        let sign = if j % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        coeffs[ns - j] = sign * qe * &t_values[j - 1];
    }
    let ptilde = Poly::new(&qq, coeffs);
    let p = unfold(&ptilde)?;
    Ok(PalindromicPair { p, ptilde })
}

/// The representative set S for P_ns / P_(ns - n0): injective n0-tuples
/// (s(1), ..., s(n0)) of elements from {1, ..., ns}.
pub fn block_permutation_reps(ns: usize, n0: usize) -> Vec<Vec<usize>> {
    assert!(n0 <= ns);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(ns: usize, n0: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n0 {
            out.push(cur.clone());
            return;
        }
        for v in 1..=ns {
            if !cur.contains(&v) {
                cur.push(v);
                rec(ns, n0, cur, out);
                cur.pop();
            }
        }
    }
    rec(ns, n0, &mut cur, &mut out);
    out
}

/// Diagonal entry of the triangular V-operator at the representative s:
/// prod_{i=1}^{n0} chi_{s(i)} q^{-1}.
pub fn v_operator_diagonal(
    input: &HeckeEvalInput,
    n0: usize,
    s: &[usize],
) -> Result<BigRational, SatakeError> {
    let ns = input.desc.n_s;
    if n0 > ns || s.len() != n0 {
        return Err(SatakeError::BadRepresentative);
    }
    let mut seen = vec![false; ns + 1];
    for &v in s {
        if v < 1 || v > ns || seen[v] {
            return Err(SatakeError::BadRepresentative);
        }
        seen[v] = true;
    }
    let qq = Rationals;
    let qinv = qq.inv(&input.q).ok_or(SatakeError::BadQ)?;
    Ok(s.iter()
        .map(|&i| &input.chi[i - 1] * &qinv)
        .fold(BigRational::one(), |a, b| a * b))
}

/// Outcome of the divisibility cross-check on the V-operator diagonal.
#[derive(Clone, Debug)]
pub struct VDivisibility {
    /// characteristic polynomial of the diagonal factor spectrum
    /// prod over s in S, i <= n0 of (X - chi_{s(i)} q^{-1})
    pub factor_charpoly: Poly<Rationals>,
    /// P^multiplicity with multiplicity = n0 (ns-1)!/(ns-n0)!
    pub divides: bool,
    pub multiplicity: usize,
}

/// Exact division check: the factor spectrum of the V-diagonal against
/// P^{n0 (ns-1)!/(ns-n0)!} where P is the unfold of Ptilde built from the
/// eigenvalues t^(j) of the same character data.
pub fn v_charpoly_divisibility(
    input: &HeckeEvalInput,
    n0: usize,
) -> Result<VDivisibility, SatakeError> {
    let ns = input.desc.n_s;
    if n0 < 1 || n0 > ns {
        return Err(SatakeError::BadRepresentative);
    }
    let qq = Rationals;
    let t_values: Vec<BigRational> = (1..=ns)
        .map(|j| unramified_eigenvalue(input, j))
        .collect::<Result<_, _>>()?;
    let pair = hecke_char_poly(&input.desc, &t_values, &input.q)?;
    let reps = block_permutation_reps(ns, n0);
    let mut roots = Vec::new();
    let qinv = qq.inv(&input.q).ok_or(SatakeError::BadQ)?;
    for s in &reps {
        // the diagonal entry is the product of the per-slot factors; the
        // factor spectrum records each slot separately
        let mut prod = BigRational::one();
        for &i in s {
            let f = &input.chi[i - 1] * &qinv;
            prod *= &f;
            roots.push(f);
        }
        let direct = v_operator_diagonal(input, n0, s)?;
        debug_assert_eq!(prod, direct);
    }
    let factor_charpoly = Poly::from_roots(&qq, roots.iter());
    let mult = n0 * factorial(ns - 1) / factorial(ns - n0);
    let big = pair.p.pow(&qq, mult);
    let divides = big.divide_exact_monic(&qq, &factor_charpoly).is_some();
    Ok(VDivisibility {
        factor_charpoly,
        divides,
        multiplicity: mult,
    })
}

fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use crate::weyl::GroupKind;
    use rand::{Rng, SeedableRng};

    fn so3() -> GroupDescriptor {
        GroupDescriptor::new(GroupKind::SoOdd, 3).unwrap()
    }

    #[test]
    fn satake_image_rank_one() {
        // SO_3, j = 1: exponent E(1) = 0 + (3-1-1)*1 = 1
        let img = satake_image(&so3(), 1).unwrap();
        let expect = LaurentPoly::var(1, 1, 1)
            .add(&LaurentPoly::var(1, 1, -1))
            .mul(&LaurentPoly::q_power(1, 1));
        assert_eq!(img, expect);
        // Sp_2, j = 1: E(1) = 1 + (2-1-1)*1 = 1
        let sp2 = GroupDescriptor::new(GroupKind::Sp, 2).unwrap();
        let img = satake_image(&sp2, 1).unwrap();
        let expect = LaurentPoly::var(1, 1, 1)
            .add(&LaurentPoly::var(1, 1, -1))
            .mul(&LaurentPoly::q_power(1, 1));
        assert_eq!(img, expect);
    }

    #[test]
    fn eigenvalue_rank_one() {
        // SO_3: c + q^2/c
        let input = HeckeEvalInput::new(so3(), rat(3, 1), vec![rat(5, 1)]).unwrap();
        let v = unramified_eigenvalue(&input, 1).unwrap();
        assert_eq!(v, rat(5, 1) + rat(9, 5));
    }

    #[test]
    fn eigenvalue_inversion_symmetry_rank_one() {
        // chi -> q^2 / chi fixes the eigenvalue when n_s = 1
        let q = rat(7, 1);
        let c = rat(3, 2);
        let c2 = &q * &q / &c;
        let a = unramified_eigenvalue(&HeckeEvalInput::new(so3(), q.clone(), vec![c]).unwrap(), 1)
            .unwrap();
        let b =
            unramified_eigenvalue(&HeckeEvalInput::new(so3(), q, vec![c2]).unwrap(), 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn satake_coherence_all_kinds() {
        // eval(satake_image) at Z_i = chi_i / q equals the eigenvalue
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let descs = [
            GroupDescriptor::new(GroupKind::SoOdd, 5).unwrap(),
            GroupDescriptor::new(GroupKind::Sp, 4).unwrap(),
            GroupDescriptor::new(GroupKind::SoEvenSplit, 6).unwrap(),
            GroupDescriptor::new(GroupKind::SoEvenQuasi, 8).unwrap(),
        ];
        for desc in descs {
            for j in 1..=desc.n_s {
                for _ in 0..5 {
                    let q = rat(rng.gen_range(2i64..=19), 1);
                    let chi: Vec<BigRational> = (0..desc.n_s)
                        .map(|_| rat(rng.gen_range(1i64..=9), rng.gen_range(1i64..=5)))
                        .collect();
                    let input = HeckeEvalInput::new(desc, q.clone(), chi.clone()).unwrap();
                    let eig = unramified_eigenvalue(&input, j).unwrap();
                    let img = satake_image(&desc, j).unwrap();
                    let z: Vec<BigRational> = chi.iter().map(|c| c / &q).collect();
                    let via_image = img.eval(&z, &q).unwrap();
                    assert_eq!(eig, via_image, "kind {:?} j {}", desc.kind, j);
                }
            }
        }
    }

    #[test]
    fn char_poly_rank_one() {
        // SO_3: Ptilde = X - q^{-1} t^(1); with t = c + q^2/c the root is
        // c/q + q/c
        let q = rat(3, 1);
        let c = rat(5, 1);
        let t = &c + &q * &q / &c;
        let pair = hecke_char_poly(&so3(), &[t], &q).unwrap();
        assert_eq!(pair.ptilde.degree(), 1);
        let root = -pair.ptilde.coeffs[0].clone();
        assert_eq!(root, &c / &q + &q / &c);
        // P has roots c/q and q/c
        let qq = Rationals;
        assert!(pair.p.eval(&qq, &(&c / &q)).is_zero());
        assert!(pair.p.eval(&qq, &(&q / &c)).is_zero());
    }

    #[test]
    fn char_poly_all_roots_one() {
        // chi_i = q makes every folded root 2, so P = (X-1)^{2 ns}
        let desc = GroupDescriptor::new(GroupKind::Sp, 4).unwrap();
        let q = rat(5, 1);
        let input = HeckeEvalInput::new(desc, q.clone(), vec![q.clone(), q.clone()]).unwrap();
        let t: Vec<BigRational> = (1..=2)
            .map(|j| unramified_eigenvalue(&input, j).unwrap())
            .collect();
        let pair = hecke_char_poly(&desc, &t, &q).unwrap();
        let qq = Rationals;
        let expect = Poly::from_roots(
            &qq,
            [rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)].iter(),
        );
        assert_eq!(pair.p, expect);
    }

    #[test]
    fn v_diagonal_basics() {
        let desc = GroupDescriptor::new(GroupKind::Sp, 4).unwrap();
        let q = rat(3, 1);
        let input = HeckeEvalInput::new(desc, q, vec![rat(2, 1), rat(7, 1)]).unwrap();
        // n0 = ns, s = identity: product of all chi_i / q
        let v = v_operator_diagonal(&input, 2, &[1, 2]).unwrap();
        assert_eq!(v, rat(2, 3) * rat(7, 3));
        // representative multiset cardinality ns!/(ns-n0)!
        assert_eq!(block_permutation_reps(4, 2).len(), 12);
        assert!(v_operator_diagonal(&input, 2, &[1, 1]).is_err());
    }

    #[test]
    fn v_diagonal_roots_when_n0_is_one() {
        let desc = GroupDescriptor::new(GroupKind::Sp, 4).unwrap();
        let q = rat(3, 1);
        let input = HeckeEvalInput::new(desc, q.clone(), vec![rat(2, 1), rat(7, 1)]).unwrap();
        let t: Vec<BigRational> = (1..=2)
            .map(|j| unramified_eigenvalue(&input, j).unwrap())
            .collect();
        let pair = hecke_char_poly(&desc, &t, &q).unwrap();
        let qq = Rationals;
        for s in block_permutation_reps(2, 1) {
            let v = v_operator_diagonal(&input, 1, &s).unwrap();
            assert!(pair.p.eval(&qq, &v).is_zero());
        }
    }

    #[test]
    fn divisibility_small() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for ns in 1..=3usize {
            let desc = GroupDescriptor::new(GroupKind::SoOdd, 2 * ns + 1).unwrap();
            let chi: Vec<BigRational> =
                (0..ns).map(|_| rat(rng.gen_range(2i64..=9), 1)).collect();
            let input = HeckeEvalInput::new(desc, rat(5, 1), chi).unwrap();
            for n0 in 1..=ns {
                let check = v_charpoly_divisibility(&input, n0).unwrap();
                assert!(check.divides, "ns {} n0 {}", ns, n0);
            }
        }
    }
}
