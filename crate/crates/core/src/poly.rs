//! Dense univariate polynomials over an arbitrary coefficient ring,
//! plus the handful of exact algorithms the rest of the toolkit needs:
//! monic division, division-free resultants and elementary symmetric
//! polynomials.

use crate::ring::Ring;

/// Coefficients in ascending degree order; no trailing zeros.
#[derive(Debug)]
pub struct Poly<R: Ring> {
    pub coeffs: Vec<R::El>,
}

impl<R: Ring> Clone for Poly<R> {
    fn clone(&self) -> Self {
        Poly {
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(ring: &R, mut coeffs: Vec<R::El>) -> Self {
        while coeffs.len() > 0 && ring.is_zero(coeffs.last().unwrap()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(ring: &R, c: R::El) -> Self {
        Poly::new(ring, vec![c])
    }

    pub fn x(ring: &R) -> Self {
        Poly {
            coeffs: vec![ring.zero(), ring.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial by convention.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, ring: &R, i: usize) -> R::El {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_monic(&self, ring: &R) -> bool {
        self.coeffs
            .last()
            .map(|c| *c == ring.one())
            .unwrap_or(false)
    }

    pub fn add(&self, ring: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| ring.add(&self.coeff(ring, i), &other.coeff(ring, i)))
            .collect();
        Poly::new(ring, coeffs)
    }

    pub fn neg(&self, ring: &R) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect(),
        }
    }

    pub fn sub(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul(&self, ring: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ring.add(&coeffs[i + j], &ring.mul(a, b));
            }
        }
        Poly::new(ring, coeffs)
    }

    pub fn scale(&self, ring: &R, c: &R::El) -> Self {
        Poly::new(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    pub fn pow(&self, ring: &R, n: usize) -> Self {
        let mut acc = Poly::constant(ring, ring.one());
        for _ in 0..n {
            acc = acc.mul(ring, self);
        }
        acc
    }

    pub fn eval(&self, ring: &R, x: &R::El) -> R::El {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, ring: &R) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ring.mul(&ring.from_i64(i as i64), c))
            .collect();
        Poly::new(ring, coeffs)
    }

    pub fn from_roots<'a, I: IntoIterator<Item = &'a R::El>>(ring: &R, roots: I) -> Self
    where
        R::El: 'a,
    {
        let mut acc = Poly::constant(ring, ring.one());
        for r in roots {
            let lin = Poly::new(ring, vec![ring.neg(r), ring.one()]);
            acc = acc.mul(ring, &lin);
        }
        acc
    }

    /// Division with remainder by a monic divisor.
    pub fn divrem_monic(&self, ring: &R, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(ring), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![ring.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if ring.is_zero(&c) {
                continue;
            }
            quo[i - dd] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = ring.sub(&rem[i - dd + j], &ring.mul(&c, dc));
            }
        }
        (Poly::new(ring, quo), Poly::new(ring, rem))
    }

    /// Exact division by a monic divisor; None if the remainder is nonzero.
    pub fn divide_exact_monic(&self, ring: &R, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem_monic(ring, d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

/// Elementary symmetric polynomial e_j of the given values.
pub fn elem_sym<R: Ring>(ring: &R, j: usize, values: &[R::El]) -> R::El {
    assert!(j <= values.len(), "elementary symmetric index out of range");
    // e-coefficients via the product of (1 + v*t), exact in one pass
    let mut e = vec![ring.zero(); j + 1];
    e[0] = ring.one();
    for v in values {
        for k in (1..=j).rev() {
            let t = ring.mul(&e[k - 1], v);
            e[k] = ring.add(&e[k], &t);
        }
    }
    e[j].clone()
}

/// Extended gcd over a field: returns (g, u, v) with u*a + v*b = g, g monic
/// (or zero). Panics if a leading coefficient fails to invert.
pub fn xgcd_field<R: Ring>(ring: &R, a: &Poly<R>, b: &Poly<R>) -> (Poly<R>, Poly<R>, Poly<R>) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let one = Poly::constant(ring, ring.one());
    let mut s0 = one.clone();
    let mut s1 = Poly::zero();
    let mut t0 = Poly::zero();
    let mut t1 = one;
    while !r1.is_zero() {
        // make r1 monic for the division step
        let lc = r1.coeffs.last().unwrap().clone();
        let lci = ring.inv(&lc).expect("field coefficients required");
        let r1m = r1.scale(ring, &lci);
        let (q, rem) = r0.divrem_monic(ring, &r1m);
        let q = q.scale(ring, &lci);
        let ns = s0.sub(ring, &q.mul(ring, &s1));
        let nt = t0.sub(ring, &q.mul(ring, &t1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let lc = r0.coeffs.last().unwrap().clone();
    let lci = ring.inv(&lc).expect("field coefficients required");
    (
        r0.scale(ring, &lci),
        s0.scale(ring, &lci),
        t0.scale(ring, &lci),
    )
}

/// Resultant of two polynomials via the Sylvester matrix, computed with a
/// division-free determinant so it stays exact over Z/p^e.
pub fn resultant<R: Ring>(ring: &R, a: &Poly<R>, b: &Poly<R>) -> R::El {
    let (m, n) = (a.degree(), b.degree());
    if a.is_zero() || b.is_zero() {
        return ring.zero();
    }
    if m == 0 {
        return ring.pow(&a.coeffs[0], n as i64);
    }
    if n == 0 {
        return ring.pow(&b.coeffs[0], m as i64);
    }
    let size = m + n;
    let mut s = vec![vec![ring.zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.coeffs.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    det_division_free(ring, &s)
}

/// Division-free determinant (expansion via the Berkowitz characteristic
/// polynomial); fine for the small matrices used here.
pub fn det_division_free<R: Ring>(ring: &R, m: &[Vec<R::El>]) -> R::El {
    let cp = charpoly_berkowitz(ring, m);
    // det = (-1)^n * cp(0)
    let n = m.len();
    let c0 = cp.coeff(ring, 0);
    if n % 2 == 1 {
        ring.neg(&c0)
    } else {
        c0
    }
}

/// Characteristic polynomial det(XI - M) by the Samuelson-Berkowitz
/// algorithm (division-free, valid over any commutative ring).
pub fn charpoly_berkowitz<R: Ring>(ring: &R, m: &[Vec<R::El>]) -> Poly<R> {
    let n = m.len();
    if n == 0 {
        return Poly::constant(ring, ring.one());
    }
    // vector of coefficients, highest degree first; starts as (1, -m[0][0])
    let mut c = vec![ring.one(), ring.neg(&m[0][0])];
    for k in 1..n {
        // principal submatrix data
        let a = &m[k][k];
        let row: Vec<&R::El> = (0..k).map(|j| &m[k][j]).collect();
        let col: Vec<&R::El> = (0..k).map(|i| &m[i][k]).collect();
        let sub: Vec<Vec<&R::El>> = (0..k)
            .map(|i| (0..k).map(|j| &m[i][j]).collect())
            .collect();
        // Toeplitz column: t[0] = 1, t[1] = -a, t[i+2] = -(row * sub^i * col)
        let mut t = vec![ring.one(), ring.neg(a)];
        let mut v: Vec<R::El> = col.iter().map(|c| (*c).clone()).collect();
        for _ in 0..k {
            let dot = ring.sum(
                row.iter()
                    .zip(v.iter())
                    .map(|(r, x)| ring.mul(r, x)),
            );
            t.push(ring.neg(&dot));
            let mut nv = vec![ring.zero(); k];
            for i in 0..k {
                nv[i] = ring.sum((0..k).map(|j| ring.mul(sub[i][j], &v[j])));
            }
            v = nv;
        }
        // c_new = T * c, where T is lower-triangular Toeplitz with column t
        let mut nc = vec![ring.zero(); c.len() + 1];
        for i in 0..nc.len() {
            for j in 0..c.len() {
                if i >= j && i - j < t.len() {
                    nc[i] = ring.add(&nc[i], &ring.mul(&t[i - j], &c[j]));
                }
            }
        }
        c = nc;
    }
    c.reverse();
    Poly::new(ring, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Rationals, Zpe};

    #[test]
    fn divrem_and_roots() {
        let q = Rationals;
        let p = Poly::from_roots(&q, [rat(1, 1), rat(2, 1), rat(-3, 1)].iter());
        assert_eq!(p.degree(), 3);
        assert_eq!(p.eval(&q, &rat(2, 1)), rat(0, 1));
        let lin = Poly::new(&q, vec![rat(-2, 1), rat(1, 1)]);
        let quo = p.divide_exact_monic(&q, &lin).unwrap();
        assert_eq!(quo.degree(), 2);
        assert_eq!(quo.eval(&q, &rat(1, 1)), rat(0, 1));
        assert!(p
            .divide_exact_monic(&q, &Poly::new(&q, vec![rat(-5, 1), rat(1, 1)]))
            .is_none());
    }

    #[test]
    fn elem_sym_basics() {
        let q = Rationals;
        let vals = [rat(1, 1), rat(1, 1), rat(1, 1)];
        assert_eq!(elem_sym(&q, 2, &vals), rat(3, 1));
        assert_eq!(elem_sym(&q, 0, &vals), rat(1, 1));
        let ab = [rat(2, 1), rat(5, 1)];
        assert_eq!(elem_sym(&q, 1, &ab), rat(7, 1));
        assert_eq!(elem_sym(&q, 2, &ab), rat(10, 1));
    }

    #[test]
    fn charpoly_small() {
        let q = Rationals;
        // [[1,2],[3,4]]: X^2 - 5X - 2
        let m = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]];
        let cp = charpoly_berkowitz(&q, &m);
        assert_eq!(cp.coeffs, vec![rat(-2, 1), rat(-5, 1), rat(1, 1)]);
        assert_eq!(det_division_free(&q, &m), rat(-2, 1));
    }

    #[test]
    fn resultant_detects_common_roots() {
        let r = Zpe::new(5, 2);
        let a = Poly::from_roots(&r, [2u64, 3].iter());
        let b = Poly::from_roots(&r, [3u64, 4].iter());
        // common root 3 => resultant non-unit (in fact 0 mod 5)
        let res = resultant(&r, &a, &b);
        assert!(res % 5 == 0);
        let c = Poly::from_roots(&r, [4u64].iter());
        let res2 = resultant(&r, &a, &c);
        assert!(res2 % 5 != 0);
    }

    #[test]
    fn berkowitz_matches_expansion_mod_pe() {
        let r = Zpe::new(3, 3);
        let m = vec![
            vec![1u64, 5, 7],
            vec![2, 0, 26],
            vec![9, 13, 4],
        ];
        // det by cofactor expansion, manually
        let det = |m: &Vec<Vec<u64>>| -> i128 {
            let a = m[0][0] as i128;
            let b = m[0][1] as i128;
            let c = m[0][2] as i128;
            let d = m[1][0] as i128;
            let e = m[1][1] as i128;
            let f = m[1][2] as i128;
            let g = m[2][0] as i128;
            let h = m[2][1] as i128;
            let i = m[2][2] as i128;
            a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        };
        let expect = det(&m).rem_euclid(27) as u64;
        assert_eq!(det_division_free(&r, &m), expect);
    }
}
