//! Dense matrices over an arbitrary coefficient ring, with the linear
//! algebra needed over finite fields and Z/p^e: products, polynomial
//! evaluation at a matrix, unit-pivot elimination, kernels over fields
//! and free-basis extraction over local rings.

use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Debug)]
pub struct Mat<R: Ring> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<R::El>,
}

impl<R: Ring> Clone for Mat<R> {
    fn clone(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }
}

impl<R: Ring> PartialEq for Mat<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: Ring> Mat<R> {
    pub fn zero(ring: &R, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn from_rows(ring: &R, rows: Vec<Vec<R::El>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let _ = ring;
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &R::El {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut R::El {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R::El] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<R::El> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R::El>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn add(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &R, c: &R::El) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| ring.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = ring.mul(a, other.at(k, j));
                    *out.at_mut(i, j) = ring.add(out.at(i, j), &t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ring: &R, v: &[R::El]) -> Vec<R::El> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                ring.sum(
                    self.row(i)
                        .iter()
                        .zip(v.iter())
                        .map(|(a, b)| ring.mul(a, b)),
                )
            })
            .collect()
    }

    pub fn is_zero(&self, ring: &R) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    /// Evaluate a polynomial at this (square) matrix.
    pub fn eval_poly(&self, ring: &R, p: &Poly<R>) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::zero(ring, self.rows, self.cols);
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(ring, self);
            for i in 0..self.rows {
                *acc.at_mut(i, i) = ring.add(acc.at(i, i), c);
            }
        }
        acc
    }

    /// Inverse via unit-pivot Gauss-Jordan; works over fields and over
    /// local rings when the matrix is invertible.
    pub fn inverse(&self, ring: &R) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(ring, n);
        for col in 0..n {
            let piv = (col..n).find(|&i| ring.is_unit(a.at(i, col)))?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let pinv = ring.inv(a.at(col, col)).unwrap();
            for j in 0..n {
                *a.at_mut(col, j) = ring.mul(a.at(col, j), &pinv);
                *inv.at_mut(col, j) = ring.mul(inv.at(col, j), &pinv);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a.at(i, col).clone();
                if ring.is_zero(&f) {
                    continue;
                }
                for j in 0..n {
                    let t = ring.mul(&f, a.at(col, j));
                    *a.at_mut(i, j) = ring.sub(a.at(i, j), &t);
                    let t = ring.mul(&f, inv.at(col, j));
                    *inv.at_mut(i, j) = ring.sub(inv.at(i, j), &t);
                }
            }
        }
        Some(inv)
    }
}

/// Row echelon form over a field with full row reduction; returns the
/// pivot columns. The matrix is modified in place.
pub fn row_reduce<R: Ring>(ring: &R, m: &mut Mat<R>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r >= m.rows {
            break;
        }
        let Some(piv) = (r..m.rows).find(|&i| !ring.is_zero(m.at(i, c))) else {
            continue;
        };
        if piv != r {
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, piv * m.cols + j);
            }
        }
        let pinv = ring
            .inv(m.at(r, c))
            .expect("row_reduce requires field coefficients");
        for j in 0..m.cols {
            *m.at_mut(r, j) = ring.mul(m.at(r, j), &pinv);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let f = m.at(i, c).clone();
            if ring.is_zero(&f) {
                continue;
            }
            for j in 0..m.cols {
                let t = ring.mul(&f, m.at(r, j));
                *m.at_mut(i, j) = ring.sub(m.at(i, j), &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel basis of a matrix over a field (column vectors of the kernel).
pub fn kernel_basis<R: Ring>(ring: &R, m: &Mat<R>) -> Vec<Vec<R::El>> {
    let mut red = m.clone();
    let pivots = row_reduce(ring, &mut red);
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in 0..m.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![ring.zero(); m.cols];
        v[free] = ring.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = ring.neg(red.at(r, free));
        }
        basis.push(v);
    }
    basis
}

pub fn rank<R: Ring>(ring: &R, m: &Mat<R>) -> usize {
    let mut red = m.clone();
    row_reduce(ring, &mut red).len()
}

/// Solve A x = b over a field or local ring with A square invertible.
pub fn solve_invertible<R: Ring>(ring: &R, a: &Mat<R>, b: &[R::El]) -> Option<Vec<R::El>> {
    let inv = a.inverse(ring)?;
    Some(inv.mul_vec(ring, b))
}

/// Extract a free basis of the column span over a local ring by unit-pivot
/// column elimination. Correct whenever the span is a free direct summand
/// (the only case used here: images of idempotents and of invertible maps).
pub fn free_column_basis<R: Ring>(ring: &R, m: &Mat<R>) -> Vec<Vec<R::El>> {
    let mut cols: Vec<Vec<R::El>> = (0..m.cols).map(|j| m.col(j)).collect();
    let mut basis: Vec<Vec<R::El>> = Vec::new();
    let mut used_rows: Vec<usize> = Vec::new();
    loop {
        // find a column with a unit entry in an unused row
        let mut found = None;
        'outer: for (ci, c) in cols.iter().enumerate() {
            for r in 0..m.rows {
                if used_rows.contains(&r) {
                    continue;
                }
                if ring.is_unit(&c[r]) {
                    found = Some((ci, r));
                    break 'outer;
                }
            }
        }
        let Some((ci, r)) = found else { break };
        let pivot_col = cols.remove(ci);
        let pinv = ring.inv(&pivot_col[r]).unwrap();
        for other in cols.iter_mut() {
            let f = ring.mul(&other[r], &pinv);
            if ring.is_zero(&f) {
                continue;
            }
            for i in 0..m.rows {
                let t = ring.mul(&f, &pivot_col[i]);
                other[i] = ring.sub(&other[i], &t);
            }
        }
        used_rows.push(r);
        basis.push(pivot_col);
    }
    basis
}

/// Membership test: is v in the span of the given (free) basis over a
/// local ring? Returns the coordinates if so.
pub fn in_span<R: Ring>(
    ring: &R,
    basis: &[Vec<R::El>],
    v: &[R::El],
) -> Option<Vec<R::El>> {
    if basis.is_empty() {
        return if v.iter().all(|x| ring.is_zero(x)) {
            Some(vec![])
        } else {
            None
        };
    }
    let n = v.len();
    // eliminate with unit pivots
    let mut rows: Vec<(Vec<R::El>, Vec<R::El>)> = Vec::new(); // (column vec, coord unit vec)
    for (k, b) in basis.iter().enumerate() {
        let mut coord = vec![ring.zero(); basis.len()];
        coord[k] = ring.one();
        rows.push((b.clone(), coord));
    }
    let mut target = v.to_vec();
    let mut tcoord = vec![ring.zero(); basis.len()];
    let mut used: Vec<usize> = Vec::new();
    for (b, coord) in rows.iter() {
        let Some(r) = (0..n).find(|&r| !used.contains(&r) && ring.is_unit(&b[r])) else {
            return None; // basis not free over the local ring
        };
        used.push(r);
        let f = ring.mul(&target[r], &ring.inv(&b[r]).unwrap());
        for i in 0..n {
            let t = ring.mul(&f, &b[i]);
            target[i] = ring.sub(&target[i], &t);
        }
        for (ti, ci) in tcoord.iter_mut().zip(coord.iter()) {
            *ti = ring.add(ti, &ring.mul(&f, ci));
        }
    }
    if target.iter().all(|x| ring.is_zero(x)) {
        Some(tcoord)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Rationals, Zpe};

    #[test]
    fn inverse_and_solve() {
        let r = Zpe::new(5, 3);
        let m = Mat::from_rows(&r, vec![vec![2u64, 1], vec![1, 1]]);
        let inv = m.inverse(&r).unwrap();
        assert_eq!(m.mul(&r, &inv), Mat::identity(&r, 2));
        let x = solve_invertible(&r, &m, &[3, 4]).unwrap();
        assert_eq!(m.mul_vec(&r, &x), vec![3, 4]);
    }

    #[test]
    fn kernel_over_field() {
        let q = Rationals;
        use crate::ring::rat;
        let m = Mat::from_rows(
            &q,
            vec![
                vec![rat(1, 1), rat(2, 1), rat(3, 1)],
                vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            ],
        );
        let k = kernel_basis(&q, &m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(&q, v).iter().all(|x| *x == rat(0, 1)));
        }
    }

    #[test]
    fn free_basis_of_idempotent_image() {
        let r = Zpe::new(3, 2);
        // projector onto first coordinate plus nilpotent junk column
        let m = Mat::from_rows(&r, vec![vec![1u64, 3], vec![0, 0]]);
        let b = free_column_basis(&r, &m);
        assert_eq!(b.len(), 1);
        assert!(in_span(&r, &b, &[1, 0]).is_some());
        assert!(in_span(&r, &b, &[0, 1]).is_none());
    }
}
