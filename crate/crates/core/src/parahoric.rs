//! Parahoric invariant dimensions, the Iwahori-level principal-series
//! module with its diagonal V-operators, and the Taylor-Wiles projector
//! pr_{(j1)}.
//!
//! The smooth representation is modeled through its Iwahori invariants: a
//! basis {phi_w} indexed by minimal representatives of the left cosets
//! W_Θ·w, with X_l acting by psi_{w(l)} (inverse for negative w(l)). Here
//! Θ partitions the value side (the character blocks) and Ω partitions the
//! position side (the operator blocks); V_k^j is the k-th elementary
//! symmetric polynomial of the X_l over the coordinates of Ω-block j.

use crate::poly::elem_sym;
use crate::ring::{Ring, Zpe};
use crate::weyl::{
    coset_matrix, double_coset_map, double_coset_reps, min_left_coset_reps, GroupDescriptor,
    IntervalPartition, SignedPerm,
};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParahoricError {
    #[error("q must be 1 mod p and p an odd prime")]
    BadCongruence,
    #[error("j0 and j1 must be distinct block indices of Omega")]
    BadBlockIndices,
    #[error("psi value at index {0} is not a unit")]
    NonUnit(usize),
    #[error("block index or k out of range")]
    OutOfRange,
    #[error("residue collision: R and Q are not coprime modulo p")]
    ResidueCollision,
    #[error("degenerate tie: alpha^k = alpha^-k although alpha != alpha^-1")]
    DegenerateTie,
    #[error("eigenvalue profile violates the multiplicity hypothesis")]
    BadProfile,
    #[error("no character block matches the distinguished eigenvalue")]
    NoDistinguishedBlock,
    #[error("missing local dimension table entry")]
    MissingTableEntry,
    #[error("weyl error: {0}")]
    Weyl(#[from] crate::weyl::WeylError),
}

/// The parahoric level datum: Ω on the position side, the distinguished
/// block pair (j0, j1), and the residue ring Z/p^e with q = 1 mod p.
#[derive(Clone, Debug)]
pub struct ParahoricDatum {
    pub desc: GroupDescriptor,
    pub omega: IntervalPartition,
    /// 0-based indices into omega.blocks
    pub j0: usize,
    pub j1: usize,
    pub p: u64,
    pub e: u32,
    /// residue of the prime power q in Z/p^e
    pub q: u64,
}

impl ParahoricDatum {
    pub fn new(
        desc: GroupDescriptor,
        omega: IntervalPartition,
        j0: usize,
        j1: usize,
        p: u64,
        e: u32,
        q: u64,
    ) -> Result<Self, ParahoricError> {
        if p < 3 || q % p != 1 {
            return Err(ParahoricError::BadCongruence);
        }
        let qb = omega.num_blocks();
        if j0 == j1 || j0 >= qb || j1 >= qb {
            return Err(ParahoricError::BadBlockIndices);
        }
        Ok(ParahoricDatum {
            desc,
            omega,
            j0,
            j1,
            p,
            e,
            q,
        })
    }

    pub fn ring(&self) -> Zpe {
        Zpe::new(self.p, self.e)
    }
}

/// Sum over the double-coset representatives of the product of per-block
/// local invariant dimensions.
pub fn invariant_dim(
    desc: &GroupDescriptor,
    omega: &IntervalPartition,
    theta: &IntervalPartition,
    local_dims: &dyn Fn(usize, &SignedPerm) -> Option<usize>,
) -> Result<usize, ParahoricError> {
    let reps = double_coset_reps(desc, theta, omega)?;
    let q_theta = theta.num_blocks();
    let mut total = 0usize;
    for w in &reps {
        let mut prod = 1usize;
        for j in 0..q_theta {
            prod *= local_dims(j, w).ok_or(ParahoricError::MissingTableEntry)?;
        }
        total += prod;
    }
    Ok(total)
}

/// The subset S of double-coset representatives whose matrix has all
/// a-entries at most 1.
pub fn jacquet_w_set(
    desc: &GroupDescriptor,
    omega: &IntervalPartition,
    theta: &IntervalPartition,
) -> Result<Vec<SignedPerm>, ParahoricError> {
    let reps = double_coset_reps(desc, theta, omega)?;
    Ok(reps
        .into_iter()
        .filter(|w| {
            let m = coset_matrix(desc, w, theta, omega);
            m.a.iter().all(|row| row.iter().all(|&x| x <= 1))
        })
        .collect())
}

/// The Iwahori-level module of a Θ-induced representation: basis indexed by
/// the minimal representatives of W_Θ·w, a psi value per torus coordinate,
/// and the diagonal X_l action.
#[derive(Clone, Debug)]
pub struct IwahoriPSModule {
    pub desc: GroupDescriptor,
    pub theta: IntervalPartition,
    pub basis: Vec<SignedPerm>,
    /// psi_1, ..., psi_ns as units of the residue ring
    pub psi: Vec<u64>,
    pub ring: Zpe,
    /// set when psi fails to be constant on the Θ-value-blocks
    pub block_constancy_violated: bool,
}

pub fn build_ps_module(
    desc: &GroupDescriptor,
    theta: &IntervalPartition,
    psi: Vec<u64>,
    ring: Zpe,
) -> Result<IwahoriPSModule, ParahoricError> {
    if psi.len() != desc.n_s {
        return Err(ParahoricError::OutOfRange);
    }
    for (i, v) in psi.iter().enumerate() {
        if !ring.is_unit(v) {
            return Err(ParahoricError::NonUnit(i));
        }
    }
    let mut violated = false;
    for j in 0..theta.num_blocks() {
        let coords = theta.coords(j);
        if coords.windows(2).any(|w| psi[w[0] - 1] != psi[w[1] - 1]) {
            violated = true;
        }
    }
    let basis = min_left_coset_reps(desc, theta)?;
    Ok(IwahoriPSModule {
        desc: *desc,
        theta: theta.clone(),
        basis,
        psi,
        ring,
        block_constancy_violated: violated,
    })
}

impl IwahoriPSModule {
    /// Eigenvalue of X_l on phi_w: psi_{w(l)}, inverse for negative w(l).
    pub fn x_eigenvalue(&self, l: usize, w: &SignedPerm) -> u64 {
        let v = w.apply(l as i32);
        let idx = (v.abs() - 1) as usize;
        if v > 0 {
            self.psi[idx]
        } else {
            self.ring.inv(&self.psi[idx]).expect("psi is a unit")
        }
    }

    /// Diagonal of V_k^j over the basis: the k-th elementary symmetric
    /// polynomial of the X_l eigenvalues over the coordinates of Ω-block j.
    pub fn v_operator(
        &self,
        omega: &IntervalPartition,
        j: usize,
        k: usize,
    ) -> Result<Vec<u64>, ParahoricError> {
        if j >= omega.num_blocks() {
            return Err(ParahoricError::OutOfRange);
        }
        let coords = omega.coords(j);
        if k < 1 || k > coords.len() {
            return Err(ParahoricError::OutOfRange);
        }
        Ok(self
            .basis
            .iter()
            .map(|w| {
                let vals: Vec<u64> = coords.iter().map(|&l| self.x_eigenvalue(l, w)).collect();
                elem_sym(&self.ring, k, &vals)
            })
            .collect())
    }
}

/// Monic polynomial given by its root multiset.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicRoots<T> {
    pub roots: Vec<T>,
}

/// The polynomial Phat_k^j: one root e_k({x_l : l in Itilde}) for every
/// subset Itilde of the root index set of size block_size.
pub fn phat_poly<R: Ring>(
    ring: &R,
    root_data: &[R::El],
    block_size: usize,
    k: usize,
) -> Result<MonicRoots<R::El>, ParahoricError> {
    if block_size > root_data.len() || k < 1 || k > block_size {
        return Err(ParahoricError::OutOfRange);
    }
    let n = root_data.len();
    let mut roots = Vec::new();
    let mut idx: Vec<usize> = (0..block_size).collect();
    loop {
        let vals: Vec<R::El> = idx.iter().map(|&i| root_data[i].clone()).collect();
        roots.push(elem_sym(ring, k, &vals));
        let mut t = block_size;
        let done = loop {
            if t == 0 {
                break true;
            }
            t -= 1;
            if idx[t] + 1 <= n - (block_size - t) {
                idx[t] += 1;
                for s in t + 1..block_size {
                    idx[s] = idx[s - 1] + 1;
                }
                break false;
            }
        };
        if done {
            break;
        }
    }
    Ok(MonicRoots { roots })
}

/// Coprime factorization Phat = R * Q over Z/p^e by residue grouping: R
/// collects the roots congruent to binom(i_j, k) alpha^{+-k} mod p.
pub struct FactorPair {
    pub r_roots: Vec<u64>,
    pub q_roots: Vec<u64>,
    /// multiplicity r(j, k): half the number of R-roots when the two
    /// distinguished residues differ, else the full count
    pub multiplicity: usize,
}

pub fn projector_factor(
    ring: &Zpe,
    phat: &MonicRoots<u64>,
    alpha_bar: u64,
    block_size: usize,
    k: usize,
) -> Result<FactorPair, ParahoricError> {
    let fp = ring.residue_field();
    let ab = alpha_bar % fp.p;
    if !fp.is_unit(&ab) {
        return Err(ParahoricError::NonUnit(0));
    }
    let ab_inv = fp.inv(&ab).unwrap();
    let binom = binomial_mod(&fp, block_size, k);
    let tgt1 = fp.mul(&binom, &fp.pow(&ab, k as i64));
    let tgt2 = fp.mul(&binom, &fp.pow(&ab_inv, k as i64));
    if tgt1 == tgt2 && fp.pow(&ab, 2) != fp.one() {
        return Err(ParahoricError::DegenerateTie);
    }
    if tgt1 == 0 || tgt2 == 0 {
        return Err(ParahoricError::ResidueCollision);
    }
    let mut r_roots = Vec::new();
    let mut q_roots = Vec::new();
    for &r in &phat.roots {
        let res = ring.to_residue(r);
        if res == tgt1 || res == tgt2 {
            r_roots.push(r);
        } else {
            q_roots.push(r);
        }
    }
    let multiplicity = if tgt1 == tgt2 {
        r_roots.len()
    } else {
        r_roots.len() / 2
    };
    Ok(FactorPair {
        r_roots,
        q_roots,
        multiplicity,
    })
}

fn binomial_mod(ring: &Zpe, n: usize, k: usize) -> u64 {
    let mut num: u128 = 1;
    for t in 0..k {
        num = num * (n - t) as u128 / (t + 1) as u128;
    }
    (num % ring.modulus as u128) as u64
}

/// Frobenius eigenvalue profile classification at block j0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Type1,
    Type2,
    Invalid,
}

/// Classify a residual eigenvalue multiset (values mod p with
/// multiplicities) against the two displayed conditions for block size
/// i_{j0}; `sp_extra` adds the fixed eigenvalue 1 of the symplectic kind.
pub fn frobenius_profile_check(
    fp: &Zpe,
    multiset: &[(u64, usize)],
    i_j0: usize,
    sp_extra: bool,
) -> (ProfileKind, Option<u64>) {
    let mult = |v: u64| -> usize {
        multiset
            .iter()
            .filter(|(x, _)| *x % fp.p == v % fp.p)
            .map(|(_, m)| m)
            .sum()
    };
    for (a, _) in multiset {
        let a = a % fp.p;
        if !fp.is_unit(&a) {
            continue;
        }
        let ainv = fp.inv(&a).unwrap();
        if a != ainv {
            if mult(a) == i_j0 && mult(ainv) == i_j0 {
                return (ProfileKind::Type1, Some(a));
            }
        } else {
            let target = if sp_extra && a == 1 % fp.p {
                2 * i_j0 + 1
            } else {
                2 * i_j0
            };
            if mult(a) == target {
                return (ProfileKind::Type2, Some(a));
            }
        }
    }
    (ProfileKind::Invalid, None)
}

/// One summand of the module fed to the projector.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ComponentSpec {
    /// Θ-induced unramified component: one unit chi per Θ-value-block.
    Unramified {
        theta_subset: Vec<usize>,
        chi: Vec<u64>,
    },
    /// Component with one Steinberg pair: block `st_block` of Θ must cover
    /// two coordinates, carrying (chi, chi/q).
    SteinbergRamified {
        theta_subset: Vec<usize>,
        st_block: usize,
        chi: Vec<u64>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorReport {
    pub j: usize,
    pub k: usize,
    pub r_roots: Vec<u64>,
    pub q_roots: Vec<u64>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    pub kind: String,
    pub basis_size: usize,
    pub survivor_windows: Vec<Vec<i32>>,
    /// dimension of the image of the G(O)-invariant subspace under the
    /// residual projector: 1 for an unramified component with surviving
    /// spherical vector, 0 otherwise
    pub image_dim: usize,
    /// dimension of the G(O)-invariants of the component
    pub unramified_dim: usize,
    /// number of parahoric cells, i.e. dim of the p_Omega-invariants
    pub parahoric_dim: usize,
    /// number of parahoric cells meeting a surviving basis vector
    pub parahoric_image_dim: usize,
    /// spherical vector image: nonzero (window, coefficient) pairs
    pub spherical_image: Vec<(Vec<i32>, u64)>,
    /// the set W' from the matrix condition, for unramified components
    pub w_prime_windows: Option<Vec<Vec<i32>>>,
    pub w_prime_matches: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectorReport {
    pub profile: ProfileKind,
    pub alpha_bar: u64,
    pub factors: Vec<FactorReport>,
    pub components: Vec<ComponentReport>,
    pub image_dim_total: usize,
    pub unramified_dim_total: usize,
}

struct PreparedComponent {
    kind: String,
    theta: IntervalPartition,
    psi: Vec<u64>,
    /// distinguished Θ-block carrying alpha, if any
    l0: Option<usize>,
    st_block: Option<usize>,
}

fn prepare_component(
    datum: &ParahoricDatum,
    spec: &ComponentSpec,
    alpha_bar: u64,
) -> Result<PreparedComponent, ParahoricError> {
    let ring = datum.ring();
    let fp = ring.residue_field();
    let ns = datum.desc.n_s;
    match spec {
        ComponentSpec::Unramified { theta_subset, chi } => {
            let theta = IntervalPartition::from_subset(ns, theta_subset)?;
            if chi.len() != theta.num_blocks() {
                return Err(ParahoricError::OutOfRange);
            }
            let mut psi = vec![0u64; ns];
            for j in 0..theta.num_blocks() {
                for l in theta.coords(j) {
                    psi[l - 1] = chi[j] % ring.modulus;
                }
            }
            // distinguished block: chi = alpha^{+-1} mod p, size i_{j0}
            let i_j0 = datum.omega.coords(datum.j0).len();
            let ainv = fp
                .inv(&(alpha_bar % fp.p))
                .ok_or(ParahoricError::NonUnit(0))?;
            let l0 = (0..theta.num_blocks()).find(|&j| {
                let c = chi[j] % fp.p;
                (c == alpha_bar % fp.p || c == ainv) && theta.coords(j).len() == i_j0
            });
            Ok(PreparedComponent {
                kind: "unramified".into(),
                theta,
                psi,
                l0,
                st_block: None,
            })
        }
        ComponentSpec::SteinbergRamified {
            theta_subset,
            st_block,
            chi,
        } => {
            let theta = IntervalPartition::from_subset(ns, theta_subset)?;
            if chi.len() != theta.num_blocks() || *st_block >= theta.num_blocks() {
                return Err(ParahoricError::OutOfRange);
            }
            let coords = theta.coords(*st_block);
            if coords.len() != 2 {
                return Err(ParahoricError::OutOfRange);
            }
            let qinv = ring
                .inv(&(datum.q % ring.modulus))
                .ok_or(ParahoricError::BadCongruence)?;
            let mut psi = vec![0u64; ns];
            for j in 0..theta.num_blocks() {
                let cs = theta.coords(j);
                if j == *st_block {
                    psi[cs[0] - 1] = chi[j] % ring.modulus;
                    psi[cs[1] - 1] = ring.mul(&chi[j], &qinv);
                } else {
                    for l in cs {
                        psi[l - 1] = chi[j] % ring.modulus;
                    }
                }
            }
            Ok(PreparedComponent {
                kind: "steinberg".into(),
                theta,
                psi,
                l0: None,
                st_block: Some(*st_block),
            })
        }
    }
}

/// Apply pr_{(j1)} = prod over blocks j != j1 and k of Q_k^j(V_k^j) to the
/// diagonal Iwahori model of each component and assemble the report.
pub fn apply_projector(
    datum: &ParahoricDatum,
    components: &[ComponentSpec],
    alpha_bar: u64,
) -> Result<ProjectorReport, ParahoricError> {
    let ring = datum.ring();
    let fp = ring.residue_field();
    let desc = &datum.desc;
    let omega = &datum.omega;
    let q_omega = omega.num_blocks();
    let prepared: Vec<PreparedComponent> = components
        .iter()
        .map(|c| prepare_component(datum, c, alpha_bar))
        .collect::<Result<_, _>>()?;

    // residual Frobenius profile, read off the unramified components (the
    // matrix avatar of the residual Galois representation)
    let mut residue_mult: HashMap<u64, usize> = HashMap::new();
    for pc in prepared.iter().filter(|pc| pc.st_block.is_none()) {
        for v in &pc.psi {
            *residue_mult.entry(v % fp.p).or_insert(0) += 1;
            let inv = fp
                .inv(&(v % fp.p))
                .ok_or(ParahoricError::NonUnit(0))?;
            *residue_mult.entry(inv).or_insert(0) += 1;
        }
    }
    if desc.kind == crate::weyl::GroupKind::Sp {
        *residue_mult.entry(1 % fp.p).or_insert(0) += 1;
    }
    let multiset: Vec<(u64, usize)> = residue_mult.into_iter().collect();
    let i_j0 = omega.coords(datum.j0).len();
    let (profile, _) = frobenius_profile_check(
        &fp,
        &multiset,
        i_j0,
        desc.kind == crate::weyl::GroupKind::Sp,
    );

    // global root data: every psi value with its inverse, plus the fixed
    // root 1 for the symplectic kind
    let mut root_data: Vec<u64> = Vec::new();
    for pc in &prepared {
        for v in &pc.psi {
            root_data.push(v % ring.modulus);
            root_data.push(ring.inv(v).ok_or(ParahoricError::NonUnit(0))?);
        }
    }
    if desc.kind == crate::weyl::GroupKind::Sp {
        root_data.push(1 % ring.modulus);
    }

    let mut factors = Vec::new();
    let mut q_factors: HashMap<(usize, usize), Vec<u64>> = HashMap::new();
    for j in 0..q_omega {
        if j == datum.j1 {
            continue;
        }
        let bs = omega.coords(j).len();
        for k in 1..=bs {
            let phat = phat_poly(&ring, &root_data, bs, k)?;
            let pair = projector_factor(&ring, &phat, alpha_bar, bs, k)?;
            factors.push(FactorReport {
                j,
                k,
                r_roots: pair.r_roots.clone(),
                q_roots: pair.q_roots.clone(),
                multiplicity: pair.multiplicity,
            });
            q_factors.insert((j, k), pair.q_roots);
        }
    }

    let mut reports = Vec::new();
    let mut image_total = 0usize;
    let mut unram_total = 0usize;
    for pc in &prepared {
        let module = build_ps_module(desc, &pc.theta, pc.psi.clone(), ring)?;
        // a Steinberg component keeps only the basis vectors with nonzero
        // parahoric-local invariants: the two Steinberg coordinates may not
        // land (in absolute value) inside a single Ω-block
        let active: Vec<SignedPerm> = match pc.st_block {
            None => module.basis.clone(),
            Some(st) => {
                let st_vals: Vec<usize> = pc.theta.coords(st);
                module
                    .basis
                    .iter()
                    .filter(|w| {
                        let winv = crate::weyl::invert(w);
                        let mut blocks: Vec<usize> = st_vals
                            .iter()
                            .map(|&v| {
                                omega.block_of(winv.apply(v as i32).unsigned_abs() as usize)
                            })
                            .collect();
                        blocks.sort();
                        blocks.dedup();
                        blocks.len() == st_vals.len()
                    })
                    .copied()
                    .collect()
            }
        };
        let mut coefficients: HashMap<SignedPerm, u64> = HashMap::new();
        for w in &active {
            let mut c = ring.one();
            for j in 0..q_omega {
                if j == datum.j1 {
                    continue;
                }
                let coords = omega.coords(j);
                for k in 1..=coords.len() {
                    let vals: Vec<u64> =
                        coords.iter().map(|&l| module.x_eigenvalue(l, w)).collect();
                    let eig = elem_sym(&ring, k, &vals);
                    for r in &q_factors[&(j, k)] {
                        c = ring.mul(&c, &ring.sub(&eig, r));
                    }
                }
            }
            coefficients.insert(*w, c);
        }
        let survivors: Vec<SignedPerm> = active
            .iter()
            .filter(|w| fp.is_unit(&ring.to_residue(coefficients[w])))
            .copied()
            .collect();
        // parahoric cells: group the active basis by double coset
        let cell_map = double_coset_map(desc, &pc.theta, omega)?;
        let mut cells: HashMap<SignedPerm, bool> = HashMap::new();
        for w in &active {
            let entry = cells.entry(cell_map[w]).or_insert(false);
            if survivors.contains(w) {
                *entry = true;
            }
        }
        let parahoric_dim = cells.len();
        let parahoric_image_dim = cells.values().filter(|v| **v).count();
        // G(O)-invariants: the spherical line for an unramified component
        // (spanned by the sum of all basis vectors), nothing for the
        // Steinberg pattern
        let unramified_dim = if pc.st_block.is_none() { 1 } else { 0 };
        let image_dim = if pc.st_block.is_none() && !survivors.is_empty() {
            1
        } else {
            0
        };
        // W': the distinguished Θ-block lands whole inside a single Ω-block
        // other than j1. For a type-1 profile the landing must have constant
        // sign (a mixed packing has eigenvalue residue alpha + alpha^{-1},
        // which the factorization rejects); for type 2 the sign is free.
        let (w_prime_windows, w_prime_matches) = match pc.l0 {
            Some(l0) => {
                let tgt = pc.theta.coords(l0);
                let wp: Vec<SignedPerm> = active
                    .iter()
                    .filter(|w| {
                        (0..q_omega).any(|jp| {
                            if jp == datum.j1 {
                                return false;
                            }
                            let imgs: Vec<i32> = omega
                                .coords(jp)
                                .iter()
                                .map(|&x| w.apply(x as i32))
                                .filter(|v| tgt.contains(&(v.unsigned_abs() as usize)))
                                .collect();
                            if imgs.len() != tgt.len() || omega.coords(jp).len() != tgt.len() {
                                return false;
                            }
                            if profile == ProfileKind::Type1 {
                                imgs.iter().all(|&v| v > 0) || imgs.iter().all(|&v| v < 0)
                            } else {
                                true
                            }
                        })
                    })
                    .copied()
                    .collect();
                let matches = wp == survivors;
                (
                    Some(wp.iter().map(|w| w.window()).collect::<Vec<_>>()),
                    Some(matches),
                )
            }
            None => (None, None),
        };
        unram_total += unramified_dim;
        image_total += image_dim;
        reports.push(ComponentReport {
            kind: pc.kind.clone(),
            basis_size: active.len(),
            survivor_windows: survivors.iter().map(|w| w.window()).collect(),
            image_dim,
            unramified_dim,
            parahoric_dim,
            parahoric_image_dim,
            spherical_image: active
                .iter()
                .filter(|w| !ring.is_zero(&coefficients[w]))
                .map(|w| (w.window(), coefficients[w]))
                .collect(),
            w_prime_windows,
            w_prime_matches,
        });
    }

    Ok(ProjectorReport {
        profile,
        alpha_bar,
        factors,
        components: reports,
        image_dim_total: image_total,
        unramified_dim_total: unram_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;
    use crate::weyl::GroupKind;

    fn sp4() -> GroupDescriptor {
        GroupDescriptor::new(GroupKind::Sp, 4).unwrap()
    }

    fn so5() -> GroupDescriptor {
        GroupDescriptor::new(GroupKind::SoOdd, 5).unwrap()
    }

    #[test]
    fn invariant_dim_iwahori_full() {
        let desc = sp4();
        let s = IntervalPartition::singletons(2);
        let dim = invariant_dim(&desc, &s, &s, &|_, _| Some(1)).unwrap();
        assert_eq!(dim, 8);
        let theta = IntervalPartition::from_subset(2, &[1]).unwrap();
        let dim = invariant_dim(&desc, &s, &theta, &|_, _| Some(1)).unwrap();
        assert_eq!(dim, 4);
    }

    #[test]
    fn jacquet_set_filters() {
        let desc = so5();
        let singles = IntervalPartition::singletons(2);
        let s = jacquet_w_set(&desc, &singles, &singles).unwrap();
        let full = double_coset_reps(&desc, &singles, &singles).unwrap();
        assert_eq!(s.len(), full.len());
        // a value block that can be packed whole into a position block is
        // excluded by the entry bound; with a refining Ω the set is nonempty
        let desc = GroupDescriptor::new(GroupKind::SoOdd, 7).unwrap();
        let theta = IntervalPartition::from_subset(3, &[1]).unwrap(); // {0},{1,2},{3}
        let omega = IntervalPartition::from_subset(3, &[2]).unwrap(); // {0},{1},{2,3}
        let s = jacquet_w_set(&desc, &omega, &theta).unwrap();
        let full = double_coset_reps(&desc, &theta, &omega).unwrap();
        assert!(s.len() < full.len());
        assert!(!s.is_empty());
    }

    #[test]
    fn ps_module_rank_one() {
        let desc = GroupDescriptor::new(GroupKind::SoOdd, 3).unwrap();
        let ring = Zpe::new(5, 2);
        let theta = IntervalPartition::singletons(1);
        let m = build_ps_module(&desc, &theta, vec![2], ring).unwrap();
        assert_eq!(m.basis.len(), 2);
        let mut eigs: Vec<u64> = m.basis.iter().map(|w| m.x_eigenvalue(1, w)).collect();
        eigs.sort();
        let mut expect = vec![2u64, ring.inv(&2).unwrap()];
        expect.sort();
        assert_eq!(eigs, expect);
    }

    #[test]
    fn module_dim_is_coset_count() {
        let desc = sp4();
        let ring = Zpe::new(5, 1);
        for theta in IntervalPartition::all(2) {
            let m = build_ps_module(&desc, &theta, vec![2, 3], ring).unwrap();
            let reps = crate::weyl::min_left_coset_reps(&desc, &theta).unwrap();
            assert_eq!(m.basis.len(), reps.len());
        }
    }

    #[test]
    fn v_operator_all_ones_counts_terms() {
        let desc = sp4();
        let ring = Zpe::new(7, 1);
        let theta = IntervalPartition::singletons(2);
        let m = build_ps_module(&desc, &theta, vec![1, 1], ring).unwrap();
        let omega = IntervalPartition::from_subset(2, &[1]).unwrap(); // blocks {0},{1,2}
        let diag = m.v_operator(&omega, 1, 1).unwrap();
        assert!(diag.iter().all(|&v| v == 2));
        let diag = m.v_operator(&omega, 1, 2).unwrap();
        assert!(diag.iter().all(|&v| v == 1));
    }

    #[test]
    fn v_operator_matches_elem_sym() {
        let desc = sp4();
        let ring = Zpe::new(7, 1);
        let theta = IntervalPartition::singletons(2);
        let m = build_ps_module(&desc, &theta, vec![2, 3], ring).unwrap();
        let omega = IntervalPartition::from_subset(2, &[1]).unwrap();
        let coords = omega.coords(1);
        for (i, w) in m.basis.iter().enumerate() {
            let vals: Vec<u64> = coords.iter().map(|&l| m.x_eigenvalue(l, w)).collect();
            for k in 1..=coords.len() {
                let diag = m.v_operator(&omega, 1, k).unwrap();
                assert_eq!(diag[i], elem_sym(&ring, k, &vals));
            }
        }
    }

    #[test]
    fn x_operators_are_diagonal_hence_commute() {
        let desc = sp4();
        let ring = Zpe::new(5, 1);
        let theta = IntervalPartition::singletons(2);
        let m = build_ps_module(&desc, &theta, vec![2, 3], ring).unwrap();
        for w in &m.basis {
            let a = ring.mul(&m.x_eigenvalue(1, w), &m.x_eigenvalue(2, w));
            let b = ring.mul(&m.x_eigenvalue(2, w), &m.x_eigenvalue(1, w));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn phat_examples() {
        use crate::ring::rat;
        let q = Rationals;
        let roots = vec![rat(2, 1), rat(1, 2)];
        let p = phat_poly(&q, &roots, 1, 1).unwrap();
        assert_eq!(p.roots, vec![rat(2, 1), rat(1, 2)]);
        let roots = vec![rat(2, 1), rat(1, 2), rat(3, 1), rat(1, 3)];
        let p = phat_poly(&q, &roots, 2, 2).unwrap();
        let mut got = p.roots.clone();
        got.sort();
        let mut expect = vec![
            rat(6, 1),
            rat(2, 3),
            rat(3, 2),
            rat(1, 6),
            rat(1, 1),
            rat(1, 1),
        ];
        expect.sort();
        assert_eq!(got, expect);
        let ring = Zpe::new(5, 1);
        let ones = vec![1u64; 4];
        let p = phat_poly(&ring, &ones, 2, 1).unwrap();
        assert!(p.roots.iter().all(|&r| r == 2));
    }

    #[test]
    fn projector_factor_grouping() {
        let ring = Zpe::new(5, 1);
        let phat = MonicRoots {
            roots: vec![2u64, 3, 1, 1],
        };
        let pair = projector_factor(&ring, &phat, 2, 1, 1).unwrap();
        assert_eq!(pair.r_roots, vec![2, 3]);
        assert_eq!(pair.q_roots, vec![1, 1]);
        assert_eq!(pair.multiplicity, 1);
        let phat = MonicRoots {
            roots: vec![1u64, 4],
        };
        let pair = projector_factor(&ring, &phat, 2, 1, 1).unwrap();
        assert!(pair.r_roots.is_empty());
        assert_eq!(pair.multiplicity, 0);
    }

    #[test]
    fn projector_factor_hensel_grouping() {
        // lifted setting over Z/5^3: roots congruent mod 5 group together
        let ring = Zpe::new(5, 3);
        let phat = MonicRoots {
            roots: vec![2u64, 2 + 25, 3, 3 + 50, 1, 6],
        };
        let pair = projector_factor(&ring, &phat, 2, 1, 1).unwrap();
        assert_eq!(pair.r_roots, vec![2, 27, 3, 53]);
        assert_eq!(pair.q_roots, vec![1, 6]);
        assert_eq!(pair.multiplicity, 2);
        // product of the two factors recovers phat as a polynomial
        let q = crate::poly::Poly::from_roots(&ring, phat.roots.iter());
        let r = crate::poly::Poly::from_roots(&ring, pair.r_roots.iter());
        let s = crate::poly::Poly::from_roots(&ring, pair.q_roots.iter());
        assert_eq!(r.mul(&ring, &s), q);
    }

    #[test]
    fn profile_classification() {
        let fp = Zpe::field(5);
        let ms = vec![(2u64, 2usize), (3, 2), (4, 1), (4, 1)];
        let (kind, a) = frobenius_profile_check(&fp, &ms, 2, false);
        assert_eq!(kind, ProfileKind::Type1);
        assert!(a == Some(2) || a == Some(3));
        let ms = vec![(1u64, 5usize)];
        let (kind, _) = frobenius_profile_check(&fp, &ms, 2, true);
        assert_eq!(kind, ProfileKind::Type2);
        let ms = vec![(2u64, 1usize), (3, 3)];
        let (kind, _) = frobenius_profile_check(&fp, &ms, 1, false);
        assert_eq!(kind, ProfileKind::Invalid);
    }
}
