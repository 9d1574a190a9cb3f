//! Normalized 2-cocycles, coboundaries and second cohomology, and the
//! construction of group extensions from cocycles.
//!
//! A normalized cocycle f : Q x Q -> GF(p)^d is stored as one coordinate
//! vector over the non-identity pairs; the cocycle identities form a sparse
//! linear system that is eliminated row by row. Every element of H^2 gives
//! an extension group; associativity of the resulting multiplication table
//! is exactly the cocycle identity, so full table validation doubles as an
//! end-to-end check of the elimination.

use thiserror::Error;

use crate::gf::{GfMatrix, GfVec, RowEliminator};
use crate::grp::{ElementSubset, GroupError, GroupTable};
use crate::modrep::ActionModule;

/// Largest number of H^2 classes expanded into representatives.
pub const H2_CAP: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cohomology group has more than {0} elements")]
    CohomologyTooLarge(usize),
    #[error("cocycle is not normalized")]
    NotNormalized,
    #[error("cocycle identity violated")]
    NotCocycle,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A normalized 2-cocycle with values in GF(p)^d, stored on the
/// (n-1) x (n-1) non-identity pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub p: u8,
    pub dim: usize,
    /// |Q|; values on pairs involving the identity are implicitly zero
    pub group_order: usize,
    pub coords: GfVec,
}

impl Cocycle {
    pub fn zero(p: u8, dim: usize, group_order: usize) -> Cocycle {
        let width = (group_order - 1) * (group_order - 1) * dim;
        Cocycle {
            p,
            dim,
            group_order,
            coords: GfVec::zeros(p, width),
        }
    }

    fn from_coords(p: u8, dim: usize, group_order: usize, coords: GfVec) -> Cocycle {
        debug_assert_eq!(coords.len(), (group_order - 1).pow(2) * dim);
        Cocycle {
            p,
            dim,
            group_order,
            coords,
        }
    }

    #[inline]
    fn offset(&self, q1: usize, q2: usize) -> usize {
        debug_assert!(q1 >= 1 && q2 >= 1);
        ((q1 - 1) * (self.group_order - 1) + (q2 - 1)) * self.dim
    }

    /// f(q1, q2) as a d-vector; zero whenever either argument is 1.
    pub fn value(&self, q1: usize, q2: usize) -> GfVec {
        let mut v = GfVec::zeros(self.p, self.dim);
        if q1 == 0 || q2 == 0 {
            return v;
        }
        let off = self.offset(q1, q2);
        for i in 0..self.dim {
            let c = self.coords.get(off + i);
            if c != 0 {
                v.set(i, c);
            }
        }
        v
    }

    /// Check the cocycle identity against precomputed element matrices.
    pub fn verify(&self, q: &GroupTable, rho: &[GfMatrix]) -> Result<(), CohomologyError> {
        let n = q.order();
        for q1 in 1..n {
            for q2 in 1..n {
                for q3 in 1..n {
                    let mut lhs = rho[q1].apply(&self.value(q2, q3));
                    let p = self.p;
                    lhs.add_scaled(&self.value(q.mul(q1, q2), q3), p - 1);
                    lhs.add_scaled(&self.value(q1, q.mul(q2, q3)), 1);
                    lhs.add_scaled(&self.value(q1, q2), p - 1);
                    if !lhs.is_zero() {
                        return Err(CohomologyError::NotCocycle);
                    }
                }
            }
        }
        Ok(())
    }
}

fn coord_offset(n: usize, dim: usize, q1: usize, q2: usize) -> usize {
    ((q1 - 1) * (n - 1) + (q2 - 1)) * dim
}

/// Basis of the space Z^2 of normalized 2-cocycles, by elimination of the
/// cocycle identities over all non-identity triples.
pub fn cocycle_space(q: &GroupTable, module: &ActionModule) -> Vec<Cocycle> {
    let n = q.order();
    let p = module.p;
    let d = module.dim;
    if n <= 1 {
        return Vec::new();
    }
    let width = (n - 1) * (n - 1) * d;
    let rho = module.element_matrices(q);
    let mut elim = RowEliminator::new(p, width);
    for q1 in 1..n {
        for q2 in 1..n {
            for q3 in 1..n {
                let q12 = q.mul(q1, q2);
                let q23 = q.mul(q2, q3);
                // rho(q1) f(q2,q3) - f(q1 q2, q3) + f(q1, q2 q3) - f(q1, q2) = 0,
                // one scalar row per coordinate r
                for r in 0..d {
                    let mut row = GfVec::zeros(p, width);
                    let base23 = coord_offset(n, d, q2, q3);
                    for c in 0..d {
                        let coeff = rho[q1].get(r, c);
                        if coeff != 0 {
                            let idx = base23 + c;
                            let cur = row.get(idx);
                            row.set(idx, ((cur as u16 + coeff as u16) % p as u16) as u8);
                        }
                    }
                    if q12 != 0 {
                        let idx = coord_offset(n, d, q12, q3) + r;
                        let cur = row.get(idx);
                        row.set(idx, ((cur as u16 + (p - 1) as u16) % p as u16) as u8);
                    }
                    if q23 != 0 {
                        let idx = coord_offset(n, d, q1, q23) + r;
                        let cur = row.get(idx);
                        row.set(idx, ((cur as u16 + 1) % p as u16) as u8);
                    }
                    {
                        let idx = coord_offset(n, d, q1, q2) + r;
                        let cur = row.get(idx);
                        row.set(idx, ((cur as u16 + (p - 1) as u16) % p as u16) as u8);
                    }
                    if !row.is_zero() {
                        elim.insert(row);
                    }
                }
            }
        }
    }
    elim.nullspace_basis()
        .into_iter()
        .map(|v| Cocycle::from_coords(p, d, n, v))
        .collect()
}

/// Basis of the coboundary space B^2: the cocycles delta c for c : Q -> GF(p)^d
/// with c(1) = 0, where (delta c)(q1,q2) = rho(q1) c(q2) - c(q1 q2) + c(q1).
pub fn coboundary_space(q: &GroupTable, module: &ActionModule) -> Vec<Cocycle> {
    let n = q.order();
    let p = module.p;
    let d = module.dim;
    if n <= 1 {
        return Vec::new();
    }
    let width = (n - 1) * (n - 1) * d;
    let rho = module.element_matrices(q);
    let mut elim = RowEliminator::new(p, width);
    let mut basis = Vec::new();
    for supp in 1..n {
        for r in 0..d {
            // c supported at supp with value e_r
            let mut row = GfVec::zeros(p, width);
            for q1 in 1..n {
                for q2 in 1..n {
                    let mut val = GfVec::zeros(p, d);
                    if q2 == supp {
                        let mut e = GfVec::zeros(p, d);
                        e.set(r, 1);
                        val.add_scaled(&rho[q1].apply(&e), 1);
                    }
                    if q.mul(q1, q2) == supp {
                        let cur = val.get(r);
                        val.set(r, ((cur as u16 + (p - 1) as u16) % p as u16) as u8);
                    }
                    if q1 == supp {
                        let cur = val.get(r);
                        val.set(r, ((cur as u16 + 1) % p as u16) as u8);
                    }
                    if !val.is_zero() {
                        let off = coord_offset(n, d, q1, q2);
                        for i in 0..d {
                            let v = val.get(i);
                            if v != 0 {
                                row.set(off + i, v);
                            }
                        }
                    }
                }
            }
            if !row.is_zero() && elim.insert(row.clone()) {
                basis.push(Cocycle::from_coords(p, d, n, row));
            }
        }
    }
    // return the reduced basis for determinism
    elim.basis()
        .into_iter()
        .map(|v| Cocycle::from_coords(p, d, n, v))
        .collect()
}

/// One representative cocycle per element of H^2(Q, N) = Z^2 / B^2, the zero
/// cocycle first.
pub fn h2_reps(q: &GroupTable, module: &ActionModule) -> Result<Vec<Cocycle>, CohomologyError> {
    let n = q.order();
    let p = module.p;
    let d = module.dim;
    if n <= 1 {
        return Ok(vec![Cocycle::zero(p, d, n)]);
    }
    let z2 = cocycle_space(q, module);
    let b2 = coboundary_space(q, module);
    let width = (n - 1) * (n - 1) * d;
    let mut elim = RowEliminator::new(p, width);
    for c in &b2 {
        elim.insert(c.coords.clone());
    }
    debug_assert_eq!(elim.rank(), b2.len());
    // extend B^2 to Z^2; the complement vectors parameterize H^2
    let mut complement: Vec<GfVec> = Vec::new();
    for z in &z2 {
        let rem = elim.reduce(&z.coords);
        if !rem.is_zero() {
            elim.insert(rem.clone());
            complement.push(rem);
        }
    }
    let h2_dim = complement.len();
    let count = (p as u128).checked_pow(h2_dim as u32);
    match count {
        Some(c) if c <= H2_CAP as u128 => {}
        _ => return Err(CohomologyError::CohomologyTooLarge(H2_CAP)),
    }
    let count = (p as usize).pow(h2_dim as u32);
    let mut reps = Vec::with_capacity(count);
    let mut counter = vec![0u8; h2_dim];
    loop {
        let mut v = GfVec::zeros(p, width);
        for (c, b) in counter.iter().zip(&complement) {
            if *c != 0 {
                v.add_scaled(b, *c);
            }
        }
        reps.push(Cocycle::from_coords(p, d, n, v));
        // increment base-p counter; least significant digit first
        let mut i = 0;
        while i < h2_dim {
            counter[i] += 1;
            if counter[i] < p {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        if i == h2_dim {
            break;
        }
    }
    Ok(reps)
}

/// The result of building an extension of Q by the module N.
pub struct Extension {
    pub group: GroupTable,
    /// image of N: the elements (v, 1), indices 0 .. p^d - 1
    pub kernel: ElementSubset,
    /// surjection extension -> Q, index -> q
    pub projection: Vec<usize>,
}

/// The extension group defined by a normalized cocycle: elements (v, q) with
/// product (v1, q1)(v2, q2) = (v1 + rho(q1) v2 + f(q1,q2), q1 q2), encoded as
/// index = q * p^d + sum v_i p^i.
pub fn extension_from_cocycle(
    q: &GroupTable,
    module: &ActionModule,
    f: &Cocycle,
) -> Result<Extension, CohomologyError> {
    let n = q.order();
    let p = module.p as usize;
    let d = module.dim;
    let pd = p.pow(d as u32);
    let order = n * pd;
    let rho = module.element_matrices(q);

    let vec_of = |val: usize| -> GfVec {
        let mut v = GfVec::zeros(module.p, d);
        let mut rest = val;
        for i in 0..d {
            let digit = (rest % p) as u8;
            if digit != 0 {
                v.set(i, digit);
            }
            rest /= p;
        }
        v
    };
    let val_of = |v: &GfVec| -> usize {
        let mut acc = 0usize;
        for i in (0..d).rev() {
            acc = acc * p + v.get(i) as usize;
        }
        acc
    };

    let mut table = vec![0u16; order * order];
    for q1 in 0..n {
        // rho(q1) applied to every kernel value, computed once per q1
        let rho_q1: Vec<GfVec> = (0..pd).map(|v2| rho[q1].apply(&vec_of(v2))).collect();
        for q2 in 0..n {
            let fval = f.value(q1, q2);
            let q12 = q.mul(q1, q2);
            for v1 in 0..pd {
                let a = q1 * pd + v1;
                let v1vec = vec_of(v1);
                for v2 in 0..pd {
                    let mut v = v1vec.clone();
                    v.add_scaled(&rho_q1[v2], 1);
                    v.add_scaled(&fval, 1);
                    let b = q2 * pd + v2;
                    table[a * order + b] = (q12 * pd + val_of(&v)) as u16;
                }
            }
        }
    }
    // full GroupTable validation; associativity here is precisely the
    // cocycle identity
    let group = match GroupTable::from_flat(order, table) {
        Ok(g) => g,
        Err(GroupError::NotAssociative) => return Err(CohomologyError::NotCocycle),
        Err(e) => return Err(e.into()),
    };
    let kernel = ElementSubset::new((0..pd).collect());
    let projection = (0..order).map(|idx| idx / pd).collect();
    Ok(Extension {
        group,
        kernel,
        projection,
    })
}
