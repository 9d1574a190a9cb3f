//! Dense linear algebra over prime fields GF(p).
//!
//! Rows over GF(2) are bit-packed into 64-bit words; rows over odd primes are
//! stored as bytes. Everything downstream (module spinning, cocycle
//! elimination, nullspaces) is written against [`GfVec`] so the packed and
//! byte paths share one code base.

use std::fmt;

/// Multiplicative inverse mod a prime `p`.
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0);
    // p is tiny, Fermat is fine
    let mut r: u32 = 1;
    let mut base: u32 = (a % p) as u32;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u32;
        }
        base = base * base % p as u32;
        e >>= 1;
    }
    r as u8
}

/// A vector of fixed length over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfVec {
    /// p = 2, bit-packed little-endian within each word.
    Bits { len: usize, words: Vec<u64> },
    /// Odd prime, one residue per byte.
    Bytes { p: u8, data: Vec<u8> },
}

impl GfVec {
    pub fn zeros(p: u8, len: usize) -> Self {
        if p == 2 {
            GfVec::Bits {
                len,
                words: vec![0u64; len.div_ceil(64)],
            }
        } else {
            GfVec::Bytes {
                p,
                data: vec![0u8; len],
            }
        }
    }

    pub fn from_entries(p: u8, entries: &[u8]) -> Self {
        let mut v = GfVec::zeros(p, entries.len());
        for (i, &e) in entries.iter().enumerate() {
            v.set(i, e % p);
        }
        v
    }

    pub fn p(&self) -> u8 {
        match self {
            GfVec::Bits { .. } => 2,
            GfVec::Bytes { p, .. } => *p,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            GfVec::Bits { len, .. } => *len,
            GfVec::Bytes { data, .. } => data.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> u8 {
        match self {
            GfVec::Bits { words, .. } => ((words[i / 64] >> (i % 64)) & 1) as u8,
            GfVec::Bytes { data, .. } => data[i],
        }
    }

    pub fn set(&mut self, i: usize, value: u8) {
        match self {
            GfVec::Bits { words, .. } => {
                if value & 1 == 1 {
                    words[i / 64] |= 1u64 << (i % 64);
                } else {
                    words[i / 64] &= !(1u64 << (i % 64));
                }
            }
            GfVec::Bytes { p, data } => data[i] = value % *p,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GfVec::Bits { words, .. } => words.iter().all(|&w| w == 0),
            GfVec::Bytes { data, .. } => data.iter().all(|&b| b == 0),
        }
    }

    /// self += c * other  (mod p)
    pub fn add_scaled(&mut self, other: &GfVec, c: u8) {
        match (self, other) {
            (GfVec::Bits { words, .. }, GfVec::Bits { words: ow, .. }) => {
                if c & 1 == 1 {
                    for (w, o) in words.iter_mut().zip(ow) {
                        *w ^= o;
                    }
                }
            }
            (GfVec::Bytes { p, data }, GfVec::Bytes { data: od, .. }) => {
                let p = *p as u16;
                let c = c as u16 % p;
                if c != 0 {
                    for (d, o) in data.iter_mut().zip(od) {
                        *d = ((*d as u16 + c * *o as u16) % p) as u8;
                    }
                }
            }
            _ => panic!("mixed field characteristics"),
        }
    }

    pub fn scale(&mut self, c: u8) {
        match self {
            GfVec::Bits { words, .. } => {
                if c & 1 == 0 {
                    for w in words.iter_mut() {
                        *w = 0;
                    }
                }
            }
            GfVec::Bytes { p, data } => {
                let p = *p as u16;
                let c = c as u16 % p;
                for d in data.iter_mut() {
                    *d = ((*d as u16 * c) % p) as u8;
                }
            }
        }
    }

    /// Index and value of the first nonzero entry at or after `from`.
    pub fn first_nonzero(&self, from: usize) -> Option<(usize, u8)> {
        match self {
            GfVec::Bits { len, words } => {
                let mut wi = from / 64;
                if wi >= words.len() {
                    return None;
                }
                let mut w = words[wi] & (!0u64).checked_shl((from % 64) as u32).unwrap_or(0);
                loop {
                    if w != 0 {
                        let i = wi * 64 + w.trailing_zeros() as usize;
                        return if i < *len { Some((i, 1)) } else { None };
                    }
                    wi += 1;
                    if wi >= words.len() {
                        return None;
                    }
                    w = words[wi];
                }
            }
            GfVec::Bytes { data, .. } => data[from..]
                .iter()
                .position(|&b| b != 0)
                .map(|off| (from + off, data[from + off])),
        }
    }

    /// Scalar product sum_i self[i]*other[i] mod p.
    pub fn dot(&self, other: &GfVec) -> u8 {
        match (self, other) {
            (GfVec::Bits { words, .. }, GfVec::Bits { words: ow, .. }) => {
                let mut acc = 0u32;
                for (w, o) in words.iter().zip(ow) {
                    acc ^= (w & o).count_ones();
                }
                (acc & 1) as u8
            }
            (GfVec::Bytes { p, data }, GfVec::Bytes { data: od, .. }) => {
                let p = *p as u32;
                let mut acc = 0u32;
                for (d, o) in data.iter().zip(od) {
                    acc = (acc + *d as u32 * *o as u32) % p;
                }
                acc as u8
            }
            _ => panic!("mixed field characteristics"),
        }
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for GfVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfVec(p={})[", self.p())?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, "]")
    }
}

/// A dense rows-first matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    pub p: u8,
    pub rows: usize,
    pub cols: usize,
    data: Vec<GfVec>,
}

impl GfMatrix {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        GfMatrix {
            p,
            rows,
            cols,
            data: vec![GfVec::zeros(p, cols); rows],
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = GfMatrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i].set(i, 1);
        }
        m
    }

    pub fn from_rows(p: u8, cols: usize, rows: Vec<GfVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols && r.p() == p));
        GfMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_entries(p: u8, rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = GfMatrix::zeros(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, entries[r * cols + c]);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r].set(c, v % self.p);
    }

    pub fn row(&self, r: usize) -> &GfVec {
        &self.data[r]
    }

    pub fn rows_vec(&self) -> &[GfVec] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    /// Standard matrix product. Row i of the result is the combination of
    /// rows of `other` with coefficients from row i of `self`.
    pub fn mul(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = GfMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let c = self.get(i, k);
                if c != 0 {
                    out.data[i].add_scaled(&other.data[k], c);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i].add_scaled(&other.data[i], 1);
        }
        out
    }

    /// self += c * other
    pub fn add_scaled_inplace(&mut self, other: &GfMatrix, c: u8) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for i in 0..self.rows {
            self.data[i].add_scaled(&other.data[i], c);
        }
    }

    /// self += c*I
    pub fn add_scalar_diag(&mut self, c: u8) {
        for i in 0..self.rows.min(self.cols) {
            let v = (self.get(i, i) as u16 + c as u16) % self.p as u16;
            self.set(i, i, v as u8);
        }
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut out = GfMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    out.set(c, r, v);
                }
            }
        }
        out
    }

    /// Matrix applied to a column vector: out[i] = <row i, v>.
    pub fn apply(&self, v: &GfVec) -> GfVec {
        assert_eq!(v.len(), self.cols);
        let mut out = GfVec::zeros(self.p, self.rows);
        for i in 0..self.rows {
            let d = self.data[i].dot(v);
            if d != 0 {
                out.set(i, d);
            }
        }
        out
    }

    /// Reduced row echelon form together with pivot column indices.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            // find pivot in column c at row >= r
            let mut pr = None;
            for i in r..rows.len() {
                if rows[i].get(c) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            rows.swap(r, pr);
            let lead = rows[r].get(c);
            if lead != 1 {
                rows[r].scale(inv_mod(lead, self.p));
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r {
                    let v = row.get(c);
                    if v != 0 {
                        row.add_scaled(&pivot_row, (self.p - v) % self.p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (
            GfMatrix::from_rows(self.p, self.cols, rows),
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace {v : Mv = 0}.
    pub fn nullspace(&self) -> Vec<GfVec> {
        let (ech, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = GfVec::zeros(self.p, self.cols);
            v.set(free, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                let coeff = ech.get(ri, free);
                if coeff != 0 {
                    v.set(pc, (self.p - coeff) % self.p);
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<GfMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // augment [A | I] row-wise
        let mut aug: Vec<GfVec> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = GfVec::zeros(self.p, 2 * n);
            for c in 0..n {
                let v = self.get(i, c);
                if v != 0 {
                    row.set(c, v);
                }
            }
            row.set(n + i, 1);
            aug.push(row);
        }
        let m = GfMatrix::from_rows(self.p, 2 * n, aug);
        let (ech, pivots) = m.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = GfMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for c in 0..n {
                out.set(i, c, ech.get(i, n + c));
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.data[r])?;
        }
        Ok(())
    }
}

/// Incremental row-echelon eliminator.
///
/// Rows are fed one at a time (the cocycle systems are generated row by row
/// and mostly redundant); pivot rows are kept fully reduced so a nullspace
/// basis can be read off at the end without back-substitution.
pub struct RowEliminator {
    p: u8,
    width: usize,
    /// pivot column -> reduced row with leading 1 at that column
    pivot_rows: Vec<Option<GfVec>>,
    rank: usize,
}

impl RowEliminator {
    pub fn new(p: u8, width: usize) -> Self {
        RowEliminator {
            p,
            width,
            pivot_rows: vec![None; width],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `row` against the current basis; if a nonzero remainder is
    /// left it becomes a new pivot row. Returns true when the rank grew.
    pub fn insert(&mut self, row: GfVec) -> bool {
        debug_assert_eq!(row.len(), self.width);
        // full reduction first, so the stored row is zero at every existing
        // pivot column and the basis stays in reduced echelon form
        let mut row = self.reduce(&row);
        let Some((c, v)) = row.first_nonzero(0) else {
            return false;
        };
        if v != 1 {
            row.scale(inv_mod(v, self.p));
        }
        for pc in self.pivot_rows.iter_mut().flatten() {
            let coeff = pc.get(c);
            if coeff != 0 {
                pc.add_scaled(&row, (self.p - coeff) % self.p);
            }
        }
        self.pivot_rows[c] = Some(row);
        self.rank += 1;
        true
    }

    /// Would `row` reduce to zero against the current basis?
    pub fn reduces_to_zero(&self, row: &GfVec) -> bool {
        let mut row = row.clone();
        let mut from = 0;
        while let Some((c, v)) = row.first_nonzero(from) {
            match &self.pivot_rows[c] {
                Some(pr) => {
                    row.add_scaled(pr, (self.p - v) % self.p);
                    from = c;
                }
                None => return false,
            }
        }
        true
    }

    /// Fully reduce a row against the basis and return the remainder.
    pub fn reduce(&self, row: &GfVec) -> GfVec {
        let mut row = row.clone();
        let mut from = 0;
        while let Some((c, v)) = row.first_nonzero(from) {
            match &self.pivot_rows[c] {
                Some(pr) => {
                    row.add_scaled(pr, (self.p - v) % self.p);
                    from = c;
                }
                None => {
                    from = c + 1;
                    if from >= self.width {
                        break;
                    }
                }
            }
        }
        row
    }

    pub fn basis(&self) -> Vec<GfVec> {
        self.pivot_rows.iter().flatten().cloned().collect()
    }

    /// Basis of the solution space of the homogeneous system whose
    /// coefficient rows were inserted.
    pub fn nullspace_basis(&self) -> Vec<GfVec> {
        let mut basis = Vec::new();
        for free in 0..self.width {
            if self.pivot_rows[free].is_some() {
                continue;
            }
            let mut v = GfVec::zeros(self.p, self.width);
            v.set(free, 1);
            for (pc, row) in self.pivot_rows.iter().enumerate() {
                if let Some(row) = row {
                    let coeff = row.get(free);
                    if coeff != 0 {
                        v.set(pc, (self.p - coeff) % self.p);
                    }
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inv_mod_small_primes() {
        for p in [2u8, 3, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!((a as u16 * inv_mod(a, p) as u16) % p as u16, 1);
            }
        }
    }

    #[test]
    fn gf2_roundtrip_and_first_nonzero() {
        let mut v = GfVec::zeros(2, 130);
        v.set(0, 1);
        v.set(64, 1);
        v.set(129, 1);
        assert_eq!(v.first_nonzero(0), Some((0, 1)));
        assert_eq!(v.first_nonzero(1), Some((64, 1)));
        assert_eq!(v.first_nonzero(65), Some((129, 1)));
        v.set(0, 0);
        assert_eq!(v.first_nonzero(0), Some((64, 1)));
    }

    #[test]
    fn rref_and_nullspace_gf2() {
        // x + y = 0, y + z = 0 over GF(2): kernel spanned by (1,1,1)
        let m = GfMatrix::from_entries(2, 2, 3, &[1, 1, 0, 0, 1, 1]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].entries(), vec![1, 1, 1]);
        for v in &ns {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn inverse_gf5() {
        let m = GfMatrix::from_entries(5, 2, 2, &[1, 2, 3, 4]);
        let mi = m.inverse().expect("invertible");
        assert_eq!(m.mul(&mi), GfMatrix::identity(5, 2));
        assert_eq!(mi.mul(&m), GfMatrix::identity(5, 2));
        let singular = GfMatrix::from_entries(5, 2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn eliminator_matches_rref_rank() {
        let m = GfMatrix::from_entries(
            3,
            4,
            5,
            &[1, 2, 0, 1, 2, 0, 1, 1, 0, 2, 1, 0, 2, 1, 1, 2, 1, 1, 2, 0],
        );
        let mut elim = RowEliminator::new(3, 5);
        for r in 0..4 {
            elim.insert(m.row(r).clone());
        }
        assert_eq!(elim.rank(), m.rank());
        for v in elim.nullspace_basis() {
            assert!(m.apply(&v).is_zero());
        }
        assert_eq!(elim.nullspace_basis().len(), m.nullity());
    }

    proptest! {
        #[test]
        fn matrix_mul_associative(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for &p in &[2u8, 3, 5] {
                let n = 4usize;
                let rand_mat = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let entries: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
                    GfMatrix::from_entries(p, n, n, &entries)
                };
                let a = rand_mat(&mut rng);
                let b = rand_mat(&mut rng);
                let c = rand_mat(&mut rng);
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }
        }

        #[test]
        fn rref_idempotent(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for &p in &[2u8, 3, 7] {
                let entries: Vec<u8> = (0..4 * 6).map(|_| rng.gen_range(0..p)).collect();
                let m = GfMatrix::from_entries(p, 4, 6, &entries);
                let (e1, piv1) = m.rref();
                let (e2, piv2) = e1.rref();
                prop_assert_eq!(e1, e2);
                prop_assert_eq!(piv1, piv2);
            }
        }

        #[test]
        fn nullspace_vectors_annihilate(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for &p in &[2u8, 5] {
                let entries: Vec<u8> = (0..5 * 7).map(|_| rng.gen_range(0..p)).collect();
                let m = GfMatrix::from_entries(p, 5, 7, &entries);
                let ns = m.nullspace();
                prop_assert_eq!(ns.len(), m.nullity());
                for v in &ns {
                    prop_assert!(m.apply(v).is_zero());
                }
            }
        }
    }
}
