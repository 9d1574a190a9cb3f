//! Finite groups as explicit multiplication tables.
//!
//! Element 0 is always the identity; every constructor relabels to keep it
//! there. Tables are validated on construction: Latin square, identity,
//! inverses and associativity (fully for orders up to 256, sampled above).
//!
//! Isomorphism of marked generating pairs is decided through a breadth-first
//! relabeling certificate; the same machinery recovers explicit isomorphisms
//! and the full automorphism group.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Order above which associativity is verified on random samples only.
const FULL_ASSOC_CHECK_LIMIT: usize = 256;
const ASSOC_SAMPLES: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not a Latin square")]
    NotLatinSquare,
    #[error("index 0 is not a two-sided identity")]
    NoIdentityAtZero,
    #[error("table is not associative")]
    NotAssociative,
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("automorphism is not involutory")]
    NotInvolutory,
    #[error("elements do not generate the group")]
    NotGenerating,
    #[error("malformed group file: {0}")]
    BadFormat(String),
}

/// A finite group of order `n` given by its full multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    n: usize,
    /// row-major, table[a*n + b] = a*b
    table: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u16>,
}

impl GroupTable {
    /// Validate a raw table and build the caches.
    pub fn from_table(raw: Vec<Vec<usize>>) -> Result<GroupTable, GroupError> {
        let n = raw.len();
        if n == 0 {
            return Err(GroupError::BadFormat("empty table".into()));
        }
        let mut table = vec![0u16; n * n];
        for (a, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::BadFormat("ragged table".into()));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::BadFormat(format!(
                        "entry {v} out of range for order {n}"
                    )));
                }
                table[a * n + b] = v as u16;
            }
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u16>) -> Result<GroupTable, GroupError> {
        assert!(n <= u16::MAX as usize);
        // Latin square: every row and column a permutation
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatinSquare);
                }
                seen[v] = true;
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatinSquare);
                }
                seen[v] = true;
            }
        }
        // identity at 0
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(GroupError::NoIdentityAtZero);
            }
        }
        // associativity
        if n <= FULL_ASSOC_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b] as usize;
                    for c in 0..n {
                        let bc = table[b * n + c] as usize;
                        if table[ab * n + c] != table[a * n + bc] {
                            return Err(GroupError::NotAssociative);
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..ASSOC_SAMPLES {
                let a = (next() % n as u64) as usize;
                let b = (next() % n as u64) as usize;
                let c = (next() % n as u64) as usize;
                let ab = table[a * n + b] as usize;
                let bc = table[b * n + c] as usize;
                if table[ab * n + c] != table[a * n + bc] {
                    return Err(GroupError::NotAssociative);
                }
            }
        }
        // inverses exist by the Latin property; locate them
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let mut found = false;
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u16;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(GroupError::NotLatinSquare);
            }
        }
        let mut orders = vec![0u16; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k as u16;
        }
        Ok(GroupTable {
            n,
            table,
            inv,
            orders,
        })
    }

    /// The cyclic group of order `n`: a*b = (a+b) mod n.
    pub fn cyclic(n: usize) -> GroupTable {
        assert!(n >= 1);
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u16;
            }
        }
        GroupTable::from_flat(n, table).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// a^-1 * b * a
    #[inline]
    pub fn conj(&self, b: usize, a: usize) -> usize {
        self.mul(self.mul(self.inv(a), b), a)
    }

    /// [a, b] = a^-1 b^-1 a b
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn involutions(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.orders[a] == 2).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn power(&self, a: usize, mut k: usize) -> usize {
        let mut acc = 0;
        let mut base = a;
        loop {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            k >>= 1;
            if k == 0 {
                return acc;
            }
            base = self.mul(base, base);
        }
    }

    /// Closure of `gens` (plus the identity) under the product, by BFS.
    pub fn subgroup_generated(&self, gens: &[usize]) -> ElementSubset {
        let mut in_set = vec![false; self.n];
        in_set[0] = true;
        let mut members = vec![0usize];
        let mut queue = vec![0usize];
        while let Some(e) = queue.pop() {
            for &g in gens {
                let v = self.mul(e, g);
                if !in_set[v] {
                    in_set[v] = true;
                    members.push(v);
                    queue.push(v);
                }
            }
        }
        members.sort_unstable();
        ElementSubset { members }
    }

    /// Conjugacy classes; classes[i] lists the members of class i, sorted by
    /// least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..self.n {
                let c = self.conj(a, g);
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// All normal subgroups, as the join-closure of the normal closures of
    /// single conjugacy classes.
    pub fn normal_subgroups(&self) -> Vec<ElementSubset> {
        let classes = self.conjugacy_classes();
        // the subgroup generated by a conjugation-closed set is normal
        let atoms: Vec<ElementSubset> = classes
            .iter()
            .map(|c| self.subgroup_generated(c))
            .collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        for a in &atoms {
            found.insert(a.members.clone());
        }
        loop {
            let mut fresh = Vec::new();
            for m in &found {
                for a in &atoms {
                    let mut gens = m.clone();
                    gens.extend_from_slice(&a.members);
                    let join = self.subgroup_generated(&gens);
                    if !found.contains(&join.members) {
                        fresh.push(join.members);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            found.extend(fresh);
        }
        let mut out: Vec<ElementSubset> = found
            .into_iter()
            .map(|members| ElementSubset { members })
            .collect();
        out.sort_by_key(|s| (s.len(), s.members.clone()));
        out
    }

    /// Derived subgroup of a subgroup given by its member list.
    pub fn derived_subgroup(&self, sub: &ElementSubset) -> ElementSubset {
        let mut gens = Vec::new();
        for &a in &sub.members {
            for &b in &sub.members {
                gens.push(self.commutator(a, b));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.subgroup_generated(&gens)
    }

    pub fn is_soluble_subgroup(&self, sub: &ElementSubset) -> bool {
        let mut cur = sub.clone();
        loop {
            let next = self.derived_subgroup(&cur);
            if next.len() == cur.len() {
                return cur.len() == 1;
            }
            cur = next;
        }
    }

    /// The largest normal soluble subgroup.
    pub fn soluble_radical(&self) -> ElementSubset {
        let normals = self.normal_subgroups();
        let mut best = ElementSubset { members: vec![0] };
        for sub in normals {
            if sub.len() > best.len() && self.is_soluble_subgroup(&sub) {
                best = sub;
            }
        }
        best
    }

    pub fn center(&self) -> ElementSubset {
        let members = (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect();
        ElementSubset { members }
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    /// Quotient by a normal subgroup. Returns the quotient table (coset of
    /// the identity labeled 0, remaining cosets labeled by least member) and
    /// the projection map element -> coset label.
    pub fn quotient(&self, nsub: &ElementSubset) -> Result<(GroupTable, Vec<usize>), GroupError> {
        if !self.is_subgroup(nsub) || !self.is_normal(nsub) {
            return Err(GroupError::NotNormal);
        }
        let n = self.n;
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if coset[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            for &h in &nsub.members {
                coset[self.mul(h, a)] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![0u16; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset[self.mul(a, b)] as u16;
            }
        }
        let qt = GroupTable::from_flat(q, table)?;
        Ok((qt, coset))
    }

    pub fn is_subgroup(&self, sub: &ElementSubset) -> bool {
        if sub.members.first() != Some(&0) {
            return false;
        }
        let mask = sub.mask(self.n);
        sub.members
            .iter()
            .all(|&a| sub.members.iter().all(|&b| mask[self.mul(a, b)]))
    }

    pub fn is_normal(&self, sub: &ElementSubset) -> bool {
        let mask = sub.mask(self.n);
        (0..self.n).all(|g| sub.members.iter().all(|&h| mask[self.conj(h, g)]))
    }

    /// Check that `map` is a bijective homomorphism.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        if map.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &v in map {
            if v >= self.n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if map[self.mul(a, b)] != self.mul(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Semidirect product G x| <t> where `tau` is an involutory automorphism.
    /// Pairs (a, i) are encoded as i*n + a; the product is
    /// (a,i)(b,j) = (a*tau^i(b), i xor j).
    pub fn semidirect_with_involutory_automorphism(
        &self,
        tau: &[usize],
    ) -> Result<GroupTable, GroupError> {
        if !self.is_automorphism(tau) {
            return Err(GroupError::NotAutomorphism);
        }
        if (0..self.n).any(|a| tau[tau[a]] != a) {
            return Err(GroupError::NotInvolutory);
        }
        let n = self.n;
        let m = 2 * n;
        let mut table = vec![0u16; m * m];
        for i in 0..2 {
            for a in 0..n {
                for j in 0..2 {
                    for b in 0..n {
                        let tb = if i == 1 { tau[b] } else { b };
                        let prod = (i ^ j) * n + self.mul(a, tb);
                        table[(i * n + a) * m + (j * n + b)] = prod as u16;
                    }
                }
            }
        }
        GroupTable::from_flat(m, table)
    }

    /// Breadth-first relabeling from the marked pair (s, t).
    ///
    /// sigma(identity) = 0; labeled elements are processed in label order and
    /// e*s is visited before e*t, unseen results receiving fresh labels.
    /// Returns (order, label) where order[l] is the element with label l.
    /// None when {s, t} does not generate.
    pub fn bfs_labeling(&self, s: usize, t: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n;
        let mut order = Vec::with_capacity(n);
        let mut label = vec![usize::MAX; n];
        order.push(0);
        label[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let e = order[i];
            for &w in &[self.mul(e, s), self.mul(e, t)] {
                if label[w] == usize::MAX {
                    label[w] = order.len();
                    order.push(w);
                }
            }
            i += 1;
        }
        if order.len() == n {
            Some((order, label))
        } else {
            None
        }
    }

    /// Certificate of the marked pair (s, t); equal certificates characterize
    /// the isomorphism class of (G; s, t).
    pub fn pair_certificate(&self, s: usize, t: usize) -> Result<PairCertificate, GroupError> {
        let (order, label) = self.bfs_labeling(s, t).ok_or(GroupError::NotGenerating)?;
        let mut seq = Vec::with_capacity(2 * self.n);
        for &e in &order {
            seq.push(label[self.mul(e, s)] as u16);
            seq.push(label[self.mul(e, t)] as u16);
        }
        Ok(PairCertificate { seq })
    }

    /// The isomorphism sending (s, t) to (s2, t2) in `other`, if one exists,
    /// as the map element-of-self -> element-of-other.
    pub fn isomorphism_from_pairs(
        &self,
        s: usize,
        t: usize,
        other: &GroupTable,
        s2: usize,
        t2: usize,
    ) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let (_, label1) = self.bfs_labeling(s, t)?;
        let (order2, _) = other.bfs_labeling(s2, t2)?;
        let c1 = self.pair_certificate(s, t).ok()?;
        let c2 = other.pair_certificate(s2, t2).ok()?;
        if c1 != c2 {
            return None;
        }
        let mut map = vec![0usize; self.n];
        for e in 0..self.n {
            map[e] = order2[label1[e]];
        }
        Some(map)
    }

    /// The full automorphism group, recovered by matching the certificate of
    /// one generating pair against every other pair.
    pub fn automorphisms_from_pair(
        &self,
        s: usize,
        t: usize,
    ) -> Result<Vec<Vec<usize>>, GroupError> {
        let base = self.pair_certificate(s, t)?;
        let (_, label1) = self.bfs_labeling(s, t).ok_or(GroupError::NotGenerating)?;
        let os = self.element_order(s);
        let ot = self.element_order(t);
        let mut autos = Vec::new();
        for s2 in 0..self.n {
            if self.element_order(s2) != os {
                continue;
            }
            for t2 in 0..self.n {
                if self.element_order(t2) != ot {
                    continue;
                }
                let Some((order2, _)) = self.bfs_labeling(s2, t2) else {
                    continue;
                };
                let cert = self
                    .pair_certificate(s2, t2)
                    .expect("generating pair has a certificate");
                if cert == base {
                    let mut map = vec![0usize; self.n];
                    for e in 0..self.n {
                        map[e] = order2[label1[e]];
                    }
                    autos.push(map);
                }
            }
        }
        Ok(autos)
    }

    /// Least pair certificate over all generating pairs (x, g) with x an
    /// involution; the canonical certificate of a (2,*)-group. None when the
    /// group admits no such pair.
    pub fn canonical_certificate(&self) -> Option<PairCertificate> {
        let mut best: Option<PairCertificate> = None;
        for x in self.involutions() {
            for g in 0..self.n {
                if let Ok(cert) = self.pair_certificate(x, g) {
                    if best.as_ref().is_none_or(|b| cert < *b) {
                        best = Some(cert);
                    }
                }
            }
        }
        best
    }

    /// Serialize in the GRP1 exchange format.
    pub fn to_grp1(&self) -> String {
        let mut out = format!("GRP1 {}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|b| self.mul(a, b).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the GRP1 exchange format.
    pub fn from_grp1(text: &str) -> Result<GroupTable, GroupError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| GroupError::BadFormat("empty file".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("GRP1") {
            return Err(GroupError::BadFormat("missing GRP1 header".into()));
        }
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GroupError::BadFormat("bad order in header".into()))?;
        if n == 0 {
            return Err(GroupError::BadFormat("order must be positive".into()));
        }
        let mut raw = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| GroupError::BadFormat("truncated table".into()))?;
            let row: Result<Vec<usize>, _> =
                line.split_whitespace().map(|t| t.parse::<usize>()).collect();
            let row = row.map_err(|_| GroupError::BadFormat("non-integer entry".into()))?;
            raw.push(row);
        }
        GroupTable::from_table(raw)
    }

    /// Multiplication table of the group generated by permutations, in its
    /// regular representation. The identity permutation gets index 0 and the
    /// remaining elements are sorted, so the labeling is deterministic.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<GroupTable, GroupError> {
        let degree = gens.first().map(|g| g.len()).unwrap_or(1);
        for g in gens {
            if g.len() != degree {
                return Err(GroupError::BadFormat("mixed permutation degrees".into()));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(GroupError::BadFormat("not a permutation".into()));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert(identity.clone());
        let mut queue = vec![identity.clone()];
        while let Some(e) = queue.pop() {
            for g in gens {
                // e followed by g
                let prod: Vec<usize> = e.iter().map(|&i| g[i]).collect();
                if elems.insert(prod.clone()) {
                    queue.push(prod);
                }
            }
        }
        let mut list: Vec<Vec<usize>> = Vec::with_capacity(elems.len());
        list.push(identity.clone());
        for e in elems {
            if e != identity {
                list.push(e);
            }
        }
        let index_of: std::collections::HashMap<&[usize], usize> = list
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let n = list.len();
        let mut table = vec![0u16; n * n];
        let mut prod = vec![0usize; degree];
        for (a, pa) in list.iter().enumerate() {
            for (b, pb) in list.iter().enumerate() {
                for (slot, &i) in prod.iter_mut().zip(pa.iter()) {
                    *slot = pb[i];
                }
                table[a * n + b] = index_of[prod.as_slice()] as u16;
            }
        }
        GroupTable::from_flat(n, table)
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order={})", self.n)
    }
}

/// A subset of the elements of a group, sorted.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct ElementSubset {
    pub members: Vec<usize>,
}

impl ElementSubset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSubset { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &a in &self.members {
            m[a] = true;
        }
        m
    }
}

/// BFS certificate of a marked generating tuple; equality is isomorphism of
/// the marked group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PairCertificate {
    seq: Vec<u16>,
}

impl PairCertificate {
    pub fn labels(&self) -> &[u16] {
        &self.seq
    }

    /// Big-endian 16-bit serialization.
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * self.seq.len());
        for &v in &self.seq {
            out.extend_from_slice(&v.to_be_bytes());
        }
        out
    }

    pub fn hash_hex(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(self.bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// BFS certificate over an arbitrary generator tuple (used for regular maps,
/// where three marked generators are compared at once).
pub fn tuple_certificate(g: &GroupTable, gens: &[usize]) -> Result<PairCertificate, GroupError> {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut label = vec![usize::MAX; n];
    order.push(0);
    label[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let e = order[i];
        for &s in gens {
            let w = g.mul(e, s);
            if label[w] == usize::MAX {
                label[w] = order.len();
                order.push(w);
            }
        }
        i += 1;
    }
    if order.len() != n {
        return Err(GroupError::NotGenerating);
    }
    let mut seq = Vec::with_capacity(gens.len() * n);
    for &e in &order {
        for &s in gens {
            seq.push(label[g.mul(e, s)] as u16);
        }
    }
    Ok(PairCertificate { seq })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> GroupTable {
        GroupTable::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    pub(crate) fn a4() -> GroupTable {
        GroupTable::from_permutations(&[vec![1, 0, 3, 2], vec![1, 2, 0, 3]]).unwrap()
    }

    pub(crate) fn a5() -> GroupTable {
        GroupTable::from_permutations(&[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]).unwrap()
    }

    pub(crate) fn v4() -> GroupTable {
        GroupTable::from_permutations(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap()
    }

    pub(crate) fn d4() -> GroupTable {
        let c4 = GroupTable::cyclic(4);
        let inversion: Vec<usize> = (0..4).map(|a| c4.inv(a)).collect();
        c4.semidirect_with_involutory_automorphism(&inversion)
            .unwrap()
    }

    pub(crate) fn q8() -> GroupTable {
        // elements 1, -1, i, -i, j, -j, k, -k encoded 0..8
        // (sign, axis): index = axis*2 + sign with axes 1, i, j, k
        let mul = |a: usize, b: usize| -> usize {
            let (sa, xa) = (a % 2, a / 2);
            let (sb, xb) = (b % 2, b / 2);
            // quaternion axis product table with sign: axes 0=1,1=i,2=j,3=k
            const AXIS: [[(usize, usize); 4]; 4] = [
                [(0, 0), (1, 0), (2, 0), (3, 0)],
                [(1, 0), (0, 1), (3, 0), (2, 1)],
                [(2, 0), (3, 1), (0, 1), (1, 0)],
                [(3, 0), (2, 0), (1, 1), (0, 1)],
            ];
            let (axis, extra) = AXIS[xa][xb];
            axis * 2 + (sa ^ sb ^ extra)
        };
        let raw: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
        GroupTable::from_table(raw).unwrap()
    }

    #[test]
    fn trivial_and_c2() {
        let g = GroupTable::from_table(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let c2 = GroupTable::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.element_order(1), 2);
        assert_eq!(
            GroupTable::from_table(vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NotLatinSquare)
        );
    }

    #[test]
    fn identity_must_be_zero() {
        // Latin square with identity at index 1: relabeled C2 misplaced
        let res = GroupTable::from_table(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(res, Err(GroupError::NoIdentityAtZero));
    }

    #[test]
    fn cyclic_orders() {
        let c5 = GroupTable::cyclic(5);
        assert!(c5.involutions().is_empty());
        for a in 1..5 {
            assert_eq!(c5.element_order(a), 5);
        }
        let c6 = GroupTable::cyclic(6);
        assert_eq!(c6.involutions(), vec![3]);
        assert_eq!(c6.element_order(3), 2);
        assert_eq!(c6.element_order(2), 3);
        assert_eq!(c6.element_order(0), 1);
        assert_eq!(GroupTable::cyclic(1).order(), 1);
    }

    #[test]
    fn element_orders_divide_group_order() {
        for g in [s3(), a4(), d4(), q8()] {
            for a in 0..g.order() {
                assert_eq!(g.order() % g.element_order(a), 0);
            }
        }
    }

    #[test]
    fn subgroup_generation() {
        let s3 = s3();
        let three_cycle = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        assert_eq!(s3.subgroup_generated(&[three_cycle]).len(), 3);
        assert_eq!(s3.subgroup_generated(&[]).members, vec![0]);
        let c6 = GroupTable::cyclic(6);
        assert_eq!(c6.subgroup_generated(&[2, 3]).len(), 6);
    }

    #[test]
    fn normal_subgroups_counts() {
        assert_eq!(s3().normal_subgroups().len(), 3);
        assert_eq!(GroupTable::cyclic(4).normal_subgroups().len(), 3);
        // brute-force oracle: a subset closed under products and conjugation
        let a5 = a5();
        let normals = a5.normal_subgroups();
        assert_eq!(normals.len(), 2);
        for nsub in &normals {
            assert!(a5.is_subgroup(nsub));
            assert!(a5.is_normal(nsub));
        }
    }

    #[test]
    fn normal_subgroups_are_conjugation_invariant() {
        for g in [s3(), d4(), a4(), q8()] {
            for nsub in g.normal_subgroups() {
                assert!(g.is_subgroup(&nsub));
                assert!(g.is_normal(&nsub));
            }
        }
    }

    #[test]
    fn soluble_radical_examples() {
        let s3 = s3();
        assert_eq!(s3.soluble_radical().len(), 6);
        let a5 = a5();
        assert_eq!(a5.soluble_radical().members, vec![0]);
        assert_eq!(GroupTable::cyclic(1).soluble_radical().members, vec![0]);
    }

    #[test]
    fn soluble_radical_contains_every_soluble_normal() {
        for g in [s3(), a4(), d4(), q8(), a5()] {
            let rad = g.soluble_radical();
            assert!(g.is_soluble_subgroup(&rad));
            assert!(g.is_normal(&rad));
            for nsub in g.normal_subgroups() {
                if g.is_soluble_subgroup(&nsub) {
                    assert!(nsub.members.iter().all(|&a| rad.contains(a)));
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let c4 = GroupTable::cyclic(4);
        let n = ElementSubset::new(vec![0, 2]);
        let (q, proj) = c4.quotient(&n).unwrap();
        assert_eq!(q.order(), 2);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(proj[c4.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
        let s3 = s3();
        let c3 = s3
            .normal_subgroups()
            .into_iter()
            .find(|s| s.len() == 3)
            .unwrap();
        let (q, _) = s3.quotient(&c3).unwrap();
        assert_eq!(q.order(), 2);
        // quotient by the trivial subgroup is a relabeled copy
        let (q, proj) = s3.quotient(&ElementSubset::new(vec![0])).unwrap();
        assert_eq!(q.order(), 6);
        let mut sorted = proj.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..6).collect::<Vec<_>>());
        // non-normal subgroup rejected
        let refl = (1..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let sub = s3.subgroup_generated(&[refl]);
        assert_eq!(s3.quotient(&sub), Err(GroupError::NotNormal));
    }

    #[test]
    fn center_examples() {
        assert_eq!(s3().center().members, vec![0]);
        assert_eq!(d4().center().len(), 2);
        let c6 = GroupTable::cyclic(6);
        assert_eq!(c6.center().len(), 6);
    }

    #[test]
    fn semidirect_examples() {
        let c3 = GroupTable::cyclic(3);
        let inversion: Vec<usize> = (0..3).map(|a| c3.inv(a)).collect();
        let s3b = c3.semidirect_with_involutory_automorphism(&inversion).unwrap();
        assert_eq!(s3b.order(), 6);
        assert!(!s3b.is_abelian());
        // against the permutation model of S3
        let s3 = s3();
        let x = s3b.involutions()[0];
        let g3 = (0..6).find(|&a| s3b.element_order(a) == 3).unwrap();
        let xs = s3.involutions()[0];
        let gs = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        assert_eq!(
            s3b.pair_certificate(x, g3).unwrap(),
            s3.pair_certificate(xs, gs).unwrap()
        );

        let id: Vec<usize> = (0..3).collect();
        let c6 = c3.semidirect_with_involutory_automorphism(&id).unwrap();
        assert!(c6.is_abelian());
        assert_eq!(c6.element_order(3), 2); // (0, 1) has order 2
        assert_eq!((0..6).map(|a| c6.element_order(a)).max(), Some(6));

        let d4 = d4();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(d4.involutions().len(), 5);

        // a non-automorphism and a non-involutory automorphism are rejected
        let c4 = GroupTable::cyclic(4);
        assert_eq!(
            c4.semidirect_with_involutory_automorphism(&[0, 2, 1, 3]),
            Err(GroupError::NotAutomorphism)
        );
        let c5 = GroupTable::cyclic(5);
        let doubling: Vec<usize> = (0..5).map(|a| (2 * a) % 5).collect();
        assert_eq!(
            c5.semidirect_with_involutory_automorphism(&doubling),
            Err(GroupError::NotInvolutory)
        );
    }

    #[test]
    fn pair_certificate_forced_values() {
        let c2 = GroupTable::cyclic(2);
        assert_eq!(c2.pair_certificate(1, 1).unwrap().labels(), &[1, 1, 0, 0]);
        assert_eq!(c2.pair_certificate(1, 0).unwrap().labels(), &[1, 0, 0, 1]);
    }

    #[test]
    fn v4_all_involution_pairs_share_certificate() {
        let v4 = v4();
        let invs = v4.involutions();
        assert_eq!(invs.len(), 3);
        let mut certs = Vec::new();
        for &x in &invs {
            for &g in &invs {
                if x != g {
                    certs.push(v4.pair_certificate(x, g).unwrap());
                }
            }
        }
        assert_eq!(certs.len(), 6);
        assert!(certs.iter().all(|c| *c == certs[0]));
    }

    #[test]
    fn certificate_requires_generation() {
        let c4 = GroupTable::cyclic(4);
        assert_eq!(c4.pair_certificate(2, 2), Err(GroupError::NotGenerating));
    }

    #[test]
    fn automorphism_counts() {
        let v4 = v4();
        let invs = v4.involutions();
        let autos = v4.automorphisms_from_pair(invs[0], invs[1]).unwrap();
        assert_eq!(autos.len(), 6); // Aut(V4) = S3

        let c4 = GroupTable::cyclic(4);
        assert_eq!(c4.automorphisms_from_pair(2, 1).unwrap().len(), 2);

        let s3 = s3();
        let x = s3.involutions()[0];
        let g = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let autos = s3.automorphisms_from_pair(x, g).unwrap();
        assert_eq!(autos.len(), 6);
        // closed under composition and inversion, i.e. a group
        for a in &autos {
            for b in &autos {
                let comp: Vec<usize> = (0..6).map(|e| a[b[e]]).collect();
                assert!(autos.contains(&comp));
            }
            let mut inv = vec![0usize; 6];
            for e in 0..6 {
                inv[a[e]] = e;
            }
            assert!(autos.contains(&inv));
        }
    }

    #[test]
    fn automorphism_count_independent_of_pair() {
        let s3 = s3();
        let mut counts = BTreeSet::new();
        for s in 0..6 {
            for t in 0..6 {
                if let Ok(autos) = s3.automorphisms_from_pair(s, t) {
                    counts.insert(autos.len());
                }
            }
        }
        assert_eq!(counts.len(), 1);
    }

    #[test]
    fn certificate_invariant_under_automorphisms() {
        let s3 = s3();
        let x = s3.involutions()[0];
        let g = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let cert = s3.pair_certificate(x, g).unwrap();
        for phi in s3.automorphisms_from_pair(x, g).unwrap() {
            assert_eq!(s3.pair_certificate(phi[x], phi[g]).unwrap(), cert);
        }
    }

    #[test]
    fn grp1_roundtrip_and_errors() {
        let d4 = d4();
        let text = d4.to_grp1();
        let back = GroupTable::from_grp1(&text).unwrap();
        assert_eq!(back, d4);
        assert!(GroupTable::from_grp1("").is_err());
        assert!(GroupTable::from_grp1("GRP1 2\n0 1\n1 1\n").is_err());
        assert!(GroupTable::from_grp1("GRP1 2\n0 1\n").is_err());
    }

    #[test]
    fn q8_structure() {
        let q8 = q8();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.involutions().len(), 1);
        assert_eq!(q8.center().len(), 2);
        // Q8 is not a (2,*)-group: its unique involution is central
        assert!(q8.canonical_certificate().is_none());
    }

    #[test]
    fn isomorphism_from_pairs_between_models() {
        let s3p = s3();
        let c3 = GroupTable::cyclic(3);
        let inversion: Vec<usize> = (0..3).map(|a| c3.inv(a)).collect();
        let s3s = c3.semidirect_with_involutory_automorphism(&inversion).unwrap();
        let x1 = s3p.involutions()[0];
        let g1 = (0..6).find(|&a| s3p.element_order(a) == 3).unwrap();
        let x2 = s3s.involutions()[0];
        let g2 = (0..6).find(|&a| s3s.element_order(a) == 3).unwrap();
        let map = s3p.isomorphism_from_pairs(x1, g1, &s3s, x2, g2).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(map[s3p.mul(a, b)], s3s.mul(map[a], map[b]));
            }
        }
    }
}
