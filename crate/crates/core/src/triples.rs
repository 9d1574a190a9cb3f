//! Marked generating pairs (x, g) with x an involution, and their
//! enumeration up to isomorphism.
//!
//! Two enumeration routes are provided: bucketing every valid pair by its
//! certificate, and the orbit procedure (automorphism orbits on involutions,
//! then stabiliser orbits on the group, then a generation filter). They must
//! agree and the acceptance suite checks that they do.

use thiserror::Error;

use crate::grp::{GroupTable, PairCertificate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("x is not an involution")]
    XNotInvolution,
    #[error("{{x, g}} does not generate the group")]
    NotGenerating,
}

/// A group together with a marked generating pair: an involution `x` and a
/// further element `g`. Degenerate second generators (identity or another
/// involution) are allowed.
#[derive(Clone, Debug)]
pub struct TwoStarTriple {
    pub group: GroupTable,
    pub x: usize,
    pub g: usize,
}

impl TwoStarTriple {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Validate (G, x, g).
pub fn make_triple(group: GroupTable, x: usize, g: usize) -> Result<TwoStarTriple, TripleError> {
    if group.element_order(x) != 2 {
        return Err(TripleError::XNotInvolution);
    }
    if group.subgroup_generated(&[x, g]).len() != group.order() {
        return Err(TripleError::NotGenerating);
    }
    Ok(TwoStarTriple { group, x, g })
}

/// Certificate deciding triple isomorphism.
pub fn triple_certificate(t: &TwoStarTriple) -> PairCertificate {
    t.group
        .pair_certificate(t.x, t.g)
        .expect("validated triple generates")
}

/// The valid pairs (x, g) of a group, one representative per isomorphism
/// class, picked as the lexicographically least pair of each certificate
/// bucket. Empty when the group admits no such pair.
pub fn enumerate_triples(group: &GroupTable) -> Vec<TwoStarTriple> {
    let mut reps: Vec<(PairCertificate, usize, usize)> = Vec::new();
    for x in group.involutions() {
        for g in 0..group.order() {
            let Ok(cert) = group.pair_certificate(x, g) else {
                continue;
            };
            if !reps.iter().any(|(c, _, _)| *c == cert) {
                reps.push((cert, x, g));
            }
        }
    }
    reps.sort_by_key(|(_, x, g)| (*x, *g));
    reps.into_iter()
        .map(|(_, x, g)| TwoStarTriple {
            group: group.clone(),
            x,
            g,
        })
        .collect()
}

/// Same classes as [`enumerate_triples`], obtained the other way around:
/// a representative x of each automorphism orbit on involutions, then a
/// representative g of each orbit of the stabiliser of x, then discarding
/// the pairs that do not generate.
pub fn enumerate_triples_autorbit(group: &GroupTable) -> Vec<TwoStarTriple> {
    let n = group.order();
    // some generating pair seeds the automorphism computation
    let mut autos = None;
    'outer: for s in 0..n {
        for t in 0..n {
            if group.bfs_labeling(s, t).is_some() {
                autos = Some(group.automorphisms_from_pair(s, t).expect("pair generates"));
                break 'outer;
            }
        }
    }
    let Some(autos) = autos else {
        return Vec::new(); // not 2-generated
    };

    let orbit_reps = |perms: &[Vec<usize>], points: &[usize]| -> Vec<usize> {
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for &p in points {
            if seen[p] {
                continue;
            }
            reps.push(p);
            let mut stack = vec![p];
            seen[p] = true;
            while let Some(q) = stack.pop() {
                for perm in perms {
                    let im = perm[q];
                    if !seen[im] {
                        seen[im] = true;
                        stack.push(im);
                    }
                }
            }
        }
        reps
    };

    let involutions = group.involutions();
    let mut out = Vec::new();
    for x in orbit_reps(&autos, &involutions) {
        let stab: Vec<Vec<usize>> = autos.iter().filter(|a| a[x] == x).cloned().collect();
        let all: Vec<usize> = (0..n).collect();
        for g in orbit_reps(&stab, &all) {
            if group.subgroup_generated(&[x, g]).len() == n {
                out.push(TwoStarTriple {
                    group: group.clone(),
                    x,
                    g,
                });
            }
        }
    }
    out.sort_by_key(|t| (t.x, t.g));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn s3() -> GroupTable {
        GroupTable::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    fn v4() -> GroupTable {
        GroupTable::from_permutations(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap()
    }

    #[test]
    fn make_triple_validation() {
        let c2 = GroupTable::cyclic(2);
        assert!(make_triple(c2.clone(), 1, 0).is_ok());
        let c4 = GroupTable::cyclic(4);
        assert!(make_triple(c4.clone(), 2, 1).is_ok());
        assert!(matches!(
            make_triple(c4.clone(), 2, 2),
            Err(TripleError::NotGenerating)
        ));
        assert!(matches!(make_triple(c4, 1, 1), Err(TripleError::XNotInvolution)));
    }

    #[test]
    fn certificates_distinguish_c2_triples() {
        let c2 = GroupTable::cyclic(2);
        let t1 = make_triple(c2.clone(), 1, 1).unwrap();
        let t2 = make_triple(c2, 1, 0).unwrap();
        assert_ne!(triple_certificate(&t1), triple_certificate(&t2));
        assert_eq!(triple_certificate(&t1), triple_certificate(&t1));
    }

    #[test]
    fn s3_conjugate_pairs_are_isomorphic() {
        let s3 = s3();
        let invs = s3.involutions();
        let threes: Vec<usize> = (0..6).filter(|&a| s3.element_order(a) == 3).collect();
        let t1 = make_triple(s3.clone(), invs[0], threes[0]).unwrap();
        let t2 = make_triple(s3.clone(), invs[1], threes[1]).unwrap();
        assert_eq!(triple_certificate(&t1), triple_certificate(&t2));
        // brute-force oracle: search all isomorphisms (automorphisms of S3)
        let autos = s3.automorphisms_from_pair(invs[0], threes[0]).unwrap();
        assert!(autos
            .iter()
            .any(|phi| phi[invs[0]] == invs[1] && phi[threes[0]] == threes[1]));
    }

    #[test]
    fn enumeration_counts() {
        assert!(enumerate_triples(&GroupTable::cyclic(5)).is_empty());
        assert_eq!(enumerate_triples(&v4()).len(), 1);
        assert_eq!(enumerate_triples(&s3()).len(), 2);
        assert_eq!(enumerate_triples(&GroupTable::cyclic(2)).len(), 2);
    }

    #[test]
    fn autorbit_counts() {
        assert_eq!(enumerate_triples_autorbit(&s3()).len(), 2);
        assert!(enumerate_triples_autorbit(&GroupTable::cyclic(5)).is_empty());
        let c6 = GroupTable::cyclic(6);
        let triples = enumerate_triples_autorbit(&c6);
        assert_eq!(triples.len(), 2);
        let mut gen_orders: Vec<usize> =
            triples.iter().map(|t| c6.element_order(t.g)).collect();
        gen_orders.sort_unstable();
        assert_eq!(gen_orders, vec![3, 6]);
    }

    #[test]
    fn methods_agree_on_small_groups() {
        let groups = vec![
            GroupTable::cyclic(1),
            GroupTable::cyclic(2),
            GroupTable::cyclic(4),
            GroupTable::cyclic(6),
            GroupTable::cyclic(12),
            v4(),
            s3(),
            GroupTable::from_permutations(&[vec![1, 0, 3, 2], vec![1, 2, 0, 3]]).unwrap(), // A4
        ];
        for g in groups {
            let certs1: BTreeSet<_> = enumerate_triples(&g)
                .iter()
                .map(triple_certificate)
                .collect();
            let certs2: BTreeSet<_> = enumerate_triples_autorbit(&g)
                .iter()
                .map(triple_certificate)
                .collect();
            assert_eq!(certs1, certs2, "order {}", g.order());
        }
    }

    #[test]
    fn triple_count_bounds_and_parity() {
        for g in [GroupTable::cyclic(8), s3(), v4()] {
            let triples = enumerate_triples(&g);
            assert!(triples.len() <= g.involutions().len() * g.order());
            for t in &triples {
                assert_eq!(g.element_order(t.x), 2);
                assert_eq!(g.subgroup_generated(&[t.x, t.g]).len(), g.order());
            }
        }
        // every even cyclic group has triples, odd-order groups none
        for k in 1..8 {
            assert!(!enumerate_triples(&GroupTable::cyclic(2 * k)).is_empty());
            assert!(enumerate_triples(&GroupTable::cyclic(2 * k + 1)).is_empty());
        }
    }
}
