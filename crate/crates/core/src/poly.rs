//! Univariate polynomial arithmetic and factorization over GF(p).
//!
//! Degrees stay below the module dimensions (a few hundred at most), so a
//! dense coefficient representation and schoolbook arithmetic are plenty.
//! Factorization is squarefree decomposition, then distinct-degree, then
//! Cantor-Zassenhaus equal-degree splitting with a caller-supplied RNG.

use rand::Rng;

/// Monic-friendly dense polynomial over GF(p); `c[i]` is the coefficient of x^i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub p: u8,
    pub c: Vec<u8>,
}

impl Poly {
    pub fn new(p: u8, mut c: Vec<u8>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn zero(p: u8) -> Self {
        Poly { p, c: Vec::new() }
    }

    pub fn one(p: u8) -> Self {
        Poly { p, c: vec![1] }
    }

    pub fn x(p: u8) -> Self {
        Poly { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        // degree of the zero polynomial is treated as 0 by callers that care
        self.c.len().saturating_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn lead(&self) -> u8 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = crate::gf::inv_mod(self.lead(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u8) -> Poly {
        let p = self.p as u16;
        Poly::new(
            self.p,
            self.c.iter().map(|&v| ((v as u16 * k as u16) % p) as u8).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let p = self.p as u16;
        let n = self.c.len().max(other.c.len());
        let mut c = vec![0u8; n];
        for i in 0..n {
            let a = *self.c.get(i).unwrap_or(&0) as u16;
            let b = *other.c.get(i).unwrap_or(&0) as u16;
            c[i] = ((a + b) % p) as u8;
        }
        Poly::new(self.p, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(self.p - 1))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p as u32;
        let mut c = vec![0u32; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u32 * b as u32) % p;
            }
        }
        Poly::new(self.p, c.into_iter().map(|v| v as u8).collect())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero());
        let p = self.p as u32;
        let dl = d.c.len();
        if self.c.len() < dl {
            return (Poly::zero(self.p), self.clone());
        }
        let lead_inv = crate::gf::inv_mod(d.lead(), self.p) as u32;
        let mut rem: Vec<u32> = self.c.iter().map(|&v| v as u32).collect();
        let mut quo = vec![0u32; self.c.len() - dl + 1];
        for i in (0..quo.len()).rev() {
            let coeff = rem[i + dl - 1] * lead_inv % p;
            quo[i] = coeff;
            if coeff != 0 {
                for (j, &dv) in d.c.iter().enumerate() {
                    let sub = coeff * dv as u32 % p;
                    rem[i + j] = (rem[i + j] + p - sub) % p;
                }
            }
        }
        (
            Poly::new(self.p, quo.into_iter().map(|v| v as u8).collect()),
            Poly::new(self.p, rem.into_iter().map(|v| v as u8).collect()),
        )
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divmod(d).1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p as u16;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| ((i as u16 % p) * v as u16 % p) as u8)
            .collect();
        Poly::new(self.p, c)
    }

    /// self^e mod m
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at a matrix: sum c_i * M^i.
    pub fn eval_matrix(&self, m: &crate::gf::GfMatrix) -> crate::gf::GfMatrix {
        use crate::gf::GfMatrix;
        let n = m.rows;
        let mut acc = GfMatrix::zeros(self.p, n, n);
        let mut power = GfMatrix::identity(self.p, n);
        for (i, &coeff) in self.c.iter().enumerate() {
            if i > 0 {
                power = power.mul(m);
            }
            if coeff != 0 {
                acc.add_scaled_inplace(&power, coeff);
            }
        }
        acc
    }
}

/// Squarefree decomposition: list of (squarefree factor, multiplicity).
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let f = f.monic();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f = g(x^p); over the prime field g has the same coefficients
        // compressed by p (Frobenius fixes GF(p))
        let mut g = Vec::new();
        let mut i = 0;
        while i < f.c.len() {
            g.push(f.c[i]);
            i += p as usize;
        }
        let inner = squarefree_decomposition(&Poly::new(p, g));
        return inner
            .into_iter()
            .map(|(q, m)| (q, m * p as usize))
            .collect();
    }
    let mut c = f.gcd(&fp);
    let mut w = f.divmod(&c).0;
    let mut mult = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divmod(&y).0;
        if fac.deg() >= 1 {
            out.push((fac, mult));
        }
        w = y.clone();
        c = c.divmod(&y).0;
        mult += 1;
    }
    if c.deg() >= 1 {
        // whatever is left has all multiplicities divisible by p; the
        // recursive call lands in the derivative-zero branch
        out.extend(squarefree_decomposition(&c));
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// (product of all irreducible factors of degree d, d).
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = Poly::x(p); // x^(p^d) mod f, updated incrementally
    let mut d = 0usize;
    while f.deg() >= 1 {
        d += 1;
        if 2 * d > f.deg() {
            out.push((f.clone(), f.deg()));
            break;
        }
        h = h.pow_mod(p as u64, &f);
        let g = f.gcd(&h.sub(&Poly::x(p)));
        if g.deg() >= 1 {
            out.push((g.clone(), d));
            f = f.divmod(&g).0;
            h = h.rem(&f);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: all irreducible factors of `f`,
/// each of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut impl Rng) -> Vec<Poly> {
    let p = f.p;
    if f.deg() == d {
        return vec![f.monic()];
    }
    loop {
        let deg_r = f.deg() - 1;
        let r = Poly::new(
            p,
            (0..=deg_r).map(|_| rng.gen_range(0..p)).collect(),
        );
        if r.deg() == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map over GF(2^d): r + r^2 + r^4 + ... + r^(2^(d-1))
            let mut acc = r.clone().rem(f);
            let mut cur = r.clone().rem(f);
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                acc = acc.add(&cur);
            }
            f.gcd(&acc)
        } else {
            let e = ((p as u64).pow(d as u32) - 1) / 2;
            let t = r.pow_mod(e, f);
            f.gcd(&t.sub(&Poly::one(p)))
        };
        if g.deg() >= 1 && g.deg() < f.deg() {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.divmod(&g).0, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients) for determinism.
pub fn factor(f: &Poly, rng: &mut impl Rng) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (sf, mult) in squarefree_decomposition(f) {
        for (prod, d) in distinct_degree(&sf) {
            for irr in equal_degree(&prod, d, rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.c).cmp(&(b.0.deg(), &b.0.c)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(p: u8, c: &[u8]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn divmod_roundtrip() {
        let p = 5;
        let a = poly(p, &[1, 2, 3, 4, 1]);
        let d = poly(p, &[2, 0, 1]);
        let (q, r) = a.divmod(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.deg() < d.deg() || r.is_zero());
    }

    #[test]
    fn factor_x3_minus_1_over_gf2() {
        // x^3 + 1 = (x + 1)(x^2 + x + 1) over GF(2)
        let f = poly(2, &[1, 0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = factor(&f, &mut rng);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (poly(2, &[1, 1]), 1));
        assert_eq!(fs[1], (poly(2, &[1, 1, 1]), 1));
    }

    #[test]
    fn factor_with_multiplicity() {
        // (x+1)^2 (x+2) over GF(3)
        let f = poly(3, &[1, 1]).mul(&poly(3, &[1, 1])).mul(&poly(3, &[2, 1]));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = factor(&f, &mut rng);
        assert_eq!(fs, vec![(poly(3, &[1, 1]), 2), (poly(3, &[2, 1]), 1)]);
    }

    #[test]
    fn factor_frobenius_case() {
        // x^4 + 1 = (x+1)^4 over GF(2); derivative vanishes
        let f = poly(2, &[1, 0, 0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = factor(&f, &mut rng);
        assert_eq!(fs, vec![(poly(2, &[1, 1]), 4)]);
    }

    #[test]
    fn factor_x9_minus_1_over_gf2() {
        // x^9 - 1 = (x+1)(x^2+x+1)(x^6+x^3+1) over GF(2)
        let mut c = vec![0u8; 10];
        c[0] = 1;
        c[9] = 1;
        let f = poly(2, &c);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = factor(&f, &mut rng);
        let degs: Vec<usize> = fs.iter().map(|(q, _)| q.deg()).collect();
        assert_eq!(degs, vec![1, 2, 6]);
        let prod = fs
            .iter()
            .fold(Poly::one(2), |acc, (q, m)| {
                (0..*m).fold(acc, |a, _| a.mul(q))
            });
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn factor_over_gf7() {
        // x^6 - 1 over GF(7) splits into 6 linear factors
        let mut c = vec![0u8; 7];
        c[0] = 6;
        c[6] = 1;
        let f = poly(7, &c);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = factor(&f, &mut rng);
        assert_eq!(fs.len(), 6);
        assert!(fs.iter().all(|(q, m)| q.deg() == 1 && *m == 1));
    }
}
