//! Univariate polynomials over GF(p): characteristic polynomials and
//! factorisation into irreducibles, as needed by the MeatAxe.

use alloc::vec::Vec;

use rand::Rng;

use crate::gf::{self, GFMatrix};

/// Coefficients low to high, no trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    p: u32,
    c: Vec<u8>,
}

impl Poly {
    pub fn new(p: u32, mut c: Vec<u8>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, c: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Poly { p, c: alloc::vec![1] }
    }

    pub fn x(p: u32) -> Self {
        Poly { p, c: alloc::vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                gf::add(
                    self.p,
                    *self.c.get(i).unwrap_or(&0),
                    *o.c.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Poly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                gf::sub(
                    self.p,
                    *self.c.get(i).unwrap_or(&0),
                    *o.c.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Poly::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let mut acc = alloc::vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u32 * b as u32) % self.p;
            }
        }
        Poly::new(self.p, acc.into_iter().map(|x| x as u8).collect())
    }

    pub fn scale(&self, s: u8) -> Self {
        Poly::new(self.p, self.c.iter().map(|&a| gf::mul(self.p, a, s)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            Some(&lead) => self.scale(gf::inv(self.p, lead)),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.deg();
        let lead_inv = gf::inv(p, *d.c.last().unwrap());
        if r.len() < d.c.len() {
            return (Poly::zero(p), self.clone());
        }
        let mut q = alloc::vec![0u8; r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = gf::mul(p, r[i + dd], lead_inv);
            q[i] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[i + j] = gf::sub(p, r[i + j], gf::mul(p, coef, b));
                }
            }
        }
        (Poly::new(p, q), Poly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &GFMatrix) -> GFMatrix {
        let n = a.rows();
        let mut acc = GFMatrix::zero(self.p, n, n);
        for &coef in self.c.iter().rev() {
            acc = acc.mul(a).add(&GFMatrix::identity(self.p, n).scale(coef));
        }
        acc
    }
}

/// Characteristic polynomial `det(xI - A)` via Hessenberg reduction.
pub fn char_poly(a: &GFMatrix) -> Poly {
    let p = a.modulus();
    let n = a.rows();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
            continue;
        };
        if i != m {
            for c in 0..n {
                let (x, y) = (h.get(i, c), h.get(m, c));
                h.set(i, c, y);
                h.set(m, c, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, i), h.get(r, m));
                h.set(r, i, y);
                h.set(r, m, x);
            }
        }
        let t_inv = gf::inv(p, h.get(m, m - 1));
        for i in m + 1..n {
            let u = gf::mul(p, h.get(i, m - 1), t_inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = gf::sub(p, h.get(i, c), gf::mul(p, u, h.get(m, c)));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = gf::add(p, h.get(r, m), gf::mul(p, u, h.get(r, i)));
                h.set(r, m, v);
            }
        }
    }
    let mut polys: Vec<Poly> = alloc::vec![Poly::one(p)];
    for m in 1..=n {
        let lin = Poly::new(p, alloc::vec![gf::sub(p, 0, h.get(m - 1, m - 1)), 1]);
        let mut pm = lin.mul(&polys[m - 1]);
        let mut t = 1u8;
        for i in 1..m {
            t = gf::mul(p, t, h.get(m - i, m - i - 1));
            let coef = gf::mul(p, h.get(m - i - 1, m - 1), t);
            if coef != 0 {
                pm = pm.sub(&polys[m - i - 1].scale(coef));
            }
        }
        polys.push(pm);
    }
    polys.pop().expect("n+1 polynomials")
}

/// Distinct monic irreducible factors of `f`, sorted by degree.
pub fn irreducible_factors<R: Rng>(f: &Poly, rng: &mut R) -> Vec<Poly> {
    let p = f.p;
    let mut rest = f.monic();
    let mut out = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let x = Poly::x(p);
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.deg() > 0 {
        d += 1;
        h = h.pow_mod(p as u64, f);
        let g = h.sub(&x).rem(&rest).gcd(&rest);
        if g.deg() > 0 {
            loop {
                let q = rest.gcd(&g);
                if q.deg() == 0 {
                    break;
                }
                rest = rest.div_rem(&q).0;
            }
            equal_degree_split(&g, d, rng, &mut out);
        }
    }
    out.sort_by_key(|q| q.deg());
    out
}

fn equal_degree_split<R: Rng>(f: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    let n = f.deg();
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = Poly::new(p, (0..n).map(|_| rng.random_range(0..p) as u8).collect());
        if a.deg() == 0 {
            continue;
        }
        let candidate = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut frob = a.rem(f);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.pow_mod(p as u64, f);
                norm = norm.mul_mod(&frob, f);
            }
            norm.pow_mod(((p - 1) / 2) as u64, f).sub(&Poly::one(p))
        };
        let g = candidate.gcd(f);
        let gd = g.deg();
        if gd > 0 && gd < n {
            let (q, _) = f.div_rem(&g);
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&q, d, rng, out);
            return;
        }
    }
}
