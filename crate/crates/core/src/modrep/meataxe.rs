//! MeatAxe-style module analysis: irreducibility, composition factors,
//! socle, radical, endomorphisms and maximal submodules.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{factor_module, spin_space, FpModule, SubmoduleBasis};
use crate::error::{Error, Result};
use crate::gf::{GFMatrix, GFVector, Subspace};
use crate::gfpoly::{char_poly, irreducible_factors};

/// Outcome of an irreducibility test; a reducible module comes with a
/// proper nonzero submodule as witness.
#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible,
    Reducible(SubmoduleBasis),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Isomorphism-class tag: dimension plus traces of a fixed list of
/// generator words. Isomorphic modules always get equal tags.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorTag {
    pub dim: usize,
    pub traces: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct CompositionFactor {
    pub tag: FactorTag,
    pub module: FpModule,
}

impl CompositionFactor {
    pub fn dim(&self) -> usize {
        self.tag.dim
    }
}

pub(super) fn fingerprint(m: &FpModule) -> FactorTag {
    let gens = m.action();
    let mut words: Vec<GFMatrix> = gens.to_vec();
    for a in gens {
        for b in gens {
            words.push(a.mul(b));
        }
    }
    if gens.len() <= 4 {
        for a in gens {
            for b in gens {
                let ab = a.mul(b);
                for c in gens {
                    words.push(ab.mul(c));
                }
            }
        }
    }
    FactorTag {
        dim: m.dim(),
        traces: words.iter().map(|w| w.trace()).collect(),
    }
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_vector<R: Rng>(p: u32, dim: usize, rng: &mut R) -> GFVector {
    loop {
        let v = GFVector::from_residues(p, (0..dim).map(|_| rng.random_range(0..p) as u8).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// Vector whose leading entry is 1, enumerating each 1-dimensional
/// subspace exactly once as `index` runs over `0..(p^dim - 1)/(p - 1)`.
fn line_representative(p: u32, dim: usize, mut index: u64) -> GFVector {
    let p64 = p as u64;
    for lead in 0..dim {
        let tail = (dim - lead - 1) as u32;
        let count = p64.pow(tail);
        if index < count {
            let mut v = GFVector::zero(p, dim);
            v.set(lead, 1);
            for j in 0..tail as usize {
                v.set(lead + 1 + j, (index % p64) as u8);
                index /= p64;
            }
            return v;
        }
        index -= count;
    }
    unreachable!("index within line count")
}

fn line_count(p: u32, dim: usize) -> u64 {
    let p = p as u64;
    (p.checked_pow(dim as u32).unwrap_or(u64::MAX) - 1) / (p - 1)
}

impl FpModule {
    fn submodule_unchecked(&self, space: Subspace) -> SubmoduleBasis {
        SubmoduleBasis {
            parent: self.clone(),
            space,
        }
    }

    /// Irreducibility with the default seed 0.
    pub fn is_irreducible(&self) -> Result<Irreducibility> {
        self.is_irreducible_with(&mut seeded(0))
    }

    /// Exhaustive line spinning when the number of 1-dimensional subspaces is
    /// within the seed bound, otherwise the Holt–Rees/Norton test.
    pub fn is_irreducible_with<R: Rng>(&self, rng: &mut R) -> Result<Irreducibility> {
        let b = self.group().bounds();
        if line_count(self.p(), self.dim()) <= b.seed_lines {
            self.is_irreducible_exhaustive(rng)
        } else {
            self.is_irreducible_norton(rng)
        }
    }

    /// Spins one representative of every 1-dimensional subspace. The RNG
    /// only changes which witness is found first.
    pub fn is_irreducible_exhaustive<R: Rng>(&self, rng: &mut R) -> Result<Irreducibility> {
        let d = self.dim();
        if d == 0 {
            return Err(Error::Invalid(alloc::string::String::from("zero module")));
        }
        if d == 1 {
            return Ok(Irreducibility::Irreducible);
        }
        let b = self.group().bounds();
        let lines = line_count(self.p(), d);
        b.check("seed lines", lines, b.seed_lines)?;
        let probes = lines.min(8);
        for _ in 0..probes {
            let v = random_vector(self.p(), d, rng);
            let s = spin_space(self.action(), self.p(), d, &[v]);
            if s.dim() < d {
                return Ok(Irreducibility::Reducible(self.submodule_unchecked(s)));
            }
        }
        let start = rng.random_range(0..lines);
        for k in 0..lines {
            let v = line_representative(self.p(), d, (start + k) % lines);
            let s = spin_space(self.action(), self.p(), d, &[v]);
            if s.dim() < d {
                return Ok(Irreducibility::Reducible(self.submodule_unchecked(s)));
            }
        }
        Ok(Irreducibility::Irreducible)
    }

    /// Holt–Rees MeatAxe: random group-algebra elements, their
    /// characteristic polynomials, and Norton's irreducibility criterion.
    pub fn is_irreducible_norton<R: Rng>(&self, rng: &mut R) -> Result<Irreducibility> {
        let d = self.dim();
        let p = self.p();
        if d == 0 {
            return Err(Error::Invalid(alloc::string::String::from("zero module")));
        }
        if d == 1 {
            return Ok(Irreducibility::Irreducible);
        }
        if self.action().is_empty() {
            let s = Subspace::spanned_by(p, d, &[GFVector::unit(p, d, 0)]);
            return Ok(Irreducibility::Reducible(self.submodule_unchecked(s)));
        }
        let transposed = self.transposed();
        let mut words: Vec<GFMatrix> = self.action().to_vec();
        let attempts = self.group().bounds().random_attempts;
        for _ in 0..attempts {
            let i = rng.random_range(0..words.len());
            let j = rng.random_range(0..words.len());
            let w = words[i].mul(&words[j]);
            if words.len() < 12 {
                words.push(w);
            } else {
                let k = rng.random_range(self.action().len()..words.len());
                words[k] = w;
            }
            let mut a = GFMatrix::zero(p, d, d);
            for w in &words {
                a = a.add(&w.scale(rng.random_range(0..p) as u8));
            }
            let cp = char_poly(&a);
            for f in irreducible_factors(&cp, rng) {
                let deg = f.degree().unwrap_or(0);
                let b = f.eval_matrix(&a);
                let null = b.left_nullspace();
                let Some(v) = null.first() else { continue };
                let s = spin_space(self.action(), p, d, core::slice::from_ref(v));
                if s.dim() < d {
                    return Ok(Irreducibility::Reducible(self.submodule_unchecked(s)));
                }
                if null.len() == deg {
                    let null_t = b.transpose().left_nullspace();
                    let w = &null_t[0];
                    let st = spin_space(transposed.action(), p, d, core::slice::from_ref(w));
                    if st.dim() < d {
                        return Ok(Irreducibility::Reducible(
                            self.submodule_unchecked(st.annihilator()),
                        ));
                    }
                    return Ok(Irreducibility::Irreducible);
                }
            }
        }
        Err(Error::Inconclusive { attempts })
    }

    /// Composition factors with the default seed, sorted by tag.
    pub fn composition_factors(&self) -> Result<Vec<CompositionFactor>> {
        self.composition_factors_with(&mut seeded(0))
    }

    /// Composition factors; the RNG drives the chop order. Sorted by tag.
    pub fn composition_factors_with<R: Rng>(&self, rng: &mut R) -> Result<Vec<CompositionFactor>> {
        let mut out = Vec::new();
        if self.dim() > 0 {
            chop(self, rng, &mut out)?;
        }
        out.sort_by(|a, b| a.tag.cmp(&b.tag));
        Ok(out)
    }

    /// Basis of `Hom_K(self, target)` as `dim(self) x dim(target)` matrices
    /// `X` with `A_k X = X B_k` for every generator.
    pub fn hom_basis(&self, target: &FpModule) -> Vec<GFMatrix> {
        let (s, m) = (self.dim(), target.dim());
        let p = self.p();
        let unknowns = s * m;
        let k = self.action().len();
        if unknowns == 0 {
            return Vec::new();
        }
        let mut sys = GFMatrix::zero(p, (k * unknowns).max(1), unknowns);
        for (g, (a, b)) in self.action().iter().zip(target.action()).enumerate() {
            for i in 0..s {
                for j in 0..m {
                    let row = g * unknowns + i * m + j;
                    // (A X)_{ij} = sum_a A_{i a} X_{a j}
                    for t in 0..s {
                        let c = a.get(i, t);
                        if c != 0 {
                            let col = t * m + j;
                            let v = (sys.get(row, col) as u32 + c as u32) % p;
                            sys.set(row, col, v as u8);
                        }
                    }
                    // -(X B)_{ij} = -sum_b X_{i b} B_{b j}
                    for t in 0..m {
                        let c = b.get(t, j);
                        if c != 0 {
                            let col = i * m + t;
                            let v = (sys.get(row, col) as u32 + p - c as u32) % p;
                            sys.set(row, col, v as u8);
                        }
                    }
                }
            }
        }
        sys.nullspace()
            .into_iter()
            .map(|x| {
                let rows: Vec<GFVector> = (0..s)
                    .map(|i| GFVector::from_residues(p, x.entries()[i * m..(i + 1) * m].to_vec()))
                    .collect();
                GFMatrix::from_vectors(p, m, &rows)
            })
            .collect()
    }

    pub fn endomorphism_basis(&self) -> Vec<GFMatrix> {
        self.hom_basis(self)
    }

    /// Sum of all simple submodules: the images of all homomorphisms from
    /// the composition factors into the module.
    pub fn socle_basis(&self) -> Result<SubmoduleBasis> {
        let mut space = Subspace::zero(self.p(), self.dim());
        let factors = self.composition_factors()?;
        let mut done: Vec<&FactorTag> = Vec::new();
        for f in &factors {
            // identical matrices give identical images; skip exact repeats
            if done.iter().any(|t| **t == f.tag) && factors.iter().filter(|g| g.tag == f.tag).all(|g| g.module.action() == f.module.action()) {
                continue;
            }
            done.push(&f.tag);
            for x in f.module.hom_basis(self) {
                for v in x.row_vectors() {
                    space.insert(&v);
                }
            }
        }
        Ok(self.submodule_unchecked(space))
    }

    /// Jacobson radical, as the annihilator of the socle of the dual.
    pub fn radical_basis(&self) -> Result<SubmoduleBasis> {
        let soc_dual = self.dual().socle_basis()?;
        Ok(self.submodule_unchecked(soc_dual.space().annihilator()))
    }

    /// Local-ring test on the endomorphism algebra: enumerated when small,
    /// otherwise a randomized Fitting-lemma search for a splitting.
    pub fn is_indecomposable(&self) -> Result<bool> {
        self.is_indecomposable_with(&mut seeded(0))
    }

    pub fn is_indecomposable_with<R: Rng>(&self, rng: &mut R) -> Result<bool> {
        let d = self.dim() as u64;
        if d == 0 {
            return Err(Error::Invalid(alloc::string::String::from("zero module")));
        }
        let basis = self.endomorphism_basis();
        let p = self.p();
        let e = basis.len() as u32;
        let b = self.group().bounds();
        let splits = |x: &GFMatrix| {
            let y = x.pow(d);
            !y.is_zero() && !y.is_invertible()
        };
        let size = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if size <= b.endomorphisms {
            for idx in 1..size {
                let mut x = GFMatrix::zero(p, self.dim(), self.dim());
                let mut r = idx;
                for bm in &basis {
                    let c = (r % p as u64) as u8;
                    r /= p as u64;
                    if c != 0 {
                        x = x.add(&bm.scale(c));
                    }
                }
                if splits(&x) {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for _ in 0..b.random_attempts {
            let mut x = GFMatrix::zero(p, self.dim(), self.dim());
            for bm in &basis {
                x = x.add(&bm.scale(rng.random_range(0..p) as u8));
            }
            if splits(&x) {
                return Ok(false);
            }
        }
        Err(Error::Inconclusive {
            attempts: b.random_attempts,
        })
    }

    /// All maximal submodules: kernels of the nonzero maps from the head
    /// `M/Rad(M)` onto each of its simple constituents, pulled back to `M`.
    pub fn maximal_submodules(&self) -> Result<Vec<SubmoduleBasis>> {
        let rad = self.radical_basis()?;
        if rad.dim() == self.dim() {
            return Ok(Vec::new());
        }
        let head = factor_module(self, &rad)?;
        let p = self.p();
        let bounds = self.group().bounds();
        let mut found: Vec<Subspace> = Vec::new();
        for t in head.module.composition_factors()? {
            let homs = head.module.hom_basis(&t.module);
            let lines = line_count(p, homs.len());
            bounds.check("homomorphism lines", lines, bounds.seed_lines)?;
            for idx in 0..lines {
                let coeffs = line_representative(p, homs.len(), idx);
                let mut x = GFMatrix::zero(p, head.module.dim(), t.module.dim());
                for (c, h) in coeffs.entries().iter().zip(&homs) {
                    if *c != 0 {
                        x = x.add(&h.scale(*c));
                    }
                }
                let kernel = Subspace::spanned_by(p, head.module.dim(), &x.left_nullspace());
                let pre = head.preimage(&kernel);
                if !found.contains(&pre) {
                    found.push(pre);
                }
            }
        }
        found.sort_by_key(|s| s.basis());
        Ok(found.into_iter().map(|s| self.submodule_unchecked(s)).collect())
    }
}

fn chop<R: Rng>(m: &FpModule, rng: &mut R, out: &mut Vec<CompositionFactor>) -> Result<()> {
    match m.is_irreducible_with(rng)? {
        Irreducibility::Irreducible => {
            out.push(CompositionFactor {
                tag: fingerprint(m),
                module: m.clone(),
            });
        }
        Irreducibility::Reducible(sub) => {
            let quot = factor_module(m, &sub)?;
            let mut parts = [sub.as_module(), quot.module];
            parts.shuffle(rng);
            for part in &parts {
                chop(part, rng, out)?;
            }
        }
    }
    Ok(())
}
