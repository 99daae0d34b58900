//! Matrix representations of permutation groups over GF(p).
//!
//! Modules are right modules: a group element acts on row vectors by
//! `v -> v * rho(g)`, and `rho(g * h) = rho(g) * rho(h)` with the
//! left-to-right permutation product.

mod meataxe;

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{check_modulus, GFMatrix, GFVector, Subspace};
use crate::group::PermGroup;
use crate::hom::hom_from_images;
use crate::perm::Permutation;

pub use meataxe::{CompositionFactor, FactorTag, Irreducibility};

struct ModuleInner {
    group: PermGroup,
    p: u32,
    dim: usize,
    action: Vec<GFMatrix>,
}

/// A GF(p)-representation of `group`, one invertible matrix per generator.
#[derive(Clone)]
pub struct FpModule(Arc<ModuleInner>);

impl core::fmt::Debug for FpModule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FpModule")
            .field("p", &self.p())
            .field("dim", &self.dim())
            .field("group_order", &self.group().order())
            .finish()
    }
}

impl FpModule {
    /// Validates that the matrices define a representation of `group`.
    pub fn new(group: PermGroup, p: u32, action: Vec<GFMatrix>) -> Result<Self> {
        check_modulus(p)?;
        if action.len() != group.generators().len() {
            return Err(Error::Shape(alloc::format!(
                "{} matrices for {} generators",
                action.len(),
                group.generators().len()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.modulus() != p || m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(alloc::string::String::from(
                    "action matrices must be square over the module field",
                )));
            }
            if !m.is_invertible() {
                return Err(Error::Singular);
            }
        }
        let module = Self::trusted(group, p, dim, action);
        module.validate()?;
        Ok(module)
    }

    /// Constructs a module whose action is known to be a representation
    /// (submodules, quotients and duals of a validated module).
    pub(crate) fn trusted(group: PermGroup, p: u32, dim: usize, action: Vec<GFMatrix>) -> Self {
        FpModule(Arc::new(ModuleInner {
            group,
            p,
            dim,
            action,
        }))
    }

    fn validate(&self) -> Result<()> {
        let b = self.group().bounds();
        let vectors = (self.p() as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        if vectors <= b.affine_points {
            // graph of group -> vector permutations must have order |K|
            let images: Vec<Permutation> = self
                .action()
                .iter()
                .map(|m| Permutation::from_images_unchecked(m.vector_permutation_images()))
                .collect();
            hom_from_images(self.group(), vectors as usize, images).map(|_| ())
        } else if self.group().order() <= b.enumeration {
            self.cayley_matrices().map(|_| ())
        } else {
            self.check_generator_orders()
        }
    }

    /// Matrix of every group element, indexed like `group().element_at`,
    /// built along the Cayley graph. Fails if two paths disagree.
    pub(crate) fn cayley_matrices(&self) -> Result<Vec<GFMatrix>> {
        let g = self.group();
        let b = g.bounds();
        b.check("enumeration", g.order(), b.enumeration)?;
        let n = g.order() as usize;
        let mut mats: Vec<Option<GFMatrix>> = alloc::vec![None; n];
        let mut elems: Vec<Option<Permutation>> = alloc::vec![None; n];
        let id = g.identity();
        let i0 = g.index_of_member_by(|x| x) as usize;
        mats[i0] = Some(GFMatrix::identity(self.p(), self.dim()));
        elems[i0] = Some(id);
        let mut queue = alloc::vec![i0];
        let mut head = 0;
        while head < queue.len() {
            let i = queue[head];
            head += 1;
            let e = elems[i].clone().expect("visited");
            let m = mats[i].clone().expect("visited");
            for (s, a) in g.generators().iter().zip(self.action()) {
                let es = e.compose(s);
                let j = g.index_of_member_by(|x| es.image(x)) as usize;
                let ms = m.mul(a);
                match &mats[j] {
                    Some(existing) => {
                        if *existing != ms {
                            return Err(Error::InconsistentHom(alloc::string::String::from(
                                "two words for one element act differently",
                            )));
                        }
                    }
                    None => {
                        mats[j] = Some(ms);
                        elems[j] = Some(es);
                        queue.push(j);
                    }
                }
            }
        }
        Ok(mats.into_iter().map(|m| m.expect("group is connected")).collect())
    }

    /// Necessary condition only: each matrix order divides its generator's order.
    fn check_generator_orders(&self) -> Result<()> {
        let id = GFMatrix::identity(self.p(), self.dim());
        for (s, a) in self.group().generators().iter().zip(self.action()) {
            if a.pow(s.order()) != id {
                return Err(Error::InconsistentHom(alloc::string::String::from(
                    "matrix order does not divide generator order",
                )));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PermGroup {
        &self.0.group
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn action(&self) -> &[GFMatrix] {
        &self.0.action
    }

    /// Permutation module: basis vector `e_i` goes to `e_{g(i)}`.
    pub fn permutation_module(group: &PermGroup, p: u32) -> Result<Self> {
        check_modulus(p)?;
        let n = group.degree();
        let action = group
            .generators()
            .iter()
            .map(|g| {
                let mut m = GFMatrix::zero(p, n, n);
                for i in 0..n {
                    m.set(i, g.image(i as u32) as usize, 1);
                }
                m
            })
            .collect();
        Ok(Self::trusted(group.clone(), p, n, action))
    }

    /// Direct sum of `dim` copies of the trivial module.
    pub fn trivial(group: &PermGroup, p: u32, dim: usize) -> Result<Self> {
        check_modulus(p)?;
        let action = alloc::vec![GFMatrix::identity(p, dim); group.generators().len()];
        Ok(Self::trusted(group.clone(), p, dim, action))
    }

    /// Dual module, acting by the transpose of the inverse.
    pub fn dual(&self) -> Self {
        let action = self
            .action()
            .iter()
            .map(|m| m.inverse().expect("action is invertible").transpose())
            .collect();
        Self::trusted(self.group().clone(), self.p(), self.dim(), action)
    }

    /// Same group acting by transposed matrices.
    pub(crate) fn transposed(&self) -> Self {
        let action = self.action().iter().map(|m| m.transpose()).collect();
        Self::trusted(self.group().clone(), self.p(), self.dim(), action)
    }

    /// Block-diagonal direct sum with another module of the same group.
    pub fn direct_sum(&self, other: &FpModule) -> Result<Self> {
        if self.p() != other.p() || !self.group().same_elements(other.group()) {
            return Err(Error::Shape(alloc::string::String::from(
                "direct sum needs the same group and field",
            )));
        }
        let (a, b) = (self.dim(), other.dim());
        let action = self
            .action()
            .iter()
            .zip(other.action())
            .map(|(x, y)| {
                let mut m = GFMatrix::zero(self.p(), a + b, a + b);
                for r in 0..a {
                    for c in 0..a {
                        m.set(r, c, x.get(r, c));
                    }
                }
                for r in 0..b {
                    for c in 0..b {
                        m.set(a + r, a + c, y.get(r, c));
                    }
                }
                m
            })
            .collect();
        Ok(Self::trusted(self.group().clone(), self.p(), a + b, action))
    }

    /// Smallest submodule containing the seeds.
    pub fn spin(&self, seeds: &[GFVector]) -> SubmoduleBasis {
        let space = spin_space(self.action(), self.p(), self.dim(), seeds);
        SubmoduleBasis {
            parent: self.clone(),
            space,
        }
    }

    /// Wraps an invariant subspace.
    pub fn submodule(&self, space: Subspace) -> Result<SubmoduleBasis> {
        let invariant = space
            .basis()
            .iter()
            .all(|v| self.action().iter().all(|a| space.contains(&v.mul_mat(a))));
        if !invariant {
            return Err(Error::NotInvariant);
        }
        Ok(SubmoduleBasis {
            parent: self.clone(),
            space,
        })
    }

    pub fn zero_submodule(&self) -> SubmoduleBasis {
        SubmoduleBasis {
            parent: self.clone(),
            space: Subspace::zero(self.p(), self.dim()),
        }
    }

    pub fn whole(&self) -> SubmoduleBasis {
        SubmoduleBasis {
            parent: self.clone(),
            space: Subspace::full(self.p(), self.dim()),
        }
    }

    /// Vectors fixed by every generator.
    pub fn fixed_points(&self) -> SubmoduleBasis {
        let d = self.dim();
        let k = self.action().len();
        let mut stacked = GFMatrix::zero(self.p(), d, d * k.max(1));
        let id = GFMatrix::identity(self.p(), d);
        for (j, a) in self.action().iter().enumerate() {
            let diff = a.sub(&id);
            for r in 0..d {
                for c in 0..d {
                    stacked.set(r, j * d + c, diff.get(r, c));
                }
            }
        }
        let space = if k == 0 {
            Subspace::full(self.p(), d)
        } else {
            Subspace::spanned_by(self.p(), d, &stacked.left_nullspace())
        };
        SubmoduleBasis {
            parent: self.clone(),
            space,
        }
    }

    /// The image of the group acting on all `p^dim` vectors (vector `v` is
    /// point `v.to_index()`).
    pub fn vector_action_group(&self) -> Result<PermGroup> {
        let b = self.group().bounds();
        let vectors = (self.p() as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        b.check("vector count", vectors, b.affine_points)?;
        let gens = self
            .action()
            .iter()
            .map(|m| Permutation::from_images_unchecked(m.vector_permutation_images()))
            .collect();
        PermGroup::build(vectors as usize, gens, &[], b)
    }

    /// True iff only the identity acts trivially.
    pub fn is_faithful(&self) -> Result<bool> {
        let b = self.group().bounds();
        let vectors = (self.p() as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        if vectors <= b.affine_points {
            return Ok(self.vector_action_group()?.order() == self.group().order());
        }
        let id = GFMatrix::identity(self.p(), self.dim());
        Ok(self.cayley_matrices()?.iter().filter(|m| **m == id).count() == 1)
    }

    /// Trace fingerprint used to tag composition factors.
    pub fn fingerprint(&self) -> FactorTag {
        meataxe::fingerprint(self)
    }
}

pub(crate) fn spin_space(action: &[GFMatrix], p: u32, dim: usize, seeds: &[GFVector]) -> Subspace {
    let mut space = Subspace::zero(p, dim);
    let mut queue: Vec<GFVector> = Vec::new();
    for s in seeds {
        if space.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for a in action {
            let w = v.mul_mat(a);
            if space.insert(&w) {
                queue.push(w);
            }
        }
        if space.dim() == dim {
            break;
        }
    }
    space
}

/// An invariant subspace of a module, stored as an RREF basis.
#[derive(Clone, Debug)]
pub struct SubmoduleBasis {
    parent: FpModule,
    space: Subspace,
}

impl SubmoduleBasis {
    pub fn parent(&self) -> &FpModule {
        &self.parent
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<GFVector> {
        self.space.basis()
    }

    pub fn is_proper(&self) -> bool {
        self.dim() > 0 && self.dim() < self.parent.dim()
    }

    /// The submodule as a module in its own right, in RREF-basis coordinates.
    pub fn as_module(&self) -> FpModule {
        let basis = self.basis();
        let action = self
            .parent
            .action()
            .iter()
            .map(|a| {
                let rows: Vec<GFVector> = basis
                    .iter()
                    .map(|v| self.space.coordinates(&v.mul_mat(a)))
                    .collect();
                GFMatrix::from_vectors(self.parent.p(), basis.len(), &rows)
            })
            .collect();
        FpModule::trusted(
            self.parent.group().clone(),
            self.parent.p(),
            basis.len(),
            action,
        )
    }

    /// Embeds a vector given in submodule coordinates into the parent.
    pub fn embed(&self, coords: &GFVector) -> GFVector {
        let mut v = GFVector::zero(self.parent.p(), self.parent.dim());
        for (c, b) in coords.entries().iter().zip(self.basis()) {
            v.axpy(*c, &b);
        }
        v
    }
}

impl PartialEq for SubmoduleBasis {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space || (self.dim() == other.dim() && self.space.is_subspace_of(&other.space))
    }
}

/// `M / U` with its projection.
#[derive(Clone, Debug)]
pub struct FactorModule {
    pub module: FpModule,
    kernel: Subspace,
}

impl FactorModule {
    /// Coordinates of the image of `v` in the factor module.
    pub fn project(&self, v: &GFVector) -> GFVector {
        self.kernel.quotient_coordinates(v)
    }

    /// A preimage of a factor-module vector, supported on the complement columns.
    pub fn lift(&self, w: &GFVector) -> GFVector {
        let mut v = GFVector::zero(self.kernel.modulus(), self.kernel.ambient());
        for (c, &x) in self.kernel.complement_columns().iter().zip(w.entries()) {
            v.set(*c, x);
        }
        v
    }

    /// Full preimage of a subspace of the factor module.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let mut out = self.kernel.clone();
        for w in s.basis() {
            out.insert(&self.lift(&w));
        }
        out
    }
}

/// Action induced on `M / U`, in the coordinate system of the unit vectors
/// at the non-pivot columns of `U`.
pub fn factor_module(m: &FpModule, u: &SubmoduleBasis) -> Result<FactorModule> {
    let u = m.submodule(u.space().clone())?;
    let kernel = u.space().clone();
    let cols = kernel.complement_columns();
    let action = m
        .action()
        .iter()
        .map(|a| {
            let rows: Vec<GFVector> = cols
                .iter()
                .map(|&c| kernel.quotient_coordinates(&GFVector::unit(m.p(), m.dim(), c).mul_mat(a)))
                .collect();
            GFMatrix::from_vectors(m.p(), cols.len(), &rows)
        })
        .collect();
    Ok(FactorModule {
        module: FpModule::trusted(m.group().clone(), m.p(), cols.len(), action),
        kernel,
    })
}
