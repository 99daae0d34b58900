//! Permutation groups backed by a base and strong generating set.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::affine::SplitInfo;
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Size limits for the exhaustive parts of the toolkit. Exceeding one is
/// always an error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest group whose elements may be listed.
    pub enumeration: u64,
    /// Largest index for a coset action.
    pub coset_index: u64,
    /// Largest group handled by the brute-force subgroup lattice.
    pub brute: u64,
    /// Largest vector count `p^d` for affine groups and vector actions.
    pub affine_points: u64,
    /// Largest number of 1-dimensional seed subspaces spun exhaustively.
    pub seed_lines: u64,
    /// Largest number of twisted generator tuples in complement search.
    pub complement_tuples: u64,
    /// Largest endomorphism algebra enumerated in the indecomposability test.
    pub endomorphisms: u64,
    /// Attempts for randomized module searches before giving up.
    pub random_attempts: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: 1_000_000,
            coset_index: 10_000,
            brute: 1000,
            affine_points: 100_000,
            seed_lines: 100_000,
            complement_tuples: 100_000,
            endomorphisms: 1_000_000,
            random_attempts: 200,
        }
    }
}

impl Bounds {
    pub(crate) fn check(&self, what: &'static str, size: u64, bound: u64) -> Result<()> {
        if size > bound {
            Err(Error::BoundExceeded { what, size, bound })
        } else {
            Ok(())
        }
    }
}

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    bounds: Bounds,
    split: Option<Arc<SplitInfo>>,
}

/// A permutation group on `0..degree`. Cheap to clone.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupInner>);

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.0.generators)
            .finish()
    }
}

impl PermGroup {
    /// Builds the group generated by `generators` on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::build(degree, generators, &[], Bounds::default())
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    pub(crate) fn build(
        degree: usize,
        generators: Vec<Permutation>,
        base_prefix: &[u32],
        bounds: Bounds,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::new(degree, &generators, base_prefix);
        let order = chain.order().ok_or(Error::BoundExceeded {
            what: "group order",
            size: u64::MAX,
            bound: u64::MAX,
        })?;
        Ok(PermGroup(Arc::new(GroupInner {
            degree,
            generators,
            chain,
            order,
            bounds,
            split: None,
        })))
    }

    pub(crate) fn with_split(self, split: SplitInfo) -> Self {
        let inner = &self.0;
        PermGroup(Arc::new(GroupInner {
            degree: inner.degree,
            generators: inner.generators.clone(),
            chain: inner.chain.clone(),
            order: inner.order,
            bounds: inner.bounds,
            split: Some(Arc::new(split)),
        }))
    }

    /// Same group with different enumeration bounds.
    pub fn with_bounds(&self, bounds: Bounds) -> Self {
        let inner = &self.0;
        PermGroup(Arc::new(GroupInner {
            degree: inner.degree,
            generators: inner.generators.clone(),
            chain: inner.chain.clone(),
            order: inner.order,
            bounds,
            split: inner.split.clone(),
        }))
    }

    /// Subgroup generated by `generators`, inheriting bounds. Generators are
    /// not checked for membership in `self`; see [`SubgroupHandle::new`].
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<Self> {
        Self::build(self.degree(), generators, &[], self.bounds())
    }

    /// Subgroup generated by `generators`, checking each one lies in `self`.
    pub fn checked_subgroup(&self, generators: Vec<Permutation>) -> Result<SubgroupHandle> {
        let sub = self.subgroup(generators)?;
        SubgroupHandle::new(self.clone(), sub)
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn bounds(&self) -> Bounds {
        self.0.bounds
    }

    pub fn split_info(&self) -> Option<&SplitInfo> {
        self.0.split.as_deref()
    }

    pub fn base(&self) -> Vec<u32> {
        self.0.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.0.chain.strong_generators()
    }

    pub fn orbit_lengths(&self) -> Vec<u64> {
        self.0.chain.orbit_lengths()
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.0.chain
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: g.degree(),
            });
        }
        Ok(self.0.chain.contains(g))
    }

    /// Membership for an element already known to have the right degree.
    pub fn has(&self, g: &Permutation) -> bool {
        self.0.chain.contains(g)
    }

    /// Lists every element exactly once, subject to the enumeration bound.
    pub fn elements(&self) -> Result<Elements<'_>> {
        let b = self.bounds();
        b.check("enumeration", self.order(), b.enumeration)?;
        Ok(Elements {
            chain: &self.0.chain,
            next: 0,
            total: self.order(),
        })
    }

    /// The element with the given mixed-radix index, `0 <= index < order`.
    pub fn element_at(&self, index: u64) -> Permutation {
        self.0.chain.element_at(index)
    }

    /// Index of a member element; `None` if `g` is not a member.
    pub fn index_of(&self, g: &Permutation) -> Option<u64> {
        if !self.has(g) {
            return None;
        }
        self.0.chain.index_of(|x| g.image(x))
    }

    /// Index of a member given only an image oracle. The caller guarantees
    /// membership.
    pub(crate) fn index_of_member_by<F: Fn(u32) -> u32>(&self, image: F) -> u64 {
        self.0
            .chain
            .index_of(image)
            .expect("element is a member")
    }

    /// True if every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.has(g))
    }

    /// Element-set equality, decided by mutual membership of generators.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// True if `self` is normalised by every generator of `parent`.
    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent
            .generators()
            .iter()
            .all(|s| self.generators().iter().all(|x| self.has(&x.conjugate_by(s))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].compose(&g[j]) == g[j].compose(&g[i])))
    }

    /// `<self, other>`.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        let mut chain = self.0.chain.clone();
        let mut gens = self.generators().to_vec();
        for g in other.generators() {
            if chain.extend(g) {
                gens.push(g.clone());
            }
        }
        self.with_chain(gens, chain)
    }

    /// `<self, g>`.
    pub fn adjoin(&self, g: &Permutation) -> PermGroup {
        if self.has(g) {
            return self.clone();
        }
        let mut chain = self.0.chain.clone();
        chain.extend(g);
        let mut gens = self.generators().to_vec();
        gens.push(g.clone());
        self.with_chain(gens, chain)
    }

    fn with_chain(&self, generators: Vec<Permutation>, chain: StabChain) -> PermGroup {
        let order = chain.order().expect("order fits in u64");
        PermGroup(Arc::new(GroupInner {
            degree: self.degree(),
            generators,
            chain,
            order,
            bounds: self.bounds(),
            split: None,
        }))
    }

    /// `g^-1 * self * g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens = self.generators().iter().map(|x| x.conjugate_by(g)).collect();
        self.subgroup(gens).expect("degrees agree")
    }

    /// Orbit of a 0-based point, in breadth-first order.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = alloc::vec![false; self.degree()];
        let mut orbit = alloc::vec![point];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            for s in self.generators() {
                let y = s.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            head += 1;
        }
        orbit
    }

    /// Point stabiliser of a 0-based point.
    pub fn stabilizer(&self, point: u32) -> PermGroup {
        let chain = StabChain::new(self.degree(), &self.strong_generators(), &[point]);
        let gens = chain.levels.get(1).map(|l| l.gens.clone()).unwrap_or_default();
        self.subgroup(gens).expect("degrees agree")
    }

    /// Sorted element indices relative to `parent`'s stabiliser chain.
    pub fn fingerprint_in(&self, parent: &PermGroup) -> Result<Vec<u64>> {
        let b = self.bounds();
        b.check("enumeration", self.order(), b.enumeration)?;
        let mut out: Vec<u64> = self
            .elements()?
            .map(|g| parent.index_of_member_by(|x| g.image(x)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Iterator over the elements of a group, in mixed-radix index order.
pub struct Elements<'a> {
    chain: &'a StabChain,
    next: u64,
    total: u64,
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.next >= self.total {
            return None;
        }
        let g = self.chain.element_at(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.total - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements<'_> {}

/// A subgroup together with the group it lives in.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    parent: PermGroup,
    subgroup: PermGroup,
}

impl SubgroupHandle {
    /// Checks that every generator of `subgroup` lies in `parent`.
    pub fn new(parent: PermGroup, subgroup: PermGroup) -> Result<Self> {
        if subgroup.degree() != parent.degree() {
            return Err(Error::DegreeMismatch {
                expected: parent.degree(),
                found: subgroup.degree(),
            });
        }
        if !subgroup.is_subgroup_of(&parent) {
            return Err(Error::NotAMember);
        }
        debug_assert_eq!(parent.order() % subgroup.order(), 0);
        Ok(SubgroupHandle { parent, subgroup })
    }

    pub(crate) fn trusted(parent: PermGroup, subgroup: PermGroup) -> Self {
        debug_assert!(subgroup.is_subgroup_of(&parent));
        SubgroupHandle { parent, subgroup }
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn group(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn into_group(self) -> PermGroup {
        self.subgroup
    }

    pub fn index(&self) -> u64 {
        self.parent.order() / self.subgroup.order()
    }

    pub fn is_normal(&self) -> bool {
        self.subgroup.is_normal_in(&self.parent)
    }
}

impl Deref for SubgroupHandle {
    type Target = PermGroup;
    fn deref(&self) -> &PermGroup {
        &self.subgroup
    }
}
