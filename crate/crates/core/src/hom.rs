//! Homomorphisms between permutation groups, coset actions and direct
//! products.
//!
//! A homomorphism given by generator images is represented through its
//! graph: the "diagonal" group generated by each domain generator acting
//! on the first block of points and its image acting on a second block.
//! The assignment extends to a homomorphism exactly when this diagonal
//! group has the same order as the domain.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::{PermGroup, SubgroupHandle};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Homomorphism {
    domain: PermGroup,
    codomain: PermGroup,
    images: Vec<Permutation>,
    /// Graph with the domain base first; maps elements forward.
    forward: StabChain,
    /// Graph with the image base first; lifts elements and yields the kernel.
    backward: StabChain,
    domain_levels: usize,
    codomain_levels: usize,
}

/// Builds the homomorphism sending the i-th generator of `domain` to
/// `images[i]`, after checking consistency.
pub fn hom_from_images(
    domain: &PermGroup,
    codomain_degree: usize,
    images: Vec<Permutation>,
) -> Result<Homomorphism> {
    if images.len() != domain.generators().len() {
        return Err(Error::InconsistentHom(format!(
            "{} images for {} generators",
            images.len(),
            domain.generators().len()
        )));
    }
    let codomain = PermGroup::build(codomain_degree, images.clone(), &[], domain.bounds())?;
    let n = domain.degree();
    let combined: Vec<Permutation> = domain
        .generators()
        .iter()
        .zip(&images)
        .map(|(g, h)| g.concat(h))
        .collect();
    let dom_base = domain.base();
    let forward = StabChain::new(n + codomain_degree, &combined, &dom_base);
    let graph_order = forward.order().unwrap_or(u64::MAX);
    if graph_order != domain.order() {
        // Strong generators fixing the whole domain base have trivial domain
        // part: they are images of relators.
        let witness = forward
            .levels
            .get(dom_base.len())
            .and_then(|l| l.gens.first())
            .map(|g| g.restricted(n, codomain_degree));
        let msg = match witness {
            Some(w) => format!(
                "graph has order {graph_order}, domain {}; a relator maps to {}",
                domain.order(),
                w
            ),
            None => format!("graph has order {graph_order}, domain {}", domain.order()),
        };
        return Err(Error::InconsistentHom(msg));
    }
    let cod_base: Vec<u32> = codomain.base().iter().map(|&b| b + n as u32).collect();
    let backward = StabChain::new(n + codomain_degree, &combined, &cod_base);
    Ok(Homomorphism {
        domain: domain.clone(),
        codomain,
        images,
        forward,
        backward,
        domain_levels: dom_base.len(),
        codomain_levels: cod_base.len(),
    })
}

impl Homomorphism {
    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    /// The image group, generated by the generator images.
    pub fn image(&self) -> &PermGroup {
        &self.codomain
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    /// `f(g)` for a domain element.
    pub fn map(&self, g: &Permutation) -> Result<Permutation> {
        let n = self.domain.degree();
        let m = self.codomain.degree();
        if g.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: g.degree(),
            });
        }
        let mut h = g.clone();
        let mut acc = Permutation::identity(m);
        for lvl in &self.forward.levels[..self.domain_levels] {
            let x = h.image(lvl.base_point);
            let a = lvl.position(x).ok_or(Error::NotAMember)?;
            if a != 0 {
                h.compose_assign(&lvl.reps_inv[a].restricted(0, n));
                acc = lvl.reps[a].restricted(n, m).compose(&acc);
            }
        }
        if !h.is_identity() {
            return Err(Error::NotAMember);
        }
        Ok(acc)
    }

    /// Some preimage of an element of the image.
    pub fn lift(&self, q: &Permutation) -> Result<Permutation> {
        let n = self.domain.degree();
        let m = self.codomain.degree();
        if q.degree() != m {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: q.degree(),
            });
        }
        let mut h = q.clone();
        let mut acc = Permutation::identity(n);
        for lvl in &self.backward.levels[..self.codomain_levels] {
            let x = h.image(lvl.base_point - n as u32) + n as u32;
            let a = lvl.position(x).ok_or(Error::NotAMember)?;
            if a != 0 {
                h.compose_assign(&lvl.reps_inv[a].restricted(n, m));
                acc = lvl.reps[a].restricted(0, n).compose(&acc);
            }
        }
        if !h.is_identity() {
            return Err(Error::NotAMember);
        }
        Ok(acc)
    }

    pub fn kernel(&self) -> SubgroupHandle {
        let n = self.domain.degree();
        let gens = self
            .backward
            .levels
            .get(self.codomain_levels)
            .map(|l| l.gens.iter().map(|g| g.restricted(0, n)).collect())
            .unwrap_or_default();
        let k = self.domain.subgroup(gens).expect("kernel generators have domain degree");
        SubgroupHandle::trusted(self.domain.clone(), k)
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, s: &PermGroup) -> Result<SubgroupHandle> {
        let mut gens = self.kernel().generators().to_vec();
        for g in s.generators() {
            gens.push(self.lift(g)?);
        }
        let pre = self.domain.subgroup(gens)?;
        Ok(SubgroupHandle::trusted(self.domain.clone(), pre))
    }

    /// Image of a subgroup of the domain.
    pub fn image_of(&self, s: &PermGroup) -> Result<SubgroupHandle> {
        let gens = s
            .generators()
            .iter()
            .map(|g| self.map(g))
            .collect::<Result<Vec<_>>>()?;
        let img = self.codomain.subgroup(gens)?;
        Ok(SubgroupHandle::trusted(self.codomain.clone(), img))
    }
}

/// Canonical element of the right coset `H g`, using `h`'s stabiliser chain.
fn canonical_coset_rep(h: &PermGroup, g: &Permutation) -> Permutation {
    let mut c = g.clone();
    for lvl in &h.chain().levels {
        let (best, _) = lvl
            .orbit
            .iter()
            .enumerate()
            .map(|(a, &x)| (a, c.image(x)))
            .min_by_key(|&(_, img)| img)
            .expect("orbit is nonempty");
        if best != 0 {
            c = lvl.reps[best].compose(&c);
        }
    }
    c
}

/// Action of `g` on the right cosets of `h`, as a permutation group of
/// degree `|g : h|` together with the epimorphism onto it.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<(PermGroup, Homomorphism)> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotAMember);
    }
    let index = g.order() / h.order();
    let b = g.bounds();
    b.check("coset index", index, b.coset_index)?;
    let key = |c: &Permutation| g.index_of_member_by(|x| c.image(x));
    let mut reps = alloc::vec![canonical_coset_rep(h, &g.identity())];
    let mut lookup: BTreeMap<u64, u32> = BTreeMap::new();
    lookup.insert(key(&reps[0]), 0);
    let ngens = g.generators().len();
    let mut images: Vec<Vec<u32>> = alloc::vec![Vec::with_capacity(index as usize); ngens];
    let mut head = 0;
    while head < reps.len() {
        for (si, s) in g.generators().iter().enumerate() {
            let c = canonical_coset_rep(h, &reps[head].compose(s));
            let k = key(&c);
            let next = reps.len() as u32;
            let j = *lookup.entry(k).or_insert(next);
            if j == next {
                reps.push(c);
            }
            images[si].push(j);
        }
        head += 1;
    }
    debug_assert_eq!(reps.len() as u64, index);
    let perms = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    let hom = hom_from_images(g, index as usize, perms)?;
    Ok((hom.image().clone(), hom))
}

/// Quotient `G/N` by a normal subgroup. A trivial `N` gives the identity map
/// rather than the regular representation.
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, Homomorphism)> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotAMember);
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    if n.is_trivial() {
        let hom = hom_from_images(g, g.degree(), g.generators().to_vec())?;
        return Ok((hom.image().clone(), hom));
    }
    coset_action(g, n)
}

/// `A x B` acting on the disjoint union of the two point sets.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: PermGroup,
    pub left: SubgroupHandle,
    pub right: SubgroupHandle,
    left_degree: usize,
    right_degree: usize,
}

impl DirectProduct {
    pub fn embed_left(&self, g: &Permutation) -> Permutation {
        g.shifted(0, self.left_degree + self.right_degree)
    }

    pub fn embed_right(&self, g: &Permutation) -> Permutation {
        g.shifted(self.left_degree, self.left_degree + self.right_degree)
    }
}

pub fn direct_product(a: &PermGroup, b: &PermGroup) -> DirectProduct {
    let (na, nb) = (a.degree(), b.degree());
    let total = na + nb;
    let lg: Vec<Permutation> = a.generators().iter().map(|g| g.shifted(0, total)).collect();
    let rg: Vec<Permutation> = b.generators().iter().map(|g| g.shifted(na, total)).collect();
    let mut gens = lg.clone();
    gens.extend(rg.iter().cloned());
    let group = PermGroup::build(total, gens, &[], a.bounds()).expect("degrees agree");
    let left = group.subgroup(lg).expect("degrees agree");
    let right = group.subgroup(rg).expect("degrees agree");
    DirectProduct {
        left: SubgroupHandle::trusted(group.clone(), left),
        right: SubgroupHandle::trusted(group.clone(), right),
        group,
        left_degree: na,
        right_degree: nb,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, alloc::vec![p(4, "(1 2)"), p(4, "(1 2 3 4)")]).unwrap()
    }

    fn a5() -> PermGroup {
        PermGroup::new(5, alloc::vec![p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")]).unwrap()
    }

    #[test]
    fn hom_examples() {
        let a5 = a5();
        let triv = hom_from_images(&a5, 1, alloc::vec![Permutation::identity(1); 2]).unwrap();
        assert_eq!(triv.kernel().order(), 60);

        let c4 = PermGroup::new(4, alloc::vec![p(4, "(1 2 3 4)")]).unwrap();
        let to_c2 = hom_from_images(&c4, 2, alloc::vec![p(2, "(1 2)")]).unwrap();
        assert_eq!(to_c2.kernel().order(), 2);
        assert_eq!(to_c2.image().order(), 2);

        let bad = hom_from_images(&c4, 3, alloc::vec![p(3, "(1 2 3)")]);
        assert!(matches!(bad, Err(Error::InconsistentHom(_))));
    }

    #[test]
    fn sign_map_kernel() {
        let s4 = s4();
        let sign: Vec<Permutation> = s4
            .generators()
            .iter()
            .map(|g| if g.is_even() { Permutation::identity(2) } else { p(2, "(1 2)") })
            .collect();
        let f = hom_from_images(&s4, 2, sign).unwrap();
        let k = f.kernel();
        assert_eq!(k.order(), 12);
        // brute force: exactly the even permutations
        for g in s4.elements().unwrap() {
            assert_eq!(k.has(&g), g.is_even());
            assert_eq!(f.map(&g).unwrap().is_identity(), g.is_even());
        }
        let id = hom_from_images(&s4, 4, s4.generators().to_vec()).unwrap();
        assert!(id.kernel().is_trivial());
    }

    #[test]
    fn coset_action_examples() {
        let s4 = s4();
        let a4 = s4
            .subgroup(alloc::vec![p(4, "(1 2 3)"), p(4, "(1 2)(3 4)")])
            .unwrap();
        let (q, f) = coset_action(&s4, &a4).unwrap();
        assert_eq!((q.degree(), q.order()), (2, 2));
        assert!(f.kernel().same_elements(&a4));
        let (q, _) = coset_action(&s4, &s4).unwrap();
        assert!(q.is_trivial());
        // non-normal subgroup: action on 4 cosets of S3 is faithful
        let s3 = s4.stabilizer(3);
        let (q, f) = coset_action(&s4, &s3).unwrap();
        assert_eq!((q.degree(), q.order()), (4, 24));
        assert!(f.kernel().is_trivial());
    }

    #[test]
    fn lift_and_preimage() {
        let s4 = s4();
        let v4 = s4
            .subgroup(alloc::vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")])
            .unwrap();
        let (q, f) = quotient(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        for x in q.elements().unwrap() {
            let y = f.lift(&x).unwrap();
            assert_eq!(f.map(&y).unwrap(), x);
        }
        let c3 = q.subgroup(alloc::vec![f.map(&p(4, "(1 2 3)")).unwrap()]).unwrap();
        assert_eq!(f.preimage(&c3).unwrap().order(), 12);
    }

    #[test]
    fn direct_product_examples() {
        let c2 = PermGroup::new(2, alloc::vec![p(2, "(1 2)")]).unwrap();
        let v4 = direct_product(&c2, &c2);
        assert_eq!(v4.group.order(), 4);
        assert!(v4.group.elements().unwrap().all(|g| g.order() <= 2));
        let s3 = PermGroup::new(3, alloc::vec![p(3, "(1 2)"), p(3, "(1 2 3)")]).unwrap();
        assert_eq!(direct_product(&s3, &c2).group.order(), 12);
        let a5 = a5();
        let d = direct_product(&a5, &a5);
        assert_eq!(d.group.degree(), 10);
        assert_eq!(d.group.order(), 3600);
        let x = d.embed_right(&p(5, "(1 2 3)"));
        assert!(d.right.has(&x) && !d.left.has(&x));
    }
}
