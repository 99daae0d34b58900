//! Affine split extensions `W ⋊ K` of a module by its group, acting on the
//! `p^d` vectors of the module.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::GFVector;
use crate::group::{PermGroup, SubgroupHandle};
use crate::modrep::{FpModule, SubmoduleBasis};
use crate::perm::Permutation;

/// Split-extension data retained on a group built by
/// [`affine_semidirect_product`]: the module, one translation per module
/// basis vector, and the complement.
#[derive(Clone, Debug)]
pub struct SplitInfo {
    pub module: FpModule,
    pub translations: Vec<Permutation>,
    pub vectors: PermGroup,
    pub complement: PermGroup,
}

impl SplitInfo {
    /// Translation by the module vector with coordinates `coords`.
    pub fn translation(&self, coords: &GFVector) -> Permutation {
        let degree = self.vectors.degree();
        let mut t = Permutation::identity(degree);
        for (c, gen) in coords.entries().iter().zip(&self.translations) {
            if *c != 0 {
                t = t.compose(&gen.pow(*c as u64));
            }
        }
        t
    }

    /// The subgroup of translations by vectors of `u`.
    pub fn translations_of(&self, u: &SubmoduleBasis) -> PermGroup {
        let gens = u.basis().iter().map(|b| self.translation(b)).collect();
        self.vectors.subgroup(gens).expect("translations share degree")
    }
}

/// `G = W ⋊ K` with handles to the translation subgroup and the stabiliser
/// of the zero vector.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub group: PermGroup,
    pub vectors: SubgroupHandle,
    pub complement: SubgroupHandle,
}

/// Builds `W ⋊ K` acting on vectors by `v -> v ρ(k) + w`. Point `i` is the
/// vector with base-`p` digits of `i`, least significant first. Generators
/// are the basis translations followed by the linear maps of `K`'s
/// generators.
pub fn affine_semidirect_product(m: &FpModule) -> Result<AffineGroup> {
    let k = m.group();
    let b = k.bounds();
    let p = m.p();
    let d = m.dim();
    let points = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    b.check("affine points", points, b.affine_points)?;
    let n = points as usize;
    let translations: Vec<Permutation> = (0..d)
        .map(|i| {
            let e = GFVector::unit(p, d, i);
            Permutation::from_images_unchecked(
                (0..points)
                    .map(|x| GFVector::from_index(p, d, x).add(&e).to_index() as u32)
                    .collect(),
            )
        })
        .collect();
    let linear: Vec<Permutation> = m
        .action()
        .iter()
        .map(|a| Permutation::from_images_unchecked(a.vector_permutation_images()))
        .collect();
    let mut gens = translations.clone();
    gens.extend(linear.iter().cloned());
    let group = PermGroup::build(n, gens, &[0], b)?;
    if group.order() != points * k.order() {
        return Err(Error::NotFaithful);
    }
    let vectors = group.subgroup(translations.clone())?;
    let complement = group.subgroup(linear)?;
    let split = SplitInfo {
        module: m.clone(),
        translations,
        vectors: vectors.clone(),
        complement: complement.clone(),
    };
    let group = group.with_split(split);
    Ok(AffineGroup {
        vectors: SubgroupHandle::trusted(group.clone(), vectors),
        complement: SubgroupHandle::trusted(group.clone(), complement),
        group,
    })
}

/// `U ⋊ K` inside an affine group, for a submodule `U` of its module. The
/// result carries its own split data, with `U` as module in RREF-basis
/// coordinates.
pub fn restrict_to_submodule(aff: &AffineGroup, u: &SubmoduleBasis) -> Result<AffineGroup> {
    let split = aff
        .group
        .split_info()
        .ok_or_else(|| Error::Invalid(alloc::string::String::from("group has no split data")))?;
    if u.parent().action() != split.module.action() || u.parent().dim() != split.module.dim() {
        return Err(Error::Invalid(alloc::string::String::from(
            "submodule of a different module",
        )));
    }
    let translations: Vec<Permutation> = u.basis().iter().map(|b| split.translation(b)).collect();
    let complement = split.complement.clone();
    let mut gens = translations.clone();
    gens.extend(complement.generators().iter().cloned());
    let h = PermGroup::build(aff.group.degree(), gens, &[0], aff.group.bounds())?;
    let vectors = h.subgroup(translations.clone())?;
    let info = SplitInfo {
        module: u.as_module(),
        translations,
        vectors: vectors.clone(),
        complement: complement.clone(),
    };
    let h = h.with_split(info);
    Ok(AffineGroup {
        vectors: SubgroupHandle::trusted(h.clone(), vectors),
        complement: SubgroupHandle::trusted(h.clone(), complement),
        group: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximals::{frattini_of, maximal_subgroups};
    use crate::modrep::factor_module;

    fn a5() -> PermGroup {
        PermGroup::new(
            5,
            alloc::vec![
                Permutation::parse_cycles(5, "(1 2 3 4 5)").unwrap(),
                Permutation::parse_cycles(5, "(1 2 3)").unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn counterexample_groups() {
        let v = FpModule::permutation_module(&a5(), 5).unwrap();
        let soc = v.socle_basis().unwrap();
        let w = factor_module(&v, &soc).unwrap().module;
        let rad = w.radical_basis().unwrap();
        let g = affine_semidirect_product(&w).unwrap();
        assert_eq!(g.group.degree(), 625);
        assert_eq!(g.group.order(), 37500);
        let h = restrict_to_submodule(&g, &rad).unwrap();
        assert_eq!(h.group.order(), 7500);
        let mg = maximal_subgroups(&g.group).unwrap();
        assert_eq!(mg.len(), 22);
        assert_eq!(frattini_of(&mg).unwrap().order(), 125);
        let mh = maximal_subgroups(&h.group).unwrap();
        assert_eq!(mh.len(), 21 + 625);
        assert!(frattini_of(&mh).unwrap().is_trivial());
    }
}
