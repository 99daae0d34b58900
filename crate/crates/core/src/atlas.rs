//! Built-in small groups with their recorded orders and solubility flags.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::GFMatrix;
use crate::group::PermGroup;
use crate::hom::direct_product;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub name: &'static str,
    pub group: PermGroup,
    pub order: u64,
    pub supersoluble: bool,
    pub soluble: bool,
}

fn cyc(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(
        degree,
        gens.iter()
            .map(|s| Permutation::parse_cycles(degree, s).expect("valid atlas cycles"))
            .collect(),
    )
    .expect("valid atlas group")
}

fn cyclic(n: usize) -> PermGroup {
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    PermGroup::new(n, vec![Permutation::from_images(images).expect("cycle")]).expect("cyclic")
}

/// `SL(2,3)` acting on the 8 nonzero vectors of `GF(3)^2`.
fn sl23() -> PermGroup {
    let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]
        .iter()
        .map(|m| {
            let a = GFMatrix::from_rows(3, &[&m[0], &m[1]]).expect("2x2");
            // vector 0 is fixed; shift the others to points 0..8
            let images = a.vector_permutation_images()[1..].iter().map(|x| x - 1).collect();
            Permutation::from_images(images).expect("bijection on nonzero vectors")
        })
        .collect();
    PermGroup::new(8, gens).expect("SL(2,3)")
}

pub fn atlas() -> Vec<AtlasEntry> {
    let e = |name, group: PermGroup, order, supersoluble, soluble| AtlasEntry {
        name,
        group,
        order,
        supersoluble,
        soluble,
    };
    let s3 = cyc(3, &["(1 2)", "(1 2 3)"]);
    let a5 = cyc(5, &["(1 2 3 4 5)", "(1 2 3)"]);
    vec![
        e("C2", cyclic(2), 2, true, true),
        e("C3", cyclic(3), 3, true, true),
        e("C4", cyclic(4), 4, true, true),
        e("C6", cyclic(6), 6, true, true),
        e("C12", cyclic(12), 12, true, true),
        e("V4", cyc(4, &["(1 2)(3 4)", "(1 3)(2 4)"]), 4, true, true),
        e("S3", s3.clone(), 6, true, true),
        e("D8", cyc(4, &["(1 2 3 4)", "(1 3)"]), 8, true, true),
        e("Q8", cyc(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]), 8, true, true),
        e("A4", cyc(4, &["(1 2 3)", "(1 2)(3 4)"]), 12, false, true),
        e("S4", cyc(4, &["(1 2)", "(1 2 3 4)"]), 24, false, true),
        e("D10", cyc(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]), 10, true, true),
        e("D12", cyc(6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"]), 12, true, true),
        e("C7:C3", cyc(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]), 21, true, true),
        e("SL(2,3)", sl23(), 24, false, true),
        e("A5", a5.clone(), 60, false, false),
        e("S5", cyc(5, &["(1 2 3 4 5)", "(1 2)"]), 120, false, false),
        e("A5xC2", direct_product(&a5, &cyclic(2)).group, 120, false, false),
        e("S3xS3", direct_product(&s3, &s3).group, 36, true, true),
        e("2^3", cyc(6, &["(1 2)", "(3 4)", "(5 6)"]), 8, true, true),
    ]
}

/// Case-insensitive exact name lookup.
pub fn atlas_group(name: &str) -> Option<AtlasEntry> {
    atlas().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_soluble, is_supersoluble};

    #[test]
    fn recorded_flags_hold() {
        for e in atlas() {
            assert_eq!(e.group.order(), e.order, "{}", e.name);
            assert_eq!(is_supersoluble(&e.group).unwrap(), e.supersoluble, "{}", e.name);
            assert_eq!(is_soluble(&e.group), e.soluble, "{}", e.name);
        }
    }

    #[test]
    fn lookup_ignores_case() {
        assert_eq!(atlas_group("s4").unwrap().order, 24);
        assert_eq!(atlas_group("sl(2,3)").unwrap().order, 24);
        assert!(atlas_group("S6").is_none());
    }
}
