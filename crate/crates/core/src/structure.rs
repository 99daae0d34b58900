//! Characteristic subgroups and structural predicates.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factorize, is_prime, p_part};
use crate::error::Result;
use crate::group::{PermGroup, SubgroupHandle};
use crate::hom::quotient;
use crate::maximals::frattini;
use crate::perm::Permutation;

/// A conjugacy class: its first element in index order and its size.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: u64,
}

/// Conjugacy classes by orbits of the conjugation action, ordered by the
/// index of their representative.
pub fn conjugacy_classes(g: &PermGroup) -> Result<Vec<ConjugacyClass>> {
    let b = g.bounds();
    b.check("enumeration", g.order(), b.enumeration)?;
    let n = g.order() as usize;
    let mut seen = vec![false; n];
    let gens: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .map(|s| (s.clone(), s.inverse()))
        .collect();
    let mut out = Vec::new();
    let mut queue: Vec<u64> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.clear();
        queue.push(start as u64);
        let mut head = 0;
        while head < queue.len() {
            let x = g.element_at(queue[head]);
            head += 1;
            for (s, si) in &gens {
                // s^-1 x s maps p to s(x(s^-1(p)))
                let j = g.index_of_member_by(|p| s.image(x.image(si.image(p)))) as usize;
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j as u64);
                }
            }
        }
        out.push(ConjugacyClass {
            representative: g.element_at(start as u64),
            size: queue.len() as u64,
        });
    }
    Ok(out)
}

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure_of(g: &PermGroup, s: &PermGroup) -> SubgroupHandle {
    let mut n = g.subgroup(s.generators().to_vec()).expect("same degree");
    let mut queue: Vec<Permutation> = s.generators().to_vec();
    while let Some(x) = queue.pop() {
        for t in g.generators() {
            let y = x.conjugate_by(t);
            if !n.has(&y) {
                n = n.adjoin(&y);
                queue.push(y);
            }
        }
    }
    SubgroupHandle::trusted(g.clone(), n)
}

/// `<x^G>`.
pub fn normal_closure(g: &PermGroup, x: &Permutation) -> SubgroupHandle {
    let s = g.subgroup(vec![x.clone()]).expect("same degree");
    normal_closure_of(g, &s)
}

/// Largest subgroup of `g` whose elements satisfy `keep`, grown from
/// `start`. `keep` must define a subgroup containing `start`.
fn filter_subgroup<F: Fn(&Permutation) -> bool>(
    g: &PermGroup,
    start: PermGroup,
    keep: F,
) -> Result<PermGroup> {
    let mut h = start;
    for x in g.elements()? {
        if !h.has(&x) && keep(&x) {
            h = h.adjoin(&x);
        }
    }
    Ok(h)
}

pub fn centralizer(g: &PermGroup, s: &PermGroup) -> Result<SubgroupHandle> {
    let gens = s.generators().to_vec();
    let c = filter_subgroup(g, g.subgroup(Vec::new())?, |x| {
        gens.iter().all(|y| x.compose(y) == y.compose(x))
    })?;
    Ok(SubgroupHandle::trusted(g.clone(), c))
}

pub fn normalizer(g: &PermGroup, s: &PermGroup) -> Result<SubgroupHandle> {
    let start = if s.is_subgroup_of(g) {
        g.subgroup(s.generators().to_vec())?
    } else {
        g.subgroup(Vec::new())?
    };
    let n = filter_subgroup(g, start, |x| {
        s.generators().iter().all(|y| s.has(&y.conjugate_by(x)))
    })?;
    Ok(SubgroupHandle::trusted(g.clone(), n))
}

/// `a ∩ b`, by filtering the elements of the smaller group.
pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.is_subgroup_of(large) {
        return Ok(small.clone());
    }
    filter_subgroup(small, small.subgroup(Vec::new())?, |x| large.has(x))
}

/// Largest normal subgroup of `g` inside `s`.
pub fn core(g: &PermGroup, s: &PermGroup) -> Result<SubgroupHandle> {
    let mut c = s.clone();
    loop {
        let mut next = c.clone();
        for t in g.generators() {
            next = intersection(&next, &c.conjugate(t))?;
        }
        if next.order() == c.order() {
            return Ok(SubgroupHandle::trusted(g.clone(), c));
        }
        c = next;
    }
}

/// A Sylow `p`-subgroup, grown one `p`-element at a time inside
/// normalisers.
pub fn sylow(g: &PermGroup, p: u64) -> Result<SubgroupHandle> {
    let target = p_part(g.order(), p);
    let mut pg = g.subgroup(Vec::new())?;
    while pg.order() < target {
        let n = normalizer(g, &pg)?;
        let exp = p_part(n.order(), p);
        let x = n
            .elements()?
            .find(|x| !pg.has(x) && pg.has(&x.pow(exp)))
            .expect("a p-subgroup below Sylow order is properly normalised by a p-element");
        pg = pg.adjoin(&x);
    }
    Ok(SubgroupHandle::trusted(g.clone(), pg))
}

/// `O_p(G)`, the core of a Sylow `p`-subgroup.
pub fn p_core(g: &PermGroup, p: u64) -> Result<SubgroupHandle> {
    let s = sylow(g, p)?;
    core(g, s.group())
}

/// Minimal normal subgroups, in order of first discovery. Every minimal
/// normal subgroup is the normal closure of any of its elements of prime
/// order, so only those class representatives are closed.
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let mut cands: Vec<SubgroupHandle> = Vec::new();
    for c in conjugacy_classes(g)? {
        if !is_prime(c.representative.order()) {
            continue;
        }
        let n = normal_closure(g, &c.representative);
        if !cands.iter().any(|m| m.same_elements(&n)) {
            cands.push(n);
        }
    }
    let minimal = cands
        .iter()
        .filter(|n| {
            !cands
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// Join of the minimal normal subgroups.
pub fn socle(g: &PermGroup) -> Result<SubgroupHandle> {
    let mut s = g.subgroup(Vec::new())?;
    for n in minimal_normal_subgroups(g)? {
        s = s.join(&n);
    }
    Ok(SubgroupHandle::trusted(g.clone(), s))
}

pub fn derived_subgroup(g: &PermGroup) -> SubgroupHandle {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    let s = g.subgroup(comms).expect("same degree");
    normal_closure_of(g, &s)
}

/// `G = G^(0) > G' > G'' > ...` until it stabilises.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().expect("nonempty");
        let d = derived_subgroup(last).into_group();
        if d.order() == last.order() {
            return out;
        }
        out.push(d);
    }
}

/// `G = γ_1 > γ_2 = [G, G] > ...` until it stabilises.
pub fn lower_central_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().expect("nonempty");
        let mut comms = Vec::new();
        for a in last.generators() {
            for b in g.generators() {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        let s = g.subgroup(comms).expect("same degree");
        let next = normal_closure_of(g, &s).into_group();
        if next.order() == last.order() {
            return out;
        }
        out.push(next);
    }
}

pub fn is_soluble(g: &PermGroup) -> bool {
    derived_series(g).last().expect("nonempty").is_trivial()
}

pub fn is_nilpotent(g: &PermGroup) -> bool {
    lower_central_series(g).last().expect("nonempty").is_trivial()
}

pub fn is_abelian(g: &PermGroup) -> bool {
    g.is_abelian()
}

/// Ascending chief series `1 = N_0 < N_1 < ... < N_r = G`.
#[derive(Clone, Debug)]
pub struct ChiefSeries {
    pub terms: Vec<SubgroupHandle>,
    pub factor_orders: Vec<u64>,
}

pub fn chief_series(g: &PermGroup) -> Result<ChiefSeries> {
    let mut n = SubgroupHandle::trusted(g.clone(), g.subgroup(Vec::new())?);
    let mut terms = vec![n.clone()];
    let mut orders = Vec::new();
    while n.order() < g.order() {
        let (q, f) = quotient(g, &n)?;
        let mins = minimal_normal_subgroups(&q)?;
        let m = mins.first().expect("nontrivial group has a minimal normal subgroup");
        orders.push(m.order());
        n = f.preimage(m)?;
        terms.push(n.clone());
    }
    Ok(ChiefSeries {
        terms,
        factor_orders: orders,
    })
}

/// Every chief factor has prime order.
pub fn is_supersoluble(g: &PermGroup) -> Result<bool> {
    Ok(chief_series(g)?.factor_orders.iter().all(|&o| is_prime(o)))
}

/// `F(G)`, the join of the `p`-cores.
pub fn fitting(g: &PermGroup) -> Result<SubgroupHandle> {
    let mut f = g.subgroup(Vec::new())?;
    for (p, _) in factorize(g.order()) {
        f = f.join(p_core(g, p)?.group());
    }
    Ok(SubgroupHandle::trusted(g.clone(), f))
}

/// `F*(G)` from `F*(G)/F(G) = Soc(F(G) C_G(F(G)) / F(G))`.
pub fn generalized_fitting_star(g: &PermGroup) -> Result<SubgroupHandle> {
    let f = fitting(g)?;
    let c = centralizer(g, &f)?;
    let j = f.join(&c);
    let (q, hom) = quotient(&j, &f)?;
    let s = socle(&q)?;
    let pre = hom.preimage(&s)?.into_group().join(&f);
    Ok(SubgroupHandle::trusted(g.clone(), pre))
}

/// `F̃(G)` from `F̃(G)/Φ(G) = Soc(G/Φ(G))`.
pub fn shemetkov_tilde_fitting(g: &PermGroup) -> Result<SubgroupHandle> {
    let phi = frattini(g)?;
    tilde_fitting_given_frattini(g, &phi)
}

pub(crate) fn tilde_fitting_given_frattini(g: &PermGroup, phi: &PermGroup) -> Result<SubgroupHandle> {
    let (q, hom) = quotient(g, phi)?;
    let s = socle(&q)?;
    let pre = hom.preimage(&s)?.into_group();
    Ok(SubgroupHandle::trusted(g.clone(), pre))
}

/// Multiset of element orders, as sorted `(order, count)` pairs.
pub fn element_order_statistics(g: &PermGroup) -> Result<Vec<(u64, u64)>> {
    let mut counts: alloc::collections::BTreeMap<u64, u64> = Default::default();
    for x in g.elements()? {
        *counts.entry(x.order()).or_default() += 1;
    }
    Ok(counts.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            deg,
            gens.iter().map(|s| Permutation::parse_cycles(deg, s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn s4() -> PermGroup {
        grp(4, &["(1 2)", "(1 2 3 4)"])
    }

    fn a5() -> PermGroup {
        grp(5, &["(1 2 3 4 5)", "(1 2 3)"])
    }

    /// All normal subgroups by brute force: closures of every element set
    /// of the form <x^G, y^G>.
    fn brute_normal_subgroups(g: &PermGroup) -> Vec<PermGroup> {
        let elems: Vec<Permutation> = g.elements().unwrap().collect();
        let mut out: Vec<PermGroup> = vec![g.subgroup(Vec::new()).unwrap()];
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = out.clone();
            for n in &snapshot {
                for x in &elems {
                    let m = normal_closure_of(g, &n.adjoin(x)).into_group();
                    if !out.iter().any(|o| o.same_elements(&m)) {
                        out.push(m);
                        changed = true;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for g in [s4(), a5()] {
            let total: u64 = conjugacy_classes(&g).unwrap().iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
        }
        assert_eq!(conjugacy_classes(&a5()).unwrap().len(), 5);
        assert_eq!(conjugacy_classes(&s4()).unwrap().len(), 5);
    }

    #[test]
    fn centralizer_and_closure_examples() {
        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        let c3 = grp(3, &["(1 2 3)"]);
        let c = centralizer(&s3, &c3).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.same_elements(&c3));
        let x = Permutation::parse_cycles(5, "(1 2)(3 4)").unwrap();
        assert_eq!(normal_closure(&a5(), &x).order(), 60);
    }

    #[test]
    fn core_of_s3_in_s4_is_trivial() {
        let s3 = grp(4, &["(1 2)", "(1 2 3)"]);
        let normals = brute_normal_subgroups(&s4());
        let mut orders: Vec<u64> = normals.iter().map(|n| n.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert!(normals
            .iter()
            .filter(|n| n.is_subgroup_of(&s3))
            .all(|n| n.is_trivial()));
        assert!(core(&s4(), &s3).unwrap().is_trivial());
    }

    #[test]
    fn sylow_examples() {
        assert_eq!(sylow(&s4(), 2).unwrap().order(), 8);
        assert_eq!(sylow(&a5(), 5).unwrap().order(), 5);
        assert_eq!(sylow(&a5(), 2).unwrap().order(), 4);
        assert_eq!(sylow(&grp(6, &["(1 2 3 4 5 6)"]), 3).unwrap().order(), 3);
        assert_eq!(sylow(&s4(), 5).unwrap().order(), 1);
    }

    #[test]
    fn minimal_normals_and_socle() {
        let mins = minimal_normal_subgroups(&s4()).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        let dp = crate::hom::direct_product(&a5(), &a5());
        let mins = minimal_normal_subgroups(&dp.group).unwrap();
        assert_eq!(mins.iter().map(|m| m.order()).collect::<Vec<_>>(), vec![60, 60]);
        assert_eq!(socle(&a5()).unwrap().order(), 60);
        assert_eq!(socle(&s4()).unwrap().order(), 4);
        assert_eq!(socle(&grp(6, &["(1 2 3 4 5 6)"])).unwrap().order(), 6);
    }

    #[test]
    fn series_and_predicates() {
        assert!(is_soluble(&s4()));
        assert!(!is_soluble(&a5()));
        let q8 = grp(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert_eq!(q8.order(), 8);
        assert!(is_nilpotent(&q8));
        assert!(!is_nilpotent(&grp(3, &["(1 2)", "(1 2 3)"])));
        assert_eq!(derived_series(&s4()).iter().map(|g| g.order()).collect::<Vec<_>>(), vec![24, 12, 4, 1]);
    }

    #[test]
    fn chief_series_examples() {
        assert_eq!(chief_series(&s4()).unwrap().factor_orders, vec![4, 3, 2]);
        let mut c12 = chief_series(&grp(12, &["(1 2 3 4 5 6 7 8 9 10 11 12)"])).unwrap().factor_orders;
        c12.sort();
        assert_eq!(c12, vec![2, 2, 3]);
        assert_eq!(chief_series(&a5()).unwrap().factor_orders, vec![60]);
        assert!(is_supersoluble(&grp(3, &["(1 2)", "(1 2 3)"])).unwrap());
        assert!(!is_supersoluble(&grp(4, &["(1 2 3)", "(1 2)(3 4)"])).unwrap());
    }

    #[test]
    fn fitting_family() {
        let f = fitting(&s4()).unwrap();
        assert_eq!(f.order(), 4);
        let brute = brute_normal_subgroups(&s4())
            .into_iter()
            .filter(is_nilpotent)
            .max_by_key(|n| n.order())
            .unwrap();
        assert!(brute.same_elements(&f));
        assert!(fitting(&a5()).unwrap().is_trivial());
        assert_eq!(generalized_fitting_star(&a5()).unwrap().order(), 60);
        assert_eq!(generalized_fitting_star(&s4()).unwrap().order(), 4);
        let q8 = grp(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert_eq!(generalized_fitting_star(&q8).unwrap().order(), 8);
        assert_eq!(shemetkov_tilde_fitting(&s4()).unwrap().order(), 4);
        assert_eq!(shemetkov_tilde_fitting(&q8).unwrap().order(), 8);
    }

    #[test]
    fn p_cores_match_brute_force() {
        for g in [s4(), a5(), grp(4, &["(1 2 3 4)", "(1 3)"])] {
            let normals = brute_normal_subgroups(&g);
            for (p, _) in factorize(g.order()) {
                let brute = normals
                    .iter()
                    .filter(|n| p_part(n.order(), p) == n.order())
                    .max_by_key(|n| n.order())
                    .unwrap();
                assert!(p_core(&g, p).unwrap().same_elements(brute));
            }
        }
    }
}
