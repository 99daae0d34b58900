//! Maximal subgroups: the full subgroup lattice for small groups, and the
//! split-extension classification for affine groups `W ⋊ K`.
//!
//! For `G = W ⋊ K` a maximal subgroup either contains `W`, and is then the
//! preimage of a maximal subgroup of `K`, or meets `W` in a maximal
//! submodule `U`, and is then the preimage of a complement to `W/U` in
//! `G/U`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{PermGroup, SubgroupHandle};
use crate::hom::quotient;
use crate::perm::Permutation;
use crate::structure::intersection;

/// Multiplication table of a small group, indexed like `element_at`.
pub struct GroupTable {
    group: PermGroup,
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    identity: u32,
}

type Bits = Vec<u64>;

fn bit(bits: &Bits, i: u32) -> bool {
    bits[(i / 64) as usize] >> (i % 64) & 1 == 1
}

fn set_bit(bits: &mut Bits, i: u32) {
    bits[(i / 64) as usize] |= 1 << (i % 64);
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn ones(bits: &Bits) -> Vec<u64> {
    let mut out = Vec::new();
    for (w, word) in bits.iter().enumerate() {
        let mut x = *word;
        while x != 0 {
            out.push(w as u64 * 64 + x.trailing_zeros() as u64);
            x &= x - 1;
        }
    }
    out
}

#[derive(Clone)]
struct TableSubgroup {
    bits: Bits,
    gens: Vec<u32>,
    order: u64,
}

impl GroupTable {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let b = g.bounds();
        b.check("brute-force order", g.order(), b.brute)?;
        let elements: Vec<Permutation> = g.elements()?.collect();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, c) in elements.iter().enumerate() {
                mul[i * n + j] = g.index_of_member_by(|x| c.image(a.image(x))) as u32;
            }
        }
        let identity = g.index_of_member_by(|x| x) as u32;
        Ok(GroupTable {
            group: g.clone(),
            elements,
            mul,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn product(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order() + b as usize]
    }

    fn empty(&self) -> Bits {
        vec![0; self.order().div_ceil(64)]
    }

    /// Closure of `seed ∪ gens` under right multiplication by `gens`;
    /// `seed` must already be closed under its own generators.
    fn close(&self, seed: &[u64], seed_bits: &Bits, gens: &[u32]) -> (Bits, u64) {
        let mut bits = seed_bits.clone();
        let mut queue: Vec<u32> = seed.iter().map(|&x| x as u32).collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.product(x, s);
                if !bit(&bits, y) {
                    set_bit(&mut bits, y);
                    queue.push(y);
                }
            }
        }
        let order = queue.len() as u64;
        (bits, order)
    }

    fn generated(&self, gens: &[u32]) -> TableSubgroup {
        let mut seed_bits = self.empty();
        set_bit(&mut seed_bits, self.identity);
        let (bits, order) = self.close(&[self.identity as u64], &seed_bits, gens);
        TableSubgroup {
            bits,
            gens: gens.to_vec(),
            order,
        }
    }

    fn all(&self) -> Vec<TableSubgroup> {
        let mut index: BTreeMap<Bits, usize> = BTreeMap::new();
        let mut list: Vec<TableSubgroup> = Vec::new();
        let trivial = self.generated(&[]);
        index.insert(trivial.bits.clone(), 0);
        list.push(trivial);
        let mut cyclic_gens: Vec<u32> = Vec::new();
        for x in 0..self.order() as u32 {
            let c = self.generated(&[x]);
            if !index.contains_key(&c.bits) {
                index.insert(c.bits.clone(), list.len());
                list.push(c);
                cyclic_gens.push(x);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i].clone();
            let members = ones(&a.bits);
            for &x in &cyclic_gens {
                if bit(&a.bits, x) {
                    continue;
                }
                let mut gens = a.gens.clone();
                gens.push(x);
                let (bits, order) = self.close(&members, &a.bits, &gens);
                if !index.contains_key(&bits) {
                    index.insert(bits.clone(), list.len());
                    list.push(TableSubgroup { bits, gens, order });
                }
            }
            i += 1;
        }
        list.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| ones(&a.bits).cmp(&ones(&b.bits))));
        list
    }

    fn handle(&self, s: &TableSubgroup) -> SubgroupHandle {
        let gens = s.gens.iter().map(|&i| self.element(i).clone()).collect();
        let h = self.group.subgroup(gens).expect("same degree");
        SubgroupHandle::trusted(self.group.clone(), h)
    }
}

/// Every subgroup, from the cyclic subgroups closed under joins, ordered
/// by order and then element indices.
pub fn all_subgroups(g: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let t = GroupTable::new(g)?;
    Ok(t.all().iter().map(|s| t.handle(s)).collect())
}

/// Normal subgroups, from the full lattice.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    Ok(all_subgroups(g)?.into_iter().filter(|s| s.is_normal()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalMethod {
    Brute,
    SplitExtension,
}

#[derive(Clone, Debug)]
pub struct MaximalSet {
    pub parent: PermGroup,
    pub maximals: Vec<SubgroupHandle>,
    pub method: MaximalMethod,
}

impl MaximalSet {
    pub fn len(&self) -> usize {
        self.maximals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximals.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, SubgroupHandle> {
        self.maximals.iter()
    }

    /// Element fingerprints of the members, in order.
    pub fn fingerprints(&self) -> Result<Vec<Vec<u64>>> {
        self.maximals.iter().map(|m| m.fingerprint_in(&self.parent)).collect()
    }
}

/// Maximal subgroups by the split path when `g` carries split data, else by
/// the brute path.
pub fn maximal_subgroups(g: &PermGroup) -> Result<MaximalSet> {
    if g.split_info().is_some() {
        return maximal_subgroups_split(g);
    }
    let b = g.bounds();
    if g.order() <= b.brute {
        return maximal_subgroups_brute(g);
    }
    Err(Error::NoMaximalMethod(alloc::format!(
        "order {} exceeds the brute bound {} and the group has no split data",
        g.order(),
        b.brute
    )))
}

pub fn maximal_subgroups_brute(g: &PermGroup) -> Result<MaximalSet> {
    let t = GroupTable::new(g)?;
    let n = g.order();
    let all = t.all();
    let proper: Vec<&TableSubgroup> = all.iter().filter(|s| s.order < n).collect();
    let mut maximals: Vec<&TableSubgroup> = proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|o| o.order > s.order && subset(&s.bits, &o.bits))
        })
        .copied()
        .collect();
    maximals.sort_by(|a, b| b.order.cmp(&a.order).then_with(|| ones(&a.bits).cmp(&ones(&b.bits))));
    Ok(MaximalSet {
        parent: g.clone(),
        maximals: maximals.iter().map(|s| t.handle(s)).collect(),
        method: MaximalMethod::Brute,
    })
}

/// Complements to an abelian normal subgroup `a` of `x`, given one
/// complement `k0`: every complement is generated by one element `k a_k`
/// from the coset of each generator `k` of `k0`.
pub fn complements_to_abelian_normal(
    x: &PermGroup,
    a: &PermGroup,
    k0: &PermGroup,
) -> Result<Vec<SubgroupHandle>> {
    if !a.is_subgroup_of(x) || !k0.is_subgroup_of(x) {
        return Err(Error::NotAMember);
    }
    if !a.is_abelian() {
        return Err(Error::Invalid(alloc::string::String::from("normal subgroup is not abelian")));
    }
    if !a.is_normal_in(x) {
        return Err(Error::NotNormal);
    }
    if a.order() * k0.order() != x.order() || a.join(k0).order() != x.order() {
        return Err(Error::Invalid(alloc::string::String::from("not a complement")));
    }
    let b = x.bounds();
    let kgens = k0.generators();
    let tuples = a.order().checked_pow(kgens.len() as u32).unwrap_or(u64::MAX);
    b.check("complement tuples", tuples, b.complement_tuples)?;
    let a_elems: Vec<Permutation> = a.elements()?.collect();

    // Candidates per generator: k a with the order of k.
    let cands: Vec<Vec<Permutation>> = kgens
        .iter()
        .map(|k| {
            let o = k.order();
            a_elems
                .iter()
                .map(|e| k.compose(e))
                .filter(|ka| ka.order() == o)
                .collect()
        })
        .collect();
    // Words in the generators whose orders must be preserved.
    let mut words: Vec<Vec<usize>> = Vec::new();
    for i in 0..kgens.len() {
        for j in 0..kgens.len() {
            if i != j {
                words.push(vec![i, j]);
            }
        }
    }
    for i in 0..kgens.len() {
        for j in 0..kgens.len() {
            if i != j {
                words.push(vec![i, i, j]);
                words.push(vec![i, j, j]);
            }
        }
    }
    let eval = |w: &[usize], choice: &[&Permutation]| {
        let mut p = choice[w[0]].clone();
        for &i in &w[1..] {
            p.compose_assign(choice[i]);
        }
        p
    };
    let word_orders: Vec<u64> = words
        .iter()
        .map(|w| eval(w, &kgens.iter().collect::<Vec<_>>()).order())
        .collect();

    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut out = Vec::new();
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; kgens.len()];
    loop {
        let choice: Vec<&Permutation> = idx.iter().zip(&cands).map(|(&i, c)| &c[i]).collect();
        let plausible = words
            .iter()
            .zip(&word_orders)
            .all(|(w, &o)| eval(w, &choice).pow(o).is_identity());
        if plausible {
            let t = x.subgroup(choice.iter().map(|p| (*p).clone()).collect())?;
            if t.order() == k0.order() {
                let fp = t.fingerprint_in(x)?;
                if seen.insert(fp) {
                    out.push(SubgroupHandle::trusted(x.clone(), t));
                }
            }
        }
        // next tuple
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < cands[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn maximal_subgroups_split(g: &PermGroup) -> Result<MaximalSet> {
    let info = g
        .split_info()
        .ok_or_else(|| Error::NoMaximalMethod(alloc::string::String::from("no split data")))?
        .clone();
    let w = &info.vectors;
    let k0 = &info.complement;
    let mut found: Vec<(u64, Vec<u64>, SubgroupHandle)> = Vec::new();
    let mut push = |s: PermGroup| -> Result<()> {
        let fp = s.fingerprint_in(g)?;
        if !found.iter().any(|(_, f, _)| *f == fp) {
            found.push((g.order() / s.order(), fp, SubgroupHandle::trusted(g.clone(), s)));
        }
        Ok(())
    };
    // Maximals containing W.
    let k_as_group = k0.with_bounds(g.bounds());
    for l in maximal_subgroups(&k_as_group)?.iter() {
        let m = g.subgroup(w.generators().iter().chain(l.generators()).cloned().collect())?;
        push(m)?;
    }
    // Maximals meeting W in a maximal submodule.
    if info.module.dim() > 0 {
        for u in info.module.maximal_submodules()? {
            let ug = g.subgroup(u.basis().iter().map(|v| info.translation(v)).collect())?;
            let (xq, f) = quotient(g, &ug)?;
            let aq = f.image_of(w)?;
            let kq = f.image_of(k0)?;
            for t in complements_to_abelian_normal(&xq, &aq, &kq)? {
                let pre = f.preimage(&t)?.into_group();
                push(pre)?;
            }
        }
    } else {
        push(g.subgroup(Vec::new())?)?;
    }
    found.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(MaximalSet {
        parent: g.clone(),
        maximals: found.into_iter().map(|(_, _, h)| h).collect(),
        method: MaximalMethod::SplitExtension,
    })
}

/// `Φ(G)`: intersection of all maximal subgroups.
pub fn frattini(g: &PermGroup) -> Result<SubgroupHandle> {
    let set = maximal_subgroups(g)?;
    frattini_of(&set)
}

pub fn frattini_of(set: &MaximalSet) -> Result<SubgroupHandle> {
    let g = &set.parent;
    let Some(smallest) = set.maximals.iter().min_by_key(|m| m.order()) else {
        return Ok(SubgroupHandle::trusted(g.clone(), g.clone()));
    };
    let mut phi = smallest.group().clone();
    for m in &set.maximals {
        if phi.is_trivial() {
            break;
        }
        phi = intersection(&phi, m)?;
    }
    Ok(SubgroupHandle::trusted(g.clone(), phi))
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

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&grp(3, &["(1 2)", "(1 2 3)"])).unwrap().len(), 6);
        assert_eq!(all_subgroups(&grp(4, &["(1 2 3 4)"])).unwrap().len(), 3);
        assert_eq!(all_subgroups(&grp(4, &["(1 2 3)", "(1 2)(3 4)"])).unwrap().len(), 10);
        assert_eq!(all_subgroups(&grp(4, &["(1 2)", "(1 2 3 4)"])).unwrap().len(), 30);
        assert_eq!(all_subgroups(&grp(5, &["(1 2 3 4 5)", "(1 2 3)"])).unwrap().len(), 59);
    }

    #[test]
    fn a5_maximals() {
        let m = maximal_subgroups(&grp(5, &["(1 2 3 4 5)", "(1 2 3)"])).unwrap();
        let mut idx: Vec<u64> = m.iter().map(|s| s.index()).collect();
        idx.sort();
        let count = |k| idx.iter().filter(|&&i| i == k).count();
        assert_eq!(m.len(), 21);
        assert_eq!((count(5), count(6), count(10)), (5, 6, 10));
    }

    #[test]
    fn cyclic_prime_maximal() {
        let m = maximal_subgroups(&grp(7, &["(1 2 3 4 5 6 7)"])).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.maximals[0].is_trivial());
    }

    #[test]
    fn complement_examples() {
        let v4 = grp(4, &["(1 2)", "(3 4)"]);
        let a = grp(4, &["(1 2)"]);
        let k = grp(4, &["(3 4)"]);
        let c = complements_to_abelian_normal(&v4, &a, &k).unwrap();
        let oracle = all_subgroups(&v4)
            .unwrap()
            .into_iter()
            .filter(|s| s.order() == 2 && !s.same_elements(&a))
            .count();
        assert_eq!(c.len(), oracle);
        assert_eq!(c.len(), 2);

        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        let c3 = grp(3, &["(1 2 3)"]);
        let c2 = grp(3, &["(1 2)"]);
        let c = complements_to_abelian_normal(&s3, &c3, &c2).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|t| t.order() == 2));
    }

    #[test]
    fn frattini_examples() {
        assert!(frattini(&grp(4, &["(1 2)", "(1 2 3 4)"])).unwrap().is_trivial());
        assert_eq!(frattini(&grp(4, &["(1 2 3 4)"])).unwrap().order(), 2);
        let q8 = grp(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert_eq!(frattini(&q8).unwrap().order(), 2);
    }

    #[test]
    fn maximals_are_maximal_exhaustively() {
        for g in [
            grp(4, &["(1 2)", "(1 2 3 4)"]),
            grp(5, &["(1 2 3 4 5)", "(1 2 3)"]),
            grp(4, &["(1 2 3 4)", "(1 3)"]),
        ] {
            let set = maximal_subgroups(&g).unwrap();
            let elems: Vec<Permutation> = g.elements().unwrap().collect();
            for m in set.iter() {
                assert!(m.order() < g.order());
                assert_eq!(g.order() % m.order(), 0);
                for x in &elems {
                    if !m.has(x) {
                        assert_eq!(m.adjoin(x).order(), g.order());
                    }
                }
            }
        }
    }
}
