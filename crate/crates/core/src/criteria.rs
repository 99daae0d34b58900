//! Supersolubility criteria and the Conjecture 1 / Theorem 2 predicates,
//! each returning per-maximal-subgroup evidence.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{PermGroup, SubgroupHandle};
use crate::hom::quotient;
use crate::maximals::{frattini_of, maximal_subgroups, MaximalSet};
use crate::structure::{
    fitting, intersection, is_nilpotent, is_soluble, is_supersoluble, minimal_normal_subgroups,
    tilde_fitting_given_frattini,
};

/// Membership test standing in for a formation. Saturation cannot be
/// checked from a predicate; `contains_supersoluble` records whether the
/// class is assumed to contain every supersoluble group.
#[derive(Clone, Copy)]
pub struct FormationPredicate {
    pub name: &'static str,
    pub member: fn(&PermGroup) -> Result<bool>,
    pub contains_supersoluble: bool,
}

impl core::fmt::Debug for FormationPredicate {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name)
    }
}

fn member_supersoluble(g: &PermGroup) -> Result<bool> {
    is_supersoluble(g)
}

fn member_soluble(g: &PermGroup) -> Result<bool> {
    Ok(is_soluble(g))
}

fn member_nilpotent(g: &PermGroup) -> Result<bool> {
    Ok(is_nilpotent(g))
}

impl FormationPredicate {
    pub const SUPERSOLUBLE: FormationPredicate = FormationPredicate {
        name: "supersoluble",
        member: member_supersoluble,
        contains_supersoluble: true,
    };
    pub const SOLUBLE: FormationPredicate = FormationPredicate {
        name: "soluble",
        member: member_soluble,
        contains_supersoluble: true,
    };
    /// Does not contain every supersoluble group; rejected by theorem checks.
    pub const NILPOTENT: FormationPredicate = FormationPredicate {
        name: "nilpotent",
        member: member_nilpotent,
        contains_supersoluble: false,
    };

    pub fn by_name(name: &str) -> Option<FormationPredicate> {
        match name {
            "supersoluble" => Some(Self::SUPERSOLUBLE),
            "soluble" => Some(Self::SOLUBLE),
            "nilpotent" => Some(Self::NILPOTENT),
            _ => None,
        }
    }

    pub fn contains(&self, g: &PermGroup) -> Result<bool> {
        (self.member)(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexClass {
    One,
    Prime,
    Composite,
}

impl IndexClass {
    pub fn of(n: u64) -> Self {
        if n == 1 {
            IndexClass::One
        } else if is_prime(n) {
            IndexClass::Prime
        } else {
            IndexClass::Composite
        }
    }
}

/// Evidence for one maximal subgroup `M`: its position in the maximal
/// set, `|G : M|`, the criterion's measured index, and whether `M`
/// satisfies the criterion's rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub maximal: usize,
    pub maximal_index: u64,
    pub value: u64,
    pub class: IndexClass,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub name: String,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub facts: Vec<Fact>,
}

impl CriterionResult {
    fn new(name: &str) -> Self {
        CriterionResult {
            name: name.to_string(),
            holds: true,
            witnesses: Vec::new(),
            facts: Vec::new(),
        }
    }

    fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push(Fact {
            key: key.to_string(),
            value: value.to_string(),
        });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|f| f.key == key).map(|f| f.value.as_str())
    }

    /// First witness violating the rule.
    pub fn failing_witness(&self) -> Option<&Witness> {
        self.witnesses.iter().find(|w| !w.ok)
    }

    fn finish(mut self) -> Self {
        self.holds = self.holds && self.witnesses.iter().all(|w| w.ok);
        self
    }
}

/// `|X : X ∩ M|` for each maximal `M`, with the "1 or a prime" rule.
fn index_witnesses(x: &PermGroup, set: &MaximalSet) -> Result<Vec<Witness>> {
    set.iter()
        .enumerate()
        .map(|(i, m)| {
            let value = x.order() / intersection(x, m)?.order();
            let class = IndexClass::of(value);
            Ok(Witness {
                maximal: i,
                maximal_index: m.index(),
                value,
                class,
                ok: class != IndexClass::Composite,
            })
        })
        .collect()
}

/// Every maximal subgroup has prime index.
pub fn huppert(g: &PermGroup) -> Result<CriterionResult> {
    huppert_with(&maximal_subgroups(g)?)
}

pub fn huppert_with(set: &MaximalSet) -> Result<CriterionResult> {
    let mut r = CriterionResult::new("huppert");
    for (i, m) in set.iter().enumerate() {
        let idx = m.index();
        r.witnesses.push(Witness {
            maximal: i,
            maximal_index: idx,
            value: idx,
            class: IndexClass::of(idx),
            ok: is_prime(idx),
        });
    }
    r.fact("maximal_count", set.len());
    Ok(r.finish())
}

/// For soluble `G`: every maximal subgroup not containing `F(G)` has prime
/// index. The equivalent form "`F(G) ≤ M` or `M ∩ F(G)` maximal in `F(G)`"
/// is computed too and must agree.
pub fn kramer(g: &PermGroup) -> Result<CriterionResult> {
    if !is_soluble(g) {
        return Err(Error::GroupNotSoluble);
    }
    kramer_with(&maximal_subgroups(g)?)
}

pub fn kramer_with(set: &MaximalSet) -> Result<CriterionResult> {
    let g = &set.parent;
    let f = fitting(g)?;
    let fmax = maximal_subgroups(&f)?;
    let mut r = CriterionResult::new("kramer");
    let mut forms_agree = true;
    for (i, m) in set.iter().enumerate() {
        let idx = m.index();
        let meet = intersection(&f, m)?;
        let contains = meet.order() == f.order();
        let ok = contains || is_prime(idx);
        let maximal_in_f = fmax.iter().any(|x| x.same_elements(&meet));
        forms_agree &= ok == (contains || maximal_in_f);
        r.witnesses.push(Witness {
            maximal: i,
            maximal_index: idx,
            value: f.order() / meet.order(),
            class: IndexClass::of(idx),
            ok,
        });
    }
    r.fact("fitting_order", f.order());
    r.fact("corollary_form_agrees", forms_agree);
    Ok(r.finish())
}

/// `|F̃(G) : F̃(G) ∩ M|` is 1 or a prime for every maximal `M`.
pub fn li_li(g: &PermGroup) -> Result<CriterionResult> {
    li_li_with(&maximal_subgroups(g)?)
}

pub fn li_li_with(set: &MaximalSet) -> Result<CriterionResult> {
    let g = &set.parent;
    let phi = frattini_of(set)?;
    let t = tilde_fitting_given_frattini(g, &phi)?;
    let mut r = CriterionResult::new("lili");
    r.witnesses = index_witnesses(&t, set)?;
    r.fact("tilde_fitting_order", t.order());
    Ok(r.finish())
}

fn check_normal(g: &PermGroup, h: &PermGroup) -> Result<()> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotAMember);
    }
    if !h.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    Ok(())
}

fn quotient_in(g: &PermGroup, h: &PermGroup, f: &FormationPredicate) -> Result<bool> {
    let (q, _) = quotient(g, h)?;
    f.contains(&q)
}

/// `G/H ∈ 𝔉` and `|F̃(H) : F̃(H) ∩ M|` is 1 or a prime for every maximal
/// `M` of `G`.
pub fn conjecture1_hypothesis(
    g: &PermGroup,
    h: &PermGroup,
    f: &FormationPredicate,
) -> Result<CriterionResult> {
    check_normal(g, h)?;
    let gmax = maximal_subgroups(g)?;
    let hmax = maximal_subgroups(h)?;
    conjecture1_with(&gmax, &hmax, f)
}

pub fn conjecture1_with(
    gmax: &MaximalSet,
    hmax: &MaximalSet,
    f: &FormationPredicate,
) -> Result<CriterionResult> {
    let g = &gmax.parent;
    let h = &hmax.parent;
    check_normal(g, h)?;
    let mut r = CriterionResult::new("conjecture1");
    let q = quotient_in(g, h, f)?;
    let phi_h = frattini_of(hmax)?;
    let t = tilde_fitting_given_frattini(h, &phi_h)?;
    r.witnesses = index_witnesses(&t, gmax)?;
    r.holds = q;
    r.fact("formation", f.name);
    r.fact("quotient_in_formation", q);
    r.fact("tilde_fitting_h_order", t.order());
    Ok(r.finish())
}

/// Theorem 2: the Conjecture 1 hypothesis together with
/// `Φ(G) ∩ H ≤ Φ(H)` forces `G ∈ 𝔉`. `holds` reports the full hypothesis;
/// the facts `conclusion` and `theorem_violation` report the outcome.
pub fn theorem2_check(g: &PermGroup, h: &PermGroup, f: &FormationPredicate) -> Result<CriterionResult> {
    check_normal(g, h)?;
    let gmax = maximal_subgroups(g)?;
    let hmax = maximal_subgroups(h)?;
    theorem2_with(&gmax, &hmax, f)
}

pub fn theorem2_with(gmax: &MaximalSet, hmax: &MaximalSet, f: &FormationPredicate) -> Result<CriterionResult> {
    if !f.contains_supersoluble {
        return Err(Error::Invalid(alloc::format!(
            "formation {} does not contain the supersoluble groups",
            f.name
        )));
    }
    let g = &gmax.parent;
    let h = &hmax.parent;
    let mut r = conjecture1_with(gmax, hmax, f)?;
    r.name = "theorem2".to_string();
    let conj = r.holds;
    let phi_g = frattini_of(gmax)?;
    let phi_h = frattini_of(hmax)?;
    let meet = intersection(&phi_g, h)?;
    let frattini_ok = meet.is_subgroup_of(&phi_h);
    r.holds = conj && frattini_ok;
    r.fact("conjecture1_hypothesis", conj);
    r.fact("frattini_condition", frattini_ok);
    if r.holds {
        let conclusion = f.contains(g)?;
        r.fact("conclusion", conclusion);
        r.fact("theorem_violation", !conclusion);
    } else {
        r.fact("theorem_violation", false);
    }
    Ok(r)
}

/// For soluble normal `H` with `G/H ∈ 𝔉`: every maximal `M` of `G` has
/// `F(H) ≤ M` or `F(H) ∩ M` maximal in `F(H)`.
pub fn wang(g: &PermGroup, h: &PermGroup, f: &FormationPredicate) -> Result<CriterionResult> {
    check_normal(g, h)?;
    if !is_soluble(h) {
        return Err(Error::NotSoluble);
    }
    if !quotient_in(g, h, f)? {
        return Err(Error::Invalid(alloc::format!("G/H is not in the formation {}", f.name)));
    }
    let gmax = maximal_subgroups(g)?;
    let fh = fitting(h)?;
    let fmax = maximal_subgroups(&fh)?;
    let mut r = CriterionResult::new("wang");
    for (i, m) in gmax.iter().enumerate() {
        let meet = intersection(&fh, m)?;
        let value = fh.order() / meet.order();
        let ok = value == 1 || fmax.iter().any(|x| x.same_elements(&meet));
        r.witnesses.push(Witness {
            maximal: i,
            maximal_index: m.index(),
            value,
            class: IndexClass::of(value),
            ok,
        });
    }
    r.fact("formation", f.name);
    r.fact("fitting_h_order", fh.order());
    Ok(r.finish())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub step: String,
    pub holds: bool,
    pub evidence: String,
}

/// Proof-step predicates of Theorem 2 on the reduced pair
/// `(G/Φ(H), H/Φ(H))`: (a) `Φ` of the reduced `H` is trivial; (b) its
/// `F̃` is abelian; (c) that `F̃` is the product of prime-order minimal
/// normal subgroups of the reduced `G`; (d) the reduced `G` modulo `F̃`
/// lies in `𝔉`.
pub fn theorem2_proofstep_probes(
    g: &PermGroup,
    h: &PermGroup,
    f: &FormationPredicate,
) -> Result<Vec<Probe>> {
    let check = theorem2_check(g, h, f)?;
    if !check.holds {
        return Err(Error::Invalid(String::from("Theorem 2 hypothesis does not hold")));
    }
    let hmax = maximal_subgroups(h)?;
    let phi_h = frattini_of(&hmax)?;
    let (gr, red) = quotient(g, &phi_h)?;
    let hr = red.image_of(h)?.into_group();
    let hr_max = maximal_subgroups(&hr)?;
    let phi_hr = frattini_of(&hr_max)?;
    let t = tilde_fitting_given_frattini(&hr, &phi_hr)?.into_group();

    let mut probes = Vec::new();
    probes.push(Probe {
        step: String::from("a"),
        holds: phi_hr.is_trivial(),
        evidence: alloc::format!("|Phi(H)| = {}, reduced |Phi| = {}", phi_h.order(), phi_hr.order()),
    });
    probes.push(Probe {
        step: String::from("b"),
        holds: t.is_abelian(),
        evidence: alloc::format!("|F~(H)| = {}", t.order()),
    });
    let inside: Vec<SubgroupHandle> = minimal_normal_subgroups(&gr)?
        .into_iter()
        .filter(|n| n.is_subgroup_of(&t))
        .collect();
    let mut join = gr.subgroup(Vec::new())?;
    let mut orders = Vec::new();
    for n in &inside {
        join = join.join(n);
        orders.push(n.order());
    }
    probes.push(Probe {
        step: String::from("c"),
        holds: orders.iter().all(|&o| is_prime(o)) && join.order() == t.order(),
        evidence: alloc::format!("minimal normal orders {:?}", orders),
    });
    let t_in_g = gr.subgroup(t.generators().to_vec())?;
    let d = quotient_in(&gr, &t_in_g, f)?;
    probes.push(Probe {
        step: String::from("d"),
        holds: d,
        evidence: alloc::format!("|G/F~(H)| = {}", gr.order() / t.order()),
    });
    Ok(probes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            deg,
            gens.iter().map(|s| Permutation::parse_cycles(deg, s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn s3() -> PermGroup {
        grp(3, &["(1 2)", "(1 2 3)"])
    }
    fn s4() -> PermGroup {
        grp(4, &["(1 2)", "(1 2 3 4)"])
    }
    fn a4() -> PermGroup {
        grp(4, &["(1 2 3)", "(1 2)(3 4)"])
    }
    fn a5() -> PermGroup {
        grp(5, &["(1 2 3 4 5)", "(1 2 3)"])
    }

    #[test]
    fn huppert_examples() {
        assert!(huppert(&s3()).unwrap().holds);
        let r = huppert(&a4()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_witness().unwrap().maximal_index, 4);
        assert!(!huppert(&a5()).unwrap().holds);
    }

    #[test]
    fn kramer_examples() {
        let r = kramer(&s4()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_witness().unwrap().maximal_index, 4);
        assert_eq!(r.get("corollary_form_agrees"), Some("true"));
        assert!(kramer(&s3()).unwrap().holds);
        let q8 = grp(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert!(kramer(&q8).unwrap().holds);
        assert_eq!(kramer(&a5()), Err(Error::GroupNotSoluble));
    }

    #[test]
    fn li_li_examples() {
        let r = li_li(&s4()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_witness().unwrap().value, 4);
        assert!(li_li(&s3()).unwrap().holds);
        let r = li_li(&a5()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_witness().unwrap().value, 6);
    }

    #[test]
    fn conjecture1_examples() {
        let f = FormationPredicate::SUPERSOLUBLE;
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let r = conjecture1_hypothesis(&s4(), &v4, &f).unwrap();
        assert_eq!(r.get("quotient_in_formation"), Some("true"));
        assert!(!r.holds);
        for g in [s3(), s4(), a4()] {
            let c = conjecture1_hypothesis(&g, &g, &f).unwrap();
            assert_eq!(c.holds, li_li(&g).unwrap().holds);
        }
        let c3 = grp(3, &["(1 2 3)"]);
        assert!(conjecture1_hypothesis(&s3(), &c3, &f).unwrap().holds);
        assert_eq!(conjecture1_hypothesis(&s4(), &s3_in_s4(), &f), Err(Error::NotNormal));
    }

    fn s3_in_s4() -> PermGroup {
        grp(4, &["(1 2)", "(1 2 3)"])
    }

    #[test]
    fn theorem2_examples() {
        let f = FormationPredicate::SUPERSOLUBLE;
        let r = theorem2_check(&s3(), &s3(), &f).unwrap();
        assert!(r.holds);
        assert_eq!(r.get("conclusion"), Some("true"));
        assert!(theorem2_check(&s3(), &s3(), &FormationPredicate::NILPOTENT).is_err());
    }

    #[test]
    fn wang_examples() {
        let f = FormationPredicate::SUPERSOLUBLE;
        let r = wang(&s4(), &a4(), &f).unwrap();
        assert!(!r.holds);
        let c3 = grp(3, &["(1 2 3)"]);
        assert!(wang(&s3(), &c3, &f).unwrap().holds);
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(wang(&d8, &d8, &f).unwrap().holds);
        assert_eq!(wang(&a5(), &a5(), &FormationPredicate::SOLUBLE), Err(Error::NotSoluble));
    }

    #[test]
    fn probes_examples() {
        let f = FormationPredicate::SUPERSOLUBLE;
        let c3 = grp(3, &["(1 2 3)"]);
        let p = theorem2_proofstep_probes(&s3(), &c3, &f).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.iter().all(|x| x.holds));
        assert!(p[2].evidence.contains('3'));
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        let p = theorem2_proofstep_probes(&d8, &d8, &f).unwrap();
        assert!(p.iter().all(|x| x.holds));
    }
}
