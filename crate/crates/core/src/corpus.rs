//! Invariant sweeps over the atlas.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::atlas::atlas;
use crate::criteria::{huppert_with, kramer_with, li_li_with, theorem2_with, FormationPredicate};
use crate::error::{Error, Result};
use crate::group::Bounds;
use crate::maximals::{frattini_of, maximal_subgroups, normal_subgroups};
use crate::structure::{
    centralizer, fitting, generalized_fitting_star, is_soluble, is_supersoluble,
    tilde_fitting_given_frattini,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusCheck {
    HuppertEquiv,
    LiliEquiv,
    KramerEquiv,
    SchmidShemetkov,
    Theorem2Soundness,
    FstarChain,
}

impl CorpusCheck {
    pub const ALL: [CorpusCheck; 6] = [
        CorpusCheck::HuppertEquiv,
        CorpusCheck::LiliEquiv,
        CorpusCheck::KramerEquiv,
        CorpusCheck::SchmidShemetkov,
        CorpusCheck::Theorem2Soundness,
        CorpusCheck::FstarChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusCheck::HuppertEquiv => "huppert-equiv",
            CorpusCheck::LiliEquiv => "lili-equiv",
            CorpusCheck::KramerEquiv => "kramer-equiv",
            CorpusCheck::SchmidShemetkov => "schmid-shemetkov",
            CorpusCheck::Theorem2Soundness => "theorem2-soundness",
            CorpusCheck::FstarChain => "fstar-chain",
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub group: String,
    pub order: u64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub check: String,
    pub rows: Vec<CorpusRow>,
    pub pass: bool,
}

/// Largest group order swept by the Theorem 2 soundness check.
pub const THEOREM2_ORDER_LIMIT: u64 = 500;

pub fn run_corpus(check: CorpusCheck) -> Result<CorpusReport> {
    run_corpus_with(check, Bounds::default())
}

/// As [`run_corpus`], with every atlas group carrying `bounds`.
pub fn run_corpus_with(check: CorpusCheck, bounds: Bounds) -> Result<CorpusReport> {
    let mut rows = Vec::new();
    for entry in atlas() {
        let g = &entry.group.with_bounds(bounds);
        let row = |pass: bool, detail: String| CorpusRow {
            group: String::from(entry.name),
            order: g.order(),
            pass,
            detail,
        };
        let ss = is_supersoluble(g)?;
        match check {
            CorpusCheck::HuppertEquiv => {
                let h = huppert_with(&maximal_subgroups(g)?)?.holds;
                rows.push(row(h == ss, format!("huppert {h}, supersoluble {ss}")));
            }
            CorpusCheck::LiliEquiv => {
                let l = li_li_with(&maximal_subgroups(g)?)?.holds;
                rows.push(row(l == ss, format!("lili {l}, supersoluble {ss}")));
            }
            CorpusCheck::KramerEquiv => {
                if !is_soluble(g) {
                    rows.push(row(true, String::from("not soluble, excluded")));
                    continue;
                }
                let k = kramer_with(&maximal_subgroups(g)?)?;
                let agree = k.get("corollary_form_agrees") == Some("true");
                rows.push(row(
                    k.holds == ss && agree,
                    format!("kramer {}, supersoluble {ss}, forms agree {agree}", k.holds),
                ));
            }
            CorpusCheck::SchmidShemetkov => {
                let set = maximal_subgroups(g)?;
                let t = tilde_fitting_given_frattini(g, frattini_of(&set)?.group())?;
                let c = centralizer(g, &t)?;
                let ok = c.is_subgroup_of(&t);
                rows.push(row(ok, format!("|F~| = {}, |C(F~)| = {}", t.order(), c.order())));
            }
            CorpusCheck::FstarChain => {
                let set = maximal_subgroups(g)?;
                let f = fitting(g)?;
                let fs = generalized_fitting_star(g)?;
                let t = tilde_fitting_given_frattini(g, frattini_of(&set)?.group())?;
                let ok = f.is_subgroup_of(&fs) && fs.is_subgroup_of(&t);
                rows.push(row(
                    ok,
                    format!("|F| = {}, |F*| = {}, |F~| = {}", f.order(), fs.order(), t.order()),
                ));
            }
            CorpusCheck::Theorem2Soundness => {
                if g.order() > THEOREM2_ORDER_LIMIT {
                    rows.push(row(true, String::from("order above sweep limit, excluded")));
                    continue;
                }
                let (pairs, applicable, violations) = theorem2_sweep(g)?;
                rows.push(row(
                    violations == 0,
                    format!("{pairs} normal subgroups, hypothesis holds on {applicable}, violations {violations}"),
                ));
            }
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(CorpusReport {
        check: String::from(check.name()),
        rows,
        pass,
    })
}

/// `(normal subgroups, pairs satisfying the hypothesis, violations)` for
/// `𝔉` the supersoluble groups.
pub fn theorem2_sweep(g: &crate::group::PermGroup) -> Result<(usize, usize, usize)> {
    let f = FormationPredicate::SUPERSOLUBLE;
    let gmax = maximal_subgroups(g)?;
    let normals = normal_subgroups(g)?;
    let mut applicable = 0;
    let mut violations = 0;
    for h in &normals {
        let hmax = maximal_subgroups(h)?;
        let r = theorem2_with(&gmax, &hmax, &f)?;
        if r.holds {
            applicable += 1;
        }
        if r.get("theorem_violation") == Some("true") {
            violations += 1;
        }
    }
    Ok((normals.len(), applicable, violations))
}

impl core::str::FromStr for CorpusCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::by_name(s).ok_or_else(|| Error::Parse(format!("unknown corpus check {s}")))
    }
}
