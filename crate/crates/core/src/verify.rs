//! End-to-end reconstruction of the counterexample `G = W ⋊ A₅` and
//! `H = Rad(W) ⋊ A₅`, one recorded claim per step.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::affine::{affine_semidirect_product, restrict_to_submodule, AffineGroup};
use crate::criteria::{conjecture1_with, Fact, FormationPredicate};
use crate::error::Error;
use crate::group::{Bounds, PermGroup};
use crate::hom::quotient;
use crate::maximals::{frattini_of, maximal_subgroups, MaximalSet};
use crate::modrep::{factor_module, FpModule, SubmoduleBasis};
use crate::perm::Permutation;
use crate::structure::{
    element_order_statistics, intersection, is_soluble, is_supersoluble, minimal_normal_subgroups,
    tilde_fitting_given_frattini,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub statement: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub claims: Vec<ClaimRecord>,
    pub overall: bool,
    pub conjecture1_refuted: bool,
    pub informational: Vec<Fact>,
}

/// A bound or consistency error raised while evaluating a claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyError {
    pub claim: String,
    pub error: Error,
}

impl core::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "claim {}: {}", self.claim, self.error)
    }
}

/// Monotonic microsecond clock; the core crate has none of its own.
pub trait Clock {
    fn now_micros(&self) -> Option<u64>;
}

pub struct NoClock;

impl Clock for NoClock {
    fn now_micros(&self) -> Option<u64> {
        None
    }
}

struct Recorder<'a> {
    clock: &'a dyn Clock,
    claims: Vec<ClaimRecord>,
    started: Option<u64>,
}

impl Recorder<'_> {
    fn start(&mut self) {
        self.started = self.clock.now_micros();
    }

    fn record(&mut self, statement: &str, expected: impl ToString, computed: impl ToString) {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let micros = match (self.started, self.clock.now_micros()) {
            (Some(a), Some(b)) => Some(b.saturating_sub(a)),
            _ => None,
        };
        self.claims.push(ClaimRecord {
            id: format!("claim-{:02}", self.claims.len() + 1),
            statement: statement.to_string(),
            pass: expected == computed,
            expected,
            computed,
            micros,
        });
        self.start();
    }

    fn next_id(&self) -> String {
        format!("claim-{:02}", self.claims.len() + 1)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// The RNG used for every randomized step, seeded deterministically.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The alternating group of degree 5 on points 1..5.
pub fn alternating5() -> PermGroup {
    PermGroup::new(
        5,
        vec![
            Permutation::parse_cycles(5, "(1 2 3 4 5)").expect("valid"),
            Permutation::parse_cycles(5, "(1 2 3)").expect("valid"),
        ],
    )
    .expect("A5")
}

/// The modules and groups of the construction.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub k: PermGroup,
    pub v: FpModule,
    pub soc_v: SubmoduleBasis,
    pub w: FpModule,
    pub rad_w: SubmoduleBasis,
    pub g: AffineGroup,
    pub h: AffineGroup,
}

impl Counterexample {
    pub fn build() -> crate::error::Result<Self> {
        let k = alternating5();
        let v = FpModule::permutation_module(&k, 5)?;
        let soc_v = v.socle_basis()?;
        let w = factor_module(&v, &soc_v)?.module;
        let rad_w = w.radical_basis()?;
        let g = affine_semidirect_product(&w)?;
        let h = restrict_to_submodule(&g, &rad_w)?;
        Ok(Counterexample {
            k,
            v,
            soc_v,
            w,
            rad_w,
            g,
            h,
        })
    }

    /// `Rad(W)` as the translation subgroup of `H` inside `G`.
    pub fn rad_subgroup(&self) -> &PermGroup {
        self.h.vectors.group()
    }
}

/// All claims with default bounds and no timings.
pub fn run_verification(seed: u64) -> Result<VerificationReport, VerifyError> {
    run_verification_with(seed, Bounds::default(), &NoClock)
}

/// All claims; every group built along the way inherits `bounds`.
pub fn run_verification_with(
    seed: u64,
    bounds: Bounds,
    clock: &dyn Clock,
) -> Result<VerificationReport, VerifyError> {
    let mut rng = seeded_rng(seed);
    let mut rec = Recorder {
        clock,
        claims: Vec::new(),
        started: None,
    };
    let mut info: Vec<Fact> = Vec::new();
    let fact = |key: &str, value: String| Fact {
        key: key.to_string(),
        value,
    };
    macro_rules! tri {
        ($e:expr) => {
            $e.map_err(|error| VerifyError {
                claim: rec.next_id(),
                error,
            })?
        };
    }
    rec.start();

    // 1
    let k = alternating5().with_bounds(bounds);
    let is_a5 = k.degree() == 5 && k.generators().iter().all(|g| g.is_even());
    rec.record(
        "Let K≃A_5 be the alternating group of degree 5",
        "60 (even permutations of 5 points)",
        format!(
            "{} ({})",
            k.order(),
            if is_a5 { "even permutations of 5 points" } else { "other" }
        ),
    );

    // 2
    let v = tri!(FpModule::permutation_module(&k, 5));
    rec.record("V is the permutation F₅K-module", 5, v.dim());

    // 3
    let soc_v = tri!(v.socle_basis());
    rec.record("the dimension of Soc(V) is 1", 1, soc_v.dim());

    // 4
    let w = tri!(factor_module(&v, &soc_v)).module;
    rec.record("W ≃ V/Soc(V) and dim(W)=4", 4, w.dim());

    // 5
    let indec = tri!(w.is_indecomposable_with(&mut rng));
    rec.record("W is an indecomposable module", "true", yes_no(indec));

    // 6
    let rad_w = tri!(w.radical_basis());
    let r_mod = rad_w.as_module();
    let simple = tri!(r_mod.is_irreducible_with(&mut rng)).is_irreducible();
    let faithful = tri!(r_mod.is_faithful());
    rec.record(
        "Rad(W) is a faithful simple module and dim(Rad(W))=3",
        "dim 3, simple true, faithful true",
        format!("dim {}, simple {}, faithful {}", rad_w.dim(), yes_no(simple), yes_no(faithful)),
    );

    // 7
    let head = tri!(factor_module(&w, &rad_w)).module;
    let head_trivial = head.action().iter().all(|a| a.is_invertible() && *a == crate::gf::GFMatrix::identity(5, head.dim()));
    let head_factors = tri!(head.composition_factors_with(&mut rng)).len();
    rec.record(
        "W/Rad(W) is a trivial module",
        "dim 1, trivial true",
        format!("dim {}, trivial {}", head.dim(), yes_no(head_trivial && head_factors == 1)),
    );

    // 8
    let g_aff = tri!(affine_semidirect_product(&w));
    let g = g_aff.group.clone();
    rec.record("Now let G=W⋊K", 37500, g.order());

    // 9
    let gmax: MaximalSet = tri!(maximal_subgroups(&g));
    let phi_g = tri!(frattini_of(&gmax));
    let h_aff = tri!(restrict_to_submodule(&g_aff, &rad_w));
    let r = h_aff.vectors.group().clone();
    let r_in_phi = r.is_subgroup_of(&phi_g);
    rec.record("Rad(W) ≤ Φ(G)", "true", yes_no(r_in_phi));
    info.push(fact("frattini_g_order", phi_g.order().to_string()));
    info.push(fact("frattini_g_equals_rad_w", yes_no(phi_g.same_elements(&r)).to_string()));

    // 10
    let h = h_aff.group.clone();
    let h_normal = h.is_subgroup_of(&g) && h.is_normal_in(&g);
    let (gh, _) = tri!(quotient(&g, &h));
    let cyclic = gh.order() == 5 && gh.generators().iter().any(|x| x.order() == 5);
    rec.record(
        "H = Rad(W)K ⊴ G and G/H ≃ Z_5",
        "|H| 7500, normal true, |G:H| 5, cyclic true",
        format!(
            "|H| {}, normal {}, |G:H| {}, cyclic {}",
            h.order(),
            yes_no(h_normal),
            g.order() / h.order(),
            yes_no(cyclic)
        ),
    );
    let standalone = tri!(affine_semidirect_product(&r_mod));
    let same_stats = tri!(element_order_statistics(&standalone.group)) == tri!(element_order_statistics(&h));
    info.push(fact("standalone_h_degree", standalone.group.degree().to_string()));
    info.push(fact("standalone_h_order", standalone.group.order().to_string()));
    info.push(fact("standalone_h_element_orders_match", yes_no(same_stats).to_string()));

    // 11
    let mins = tri!(minimal_normal_subgroups(&h));
    let unique = mins.len() == 1 && mins[0].same_elements(&r);
    let hmax: MaximalSet = tri!(maximal_subgroups(&h));
    let phi_h = tri!(frattini_of(&hmax));
    rec.record(
        "Rad(W) is the unique minimal normal subgroup of H and Φ(H)=1",
        "unique true, |Φ(H)| 1",
        format!("unique {}, |Φ(H)| {}", yes_no(unique), phi_h.order()),
    );
    info.push(fact("maximal_subgroups_of_h", hmax.len().to_string()));

    // 12
    let t = tri!(tilde_fitting_given_frattini(&h, &phi_h));
    rec.record(
        "F̃(H)=Rad(W) ≤ Φ(G)",
        "|F̃(H)| 125, equals Rad(W) true, inside Φ(G) true",
        format!(
            "|F̃(H)| {}, equals Rad(W) {}, inside Φ(G) {}",
            t.order(),
            yes_no(t.same_elements(&r)),
            yes_no(t.is_subgroup_of(&phi_g))
        ),
    );

    // 13
    let mut indices = Vec::new();
    for m in gmax.iter() {
        indices.push(t.order() / tri!(intersection(&t, m)).order());
    }
    rec.record(
        "|F̃(H):F̃(H)∩M|=1 for every maximal subgroup M of G",
        "22 maximal subgroups, all indices 1",
        format!(
            "{} maximal subgroups, all indices {}",
            gmax.len(),
            if indices.iter().all(|&i| i == 1) { "1".to_string() } else { format!("{indices:?}") }
        ),
    );

    // 14
    let conj = tri!(conjecture1_with(&gmax, &hmax, &FormationPredicate::SUPERSOLUBLE));
    rec.record(
        "G satisfies the hypothesis of Conjecture 1 with F = U",
        "true",
        yes_no(conj.holds),
    );

    // 15
    let soluble = is_soluble(&g);
    let supersoluble = tri!(is_supersoluble(&g));
    rec.record(
        "Since G is not soluble, G ∉ F",
        "soluble false, supersoluble false",
        format!("soluble {}, supersoluble {}", yes_no(soluble), yes_no(supersoluble)),
    );

    let overall = rec.claims.iter().all(|c| c.pass);
    Ok(VerificationReport {
        seed,
        conjecture1_refuted: conj.holds && !supersoluble,
        claims: rec.claims,
        overall,
        informational: info,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_verifies() {
        let r = run_verification(0).unwrap();
        for c in &r.claims {
            assert!(c.pass, "{} {}: expected {}, computed {}", c.id, c.statement, c.expected, c.computed);
        }
        assert_eq!(r.claims.len(), 15);
        assert!(r.overall);
        assert!(r.conjecture1_refuted);
        assert_eq!(r.claims[2].computed, "1");
        let get = |k: &str| r.informational.iter().find(|f| f.key == k).unwrap().value.clone();
        assert_eq!(get("frattini_g_equals_rad_w"), "true");
        assert_eq!(get("standalone_h_element_orders_match"), "true");
        assert_eq!(get("standalone_h_degree"), "125");
    }
}
