//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use grpkit_core::atlas::atlas;
use grpkit_core::corpus::{theorem2_sweep, THEOREM2_ORDER_LIMIT};
use grpkit_core::criteria::{huppert, kramer, li_li};
use grpkit_core::maximals::{maximal_subgroups_brute, maximal_subgroups_split, MaximalSet};
use grpkit_core::structure::{centralizer, shemetkov_tilde_fitting};
use grpkit_core::verify::seeded_rng;
use grpkit_core::{
    affine_semidirect_product, Bounds, FpModule, GFMatrix, PermGroup, Permutation,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn grpkit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_grpkit"))
        .args(args)
        .env_remove("GRPKIT_SEED")
        .output()
        .expect("binary runs")
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let out = grpkit(&["verify-counterexample", "--json"]);
    let elapsed = start.elapsed();
    if out.status.code() != Some(0) {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let claims = v["result"]["claims"].as_array().ok_or("no claims array")?;
    let passed = claims.iter().filter(|c| c["pass"] == true).count();
    // Exact values the claims must report.
    let expect = [
        ("claim-03", "1"),
        ("claim-04", "4"),
        ("claim-05", "true"),
        ("claim-06", "dim 3, simple true, faithful true"),
        ("claim-07", "dim 1, trivial true"),
        ("claim-08", "37500"),
        ("claim-09", "true"),
        ("claim-10", "|H| 7500, normal true, |G:H| 5, cyclic true"),
        ("claim-11", "unique true, |Φ(H)| 1"),
        ("claim-12", "|F̃(H)| 125, equals Rad(W) true, inside Φ(G) true"),
        ("claim-13", "22 maximal subgroups, all indices 1"),
        ("claim-15", "soluble false, supersoluble false"),
    ];
    for (id, value) in expect {
        let c = claims.iter().find(|c| c["id"] == id).ok_or(format!("{id} missing"))?;
        if c["computed"] != value {
            return Err(format!("{id} computed {}", c["computed"]));
        }
    }
    if claims.len() != 15 || passed != 15 || v["result"]["overall"] != true {
        return Err(format!("{passed}/{} claims passed", claims.len()));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("15/15 claims in {:.1} s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let out = grpkit(&["verify-counterexample"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text
        .lines()
        .find(|l| l.starts_with("Conjecture 1 refuted"))
        .ok_or("no refutation line")?;
    let json = grpkit(&["verify-counterexample", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).map_err(|e| e.to_string())?;
    let c14 = &v["result"]["claims"][13];
    let c15 = &v["result"]["claims"][14];
    if c14["computed"] != "true" || c15["computed"] != "soluble false, supersoluble false" {
        return Err(format!("claims 14/15: {} / {}", c14["computed"], c15["computed"]));
    }
    if v["result"]["conjecture1_refuted"] != true {
        return Err("report flag not set".into());
    }
    Ok(line.to_string())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let (mut groups, mut pairs, mut applicable) = (0, 0, 0);
    for e in atlas().into_iter().filter(|e| e.order <= THEOREM2_ORDER_LIMIT) {
        let (n, a, violations) = theorem2_sweep(&e.group).map_err(|x| x.to_string())?;
        if violations > 0 {
            return Err(format!("{}: {violations} violations", e.name));
        }
        // A pair where the hypothesis holds must have supersoluble G.
        if a > 0 && !e.supersoluble {
            return Err(format!("{}: hypothesis holds on a non-supersoluble group", e.name));
        }
        groups += 1;
        pairs += n;
        applicable += a;
    }
    if start.elapsed() > Duration::from_secs(600) {
        return Err("over 10 minutes".into());
    }
    Ok(format!(
        "{groups} groups, {pairs} normal pairs, hypothesis on {applicable}, 0 violations"
    ))
}

fn criterion_4() -> Check {
    let mut soluble = 0;
    let entries = atlas();
    for e in &entries {
        let g = &e.group;
        let l = li_li(g).map_err(|x| x.to_string())?.holds;
        let h = huppert(g).map_err(|x| x.to_string())?.holds;
        if l != e.supersoluble || h != e.supersoluble {
            return Err(format!("{}: lili {l}, huppert {h}, supersoluble {}", e.name, e.supersoluble));
        }
        if e.soluble {
            soluble += 1;
            let k = kramer(g).map_err(|x| x.to_string())?.holds;
            if k != e.supersoluble {
                return Err(format!("{}: kramer {k}", e.name));
            }
        }
    }
    Ok(format!("{} groups, {soluble} soluble, 0 mismatches", entries.len()))
}

fn criterion_5() -> Check {
    let entries = atlas();
    for e in &entries {
        let t = shemetkov_tilde_fitting(&e.group).map_err(|x| x.to_string())?;
        let c = centralizer(&e.group, &t).map_err(|x| x.to_string())?;
        // Check membership element by element.
        for x in c.elements().map_err(|x| x.to_string())? {
            if !t.has(&x) {
                return Err(format!("{}: {} centralizes F~ but lies outside", e.name, x.to_cycle_string()));
            }
        }
    }
    Ok(format!("{} groups, 0 violations", entries.len()))
}

fn affine(p: u32, k_degree: usize, k_gens: &[&str], rows: &[&[&[i64]]]) -> PermGroup {
    let k = PermGroup::new(
        k_degree,
        k_gens.iter().map(|s| Permutation::parse_cycles(k_degree, s).unwrap()).collect(),
    )
    .unwrap();
    let action = rows.iter().map(|m| GFMatrix::from_rows(p, m).unwrap()).collect();
    let m = FpModule::new(k, p, action).unwrap();
    affine_semidirect_product(&m).unwrap().group
}

fn element_sets(set: &MaximalSet) -> BTreeSet<BTreeSet<Vec<u32>>> {
    set.iter()
        .map(|m| m.elements().unwrap().map(|x| x.images().to_vec()).collect())
        .collect()
}

fn criterion_6() -> Check {
    let cases = [
        ("S3 = C3:C2", affine(3, 2, &["(1 2)"], &[&[&[2]]]), 6, 4),
        ("A4 = V4:C3", affine(2, 3, &["(1 2 3)"], &[&[&[0, 1], &[1, 1]]]), 12, 5),
        ("D10 = C5:C2", affine(5, 2, &["(1 2)"], &[&[&[4]]]), 10, 6),
    ];
    let mut summary = Vec::new();
    for (name, g, order, count) in cases {
        if g.order() != order || g.split_info().is_none() {
            return Err(format!("{name}: bad construction, order {}", g.order()));
        }
        let brute = maximal_subgroups_brute(&g).map_err(|x| x.to_string())?;
        let split = maximal_subgroups_split(&g).map_err(|x| x.to_string())?;
        let (b, s) = (element_sets(&brute), element_sets(&split));
        if b != s || b.len() != split.len() || b.len() != count {
            return Err(format!("{name}: brute {} vs split {} maximals", b.len(), s.len()));
        }
        summary.push(format!("{name} {count}"));
    }
    Ok(format!("agree on {}", summary.join(", ")))
}

fn criterion_7() -> Check {
    let limit = Bounds::default().affine_points;
    let mut modules = 0;
    for e in atlas() {
        for p in [2u32, 3, 5] {
            let d = e.group.degree() as u32;
            if (p as u64).checked_pow(d).is_none_or(|x| x > limit) {
                continue;
            }
            let m = FpModule::permutation_module(&e.group, p).map_err(|x| x.to_string())?;
            let tags = |seed: u64| -> Result<Vec<_>, String> {
                let mut rng = seeded_rng(seed);
                let mut t: Vec<_> = m
                    .composition_factors_with(&mut rng)
                    .map_err(|x| x.to_string())?
                    .into_iter()
                    .map(|c| c.tag)
                    .collect();
                t.sort();
                Ok(t)
            };
            let reference = tags(0)?;
            if reference.iter().map(|t| t.dim).sum::<usize>() != m.dim() {
                return Err(format!("{} p={p}: factor dims do not sum to {}", e.name, m.dim()));
            }
            for seed in 1..=10 {
                if tags(seed)? != reference {
                    return Err(format!("{} p={p}: chop order {seed} changed the factors", e.name));
                }
            }
            let rad = m.radical_basis().map_err(|x| x.to_string())?.dim();
            let soc_dual = m.dual().socle_basis().map_err(|x| x.to_string())?.dim();
            if rad != m.dim() - soc_dual {
                return Err(format!("{} p={p}: rad {rad}, dim {}, soc(dual) {soc_dual}", e.name, m.dim()));
            }
            modules += 1;
        }
    }
    Ok(format!("{modules} permutation modules, 10 chop orders each, radical/socle duality exact"))
}

fn criterion_8() -> Check {
    let runs: [&[&str]; 4] = [
        &["verify-counterexample", "--json", "--seed", "7"],
        &["corpus", "theorem2-soundness", "--json"],
        &["criterion", "lili", "--atlas", "S4", "--json"],
        &["verify-counterexample", "--json"],
    ];
    for args in runs {
        let a = grpkit(args);
        let b = grpkit(args);
        if a.stdout.is_empty() || a.stdout != b.stdout {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
    }
    // GRPKIT_SEED and --seed are the same input.
    let by_env = Command::new(env!("CARGO_BIN_EXE_grpkit"))
        .args(["verify-counterexample", "--json"])
        .env("GRPKIT_SEED", "7")
        .output()
        .map_err(|e| e.to_string())?;
    if by_env.stdout != grpkit(runs[0]).stdout {
        return Err("GRPKIT_SEED=7 differs from --seed 7".into());
    }
    Ok("byte-identical JSON across repeated runs".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 counterexample end-to-end", criterion_1),
        ("2 conjecture refutation", criterion_2),
        ("3 theorem 2 soundness sweep", criterion_3),
        ("4 criterion equivalences", criterion_4),
        ("5 Schmid-Shemetkov invariant", criterion_5),
        ("6 brute vs split maximals", criterion_6),
        ("7 MeatAxe properties", criterion_7),
        ("8 determinism", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
