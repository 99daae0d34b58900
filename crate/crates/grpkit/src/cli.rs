//! The `grpkit` command line.
//!
//! Exit codes: 0 when the command's verdict passes, 1 when it fails
//! cleanly, 2 on any operational error (parse, bounds, invalid input).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grpkit_core::atlas::{atlas, atlas_group};
use grpkit_core::corpus::{run_corpus_with, CorpusCheck};
use grpkit_core::criteria::{
    conjecture1_with, huppert_with, kramer_with, li_li_with, theorem2_with, wang, CriterionResult,
    FormationPredicate,
};
use grpkit_core::maximals::maximal_subgroups;
use grpkit_core::verify::{run_verification_with, Clock};
use grpkit_core::{Bounds, FpModule, PermGroup, Permutation, SubgroupHandle};
use serde::{Deserialize, Serialize};

use crate::formats::{parse_grp, parse_module, FormatError};
use crate::report::{render_corpus, render_criterion, render_verification, ReportEnvelope};

pub const SEED_ENV: &str = "GRPKIT_SEED";

#[derive(Parser, Debug)]
#[command(name = "grpkit", version, about = "Finite group toolkit: maximal subgroups, Fitting-type subgroups, supersolubility criteria")]
pub struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// RNG seed for randomized MeatAxe steps (default: $GRPKIT_SEED or 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest group whose elements may be enumerated.
    #[arg(long, global = true, value_name = "N")]
    pub bound_enum: Option<u64>,
    /// Largest group handled by the brute-force subgroup lattice.
    #[arg(long, global = true, value_name = "N")]
    pub bound_brute: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the 15 claims about the A5 affine counterexample.
    VerifyCounterexample {
        /// Record per-claim wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate one criterion on a group.
    Criterion(CriterionArgs),
    /// Run an invariant over every atlas group.
    Corpus {
        #[arg(value_enum)]
        check: CorpusArg,
    },
    /// Submodule structure of a module file.
    ModuleInfo { file: PathBuf },
    /// List the built-in atlas groups.
    Atlas,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["atlas", "group"])))]
pub struct CriterionArgs {
    #[arg(value_enum)]
    pub name: CriterionName,
    /// Atlas group name (case-insensitive).
    #[arg(long)]
    pub atlas: Option<String>,
    /// Path to a `.grp` file.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Generators of the normal subgroup H, comma-separated cycle notation.
    #[arg(long, value_name = "GENS")]
    pub subgroup_gens: Option<String>,
    #[arg(long, value_enum, default_value_t = FormationArg::Supersoluble)]
    pub formation: FormationArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CriterionName {
    Huppert,
    Kramer,
    Lili,
    Wang,
    Conjecture1,
    Theorem2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormationArg {
    Supersoluble,
    Soluble,
    Nilpotent,
}

impl FormationArg {
    fn predicate(self) -> FormationPredicate {
        match self {
            FormationArg::Supersoluble => FormationPredicate::SUPERSOLUBLE,
            FormationArg::Soluble => FormationPredicate::SOLUBLE,
            FormationArg::Nilpotent => FormationPredicate::NILPOTENT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusArg {
    HuppertEquiv,
    LiliEquiv,
    KramerEquiv,
    SchmidShemetkov,
    Theorem2Soundness,
    FstarChain,
}

impl From<CorpusArg> for CorpusCheck {
    fn from(c: CorpusArg) -> Self {
        match c {
            CorpusArg::HuppertEquiv => CorpusCheck::HuppertEquiv,
            CorpusArg::LiliEquiv => CorpusCheck::LiliEquiv,
            CorpusArg::KramerEquiv => CorpusCheck::KramerEquiv,
            CorpusArg::SchmidShemetkov => CorpusCheck::SchmidShemetkov,
            CorpusArg::Theorem2Soundness => CorpusCheck::Theorem2Soundness,
            CorpusArg::FstarChain => CorpusCheck::FstarChain,
        }
    }
}

/// Wall-clock microseconds since construction.
pub struct SystemClock(Instant);

impl SystemClock {
    pub fn new() -> Self {
        SystemClock(Instant::now())
    }
}

impl Default for SystemClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for SystemClock {
    fn now_micros(&self) -> Option<u64> {
        Some(self.0.elapsed().as_micros() as u64)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] grpkit_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Outcome of a command: its verdict and the text to print.
struct Outcome {
    pass: bool,
    text: String,
    json: String,
    notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInfo {
    pub p: u32,
    pub dim: usize,
    pub group_order: u64,
    pub irreducible: bool,
    pub indecomposable: bool,
    pub composition_factor_dims: Vec<usize>,
    pub socle_dim: usize,
    pub radical_dim: usize,
    pub maximal_submodules: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub name: String,
    pub order: u64,
    pub degree: usize,
    pub soluble: bool,
    pub supersoluble: bool,
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = if cli.json { &o.json } else { &o.text };
            let _ = out.write_all(body.as_bytes());
            if cli.json && !body.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            for n in &o.notes {
                // Keep stdout pure JSON in --json mode.
                let _ = if cli.json {
                    writeln!(err, "{n}")
                } else {
                    writeln!(out, "{n}")
                };
            }
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn seed(cli: &Cli) -> Result<u64, CliError> {
    if let Some(s) = cli.seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an integer, got {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn bounds(cli: &Cli) -> Bounds {
    let mut b = Bounds::default();
    if let Some(n) = cli.bound_enum {
        b.enumeration = n;
    }
    if let Some(n) = cli.bound_brute {
        b.brute = n;
    }
    b
}

fn base_inputs(cli: &Cli) -> Result<BTreeMap<String, String>, CliError> {
    let b = bounds(cli);
    let mut m = BTreeMap::new();
    m.insert("seed".into(), seed(cli)?.to_string());
    m.insert("bound_enum".into(), b.enumeration.to_string());
    m.insert("bound_brute".into(), b.brute.to_string());
    Ok(m)
}

fn envelope<T: Serialize>(
    command: &str,
    inputs: BTreeMap<String, String>,
    result: &T,
    elapsed_ms: Option<u64>,
) -> String {
    let mut e = ReportEnvelope::new(command, inputs, result).expect("result serializes");
    e.elapsed_ms = elapsed_ms;
    e.to_json()
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let inputs = base_inputs(cli)?;
    match &cli.command {
        Command::VerifyCounterexample { timings } => verify(cli, inputs, *timings),
        Command::Criterion(a) => criterion(cli, inputs, a),
        Command::Corpus { check } => {
            let check = CorpusCheck::from(*check);
            let mut inputs = inputs;
            inputs.insert("check".into(), check.name().into());
            let r = run_corpus_with(check, bounds(cli))?;
            Ok(Outcome {
                pass: r.pass,
                text: render_corpus(&r),
                json: envelope("corpus", inputs, &r, None),
                notes: Vec::new(),
            })
        }
        Command::ModuleInfo { file } => {
            let mut inputs = inputs;
            inputs.insert("file".into(), file.display().to_string());
            let text = std::fs::read_to_string(file).map_err(FormatError::from)?;
            let m = parse_module(&text)?;
            let m = FpModule::new(m.group().with_bounds(bounds(cli)), m.p(), m.action().to_vec())?;
            let info = module_info(&m, seed(cli)?)?;
            let text = format!(
                "module over GF({}) of dim {} for a group of order {}\n  irreducible: {}\n  indecomposable: {}\n  composition factor dims: {:?}\n  socle dim: {}\n  radical dim: {}\n  maximal submodules: {}\n",
                info.p,
                info.dim,
                info.group_order,
                info.irreducible,
                info.indecomposable,
                info.composition_factor_dims,
                info.socle_dim,
                info.radical_dim,
                info.maximal_submodules
            );
            Ok(Outcome {
                pass: true,
                text,
                json: envelope("module-info", inputs, &info, None),
                notes: Vec::new(),
            })
        }
        Command::Atlas => {
            let rows: Vec<AtlasRow> = atlas()
                .into_iter()
                .map(|e| AtlasRow {
                    name: e.name.to_string(),
                    order: e.order,
                    degree: e.group.degree(),
                    soluble: e.soluble,
                    supersoluble: e.supersoluble,
                })
                .collect();
            let mut text = String::from("name      order  degree  soluble  supersoluble\n");
            for r in &rows {
                text.push_str(&format!(
                    "{:<8}  {:>5}  {:>6}  {:<7}  {}\n",
                    r.name, r.order, r.degree, r.soluble, r.supersoluble
                ));
            }
            Ok(Outcome {
                pass: true,
                text,
                json: envelope("atlas", inputs, &rows, None),
                notes: Vec::new(),
            })
        }
    }
}

fn verify(cli: &Cli, inputs: BTreeMap<String, String>, timings: bool) -> Result<Outcome, CliError> {
    let seed = seed(cli)?;
    let clock = SystemClock::new();
    let no_clock = grpkit_core::verify::NoClock;
    let clock_ref: &dyn Clock = if timings { &clock } else { &no_clock };
    let report = run_verification_with(seed, bounds(cli), clock_ref).map_err(|e| {
        CliError::Usage(format!("{} failed: {}", e.claim, e.error))
    })?;
    let elapsed = timings.then(|| clock.now_micros().unwrap_or(0) / 1000);
    let mut text = render_verification(&report);
    if let Some(ms) = elapsed {
        text.push_str(&format!("elapsed: {ms} ms\n"));
    }
    let mut notes = Vec::new();
    if report.conjecture1_refuted {
        notes.push(String::from(
            "Conjecture 1 refuted: G satisfies its hypothesis with F = supersoluble groups, but G is not supersoluble",
        ));
    }
    Ok(Outcome {
        pass: report.overall,
        text,
        json: envelope("verify-counterexample", inputs, &report, elapsed),
        notes,
    })
}

fn load_group(cli: &Cli, a: &CriterionArgs) -> Result<(PermGroup, String), CliError> {
    let b = bounds(cli);
    if let Some(name) = &a.atlas {
        let e = atlas_group(name)
            .ok_or_else(|| CliError::Usage(format!("no atlas group named {name:?}")))?;
        return Ok((e.group.with_bounds(b), e.name.to_string()));
    }
    let path = a.group.as_ref().expect("clap enforces a group source");
    let text = std::fs::read_to_string(path).map_err(FormatError::from)?;
    Ok((parse_grp(&text)?.with_bounds(b), path.display().to_string()))
}

/// Parses `"(1 2 3),(1 2)(3 4)"` into permutations of `degree` points.
pub fn parse_generator_list(degree: usize, text: &str) -> Result<Vec<Permutation>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse_cycles(degree, s).map_err(CliError::from))
        .collect()
}

fn criterion(cli: &Cli, mut inputs: BTreeMap<String, String>, a: &CriterionArgs) -> Result<Outcome, CliError> {
    let (g, source) = load_group(cli, a)?;
    let name = a.name.to_possible_value().expect("no skipped variants").get_name().to_string();
    inputs.insert("criterion".into(), name.clone());
    inputs.insert(if a.atlas.is_some() { "atlas" } else { "group" }.into(), source);
    let f = a.formation.predicate();
    let needs_h = matches!(a.name, CriterionName::Wang | CriterionName::Conjecture1 | CriterionName::Theorem2);
    let h = match (&a.subgroup_gens, needs_h) {
        (Some(gens), true) => {
            inputs.insert("subgroup_gens".into(), gens.clone());
            inputs.insert("formation".into(), f.name.into());
            let gens = parse_generator_list(g.degree(), gens)?;
            let h = g.subgroup(gens)?;
            Some(SubgroupHandle::new(g.clone(), h)?.into_group())
        }
        (None, true) => return Err(CliError::Usage(format!("criterion {name} needs --subgroup-gens"))),
        (Some(_), false) => {
            return Err(CliError::Usage(format!("criterion {name} takes no subgroup")))
        }
        (None, false) => None,
    };
    let r: CriterionResult = match a.name {
        CriterionName::Huppert => huppert_with(&maximal_subgroups(&g)?)?,
        CriterionName::Kramer => kramer_with(&maximal_subgroups(&g)?)?,
        CriterionName::Lili => li_li_with(&maximal_subgroups(&g)?)?,
        CriterionName::Wang => wang(&g, h.as_ref().expect("checked"), &f)?,
        CriterionName::Conjecture1 | CriterionName::Theorem2 => {
            let h = h.as_ref().expect("checked");
            if !h.is_normal_in(&g) {
                return Err(grpkit_core::Error::NotNormal.into());
            }
            let gmax = maximal_subgroups(&g)?;
            let hmax = maximal_subgroups(h)?;
            if a.name == CriterionName::Theorem2 {
                theorem2_with(&gmax, &hmax, &f)?
            } else {
                conjecture1_with(&gmax, &hmax, &f)?
            }
        }
    };
    Ok(Outcome {
        pass: r.holds,
        text: render_criterion(&r),
        json: envelope("criterion", inputs, &r, None),
        notes: Vec::new(),
    })
}

fn module_info(m: &FpModule, seed: u64) -> Result<ModuleInfo, CliError> {
    use grpkit_core::verify::seeded_rng;
    let mut rng = seeded_rng(seed);
    let factors = m.composition_factors_with(&mut rng)?;
    Ok(ModuleInfo {
        p: m.p(),
        dim: m.dim(),
        group_order: m.group().order(),
        irreducible: m.is_irreducible_with(&mut rng)?.is_irreducible(),
        indecomposable: m.is_indecomposable_with(&mut rng)?,
        composition_factor_dims: factors.iter().map(|c| c.dim()).collect(),
        socle_dim: m.socle_basis()?.dim(),
        radical_dim: m.radical_basis()?.dim(),
        maximal_submodules: m.maximal_submodules()?.len(),
    })
}
