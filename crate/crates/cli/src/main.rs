use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acfu_core::construct::{self, Quasigroup};
use acfu_core::designs::{self, DesignError, IncidenceStructure, Mosaic, RESOLUTION_BUDGET};
use acfu_core::privacy::{self, JointSource, PrivacyError};
use acfu_core::rational::{self, Rational};
use acfu_core::verify;
use acfu_core::{AbelianGroup, FamilySpec, FunctionTable, HashError, HashFamily, DEFAULT_BUDGET};
use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "acfu", version, about = "Build, verify and analyze ACFU hash families")]
struct Cli {
    /// Write the produced artifact (family, mosaic, structure) here.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest table (entries) any command may materialize.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = positive)]
    budget: usize,
    /// Seed for randomly generated families.
    #[arg(long, global = true, default_value_t = 0)]
    rng_seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a named family.
    Family(FamilyArgs),
    /// Minimal epsilon per class, seed-size bounds and equality flags.
    Verify { file: PathBuf },
    /// Design analysis of a family, mosaic or incidence structure file.
    Design(DesignArgs),
    /// Seed/point extension, concatenation and lifts.
    Construct(ConstructArgs),
    /// Privacy amplification of a source by a family.
    Pa(PaArgs),
}

#[derive(Args)]
#[group(id = "kind", required = true, multiple = false)]
struct FamilyKind {
    #[arg(long)]
    affine: bool,
    #[arg(long)]
    dual_affine: bool,
    #[arg(long)]
    transversal: bool,
    #[arg(long)]
    toeplitz: bool,
    #[arg(long)]
    field_multiply: bool,
    /// Uniformly random table with `x=`, `s=`, `a=` (uses --rng-seed).
    #[arg(long)]
    random: bool,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    kind: FamilyKind,
    /// Parameters as `key=value` (q, t, m, n, h=0,1,..., x, s, a).
    params: Vec<String>,
    /// Transversal: use all of F_q as the slope set.
    #[arg(long = "full-H")]
    full_h: bool,
    /// Transversal: add the point class at infinity.
    #[arg(long)]
    infinity: bool,
    /// Field multiply: drop the zero multiplier.
    #[arg(long)]
    exclude_zero: bool,
}

#[derive(Args)]
struct DesignArgs {
    file: PathBuf,
    /// Transpose every member (or the structure).
    #[arg(long)]
    dual: bool,
    /// Sum of the mosaic.
    #[arg(long)]
    sum: bool,
    /// Search for a resolution.
    #[arg(long)]
    resolve: bool,
    /// Check the structure theorems (family files only).
    #[arg(long)]
    theorems: bool,
}

#[derive(Args)]
#[group(id = "op", required = true, multiple = false)]
struct ConstructOp {
    #[arg(long, value_name = "FAMILY")]
    seed_ext: Option<PathBuf>,
    #[arg(long, value_name = "FAMILY")]
    point_ext: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["F1", "F2"])]
    concat: Option<Vec<PathBuf>>,
    #[arg(long, value_name = "FAMILY")]
    double_ext: Option<PathBuf>,
    #[arg(long, value_name = "FAMILY")]
    krawczyk: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    op: ConstructOp,
    /// Quasigroup: cyclic group of order |A|.
    #[arg(long, conflicts_with = "square")]
    cyclic: bool,
    /// Quasigroup: latin square file.
    #[arg(long)]
    square: Option<PathBuf>,
    /// Claimed balancedness for --double-ext / --krawczyk.
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Args)]
struct PaArgs {
    source: PathBuf,
    family: PathBuf,
    /// Use the n-fold i.i.d. extension of the source.
    #[arg(long, default_value_t = 1)]
    iid: u32,
}

/// Exit code 1: a verified property failed.
#[derive(Debug)]
struct Failure(String);

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failure {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", render(&report, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Failure>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Value> {
    match &cli.command {
        Command::Family(args) => cmd_family(cli, args),
        Command::Verify { file } => cmd_verify(cli, file),
        Command::Design(args) => cmd_design(cli, args),
        Command::Construct(args) => cmd_construct(cli, args),
        Command::Pa(args) => cmd_pa(cli, args),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut lines = Vec::new();
            flatten("", report, &mut lines);
            let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            lines
                .into_iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect()
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), item, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), "-".into())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_artifact(cli: &Cli, text: &str) -> anyhow::Result<Option<String>> {
    match &cli.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Some(path.display().to_string()))
        }
        None => Ok(None),
    }
}

fn load_family(path: &Path) -> anyhow::Result<FunctionTable> {
    FunctionTable::from_json(&read(path)?).with_context(|| format!("loading family {}", path.display()))
}

/// `key=value` pairs; every key must be used.
struct Params {
    pairs: Vec<(String, String, bool)>,
}

impl Params {
    fn parse(raw: &[String]) -> anyhow::Result<Self> {
        let pairs = raw
            .iter()
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.trim().to_string(), v.trim().to_string(), false))
                    .ok_or_else(|| anyhow!("expected key=value, got {p:?}"))
            })
            .collect::<anyhow::Result<_>>()?;
        Ok(Self { pairs })
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        self.pairs.iter_mut().find(|(k, _, _)| k == key).map(|(_, v, used)| {
            *used = true;
            v.clone()
        })
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str) -> anyhow::Result<T> {
        let v = self.raw(key).ok_or_else(|| anyhow!("missing parameter {key}="))?;
        v.parse().map_err(|_| anyhow!("bad value for {key}: {v:?}"))
    }

    fn finish(self) -> anyhow::Result<()> {
        if let Some((k, _, _)) = self.pairs.iter().find(|(_, _, used)| !used) {
            bail!("unknown parameter {k}=");
        }
        Ok(())
    }
}

fn cmd_family(cli: &Cli, args: &FamilyArgs) -> anyhow::Result<Value> {
    let mut p = Params::parse(&args.params)?;
    let k = &args.kind;
    let (table, spec) = if k.random {
        let (x, s, a): (usize, usize, usize) = (p.num("x")?, p.num("s")?, p.num("a")?);
        p.finish()?;
        if x == 0 || s == 0 || a == 0 {
            bail!("x, s and a must be positive");
        }
        if x.saturating_mul(s) > cli.budget {
            return Err(HashError::BudgetExceeded {
                entries: (x * s) as u128,
                budget: cli.budget,
            }
            .into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cli.rng_seed);
        let entries = (0..x * s).map(|_| rng.gen_range(0..a as u32)).collect();
        let spec = json!({"family": "random", "x": x, "s": s, "a": a, "rng_seed": cli.rng_seed});
        (FunctionTable::from_indices(x, s, a, entries)?, spec)
    } else {
        let q: u64 = p.num("q")?;
        let spec = if k.affine || k.dual_affine {
            let t = p.num("t")?;
            if k.affine {
                FamilySpec::Affine { q, t }
            } else {
                FamilySpec::DualAffine { q, t }
            }
        } else if k.transversal {
            let h_set = match (p.raw("h"), args.full_h) {
                (Some(_), true) => bail!("give either h= or --full-H"),
                (Some(list), false) => list
                    .split(',')
                    .map(|h| h.trim().parse().map_err(|_| anyhow!("bad slope index {h:?}")))
                    .collect::<anyhow::Result<Vec<u32>>>()?,
                (None, true) => (0..u32::try_from(q).context("q too large")?).collect(),
                (None, false) => bail!("transversal needs h=i,j,... or --full-H"),
            };
            FamilySpec::Transversal {
                q,
                h_set,
                include_infinity: args.infinity,
            }
        } else if k.toeplitz {
            FamilySpec::Toeplitz {
                q,
                m: p.num("m")?,
                n: p.num("n")?,
            }
        } else {
            FamilySpec::FieldMultiply {
                q,
                n: p.num("n")?,
                m: p.num("m")?,
                exclude_zero: args.exclude_zero,
            }
        };
        p.finish()?;
        let table = HashFamily::build_named(&spec)?.to_table(cli.budget)?;
        (table, to_value(&spec))
    };
    let file = write_artifact(cli, &table.to_json())?;
    Ok(json!({
        "spec": spec,
        "x_size": table.x_size(),
        "s_size": table.s_size(),
        "a_size": table.a_size(),
        "output": file,
    }))
}

fn cmd_verify(_cli: &Cli, file: &Path) -> anyhow::Result<Value> {
    let table = load_family(file)?;
    let report = verify::classify(&table)?;
    Ok(to_value(&report))
}

enum DesignInput {
    Family(FunctionTable),
    Mosaic(Mosaic),
    Structure(IncidenceStructure),
}

fn load_design_input(path: &Path) -> anyhow::Result<DesignInput> {
    let text = read(path)?;
    if let Ok(t) = FunctionTable::from_json(&text) {
        return Ok(DesignInput::Family(t));
    }
    if let Ok(m) = Mosaic::from_json(&text) {
        return Ok(DesignInput::Mosaic(m));
    }
    IncidenceStructure::from_json(&text)
        .map(DesignInput::Structure)
        .with_context(|| format!("{} is not a family, mosaic or incidence structure file", path.display()))
}

fn resolution_report(d: &IncidenceStructure) -> anyhow::Result<Value> {
    match designs::find_resolution(d, RESOLUTION_BUDGET) {
        Ok(res) => Ok(json!({"resolvable": true, "classes": res.classes})),
        Err(DesignError::NotResolvable(reason)) => Ok(json!({"resolvable": false, "reason": reason})),
        Err(e) => Err(e.into()),
    }
}

fn cmd_design(cli: &Cli, args: &DesignArgs) -> anyhow::Result<Value> {
    let input = load_design_input(&args.file)?;
    if args.theorems {
        let DesignInput::Family(table) = &input else {
            bail!("--theorems needs a family file");
        };
        let report = designs::check_structure_theorems(table)?;
        if let Some(v) = report.violations().next() {
            return Err(Failure(format!("structure theorem violated: {} ({})", v.name, v.detail)).into());
        }
        return Ok(to_value(&report));
    }
    let mosaic = match &input {
        DesignInput::Family(t) => Some(designs::mosaic_from_function(t)),
        DesignInput::Mosaic(m) => Some(m.clone()),
        DesignInput::Structure(_) => None,
    };
    let mut out = serde_json::Map::new();
    match (mosaic, input) {
        (Some(m), _) => {
            let m = if args.dual { designs::dual_mosaic(&m) } else { m };
            if args.sum {
                let sum = designs::sum_mosaic(&m);
                out.insert("sum".into(), to_value(&designs::analyze_structure(&sum)));
                if args.resolve {
                    out.insert("resolution".into(), resolution_report(&sum)?);
                }
                out.insert("output".into(), to_value(&write_artifact(cli, &sum.to_json())?));
            } else {
                let params: Vec<_> = m.members().iter().map(designs::analyze_structure).collect();
                out.insert("members".into(), to_value(&params));
                if args.resolve {
                    let res: Vec<Value> = m.members().iter().map(resolution_report).collect::<anyhow::Result<_>>()?;
                    out.insert("member_resolutions".into(), Value::Array(res));
                }
                out.insert("output".into(), to_value(&write_artifact(cli, &m.to_json())?));
            }
        }
        (None, DesignInput::Structure(d)) => {
            if args.sum {
                bail!("--sum needs a family or mosaic file");
            }
            let d = if args.dual { d.transpose() } else { d };
            out.insert("structure".into(), to_value(&designs::analyze_structure(&d)));
            if args.resolve {
                out.insert("resolution".into(), resolution_report(&d)?);
            }
            out.insert("output".into(), to_value(&write_artifact(cli, &d.to_json())?));
        }
        (None, _) => unreachable!("families and mosaics always yield a mosaic"),
    }
    Ok(Value::Object(out))
}

fn quasigroup_for(args: &ConstructArgs, g: &FunctionTable) -> anyhow::Result<Quasigroup> {
    if let Some(path) = &args.square {
        return Ok(Quasigroup::from_json(&read(path)?)?);
    }
    match (args.cyclic, g.a_group()) {
        (false, Some(group)) => Ok(Quasigroup::from_group(group)),
        _ => Ok(Quasigroup::cyclic(u32::try_from(g.a_size())?)),
    }
}

fn parse_eps(args: &ConstructArgs) -> anyhow::Result<Option<Rational>> {
    args.eps.as_deref().map(|e| Ok(rational::parse(e)?)).transpose()
}

fn cmd_construct(cli: &Cli, args: &ConstructArgs) -> anyhow::Result<Value> {
    let op = &args.op;
    let (table, mut report) = if let Some(path) = &op.seed_ext {
        let g = load_family(path)?;
        let q = quasigroup_for(args, &g)?;
        (construct::seed_extension(&g, &q)?, json!({"construction": "seed_extension"}))
    } else if let Some(path) = &op.point_ext {
        let g = load_family(path)?;
        let q = quasigroup_for(args, &g)?;
        let pe = construct::point_extension(&g, &q)?;
        if !pe.input_regular {
            eprintln!("warning: input is not regular; the point extension cannot be regular");
        }
        (
            pe.table,
            json!({"construction": "point_extension", "input_regular": pe.input_regular}),
        )
    } else if let Some(paths) = &op.concat {
        let (f1, f2) = (load_family(&paths[0])?, load_family(&paths[1])?);
        let c = construct::concatenate(&f1, &f2)?;
        let mut r = to_value(&c);
        r["construction"] = json!("concatenation");
        (c.table, r)
    } else if let Some(path) = &op.double_ext {
        let mut a = load_family(path)?;
        if a.a_group().is_none() {
            let group = AbelianGroup::cyclic(u32::try_from(a.a_size())?);
            let x_group = a.x_group().cloned();
            a = a.with_groups(x_group, Some(group))?;
        }
        let d = construct::double_extension(&a, parse_eps(args)?.as_ref())?;
        (
            d.table,
            json!({
                "construction": "double_extension",
                "value_group": a.a_group().map(|g| g.moduli().to_vec()),
                "eps": rational::to_text(&d.eps),
            }),
        )
    } else if let Some(path) = &op.krawczyk {
        let g = load_family(path)?;
        let lift = construct::krawczyk_lift(&g, parse_eps(args)?.as_ref())?;
        (
            lift.table,
            json!({
                "construction": "krawczyk_lift",
                "eps": rational::to_text(&lift.eps),
                "eps_asu": rational::to_text(&lift.eps_asu),
            }),
        )
    } else {
        unreachable!("clap requires one construction");
    };
    if table.x_size() * table.s_size() > cli.budget {
        return Err(HashError::BudgetExceeded {
            entries: (table.x_size() * table.s_size()) as u128,
            budget: cli.budget,
        }
        .into());
    }
    report["x_size"] = json!(table.x_size());
    report["s_size"] = json!(table.s_size());
    report["a_size"] = json!(table.a_size());
    report["output"] = json!(write_artifact(cli, &table.to_json())?);
    Ok(report)
}

fn cmd_pa(cli: &Cli, args: &PaArgs) -> anyhow::Result<Value> {
    let src = JointSource::from_json(&read(&args.source)?)?;
    for z in src.dropped() {
        eprintln!("warning: dropped zero-mass Z value {z:?}");
    }
    let src = privacy::iid_extend(&src, args.iid, cli.budget)?;
    let f = load_family(&args.family)?;
    match privacy::run_pa(&src, &f) {
        Ok(r) => {
            let mut v = to_value(&r);
            v["iid"] = json!(args.iid);
            Ok(v)
        }
        Err(e @ PrivacyError::TheoremViolation { .. }) => Err(Failure(e.to_string()).into()),
        Err(e) => Err(e.into()),
    }
}
