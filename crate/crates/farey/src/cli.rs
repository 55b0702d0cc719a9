//! Argument definitions and dispatch for the `farey` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, CommandFactory, Parser, Subcommand, ValueEnum};
use farey_core::algebra::rational::{int, to_f64};
use farey_core::algebra::{BigRational, IntPoly};
use farey_core::cf::{convergents, evaluate_label, expand_exact, LabelValue, DEFAULT_MAX_STEPS};
use farey_core::density::{run_density, DensityConfig, DensityMode};
use farey_core::dynamics::{entropy_closed_form, entropy_rokhlin, invariance_residual, orbit_stats};
use farey_core::roots::{complex_roots, interlacing_verdict, isolate_real_roots, refine};
use farey_core::tree::{enumerate_levels, vertex_from_branch_word, vertex_from_label, TreeNode, TreeVariant};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::output::{self, joined, Format};
use crate::records::{
    poly, rat, ComplexRecord, DensityRecord, DynamicsRecord, ExpandRecord, FuncRecord, InterlaceRecord,
    IntervalRecord, PolyRoots, VertexRecord,
};
use crate::suites::{self, Suite, SuiteParams};
use crate::{input, CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "farey", version, about = "Parametrized Farey polynomial trees and their continued fractions")]
pub struct Cli {
    /// Output format; CSV is a flat projection of the JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for parallel suites (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Forward,
    Backward,
}

impl From<Variant> for TreeVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Forward => TreeVariant::Forward,
            Variant::Backward => TreeVariant::Backward,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertices of the first DEPTH levels, breadth first.
    Tree {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        depth: usize,
    },
    /// Digit expansion of T under the fast map with parameter X.
    Expand {
        #[arg(long, value_enum, default_value_t = Variant::Forward)]
        variant: Variant,
        #[arg(long)]
        x: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Value of a digit string at X (a rational or a surd like 1+sqrt(2)).
    EvalLabel {
        #[arg(long)]
        digits: String,
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = Variant::Forward)]
        variant: Variant,
        /// Bits of the dyadic enclosure for irrational X.
        #[arg(long, default_value_t = 256)]
        precision: u32,
    },
    /// Real and complex roots of a vertex or of a polynomial.
    #[command(group(ArgGroup::new("source").required(true).args(["label", "poly", "branch_word"])))]
    Roots {
        /// Forward vertex label a,b,c.
        #[arg(long)]
        label: Option<String>,
        /// Integer coefficients in ascending degree.
        #[arg(long)]
        poly: Option<String>,
        /// Vertex reached by a word of 0/1 branches.
        #[arg(long)]
        branch_word: Option<String>,
        #[arg(long, value_enum, default_value_t = Variant::Forward)]
        variant: Variant,
        /// Target radius of the complex root approximations.
        #[arg(long, default_value = "1/1000000000000")]
        tol: String,
        /// Width of the refined real isolating intervals.
        #[arg(long, default_value = "1/1000000000000")]
        width: String,
    },
    /// Interlacing verdict for one forward vertex or a whole tree prefix.
    #[command(group(ArgGroup::new("which").required(true).args(["label", "depth"])))]
    Interlace {
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Path of vertices whose largest pole below ALPHA approaches ALPHA.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "2,2")]
        label: String,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value = "1/100000000")]
        tol: String,
        /// Allow -1 < ALPHA < 0; the run is then recorded as evidence only.
        #[arg(long)]
        experimental_positive_range: bool,
        /// Confirm every pole bracket with a Sturm count.
        #[arg(long)]
        sturm_confirm: bool,
    },
    /// Complex roots of every vertex to DEPTH as rows level,side,re,im.
    Scatter {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        depth: usize,
        /// CSV destination; rows go to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "1/10000000000")]
        tol: String,
    },
    /// Orbit statistics of the fast map in floating point.
    Dynamics {
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = Variant::Forward)]
        variant: Variant,
        #[arg(long, default_value_t = 1_000_000)]
        orbit_length: u64,
        #[arg(long, default_value = "377/1000")]
        seed: String,
        #[arg(long, default_value_t = 32)]
        bins: usize,
    },
    /// Runs a verification suite; exits 1 if any case fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        depth: Option<usize>,
        /// Comma-separated parameters.
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        max_den: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        orbit_length: Option<u64>,
        /// Comma-separated targets for the density suite.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        tol: Option<String>,
        /// Seed for the random samples.
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to standard output, usage errors to stderr.
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return 2;
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli, out, err) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(err, "\n{}", Cli::command().render_usage());
            }
            e.exit_code()
        }
    }
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Tree { variant, depth } => tree(out, fmt, (*variant).into(), *depth),
        Command::Expand {
            variant,
            x,
            t,
            max_steps,
        } => expand(out, fmt, (*variant).into(), x, t, *max_steps),
        Command::EvalLabel {
            digits,
            x,
            variant,
            precision,
        } => eval_label(out, fmt, digits, x, (*variant).into(), *precision),
        Command::Roots {
            label,
            poly,
            branch_word,
            variant,
            tol,
            width,
        } => roots(out, fmt, label.as_deref(), poly.as_deref(), branch_word.as_deref(), (*variant).into(), tol, width),
        Command::Interlace { label, depth } => interlace(out, fmt, label.as_deref(), *depth),
        Command::Density {
            alpha,
            label,
            steps,
            tol,
            experimental_positive_range,
            sturm_confirm,
        } => density(out, fmt, alpha, label, *steps, tol, *experimental_positive_range, *sturm_confirm),
        Command::Scatter {
            variant,
            depth,
            out: path,
            tol,
        } => scatter(out, fmt, (*variant).into(), *depth, path.as_ref(), tol),
        Command::Dynamics {
            x,
            variant,
            orbit_length,
            seed,
            bins,
        } => dynamics(out, fmt, x, (*variant).into(), *orbit_length, seed, *bins),
        Command::Verify {
            suite,
            depth,
            x,
            max_den,
            samples,
            steps,
            max_n,
            orbit_length,
            alpha,
            tol,
            seed,
        } => {
            let params = SuiteParams {
                depth: *depth,
                xs: x.as_deref().map(input::rational_list).transpose()?,
                max_den: *max_den,
                samples: *samples,
                steps: *steps,
                max_n: *max_n,
                orbit_length: *orbit_length,
                alphas: alpha.as_deref().map(input::rational_list).transpose()?,
                tol: tol.as_deref().map(|t| input::positive(t, "tolerance")).transpose()?,
                seed: *seed,
            };
            verify(out, err, fmt, *suite, &params)
        }
    }
}

pub fn tree(out: &mut dyn Write, fmt: Format, variant: TreeVariant, depth: usize) -> Result<Outcome, CliError> {
    let records: Vec<VertexRecord> = enumerate_levels(variant, depth).map(|n| VertexRecord::from_node(&n)).collect();
    match fmt {
        Format::Json => output::json(out, &records)?,
        Format::Csv => output::csv(
            out,
            &["level", "label", "p", "q"],
            records.iter().map(|r| {
                let label = match (&r.label, &r.branch_word) {
                    (Some(l), _) => l.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
                    (None, Some(w)) => w.clone(),
                    (None, None) => String::new(),
                };
                [r.level.to_string(), label, joined(&r.p), joined(&r.q)]
            }),
        )?,
    }
    Ok(Outcome::Pass)
}

pub fn expand(
    out: &mut dyn Write,
    fmt: Format,
    variant: TreeVariant,
    x: &str,
    t: &str,
    max_steps: usize,
) -> Result<Outcome, CliError> {
    let x = input::positive(x, "parameter")?;
    let t = input::unit_point(t)?;
    let e = expand_exact(&t, &x, variant, max_steps)?;
    let conv = convergents(&e.digits, &x, variant);
    let record = ExpandRecord::new(&e, &conv, &x, &t, variant.as_str());
    match fmt {
        Format::Json => output::json(out, &record)?,
        Format::Csv => output::csv(
            out,
            &["index", "digit", "p", "q"],
            conv.iter().map(|c| {
                let digit = c
                    .index
                    .checked_sub(1)
                    .map_or(String::new(), |i| e.digits[i].to_string());
                [c.index.to_string(), digit, c.p.to_string(), c.q.to_string()]
            }),
        )?,
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EvalRecord {
    digits: Vec<u64>,
    variant: &'static str,
    x: String,
    exact: Option<String>,
    lo: String,
    hi: String,
    approx: f64,
}

pub fn eval_label(
    out: &mut dyn Write,
    fmt: Format,
    digits: &str,
    x: &str,
    variant: TreeVariant,
    precision: u32,
) -> Result<Outcome, CliError> {
    let digits = input::digits(digits)?;
    let x = input::real_param(x)?;
    if !(8..=1 << 16).contains(&precision) {
        return Err(CliError::Usage("precision must be between 8 and 65536 bits".into()));
    }
    let record = match evaluate_label(&digits, &x, variant, precision)? {
        LabelValue::Exact(v) => EvalRecord {
            digits,
            variant: variant.as_str(),
            x: x.to_string(),
            exact: Some(rat(&v)),
            lo: rat(&v),
            hi: rat(&v),
            approx: to_f64(&v),
        },
        LabelValue::Enclosure(iv) => EvalRecord {
            digits,
            variant: variant.as_str(),
            x: x.to_string(),
            exact: None,
            lo: rat(iv.lo()),
            hi: rat(iv.hi()),
            approx: to_f64(&iv.midpoint()),
        },
    };
    match fmt {
        Format::Json => output::json(out, &record)?,
        Format::Csv => output::csv(
            out,
            &["digits", "x", "lo", "hi", "approx"],
            [[
                record.digits.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
                record.x.clone(),
                record.lo.clone(),
                record.hi.clone(),
                record.approx.to_string(),
            ]],
        )?,
    }
    Ok(Outcome::Pass)
}

fn poly_roots(f: &IntPoly, tol: f64, width: &BigRational) -> Result<PolyRoots, CliError> {
    let sf = f.square_free_part();
    let real = isolate_real_roots(&sf)?
        .iter()
        .map(|iv| refine(iv, width).map(|r| IntervalRecord::from(&r)))
        .collect::<farey_core::Result<Vec<_>>>()?;
    let complex = complex_roots(f, tol)?.iter().map(ComplexRecord::from).collect();
    Ok(PolyRoots {
        coeffs: poly(f),
        real,
        complex,
    })
}

#[derive(Serialize)]
struct VertexRoots {
    vertex: FuncRecord,
    p: PolyRoots,
    q: PolyRoots,
}

#[allow(clippy::too_many_arguments)]
pub fn roots(
    out: &mut dyn Write,
    fmt: Format,
    label: Option<&str>,
    poly_arg: Option<&str>,
    word: Option<&str>,
    variant: TreeVariant,
    tol: &str,
    width: &str,
) -> Result<Outcome, CliError> {
    let (_, tol) = input::positive_tolerance(tol)?;
    let width = input::positive(width, "width")?;
    let sides: Vec<(&str, PolyRoots)> = if let Some(p) = poly_arg {
        let f = input::poly(p)?;
        let r = poly_roots(&f, tol, &width)?;
        if fmt == Format::Json {
            output::json(out, &json!({ "poly": r }))?;
            return Ok(Outcome::Pass);
        }
        vec![("poly", r)]
    } else {
        let v = match (label, word) {
            (Some(l), _) => vertex_from_label(&input::label(l)?, TreeVariant::Forward)?,
            (None, Some(w)) => vertex_from_branch_word(&input::branch_word(w)?, variant),
            (None, None) => return Err(CliError::Usage("one of --label, --poly, --branch-word is required".into())),
        };
        let record = VertexRoots {
            vertex: (&v).into(),
            p: poly_roots(v.p(), tol, &width)?,
            q: poly_roots(v.q(), tol, &width)?,
        };
        if fmt == Format::Json {
            output::json(out, &record)?;
            return Ok(Outcome::Pass);
        }
        vec![("p", record.p), ("q", record.q)]
    };
    let mut rows = Vec::new();
    for (side, r) in &sides {
        for iv in &r.real {
            rows.push([side.to_string(), "real".into(), iv.approx.to_string(), "0".into(), iv.lo.clone(), iv.hi.clone()]);
        }
        for c in &r.complex {
            rows.push([
                side.to_string(),
                "complex".into(),
                c.re.to_string(),
                c.im.to_string(),
                String::new(),
                c.radius.to_string(),
            ]);
        }
    }
    output::csv(out, &["side", "kind", "re", "im", "lo", "hi_or_radius"], rows)?;
    Ok(Outcome::Pass)
}

pub fn interlace(
    out: &mut dyn Write,
    fmt: Format,
    label: Option<&str>,
    depth: Option<usize>,
) -> Result<Outcome, CliError> {
    let records: Vec<InterlaceRecord> = match (label, depth) {
        (Some(l), _) => {
            let label = input::label(l)?;
            let v = vertex_from_label(&label, TreeVariant::Forward)?;
            let rep = interlacing_verdict(&v)?;
            vec![InterlaceRecord::new(Some(label.digits().to_vec()), &v, &rep, true)]
        }
        (None, Some(d)) => {
            let nodes: Vec<TreeNode> = enumerate_levels(TreeVariant::Forward, d).collect();
            nodes
                .par_iter()
                .map(|n| {
                    let rep = interlacing_verdict(&n.vertex)?;
                    Ok(InterlaceRecord::new(
                        n.label.as_ref().map(|l| l.digits().to_vec()),
                        &n.vertex,
                        &rep,
                        false,
                    ))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        (None, None) => return Err(CliError::Usage("one of --label or --depth is required".into())),
    };
    let ok = records.iter().all(|r| r.passed);
    match fmt {
        Format::Json if label.is_some() => output::json(out, &records[0])?,
        Format::Json => output::json(out, &records)?,
        Format::Csv => output::csv(
            out,
            &["label", "passed", "failures"],
            records.iter().map(|r| {
                [
                    r.label
                        .as_ref()
                        .map(|l| l.iter().map(u64::to_string).collect::<Vec<_>>().join(";"))
                        .unwrap_or_default(),
                    r.passed.to_string(),
                    r.failures.join(";"),
                ]
            }),
        )?,
    }
    Ok(Outcome::from_bool(ok))
}

#[allow(clippy::too_many_arguments)]
pub fn density(
    out: &mut dyn Write,
    fmt: Format,
    alpha: &str,
    label: &str,
    steps: usize,
    tol: &str,
    experimental: bool,
    sturm_confirm: bool,
) -> Result<Outcome, CliError> {
    let alpha = input::rational(alpha)?;
    let label = input::label(label)?;
    let (tol, _) = input::positive_tolerance(tol)?;
    let mode = if alpha <= int(-1) {
        DensityMode::Asserting
    } else if experimental && alpha < int(0) {
        DensityMode::Experimental
    } else if experimental {
        return Err(CliError::Usage("alpha must be negative".into()));
    } else {
        return Err(CliError::Usage(
            "alpha must be at most -1; pass --experimental-positive-range for -1 < alpha < 0".into(),
        ));
    };
    let mut config = DensityConfig::new(steps, tol);
    config.mode = mode;
    config.sturm_confirm = sturm_confirm;
    let trace = run_density(&label, &alpha, &config)?;
    let record = DensityRecord::from(&trace);
    match fmt {
        Format::Json => output::json(out, &record)?,
        Format::Csv => output::csv(
            out,
            &["index", "b", "zeta_lo", "zeta_hi", "zeta", "gap"],
            record.steps.iter().map(|s| {
                [
                    s.index.to_string(),
                    s.b.to_string(),
                    s.zeta_lo.clone(),
                    s.zeta_hi.clone(),
                    s.zeta.to_string(),
                    s.gap.to_string(),
                ]
            }),
        )?,
    }
    Ok(match mode {
        DensityMode::Asserting => Outcome::from_bool(trace.passed()),
        DensityMode::Experimental => Outcome::Pass,
    })
}

#[derive(Clone, Serialize)]
pub struct ScatterRow {
    pub level: usize,
    pub side: &'static str,
    pub re: f64,
    pub im: f64,
}

/// Complex roots of `p` and `q` for every vertex to `depth`, in tree order.
pub fn scatter_rows(variant: TreeVariant, depth: usize, tol: f64) -> Result<Vec<ScatterRow>, CliError> {
    let nodes: Vec<TreeNode> = enumerate_levels(variant, depth).collect();
    let per_node = nodes
        .par_iter()
        .map(|n| {
            let mut rows = Vec::new();
            for (side, f) in [("p", n.vertex.p()), ("q", n.vertex.q())] {
                for r in complex_roots(f, tol)? {
                    rows.push(ScatterRow {
                        level: n.level,
                        side,
                        re: r.re,
                        im: r.im,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(per_node.into_iter().flatten().collect())
}

fn scatter_csv(w: &mut dyn Write, rows: &[ScatterRow]) -> Result<(), CliError> {
    output::csv(
        w,
        &["level", "side", "re", "im"],
        rows.iter()
            .map(|r| [r.level.to_string(), r.side.to_string(), r.re.to_string(), r.im.to_string()]),
    )
}

pub fn scatter(
    out: &mut dyn Write,
    fmt: Format,
    variant: TreeVariant,
    depth: usize,
    path: Option<&PathBuf>,
    tol: &str,
) -> Result<Outcome, CliError> {
    let (_, tol) = input::positive_tolerance(tol)?;
    let rows = scatter_rows(variant, depth, tol)?;
    match path {
        Some(p) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(p)?);
            scatter_csv(&mut file, &rows)?;
            file.flush()?;
            let summary = json!({
                "out": p.display().to_string(),
                "variant": variant.as_str(),
                "depth": depth,
                "rows": rows.len(),
            });
            match fmt {
                Format::Json => output::json(out, &summary)?,
                Format::Csv => output::csv(
                    out,
                    &["out", "rows"],
                    [[p.display().to_string(), rows.len().to_string()]],
                )?,
            }
        }
        None => match fmt {
            Format::Json => output::json(out, &rows)?,
            Format::Csv => scatter_csv(out, &rows)?,
        },
    }
    Ok(Outcome::Pass)
}

pub fn dynamics(
    out: &mut dyn Write,
    fmt: Format,
    x: &str,
    variant: TreeVariant,
    length: u64,
    seed: &str,
    bins: usize,
) -> Result<Outcome, CliError> {
    let x = input::positive(x, "parameter")?;
    let seed = input::unit_point(seed)?;
    let stats = orbit_stats(&x, variant, to_f64(&seed), length, bins)?;
    let mut record = DynamicsRecord::new(&x, &seed, &stats);
    let xf = to_f64(&x);
    if variant == TreeVariant::Forward && x >= int(1) {
        record.entropy_rokhlin = Some(entropy_rokhlin(xf, 4000)?.value);
        record.invariance_residual = Some(invariance_residual(xf, 64)?);
        record.closed_form = Some(entropy_closed_form(xf)?.into());
    }
    match fmt {
        Format::Json => output::json(out, &record)?,
        Format::Csv => {
            let n = record.histogram.len() as f64;
            output::csv(
                out,
                &["bin", "lo", "hi", "frequency"],
                record.histogram.iter().enumerate().map(|(i, f)| {
                    [
                        i.to_string(),
                        (i as f64 / n).to_string(),
                        ((i + 1) as f64 / n).to_string(),
                        f.to_string(),
                    ]
                }),
            )?
        }
    }
    Ok(Outcome::Pass)
}

pub fn verify(
    out: &mut dyn Write,
    err: &mut dyn Write,
    fmt: Format,
    suite: Suite,
    params: &SuiteParams,
) -> Result<Outcome, CliError> {
    let report = suites::run(suite, params)?;
    writeln!(
        err,
        "{}: {} cases, {} failed",
        report.suite, report.cases, report.failures
    )?;
    match fmt {
        Format::Json => output::json(out, &report)?,
        Format::Csv => output::csv(
            out,
            &["suite", "case", "passed"],
            report
                .results
                .iter()
                .map(|c| [report.suite.to_string(), c.name.clone(), c.passed.to_string()]),
        )?,
    }
    Ok(Outcome::from_bool(report.passed))
}

