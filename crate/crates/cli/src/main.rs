//! `qmat`: command-line front end for the quantum matrix engine.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage,
//! parse or evaluation errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use qmatrix::analysis::{
    b_ideal_failures, center_basis, compare_spaces, graded_derivation_space, inner_span, is_normal_qcentral,
    q_commutation_twist, space_derivations, space_elements, DerivationCandidate, DerivationImage, SolveMode,
};
use qmatrix::coeff::check_admissible;
use qmatrix::expr::{self, Expr};
use qmatrix::minors::{quantum_determinant, quantum_minor, MinorId};
use qmatrix::pbw::{Algebra, Gen, Shape};
use qmatrix::verify::{self, Manifest, SuiteReport};
use serde::Serialize;
use serde_json::json;

/// `println!` that exits quietly once stdout is closed, e.g. by `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "qmat", version, about = "Exact computation in quantum matrix algebras O_q(M_{m,n})")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct ShapeArgs {
    /// Number of columns (and rows, unless --m is given).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of rows.
    #[arg(long)]
    m: Option<usize>,
    /// Specialize q to this rational instead of working over Q(q).
    #[arg(long, value_parser = parse_rational)]
    q: Option<BigRational>,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct SolverArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    /// Eliminate over Q(q) directly instead of guiding by specializations.
    #[arg(long)]
    exact: bool,
    /// Guide the solve with this single value of q (default: 2, 3 and 5).
    #[arg(long, value_parser = parse_rational, conflicts_with = "exact")]
    q: Option<BigRational>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an expression.
    Nf {
        expr: String,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Expand the quantum minor on the given rows and columns, e.g. `1,2 2,3`.
    Minor {
        rows: String,
        cols: String,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Expand the quantum determinant.
    Det {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Run every identity of the manifest for the given size.
    Verify {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Manifest to use instead of the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Replay, step by step, the identities of the 3x3 argument.
    Replay {
        #[arg(long, value_parser = parse_rational)]
        q: Option<BigRational>,
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Basis of the center in degrees up to --maxdeg.
    Center {
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 3)]
        maxdeg: u32,
    },
    /// Derivations raising degree by --shift, compared with inner ones.
    Derivations {
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        shift: i32,
    },
    /// Certify an element as normal by its q-commutation twists.
    NormalCheck {
        expr: String,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// The exponent k with u*Y = q^k*Y*u, for one generator or all.
    Twist {
        expr: String,
        /// A generator such as `Y[1,2]`; all generators when omitted.
        generator: Option<String>,
        #[command(flatten)]
        shape: ShapeArgs,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<qmatrix::Error> for Failure {
    fn from(e: qmatrix::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("not a rational number: {e}"))
}

fn build_shape(n: usize, m: Option<usize>) -> Result<Shape, Failure> {
    Ok(Shape::new(m.unwrap_or(n), n)?)
}

impl ShapeArgs {
    fn algebra(&self) -> Result<Algebra, Failure> {
        let shape = build_shape(self.n, self.m)?;
        Ok(match &self.q {
            Some(v) => Algebra::specialized(shape, v.clone())?,
            None => Algebra::new(shape),
        })
    }
}

impl SolverArgs {
    fn mode(&self) -> Result<SolveMode, Failure> {
        Ok(match (&self.q, self.exact) {
            (_, true) => SolveMode::Exact,
            (Some(v), false) => {
                check_admissible(v)?;
                SolveMode::Specialized(vec![v.clone()])
            }
            (None, false) => SolveMode::specialized_default(),
        })
    }

    fn mode_name(&self) -> String {
        match (&self.q, self.exact) {
            (_, true) => "exact".into(),
            (Some(v), false) => format!("specialized q={v}"),
            (None, false) => "specialized q=2,3,5".into(),
        }
    }
}

fn print_json(value: &impl Serialize) {
    out!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn q_label(alg: &Algebra) -> String {
    alg.specialization().map_or("exact".into(), |v| v.to_string())
}

fn print_element(alg: &Algebra, x: &qmatrix::pbw::Element, json: bool) {
    if json {
        print_json(&json!({ "shape": alg.shape().to_string(), "q": q_label(alg), "element": x.to_string() }));
    } else {
        out!("{x}");
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Failure::Usage(format!("bad index '{t}': {e}"))))
        .collect()
}

fn report_suite(report: &SuiteReport, json: bool) -> CmdResult {
    if json {
        print_json(report);
    } else {
        for r in &report.results {
            let status = match r.status {
                verify::Status::Pass => "pass",
                verify::Status::Fail => "FAIL",
            };
            out!("{status}  {}  ({})", r.name, r.anchor);
            if r.status == verify::Status::Fail {
                if let Some(res) = &r.residual {
                    out!("      residual: {res}");
                }
                if let Some(err) = &r.error {
                    out!("      error: {err}");
                }
            }
        }
        let failed = report.failures().count();
        out!(
            "{} of {} passed ({}, q = {})",
            report.results.len() - failed,
            report.results.len(),
            report.shape,
            report.q
        );
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn load_manifest(path: &Option<PathBuf>) -> Result<Manifest, Failure> {
    Ok(match path {
        Some(p) => Manifest::load(p)?,
        None => Manifest::builtin(),
    })
}

fn parse_generator(text: &str, shape: Shape) -> Result<Gen, Failure> {
    match expr::parse(text)? {
        Expr::Gen(i, a) => Ok(shape.generator(i, a)?),
        _ => Err(Failure::Usage(format!("'{text}' is not a generator Y[i,a]"))),
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.cmd {
        Cmd::Nf { expr, shape } => {
            let alg = shape.algebra()?;
            print_element(&alg, &expr::evaluate(&expr, &alg)?, shape.json);
            Ok(())
        }
        Cmd::Minor { rows, cols, shape } => {
            let alg = shape.algebra()?;
            let id = MinorId::from_slices(&parse_list(&rows)?, &parse_list(&cols)?)?;
            print_element(&alg, &quantum_minor(&alg, &id)?, shape.json);
            Ok(())
        }
        Cmd::Det { shape } => {
            let alg = shape.algebra()?;
            print_element(&alg, &quantum_determinant(&alg)?, shape.json);
            Ok(())
        }
        Cmd::Verify { shape, manifest } => {
            let alg = shape.algebra()?;
            let manifest = load_manifest(&manifest)?;
            let records = manifest.for_shape(alg.shape());
            if records.is_empty() {
                return Err(Failure::Usage(format!("manifest has no records for {}", alg.shape())));
            }
            report_suite(&verify::run_records(&alg, &records), shape.json)
        }
        Cmd::Replay { q, manifest, json } => {
            let manifest = load_manifest(&manifest)?;
            report_suite(&verify::replay_n3_proof(&manifest, q)?, json)
        }
        Cmd::Center { solver, maxdeg } => center(&solver, maxdeg),
        Cmd::Derivations { solver, shift } => derivations(&solver, shift),
        Cmd::NormalCheck { expr, shape } => {
            let alg = shape.algebra()?;
            let x = expr::evaluate(&expr, &alg)?;
            match is_normal_qcentral(&alg, &x) {
                Ok(cert) => {
                    let verified = cert.verify(&alg)?;
                    if shape.json {
                        let mut v = serde_json::to_value(cert.report()).expect("serializable");
                        v["q_central"] = json!(true);
                        v["verified"] = json!(verified);
                        print_json(&v);
                    } else {
                        out!("q-central: {}", cert.element());
                        for t in cert.report().twists {
                            out!("  Y[{},{}]: q^{}", t.generator[0], t.generator[1], t.exponent);
                        }
                        if cert.is_central() {
                            out!("central");
                        }
                    }
                    if verified {
                        Ok(())
                    } else {
                        Err(Failure::Check)
                    }
                }
                Err(qmatrix::Error::NoUniformTwist(reason)) => {
                    if shape.json {
                        print_json(&json!({ "element": x.to_string(), "q_central": false, "reason": reason }));
                    } else {
                        out!("not q-central: {reason}");
                    }
                    Err(Failure::Check)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Twist { expr, generator, shape } => {
            let alg = shape.algebra()?;
            let x = expr::evaluate(&expr, &alg)?;
            let gens: Vec<Gen> = match &generator {
                Some(g) => vec![parse_generator(g, alg.shape())?],
                None => alg.shape().generators().collect(),
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for g in gens {
                let res = q_commutation_twist(&alg, &x, g);
                ok &= res.is_ok();
                rows.push((g, res));
            }
            if shape.json {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(g, r)| match r {
                        Ok(k) => json!({ "generator": [g.row, g.col], "exponent": k }),
                        Err(e) => json!({ "generator": [g.row, g.col], "error": e.to_string() }),
                    })
                    .collect();
                print_json(&json!({ "element": x.to_string(), "twists": v }));
            } else {
                for (g, r) in &rows {
                    match r {
                        Ok(k) => out!("{g}: q^{k}"),
                        Err(e) => out!("{g}: {e}"),
                    }
                }
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn center(solver: &SolverArgs, maxdeg: u32) -> CmdResult {
    let alg = Algebra::new(build_shape(solver.n, solver.m)?);
    let space = center_basis(&alg, maxdeg, &solver.mode()?)?;
    let basis = space_elements(&space);
    // The solver has already rejected non-central output; the residuals are
    // recomputed here so the report carries them.
    let residuals: Vec<Vec<String>> = basis
        .iter()
        .map(|x| {
            alg.shape()
                .generators()
                .map(|g| alg.commutator(x, &alg.gen(g)).map(|c| c.to_string()))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let all_zero = residuals.iter().flatten().all(|r| r == "0");
    if solver.json {
        print_json(&json!({
            "shape": alg.shape().to_string(),
            "maxdeg": maxdeg,
            "mode": solver.mode_name(),
            "dimension": space.dim(),
            "basis": basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "residuals": residuals,
        }));
    } else {
        out!("center of the {} algebra up to degree {maxdeg} ({}):", alg.shape(), solver.mode_name());
        out!("dimension {}", space.dim());
        for x in &basis {
            out!("  {x}");
        }
    }
    if all_zero {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[derive(Serialize)]
struct DerivationJson {
    images: Vec<DerivationImage>,
}

fn describe(ds: &[DerivationCandidate]) -> Vec<DerivationJson> {
    ds.iter().map(|d| DerivationJson { images: d.describe() }).collect()
}

fn derivations(solver: &SolverArgs, shift: i32) -> CmdResult {
    let alg = Algebra::new(build_shape(solver.n, solver.m)?);
    let space = graded_derivation_space(&alg, shift, &solver.mode()?)?;
    let basis = space_derivations(&space);
    let mut nonzero_residuals = 0;
    for d in &basis {
        nonzero_residuals += d.relation_residuals(&alg)?.iter().filter(|r| !r.is_zero()).count();
    }
    let comparison = match u32::try_from(shift) {
        Ok(s) => {
            let inner = inner_span(&alg, s)?;
            let cmp = compare_spaces(&space, &inner)?;
            let to_ds = |vs: &[Vec<qmatrix::coeff::RationalFunction>]| {
                vs.iter()
                    .map(|v| DerivationCandidate::from_vector(space.ambient(), v))
                    .collect::<Vec<_>>()
            };
            Some((inner.dim(), cmp.relation, to_ds(&cmp.only_in_first), to_ds(&cmp.only_in_second)))
        }
        Err(_) => None,
    };
    let mut ideal_failures = Vec::new();
    if alg.shape().is_square() {
        for (k, d) in basis.iter().enumerate() {
            for i in b_ideal_failures(&alg, d)? {
                ideal_failures.push(json!({ "basis_index": k, "b": i }));
            }
        }
    }
    if solver.json {
        let cmp = comparison.as_ref().map(|(dim, rel, a, b)| {
            json!({
                "inner_dimension": dim,
                "relation": rel,
                "only_in_solution": describe(a),
                "only_in_inner": describe(b),
            })
        });
        print_json(&json!({
            "shape": alg.shape().to_string(),
            "shift": shift,
            "mode": solver.mode_name(),
            "dimension": space.dim(),
            "basis": describe(&basis),
            "nonzero_relation_residuals": nonzero_residuals,
            "inner_comparison": cmp,
            "b_ideal_failures": ideal_failures,
        }));
    } else {
        out!(
            "derivations of the {} algebra of degree shift {shift} ({}): dimension {}",
            alg.shape(),
            solver.mode_name(),
            space.dim()
        );
        for (k, d) in basis.iter().enumerate() {
            out!("  d{k}:");
            for im in d.describe().iter().filter(|im| im.image != "0") {
                out!("    Y[{},{}] -> {}", im.generator[0], im.generator[1], im.image);
            }
        }
        if let Some((dim, rel, a, b)) = &comparison {
            out!("inner derivations span dimension {dim}; solution space is {rel} to it");
            out!("  witnesses: {} only in solution, {} only in inner span", a.len(), b.len());
        }
        if alg.shape().is_square() {
            out!("b_i ideal membership failures: {}", ideal_failures.len());
        }
    }
    if nonzero_residuals == 0 && ideal_failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
