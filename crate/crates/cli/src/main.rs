//! `qeuclid`: build, verify and inspect representations of the q-deformed Euclidean algebra.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qeuclid::algebra::{parse, Rewriter, Strategy};
use qeuclid::classical::{self, ClassicalMomentum, TestFunction};
use qeuclid::rep::{casimir_omega1_expr, dump_operator, projected_omega_expr, Rep, RepConfig, TruncationWindow};
use qeuclid::verify::{self, IdentityReport};
use qeuclid::{tensor, Dimension, Error};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qeuclid", version, about = "Representations of the q-deformed Euclidean algebra U_q(e^N)")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Kv)]
    format: Format,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Kv,
}

#[derive(Args, Clone)]
struct RepArgs {
    /// Dimension N >= 3.
    #[arg(long = "N")]
    n: usize,
    /// Deformation parameter 0 < q < 1; a comma-separated list runs a sweep.
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    q: Vec<f64>,
    /// Momentum scale M > 0.
    #[arg(long = "M", default_value_t = 1.0)]
    m: f64,
    /// Spin label of the N = 3 irrep (0 is the singlet).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    w: i32,
    /// Sign of the p^0 eigenvalues for odd N.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    p0_sign: i32,
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// Upper bound for pi_h..pi_{n-1}.
    #[arg(long, default_value_t = 4)]
    pmax: i32,
    /// pi_n ranges over [-pn, pn].
    #[arg(long, default_value_t = 2)]
    pn: i32,
    /// Lower bound for every j_i.
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    jmin: i32,
    /// Upper bound for j_1 when N is even (default -jmin).
    #[arg(long, allow_hyphen_values = true)]
    j1max: Option<i32>,
}

impl WindowArgs {
    fn window(&self, dim: Dimension) -> TruncationWindow {
        let mut w = TruncationWindow::uniform(dim, self.pmax, self.pn, self.jmin);
        if let Some(j) = self.j1max {
            w.j1max = j;
        }
        w
    }

    fn label(&self) -> String {
        format!("pmax={};pn={};jmin={}", self.pmax, self.pn, self.jmin)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Relation, star and Casimir suites; exit 1 if any residual exceeds the tolerance.
    ///
    /// Columns: suite, id, q, window, interior, max_abs, max_rel, status.
    Verify {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        win: WindowArgs,
        /// Relative tolerance.
        #[arg(long, env = "QEUCLID_TOL", default_value_t = 1e-10)]
        tol: f64,
    },
    /// Eigenvalues and multiplicities of the complete set of observables.
    ///
    /// Columns: q, observable, eigenvalue, multiplicity. PT lines: q, i, min_j, floor, upper_bounded.
    Spectrum {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        win: WindowArgs,
    },
    /// Scalarity of Omega_1 per pi_n sector (N = 3, 4).
    ///
    /// Columns: q, pi_n, lambda, deviation, states. With --projected the N = 3 pi = 0
    /// projection is used with prefactor q^{e2/2}.
    Casimir {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        win: WindowArgs,
        /// Use the projected operator on the pi = 0 sector.
        #[arg(long)]
        projected: bool,
        /// Exponent e2 of the projected prefactor q^{e2/2}.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e2: i32,
        #[arg(long, env = "QEUCLID_TOL", default_value_t = 1e-10)]
        tol: f64,
    },
    /// Delta-convergence table of the classical limit.
    ///
    /// Columns: q, integral, error, pi_h..pi_n, alpha.
    Limit {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "M", default_value_t = 1.0)]
        m: f64,
        /// Classical momentum mu_h..mu_n, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<f64>,
        /// Test function.
        #[arg(long, value_enum, default_value_t = TestKind::Gaussian)]
        f: TestKind,
        /// Gaussian width.
        #[arg(long, default_value_t = 0.1)]
        width: f64,
        /// Gaussian center (default mu).
        #[arg(long, value_delimiter = ',')]
        center: Vec<f64>,
        /// Constant value, or polynomial coefficients c_0, c_1, .. in the component sum.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<f64>,
        /// q values; default 1 - 2^{-k} for k in kmin..=kmax.
        #[arg(long, value_delimiter = ',')]
        qs: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        kmin: i32,
        #[arg(long, default_value_t = 12)]
        kmax: i32,
        /// Gauss-Legendre nodes per ratio coordinate.
        #[arg(long, default_value_t = classical::DEFAULT_NODES)]
        nodes: usize,
    },
    /// Predicted highest weights of singlet x so(N) irrep u; N = 3 optionally checks multiplicities.
    ///
    /// Columns: l, l', weight.
    Decompose {
        #[arg(long = "N")]
        n: usize,
        /// Highest weight u, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<i32>,
        /// Run the N = 3 weight multiplicity check on the window.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        #[command(flatten)]
        win: WindowArgs,
    },
    /// Prints the normal form of an expression.
    NormalOrder {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
        /// Expression, e.g. "pm1*p0".
        expr: String,
    },
    /// Dumps the matrix of an expression on the window.
    DumpOp {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        win: WindowArgs,
        /// Expression to represent.
        symbol: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TestKind {
    Constant,
    Gaussian,
    Polynomial,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

/// Failure modes mapped to exit codes.
enum Fail {
    Verification(String),
    Precondition(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Precondition(e.to_string())
    }
}

/// Rows of key/value pairs rendered as CSV or `k=v` records.
struct Table {
    cols: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: AsRef<str>>(cols: &[S]) -> Self {
        Table { cols: cols.iter().map(|c| c.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.cols.len());
        self.rows.push(row);
    }

    fn render(&self, fmt: Format, out: &mut String) {
        match fmt {
            Format::Csv => {
                let _ = writeln!(out, "{}", self.cols.join(","));
                for r in &self.rows {
                    let _ = writeln!(out, "{}", r.join(","));
                }
            }
            Format::Kv => {
                for r in &self.rows {
                    let line: Vec<String> = self.cols.iter().zip(r).map(|(c, v)| format!("{c}={v}")).collect();
                    let _ = writeln!(out, "{}", line.join(" "));
                }
            }
        }
    }
}

fn build_rep(a: &RepArgs, win: &WindowArgs, q: f64) -> Result<Rep, Fail> {
    let cfg = RepConfig::new(a.n, q, a.m, a.w)?.with_p0_sign(a.p0_sign)?;
    let window = win.window(cfg.dim);
    Ok(Rep::new(cfg, &window)?)
}

fn check_qs(qs: &[f64]) -> Result<(), Fail> {
    if qs.is_empty() {
        return Err(Fail::Precondition("at least one q value is required".into()));
    }
    Ok(())
}

fn report_row(suite: &str, q: f64, win: &str, r: &IdentityReport, tol: f64) -> Vec<String> {
    let ok = r.relative() < tol;
    vec![
        suite.into(),
        r.id.replace(' ', ""),
        q.to_string(),
        win.into(),
        r.interior_states.to_string(),
        format!("{:e}", r.max_abs),
        format!("{:e}", r.relative()),
        if ok { "ok" } else { "FAIL" }.into(),
    ]
}

fn verify_one(rep_args: &RepArgs, win: &WindowArgs, q: f64, tol: f64) -> Result<(Vec<Vec<String>>, usize), Fail> {
    let rep = build_rep(rep_args, win, q)?;
    let label = win.label();
    let mut rows = Vec::new();
    let mut failures = 0;
    let mut push = |suite: &str, r: &IdentityReport, rows: &mut Vec<Vec<String>>| {
        if !(r.relative() < tol) {
            failures += 1;
        }
        rows.push(report_row(suite, q, &label, r, tol));
    };
    for r in &verify::relation_residual_suite(&rep)?.reports {
        push("relations", r, &mut rows);
    }
    for r in &verify::star_suite(&rep)?.reports {
        push("star", r, &mut rows);
    }
    if matches!(rep.dim().big_n(), 3 | 4) {
        let om = casimir_omega1_expr(rep.dim())?;
        let sc = verify::casimir_scalarity(&rep, &om)?;
        for s in &sc.sectors {
            let r = IdentityReport {
                id: format!("Omega1-scalar[pi_n={}]", s.pi_n),
                max_abs: s.deviation * s.scale,
                scale: s.scale,
                interior_states: s.states,
            };
            push("casimir", &r, &mut rows);
        }
        for r in &verify::casimir_commutators(&rep, &om)? {
            push("casimir", r, &mut rows);
        }
    }
    Ok((rows, failures))
}

fn run(cli: Cli) -> Result<(), Fail> {
    let fmt = cli.format;
    let mut out = String::new();
    match cli.cmd {
        Command::Verify { rep, win, tol } => {
            check_qs(&rep.q)?;
            let results: Vec<Result<(Vec<Vec<String>>, usize), Fail>> =
                rep.q.par_iter().map(|&q| verify_one(&rep, &win, q, tol)).collect();
            let mut t = Table::new(&["suite", "id", "q", "window", "interior", "max_abs", "max_rel", "status"]);
            let mut failures = 0;
            for r in results {
                let (rows, f) = r?;
                failures += f;
                for row in rows {
                    t.push(row);
                }
            }
            let total = t.rows.len();
            t.render(fmt, &mut out);
            if failures > 0 {
                emit(&cli.output, &out)?;
                return Err(Fail::Verification(format!("{failures} of {total} checks exceed tolerance {tol:e}")));
            }
        }
        Command::Spectrum { rep, win } => {
            check_qs(&rep.q)?;
            let tables: Vec<Result<(f64, verify::SpectrumTable, i32), Fail>> = rep
                .q
                .par_iter()
                .map(|&q| {
                    let r = build_rep(&rep, &win, q)?;
                    Ok((q, verify::spectrum_report(&r)?, win.jmin))
                })
                .collect();
            let mut t = Table::new(&["q", "observable", "eigenvalue", "multiplicity"]);
            let mut pt = Table::new(&["q", "i", "min_j", "floor", "upper_bounded"]);
            for r in tables {
                let (q, tab, floor) = r?;
                for o in &tab.observables {
                    for (v, k) in &o.values {
                        t.push(vec![q.to_string(), o.name.clone(), v.to_string(), k.to_string()]);
                    }
                }
                for (i, m, b) in &tab.pt_bounds {
                    pt.push(vec![q.to_string(), i.to_string(), m.to_string(), floor.to_string(), b.to_string()]);
                }
            }
            t.render(fmt, &mut out);
            pt.render(fmt, &mut out);
        }
        Command::Casimir { rep, win, projected, e2, tol } => {
            check_qs(&rep.q)?;
            let dim = Dimension::new(rep.n)?;
            let (op, win) = if projected {
                if rep.n != 3 {
                    return Err(Fail::Precondition("--projected needs N = 3".into()));
                }
                (projected_omega_expr(e2)?, WindowArgs { pmax: 0, ..win })
            } else {
                (casimir_omega1_expr(dim)?, win)
            };
            let mut t = Table::new(&["q", "pi_n", "lambda", "deviation", "states"]);
            let mut worst: f64 = 0.0;
            for &q in &rep.q {
                let r = build_rep(&rep, &win, q)?;
                let sc = verify::casimir_scalarity(&r, &op)?;
                for s in &sc.sectors {
                    worst = worst.max(s.deviation);
                    t.push(vec![
                        q.to_string(),
                        s.pi_n.to_string(),
                        s.lambda.to_string(),
                        format!("{:e}", s.deviation),
                        s.states.to_string(),
                    ]);
                }
            }
            t.render(fmt, &mut out);
            if !(worst < tol) {
                emit(&cli.output, &out)?;
                return Err(Fail::Verification(format!("not scalar: deviation {worst:e} exceeds {tol:e}")));
            }
        }
        Command::Limit { n, m, mu, f, width, center, coeffs, qs, kmin, kmax, nodes } => {
            let dim = Dimension::new(n)?;
            let mom = ClassicalMomentum::new(dim, m, mu.clone())?;
            let func = match f {
                TestKind::Constant => TestFunction::Constant(coeffs.first().copied().unwrap_or(1.0)),
                TestKind::Gaussian => {
                    if !(width > 0.0) {
                        return Err(Fail::Precondition("gaussian width must be positive".into()));
                    }
                    let center = if center.is_empty() { mu.clone() } else { center };
                    if center.len() != mu.len() {
                        return Err(Fail::Precondition("gaussian center needs one entry per mu component".into()));
                    }
                    TestFunction::Gaussian { center, width }
                }
                TestKind::Polynomial => {
                    if coeffs.is_empty() {
                        return Err(Fail::Precondition("polynomial needs --coeffs".into()));
                    }
                    TestFunction::Polynomial(coeffs)
                }
            };
            let qs = if qs.is_empty() { classical::q_sequence(kmin, kmax) } else { qs };
            check_qs(&qs)?;
            let rows = classical::delta_convergence(&func, &mom, &qs, nodes)?;
            let h = dim.h();
            let mut cols: Vec<String> = vec!["q".into(), "integral".into(), "error".into()];
            cols.extend((h..=dim.n()).map(|i| format!("pi{i}")));
            cols.push("alpha".into());
            let mut t = Table::new(&cols);
            for r in rows {
                let mut row = vec![r.q.to_string(), r.integral.to_string(), format!("{:e}", r.error)];
                row.extend(r.pi_tilde.iter().map(|p| p.to_string()));
                row.push(r.alpha.to_string());
                t.push(row);
            }
            t.render(fmt, &mut out);
        }
        Command::Decompose { n, u, check, q, win } => {
            let dim = Dimension::new(n)?;
            let comps = tensor::predicted_highest_weights(&u, dim)?;
            let mut t = Table::new(&["l", "lp", "weight"]);
            for c in &comps {
                let w: Vec<String> = c.weight.iter().map(|x| x.to_string()).collect();
                t.push(vec![c.labels.0.to_string(), c.labels.1.to_string(), w.join(";")]);
            }
            t.render(fmt, &mut out);
            let _ = writeln!(out, "# components {}", comps.len());
            if check {
                if n != 3 {
                    return Err(Fail::Precondition("--check needs N = 3".into()));
                }
                let cfg = RepConfig::new(3, q, 1.0, 0)?;
                let rep = Rep::new(cfg, &win.window(dim))?;
                let rep_u = u[0];
                let r = tensor::weight_multiplicity_check(&rep, rep_u)?;
                let mut s = Table::new(&["pi", "tops", "offsets", "consistent"]);
                for sec in &r.sectors {
                    let j = |v: &[i32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
                    let offs: Vec<i32> = sec.offsets.iter().map(|o| o.1).collect();
                    s.push(vec![j(&sec.pi), j(&sec.tops), j(&offs), sec.consistent.to_string()]);
                }
                s.render(fmt, &mut out);
                if !r.consistent() {
                    emit(&cli.output, &out)?;
                    return Err(Fail::Verification("weight multiplicities are inconsistent".into()));
                }
            }
        }
        Command::NormalOrder { n, strategy, expr } => {
            let dim = Dimension::new(n)?;
            let e = parse(&expr, dim)?;
            let rw = Rewriter::new(dim);
            let s = match strategy {
                StrategyArg::Leftmost => Strategy::Leftmost,
                StrategyArg::Rightmost => Strategy::Rightmost,
            };
            let _ = writeln!(out, "{}", rw.normal_order_with(&e, s)?);
        }
        Command::DumpOp { rep, win, symbol } => {
            check_qs(&rep.q)?;
            if rep.q.len() != 1 {
                return Err(Fail::Precondition("dump-op takes a single q value".into()));
            }
            let r = build_rep(&rep, &win, rep.q[0])?;
            let e = parse(&symbol, r.dim())?;
            let op = r.build(&e)?;
            out.push_str(&dump_operator(&r, &symbol, &op));
        }
    }
    emit(&cli.output, &out)
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Fail::Precondition(format!("cannot write output file {}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            let _ = so.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: cannot start {j} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
