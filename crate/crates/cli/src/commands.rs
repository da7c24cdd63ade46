use momlat_core::algebra::{normal_form, verify_symbolic_suite, Expression, SymbolicCheck};
use momlat_core::eigen::{
    eigen_equation_residual, eigenvector_closed_form, eigenvector_recurrence, normalization_closed_form,
    normalization_direct, truncated_spectrum, EigenResult,
};
use momlat_core::operators::{
    apply as apply_operator, continuum_scan, evaluate, gaussian, verify_identity_suite, ResidualReport,
    MIN_SUITE_POINTS,
};
use momlat_core::{Complex64, Error, GridFunction, MomentumLattice};
use serde_json::{json, Value};

use crate::args::{
    ApplyArgs, CheckArgs, ContinuumArgs, EigvecArgs, Format, LatticeArgs, SpectrumArgs, VerifyArgs, WellArgs,
};
use crate::output::{complex, csv_line, emit, grid_rows, num, real, to_json, write_file};
use crate::{CliError, Outcome};

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("--{name} must be a finite number, got {v}")))
    }
}

fn lattice_from(args: &LatticeArgs, min_points: usize) -> Result<MomentumLattice, CliError> {
    finite("p0", args.p0)?;
    if finite("a", args.a)? <= 0.0 {
        return Err(invalid(format!("a must be > 0, got {}", args.a)));
    }
    if args.n < min_points {
        return Err(invalid(format!("n must be ≥ {min_points}, got {}", args.n)));
    }
    Ok(MomentumLattice::new(args.p0, args.a, args.n)?)
}

fn tolerance(tol: f64) -> Result<f64, CliError> {
    if finite("tol", tol)? < 0.0 {
        return Err(invalid(format!("tol must be ≥ 0, got {tol}")));
    }
    Ok(tol)
}

struct SuiteRun {
    symbolic: Vec<SymbolicCheck>,
    numeric: Vec<ResidualReport>,
    tol: f64,
}

impl SuiteRun {
    fn new(lattice: MomentumLattice, tol: f64) -> Result<Self, CliError> {
        Ok(Self { symbolic: verify_symbolic_suite(), numeric: verify_identity_suite(lattice)?, tol })
    }

    fn numeric_ok(&self, r: &ResidualReport) -> bool {
        r.max_interior_residual < self.tol
    }

    fn pass(&self) -> bool {
        self.symbolic.iter().all(|c| c.zero) && self.numeric.iter().all(|r| self.numeric_ok(r))
    }

    fn csv(&self) -> String {
        let mut out = csv_line(&["identity".into(), "zero".into(), "normal_form_term_count".into()]);
        for c in &self.symbolic {
            out += &csv_line(&[c.identity.clone(), c.zero.to_string(), c.normal_form_term_count.to_string()]);
        }
        out.push('\n');
        out += &csv_line(&["identity".into(), "margin".into(), "residual".into(), "pass".into()]);
        for r in &self.numeric {
            out += &csv_line(&[
                r.identity_name.clone(),
                r.margin_rows.to_string(),
                real(r.max_interior_residual),
                self.numeric_ok(r).to_string(),
            ]);
        }
        out
    }

    fn json(&self) -> Value {
        let symbolic: Vec<Value> = self
            .symbolic
            .iter()
            .map(|c| {
                json!({
                    "identity": c.identity,
                    "zero": c.zero,
                    "normal_form_term_count": c.normal_form_term_count,
                })
            })
            .collect();
        let numeric: Vec<Value> = self
            .numeric
            .iter()
            .map(|r| {
                json!({
                    "identity": r.identity_name,
                    "margin": r.margin_rows,
                    "residual": num(r.max_interior_residual),
                    "pass": self.numeric_ok(r),
                })
            })
            .collect();
        json!({ "symbolic": symbolic, "numeric": numeric, "tol": num(self.tol), "pass": self.pass() })
    }

    fn report_summary(&self) -> Outcome {
        let failing = self.symbolic.iter().filter(|c| !c.zero).count()
            + self.numeric.iter().filter(|r| !self.numeric_ok(r)).count();
        let total = self.symbolic.len() + self.numeric.len();
        if failing == 0 {
            eprintln!("PASS: {total} checks, tol {}", real(self.tol));
            Outcome::Pass
        } else {
            eprintln!("FAIL: {failing} of {total} checks, tol {}", real(self.tol));
            Outcome::Fail
        }
    }
}

fn lattice_json(l: &MomentumLattice) -> Value {
    json!({ "p0": num(l.p0()), "a": num(l.spacing()), "n": l.n_points() })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let lattice = lattice_from(&args.lattice, MIN_SUITE_POINTS)?;
    let run = SuiteRun::new(lattice, tolerance(args.tol)?)?;
    let text = match args.output.format {
        Format::Csv => run.csv(),
        Format::Json => {
            let mut v = run.json();
            v["lattice"] = lattice_json(&lattice);
            to_json(&v)
        }
    };
    emit(&args.output, &text)?;
    Ok(run.report_summary())
}

/// Parse errors point at the offending character.
fn parse_expression(text: &str) -> Result<Expression, CliError> {
    text.parse::<Expression>().map_err(|e| {
        let offset = match &e {
            Error::Syntax { offset, .. } | Error::UnknownIdentifier { offset, .. } => Some(*offset),
            _ => None,
        };
        match offset {
            Some(at) => {
                let column = text.get(..at.min(text.len())).map_or(at, |s| s.chars().count());
                invalid(format!("{e}\n  {text}\n  {}^", " ".repeat(column)))
            }
            None => CliError::Core(e),
        }
    })
}

pub fn check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let expr = parse_expression(&args.expr)?;
    let nf = normal_form(&expr)?;
    let verdict = if nf.is_zero() { "ZERO" } else { "NONZERO" };
    let text = match args.output.format {
        Format::Csv => format!("{nf}\n{verdict}\n"),
        Format::Json => to_json(&json!({
            "expression": args.expr,
            "normal_form": nf.to_string(),
            "term_count": nf.term_count(),
            "zero": nf.is_zero(),
        })),
    };
    emit(&args.output, &text)?;
    Ok(if nf.is_zero() { Outcome::Pass } else { Outcome::Fail })
}

/// `max_j |u_j - v_j| / max_j |v_j|`.
fn relative_deviation(u: &GridFunction, v: &GridFunction) -> f64 {
    let worst = u.values().iter().zip(v.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let scale = v.max_abs();
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}

pub fn eigvec(args: &EigvecArgs) -> Result<Outcome, CliError> {
    let lattice = lattice_from(&args.lattice, 1)?;
    let x = finite("x", args.x)?;
    let phi0 = Complex64::from_polar(1.0, finite("phase", args.phase)?);
    let recurrence = eigenvector_recurrence(lattice, x, phi0)?;
    // At the band edge the closed form divides by zero; the recurrence is
    // still well defined there.
    let (chosen, max_dev): (EigenResult, Option<f64>) = match eigenvector_closed_form(lattice, x, phi0) {
        Ok(cf) => {
            let dev = relative_deviation(&recurrence.phi, &cf.phi);
            (cf, Some(dev))
        }
        Err(Error::OutsideBand(_)) | Err(Error::Degenerate(_)) => (recurrence.clone(), None),
        Err(e) => return Err(e.into()),
    };
    let s = normalization_direct(&chosen)?;
    let normalized = EigenResult { phi: chosen.phi.scaled(Complex64::new(s, 0.0)), ..chosen };
    let literal = normalization_closed_form(x, lattice.spacing(), lattice.n_points()).ok();
    let residual = eigen_equation_residual(&normalized)?;

    let summary = json!({
        "x": num(x),
        "p0": num(lattice.p0()),
        "a": num(lattice.spacing()),
        "n": lattice.n_points(),
        "phase": num(args.phase),
        "method": normalized.method.as_str(),
        "phi0": complex(normalized.phi.values()[0]),
        "normalization_direct": num(s),
        "normalization_literal": literal.map_or(Value::Null, num),
        "max_dev": max_dev.map_or(Value::Null, num),
        "eigen_equation_residual": num(residual),
    });
    let text = match args.output.format {
        Format::Csv => normalized.phi.to_csv(),
        Format::Json => {
            let mut full = summary.clone();
            full["phi"] = grid_rows(&normalized.phi);
            to_json(&full)
        }
    };
    emit(&args.output, &text)?;
    if let Some(path) = &args.summary {
        write_file(path, &to_json(&summary))?;
    }
    Ok(Outcome::Pass)
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Outcome, CliError> {
    let lattice = lattice_from(&args.lattice, 1)?;
    let eigenvalues = truncated_spectrum(lattice);
    let text = match args.output.format {
        Format::Csv => {
            let mut out = csv_line(&["k".into(), "eigenvalue".into()]);
            for (k, v) in eigenvalues.iter().enumerate() {
                out += &csv_line(&[k.to_string(), real(*v)]);
            }
            out
        }
        Format::Json => to_json(&json!({
            "a": num(lattice.spacing()),
            "n": lattice.n_points(),
            "eigenvalues": eigenvalues.iter().map(|v| num(*v)).collect::<Vec<_>>(),
        })),
    };
    emit(&args.output, &text)?;
    Ok(Outcome::Pass)
}

fn parse_window(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || invalid(format!("window must look like lo:hi, got `{text}`"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

pub fn continuum(args: &ContinuumArgs) -> Result<Outcome, CliError> {
    let window = parse_window(&args.window)?;
    let table = continuum_scan(&args.spacings, gaussian, window)?;
    let text = match args.output.format {
        Format::Csv => {
            let mut out = csv_line(&["a".into(), "r".into(), "log_a".into(), "log_r".into()]);
            for row in &table.rows {
                out += &csv_line(&[real(row.a), real(row.r), real(row.log_a), real(row.log_r)]);
            }
            out += &csv_line(&["slope".into(), real(table.slope)]);
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| json!({ "a": num(r.a), "r": num(r.r), "log_a": num(r.log_a), "log_r": num(r.log_r) }))
                .collect();
            to_json(&json!({
                "window": [num(window.0), num(window.1)],
                "rows": rows,
                "ratios": table.ratios().into_iter().map(num).collect::<Vec<_>>(),
                "slope": num(table.slope),
            }))
        }
    };
    emit(&args.output, &text)?;
    Ok(Outcome::Pass)
}

pub fn well(args: &WellArgs) -> Result<Outcome, CliError> {
    if finite("L", args.length)? <= 0.0 {
        return Err(invalid(format!("L must be > 0, got {}", args.length)));
    }
    if finite("hbar", args.hbar)? <= 0.0 {
        return Err(invalid(format!("hbar must be > 0, got {}", args.hbar)));
    }
    if args.levels < MIN_SUITE_POINTS {
        return Err(invalid(format!("levels must be ≥ {MIN_SUITE_POINTS}, got {}", args.levels)));
    }
    let lattice = MomentumLattice::square_well(args.length, args.levels, args.hbar)?;
    let run = SuiteRun::new(lattice, tolerance(args.tol)?)?;
    let text = match args.output.format {
        Format::Csv => {
            let mut out = csv_line(&["p0".into(), "a".into(), "levels".into()]);
            out += &csv_line(&[real(lattice.p0()), real(lattice.spacing()), lattice.n_points().to_string()]);
            out.push('\n');
            out + &run.csv()
        }
        Format::Json => {
            let mut v = run.json();
            v["lattice"] = json!({
                "p0": num(lattice.p0()),
                "a": num(lattice.spacing()),
                "levels": lattice.n_points(),
                "L": num(args.length),
                "hbar": num(args.hbar),
            });
            to_json(&v)
        }
    };
    emit(&args.output, &text)?;
    Ok(run.report_summary())
}

pub fn apply(args: &ApplyArgs) -> Result<Outcome, CliError> {
    let text = if args.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|source| CliError::Io { path: "<stdin>".into(), source })?
    } else {
        std::fs::read_to_string(&args.input)
            .map_err(|source| CliError::Io { path: args.input.display().to_string(), source })?
    };
    let f = GridFunction::from_csv(&text, args.a)?;
    let op = evaluate(&parse_expression(&args.op)?, *f.lattice())?;
    let g = apply_operator(&op, &f)?;
    let out = match args.output.format {
        Format::Csv => g.to_csv(),
        Format::Json => to_json(&json!({
            "op": args.op,
            "lattice": lattice_json(g.lattice()),
            "values": grid_rows(&g),
        })),
    };
    emit(&args.output, &out)?;
    Ok(Outcome::Pass)
}
