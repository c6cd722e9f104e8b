mod args;
mod error;
mod report;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use biext_core::degeneration::{
    beta1_samples, beta_reference, decade_schedule, exponential_schedule, faltings_reference,
    fit_asymptotics_with, incommensurability_check, log_spaced, vanishing_order_slope, Boundary,
    DegenerationPath, FitTerms, Sample,
};
use biext_core::heisenberg::{dehn_twist_central_charge, SeparatingCurve};
use biext_core::modular::SiegelPoint;
use biext_core::picard::{chern_biextension, solve_r0};
use biext_core::repcheck::{dimension_terms, invariant_dim, Side};
use biext_core::symplectic::{q_form, Genus, VClass, Wedge3};
use clap::Parser;
use serde_json::{json, Value};

use args::{Beta2Args, Cli, Command, PathArg, SideArg, XWindow};
use error::{input_error, io_error, CliError};
use report::{big_value, Report};

type Result<T> = std::result::Result<T, CliError>;

fn genus(g: u32) -> Result<Genus> {
    Ok(Genus::new(g)?)
}

fn to_value(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn read_wedge(path: &Path) -> Result<Wedge3> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| input_error(path, e))
}

fn window_schedule(w: &XWindow) -> Result<(Vec<f64>, Value)> {
    let xs = log_spaced(w.x_min, w.x_max, w.count)?;
    let schedule = json!({"t": "exp(-x)", "x_spacing": "log", "x_min": w.x_min, "x_max": w.x_max, "count": w.count});
    Ok((exponential_schedule(&xs), schedule))
}

fn beta2_sweep(a: &Beta2Args) -> Result<Report> {
    match a.path {
        PathArg::Fay => {
            let (log_t, mut schedule) = window_schedule(&a.window)?;
            schedule["path"] = "fay".into();
            schedule["omega0"] = json!([a.omega0.0.re, a.omega0.0.im]);
            schedule["v"] = json!([a.v.0.re, a.v.0.im]);
            let path = DegenerationPath::fay(SiegelPoint::scalar(a.omega0.0)?, vec![a.v.0], log_t)?;
            let samples = path.beta2_samples()?;
            let fit = fit_asymptotics_with(&samples, FitTerms::FULL)?;
            Ok(Report::new("beta2-sweep")
                .schedule(schedule)
                .field("fit", to_value(fit))
                .samples(samples))
        }
        PathArg::Reducible => {
            let log_t = decade_schedule(a.k_min, a.k_max, a.per_decade)?;
            let schedule = json!({
                "path": "reducible", "t": "10^-k", "k_min": a.k_min, "k_max": a.k_max,
                "per_decade": a.per_decade, "tau1": [a.tau1.0.re, a.tau1.0.im], "tau2": [a.tau2.0.re, a.tau2.0.im],
            });
            let path = DegenerationPath::reducible(a.tau1.0, a.tau2.0, log_t)?;
            let samples = path.beta2_samples()?;
            let chi_order = vanishing_order_slope(&path.chi10_log_samples()?)?;
            let beta_slope = vanishing_order_slope(&samples)?;
            Ok(Report::new("beta2-sweep")
                .schedule(schedule)
                .field("chi10_vanishing_order", chi_order)
                .field("beta2_log_slope", beta_slope)
                .samples(samples))
        }
    }
}

fn read_samples(path: &Path) -> Result<Vec<Sample>> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| input_error(path, e))?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let value = col("value").ok_or_else(|| input_error(path, "missing column \"value\""))?;
    // log_t is authoritative: t itself may have underflowed when written.
    let (t_col, is_log) = match (col("log_t"), col("t")) {
        (Some(i), _) => (i, true),
        (None, Some(i)) => (i, false),
        _ => return Err(input_error(path, "need a \"log_t\" or \"t\" column")),
    };
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| input_error(path, e))?;
        let num = |i: usize| -> Result<f64> {
            let cell = rec.get(i).unwrap_or("");
            cell.parse::<f64>()
                .map_err(|e| input_error(path, format!("row {}: {cell:?}: {e}", line + 1)))
        };
        let (t, v) = (num(t_col)?, num(value)?);
        out.push(if is_log {
            Sample::new(t, v)
        } else {
            Sample::from_t(t, v)
        });
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Report> {
    Ok(match &cli.command {
        Command::Tau { g, h } => {
            let curve = SeparatingCurve::new(genus(*g)?, *h)?;
            let charge = dehn_twist_central_charge(&curve)?;
            Report::new("tau")
                .field("genus", *g)
                .field("h", *h)
                .merge(to_value(charge))
        }
        Command::Qform { u, v } => {
            let (a, b) = (VClass::new(read_wedge(u)?), VClass::new(read_wedge(v)?));
            let q = q_form(&a, &b)?;
            Report::new("qform")
                .field("genus", a.genus().get())
                .field("q", big_value(&q))
        }
        Command::Invariants { g, p, side } => {
            let gg = genus(*g)?;
            let mut r = Report::new("invariants")
                .field("genus", *g)
                .field("p", *p)
                .field("ambient_dim", gg.wedge3_dim());
            if matches!(side, SideArg::Invariants | SideArg::Both) {
                r = r.field("invariants", invariant_dim(gg, *p, Side::Invariants)?);
            }
            if matches!(side, SideArg::CoinvariantDual | SideArg::Both) {
                r = r.field(
                    "coinvariant_dual",
                    invariant_dim(gg, *p, Side::CoinvariantDual)?,
                );
            }
            r
        }
        Command::Dimid { g } => {
            let (lhs, rhs) = dimension_terms(genus(*g)?)?;
            Report::new("dimid")
                .field("genus", *g)
                .field("lhs", lhs)
                .field("rhs", rhs)
                .field("holds", lhs == rhs)
        }
        Command::Beta1Sweep(w) => {
            let (log_t, schedule) = window_schedule(w)?;
            let samples = beta1_samples(&log_t)?;
            let fit = fit_asymptotics_with(&samples, FitTerms::FULL)?;
            Report::new("beta1-sweep")
                .schedule(schedule)
                .field("fit", to_value(fit))
                .samples(samples)
        }
        Command::Beta2Sweep(a) => beta2_sweep(a)?,
        Command::Fit {
            input,
            no_log,
            no_loglog,
            no_const,
        } => {
            let samples = read_samples(input)?;
            let terms = FitTerms {
                log: !no_log,
                loglog: !no_loglog,
                constant: !no_const,
            };
            let fit = fit_asymptotics_with(&samples, terms)?;
            Report::new("fit")
                .field("samples", samples.len())
                .merge(to_value(fit))
        }
        Command::Chern { g } => {
            let class = chern_biextension(genus(*g)?)?;
            Report::new("chern")
                .field("genus", *g)
                .field("class", to_value(&class))
                .field("display", class.to_string())
        }
        Command::SolveR0 { g } => Report::new("solve-r0")
            .field("genus", *g)
            .merge(to_value(solve_r0(genus(*g)?)?)),
        Command::Faltings { g, h } => {
            let boundary = h.map_or(Boundary::Delta0, Boundary::DeltaH);
            let (log, loglog) = faltings_reference(genus(*g)?, boundary)?;
            Report::new("faltings")
                .field("genus", *g)
                .field("boundary", to_value(boundary))
                .field("log", log.to_string())
                .field("loglog", loglog.to_string())
        }
        Command::Incommensurable { g } => {
            let gg = genus(*g)?;
            let result = incommensurability_check(gg)?;
            let (mut beta, mut faltings) = (Vec::new(), Vec::new());
            for b in Boundary::all(gg) {
                let (l, ll) = beta_reference(gg, b)?;
                beta.push(json!({"boundary": to_value(b), "log": l.to_string(), "loglog": ll.to_string()}));
                let (l, ll) = faltings_reference(gg, b)?;
                faltings.push(json!({"boundary": to_value(b), "log": l.to_string(), "loglog": ll.to_string()}));
            }
            Report::new("incommensurable")
                .field("genus", *g)
                .field("incommensurable", result)
                .field("beta", beta)
                .field("faltings", faltings)
        }
    })
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = report.render(cli.format);
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| io_error(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    println!(
        "{}",
        serde_json::to_string_pretty(&e.to_json()).expect("error JSON")
    );
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(first_line(&e.to_string()))),
    };
    match run(&cli).and_then(|r| emit(&cli, &r)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .next()
        .unwrap_or("")
        .trim_start_matches("error: ")
        .to_string()
}
