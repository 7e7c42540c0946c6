use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::json;

use permcode::ilp::{
    bound_report, build_coset_ilp, export_lp, export_matrix, ilp_solve, literature_lower_bound, MatrixFormat,
    SolveConfig, SolveStatus,
};
use permcode::perfect::{
    conjecture_check, obstruction_coset, obstruction_irreps, Conclusion, ConstituentList, ObstructionOptions,
    ObstructionReport,
};
use permcode::perm::{ball, ball_size, exhaustive_max_code, kendall_distance, min_distance, Code, Permutation};
use permcode::young::{build_action_matrix, NumberPartition};
use permcode::{Error, Result};

use crate::config::{CliConfig, Settings};
use crate::output::{scalar, Output};
use crate::{Cli, Command, IlpMode, ListArg, MatrixFormatArg, PerfectRoute};

/// Runs the parsed command and returns the process exit status.
pub fn run(cli: &Cli) -> Result<u8> {
    let file = match &cli.global.config {
        Some(path) => CliConfig::load(path)?,
        None => CliConfig::default(),
    };
    let settings = cli.global.as_config().or(file).resolve()?;
    let (output, code) = match &cli.command {
        Command::Distance { first, second } => (distance(first, second)?, 0),
        Command::Ball { center, radius, count } => (ball_cmd(center, *radius, *count, &settings)?, 0),
        Command::Verify { file, d } => verify(file, *d)?,
        Command::Oracle { n, d } => (oracle(*n, *d, &settings)?, 0),
        Command::Matrix {
            n,
            shape,
            matrix_format,
            out,
        } => (matrix(*n, shape, *matrix_format, out.as_deref(), &settings)?, 0),
        Command::Ilp { mode } => match mode {
            IlpMode::Solve { n, shape, cut_rounds } => ilp(*n, shape, *cut_rounds, &settings)?,
            IlpMode::Export { n, shape, out } => (export(*n, shape, out.as_deref(), &settings)?, 0),
        },
        Command::Bound { n, shapes, cut_rounds } => (bound(*n, shapes, *cut_rounds, &settings)?, 0),
        Command::Perfect { route } => perfect(route, &settings)?,
    };
    if let Some(output) = output {
        let stdout = io::stdout();
        output.write(settings.format, stdout.lock())?;
    }
    Ok(code)
}

fn parse_shape(n: usize, text: &str) -> Result<NumberPartition> {
    let shape: NumberPartition = text.parse()?;
    if shape.n() != n {
        return Err(Error::InvalidPartition(format!("{shape} is not a partition of {n}")));
    }
    Ok(shape)
}

fn solve_config(settings: &Settings, cut_rounds: usize) -> SolveConfig {
    SolveConfig {
        time_limit: settings.time_limit,
        threads: settings.threads,
        cut_rounds,
        ..Default::default()
    }
}

fn distance(first: &str, second: &str) -> Result<Option<Output>> {
    let p: Permutation = first.parse()?;
    let q: Permutation = second.parse()?;
    let d = kendall_distance(&p, &q)?;
    Ok(Some(Output::new(json!({ "distance": d }), d.to_string())))
}

fn ball_cmd(center: &str, radius: usize, count: bool, settings: &Settings) -> Result<Option<Output>> {
    let c: Permutation = center.parse()?;
    if count {
        let size = ball_size(c.len(), radius);
        let json = json!({ "center": c.to_string(), "radius": radius, "size": size.to_string() });
        return Ok(Some(Output::new(json, size.to_string())));
    }
    let members = ball(&c, radius, &settings.limits)?;
    let list: Vec<String> = members.iter().map(ToString::to_string).collect();
    let mut text = String::new();
    for m in &list {
        writeln!(text, "{m}").unwrap();
    }
    let rows = list.iter().map(|m| vec![m.clone()]).collect();
    let json = json!({ "center": c.to_string(), "radius": radius, "size": list.len(), "members": list });
    Ok(Some(Output::new(json, text).with_table(vec!["member"], rows)))
}

fn verify(file: &Path, d: usize) -> Result<(Option<Output>, u8)> {
    let code = Code::read(file)?;
    let min = if code.len() < 2 {
        None
    } else {
        Some(min_distance(&code)?)
    };
    let ok = min.is_none_or(|m| m >= d);
    let json = json!({
        "n": code.n(),
        "size": code.len(),
        "minDistance": min,
        "required": d,
        "ok": ok,
    });
    let text = match min {
        Some(m) => format!(
            "{} codewords in S_{}, minimum distance {m}: {}",
            code.len(),
            code.n(),
            verdict(ok)
        ),
        None => format!("1 codeword in S_{}: {}", code.n(), verdict(ok)),
    };
    Ok((Some(Output::new(json, text)), if ok { 0 } else { 1 }))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "too close"
    }
}

fn oracle(n: usize, d: usize, settings: &Settings) -> Result<Option<Output>> {
    let best = exhaustive_max_code(n, d, &settings.limits)?;
    let witness: Vec<String> = best.witness.members().map(ToString::to_string).collect();
    let text = format!("P({n},{d}) = {}\n{}", best.size, best.witness.to_text());
    let json = json!({ "n": n, "d": d, "size": best.size, "witness": witness });
    Ok(Some(Output::new(json, text)))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn matrix(
    n: usize,
    shape: &str,
    format: MatrixFormatArg,
    out: Option<&Path>,
    settings: &Settings,
) -> Result<Option<Output>> {
    let shape = parse_shape(n, shape)?;
    let m = build_action_matrix(n, &shape, &settings.limits)?;
    let format = match format {
        MatrixFormatArg::MatrixMarket => MatrixFormat::MatrixMarket,
        MatrixFormatArg::DenseJson => MatrixFormat::DenseJson,
    };
    let mut w = sink(out)?;
    export_matrix(&m, format, &mut w)?;
    w.flush()?;
    Ok(out.map(|path| {
        let json = json!({
            "n": n,
            "shape": shape.to_string(),
            "dim": m.dim(),
            "nnz": m.nnz(),
            "file": path.display().to_string(),
        });
        Output::new(
            json,
            format!("wrote {} x {} matrix to {}", m.dim(), m.dim(), path.display()),
        )
    }))
}

fn ilp(n: usize, shape: &str, cut_rounds: usize, settings: &Settings) -> Result<(Option<Output>, u8)> {
    let shape = parse_shape(n, shape)?;
    let model = build_coset_ilp(n, &shape, &settings.limits)?;
    let result = ilp_solve(&model, &solve_config(settings, cut_rounds))?;
    let mut json = result.to_json();
    json["n"] = json!(n);
    json["shape"] = json!(shape.to_string());
    json["dim"] = json!(model.dim());
    let proven = result.status == SolveStatus::ProvenOptimal;
    let text = if proven {
        format!("optimum {} (proven, {} nodes)", result.optimum, result.nodes_explored)
    } else {
        format!(
            "incumbent {}, dual bound {} ({} nodes, stopped at limit)",
            result.optimum, result.dual_bound, result.nodes_explored
        )
    };
    let code = if proven { 0 } else { 3 };
    Ok((Some(Output::new(json, text)), code))
}

fn export(n: usize, shape: &str, out: Option<&Path>, settings: &Settings) -> Result<Option<Output>> {
    let shape = parse_shape(n, shape)?;
    let model = build_coset_ilp(n, &shape, &settings.limits)?;
    let mut w = sink(out)?;
    export_lp(&model, &mut w)?;
    w.flush()?;
    Ok(out.map(|path| {
        let json =
            json!({ "n": n, "shape": shape.to_string(), "dim": model.dim(), "file": path.display().to_string() });
        Output::new(
            json,
            format!("wrote LP model with {} variables to {}", model.dim(), path.display()),
        )
    }))
}

fn bound(n: usize, shapes: &[String], cut_rounds: usize, settings: &Settings) -> Result<Option<Output>> {
    let shapes = shapes.iter().map(|s| parse_shape(n, s)).collect::<Result<Vec<_>>>()?;
    let report = bound_report(n as u64, &shapes, &solve_config(settings, cut_rounds), &settings.limits)?;
    let mut json = serde_json::to_value(&report)?;
    if let Some((expr, value)) = literature_lower_bound(n as u64) {
        json["literatureLowerBound"] = json!({ "expression": expr, "value": value.to_string() });
    }
    let mut text = format!("upper bounds on P({n},3)\n");
    let mut rows = Vec::new();
    for e in &report.entries {
        let method = scalar(&serde_json::to_value(&e.method)?);
        let shape = e.shape.clone().unwrap_or_default();
        let mark = if e.minimum { " *" } else { "" };
        writeln!(text, "  {method:<15} {shape:<10} {}{mark}  [{}]", e.value, e.provenance).unwrap();
        rows.push(vec![
            method,
            shape,
            e.value.to_string(),
            e.provenance.clone(),
            e.minimum.to_string(),
        ]);
    }
    writeln!(text, "minimum {}", report.minimum()).unwrap();
    Ok(Some(Output::new(json, text).with_table(
        vec!["method", "shape", "value", "provenance", "minimum"],
        rows,
    )))
}

fn obstruction_options(settings: &Settings, all_primes: bool) -> ObstructionOptions {
    let mut options = ObstructionOptions {
        primes: settings.primes.clone(),
        all_primes,
        threads: settings.threads,
        ..Default::default()
    };
    options.dimension_limit = options.dimension_limit.min(settings.limits.sparse_dimension);
    options.budget.seed = settings.seed;
    options
}

fn perfect(route: &PerfectRoute, settings: &Settings) -> Result<(Option<Output>, u8)> {
    let report = match route {
        PerfectRoute::Coset {
            n,
            shape,
            all_primes,
            save_matrix,
        } => {
            let shape = parse_shape(*n, shape)?;
            if let Some(path) = save_matrix {
                let m = build_action_matrix(*n, &shape, &settings.limits)?;
                let mut w = BufWriter::new(File::create(path)?);
                export_matrix(&m, MatrixFormat::MatrixMarket, &mut w)?;
                w.flush()?;
            }
            obstruction_coset(
                *n,
                &shape,
                &obstruction_options(settings, *all_primes),
                &settings.limits,
            )?
        }
        PerfectRoute::Irreps {
            n,
            mu,
            list,
            all_primes,
        } => {
            let mu = parse_shape(*n, mu)?;
            let list = match list {
                ListArg::Computed => ConstituentList::Computed,
                ListArg::Literature => ConstituentList::Literature,
            };
            obstruction_irreps(*n, &mu, list, &obstruction_options(settings, *all_primes))?
        }
        PerfectRoute::Conjecture { p, all_primes } => {
            conjecture_check(*p, &obstruction_options(settings, *all_primes), &settings.limits)?
        }
    };
    let code = if report.conclusion == Conclusion::NoOnePerfectCode {
        0
    } else {
        3
    };
    Ok((Some(obstruction_output(&report)?), code))
}

fn obstruction_output(report: &ObstructionReport) -> Result<Output> {
    let json = serde_json::to_value(report)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for m in &report.matrices {
        let prime = m.prime.map(|p| p.to_string()).unwrap_or_default();
        let verdict = scalar(&serde_json::to_value(m.verdict)?);
        let method = m
            .method
            .map(|x| serde_json::to_value(x).map(|v| scalar(&v)))
            .transpose()?
            .unwrap_or_default();
        writeln!(
            text,
            "{:<16} dim {:<8} p {:<8} {verdict:<15} {method}",
            m.label, m.dim, prime
        )
        .unwrap();
        rows.push(vec![m.label.clone(), m.dim.to_string(), prime, verdict, method]);
    }
    writeln!(text, "divisibility precondition: {}", report.divisibility_ok).unwrap();
    let conclusion = scalar(&json["conclusion"]);
    match &report.reason {
        Some(r) => writeln!(text, "conclusion: {conclusion} ({r})").unwrap(),
        None => writeln!(text, "conclusion: {conclusion}").unwrap(),
    }
    Ok(Output::new(json, text).with_table(vec!["label", "dim", "prime", "verdict", "method"], rows))
}
