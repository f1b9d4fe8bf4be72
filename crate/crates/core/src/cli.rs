//! Command-line frontend. `steklov <command> <spec.json> [flags]`.
//!
//! Exit codes: 0 success, 2 validation failure, 3 indeterminate verdict,
//! 4 numerical failure, 5 continuum of candidates.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::applicable_bounds;
use crate::charpoly::{build_charpoly, build_charpoly_exact, charpoly_distance, FREQ_TOL_REL};
use crate::fem::{steklov_spectrum_extrapolated, triangulate};
use crate::geometry::{
    build_polygon, congruent, edge_split_solve, psi_phi, reconstruct_missing_angles, BoundaryData,
    DihedralLabeling, EdgeSplitInput, EdgeSplitOutcome, PartialBoundaryData,
};
use crate::inverse::{
    admissibility, admissibility_exact, enumerate_admissible_candidates, enumerate_weak_candidates,
    invariant_vectors, EnumerationOptions, SetVerdict, Verdict, ANGLE_TOL,
};
use crate::io::{boundary_data_json, number, parse_partial_spec, parse_polygon_spec, trig_poly_json, PolygonSpec};
use crate::quasi::{asymptotic_compare, find_roots, quasi_spectrum_for, AsymptoticOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;
pub const EXIT_CONTINUUM: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "steklov", version, about = "Steklov spectral tools for convex polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Charpoly agreement tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Exact rational arithmetic where the spec allows it.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Root search window [0, tmax]; default covers the first k roots.
    #[arg(long, global = true)]
    pub tmax: Option<f64>,
    /// Number of eigenvalues or quasi-eigenvalues past index 0.
    #[arg(long, global = true, default_value_t = 10)]
    pub k: usize,
    /// Coarsest mesh size; default perimeter / 32.
    #[arg(long = "mesh-h", global = true)]
    pub mesh_h: Option<f64>,
    /// Write outputs and report.json here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Admissible,
    Weak,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial as JSON.
    Charpoly { file: PathBuf },
    /// Quasi-eigenvalues (charpoly roots) as CSV.
    Roots { file: PathBuf },
    /// Eigenvalue upper bounds whose hypotheses hold, as CSV.
    Bounds { file: PathBuf },
    /// Fill blank angles (`null` entries, or the positions in --blanks).
    Reconstruct {
        file: PathBuf,
        /// Comma-separated angle positions to blank before reconstructing.
        #[arg(long, value_delimiter = ',')]
        blanks: Vec<usize>,
    },
    /// Polygons sharing the charpoly of the given one.
    Isospectral {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Admissible)]
        mode: Mode,
        /// sigma_k used for the angle floor in weak mode; computed by FEM if absent.
        #[arg(long = "sigma-floor")]
        sigma_floor: Option<f64>,
    },
    /// Finite-element Steklov spectrum with Richardson extrapolation, as CSV.
    Solve { file: PathBuf },
    /// FEM eigenvalues against quasi-eigenvalues, as CSV with a fitted exponent.
    Compare { file: PathBuf },
    /// Edge-split deformation at two vertices; sweeps the family if there is one.
    Deform {
        file: PathBuf,
        /// Split vertices `i,j`; default: the first pair with equal turning sums.
        #[arg(long, value_delimiter = ',')]
        split: Vec<usize>,
        #[arg(long, default_value_t = 21)]
        count: usize,
    },
}

/// Result of one command: the main output, extra files, and report fields.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub main_name: String,
    pub files: Vec<(String, String)>,
    pub verdicts: BTreeMap<String, String>,
    pub code: i32,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub outputs: Vec<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub verdicts: BTreeMap<String, String>,
    pub exit_code: i32,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

fn fail(code: i32, msg: impl ToString) -> Failure {
    Failure { code, msg: msg.to_string() }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(file: &Path) -> Res<String> {
    std::fs::read_to_string(file).map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", file.display())))
}

fn load(file: &Path) -> Res<PolygonSpec> {
    let text = read(file)?;
    parse_polygon_spec(&text).map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", file.display())))
}

fn mesh_h(cli: &Cli, d: &BoundaryData) -> f64 {
    cli.mesh_h.unwrap_or(d.perimeter() / 32.0)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn cmd_charpoly(cli: &Cli, file: &Path) -> Res<Outcome> {
    let spec = load(file)?;
    let mut out = Outcome { main_name: "charpoly.json".into(), ..Default::default() };
    let v = match (&spec.exact, cli.exact) {
        (Some(ex), true) => {
            let p = build_charpoly_exact(ex);
            json!({
                "terms": p.terms.iter().map(|(f, a)| json!([f.to_string(), number(*a)])).collect::<Vec<_>>(),
                "constant": number(p.constant),
            })
        }
        (None, true) => return Err(fail(EXIT_VALIDATION, "--exact needs a lengths/angles_pi spec")),
        _ => trig_poly_json(&build_charpoly(&spec.data)),
    };
    out.stdout = serde_json::to_string(&v).expect("json") + "\n";
    Ok(out)
}

fn cmd_roots(cli: &Cli, file: &Path) -> Res<Outcome> {
    let spec = load(file)?;
    let p = build_charpoly(&spec.data);
    let s = match cli.tmax {
        Some(t) => find_roots(&p, t),
        None => quasi_spectrum_for(&p, cli.k),
    }
    .map_err(|e| fail(EXIT_NUMERICAL, e))?;
    let mut out = Outcome { main_name: "roots.csv".into(), ..Default::default() };
    if cli.tmax.is_some() && s.values.len() < cli.k + 1 {
        out.verdicts.insert(
            "coverage".into(),
            format!("only {} values below tmax; enlarge --tmax for k = {}", s.values.len(), cli.k),
        );
    }
    out.stdout = s.to_csv();
    Ok(out)
}

fn cmd_bounds(cli: &Cli, file: &Path) -> Res<Outcome> {
    let spec = load(file)?;
    let mut s = String::from("k,formula,hypotheses_ok,value,hypotheses\n");
    for k in 1..=cli.k.max(1) as u32 {
        for b in applicable_bounds(&spec.data, k) {
            let r = &b.result;
            let _ = writeln!(
                s,
                "{},{},{},{},\"{}\"",
                b.sigma_index,
                r.formula,
                r.hypotheses_ok,
                r.value.map(|v| format!("{v:.12e}")).unwrap_or_else(|| "n/a".into()),
                r.hypothesis_report.replace('"', "'")
            );
        }
    }
    Ok(Outcome { stdout: s, main_name: "bounds.csv".into(), ..Default::default() })
}

fn cmd_reconstruct(cli: &Cli, file: &Path, blanks: &[usize]) -> Res<Outcome> {
    let text = read(file)?;
    let (partial, original) = if blanks.is_empty() {
        let p = parse_partial_spec(&text).map_err(|e| fail(EXIT_VALIDATION, e))?;
        (p, None)
    } else {
        let spec = parse_polygon_spec(&text).map_err(|e| fail(EXIT_VALIDATION, e))?;
        if let Some(b) = blanks.iter().find(|b| **b >= spec.data.n()) {
            return Err(fail(EXIT_VALIDATION, format!("blank position {b} out of range")));
        }
        (PartialBoundaryData::blanking(&spec.data, blanks), Some(spec.data))
    };
    let d = reconstruct_missing_angles(&partial).map_err(|e| fail(EXIT_VALIDATION, e))?;
    let mut out = Outcome { main_name: "reconstructed.json".into(), ..Default::default() };
    let mut v = boundary_data_json(&d);
    if let Some(orig) = original {
        let ok = congruent(&orig, &d, cli.tol * orig.perimeter());
        v["congruent_to_input"] = json!(ok);
        out.verdicts.insert("congruent_to_input".into(), ok.to_string());
    }
    out.stdout = pretty(&v);
    Ok(out)
}

fn cmd_isospectral(cli: &Cli, file: &Path, mode: Mode, sigma_floor: Option<f64>) -> Res<Outcome> {
    let spec = load(file)?;
    let data = &spec.data;
    let mut opts = EnumerationOptions { tol: cli.tol, ..Default::default() };
    let mut out = Outcome { main_name: "candidates.json".into(), ..Default::default() };

    let float_rep = admissibility(data, opts.angle_tol, opts.admissibility_tol);
    let mut classes = String::from("vertex,angle_over_pi,class,parity,c\n");
    let iv = invariant_vectors(data);
    for (i, c) in float_rep.classes.iter().enumerate() {
        let _ = writeln!(
            classes,
            "{i},{:.15},{:?},{},{:.15}",
            data.angles[i] / std::f64::consts::PI,
            c.kind,
            c.parity,
            iv.c[i] + 0.0
        );
    }
    eprint!("{classes}");
    out.files.push(("classes.csv".into(), classes));

    if cli.exact {
        let ex = spec
            .exact
            .as_ref()
            .ok_or_else(|| fail(EXIT_VALIDATION, "--exact needs a lengths/angles_pi spec"))?;
        let rep = admissibility_exact(ex);
        let verdict = match mode {
            Mode::Admissible => rep.admissible,
            Mode::Weak => rep.weakly_edge_admissible,
        };
        if verdict == Verdict::No {
            return Err(fail(EXIT_VALIDATION, format!("not admissible: {}", rep.reasons.join("; "))));
        }
        // the exact verdict settles what the float gap test cannot
        opts.admissibility_tol = 0.0;
    }

    let set = match mode {
        Mode::Admissible => enumerate_admissible_candidates(data, &opts),
        Mode::Weak => {
            let k = cli.k.max(1);
            let sigma = match sigma_floor {
                Some(s) => s,
                None => {
                    let ex = steklov_spectrum_extrapolated(data, mesh_h(cli, data), k)
                        .map_err(|e| fail(EXIT_NUMERICAL, e))?;
                    ex.sigmas[k]
                }
            };
            out.verdicts.insert("sigma_k".into(), format!("{sigma}"));
            enumerate_weak_candidates(data, sigma, k as u32, &opts)
        }
    }
    .map_err(|e| fail(EXIT_VALIDATION, e))?;

    out.verdicts.insert("verdict".into(), serde_json::to_value(set.verdict).expect("json").as_str().unwrap_or("").into());
    out.verdicts.insert("candidates".into(), set.candidates.len().to_string());
    out.code = match set.verdict {
        SetVerdict::Finite => EXIT_OK,
        SetVerdict::Continuum => EXIT_CONTINUUM,
        SetVerdict::Indeterminate => EXIT_INDETERMINATE,
    };
    let mut v = serde_json::to_value(&set).expect("json");
    v["candidates"] = Value::Array(set.candidates.iter().map(boundary_data_json).collect());
    out.stdout = pretty(&v);
    Ok(out)
}

fn cmd_solve(cli: &Cli, file: &Path) -> Res<Outcome> {
    let spec = load(file)?;
    let h = mesh_h(cli, &spec.data);
    let ex = steklov_spectrum_extrapolated(&spec.data, h, cli.k).map_err(|e| fail(EXIT_NUMERICAL, e))?;
    let mut out = Outcome { main_name: "spectrum.csv".into(), ..Default::default() };
    out.files.push(("traces.csv".into(), ex.finest().traces_csv()));
    if cli.out.is_some() {
        let poly = build_polygon(&spec.data).map_err(|e| fail(EXIT_VALIDATION, e))?;
        let mesh = triangulate(&poly, h).map_err(|e| fail(EXIT_NUMERICAL, e))?;
        out.files.push(("mesh.off".into(), mesh.to_off()));
    }
    out.stdout = ex.to_csv();
    Ok(out)
}

fn cmd_compare(cli: &Cli, file: &Path) -> Res<Outcome> {
    let spec = load(file)?;
    let data = &spec.data;
    if let Some(t) = cli.tmax {
        let s = find_roots(&build_charpoly(data), t).map_err(|e| fail(EXIT_NUMERICAL, e))?;
        if s.values.len() < cli.k + 1 {
            return Err(fail(
                EXIT_VALIDATION,
                format!(
                    "--tmax {t} covers only {} quasi-eigenvalues but --k {} needs {}; enlarge --tmax",
                    s.values.len(),
                    cli.k,
                    cli.k + 1
                ),
            ));
        }
    }
    let ex = steklov_spectrum_extrapolated(data, mesh_h(cli, data), cli.k).map_err(|e| fail(EXIT_NUMERICAL, e))?;
    let rep = asymptotic_compare(&ex.sigmas, data, AsymptoticOptions::default())
        .map_err(|e| fail(EXIT_NUMERICAL, e))?;
    let mut out = Outcome { main_name: "compare.csv".into(), ..Default::default() };
    out.verdicts.insert(
        "epsilon_hat".into(),
        rep.epsilon_hat.map(|e| format!("{e:.6}")).unwrap_or_else(|| "undefined".into()),
    );
    out.stdout = rep.to_csv();
    Ok(out)
}

fn find_split(d: &BoundaryData, tol: f64) -> Option<(usize, usize)> {
    let n = d.n();
    for i in 0..n {
        for j in i + 2..n {
            if (j + n - i) % n < 2 || (i + n - j) % n < 2 {
                continue;
            }
            let rot = d.relabel(DihedralLabeling { offset: i, reflected: false });
            let (psi, phi) = psi_phi(&rot.angles, j - i);
            if (psi - phi).abs() <= tol {
                return Some((i, j));
            }
        }
    }
    None
}

fn cmd_deform(cli: &Cli, file: &Path, split: &[usize], count: usize) -> Res<Outcome> {
    let spec = load(file)?;
    let d = &spec.data;
    let n = d.n();
    let (i, j) = match split {
        [] => find_split(d, ANGLE_TOL).unwrap_or((0, n / 2)),
        [i, j] if *i < n && *j < n => (*i, *j),
        _ => return Err(fail(EXIT_VALIDATION, "--split takes two vertex indices i,j")),
    };
    let rot = d.relabel(DihedralLabeling { offset: i, reflected: false });
    let p = (j + n - i) % n;
    let outcome = edge_split_solve(&EdgeSplitInput::from_data(&rot, p), p).map_err(|e| fail(EXIT_VALIDATION, e))?;
    let target = build_charpoly(d);
    let ftol = FREQ_TOL_REL * d.perimeter();
    let mut out = Outcome { main_name: "deform.json".into(), ..Default::default() };
    let (psi, phi) = psi_phi(&rot.angles, p);
    let v = match outcome {
        EdgeSplitOutcome::Unique(u) => {
            out.verdicts.insert("deformation".into(), "unique".into());
            json!({
                "split": [i, j],
                "psi": psi,
                "phi": phi,
                "outcome": "unique",
                "solution": boundary_data_json(&u),
                "congruent_to_input": congruent(&rot, &u, cli.tol * d.perimeter()),
            })
        }
        EdgeSplitOutcome::Family(f) => {
            out.verdicts.insert("deformation".into(), "family".into());
            let mut csv = String::from("x,l0,l1,lp,lp1,charpoly_drift\n");
            let mut drift_max: f64 = 0.0;
            for x in f.sweep(count) {
                let m = f.member(x);
                let drift = charpoly_distance(&build_charpoly(&m), &target, ftol);
                drift_max = drift_max.max(drift);
                let _ = writeln!(
                    csv,
                    "{x:.15},{:.15},{:.15},{:.15},{:.15},{drift:.3e}",
                    m.lengths[0], m.lengths[1], m.lengths[p], m.lengths[p + 1]
                );
            }
            out.files.push(("sweep.csv".into(), csv));
            out.verdicts.insert("max_charpoly_drift".into(), format!("{drift_max:.3e}"));
            json!({
                "split": [i, j],
                "psi": psi,
                "phi": phi,
                "outcome": "family",
                "base": boundary_data_json(&f.base),
                "ratio": f.ratio,
                "x_min": f.x_min,
                "x_max": f.x_max,
                "members": count,
                "max_charpoly_drift": drift_max,
            })
        }
    };
    out.stdout = pretty(&v);
    Ok(out)
}

fn command_name(c: &Command) -> (&'static str, &Path) {
    match c {
        Command::Charpoly { file } => ("charpoly", file),
        Command::Roots { file } => ("roots", file),
        Command::Bounds { file } => ("bounds", file),
        Command::Reconstruct { file, .. } => ("reconstruct", file),
        Command::Isospectral { file, .. } => ("isospectral", file),
        Command::Solve { file } => ("solve", file),
        Command::Compare { file } => ("compare", file),
        Command::Deform { file, .. } => ("deform", file),
    }
}

pub fn execute(cli: &Cli) -> Res<Outcome> {
    match &cli.command {
        Command::Charpoly { file } => cmd_charpoly(cli, file),
        Command::Roots { file } => cmd_roots(cli, file),
        Command::Bounds { file } => cmd_bounds(cli, file),
        Command::Reconstruct { file, blanks } => cmd_reconstruct(cli, file, blanks),
        Command::Isospectral { file, mode, sigma_floor } => cmd_isospectral(cli, file, *mode, *sigma_floor),
        Command::Solve { file } => cmd_solve(cli, file),
        Command::Compare { file } => cmd_compare(cli, file),
        Command::Deform { file, split, count } => cmd_deform(cli, file, split, *count),
    }
}

fn digest(cli: &Cli, args: &[OsString]) -> String {
    let (_, file) = command_name(&cli.command);
    let mut h = Sha256::new();
    h.update(std::fs::read(file).unwrap_or_default());
    // flags, without the file path itself
    for a in args.iter().skip(1) {
        if Path::new(a) != file {
            h.update(a.to_string_lossy().as_bytes());
            h.update([0]);
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn write_outputs(cli: &Cli, dir: &Path, out: &Outcome, args: &[OsString]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    if !out.main_name.is_empty() {
        std::fs::write(dir.join(&out.main_name), &out.stdout)?;
        names.push(out.main_name.clone());
    }
    for (name, body) in &out.files {
        std::fs::write(dir.join(name), body)?;
        names.push(name.clone());
    }
    let tolerances = BTreeMap::from([
        ("tol".to_string(), cli.tol),
        ("angle_tol".to_string(), ANGLE_TOL),
        ("coef_tol".to_string(), crate::charpoly::COEF_TOL),
        ("freq_tol_rel".to_string(), FREQ_TOL_REL),
    ]);
    let report = RunReport {
        command: command_name(&cli.command).0.to_string(),
        input_digest: digest(cli, args),
        outputs: names,
        tolerances,
        verdicts: out.verdicts.clone(),
        exit_code: out.code,
    };
    std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report).expect("json") + "\n")
}

fn init_threads() {
    if let Some(n) = std::env::var("STEKLOV_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args`, runs the command, prints its output and returns the exit code.
pub fn run(args: Vec<OsString>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    init_threads();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if let Some(dir) = &cli.out {
                if let Err(e) = write_outputs(&cli, dir, &out, &args) {
                    eprintln!("error: writing {}: {e}", dir.display());
                    return EXIT_VALIDATION;
                }
            }
            for (k, v) in &out.verdicts {
                eprintln!("{k}: {v}");
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}
