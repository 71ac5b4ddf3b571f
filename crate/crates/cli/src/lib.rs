//! The `dimscale` command line tool as a library, so that tests can run it
//! in-process.
//!
//! Every command is a pure function of its arguments and the bytes of the
//! files it reads. Reports go to standard output and diagnostics to standard
//! error. Exit code 0 means every check passed, 1 means some check failed,
//! and 2 means the input could not be used.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use dimscale::corpus;
use dimscale::espalier::{
    drng, gen_equipotency, gen_group_action, gen_subspace_lattice, group_closure,
    validate_espalier, EspalierTable,
};
use dimscale::format::{emit_esp, emit_pcm, parse, Instance};
use dimscale::monoid::{validate_pcm, MonoidTable};
use dimscale::represent::{roundtrip, verify_embedding, Representation};
use dimscale::scale::{check_scale, AxiomReport, Scale};
use dimscale::targets::{
    sample_axioms, two_gamma, z_chain, FunctionScale, MonoidKind, PointType, Value, ValueMonoid,
};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Outcome {
            code: if pass { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dimscale",
    version,
    about = "Check partial monoids, dimension scales and espaliers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    flags: Flags,
}

/// Flags shared by every command.
#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Largest carrier accepted from files and generators.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_size: usize,
    /// Largest aleph index accepted by generators and representations.
    #[arg(long, global = true, default_value_t = 4)]
    pub gamma_cap: u32,
    /// Number of samples for function scales with rational points.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check an instance file: PCM laws and scale axioms, or espalier axioms
    /// and the scale axioms on its dimension range.
    Check { path: String },
    /// Print a generated instance file.
    Gen {
        /// equipotency N | chain N | two-gamma G | subspace Q N |
        /// group-action N I GROUP | function POINT... | corpus NAME
        name: String,
        params: Vec<String>,
    },
    /// Print the canonical representation of a scale, or of the dimension
    /// range of an espalier, with its verification.
    Represent { path: String },
    /// Sample refinement, N1 and N3 on a function scale given by points
    /// such as `II:fin:3` or `III:aleph:1`.
    Sample { points: Vec<String> },
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let flags = cli.flags;
    match cli.cmd {
        Cmd::Check { path } => with_instance(&path, &flags, |inst| run_check(&inst)),
        Cmd::Represent { path } => {
            with_instance(&path, &flags, |inst| run_represent(&inst, &flags))
        }
        Cmd::Gen { name, params } => match run_gen(&name, &params, &flags) {
            Ok(text) => Outcome::ok(text, true),
            Err(msg) => Outcome::usage(msg),
        },
        Cmd::Sample { points } => match function_scale(&points, &flags) {
            Ok(s) => run_sample(&s, &flags),
            Err(msg) => Outcome::usage(msg),
        },
    }
}

fn with_instance(path: &str, flags: &Flags, f: impl FnOnce(Instance) -> Outcome) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("{path}: {e}")),
    };
    match parse(&text, flags.max_size) {
        Ok(inst) => f(inst),
        Err(e) => Outcome::usage(format!("{path}: {e}")),
    }
}

fn push_axioms(out: &mut String, r: &AxiomReport) {
    for v in &r.verdicts {
        writeln!(out, "{v}").expect("write to string");
    }
    writeln!(
        out,
        "routes: {}",
        if r.routes_agree() {
            "agree"
        } else {
            "DISAGREE"
        }
    )
    .expect("write to string");
}

fn result_line(out: &mut String, pass: bool) {
    writeln!(out, "result: {}", if pass { "PASS" } else { "FAIL" }).expect("write to string");
}

/// `check` on a parsed instance.
pub fn run_check(inst: &Instance) -> Outcome {
    let mut out = String::new();
    let pass = match inst {
        Instance::Pcm(t) => check_pcm(&mut out, t),
        Instance::Esp(l) => check_esp(&mut out, l),
    };
    result_line(&mut out, pass);
    Outcome::ok(out, pass)
}

fn check_pcm(out: &mut String, t: &MonoidTable) -> bool {
    writeln!(out, "instance: pcm {} elements", t.len()).expect("write to string");
    let violations = validate_pcm(t);
    match violations.first() {
        None => writeln!(out, "pcm PASS").expect("write to string"),
        Some(v) => writeln!(out, "pcm FAIL {v}").expect("write to string"),
    }
    let r = check_scale(t);
    push_axioms(out, &r);
    violations.is_empty() && r.is_scale()
}

fn check_esp(out: &mut String, l: &EspalierTable) -> bool {
    writeln!(out, "instance: esp {} elements", l.len()).expect("write to string");
    writeln!(out, "mode: {}", dimscale::espalier::EspalierReport::MODE).expect("write to string");
    let report = validate_espalier(l);
    for v in &report.verdicts {
        writeln!(out, "{v}").expect("write to string");
    }
    match drng(l) {
        Ok(d) => {
            writeln!(
                out,
                "drng: {} elements: {}",
                d.scale.len(),
                d.scale.labels().join(" ")
            )
            .expect("write to string");
            let pcm_ok = validate_pcm(&d.scale).is_empty();
            if !pcm_ok {
                writeln!(out, "drng-pcm FAIL").expect("write to string");
            }
            let r = check_scale(&d.scale);
            push_axioms(out, &r);
            report.pass() && pcm_ok && r.is_scale()
        }
        Err(e) => {
            writeln!(out, "drng FAIL {e}").expect("write to string");
            false
        }
    }
}

/// `represent` on a parsed instance.
pub fn run_represent(inst: &Instance, flags: &Flags) -> Outcome {
    let mut out = String::new();
    let table = match inst {
        Instance::Pcm(t) => {
            writeln!(out, "instance: pcm {} elements", t.len()).expect("write to string");
            t.clone()
        }
        Instance::Esp(l) => {
            writeln!(out, "instance: esp {} elements", l.len()).expect("write to string");
            match drng(l) {
                Ok(d) => d.scale,
                Err(e) => {
                    return Outcome {
                        code: 1,
                        stdout: out,
                        stderr: format!("drng: {e}\n"),
                    }
                }
            }
        }
    };
    if !validate_pcm(&table).is_empty() || !check_scale(&table).is_scale() {
        return Outcome {
            code: 1,
            stdout: out,
            stderr: "not a continuous dimension scale; run `check`\n".into(),
        };
    }
    let rep = match Scale::new(table.clone()).and_then(Representation::new) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: 1,
                stdout: out,
                stderr: format!("representation: {e}\n"),
            }
        }
    };
    let gamma = rep
        .epsilon_table()
        .iter()
        .flat_map(|f| f.values.iter())
        .filter_map(|v| match v {
            Value::Aleph(a) => Some((a.omega, a.fin)),
            Value::Fin(_) => None,
        })
        .max();
    if let Some((omega, fin)) = gamma {
        if omega > 0 || fin > flags.gamma_cap {
            return Outcome::usage(format!(
                "aleph index exceeds --gamma-cap {}",
                flags.gamma_cap
            ));
        }
    }
    writeln!(out, "scale: {} elements", table.len()).expect("write to string");
    writeln!(out, "atoms: {}", rep.types().len()).expect("write to string");
    for (i, ty) in rep.types().iter().enumerate() {
        writeln!(out, "atom:{i} type:{ty}").expect("write to string");
    }
    let unit: Vec<&str> = rep.unit().iter().map(|&e| table.label(e)).collect();
    writeln!(
        out,
        "unit:{}",
        unit.iter().map(|u| format!(" {u}")).collect::<String>()
    )
    .expect("write to string");
    for x in table.elements() {
        for line in rep.epsilon(x).to_string().lines() {
            writeln!(out, "eps {} {line}", table.label(x)).expect("write to string");
        }
    }
    let emb = verify_embedding(&rep);
    for c in &emb.checks {
        writeln!(out, "{c}").expect("write to string");
    }
    let rt_pass = match roundtrip(&rep) {
        Ok(rt) => {
            let s = if rt.isomorphic { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "roundtrip {s} codomain {} image {}",
                rt.codomain_size,
                rt.image.len()
            )
            .expect("write to string");
            rt.isomorphic
        }
        Err(e) => {
            writeln!(out, "roundtrip FAIL {e}").expect("write to string");
            false
        }
    };
    let pass = emb.pass() && rt_pass;
    result_line(&mut out, pass);
    Outcome::ok(out, pass)
}

fn run_sample(s: &FunctionScale, flags: &Flags) -> Outcome {
    let r = sample_axioms(s, flags.samples, flags.seed);
    let mut out = String::new();
    writeln!(out, "points: {}", s.points().len()).expect("write to string");
    writeln!(out, "samples: {} seed: {}", r.samples, flags.seed).expect("write to string");
    writeln!(out, "refinement violations: {}", r.refinement).expect("write to string");
    writeln!(out, "N1 violations: {}", r.n1).expect("write to string");
    writeln!(out, "N3 violations: {}", r.n3).expect("write to string");
    writeln!(out, "M2 EXCLUDED rational values are not Dedekind complete")
        .expect("write to string");
    if let Some(w) = &r.first_witness {
        writeln!(out, "first violation: {w}").expect("write to string");
    }
    let pass = r.violations() == 0;
    result_line(&mut out, pass);
    Outcome::ok(out, pass)
}

fn num<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T, String> {
    params
        .get(i)
        .ok_or_else(|| format!("missing parameter {what}"))?
        .parse()
        .map_err(|_| format!("parameter {what} must be a number, got `{}`", params[i]))
}

fn arity(name: &str, params: &[String], n: usize) -> Result<(), String> {
    if params.len() == n {
        Ok(())
    } else {
        Err(format!(
            "generator `{name}` takes {n} parameters, got {}",
            params.len()
        ))
    }
}

fn sized(len: usize, flags: &Flags) -> Result<(), String> {
    if len > flags.max_size {
        Err(format!(
            "carrier size {len} exceeds --max-size {}",
            flags.max_size
        ))
    } else {
        Ok(())
    }
}

fn esp_text(l: EspalierTable, flags: &Flags) -> Result<String, String> {
    sized(l.len(), flags)?;
    Ok(emit_esp(&l))
}

fn pcm_text(t: MonoidTable, flags: &Flags) -> Result<String, String> {
    sized(t.len(), flags)?;
    Ok(emit_pcm(&t))
}

/// Group generators by keyword, or explicit 1-based image lists like `2,3,1`.
fn group(n: usize, spec: &[String]) -> Result<Vec<Vec<usize>>, String> {
    let mut gens = Vec::new();
    for s in spec {
        match s.as_str() {
            "trivial" => {}
            "sym" => {
                if n >= 2 {
                    gens.push((0..n).map(|i| if i < 2 { 1 - i } else { i }).collect());
                    gens.push((0..n).map(|i| (i + 1) % n).collect());
                }
            }
            "cyclic" => gens.push((0..n).map(|i| (i + 1) % n).collect()),
            perm => {
                let images: Result<Vec<usize>, _> =
                    perm.split(',').map(|x| x.parse::<usize>()).collect();
                let images = images.map_err(|_| format!("bad permutation `{perm}`"))?;
                if images.contains(&0) {
                    return Err(format!("permutation `{perm}` must use images 1..{n}"));
                }
                gens.push(images.iter().map(|x| x - 1).collect());
            }
        }
    }
    group_closure(n, &gens).map_err(|e| e.to_string())?;
    Ok(gens)
}

/// Parses points like `I:fin:2`, `II:fin:7/2` or `III:aleph:1`.
fn function_scale(points: &[String], flags: &Flags) -> Result<FunctionScale, String> {
    let mut out = Vec::new();
    for p in points {
        let (ty, lit) = p
            .split_once(':')
            .ok_or_else(|| format!("point `{p}` must look like TYPE:VALUE"))?;
        let ty = match ty {
            "I" => PointType::I,
            "II" => PointType::II,
            "III" => PointType::III,
            other => return Err(format!("unknown point type `{other}`")),
        };
        let bound: Value = lit.parse().map_err(|e| format!("point `{p}`: {e}"))?;
        if let Value::Aleph(a) = &bound {
            if a.omega > 0 || a.fin > flags.gamma_cap {
                return Err(format!(
                    "aleph index in `{p}` exceeds --gamma-cap {}",
                    flags.gamma_cap
                ));
            }
        }
        let kind = match ty {
            PointType::I => MonoidKind::Z,
            PointType::II => MonoidKind::Q,
            PointType::III => MonoidKind::Two,
        };
        out.push((ty, ValueMonoid::new(kind, bound)));
    }
    if out.is_empty() {
        return Err("a function scale needs at least one point".into());
    }
    FunctionScale::new(out).map_err(|e| e.to_string())
}

/// `gen`: the canonical text of a generated instance.
pub fn run_gen(name: &str, params: &[String], flags: &Flags) -> Result<String, String> {
    let err = |e: dimscale::Error| e.to_string();
    match name {
        "equipotency" => {
            arity(name, params, 1)?;
            esp_text(gen_equipotency(num(params, 0, "N")?).map_err(err)?, flags)
        }
        "chain" => {
            arity(name, params, 1)?;
            let n: u32 = num(params, 0, "N")?;
            sized(n as usize + 1, flags)?;
            pcm_text(z_chain(n), flags)
        }
        "two-gamma" => {
            arity(name, params, 1)?;
            let g: u32 = num(params, 0, "G")?;
            if g > flags.gamma_cap {
                return Err(format!("gamma {g} exceeds --gamma-cap {}", flags.gamma_cap));
            }
            pcm_text(two_gamma(g), flags)
        }
        "subspace" => {
            arity(name, params, 2)?;
            esp_text(
                gen_subspace_lattice(num(params, 0, "Q")?, num(params, 1, "N")?).map_err(err)?,
                flags,
            )
        }
        "group-action" => {
            if params.len() < 3 {
                return Err("generator `group-action` takes N I GROUP...".into());
            }
            let n: usize = num(params, 0, "N")?;
            let i: usize = num(params, 1, "I")?;
            let gens = group(n, &params[2..])?;
            esp_text(
                gen_group_action(n, &gens, i, flags.max_size).map_err(err)?,
                flags,
            )
        }
        "function" => {
            let s = function_scale(params, flags)?;
            let (t, _) = s.materialize().map_err(err)?;
            pcm_text(t, flags)
        }
        "corpus" if params.is_empty() => {
            let mut out = String::new();
            for (n, _) in corpus::scales() {
                writeln!(out, "pcm {n}").expect("write to string");
            }
            for (n, _) in corpus::espaliers() {
                writeln!(out, "esp {n}").expect("write to string");
            }
            Ok(out)
        }
        "corpus" => {
            arity(name, params, 1)?;
            let want = params[0].as_str();
            if let Some((_, t)) = corpus::scales().into_iter().find(|(n, _)| *n == want) {
                return pcm_text(t, flags);
            }
            if let Some((_, l)) = corpus::espaliers().into_iter().find(|(n, _)| *n == want) {
                return esp_text(l, flags);
            }
            Err(format!("unknown corpus instance `{want}`"))
        }
        other => Err(format!("unknown generator `{other}`")),
    }
}
