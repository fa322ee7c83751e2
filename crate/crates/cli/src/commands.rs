use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use stretched_schur::asymptotics::{limit_experiment, write_csv};
use stretched_schur::kostka::{kostka, schur_in_m_basis, stretch_positivity_check};
use stretched_schur::partitions::Partition;
use stretched_schur::poly::skew_schur;
use stretched_schur::recurrence::{
    analyze, build_sequence, char_poly, polynomiality_check, Depth, Family, RecurrenceReport, Verdict,
};
use stretched_schur::tableaux::{enumerate, enumerate_with_weight, insert, SkewShape, Tableau};

use crate::args::{
    Command, DirectionArgs, FamilyArgs, Format, InsertArgs, KostkaArgs, OutputArgs, PolynomialityArgs, RecurrenceArgs,
    RootsArgs, ShapeArgs, TableauxArgs,
};

/// Anything that stops a run before it produces output.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// What a successful run produced.
pub struct Outcome {
    pub text: String,
    /// Set when the mathematics disagreed with the claim being checked.
    pub refutation: Option<String>,
}

/// The resolved configuration echoed at the top of every output.
struct Config(Vec<(&'static str, Value)>);

impl Config {
    fn new(command: &str) -> Self {
        Config(vec![("command", json!(command))])
    }

    fn with(mut self, key: &'static str, value: impl Serialize) -> Self {
        self.0
            .push((key, serde_json::to_value(value).expect("config values serialize")));
        self
    }

    fn with_output(self, out: &OutputArgs, format: Format) -> Self {
        let path = out.output.as_ref().map(|p| p.display().to_string());
        self.with("format", format.name()).with("output", path)
    }

    fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
    }

    fn comment_lines(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.0 {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(s, "# {k}: {v}").unwrap();
        }
        s
    }
}

fn shape_from(outer: &Partition, inner: &Partition) -> Result<SkewShape, Failure> {
    SkewShape::new(outer.clone(), inner.clone()).map_err(|e| Failure(format!("--outer/--inner: {e}")))
}

fn family_from(f: &FamilyArgs) -> Family {
    Family::new(f.kappa.clone(), f.lambda.clone(), f.mu.clone(), f.nu.clone(), f.n)
}

fn family_config(config: Config, f: &FamilyArgs) -> Config {
    config
        .with("kappa", &f.kappa)
        .with("lambda", &f.lambda)
        .with("mu", &f.mu)
        .with("nu", &f.nu)
        .with("n", f.n)
}

fn choose(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure(format!(
            "--format {} is not available for this subcommand",
            f.name()
        )))
    }
}

/// `{"config": …, …fields}` with the config block first.
fn json_document(config: &Config, body: Value) -> String {
    let mut map = serde_json::Map::new();
    map.insert("config".into(), config.to_json());
    match body {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json output");
    s.push('\n');
    s
}

fn pretty_document(config: &Config, body: &str) -> String {
    let mut s = config.comment_lines();
    s.push_str(body);
    if !body.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn emit(config: &Config, format: Format, json: impl FnOnce() -> Value, pretty: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json_document(config, json()),
        _ => pretty_document(config, &pretty()),
    }
}

fn ok(text: String) -> Result<Outcome, Failure> {
    Ok(Outcome { text, refutation: None })
}

pub fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Tableaux(a) => tableaux(a),
        Command::Schur(a) => schur(a),
        Command::Insert(a) => insert_cmd(a),
        Command::CharPoly(a) => char_poly_cmd(a),
        Command::Verify(a) => recurrence("verify", a, Depth::Verify),
        Command::Minimal(a) => recurrence("minimal", a, Depth::Minimal),
        Command::Kostka(a) => kostka_cmd(a),
        Command::MBasis(a) => m_basis(a),
        Command::Conjecture(a) => recurrence("conjecture", a, Depth::Conjecture),
        Command::Polynomiality(a) => polynomiality(a),
        Command::Roots(a) => roots(a),
    }
}

/// The output stream named by `--output`, or `None` for standard output.
pub fn output_path(command: &Command) -> Option<&std::path::Path> {
    let out = match command {
        Command::Tableaux(a) => &a.shape.out,
        Command::Schur(a) | Command::MBasis(a) => &a.out,
        Command::Insert(a) => &a.out,
        Command::CharPoly(a) => &a.out,
        Command::Verify(a) | Command::Minimal(a) | Command::Conjecture(a) => &a.out,
        Command::Kostka(a) => &a.out,
        Command::Polynomiality(a) => &a.out,
        Command::Roots(a) => &a.out,
    };
    out.output.as_deref()
}

fn tableaux(a: &TableauxArgs) -> Result<Outcome, Failure> {
    let s = &a.shape;
    let format = choose(s.out.format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let shape = shape_from(&s.outer, &s.inner)?;
    let list = match &a.w {
        Some(w) if w.len() != s.n => {
            return Err(Failure(format!("--w has {} entries but --n is {}", w.len(), s.n)));
        }
        Some(w) => enumerate_with_weight(&shape, w),
        None => enumerate(&shape, s.n),
    };
    let config = Config::new("tableaux")
        .with("outer", &s.outer)
        .with("inner", &s.inner)
        .with("n", s.n)
        .with("w", &a.w)
        .with_output(&s.out, format);
    ok(emit(
        &config,
        format,
        || json!({ "count": list.len(), "tableaux": list }),
        || {
            let mut body = format!("{} tableaux\n", list.len());
            for t in &list {
                writeln!(body, "\n{t}").unwrap();
            }
            body
        },
    ))
}

fn schur(a: &ShapeArgs) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let shape = shape_from(&a.outer, &a.inner)?;
    let p = skew_schur(&shape, a.n);
    let config = Config::new("schur")
        .with("outer", &a.outer)
        .with("inner", &a.inner)
        .with("n", a.n)
        .with_output(&a.out, format);
    ok(emit(
        &config,
        format,
        || json!({ "text": p.to_string(), "polynomial": p }),
        || p.to_string(),
    ))
}

fn read_tableau(flag: &str, source: &str) -> Result<Tableau, Failure> {
    let text = match source.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure(format!("--{flag} {path}: {e}")))?,
        None => source.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Failure(format!("--{flag}: {e}")))
}

fn insert_cmd(a: &InsertArgs) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let left = read_tableau("left", &a.left)?;
    let right = read_tableau("right", &a.right)?;
    let t = insert(&left, &right)?;
    let config = Config::new("insert")
        .with("left", &left)
        .with("right", &right)
        .with_output(&a.out, format);
    ok(emit(
        &config,
        format,
        || json!({ "tableau": t, "weight": t.weight() }),
        || t.to_string(),
    ))
}

fn char_poly_cmd(a: &DirectionArgs) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let chi = char_poly(&a.mu, &a.nu, a.n)?;
    let config = Config::new("char-poly")
        .with("mu", &a.mu)
        .with("nu", &a.nu)
        .with("n", a.n)
        .with_output(&a.out, format);
    ok(emit(&config, format, || json!(chi), || chi.to_string()))
}

fn describe(report: &RecurrenceReport) -> String {
    let mut s = String::new();
    writeln!(s, "family: {}", report.family).unwrap();
    if report.shift > 0 {
        writeln!(
            s,
            "shifted start: kappa = {}, lambda = {} (shift {})",
            report.effective_kappa, report.effective_lambda, report.shift
        )
        .unwrap();
    }
    writeln!(s, "r: {}", report.r).unwrap();
    writeln!(s, "degree: {}", report.degree).unwrap();
    if let Some(upto) = report.verified_upto {
        writeln!(s, "verified: k = {}..={}", report.r, upto).unwrap();
    }
    if let Some(c) = &report.failure {
        writeln!(s, "fails at k = {}: residual {}", c.k, c.residual).unwrap();
    }
    if let Some(m) = &report.minimal {
        writeln!(s, "minimal degree: {}", m.degree()).unwrap();
        writeln!(s, "minimal: {m}").unwrap();
    }
    let w: Vec<String> = report.w.iter().map(ToString::to_string).collect();
    writeln!(s, "W: {}", if w.is_empty() { "none".to_string() } else { w.join(" ") }).unwrap();
    if let Some(v) = &report.conjecture {
        writeln!(s, "conjecture: {v}").unwrap();
        if let Verdict::Inconclusive(reason) = v {
            writeln!(s, "reason: {reason}").unwrap();
        }
    }
    s
}

fn recurrence(name: &str, a: &RecurrenceArgs, depth: Depth) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Json, &[Format::Json, Format::Pretty])?;
    let family = family_from(&a.family);
    build_sequence(&family)?;
    let count = match a.count {
        Some(c) => c,
        None => char_poly(&family.mu, &family.nu, family.n)?.degree() + 3,
    };
    let report = analyze(&family, a.r, count, a.seed, depth)?;
    let config = family_config(Config::new(name), &a.family)
        .with("r", a.r)
        .with("count", count)
        .with("seed", a.seed)
        .with_output(&a.out, format);
    let refutation = if let Some(c) = &report.failure {
        Some(format!("recurrence fails at k = {}: residual {}", c.k, c.residual))
    } else if let Some(Verdict::RefutedAt(k)) = &report.conjecture {
        let residual = report
            .evidence
            .as_ref()
            .and_then(|e| e.certificate.as_ref())
            .map(|c| format!(": residual {}", c.residual));
        Some(format!(
            "predicted minimal polynomial refuted at k = {k}{}",
            residual.unwrap_or_default()
        ))
    } else {
        None
    };
    let text = emit(&config, format, || json!(report), || describe(&report));
    Ok(Outcome { text, refutation })
}

fn kostka_cmd(a: &KostkaArgs) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let shape = shape_from(&a.outer, &a.inner)?;
    if !a.w.is_nonnegative() {
        return Err(Failure(format!("--w {} has a negative entry", a.w)));
    }
    let value = kostka(&shape, &a.w);
    let witness = match a.k {
        Some(k) if value > 0 => Some(stretch_positivity_check(&shape, &a.w, k)?),
        _ => None,
    };
    let config = Config::new("kostka")
        .with("outer", &a.outer)
        .with("inner", &a.inner)
        .with("w", &a.w)
        .with("k", a.k)
        .with_output(&a.out, format);
    ok(emit(
        &config,
        format,
        || json!({ "kostka": value, "witness": witness }),
        || match &witness {
            Some(t) => format!("{value}\n\nwitness for k = {}:\n{t}", a.k.unwrap_or(1)),
            None => value.to_string(),
        },
    ))
}

fn m_basis(a: &ShapeArgs) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Json, &[Format::Json, Format::Pretty])?;
    let shape = shape_from(&a.outer, &a.inner)?;
    let m: BTreeMap<String, u64> = schur_in_m_basis(&shape, a.n)
        .into_iter()
        .map(|(p, c)| (p.to_string(), c))
        .collect();
    let config = Config::new("m-basis")
        .with("outer", &a.outer)
        .with("inner", &a.inner)
        .with("n", a.n)
        .with_output(&a.out, format);
    ok(emit(
        &config,
        format,
        || json!({ "coefficients": m }),
        || m.iter().map(|(p, c)| format!("m{p}: {c}\n")).collect(),
    ))
}

fn polynomiality(a: &PolynomialityArgs) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Json, &[Format::Json, Format::Pretty])?;
    let report = polynomiality_check(&a.mu, &a.nu, a.n, a.kmax)?;
    let config = Config::new("polynomiality")
        .with("mu", &a.mu)
        .with("nu", &a.nu)
        .with("n", a.n)
        .with("kmax", a.kmax)
        .with_output(&a.out, format);
    ok(emit(
        &config,
        format,
        || json!(report),
        || {
            let counts: Vec<String> = report.counts.iter().map(ToString::to_string).collect();
            let coeffs: Vec<String> = report.coefficients.iter().map(ToString::to_string).collect();
            let degree = report.degree.map_or("none".to_string(), |d| d.to_string());
            format!(
                "counts: {}\ndegree: {degree}\ncoefficients: {}\nverdict: {}\n",
                counts.join(" "),
                coeffs.join(" "),
                serde_json::to_value(&report.verdict)
                    .expect("verdict")
                    .as_str()
                    .unwrap_or("")
            )
        },
    ))
}

fn roots(a: &RootsArgs) -> Result<Outcome, Failure> {
    let format = choose(a.out.format, Format::Csv, &[Format::Json, Format::Csv, Format::Pretty])?;
    let family = family_from(&a.family);
    let count = a.family.n.saturating_sub(1);
    let angles = match &a.xi_angles {
        Some(angles) if angles.0.len() != count => {
            return Err(Failure(format!(
                "--xi-angles has {} entries but --n {} needs {count}",
                angles.0.len(),
                a.family.n
            )));
        }
        Some(angles) => angles.0.clone(),
        None => vec![0.0; count],
    };
    if !(a.xi_radius > 0.0 && a.xi_radius.is_finite()) {
        return Err(Failure(format!("--xi-radius must be positive, got {}", a.xi_radius)));
    }
    let xi: Vec<Complex64> = angles.iter().map(|&t| Complex64::from_polar(a.xi_radius, t)).collect();
    let mut seq = build_sequence(&family)?;
    let clouds = limit_experiment(&mut seq, &xi, a.kmax)?;
    let config = family_config(Config::new("roots"), &a.family)
        .with("xi_radius", a.xi_radius)
        .with("xi_angles", &angles)
        .with("kmax", a.kmax)
        .with_output(&a.out, format);
    let text = match format {
        Format::Json => json_document(&config, json!({ "clouds": clouds })),
        Format::Csv => {
            let mut buf = config.comment_lines().into_bytes();
            write_csv(&clouds, &mut buf)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Pretty => {
            let mut body = String::from("k degree deviation unconverged\n");
            for c in &clouds {
                writeln!(
                    body,
                    "{} {} {:.3e} {}",
                    c.k,
                    c.roots.len(),
                    c.deviation,
                    c.unconverged.len()
                )
                .unwrap();
            }
            pretty_document(&config, &body)
        }
    };
    ok(text)
}
