//! Command-line front end: group-spec files and the five commands.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::construct::{self, ConstructError, Outcome};
use crate::gf::{FieldCtx, FieldError};
use crate::group::{dual_matrix, is_transvection, GroupError, PGroup, SquareMatrix};
use crate::oracle::{self, KemperReason, OracleError};
use crate::poly::{Monomial, Poly, PolyError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

fn parse_err(line: usize, reason: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        reason: reason.into(),
    }
}

/// A parsed group-spec file.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub ctx: Arc<FieldCtx>,
    pub dim: usize,
    pub names: Vec<String>,
    pub gen_names: Vec<String>,
    pub gens: Vec<SquareMatrix>,
}

fn parse_modulus(p: u64, text: &str, line: usize) -> Result<Vec<u64>, CliError> {
    let fp = Arc::new(FieldCtx::prime(p)?);
    let f =
        Poly::parse(&fp, &["t".to_string()], text).map_err(|e| parse_err(line, e.to_string()))?;
    let deg = f.degree().ok_or_else(|| parse_err(line, "zero modulus"))?;
    Ok((0..=deg)
        .map(|e| f.coeff(&Monomial::new(&[e])).index())
        .collect())
}

/// Parses `[[a,b],[c,d]]` with entries in field-element syntax.
pub fn parse_matrix(ctx: &FieldCtx, text: &str) -> Result<SquareMatrix, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(|| "matrix must look like [[..],[..]]".to_string())?;
    let mut rows = Vec::new();
    for row in inner.split("],[") {
        let entries = row
            .split(',')
            .map(|e| ctx.parse(e).map_err(|err| err.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(entries);
    }
    SquareMatrix::from_rows(rows).ok_or_else(|| "matrix is not square".to_string())
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix("_dual") {
        Some(base) => base.to_string(),
        None => format!("{name}_dual"),
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, CliError> {
        let mut p: Option<(u64, usize)> = None;
        let mut field: Option<(String, usize)> = None;
        let mut dim: Option<(usize, usize)> = None;
        let mut names: Option<(Vec<String>, usize)> = None;
        let mut raw_gens: Vec<(String, String, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(line_no, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(name) = key.strip_prefix("gen ") {
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(parse_err(line_no, "bad generator name"));
                }
                raw_gens.push((name.to_string(), value.to_string(), line_no));
                continue;
            }
            match key {
                "p" => {
                    p = Some((
                        value
                            .parse()
                            .map_err(|_| parse_err(line_no, "p must be an integer"))?,
                        line_no,
                    ))
                }
                "field" => field = Some((value.to_string(), line_no)),
                "dim" => {
                    dim = Some((
                        value
                            .parse()
                            .map_err(|_| parse_err(line_no, "dim must be an integer"))?,
                        line_no,
                    ))
                }
                "basis" => {
                    names = Some((
                        value.split_whitespace().map(str::to_string).collect(),
                        line_no,
                    ))
                }
                _ => return Err(parse_err(line_no, format!("unknown key `{key}`"))),
            }
        }
        let (p, p_line) = p.ok_or_else(|| parse_err(0, "missing `p = ...`"))?;
        let ctx = match &field {
            Some((m, line)) => {
                let coeffs = parse_modulus(p, m, *line)?;
                FieldCtx::new(p, Some(&coeffs)).map_err(|e| parse_err(*line, e.to_string()))?
            }
            None => FieldCtx::prime(p).map_err(|e| parse_err(p_line, e.to_string()))?,
        };
        let ctx = Arc::new(ctx);
        let (dim, dim_line) = dim.ok_or_else(|| parse_err(0, "missing `dim = ...`"))?;
        if dim == 0 {
            return Err(parse_err(dim_line, "dim must be positive"));
        }
        let names = match names {
            Some((n, line)) => {
                if n.len() != dim {
                    return Err(parse_err(
                        line,
                        format!("basis has {} names, dim is {dim}", n.len()),
                    ));
                }
                let mut sorted = n.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != n.len() {
                    return Err(parse_err(line, "basis names repeat"));
                }
                n
            }
            None => (1..=dim).map(|i| format!("x{i}")).collect(),
        };
        let mut gen_names = Vec::new();
        let mut gens = Vec::new();
        for (name, value, line) in raw_gens {
            let m = parse_matrix(&ctx, &value).map_err(|e| parse_err(line, e))?;
            if m.dim() != dim {
                return Err(parse_err(
                    line,
                    format!("matrix is {0}x{0}, dim is {dim}", m.dim()),
                ));
            }
            gen_names.push(name);
            gens.push(m);
        }
        Ok(GroupSpec {
            ctx,
            dim,
            names,
            gen_names,
            gens,
        })
    }

    pub fn group(&self) -> Result<PGroup, GroupError> {
        PGroup::new(&self.ctx, self.dim, self.gens.clone())
    }

    /// The dual action in the reversed dual basis.
    pub fn dual(&self) -> GroupSpec {
        GroupSpec {
            ctx: self.ctx.clone(),
            dim: self.dim,
            names: self.names.iter().rev().map(|n| dual_name(n)).collect(),
            gen_names: self.gen_names.clone(),
            gens: self
                .gens
                .iter()
                .map(|g| dual_matrix(&self.ctx, g))
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("p = {}\n", self.ctx.characteristic());
        if let Some(m) = self.ctx.modulus() {
            let fp = Arc::new(FieldCtx::prime(self.ctx.characteristic() as u64).expect("prime"));
            let mut poly = Poly::zero(&fp, 1);
            for (e, &c) in m.iter().enumerate() {
                poly.add_term(Monomial::new(&[e as u32]), fp.from_int(c as i64));
            }
            s.push_str(&format!(
                "field = {}\n",
                poly.format(&["t".to_string()]).replace(' ', "")
            ));
        }
        s.push_str(&format!("dim = {}\n", self.dim));
        s.push_str(&format!("basis = {}\n", self.names.join(" ")));
        let width = self.gen_names.iter().map(|n| n.len()).max().unwrap_or(0);
        for (name, g) in self.gen_names.iter().zip(&self.gens) {
            s.push_str(&format!("gen {name:<width$} = {}\n", g.format(&self.ctx)));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Construct,
    Verify,
    Oracle,
    Dual,
}

#[derive(Debug, Parser)]
#[command(
    name = "modinv",
    about = "Invariant rings of finite p-groups over finite fields"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    pub spec_path: PathBuf,
    /// Largest degree for graded computations (oracle, verify).
    #[arg(long = "max-degree")]
    pub max_degree: Option<u32>,
    /// Candidate generators, one polynomial per line (verify).
    #[arg(long = "gens")]
    pub gens_path: Option<PathBuf>,
    /// Seed for randomized commands; no current command draws random numbers.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long = "out")]
    pub output: Option<PathBuf>,
}

/// A command's text output and whether it reports a mathematical negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub negative: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report {
            text,
            negative: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.negative {
            2
        } else {
            0
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn linear_form(spec: &GroupSpec, row: &[crate::gf::FieldElement]) -> String {
    Poly::linear(&spec.ctx, row).format(&spec.names)
}

pub fn cmd_classify(spec: &GroupSpec) -> Result<Report, CliError> {
    let g = spec.group()?;
    let ctx = &spec.ctx;
    let mut s = String::new();
    s.push_str(&format!("field: {ctx}\n"));
    s.push_str(&format!("dim: {}\n", spec.dim));
    s.push_str(&format!("order: {}\n", g.order()));
    s.push_str("p_group: true\n");
    s.push_str(&format!("abelian: {}\n", g.is_abelian()));
    s.push_str(&format!(
        "elementary_abelian: {}\n",
        g.is_elementary_abelian()
    ));
    let gen_census: Vec<String> = spec
        .gen_names
        .iter()
        .zip(&spec.gens)
        .map(|(n, m)| {
            format!(
                "{n}:{}",
                if is_transvection(ctx, m) {
                    "transvection"
                } else {
                    "other"
                }
            )
        })
        .collect();
    s.push_str(&format!("generators: {}\n", gen_census.join(" ")));
    s.push_str(&format!("transvections: {}\n", g.transvections().len()));
    s.push_str(&format!(
        "generated_by_transvections: {}\n",
        g.generated_by_transvections()
    ));
    let fixed: Vec<String> = g
        .fixed_space()
        .iter()
        .map(|r| linear_form(spec, r))
        .collect();
    s.push_str(&format!("fixed_space: {}\n", fixed.join(", ")));
    let flag = g.triangulating_basis();
    let flag_text: Vec<String> = flag
        .vectors()
        .iter()
        .map(|r| linear_form(spec, r))
        .collect();
    s.push_str(&format!("triangulating_basis: {}\n", flag_text.join(", ")));
    if spec.dim == 4 {
        s.push_str("stabilizers:\n");
        let vs = flag.vectors();
        for i in 0..4 {
            for j in i + 1..4 {
                let w = [vs[i].clone(), vs[j].clone()];
                let st = g.pointwise_stabilizer(&w);
                s.push_str(&format!(
                    "  <{}, {}>: order {}\n",
                    linear_form(spec, &vs[i]),
                    linear_form(spec, &vs[j]),
                    st.order()
                ));
            }
        }
    }
    Ok(Report::ok(s))
}

pub fn cmd_construct(spec: &GroupSpec) -> Result<Report, CliError> {
    let g = spec.group()?;
    match construct::construct(&g)? {
        Outcome::Polynomial(pres) => Ok(Report::ok(format!(
            "result: Polynomial\n{}",
            pres.to_text(&spec.names)
        ))),
        Outcome::NotPolynomial(d) => Ok(Report {
            text: d.to_string(),
            negative: true,
        }),
    }
}

/// Reads candidate generators: one per line, blank lines and `#` comments
/// skipped, an optional `name =` prefix dropped. A `construct` report is
/// also accepted; then only the indented block under `generators:` is read.
pub fn parse_generators(spec: &GroupSpec, text: &str) -> Result<Vec<Poly>, CliError> {
    let lines: Vec<(usize, &str)> = match text.lines().position(|l| l.trim_end() == "generators:") {
        Some(h) => text
            .lines()
            .enumerate()
            .skip(h + 1)
            .take_while(|(_, l)| l.starts_with(' ') || l.starts_with('\t'))
            .collect(),
        None => text.lines().enumerate().collect(),
    };
    let mut out = Vec::new();
    for (i, raw) in lines {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let body = match line.split_once('=') {
            Some((_, rhs)) => rhs.trim(),
            None => line,
        };
        out.push(
            Poly::parse(&spec.ctx, &spec.names, body)
                .map_err(|e| parse_err(i + 1, e.to_string()))?,
        );
    }
    Ok(out)
}

pub fn cmd_verify(
    spec: &GroupSpec,
    gens_text: &str,
    max_degree: Option<u32>,
) -> Result<Report, CliError> {
    let g = spec.group()?;
    let fs = parse_generators(spec, gens_text)?;
    let mut s = String::new();
    if fs.len() != spec.dim {
        s.push_str("result: fail\n");
        s.push_str(&format!(
            "reason: WrongGeneratorCount: expected {}, got {}\n",
            spec.dim,
            fs.len()
        ));
        return Ok(Report {
            text: s,
            negative: true,
        });
    }
    let kemper = oracle::kemper_criterion(&g, &fs)?;
    let degrees: Vec<u32> = fs
        .iter()
        .map(|f| f.homogeneous_degree().unwrap_or(0))
        .collect();
    let mut pass = kemper.polynomial;
    let mut hilbert_line = "hilbert_check: skipped\n".to_string();
    if pass {
        let top = *degrees.iter().max().unwrap_or(&1);
        let bound = max_degree.unwrap_or_else(|| (2 * top).min(12));
        let h = oracle::hilbert_check(&g, &degrees, bound)?;
        hilbert_line = match h.first_mismatch {
            None => format!("hilbert_check: agrees up to degree {bound}\n"),
            Some(d) => format!(
                "hilbert_check: mismatch at degree {d} (series {}, invariants {})\n",
                h.expected[d as usize], h.actual[d as usize]
            ),
        };
        pass &= h.agrees;
    }
    s.push_str(&format!("result: {}\n", if pass { "pass" } else { "fail" }));
    match &kemper.reason {
        KemperReason::Polynomial(_) => s.push_str("reason: criterion satisfied\n"),
        other => s.push_str(&format!("reason: {other}\n")),
    }
    let degs: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    s.push_str(&format!("degrees: {}\n", degs.join(" ")));
    s.push_str(&format!("group_order: {}\n", g.order()));
    s.push_str(&format!("jacobian_nonzero: {}\n", kemper.jacobian));
    if let Some(sop) = &kemper.sop {
        match sop.witness_degree {
            Some(d) => s.push_str(&format!("sop_witness_degree: {d}\n")),
            None => s.push_str("sop_witness_degree: absent\n"),
        }
    }
    s.push_str(&hilbert_line);
    Ok(Report {
        text: s,
        negative: !pass,
    })
}

pub fn cmd_oracle(spec: &GroupSpec, max_degree: u32) -> Result<Report, CliError> {
    if max_degree < 1 {
        return Err(CliError::Usage("--max-degree must be at least 1".into()));
    }
    let g = spec.group()?;
    let report = oracle::minimal_generator_report(&g, max_degree)?;
    Ok(Report::ok(format!("order: {}\n{report}", g.order())))
}

pub fn cmd_dual(spec: &GroupSpec) -> Result<Report, CliError> {
    Ok(Report::ok(spec.dual().to_text()))
}

pub const DEFAULT_ORACLE_DEGREE: u32 = 4;

/// Runs one command and returns its report.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = GroupSpec::parse(&read(&cfg.spec_path)?)?;
    match cfg.command {
        Command::Classify => cmd_classify(&spec),
        Command::Construct => cmd_construct(&spec),
        Command::Verify => {
            let path = cfg
                .gens_path
                .as_ref()
                .ok_or_else(|| CliError::Usage("verify needs --gens FILE".into()))?;
            cmd_verify(&spec, &read(path)?, cfg.max_degree)
        }
        Command::Oracle => cmd_oracle(&spec, cfg.max_degree.unwrap_or(DEFAULT_ORACLE_DEGREE)),
        Command::Dual => cmd_dual(&spec),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cfg) {
        Ok(report) => {
            if let Some(out) = &cfg.output {
                if let Err(e) = fs::write(out, &report.text) {
                    eprintln!("error: {}: {e}", out.display());
                    return 1;
                }
            } else {
                print!("{}", report.text);
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
