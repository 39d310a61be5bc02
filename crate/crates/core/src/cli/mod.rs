//! Command-line front end: polynomial parsing, subcommands, report output
//! and the result cache. The binary only forwards to [`run`].

mod cache;
mod document;
mod parse;

pub use cache::{Cache, CacheKey, CACHE_DIR_ENV};
pub use document::{Format, Item, ReportDocument, RingInfo, SCHEMA_VERSION};
pub use parse::{parse_expr, parse_polynomial, parse_polynomial_list, ExprAst};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_power, FrobeniusExponent};
use crate::groebner::{Budget, Ideal};
use crate::hilbert::{artinian_length, fit_hilbert_polynomial};
use crate::polyring::{MonomialOrder, PrimeField, Ring, RingRef};
use crate::scenarios::{
    closure_report, default_n_max, default_roster, hilbert_report, paper_suite, shifted_report, verify_scenario_with,
    Scenario, SuiteConfig, VerifyOptions, SHIFTED_GRID_PRIME,
};

#[derive(Parser, Debug)]
#[command(
    name = "tighthilbert",
    version,
    about = "Tight closure and Hilbert polynomial computations over F_p"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. A `--config` TOML file may set the same
/// keys; flags given on the command line win.
#[derive(Args, Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Options {
    /// Field characteristic p (prime).
    #[arg(long = "char", global = true)]
    #[serde(rename = "char")]
    pub characteristic: Option<u32>,
    /// Comma-separated variable names.
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// `grevlex`, `grevlex:<ranking>` or `block<k>:<ranking>`; ranking lists
    /// variable indices from greatest to least.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Largest n tabulated
    #[arg(long, global = true)]
    pub nmax: Option<u32>,
    /// Frobenius exponents q used for inclusion evidence.
    #[arg(long = "q-list", global = true, value_delimiter = ',')]
    pub q_list: Option<Vec<u64>>,
    /// Output format (default: table)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Report cache directory; overrides TIGHTHILBERT_CACHE_DIR
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Maximum number of S-pair reductions per Groebner basis.
    #[arg(long = "budget-pairs", global = true)]
    pub budget_pairs: Option<u64>,
    /// Recorded in the report; reserved for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// TOML file with the same keys as the flags; flags take precedence
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Options {
    /// Fills every unset field from `other`.
    pub fn or(self, other: Options) -> Options {
        Options {
            characteristic: self.characteristic.or(other.characteristic),
            vars: self.vars.or(other.vars),
            order: self.order.or(other.order),
            nmax: self.nmax.or(other.nmax),
            q_list: self.q_list.or(other.q_list),
            format: self.format.or(other.format),
            cache_dir: self.cache_dir.or(other.cache_dir),
            budget_pairs: self.budget_pairs.or(other.budget_pairs),
            seed: self.seed.or(other.seed),
            config: self.config.or(other.config),
        }
    }

    pub fn load_config(path: &std::path::Path) -> Result<Options> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))
    }

    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(pairs) = self.budget_pairs {
            b.max_pair_reductions = pairs;
        }
        b
    }

    fn ring(&self) -> Result<RingRef> {
        let p = self
            .characteristic
            .ok_or_else(|| Error::Usage("--char is required for this command".into()))?;
        let vars = self
            .vars
            .clone()
            .filter(|v| !v.is_empty())
            .ok_or_else(|| Error::Usage("--vars is required for this command".into()))?;
        let order = match &self.order {
            Some(spec) => parse_order(spec, vars.len())?,
            None => MonomialOrder::grevlex(vars.len()),
        };
        Ring::with_order(PrimeField::new(p)?, vars, order).map_err(|e| Error::Usage(e.to_string()))
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            n_max: self.nmax,
            q_list: self.q_list.clone(),
            ..Default::default()
        }
    }
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Reduced Groebner basis of an ideal.
    Gb {
        /// Generators; each argument may hold a comma-separated list.
        gens: Vec<String>,
    },
    /// Normal form of a polynomial modulo an ideal.
    Nf { poly: String, gens: Vec<String> },
    /// Ideal membership.
    Member { poly: String, gens: Vec<String> },
    /// Frobenius power I^[q] with q = p^e.
    Frob {
        #[arg(long, default_value_t = 1)]
        e: u32,
        gens: Vec<String>,
    },
    /// Tight closure of I^n in a diagonal hypersurface, with evidence.
    Closure {
        #[arg(long, value_parser = parse_triple)]
        scenario: (u32, u32, u32),
        #[arg(long)]
        n: u32,
    },
    /// Lengths and fitted Hilbert polynomial, for a scenario's closure
    /// filtration or the powers of an m-primary ideal.
    Hilbert {
        #[arg(long, value_parser = parse_triple)]
        scenario: Option<(u32, u32, u32)>,
        gens: Vec<String>,
    },
    /// End-to-end verification of a scenario or of the full roster.
    Verify {
        #[arg(long, value_parser = parse_triple, conflicts_with = "paper_suite", required_unless_present = "paper_suite")]
        scenario: Option<(u32, u32, u32)>,
        #[arg(long = "paper-suite")]
        paper_suite: bool,
    },
    /// Analytics of the filtration I^n + m^(n+t) in dimension d.
    Filtration {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        d: usize,
    },
}

fn parse_triple(s: &str) -> std::result::Result<(u32, u32, u32), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected p,r,v but got '{s}'"));
    }
    let num = |t: &str| t.parse::<u32>().map_err(|e| format!("'{t}': {e}"));
    Ok((num(parts[0])?, num(parts[1])?, num(parts[2])?))
}

/// `grevlex`, `grevlex:2,0,1` or `block1:2,0,1`.
pub fn parse_order(spec: &str, nvars: usize) -> Result<MonomialOrder> {
    let bad = |m: String| Error::Usage(format!("order '{spec}': {m}"));
    let (kind, ranking) = match spec.split_once(':') {
        Some((k, r)) => (k.trim(), Some(r)),
        None => (spec.trim(), None),
    };
    let ranking: Vec<usize> = match ranking {
        Some(r) => r
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| bad(e.to_string())))
            .collect::<Result<_>>()?,
        None => (0..nvars).collect(),
    };
    if ranking.len() != nvars {
        return Err(bad(format!(
            "ranking has {} entries for {nvars} variables",
            ranking.len()
        )));
    }
    let order = if kind == "grevlex" {
        MonomialOrder::grevlex_ranked(ranking)
    } else if let Some(split) = kind.strip_prefix("block") {
        let split = split.parse::<usize>().map_err(|e| bad(e.to_string()))?;
        MonomialOrder::block(ranking, split)
    } else {
        return Err(bad("unknown order kind".into()));
    };
    order.map_err(|e| bad(e.to_string()))
}

fn scenario(triple: (u32, u32, u32), opts: &Options) -> Result<Scenario> {
    let (p, r, v) = triple;
    let s = Scenario::new(p, r, v as usize).map_err(|e| Error::Usage(e.to_string()))?;
    if v < 2 {
        return Err(Error::Usage("a scenario needs at least two variables".into()));
    }
    Ok(s.with_budget(opts.budget()))
}

fn ideal_from(gens: &[String], ring: &RingRef, opts: &Options) -> Result<Ideal> {
    let mut polys = Vec::new();
    for g in gens {
        polys.extend(parse_polynomial_list(g, ring)?);
    }
    if polys.is_empty() {
        return Err(Error::Usage("the ideal has no generators".into()));
    }
    Ok(Ideal::new(ring, polys)?.with_budget(opts.budget()))
}

fn ring_info(ring: &RingRef) -> RingInfo {
    RingInfo {
        characteristic: ring.characteristic(),
        variables: ring.vars().to_vec(),
        order: ring.order().spec_string(),
    }
}

fn triple_label((p, r, v): (u32, u32, u32)) -> String {
    format!("{p},{r},{v}")
}

fn common_params(opts: &Options) -> Vec<(&'static str, String)> {
    let b = opts.budget();
    let mut out = vec![
        ("budget-pairs", b.max_pair_reductions.to_string()),
        ("budget-degree", b.max_degree.to_string()),
    ];
    if let Some(q) = &opts.q_list {
        out.push(("q-list", q.iter().map(u64::to_string).collect::<Vec<_>>().join(",")));
    }
    out
}

fn algebra(cmd: &Command, opts: &Options) -> Result<ReportDocument> {
    let ring = opts.ring()?;
    let mut doc = ReportDocument::new(command_name(cmd));
    doc.ring = Some(ring_info(&ring));
    match cmd {
        Command::Gb { gens } => {
            let ideal = ideal_from(gens, &ring, opts)?;
            let basis = ideal.basis()?;
            doc.item("size", basis.len().to_string());
            for (i, g) in basis.iter().enumerate() {
                doc.item(format!("g{}", i + 1), g.to_string());
            }
        }
        Command::Nf { poly, gens } => {
            let f = parse_polynomial(poly, &ring)?;
            let ideal = ideal_from(gens, &ring, opts)?;
            doc.item("input", f.to_string());
            doc.item("normal form", ideal.normal_form(&f)?.to_string());
        }
        Command::Member { poly, gens } => {
            let f = parse_polynomial(poly, &ring)?;
            let ideal = ideal_from(gens, &ring, opts)?;
            doc.item("input", f.to_string());
            doc.item("member", ideal.contains(&f)?.to_string());
        }
        Command::Frob { e, gens } => {
            let ideal = ideal_from(gens, &ring, opts)?;
            let q = FrobeniusExponent::new(ring.characteristic(), *e)?;
            doc.param("e", e);
            doc.item("q", q.q().to_string());
            for (i, g) in frobenius_power(&ideal, &q, None)?.gens().iter().enumerate() {
                doc.item(format!("g{}", i + 1), g.to_string());
            }
        }
        Command::Hilbert { gens, .. } => ideal_hilbert(&mut doc, gens, &ring, opts)?,
        _ => unreachable!("scenario commands are handled separately"),
    }
    Ok(doc)
}

/// Lengths of `S/I^n` in the polynomial ring and a fit in dimension `nvars`,
/// using the earliest window on which the fit validates.
fn ideal_hilbert(doc: &mut ReportDocument, gens: &[String], ring: &RingRef, opts: &Options) -> Result<()> {
    let ideal = ideal_from(gens, ring, opts)?;
    let n_max = opts.nmax.unwrap_or(6);
    let d = ring.nvars();
    doc.param("nmax", n_max);
    let mut samples = Vec::new();
    for n in 1..=n_max {
        let len = artinian_length(&ideal.power(n))?;
        doc.item(format!("length n={n}"), len.to_string());
        samples.push((n as i64, len as i64));
    }
    let fitted = (0..samples.len()).find_map(|start| fit_hilbert_polynomial(&samples[start..], d).ok());
    match fitted {
        Some(poly) => doc.item("fitted", format!("{:?}", poly.coeffs())),
        None => doc.item(
            "fitted",
            format!(
                "no stable fit within n <= {n_max}; at least {} samples are needed",
                d + 4
            ),
        ),
    }
    Ok(())
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gb { .. } => "gb",
        Command::Nf { .. } => "nf",
        Command::Member { .. } => "member",
        Command::Frob { .. } => "frob",
        Command::Closure { .. } => "closure",
        Command::Hilbert { .. } => "hilbert",
        Command::Verify { .. } => "verify",
        Command::Filtration { .. } => "filtration",
    }
}

type Deferred<'a> = Box<dyn Fn() -> Result<ReportDocument> + 'a>;

/// Runs one parsed invocation and returns its report document, consulting
/// the cache for the scenario commands.
pub fn execute(cmd: &Command, opts: &Options) -> Result<ReportDocument> {
    let (key_params, compute): (Vec<(&str, String)>, Deferred) = match cmd {
        Command::Closure { scenario: sc, n } => {
            let mut k = common_params(opts);
            k.push(("scenario", triple_label(*sc)));
            k.push(("n", n.to_string()));
            let (sc, n) = (*sc, *n);
            (
                k,
                Box::new(move || {
                    let s = scenario(sc, opts)?;
                    let mut doc = ReportDocument::new("closure");
                    let rep = closure_report(&s, n, &opts.verify_options());
                    if let Ok(c) = crate::scenarios::tight_closure_powers(&s, n) {
                        for (i, g) in c.closure.basis()?.iter().enumerate() {
                            doc.item(format!("basis{}", i + 1), g.to_string());
                        }
                    }
                    doc.reports.push(rep);
                    Ok(doc)
                }),
            )
        }
        Command::Hilbert { scenario: Some(sc), .. } => {
            let mut k = common_params(opts);
            k.push(("scenario", triple_label(*sc)));
            let sc = *sc;
            (
                k,
                Box::new(move || {
                    let s = scenario(sc, opts)?;
                    let mut doc = ReportDocument::new("hilbert");
                    doc.reports
                        .push(hilbert_report(&s, opts.nmax.unwrap_or_else(|| default_n_max(&s)), None));
                    Ok(doc)
                }),
            )
        }
        Command::Verify { scenario: Some(sc), .. } => {
            let mut k = common_params(opts);
            k.push(("scenario", triple_label(*sc)));
            let sc = *sc;
            (
                k,
                Box::new(move || {
                    let s = scenario(sc, opts)?;
                    let mut doc = ReportDocument::new("verify");
                    doc.reports.push(verify_scenario_with(&s, &opts.verify_options()));
                    Ok(doc)
                }),
            )
        }
        Command::Verify { scenario: None, .. } => {
            let mut k = common_params(opts);
            k.push(("suite", "paper".into()));
            (
                k,
                Box::new(move || {
                    let mut doc = ReportDocument::new("verify");
                    doc.reports = paper_suite(&SuiteConfig {
                        roster: default_roster(),
                        verify: opts.verify_options(),
                        budget: opts.budget(),
                    });
                    Ok(doc)
                }),
            )
        }
        Command::Filtration { r, t, d } => {
            let p = opts.characteristic.unwrap_or(SHIFTED_GRID_PRIME);
            let mut k = common_params(opts);
            k.push(("filtration", format!("{p},{r},{t},{d}")));
            let (r, t, d) = (*r, *t, *d);
            (
                k,
                Box::new(move || {
                    let mut doc = ReportDocument::new("filtration");
                    doc.reports.push(shifted_report(p, r, t, d, opts.nmax.unwrap_or(5)));
                    Ok(doc)
                }),
            )
        }
        _ => return algebra(cmd, opts).map(|d| finish(d, opts)),
    };
    let mut key_params = key_params;
    if let Some(n) = opts.nmax {
        key_params.push(("nmax", n.to_string()));
    }
    let key = CacheKey::new(command_name(cmd), &key_params);
    let cache = Cache::from_sources(opts.cache_dir.as_deref());
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        log::info!("served from cache {}", key.digest());
        return Ok(hit);
    }
    let mut doc = compute()?;
    for (k, v) in &key_params {
        doc.param(k, v);
    }
    let doc = finish(doc, opts);
    if let Some(c) = &cache {
        if !doc.budget_exceeded() {
            if let Err(e) = c.put(&key, &doc) {
                log::warn!("could not write cache entry in {}: {e}", c.dir().display());
            }
        }
    }
    Ok(doc)
}

fn finish(mut doc: ReportDocument, opts: &Options) -> ReportDocument {
    if let Some(seed) = opts.seed {
        doc.param("seed", seed);
    }
    doc
}

/// Exit status for an error: 3 for budgets, 1 for verification failures,
/// 2 for everything caused by the input.
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Budget(_) => 3,
        Error::Verification(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the rendered report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run_cli(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_exit_code(&e)
        }
    }
}

fn run_cli(cli: &Cli) -> Result<(String, i32)> {
    let opts = match &cli.opts.config {
        Some(path) => cli.opts.clone().or(Options::load_config(path)?),
        None => cli.opts.clone(),
    };
    let doc = execute(&cli.command, &opts)?;
    let text = doc.render(opts.format.unwrap_or(Format::Table))?;
    Ok((text, doc.exit_code()))
}
