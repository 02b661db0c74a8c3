//! Command-line front end. `main` only parses arguments and maps the outcome to an exit code.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cfrac;
use crate::cycles::{self, CycleDescriptor, Surface};
use crate::error::{Error, Result};
use crate::quad::QuadExt;
use crate::tracksim::{self, TrackLibrary};
use crate::words::ParamWord;

const DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "agol",
    version,
    about = "Exact dilatations, Agol cycles and train-track splitting for the families Φ_p and φ_p",
    after_help = "Words are written block n first: \"p_n,p_n',q_n;...;p_1,p_1',q_1\". \
                  Pass --reverse to write block 1 first."
)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Read words with block 1 first
    #[arg(long, global = true)]
    pub reverse: bool,
    /// Track encoding file (default: $AGOL_TRACKS, else the built-in encodings)
    #[arg(long, global = true, value_name = "PATH")]
    pub tracks: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact dilatation λ_p with its minimal polynomial
    Dilatation { word: String },
    /// Normalized eigenvector (s, h_0, 1-s) and rectangle data
    Eigenvector { word: String },
    /// Closed-form Agol cycle
    Cycle {
        word: String,
        /// torus or sphere (default: both)
        #[arg(long)]
        surface: Option<Surface>,
    },
    /// Run maximal splittings from the start track until it returns rescaled by λ⁻¹
    Simulate {
        word: String,
        #[arg(long, default_value = "torus")]
        surface: Surface,
        /// Step budget (default: four times the closed-form cycle length)
        #[arg(long)]
        max_steps: Option<usize>,
        /// Include the full track after every step
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two words give conjugate maps
    Conjugate { word1: String, word2: String },
    /// Canonical representative of a word's shift/flip class
    Canonical { word: String },
    /// Compare closed forms against the simulator
    Verify {
        words: Vec<String>,
        /// torus or sphere (default: both)
        #[arg(long)]
        surface: Option<Surface>,
        /// Also check this many random words
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Invariant table for a file of words, one per line ("-" for stdin)
    Batch { file: PathBuf },
}

/// Outcome of a successful command: `false` when `verify` found a mismatch.
pub type Passed = bool;

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Passed> {
    let parse = |s: &str| ParamWord::parse_with(s, cli.reverse);
    match &cli.command {
        Command::Dilatation { word } => {
            let r = dilatation_report(&parse(word)?);
            emit(cli, out, &r, |r| {
                format!(
                    "λ = {}\nminimal polynomial: {}\nλ ≈ {} (approximate)\n",
                    r.dilatation, r.minimal_polynomial, r.approx
                )
            })?;
        }
        Command::Eigenvector { word } => {
            let r = eigenvector_report(&parse(word)?);
            emit(cli, out, &r, |r| {
                let [x, y, z] = &r.eigenvector;
                format!(
                    "v = ({x}, {y}, {z})\ns = {}\nh_0 = {}\nλ = {}\nsymmetric: {}\n",
                    r.split_ratio, r.height, r.dilatation, r.symmetric
                )
            })?;
        }
        Command::Cycle { word, surface } => {
            let p = parse(word)?;
            let ds: Vec<CycleDescriptor> =
                surfaces(*surface).map(|s| cycles::cycle(s, &p)).collect();
            if cli.json {
                if ds.len() == 1 {
                    json_line(out, &ds[0])?;
                } else {
                    json_line(out, &ds)?;
                }
            } else {
                for d in &ds {
                    out.write_all(render_cycle(d).as_bytes())?;
                }
            }
        }
        Command::Simulate {
            word,
            surface,
            max_steps,
            trace,
        } => {
            let lib = library(cli)?;
            let p = parse(word)?;
            let max = max_steps.unwrap_or_else(|| tracksim::default_max_steps(*surface, &p));
            simulate(cli, out, &lib, *surface, &p, max, *trace)?;
        }
        Command::Conjugate { word1, word2 } => {
            let v = conjugate(&parse(word1)?, &parse(word2)?);
            emit(cli, out, &v, render_verdict)?;
        }
        Command::Canonical { word } => {
            let p = parse(word)?;
            let c = p.canonical_form();
            if cli.json {
                json_line(out, &serde_json::json!({ "word": p, "canonical": c }))?;
            } else {
                writeln!(out, "{c}")?;
            }
        }
        Command::Verify {
            words,
            surface,
            random,
            seed,
            max_steps,
        } => {
            let lib = library(cli)?;
            let mut ps = words.iter().map(|w| parse(w)).collect::<Result<Vec<_>>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            ps.extend((0..random.unwrap_or(0)).map(|_| ParamWord::random(&mut rng, 3, 3)));
            if ps.is_empty() {
                return Err(Error::Parse(
                    "verify needs at least one word or --random N".into(),
                ));
            }
            let mut all = true;
            let mut reports = Vec::new();
            for p in &ps {
                for s in surfaces(*surface) {
                    let r = verify_one(&lib, s, p, *max_steps);
                    all &= r.pass;
                    if !cli.json {
                        out.write_all(render_verify(&r).as_bytes())?;
                    }
                    reports.push(r);
                }
            }
            if cli.json {
                json_line(out, &reports)?;
            }
            return Ok(all);
        }
        Command::Batch { file } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                for line in std::io::stdin().lock().lines() {
                    s.push_str(&line?);
                    s.push('\n');
                }
                s
            } else {
                std::fs::read_to_string(file)
                    .map_err(|e| Error::Io(format!("cannot read {}: {e}", file.display())))?
            };
            let (rows, errors) = batch(&text, cli.reverse);
            for (line, e) in &errors {
                writeln!(err, "line {line}: {e}")?;
            }
            if cli.json {
                json_line(out, &rows)?;
            } else {
                writeln!(out, "{}", BatchRow::HEADER.join("\t"))?;
                for r in &rows {
                    writeln!(out, "{}", r.tsv())?;
                }
            }
            if let Some((line, e)) = errors.into_iter().next() {
                return Err(Error::Parse(format!(
                    "batch had errors, first at line {line}: {e}"
                )));
            }
        }
    }
    Ok(true)
}

fn surfaces(s: Option<Surface>) -> impl Iterator<Item = Surface> {
    Surface::ALL
        .into_iter()
        .filter(move |x| s.is_none_or(|s| s == *x))
}

/// `--tracks` first, then `$AGOL_TRACKS`, then the built-in file.
pub fn library(cli: &Cli) -> Result<TrackLibrary> {
    match &cli.tracks {
        Some(p) => TrackLibrary::from_path(p),
        None => TrackLibrary::from_env(),
    }
}

fn json_line<T: Serialize + ?Sized>(out: &mut dyn Write, v: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn emit<T: Serialize>(
    cli: &Cli,
    out: &mut dyn Write,
    v: &T,
    text: impl Fn(&T) -> String,
) -> Result<()> {
    if cli.json {
        json_line(out, v)
    } else {
        out.write_all(text(v).as_bytes())?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DilatationReport {
    pub word: ParamWord,
    pub dilatation: QuadExt,
    /// `t^2 + c1 t + c0` as text
    pub minimal_polynomial: String,
    /// decimal rendering, for display only
    pub approx: String,
}

pub fn dilatation_report(p: &ParamWord) -> DilatationReport {
    let l = cfrac::dilatation(p);
    DilatationReport {
        word: p.clone(),
        minimal_polynomial: poly_text(&l.minimal_polynomial()),
        approx: l.to_decimal(DIGITS),
        dilatation: l,
    }
}

fn poly_text(c: &[num_bigint::BigInt; 3]) -> String {
    use num_traits::{One, Signed, Zero};
    let mut s = String::new();
    for (coef, mono) in c.iter().zip(["t^2", "t", ""]) {
        if coef.is_zero() {
            continue;
        }
        let sign = if coef.is_negative() { "-" } else { "+" };
        if s.is_empty() {
            if coef.is_negative() {
                s.push('-');
            }
        } else {
            let _ = write!(s, " {sign} ");
        }
        let a = coef.abs();
        if !a.is_one() || mono.is_empty() {
            let _ = write!(s, "{a}");
        }
        s.push_str(mono);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvectorReport {
    pub word: ParamWord,
    pub eigenvector: [QuadExt; 3],
    pub split_ratio: QuadExt,
    pub height: QuadExt,
    pub dilatation: QuadExt,
    pub symmetric: bool,
}

pub fn eigenvector_report(p: &ParamWord) -> EigenvectorReport {
    let r = cfrac::rectangle_data(p);
    let v = cfrac::eigenvector_of(&r);
    EigenvectorReport {
        word: p.clone(),
        split_ratio: v[0].clone(),
        height: v[1].clone(),
        eigenvector: v,
        dilatation: r.dilatation,
        symmetric: p.is_symmetric(),
    }
}

pub fn render_cycle(d: &CycleDescriptor) -> String {
    format!(
        "{} {}\n  split word  {} ({})\n  length      {}\n  total       {}\n  dilatation  {}\n  start       ({}, λv)\n",
        d.surface,
        d.word,
        d.split_word.powers(),
        d.split_word,
        d.length,
        d.total,
        d.dilatation,
        d.start_track
    )
}

#[derive(Serialize)]
struct TraceLine<'a> {
    #[serde(flatten)]
    record: &'a tracksim::StepRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    track: Option<&'a tracksim::RibbonTrack>,
}

#[derive(Serialize)]
struct SimulationSummary<'a> {
    surface: Surface,
    word: &'a ParamWord,
    length: usize,
    scale: &'a QuadExt,
    total: usize,
    split_word: String,
    primitive: &'a tracksim::CycleFound,
}

fn simulate(
    cli: &Cli,
    out: &mut dyn Write,
    lib: &TrackLibrary,
    surface: Surface,
    p: &ParamWord,
    max: usize,
    trace: bool,
) -> Result<()> {
    let start = tracksim::start_track(lib, surface, p)?;
    let scale = cfrac::dilatation(p).inverse()?;
    let cycle = tracksim::agol_cycle(&start, &scale, max)?;
    let snaps = if trace {
        tracksim::run(&start, cycle.length)?.snapshots
    } else {
        Vec::new()
    };
    for r in &cycle.steps {
        let track = snaps.get(r.step).map(|s| &**s);
        if cli.json {
            json_line(out, &TraceLine { record: r, track })?;
        } else {
            writeln!(
                out,
                "step {:>3}  {}  number {}  max {}  branches {:?}",
                r.step,
                r.kind.letter(),
                r.splitting_number,
                r.max_weight,
                r.branches
            )?;
            if let Some(t) = track {
                let ws: Vec<String> = t.weights().iter().map(|w| w.to_string()).collect();
                writeln!(out, "          weights [{}]", ws.join(", "))?;
            }
        }
    }
    let summary = SimulationSummary {
        surface,
        word: p,
        length: cycle.length,
        scale: &cycle.scale,
        total: cycle.total(),
        split_word: cycle.split_word().to_string(),
        primitive: &cycle.primitive,
    };
    if cli.json {
        json_line(out, &serde_json::json!({ "cycle": summary }))?;
    } else {
        writeln!(
            out,
            "cycle: m = {}, scale = {}, Σ numbers = {}, word {}",
            summary.length, summary.scale, summary.total, summary.split_word
        )?;
        if cycle.primitive.length != cycle.length {
            writeln!(
                out,
                "first return: m = {}, scale = {}",
                cycle.primitive.length, cycle.primitive.scale
            )?;
        }
    }
    Ok(())
}

/// `s` of the aligned words and the two comparisons that separate them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitRatioWitness {
    /// `T^shift(word1)` has the same block profile as `word2`
    pub shift: usize,
    pub s1: QuadExt,
    pub s2: QuadExt,
    pub s1_ne_s2: bool,
    pub sum_ne_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub word1: ParamWord,
    pub word2: ParamWord,
    pub equivalent: bool,
    /// `(k, flipped)` with `T^k(word1)` equal to `word2` or to its flip
    pub certificate: Option<(usize, bool)>,
    /// for inequivalent words with matching `(p+p', q)` profiles
    pub witnesses: Vec<SplitRatioWitness>,
    /// different `λ`, `ℓ` or `N` already separate the words
    pub invariants_differ: bool,
}

pub fn conjugate(p: &ParamWord, t: &ParamWord) -> Verdict {
    let certificate = p.equivalence_certificate(t);
    let mut witnesses = Vec::new();
    if certificate.is_none() && p.n() == t.n() {
        let st = cfrac::split_ratio(t);
        for k in 0..p.n() {
            let q = p.shift_by(k);
            if q.profile() != t.profile() {
                continue;
            }
            let sq = cfrac::split_ratio(&q);
            witnesses.push(SplitRatioWitness {
                shift: k,
                s1_ne_s2: sq != st,
                sum_ne_one: &sq + &st != QuadExt::one(),
                s1: sq,
                s2: st.clone(),
            });
        }
    }
    let inv = |w: &ParamWord| {
        let lam = cfrac::dilatation(w);
        let per: Vec<_> = Surface::ALL
            .iter()
            .map(|&s| {
                (
                    cycles::split_word(s, w).len(),
                    cycles::total_splitting_number(s, w),
                )
            })
            .collect();
        (lam, per)
    };
    Verdict {
        word1: p.clone(),
        word2: t.clone(),
        equivalent: certificate.is_some(),
        certificate,
        witnesses,
        invariants_differ: inv(p) != inv(t),
    }
}

fn render_verdict(v: &Verdict) -> String {
    let mut s = String::new();
    match v.certificate {
        Some((k, flip)) => {
            let _ = writeln!(
                s,
                "equivalent: T^{k}({}) = {}{}",
                v.word1,
                if flip { "f" } else { "" },
                if flip {
                    format!("({})", v.word2)
                } else {
                    v.word2.to_string()
                }
            );
        }
        None => {
            let _ = writeln!(s, "not equivalent");
            if v.invariants_differ {
                let _ = writeln!(s, "  λ, ℓ or N differ");
            }
            for w in &v.witnesses {
                let _ = writeln!(
                    s,
                    "  shift {}: s = {} vs {} (differ: {}), sum ≠ 1: {}",
                    w.shift, w.s1, w.s2, w.s1_ne_s2, w.sum_ne_one
                );
            }
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub surface: Surface,
    pub word: ParamWord,
    pub pass: bool,
    pub checks: Vec<tracksim::Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn verify_one(
    lib: &TrackLibrary,
    surface: Surface,
    p: &ParamWord,
    max: Option<usize>,
) -> VerifyReport {
    let res = match max {
        Some(m) => tracksim::verify_with_budget(lib, surface, p, m),
        None => tracksim::verify(lib, surface, p),
    };
    let (checks, error) = match res {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    VerifyReport {
        surface,
        word: p.clone(),
        pass: error.is_none() && checks.iter().all(|c| c.pass),
        checks,
        error,
    }
}

fn render_verify(r: &VerifyReport) -> String {
    let mut s = format!(
        "{} {} {}\n",
        if r.pass { "PASS" } else { "FAIL" },
        r.surface,
        r.word
    );
    if let Some(e) = &r.error {
        let _ = writeln!(s, "  error: {e}");
    }
    for c in r.checks.iter().filter(|c| !c.pass) {
        let _ = writeln!(
            s,
            "  {}: expected {}, found {}",
            c.name, c.expected, c.found
        );
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    pub word: ParamWord,
    pub canonical: ParamWord,
    pub dilatation: QuadExt,
    pub torus_length: usize,
    pub torus_total: u64,
    pub sphere_length: usize,
    pub sphere_total: u64,
    pub symmetric: bool,
}

impl BatchRow {
    pub const HEADER: [&'static str; 8] = [
        "word",
        "canonical",
        "lambda",
        "l_torus",
        "N_torus",
        "l_sphere",
        "N_sphere",
        "symmetric",
    ];

    pub fn new(p: &ParamWord) -> Self {
        let t = |s| {
            (
                cycles::split_word(s, p).len(),
                cycles::total_splitting_number(s, p),
            )
        };
        let (tl, tn) = t(Surface::Torus);
        let (sl, sn) = t(Surface::Sphere);
        BatchRow {
            word: p.clone(),
            canonical: p.canonical_form(),
            dilatation: cfrac::dilatation(p),
            torus_length: tl,
            torus_total: tn,
            sphere_length: sl,
            sphere_total: sn,
            symmetric: p.is_symmetric(),
        }
    }

    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.word,
            self.canonical,
            self.dilatation,
            self.torus_length,
            self.torus_total,
            self.sphere_length,
            self.sphere_total,
            self.symmetric
        )
    }
}

/// Rows for every parsable line; blank lines and `#` comments are skipped.
pub fn batch(text: &str, reverse: bool) -> (Vec<BatchRow>, Vec<(usize, Error)>) {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(lines.len().max(1));
    let chunk = lines.len().div_ceil(workers).max(1);
    let results: Vec<(usize, Result<BatchRow>)> = std::thread::scope(|s| {
        let handles: Vec<_> = lines
            .chunks(chunk)
            .map(|c| {
                s.spawn(move || {
                    c.iter()
                        .map(|&(i, l)| {
                            (
                                i,
                                ParamWord::parse_with(l, reverse).map(|p| BatchRow::new(&p)),
                            )
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("batch worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (i, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => errors.push((i, e)),
        }
    }
    (rows, errors)
}
