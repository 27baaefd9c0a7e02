//! Subcommand implementations. Each returns an [`Outcome`]: exit code 0 for
//! success or a true answer, 1 for an exhausted search or a false answer,
//! 2 for input errors.

use serde::Serialize;

use divalg::algebra::{is_division_quaternion, AlgebraDef, AlgebraElem, AlgebraKind, Sampler};
use divalg::error::{Error, Result};
use divalg::identities::{is_alg_bounded, left_minpoly, minpoly_element};
use divalg::maxsubfield::{
    search_add_commutator, search_mult_commutator, verify_bound_d2, BoundMode, BoundReport,
    CommutatorWitness,
};
use divalg::rewrite::{eval_sum, eval_word, rewrite_word_checked};
use divalg::subfield::SubfieldCtx;
use divalg::words::{bell_decompose, estimate_bound_n, BellDecomposition, Word};

use crate::config::{AlgebraSpec, Config, FieldSpec};
use crate::expr::parse_element;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Minpoly,
    LeftMinpoly,
    GdCheck,
    CommutatorSearch,
    Regrep,
    WordDecompose,
    Rewrite,
    Verify,
    Hilbert,
}

impl Command {
    fn randomized(self) -> bool {
        matches!(self, Command::CommutatorSearch | Command::Verify)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub element: Option<String>,
    pub degree: Option<usize>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub word: Option<String>,
    pub cap: Option<usize>,
    pub json: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let code = if matches!(e, Error::SearchExhausted { .. }) {
            1
        } else {
            2
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Text or JSON rendering of one result.
struct Report<T: Serialize> {
    code: i32,
    text: String,
    json: T,
}

fn emit<T: Serialize>(r: Report<T>, json: bool) -> Outcome {
    let out = if json {
        serde_json::to_string(&r.json).expect("plain data serializes")
    } else {
        r.text
    };
    Outcome::ok(r.code, format!("{}\n", out.trim_end()))
}

pub fn run(cmd: Command, config: &Config, opts: &Options) -> Outcome {
    if opts.json && cmd.randomized() && opts.seed.is_none() {
        return Outcome::error(&Error::InvalidInput(
            "--seed is required with --json for randomized commands".into(),
        ));
    }
    let result = match cmd {
        Command::Minpoly => minpoly(config, opts).map(|r| emit(r, opts.json)),
        Command::LeftMinpoly => leftminpoly(config, opts).map(|r| emit(r, opts.json)),
        Command::GdCheck => gd_check(config, opts).map(|r| emit(r, opts.json)),
        Command::CommutatorSearch => commutator_search(config, opts).map(|r| emit(r, opts.json)),
        Command::Regrep => regrep(config, opts).map(|r| emit(r, opts.json)),
        Command::WordDecompose => word_decompose(opts).map(|r| emit(r, opts.json)),
        Command::Rewrite => rewrite(config, opts).map(|r| emit(r, opts.json)),
        Command::Verify => verify(config, opts).map(|r| emit(r, opts.json)),
        Command::Hilbert => hilbert(config).map(|r| emit(r, opts.json)),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("missing --{flag}")))
}

fn element(config: &Config, opts: &Options) -> Result<(AlgebraDef, AlgebraElem)> {
    let alg = config.algebra()?;
    let x = parse_element(need(&opts.element, "element")?, &alg)?;
    Ok((alg, x))
}

fn subfield(config: &Config, alg: &AlgebraDef) -> Result<SubfieldCtx> {
    SubfieldCtx::new(alg, &config.generator_elem(alg)?)
}

/// Short name of the configured algebra, e.g. `(-1, -1 / Q)`.
pub fn describe(config: &Config) -> String {
    let field = match config.field {
        FieldSpec::Rational => "Q".to_string(),
        FieldSpec::Prime(p) => format!("F_{p}"),
    };
    match &config.algebra {
        AlgebraSpec::Quaternion { a, b } => format!("({a}, {b} / {field})"),
        AlgebraSpec::Matrix { n } => format!("M_{n}({field})"),
        AlgebraSpec::Table { dim, .. } => format!("table algebra of dimension {dim} over {field}"),
    }
}

#[derive(Serialize)]
struct MinpolyJson {
    element: String,
    minpoly: String,
    degree: usize,
}

fn minpoly(config: &Config, opts: &Options) -> Result<Report<MinpolyJson>> {
    let (_, x) = element(config, opts)?;
    let p = minpoly_element(&x)?;
    Ok(Report {
        code: 0,
        text: p.to_string(),
        json: MinpolyJson {
            element: x.to_string(),
            minpoly: p.to_string(),
            degree: p.degree().unwrap(),
        },
    })
}

#[derive(Serialize)]
struct LeftMinpolyJson {
    element: String,
    generator: String,
    generator_minpoly: String,
    left_minpoly: String,
    left_degree: usize,
}

fn leftminpoly(config: &Config, opts: &Options) -> Result<Report<LeftMinpolyJson>> {
    let (alg, x) = element(config, opts)?;
    let ctx = subfield(config, &alg)?;
    let p = left_minpoly(&ctx, &x);
    let json = LeftMinpolyJson {
        element: x.to_string(),
        generator: ctx.generator().to_string(),
        generator_minpoly: ctx.minpoly().to_string(),
        left_minpoly: p.to_string(),
        left_degree: p.degree().unwrap(),
    };
    let text = format!(
        "{}\nover K = F({v}), {v} a root of {}",
        json.left_minpoly,
        json.generator_minpoly,
        v = ctx.field().var()
    );
    Ok(Report {
        code: 0,
        text,
        json,
    })
}

#[derive(Serialize)]
struct GdJson {
    element: String,
    degree: usize,
    bounded: bool,
    minpoly_degree: usize,
}

fn gd_check(config: &Config, opts: &Options) -> Result<Report<GdJson>> {
    let (_, x) = element(config, opts)?;
    let d = *need(&opts.degree, "degree")?;
    let bounded = is_alg_bounded(&x, d)?;
    let json = GdJson {
        element: x.to_string(),
        degree: d,
        bounded,
        minpoly_degree: x.min_relation().degree().unwrap(),
    };
    Ok(Report {
        code: if bounded { 0 } else { 1 },
        text: bounded.to_string(),
        json,
    })
}

#[derive(Serialize)]
struct WitnessJson {
    partner: String,
    commutator: String,
    minpoly: String,
    tried: usize,
}

impl From<&CommutatorWitness> for WitnessJson {
    fn from(w: &CommutatorWitness) -> Self {
        WitnessJson {
            partner: w.partner.to_string(),
            commutator: w.commutator.to_string(),
            minpoly: w.minpoly.to_string(),
            tried: w.tried,
        }
    }
}

#[derive(Serialize)]
struct CommutatorJson {
    element: String,
    seed: u64,
    budget: usize,
    mult: Option<WitnessJson>,
    add: Option<WitnessJson>,
}

fn exhausted_as_none(r: Result<CommutatorWitness>) -> Result<Option<CommutatorWitness>> {
    match r {
        Ok(w) => Ok(Some(w)),
        Err(Error::SearchExhausted { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn commutator_search(config: &Config, opts: &Options) -> Result<Report<CommutatorJson>> {
    let (_, a) = element(config, opts)?;
    let seed = opts.seed.or(config.seed).unwrap_or(0);
    let budget = opts.budget.or(config.budget).unwrap_or(200);
    let mult = exhausted_as_none(search_mult_commutator(&a, budget, seed))?;
    let add = exhausted_as_none(search_add_commutator(&a, budget, seed))?;
    let mut text = String::new();
    for (name, w, op) in [
        ("multiplicative", &mult, "a b a^-1 b^-1"),
        ("additive", &add, "a b - b a"),
    ] {
        match w {
            Some(w) => text.push_str(&format!(
                "{name}: b = {}, {op} = {}, minimal polynomial {} (candidate {})\n",
                w.partner, w.commutator, w.minpoly, w.tried
            )),
            None => text.push_str(&format!("{name}: no witness within budget {budget}\n")),
        }
    }
    let code = if mult.is_some() && add.is_some() {
        0
    } else {
        1
    };
    let json = CommutatorJson {
        element: a.to_string(),
        seed,
        budget,
        mult: mult.as_ref().map(WitnessJson::from),
        add: add.as_ref().map(WitnessJson::from),
    };
    Ok(Report { code, text, json })
}

#[derive(Serialize)]
struct RegrepJson {
    element: String,
    generator: String,
    matrix: String,
    minpoly_f: String,
    minpoly_k: String,
    agree: bool,
}

fn regrep(config: &Config, opts: &Options) -> Result<Report<RegrepJson>> {
    let (alg, x) = element(config, opts)?;
    let ctx = subfield(config, &alg)?;
    let m = ctx.regular_rep(&x);
    let pk = m.minpoly()?;
    let pf = minpoly_element(&x)?;
    let kf = ctx.field().clone();
    let agree = pf.map(kf.clone(), |c| kf.embed(c)) == pk;
    let json = RegrepJson {
        element: x.to_string(),
        generator: ctx.generator().to_string(),
        matrix: m.to_string(),
        minpoly_f: pf.to_string(),
        minpoly_k: pk.to_string(),
        agree,
    };
    let text = format!(
        "matrix over K: {}\nminimal polynomial over F: {}\nminimal polynomial over K: {}\nagree: {agree}",
        json.matrix, json.minpoly_f, json.minpoly_k
    );
    Ok(Report {
        code: if agree { 0 } else { 1 },
        text,
        json,
    })
}

/// Parses a word over as many letters as its largest index, at least two.
fn parse_word(text: &str, m: Option<usize>) -> Result<Word> {
    let m = match m {
        Some(m) => m,
        None => Word::parse(9, text)?
            .letters()
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(2),
    };
    Word::parse(m, text)
}

#[derive(Serialize)]
struct DecomposeJson {
    word: String,
    degree: usize,
    kind: Option<&'static str>,
    decomposition: Option<String>,
}

fn word_decompose(opts: &Options) -> Result<Report<DecomposeJson>> {
    let w = parse_word(need(&opts.word, "word")?, None)?;
    let d = opts.degree.unwrap_or(2);
    if d < 2 {
        return Err(Error::InvalidInput(
            "word decompositions need --degree >= 2".into(),
        ));
    }
    let dec = bell_decompose(&w, d);
    let kind = dec.as_ref().map(|b| match b {
        BellDecomposition::Power { .. } => "power",
        BellDecomposition::Shirshov { .. } => "shirshov",
    });
    let text = match &dec {
        Some(b) => b.to_string(),
        None => format!("{w} has no power or Shirshov decomposition for d = {d}"),
    };
    let json = DecomposeJson {
        word: w.to_string(),
        degree: d,
        kind,
        decomposition: dec.as_ref().map(ToString::to_string),
    };
    Ok(Report {
        code: if dec.is_some() { 0 } else { 1 },
        text,
        json,
    })
}

#[derive(Serialize)]
struct RewriteJson {
    word: String,
    degree: usize,
    cap: usize,
    result: String,
    steps: usize,
    value: String,
    check: bool,
}

fn rewrite(config: &Config, opts: &Options) -> Result<Report<RewriteJson>> {
    let alg = config.algebra()?;
    let ctx = subfield(config, &alg)?;
    let gens = config.gens_elems(&alg)?;
    let w = parse_word(need(&opts.word, "word")?, Some(gens.len()))?;
    let d = opts.degree.unwrap_or(2);
    let cap = match opts.cap {
        Some(c) => c,
        None if d >= 2 => estimate_bound_n(gens.len(), d, 10)?.n,
        None => 0,
    };
    let step_cap = opts.budget.unwrap_or(100_000);
    let (sum, stats) = rewrite_word_checked(&ctx, &gens, &w, d, cap, step_cap, false)?;
    let value = eval_word(&alg, &gens, &w)?;
    let check = eval_sum(&ctx, &gens, &sum)? == value;
    let json = RewriteJson {
        word: w.to_string(),
        degree: d,
        cap,
        result: sum.to_string(),
        steps: stats.steps,
        value: value.to_string(),
        check,
    };
    let text = format!(
        "{}\nsteps: {}\nvalue: {}\nevaluation check: {}",
        json.result,
        json.steps,
        json.value,
        if check { "ok" } else { "FAILED" }
    );
    Ok(Report {
        code: if check { 0 } else { 1 },
        text,
        json,
    })
}

#[derive(Serialize)]
struct VerifyJson {
    algebra: String,
    seed: u64,
    reports: Vec<BoundReport>,
}

fn verify(config: &Config, opts: &Options) -> Result<Report<VerifyJson>> {
    let alg = config.algebra()?;
    let seed = opts.seed.or(config.seed).unwrap_or(0);
    let size = opts.budget.or(config.budget).unwrap_or(200);
    let generator = if alg.is_commutative() {
        None
    } else {
        Some(config.generator_elem(&alg)?)
    };
    let mut sampler = Sampler::new(seed, 3);
    let sample: Vec<AlgebraElem> = (0..size).map(|_| sampler.element(&alg)).collect();
    let reports = BoundMode::ALL
        .iter()
        .map(|&mode| verify_bound_d2(&alg, generator.as_ref(), mode, &sample, seed))
        .collect::<Result<Vec<_>>>()?;
    let text = reports
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n");
    let code = if reports.iter().all(|r| r.bound_holds) {
        0
    } else {
        1
    };
    Ok(Report {
        code,
        text,
        json: VerifyJson {
            algebra: describe(config),
            seed,
            reports,
        },
    })
}

#[derive(Serialize)]
struct HilbertJson {
    a: String,
    b: String,
    symbols: Vec<(String, i8)>,
    division: bool,
}

fn hilbert(config: &Config) -> Result<Report<HilbertJson>> {
    let alg = config.algebra()?;
    let AlgebraKind::Quaternion { a, b } = alg.kind() else {
        return Err(Error::InvalidInput(
            "hilbert needs a quaternion algebra".into(),
        ));
    };
    let (Some(ra), Some(rb)) = (a.as_rational(), b.as_rational()) else {
        let json = HilbertJson {
            a: a.to_string(),
            b: b.to_string(),
            symbols: Vec::new(),
            division: false,
        };
        let text = "quaternion algebras over finite fields are split\ndivision: false".to_string();
        return Ok(Report {
            code: 1,
            text,
            json,
        });
    };
    let symbols: Vec<(String, i8)> = divalg::algebra::hilbert::local_symbols(ra, rb)?
        .into_iter()
        .map(|(p, s)| (p.to_string(), s))
        .collect();
    let division = is_division_quaternion(ra, rb)?;
    let mut text: String = symbols
        .iter()
        .map(|(p, s)| format!("({a}, {b})_{p} = {s}\n"))
        .collect();
    text.push_str(&format!("division: {division}"));
    let json = HilbertJson {
        a: a.to_string(),
        b: b.to_string(),
        symbols,
        division,
    };
    Ok(Report {
        code: if division { 0 } else { 1 },
        text,
        json,
    })
}
