//! Sectioned `key = value` configuration describing the base field, the
//! algebra, the subfield generator and search defaults.
//!
//! ```text
//! [field]
//! kind = prime        # or rational
//! modulus = 5
//!
//! [algebra]
//! kind = quaternion   # or matrix (n = ...) or table
//! a = -1
//! b = -1
//!
//! [subfield]
//! generator = i
//! gens = i, j
//!
//! [search]
//! seed = 0
//! budget = 500
//! ```
//!
//! Table algebras take `dim`, optional `names` and `unit` (comma
//! separated) and structure constants `c[i][j][k] = value`, the
//! coefficient of basis vector `k` in the product of basis vectors `i` and
//! `j`, indices from 0.

use std::collections::BTreeMap;
use std::fmt;

use divalg::algebra::{AlgebraDef, AlgebraElem};
use divalg::error::{Error, Result};
use divalg::field::{Field, FieldCtx, FieldElem};
use divalg::rational::Rational;

use crate::expr::Expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Quaternion {
        a: Rational,
        b: Rational,
    },
    Matrix {
        n: usize,
    },
    Table {
        dim: usize,
        names: Option<Vec<String>>,
        unit: Option<Vec<Rational>>,
        /// Nonzero constants only.
        constants: BTreeMap<(usize, usize, usize), Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub field: FieldSpec,
    pub algebra: AlgebraSpec,
    pub generator: Option<Expr>,
    pub gens: Option<Vec<Expr>>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
}

impl Default for Config {
    /// Hamilton's quaternions over the rationals.
    fn default() -> Self {
        Config {
            field: FieldSpec::Rational,
            algebra: AlgebraSpec::Quaternion {
                a: Rational::from_int(-1),
                b: Rational::from_int(-1),
            },
            generator: None,
            gens: None,
            seed: None,
            budget: None,
        }
    }
}

const SECTIONS: [(&str, &[&str]); 4] = [
    ("field", &["kind", "modulus"]),
    ("algebra", &["kind", "a", "b", "n", "dim", "names", "unit"]),
    ("subfield", &["generator", "gens"]),
    ("search", &["seed", "budget"]),
];

/// A value with the position of its first character.
struct Entry {
    value: String,
    line: usize,
    col: usize,
}

type Sections = BTreeMap<String, BTreeMap<String, Entry>>;

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> Error {
    Error::Validation {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn is_constant_key(key: &str) -> bool {
    constant_indices(key).is_some()
}

fn constant_indices(key: &str) -> Option<(usize, usize, usize)> {
    let rest = key.strip_prefix("c[")?.strip_suffix(']')?;
    let mut it = rest.split("][").map(|s| s.parse::<usize>().ok());
    let out = (it.next()??, it.next()??, it.next()??);
    it.next().is_none().then_some(out)
}

fn lex(text: &str) -> Result<Sections> {
    let mut sections: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap();
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, indent + body.len(), "expected `]`"))?
                .trim();
            if !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(syntax(
                    line,
                    indent + 1,
                    format!("unknown section `[{name}]`"),
                ));
            }
            if sections.contains_key(name) {
                return Err(syntax(
                    line,
                    indent + 1,
                    format!("section `[{name}]` repeated"),
                ));
            }
            sections.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(syntax(line, indent + 1, "expected `key = value`"));
        };
        let key = key.trim();
        let Some(section) = &current else {
            return Err(syntax(line, indent + 1, "key outside of any section"));
        };
        let allowed = SECTIONS.iter().find(|(s, _)| s == section).unwrap().1;
        if !allowed.contains(&key) && !(section == "algebra" && is_constant_key(key)) {
            return Err(syntax(
                line,
                indent + 1,
                format!("unknown key `{key}` in [{section}]"),
            ));
        }
        let value_col =
            indent + body.find('=').unwrap() + 2 + (value.len() - value.trim_start().len());
        let entry = Entry {
            value: value.trim().to_string(),
            line,
            col: value_col,
        };
        if sections
            .get_mut(section)
            .unwrap()
            .insert(key.to_string(), entry)
            .is_some()
        {
            return Err(syntax(line, indent + 1, format!("key `{key}` repeated")));
        }
    }
    Ok(sections)
}

fn parse_num<T: std::str::FromStr>(key: &str, e: &Entry) -> Result<T> {
    e.value
        .parse()
        .map_err(|_| invalid(key, format!("`{}` is not a nonnegative integer", e.value)))
}

fn parse_rational(key: &str, s: &str) -> Result<Rational> {
    s.trim()
        .parse()
        .map_err(|_| invalid(key, format!("`{}` is not a rational number", s.trim())))
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn field_spec(keys: Option<&BTreeMap<String, Entry>>) -> Result<FieldSpec> {
    let Some(keys) = keys else {
        return Ok(FieldSpec::Rational);
    };
    let kind = keys.get("kind").map_or("rational", |e| e.value.as_str());
    match kind {
        "rational" => match keys.get("modulus") {
            Some(_) => Err(invalid("modulus", "only prime fields take a modulus")),
            None => Ok(FieldSpec::Rational),
        },
        "prime" => {
            let e = keys
                .get("modulus")
                .ok_or_else(|| invalid("modulus", "required for kind = prime"))?;
            let p: u64 = parse_num("modulus", e)?;
            if !is_prime(p) {
                return Err(invalid("modulus", format!("{p} is not prime")));
            }
            Ok(FieldSpec::Prime(p))
        }
        other => Err(invalid("kind", format!("unknown field kind `{other}`"))),
    }
}

fn algebra_spec(keys: Option<&BTreeMap<String, Entry>>, field: FieldSpec) -> Result<AlgebraSpec> {
    let Some(keys) = keys else {
        return Ok(Config::default().algebra);
    };
    let kind = keys
        .get("kind")
        .ok_or_else(|| invalid("kind", "the algebra kind is required"))?;
    let used: &[&str] = match kind.value.as_str() {
        "quaternion" => &["kind", "a", "b"],
        "matrix" => &["kind", "n"],
        "table" => &["kind", "dim", "names", "unit"],
        other => return Err(invalid("kind", format!("unknown algebra kind `{other}`"))),
    };
    for key in keys.keys() {
        let ok = used.contains(&key.as_str()) || (kind.value == "table" && is_constant_key(key));
        if !ok {
            return Err(invalid(
                key,
                format!("not used by algebra kind `{}`", kind.value),
            ));
        }
    }
    let required = |key: &str| keys.get(key).ok_or_else(|| invalid(key, "required"));
    let spec = match kind.value.as_str() {
        "quaternion" => {
            let a = parse_rational("a", &required("a")?.value)?;
            let b = parse_rational("b", &required("b")?.value)?;
            if field == FieldSpec::Prime(2) {
                return Err(invalid(
                    "modulus",
                    "quaternion algebras need characteristic different from 2",
                ));
            }
            AlgebraSpec::Quaternion { a, b }
        }
        "matrix" => {
            let n: usize = parse_num("n", required("n")?)?;
            if n == 0 || n > 9 {
                return Err(invalid("n", "matrix size must be between 1 and 9"));
            }
            AlgebraSpec::Matrix { n }
        }
        _ => {
            let dim: usize = parse_num("dim", required("dim")?)?;
            if dim == 0 {
                return Err(invalid("dim", "dimension must be positive"));
            }
            let names = match keys.get("names") {
                None => None,
                Some(e) => {
                    let names: Vec<String> =
                        e.value.split(',').map(|s| s.trim().to_string()).collect();
                    if names.len() != dim {
                        return Err(invalid(
                            "names",
                            format!("{} names for dimension {dim}", names.len()),
                        ));
                    }
                    if let Some(bad) = names.iter().find(|s| !valid_name(s)) {
                        return Err(invalid("names", format!("`{bad}` is not a basis symbol")));
                    }
                    Some(names)
                }
            };
            let unit = match keys.get("unit") {
                None => None,
                Some(e) => {
                    let u: Vec<Rational> = e
                        .value
                        .split(',')
                        .map(|s| parse_rational("unit", s))
                        .collect::<Result<_>>()?;
                    if u.len() != dim {
                        return Err(invalid(
                            "unit",
                            format!("{} coordinates for dimension {dim}", u.len()),
                        ));
                    }
                    Some(u)
                }
            };
            let mut constants = BTreeMap::new();
            for (key, e) in keys {
                if let Some((i, j, k)) = constant_indices(key) {
                    if i.max(j).max(k) >= dim {
                        return Err(invalid(
                            key,
                            format!("index out of range for dimension {dim}"),
                        ));
                    }
                    let c = parse_rational(key, &e.value)?;
                    if !c.is_zero() {
                        constants.insert((i, j, k), c);
                    }
                }
            }
            AlgebraSpec::Table {
                dim,
                names,
                unit,
                constants,
            }
        }
    };
    Ok(spec)
}

fn valid_name(s: &str) -> bool {
    s == "1"
        || matches!(Expr::parse(s), Ok(e) if e.terms.len() == 1 && e.to_string() == s && e.terms[0].symbol.is_some())
}

fn parse_expr_entry(e: &Entry) -> Result<Expr> {
    Expr::parse_at(&e.value, e.line, e.col - 1)
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let sections = lex(text)?;
        let field = field_spec(sections.get("field"))?;
        let algebra = algebra_spec(sections.get("algebra"), field)?;
        let sub = sections.get("subfield");
        let generator = sub
            .and_then(|s| s.get("generator"))
            .map(parse_expr_entry)
            .transpose()?;
        let gens = match sub.and_then(|s| s.get("gens")) {
            None => None,
            Some(e) => {
                let mut out = Vec::new();
                let mut offset = 0;
                for part in e.value.split(',') {
                    let entry = Entry {
                        value: part.to_string(),
                        line: e.line,
                        col: e.col + offset,
                    };
                    out.push(parse_expr_entry(&entry)?);
                    offset += part.len() + 1;
                }
                Some(out)
            }
        };
        let search = sections.get("search");
        let seed = search
            .and_then(|s| s.get("seed"))
            .map(|e| parse_num("seed", e))
            .transpose()?;
        let budget = search
            .and_then(|s| s.get("budget"))
            .map(|e| parse_num("budget", e))
            .transpose()?;
        let config = Config {
            field,
            algebra,
            generator,
            gens,
            seed,
            budget,
        };
        let alg = config.algebra().map_err(|e| match e {
            Error::Validation { .. } => e,
            other => invalid("algebra", other.to_string()),
        })?;
        let check = |key: &str, x: &Expr| {
            x.eval(&alg)
                .map(|_| ())
                .map_err(|e| invalid(key, e.to_string()))
        };
        if let Some(g) = &config.generator {
            check("generator", g)?;
        }
        for g in config.gens.iter().flatten() {
            check("gens", g)?;
        }
        Ok(config)
    }

    pub fn ctx(&self) -> FieldCtx {
        match self.field {
            FieldSpec::Rational => FieldCtx::Rational,
            FieldSpec::Prime(p) => FieldCtx::Prime(p),
        }
    }

    fn scalar(&self, key: &str, r: &Rational) -> Result<FieldElem> {
        self.ctx()
            .rational(r)
            .map_err(|e| invalid(key, e.to_string()))
    }

    pub fn algebra(&self) -> Result<AlgebraDef> {
        let ctx = self.ctx();
        match &self.algebra {
            AlgebraSpec::Quaternion { a, b } => {
                let (a, b) = (self.scalar("a", a)?, self.scalar("b", b)?);
                AlgebraDef::quaternion(ctx, a, b).map_err(|e| match e {
                    Error::ZeroParameter => {
                        invalid("a", "quaternion parameters must be nonzero in the field")
                    }
                    other => other,
                })
            }
            AlgebraSpec::Matrix { n } => AlgebraDef::matrix_algebra(ctx, *n),
            AlgebraSpec::Table {
                dim,
                names,
                unit,
                constants,
            } => {
                let names = names
                    .clone()
                    .unwrap_or_else(|| (0..*dim).map(|i| format!("b{i}")).collect());
                let mut table = vec![vec![vec![ctx.zero(); *dim]; *dim]; *dim];
                for (&(i, j, k), c) in constants {
                    table[i][j][k] = self.scalar("constants", c)?;
                }
                let unit = match unit {
                    Some(u) => u
                        .iter()
                        .map(|r| self.scalar("unit", r))
                        .collect::<Result<_>>()?,
                    None => (0..*dim)
                        .map(|i| if i == 0 { ctx.one() } else { ctx.zero() })
                        .collect(),
                };
                AlgebraDef::from_table(ctx, names, &table, unit)
            }
        }
    }

    /// The subfield generator; quaternion algebras default to `i`.
    pub fn generator_elem(&self, alg: &AlgebraDef) -> Result<AlgebraElem> {
        match (&self.generator, &self.algebra) {
            (Some(g), _) => g.eval(alg),
            (None, AlgebraSpec::Quaternion { .. }) => Ok(alg.basis(1)),
            (None, _) => Err(invalid(
                "generator",
                "this algebra needs [subfield] generator",
            )),
        }
    }

    /// Rewrite generators; quaternion algebras default to `i, j`.
    pub fn gens_elems(&self, alg: &AlgebraDef) -> Result<Vec<AlgebraElem>> {
        match (&self.gens, &self.algebra) {
            (Some(g), _) => g.iter().map(|x| x.eval(alg)).collect(),
            (None, AlgebraSpec::Quaternion { .. }) => Ok(vec![alg.basis(1), alg.basis(2)]),
            (None, _) => Err(invalid("gens", "this algebra needs [subfield] gens")),
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Config {
    /// Canonical form: fixed section and key order, defaults omitted from
    /// the optional sections.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[field]")?;
        match self.field {
            FieldSpec::Rational => writeln!(f, "kind = rational")?,
            FieldSpec::Prime(p) => writeln!(f, "kind = prime\nmodulus = {p}")?,
        }
        writeln!(f, "\n[algebra]")?;
        match &self.algebra {
            AlgebraSpec::Quaternion { a, b } => writeln!(f, "kind = quaternion\na = {a}\nb = {b}")?,
            AlgebraSpec::Matrix { n } => writeln!(f, "kind = matrix\nn = {n}")?,
            AlgebraSpec::Table {
                dim,
                names,
                unit,
                constants,
            } => {
                writeln!(f, "kind = table\ndim = {dim}")?;
                if let Some(names) = names {
                    writeln!(f, "names = {}", join(names))?;
                }
                if let Some(unit) = unit {
                    writeln!(f, "unit = {}", join(unit))?;
                }
                for ((i, j, k), c) in constants {
                    writeln!(f, "c[{i}][{j}][{k}] = {c}")?;
                }
            }
        }
        if self.generator.is_some() || self.gens.is_some() {
            writeln!(f, "\n[subfield]")?;
            if let Some(g) = &self.generator {
                writeln!(f, "generator = {g}")?;
            }
            if let Some(g) = &self.gens {
                writeln!(f, "gens = {}", join(g))?;
            }
        }
        if self.seed.is_some() || self.budget.is_some() {
            writeln!(f, "\n[search]")?;
            if let Some(s) = self.seed {
                writeln!(f, "seed = {s}")?;
            }
            if let Some(b) = self.budget {
                writeln!(f, "budget = {b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        let c =
            Config::parse("[field]\nkind = rational\n[algebra]\nkind = quaternion\na = -1\nb = -1")
                .unwrap();
        assert_eq!(c, Config::default());
        let bad = Config::parse("[field]\nkind = prime\nmodulus = 4\n");
        assert_eq!(bad, Err(invalid("modulus", "4 is not prime")));
        assert!(matches!(
            Config::parse("[field]\nfoo = 1"),
            Err(Error::Syntax {
                line: 2,
                col: 1,
                ..
            })
        ));
    }

    #[test]
    fn rejections() {
        let cases = [
            ("kind = rational", "outside"),
            ("[fields]", "unknown section"),
            ("[field]\nkind rational", "key = value"),
            ("[field]\nkind = rational\nkind = prime", "repeated"),
            ("[field]\n[field]", "repeated"),
            ("[subfield]\ngenerator = i +", "end of expression"),
        ];
        for (text, needle) in cases {
            match Config::parse(text) {
                Err(Error::Syntax { msg, .. }) => assert!(msg.contains(needle), "{text}: {msg}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        let invalid_cases = [
            ("[algebra]\nkind = quaternion\na = 0\nb = 1", "a"),
            ("[algebra]\nkind = quaternion\na = 1", "b"),
            ("[algebra]\nkind = quaternion\na = 1\nb = 1\nn = 2", "n"),
            (
                "[field]\nkind = prime\nmodulus = 2\n[algebra]\nkind = quaternion\na = 1\nb = 1",
                "modulus",
            ),
            (
                "[field]\nkind = prime\nmodulus = 5\n[algebra]\nkind = quaternion\na = 5\nb = 1",
                "a",
            ),
            ("[algebra]\nkind = matrix\nn = 0", "n"),
            (
                "[algebra]\nkind = table\ndim = 2\nc[0][0][0] = 1\nc[1][0][1] = 1\nc[1][1][1] = 1",
                "algebra",
            ),
            (
                "[algebra]\nkind = table\ndim = 1\nc[0][0][3] = 1",
                "c[0][0][3]",
            ),
            (
                "[algebra]\nkind = matrix\nn = 2\n[subfield]\ngenerator = i",
                "generator",
            ),
            ("[search]\nseed = -1", "seed"),
        ];
        for (text, key) in invalid_cases {
            match Config::parse(text) {
                Err(Error::Validation { key: k, .. }) => assert_eq!(k, key, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn error_columns_point_into_values() {
        let err = Config::parse("[subfield]\ngenerator =  i + ?").unwrap_err();
        assert_eq!(err, syntax(2, 18, "unexpected `?`"));
        let err = Config::parse("[subfield]\ngens = i, 2*q").unwrap_err();
        assert_eq!(err, syntax(2, 13, "unexpected `q`"));
    }

    #[test]
    fn table_algebra_and_comments() {
        let text = "# Q(sqrt 2)\n[algebra]\nkind = table  # two-dimensional\ndim = 2\nnames = 1, b1\n\
                    c[0][0][0] = 1\nc[0][1][1] = 1\nc[1][0][1] = 1\nc[1][1][0] = 2\n[subfield]\ngenerator = b1";
        let c = Config::parse(text).unwrap();
        let alg = c.algebra().unwrap();
        let s = c.generator_elem(&alg).unwrap();
        assert_eq!(&s * &s, alg.from_ints(&[2, 0]).unwrap());
        assert_eq!(Config::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn canonical_print() {
        let c = Config::parse(
            "[search]\nbudget=9\n[subfield]\ngens = i,j+k\n[algebra]\nkind=quaternion\nb = 6/4\na=-2\n[field]\nkind=prime\nmodulus=7",
        )
        .unwrap();
        assert_eq!(
            c.to_string(),
            "[field]\nkind = prime\nmodulus = 7\n\n[algebra]\nkind = quaternion\na = -2\nb = 3/2\n\n[subfield]\ngens = i, j + k\n\n[search]\nbudget = 9\n"
        );
    }

    fn config_strategy() -> impl Strategy<Value = Config> {
        let field = prop_oneof![
            Just(FieldSpec::Rational),
            prop::sample::select(vec![3u64, 5, 7, 11]).prop_map(FieldSpec::Prime)
        ];
        let alg = prop_oneof![
            (1i64..9, 1i64..9).prop_map(|(a, b)| AlgebraSpec::Quaternion {
                a: Rational::from_int(-a),
                b: Rational::from_int(b)
            }),
            (1usize..4).prop_map(|n| AlgebraSpec::Matrix { n }),
        ];
        let sym = prop::sample::select(vec!["i", "j", "k"]);
        let gen = prop::option::of(
            (1i64..5, sym.clone()).prop_map(|(c, s)| Expr::parse(&format!("{c}*{s} + 1")).unwrap()),
        );
        let gens = prop::option::of(prop::collection::vec(
            sym.prop_map(|s| Expr::parse(s).unwrap()),
            1..4,
        ));
        (
            field,
            alg,
            gen,
            gens,
            prop::option::of(0u64..1000),
            prop::option::of(0usize..1000),
        )
            .prop_map(|(field, algebra, generator, gens, seed, budget)| {
                let quaternion = matches!(algebra, AlgebraSpec::Quaternion { .. });
                Config {
                    field,
                    algebra,
                    generator: generator.filter(|_| quaternion),
                    gens: gens.filter(|_| quaternion),
                    seed,
                    budget,
                }
            })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(c in config_strategy()) {
            let printed = c.to_string();
            let back = Config::parse(&printed);
            // Parameters divisible by the modulus are rejected on both paths.
            if c.algebra().is_ok() {
                prop_assert_eq!(back.unwrap(), c);
            } else {
                prop_assert!(back.is_err());
            }
        }
    }
}
