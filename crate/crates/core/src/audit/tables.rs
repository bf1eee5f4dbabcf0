//! Embedded table datasets and their loader.
//!
//! Every dataset is a TOML file under `tables/`, compiled into the binary.
//! A row carries family parameters as expressions in the symbolic variables
//! of the table (usually `n`, `b`, `k`), the claimed `Y` and `Y*` manifolds,
//! and its markers.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Deserialize;

use super::expr::{Env, Expr, ManifoldExpr};
use crate::error::{Error, Result};
use crate::ExtRational;

const SOURCES: &[(&str, &str)] = &[
    ("dhl", include_str!("../../tables/dhl.toml")),
    ("table2", include_str!("../../tables/table2.toml")),
    ("cabledgofk", include_str!("../../tables/cabledgofk.toml")),
    ("cabledgofk2", include_str!("../../tables/cabledgofk2.toml")),
    ("appendixB-4", include_str!("../../tables/appendixB-4.toml")),
    ("appendixB-5", include_str!("../../tables/appendixB-5.toml")),
    ("appendixB-6", include_str!("../../tables/appendixB-6.toml")),
    ("appendixB-7", include_str!("../../tables/appendixB-7.toml")),
    ("appendixB-8", include_str!("../../tables/appendixB-8.toml")),
    ("table8-magic", include_str!("../../tables/table8-magic.toml")),
];

/// The reducible sub-table: rows of `table2` with `b = inf`.
const TABLE3: &str = "table3";

const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
pub enum Mark {
    /// Strong invertibility is claimed for the row.
    #[serde(rename = "S")]
    StronglyInvertible,
    #[serde(rename = "bulk")]
    Bulk,
    #[serde(rename = "dagger")]
    Dagger,
    #[serde(rename = "ddagger")]
    DoubleDagger,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub m: String,
    pub r: String,
    pub s: String,
    pub b: String,
    pub k: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowSpec {
    pub id: String,
    #[serde(default)]
    pub params: Option<ParamSpec>,
    /// Magic manifold filling slopes, compared as a multiset.
    #[serde(default)]
    pub filling: Option<Vec<String>>,
    #[serde(default)]
    pub y: Option<String>,
    #[serde(default)]
    pub ystar: Option<String>,
    /// Claimed result of the magic filling itself.
    #[serde(default)]
    pub result: Option<String>,
    #[serde(default)]
    pub marks: Vec<Mark>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Domain {
    #[serde(default)]
    pub nonzero: Vec<String>,
    /// Two variables `t`, `u` ranging over reduced fractions `t/u` with `u > 0`.
    #[serde(default)]
    pub coprime_pair: Option<[String; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub schema: u32,
    pub id: String,
    pub name: String,
    pub description: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub domain: Domain,
    pub rows: Vec<RowSpec>,
}

/// A row with every cell parsed.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub table: String,
    pub id: String,
    pub params: Option<[Expr; 5]>,
    pub filling: Option<Vec<Expr>>,
    pub y: Option<ManifoldExpr>,
    pub ystar: Option<ManifoldExpr>,
    pub result: Option<ManifoldExpr>,
    pub marks: Vec<Mark>,
    /// Symbolic variables in order of first appearance.
    pub vars: Vec<char>,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub id: String,
    pub name: String,
    pub description: String,
    pub nonzero: Vec<char>,
    pub coprime_pair: Option<(char, char)>,
    pub rows: Vec<TableRow>,
}

/// Inclusive integer ranges for the symbolic variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranges {
    pub default: RangeInclusive<i64>,
    pub overrides: BTreeMap<char, RangeInclusive<i64>>,
}

impl Default for Ranges {
    fn default() -> Self {
        Self::uniform(-6..=6)
    }
}

impl Ranges {
    pub fn uniform(r: RangeInclusive<i64>) -> Self {
        Self {
            default: r,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with(mut self, var: char, r: RangeInclusive<i64>) -> Self {
        self.overrides.insert(var, r);
        self
    }

    pub fn get(&self, var: char) -> RangeInclusive<i64> {
        self.overrides.get(&var).unwrap_or(&self.default).clone()
    }

    /// Parse `a..b` (inclusive).
    pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
        let bad = || Error::Parse(format!("expected a range `a..b`, got `{s}`"));
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok(a..=b)
    }
}

fn single_char(s: &str) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::InvalidData(format!("`{s}` is not a single-letter variable"))),
    }
}

fn parse_file(src: &str) -> Result<Table> {
    let file: TableFile = toml::from_str(src).map_err(|e| Error::InvalidData(e.to_string()))?;
    if file.schema != SCHEMA_VERSION {
        return Err(Error::InvalidData(format!(
            "table `{}` has schema {}",
            file.id, file.schema
        )));
    }
    let mut rows = Vec::with_capacity(file.rows.len());
    for r in &file.rows {
        let cell = |s: &Option<String>| s.as_deref().map(ManifoldExpr::parse).transpose();
        let params = match &r.params {
            Some(p) => Some([
                Expr::parse(&p.m)?,
                Expr::parse(&p.r)?,
                Expr::parse(&p.s)?,
                Expr::parse(&p.b)?,
                Expr::parse(&p.k)?,
            ]),
            None => None,
        };
        let filling = r
            .filling
            .as_ref()
            .map(|f| f.iter().map(|e| Expr::parse(e)).collect::<Result<Vec<_>>>())
            .transpose()?;
        let mut row = TableRow {
            table: file.id.clone(),
            id: r.id.clone(),
            params,
            filling,
            y: cell(&r.y)?,
            ystar: cell(&r.ystar)?,
            result: cell(&r.result)?,
            marks: r.marks.clone(),
            vars: Vec::new(),
        };
        let mut vars = Vec::new();
        row.params.iter().flatten().for_each(|e| e.vars(&mut vars));
        row.filling.iter().flatten().for_each(|e| e.vars(&mut vars));
        for m in [&row.y, &row.ystar, &row.result].into_iter().flatten() {
            m.vars(&mut vars);
        }
        row.vars = vars;
        rows.push(row);
    }
    let chars = |v: &[String]| v.iter().map(|s| single_char(s)).collect::<Result<Vec<_>>>();
    let coprime_pair = match &file.domain.coprime_pair {
        Some([t, u]) => Some((single_char(t)?, single_char(u)?)),
        None => None,
    };
    Ok(Table {
        id: file.id,
        name: file.name,
        description: file.description,
        nonzero: chars(&file.domain.nonzero)?,
        coprime_pair,
        rows,
    })
}

/// Identifiers accepted by [`load_table`], canonical names first.
pub fn table_ids() -> Vec<String> {
    let mut ids: Vec<String> = SOURCES.iter().map(|(id, _)| id.to_string()).collect();
    ids.insert(2, TABLE3.to_string());
    ids
}

fn aliases_of(src: &str) -> Vec<String> {
    #[derive(Deserialize)]
    struct Head {
        #[serde(default)]
        aliases: Vec<String>,
    }
    toml::from_str::<Head>(src).map(|h| h.aliases).unwrap_or_default()
}

/// Load a dataset by id or alias.
pub fn load_table(id: &str) -> Result<Table> {
    if id == TABLE3 || id == "reducible-cable" {
        let mut t = load_table("table2")?;
        t.rows.retain(|r| matches!(&r.params, Some(p) if p[3] == Expr::Inf));
        t.rows.iter_mut().for_each(|r| r.table = TABLE3.to_string());
        t.id = TABLE3.to_string();
        t.name = "Reducible cable space fillings".to_string();
        return Ok(t);
    }
    SOURCES
        .iter()
        .find(|(name, src)| *name == id || aliases_of(src).iter().any(|a| a == id))
        .map(|(_, src)| parse_file(src))
        .unwrap_or_else(|| Err(Error::UnknownTable(id.to_string())))
}

impl TableRow {
    /// All assignments of the row's variables permitted by the table domain.
    pub fn instantiations(&self, table: &Table, ranges: &Ranges) -> Vec<Env> {
        let mut envs = vec![Env::new()];
        for &v in &self.vars {
            if matches!(table.coprime_pair, Some((_, u)) if u == v) {
                continue;
            }
            let mut next = Vec::new();
            for env in &envs {
                for x in ranges.get(v) {
                    if x == 0 && table.nonzero.contains(&v) {
                        continue;
                    }
                    match table.coprime_pair {
                        Some((t, u)) if t == v => {
                            for y in ranges.get(u).filter(|&y| y > 0) {
                                if num_integer::gcd(x, y) == 1 {
                                    let mut e = env.clone();
                                    e.insert(t, ExtRational::from_integer(x.into()));
                                    e.insert(u, ExtRational::from_integer(y.into()));
                                    next.push(e);
                                }
                            }
                        }
                        _ => {
                            let mut e = env.clone();
                            e.insert(v, ExtRational::from_integer(x.into()));
                            next.push(e);
                        }
                    }
                }
            }
            envs = next;
        }
        envs
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnownMismatch {
    pub table: String,
    pub row: String,
    pub column: String,
    pub note: String,
    #[serde(default)]
    pub reason: String,
    /// Restrict the entry to instantiations with these variable values.
    #[serde(default)]
    pub when: BTreeMap<String, i64>,
}

impl KnownMismatch {
    fn applies(&self, env: &Env) -> bool {
        self.when.iter().all(|(var, val)| {
            let mut cs = var.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => env.get(&c) == Some(&ExtRational::from_integer((*val).into())),
                _ => false,
            }
        })
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Allowlist {
    #[serde(default)]
    pub known: Vec<KnownMismatch>,
}

impl Allowlist {
    pub fn embedded() -> Self {
        Self::parse(include_str!("../../tables/allowlist.toml")).expect("embedded allowlist parses")
    }

    pub fn parse(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::InvalidData(e.to_string()))
    }

    pub fn lookup(&self, table: &str, row: &str, column: &str, env: &Env) -> Option<&KnownMismatch> {
        self.known
            .iter()
            .find(|k| k.table == table && k.row == row && k.column == column && k.applies(env))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_loads() {
        for id in table_ids() {
            let t = load_table(&id).unwrap();
            assert!(!t.rows.is_empty(), "{id}");
        }
        assert_eq!(load_table("dhl").unwrap().rows.len(), 26);
        assert_eq!(load_table("table3").unwrap().rows.len(), 4);
        assert_eq!(load_table("appendixB-4").unwrap().rows.len(), 34);
        assert_eq!(load_table("lenslens").unwrap().id, "appendixB-5");
        assert!(matches!(load_table("table99"), Err(Error::UnknownTable(_))));
    }

    #[test]
    fn domains() {
        let t = load_table("table8-magic").unwrap();
        let row = &t.rows[0];
        assert_eq!(row.vars, vec!['t', 'u']);
        let envs = row.instantiations(&t, &Ranges::uniform(-2..=2));
        // t/u in {-2/1,-1/1,0/1,1/1,2/1,-1/2,1/2}
        assert_eq!(envs.len(), 7);
        let row = &t.rows[2];
        assert_eq!(row.instantiations(&t, &Ranges::uniform(-2..=2)).len(), 16);
        let dhl = load_table("dhl").unwrap();
        assert_eq!(dhl.rows[0].instantiations(&dhl, &Ranges::default()).len(), 1);
    }

    #[test]
    fn ranges() {
        assert_eq!(Ranges::parse_range("-4..4").unwrap(), -4..=4);
        assert_eq!(Ranges::parse_range("1..=3").unwrap(), 1..=3);
        assert!(Ranges::parse_range("3..1").is_err());
        assert!(Ranges::parse_range("x").is_err());
    }

    #[test]
    fn allowlist_loads() {
        let a = Allowlist::embedded();
        assert!(a.lookup("table2", "1", "Y", &Env::new()).is_some());
        let restricted = Allowlist::parse(
            "[[known]]\ntable = \"t\"\nrow = \"1\"\ncolumn = \"Y\"\nnote = \"x\"\nwhen = { n = -1 }\n",
        )
        .unwrap();
        let env = |n: i128| Env::from([('n', ExtRational::from_integer(n))]);
        assert!(restricted.lookup("t", "1", "Y", &env(-1)).is_some());
        assert!(restricted.lookup("t", "1", "Y", &env(2)).is_none());
        assert!(restricted.lookup("t", "1", "Y", &Env::new()).is_none());
    }
}
