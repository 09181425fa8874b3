//! The table of knot families and its verification.
//!
//! The shipped table lives in `data/families.toml`; its schema is described in
//! `data/README.md`. Each record keeps the caption transliterated verbatim
//! (`as_printed`) next to the corrected form that is verified
//! (`expressions`), and the errata that turn one into the other.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::{self, Branch, Expr, NotationError};
use crate::oracle;
use crate::polyring::Polynomial;

/// The registry file compiled into the crate.
pub const SHIPPED_REGISTRY: &str = include_str!("../data/families.toml");

/// Families count per number of conways, indexed by `conway_count - 1`.
pub const FAMILIES_PER_CONWAY_COUNT: [usize; 6] = [1, 1, 2, 5, 12, 44];

/// The only term counts that may carry `paper` provenance.
pub const STATED_TERM_COUNTS: [u64; 4] = [11, 12, 13, 16];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Erratum {
    pub original: String,
    pub corrected: String,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Paper,
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTerms {
    pub value: u64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRecord {
    pub id: String,
    pub seed_label: String,
    pub conway_count: u32,
    pub expressions: Vec<String>,
    pub as_printed: Vec<String>,
    #[serde(default)]
    pub errata: Vec<Erratum>,
    pub expected_terms: Option<ExpectedTerms>,
}

impl FamilyRecord {
    pub fn texts(&self, mode: Mode) -> &[String] {
        match mode {
            Mode::Corrected => &self.expressions,
            Mode::AsPrinted => &self.as_printed,
        }
    }

    /// Parsed corrected expressions. Valid after [`load_str`] succeeded.
    pub fn parsed(&self) -> Vec<Expr> {
        self.expressions
            .iter()
            .map(|s| notation::parse(s).expect("validated at load"))
            .collect()
    }

    /// Number of matrix-product branches across all expressions.
    pub fn factorization_count(&self) -> usize {
        self.parsed()
            .iter()
            .flat_map(|e| e.branches().to_vec())
            .filter(Branch::is_product)
            .count()
    }
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("cannot read registry {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("registry is not valid TOML: {0}")]
    Toml(String),
    #[error("schema violation{}: {field}: {message}", index.map(|i| format!(" in record {i}")).unwrap_or_default())]
    Schema {
        index: Option<usize>,
        field: String,
        message: String,
    },
    #[error("duplicate id {id:?} in record {index}")]
    DuplicateId { id: String, index: usize },
    #[error("invariant violation in record {index} ({id}): {message}")]
    Invariant { index: usize, id: String, message: String },
}

pub fn load(path: impl AsRef<Path>) -> Result<Vec<FamilyRecord>, RegistryError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_str(&text)
}

pub fn shipped() -> Vec<FamilyRecord> {
    load_str(SHIPPED_REGISTRY).expect("shipped registry is valid")
}

pub fn load_str(text: &str) -> Result<Vec<FamilyRecord>, RegistryError> {
    let table: toml::Table = toml::from_str(text).map_err(|e| RegistryError::Toml(e.to_string()))?;
    if let Some(key) = table.keys().find(|k| k.as_str() != "family") {
        return Err(RegistryError::Schema {
            index: None,
            field: key.clone(),
            message: "unknown top-level key".into(),
        });
    }
    let entries = match table.get("family") {
        Some(toml::Value::Array(entries)) => entries,
        Some(_) => {
            return Err(RegistryError::Schema {
                index: None,
                field: "family".into(),
                message: "must be an array of tables".into(),
            })
        }
        None => {
            return Err(RegistryError::Schema {
                index: None,
                field: "family".into(),
                message: "missing; the registry has no families".into(),
            })
        }
    };
    if entries.is_empty() {
        return Err(RegistryError::Schema {
            index: None,
            field: "family".into(),
            message: "empty".into(),
        });
    }

    let mut records = Vec::with_capacity(entries.len());
    let mut seen = HashSet::new();
    for (index, entry) in entries.iter().enumerate() {
        let record = FamilyRecord::deserialize(entry.clone()).map_err(|e| RegistryError::Schema {
            index: Some(index),
            field: "record".into(),
            message: e.message().to_string(),
        })?;
        if !seen.insert(record.id.clone()) {
            return Err(RegistryError::DuplicateId { id: record.id, index });
        }
        validate(index, &record)?;
        records.push(record);
    }
    Ok(records)
}

/// Applies every erratum whose original fragment occurs in `text`.
pub fn apply_errata(text: &str, errata: &[Erratum]) -> String {
    errata
        .iter()
        .fold(text.to_string(), |acc, e| acc.replace(&e.original, &e.corrected))
}

fn validate(index: usize, r: &FamilyRecord) -> Result<(), RegistryError> {
    let fail = |message: String| RegistryError::Invariant {
        index,
        id: r.id.clone(),
        message,
    };
    let schema = |field: &str, message: &str| RegistryError::Schema {
        index: Some(index),
        field: field.into(),
        message: message.into(),
    };
    if r.id.trim().is_empty() {
        return Err(schema("id", "must not be empty"));
    }
    if r.seed_label.trim().is_empty() {
        return Err(schema("seed_label", "must not be empty"));
    }
    if !(1..=6).contains(&r.conway_count) {
        return Err(schema("conway_count", "must be between 1 and 6"));
    }
    if r.expressions.is_empty() {
        return Err(schema("expressions", "must not be empty"));
    }
    if r.as_printed.len() != r.expressions.len() {
        return Err(schema("as_printed", "must have one entry per expression"));
    }

    let mut vars = BTreeSet::new();
    for (k, text) in r.expressions.iter().enumerate() {
        let e = notation::parse(text).map_err(|err| fail(format!("expression {k}: {err}")))?;
        vars.extend(e.variables());
    }
    if vars.len() != r.conway_count as usize {
        return Err(fail(format!(
            "conway_count is {} but the expressions use {} distinct variables",
            r.conway_count,
            vars.len()
        )));
    }

    for e in &r.errata {
        if !r.as_printed.iter().any(|s| s.contains(&e.original)) {
            return Err(fail(format!(
                "erratum fragment {:?} not found in as_printed",
                e.original
            )));
        }
    }
    for (k, (printed, corrected)) in r.as_printed.iter().zip(&r.expressions).enumerate() {
        if apply_errata(printed, &r.errata) != *corrected {
            return Err(fail(format!(
                "as_printed[{k}] with errata applied differs from expressions[{k}]"
            )));
        }
    }

    if let Some(ExpectedTerms {
        value,
        provenance: Provenance::Paper,
    }) = r.expected_terms
    {
        if !STATED_TERM_COUNTS.contains(&value) {
            return Err(fail(format!(
                "term count {value} with provenance paper is not one of {STATED_TERM_COUNTS:?}"
            )));
        }
    }
    Ok(())
}

/// Which text of a record to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Corrected,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// Random points for the oracle; 0 skips the oracle.
    pub oracle_trials: u32,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Corrected,
            oracle_trials: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    /// Every branch's naive expansion equals its canonical polynomial.
    pub naive_agrees: bool,
    /// All branches agree at every random point.
    pub point_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub seed_label: String,
    pub conway_count: u32,
    /// Expansion of the reference branch, the last branch of the first expression.
    pub canonical: Option<Polynomial>,
    pub term_count: usize,
    pub branches_agree: bool,
    pub multilinear_unit: bool,
    pub uses_all_variables: bool,
    pub seed_count: Option<i64>,
    pub expected_terms: Option<ExpectedTerms>,
    pub expected_match: Option<bool>,
    /// Present when the reference branch is a `row2 M ... M col2` chain.
    pub chain_agrees: Option<bool>,
    /// `branch - reference` for each disagreeing branch.
    pub mismatches: Vec<Polynomial>,
    /// Branches that failed to parse or evaluate.
    pub errors: Vec<String>,
    pub oracle: Option<OracleOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty()
            && self.branches_agree
            && self.multilinear_unit
            && self.uses_all_variables
            && self.seed_count == i64::try_from(self.term_count).ok()
            && self.expected_match != Some(false)
            && self.chain_agrees != Some(false)
            && self.oracle.is_none_or(|o| o.naive_agrees && o.point_agrees)
    }
}

/// Parses one record text into branches. A text that does not parse as a
/// whole is split at `=` so that the remaining branches can still be checked.
fn parse_branches(text: &str, errors: &mut Vec<String>) -> Vec<Branch> {
    match notation::parse(text) {
        Ok(e) => e.branches().to_vec(),
        Err(_) => {
            let mut out = Vec::new();
            let mut start = 0;
            for piece in text.split('=') {
                match notation::parse(piece) {
                    Ok(Expr::Single(b)) => out.push(b),
                    Ok(Expr::Identity(_)) => unreachable!("piece contains no '='"),
                    Err(err) => errors.push(format!("{}: {}", piece.trim(), shift(err, start))),
                }
                start += piece.len() + 1;
            }
            out
        }
    }
}

fn shift(err: NotationError, by: usize) -> NotationError {
    use NotationError::*;
    match err {
        Lexical { offset, found } => Lexical {
            offset: offset + by,
            found,
        },
        UnknownWord { offset, word } => UnknownWord {
            offset: offset + by,
            word,
        },
        InvalidVariable { offset, text } => InvalidVariable {
            offset: offset + by,
            text,
        },
        Syntax {
            offset,
            expected,
            found,
        } => Syntax {
            offset: offset + by,
            expected,
            found,
        },
        Arity {
            offset,
            atom,
            expected,
            found,
        } => Arity {
            offset: offset + by,
            atom,
            expected,
            found,
        },
        other => other,
    }
}

pub fn verify_family(r: &FamilyRecord) -> VerificationReport {
    verify_family_with(r, &VerifyOptions::default())
}

pub fn verify_family_with(r: &FamilyRecord, opts: &VerifyOptions) -> VerificationReport {
    let mut errors = Vec::new();
    let texts = r.texts(opts.mode);
    let mut groups: Vec<Vec<Branch>> = texts.iter().map(|t| parse_branches(t, &mut errors)).collect();
    // reference first, so it is the one every other branch is compared with
    let reference_branch = groups.first_mut().and_then(|g| g.pop());
    let mut branches: Vec<Branch> = groups.into_iter().flatten().collect();

    let mut expansions = Vec::new();
    for b in &branches {
        match notation::expand_branch(b) {
            Ok(p) => expansions.push(p),
            Err(err) => errors.push(format!("{b}: {err}")),
        }
    }
    let canonical = match &reference_branch {
        Some(b) => match notation::expand_branch(b) {
            Ok(p) => Some(p),
            Err(err) => {
                errors.push(format!("{b}: {err}"));
                None
            }
        },
        None => None,
    };

    let mismatches: Vec<Polynomial> = match &canonical {
        Some(c) => expansions.iter().map(|p| p - c).filter(|d| !d.is_zero()).collect(),
        None => Vec::new(),
    };
    let branches_agree = canonical.is_some() && errors.is_empty() && mismatches.is_empty();

    let chain_agrees = reference_branch
        .as_ref()
        .and_then(notation::as_chain2)
        .zip(canonical.as_ref())
        .map(|(chain, c)| chain.eval() == *c);

    let (term_count, multilinear_unit, uses_all_variables, seed_count) = match &canonical {
        Some(c) => (
            c.term_count(),
            c.is_unit_multilinear(),
            c.variables().len() == r.conway_count as usize,
            c.eval_ones().to_i64(),
        ),
        None => (0, false, false, None),
    };
    let expected_match = r
        .expected_terms
        .map(|e| seed_count.is_some_and(|s| u64::try_from(s) == Ok(e.value)));

    let oracle = (opts.oracle_trials > 0).then(|| {
        if let Some(b) = &reference_branch {
            branches.push(b.clone());
        }
        let naive_agrees = canonical.is_some()
            && branches.iter().all(|b| {
                let expected = match notation::expand_branch(b) {
                    Ok(p) => p,
                    Err(_) => return false,
                };
                oracle::agrees_with(b, &expected).unwrap_or(false)
            });
        OracleOutcome {
            naive_agrees,
            point_agrees: oracle::point_check_branches(&branches, opts.oracle_trials, opts.seed),
        }
    });

    VerificationReport {
        id: r.id.clone(),
        seed_label: r.seed_label.clone(),
        conway_count: r.conway_count,
        canonical,
        term_count,
        branches_agree,
        multilinear_unit,
        uses_all_variables,
        seed_count,
        expected_terms: r.expected_terms,
        expected_match,
        chain_agrees,
        mismatches,
        errors,
        oracle,
    }
}

/// One report per record, in input order.
pub fn verify_all(records: &[FamilyRecord], opts: &VerifyOptions) -> Vec<VerificationReport> {
    records.par_iter().map(|r| verify_family_with(r, opts)).collect()
}

/// Number of records per `conway_count`.
pub fn count_by_conways(records: &[FamilyRecord]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.conway_count).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: &str = r#"
[[family]]
id = "c3-trefoil-1"
seed_label = "3_1"
conway_count = 3
expressions = ["a1 a2 + a2 a3 + a3 a1 = row2(a1, 1) M mat2(0, a2; a2, 1) M col2(a3, 1)"]
as_printed = ["a1 a2 + a2 a3 + a3 a1 = row2(a1, 1) M mat2(0, a2; a2, 1) M col2(a3, 1)"]
expected_terms = { value = 3, provenance = "derived" }
"#;

    #[test]
    fn loads_minimal_file() {
        let records = load_str(ONE).unwrap();
        assert_eq!(records.len(), 1);
        let report = verify_family(&records[0]);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.canonical.unwrap().to_string(), "a1*a2 + a1*a3 + a2*a3");
        assert_eq!(report.seed_count, Some(3));
        assert_eq!(report.chain_agrees, Some(true));
    }

    #[test]
    fn empty_file_is_schema_error() {
        assert!(matches!(load_str(""), Err(RegistryError::Schema { index: None, .. })));
        assert!(matches!(load_str("family = []"), Err(RegistryError::Schema { .. })));
    }

    #[test]
    fn missing_field_names_record() {
        let text = ONE.replace("seed_label = \"3_1\"\n", "");
        match load_str(&text) {
            Err(RegistryError::Schema { index, message, .. }) => {
                assert_eq!(index, Some(0));
                assert!(message.contains("seed_label"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_id() {
        let text = format!("{ONE}{ONE}");
        assert!(matches!(
            load_str(&text),
            Err(RegistryError::DuplicateId { index: 1, .. })
        ));
    }

    #[test]
    fn conway_count_must_match_variables() {
        let text = ONE.replace("conway_count = 3", "conway_count = 4");
        assert!(matches!(load_str(&text), Err(RegistryError::Invariant { .. })));
    }

    #[test]
    fn stated_provenance_values_are_restricted() {
        let text = ONE.replace("provenance = \"derived\"", "provenance = \"paper\"");
        assert!(matches!(load_str(&text), Err(RegistryError::Invariant { .. })));
    }

    #[test]
    fn errata_must_reproduce_expressions() {
        let text = ONE.replacen("a3 a1 = ", "a1 a3 = ", 1);
        assert!(matches!(load_str(&text), Err(RegistryError::Invariant { .. })));
    }

    #[test]
    fn as_printed_mode_reports_parse_failures() {
        let text = r#"
[[family]]
id = "x"
seed_label = "x"
conway_count = 2
expressions = ["row2(a1, 1) M col2(a2, 1) = a1 + a2"]
as_printed = ["row2(a1, 1) M col2(a2, 1) = (a1 + a2"]
errata = [{ original = "(a1 + a2", corrected = "a1 + a2", note = "unbalanced" }]
"#;
        let records = load_str(text).unwrap();
        let opts = VerifyOptions {
            mode: Mode::AsPrinted,
            ..VerifyOptions::default()
        };
        let report = verify_family_with(&records[0], &opts);
        assert!(!report.passed());
        assert!(!report.branches_agree);
        assert_eq!(report.errors.len(), 1);
        assert!(report.errors[0].contains("offset 36"), "{}", report.errors[0]);
        assert_eq!(report.canonical.unwrap().to_string(), "a1 + a2");
        assert!(verify_family(&records[0]).passed());
    }

    #[test]
    fn verify_all_of_nothing() {
        assert!(verify_all(&[], &VerifyOptions::default()).is_empty());
    }
}
