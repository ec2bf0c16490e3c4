//! JSON file formats. Integers that may not fit in 64 bits are written as
//! decimal strings; on input both numbers and strings are accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use odolat::odometer::{Answer, ClassificationReport, Config, Verdict, Witness};
use odolat::{IntMatrix, RatMatrix};

use crate::CliError;

/// `{"d": n, "rows": [[…], …]}` with integer or `"p/q"` entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub d: usize,
    pub rows: Vec<Vec<Value>>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let m: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::input(format!("matrix file: {e}")))?;
        if m.rows.len() != m.d {
            return Err(CliError::input(format!("rows: expected {} rows, found {}", m.d, m.rows.len())));
        }
        if let Some((i, r)) = m.rows.iter().enumerate().find(|(_, r)| r.len() != m.d) {
            return Err(CliError::input(format!("rows[{i}]: expected {} entries, found {}", m.d, r.len())));
        }
        Ok(m)
    }

    pub fn rational(&self) -> Result<RatMatrix, CliError> {
        let mut data = Vec::with_capacity(self.d * self.d);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                data.push(parse_rational(v).map_err(|e| CliError::input(format!("rows[{i}][{j}]: {e}")))?);
            }
        }
        RatMatrix::new(self.d, self.d, data).map_err(|e| CliError::input(format!("rows: {e}")))
    }

    pub fn integer(&self) -> Result<IntMatrix, CliError> {
        let r = self.rational()?;
        for (k, x) in r.entries().iter().enumerate() {
            if !x.is_integer() {
                return Err(CliError::input(format!("rows[{}][{}]: {x} is not an integer", k / self.d, k % self.d)));
            }
        }
        Ok(r.to_int().expect("checked integral"))
    }

    pub fn from_rational(m: &RatMatrix) -> Self {
        let rows = (0..m.rows()).map(|i| m.row(i).iter().map(|x| Value::String(x.to_string())).collect()).collect();
        MatrixFile { d: m.rows(), rows }
    }
}

pub fn parse_rational(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().expect("i64").into())),
        Value::Number(n) if n.is_u64() => Ok(BigRational::from_integer(n.as_u64().expect("u64").into())),
        Value::String(s) => parse_rational_str(s),
        other => Err(format!("expected an integer or a \"p/q\" string, found {other}")),
    }
}

pub fn parse_rational_str(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("cannot parse {s:?} as a rational number");
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// `{"coeffs": [c_0, c_1, …]}`, ascending.
#[derive(Clone, Debug, Deserialize)]
pub struct PolyFile {
    pub coeffs: Vec<Value>,
}

impl PolyFile {
    pub fn parse(text: &str) -> Result<Vec<BigInt>, CliError> {
        let p: PolyFile = serde_json::from_str(text).map_err(|e| CliError::input(format!("polynomial file: {e}")))?;
        p.coeffs
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let r = parse_rational(v).map_err(|e| CliError::input(format!("coeffs[{i}]: {e}")))?;
                if r.is_integer() {
                    Ok(r.to_integer())
                } else {
                    Err(CliError::input(format!("coeffs[{i}]: {r} is not an integer")))
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    Matrix { rows: Vec<Vec<String>> },
    Truncation { p: String, j: u32 },
    Criterion { text: String },
    Exhausted { search_bound: u32, depth: u32 },
    Hypothesis { text: String },
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Matrix(m) => WitnessJson::Matrix {
                rows: (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect(),
            },
            Witness::Truncation { p, j } => WitnessJson::Truncation { p: p.to_string(), j: *j },
            Witness::Criterion(t) => WitnessJson::Criterion { text: t.clone() },
            Witness::Exhausted { search_bound, depth } => {
                WitnessJson::Exhausted { search_bound: *search_bound, depth: *depth }
            }
            Witness::Hypothesis(t) => WitnessJson::Hypothesis { text: t.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub answer: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessJson>,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<u32>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            answer: v.answer.to_string(),
            witness: v.witness.as_ref().map(WitnessJson::from),
            method: v.method.clone(),
            level: v.level,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub depth: Option<u32>,
    pub search_bound: u32,
    pub time_budget_ms: u64,
    pub fast_path_only: bool,
}

impl From<&Config> for ConfigJson {
    fn from(c: &Config) -> Self {
        ConfigJson {
            depth: c.depth,
            search_bound: c.search_bound,
            time_budget_ms: c.time_budget_ms,
            fast_path_only: c.fast_path_only,
        }
    }
}

/// The emitted classification report. Field order is the output order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool_version: String,
    pub config: ConfigJson,
    pub depth: u32,
    #[serde(rename = "dense_A")]
    pub dense_a: VerdictJson,
    #[serde(rename = "dense_B")]
    pub dense_b: VerdictJson,
    pub orbit_equivalent: VerdictJson,
    pub conjugate: VerdictJson,
    pub isomorphic: VerdictJson,
    pub cont_orbit_equivalent: VerdictJson,
    pub warnings: Vec<String>,
}

impl ReportFile {
    pub fn new(r: &ClassificationReport) -> Self {
        ReportFile {
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config: (&r.config).into(),
            depth: r.depth,
            dense_a: (&r.dense_a).into(),
            dense_b: (&r.dense_b).into(),
            orbit_equivalent: (&r.orbit_equivalent).into(),
            conjugate: (&r.conjugate).into(),
            isomorphic: (&r.isomorphic).into(),
            cont_orbit_equivalent: (&r.cont_orbit_equivalent).into(),
            warnings: r.warnings.clone(),
        }
    }

    /// Schema and implication-chain checks on the serialized form.
    pub fn check(&self) -> Result<(), String> {
        let all = [
            ("dense_A", &self.dense_a),
            ("dense_B", &self.dense_b),
            ("conjugate", &self.conjugate),
            ("isomorphic", &self.isomorphic),
            ("cont_orbit_equivalent", &self.cont_orbit_equivalent),
            ("orbit_equivalent", &self.orbit_equivalent),
        ];
        for (name, v) in all {
            let answer = parse_answer(&v.answer).ok_or_else(|| format!("{name}.answer: {:?}", v.answer))?;
            match (answer, &v.witness) {
                (_, None) => return Err(format!("{name}: missing witness")),
                (Answer::Unknown, Some(WitnessJson::Exhausted { .. } | WitnessJson::Hypothesis { .. })) => {}
                (Answer::Unknown, _) => return Err(format!("{name}: Unknown must name an exhausted bound")),
                (_, Some(WitnessJson::Exhausted { .. } | WitnessJson::Hypothesis { .. })) => {
                    return Err(format!("{name}: a decided answer cannot rest on an exhausted bound"))
                }
                _ => {}
            }
            if v.method.is_empty() {
                return Err(format!("{name}: empty method"));
            }
        }
        let chain: Vec<(&str, Answer)> = all[2..]
            .iter()
            .map(|(n, v)| (*n, parse_answer(&v.answer).expect("checked")))
            .collect();
        for w in chain.windows(2) {
            let ((s, a), (t, b)) = (w[0], w[1]);
            if a == Answer::Yes && b != Answer::Yes {
                return Err(format!("{s} is Yes but {t} is {b}"));
            }
            if b == Answer::No && a != Answer::No {
                return Err(format!("{t} is No but {s} is {a}"));
            }
        }
        Ok(())
    }
}

pub fn parse_answer(s: &str) -> Option<Answer> {
    match s {
        "Yes" => Some(Answer::Yes),
        "No" => Some(Answer::No),
        "Unknown" => Some(Answer::Unknown),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational_str("6/4").unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(parse_rational_str(" -7 ").unwrap(), BigRational::from_integer((-7).into()));
        assert!(parse_rational_str("1/0").is_err());
        assert!(parse_rational_str("x").is_err());
    }

    #[test]
    fn matrix_shape_errors_name_the_field() {
        let e = MatrixFile::parse(r#"{"d":2,"rows":[[1,2],[3]]}"#).unwrap_err();
        assert!(e.message.contains("rows[1]"));
        let e = MatrixFile::parse(r#"{"d":2,"rows":[[1,"a"],[3,4]]}"#).unwrap().integer().unwrap_err();
        assert!(e.message.contains("rows[0][1]"));
    }

    #[test]
    fn witness_round_trip() {
        let w = WitnessJson::Truncation { p: "3".into(), j: 1 };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"kind":"truncation","p":"3","j":1}"#);
        assert_eq!(serde_json::from_str::<WitnessJson>(&s).unwrap(), w);
    }
}
