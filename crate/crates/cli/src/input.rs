//! Input files: pencils, vectors and generator lists, all JSON.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use qpencil::field::parse_rational;
use qpencil::matrix::SymMatrix;
use qpencil::pencil::Pencil;
use qpencil::toric_galois::IntMatrix;
use qpencil::{Field, FieldSpec, PrimeField};
use serde_json::Value;

use crate::CliError;

type Term = (usize, usize, BigRational);

/// A parsed pencil file: `{"field": ..., "n": 5, "q0": [[i, j, c], ...], "q1": ...}`.
///
/// Each term `[i, j, c]` with `i <= j` adds `c·x_i·x_j` to the form; `c` is
/// an integer or a string `"n"` or `"n/d"`. `field` is `"Q"`, `"F_p"` or
/// `{"kind": "prime", "p": p}`.
#[derive(Debug, Clone)]
pub struct PencilFile {
    pub field: FieldSpec,
    pub n: usize,
    q0: Vec<Term>,
    q1: Vec<Term>,
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn parse_json(text: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| input_error(format!("{what}: malformed JSON: {e}")))
}

fn parse_field(v: &Value) -> Result<FieldSpec, CliError> {
    let spec = match v {
        Value::String(s) if s == "Q" => FieldSpec::Rationals,
        Value::String(s) => {
            let p = s
                .strip_prefix("F_")
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| input_error(format!("field `field`: expected \"Q\" or \"F_p\", got {s:?}")))?;
            FieldSpec::Prime { p }
        }
        other => serde_json::from_value(other.clone()).map_err(|e| input_error(format!("field `field`: {e}")))?,
    };
    if let FieldSpec::Prime { p } = spec {
        PrimeField::new(p).map_err(|e| input_error(format!("field `field`: {e}")))?;
    }
    Ok(spec)
}

pub fn parse_coefficient(v: &Value, path: &str) -> Result<BigRational, CliError> {
    match v {
        Value::Number(n) => {
            let i: BigInt =
                n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)).ok_or_else(|| {
                    input_error(format!("field `{path}`: {n} is not an integer; use a \"n/d\" string"))
                })?;
            Ok(BigRational::from_integer(i))
        }
        Value::String(s) => parse_rational(s).map_err(|e| input_error(format!("field `{path}`: {e}"))),
        other => Err(input_error(format!("field `{path}`: expected an integer or a string, got {other}"))),
    }
}

fn parse_index(v: &Value, path: &str, n: usize) -> Result<usize, CliError> {
    let i = v.as_u64().ok_or_else(|| input_error(format!("field `{path}`: expected a variable index")))?;
    if i as usize > n {
        return Err(input_error(format!("field `{path}`: index {i} outside 0..={n}")));
    }
    Ok(i as usize)
}

fn parse_terms(v: Option<&Value>, name: &str, n: usize) -> Result<Vec<Term>, CliError> {
    let list = v
        .ok_or_else(|| input_error(format!("missing field `{name}`")))?
        .as_array()
        .ok_or_else(|| input_error(format!("field `{name}`: expected a list of [i, j, coefficient] terms")))?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(list.len());
    for (k, t) in list.iter().enumerate() {
        let path = format!("{name}[{k}]");
        let parts = t
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| input_error(format!("field `{path}`: expected [i, j, coefficient]")))?;
        let i = parse_index(&parts[0], &format!("{path}[0]"), n)?;
        let j = parse_index(&parts[1], &format!("{path}[1]"), n)?;
        if i > j {
            return Err(input_error(format!("field `{path}`: need i <= j, got ({i}, {j})")));
        }
        if !seen.insert((i, j)) {
            return Err(input_error(format!("field `{path}`: duplicate pair ({i}, {j})")));
        }
        out.push((i, j, parse_coefficient(&parts[2], &format!("{path}[2]"))?));
    }
    Ok(out)
}

impl PencilFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v = parse_json(text, "pencil file")?;
        let obj = v.as_object().ok_or_else(|| input_error("pencil file: expected a JSON object"))?;
        if let Some(k) = obj.keys().find(|k| !["field", "n", "q0", "q1"].contains(&k.as_str())) {
            return Err(input_error(format!("unknown field `{k}`")));
        }
        let field = parse_field(obj.get("field").ok_or_else(|| input_error("missing field `field`"))?)?;
        let n = obj
            .get("n")
            .ok_or_else(|| input_error("missing field `n`"))?
            .as_u64()
            .filter(|&n| n >= 1)
            .ok_or_else(|| input_error("field `n`: expected a positive integer"))? as usize;
        let q0 = parse_terms(obj.get("q0"), "q0", n)?;
        let q1 = parse_terms(obj.get("q1"), "q1", n)?;
        Ok(PencilFile { field, n, q0, q1 })
    }

    /// The pencil over `f`; rational coefficients are reduced when `f` is
    /// a prime field.
    pub fn build<F: Field>(&self, f: &F) -> Result<Pencil<F>, CliError> {
        let form = |terms: &[Term], name: &str| -> Result<SymMatrix<F>, CliError> {
            let mapped = terms
                .iter()
                .map(|(i, j, c)| {
                    f.from_rational(c)
                        .map(|e| (*i, *j, e))
                        .map_err(|e| input_error(format!("field `{name}`: coefficient of x{i}·x{j}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SymMatrix::from_monomial_coeffs(f, self.n + 1, &mapped)?)
        };
        Ok(Pencil::new(form(&self.q0, "q0")?, form(&self.q1, "q1")?)?)
    }

    /// The prime field to work over: the file's own, or `q` for a rational
    /// file. A `q` that disagrees with a prime-field file is an error.
    pub fn finite_field(&self, q: Option<u64>) -> Result<PrimeField, CliError> {
        let p = match (self.field, q) {
            (FieldSpec::Prime { p }, None) => p,
            (FieldSpec::Prime { p }, Some(q)) if p == q => p,
            (FieldSpec::Prime { p }, Some(q)) => {
                return Err(input_error(format!("--q {q} disagrees with the file's field F_{p}")))
            }
            (FieldSpec::Rationals, Some(q)) => q,
            (FieldSpec::Rationals, None) => return Err(input_error("a rational pencil needs --q")),
        };
        Ok(PrimeField::new(p)?)
    }
}

/// A vector given as a JSON list of integers or rational strings.
pub fn parse_vector(text: &str, what: &str) -> Result<Vec<BigRational>, CliError> {
    let v = parse_json(text, what)?;
    let list = v.as_array().ok_or_else(|| input_error(format!("{what}: expected a list")))?;
    list.iter().enumerate().map(|(i, c)| parse_coefficient(c, &format!("{what}[{i}]"))).collect()
}

/// Two vectors spanning a line, as `[[...], [...]]`.
pub fn parse_line(text: &str) -> Result<[Vec<BigRational>; 2], CliError> {
    let v = parse_json(text, "--line")?;
    let list = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| input_error("--line: expected [[u...], [v...]]"))?;
    let vec = |k: usize| parse_vector(&list[k].to_string(), &format!("--line[{k}]"));
    Ok([vec(0)?, vec(1)?])
}

/// Maps a rational vector into `f`, checking its length.
pub fn vector_in<F: Field>(f: &F, v: &[BigRational], len: usize, what: &str) -> Result<Vec<F::Elem>, CliError> {
    if v.len() != len {
        return Err(input_error(format!("{what}: expected {len} coordinates, got {}", v.len())));
    }
    v.iter().map(|c| f.from_rational(c).map_err(|e| input_error(format!("{what}: {e}")))).collect()
}

/// A list of 3×3 integer matrices.
pub fn parse_generators(text: &str) -> Result<Vec<IntMatrix>, CliError> {
    let v = parse_json(text, "generator file")?;
    let list = v.as_array().ok_or_else(|| input_error("generator file: expected a list of 3x3 integer matrices"))?;
    if list.is_empty() {
        return Err(input_error("generator file: no generators"));
    }
    list.iter()
        .enumerate()
        .map(|(k, m)| {
            let bad = || input_error(format!("generator file: entry [{k}] is not a 3x3 integer matrix"));
            let rows = m.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
            let mut out = [[0i64; 3]; 3];
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
                for (j, e) in row.iter().enumerate() {
                    out[i][j] = e.as_i64().ok_or_else(bad)?;
                }
            }
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_pairs_are_rejected() {
        let text = r#"{"field": "Q", "n": 2, "q0": [[0, 1, 1], [0, 1, "2/3"]], "q1": []}"#;
        let err = PencilFile::parse(text).unwrap_err().to_string();
        assert!(err.contains("q0[1]") && err.contains("duplicate"), "{err}");
    }

    #[test]
    fn syntax_errors_name_the_line() {
        let err = PencilFile::parse("{\n\"field\": \"Q\",\n\"n\": }").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn field_forms() {
        for f in [r#""F_7""#, r#"{"kind": "prime", "p": 7}"#] {
            let text = format!(r#"{{"field": {f}, "n": 1, "q0": [[0, 0, 1]], "q1": [[1, 1, 1]]}}"#);
            assert_eq!(PencilFile::parse(&text).unwrap().field, FieldSpec::Prime { p: 7 });
        }
        let bad = r#"{"field": "F_9", "n": 1, "q0": [], "q1": []}"#;
        assert!(PencilFile::parse(bad).is_err());
    }

    #[test]
    fn reduction_rejects_bad_denominators() {
        let text = r#"{"field": "Q", "n": 2, "q0": [[0, 0, "1/3"], [1, 1, 1]], "q1": [[1, 1, 1], [2, 2, 1]]}"#;
        let file = PencilFile::parse(text).unwrap();
        assert!(file.build(&PrimeField::new(3).unwrap()).is_err());
        file.build(&PrimeField::new(5).unwrap()).unwrap();
    }

    #[test]
    fn index_bounds() {
        let text = r#"{"field": "Q", "n": 1, "q0": [[0, 2, 1]], "q1": []}"#;
        assert!(PencilFile::parse(text).unwrap_err().to_string().contains("q0[0][1]"));
    }
}
