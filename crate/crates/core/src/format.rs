//! The shared matrix text format and JSON report envelopes.
//!
//! Matrices travel as `{"rows": k, "cols": l, "entries": [[..], ..]}`
//! with row-major entries, each entry a string `"p/q"` or `"p"` (plain
//! integers are also accepted). Input is normalized on read: fractions
//! are reduced and signs moved to the numerator. A zero denominator is
//! rejected outright.
//!
//! Reports embed the exact input matrices so that every run can be
//! replayed from its own output. Key names inside the transfer
//! certificate (`alpha`, `beta`, `c`, `p`, `u`, `q`, `r`, `verdicts.*`)
//! are a stable contract.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::constrained::{DirectedTransferReport, QuadTransferReport, WorkedExampleReport};
use crate::gnsd::{GnsdWitness, NotGnsd};
use crate::jacobson::{BlockEmbedReport, PowerTransferReport, TransferCertificate};
use crate::{Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid JSON: {message}")]
    Json { message: String },
    #[error("{path}: {message}")]
    Structure { path: String, message: String },
    #[error("entries[{row}][{col}]: cannot parse {text:?} as a rational")]
    Entry {
        row: usize,
        col: usize,
        text: String,
    },
    #[error("entries[{row}][{col}]: zero denominator in {text:?}")]
    ZeroDenominator {
        row: usize,
        col: usize,
        text: String,
    },
}

/// Parse `"p"` or `"p/q"` with optional surrounding whitespace; the
/// result is reduced with a positive denominator.
pub fn parse_rational(text: &str) -> Result<Rat, RationalParseError> {
    let trimmed = text.trim();
    let (numer_text, denom_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| RationalParseError::Malformed)?;
    let denom: BigInt = match denom_text {
        Some(d) => d.parse().map_err(|_| RationalParseError::Malformed)?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator);
    }
    Ok(Rat::new(numer, denom))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("malformed rational")]
    Malformed,
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Canonical text for a rational: `"p"` when integral, else `"p/q"`.
pub fn rational_to_string(value: &Rat) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn matrix_to_value(matrix: &RatMatrix) -> Value {
    let entries: Vec<Value> = (0..matrix.rows())
        .map(|r| {
            Value::Array(
                (0..matrix.cols())
                    .map(|c| Value::String(rational_to_string(&matrix[(r, c)])))
                    .collect(),
            )
        })
        .collect();
    json!({
        "rows": matrix.rows(),
        "cols": matrix.cols(),
        "entries": entries,
    })
}

fn entry_from_value(value: &Value, row: usize, col: usize) -> Result<Rat, FormatError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => {
            return Err(FormatError::Structure {
                path: format!("entries[{row}][{col}]"),
                message: format!("expected a rational string, found {other}"),
            })
        }
    };
    parse_rational(&text).map_err(|e| match e {
        RationalParseError::Malformed => FormatError::Entry {
            row,
            col,
            text: text.clone(),
        },
        RationalParseError::ZeroDenominator => FormatError::ZeroDenominator {
            row,
            col,
            text: text.clone(),
        },
    })
}

fn usize_field(object: &Map<String, Value>, name: &str) -> Result<usize, FormatError> {
    let value = object.get(name).ok_or_else(|| FormatError::Structure {
        path: name.to_string(),
        message: "missing field".to_string(),
    })?;
    value
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| FormatError::Structure {
            path: name.to_string(),
            message: format!("expected a nonnegative integer, found {value}"),
        })
}

pub fn matrix_from_value(value: &Value) -> Result<RatMatrix, FormatError> {
    let object = value.as_object().ok_or_else(|| FormatError::Structure {
        path: "$".to_string(),
        message: "expected an object with rows, cols, entries".to_string(),
    })?;
    let rows = usize_field(object, "rows")?;
    let cols = usize_field(object, "cols")?;
    let entries = object
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Structure {
            path: "entries".to_string(),
            message: "expected an array of rows".to_string(),
        })?;
    if entries.len() != rows {
        return Err(FormatError::Structure {
            path: "entries".to_string(),
            message: format!("expected {rows} rows, found {}", entries.len()),
        });
    }
    let mut parsed_rows = Vec::with_capacity(rows);
    for (r, row_value) in entries.iter().enumerate() {
        let row = row_value.as_array().ok_or_else(|| FormatError::Structure {
            path: format!("entries[{r}]"),
            message: "expected an array of entries".to_string(),
        })?;
        if row.len() != cols {
            return Err(FormatError::Structure {
                path: format!("entries[{r}]"),
                message: format!("expected {cols} entries, found {}", row.len()),
            });
        }
        let mut parsed = Vec::with_capacity(cols);
        for (c, entry) in row.iter().enumerate() {
            parsed.push(entry_from_value(entry, r, c)?);
        }
        parsed_rows.push(parsed);
    }
    RatMatrix::from_rows(parsed_rows).map_err(|e| FormatError::Structure {
        path: "entries".to_string(),
        message: e.to_string(),
    })
}

pub fn matrix_from_json_str(text: &str) -> Result<RatMatrix, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Json {
        message: e.to_string(),
    })?;
    matrix_from_value(&value)
}

pub fn witness_to_value(witness: &GnsdWitness<Rat>) -> Value {
    json!({
        "inverse": matrix_to_value(&witness.inverse),
        "idempotent": matrix_to_value(&witness.idempotent),
        "n": witness.n,
        "nilpotency_degree": witness.nilpotency_degree,
    })
}

pub fn refutation_to_value(refutation: &NotGnsd<Rat>) -> Value {
    json!({
        "n": refutation.n,
        "power": refutation.power,
        "evidence": matrix_to_value(&refutation.evidence),
    })
}

/// The stable certificate envelope: seven matrices plus the verdict block.
pub fn certificate_to_value(certificate: &TransferCertificate<Rat>) -> Value {
    let verdicts = &certificate.verdicts;
    json!({
        "kind": "transfer_certificate",
        "n": certificate.n,
        "a": matrix_to_value(&certificate.a),
        "b": matrix_to_value(&certificate.b),
        "alpha": matrix_to_value(&certificate.alpha),
        "beta": matrix_to_value(&certificate.beta),
        "c": matrix_to_value(&certificate.c),
        "p": matrix_to_value(&certificate.p),
        "u": matrix_to_value(&certificate.u),
        "q": matrix_to_value(&certificate.q),
        "r": matrix_to_value(&certificate.r),
        "verdicts": {
            "q_idempotent": verdicts.q_idempotent,
            "q_double_commutant": verdicts.q_double_commutant,
            "beta_defect_nilpotent": verdicts.beta_defect_nilpotent,
            "rc_equals_alpha_minus_p": verdicts.rc_equals_alpha_minus_p,
            "u_invertible": verdicts.u_invertible,
            "intermediate_unit": verdicts.intermediate_unit,
        },
        "all_verdicts": verdicts.all(),
    })
}

pub fn power_report_to_value(report: &PowerTransferReport, a: &RatMatrix, b: &RatMatrix) -> Value {
    json!({
        "kind": "power_transfer",
        "m": report.m,
        "n": report.n,
        "a": matrix_to_value(a),
        "b": matrix_to_value(b),
        "telescoping_identity": report.telescoping_identity,
        "lhs_gnsd": report.lhs_gnsd,
        "rhs_gnsd": report.rhs_gnsd,
        "equivalent": report.equivalent(),
    })
}

pub fn block_report_to_value(report: &BlockEmbedReport, a: &RatMatrix, b: &RatMatrix) -> Value {
    json!({
        "kind": "block_embed",
        "k": report.k,
        "l": report.l,
        "n": report.n,
        "a": matrix_to_value(a),
        "b": matrix_to_value(b),
        "cd_identity": report.cd_identity,
        "dc_identity": report.dc_identity,
        "lhs_gnsd": report.lhs_gnsd,
        "rhs_gnsd": report.rhs_gnsd,
        "equivalent": report.equivalent(),
    })
}

pub fn quad_report_to_value(
    report: &QuadTransferReport,
    a: &RatMatrix,
    b: &RatMatrix,
    c: &RatMatrix,
    d: &RatMatrix,
) -> Value {
    json!({
        "kind": "quad_transfer",
        "n": report.n,
        "a": matrix_to_value(a),
        "b": matrix_to_value(b),
        "c": matrix_to_value(c),
        "d": matrix_to_value(d),
        "lowered_outer_identity": report.lowered_outer_identity,
        "lowered_inner_identity": report.lowered_inner_identity,
        "left_lowering_identity": report.left_lowering_identity,
        "right_lowering_identity": report.right_lowering_identity,
        "lhs_gnsd": report.lhs_gnsd,
        "rhs_gnsd": report.rhs_gnsd,
        "equivalent": report.equivalent(),
    })
}

pub fn directed_report_to_value(
    report: &DirectedTransferReport,
    a: &RatMatrix,
    b: &RatMatrix,
    c: &RatMatrix,
    d: &RatMatrix,
) -> Value {
    json!({
        "kind": "directed_transfer",
        "n": report.n,
        "a": matrix_to_value(a),
        "b": matrix_to_value(b),
        "c": matrix_to_value(c),
        "d": matrix_to_value(d),
        "lowered_outer_identity": report.lowered_outer_identity,
        "lowered_chain_identity": report.lowered_chain_identity,
        "left_lowering_identity": report.left_lowering_identity,
        "right_lowering_identity": report.right_lowering_identity,
        "lhs_gnsd": report.lhs_gnsd,
        "rhs_gnsd": report.rhs_gnsd,
        "implication_holds": report.implication_holds(),
        "converse_observed": report.converse_observed(),
    })
}

pub fn worked_example_to_value(report: &WorkedExampleReport) -> Value {
    json!({
        "kind": "worked_example",
        "a": matrix_to_value(&report.a),
        "b": matrix_to_value(&report.b),
        "c": matrix_to_value(&report.c),
        "d": matrix_to_value(&report.d),
        "checks": {
            "constraint_acd_dbd": report.constraint_acd_dbd,
            "constraint_dba_aca": report.constraint_dba_aca,
            "bdb_differs_from_bac": report.bdb_differs_from_bac,
            "one_minus_ac_matches": report.one_minus_ac_matches,
            "one_minus_bd_matches": report.one_minus_bd_matches,
            "lhs_gnsd": report.lhs_gnsd,
            "rhs_gnsd": report.rhs_gnsd,
        },
        "bdb": matrix_to_value(&report.bdb),
        "bac": matrix_to_value(&report.bac),
        "one_minus_ac": matrix_to_value(&report.one_minus_ac),
        "one_minus_bd": matrix_to_value(&report.one_minus_bd),
        "all_pass": report.all_pass(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn rational_round_trip() {
        for (text, expected) in [
            ("3", rat(3)),
            ("-7", rat(-7)),
            ("1/2", ratio(1, 2)),
            ("2/4", ratio(1, 2)),
            ("-6/4", ratio(-3, 2)),
            ("6/-4", ratio(-3, 2)),
            (" 5 / 10 ", ratio(1, 2)),
            ("0", rat(0)),
        ] {
            assert_eq!(parse_rational(text).unwrap(), expected, "text {text:?}");
        }
    }

    #[test]
    fn rational_rejects_garbage_and_zero_denominators() {
        assert_eq!(parse_rational("x"), Err(RationalParseError::Malformed));
        assert_eq!(parse_rational("1/2/3"), Err(RationalParseError::Malformed));
        assert_eq!(parse_rational(""), Err(RationalParseError::Malformed));
        assert_eq!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator)
        );
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(rational_to_string(&rat(5)), "5");
        assert_eq!(rational_to_string(&ratio(-3, 2)), "-3/2");
        assert_eq!(rational_to_string(&rat(0)), "0");
    }

    #[test]
    fn matrix_round_trip_through_json() {
        let m =
            RatMatrix::from_rows(vec![vec![rat(1), ratio(1, 2)], vec![rat(-3), rat(0)]]).unwrap();
        let value = matrix_to_value(&m);
        let back = matrix_from_value(&value).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn parse_accepts_plain_integer_entries() {
        let text = r#"{"rows": 1, "cols": 2, "entries": [[3, "1/3"]]}"#;
        let m = matrix_from_json_str(text).unwrap();
        assert_eq!(m[(0, 0)], rat(3));
        assert_eq!(m[(0, 1)], ratio(1, 3));
    }

    #[test]
    fn parse_rejects_zero_denominator_with_position() {
        let text = r#"{"rows": 1, "cols": 2, "entries": [["1", "2/0"]]}"#;
        match matrix_from_json_str(text) {
            Err(FormatError::ZeroDenominator { row: 0, col: 1, .. }) => {}
            other => panic!("expected ZeroDenominator, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_shape_mismatches() {
        let text = r#"{"rows": 2, "cols": 1, "entries": [["1"]]}"#;
        assert!(matches!(
            matrix_from_json_str(text),
            Err(FormatError::Structure { .. })
        ));
        let text = r#"{"rows": 1, "cols": 2, "entries": [["1"]]}"#;
        assert!(matches!(
            matrix_from_json_str(text),
            Err(FormatError::Structure { .. })
        ));
        assert!(matches!(
            matrix_from_json_str("[1, 2]"),
            Err(FormatError::Structure { .. })
        ));
        assert!(matches!(
            matrix_from_json_str("not json"),
            Err(FormatError::Json { .. })
        ));
    }

    #[test]
    fn certificate_envelope_has_stable_keys() {
        let z = RatMatrix::zero(2, 2);
        let certificate = crate::jacobson::transfer_witness(&z, &z, 1).unwrap();
        let value = certificate_to_value(&certificate);
        for key in [
            "a", "b", "alpha", "beta", "c", "p", "u", "q", "r", "verdicts",
        ] {
            assert!(value.get(key).is_some(), "missing key {key}");
        }
        let verdicts = value.get("verdicts").unwrap();
        for key in [
            "q_idempotent",
            "q_double_commutant",
            "beta_defect_nilpotent",
            "rc_equals_alpha_minus_p",
            "u_invertible",
            "intermediate_unit",
        ] {
            assert_eq!(verdicts.get(key), Some(&Value::Bool(true)), "verdict {key}");
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let report = crate::constrained::worked_example();
        let first = serde_json::to_string(&worked_example_to_value(&report)).unwrap();
        let second = serde_json::to_string(&worked_example_to_value(&report)).unwrap();
        assert_eq!(first, second);
    }
}
