//! Normalized newform records built from `mf_newforms` listings and
//! `mf_hecke_nf` eigenvalue data.

use crate::LmfdbError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

pub const NEWFORM_SCHEMA: &str = "mf_newforms/v1";
pub const HECKE_SCHEMA: &str = "mf_hecke_nf/v1";
pub const CURVE_SCHEMA: &str = "ec_curvedata/v1";

fn schema(schema: &'static str, message: impl Into<String>) -> LmfdbError {
    LmfdbError::Schema { schema, message: message.into() }
}

/// Integer from a JSON number or decimal string.
pub(crate) fn big_int(v: &Value, schema_name: &'static str) -> Result<BigInt, LmfdbError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigInt::from(i)),
            // exact digits survive parsing with arbitrary precision enabled
            None => n.to_string().parse().map_err(|_| schema(schema_name, format!("non-integer number {n}"))),
        },
        Value::String(s) => s.parse().map_err(|_| schema(schema_name, format!("bad integer string {s:?}"))),
        other => Err(schema(schema_name, format!("expected integer, found {other}"))),
    }
}

fn int_list(v: &Value, field: &str, schema_name: &'static str) -> Result<Vec<BigInt>, LmfdbError> {
    v.as_array()
        .ok_or_else(|| schema(schema_name, format!("{field} is not a list")))?
        .iter()
        .map(|x| big_int(x, schema_name))
        .collect()
}

fn small(v: &BigInt, what: &str, schema_name: &'static str) -> Result<i64, LmfdbError> {
    i64::try_from(v).map_err(|_| schema(schema_name, format!("{what} out of range: {v}")))
}

pub(crate) fn field<'a>(obj: &'a Value, name: &str, schema_name: &'static str) -> Result<&'a Value, LmfdbError> {
    obj.get(name).ok_or_else(|| schema(schema_name, format!("missing field {name}")))
}

/// Hecke eigenvalues as coordinates in the power basis 1, x, ..., x^(d-1) of
/// the Hecke field Q[x]/(f).
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueData {
    /// `an[n - 1]` holds the coordinates of a_n.
    pub an: Vec<Vec<BigRational>>,
}

impl EigenvalueData {
    pub fn len(&self) -> usize {
        self.an.len()
    }

    pub fn is_empty(&self) -> bool {
        self.an.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&[BigRational]> {
        self.an.get(n.checked_sub(1)?).map(|v| v.as_slice())
    }

    /// True when every coordinate has odd denominator, so reduction modulo
    /// primes above 2 can be read off the power basis.
    pub fn two_integral(&self) -> bool {
        let two = BigInt::from(2);
        self.an.iter().flatten().all(|c| !(c.denom() % &two).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewformRecord {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    pub dim: usize,
    /// Defining polynomial of the Hecke field, low degree first.
    #[serde(serialize_with = "ser_big_list")]
    pub field_poly: Vec<BigInt>,
    /// `traces[n - 1]` is the trace of a_n down to Q.
    pub traces: Vec<i64>,
    /// Atkin-Lehner eigenvalues at primes dividing the level.
    pub atkin_lehner: Vec<(u64, i64)>,
    #[serde(skip)]
    pub eigenvalues: Option<EigenvalueData>,
}

fn ser_big_list<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl NewformRecord {
    /// Parses one entry of an `mf_newforms` listing.
    pub fn from_listing(v: &Value) -> Result<Self, LmfdbError> {
        let s = NEWFORM_SCHEMA;
        let label = field(v, "label", s)?.as_str().ok_or_else(|| schema(s, "label is not a string"))?.to_string();
        let level = field(v, "level", s)?.as_u64().ok_or_else(|| schema(s, "level is not an integer"))?;
        let weight = field(v, "weight", s)?.as_u64().ok_or_else(|| schema(s, "weight is not an integer"))? as u32;
        let dim = field(v, "dim", s)?.as_u64().ok_or_else(|| schema(s, "dim is not an integer"))? as usize;
        let field_poly = int_list(field(v, "field_poly", s)?, "field_poly", s)?;
        let traces = int_list(field(v, "traces", s)?, "traces", s)?
            .iter()
            .map(|t| small(t, "trace", s))
            .collect::<Result<Vec<_>, _>>()?;
        let mut atkin_lehner = Vec::new();
        if let Some(al) = v.get("atkin_lehner_eigenvals").filter(|x| !x.is_null()) {
            for pair in al.as_array().ok_or_else(|| schema(s, "atkin_lehner_eigenvals is not a list"))? {
                let pair = int_list(pair, "atkin_lehner pair", s)?;
                if pair.len() != 2 {
                    return Err(schema(s, "atkin_lehner entry is not a pair"));
                }
                let p = small(&pair[0], "prime", s)? as u64;
                atkin_lehner.push((p, small(&pair[1], "eigenvalue", s)?));
            }
        }
        if weight != 2 {
            return Err(schema(s, format!("{label}: weight {weight} is not 2")));
        }
        if field_poly.len() != dim + 1 || field_poly.last() != Some(&BigInt::one()) {
            return Err(schema(s, format!("{label}: field polynomial is not monic of degree {dim}")));
        }
        let eigenvalues = (dim == 1).then(|| EigenvalueData {
            an: traces.iter().map(|&t| vec![BigRational::from_integer(t.into())]).collect(),
        });
        Ok(NewformRecord { label, level, weight, dim, field_poly, traces, atkin_lehner, eigenvalues })
    }

    /// Attaches eigenvalue data from an `mf_hecke_nf` record.
    pub fn attach_hecke(&mut self, v: &Value) -> Result<(), LmfdbError> {
        let s = HECKE_SCHEMA;
        let poly = int_list(field(v, "field_poly", s)?, "field_poly", s)?;
        if poly != self.field_poly {
            return Err(schema(s, format!("{}: field polynomial differs from the listing", self.label)));
        }
        let d = self.dim;
        let dens = int_list(field(v, "hecke_ring_denominators", s)?, "hecke_ring_denominators", s)?;
        let nums = field(v, "hecke_ring_numerators", s)?
            .as_array()
            .ok_or_else(|| schema(s, "hecke_ring_numerators is not a list"))?
            .iter()
            .map(|row| int_list(row, "numerator row", s))
            .collect::<Result<Vec<_>, _>>()?;
        if dens.len() != d || nums.len() != d || nums.iter().any(|r| r.len() != d) || dens.iter().any(|x| x.is_zero()) {
            return Err(schema(s, format!("{}: Hecke ring basis is not {d} x {d}", self.label)));
        }
        // basis element i is (sum_j nums[i][j] x^j) / dens[i]
        let basis: Vec<Vec<BigRational>> = nums
            .iter()
            .zip(&dens)
            .map(|(row, den)| row.iter().map(|n| BigRational::new(n.clone(), den.clone())).collect())
            .collect();
        let mut an = Vec::new();
        for coords in field(v, "an", s)?.as_array().ok_or_else(|| schema(s, "an is not a list"))? {
            let c = int_list(coords, "an entry", s)?;
            if c.len() != d {
                return Err(schema(s, format!("{}: eigenvalue with {} coordinates", self.label, c.len())));
            }
            let mut out = vec![BigRational::zero(); d];
            for (ci, b) in c.iter().zip(&basis) {
                if ci.is_zero() {
                    continue;
                }
                for (o, bj) in out.iter_mut().zip(b) {
                    *o += bj * BigRational::from_integer(ci.clone());
                }
            }
            an.push(out);
        }
        self.eigenvalues = Some(EigenvalueData { an });
        Ok(())
    }

    pub fn trace(&self, n: usize) -> Option<i64> {
        self.traces.get(n.checked_sub(1)?).copied()
    }

    pub fn atkin_lehner(&self, p: u64) -> Option<i64> {
        self.atkin_lehner.iter().find(|(q, _)| *q == p).map(|(_, w)| *w)
    }

    /// Class part of the label: "77.2.a.b" gives "b".
    pub fn class_letters(&self) -> &str {
        self.label.rsplit('.').next().unwrap_or(&self.label)
    }
}
