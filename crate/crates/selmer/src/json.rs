//! Versioned JSON form of a [`SelmerSystem`] (schema `selmersys/1`).
//!
//! Vectors are hex strings: for each of the `d` bitplanes, `ceil(n/8)` bytes
//! holding coordinate bit `i` at bit `i % 8` of byte `i / 8`, planes in order.
//! The quadratic form of a place is its upper-triangular matrix, one vector
//! per row.

use serde::{Deserialize, Serialize};

use crate::field::Gf2k;
use crate::linalg::{FVec, Subspace};
use crate::quad::QuadSpace;
use crate::system::{Flavor, GlobalAxiom, Place, SelmerSystem};
use crate::SelmerError;

pub const SCHEMA: &str = "selmersys/1";

#[derive(Serialize, Deserialize)]
struct FieldJson {
    degree: u32,
    modulus: u16,
}

#[derive(Serialize, Deserialize)]
struct PlaceJson {
    label: String,
    dim: usize,
    form: Vec<String>,
    condition: Vec<String>,
    flavor: Flavor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    schema: String,
    field: FieldJson,
    #[serde(default)]
    axiom: GlobalAxiom,
    places: Vec<PlaceJson>,
    global: Vec<String>,
}

pub fn encode_vector(v: &FVec, n: usize, field: &Gf2k) -> String {
    let bytes = n.div_ceil(8);
    let mut out = Vec::with_capacity(bytes * field.degree as usize);
    for j in 0..field.degree as usize {
        out.extend_from_slice(&v.planes[j].to_le_bytes()[..bytes]);
    }
    hex::encode(out)
}

pub fn decode_vector(s: &str, n: usize, field: &Gf2k) -> Result<FVec, SelmerError> {
    let raw = hex::decode(s).map_err(|e| SelmerError::Json(format!("bad hex {s:?}: {e}")))?;
    let bytes = n.div_ceil(8);
    if raw.len() != bytes * field.degree as usize {
        return Err(SelmerError::Json(format!("vector {s:?} has {} bytes, expected {}", raw.len(), bytes * field.degree as usize)));
    }
    let mut v = FVec::ZERO;
    for j in 0..field.degree as usize {
        let mut word = [0u8; 8];
        word[..bytes].copy_from_slice(&raw[j * bytes..(j + 1) * bytes]);
        v.planes[j] = u64::from_le_bytes(word);
        if n < 64 && v.planes[j] >> n != 0 {
            return Err(SelmerError::Json(format!("vector {s:?} has bits beyond dimension {n}")));
        }
    }
    Ok(v)
}

fn encode_subspace(s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| encode_vector(v, s.ambient, &s.field)).collect()
}

fn decode_subspace(rows: &[String], n: usize, field: Gf2k) -> Result<Subspace, SelmerError> {
    let mut s = Subspace::zero(field, n);
    for r in rows {
        if !s.insert(decode_vector(r, n, &field)?) {
            return Err(SelmerError::Json(format!("row {r:?} is linearly dependent on earlier rows")));
        }
    }
    Ok(s)
}

impl SelmerSystem {
    pub fn to_json(&self) -> serde_json::Value {
        let f = self.field;
        let places = self
            .places()
            .iter()
            .map(|p| PlaceJson {
                label: p.label.clone(),
                dim: p.dim(),
                form: p.space.upper_rows().iter().map(|r| encode_vector(r, p.dim(), &f)).collect(),
                condition: encode_subspace(&p.condition),
                flavor: p.flavor,
                metadata: p.metadata.clone(),
            })
            .collect();
        let doc = SystemJson {
            schema: SCHEMA.into(),
            field: FieldJson { degree: f.degree, modulus: f.modulus },
            axiom: self.axiom,
            places,
            global: encode_subspace(self.global()),
        };
        serde_json::to_value(doc).expect("system serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SelmerSystem, SelmerError> {
        let doc: SystemJson = serde_json::from_value(value.clone()).map_err(|e| SelmerError::Json(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(SelmerError::Json(format!("unsupported schema {:?}, expected {SCHEMA}", doc.schema)));
        }
        let field = Gf2k::with_modulus(doc.field.degree, doc.field.modulus)?;
        let mut places = Vec::with_capacity(doc.places.len());
        let mut total = 0;
        for p in doc.places {
            if p.form.len() != p.dim {
                return Err(SelmerError::Json(format!("place {}: {} form rows for dimension {}", p.label, p.form.len(), p.dim)));
            }
            let rows = p
                .form
                .iter()
                .map(|r| decode_vector(r, p.dim, &field).map(|v| v.coords(p.dim)))
                .collect::<Result<Vec<_>, _>>()?;
            let space = QuadSpace::new(field, &rows)?;
            let condition = decode_subspace(&p.condition, p.dim, field)?;
            total += p.dim;
            places.push(Place { label: p.label, space, condition, flavor: p.flavor, metadata: p.metadata });
        }
        let global = decode_subspace(&doc.global, total, field)?;
        SelmerSystem::new(field, places, global, doc.axiom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_roundtrip() {
        let f = Gf2k::new(3).unwrap();
        let v = FVec::from_coords(&[1, 7, 0, 4, 2, 0, 0, 0, 0, 5]);
        let s = encode_vector(&v, 10, &f);
        assert_eq!(s.len(), 2 * 2 * 3);
        assert_eq!(decode_vector(&s, 10, &f).unwrap(), v);
        assert_eq!(encode_vector(&FVec::from_bits(0b1011), 4, &Gf2k::F2), "0b");
    }
}
