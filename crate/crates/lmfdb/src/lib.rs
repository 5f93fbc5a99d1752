//! Cached client for LMFDB curve and newform data, and the mod-2 congruence
//! audit of level-raised newforms against an elliptic curve.
//!
//! Requests are GETs against `{base}/api/...`; responses are stored under the
//! SHA-256 of the canonical request line. The crate ships a fixture cache, so
//! everything below works offline.

pub mod audit;
pub mod client;
pub mod gf2poly;
pub mod record;
pub mod tables;

pub use audit::{
    congruence_audit, sign_extract, sign_from_atkin_lehner, sign_from_eigenvalue, AuditCurve, CertificateStatus,
    CongruenceCertificate,
};
pub use client::{cache_key, canonical_request, Client, ClientConfig};
pub use gf2poly::Gf2Poly;
pub use record::{EigenvalueData, NewformRecord};
pub use tables::{verify_table, TableAuditReport, TableFixture, DEFAULT_BOUND};

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LmfdbError {
    #[error("GET {url} failed after {attempts} attempts: {message}")]
    Http { url: String, attempts: u32, message: String },
    #[error("offline and not cached: {0}")]
    OfflineMiss(String),
    #[error("response does not match schema {schema}: {message}")]
    Schema { schema: &'static str, message: String },
    #[error("unreadable cache entry {path}: {message}")]
    Cache { path: PathBuf, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("{label}: {p} does not exactly divide the level")]
    NotSteinberg { label: String, p: u64 },
    #[error("{label}: not Steinberg-rational at {p} (trace {trace}, dimension {dim})")]
    NotSteinbergRational { label: String, p: u64, trace: i64, dim: usize },
    #[error("{label}: no eigenvalue data for a_{n}")]
    MissingEigenvalues { label: String, n: usize },
    #[error("Hecke field of degree {0} is too large for reduction mod 2")]
    DegreeTooLarge(usize),
    #[error(transparent)]
    Curve(#[from] lrlab_core::curves::CurveError),
    #[error("table fixture: {0}")]
    Table(String),
}
