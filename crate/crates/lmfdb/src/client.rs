//! HTTP JSON client with a content-addressed on-disk cache.

use crate::record::{field, NewformRecord, CURVE_SCHEMA, HECKE_SCHEMA, NEWFORM_SCHEMA};
use crate::LmfdbError;
use lrlab_core::WeierstrassCurve;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";
pub const BASE_URL_ENV: &str = "LRLAB_LMFDB_URL";
pub const OFFLINE_ENV: &str = "LRLAB_OFFLINE";
pub const MIN_REQUEST_INTERVAL: Duration = Duration::from_millis(200);
pub const MAX_ATTEMPTS: u32 = 3;
pub const INDEX_FILE: &str = "index.json";

/// Response cache committed with the crate.
pub fn bundled_fixture_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/cache"))
}

/// Canonical request line: query keys sorted, no percent-encoding.
pub fn canonical_request(path: &str, params: &[(&str, &str)]) -> String {
    let sorted: BTreeMap<&str, &str> = params.iter().copied().collect();
    let query: Vec<String> = sorted.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("GET {path}?{}", query.join("&"))
}

pub fn cache_key(path: &str, params: &[(&str, &str)]) -> String {
    hex::encode(Sha256::digest(canonical_request(path, params).as_bytes()))
}

#[derive(Clone, Debug)]
pub struct ClientConfig {
    pub base_url: String,
    /// Writable cache for live responses.
    pub cache_dir: PathBuf,
    /// Read-only directories consulted after the cache.
    pub fixture_dirs: Vec<PathBuf>,
    pub offline: bool,
}

impl ClientConfig {
    /// Base URL and offline flag from the environment; bundled fixtures are
    /// always consulted.
    pub fn from_env(cache_dir: impl Into<PathBuf>) -> Self {
        let offline = std::env::var(OFFLINE_ENV).map(|v| v == "1" || v.eq_ignore_ascii_case("true")).unwrap_or(false);
        ClientConfig {
            base_url: std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string()),
            cache_dir: cache_dir.into(),
            fixture_dirs: vec![bundled_fixture_dir()],
            offline,
        }
    }

    /// Serves the bundled fixtures only.
    pub fn offline_fixtures() -> Self {
        let dir = bundled_fixture_dir();
        ClientConfig { base_url: DEFAULT_BASE_URL.to_string(), cache_dir: dir.clone(), fixture_dirs: vec![], offline: true }
    }
}

pub struct Client {
    config: ClientConfig,
    agent: ureq::Agent,
    // serializes network access and remembers the last request time
    network: Mutex<Option<Instant>>,
    index: Mutex<()>,
}

impl Client {
    pub fn new(config: ClientConfig) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(Duration::from_secs(60))).build().into();
        Client { config, agent, network: Mutex::new(None), index: Mutex::new(()) }
    }

    pub fn config(&self) -> &ClientConfig {
        &self.config
    }

    fn lookup(&self, key: &str) -> Result<Option<Value>, LmfdbError> {
        let dirs = std::iter::once(&self.config.cache_dir).chain(&self.config.fixture_dirs);
        for dir in dirs {
            let path = dir.join(format!("{key}.json"));
            match std::fs::read_to_string(&path) {
                Ok(text) => {
                    let v = serde_json::from_str(&text).map_err(|e| LmfdbError::Cache {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                    return Ok(Some(v));
                }
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => continue,
                Err(e) => return Err(e.into()),
            }
        }
        Ok(None)
    }

    fn store(&self, key: &str, request: &str, body: &Value) -> Result<(), LmfdbError> {
        let dir = &self.config.cache_dir;
        std::fs::create_dir_all(dir)?;
        write_atomic(&dir.join(format!("{key}.json")), &serde_json::to_vec(body).expect("serializable"))?;
        let _guard = self.index.lock().unwrap_or_else(|e| e.into_inner());
        let index_path = dir.join(INDEX_FILE);
        let mut index: BTreeMap<String, String> = match std::fs::read_to_string(&index_path) {
            Ok(t) => serde_json::from_str(&t).unwrap_or_default(),
            Err(_) => BTreeMap::new(),
        };
        index.insert(key.to_string(), request.to_string());
        write_atomic(&index_path, &serde_json::to_vec_pretty(&index).expect("serializable"))?;
        Ok(())
    }

    fn fetch_live(&self, path: &str, params: &[(&str, &str)]) -> Result<Value, LmfdbError> {
        let mut sorted: Vec<(&str, &str)> = params.to_vec();
        sorted.sort();
        let url = format!("{}{}", self.config.base_url.trim_end_matches('/'), path);
        let mut last = self.network.lock().unwrap_or_else(|e| e.into_inner());
        let mut message = String::new();
        for attempt in 1..=MAX_ATTEMPTS {
            if let Some(t) = *last {
                let wait = MIN_REQUEST_INTERVAL.saturating_sub(t.elapsed());
                std::thread::sleep(wait);
            }
            *last = Some(Instant::now());
            log::info!("GET {url} attempt {attempt}");
            let mut req = self.agent.get(&url);
            for (k, v) in &sorted {
                req = req.query(*k, *v);
            }
            match req.call() {
                Ok(mut resp) => match resp.body_mut().read_to_string() {
                    Ok(text) => {
                        return serde_json::from_str(&text).map_err(|e| LmfdbError::Schema {
                            schema: "json",
                            message: format!("{url}: {e}"),
                        })
                    }
                    Err(e) => message = e.to_string(),
                },
                Err(e) => message = e.to_string(),
            }
            std::thread::sleep(MIN_REQUEST_INTERVAL * (1 << attempt));
        }
        Err(LmfdbError::Http { url, attempts: MAX_ATTEMPTS, message })
    }

    /// GET with cache: cache and fixtures first, then the network unless offline.
    pub fn get(&self, path: &str, params: &[(&str, &str)]) -> Result<Value, LmfdbError> {
        let request = canonical_request(path, params);
        let key = cache_key(path, params);
        if let Some(v) = self.lookup(&key)? {
            log::debug!("cache hit {request}");
            return Ok(v);
        }
        if self.config.offline {
            return Err(LmfdbError::OfflineMiss(request));
        }
        let body = self.fetch_live(path, params)?;
        self.store(&key, &request, &body)?;
        Ok(body)
    }

    /// All `data` entries of a query, following `next` pages.
    fn get_all(&self, path: &str, params: &[(&str, &str)], schema: &'static str) -> Result<Vec<Value>, LmfdbError> {
        let mut out = Vec::new();
        let mut owned: Vec<(String, String)> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        loop {
            let borrowed: Vec<(&str, &str)> = owned.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
            let body = self.get(path, &borrowed)?;
            let data = field(&body, "data", schema)?
                .as_array()
                .ok_or_else(|| LmfdbError::Schema { schema, message: "data is not a list".into() })?;
            out.extend(data.iter().cloned());
            match body.get("next").and_then(Value::as_str) {
                Some(next) => {
                    let query = next.split_once('?').map(|(_, q)| q).unwrap_or("");
                    owned = query
                        .split('&')
                        .filter_map(|kv| kv.split_once('='))
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .collect();
                }
                None => return Ok(out),
            }
        }
    }

    /// Weight-2 trivial-character newforms of the given level, each with
    /// eigenvalue data attached.
    pub fn fetch_newforms(&self, level: u64) -> Result<Vec<NewformRecord>, LmfdbError> {
        let lvl = format!("i{level}");
        let params = [("_format", "json"), ("char_order", "i1"), ("level", lvl.as_str()), ("weight", "i2")];
        let listing = self.get_all("/api/mf_newforms/", &params, NEWFORM_SCHEMA)?;
        let mut out = Vec::new();
        for entry in &listing {
            let mut rec = NewformRecord::from_listing(entry)?;
            if rec.level != level {
                return Err(LmfdbError::Schema {
                    schema: NEWFORM_SCHEMA,
                    message: format!("{} returned for level {level}", rec.label),
                });
            }
            if rec.dim > 1 {
                let params = [("_format", "json"), ("label", rec.label.as_str())];
                let data = self.get_all("/api/mf_hecke_nf/", &params, HECKE_SCHEMA)?;
                let hecke = data.first().ok_or_else(|| LmfdbError::NotFound(format!("Hecke data for {}", rec.label)))?;
                rec.attach_hecke(hecke)?;
            }
            out.push(rec);
        }
        out.sort_by(|a, b| (a.dim, &a.traces, &a.label).cmp(&(b.dim, &b.traces, &b.label)));
        Ok(out)
    }

    /// Curve by Cremona label.
    pub fn fetch_curve(&self, label: &str) -> Result<WeierstrassCurve, LmfdbError> {
        let params = [("Clabel", label), ("_format", "json")];
        let data = self.get_all("/api/ec_curvedata/", &params, CURVE_SCHEMA)?;
        let entry = data.first().ok_or_else(|| LmfdbError::NotFound(format!("curve {label}")))?;
        let ainvs = field(entry, "ainvs", CURVE_SCHEMA)?
            .as_array()
            .filter(|a| a.len() == 5)
            .ok_or_else(|| LmfdbError::Schema { schema: CURVE_SCHEMA, message: "ainvs is not a 5-list".into() })?;
        let mut a = [0i64; 5];
        for (slot, v) in a.iter_mut().zip(ainvs) {
            *slot = v
                .as_i64()
                .ok_or_else(|| LmfdbError::Schema { schema: CURVE_SCHEMA, message: format!("ainv {v} is not a small integer") })?;
        }
        Ok(WeierstrassCurve::new(a)?.with_label(label))
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), LmfdbError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.write_all(b"\n")?;
    tmp.persist(path).map_err(|e| LmfdbError::Io(e.error))?;
    Ok(())
}
