//! OEIS b-file fetching, caching, parsing and diffing.
//!
//! A b-file is plain text with one `index value` pair per line. Lines starting
//! with `#` and blank lines are ignored and indices must be consecutive.
//! Fetched files are cached verbatim as `{cache_dir}/bNNNNNN.txt`.

use std::env;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime};

use num_bigint::BigInt;
use thiserror::Error;

use crate::catalog::SequenceId;

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";
pub const BASE_URL_VAR: &str = "OEIS_BASE_URL";
pub const CACHE_DIR_VAR: &str = "SEQLAT_CACHE_DIR";

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("could not fetch {id}: {reason}")]
    FetchFailed { id: SequenceId, reason: String },
    #[error("malformed b-file at line {line}: {reason}")]
    ParseFailed { line: usize, reason: String },
    #[error("offset {offset} is not covered by the b-file of {id}")]
    OffsetNotInBFile { id: SequenceId, offset: i64 },
    #[error("cache write failed: {0}")]
    Cache(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Network,
    Cache,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileRecord {
    pub id: SequenceId,
    pub entries: Vec<(i64, BigInt)>,
    pub source: Source,
    pub fetched_at: SystemTime,
}

impl BFileRecord {
    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|e| e.0)
    }
}

/// Result of aligning computed terms with a b-file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub id: SequenceId,
    pub compared: usize,
    /// `(index, expected from the b-file, computed)`
    pub first_mismatch: Option<(i64, BigInt, BigInt)>,
    pub offset_used: i64,
}

impl DiffReport {
    pub fn is_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Parses the text of a b-file.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, BigInt)>, OeisError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |reason: String| OeisError::ParseFailed {
            line: lineno + 1,
            reason,
        };
        let mut tokens = line.split_whitespace();
        let (Some(index), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(fail(format!("expected `index value`, got {line:?}")));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| fail(format!("bad index {index:?}")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| fail(format!("bad value {value:?}")))?;
        if let Some(&(prev, _)) = entries.last() {
            if index != prev + 1 {
                return Err(fail(format!("index {index} does not follow {prev}")));
            }
        }
        entries.push((index, value));
    }
    Ok(entries)
}

/// Aligns `computed[0]` with b-file index `lead_offset` and compares the overlap.
pub fn compare(
    id: SequenceId,
    computed: &[BigInt],
    bfile: &BFileRecord,
    lead_offset: i64,
) -> Result<DiffReport, OeisError> {
    let start = match bfile.first_index() {
        Some(first) if lead_offset >= first => (lead_offset - first) as usize,
        _ => return Err(OeisError::OffsetNotInBFile { id, offset: lead_offset }),
    };
    if start >= bfile.entries.len() {
        return Err(OeisError::OffsetNotInBFile { id, offset: lead_offset });
    }
    let available = &bfile.entries[start..];
    let compared = computed.len().min(available.len());
    let first_mismatch = available
        .iter()
        .zip(computed)
        .find(|((_, expected), actual)| expected != *actual)
        .map(|((index, expected), actual)| (*index, expected.clone(), actual.clone()));
    Ok(DiffReport {
        id,
        compared,
        first_mismatch,
        offset_used: lead_offset,
    })
}

/// Fetches b-files over HTTP with a raw-text cache fallback.
#[derive(Debug, Clone)]
pub struct OeisClient {
    base_url: String,
    cache_dir: PathBuf,
    timeout: Duration,
    offline: bool,
}

impl OeisClient {
    pub fn new(base_url: impl Into<String>, cache_dir: impl Into<PathBuf>) -> Self {
        OeisClient {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            cache_dir: cache_dir.into(),
            timeout: Duration::from_secs(20),
            offline: false,
        }
    }

    /// Reads `OEIS_BASE_URL` and `SEQLAT_CACHE_DIR`, falling back to oeis.org
    /// and the platform cache directory.
    pub fn from_env() -> Self {
        let base = env::var(BASE_URL_VAR).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
        let cache = env::var_os(CACHE_DIR_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(default_cache_dir);
        Self::new(base, cache)
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    /// Never touch the network; serve from the cache only.
    pub fn offline(mut self, offline: bool) -> Self {
        self.offline = offline;
        self
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    pub fn bfile_url(&self, id: SequenceId) -> String {
        format!("{}/{}/{}", self.base_url, id, id.bfile_name())
    }

    pub fn cache_path(&self, id: SequenceId) -> PathBuf {
        self.cache_dir.join(id.bfile_name())
    }

    /// Cached record, if the cache holds this id.
    pub fn cached(&self, id: SequenceId) -> Option<Result<BFileRecord, OeisError>> {
        let text = fs::read_to_string(self.cache_path(id)).ok()?;
        Some(parse_bfile(&text).map(|entries| BFileRecord {
            id,
            entries,
            source: Source::Cache,
            fetched_at: SystemTime::now(),
        }))
    }

    /// Downloads the b-file and refreshes the cache; on any network failure a
    /// cached copy is served instead.
    pub fn fetch_bfile(&self, id: SequenceId) -> Result<BFileRecord, OeisError> {
        let network_error = if self.offline {
            "offline mode".to_string()
        } else {
            match self.download(id) {
                Ok(text) => {
                    let entries = parse_bfile(&text)?;
                    self.store(id, &text)?;
                    return Ok(BFileRecord {
                        id,
                        entries,
                        source: Source::Network,
                        fetched_at: SystemTime::now(),
                    });
                }
                Err(reason) => reason,
            }
        };
        match self.cached(id) {
            Some(record) => record,
            None => Err(OeisError::FetchFailed {
                id,
                reason: format!("{network_error}; no cached copy in {}", self.cache_dir.display()),
            }),
        }
    }

    /// GET with one retry on transport errors and server errors.
    fn download(&self, id: SequenceId) -> Result<String, String> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        let url = self.bfile_url(id);
        let mut last = String::new();
        for _ in 0..2 {
            match agent.get(&url).call() {
                Ok(mut response) => {
                    let status = response.status().as_u16();
                    if status == 200 {
                        return response
                            .body_mut()
                            .read_to_string()
                            .map_err(|e| format!("reading {url}: {e}"));
                    }
                    last = format!("GET {url} returned HTTP {status}");
                    if status < 500 {
                        break;
                    }
                }
                Err(e) => last = format!("GET {url}: {e}"),
            }
        }
        Err(last)
    }

    /// Write-temp-then-rename so readers never see a partial file.
    fn store(&self, id: SequenceId, text: &str) -> Result<(), OeisError> {
        fs::create_dir_all(&self.cache_dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.cache_dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(self.cache_path(id)).map_err(|e| e.error)?;
        Ok(())
    }
}

pub fn default_cache_dir() -> PathBuf {
    dirs::cache_dir()
        .unwrap_or_else(env::temp_dir)
        .join("seqlat")
}

/// Renders `(index, value)` pairs in b-file format.
pub fn format_bfile(start: i64, values: &[BigInt]) -> String {
    values
        .iter()
        .zip(start..)
        .map(|(v, i)| format!("{i} {v}\n"))
        .collect()
}
