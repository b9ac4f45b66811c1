//! Abstract fetching with a resumable local cache.
//!
//! The cache is the source of truth: every record fetched over the network is
//! written to disk before the batch returns, so an interrupted multi-hour
//! ingestion resumes where it stopped. Ids are resolved cache-first; a second
//! call with the same ids performs no network traffic.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One fetched record. An empty abstract means the source had none; such ids
/// are reported in the miss list rather than becoming empty documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FetchRecord {
    pub pmid: String,
    pub title: String,
    pub abstract_text: String,
}

impl FetchRecord {
    /// A record is usable when it carries an abstract.
    pub fn has_abstract(&self) -> bool {
        !self.abstract_text.trim().is_empty()
    }
}

/// Something that resolves a batch of ids to records. Ids with no record at
/// the source are simply absent from the result.
pub trait Fetcher {
    fn fetch_batch(&self, pmids: &[String]) -> std::result::Result<Vec<FetchRecord>, String>;
}

/// Batching, pacing, and retry settings for [`fetch_documents`].
#[derive(Debug, Clone)]
pub struct FetcherConfig {
    /// Ids per network call.
    pub batch_size: usize,
    /// Maximum network calls per second.
    pub rate_limit_per_sec: f64,
    /// Retries per batch after the first attempt.
    pub max_retries: u32,
    /// Base backoff; doubles per retry.
    pub backoff: Duration,
}

impl Default for FetcherConfig {
    fn default() -> Self {
        Self {
            batch_size: 200,
            rate_limit_per_sec: 3.0,
            max_retries: 3,
            backoff: Duration::from_millis(500),
        }
    }
}

impl FetcherConfig {
    /// Lower bound on wall time for fetching `n_ids` uncached ids: one paced
    /// slot per batch.
    pub fn min_elapsed(&self, n_ids: usize) -> Duration {
        if n_ids == 0 {
            return Duration::ZERO;
        }
        let batches = n_ids.div_ceil(self.batch_size);
        Duration::from_secs_f64(batches as f64 / self.rate_limit_per_sec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CacheStatus {
    Found,
    Missing,
}

/// Append-safe on-disk cache of fetch results keyed by PMID.
///
/// Layout: `index.tsv` with `pmid<TAB>found|missing` lines, one JSON record
/// per found id under `records/`. Records are written with a temp-file rename
/// so a crash never leaves a half-written entry behind the index.
pub struct DocCache {
    dir: PathBuf,
    index: HashMap<String, CacheStatus>,
}

impl DocCache {
    /// Open (or create) a cache directory and load its index.
    pub fn open(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir.join("records"))?;
        let index_path = dir.join("index.tsv");
        let mut index = HashMap::new();
        if index_path.exists() {
            let text = std::fs::read_to_string(&index_path)?;
            for line in text.lines() {
                if line.is_empty() {
                    continue;
                }
                let (pmid, status) = line.split_once('\t').ok_or_else(|| Error::CacheCorrupt {
                    path: index_path.display().to_string(),
                    reason: format!("bad index line `{line}`"),
                })?;
                let status = match status {
                    "found" => CacheStatus::Found,
                    "missing" => CacheStatus::Missing,
                    other => {
                        return Err(Error::CacheCorrupt {
                            path: index_path.display().to_string(),
                            reason: format!("unknown status `{other}`"),
                        })
                    }
                };
                index.insert(pmid.to_string(), status);
            }
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            index,
        })
    }

    fn record_path(&self, pmid: &str) -> PathBuf {
        self.dir.join("records").join(format!("{pmid}.json"))
    }

    /// Look up one id. `Ok(Some(None))` means cached-as-missing.
    #[allow(clippy::option_option)]
    pub fn get(&self, pmid: &str) -> Result<Option<Option<FetchRecord>>> {
        match self.index.get(pmid) {
            None => Ok(None),
            Some(CacheStatus::Missing) => Ok(Some(None)),
            Some(CacheStatus::Found) => {
                let path = self.record_path(pmid);
                let bytes = std::fs::read(&path).map_err(|e| Error::CacheCorrupt {
                    path: path.display().to_string(),
                    reason: format!("indexed record unreadable: {e}"),
                })?;
                let record: FetchRecord =
                    serde_json::from_slice(&bytes).map_err(|e| Error::CacheCorrupt {
                        path: path.display().to_string(),
                        reason: format!("bad JSON: {e}"),
                    })?;
                Ok(Some(Some(record)))
            }
        }
    }

    /// Store a fetched record (or a missing marker when it has no abstract).
    pub fn put(&mut self, record: &FetchRecord) -> Result<()> {
        if record.has_abstract() {
            let path = self.record_path(&record.pmid);
            let tmp = path.with_extension("json.tmp");
            std::fs::write(&tmp, serde_json::to_vec_pretty(record)?)?;
            std::fs::rename(&tmp, &path)?;
            self.append_index(&record.pmid, CacheStatus::Found)?;
        } else {
            self.put_missing(&record.pmid)?;
        }
        Ok(())
    }

    /// Mark an id as known-missing so it is never re-fetched.
    pub fn put_missing(&mut self, pmid: &str) -> Result<()> {
        self.append_index(pmid, CacheStatus::Missing)
    }

    fn append_index(&mut self, pmid: &str, status: CacheStatus) -> Result<()> {
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.dir.join("index.tsv"))?;
        let tag = match status {
            CacheStatus::Found => "found",
            CacheStatus::Missing => "missing",
        };
        writeln!(f, "{pmid}\t{tag}")?;
        self.index.insert(pmid.to_string(), status);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

/// Result of resolving a batch of ids.
#[derive(Debug, Clone, Default)]
pub struct FetchOutcome {
    /// Records with abstracts, in request order.
    pub records: Vec<FetchRecord>,
    /// Ids resolved but lacking an abstract (or unknown at the source).
    pub missing: Vec<String>,
    /// Network calls performed.
    pub network_calls: usize,
}

/// Resolve `pmids` cache-first, fetching the rest in paced batches.
///
/// Every record fetched is cached before the function returns, including
/// missing markers, so the call is idempotent. A batch that still fails
/// after the configured retries aborts with [`Error::FetchPartial`]; the
/// records fetched so far remain in the cache.
pub fn fetch_documents(
    pmids: &[String],
    cache: &mut DocCache,
    fetcher: &dyn Fetcher,
    config: &FetcherConfig,
) -> Result<FetchOutcome> {
    let mut outcome = FetchOutcome::default();
    let mut uncached: Vec<String> = Vec::new();
    for pmid in pmids {
        match cache.get(pmid)? {
            Some(Some(record)) => outcome.records.push(record),
            Some(None) => outcome.missing.push(pmid.clone()),
            None => uncached.push(pmid.clone()),
        }
    }

    let requested = pmids.len();
    let slot = Duration::from_secs_f64(1.0 / config.rate_limit_per_sec.max(1e-9));
    for batch in uncached.chunks(config.batch_size.max(1)) {
        let started = Instant::now();
        let fetched = fetch_batch_with_retry(batch, fetcher, config).map_err(|reason| {
            Error::FetchPartial {
                reason,
                fetched: outcome.records.len() + outcome.missing.len(),
                requested,
            }
        })?;
        outcome.network_calls += 1;

        let mut by_id: HashMap<&str, &FetchRecord> =
            fetched.iter().map(|r| (r.pmid.as_str(), r)).collect();
        for pmid in batch {
            match by_id.remove(pmid.as_str()) {
                Some(record) if record.has_abstract() => {
                    cache.put(record)?;
                    outcome.records.push(record.clone());
                }
                _ => {
                    cache.put_missing(pmid)?;
                    outcome.missing.push(pmid.clone());
                }
            }
        }

        // Pace every call so n batches occupy at least n slots.
        let elapsed = started.elapsed();
        if elapsed < slot {
            std::thread::sleep(slot - elapsed);
        }
    }
    Ok(outcome)
}

fn fetch_batch_with_retry(
    batch: &[String],
    fetcher: &dyn Fetcher,
    config: &FetcherConfig,
) -> std::result::Result<Vec<FetchRecord>, String> {
    let mut last_err = String::new();
    for attempt in 0..=config.max_retries {
        if attempt > 0 {
            std::thread::sleep(config.backoff * 2u32.saturating_pow(attempt - 1));
        }
        match fetcher.fetch_batch(batch) {
            Ok(records) => return Ok(records),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

// ---------------------------------------------------------------------------
// PubMed E-utilities client
// ---------------------------------------------------------------------------

/// E-utilities `efetch` client returning title and abstract per PMID.
pub struct EutilsFetcher {
    endpoint: String,
    api_key: Option<String>,
    agent: ureq::Agent,
}

impl EutilsFetcher {
    pub const DEFAULT_ENDPOINT: &'static str =
        "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi";

    pub fn new(endpoint: impl Into<String>, api_key: Option<String>) -> Self {
        Self {
            endpoint: endpoint.into(),
            api_key,
            agent: ureq::AgentBuilder::new()
                .timeout(Duration::from_secs(60))
                .build(),
        }
    }
}

impl Fetcher for EutilsFetcher {
    fn fetch_batch(&self, pmids: &[String]) -> std::result::Result<Vec<FetchRecord>, String> {
        let ids = pmids.join(",");
        let mut form: Vec<(&str, &str)> = vec![
            ("db", "pubmed"),
            ("retmode", "xml"),
            ("rettype", "abstract"),
            ("id", &ids),
        ];
        if let Some(key) = &self.api_key {
            form.push(("api_key", key));
        }
        let response = self
            .agent
            .post(&self.endpoint)
            .send_form(&form)
            .map_err(|e| format!("efetch request failed: {e}"))?;
        let body = response
            .into_string()
            .map_err(|e| format!("efetch response read failed: {e}"))?;
        parse_efetch_xml(&body).map_err(|e| format!("efetch response parse failed: {e}"))
    }
}

/// Extract (PMID, ArticleTitle, concatenated AbstractText) per PubmedArticle.
pub fn parse_efetch_xml(xml: &str) -> std::result::Result<Vec<FetchRecord>, String> {
    use quick_xml::events::Event;
    use quick_xml::Reader;

    let mut reader = Reader::from_str(xml);
    reader.trim_text(false);

    let mut records = Vec::new();
    let mut pmid = String::new();
    let mut title = String::new();
    let mut abstract_text = String::new();
    // Depth-tagged state: the first <PMID> under MedlineCitation is the id;
    // later <PMID> elements (e.g. in CommentsCorrections) must not clobber it.
    let mut in_pmid = false;
    let mut in_title = false;
    let mut in_abstract = false;
    let mut buf = Vec::new();

    loop {
        match reader.read_event_into(&mut buf) {
            Ok(Event::Start(e)) => match e.name().as_ref() {
                b"PubmedArticle" => {
                    pmid.clear();
                    title.clear();
                    abstract_text.clear();
                }
                b"PMID" if pmid.is_empty() => in_pmid = true,
                b"ArticleTitle" => in_title = true,
                b"AbstractText" => {
                    if !abstract_text.is_empty() {
                        abstract_text.push(' ');
                    }
                    in_abstract = true;
                }
                _ => {}
            },
            Ok(Event::End(e)) => match e.name().as_ref() {
                b"PMID" => in_pmid = false,
                b"ArticleTitle" => in_title = false,
                b"AbstractText" => in_abstract = false,
                b"PubmedArticle" => {
                    if !pmid.is_empty() {
                        records.push(FetchRecord {
                            pmid: pmid.trim().to_string(),
                            title: title.trim().to_string(),
                            abstract_text: abstract_text.trim().to_string(),
                        });
                    }
                }
                _ => {}
            },
            Ok(Event::Text(t)) => {
                let text = t.unescape().map_err(|e| e.to_string())?;
                if in_pmid {
                    pmid.push_str(&text);
                } else if in_title {
                    title.push_str(&text);
                } else if in_abstract {
                    abstract_text.push_str(&text);
                }
            }
            Ok(Event::Eof) => break,
            Ok(_) => {}
            Err(e) => return Err(format!("XML error at byte {}: {e}", reader.buffer_position())),
        }
        buf.clear();
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::RefCell;

    /// In-memory fetcher that counts calls and can be forced to fail.
    struct MockFetcher {
        store: HashMap<String, FetchRecord>,
        calls: RefCell<usize>,
        fail_times: RefCell<u32>,
    }

    impl MockFetcher {
        fn new(records: Vec<FetchRecord>) -> Self {
            Self {
                store: records.into_iter().map(|r| (r.pmid.clone(), r)).collect(),
                calls: RefCell::new(0),
                fail_times: RefCell::new(0),
            }
        }

        fn failing(mut self, times: u32) -> Self {
            self.fail_times = RefCell::new(times);
            self
        }

        fn calls(&self) -> usize {
            *self.calls.borrow()
        }
    }

    impl Fetcher for MockFetcher {
        fn fetch_batch(&self, pmids: &[String]) -> std::result::Result<Vec<FetchRecord>, String> {
            *self.calls.borrow_mut() += 1;
            let mut remaining = self.fail_times.borrow_mut();
            if *remaining > 0 {
                *remaining -= 1;
                return Err("simulated network failure".to_string());
            }
            Ok(pmids
                .iter()
                .filter_map(|id| self.store.get(id).cloned())
                .collect())
        }
    }

    fn record(pmid: &str, abstract_text: &str) -> FetchRecord {
        FetchRecord {
            pmid: pmid.to_string(),
            title: format!("Title {pmid}"),
            abstract_text: abstract_text.to_string(),
        }
    }

    fn fast_config() -> FetcherConfig {
        FetcherConfig {
            batch_size: 2,
            rate_limit_per_sec: 1000.0,
            max_retries: 2,
            backoff: Duration::from_millis(1),
        }
    }

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cache_hit_path_makes_zero_network_calls() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = DocCache::open(dir.path()).unwrap();
        let fetcher = MockFetcher::new(vec![record("1", "aa"), record("2", "bb")]);
        let pmids = ids(&["1", "2"]);

        let first = fetch_documents(&pmids, &mut cache, &fetcher, &fast_config()).unwrap();
        assert_eq!(first.records.len(), 2);
        assert_eq!(first.network_calls, 1);

        let second = fetch_documents(&pmids, &mut cache, &fetcher, &fast_config()).unwrap();
        assert_eq!(second.network_calls, 0);
        assert_eq!(fetcher.calls(), 1);
        assert_eq!(first.records, second.records);
    }

    #[test]
    fn idempotence_survives_reopening_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let pmids = ids(&["1"]);
        let fetcher = MockFetcher::new(vec![record("1", "aa")]);
        {
            let mut cache = DocCache::open(dir.path()).unwrap();
            fetch_documents(&pmids, &mut cache, &fetcher, &fast_config()).unwrap();
        }
        let mut cache = DocCache::open(dir.path()).unwrap();
        let outcome = fetch_documents(&pmids, &mut cache, &fetcher, &fast_config()).unwrap();
        assert_eq!(outcome.network_calls, 0);
        assert_eq!(outcome.records[0], record("1", "aa"));
    }

    #[test]
    fn unknown_id_lands_in_miss_list() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = DocCache::open(dir.path()).unwrap();
        let fetcher = MockFetcher::new(vec![record("1", "aa")]);
        let outcome =
            fetch_documents(&ids(&["1", "404"]), &mut cache, &fetcher, &fast_config()).unwrap();
        assert_eq!(outcome.records.len(), 1);
        assert_eq!(outcome.missing, vec!["404".to_string()]);
        // The miss is cached too.
        let again =
            fetch_documents(&ids(&["404"]), &mut cache, &fetcher, &fast_config()).unwrap();
        assert_eq!(again.network_calls, 0);
        assert_eq!(again.missing, vec!["404".to_string()]);
    }

    #[test]
    fn empty_abstract_counts_as_missing() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = DocCache::open(dir.path()).unwrap();
        let fetcher = MockFetcher::new(vec![record("9", "  ")]);
        let outcome = fetch_documents(&ids(&["9"]), &mut cache, &fetcher, &fast_config()).unwrap();
        assert!(outcome.records.is_empty());
        assert_eq!(outcome.missing, vec!["9".to_string()]);
    }

    #[test]
    fn retries_then_succeeds() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = DocCache::open(dir.path()).unwrap();
        let fetcher = MockFetcher::new(vec![record("1", "aa")]).failing(2);
        let outcome = fetch_documents(&ids(&["1"]), &mut cache, &fetcher, &fast_config()).unwrap();
        assert_eq!(outcome.records.len(), 1);
        assert_eq!(fetcher.calls(), 3);
    }

    #[test]
    fn persistent_failure_is_a_partial_error_and_cache_keeps_progress() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = DocCache::open(dir.path()).unwrap();
        // First batch (ids 1,2) succeeds; second batch fails on every retry.
        let fetcher = MockFetcher::new(vec![record("1", "aa"), record("2", "bb")]);
        // Force failures only after the first call.
        let pmids = ids(&["1", "2", "3", "4"]);
        struct SecondBatchFails<'a>(&'a MockFetcher);
        impl Fetcher for SecondBatchFails<'_> {
            fn fetch_batch(
                &self,
                pmids: &[String],
            ) -> std::result::Result<Vec<FetchRecord>, String> {
                if pmids.contains(&"3".to_string()) {
                    Err("simulated outage".to_string())
                } else {
                    self.0.fetch_batch(pmids)
                }
            }
        }
        let err = fetch_documents(
            &pmids,
            &mut cache,
            &SecondBatchFails(&fetcher),
            &fast_config(),
        )
        .unwrap_err();
        match err {
            Error::FetchPartial {
                fetched, requested, ..
            } => {
                assert_eq!(fetched, 2);
                assert_eq!(requested, 4);
            }
            other => panic!("unexpected error {other:?}"),
        }
        // Progress persisted: ids 1 and 2 now come from cache.
        assert!(cache.get("1").unwrap().is_some());
        assert!(cache.get("2").unwrap().is_some());
    }

    #[test]
    fn corrupt_record_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = DocCache::open(dir.path()).unwrap();
        cache.put(&record("1", "aa")).unwrap();
        std::fs::write(dir.path().join("records/1.json"), b"{not json").unwrap();
        let err = cache.get("1").unwrap_err();
        assert!(matches!(err, Error::CacheCorrupt { .. }));
    }

    #[test]
    fn pacing_holds_the_rate_limit() {
        // 5 ids, batch 2 -> 3 batches at 50/sec -> at least 60 ms.
        let config = FetcherConfig {
            batch_size: 2,
            rate_limit_per_sec: 50.0,
            max_retries: 0,
            backoff: Duration::ZERO,
        };
        assert_eq!(config.min_elapsed(5), Duration::from_secs_f64(3.0 / 50.0));

        let dir = tempfile::tempdir().unwrap();
        let mut cache = DocCache::open(dir.path()).unwrap();
        let fetcher = MockFetcher::new(
            (1..=5).map(|i| record(&i.to_string(), "x")).collect(),
        );
        let pmids: Vec<String> = (1..=5).map(|i| i.to_string()).collect();
        let started = Instant::now();
        let outcome = fetch_documents(&pmids, &mut cache, &fetcher, &config).unwrap();
        assert_eq!(outcome.network_calls, 3);
        assert!(started.elapsed() >= config.min_elapsed(5));
    }

    #[test]
    fn efetch_xml_extracts_title_and_joined_abstract() {
        let xml = r#"<?xml version="1.0"?>
<PubmedArticleSet>
  <PubmedArticle>
    <MedlineCitation>
      <PMID Version="1">12345</PMID>
      <Article>
        <ArticleTitle>Ultrasound for bile duct stones.</ArticleTitle>
        <Abstract>
          <AbstractText Label="BACKGROUND">First part.</AbstractText>
          <AbstractText Label="METHODS">Second part.</AbstractText>
        </Abstract>
      </Article>
      <CommentsCorrectionsList>
        <CommentsCorrections><PMID Version="1">999</PMID></CommentsCorrections>
      </CommentsCorrectionsList>
    </MedlineCitation>
  </PubmedArticle>
  <PubmedArticle>
    <MedlineCitation>
      <PMID>67890</PMID>
      <Article><ArticleTitle>No abstract here</ArticleTitle></Article>
    </MedlineCitation>
  </PubmedArticle>
</PubmedArticleSet>"#;
        let records = parse_efetch_xml(xml).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].pmid, "12345");
        assert_eq!(records[0].title, "Ultrasound for bile duct stones.");
        assert!(records[0].abstract_text.contains("First part."));
        assert!(records[0].abstract_text.contains("Second part."));
        assert_eq!(records[1].pmid, "67890");
        assert!(!records[1].has_abstract());
    }
}
