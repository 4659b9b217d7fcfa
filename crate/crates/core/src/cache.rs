//! Offline/interactive line queries.
//!
//! Lines are grouped by their signature with respect to `C̄`. One
//! representative diagram is stored per class; any other line of the class is
//! answered by transfer. Classes are discovered lazily from seed lines and
//! from queries.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagram::{Death, FiberDiagram};
use crate::error::{Error, Result};
use crate::fiber::{fiber_diagram, signature, transfer_equivalent, LineSignature};
use crate::grade::{parse_rational, Grade};
use crate::line::Line;
use crate::rank::MorseRank;

/// Stable 64-bit digest of a line signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub u64);

impl ClassId {
    pub fn of(sig: &LineSignature) -> Self {
        let digest = Sha256::digest(sig.canonical_encoding().as_bytes());
        let mut bytes = [0u8; 8];
        bytes.copy_from_slice(&digest[..8]);
        ClassId(u64::from_be_bytes(bytes))
    }

    pub fn parse(s: &str) -> Option<Self> {
        u64::from_str_radix(s, 16).ok().map(ClassId)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

#[derive(Debug)]
pub struct ClassCacheEntry {
    pub class_id: ClassId,
    pub signature: LineSignature,
    pub representative: Line,
    /// Diagram of the representative in every degree of the complex.
    pub diagram: FiberDiagram,
    hits: AtomicU64,
}

impl ClassCacheEntry {
    pub fn hit_count(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
}

impl CacheStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
        }
    }
}

#[derive(Clone, Debug)]
pub struct QueryResult {
    pub diagram: FiberDiagram,
    pub status: CacheStatus,
    pub class_id: ClassId,
    pub micros: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrecomputeStats {
    pub classes_discovered: usize,
    pub duplicates: usize,
    /// `(seed position, message)` for seeds that could not be used.
    pub errors: Vec<(usize, String)>,
}

pub struct QueryCache {
    engine: Arc<MorseRank>,
    all_degrees: BTreeSet<usize>,
    classes: RwLock<HashMap<ClassId, Vec<Arc<ClassCacheEntry>>>>,
}

impl QueryCache {
    pub fn new(engine: Arc<MorseRank>) -> Self {
        let top = engine.filtration().max_dim().unwrap_or(0);
        QueryCache { engine, all_degrees: (0..=top).collect(), classes: RwLock::new(HashMap::new()) }
    }

    pub fn engine(&self) -> &MorseRank {
        &self.engine
    }

    /// Homology degrees stored per entry: 0 up to the top dimension of the complex.
    pub fn all_degrees(&self) -> &BTreeSet<usize> {
        &self.all_degrees
    }

    fn check_line(&self, line: &Line) -> Result<()> {
        let n = self.engine.filtration().n();
        if line.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: line.n() });
        }
        Ok(())
    }

    fn lookup(&self, sig: &LineSignature) -> (ClassId, Option<Arc<ClassCacheEntry>>) {
        let id = ClassId::of(sig);
        let entry = self
            .classes
            .read()
            .get(&id)
            .and_then(|bucket| bucket.iter().find(|e| &e.signature == sig).cloned());
        (id, entry)
    }

    /// Inserts unless an entry with the same signature exists; returns the stored entry.
    fn insert(&self, entry: ClassCacheEntry) -> (Arc<ClassCacheEntry>, bool) {
        let mut classes = self.classes.write();
        let bucket = classes.entry(entry.class_id).or_default();
        if let Some(existing) = bucket.iter().find(|e| e.signature == entry.signature) {
            return (existing.clone(), false);
        }
        let entry = Arc::new(entry);
        bucket.push(entry.clone());
        (entry, true)
    }

    fn new_entry(&self, line: &Line, sig: LineSignature) -> Result<ClassCacheEntry> {
        let diagram = fiber_diagram(&self.engine, line, &self.all_degrees)?;
        Ok(ClassCacheEntry {
            class_id: ClassId::of(&sig),
            signature: sig,
            representative: line.clone(),
            diagram,
            hits: AtomicU64::new(0),
        })
    }

    /// Seeds the cache with one representative per newly seen class.
    pub fn precompute<I: IntoIterator<Item = Line>>(&self, seeds: I) -> PrecomputeStats {
        let mut stats = PrecomputeStats::default();
        for (pos, line) in seeds.into_iter().enumerate() {
            let outcome = self.check_line(&line).and_then(|_| {
                let sig = signature(self.engine.closure(), &line)?;
                if self.lookup(&sig).1.is_some() {
                    return Ok(false);
                }
                Ok(self.insert(self.new_entry(&line, sig)?).1)
            });
            match outcome {
                Ok(true) => stats.classes_discovered += 1,
                Ok(false) => stats.duplicates += 1,
                Err(e) => stats.errors.push((pos, e.to_string())),
            }
        }
        stats
    }

    /// Like [`QueryCache::precompute`] for line literals; unparsable seeds are reported.
    pub fn precompute_literals<S: AsRef<str>>(&self, seeds: &[S]) -> PrecomputeStats {
        let mut parse_errors = Vec::new();
        let mut lines = Vec::new();
        let mut positions = Vec::new();
        for (pos, s) in seeds.iter().enumerate() {
            match Line::parse_literal(s.as_ref()) {
                Ok(l) => {
                    lines.push(l);
                    positions.push(pos);
                }
                Err(e) => parse_errors.push((pos, e.to_string())),
            }
        }
        let mut stats = self.precompute(lines);
        for e in &mut stats.errors {
            e.0 = positions[e.0];
        }
        stats.errors.extend(parse_errors);
        stats.errors.sort();
        stats
    }

    /// Answers a line query: transfer on a hit, direct computation on a miss.
    pub fn query(&self, line: &Line, degrees: &BTreeSet<usize>) -> Result<QueryResult> {
        let start = Instant::now();
        self.check_line(line)?;
        let sig = signature(self.engine.closure(), line)?;
        let (class_id, found) = self.lookup(&sig);
        let (full, status) = match found {
            Some(entry) => {
                entry.hits.fetch_add(1, Ordering::Relaxed);
                (transfer_equivalent(&entry.diagram, line, self.engine.closure())?, CacheStatus::Hit)
            }
            None => {
                let entry = self.new_entry(line, sig)?;
                let diagram = entry.diagram.clone();
                self.insert(entry);
                (diagram, CacheStatus::Miss)
            }
        };
        Ok(QueryResult {
            diagram: restrict(&full, degrees),
            status,
            class_id,
            micros: start.elapsed().as_micros(),
        })
    }

    /// The diagram computed directly, without consulting or filling the cache.
    pub fn compute_direct(&self, line: &Line, degrees: &BTreeSet<usize>) -> Result<FiberDiagram> {
        self.check_line(line)?;
        fiber_diagram(&self.engine, line, degrees)
    }

    pub fn classify(&self, line: &Line) -> Result<(ClassId, LineSignature)> {
        self.check_line(line)?;
        let sig = signature(self.engine.closure(), line)?;
        Ok((ClassId::of(&sig), sig))
    }

    /// All entries, ordered by class id.
    pub fn entries(&self) -> Vec<Arc<ClassCacheEntry>> {
        let mut out: Vec<_> = self.classes.read().values().flatten().cloned().collect();
        out.sort_by(|a, b| a.class_id.cmp(&b.class_id).then_with(|| a.signature.canonical_encoding().cmp(&b.signature.canonical_encoding())));
        out
    }

    pub fn class_count(&self) -> usize {
        self.classes.read().values().map(Vec::len).sum()
    }

    pub fn snapshot(&self) -> Vec<SnapshotEntry> {
        self.entries().iter().map(|e| SnapshotEntry::from_entry(e)).collect()
    }

    pub fn snapshot_json(&self) -> String {
        serde_json::to_string_pretty(&self.snapshot()).expect("snapshot serializes")
    }

    /// Loads entries from a snapshot. Each representative's signature is
    /// recomputed and must hash to the stored class id.
    pub fn load_snapshot(&self, entries: &[SnapshotEntry]) -> Result<usize> {
        let mut loaded = 0;
        for s in entries {
            let line = Line::new(Grade::from_strings(&s.representative.base)?, Grade::from_strings(&s.representative.dir)?)?;
            self.check_line(&line)?;
            let sig = signature(self.engine.closure(), &line)?;
            let id = ClassId::of(&sig);
            if id.to_string() != s.class_id {
                return Err(Error::InvalidField(format!(
                    "snapshot class {} does not match its representative ({id})",
                    s.class_id
                )));
            }
            let bars = s
                .points
                .iter()
                .map(|p| {
                    let death = if p.death == "inf" { Death::Infinite } else { Death::Finite(parse_rational(&p.death)?) };
                    Ok((p.dim, parse_rational(&p.birth)?, death, p.multiplicity))
                })
                .collect::<Result<Vec<_>>>()?;
            let entry = ClassCacheEntry {
                class_id: id,
                signature: sig,
                representative: line.clone(),
                diagram: FiberDiagram::from_bars(line, bars),
                hits: AtomicU64::new(s.hit_count),
            };
            if self.insert(entry).1 {
                loaded += 1;
            }
        }
        Ok(loaded)
    }

    pub fn load_snapshot_json(&self, text: &str) -> Result<usize> {
        let entries: Vec<SnapshotEntry> = serde_json::from_str(text)
            .map_err(|e| Error::Syntax { line: e.line(), msg: e.to_string() })?;
        self.load_snapshot(&entries)
    }
}

fn restrict(dgm: &FiberDiagram, degrees: &BTreeSet<usize>) -> FiberDiagram {
    FiberDiagram::from_bars(
        dgm.line().clone(),
        dgm.points()
            .iter()
            .filter(|p| degrees.contains(&p.dim))
            .map(|p| (p.dim, p.birth.clone(), p.death.clone(), p.multiplicity)),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SnapshotLine {
    pub base: Vec<String>,
    pub dir: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SnapshotPoint {
    pub dim: usize,
    pub birth: String,
    /// A rational or `"inf"`.
    pub death: String,
    pub multiplicity: usize,
}

/// One cache entry as stored in a snapshot file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SnapshotEntry {
    pub class_id: String,
    pub representative: SnapshotLine,
    pub points: Vec<SnapshotPoint>,
    pub hit_count: u64,
}

impl SnapshotEntry {
    fn from_entry(e: &ClassCacheEntry) -> Self {
        SnapshotEntry {
            class_id: e.class_id.to_string(),
            representative: SnapshotLine {
                base: e.representative.base().to_strings(),
                dir: e.representative.dir().to_strings(),
            },
            points: e
                .diagram
                .points()
                .iter()
                .map(|p| SnapshotPoint {
                    dim: p.dim,
                    birth: p.birth.to_string(),
                    death: p.death.to_string(),
                    multiplicity: p.multiplicity,
                })
                .collect(),
            hit_count: e.hit_count(),
        }
    }
}
