//! One-critical multi-parameter filtrations and the `.ocf` text format.
//!
//! ```text
//! ocf 2
//! # vertices
//! 0 ; 0 0
//! 1 ; 1 0
//! 0 1 ; 1 1
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grade::{parse_rational, Grade};
use crate::simplex::Simplex;

/// A finite set of simplices. Sublevel complexes are returned in this form.
pub type Complex = BTreeSet<Simplex>;

/// A finite simplicial complex with a monotone grade function into ℝⁿ.
///
/// Simplices are stored in canonical order (dimension, then vertex list) and
/// addressed by their index in that order.
#[derive(Clone, Debug)]
pub struct OneCriticalFiltration {
    n: usize,
    simplices: Vec<Simplex>,
    grades: Vec<Grade>,
    index: HashMap<Simplex, usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

impl PartialEq for OneCriticalFiltration {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.simplices == other.simplices && self.grades == other.grades
    }
}

impl Eq for OneCriticalFiltration {}

impl OneCriticalFiltration {
    /// Validates face closure, monotonicity and uniqueness.
    pub fn new(n: usize, entries: Vec<(Simplex, Grade)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Syntax { line: 0, msg: "parameter count must be at least 1".into() });
        }
        let mut entries = entries;
        for (_, g) in &entries {
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.n() });
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateSimplex(w[0].0.clone()));
            }
        }
        let (simplices, grades): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let index: HashMap<Simplex, usize> =
            simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        let mut facets = vec![Vec::new(); simplices.len()];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            for f in s.facets() {
                let Some(&j) = index.get(&f) else {
                    return Err(Error::FaceClosure { simplex: s.clone(), facet: f });
                };
                if !grades[j].leq_unchecked(&grades[i]) {
                    return Err(Error::Monotonicity {
                        simplex: s.clone(),
                        grade: grades[i].clone(),
                        facet: f,
                        facet_grade: grades[j].clone(),
                    });
                }
                facets[i].push(j);
                cofacets[j].push(i);
            }
            facets[i].sort_unstable();
        }
        Ok(OneCriticalFiltration { n, simplices, grades, index, facets, cofacets })
    }

    /// Parses `.ocf` text. Syntax errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| Error::Syntax { line: line_no, msg };
            let Some(n) = n else {
                let mut words = line.split_whitespace();
                if words.next() != Some("ocf") {
                    return Err(syntax("expected header `ocf <n>`".into()));
                }
                let count = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|&c| c >= 1)
                    .ok_or_else(|| syntax("header needs a positive parameter count".into()))?;
                if words.next().is_some() {
                    return Err(syntax("trailing tokens after header".into()));
                }
                n = Some(count);
                continue;
            };
            let (verts, grade) = line
                .split_once(';')
                .ok_or_else(|| syntax("expected `vertices ; grade`".into()))?;
            let verts = verts
                .split_whitespace()
                .map(|v| v.parse::<u32>().map_err(|_| syntax(format!("bad vertex id `{v}`"))))
                .collect::<Result<Vec<_>>>()?;
            let simplex = Simplex::new(verts).map_err(|e| syntax(e.to_string()))?;
            let coords = grade
                .split_whitespace()
                .map(|c| parse_rational(c).map_err(|e| syntax(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != n {
                return Err(syntax(format!("expected {n} grade coordinates, found {}", coords.len())));
            }
            entries.push((simplex, Grade::new(coords)));
        }
        let n = n.ok_or(Error::Syntax { line: 1, msg: "missing header `ocf <n>`".into() })?;
        Self::new(n, entries)
    }

    /// Canonical `.ocf` text: simplices sorted by (dimension, vertex list).
    pub fn to_ocf(&self) -> String {
        let mut out = format!("ocf {}\n", self.n);
        for (s, g) in self.simplices.iter().zip(&self.grades) {
            let verts: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{} ; {}", verts.join(" "), g.to_strings().join(" "));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn simplex(&self, idx: usize) -> &Simplex {
        &self.simplices[idx]
    }

    pub fn grade_of(&self, idx: usize) -> &Grade {
        &self.grades[idx]
    }

    pub fn grade(&self, s: &Simplex) -> Option<&Grade> {
        self.index.get(s).map(|&i| &self.grades[i])
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Indices of the codimension-one faces.
    pub fn facet_indices(&self, idx: usize) -> &[usize] {
        &self.facets[idx]
    }

    /// Indices of the codimension-one cofaces.
    pub fn cofacet_indices(&self, idx: usize) -> &[usize] {
        &self.cofacets[idx]
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    fn check_grade(&self, u: &Grade) -> Result<()> {
        if u.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: u.n() });
        }
        Ok(())
    }

    /// Indices of `{σ : grade(σ) ⪯ u}`, in canonical order.
    pub fn sublevel_indices(&self, u: &Grade) -> Result<Vec<usize>> {
        self.check_grade(u)?;
        Ok((0..self.len()).filter(|&i| self.grades[i].leq_unchecked(u)).collect())
    }

    /// The sublevel complex `K^u`.
    pub fn sublevel_complex(&self, u: &Grade) -> Result<Complex> {
        Ok(self
            .sublevel_indices(u)?
            .into_iter()
            .map(|i| self.simplices[i].clone())
            .collect())
    }

    pub fn full_complex(&self) -> Complex {
        self.simplices.iter().cloned().collect()
    }

    /// Least upper bound of all grades; `K` equals the sublevel complex there.
    pub fn top_grade(&self) -> Option<Grade> {
        let mut it = self.grades.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, g| acc.lub_unchecked(g)))
    }
}
