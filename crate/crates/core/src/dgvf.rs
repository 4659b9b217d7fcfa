//! Discrete gradient vector fields on a filtered complex.
//!
//! A field is a set of facet/cofacet pairs `(σ, τ)`. It is a matching when
//! every simplex occurs in at most one pair, gradient when no closed V-path
//! exists, and consistent with a one-critical filtration when paired
//! simplices share their grade.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::filtration::{Complex, OneCriticalFiltration};
use crate::grade::Grade;
use crate::simplex::Simplex;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradientVectorField {
    pairs: Vec<(Simplex, Simplex)>,
}

impl GradientVectorField {
    /// Pairs are kept in canonical order of their first element.
    pub fn new(mut pairs: Vec<(Simplex, Simplex)>) -> Self {
        pairs.sort();
        GradientVectorField { pairs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Parses `.dgvf` text: one `σ-vertices ; τ-vertices` pair per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| Error::Syntax { line: lineno + 1, msg };
            let (a, b) = line
                .split_once(';')
                .ok_or_else(|| syntax("expected `σ-vertices ; τ-vertices`".into()))?;
            let simplex = |part: &str| -> Result<Simplex> {
                let verts = part
                    .split_whitespace()
                    .map(|v| v.parse::<u32>().map_err(|_| syntax(format!("bad vertex id `{v}`"))))
                    .collect::<Result<Vec<_>>>()?;
                Simplex::new(verts).map_err(|e| syntax(e.to_string()))
            };
            pairs.push((simplex(a)?, simplex(b)?));
        }
        Ok(Self::new(pairs))
    }

    pub fn to_dgvf(&self) -> String {
        let mut out = String::new();
        let join = |s: &Simplex| {
            s.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        };
        for (s, t) in &self.pairs {
            let _ = writeln!(out, "{} ; {}", join(s), join(t));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `σ` is not a codimension-one face of `τ`.
    NotFacet { sigma: Simplex, tau: Simplex },
    /// The simplex occurs in more than one pair.
    MatchedTwice(Simplex),
}

/// Every matching violation found; empty means the pairs form a valid matching.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchingReport {
    pub violations: Vec<Violation>,
}

impl MatchingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pairs translated into filtration indices; `partner[i]` is the simplex paired with `i`.
struct IndexedField {
    pairs: Vec<(usize, usize)>,
    partner: Vec<Option<usize>>,
}

impl IndexedField {
    fn new(f: &OneCriticalFiltration, v: &GradientVectorField) -> Result<Self> {
        let idx = |s: &Simplex| f.index_of(s).ok_or_else(|| Error::UnknownSimplex(s.clone()));
        let mut pairs = Vec::with_capacity(v.len());
        let mut partner = vec![None; f.len()];
        for (s, t) in v.pairs() {
            let (i, j) = (idx(s)?, idx(t)?);
            pairs.push((i, j));
            partner[i].get_or_insert(j);
            partner[j].get_or_insert(i);
        }
        Ok(IndexedField { pairs, partner })
    }

    fn require_matching(f: &OneCriticalFiltration, v: &GradientVectorField) -> Result<Self> {
        let report = check_matching(f, v)?;
        if let Some(first) = report.violations.first() {
            return Err(Error::InvalidField(format!("{first:?}")));
        }
        Self::new(f, v)
    }
}

pub fn check_matching(f: &OneCriticalFiltration, v: &GradientVectorField) -> Result<MatchingReport> {
    IndexedField::new(f, v)?;
    let mut report = MatchingReport::default();
    let mut uses: BTreeMap<&Simplex, usize> = BTreeMap::new();
    for (s, t) in v.pairs() {
        if !s.is_facet_of(t) {
            report.violations.push(Violation::NotFacet { sigma: s.clone(), tau: t.clone() });
        }
        *uses.entry(s).or_default() += 1;
        *uses.entry(t).or_default() += 1;
    }
    report.violations.extend(
        uses.into_iter()
            .filter(|&(_, n)| n > 1)
            .map(|(s, _)| Violation::MatchedTwice(s.clone())),
    );
    Ok(report)
}

/// True iff no non-trivial closed V-path exists.
///
/// V-paths stay within one dimension, so each dimension's digraph
/// (σ → σ′ when `(σ, β) ∈ V`, σ′ a facet of β, σ′ ≠ σ) is checked for cycles.
pub fn check_acyclic(f: &OneCriticalFiltration, v: &GradientVectorField) -> Result<bool> {
    let field = IndexedField::new(f, v)?;
    let mut succ: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(s, t) in &field.pairs {
        succ.entry(s)
            .or_default()
            .extend(f.facet_indices(t).iter().copied().filter(|&x| x != s));
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; f.len()];
    for &(root, _) in &field.pairs {
        if mark[root] != Mark::New {
            continue;
        }
        // iterative DFS: (node, next child position)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
            let children = succ.get(&node).map(Vec::as_slice).unwrap_or(&[]);
            if let Some(&child) = children.get(*pos) {
                *pos += 1;
                match mark[child] {
                    Mark::Active => return Ok(false),
                    Mark::New => {
                        mark[child] = Mark::Active;
                        stack.push((child, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[node] = Mark::Done;
                stack.pop();
            }
        }
    }
    Ok(true)
}

/// For one-critical filtrations consistency reduces to equal grades within each pair.
pub fn check_consistent(f: &OneCriticalFiltration, v: &GradientVectorField) -> Result<bool> {
    let field = IndexedField::new(f, v)?;
    Ok(field.pairs.iter().all(|&(s, t)| f.grade_of(s) == f.grade_of(t)))
}

/// Greedy consistent gradient field.
///
/// Simplices are grouped by grade. Inside each group, elementary collapses
/// (a simplex with exactly one remaining cofacet in the group) are performed
/// while possible; when none is available the highest-dimensional remaining
/// simplex is declared critical and removed. Pairs are recorded in collapse
/// order, which makes the field acyclic.
pub fn build_consistent_dgvf(f: &OneCriticalFiltration) -> GradientVectorField {
    let mut groups: BTreeMap<&Grade, Vec<usize>> = BTreeMap::new();
    for i in 0..f.len() {
        groups.entry(f.grade_of(i)).or_default().push(i);
    }
    let mut alive = vec![false; f.len()];
    let mut pairs = Vec::new();
    for members in groups.values() {
        for &i in members {
            alive[i] = true;
        }
        // members are in canonical order, so the last alive one has the highest dimension
        let mut remaining = members.len();
        while remaining > 0 {
            let free = members.iter().rev().find_map(|&s| {
                if !alive[s] {
                    return None;
                }
                let mut live = f.cofacet_indices(s).iter().filter(|&&t| alive[t]);
                match (live.next(), live.next()) {
                    (Some(&t), None) => Some((s, t)),
                    _ => None,
                }
            });
            match free {
                Some((s, t)) => {
                    alive[s] = false;
                    alive[t] = false;
                    remaining -= 2;
                    pairs.push((f.simplex(s).clone(), f.simplex(t).clone()));
                }
                None => {
                    let top = *members.iter().rev().find(|&&s| alive[s]).expect("remaining > 0");
                    alive[top] = false;
                    remaining -= 1;
                }
            }
        }
    }
    GradientVectorField::new(pairs)
}

/// The unpaired simplices, also grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSet {
    pub cells: Vec<Simplex>,
    pub by_degree: BTreeMap<usize, Vec<Simplex>>,
}

impl CriticalSet {
    pub fn count_in_degree(&self, p: usize) -> usize {
        self.by_degree.get(&p).map_or(0, Vec::len)
    }
}

pub fn critical_cells(f: &OneCriticalFiltration, v: &GradientVectorField) -> Result<CriticalSet> {
    let field = IndexedField::new(f, v)?;
    let cells: Vec<Simplex> = (0..f.len())
        .filter(|&i| field.partner[i].is_none())
        .map(|i| f.simplex(i).clone())
        .collect();
    let mut by_degree: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for c in &cells {
        by_degree.entry(c.dim()).or_default().push(c.clone());
    }
    Ok(CriticalSet { cells, by_degree })
}

/// Collapses `K^from` down to `K^target` using pairs of `v`.
pub fn collapse_toward(
    f: &OneCriticalFiltration,
    v: &GradientVectorField,
    from: &Grade,
    target: &Grade,
) -> Result<Complex> {
    collapse_toward_with(f, v, from, target, |_, _| {})
}

/// Like [`collapse_toward`], calling `on_collapse(complex, (σ, τ))` after every
/// elementary collapse with the complex that remains.
pub fn collapse_toward_with<C>(
    f: &OneCriticalFiltration,
    v: &GradientVectorField,
    from: &Grade,
    target: &Grade,
    mut on_collapse: C,
) -> Result<Complex>
where
    C: FnMut(&Complex, (&Simplex, &Simplex)),
{
    if !target.leq(from)? {
        return Err(Error::NotBelow { target: target.clone(), from: from.clone() });
    }
    let field = IndexedField::require_matching(f, v)?;
    let mut present = vec![false; f.len()];
    for i in f.sublevel_indices(from)? {
        present[i] = true;
    }
    let mut excess: Vec<usize> = (0..f.len())
        .filter(|&i| present[i] && !f.grade_of(i).leq_unchecked(target))
        .collect();
    let mut complex: Complex = (0..f.len())
        .filter(|&i| present[i])
        .map(|i| f.simplex(i).clone())
        .collect();

    while !excess.is_empty() {
        let in_excess = |i: usize, present: &[bool]| {
            present[i] && !f.grade_of(i).leq_unchecked(target)
        };
        let step = field.pairs.iter().copied().find(|&(s, t)| {
            in_excess(s, &present)
                && in_excess(t, &present)
                && f.cofacet_indices(s).iter().filter(|&&c| present[c]).eq([&t])
        });
        let Some((s, t)) = step else {
            return Err(Error::CollapseStuck { remaining: excess.len() });
        };
        present[s] = false;
        present[t] = false;
        excess.retain(|&i| i != s && i != t);
        complex.remove(f.simplex(s));
        complex.remove(f.simplex(t));
        on_collapse(&complex, (f.simplex(s), f.simplex(t)));
    }
    Ok(complex)
}
