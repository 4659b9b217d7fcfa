//! Critical values, their closure under least upper bounds, and rank-invariant
//! evaluation at the dominated closure values.
//!
//! Homology of `K^u` equals homology of `K^{ū}`, where `ū` is the largest
//! closed critical value below `u`. Ranks are therefore computed on the
//! finitely many sublevel complexes at closure values and memoized there.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use parking_lot::RwLock;

use crate::dgvf::{check_acyclic, check_consistent, check_matching, critical_cells, GradientVectorField};
use crate::error::{Error, Result};
use crate::filtration::OneCriticalFiltration;
use crate::grade::Grade;
use crate::homology::rank_inclusion;

pub const DEFAULT_CLOSURE_CAP: usize = 50_000;

/// Entrance values of the critical cells, deduplicated and sorted.
pub fn critical_values(f: &OneCriticalFiltration, v: &GradientVectorField) -> Result<Vec<Grade>> {
    let crit = critical_cells(f, v)?;
    let set: BTreeSet<Grade> = crit
        .cells
        .iter()
        .map(|s| f.grade(s).expect("critical cell belongs to the filtration").clone())
        .collect();
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedCriticalSet {
    base: Vec<Grade>,
    closed: Vec<Grade>,
    axes: Vec<Vec<BigRational>>,
}

/// Smallest superset of `values` closed under pairwise least upper bound.
pub fn lub_closure(values: &[Grade], cap: usize) -> Result<ClosedCriticalSet> {
    let Some(first) = values.first() else {
        return Err(Error::EmptyCriticalSet);
    };
    let n = first.n();
    if let Some(bad) = values.iter().find(|g| g.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.n() });
    }
    let base: BTreeSet<Grade> = values.iter().cloned().collect();
    if base.len() > cap {
        return Err(Error::ClosureTooLarge { cap });
    }
    let mut closed = base.clone();
    let mut work: Vec<Grade> = base.iter().cloned().collect();
    while let Some(x) = work.pop() {
        let fresh: Vec<Grade> = closed
            .iter()
            .map(|y| x.lub_unchecked(y))
            .filter(|z| !closed.contains(z))
            .collect();
        for z in fresh {
            if closed.insert(z.clone()) {
                if closed.len() > cap {
                    return Err(Error::ClosureTooLarge { cap });
                }
                work.push(z);
            }
        }
    }
    let axes = (0..n)
        .map(|i| {
            let set: BTreeSet<BigRational> = closed.iter().map(|g| g.coords()[i].clone()).collect();
            set.into_iter().collect()
        })
        .collect();
    Ok(ClosedCriticalSet {
        base: base.into_iter().collect(),
        closed: closed.into_iter().collect(),
        axes,
    })
}

impl ClosedCriticalSet {
    /// The generating critical values `C`.
    pub fn base(&self) -> &[Grade] {
        &self.base
    }

    /// The closure, sorted lexicographically.
    pub fn closed(&self) -> &[Grade] {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn n(&self) -> usize {
        self.axes.len()
    }

    /// Distinct values taken by the `i`-th coordinate, ascending.
    pub fn axis(&self, i: usize) -> &[BigRational] {
        &self.axes[i]
    }

    pub fn contains(&self, u: &Grade) -> bool {
        self.closed.binary_search(u).is_ok()
    }

    /// Whether `u` was added by the closure rather than being a critical value.
    pub fn is_closure_added(&self, u: &Grade) -> bool {
        self.contains(u) && self.base.binary_search(u).is_err()
    }

    /// The maximum of `{c ∈ C̄ : c ⪯ u}`, or `None` when nothing lies below `u`.
    pub fn bar(&self, u: &Grade) -> Result<Option<Grade>> {
        if u.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: u.n() });
        }
        // coordinates below every axis value dominate nothing
        if u.coords().iter().zip(&self.axes).any(|(x, axis)| x < &axis[0]) {
            return Ok(None);
        }
        let top = self
            .closed
            .iter()
            .filter(|c| c.leq_unchecked(u))
            .fold(None::<Grade>, |acc, c| Some(acc.map_or_else(|| c.clone(), |a| a.lub_unchecked(c))));
        debug_assert!(top.as_ref().is_none_or(|t| self.contains(t)));
        Ok(top)
    }
}

/// Options for building a [`MorseRank`].
#[derive(Clone, Copy, Debug)]
pub struct RankOptions {
    pub closure_cap: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { closure_cap: DEFAULT_CLOSURE_CAP }
    }
}

type MemoKey = (usize, Grade, Grade);

/// Rank invariant of a filtration evaluated through a consistent gradient field.
#[derive(Debug)]
pub struct MorseRank {
    filtration: OneCriticalFiltration,
    field: GradientVectorField,
    closure: ClosedCriticalSet,
    memo: RwLock<HashMap<MemoKey, usize>>,
}

impl MorseRank {
    pub fn new(filtration: OneCriticalFiltration, field: GradientVectorField) -> Result<Self> {
        Self::with_options(filtration, field, RankOptions::default())
    }

    /// Validates the field (matching, acyclic, consistent) and computes `C̄`.
    pub fn with_options(
        filtration: OneCriticalFiltration,
        field: GradientVectorField,
        opts: RankOptions,
    ) -> Result<Self> {
        let report = check_matching(&filtration, &field)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidField(format!("{v:?}")));
        }
        if !check_acyclic(&filtration, &field)? {
            return Err(Error::InvalidField("closed V-path found".into()));
        }
        if !check_consistent(&filtration, &field)? {
            return Err(Error::InvalidField("a pair has unequal grades".into()));
        }
        let values = critical_values(&filtration, &field)?;
        let closure = lub_closure(&values, opts.closure_cap)?;
        Ok(MorseRank { filtration, field, closure, memo: RwLock::new(HashMap::new()) })
    }

    pub fn filtration(&self) -> &OneCriticalFiltration {
        &self.filtration
    }

    pub fn field(&self) -> &GradientVectorField {
        &self.field
    }

    pub fn closure(&self) -> &ClosedCriticalSet {
        &self.closure
    }

    pub fn bar(&self, u: &Grade) -> Result<Option<Grade>> {
        self.closure.bar(u)
    }

    /// `ρ_i(u, v)` for `u ⪯ v`.
    pub fn rank(&self, i: usize, u: &Grade, v: &Grade) -> Result<usize> {
        let (bu, bv) = match self.bars_for(u, v)? {
            Some(b) => b,
            None => return Ok(0),
        };
        self.rank_at_closure(i, &bu, &bv)
    }

    /// Same as [`MorseRank::rank`] but bypasses the memo table.
    pub fn rank_unmemoized(&self, i: usize, u: &Grade, v: &Grade) -> Result<usize> {
        match self.bars_for(u, v)? {
            Some((bu, bv)) => self.compute(i, &bu, &bv),
            None => Ok(0),
        }
    }

    fn bars_for(&self, u: &Grade, v: &Grade) -> Result<Option<(Grade, Grade)>> {
        if !u.leq(v)? {
            return Err(Error::NotBelow { target: u.clone(), from: v.clone() });
        }
        let Some(bu) = self.bar(u)? else { return Ok(None) };
        let bv = self.bar(v)?.expect("bar(v) exists when bar(u) does");
        Ok(Some((bu, bv)))
    }

    /// Rank between two closure values `bu ⪯ bv`, memoized.
    pub fn rank_at_closure(&self, i: usize, bu: &Grade, bv: &Grade) -> Result<usize> {
        let key = (i, bu.clone(), bv.clone());
        if let Some(&r) = self.memo.read().get(&key) {
            return Ok(r);
        }
        let r = self.compute(i, bu, bv)?;
        self.memo.write().entry(key).or_insert(r);
        Ok(r)
    }

    fn compute(&self, i: usize, bu: &Grade, bv: &Grade) -> Result<usize> {
        let sub = self.filtration.sublevel_complex(bu)?;
        let sup = self.filtration.sublevel_complex(bv)?;
        rank_inclusion(&sub, &sup, i)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }
}
