//! Homology over the two-element field by plain Gaussian elimination and
//! column reduction. These routines do not use the gradient field and serve
//! as the ground truth for the Morse-reduced computations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;

use crate::diagram::{Death, FiberDiagram};
use crate::error::{Error, Result};
use crate::filtration::{Complex, OneCriticalFiltration};
use crate::line::Line;
use crate::simplex::Simplex;

/// A sparse F2 vector as a sorted list of nonzero positions.
type Column = Vec<usize>;

fn add_assign(acc: &mut Column, other: &[usize]) {
    let mut out = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(acc[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&acc[i..]);
    out.extend_from_slice(&other[j..]);
    *acc = out;
}

/// Row-echelon basis of a subspace of F2^N, keyed by each vector's largest index.
#[derive(Default)]
struct EchelonBasis {
    by_pivot: HashMap<usize, Column>,
}

impl EchelonBasis {
    /// Adds `v` to the span; returns false if it was already dependent.
    fn insert(&mut self, mut v: Column) -> bool {
        while let Some(&pivot) = v.last() {
            match self.by_pivot.get(&pivot) {
                Some(b) => add_assign(&mut v, b),
                None => {
                    self.by_pivot.insert(pivot, v);
                    return true;
                }
            }
        }
        false
    }

    fn dim(&self) -> usize {
        self.by_pivot.len()
    }
}

/// Boundary map from p-simplices (columns) to (p−1)-simplices (rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    pub columns: Vec<Column>,
}

impl BoundaryMatrix {
    /// `∂_p` of the complex. For `p = 0` the matrix has no rows.
    pub fn of(k: &Complex, p: usize) -> Self {
        let cols: Vec<Simplex> = k.iter().filter(|s| s.dim() == p).cloned().collect();
        let rows: Vec<Simplex> = if p == 0 {
            Vec::new()
        } else {
            k.iter().filter(|s| s.dim() == p - 1).cloned().collect()
        };
        let row_idx: HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let columns = cols
            .iter()
            .map(|s| {
                let mut c: Column = if p == 0 {
                    Vec::new()
                } else {
                    s.facets().iter().filter_map(|f| row_idx.get(f).copied()).collect()
                };
                c.sort_unstable();
                c
            })
            .collect();
        BoundaryMatrix { rows, cols, columns }
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::default();
        self.columns.iter().filter(|c| basis.insert((*c).clone())).count()
    }

    /// Kernel basis, each vector over the column index space.
    fn kernel(&self) -> Vec<Column> {
        // reduce with a record of which original columns were added
        let mut reduced: HashMap<usize, (Column, Column)> = HashMap::new();
        let mut kernel = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut r = col.clone();
            let mut combo = vec![j];
            while let Some(&pivot) = r.last() {
                match reduced.get(&pivot) {
                    Some((rb, cb)) => {
                        add_assign(&mut r, rb);
                        add_assign(&mut combo, cb);
                    }
                    None => break,
                }
            }
            match r.last() {
                Some(&pivot) => {
                    reduced.insert(pivot, (r, combo));
                }
                None => kernel.push(combo),
            }
        }
        kernel
    }

    /// The product `self · other`, used to check `∂∂ = 0`.
    pub fn compose(&self, other: &BoundaryMatrix) -> Vec<Column> {
        other
            .columns
            .iter()
            .map(|c| {
                let mut acc = Vec::new();
                for &k in c {
                    add_assign(&mut acc, &self.columns[k]);
                }
                acc
            })
            .collect()
    }
}

pub fn betti(k: &Complex, i: usize) -> usize {
    let d_i = BoundaryMatrix::of(k, i);
    let d_next = BoundaryMatrix::of(k, i + 1);
    d_i.cols.len() - d_i.rank() - d_next.rank()
}

/// All Betti numbers up to the top dimension of `k`.
pub fn betti_numbers(k: &Complex) -> Vec<usize> {
    let top = k.iter().map(Simplex::dim).max();
    match top {
        None => Vec::new(),
        Some(d) => (0..=d).map(|i| betti(k, i)).collect(),
    }
}

/// Rank of `H_i(K_sub) → H_i(K_sup)` induced by inclusion,
/// computed as `dim Z_i(sub) − dim(Z_i(sub) ∩ B_i(sup))`.
pub fn rank_inclusion(sub: &Complex, sup: &Complex, i: usize) -> Result<usize> {
    if !sub.is_subset(sup) {
        return Err(Error::NotSubcomplex);
    }
    let sub_d = BoundaryMatrix::of(sub, i);
    let sup_cells: Vec<&Simplex> = sup.iter().filter(|s| s.dim() == i).collect();
    let pos: HashMap<&Simplex, usize> = sup_cells.iter().enumerate().map(|(k, s)| (*s, k)).collect();

    // cycles of the subcomplex, rewritten in the supercomplex's i-chain basis
    let cycles: Vec<Column> = sub_d
        .kernel()
        .into_iter()
        .map(|combo| {
            let mut v: Column = combo.iter().map(|&c| pos[&sub_d.cols[c]]).collect();
            v.sort_unstable();
            v
        })
        .collect();

    let bd = BoundaryMatrix::of(sup, i + 1);
    debug_assert!(bd.rows.iter().zip(&sup_cells).all(|(a, b)| a == *b));
    let mut span = EchelonBasis::default();
    for c in &bd.columns {
        span.insert(c.clone());
    }
    let boundaries = span.dim();
    for z in cycles {
        span.insert(z);
    }
    // dim(Z + B) − dim B = dim Z − dim(Z ∩ B)
    Ok(span.dim() - boundaries)
}

/// Birth/death index pairs from reducing a filtered boundary matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PersistencePairing {
    pub pairs: BTreeMap<usize, Vec<(usize, usize)>>,
    pub essential: BTreeMap<usize, Vec<usize>>,
}

/// Standard left-to-right column reduction of the simplices in the given order.
/// The order must list every face before its cofaces.
pub fn reduce(order: &[Simplex]) -> Result<PersistencePairing> {
    let pos: HashMap<&Simplex, usize> = order.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut low_owner: HashMap<usize, usize> = HashMap::new();
    let mut columns: Vec<Column> = Vec::with_capacity(order.len());
    let mut out = PersistencePairing::default();
    let mut paired = vec![false; order.len()];
    for (j, s) in order.iter().enumerate() {
        let mut col: Column = Vec::with_capacity(s.dim() + 1);
        for f in s.facets() {
            match pos.get(&f) {
                Some(&k) if k < j => col.push(k),
                _ => return Err(Error::FaceClosure { simplex: s.clone(), facet: f }),
            }
        }
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match low_owner.get(&low) {
                Some(&other) => {
                    let other_col = columns[other].clone();
                    add_assign(&mut col, &other_col);
                }
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            low_owner.insert(low, j);
            paired[low] = true;
            paired[j] = true;
            out.pairs.entry(order[low].dim()).or_default().push((low, j));
        }
        columns.push(col);
    }
    for (j, s) in order.iter().enumerate() {
        if !paired[j] {
            out.essential.entry(s.dim()).or_default().push(j);
        }
    }
    Ok(out)
}

/// Persistence diagram of the filtration restricted to `line`, by matrix reduction.
///
/// A simplex enters at the smallest `t` whose line point dominates its grade.
/// Ties are broken by dimension and vertex list.
pub fn line_persistence_reduction(
    f: &OneCriticalFiltration,
    line: &Line,
    degrees: &BTreeSet<usize>,
) -> Result<FiberDiagram> {
    let mut entries: Vec<(BigRational, &Simplex)> = f
        .simplices()
        .iter()
        .zip(f.grades())
        .map(|(s, g)| Ok((line.push(g)?.t, s)))
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let order: Vec<Simplex> = entries.iter().map(|(_, s)| (*s).clone()).collect();
    let pairing = reduce(&order)?;
    let t = |k: usize| entries[k].0.clone();

    let mut bars = Vec::new();
    for (&dim, pairs) in &pairing.pairs {
        if degrees.contains(&dim) {
            bars.extend(pairs.iter().map(|&(b, d)| (dim, t(b), Death::Finite(t(d)), 1)));
        }
    }
    for (&dim, births) in &pairing.essential {
        if degrees.contains(&dim) {
            bars.extend(births.iter().map(|&b| (dim, t(b), Death::Infinite, 1)));
        }
    }
    Ok(FiberDiagram::from_bars(line.clone(), bars))
}
