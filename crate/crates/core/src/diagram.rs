use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::grade::Grade;
use crate::line::Line;

/// Death parameter of a bar. `Finite` sorts before `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Death {
    Finite(BigRational),
    Infinite,
}

impl fmt::Display for Death {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Death::Finite(t) => write!(f, "{t}"),
            Death::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: BigRational,
    pub death: Death,
    pub multiplicity: usize,
}

/// Persistence diagram of the restriction of a filtration to a line, in the
/// line parameter. Points are kept merged and sorted by (dim, birth, death).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDiagram {
    line: Line,
    points: Vec<DiagramPoint>,
}

impl FiberDiagram {
    /// Builds a diagram from `(dim, birth, death, multiplicity)` bars, merging duplicates.
    /// Bars with zero multiplicity or zero length are dropped.
    pub fn from_bars<I>(line: Line, bars: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigRational, Death, usize)>,
    {
        let mut merged: BTreeMap<(usize, BigRational, Death), usize> = BTreeMap::new();
        for (dim, birth, death, mult) in bars {
            if mult == 0 || death == Death::Finite(birth.clone()) {
                continue;
            }
            *merged.entry((dim, birth, death)).or_default() += mult;
        }
        let points = merged
            .into_iter()
            .map(|((dim, birth, death), multiplicity)| DiagramPoint { dim, birth, death, multiplicity })
            .collect();
        FiberDiagram { line, points }
    }

    pub fn line(&self) -> &Line {
        &self.line
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn in_degree(&self, dim: usize) -> impl Iterator<Item = &DiagramPoint> {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    pub fn birth_point(&self, p: &DiagramPoint) -> Grade {
        self.line.point_at(&p.birth)
    }

    pub fn death_point(&self, p: &DiagramPoint) -> Option<Grade> {
        match &p.death {
            Death::Finite(t) => Some(self.line.point_at(t)),
            Death::Infinite => None,
        }
    }

    /// Number of bars of degree `dim` alive at parameter `t` (born at or before, dying after).
    pub fn alive_at(&self, dim: usize, t: &BigRational) -> usize {
        self.in_degree(dim)
            .filter(|p| &p.birth <= t && p.death > Death::Finite(t.clone()))
            .map(|p| p.multiplicity)
            .sum()
    }

    /// Bars of degree `dim` alive across `[s, t]`: the rank of the map from `s` to `t`.
    pub fn rank_between(&self, dim: usize, s: &BigRational, t: &BigRational) -> usize {
        self.in_degree(dim)
            .filter(|p| &p.birth <= s && p.death > Death::Finite(t.clone()))
            .map(|p| p.multiplicity)
            .sum()
    }
}

impl fmt::Display for FiberDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.line)?;
        for p in &self.points {
            writeln!(f, "H{} [{}, {}) x{}", p.dim, p.birth, p.death, p.multiplicity)?;
        }
        Ok(())
    }
}
