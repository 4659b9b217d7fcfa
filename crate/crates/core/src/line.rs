//! Positive-slope lines and the push operator.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::grade::{parse_coords, Grade};

/// The line `t ↦ dir·t + base` with `dir` strictly positive in every coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    base: Grade,
    dir: Grade,
}

impl Line {
    pub fn new(base: Grade, dir: Grade) -> Result<Self> {
        if base.n() != dir.n() {
            return Err(Error::DimensionMismatch { expected: base.n(), found: dir.n() });
        }
        if dir.n() == 0 || !dir.is_strictly_positive() {
            return Err(Error::NonPositiveSlope(dir));
        }
        Ok(Line { base, dir })
    }

    pub fn base(&self) -> &Grade {
        &self.base
    }

    pub fn dir(&self) -> &Grade {
        &self.dir
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn point_at(&self, t: &BigRational) -> Grade {
        Grade::new(
            self.base
                .coords()
                .iter()
                .zip(self.dir.coords())
                .map(|(b, m)| b + m * t)
                .collect(),
        )
    }

    /// Parameter of `p` if it lies on the line.
    pub fn param_of(&self, p: &Grade) -> Option<BigRational> {
        if p.n() != self.n() {
            return None;
        }
        let t = (&p.coords()[0] - &self.base.coords()[0]) / &self.dir.coords()[0];
        (self.point_at(&t) == *p).then_some(t)
    }

    /// The unique point of the line on the boundary of the positive cone of `u`,
    /// i.e. the smallest point of the line dominating `u`.
    pub fn push(&self, u: &Grade) -> Result<PushResult> {
        if u.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: u.n() });
        }
        let ratios: Vec<BigRational> = u
            .coords()
            .iter()
            .zip(self.base.coords())
            .zip(self.dir.coords())
            .map(|((x, b), m)| (x - b) / m)
            .collect();
        let t = ratios.iter().max().expect("n >= 1").clone();
        let face = FaceSet(
            ratios
                .iter()
                .enumerate()
                .filter(|(_, r)| **r == t)
                .map(|(i, _)| i)
                .collect(),
        );
        Ok(PushResult { point: self.point_at(&t), t, face })
    }

    /// Line literal `base=<r1,...,rn> dir=<r1,...,rn>`; angle brackets are optional.
    pub fn parse_literal(s: &str) -> Result<Self> {
        let mut base = None;
        let mut dir = None;
        for word in s.split_whitespace() {
            let (key, value) = word
                .split_once('=')
                .ok_or_else(|| Error::LineLiteral(format!("expected key=value, got `{word}`")))?;
            let value = value.trim_start_matches('<').trim_end_matches('>');
            let coords = parse_coords(value)?;
            match key {
                "base" => base = Some(Grade::new(coords)),
                "dir" => dir = Some(Grade::new(coords)),
                _ => return Err(Error::LineLiteral(format!("unknown key `{key}`"))),
            }
        }
        match (base, dir) {
            (Some(b), Some(d)) => Line::new(b, d),
            _ => Err(Error::LineLiteral("both base= and dir= are required".into())),
        }
    }
}

impl FromStr for Line {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Line::parse_literal(s)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |g: &Grade| g.to_strings().join(",");
        write!(f, "base=<{}> dir=<{}>", join(&self.base), join(&self.dir))
    }
}

/// A nonempty set of coordinate indices naming an open face `S_A(u)` of the
/// boundary of a positive cone: `x_i = u_i` for `i ∈ A` and `x_i > u_i` otherwise.
///
/// Indices are stored 0-based; [`FaceSet::one_based`] gives the usual `{1..n}` labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceSet(Vec<usize>);

impl FaceSet {
    pub fn from_one_based(idx: &[usize]) -> Self {
        let mut v: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        v.sort_unstable();
        v.dedup();
        FaceSet(v)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl fmt::Display for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Does the open face `S_A(u)` meet `S_B(v)`?
pub fn faces_meet(u: &Grade, a: &FaceSet, v: &Grade, b: &FaceSet) -> bool {
    u.coords().iter().zip(v.coords()).enumerate().all(|(i, (ui, vi))| {
        match (a.contains(i), b.contains(i)) {
            (true, true) => ui == vi,
            (true, false) => ui > vi,
            (false, true) => vi > ui,
            (false, false) => true,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushResult {
    pub point: Grade,
    pub t: BigRational,
    pub face: FaceSet,
}
