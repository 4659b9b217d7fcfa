//! Random filtrations, lines and grades for property tests and examples.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::fiber::equivalent;
use crate::filtration::OneCriticalFiltration;
use crate::grade::Grade;
use crate::line::Line;
use crate::rank::ClosedCriticalSet;
use crate::simplex::Simplex;

#[derive(Clone, Debug)]
pub struct FiltrationParams {
    pub n: usize,
    pub max_simplices: usize,
    pub max_vertices: u32,
    pub max_dim: usize,
    /// Grades use half-integers in `[0, grade_max]`.
    pub grade_max: i64,
    /// Chance that a simplex enters exactly at the lub of its facets.
    pub tie_probability: f64,
}

impl Default for FiltrationParams {
    fn default() -> Self {
        FiltrationParams {
            n: 2,
            max_simplices: 30,
            max_vertices: 6,
            max_dim: 3,
            grade_max: 4,
            tie_probability: 0.5,
        }
    }
}

fn half_steps<R: Rng + ?Sized>(rng: &mut R, max: i64) -> BigRational {
    BigRational::new(rng.gen_range(0..=2 * max).into(), 2.into())
}

fn random_grade<R: Rng + ?Sized>(rng: &mut R, n: usize, max: i64) -> Grade {
    Grade::new((0..n).map(|_| half_steps(rng, max)).collect())
}

/// A random face-closed complex with a monotone grade function.
pub fn random_filtration<R: Rng + ?Sized>(rng: &mut R, p: &FiltrationParams) -> OneCriticalFiltration {
    let vertex_count = rng.gen_range(1..=p.max_vertices.max(1));
    let vertices: Vec<u32> = (0..vertex_count).collect();
    let mut complex: BTreeSet<Simplex> = BTreeSet::new();
    for _ in 0..4 * p.max_simplices {
        let size = rng.gen_range(1..=(p.max_dim + 1).min(vertex_count as usize));
        let verts: Vec<u32> = vertices.choose_multiple(rng, size).copied().collect();
        let top = Simplex::new(verts).expect("distinct vertices");
        let mut closure: BTreeSet<Simplex> = BTreeSet::new();
        let mut stack = vec![top];
        while let Some(s) = stack.pop() {
            if !complex.contains(&s) && closure.insert(s.clone()) {
                stack.extend(s.facets());
            }
        }
        if complex.len() + closure.len() <= p.max_simplices {
            complex.extend(closure);
        }
    }
    if complex.is_empty() {
        complex.insert(Simplex::from_slice(&[0]));
    }

    // canonical order lists faces first
    let mut grades: std::collections::HashMap<Simplex, Grade> = Default::default();
    let mut entries = Vec::with_capacity(complex.len());
    for s in &complex {
        let below = s
            .facets()
            .iter()
            .map(|f| grades[f].clone())
            .reduce(|a, b| a.lub_unchecked(&b));
        let g = match below {
            Some(b) if rng.gen_bool(p.tie_probability) => b,
            Some(b) => b.lub_unchecked(&random_grade(rng, p.n, p.grade_max)),
            None => random_grade(rng, p.n, p.grade_max),
        };
        grades.insert(s.clone(), g.clone());
        entries.push((s.clone(), g));
    }
    OneCriticalFiltration::new(p.n, entries).expect("generated filtration is valid")
}

fn small_positive<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    BigRational::new(rng.gen_range(1..=5).into(), rng.gen_range(1..=3).into())
}

/// A random positive-slope line with small rational base and direction.
pub fn random_line<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Line {
    let base = Grade::new(
        (0..n)
            .map(|_| BigRational::new(rng.gen_range(-8..=8).into(), rng.gen_range(1..=2).into()))
            .collect(),
    );
    let dir = Grade::new((0..n).map(|_| small_positive(rng)).collect());
    Line::new(base, dir).expect("positive direction")
}

/// A grade near the closure: either a closure value nudged by `{-1/2, 0, 1/2}`
/// per coordinate or a uniformly random point of the grade box.
pub fn random_grade_near<R: Rng + ?Sized>(rng: &mut R, closure: &ClosedCriticalSet, box_max: i64) -> Grade {
    let n = closure.n();
    if rng.gen_bool(0.7) {
        let c = closure.closed().choose(rng).expect("nonempty closure");
        Grade::new(
            c.coords()
                .iter()
                .map(|x| x + BigRational::new(rng.gen_range(-1..=1).into(), 2.into()))
                .collect(),
        )
    } else {
        Grade::new((0..n).map(|_| BigRational::new(rng.gen_range(-2..=2 * box_max + 2).into(), 2.into())).collect())
    }
}

/// A random pair `u ⪯ v` sampled around the closure.
pub fn random_comparable_pair<R: Rng + ?Sized>(rng: &mut R, closure: &ClosedCriticalSet, box_max: i64) -> (Grade, Grade) {
    let u = random_grade_near(rng, closure, box_max);
    let v = if rng.gen_bool(0.5) {
        u.lub_unchecked(&random_grade_near(rng, closure, box_max))
    } else {
        Grade::new(
            u.coords()
                .iter()
                .map(|x| x + BigRational::new(rng.gen_range(0..=6).into(), 2.into()))
                .collect(),
        )
    };
    (u, v)
}

/// Tries to move `line` slightly without leaving its equivalence class.
/// Returns `None` if no perturbation within `attempts` tries stays equivalent.
pub fn perturb_within_class<R: Rng + ?Sized>(
    rng: &mut R,
    closure: &ClosedCriticalSet,
    line: &Line,
    attempts: usize,
) -> Option<Line> {
    for k in 0..attempts {
        let scale = BigRational::new(1.into(), (20 * (k as i64 + 1)).into());
        let jitter = |rng: &mut R| BigRational::new(rng.gen_range(-3..=3).into(), 1.into()) * &scale;
        let base = Grade::new(line.base().coords().iter().map(|x| x + jitter(rng)).collect());
        let dir = Grade::new(line.dir().coords().iter().map(|x| x + jitter(rng) * x).collect());
        let Ok(candidate) = Line::new(base, dir) else { continue };
        if candidate != *line && equivalent(closure, line, &candidate).ok()? {
            return Some(candidate);
        }
    }
    None
}
