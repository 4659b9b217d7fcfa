//! Line signatures, line equivalence, closed-form fiber diagrams and diagram
//! transfer between equivalent lines.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::diagram::{Death, FiberDiagram};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::line::{faces_meet, FaceSet, Line};
use crate::rank::{ClosedCriticalSet, MorseRank};

/// The face of `∂S₊(c)` hit by the line, for every `c ∈ C̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineSignature(BTreeMap<Grade, FaceSet>);

impl LineSignature {
    pub fn faces(&self) -> &BTreeMap<Grade, FaceSet> {
        &self.0
    }

    pub fn face_of(&self, c: &Grade) -> Option<&FaceSet> {
        self.0.get(c)
    }

    /// Canonical text: closure values in lexicographic order, each with its
    /// 1-based face indices.
    pub fn canonical_encoding(&self) -> String {
        let mut out = String::new();
        for (c, face) in &self.0 {
            out.push_str(&c.to_strings().join(","));
            out.push(':');
            let idx: Vec<String> = face.one_based().iter().map(|i| i.to_string()).collect();
            out.push_str(&idx.join(","));
            out.push(';');
        }
        out
    }
}

pub fn signature(closure: &ClosedCriticalSet, line: &Line) -> Result<LineSignature> {
    closure
        .closed()
        .iter()
        .map(|c| Ok((c.clone(), line.push(c)?.face)))
        .collect::<Result<_>>()
        .map(LineSignature)
}

/// Same reciprocal position with respect to every closed critical value.
pub fn equivalent(closure: &ClosedCriticalSet, a: &Line, b: &Line) -> Result<bool> {
    Ok(signature(closure, a)? == signature(closure, b)?)
}

/// The largest `u′ ∈ C̄` above `u` whose cone face hit by the line meets the
/// face hit for `u`. Evaluated from face sets, not from `bar(push(u))`.
pub fn double_bar(closure: &ClosedCriticalSet, line: &Line, u: &Grade) -> Result<Grade> {
    if !closure.contains(u) {
        return Err(Error::NotInClosure(u.clone()));
    }
    let face_u = line.push(u)?.face;
    let mut candidates = Vec::new();
    for c in closure.closed() {
        if u.leq_unchecked(c) && faces_meet(u, &face_u, c, &line.push(c)?.face) {
            candidates.push(c);
        }
    }
    candidates
        .iter()
        .find(|top| candidates.iter().all(|c| c.leq_unchecked(top)))
        .map(|c| (*c).clone())
        .ok_or_else(|| Error::InvalidField(format!("no maximum above {u} along {line}")))
}

/// A point of `push_L(C̄)` with its line parameter and the closure value below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushedCritical {
    pub point: Grade,
    pub t: BigRational,
    pub bar: Grade,
}

/// `push_L(C̄)` as a strictly increasing list along the line.
pub fn pushed_criticals(closure: &ClosedCriticalSet, line: &Line) -> Result<Vec<PushedCritical>> {
    let mut by_t: BTreeMap<BigRational, Grade> = BTreeMap::new();
    for c in closure.closed() {
        let p = line.push(c)?;
        by_t.entry(p.t).or_insert(p.point);
    }
    by_t.into_iter()
        .map(|(t, point)| {
            let bar = closure.bar(&point)?.expect("a pushed closure value dominates its preimage");
            Ok(PushedCritical { point, t, bar })
        })
        .collect()
}

/// Diagram of the restriction to `line` from ranks at consecutive pushed
/// critical values, by inclusion–exclusion. `ρ(c⁰, ·)` is taken as 0.
pub fn fiber_diagram(engine: &MorseRank, line: &Line, degrees: &BTreeSet<usize>) -> Result<FiberDiagram> {
    let cs = pushed_criticals(engine.closure(), line)?;
    let m = cs.len();
    let mut bars = Vec::new();
    for &dim in degrees {
        // rho(i, j) over 1-based indices with the c⁰ sentinel
        let rho = |i: usize, j: usize| -> Result<i64> {
            if i == 0 {
                return Ok(0);
            }
            Ok(engine.rank_at_closure(dim, &cs[i - 1].bar, &cs[j - 1].bar)? as i64)
        };
        for i in 1..=m {
            for j in i + 1..=m {
                let mu = rho(i, j - 1)? - rho(i - 1, j - 1)? - rho(i, j)? + rho(i - 1, j)?;
                if mu > 0 {
                    bars.push((dim, cs[i - 1].t.clone(), Death::Finite(cs[j - 1].t.clone()), mu as usize));
                }
            }
            let mu = rho(i, m)? - rho(i - 1, m)?;
            if mu > 0 {
                bars.push((dim, cs[i - 1].t.clone(), Death::Infinite, mu as usize));
            }
        }
    }
    Ok(FiberDiagram::from_bars(line.clone(), bars))
}

/// Moves a diagram computed on one line to an equivalent line: each endpoint
/// is mapped to the push onto the target line of the closure value below it.
pub fn transfer(dgm: &FiberDiagram, target: &Line, closure: &ClosedCriticalSet) -> Result<FiberDiagram> {
    let source = dgm.line();
    if !equivalent(closure, source, target)? {
        return Err(Error::NotEquivalent);
    }
    transfer_equivalent(dgm, target, closure)
}

/// [`transfer`] for callers that have already matched the two signatures.
pub(crate) fn transfer_equivalent(
    dgm: &FiberDiagram,
    target: &Line,
    closure: &ClosedCriticalSet,
) -> Result<FiberDiagram> {
    let source = dgm.line();
    let mut memo: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    let mut map_t = |t: &BigRational| -> Result<BigRational> {
        if let Some(x) = memo.get(t) {
            return Ok(x.clone());
        }
        let bar = closure
            .bar(&source.point_at(t))?
            .ok_or_else(|| Error::InvalidField(format!("diagram endpoint t={t} lies below every critical value")))?;
        let mapped = target.push(&bar)?.t;
        memo.insert(t.clone(), mapped.clone());
        Ok(mapped)
    };
    let mut bars = Vec::with_capacity(dgm.points().len());
    for p in dgm.points() {
        let birth = map_t(&p.birth)?;
        let death = match &p.death {
            Death::Finite(t) => Death::Finite(map_t(t)?),
            Death::Infinite => Death::Infinite,
        };
        bars.push((p.dim, birth, death, p.multiplicity));
    }
    Ok(FiberDiagram::from_bars(target.clone(), bars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgvf::{build_consistent_dgvf, GradientVectorField};
    use crate::fixtures;
    use crate::homology::line_persistence_reduction;
    use crate::rank::lub_closure;

    fn g(c: &[i64]) -> Grade {
        Grade::from_ints(c)
    }

    fn face(idx: &[usize]) -> FaceSet {
        FaceSet::from_one_based(idx)
    }

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn degrees(d: &[usize]) -> BTreeSet<usize> {
        d.iter().copied().collect()
    }

    #[test]
    fn f3_signatures() {
        let c = lub_closure(&fixtures::f3_closed_values(), 100).unwrap();
        let (l, l1, l2) = fixtures::f3_lines();
        let sig = signature(&c, &l).unwrap();
        let expect: BTreeMap<Grade, FaceSet> = [
            (g(&[2, 3]), face(&[1])),
            (g(&[2, 6]), face(&[2])),
            (g(&[7, 3]), face(&[1])),
            (g(&[7, 6]), face(&[1])),
        ]
        .into_iter()
        .collect();
        assert_eq!(sig.faces(), &expect);
        assert_eq!(signature(&c, &l1).unwrap(), sig);
        let other = signature(&c, &l2).unwrap();
        assert_eq!(other.face_of(&g(&[2, 6])), Some(&face(&[1])));
        assert!(equivalent(&c, &l, &l1).unwrap());
        assert!(!equivalent(&c, &l, &l2).unwrap());
        assert!(equivalent(&c, &l2, &l2).unwrap());
    }

    #[test]
    fn f3_double_bar() {
        let c = lub_closure(&fixtures::f3_closed_values(), 100).unwrap();
        let (l, _, _) = fixtures::f3_lines();
        assert_eq!(double_bar(&c, &l, &g(&[7, 3])).unwrap(), g(&[7, 6]));
        assert_eq!(c.bar(&l.push(&g(&[7, 2])).unwrap().point).unwrap(), Some(g(&[7, 6])));
        assert_eq!(double_bar(&c, &l, &g(&[7, 6])).unwrap(), g(&[7, 6]));
        assert!(matches!(double_bar(&c, &l, &g(&[7, 2])), Err(Error::NotInClosure(_))));
    }

    #[test]
    fn double_bar_on_diagonal_matches_bar_of_push() {
        let c = lub_closure(&fixtures::f2_critical_values(), 100).unwrap();
        let diag = Line::new(g(&[0, 0]), g(&[1, 1])).unwrap();
        for u in c.closed() {
            let via_push = c.bar(&diag.push(u).unwrap().point).unwrap().unwrap();
            assert_eq!(double_bar(&c, &diag, u).unwrap(), via_push, "u = {u}");
        }
        let pushed = pushed_criticals(&c, &diag).unwrap();
        assert!(pushed.windows(2).all(|w| w[0].t < w[1].t && w[0].point.strictly_below(&w[1].point)));
        // (3,2),(3,5),(6,2),(6,5) push to t = 3, 5, 6, 6
        assert_eq!(pushed.iter().map(|p| p.t.clone()).collect::<Vec<_>>(), vec![int(3), int(5), int(6)]);
    }

    #[test]
    fn pushed_criticals_of_f1() {
        let c = lub_closure(&[g(&[0, 0]), g(&[1, 0]), g(&[1, 1])], 100).unwrap();
        let pushed = pushed_criticals(&c, &fixtures::f1_line()).unwrap();
        assert_eq!(pushed.len(), 2);
        assert_eq!((pushed[0].point.clone(), pushed[0].t.clone()), (g(&[1, 0]), int(0)));
        assert_eq!((pushed[1].point.clone(), pushed[1].t.clone()), (g(&[2, 1]), int(1)));
        assert_eq!(pushed[1].bar, g(&[1, 1]));

        let single = lub_closure(&[g(&[4, 4])], 10).unwrap();
        assert_eq!(pushed_criticals(&single, &fixtures::f1_line()).unwrap().len(), 1);
    }

    #[test]
    fn f1_fiber_matches_oracle() {
        let engine = MorseRank::new(fixtures::f1(), GradientVectorField::empty()).unwrap();
        let line = fixtures::f1_line();
        let dgm = fiber_diagram(&engine, &line, &degrees(&[0])).unwrap();
        let pts: Vec<_> = dgm.points().iter().map(|p| (p.birth.clone(), p.death.clone(), p.multiplicity)).collect();
        assert_eq!(pts, vec![(int(0), Death::Finite(int(1)), 1), (int(0), Death::Infinite, 1)]);
        let oracle = line_persistence_reduction(engine.filtration(), &line, &degrees(&[0])).unwrap();
        assert_eq!(dgm, oracle);
    }

    #[test]
    fn f4_single_grade_fiber() {
        let f4 = fixtures::f4();
        let v = build_consistent_dgvf(&f4);
        let engine = MorseRank::new(f4, v).unwrap();
        let line = Line::new(g(&[-2, 1]), g(&[3, 1])).unwrap();
        let dgm = fiber_diagram(&engine, &line, &degrees(&[0, 1, 2])).unwrap();
        let t1 = pushed_criticals(engine.closure(), &line).unwrap()[0].t.clone();
        let pts: Vec<_> = dgm.points().iter().map(|p| (p.dim, p.birth.clone(), p.death.clone())).collect();
        assert_eq!(pts, vec![(0, t1.clone(), Death::Infinite), (1, t1, Death::Infinite)]);
    }

    #[test]
    fn nothing_born_before_first_pushed_value() {
        let engine = MorseRank::new(fixtures::f2(), GradientVectorField::empty()).unwrap();
        let line = Line::new(g(&[-10, -10]), g(&[1, 2])).unwrap();
        let first = pushed_criticals(engine.closure(), &line).unwrap()[0].t.clone();
        let dgm = fiber_diagram(&engine, &line, &degrees(&[0])).unwrap();
        assert!(dgm.points().iter().all(|p| p.birth >= first));
    }

    #[test]
    fn f1_transfer() {
        let engine = MorseRank::new(fixtures::f1(), GradientVectorField::empty()).unwrap();
        let (l0, l1) = (fixtures::f1_line(), fixtures::f1_line_shallow());
        assert!(equivalent(engine.closure(), &l0, &l1).unwrap());
        let d0 = fiber_diagram(&engine, &l0, &degrees(&[0])).unwrap();
        let moved = transfer(&d0, &l1, engine.closure()).unwrap();
        assert_eq!(moved, fiber_diagram(&engine, &l1, &degrees(&[0])).unwrap());
        let p = &moved.points()[0];
        assert_eq!(moved.death_point(p), Some(g(&[3, 1])));
        assert_eq!(transfer(&d0, &l0, engine.closure()).unwrap(), d0);

        let far = Line::new(g(&[0, 5]), g(&[1, 1])).unwrap();
        assert_eq!(transfer(&d0, &far, engine.closure()), Err(Error::NotEquivalent));
    }
}
