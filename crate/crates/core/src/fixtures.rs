//! Small hand-checkable datasets used by the examples and tests.

use crate::dgvf::GradientVectorField;
use crate::filtration::OneCriticalFiltration;
use crate::grade::Grade;
use crate::line::Line;

/// Two vertices and the edge joining them: `a=(0,0)`, `b=(1,0)`, `ab=(1,1)`.
pub const F1_OCF: &str = "\
ocf 2
0 ; 0 0
1 ; 1 0
0 1 ; 1 1
";

/// Three isolated vertices whose grades are the critical values
/// `(3,2)`, `(3,5)`, `(6,2)`.
pub const F2_OCF: &str = "\
ocf 2
0 ; 3 2
1 ; 3 5
2 ; 6 2
";

/// Vertices at `(2,3)`, `(2,6)`, `(7,3)` and a hollow triangle completed at
/// `(7,6)`. Its critical values are already closed under least upper bounds.
pub const F3_OCF: &str = "\
ocf 2
0 ; 2 3
1 ; 2 6
2 ; 7 3
0 1 ; 7 6
0 2 ; 7 6
1 2 ; 7 6
";

/// Square `a b c d` with diagonal `ac` and the triangle `acd`, every cell at the origin.
pub const F4_OCF: &str = "\
ocf 2
0 ; 0 0
1 ; 0 0
2 ; 0 0
3 ; 0 0
0 1 ; 0 0
1 2 ; 0 0
2 3 ; 0 0
0 3 ; 0 0
0 2 ; 0 0
0 2 3 ; 0 0
";

/// Gradient pairs on [`F4_OCF`]: `(b,ab)`, `(c,bc)`, `(d,ad)`, `(cd,acd)`.
pub const F4_DGVF: &str = "\
1 ; 0 1
2 ; 1 2
3 ; 0 3
2 3 ; 0 2 3
";

pub fn f1() -> OneCriticalFiltration {
    OneCriticalFiltration::parse(F1_OCF).expect("fixture")
}

pub fn f2() -> OneCriticalFiltration {
    OneCriticalFiltration::parse(F2_OCF).expect("fixture")
}

pub fn f3() -> OneCriticalFiltration {
    OneCriticalFiltration::parse(F3_OCF).expect("fixture")
}

pub fn f4() -> OneCriticalFiltration {
    OneCriticalFiltration::parse(F4_OCF).expect("fixture")
}

pub fn f4_field() -> GradientVectorField {
    GradientVectorField::parse(F4_DGVF).expect("fixture")
}

/// F4 with the pairs `(d,ad)` and `(cd,acd)` raised to `(1,1)`, everything else at the origin.
pub fn f4_two_level() -> OneCriticalFiltration {
    let high = [&[3][..], &[0, 3], &[2, 3], &[0, 2, 3]];
    let entries = f4()
        .simplices()
        .iter()
        .map(|s| {
            let g = if high.contains(&s.vertices()) { [1, 1] } else { [0, 0] };
            (s.clone(), Grade::from_ints(&g))
        })
        .collect();
    OneCriticalFiltration::new(2, entries).expect("fixture")
}

/// Critical values of the staircase example: `(3,2)`, `(3,5)`, `(6,2)`.
pub fn f2_critical_values() -> Vec<Grade> {
    vec![Grade::from_ints(&[3, 2]), Grade::from_ints(&[3, 5]), Grade::from_ints(&[6, 2])]
}

/// Closed critical set `{(2,3),(2,6),(7,3),(7,6)}`.
pub fn f3_closed_values() -> Vec<Grade> {
    [[2, 3], [2, 6], [7, 3], [7, 6]].iter().map(|c| Grade::from_ints(c)).collect()
}

/// The three lines compared against [`f3_closed_values`]: `L`, `L′`, `L″`.
pub fn f3_lines() -> (Line, Line, Line) {
    let line = |b: [i64; 2], d: [i64; 2]| {
        Line::new(Grade::from_ints(&b), Grade::from_ints(&d)).expect("fixture")
    };
    (line([0, 3], [7, 4]), line([0, 2], [1, 1]), line([0, 6], [4, 1]))
}

/// The diagonal line through `(1,0)` used with F1.
pub fn f1_line() -> Line {
    Line::new(Grade::from_ints(&[1, 0]), Grade::from_ints(&[1, 1])).expect("fixture")
}

/// A line through `(1,0)` equivalent to [`f1_line`] for F1's critical values.
pub fn f1_line_shallow() -> Line {
    Line::new(Grade::from_ints(&[1, 0]), Grade::from_ints(&[2, 1])).expect("fixture")
}

#[cfg(test)]
pub(crate) fn simplex(v: &[u32]) -> crate::simplex::Simplex {
    crate::simplex::Simplex::from_slice(v)
}
