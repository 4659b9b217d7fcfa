//! Canonical JSON shapes shared by the CLI and the HTTP API.
//!
//! Rationals are strings (`"p/q"` or integers); objects are `serde_json::Map`,
//! which keeps keys sorted.

use serde_json::{json, Value};

use crate::diagram::{Death, FiberDiagram};
use crate::fiber::PushedCritical;
use crate::grade::Grade;
use crate::line::Line;

pub fn grade(g: &Grade) -> Value {
    Value::from(g.to_strings())
}

pub fn grades<'a>(gs: impl IntoIterator<Item = &'a Grade>) -> Value {
    Value::Array(gs.into_iter().map(grade).collect())
}

pub fn line(l: &Line) -> Value {
    json!({ "base": grade(l.base()), "dir": grade(l.dir()) })
}

pub fn diagram_points(dgm: &FiberDiagram) -> Value {
    Value::Array(
        dgm.points()
            .iter()
            .map(|p| {
                let (death_t, death_point) = match &p.death {
                    Death::Finite(t) => (Value::from(t.to_string()), grade(&dgm.line().point_at(t))),
                    Death::Infinite => (Value::from("inf"), Value::Null),
                };
                json!({
                    "dim": p.dim,
                    "birthT": p.birth.to_string(),
                    "deathT": death_t,
                    "birthPoint": grade(&dgm.birth_point(p)),
                    "deathPoint": death_point,
                    "multiplicity": p.multiplicity,
                })
            })
            .collect(),
    )
}

pub fn pushed_criticals(pcs: &[PushedCritical]) -> Value {
    Value::Array(
        pcs.iter()
            .map(|c| json!({ "point": grade(&c.point), "t": c.t.to_string(), "bar": grade(&c.bar) }))
            .collect(),
    )
}

/// Compact encoding with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values always serialize");
    s.push('\n');
    s
}
