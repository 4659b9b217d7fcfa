//! Compute the persistence diagram of a filtration restricted to a line of
//! positive slope, and check it against a standard column reduction.
//!
//!     cargo run --example fiber_diagram -- "base=0,3 dir=7,4"

use std::collections::BTreeSet;

use mpfiber::{dgvf, fiber, fixtures, homology, Line, MorseRank};

fn main() -> mpfiber::Result<()> {
    let line = match std::env::args().nth(1) {
        Some(lit) => Line::parse_literal(&lit)?,
        None => fixtures::f3_lines().0,
    };
    let f = fixtures::f3();
    let engine = MorseRank::new(f.clone(), dgvf::build_consistent_dgvf(&f))?;

    println!("line {line}");
    for pc in fiber::pushed_criticals(engine.closure(), &line)? {
        println!("  t = {} at {} (bar {})", pc.t, pc.point, pc.bar);
    }

    let degrees = BTreeSet::from([0, 1]);
    let dgm = fiber::fiber_diagram(&engine, &line, &degrees)?;
    print!("{dgm}");
    for p in dgm.points() {
        let death = dgm.death_point(p).map_or("never".to_string(), |g| g.to_string());
        println!("  H{} born at {} dies at {}", p.dim, dgm.birth_point(p), death);
    }

    let oracle = homology::line_persistence_reduction(&f, &line, &degrees)?;
    println!("matches column reduction: {}", dgm == oracle);
    Ok(())
}
