//! Group lines by the faces their pushed critical values land on, and move a
//! diagram from one line to an equivalent one without recomputing ranks.
//!
//!     cargo run --example line_classes

use std::collections::BTreeSet;

use mpfiber::{dgvf, fiber, fixtures, MorseRank};

fn main() -> mpfiber::Result<()> {
    let f = fixtures::f3();
    let engine = MorseRank::new(f.clone(), dgvf::build_consistent_dgvf(&f))?;
    let closure = engine.closure();
    let (l, l1, l2) = fixtures::f3_lines();

    for (name, line) in [("L", &l), ("L'", &l1), ("L''", &l2)] {
        let sig = fiber::signature(closure, line)?;
        let faces: Vec<String> = sig
            .faces()
            .iter()
            .map(|(c, face)| format!("{c}->{:?}", face.one_based()))
            .collect();
        println!("{name:4} {line}: {}", faces.join(" "));
    }
    println!("L ~ L': {}", fiber::equivalent(closure, &l, &l1)?);
    println!("L ~ L'': {}", fiber::equivalent(closure, &l, &l2)?);

    let degrees = BTreeSet::from([0, 1]);
    let dgm = fiber::fiber_diagram(&engine, &l, &degrees)?;
    let moved = fiber::transfer(&dgm, &l1, closure)?;
    let direct = fiber::fiber_diagram(&engine, &l1, &degrees)?;
    print!("diagram on L:\n{dgm}transferred to L':\n{moved}");
    println!("equals direct computation: {}", moved == direct);

    match fiber::transfer(&dgm, &l2, closure) {
        Err(e) => println!("transfer to L'' refused: {e}"),
        Ok(_) => println!("transfer to L'' unexpectedly allowed"),
    }
    Ok(())
}
