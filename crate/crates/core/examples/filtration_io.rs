//! Parse a one-critical filtration, inspect sublevel complexes and print the
//! canonical `.ocf` form.
//!
//!     cargo run --example filtration_io -- crates/core/data/f3.ocf

use mpfiber::{homology, Grade, OneCriticalFiltration};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => mpfiber::fixtures::F3_OCF.to_string(),
    };
    let f = OneCriticalFiltration::parse(&text)?;
    println!("{} simplices in {} parameters, max dimension {:?}", f.len(), f.n(), f.max_dim());

    for (s, g) in f.simplices().iter().zip(f.grades()) {
        println!("  {s} enters at {g}");
    }

    // a few grades along the diagonal, up to the top grade
    let top = f.top_grade().unwrap_or_else(|| Grade::zero(f.n()));
    let steps = top.coords().iter().map(|c| c.ceil().to_integer()).max().unwrap_or_default();
    for k in 0..=steps.try_into().unwrap_or(0i64) {
        let u = Grade::from_ints(&vec![k; f.n()]);
        let sub = f.sublevel_complex(&u)?;
        println!("K at {u}: {} simplices, betti {:?}", sub.len(), homology::betti_numbers(&sub));
    }

    print!("\ncanonical form:\n{}", f.to_ocf());
    Ok(())
}
