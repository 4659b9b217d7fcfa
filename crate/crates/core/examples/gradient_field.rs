//! Build a consistent discrete gradient vector field, validate it, list the
//! critical cells, and watch a sublevel complex collapse along the pairs.
//!
//!     cargo run --example gradient_field

use mpfiber::dgvf::{self, GradientVectorField};
use mpfiber::{fixtures, homology, Grade};

fn main() -> mpfiber::Result<()> {
    let f = fixtures::f4_two_level();
    let v = dgvf::build_consistent_dgvf(&f);
    print!("greedy field:\n{}", v.to_dgvf());

    let matching = dgvf::check_matching(&f, &v)?;
    println!("matching ok: {}", matching.is_valid());
    println!("acyclic: {}", dgvf::check_acyclic(&f, &v)?);
    println!("consistent: {}", dgvf::check_consistent(&f, &v)?);

    let crit = dgvf::critical_cells(&f, &v)?;
    for (p, cells) in &crit.by_degree {
        let names: Vec<String> = cells.iter().map(|s| s.to_string()).collect();
        println!("critical in degree {p}: {}", names.join(" "));
    }
    let betti = homology::betti_numbers(&f.full_complex());
    println!("betti numbers of the full complex: {betti:?}");

    // collapse the full complex down to grade (0,0)
    let top = f.top_grade().expect("non-empty");
    let target = Grade::zero(f.n());
    let rest = dgvf::collapse_toward_with(&f, &v, &top, &target, |k, (s, t)| {
        println!("  collapse {s} into {t}, {} simplices left", k.len());
    })?;
    println!("collapsed onto K at {target}: {} simplices", rest.len());

    // a field that pairs across grades is rejected
    let bad = GradientVectorField::parse("2 ; 2 3\n")?;
    println!("pairing c with cd consistent: {}", dgvf::check_consistent(&f, &bad)?);
    Ok(())
}
