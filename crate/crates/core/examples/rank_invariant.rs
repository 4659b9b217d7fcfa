//! Evaluate the rank invariant through critical values and compare it with a
//! direct homology computation on random comparable pairs.
//!
//!     cargo run --example rank_invariant

use mpfiber::{dgvf, fixtures, homology, random, MorseRank};
use rand::SeedableRng;

fn main() -> mpfiber::Result<()> {
    let f = fixtures::f3();
    let engine = MorseRank::new(f.clone(), dgvf::build_consistent_dgvf(&f))?;
    let closure = engine.closure();
    println!("critical values: {}", list(closure.base()));
    println!("closure:         {}", list(closure.closed()));

    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..200 {
        let (u, v) = random::random_comparable_pair(&mut rng, closure, 9);
        for i in 0..=1 {
            let fast = engine.rank(i, &u, &v)?;
            let slow = homology::rank_inclusion(&f.sublevel_complex(&u)?, &f.sublevel_complex(&v)?, i)?;
            assert_eq!(fast, slow, "rank_{i}({u}, {v})");
            checked += 1;
        }
    }
    println!("{checked} ranks agree with the homology oracle, memo holds {} entries", engine.memo_len());

    let u = mpfiber::Grade::from_ints(&[2, 3]);
    let v = mpfiber::Grade::from_ints(&[7, 6]);
    println!("bar{u} = {:?}", engine.bar(&u)?.map(|g| g.to_string()));
    println!("rank_0({u}, {v}) = {}", engine.rank(0, &u, &v)?);
    println!("rank_1({v}, {v}) = {}", engine.rank(1, &v, &v)?);
    Ok(())
}

fn list(gs: &[mpfiber::Grade]) -> String {
    gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}
