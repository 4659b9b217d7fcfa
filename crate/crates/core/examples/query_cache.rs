//! Answer many line queries from a cache holding one diagram per equivalence
//! class, then save and reload the cache as JSON.
//!
//!     cargo run --release --example query_cache

use std::collections::BTreeSet;
use std::sync::Arc;

use mpfiber::random::{self, FiltrationParams};
use mpfiber::{dgvf, MorseRank, QueryCache};
use rand::SeedableRng;

fn main() -> mpfiber::Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let params = FiltrationParams { n: 2, max_simplices: 24, ..FiltrationParams::default() };
    let f = random::random_filtration(&mut rng, &params);
    let engine = Arc::new(MorseRank::new(f.clone(), dgvf::build_consistent_dgvf(&f))?);
    println!("{} simplices, {} closure values", f.len(), engine.closure().len());

    let cache = QueryCache::new(engine.clone());
    let seeds: Vec<_> = (0..50).map(|_| random::random_line(&mut rng, 2)).collect();
    let stats = cache.precompute(seeds);
    println!("precompute: {} classes, {} duplicates", stats.classes_discovered, stats.duplicates);

    let degrees: BTreeSet<usize> = cache.all_degrees().clone();
    let (mut hits, mut misses, mut cached_us, mut direct_us) = (0, 0, 0u128, 0u128);
    for _ in 0..300 {
        let line = random::random_line(&mut rng, 2);
        let r = cache.query(&line, &degrees)?;
        match r.status {
            mpfiber::cache::CacheStatus::Hit => hits += 1,
            mpfiber::cache::CacheStatus::Miss => misses += 1,
        }
        cached_us += r.micros;
        let start = std::time::Instant::now();
        let direct = cache.compute_direct(&line, &degrees)?;
        direct_us += start.elapsed().as_micros();
        assert_eq!(r.diagram, direct);
    }
    println!("300 queries: {hits} hits, {misses} misses, {} classes now", cache.class_count());
    println!("time: cached {cached_us} us, direct {direct_us} us");

    let snapshot = cache.snapshot_json();
    let restored = QueryCache::new(engine);
    let loaded = restored.load_snapshot_json(&snapshot)?;
    println!("snapshot of {} bytes reloaded {loaded} classes", snapshot.len());
    Ok(())
}
