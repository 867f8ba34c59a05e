//! Reflections r_β with t ↦ r_β·t mapping [u, v] onto itself, and the
//! intervals that have none.
//!
//!     cargo run --example stabilizing_reflections -- A4

use casselman::bruhat::stabilizing_reflections;
use casselman::verify::comparable_pairs;
use casselman::{CartanType, KlTable, WeylGroup};

fn main() -> casselman::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A3".into());
    let g = WeylGroup::build(name.parse::<CartanType>()?)?;
    let kl = KlTable::new(&g);

    let mut stabilized = 0;
    let mut free = Vec::new();
    for (u, v) in comparable_pairs(&g).into_iter().filter(|(u, v)| u != v) {
        if stabilizing_reflections(&g, u, v)?.is_empty() {
            free.push((u, v));
        } else {
            stabilized += 1;
        }
    }
    println!("{}: {stabilized} intervals stabilized, {} not", g.cartan(), free.len());
    for (u, v) in free.iter().take(20) {
        println!("  [{}, {}]  P = {}", g.format(*u), g.format(*v), kl.p(*u, *v));
    }
    let violations = free.iter().filter(|&&(u, v)| kl.p(u, v).is_one()).count();
    println!("unstabilized intervals with P(u,v) = 1: {violations}");
    Ok(())
}
