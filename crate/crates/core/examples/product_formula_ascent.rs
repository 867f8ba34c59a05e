//! Pairs with a good word where the product formula for m(u,v) still
//! fails, and whether some good word omits only ascents.
//!
//!     cargo run --release --example product_formula_ascent -- D4

use casselman::verify::{default_config, sweep_main_theorem, Context};
use casselman::CartanType;

fn main() -> casselman::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "B3".into());
    let cartan: CartanType = name.parse()?;
    let ctx = Context::new(cartan)?;
    let report = sweep_main_theorem(&ctx, &default_config(cartan), None)?;
    println!(
        "{}: {} pairs with a good word, {} fail the product formula",
        cartan, report.counts.pairs_qualifying, report.counts.failures
    );
    for f in &report.failures {
        let ascending = f.ascending_good_word.map_or("-", |b| if b { "yes" } else { "no" });
        println!("  u = {:<4} v = {:<14} ascending good word: {ascending}", f.u, f.v);
    }
    Ok(())
}
