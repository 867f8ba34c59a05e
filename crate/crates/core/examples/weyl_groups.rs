//! Enumerates a Weyl group and prints its elements, root data and Bruhat
//! statistics.
//!
//!     cargo run --example weyl_groups -- B3

use casselman::{CartanType, WeylGroup};

fn main() -> casselman::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A3".into());
    let g = WeylGroup::build(name.parse::<CartanType>()?)?;
    let rs = g.roots();

    println!("{}: |W| = {}, {} positive roots", g.cartan(), g.order(), rs.num_positive());
    println!("Cartan matrix: {:?}", rs.cartan_matrix());
    println!("w0 = {} (length {})", g.format(g.longest_element()), g.length(g.longest_element()));
    println!("Bruhat pairs u ≤ v: {}", g.bruhat_pair_count());

    for a in rs.positive() {
        let r = g.reflection(a)?;
        println!("  r{:?} = {}", rs.coords(a), g.format(r));
    }
    let mut by_length = vec![0usize; g.length(g.longest_element()) + 1];
    for w in g.elements() {
        by_length[g.length(w)] += 1;
    }
    println!("elements by length: {by_length:?}");
    println!("reduced words of w0: {}", g.reduced_words(g.longest_element()).count());
    Ok(())
}
