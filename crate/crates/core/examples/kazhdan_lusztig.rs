//! Kazhdan–Lusztig polynomials: the singular ones in a group, and μ.
//!
//!     cargo run --example kazhdan_lusztig -- A4

use std::collections::BTreeMap;

use casselman::verify::comparable_pairs;
use casselman::{CartanType, KlTable, WeylGroup};

fn main() -> casselman::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A3".into());
    let g = WeylGroup::build(name.parse::<CartanType>()?)?;
    let kl = KlTable::new(&g);

    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    for (u, v) in comparable_pairs(&g) {
        *census.entry(kl.p(u, v).to_string()).or_default() += 1;
    }
    println!("{}: distinct P_(u,v) over {} pairs", g.cartan(), g.bruhat_pair_count());
    for (p, n) in &census {
        println!("  {n:6}  {p}");
    }

    let e = g.element(0);
    let w0 = g.longest_element();
    println!("P(1, w0) = {}", kl.p(e, w0));
    let edges = comparable_pairs(&g).into_iter().filter(|&(u, v)| kl.prec(u, v)).count();
    println!("pairs with u ≺ v: {edges}");
    Ok(())
}
