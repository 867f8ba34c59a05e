//! Good words: the A2 example, then a census over a group.
//!
//!     cargo run --example good_words -- D4

use casselman::bruhat::{find_good_word, is_good_word, is_tight};
use casselman::verify::comparable_pairs;
use casselman::weyl::{format_word, parse_word};
use casselman::{CartanType, WeylGroup};

fn main() -> casselman::Result<()> {
    let a2 = WeylGroup::build("A2".parse()?)?;
    let u = a2.parse("1")?;
    for w in ["121", "212"] {
        let verdict = is_good_word(&a2, &parse_word(w)?, u)?;
        println!("A2: {w} for u = σ1 -> {verdict:?}");
    }

    let name = std::env::args().nth(1).unwrap_or_else(|| "A4".into());
    let g = WeylGroup::build(name.parse::<CartanType>()?)?;
    let (mut tight, mut good) = (0, 0);
    let mut missing = Vec::new();
    for (u, v) in comparable_pairs(&g) {
        if !is_tight(&g, u, v) {
            continue;
        }
        tight += 1;
        match find_good_word(&g, u, v)? {
            Some(_) => good += 1,
            None => missing.push(format!("({}, {})", g.format(u), g.format(v))),
        }
    }
    println!("{}: {tight} pairs with |S(u,v)| = l(v) − l(u), {good} with a good word", g.cartan());
    if !missing.is_empty() {
        println!("without one: {}", missing.join(" "));
    }
    if let Some(gw) = find_good_word(&g, g.element(1), g.longest_element())? {
        println!("sample: {} omitting positions {:?}", format_word(&gw.word), gw.omitted);
    }
    Ok(())
}
