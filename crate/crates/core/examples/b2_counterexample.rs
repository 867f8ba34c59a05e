//! In B2 the product formula for m(u,v) fails at (σ1, σ1σ2σ1) although the
//! pair is tight and both KL polynomials are 1. No reduced word for v is
//! good with respect to u.

use casselman::bruhat::{find_good_word, is_good_word, s_set};
use casselman::scalars::random_rational_point;
use casselman::weyl::format_word;
use casselman::{HeckeAlgebra, KlTable, WeylGroup};

fn main() -> casselman::Result<()> {
    let g = WeylGroup::build("B2".parse()?)?;
    let kl = KlTable::new(&g);
    let (u, v) = (g.parse("1")?, g.parse("121")?);
    let w0 = g.longest_element();
    let s = s_set(&g, u, v);

    println!("S(u,v) = {:?}", s.iter().map(|&a| g.roots().coords(a)).collect::<Vec<_>>());
    println!("P(u,v) = {}, P(w0v, w0u) = {}", kl.p(u, v), kl.p(g.mul(w0, v), g.mul(w0, u)));
    for word in g.reduced_words(v) {
        println!("  {} good: {}", format_word(&word), is_good_word(&g, &word, u)?.is_some());
    }
    assert!(find_good_word(&g, u, v)?.is_none());

    let z = random_rational_point(g.roots(), 1)?;
    let h = HeckeAlgebra::new(&g, z.q.clone())?;
    let m = h.m_value(u, v, &z)?;
    let product = s.iter().try_fold(z.backend().one(), |acc, &a| Ok::<_, casselman::Error>(acc * z.gk_factor(g.roots(), a)?))?;
    println!("z = {:?}, q = {}", z.zbar.iter().map(ToString::to_string).collect::<Vec<_>>(), z.q);
    println!("m(u,v)  = {m}");
    println!("product = {product}");
    Ok(())
}
