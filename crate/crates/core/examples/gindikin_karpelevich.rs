//! m(1, v) against the product of (1 − q⁻¹z^α)/(1 − z^α) over the
//! inversions of v, exactly over ℚ.
//!
//!     cargo run --example gindikin_karpelevich -- G2

use casselman::scalars::random_rational_point;
use casselman::{CartanType, HeckeAlgebra, WeylElement, WeylGroup};

fn main() -> casselman::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "B2".into());
    let g = WeylGroup::build(name.parse::<CartanType>()?)?;
    let z = random_rational_point(g.roots(), 0)?;
    let h = HeckeAlgebra::new(&g, z.q.clone())?;
    let table = h.m_table(&z)?;

    for v in g.elements() {
        let mut product = z.backend().one();
        for a in g.inversion_set(v) {
            product = product * z.gk_factor(g.roots(), a)?;
        }
        let m = &table[WeylElement::IDENTITY.index()][v.index()];
        println!("{:>8}  {}  {}", g.format(v), if *m == product { "ok" } else { "MISMATCH" }, m);
    }
    Ok(())
}
