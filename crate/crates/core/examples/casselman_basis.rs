//! The transition matrices m and m̃ at a random point, and the Casselman
//! basis vectors in the ψ basis.
//!
//!     cargo run --example casselman_basis -- A2 7

use casselman::hecke::casselman_to_psi;
use casselman::scalars::{random_generic_point, MERSENNE_61};
use casselman::{CartanType, HeckeAlgebra, WeylGroup};

fn main() -> casselman::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "A2".into());
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let g = WeylGroup::build(name.parse::<CartanType>()?)?;

    let z = random_generic_point(g.roots(), MERSENNE_61, seed)?;
    println!("{} over F_p, p = {MERSENNE_61}, seed {seed}", g.cartan());
    println!("z = {:?}, q = {}", z.zbar.iter().map(ToString::to_string).collect::<Vec<_>>(), z.q);

    let show = |w| match g.format(w) {
        s if s.is_empty() => "e".to_string(),
        s => s,
    };
    let h = HeckeAlgebra::new(&g, z.q.clone())?;
    let tm = h.m_matrix(&z)?;
    for u in g.elements() {
        for v in g.elements().filter(|&v| g.bruhat_lt(u, v)) {
            println!("m({}, {}) = {}   m̃ = {}", show(u), show(v), tm.m(u, v), tm.mtilde(u, v));
        }
    }
    for v in g.elements() {
        let coeffs = casselman_to_psi(v, &tm);
        let terms: Vec<String> = g
            .elements()
            .filter(|u| !coeffs[u.index()].is_zero())
            .map(|u| format!("{}·ψ[{}]", coeffs[u.index()], show(u)))
            .collect();
        println!("f[{}] = {}", show(v), terms.join(" + "));
    }
    Ok(())
}
