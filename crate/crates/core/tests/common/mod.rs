//! Helpers shared by the integration tests: independent oracles and the
//! property checks run both by the property tests and by the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use casselman::bruhat::{deodhar_count, interval};
use casselman::hecke::HeckeAlgebra;
use casselman::kl::IntPolynomial;
use casselman::scalars::{random_generic_point, MERSENNE_61};
use casselman::verify::{comparable_pairs, Context};
use casselman::{SpectralPoint, WeylElement, WeylGroup};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn group(name: &str) -> WeylGroup {
    WeylGroup::build(name.parse().unwrap()).unwrap()
}

pub fn context(name: &str) -> Context {
    Context::new(name.parse().unwrap()).unwrap()
}

pub fn el(g: &WeylGroup, word: &str) -> WeylElement {
    g.parse(word).unwrap()
}

pub fn points(g: &WeylGroup, n: usize, seed: u64) -> Vec<SpectralPoint> {
    (0..n).map(|k| random_generic_point(g.roots(), MERSENNE_61, seed + k as u64).unwrap()).collect()
}

/// `k` items chosen with a fixed seed (all of them if `k` is `None`).
pub fn pick<T: Clone>(items: &[T], k: Option<usize>, seed: u64) -> Vec<T> {
    match k {
        Some(k) if k < items.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            items.choose_multiple(&mut rng, k).cloned().collect()
        }
        _ => items.to_vec(),
    }
}

// ---------------------------------------------------------------------------
// Subword criterion

/// For each `v`, every product of a subword of one fixed reduced word of `v`.
pub fn subword_closure(g: &WeylGroup) -> Vec<HashSet<WeylElement>> {
    g.elements()
        .map(|v| {
            let w = g.word(v);
            (0u32..1 << w.len())
                .map(|mask| {
                    let sub: Vec<u8> =
                        w.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
                    g.from_word(&sub).unwrap()
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Kazhdan–Lusztig polynomials from the bar involution

/// Laurent polynomial in `v = q^{1/2}`: exponent ↦ coefficient.
type Laurent = BTreeMap<i32, i64>;

fn l_add(a: &mut Laurent, b: &Laurent, scale: i64, shift: i32) {
    for (&e, &c) in b {
        *a.entry(e + shift).or_insert(0) += scale * c;
    }
    a.retain(|_, c| *c != 0);
}

fn l_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&e, &c) in a {
        l_add(&mut out, b, c, e);
    }
    out
}

fn l_bar(a: &Laurent) -> Laurent {
    a.iter().map(|(&e, &c)| (-e, c)).collect()
}

/// `h · T_s⁻¹` with `T_s⁻¹ = q⁻¹ T_s + (q⁻¹ − 1)`, in the `T_w` basis.
fn times_t_inverse(g: &WeylGroup, h: &[Laurent], s: usize) -> Vec<Laurent> {
    let mut hts = vec![Laurent::new(); h.len()];
    for w in g.elements() {
        let c = &h[w.index()];
        if c.is_empty() {
            continue;
        }
        let ws = g.right_mul(w, s);
        if g.length(ws) > g.length(w) {
            l_add(&mut hts[ws.index()], c, 1, 0);
        } else {
            l_add(&mut hts[ws.index()], c, 1, 2);
            l_add(&mut hts[w.index()], c, 1, 2);
            l_add(&mut hts[w.index()], c, -1, 0);
        }
    }
    let mut out = vec![Laurent::new(); h.len()];
    for i in 0..h.len() {
        l_add(&mut out[i], &hts[i], 1, -2);
        l_add(&mut out[i], &h[i], 1, -2);
        l_add(&mut out[i], &h[i], -1, 0);
    }
    out
}

/// `P_{x,w}` for all `x, w`, computed as the coefficients of the unique
/// bar-invariant `C′_w = Σ_x h_{x,w} T̃_x` with `h_{w,w} = 1` and
/// `h_{x,w} ∈ v⁻¹ℤ[v⁻¹]` otherwise. Uses only multiplication and lengths
/// in `W`, not the Bruhat order or any recursion on polynomials.
pub fn kl_by_bar_involution(g: &WeylGroup) -> Vec<Vec<IntPolynomial>> {
    let n = g.order();
    let len = |w: WeylElement| g.length(w) as i32;
    // r[x][y]: coefficient of T̃_x in bar(T̃_y).
    let mut r = vec![vec![Laurent::new(); n]; n];
    for y in g.elements() {
        let mut h = vec![Laurent::new(); n];
        h[0].insert(0, 1);
        for &s in g.word(y) {
            h = times_t_inverse(g, &h, s as usize);
        }
        for x in g.elements() {
            let mut c = Laurent::new();
            l_add(&mut c, &h[x.index()], 1, len(x) + len(y));
            r[x.index()][y.index()] = c;
        }
    }
    let mut p = vec![vec![IntPolynomial::zero(); n]; n];
    for w in g.elements() {
        let mut h = vec![Laurent::new(); n];
        h[w.index()].insert(0, 1);
        for xi in (0..w.index()).rev() {
            let mut a = Laurent::new();
            for yi in xi + 1..=w.index() {
                if !h[yi].is_empty() && !r[xi][yi].is_empty() {
                    let t = l_mul(&l_bar(&h[yi]), &r[xi][yi]);
                    l_add(&mut a, &t, 1, 0);
                }
            }
            // a = h − bar(h) must be bar-antisymmetric
            assert_eq!(a, l_bar(&a).into_iter().map(|(e, c)| (e, -c)).collect::<Laurent>());
            h[xi] = a.into_iter().filter(|&(e, _)| e < 0).collect();
        }
        for x in g.elements() {
            let shifted: Laurent = h[x.index()].iter().map(|(&e, &c)| (e + len(w) - len(x), c)).collect();
            let top = shifted.keys().next_back().copied().unwrap_or(0);
            let mut coeffs = vec![0i64; (top.max(0) / 2 + 1) as usize];
            for (e, c) in shifted {
                assert!(e >= 0 && e % 2 == 0, "P_{{x,w}} is not a polynomial in q");
                coeffs[(e / 2) as usize] = c;
            }
            p[x.index()][w.index()] = IntPolynomial::from_coeffs(coeffs);
        }
    }
    p
}

// ---------------------------------------------------------------------------
// Property checks. Each returns a description of every violation found.

pub type Violations = Vec<String>;

pub fn lifting_property(g: &WeylGroup, pairs: &[(WeylElement, WeylElement)]) -> Violations {
    let mut bad = Vec::new();
    for &(x, y) in pairs {
        for s in 0..g.rank() {
            let (xs, ys) = (g.right_mul(x, s), g.right_mul(y, s));
            let a = g.bruhat_leq(xs, y) || g.bruhat_leq(xs, ys);
            let b = g.bruhat_leq(x, ys) || g.bruhat_leq(xs, ys);
            if !(a && b) {
                bad.push(format!("x={} y={} s={}", g.format(x), g.format(y), s + 1));
            }
        }
    }
    bad
}

pub fn stable_interval(g: &WeylGroup, us: &[WeylElement]) -> Violations {
    let mut bad = Vec::new();
    for &u in us {
        for s in 0..g.rank() {
            let ascent = g.length(g.right_mul(u, s)) > g.length(u);
            for x in g.elements() {
                let xs = g.right_mul(x, s);
                let ok = if ascent {
                    g.bruhat_leq(u, x) == g.bruhat_leq(u, xs)
                } else {
                    g.bruhat_leq(x, u) == g.bruhat_leq(xs, u)
                };
                if !ok {
                    bad.push(format!("u={} s={} x={}", g.format(u), s + 1, g.format(x)));
                }
            }
        }
    }
    bad
}

/// `w(α) < 0 ⇒ w·r_α < w` and `w(α) > 0 ⇒ w < w·r_α`.
pub fn reflection_criterion(g: &WeylGroup) -> Violations {
    let rs = g.roots();
    let mut bad = Vec::new();
    for w in g.elements() {
        for a in rs.positive() {
            let wr = g.mul(w, g.reflection(a).unwrap());
            let ok = if rs.is_positive(g.act_on_root(w, a)) { g.bruhat_lt(w, wr) } else { g.bruhat_lt(wr, w) };
            if !ok {
                bad.push(format!("w={} α={:?}", g.format(w), rs.coords(a)));
            }
        }
    }
    bad
}

/// `ψ(u)t_s = qψ(u)` and `ψ(u)μ_z(s) = R(α_s)ψ(u)` whenever `us > u`.
pub fn first_useful_fact(g: &WeylGroup, us: &[WeylElement], zs: &[SpectralPoint]) -> Violations {
    let mut bad = Vec::new();
    for z in zs {
        let h = HeckeAlgebra::new(g, z.q.clone()).unwrap();
        for &u in us {
            let psi = h.psi(u);
            for s in 0..g.rank() {
                if g.length(g.right_mul(u, s)) < g.length(u) {
                    continue;
                }
                if h.mult_basis_right(&psi, s) != psi.scale(&z.q) {
                    bad.push(format!("ψ({})t_{} ≠ qψ", g.format(u), s + 1));
                }
                let r = z.gk_factor(g.roots(), g.roots().simple_root(s)).unwrap();
                if h.mul(&psi, &h.mu_simple(s, z).unwrap()) != psi.scale(&r) {
                    bad.push(format!("ψ({})μ(s_{}) ≠ Rψ", g.format(u), s + 1));
                }
            }
        }
    }
    bad
}

/// `ψ(us)t_s − qψ(u)` is supported on `{w ≥ us}` whenever `us > u`.
pub fn second_useful_fact(g: &WeylGroup, us: &[WeylElement], z: &SpectralPoint) -> Violations {
    let h = HeckeAlgebra::new(g, z.q.clone()).unwrap();
    let mut bad = Vec::new();
    for &u in us {
        for s in 0..g.rank() {
            let u_s = g.right_mul(u, s);
            if g.length(u_s) < g.length(u) {
                continue;
            }
            let diff = h.mult_basis_right(&h.psi(u_s), s).sub(&h.psi(u).scale(&z.q));
            if !diff.supported_above(g, u_s) {
                bad.push(format!("u={} s={}", g.format(u), s + 1));
            }
        }
    }
    bad
}

/// `μ_z(w)` is the same along (up to `max_words`) different reduced words.
pub fn mu_word_independence(
    g: &WeylGroup,
    ws: &[WeylElement],
    zs: &[SpectralPoint],
    max_words: usize,
) -> Violations {
    let mut bad = Vec::new();
    for z in zs {
        let h = HeckeAlgebra::new(g, z.q.clone()).unwrap();
        for &w in ws {
            let reference = h.mu(w, z).unwrap();
            for word in g.reduced_words(w).take(max_words) {
                if h.mu_word(&word, z).unwrap() != reference {
                    bad.push(format!("w={} word={:?}", g.format(w), word));
                }
            }
        }
    }
    bad
}

pub fn deodhar_inequality(g: &WeylGroup, pairs: &[(WeylElement, WeylElement)]) -> Violations {
    let mut bad = Vec::new();
    for &(u, v) in pairs {
        let d = g.length(v) - g.length(u);
        for y in interval(g, u, v).unwrap() {
            if deodhar_count(g, u, y, v).unwrap() < d {
                bad.push(format!("u={} y={} v={}", g.format(u), g.format(y), g.format(v)));
            }
        }
    }
    bad
}

/// Every interval `[u, v]` with `u < v` has as many even- as odd-length elements.
pub fn even_odd_balance(g: &WeylGroup, pairs: &[(WeylElement, WeylElement)]) -> Violations {
    pairs
        .iter()
        .filter(|(u, v)| u != v)
        .filter(|&&(u, v)| {
            let iv = interval(g, u, v).unwrap();
            let even = iv.iter().filter(|&&t| g.length(t).is_multiple_of(2)).count();
            2 * even != iv.len()
        })
        .map(|&(u, v)| format!("u={} v={}", g.format(u), g.format(v)))
        .collect()
}

pub fn all_pairs(g: &WeylGroup) -> Vec<(WeylElement, WeylElement)> {
    comparable_pairs(g)
}

pub fn all_elements(g: &WeylGroup) -> Vec<WeylElement> {
    g.elements().collect()
}
