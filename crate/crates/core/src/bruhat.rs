//! Order-theoretic apparatus on a Weyl group: the sets `S(u,v)` and
//! `S′(u,v)`, Deodhar counts, good words, the `⊖` operation and reflections
//! that stabilize Bruhat intervals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kl::KlTable;
use crate::rootsys::RootId;
use crate::weyl::{format_word, WeylElement, WeylGroup};

/// `S(u,v) = {α > 0 : u ≤ v·r_α < v}`, in canonical root order.
pub fn s_set(g: &WeylGroup, u: WeylElement, v: WeylElement) -> Vec<RootId> {
    g.roots()
        .positive()
        .filter(|&a| {
            let vr = g.mul(v, g.reflection(a).unwrap());
            g.length(vr) < g.length(v) && g.bruhat_leq(u, vr)
        })
        .collect()
}

/// `S′(u,v) = {α > 0 : u < u·r_α ≤ v}`, the case `y = u` of Deodhar's set.
pub fn sprime_set(g: &WeylGroup, u: WeylElement, v: WeylElement) -> Vec<RootId> {
    g.roots()
        .positive()
        .filter(|&a| {
            let ur = g.mul(u, g.reflection(a).unwrap());
            g.length(ur) > g.length(u) && g.bruhat_leq(ur, v)
        })
        .collect()
}

/// `{α > 0 : u ≤ y·r_α ≤ v}`.
pub fn deodhar_set(g: &WeylGroup, u: WeylElement, y: WeylElement, v: WeylElement) -> Vec<RootId> {
    g.roots()
        .positive()
        .filter(|&a| {
            let yr = g.mul(y, g.reflection(a).unwrap());
            g.bruhat_leq(u, yr) && g.bruhat_leq(yr, v)
        })
        .collect()
}

pub fn deodhar_count(g: &WeylGroup, u: WeylElement, y: WeylElement, v: WeylElement) -> Result<usize> {
    if !(g.bruhat_leq(u, y) && g.bruhat_leq(y, v)) {
        return Err(Error::Precondition(format!(
            "deodhar_count needs u ≤ y ≤ v, got u={} y={} v={}",
            g.format(u),
            g.format(y),
            g.format(v)
        )));
    }
    Ok(deodhar_set(g, u, y, v).len())
}

/// Whether `|S(u,v)| = l(v) − l(u)`, the hypothesis shared by the good-word
/// and product-formula statements.
pub fn is_tight(g: &WeylGroup, u: WeylElement, v: WeylElement) -> bool {
    g.bruhat_leq(u, v) && s_set(g, u, v).len() == g.length(v) - g.length(u)
}

/// Products `s₁⋯ŝⱼ⋯sₙ` for every position `j` of a word.
fn deletions(g: &WeylGroup, word: &[u8]) -> Vec<WeylElement> {
    let n = word.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(WeylElement::IDENTITY);
    for &s in word {
        let last = *prefix.last().unwrap();
        prefix.push(g.right_mul(last, s as usize));
    }
    let mut suffix = vec![WeylElement::IDENTITY; n + 1];
    for j in (0..n).rev() {
        suffix[j] = g.left_mul(word[j] as usize, suffix[j + 1]);
    }
    (0..n).map(|j| g.mul(prefix[j], suffix[j + 1])).collect()
}

/// Tests whether a reduced word for `v` is good with respect to `u`.
///
/// Returns the ascending (0-based) positions `j` with `u ≤ s₁⋯ŝⱼ⋯sₙ` when
/// deleting all of them at once yields `u`, and `None` otherwise.
pub fn is_good_word(g: &WeylGroup, word: &[u8], u: WeylElement) -> Result<Option<Vec<usize>>> {
    if !g.is_reduced(word)? {
        return Err(Error::NotReduced(word.to_vec()));
    }
    let positions: Vec<usize> = deletions(g, word)
        .into_iter()
        .enumerate()
        .filter(|&(_, x)| g.bruhat_leq(u, x))
        .map(|(j, _)| j)
        .collect();
    let kept: Vec<u8> = word
        .iter()
        .enumerate()
        .filter(|(j, _)| positions.binary_search(j).is_err())
        .map(|(_, &s)| s)
        .collect();
    Ok((g.from_word(&kept)? == u).then_some(positions))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodWord {
    /// Reduced word for `v` (0-based generators).
    pub word: Vec<u8>,
    /// Ascending 0-based positions whose deletion yields `u`.
    pub omitted: Vec<usize>,
    /// `γ_k = sₙ⋯s_{i_k+1}(α_{i_k})` for each omitted position `i_k`.
    pub gammas: Vec<RootId>,
}

impl GoodWord {
    fn new(g: &WeylGroup, word: Vec<u8>, omitted: Vec<usize>) -> Result<Self> {
        let inv = g.inversion_list(&word)?;
        let n = word.len();
        let gammas = omitted.iter().map(|&j| inv[n - 1 - j]).collect();
        Ok(GoodWord { word, omitted, gammas })
    }

    /// Whether every omitted letter `s` is an ascent of the product `x` of
    /// the kept letters before it (`x·s > x`). This is what lets
    /// `ψ(x)·μ(s)` collapse to a scalar multiple of `ψ(x)` at each omitted
    /// step; good words without this property can violate the product
    /// formula (they do in B3, C3, G2 and D4).
    pub fn is_ascending(&self, g: &WeylGroup) -> bool {
        let mut x = WeylElement::IDENTITY;
        let mut omitted = self.omitted.iter().peekable();
        for (j, &s) in self.word.iter().enumerate() {
            if omitted.peek() == Some(&&j) {
                omitted.next();
                if g.length(g.right_mul(x, s as usize)) < g.length(x) {
                    return false;
                }
            } else {
                x = g.right_mul(x, s as usize);
            }
        }
        true
    }

    pub fn to_json(&self, g: &WeylGroup) -> serde_json::Value {
        serde_json::json!({
            "word": format_word(&self.word),
            "omitted": self.omitted.iter().map(|j| j + 1).collect::<Vec<_>>(),
            "gammas": self.gammas.iter().map(|&a| g.roots().coords(a)).collect::<Vec<_>>(),
            "ascending": self.is_ascending(g),
        })
    }
}

/// The first good word whose omitted letters are all ascents (see
/// [`GoodWord::is_ascending`]).
pub fn find_ascending_good_word(g: &WeylGroup, u: WeylElement, v: WeylElement) -> Result<Option<GoodWord>> {
    if !is_tight(g, u, v) {
        return Ok(None);
    }
    for word in g.reduced_words(v) {
        if let Some(omitted) = is_good_word(g, &word, u)? {
            let gw = GoodWord::new(g, word, omitted)?;
            if gw.is_ascending(g) {
                return Ok(Some(gw));
            }
        }
    }
    Ok(None)
}

/// The first good word for `v` with respect to `u` in
/// [`WeylGroup::reduced_words`] order.
pub fn find_good_word(g: &WeylGroup, u: WeylElement, v: WeylElement) -> Result<Option<GoodWord>> {
    if !g.bruhat_leq(u, v) {
        return Err(Error::Precondition(format!("{} ≰ {}", g.format(u), g.format(v))));
    }
    // A good word deletes exactly |S(u,v)| letters, which must equal l(v) − l(u).
    if s_set(g, u, v).len() != g.length(v) - g.length(u) {
        return Ok(None);
    }
    for word in g.reduced_words(v) {
        if let Some(omitted) = is_good_word(g, &word, u)? {
            return Ok(Some(GoodWord::new(g, word, omitted)?));
        }
    }
    Ok(None)
}

/// `u ⊖ s`: `u` if `u < us`, else `us`.
pub fn ominus(g: &WeylGroup, u: WeylElement, s: usize) -> WeylElement {
    let us = g.right_mul(u, s);
    if g.length(us) > g.length(u) {
        u
    } else {
        us
    }
}

/// `[u, v]` in canonical order.
pub fn interval(g: &WeylGroup, u: WeylElement, v: WeylElement) -> Result<Vec<WeylElement>> {
    if !g.bruhat_leq(u, v) {
        return Err(Error::Precondition(format!("{} ≰ {}", g.format(u), g.format(v))));
    }
    Ok((u.index()..=v.index())
        .map(|i| g.element(i))
        .filter(|&t| g.bruhat_leq(u, t) && g.bruhat_leq(t, v))
        .collect())
}

/// All positive β such that `t ↦ r_β·t` maps `[u, v]` onto itself.
pub fn stabilizing_reflections(g: &WeylGroup, u: WeylElement, v: WeylElement) -> Result<Vec<RootId>> {
    if !g.bruhat_lt(u, v) {
        return Err(Error::Precondition(format!("need {} < {}", g.format(u), g.format(v))));
    }
    let iv = interval(g, u, v)?;
    Ok(g.roots()
        .positive()
        .filter(|&b| stabilizes(g, g.reflection(b).unwrap(), &iv, u, v))
        .collect())
}

fn stabilizes(g: &WeylGroup, r: WeylElement, iv: &[WeylElement], u: WeylElement, v: WeylElement) -> bool {
    iv.iter().all(|&t| {
        let rt = g.mul(r, t);
        g.bruhat_leq(u, rt) && g.bruhat_leq(rt, v)
    })
}

/// The first stabilizing reflection in canonical root order.
pub fn stabilizing_reflection(g: &WeylGroup, u: WeylElement, v: WeylElement) -> Result<Option<RootId>> {
    if !g.bruhat_lt(u, v) {
        return Err(Error::Precondition(format!("need {} < {}", g.format(u), g.format(v))));
    }
    let iv = interval(g, u, v)?;
    Ok(g.roots().positive().find(|&b| stabilizes(g, g.reflection(b).unwrap(), &iv, u, v)))
}

/// Everything known about a comparable pair `u ≤ v`.
#[derive(Clone, Debug)]
pub struct PairClassification {
    pub u: WeylElement,
    pub v: WeylElement,
    pub s_set: Vec<RootId>,
    pub sprime_set: Vec<RootId>,
    pub deodhar_tight: bool,
    pub kl_one: bool,
    pub kl_dual_one: bool,
    pub good_word: Option<GoodWord>,
    /// First stabilizing reflection in canonical root order.
    pub stabilizer: Option<RootId>,
    /// Every stabilizing reflection.
    pub stabilizers: Vec<RootId>,
}

pub fn classify(g: &WeylGroup, kl: &KlTable, u: WeylElement, v: WeylElement) -> Result<PairClassification> {
    if !g.bruhat_leq(u, v) {
        return Err(Error::Precondition(format!("{} ≰ {}", g.format(u), g.format(v))));
    }
    let w0 = g.longest_element();
    let s = s_set(g, u, v);
    let d = g.length(v) - g.length(u);
    let stabilizers = if u == v { Vec::new() } else { stabilizing_reflections(g, u, v)? };
    Ok(PairClassification {
        u,
        v,
        deodhar_tight: s.len() == d,
        sprime_set: sprime_set(g, u, v),
        s_set: s,
        kl_one: kl.p(u, v).is_one(),
        kl_dual_one: kl.p(g.mul(w0, v), g.mul(w0, u)).is_one(),
        good_word: find_good_word(g, u, v)?,
        stabilizer: stabilizers.first().copied(),
        stabilizers,
    })
}

#[derive(Serialize)]
struct PairJson<'a> {
    cartan_type: String,
    u: String,
    v: String,
    length_difference: usize,
    s_set: Vec<&'a [i32]>,
    sprime_set: Vec<&'a [i32]>,
    deodhar_tight: bool,
    kl_one: bool,
    kl_dual_one: bool,
    good_word: Option<serde_json::Value>,
    stabilizer: Option<&'a [i32]>,
    stabilizers: Vec<&'a [i32]>,
    /// Right-hand sides of the two product formulas in factored form.
    product_formulas: serde_json::Value,
}

/// `sign · ∏ R(α)^{exponent}` as `{sign, factors: [{root, exponent}]}`.
fn factored(g: &WeylGroup, sign: i32, roots: &[RootId]) -> serde_json::Value {
    serde_json::json!({
        "sign": sign,
        "factors": roots
            .iter()
            .map(|&a| serde_json::json!({"root": g.roots().coords(a), "exponent": 1}))
            .collect::<Vec<_>>(),
    })
}

impl PairClassification {
    pub fn to_json(&self, g: &WeylGroup) -> serde_json::Value {
        let rs = g.roots();
        serde_json::to_value(PairJson {
            cartan_type: g.cartan().to_string(),
            u: g.format(self.u),
            v: g.format(self.v),
            length_difference: g.length(self.v) - g.length(self.u),
            s_set: self.s_set.iter().map(|&a| rs.coords(a)).collect(),
            sprime_set: self.sprime_set.iter().map(|&a| rs.coords(a)).collect(),
            deodhar_tight: self.deodhar_tight,
            kl_one: self.kl_one,
            kl_dual_one: self.kl_dual_one,
            good_word: self.good_word.as_ref().map(|gw| gw.to_json(g)),
            stabilizer: self.stabilizer.map(|b| rs.coords(b)),
            stabilizers: self.stabilizers.iter().map(|&b| rs.coords(b)).collect(),
            product_formulas: serde_json::json!({
                "m": factored(g, 1, &self.s_set),
                "mtilde": factored(g, if self.sprime_set.len().is_multiple_of(2) { 1 } else { -1 }, &self.sprime_set),
            }),
        })
        .expect("classification serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::build(s.parse().unwrap()).unwrap()
    }

    fn coords(g: &WeylGroup, set: &[RootId]) -> Vec<Vec<i32>> {
        set.iter().map(|&a| g.roots().coords(a).to_vec()).collect()
    }

    #[test]
    fn s_set_examples() {
        let g = group("A2");
        let p = |s| g.parse(s).unwrap();
        // not convex
        assert_eq!(coords(&g, &s_set(&g, p("1"), p("121"))), vec![vec![1, 0], vec![0, 1]]);
        // contains no simple root
        assert_eq!(coords(&g, &s_set(&g, p("2"), p("12"))), vec![vec![1, 1]]);
        for v in g.elements() {
            assert_eq!(s_set(&g, WeylElement::IDENTITY, v), g.inversion_set(v));
        }
    }

    #[test]
    fn sprime_set_examples() {
        let g = group("A2");
        let p = |s| g.parse(s).unwrap();
        for u in g.elements() {
            assert!(sprime_set(&g, u, u).is_empty());
        }
        // reflections strictly below s₁s₂: s₁ and s₂ (r_{α₁+α₂} = w₀ is not)
        assert_eq!(coords(&g, &sprime_set(&g, p(""), p("12"))), vec![vec![1, 0], vec![0, 1]]);
        let a1 = group("A1");
        assert_eq!(sprime_set(&a1, WeylElement::IDENTITY, a1.parse("1").unwrap()).len(), 1);
    }

    #[test]
    fn deodhar_examples() {
        let g = group("A2");
        let w0 = g.longest_element();
        assert_eq!(deodhar_count(&g, w0, w0, w0).unwrap(), 0);
        assert_eq!(deodhar_count(&g, WeylElement::IDENTITY, w0, w0).unwrap(), 3);
        assert!(deodhar_count(&g, w0, WeylElement::IDENTITY, w0).is_err());
    }

    #[test]
    fn good_word_examples() {
        let g = group("A2");
        let s1 = g.parse("1").unwrap();
        assert_eq!(is_good_word(&g, &[0, 1, 0], s1).unwrap(), None);
        assert_eq!(is_good_word(&g, &[1, 0, 1], s1).unwrap(), Some(vec![0, 2]));
        assert!(matches!(is_good_word(&g, &[0, 0], s1), Err(Error::NotReduced(_))));
        let gw = find_good_word(&g, s1, g.longest_element()).unwrap().unwrap();
        assert_eq!(format_word(&gw.word), "212");
        assert_eq!(gw.gammas.len(), 2);
        let mut gam = gw.gammas.clone();
        gam.sort();
        assert_eq!(gam, s_set(&g, s1, g.longest_element()));

        let v = g.parse("12").unwrap();
        for word in g.reduced_words(v) {
            assert_eq!(is_good_word(&g, &word, v).unwrap(), Some(vec![]));
        }

        let b2 = group("B2");
        assert!(find_good_word(&b2, b2.parse("1").unwrap(), b2.parse("121").unwrap())
            .unwrap()
            .is_none());
        assert!(find_good_word(&b2, b2.parse("12").unwrap(), b2.parse("1").unwrap()).is_err());
    }

    #[test]
    fn ominus_examples() {
        let g = group("A2");
        let p = |s| g.parse(s).unwrap();
        assert_eq!(ominus(&g, p(""), 0), p(""));
        assert_eq!(ominus(&g, p(""), 1), p(""));
        assert_eq!(ominus(&g, p("1"), 0), p(""));
        assert_eq!(ominus(&g, p("12"), 0), p("12"));
    }

    #[test]
    fn interval_examples() {
        let g = group("A3");
        let w0 = g.longest_element();
        assert_eq!(interval(&g, w0, w0).unwrap(), vec![w0]);
        assert_eq!(interval(&g, WeylElement::IDENTITY, w0).unwrap().len(), 24);
        assert!(interval(&g, w0, WeylElement::IDENTITY).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let a1 = group("A1");
        let b = stabilizing_reflection(&a1, WeylElement::IDENTITY, a1.parse("1").unwrap()).unwrap();
        assert_eq!(b, Some(a1.roots().simple_root(0)));

        let a3 = group("A3");
        let p = |s| a3.parse(s).unwrap();
        assert_eq!(stabilizing_reflection(&a3, p("2"), p("2132")).unwrap(), None);
        assert_eq!(stabilizing_reflection(&a3, p("13"), p("13213")).unwrap(), None);
        assert!(stabilizing_reflection(&a3, p("2"), p("2")).is_err());
    }
}
