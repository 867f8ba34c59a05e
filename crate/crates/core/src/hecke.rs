//! The finite Iwahori–Hecke algebra specialized at a field value of `q`.
//!
//! Elements are sparse in the basis `t_w`. The only multiplication primitive
//! is right multiplication by a simple generator:
//!
//! `t_w t_s = t_{ws}` if `ws > w`, and `q t_{ws} + (q − 1) t_w` otherwise.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{sign, Backend, FieldElement, SpectralPoint};
use crate::weyl::{WeylElement, WeylGroup};

/// An element of the Hecke algebra in the `t_w` basis. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    coeffs: BTreeMap<WeylElement, FieldElement>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement { coeffs: BTreeMap::new() }
    }

    /// `c · t_w`.
    pub fn basis(w: WeylElement, c: FieldElement) -> Self {
        let mut h = Self::zero();
        h.add_term(w, c);
        h
    }

    pub fn coeff(&self, w: WeylElement) -> Option<&FieldElement> {
        self.coeffs.get(&w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (WeylElement, &FieldElement)> {
        self.coeffs.iter().map(|(&w, c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, w: WeylElement, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.coeffs.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.coeffs.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, -c);
        }
        out
    }

    pub fn scale(&self, a: &FieldElement) -> HeckeElement {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(w, c * a);
        }
        out
    }

    /// Whether every `t_w` with nonzero coefficient has `w ≥ x`.
    pub fn supported_above(&self, g: &WeylGroup, x: WeylElement) -> bool {
        self.coeffs.keys().all(|&w| g.bruhat_leq(x, w))
    }
}

/// The algebra `H` of a Weyl group with `q` specialized to a field element.
#[derive(Clone)]
pub struct HeckeAlgebra<'g> {
    group: &'g WeylGroup,
    q: FieldElement,
    qinv: FieldElement,
}

impl<'g> HeckeAlgebra<'g> {
    pub fn new(group: &'g WeylGroup, q: FieldElement) -> Result<Self> {
        let qinv = q.inv().map_err(|_| Error::NonGeneric("q = 0".into()))?;
        Ok(HeckeAlgebra { group, q, qinv })
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    pub fn q(&self) -> &FieldElement {
        &self.q
    }

    pub fn backend(&self) -> Backend {
        self.q.backend()
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::basis(WeylElement::IDENTITY, self.backend().one())
    }

    pub fn t(&self, w: WeylElement) -> HeckeElement {
        HeckeElement::basis(w, self.backend().one())
    }

    /// `h · t_{σ_i}`.
    pub fn mult_basis_right(&self, h: &HeckeElement, i: usize) -> HeckeElement {
        let g = self.group;
        let q_minus_one = &self.q - &self.backend().one();
        let mut out = HeckeElement::zero();
        for (w, c) in h.terms() {
            let ws = g.right_mul(w, i);
            if g.length(ws) > g.length(w) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(ws, c * &self.q);
                out.add_term(w, c * &q_minus_one);
            }
        }
        out
    }

    /// `a · b`, expanding each `t_x` of `b` along the canonical word of `x`.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in b.terms() {
            let mut h = a.clone();
            for &s in self.group.word(x) {
                h = self.mult_basis_right(&h, s as usize);
            }
            out = out.add(&h.scale(c));
        }
        out
    }

    /// `ψ(u) = Σ_{w ≥ u} t_w`.
    pub fn psi(&self, u: WeylElement) -> HeckeElement {
        let one = self.backend().one();
        let mut h = HeckeElement::zero();
        for w in self.group.elements().filter(|&w| self.group.bruhat_leq(u, w)) {
            h.add_term(w, one.clone());
        }
        h
    }

    /// `(1 − q⁻¹) z^{α_i}/(1 − z^{α_i})`, the scalar part of `μ_z(σ_i)`.
    fn simple_scalar(&self, i: usize, z: &SpectralPoint) -> Result<FieldElement> {
        let one = self.backend().one();
        let x = &z.zbar[i];
        let den = &one - x;
        if den.is_zero() {
            return Err(Error::NonGeneric(format!("z^α = 1 for the simple root α{}", i + 1)));
        }
        Ok((&one - &self.qinv) * x.checked_div(&den)?)
    }

    /// `μ_z(σ_i) = q⁻¹ t_{σ_i} + (1 − q⁻¹) z^{α_i}/(1 − z^{α_i})`.
    pub fn mu_simple(&self, i: usize, z: &SpectralPoint) -> Result<HeckeElement> {
        let mut h = HeckeElement::basis(self.group.generator(i), self.qinv.clone());
        h.add_term(WeylElement::IDENTITY, self.simple_scalar(i, z)?);
        Ok(h)
    }

    /// `h · μ_z(σ_i)` without forming the product through [`Self::mul`].
    fn mul_mu_simple(&self, h: &HeckeElement, i: usize, z: &SpectralPoint) -> Result<HeckeElement> {
        let c = self.simple_scalar(i, z)?;
        Ok(self.mult_basis_right(h, i).scale(&self.qinv).add(&h.scale(&c)))
    }

    fn check_point(&self, z: &SpectralPoint) -> Result<()> {
        if z.q != self.q {
            return Err(Error::Precondition("spectral point has a different q".into()));
        }
        if z.rank() != self.group.rank() {
            return Err(Error::Precondition("spectral point has the wrong rank".into()));
        }
        Ok(())
    }

    /// `μ_z(w)` along the canonical reduced word of `w`.
    pub fn mu(&self, w: WeylElement, z: &SpectralPoint) -> Result<HeckeElement> {
        self.mu_word(self.group.word(w), z)
    }

    /// `μ_z` of the product of a reduced word, peeling letters from the right:
    /// `μ_z(w₁ s) = μ_z(s) μ_{sz}(w₁)`.
    pub fn mu_word(&self, word: &[u8], z: &SpectralPoint) -> Result<HeckeElement> {
        self.check_point(z)?;
        if !self.group.is_reduced(word)? {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let mut h = self.one();
        let mut point = z.clone();
        for &s in word.iter().rev() {
            let s = s as usize;
            h = self.mul_mu_simple(&h, s, &point)?;
            point = point.act(self.group, self.group.generator(s))?;
        }
        Ok(h)
    }

    /// `Λ(h)`: the coefficient of `t₁`.
    pub fn lambda(&self, h: &HeckeElement) -> FieldElement {
        h.coeff(WeylElement::IDENTITY).cloned().unwrap_or_else(|| self.backend().zero())
    }

    /// `m_z(u, v) = Λ(ψ(u) μ_z(v))`.
    pub fn m_value(&self, u: WeylElement, v: WeylElement, z: &SpectralPoint) -> Result<FieldElement> {
        let mu = self.mu(v, z)?;
        Ok(self.lambda(&self.mul(&self.psi(u), &mu)))
    }

    /// `μ_z(v)` for every `v`, indexed canonically. Uses
    /// `μ_z(s v′) = μ_z(v′) μ_{v′z}(s)` with `v′` the canonical tail of `v`.
    pub fn mu_all(&self, z: &SpectralPoint) -> Result<Vec<HeckeElement>> {
        self.check_point(z)?;
        let g = self.group;
        let mut out: Vec<HeckeElement> = Vec::with_capacity(g.order());
        out.push(self.one());
        for v in g.elements().skip(1) {
            let word = g.word(v);
            let s = word[0] as usize;
            let tail = g.left_mul(s, v);
            let point = z.act(g, tail)?;
            let h = self.mul_mu_simple(&out[tail.index()], s, &point)?;
            out.push(h);
        }
        Ok(out)
    }

    /// The full table `m(u, v)` for all pairs, comparable or not.
    ///
    /// Since `Λ(t_w t_x) = q^{l(w)}` when `x = w⁻¹` and 0 otherwise,
    /// `m(u, v) = Σ_{w ≥ u} q^{l(w)} · [coefficient of t_{w⁻¹} in μ_z(v)]`.
    pub fn m_table(&self, z: &SpectralPoint) -> Result<Vec<Vec<FieldElement>>> {
        let g = self.group;
        let n = g.order();
        let zero = self.backend().zero();
        let mus = self.mu_all(z)?;
        let qpow: Vec<FieldElement> = g
            .elements()
            .map(|w| self.q.pow(g.length(w) as i64))
            .collect::<Result<_>>()?;
        let columns: Vec<Vec<FieldElement>> = mus
            .par_iter()
            .map(|mu| {
                let weighted: Vec<FieldElement> = g
                    .elements()
                    .map(|w| match mu.coeff(g.inverse(w)) {
                        Some(c) => c * &qpow[w.index()],
                        None => zero.clone(),
                    })
                    .collect();
                g.elements()
                    .map(|u| {
                        g.elements()
                            .filter(|&w| g.bruhat_leq(u, w))
                            .fold(zero.clone(), |acc, w| acc + &weighted[w.index()])
                    })
                    .collect()
            })
            .collect();
        Ok((0..n).map(|u| (0..n).map(|v| columns[v][u].clone()).collect()).collect())
    }

    /// `M` and its inverse, both verified unitriangular for Bruhat order.
    pub fn m_matrix(&self, z: &SpectralPoint) -> Result<TransitionMatrices> {
        z.ensure_generic(self.group.roots())?;
        let m = self.m_table(z)?;
        TransitionMatrices::from_m(self.group, z.clone(), m)
    }
}

/// The matrices `m(u, v)` and `m̃(u, v)` at one spectral point, indexed by
/// the canonical order.
#[derive(Clone, Debug)]
pub struct TransitionMatrices {
    pub cartan: crate::rootsys::CartanType,
    pub order: Vec<String>,
    pub point: SpectralPoint,
    pub seed: Option<u64>,
    pub m: Vec<Vec<FieldElement>>,
    pub mtilde: Vec<Vec<FieldElement>>,
}

impl TransitionMatrices {
    /// Inverts `m` by back-substitution and checks both products.
    #[allow(clippy::needless_range_loop)]
    pub fn from_m(g: &WeylGroup, point: SpectralPoint, m: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = g.order();
        let backend = point.backend();
        let zero = backend.zero();
        for u in g.elements() {
            for v in g.elements() {
                let val = &m[u.index()][v.index()];
                if u == v && !val.is_one() {
                    return Err(Error::Verification(format!("m({0}, {0}) = {val}", g.format(u))));
                }
                if !g.bruhat_leq(u, v) && !val.is_zero() {
                    return Err(Error::Verification(format!(
                        "m({}, {}) = {val} although u ≰ v",
                        g.format(u),
                        g.format(v)
                    )));
                }
            }
        }
        let mut mt = vec![vec![zero.clone(); n]; n];
        for u in (0..n).rev() {
            mt[u][u] = backend.one();
            for w in u + 1..n {
                let mut acc = zero.clone();
                for v in u + 1..=w {
                    if m[u][v].is_zero() || mt[v][w].is_zero() {
                        continue;
                    }
                    acc = acc + &m[u][v] * &mt[v][w];
                }
                mt[u][w] = -acc;
            }
        }
        for u in g.elements() {
            for v in g.elements() {
                if !g.bruhat_leq(u, v) && !mt[u.index()][v.index()].is_zero() {
                    return Err(Error::Verification(format!(
                        "m̃({}, {}) ≠ 0 although u ≰ v",
                        g.format(u),
                        g.format(v)
                    )));
                }
            }
        }
        for (a, b, name) in [(&m, &mt, "M·M̃"), (&mt, &m, "M̃·M")] {
            for (i, row) in a.iter().enumerate() {
                for j in 0..n {
                    let mut acc = zero.clone();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = acc + x * &b[k][j];
                        }
                    }
                    if (i == j && !acc.is_one()) || (i != j && !acc.is_zero()) {
                        return Err(Error::Verification(format!("{name} ≠ I at ({i}, {j})")));
                    }
                }
            }
        }
        Ok(TransitionMatrices {
            cartan: g.cartan(),
            order: g.elements().map(|w| g.format(w)).collect(),
            point,
            seed: None,
            m,
            mtilde: mt,
        })
    }

    pub fn m(&self, u: WeylElement, v: WeylElement) -> &FieldElement {
        &self.m[u.index()][v.index()]
    }

    pub fn mtilde(&self, u: WeylElement, v: WeylElement) -> &FieldElement {
        &self.mtilde[u.index()][v.index()]
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn to_json(&self) -> Value {
        let triplets = |mat: &Vec<Vec<FieldElement>>| -> Vec<Value> {
            let mut out = Vec::new();
            for (i, row) in mat.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        out.push(json!([self.order[i], self.order[j], x.to_string()]));
                    }
                }
            }
            out
        };
        let prime = match self.point.backend() {
            Backend::Prime(p) => json!(p),
            Backend::Rational => json!("rational"),
        };
        json!({
            "type": self.cartan.to_string(),
            "prime": prime,
            "seed": self.seed,
            "z": self.point.zbar.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "q": self.point.q.to_string(),
            "order": self.order,
            "M": triplets(&self.m),
            "Mtilde": triplets(&self.mtilde),
        })
    }
}

/// ψ-basis coordinates of the Casselman basis vector `f_v`: row `v` of `m̃`.
pub fn casselman_to_psi(v: WeylElement, tm: &TransitionMatrices) -> Vec<FieldElement> {
    tm.mtilde[v.index()].clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisDirection {
    /// From coordinates in `ψ_u` to coordinates in `φ_v`.
    PsiToPhi,
    PhiToPsi,
}

/// Change of basis using `ψ_u = Σ_{v≥u} φ_v` and
/// `φ_u = Σ_{v≥u} (−1)^{l(v)−l(u)} ψ_v`.
pub fn psi_phi_transform(
    g: &WeylGroup,
    direction: BasisDirection,
    coeffs: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    if coeffs.len() != g.order() {
        return Err(Error::Precondition(format!(
            "expected {} coefficients, got {}",
            g.order(),
            coeffs.len()
        )));
    }
    let Some(backend) = coeffs.first().map(FieldElement::backend) else {
        return Ok(Vec::new());
    };
    Ok(g.elements()
        .map(|v| {
            g.elements().filter(|&u| g.bruhat_leq(u, v)).fold(backend.zero(), |acc, u| {
                let c = &coeffs[u.index()];
                match direction {
                    BasisDirection::PsiToPhi => acc + c,
                    BasisDirection::PhiToPsi => {
                        acc + c * &sign(backend, g.length(v) - g.length(u))
                    }
                }
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{random_generic_point, MERSENNE_61};

    fn group(s: &str) -> WeylGroup {
        WeylGroup::build(s.parse().unwrap()).unwrap()
    }

    fn point(g: &WeylGroup, seed: u64) -> SpectralPoint {
        random_generic_point(g.roots(), MERSENNE_61, seed).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let g = group("A2");
        let z = point(&g, 1);
        let h = HeckeAlgebra::new(&g, z.q.clone()).unwrap();
        let s1 = g.generator(0);
        let sq = h.mult_basis_right(&h.t(s1), 0);
        let mut expect = HeckeElement::basis(s1, &z.q - &h.backend().one());
        expect.add_term(WeylElement::IDENTITY, z.q.clone());
        assert_eq!(sq, expect);
        assert_eq!(h.mult_basis_right(&h.one(), 0), h.t(s1));
        assert_eq!(h.mult_basis_right(&h.t(s1), 1), h.t(g.parse("12").unwrap()));
    }

    #[test]
    fn psi_and_lambda() {
        let g = group("A2");
        let h = HeckeAlgebra::new(&g, Backend::Rational.from_i64(3)).unwrap();
        assert_eq!(h.psi(g.longest_element()), h.t(g.longest_element()));
        assert_eq!(h.psi(WeylElement::IDENTITY).len(), 6);
        let p = h.psi(g.parse("1").unwrap());
        let words: Vec<_> = p.terms().map(|(w, _)| g.format(w)).collect();
        assert_eq!(words, ["1", "12", "21", "121"]);
        assert!(h.lambda(&h.one()).is_one());
        assert!(h.lambda(&h.t(g.parse("2").unwrap())).is_zero());
        assert!(h.lambda(&h.psi(WeylElement::IDENTITY)).is_one());
    }

    #[test]
    fn mu_simple_scalar() {
        let g = group("A2");
        let z = point(&g, 3);
        let h = HeckeAlgebra::new(&g, z.q.clone()).unwrap();
        assert_eq!(h.mu(WeylElement::IDENTITY, &z).unwrap(), h.one());
        let one = h.backend().one();
        let x = &z.zbar[1];
        let expect = (&one - &z.q.inv().unwrap()) * x.checked_div(&(&one - x)).unwrap();
        let mu = h.mu(g.parse("2").unwrap(), &z).unwrap();
        assert_eq!(h.lambda(&mu), expect);
    }

    #[test]
    fn mu_word_independence_a2() {
        let g = group("A2");
        for seed in 0..5 {
            let z = point(&g, seed);
            let h = HeckeAlgebra::new(&g, z.q.clone()).unwrap();
            let a = h.mu_word(&[0, 1, 0], &z).unwrap();
            let b = h.mu_word(&[1, 0, 1], &z).unwrap();
            assert_eq!(a, b);
        }
        let z = point(&g, 0);
        let h = HeckeAlgebra::new(&g, z.q.clone()).unwrap();
        assert!(matches!(h.mu_word(&[0, 0], &z), Err(Error::NotReduced(_))));
    }

    #[test]
    fn mu_all_matches_words() {
        let g = group("B2");
        let z = point(&g, 11);
        let h = HeckeAlgebra::new(&g, z.q.clone()).unwrap();
        let all = h.mu_all(&z).unwrap();
        for w in g.elements() {
            assert_eq!(all[w.index()], h.mu(w, &z).unwrap());
        }
    }

    #[test]
    fn matrix_agrees_with_m_value() {
        let g = group("A2");
        let z = point(&g, 5);
        let h = HeckeAlgebra::new(&g, z.q.clone()).unwrap();
        let tm = h.m_matrix(&z).unwrap();
        for u in g.elements() {
            for v in g.elements() {
                assert_eq!(*tm.m(u, v), h.m_value(u, v, &z).unwrap());
            }
        }
        let s1 = g.parse("1").unwrap();
        assert_eq!(*tm.mtilde(WeylElement::IDENTITY, s1), -tm.m(WeylElement::IDENTITY, s1));
    }

    #[test]
    fn a1_casselman_vector() {
        let g = group("A1");
        let z = point(&g, 9);
        let h = HeckeAlgebra::new(&g, z.q.clone()).unwrap();
        let tm = h.m_matrix(&z).unwrap();
        let f1 = casselman_to_psi(WeylElement::IDENTITY, &tm);
        let r = z.gk_factor(g.roots(), g.roots().simple_root(0)).unwrap();
        assert!(f1[0].is_one());
        assert_eq!(f1[1], -r);
        let top = casselman_to_psi(g.longest_element(), &tm);
        assert!(top[0].is_zero() && top[1].is_one());
    }

    #[test]
    fn psi_phi_a2() {
        let g = group("A2");
        let b = Backend::prime(MERSENNE_61).unwrap();
        let mut e = vec![b.zero(); 6];
        e[0] = b.one();
        let psi = psi_phi_transform(&g, BasisDirection::PhiToPsi, &e).unwrap();
        for w in g.elements() {
            assert_eq!(psi[w.index()], sign(b, g.length(w)));
        }
        let back = psi_phi_transform(&g, BasisDirection::PsiToPhi, &psi).unwrap();
        assert_eq!(back, e);
    }
}
