//! Kazhdan–Lusztig R- and P-polynomials.
//!
//! Both tables are filled column by column in canonical order using the
//! descent recursion on `v` with the smallest right descent `s`, so every
//! value the recursion needs is already present.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylGroup};

/// Dense integer polynomial in `q`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial(Vec<i64>);

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        IntPolynomial(vec![1])
    }

    pub fn from_coeffs(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        IntPolynomial(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.0);
        IntPolynomial(c)
    }

    pub fn scale(&self, a: i64) -> Self {
        Self::from_coeffs(self.0.iter().map(|&c| c * a).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                write!(f, " ")?;
            }
            let a = c.abs();
            let body = match (k, a) {
                (0, _) => format!("{a}"),
                (1, 1) => "q".to_string(),
                (1, _) => format!("{a}q"),
                (_, 1) => format!("q^{k}"),
                _ => format!("{a}q^{k}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

fn q_minus_one() -> IntPolynomial {
    IntPolynomial(vec![-1, 1])
}

/// R-polynomials `R_{u,v}` for every pair of a group.
pub struct RTable {
    n: usize,
    r: Vec<IntPolynomial>,
}

impl RTable {
    pub fn new(g: &WeylGroup) -> Self {
        let n = g.order();
        let mut r = vec![IntPolynomial::zero(); n * n];
        r[0] = IntPolynomial::one();
        for v in g.elements().skip(1) {
            let s = g.first_right_descent(v).unwrap();
            let vs = g.right_mul(v, s);
            for u in g.elements() {
                if !g.bruhat_leq(u, v) {
                    continue;
                }
                let us = g.right_mul(u, s);
                let val = if g.length(us) < g.length(u) {
                    r[us.index() * n + vs.index()].clone()
                } else {
                    let a = q_minus_one().mul(&r[u.index() * n + vs.index()]);
                    a.add(&r[us.index() * n + vs.index()].shift(1))
                };
                r[u.index() * n + v.index()] = val;
            }
        }
        RTable { n, r }
    }

    pub fn r(&self, u: WeylElement, v: WeylElement) -> &IntPolynomial {
        &self.r[u.index() * self.n + v.index()]
    }
}

/// `R_{u,v}` through a freshly built table. Prefer [`RTable`] for repeated
/// queries.
pub fn r_polynomial(g: &WeylGroup, u: WeylElement, v: WeylElement) -> IntPolynomial {
    RTable::new(g).r(u, v).clone()
}

/// Kazhdan–Lusztig polynomials `P_{u,v}` for every pair of a group.
pub struct KlTable {
    n: usize,
    p: Vec<IntPolynomial>,
    /// For each `w`, the `z < w` with nonzero `μ(z, w)`.
    mu: Vec<Vec<(WeylElement, i64)>>,
}

impl KlTable {
    /// The standard recursion: for `s` with `vs < v` and `c = [us < u]`,
    ///
    /// `P_{u,v} = q^{1−c} P_{us,vs} + q^c P_{u,vs}
    ///            − Σ_{z: zs<z, u ≤ z < vs} μ(z,vs) q^{(l(v)−l(z))/2} P_{u,z}`.
    pub fn new(g: &WeylGroup) -> Self {
        let n = g.order();
        let mut p = vec![IntPolynomial::zero(); n * n];
        let mut mu: Vec<Vec<(WeylElement, i64)>> = vec![Vec::new(); n];
        p[0] = IntPolynomial::one();
        for v in g.elements().skip(1) {
            let s = g.first_right_descent(v).unwrap();
            let vs = g.right_mul(v, s);
            let lv = g.length(v);
            let corrections: Vec<(WeylElement, i64)> = mu[vs.index()]
                .iter()
                .copied()
                .filter(|&(z, _)| g.is_right_descent(z, s))
                .collect();
            for u in g.elements() {
                if !g.bruhat_leq(u, v) {
                    continue;
                }
                let us = g.right_mul(u, s);
                let p_us = &p[us.index() * n + vs.index()];
                let p_u = &p[u.index() * n + vs.index()];
                let mut val = if g.length(us) < g.length(u) {
                    p_us.add(&p_u.shift(1))
                } else {
                    p_us.shift(1).add(p_u)
                };
                for &(z, m) in &corrections {
                    if g.bruhat_leq(u, z) {
                        let k = (lv - g.length(z)) / 2;
                        val = val.sub(&p[u.index() * n + z.index()].shift(k).scale(m));
                    }
                }
                p[u.index() * n + v.index()] = val;
            }
            mu[v.index()] = g
                .elements()
                .filter(|&z| g.bruhat_lt(z, v) && (lv - g.length(z)) % 2 == 1)
                .filter_map(|z| {
                    let c = p[z.index() * n + v.index()].coeff((lv - g.length(z) - 1) / 2);
                    (c != 0).then_some((z, c))
                })
                .collect();
        }
        KlTable { n, p, mu }
    }

    pub fn p(&self, u: WeylElement, v: WeylElement) -> &IntPolynomial {
        &self.p[u.index() * self.n + v.index()]
    }

    /// `μ(u, v)`: the coefficient of `q^{(l(v)−l(u)−1)/2}` in `P_{u,v}`.
    pub fn mu(&self, u: WeylElement, v: WeylElement) -> i64 {
        self.mu[v.index()].iter().find(|&&(z, _)| z == u).map_or(0, |&(_, m)| m)
    }

    /// The Kazhdan–Lusztig relation `u ≺ v`.
    pub fn prec(&self, u: WeylElement, v: WeylElement) -> bool {
        self.mu(u, v) != 0
    }

    /// Entries `(u, v, coefficients)` for all `u ≤ v`, in canonical order.
    pub fn entries(&self, g: &WeylGroup) -> Vec<KlEntry> {
        g.elements()
            .flat_map(|v| g.elements().map(move |u| (u, v)))
            .filter(|&(u, v)| g.bruhat_leq(u, v))
            .map(|(u, v)| KlEntry { u: g.format(u), v: g.format(v), coeffs: self.p(u, v).clone() })
            .collect()
    }

    /// Rebuilds a table from exported entries.
    pub fn from_entries(g: &WeylGroup, entries: &[KlEntry]) -> Result<Self> {
        let n = g.order();
        let mut p = vec![IntPolynomial::zero(); n * n];
        for e in entries {
            let u = g.parse(&e.u)?;
            let v = g.parse(&e.v)?;
            if !g.bruhat_leq(u, v) || e.coeffs.is_zero() {
                return Err(Error::Verification(format!("bad KL entry ({}, {})", e.u, e.v)));
            }
            p[u.index() * n + v.index()] = e.coeffs.clone();
        }
        if entries.len() != g.bruhat_pair_count() {
            return Err(Error::Verification("KL entry count does not match Bruhat pairs".into()));
        }
        let mu = g
            .elements()
            .map(|v| {
                let lv = g.length(v);
                g.elements()
                    .filter(|&z| g.bruhat_lt(z, v) && (lv - g.length(z)) % 2 == 1)
                    .filter_map(|z| {
                        let c = p[z.index() * n + v.index()].coeff((lv - g.length(z) - 1) / 2);
                        (c != 0).then_some((z, c))
                    })
                    .collect()
            })
            .collect();
        Ok(KlTable { n, p, mu })
    }
}

/// `P_{u,v}` through a freshly built table. Prefer [`KlTable`] for repeated
/// queries.
pub fn kl_polynomial(g: &WeylGroup, u: WeylElement, v: WeylElement) -> IntPolynomial {
    KlTable::new(g).p(u, v).clone()
}

pub fn kl_prec(table: &KlTable, u: WeylElement, v: WeylElement) -> bool {
    table.prec(u, v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlEntry {
    pub u: String,
    pub v: String,
    pub coeffs: IntPolynomial,
}
