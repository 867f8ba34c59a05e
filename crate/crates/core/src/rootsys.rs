//! Finite crystallographic root systems given by their Cartan type.
//!
//! Roots are integer coordinate vectors on the simple roots. The root list is
//! stored in a fixed canonical order: positive roots sorted by height and then
//! by descending lexicographic coordinates (so α₁ precedes α₂), followed by
//! their negatives in the same order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

/// A Cartan type such as `A3` or `B2`.
///
/// For type B the first `rank - 1` simple roots are long and the last one is
/// short (so in B2, α₁ is long). Type C is the dual convention. In G2, α₁ is
/// short.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ct = CartanType { family, rank };
        if ct.is_supported() {
            Ok(ct)
        } else {
            Err(Error::UnsupportedType(ct.to_string()))
        }
    }

    pub fn is_supported(&self) -> bool {
        match self.family {
            Family::A => (1..=5).contains(&self.rank),
            Family::B | Family::C => (2..=4).contains(&self.rank),
            Family::D => self.rank == 4,
            Family::G => self.rank == 2,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D)
    }

    /// Order of the Weyl group from the standard closed formulas.
    pub fn group_order(&self) -> usize {
        let fact = |n: usize| (1..=n).product::<usize>();
        let n = self.rank;
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1 << n) * fact(n),
            Family::D => (1 << (n - 1)) * fact(n),
            Family::G => 12,
        }
    }

    /// Symmetric Gram matrix of the simple roots, scaled so every entry is an
    /// integer and the shortest roots have squared length 2.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        match self.family {
            Family::A => {
                for i in 0..n {
                    g[i][i] = 2;
                    if i + 1 < n {
                        g[i][i + 1] = -1;
                        g[i + 1][i] = -1;
                    }
                }
            }
            Family::B => {
                for i in 0..n {
                    g[i][i] = if i + 1 == n { 2 } else { 4 };
                    if i + 1 < n {
                        g[i][i + 1] = -2;
                        g[i + 1][i] = -2;
                    }
                }
            }
            Family::C => {
                for i in 0..n {
                    g[i][i] = if i + 1 == n { 4 } else { 2 };
                    if i + 1 < n {
                        let e = if i + 2 == n { -2 } else { -1 };
                        g[i][i + 1] = e;
                        g[i + 1][i] = e;
                    }
                }
            }
            Family::D => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for i in 0..n - 2 {
                    if i + 1 < n - 1 {
                        g[i][i + 1] = -1;
                        g[i + 1][i] = -1;
                    }
                }
                g[n - 3][n - 1] = -1;
                g[n - 1][n - 3] = -1;
            }
            Family::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                g[0][1] = -3;
                g[1][0] = -3;
            }
        }
        g
    }

    /// Cartan matrix with `C[i][j] = 2(αᵢ, αⱼ)/(αⱼ, αⱼ)`, so that
    /// `sⱼ(αᵢ) = αᵢ − C[i][j] αⱼ`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let g = self.gram_matrix();
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| 2 * g[i][j] / g[j][j]).collect())
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadTypeName(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Long,
    Short,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i32>,
    pub length: LengthClass,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }
}

/// Index of a root in the canonical root list of its [`RootSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub(crate) u16);

impl RootId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanType,
    gram: Vec<Vec<i64>>,
    cartan_matrix: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, RootId>,
    num_positive: usize,
    simple_perm: Vec<Vec<RootId>>,
}

impl RootSystem {
    pub fn new(cartan: CartanType) -> Self {
        let gram = cartan.gram_matrix();
        let cm = cartan.cartan_matrix();
        let r = cartan.rank;

        // Close the simple roots under the simple reflections, keeping
        // positive roots only.
        let mut positives: Vec<Vec<i32>> = (0..r)
            .map(|i| (0..r).map(|k| i32::from(k == i)).collect())
            .collect();
        let mut seen: std::collections::HashSet<Vec<i32>> = positives.iter().cloned().collect();
        let mut head = 0;
        while head < positives.len() {
            let beta = positives[head].clone();
            head += 1;
            for j in 0..r {
                let pairing: i64 = (0..r).map(|i| beta[i] as i64 * cm[i][j]).sum();
                let mut img = beta.clone();
                img[j] -= pairing as i32;
                if img.iter().all(|&c| c >= 0) && seen.insert(img.clone()) {
                    positives.push(img);
                }
            }
        }
        positives.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let norm = |c: &[i32]| -> i64 {
            let mut s = 0;
            for i in 0..r {
                for j in 0..r {
                    s += c[i] as i64 * c[j] as i64 * gram[i][j];
                }
            }
            s
        };
        let max_norm = (0..r).map(|i| gram[i][i]).max().unwrap_or(2);
        let class = |c: &[i32]| {
            if norm(c) == max_norm {
                LengthClass::Long
            } else {
                LengthClass::Short
            }
        };

        let mut roots: Vec<Root> = positives
            .iter()
            .map(|c| Root { coords: c.clone(), length: class(c) })
            .collect();
        let negatives: Vec<Root> = positives
            .iter()
            .map(|c| Root { coords: c.iter().map(|x| -x).collect(), length: class(c) })
            .collect();
        roots.extend(negatives);

        let index = roots
            .iter()
            .enumerate()
            .map(|(i, root)| (root.coords.clone(), RootId(i as u16)))
            .collect();

        let mut rs = RootSystem {
            cartan,
            gram,
            cartan_matrix: cm,
            roots,
            index,
            num_positive: positives.len(),
            simple_perm: Vec::new(),
        };
        rs.simple_perm = (0..r)
            .map(|j| {
                let alpha = rs.simple_root(j);
                (0..rs.roots.len())
                    .map(|b| rs.reflect(alpha, RootId(b as u16)))
                    .collect()
            })
            .collect();
        rs
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.index()]
    }

    pub fn coords(&self, id: RootId) -> &[i32] {
        &self.roots[id.index()].coords
    }

    pub fn all(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.roots.len()).map(|i| RootId(i as u16))
    }

    /// Positive roots in canonical order.
    pub fn positive(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.num_positive).map(|i| RootId(i as u16))
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id.index() < self.num_positive
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let n = self.num_positive;
        let i = id.index();
        RootId(if i < n { i + n } else { i - n } as u16)
    }

    pub fn simple_root(&self, i: usize) -> RootId {
        let coords: Vec<i32> = (0..self.rank()).map(|k| i32::from(k == i)).collect();
        self.index[&coords]
    }

    /// Looks up a root by its coordinates.
    pub fn find(&self, coords: &[i32]) -> Option<RootId> {
        self.index.get(coords).copied()
    }

    pub fn max_height(&self) -> i32 {
        self.roots[..self.num_positive].iter().map(Root::height).max().unwrap_or(0)
    }

    pub fn inner(&self, a: &[i32], b: &[i32]) -> i64 {
        a.iter()
            .zip(&self.gram)
            .map(|(&ai, row)| b.iter().zip(row).map(|(&bj, &gij)| ai as i64 * bj as i64 * gij).sum::<i64>())
            .sum()
    }

    /// `r_α(β) = β − ⟨β, α∨⟩ α`.
    pub fn reflect(&self, alpha: RootId, beta: RootId) -> RootId {
        let a = self.coords(alpha);
        let b = self.coords(beta);
        let k = 2 * self.inner(b, a) / self.inner(a, a);
        let img: Vec<i32> = b.iter().zip(a).map(|(&x, &y)| x - (k as i32) * y).collect();
        self.index[&img]
    }

    /// Image of every root under the simple reflection `s_j`.
    pub(crate) fn simple_permutation(&self, j: usize) -> &[RootId] {
        &self.simple_perm[j]
    }
}
