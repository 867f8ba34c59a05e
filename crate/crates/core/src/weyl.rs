//! Weyl groups as permutation groups of their root systems.
//!
//! Every element is stored as its action on the full root list. Elements are
//! numbered in canonical order: by length, then by the lexicographically
//! smallest reduced word. This order is a linear extension of the Bruhat
//! order, and it is the row/column order of every matrix the crate emits.

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, RootId, RootSystem};

/// An element of a [`WeylGroup`], identified by its canonical index.
///
/// The derived ordering is the canonical (length, then lex-word) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement(pub(crate) u32);

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub struct WeylGroup {
    roots: RootSystem,
    action: Vec<Vec<RootId>>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    reflections: Vec<WeylElement>,
    bruhat: BitMatrix,
}

fn compose(outer: &[RootId], inner: &[RootId]) -> Vec<RootId> {
    inner.iter().map(|b| outer[b.index()]).collect()
}

impl WeylGroup {
    /// Enumerates the group and computes its Bruhat order.
    pub fn build(cartan: CartanType) -> Result<Self> {
        let mut g = Self::build_tables(cartan)?;
        g.bruhat = g.compute_bruhat();
        Ok(g)
    }

    /// Enumerates the group and adopts a previously computed Bruhat matrix.
    /// The caller is responsible for having validated the matrix against
    /// [`WeylGroup::checksum`].
    pub(crate) fn with_bruhat(cartan: CartanType, bruhat: BitMatrix) -> Result<Self> {
        let mut g = Self::build_tables(cartan)?;
        if bruhat.size() != g.order() {
            return Err(Error::Verification("cached Bruhat matrix has wrong size".into()));
        }
        g.bruhat = bruhat;
        Ok(g)
    }

    fn build_tables(cartan: CartanType) -> Result<Self> {
        if !cartan.is_supported() {
            return Err(Error::UnsupportedType(cartan.to_string()));
        }
        let roots = RootSystem::new(cartan);
        let r = roots.rank();
        let simple: Vec<RootId> = (0..r).map(|i| roots.simple_root(i)).collect();
        let key = |perm: &[RootId]| -> Vec<RootId> { simple.iter().map(|a| perm[a.index()]).collect() };

        // Breadth-first enumeration by length.
        let identity: Vec<RootId> = roots.all().collect();
        let mut perms = vec![identity.clone()];
        let mut level_of = vec![0u32];
        let mut lookup: HashMap<Vec<RootId>, usize> = HashMap::new();
        lookup.insert(key(&identity), 0);
        let mut frontier = vec![0usize];
        let mut level = 0u32;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &w in &frontier {
                for (j, &a) in simple.iter().enumerate() {
                    if !roots.is_positive(perms[w][a.index()]) {
                        continue;
                    }
                    let p = compose(&perms[w], roots.simple_permutation(j));
                    let k = key(&p);
                    if let std::collections::hash_map::Entry::Vacant(slot) = lookup.entry(k) {
                        slot.insert(perms.len());
                        next.push(perms.len());
                        perms.push(p);
                        level_of.push(level);
                    }
                }
            }
            frontier = next;
        }
        if perms.len() != cartan.group_order() {
            return Err(Error::Verification(format!(
                "enumerated {} elements of {cartan}, expected {}",
                perms.len(),
                cartan.group_order()
            )));
        }

        // Lexicographically smallest reduced word: the smallest left descent
        // followed by the smallest word of the shorter element.
        let max_len = *level_of.iter().max().unwrap();
        let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); max_len as usize + 1];
        for (i, &l) in level_of.iter().enumerate() {
            by_level[l as usize].push(i);
        }
        let mut lex_word: Vec<Vec<u8>> = vec![Vec::new(); perms.len()];
        let mut order: Vec<usize> = Vec::with_capacity(perms.len());
        for (l, level) in by_level.iter().enumerate() {
            for &w in level {
                if l == 0 {
                    continue;
                }
                let (i, shorter) = (0..r)
                    .find_map(|i| {
                        let p = compose(roots.simple_permutation(i), &perms[w]);
                        let idx = lookup[&key(&p)];
                        (level_of[idx] < l as u32).then_some((i, idx))
                    })
                    .expect("nonidentity element has a left descent");
                let mut word = vec![i as u8];
                word.extend_from_slice(&lex_word[shorter]);
                lex_word[w] = word;
            }
            let mut lv = level.clone();
            lv.sort_by(|&a, &b| lex_word[a].cmp(&lex_word[b]));
            order.extend(lv);
        }
        let mut canon = vec![0u32; perms.len()];
        for (new, &old) in order.iter().enumerate() {
            canon[old] = new as u32;
        }

        let n = perms.len();
        let action: Vec<Vec<RootId>> = order.iter().map(|&o| perms[o].clone()).collect();
        let lengths: Vec<u32> = order.iter().map(|&o| level_of[o]).collect();
        let words: Vec<Vec<u8>> = order.iter().map(|&o| lex_word[o].clone()).collect();
        let find = |p: &[RootId]| canon[lookup[&key(p)]];

        let mut right = vec![0u32; n * r];
        let mut left = vec![0u32; n * r];
        let mut inverse = vec![0u32; n];
        for w in 0..n {
            for j in 0..r {
                right[w * r + j] = find(&compose(&action[w], roots.simple_permutation(j)));
                left[w * r + j] = find(&compose(roots.simple_permutation(j), &action[w]));
            }
            let mut inv = vec![RootId(0); roots.len()];
            for (b, img) in action[w].iter().enumerate() {
                inv[img.index()] = RootId(b as u16);
            }
            inverse[w] = find(&inv);
        }
        let reflections = roots
            .positive()
            .map(|a| {
                let p: Vec<RootId> = roots.all().map(|b| roots.reflect(a, b)).collect();
                WeylElement(find(&p))
            })
            .collect();

        Ok(WeylGroup {
            roots,
            action,
            lengths,
            words,
            right,
            left,
            inverse,
            reflections,
            bruhat: BitMatrix::new(n),
        })
    }

    /// Bruhat order by the descent recursion: for `s` with `vs < v`,
    /// `u ≤ v ⇔ us ≤ vs` when `us < u`, and `u ≤ v ⇔ u ≤ vs` otherwise.
    /// Columns are filled in canonical order, so every lookup is memoized.
    fn compute_bruhat(&self) -> BitMatrix {
        let n = self.order();
        let mut m = BitMatrix::new(n);
        m.set(0, 0, true);
        for v in 1..n {
            let vw = WeylElement(v as u32);
            let s = self.first_right_descent(vw).expect("nonidentity has a descent");
            let vs = self.right_mul(vw, s).index();
            for u in 0..n {
                let uw = WeylElement(u as u32);
                let us = self.right_mul(uw, s);
                let leq = if self.length(us) < self.length(uw) {
                    m.get(us.index(), vs)
                } else {
                    m.get(u, vs)
                };
                if leq {
                    m.set(u, v, true);
                }
            }
        }
        m
    }

    pub fn cartan(&self) -> CartanType {
        self.roots.cartan()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = WeylElement> + ExactSizeIterator {
        (0..self.order() as u32).map(WeylElement)
    }

    pub fn element(&self, index: usize) -> WeylElement {
        assert!(index < self.order());
        WeylElement(index as u32)
    }

    pub fn length(&self, w: WeylElement) -> usize {
        self.lengths[w.index()] as usize
    }

    /// The lexicographically smallest reduced word (0-based generators).
    pub fn word(&self, w: WeylElement) -> &[u8] {
        &self.words[w.index()]
    }

    /// Reduced word as a string of 1-based generator digits, e.g. `"121"`.
    pub fn format(&self, w: WeylElement) -> String {
        format_word(self.word(w))
    }

    /// The simple reflection `σ_i` (0-based).
    pub fn generator(&self, i: usize) -> WeylElement {
        self.right_mul(WeylElement::IDENTITY, i)
    }

    #[inline]
    pub fn right_mul(&self, w: WeylElement, s: usize) -> WeylElement {
        WeylElement(self.right[w.index() * self.rank() + s])
    }

    #[inline]
    pub fn left_mul(&self, s: usize, w: WeylElement) -> WeylElement {
        WeylElement(self.left[w.index() * self.rank() + s])
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        self.word(b).iter().fold(a, |acc, &s| self.right_mul(acc, s as usize))
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.inverse[w.index()])
    }

    /// Product of an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[u8]) -> Result<WeylElement> {
        let r = self.rank();
        let mut w = WeylElement::IDENTITY;
        for &s in word {
            if s as usize >= r {
                return Err(Error::GeneratorOutOfRange { index: s as usize + 1, rank: r });
            }
            w = self.right_mul(w, s as usize);
        }
        Ok(w)
    }

    /// Parses a string of 1-based generator digits.
    pub fn parse(&self, s: &str) -> Result<WeylElement> {
        self.from_word(&parse_word(s)?)
    }

    pub fn is_reduced(&self, word: &[u8]) -> Result<bool> {
        Ok(self.length(self.from_word(word)?) == word.len())
    }

    pub fn act_on_root(&self, w: WeylElement, alpha: RootId) -> RootId {
        self.action[w.index()][alpha.index()]
    }

    pub fn is_right_descent(&self, w: WeylElement, s: usize) -> bool {
        !self.roots.is_positive(self.act_on_root(w, self.roots.simple_root(s)))
    }

    pub fn first_right_descent(&self, w: WeylElement) -> Option<usize> {
        (0..self.rank()).find(|&s| self.is_right_descent(w, s))
    }

    pub fn right_descents(&self, w: WeylElement) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&s| self.is_right_descent(w, s))
    }

    /// `{α > 0 : w(α) < 0}`, in canonical root order.
    pub fn inversion_set(&self, w: WeylElement) -> Vec<RootId> {
        self.roots
            .positive()
            .filter(|&a| !self.roots.is_positive(self.act_on_root(w, a)))
            .collect()
    }

    /// The inversion list `αᵢₖ, sᵢₖ(αᵢₖ₋₁), …, sᵢₖ⋯sᵢ₂(αᵢ₁)` of a reduced
    /// word, in that order.
    pub fn inversion_list(&self, word: &[u8]) -> Result<Vec<RootId>> {
        if !self.is_reduced(word)? {
            return Err(Error::NotReduced(word.to_vec()));
        }
        // acc runs through sᵢₖ, sᵢₖsᵢₖ₋₁, …
        let mut out = Vec::with_capacity(word.len());
        let mut acc = WeylElement::IDENTITY;
        for &s in word.iter().rev() {
            out.push(self.act_on_root(acc, self.roots.simple_root(s as usize)));
            acc = self.right_mul(acc, s as usize);
        }
        Ok(out)
    }

    /// The reflection `r_α` for a positive root α.
    pub fn reflection(&self, alpha: RootId) -> Result<WeylElement> {
        if !self.roots.is_positive(alpha) {
            return Err(Error::NotPositive(self.roots.coords(alpha).to_vec()));
        }
        Ok(self.reflections[alpha.index()])
    }

    #[inline]
    pub fn bruhat_leq(&self, u: WeylElement, v: WeylElement) -> bool {
        self.bruhat.get(u.index(), v.index())
    }

    #[inline]
    pub fn bruhat_lt(&self, u: WeylElement, v: WeylElement) -> bool {
        u != v && self.bruhat_leq(u, v)
    }

    pub fn bruhat_matrix(&self) -> &BitMatrix {
        &self.bruhat
    }

    /// Number of pairs `u ≤ v`.
    pub fn bruhat_pair_count(&self) -> usize {
        self.bruhat.count_ones()
    }

    pub fn longest_element(&self) -> WeylElement {
        WeylElement(self.order() as u32 - 1)
    }

    /// All reduced words of `w`, built right to left by depth-first search
    /// over right descents, smallest descent first.
    pub fn reduced_words(&self, w: WeylElement) -> ReducedWords<'_> {
        ReducedWords { group: self, stack: vec![(w, Vec::new())] }
    }

    /// SHA-256 over the type name and the canonical element words. Guards
    /// cached tables against convention drift.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.cartan().to_string().as_bytes());
        for w in self.elements() {
            h.update(b"|");
            h.update(self.format(w).as_bytes());
        }
        hex::encode(h.finalize())
    }
}

pub struct ReducedWords<'g> {
    group: &'g WeylGroup,
    stack: Vec<(WeylElement, Vec<u8>)>,
}

impl Iterator for ReducedWords<'_> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        while let Some((w, suffix)) = self.stack.pop() {
            if w == WeylElement::IDENTITY {
                let mut word = suffix;
                word.reverse();
                return Some(word);
            }
            let descents: Vec<usize> = self.group.right_descents(w).collect();
            for &s in descents.iter().rev() {
                let mut next = suffix.clone();
                next.push(s as u8);
                self.stack.push((self.group.right_mul(w, s), next));
            }
        }
        None
    }
}

/// Parses 1-based generator digits into a 0-based word.
pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if d >= 1 => Ok((d - 1) as u8),
            _ => Err(Error::BadWord(s.to_string())),
        })
        .collect()
}

pub fn format_word(word: &[u8]) -> String {
    word.iter().map(|&s| char::from(b'1' + s)).collect()
}
