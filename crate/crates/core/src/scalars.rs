//! Exact scalars, spectral points and randomized identity checking.
//!
//! Two interchangeable backends are supported: word-size prime fields
//! (the default, fast) and the rationals (exact, for small types and for
//! human-readable output). Rational-function identities are decided by
//! evaluation at random generic points over several large primes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{RootId, RootSystem};
use crate::weyl::{WeylElement, WeylGroup};

pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Backend {
    Rational,
    Prime(u64),
}

impl Backend {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Backend::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            Backend::Prime(p) => {
                let v = (n as i128).rem_euclid(p as i128) as u64;
                FieldElement::Mod { value: v, modulus: p }
            }
            Backend::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn ratio(self, num: i64, den: i64) -> Result<FieldElement> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Rational => write!(f, "rational"),
            Backend::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// An exact element of ℚ or of 𝔽ₚ.
///
/// Prime-field values are always canonical representatives in `[0, p)`.
/// Mixing backends in one operation is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Mod { value: u64, modulus: u64 },
    Rational(BigRational),
}

fn mismatch() -> ! {
    panic!("field backend mismatch")
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldElement {
    pub fn backend(&self) -> Backend {
        match self {
            FieldElement::Mod { modulus, .. } => Backend::Prime(*modulus),
            FieldElement::Rational(_) => Backend::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Mod { value, .. } => *value == 0,
            FieldElement::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Mod { value, .. } => *value == 1,
            FieldElement::Rational(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        match self {
            FieldElement::Mod { value, modulus } => inv_mod(*value, *modulus)
                .filter(|_| *value != 0)
                .map(|v| FieldElement::Mod { value: v, modulus: *modulus })
                .ok_or(Error::DivisionByZero),
            FieldElement::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Rational(r.recip()))
                }
            }
        }
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<FieldElement> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(match base {
            FieldElement::Mod { value, modulus } => {
                FieldElement::Mod { value: pow_mod(value, e, modulus), modulus }
            }
            FieldElement::Rational(r) => FieldElement::Rational(num_traits::pow::pow(r, e as usize)),
        })
    }

    fn add_ref(&self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Mod { value: a, modulus: p }, FieldElement::Mod { value: b, modulus: q })
                if p == q =>
            {
                let s = *a as u128 + *b as u128;
                FieldElement::Mod { value: (s % *p as u128) as u64, modulus: *p }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            _ => mismatch(),
        }
    }

    fn sub_ref(&self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Mod { value: a, modulus: p }, FieldElement::Mod { value: b, modulus: q })
                if p == q =>
            {
                let v = if a >= b { a - b } else { p - (b - a) };
                FieldElement::Mod { value: v, modulus: *p }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            _ => mismatch(),
        }
    }

    fn mul_ref(&self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Mod { value: a, modulus: p }, FieldElement::Mod { value: b, modulus: q })
                if p == q =>
            {
                FieldElement::Mod { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            _ => mismatch(),
        }
    }

    fn neg_ref(&self) -> FieldElement {
        match self {
            FieldElement::Mod { value, modulus } => FieldElement::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            FieldElement::Rational(r) => FieldElement::Rational(-r),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$imp(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$imp(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$imp(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Mod { value, .. } => write!(f, "{value}"),
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Values `z^{α₁}, …, z^{α_r}` of a Langlands parameter on the simple roots,
/// together with the formal parameter `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralPoint {
    pub zbar: Vec<FieldElement>,
    pub q: FieldElement,
}

impl SpectralPoint {
    pub fn new(zbar: Vec<FieldElement>, q: FieldElement) -> Self {
        SpectralPoint { zbar, q }
    }

    pub fn backend(&self) -> Backend {
        self.q.backend()
    }

    pub fn rank(&self) -> usize {
        self.zbar.len()
    }

    /// `z^α = ∏ zbar[i]^{cᵢ}` for a root with coordinates `cᵢ`.
    pub fn monomial(&self, coords: &[i32]) -> Result<FieldElement> {
        debug_assert_eq!(coords.len(), self.zbar.len());
        let mut acc = self.backend().one();
        for (z, &c) in self.zbar.iter().zip(coords) {
            if c == 0 {
                continue;
            }
            let factor = z
                .pow(c as i64)
                .map_err(|_| Error::NonGeneric("a simple-root value is zero".into()))?;
            acc = acc * factor;
        }
        Ok(acc)
    }

    pub fn root_monomial(&self, roots: &RootSystem, alpha: RootId) -> Result<FieldElement> {
        self.monomial(roots.coords(alpha))
    }

    /// The factor `(1 − q⁻¹ z^α)/(1 − z^α)`.
    pub fn gk_factor(&self, roots: &RootSystem, alpha: RootId) -> Result<FieldElement> {
        let za = self.root_monomial(roots, alpha)?;
        let one = self.backend().one();
        let den = &one - &za;
        if den.is_zero() {
            return Err(Error::NonGeneric(format!("z^α = 1 for α = {:?}", roots.coords(alpha))));
        }
        let qinv = self.q.inv().map_err(|_| Error::NonGeneric("q = 0".into()))?;
        (&one - &(qinv * za)).checked_div(&den)
    }

    /// The point `w·z`, defined by `(w·z)^α = z^{w⁻¹(α)}`.
    pub fn act(&self, group: &WeylGroup, w: WeylElement) -> Result<SpectralPoint> {
        let roots = group.roots();
        let winv = group.inverse(w);
        let zbar = (0..roots.rank())
            .map(|i| self.root_monomial(roots, group.act_on_root(winv, roots.simple_root(i))))
            .collect::<Result<_>>()?;
        Ok(SpectralPoint { zbar, q: self.q.clone() })
    }

    /// Checks `q ∉ {0, 1}`, every `zbar[i] ≠ 0` and `z^α ≠ 1` for all roots.
    pub fn ensure_generic(&self, roots: &RootSystem) -> Result<()> {
        if self.zbar.len() != roots.rank() {
            return Err(Error::NonGeneric(format!(
                "point has {} coordinates, rank is {}",
                self.zbar.len(),
                roots.rank()
            )));
        }
        if self.q.is_zero() || self.q.is_one() {
            return Err(Error::NonGeneric(format!("q = {}", self.q)));
        }
        if self.zbar.iter().any(FieldElement::is_zero) {
            return Err(Error::NonGeneric("a simple-root value is zero".into()));
        }
        for a in roots.positive() {
            if self.root_monomial(roots, a)?.is_one() {
                return Err(Error::NonGeneric(format!("z^α = 1 for α = {:?}", roots.coords(a))));
            }
        }
        Ok(())
    }
}

const MAX_ATTEMPTS: usize = 1000;

/// A uniformly random generic point over 𝔽ₚ, deterministic in `seed`.
pub fn random_generic_point(roots: &RootSystem, prime: u64, seed: u64) -> Result<SpectralPoint> {
    let backend = Backend::prime(prime)?;
    if prime <= 3 {
        return Err(Error::InvalidConfig(format!("prime {prime} too small to sample from")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut draw = || FieldElement::Mod { value: rng.gen_range(2..prime), modulus: prime };
        let zbar: Vec<_> = (0..roots.rank()).map(|_| draw()).collect();
        let q = draw();
        let z = SpectralPoint { zbar, q };
        if z.ensure_generic(roots).is_ok() {
            debug_assert_eq!(z.backend(), backend);
            return Ok(z);
        }
    }
    Err(Error::NonGeneric(format!("no generic point found after {MAX_ATTEMPTS} attempts")))
}

/// A random generic point with small rational coordinates.
pub fn random_rational_point(roots: &RootSystem, seed: u64) -> Result<SpectralPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut draw = |lo: i64, hi: i64| {
            let num: i64 = rng.gen_range(lo..=hi) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den: i64 = rng.gen_range(1..=7);
            FieldElement::Rational(BigRational::new(num.into(), den.into()))
        };
        let zbar: Vec<_> = (0..roots.rank()).map(|_| draw(1, 29)).collect();
        let q = draw(2, 11);
        let z = SpectralPoint { zbar, q };
        if z.ensure_generic(roots).is_ok() {
            return Ok(z);
        }
    }
    Err(Error::NonGeneric(format!("no generic point found after {MAX_ATTEMPTS} attempts")))
}

/// Parameters for randomized identity checking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheckConfig {
    pub primes: Vec<u64>,
    pub points_per_prime: usize,
    pub seed: u64,
    /// Sample over ℚ instead of the configured primes.
    #[serde(default)]
    pub rational: bool,
}

impl Default for IdentityCheckConfig {
    fn default() -> Self {
        IdentityCheckConfig {
            primes: vec![MERSENNE_61, (1 << 61) - 31],
            points_per_prime: 3,
            seed: 0,
            rational: false,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl IdentityCheckConfig {
    pub fn validate(&self) -> Result<()> {
        if self.points_per_prime == 0 {
            return Err(Error::InvalidConfig("points_per_prime must be at least 1".into()));
        }
        if self.rational {
            return Ok(());
        }
        if self.primes.is_empty() {
            return Err(Error::InvalidConfig("at least one prime is required".into()));
        }
        for &p in &self.primes {
            if p <= 1 << 31 {
                return Err(Error::InvalidConfig(format!("prime {p} must exceed 2^31")));
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(())
    }

    /// Seed of the `k`-th point for `prime` (0 stands for ℚ).
    pub fn point_seed(&self, prime: u64, k: usize) -> u64 {
        splitmix64(splitmix64(self.seed ^ splitmix64(prime)) ^ k as u64)
    }

    /// All sample points, prime by prime, in a fixed order.
    pub fn sample_points(&self, roots: &RootSystem) -> Result<Vec<SpectralPoint>> {
        self.validate()?;
        if self.rational {
            return (0..self.points_per_prime)
                .map(|k| random_rational_point(roots, self.point_seed(0, k)))
                .collect();
        }
        let mut out = Vec::new();
        for &p in &self.primes {
            for k in 0..self.points_per_prime {
                out.push(random_generic_point(roots, p, self.point_seed(p, k))?);
            }
        }
        Ok(out)
    }

    /// Upper bound on the probability that two distinct rational functions of
    /// the kind compared here agree at every sample point.
    ///
    /// After clearing denominators, `lhs − rhs` has total degree at most
    /// `D = 2·|Φ⁺|·(1 + max root height)` in the simple-root variables and
    /// `q`, so one prime contributes `(D/p)^N`.
    pub fn false_equal_bound(&self, roots: &RootSystem) -> FalseEqualBound {
        let degree = 2 * roots.num_positive() as u64 * (1 + roots.max_height() as u64);
        let per_prime: Vec<f64> = if self.rational {
            Vec::new()
        } else {
            self.primes
                .iter()
                .map(|&p| (degree as f64 / p as f64).powi(self.points_per_prime as i32))
                .collect()
        };
        let overall = per_prime.iter().product();
        FalseEqualBound { degree_bound: degree, per_prime, overall }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FalseEqualBound {
    pub degree_bound: u64,
    pub per_prime: Vec<f64>,
    pub overall: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum IdentityVerdict {
    Equal,
    Unequal { point: SpectralPoint, lhs: FieldElement, rhs: FieldElement },
}

impl IdentityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, IdentityVerdict::Equal)
    }
}

/// Compares two evaluators at every configured sample point.
pub fn check_scalar_identity<L, R>(
    roots: &RootSystem,
    lhs: L,
    rhs: R,
    cfg: &IdentityCheckConfig,
) -> Result<IdentityVerdict>
where
    L: Fn(&SpectralPoint) -> Result<FieldElement>,
    R: Fn(&SpectralPoint) -> Result<FieldElement>,
{
    for z in cfg.sample_points(roots)? {
        let l = lhs(&z).map_err(|e| Error::Evaluator(e.to_string()))?;
        let r = rhs(&z).map_err(|e| Error::Evaluator(e.to_string()))?;
        if l != r {
            return Ok(IdentityVerdict::Unequal { point: z, lhs: l, rhs: r });
        }
    }
    Ok(IdentityVerdict::Equal)
}

/// `(-1)^n` as a field element.
pub fn sign(backend: Backend, n: usize) -> FieldElement {
    if n.is_multiple_of(2) {
        backend.one()
    } else {
        -backend.one()
    }
}
