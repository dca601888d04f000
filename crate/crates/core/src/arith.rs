//! Exact arbitrary-precision integer arithmetic: primality testing,
//! factorization, p-adic valuations, and prime-set bookkeeping.
//!
//! Primality is deterministic (fixed Miller-Rabin witness set) below 2^64 and
//! a Baillie-PSW style combination (strong Miller-Rabin base 2 plus a strong
//! Lucas test) above it; the `certified` flag on each factor records which
//! path ran. Factorization is trial division followed by Brent's variant of
//! Pollard rho with an iteration budget; a cofactor that survives the budget
//! is an error, never a silent pass.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;
pub const DEFAULT_RHO_ITERATIONS: u64 = 1 << 22;

/// SplitMix64 step; used wherever a tiny deterministic PRNG is needed.
pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn sieve() -> &'static Vec<u64> {
    static SIEVE: OnceLock<Vec<u64>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let limit = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::with_capacity(80_000);
        for p in 2..=limit {
            if !composite[p] {
                primes.push(p as u64);
                let mut q = p * p;
                while q <= limit {
                    composite[q] = true;
                    q += p;
                }
            }
        }
        primes
    })
}

/// All primes below the trial-division bound (10^6), ascending.
pub fn small_primes() -> &'static [u64] {
    sieve()
}

/// Primes `p <= bound`, ascending. `bound` must not exceed 10^6.
pub fn primes_up_to(bound: u64) -> Result<&'static [u64]> {
    if bound > TRIAL_DIVISION_BOUND {
        return Err(Error::InvalidInput(format!(
            "prime bound {bound} exceeds the sieve limit {TRIAL_DIVISION_BOUND}"
        )));
    }
    let primes = sieve();
    let idx = primes.partition_point(|&p| p <= bound);
    Ok(&primes[..idx])
}

/// Outcome of a primality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    /// Proven prime (deterministic witness set).
    Prime,
    /// Passed Miller-Rabin and strong Lucas tests; no proof.
    ProbablePrime,
    Composite,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        matches!(self, Primality::Prime | Primality::ProbablePrime)
    }
    pub fn certified(self) -> bool {
        matches!(self, Primality::Prime)
    }
}

/// Witness set proven to be deterministic for all n < 3.3 * 10^24,
/// comfortably covering the u64 range where we claim `Prime`.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn miller_rabin(n: &BigUint, base: u64) -> bool {
    // n odd, n > 2, base < n assumed reduced by caller
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let b = BigUint::from(base) % n;
    if b.is_zero() || b.is_one() {
        return true;
    }
    let mut x = b.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i32> {
    if n.is_even() || n.is_zero() {
        return Err(Error::InvalidInput("jacobi: modulus must be odd positive".into()));
    }
    let mut n = n.clone();
    let reduced = a.mod_floor(&BigInt::from_biguint(Sign::Plus, n.clone()));
    let mut a = reduced.to_biguint().unwrap_or_default();
    let mut t = 1i32;
    let three = BigUint::from(3u32);
    let five = BigUint::from(5u32);
    let four = BigUint::from(4u32);
    let eight = BigUint::from(8u32);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            t = -t;
        }
        a %= &n;
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Strong Lucas probable-prime test with Selfridge parameters.
/// Assumes n odd, n > 2, not a perfect square.
fn strong_lucas(n: &BigUint) -> bool {
    // Find D in 5, -7, 9, -11, ... with (D/n) = -1.
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            Ok(-1) => break,
            Ok(0) => {
                // gcd(D, n) > 1; composite unless |D| == n
                if d.magnitude() != n {
                    return false;
                }
            }
            _ => {}
        }
        let two = BigInt::from(2);
        d = if d.is_positive() { -(&d + two) } else { -(&d - two) };
    }
    // P = 1, Q = (1 - D) / 4
    let q = (BigInt::one() - &d) / BigInt::from(4);
    // n + 1 = delta * 2^s with delta odd
    let n_plus_1 = n + BigUint::one();
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let delta = &n_plus_1 >> s;

    // Compute U_delta, V_delta mod n by binary expansion.
    let modn = |x: &BigInt| -> BigInt { x.mod_floor(&n_int) };
    let two_inv = {
        // n odd: 2^{-1} = (n + 1) / 2
        BigInt::from_biguint(Sign::Plus, &n_plus_1 >> 1)
    };
    let mut u = BigInt::one();
    let mut v = BigInt::one(); // U_1 = 1, V_1 = P = 1
    let mut qk = modn(&q); // Q^1
    let bits = delta.bits();
    for i in (0..bits - 1).rev() {
        // double: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k
        u = modn(&(&u * &v));
        v = modn(&(&v * &v - BigInt::from(2) * &qk));
        qk = modn(&(&qk * &qk));
        if delta.bit(i) {
            // advance: U_{2k+1} = (P U + V)/2, V_{2k+1} = (D U + P V)/2
            let u1 = modn(&((&u + &v) * &two_inv));
            let v1 = modn(&((&d * &u + &v) * &two_inv));
            qk = modn(&(&qk * &q));
            u = u1;
            v = v1;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    // Check V_{delta * 2^r} = 0 for some r in 1..s
    for _ in 1..s {
        v = modn(&(&v * &v - BigInt::from(2) * &qk));
        if v.is_zero() {
            return true;
        }
        qk = modn(&(&qk * &qk));
    }
    false
}

/// Primality test: deterministic below 2^64, Baillie-PSW style above.
pub fn is_prime(n: &BigUint) -> Primality {
    if n < &BigUint::from(2u32) {
        return Primality::Composite;
    }
    if let Some(small) = n.to_u64() {
        if small < 4 {
            return Primality::Prime; // 2, 3
        }
        if small % 2 == 0 {
            return Primality::Composite;
        }
        for &b in &MR_BASES {
            if b >= small {
                break;
            }
            if !miller_rabin(n, b) {
                return Primality::Composite;
            }
        }
        return Primality::Prime;
    }
    if n.is_even() {
        return Primality::Composite;
    }
    for &b in &MR_BASES {
        if !miller_rabin(n, b) {
            return Primality::Composite;
        }
    }
    // Perfect squares never admit jacobi(D, n) = -1; rule them out first.
    let r = n.sqrt();
    if &(&r * &r) == n {
        return Primality::Composite;
    }
    if strong_lucas(n) {
        Primality::ProbablePrime
    } else {
        Primality::Composite
    }
}

/// A finite set of primes, optionally including the infinite prime.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PrimeSet {
    finite: BTreeSet<BigUint>,
    includes_infinity: bool,
}

impl PrimeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The set {infinity}.
    pub fn infinity_only() -> Self {
        Self { finite: BTreeSet::new(), includes_infinity: true }
    }

    /// Builds a set from finite primes, validating primality of each member.
    pub fn from_primes<I: IntoIterator<Item = BigUint>>(primes: I, include_infinity: bool) -> Result<Self> {
        let mut finite = BTreeSet::new();
        for p in primes {
            if !is_prime(&p).is_prime() {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            finite.insert(p);
        }
        Ok(Self { finite, includes_infinity: include_infinity })
    }

    /// Internal constructor for primes already known to be prime.
    pub(crate) fn from_known_primes(finite: BTreeSet<BigUint>, includes_infinity: bool) -> Self {
        Self { finite, includes_infinity }
    }

    pub fn includes_infinity(&self) -> bool {
        self.includes_infinity
    }

    pub fn set_infinity(&mut self, value: bool) {
        self.includes_infinity = value;
    }

    pub fn contains_finite(&self, p: &BigUint) -> bool {
        self.finite.contains(p)
    }

    pub fn finite(&self) -> &BTreeSet<BigUint> {
        &self.finite
    }

    pub fn insert_finite(&mut self, p: BigUint) -> Result<()> {
        if !is_prime(&p).is_prime() {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        self.finite.insert(p);
        Ok(())
    }

    pub(crate) fn insert_known_prime(&mut self, p: BigUint) {
        self.finite.insert(p);
    }

    /// Number of members, counting infinity when present.
    pub fn count(&self) -> usize {
        self.finite.len() + usize::from(self.includes_infinity)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            finite: self.finite.union(&other.finite).cloned().collect(),
            includes_infinity: self.includes_infinity || other.includes_infinity,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            finite: self.finite.intersection(&other.finite).cloned().collect(),
            includes_infinity: self.includes_infinity && other.includes_infinity,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && !self.includes_infinity
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for p in &self.finite {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        if self.includes_infinity {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "oo")?;
        }
        write!(f, "}}")
    }
}

/// One prime power in a factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorEntry {
    pub exponent: u32,
    /// True when the primality of this factor was proven, not just probable.
    pub certified: bool,
}

/// A complete signed factorization: value = sign * prod p^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: BigInt,
    sign: i32,
    factors: BTreeMap<BigUint, FactorEntry>,
}

impl Factorization {
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, FactorEntry> {
        &self.factors
    }

    /// Recomputes sign * prod p^e; equals `value()` by construction.
    pub fn recompose(&self) -> BigInt {
        let mut acc = BigUint::one();
        for (p, entry) in &self.factors {
            acc *= p.pow(entry.exponent);
        }
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, acc)
    }

    /// p-adic valuation of the factored value.
    pub fn v_p(&self, p: &BigUint) -> u32 {
        self.factors.get(p).map_or(0, |e| e.exponent)
    }

    /// The primes dividing the value, excluding members of `s`; never
    /// contains infinity.
    pub fn prms(&self, s: &PrimeSet) -> PrimeSet {
        let finite = self
            .factors
            .keys()
            .filter(|p| !s.contains_finite(p))
            .cloned()
            .collect();
        PrimeSet::from_known_primes(finite, false)
    }

    /// The full set of primes dividing the value.
    pub fn prime_set(&self) -> PrimeSet {
        PrimeSet::from_known_primes(self.factors.keys().cloned().collect(), false)
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Budgets and cache switch for `factorize_with`.
#[derive(Clone, Debug)]
pub struct FactorConfig {
    pub trial_bound: u64,
    pub rho_iterations: u64,
    /// Honor the MINRAM_CACHE_DIR content-addressed cache.
    pub use_cache: bool,
}

impl Default for FactorConfig {
    fn default() -> Self {
        Self {
            trial_bound: TRIAL_DIVISION_BOUND,
            rho_iterations: DEFAULT_RHO_ITERATIONS,
            use_cache: true,
        }
    }
}

/// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor
/// of odd composite n, or None once the iteration budget runs out.
fn pollard_brent(n: &BigUint, max_iterations: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut rng_state: u64 = 0x6d69_6e72_616d_u64 ^ n.to_u64_digits().first().copied().unwrap_or(1);
    let mut total: u64 = 0;
    loop {
        if total >= max_iterations {
            return None;
        }
        let c = BigUint::from((splitmix64(&mut rng_state) % 0xffff) + 1);
        let mut y = BigUint::from((splitmix64(&mut rng_state) % 0xffff) + 2) % n;
        let m = 128u64;
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() && total < max_iterations {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * &diff) % n;
                }
                total += steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            // Backtrack one step at a time.
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && &g < n {
            return Some(g);
        }
        // retry with a different constant
    }
}

/// Splits n (no prime factors <= trial bound, not 1) into prime factors.
fn split_rough(n: BigUint, cfg: &FactorConfig, out: &mut BTreeMap<BigUint, u32>, mult: u32) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n).is_prime() {
        *out.entry(n).or_insert(0) += mult;
        return Ok(());
    }
    // Perfect power: rho converges slowly on p^k, so peel powers first.
    let bits = n.bits();
    for k in (2..=bits).rev() {
        let r = n.nth_root(k as u32);
        if r.pow(k as u32) == n {
            return split_rough(r, cfg, out, mult * k as u32);
        }
    }
    match pollard_brent(&n, cfg.rho_iterations) {
        Some(d) => {
            let q = &n / &d;
            split_rough(d, cfg, out, mult)?;
            split_rough(q, cfg, out, mult)
        }
        None => Err(Error::IncompleteFactorization(BigInt::from_biguint(Sign::Plus, n))),
    }
}

fn factorize_magnitude(n: &BigUint, cfg: &FactorConfig) -> Result<BTreeMap<BigUint, u32>> {
    let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();
    for &p in sieve() {
        if p > cfg.trial_bound {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        if (&rest % &pb).is_zero() {
            let mut e = 0u32;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                e += 1;
            }
            factors.insert(pb, e);
            if rest.is_one() {
                break;
            }
            // A prime cofactor needs no further trial division.
            if is_prime(&rest).is_prime() {
                break;
            }
        }
    }
    if !rest.is_one() {
        if is_prime(&rest).is_prime() {
            *factors.entry(rest).or_insert(0) += 1;
        } else {
            split_rough(rest, cfg, &mut factors, 1)?;
        }
    }
    Ok(factors)
}

/// Complete factorization of a nonzero integer. Deterministic for fixed n.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with(n, &FactorConfig::default())
}

pub fn factorize_with(n: &BigInt, cfg: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("factorize: n must be nonzero".into()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mag = n.magnitude().clone();

    let raw = if cfg.use_cache {
        match cache::lookup(&mag) {
            Some(factors) => factors,
            None => {
                let factors = factorize_magnitude(&mag, cfg)?;
                cache::store(&mag, &factors);
                factors
            }
        }
    } else {
        factorize_magnitude(&mag, cfg)?
    };

    let factors: BTreeMap<BigUint, FactorEntry> = raw
        .into_iter()
        .map(|(p, exponent)| {
            let certified = is_prime(&p).certified();
            (p, FactorEntry { exponent, certified })
        })
        .collect();

    let result = Factorization { value: n.clone(), sign, factors };
    debug_assert_eq!(result.recompose(), *n);
    Ok(result)
}

/// The p-adic valuation v_p(n): the largest e with p^e | n.
pub fn v_p(n: &BigInt, p: &BigUint) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::InvalidInput("v_p: n must be nonzero".into()));
    }
    if !is_prime(p).is_prime() {
        return Err(Error::InvalidInput(format!("v_p: {p} is not prime")));
    }
    let p_int = BigInt::from_biguint(Sign::Plus, p.clone());
    let mut e = 0u32;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p_int);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Prms_S(n): the primes dividing n that do not lie in S. Never contains
/// the infinite prime.
pub fn prms_s(n: &BigInt, s: &PrimeSet) -> Result<PrimeSet> {
    Ok(factorize(n)?.prms(s))
}

/// Chinese remainder combination: x = r_i mod m_i for pairwise coprime m_i.
/// Returns the canonical representative in [0, prod m_i).
pub fn crt(congruences: &[(BigInt, BigUint)]) -> Result<BigInt> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        let m = BigInt::from_biguint(Sign::Plus, m.clone());
        let e = m.extended_gcd(&modulus);
        if !e.gcd.is_one() {
            return Err(Error::InvalidInput("crt: moduli are not pairwise coprime".into()));
        }
        // x_new = r * modulus * v + x * m * u where u*m + v*modulus = 1
        let new_modulus = &modulus * &m;
        let t = (r * &modulus * &e.y + &x * &m * &e.x).mod_floor(&new_modulus);
        x = t;
        modulus = new_modulus;
    }
    Ok(x)
}

/// Content-addressed read-through factorization cache, enabled by setting
/// MINRAM_CACHE_DIR. Entries are verified on load and recomputed on any
/// mismatch, so a corrupt cache behaves as if absent.
mod cache {
    use super::*;
    use serde::{Deserialize, Serialize};
    use sha2::{Digest, Sha256};
    use std::path::PathBuf;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        value: String,
        factors: Vec<(String, u32)>,
    }

    fn dir() -> Option<&'static PathBuf> {
        static DIR: OnceLock<Option<PathBuf>> = OnceLock::new();
        DIR.get_or_init(|| {
            let dir = std::env::var_os("MINRAM_CACHE_DIR").map(PathBuf::from)?;
            std::fs::create_dir_all(&dir).ok()?;
            Some(dir)
        })
        .as_ref()
    }

    fn path_for(n: &BigUint) -> Option<PathBuf> {
        let dir = dir()?;
        let digest = Sha256::digest(n.to_str_radix(10).as_bytes());
        Some(dir.join(format!("{:x}.json", digest)))
    }

    pub(super) fn lookup(n: &BigUint) -> Option<BTreeMap<BigUint, u32>> {
        let path = path_for(n)?;
        let text = std::fs::read_to_string(path).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.value != n.to_str_radix(10) {
            return None;
        }
        let mut factors = BTreeMap::new();
        let mut product = BigUint::one();
        for (p, e) in entry.factors {
            let p = BigUint::parse_bytes(p.as_bytes(), 10)?;
            if e == 0 || !is_prime(&p).is_prime() {
                return None;
            }
            product *= p.pow(e);
            factors.insert(p, e);
        }
        if &product != n {
            return None;
        }
        Some(factors)
    }

    pub(super) fn store(n: &BigUint, factors: &BTreeMap<BigUint, u32>) {
        let Some(path) = path_for(n) else { return };
        let entry = Entry {
            value: n.to_str_radix(10),
            factors: factors.iter().map(|(p, e)| (p.to_str_radix(10), *e)).collect(),
        };
        if let Ok(text) = serde_json::to_string(&entry) {
            let tmp = path.with_extension("tmp");
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(tmp, path);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(n: i64) -> Factorization {
        factorize(&BigInt::from(n)).unwrap()
    }

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn factorize_twelve() {
        let f = fact(12);
        assert_eq!(f.sign(), 1);
        assert_eq!(f.v_p(&u(2)), 2);
        assert_eq!(f.v_p(&u(3)), 1);
        assert_eq!(f.factors().len(), 2);
    }

    #[test]
    fn factorize_negative_prime() {
        // -283: sign -1, single prime 283 (trial division confirms primality)
        let f = fact(-283);
        assert_eq!(f.sign(), -1);
        assert_eq!(f.factors().len(), 1);
        let entry = &f.factors()[&u(283)];
        assert_eq!(entry.exponent, 1);
        assert!(entry.certified);
    }

    #[test]
    fn factorize_3381() {
        // 3381 = 4^4 + 5^5 = 3 * 7^2 * 23 by trial division
        let f = fact(3381);
        assert_eq!(f.v_p(&u(3)), 1);
        assert_eq!(f.v_p(&u(7)), 2);
        assert_eq!(f.v_p(&u(23)), 1);
        assert_eq!(f.factors().len(), 3);
    }

    #[test]
    fn factorize_rejects_zero() {
        assert!(factorize(&BigInt::zero()).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(v_p(&BigInt::from(12), &u(2)).unwrap(), 2);
        assert_eq!(v_p(&BigInt::from(12), &u(5)).unwrap(), 0);
        assert_eq!(v_p(&BigInt::from(3381), &u(7)).unwrap(), 2);
        assert!(v_p(&BigInt::from(12), &u(4)).is_err()); // 4 not prime
        assert!(v_p(&BigInt::zero(), &u(2)).is_err());
    }

    #[test]
    fn prms_examples() {
        let s_inf = PrimeSet::infinity_only();
        let p = prms_s(&BigInt::from(12), &s_inf).unwrap();
        assert_eq!(p.count(), 2);
        assert!(p.contains_finite(&u(2)) && p.contains_finite(&u(3)));
        assert!(!p.includes_infinity());

        let s2 = PrimeSet::from_primes([u(2)], true).unwrap();
        let p = prms_s(&BigInt::from(12), &s2).unwrap();
        assert_eq!(p.count(), 1);
        assert!(p.contains_finite(&u(3)));

        let s3 = PrimeSet::from_primes([u(3)], true).unwrap();
        let p = prms_s(&BigInt::from(3381), &s3).unwrap();
        assert_eq!(p.count(), 2);
        assert!(p.contains_finite(&u(7)) && p.contains_finite(&u(23)));
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = primes_up_to(1000).unwrap().to_vec();
        for n in 2..1000u64 {
            let expected = primes.contains(&n);
            assert_eq!(is_prime(&u(n)).is_prime(), expected, "n = {n}");
        }
    }

    #[test]
    fn primality_certified_flag() {
        assert!(is_prime(&u(u64::MAX - 58)).certified() || !is_prime(&u(u64::MAX - 58)).is_prime());
        // 2^89 - 1 is a Mersenne prime, too large for the deterministic range
        let m89 = (BigUint::one() << 89) - BigUint::one();
        let verdict = is_prime(&m89);
        assert!(verdict.is_prime());
        assert!(!verdict.certified());
    }

    #[test]
    fn factorize_large_semiprime() {
        // Two 10-digit primes; forces the rho path.
        let p = BigInt::from(2_147_483_659u64); // prime
        let q = BigInt::from(2_147_483_693u64); // prime
        let n = &p * &q;
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors().len(), 2);
        assert_eq!(f.recompose(), n);
    }

    #[test]
    fn factorize_perfect_power() {
        let p = BigUint::from(1_000_003u64);
        let n = BigInt::from_biguint(Sign::Plus, p.pow(3));
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors().len(), 1);
        assert_eq!(f.v_p(&p), 3);
    }

    #[test]
    fn crt_basic() {
        let x = crt(&[
            (BigInt::from(1), u(4)),
            (BigInt::from(2), u(9)),
        ])
        .unwrap();
        assert_eq!(x, BigInt::from(29));
    }

    #[test]
    fn prime_set_ops() {
        let a = PrimeSet::from_primes([u(2), u(3)], true).unwrap();
        let b = PrimeSet::from_primes([u(3), u(5)], false).unwrap();
        let u_ = a.union(&b);
        assert_eq!(u_.count(), 4); // 2, 3, 5, oo
        let i = a.intersection(&b);
        assert_eq!(i.count(), 1); // 3
        assert!(PrimeSet::from_primes([u(6)], false).is_err());
    }
}
