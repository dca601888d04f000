//! Univariate polynomial arithmetic and complete factorization over prime
//! fields F_p with p in machine-word range: squarefree decomposition,
//! distinct-degree splitting, and randomized equal-degree splitting whose
//! seed is derived from the input, so identical inputs factor identically.

use crate::arith::{self, splitmix64};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

/// Polynomial over F_p: residues ascending by degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if p < 2 || !arith::is_prime(&p.into()).is_prime() {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        let mut poly = Self { p, coeffs };
        poly.trim();
        Ok(poly)
    }

    /// Reduction of an integer polynomial mod p.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Result<Self> {
        let pb = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                debug_assert!(!r.is_negative());
                r.to_u64().expect("residue fits")
            })
            .collect();
        Self::new(p, coeffs)
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        let mut poly = Self { p, coeffs: vec![c % p] };
        poly.trim();
        poly
    }

    pub fn x(p: u64) -> Self {
        Self { p, coeffs: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x % self.p, self.p) + c) % self.p;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        let mut r = Self { p: self.p, coeffs };
        r.trim();
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
            .collect();
        let mut r = Self { p: self.p, coeffs };
        r.trim();
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        let mut r = Self { p: self.p, coeffs };
        r.trim();
        r
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let coeffs = self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect();
        let mut r = Self { p: self.p, coeffs };
        r.trim();
        r
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(invmod(self.leading(), self.p))
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, g: &Self) -> (Self, Self) {
        debug_assert_eq!(self.p, g.p);
        assert!(!g.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.is_zero() || self.degree() < g.degree() {
            return (Self::zero(p), self.clone());
        }
        let lg_inv = invmod(g.leading(), p);
        let mut r = self.coeffs.clone();
        let dg = g.degree();
        let mut q = vec![0u64; self.degree() - dg + 1];
        for k in (dg..r.len()).rev() {
            let c = mulmod(r[k], lg_inv, p);
            if c == 0 {
                continue;
            }
            q[k - dg] = c;
            for (j, &gc) in g.coeffs.iter().enumerate() {
                let idx = k - dg + j;
                r[idx] = (r[idx] + p - mulmod(c, gc, p)) % p;
            }
        }
        let mut quo = Self { p, coeffs: q };
        quo.trim();
        let mut rem = Self { p, coeffs: r[..dg.min(r.len())].to_vec() };
        rem.trim();
        (quo, rem)
    }

    pub fn rem(&self, g: &Self) -> Self {
        self.divrem(g).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % self.p, self.p))
            .collect();
        let mut r = Self { p: self.p, coeffs };
        r.trim();
        r
    }

    /// self^exp mod f, by square and multiply.
    pub fn powmod(&self, exp: &BigUint, f: &Self) -> Self {
        let mut base = self.rem(f);
        let mut acc = Self::constant(self.p, 1);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(f);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(f);
            }
        }
        acc
    }

    /// p-th root of a polynomial whose exponents are all multiples of p
    /// (i.e. g(x^p) |-> g(x), using c^(1/p) = c^(p^(k-1)) wait: over F_p,
    /// c^p = c, so coefficients carry over unchanged).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let coeffs: Vec<u64> = self.coeffs.iter().step_by(p).copied().collect();
        let mut r = Self { p: self.p, coeffs };
        r.trim();
        r
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == 0 {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).degree() == 0
    }
}

/// Complete factorization over F_p: unit * prod of monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationModP {
    pub unit: u64,
    /// Monic irreducible factors with multiplicities, sorted.
    pub factors: Vec<(PolyModP, u32)>,
}

impl FactorizationModP {
    pub fn recompose(&self, p: u64) -> PolyModP {
        let mut acc = PolyModP::constant(p, self.unit);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

fn derive_seed(f: &PolyModP) -> u64 {
    let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ f.p;
    for &c in &f.coeffs {
        state ^= splitmix64(&mut state) ^ c;
    }
    state
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        splitmix64(&mut self.0)
    }

    fn random_poly(&mut self, p: u64, max_degree: usize) -> PolyModP {
        let coeffs = (0..=max_degree).map(|_| self.next() % p).collect();
        let mut r = PolyModP { p, coeffs };
        r.trim();
        r
    }
}

/// Squarefree decomposition: returns (g, multiplicity) pairs with the g
/// monic squarefree and pairwise coprime, prod g^mult = input/lc.
fn squarefree_decomposition(f: &PolyModP) -> Vec<(PolyModP, u32)> {
    let p = f.p;
    let mut out: Vec<(PolyModP, u32)> = Vec::new();
    let mut stack = vec![(f.make_monic(), 1u32)];
    while let Some((f, outer)) = stack.pop() {
        if f.degree() == 0 {
            continue;
        }
        let d = f.derivative();
        if d.is_zero() {
            // f = g(x^p); every factor multiplicity gains a factor p
            stack.push((f.pth_root(), outer * p as u32));
            continue;
        }
        let mut c = f.gcd(&d);
        let mut w = f.divrem(&c).0;
        // Yun-style loop: w collects factors of multiplicity not divisible
        // by p; i counts the current multiplicity.
        let mut i = 1u32;
        while w.degree() > 0 {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).0;
            if fac.degree() > 0 {
                out.push((fac, i * outer));
            }
            w = y.clone();
            c = c.divrem(&y).0;
            i += 1;
        }
        if c.degree() > 0 {
            stack.push((c.pth_root(), outer * p as u32));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial: returns
/// (product-of-irreducibles-of-degree-d, d) pairs ascending in d.
fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = PolyModP::x(p);
    let mut h = x.clone(); // x^(p^d) mod f, starting d = 0
    let mut d = 0usize;
    while f.degree() > 0 {
        d += 1;
        if 2 * d > f.degree() {
            // what is left is a single irreducible
            out.push((f.clone(), f.degree()));
            break;
        }
        h = h.powmod(&BigUint::from(p), &f);
        let g = h.sub(&x).gcd(&f);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            f = f.divrem(&g).0;
            h = h.rem(&f);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f monic squarefree, all
/// irreducible factors of degree d.
fn equal_degree(f: &PolyModP, d: usize, rng: &mut Rng, out: &mut Vec<PolyModP>) {
    if f.degree() == d {
        out.push(f.clone());
        return;
    }
    let p = f.p;
    let split = loop {
        let a = rng.random_poly(p, f.degree().max(1));
        if a.is_zero() {
            continue;
        }
        let g = a.gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            break g;
        }
        let candidate = if p == 2 {
            // trace map sum a^(2^i) for i < d
            let mut t = PolyModP::zero(2);
            let mut power = a.rem(f);
            let two = BigUint::from(2u32);
            for _ in 0..d {
                t = t.add(&power);
                power = power.powmod(&two, f);
            }
            t
        } else {
            // a^((p^d - 1)/2) - 1
            let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.powmod(&exp, f);
            b.sub(&PolyModP::constant(p, 1))
        };
        let g = candidate.gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            break g;
        }
    };
    let rest = f.divrem(&split).0;
    equal_degree(&split, d, rng, out);
    equal_degree(&rest, d, rng, out);
}

/// Complete factorization into monic irreducibles with multiplicities.
/// Deterministic: the equal-degree splitting seed is derived from the input.
pub fn factor_mod_p(f: &PolyModP) -> Result<FactorizationModP> {
    if f.is_zero() {
        return Err(Error::InvalidInput("factor_mod_p: zero polynomial".into()));
    }
    let unit = f.leading();
    let mut rng = Rng(derive_seed(f));
    let mut factors: Vec<(PolyModP, u32)> = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            let mut irreducibles = Vec::new();
            equal_degree(&h, d, &mut rng, &mut irreducibles);
            for irr in irreducibles {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort();
    debug_assert_eq!(
        FactorizationModP { unit, factors: factors.clone() }.recompose(f.p),
        *f
    );
    Ok(FactorizationModP { unit, factors })
}

/// Degrees of the irreducible factors of a squarefree polynomial, as a
/// sorted multiset. Rejects non-squarefree input.
pub fn factor_type(f: &PolyModP) -> Result<Vec<usize>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("factor_type: zero polynomial".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::InvalidInput(
            "factor_type: input is not squarefree mod p".into(),
        ));
    }
    let mut degrees = Vec::new();
    for (g, d) in distinct_degree(&f.make_monic()) {
        let count = g.degree() / d;
        degrees.extend(std::iter::repeat(d).take(count));
    }
    degrees.sort_unstable();
    debug_assert_eq!(degrees.iter().sum::<usize>(), f.degree());
    Ok(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, coeffs: &[i64]) -> PolyModP {
        let coeffs = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        PolyModP::new(p, coeffs).unwrap()
    }

    // x^4 - x^3 - 1 in various characteristics
    fn trinomial(p: u64) -> PolyModP {
        poly(p, &[-1, 0, 0, -1, 1])
    }

    #[test]
    fn division_invariant() {
        let f = poly(7, &[3, 0, 2, 5, 1]);
        let g = poly(7, &[1, 4, 2]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree() < g.degree());
    }

    #[test]
    fn trinomial_irreducible_mod_2() {
        let f = trinomial(2);
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0, f);
        assert_eq!(fac.factors[0].1, 1);
        assert_eq!(factor_type(&f).unwrap(), vec![4]);
    }

    #[test]
    fn square_mod_2() {
        // x^2 - 1 = (x+1)^2 mod 2
        let f = poly(2, &[-1, 0, 1]);
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0, poly(2, &[1, 1]));
        assert_eq!(fac.factors[0].1, 2);
        assert!(factor_type(&f).is_err()); // not squarefree
    }

    #[test]
    fn trinomial_mod_7_splits() {
        // x^4 - x^3 - 1 = (x - 2)(x^3 + x^2 + 2x + 4) mod 7
        let f = trinomial(7);
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let linear = poly(7, &[-2, 1]);
        let cubic = poly(7, &[4, 2, 1, 1]);
        assert!(fac.factors.iter().any(|(g, e)| *g == linear && *e == 1));
        assert!(fac.factors.iter().any(|(g, e)| *g == cubic && *e == 1));
        assert_eq!(factor_type(&f).unwrap(), vec![1, 3]);
    }

    #[test]
    fn factor_type_examples() {
        assert_eq!(factor_type(&trinomial(2)).unwrap(), vec![4]);
        assert_eq!(factor_type(&trinomial(7)).unwrap(), vec![1, 3]);
        // x^2 - x mod 5 = x(x-1)
        assert_eq!(factor_type(&poly(5, &[0, -1, 0, 1])).is_err(), false);
        assert_eq!(factor_type(&poly(5, &[0, 4, 1])).unwrap(), vec![1, 1]);
    }

    #[test]
    fn recompose_random() {
        let mut rng = Rng(0xfeed);
        for &p in &[2u64, 3, 5, 13, 101, 9973] {
            for _ in 0..40 {
                let deg = (rng.next() % 9 + 1) as usize;
                let f = rng.random_poly(p, deg);
                if f.is_zero() || f.degree() == 0 {
                    continue;
                }
                let fac = factor_mod_p(&f).unwrap();
                assert_eq!(fac.recompose(p), f, "p={p} f={f:?}");
                for (g, _) in &fac.factors {
                    assert!(g.is_monic());
                    // irreducibility spot check: no roots for deg <= 3
                    if g.degree() >= 2 && g.degree() <= 3 && p < 200 {
                        for x in 0..p {
                            assert_ne!(g.eval(x), 0, "claimed irreducible factor has a root");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let f = poly(13, &[5, 1, 0, 3, 7, 1]);
        let a = factor_mod_p(&f).unwrap();
        let b = factor_mod_p(&f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn type_sum_equals_degree() {
        let mut rng = Rng(42);
        for &p in &[2u64, 3, 11, 257] {
            for _ in 0..30 {
                let deg = (rng.next() % 10 + 1) as usize;
                let f = rng.random_poly(p, deg);
                if f.is_zero() || f.degree() == 0 || !f.is_squarefree() {
                    continue;
                }
                let t = factor_type(&f).unwrap();
                assert_eq!(t.iter().sum::<usize>(), f.degree());
            }
        }
    }
}
