//! Univariate polynomials with exact integer coefficients: arithmetic,
//! subresultant resultants and discriminants, Sturm-sequence real root
//! counts, and the shift/scale compositions used by the sieve searches.

use crate::arith;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial over Z, coefficients ascending by degree, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Coefficients ascending: `coeffs[i]` multiplies x^i.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by d; errors if the division is not exact.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::Internal(format!("inexact coefficient division by {d}")));
            }
            coeffs.push(q);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// gcd of all coefficients (positive); 0 for the zero polynomial.
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for c in &self.coeffs {
            g = g.gcd(c.magnitude());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient, and the sign of the
    /// original leading coefficient.
    pub fn primitive_part(&self) -> (Self, i32) {
        if self.is_zero() {
            return (Self::zero(), 1);
        }
        let content = BigInt::from_biguint(Sign::Plus, self.content());
        let p = self.div_exact(&content).expect("content divides");
        if p.leading().is_negative() {
            (p.neg(), -1)
        } else {
            (p, 1)
        }
    }

    /// f(a*x + b), computed by Horner over polynomial arithmetic.
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt) -> Self {
        let inner = Self::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f = q*g + r with
    /// deg r < deg g. Requires g nonzero and deg f >= deg g.
    pub fn pseudo_rem(&self, g: &Self) -> Self {
        assert!(!g.is_zero());
        let dg = g.degree();
        let lc_g = g.leading();
        let mut r = self.clone();
        let mut steps = self.degree() + 1 - dg;
        while !r.is_zero() && r.degree() >= dg && steps > 0 {
            let shift = r.degree() - dg;
            let lead = r.leading();
            // r <- lc_g * r - lead * x^shift * g
            let mut scaled = r.scale(&lc_g);
            for (j, c) in g.coeffs.iter().enumerate() {
                scaled.coeffs[j + shift] -= &lead * c;
            }
            scaled.trim();
            r = scaled;
            steps -= 1;
        }
        // pad multiplier so the total power of lc_g is deg f - deg g + 1
        for _ in 0..steps {
            r = r.scale(&lc_g);
        }
        r
    }

    /// Exact division assuming divisor divides self (used with monic g).
    pub fn div_exact_poly(&self, g: &Self) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidInput("polynomial division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.degree() < g.degree() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        let dg = g.degree();
        let lc_g = g.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dg + 1];
        while !r.is_zero() && r.degree() >= dg {
            let shift = r.degree() - dg;
            let (c, rem) = r.leading().div_rem(&lc_g);
            if !rem.is_zero() {
                return Err(Error::Internal("inexact polynomial division".into()));
            }
            q[shift] = c.clone();
            for (j, gc) in g.coeffs.iter().enumerate() {
                r.coeffs[j + shift] -= &c * gc;
            }
            r.trim();
        }
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(Self::from_coeffs(q))
    }

    /// All rational roots, as (numerator, denominator) pairs in lowest terms
    /// with positive denominator. Denominators divide the leading
    /// coefficient, numerators the lowest nonzero coefficient.
    pub fn rational_roots(&self) -> Result<Vec<(BigInt, BigInt)>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("rational_roots of zero polynomial".into()));
        }
        let mut roots = Vec::new();
        // strip x^k
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if k > 0 {
            roots.push((BigInt::zero(), BigInt::one()));
        }
        let f = Self::from_coeffs(self.coeffs[k..].to_vec());
        if f.degree() == 0 {
            return Ok(roots);
        }
        let a0 = f.coeff(0).magnitude().clone();
        let lc = f.leading().magnitude().clone();
        let nums = divisors(&a0)?;
        let dens = divisors(&lc)?;
        for num in &nums {
            for den in &dens {
                if num.gcd(den) != BigUint::one() {
                    continue;
                }
                let d = BigInt::from_biguint(Sign::Plus, den.clone());
                for sgn in [Sign::Plus, Sign::Minus] {
                    let n = BigInt::from_biguint(sgn, num.clone());
                    // f(n/d) = 0 iff sum c_i n^i d^(deg-i) = 0
                    let mut acc = BigInt::zero();
                    let deg = f.degree();
                    for (i, c) in f.coeffs.iter().enumerate() {
                        acc += c * n.pow(i as u32) * d.pow((deg - i) as u32);
                    }
                    if acc.is_zero() {
                        roots.push((n, d.clone()));
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// All positive divisors of n (n > 0), ascending.
fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    if n.is_zero() {
        return Err(Error::InvalidInput("divisors of zero".into()));
    }
    let f = arith::factorize(&BigInt::from_biguint(Sign::Plus, n.clone()))?;
    let mut divs = vec![BigUint::one()];
    for (p, entry) in f.factors() {
        let mut next = Vec::with_capacity(divs.len() * (entry.exponent as usize + 1));
        let mut pe = BigUint::one();
        for _ in 0..=entry.exponent {
            for d in &divs {
                next.push(d * &pe);
            }
            pe *= p;
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Resultant of f and g as the Sylvester determinant, evaluated by
/// fraction-free Bareiss elimination (exact integer arithmetic throughout).
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let m = f.degree();
    let n = g.degree();
    if m == 0 {
        return f.leading().pow(n as u32);
    }
    if n == 0 {
        return g.leading().pow(m as u32);
    }
    let size = m + n;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(size);
    let f_desc: Vec<BigInt> = f.coeffs.iter().rev().cloned().collect();
    let g_desc: Vec<BigInt> = g.coeffs.iter().rev().cloned().collect();
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        row[i..i + m + 1].clone_from_slice(&f_desc);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        row[i..i + n + 1].clone_from_slice(&g_desc);
        rows.push(row);
    }
    bareiss_determinant(rows)
}

/// Determinant by the one-step Bareiss algorithm; all divisions are exact.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Discriminant via the subresultant resultant:
/// disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f), for deg f >= 1.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::InvalidInput("discriminant needs degree >= 1".into()));
    }
    let n = f.degree();
    let res = resultant(f, &f.derivative());
    let lc = f.leading();
    let (q, r) = res.div_rem(&lc);
    if !r.is_zero() {
        return Err(Error::Internal("lc does not divide Res(f, f')".into()));
    }
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Number of distinct real roots, by a Sturm chain over primitive integer
/// polynomials (pseudo-remainders with positive multipliers keep the sign
/// sequence exact). Non-squarefree input is handled by the chain itself,
/// which terminates at gcd(f, f'): the count is of distinct roots.
pub fn sturm_real_roots(f: &IntPoly) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::InvalidInput("sturm on zero polynomial".into()));
    }
    if f.degree() == 0 {
        return Ok(0);
    }
    // Chain of primitive polynomials p0 = f~, p1 = f'~, p_{i+1} = -(prem with
    // positive multiplier, made primitive).
    let mut chain: Vec<IntPoly> = Vec::new();
    let (p0, _) = f.primitive_part();
    let (p1, _) = {
        let d = f.derivative();
        d.primitive_part()
    };
    chain.push(p0);
    chain.push(p1);
    loop {
        let n = chain.len();
        let a = &chain[n - 2];
        let b = &chain[n - 1];
        if b.is_zero() {
            chain.pop();
            break;
        }
        if a.degree() < b.degree() {
            break; // b constant handled below; degenerate guard
        }
        let delta = a.degree() - b.degree();
        let lc = b.leading();
        // Ensure the implicit prem multiplier lc^(delta+1) is positive, so
        // the remainder keeps the sign of a true Euclidean remainder.
        let mut r = a.pseudo_rem(b);
        if lc.is_negative() && (delta + 1) % 2 == 1 {
            r = r.neg();
        }
        let neg = r.neg();
        if neg.is_zero() {
            break;
        }
        let (mag, _) = neg.primitive_part(); // positive leading coefficient
        let next = if neg.leading().is_negative() { mag.neg() } else { mag };
        let stop = next.degree() == 0;
        chain.push(next);
        if stop {
            break;
        }
    }

    let sign_at = |p: &IntPoly, at_plus_infinity: bool| -> i32 {
        let lc = p.leading();
        let base = if lc.is_positive() {
            1
        } else if lc.is_negative() {
            -1
        } else {
            0
        };
        if at_plus_infinity || p.degree() % 2 == 0 {
            base
        } else {
            -base
        }
    };
    let variations = |at_plus: bool| -> u32 {
        let mut count = 0u32;
        let mut last = 0i32;
        for p in &chain {
            let s = sign_at(p, at_plus);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    };
    let at_minus = variations(false);
    let at_plus = variations(true);
    Ok(at_minus.saturating_sub(at_plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn basic_arithmetic() {
        let f = p(&[1, 2, 3]); // 3x^2 + 2x + 1
        assert_eq!(f.degree(), 2);
        assert_eq!(f.eval(&BigInt::from(2)), BigInt::from(17));
        let d = f.derivative();
        assert_eq!(d, p(&[2, 6]));
        assert_eq!(f.mul(&p(&[-1, 1])), p(&[-1, -1, -1, 3])); // (x-1)f
    }

    #[test]
    fn compose_linear_shift() {
        // f(x) = x^2 + x + 2 at 2y + 0 -> 4y^2 + 2y + 2
        let f = p(&[2, 1, 1]);
        assert_eq!(f.compose_linear(&BigInt::from(2), &BigInt::zero()), p(&[2, 2, 4]));
        // f(x+1) = x^2 + 3x + 4
        assert_eq!(f.compose_linear(&BigInt::one(), &BigInt::one()), p(&[4, 3, 1]));
    }

    #[test]
    fn resultant_discriminant_oracle_values() {
        // disc(x^2 - 2) = 8
        assert_eq!(discriminant(&p(&[-2, 0, 1])).unwrap(), BigInt::from(8));
        // disc(x^3 - x - 1) = -4(-1)^3 - 27(-1)^2 = -23
        assert_eq!(discriminant(&p(&[-1, -1, 0, 1])).unwrap(), BigInt::from(-23));
        // disc(x^4 - x^3 - 1) = -283 (subresultant computation)
        assert_eq!(discriminant(&p(&[-1, 0, 0, -1, 1])).unwrap(), BigInt::from(-283));
        // disc(x^5 - x^4 - 1) = 3381 = disc(x^2-x+1) * disc(x^3-x-1) * Res^2
        assert_eq!(discriminant(&p(&[-1, 0, 0, 0, -1, 1])).unwrap(), BigInt::from(3381));
        // disc(x^2 + 1) = -4
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), BigInt::from(-4));
    }

    #[test]
    fn resultant_multiplicativity() {
        // Res(fg, h) = Res(f, h) * Res(g, h)
        let f = p(&[1, 3, 1]);
        let g = p(&[-2, 0, 5]);
        let h = p(&[7, -1, 2]);
        assert_eq!(resultant(&f.mul(&g), &h), resultant(&f, &h) * resultant(&g, &h));
        // Res(f, g) = (-1)^(deg f * deg g) Res(g, f)
        assert_eq!(resultant(&f, &g), resultant(&g, &f));
        let lin = p(&[-3, 2]); // 2x - 3
        let cubic = p(&[1, 0, -4, 5]);
        assert_eq!(resultant(&cubic, &lin), -resultant(&lin, &cubic));
        assert_eq!(resultant(&f, &lin), resultant(&lin, &f));
    }

    #[test]
    fn resultant_root_evaluation() {
        // Res(x - a, g) = g(a) for monic linear
        let g = p(&[4, -2, 0, 1]);
        for a in [-3i64, 0, 2, 11] {
            let lin = IntPoly::from_coeffs(vec![BigInt::from(-a), BigInt::one()]);
            assert_eq!(resultant(&lin, &g), g.eval(&BigInt::from(a)));
        }
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_real_roots(&p(&[1, 0, 1])).unwrap(), 0); // x^2 + 1
        assert_eq!(sturm_real_roots(&p(&[-2, 0, 1])).unwrap(), 2); // x^2 - 2
        assert_eq!(sturm_real_roots(&p(&[-1, 0, 0, -1, 1])).unwrap(), 2); // x^4 - x^3 - 1
        assert_eq!(sturm_real_roots(&p(&[0, -1, 0, 1])).unwrap(), 3); // x^3 - x
        assert_eq!(sturm_real_roots(&p(&[1, 0, 0, 0, 1])).unwrap(), 0); // x^4 + 1
        assert_eq!(sturm_real_roots(&p(&[-1, 0, 0, 0, 1])).unwrap(), 2); // x^4 - 1
        // repeated roots count once: (x-1)^2 (x+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert_eq!(sturm_real_roots(&f).unwrap(), 2);
    }

    #[test]
    fn rational_roots_examples() {
        let f = p(&[-1, 0, 0, 0, 1]); // x^4 - 1 -> roots 1, -1
        let roots = f.rational_roots().unwrap();
        assert!(roots.contains(&(BigInt::one(), BigInt::one())));
        assert!(roots.contains(&(BigInt::from(-1), BigInt::one())));
        assert_eq!(roots.len(), 2);
        // 2x - 3 -> root 3/2
        let g = p(&[-3, 2]);
        assert_eq!(g.rational_roots().unwrap(), vec![(BigInt::from(3), BigInt::from(2))]);
        // x^4 - x^3 - 1 has none
        assert!(p(&[-1, 0, 0, -1, 1]).rational_roots().unwrap().is_empty());
    }

    #[test]
    fn pseudo_rem_agrees_with_scaled_euclid() {
        let f = p(&[3, -1, 4, 1]);
        let g = p(&[1, 2, 2]);
        let r = f.pseudo_rem(&g);
        // lc(g)^(3-2+1) f = qg + r must hold at a few points
        let lc = g.leading().pow(2);
        for x in [-2i64, 0, 1, 5] {
            let x = BigInt::from(x);
            let lhs = &lc * f.eval(&x);
            let rv = r.eval(&x);
            let gv = g.eval(&x);
            // (lhs - rv) divisible by g(x) when g(x) != 0
            if !gv.is_zero() {
                assert!(((lhs - rv) % gv).is_zero());
            }
        }
    }
}
