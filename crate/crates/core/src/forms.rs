//! Binary homogeneous forms over Z and the searches built on them:
//! evaluation, the GL2(Z) action, irreducibility for the degrees the
//! pipeline needs, local obstructions and the obstruction-removing shift,
//! the beta-sieve bound evaluator, and deterministic witness searches over
//! S-adic neighborhoods of the projective line.
//!
//! Candidate points are enumerated by increasing height max(|a|, |bN|);
//! at equal height the positive first coordinate comes before the negative
//! one, and the second coordinate ascends. Searches are reproducible.

use crate::arith::{self, FactorConfig, PrimeSet};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero, ToPrimitive};
use std::fmt;

/// A primitive point [a : b] of the projective line, unique representative
/// with b > 0, or b = 0 and a = 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    a: BigInt,
    b: BigInt,
}

impl ProjPoint {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("projective point (0, 0)".into()));
        }
        let g = BigInt::from_biguint(Sign::Plus, a.magnitude().gcd(b.magnitude()));
        let (mut a, mut b) = (a / &g, b / &g);
        if b.is_negative() || (b.is_zero() && a.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(Self { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn infinity() -> Self {
        Self { a: BigInt::one(), b: BigInt::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

/// A binary homogeneous form: coefficient i multiplies t^(d-i) s^i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Coefficients for t^d, t^(d-1)s, ..., s^d. Degree d >= 1 and at least
    /// one coefficient nonzero.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput("binary form needs degree >= 1".into()));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("zero binary form".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The linear form t.
    pub fn t() -> Self {
        Self { coeffs: vec![BigInt::one(), BigInt::zero()] }
    }

    /// The linear form s.
    pub fn s() -> Self {
        Self { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for c in &self.coeffs {
            g = g.gcd(c.magnitude());
        }
        g
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn eval_pair(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let d = self.degree();
        let mut total = BigInt::zero();
        let mut b_pow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += c * a.pow((d - i) as u32) * &b_pow;
            }
            if i < d {
                b_pow *= b;
            }
        }
        total
    }

    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        self.eval_pair(&p.a, &p.b)
    }

    /// Dehomogenization f(x) = F(x, 1).
    pub fn dehomogenize(&self) -> IntPoly {
        let d = self.degree();
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// True if the two forms agree up to a rational constant.
    pub fn is_associate(&self, other: &Self) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let n = self.coeffs.len();
        for i in 0..n {
            for j in i + 1..n {
                if &self.coeffs[i] * &other.coeffs[j] != &self.coeffs[j] * &other.coeffs[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
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
            let tp = d - i;
            let sp = i;
            if !mag.is_one() || (tp == 0 && sp == 0) {
                write!(f, "{mag}")?;
            }
            if tp > 0 {
                write!(f, "t")?;
                if tp > 1 {
                    write!(f, "^{tp}")?;
                }
            }
            if sp > 0 {
                write!(f, "s")?;
                if sp > 1 {
                    write!(f, "^{sp}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An integer matrix with determinant +-1, acting on points and forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2z {
    pub x1: BigInt,
    pub x2: BigInt,
    pub y1: BigInt,
    pub y2: BigInt,
}

impl Gl2z {
    pub fn new(x1: BigInt, x2: BigInt, y1: BigInt, y2: BigInt) -> Result<Self> {
        let det = &x1 * &y2 - &x2 * &y1;
        if det.magnitude() != &BigUint::one() {
            return Err(Error::InvalidInput(format!("determinant {det} not +-1")));
        }
        Ok(Self { x1, x2, y1, y2 })
    }

    pub fn from_i64(x1: i64, x2: i64, y1: i64, y2: i64) -> Result<Self> {
        Self::new(BigInt::from(x1), BigInt::from(x2), BigInt::from(y1), BigInt::from(y2))
    }

    pub fn identity() -> Self {
        Self {
            x1: BigInt::one(),
            x2: BigInt::zero(),
            y1: BigInt::zero(),
            y2: BigInt::one(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.x1 * &self.y2 - &self.x2 * &self.y1
    }

    pub fn inverse(&self) -> Self {
        // adjugate over det; det = +-1 keeps entries integral
        let det = self.det();
        Self {
            x1: &self.y2 * &det,
            x2: -(&self.x2 * &det),
            y1: -(&self.y1 * &det),
            y2: &self.x1 * &det,
        }
    }

    /// Raw image of (a, b) without re-normalization.
    pub fn apply_raw(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (&self.x1 * a + &self.x2 * b, &self.y1 * a + &self.y2 * b)
    }
}

/// The action g[a : b] = [x1 a + x2 b : y1 a + y2 b], re-normalized to the
/// primitive representative.
pub fn act(g: &Gl2z, p: &ProjPoint) -> ProjPoint {
    let (a, b) = g.apply_raw(&p.a, &p.b);
    ProjPoint::new(a, b).expect("unimodular image of a point is a point")
}

/// The compatible action on forms: act_form(g, F) = F composed with g^{-1},
/// so act_form(g, F) evaluated on the raw pair g(a, b) equals F(a, b)
/// exactly, and act_form(g, F)(P) = F(act(g^{-1}, P)) up to the sign
/// (-1)^(deg F) introduced when the image representative is normalized.
pub fn act_form(g: &Gl2z, form: &BinaryForm) -> BinaryForm {
    compose_form(form, &g.inverse())
}

/// F(x1 t + x2 s, y1 t + y2 s) as a binary form.
fn compose_form(form: &BinaryForm, m: &Gl2z) -> BinaryForm {
    let d = form.degree();
    let u = vec![m.x1.clone(), m.x2.clone()];
    let v = vec![m.y1.clone(), m.y2.clone()];
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut u_pows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    let mut v_pows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for k in 1..=d {
        u_pows.push(mul(&u_pows[k - 1], &u));
        v_pows.push(mul(&v_pows[k - 1], &v));
    }
    let mut out = vec![BigInt::zero(); d + 1];
    for (i, c) in form.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = mul(&u_pows[d - i], &v_pows[i]);
        for (k, t) in term.iter().enumerate() {
            out[k] += c * t;
        }
    }
    BinaryForm { coeffs: out }
}

/// Verdict of the irreducibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Undetermined,
}

/// Exact irreducibility over Q for degree <= 3 (the s-factor is peeled
/// first, then rational-root and square-discriminant tests on the
/// dehomogenization). For degree >= 4: `Irreducible` when some prime not
/// dividing the leading coefficient gives an irreducible reduction,
/// `Reducible` when a rational root is found, `Undetermined` otherwise.
pub fn is_irreducible(form: &BinaryForm) -> Result<Irreducibility> {
    if !form.is_primitive() {
        return Err(Error::InvalidInput("is_irreducible requires a primitive form".into()));
    }
    let d = form.degree();
    if d == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    // s | F iff the t^d coefficient vanishes; t | F iff the s^d one does.
    if form.coeffs[0].is_zero() || form.coeffs[d].is_zero() {
        return Ok(Irreducibility::Reducible);
    }
    let f = form.dehomogenize(); // degree d, nonzero constant term
    match d {
        2 => {
            let disc = f.coeff(1).pow(2) - BigInt::from(4) * f.coeff(0) * f.coeff(2);
            if disc.is_negative() {
                return Ok(Irreducibility::Irreducible);
            }
            let r = disc.magnitude().sqrt();
            Ok(if &(&r * &r) == disc.magnitude() {
                Irreducibility::Reducible
            } else {
                Irreducibility::Irreducible
            })
        }
        3 => {
            if f.rational_roots()?.is_empty() {
                Ok(Irreducibility::Irreducible)
            } else {
                Ok(Irreducibility::Reducible)
            }
        }
        _ => {
            if !f.rational_roots()?.is_empty() {
                return Ok(Irreducibility::Reducible);
            }
            let lc = f.leading();
            for &p in arith::primes_up_to(200)? {
                if (&lc % BigInt::from(p)).is_zero() {
                    continue;
                }
                let fp = crate::ffpoly::PolyModP::from_int_poly(&f, p)?;
                if fp.degree() != d || !fp.is_squarefree() {
                    continue;
                }
                if crate::ffpoly::factor_type(&fp)? == vec![d] {
                    return Ok(Irreducibility::Irreducible);
                }
            }
            Ok(Irreducibility::Undetermined)
        }
    }
}

/// Primes p <= deg F at which F vanishes on all p + 1 points of the
/// projective line over F_p; a primitive form admits no others.
pub fn local_obstruction_primes(form: &BinaryForm) -> Result<PrimeSet> {
    if !form.is_primitive() {
        return Err(Error::InvalidInput(
            "local_obstruction_primes requires a primitive form".into(),
        ));
    }
    let d = form.degree() as u64;
    let mut out = PrimeSet::empty();
    for &p in arith::primes_up_to(d.min(arith::TRIAL_DIVISION_BOUND))? {
        let pb = BigInt::from(p);
        let mut vanishes = (0..p).all(|x| {
            (form.eval_pair(&BigInt::one(), &BigInt::from(x)) % &pb).is_zero()
        });
        if vanishes {
            vanishes = (form.eval_pair(&BigInt::zero(), &BigInt::one()) % &pb).is_zero();
        }
        if vanishes {
            out.insert_known_prime(BigUint::from(p));
        }
    }
    Ok(out)
}

/// Result of removing local obstructions at the primes of S from f.
#[derive(Clone, Debug)]
pub struct ObstructionShift {
    /// N = prod over p in S of p^(alpha_p), alpha_p maximal with
    /// f identically zero mod p^(alpha_p).
    pub n: BigUint,
    /// Shift satisfying f(a) not divisible by p^(alpha_p + 1) for p in S.
    pub a: BigInt,
    /// g(y) = f(N y + a) / N, integral with no local obstruction anywhere.
    pub g: IntPoly,
}

/// Fixed divisor of f: gcd of f(0), ..., f(deg f), which equals the gcd of
/// f(n) over all integers n.
fn fixed_divisor(f: &IntPoly) -> BigUint {
    let mut g = BigUint::zero();
    for n in 0..=f.degree() as i64 {
        let v = f.eval(&BigInt::from(n));
        g = g.gcd(v.magnitude());
        if g.is_one() {
            break;
        }
    }
    g
}

/// The obstruction-removing substitution g(y) = f(Ny + a)/N. Errors when f
/// has a local obstruction at a prime outside S, naming the prime.
pub fn obstruction_shift(f: &IntPoly, s: &PrimeSet) -> Result<ObstructionShift> {
    if f.is_zero() {
        return Err(Error::InvalidInput("obstruction_shift: zero polynomial".into()));
    }
    let d = fixed_divisor(f);
    if d.is_zero() {
        return Err(Error::InvalidInput(
            "obstruction_shift: f vanishes on 0..=deg f".into(),
        ));
    }
    let d_fact = arith::factorize(&BigInt::from_biguint(Sign::Plus, d.clone()))?;
    for p in d_fact.factors().keys() {
        if !s.contains_finite(p) {
            return Err(Error::LocalObstruction(p.clone()));
        }
    }
    let mut n = BigUint::one();
    let mut congruences: Vec<(BigInt, BigUint)> = Vec::new();
    for p in s.finite() {
        let alpha = d_fact.v_p(p);
        n *= p.pow(alpha);
        // a_p in [0, p^(alpha+1)) with f(a_p) != 0 mod p^(alpha+1); exists
        // by maximality of alpha
        let modulus = p.pow(alpha + 1);
        let modulus_int = BigInt::from_biguint(Sign::Plus, modulus.clone());
        let Some(bound) = modulus.to_u64().filter(|&m| m <= 1 << 20) else {
            return Err(Error::BudgetExhausted(format!(
                "obstruction scan modulus p^(alpha+1) = {modulus} too large"
            )));
        };
        let mut found = None;
        for cand in 0..bound {
            let v = f.eval(&BigInt::from(cand));
            if !(v % &modulus_int).is_zero() {
                found = Some(cand);
                break;
            }
        }
        let a_p = found.ok_or_else(|| {
            Error::Internal("maximality of alpha_p violated in obstruction scan".into())
        })?;
        congruences.push((BigInt::from(a_p), modulus));
    }
    let a = arith::crt(&congruences)?;
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let g = f.compose_linear(&n_int, &a).div_exact(&n_int)?;
    debug_assert!(fixed_divisor(&g).is_one());
    Ok(ObstructionShift { n, a, g })
}

/// Least integer strictly greater than
/// d - 1 + r * sum_{j=1..r} 1/j + r * ln(2d/r + 1/(r+1)),
/// with d the total degree and r the number of forms.
pub fn beta_sieve_bound(degrees: &[u32]) -> Result<u64> {
    if degrees.is_empty() || degrees.iter().any(|&d| d == 0) {
        return Err(Error::InvalidInput("degrees must be nonempty and positive".into()));
    }
    let d: u32 = degrees.iter().sum();
    let r = degrees.len() as u32;
    let harmonic: f64 = (1..=r).map(|j| 1.0 / f64::from(j)).sum();
    let rhs = (f64::from(d) - 1.0)
        + f64::from(r) * harmonic
        + f64::from(r) * (2.0 * f64::from(d) / f64::from(r) + 1.0 / (f64::from(r) + 1.0)).ln();
    Ok(rhs.floor() as u64 + 1)
}

/// The S-adic neighborhood V_N of [1 : 0]: points [a : bN] with
/// gcd(a, bN) = 1 and |bN / a| <= 1/N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeighborhoodVN {
    n: u64,
}

impl NeighborhoodVN {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("V_N needs N >= 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Exact membership: N divides the second coordinate and
    /// |beta| * N <= |alpha| (with beta = bN this is |bN/a| <= 1/N).
    pub fn contains(&self, p: &ProjPoint) -> bool {
        let n = BigInt::from(self.n);
        if !(&p.b % &n).is_zero() {
            return false;
        }
        &p.b * &n <= p.a.abs()
    }

    /// Candidate points in the fixed deterministic order: height
    /// max(|a|, |bN|) = |a| ascending; at equal height a = +H before -H,
    /// then b ascending from 0.
    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + 'static {
        let n = self.n;
        (1u64..).flat_map(move |h| {
            [false, true].into_iter().flat_map(move |negative| {
                let bmax = h / (n * n);
                (0..=bmax).filter_map(move |b| {
                    if b == 0 {
                        // [a : 0] is primitive only for a = +-1
                        if negative || h != 1 {
                            return None;
                        }
                        return Some(ProjPoint::infinity());
                    }
                    let beta = b * n;
                    if h.gcd(&beta) != 1 {
                        return None;
                    }
                    let a = if negative { -(h as i64) } else { h as i64 };
                    Some(ProjPoint { a: BigInt::from(a), b: BigInt::from(beta) })
                })
            })
        })
    }
}

/// All primitive points ordered by height max(|a|, |b|), same tie-break as
/// the V_N enumeration; used for base-point searches.
pub fn all_points() -> impl Iterator<Item = ProjPoint> {
    (1u64..).flat_map(|h| {
        let top = [false, true].into_iter().flat_map(move |negative| {
            (0..=h).filter_map(move |b| {
                if b == 0 {
                    if negative || h != 1 {
                        return None;
                    }
                    return Some(ProjPoint::infinity());
                }
                if h.gcd(&b) != 1 {
                    return None;
                }
                let a = if negative { -(h as i64) } else { h as i64 };
                Some(ProjPoint { a: BigInt::from(a), b: BigInt::from(b) })
            })
        });
        // remaining points at this height: b = h, |a| < h
        let side = (0..h).flat_map(move |abs_a| {
            let signs: &'static [bool] = if abs_a == 0 { &[false] } else { &[false, true] };
            signs.iter().filter_map(move |&negative| {
                if abs_a == 0 {
                    if h == 1 {
                        return Some(ProjPoint { a: BigInt::zero(), b: BigInt::one() });
                    }
                    return None;
                }
                if abs_a.gcd(&h) != 1 {
                    return None;
                }
                let a = if negative { -(abs_a as i64) } else { abs_a as i64 };
                Some(ProjPoint { a: BigInt::from(a), b: BigInt::from(h) })
            })
        });
        top.chain(side)
    })
}

/// Parses a homogeneous form in the variables t and s with integer
/// coefficients, e.g. "t - 2s", "256t + 27s", "t^2 + t s + s^2".
/// Multiplication signs are optional; every term must have the same total
/// degree.
pub fn parse_form(text: &str) -> Result<BinaryForm> {
    #[derive(Default)]
    struct Term {
        coeff: BigInt,
        t_exp: u32,
        s_exp: u32,
    }
    let mut terms: Vec<Term> = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    let err = |msg: &str| Error::InvalidInput(format!("form '{text}': {msg}"));
    while i < bytes.len() {
        while i < bytes.len() && (bytes[i].is_whitespace() || bytes[i] == '*') {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        // sign
        let mut negative = false;
        let mut saw_sign = false;
        while i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                negative = !negative;
            }
            saw_sign = true;
            i += 1;
            while i < bytes.len() && bytes[i].is_whitespace() {
                i += 1;
            }
        }
        if !terms.is_empty() && !saw_sign {
            return Err(err("expected '+' or '-' between terms"));
        }
        if i >= bytes.len() {
            return Err(err("dangling sign"));
        }
        // coefficient digits
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut term = Term {
            coeff: if i > start {
                let digits: String = bytes[start..i].iter().collect();
                digits.parse::<BigInt>().map_err(|_| err("bad integer"))?
            } else {
                BigInt::one()
            },
            ..Default::default()
        };
        if negative {
            term.coeff = -term.coeff;
        }
        // monomial: sequence of t/s with optional ^power, '*' allowed
        let mut saw_var = false;
        loop {
            while i < bytes.len() && (bytes[i].is_whitespace() || bytes[i] == '*') {
                i += 1;
            }
            if i >= bytes.len() || (bytes[i] != 't' && bytes[i] != 's') {
                break;
            }
            let var = bytes[i];
            i += 1;
            let mut exp = 1u32;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let d0 = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == d0 {
                    return Err(err("expected exponent digits after '^'"));
                }
                let digits: String = bytes[d0..i].iter().collect();
                exp = digits.parse().map_err(|_| err("bad exponent"))?;
            }
            if var == 't' {
                term.t_exp += exp;
            } else {
                term.s_exp += exp;
            }
            saw_var = true;
        }
        if i == start && !saw_var {
            return Err(err(&format!("unexpected character '{}'", bytes[i])));
        }
        terms.push(term);
    }
    if terms.is_empty() {
        return Err(err("empty form"));
    }
    let degree = terms[0].t_exp + terms[0].s_exp;
    if degree == 0 {
        return Err(err("constant forms are not allowed"));
    }
    let mut coeffs = vec![BigInt::zero(); degree as usize + 1];
    for term in &terms {
        if term.t_exp + term.s_exp != degree {
            return Err(err("terms have different total degrees (not homogeneous)"));
        }
        coeffs[term.s_exp as usize] += &term.coeff;
    }
    BinaryForm::new(coeffs)
}

/// Parses a ;-separated list of forms.
pub fn parse_forms(text: &str) -> Result<Vec<BinaryForm>> {
    text.split(';').map(parse_form).collect()
}

/// Witness returned by `empirical_b`.
#[derive(Clone, Debug)]
pub struct EmpiricalWitness {
    pub point: ProjPoint,
    /// #Prms_S of the product of form values at the witness.
    pub count: usize,
    /// The primes counted.
    pub primes: PrimeSet,
    /// Product of the form values at the witness.
    pub product: BigInt,
    /// Candidates examined up to and including the witness.
    pub examined: u64,
}

fn validate_search_forms(forms: &[BinaryForm]) -> Result<()> {
    if forms.is_empty() {
        return Err(Error::InvalidInput("no forms given".into()));
    }
    for (i, f) in forms.iter().enumerate() {
        match is_irreducible(f)? {
            Irreducibility::Irreducible => {}
            Irreducibility::Reducible => {
                return Err(Error::InvalidInput(format!("form {i} ({f}) is reducible")))
            }
            Irreducibility::Undetermined => {
                return Err(Error::Undetermined(format!(
                    "irreducibility of form {i} ({f}) could not be decided"
                )))
            }
        }
    }
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if forms[i].is_associate(&forms[j]) {
                return Err(Error::InvalidInput(format!("forms {i} and {j} are associate")));
            }
        }
    }
    Ok(())
}

/// Upper-bound witness search: the point in the neighborhood minimizing
/// #Prms_S(prod F_i(a, b)) among the candidates examined within the budget,
/// ties resolved by enumeration order. The true minimum is not computable
/// by any finite search; the result is an upper witness only.
pub fn empirical_b(
    forms: &[BinaryForm],
    s: &PrimeSet,
    vn: NeighborhoodVN,
    budget: u64,
) -> Result<EmpiricalWitness> {
    if !s.includes_infinity() {
        return Err(Error::InvalidInput("S must contain the infinite prime".into()));
    }
    validate_search_forms(forms)?;
    let cfg = FactorConfig::default();
    let mut best: Option<EmpiricalWitness> = None;
    let mut examined = 0u64;
    for point in vn.points().take(budget as usize) {
        examined += 1;
        let mut product = BigInt::one();
        let mut admissible = true;
        for f in forms {
            let v = f.eval(&point);
            if v.is_zero() {
                admissible = false;
                break;
            }
            product *= v;
        }
        if !admissible {
            continue;
        }
        let fact = arith::factorize_with(&product, &cfg)?;
        let primes = fact.prms(s);
        let count = primes.count();
        if best.as_ref().map_or(true, |b| count < b.count) {
            let done = count == 0;
            best = Some(EmpiricalWitness { point, count, primes, product, examined });
            if done {
                break;
            }
        }
    }
    best.ok_or_else(|| {
        Error::BudgetExhausted(format!(
            "no admissible point among the first {examined} candidates"
        ))
    })
}

/// Witness returned by `gtz_search`.
#[derive(Clone, Debug)]
pub struct GtzWitness {
    pub point: ProjPoint,
    /// Values L_i(a, b).
    pub values: Vec<BigInt>,
    /// The same values with all primes of S divided out; each is a unit or
    /// a prime up to sign.
    pub stripped: Vec<BigInt>,
    pub examined: u64,
}

/// Searches the neighborhood for a point at which every linear form value
/// is a unit or a prime in Z with S inverted. Existence inside every
/// neighborhood is guaranteed when S contains all p <= r and infinity; the
/// search may still exhaust its budget.
pub fn gtz_search(
    lin_forms: &[BinaryForm],
    s: &PrimeSet,
    vn: NeighborhoodVN,
    budget: u64,
) -> Result<GtzWitness> {
    if !s.includes_infinity() {
        return Err(Error::InvalidInput("S must contain the infinite prime".into()));
    }
    let r = lin_forms.len() as u64;
    for &p in arith::primes_up_to(r)? {
        if !s.contains_finite(&BigUint::from(p)) {
            return Err(Error::InvalidInput(format!(
                "S must contain all primes <= r = {r}; missing {p}"
            )));
        }
    }
    for (i, f) in lin_forms.iter().enumerate() {
        if f.degree() != 1 {
            return Err(Error::InvalidInput(format!("form {i} is not linear")));
        }
        if !f.is_primitive() {
            return Err(Error::InvalidInput(format!("form {i} is not primitive")));
        }
    }
    validate_search_forms(lin_forms)?;

    let strip = |v: &BigInt| -> BigInt {
        let mut out = v.clone();
        for p in s.finite() {
            let p = BigInt::from_biguint(Sign::Plus, p.clone());
            loop {
                let (q, rem) = out.div_rem(&p);
                if rem.is_zero() {
                    out = q;
                } else {
                    break;
                }
            }
        }
        out
    };

    let mut examined = 0u64;
    for point in vn.points().take(budget as usize) {
        examined += 1;
        let mut values = Vec::with_capacity(lin_forms.len());
        let mut stripped = Vec::with_capacity(lin_forms.len());
        let mut ok = true;
        for f in lin_forms {
            let v = f.eval(&point);
            if v.is_zero() {
                ok = false;
                break;
            }
            let reduced = strip(&v);
            let unit_or_prime =
                reduced.magnitude().is_one() || arith::is_prime(reduced.magnitude()).is_prime();
            if !unit_or_prime {
                ok = false;
                break;
            }
            values.push(v);
            stripped.push(reduced);
        }
        if ok {
            return Ok(GtzWitness { point, values, stripped, examined });
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no simultaneous prime-or-unit point among the first {examined} candidates"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64) -> ProjPoint {
        ProjPoint::from_i64(a, b).unwrap()
    }

    #[test]
    fn point_normalization() {
        assert_eq!(pt(2, -4), pt(-1, 2));
        assert_eq!(pt(-3, 0), pt(1, 0));
        assert_eq!(pt(6, 4), pt(3, 2));
        assert!(ProjPoint::from_i64(0, 0).is_err());
        assert_eq!(pt(0, -7), pt(0, 1));
    }

    #[test]
    fn eval_branch_form() {
        // t*s*(256t + 27s) at [1:1] = 283
        let f = BinaryForm::from_i64(&[0, 256, 27, 0]).unwrap();
        assert_eq!(f.eval(&pt(1, 1)), BigInt::from(283));
        assert_eq!(BinaryForm::t().eval(&pt(0, 1)), BigInt::zero());
        let g = BinaryForm::from_i64(&[1, 0, 1]).unwrap(); // t^2 + s^2
        assert_eq!(g.eval(&pt(3, 4)), BigInt::from(25));
    }

    #[test]
    fn action_on_points() {
        let g = Gl2z::from_i64(1, 1, 0, 1).unwrap();
        assert_eq!(act(&g, &pt(2, 3)), pt(5, 3));
        let id = Gl2z::identity();
        for p in [pt(2, 3), pt(-1, 5), pt(1, 0)] {
            assert_eq!(act(&id, &p), p);
        }
    }

    #[test]
    fn action_on_forms() {
        // the swap matrix sends t to s
        let g = Gl2z::from_i64(0, 1, 1, 0).unwrap();
        let t = BinaryForm::t();
        assert!(act_form(&g, &t).is_associate(&BinaryForm::s()));
    }

    #[test]
    fn action_compatibility_raw() {
        // act_form(g, F)(g * (a,b)) == F(a, b) on raw coordinates
        let g = Gl2z::from_i64(2, 1, 1, 1).unwrap();
        let f = BinaryForm::from_i64(&[3, -1, 0, 7]).unwrap();
        for (a, b) in [(1i64, 1i64), (-2, 3), (5, 0), (0, 1)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (ia, ib) = g.apply_raw(&a, &b);
            assert_eq!(act_form(&g, &f).eval_pair(&ia, &ib), f.eval_pair(&a, &b));
        }
    }

    #[test]
    fn act_inverse_roundtrip() {
        let g = Gl2z::from_i64(3, 2, 1, 1).unwrap();
        let ginv = g.inverse();
        for p in [pt(2, 3), pt(-7, 5), pt(1, 0), pt(0, 1)] {
            assert_eq!(act(&g, &act(&ginv, &p)), p);
        }
    }

    #[test]
    fn irreducibility_cases() {
        let lin = BinaryForm::from_i64(&[1, -2]).unwrap(); // t - 2s
        assert_eq!(is_irreducible(&lin).unwrap(), Irreducibility::Irreducible);
        let dif = BinaryForm::from_i64(&[1, 0, -1]).unwrap(); // t^2 - s^2
        assert_eq!(is_irreducible(&dif).unwrap(), Irreducibility::Reducible);
        let sum = BinaryForm::from_i64(&[1, 0, 1]).unwrap(); // t^2 + s^2
        assert_eq!(is_irreducible(&sum).unwrap(), Irreducibility::Irreducible);
        let ts = BinaryForm::from_i64(&[0, 1, 0]).unwrap(); // t*s
        assert_eq!(is_irreducible(&ts).unwrap(), Irreducibility::Reducible);
        // t^4 - t^3 s - s^4 is irreducible (so already mod 2)
        let quart = BinaryForm::from_i64(&[1, -1, 0, 0, -1]).unwrap();
        assert_eq!(is_irreducible(&quart).unwrap(), Irreducibility::Irreducible);
        let nonprim = BinaryForm::from_i64(&[2, 0, 2]).unwrap();
        assert!(is_irreducible(&nonprim).is_err());
    }

    #[test]
    fn obstruction_primes() {
        // t*s*(t+s) vanishes on all of P^1(F_2)
        let f = BinaryForm::from_i64(&[0, 1, 1, 0]).unwrap();
        let obs = local_obstruction_primes(&f).unwrap();
        assert_eq!(obs.count(), 1);
        assert!(obs.contains_finite(&BigUint::from(2u32)));
        // t has none
        assert!(local_obstruction_primes(&BinaryForm::t()).unwrap().is_empty());
        // t^2 + ts + s^2 takes value 1 at all three F_2-points
        let g = BinaryForm::from_i64(&[1, 1, 1]).unwrap();
        assert!(local_obstruction_primes(&g).unwrap().is_empty());
    }

    #[test]
    fn obstruction_shift_examples() {
        // f = x^2 + x + 2, S = {2}: N = 2, a = 0, g = 2y^2 + y + 1
        let f = IntPoly::from_i64(&[2, 1, 1]);
        let s = PrimeSet::from_primes([BigUint::from(2u32)], true).unwrap();
        let shift = obstruction_shift(&f, &s).unwrap();
        assert_eq!(shift.n, BigUint::from(2u32));
        assert_eq!(shift.a, BigInt::zero());
        assert_eq!(shift.g, IntPoly::from_i64(&[1, 1, 2]));

        // f = x, S = {}: N = 1, a = 0, g = x
        let id = IntPoly::x();
        let empty = PrimeSet::infinity_only();
        let shift = obstruction_shift(&id, &empty).unwrap();
        assert_eq!(shift.n, BigUint::one());
        assert_eq!(shift.a, BigInt::zero());
        assert_eq!(shift.g, IntPoly::x());

        // f = x^2 + x + 2 with S = {} errors at p = 2
        match obstruction_shift(&f, &empty) {
            Err(Error::LocalObstruction(p)) => assert_eq!(p, BigUint::from(2u32)),
            other => panic!("expected obstruction error, got {other:?}"),
        }
    }

    #[test]
    fn beta_bound_values() {
        assert_eq!(beta_sieve_bound(&[1]).unwrap(), 2);
        assert_eq!(beta_sieve_bound(&[1, 1, 1]).unwrap(), 10);
        assert_eq!(beta_sieve_bound(&[2]).unwrap(), 4);
        assert!(beta_sieve_bound(&[]).is_err());
    }

    #[test]
    fn vn_membership_and_order() {
        let v2 = NeighborhoodVN::new(2).unwrap();
        assert!(v2.contains(&pt(5, 2)));
        assert!(!v2.contains(&pt(5, 3)));
        assert!(!v2.contains(&pt(3, 2)));
        assert!(v2.contains(&ProjPoint::infinity()));

        let v1 = NeighborhoodVN::new(1).unwrap();
        let first: Vec<ProjPoint> = v1.points().take(5).collect();
        assert_eq!(first, vec![pt(1, 0), pt(1, 1), pt(-1, 1), pt(2, 1), pt(-2, 1)]);

        let first_v2: Vec<ProjPoint> = v2.points().take(3).collect();
        assert_eq!(first_v2, vec![pt(1, 0), pt(5, 2), pt(-5, 2)]);
    }

    #[test]
    fn all_points_order() {
        let first: Vec<ProjPoint> = all_points().take(9).collect();
        assert_eq!(
            first,
            vec![
                pt(1, 0),
                pt(1, 1),
                pt(-1, 1),
                pt(0, 1),
                pt(2, 1),
                pt(-2, 1),
                pt(1, 2),
                pt(-1, 2),
                pt(3, 1),
            ]
        );
    }

    #[test]
    fn parse_form_grammar() {
        assert_eq!(parse_form("t").unwrap(), BinaryForm::t());
        assert_eq!(parse_form("t - 2s").unwrap(), BinaryForm::from_i64(&[1, -2]).unwrap());
        assert_eq!(
            parse_form("256t + 27s").unwrap(),
            BinaryForm::from_i64(&[256, 27]).unwrap()
        );
        assert_eq!(
            parse_form("t^2 + t s + s^2").unwrap(),
            BinaryForm::from_i64(&[1, 1, 1]).unwrap()
        );
        assert_eq!(
            parse_form("-t^3 + 2*t*s^2").unwrap(),
            BinaryForm::from_i64(&[-1, 0, 2, 0]).unwrap()
        );
        assert_eq!(parse_forms("t; t-2s").unwrap().len(), 2);
        assert!(parse_form("t^2 + s").is_err()); // not homogeneous
        assert!(parse_form("7").is_err()); // constant
        assert!(parse_form("t + x").is_err());
        assert!(parse_form("").is_err());
    }

    #[test]
    fn empirical_b_two_lines() {
        // forms (t, s), S = {oo}: the product is already a unit at [1:1]
        let forms = vec![BinaryForm::t(), BinaryForm::s()];
        let s = PrimeSet::infinity_only();
        let w = empirical_b(&forms, &s, NeighborhoodVN::new(1).unwrap(), 1000).unwrap();
        assert!(w.count <= 2);
        assert_eq!(w.count, 0);
        assert_eq!(w.point, pt(1, 1));
    }

    #[test]
    fn empirical_b_branch_form() {
        // m = 4 branch form t*s*(256t + 27s), S = {2, 3, oo}
        let forms = vec![
            BinaryForm::t(),
            BinaryForm::s(),
            BinaryForm::from_i64(&[256, 27]).unwrap(),
        ];
        let s = PrimeSet::from_primes([BigUint::from(2u32), BigUint::from(3u32)], true).unwrap();
        let w = empirical_b(&forms, &s, NeighborhoodVN::new(1).unwrap(), 500).unwrap();
        assert!(w.count <= 3, "GTZ-level bound");
        // direct-check oracle: [1:1] gives product 283 and count 1
        let product: BigInt = forms.iter().map(|f| f.eval(&pt(1, 1))).product();
        assert_eq!(product, BigInt::from(283));
        assert!(w.count <= 1);
    }

    #[test]
    fn gtz_direct_check_and_search() {
        // direct-check oracle for the witness [5:2]: values (5, 1)
        let t = BinaryForm::t();
        let l2 = BinaryForm::from_i64(&[1, -2]).unwrap();
        let s = PrimeSet::from_primes([BigUint::from(2u32)], true).unwrap();
        let v2 = NeighborhoodVN::new(2).unwrap();
        assert!(v2.contains(&pt(5, 2)));
        assert_eq!(t.eval(&pt(5, 2)), BigInt::from(5));
        assert_eq!(l2.eval(&pt(5, 2)), BigInt::one());

        let w = gtz_search(&[t, l2], &s, v2, 100_000).unwrap();
        for v in &w.stripped {
            assert!(v.magnitude().is_one() || arith::is_prime(v.magnitude()).is_prime());
        }
    }

    #[test]
    fn gtz_requires_small_primes_in_s() {
        let forms = vec![BinaryForm::t(), BinaryForm::from_i64(&[1, -2]).unwrap()];
        let s = PrimeSet::infinity_only(); // missing p = 2 <= r
        assert!(gtz_search(&forms, &s, NeighborhoodVN::new(2).unwrap(), 10).is_err());
    }

    #[test]
    fn gtz_three_forms() {
        // L = (t, t-2s, t-6s), S = {2, 3, oo}, V_6
        let forms = vec![
            BinaryForm::t(),
            BinaryForm::from_i64(&[1, -2]).unwrap(),
            BinaryForm::from_i64(&[1, -6]).unwrap(),
        ];
        let s = PrimeSet::from_primes([BigUint::from(2u32), BigUint::from(3u32)], true).unwrap();
        let w = gtz_search(&forms, &s, NeighborhoodVN::new(6).unwrap(), 1_000_000).unwrap();
        for v in &w.stripped {
            assert!(v.magnitude().is_one() || arith::is_prime(v.magnitude()).is_prime());
        }
    }
}
