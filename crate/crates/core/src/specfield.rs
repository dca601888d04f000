//! The trinomial cover family x^m - x^(m-1) - y and its specializations:
//! integral models, discriminants by closed formula cross-checked against a
//! subresultant oracle, ramification certification at finite and infinite
//! primes, and Galois-group certification through mod-p factor types.
//!
//! Ramification is three-valued. A prime is reported `Ramified` or
//! `Unramified` only when certified (valuation-1 fast path, or Dedekind's
//! criterion proving the equation order maximal); everything else stays
//! `Unknown`, which callers must count against ramification budgets.

use crate::arith::{self, FactorConfig, Factorization, PrimeSet};
use crate::error::{Error, Result};
use crate::ffpoly::{self, PolyModP};
use crate::forms::{BinaryForm, ProjPoint};
use crate::poly::{self, IntPoly};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// The degree-m cover given by x^m - x^(m-1) - y, for m > 3. Its branch
/// form has the three rational zeros [0:1], [1:0] and
/// [-(m-1)^(m-1) : m^m]; the infinite prime is ramified in every
/// specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrinomialCover {
    m: u32,
}

impl TrinomialCover {
    pub fn new(m: u32) -> Result<Self> {
        if m < 4 {
            return Err(Error::InvalidInput(format!("the family needs m > 3, got {m}")));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// m^m.
    pub fn mm(&self) -> BigInt {
        BigInt::from(self.m).pow(self.m)
    }

    /// (m-1)^(m-1).
    pub fn kk(&self) -> BigInt {
        BigInt::from(self.m - 1).pow(self.m - 1)
    }

    /// The branch form t * s * (m^m t + (m-1)^(m-1) s), primitive of
    /// degree 3.
    pub fn branch_form(&self) -> BinaryForm {
        BinaryForm::new(vec![BigInt::zero(), self.mm(), self.kk(), BigInt::zero()])
            .expect("branch form is well-formed")
    }

    /// Primes ramified in every specialization: exactly {infinity}.
    pub fn universal_ram(&self) -> PrimeSet {
        PrimeSet::infinity_only()
    }

    /// Value of the branch form at a point: a * b * (m^m a + (m-1)^(m-1) b).
    pub fn branch_value(&self, p: &ProjPoint) -> BigInt {
        p.a() * p.b() * (self.mm() * p.a() + self.kk() * p.b())
    }
}

/// The integral model of the specialization at y = a/b under z = b*x:
/// h(z) = z^m - b z^(m-1) - a b^(m-1), monic of degree m.
/// Errors name the branch zero that was hit.
pub fn specialize(m: u32, point: &ProjPoint) -> Result<IntPoly> {
    let cover = TrinomialCover::new(m)?;
    let (a, b) = (point.a(), point.b());
    if b.is_zero() {
        return Err(Error::BranchPoint("y = infinity ([1:0])".into()));
    }
    if a.is_zero() {
        return Err(Error::BranchPoint("y = 0 ([0:1])".into()));
    }
    if (cover.mm() * a + cover.kk() * b).is_zero() {
        return Err(Error::BranchPoint(format!(
            "y = -(m-1)^(m-1)/m^m ([{}:{}])",
            -cover.kk(),
            cover.mm()
        )));
    }
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = -(a * b.pow(m - 1));
    coeffs[m as usize - 1] = -b.clone();
    coeffs[m as usize] = BigInt::one();
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Sign of disc(x^m - x^(m-1) - y) as a function of m:
/// (-1)^(m(m-1)/2 + m - 1). Negative exactly for m = 0, 3 mod 4.
fn disc_sign(m: u32) -> i32 {
    let e = (m as u64) * (m as u64 - 1) / 2 + (m as u64 - 1);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact discriminant of the rational specialization x^m - x^(m-1) - a/b:
/// (-1)^(m(m-1)/2 + m-1) * (a/b)^(m-2) * ((m-1)^(m-1) + m^m * (a/b)).
/// The sign and the exponent m-2 are fixed by cross-checking against the
/// subresultant oracle (see `disc_resultant`); the scaling identity
/// disc(h) = b^(m(m-1)) * disc_formula is tested, not assumed.
pub fn disc_formula(m: u32, point: &ProjPoint) -> Result<BigRational> {
    if m < 2 {
        return Err(Error::InvalidInput("disc_formula needs m >= 2".into()));
    }
    let (a, b) = (point.a(), point.b());
    if b.is_zero() {
        return Err(Error::InvalidInput("disc_formula at the point at infinity".into()));
    }
    let y = BigRational::new(a.clone(), b.clone());
    let mm = BigInt::from(m).pow(m);
    let kk = BigInt::from(m - 1).pow(m - 1);
    let inner = BigRational::from(kk) + BigRational::from(mm) * &y;
    let mut value = y.pow((m - 2) as i32) * inner;
    if disc_sign(m) < 0 {
        value = -value;
    }
    Ok(value)
}

/// Exact discriminant of a monic integral polynomial of degree >= 2, by the
/// subresultant/Sylvester oracle.
pub fn disc_resultant(h: &IntPoly) -> Result<BigInt> {
    if h.degree() < 2 {
        return Err(Error::InvalidInput("disc_resultant needs degree >= 2".into()));
    }
    poly::discriminant(h)
}

/// Dedekind's criterion at p for a monic polynomial h: true iff the
/// equation order Z[x]/(h) is maximal at p.
pub fn dedekind_p_maximal(h: &IntPoly, p: u64) -> Result<bool> {
    if !h.is_monic() || h.degree() < 1 {
        return Err(Error::InvalidInput("dedekind: h must be monic nonconstant".into()));
    }
    let hp = PolyModP::from_int_poly(h, p)?;
    let factorization = ffpoly::factor_mod_p(&hp)?;
    // g = prod g_i, hstar = prod g_i^(e_i - 1)
    let mut g = PolyModP::constant(p, 1);
    let mut hstar = PolyModP::constant(p, 1);
    for (gi, e) in &factorization.factors {
        g = g.mul(gi);
        for _ in 1..*e {
            hstar = hstar.mul(gi);
        }
    }
    let lift = |f: &PolyModP| -> IntPoly {
        IntPoly::from_coeffs(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    };
    let g_lift = lift(&g);
    let h_lift = lift(&hstar);
    let p_int = BigInt::from(p);
    let f_poly = g_lift.mul(&h_lift).sub(h).div_exact(&p_int)?;
    let f_bar = PolyModP::from_int_poly(&f_poly, p)?;
    let m = f_bar.gcd(&g).gcd(&hstar);
    Ok(m.degree() == 0)
}

/// Certified three-valued ramification status of a prime in Q[x]/(h).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RamStatus {
    Ramified,
    Unramified,
    Unknown,
}

fn ram_status_given(h: &IntPoly, p: &BigUint, v: u32) -> RamStatus {
    if v == 0 {
        return RamStatus::Unramified;
    }
    if v == 1 {
        // v_p(disc h) = 1 forces a maximal order at p and an odd valuation
        // of the field discriminant.
        return RamStatus::Ramified;
    }
    match p.to_u64() {
        Some(small) => match dedekind_p_maximal(h, small) {
            Ok(true) => RamStatus::Ramified,
            Ok(false) => RamStatus::Unknown,
            Err(_) => RamStatus::Unknown,
        },
        None => RamStatus::Unknown,
    }
}

/// Status of p in Q[x]/(h) for irreducible monic h: `Unramified` iff
/// p does not divide disc(h); `Ramified` when p divides disc(h) and the
/// equation order is provably maximal at p (or v_p(disc) = 1); `Unknown`
/// otherwise. Never a wrong certified answer.
pub fn ram_status(h: &IntPoly, p: &BigUint) -> Result<RamStatus> {
    let disc = disc_resultant(h)?;
    if disc.is_zero() {
        return Err(Error::InvalidInput("ram_status: h is not squarefree".into()));
    }
    let v = arith::v_p(&disc, p)?;
    Ok(ram_status_given(h, p, v))
}

/// Distinct real roots of h by Sturm sequences (exact arithmetic).
pub fn sturm_real_roots(h: &IntPoly) -> Result<u32> {
    poly::sturm_real_roots(h)
}

/// The infinite prime ramifies iff h has fewer real roots than its degree.
pub fn infinite_ramified(h: &IntPoly) -> Result<bool> {
    Ok((sturm_real_roots(h)? as usize) < h.degree())
}

/// Third certificate component: a witness that the (primitive) Galois
/// group is the full symmetric group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryWitness {
    /// Factor type with exactly one part 2 and every other part odd: the
    /// power of Frobenius by the lcm of the odd parts is a transposition,
    /// and a primitive group with a transposition is S_m.
    Transposition { p: u64 },
    /// Factor type with exactly one part equal to an odd prime q <= m - 3
    /// and no other part divisible by q: a power of Frobenius is a
    /// q-cycle, so the primitive group contains A_m; a non-square
    /// discriminant then rules out A_m itself.
    OddPrimeCycle { p: u64, q: u64 },
}

impl SymmetryWitness {
    pub fn prime(&self) -> u64 {
        match self {
            SymmetryWitness::Transposition { p } => *p,
            SymmetryWitness::OddPrimeCycle { p, .. } => *p,
        }
    }
}

/// Galois-group certificate for S_m: primes not dividing disc(h) whose
/// factor types force, in order, transitivity (type {m}), double
/// transitivity and hence primitivity (type {1, m-1}), and fullness (a
/// transposition power, or an odd-prime-cycle power plus a non-square
/// discriminant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmCertificate {
    pub p_irreducible: u64,
    pub p_cycle: u64,
    pub symmetry: SymmetryWitness,
}

fn factor_type_at(h: &IntPoly, p: u64) -> Result<Vec<usize>> {
    ffpoly::factor_type(&PolyModP::from_int_poly(h, p)?)
}

fn is_cycle_type(t: &[usize], m: usize) -> bool {
    t == [1, m - 1]
}

/// Exactly one part 2, all other parts odd: a power is a transposition.
fn is_transposition_power_type(t: &[usize]) -> bool {
    t.iter().filter(|&&d| d == 2).count() == 1 && t.iter().all(|&d| d == 2 || d % 2 == 1)
}

/// Odd primes q <= m - 3 such that exactly one part equals q and no other
/// part is divisible by q: a power is a q-cycle.
fn odd_prime_cycle_part(t: &[usize], m: usize) -> Option<u64> {
    for &q in t {
        if q < 3 || q + 3 > m || !arith::is_prime(&BigUint::from(q)).is_prime() {
            continue;
        }
        let exact = t.iter().filter(|&&d| d == q).count() == 1;
        let clean = t.iter().all(|&d| d == q || d % q != 0);
        if exact && clean {
            return Some(q as u64);
        }
    }
    None
}

fn is_square_disc(disc: &BigInt) -> bool {
    if disc.is_negative() {
        return false;
    }
    let r = disc.magnitude().sqrt();
    &(&r * &r) == disc.magnitude()
}

impl SmCertificate {
    /// Re-verifies the certificate from scratch: the three factor types
    /// are recomputed and none of the primes may divide disc(h); the
    /// odd-prime-cycle route additionally re-checks that disc(h) is not a
    /// perfect square.
    pub fn verify(&self, h: &IntPoly) -> Result<()> {
        let m = h.degree();
        let disc = disc_resultant(h)?;
        for (p, what) in [
            (self.p_irreducible, "irreducible"),
            (self.p_cycle, "cycle"),
            (self.symmetry.prime(), "symmetry"),
        ] {
            if (disc.clone() % BigInt::from(p)).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "certificate prime {p} ({what}) divides disc"
                )));
            }
        }
        let t = factor_type_at(h, self.p_irreducible)?;
        if t != vec![m] {
            return Err(Error::InvalidInput(format!(
                "factor type at {} is {:?}, not irreducible",
                self.p_irreducible, t
            )));
        }
        let t = factor_type_at(h, self.p_cycle)?;
        if !is_cycle_type(&t, m) {
            return Err(Error::InvalidInput(format!(
                "factor type at {} is {:?}, not {{1, m-1}}",
                self.p_cycle, t
            )));
        }
        match &self.symmetry {
            SymmetryWitness::Transposition { p } => {
                let t = factor_type_at(h, *p)?;
                if !is_transposition_power_type(&t) {
                    return Err(Error::InvalidInput(format!(
                        "factor type at {p} is {t:?}, no transposition power"
                    )));
                }
            }
            SymmetryWitness::OddPrimeCycle { p, q } => {
                let t = factor_type_at(h, *p)?;
                if odd_prime_cycle_part(&t, m) != Some(*q) {
                    return Err(Error::InvalidInput(format!(
                        "factor type at {p} is {t:?}, no clean {q}-cycle part"
                    )));
                }
                if is_square_disc(&disc) {
                    return Err(Error::InvalidInput(
                        "square discriminant: the q-cycle route cannot exclude A_m".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Scans primes p <= prime_budget with p not dividing disc(h), collecting
/// the certificate factor types; stops at the first prime completing all
/// three. Returns None when the budget runs out first. Errors when h is
/// provably reducible (rational root); a reducible h without rational
/// roots simply never certifies, because no reduction is irreducible.
pub fn certify_sm(h: &IntPoly, prime_budget: u64) -> Result<Option<SmCertificate>> {
    let m = h.degree();
    if m < 4 {
        return Err(Error::InvalidInput("certify_sm needs deg h >= 4".into()));
    }
    if !h.is_monic() {
        return Err(Error::InvalidInput("certify_sm needs monic h".into()));
    }
    let roots = h.rational_roots()?;
    if let Some((num, den)) = roots.first() {
        return Err(Error::Reducible(format!("h has the rational root {num}/{den}")));
    }
    let disc = disc_resultant(h)?;
    if disc.is_zero() {
        return Err(Error::Reducible("h is not squarefree".into()));
    }
    let square_disc = is_square_disc(&disc);
    let mut p_irreducible = None;
    let mut p_cycle = None;
    let mut transposition: Option<u64> = None;
    let mut odd_cycle: Option<(u64, u64)> = None;
    for &p in arith::primes_up_to(prime_budget)? {
        if (disc.clone() % BigInt::from(p)).is_zero() {
            continue;
        }
        let t = factor_type_at(h, p)?;
        if p_irreducible.is_none() && t == vec![m] {
            p_irreducible = Some(p);
        }
        if p_cycle.is_none() && is_cycle_type(&t, m) {
            p_cycle = Some(p);
        }
        if transposition.is_none() && is_transposition_power_type(&t) {
            transposition = Some(p);
        }
        if !square_disc && odd_cycle.is_none() {
            if let Some(q) = odd_prime_cycle_part(&t, m) {
                odd_cycle = Some((p, q));
            }
        }
        let symmetry = match (transposition, odd_cycle) {
            (Some(tp), Some((jp, jq))) => Some(if tp <= jp {
                SymmetryWitness::Transposition { p: tp }
            } else {
                SymmetryWitness::OddPrimeCycle { p: jp, q: jq }
            }),
            (Some(tp), None) => Some(SymmetryWitness::Transposition { p: tp }),
            (None, Some((jp, jq))) => Some(SymmetryWitness::OddPrimeCycle { p: jp, q: jq }),
            (None, None) => None,
        };
        if let (Some(pi), Some(pc), Some(sym)) = (p_irreducible, p_cycle, symmetry) {
            return Ok(Some(SmCertificate {
                p_irreducible: pi,
                p_cycle: pc,
                symmetry: sym,
            }));
        }
    }
    Ok(None)
}

/// Outcome of the specialization-level ramification containment check
/// Ram \ T subset Prms_T(branch value), with the fixed
/// T = {infinity} union Prms(m(m-1)) union {p <= 3}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamSpecCheck {
    pub t_set: PrimeSet,
    pub branch_value: BigInt,
    /// Ramified-or-unknown primes outside T that do not divide the branch
    /// value. Nonempty means the fixed T must be enlarged; never silent.
    pub violations: Vec<BigUint>,
}

/// Budgets for assembling a specialized-field report.
#[derive(Clone, Debug)]
pub struct FieldBudgets {
    /// Prime bound for the S_m certificate scan; 0 skips certification.
    pub cert_prime_bound: u64,
    pub factor: FactorConfig,
}

impl Default for FieldBudgets {
    fn default() -> Self {
        Self { cert_prime_bound: 1000, factor: FactorConfig::default() }
    }
}

/// Witness bundle for one specialization: the integral model, its
/// discriminant (formula cross-checked against the oracle), per-prime
/// ramification statuses for every prime dividing the discriminant, the
/// real-root count, an optional Galois certificate, and the containment
/// check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedField {
    pub m: u32,
    pub parameter: ProjPoint,
    pub h: IntPoly,
    pub disc: Factorization,
    pub ram_status: BTreeMap<BigUint, RamStatus>,
    pub real_roots: u32,
    pub infinity_ramified: bool,
    pub galois_cert: Option<SmCertificate>,
    pub ram_spec: RamSpecCheck,
}

impl SpecializedField {
    /// Finite primes with status Ramified or Unknown, plus infinity when
    /// ramified. Unknown counts as ramified to keep every bound sound.
    pub fn ramified_set(&self) -> PrimeSet {
        let finite = self
            .ram_status
            .iter()
            .filter(|(_, s)| matches!(s, RamStatus::Ramified | RamStatus::Unknown))
            .map(|(p, _)| p.clone())
            .collect();
        PrimeSet::from_known_primes(finite, self.infinity_ramified)
    }

    /// #ramified_set, counting infinity.
    pub fn total_count(&self) -> usize {
        self.ramified_set().count()
    }

    pub fn is_certified(&self) -> bool {
        self.galois_cert.is_some()
    }
}

/// The fixed containment set T = {infinity} union Prms(m(m-1)) union
/// {p <= 3}.
fn fixed_t_set(m: u32) -> Result<PrimeSet> {
    let mut t = PrimeSet::infinity_only();
    let n = BigInt::from(m) * BigInt::from(m - 1);
    for p in arith::factorize(&n)?.factors().keys() {
        t.insert_known_prime(p.clone());
    }
    t.insert_known_prime(BigUint::from(2u32));
    t.insert_known_prime(BigUint::from(3u32));
    Ok(t)
}

/// Full certification bundle at one parameter point.
pub fn ram_report(m: u32, point: &ProjPoint, budgets: &FieldBudgets) -> Result<SpecializedField> {
    let cover = TrinomialCover::new(m)?;
    let h = specialize(m, point)?;

    // Discriminant by the closed formula, cross-checked exactly against the
    // subresultant oracle together with the b-power scaling.
    let disc_oracle = disc_resultant(&h)?;
    let formula = disc_formula(m, point)?;
    let scaling = BigRational::from(point.b().pow(m * (m - 1)));
    let scaled = formula * scaling;
    if !scaled.is_integer() || scaled.to_integer() != disc_oracle {
        return Err(Error::Internal(format!(
            "discriminant formula mismatch at m={m}, point {point}"
        )));
    }

    let disc = arith::factorize_with(&disc_oracle, &budgets.factor)?;
    let mut status: BTreeMap<BigUint, RamStatus> = BTreeMap::new();
    for (p, entry) in disc.factors() {
        status.insert(p.clone(), ram_status_given(&h, p, entry.exponent));
    }

    let real_roots = sturm_real_roots(&h)?;
    let infinity_ramified = (real_roots as usize) < h.degree();

    let galois_cert = if budgets.cert_prime_bound > 0 {
        certify_sm(&h, budgets.cert_prime_bound)?
    } else {
        None
    };

    let t_set = fixed_t_set(m)?;
    let branch_value = cover.branch_value(point);
    let violations: Vec<BigUint> = status
        .iter()
        .filter(|(p, s)| {
            !matches!(s, RamStatus::Unramified)
                && !t_set.contains_finite(p)
                && !(branch_value.clone()
                    % BigInt::from_biguint(Sign::Plus, (*p).clone()))
                .is_zero()
        })
        .map(|(p, _)| p.clone())
        .collect();

    Ok(SpecializedField {
        m,
        parameter: point.clone(),
        h,
        disc,
        ram_status: status,
        real_roots,
        infinity_ramified,
        galois_cert,
        ram_spec: RamSpecCheck { t_set, branch_value, violations },
    })
}

/// Upper bound for the universally ramified primes of the degree-m cover:
/// the intersection, over `sample_count` sampled admissible points, of the
/// ramified-or-unknown sets of the specializations. Deterministic for a
/// fixed seed.
pub fn universal_ram_upper(m: u32, sample_count: u32, seed: u64) -> Result<PrimeSet> {
    if sample_count < 2 {
        return Err(Error::InvalidInput("need at least 2 samples".into()));
    }
    TrinomialCover::new(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc: Option<PrimeSet> = None;
    let mut taken = 0u32;
    let budgets = FieldBudgets { cert_prime_bound: 0, ..Default::default() };
    while taken < sample_count {
        let a = rng.random_range(-1000i64..=1000);
        let b = rng.random_range(1i64..=1000);
        let Ok(point) = ProjPoint::from_i64(a, b) else { continue };
        let Ok(report) = ram_report(m, &point, &budgets) else { continue };
        taken += 1;
        let set = report.ramified_set();
        acc = Some(match acc {
            None => set,
            Some(prev) => prev.intersection(&set),
        });
        if let Some(ref cur) = acc {
            if cur.finite().is_empty() {
                // only infinity can survive; further samples cannot shrink it
                break;
            }
        }
    }
    Ok(acc.expect("at least two samples"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64) -> ProjPoint {
        ProjPoint::from_i64(a, b).unwrap()
    }

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn specialize_examples() {
        // (4, [1:1]) -> z^4 - z^3 - 1
        assert_eq!(specialize(4, &pt(1, 1)).unwrap(), IntPoly::from_i64(&[-1, 0, 0, -1, 1]));
        // (4, [1:2]) -> z^4 - 2z^3 - 8
        assert_eq!(specialize(4, &pt(1, 2)).unwrap(), IntPoly::from_i64(&[-8, 0, 0, -2, 1]));
        // branch points error by name
        assert!(matches!(specialize(5, &pt(0, 1)), Err(Error::BranchPoint(_))));
        assert!(matches!(specialize(4, &pt(1, 0)), Err(Error::BranchPoint(_))));
        assert!(matches!(specialize(4, &pt(-27, 256)), Err(Error::BranchPoint(_))));
        assert!(specialize(3, &pt(1, 1)).is_err());
    }

    #[test]
    fn disc_formula_examples() {
        // (4, [1:1]) -> -283; the oracle fixes the sign
        let d = disc_formula(4, &pt(1, 1)).unwrap();
        assert_eq!(d, BigRational::from(BigInt::from(-283)));
        // (4, [-27:256]) -> 0 (the finite nonzero branch point)
        let d = disc_formula(4, &pt(-27, 256)).unwrap();
        assert!(d.is_zero());
        // (5, [1:1]) -> +3381
        let d = disc_formula(5, &pt(1, 1)).unwrap();
        assert_eq!(d, BigRational::from(BigInt::from(3381)));
    }

    #[test]
    fn disc_scaling_identity() {
        for (m, a, b) in [(4u32, 1i64, 2i64), (5, 3, 7), (6, -5, 4), (7, 2, 9)] {
            let point = pt(a, b);
            let h = specialize(m, &point).unwrap();
            let oracle = disc_resultant(&h).unwrap();
            let formula = disc_formula(m, &point).unwrap();
            let scaled = formula * BigRational::from(BigInt::from(b).pow(m * (m - 1)));
            assert!(scaled.is_integer());
            assert_eq!(scaled.to_integer(), oracle, "m={m} a={a} b={b}");
        }
    }

    #[test]
    fn disc_resultant_examples() {
        assert_eq!(disc_resultant(&IntPoly::from_i64(&[-2, 0, 1])).unwrap(), BigInt::from(8));
        assert_eq!(disc_resultant(&IntPoly::from_i64(&[-1, -1, 0, 1])).unwrap(), BigInt::from(-23));
        assert_eq!(
            disc_resultant(&IntPoly::from_i64(&[-1, 0, 0, -1, 1])).unwrap(),
            BigInt::from(-283)
        );
        assert!(disc_resultant(&IntPoly::x()).is_err());
    }

    #[test]
    fn dedekind_examples() {
        let f = IntPoly::from_i64(&[-5, 0, 1]); // x^2 - 5, disc 20
        assert!(dedekind_p_maximal(&f, 5).unwrap());
        assert!(!dedekind_p_maximal(&f, 2).unwrap());
        let h = IntPoly::from_i64(&[-1, 0, 0, -1, 1]);
        assert!(dedekind_p_maximal(&h, 283).unwrap());
    }

    #[test]
    fn ram_status_examples() {
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        assert_eq!(ram_status(&f, &u(5)).unwrap(), RamStatus::Ramified);
        // true status at 2 is unramified, but the equation order is not
        // maximal there: certified answer is Unknown
        assert_eq!(ram_status(&f, &u(2)).unwrap(), RamStatus::Unknown);
        let h = IntPoly::from_i64(&[-1, 0, 0, -1, 1]);
        assert_eq!(ram_status(&h, &u(7)).unwrap(), RamStatus::Unramified);
        assert_eq!(ram_status(&h, &u(283)).unwrap(), RamStatus::Ramified);
    }

    #[test]
    fn sturm_and_infinity() {
        let f = IntPoly::from_i64(&[1, 0, 1]); // x^2 + 1
        assert_eq!(sturm_real_roots(&f).unwrap(), 0);
        assert!(infinite_ramified(&f).unwrap());
        let g = IntPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(sturm_real_roots(&g).unwrap(), 2);
        assert!(!infinite_ramified(&g).unwrap());
        let h = IntPoly::from_i64(&[-1, 0, 0, -1, 1]); // x^4 - x^3 - 1
        assert_eq!(sturm_real_roots(&h).unwrap(), 2);
        assert!(infinite_ramified(&h).unwrap());
    }

    #[test]
    fn certify_trinomial_quartic() {
        let h = IntPoly::from_i64(&[-1, 0, 0, -1, 1]);
        let cert = certify_sm(&h, 100).unwrap().expect("certificate within 100");
        assert_eq!(cert.p_irreducible, 2);
        assert_eq!(cert.p_cycle, 7);
        // 17 is the first prime with factor type {1, 1, 2}
        assert_eq!(cert.symmetry, SymmetryWitness::Transposition { p: 17 });
        cert.verify(&h).unwrap();
        // tiny budget: not enough primes scanned
        assert!(certify_sm(&h, 3).unwrap().is_none());
        // x^4 - 1 is reducible
        let r = IntPoly::from_i64(&[-1, 0, 0, 0, 1]);
        assert!(matches!(certify_sm(&r, 100), Err(Error::Reducible(_))));
    }

    #[test]
    fn certify_never_wrong_on_reducible() {
        // z^5 - z^4 - 1 = (z^2 - z + 1)(z^3 - z - 1): no rational root, so
        // the scan runs, but no prime can show an irreducible type
        let h = IntPoly::from_i64(&[-1, 0, 0, 0, -1, 1]);
        assert!(certify_sm(&h, 500).unwrap().is_none());
    }

    #[test]
    fn ram_report_quartic_at_unit_point() {
        let report = ram_report(4, &pt(1, 1), &FieldBudgets::default()).unwrap();
        assert_eq!(report.h, IntPoly::from_i64(&[-1, 0, 0, -1, 1]));
        assert_eq!(report.real_roots, 2);
        assert!(report.infinity_ramified);
        assert_eq!(report.ram_status.len(), 1);
        assert_eq!(report.ram_status[&u(283)], RamStatus::Ramified);
        assert!(report.is_certified());
        assert!(report.ram_spec.violations.is_empty());
        let ram = report.ramified_set();
        assert_eq!(ram.count(), 2); // {283, oo}
        assert!(ram.includes_infinity());
        assert_eq!(report.total_count(), 2);
    }

    #[test]
    fn ram_report_quintic_reducible_point() {
        // (5, [1:1]): disc 3381 = 3 * 7^2 * 23 but the specialization is
        // reducible, so no certificate appears
        let report = ram_report(5, &pt(1, 1), &FieldBudgets::default()).unwrap();
        assert_eq!(report.disc.v_p(&u(3)), 1);
        assert_eq!(report.disc.v_p(&u(7)), 2);
        assert_eq!(report.disc.v_p(&u(23)), 1);
        assert_eq!(report.ram_status[&u(3)], RamStatus::Ramified);
        assert_eq!(report.ram_status[&u(23)], RamStatus::Ramified);
        // 7 comes from the resultant of the two true factors: not maximal
        assert_eq!(report.ram_status[&u(7)], RamStatus::Unknown);
        assert!(!report.is_certified());
        assert!(report.ram_spec.violations.is_empty());
    }

    #[test]
    fn ram_report_rejects_branch_points() {
        assert!(matches!(
            ram_report(4, &pt(-27, 256), &FieldBudgets::default()),
            Err(Error::BranchPoint(_))
        ));
    }

    #[test]
    fn universal_ram_small_sample() {
        let set = universal_ram_upper(4, 8, 12345).unwrap();
        assert!(set.includes_infinity());
        assert!(set.finite().is_empty(), "finite primes should wash out, got {set}");
        // intersection is monotone: two samples give a superset of {oo}
        let two = universal_ram_upper(4, 2, 999).unwrap();
        assert!(two.includes_infinity());
        for p in set.finite() {
            assert!(two.contains_finite(p));
        }
    }

    #[test]
    fn branch_form_matches_cover() {
        let cover = TrinomialCover::new(4).unwrap();
        let f = cover.branch_form();
        assert_eq!(f.eval(&pt(1, 1)), BigInt::from(283));
        assert!(f.is_primitive());
        assert_eq!(f.degree(), 3);
        assert_eq!(cover.branch_value(&pt(1, 1)), BigInt::from(283));
    }
}
