//! Towers of specializations realizing direct powers of symmetric groups
//! with a small united ramified set: shift and scaling schedules for n
//! twisted copies of the trinomial cover, per-factor certification,
//! discriminant square-class independence over F_2, and the search that
//! assembles a certified witness bundle.

use crate::arith::{self, Factorization, PrimeSet};
use crate::error::{Error, Result};
use crate::forms::{self, ProjPoint};
use crate::specfield::{self, FieldBudgets, SpecializedField, TrinomialCover};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

/// How the n copies of the cover are twisted apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerMode {
    /// Scale the parameter by q^(k_i): factor i specializes at a/(b q^(k_i)).
    /// n + 2 branch points in total; the default, with q = 2.
    Multiplicative { q: u64 },
    /// Shift the parameter by k_i: factor i specializes at (a - k_i b)/b.
    Additive,
}

/// A tower recipe: degree m, n factors, twist schedule, base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    pub m: u32,
    pub n: u32,
    pub mode: TowerMode,
    /// Strictly increasing exponents (multiplicative) or shifts (additive).
    pub steps: Vec<i64>,
    pub base: ProjPoint,
}

/// The schedule k_i = i * step for i = 1..n (k_1 = 0 for n = 1: a single
/// untwisted factor), validated for exact branch-locus disjointness:
/// multiplicative twists may share only {0, infinity}, additive twists only
/// {infinity}.
pub fn schedule(m: u32, n: u32, mode: &TowerMode, step: i64) -> Result<Vec<i64>> {
    if n < 1 {
        return Err(Error::InvalidInput("tower needs n >= 1".into()));
    }
    if step < 1 {
        return Err(Error::InvalidInput("schedule step must be >= 1".into()));
    }
    let cover = TrinomialCover::new(m)?;
    let steps: Vec<i64> = if n == 1 {
        vec![0]
    } else {
        (1..=n as i64).map(|i| i * step).collect()
    };
    // u_m = (m-1)^(m-1) / m^m, the finite nonzero branch point up to sign
    let u_m = BigRational::new(cover.kk(), cover.mm());
    match mode {
        TowerMode::Multiplicative { q } => {
            if !arith::is_prime(&BigUint::from(*q)).is_prime() {
                return Err(Error::InvalidInput(format!("q = {q} is not prime")));
            }
            // branch sets {0, oo, -q^(k_i) u_m}: distinct third points needed
            let mut third: Vec<BigRational> = Vec::new();
            for &k in &steps {
                let scale = BigRational::from(BigInt::from(*q).pow(k as u32));
                third.push(-(&u_m * scale));
            }
            for i in 0..third.len() {
                for j in i + 1..third.len() {
                    if third[i] == third[j] {
                        return Err(Error::InvalidInput(format!(
                            "colliding branch points for exponents {} and {}",
                            steps[i], steps[j]
                        )));
                    }
                }
            }
        }
        TowerMode::Additive => {
            // branch sets {oo, k_i, k_i - u_m}: need k_i != k_j and
            // k_i - k_j != +-u_m; checked exactly, not assumed from the
            // non-integrality of u_m
            for i in 0..steps.len() {
                for j in 0..steps.len() {
                    if i == j {
                        continue;
                    }
                    let diff = BigRational::from(BigInt::from(steps[i] - steps[j]));
                    if diff.is_zero() || diff == u_m || diff == -u_m.clone() {
                        return Err(Error::InvalidInput(format!(
                            "colliding branch points for shifts {} and {}",
                            steps[i], steps[j]
                        )));
                    }
                }
            }
        }
    }
    Ok(steps)
}

/// The parameter points of the factors: a/(b q^(k_i)) resp. (a - k_i b)/b.
pub fn parameters(spec: &TowerSpec) -> Result<Vec<ProjPoint>> {
    let (a, b) = (spec.base.a().clone(), spec.base.b().clone());
    let mut out = Vec::with_capacity(spec.steps.len());
    for &k in &spec.steps {
        let point = match &spec.mode {
            TowerMode::Multiplicative { q } => {
                let scale = BigInt::from(*q).pow(k as u32);
                ProjPoint::new(a.clone(), &b * scale)?
            }
            TowerMode::Additive => ProjPoint::new(&a - BigInt::from(k) * &b, b.clone())?,
        };
        out.push(point);
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if out[i] == out[j] {
                return Err(Error::InvalidInput(format!(
                    "factors {i} and {j} specialize at the same parameter {}",
                    out[i]
                )));
            }
        }
    }
    Ok(out)
}

/// Runs the full specialization pipeline on every factor of the tower.
/// Errors name the factor that hit a branch point.
pub fn specialize_tower(spec: &TowerSpec, budgets: &FieldBudgets) -> Result<Vec<SpecializedField>> {
    let params = parameters(spec)?;
    params
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            specfield::ram_report(spec.m, p, budgets).map_err(|e| match e {
                Error::BranchPoint(msg) => {
                    Error::BranchPoint(format!("factor {i} (parameter {p}): {msg}"))
                }
                other => other,
            })
        })
        .collect()
}

/// F_2-independence certificate for discriminant square classes. The
/// coordinates are the sign and the primes appearing to an odd power in
/// some discriminant; rows are the exponent vectors of the squarefree
/// parts; the rank is recomputed from the stored vectors on verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceCertificate {
    /// Coordinate labels: "-1" first, then primes ascending (decimal).
    pub labels: Vec<String>,
    /// One row per discriminant, entries 0/1 over the labels.
    pub vectors: Vec<Vec<u8>>,
    pub rank: usize,
    pub independent: bool,
}

/// Rank over F_2 by Gaussian elimination.
pub fn f2_rank(rows: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = rows.to_vec();
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col) == Some(&1)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) == Some(&1) {
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Maps each discriminant to the exponent vector of its squarefree part
/// over F_2 (coordinates: -1 and each odd-exponent prime) and tests linear
/// independence. Independence of the square classes certifies independence
/// of the quadratic subfields.
pub fn disc_independence(discs: &[&Factorization]) -> Result<IndependenceCertificate> {
    if discs.is_empty() {
        return Err(Error::InvalidInput("no discriminants".into()));
    }
    let mut primes: Vec<BigUint> = Vec::new();
    for d in discs {
        for (p, entry) in d.factors() {
            if entry.exponent % 2 == 1 && !primes.contains(p) {
                primes.push(p.clone());
            }
        }
    }
    primes.sort();
    let mut labels = vec!["-1".to_string()];
    labels.extend(primes.iter().map(|p| p.to_str_radix(10)));
    let vectors: Vec<Vec<u8>> = discs
        .iter()
        .map(|d| {
            let mut row = Vec::with_capacity(labels.len());
            row.push(u8::from(d.sign() < 0));
            for p in &primes {
                row.push((d.v_p(p) % 2) as u8);
            }
            row
        })
        .collect();
    let rank = f2_rank(&vectors);
    Ok(IndependenceCertificate {
        labels,
        rank,
        independent: rank == discs.len(),
        vectors,
    })
}

/// Verdict of the tower certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertOutcome {
    /// Every factor carries a full S_m certificate and the discriminant
    /// square classes are independent: the compositum has group S_m^n.
    Certified,
    /// A definite failure (dependent square classes).
    NotCertified(String),
    /// Some factor has no Galois certificate; not a "false".
    Undetermined(String),
}

impl CertOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertOutcome::Certified)
    }
}

/// Combines per-factor S_m certificates with square-class independence:
/// surjectivity onto every factor plus surjectivity onto the product of
/// the sign quotients forces the full direct product as Galois group.
pub fn certify_tower(
    factors: &[SpecializedField],
    independence: &IndependenceCertificate,
) -> CertOutcome {
    for (i, f) in factors.iter().enumerate() {
        if f.galois_cert.is_none() {
            return CertOutcome::Undetermined(format!(
                "factor {i} (parameter {}) has no Galois certificate",
                f.parameter
            ));
        }
    }
    if !independence.independent {
        return CertOutcome::NotCertified(format!(
            "discriminant square classes dependent: rank {} < {}",
            independence.rank,
            factors.len()
        ));
    }
    CertOutcome::Certified
}

/// Budgets for the tower search.
#[derive(Clone, Debug)]
pub struct TowerBudgets {
    pub field: FieldBudgets,
    /// Base points examined per schedule step.
    pub max_base_points: u64,
    /// Largest schedule step tried before giving up.
    pub max_step: i64,
}

impl Default for TowerBudgets {
    fn default() -> Self {
        Self {
            field: FieldBudgets::default(),
            max_base_points: 5_000,
            max_step: 4,
        }
    }
}

/// Witness bundle for an S_m^n realization.
#[derive(Clone, Debug)]
pub struct TowerReport {
    pub spec: TowerSpec,
    pub factors: Vec<SpecializedField>,
    pub independence: IndependenceCertificate,
    /// Union of the per-factor ramified-or-unknown sets, with infinity.
    pub ram_union: PrimeSet,
    /// #ram_union counting infinity; unknown statuses count as ramified.
    pub total: usize,
    /// The bound the witness is asserted against: 4 for n = 1, n + 4 else.
    pub target: usize,
    pub outcome: CertOutcome,
    /// Log of schedule-step escalations during the search.
    pub escalations: Vec<String>,
}

fn ram_union(factors: &[SpecializedField]) -> PrimeSet {
    factors
        .iter()
        .map(SpecializedField::ramified_set)
        .fold(PrimeSet::empty(), |acc, s| acc.union(&s))
}

/// Target bound: the n = 1 witness obeys the sharper single-field bound.
pub fn target_total(n: u32) -> usize {
    if n == 1 {
        4
    } else {
        n as usize + 4
    }
}

/// Assembles and certifies the tower at an explicitly given base point.
pub fn build_tower(
    m: u32,
    n: u32,
    mode: TowerMode,
    step: i64,
    base: ProjPoint,
    budgets: &FieldBudgets,
) -> Result<TowerReport> {
    let steps = schedule(m, n, &mode, step.max(1))?;
    let spec = TowerSpec { m, n, mode, steps, base };
    let factors = specialize_tower(&spec, budgets)?;
    let discs: Vec<&Factorization> = factors.iter().map(|f| &f.disc).collect();
    let independence = disc_independence(&discs)?;
    let outcome = certify_tower(&factors, &independence);
    let union = ram_union(&factors);
    let total = union.count();
    Ok(TowerReport {
        spec,
        factors,
        independence,
        ram_union: union,
        total,
        target: target_total(n),
        outcome,
        escalations: Vec::new(),
    })
}

/// Evaluates one base candidate; Ok(None) when the candidate is
/// inadmissible or fails certification, Err only on real failures.
fn try_base(
    m: u32,
    n: u32,
    mode: &TowerMode,
    step: i64,
    base: &ProjPoint,
    budgets: &TowerBudgets,
) -> Result<Option<TowerReport>> {
    match build_tower(m, n, mode.clone(), step, base.clone(), &budgets.field) {
        Ok(report) => {
            if report.outcome.is_certified() && report.total <= report.target {
                Ok(Some(report))
            } else {
                Ok(None)
            }
        }
        // branch points, reducible specializations and factorization
        // blowups disqualify the candidate without aborting the search
        Err(Error::BranchPoint(_))
        | Err(Error::Reducible(_))
        | Err(Error::IncompleteFactorization(_))
        | Err(Error::InvalidInput(_)) => Ok(None),
        Err(other) => Err(other),
    }
}

/// Searches base points (and, on failure, larger schedule steps) until a
/// certified tower with total ramified count within the target appears.
/// Deterministic: candidates are scanned in the global enumeration order
/// and the first acceptable witness wins, independent of worker count.
pub fn realize_smn_with_mode(
    m: u32,
    n: u32,
    mode: TowerMode,
    budgets: &TowerBudgets,
) -> Result<TowerReport> {
    TrinomialCover::new(m)?;
    if n < 1 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    let mut escalations = Vec::new();
    let max_step = if n == 1 { 1 } else { budgets.max_step.max(1) };
    for step in 1..=max_step {
        if step > 1 {
            escalations.push(format!(
                "schedule step {} failed within {} base points; escalating to {}",
                step - 1,
                budgets.max_base_points,
                step
            ));
        }
        let q_filter = match &mode {
            TowerMode::Multiplicative { q } => Some(BigInt::from(*q)),
            TowerMode::Additive => None,
        };
        let candidates = forms::all_points()
            .filter(|p| {
                // multiplicative twists need the base numerator prime to q,
                // otherwise parameters collapse onto each other
                match &q_filter {
                    Some(q) => !(p.a() % q).is_zero(),
                    None => true,
                }
            })
            .take(budgets.max_base_points as usize);

        const CHUNK: usize = 16;
        let mut buffer: Vec<ProjPoint> = Vec::with_capacity(CHUNK);
        let mut candidates = candidates.peekable();
        while candidates.peek().is_some() {
            buffer.clear();
            buffer.extend(candidates.by_ref().take(CHUNK));
            let results: Vec<Result<Option<TowerReport>>> = buffer
                .par_iter()
                .map(|base| try_base(m, n, &mode, step, base, budgets))
                .collect();
            for r in results {
                if let Some(mut report) = r? {
                    report.escalations = escalations.clone();
                    return Ok(report);
                }
            }
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no certified S_{m}^{n} tower within {} base points per step and steps up to {max_step}",
        budgets.max_base_points
    )))
}

/// Searches for an S_m^n tower with the default multiplicative q = 2 mode.
pub fn realize_smn(m: u32, n: u32, budgets: &TowerBudgets) -> Result<TowerReport> {
    realize_smn_with_mode(m, n, TowerMode::Multiplicative { q: 2 }, budgets)
}

/// Single-field witness search: the n = 1 tower, asserting the sharper
/// bound total <= 4.
pub fn realize_sm(m: u32, budgets: &TowerBudgets) -> Result<TowerReport> {
    realize_smn(m, 1, budgets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    fn pt(a: i64, b: i64) -> ProjPoint {
        ProjPoint::from_i64(a, b).unwrap()
    }

    fn fact(n: i64) -> Factorization {
        arith::factorize(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn schedule_examples() {
        let mult = TowerMode::Multiplicative { q: 2 };
        assert_eq!(schedule(4, 2, &mult, 1).unwrap(), vec![1, 2]);
        assert_eq!(schedule(4, 3, &TowerMode::Additive, 1).unwrap(), vec![1, 2, 3]);
        assert_eq!(schedule(4, 1, &mult, 1).unwrap(), vec![0]);
        assert!(schedule(4, 2, &TowerMode::Multiplicative { q: 4 }, 1).is_err());
    }

    #[test]
    fn parameters_multiplicative() {
        let spec = TowerSpec {
            m: 4,
            n: 2,
            mode: TowerMode::Multiplicative { q: 2 },
            steps: vec![1, 2],
            base: pt(1, 1),
        };
        assert_eq!(parameters(&spec).unwrap(), vec![pt(1, 2), pt(1, 4)]);
        let h: Vec<IntPoly> = parameters(&spec)
            .unwrap()
            .iter()
            .map(|p| specfield::specialize(4, p).unwrap())
            .collect();
        assert_eq!(h[0], IntPoly::from_i64(&[-8, 0, 0, -2, 1]));
        assert_eq!(h[1], IntPoly::from_i64(&[-64, 0, 0, -4, 1]));
    }

    #[test]
    fn parameters_additive() {
        let spec = TowerSpec {
            m: 4,
            n: 2,
            mode: TowerMode::Additive,
            steps: vec![1, 2],
            base: pt(7, 2),
        };
        // (a - k b)/b: 5/2 and 3/2
        assert_eq!(parameters(&spec).unwrap(), vec![pt(5, 2), pt(3, 2)]);
    }

    #[test]
    fn duplicate_parameters_rejected() {
        let spec = TowerSpec {
            m: 4,
            n: 2,
            mode: TowerMode::Multiplicative { q: 2 },
            steps: vec![1, 1],
            base: pt(1, 1),
        };
        assert!(parameters(&spec).is_err());
    }

    #[test]
    fn independence_examples() {
        // {-283, 5}: independent
        let a = fact(-283);
        let b = fact(5);
        let cert = disc_independence(&[&a, &b]).unwrap();
        assert!(cert.independent);
        assert_eq!(cert.rank, 2);

        // {5, 45}: 45 = 9*5, same square class
        let c = fact(45);
        let cert = disc_independence(&[&b, &c]).unwrap();
        assert!(!cert.independent);

        // {-3, -7, 21}: product is a square
        let x = fact(-3);
        let y = fact(-7);
        let z = fact(21);
        let cert = disc_independence(&[&x, &y, &z]).unwrap();
        assert!(!cert.independent);
        assert_eq!(cert.rank, 2);
    }

    #[test]
    fn certify_tower_outcomes() {
        let budgets = FieldBudgets::default();
        let f1 = specfield::ram_report(4, &pt(1, 1), &budgets).unwrap();
        let f2 = specfield::ram_report(4, &pt(1, 2), &budgets).unwrap();
        assert!(f1.is_certified() && f2.is_certified());
        let cert = disc_independence(&[&f1.disc, &f2.disc]).unwrap();
        assert!(matches!(
            certify_tower(&[f1.clone(), f2.clone()], &cert),
            CertOutcome::Certified
        ));

        // duplicate factor: dependent square classes
        let cert_dup = disc_independence(&[&f1.disc, &f1.disc]).unwrap();
        assert!(matches!(
            certify_tower(&[f1.clone(), f1.clone()], &cert_dup),
            CertOutcome::NotCertified(_)
        ));

        // a factor without certificate: undetermined
        let mut f3 = f2.clone();
        f3.galois_cert = None;
        let cert2 = disc_independence(&[&f1.disc, &f3.disc]).unwrap();
        assert!(matches!(
            certify_tower(&[f1.clone(), f3], &cert2),
            CertOutcome::Undetermined(_)
        ));
    }

    #[test]
    fn realize_sm_quartic() {
        let report = realize_sm(4, &TowerBudgets::default()).unwrap();
        assert_eq!(report.spec.base, pt(1, 1));
        assert_eq!(report.total, 2);
        assert!(report.outcome.is_certified());
        assert_eq!(report.factors.len(), 1);
        // bit-for-bit the single-field pipeline at the same point
        let direct = specfield::ram_report(4, &pt(1, 1), &FieldBudgets::default()).unwrap();
        assert_eq!(report.factors[0], direct);
    }

    #[test]
    fn realize_smn_equals_realize_sm_for_n1() {
        let a = realize_sm(4, &TowerBudgets::default()).unwrap();
        let b = realize_smn(4, 1, &TowerBudgets::default()).unwrap();
        assert_eq!(a.spec, b.spec);
        assert_eq!(a.factors, b.factors);
        assert_eq!(a.total, b.total);
    }

    #[test]
    fn realize_smn_quartic_pair() {
        let report = realize_smn(4, 2, &TowerBudgets::default()).unwrap();
        assert!(report.outcome.is_certified());
        assert!(report.total <= 6, "total {} > 6", report.total);
        assert_eq!(report.factors.len(), 2);
        assert!(report.independence.independent);
        // union really is the union of the per-factor sets
        let union = ram_union(&report.factors);
        assert_eq!(union, report.ram_union);
    }
}
