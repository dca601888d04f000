//! Machine-readable reports and their re-verification.
//!
//! Every run of the library or CLI emits one JSON document described by
//! the schema shipped in-repo (schema/report.schema.json). Integers that
//! may exceed 64 bits are decimal strings; points appear in lowest terms
//! with a nonnegative second coordinate. `verify` re-checks all inline
//! certificates from the serialized data alone, without re-running any
//! search.

use crate::arith::{self, Factorization, PrimeSet};
use crate::error::{Error, Result};
use crate::forms::{self, BinaryForm, NeighborhoodVN, ProjPoint};
use crate::groups::rigid::{self, GeneratingTuple};
use crate::groups::{Perm, PermGroup};
use crate::poly::IntPoly;
use crate::specfield::{self, RamStatus, SmCertificate, SpecializedField};
use crate::tower::{self, CertOutcome, IndependenceCertificate, TowerMode, TowerReport, TowerSpec};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::InvalidInput(format!("bad integer '{s}' in report")))
}

fn parse_biguint(s: &str) -> Result<BigUint> {
    s.parse::<BigUint>()
        .map_err(|_| Error::InvalidInput(format!("bad integer '{s}' in report")))
}

/// [a : b] in lowest terms, b >= 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub a: String,
    pub b: String,
}

impl From<&ProjPoint> for PointJson {
    fn from(p: &ProjPoint) -> Self {
        Self { a: p.a().to_string(), b: p.b().to_string() }
    }
}

impl PointJson {
    pub fn to_point(&self) -> Result<ProjPoint> {
        ProjPoint::new(parse_bigint(&self.a)?, parse_bigint(&self.b)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub prime: String,
    pub exponent: u32,
    /// Primality proven (true) or probable (false).
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub value: String,
    pub sign: i32,
    pub factors: Vec<FactorJson>,
}

impl From<&Factorization> for FactorizationJson {
    fn from(f: &Factorization) -> Self {
        Self {
            value: f.value().to_string(),
            sign: f.sign(),
            factors: f
                .factors()
                .iter()
                .map(|(p, e)| FactorJson {
                    prime: p.to_str_radix(10),
                    exponent: e.exponent,
                    certified: e.certified,
                })
                .collect(),
        }
    }
}

impl FactorizationJson {
    /// Checks the factorization is internally consistent: every factor is
    /// prime and the signed product reproduces the value.
    pub fn verify(&self) -> Result<()> {
        let value = parse_bigint(&self.value)?;
        let mut acc = BigInt::from(self.sign);
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::InvalidInput("factorization sign must be +-1".into()));
        }
        for f in &self.factors {
            let p = parse_biguint(&f.prime)?;
            if f.exponent == 0 {
                return Err(Error::InvalidInput(format!("factor {p} has exponent 0")));
            }
            if !arith::is_prime(&p).is_prime() {
                return Err(Error::InvalidInput(format!("factor {p} is not prime")));
            }
            acc *= BigInt::from(p).pow(f.exponent);
        }
        if acc != value {
            return Err(Error::InvalidInput(format!(
                "factorization does not recompose: {acc} != {value}"
            )));
        }
        Ok(())
    }
}

fn status_str(s: RamStatus) -> &'static str {
    match s {
        RamStatus::Ramified => "ramified",
        RamStatus::Unramified => "unramified",
        RamStatus::Unknown => "unknown",
    }
}

fn parse_status(s: &str) -> Result<RamStatus> {
    match s {
        "ramified" => Ok(RamStatus::Ramified),
        "unramified" => Ok(RamStatus::Unramified),
        "unknown" => Ok(RamStatus::Unknown),
        other => Err(Error::InvalidInput(format!("bad ramification status '{other}'"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamEntryJson {
    pub prime: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmCertJson {
    pub p_irreducible: u64,
    pub p_cycle: u64,
    /// "transposition" or "odd-prime-cycle".
    pub symmetry_kind: String,
    pub p_symmetry: u64,
    /// The odd prime cycle length, for the odd-prime-cycle route.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

impl From<&SmCertificate> for SmCertJson {
    fn from(c: &SmCertificate) -> Self {
        let (kind, p, q) = match &c.symmetry {
            SymmetryWitness::Transposition { p } => ("transposition", *p, None),
            SymmetryWitness::OddPrimeCycle { p, q } => ("odd-prime-cycle", *p, Some(*q)),
        };
        Self {
            p_irreducible: c.p_irreducible,
            p_cycle: c.p_cycle,
            symmetry_kind: kind.to_string(),
            p_symmetry: p,
            q,
        }
    }
}

impl SmCertJson {
    pub fn to_certificate(&self) -> Result<SmCertificate> {
        let symmetry = match (self.symmetry_kind.as_str(), self.q) {
            ("transposition", None) => SymmetryWitness::Transposition { p: self.p_symmetry },
            ("odd-prime-cycle", Some(q)) => {
                SymmetryWitness::OddPrimeCycle { p: self.p_symmetry, q }
            }
            _ => {
                return Err(Error::InvalidInput(
                    "bad symmetry witness kind/q combination".into(),
                ))
            }
        };
        Ok(SmCertificate {
            p_irreducible: self.p_irreducible,
            p_cycle: self.p_cycle,
            symmetry,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamSpecJson {
    /// Finite primes of the fixed containment set T.
    pub t_finite: Vec<String>,
    pub branch_value: String,
    pub violations: Vec<String>,
}

/// Full witness bundle for one specialized field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReportJson {
    pub m: u32,
    pub parameter: PointJson,
    /// Coefficients of h ascending by degree, decimal strings.
    pub h_coeffs: Vec<String>,
    pub disc: FactorizationJson,
    pub ram: Vec<RamEntryJson>,
    pub real_roots: u32,
    pub infinity_ramified: bool,
    pub galois_cert: Option<SmCertJson>,
    pub ram_spec: RamSpecJson,
    /// Finite ramified-or-unknown primes.
    pub ramified_finite: Vec<String>,
    /// #ramified set counting infinity.
    pub total: usize,
}

impl From<&SpecializedField> for FieldReportJson {
    fn from(f: &SpecializedField) -> Self {
        let ram_set = f.ramified_set();
        Self {
            m: f.m,
            parameter: (&f.parameter).into(),
            h_coeffs: f.h.coeffs().iter().map(BigInt::to_string).collect(),
            disc: (&f.disc).into(),
            ram: f
                .ram_status
                .iter()
                .map(|(p, s)| RamEntryJson {
                    prime: p.to_str_radix(10),
                    status: status_str(*s).to_string(),
                })
                .collect(),
            real_roots: f.real_roots,
            infinity_ramified: f.infinity_ramified,
            galois_cert: f.galois_cert.as_ref().map(SmCertJson::from),
            ram_spec: RamSpecJson {
                t_finite: f.ram_spec.t_set.finite().iter().map(|p| p.to_str_radix(10)).collect(),
                branch_value: f.ram_spec.branch_value.to_string(),
                violations: f.ram_spec.violations.iter().map(|p| p.to_str_radix(10)).collect(),
            },
            ramified_finite: ram_set.finite().iter().map(|p| p.to_str_radix(10)).collect(),
            total: ram_set.count(),
        }
    }
}

impl FieldReportJson {
    pub fn h(&self) -> Result<IntPoly> {
        Ok(IntPoly::from_coeffs(
            self.h_coeffs.iter().map(|c| parse_bigint(c)).collect::<Result<_>>()?,
        ))
    }

    /// Re-verifies every certificate in the bundle from scratch: the
    /// integral model, the discriminant and its factorization, each
    /// per-prime status, the real-root count, the Galois certificate and
    /// the containment check.
    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let check = || -> Result<()> {
            let point = self.parameter.to_point()?;
            let h = self.h()?;
            let expected_h = specfield::specialize(self.m, &point)?;
            if h != expected_h {
                return Err(Error::InvalidInput(format!(
                    "stored polynomial {h} is not the specialization at {point}"
                )));
            }
            self.disc.verify()?;
            let disc_value = parse_bigint(&self.disc.value)?;
            let oracle = specfield::disc_resultant(&h)?;
            if oracle != disc_value {
                return Err(Error::InvalidInput(format!(
                    "stored discriminant {disc_value} != subresultant oracle {oracle}"
                )));
            }
            // every prime dividing disc must be listed with a recomputable
            // status
            if self.ram.len() != self.disc.factors.len() {
                return Err(Error::InvalidInput(
                    "ramification table does not cover the discriminant primes".into(),
                ));
            }
            for entry in &self.ram {
                let p = parse_biguint(&entry.prime)?;
                let status = parse_status(&entry.status)?;
                let recomputed = specfield::ram_status(&h, &p)?;
                if recomputed != status {
                    return Err(Error::InvalidInput(format!(
                        "status of {p} recomputes to {} != stored {}",
                        status_str(recomputed),
                        entry.status
                    )));
                }
            }
            let roots = specfield::sturm_real_roots(&h)?;
            if roots != self.real_roots {
                return Err(Error::InvalidInput(format!(
                    "real-root count recomputes to {roots} != stored {}",
                    self.real_roots
                )));
            }
            let inf = (roots as usize) < h.degree();
            if inf != self.infinity_ramified {
                return Err(Error::InvalidInput("infinite-prime status mismatch".into()));
            }
            if let Some(cert) = &self.galois_cert {
                SmCertificate {
                    p_irreducible: cert.p_irreducible,
                    p_cycle: cert.p_cycle,
                    p_transposition: cert.p_transposition,
                }
                .verify(&h)?;
            }
            // containment: every ramified-or-unknown prime outside T
            // divides the branch value
            let branch_value = parse_bigint(&self.ram_spec.branch_value)?;
            let cover = specfield::TrinomialCover::new(self.m)?;
            if cover.branch_value(&point) != branch_value {
                return Err(Error::InvalidInput("branch value mismatch".into()));
            }
            if !self.ram_spec.violations.is_empty() {
                return Err(Error::InvalidInput(
                    "report records ramification containment violations".into(),
                ));
            }
            let t_finite: Vec<BigUint> = self
                .ram_spec
                .t_finite
                .iter()
                .map(|p| parse_biguint(p))
                .collect::<Result<_>>()?;
            let mut ram_finite: Vec<BigUint> = Vec::new();
            for entry in &self.ram {
                if parse_status(&entry.status)? != RamStatus::Unramified {
                    ram_finite.push(parse_biguint(&entry.prime)?);
                }
            }
            for p in &ram_finite {
                if !t_finite.contains(p)
                    && !(branch_value.clone() % BigInt::from(p.clone())).is_zero()
                {
                    return Err(Error::InvalidInput(format!(
                        "prime {p} violates the ramification containment"
                    )));
                }
            }
            // summary figures
            let stored: Vec<BigUint> = self
                .ramified_finite
                .iter()
                .map(|p| parse_biguint(p))
                .collect::<Result<_>>()?;
            if stored != ram_finite {
                return Err(Error::InvalidInput("ramified_finite list mismatch".into()));
            }
            let total = ram_finite.len() + usize::from(self.infinity_ramified);
            if total != self.total {
                return Err(Error::InvalidInput(format!(
                    "total recomputes to {total} != stored {}",
                    self.total
                )));
            }
            Ok(())
        };
        if let Err(e) = check() {
            issues.push(e.to_string());
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceJson {
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<u8>>,
    pub rank: usize,
    pub independent: bool,
}

impl From<&IndependenceCertificate> for IndependenceJson {
    fn from(c: &IndependenceCertificate) -> Self {
        Self {
            labels: c.labels.clone(),
            vectors: c.vectors.clone(),
            rank: c.rank,
            independent: c.independent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReportJson {
    pub m: u32,
    pub n: u32,
    /// "multiplicative" or "additive".
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub steps: Vec<i64>,
    pub base: PointJson,
    pub factors: Vec<FieldReportJson>,
    pub independence: IndependenceJson,
    pub ram_union_finite: Vec<String>,
    pub infinity_ramified: bool,
    pub total: usize,
    pub target: usize,
    /// "certified", "not-certified" or "undetermined".
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome_detail: Option<String>,
    pub escalations: Vec<String>,
}

impl From<&TowerReport> for TowerReportJson {
    fn from(r: &TowerReport) -> Self {
        let (mode, q) = match &r.spec.mode {
            TowerMode::Multiplicative { q } => ("multiplicative".to_string(), Some(*q)),
            TowerMode::Additive => ("additive".to_string(), None),
        };
        let (outcome, detail) = match &r.outcome {
            CertOutcome::Certified => ("certified".to_string(), None),
            CertOutcome::NotCertified(d) => ("not-certified".to_string(), Some(d.clone())),
            CertOutcome::Undetermined(d) => ("undetermined".to_string(), Some(d.clone())),
        };
        Self {
            m: r.spec.m,
            n: r.spec.n,
            mode,
            q,
            steps: r.spec.steps.clone(),
            base: (&r.spec.base).into(),
            factors: r.factors.iter().map(FieldReportJson::from).collect(),
            independence: (&r.independence).into(),
            ram_union_finite: r
                .ram_union
                .finite()
                .iter()
                .map(|p| p.to_str_radix(10))
                .collect(),
            infinity_ramified: r.ram_union.includes_infinity(),
            total: r.total,
            target: r.target,
            outcome,
            outcome_detail: detail,
            escalations: r.escalations.clone(),
        }
    }
}

impl TowerReportJson {
    /// Re-verifies the tower bundle: the schedule and parameters, every
    /// factor bundle, the independence certificate (vectors recomputed
    /// from the stored discriminants and the rank recomputed from the
    /// vectors), the union and the totals.
    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let mode = match (self.mode.as_str(), self.q) {
            ("multiplicative", Some(q)) => TowerMode::Multiplicative { q },
            ("additive", None) => TowerMode::Additive,
            _ => {
                issues.push("bad mode/q combination".into());
                return issues;
            }
        };
        let base = match self.base.to_point() {
            Ok(p) => p,
            Err(e) => {
                issues.push(e.to_string());
                return issues;
            }
        };
        let spec = TowerSpec {
            m: self.m,
            n: self.n,
            mode,
            steps: self.steps.clone(),
            base,
        };
        match tower::parameters(&spec) {
            Ok(params) => {
                if params.len() != self.factors.len() {
                    issues.push("factor count does not match the schedule".into());
                } else {
                    for (i, (p, f)) in params.iter().zip(&self.factors).enumerate() {
                        match f.parameter.to_point() {
                            Ok(stored) if &stored == p => {}
                            Ok(stored) => issues.push(format!(
                                "factor {i} parameter {stored} != schedule parameter {p}"
                            )),
                            Err(e) => issues.push(e.to_string()),
                        }
                    }
                }
            }
            Err(e) => issues.push(format!("schedule does not reproduce: {e}")),
        }
        for (i, f) in self.factors.iter().enumerate() {
            for issue in f.verify() {
                issues.push(format!("factor {i}: {issue}"));
            }
            if f.m != self.m {
                issues.push(format!("factor {i} has m = {} != {}", f.m, self.m));
            }
        }
        // independence: recompute vectors from the stored factorizations
        let discs: Result<Vec<Factorization>> = self
            .factors
            .iter()
            .map(|f| {
                let v = parse_bigint(&f.disc.value)?;
                arith::factorize(&v)
            })
            .collect();
        match discs {
            Ok(discs) => {
                let refs: Vec<&Factorization> = discs.iter().collect();
                match tower::disc_independence(&refs) {
                    Ok(cert) => {
                        if cert.vectors != self.independence.vectors
                            || cert.labels != self.independence.labels
                        {
                            issues.push("independence vectors do not recompute".into());
                        }
                        let rank = tower::f2_rank(&self.independence.vectors);
                        if rank != self.independence.rank {
                            issues.push(format!(
                                "rank recomputes to {rank} != stored {}",
                                self.independence.rank
                            ));
                        }
                        if cert.independent != self.independence.independent {
                            issues.push("independence verdict mismatch".into());
                        }
                    }
                    Err(e) => issues.push(e.to_string()),
                }
            }
            Err(e) => issues.push(e.to_string()),
        }
        // outcome consistency
        let all_certified = self.factors.iter().all(|f| f.galois_cert.is_some());
        let expected_outcome = if !all_certified {
            "undetermined"
        } else if !self.independence.independent {
            "not-certified"
        } else {
            "certified"
        };
        if self.outcome != expected_outcome {
            issues.push(format!(
                "outcome '{}' does not match recomputed '{expected_outcome}'",
                self.outcome
            ));
        }
        // union and totals
        let mut union: Vec<BigUint> = Vec::new();
        let mut infinity = false;
        for f in &self.factors {
            infinity |= f.infinity_ramified;
            for p in &f.ramified_finite {
                match parse_biguint(p) {
                    Ok(p) => {
                        if !union.contains(&p) {
                            union.push(p);
                        }
                    }
                    Err(e) => issues.push(e.to_string()),
                }
            }
        }
        union.sort();
        let stored_union: Result<Vec<BigUint>> =
            self.ram_union_finite.iter().map(|p| parse_biguint(p)).collect();
        match stored_union {
            Ok(stored) => {
                if stored != union {
                    issues.push("ram_union_finite does not recompute".into());
                }
            }
            Err(e) => issues.push(e.to_string()),
        }
        if self.infinity_ramified != infinity {
            issues.push("union infinity flag mismatch".into());
        }
        let total = union.len() + usize::from(infinity);
        if total != self.total {
            issues.push(format!("total recomputes to {total} != stored {}", self.total));
        }
        if self.target != tower::target_total(self.n) {
            issues.push("target does not match n".into());
        }
        if self.outcome == "certified" && self.total > self.target {
            issues.push(format!("total {} exceeds target {}", self.total, self.target));
        }
        issues
    }
}

/// A permutation group serialized as degree plus generators in cycle
/// notation, with an optional catalog name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<String>,
    pub order: usize,
}

impl GroupJson {
    pub fn from_group(name: Option<String>, g: &PermGroup) -> Self {
        Self {
            name,
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.to_string()).collect(),
            order: g.order(),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|s| Perm::parse_cycles(s, self.degree))
            .collect::<Result<Vec<_>>>()?;
        let g = PermGroup::close(self.degree, gens)?;
        if g.order() != self.order {
            return Err(Error::InvalidInput(format!(
                "group order recomputes to {} != stored {}",
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpReportJson {
    pub group: GroupJson,
    pub p: u64,
    pub is_ep: bool,
    /// Indices of the maximal proper normal subgroups (simple quotient
    /// orders), the first half of the certificate.
    pub maximal_normal_indices: Vec<u64>,
}

impl EpReportJson {
    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        match self.group.to_group() {
            Ok(g) => {
                match g.maximal_normal_indices() {
                    Ok(idx) => {
                        if idx != self.maximal_normal_indices {
                            issues.push("maximal normal indices do not recompute".into());
                        }
                    }
                    Err(e) => issues.push(e.to_string()),
                }
                match g.is_ep(self.p) {
                    Ok(v) => {
                        if v != self.is_ep {
                            issues.push(format!(
                                "E({}) recomputes to {v} != stored {}",
                                self.p, self.is_ep
                            ));
                        }
                    }
                    Err(e) => issues.push(e.to_string()),
                }
            }
            Err(e) => issues.push(e.to_string()),
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidReportJson {
    pub group: GroupJson,
    /// Tuple entries in cycle notation.
    pub entries: Vec<String>,
    pub rationally_rigid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub tuple_count: u64,
    pub candidates: u64,
    pub budget: u64,
}

impl RigidReportJson {
    pub fn to_tuple(&self) -> Result<GeneratingTuple> {
        let g = self.group.to_group()?;
        let entries = self
            .entries
            .iter()
            .map(|s| Perm::parse_cycles(s, g.degree()))
            .collect::<Result<Vec<_>>>()?;
        GeneratingTuple::new(g, entries)
    }

    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        match self.to_tuple() {
            Ok(t) => match rigid::is_rationally_rigid(&t, self.budget) {
                Ok(check) => {
                    if check.rationally_rigid != self.rationally_rigid {
                        issues.push("rigidity verdict does not recompute".into());
                    }
                    if check.tuple_count != self.tuple_count {
                        issues.push(format!(
                            "tuple count recomputes to {} != stored {}",
                            check.tuple_count, self.tuple_count
                        ));
                    }
                }
                Err(e) => issues.push(e.to_string()),
            },
            Err(e) => issues.push(e.to_string()),
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTupleReportJson {
    pub p: u64,
    pub group: GroupJson,
    pub entries: Vec<String>,
    /// s = d1 + d2 + max(k1 - d1, k2 - d2).
    pub s: usize,
    pub d1: usize,
    pub d2: usize,
    pub k1: usize,
    pub k2: usize,
    pub budget: u64,
}

impl ProductTupleReportJson {
    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.s != self.d1 + self.d2 + (self.k1 - self.d1).max(self.k2 - self.d2) {
            issues.push("s does not match d1 + d2 + max(k1-d1, k2-d2)".into());
        }
        if self.entries.len() != self.s {
            issues.push("entry count differs from s".into());
        }
        let tuple = (|| -> Result<GeneratingTuple> {
            let g = self.group.to_group()?;
            let entries = self
                .entries
                .iter()
                .map(|t| Perm::parse_cycles(t, g.degree()))
                .collect::<Result<Vec<_>>>()?;
            GeneratingTuple::new(g, entries)
        })();
        match tuple {
            Ok(t) => match rigid::is_rationally_rigid(&t, self.budget) {
                Ok(check) => {
                    if !check.rationally_rigid {
                        issues.push(format!(
                            "product tuple fails rigidity: {}",
                            check.failure.unwrap_or_default()
                        ));
                    }
                }
                Err(e) => issues.push(e.to_string()),
            },
            Err(e) => issues.push(e.to_string()),
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidBoundJson {
    pub r: u32,
    pub order: String,
    pub bound: u64,
}

impl RigidBoundJson {
    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        match parse_biguint(&self.order)
            .and_then(|o| rigid::rigid_bound(self.r, &o))
        {
            Ok(b) => {
                if b != self.bound {
                    issues.push(format!("bound recomputes to {b} != stored {}", self.bound));
                }
            }
            Err(e) => issues.push(e.to_string()),
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaBoundJson {
    pub degrees: Vec<u32>,
    pub bound: u64,
}

impl BetaBoundJson {
    pub fn verify(&self) -> Vec<String> {
        match forms::beta_sieve_bound(&self.degrees) {
            Ok(b) if b == self.bound => Vec::new(),
            Ok(b) => vec![format!("bound recomputes to {b} != stored {}", self.bound)],
            Err(e) => vec![e.to_string()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtzReportJson {
    /// Input forms in the t/s grammar.
    pub forms: Vec<String>,
    pub s_finite: Vec<String>,
    pub neighborhood_n: u64,
    pub point: PointJson,
    pub values: Vec<String>,
    pub stripped: Vec<String>,
    pub examined: u64,
}

impl GtzReportJson {
    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let check = || -> Result<()> {
            let point = self.point.to_point()?;
            let vn = NeighborhoodVN::new(self.neighborhood_n)?;
            if !vn.contains(&point) {
                return Err(Error::InvalidInput(format!(
                    "witness {point} lies outside V_{}",
                    self.neighborhood_n
                )));
            }
            let s = PrimeSet::from_primes(
                self.s_finite
                    .iter()
                    .map(|p| parse_biguint(p))
                    .collect::<Result<Vec<_>>>()?,
                true,
            )?;
            let parsed: Vec<BinaryForm> = self
                .forms
                .iter()
                .map(|f| forms::parse_form(f))
                .collect::<Result<_>>()?;
            if parsed.len() != self.values.len() || parsed.len() != self.stripped.len() {
                return Err(Error::InvalidInput("value lists have wrong length".into()));
            }
            for ((form, v), st) in parsed.iter().zip(&self.values).zip(&self.stripped) {
                let v = parse_bigint(v)?;
                let st = parse_bigint(st)?;
                if form.eval(&point) != v {
                    return Err(Error::InvalidInput(format!(
                        "value of {form} at {point} does not recompute"
                    )));
                }
                // stripped divides v with an S-unit quotient, and is a
                // prime or unit: post-hoc verification by factorization
                if st.is_zero() || !(&v % &st).is_zero() {
                    return Err(Error::InvalidInput("stripped value does not divide".into()));
                }
                let quotient = &v / &st;
                for (p, _) in arith::factorize(&quotient)?.factors() {
                    if !s.contains_finite(p) {
                        return Err(Error::InvalidInput(format!(
                            "stripped quotient contains {p} outside S"
                        )));
                    }
                }
                if !st.magnitude().is_one() && !arith::is_prime(st.magnitude()).is_prime() {
                    return Err(Error::InvalidInput(format!(
                        "stripped value {st} is neither unit nor prime"
                    )));
                }
                for (p, _) in arith::factorize(&st)?.factors() {
                    if s.contains_finite(p) {
                        return Err(Error::InvalidInput(
                            "stripped value still contains a prime of S".into(),
                        ));
                    }
                }
            }
            Ok(())
        };
        if let Err(e) = check() {
            issues.push(e.to_string());
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalBReportJson {
    pub forms: Vec<String>,
    pub s_finite: Vec<String>,
    pub neighborhood_n: u64,
    pub point: PointJson,
    pub product: String,
    pub count: usize,
    pub primes: Vec<String>,
    pub examined: u64,
}

impl EmpiricalBReportJson {
    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let check = || -> Result<()> {
            let point = self.point.to_point()?;
            let vn = NeighborhoodVN::new(self.neighborhood_n)?;
            if !vn.contains(&point) {
                return Err(Error::InvalidInput(format!(
                    "witness {point} lies outside V_{}",
                    self.neighborhood_n
                )));
            }
            let parsed: Vec<BinaryForm> = self
                .forms
                .iter()
                .map(|f| forms::parse_form(f))
                .collect::<Result<_>>()?;
            let mut product = BigInt::one();
            for f in &parsed {
                product *= f.eval(&point);
            }
            if product != parse_bigint(&self.product)? {
                return Err(Error::InvalidInput("product does not recompute".into()));
            }
            let s = PrimeSet::from_primes(
                self.s_finite
                    .iter()
                    .map(|p| parse_biguint(p))
                    .collect::<Result<Vec<_>>>()?,
                true,
            )?;
            let primes = arith::factorize(&product)?.prms(&s);
            if primes.count() != self.count {
                return Err(Error::InvalidInput(format!(
                    "count recomputes to {} != stored {}",
                    primes.count(),
                    self.count
                )));
            }
            let stored: Vec<BigUint> = self
                .primes
                .iter()
                .map(|p| parse_biguint(p))
                .collect::<Result<_>>()?;
            let recomputed: Vec<BigUint> = primes.finite().iter().cloned().collect();
            if stored != recomputed {
                return Err(Error::InvalidInput("prime list does not recompute".into()));
            }
            Ok(())
        };
        if let Err(e) = check() {
            issues.push(e.to_string());
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalRamJson {
    pub m: u32,
    pub samples: u32,
    pub seed: u64,
    pub finite: Vec<String>,
    pub includes_infinity: bool,
}

impl UniversalRamJson {
    pub fn verify(&self) -> Vec<String> {
        match specfield::universal_ram_upper(self.m, self.samples, self.seed) {
            Ok(set) => {
                let finite: Vec<String> =
                    set.finite().iter().map(|p| p.to_str_radix(10)).collect();
                let mut issues = Vec::new();
                if finite != self.finite {
                    issues.push("finite prime set does not recompute".into());
                }
                if set.includes_infinity() != self.includes_infinity {
                    issues.push("infinity flag does not recompute".into());
                }
                issues
            }
            Err(e) => vec![e.to_string()],
        }
    }
}

/// The result payload of one CLI run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Field(FieldReportJson),
    Tower(TowerReportJson),
    Ep(EpReportJson),
    Rigid(RigidReportJson),
    ProductTuple(ProductTupleReportJson),
    RigidBound(RigidBoundJson),
    BetaBound(BetaBoundJson),
    Gtz(GtzReportJson),
    EmpiricalB(EmpiricalBReportJson),
    UniversalRam(UniversalRamJson),
}

impl Payload {
    /// Re-checks all inline certificates of the payload; an empty list
    /// means everything verified.
    pub fn verify(&self) -> Vec<String> {
        match self {
            Payload::Field(x) => x.verify(),
            Payload::Tower(x) => x.verify(),
            Payload::Ep(x) => x.verify(),
            Payload::Rigid(x) => x.verify(),
            Payload::ProductTuple(x) => x.verify(),
            Payload::RigidBound(x) => x.verify(),
            Payload::BetaBound(x) => x.verify(),
            Payload::Gtz(x) => x.verify(),
            Payload::EmpiricalB(x) => x.verify(),
            Payload::UniversalRam(x) => x.verify(),
        }
    }
}

/// The envelope of every emitted JSON document. With identical command,
/// inputs and seed, everything except `wall_ms` is byte-identical across
/// runs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: serde_json::Value,
    pub seed: u64,
    pub version: String,
    pub wall_ms: u64,
    pub result: Payload,
}

impl RunReport {
    pub fn new(command: &str, inputs: serde_json::Value, seed: u64, result: Payload) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_ms: 0,
            result,
        }
    }

    pub fn verify(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.schema != SCHEMA_VERSION {
            issues.push(format!(
                "schema version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema
            ));
            return issues;
        }
        issues.extend(self.result.verify());
        issues
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfield::FieldBudgets;
    use crate::tower::TowerBudgets;

    #[test]
    fn field_report_roundtrip_and_verify() {
        let point = ProjPoint::from_i64(1, 1).unwrap();
        let field = specfield::ram_report(4, &point, &FieldBudgets::default()).unwrap();
        let json = FieldReportJson::from(&field);
        assert!(json.verify().is_empty(), "{:?}", json.verify());
        let text = serde_json::to_string(&json).unwrap();
        let back: FieldReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        assert!(back.verify().is_empty());
    }

    #[test]
    fn field_report_detects_tampering() {
        let point = ProjPoint::from_i64(1, 1).unwrap();
        let field = specfield::ram_report(4, &point, &FieldBudgets::default()).unwrap();
        let mut json = FieldReportJson::from(&field);
        json.real_roots = 3;
        assert!(!json.verify().is_empty());

        let mut json = FieldReportJson::from(&field);
        json.ram[0].status = "unramified".into();
        assert!(!json.verify().is_empty());

        // 2 has factor type {4}, not {1, 3}
        let mut json = FieldReportJson::from(&field);
        json.galois_cert.as_mut().unwrap().p_cycle = 2;
        assert!(!json.verify().is_empty());
    }

    #[test]
    fn tower_report_verifies() {
        let report = tower::realize_smn(4, 2, &TowerBudgets::default()).unwrap();
        let json = TowerReportJson::from(&report);
        let issues = json.verify();
        assert!(issues.is_empty(), "{issues:?}");
        // tamper with the union
        let mut bad = json.clone();
        bad.total = 1;
        assert!(!bad.verify().is_empty());
    }

    #[test]
    fn payload_envelope_roundtrip() {
        let payload = Payload::BetaBound(BetaBoundJson { degrees: vec![1, 1, 1], bound: 10 });
        let report = RunReport::new("search beta-bound", serde_json::json!({}), 0, payload);
        assert!(report.verify().is_empty());
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert!(back.verify().is_empty());
        let bad = RunReport {
            result: Payload::BetaBound(BetaBoundJson { degrees: vec![1, 1, 1], bound: 9 }),
            ..back
        };
        assert!(!bad.verify().is_empty());
    }
}
