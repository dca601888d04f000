//! Rigid and rationally rigid tuples: verification by exhaustive
//! enumeration of semi-conjugate good generating tuples, dilution by
//! identities, and the product construction that assembles a rigid tuple
//! for G1 x G2 from rigid tuples of E(p) factors.

use super::{combine, inject_left, inject_right, Perm, PermGroup};
use crate::arith;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

pub const DEFAULT_RIGIDITY_BUDGET: u64 = 10_000_000;

/// A tuple of group elements; "good" means it generates and multiplies to
/// the identity (left-to-right product).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingTuple {
    group: PermGroup,
    entries: Vec<Perm>,
}

impl GeneratingTuple {
    pub fn new(group: PermGroup, entries: Vec<Perm>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("empty tuple".into()));
        }
        for e in &entries {
            if e.degree() != group.degree() {
                return Err(Error::InvalidInput("tuple entry degree mismatch".into()));
            }
            if !group.contains(e) {
                return Err(Error::InvalidInput("tuple entry outside the group".into()));
            }
        }
        Ok(Self { group, entries })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn entries(&self) -> &[Perm] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Left-to-right product of the entries.
    pub fn product(&self) -> Perm {
        let mut acc = Perm::identity(self.group.degree());
        for e in &self.entries {
            acc = acc.then(e);
        }
        acc
    }

    pub fn generates(&self) -> bool {
        self.group
            .subgroup(&self.entries)
            .map(|h| h.order() == self.group.order())
            .unwrap_or(false)
    }

    /// Good generating tuple: generates and the product is the identity.
    pub fn is_good(&self) -> bool {
        self.product().is_identity() && self.generates()
    }

    /// Inserts the identity at `position` (0..=len); goodness and, for
    /// rational rigid tuples, rigidity are preserved.
    pub fn dilute(&self, position: usize) -> Result<GeneratingTuple> {
        if position > self.entries.len() {
            return Err(Error::InvalidInput("dilute position out of range".into()));
        }
        let mut entries = self.entries.clone();
        entries.insert(position, Perm::identity(self.group.degree()));
        Ok(GeneratingTuple { group: self.group.clone(), entries })
    }
}

/// Result of a rigidity verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityCheck {
    pub rationally_rigid: bool,
    /// Set when not rigid: which condition failed.
    pub failure: Option<String>,
    /// Semi-conjugate good generating tuples found; equals |G| exactly
    /// when the conjugation action is simply transitive on them.
    pub tuple_count: u64,
    /// Enumeration leaves examined.
    pub candidates: u64,
}

fn rigidity_failure(reason: &str) -> RigidityCheck {
    RigidityCheck {
        rationally_rigid: false,
        failure: Some(reason.to_string()),
        tuple_count: 0,
        candidates: 0,
    }
}

/// Verifies rational rigidity by exhaustive enumeration: trivial center,
/// good generating tuple, rational entries, and every semi-conjugate good
/// generating tuple conjugate to the given one. Because the simultaneous
/// conjugation action on good generating tuples is free for a centerless
/// group, the last condition holds iff the enumeration finds exactly |G|
/// tuples. Exceeding the candidate budget is an `Undetermined` error,
/// never a wrong boolean.
pub fn is_rationally_rigid(tuple: &GeneratingTuple, budget: u64) -> Result<RigidityCheck> {
    let group = &tuple.group;
    if group.center().len() > 1 {
        return Ok(rigidity_failure("the group has a nontrivial center"));
    }
    if !tuple.product().is_identity() {
        return Ok(rigidity_failure("the entry product is not the identity"));
    }
    if !tuple.generates() {
        return Ok(rigidity_failure("the entries do not generate the group"));
    }
    // rationality: g^n conjugate to g for every n coprime to |G|, n taken
    // modulo the exponent
    let table = group.conjugacy_classes();
    let order = group.order() as u64;
    let exponent = group.exponent();
    for (i, g) in tuple.entries.iter().enumerate() {
        let class = table.class_of(g).expect("entry lies in the group");
        for n in 2..exponent {
            if n.gcd(&order) != 1 {
                continue;
            }
            if table.class_of(&g.pow(n)) != Some(class) {
                return Ok(rigidity_failure(&format!("entry {i} is not rational (n = {n})")));
            }
        }
    }

    // enumerate semi-conjugate good generating tuples: entries range over
    // the classes of the g_i; the last entry is forced by product = 1
    let k = tuple.entries.len();
    let classes: Vec<&Vec<Perm>> = tuple
        .entries
        .iter()
        .map(|g| &table.classes[table.class_of(g).expect("in group")])
        .collect();
    let last_class = table.class_of(&tuple.entries[k - 1]).expect("in group");

    let mut count = 0u64;
    let mut candidates = 0u64;
    // iterative odometer over classes[0..k-1]
    let mut idx = vec![0usize; k.saturating_sub(1)];
    let mut prefix: Vec<Perm> = Vec::with_capacity(k);
    prefix.push(Perm::identity(group.degree()));
    loop {
        while prefix.len() <= idx.len() {
            let depth = prefix.len() - 1;
            let g = &classes[depth][idx[depth]];
            let next = prefix.last().expect("nonempty").then(g);
            prefix.push(next);
        }
        candidates += 1;
        if candidates > budget {
            return Err(Error::Undetermined(format!(
                "rigidity enumeration exceeded {budget} candidates"
            )));
        }
        // forced last entry: product so far times g_k = 1
        let forced = prefix.last().expect("nonempty").inverse();
        if table.class_of(&forced) == Some(last_class) {
            let mut entries: Vec<Perm> = idx
                .iter()
                .enumerate()
                .map(|(d, &i)| classes[d][i].clone())
                .collect();
            entries.push(forced);
            let generated = group.subgroup(&entries)?;
            if generated.order() == group.order() {
                count += 1;
            }
        }
        // advance odometer
        let mut depth = idx.len();
        loop {
            if depth == 0 {
                // done
                let rigid = count == order;
                let failure = if rigid {
                    None
                } else {
                    Some(format!(
                        "found {count} semi-conjugate good generating tuples, expected {order}"
                    ))
                };
                return Ok(RigidityCheck {
                    rationally_rigid: rigid,
                    failure,
                    tuple_count: count,
                    candidates,
                });
            }
            depth -= 1;
            idx[depth] += 1;
            prefix.truncate(depth + 1);
            if idx[depth] < classes[depth].len() {
                break;
            }
            idx[depth] = 0;
        }
    }
}

/// First good generating tuple with entries in the classes of the given
/// representatives (the last entry forced by the product condition),
/// in deterministic enumeration order.
pub fn find_good_tuple(
    group: &PermGroup,
    class_reps: &[Perm],
    budget: u64,
) -> Result<Option<GeneratingTuple>> {
    if class_reps.len() < 2 {
        return Err(Error::InvalidInput("need at least two classes".into()));
    }
    let table = group.conjugacy_classes();
    let classes: Vec<&Vec<Perm>> = class_reps
        .iter()
        .map(|g| {
            table
                .class_of(g)
                .map(|i| &table.classes[i])
                .ok_or_else(|| Error::InvalidInput("class representative outside group".into()))
        })
        .collect::<Result<_>>()?;
    let last_class = table
        .class_of(&class_reps[class_reps.len() - 1])
        .expect("checked above");

    let k = class_reps.len();
    let mut idx = vec![0usize; k - 1];
    let mut candidates = 0u64;
    'outer: loop {
        candidates += 1;
        if candidates > budget {
            return Err(Error::Undetermined(format!(
                "tuple search exceeded {budget} candidates"
            )));
        }
        let mut product = Perm::identity(group.degree());
        let mut entries = Vec::with_capacity(k);
        for (d, &i) in idx.iter().enumerate() {
            let g = classes[d][i].clone();
            product = product.then(&g);
            entries.push(g);
        }
        let forced = product.inverse();
        if table.class_of(&forced) == Some(last_class) {
            entries.push(forced);
            let tuple = GeneratingTuple::new(group.clone(), entries)?;
            if tuple.is_good() {
                return Ok(Some(tuple));
            }
        }
        let mut depth = k - 1;
        loop {
            if depth == 0 {
                break 'outer;
            }
            depth -= 1;
            idx[depth] += 1;
            if idx[depth] < classes[depth].len() {
                break;
            }
            idx[depth] = 0;
        }
    }
    Ok(None)
}

/// The classical rigid triple for S_m: a transposition, an (m-1)-cycle and
/// the m-cycle forced by the product condition.
pub fn standard_sm_triple(m: usize) -> Result<GeneratingTuple> {
    if m < 3 {
        return Err(Error::InvalidInput("standard triple needs m >= 3".into()));
    }
    let group = super::catalog_group(&format!("S{m}"))
        .or_else(|_| {
            let t = Perm::parse_cycles("(1 2)", m)?;
            let c = Perm::parse_cycles(
                &format!("({})", (1..=m).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")),
                m,
            )?;
            PermGroup::close(m, vec![t, c])
        })?;
    let transposition = Perm::parse_cycles("(1 2)", m)?;
    let cycle_text = format!("({})", (2..=m).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    let long_cycle = Perm::parse_cycles(&cycle_text, m)?;
    let forced = transposition.then(&long_cycle).inverse();
    GeneratingTuple::new(group, vec![transposition, long_cycle, forced])
}

/// Builds a rational rigid s-tuple for G1 x G2 from rational rigid tuples
/// of the E(p) factors, s = d1 + d2 + max(k1 - d1, k2 - d2). The A_i are
/// chosen greedily from the left as entries whose images span the
/// elementary abelian quotient G_i / G_i^p[G_i,G_i]; shorter tuples are
/// padded with identities; the blocks are interleaved so each coordinate
/// projection reads the original tuple diluted by identities (preserving
/// the product-one condition). The output is re-verified rationally rigid.
pub fn build_product_tuple(
    t1: &GeneratingTuple,
    t2: &GeneratingTuple,
    p: u64,
    budget: u64,
) -> Result<GeneratingTuple> {
    let g1 = t1.group.clone();
    let g2 = t2.group.clone();
    if !g1.is_ep(p)? || !g2.is_ep(p)? {
        return Err(Error::InvalidInput("both factors must satisfy E(p)".into()));
    }
    for (name, t) in [("first", t1), ("second", t2)] {
        let check = is_rationally_rigid(t, budget)?;
        if !check.rationally_rigid {
            return Err(Error::InvalidInput(format!(
                "{name} tuple is not rationally rigid: {}",
                check.failure.unwrap_or_default()
            )));
        }
    }

    // A_i: greedy spanning subset modulo Phi(G_i)
    let select = |g: &PermGroup, t: &GeneratingTuple| -> Result<Vec<usize>> {
        let phi = g.power_commutator(p)?;
        let mut span_gens: Vec<Perm> = phi.elements().to_vec();
        let mut current = phi.clone();
        let mut chosen = Vec::new();
        for (i, e) in t.entries.iter().enumerate() {
            if current.order() == g.order() {
                break;
            }
            if current.contains(e) {
                continue;
            }
            chosen.push(i);
            span_gens.push(e.clone());
            current = g.subgroup(&span_gens)?;
        }
        if current.order() != g.order() {
            return Err(Error::Internal(
                "generating tuple does not span the Frattini-type quotient".into(),
            ));
        }
        Ok(chosen)
    };
    let a1 = select(&g1, t1)?;
    let a2 = select(&g2, t2)?;
    let (d1, d2) = (a1.len(), a2.len());
    let r1 = t1.len() - d1;
    let r2 = t2.len() - d2;
    let r = r1.max(r2);
    // pad the shorter tuple with identities appended at the end
    let mut t1 = t1.clone();
    let mut t2 = t2.clone();
    for _ in r1..r {
        t1 = t1.dilute(t1.len())?;
    }
    for _ in r2..r {
        t2 = t2.dilute(t2.len())?;
    }

    let product = g1.direct_product(&g2)?;
    let degree = product.degree();
    let in_a1 = |i: usize| a1.contains(&i);
    let in_a2 = |i: usize| a2.contains(&i);
    let mut entries: Vec<Perm> = Vec::with_capacity(d1 + d2 + r);
    let (mut i1, mut i2) = (0usize, 0usize);
    let (k1, k2) = (t1.len(), t2.len());
    while i1 < k1 || i2 < k2 {
        if i1 < k1 && in_a1(i1) {
            entries.push(inject_left(&t1.entries[i1], degree));
            i1 += 1;
        } else if i2 < k2 && in_a2(i2) {
            entries.push(inject_right(&t2.entries[i2], g1.degree(), degree));
            i2 += 1;
        } else if i1 < k1 && i2 < k2 {
            entries.push(combine(&t1.entries[i1], &t2.entries[i2]));
            i1 += 1;
            i2 += 1;
        } else {
            return Err(Error::Internal("block interleaving ran out of pairs".into()));
        }
    }
    debug_assert_eq!(entries.len(), d1 + d2 + r);

    let tuple = GeneratingTuple::new(product, entries)?;
    let check = is_rationally_rigid(&tuple, budget)?;
    if !check.rationally_rigid {
        return Err(Error::Internal(format!(
            "constructed product tuple failed verification: {}",
            check.failure.unwrap_or_default()
        )));
    }
    Ok(tuple)
}

/// The bound r + #(Prms(|G|) union {p <= r}) on the minimal ramification
/// of a group with a rational rigid r-tuple.
pub fn rigid_bound(r: u32, order: &BigUint) -> Result<u64> {
    if r < 1 {
        return Err(Error::InvalidInput("tuple length must be >= 1".into()));
    }
    if order < &BigUint::from(2u32) {
        return Err(Error::InvalidInput("group order must be >= 2".into()));
    }
    let fact = arith::factorize(&BigInt::from(order.clone()))?;
    let mut primes = fact.prime_set();
    for &p in arith::primes_up_to(r as u64)? {
        primes.insert_known_prime(BigUint::from(p));
    }
    Ok(r as u64 + primes.count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog_group;

    fn s3_triple() -> GeneratingTuple {
        let g = catalog_group("S3").unwrap();
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        let c = a.then(&b).inverse();
        GeneratingTuple::new(g, vec![a, b, c]).unwrap()
    }

    #[test]
    fn s3_triple_is_rationally_rigid() {
        let t = s3_triple();
        assert!(t.is_good());
        let check = is_rationally_rigid(&t, 1_000_000).unwrap();
        assert!(check.rationally_rigid, "{:?}", check.failure);
        assert_eq!(check.tuple_count, 6);
    }

    #[test]
    fn non_generating_tuple_fails() {
        let g = catalog_group("S3").unwrap();
        let a = Perm::parse_cycles("(1 2 3)", 3).unwrap();
        let b = Perm::parse_cycles("(1 3 2)", 3).unwrap();
        let e = Perm::identity(3);
        let t = GeneratingTuple::new(g, vec![a, b, e]).unwrap();
        assert!(t.product().is_identity());
        assert!(!t.is_good());
        let check = is_rationally_rigid(&t, 1_000_000).unwrap();
        assert!(!check.rationally_rigid);
    }

    #[test]
    fn nontrivial_center_fails() {
        let g = catalog_group("Z4").unwrap();
        let a = Perm::parse_cycles("(1 2 3 4)", 4).unwrap();
        let b = a.inverse();
        let t = GeneratingTuple::new(g, vec![a, b]).unwrap();
        let check = is_rationally_rigid(&t, 1_000_000).unwrap();
        assert!(!check.rationally_rigid);
        assert!(check.failure.unwrap().contains("center"));
    }

    #[test]
    fn dilute_preserves_rigidity() {
        let t = s3_triple();
        for pos in [0, 1, 3] {
            let d = t.dilute(pos).unwrap();
            assert_eq!(d.len(), 4);
            assert!(d.is_good());
            let check = is_rationally_rigid(&d, 1_000_000).unwrap();
            assert!(check.rationally_rigid, "position {pos}: {:?}", check.failure);
        }
    }

    #[test]
    fn standard_triples() {
        for m in [4usize, 5] {
            let t = standard_sm_triple(m).unwrap();
            assert!(t.is_good(), "m = {m}");
            let types: Vec<Vec<usize>> =
                t.entries().iter().map(|g| g.cycle_type()).collect();
            assert_eq!(types[0], {
                let mut v = vec![1; m - 2];
                v.push(2);
                v
            });
            assert_eq!(types[1], vec![1, m - 1]);
            assert_eq!(types[2], vec![m]);
        }
    }

    #[test]
    fn product_tuple_s3_squared() {
        let t = s3_triple();
        let prod = build_product_tuple(&t, &t, 2, DEFAULT_RIGIDITY_BUDGET).unwrap();
        // s = d1 + d2 + max(k1-d1, k2-d2) = 1 + 1 + 2 = 4
        assert_eq!(prod.len(), 4);
        assert!(prod.is_good());
        assert_eq!(prod.group().order(), 36);
    }

    #[test]
    fn corollary_sizes_for_iterated_products() {
        // s = (n-1) d + r with d = 1, r = 3: n = 2 -> 4, n = 3 -> 5
        let t = s3_triple();
        let t2 = build_product_tuple(&t, &t, 2, DEFAULT_RIGIDITY_BUDGET).unwrap();
        assert_eq!(t2.len(), 4);
        let t3 = build_product_tuple(&t2, &t, 2, DEFAULT_RIGIDITY_BUDGET).unwrap();
        assert_eq!(t3.len(), 5);
        assert_eq!(t3.group().order(), 216);
    }

    #[test]
    fn trivial_factor_rejected() {
        let t = s3_triple();
        let trivial = PermGroup::trivial(1);
        let id_tuple =
            GeneratingTuple::new(trivial, vec![Perm::identity(1)]).unwrap();
        assert!(build_product_tuple(&t, &id_tuple, 2, 1000).is_err());
    }

    #[test]
    fn rigid_bound_values() {
        assert_eq!(rigid_bound(3, &BigUint::from(120u32)).unwrap(), 6);
        assert_eq!(rigid_bound(3, &BigUint::from(6u32)).unwrap(), 5);
        assert_eq!(rigid_bound(2, &BigUint::from(2u32)).unwrap(), 3);
        assert!(rigid_bound(0, &BigUint::from(6u32)).is_err());
        assert!(rigid_bound(2, &BigUint::from(1u32)).is_err());
    }

    #[test]
    fn find_good_tuple_from_classes() {
        let g = catalog_group("S3").unwrap();
        let reps = vec![
            Perm::parse_cycles("(1 2)", 3).unwrap(),
            Perm::parse_cycles("(1 2)", 3).unwrap(),
            Perm::parse_cycles("(1 2 3)", 3).unwrap(),
        ];
        let t = find_good_tuple(&g, &reps, 100_000).unwrap().expect("tuple exists");
        assert!(t.is_good());
        let check = is_rationally_rigid(&t, 1_000_000).unwrap();
        assert!(check.rationally_rigid);
    }
}
