//! Finite permutation groups at desk scale, materialized as full element
//! sets: closure, conjugacy classes, normal-subgroup enumeration, derived
//! and Frattini-type subgroups, abelianization invariants, the E(p)
//! condition, and the product-subgroup criterion.
//!
//! Composition is left-to-right throughout: (f * g)(x) = g(f(x)), and a
//! tuple product g_1 ... g_k applies g_1 first. Conjugation g^h means
//! h^(-1) g h in that order.

mod catalog;
pub mod rigid;

pub use catalog::{catalog_group, catalog_names};

use crate::arith;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

/// Order cap for materialized groups.
pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// A permutation of {1..n}, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u8).collect() }
    }

    /// From 0-based images; must be a bijection on 0..degree.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n > 255 {
            return Err(Error::InvalidInput("degree above 255 not supported".into()));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Self { images })
    }

    /// Parses disjoint (or not) cycles in 1-based notation, e.g.
    /// "(1 2)(3 4)"; commas are also accepted as separators. "()" and "e"
    /// denote the identity. Cycles are applied left to right.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        let mut perm = Perm::identity(degree);
        if text.is_empty() || text == "e" || text == "()" || text == "id" {
            return Ok(perm);
        }
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| {
                Error::InvalidInput(format!("expected '(' in cycle notation: {text}"))
            })?;
            let close = rest[open..].find(')').ok_or_else(|| {
                Error::InvalidInput(format!("unbalanced cycle in: {text}"))
            })? + open;
            let body = &rest[open + 1..close];
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| {
                        Error::InvalidInput(format!("bad point '{s}' in cycle {text}"))
                    })
                })
                .collect::<Result<_>>()?;
            for &pt in &points {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidInput(format!(
                        "point {pt} out of range 1..={degree}"
                    )));
                }
            }
            let mut cycle = Perm::identity(degree);
            for w in 0..points.len() {
                let from = points[w] - 1;
                let to = points[(w + 1) % points.len()] - 1;
                cycle.images[from] = to as u8;
            }
            Perm::from_images(cycle.images.clone())?; // validate disjointness result
            perm = perm.then(&cycle);
            rest = &rest[close + 1..];
            rest = rest.trim_start();
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u8 == v)
    }

    /// Left-to-right composition: (self.then(g))(x) = g(self(x)).
    pub fn then(&self, g: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), g.degree());
        Perm {
            images: self.images.iter().map(|&v| g.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Perm { images }
    }

    /// h^(-1) self h.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        h.inverse().then(self).then(h)
    }

    pub fn pow(&self, n: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            n >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1u64, |acc, l| acc.lcm(&l))
    }

    /// Cycle type including fixed points, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(|c| c.len()).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.extend(std::iter::repeat(1).take(self.degree() - moved));
        t.sort_unstable();
        t
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Incremental subgroup closure: spans the subgroup generated by the
/// candidates, recording which of them were actually needed as generators.
fn span<'a, I>(degree: usize, candidates: I, cap: usize) -> Result<(Vec<Perm>, Vec<Perm>)>
where
    I: IntoIterator<Item = &'a Perm>,
{
    let mut elements: BTreeSet<Perm> = BTreeSet::new();
    elements.insert(Perm::identity(degree));
    let mut gens: Vec<Perm> = Vec::new();
    for cand in candidates {
        if elements.contains(cand) {
            continue;
        }
        gens.push(cand.clone());
        // rebuild closure with the enlarged generating set
        let mut set: BTreeSet<Perm> = BTreeSet::new();
        let id = Perm::identity(degree);
        let mut queue = vec![id.clone()];
        set.insert(id);
        while let Some(x) = queue.pop() {
            for g in &gens {
                let y = x.then(g);
                if set.insert(y.clone()) {
                    if set.len() > cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    queue.push(y);
                }
            }
        }
        elements = set;
    }
    Ok((elements.into_iter().collect(), gens))
}

/// A finite permutation group materialized as its full element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>, // sorted
}

/// Conjugacy classes with an element -> class index lookup.
pub struct ClassTable {
    pub classes: Vec<Vec<Perm>>,
    index: HashMap<Perm, usize>,
}

impl ClassTable {
    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }
}

impl PermGroup {
    /// Closure of a generating set, with the default order cap.
    pub fn close(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::close_with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn close_with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidInput("generator degree mismatch".into()));
            }
        }
        let (elements, _) = span(degree, generators.iter(), cap)?;
        Ok(Self { degree, generators, elements })
    }

    /// Wraps an already-closed element set (internal use).
    fn from_sorted_elements(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { degree, generators, elements }
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            elements: vec![Perm::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elements.iter().map(|g| g.order()).fold(1u64, |a, b| a.lcm(&b))
    }

    pub fn center(&self) -> Vec<Perm> {
        self.elements
            .iter()
            .filter(|z| self.generators.iter().all(|g| z.then(g) == g.then(z)))
            .cloned()
            .collect()
    }

    pub fn conjugacy_classes(&self) -> ClassTable {
        let mut index: HashMap<Perm, usize> = HashMap::new();
        let mut classes: Vec<Vec<Perm>> = Vec::new();
        for e in &self.elements {
            if index.contains_key(e) {
                continue;
            }
            let id = classes.len();
            let mut orbit: BTreeSet<Perm> = BTreeSet::new();
            let mut queue = vec![e.clone()];
            orbit.insert(e.clone());
            while let Some(x) = queue.pop() {
                for g in &self.generators {
                    let y = x.conjugate_by(g);
                    if orbit.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
            for x in &orbit {
                index.insert(x.clone(), id);
            }
            classes.push(orbit.into_iter().collect());
        }
        ClassTable { classes, index }
    }

    /// Subgroup spanned by the given elements (must lie in the group).
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::InvalidInput("subgroup generator outside group".into()));
            }
        }
        let (elements, eff) = span(self.degree, gens.iter(), self.order())?;
        Ok(PermGroup::from_sorted_elements(self.degree, eff, elements))
    }

    /// Smallest normal subgroup of self containing the seeds: the span of
    /// the full conjugacy classes of the seeds.
    pub fn normal_closure(&self, seeds: &[Perm]) -> Result<PermGroup> {
        let mut classes: Vec<Perm> = Vec::new();
        for s in seeds {
            let mut orbit: BTreeSet<Perm> = BTreeSet::new();
            let mut queue = vec![s.clone()];
            orbit.insert(s.clone());
            while let Some(x) = queue.pop() {
                for g in &self.generators {
                    let y = x.conjugate_by(g);
                    if orbit.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
            classes.extend(orbit);
        }
        let (elements, eff) = span(self.degree, classes.iter(), self.order())?;
        Ok(PermGroup::from_sorted_elements(self.degree, eff, elements))
    }

    /// Commutator subgroup [G, G]: normal closure of the generator
    /// commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut seeds = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// G^p [G, G]: normal closure of generator p-th powers and commutators.
    /// The quotient by it is the largest elementary abelian p-quotient.
    pub fn power_commutator(&self, p: u64) -> Result<PermGroup> {
        let mut seeds = Vec::new();
        for a in &self.generators {
            let ap = a.pow(p);
            if !ap.is_identity() {
                seeds.push(ap);
            }
            for b in &self.generators {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// Invariant factors of G/[G,G] in ascending divisibility order, and
    /// d(G^ab) with the convention d(trivial) = 1.
    pub fn abelianization(&self) -> Result<(Vec<u64>, usize)> {
        let derived = self.derived_subgroup()?;
        let ab_order = (self.order() / derived.order()) as u64;
        if ab_order == 1 {
            return Ok((Vec::new(), 1));
        }
        let in_derived = |g: &Perm| derived.contains(g);
        let fact = arith::factorize(&BigInt::from(ab_order))?;
        // per-prime partition lambda of the abelian p-part, reconstructed
        // from the counts of cosets killed by p^k
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for (p, entry) in fact.factors() {
            let p_u64: u64 = p.try_into().map_err(|_| {
                Error::Internal("abelianization order exceeds u64".into())
            })?;
            let e = entry.exponent;
            let mut s_prev = 0u32;
            let mut m_counts: Vec<u32> = Vec::new(); // m_k = #{parts >= k}
            for k in 1..=e {
                let pk = p_u64.pow(k);
                let killed = self
                    .elements
                    .iter()
                    .filter(|x| in_derived(&x.pow(pk)))
                    .count();
                debug_assert_eq!(killed % derived.order(), 0);
                let count_k = (killed / derived.order()) as u64;
                // count_k = p^(sum_i min(lambda_i, k))
                let mut s_k = 0u32;
                let mut c = count_k;
                while c > 1 {
                    debug_assert_eq!(c % p_u64, 0);
                    c /= p_u64;
                    s_k += 1;
                }
                m_counts.push(s_k - s_prev);
                s_prev = s_k;
            }
            // lambda_j = #{k : m_k >= j}
            let max_parts = m_counts.first().copied().unwrap_or(0);
            let lambda: Vec<u32> = (1..=max_parts)
                .map(|j| m_counts.iter().filter(|&&mk| mk >= j).count() as u32)
                .collect();
            per_prime.push((p_u64, lambda));
        }
        let num_factors = per_prime.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
        // factor j (0 = largest) multiplies p^lambda_j across primes
        let mut factors: Vec<u64> = (0..num_factors)
            .map(|j| {
                per_prime
                    .iter()
                    .map(|(p, l)| l.get(j).map_or(1u64, |&e| p.pow(e)))
                    .product()
            })
            .collect();
        factors.reverse(); // ascending divisibility
        let d = factors.len();
        Ok((factors, d))
    }

    /// d(G^ab) with d(trivial) = 1.
    pub fn d_ab(&self) -> Result<usize> {
        Ok(self.abelianization()?.1)
    }

    /// Every normal subgroup, enumerated as spans of unions of conjugacy
    /// classes: class closures first, then joins until the lattice is
    /// stable. Exact within the order cap.
    pub fn normal_subgroups(&self) -> Result<Vec<PermGroup>> {
        let table = self.conjugacy_classes();
        let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
        let mut groups: Vec<PermGroup> = Vec::new();
        let push = |g: PermGroup, groups: &mut Vec<PermGroup>, seen: &mut BTreeSet<Vec<Perm>>| {
            if seen.insert(g.elements.clone()) {
                groups.push(g);
            }
        };
        push(PermGroup::trivial(self.degree), &mut groups, &mut seen);
        for class in &table.classes {
            let (elements, eff) = span(self.degree, class.iter(), self.order())?;
            push(
                PermGroup::from_sorted_elements(self.degree, eff, elements),
                &mut groups,
                &mut seen,
            );
        }
        // close under pairwise joins
        loop {
            let mut added = false;
            let snapshot: Vec<Vec<Perm>> = groups.iter().map(|g| g.elements.clone()).collect();
            for i in 0..snapshot.len() {
                for j in i + 1..snapshot.len() {
                    let (elements, eff) = span(
                        self.degree,
                        snapshot[i].iter().chain(snapshot[j].iter()),
                        self.order(),
                    )?;
                    if !seen.contains(&elements) {
                        seen.insert(elements.clone());
                        groups.push(PermGroup::from_sorted_elements(self.degree, eff, elements));
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        Ok(groups)
    }

    /// Indices [G : N] over the maximal proper normal subgroups N, as a
    /// sorted multiset; these are the orders of the simple quotients.
    pub fn maximal_normal_indices(&self) -> Result<Vec<u64>> {
        let normals = self.normal_subgroups()?;
        let proper: Vec<&PermGroup> = normals.iter().filter(|n| n.order() < self.order()).collect();
        let mut indices = Vec::new();
        for n in &proper {
            let is_maximal = proper.iter().all(|m| {
                m.order() <= n.order()
                    || !n.elements.iter().all(|x| m.contains(x))
            });
            if is_maximal {
                indices.push((self.order() / n.order()) as u64);
            }
        }
        indices.sort_unstable();
        Ok(indices)
    }

    /// The E(p) condition: every simple quotient of G has order p (all
    /// maximal normal subgroups have index p), while the commutator
    /// subgroup has no quotient of order p.
    pub fn is_ep(&self, p: u64) -> Result<bool> {
        if self.is_trivial() {
            return Err(Error::InvalidInput("E(p) is about nontrivial groups".into()));
        }
        if !arith::is_prime(&p.into()).is_prime() {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let indices = self.maximal_normal_indices()?;
        if indices.is_empty() || indices.iter().any(|&i| i != p) {
            return Ok(false);
        }
        let derived = self.derived_subgroup()?;
        if derived.is_trivial() {
            return Ok(true);
        }
        let phi = derived.power_commutator(p)?;
        Ok(phi.order() == derived.order())
    }

    /// Direct product acting on the disjoint union of the two domains.
    pub fn direct_product(&self, other: &PermGroup) -> Result<PermGroup> {
        let order = self
            .order()
            .checked_mul(other.order())
            .filter(|&o| o <= DEFAULT_ORDER_CAP)
            .ok_or(Error::OrderCapExceeded { cap: DEFAULT_ORDER_CAP })?;
        let degree = self.degree + other.degree;
        if degree > 255 {
            return Err(Error::InvalidInput("product degree above 255".into()));
        }
        let mut generators = Vec::new();
        for g in &self.generators {
            generators.push(inject_left(g, degree));
        }
        for g in &other.generators {
            generators.push(inject_right(g, self.degree, degree));
        }
        let mut elements = Vec::with_capacity(order);
        for a in &self.elements {
            for b in &other.elements {
                elements.push(combine(a, b));
            }
        }
        elements.sort();
        Ok(PermGroup::from_sorted_elements(degree, generators, elements))
    }
}

/// Embeds a permutation as acting on the first block of a larger domain.
pub fn inject_left(g: &Perm, total_degree: usize) -> Perm {
    let mut images: Vec<u8> = (0..total_degree as u8).collect();
    for x in 0..g.degree() {
        images[x] = g.apply(x) as u8;
    }
    Perm::from_images(images).expect("injection preserves bijectivity")
}

/// Embeds a permutation as acting on the block starting at `offset`.
pub fn inject_right(g: &Perm, offset: usize, total_degree: usize) -> Perm {
    let mut images: Vec<u8> = (0..total_degree as u8).collect();
    for x in 0..g.degree() {
        images[offset + x] = (offset + g.apply(x)) as u8;
    }
    Perm::from_images(images).expect("injection preserves bijectivity")
}

/// (a, b) acting blockwise.
pub fn combine(a: &Perm, b: &Perm) -> Perm {
    let na = a.degree();
    let mut images = Vec::with_capacity(na + b.degree());
    for x in 0..na {
        images.push(a.apply(x) as u8);
    }
    for x in 0..b.degree() {
        images.push((na + b.apply(x)) as u8);
    }
    Perm::from_images(images).expect("block action is a permutation")
}

/// Restriction of a block permutation to positions [start, start+len).
pub fn restrict(g: &Perm, start: usize, len: usize) -> Result<Perm> {
    let mut images = Vec::with_capacity(len);
    for x in start..start + len {
        let y = g.apply(x);
        if y < start || y >= start + len {
            return Err(Error::InvalidInput("permutation does not preserve the block".into()));
        }
        images.push((y - start) as u8);
    }
    Perm::from_images(images)
}

/// Outcome of the product-subgroup check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductLemmaOutcome {
    /// The hypotheses hold and H is the full direct product.
    Equal,
    /// Some projection or the Frattini-quotient image is not surjective.
    HypothesesFail,
}

/// For E(p) groups G_1, ..., G_n and a subgroup H of the direct product
/// given by generators: checks that every coordinate projection of H is
/// surjective and that H surjects onto the product of the G_i / G_i^p[G_i,G_i];
/// when both hold, verifies |H| = prod |G_i|. A hypothesis-satisfying H
/// of smaller order would contradict the underlying group theory and is
/// reported as an internal error, not a result.
pub fn product_lemma_check(
    factors: &[&PermGroup],
    p: u64,
    h_gens: &[Perm],
) -> Result<ProductLemmaOutcome> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("no factors".into()));
    }
    for g in factors {
        if !g.is_ep(p)? {
            return Err(Error::InvalidInput("all factors must satisfy E(p)".into()));
        }
    }
    let total_degree: usize = factors.iter().map(|g| g.degree()).sum();
    let full_order: usize = factors.iter().map(|g| g.order()).product();
    if full_order > DEFAULT_ORDER_CAP {
        return Err(Error::OrderCapExceeded { cap: DEFAULT_ORDER_CAP });
    }
    for h in h_gens {
        if h.degree() != total_degree {
            return Err(Error::InvalidInput("H generator degree mismatch".into()));
        }
        let mut start = 0;
        for g in factors {
            let block = restrict(h, start, g.degree())?;
            if !g.contains(&block) {
                return Err(Error::InvalidInput(
                    "H generator leaves the direct product".into(),
                ));
            }
            start += g.degree();
        }
    }
    let (h_elements, h_eff) = span(total_degree, h_gens.iter(), full_order)?;

    // coordinate projections surjective?
    let mut start = 0;
    for g in factors {
        let mut image: HashSet<Perm> = HashSet::new();
        for h in &h_elements {
            image.insert(restrict(h, start, g.degree())?);
        }
        if image.len() != g.order() {
            return Ok(ProductLemmaOutcome::HypothesesFail);
        }
        start += g.degree();
    }

    // image under the Frattini-type quotient surjective?
    // equivalently: H * prod Phi(G_i) is the whole product
    let mut phi_gens: Vec<Perm> = Vec::new();
    let mut start = 0;
    for g in factors {
        let phi = g.power_commutator(p)?;
        for x in phi.generators() {
            phi_gens.push(inject_right(x, start, total_degree));
        }
        // power_commutator of a trivial-generator subgroup may have no
        // generators even when nontrivial; fall back to elements
        if phi.generators().is_empty() && !phi.is_trivial() {
            for x in phi.elements() {
                phi_gens.push(inject_right(x, start, total_degree));
            }
        }
        start += g.degree();
    }
    let (hphi, _) = span(total_degree, h_eff.iter().chain(phi_gens.iter()), full_order)?;
    if hphi.len() != full_order {
        return Ok(ProductLemmaOutcome::HypothesesFail);
    }

    if h_elements.len() == full_order {
        Ok(ProductLemmaOutcome::Equal)
    } else {
        Err(Error::Internal(format!(
            "product-subgroup criterion violated: |H| = {} < {}",
            h_elements.len(),
            full_order
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> PermGroup {
        catalog_group(&format!("S{n}")).unwrap()
    }

    fn perm(text: &str, degree: usize) -> Perm {
        Perm::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn parse_and_compose() {
        let t = perm("(1 2)", 3);
        let c = perm("(1 2 3)", 3);
        // left-to-right: (1 2) then (1 2 3) sends 1 -> 2 -> 3
        assert_eq!(t.then(&c).apply(0), 2);
        assert_eq!(perm("(1 2)(1 2)", 3), Perm::identity(3));
        assert_eq!(c.order(), 3);
        assert_eq!(c.pow(3), Perm::identity(3));
        assert_eq!(format!("{}", perm("(1 3) (2 4)", 4)), "(1 3)(2 4)");
    }

    #[test]
    fn closure_examples() {
        // {(12), (123)} generate S_3
        let g = PermGroup::close(3, vec![perm("(1 2)", 3), perm("(1 2 3)", 3)]).unwrap();
        assert_eq!(g.order(), 6);
        // empty generating set: trivial group
        let t = PermGroup::close(3, vec![]).unwrap();
        assert_eq!(t.order(), 1);
        // Klein group
        let v = PermGroup::close(4, vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)]).unwrap();
        assert_eq!(v.order(), 4);
    }

    #[test]
    fn cap_respected() {
        let r = PermGroup::close_with_cap(5, vec![perm("(1 2)", 5), perm("(1 2 3 4 5)", 5)], 50);
        assert!(matches!(r, Err(Error::OrderCapExceeded { cap: 50 })));
    }

    #[test]
    fn derived_and_power_commutator() {
        let s3 = s(3);
        let d = s3.derived_subgroup().unwrap();
        assert_eq!(d.order(), 3); // A_3
        let s4 = s(4);
        let pc = s4.power_commutator(2).unwrap();
        assert_eq!(pc.order(), 12); // A_4
        let v = PermGroup::close(4, vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)]).unwrap();
        assert_eq!(v.derived_subgroup().unwrap().order(), 1);
    }

    #[test]
    fn abelianization_examples() {
        let (f, d) = s(4).abelianization().unwrap();
        assert_eq!(f, vec![2]);
        assert_eq!(d, 1);
        let v = PermGroup::close(4, vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)]).unwrap();
        let (f, d) = v.abelianization().unwrap();
        assert_eq!(f, vec![2, 2]);
        assert_eq!(d, 2);
        let prod = s(3).direct_product(&s(3)).unwrap();
        let (f, d) = prod.abelianization().unwrap();
        assert_eq!(f, vec![2, 2]);
        assert_eq!(d, 2);
        // trivial group: d = 1 by convention
        let t = PermGroup::trivial(2);
        let (f, d) = t.abelianization().unwrap();
        assert!(f.is_empty());
        assert_eq!(d, 1);
        // Z/6: single invariant factor 6
        let z6 = catalog_group("Z6").unwrap();
        let (f, d) = z6.abelianization().unwrap();
        assert_eq!(f, vec![6]);
        assert_eq!(d, 1);
    }

    #[test]
    fn maximal_normal_examples() {
        assert_eq!(s(4).maximal_normal_indices().unwrap(), vec![2]);
        let prod = s(3).direct_product(&s(3)).unwrap();
        assert_eq!(prod.maximal_normal_indices().unwrap(), vec![2, 2, 2]);
        let z6 = catalog_group("Z6").unwrap();
        assert_eq!(z6.maximal_normal_indices().unwrap(), vec![2, 3]);
    }

    #[test]
    fn ep_examples() {
        assert!(s(4).is_ep(2).unwrap());
        let d4 = catalog_group("D4").unwrap();
        assert!(!d4.is_ep(2).unwrap());
        let a4 = catalog_group("A4").unwrap();
        assert!(a4.is_ep(3).unwrap());
        assert!(!a4.is_ep(2).unwrap());
    }

    #[test]
    fn product_lemma_diagonal_fails() {
        let s3 = s(3);
        let prod_degree = 6;
        // diagonal of S_3 x S_3
        let gens: Vec<Perm> = s3
            .generators()
            .iter()
            .map(|g| {
                let left = inject_left(g, prod_degree);
                let right = inject_right(g, 3, prod_degree);
                left.then(&right)
            })
            .collect();
        let out = product_lemma_check(&[&s3, &s3], 2, &gens).unwrap();
        assert_eq!(out, ProductLemmaOutcome::HypothesesFail);
    }

    #[test]
    fn product_lemma_full_product() {
        let s3 = s(3);
        let d = 6;
        let mut gens: Vec<Perm> = s3.generators().iter().map(|g| inject_left(g, d)).collect();
        gens.extend(s3.generators().iter().map(|g| inject_right(g, 3, d)));
        let out = product_lemma_check(&[&s3, &s3], 2, &gens).unwrap();
        assert_eq!(out, ProductLemmaOutcome::Equal);
    }

    #[test]
    fn product_lemma_mixed_generators() {
        // H = <((12),(13)), ((123), e)>: evaluate hypotheses honestly
        let s3 = s(3);
        let d = 6;
        let g1 = inject_left(&perm("(1 2)", 3), d).then(&inject_right(&perm("(1 3)", 3), 3, d));
        let g2 = inject_left(&perm("(1 2 3)", 3), d);
        let out = product_lemma_check(&[&s3, &s3], 2, &[g1, g2]).unwrap();
        // the sign-pair image is {(+,+), (-,-)}: psi is not surjective
        assert_eq!(out, ProductLemmaOutcome::HypothesesFail);
    }

    #[test]
    fn center_and_exponent() {
        assert_eq!(s(3).center().len(), 1);
        let z6 = catalog_group("Z6").unwrap();
        assert_eq!(z6.center().len(), 6);
        assert_eq!(s(3).exponent(), 6);
    }
}
