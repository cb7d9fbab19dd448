//! Extending an isomorphism `∇: [1, w̄] → P` across one Ore-extension step
//! to `∇̃: [1, w̄a] → P̃`.
//!
//! On the spectrum side a step is described by a [`SpectrumPartition`] of
//! the current poset into `P1` (not δ-stable), `P2` (δ-stable, not
//! containing the image of δ) and `P3` (containing the image of δ).
//! [`ore_step`] builds the next poset `P̃ = P ∪ Pₓ` and the projection
//! `Φ̃`, and [`extend_iso`] transports `∇` across.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bruhat::{Block, BruhatPartition};
use crate::error::{Error, Result};
use crate::poset::{LabeledPoset, PosetMap};

/// `P̃ = P ∪ Pₓ` together with `Φ̃: P̃ → P`. Indices refer to `ptilde`.
#[derive(Clone, Debug)]
pub struct SetupData {
    pub ptilde: LabeledPoset,
    pub p: BTreeSet<usize>,
    pub px: BTreeSet<usize>,
    pub phi_tilde: Vec<usize>,
    /// `Φ̃` is claimed to be idempotent.
    pub projection: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetupReport {
    pub violation: Option<String>,
}

impl SetupReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the clauses on `(P̃, P, Pₓ, Φ̃)` in order and reports the first
/// one that fails.
pub fn validate_setup(s: &SetupData) -> SetupReport {
    SetupReport {
        violation: setup_violation(s),
    }
}

fn setup_violation(s: &SetupData) -> Option<String> {
    let pt = &s.ptilde;
    let n = pt.len();
    let label = |i: usize| pt.label(i).to_string();
    if s.phi_tilde.len() != n {
        return Some(format!("Φ̃ has {} images for {} elements", s.phi_tilde.len(), n));
    }
    if !s.p.is_disjoint(&s.px) {
        return Some("P and Pₓ intersect".into());
    }
    if s.p.len() + s.px.len() != n || s.p.iter().chain(&s.px).any(|&i| i >= n) {
        return Some("P ∪ Pₓ does not cover P̃".into());
    }
    if !pt.is_upper_set(&s.px) {
        return Some("Pₓ is not an upper set of P̃".into());
    }
    let phi = &s.phi_tilde;
    if let Some(x) = (0..n).find(|x| !s.p.contains(&phi[*x])) {
        return Some(format!("Φ̃({}) lies outside P", label(x)));
    }
    for x in 0..n {
        for y in 0..n {
            if pt.leq(x, y) && !pt.leq(phi[x], phi[y]) {
                return Some(format!("Φ̃ is not order-preserving at {} ≤ {}", label(x), label(y)));
            }
        }
    }
    for &x in &s.px {
        for &y in &s.px {
            if x != y && phi[x] == phi[y] {
                return Some(format!("Φ̃ is not injective on Pₓ at {} and {}", label(x), label(y)));
            }
            if pt.leq(phi[x], phi[y]) && !pt.leq(x, y) {
                return Some(format!(
                    "Φ̃ restricted to Pₓ does not reflect order at {} and {}",
                    label(x),
                    label(y)
                ));
            }
        }
    }
    if let Some(&x) = s.px.iter().find(|&&x| !pt.leq(phi[x], x)) {
        return Some(format!("Φ̃({0}) ≰ {0}", label(x)));
    }
    for &q in &s.px {
        for &p in &s.p {
            if pt.leq(p, q) != pt.leq(phi[p], phi[q]) {
                return Some(format!(
                    "{} ≤ {} does not match Φ̃({}) ≤ Φ̃({})",
                    label(p),
                    label(q),
                    label(p),
                    label(q)
                ));
            }
        }
    }
    if s.projection {
        if let Some(x) = (0..n).find(|&x| phi[phi[x]] != phi[x]) {
            return Some(format!("Φ̃ is not idempotent at {}", label(x)));
        }
    }
    None
}

/// The current spectrum poset split into `P1`, `P2`, `P3`, with the
/// partner in `P2` of each element of `P1`.
#[derive(Clone, Debug)]
pub struct SpectrumPartition {
    pub poset: LabeledPoset,
    pub p1: BTreeSet<usize>,
    pub p2: BTreeSet<usize>,
    pub p3: BTreeSet<usize>,
    pub partner: BTreeMap<usize, usize>,
}

impl SpectrumPartition {
    /// Derives partners (the unique element of `P2` covered by each element
    /// of `P1`), honouring explicit overrides, and checks the invariants.
    pub fn new(
        poset: LabeledPoset,
        p1: BTreeSet<usize>,
        p2: BTreeSet<usize>,
        p3: BTreeSet<usize>,
        overrides: &BTreeMap<usize, usize>,
    ) -> Result<Self> {
        let partner = derive_partners(&poset, &p1, &p2, overrides)?;
        let sp = SpectrumPartition {
            poset,
            p1,
            p2,
            p3,
            partner,
        };
        sp.check()?;
        Ok(sp)
    }

    pub fn check(&self) -> Result<()> {
        let n = self.poset.len();
        let all: BTreeSet<usize> = self.p1.iter().chain(&self.p2).chain(&self.p3).copied().collect();
        if all.len() != n || self.p1.len() + self.p2.len() + self.p3.len() != n {
            return Err(Error::Extension("P1, P2, P3 must partition the spectrum".into()));
        }
        for &p in &self.p1 {
            match self.partner.get(&p) {
                Some(&q) if self.p2.contains(&q) && self.poset.covers(q, p) => {}
                Some(&q) => {
                    return Err(Error::Partner {
                        label: self.poset.label(p).into(),
                        reason: format!("`{}` is not an element of P2 covered by it", self.poset.label(q)),
                    })
                }
                None => {
                    return Err(Error::Partner {
                        label: self.poset.label(p).into(),
                        reason: "no partner".into(),
                    })
                }
            }
        }
        Ok(())
    }

    /// `π`: the identity on `P2 ∪ P3`, the partner on `P1`.
    pub fn project(&self, p: usize) -> usize {
        self.partner.get(&p).copied().unwrap_or(p)
    }
}

pub fn derive_partners(
    poset: &LabeledPoset,
    p1: &BTreeSet<usize>,
    p2: &BTreeSet<usize>,
    overrides: &BTreeMap<usize, usize>,
) -> Result<BTreeMap<usize, usize>> {
    let mut partner = BTreeMap::new();
    for &p in p1 {
        if let Some(&q) = overrides.get(&p) {
            partner.insert(p, q);
            continue;
        }
        let below: Vec<usize> = poset.lower_covers(p).into_iter().filter(|q| p2.contains(q)).collect();
        match below.as_slice() {
            [q] => {
                partner.insert(p, *q);
            }
            [] => {
                return Err(Error::Partner {
                    label: poset.label(p).into(),
                    reason: "covers no element of P2".into(),
                })
            }
            many => {
                let names: Vec<&str> = many.iter().map(|&q| poset.label(q)).collect();
                return Err(Error::Partner {
                    label: poset.label(p).into(),
                    reason: format!("covers several elements of P2: {}", names.join(", ")),
                });
            }
        }
    }
    Ok(partner)
}

/// Builds `P̃` from a classified spectrum: a copy of `P` (indices kept) and
/// a copy `qₓ` of every `q ∈ P3` (appended in index order). Order:
/// inherited within each copy, `p ≤ qₓ` iff `π(p) ≤ q`, never `qₓ ≤ p`.
///
/// New elements are labeled `<label of q>+<fresh>`. Returns the setup and
/// the embedding `ι: P → P̃`.
pub fn ore_step(sp: &SpectrumPartition, fresh: &str) -> Result<(SetupData, PosetMap)> {
    sp.check()?;
    let p = &sp.poset;
    let n = p.len();
    let new: Vec<usize> = sp.p3.iter().copied().collect();
    let total = n + new.len();
    let origin = |i: usize| if i < n { i } else { new[i - n] };

    let mut labels: Vec<String> = p.labels().to_vec();
    labels.extend(new.iter().map(|&q| format!("{}+{}", p.label(q), fresh)));
    let ptilde = LabeledPoset::from_fn(labels, |i, j| match (i < n, j < n) {
        (true, true) => p.leq(i, j),
        (false, false) => p.leq(origin(i), origin(j)),
        (true, false) => p.leq(sp.project(i), origin(j)),
        (false, true) => false,
    })?;
    let ptilde = match p.rank() {
        Some(rank) => {
            let r: Vec<i64> = (0..total)
                .map(|i| if i < n { rank[i] } else { rank[origin(i)] + 1 })
                .collect();
            let plain = ptilde.clone();
            ptilde.with_rank(r).unwrap_or(plain)
        }
        None => ptilde,
    };
    let phi_tilde = (0..total)
        .map(|i| if i < n { sp.project(i) } else { origin(i) })
        .collect();
    let setup = SetupData {
        p: (0..n).collect(),
        px: (n..total).collect(),
        phi_tilde,
        projection: true,
        ptilde,
    };
    let iota = PosetMap::new(p, &setup.ptilde, (0..n).collect())?;
    Ok((setup, iota))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    /// `∇(W3) = Φ̃(Pₓ)`
    pub a: Option<String>,
    /// `Φ̃∇ = ∇Φ` on `W1 ∪ W2` (on all of `[1, w̄]` unless `Φ̃` is a projection)
    pub b: Option<String>,
}

impl HypothesisCheck {
    pub fn passed(&self) -> bool {
        self.a.is_none() && self.b.is_none()
    }
}

/// Evaluates both hypotheses for `∇: [1, w̄] → P̃` (valued in `P`).
pub fn check_hypotheses(nabla: &[usize], part: &BruhatPartition, s: &SetupData) -> HypothesisCheck {
    let inner = part.inner();
    let w3 = part.inner_block(Block::W3);
    let image_w3: BTreeSet<usize> = w3.iter().map(|&w| nabla[w]).collect();
    let image_px: BTreeSet<usize> = s.px.iter().map(|&p| s.phi_tilde[p]).collect();
    let a = if image_w3 == image_px {
        None
    } else {
        let culprit = w3
            .iter()
            .find(|&&w| !image_px.contains(&nabla[w]))
            .map(|&w| inner.element(w).to_string())
            .unwrap_or_else(|| "Φ̃(Pₓ) ⊄ ∇(W3)".to_string());
        Some(culprit)
    };

    let projection = s.projection && (0..s.phi_tilde.len()).all(|x| s.phi_tilde[s.phi_tilde[x]] == s.phi_tilde[x]);
    let domain: BTreeSet<usize> = if projection {
        part.inner_block(Block::W1)
            .union(&part.inner_block(Block::W2))
            .copied()
            .collect()
    } else {
        (0..inner.len()).collect()
    };
    let phi = part.phi();
    let to_inner = part.outer_to_inner();
    let b = domain
        .iter()
        .find(|&&w| {
            let phi_w = to_inner[phi[part.inner_to_outer()[w]]].expect("Φ lands in [1, w̄]");
            s.phi_tilde[nabla[w]] != nabla[phi_w]
        })
        .map(|&w| inner.element(w).to_string());
    HypothesisCheck { a, b }
}

/// Extends `∇` to `∇̃: [1, w̄a] → P̃`:
/// `∇̃(w) = ∇(w)` for `w ≤ w̄`, and `(Φ̃|Pₓ)⁻¹ ∇(wa)` otherwise.
pub fn extend_iso(nabla: &PosetMap, part: &BruhatPartition, s: &SetupData) -> Result<PosetMap> {
    let inner = part.inner();
    let assignment = nabla.assignment();
    if assignment.len() != inner.len() {
        return Err(Error::Precondition("∇ must be defined on [1, w̄]".into()));
    }
    let image: BTreeSet<usize> = assignment.iter().copied().collect();
    let iso_onto_p = image == s.p
        && image.len() == inner.len()
        && (0..inner.len()).all(|x| {
            (0..inner.len()).all(|y| inner.leq(x, y) == s.ptilde.leq(assignment[x], assignment[y]))
        });
    if !iso_onto_p {
        return Err(Error::Precondition("∇ is not an isomorphism [1, w̄] → P".into()));
    }
    let hyp = check_hypotheses(assignment, part, s);
    if let Some(element) = hyp.a {
        return Err(Error::Hypothesis {
            clause: "a: ∇(W3) = Φ̃(Pₓ)".into(),
            element,
        });
    }
    if let Some(element) = hyp.b {
        return Err(Error::Hypothesis {
            clause: "b: Φ̃∇ = ∇Φ".into(),
            element,
        });
    }

    let lift: BTreeMap<usize, usize> = s.px.iter().map(|&p| (s.phi_tilde[p], p)).collect();
    let to_inner = part.outer_to_inner();
    let ma = part.m_a();
    let outer = part.outer();
    let extended: Vec<usize> = (0..outer.len())
        .map(|w| match to_inner[w] {
            Some(i) => assignment[i],
            None => {
                let below = to_inner[ma[w]].expect("wa ∈ W3 for every new word w");
                lift[&assignment[below]]
            }
        })
        .collect();
    let map = PosetMap::new(outer.poset(), &s.ptilde, extended)?;
    if !map.is_isomorphism() {
        return Err(Error::Extension("the extended map is not an isomorphism".into()));
    }
    Ok(map)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    /// `Ψ̃∇̃ = ∇Φ` on `[1, w̄a]`.
    pub commutes: bool,
    pub at_most_two_to_one: bool,
    /// `Ψ̃` is onto the δ-stable primes `P2 ∪ P3`.
    pub onto_stable: bool,
    /// `Ψ̃` sends `Pₓ` bijectively onto `P3`, so the fibers over `P3` are
    /// exactly `{q, qₓ}`.
    pub doubled_over_p3: bool,
    pub failures: Vec<String>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.commutes && self.at_most_two_to_one && self.onto_stable && self.doubled_over_p3
    }
}

/// `Ψ̃ = ι⁻¹ ∘ Φ̃ : P̃ → P`.
pub fn psi_tilde(s: &SetupData, iota: &PosetMap) -> Vec<usize> {
    let back: BTreeMap<usize, usize> = iota.assignment().iter().enumerate().map(|(p, &t)| (t, p)).collect();
    s.phi_tilde
        .iter()
        .map(|t| *back.get(t).expect("Φ̃ lands in ι(P)"))
        .collect()
}

/// Checks `Ψ̃ ∘ ∇̃ = ∇ ∘ Φ` elementwise and the fibers of `Ψ̃`.
pub fn commuting_square(
    nabla: &PosetMap,
    nabla_tilde: &PosetMap,
    part: &BruhatPartition,
    sp: &SpectrumPartition,
    s: &SetupData,
    iota: &PosetMap,
) -> SquareReport {
    let psi = psi_tilde(s, iota);
    let phi = part.phi();
    let to_inner = part.outer_to_inner();
    let outer = part.outer();
    let mut report = projection_fibers(sp, s, iota);
    for w in 0..outer.len() {
        let lhs = psi[nabla_tilde.apply(w)];
        let rhs = nabla.apply(to_inner[phi[w]].expect("Φ lands in [1, w̄]"));
        if lhs != rhs {
            report.commutes = false;
            report.failures.push(format!("Ψ̃∇̃ ≠ ∇Φ at {}", outer.element(w)));
        }
    }
    report
}

/// The fiber checks on `Ψ̃` alone. Also used for steps that leave the
/// Bruhat side unchanged.
pub fn projection_fibers(sp: &SpectrumPartition, s: &SetupData, iota: &PosetMap) -> SquareReport {
    let psi = psi_tilde(s, iota);
    let n = iota.assignment().len();
    let mut failures = Vec::new();
    let mut fiber = vec![0usize; n];
    for &p in &psi {
        fiber[p] += 1;
    }
    let at_most_two_to_one = fiber.iter().all(|&f| f <= 2);
    if !at_most_two_to_one {
        failures.push("Ψ̃ has a fiber with more than two elements".into());
    }
    let image: BTreeSet<usize> = psi.iter().copied().collect();
    let stable: BTreeSet<usize> = sp.p2.union(&sp.p3).copied().collect();
    let onto_stable = image == stable;
    if !onto_stable {
        failures.push("the image of Ψ̃ is not P2 ∪ P3".into());
    }
    let over_px: Vec<usize> = s.px.iter().map(|&x| psi[x]).collect();
    let distinct: BTreeSet<usize> = over_px.iter().copied().collect();
    let doubled_over_p3 = distinct.len() == over_px.len() && distinct == sp.p3 && sp.p3.iter().all(|&p| fiber[p] == 2);
    if !doubled_over_p3 {
        failures.push("Ψ̃ does not double exactly over P3".into());
    }
    SquareReport {
        commutes: true,
        at_most_two_to_one,
        onto_stable,
        doubled_over_p3,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::partition;
    use crate::coxeter::{CoxeterGroup, Word};
    use crate::poset::{is_isomorphic, product};

    fn chain_setup() -> SetupData {
        let ptilde = LabeledPoset::build(vec!["p".into(), "q".into()], &[(0, 1)]).unwrap();
        SetupData {
            ptilde,
            p: BTreeSet::from([0]),
            px: BTreeSet::from([1]),
            phi_tilde: vec![0, 0],
            projection: true,
        }
    }

    #[test]
    fn minimal_setup_passes() {
        assert!(validate_setup(&chain_setup()).passed());
    }

    #[test]
    fn px_must_be_upper() {
        let mut s = chain_setup();
        s.p = BTreeSet::from([1]);
        s.px = BTreeSet::from([0]);
        s.phi_tilde = vec![1, 1];
        let report = validate_setup(&s);
        assert!(report.violation.unwrap().contains("upper set"));
    }

    fn two_chain_partition(p1: &[usize], p2: &[usize], p3: &[usize]) -> SpectrumPartition {
        let poset = LabeledPoset::build(vec!["0".into(), "<x1>".into()], &[(0, 1)])
            .unwrap()
            .with_rank(vec![0, 1])
            .unwrap();
        SpectrumPartition::new(
            poset,
            p1.iter().copied().collect(),
            p2.iter().copied().collect(),
            p3.iter().copied().collect(),
            &BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn ore_step_without_derivation_doubles() {
        let sp = two_chain_partition(&[], &[], &[0, 1]);
        let (setup, _) = ore_step(&sp, "x2").unwrap();
        assert_eq!(setup.ptilde.len(), 4);
        assert!(validate_setup(&setup).passed());
        assert!(is_isomorphic(
            &setup.ptilde,
            &product(&sp.poset, &LabeledPoset::two_chain())
        ));
    }

    #[test]
    fn ore_step_with_unit_derivation_keeps_size() {
        let sp = two_chain_partition(&[1], &[0], &[]);
        assert_eq!(sp.partner[&1], 0);
        let (setup, _) = ore_step(&sp, "y1").unwrap();
        assert_eq!(setup.ptilde.len(), 2);
        assert!(validate_setup(&setup).passed());
        assert!(is_isomorphic(&setup.ptilde, &LabeledPoset::two_chain()));
    }

    #[test]
    fn partner_errors() {
        let poset = LabeledPoset::boolean_lattice(2);
        // {1,2} covers both atoms; with both in P2 the partner is ambiguous.
        let err = SpectrumPartition::new(
            poset,
            BTreeSet::from([3]),
            BTreeSet::from([0, 1, 2]),
            BTreeSet::new(),
            &BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Partner { .. }));
    }

    #[test]
    fn trivial_extension() {
        // [1, e] → {0}, extended along s1 with δ = 0.
        let g = CoxeterGroup::from_name("A2").unwrap();
        let part = partition(&g, &Word::empty(), 1).unwrap();
        let single = LabeledPoset::chain(1);
        let sp = SpectrumPartition::new(
            single.clone(),
            BTreeSet::new(),
            BTreeSet::new(),
            BTreeSet::from([0]),
            &BTreeMap::new(),
        )
        .unwrap();
        let (setup, iota) = ore_step(&sp, "x1").unwrap();
        let nabla = PosetMap::new(part.inner().poset(), &single, vec![0]).unwrap();
        let lifted = PosetMap::new(part.inner().poset(), &setup.ptilde, vec![iota.apply(0)]).unwrap();
        let ext = extend_iso(&lifted, &part, &setup).unwrap();
        assert!(ext.is_isomorphism());
        let sq = commuting_square(&nabla, &ext, &part, &sp, &setup, &iota);
        assert!(sq.passed(), "{sq:?}");
    }

    #[test]
    fn hypothesis_a_failure_is_reported() {
        // δ kills nothing: P3 = ∅ but W3 = [1, w̄], so (a) must fail.
        let g = CoxeterGroup::from_name("A2").unwrap();
        let part = partition(&g, &Word::empty(), 1).unwrap();
        let single = LabeledPoset::chain(1);
        let sp = SpectrumPartition {
            poset: single,
            p1: BTreeSet::new(),
            p2: BTreeSet::from([0]),
            p3: BTreeSet::new(),
            partner: BTreeMap::new(),
        };
        let (setup, iota) = ore_step(&sp, "x1").unwrap();
        let lifted = PosetMap::new(part.inner().poset(), &setup.ptilde, vec![iota.apply(0)]).unwrap();
        assert!(matches!(
            extend_iso(&lifted, &part, &setup),
            Err(Error::Hypothesis { .. })
        ));
    }
}
