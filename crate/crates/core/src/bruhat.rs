//! Bruhat order, lower intervals `[1, w]`, and the four-block partition of
//! `[1, w̄a]` for a generator `a` with `w̄ < w̄a`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::coxeter::{CoxeterGroup, GroupElement, Word};
use crate::error::{Error, Result};
use crate::poset::LabeledPoset;

/// `u ≤ v` in Bruhat order.
///
/// Strips the largest right descent `s` of `v` at each step: `u ≤ v` iff
/// `us ≤ vs` when `s` is also a descent of `u`, and iff `u ≤ vs` otherwise.
pub fn bruhat_leq(u: &GroupElement, v: &GroupElement) -> Result<bool> {
    if !u.same_group(v) {
        return Err(Error::GroupMismatch);
    }
    let (mut u, mut v) = (u.clone(), v.clone());
    loop {
        if u.length() > v.length() {
            return Ok(false);
        }
        if u.is_identity() {
            return Ok(true);
        }
        if u == v {
            return Ok(true);
        }
        let s = *v
            .right_descents()
            .last()
            .expect("a non-identity element has a right descent");
        if u.right_descent(s)? {
            u = u.mul_generator(s);
        }
        v = v.mul_generator(s);
    }
}

/// The lower interval `[1, base]` with its Bruhat order.
#[derive(Clone, Debug)]
pub struct BruhatInterval {
    base: GroupElement,
    elements: Vec<GroupElement>,
    index: HashMap<Word, usize>,
    poset: LabeledPoset,
}

impl BruhatInterval {
    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w.canonical_word()).copied()
    }

    pub fn contains(&self, w: &GroupElement) -> bool {
        self.index_of(w).is_some()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(i, j)
    }

    /// Elements labeled by canonical word, ranked by length.
    pub fn poset(&self) -> &LabeledPoset {
        &self.poset
    }

    pub fn rank_profile(&self) -> Vec<usize> {
        self.poset.rank_profile().unwrap_or_default()
    }
}

/// `[1, w]` for a reduced word `w`, generated from the products of all
/// subwords of `w`.
pub fn interval(group: &Arc<CoxeterGroup>, word: &Word) -> Result<BruhatInterval> {
    let base = group.element(word)?;
    if base.length() != word.len() {
        return Err(Error::NotReduced(word.to_string()));
    }
    let mut reached: HashSet<GroupElement> = HashSet::from([group.identity()]);
    for &letter in word.letters() {
        let extended: Vec<GroupElement> = reached.iter().map(|w| w.mul_generator(letter)).collect();
        reached.extend(extended);
    }
    let mut elements: Vec<GroupElement> = reached.into_iter().collect();
    elements.sort();
    interval_from_elements(base, elements)
}

fn interval_from_elements(base: GroupElement, elements: Vec<GroupElement>) -> Result<BruhatInterval> {
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.canonical_word().clone(), i))
        .collect();
    let labels = elements.iter().map(|w| w.canonical_word().to_string()).collect();
    let mut failure = None;
    let poset = LabeledPoset::from_fn(labels, |i, j| match bruhat_leq(&elements[i], &elements[j]) {
        Ok(b) => b,
        Err(e) => {
            failure.get_or_insert(e);
            false
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let poset = poset.with_rank(elements.iter().map(|w| w.length() as i64).collect())?;
    Ok(BruhatInterval {
        base,
        elements,
        index,
        poset,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    W1,
    W2,
    W3,
    W4,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::W1, Block::W2, Block::W3, Block::W4];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self.slot() + 1)
    }
}

/// The blocks `W1..W4` of `[1, w̄a]`, with both intervals at hand.
///
/// Block sets hold indices into the outer interval `[1, w̄a]`.
#[derive(Clone, Debug)]
pub struct BruhatPartition {
    a: usize,
    inner: BruhatInterval,
    outer: BruhatInterval,
    blocks: [BTreeSet<usize>; 4],
    block_of: Vec<Block>,
    inner_to_outer: Vec<usize>,
}

impl BruhatPartition {
    pub fn generator(&self) -> usize {
        self.a
    }

    pub fn wbar(&self) -> &GroupElement {
        self.inner.base()
    }

    /// `[1, w̄]`
    pub fn inner(&self) -> &BruhatInterval {
        &self.inner
    }

    /// `[1, w̄a]`
    pub fn outer(&self) -> &BruhatInterval {
        &self.outer
    }

    pub fn block(&self, b: Block) -> &BTreeSet<usize> {
        &self.blocks[b.slot()]
    }

    pub fn block_of(&self, outer_index: usize) -> Block {
        self.block_of[outer_index]
    }

    /// Block members as indices into `[1, w̄]`; `W4` has none.
    pub fn inner_block(&self, b: Block) -> BTreeSet<usize> {
        let outer_to_inner = self.outer_to_inner();
        self.block(b).iter().filter_map(|&o| outer_to_inner[o]).collect()
    }

    pub fn inner_to_outer(&self) -> &[usize] {
        &self.inner_to_outer
    }

    pub fn outer_to_inner(&self) -> Vec<Option<usize>> {
        let mut map = vec![None; self.outer.len()];
        for (i, &o) in self.inner_to_outer.iter().enumerate() {
            map[o] = Some(i);
        }
        map
    }

    /// Right multiplication by `a`, as a permutation of `[1, w̄a]`.
    pub fn m_a(&self) -> Vec<usize> {
        self.outer
            .elements()
            .iter()
            .map(|w| {
                self.outer
                    .index_of(&w.mul_generator(self.a))
                    .expect("[1, w̄a] is closed under right multiplication by a")
            })
            .collect()
    }

    /// Whether the outer element lies in `W_a` (has `a` as a right descent).
    pub fn has_descent(&self, outer_index: usize) -> bool {
        self.outer.element(outer_index).right_descents().contains(&self.a)
    }

    /// `Φ` on `[1, w̄a]`: `w ↦ w` on `W_a'` and `w ↦ wa` on `W_a`.
    pub fn phi(&self) -> Vec<usize> {
        let ma = self.m_a();
        (0..self.outer.len())
            .map(|w| if self.has_descent(w) { ma[w] } else { w })
            .collect()
    }

    /// Labels of the members of a block, in index order.
    pub fn block_labels(&self, b: Block) -> Vec<String> {
        self.block(b)
            .iter()
            .map(|&i| self.outer.element(i).canonical_word().to_string())
            .collect()
    }

    /// Checks the set-theoretic and order-theoretic facts about the blocks.
    /// Returns one message per violated law.
    pub fn law_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let outer = self.outer.poset();
        let ma = self.m_a();
        let image = |set: &BTreeSet<usize>| -> BTreeSet<usize> { set.iter().map(|&w| ma[w]).collect() };
        let union = |sets: &[Block]| -> BTreeSet<usize> {
            sets.iter().flat_map(|&b| self.block(b).iter().copied()).collect()
        };
        let inner_set: BTreeSet<usize> = self.inner_to_outer.iter().copied().collect();
        let wa: BTreeSet<usize> = (0..self.outer.len()).filter(|&w| self.has_descent(w)).collect();
        let wa_prime: BTreeSet<usize> = (0..self.outer.len()).filter(|w| !wa.contains(w)).collect();

        if union(&[Block::W1, Block::W2, Block::W3]) != inner_set {
            bad.push("W1 ∪ W2 ∪ W3 ≠ [1, w̄]".into());
        }
        if union(&Block::ALL).len() != self.outer.len() {
            bad.push("W1 ∪ W2 ∪ W3 ∪ W4 ≠ [1, w̄a]".into());
        }
        if self.block(Block::W1) != &(&inner_set & &wa) {
            bad.push("W1 ≠ W_a ∩ [1, w̄]".into());
        }
        if &image(self.block(Block::W1)) != self.block(Block::W2) {
            bad.push("W2 ≠ m_a(W1)".into());
        }
        if &image(self.block(Block::W4)) != self.block(Block::W3) {
            bad.push("W3 ≠ m_a(W4)".into());
        }
        if union(&[Block::W2, Block::W3]) != wa_prime {
            bad.push("W2 ∪ W3 ≠ [1, w̄a] ∩ W_a'".into());
        }
        if union(&[Block::W1, Block::W4]) != wa {
            bad.push("W1 ∪ W4 ≠ [1, w̄a] ∩ W_a".into());
        }
        if !self.inner.poset().is_upper_set(&self.inner_block(Block::W3)) {
            bad.push("W3 is not an upper set of [1, w̄]".into());
        }
        if !outer.is_upper_set(self.block(Block::W4)) {
            bad.push("W4 is not an upper set of [1, w̄a]".into());
        }
        if !outer.is_upper_set(&union(&[Block::W3, Block::W4])) {
            bad.push("W3 ∪ W4 is not an upper set of [1, w̄a]".into());
        }
        // m_a swaps W_a and W_a' and preserves order in both directions there.
        for &x in &wa {
            for &y in &wa {
                if outer.leq(x, y) != outer.leq(ma[x], ma[y]) {
                    bad.push(format!(
                        "m_a is not an order isomorphism W_a → W_a' at ({}, {})",
                        outer.label(x),
                        outer.label(y)
                    ));
                }
            }
        }
        // Every W2 ≤ W4 relation factors through z = w'a ∈ W3.
        for &w in self.block(Block::W2) {
            for &w4 in self.block(Block::W4) {
                if outer.leq(w, w4) {
                    let z = ma[w4];
                    if !self.block(Block::W3).contains(&z) || !outer.leq(w, z) || !outer.leq(z, w4) {
                        bad.push(format!(
                            "{} ≤ {} does not factor through {} ∈ W3",
                            outer.label(w),
                            outer.label(w4),
                            outer.label(z)
                        ));
                    }
                }
            }
        }
        // For w ∈ W_a and w' ∈ W_a': w' ≤ w iff Φ(w') ≤ Φ(w).
        let phi = self.phi();
        for &w in &wa {
            for &w2 in &wa_prime {
                if outer.leq(w2, w) != outer.leq(phi[w2], phi[w]) {
                    bad.push(format!(
                        "Φ does not reflect {} ≤ {}",
                        outer.label(w2),
                        outer.label(w)
                    ));
                }
            }
        }
        bad
    }
}

/// The partition of `[1, w̄a]` into `W1..W4`. Requires `w̄ < w̄a`.
pub fn partition(group: &Arc<CoxeterGroup>, wbar: &Word, a: usize) -> Result<BruhatPartition> {
    group.matrix().check_generator(a)?;
    let inner = interval(group, wbar)?;
    if inner.base().right_descent(a)? {
        return Err(Error::Precondition(format!(
            "{}·s{} < {}: w̄ must lie in W_a'",
            inner.base(),
            a,
            inner.base()
        )));
    }
    let outer = interval(group, &wbar.push(a))?;
    let inner_to_outer: Vec<usize> = inner
        .elements()
        .iter()
        .map(|w| outer.index_of(w).expect("[1, w̄] ⊆ [1, w̄a]"))
        .collect();

    let mut blocks: [BTreeSet<usize>; 4] = Default::default();
    let mut block_of = Vec::with_capacity(outer.len());
    for (i, w) in outer.elements().iter().enumerate() {
        let b = if !inner.contains(w) {
            Block::W4
        } else if !inner.contains(&w.mul_generator(a)) {
            Block::W3
        } else if w.right_descent(a)? {
            Block::W1
        } else {
            Block::W2
        };
        blocks[b.slot()].insert(i);
        block_of.push(b);
    }
    let part = BruhatPartition {
        a,
        inner,
        outer,
        blocks,
        block_of,
        inner_to_outer,
    };
    let violations = part.law_violations();
    if let Some(first) = violations.into_iter().next() {
        return Err(Error::PartitionLaw(first));
    }
    Ok(part)
}

/// Every reduced word of `w`, in lexicographic order.
pub fn reduced_words(w: &GroupElement) -> Vec<Word> {
    fn collect(w: &GroupElement, memo: &mut HashMap<Word, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        if let Some(found) = memo.get(w.canonical_word()) {
            return found.clone();
        }
        let mut out = Vec::new();
        for s in w.right_descents() {
            for mut prefix in collect(&w.mul_generator(s), memo) {
                prefix.push(s);
                out.push(prefix);
            }
        }
        memo.insert(w.canonical_word().clone(), out.clone());
        out
    }
    let mut words: Vec<Word> = collect(w, &mut HashMap::new()).into_iter().map(Word).collect();
    words.sort();
    words
}

/// Elements up to this length have all of their reduced words searched by
/// [`is_decomposable`]; longer ones only their canonical word.
pub const DECOMPOSITION_WORD_BUDGET: usize = 8;

/// A length-additive factorization `w = u·v` with `u, v ≠ 1` and
/// `[1, u] ∩ [1, v] = {1}`, if one exists.
pub fn is_decomposable(group: &Arc<CoxeterGroup>, word: &Word) -> Result<Option<(Word, Word)>> {
    let w = group.element(word)?;
    if w.length() != word.len() {
        return Err(Error::NotReduced(word.to_string()));
    }
    let candidates = if w.length() <= DECOMPOSITION_WORD_BUDGET {
        reduced_words(&w)
    } else {
        vec![w.canonical_word().clone()]
    };
    let mut tried = HashSet::new();
    for r in candidates {
        for k in 1..r.len() {
            let u = group.element(&Word(r.letters()[..k].to_vec()))?;
            let v = group.element(&Word(r.letters()[k..].to_vec()))?;
            if !tried.insert((u.canonical_word().clone(), v.canonical_word().clone())) {
                continue;
            }
            let below_u = interval(group, u.canonical_word())?;
            let below_v = interval(group, v.canonical_word())?;
            let shared = below_u.elements().iter().filter(|z| below_v.contains(z)).count();
            if shared == 1 {
                return Ok(Some((u.canonical_word().clone(), v.canonical_word().clone())));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingReport {
    pub bound: usize,
    pub elements: usize,
    pub instances: usize,
    pub counterexample: Option<String>,
}

impl LiftingReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively checks: for `w < w'` of length at most `bound` and a
/// generator `a` with `w < wa` and `w'a < w'`, both `w ≤ w'a` and
/// `wa ≤ w'`.
pub fn check_lifting(group: &Arc<CoxeterGroup>, bound: usize) -> Result<LiftingReport> {
    let elements = group.elements_up_to_length(bound);
    let mut instances = 0;
    for w2 in &elements {
        for w1 in &elements {
            if w1.length() >= w2.length() || !bruhat_leq(w1, w2)? {
                continue;
            }
            for a in w2.right_descents() {
                if w1.right_descent(a)? {
                    continue;
                }
                instances += 1;
                let ok = bruhat_leq(w1, &w2.mul_generator(a))? && bruhat_leq(&w1.mul_generator(a), w2)?;
                if !ok {
                    return Ok(LiftingReport {
                        bound,
                        elements: elements.len(),
                        instances,
                        counterexample: Some(format!("w = {w1}, w' = {w2}, a = s{a}")),
                    });
                }
            }
        }
    }
    Ok(LiftingReport {
        bound,
        elements: elements.len(),
        instances,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> Arc<CoxeterGroup> {
        CoxeterGroup::from_name(name).unwrap()
    }

    fn el(g: &Arc<CoxeterGroup>, w: &[usize]) -> GroupElement {
        g.element(&Word(w.to_vec())).unwrap()
    }

    fn labels(words: &[&[usize]]) -> Vec<String> {
        let mut v: Vec<String> = words.iter().map(|w| Word(w.to_vec()).to_string()).collect();
        v.sort();
        v
    }

    fn sorted(mut v: Vec<String>) -> Vec<String> {
        v.sort();
        v
    }

    #[test]
    fn leq_examples() {
        let a2 = group("A2");
        assert!(bruhat_leq(&a2.identity(), &el(&a2, &[1, 2, 1])).unwrap());
        assert!(!bruhat_leq(&el(&a2, &[1]), &el(&a2, &[2])).unwrap());
        let a3 = group("A3");
        assert!(bruhat_leq(&el(&a3, &[1, 3]), &el(&a3, &[2, 1, 3, 2])).unwrap());
        assert!(matches!(
            bruhat_leq(&el(&a2, &[1]), &el(&a3, &[1])),
            Err(Error::GroupMismatch)
        ));
    }

    #[test]
    fn interval_examples() {
        let a2 = group("A2");
        let i = interval(&a2, &Word(vec![1, 2])).unwrap();
        assert_eq!(i.len(), 4);
        assert_eq!(i.rank_profile(), vec![1, 2, 1]);

        let a3 = group("A3");
        let fig1 = interval(&a3, &Word(vec![3, 2, 1, 2, 3])).unwrap();
        assert_eq!(fig1.len(), 20);
        assert_eq!(fig1.rank_profile(), vec![1, 3, 5, 6, 4, 1]);
        assert_eq!(interval(&a3, &Word(vec![2, 1, 3, 2])).unwrap().len(), 14);

        assert!(matches!(
            interval(&a2, &Word(vec![1, 2, 1, 2])),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn partition_qmatrix_example() {
        let a3 = group("A3");
        let p = partition(&a3, &Word(vec![2, 1, 3]), 2).unwrap();
        assert_eq!(p.block_labels(Block::W2), vec!["e"]);
        assert_eq!(p.block_labels(Block::W1), vec!["s2"]);
        assert_eq!(p.block(Block::W3).len(), 6);
        assert_eq!(p.block(Block::W4).len(), 6);
    }

    #[test]
    fn partition_when_a_not_below() {
        let a2 = group("A2");
        let p = partition(&a2, &Word(vec![1]), 2).unwrap();
        assert!(p.block(Block::W1).is_empty() && p.block(Block::W2).is_empty());
        assert_eq!(sorted(p.block_labels(Block::W3)), labels(&[&[], &[1]]));
        assert_eq!(sorted(p.block_labels(Block::W4)), labels(&[&[2], &[1, 2]]));
    }

    #[test]
    fn partition_m2_extension_example() {
        let a3 = group("A3");
        let p = partition(&a3, &Word(vec![2, 1, 3, 2]), 1).unwrap();
        assert_eq!(
            sorted(p.block_labels(Block::W2)),
            labels(&[&[], &[2], &[3], &[2, 3], &[1, 2]])
        );
        assert_eq!(
            sorted(p.block_labels(Block::W1)),
            labels(&[&[1], &[2, 1], &[1, 3], &[2, 1, 3], &[1, 2, 1]])
        );
        let s3s2 = p.inner().index_of(&el(&a3, &[3, 2])).unwrap();
        let generated = p.inner().poset().upper_set_generated_by(&[s3s2]);
        assert_eq!(generated, p.inner_block(Block::W3));
        assert_eq!(p.outer().len(), 18);
    }

    #[test]
    fn partition_rejects_descent() {
        let a2 = group("A2");
        assert!(matches!(
            partition(&a2, &Word(vec![1, 2]), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn phi_examples() {
        let a3 = group("A3");
        let p = partition(&a3, &Word(vec![2, 1, 3, 2]), 1).unwrap();
        let phi = p.phi();
        let idx = |w: &[usize]| p.outer().index_of(&el(&a3, w)).unwrap();
        assert_eq!(phi[idx(&[])], idx(&[]));
        assert_eq!(phi[idx(&[1])], idx(&[]));
        assert_eq!(phi[idx(&[2, 1, 3, 2, 1])], idx(&[2, 1, 3, 2]));
        // Φ is idempotent and 2-1 onto W2 ∪ W3.
        assert!((0..phi.len()).all(|w| phi[phi[w]] == phi[w]));
        let image: BTreeSet<usize> = phi.iter().copied().collect();
        assert_eq!(image.len() * 2, phi.len());
    }

    #[test]
    fn decomposability_examples() {
        let a3 = group("A3");
        assert_eq!(
            is_decomposable(&a3, &Word(vec![1, 3])).unwrap(),
            Some((Word(vec![1]), Word(vec![3])))
        );
        let a2 = group("A2");
        assert_eq!(
            is_decomposable(&a2, &Word(vec![1, 2])).unwrap(),
            Some((Word(vec![1]), Word(vec![2])))
        );
        assert_eq!(is_decomposable(&a2, &Word(vec![2, 1, 2])).unwrap(), None);
        assert!(is_decomposable(&a2, &Word(vec![1, 1])).is_err());
    }

    #[test]
    fn reduced_words_of_longest_a2() {
        let a2 = group("A2");
        assert_eq!(
            reduced_words(&el(&a2, &[1, 2, 1])),
            vec![Word(vec![1, 2, 1]), Word(vec![2, 1, 2])]
        );
    }

    #[test]
    fn lifting_small_cases() {
        assert!(check_lifting(&group("A2"), 3).unwrap().passed());
        assert!(check_lifting(&group("A3"), 4).unwrap().passed());
        assert!(check_lifting(&group("affineA2"), 4).unwrap().passed());
    }
}
