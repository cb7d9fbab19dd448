//! Finite labeled posets.
//!
//! The order relation is stored reflexive and transitively closed; the Hasse
//! diagram is derived from it. Element identity is the dense index `0..len`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    labels: Vec<String>,
    leq: Vec<bool>,
    hasse: Vec<(usize, usize)>,
    rank: Option<Vec<i64>>,
}

impl LabeledPoset {
    /// Builds a poset from labels and generating relations `x ≤ y`, given as
    /// index pairs. The reflexive-transitive closure is taken and checked
    /// for antisymmetry.
    pub fn build(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in relations {
            if x >= n {
                return Err(Error::UnknownElement(x));
            }
            if y >= n {
                return Err(Error::UnknownElement(y));
            }
            leq[x * n + y] = true;
        }
        close(&mut leq, n);
        LabeledPoset::from_closed(labels, leq)
    }

    /// Builds a poset whose relation is given by a predicate. The predicate
    /// is closed transitively like the relation list of [`build`](Self::build).
    pub fn from_fn(labels: Vec<String>, mut leq_fn: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = i == j || leq_fn(i, j);
            }
        }
        close(&mut leq, n);
        LabeledPoset::from_closed(labels, leq)
    }

    fn from_closed(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let hasse = transitive_reduction(&leq, n);
        Ok(LabeledPoset {
            labels,
            leq,
            hasse,
            rank: None,
        })
    }

    /// Attaches a rank function; every cover must raise the rank by one.
    pub fn with_rank(mut self, rank: Vec<i64>) -> Result<Self> {
        if rank.len() != self.len() {
            return Err(Error::InvalidRank(format!(
                "{} ranks for {} elements",
                rank.len(),
                self.len()
            )));
        }
        if let Some(&(x, y)) = self.hasse.iter().find(|&&(x, y)| rank[y] != rank[x] + 1) {
            return Err(Error::InvalidRank(format!(
                "cover {} < {} goes from rank {} to {}",
                self.labels[x], self.labels[y], rank[x], rank[y]
            )));
        }
        self.rank = Some(rank);
        Ok(self)
    }

    pub fn without_rank(mut self) -> Self {
        self.rank = None;
        self
    }

    /// The chain `0 < 1 < ... < n-1`, labeled by digits and ranked.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let relations: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        LabeledPoset::build(labels, &relations)
            .and_then(|p| p.with_rank((0..n as i64).collect()))
            .expect("chains are graded posets")
    }

    /// The two-element chain `{0 < 1}`.
    pub fn two_chain() -> Self {
        LabeledPoset::chain(2)
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        LabeledPoset::build(labels, &[])
            .and_then(|p| p.with_rank(vec![0; n]))
            .expect("antichains are graded posets")
    }

    /// Subsets of `{1..n}` under inclusion, labeled like `{1,3}`.
    pub fn boolean_lattice(n: usize) -> Self {
        let size = 1usize << n;
        let labels = (0..size)
            .map(|mask| {
                let items: Vec<String> = (0..n)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| (b + 1).to_string())
                    .collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let rank = (0..size).map(|m: usize| m.count_ones() as i64).collect();
        LabeledPoset::from_fn(labels, |x, y| x & y == x)
            .and_then(|p| p.with_rank(rank))
            .expect("boolean lattices are graded posets")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Cover relations `(lower, upper)`, sorted lexicographically.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.hasse.binary_search(&(lower, upper)).is_ok()
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.hasse
            .iter()
            .filter(|&&(_, u)| u == x)
            .map(|&(l, _)| l)
            .collect()
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.hasse
            .iter()
            .filter(|&&(l, _)| l == x)
            .map(|&(_, u)| u)
            .collect()
    }

    pub fn rank(&self) -> Option<&[i64]> {
        self.rank.as_deref()
    }

    /// Number of elements at each rank, starting from the minimum rank.
    pub fn rank_profile(&self) -> Option<Vec<usize>> {
        let rank = self.rank.as_ref()?;
        let lo = *rank.iter().min()?;
        let hi = *rank.iter().max()?;
        let mut profile = vec![0usize; (hi - lo + 1) as usize];
        for r in rank {
            profile[(r - lo) as usize] += 1;
        }
        Some(profile)
    }

    /// Length of the longest chain below each element.
    pub fn levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq(y, x)).count());
        let mut level = vec![0usize; n];
        for &x in &order {
            level[x] = self
                .lower_covers(x)
                .into_iter()
                .map(|l| level[l] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Length (number of covers) of the longest chain.
    pub fn height(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0)
    }

    pub fn is_upper_set(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq(x, y) || set.contains(&y)))
    }

    pub fn is_lower_set(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq(y, x) || set.contains(&y)))
    }

    pub fn upper_set_generated_by(&self, generators: &[usize]) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&y| generators.iter().any(|&g| self.leq(g, y)))
            .collect()
    }

    /// Minimal elements of `set` with respect to the ambient order.
    pub fn minimal_elements(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| self.lt(y, x)))
            .collect()
    }

    /// The subposet on `subset` (in the given order). The rank function is
    /// kept when it is still compatible with the induced covers.
    pub fn induced(&self, subset: &[usize]) -> LabeledPoset {
        let labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let sub = LabeledPoset::from_fn(labels, |a, b| self.leq(subset[a], subset[b]))
            .expect("an induced subposet of a poset is a poset");
        match &self.rank {
            Some(rank) => {
                let r = subset.iter().map(|&i| rank[i]).collect();
                let plain = sub.clone();
                sub.with_rank(r).unwrap_or(plain)
            }
            None => sub,
        }
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Precondition(format!(
                "{} labels for {} elements",
                labels.len(),
                self.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        let doc = PosetJson {
            elements: (0..self.len())
                .map(|id| ElementJson {
                    id,
                    label: self.labels[id].clone(),
                    rank: self.rank.as_ref().map(|r| r[id]),
                })
                .collect(),
            hasse: self.hasse.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("poset JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PosetJson = serde_json::from_str(text)?;
        for (pos, e) in doc.elements.iter().enumerate() {
            if e.id != pos {
                return Err(Error::Parse(format!("element ids must be dense from 0, found {} at {}", e.id, pos)));
            }
        }
        let labels = doc.elements.iter().map(|e| e.label.clone()).collect();
        let relations: Vec<_> = doc.hasse.iter().map(|&[a, b]| (a, b)).collect();
        let poset = LabeledPoset::build(labels, &relations)?;
        let ranks: Option<Vec<i64>> = doc.elements.iter().map(|e| e.rank).collect();
        match ranks {
            Some(r) => poset.with_rank(r),
            None => Ok(poset),
        }
    }

    /// Graphviz rendering: Hasse edges point upward, with one layer per rank
    /// when a rank function is present.
    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for label in &self.labels {
            let _ = writeln!(out, "  {};", quote(label));
        }
        if let Some(rank) = &self.rank {
            let mut layers: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for (i, r) in rank.iter().enumerate() {
                layers.entry(*r).or_default().push(i);
            }
            for members in layers.values() {
                let names: Vec<String> = members.iter().map(|&i| quote(&self.labels[i])).collect();
                let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
            }
        }
        for &(a, b) in &self.hasse {
            let _ = writeln!(out, "  {} -> {};", quote(&self.labels[a]), quote(&self.labels[b]));
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Parse(format!("unknown export format `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<ElementJson>,
    hasse: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    id: usize,
    label: String,
    rank: Option<i64>,
}

fn close(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
}

fn transitive_reduction(leq: &[bool], n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !leq[x * n + y] {
                continue;
            }
            let skipped = (0..n).any(|z| z != x && z != y && leq[x * n + z] && leq[z * n + y]);
            if !skipped {
                edges.push((x, y));
            }
        }
    }
    edges
}

/// Componentwise order on pairs, labeled `(x,y)`. Element `(i, j)` has
/// index `i * |Q| + j`.
pub fn product(p: &LabeledPoset, q: &LabeledPoset) -> LabeledPoset {
    let m = q.len();
    let labels = (0..p.len() * m)
        .map(|k| format!("({},{})", p.label(k / m), q.label(k % m)))
        .collect();
    let poset = LabeledPoset::from_fn(labels, |a, b| p.leq(a / m, b / m) && q.leq(a % m, b % m))
        .expect("a product of posets is a poset");
    match (p.rank(), q.rank()) {
        (Some(rp), Some(rq)) => {
            let rank = (0..p.len() * m).map(|k| rp[k / m] + rq[k % m]).collect();
            poset.with_rank(rank).expect("product of graded posets is graded")
        }
        _ => poset,
    }
}

/// Disjoint union with no cross relations. `P` occupies indices
/// `0..|P|`; clashing labels from `Q` are primed until unique.
pub fn disjoint_union(p: &LabeledPoset, q: &LabeledPoset) -> LabeledPoset {
    let n = p.len();
    let mut labels: Vec<String> = p.labels.clone();
    let mut taken: BTreeSet<String> = labels.iter().cloned().collect();
    for label in &q.labels {
        let mut fresh = label.clone();
        while taken.contains(&fresh) {
            fresh.push('\'');
        }
        taken.insert(fresh.clone());
        labels.push(fresh);
    }
    let poset = LabeledPoset::from_fn(labels, |a, b| match (a < n, b < n) {
        (true, true) => p.leq(a, b),
        (false, false) => q.leq(a - n, b - n),
        _ => false,
    })
    .expect("a disjoint union of posets is a poset");
    match (p.rank(), q.rank()) {
        (Some(rp), Some(rq)) => {
            let rank = rp.iter().chain(rq.iter()).copied().collect();
            poset.with_rank(rank).expect("disjoint union of graded posets is graded")
        }
        _ => poset,
    }
}

/// A total map between the elements of two posets, with its properties
/// computed on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    assignment: Vec<usize>,
    order_preserving: bool,
    injective: bool,
    surjective: bool,
    is_isomorphism: bool,
}

impl PosetMap {
    pub fn new(source: &LabeledPoset, target: &LabeledPoset, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::Precondition(format!(
                "map assigns {} images for {} source elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(Error::UnknownElement(bad));
        }
        let n = source.len();
        let image: BTreeSet<usize> = assignment.iter().copied().collect();
        let injective = image.len() == n;
        let surjective = image.len() == target.len();
        let order_preserving = (0..n).all(|x| {
            (0..n).all(|y| !source.leq(x, y) || target.leq(assignment[x], assignment[y]))
        });
        let reflecting = (0..n).all(|x| {
            (0..n).all(|y| !target.leq(assignment[x], assignment[y]) || source.leq(x, y))
        });
        Ok(PosetMap {
            is_isomorphism: injective && surjective && order_preserving && reflecting,
            assignment,
            order_preserving,
            injective,
            surjective,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn order_preserving(&self) -> bool {
        self.order_preserving
    }

    pub fn injective(&self) -> bool {
        self.injective
    }

    pub fn surjective(&self) -> bool {
        self.surjective
    }

    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_isomorphism
    }

    /// Inverse assignment of a bijection.
    pub fn inverse_assignment(&self) -> Option<Vec<usize>> {
        if !self.bijective() {
            return None;
        }
        let mut inv = vec![0; self.assignment.len()];
        for (x, &y) in self.assignment.iter().enumerate() {
            inv[y] = x;
        }
        Some(inv)
    }
}

/// A pair of element blocks that an isomorphism must match onto each other.
pub type BlockConstraint = (BTreeSet<usize>, BTreeSet<usize>);

/// Searches for an isomorphism `P → Q` mapping every constraint block of
/// `P` onto its partner block of `Q`. Elements outside every block map to
/// elements outside every block.
///
/// Rank-stratified backtracking: elements are placed by level, candidates
/// are filtered by a local invariant signature and tried in label order.
pub fn find_isomorphism(
    p: &LabeledPoset,
    q: &LabeledPoset,
    constraints: &[BlockConstraint],
) -> Option<PosetMap> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let block_p = block_ids(n, constraints.iter().map(|(a, _)| a))?;
    let block_q = block_ids(n, constraints.iter().map(|(_, b)| b))?;
    if constraints.iter().any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    let sig_p = signatures(p, &block_p);
    let sig_q = signatures(q, &block_q);
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort();
    sorted_q.sort();
    if sorted_p != sorted_q {
        return None;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| (sig_p[a].level, p.label(a)).cmp(&(sig_p[b].level, p.label(b))));
    let mut by_sig: HashMap<&Signature, Vec<usize>> = HashMap::new();
    for (y, sig) in sig_q.iter().enumerate() {
        by_sig.entry(sig).or_default().push(y);
    }
    for list in by_sig.values_mut() {
        list.sort_by(|&a, &b| q.label(a).cmp(q.label(b)));
    }
    let candidates: Vec<Vec<usize>> = (0..n).map(|x| by_sig[&sig_p[x]].clone()).collect();

    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(p, q, &order, &candidates, 0, &mut assignment, &mut used) {
        PosetMap::new(p, q, assignment).ok()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    block: Option<usize>,
    level: usize,
    below: usize,
    above: usize,
    lower_covers: usize,
    upper_covers: usize,
}

fn block_ids<'a>(n: usize, blocks: impl Iterator<Item = &'a BTreeSet<usize>>) -> Option<Vec<Option<usize>>> {
    let mut ids = vec![None; n];
    for (k, block) in blocks.enumerate() {
        for &x in block {
            if x >= n || ids[x].is_some() {
                return None;
            }
            ids[x] = Some(k);
        }
    }
    Some(ids)
}

fn signatures(p: &LabeledPoset, blocks: &[Option<usize>]) -> Vec<Signature> {
    let n = p.len();
    let levels = p.levels();
    (0..n)
        .map(|x| Signature {
            block: blocks[x],
            level: levels[x],
            below: (0..n).filter(|&y| p.leq(y, x)).count(),
            above: (0..n).filter(|&y| p.leq(x, y)).count(),
            lower_covers: p.lower_covers(x).len(),
            upper_covers: p.upper_covers(x).len(),
        })
        .collect()
}

fn backtrack(
    p: &LabeledPoset,
    q: &LabeledPoset,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    assignment: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&a| {
            let fa = assignment[a];
            p.leq(a, x) == q.leq(fa, y) && p.leq(x, a) == q.leq(y, fa)
        });
        if !consistent {
            continue;
        }
        assignment[x] = y;
        used[y] = true;
        if backtrack(p, q, order, candidates, depth + 1, assignment, used) {
            return true;
        }
        used[y] = false;
        assignment[x] = usize::MAX;
    }
    false
}

pub fn is_isomorphic(p: &LabeledPoset, q: &LabeledPoset) -> bool {
    find_isomorphism(p, q, &[]).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn diamond() -> LabeledPoset {
        LabeledPoset::build(labels(&["bot", "l", "r", "top"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let single = LabeledPoset::build(labels(&["a"]), &[]).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.hasse().is_empty());

        let chain = LabeledPoset::build(labels(&["a", "b"]), &[(0, 1)]).unwrap();
        assert_eq!(chain.hasse(), &[(0, 1)]);
        assert!(chain.leq(0, 1) && !chain.leq(1, 0));

        assert!(matches!(
            LabeledPoset::build(labels(&["a", "b"]), &[(0, 1), (1, 0)]),
            Err(Error::Cycle(_, _))
        ));
        assert!(matches!(
            LabeledPoset::build(labels(&["a", "a"]), &[]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn closure_and_reduction() {
        let p = LabeledPoset::build(labels(&["a", "b", "c"]), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.hasse(), &[(0, 1), (1, 2)]);
        assert_eq!(p.height(), 2);
    }

    #[test]
    fn rank_validation() {
        let p = LabeledPoset::build(labels(&["a", "b"]), &[(0, 1)]).unwrap();
        assert!(p.clone().with_rank(vec![0, 2]).is_err());
        assert_eq!(p.with_rank(vec![0, 1]).unwrap().rank_profile(), Some(vec![1, 1]));
    }

    #[test]
    fn product_examples() {
        let two = LabeledPoset::two_chain();
        let d = product(&two, &two);
        assert_eq!(d.len(), 4);
        assert_eq!(d.rank_profile(), Some(vec![1, 2, 1]));
        assert!(is_isomorphic(&d, &diamond()));
        assert_eq!(d.label(1), "(0,1)");

        let single = LabeledPoset::chain(1);
        assert!(is_isomorphic(&product(&d, &single), &d));
    }

    #[test]
    fn disjoint_union_examples() {
        let s = LabeledPoset::chain(1);
        let u = disjoint_union(&s, &s);
        assert_eq!(u.len(), 2);
        assert!(!u.leq(0, 1) && !u.leq(1, 0));
        assert_eq!(u.label(1), "0'");

        let u = disjoint_union(&LabeledPoset::two_chain(), &s);
        assert_eq!(u.len(), 3);
        assert_eq!(u.hasse().len(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic(&diamond(), &product(&LabeledPoset::two_chain(), &LabeledPoset::two_chain())));
        assert!(!is_isomorphic(&LabeledPoset::chain(3), &LabeledPoset::antichain(3)));
        let b3 = LabeledPoset::boolean_lattice(3);
        let map = find_isomorphism(&b3, &b3, &[]).unwrap();
        assert!(map.is_isomorphism());
    }

    #[test]
    fn isomorphism_respects_blocks() {
        let d = diamond();
        // Force the left atom onto the right atom.
        let c = vec![(BTreeSet::from([1]), BTreeSet::from([2]))];
        let map = find_isomorphism(&d, &d, &c).unwrap();
        assert_eq!(map.apply(1), 2);
        assert_eq!(map.apply(2), 1);
        // Bottom cannot go to an atom.
        let c = vec![(BTreeSet::from([0]), BTreeSet::from([1]))];
        assert!(find_isomorphism(&d, &d, &c).is_none());
    }

    #[test]
    fn upper_sets() {
        let d = diamond();
        assert!(d.is_upper_set(&BTreeSet::from([3])));
        let c = LabeledPoset::two_chain();
        assert!(!c.is_upper_set(&BTreeSet::from([0])));
        assert!(c.is_lower_set(&BTreeSet::from([0])));
        assert_eq!(d.upper_set_generated_by(&[1]), BTreeSet::from([1, 3]));
    }

    #[test]
    fn poset_map_flags() {
        let c = LabeledPoset::two_chain();
        let a = LabeledPoset::antichain(2);
        let f = PosetMap::new(&a, &c, vec![0, 1]).unwrap();
        assert!(f.order_preserving() && f.bijective() && !f.is_isomorphism());
        let g = PosetMap::new(&c, &a, vec![0, 1]).unwrap();
        assert!(!g.order_preserving());
        assert!(PosetMap::new(&c, &a, vec![0, 5]).is_err());
    }

    #[test]
    fn export_formats() {
        let s = LabeledPoset::chain(1);
        let dot = s.to_dot();
        assert!(dot.contains("\"0\";"));
        assert!(!dot.contains("->"));

        let c = LabeledPoset::two_chain();
        assert_eq!(c.to_dot().matches("->").count(), 1);
        let json = c.to_json();
        let back = LabeledPoset::from_json(&json).unwrap();
        assert_eq!(back, c);
        assert_eq!(json, c.to_json());
    }
}
