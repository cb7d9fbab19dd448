//! The pushout square relating `[1, w̄]` and `[1, w̄a]`:
//!
//! ```text
//!   (W2 ∪ W3) × 2  --⊺-->  [1, w̄a]
//!        ^                    ^
//!        ν2                   incl
//!        |                    |
//!   W3 ⊔ (W2 × 2)  --ν1-->  [1, w̄]
//! ```
//!
//! Every map is built explicitly and its properties are recomputed. The
//! square is additionally compared against the pushout computed directly
//! in finite posets (quotient of the disjoint union by `ν1(ξ) ~ ν2(ξ)`).

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::bruhat::{partition, Block, BruhatPartition};
use crate::coxeter::{CoxeterGroup, Word};
use crate::error::Result;
use crate::poset::{disjoint_union, find_isomorphism, product, LabeledPoset, PosetMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutReport {
    pub wbar: String,
    pub generator: usize,
    pub size_inner: usize,
    pub size_outer: usize,
    pub nu1_bijective_hom: bool,
    pub nu2_injective_hom: bool,
    pub top_bijective_hom: bool,
    pub commutes: bool,
    pub inverse_formula: bool,
    pub inverse_monotone_on_halves: bool,
    pub colimit_matches: bool,
}

impl PushoutReport {
    pub fn passed(&self) -> bool {
        self.nu1_bijective_hom
            && self.nu2_injective_hom
            && self.top_bijective_hom
            && self.commutes
            && self.inverse_formula
            && self.inverse_monotone_on_halves
            && self.colimit_matches
    }
}

/// The four corner posets and three non-trivial maps of the square, with
/// indices into the respective posets.
pub struct PushoutSquare {
    pub partition: BruhatPartition,
    /// `W3 ⊔ (W2 × 2)`; `W3` first, then `(w, ε)` at `|W3| + 2i + ε`.
    pub source: LabeledPoset,
    /// `(W2 ∪ W3) × 2`; `(w, ε)` at `2i + ε`.
    pub doubled: LabeledPoset,
    pub nu1: Vec<usize>,
    pub nu2: Vec<usize>,
    pub top: Vec<usize>,
    /// `[1, w̄] → [1, w̄a]`
    pub inclusion: Vec<usize>,
    w3: Vec<usize>,
    w2: Vec<usize>,
    w23: Vec<usize>,
}

impl PushoutSquare {
    pub fn new(group: &Arc<CoxeterGroup>, wbar: &Word, a: usize) -> Result<Self> {
        let part = partition(group, wbar, a)?;
        let inner = part.inner().poset();
        let to_inner = part.outer_to_inner();
        let inner_of = |o: usize| to_inner[o].expect("old words lie in [1, w̄]");
        let w3: Vec<usize> = part.block(Block::W3).iter().map(|&o| inner_of(o)).collect();
        let w2: Vec<usize> = part.block(Block::W2).iter().map(|&o| inner_of(o)).collect();
        let mut w23: Vec<usize> = w2.iter().chain(w3.iter()).copied().collect();
        w23.sort_unstable();

        let two = LabeledPoset::two_chain();
        let source = disjoint_union(&inner.induced(&w3), &product(&inner.induced(&w2), &two));
        let doubled = product(&inner.induced(&w23), &two);

        let ma = part.m_a();
        let times_a = |i: usize| inner_of(ma[part.inner_to_outer()[i]]);
        let n3 = w3.len();
        let nu1: Vec<usize> = (0..source.len())
            .map(|k| {
                if k < n3 {
                    w3[k]
                } else {
                    let (i, eps) = ((k - n3) / 2, (k - n3) % 2);
                    if eps == 0 {
                        w2[i]
                    } else {
                        times_a(w2[i])
                    }
                }
            })
            .collect();
        let pos23 = |inner_index: usize| w23.binary_search(&inner_index).expect("member of W2 ∪ W3");
        let nu2: Vec<usize> = (0..source.len())
            .map(|k| {
                if k < n3 {
                    2 * pos23(w3[k])
                } else {
                    let (i, eps) = ((k - n3) / 2, (k - n3) % 2);
                    2 * pos23(w2[i]) + eps
                }
            })
            .collect();
        let top: Vec<usize> = (0..doubled.len())
            .map(|k| {
                let o = part.inner_to_outer()[w23[k / 2]];
                if k % 2 == 0 {
                    o
                } else {
                    ma[o]
                }
            })
            .collect();
        let inclusion = part.inner_to_outer().to_vec();
        Ok(PushoutSquare {
            partition: part,
            source,
            doubled,
            nu1,
            nu2,
            top,
            inclusion,
            w3,
            w2,
            w23,
        })
    }

    pub fn w3_len(&self) -> usize {
        self.w3.len()
    }

    pub fn w2_len(&self) -> usize {
        self.w2.len()
    }

    /// `⊺⁻¹`: `w ↦ (w, 0)` on `W_a'` and `w ↦ (wa, 1)` on `W_a`.
    pub fn top_inverse(&self) -> Vec<usize> {
        let part = &self.partition;
        let ma = part.m_a();
        let to_inner = part.outer_to_inner();
        (0..part.outer().len())
            .map(|o| {
                let (base, eps) = if part.has_descent(o) { (ma[o], 1) } else { (o, 0) };
                let inner = to_inner[base].expect("W_a' part of [1, w̄a] lies in [1, w̄]");
                2 * self.w23.binary_search(&inner).expect("member of W2 ∪ W3") + eps
            })
            .collect()
    }

    pub fn report(&self) -> Result<PushoutReport> {
        let part = &self.partition;
        let inner = part.inner().poset();
        let outer = part.outer().poset();
        let nu1 = PosetMap::new(&self.source, inner, self.nu1.clone())?;
        let nu2 = PosetMap::new(&self.source, &self.doubled, self.nu2.clone())?;
        let top = PosetMap::new(&self.doubled, outer, self.top.clone())?;

        let commutes = (0..self.source.len()).all(|k| self.top[self.nu2[k]] == self.inclusion[self.nu1[k]]);

        let inverse = self.top_inverse();
        let inverse_formula = top
            .inverse_assignment()
            .is_some_and(|inv| inv == inverse);
        let halves: [BTreeSet<usize>; 2] = [
            (0..outer.len()).filter(|&o| part.has_descent(o)).collect(),
            (0..outer.len()).filter(|&o| !part.has_descent(o)).collect(),
        ];
        let inverse_monotone_on_halves = halves.iter().all(|half| {
            half.iter().all(|&x| {
                half.iter()
                    .all(|&y| !outer.leq(x, y) || self.doubled.leq(inverse[x], inverse[y]))
            })
        });

        Ok(PushoutReport {
            wbar: part.wbar().to_string(),
            generator: part.generator(),
            size_inner: inner.len(),
            size_outer: outer.len(),
            nu1_bijective_hom: nu1.bijective() && nu1.order_preserving(),
            nu2_injective_hom: nu2.injective() && nu2.order_preserving(),
            top_bijective_hom: top.bijective() && top.order_preserving(),
            commutes,
            inverse_formula,
            inverse_monotone_on_halves,
            colimit_matches: self.colimit_matches(),
        })
    }

    /// Computes the pushout of `ν1` and `ν2` in finite posets and checks the
    /// induced comparison map to `[1, w̄a]` is an isomorphism.
    fn colimit_matches(&self) -> bool {
        let inner = self.partition.inner().poset();
        let outer = self.partition.outer().poset();
        let n_inner = inner.len();
        let total = n_inner + self.doubled.len();
        let mut leq = vec![false; total * total];
        for x in 0..n_inner {
            for y in 0..n_inner {
                leq[x * total + y] = inner.leq(x, y);
            }
        }
        for x in 0..self.doubled.len() {
            for y in 0..self.doubled.len() {
                leq[(n_inner + x) * total + n_inner + y] = self.doubled.leq(x, y);
            }
        }
        for k in 0..self.source.len() {
            let (a, b) = (self.nu1[k], n_inner + self.nu2[k]);
            leq[a * total + b] = true;
            leq[b * total + a] = true;
        }
        for k in 0..total {
            for i in 0..total {
                if leq[i * total + k] {
                    for j in 0..total {
                        if leq[k * total + j] {
                            leq[i * total + j] = true;
                        }
                    }
                }
            }
        }
        // Classes of mutually comparable elements, represented by their
        // smallest member.
        let rep: Vec<usize> = (0..total)
            .map(|i| (0..total).find(|&j| leq[i * total + j] && leq[j * total + i]).unwrap_or(i))
            .collect();
        let classes: Vec<usize> = (0..total).filter(|&i| rep[i] == i).collect();
        let to_outer = |i: usize| {
            if i < n_inner {
                self.inclusion[i]
            } else {
                self.top[i - n_inner]
            }
        };
        let well_defined = (0..total).all(|i| to_outer(i) == to_outer(rep[i]));
        if !well_defined || classes.len() != outer.len() {
            return false;
        }
        let labels = classes.iter().map(|c| format!("[{c}]")).collect();
        let Ok(quotient) = LabeledPoset::from_fn(labels, |a, b| leq[classes[a] * total + classes[b]]) else {
            return false;
        };
        let comparison = classes.iter().map(|&c| to_outer(c)).collect();
        PosetMap::new(&quotient, outer, comparison).is_ok_and(|m| m.is_isomorphism())
            && find_isomorphism(&quotient, outer, &[]).is_some()
    }
}

/// Builds the square for `(w̄, a)` and checks every property of its maps.
pub fn pushout_square(group: &Arc<CoxeterGroup>, wbar: &Word, a: usize) -> Result<PushoutReport> {
    PushoutSquare::new(group, wbar, a)?.report()
}
