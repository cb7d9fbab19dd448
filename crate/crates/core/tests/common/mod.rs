//! Permutation models of the test groups, independent of the reflection
//! representation used by the library: `A_n` as `S_{n+1}`, `D_n` as even
//! signed permutations, `Ã₂` as affine permutations of period 3.
//!
//! Lengths come from breadth-first search in the Cayley graph and Bruhat
//! order from the subword property.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

pub type Perm = Vec<i64>;

#[derive(Clone, Copy, Debug)]
pub enum Model {
    /// `S_{n+1}`, generator `i` swaps positions `i` and `i + 1`.
    A(usize),
    /// Even signed permutations of `1..=n`. Generator 1 swaps positions 1
    /// and 2 with a sign change, generator 2 swaps them plainly, and
    /// generator `k ≥ 3` swaps positions `k - 1` and `k`.
    D(usize),
    /// Windows `[f(1), f(2), f(3)]` of affine permutations; generators 1
    /// and 2 swap adjacent window positions, generator 3 swaps `f(0)` and
    /// `f(1)`.
    AffineA2,
}

impl Model {
    pub fn from_name(name: &str) -> Model {
        match name {
            "affineA2" => Model::AffineA2,
            _ if name.starts_with('A') => Model::A(name[1..].parse().unwrap()),
            _ if name.starts_with('D') => Model::D(name[1..].parse().unwrap()),
            _ => panic!("no oracle for {name}"),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Model::A(n) | Model::D(n) => n,
            Model::AffineA2 => 3,
        }
    }

    pub fn identity(self) -> Perm {
        let n = match self {
            Model::A(n) => n + 1,
            Model::D(n) => n,
            Model::AffineA2 => 3,
        };
        (1..=n as i64).collect()
    }

    /// `w · s`
    pub fn right_mul(self, w: &[i64], s: usize) -> Perm {
        let mut v = w.to_vec();
        match self {
            Model::A(_) => v.swap(s - 1, s),
            Model::D(_) => match s {
                1 => {
                    let (a, b) = (v[0], v[1]);
                    v[0] = -b;
                    v[1] = -a;
                }
                2 => v.swap(0, 1),
                k => v.swap(k - 2, k - 1),
            },
            Model::AffineA2 => match s {
                1 | 2 => v.swap(s - 1, s),
                _ => {
                    let (first, last) = (v[0], v[2]);
                    v[0] = last - 3;
                    v[2] = first + 3;
                }
            },
        }
        v
    }

    pub fn product(self, word: &[usize]) -> Perm {
        word.iter().fold(self.identity(), |w, &s| self.right_mul(&w, s))
    }

    /// Every element of length at most `bound`, with its length and one
    /// reduced word.
    pub fn ball(self, bound: usize) -> HashMap<Perm, (usize, Vec<usize>)> {
        let mut seen = HashMap::new();
        seen.insert(self.identity(), (0, Vec::new()));
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            let (len, word) = seen[&w].clone();
            if len == bound {
                continue;
            }
            for s in 1..=self.rank() {
                let v = self.right_mul(&w, s);
                if !seen.contains_key(&v) {
                    let mut wd = word.clone();
                    wd.push(s);
                    seen.insert(v.clone(), (len + 1, wd));
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn length(self, word: &[usize]) -> usize {
        let target = self.product(word);
        self.ball(word.len())[&target].0
    }

    /// Products of all subwords of `word`.
    pub fn subword_products(self, word: &[usize]) -> HashSet<Perm> {
        let mut set = HashSet::from([self.identity()]);
        for &s in word {
            let next: Vec<Perm> = set.iter().map(|w| self.right_mul(w, s)).collect();
            set.extend(next);
        }
        set
    }

    /// `u ≤ v` by the subword property; `v_word` must be reduced.
    pub fn leq(self, u: &[usize], v_word: &[usize]) -> bool {
        self.subword_products(v_word).contains(&self.product(u))
    }

    /// Size and rank profile of `[1, w]` for a reduced word `w`.
    pub fn interval_profile(self, word: &[usize]) -> (usize, Vec<usize>) {
        let lengths = self.ball(word.len());
        let elements = self.subword_products(word);
        let mut profile = vec![0; word.len() + 1];
        for e in &elements {
            profile[lengths[e].0] += 1;
        }
        (elements.len(), profile)
    }
}
