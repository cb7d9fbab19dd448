//! Crystallographic Coxeter groups realised through an integer reflection
//! representation on the root lattice.
//!
//! Generators are indexed from 1, matching `s_1, ..., s_n`. Every element
//! carries its matrix, the matrix of its inverse, and its lexicographically
//! least reduced word, which doubles as a normal form for hashing and
//! ordering.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Encoding of `m_ij = ∞` in the matrix and in JSON.
pub const INFINITY: u32 = 0;

/// Symmetric Coxeter matrix with `m_ii = 1` and off-diagonal entries in
/// `{2, 3, 4, 6, ∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rank: usize,
    m: Vec<Vec<u32>>,
}

impl TryFrom<MatrixJson> for CoxeterMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        if json.m.len() != json.rank {
            return Err(Error::InvalidMatrix(format!(
                "declared rank {} but {} rows",
                json.rank,
                json.m.len()
            )));
        }
        CoxeterMatrix::new(json.m)
    }
}

impl From<CoxeterMatrix> for MatrixJson {
    fn from(m: CoxeterMatrix) -> Self {
        MatrixJson {
            rank: m.rank,
            m: m.rows(),
        }
    }
}

/// Families with a builtin Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    D,
    AffineA2,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be at least 1".into()));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    rank
                )));
            }
            entries.extend_from_slice(row);
        }
        for i in 0..rank {
            if entries[i * rank + i] != 1 {
                return Err(Error::InvalidMatrix(format!("m[{0}][{0}] must be 1", i + 1)));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let value = entries[i * rank + j];
                if value != entries[j * rank + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "m[{}][{}] != m[{}][{}]",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                match value {
                    INFINITY | 2 | 3 | 4 | 6 => {}
                    1 => {
                        return Err(Error::InvalidMatrix(format!(
                            "off-diagonal entry m[{}][{}] must be at least 2",
                            i + 1,
                            j + 1
                        )))
                    }
                    _ => {
                        return Err(Error::NonCrystallographic {
                            i: i + 1,
                            j: j + 1,
                            value,
                        })
                    }
                }
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// The matrix encoded by the Dynkin diagram of a builtin family.
    ///
    /// Type `D` uses the branching at `s_3`: `s_1` and `s_2` both attach to
    /// `s_3`, followed by the path `s_3 - s_4 - ... - s_rank`.
    pub fn builtin(family: Family, rank: usize) -> Result<Self> {
        let unsupported = || Error::UnsupportedFamily {
            family: format!("{family:?}"),
            rank,
        };
        let edges: Vec<(usize, usize)> = match family {
            Family::A => {
                if rank < 1 {
                    return Err(unsupported());
                }
                (1..rank).map(|i| (i, i + 1)).collect()
            }
            Family::D => {
                if rank < 3 {
                    return Err(unsupported());
                }
                let mut edges = vec![(1, 3), (2, 3)];
                edges.extend((3..rank).map(|i| (i, i + 1)));
                edges
            }
            Family::AffineA2 => {
                if rank != 3 {
                    return Err(unsupported());
                }
                vec![(1, 2), (2, 3), (1, 3)]
            }
        };
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, j) in edges {
            rows[i - 1][j - 1] = 3;
            rows[j - 1][i - 1] = 3;
        }
        CoxeterMatrix::new(rows)
    }

    /// Parses a builtin name: `A<k>`, `D<k>` or `affineA2`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if name.eq_ignore_ascii_case("affineA2") {
            return CoxeterMatrix::builtin(Family::AffineA2, 3);
        }
        let unknown = || Error::UnknownMatrix(name.to_string());
        let (family, digits) = match name.split_at_checked(1) {
            Some(("A", rest)) => (Family::A, rest),
            Some(("D", rest)) => (Family::D, rest),
            _ => return Err(unknown()),
        };
        let rank: usize = digits.parse().map_err(|_| unknown())?;
        CoxeterMatrix::builtin(family, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Raw entry with 1-based indices; `INFINITY` (0) stands for `∞`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.rank + (j - 1)]
    }

    /// `Some(m_ij)`, or `None` when `m_ij = ∞`.
    pub fn order(&self, i: usize, j: usize) -> Option<u32> {
        match self.entry(i, j) {
            INFINITY => None,
            m => Some(m),
        }
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn check_generator(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.rank {
            Err(Error::InvalidGenerator {
                index,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// Off-diagonal entries of the integer Cartan-type matrix `a_ij`.
    fn cartan(&self) -> Vec<i64> {
        let n = self.rank;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            a[i * n + i] = 2;
            for j in (i + 1)..n {
                let (aij, aji) = match self.entries[i * n + j] {
                    2 => (0, 0),
                    3 => (-1, -1),
                    4 => (-1, -2),
                    6 => (-1, -3),
                    INFINITY => (-2, -2),
                    _ => unreachable!("validated on construction"),
                };
                a[i * n + j] = aij;
                a[j * n + i] = aji;
            }
        }
        a
    }
}

/// A sequence of 1-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, matrix: &CoxeterMatrix) -> Result<()> {
        self.0.iter().try_for_each(|&i| matrix.check_generator(i))
    }

    /// The word with `letter` appended on the right.
    pub fn push(&self, letter: usize) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// Comma-separated form accepted by [`Word::from_str`].
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for i in &self.0 {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"2,1,3"`; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("malformed word `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A Coxeter group together with its reflection representation.
#[derive(Debug)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    cartan: Vec<i64>,
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> Arc<Self> {
        let cartan = matrix.cartan();
        Arc::new(CoxeterGroup { matrix, cartan })
    }

    pub fn from_name(name: &str) -> Result<Arc<Self>> {
        Ok(CoxeterGroup::new(CoxeterMatrix::from_name(name)?))
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank
    }

    pub fn identity(self: &Arc<Self>) -> GroupElement {
        let n = self.rank();
        let mut id = vec![0i64; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        GroupElement {
            group: Arc::clone(self),
            matrix: id.clone(),
            inverse: id,
            word: Word::empty(),
        }
    }

    pub fn generator(self: &Arc<Self>, index: usize) -> Result<GroupElement> {
        self.element(&Word(vec![index]))
    }

    /// The product of the simple reflections listed in `word`.
    pub fn element(self: &Arc<Self>, word: &Word) -> Result<GroupElement> {
        word.validate(&self.matrix)?;
        let id = self.identity();
        let (mut matrix, mut inverse) = (id.matrix, id.inverse);
        for &i in word.letters() {
            self.right_reflect(&mut matrix, i - 1);
            self.left_reflect(&mut inverse, i - 1);
        }
        Ok(self.canonicalize(matrix, inverse))
    }

    pub fn is_reduced(self: &Arc<Self>, word: &Word) -> Result<bool> {
        Ok(self.element(word)?.length() == word.len())
    }

    /// Every element of length at most `bound`, sorted by length and then by
    /// canonical word. Finite even for infinite groups.
    pub fn elements_up_to_length(self: &Arc<Self>, bound: usize) -> Vec<GroupElement> {
        let mut seen: HashMap<Word, GroupElement> = HashMap::new();
        let mut queue = VecDeque::new();
        let id = self.identity();
        seen.insert(id.word.clone(), id.clone());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            if w.length() == bound {
                continue;
            }
            for i in 1..=self.rank() {
                let next = w.mul_generator(i);
                if next.length() > w.length() && !seen.contains_key(&next.word) {
                    seen.insert(next.word.clone(), next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<_> = seen.into_values().collect();
        out.sort();
        out
    }

    /// `m ← m·s_i`
    fn right_reflect(&self, m: &mut [i64], i: usize) {
        let n = self.rank();
        let col_i: Vec<i64> = (0..n).map(|r| m[r * n + i]).collect();
        for j in 0..n {
            let a = self.cartan[i * n + j];
            if a == 0 {
                continue;
            }
            for r in 0..n {
                m[r * n + j] -= a * col_i[r];
            }
        }
    }

    /// `m ← s_i·m`
    fn left_reflect(&self, m: &mut [i64], i: usize) {
        let n = self.rank();
        let mut row = vec![0i64; n];
        for l in 0..n {
            let a = self.cartan[i * n + l];
            if a == 0 {
                continue;
            }
            for (c, slot) in row.iter_mut().enumerate() {
                *slot += a * m[l * n + c];
            }
        }
        for (c, delta) in row.into_iter().enumerate() {
            m[i * n + c] -= delta;
        }
    }

    /// Column `i` of `m` is a negative root.
    fn column_negative(&self, m: &[i64], i: usize) -> bool {
        let n = self.rank();
        (0..n)
            .map(|r| m[r * n + i])
            .find(|&x| x != 0)
            .is_some_and(|x| x < 0)
    }

    /// Builds an element from its matrix pair, extracting the
    /// lexicographically least reduced word by repeatedly stripping the
    /// smallest left descent.
    fn canonicalize(self: &Arc<Self>, matrix: Vec<i64>, inverse: Vec<i64>) -> GroupElement {
        let (mut m, mut inv) = (matrix.clone(), inverse.clone());
        let mut letters = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.column_negative(&inv, i)) {
            self.left_reflect(&mut m, i);
            self.right_reflect(&mut inv, i);
            letters.push(i + 1);
        }
        GroupElement {
            group: Arc::clone(self),
            matrix,
            inverse,
            word: Word(letters),
        }
    }
}

/// An element of a [`CoxeterGroup`].
///
/// Equality, hashing and ordering go through the canonical word, ordered
/// first by length.
#[derive(Clone)]
pub struct GroupElement {
    group: Arc<CoxeterGroup>,
    matrix: Vec<i64>,
    inverse: Vec<i64>,
    word: Word,
}

impl GroupElement {
    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn canonical_word(&self) -> &Word {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action on the root lattice, row-major.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn same_group(&self, other: &GroupElement) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group.matrix == other.group.matrix
    }

    /// `l(w s_i) < l(w)`, read off from the sign of `w(α_i)`.
    pub fn right_descent(&self, i: usize) -> Result<bool> {
        self.group.matrix.check_generator(i)?;
        Ok(self.group.column_negative(&self.matrix, i - 1))
    }

    /// `l(s_i w) < l(w)`.
    pub fn left_descent(&self, i: usize) -> Result<bool> {
        self.group.matrix.check_generator(i)?;
        Ok(self.group.column_negative(&self.inverse, i - 1))
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..=self.group.rank())
            .filter(|&i| self.group.column_negative(&self.matrix, i - 1))
            .collect()
    }

    /// `w·s_i`. Panics if `i` is not a generator of the group.
    pub fn mul_generator(&self, i: usize) -> GroupElement {
        assert!(i >= 1 && i <= self.group.rank(), "generator s{i} out of range");
        let (mut m, mut inv) = (self.matrix.clone(), self.inverse.clone());
        self.group.right_reflect(&mut m, i - 1);
        self.group.left_reflect(&mut inv, i - 1);
        self.group.canonicalize(m, inv)
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        let n = self.group.rank();
        let product = |a: &[i64], b: &[i64]| {
            let mut out = vec![0i64; n * n];
            for r in 0..n {
                for k in 0..n {
                    let x = a[r * n + k];
                    if x == 0 {
                        continue;
                    }
                    for c in 0..n {
                        out[r * n + c] += x * b[k * n + c];
                    }
                }
            }
            out
        };
        let m = product(&self.matrix, &other.matrix);
        let inv = product(&other.inverse, &self.inverse);
        Ok(self.group.canonicalize(m, inv))
    }

    pub fn inverse(&self) -> GroupElement {
        self.group
            .canonicalize(self.inverse.clone(), self.matrix.clone())
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.length(), &self.word).cmp(&(other.length(), &other.word))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}
