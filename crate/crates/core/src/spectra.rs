//! Label-level models of torus-invariant prime spectra, and pipelines that
//! grow them one Ore extension at a time next to a Bruhat interval.
//!
//! A prime is recorded by a set of normal generators. Membership of a
//! monomial is divisibility by one of the generators of the prime or of a
//! prime below it. Scalars are dropped everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bruhat::{interval, partition, Block, BruhatInterval, BruhatPartition};
use crate::coxeter::{CoxeterGroup, CoxeterMatrix, Word};
use crate::error::{Error, Result};
use crate::extension::{
    commuting_square, extend_iso, ore_step, projection_fibers, validate_setup, SpectrumPartition, SquareReport,
};
use crate::poset::{find_isomorphism, BlockConstraint, LabeledPoset, PosetMap};

/// Environment variable naming a directory of `<name>.json` pipeline files
/// that take precedence over the shipped ones.
pub const DATA_ENV: &str = "BRUHATSPEC_DATA";

/// A product of symbols, or the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "MonomialJson", into = "MonomialJson")]
pub struct Monomial {
    pub factors: Vec<String>,
    pub is_unit: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MonomialJson {
    Factors(Vec<String>),
    Tagged {
        #[serde(default)]
        factors: Vec<String>,
        #[serde(default)]
        unit: bool,
    },
}

impl From<MonomialJson> for Monomial {
    fn from(json: MonomialJson) -> Self {
        match json {
            MonomialJson::Factors(factors) | MonomialJson::Tagged { factors, .. } if factors.is_empty() => {
                Monomial::unit()
            }
            MonomialJson::Factors(factors) | MonomialJson::Tagged { factors, .. } => Monomial::new(factors),
        }
    }
}

impl From<Monomial> for MonomialJson {
    fn from(m: Monomial) -> Self {
        if m.is_unit {
            MonomialJson::Tagged {
                factors: Vec::new(),
                unit: true,
            }
        } else {
            MonomialJson::Factors(m.factors)
        }
    }
}

impl Monomial {
    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = S>) -> Self {
        let factors: Vec<String> = factors.into_iter().map(Into::into).collect();
        let is_unit = factors.is_empty();
        Monomial { factors, is_unit }
    }

    pub fn unit() -> Self {
        Monomial {
            factors: Vec::new(),
            is_unit: true,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit {
            write!(f, "1")
        } else {
            write!(f, "{}", self.factors.join("·"))
        }
    }
}

/// The normal generators of a prime. The zero ideal has none.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeLabel {
    pub generators: BTreeSet<String>,
}

impl PrimeLabel {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Self {
        PrimeLabel {
            generators: generators.into_iter().map(Into::into).collect(),
        }
    }

    pub fn zero() -> Self {
        PrimeLabel::default()
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        write!(f, "<{}>", names.join(","))
    }
}

/// True iff some factor of `m` is a generator of `p`. The unit is in no
/// prime.
pub fn in_ideal(m: &Monomial, p: &PrimeLabel) -> bool {
    !m.is_unit && m.factors.iter().any(|x| p.generators.contains(x))
}

/// The primes of one algebra in the tower, with the derivation of the next
/// Ore step.
#[derive(Clone, Debug)]
pub struct SpectrumModel {
    symbols: BTreeSet<String>,
    primes: Vec<PrimeLabel>,
    poset: LabeledPoset,
    pub delta: BTreeMap<String, Vec<Monomial>>,
    pub rewrites: BTreeMap<String, String>,
}

impl SpectrumModel {
    /// Builds a model. `order` lists relations `p ≤ q` by index; the
    /// transitive closure is taken, and inclusion of labels must imply
    /// order.
    pub fn new(
        symbols: BTreeSet<String>,
        primes: Vec<PrimeLabel>,
        order: &[(usize, usize)],
        rank: Option<Vec<i64>>,
    ) -> Result<Self> {
        let labels = primes.iter().map(ToString::to_string).collect();
        let poset = LabeledPoset::build(labels, order)?;
        let poset = match rank {
            Some(r) => poset.with_rank(r)?,
            None => poset,
        };
        SpectrumModel::from_poset(symbols, primes, poset)
    }

    fn from_poset(symbols: BTreeSet<String>, primes: Vec<PrimeLabel>, poset: LabeledPoset) -> Result<Self> {
        let model = SpectrumModel {
            symbols,
            primes,
            poset,
            delta: BTreeMap::new(),
            rewrites: BTreeMap::new(),
        };
        model.check()?;
        Ok(model)
    }

    /// The spectrum of the base field: the zero ideal alone.
    pub fn base() -> Self {
        SpectrumModel::new(BTreeSet::new(), vec![PrimeLabel::zero()], &[], Some(vec![0]))
            .expect("a single prime is a valid model")
    }

    fn check(&self) -> Result<()> {
        for p in &self.primes {
            if let Some(g) = p.generators.iter().find(|g| !self.symbols.contains(*g)) {
                return Err(Error::Model(format!("prime {p} uses unknown symbol `{g}`")));
            }
        }
        let n = self.primes.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.primes[i].generators.is_subset(&self.primes[j].generators) && !self.poset.leq(i, j) {
                    return Err(Error::Model(format!(
                        "{} ⊆ {} as labels but not in the order",
                        self.primes[i], self.primes[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn symbols(&self) -> &BTreeSet<String> {
        &self.symbols
    }

    pub fn primes(&self) -> &[PrimeLabel] {
        &self.primes
    }

    pub fn poset(&self) -> &LabeledPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// All generators of `p` and of the primes below it.
    pub fn saturated(&self, p: usize) -> PrimeLabel {
        let generators = (0..self.len())
            .filter(|&q| self.poset.leq(q, p))
            .flat_map(|q| self.primes[q].generators.iter().cloned())
            .collect();
        PrimeLabel { generators }
    }

    fn images(&self) -> impl Iterator<Item = &Monomial> {
        self.delta.values().flatten()
    }

    fn image_of(&self, symbol: &str) -> &[Monomial] {
        self.delta.get(symbol).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Sorts the primes into `P3` (containing every δ-image), `P2`
    /// (δ-stable otherwise) and `P1` (the rest), and derives partners.
    pub fn classify(&self) -> Result<SpectrumPartition> {
        let (mut p1, mut p2, mut p3) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for p in 0..self.len() {
            let sat = self.saturated(p);
            if self.images().all(|m| in_ideal(m, &sat)) {
                p3.insert(p);
            } else if sat
                .generators
                .iter()
                .all(|g| self.image_of(g).iter().all(|m| in_ideal(m, &sat)))
            {
                p2.insert(p);
            } else {
                p1.insert(p);
            }
        }
        SpectrumPartition::new(self.poset.clone(), p1, p2, p3, &BTreeMap::new())
    }
}

/// Coxeter system of a pipeline: a builtin name or an explicit matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoxeterSpec {
    Name(String),
    Matrix(CoxeterMatrix),
}

impl CoxeterSpec {
    pub fn group(&self) -> Result<Arc<CoxeterGroup>> {
        match self {
            CoxeterSpec::Name(name) => CoxeterGroup::from_name(name),
            CoxeterSpec::Matrix(m) => Ok(CoxeterGroup::new(m.clone())),
        }
    }
}

/// One Ore extension. `gen: None` adjoins a variable without moving the
/// Bruhat side, which is only possible when no prime contains `δ(R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSpec {
    pub gen: Option<usize>,
    pub var: String,
    #[serde(default)]
    pub delta: BTreeMap<String, Vec<Monomial>>,
    #[serde(default)]
    pub rewrite: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(default)]
    pub size: Option<usize>,
    #[serde(default)]
    pub rank_profile: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineSpec {
    #[serde(default)]
    pub name: String,
    pub coxeter: CoxeterSpec,
    pub steps: Vec<StepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    /// How the generator indices are written in the corresponding figure.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub figure_digits: BTreeMap<String, String>,
}

impl PipelineSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pipeline specs serialize")
    }

    /// The word `w̄` reached after all steps.
    pub fn word(&self) -> Word {
        Word(self.steps.iter().filter_map(|s| s.gen).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sizes {
    #[serde(rename = "P")]
    pub p: usize,
    #[serde(rename = "P1")]
    pub p1: usize,
    #[serde(rename = "P2")]
    pub p2: usize,
    #[serde(rename = "P3")]
    pub p3: usize,
    pub new: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub var: String,
    pub gen: Option<usize>,
    pub hypothesis_a: bool,
    pub hypothesis_b: bool,
    pub square_commutes: bool,
    /// `∇` had to be rechosen to match the blocks `W_i ↔ P_i`.
    pub realigned: bool,
    pub sizes: Sizes,
    #[serde(skip)]
    pub square: SquareReport,
}

/// Final state of a pipeline.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub name: String,
    pub group: Arc<CoxeterGroup>,
    pub word: Word,
    pub interval: BruhatInterval,
    pub model: SpectrumModel,
    /// `∇: [1, w̄] → spectrum`, by index.
    pub nabla: PosetMap,
    pub steps: Vec<StepReport>,
    /// Every partition visited, in order.
    pub partitions: Vec<BruhatPartition>,
    pub expect: Option<Expectation>,
}

impl PipelineRun {
    pub fn poset(&self) -> &LabeledPoset {
        self.model.poset()
    }

    /// `None` when the spec declares no expectation.
    pub fn expectation_met(&self) -> Option<bool> {
        let e = self.expect.as_ref()?;
        let size_ok = e.size.is_none_or(|s| s == self.poset().len());
        let profile_ok = e.rank_profile.as_ref().is_none_or(|r| Some(r) == self.poset().rank_profile().as_ref());
        Some(size_ok && profile_ok)
    }

    /// The prime matched with a Bruhat element.
    pub fn prime_of(&self, w: &Word) -> Option<&PrimeLabel> {
        let element = self.group.element(w).ok()?;
        let i = self.interval.index_of(&element)?;
        Some(&self.model.primes()[self.nabla.apply(i)])
    }

    pub fn report_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            pipeline: &'a str,
            word: String,
            size: usize,
            rank_profile: Option<Vec<usize>>,
            expectation_met: Option<bool>,
            steps: &'a [StepReport],
        }
        serde_json::to_string_pretty(&Out {
            pipeline: &self.name,
            word: self.word.to_string(),
            size: self.poset().len(),
            rank_profile: self.poset().rank_profile(),
            expectation_met: self.expectation_met(),
            steps: &self.steps,
        })
        .expect("reports serialize")
    }
}

/// Runs every step of `spec`, checking the hypotheses and the commuting
/// square along the way. Errors name the step (1-based) that failed.
pub fn run_pipeline(spec: &PipelineSpec) -> Result<PipelineRun> {
    let name = if spec.name.is_empty() { "pipeline".to_string() } else { spec.name.clone() };
    if spec.steps.is_empty() {
        return Err(Error::Model(format!("pipeline `{name}` has no steps")));
    }
    let group = spec.coxeter.group()?;
    let mut word = Word::empty();
    let mut current = interval(&group, &word)?;
    let mut model = SpectrumModel::base();
    let mut nabla = vec![0usize];
    let mut steps = Vec::new();
    let mut partitions = Vec::new();

    for (k, step) in spec.steps.iter().enumerate() {
        let wrap = |e: Error| Error::Step {
            pipeline: name.clone(),
            step: k + 1,
            source: Box::new(e),
        };
        model.delta = step.delta.clone();
        model.rewrites = step.rewrite.clone();
        let outcome = apply_step(&group, &word, &current, &model, &nabla, step).map_err(wrap)?;
        let report = StepReport {
            step: k + 1,
            var: step.var.clone(),
            gen: step.gen,
            hypothesis_a: true,
            hypothesis_b: true,
            square_commutes: outcome.square.passed(),
            realigned: outcome.realigned,
            sizes: outcome.sizes,
            square: outcome.square,
        };
        if !report.square_commutes {
            return Err(wrap(Error::Extension(report.square.failures.join("; "))));
        }
        steps.push(report);
        model = outcome.model;
        nabla = outcome.nabla;
        if let Some(part) = outcome.partition {
            word = word.push(part.generator());
            current = part.outer().clone();
            partitions.push(part);
        }
    }
    let nabla = PosetMap::new(current.poset(), model.poset(), nabla)?;
    if !nabla.is_isomorphism() {
        return Err(Error::Extension(format!("pipeline `{name}`: final map is not an isomorphism")));
    }
    Ok(PipelineRun {
        name,
        group,
        word,
        interval: current,
        model,
        nabla,
        steps,
        partitions,
        expect: spec.expect.clone(),
    })
}

struct StepOutcome {
    model: SpectrumModel,
    nabla: Vec<usize>,
    partition: Option<BruhatPartition>,
    square: SquareReport,
    sizes: Sizes,
    realigned: bool,
}

fn apply_step(
    group: &Arc<CoxeterGroup>,
    word: &Word,
    current: &BruhatInterval,
    model: &SpectrumModel,
    nabla: &[usize],
    step: &StepSpec,
) -> Result<StepOutcome> {
    if model.symbols().contains(&step.var) {
        return Err(Error::Model(format!("variable `{}` is already in use", step.var)));
    }
    let sp = model.classify()?;
    let sizes = Sizes {
        p: model.len(),
        p1: sp.p1.len(),
        p2: sp.p2.len(),
        p3: sp.p3.len(),
        new: model.len() + sp.p3.len(),
    };
    let (setup, iota) = ore_step(&sp, &step.var)?;
    if let Some(v) = validate_setup(&setup).violation {
        return Err(Error::Extension(v));
    }
    let next = next_model(model, &sp, &setup.ptilde, &step.var)?;
    let lift = |nabla: &[usize]| nabla.iter().map(|&p| iota.apply(p)).collect::<Vec<_>>();

    let Some(a) = step.gen else {
        if !sp.p3.is_empty() {
            return Err(Error::Hypothesis {
                clause: "a step without a generator needs P3 = ∅".into(),
                element: model.primes()[*sp.p3.first().unwrap()].to_string(),
            });
        }
        let square = projection_fibers(&sp, &setup, &iota);
        return Ok(StepOutcome {
            model: next,
            nabla: lift(nabla),
            partition: None,
            square,
            sizes,
            realigned: false,
        });
    };

    let part = partition(group, word, a)?;
    let (nabla, realigned) = align(current, &part, &sp, nabla)?;
    let nabla_map = PosetMap::new(current.poset(), model.poset(), nabla.clone())?;
    let lifted = PosetMap::new(current.poset(), &setup.ptilde, lift(&nabla))?;
    let extended = extend_iso(&lifted, &part, &setup)?;
    let square = commuting_square(&nabla_map, &extended, &part, &sp, &setup, &iota);
    Ok(StepOutcome {
        model: next,
        nabla: extended.assignment().to_vec(),
        partition: Some(part),
        square,
        sizes,
        realigned,
    })
}

/// Keeps `∇` if it already sends `W_i` onto `P_i`, otherwise searches for
/// an isomorphism that does.
fn align(
    current: &BruhatInterval,
    part: &BruhatPartition,
    sp: &SpectrumPartition,
    nabla: &[usize],
) -> Result<(Vec<usize>, bool)> {
    let blocks = [
        (part.inner_block(Block::W1), &sp.p1),
        (part.inner_block(Block::W2), &sp.p2),
        (part.inner_block(Block::W3), &sp.p3),
    ];
    let aligned = blocks.iter().all(|(w, p)| {
        let image: BTreeSet<usize> = w.iter().map(|&x| nabla[x]).collect();
        image == **p
    });
    if aligned {
        return Ok((nabla.to_vec(), false));
    }
    let constraints: Vec<BlockConstraint> = blocks.iter().map(|(w, p)| (w.clone(), (*p).clone())).collect();
    match find_isomorphism(current.poset(), &sp.poset, &constraints) {
        Some(m) => Ok((m.assignment().to_vec(), true)),
        None => Err(Error::Hypothesis {
            clause: "∇(W_i) = P_i".into(),
            element: format!(
                "no isomorphism; |W1|,|W2|,|W3| = {},{},{} vs |P1|,|P2|,|P3| = {},{},{}",
                blocks[0].0.len(),
                blocks[1].0.len(),
                blocks[2].0.len(),
                sp.p1.len(),
                sp.p2.len(),
                sp.p3.len()
            ),
        }),
    }
}

/// The spectrum after adjoining `var`: old primes keep their generators
/// (rewritten on `P1`), and each prime of `P3` gains a copy with `var`.
fn next_model(model: &SpectrumModel, sp: &SpectrumPartition, ptilde: &LabeledPoset, var: &str) -> Result<SpectrumModel> {
    let mut symbols = model.symbols().clone();
    symbols.insert(var.to_string());
    symbols.extend(model.rewrites.values().cloned());
    let mut primes: Vec<PrimeLabel> = model
        .primes()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if !sp.p1.contains(&i) {
                return p.clone();
            }
            let generators = p
                .generators
                .iter()
                .map(|g| model.rewrites.get(g).unwrap_or(g).clone())
                .collect();
            PrimeLabel { generators }
        })
        .collect();
    for &q in &sp.p3 {
        let mut label = model.primes()[q].clone();
        label.generators.insert(var.to_string());
        primes.push(label);
    }
    let labels = primes.iter().map(ToString::to_string).collect();
    let poset = ptilde.clone().relabel(labels)?;
    SpectrumModel::from_poset(symbols, primes, poset)
}

/// Length of the longest chain of a graded poset.
pub fn height(poset: &LabeledPoset) -> Result<usize> {
    let rank = poset
        .rank()
        .ok_or_else(|| Error::InvalidRank("height needs a graded poset".into()))?;
    let lo = rank.iter().min().copied().unwrap_or(0);
    let hi = rank.iter().max().copied().unwrap_or(0);
    Ok((hi - lo) as usize)
}

fn step(gen: Option<usize>, var: &str, delta: &[(&str, Vec<Monomial>)], rewrite: &[(&str, &str)]) -> StepSpec {
    StepSpec {
        gen,
        var: var.to_string(),
        delta: delta.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        rewrite: rewrite.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
    }
}

fn mono(factors: &[&str]) -> Monomial {
    Monomial::new(factors.iter().copied())
}

/// Quantum affine `n`-space: `n` commuting-up-to-scalar variables, δ = 0.
pub fn qaffine(n: usize) -> Result<PipelineSpec> {
    if n == 0 {
        return Err(Error::UnknownBuiltin("qaffine(0)".into()));
    }
    let steps = (1..=n).map(|i| step(Some(i), &format!("x{i}"), &[], &[])).collect();
    Ok(PipelineSpec {
        name: format!("qaffine{n}"),
        coxeter: CoxeterSpec::Name(format!("A{n}")),
        steps,
        expect: Some(Expectation {
            size: Some(1 << n),
            rank_profile: Some((0..=n).map(|k| binomial(n, k)).collect()),
        }),
        caveat: None,
        figure_digits: BTreeMap::new(),
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Quantized Weyl algebra on `2n` generators. Variables are adjoined as
/// `x_n, …, x_1, y_1, …, y_n`; the word reached is `s_n⋯s_1s_2⋯s_n`.
pub fn weyl(n: usize) -> Result<PipelineSpec> {
    if n == 0 {
        return Err(Error::UnknownBuiltin("weyl(0)".into()));
    }
    let mut steps: Vec<StepSpec> = (1..=n).rev().map(|i| step(Some(i), &format!("x{i}"), &[], &[])).collect();
    steps.push(step(None, "y1", &[("x1", vec![Monomial::unit()])], &[("x1", "Ω1")]));
    for k in 2..=n {
        let x = format!("x{k}");
        let prev = format!("Ω{}", k - 1);
        let omega = format!("Ω{k}");
        steps.push(step(
            Some(k),
            &format!("y{k}"),
            &[(x.as_str(), vec![mono(&[prev.as_str()])])],
            &[(x.as_str(), omega.as_str())],
        ));
    }
    Ok(PipelineSpec {
        name: format!("weyl{n}"),
        coxeter: CoxeterSpec::Name(format!("A{n}")),
        steps,
        expect: None,
        caveat: Some(NORMAL_GENERATOR_CAVEAT.into()),
        figure_digits: BTreeMap::new(),
    })
}

/// Horton's algebra `K_n` over the type `D_{n+1}` system. Figure index
/// `s_0` is generator 1, `s_k` is generator `k + 1`; the word reached is
/// `s_n⋯s_2s_1s_0s_2⋯s_n`.
pub fn horton(n: usize) -> Result<PipelineSpec> {
    if n < 2 {
        return Err(Error::UnknownBuiltin(format!("horton({n}) needs n ≥ 2")));
    }
    let mut steps: Vec<StepSpec> = (2..=n).rev().map(|i| step(Some(i + 1), &format!("x{i}"), &[], &[])).collect();
    steps.push(step(Some(2), "x1", &[], &[]));
    steps.push(step(Some(1), "y1", &[], &[]));
    steps.push(step(Some(3), "y2", &[("x2", vec![mono(&["y1", "x1"])])], &[("x2", "Ω2")]));
    for k in 3..=n {
        let x = format!("x{k}");
        let prev = format!("Ω{}", k - 1);
        let omega = format!("Ω{k}");
        steps.push(step(
            Some(k + 1),
            &format!("y{k}"),
            &[(x.as_str(), vec![mono(&[prev.as_str()])])],
            &[(x.as_str(), omega.as_str())],
        ));
    }
    let figure_digits = (0..=n).map(|k| ((k + 1).to_string(), format!("s{k}"))).collect();
    Ok(PipelineSpec {
        name: format!("horton{n}"),
        coxeter: CoxeterSpec::Name(format!("D{}", n + 1)),
        steps,
        expect: None,
        caveat: Some(NORMAL_GENERATOR_CAVEAT.into()),
        figure_digits,
    })
}

const NORMAL_GENERATOR_CAVEAT: &str =
    "primes are modeled by sets of normal generators with divisibility membership";

const SHIPPED: &[(&str, &str)] = &[
    ("qmatrix2", include_str!("../data/qmatrix2.json")),
    ("m2-ext-A3", include_str!("../data/m2-ext-A3.json")),
    ("m2-ext-affineA2", include_str!("../data/m2-ext-affineA2.json")),
];

/// Names accepted by [`builtin`], with `n` as a placeholder.
pub const BUILTIN_NAMES: &[&str] = &["qaffine(n)", "qmatrix2", "weyl(n)", "horton(n)", "m2-ext-A3", "m2-ext-affineA2"];

/// Looks up a shipped pipeline. `qaffine`, `weyl` and `horton` take a
/// parameter written as `weyl3` or `weyl(3)`. A file `<name>.json` in the
/// directory named by `BRUHATSPEC_DATA` overrides the shipped version.
pub fn builtin(name: &str) -> Result<PipelineSpec> {
    if let Some(dir) = std::env::var_os(DATA_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.exists() {
            let mut spec = PipelineSpec::from_json(&std::fs::read_to_string(path)?)?;
            if spec.name.is_empty() {
                spec.name = name.to_string();
            }
            return Ok(spec);
        }
    }
    if let Some((_, text)) = SHIPPED.iter().find(|(n, _)| *n == name) {
        return PipelineSpec::from_json(text);
    }
    for (family, make) in [
        ("qaffine", qaffine as fn(usize) -> Result<PipelineSpec>),
        ("weyl", weyl),
        ("horton", horton),
    ] {
        if let Some(rest) = name.strip_prefix(family) {
            let digits = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            if let Ok(n) = digits.parse::<usize>() {
                return make(n);
            }
        }
    }
    Err(Error::UnknownBuiltin(name.to_string()))
}

/// Reads a pipeline from a JSON file, or falls back to [`builtin`].
pub fn load_pipeline(name_or_path: &str) -> Result<PipelineSpec> {
    let path = std::path::Path::new(name_or_path);
    if path.extension().is_some_and(|e| e == "json") || path.is_file() {
        let mut spec = PipelineSpec::from_json(&std::fs::read_to_string(path)?)?;
        if spec.name.is_empty() {
            spec.name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
        }
        return Ok(spec);
    }
    builtin(name_or_path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_isomorphic;

    #[test]
    fn membership() {
        let p = PrimeLabel::new(["x2"]);
        assert!(in_ideal(&mono(&["x2", "x3"]), &p));
        assert!(!in_ideal(&Monomial::unit(), &p));
        assert!(!in_ideal(&mono(&["x2", "x3"]), &PrimeLabel::new(["x1"])));
    }

    #[test]
    fn monomial_json_forms() {
        let m: Vec<Monomial> = serde_json::from_str(r#"[["x2","x3"], [], {"factors":[],"unit":true}]"#).unwrap();
        assert_eq!(m[0], mono(&["x2", "x3"]));
        assert!(m[1].is_unit && m[2].is_unit);
        assert_eq!(serde_json::to_string(&Monomial::unit()).unwrap(), r#"{"factors":[],"unit":true}"#);
    }

    fn affine3_model() -> SpectrumModel {
        let run = run_pipeline(&PipelineSpec {
            name: "k3".into(),
            coxeter: CoxeterSpec::Name("A3".into()),
            steps: vec![
                step(Some(2), "x1", &[], &[]),
                step(Some(1), "x2", &[], &[]),
                step(Some(3), "x3", &[], &[]),
            ],
            expect: None,
            caveat: None,
            figure_digits: BTreeMap::new(),
        })
        .unwrap();
        run.model
    }

    #[test]
    fn classify_quantum_matrix_step() {
        let mut model = affine3_model();
        model.delta = [("x1".to_string(), vec![mono(&["x2", "x3"])])].into();
        let sp = model.classify().unwrap();
        let names = |set: &BTreeSet<usize>| set.iter().map(|&i| model.primes()[i].to_string()).collect::<Vec<_>>();
        assert_eq!(sp.p3.len(), 6);
        assert_eq!(names(&sp.p2), ["0"]);
        assert_eq!(names(&sp.p1), ["<x1>"]);
    }

    #[test]
    fn classify_zero_derivation() {
        let model = affine3_model();
        let sp = model.classify().unwrap();
        assert_eq!(sp.p3.len(), 8);
        assert!(sp.p1.is_empty() && sp.p2.is_empty());
    }

    #[test]
    fn classify_unit_image() {
        let run = run_pipeline(&qaffine(1).unwrap()).unwrap();
        let mut model = run.model;
        model.delta = [("x1".to_string(), vec![Monomial::unit()])].into();
        let sp = model.classify().unwrap();
        assert!(sp.p3.is_empty());
        assert_eq!(sp.p2.len(), 1);
        assert_eq!(sp.p1.len(), 1);
    }

    #[test]
    fn qaffine_one_is_two_chain() {
        let run = run_pipeline(&builtin("qaffine(1)").unwrap()).unwrap();
        assert!(is_isomorphic(run.poset(), &LabeledPoset::two_chain()));
        assert_eq!(run.expectation_met(), Some(true));
    }

    #[test]
    fn qmatrix2_height() {
        let run = run_pipeline(&builtin("qmatrix2").unwrap()).unwrap();
        assert_eq!(run.poset().len(), 14);
        assert_eq!(height(run.poset()).unwrap(), 4);
        assert_eq!(run.prime_of(&Word(vec![2])).unwrap().to_string(), "<Dq>");
    }

    #[test]
    fn weyl_sizes_and_label() {
        let run = run_pipeline(&weyl(3).unwrap()).unwrap();
        assert_eq!(run.poset().len(), 20);
        assert_eq!(run.poset().rank_profile().unwrap(), [1, 3, 5, 6, 4, 1]);
        assert_eq!(run.prime_of(&Word(vec![3])).unwrap().to_string(), "<Ω3>");
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin("nope"), Err(Error::UnknownBuiltin(_))));
        assert!(builtin("horton1").is_err());
    }
}
