//! The verification suite behind `bruhatspec selftest`: one check per
//! acceptance criterion, each reported with its timing.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::bruhat::{bruhat_leq, check_lifting, interval, partition, BruhatPartition};
use crate::coxeter::{CoxeterGroup, GroupElement, Word};
use crate::error::{Error, Result};
use crate::poset::{is_isomorphic, product, LabeledPoset};
use crate::pushout::pushout_square;
use crate::spectra::{builtin, height, run_pipeline, PipelineRun};

/// `|[1, s₃s₂s₁s₀s₂s₃]|` in type `D₄`.
pub const HORTON3_SIZE: usize = 48;

/// Every shipped pipeline exercised by the suite.
pub const BUILTIN_RUNS: &[&str] = &[
    "qaffine1",
    "qaffine2",
    "qaffine3",
    "qaffine4",
    "qaffine5",
    "qmatrix2",
    "m2-ext-A3",
    "m2-ext-affineA2",
    "weyl1",
    "weyl2",
    "weyl3",
    "horton2",
    "horton3",
];

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    /// One line per criterion. Timings are appended only when asked for, so
    /// the rest of the report is byte-for-byte reproducible.
    pub fn render(&self, timing: bool) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{status}] {:>2} {}: {}", c.id, c.name, c.detail));
            if timing {
                out.push_str(&format!(" ({:.3}s)", c.elapsed.as_secs_f64()));
            }
            out.push('\n');
        }
        let failed = self.criteria.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{} criteria, {} failed\n", self.criteria.len(), failed));
        out
    }
}

type Check = fn(&mut Context) -> Result<(bool, String)>;

pub const CRITERIA: &[(usize, &str, Check)] = &[
    (1, "oracle equivalence", oracle_equivalence),
    (2, "weyl algebra interval", weyl_figure),
    (3, "quantum matrix extension", m2_ext_a3),
    (4, "affine extension", m2_ext_affine),
    (5, "horton interval", horton_figure),
    (6, "pushout sweep", pushout_sweep),
    (7, "doubling when a is not below", times_two),
    (8, "quantum affine space", quantum_affine),
    (9, "heights", heights),
    (10, "commuting squares", commuting_squares),
    (11, "partition laws", partition_laws),
    (12, "lifting property", lifting),
];

/// State shared between criteria: partitions visited along the way are
/// collected for the partition-law check.
#[derive(Default)]
pub struct Context {
    partitions: Vec<BruhatPartition>,
}

impl Context {
    fn run(&mut self, name: &str) -> Result<PipelineRun> {
        let run = run_pipeline(&builtin(name)?)?;
        self.partitions.extend(run.partitions.iter().cloned());
        Ok(run)
    }
}

/// Runs every criterion in order.
pub fn run_selftest() -> SelftestReport {
    let mut ctx = Context::default();
    let criteria = CRITERIA
        .iter()
        .map(|&(id, name, check)| {
            let start = Instant::now();
            let (passed, detail) = match check(&mut ctx) {
                Ok(r) => r,
                Err(e) => (false, e.to_string()),
            };
            CriterionOutcome {
                id,
                name,
                passed,
                detail,
                elapsed: start.elapsed(),
            }
        })
        .collect();
    SelftestReport { criteria }
}

/// `u ≤ v` iff `u` is the product of some subword of a reduced word of `v`.
fn subword_leq(u: &GroupElement, v: &GroupElement) -> Result<bool> {
    let letters = v.canonical_word().letters().to_vec();
    let group = v.group();
    for mask in 0u32..(1 << letters.len()) {
        if mask.count_ones() as usize != u.length() {
            continue;
        }
        let sub: Vec<usize> = (0..letters.len()).filter(|i| mask & (1 << i) != 0).map(|i| letters[i]).collect();
        if group.element(&Word(sub))? == *u {
            return Ok(true);
        }
    }
    Ok(false)
}

fn oracle_equivalence(_: &mut Context) -> Result<(bool, String)> {
    let g = CoxeterGroup::from_name("A3")?;
    let all = g.elements_up_to_length(6);
    let mut mismatches = 0;
    for u in &all {
        for v in &all {
            if bruhat_leq(u, v)? != subword_leq(u, v)? {
                mismatches += 1;
            }
        }
    }
    let pairs = all.len() * all.len();
    Ok((pairs == 576 && mismatches == 0, format!("{pairs} pairs, {mismatches} mismatches")))
}

fn matches_interval(run: &PipelineRun, group: &str, word: &[usize], size: usize, profile: &[usize]) -> Result<(bool, String)> {
    let g = CoxeterGroup::from_name(group)?;
    let target = interval(&g, &Word(word.to_vec()))?;
    let got = run.poset().rank_profile().unwrap_or_default();
    let ok = target.len() == size
        && target.rank_profile() == profile
        && run.poset().len() == size
        && got == profile
        && is_isomorphic(run.poset(), target.poset());
    Ok((ok, format!("{} primes, ranks {:?}, interval {} elements", run.poset().len(), got, target.len())))
}

fn weyl_figure(ctx: &mut Context) -> Result<(bool, String)> {
    let run = ctx.run("weyl3")?;
    let (ok, detail) = matches_interval(&run, "A3", &[3, 2, 1, 2, 3], 20, &[1, 3, 5, 6, 4, 1])?;
    let label = run
        .prime_of(&Word(vec![3]))
        .map(ToString::to_string)
        .unwrap_or_default();
    Ok((ok && label == "<Ω3>", format!("{detail}, s3 ↦ {label}")))
}

fn m2_ext_a3(ctx: &mut Context) -> Result<(bool, String)> {
    let run = ctx.run("m2-ext-A3")?;
    matches_interval(&run, "A3", &[2, 1, 3, 2, 1], 18, &[1, 3, 5, 5, 3, 1])
}

fn m2_ext_affine(ctx: &mut Context) -> Result<(bool, String)> {
    let run = ctx.run("m2-ext-affineA2")?;
    matches_interval(&run, "affineA2", &[2, 1, 3, 2, 1], 22, &[1, 3, 6, 7, 4, 1])
}

fn horton_figure(ctx: &mut Context) -> Result<(bool, String)> {
    let run = ctx.run("horton3")?;
    let g = CoxeterGroup::from_name("D4")?;
    let target = interval(&g, &Word(vec![4, 3, 2, 1, 3, 4]))?;
    let ok = target.len() == HORTON3_SIZE
        && run.poset().len() == HORTON3_SIZE
        && is_isomorphic(run.poset(), target.poset());
    Ok((ok, format!("{} primes, interval {} elements", run.poset().len(), target.len())))
}

/// Elements of length at most `bound`, paired with each generator that is
/// not a right descent.
fn sweep(group: &Arc<CoxeterGroup>, bound: usize) -> Vec<(GroupElement, usize)> {
    let mut out = Vec::new();
    for w in group.elements_up_to_length(bound) {
        for a in 1..=group.rank() {
            if !w.right_descent(a).unwrap_or(true) {
                out.push((w.clone(), a));
            }
        }
    }
    out
}

const SWEEP: &[(&str, usize)] = &[("A3", 5), ("D4", 4), ("affineA2", 4)];

fn pushout_sweep(ctx: &mut Context) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for &(name, bound) in SWEEP {
        let g = CoxeterGroup::from_name(name)?;
        for (w, a) in sweep(&g, bound) {
            let report = pushout_square(&g, w.canonical_word(), a)?;
            checked += 1;
            if !report.passed() {
                failures.push(format!("{name} {w} a = s{a}"));
            }
            ctx.partitions.push(partition(&g, w.canonical_word(), a)?);
        }
    }
    let detail = match failures.first() {
        None => format!("{checked} squares"),
        Some(f) => format!("{checked} squares, {} failed, first {f}", failures.len()),
    };
    Ok((failures.is_empty(), detail))
}

fn times_two(_: &mut Context) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut failures = Vec::new();
    let two = LabeledPoset::two_chain();
    for &(name, bound) in SWEEP {
        let g = CoxeterGroup::from_name(name)?;
        for (w, a) in sweep(&g, bound) {
            let s = g.generator(a)?;
            if bruhat_leq(&s, &w)? {
                continue;
            }
            checked += 1;
            let inner = interval(&g, w.canonical_word())?;
            let outer = interval(&g, &w.canonical_word().push(a))?;
            if !is_isomorphic(outer.poset(), &product(inner.poset(), &two)) {
                failures.push(format!("{name} {w} a = s{a}"));
            }
        }
    }
    let detail = match failures.first() {
        None => format!("{checked} pairs"),
        Some(f) => format!("{checked} pairs, {} failed, first {f}", failures.len()),
    };
    Ok((failures.is_empty(), detail))
}

fn quantum_affine(ctx: &mut Context) -> Result<(bool, String)> {
    let mut ok = true;
    for n in 1..=5 {
        let run = ctx.run(&format!("qaffine{n}"))?;
        let g = CoxeterGroup::from_name(&format!("A{n}"))?;
        let coxeter = interval(&g, &Word((1..=n).collect()))?;
        let boolean = LabeledPoset::boolean_lattice(n);
        ok &= is_isomorphic(run.poset(), &boolean) && is_isomorphic(coxeter.poset(), &boolean);
    }
    Ok((ok, "n = 1..5".into()))
}

fn heights(ctx: &mut Context) -> Result<(bool, String)> {
    let mut found = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let h = height(ctx.run(&format!("weyl{n}"))?.poset())?;
        ok &= h == 2 * n - 1;
        found.push(format!("weyl{n}: {h}"));
    }
    for n in 1..=5 {
        let h = height(ctx.run(&format!("qaffine{n}"))?.poset())?;
        ok &= h == n;
        found.push(format!("qaffine{n}: {h}"));
    }
    Ok((ok, found.join(", ")))
}

fn commuting_squares(ctx: &mut Context) -> Result<(bool, String)> {
    let mut steps = 0;
    let mut failures = Vec::new();
    for name in BUILTIN_RUNS {
        let run = ctx.run(name)?;
        for s in &run.steps {
            steps += 1;
            if !s.square.passed() {
                failures.push(format!("{name} step {}", s.step));
            }
        }
        if run.expectation_met() == Some(false) {
            failures.push(format!("{name} expectation"));
        }
    }
    let detail = format!("{} pipelines, {steps} steps", BUILTIN_RUNS.len());
    if failures.is_empty() {
        Ok((true, detail))
    } else {
        Ok((false, format!("{detail}; failed: {}", failures.join(", "))))
    }
}

fn partition_laws(ctx: &mut Context) -> Result<(bool, String)> {
    if ctx.partitions.is_empty() {
        return Err(Error::Precondition("no partitions were collected".into()));
    }
    let bad: Vec<String> = ctx
        .partitions
        .iter()
        .flat_map(|p| p.law_violations())
        .collect();
    let detail = format!("{} partitions, {} violations", ctx.partitions.len(), bad.len());
    Ok((bad.is_empty(), detail))
}

fn lifting(_: &mut Context) -> Result<(bool, String)> {
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["A3", "affineA2"] {
        let report = check_lifting(&CoxeterGroup::from_name(name)?, 5)?;
        ok &= report.passed();
        parts.push(match &report.counterexample {
            None => format!("{name}: {} instances", report.instances),
            Some(c) => format!("{name}: counterexample {c}"),
        });
    }
    Ok((ok, parts.join(", ")))
}
