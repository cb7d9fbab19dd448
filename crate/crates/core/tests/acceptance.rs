//! Acceptance suite: one line per criterion, checked against the
//! permutation oracles in `common`. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use bruhatspec::bruhat::{bruhat_leq, check_lifting, interval, partition, BruhatPartition};
use bruhatspec::coxeter::{CoxeterGroup, Word};
use bruhatspec::poset::{is_isomorphic, product, LabeledPoset};
use bruhatspec::pushout::pushout_square;
use bruhatspec::spectra::{builtin, height, run_pipeline, PipelineRun};
use common::Model;

/// Size of `[1, s₃s₂s₁s₀s₂s₃]` in `D₄`, computed with the signed
/// permutation oracle before the library existed.
const HORTON3_SIZE: usize = 48;
const HORTON3_PROFILE: [usize; 7] = [1, 4, 9, 14, 13, 6, 1];

type Outcome = Result<String, String>;

struct Suite {
    partitions: Vec<BruhatPartition>,
    failed: usize,
}

impl Suite {
    fn criterion(&mut self, id: usize, name: &str, limit: Option<Duration>, check: impl FnOnce(&mut Suite) -> Outcome) {
        let start = Instant::now();
        let mut outcome = check(self);
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, limit) {
            if elapsed > limit {
                outcome = Err(format!("{detail}; took {:.2}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{:.3}s]", elapsed.as_secs_f64()),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{:.3}s]", elapsed.as_secs_f64());
            }
        }
    }

    fn run(&mut self, name: &str) -> Result<PipelineRun, String> {
        let run = builtin(name)
            .and_then(|spec| run_pipeline(&spec))
            .map_err(|e| e.to_string())?;
        self.partitions.extend(run.partitions.iter().cloned());
        Ok(run)
    }
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// The pipeline's poset against the oracle's interval and the library's
/// interval.
fn figure(run: &PipelineRun, group: &str, word: &[usize], size: usize, profile: &[usize]) -> Outcome {
    let (oracle_size, oracle_profile) = Model::from_name(group).interval_profile(word);
    let g = CoxeterGroup::from_name(group).map_err(|e| e.to_string())?;
    let iv = interval(&g, &Word(word.to_vec())).map_err(|e| e.to_string())?;
    let got = run.poset().rank_profile().unwrap_or_default();
    ensure(
        oracle_size == size
            && oracle_profile == profile
            && run.poset().len() == size
            && got == profile
            && is_isomorphic(run.poset(), iv.poset()),
        format!("{} primes, ranks {:?}; oracle {} elements, ranks {:?}", run.poset().len(), got, oracle_size, oracle_profile),
    )
}

const SWEEP: &[(&str, usize)] = &[("A3", 5), ("D4", 4), ("affineA2", 4)];

/// `(w̄, a)` with `l(w̄) ≤ bound` and `a` not a right descent of `w̄`,
/// enumerated by the oracle.
fn sweep_pairs(group: &str, bound: usize) -> Vec<(Vec<usize>, usize)> {
    let model = Model::from_name(group);
    let mut ball: Vec<(usize, Vec<usize>)> = model.ball(bound).into_values().collect();
    ball.sort();
    let mut out = Vec::new();
    for (len, word) in ball {
        for a in 1..=model.rank() {
            let mut longer = word.clone();
            longer.push(a);
            if model.length(&longer) == len + 1 {
                out.push((word.clone(), a));
            }
        }
    }
    out
}

fn main() {
    let mut suite = Suite {
        partitions: Vec::new(),
        failed: 0,
    };

    suite.criterion(1, "Bruhat order agrees with the subword oracle on A3", Some(Duration::from_secs(1)), |_| {
        let model = Model::A(3);
        let g = CoxeterGroup::from_name("A3").unwrap();
        let ball = model.ball(6);
        let mut pairs = 0;
        let mut mismatches = Vec::new();
        for (_, u) in ball.values() {
            for (_, v) in ball.values() {
                pairs += 1;
                let eu = g.element(&Word(u.clone())).unwrap();
                let ev = g.element(&Word(v.clone())).unwrap();
                if bruhat_leq(&eu, &ev).unwrap() != model.leq(u, v) {
                    mismatches.push(format!("{eu} vs {ev}"));
                }
            }
        }
        ensure(pairs == 576 && mismatches.is_empty(), format!("{pairs} pairs, {} mismatches", mismatches.len()))
    });

    suite.criterion(2, "Weyl algebra spectrum matches [1, s3s2s1s2s3]", secs(5), |s| {
        let run = s.run("weyl3")?;
        let detail = figure(&run, "A3", &[3, 2, 1, 2, 3], 20, &[1, 3, 5, 6, 4, 1])?;
        let label = run.prime_of(&Word(vec![3])).map(ToString::to_string).unwrap_or_default();
        ensure(label == "<Ω3>", format!("{detail}; s3 ↦ {label}"))
    });

    suite.criterion(3, "quantum matrix extension matches [1, s2s1s3s2s1] in A3", secs(5), |s| {
        let run = s.run("m2-ext-A3")?;
        figure(&run, "A3", &[2, 1, 3, 2, 1], 18, &[1, 3, 5, 5, 3, 1])
    });

    suite.criterion(4, "affine extension matches [1, s2s1s0s2s1] in affine A2", secs(5), |s| {
        let run = s.run("m2-ext-affineA2")?;
        figure(&run, "affineA2", &[2, 1, 3, 2, 1], 22, &[1, 3, 6, 7, 4, 1])
    });

    suite.criterion(5, "Horton algebra spectrum matches [1, s3s2s1s0s2s3] in D4", secs(10), |s| {
        let run = s.run("horton3")?;
        figure(&run, "D4", &[4, 3, 2, 1, 3, 4], HORTON3_SIZE, &HORTON3_PROFILE)
    });

    suite.criterion(6, "pushout squares for every (w, a) in the sweep", secs(60), |s| {
        let mut count = 0;
        for &(group, bound) in SWEEP {
            let g = CoxeterGroup::from_name(group).unwrap();
            for (word, a) in sweep_pairs(group, bound) {
                let w = Word(word);
                let report = pushout_square(&g, &w, a).map_err(|e| format!("{group} {w} s{a}: {e}"))?;
                if !report.passed() {
                    return Err(format!("{group} {w} s{a}: {report:?}"));
                }
                s.partitions.push(partition(&g, &w, a).unwrap());
                count += 1;
            }
        }
        Ok(format!("{count} squares"))
    });

    suite.criterion(7, "[1, wa] ≅ [1, w] × 2 whenever a is not below w", None, |_| {
        let mut count = 0;
        let two = LabeledPoset::two_chain();
        for &(group, bound) in SWEEP {
            let model = Model::from_name(group);
            let g = CoxeterGroup::from_name(group).unwrap();
            for (word, a) in sweep_pairs(group, bound) {
                if model.leq(&[a], &word) {
                    continue;
                }
                let w = Word(word);
                let inner = interval(&g, &w).unwrap();
                let outer = interval(&g, &w.push(a)).unwrap();
                if !is_isomorphic(outer.poset(), &product(inner.poset(), &two)) {
                    return Err(format!("{group} {w} s{a}"));
                }
                count += 1;
            }
        }
        Ok(format!("{count} pairs"))
    });

    suite.criterion(8, "quantum affine space ≅ Boolean lattice ≅ Coxeter element interval", secs(5), |s| {
        for n in 1..=5 {
            let run = s.run(&format!("qaffine{n}"))?;
            let boolean = LabeledPoset::boolean_lattice(n);
            let g = CoxeterGroup::from_name(&format!("A{n}")).unwrap();
            let coxeter: Vec<usize> = (1..=n).collect();
            let iv = interval(&g, &Word(coxeter.clone())).unwrap();
            let (oracle_size, _) = Model::A(n).interval_profile(&coxeter);
            if !is_isomorphic(run.poset(), &boolean) || !is_isomorphic(iv.poset(), &boolean) || oracle_size != 1 << n {
                return Err(format!("n = {n}"));
            }
        }
        Ok("n = 1..5".into())
    });

    suite.criterion(9, "heights of the Weyl and quantum affine spectra", None, |s| {
        let mut seen = Vec::new();
        for n in 1..=3 {
            let h = height(s.run(&format!("weyl{n}"))?.poset()).map_err(|e| e.to_string())?;
            if h != 2 * n - 1 {
                return Err(format!("weyl{n} has height {h}"));
            }
            seen.push(h);
        }
        for n in 1..=5 {
            let h = height(s.run(&format!("qaffine{n}"))?.poset()).map_err(|e| e.to_string())?;
            if h != n {
                return Err(format!("qaffine{n} has height {h}"));
            }
        }
        Ok(format!("weyl heights {seen:?}, qaffine heights 1..5"))
    });

    suite.criterion(10, "commuting square and fibers at every step of every builtin", None, |s| {
        let names = [
            "qaffine1", "qaffine2", "qaffine3", "qaffine4", "qaffine5", "qmatrix2", "m2-ext-A3", "m2-ext-affineA2",
            "weyl1", "weyl2", "weyl3", "horton2", "horton3",
        ];
        let mut steps = 0;
        for name in names {
            let run = s.run(name)?;
            for step in &run.steps {
                let sq = &step.square;
                if !sq.passed() {
                    return Err(format!("{name} step {}: {:?}", step.step, sq.failures));
                }
                steps += 1;
            }
        }
        Ok(format!("{} pipelines, {steps} steps", names.len()))
    });

    suite.criterion(11, "partition laws on every partition computed above", None, |s| {
        if s.partitions.is_empty() {
            return Err("no partitions collected".into());
        }
        let bad: Vec<String> = s.partitions.iter().flat_map(|p| p.law_violations()).collect();
        ensure(bad.is_empty(), format!("{} partitions, {} violations", s.partitions.len(), bad.len()))
    });

    suite.criterion(12, "lifting property on A3 and affine A2 to length 5", secs(30), |_| {
        let mut parts = Vec::new();
        for group in ["A3", "affineA2"] {
            let report = check_lifting(&CoxeterGroup::from_name(group).unwrap(), 5).map_err(|e| e.to_string())?;
            if let Some(c) = report.counterexample {
                return Err(format!("{group}: {c}"));
            }
            parts.push(format!("{group} {} instances", report.instances));
        }
        Ok(parts.join(", "))
    });

    println!("{} failed", suite.failed);
    if suite.failed > 0 {
        std::process::exit(1);
    }
}
