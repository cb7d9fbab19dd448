//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code: 0 on success, 1 when a
//! verification fails, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::bruhat::{interval, partition, Block};
use crate::coxeter::{CoxeterGroup, CoxeterMatrix, Word};
use crate::error::{Error, Result};
use crate::poset::{ExportFormat, LabeledPoset};
use crate::pushout::pushout_square;
use crate::selftest::run_selftest;
use crate::spectra::{load_pipeline, run_pipeline};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bruhatspec", version, about = "Bruhat intervals and prime spectra of iterated Ore extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Size and rank profile of [1, w]
    Interval {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// The blocks W1..W4 of [1, wa]
    Partition {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        gen: usize,
    },
    /// Build and check the pushout square for (w, a)
    PushoutCheck {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        gen: usize,
    },
    /// Run a pipeline and report every step
    Pipeline {
        #[command(flatten)]
        source: PipelineSource,
        #[command(flatten)]
        out: Output,
    },
    /// Run the full verification suite
    Selftest {
        /// Leave per-criterion timings out of the report
        #[arg(long)]
        no_timing: bool,
    },
    /// Write an interval or a pipeline's final poset as DOT or JSON
    Export {
        #[arg(long, conflicts_with_all = ["pipeline", "builtin"])]
        matrix: Option<String>,
        #[arg(long, requires = "matrix")]
        word: Option<String>,
        #[command(flatten)]
        source: OptionalPipelineSource,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
pub struct Target {
    /// Builtin name (A3, D4, affineA2, ...) or path to a matrix JSON file
    #[arg(long)]
    pub matrix: String,
    /// Comma-separated generator indices, e.g. 3,2,1,2,3
    #[arg(long)]
    pub word: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct PipelineSource {
    /// Path to a pipeline JSON file (or a builtin name)
    #[arg(long)]
    pub pipeline: Option<String>,
    /// Builtin pipeline such as weyl3 or m2-ext-A3
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
pub struct OptionalPipelineSource {
    #[arg(long)]
    pub pipeline: Option<String>,
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write the poset to this file
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "dot")]
    pub format: ExportFormat,
}

/// Failures are split into bad input and failed verification.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedFamily { .. }
            | Error::UnknownMatrix(_)
            | Error::InvalidMatrix(_)
            | Error::NonCrystallographic { .. }
            | Error::InvalidGenerator { .. }
            | Error::NotReduced(_)
            | Error::Precondition(_)
            | Error::UnknownBuiltin(_)
            | Error::Parse(_)
            | Error::Json(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(stderr, "verification failed: {msg}");
            EXIT_FAILED
        }
    }
}

fn load_group(matrix: &str) -> Result<Arc<CoxeterGroup>> {
    let path = Path::new(matrix);
    if path.is_file() {
        let m: CoxeterMatrix = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        return Ok(CoxeterGroup::new(m));
    }
    CoxeterGroup::from_name(matrix)
}

fn parse_target(t: &Target) -> Result<(Arc<CoxeterGroup>, Word)> {
    let word: Word = t.word.parse()?;
    let group = load_group(&t.matrix)?;
    word.validate(group.matrix())?;
    if !group.is_reduced(&word)? {
        return Err(Error::NotReduced(word.to_string()));
    }
    Ok((group, word))
}

fn write_poset(poset: &LabeledPoset, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let Some(path) = &out.output else {
        return Ok(());
    };
    std::fs::write(path, poset.export(out.format))?;
    writeln!(stdout, "wrote {}", path.display())?;
    Ok(())
}

fn profile_csv(profile: &[usize]) -> String {
    profile.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn execute(command: Command, stdout: &mut dyn Write) -> std::result::Result<bool, Failure> {
    match command {
        Command::Interval { target, out } => {
            let (group, word) = parse_target(&target)?;
            let iv = interval(&group, &word)?;
            writeln!(stdout, "{} elements, ranks {}", iv.len(), profile_csv(&iv.rank_profile())).map_err(Error::from)?;
            write_poset(iv.poset(), &out, stdout)?;
            Ok(true)
        }
        Command::Partition { target, gen } => {
            let (group, word) = parse_target(&target)?;
            let part = partition(&group, &word, gen)?;
            for b in [Block::W1, Block::W2, Block::W3, Block::W4] {
                let labels = part.block_labels(b);
                writeln!(stdout, "{b} ({}): {}", labels.len(), labels.join(" ")).map_err(Error::from)?;
            }
            let violations = part.law_violations();
            for v in &violations {
                writeln!(stdout, "law violated: {v}").map_err(Error::from)?;
            }
            Ok(violations.is_empty())
        }
        Command::PushoutCheck { target, gen } => {
            let (group, word) = parse_target(&target)?;
            let r = pushout_square(&group, &word, gen)?;
            let yes = |b: bool| if b { "yes" } else { "NO" };
            let lines = [
                format!("[1, {}] -> [1, {}·s{}]: {} -> {} elements", r.wbar, r.wbar, r.generator, r.size_inner, r.size_outer),
                format!("nu1 bijective homomorphism: {}", yes(r.nu1_bijective_hom)),
                format!("nu2 injective homomorphism: {}", yes(r.nu2_injective_hom)),
                format!("top map bijective homomorphism: {}", yes(r.top_bijective_hom)),
                format!("square commutes: {}", yes(r.commutes)),
                format!("inverse formula: {}", yes(r.inverse_formula)),
                format!("inverse monotone on both halves: {}", yes(r.inverse_monotone_on_halves)),
                format!("matches the computed pushout: {}", yes(r.colimit_matches)),
                if r.passed() { "pass".to_string() } else { "FAIL".to_string() },
            ];
            for line in lines {
                writeln!(stdout, "{line}").map_err(Error::from)?;
            }
            Ok(r.passed())
        }
        Command::Pipeline { source, out } => {
            let name = source.pipeline.or(source.builtin).expect("clap enforces one source");
            let spec = load_pipeline(&name)?;
            let run = run_pipeline(&spec)?;
            if matches!(out.format, ExportFormat::Json) && out.output.is_none() {
                writeln!(stdout, "{}", run.report_json()).map_err(Error::from)?;
            } else {
                for s in &run.steps {
                    writeln!(
                        stdout,
                        "step {} {} (gen {}): P={} P1={} P2={} P3={} -> {}; hypotheses ok, square {}",
                        s.step,
                        s.var,
                        s.gen.map_or("-".to_string(), |g| format!("s{g}")),
                        s.sizes.p,
                        s.sizes.p1,
                        s.sizes.p2,
                        s.sizes.p3,
                        s.sizes.new,
                        if s.square_commutes { "commutes" } else { "FAILS" }
                    )
                    .map_err(Error::from)?;
                }
                let profile = run.poset().rank_profile().unwrap_or_default();
                writeln!(
                    stdout,
                    "{}: [1, {}] ≅ spectrum, final size {}, ranks {}",
                    run.name,
                    run.word,
                    run.poset().len(),
                    profile_csv(&profile)
                )
                .map_err(Error::from)?;
                write_poset(run.poset(), &out, stdout)?;
            }
            match run.expectation_met() {
                Some(false) => Err(Failure::Verification(format!("{}: final poset does not match the expectation", run.name))),
                _ => Ok(true),
            }
        }
        Command::Selftest { no_timing } => {
            let report = run_selftest();
            write!(stdout, "{}", report.render(!no_timing)).map_err(Error::from)?;
            Ok(report.passed())
        }
        Command::Export {
            matrix,
            word,
            source,
            out,
        } => {
            let poset = match (matrix, source.pipeline.or(source.builtin)) {
                (Some(matrix), None) => {
                    let target = Target {
                        matrix,
                        word: word.unwrap_or_default(),
                    };
                    let (group, word) = parse_target(&target)?;
                    interval(&group, &word)?.poset().clone()
                }
                (None, Some(name)) => run_pipeline(&load_pipeline(&name)?)?.poset().clone(),
                _ => return Err(Failure::Usage("export needs --matrix/--word or --pipeline/--builtin".into())),
            };
            if out.output.is_some() {
                write_poset(&poset, &out, stdout)?;
            } else {
                write!(stdout, "{}", poset.export(out.format)).map_err(Error::from)?;
            }
            Ok(true)
        }
    }
}
