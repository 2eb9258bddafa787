use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sbw_core::oracles::{artin_image, brute_force_sym, random_sigma_word, random_word};
use sbw_core::presentations::labelled_relators;
use sbw_core::solver::{emit_presentation, Solver};
use sbw_core::{Dictionary, PresentationLevel, SolverError, SurfaceSpec, Word, WordError};

#[derive(Parser)]
#[command(name = "sbw", version, about = "Normal forms and the word problem in surface braid groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combed normal form of a braid word.
    Nf {
        #[command(flatten)]
        surface: SurfaceArgs,
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether two braid words are equal; prints true or false.
    Eq {
        #[command(flatten)]
        surface: SurfaceArgs,
        first: String,
        second: String,
    },
    /// Generators and relators of a presentation.
    Relators {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_enum, default_value = "theorem")]
        level: Level,
        #[arg(long)]
        json: bool,
    },
    /// The instantiated conjugation rules as JSON.
    Rules {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Randomized consistency checks against the independent oracles.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, value_enum)]
    surface: Orientation,
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    strands: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Orientation {
    Or,
    Non,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Theorem,
    Pure,
    Extended,
}

impl From<Level> for PresentationLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Theorem => PresentationLevel::Theorem,
            Level::Pure => PresentationLevel::Pure,
            Level::Extended => PresentationLevel::Extended,
        }
    }
}

impl SurfaceArgs {
    fn spec(&self) -> Result<SurfaceSpec, WordError> {
        SurfaceSpec::new(matches!(self.surface, Orientation::Or), self.genus, self.strands)
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn normal_form(surface: &SurfaceArgs, text: &str, as_json: bool) -> anyhow::Result<()> {
    let solver = Solver::new(surface.spec()?);
    let word = solver.parse(text)?;
    let report = solver.normal_form(&word)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report.to_json())?);
        return Ok(());
    }
    for (k, level) in report.combed.levels.iter().enumerate() {
        println!("level {}: {}", k + 1, show(level));
    }
    println!("permutation: {}", show(&report.combed.perm_word));
    println!("trivial: {}", report.trivial);
    Ok(())
}

fn equal(surface: &SurfaceArgs, first: &str, second: &str) -> anyhow::Result<()> {
    let solver = Solver::new(surface.spec()?);
    let u = solver.parse(first)?;
    let v = solver.parse(second)?;
    println!("{}", solver.are_equal(&u, &v)?);
    Ok(())
}

fn presentation(surface: &SurfaceArgs, level: Level, as_json: bool) -> anyhow::Result<()> {
    let spec = surface.spec()?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&emit_presentation(&spec, level.into()))?);
        return Ok(());
    }
    for r in labelled_relators(&spec, level.into()) {
        println!("{}: {}", r.family, show(&r.word));
    }
    Ok(())
}

fn rules(surface: &SurfaceArgs) -> anyhow::Result<()> {
    let dict = Dictionary::new(surface.spec()?);
    let rules: Vec<_> = dict
        .rules()?
        .into_iter()
        .map(|r| json!({ "conjugator": r.conjugator.to_string(), "target": r.target.to_string(), "result": r.result.tokens() }))
        .collect();
    println!("{}", serde_json::to_string_pretty(&rules)?);
    Ok(())
}

fn selftest(seed: u64) -> anyhow::Result<bool> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(seed);
    let mut ok = true;
    let mut line = |name: &str, pass: bool, detail: String| {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    };

    let failures: Vec<String> = (1..=4).flat_map(|n| brute_force_sym(n).failures).collect();
    line("permutations", failures.is_empty(), format!("{} failures for n <= 4", failures.len()));

    let specs = [
        SurfaceSpec::orientable(1, 3)?,
        SurfaceSpec::orientable(2, 2)?,
        SurfaceSpec::non_orientable(2, 3)?,
        SurfaceSpec::non_orientable(3, 2)?,
    ];
    let (mut total, mut bad) = (0, 0);
    for spec in &specs {
        let solver = Solver::new(*spec);
        for level in [PresentationLevel::Theorem, PresentationLevel::Pure, PresentationLevel::Extended] {
            for r in labelled_relators(spec, level) {
                total += 1;
                if !solver.is_trivial(&r.word).with_context(|| format!("{spec}: {}", r.family))? {
                    bad += 1;
                }
            }
        }
    }
    line("relators", bad == 0, format!("{}/{total} trivial", total - bad));

    let (mut total, mut bad) = (0, 0);
    for spec in &specs {
        let solver = Solver::new(*spec);
        let rels: Vec<Word> = labelled_relators(spec, PresentationLevel::Theorem).into_iter().map(|r| r.word).collect();
        for _ in 0..50 {
            total += 1;
            let w = random_word(spec, rng.gen_range(0..=20), &mut rng);
            let at = rng.gen_range(0..=w.len());
            let c = random_word(spec, rng.gen_range(0..=3), &mut rng);
            let r = &rels[rng.gen_range(0..rels.len())];
            let mut p = Word::from_letters(w.letters()[..at].to_vec());
            p.extend_from(&c);
            p.extend_from(r);
            p.extend_from(&c.inverse());
            p.extend_from(&Word::from_letters(w.letters()[at..].to_vec()));
            if !solver.are_equal(&w, &p)? {
                bad += 1;
            }
        }
    }
    line("relator insertion", bad == 0, format!("{}/{total} equal", total - bad));

    let (mut total, mut bad) = (0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let solver = Solver::new(SurfaceSpec::orientable(rng.gen_range(1..=2), n)?);
        let u = random_sigma_word(n, rng.gen_range(0..=12), &mut rng);
        let w = if rng.gen() { u.concat(&u.inverse()) } else { u };
        total += 1;
        if solver.is_trivial(&w)? != artin_image(&w, n)?.is_identity() {
            bad += 1;
        }
    }
    line("disc oracle", bad == 0, format!("{}/{total} agree", total - bad));
    Ok(ok)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let word = err
        .downcast_ref::<WordError>()
        .or_else(|| match err.downcast_ref::<SolverError>() {
            Some(SolverError::Word(w)) => Some(w),
            _ => None,
        });
    match word {
        Some(WordError::Parse { .. }) => 2,
        Some(WordError::Range { .. } | WordError::Spec(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Nf { surface, word, json } => normal_form(surface, word, *json),
        Command::Eq { surface, first, second } => equal(surface, first, second),
        Command::Relators { surface, level, json } => presentation(surface, *level, *json),
        Command::Rules { surface } => rules(surface),
        Command::Selftest { seed } => match selftest(*seed) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::FAILURE,
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sbw: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
