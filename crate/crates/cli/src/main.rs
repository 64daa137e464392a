mod config;

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use conetype::automata::{Automaton, CountSequence};
use conetype::contraction::verify_projection_axioms;
use conetype::reference::{cross_validate, reference_automaton, reference_series, REFERENCE_KEYS};
use conetype::{
    build_cone_automaton, growth_rate, series_from_automaton, ContractionChecker, Error, Verdict,
    Word,
};

use config::{CommonArgs, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "conetype",
    version,
    about = "Contracting geodesics, cone automata and growth"
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a geodesic word is D-contracting.
    Check {
        word: String,
        /// Also sample projection axioms this many times (uses --seed).
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Count D-contracting geodesics of each length.
    Enumerate {
        /// Longest length counted.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
    },
    /// Build and minimize the cone automaton.
    Automaton {
        /// Keep the unminimized fingerprint table.
        #[arg(long)]
        raw: bool,
    },
    /// Growth series, recurrence and growth rate.
    Genfunc {
        /// Use a built-in reference automaton instead of building one.
        #[arg(long)]
        reference: Option<String>,
    },
    /// A pumping witness u, v with u·vⁿ accepted for all n.
    Pump {
        #[arg(long)]
        reference: Option<String>,
    },
    /// Built-in automata for ℤ²∗ℤ.
    Reference {
        #[command(subcommand)]
        action: ReferenceAction,
    },
}

#[derive(Subcommand, Debug)]
enum ReferenceAction {
    /// List the built-in automata with their growth series.
    List,
    /// Compare rule, automaton and checker on all words up to --max-len.
    Compare,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Search words with the contraction checker.
    Oracle,
    /// Count paths in the cone automaton.
    Fast,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = RunConfig::from_args(&cli.common)?;
    match cli.command {
        Command::Check { word, samples } => cmd_check(&cfg, &word, samples),
        Command::Enumerate { n, mode } => cmd_enumerate(&cfg, n, mode).map(|()| 0),
        Command::Automaton { raw } => cmd_automaton(&cfg, raw).map(|()| 0),
        Command::Genfunc { reference } => cmd_genfunc(&cfg, reference.as_deref()).map(|()| 0),
        Command::Pump { reference } => cmd_pump(&cfg, reference.as_deref()).map(|()| 0),
        Command::Reference { action } => match action {
            ReferenceAction::List => cmd_reference_list().map(|()| 0),
            ReferenceAction::Compare => cmd_reference_compare(&cfg),
        },
    }
}

fn cmd_check(cfg: &RunConfig, text: &str, samples: usize) -> Result<u8> {
    let word = cfg.pres.parse_word(text)?;
    let checker = ContractionChecker::with_vertex_cap(&cfg.pres, cfg.vertex_cap);
    let verdict = checker.check(&word, cfg.d, cfg.horizon)?;
    println!("{}", verdict.render(&cfg.pres));
    if samples > 0 && verdict.passed() {
        let report = verify_projection_axioms(&cfg.pres, &word, cfg.d, samples, cfg.seed)?;
        println!(
            "axioms samples={} lipschitz_violations={} jump_violations={} seed={}",
            report.samples, report.lipschitz_violations, report.jump_violations, cfg.seed
        );
    }
    Ok(match verdict {
        Verdict::Pass { .. } => 0,
        Verdict::Fail { .. } => 1,
        Verdict::NotGeodesic => 2,
    })
}

/// Counts by breadth-first search; failing words have no passing extensions.
fn oracle_counts(cfg: &RunConfig, n: usize) -> Result<CountSequence> {
    let checker = ContractionChecker::with_vertex_cap(&cfg.pres, cfg.vertex_cap);
    let mut counts = Vec::with_capacity(n + 1);
    let mut layer = Vec::new();
    if checker.check(&Word::empty(), cfg.d, cfg.horizon)?.passed() {
        layer.push(Word::empty());
    }
    counts.push(layer.len().into());
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for a in cfg.pres.alphabet() {
                let ext = w.pushed(a);
                if checker.check(&ext, cfg.d, cfg.horizon)?.passed() {
                    next.push(ext);
                }
            }
        }
        counts.push(next.len().into());
        layer = next;
    }
    Ok(CountSequence::from_terms(counts))
}

fn cone(cfg: &RunConfig) -> Result<conetype::ConeAutomaton> {
    build_cone_automaton(&cfg.pres, cfg.d, cfg.m, cfg.max_len, cfg.horizon)
        .context("building the cone automaton")
}

fn cmd_enumerate(cfg: &RunConfig, n: usize, mode: Mode) -> Result<()> {
    let (counts, label) = match mode {
        Mode::Oracle => (oracle_counts(cfg, n)?, "oracle"),
        Mode::Fast => (cone(cfg)?.automaton.count_words(n), "fast"),
    };
    let mut out = format!(
        "# mode={label} group={} D={} horizon={}\n",
        cfg.group_name,
        cfg.d,
        horizon_text(cfg)
    );
    out.push_str(&counts.to_csv());
    emit(cfg.csv.as_ref(), &out)
}

fn horizon_text(cfg: &RunConfig) -> String {
    match cfg.horizon {
        conetype::Horizon::Fixed(r) => r.to_string(),
        conetype::Horizon::LengthPlus(k) => format!("len+{k}"),
    }
}

fn emit(path: Option<&std::path::PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_automaton(cfg: &RunConfig, raw: bool) -> Result<()> {
    let cone = cone(cfg)?;
    println!("{}", cone.table.diagnostics);
    let aut = if raw {
        cone.automaton
    } else {
        cone.automaton.minimize()
    };
    println!(
        "automaton states={} (plus fail) minimized={}",
        aut.live_state_count(),
        !raw
    );
    let mut table = String::new();
    for s in 0..aut.state_count() {
        if s == aut.fail() {
            continue;
        }
        let _ = write!(table, "  {}:", aut.label(s));
        for (a, c) in aut.alphabet().iter().enumerate() {
            let t = aut.step(s, a);
            if t != aut.fail() {
                let _ = write!(table, " {c}->{}", aut.label(t));
            }
        }
        table.push('\n');
    }
    print!("{table}");
    if let Some(path) = &cfg.dot {
        std::fs::write(path, aut.to_dot(cfg.show_fail))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn source_automaton(cfg: &RunConfig, reference: Option<&str>) -> Result<Automaton> {
    match reference {
        Some(key) => Ok(reference_automaton(key)?),
        None => Ok(cone(cfg)?.automaton.minimize()),
    }
}

fn cmd_genfunc(cfg: &RunConfig, reference: Option<&str>) -> Result<()> {
    let aut = source_automaton(cfg, reference)?;
    let series = series_from_automaton(&aut);
    println!("{series}");
    println!("{}", series.recurrence());
    match growth_rate(&series, cfg.tol) {
        Ok(g) => println!("{g}"),
        Err(Error::NoPositiveRoot) => println!("growth = subexponential (no positive pole)"),
        Err(e) => return Err(e.into()),
    }
    if let Some(path) = &cfg.dot {
        std::fs::write(path, aut.to_dot(cfg.show_fail))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_pump(cfg: &RunConfig, reference: Option<&str>) -> Result<()> {
    let aut = source_automaton(cfg, reference)?;
    match aut.pump_witness() {
        Some((u, v)) => {
            let show = |s: &str| {
                if s.is_empty() {
                    "ε".to_string()
                } else {
                    s.to_string()
                }
            };
            println!("u={} v={}", show(&u), show(&v));
        }
        None => println!("no pumping witness: the language is finite"),
    }
    Ok(())
}

fn cmd_reference_list() -> Result<()> {
    for key in REFERENCE_KEYS {
        let aut = reference_automaton(key)?;
        let s = reference_series(key)?;
        println!(
            "{key}: states={} series=({})/({})",
            aut.live_state_count(),
            s.p,
            s.q
        );
    }
    Ok(())
}

fn cmd_reference_compare(cfg: &RunConfig) -> Result<u8> {
    if cfg.d > 2 {
        bail!("reference automata exist for D = 0, 1, 2");
    }
    let report = cross_validate(cfg.d, cfg.max_len, cfg.jobs)?;
    println!(
        "D={} max_len={} words={} accepted={} disagreements={}",
        cfg.d, cfg.max_len, report.words, report.accepted, report.disagreement_count
    );
    for bad in &report.disagreements {
        println!(
            "  {}: rule={} automaton={} checker={}",
            bad.word, bad.rule, bad.automaton, bad.checker
        );
    }
    Ok(if report.agree() { 0 } else { 1 })
}
