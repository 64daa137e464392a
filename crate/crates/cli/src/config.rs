use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use conetype::cayley::DEFAULT_VERTEX_CAP;
use conetype::{Horizon, Presentation};

/// Flags shared by every command.
#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Presentation file (`generators = a, b, c` / `commuting = a b`);
    /// defaults to ℤ²∗ℤ = ⟨a, b, c | [a, b]⟩.
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    /// Contraction parameter.
    #[arg(long = "D", global = true, default_value_t = 1)]
    pub d: u32,
    /// Fingerprint radius for cone automata.
    #[arg(long, global = true, default_value_t = 2)]
    pub m: usize,
    /// Longest word explored when building cone automata.
    #[arg(long = "max-len", global = true, default_value_t = 6)]
    pub max_len: usize,
    /// Fixed ball-center horizon; defaults to word length + 2.
    #[arg(long, global = true)]
    pub horizon: Option<u32>,
    #[arg(long = "vertex-cap", global = true, default_value_t = DEFAULT_VERTEX_CAP)]
    pub vertex_cap: usize,
    /// Relative width of growth-rate enclosures.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write a Graphviz rendering here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Write counts as CSV here instead of standard output.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Include the fail state in DOT output.
    #[arg(long = "show-fail", global = true)]
    pub show_fail: bool,
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group_name: String,
    pub pres: Presentation,
    pub d: u32,
    pub m: usize,
    pub max_len: usize,
    pub horizon: Horizon,
    pub vertex_cap: usize,
    pub tol: f64,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub dot: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub show_fail: bool,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self> {
        let (group_name, pres) = match &args.group {
            None => ("z2*z".to_string(), Presentation::z2_free_z()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let pres = Presentation::parse(&text)
                    .with_context(|| format!("parsing {}", path.display()))?;
                (path.display().to_string(), pres)
            }
        };
        if !(args.tol > 0.0 && args.tol.is_finite()) {
            bail!("--tol must be a positive number, got {}", args.tol);
        }
        if args.horizon == Some(0) {
            bail!("--horizon must be at least 1");
        }
        if args.vertex_cap == 0 {
            bail!("--vertex-cap must be positive");
        }
        if args.jobs == Some(0) {
            bail!("--jobs must be positive");
        }
        Ok(RunConfig {
            group_name,
            pres,
            d: args.d,
            m: args.m,
            max_len: args.max_len,
            horizon: args.horizon.map_or(Horizon::default(), Horizon::Fixed),
            vertex_cap: args.vertex_cap,
            tol: args.tol,
            seed: args.seed,
            jobs: args.jobs,
            dot: args.dot.clone(),
            csv: args.csv.clone(),
            show_fail: args.show_fail,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[derive(Parser)]
    struct Wrapper {
        #[command(flatten)]
        common: CommonArgs,
    }

    fn config(args: &[&str]) -> Result<RunConfig> {
        let mut argv = vec!["conetype"];
        argv.extend_from_slice(args);
        RunConfig::from_args(&Wrapper::parse_from(argv).common)
    }

    #[test]
    fn defaults() {
        let cfg = config(&[]).unwrap();
        assert_eq!((cfg.d, cfg.m, cfg.max_len), (1, 2, 6));
        assert_eq!(cfg.horizon, Horizon::LengthPlus(2));
        assert_eq!(
            cfg.pres.alphabet_chars(),
            vec!['a', 'A', 'b', 'B', 'c', 'C']
        );
    }

    #[test]
    fn fixed_horizon() {
        assert_eq!(
            config(&["--horizon", "4"]).unwrap().horizon,
            Horizon::Fixed(4)
        );
    }

    #[test]
    fn rejects_bad_numbers() {
        assert!(config(&["--tol=-1"]).is_err());
        assert!(config(&["--horizon", "0"]).is_err());
        assert!(config(&["--jobs", "0"]).is_err());
        assert!(config(&["--vertex-cap", "0"]).is_err());
    }
}
