use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewring::maps::{classify_multiplicativity, detect_finite_order, pi_words, FiniteOrder};
use skewring::structure::{monic_left_reduce, right_reduce, right_reduce_series};
use skewring::text::parse_coefficient;
use skewring::{CliConfig, Error, Expr, Loaded};

#[derive(Parser)]
#[command(name = "skewring", version, about = "Exact arithmetic in non-associative skew polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Check this configuration instead of the built-in ones.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep per-check timings in JSON output.
        #[arg(long)]
        timings: bool,
    },
    /// Multiply two expressions.
    Mul {
        #[arg(long)]
        config: PathBuf,
        lhs: String,
        rhs: String,
    },
    /// Reduce an expression by generators, one per line of `--gens`.
    Reduce {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        expr: String,
        #[arg(long, value_enum, default_value_t = ReduceSide::Right)]
        side: ReduceSide,
        /// Round limit for series reduction.
        #[arg(long, default_value_t = 32)]
        steps: usize,
    },
    /// Describe `π_i^m`, optionally applied to a coefficient.
    Pi {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        emit_words: bool,
        #[arg(long, requires = "element")]
        config: Option<PathBuf>,
        #[arg(long, requires = "config")]
        element: Option<String>,
    },
    /// Report properties of a configuration's ring and twist maps.
    Classify {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceSide {
    Left,
    Right,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli.command);
    if let Err(e) = &outcome {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&outcome))
}

/// 0 when everything passed, 1 when a check failed, 2 on bad input.
fn exit_code(outcome: &Result<bool, Error>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

fn read_config(path: &Path) -> Result<CliConfig, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
    CliConfig::from_json(&text)
}

fn load(path: &Path) -> Result<Loaded, Error> {
    read_config(path)?.load()
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

/// `Ok(false)` means the command ran but a check failed.
fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Verify {
            suite,
            config,
            format,
            out,
            timings,
        } => {
            let scope = config.as_deref().map(read_config).transpose()?;
            if let Some(c) = &scope {
                c.load()?;
            }
            let report = skewring::run_suite(&suite, scope.as_ref())?;
            let text = match format {
                Format::Json => report.to_json(timings),
                Format::Markdown => report.to_markdown(),
            };
            emit(&text, out.as_deref())?;
            for c in report.failures() {
                eprintln!("FAIL {}: {}", c.id, c.detail);
            }
            Ok(report.passed())
        }
        Command::Mul { config, lhs, rhs } => {
            let loaded = load(&config)?;
            let product = match (loaded.parse(&lhs)?, loaded.parse(&rhs)?) {
                (Expr::Poly(a), Expr::Poly(b)) => Expr::Poly(a.mul(&b)?),
                (Expr::Series(a), Expr::Series(b)) => Expr::Series(a.mul(&b)?),
                _ => unreachable!("one shape per configuration"),
            };
            println!("{product}");
            Ok(true)
        }
        Command::Reduce {
            config,
            gens,
            expr,
            side,
            steps,
        } => {
            let loaded = load(&config)?;
            let text = fs::read_to_string(&gens)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", gens.display())))?;
            let gens = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| loaded.parse(l))
                .collect::<Result<Vec<_>, _>>()?;
            let f = loaded.parse(&expr)?;
            let result = match (side, f) {
                (ReduceSide::Left, Expr::Poly(f)) => {
                    let [Expr::Poly(p)] = gens.as_slice() else {
                        return Err(Error::Unsupported(
                            "left reduction takes exactly one polynomial generator".into(),
                        ));
                    };
                    monic_left_reduce(&f, p)?.to_json()
                }
                (ReduceSide::Right, Expr::Poly(f)) => {
                    let polys: Vec<_> = gens
                        .into_iter()
                        .filter_map(|g| match g {
                            Expr::Poly(p) => Some(p),
                            Expr::Series(_) => None,
                        })
                        .collect();
                    right_reduce(&f, &polys)?.to_json()
                }
                (ReduceSide::Right, Expr::Series(f)) => {
                    let series: Vec<_> = gens
                        .into_iter()
                        .filter_map(|g| match g {
                            Expr::Series(s) => Some(s),
                            Expr::Poly(_) => None,
                        })
                        .collect();
                    right_reduce_series(&f, &series, steps)?.to_json()
                }
                (ReduceSide::Left, Expr::Series(_)) => {
                    return Err(Error::Unsupported("left reduction of series".into()));
                }
            };
            println!("{}", pretty(&result));
            Ok(true)
        }
        Command::Pi {
            i,
            m,
            emit_words,
            config,
            element,
        } => {
            let words = pi_words(i, m);
            let mut out = json!({ "i": i, "m": m, "word_count": words.len() });
            if emit_words {
                out["words"] = json!(words);
            }
            if let (Some(config), Some(element)) = (config, element) {
                let loaded = load(&config)?;
                let ring = loaded.config.coefficients();
                let s = parse_coefficient(&element, ring)?;
                out["value"] = json!(loaded.config.pi().pi_apply(i, m, &s)?.to_string());
            }
            println!("{}", pretty(&out));
            Ok(true)
        }
        Command::Classify { config } => {
            let loaded = load(&config)?;
            let c = &loaded.config;
            let ring = c.coefficients();
            let sigma_tags = match classify_multiplicativity(c.sigma()) {
                Ok(tags) => json!(tags),
                Err(e) => json!(e.to_string()),
            };
            let order = match detect_finite_order(c.sigma(), 24) {
                Ok(FiniteOrder::Order(m)) => json!(m),
                Ok(FiniteOrder::Infinite) => json!("infinite"),
                Ok(FiniteOrder::NoneWithin(b)) => json!(format!("none within {b}")),
                Err(e) => json!(e.to_string()),
            };
            let bound = skewring::maps::POLY_CHECK_DEGREE;
            let out = json!({
                "ring": ring.to_string(),
                "shape": c.shape(),
                "variable": c.variable(),
                "coefficients": {
                    "associative": ring.is_associative(bound)?,
                    "commutative": ring.is_commutative(bound)?,
                    "division_ring": ring.is_division_ring(),
                },
                "sigma": {
                    "label": c.sigma().label(),
                    "tags": c.sigma().tags(),
                    "multiplicativity": sigma_tags,
                    "finite_order": order,
                },
                "delta": c.delta().map(|d| json!({ "label": d.label(), "tags": d.tags() })),
                "axioms": loaded.reports,
                "digest": read_config(&config)?.digest(),
            });
            println!("{}", pretty(&out));
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(true)), 0);
        assert_eq!(exit_code(&Ok(false)), 1);
        assert_eq!(exit_code(&Err(Error::NotInvertible)), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
