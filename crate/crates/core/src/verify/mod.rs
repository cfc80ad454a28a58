//! Named verification suites and their reports.

pub mod configs;
pub mod oracles;
mod suites;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{CliConfig, Loaded};
use crate::error::{Error, Result};

pub const SUITES: [&str; 10] = [
    "nuclei",
    "laurent-axioms",
    "associativity",
    "simplicity",
    "finite-order-ideals",
    "hilbert-reduction",
    "series",
    "jordan",
    "quantum-torus",
    "d-structure",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The expected counterexample was found.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config_digest: String,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Pretty JSON; timings are zeroed unless `timings` is set.
    pub fn to_json(&self, timings: bool) -> String {
        let mut report = self.clone();
        if !timings {
            for c in &mut report.checks {
                c.elapsed_ms = 0.0;
            }
        }
        serde_json::to_string_pretty(&report).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Suite `{}`\n", self.suite);
        let _ = writeln!(out, "Config digest: `{}`\n", self.config_digest);
        let passed = self.checks.len() - self.failures().count();
        let _ = writeln!(out, "{passed}/{} checks without failure.\n", self.checks.len());
        let _ = writeln!(out, "| check | anchor | status | detail |");
        let _ = writeln!(out, "|---|---|---|---|");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "**fail**",
                Status::Witness => "witness",
            };
            let mut detail = c.detail.replace('|', "\\|");
            if let Some(w) = &c.witness {
                let _ = write!(detail, "<br>witness: `{}`", w.replace('|', "\\|"));
            }
            let _ = writeln!(out, "| `{}` | {} | {status} | {detail} |", c.id, c.anchor);
        }
        out
    }
}

pub(crate) enum Outcome {
    Pass(String),
    Fail(String),
    Witness(String, String),
}

/// Collects checks and the configurations they used.
pub(crate) struct Ctx {
    scope: Option<CliConfig>,
    configs: Vec<String>,
    checks: Vec<CheckRecord>,
}

impl Ctx {
    fn new(scope: Option<CliConfig>) -> Ctx {
        Ctx {
            scope,
            configs: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub(crate) fn scope(&self) -> Option<&CliConfig> {
        self.scope.as_ref()
    }

    /// Loads a configuration, recording a failed check if it is invalid.
    pub(crate) fn load(&mut self, label: &str, cfg: &CliConfig) -> Option<Loaded> {
        let json = cfg.to_json();
        if !self.configs.contains(&json) {
            self.configs.push(json);
        }
        match cfg.load() {
            Ok(l) => Some(l),
            Err(e) => {
                self.check(format!("load.{label}"), "configuration is valid", || {
                    Ok(Outcome::Fail(e.to_string()))
                });
                None
            }
        }
    }

    pub(crate) fn check(
        &mut self,
        id: impl Into<String>,
        anchor: &str,
        f: impl FnOnce() -> Result<Outcome>,
    ) {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let (status, detail, witness) = match outcome {
            Outcome::Pass(d) => (Status::Pass, d, None),
            Outcome::Fail(d) => (Status::Fail, d, None),
            Outcome::Witness(d, w) => (Status::Witness, d, Some(w)),
        };
        self.checks.push(CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status,
            witness,
            detail,
            elapsed_ms,
        });
    }

    fn finish(self, suite: &str) -> SuiteReport {
        let mut hasher = Sha256::new();
        for c in &self.configs {
            hasher.update(c.as_bytes());
            hasher.update(b"\n");
        }
        let config_digest = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        SuiteReport {
            suite: suite.into(),
            config_digest,
            checks: self.checks,
        }
    }
}

fn run_one(name: &str, ctx: &mut Ctx) -> Result<()> {
    match name {
        "nuclei" => suites::nuclei(ctx),
        "laurent-axioms" => suites::laurent_axioms(ctx),
        "associativity" => suites::associativity(ctx),
        "simplicity" => suites::simplicity(ctx),
        "finite-order-ideals" => suites::finite_order_ideals(ctx),
        "hilbert-reduction" => suites::hilbert_reduction(ctx),
        "series" => suites::series(ctx),
        "jordan" => suites::jordan(ctx),
        "quantum-torus" => suites::quantum_torus(ctx),
        "d-structure" => suites::d_structure(ctx),
        other => return Err(Error::UnknownSuite(other.into())),
    }
    Ok(())
}

/// Runs a suite. With a `scope`, the configuration-generic suites
/// (`nuclei`, `laurent-axioms`, `associativity`) check that configuration
/// instead of the built-in ones. `all` runs every suite on its own thread
/// and concatenates the checks in suite order.
pub fn run_suite(name: &str, scope: Option<&CliConfig>) -> Result<SuiteReport> {
    if name != "all" {
        let mut ctx = Ctx::new(scope.cloned());
        run_one(name, &mut ctx)?;
        return Ok(ctx.finish(name));
    }
    let parts: Vec<Ctx> = std::thread::scope(|s| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|&suite| {
                s.spawn(move || {
                    let mut ctx = Ctx::new(scope.cloned());
                    run_one(suite, &mut ctx).map(|_| ctx)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect::<Result<_>>()
    })?;
    let mut all = Ctx::new(scope.cloned());
    for part in parts {
        for c in part.configs {
            if !all.configs.contains(&c) {
                all.configs.push(c);
            }
        }
        all.checks.extend(part.checks);
    }
    Ok(all.finish("all"))
}
