//! JSON ring configurations as read by the command-line tool.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::maps::{make_delta, make_twist, validate_twist_axioms, MapRole, TwistDescriptor, TwistReport};
use crate::poly::{RingConfig, Shape};
use crate::rings::{builtin, matrix_algebra, AlgebraJson, AlgebraSpec, Ring};
use crate::series::TruncatedSeries;
use crate::text::{parse_expr, Expr};

/// A coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    /// One of `Q`, `Q(i)`, `H`, `O`, `S`, `H+`.
    Builtin { name: String },
    Algebra { spec: AlgebraJson },
    Matrix { base: Box<RingDescriptor>, n: usize },
    /// A polynomial ring used as a coefficient ring.
    Polynomial {
        coefficients: Box<RingDescriptor>,
        #[serde(default = "identity")]
        twist: TwistDescriptor,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<TwistDescriptor>,
        variable: String,
        shape: Shape,
    },
}

fn identity() -> TwistDescriptor {
    TwistDescriptor::Identity
}

fn default_variable() -> String {
    "X".into()
}

impl RingDescriptor {
    pub fn builtin(name: &str) -> RingDescriptor {
        RingDescriptor::Builtin { name: name.into() }
    }

    fn algebra_spec(&self) -> Result<Arc<AlgebraSpec>> {
        match self {
            RingDescriptor::Builtin { name } => {
                builtin(name).ok_or_else(|| Error::InvalidConfig(format!("unknown algebra {name}")))
            }
            RingDescriptor::Algebra { spec } => Ok(Arc::new(AlgebraSpec::from_json(spec)?)),
            _ => Err(Error::InvalidConfig("matrix entries must come from an algebra".into())),
        }
    }

    pub fn build(&self) -> Result<Ring> {
        match self {
            RingDescriptor::Builtin { .. } | RingDescriptor::Algebra { .. } => {
                Ok(Ring::Algebra(self.algebra_spec()?))
            }
            RingDescriptor::Matrix { base, n } => matrix_algebra(base.algebra_spec()?, *n),
            RingDescriptor::Polynomial {
                coefficients,
                twist,
                delta,
                variable,
                shape,
            } => {
                if shape.is_series() {
                    return Err(Error::InvalidConfig("series coefficient rings are not supported".into()));
                }
                let cfg = build_config(&coefficients.build()?, twist, delta.as_ref(), variable, *shape)?.0;
                Ok(Ring::Poly(cfg))
            }
        }
    }
}

fn build_config(
    ring: &Ring,
    twist: &TwistDescriptor,
    delta: Option<&TwistDescriptor>,
    variable: &str,
    shape: Shape,
) -> Result<(Arc<RingConfig>, Vec<TwistReport>)> {
    let sigma = make_twist(ring, twist)?;
    let mut reports = vec![validate_twist_axioms(&sigma, MapRole::Sigma)];
    let delta = match delta {
        Some(d) => {
            let d = make_delta(ring, d)?;
            reports.push(validate_twist_axioms(&d, MapRole::Delta));
            Some(d)
        }
        None => None,
    };
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        let failed: Vec<&str> = bad.checks.iter().filter(|c| !c.passed).map(|c| c.axiom.as_str()).collect();
        return Err(Error::InvalidConfig(format!("{} fails {}", bad.map, failed.join(", "))));
    }
    let cfg = RingConfig::new(ring.clone(), sigma, delta, variable, shape)?;
    Ok((cfg, reports))
}

/// A configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliConfig {
    pub ring: RingDescriptor,
    #[serde(default = "identity")]
    pub twist: TwistDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<TwistDescriptor>,
    pub shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    #[serde(default = "default_variable")]
    pub variable: String,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub config: Arc<RingConfig>,
    pub precision: Option<i64>,
    pub reports: Vec<TwistReport>,
}

impl Loaded {
    /// Parses an expression; series are cut to the configured precision.
    pub fn parse(&self, text: &str) -> Result<Expr> {
        match parse_expr(text, &self.config)? {
            Expr::Series(s) => {
                let n = self.precision.unwrap_or(s.precision());
                Ok(Expr::Series(s.truncate(n)))
            }
            p => Ok(p),
        }
    }

    pub fn parse_series(&self, text: &str) -> Result<TruncatedSeries> {
        match self.parse(text)? {
            Expr::Series(s) => Ok(s),
            Expr::Poly(_) => Err(Error::InvalidConfig("expected a series".into())),
        }
    }
}

impl CliConfig {
    pub fn from_json(text: &str) -> Result<CliConfig> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the compact JSON form, hex encoded.
    pub fn digest(&self) -> String {
        Sha256::digest(self.to_json().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Builds the ring after checking the twist axioms.
    pub fn load(&self) -> Result<Loaded> {
        match (self.shape.is_series(), self.precision) {
            (true, None) => {
                return Err(Error::InvalidConfig("series shapes need a precision".into()));
            }
            (false, Some(_)) => {
                return Err(Error::InvalidConfig("precision only applies to series shapes".into()));
            }
            _ => {}
        }
        let ring = self.ring.build()?;
        let (config, reports) =
            build_config(&ring, &self.twist, self.delta.as_ref(), &self.variable, self.shape)?;
        Ok(Loaded {
            config,
            precision: self.precision,
            reports,
        })
    }
}
