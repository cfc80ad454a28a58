//! Truncated skew power series `R[[X; σ]]` and skew Laurent series
//! `R((X; σ))`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{add_term, sigma_powers, RingConfig, SkewPoly};
use crate::rings::{invert, left_divide, right_divide, RingElement};

/// A series known modulo `X^(N+1)`, where `N` is the precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    config: Arc<RingConfig>,
    precision: i64,
    coeffs: BTreeMap<i64, RingElement>,
}

impl TruncatedSeries {
    fn check_shape(config: &RingConfig) -> Result<()> {
        if config.shape().is_series() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "{} is not a series shape",
                config.shape().name()
            )))
        }
    }

    /// Drops zero coefficients and everything above the precision.
    pub fn new(
        config: &Arc<RingConfig>,
        precision: i64,
        coeffs: BTreeMap<i64, RingElement>,
    ) -> Result<TruncatedSeries> {
        TruncatedSeries::check_shape(config)?;
        if let Some((&e, _)) = coeffs.iter().next() {
            if e < 0 && !config.shape().allows_negative() {
                return Err(Error::InvalidConfig("negative exponent in a power series".into()));
            }
        }
        if precision < -1 && !config.shape().allows_negative() {
            return Err(Error::InvalidConfig("negative precision in a power series".into()));
        }
        let coeffs = coeffs
            .into_iter()
            .filter(|(e, c)| *e <= precision && !c.is_zero())
            .collect();
        Ok(TruncatedSeries {
            config: config.clone(),
            precision,
            coeffs,
        })
    }

    pub fn zero(config: &Arc<RingConfig>, precision: i64) -> Result<TruncatedSeries> {
        TruncatedSeries::new(config, precision, BTreeMap::new())
    }

    pub fn one(config: &Arc<RingConfig>, precision: i64) -> Result<TruncatedSeries> {
        let one = BTreeMap::from([(0, config.coefficients().one())]);
        TruncatedSeries::new(config, precision, one)
    }

    /// A polynomial viewed as a series, truncated at `precision`.
    pub fn from_poly(p: &SkewPoly, precision: i64) -> Result<TruncatedSeries> {
        TruncatedSeries::new(p.config(), precision, p.terms().clone())
    }

    /// Embeds a polynomial of another config with the same coefficients and
    /// `σ` into the series config.
    pub fn embed(
        config: &Arc<RingConfig>,
        p: &SkewPoly,
        precision: i64,
    ) -> Result<TruncatedSeries> {
        let pc = p.config();
        if pc.coefficients() != config.coefficients()
            || pc.sigma() != config.sigma()
            || pc.delta().is_some()
        {
            return Err(Error::IncompatibleRings(format!("{pc} into {config}")));
        }
        TruncatedSeries::new(config, precision, p.terms().clone())
    }

    pub fn config(&self) -> &Arc<RingConfig> {
        &self.config
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, RingElement> {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Option<&RingElement> {
        self.coeffs.get(&e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The known part as a polynomial.
    pub fn to_poly(&self) -> SkewPoly {
        SkewPoly::from_terms(&self.config, self.coeffs.clone())
    }

    /// Least exponent with a nonzero coefficient and that coefficient.
    pub fn order_leading(&self) -> Result<(i64, RingElement)> {
        self.coeffs
            .iter()
            .next()
            .map(|(&e, c)| (e, c.clone()))
            .ok_or(Error::OrderUndefined)
    }

    /// Order, or `N + 1` for a series that vanishes to its precision.
    fn order_bound(&self) -> i64 {
        self.coeffs
            .keys()
            .next()
            .copied()
            .unwrap_or(self.precision + 1)
    }

    /// Lowers the precision to `n`.
    pub fn truncate(&self, n: i64) -> TruncatedSeries {
        let n = n.min(self.precision);
        TruncatedSeries {
            config: self.config.clone(),
            precision: n,
            coeffs: self.coeffs.range(..=n).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    fn check_config(&self, other: &TruncatedSeries) -> Result<()> {
        if Arc::ptr_eq(&self.config, &other.config) || self.config == other.config {
            Ok(())
        } else {
            Err(Error::IncompatibleRings(format!(
                "{} vs {}",
                self.config, other.config
            )))
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_config(other)?;
        let precision = self.precision.min(other.precision);
        let mut coeffs: BTreeMap<i64, RingElement> = self
            .coeffs
            .range(..=precision)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        for (&e, c) in other.coeffs.range(..=precision) {
            add_term(&mut coeffs, e, c.clone())?;
        }
        Ok(TruncatedSeries {
            config: self.config.clone(),
            precision,
            coeffs,
        })
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            config: self.config.clone(),
            precision: self.precision,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    /// Twisted Cauchy product. Known up to
    /// `min(N_a + ord b, N_b + ord a)`.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_config(other)?;
        let precision = (self.precision + other.order_bound())
            .min(other.precision + self.order_bound());
        let exps: Vec<i64> = self.coeffs.keys().copied().collect();
        let mut coeffs = BTreeMap::new();
        for (&n, s) in &other.coeffs {
            let useful: Vec<i64> = exps.iter().copied().filter(|m| m + n <= precision).collect();
            if useful.is_empty() {
                continue;
            }
            let powers = sigma_powers(self.config.sigma(), s, &useful)?;
            for (m, sm) in useful.into_iter().zip(powers) {
                add_term(&mut coeffs, m + n, self.coeffs[&m].mul(&sm)?)?;
            }
        }
        Ok(TruncatedSeries {
            config: self.config.clone(),
            precision,
            coeffs,
        })
    }

    /// `self · h` for an exactly known polynomial `h`; known up to
    /// `N + ord h`.
    pub fn mul_poly(&self, h: &SkewPoly) -> Result<TruncatedSeries> {
        if **h.config() != *self.config {
            return Err(Error::IncompatibleRings(format!("{} vs {}", h.config(), self.config)));
        }
        if h.is_zero() {
            return TruncatedSeries::zero(&self.config, self.precision + self.order_bound());
        }
        let (deg, ord, _) = h.degree_order_leading()?;
        let exact = self.precision + ord - self.order_bound();
        let rhs = TruncatedSeries::new(&self.config, deg.max(exact), h.terms().clone())?;
        self.mul(&rhs)
    }

    /// `(order, leading, precision of the inverse)` for a series whose
    /// leading coefficient is a unit.
    fn unit_data(&self) -> Result<(i64, RingElement, i64)> {
        let (o, lead) = self.order_leading().map_err(|_| Error::NotAUnit)?;
        if o != 0 && !self.config.shape().allows_negative() {
            return Err(Error::NotAUnit);
        }
        invert(&lead).map_err(|_| Error::NotAUnit)?;
        Ok((o, lead, self.precision - 2 * o))
    }

    fn unit_target(&self, k: i64) -> RingElement {
        let ring = self.config.coefficients();
        if k == 0 {
            ring.one()
        } else {
            ring.zero()
        }
    }

    /// The `b` with `a b = 1`, to precision `N − 2·ord`.
    ///
    /// When `σ` is not an automorphism the ring is not associative and the
    /// left inverse may differ; see [`TruncatedSeries::left_inverse`].
    pub fn invert(&self) -> Result<TruncatedSeries> {
        let (o, lead, precision) = self.unit_data()?;
        let sigma = self.config.sigma();
        // Coefficient k of a b is Σ_i a_i σ^i(b_(k−i)).
        let mut right: BTreeMap<i64, RingElement> = BTreeMap::new();
        for j in -o..=precision {
            let k = j + o;
            let mut rhs = self.unit_target(k);
            for (&i, ai) in self.coeffs.range(o + 1..).take_while(|(&i, _)| i <= k + o) {
                if let Some(bj) = right.get(&(k - i)) {
                    rhs = rhs.sub(&ai.mul(&sigma.apply_power(i, bj)?)?)?;
                }
            }
            let t = left_divide(&lead, &rhs)?.ok_or(Error::NotAUnit)?;
            let bj = sigma.apply_power(-o, &t)?;
            if !bj.is_zero() {
                right.insert(j, bj);
            }
        }
        TruncatedSeries::new(&self.config, precision, right)
    }

    /// The `b'` with `b' a = 1`, to precision `N − 2·ord`.
    pub fn left_inverse(&self) -> Result<TruncatedSeries> {
        let (o, lead, precision) = self.unit_data()?;
        let sigma = self.config.sigma();
        // Coefficient k of b' a is Σ_j b'_j σ^j(a_(k−j)).
        let mut left: BTreeMap<i64, RingElement> = BTreeMap::new();
        for j in -o..=precision {
            let k = j + o;
            let mut rhs = self.unit_target(k);
            for (&bj, b) in &left {
                if let Some(ai) = self.coeffs.get(&(k - bj)) {
                    rhs = rhs.sub(&b.mul(&sigma.apply_power(bj, ai)?)?)?;
                }
            }
            let t = right_divide(&rhs, &sigma.apply_power(j, &lead)?)?.ok_or(Error::NotAUnit)?;
            if !t.is_zero() {
                left.insert(j, t);
            }
        }
        TruncatedSeries::new(&self.config, precision, left)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_series(self))
    }
}

/// `a · b`.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

/// Right inverse of a unit series.
pub fn series_invert(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.invert()
}

/// `(order, leading coefficient)`.
pub fn series_order_leading(a: &TruncatedSeries) -> Result<(i64, RingElement)> {
    a.order_leading()
}
