//! Scalar function families used to transport the radius bounds: convex
//! gauges `h`, factor pairs `(f, g)` with `f(t) g(t) = t`, and Holder
//! conjugate exponent pairs.
//!
//! The families are a closed enum rather than arbitrary callables so the
//! hypothesis certificates (monotone, convex, nonnegative on the working
//! range) stay decidable by sampling.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Convexity/monotonicity certificate grid: 256 points on [0, 10].
const GRID_POINTS: usize = 256;
const GRID_MAX: f64 = 10.0;
const SECOND_DIFF_TOL: f64 = 1e-9;

/// Nonnegative nondecreasing convex gauge on `[0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GaugeH {
    /// `t -> t^r`, `r >= 1`.
    Power { r: f64 },
    /// `t -> exp(s t) - 1`, `s > 0`.
    ExpM1 { s: f64 },
    /// `t -> max(0, t - c)`, `c >= 0`.
    Hinge { c: f64 },
}

impl GaugeH {
    fn raw_eval(&self, t: f64) -> f64 {
        match *self {
            GaugeH::Power { r } => t.powf(r),
            GaugeH::ExpM1 { s } => (s * t).exp_m1(),
            GaugeH::Hinge { c } => (t - c).max(0.0),
        }
    }
}

impl fmt::Display for GaugeH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GaugeH::Power { r } => write!(f, "power:r={r}"),
            GaugeH::ExpM1 { s } => write!(f, "expm1:s={s}"),
            GaugeH::Hinge { c } => write!(f, "hinge:c={c}"),
        }
    }
}

impl FromStr for GaugeH {
    type Err = Error;

    /// Parse the CLI/config literal: `power:r=2`, `expm1:s=1`, `hinge:c=0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |m: String| Error::Parse { message: m };
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| parse_err(format!("gauge literal `{s}` missing `:`")))?;
        let (key, val) = rest
            .split_once('=')
            .ok_or_else(|| parse_err(format!("gauge literal `{s}` missing `=`")))?;
        let value: f64 = val
            .parse()
            .map_err(|_| parse_err(format!("gauge literal `{s}`: bad number `{val}`")))?;
        match (family, key) {
            ("power", "r") => Ok(GaugeH::Power { r: value }),
            ("expm1", "s") => Ok(GaugeH::ExpM1 { s: value }),
            ("hinge", "c") => Ok(GaugeH::Hinge { c: value }),
            _ => Err(parse_err(format!("unknown gauge literal `{s}`"))),
        }
    }
}

/// Evaluate a gauge at `t >= 0`.
pub fn gauge_eval(h: &GaugeH, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::NegativeInput { value: t });
    }
    Ok(h.raw_eval(t))
}

/// Sampled validity certificate for a gauge.
#[derive(Debug, Clone, Serialize)]
pub struct GaugeValidity {
    pub family_ok: bool,
    pub nonnegative_ok: bool,
    pub monotone_ok: bool,
    pub convex_ok: bool,
}

impl GaugeValidity {
    pub fn valid(&self) -> bool {
        self.family_ok && self.nonnegative_ok && self.monotone_ok && self.convex_ok
    }
}

/// Check nonnegativity, monotonicity, and convexity by sampled differences on
/// a 256-point grid over [0, 10]. `Power` with `r < 1` is rejected outright.
pub fn validate_gauge(h: &GaugeH) -> GaugeValidity {
    let family_ok = match *h {
        GaugeH::Power { r } => r >= 1.0 && r.is_finite(),
        GaugeH::ExpM1 { s } => s > 0.0 && s.is_finite(),
        GaugeH::Hinge { c } => c >= 0.0 && c.is_finite(),
    };
    let step = GRID_MAX / (GRID_POINTS - 1) as f64;
    let samples: Vec<f64> = (0..GRID_POINTS)
        .map(|k| h.raw_eval(step * k as f64))
        .collect();
    let nonnegative_ok = samples.iter().all(|&v| v >= 0.0 && v.is_finite());
    let monotone_ok = samples.windows(2).all(|w| w[1] - w[0] >= -SECOND_DIFF_TOL);
    let convex_ok = samples
        .windows(3)
        .all(|w| w[2] - 2.0 * w[1] + w[0] >= -SECOND_DIFF_TOL);
    GaugeValidity {
        family_ok,
        nonnegative_ok,
        monotone_ok,
        convex_ok,
    }
}

/// `f(t) = t^alpha`, `g(t) = t^(1-alpha)` with `alpha` in [0, 1]; the product
/// `f g = id` holds by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorPair {
    pub alpha: f64,
}

impl FactorPair {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
            return Err(Error::InvalidPair { alpha });
        }
        Ok(Self { alpha })
    }

    pub fn is_valid(&self) -> bool {
        self.alpha.is_finite() && (0.0..=1.0).contains(&self.alpha)
    }

    pub fn f(&self, t: f64) -> f64 {
        t.powf(self.alpha)
    }

    pub fn g(&self, t: f64) -> f64 {
        t.powf(1.0 - self.alpha)
    }
}

/// Evaluate `(f(t), g(t))` for `t >= 0`.
pub fn factor_eval(pair: &FactorPair, t: f64) -> Result<(f64, f64)> {
    if t < 0.0 {
        return Err(Error::NegativeInput { value: t });
    }
    Ok((pair.f(t), pair.g(t)))
}

/// Two independent factor pairs `(f1, g1)`, `(f2, g2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorQuad {
    pub pair1: FactorPair,
    pub pair2: FactorPair,
}

impl FactorQuad {
    pub fn new(alpha1: f64, alpha2: f64) -> Result<Self> {
        Ok(Self {
            pair1: FactorPair::new(alpha1)?,
            pair2: FactorPair::new(alpha2)?,
        })
    }

    pub fn is_valid(&self) -> bool {
        self.pair1.is_valid() && self.pair2.is_valid()
    }
}

/// Conjugate exponents `p, q > 1` with `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderPair {
    pub p: f64,
    pub q: f64,
}

impl HolderPair {
    pub fn is_valid(&self) -> bool {
        self.p > 1.0 && self.q > 1.0 && (1.0 / self.p + 1.0 / self.q - 1.0).abs() <= 1e-12
    }

    pub fn min_exponent(&self) -> f64 {
        self.p.min(self.q)
    }
}

/// Build the conjugate pair from `p > 1`: `q = p / (p - 1)`.
pub fn holder_conjugate(p: f64) -> Result<HolderPair> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::OutOfRange { what: "p", value: p });
    }
    Ok(HolderPair { p, q: p / (p - 1.0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_eval_examples() {
        assert_eq!(gauge_eval(&GaugeH::Power { r: 3.0 }, 2.0).unwrap(), 8.0);
        assert_eq!(gauge_eval(&GaugeH::ExpM1 { s: 1.0 }, 0.0).unwrap(), 0.0);
        assert_eq!(gauge_eval(&GaugeH::Hinge { c: 1.0 }, 0.5).unwrap(), 0.0);
        assert!(matches!(
            gauge_eval(&GaugeH::Power { r: 2.0 }, -1.0),
            Err(Error::NegativeInput { .. })
        ));
    }

    #[test]
    fn gauge_validity() {
        assert!(!validate_gauge(&GaugeH::Power { r: 0.5 }).valid());
        assert!(validate_gauge(&GaugeH::Power { r: 1.0 }).valid());
        assert!(validate_gauge(&GaugeH::ExpM1 { s: 2.0 }).valid());
        assert!(validate_gauge(&GaugeH::Hinge { c: 0.5 }).valid());
        assert!(!validate_gauge(&GaugeH::ExpM1 { s: -1.0 }).valid());
        assert!(!validate_gauge(&GaugeH::Hinge { c: -0.1 }).valid());
    }

    #[test]
    fn factor_eval_examples() {
        let half = FactorPair::new(0.5).unwrap();
        assert_eq!(factor_eval(&half, 4.0).unwrap(), (2.0, 2.0));
        let one = FactorPair::new(1.0).unwrap();
        assert_eq!(factor_eval(&one, 5.0).unwrap(), (5.0, 1.0));
        let quarter = FactorPair::new(0.25).unwrap();
        assert_eq!(factor_eval(&quarter, 16.0).unwrap(), (2.0, 8.0));
    }

    #[test]
    fn factor_product_identity_sampled() {
        for k in 0..64 {
            let alpha = k as f64 / 63.0;
            let pair = FactorPair::new(alpha).unwrap();
            for j in 1..=8 {
                let t = 1.5f64.powi(j) - 1.0;
                let (f, g) = factor_eval(&pair, t).unwrap();
                let rel = (f * g - t).abs() / t.max(1e-300);
                assert!(rel <= 1e-12, "alpha {alpha} t {t} rel {rel}");
            }
        }
    }

    #[test]
    fn holder_examples() {
        let h = holder_conjugate(2.0).unwrap();
        assert_eq!((h.p, h.q), (2.0, 2.0));
        let h = holder_conjugate(3.0).unwrap();
        assert!((h.q - 1.5).abs() < 1e-15 && h.is_valid());
        let h = holder_conjugate(1.25).unwrap();
        assert!((h.q - 5.0).abs() < 1e-12 && h.is_valid());
        assert!(matches!(
            holder_conjugate(1.0),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn gauge_literal_parsing() {
        assert_eq!(
            "power:r=2".parse::<GaugeH>().unwrap(),
            GaugeH::Power { r: 2.0 }
        );
        assert_eq!(
            "expm1:s=1".parse::<GaugeH>().unwrap(),
            GaugeH::ExpM1 { s: 1.0 }
        );
        assert_eq!(
            "hinge:c=0.5".parse::<GaugeH>().unwrap(),
            GaugeH::Hinge { c: 0.5 }
        );
        assert!("power:r".parse::<GaugeH>().is_err());
        assert!("quadratic:a=1".parse::<GaugeH>().is_err());
    }
}
