//! The two symmetric potential families: the quartic double well
//! `V = (g²/2)(x² − 1)²` and the hard-walled box on `[−1, 1]` with a
//! repulsive δ-spike of strength `λ` at the origin.
//!
//! The box variant is parameterized by `δ = π − p`, where `p` is the
//! ground-state wavenumber. The spike itself is never evaluated pointwise;
//! it only enters through the matching condition `λ = −p cot p`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{ExciteError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Potential {
    Quartic { g: f64 },
    DeltaBox { delta: f64 },
}

impl Potential {
    pub fn quartic(g: f64) -> Result<Self> {
        if !(g.is_finite() && g > 0.0) {
            return Err(ExciteError::InvalidParameter(format!(
                "quartic coupling g must be positive, got {g}"
            )));
        }
        Ok(Potential::Quartic { g })
    }

    /// `delta` must lie in `(0, π/2]`; the closed end is the plain box (`λ = 0`).
    pub fn delta_box(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Ok(Potential::DeltaBox { delta })
    }

    /// Potential energy at `x`. For the box this is the smooth part only
    /// (zero inside, infinite outside); the spike is carried by [`soluble_params`].
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Potential::Quartic { g } => eval_quartic(g, x),
            Potential::DeltaBox { .. } => {
                if x.abs() < 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Potential::Quartic { .. } => "quartic",
            Potential::DeltaBox { .. } => "delta_box",
        }
    }
}

/// `(g²/2)(x² − 1)²`.
pub fn eval_quartic(g: f64, x: f64) -> f64 {
    let w = x * x - 1.0;
    0.5 * g * g * w * w
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta.is_finite() && delta > 0.0 && delta <= FRAC_PI_2) {
        return Err(ExciteError::InvalidParameter(format!(
            "delta must lie in (0, pi/2], got {delta}"
        )));
    }
    Ok(())
}

/// Ground-state wavenumber `p = π − δ` and spike strength `λ = (π − δ) cot δ`.
pub fn soluble_params(delta: f64) -> Result<(f64, f64)> {
    check_delta(delta)?;
    let p = PI - delta;
    let lambda = (p * delta.cos() / delta.sin()).max(0.0);
    Ok((p, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quartic_values() {
        assert_eq!(eval_quartic(3.0, 1.0), 0.0);
        assert_eq!(eval_quartic(3.0, 0.0), 4.5);
        assert_eq!(eval_quartic(8.0, 2.0), 288.0);
    }

    #[test]
    fn soluble_params_examples() {
        let (p, lambda) = soluble_params(0.1).unwrap();
        assert!((p - 3.041_592_653_589_793).abs() < 1e-15);
        // p·cot(0.1)
        assert!((lambda - 30.314_472_458_726_975).abs() < 1e-12, "{lambda}");

        let (p, lambda) = soluble_params(std::f64::consts::FRAC_PI_4).unwrap();
        assert!((p - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((lambda - 3.0 * PI / 4.0).abs() < 1e-14);

        let (_, big) = soluble_params(1e-8).unwrap();
        assert!(big > 1e8);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(soluble_params(0.0).is_err());
        assert!(soluble_params(-0.1).is_err());
        assert!(soluble_params(1.6).is_err());
        assert!(soluble_params(f64::NAN).is_err());
        assert!(Potential::quartic(0.0).is_err());
        assert!(Potential::quartic(-3.0).is_err());
        assert!(Potential::delta_box(2.0).is_err());
    }

    proptest! {
        #[test]
        fn quartic_is_even(g in 0.1f64..12.0, x in -6.0f64..6.0) {
            prop_assert_eq!(eval_quartic(g, x), eval_quartic(g, -x));
            let v = Potential::quartic(g).unwrap();
            prop_assert_eq!(v.eval(x), v.eval(-x));
        }

        #[test]
        fn matching_condition_identity(delta in 1e-3f64..1.5) {
            let (p, lambda) = soluble_params(delta).unwrap();
            let lhs = -p * p.cos() / p.sin();
            prop_assert!(((lhs - lambda) / lambda).abs() < 1e-12);
            prop_assert!(p > 0.0 && lambda > 0.0);
        }
    }
}
