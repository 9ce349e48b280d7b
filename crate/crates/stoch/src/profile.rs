//! Field production profiles: a flat plateau followed by exponential
//! decline, continuous at the transition.

use crate::error::StochError;

#[derive(Clone, Copy, Debug)]
pub struct ProductionProfileParams {
    /// Plateau production rate (volume per period).
    pub plateau_rate: f64,
    /// Plateau length (periods).
    pub plateau_length: f64,
    /// Exponential decline constant (1/period).
    pub decline: f64,
}

impl ProductionProfileParams {
    pub fn validate(&self) -> Result<(), StochError> {
        if self.plateau_rate >= 0.0 && self.plateau_length >= 0.0 && self.decline >= 0.0 {
            Ok(())
        } else {
            Err(StochError::Params("production profile parameters must be nonnegative".into()))
        }
    }
}

/// Production rate at period `t`: the plateau rate up to and including
/// the plateau length, declining exponentially afterwards.
pub fn production_rate(params: &ProductionProfileParams, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if t <= params.plateau_length {
        params.plateau_rate
    } else {
        params.plateau_rate * (-params.decline * (t - params.plateau_length)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const FIELD: ProductionProfileParams =
        ProductionProfileParams { plateau_rate: 100.0, plateau_length: 5.0, decline: 0.1 };

    #[test]
    fn plateau_boundary_and_decline() {
        assert_relative_eq!(production_rate(&FIELD, 3.0), 100.0);
        assert_relative_eq!(production_rate(&FIELD, 5.0), 100.0);
        assert_relative_eq!(
            production_rate(&FIELD, 15.0),
            100.0 * (-1.0f64).exp(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn profile_is_nonincreasing_and_continuous() {
        let mut last = f64::INFINITY;
        for i in 0..=400 {
            let t = f64::from(i) * 0.05;
            let q = production_rate(&FIELD, t);
            assert!(q <= last + 1e-12);
            last = q;
        }
        let eps = 1e-9;
        let before = production_rate(&FIELD, 5.0 - eps);
        let after = production_rate(&FIELD, 5.0 + eps);
        assert_relative_eq!(before, after, epsilon = 1e-6);
    }

    #[test]
    fn negative_parameters_fail_validation() {
        let bad = ProductionProfileParams { decline: -0.1, ..FIELD };
        assert!(bad.validate().is_err());
    }
}
