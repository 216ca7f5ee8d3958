use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::max_points;
use crate::rational::{self, Rational};
use crate::regularity::SelectOptions;

/// Parameters of the removal pipeline. Unset overrides take the values used
/// in the recolouring argument: ζ = ε/4r, δ = ε/8r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub epsilon: Rational,
    /// ε for the counting step; the recolouring runs at min(ε, this).
    pub counting_epsilon: Option<Rational>,
    /// ε for the two-level selection; defaults to the recolouring ε.
    pub two_level_epsilon: Option<Rational>,
    pub zeta: Option<Rational>,
    pub delta: Option<Rational>,
    pub seed: u64,
    /// Enumeration cap for the solution search.
    pub cap: u64,
    pub select: SelectOptions,
}

/// Every derived parameter of a run, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedParameters {
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub recolour_epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub two_level_epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub zeta: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta_prime: Rational,
    /// ε/4r, the low-density threshold.
    #[serde(with = "rational::serde_str")]
    pub low_density: Rational,
    pub seed: u64,
}

impl PipelineConfig {
    pub fn new(epsilon: Rational, seed: u64) -> Result<Self> {
        if epsilon <= Rational::zero() || epsilon > Rational::one() {
            return Err(Error::invalid("ε must lie in (0, 1]"));
        }
        Ok(PipelineConfig {
            epsilon,
            counting_epsilon: None,
            two_level_epsilon: None,
            zeta: None,
            delta: None,
            seed,
            cap: max_points(),
            select: SelectOptions::default(),
        })
    }

    /// min(ε, ε_count).
    pub fn recolour_epsilon(&self) -> Rational {
        match &self.counting_epsilon {
            Some(c) if c < &self.epsilon => c.clone(),
            _ => self.epsilon.clone(),
        }
    }

    pub fn derive(&self, r: u8, m: usize) -> DerivedParameters {
        let eps = self.recolour_epsilon();
        let r = rational::integer(i64::from(r));
        let eight_r = &r * rational::integer(8);
        let base = &eps / &eight_r;
        let mut power = Rational::one();
        for _ in 0..m {
            power *= &base;
        }
        DerivedParameters {
            epsilon: self.epsilon.clone(),
            two_level_epsilon: self.two_level_epsilon.clone().unwrap_or_else(|| eps.clone()),
            zeta: self.zeta.clone().unwrap_or_else(|| &eps / (&r * rational::integer(4))),
            delta: self.delta.clone().unwrap_or_else(|| base.clone()),
            delta_prime: power / rational::integer(2 * m as i64),
            low_density: &eps / (&r * rational::integer(4)),
            recolour_epsilon: eps,
            seed: self.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_values() {
        let cfg = PipelineConfig::new(rational::ratio(1, 4), 3).unwrap();
        let d = cfg.derive(2, 3);
        assert_eq!(d.zeta, rational::ratio(1, 32));
        assert_eq!(d.delta, rational::ratio(1, 64));
        assert_eq!(d.delta_prime, rational::ratio(1, 64 * 64 * 64 * 6));
        assert_eq!(d.two_level_epsilon, rational::ratio(1, 4));
    }

    #[test]
    fn counting_epsilon_caps_recolouring() {
        let mut cfg = PipelineConfig::new(rational::ratio(1, 4), 0).unwrap();
        cfg.counting_epsilon = Some(rational::ratio(1, 8));
        assert_eq!(cfg.recolour_epsilon(), rational::ratio(1, 8));
        cfg.counting_epsilon = Some(rational::ratio(1, 2));
        assert_eq!(cfg.recolour_epsilon(), rational::ratio(1, 4));
        assert!(PipelineConfig::new(rational::integer(0), 0).is_err());
    }
}
