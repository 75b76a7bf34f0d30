use crate::error::{Error, Result};

/// Accuracy and work limits shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Absolute error the evaluators aim for.
    pub target_abs_error: f64,
    /// Cap on the number of terms any single summation may use.
    pub max_terms: usize,
    /// Highest derivative order used in Euler–Maclaurin corrections (even).
    pub euler_maclaurin_order: usize,
}

pub const MIN_TARGET_ABS_ERROR: f64 = 1e-14;
pub const MIN_MAX_TERMS: usize = 16;

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target_abs_error: 1e-12,
            max_terms: 1_000_000,
            euler_maclaurin_order: 8,
        }
    }
}

impl EvalConfig {
    pub fn new(target_abs_error: f64, max_terms: usize, euler_maclaurin_order: usize) -> Result<Self> {
        let cfg = EvalConfig {
            target_abs_error,
            max_terms,
            euler_maclaurin_order,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_target(mut self, target_abs_error: f64) -> Self {
        self.target_abs_error = target_abs_error;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.euler_maclaurin_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_error.is_finite() && self.target_abs_error >= MIN_TARGET_ABS_ERROR) {
            return Err(Error::Config(format!(
                "target_abs_error must be >= {MIN_TARGET_ABS_ERROR:e}, got {}",
                self.target_abs_error
            )));
        }
        if self.max_terms < MIN_MAX_TERMS {
            return Err(Error::Config(format!(
                "max_terms must be >= {MIN_MAX_TERMS}, got {}",
                self.max_terms
            )));
        }
        let order = self.euler_maclaurin_order;
        if order < 2 || order % 2 != 0 {
            return Err(Error::Config(format!(
                "euler_maclaurin_order must be an even integer >= 2, got {order}"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        assert!(EvalConfig::default().validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(EvalConfig::new(1e-15, 100, 8).is_err());
        assert!(EvalConfig::new(f64::NAN, 100, 8).is_err());
        assert!(EvalConfig::new(1e-10, 15, 8).is_err());
        assert!(EvalConfig::new(1e-10, 100, 7).is_err());
        assert!(EvalConfig::new(1e-10, 100, 0).is_err());
        assert!(EvalConfig::new(1e-14, 16, 2).is_ok());
    }
}
