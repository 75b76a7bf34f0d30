use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// How a [`SumResult`] was obtained.
///
/// `Cesaro` and `Abel` carry heuristic error estimates (oscillation of the
/// final iterates); the others carry rigorous bounds, except `Richardson`,
/// whose estimate is the spread of the last extrapolants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    EulerMaclaurinTail,
    Cesaro(u8),
    Abel,
    Richardson,
    ClosedForm,
}

impl Method {
    pub fn is_heuristic(&self) -> bool {
        matches!(self, Method::Cesaro(_) | Method::Abel | Method::Richardson)
    }

    pub fn parse(tag: &str) -> Option<Method> {
        match tag {
            "direct" => Some(Method::Direct),
            "euler_maclaurin_tail" => Some(Method::EulerMaclaurinTail),
            "abel" => Some(Method::Abel),
            "richardson" => Some(Method::Richardson),
            "closed_form" => Some(Method::ClosedForm),
            _ => {
                let k = tag.strip_prefix("cesaro(")?.strip_suffix(')')?;
                k.parse().ok().map(Method::Cesaro)
            }
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Direct => f.write_str("direct"),
            Method::EulerMaclaurinTail => f.write_str("euler_maclaurin_tail"),
            Method::Cesaro(k) => write!(f, "cesaro({k})"),
            Method::Abel => f.write_str("abel"),
            Method::Richardson => f.write_str("richardson"),
            Method::ClosedForm => f.write_str("closed_form"),
        }
    }
}

/// A value together with how much to trust it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub method: Method,
}

impl SumResult {
    pub fn new(value: Complex64, abs_error_estimate: f64, terms_used: usize, method: Method) -> Self {
        SumResult {
            value,
            abs_error_estimate,
            terms_used,
            method,
        }
    }

    pub fn exact(value: Complex64) -> Self {
        SumResult::new(value, 0.0, 0, Method::ClosedForm)
    }

    /// Rejects NaN/Inf before a result leaves a public operation.
    pub(crate) fn finite(self) -> Result<Self> {
        if self.value.re.is_finite() && self.value.im.is_finite() && self.abs_error_estimate.is_finite() {
            Ok(self)
        } else {
            Err(Error::Convergence(format!(
                "non-finite result {} (error estimate {})",
                self.value, self.abs_error_estimate
            )))
        }
    }
}

impl fmt::Display for SumResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.15e}{:+.15e}i  ± {:.3e}  ({} terms, {})",
            self.value.re, self.value.im, self.abs_error_estimate, self.terms_used, self.method
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_tags_round_trip() {
        for m in [
            Method::Direct,
            Method::EulerMaclaurinTail,
            Method::Cesaro(3),
            Method::Abel,
            Method::Richardson,
            Method::ClosedForm,
        ] {
            assert_eq!(Method::parse(&m.to_string()), Some(m));
        }
        assert_eq!(Method::parse("cesaro(x)"), None);
    }

    #[test]
    fn non_finite_is_an_error() {
        let r = SumResult::new(Complex64::new(f64::NAN, 0.0), 0.0, 1, Method::Direct);
        assert!(matches!(r.finite(), Err(Error::Convergence(_))));
    }
}
