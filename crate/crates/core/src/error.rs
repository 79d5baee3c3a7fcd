use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{func}: pole at s = {at}")]
    Pole { func: &'static str, at: Complex64 },

    #[error("{func}: result not representable as f64 at s = {at}")]
    Overflow { func: &'static str, at: Complex64 },

    #[error("{func}: argument {value} outside domain, expected {expected}")]
    Domain {
        func: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{func}: no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence {
        func: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("zeta_em: accuracy {target:e} unreachable at s = {at} (best estimate {estimate:e})")]
    AccuracyUnreachable {
        at: Complex64,
        target: f64,
        estimate: f64,
    },
}

pub(crate) fn domain(func: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        func,
        value,
        expected,
    }
}
