use std::fmt;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use num_complex::Complex64;
use strebel::exactnum::MIN_PRECISION;
use strebel::{Error, GaussRat};

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input or an impossible request: exit 2.
    Usage(String),
    /// A computation error: exit 1.
    Core(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(e) if is_input_error(e) => 2,
            Failure::Core(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Core(e) => error_kind(e),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::DegenerateLambda
            | Error::Domain(_)
            | Error::UnknownMap(_)
            | Error::MalformedGraph(_)
            | Error::TooLarge { .. }
            | Error::UnsupportedDegree(_)
    )
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division_by_zero",
        Error::DegreeTooLow { .. } => "degree_too_low",
        Error::UnsupportedDegree(_) => "unsupported_degree",
        Error::NoConvergence { .. } => "no_convergence",
        Error::Parse(_) => "parse",
        Error::DegenerateLambda => "degenerate_lambda",
        Error::Domain(_) => "domain",
        Error::NotDoublePole(_) => "not_double_pole",
        Error::CoincidentPoles => "coincident_poles",
        Error::UnknownMap(_) => "unknown_map",
        Error::NumericAmbiguity { .. } => "numeric_ambiguity",
        Error::Verification(_) => "verification",
        Error::MalformedGraph(_) => "malformed_graph",
        Error::TooLarge { .. } => "too_large",
        Error::PathCollision { .. } => "path_collision",
        Error::Quadrature(_) => "quadrature",
        Error::NewtonDivergence(_) => "newton_divergence",
        Error::Degenerate(_) => "degenerate",
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

/// Settings shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub precision: u32,
    pub tolerance: f64,
    pub format: Format,
}

impl RunConfig {
    /// Applies the floor `2^(16 - precision)` to the tolerance: a default is raised to it,
    /// an explicit value below it is rejected.
    pub fn new(precision: u32, tolerance: Option<f64>, default_tol: f64, format: Format) -> Outcome<Self> {
        if precision < MIN_PRECISION {
            return Err(Failure::Usage(format!("precision {precision} below the minimum of {MIN_PRECISION} bits")));
        }
        let floor = 2f64.powi(16 - precision as i32);
        let tolerance = match tolerance {
            Some(t) if !(t.is_finite() && t > 0.0) => {
                return Err(Failure::Usage(format!("tolerance {t} must be positive")));
            }
            Some(t) if t < floor => {
                return Err(Failure::Usage(format!(
                    "tolerance {t:e} is below 2^(16 - {precision}) = {floor:e}; raise the precision"
                )));
            }
            Some(t) => t,
            None => default_tol.max(floor),
        };
        Ok(RunConfig { precision, tolerance, format })
    }
}

pub fn gauss(s: &str) -> Outcome<GaussRat> {
    s.parse::<GaussRat>().map_err(|e| Failure::Usage(format!("`{s}`: {e}")))
}

pub fn complex(s: &str) -> Outcome<Complex64> {
    Ok(gauss(s)?.to_complex64())
}

/// A comma-separated list such as `3,3,3,3`.
pub fn list<T: std::str::FromStr>(s: &str) -> Outcome<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| Failure::Usage(format!("bad list entry `{p}` in `{s}`"))))
        .collect()
}

/// Inline JSON when `arg` starts with `{`, otherwise a file path if one exists.
pub fn json_arg(arg: &str) -> Outcome<Option<String>> {
    if arg.trim_start().starts_with('{') {
        return Ok(Some(arg.to_string()));
    }
    if Path::new(arg).is_file() {
        return fs::read_to_string(arg).map(Some).map_err(|e| Failure::Usage(format!("reading {arg}: {e}")));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_floor() {
        let c = RunConfig::new(128, None, 1e-11, Format::Text).unwrap();
        assert_eq!(c.tolerance, 1e-11);
        assert_eq!(RunConfig::new(64, None, 1e-16, Format::Text).unwrap().tolerance, 2f64.powi(-48));
        assert!(matches!(RunConfig::new(64, Some(1e-16), 1e-11, Format::Text), Err(Failure::Usage(_))));
        assert!(RunConfig::new(64, Some(1e-14), 1e-11, Format::Text).is_ok());
        assert!(RunConfig::new(40, None, 1e-11, Format::Text).is_err());
    }

    #[test]
    fn argument_forms() {
        assert_eq!(complex("1/2-3/4*i").unwrap(), Complex64::new(0.5, -0.75));
        assert_eq!(complex("0.9").unwrap(), Complex64::new(0.9, 0.0));
        assert_eq!(list::<usize>("3, 3,3").unwrap(), vec![3, 3, 3]);
        assert!(list::<usize>("3,x").is_err());
        assert_eq!(Failure::Core(Error::DegenerateLambda).exit_code(), 2);
        assert_eq!(Failure::Core(Error::Quadrature("x".into())).exit_code(), 1);
    }
}
