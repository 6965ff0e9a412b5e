use std::fmt;

use super::{BigComplex, GaussRat};

/// A value known exactly in `Q(i)` or only numerically.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(GaussRat),
    Numeric(BigComplex),
}

impl Scalar {
    pub fn to_complex64(&self) -> num_complex::Complex64 {
        match self {
            Scalar::Exact(g) => g.to_complex64(),
            Scalar::Numeric(b) => b.to_complex64(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => write!(f, "{g}"),
            Scalar::Numeric(b) => write!(f, "{b}"),
        }
    }
}

impl Scalar {
    pub fn exact(&self) -> Option<&GaussRat> {
        match self {
            Scalar::Exact(g) => Some(g),
            Scalar::Numeric(_) => None,
        }
    }

    pub fn to_big(&self, prec: u32) -> BigComplex {
        match self {
            Scalar::Exact(g) => BigComplex::from_gauss(g, prec),
            Scalar::Numeric(b) => b.with_prec(prec),
        }
    }
}
