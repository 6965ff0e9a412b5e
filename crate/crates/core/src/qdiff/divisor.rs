use std::fmt;

use num_complex::Complex64;
use rug::Rational;
use serde::{Serialize, Serializer};

use super::{classify_zeros, residue_at, Point, QuadDiff, Scalar};
use crate::error::{Error, Result};

/// Where a divisor point sits.
#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Exact(Point),
    Numeric(Complex64),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Exact(p) => write!(f, "{p}"),
            Location::Numeric(z) => write!(f, "{:.12}{:+.12}*i", z.re, z.im),
        }
    }
}

impl From<&Scalar> for Location {
    fn from(z: &Scalar) -> Self {
        match z {
            Scalar::Exact(g) => Location::Exact(Point::Finite(g.clone())),
            Scalar::Numeric(b) => Location::Numeric(b.to_complex64()),
        }
    }
}

/// One point of the divisor with its weight and the cone angle (in units of pi).
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorEntry {
    pub location: Location,
    pub weight: Rational,
    pub angle_over_pi: Rational,
}

/// `D = sum (a_i - 1) p_i + sum (m_j / 2) z_j` with its cone angles
/// `2 pi a_i` at poles and `pi (m_j + 2)` at zeros.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Divisor {
    pub poles: Vec<DivisorEntry>,
    pub zeros: Vec<DivisorEntry>,
}

impl Divisor {
    pub fn degree(&self) -> Rational {
        self.poles.iter().chain(&self.zeros).fold(Rational::new(), |acc, e| acc + &e.weight)
    }

    /// Entries with nonzero weight.
    pub fn support(&self) -> impl Iterator<Item = &DivisorEntry> {
        self.poles.iter().chain(&self.zeros).filter(|e| e.weight.cmp0().is_ne())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support().map(|e| format!("{}*[{}]", e.weight, e.location)).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize)]
struct EntryOut {
    location: String,
    weight: String,
    angle_over_pi: String,
}

impl From<&DivisorEntry> for EntryOut {
    fn from(e: &DivisorEntry) -> Self {
        EntryOut {
            location: e.location.to_string(),
            weight: e.weight.to_string(),
            angle_over_pi: e.angle_over_pi.to_string(),
        }
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            degree: String,
            poles: Vec<EntryOut>,
            zeros: Vec<EntryOut>,
        }
        Out {
            degree: self.degree().to_string(),
            poles: self.poles.iter().map(EntryOut::from).collect(),
            zeros: self.zeros.iter().map(EntryOut::from).collect(),
        }
        .serialize(s)
    }
}

/// Divisor from residues at the poles and multiplicities at the zeros.
pub fn divisor_from_data(poles: &[(Location, Rational)], zeros: &[(Location, usize)]) -> Divisor {
    Divisor {
        poles: poles
            .iter()
            .map(|(loc, a)| DivisorEntry {
                location: loc.clone(),
                weight: Rational::from(a - 1u32),
                angle_over_pi: Rational::from(a * 2u32),
            })
            .collect(),
        zeros: zeros
            .iter()
            .map(|(loc, m)| DivisorEntry {
                location: loc.clone(),
                weight: Rational::from((*m as i64, 2)),
                angle_over_pi: Rational::from(*m as i64 + 2),
            })
            .collect(),
    }
}

/// Divisor of the cone spherical metric attached to `q`. Residues must be
/// rational. Zeros come from the numerator, plus infinity when `q` vanishes there.
pub fn divisor_of(q: &QuadDiff) -> Result<Divisor> {
    let mut poles = Vec::new();
    for p in q.poles() {
        let r = residue_at(q, p)?;
        let a = r
            .exact()
            .filter(|a| a.is_real())
            .ok_or_else(|| Error::Domain(format!("residue at {p} is not rational")))?;
        poles.push((Location::Exact(p.clone()), a.re().clone()));
    }
    let mut zeros: Vec<(Location, usize)> =
        classify_zeros(q)?.zeros().iter().map(|(z, m)| (Location::from(z), *m)).collect();
    let at_inf = q.order_at_infinity();
    if at_inf > 0 {
        zeros.push((Location::Exact(Point::Infinity), at_inf as usize));
    }
    Ok(divisor_from_data(&poles, &zeros))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussRat;
    use crate::qdiff::{family, StrebelParams};

    #[test]
    fn four_simple_zeros() {
        let q = family(&StrebelParams::new(GaussRat::from_int(2), GaussRat::from_int(0)).unwrap()).unwrap();
        let d = divisor_of(&q).unwrap();
        assert_eq!(d.zeros.len(), 4);
        for z in &d.zeros {
            assert_eq!(z.weight, Rational::from((1, 2)));
            assert_eq!(z.angle_over_pi, 3);
        }
        for p in &d.poles {
            assert_eq!(p.weight, 0);
            assert_eq!(p.angle_over_pi, 2);
        }
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn zero_at_infinity_is_counted() {
        let q = crate::qdiff::pullback(&crate::belyi::deg8_map(), &crate::qdiff::q0()).scale(&GaussRat::from_frac(1, 4));
        let d = divisor_of(&q).unwrap();
        assert_eq!(d.zeros.len(), 4);
        assert!(d.zeros.iter().any(|z| z.location == Location::Exact(Point::Infinity)));
        assert!(d.zeros.iter().all(|z| z.weight == Rational::from((1, 2)) && z.angle_over_pi == 3));
    }

    #[test]
    fn double_zeros_and_heavy_pole() {
        let q = family(&StrebelParams::new(GaussRat::from_int(2), GaussRat::from_int(6)).unwrap()).unwrap();
        let d = divisor_of(&q).unwrap();
        assert!(d.zeros.iter().all(|z| z.weight == 1 && z.angle_over_pi == 4));
        let heavy = divisor_from_data(&[(Location::Exact(Point::int(0)), Rational::from(2))], &[]);
        assert_eq!(heavy.poles[0].weight, 1);
        assert_eq!(heavy.poles[0].angle_over_pi, 4);
    }
}
