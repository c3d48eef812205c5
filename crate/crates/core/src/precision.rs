use std::fmt;
use std::str::FromStr;

use crate::cfield::{Complex, Scalar};
use crate::xreal::{DoubleDouble, QuadDouble, Real};

/// Runtime tag for the four entry types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Precision {
    /// Real double, the cost baseline.
    D,
    Cd,
    Cdd,
    Cqd,
}

pub type Cd = Complex<f64>;
pub type Cdd = Complex<DoubleDouble>;
pub type Cqd = Complex<QuadDouble>;

/// A computation generic over the entry type, run through
/// [`Precision::dispatch`].
pub trait PrecisionVisitor {
    type Output;
    fn visit<S: Scalar>(self) -> Self::Output;
}

impl Precision {
    pub const ALL: [Precision; 4] = [Precision::D, Precision::Cd, Precision::Cdd, Precision::Cqd];
    pub const COMPLEX: [Precision; 3] = [Precision::Cd, Precision::Cdd, Precision::Cqd];

    pub fn token(self) -> &'static str {
        match self {
            Precision::D => <f64 as Scalar>::NAME,
            Precision::Cd => Cd::NAME,
            Precision::Cdd => Cdd::NAME,
            Precision::Cqd => Cqd::NAME,
        }
    }

    /// Decimal digits carried by the underlying real type.
    pub fn digits(self) -> u32 {
        match self {
            Precision::D | Precision::Cd => <f64 as Real>::DIGITS,
            Precision::Cdd => DoubleDouble::DIGITS,
            Precision::Cqd => QuadDouble::DIGITS,
        }
    }

    pub fn is_complex(self) -> bool {
        self != Precision::D
    }

    /// Doubles per entry in a matrix file.
    pub fn parts(self) -> usize {
        match self {
            Precision::D => 1,
            Precision::Cd => 2,
            Precision::Cdd => 4,
            Precision::Cqd => 8,
        }
    }

    /// Whether data stored in `self` converts to `target` without loss.
    pub fn widens_to(self, target: Precision) -> bool {
        self <= target
    }

    /// Least complex precision with at least `digits` decimal digits.
    pub fn smallest_with_digits(digits: u32) -> Option<Precision> {
        Self::COMPLEX.into_iter().find(|p| p.digits() >= digits)
    }

    pub fn of<S: Scalar>() -> Precision {
        S::NAME.parse().expect("every scalar has a precision token")
    }

    pub fn dispatch<V: PrecisionVisitor>(self, v: V) -> V::Output {
        match self {
            Precision::D => v.visit::<f64>(),
            Precision::Cd => v.visit::<Cd>(),
            Precision::Cdd => v.visit::<Cdd>(),
            Precision::Cqd => v.visit::<Cqd>(),
        }
    }
}

impl FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "d" => Ok(Precision::D),
            "cd" => Ok(Precision::Cd),
            "cdd" => Ok(Precision::Cdd),
            "cqd" => Ok(Precision::Cqd),
            _ => Err(format!(
                "unknown precision `{s}` (expected d, cd, cdd or cqd)"
            )),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}
