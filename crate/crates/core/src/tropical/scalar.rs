use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

/// Which idempotent semiring a value or matrix lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semiring {
    /// `(R ∪ {-inf, +inf}, max, +)` with ε = -inf and ⊤ = +inf.
    MaxPlus,
    /// `(R ∪ {-inf, +inf}, min, +)` with ε = +inf and ⊤ = -inf.
    MinPlus,
}

impl Semiring {
    /// The additive neutral element ε, absorbing for ⊗.
    pub fn zero(self) -> Scalar {
        match self {
            Semiring::MaxPlus => Scalar::NegInf,
            Semiring::MinPlus => Scalar::PosInf,
        }
    }

    /// The multiplicative unit e = 0.
    pub fn one(self) -> Scalar {
        Scalar::Finite(0.0)
    }

    /// The greatest element ⊤ of the completed dioid.
    pub fn top(self) -> Scalar {
        match self {
            Semiring::MaxPlus => Scalar::PosInf,
            Semiring::MinPlus => Scalar::NegInf,
        }
    }

    pub fn dual(self) -> Semiring {
        match self {
            Semiring::MaxPlus => Semiring::MinPlus,
            Semiring::MinPlus => Semiring::MaxPlus,
        }
    }

    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let keep_a = match self {
            Semiring::MaxPlus => a >= b,
            Semiring::MinPlus => a <= b,
        };
        if keep_a {
            a
        } else {
            b
        }
    }

    /// Tropical product. ε absorbs, including against ⊤: `-inf ⊗ +inf = -inf`
    /// in max-plus while `+inf ⊗ -inf = +inf` in min-plus.
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        use Scalar::*;
        match (a, b) {
            (Finite(x), Finite(y)) => Scalar::from_f64(x + y),
            _ => {
                let zero = self.zero();
                if a == zero || b == zero {
                    zero
                } else {
                    self.top()
                }
            }
        }
    }

    pub fn is_zero(self, a: Scalar) -> bool {
        a == self.zero()
    }

    pub fn name(self) -> &'static str {
        match self {
            Semiring::MaxPlus => "maxplus",
            Semiring::MinPlus => "minplus",
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Extended real number. The infinities are explicit states so that the two
/// absorption conventions never go through IEEE arithmetic.
///
/// Ordering is the standard numeric one, `NegInf < Finite(_) < PosInf`,
/// independent of any semiring.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Scalar {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Finite(0.0);

    /// Maps IEEE infinities onto the sentinels.
    ///
    /// Panics on NaN, which has no place in either dioid.
    pub fn from_f64(v: f64) -> Scalar {
        assert!(!v.is_nan(), "NaN is not a tropical scalar");
        if v == f64::INFINITY {
            Scalar::PosInf
        } else if v == f64::NEG_INFINITY {
            Scalar::NegInf
        } else {
            Scalar::Finite(v)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Scalar::NegInf => f64::NEG_INFINITY,
            Scalar::Finite(v) => v,
            Scalar::PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Scalar::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Scalar::Finite(_))
    }

    /// Total order used by sorting helpers; NaN cannot occur.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        self.partial_cmp(other).expect("scalars are never NaN")
    }
}

/// Additive inverse with the sentinels swapped.
impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::NegInf => Scalar::PosInf,
            Scalar::Finite(v) => Scalar::Finite(-v),
            Scalar::PosInf => Scalar::NegInf,
        }
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::from_f64(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::NegInf => f.write_str("-inf"),
            Scalar::PosInf => f.write_str("+inf"),
            Scalar::Finite(v) => f.write_str(&format_number(*v)),
        }
    }
}

/// Integers print without a decimal point, everything else uses the
/// shortest representation that round-trips.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 {
            "+inf".into()
        } else {
            "-inf".into()
        };
    }
    format!("{v}")
}
