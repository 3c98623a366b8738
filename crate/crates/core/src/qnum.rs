//! Rational number helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn qz() -> Q {
    Q::zero()
}

pub fn qone() -> Q {
    Q::one()
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn q(num: i64, den: i64) -> Q {
    assert!(den != 0);
    Q::new(Z::from(num), Z::from(den))
}

/// Largest integer m with m <= x.
pub fn qfloor(x: &Q) -> Z {
    x.floor().to_integer()
}

/// Canonical representative of x modulo m (m > 0), in [0, m).
pub fn qmod(x: &Q, m: i64) -> Q {
    let m = qi(m);
    let f = (x / &m).floor();
    x - f * m
}

pub fn qabs(x: &Q) -> Q {
    x.abs()
}

/// Renders "p" or "p/q".
pub fn qstr(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qmod_representative() {
        assert_eq!(qmod(&q(7, 2), 2), q(3, 2));
        assert_eq!(qmod(&q(-1, 3), 2), q(5, 3));
        assert_eq!(qmod(&qi(4), 2), qz());
    }
}
