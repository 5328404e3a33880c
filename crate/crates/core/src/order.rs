//! The componentwise order `x ≼ y`: every coordinate of `x` is no larger in
//! magnitude than the matching coordinate of `y` and never of opposite sign.

use crate::error::{invalid, Result};

pub trait Coordinate: Copy {
    fn magnitude(self) -> f64;
    fn signum_f(self) -> f64;
}

impl Coordinate for i64 {
    fn magnitude(self) -> f64 {
        self.unsigned_abs() as f64
    }
    fn signum_f(self) -> f64 {
        self.signum() as f64
    }
}

impl Coordinate for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn signum_f(self) -> f64 {
        if self > 0.0 {
            1.0
        } else if self < 0.0 {
            -1.0
        } else {
            0.0
        }
    }
}

/// Returns whether `x ≼ y`.
pub fn precedes<T: Coordinate>(x: &[T], y: &[T]) -> Result<bool> {
    if x.len() != y.len() {
        return invalid(format!("length mismatch: {} vs {}", x.len(), y.len()));
    }
    Ok(precedes_unchecked(x, y))
}

pub(crate) fn precedes_unchecked<T: Coordinate>(x: &[T], y: &[T]) -> bool {
    x.iter()
        .zip(y)
        .all(|(&a, &b)| a.magnitude() <= b.magnitude() && a.signum_f() * b.signum_f() >= 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_cases() {
        assert!(precedes(&[1i64, -1], &[2, -3]).unwrap());
        assert!(!precedes(&[1i64, 1], &[2, -3]).unwrap());
        assert!(precedes(&[0i64, 0], &[7, -2]).unwrap());
        assert!(precedes(&[0.5f64], &[0.5]).unwrap());
        assert!(precedes(&[1i64], &[1, 2]).is_err());
    }
}
