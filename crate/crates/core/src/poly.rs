//! Dense univariate polynomials in `n` over a generic scalar.

use std::fmt;
use std::ops::{Add, AddAssign};

use num_traits::Signed;

use crate::scalar::Scalar;

/// Coefficients in ascending order, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("small integers are representable in every scalar")
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_int(&self, x: i64) -> T {
        self.eval(&int(x))
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    /// `self * (n + shift)`
    fn mul_linear(&self, shift: T) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = out[i + 1].clone() + c.clone();
            out[i] = out[i].clone() + c.clone() * shift.clone();
        }
        Self::from_coeffs(out)
    }

    /// `binomial(n - shift, k)` as a polynomial in `n`.
    pub fn shifted_binomial(shift: i64, k: usize) -> Self {
        let mut p = Self::constant(T::one());
        let mut factorial = T::one();
        for j in 0..k {
            p = p.mul_linear(int(-shift - j as i64));
            factorial = factorial * int(j as i64 + 1);
        }
        p.scale(&(T::one() / factorial))
    }

    /// Newton forward form `sum_i diffs[i] * binomial(n - x0, i)`.
    pub fn newton_forward(x0: i64, diffs: &[T]) -> Self {
        diffs
            .iter()
            .enumerate()
            .fold(Self::zero(), |acc, (i, d)| acc + Self::shifted_binomial(x0, i).scale(d))
    }
}

impl<T: Scalar> Add for Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<T: Scalar> AddAssign for Polynomial<T> {
    fn add_assign(&mut self, rhs: Self) {
        let mut coeffs = std::mem::take(&mut self.coeffs);
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), T::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(rhs.coeffs) {
            *a = a.clone() + b;
        }
        *self = Self::from_coeffs(coeffs);
    }
}

impl<T: Scalar + Signed + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = magnitude.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{magnitude}")?,
                (_, true) => {}
                (_, false) => write!(f, "{magnitude}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}
