//! Truncated power series with integer coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// `c_0 + c_1 t + ... + c_cap t^cap`, known exactly through `cap`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PowerSeries {
    coeffs: Vec<i64>,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl PowerSeries {
    /// Series with the given coefficients; its precision is their count.
    pub fn new(coeffs: Vec<i64>) -> Self {
        PowerSeries { coeffs }
    }

    /// A polynomial padded with zeros (or truncated) to precision `cap`.
    pub fn polynomial(coeffs: &[i64], cap: usize) -> Self {
        let mut c = vec![0; cap + 1];
        for (i, &a) in coeffs.iter().enumerate().take(cap + 1) {
            c[i] = a;
        }
        PowerSeries { coeffs: c }
    }

    pub fn one(cap: usize) -> Self {
        Self::polynomial(&[1], cap)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Highest exponent whose coefficient is known.
    pub fn cap(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Self::polynomial(&self.coeffs, cap.min(self.cap()))
    }

    fn common(&self, other: &Self) -> usize {
        self.cap().min(other.cap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        PowerSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i] + other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        PowerSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i] - other.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let mut c = vec![0i64; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: c }
    }

    /// Multiplies by `t`, keeping the precision.
    pub fn shift(&self) -> Self {
        let mut c = vec![0; self.coeffs.len()];
        for i in 1..c.len() {
            c[i] = self.coeffs[i - 1];
        }
        PowerSeries { coeffs: c }
    }

    /// Exact division; `None` unless `other` has constant term `±1`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let u = *other.coeffs.first()?;
        if u != 1 && u != -1 {
            return None;
        }
        let n = self.common(other);
        let mut q = vec![0i64; n + 1];
        for i in 0..=n {
            let mut r = self.coeffs[i];
            for j in 1..=i {
                r -= other.coeffs[j] * q[i - j];
            }
            q[i] = r * u;
        }
        Some(PowerSeries { coeffs: q })
    }

    /// First index where `self > other`, if any.
    pub fn first_excess_over(&self, other: &Self) -> Option<usize> {
        (0..=self.common(other)).find(|&i| self.coeffs[i] > other.coeffs[i])
    }

    /// First index where the two differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        (0..=self.common(other)).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let one = PowerSeries::one(6);
        let den = PowerSeries::polynomial(&[1, -1], 6);
        assert_eq!(one.div(&den).unwrap().coeffs(), &[1; 7]);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = PowerSeries::polynomial(&[1, 3, 3, 1], 8);
        let b = PowerSeries::polynomial(&[1, 0, -5, -5, -1], 8);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn non_unit_division() {
        let a = PowerSeries::one(3);
        assert!(a.div(&PowerSeries::polynomial(&[2, 1], 3)).is_none());
    }
}
