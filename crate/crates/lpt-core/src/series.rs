//! Truncated Laurent series with an explicit certified window.
//!
//! A [`TruncatedSeries`] stores the coefficients of `r^p` for
//! `p = leading_power ..= top_power` and promises nothing beyond
//! `top_power`: absent higher terms are truncation, not value. Below
//! `leading_power` the function is known to have no terms at all, so those
//! coefficients are exact zeros. Products and sums propagate the window
//! conservatively, which keeps every coefficient this type hands out
//! certified rather than silently polluted by discarded tails.

use std::ops::Range;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    leading_power: i64,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series with the given coefficients for consecutive powers starting
    /// at `leading_power`.
    pub fn new(leading_power: i64, coeffs: Vec<Rational>) -> Self {
        TruncatedSeries {
            leading_power,
            coeffs,
        }
    }

    /// All-zero series certified on `leading_power ..= leading_power + len - 1`.
    pub fn zero_window(leading_power: i64, len: usize) -> Self {
        TruncatedSeries {
            leading_power,
            coeffs: vec![Rational::zero(); len],
        }
    }

    /// Zero window with the given terms placed in it. Terms outside the
    /// window are ignored: this is for injecting single monomials (delta
    /// terms, constants) into an equation without widening its budget.
    pub fn from_terms(leading_power: i64, len: usize, terms: &[(i64, Rational)]) -> Self {
        let mut series = Self::zero_window(leading_power, len);
        for (power, value) in terms {
            if let Some(idx) = series.index_of(*power) {
                series.coeffs[idx] = value.clone();
            }
        }
        series
    }

    pub fn leading_power(&self) -> i64 {
        self.leading_power
    }

    /// Highest certified power; `None` for an empty window.
    pub fn top_power(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.leading_power + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Certified powers as a half-open range.
    pub fn window(&self) -> Range<i64> {
        self.leading_power..self.leading_power + self.coeffs.len() as i64
    }

    fn index_of(&self, power: i64) -> Option<usize> {
        if self.window().contains(&power) {
            Some((power - self.leading_power) as usize)
        } else {
            None
        }
    }

    /// Coefficient of `r^power`: exact zero below the window, stored value
    /// inside it, `None` (unknown) above it.
    pub fn known_coeff(&self, power: i64) -> Option<Rational> {
        if power < self.leading_power {
            return Some(Rational::zero());
        }
        self.index_of(power).map(|i| self.coeffs[i].clone())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(power, coefficient)` pairs over the certified window.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.leading_power + i as i64, c))
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Cauchy product. The certified window shrinks to what both factors
    /// can vouch for: an unknown tail of one factor first pollutes the
    /// product at `top + 1 + other.leading_power`.
    pub fn mul(&self, other: &Self) -> Self {
        let lead = self.leading_power + other.leading_power;
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries {
            leading_power: lead,
            coeffs,
        }
    }

    /// Sum on the intersection of certified knowledge: powers below a
    /// series' window are exact zeros, powers above either top are dropped.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let (Some(top_a), Some(top_b)) = (self.top_power(), other.top_power()) else {
            return TruncatedSeries::zero_window(self.leading_power.min(other.leading_power), 0);
        };
        let lead = self.leading_power.min(other.leading_power);
        let top = top_a.min(top_b);
        if top < lead {
            return TruncatedSeries::zero_window(lead, 0);
        }
        let mut coeffs = Vec::with_capacity((top - lead + 1) as usize);
        for power in lead..=top {
            let a = self.known_coeff(power).unwrap_or_else(Rational::zero);
            let b = other.known_coeff(power).unwrap_or_else(Rational::zero);
            coeffs.push(if negate_other { a - b } else { a + b });
        }
        TruncatedSeries {
            leading_power: lead,
            coeffs,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        TruncatedSeries {
            leading_power: self.leading_power,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Term-by-term d/dr; the window shifts down by one power.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .terms()
            .map(|(power, c)| c * &Rational::from(power))
            .collect();
        TruncatedSeries {
            leading_power: self.leading_power - 1,
            coeffs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn series(lead: i64, coeffs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::new(lead, coeffs.iter().map(|s| rat(s)).collect())
    }

    #[test]
    fn product_is_the_convolution() {
        // (1 + 2r + 3r^2)(4 + 5r + 6r^2) truncated at r^2
        let a = series(0, &["1", "2", "3"]);
        let b = series(0, &["4", "5", "6"]);
        let p = a.mul(&b);
        assert_eq!(p.leading_power(), 0);
        assert_eq!(p.coeffs(), &[rat("4"), rat("13"), rat("28")]);
    }

    #[test]
    fn product_window_shrinks_to_shared_knowledge() {
        let a = series(-1, &["1", "1", "1", "1"]); // certified r^-1..r^2
        let b = series(2, &["1", "1"]); // certified r^2..r^3
        let p = a.mul(&b);
        assert_eq!(p.leading_power(), 1);
        assert_eq!(p.top_power(), Some(2));
    }

    #[test]
    fn addition_uses_known_zeros_below_a_window() {
        let a = series(-2, &["5", "0", "7"]); // 5r^-2 + 7
        let b = series(0, &["1"]); // 1, certified only at r^0
        let s = a.add(&b);
        assert_eq!(s.leading_power(), -2);
        assert_eq!(s.top_power(), Some(0));
        assert_eq!(s.coeffs(), &[rat("5"), rat("0"), rat("8")]);
    }

    #[test]
    fn derivative_shifts_the_window() {
        // d/dr (r^-1 + 3r^2) = -r^-2 + 6r
        let a = series(-1, &["1", "0", "0", "3"]);
        let d = a.derivative();
        assert_eq!(d.leading_power(), -2);
        assert_eq!(d.known_coeff(-2), Some(rat("-1")));
        assert_eq!(d.known_coeff(1), Some(rat("6")));
        assert_eq!(d.known_coeff(0), Some(rat("0")));
        assert_eq!(d.known_coeff(3), None);
    }

    #[test]
    fn monomial_injection_respects_the_window() {
        let m = TruncatedSeries::from_terms(-2, 4, &[(0, rat("9")), (5, rat("1"))]);
        assert_eq!(m.known_coeff(0), Some(rat("9")));
        assert_eq!(m.known_coeff(5), None); // outside, silently dropped
        assert_eq!(m.known_coeff(-5), Some(rat("0")));
    }
}
