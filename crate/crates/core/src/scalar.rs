//! Exact coefficients: rationals and polynomials in the deformation parameter `h`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use crate::rational::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Parses `int` or `int/nat`, with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Syntax {
        pos: 0,
        msg: format!("`{t}` is not a rational number"),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "zero denominator".into(),
        });
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A polynomial in `h` with exact rational coefficients; `coeffs[k]` multiplies `h^k`.
///
/// Always canonical: trailing zeros are stripped, so the zero scalar has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HScalar {
    coeffs: Vec<Rational>,
}

impl HScalar {
    pub fn zero() -> Self {
        HScalar { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The formal parameter `h` itself.
    pub fn h() -> Self {
        HScalar {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_coeffs(vec![q])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// `q * h^k`.
    pub fn monomial(q: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = q;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HScalar { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `h`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `h` with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// The constant value if this scalar has no `h` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Evaluates at `h = h0`.
    pub fn eval(&self, h0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * h0 + c;
        }
        acc
    }

    /// Drops every power `h^k` with `k >= n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        HScalar {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplies by `h^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        HScalar { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self += a * b`, the inner loop of every product kernel.
    pub fn add_mul(&mut self, a: &HScalar, b: &HScalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, Rational::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    self.coeffs[i + j] += x * y;
                }
            }
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Debug for HScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HScalar({self})")
    }
}

/// Prints as a sum of `q*h^k` terms with ascending powers, e.g. `1 + 1/2*h`.
impl fmt::Display for HScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let hpart = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            };
            if hpart.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{hpart}")?;
            } else {
                write!(f, "{}*{hpart}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for HScalar {
    fn from(q: Rational) -> Self {
        HScalar::constant(q)
    }
}

impl Add<&HScalar> for &HScalar {
    type Output = HScalar;
    fn add(self, rhs: &HScalar) -> HScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&HScalar> for &HScalar {
    type Output = HScalar;
    fn sub(self, rhs: &HScalar) -> HScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&HScalar> for &HScalar {
    type Output = HScalar;
    fn mul(self, rhs: &HScalar) -> HScalar {
        let mut out = HScalar::zero();
        out.add_mul(self, rhs);
        out
    }
}

impl Neg for &HScalar {
    type Output = HScalar;
    fn neg(self) -> HScalar {
        HScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for HScalar {
    type Output = HScalar;
    fn neg(self) -> HScalar {
        -&self
    }
}

impl AddAssign<&HScalar> for HScalar {
    fn add_assign(&mut self, rhs: &HScalar) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl SubAssign<&HScalar> for HScalar {
    fn sub_assign(&mut self, rhs: &HScalar) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let s = HScalar::from_coeffs(vec![int(1), int(0), int(0)]);
        assert_eq!(s, HScalar::one());
        assert_eq!(HScalar::from_coeffs(vec![int(0)]), HScalar::zero());
        let t = &HScalar::h() - &HScalar::h();
        assert!(t.is_zero());
        assert_eq!(t.degree(), None);
    }

    #[test]
    fn geometric_quantization_level_at_h_one() {
        // c(h) = l(l + h) with l = 1, evaluated at h = 1
        let l = int(1);
        let c = HScalar::from_coeffs(vec![&l * &l, l.clone()]);
        assert_eq!(c.eval(&int(1)), int(2));
    }

    #[test]
    fn product_and_evaluation_commute() {
        let a = HScalar::from_coeffs(vec![rat(1, 2), int(-3), int(2)]);
        let b = HScalar::from_coeffs(vec![int(4), rat(1, 3)]);
        let h0 = rat(-5, 7);
        assert_eq!((&a * &b).eval(&h0), a.eval(&h0) * b.eval(&h0));
    }

    #[test]
    fn display() {
        assert_eq!(HScalar::zero().to_string(), "0");
        let a = HScalar::from_coeffs(vec![int(1), rat(-1, 2), int(0), int(3)]);
        assert_eq!(a.to_string(), "1 - 1/2*h + 3*h^3");
        assert_eq!((-HScalar::h()).to_string(), "-h");
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
