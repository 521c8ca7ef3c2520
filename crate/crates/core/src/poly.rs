//! Integer polynomials in `r` and reduced rational functions built from them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly(Vec<i128>);

impl Poly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn constant(c: i128) -> Self {
        Poly::new(vec![c])
    }

    /// `r^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Poly(c)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> i128 {
        *self.0.last().expect("non-zero polynomial")
    }

    pub fn content(&self) -> i128 {
        self.0.iter().fold(0i128, |g, &c| g.gcd(&c))
    }

    pub fn scale(&self, k: i128) -> Self {
        Poly::new(self.0.iter().map(|c| c * k).collect())
    }

    fn div_scalar(&self, k: i128) -> Self {
        Poly::new(self.0.iter().map(|c| c / k).collect())
    }

    pub fn primitive_part(&self) -> Self {
        match self.content() {
            0 => Poly::zero(),
            c => {
                let p = self.div_scalar(c);
                if p.lead() < 0 {
                    -p
                } else {
                    p
                }
            }
        }
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, &c| {
            acc * x + BigRational::from_integer(BigInt::from(c))
        })
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = Poly::monomial(rd - dd).scale(r.lead());
            r = r.scale(d.lead()) - shift * d.clone();
        }
        r
    }

    /// Greatest common divisor up to units, primitive with positive leading
    /// coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient; panics unless `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![0i128; self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            assert!(
                rd >= dd && r.lead() % d.lead() == 0,
                "inexact polynomial division"
            );
            let c = r.lead() / d.lead();
            q[rd - dd] = c;
            r = r - Poly::monomial(rd - dd).scale(c) * d.clone();
        }
        Poly::new(q)
    }

    /// Human-readable form such as `1 - r - 2r^2 + r^3`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate().filter(|(_, &c)| c != 0) {
            let mag = c.abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let var = match i {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r^{i}"),
            };
            if mag != 1 || i == 0 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&var);
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        self + (-o)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0i128; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

/// `num / den` in lowest terms with `den(0) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFn {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.coeff(0) == 0 {
            return Err(Error::NotAZeta("denominator vanishes at r = 0".into()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let c = num.content().gcd(&den.content());
        if c > 1 {
            num = num.div_scalar(c);
            den = den.div_scalar(c);
        }
        if den.coeff(0) < 0 {
            num = -num;
            den = -den;
        }
        Ok(RationalFn { num, den })
    }

    pub fn recip_of(den: Poly) -> Result<Self> {
        RationalFn::new(Poly::one(), den)
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<Self> {
        RationalFn::new(self.num.clone() * p.clone(), self.den.clone())
    }

    pub fn div_poly(&self, p: &Poly) -> Result<Self> {
        RationalFn::new(self.num.clone(), self.den.clone() * p.clone())
    }

    pub fn pretty(&self) -> String {
        format!("({}) / ({})", self.num.pretty(), self.den.pretty())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |p: &Poly| format!("[{}]", crate::seqcore::join(p.coeffs()));
        write!(f, "{} / {}", list(&self.num), list(&self.den))
    }
}

/// `n · [r^n] log(1/p(r))` for `n = 1..=count`, for `p(0) = 1`.
pub(crate) fn log_recip_power_sums(p: &Poly, count: usize) -> Option<Vec<i128>> {
    if p.coeff(0) != 1 {
        return None;
    }
    let mut q: Vec<i128> = Vec::with_capacity(count);
    for n in 1..=count {
        let mut v = (n as i128).checked_mul(p.coeff(n))?.checked_neg()?;
        for i in 1..n {
            v = v.checked_sub(p.coeff(i).checked_mul(q[n - i - 1])?)?;
        }
        q.push(v);
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i128]) -> Poly {
        Poly::new(c.to_vec())
    }

    #[test]
    fn gcd_and_reduction() {
        // (1 - r^2) / ((1 - r)(1 - r - 2r^2 + r^3)) = (1 + r) / (1 - r - 2r^2 + r^3)
        let cubic = p(&[1, -1, -2, 1]);
        let f = RationalFn::new(p(&[1, 0, -1]), p(&[1, -1]) * cubic.clone()).unwrap();
        assert_eq!(f, RationalFn::new(p(&[1, 1]), cubic).unwrap());
        assert_eq!(p(&[1, 0, -1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn power_sums_lucas() {
        assert_eq!(
            log_recip_power_sums(&p(&[1, -1, -1]), 4).unwrap(),
            vec![1, 3, 4, 7]
        );
        assert_eq!(
            log_recip_power_sums(&p(&[1, -1]), 3).unwrap(),
            vec![1, 1, 1]
        );
        assert!(log_recip_power_sums(&p(&[2, -1]), 3).is_none());
    }

    #[test]
    fn pretty_print() {
        assert_eq!(p(&[1, -1, -2, 1]).pretty(), "1 - r - 2r^2 + r^3");
        assert_eq!(p(&[-1, 0, 3]).pretty(), "-1 + 3r^2");
    }

    #[test]
    fn sign_normalized() {
        let f = RationalFn::new(p(&[-1]), p(&[-1, 1, 1])).unwrap();
        assert_eq!(f.den, p(&[1, -1, -1]));
        assert_eq!(f.num, p(&[1]));
        assert!(RationalFn::new(p(&[1]), p(&[0, 1])).is_err());
    }
}
