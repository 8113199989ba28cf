use std::fmt;

use super::Poly;
use crate::scalar::{Field, Scalar, ScalarError};

/// Reduced fraction `num/den` of polynomials: `gcd(num, den) = 1` and `den`
/// monic. Equality is structural on this normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    /// Builds and normalizes `num/den`. Fails when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            let field = den.field().clone();
            return Ok(RationalFn {
                num: Poly::zero(&field),
                den: Poly::one(&field),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inverse().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RationalFn { num: p, den }
    }

    pub fn zero(field: &Field) -> Self {
        RationalFn::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        RationalFn::from_poly(Poly::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        RationalFn::from_poly(Poly::constant(c))
    }

    /// `c t^k` for any integer `k`.
    pub fn laurent_monomial(c: Scalar, k: i64) -> Self {
        let field = c.field().clone();
        if k >= 0 {
            RationalFn::from_poly(Poly::monomial(c, k as usize))
        } else {
            RationalFn::new(
                Poly::constant(c),
                Poly::monomial(field.one(), k.unsigned_abs() as usize),
            )
            .unwrap()
        }
    }

    /// `(t - a)^k` for any integer `k`.
    pub fn linear_power(a: &Scalar, k: i64) -> Self {
        let lin = Poly::linear(a);
        let p = lin.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            RationalFn::from_poly(p)
        } else {
            RationalFn::new(Poly::one(a.field()), p).unwrap()
        }
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().unwrap_or(0) == 0
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        if self.den == other.den {
            return RationalFn::new(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        RationalFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .unwrap()
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn scale(&self, s: &Scalar) -> RationalFn {
        if s.is_zero() {
            return RationalFn::zero(self.field());
        }
        RationalFn {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<RationalFn, ScalarError> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFn) -> Result<RationalFn, ScalarError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<RationalFn, ScalarError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RationalFn::new(base.num.pow(e), base.den.pow(e)).unwrap())
    }

    /// Multiplication by `t^k`, `k` any integer.
    pub fn mul_t_pow(&self, k: i64) -> RationalFn {
        if k >= 0 {
            RationalFn::new(self.num.shift(k as usize), self.den.clone()).unwrap()
        } else {
            RationalFn::new(self.num.clone(), self.den.shift(k.unsigned_abs() as usize)).unwrap()
        }
    }

    /// The Euler operator `∂ = t d/dt`.
    pub fn theta(&self) -> RationalFn {
        // t (n' d - n d') / d^2 = (∂n d - n ∂d) / d^2
        let num = self.num.theta().mul(&self.den).sub(&self.num.mul(&self.den.theta()));
        RationalFn::new(num, self.den.mul(&self.den)).unwrap()
    }

    /// `f(a t^n)`.
    pub fn substitute(&self, a: &Scalar, n: i64) -> RationalFn {
        let (num, e_num) = self.num.substitute(a, n);
        let (den, e_den) = self.den.substitute(a, n);
        // (num / t^e_num) / (den / t^e_den)
        let (num, den) = if e_den >= e_num {
            (num.shift(e_den - e_num), den)
        } else {
            (num, den.shift(e_num - e_den))
        };
        RationalFn::new(num, den).expect("substitution keeps the denominator nonzero")
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar, ScalarError> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let f = Field::rationals();
        // (2t - 2) / (4t^2 - 4) = (1/2) / (t + 1)
        let num = Poly::from_coeffs(&f, vec![f.int(-2), f.int(2)]);
        let den = Poly::from_coeffs(&f, vec![f.int(-4), f.zero(), f.int(4)]);
        let r = RationalFn::new(num, den).unwrap();
        assert_eq!(r.num(), &Poly::constant(f.frac(1, 2)));
        assert_eq!(r.den(), &Poly::linear(&f.int(-1)));
        assert!(RationalFn::new(Poly::one(&f), Poly::zero(&f)).is_err());
    }

    #[test]
    fn theta_examples() {
        let f = Field::rationals();
        for k in [-3i64, 0, 1, 5] {
            let x = RationalFn::laurent_monomial(f.one(), k);
            assert_eq!(x.theta(), x.scale(&f.int(k)));
        }
        // ∂((t-2)^-1) = -t (t-2)^-2
        let x = RationalFn::linear_power(&f.int(2), -1);
        let expected = RationalFn::linear_power(&f.int(2), -2).mul_t_pow(1).neg();
        assert_eq!(x.theta(), expected);
        assert!(RationalFn::constant(f.int(4)).theta().is_zero());
    }

    #[test]
    fn substitution_examples() {
        let f = Field::rationals();
        let t2 = RationalFn::laurent_monomial(f.one(), 2);
        assert_eq!(t2.substitute(&f.int(3), 1), RationalFn::laurent_monomial(f.int(9), 2));
        let x = RationalFn::linear_power(&f.int(1), -1);
        assert_eq!(x.substitute(&f.one(), 1), x);
        // 1/(1/t - 1) = -t/(t - 1)
        let expected = x.mul_t_pow(1).neg();
        assert_eq!(x.substitute(&f.one(), -1), expected);
    }

    #[test]
    fn rendering() {
        let f = Field::rationals();
        let r = RationalFn::linear_power(&f.int(2), -1).mul(&RationalFn::from_poly(Poly::from_coeffs(
            &f,
            vec![f.one(), f.zero(), f.one()],
        )));
        assert_eq!(r.to_string(), "(t^2 + 1) / (t + -2)");
    }
}
