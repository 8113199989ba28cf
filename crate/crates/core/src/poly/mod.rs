//! Polynomials, rational functions and localized Laurent rings over `Q(z_D)`,
//! with the Euler operator `∂ = t d/dt` and substitutions `t -> a t^n`.

mod lemmas;
mod rational;
mod ring;

pub use lemmas::{
    antisymmetric_form, antisymmetry_check, check_distinct_orbits, log_derivative_match, omega_invariant_check,
    omega_invariant_generator, LemmaError,
};
pub use rational::RationalFn;
pub use ring::{partial_fractions, recombine, ring_membership, BasisTag, LocalizedRing, RingElem, RingError};

use std::fmt;

use crate::scalar::{Field, Scalar};

/// Dense univariate polynomial in `t`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(c, 0)
    }

    /// `t`.
    pub fn t(field: &Field) -> Self {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(&field, coeffs)
    }

    /// `t - a`.
    pub fn linear(a: &Scalar) -> Self {
        let field = a.field();
        Poly::from_coeffs(field, vec![-a, field.one()])
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Multiplicity of `t` as a factor; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += &(x * y);
                }
            }
        }
        Poly::from_coeffs(&self.field, out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let db = divisor.degree().expect("polynomial division by zero");
        let inv = divisor.coeffs[db].inverse().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Poly::zero(&self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, y) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &(&c * y);
            }
            quot[shift] = c;
        }
        rem.truncate(db);
        (
            Poly::from_coeffs(&self.field, quot),
            Poly::from_coeffs(&self.field, rem),
        )
    }

    /// Exact quotient, when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inverse().expect("nonzero")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_int(k as i64))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// `∂ = t d/dt`, which scales `t^k` by `k`.
    pub fn theta(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale_int(k as i64))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `p(t + a)`.
    pub fn taylor_shift(&self, a: &Scalar) -> Poly {
        let lin = Poly::from_coeffs(&self.field, vec![a.clone(), self.field.one()]);
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `p(a t^n)` as a Laurent polynomial `q(t) / t^e` with `q` a polynomial.
    /// Returns `(q, e)`.
    pub fn substitute(&self, a: &Scalar, n: i64) -> (Poly, usize) {
        let Some(deg) = self.degree() else {
            return (self.clone(), 0);
        };
        let step = n.unsigned_abs() as usize;
        let mut out = vec![self.field.zero(); deg * step + 1];
        let mut apow = self.field.one();
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = if n > 0 { k * step } else { (deg - k) * step };
            out[idx] = c * &apow;
            apow = &apow * a;
        }
        let e = if n > 0 { 0 } else { deg * step };
        (Poly::from_coeffs(&self.field, out), e)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let label = match k {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{k}"),
                };
                (c, label)
            });
        crate::render::write_sum(f, terms)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Field, cs: &[i64]) -> Poly {
        Poly::from_coeffs(f, cs.iter().map(|&c| f.int(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let f = Field::rationals();
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = p(&f, &[-1, 0, 1]);
        let b = p(&f, &[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(&f, &[-1, 1]));
        assert!(r.is_zero());
        let g = a.gcd(&p(&f, &[2, 2]));
        assert_eq!(g, b);
        assert!(p(&f, &[1, 1]).gcd(&p(&f, &[2, 1])).is_one());
    }

    #[test]
    fn theta_scales_monomials() {
        let f = Field::rationals();
        let x = Poly::monomial(f.frac(3, 2), 4);
        assert_eq!(x.theta(), Poly::monomial(f.int(6), 4));
        assert!(Poly::constant(f.int(9)).theta().is_zero());
    }

    #[test]
    fn substitution() {
        let f = Field::rationals();
        let t2 = Poly::monomial(f.one(), 2);
        assert_eq!(t2.substitute(&f.int(3), 1), (Poly::monomial(f.int(9), 2), 0));
        // t^2 + t at 2/t  ->  (4 + 2t) / t^2
        let x = p(&f, &[0, 1, 1]);
        assert_eq!(x.substitute(&f.int(2), -1), (p(&f, &[4, 2]), 2));
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let f = Field::new(3).unwrap();
        let x = Poly::from_coeffs(&f, vec![f.frac(1, 3), f.zeta(), f.int(-2), f.one()]);
        let a = &f.zeta() + &f.int(2);
        let shifted = x.taylor_shift(&a);
        for v in [f.zero(), f.one(), f.zeta(), f.frac(-5, 7)] {
            assert_eq!(shifted.eval(&v), x.eval(&(&v + &a)));
        }
    }

    #[test]
    fn rendering() {
        let f = Field::rationals();
        assert_eq!(p(&f, &[-6, 1]).to_string(), "t + -6");
        assert_eq!(p(&f, &[1, 0, -1, 2]).to_string(), "2*t^3 + -t^2 + 1");
        assert_eq!(Poly::zero(&f).to_string(), "0");
    }
}
