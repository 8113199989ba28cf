//! Exact arithmetic in the cyclotomic field `Q(z)`, where `z` is a primitive
//! `D`-th root of unity.
//!
//! Elements are stored as their unique residue modulo the cyclotomic
//! polynomial `Phi_D`, i.e. as a coefficient vector of length `phi(D)` in the
//! power basis `1, z, ..., z^(phi(D)-1)`. For `D = 1` this is just `Q`.

mod linalg;

pub use linalg::{gaussian_solve, Matrix, Solution};

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number. Always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("zero has no multiplicative order")]
    ZeroInput,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
}

/// Dense polynomial over `Q`, lowest degree first, no trailing zeros.
type QPoly = Vec<Rational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let mut rem: QPoly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// The cyclotomic polynomial `Phi_D`, lowest degree first.
///
/// Computed by exact division of `x^D - 1` by `Phi_e` for every proper
/// divisor `e` of `D`.
pub fn cyclotomic_polynomial(order: u32) -> Vec<Rational> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut num: QPoly = vec![Rational::zero(); order as usize + 1];
    num[0] = -Rational::one();
    num[order as usize] = Rational::one();
    for e in (1..order).filter(|e| order.is_multiple_of(*e)) {
        let (q, r) = qpoly_divrem(&num, &cyclotomic_polynomial(e));
        debug_assert!(r.is_empty());
        num = q;
    }
    num
}

/// Euler's totient, the degree of `Phi_D`.
pub fn totient(order: u32) -> usize {
    (1..=order).filter(|k| k.gcd(&order) == 1).count()
}

#[derive(Debug)]
struct FieldInner {
    order: u32,
    /// Monic `Phi_D`, length `degree + 1`.
    modulus: QPoly,
}

/// Handle on `Q(z_D)`. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z_{})", self.0.order)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.order == other.0.order
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(order: u32) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::InvalidOrder);
        }
        Ok(Field(Arc::new(FieldInner {
            order,
            modulus: cyclotomic_polynomial(order),
        })))
    }

    /// The rationals, `Q(z_1)`.
    pub fn rationals() -> Self {
        Field::new(1).unwrap()
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> Scalar {
        self.rational(Rational::from_integer(BigInt::from(k)))
    }

    /// `p/q`; panics if `q == 0`.
    pub fn frac(&self, p: i64, q: i64) -> Scalar {
        self.rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(&self, r: Rational) -> Scalar {
        let mut s = self.zero();
        s.coeffs[0] = r;
        s
    }

    /// The canonical primitive root `z`.
    pub fn zeta(&self) -> Scalar {
        self.reduce(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Scalar {
        self.reduce(coeffs)
    }

    fn reduce(&self, mut p: QPoly) -> Scalar {
        let deg = self.degree();
        let m = &self.0.modulus;
        trim(&mut p);
        while p.len() > deg {
            let top = p.len() - 1;
            let c = p.pop().unwrap();
            if !c.is_zero() {
                for j in 0..deg {
                    p[top - deg + j] -= &c * &m[j];
                }
            }
            trim(&mut p);
        }
        p.resize(deg, Rational::zero());
        Scalar {
            field: self.clone(),
            coeffs: p,
        }
    }
}

/// Element of `Q(z_D)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// `Some(k)` iff the coordinates are exactly `(k, 0, ..., 0)` with `k` an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|k| k.to_i64())
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ScalarError::OrderMismatch(self.field.order(), other.field.order()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
        Ok(Scalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect();
        Ok(Scalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        if self.field.degree() == 1 {
            return Ok(self.field.rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        Ok(self.field.reduce(qpoly_mul(&self.coeffs, &other.coeffs)))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `Phi_D`.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(self.field.rational(self.coeffs[0].recip()));
        }
        // Invariant: s * self == r (mod Phi).
        let mut r0: QPoly = self.field.modulus().to_vec();
        let mut r1: QPoly = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: QPoly = Vec::new();
        let mut s1: QPoly = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Phi_D is irreducible.
        let c = r1[0].recip();
        let s: QPoly = s1.into_iter().map(|x| x * &c).collect();
        Ok(self.field.reduce(s))
    }

    /// Integer power; negative exponents go through the exact inverse.
    pub fn pow(&self, exp: i64) -> Result<Scalar, ScalarError> {
        let mut base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `self^exp`, panicking on `0^negative`. For call sites where the base is
    /// a validated nonzero parameter.
    pub fn powi(&self, exp: i64) -> Scalar {
        self.pow(exp).expect("negative power of zero")
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    /// Smallest `k <= bound` with `self^k == 1`.
    pub fn multiplicative_order(&self, bound: u64) -> Result<Option<u64>, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInput);
        }
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Ok(Some(k));
            }
            acc = &acc * self;
        }
        Ok(None)
    }

    /// Order of a root of unity in this field, if it is one. Roots of unity
    /// in `Q(z_D)` have order dividing `lcm(2, D)`.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>, ScalarError> {
        let d = u64::from(self.field.order());
        self.multiplicative_order(2 * d)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write_rational(f, c)?;
            if k > 0 {
                write!(f, "*z^{k}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn write_rational(f: &mut impl fmt::Write, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl Scalar {
    /// Number of nonzero power-basis terms; rendering wraps the value in
    /// parentheses when this exceeds one and the scalar is a coefficient.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// True for a single negative rational term (renders with a leading `-`).
    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_negative())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division")
    }
}

impl std::ops::Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.check(rhs).expect("scalar arithmetic");
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.check(rhs).expect("scalar arithmetic");
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for x in &mut self.coeffs {
            *x = -x.clone();
        }
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}
