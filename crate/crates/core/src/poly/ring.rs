use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{Poly, RationalFn};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("pole 0 is implicit and cannot be listed")]
    ZeroPole,
    #[error("duplicate pole {0}")]
    DuplicatePole(String),
    #[error("not in the ring: denominator factor {factor} is not a product of allowed linear factors")]
    NotMember { factor: String },
}

/// `Q(z_D)[t, t^-1, (t - a_1)^-1, ..., (t - a_r)^-1]` for distinct nonzero
/// `a_i`. The pole at `0` is always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedRing {
    field: Field,
    poles: Vec<Scalar>,
}

impl LocalizedRing {
    pub fn new(field: &Field, poles: Vec<Scalar>) -> Result<Self, RingError> {
        for (i, p) in poles.iter().enumerate() {
            if p.is_zero() {
                return Err(RingError::ZeroPole);
            }
            if poles[..i].contains(p) {
                return Err(RingError::DuplicatePole(p.to_string()));
            }
        }
        Ok(LocalizedRing {
            field: field.clone(),
            poles,
        })
    }

    /// `Q(z_D)[t, t^-1]`.
    pub fn laurent(field: &Field) -> Self {
        LocalizedRing {
            field: field.clone(),
            poles: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn poles(&self) -> &[Scalar] {
        &self.poles
    }

    pub fn pole_index(&self, a: &Scalar) -> Option<usize> {
        self.poles.iter().position(|p| p == a)
    }

    pub fn contains(&self, f: &RationalFn) -> bool {
        ring_membership(f, self).is_ok()
    }

    /// `(t - a_i)^-k` for pole index `i`.
    pub fn pole_power(&self, index: usize, k: u32) -> RationalFn {
        RationalFn::linear_power(&self.poles[index], -i64::from(k))
    }

    /// The basis `1, t^k, t^-k, (t - a_i)^-k` for `1 <= k <= bound`.
    pub fn truncated_basis(&self, bound: u32) -> Vec<(BasisTag, RingElem)> {
        let mut tags = vec![BasisTag::Const];
        for k in 1..=bound {
            tags.push(BasisTag::TPos(k));
            tags.push(BasisTag::TNeg(k));
        }
        for index in 0..self.poles.len() {
            for k in 1..=bound {
                tags.push(BasisTag::Pole { index, k });
            }
        }
        tags.into_iter()
            .map(|tag| {
                let value = tag.to_rational(self);
                (tag, ring_membership(&value, self).expect("basis element lies in ring"))
            })
            .collect()
    }
}

/// Element of a [`LocalizedRing`], with the certified factorization of its
/// denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    value: RationalFn,
    ring: LocalizedRing,
    /// Multiplicity of `t`, then of each `t - a_i` in ring order.
    den_exponents: Vec<u32>,
}

impl RingElem {
    pub fn value(&self) -> &RationalFn {
        &self.value
    }

    pub fn into_value(self) -> RationalFn {
        self.value
    }

    pub fn ring(&self) -> &LocalizedRing {
        &self.ring
    }

    pub fn den_exponents(&self) -> &[u32] {
        &self.den_exponents
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    fn lift(&self, value: RationalFn) -> Result<RingElem, RingError> {
        ring_membership(&value, &self.ring)
    }

    pub fn zero(ring: &LocalizedRing) -> RingElem {
        ring_membership(&RationalFn::zero(ring.field()), ring).unwrap()
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.lift(self.value.add(&other.value))
            .expect("rings are closed under addition")
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.lift(self.value.sub(&other.value))
            .expect("rings are closed under subtraction")
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.lift(self.value.mul(&other.value))
            .expect("rings are closed under multiplication")
    }

    pub fn scale(&self, s: &Scalar) -> RingElem {
        self.lift(self.value.scale(s)).unwrap()
    }

    pub fn mul_t_pow(&self, k: i64) -> RingElem {
        self.lift(self.value.mul_t_pow(k)).unwrap()
    }

    /// `∂ = t d/dt`; the ring is closed under it.
    pub fn theta(&self) -> RingElem {
        self.lift(self.value.theta()).expect("∂ preserves the ring")
    }

    /// `f(a t^n)`, re-certified in the same ring.
    pub fn substitute(&self, a: &Scalar, n: i64) -> Result<RingElem, RingError> {
        self.lift(self.value.substitute(a, n))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.den().is_one() {
            return write!(f, "{}", self.value.num());
        }
        let mut factors = Vec::new();
        if self.den_exponents[0] > 0 {
            factors.push(format!("t^{}", self.den_exponents[0]));
        }
        for (a, &e) in self.ring.poles.iter().zip(&self.den_exponents[1..]) {
            if e > 0 {
                factors.push(format!("({})^{e}", Poly::linear(a)));
            }
        }
        write!(f, "({}) / ({})", self.value.num(), factors.join(" * "))
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Certifies `f` as an element of `ring` by trial division of its
/// denominator by `t` and each `t - a_i`.
pub fn ring_membership(f: &RationalFn, ring: &LocalizedRing) -> Result<RingElem, RingError> {
    let mut rest = f.den().clone();
    let mut exps = Vec::with_capacity(ring.poles.len() + 1);
    let zero = ring.field.zero();
    for a in std::iter::once(&zero).chain(&ring.poles) {
        let lin = Poly::linear(a);
        let mut e = 0;
        while rest.degree().unwrap_or(0) > 0 {
            match rest.div_exact(&lin) {
                Some(q) => {
                    rest = q;
                    e += 1;
                }
                None => break,
            }
        }
        exps.push(e);
    }
    if rest.degree() != Some(0) {
        return Err(RingError::NotMember {
            factor: rest.to_string(),
        });
    }
    Ok(RingElem {
        value: f.clone(),
        ring: ring.clone(),
        den_exponents: exps,
    })
}

/// Element of the standard basis `1, t^k, t^-k, (t - a_i)^-k` (`k >= 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisTag {
    Const,
    TPos(u32),
    TNeg(u32),
    /// `(t - a_index)^-k`, index into the ring's pole list.
    Pole {
        index: usize,
        k: u32,
    },
}

impl BasisTag {
    pub fn to_rational(&self, ring: &LocalizedRing) -> RationalFn {
        let f = ring.field();
        match *self {
            BasisTag::Const => RationalFn::one(f),
            BasisTag::TPos(k) => RationalFn::laurent_monomial(f.one(), i64::from(k)),
            BasisTag::TNeg(k) => RationalFn::laurent_monomial(f.one(), -i64::from(k)),
            BasisTag::Pole { index, k } => ring.pole_power(index, k),
        }
    }

    pub fn render(&self, ring: &LocalizedRing) -> String {
        match *self {
            BasisTag::Const => "1".into(),
            BasisTag::TPos(k) => format!("t^{k}"),
            BasisTag::TNeg(k) => format!("t^-{k}"),
            BasisTag::Pole { index, k } => format!("({})^-{k}", Poly::linear(&ring.poles()[index])),
        }
    }
}

/// First `n` Taylor coefficients of `num/den` at `t = 0`; needs `den(0) != 0`.
fn series_div(num: &Poly, den: &Poly, n: usize) -> Vec<Scalar> {
    let inv = den.coeff(0).inverse().expect("den(0) != 0");
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for j in 1..=k {
            let dj = den.coeff(j);
            if !dj.is_zero() {
                acc -= &(&dj * &out[k - j]);
            }
        }
        out.push(&acc * &inv);
    }
    out
}

/// Unique expansion of `f` in the basis `1, t^k, t^-k, (t - a_i)^-k`.
pub fn partial_fractions(f: &RingElem) -> BTreeMap<BasisTag, Scalar> {
    let ring = f.ring();
    let field = ring.field();
    let (num, den) = (f.value().num(), f.value().den());
    let mut out = BTreeMap::new();
    let mut put = |tag: BasisTag, c: Scalar| {
        if !c.is_zero() {
            out.insert(tag, c);
        }
    };

    let (quot, rem) = num.divrem(den);
    for (k, c) in quot.coeffs().iter().enumerate() {
        let tag = if k == 0 {
            BasisTag::Const
        } else {
            BasisTag::TPos(k as u32)
        };
        put(tag, c.clone());
    }
    if rem.is_zero() {
        return out;
    }

    let zero = field.zero();
    let centers = std::iter::once(&zero).chain(ring.poles());
    for (slot, (b, &e)) in centers.zip(f.den_exponents()).enumerate() {
        if e == 0 {
            continue;
        }
        let lin_pow = Poly::linear(b).pow(e);
        let cofactor = den.div_exact(&lin_pow).expect("certified factorization");
        let coeffs = series_div(&rem.taylor_shift(b), &cofactor.taylor_shift(b), e as usize);
        for (j, c) in coeffs.into_iter().enumerate() {
            let k = e - j as u32;
            let tag = if slot == 0 {
                BasisTag::TNeg(k)
            } else {
                BasisTag::Pole { index: slot - 1, k }
            };
            put(tag, c);
        }
    }
    out
}

/// Sum of `coeff * basis element`.
pub fn recombine(terms: &BTreeMap<BasisTag, Scalar>, ring: &LocalizedRing) -> RationalFn {
    terms.iter().fold(RationalFn::zero(ring.field()), |acc, (tag, c)| {
        acc.add(&tag.to_rational(ring).scale(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(f: &Field, poles: &[i64]) -> LocalizedRing {
        LocalizedRing::new(f, poles.iter().map(|&p| f.int(p)).collect()).unwrap()
    }

    #[test]
    fn ring_validation() {
        let f = Field::rationals();
        assert_eq!(LocalizedRing::new(&f, vec![f.zero()]), Err(RingError::ZeroPole));
        assert!(matches!(
            LocalizedRing::new(&f, vec![f.one(), f.one()]),
            Err(RingError::DuplicatePole(_))
        ));
    }

    #[test]
    fn membership_examples() {
        let f = Field::rationals();
        let r2 = ring(&f, &[2]);
        let x = RationalFn::linear_power(&f.int(2), -3);
        let e = ring_membership(&x, &r2).unwrap();
        assert_eq!(e.den_exponents(), &[0, 3]);

        let y = RationalFn::laurent_monomial(f.one(), -5);
        assert!(ring_membership(&y, &LocalizedRing::laurent(&f)).is_ok());
        assert!(ring_membership(&y, &r2).is_ok());

        let z = RationalFn::linear_power(&f.int(7), -1);
        assert_eq!(
            ring_membership(&z, &r2),
            Err(RingError::NotMember {
                factor: "t + -7".into()
            })
        );
    }

    #[test]
    fn partial_fraction_examples() {
        let f = Field::rationals();
        let r = ring(&f, &[1, 2]);
        let x = RationalFn::linear_power(&f.int(1), -1).mul(&RationalFn::linear_power(&f.int(2), -1));
        let pf = partial_fractions(&ring_membership(&x, &r).unwrap());
        let expected: BTreeMap<_, _> = [
            (BasisTag::Pole { index: 0, k: 1 }, f.int(-1)),
            (BasisTag::Pole { index: 1, k: 1 }, f.int(1)),
        ]
        .into();
        assert_eq!(pf, expected);

        let t3 = RationalFn::laurent_monomial(f.one(), 3);
        let pf = partial_fractions(&ring_membership(&t3, &r).unwrap());
        assert_eq!(pf, [(BasisTag::TPos(3), f.one())].into());

        let r1 = ring(&f, &[1]);
        let y = RationalFn::linear_power(&f.int(1), -1).mul_t_pow(1);
        let pf = partial_fractions(&ring_membership(&y, &r1).unwrap());
        let expected: BTreeMap<_, _> =
            [(BasisTag::Const, f.one()), (BasisTag::Pole { index: 0, k: 1 }, f.one())].into();
        assert_eq!(pf, expected);
    }

    #[test]
    fn partial_fractions_recombine() {
        let f = Field::new(4).unwrap();
        let r = LocalizedRing::new(&f, vec![f.zeta(), f.frac(3, 2)]).unwrap();
        let x = RationalFn::linear_power(&f.zeta(), -3)
            .mul(&RationalFn::linear_power(&f.frac(3, 2), -2))
            .mul_t_pow(-2)
            .mul(&RationalFn::from_poly(Poly::from_coeffs(
                &f,
                vec![
                    f.int(5),
                    f.zeta(),
                    f.zero(),
                    f.zero(),
                    f.zero(),
                    f.zero(),
                    f.zero(),
                    f.frac(1, 9),
                ],
            )));
        let e = ring_membership(&x, &r).unwrap();
        let pf = partial_fractions(&e);
        assert_eq!(recombine(&pf, &r), x);
    }

    #[test]
    fn factored_rendering() {
        let f = Field::rationals();
        let r = ring(&f, &[2]);
        let x = RationalFn::linear_power(&f.int(2), -1)
            .mul(&RationalFn::from_poly(Poly::linear(&f.int(6))))
            .mul_t_pow(-1);
        let e = ring_membership(&x, &r).unwrap();
        assert_eq!(e.to_string(), "(t + -6) / (t^1 * (t + -2)^1)");
    }
}
