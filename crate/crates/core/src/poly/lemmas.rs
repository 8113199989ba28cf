//! Decision procedures for the three structural facts about localized
//! Laurent rings used by the `A_{alpha,beta}` classification: logarithmic
//! derivatives, `t -> w t` invariants, and `t -> w/t` antisymmetric
//! functions.

use thiserror::Error;

use super::{partial_fractions, BasisTag, Poly, RationalFn, RingElem};
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("{0} is not a root of unity")]
    OrderUndefined(String),
    #[error("orbit elements b_i w^j are not distinct")]
    OrbitCollision,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Finds integers `(m_0, ..., m_r)` with `g = m_0 + sum_s m_s t/(t - a_s)`,
/// so that `f = t^{m_0} prod (t - a_s)^{m_s}` solves `∂f = g f`.
///
/// Since `t/(t - a) = 1 + a/(t - a)`, such a `g` expands as a constant plus
/// simple poles at the `a_s` with residues `m_s a_s`; anything else (poles at
/// `0`, higher poles, positive powers, non-integer exponents) means no such
/// `f` exists.
pub fn log_derivative_match(g: &RingElem) -> Option<Vec<i64>> {
    let ring = g.ring();
    let mut exps = vec![0i64; ring.poles().len() + 1];
    let mut constant = ring.field().zero();
    for (tag, c) in partial_fractions(g) {
        match tag {
            BasisTag::Const => constant = c,
            BasisTag::Pole { index, k: 1 } => {
                let m = (&c / &ring.poles()[index]).as_i64()?;
                exps[index + 1] = m;
            }
            _ => return None,
        }
    }
    let sum: i64 = exps[1..].iter().sum();
    exps[0] = (&constant - &ring.field().int(sum)).as_i64()?;
    Some(exps)
}

/// Tests `f(w t) = f(t)` for a root of unity `w`.
pub fn omega_invariant_check(f: &RationalFn, omega: &Scalar) -> Result<bool, LemmaError> {
    if omega
        .root_of_unity_order()
        .map_err(|_| LemmaError::OrderUndefined(omega.to_string()))?
        .is_none()
    {
        return Err(LemmaError::OrderUndefined(omega.to_string()));
    }
    Ok(f.substitute(omega, 1) == *f)
}

/// Tests `g(w/t) + g(t) = 0`.
pub fn antisymmetry_check(g: &RationalFn, omega: &Scalar) -> bool {
    g.substitute(omega, -1).add(g).is_zero()
}

/// Validates that all `b_i w^j` (`1 <= j <= d`) are pairwise distinct and nonzero.
pub fn check_distinct_orbits(bs: &[Scalar], omega: &Scalar, d: u32) -> Result<Vec<Scalar>, LemmaError> {
    let mut all: Vec<Scalar> = Vec::new();
    for b in bs {
        for j in 1..=d {
            let x = b * &omega.powi(i64::from(j));
            if x.is_zero() || all.contains(&x) {
                return Err(LemmaError::OrbitCollision);
            }
            all.push(x);
        }
    }
    Ok(all)
}

/// `f_{b,k}(t) = sum_{j=1}^{d} (w^j t - b)^{-k}`, a `t -> w t` invariant.
pub fn omega_invariant_generator(b: &Scalar, omega: &Scalar, d: u32, k: u32) -> RationalFn {
    let field = b.field();
    let mut acc = RationalFn::zero(field);
    for j in 1..=d {
        let lin = Poly::from_coeffs(field, vec![-b, omega.powi(i64::from(j))]);
        let term = RationalFn::new(Poly::one(field), lin.pow(k)).unwrap();
        acc = acc.add(&term);
    }
    acc
}

/// `t^k (t^2 - w) prod_i (t - l_i)(l_i t - w) / prod_i (t - m_i)(m_i t - w)`.
///
/// This is antisymmetric under `t -> w/t` when
/// `#mus = #lambdas + k + 1`.
pub fn antisymmetric_form(k: i64, lambdas: &[Scalar], mus: &[Scalar], omega: &Scalar) -> RationalFn {
    let field = omega.field();
    let pair = |x: &Scalar| Poly::linear(x).mul(&Poly::from_coeffs(field, vec![-omega, x.clone()]));
    let num = lambdas.iter().fold(
        Poly::from_coeffs(field, vec![-omega, field.zero(), field.one()]),
        |acc, l| acc.mul(&pair(l)),
    );
    let den = mus.iter().fold(Poly::one(field), |acc, m| acc.mul(&pair(m)));
    RationalFn::new(num, den).expect("mus are nonzero").mul_t_pow(k)
}
