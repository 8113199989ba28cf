//! Modules of the intermediate series `V(alpha, beta)`:
//! `L_i v_j = (alpha + j + beta i) v_{i+j}`, `C v_j = 0`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::harness::{check_on_window, Counterexample, ModuleFamily, WindowSpec};
use crate::render::write_sum;
use crate::scalar::{Field, Scalar};
use crate::vir::{DiffOpSpec, Gen, HomSpec, VirElement};

/// Sparse combination of the `v_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntSeriesVector {
    field: Field,
    terms: BTreeMap<i64, Scalar>,
}

impl IntSeriesVector {
    pub fn zero(field: &Field) -> Self {
        IntSeriesVector {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * v_j`.
    pub fn basis(j: i64, coeff: Scalar) -> Self {
        let mut v = IntSeriesVector::zero(coeff.field());
        v.add_term(j, coeff);
        v
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(&j, c)| (j, c))
    }

    pub fn coeff(&self, j: i64) -> Scalar {
        self.terms.get(&j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, j: i64, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(j).or_insert_with(|| coeff.field().zero());
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&j);
        }
    }

    pub fn add(&self, other: &IntSeriesVector) -> IntSeriesVector {
        let mut out = self.clone();
        for (j, c) in other.terms() {
            out.add_term(j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntSeriesVector) -> IntSeriesVector {
        self.add(&other.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> IntSeriesVector {
        if s.is_zero() {
            return IntSeriesVector::zero(&self.field);
        }
        IntSeriesVector {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&j, c)| (j, c * s)).collect(),
        }
    }
}

impl fmt::Display for IntSeriesVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(j, c)| (c, format!("v[{j}]"))))
    }
}

impl fmt::Debug for IntSeriesVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeriesParams {
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl IntSeriesParams {
    pub fn new(alpha: Scalar, beta: Scalar) -> Self {
        IntSeriesParams { alpha, beta }
    }

    pub fn module(&self) -> IntSeriesModule {
        IntSeriesModule { params: self.clone() }
    }
}

/// `L_i v`.
pub fn act_int(i: i64, v: &IntSeriesVector, p: &IntSeriesParams) -> IntSeriesVector {
    let field = v.field();
    let mut out = IntSeriesVector::zero(field);
    let base = &p.alpha + &(&p.beta * &field.int(i));
    for (j, c) in v.terms() {
        let w = &base + &field.int(j);
        out.add_term(i + j, c * &w);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeriesModule {
    params: IntSeriesParams,
}

impl IntSeriesModule {
    pub fn params(&self) -> &IntSeriesParams {
        &self.params
    }
}

impl ModuleFamily for IntSeriesModule {
    type Vector = IntSeriesVector;

    fn field(&self) -> &Field {
        self.params.alpha.field()
    }

    fn act(&self, k: i64, v: &IntSeriesVector) -> IntSeriesVector {
        act_int(k, v, &self.params)
    }

    fn act_central(&self, v: &IntSeriesVector) -> IntSeriesVector {
        IntSeriesVector::zero(v.field())
    }

    fn zero(&self) -> IntSeriesVector {
        IntSeriesVector::zero(self.field())
    }

    fn add(&self, x: &IntSeriesVector, y: &IntSeriesVector) -> IntSeriesVector {
        x.add(y)
    }

    fn scale(&self, s: &Scalar, v: &IntSeriesVector) -> IntSeriesVector {
        v.scale(s)
    }

    /// `v_j` for `|j| <= bound`.
    fn basis(&self, bound: u32) -> Vec<IntSeriesVector> {
        let b = i64::from(bound);
        (-b..=b)
            .map(|j| IntSeriesVector::basis(j, self.field().one()))
            .collect()
    }

    fn render(&self, v: &IntSeriesVector) -> String {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntSeriesReject {
    #[error("RejectAlpha: (n-1)alpha = {0} is not an integer")]
    Alpha(String),
    #[error("RejectZeroN: n must be nonzero")]
    ZeroN,
    #[error("RejectZeroA: a must be nonzero")]
    ZeroA,
}

impl IntSeriesReject {
    pub fn code(&self) -> &'static str {
        match self {
            IntSeriesReject::Alpha(_) => "RejectAlpha",
            IntSeriesReject::ZeroN => "RejectZeroN",
            IntSeriesReject::ZeroA => "RejectZeroA",
        }
    }
}

/// `Delta(v_i) = xi a^i v_{shift + n i}`; a valid structure has `shift = (n-1)alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntDelta {
    module: IntSeriesModule,
    n: i64,
    a: Scalar,
    xi: Scalar,
    shift: i64,
}

impl IntDelta {
    /// Skips validation. Meant for negative tests.
    pub fn unchecked(p: IntSeriesParams, n: i64, a: Scalar, xi: Scalar, shift: i64) -> Self {
        IntDelta {
            module: p.module(),
            n,
            a,
            xi,
            shift,
        }
    }

    pub fn module(&self) -> &IntSeriesModule {
        &self.module
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn diff_op(&self) -> DiffOpSpec {
        DiffOpSpec::dna(self.n, self.a.clone()).expect("n and a are nonzero")
    }

    pub fn apply(&self, v: &IntSeriesVector) -> IntSeriesVector {
        let mut out = IntSeriesVector::zero(v.field());
        for (i, c) in v.terms() {
            out.add_term(self.shift + self.n * i, c * &(&self.xi * &self.a.powi(i)));
        }
        out
    }

    pub fn delta(&self, v: &IntSeriesVector) -> IntSeriesVector {
        self.apply(v).sub(v)
    }
}

pub fn build_int_delta(n: i64, a: Scalar, xi: Scalar, p: IntSeriesParams) -> Result<IntDelta, IntSeriesReject> {
    if n == 0 {
        return Err(IntSeriesReject::ZeroN);
    }
    if a.is_zero() {
        return Err(IntSeriesReject::ZeroA);
    }
    let shift = &p.alpha * &p.alpha.field().int(n - 1);
    let Some(s) = shift.as_i64() else {
        return Err(IntSeriesReject::Alpha(shift.to_string()));
    };
    Ok(IntDelta::unchecked(p, n, a, xi, s))
}

/// Checks `Delta(L_i v_j) = (a^i/n) L_{ni} Delta(v_j)` and the central
/// equation over `|i| <= op_window`, `|j| <= module_bound`.
pub fn verify_int(spec: &IntDelta, w: WindowSpec) -> Result<(), Counterexample> {
    let module = spec.module();
    let field = module.field();
    let hom = HomSpec::phi_tau(spec.n, spec.a.clone()).expect("n and a are nonzero");
    check_on_window(module, w, |g: Gen, b| {
        let x = VirElement::gen(field, g);
        let lhs = spec.apply(&module.act_element(&x, b));
        let rhs = module.act_element(&hom.apply(&x), &spec.apply(b));
        (lhs, rhs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{check_module_relation, verify_d00, verify_diff_module, verify_lambda_module};

    fn q() -> Field {
        Field::rationals()
    }

    fn v(j: i64) -> IntSeriesVector {
        IntSeriesVector::basis(j, q().one())
    }

    #[test]
    fn action_examples() {
        let f = q();
        let p = IntSeriesParams::new(f.frac(1, 2), f.zero());
        assert_eq!(act_int(2, &v(3), &p), IntSeriesVector::basis(5, f.frac(7, 2)));
        let p0 = IntSeriesParams::new(f.zero(), f.zero());
        assert!(act_int(2, &v(0), &p0).is_zero());
        assert!(p.module().act_central(&v(4)).is_zero());
    }

    #[test]
    fn rendering() {
        let f = q();
        let x = v(2).scale(&f.int(3)).add(&v(-1).scale(&f.int(-1)));
        assert_eq!(x.to_string(), "-v[-1] + 3*v[2]");
    }

    #[test]
    fn builder_examples() {
        let f = q();
        let rej = build_int_delta(2, f.int(3), f.one(), IntSeriesParams::new(f.frac(1, 2), f.zero()));
        assert_eq!(rej.unwrap_err().code(), "RejectAlpha");

        let s = build_int_delta(1, f.int(5), f.int(2), IntSeriesParams::new(f.frac(3, 7), f.one())).unwrap();
        assert_eq!(s.apply(&v(2)), IntSeriesVector::basis(2, f.int(50)));

        let s = build_int_delta(4, f.int(2), f.one(), IntSeriesParams::new(f.frac(1, 3), f.zero())).unwrap();
        assert_eq!(s.apply(&v(3)), IntSeriesVector::basis(13, f.int(8)));
        assert_eq!(s.apply(&v(-1)), IntSeriesVector::basis(-3, f.frac(1, 2)));
    }

    #[test]
    fn verification_examples() {
        let f = q();
        let w = WindowSpec::new(8, 8);
        let cases = [
            (2, f.int(3), f.one(), f.zero(), f.zero()),
            (1, f.int(5), f.int(2), f.frac(1, 2), f.one()),
            (4, f.int(2), f.one(), f.frac(1, 3), f.zero()),
            (-1, f.frac(1, 3), f.int(7), f.frac(5, 2), f.frac(2, 3)),
        ];
        for (n, a, xi, alpha, beta) in cases {
            let s = build_int_delta(n, a, xi, IntSeriesParams::new(alpha, beta)).unwrap();
            assert_eq!(verify_int(&s, w), Ok(()));
            assert_eq!(verify_diff_module(s.module(), &s.diff_op(), &|x| s.delta(x), w), Ok(()));
        }
    }

    #[test]
    fn mutated_shift_fails() {
        let f = q();
        let bad = IntDelta::unchecked(IntSeriesParams::new(f.zero(), f.zero()), 2, f.int(3), f.one(), 1);
        let cx = verify_int(&bad, WindowSpec::new(2, 2)).unwrap_err();
        assert!(cx.lhs != cx.rhs);
    }

    #[test]
    fn lambda_scaled_form() {
        let f = q();
        let s = build_int_delta(2, f.int(3), f.one(), IntSeriesParams::new(f.zero(), f.frac(1, 2))).unwrap();
        let lambda = f.int(3);
        let inv = lambda.inverse().unwrap();
        let d = s.diff_op();
        let res = verify_lambda_module(
            s.module(),
            &|x| d.apply(x).scale(&inv),
            &lambda,
            &|x| s.delta(x).scale(&inv),
            WindowSpec::new(5, 5),
        );
        assert_eq!(res, Ok(()));
    }

    #[test]
    fn module_relation() {
        let f = q();
        for (alpha, beta) in [
            (f.frac(1, 2), f.zero()),
            (f.int(2), f.one()),
            (f.frac(-1, 3), f.frac(5, 4)),
        ] {
            let m = IntSeriesParams::new(alpha, beta).module();
            assert_eq!(check_module_relation(&m, WindowSpec::new(6, 8)), Ok(()));
        }
    }

    #[test]
    fn d00_bump_fails() {
        let f = q();
        let m = IntSeriesParams::new(f.frac(1, 2), f.zero()).module();
        let w = WindowSpec::new(3, 3);
        assert_eq!(verify_d00(&m, &|x| x.scale(&f.int(-1)), w), Ok(()));
        let bumped = |x: &IntSeriesVector| x.scale(&f.int(-1)).add(&IntSeriesVector::basis(0, x.coeff(0)));
        assert!(verify_d00(&m, &bumped, w).is_err());
    }
}
