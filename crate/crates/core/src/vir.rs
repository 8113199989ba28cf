//! The Virasoro algebra, its endomorphisms `phi_n tau_a` and the
//! lambda-differential operators built from them.
//!
//! The bracket convention throughout the crate is
//!
//! ```text
//! [L_m, L_n] = (n - m) L_{m+n} + delta_{n,-m} (m^3 - m)/12 C,   [C, L_m] = 0.
//! ```
//!
//! Note the sign: this is the opposite of the more common `(m - n)` form.
//! The correction term in `phi_n` depends on it, so do not "fix" it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::scalar::{Field, Rational, Scalar, ScalarError};

/// Basis element of `Vir`. Ordered with every `L_k` (by `k`) before `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    L(i64),
    C,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::L(k) => write!(f, "L[{k}]"),
            Gen::C => f.write_str("C"),
        }
    }
}

/// Finite linear combination of `L_k` and `C`, stored sparsely with no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct VirElement {
    field: Field,
    terms: BTreeMap<Gen, Scalar>,
}

impl VirElement {
    pub fn zero(field: &Field) -> Self {
        VirElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn gen(field: &Field, g: Gen) -> Self {
        Self::monomial(g, field.one())
    }

    pub fn l(field: &Field, k: i64) -> Self {
        Self::gen(field, Gen::L(k))
    }

    pub fn c(field: &Field) -> Self {
        Self::gen(field, Gen::C)
    }

    pub fn monomial(g: Gen, coeff: Scalar) -> Self {
        let mut x = VirElement::zero(coeff.field());
        x.add_term(g, coeff);
        x
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: Gen) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Gen, &Scalar)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn add_term(&mut self, g: Gen, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &VirElement) -> VirElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VirElement) -> VirElement {
        self.add(&other.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> VirElement {
        let mut out = VirElement::zero(&self.field);
        if s.is_zero() {
            return out;
        }
        for (g, c) in self.terms() {
            out.add_term(g, c * s);
        }
        out
    }

    /// Linear extension of a map given on basis elements.
    pub fn map_linear(&self, f: impl Fn(Gen) -> VirElement) -> VirElement {
        let mut out = VirElement::zero(&self.field);
        for (g, c) in self.terms() {
            out = out.add(&f(g).scale(c));
        }
        out
    }
}

impl fmt::Display for VirElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::render::write_sum(f, self.terms.iter().map(|(g, c)| (c, g.to_string())))
    }
}

impl fmt::Debug for VirElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `(m^3 - m)/12`, the central coefficient of `[L_m, L_{-m}]`.
pub fn central_charge_coeff(m: i64) -> Rational {
    rat(m * m * m - m, 12)
}

/// Bracket of two basis elements.
pub fn bracket_gen(field: &Field, x: Gen, y: Gen) -> VirElement {
    match (x, y) {
        (Gen::L(m), Gen::L(n)) => {
            let mut out = VirElement::zero(field);
            out.add_term(Gen::L(m + n), field.int(n - m));
            if n == -m {
                out.add_term(Gen::C, field.rational(central_charge_coeff(m)));
            }
            out
        }
        _ => VirElement::zero(field),
    }
}

/// Bilinear extension of the defining relations.
pub fn bracket(x: &VirElement, y: &VirElement) -> VirElement {
    let field = x.field();
    let mut out = VirElement::zero(field);
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            let coeff = cx * cy;
            for (g, c) in bracket_gen(field, gx, gy).terms() {
                out.add_term(g, c * &coeff);
            }
        }
    }
    out
}

/// One of the classified homomorphisms of `Vir`: the zero map or
/// `phi_n tau_a` with `n != 0`, `a != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSpec {
    Zero,
    PhiTau { n: i64, a: Scalar },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("n must be nonzero")]
    ZeroN,
    #[error("a must be nonzero")]
    ZeroA,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl HomSpec {
    pub fn phi_tau(n: i64, a: Scalar) -> Result<Self, HomError> {
        if n == 0 {
            return Err(HomError::ZeroN);
        }
        if a.is_zero() {
            return Err(HomError::ZeroA);
        }
        Ok(HomSpec::PhiTau { n, a })
    }

    pub fn identity(field: &Field) -> Self {
        HomSpec::PhiTau { n: 1, a: field.one() }
    }

    /// Image of a basis element.
    pub fn apply_gen(&self, field: &Field, g: Gen) -> VirElement {
        match self {
            HomSpec::Zero => VirElement::zero(field),
            HomSpec::PhiTau { n, a } => phi_tau_gen(field, *n, a, g, true),
        }
    }

    pub fn apply(&self, x: &VirElement) -> VirElement {
        x.map_linear(|g| self.apply_gen(x.field(), g))
    }
}

impl fmt::Display for HomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomSpec::Zero => f.write_str("0"),
            HomSpec::PhiTau { n, a } => write!(f, "phi_{n} tau_({a})"),
        }
    }
}

/// `phi_n tau_a` on a basis element:
/// `L_i -> (a^i/n)(L_{ni} - delta_{i,0} (n^2-1)/24 C)`, `C -> n C`.
///
/// With `central_correction = false` the `(n^2-1)/24` term is dropped, which
/// gives a map that is *not* a homomorphism for `|n| > 1`; it exists for
/// negative tests.
pub fn phi_tau_gen(field: &Field, n: i64, a: &Scalar, g: Gen, central_correction: bool) -> VirElement {
    match g {
        Gen::C => VirElement::monomial(Gen::C, field.int(n)),
        Gen::L(i) => {
            let coeff = a.powi(i).scale(&rat(1, n));
            let mut out = VirElement::monomial(Gen::L(n * i), coeff.clone());
            if i == 0 && central_correction {
                out.add_term(Gen::C, -coeff.scale(&rat(n * n - 1, 24)));
            }
            out
        }
    }
}

/// `d = lambda^{-1} (Phi - id)` where `Phi` is the map of `hom`.
///
/// `lambda = 1` gives `d_{0,0} = -id` (for `Phi = 0`) and
/// `d_{n,a} = phi_n tau_a - id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOpSpec {
    pub lambda: Scalar,
    pub hom: HomSpec,
}

impl DiffOpSpec {
    pub fn new(lambda: Scalar, hom: HomSpec) -> Result<Self, HomError> {
        if lambda.is_zero() {
            return Err(HomError::ZeroLambda);
        }
        Ok(DiffOpSpec { lambda, hom })
    }

    /// `d_{0,0}` with `lambda = 1`.
    pub fn d00(field: &Field) -> Self {
        DiffOpSpec {
            lambda: field.one(),
            hom: HomSpec::Zero,
        }
    }

    /// `d_{n,a}` with `lambda = 1`.
    pub fn dna(n: i64, a: Scalar) -> Result<Self, HomError> {
        let lambda = a.field().one();
        Ok(DiffOpSpec {
            lambda,
            hom: HomSpec::phi_tau(n, a)?,
        })
    }

    pub fn field(&self) -> &Field {
        self.lambda.field()
    }

    pub fn apply(&self, x: &VirElement) -> VirElement {
        apply_diff(self, x)
    }

    /// `D_lambda = lambda d + id`, which equals the underlying homomorphism.
    pub fn shifted(&self, x: &VirElement) -> VirElement {
        self.apply(x).scale(&self.lambda).add(x)
    }
}

/// `lambda^{-1}(Phi(x) - x)`.
pub fn apply_hom(hom: &HomSpec, x: &VirElement) -> VirElement {
    hom.apply(x)
}

pub fn apply_diff(d: &DiffOpSpec, x: &VirElement) -> VirElement {
    let inv = d.lambda.inverse().expect("lambda is nonzero");
    d.hom.apply(x).sub(x).scale(&inv)
}

/// A failing pair of basis elements with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub x: Gen,
    pub y: Gen,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for PairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at ({}, {}): {} != {}", self.x, self.y, self.lhs, self.rhs)
    }
}

/// `L_{-w}, ..., L_w, C`.
pub fn window_basis(window: u32) -> Vec<Gen> {
    let w = i64::from(window);
    (-w..=w).map(Gen::L).chain(std::iter::once(Gen::C)).collect()
}

/// First pair `(x, y)` in lexicographic basis order where `lhs != rhs`.
fn first_pair_failure(
    field: &Field,
    window: u32,
    sides: impl Fn(&VirElement, &VirElement) -> (VirElement, VirElement),
) -> Result<(), PairFailure> {
    let basis = window_basis(window);
    for &gx in &basis {
        let x = VirElement::gen(field, gx);
        for &gy in &basis {
            let y = VirElement::gen(field, gy);
            let (lhs, rhs) = sides(&x, &y);
            if lhs != rhs {
                return Err(PairFailure {
                    x: gx,
                    y: gy,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// `op[x,y] = [op x, y] + [x, op y] + lambda [op x, op y]` on the window.
pub fn check_lambda_identity(
    field: &Field,
    op: impl Fn(&VirElement) -> VirElement,
    lambda: &Scalar,
    window: u32,
) -> Result<(), PairFailure> {
    first_pair_failure(field, window, |x, y| {
        let (dx, dy) = (op(x), op(y));
        let lhs = op(&bracket(x, y));
        let rhs = bracket(&dx, y)
            .add(&bracket(x, &dy))
            .add(&bracket(&dx, &dy).scale(lambda));
        (lhs, rhs)
    })
}

/// Checks the lambda-identity for `d` at its own `lambda`.
pub fn check_diff_identity(d: &DiffOpSpec, window: u32) -> Result<(), PairFailure> {
    check_lambda_identity(d.field(), |x| d.apply(x), &d.lambda, window)
}

/// `f[x,y] = [f x, f y]` on the window, central terms included.
pub fn check_homomorphism_map(
    field: &Field,
    f: impl Fn(&VirElement) -> VirElement,
    window: u32,
) -> Result<(), PairFailure> {
    first_pair_failure(field, window, |x, y| (f(&bracket(x, y)), bracket(&f(x), &f(y))))
}

pub fn check_homomorphism(hom: &HomSpec, field: &Field, window: u32) -> Result<(), PairFailure> {
    check_homomorphism_map(field, |x| hom.apply(x), window)
}

/// Which composition law failed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionFailure {
    pub law: &'static str,
    pub at: Gen,
    pub lhs: String,
    pub rhs: String,
}

/// Checks `phi_m phi_n = phi_{mn}`, `tau_a tau_b = tau_{ab}` and
/// `tau_a phi_n = phi_n tau_{a^n}` on `L_i`, `|i| <= window`, and on `C`.
pub fn compose_check(m: i64, n: i64, a: &Scalar, b: &Scalar, window: u32) -> Result<(), CompositionFailure> {
    let field = a.field();
    let one = field.one();
    let phi = |k: i64| HomSpec::phi_tau(k, one.clone());
    let tau = |s: Scalar| HomSpec::phi_tau(1, s);
    let (phi_m, phi_n, phi_mn) = (
        phi(m).expect("m != 0"),
        phi(n).expect("n != 0"),
        phi(m * n).expect("mn != 0"),
    );
    let (tau_a, tau_b, tau_ab) = (
        tau(a.clone()).expect("a != 0"),
        tau(b.clone()).expect("b != 0"),
        tau(a * b).expect("ab != 0"),
    );
    let tau_an = tau(a.powi(n)).expect("a^n != 0");

    type Side<'a> = Box<dyn Fn(&VirElement) -> VirElement + 'a>;
    let laws: Vec<(&'static str, Side, Side)> = vec![
        (
            "phi_m phi_n = phi_mn",
            Box::new(|x| phi_m.apply(&phi_n.apply(x))),
            Box::new(|x| phi_mn.apply(x)),
        ),
        (
            "tau_a tau_b = tau_ab",
            Box::new(|x| tau_a.apply(&tau_b.apply(x))),
            Box::new(|x| tau_ab.apply(x)),
        ),
        (
            "tau_a phi_n = phi_n tau_(a^n)",
            Box::new(|x| tau_a.apply(&phi_n.apply(x))),
            Box::new(|x| phi_n.apply(&tau_an.apply(x))),
        ),
    ];
    for (law, lhs_map, rhs_map) in &laws {
        for g in window_basis(window) {
            let x = VirElement::gen(field, g);
            let (lhs, rhs) = (lhs_map(&x), rhs_map(&x));
            if lhs != rhs {
                return Err(CompositionFailure {
                    law,
                    at: g,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// `[x, y] = -[y, x]` for basis pairs in the window.
pub fn check_antisymmetry(field: &Field, window: u32) -> Result<(), PairFailure> {
    first_pair_failure(field, window, |x, y| {
        (bracket(x, y), bracket(y, x).scale(&field.int(-1)))
    })
}

/// Failing triple for the Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: (Gen, Gen, Gen),
    pub value: String,
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0` for basis triples in the window.
pub fn check_jacobi(field: &Field, window: u32) -> Result<(), JacobiFailure> {
    let basis = window_basis(window);
    for &a in &basis {
        let x = VirElement::gen(field, a);
        for &b in &basis {
            let y = VirElement::gen(field, b);
            let xy = bracket(&x, &y);
            for &c in &basis {
                let z = VirElement::gen(field, c);
                let sum = bracket(&xy, &z)
                    .add(&bracket(&bracket(&y, &z), &x))
                    .add(&bracket(&bracket(&z, &x), &y));
                if !sum.is_zero() {
                    return Err(JacobiFailure {
                        triple: (a, b, c),
                        value: sum.to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Support of `[L_m, L_n]` lies in `{L_{m+n}}`, plus `C` when `m + n = 0`.
pub fn check_gradation(field: &Field, window: u32) -> Result<(), (i64, i64)> {
    let w = i64::from(window);
    for m in -w..=w {
        for n in -w..=w {
            let br = bracket_gen(field, Gen::L(m), Gen::L(n));
            let ok = br.terms().all(|(g, _)| match g {
                Gen::L(k) => k == m + n,
                Gen::C => m + n == 0,
            });
            if !ok {
                return Err((m, n));
            }
        }
    }
    Ok(())
}
