//! The modules `A_{alpha,beta}`: a localized Laurent ring `A` with
//! `L_i f = (∂ + alpha + i beta)(t^i f)` and `C f = 0`, where `∂ = t d/dt`
//! and `alpha` is a non-constant element of `A`.
//!
//! Differential structures come in two shapes, `Delta(f) = f(a t) h` with `a`
//! a primitive root of unity ([`build_case1`]) and `Delta(f) = f(a/t) h`
//! ([`build_case2`]).

use std::fmt;

use thiserror::Error;

use crate::harness::{check_on_window, Counterexample, ModuleFamily, WindowSpec};
use crate::poly::{
    antisymmetry_check, check_distinct_orbits, omega_invariant_check, ring_membership, LocalizedRing, RationalFn,
    RingElem, RingError,
};
use crate::scalar::{Field, Scalar};
use crate::vir::{Gen, HomSpec, VirElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AabError {
    #[error("alpha must not be constant")]
    ConstantAlpha,
    #[error(transparent)]
    Membership(#[from] RingError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AABParams {
    alpha: RingElem,
    beta: Scalar,
}

impl AABParams {
    /// Certifies `alpha` in `ring`.
    pub fn new(alpha: &RationalFn, beta: Scalar, ring: &LocalizedRing) -> Result<Self, AabError> {
        if alpha.is_constant() {
            return Err(AabError::ConstantAlpha);
        }
        Ok(AABParams {
            alpha: ring_membership(alpha, ring)?,
            beta,
        })
    }

    pub fn alpha(&self) -> &RingElem {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn ring(&self) -> &LocalizedRing {
        self.alpha.ring()
    }

    pub fn module(&self) -> AabModule {
        AabModule { params: self.clone() }
    }
}

/// `L_i f = ∂(t^i f) + (alpha + i beta) t^i f`.
pub fn act_aab(i: i64, f: &RingElem, p: &AABParams) -> RingElem {
    let g = f.mul_t_pow(i);
    let shift = p.beta.scale_int(i);
    g.theta().add(&p.alpha.mul(&g)).add(&g.scale(&shift))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AabModule {
    params: AABParams,
}

impl AabModule {
    pub fn params(&self) -> &AABParams {
        &self.params
    }

    pub fn ring(&self) -> &LocalizedRing {
        self.params.ring()
    }

    /// Certifies `f` in this module's ring.
    pub fn elem(&self, f: &RationalFn) -> Result<RingElem, RingError> {
        ring_membership(f, self.ring())
    }
}

impl ModuleFamily for AabModule {
    type Vector = RingElem;

    fn field(&self) -> &Field {
        self.ring().field()
    }

    fn act(&self, k: i64, v: &RingElem) -> RingElem {
        act_aab(k, v, &self.params)
    }

    fn act_central(&self, _v: &RingElem) -> RingElem {
        RingElem::zero(self.ring())
    }

    fn zero(&self) -> RingElem {
        RingElem::zero(self.ring())
    }

    fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        x.add(y)
    }

    fn scale(&self, s: &Scalar, v: &RingElem) -> RingElem {
        v.scale(s)
    }

    /// `1, t^k, t^-k, (t - pole)^-k` for `1 <= k <= bound`.
    fn basis(&self, bound: u32) -> Vec<RingElem> {
        self.ring().truncated_basis(bound).into_iter().map(|(_, e)| e).collect()
    }

    fn render(&self, v: &RingElem) -> String {
        v.value().to_string()
    }
}

/// Data for `Delta(f) = c f(a t) prod (t - a_i a^j)^{m_ij}`.
///
/// `m[i][k]` is the exponent of `t - a_i a^{k+1}`, so a row lists
/// `m_{i1}, ..., m_{id}`; the last entry doubles as `m_{i0}` because `a^d = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case1Data {
    pub d: u32,
    pub a: Scalar,
    pub base_poles: Vec<Scalar>,
    pub m: Vec<Vec<i64>>,
    pub c: Scalar,
    pub extra: RationalFn,
}

/// Data for `Delta(f) = c f(a/t) t^{m_0} prod (t - a_i)^{m_i} (t - a/a_i)^{-m_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Data {
    pub a: Scalar,
    pub base_poles: Vec<Scalar>,
    pub m0: i64,
    pub m: Vec<i64>,
    pub c: Scalar,
    pub extra: RationalFn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseData {
    One(Case1Data),
    Two(Case2Data),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AabReject {
    #[error("RejectNotPrimitive: {a} does not have multiplicative order {d}")]
    NotPrimitive { a: String, d: u32 },
    #[error("RejectRowSum: row {row} of m sums to {sum}")]
    RowSum { row: usize, sum: i64 },
    #[error("RejectShape: {0}")]
    Shape(String),
    #[error("RejectNotInvariant: extra = {0} is not invariant under t -> a t")]
    NotInvariant(String),
    #[error("RejectCollision: the pole set has repeated or zero entries")]
    Collision,
    #[error("RejectNotAntisymmetric: extra = {0} does not satisfy g(a/t) + g(t) = 0")]
    NotAntisymmetric(String),
    #[error("RejectPole: extra = {0} has a pole outside the ring")]
    Pole(String),
    #[error("RejectZeroC: c must be nonzero")]
    ZeroC,
    #[error("RejectConstantAlpha: alpha = {0} is constant")]
    ConstantAlpha(String),
}

impl AabReject {
    pub fn code(&self) -> &'static str {
        match self {
            AabReject::NotPrimitive { .. } => "RejectNotPrimitive",
            AabReject::RowSum { .. } => "RejectRowSum",
            AabReject::Shape(_) => "RejectShape",
            AabReject::NotInvariant(_) => "RejectNotInvariant",
            AabReject::Collision => "RejectCollision",
            AabReject::NotAntisymmetric(_) => "RejectNotAntisymmetric",
            AabReject::Pole(_) => "RejectPole",
            AabReject::ZeroC => "RejectZeroC",
            AabReject::ConstantAlpha(_) => "RejectConstantAlpha",
        }
    }
}

/// A built module with `Delta(f) = f(a t^n) h + offset`. Valid builds have
/// `n = 1` or `n = -1` and no offset.
#[derive(Clone, Debug)]
pub struct AabStructure {
    module: AabModule,
    n: i64,
    a: Scalar,
    c: Scalar,
    /// `t` exponent, then the exponent of each ring pole in ring order.
    exponents: Vec<i64>,
    h: RingElem,
    alpha0: RingElem,
    data: CaseData,
    offset: Option<RingElem>,
}

impl AabStructure {
    pub fn module(&self) -> &AabModule {
        &self.module
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn h(&self) -> &RingElem {
        &self.h
    }

    pub fn alpha0(&self) -> &RingElem {
        &self.alpha0
    }

    pub fn data(&self) -> &CaseData {
        &self.data
    }

    /// Exponents of `h / c`: the power of `t`, then one per ring pole.
    pub fn h_exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Same module and data with `beta` replaced.
    pub fn with_beta(&self, beta: Scalar) -> AabStructure {
        let mut out = self.clone();
        out.module.params.beta = beta;
        out
    }

    /// Replaces `h` without any check. Meant for negative tests.
    pub fn with_h_unchecked(&self, h: &RationalFn) -> Result<AabStructure, RingError> {
        let mut out = self.clone();
        out.h = self.module.elem(h)?;
        Ok(out)
    }

    /// Adds a constant term to `Delta`. Meant for negative tests.
    pub fn with_offset_unchecked(&self, offset: &RationalFn) -> Result<AabStructure, RingError> {
        let mut out = self.clone();
        out.offset = Some(self.module.elem(offset)?);
        Ok(out)
    }

    pub fn apply(&self, f: &RingElem) -> RingElem {
        let base = f
            .substitute(&self.a, self.n)
            .expect("the ring is closed under the substitution")
            .mul(&self.h);
        match &self.offset {
            Some(o) => base.add(o),
            None => base,
        }
    }

    pub fn delta(&self, f: &RingElem) -> RingElem {
        self.apply(f).sub(f)
    }
}

impl fmt::Display for AabStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * f({}*t^{})", self.c, self.a, self.n)?;
        if self.exponents[0] != 0 {
            write!(f, " * t^{}", self.exponents[0])?;
        }
        for (p, &e) in self.module.ring().poles().iter().zip(&self.exponents[1..]) {
            if e != 0 {
                write!(f, " * ({})^{e}", crate::poly::Poly::linear(p))?;
            }
        }
        if let Some(o) = &self.offset {
            write!(f, " + {}", o.value())?;
        }
        Ok(())
    }
}

/// `c t^{e_0} prod (t - p_k)^{e_k}` over the ring poles.
fn h_from_exponents(ring: &LocalizedRing, c: &Scalar, exps: &[i64]) -> RationalFn {
    let mut h = RationalFn::laurent_monomial(c.clone(), exps[0]);
    for (p, &e) in ring.poles().iter().zip(&exps[1..]) {
        h = h.mul(&RationalFn::linear_power(p, e));
    }
    h
}

/// `alpha_0` for case 1:
/// `sum_i sum_{j=1}^{d} a_i (m_{i0} + ... + m_{i,j-1}) (a^-j t - a_i)^-1`.
pub fn case1_alpha0(data: &Case1Data) -> RationalFn {
    let field = data.a.field();
    let d = data.d as usize;
    let mut acc = RationalFn::zero(field);
    for (ai, row) in data.base_poles.iter().zip(&data.m) {
        // prefix = m_{i0} + ... + m_{i,j-1}, with m_{i0} = row[d-1].
        let mut prefix = row[d - 1];
        for j in 1..=d {
            if j > 1 {
                prefix += row[j - 2];
            }
            if prefix == 0 {
                continue;
            }
            let aj = data.a.powi(j as i64);
            // a_i P / (a^-j t - a_i) = a_i P a^j / (t - a_i a^j)
            let coeff = ai * &aj * field.int(prefix);
            acc = acc.add(&RationalFn::linear_power(&(ai * &aj), -1).scale(&coeff));
        }
    }
    acc
}

/// `alpha_0` for case 2:
/// `-m_0/2 - sum_i (m_i/2) (a_i^2 - a) t / ((t - a_i)(a_i t - a))`.
pub fn case2_alpha0(data: &Case2Data) -> RationalFn {
    let field = data.a.field();
    let half = field.frac(1, 2);
    let mut acc = RationalFn::constant(field.int(-data.m0) * &half);
    for (ai, &mi) in data.base_poles.iter().zip(&data.m) {
        let a_over = &data.a / ai;
        let coeff = &((ai * ai - &data.a) * field.int(mi) * &half) / ai;
        let term = RationalFn::linear_power(ai, -1)
            .mul(&RationalFn::linear_power(&a_over, -1))
            .mul_t_pow(1)
            .scale(&coeff);
        acc = acc.sub(&term);
    }
    acc
}

fn assemble(
    ring: LocalizedRing,
    n: i64,
    a: Scalar,
    c: Scalar,
    exponents: Vec<i64>,
    alpha0: RationalFn,
    extra: &RationalFn,
    beta: Scalar,
    data: CaseData,
) -> Result<AabStructure, AabReject> {
    let alpha = alpha0.add(extra);
    let params = AABParams::new(&alpha, beta, &ring).map_err(|e| match e {
        AabError::ConstantAlpha => AabReject::ConstantAlpha(alpha.to_string()),
        AabError::Membership(_) => AabReject::Pole(extra.to_string()),
    })?;
    let module = params.module();
    let h = module
        .elem(&h_from_exponents(&ring, &c, &exponents))
        .expect("h is built from ring poles");
    let alpha0 = module.elem(&alpha0).expect("alpha_0 has ring poles only");
    Ok(AabStructure {
        module,
        n,
        a,
        c,
        exponents,
        h,
        alpha0,
        data,
        offset: None,
    })
}

pub fn build_case1(data: &Case1Data, beta: Scalar) -> Result<AabStructure, AabReject> {
    let field = data.a.field().clone();
    let d = data.d;
    if d == 0 || data.a.root_of_unity_order().ok().flatten() != Some(u64::from(d)) {
        return Err(AabReject::NotPrimitive {
            a: data.a.to_string(),
            d,
        });
    }
    if data.m.len() != data.base_poles.len() {
        return Err(AabReject::Shape(format!(
            "{} rows of exponents for {} poles",
            data.m.len(),
            data.base_poles.len()
        )));
    }
    if let Some(row) = data.m.iter().find(|r| r.len() != d as usize) {
        return Err(AabReject::Shape(format!("row of length {} with d = {d}", row.len())));
    }
    if let Some((row, sum)) = data
        .m
        .iter()
        .map(|r| r.iter().sum::<i64>())
        .enumerate()
        .find(|&(_, s)| s != 0)
    {
        return Err(AabReject::RowSum { row, sum });
    }
    if data.c.is_zero() {
        return Err(AabReject::ZeroC);
    }
    let poles = check_distinct_orbits(&data.base_poles, &data.a, d).map_err(|_| AabReject::Collision)?;
    let ring = LocalizedRing::new(&field, poles).map_err(|_| AabReject::Collision)?;
    match omega_invariant_check(&data.extra, &data.a) {
        Ok(true) => {}
        _ => return Err(AabReject::NotInvariant(data.extra.to_string())),
    }
    if !ring.contains(&data.extra) {
        return Err(AabReject::Pole(data.extra.to_string()));
    }
    let mut exponents = vec![0];
    exponents.extend(data.m.iter().flatten().copied());
    assemble(
        ring,
        1,
        data.a.clone(),
        data.c.clone(),
        exponents,
        case1_alpha0(data),
        &data.extra,
        beta,
        CaseData::One(data.clone()),
    )
}

pub fn build_case2(data: &Case2Data, beta: Scalar) -> Result<AabStructure, AabReject> {
    let field = data.a.field().clone();
    if data.a.is_zero() {
        return Err(AabReject::Collision);
    }
    if data.m.len() != data.base_poles.len() {
        return Err(AabReject::Shape(format!(
            "{} exponents for {} poles",
            data.m.len(),
            data.base_poles.len()
        )));
    }
    if data.c.is_zero() {
        return Err(AabReject::ZeroC);
    }
    if data.base_poles.iter().any(Scalar::is_zero) {
        return Err(AabReject::Collision);
    }
    let mut poles = data.base_poles.clone();
    poles.extend(data.base_poles.iter().map(|ai| &data.a / ai));
    let ring = LocalizedRing::new(&field, poles).map_err(|_| AabReject::Collision)?;
    if !antisymmetry_check(&data.extra, &data.a) {
        return Err(AabReject::NotAntisymmetric(data.extra.to_string()));
    }
    if !ring.contains(&data.extra) {
        return Err(AabReject::Pole(data.extra.to_string()));
    }
    let mut exponents = vec![data.m0];
    exponents.extend(data.m.iter().copied());
    exponents.extend(data.m.iter().map(|&m| -m));
    assemble(
        ring,
        -1,
        data.a.clone(),
        data.c.clone(),
        exponents,
        case2_alpha0(data),
        &data.extra,
        beta,
        CaseData::Two(data.clone()),
    )
}

/// Result of [`alpha_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaDecomposition {
    pub alpha0: RingElem,
    pub residual: RingElem,
    /// The residual is `t -> a t` invariant (case 1) or `t -> a/t`
    /// antisymmetric (case 2).
    pub residual_ok: bool,
    /// `∂h = (n alpha(a t^n) - alpha) h`.
    pub relation_ok: bool,
    /// `n alpha_0(a t^n) - alpha_0 = ∂h / h`.
    pub alpha0_ok: bool,
}

impl AlphaDecomposition {
    pub fn passed(&self) -> bool {
        self.residual_ok && self.relation_ok && self.alpha0_ok
    }
}

/// Recomputes `alpha_0` from the exponent data and checks the identities that
/// tie `alpha` to `h`.
pub fn alpha_decompose(s: &AabStructure) -> AlphaDecomposition {
    let alpha0_fn = match &s.data {
        CaseData::One(d) => case1_alpha0(d),
        CaseData::Two(d) => case2_alpha0(d),
    };
    let module = &s.module;
    let alpha = module.params().alpha();
    let alpha0 = module.elem(&alpha0_fn).expect("alpha_0 has ring poles only");
    let residual = alpha.sub(&alpha0);
    let residual_ok = match &s.data {
        CaseData::One(_) => omega_invariant_check(residual.value(), &s.a).unwrap_or(false),
        CaseData::Two(_) => antisymmetry_check(residual.value(), &s.a),
    };
    let n = s.field_n();
    let twisted = |x: &RationalFn| x.substitute(&s.a, s.n).scale(&n).sub(x);
    let log_h = s.h.value().theta().div(s.h.value()).expect("h is nonzero");
    let relation_ok = s.h.value().theta() == twisted(alpha.value()).mul(s.h.value());
    let alpha0_ok = twisted(&alpha0_fn) == log_h;
    AlphaDecomposition {
        alpha0,
        residual,
        residual_ok,
        relation_ok,
        alpha0_ok,
    }
}

impl AabStructure {
    fn field_n(&self) -> Scalar {
        self.a.field().int(self.n)
    }
}

/// Checks `Delta(L_i f) = (a^i/n) L_{ni} Delta(f)` for `|i| <= op_window`
/// over the truncated basis, plus the central equation.
pub fn verify_aab(s: &AabStructure, w: WindowSpec) -> Result<(), Counterexample> {
    let module = s.module();
    let field = module.field();
    let hom = HomSpec::phi_tau(s.n, s.a.clone()).expect("n and a are nonzero");
    check_on_window(module, w, |g: Gen, b| {
        let x = VirElement::gen(field, g);
        let lhs = s.apply(&module.act_element(&x, b));
        let rhs = module.act_element(&hom.apply(&x), &s.apply(b));
        (lhs, rhs)
    })
}

/// Checks `Delta(t^i f) = a^i t^{ni} Delta(f)` for `|i| <= i_window` over the
/// truncated basis.
pub fn lemma_delta_check(s: &AabStructure, i_window: u32, basis_bound: u32) -> Result<(), Counterexample> {
    let module = s.module();
    let w = i64::from(i_window);
    for i in -w..=w {
        for b in module.basis(basis_bound) {
            let lhs = s.apply(&b.mul_t_pow(i));
            let rhs = s.apply(&b).mul_t_pow(s.n * i).scale(&s.a.powi(i));
            if lhs != rhs {
                return Err(Counterexample {
                    i,
                    at: module.render(&b),
                    lhs: module.render(&lhs),
                    rhs: module.render(&rhs),
                });
            }
        }
    }
    Ok(())
}
