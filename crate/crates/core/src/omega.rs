//! The polynomial modules `Omega(mu, b)` on `C[t]`:
//! `L_i t^j = mu^i (t - i b)(t - i)^j`, `C t^j = 0`.

use thiserror::Error;

use crate::harness::{check_on_window, Counterexample, ModuleFamily, WindowSpec};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};
use crate::vir::{DiffOpSpec, Gen, HomSpec, VirElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaParams {
    mu: Scalar,
    b: Scalar,
}

impl OmegaParams {
    /// `None` when `mu = 0`.
    pub fn new(mu: Scalar, b: Scalar) -> Option<Self> {
        (!mu.is_zero()).then_some(OmegaParams { mu, b })
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn module(&self) -> OmegaModule {
        OmegaModule { params: self.clone() }
    }
}

/// `L_i f`, extended linearly over the monomials of `f`.
pub fn act_omega(i: i64, f: &Poly, p: &OmegaParams) -> Poly {
    let field = f.field();
    let shift = field.int(i);
    // mu^i (t - ib) f(t - i)
    let shifted = f.taylor_shift(&-&shift);
    let front = Poly::linear(&(&p.b * &shift)).scale(&p.mu.powi(i));
    front.mul(&shifted)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaModule {
    params: OmegaParams,
}

impl OmegaModule {
    pub fn params(&self) -> &OmegaParams {
        &self.params
    }
}

impl ModuleFamily for OmegaModule {
    type Vector = Poly;

    fn field(&self) -> &Field {
        self.params.mu.field()
    }

    fn act(&self, k: i64, v: &Poly) -> Poly {
        act_omega(k, v, &self.params)
    }

    fn act_central(&self, _v: &Poly) -> Poly {
        Poly::zero(self.field())
    }

    fn zero(&self) -> Poly {
        Poly::zero(self.field())
    }

    fn add(&self, x: &Poly, y: &Poly) -> Poly {
        x.add(y)
    }

    fn scale(&self, s: &Scalar, v: &Poly) -> Poly {
        v.scale(s)
    }

    /// `t^j` for `0 <= j <= bound`.
    fn basis(&self, bound: u32) -> Vec<Poly> {
        (0..=bound as usize)
            .map(|j| Poly::monomial(self.field().one(), j))
            .collect()
    }

    fn render(&self, v: &Poly) -> String {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaReject {
    #[error("RejectUnit: a*mu^(n-1) = {0} is not 1")]
    Unit(String),
    #[error("RejectZeroN: n must be nonzero")]
    ZeroN,
    #[error("RejectZeroA: a must be nonzero")]
    ZeroA,
}

impl OmegaReject {
    pub fn code(&self) -> &'static str {
        match self {
            OmegaReject::Unit(_) => "RejectUnit",
            OmegaReject::ZeroN => "RejectZeroN",
            OmegaReject::ZeroA => "RejectZeroA",
        }
    }
}

/// `Delta(t^j) = xi (t/n)^{j + extra_degree}`; valid structures have `extra_degree = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaDelta {
    module: OmegaModule,
    n: i64,
    a: Scalar,
    xi: Scalar,
    extra_degree: u32,
}

impl OmegaDelta {
    /// Skips validation. Meant for negative tests.
    pub fn unchecked(p: OmegaParams, n: i64, a: Scalar, xi: Scalar, extra_degree: u32) -> Self {
        OmegaDelta {
            module: p.module(),
            n,
            a,
            xi,
            extra_degree,
        }
    }

    pub fn module(&self) -> &OmegaModule {
        &self.module
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn diff_op(&self) -> DiffOpSpec {
        DiffOpSpec::dna(self.n, self.a.clone()).expect("n and a are nonzero")
    }

    /// `xi (t/n)^e f(t/n)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let field = f.field();
        let inv_n = field.frac(1, self.n);
        let (g, e) = f.substitute(&inv_n, 1);
        debug_assert_eq!(e, 0);
        let front = Poly::monomial(inv_n.powi(i64::from(self.extra_degree)), self.extra_degree as usize);
        g.mul(&front).scale(&self.xi)
    }

    pub fn delta(&self, f: &Poly) -> Poly {
        self.apply(f).sub(f)
    }
}

pub fn build_omega_delta(n: i64, a: Scalar, xi: Scalar, p: OmegaParams) -> Result<OmegaDelta, OmegaReject> {
    if n == 0 {
        return Err(OmegaReject::ZeroN);
    }
    if a.is_zero() {
        return Err(OmegaReject::ZeroA);
    }
    let unit = &a * &p.mu.powi(n - 1);
    if !unit.is_one() {
        return Err(OmegaReject::Unit(unit.to_string()));
    }
    Ok(OmegaDelta::unchecked(p, n, a, xi, 0))
}

/// Checks `Delta(L_i t^j) = (a^i/n) L_{ni} Delta(t^j)` for `|i| <= op_window`,
/// `0 <= j <= module_bound`, and the central equation.
pub fn verify_omega(spec: &OmegaDelta, w: WindowSpec) -> Result<(), Counterexample> {
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
