//! Family-independent verification of differential module structures.
//!
//! A [`ModuleFamily`] exposes the Virasoro action, a windowed basis and
//! rendering; the checks here only ever go through that interface.

mod report;

pub use report::{emit_report, run_check, Outcome, ReportFormat, Status, Summary, VerificationReport};

use serde::{Deserialize, Serialize};

use crate::scalar::{Field, Scalar};
use crate::vir::{DiffOpSpec, Gen, VirElement};

/// Operator window `|i| <= op_window` and the family-specific bound on the
/// module side (depth, degree, index range, basis power).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WindowSpec {
    #[serde(rename = "op")]
    pub op_window: u32,
    #[serde(rename = "bound")]
    pub module_bound: u32,
}

impl WindowSpec {
    pub fn new(op_window: u32, module_bound: u32) -> Self {
        assert!(op_window >= 1, "operator window must be positive");
        WindowSpec {
            op_window,
            module_bound,
        }
    }
}

/// A failing location with both sides rendered. Central checks use `i = 0`
/// and an `at` label starting with `C on`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub i: i64,
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i={} at {}: {} != {}", self.i, self.at, self.lhs, self.rhs)
    }
}

/// A Virasoro module with an explicit action.
pub trait ModuleFamily {
    type Vector: Clone + PartialEq;

    fn field(&self) -> &Field;
    /// `L_k v`.
    fn act(&self, k: i64, v: &Self::Vector) -> Self::Vector;
    /// `C v`.
    fn act_central(&self, v: &Self::Vector) -> Self::Vector;
    fn zero(&self) -> Self::Vector;
    fn add(&self, x: &Self::Vector, y: &Self::Vector) -> Self::Vector;
    fn scale(&self, s: &Scalar, v: &Self::Vector) -> Self::Vector;
    /// Deterministically ordered basis vectors within `bound`.
    fn basis(&self, bound: u32) -> Vec<Self::Vector>;
    fn render(&self, v: &Self::Vector) -> String;

    /// Action of an arbitrary algebra element.
    fn act_element(&self, x: &VirElement, v: &Self::Vector) -> Self::Vector {
        x.terms().fold(self.zero(), |acc, (g, c)| {
            let image = match g {
                Gen::L(k) => self.act(k, v),
                Gen::C => self.act_central(v),
            };
            self.add(&acc, &self.scale(c, &image))
        })
    }

    fn sub(&self, x: &Self::Vector, y: &Self::Vector) -> Self::Vector {
        self.add(x, &self.scale(&self.field().int(-1), y))
    }
}

/// Checks `lhs(x, b) == rhs(x, b)` for `x = L_i` (`|i| <= op_window`) and
/// then `x = C`, over the basis within `module_bound`. Returns the first
/// failure in `(i, basis index)` order.
pub fn check_on_window<M: ModuleFamily>(
    family: &M,
    w: WindowSpec,
    sides: impl Fn(Gen, &M::Vector) -> (M::Vector, M::Vector),
) -> Result<(), Counterexample> {
    let basis = family.basis(w.module_bound);
    let ow = i64::from(w.op_window);
    let gens = (-ow..=ow).map(Gen::L).chain(std::iter::once(Gen::C));
    for g in gens {
        for b in &basis {
            let (lhs, rhs) = sides(g, b);
            if lhs != rhs {
                let (i, at) = match g {
                    Gen::L(i) => (i, family.render(b)),
                    Gen::C => (0, format!("C on {}", family.render(b))),
                };
                return Err(Counterexample {
                    i,
                    at,
                    lhs: family.render(&lhs),
                    rhs: family.render(&rhs),
                });
            }
        }
    }
    Ok(())
}

/// Verifies `delta(x v) = d(x) v + x delta(v) + lambda d(x) delta(v)`.
///
/// For nonzero `lambda` this is checked in the product form
/// `Delta_l(x v) = D_l(x) Delta_l(v)` with `Delta_l = lambda delta + id` and
/// `D_l = lambda d + id`; for `lambda = 0` the defining identity is checked
/// directly.
pub fn verify_lambda_module<M: ModuleFamily>(
    family: &M,
    d: &dyn Fn(&VirElement) -> VirElement,
    lambda: &Scalar,
    delta: &dyn Fn(&M::Vector) -> M::Vector,
    w: WindowSpec,
) -> Result<(), Counterexample> {
    let field = family.field();
    if lambda.is_zero() {
        return verify_definition(family, d, lambda, delta, w);
    }
    let big_delta = |v: &M::Vector| family.add(&family.scale(lambda, &delta(v)), v);
    check_on_window(family, w, |g, b| {
        let x = VirElement::gen(field, g);
        let xb = family.act_element(&x, b);
        let big_d = d(&x).scale(lambda).add(&x);
        (big_delta(&xb), family.act_element(&big_d, &big_delta(b)))
    })
}

/// The defining identity, without rewriting into product form.
pub fn verify_definition<M: ModuleFamily>(
    family: &M,
    d: &dyn Fn(&VirElement) -> VirElement,
    lambda: &Scalar,
    delta: &dyn Fn(&M::Vector) -> M::Vector,
    w: WindowSpec,
) -> Result<(), Counterexample> {
    let field = family.field();
    check_on_window(family, w, |g, b| {
        let x = VirElement::gen(field, g);
        let dx = d(&x);
        let db = delta(b);
        let lhs = delta(&family.act_element(&x, b));
        let rhs = family.add(
            &family.add(&family.act_element(&dx, b), &family.act_element(&x, &db)),
            &family.scale(lambda, &family.act_element(&dx, &db)),
        );
        (lhs, rhs)
    })
}

/// [`verify_lambda_module`] for an operator `d = lambda^-1 (Phi - id)`.
pub fn verify_diff_module<M: ModuleFamily>(
    family: &M,
    d: &DiffOpSpec,
    delta: &dyn Fn(&M::Vector) -> M::Vector,
    w: WindowSpec,
) -> Result<(), Counterexample> {
    verify_lambda_module(family, &|x| d.apply(x), &d.lambda, delta, w)
}

/// Checks `delta(x v) = -x v` for the `d_{0,0}` structure.
pub fn verify_d00<M: ModuleFamily>(
    family: &M,
    delta: &dyn Fn(&M::Vector) -> M::Vector,
    w: WindowSpec,
) -> Result<(), Counterexample> {
    let field = family.field();
    let minus_one = field.int(-1);
    check_on_window(family, w, |g, b| {
        let xb = family.act_element(&VirElement::gen(field, g), b);
        (delta(&xb), family.scale(&minus_one, &xb))
    })
}

/// Checks the module relation `L_i L_j v - L_j L_i v = [L_i, L_j] v` for
/// `|i|, |j| <= op_window` over the basis within `module_bound`.
pub fn check_module_relation<M: ModuleFamily>(family: &M, w: WindowSpec) -> Result<(), Counterexample> {
    let field = family.field();
    let basis = family.basis(w.module_bound);
    let ow = i64::from(w.op_window);
    for i in -ow..=ow {
        for j in -ow..=ow {
            let br = crate::vir::bracket(&VirElement::l(field, i), &VirElement::l(field, j));
            for b in &basis {
                let lhs = family.sub(&family.act(i, &family.act(j, b)), &family.act(j, &family.act(i, b)));
                let rhs = family.act_element(&br, b);
                if lhs != rhs {
                    return Err(Counterexample {
                        i,
                        at: format!("L[{j}] on {}", family.render(b)),
                        lhs: family.render(&lhs),
                        rhs: family.render(&rhs),
                    });
                }
            }
        }
    }
    Ok(())
}
