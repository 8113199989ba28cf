//! Verma modules `M(h, c)` over the Virasoro algebra.
//!
//! Vectors are kept in the PBW basis `L_{-i_1} ... L_{-i_m} v0` with
//! `i_1 >= ... >= i_m >= 1`. Arbitrary `L_k` act by straightening, using the
//! bracket `[L_m, L_n] = (n - m) L_{m+n} + ...`. That sign convention is the
//! one used throughout the crate; do not flip it here.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use thiserror::Error;

use crate::harness::{check_on_window, Counterexample, ModuleFamily, WindowSpec};
use crate::render::write_sum;
use crate::scalar::{Field, Matrix, Scalar};
use crate::vir::{central_charge_coeff, DiffOpSpec, Gen, HomSpec, VirElement};

/// `L_{-parts[0]} ... L_{-parts[m-1]} v0`, parts non-increasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PBWMonomial {
    parts: Vec<u32>,
}

impl PBWMonomial {
    pub fn vacuum() -> Self {
        PBWMonomial { parts: Vec::new() }
    }

    /// Sorts the parts into canonical order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(PBWMonomial { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn depth(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Depth first, then larger leading parts first: `L[-2]v0` precedes
/// `L[-1]L[-1]v0`.
impl Ord for PBWMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.depth()
            .cmp(&other.depth())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            write!(f, "L[-{p}]")?;
        }
        f.write_str("v0")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct VermaVector {
    field: Field,
    terms: BTreeMap<PBWMonomial, Scalar>,
}

impl VermaVector {
    pub fn zero(field: &Field) -> Self {
        VermaVector {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(field: &Field) -> Self {
        VermaVector::monomial(PBWMonomial::vacuum(), field.one())
    }

    pub fn monomial(m: PBWMonomial, coeff: Scalar) -> Self {
        let mut v = VermaVector::zero(coeff.field());
        v.add_term(m, coeff);
        v
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: PBWMonomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VermaVector) -> VermaVector {
        self.add(&other.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> VermaVector {
        if s.is_zero() {
            return VermaVector::zero(&self.field);
        }
        VermaVector {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// The common depth of all terms, if the vector is homogeneous and nonzero.
    pub fn homogeneous_depth(&self) -> Option<u64> {
        let mut depths = self.terms.keys().map(PBWMonomial::depth);
        let d = depths.next()?;
        depths.all(|e| e == d).then_some(d)
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(m, c)| (c, m.to_string())))
    }
}

impl fmt::Debug for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    pub h: Scalar,
    pub c: Scalar,
}

impl HighestWeight {
    pub fn new(h: Scalar, c: Scalar) -> Self {
        HighestWeight { h, c }
    }
}

/// All partitions of `depth`, largest leading part first.
pub fn weight_space_basis(depth: u32) -> Vec<PBWMonomial> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<PBWMonomial>) {
        if rest == 0 {
            out.push(PBWMonomial { parts: prefix.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(depth, depth, &mut Vec::new(), &mut out);
    out
}

/// `M(h, c)` with a cache of straightened products `L_k m`.
pub struct VermaModule {
    field: Field,
    hw: HighestWeight,
    cache: Mutex<HashMap<(i64, PBWMonomial), VermaVector>>,
}

impl Clone for VermaModule {
    fn clone(&self) -> Self {
        VermaModule::new(self.hw.clone())
    }
}

impl fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, {})", self.hw.h, self.hw.c)
    }
}

impl VermaModule {
    pub fn new(hw: HighestWeight) -> Self {
        VermaModule {
            field: hw.h.field().clone(),
            hw,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn highest_weight(&self) -> &HighestWeight {
        &self.hw
    }

    /// `L_k m` for a single PBW monomial.
    pub fn act_monomial(&self, k: i64, m: &PBWMonomial) -> VermaVector {
        let key = (k, m.clone());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.straighten(k, m);
        self.cache.lock().unwrap().insert(key, v.clone());
        v
    }

    fn straighten(&self, k: i64, m: &PBWMonomial) -> VermaVector {
        let field = &self.field;
        let Some((&first, rest)) = m.parts.split_first() else {
            return match k.cmp(&0) {
                Ordering::Greater => VermaVector::zero(field),
                Ordering::Equal => VermaVector::monomial(m.clone(), self.hw.h.clone()),
                Ordering::Less => VermaVector::monomial(
                    PBWMonomial {
                        parts: vec![k.unsigned_abs() as u32],
                    },
                    field.one(),
                ),
            };
        };
        if k < 0 && k.unsigned_abs() >= u64::from(first) {
            let mut parts = Vec::with_capacity(m.parts.len() + 1);
            parts.push(k.unsigned_abs() as u32);
            parts.extend_from_slice(&m.parts);
            return VermaVector::monomial(PBWMonomial { parts }, field.one());
        }
        // L_k L_{-j} r = L_{-j} (L_k r) + [L_k, L_{-j}] r
        let j = i64::from(first);
        let rest = PBWMonomial { parts: rest.to_vec() };
        let inner = self.act_monomial(k, &rest);
        let mut out = self.act(-j, &inner);
        let comm = self.act_monomial(k - j, &rest).scale(&field.int(-j - k));
        out = out.add(&comm);
        if k == j {
            let central = field.rational(central_charge_coeff(k)) * &self.hw.c;
            out = out.add(&VermaVector::monomial(rest, central));
        }
        out
    }

    pub fn act(&self, k: i64, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero(&self.field);
        for (m, c) in v.terms() {
            for (m2, c2) in self.act_monomial(k, m).terms() {
                out.add_term(m2.clone(), c * c2);
            }
        }
        out
    }

    /// `C v = c v`.
    pub fn act_c(&self, v: &VermaVector) -> VermaVector {
        v.scale(&self.hw.c)
    }

    /// Applies the word `L_{k_1} ... L_{k_r}` (rightmost first).
    pub fn act_word(&self, word: &[i64], v: &VermaVector) -> VermaVector {
        word.iter().rev().fold(v.clone(), |acc, &k| self.act(k, &acc))
    }

    /// A basis of the `n`-singular vectors in `M_{-depth}`: the common kernel
    /// of `L_{ni}` for `1 <= ni <= depth`. Higher modes vanish on `M_{-depth}`
    /// for degree reasons.
    pub fn find_n_singular(&self, n: u32, depth: u32) -> Vec<VermaVector> {
        assert!(n >= 1, "n must be positive");
        let basis = weight_space_basis(depth);
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for i in 1..=depth / n {
            let k = i64::from(n * i);
            let target = weight_space_basis(depth - n * i);
            let images: Vec<VermaVector> = basis.iter().map(|m| self.act_monomial(k, m)).collect();
            for t in &target {
                rows.push(images.iter().map(|img| img.coeff(t)).collect());
            }
        }
        let kernel = if rows.is_empty() {
            (0..basis.len())
                .map(|i| {
                    let mut e = vec![self.field.zero(); basis.len()];
                    e[i] = self.field.one();
                    e
                })
                .collect()
        } else {
            Matrix::from_rows(&self.field, rows)
                .expect("rows have equal length")
                .kernel()
        };
        kernel
            .into_iter()
            .map(|coeffs| {
                let mut v = VermaVector::zero(&self.field);
                for (m, c) in basis.iter().zip(coeffs) {
                    v.add_term(m.clone(), c);
                }
                v
            })
            .collect()
    }

    /// Whether `L_{ni} v = 0` for every `i >= 1` (checked up to the top depth of `v`).
    pub fn is_n_singular(&self, n: u32, v: &VermaVector) -> bool {
        let top = v.terms().map(|(m, _)| m.depth()).max().unwrap_or(0);
        (1..)
            .map(|i| u64::from(n) * i)
            .take_while(|&k| k <= top)
            .all(|k| self.act(k as i64, v).is_zero())
    }
}

impl ModuleFamily for VermaModule {
    type Vector = VermaVector;

    fn field(&self) -> &Field {
        &self.field
    }

    fn act(&self, k: i64, v: &VermaVector) -> VermaVector {
        VermaModule::act(self, k, v)
    }

    fn act_central(&self, v: &VermaVector) -> VermaVector {
        self.act_c(v)
    }

    fn zero(&self) -> VermaVector {
        VermaVector::zero(&self.field)
    }

    fn add(&self, x: &VermaVector, y: &VermaVector) -> VermaVector {
        x.add(y)
    }

    fn scale(&self, s: &Scalar, v: &VermaVector) -> VermaVector {
        v.scale(s)
    }

    /// Every PBW monomial of depth at most `bound`.
    fn basis(&self, bound: u32) -> Vec<VermaVector> {
        (0..=bound)
            .flat_map(weight_space_basis)
            .map(|m| VermaVector::monomial(m, self.field.one()))
            .collect()
    }

    fn render(&self, v: &VermaVector) -> String {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VermaReject {
    #[error("RejectNegativeN: n = {0} is not positive")]
    NegativeN(i64),
    #[error("RejectZeroA: a must be nonzero")]
    ZeroA,
    #[error("RejectCentral: (n-1)c = {0} is nonzero")]
    Central(String),
    #[error("RejectWeight: (1-n)h = {0} is not a nonnegative integer")]
    Weight(String),
    #[error("RejectNotSingular: {0}")]
    NotSingular(String),
}

impl VermaReject {
    pub fn code(&self) -> &'static str {
        match self {
            VermaReject::NegativeN(_) => "RejectNegativeN",
            VermaReject::ZeroA => "RejectZeroA",
            VermaReject::Central(_) => "RejectCentral",
            VermaReject::Weight(_) => "RejectWeight",
            VermaReject::NotSingular(_) => "RejectNotSingular",
        }
    }
}

/// `Delta(L_{-p_1} ... L_{-p_m} v0) = a^{-sum p} / n^m L_{-np_1} ... L_{-np_m} u`.
#[derive(Clone, Debug)]
pub struct VermaDelta {
    module: VermaModule,
    n: i64,
    a: Scalar,
    u: VermaVector,
}

impl VermaDelta {
    /// Skips every validation. Meant for negative tests.
    pub fn unchecked(module: VermaModule, n: i64, a: Scalar, u: VermaVector) -> Self {
        VermaDelta { module, n, a, u }
    }

    pub fn module(&self) -> &VermaModule {
        &self.module
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn u(&self) -> &VermaVector {
        &self.u
    }

    pub fn diff_op(&self) -> DiffOpSpec {
        DiffOpSpec::dna(self.n, self.a.clone()).expect("n and a are nonzero")
    }

    pub fn apply_monomial(&self, m: &PBWMonomial) -> VermaVector {
        let field = self.module.field();
        let word: Vec<i64> = m.parts().iter().map(|&p| -self.n * i64::from(p)).collect();
        let coeff = self.a.powi(-(m.depth() as i64)) * field.frac(1, self.n.pow(m.len() as u32));
        self.module.act_word(&word, &self.u).scale(&coeff)
    }

    /// `Delta` extended linearly.
    pub fn apply(&self, v: &VermaVector) -> VermaVector {
        v.terms().fold(VermaVector::zero(self.module.field()), |acc, (m, c)| {
            acc.add(&self.apply_monomial(m).scale(c))
        })
    }

    /// `delta = Delta - id`.
    pub fn delta(&self, v: &VermaVector) -> VermaVector {
        self.apply(v).sub(v)
    }
}

/// Validates the data of a Verma differential structure.
pub fn build_verma_delta(n: i64, a: Scalar, hw: HighestWeight, u: VermaVector) -> Result<VermaDelta, VermaReject> {
    if n <= 0 {
        return Err(VermaReject::NegativeN(n));
    }
    if a.is_zero() {
        return Err(VermaReject::ZeroA);
    }
    let field = hw.h.field().clone();
    let central = &hw.c * &field.int(n - 1);
    if !central.is_zero() {
        return Err(VermaReject::Central(central.to_string()));
    }
    let weight = &hw.h * &field.int(1 - n);
    let depth = match weight.as_i64() {
        Some(d) if d >= 0 => d as u64,
        _ => return Err(VermaReject::Weight(weight.to_string())),
    };
    if u.is_zero() {
        return Err(VermaReject::NotSingular("u is zero".into()));
    }
    if u.homogeneous_depth() != Some(depth) {
        return Err(VermaReject::NotSingular(format!(
            "u = {u} does not lie in M_{{-{depth}}}"
        )));
    }
    let module = VermaModule::new(hw);
    if !module.is_n_singular(n as u32, &u) {
        return Err(VermaReject::NotSingular(format!("u = {u} is not {n}-singular")));
    }
    Ok(VermaDelta { module, n, a, u })
}

/// Checks `Delta(x m) = phi_n tau_a(x) Delta(m)` for `x = L_i`, `|i| <= op_window`,
/// and `x = C`, over monomials of depth at most `module_bound`.
pub fn verify_verma(spec: &VermaDelta, w: WindowSpec) -> Result<(), Counterexample> {
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
