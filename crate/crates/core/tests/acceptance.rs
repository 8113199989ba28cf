//! The ten acceptance criteria, each at the stated scale with exact
//! equality. Run with `--nocapture` to see one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRunner};

use virdiff::aab::{
    alpha_decompose, build_case1, build_case2, lemma_delta_check, verify_aab, Case1Data, Case2Data, CaseData,
};
use virdiff::config::{parse_aab_config, ConfigError};
use virdiff::harness::{check_module_relation, verify_d00, WindowSpec};
use virdiff::intseries::{build_int_delta, verify_int, IntDelta, IntSeriesParams, IntSeriesVector};
use virdiff::omega::{build_omega_delta, verify_omega, OmegaDelta, OmegaParams};
use virdiff::parse::{parse_intseries, parse_poly, parse_rational, parse_scalar, parse_verma, parse_vir};
use virdiff::poly::{
    antisymmetric_form, antisymmetry_check, log_derivative_match, omega_invariant_check, omega_invariant_generator,
    ring_membership, LocalizedRing, Poly, RationalFn,
};
use virdiff::scalar::{Field, Rational, Scalar};
use virdiff::verma::{build_verma_delta, verify_verma, HighestWeight, PBWMonomial, VermaModule, VermaVector};
use virdiff::vir::{
    bracket, check_antisymmetry, check_diff_identity, check_gradation, check_homomorphism, check_jacobi,
    check_lambda_identity, compose_check, phi_tau_gen, DiffOpSpec, Gen, VirElement,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q() -> Field {
    Field::rationals()
}

fn z3() -> Field {
    Field::new(3).unwrap()
}

fn lie_suite() -> Check {
    let f = q();
    check_antisymmetry(&f, 8).map_err(|e| format!("antisymmetry {e}"))?;
    check_jacobi(&f, 8).map_err(|e| format!("jacobi at {:?}: {}", e.triple, e.value))?;
    check_gradation(&f, 12).map_err(|e| format!("gradation at {e:?}"))
}

/// The operators of the classification suite, all over `Q(z_3)` so that
/// `z_3` can appear next to rational parameters.
fn classification_specs() -> Vec<(String, DiffOpSpec)> {
    let f = z3();
    let mut v: Vec<(String, DiffOpSpec)> = [
        (1, f.int(2)),
        (-1, f.int(3)),
        (2, f.int(5)),
        (-2, f.frac(1, 2)),
        (3, f.zeta()),
    ]
    .into_iter()
    .map(|(n, a)| (format!("d_{{{n},{a}}}"), DiffOpSpec::dna(n, a).unwrap()))
    .collect();
    v.push(("d_{0,0}".into(), DiffOpSpec::d00(&f)));
    v
}

/// `phi_2` without the central correction.
fn broken_phi2(f: &Field) -> impl Fn(&VirElement) -> VirElement + '_ {
    move |x: &VirElement| x.map_linear(|g| phi_tau_gen(f, 2, &f.one(), g, false))
}

fn classification_suite() -> Check {
    for (name, d) in classification_specs() {
        check_diff_identity(&d, 12).map_err(|e| format!("{name}: {e}"))?;
    }
    let f = z3();
    let params = [f.int(2), f.frac(1, 3), f.zeta()];
    for m in [1, -1, 2, -2, 3] {
        for n in [1, -1, 2, -2, 3] {
            for a in &params {
                for b in &params {
                    compose_check(m, n, a, b, 12)
                        .map_err(|e| format!("compose m={m} n={n} a={a} b={b}: {} at {}", e.law, e.at))?;
                }
            }
        }
    }
    let broken = broken_phi2(&f);
    let op = |x: &VirElement| broken(x).sub(x);
    ensure(
        check_lambda_identity(&f, op, &f.one(), 12).is_err(),
        "mutated operator passed",
    )?;
    // The pair (L_2, L_-2) carries the dropped central term.
    let (x, y) = (VirElement::l(&f, 2), VirElement::l(&f, -2));
    let lhs = op(&bracket(&x, &y));
    let rhs = bracket(&op(&x), &y)
        .add(&bracket(&x, &op(&y)))
        .add(&bracket(&op(&x), &op(&y)));
    ensure(lhs != rhs, "mutated operator satisfies the identity at (2, -2)")
}

fn equivalence_suite() -> Check {
    let f = z3();
    let lambdas = [f.int(2), f.frac(1, 3)];
    let verdicts =
        |name: &str, op: &dyn Fn(&VirElement) -> VirElement, hom: &dyn Fn(&VirElement) -> VirElement| -> Check {
            let diff = check_lambda_identity(&f, op, &f.one(), 12).is_ok();
            let homo = virdiff::vir::check_homomorphism_map(&f, hom, 12).is_ok();
            ensure(
                diff == homo,
                format!("{name}: diff verdict {diff}, homomorphism verdict {homo}"),
            )?;
            for l in &lambdas {
                let inv = l.inverse().unwrap();
                let scaled = check_lambda_identity(&f, |x| op(x).scale(&inv), l, 12).is_ok();
                ensure(
                    scaled == diff,
                    format!("{name}: lambda={l} verdict {scaled}, lambda=1 verdict {diff}"),
                )?;
            }
            Ok(())
        };
    for (name, d) in classification_specs() {
        verdicts(&name, &|x| d.apply(x), &|x| d.hom.apply(x))?;
        ensure(
            check_homomorphism(&d.hom, &f, 12).is_ok(),
            format!("{name}: homomorphism"),
        )?;
    }
    let broken = broken_phi2(&f);
    verdicts("mutated", &|x| broken(x).sub(x), &broken)
}

fn verma_suite() -> Check {
    let f = q();
    let w = WindowSpec::new(6, 5);
    let l1 = |m: &VermaModule| parse_verma("L[-1]v0", m).unwrap();
    let specs: [(i64, i64, Scalar, Scalar, bool); 3] = [
        (1, 2, f.frac(5, 7), f.int(3), false),
        (2, 3, f.zero(), f.zero(), false),
        (2, 3, f.int(-1), f.zero(), true),
    ];
    for (n, a, h, c, use_l1) in specs {
        let hw = HighestWeight::new(h.clone(), c);
        let m = VermaModule::new(hw.clone());
        let u = if use_l1 { l1(&m) } else { VermaVector::vacuum(&f) };
        let spec = build_verma_delta(n, f.int(a), hw, u).map_err(|e| format!("n={n} h={h}: {e}"))?;
        verify_verma(&spec, w).map_err(|e| format!("n={n} h={h}: {e}"))?;
    }
    let rejects = [
        (-1, HighestWeight::new(f.zero(), f.zero()), None, "RejectNegativeN"),
        (2, HighestWeight::new(f.zero(), f.one()), None, "RejectCentral"),
        (2, HighestWeight::new(f.frac(1, 2), f.zero()), None, "RejectWeight"),
        (
            1,
            HighestWeight::new(f.frac(5, 7), f.int(3)),
            Some("L[-1]v0"),
            "RejectNotSingular",
        ),
    ];
    for (n, hw, u, code) in rejects {
        let m = VermaModule::new(hw.clone());
        let u = u.map_or_else(|| VermaVector::vacuum(&f), |s| parse_verma(s, &m).unwrap());
        match build_verma_delta(n, f.int(2), hw, u) {
            Err(e) if e.code() == code => {}
            other => {
                return Err(format!(
                    "expected {code}, got {:?}",
                    other.map(|_| ()).map_err(|e| e.code())
                ))
            }
        }
    }
    for hw in [
        HighestWeight::new(f.frac(5, 7), f.int(3)),
        HighestWeight::new(f.int(-1), f.zero()),
    ] {
        check_module_relation(&VermaModule::new(hw), w).map_err(|e| format!("confluence: {e}"))?;
    }
    Ok(())
}

fn intermediate_suite() -> Check {
    let f = q();
    let w = WindowSpec::new(8, 8);
    let specs = [
        (2, f.int(3), f.one(), f.zero(), f.zero()),
        (1, f.int(5), f.int(2), f.frac(1, 2), f.one()),
        (4, f.int(2), f.one(), f.frac(1, 3), f.zero()),
    ];
    for (n, a, xi, alpha, beta) in specs {
        let p = IntSeriesParams::new(alpha, beta);
        let spec = build_int_delta(n, a, xi.clone(), p.clone()).map_err(|e| format!("{p:?}: {e}"))?;
        verify_int(&spec, w).map_err(|e| format!("n={n}: {e}"))?;
    }
    let rej = build_int_delta(2, f.int(3), f.one(), IntSeriesParams::new(f.frac(1, 2), f.zero()));
    ensure(
        rej.is_err_and(|e| e.code() == "RejectAlpha"),
        "alpha = 1/2 with n = 2 was accepted",
    )?;
    let shifted = IntDelta::unchecked(IntSeriesParams::new(f.zero(), f.zero()), 2, f.int(3), f.one(), 1);
    ensure(verify_int(&shifted, w).is_err(), "weight-shift mutation passed")
}

fn omega_suite() -> Check {
    let (f, z) = (q(), z3());
    let w = WindowSpec::new(6, 8);
    let specs = [
        (2, f.frac(1, 2), f.int(2), f.int(3)),
        (1, f.one(), f.int(7), f.frac(1, 3)),
        (4, z.one(), z.zeta(), z.frac(1, 2)),
    ];
    for (n, a, mu, b) in specs {
        let xi = mu.field().int(2);
        let spec = build_omega_delta(n, a, xi, OmegaParams::new(mu.clone(), b).unwrap())
            .map_err(|e| format!("mu={mu}: {e}"))?;
        verify_omega(&spec, w).map_err(|e| format!("n={n} mu={mu}: {e}"))?;
    }
    let rej = build_omega_delta(2, f.one(), f.one(), OmegaParams::new(f.int(2), f.int(3)).unwrap());
    ensure(
        rej.is_err_and(|e| e.code() == "RejectUnit"),
        "a*mu^(n-1) != 1 was accepted",
    )?;
    let bad = OmegaDelta::unchecked(
        OmegaParams::new(f.int(2), f.int(3)).unwrap(),
        2,
        f.frac(1, 2),
        f.one(),
        1,
    );
    ensure(verify_omega(&bad, w).is_err(), "degree mutation passed")
}

fn case1() -> Case1Data {
    let f = q();
    Case1Data {
        d: 2,
        a: f.int(-1),
        base_poles: vec![f.one()],
        m: vec![vec![1, -1]],
        c: f.one(),
        extra: RationalFn::zero(&f),
    }
}

fn case2() -> Case2Data {
    let f = q();
    Case2Data {
        a: f.one(),
        base_poles: vec![f.int(2)],
        m0: 0,
        m: vec![1],
        c: f.one(),
        extra: RationalFn::zero(&f),
    }
}

fn aab_suite() -> Check {
    let f = q();
    let w = WindowSpec::new(5, 2);
    for beta in [f.zero(), f.one(), f.frac(2, 3)] {
        for (case, built) in [
            ("case 1", build_case1(&case1(), beta.clone())),
            ("case 2", build_case2(&case2(), beta.clone())),
        ] {
            let s = built.map_err(|e| format!("{case} beta={beta}: {e}"))?;
            verify_aab(&s, w).map_err(|e| format!("{case} beta={beta}: {e}"))?;
            let dec = alpha_decompose(&s);
            ensure(dec.passed(), format!("{case} beta={beta}: alpha decomposition {dec:?}"))?;
            lemma_delta_check(&s, w.op_window, w.module_bound).map_err(|e| format!("{case} lemma: {e}"))?;
            if case == "case 2" {
                let h = s.h().value();
                let hh = h.mul(&h.substitute(s.a(), -1));
                ensure(hh.is_constant() && !hh.is_zero(), format!("h(t)h(a/t) = {hh}"))?;
            }
        }
    }
    let s = build_case1(&case1(), f.zero()).unwrap();
    let bad_h = RationalFn::linear_power(&f.int(-1), 2).mul(&RationalFn::linear_power(&f.one(), -1));
    let bad = s.with_h_unchecked(&bad_h).map_err(|e| e.to_string())?;
    ensure(verify_aab(&bad, w).is_err(), "mutated h passed")?;
    let row = parse_aab_config("[case1]\nd=2\na=-1\npoles=1\nm=1,0\nc=1", &f);
    ensure(
        matches!(row, Err(ConfigError::RowSumNonzero { .. })),
        "row-sum config accepted",
    )?;
    let cfg = parse_aab_config("[case1]\nd=2\na=1\npoles=1\nm=1,-1\nc=1", &f).map_err(|e| e.to_string())?;
    let CaseData::One(data) = cfg.case else {
        return Err("expected case 1".into());
    };
    ensure(
        build_case1(&data, f.zero()).is_err_and(|e| e.code() == "RejectNotPrimitive"),
        "non-primitive a accepted",
    )
}

/// Deterministic samples from a strategy.
fn samples<S: Strategy>(s: S, count: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..count).map(|_| s.new_tree(&mut runner).unwrap().current()).collect()
}

fn lemma_suite() -> Check {
    let f = q();
    let poles = [f.one(), f.int(-2), f.int(3), f.frac(1, 2)];
    let ring = LocalizedRing::new(&f, poles.to_vec()).map_err(|e| e.to_string())?;
    for exps in samples(prop::collection::vec(-3i64..=3, 5), 20) {
        let mut h = RationalFn::laurent_monomial(f.one(), exps[0]);
        for (a, m) in poles.iter().zip(&exps[1..]) {
            h = h.mul(&RationalFn::linear_power(a, *m));
        }
        let g = ring_membership(&h.theta().div(&h).unwrap(), &ring).map_err(|e| e.to_string())?;
        ensure(
            log_derivative_match(&g).as_deref() == Some(&exps[..]),
            format!("exponents {exps:?}"),
        )?;
    }

    let z = z3();
    for (omega, b, d) in [(f.int(-1), f.one(), 2u32), (z.zeta(), z.int(2), 3)] {
        for k in 1..=3 {
            let g = omega_invariant_generator(&b, &omega, d, k);
            ensure(
                omega_invariant_check(&g, &omega) == Ok(true),
                format!("generator d={d} k={k}"),
            )?;
        }
        for k in (-4i64..=5).filter(|k| k % i64::from(d) != 0) {
            let tk = RationalFn::laurent_monomial(omega.field().one(), k);
            ensure(
                omega_invariant_check(&tk, &omega) == Ok(false),
                format!("t^{k} accepted for d={d}"),
            )?;
        }
    }

    let nonzero = (1i64..=5, prop::bool::ANY, 1i64..=3).prop_map(|(p, s, q)| (if s { p } else { -p }, q));
    let instance = (0i64..=2, 0usize..=2, nonzero.clone()).prop_flat_map(move |(k, l, w)| {
        (
            Just(k),
            prop::collection::vec(nonzero.clone(), l),
            prop::collection::vec(nonzero.clone(), l + k as usize + 1),
            Just(w),
        )
    });
    for (k, ls, ms, w) in samples(instance, 10) {
        let s = |(p, q): (i64, i64)| f.frac(p, q);
        let omega = s(w);
        let lambdas: Vec<Scalar> = ls.into_iter().map(s).collect();
        let mus: Vec<Scalar> = ms.into_iter().map(s).collect();
        let g = antisymmetric_form(k, &lambdas, &mus, &omega);
        ensure(
            antisymmetry_check(&g, &omega),
            format!("antisymmetric form k={k} w={omega} rejected"),
        )?;
        for c in [1, -3] {
            ensure(
                !antisymmetry_check(&RationalFn::constant(f.int(c)), &omega),
                "nonzero constant accepted",
            )?;
        }
    }
    Ok(())
}

fn d00_suite() -> Check {
    let f = q();
    let neg = f.int(-1);
    let w = WindowSpec::new(4, 4);
    let verma = VermaModule::new(HighestWeight::new(f.frac(5, 7), f.int(3)));
    verify_d00(&verma, &|v: &VermaVector| v.scale(&neg), w).map_err(|e| format!("verma: {e}"))?;
    let int = IntSeriesParams::new(f.frac(1, 2), f.zero()).module();
    verify_d00(&int, &|v: &IntSeriesVector| v.scale(&neg), w).map_err(|e| format!("intermediate: {e}"))?;
    let om = OmegaParams::new(f.int(2), f.int(3)).unwrap().module();
    verify_d00(&om, &|p: &Poly| p.scale(&neg), w).map_err(|e| format!("omega: {e}"))?;
    let s = build_case1(&case1(), f.one()).unwrap();
    verify_d00(s.module(), &|x| x.scale(&neg), WindowSpec::new(3, 2)).map_err(|e| format!("aab: {e}"))?;

    // With h = c = 0 nothing in the image of the action has a v0 component,
    // so delta(v0) is unconstrained.
    let free = VermaModule::new(HighestWeight::new(f.zero(), f.zero()));
    let zeta = f.frac(7, 3);
    let vac = PBWMonomial::vacuum();
    let delta = |v: &VermaVector| {
        let mut out = v.scale(&neg);
        out.add_term(vac.clone(), &v.coeff(&vac) * &(&zeta + &f.one()));
        out
    };
    verify_d00(&free, &delta, w).map_err(|e| format!("free at v0: {e}"))?;

    let bumped = |x: &IntSeriesVector| x.scale(&neg).add(&IntSeriesVector::basis(0, x.coeff(0)));
    ensure(
        verify_d00(&int, &bumped, w).is_err(),
        "bumped intermediate-series delta passed",
    )
}

fn round_trips() -> Check {
    let (f, z) = (q(), z3());
    let rat = |field: Field| {
        let deg = field.degree();
        prop::collection::vec((-9i64..=9, 1i64..=6), deg).prop_map(move |cs| {
            field.from_coeffs(cs.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect())
        })
    };
    let mut runner = TestRunner::new(Config {
        cases: 200,
        failure_persistence: None,
        ..Config::default()
    });
    let go = |name: &str, r: Result<(), proptest::test_runner::TestError<String>>| -> Check {
        r.map_err(|e| format!("{name}: {e}"))
    };

    go(
        "scalar",
        runner
            .run(&rat(z.clone()), |s| {
                prop_assert_eq!(parse_scalar(&s.to_string(), &z).unwrap(), s);
                Ok(())
            })
            .map_err(map_err),
    )?;

    let gen = prop_oneof![(-8i64..=8).prop_map(Gen::L), Just(Gen::C)];
    go(
        "algebra",
        runner
            .run(&prop::collection::vec((gen, rat(z.clone())), 0..5), |ts| {
                let mut x = VirElement::zero(&z);
                for (g, c) in ts {
                    x.add_term(g, c);
                }
                prop_assert_eq!(parse_vir(&x.to_string(), &z).unwrap(), x);
                Ok(())
            })
            .map_err(map_err),
    )?;

    let module = VermaModule::new(HighestWeight::new(z.frac(1, 2), z.int(1)));
    let terms = prop::collection::vec((prop::collection::vec(1u32..=4, 0..4), rat(z.clone())), 0..5);
    go(
        "verma",
        runner
            .run(&terms, |ts| {
                let mut v = VermaVector::zero(&z);
                for (parts, c) in ts {
                    v.add_term(PBWMonomial::new(parts).unwrap(), c);
                }
                prop_assert_eq!(parse_verma(&v.to_string(), &module).unwrap(), v);
                Ok(())
            })
            .map_err(map_err),
    )?;

    go(
        "intseries",
        runner
            .run(&prop::collection::vec((-6i64..=6, rat(f.clone())), 0..5), |ts| {
                let mut v = IntSeriesVector::zero(&f);
                for (j, c) in ts {
                    v.add_term(j, c);
                }
                prop_assert_eq!(parse_intseries(&v.to_string(), &f).unwrap(), v);
                Ok(())
            })
            .map_err(map_err),
    )?;

    go(
        "poly",
        runner
            .run(&prop::collection::vec(rat(z.clone()), 0..5), |cs| {
                let p = Poly::from_coeffs(&z, cs);
                prop_assert_eq!(parse_poly(&p.to_string(), &z).unwrap(), p);
                Ok(())
            })
            .map_err(map_err),
    )?;

    let rf = (
        prop::collection::vec(rat(f.clone()), 0..4),
        prop::collection::vec(-4i64..=4, 0..3),
        -2i64..=2,
    );
    go(
        "rational",
        runner
            .run(&rf, |(cs, roots, k)| {
                let mut r = RationalFn::from_poly(Poly::from_coeffs(&f, cs)).mul_t_pow(k);
                for a in roots {
                    r = r.mul(&RationalFn::linear_power(&f.int(a), -1));
                }
                prop_assert_eq!(parse_rational(&r.to_string(), &f).unwrap(), r);
                Ok(())
            })
            .map_err(map_err),
    )
}

fn map_err<T: std::fmt::Debug>(e: proptest::test_runner::TestError<T>) -> proptest::test_runner::TestError<String> {
    match e {
        proptest::test_runner::TestError::Abort(r) => proptest::test_runner::TestError::Abort(r),
        proptest::test_runner::TestError::Fail(r, v) => proptest::test_runner::TestError::Fail(r, format!("{v:?}")),
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_virdiff"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

/// Structural validation of the report document.
fn validate_report(doc: &serde_json::Value) -> Check {
    use serde_json::Value;
    let obj = doc.as_object().ok_or("report is not an object")?;
    ensure(obj.len() == 3 && obj["suite"].is_string(), "top-level keys")?;
    for check in obj["checks"].as_array().ok_or("checks is not an array")? {
        let c = check.as_object().ok_or("check is not an object")?;
        for k in c.keys() {
            ensure(
                ["name", "params", "window", "status", "counterexample", "reason", "ms"].contains(&k.as_str()),
                format!("unexpected key {k}"),
            )?;
        }
        ensure(c["name"].is_string() && c["ms"].is_u64(), "name/ms")?;
        ensure(
            c["params"]
                .as_object()
                .is_some_and(|p| p.values().all(Value::is_string)),
            "params",
        )?;
        let w = c["window"].as_object().ok_or("window")?;
        ensure(w.len() == 2 && w["op"].is_u64() && w["bound"].is_u64(), "window shape")?;
        ensure(
            matches!(c["status"].as_str(), Some("pass" | "fail" | "rejected")),
            "status",
        )?;
        if let Some(cx) = c.get("counterexample") {
            ensure(
                cx["i"].is_i64() && cx["at"].is_string() && cx["lhs"].is_string() && cx["rhs"].is_string(),
                "counterexample",
            )?;
        }
        if let Some(r) = c.get("reason") {
            ensure(r.is_string(), "reason")?;
        }
    }
    let s = obj["summary"].as_object().ok_or("summary")?;
    ensure(
        s.len() == 3 && ["pass", "fail", "rejected"].iter().all(|k| s[*k].is_u64()),
        "summary shape",
    )
}

fn cli_suite() -> Check {
    round_trips()?;
    let (code, out) = cli(&["bracket", "L[2]", "L[-2]"]);
    ensure(
        code == 0 && out.trim() == "-4*L[0] + 1/2*C",
        format!("bracket: exit {code}, output {out:?}"),
    )?;
    for (args, want, status) in [
        (
            &[
                "verify", "omega", "--mu", "2", "--b", "3", "--n", "2", "--a", "1/2", "--xi", "1", "--json",
            ][..],
            0,
            "pass",
        ),
        (
            &[
                "verify", "verma", "--n", "-1", "--a", "2", "--h", "0", "--c", "0", "--json",
            ][..],
            2,
            "rejected",
        ),
    ] {
        let (code, out) = cli(args);
        ensure(code == want, format!("{args:?}: exit {code}, expected {want}"))?;
        let doc: serde_json::Value = serde_json::from_str(&out).map_err(|e| format!("{args:?}: {e}"))?;
        validate_report(&doc)?;
        ensure(doc["checks"][0]["status"] == status, format!("{args:?}: status"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("Lie structure", lie_suite),
        ("operator classification", classification_suite),
        ("diff/homomorphism and lambda-scaling equivalences", equivalence_suite),
        ("Verma modules", verma_suite),
        ("intermediate series", intermediate_suite),
        ("Omega modules", omega_suite),
        ("A_{alpha,beta} modules", aab_suite),
        ("structural lemma oracles", lemma_suite),
        ("d_{0,0} modules", d00_suite),
        ("CLI and parser", cli_suite),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", k + 1),
            Err(e) => {
                println!("FAIL {:>2} {name} ({secs:.2}s): {e}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
