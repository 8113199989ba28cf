//! Command-line front end. [`run`] is the whole program minus process exit.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 some input was
//! rejected and nothing failed, 3 usage, parse or config error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::aab::{alpha_decompose, build_case1, build_case2, lemma_delta_check, verify_aab, AabStructure, CaseData};
use crate::config::load_aab_config;
use crate::harness::{
    check_module_relation, emit_report, run_check, verify_d00, verify_diff_module, verify_lambda_module,
    Counterexample, Outcome, ReportFormat, Summary, VerificationReport, WindowSpec,
};
use crate::intseries::{build_int_delta, verify_int, IntSeriesParams, IntSeriesVector};
use crate::omega::{build_omega_delta, verify_omega, OmegaParams};
use crate::parse::{parse_scalar, parse_verma, parse_vir, ParseError};
use crate::scalar::{Field, Scalar};
use crate::verma::{build_verma_delta, verify_verma, HighestWeight, VermaModule, VermaReject, VermaVector};
use crate::vir::{
    bracket, check_antisymmetry, check_diff_identity, check_gradation, check_homomorphism, check_jacobi, compose_check,
    DiffOpSpec, Gen, HomSpec, PairFailure,
};

pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "virdiff",
    version,
    about = "Exact checks for differential operators and modules over the Virasoro algebra"
)]
struct Cli {
    /// Order D of the root of unity written `z` in expressions.
    #[arg(long, global = true, default_value_t = 1)]
    cyclotomic_order: u32,
    /// Emit the verification report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Bracket of two algebra elements.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Apply lambda^{-1}(phi_n tau_a - id) to an algebra element; `--n 0` is d_{0,0}.
    Apply {
        #[command(flatten)]
        op: OpArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Verify an operator or a module structure on a finite window.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Run the built-in property suites.
    Selftest,
}

#[derive(Args, Debug)]
struct OpArgs {
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    lambda: String,
}

#[derive(Subcommand, Debug)]
enum Target {
    Operator {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, default_value_t = 12)]
        window: u32,
    },
    Verma {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Image of v0; defaults to the first computed n-singular vector.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, default_value_t = 5)]
        depth: u32,
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
    Intermediate {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Operator window and index bound, as `W,J`.
        #[arg(long, default_value = "8,8")]
        windows: String,
    },
    Omega {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value_t = 6)]
        window: u32,
        #[arg(long, default_value_t = 8)]
        degree: u32,
    },
    Aab {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 5)]
        window: u32,
        #[arg(long, default_value_t = 2)]
        basis_bound: u32,
    },
}

/// A failure that ends the run with [`EXIT_USAGE`].
#[derive(Debug)]
struct UsageError(String);

impl From<ParseError> for UsageError {
    fn from(e: ParseError) -> Self {
        UsageError(e.to_string())
    }
}

fn scalar(field: &Field, flag: &str, s: &str) -> Result<Scalar, UsageError> {
    parse_scalar(s, field).map_err(|e| UsageError(format!("--{flag} `{s}`: {e}")))
}

fn window(op: u32, bound: u32) -> Result<WindowSpec, UsageError> {
    if op == 0 {
        return Err(UsageError("operator window must be positive".into()));
    }
    Ok(WindowSpec::new(op, bound))
}

/// Runs the program on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, UsageError> {
    let field = Field::new(cli.cyclotomic_order).map_err(|e| UsageError(format!("--cyclotomic-order: {e}")))?;
    let format = if cli.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    let (suite, reports) = match &cli.cmd {
        Cmd::Bracket { x, y } => {
            let r = bracket(&parse_vir(x, &field)?, &parse_vir(y, &field)?);
            print_value(out, cli.json, &r.to_string());
            return Ok(0);
        }
        Cmd::Apply { op, expr } => {
            let d = match diff_op(&field, op)? {
                Ok(d) => d,
                Err(reason) => {
                    let _ = writeln!(out, "rejected: {reason}");
                    return Ok(2);
                }
            };
            let x = parse_vir(expr, &field)?;
            print_value(out, cli.json, &d.apply(&x).to_string());
            return Ok(0);
        }
        Cmd::Verify { target } => verify(&field, target)?,
        Cmd::Selftest => ("selftest", selftest()),
    };
    let _ = write!(out, "{}", emit_report(suite, &reports, format));
    if cli.json {
        let _ = writeln!(out);
    }
    Ok(Summary::of(&reports).exit_code())
}

fn print_value(out: &mut dyn Write, json: bool, v: &str) {
    if json {
        let _ = writeln!(out, "{}", serde_json::json!({ "result": v }));
    } else {
        let _ = writeln!(out, "{v}");
    }
}

/// The operator named by the flags, or the reason it does not exist.
fn diff_op(field: &Field, op: &OpArgs) -> Result<Result<DiffOpSpec, String>, UsageError> {
    let lambda = scalar(field, "lambda", &op.lambda)?;
    let hom = if op.n == 0 {
        HomSpec::Zero
    } else {
        let Some(a) = &op.a else {
            return Err(UsageError("--a is required when n is nonzero".into()));
        };
        match HomSpec::phi_tau(op.n, scalar(field, "a", a)?) {
            Ok(h) => h,
            Err(e) => return Ok(Err(e.to_string())),
        }
    };
    Ok(DiffOpSpec::new(lambda, hom).map_err(|e| e.to_string()))
}

fn pair_cx(f: PairFailure) -> Counterexample {
    let i = match f.x {
        Gen::L(m) => m,
        Gen::C => 0,
    };
    Counterexample {
        i,
        at: format!("({}, {})", f.x, f.y),
        lhs: f.lhs,
        rhs: f.rhs,
    }
}

fn pair_outcome(r: Result<(), PairFailure>) -> Outcome {
    r.map_err(pair_cx).into()
}

type Suite = (&'static str, Vec<VerificationReport>);

fn verify(field: &Field, target: &Target) -> Result<Suite, UsageError> {
    Ok(match target {
        Target::Operator { op, window: w } => {
            let win = window(*w, 0)?;
            let params = vec![
                ("n", op.n.to_string()),
                ("a", op.a.clone().unwrap_or_default()),
                ("lambda", op.lambda.clone()),
            ];
            let outcome = match diff_op(field, op)? {
                Ok(d) => pair_outcome(check_diff_identity(&d, *w)),
                Err(reason) => Outcome::Rejected(reason),
            };
            ("operator", vec![run_check("diff_identity", &params, win, || outcome)])
        }
        Target::Verma {
            n,
            a,
            h,
            c,
            u,
            depth,
            window: w,
        } => {
            let win = window(*w, *depth)?;
            let hw = HighestWeight::new(scalar(field, "h", h)?, scalar(field, "c", c)?);
            let a_s = scalar(field, "a", a)?;
            let module = VermaModule::new(hw.clone());
            let u_vec = match u {
                Some(s) => Some(parse_verma(s, &module)?),
                None => None,
            };
            let mut params = vec![
                ("n", n.to_string()),
                ("a", a.clone()),
                ("h", h.clone()),
                ("c", c.clone()),
            ];
            let report = run_check("verify_verma", &[], win, || {
                let u_vec = match u_vec {
                    Some(v) => v,
                    None => match default_singular(*n, &a_s, &hw, &module) {
                        Ok(v) => v,
                        Err(reason) => return Outcome::Rejected(reason),
                    },
                };
                match build_verma_delta(*n, a_s.clone(), hw.clone(), u_vec) {
                    Ok(spec) => verify_verma(&spec, win).into(),
                    Err(e) => Outcome::Rejected(e.to_string()),
                }
            });
            params.push(("u", u.clone().unwrap_or_else(|| "auto".into())));
            ("verma", vec![with_params(report, &params)])
        }
        Target::Intermediate {
            alpha,
            beta,
            n,
            a,
            xi,
            windows,
        } => {
            let (w, j) = windows
                .split_once(',')
                .and_then(|(w, j)| Some((w.trim().parse().ok()?, j.trim().parse().ok()?)))
                .ok_or_else(|| UsageError(format!("--windows expects W,J, found `{windows}`")))?;
            let win = window(w, j)?;
            let p = IntSeriesParams::new(scalar(field, "alpha", alpha)?, scalar(field, "beta", beta)?);
            let (a_s, xi_s) = (scalar(field, "a", a)?, scalar(field, "xi", xi)?);
            let params = [
                ("alpha", alpha.clone()),
                ("beta", beta.clone()),
                ("n", n.to_string()),
                ("a", a.clone()),
                ("xi", xi.clone()),
            ];
            let report = run_check("verify_int", &params, win, || match build_int_delta(*n, a_s, xi_s, p) {
                Ok(spec) => verify_int(&spec, win).into(),
                Err(e) => Outcome::Rejected(e.to_string()),
            });
            ("intermediate", vec![report])
        }
        Target::Omega {
            mu,
            b,
            n,
            a,
            xi,
            window: w,
            degree,
        } => {
            let win = window(*w, *degree)?;
            let (mu_s, b_s) = (scalar(field, "mu", mu)?, scalar(field, "b", b)?);
            let (a_s, xi_s) = (scalar(field, "a", a)?, scalar(field, "xi", xi)?);
            let params = [
                ("mu", mu.clone()),
                ("b", b.clone()),
                ("n", n.to_string()),
                ("a", a.clone()),
                ("xi", xi.clone()),
            ];
            let report = run_check("verify_omega", &params, win, || {
                let Some(p) = OmegaParams::new(mu_s, b_s) else {
                    return Outcome::Rejected("mu must be nonzero".into());
                };
                match build_omega_delta(*n, a_s, xi_s, p) {
                    Ok(spec) => verify_omega(&spec, win).into(),
                    Err(e) => Outcome::Rejected(e.to_string()),
                }
            });
            ("omega", vec![report])
        }
        Target::Aab {
            config,
            window: w,
            basis_bound,
        } => {
            let win = window(*w, *basis_bound)?;
            let cfg = load_aab_config(config, field).map_err(|e| UsageError(format!("{}: {e}", config.display())))?;
            let betas = match &cfg.beta {
                Some(b) => vec![b.clone()],
                None => vec![field.zero(), field.one(), field.frac(2, 3)],
            };
            let case = match cfg.case {
                CaseData::One(_) => "1",
                CaseData::Two(_) => "2",
            };
            let mut reports = Vec::new();
            for beta in betas {
                let params = [("case", case.to_string()), ("beta", beta.to_string())];
                let built = match &cfg.case {
                    CaseData::One(d) => build_case1(d, beta),
                    CaseData::Two(d) => build_case2(d, beta),
                };
                match built {
                    Ok(s) => reports.extend(aab_checks(&s, win, &params)),
                    Err(e) => reports.push(run_check("verify_aab", &params, win, || {
                        Outcome::Rejected(e.to_string())
                    })),
                }
            }
            ("aab", reports)
        }
    })
}

fn with_params(mut r: VerificationReport, params: &[(&str, String)]) -> VerificationReport {
    r.params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    r
}

/// The first basis vector of the n-singular space of the right depth, after
/// the checks that do not involve `u`.
fn default_singular(n: i64, a: &Scalar, hw: &HighestWeight, module: &VermaModule) -> Result<VermaVector, String> {
    let probe = build_verma_delta(n, a.clone(), hw.clone(), VermaVector::zero(a.field()));
    match probe {
        Err(VermaReject::NotSingular(_)) => {}
        Err(e) => return Err(e.to_string()),
        Ok(_) => unreachable!("a zero u is always rejected"),
    }
    let depth = (&hw.h * &a.field().int(1 - n)).as_i64().expect("weight was validated");
    module
        .find_n_singular(n as u32, depth as u32)
        .into_iter()
        .next()
        .ok_or_else(|| "no n-singular vector".to_string())
}

fn aab_checks(s: &AabStructure, win: WindowSpec, params: &[(&str, String)]) -> Vec<VerificationReport> {
    vec![
        run_check("verify_aab", params, win, || verify_aab(s, win).into()),
        run_check("alpha_decomposition", params, win, || {
            let dec = alpha_decompose(s);
            if dec.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail(Counterexample {
                    i: 0,
                    at: "alpha".into(),
                    lhs: format!(
                        "residual_ok={} relation_ok={} alpha0_ok={}",
                        dec.residual_ok, dec.relation_ok, dec.alpha0_ok
                    ),
                    rhs: "all true".into(),
                })
            }
        }),
        run_check("lemma_delta", params, win, || {
            lemma_delta_check(s, win.op_window, win.module_bound).into()
        }),
    ]
}

/// Moderate-size versions of the property suites.
fn selftest() -> Vec<VerificationReport> {
    let q = Field::rationals();
    let z3 = Field::new(3).expect("order 3");
    let mut r = Vec::new();
    let lie = WindowSpec::new(6, 0);
    r.push(run_check("antisymmetry", &[], lie, || {
        pair_outcome(check_antisymmetry(&q, 6))
    }));
    r.push(run_check("jacobi", &[], WindowSpec::new(4, 0), || {
        check_jacobi(&q, 4)
            .map_err(|f| Counterexample {
                i: 0,
                at: format!("({}, {}, {})", f.triple.0, f.triple.1, f.triple.2),
                lhs: f.value,
                rhs: "0".into(),
            })
            .into()
    }));
    r.push(run_check("gradation", &[], WindowSpec::new(8, 0), || {
        check_gradation(&q, 8)
            .map_err(|(m, n)| Counterexample {
                i: m,
                at: format!("({m}, {n})"),
                lhs: "off-degree term".into(),
                rhs: "0".into(),
            })
            .into()
    }));

    let ops: Vec<(i64, Scalar)> = vec![
        (1, q.int(2)),
        (-1, q.int(3)),
        (2, q.int(5)),
        (-2, q.frac(1, 2)),
        (3, z3.zeta()),
    ];
    for (n, a) in &ops {
        let d = DiffOpSpec::dna(*n, a.clone()).expect("nonzero");
        let params = [("n", n.to_string()), ("a", a.to_string())];
        let field = a.field().clone();
        r.push(run_check("diff_identity", &params, WindowSpec::new(8, 0), || {
            pair_outcome(check_diff_identity(&d, 8))
        }));
        r.push(run_check("homomorphism", &params, WindowSpec::new(8, 0), || {
            pair_outcome(check_homomorphism(&d.hom, &field, 8))
        }));
    }
    r.push(run_check(
        "diff_identity",
        &[("n", "0".into())],
        WindowSpec::new(8, 0),
        || pair_outcome(check_diff_identity(&DiffOpSpec::d00(&q), 8)),
    ));
    for (m, n) in [(2, -1), (-2, 3)] {
        let params = [("m", m.to_string()), ("n", n.to_string())];
        r.push(run_check("compose", &params, WindowSpec::new(6, 0), || {
            compose_check(m, n, &q.int(2), &q.frac(1, 3), 6)
                .map_err(|f| Counterexample {
                    i: 0,
                    at: format!("{} on {}", f.law, f.at),
                    lhs: f.lhs,
                    rhs: f.rhs,
                })
                .into()
        }));
    }

    let vw = WindowSpec::new(4, 4);
    let verma = [
        (1, 2, (5, 7), None),
        (2, 3, (0, 1), None),
        (2, 3, (-1, 1), Some("L[-1]v0")),
    ];
    for (n, a, (hp, hq), u) in verma {
        let hw = HighestWeight::new(q.frac(hp, hq), if n == 1 { q.int(3) } else { q.zero() });
        let module = VermaModule::new(hw.clone());
        let params = [("n", n.to_string()), ("a", a.to_string()), ("h", hw.h.to_string())];
        r.push(run_check("verify_verma", &params, vw, || {
            let u = match u {
                Some(s) => parse_verma(s, &module).expect("literal"),
                None => VermaVector::vacuum(&q),
            };
            match build_verma_delta(n, q.int(a), hw.clone(), u) {
                Ok(spec) => verify_verma(&spec, vw).into(),
                Err(e) => Outcome::Rejected(e.to_string()),
            }
        }));
        r.push(run_check("verma_relation", &params, vw, || {
            check_module_relation(&module, vw).into()
        }));
    }

    let iw = WindowSpec::new(6, 6);
    for (n, a, xi, alpha, beta) in [(2, 3, 1, (0, 1), 0), (1, 5, 2, (1, 2), 1)] {
        let p = IntSeriesParams::new(q.frac(alpha.0, alpha.1), q.int(beta));
        let params = [
            ("n", n.to_string()),
            ("alpha", p.alpha.to_string()),
            ("beta", p.beta.to_string()),
        ];
        let module = p.module();
        r.push(run_check("verify_int", &params, iw, || {
            match build_int_delta(n, q.int(a), q.int(xi), p.clone()) {
                Ok(spec) => {
                    let agree = verify_int(&spec, iw).is_ok()
                        == verify_lambda_module(
                            spec.module(),
                            &|x| spec.diff_op().apply(x),
                            &q.one(),
                            &|v| spec.delta(v),
                            iw,
                        )
                        .is_ok();
                    if agree {
                        verify_diff_module(spec.module(), &spec.diff_op(), &|v| spec.delta(v), iw).into()
                    } else {
                        Outcome::Fail(Counterexample {
                            i: 0,
                            at: "harness agreement".into(),
                            lhs: "family verdict".into(),
                            rhs: "generic verdict".into(),
                        })
                    }
                }
                Err(e) => Outcome::Rejected(e.to_string()),
            }
        }));
        r.push(run_check("d00_intermediate", &params, iw, || {
            verify_d00(&module, &|v: &IntSeriesVector| v.scale(&q.int(-1)), iw).into()
        }));
    }

    let ow = WindowSpec::new(5, 6);
    for (n, a, mu) in [
        (2, q.frac(1, 2), q.int(2)),
        (1, q.one(), q.int(7)),
        (4, z3.one(), z3.zeta()),
    ] {
        let field = mu.field().clone();
        let params = [("n", n.to_string()), ("a", a.to_string()), ("mu", mu.to_string())];
        r.push(run_check("verify_omega", &params, ow, || {
            let p = OmegaParams::new(mu.clone(), field.frac(1, 3)).expect("mu nonzero");
            match build_omega_delta(n, a.clone(), field.int(2), p) {
                Ok(spec) => verify_omega(&spec, ow).into(),
                Err(e) => Outcome::Rejected(e.to_string()),
            }
        }));
    }

    let aw = WindowSpec::new(3, 1);
    let case1 = crate::config::parse_aab_config("[case1]\nd=2\na=-1\npoles=1\nm=1,-1\nc=1", &q).expect("literal");
    let case2 = crate::config::parse_aab_config("[case2]\na=1\npoles=2\nm0=0\nm=1\nc=1", &q).expect("literal");
    for (cfg, case) in [(case1, "1"), (case2, "2")] {
        let params = [("case", case.to_string()), ("beta", "1".to_string())];
        let built = match &cfg.case {
            CaseData::One(d) => build_case1(d, q.one()),
            CaseData::Two(d) => build_case2(d, q.one()),
        };
        match built {
            Ok(s) => r.extend(aab_checks(&s, aw, &params)),
            Err(e) => r.push(run_check("verify_aab", &params, aw, || {
                Outcome::Rejected(e.to_string())
            })),
        }
    }
    r
}
