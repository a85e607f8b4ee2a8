//! Acceptance criteria AC1–AC8. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use jordanlp::algebras::{matrix_jordan, pauli_spin_representation, spin_abstract, AmbientMap};
use jordanlp::check::CheckReport;
use jordanlp::expect::{
    canonical_projection, diagonal_expectation, lp_contractivity_check, scalar_expectation, spin_span_expectation,
    uniqueness_residual, verify_expectation, ExpectationOperator,
};
use jordanlp::harness::{generate_element, run_campaign, AlgebraSpec, CampaignConfig, Distribution, StateSpec, Status, Suite};
use jordanlp::interp::{bracket, CoupleSpec, InterpBudget, NormBracket};
use jordanlp::lp::{ambient_schatten_norm, holder_check, iochum_norm, lp_norm, module_action_check, NormRoute};
use jordanlp::{CMatrix, JordanElement, Result, StateFunctional, C64};

const INF: f64 = f64::INFINITY;

/// Outcome of one criterion: a verdict plus the lines explaining it.
struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { pass: true, notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, note: String) {
        if !ok {
            self.pass = false;
        }
        self.notes.push(format!("{} {note}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, note: String) {
        self.notes.push(format!("info {note}"));
    }

    fn check(&mut self, label: &str, c: &CheckReport) {
        self.require(
            c.passed(),
            format!(
                "{label}: {} instances, {} violations, max {:.3e} (tol {:.0e})",
                c.instances, c.violations, c.max_violation, c.tolerance
            ),
        );
    }
}

fn algebra(spec: &str) -> jordanlp::JordanAlgebra {
    AlgebraSpec::parse(spec).and_then(|a| a.build()).expect("algebra spec")
}

fn state(alg: &jordanlp::JordanAlgebra, spec: &str) -> StateFunctional {
    StateSpec::parse(spec).and_then(|s| s.build(alg)).expect("state spec")
}

/// Normalized Schatten-p norm of a 2×2 matrix from the closed-form singular values.
fn schatten_2x2(m: &CMatrix, p: f64) -> f64 {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let fro = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    let det = (a * d - b * c).norm();
    let disc = (fro * fro - 4.0 * det * det).max(0.0).sqrt();
    let s1 = (0.5 * (fro + disc)).sqrt();
    let s2 = (0.5 * (fro - disc)).max(0.0).sqrt();
    if p.is_infinite() {
        s1
    } else {
        (0.5 * (s1.powf(p) + s2.powf(p))).powf(1.0 / p)
    }
}

/// Normalized Schatten-p norm of a selfadjoint spin element `a₀ + Σ aᵢeᵢ`: its spectrum is `a₀ ± |a|`
/// with equal multiplicity.
fn spin_selfadjoint_norm(x: &JordanElement, p: f64) -> f64 {
    let c = x.coords();
    let a0 = c[0].re;
    let r = c[1..].iter().map(|z| z.re * z.re).sum::<f64>().sqrt();
    let (l1, l2) = ((a0 + r).abs(), (a0 - r).abs());
    if p.is_infinite() {
        l1.max(l2)
    } else {
        (0.5 * (l1.powf(p) + l2.powf(p))).powf(1.0 / p)
    }
}

fn bracket_line(b: &NormBracket, oracle: f64) -> String {
    format!(
        "[{:.9}, {:.9}] oracle {:.9} width {:.2}% at ({}, {})",
        b.lower,
        b.upper,
        oracle,
        100.0 * b.width() / oracle,
        b.degree,
        b.grid
    )
}

fn ac1() -> Result<Verdict> {
    let mut v = Verdict::new();
    let start = Instant::now();
    let alg = algebra("matrix:2");
    let tau = state(&alg, "trace");
    let budget =
        InterpBudget { stages: vec![(0, 32), (2, 32), (4, 32), (8, 64), (16, 64), (16, 128)], ..InterpBudget::default() };
    for p in [4.0 / 3.0, 2.0, 3.0, 4.0] {
        let spec = CoupleSpec::new(&tau, 1.0 / p)?;
        let (mut contained, mut narrow, mut worst) = (0, 0, 0.0f64);
        for i in 0..20 {
            let x = generate_element(&alg, Distribution::Ball, 0xac1, i)?;
            let oracle = schatten_2x2(&x.represent()?, p);
            let b = bracket(&x, &spec, &budget)?;
            if b.contains(oracle, 1e-9) {
                contained += 1;
            } else {
                v.note(format!("p={p:.4} x#{i} misses: {}", bracket_line(&b, oracle)));
            }
            if b.width() <= 0.05 * oracle && b.degree <= 16 && b.grid <= 128 {
                narrow += 1;
            }
            worst = worst.max(b.width() / oracle);
        }
        v.require(
            contained == 20 && narrow == 20,
            format!("p={p:.4}: {contained}/20 contained, {narrow}/20 within 5% (worst {:.3}%)", 100.0 * worst),
        );
    }
    let secs = start.elapsed().as_secs_f64();
    v.require(secs <= 300.0, format!("runtime {secs:.1}s"));
    Ok(v)
}

fn ac2() -> Result<Verdict> {
    let mut v = Verdict::new();
    let budget = InterpBudget::default();
    for (alg_spec, state_spec, count) in [
        ("matrix:2", "trace", 10),
        ("matrix:2", "ambient_diag:0.7,0.3", 6),
        ("spin:3:represented", "trace", 10),
        ("spin:3:represented", "density:1,0.4,0,0", 4),
    ] {
        let alg = algebra(alg_spec);
        let phi = state(&alg, state_spec);
        let spec = CoupleSpec::new(&phi, 0.5)?;
        let (mut good, mut worst) = (0, 0.0f64);
        for i in 0..count {
            let x = generate_element(&alg, Distribution::Ball, 0xac2, i)?;
            let oracle = phi.evaluate(&x.star().jordan(&x)?)?.re.sqrt();
            let b = bracket(&x, &spec, &budget)?;
            if b.contains(oracle, 1e-9) && b.width() <= 0.05 * oracle {
                good += 1;
            } else {
                v.note(format!("{alg_spec} {state_spec} x#{i}: {}", bracket_line(&b, oracle)));
            }
            worst = worst.max(b.width() / oracle);
        }
        v.require(good == count, format!("{alg_spec} {state_spec}: {good}/{count} (worst width {:.3}%)", 100.0 * worst));
    }
    Ok(v)
}

fn ac3() -> Result<Verdict> {
    let mut v = Verdict::new();
    for k in [3, 4] {
        let rep = pauli_spin_representation(k)?;
        let tau = StateFunctional::canonical_trace(&rep.spin)?;
        let amb = StateFunctional::canonical_trace(&rep.ambient)?;
        for p in [1.0, 1.5, 2.0, 3.0, INF] {
            let (mut equality, mut naturality, mut gap) = (0.0f64, 0.0f64, 0.0f64);
            for i in 0..1000 {
                let x = generate_element(&rep.spin, Distribution::Selfadjoint, 0xac3, i)?;
                let intrinsic = lp_norm(&x, &tau, p)?.value;
                let closed_form = spin_selfadjoint_norm(&x, p);
                let schatten = ambient_schatten_norm(&rep.map(&x)?, p)?;
                equality = equality.max((intrinsic - closed_form).abs()).max((intrinsic - schatten).abs());
                let z = generate_element(&rep.spin, Distribution::Ball, 0xac3, i)?;
                let zi = lp_norm(&z, &tau, p)?.value;
                naturality = naturality.max((zi - lp_norm(&rep.map(&z)?, &amb, p)?.value).abs());
                gap = gap.max((zi - ambient_schatten_norm(&rep.map(&z)?, p)?).abs());
            }
            v.require(equality <= 1e-9, format!("k={k} p={p}: selfadjoint Schatten equality max {equality:.2e}"));
            v.require(naturality <= 1e-9, format!("k={k} p={p}: naturality max {naturality:.2e}"));
            v.note(format!("k={k} p={p}: complex elements differ from Schatten by up to {gap:.3e} (finding)"));
        }
    }
    Ok(v)
}

/// Checks an expectation operator against a closed-form action on a few samples.
fn oracle_gap(q: &ExpectationOperator, oracle: impl Fn(&CMatrix) -> CMatrix) -> Result<f64> {
    let alg = q.domain();
    let mut gap = 0.0f64;
    for i in 0..50 {
        let x = generate_element(alg, Distribution::Ball, 0x0c1e, i)?;
        let expected = oracle(&x.represent()?);
        gap = gap.max((&q.apply(&x)?.represent()? - &expected).max_abs());
    }
    Ok(gap)
}

fn expectation_block(v: &mut Verdict, label: &str, q: &ExpectationOperator, samples: usize) -> Result<()> {
    let report = verify_expectation(q, 1000, 0xac4)?;
    for c in &report.checks {
        v.check(&format!("{label} {}", c.name), c);
    }
    let u = uniqueness_residual(q, 0xac4)?;
    v.require(u <= 1e-9, format!("{label} uniqueness {u:.2e}"));
    let tau = StateFunctional::canonical_trace(q.domain())?;
    for p in [1.0, 2.0, 3.0] {
        let r = lp_contractivity_check(q, &tau, p, samples, 0xac4)?;
        v.require(
            r.contraction.violations == 0 && r.passed(),
            format!(
                "{label} L{p} contractivity: {} samples, {} violations, max {:.3e}",
                r.contraction.instances, r.contraction.violations, r.contraction.max_violation
            ),
        );
    }
    Ok(())
}

fn ac4() -> Result<Verdict> {
    let mut v = Verdict::new();
    let m3 = matrix_jordan(3)?;
    let scalar = scalar_expectation(&m3)?;
    let g = oracle_gap(&scalar, |m| CMatrix::identity(3).scale((0..3).map(|i| m[(i, i)]).sum::<C64>() / 3.0))?;
    v.require(g <= 1e-12, format!("ℂ1 in M₃ matches τ(x)1: {g:.2e}"));
    expectation_block(&mut v, "ℂ1 ⊂ M₃", &scalar, 10_000)?;

    let diag = diagonal_expectation(3)?;
    let g = oracle_gap(&diag, |m| CMatrix::from_fn(3, 3, |r, c| if r == c { m[(r, c)] } else { C64::new(0.0, 0.0) }))?;
    v.require(g <= 1e-12, format!("diagonal of M₃ matches the diagonal part: {g:.2e}"));
    expectation_block(&mut v, "diag ⊂ M₃", &diag, 10_000)?;

    let rep = pauli_spin_representation(3)?;
    let span = spin_span_expectation(&rep)?;
    expectation_block(&mut v, "spin span ⊂ M₄", &span, 10_000)?;
    Ok(v)
}

fn ac5() -> Result<Verdict> {
    let mut v = Verdict::new();
    for n in [2, 3] {
        let alg = matrix_jordan(n)?;
        let q = canonical_projection(&alg, &AmbientMap::transpose())?;
        let g = oracle_gap(&q, |m| CMatrix::from_fn(n, n, |r, c| 0.5 * (m[(r, c)] + m[(c, r)])))?;
        v.require(g <= 1e-12, format!("M{n}: P matches (x + xᵀ)/2: {g:.2e}"));
        let report = verify_expectation(&q, 10_000, 0xac5)?;
        for c in &report.checks {
            v.check(&format!("M{n} transpose {}", c.name), c);
        }
        let tau = StateFunctional::canonical_trace(&alg)?;
        for p in [1.0, 2.0, 3.0, INF] {
            let r = lp_contractivity_check(&q, &tau, p, 10_000, 0xac5)?;
            v.require(
                r.passed() && r.contraction.violations == 0,
                format!(
                    "M{n} transpose L{p} contractivity: {} violations, max {:.3e}",
                    r.contraction.violations, r.contraction.max_violation
                ),
            );
        }
    }
    Ok(v)
}

const HOLDER_TRIPLES: [(f64, f64, f64); 4] = [(2.0, 2.0, 1.0), (4.0, 4.0, 2.0), (3.0, 1.5, 1.0), (INF, 2.0, 2.0)];

fn report_findings(v: &mut Verdict, label: &str, c: &CheckReport) {
    if c.violations == 0 {
        v.note(format!("{label}: 0 violations over {} samples", c.instances));
    } else {
        let w = c.witnesses.first().map(|w| serde_json::to_string(w).expect("witness serializes")).unwrap_or_default();
        v.note(format!(
            "{label}: {} violations over {} samples, max {:.3e} (finding); witness {w}",
            c.violations, c.instances, c.max_violation
        ));
    }
}

fn ac6() -> Result<Verdict> {
    let mut v = Verdict::new();
    let samples = 10_000;
    for spec in ["matrix:2", "matrix:3"] {
        let alg = algebra(spec);
        let tau = state(&alg, "trace");
        for triple in HOLDER_TRIPLES {
            let c = holder_check(&tau, triple, NormRoute::Schatten, Distribution::Ball, samples, 0xac6)?;
            v.check(&format!("{spec} holder{triple:?} schatten"), &c);
            let c = holder_check(&tau, triple, NormRoute::FunctionalCalculus, Distribution::Selfadjoint, samples, 0xac6)?;
            v.check(&format!("{spec} holder{triple:?} fc selfadjoint"), &c);
            let c = holder_check(&tau, triple, NormRoute::FunctionalCalculus, Distribution::Ball, samples, 0xac6)?;
            report_findings(&mut v, &format!("{spec} holder{triple:?} fc complex"), &c);
        }
        for p in [1.0, 2.0, 3.0] {
            let c = module_action_check(&tau, p, NormRoute::Schatten, Distribution::Ball, samples, 0xac6)?;
            v.check(&format!("{spec} module_action({p}) schatten"), &c);
            let c = module_action_check(&tau, p, NormRoute::FunctionalCalculus, Distribution::Selfadjoint, samples, 0xac6)?;
            v.check(&format!("{spec} module_action({p}) fc selfadjoint"), &c);
        }
    }
    for spec in ["spin:3", "spin:4", "albert"] {
        let alg = algebra(spec);
        let tau = state(&alg, "trace");
        let n = if spec == "albert" { 2_000 } else { samples };
        for triple in HOLDER_TRIPLES {
            for dist in [Distribution::Selfadjoint, Distribution::Ball] {
                let c = holder_check(&tau, triple, NormRoute::FunctionalCalculus, dist, n, 0xac6);
                match c {
                    Ok(c) => report_findings(&mut v, &format!("{spec} holder{triple:?} {}", dist.label()), &c),
                    Err(e) => v.note(format!("{spec} holder{triple:?} {}: {e}", dist.label())),
                }
            }
        }
        for p in [1.0, 2.0, 3.0] {
            let c = module_action_check(&tau, p, NormRoute::FunctionalCalculus, Distribution::Selfadjoint, n, 0xac6)?;
            report_findings(&mut v, &format!("{spec} module_action({p}) selfadjoint"), &c);
        }
    }
    Ok(v)
}

fn ac7() -> Result<Verdict> {
    let mut v = Verdict::new();
    let alg = spin_abstract(3)?;
    let tau = StateFunctional::canonical_trace(&alg)?;
    let budget = InterpBudget::default();
    for p in [4.0 / 3.0, 2.0, 4.0] {
        let spec = CoupleSpec::new(&tau, 1.0 / p)?;
        let (mut good, mut formula) = (0, 0.0f64);
        for i in 0..20 {
            let x = generate_element(&alg, Distribution::Selfadjoint, 0xac7, i)?;
            let value = iochum_norm(&x, &tau, p)?.value;
            formula = formula.max((value - spin_selfadjoint_norm(&x, p)).abs());
            let b = bracket(&x, &spec, &budget)?;
            if b.contains(value, 1e-9) {
                good += 1;
            } else {
                v.note(format!("p={p:.4} x#{i}: {}", bracket_line(&b, value)));
            }
        }
        v.require(good == 20, format!("p={p:.4}: {good}/20 brackets contain the Iochum norm"));
        v.require(formula <= 1e-10, format!("p={p:.4}: Iochum norm vs spectrum formula {formula:.2e}"));
    }
    Ok(v)
}

fn ac8() -> Result<Verdict> {
    let mut v = Verdict::new();
    let suites = vec![Suite::Axioms, Suite::Calculus, Suite::Duality, Suite::Lp];
    for spec in ["matrix:3", "spin:3:represented", "spin:4", "albert", "matrix:2@0.4+spin:3@0.6"] {
        let mut cfg = CampaignConfig::new(AlgebraSpec::parse(spec)?, suites.clone());
        cfg.seed = 0xac8;
        cfg.samples.checks = 200;
        let report = run_campaign(&cfg)?;
        let c = &report.counts;
        v.require(
            c.fail == 0 && c.inconclusive == 0,
            format!(
                "{spec} (seed {:#x}): {} pass, {} fail, {} unsupported, {} finding",
                report.seed, c.pass, c.fail, c.unsupported, c.finding
            ),
        );
        let mut required =
            vec!["jordan_identity", "jb_axioms", "spectral_reconstruction", "p_monotonicity", "involution_isometry(2)"];
        required.extend(["duality_attainment(1)", "duality_attainment(2)", "duality_attainment(3)", "duality_attainment(inf)"]);
        if spec.starts_with("spin") {
            required.push("spin_anticommutation");
        }
        if spec == "albert" {
            required.push("cayley_hamilton");
        }
        for name in required {
            let entry = report.entries.iter().find(|e| e.name == name);
            let ok = entry.is_some_and(|e| e.status == Status::Pass);
            let detail = entry.map_or("missing".to_string(), |e| {
                format!("{:?}, max {:.2e}, tol {:.0e}", e.status, e.max_violation.unwrap_or(f64::NAN), e.tolerance)
            });
            v.require(ok, format!("{spec} {name}: {detail}"));
        }
    }
    Ok(v)
}

type Criterion = (&'static str, &'static str, fn() -> Result<Verdict>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "interpolation = normalized Schatten on M₂", ac1),
        ("AC2", "θ = 1/2 gives the L² norm", ac2),
        ("AC3", "spin factor Lᵖ embedding", ac3),
        ("AC4", "conditional expectations", ac4),
        ("AC5", "canonical transpose projection", ac5),
        ("AC6", "Hölder and module action", ac6),
        ("AC7", "Iochum norm inside brackets", ac7),
        ("AC8", "structural suites", ac8),
    ];
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(v) => {
                println!("{id} {} {title} ({secs:.1}s)", if v.pass { "PASS" } else { "FAIL" });
                for line in v.notes.iter().filter(|l| verbose || !v.pass || !l.starts_with("ok")) {
                    println!("    {line}");
                }
                if !v.pass {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("{id} FAIL {title}: error {e}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
