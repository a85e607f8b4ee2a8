//! Suite orchestration for verification campaigns.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use super::config::{CampaignConfig, SubalgebraSpec, Suite};
use super::generate::{generate_element, Distribution};
use super::report::{finite, ReportEntry, Status, VerificationReport};
use crate::algebras::albert::cubic_invariants;
use crate::algebras::{matrix_jordan, pauli_spin_representation, tower_embed};
use crate::calculus::{apply_function, polar_real, spectral_decompose};
use crate::check::{collect_report, coords_pairs, CheckReport, Witness};
use crate::densemat::{hermitian_eig, C64};
use crate::error::{Error, Result};
use crate::expect::{lp_contractivity_check, uniqueness_residual, verify_expectation};
use crate::interp::{
    bracket, endpoint1_duality_check, endpoint1_norm, ricard_xu_reference, CoupleSpec, InterpBudget, NormBracket,
};
use crate::jordan::{
    check_jb_axioms, jordan_identity_residual, AlgebraKind, JordanAlgebra, JordanElement, NormOracle, StateFunctional,
};
use crate::lp::{
    ambient_schatten_norm, automorphism_isometry_check, duality_attainment_check, involution_isometry_check,
    iochum_agreement_check, iochum_norm, l2_consistency_check, lp_norm, module_action_check, p_monotonicity_check,
    triangle_check, NormRoute,
};
use crate::sampling::{normal, stream_id, stream_rng};

/// Environment variable capping the worker threads of a campaign.
pub const THREADS_ENV: &str = "JORDANLP_THREADS";

/// Thread cap from `JORDANLP_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        _ => Ok(None),
    }
}

/// Runs `f` on a pool sized by `JORDANLP_THREADS` (rayon's default when unset).
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Runs every listed suite and assembles the report. Unsupported suite and kind
/// combinations become `unsupported` entries.
pub fn run_campaign(config: &CampaignConfig) -> Result<VerificationReport> {
    config.validate()?;
    let started = Instant::now();
    let alg = config.algebra.build()?;
    let state = config.state.build(&alg)?;
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let ctx = Ctx { cfg: config, alg, state };
    let entries = with_thread_cap(|| suites.par_iter().flat_map_iter(|&s| ctx.run(s)).collect::<Vec<_>>())?;
    let mut report =
        VerificationReport::new(config.digest(), config.seed, config.algebra.to_string(), config.state.to_string(), entries);
    report.runtime_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

struct Ctx<'a> {
    cfg: &'a CampaignConfig,
    alg: JordanAlgebra,
    state: StateFunctional,
}

fn is_unsupported(e: &Error) -> bool {
    matches!(e, Error::Unsupported(_) | Error::MapCheck(_) | Error::NotFaithful(_))
}

/// Converts a failed entry computation into an `unsupported` or `fail` entry.
fn guarded(suite: Suite, name: &str, anchor: &str, f: impl FnOnce() -> Result<Vec<ReportEntry>>) -> Vec<ReportEntry> {
    match f() {
        Ok(v) => v,
        Err(e) if is_unsupported(&e) => vec![ReportEntry::unsupported(suite, name, anchor, e.to_string())],
        Err(e) => {
            let mut entry = ReportEntry::unsupported(suite, name, anchor, "");
            entry.status = Status::Fail;
            entry.details = json!({ "error": e.to_string() });
            vec![entry]
        }
    }
}

fn renamed(mut entry: ReportEntry, name: String) -> ReportEntry {
    entry.name = name;
    entry
}

fn p_label(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

/// Per-sample residuals over `samples` indices, folded in index order.
fn sampled(
    name: &str,
    tolerance: f64,
    samples: usize,
    f: impl Fn(u64) -> Result<(f64, Vec<JordanElement>)> + Sync,
) -> Result<CheckReport> {
    let outcomes = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let (v, xs) = f(i)?;
            let w = (!(v <= tolerance)).then(|| Witness {
                index: i,
                elements: xs.iter().map(coords_pairs).collect(),
                lhs: v,
                rhs: 0.0,
            });
            Ok((i, v, w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_report(name, tolerance, outcomes))
}

fn single_value(name: &str, tolerance: f64, value: f64) -> CheckReport {
    collect_report(name, tolerance, vec![(0, value, None)])
}

impl Ctx<'_> {
    fn seed(&self, label: &str) -> u64 {
        self.cfg.seed ^ stream_id(label)
    }

    fn n(&self) -> usize {
        self.cfg.samples.checks
    }

    fn tracial(&self) -> bool {
        self.state.is_tracial()
    }

    /// Asserted under a trace, reported otherwise.
    fn tracial_entry(&self, suite: Suite, anchor: &str, check: &CheckReport) -> ReportEntry {
        if self.tracial() {
            ReportEntry::from_check(suite, anchor, check)
        } else {
            ReportEntry::finding(suite, anchor, check)
        }
    }

    fn run(&self, suite: Suite) -> Vec<ReportEntry> {
        match suite {
            Suite::Axioms => self.axioms(),
            Suite::Calculus => self.calculus(),
            Suite::Lp => self.lp(),
            Suite::Holder => self.holder(),
            Suite::Duality => self.duality(),
            Suite::Expectation => self.expectation(),
            Suite::Interp => self.interp(),
            Suite::Embedding => self.embedding(),
            Suite::RicardXu => self.ricard_xu(),
            Suite::Iochum => self.iochum(),
        }
    }

    fn ball(&self, label: &str, index: u64) -> Result<JordanElement> {
        generate_element(&self.alg, Distribution::Ball, self.seed(label), index)
    }

    fn axioms(&self) -> Vec<ReportEntry> {
        let s = Suite::Axioms;
        let tol = self.cfg.tolerances.structural;
        let mut out = Vec::new();
        out.extend(guarded(s, "jordan_identity", "x∘(x²∘y) = x²∘(x∘y)", || {
            let check = sampled("jordan_identity", tol, self.n(), |i| {
                let x = self.ball("axioms/jordan", 2 * i)?;
                let y = self.ball("axioms/jordan", 2 * i + 1)?;
                let scale = x.coord_norm().powi(2) * y.coord_norm() + 1.0;
                Ok((jordan_identity_residual(&x, &y)? / scale, vec![x, y]))
            })?;
            Ok(vec![ReportEntry::from_check(s, "x∘(x²∘y) = x²∘(x∘y)", &check)])
        }));
        out.extend(guarded(s, "commutativity_bilinearity", "x∘y = y∘x, bilinear", || {
            let check = sampled("commutativity_bilinearity", 1e-10, self.n(), |i| {
                let x = self.ball("axioms/bilinear", 3 * i)?;
                let y = self.ball("axioms/bilinear", 3 * i + 1)?;
                let z = self.ball("axioms/bilinear", 3 * i + 2)?;
                let mut rng = stream_rng(self.seed("axioms/bilinear/scalars"), 0, i);
                let a = C64::new(normal(&mut rng), normal(&mut rng));
                let b = C64::new(normal(&mut rng), normal(&mut rng));
                let comm = x.jordan(&y)?.distance(&y.jordan(&x)?);
                let lhs = (&x.scale(a) + &y.scale(b)).jordan(&z)?;
                let rhs = &x.jordan(&z)?.scale(a) + &y.jordan(&z)?.scale(b);
                let scale = (x.coord_norm() + y.coord_norm()) * z.coord_norm() * (1.0 + a.norm() + b.norm());
                Ok((comm.max(lhs.distance(&rhs)) / scale.max(1.0), vec![x, y, z]))
            })?;
            Ok(vec![ReportEntry::from_check(s, "x∘y = y∘x, bilinear", &check)])
        }));
        out.extend(guarded(s, "trace_associativity", "τ(x∘(y∘z)) = τ((x∘y)∘z)", || {
            let tau = StateFunctional::canonical_trace(&self.alg)?;
            let v = tau.trace_identity_residual(self.n(), self.seed("axioms/trace"));
            Ok(vec![ReportEntry::from_check(s, "τ(x∘(y∘z)) = τ((x∘y)∘z)", &single_value("trace_associativity", tol, v))])
        }));
        out.extend(guarded(
            s,
            "jb_axioms",
            "‖x∘y‖ ≤ ‖x‖‖y‖, ‖x²‖ = ‖x‖², ‖{x,x*,x}‖ = ‖x‖³",
            || {
                let r = check_jb_axioms(&self.alg, NormOracle::Spectral, self.n(), self.seed("axioms/jb"))?;
                let check = single_value("jb_axioms", tol, r.max_violation());
                let entry = ReportEntry::from_check(s, "‖x∘y‖ ≤ ‖x‖‖y‖, ‖x²‖ = ‖x‖², ‖{x,x*,x}‖ = ‖x‖³", &check);
                Ok(vec![renamed(entry, "jb_axioms".into()).with_details(serde_json::to_value(&r)?)])
            },
        ));
        if let AlgebraKind::Spin(desc) = self.alg.kind() {
            let k = desc.k;
            out.extend(guarded(s, "jb_real_spin", "‖a‖ + |λ| is a JB-norm on real spin elements", || {
                let r = check_jb_axioms(&self.alg, NormOracle::RealSpin, self.n(), self.seed("axioms/jb_spin"))?;
                let check = single_value("jb_real_spin", tol, r.max_violation());
                Ok(vec![ReportEntry::from_check(s, "‖a‖ + |λ| is a JB-norm on real spin elements", &check)
                    .with_details(serde_json::to_value(&r)?)])
            }));
            out.extend(guarded(s, "spin_anticommutation", "sᵢ∘sⱼ = δᵢⱼ1", || {
                let unit = self.alg.unit();
                let mut worst: f64 = 0.0;
                for i in 1..=k {
                    for j in 1..=k {
                        let prod = self.alg.basis_element(i).jordan(&self.alg.basis_element(j))?;
                        let target = if i == j { unit.clone() } else { self.alg.zero() };
                        worst = worst.max(prod.distance(&target));
                        if desc.represented {
                            let (a, b) = (&desc.generators[i - 1], &desc.generators[j - 1]);
                            let anti = &(a * b) + &(b * a);
                            let n = a.rows();
                            let expected = if i == j {
                                crate::densemat::CMatrix::identity(n).scale_real(2.0)
                            } else {
                                crate::densemat::CMatrix::zeros(n, n)
                            };
                            worst = worst.max((&anti - &expected).max_abs());
                        }
                    }
                }
                Ok(vec![ReportEntry::from_check(s, "sᵢ∘sⱼ = δᵢⱼ1", &single_value("spin_anticommutation", 0.0, worst))])
            }));
        }
        if matches!(self.alg.kind(), AlgebraKind::Albert) {
            let ch_tol = self.cfg.tolerances.cayley_hamilton;
            out.extend(guarded(s, "cayley_hamilton", "x³ − T(x)x² + S(x)x − N(x)1 = 0", || {
                let check = sampled("cayley_hamilton", ch_tol, self.n(), |i| {
                    let z = self.ball("axioms/cayley_hamilton", i)?;
                    let re: Vec<f64> = z.coords().iter().map(|c| c.re * 4.0).collect();
                    let x = self.alg.real_element(&re)?;
                    let (t, sq, n) = cubic_invariants(&re);
                    let x2 = x.square();
                    let x3 = x2.jordan(&x)?;
                    let lhs = &(&x3 - &x2.scale_real(t)) + &(&x.scale_real(sq) - &self.alg.unit().scale_real(n));
                    let scale = x.coord_norm().max(1.0).powi(3);
                    Ok((lhs.coord_norm() / scale, vec![x]))
                })?;
                Ok(vec![ReportEntry::from_check(s, "x³ − T(x)x² + S(x)x − N(x)1 = 0", &check)])
            }));
        }
        let gmin = self.state.gram_min_eigenvalue();
        let check = single_value("state_faithfulness", 0.0, crate::jordan::FAITHFUL_TOL - gmin);
        let mut entry = ReportEntry::finding(s, "Gram matrix φ(bⱼ*∘bₖ) is positive definite", &check);
        entry.details = json!({ "gram_min_eigenvalue": finite(gmin) });
        out.push(entry);
        out
    }

    fn calculus(&self) -> Vec<ReportEntry> {
        let s = Suite::Calculus;
        let tol = self.cfg.tolerances.reconstruction;
        let sa = |label: &str, i: u64| generate_element(&self.alg, Distribution::Selfadjoint, self.seed(label), i);
        let mut out = Vec::new();
        let anchor = "Σλᵢeᵢ = x with orthogonal idempotents summing to 1";
        out.extend(guarded(s, "spectral_reconstruction", anchor, || {
            let check = sampled("spectral_reconstruction", tol, self.n(), |i| {
                let x = sa("calculus/spectral", i)?;
                let (sum, orth, rec) = spectral_decompose(&x)?.residuals(&x);
                Ok((sum.max(orth).max(rec) / x.coord_norm().max(1.0), vec![x]))
            })?;
            Ok(vec![ReportEntry::from_check(s, anchor, &check)])
        }));
        let anchor = "x = s∘|x| with s² = 1";
        out.extend(guarded(s, "polar_decomposition", anchor, || {
            let check = sampled("polar_decomposition", tol, self.n(), |i| {
                let x = sa("calculus/polar", i)?;
                let r = polar_real(&x)?.residuals(&x)?;
                Ok((r.factorization.max(r.symmetry_square).max(r.selfadjoint) / x.coord_norm().max(1.0), vec![x]))
            })?;
            Ok(vec![ReportEntry::from_check(s, anchor, &check)])
        }));
        let anchor = "x*∘x ≥ 0";
        out.extend(guarded(s, "positivity", anchor, || {
            let check = sampled("positivity", crate::calculus::POSITIVITY_TOL, self.n(), |i| {
                let x = generate_element(&self.alg, Distribution::Positive, self.seed("calculus/positive"), i)?;
                let d = spectral_decompose(&x)?;
                Ok((-d.min_eigenvalue() / d.spectral_radius().max(1.0), vec![x]))
            })?;
            Ok(vec![ReportEntry::from_check(s, anchor, &check)])
        }));
        let anchor = "e∘e = e";
        out.extend(guarded(s, "idempotents", anchor, || {
            let check = sampled("idempotents", 1e-10, self.n(), |i| {
                let e = generate_element(&self.alg, Distribution::Idempotent, self.seed("calculus/idempotent"), i)?;
                Ok((e.square().distance(&e), vec![e]))
            })?;
            Ok(vec![ReportEntry::from_check(s, anchor, &check)])
        }));
        let anchor = "π(f(x)) = f(π(x)) for f(t) = |t|^{3/2}";
        out.extend(guarded(s, "naturality", anchor, || {
            if !self.alg.is_represented() {
                return Err(Error::Unsupported(format!("{} has no matrix representation", self.alg)));
            }
            let f = |t: f64| t.abs().powf(1.5);
            let check = sampled("naturality", tol, self.n(), |i| {
                let x = sa("calculus/naturality", i)?;
                let intrinsic = apply_function(&x, f)?.represent()?;
                let ambient = hermitian_eig(&x.represent()?.hermitian_part())?.apply(|t| C64::new(f(t), 0.0));
                Ok(((&intrinsic - &ambient).max_abs() / x.coord_norm().max(1.0).powf(1.5), vec![x]))
            })?;
            Ok(vec![ReportEntry::from_check(s, anchor, &check)])
        }));
        out
    }

    /// Jordan *-automorphism `x ↦ {s x s} = 2s∘(s∘x) − x` for a sampled symmetry `s`.
    fn symmetry(&self) -> Result<JordanElement> {
        let e = generate_element(&self.alg, Distribution::Idempotent, self.seed("lp/symmetry"), 0)?;
        Ok(&e.scale_real(2.0) - &self.alg.unit())
    }

    fn lp(&self) -> Vec<ReportEntry> {
        let s = Suite::Lp;
        let n = self.n();
        let mut out = Vec::new();
        for &p in &self.cfg.p_grid {
            let pl = p_label(p);
            let anchor = "‖x + y‖_p ≤ ‖x‖_p + ‖y‖_p";
            out.extend(guarded(s, &format!("triangle({pl})"), anchor, || {
                let c = triangle_check(&self.state, p, Distribution::Ball, n, self.seed("lp/triangle"))?;
                Ok(vec![self.tracial_entry(s, anchor, &c)])
            }));
            let anchor = "‖x*‖_p = ‖x‖_p";
            out.extend(guarded(s, &format!("involution_isometry({pl})"), anchor, || {
                let c = involution_isometry_check(&self.state, p, n, self.seed("lp/involution"))?;
                Ok(vec![self.tracial_entry(s, anchor, &c)])
            }));
            let anchor = "‖U_s(x)‖_p = ‖x‖_p for a symmetry s";
            out.extend(guarded(s, &format!("automorphism_isometry({pl})"), anchor, || {
                let sym = self.symmetry()?;
                let map =
                    move |x: &JordanElement| -> Result<JordanElement> { Ok(&sym.jordan(&sym.jordan(x)?)?.scale_real(2.0) - x) };
                let c = automorphism_isometry_check(&map, &self.state, p, n, self.seed("lp/automorphism"))?;
                Ok(vec![self.tracial_entry(s, anchor, &c)])
            }));
        }
        let anchor = "‖x‖_p ≤ ‖x‖_q for p ≤ q";
        out.extend(guarded(s, "p_monotonicity", anchor, || {
            let seed = self.seed("lp/monotone");
            match p_monotonicity_check(&self.state, &self.cfg.p_grid, n, seed) {
                Err(Error::Unsupported(why)) => {
                    // fall back to the finite exponents when ‖·‖_∞ is unavailable
                    let finite_ps: Vec<f64> = self.cfg.p_grid.iter().copied().filter(|p| p.is_finite()).collect();
                    let c = p_monotonicity_check(&self.state, &finite_ps, n, seed)?;
                    Ok(vec![self.tracial_entry(s, anchor, &c).with_details(json!({ "exponents": "finite", "reason": why }))])
                }
                other => Ok(vec![self.tracial_entry(s, anchor, &other?)]),
            }
        }));
        let anchor = "‖x‖₂² = φ(x*∘x)";
        out.extend(guarded(s, "l2_consistency", anchor, || {
            let c = l2_consistency_check(&self.state, n, self.seed("lp/l2"))?;
            Ok(vec![ReportEntry::from_check(s, anchor, &c)])
        }));
        out
    }

    fn holder(&self) -> Vec<ReportEntry> {
        let s = Suite::Holder;
        let n = self.n();
        let asserted_matrix = matches!(self.alg.kind(), AlgebraKind::Matrix { .. }) && self.tracial();
        let schatten_ok = self.alg.is_represented() && self.tracial();
        let routes = [
            (NormRoute::Schatten, Distribution::Ball, schatten_ok, true),
            (NormRoute::FunctionalCalculus, Distribution::Selfadjoint, true, asserted_matrix),
            (NormRoute::FunctionalCalculus, Distribution::Ball, true, false),
        ];
        let tag = |route: NormRoute, dist: Distribution| {
            format!("{}:{}", if route == NormRoute::Schatten { "schatten" } else { "fc" }, dist.label())
        };
        let mut out = Vec::new();
        for &p in &self.cfg.p_grid {
            for &(route, dist, available, asserted) in &routes {
                if !available {
                    continue;
                }
                let entry_of = |anchor: &str, c: &CheckReport| {
                    let e = if asserted { ReportEntry::from_check(s, anchor, c) } else { ReportEntry::finding(s, anchor, c) };
                    renamed(e, format!("{}[{}]", c.name, tag(route, dist)))
                };
                if p >= 2.0 && p.is_finite() {
                    let anchor = "‖h∘k‖_r ≤ ‖h‖_p‖k‖_q, 1/r = 1/p + 1/q";
                    let name = format!("holder({p},{p},{})[{}]", p / 2.0, tag(route, dist));
                    out.extend(guarded(s, &name, anchor, || {
                        let c =
                            crate::lp::holder_check(&self.state, (p, p, p / 2.0), route, dist, n, self.seed("holder/triple"))?;
                        Ok(vec![entry_of(anchor, &c)])
                    }));
                }
                let anchor = "‖h∘k‖_p ≤ ‖h‖_∞‖k‖_p";
                let name = format!("module_action({})[{}]", p_label(p), tag(route, dist));
                out.extend(guarded(s, &name, anchor, || {
                    let c = module_action_check(&self.state, p, route, dist, n, self.seed("holder/module"))?;
                    Ok(vec![entry_of(anchor, &c)])
                }));
            }
        }
        out
    }

    fn spec(&self, theta: f64) -> Result<CoupleSpec> {
        if !self.alg.is_represented() {
            return Err(Error::Unsupported(format!("no certified endpoint norms on {}", self.alg)));
        }
        CoupleSpec::new(&self.state, theta)
    }

    fn duality(&self) -> Vec<ReportEntry> {
        let s = Suite::Duality;
        let n = self.n();
        let mut out = Vec::new();
        for &p in &self.cfg.p_grid {
            let anchor = "sup |φ(x∘y)|/‖y‖_{p*} = ‖x‖_p on selfadjoints";
            out.extend(guarded(s, &format!("duality_attainment({})", p_label(p)), anchor, || {
                let c = duality_attainment_check(&self.state, p, n, self.seed("duality/attainment"))?;
                Ok(vec![self.tracial_entry(s, anchor, &c)])
            }));
        }
        let anchor = "‖φ_x‖ = ‖P(R_x)‖₁ attained by the polar witness";
        out.extend(guarded(s, "endpoint1_duality", anchor, || {
            self.spec(0.5)?;
            let c = endpoint1_duality_check(&self.state, n, self.seed("duality/endpoint1"))?;
            Ok(vec![ReportEntry::from_check(s, anchor, &c)])
        }));
        let anchor = "‖φ_x‖ ≤ ‖φ‖‖x‖_∞";
        out.extend(guarded(s, "phi_x_contractive", anchor, || {
            let spec = self.spec(0.5)?;
            let c = sampled("phi_x_contractive", 1e-8, n, |i| {
                let x = self.ball("duality/phi_x", i)?;
                Ok((endpoint1_norm(&x, &spec)?.value() - x.sup_norm()?, vec![x]))
            })?;
            Ok(vec![ReportEntry::from_check(s, anchor, &c)])
        }));
        out
    }

    fn expectation(&self) -> Vec<ReportEntry> {
        let s = Suite::Expectation;
        let n = self.n();
        let tol = self.cfg.tolerances.expectation;
        let subs =
            if self.cfg.subalgebras.is_empty() { SubalgebraSpec::defaults_for(&self.alg) } else { self.cfg.subalgebras.clone() };
        let mut out = Vec::new();
        for sub in subs {
            let label = sub.label();
            let anchor = "τ(Q(x)∘y) = τ(x∘y) for y in B";
            let q = match sub.build(&self.alg) {
                Ok(q) => q,
                Err(e) => {
                    out.extend(guarded(s, &label, anchor, || Err(e)));
                    continue;
                }
            };
            out.extend(guarded(s, &format!("{label}:verify"), anchor, || {
                let mut entries = Vec::new();
                let report = verify_expectation(&q, n, self.seed(&format!("expectation/{label}")))?;
                for c in &report.checks {
                    let e = ReportEntry::from_check(s, anchor, c);
                    entries.push(renamed(e, format!("{label}:{}", c.name)).with_details(json!({ "digest": report.digest })));
                }
                let u = uniqueness_residual(&q, self.seed(&format!("expectation/{label}/uniqueness")))?;
                let e = ReportEntry::from_check(s, "such a map is unique", &single_value("uniqueness", tol, u));
                entries.push(renamed(e, format!("{label}:uniqueness")));
                Ok(entries)
            }));
            for (pi, &p) in self.cfg.p_grid.iter().enumerate() {
                let anchor = "‖Q(x)‖_p ≤ ‖x‖_p";
                out.extend(guarded(s, &format!("{label}:lp_contractivity({})", p_label(p)), anchor, || {
                    let tau = StateFunctional::canonical_trace(&self.alg)?;
                    let r = lp_contractivity_check(&q, &tau, p, n, self.seed(&format!("expectation/{label}/lp")))?;
                    let mut entries = Vec::new();
                    let e = ReportEntry::from_check(s, anchor, &r.contraction);
                    entries.push(renamed(e, format!("{label}:{}", r.contraction.name)));
                    if pi == 0 {
                        let e = ReportEntry::from_check(s, "Q(x) ≥ 0 for x ≥ 0", &r.positivity);
                        entries.push(renamed(e, format!("{label}:{}", r.positivity.name)));
                    }
                    if let Some(range) = &r.range_norms {
                        let e = ReportEntry::from_check(s, "‖Q(x)‖_p computed in the range algebra", range);
                        entries.push(renamed(e, format!("{label}:{}", range.name)));
                    }
                    Ok(entries)
                }));
            }
        }
        out
    }

    /// Brackets `x_i` at `θ = 1/p` and compares with `oracle` where one exists.
    fn bracket_entry(
        &self,
        suite: Suite,
        name: &str,
        anchor: &str,
        p: f64,
        dist: Distribution,
        oracle: impl Fn(&JordanElement) -> Result<Option<f64>> + Sync,
    ) -> Result<ReportEntry> {
        let spec = self.spec(1.0 / p)?;
        let label = format!("{}/{name}", suite.label());
        let budget = InterpBudget { seed: self.seed(&label), ..self.cfg.budget.clone() };
        let runs = (0..self.cfg.samples.interp as u64)
            .into_par_iter()
            .map(|i| -> Result<(JordanElement, NormBracket, Option<f64>)> {
                let x = generate_element(&self.alg, dist, self.seed(&label), i)?;
                let b = bracket(&x, &spec, &budget)?;
                let v = oracle(&x)?;
                Ok((x, b, v))
            })
            .collect::<Result<Vec<_>>>()?;
        let tol = self.cfg.tolerances.bracket;
        let outcomes = runs
            .iter()
            .enumerate()
            .filter_map(|(i, (x, b, v))| {
                let v = (*v)?;
                let miss = (b.lower - v).max(v - b.upper) / v.max(1e-300);
                let w = (miss > tol).then(|| Witness {
                    index: i as u64,
                    elements: vec![coords_pairs(x)],
                    lhs: v,
                    rhs: if v < b.lower { b.lower } else { b.upper },
                });
                Some((i as u64, miss, w))
            })
            .collect();
        let check = collect_report(name, tol, outcomes);
        let mut entry = ReportEntry::from_check(suite, anchor, &check);
        entry.instances = runs.len();
        if entry.status == Status::Pass && runs.iter().any(|(_, b, _)| !b.target_met) {
            entry.status = Status::Inconclusive;
        }
        let brackets: Vec<_> = runs
            .iter()
            .enumerate()
            .map(|(i, (_, b, v))| {
                json!({
                    "index": i,
                    "lower": b.lower,
                    "upper": b.upper,
                    "ratio": finite(b.ratio()),
                    "degree": b.degree,
                    "grid": b.grid,
                    "target_met": b.target_met,
                    "oracle": v,
                    "candidate": b.certificate.candidate,
                    "candidate_family": b.certificate.candidate_family,
                    "witness": b.certificate.witness_name,
                })
            })
            .collect();
        entry.details = json!({ "theta": 1.0 / p, "brackets": brackets });
        Ok(entry)
    }

    fn interp(&self) -> Vec<ReportEntry> {
        let s = Suite::Interp;
        let mut out = Vec::new();
        let ps: Vec<f64> = self.cfg.p_grid.iter().copied().filter(|p| *p > 1.0 && p.is_finite()).collect();
        if ps.is_empty() {
            out.push(ReportEntry::unsupported(s, "bracket", "", "p-grid has no exponent in (1, ∞)"));
        }
        for p in ps {
            let name = format!("bracket({p})");
            let anchor = if p == 2.0 {
                "‖x‖_{1/2} = √φ(x*∘x)"
            } else {
                "‖x‖_{1/p} = normalized Schatten-p norm under a trace"
            };
            out.extend(guarded(s, &name, anchor, || {
                let tracial = self.tracial();
                let entry = self.bracket_entry(s, &name, anchor, p, Distribution::Ball, |x| {
                    if p == 2.0 {
                        Ok(Some(lp_norm(x, &self.state, 2.0)?.value))
                    } else if tracial {
                        Ok(Some(ambient_schatten_norm(x, p)?))
                    } else {
                        Ok(None)
                    }
                })?;
                Ok(vec![entry])
            }));
        }
        out
    }

    fn iochum(&self) -> Vec<ReportEntry> {
        let s = Suite::Iochum;
        let mut out = Vec::new();
        if !matches!(self.alg.kind(), AlgebraKind::Spin(_)) {
            out.push(ReportEntry::unsupported(s, "iochum", "", format!("{} is not a spin factor", self.alg)));
            return out;
        }
        for &p in &self.cfg.p_grid {
            let anchor = "(τ|x|^p)^{1/p} = lp_norm on selfadjoints";
            out.extend(guarded(s, &format!("iochum_agreement({})", p_label(p)), anchor, || {
                let c = iochum_agreement_check(&self.state, p, self.n(), self.seed("iochum/agreement"))?;
                Ok(vec![self.tracial_entry(s, anchor, &c)])
            }));
            if p > 1.0 && p.is_finite() {
                let name = format!("iochum_bracket({p})");
                let anchor = "interpolation norm = (τ|x|^p)^{1/p} on selfadjoint spin elements";
                out.extend(guarded(s, &name, anchor, || {
                    if !self.tracial() {
                        return Err(Error::Unsupported("the selfadjoint identification is tracial".into()));
                    }
                    let entry = self.bracket_entry(s, &name, anchor, p, Distribution::Selfadjoint, |x| {
                        Ok(Some(iochum_norm(x, &self.state, p)?.value))
                    })?;
                    Ok(vec![entry])
                }));
            }
        }
        out
    }

    fn embedding(&self) -> Vec<ReportEntry> {
        let s = Suite::Embedding;
        let tol = self.cfg.tolerances.embedding;
        let n = self.n();
        let mut out = Vec::new();
        match self.alg.kind() {
            AlgebraKind::Spin(desc) => {
                let k = desc.k;
                for &p in &self.cfg.p_grid {
                    let pl = p_label(p);
                    let anchor = "‖x‖_p = ‖π(x)‖_{S_p} normalized, x selfadjoint";
                    out.extend(guarded(s, &format!("spin_schatten({pl})"), anchor, || {
                        let rep = pauli_spin_representation(k)?;
                        let tau = StateFunctional::canonical_trace(&rep.spin)?;
                        let c = sampled(&format!("spin_schatten({pl})"), tol, n, |i| {
                            let x = generate_element(&rep.spin, Distribution::Selfadjoint, self.seed("embedding/spin"), i)?;
                            let a = lp_norm(&x, &tau, p)?.value;
                            let b = ambient_schatten_norm(&rep.map(&x)?, p)?;
                            Ok(((a - b).abs() / b.max(1.0), vec![x]))
                        })?;
                        Ok(vec![ReportEntry::from_check(s, anchor, &c)])
                    }));
                    let anchor = "lp_norm in the spin factor = lp_norm of π(x) in M_{2ⁿ}";
                    out.extend(guarded(s, &format!("spin_naturality({pl})"), anchor, || {
                        let rep = pauli_spin_representation(k)?;
                        let tau = StateFunctional::canonical_trace(&rep.spin)?;
                        let amb = StateFunctional::canonical_trace(&rep.ambient)?;
                        let c = sampled(&format!("spin_naturality({pl})"), tol, n, |i| {
                            let x = generate_element(&rep.spin, Distribution::Ball, self.seed("embedding/naturality"), i)?;
                            let a = lp_norm(&x, &tau, p)?.value;
                            let b = lp_norm(&rep.map(&x)?, &amb, p)?.value;
                            Ok(((a - b).abs() / b.max(1.0), vec![x]))
                        })?;
                        Ok(vec![ReportEntry::from_check(s, anchor, &c)])
                    }));
                    let anchor = "‖x‖_p = ‖π(x)‖_{S_p} normalized, x complex";
                    out.extend(guarded(s, &format!("complex_schatten_gap({pl})"), anchor, || {
                        let rep = pauli_spin_representation(k)?;
                        let tau = StateFunctional::canonical_trace(&rep.spin)?;
                        let c = sampled(&format!("complex_schatten_gap({pl})"), tol, n, |i| {
                            let x = generate_element(&rep.spin, Distribution::Ball, self.seed("embedding/complex"), i)?;
                            let a = lp_norm(&x, &tau, p)?.value;
                            let b = ambient_schatten_norm(&rep.map(&x)?, p)?;
                            Ok(((a - b).abs() / b.max(1.0), vec![x]))
                        })?;
                        Ok(vec![ReportEntry::finding(s, anchor, &c)])
                    }));
                }
            }
            AlgebraKind::Matrix { n: dim } => {
                let dim = *dim;
                for &p in &self.cfg.p_grid {
                    let pl = p_label(p);
                    let anchor = "‖x ⊗ 1‖_p = ‖x‖_p along the tower M_n ⊂ M_{2n}";
                    out.extend(guarded(s, &format!("tower({pl})"), anchor, || {
                        let big = matrix_jordan(2 * dim)?;
                        let tau = StateFunctional::canonical_trace(&self.alg)?;
                        let tau_big = StateFunctional::canonical_trace(&big)?;
                        let c = sampled(&format!("tower({pl})"), tol, n, |i| {
                            let x = self.ball("embedding/tower", i)?;
                            let (y, _) = big.from_matrix(&tower_embed(&x.represent()?)?)?;
                            let a = lp_norm(&x, &tau, p)?.value;
                            let b = lp_norm(&y, &tau_big, p)?.value;
                            Ok(((a - b).abs() / b.max(1.0), vec![x]))
                        })?;
                        Ok(vec![ReportEntry::from_check(s, anchor, &c)])
                    }));
                }
            }
            _ => out.push(ReportEntry::unsupported(s, "embedding", "", format!("no embedding test for {}", self.alg))),
        }
        out
    }

    fn ricard_xu(&self) -> Vec<ReportEntry> {
        let s = Suite::RicardXu;
        let mut out = Vec::new();
        if !matches!(self.alg.kind(), AlgebraKind::Matrix { .. }) {
            out.push(ReportEntry::unsupported(s, "ricard_xu", "", format!("{} is not a full matrix algebra", self.alg)));
            return out;
        }
        for &p in &self.cfg.p_grid {
            if !(p > 1.0 && p.is_finite()) {
                continue;
            }
            let name = format!("window({p})");
            let anchor = "midpoint / ‖(D^{1/p}x + xD^{1/p})/2‖_{S_p} stays in a fixed window";
            out.extend(guarded(s, &name, anchor, || {
                let mut entry = self.bracket_entry(s, &name, anchor, p, Distribution::Ball, |_| Ok(None))?;
                let ratios = entry.details["brackets"]
                    .as_array()
                    .cloned()
                    .unwrap_or_default()
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        let x =
                            generate_element(&self.alg, Distribution::Ball, self.seed(&format!("ricard_xu/{name}")), i as u64)?;
                        let mid = 0.5 * (b["lower"].as_f64().unwrap_or(0.0) + b["upper"].as_f64().unwrap_or(0.0));
                        Ok(mid / ricard_xu_reference(&x, &self.state, p)?)
                    })
                    .collect::<Result<Vec<f64>>>()?;
                let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                entry.status = Status::Finding;
                entry.details["ratios"] = json!(ratios);
                entry.details["window"] = json!([finite(lo), finite(hi)]);
                Ok(vec![entry])
            }));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{AlgebraSpec, StateSpec};
    use crate::harness::report::EXIT_PASS;

    #[test]
    fn empty_suite_list_gives_empty_passing_report() {
        let cfg = CampaignConfig::new(AlgebraSpec::Matrix { n: 2 }, vec![]);
        let r = run_campaign(&cfg).unwrap();
        assert!(r.entries.is_empty());
        assert_eq!(r.exit_code, EXIT_PASS);
    }

    #[test]
    fn axioms_on_matrix_two_pass_and_are_deterministic() {
        let mut cfg = CampaignConfig::new(AlgebraSpec::Matrix { n: 2 }, vec![Suite::Axioms, Suite::Calculus]);
        cfg.samples.checks = 40;
        let a = run_campaign(&cfg).unwrap();
        assert_eq!(a.exit_code, EXIT_PASS, "{}", a.to_json());
        let b = run_campaign(&cfg).unwrap();
        assert_eq!(a.without_runtime().to_json(), b.without_runtime().to_json());
        assert!(a.entries.iter().all(|e| !e.anchor.is_empty()));
    }

    #[test]
    fn interp_on_albert_is_unsupported() {
        let mut cfg = CampaignConfig::new(AlgebraSpec::Albert {}, vec![Suite::Interp, Suite::RicardXu]);
        cfg.p_grid = vec![2.0];
        let r = run_campaign(&cfg).unwrap();
        assert!(!r.entries.is_empty());
        assert!(r.entries.iter().all(|e| e.status == Status::Unsupported), "{}", r.to_json());
    }

    #[test]
    fn non_faithful_state_makes_interp_unsupported() {
        let mut cfg = CampaignConfig::new(AlgebraSpec::Matrix { n: 2 }, vec![Suite::Interp]);
        cfg.state = StateSpec::AmbientDiag { values: vec![1.0, 0.0] };
        cfg.p_grid = vec![2.0];
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.entries[0].status, Status::Unsupported);
    }
}
