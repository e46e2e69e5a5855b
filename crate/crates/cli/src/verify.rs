//! `verify`: every applicable localization claim, checked against the Aberth
//! oracle. Each check is a named clause; a failed clause carries the
//! quantities that violate it.

use std::fmt::Write as _;

use lemniscate::companion::{mk_direct, mk_structured, scaled_gershgorin_disks};
use lemniscate::regions::{decompose, omega_regions, upsilon_regions};
use lemniscate::roots_complex::{all_zeros, residual_bound};
use lemniscate::roots_real::cauchy_radii;
use lemniscate::{Complex64, LemniscateRegion, Polynomial, ZeroSet};
use serde::Serialize;
use serde_json::json;

use crate::{CliError, GlobalArgs, Input, Report, VerifyArgs};

/// Membership slack relative to the region level.
const MEMBERSHIP_SLACK: f64 = 1e-9;
/// Radius slack for the zero split and annulus checks, relative to `1 + r`.
const SPLIT_SLACK: f64 = 1e-7;
const DUALITY_TOL: f64 = 1e-9;
const STRUCTURE_TOL: f64 = 1e-10;
/// Sample points per split index for the disk-pair checks.
const DISK_SAMPLES: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct Clause {
    pub clause: &'static str,
    pub k: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
struct Clauses(Vec<Clause>);

impl Clauses {
    fn check(&mut self, clause: &'static str, k: Option<usize>, passed: bool, detail: impl FnOnce() -> String) {
        self.0.push(Clause {
            clause,
            k,
            passed,
            detail: if passed { String::new() } else { detail() },
        });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn lowered(mut region: LemniscateRegion, factor: f64) -> LemniscateRegion {
    region.level *= factor;
    region
}

/// Zeros outside `region`, as `(zero, |q(z)|)`.
fn outside(region: &LemniscateRegion, zeros: &[Complex64]) -> Vec<(Complex64, f64)> {
    zeros
        .iter()
        .filter_map(|&z| {
            let m = region.modulus(z).ok()?;
            (m > region.level * (1.0 + MEMBERSHIP_SLACK)).then_some((z, m))
        })
        .collect()
}

fn containment(out: &mut Clauses, name: &'static str, k: usize, region: &LemniscateRegion, zeros: &[Complex64]) {
    let bad = outside(region, zeros);
    out.check(name, Some(k), bad.is_empty(), || {
        format!("level {:.12e}; zeros outside: {:?}", region.level, bad)
    });
}

/// Counting rule on a certified region: every component holds the
/// predicted number of oracle zeros.
fn counting(out: &mut Clauses, k: usize, region: &LemniscateRegion, zeros: &ZeroSet, res: usize) {
    let certified = matches!(region.disjointness_certificate(None), Ok(c) if c.certified);
    if !certified {
        return;
    }
    let decomposition = region
        .default_window()
        .and_then(|w| decompose(region, &w, res, Some(zeros)));
    match decomposition {
        Ok(d) => {
            let counts: Vec<_> = d
                .components
                .iter()
                .map(|c| (c.predicted_zeros, c.observed_zeros.unwrap_or(0)))
                .collect();
            out.check("counting-rule", Some(k), d.mismatches.is_empty(), || {
                format!("{:?}: (predicted, observed) per component {:?}", region.kind, counts)
            });
        }
        Err(lemniscate::Error::ResolutionTooCoarse(_)) => {}
        Err(e) => out.check("counting-rule", Some(k), false, || format!("{:?}: {e}", region.kind)),
    }
}

fn sample_points(radii: &[f64]) -> Vec<f64> {
    let lo = radii.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0;
    let hi = radii.iter().cloned().fold(0.0, f64::max) * 2.0;
    (0..DISK_SAMPLES)
        .map(|i| lo * (hi / lo).powf(i as f64 / (DISK_SAMPLES - 1) as f64))
        .collect()
}

fn companion_checks(out: &mut Clauses, p: &Polynomial, k: usize, xs: &[f64], zeros: &[Complex64], split: Option<(f64, f64)>) -> Result<(), CliError> {
    let n = p.degree();
    let diff = mk_structured(p, n - k)?.max_relative_difference(&mk_direct(p, n - k)?);
    out.check("companion-structure", Some(k), diff <= STRUCTURE_TOL, || {
        format!("structured and direct M_{} differ by {diff:e}", n - k)
    });
    let base = p.associated(n - k)?;
    let images: Vec<Complex64> = zeros.iter().map(|&z| base.eval(z)).collect();
    let f = p.pellet_poly(k)?;
    let f_scale = f.coeffs().iter().map(|a| a.abs()).fold(0.0, f64::max);
    let mut xs = xs.to_vec();
    if let Some((r, big_r)) = split {
        xs.push((r * big_r).sqrt());
    }
    for &x in &xs {
        let pair = match scaled_gershgorin_disks(p, k, x) {
            Ok(pair) => pair,
            Err(e) => {
                out.check("column-sum-collapse", Some(k), false, || format!("x = {x}: {e}"));
                continue;
            }
        };
        let fx = f.eval(x);
        if fx.abs() > 1e-9 * f_scale * x.max(1.0).powi(n as i32) {
            out.check("disjointness-criterion", Some(k), pair.disjoint() == (fx < 0.0), || {
                format!("x = {x}: disjoint = {}, f_k(x) = {fx:e}", pair.disjoint())
            });
        }
        let missing: Vec<_> = images
            .iter()
            .filter(|&&w| !pair.contains(w, MEMBERSHIP_SLACK * (1.0 + w.norm())))
            .collect();
        out.check("eigenvalue-containment", Some(k), missing.is_empty(), || {
            format!("x = {x}: p_(n-k)(z_i) outside both disks: {missing:?}")
        });
    }
    if let Some((r, big_r)) = split {
        let x = (r * big_r).sqrt();
        let pair = scaled_gershgorin_disks(p, k, x)?;
        let inner = images.iter().filter(|&&w| pair.inner.contains(w, MEMBERSHIP_SLACK)).count();
        out.check("eigenvalue-split", Some(k), inner == k, || {
            format!("x = {x}: {inner} of p_(n-k)(z_i) in the disk at 0, expected {k}")
        });
    }
    Ok(())
}

pub fn run(input: &Input, args: &VerifyArgs, g: &GlobalArgs) -> Result<Report, CliError> {
    let p = input.reduced();
    p.require_theorem_hypotheses()?;
    let factor = match args.perturb_level {
        Some(f) if !(0.0..1.0).contains(&f) => {
            return Err(CliError::Parse(format!("--perturb-level {f} outside [0, 1)")))
        }
        Some(f) => 1.0 - f,
        None => 1.0,
    };
    let n = p.degree();
    let zero_set = all_zeros(p)?;
    let zeros = &zero_set.zeros;
    let radii = cauchy_radii(p, g.tol)?;
    let xs = sample_points(&radii);
    let mut out = Clauses::default();

    let bound = residual_bound(p, zeros);
    let worst = zero_set.residuals.iter().cloned().fold(0.0, f64::max);
    out.check("oracle-residuals", None, worst <= bound, || {
        format!("max residual {worst:e} exceeds {bound:e}")
    });

    let mut splits = Vec::new();
    for k in 1..n {
        let a_k = p.abs_coeff(k);
        let u = upsilon_regions(p, k, g.tol)?;
        let (u1, u2) = (lowered(u.upsilon1, factor), lowered(u.upsilon2, factor));
        containment(&mut out, "upsilon1-containment", k, &u1, zeros);
        containment(&mut out, "upsilon2-containment", k, &u2, zeros);
        let expected1 = p.mu(k, u.s_k)? + a_k;
        let expected2 = p.majorant_at(n - k, u.s_k_minus_1)? + a_k;
        out.check(
            "upsilon-level-duality",
            Some(k),
            rel(u1.level, expected1) <= DUALITY_TOL && rel(u2.level, expected2) <= DUALITY_TOL,
            || {
                format!(
                    "levels {:.12e}, {:.12e}; dual expressions {expected1:.12e}, {expected2:.12e}",
                    u1.level, u2.level
                )
            },
        );
        counting(&mut out, k, &u1, &zero_set, args.res);
        counting(&mut out, k, &u2, &zero_set, args.res);

        let split = match omega_regions(p, k, g.tol) {
            Ok(o) => Some(o),
            Err(lemniscate::Error::PelletInapplicable { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        if let Some(o) = &split {
            let (r, big_r) = (o.r, o.big_r);
            splits.push(json!({"k": k, "r": r, "R": big_r}));
            let (o1, o2) = (lowered(o.omega1.clone(), factor), lowered(o.omega2.clone(), factor));
            let small: Vec<Complex64> = zeros
                .iter()
                .cloned()
                .filter(|z| z.norm() <= r + SPLIT_SLACK * (1.0 + r))
                .collect();
            let large: Vec<Complex64> = zeros
                .iter()
                .cloned()
                .filter(|z| z.norm() > r + SPLIT_SLACK * (1.0 + r))
                .collect();
            out.check("pellet-split", Some(k), small.len() == k, || {
                format!("{} zeros with |z| <= r = {r:.12}, expected {k}", small.len())
            });
            let eps = SPLIT_SLACK * (1.0 + big_r);
            let in_annulus: Vec<f64> = zeros
                .iter()
                .map(|z| z.norm())
                .filter(|&m| m > r + eps && m < big_r - eps)
                .collect();
            out.check("annulus-empty", Some(k), in_annulus.is_empty(), || {
                format!("moduli {in_annulus:?} inside ({r:.12}, {big_r:.12})")
            });
            containment(&mut out, "omega1-containment", k, &o1, &small);
            containment(&mut out, "omega2-containment", k, &o2, &large);
            let expected1 = a_k - p.mu(k, r)?;
            let expected2 = a_k - p.majorant_at(n - k, big_r)?;
            out.check(
                "omega-level-duality",
                Some(k),
                rel(o1.level, expected1) <= DUALITY_TOL && rel(o2.level, expected2) <= DUALITY_TOL,
                || {
                    format!(
                        "levels {:.12e}, {:.12e}; dual expressions {expected1:.12e}, {expected2:.12e}",
                        o1.level, o2.level
                    )
                },
            );
            counting(&mut out, k, &o1, &zero_set, args.res);
            counting(&mut out, k, &o2, &zero_set, args.res);
        }
        companion_checks(&mut out, p, k, &xs, zeros, split.as_ref().map(|o| (o.r, o.big_r)))?;
    }

    let clauses = out.0;
    let failed: Vec<&Clause> = clauses.iter().filter(|c| !c.passed).collect();
    let ok = failed.is_empty();
    let mut text = String::new();
    for c in &failed {
        let k = c.k.map(|k| format!(" (k = {k})")).unwrap_or_default();
        let _ = writeln!(text, "FAIL {}{k}: {}", c.clause, c.detail);
    }
    if !g.quiet {
        for s in &splits {
            let k = s["k"].as_u64().unwrap_or(0);
            let _ = writeln!(text, "k = {k}: {}/{} zero split", k, n as u64 - k);
        }
    }
    let _ = writeln!(
        text,
        "{}: {} of {} checks passed",
        if ok { "pass" } else { "fail" },
        clauses.len() - failed.len(),
        clauses.len()
    );
    let json = json!({
        "input": input.echo(),
        "passed": ok,
        "perturb_level": args.perturb_level,
        "splits": splits,
        "checks": clauses.len(),
        "failures": failed,
    });
    Ok(Report { json, text, ok })
}
