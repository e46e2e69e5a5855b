//! `analyze` and `scan`.

use std::fmt::Write as _;

use lemniscate::regions::{decompose, omega_regions, upsilon_regions};
use lemniscate::roots_complex::{all_zeros, zeros_with_origin};
use lemniscate::roots_real::{cauchy_radii, pellet_roots, pellet_scan};
use lemniscate::{LemniscateRegion, PelletBracket, PelletOutcome, Polynomial, ZeroSet};
use serde_json::{json, Value};

use crate::json::{complex, complexes, real};
use crate::{AnalyzeArgs, CliError, GlobalArgs, Input, Report};

/// Split indices requested on the command line, validated against `p`.
pub fn split_indices(p: &Polynomial, requested: &[usize]) -> Result<Vec<usize>, CliError> {
    let n = p.degree();
    if requested.is_empty() {
        return Ok((1..n).collect());
    }
    for &k in requested {
        if k == 0 || k >= n {
            return Err(CliError::Parse(format!("split index {k} outside [1, {}]", n - 1)));
        }
    }
    Ok(requested.to_vec())
}

pub fn pellet_json(bracket: &PelletBracket) -> Value {
    match bracket.outcome {
        PelletOutcome::Separated { r, big_r } => json!({"k": bracket.k, "outcome": "separated", "r": r, "R": big_r}),
        PelletOutcome::Tangent { rho } => json!({"k": bracket.k, "outcome": "tangent", "rho": rho}),
        PelletOutcome::Inapplicable { min_value, minimizer } => json!({
            "k": bracket.k,
            "outcome": "inapplicable",
            "min_value": min_value,
            "minimizer": minimizer,
        }),
    }
}

fn pellet_text(bracket: &PelletBracket) -> String {
    match bracket.outcome {
        PelletOutcome::Separated { r, big_r } => format!("separated, r = {r:.10}, R = {big_r:.10}"),
        PelletOutcome::Tangent { rho } => format!("tangent, rho = {rho:.10}"),
        PelletOutcome::Inapplicable { min_value, minimizer } => {
            format!("inapplicable, min g = {min_value:.6e} at x = {minimizer:.6}")
        }
    }
}

/// Level, foci, certificate and grid decomposition of one region. Failures
/// of the certificate or the decomposition are reported inline.
pub fn region_json(region: &LemniscateRegion, eta: Option<f64>, res: usize, zeros: &ZeroSet) -> Value {
    let certificate = match region.disjointness_certificate(eta) {
        Ok(c) => json!({"certified": c.certified, "eta_used": c.eta_used}),
        Err(e) => json!({"certified": false, "error": e.to_string()}),
    };
    let decomposition = region
        .default_window()
        .and_then(|w| decompose(region, &w, res, Some(zeros)))
        .map(|d| serde_json::to_value(&d).expect("decomposition serializes"))
        .unwrap_or_else(|e| json!({"error": e.to_string()}));
    json!({
        "kind": region.kind,
        "k": region.k,
        "level": region.level,
        "foci": complexes(&region.foci),
        "certificate": certificate,
        "decomposition": decomposition,
    })
}

fn region_text(out: &mut String, name: &str, v: &Value) {
    let comps = v["decomposition"]["components"].as_array();
    let _ = write!(
        out,
        "  {name}: level {:.10}, {} foci, certified {}",
        v["level"].as_f64().unwrap_or(f64::NAN),
        v["foci"].as_array().map_or(0, |f| f.len()),
        v["certificate"]["certified"],
    );
    match comps {
        Some(comps) => {
            let counts: Vec<String> = comps
                .iter()
                .map(|c| format!("{}/{}", c["predicted_zeros"], c["observed_zeros"]))
                .collect();
            let _ = writeln!(out, ", components (predicted/observed) [{}]", counts.join(", "));
        }
        None => {
            let _ = writeln!(out, ", decomposition: {}", v["decomposition"]["error"]);
        }
    }
}

pub fn run(input: &Input, args: &AnalyzeArgs, g: &GlobalArgs) -> Result<Report, CliError> {
    let p = input.reduced();
    p.require_theorem_hypotheses()?;
    let ks = split_indices(p, &args.k)?;
    let zeros = all_zeros(p)?;
    let radii = cauchy_radii(p, g.tol)?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: degree {} (origin multiplicity {})",
        input.source,
        input.monic.degree(),
        input.deflation.origin_multiplicity
    );
    let _ = writeln!(
        text,
        "Cauchy radii: {}",
        radii.iter().map(|s| format!("{s:.10}")).collect::<Vec<_>>().join(", ")
    );

    let mut per_k = Vec::new();
    for &k in &ks {
        let bracket = pellet_roots(p, k, g.tol)?;
        let _ = writeln!(text, "k = {k}: {}", pellet_text(&bracket));
        let omega = match omega_regions(p, k, g.tol) {
            Ok(o) => {
                let o1 = region_json(&o.omega1, args.eta, args.res, &zeros);
                let o2 = region_json(&o.omega2, args.eta, args.res, &zeros);
                region_text(&mut text, "Omega1", &o1);
                region_text(&mut text, "Omega2", &o2);
                let _ = writeln!(text, "    Omega2 foci: {}", foci_text(&o.omega2.foci));
                json!({"omega1": o1, "omega2": o2})
            }
            Err(lemniscate::Error::PelletInapplicable { .. }) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        let u = upsilon_regions(p, k, g.tol)?;
        let u1 = region_json(&u.upsilon1, args.eta, args.res, &zeros);
        let u2 = region_json(&u.upsilon2, args.eta, args.res, &zeros);
        if !g.quiet {
            region_text(&mut text, "Upsilon1", &u1);
            region_text(&mut text, "Upsilon2", &u2);
        }
        per_k.push(json!({
            "k": k,
            "pellet": pellet_json(&bracket),
            "omega": omega,
            "upsilon": {"s_k": u.s_k, "s_k_minus_1": u.s_k_minus_1, "upsilon1": u1, "upsilon2": u2},
        }));
    }

    let full = zeros_with_origin(&input.monic)?;
    if !g.quiet {
        let _ = writeln!(text, "zeros (modulus):");
        for z in full.iter() {
            let _ = writeln!(text, "  {:+.10} {:+.10}i  ({:.10})", z.re, z.im, z.norm());
        }
    }
    let json = json!({
        "input": input.echo(),
        "cauchy_radii": radii,
        "splits": per_k,
        "zeros": zeros_json(&full),
    });
    Ok(Report { json, text, ok: true })
}

fn foci_text(foci: &[lemniscate::Complex64]) -> String {
    foci.iter()
        .map(|f| format!("{:.4}{:+.4}i", f.re, f.im))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn zeros_json(zeros: &ZeroSet) -> Value {
    Value::Array(
        zeros
            .iter()
            .zip(&zeros.residuals)
            .map(|(&z, &res)| json!({"z": complex(z), "modulus": z.norm(), "residual": real(res)}))
            .collect(),
    )
}

pub fn scan(input: &Input, g: &GlobalArgs) -> Result<Report, CliError> {
    let p = input.reduced();
    p.require_theorem_hypotheses()?;
    let brackets = pellet_scan(p, g.tol)?;
    let mut text = String::new();
    for b in &brackets {
        let _ = writeln!(text, "k = {}: {}", b.k, pellet_text(b));
    }
    let json = json!({
        "input": input.echo(),
        "pellet": brackets.iter().map(pellet_json).collect::<Vec<_>>(),
    });
    Ok(Report { json, text, ok: true })
}
