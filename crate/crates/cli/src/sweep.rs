//! `sweep`: the two scaled Gershgorin disks of `M_{n-k}` as the scaling `x`
//! runs over a range, with the point where their radii coincide.

use std::fmt::Write as _;

use lemniscate::companion::scaled_gershgorin_disks;
use lemniscate::roots_real::equal_radius_point;
use serde_json::json;

use crate::analyze::split_indices;
use crate::json::complex;
use crate::{CliError, GlobalArgs, Input, Report, SweepArgs};

/// `steps` points from `from` to `to` inclusive.
pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![from];
    }
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

pub fn run(input: &Input, args: &SweepArgs, g: &GlobalArgs) -> Result<Report, CliError> {
    let p = input.reduced();
    p.require_theorem_hypotheses()?;
    let k = split_indices(p, &[args.k])?[0];
    let valid = args.x_from > 0.0 && args.x_to >= args.x_from && args.x_to.is_finite() && args.steps >= 1;
    if !valid || (args.steps == 1 && args.x_to != args.x_from) {
        return Err(CliError::Parse(format!(
            "need 0 < x-from <= x-to and steps >= 1 (x-from = x-to for one step), got [{}, {}] with {} steps",
            args.x_from, args.x_to, args.steps
        )));
    }
    let f = p.pellet_poly(k)?;
    let mut text = String::new();
    let mut steps = Vec::new();
    for x in grid(args.x_from, args.x_to, args.steps) {
        let pair = scaled_gershgorin_disks(p, k, x)?;
        let fx = f.eval(x);
        if !g.quiet {
            let _ = writeln!(
                text,
                "x = {x:.10}: P = {:.10}, mu = {:.10}, disjoint {}",
                pair.inner.radius,
                pair.outer.radius,
                pair.disjoint()
            );
        }
        steps.push(json!({
            "x": x,
            "inner": {"center": complex(pair.inner.center), "radius": pair.inner.radius},
            "outer": {"center": complex(pair.outer.center), "radius": pair.outer.radius},
            "disjoint": pair.disjoint(),
            "pellet_value": fx,
        }));
    }
    let crossover = equal_radius_point(p, k, g.tol)?;
    let radius = p.mu(k, crossover)?;
    let _ = writeln!(text, "equal radii at x = {crossover:.12} (radius {radius:.12})");
    let json = json!({
        "input": input.echo(),
        "k": k,
        "steps": steps,
        "crossover": {"x": crossover, "radius": radius},
    });
    Ok(Report { json, text, ok: true })
}
