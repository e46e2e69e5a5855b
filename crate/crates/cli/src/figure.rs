//! `render`: figure scenes for Omega, combined direct/reciprocal Omega and
//! Upsilon regions, written as SVG or PGM with a JSON scene sidecar.

use std::path::{Path, PathBuf};

use lemniscate::regions::{omega_regions, reciprocal_regions, upsilon_regions};
use lemniscate::render::{emit_pgm, emit_svg, rasterize, Fill, Layer, RegionExpr, SceneSpec};
use lemniscate::roots_complex::zeros_with_origin;
use lemniscate::{Complex64, LemniscateRegion, Polynomial, Window};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::analyze::split_indices;
use crate::json::{complex, complexes};
use crate::{CliError, GlobalArgs, Input, RegionSet, RenderArgs, Report};

/// Margin factor of the automatic window around the drawn content.
const WINDOW_MARGIN: f64 = 1.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Svg,
    Pgm,
}

fn format_of(path: &Path) -> Result<Format, CliError> {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("svg") => Ok(Format::Svg),
        Some("pgm") => Ok(Format::Pgm),
        _ => Err(CliError::Parse(format!("{}: output must end in .svg or .pgm", path.display()))),
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".scene.json");
    PathBuf::from(name)
}

fn fill_name(fill: Fill) -> &'static str {
    match fill {
        Fill::Light => "light",
        Fill::Dark => "dark",
        Fill::Outline => "outline",
    }
}

fn region_json(r: &LemniscateRegion) -> Value {
    json!({
        "kind": r.kind,
        "k": r.k,
        "reciprocal": r.reciprocal,
        "base": complexes(r.base.coeffs()),
        "shift": complex(r.shift),
        "level": r.level,
    })
}

fn expr_json(e: &RegionExpr<f64>) -> Value {
    match e {
        RegionExpr::Region(r) => region_json(r),
        RegionExpr::Union(parts) => json!({"union": parts.iter().map(expr_json).collect::<Vec<_>>()}),
        RegionExpr::Intersection(parts) => {
            json!({"intersection": parts.iter().map(expr_json).collect::<Vec<_>>()})
        }
    }
}

pub fn scene_json(scene: &SceneSpec<f64>) -> Value {
    let w = &scene.window;
    let layers: Vec<Value> = scene
        .layers
        .iter()
        .map(|layer| match layer {
            Layer::Region { expr, fill } => json!({"type": "region", "fill": fill_name(*fill), "expr": expr_json(expr)}),
            Layer::Circle { center, radius } => json!({"type": "circle", "center": complex(*center), "radius": radius}),
            Layer::Points { points } => json!({"type": "points", "points": complexes(points)}),
        })
        .collect();
    json!({
        "window": [w.re_min, w.re_max, w.im_min, w.im_max],
        "resolution": scene.resolution,
        "layers": layers,
    })
}

/// Circle `|z + shift| = level` bounding a disk-shaped region.
fn boundary_circle(r: &LemniscateRegion) -> Layer<f64> {
    Layer::Circle {
        center: -r.shift,
        radius: r.level,
    }
}

/// Layers for the requested figure, plus the radius a centered window must
/// cover to show them.
fn layers(p: &Polynomial, set: RegionSet, ks: &[usize], tol: f64) -> Result<(Vec<Layer<f64>>, f64), CliError> {
    let n = p.degree();
    let mut layers = Vec::new();
    let mut reach: f64 = 0.0;
    match set {
        RegionSet::Omega | RegionSet::OmegaRecip => {
            let k = ks[0];
            let o = omega_regions(p, k, tol)?;
            reach = reach
                .max(o.omega1.bounding_radius())
                .max(o.omega2.bounding_radius())
                .max(o.big_r);
            if set == RegionSet::Omega {
                layers.push(Layer::Region { expr: o.omega1.into(), fill: Fill::Light });
                layers.push(Layer::Region { expr: o.omega2.into(), fill: Fill::Dark });
            } else {
                let rec = reciprocal_regions(p, k, tol)?;
                layers.push(Layer::Region {
                    expr: RegionExpr::Intersection(vec![o.omega1.into(), rec.omega2.into()]),
                    fill: Fill::Light,
                });
                layers.push(Layer::Region {
                    expr: RegionExpr::Intersection(vec![o.omega2.into(), rec.omega1.into()]),
                    fill: Fill::Dark,
                });
            }
            let origin = Complex64::new(0.0, 0.0);
            layers.push(Layer::Circle { center: origin, radius: o.r });
            layers.push(Layer::Circle { center: origin, radius: o.big_r });
        }
        RegionSet::Upsilon1 | RegionSet::Upsilon2 => {
            let pick = |k: usize| -> Result<LemniscateRegion, CliError> {
                let u = upsilon_regions(p, k, tol)?;
                Ok(if set == RegionSet::Upsilon1 { u.upsilon1 } else { u.upsilon2 })
            };
            for (i, &k) in ks.iter().enumerate() {
                let region = pick(k)?;
                reach = reach.max(region.bounding_radius());
                let fill = if i % 2 == 0 { Fill::Dark } else { Fill::Light };
                layers.push(Layer::Region { expr: region.into(), fill });
            }
            let disk = pick(n - 1)?;
            reach = reach.max(disk.shift.norm() + disk.level);
            layers.push(boundary_circle(&disk));
        }
    }
    Ok((layers, reach))
}

pub fn build_scene(p: &Polynomial, zeros: &[Complex64], args: &RenderArgs, tol: f64) -> Result<SceneSpec<f64>, CliError> {
    let ks = split_indices(p, &args.k)?;
    let (mut layers, reach) = layers(p, args.set, &ks, tol)?;
    let reach = zeros.iter().map(|z| z.norm()).fold(reach, f64::max);
    layers.push(Layer::Points { points: zeros.to_vec() });
    let window = match &args.window {
        Some(w) if w.len() == 4 => Window::new(w[0], w[1], w[2], w[3]),
        Some(w) => return Err(CliError::Parse(format!("--window takes 4 values, got {}", w.len()))),
        None => Window::square(Complex64::new(0.0, 0.0), WINDOW_MARGIN * reach),
    }
    .map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(SceneSpec {
        window,
        resolution: args.res,
        layers,
    })
}

pub fn run(input: &Input, args: &RenderArgs, g: &GlobalArgs) -> Result<Report, CliError> {
    let format = format_of(&args.out)?;
    if !(lemniscate::render::MIN_RESOLUTION..=lemniscate::render::MAX_RESOLUTION).contains(&args.res) {
        return Err(CliError::Parse(lemniscate::Error::WindowDegenerate.to_string()));
    }
    let p = input.reduced();
    p.require_theorem_hypotheses()?;
    let zeros = zeros_with_origin(&input.monic)?.zeros;
    let scene = build_scene(p, &zeros, args, g.tol)?;
    let grids = rasterize(&scene)?;
    match format {
        Format::Svg => emit_svg(&scene, &grids, &args.out)?,
        Format::Pgm => emit_pgm(&scene, &grids, &args.out)?,
    }
    let sidecar = sidecar_path(&args.out);
    let mut scene_doc = scene_json(&scene);
    scene_doc["set"] = json!(args.set.to_possible_value().map(|v| v.get_name().to_string()));
    scene_doc["k"] = json!(args.k);
    scene_doc["output"] = json!(args.out.display().to_string());
    std::fs::write(&sidecar, crate::json::to_string(&scene_doc) + "\n")
        .map_err(|e| CliError::Io(format!("{}: {e}", sidecar.display())))?;
    let text = if g.quiet {
        String::new()
    } else {
        format!("wrote {} and {}\n", args.out.display(), sidecar.display())
    };
    let json = json!({
        "input": input.echo(),
        "output": args.out.display().to_string(),
        "scene": sidecar.display().to_string(),
    });
    Ok(Report { json, text, ok: true })
}
