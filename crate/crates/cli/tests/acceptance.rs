//! Acceptance suite: one line per criterion with its runtime against the
//! budget. Exits nonzero if any criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use lemniscate::companion::{mk_direct, mk_structured, scaled_gershgorin_disks};
use lemniscate::poly::MonicPolynomial;
use lemniscate::random::random_monic;
use lemniscate::raster::label_components;
use lemniscate::regions::{decompose, omega_regions, tangency_points, upsilon_regions};
use lemniscate::render::{rasterize, Layer};
use lemniscate::roots_complex::{all_zeros, matched_distance};
use lemniscate::roots_real::{cauchy_radii, pellet_roots, PelletOutcome, DEFAULT_TOL};
use lemniscate::{Complex64, Polynomial, Window};
use lemniscate_cli::{figure, AnalyzeArgs, Cli, Command, GlobalArgs, Input, RegionSet, RenderArgs};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn load(name: &str) -> Polynomial {
    Input::load(&data(name)).unwrap().reduced().clone()
}

fn analyze_json(name: &str, k: usize) -> Value {
    let cli = Cli {
        global: GlobalArgs {
            json: true,
            ..GlobalArgs::default()
        },
        command: Command::Analyze(AnalyzeArgs {
            poly: data(name),
            k: vec![k],
            all: false,
            eta: None,
            res: 256,
        }),
    };
    let report = lemniscate_cli::run(&cli).unwrap();
    serde_json::from_str(&report.render(&cli.global)).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn corpus(count: usize, degrees: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(degrees.clone());
            random_monic(&mut rng, degree, 10.0)
        })
        .collect()
}

fn q_a_foci() -> Vec<Complex64> {
    vec![
        Complex64::new(1.8291, -0.1119),
        Complex64::new(-2.1035, 1.5937),
        Complex64::new(-1.7257, -1.4818),
    ]
}

fn pellet_bracket() -> Outcome {
    let report = analyze_json("qA.json", 5);
    let pellet = &report["splits"][0]["pellet"];
    let r = pellet["r"].as_f64().ok_or("no r in report")?;
    let big_r = pellet["R"].as_f64().ok_or("no R in report")?;
    ensure!((r - 0.9872).abs() <= 5e-4, "r = {r}");
    ensure!((big_r - 1.4065).abs() <= 5e-4, "R = {big_r}");
    Ok(format!("r = {r:.6}, R = {big_r:.6}"))
}

fn region_levels() -> Outcome {
    let report = analyze_json("qA.json", 5);
    let omega = &report["splits"][0]["omega"];
    let l1 = omega["omega1"]["level"].as_f64().ok_or("no Omega1 level")?;
    let l2 = omega["omega2"]["level"].as_f64().ok_or("no Omega2 level")?;
    ensure!((l1 - 4.3065).abs() <= 1e-3, "Omega1 level {l1}");
    ensure!((l2 - 2.2720).abs() <= 1e-3, "Omega2 level {l2}");
    Ok(format!("Omega1 level {l1:.5}, Omega2 level {l2:.5}"))
}

fn foci() -> Outcome {
    let report = analyze_json("qA.json", 5);
    let foci: Vec<Complex64> = report["splits"][0]["omega"]["omega2"]["foci"]
        .as_array()
        .ok_or("no foci")?
        .iter()
        .map(|f| Complex64::new(f[0].as_f64().unwrap(), f[1].as_f64().unwrap()))
        .collect();
    ensure!(foci.len() == 3, "{} foci", foci.len());
    let d = matched_distance(&foci, &q_a_foci()).ok_or("foci count mismatch")?;
    ensure!(d <= 2e-3, "matched distance {d}");
    Ok(format!("3 foci, matched distance {d:.2e}"))
}

fn certificate() -> Outcome {
    let p = load("qA.json");
    let o = omega_regions(&p, 5, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let cert = o.omega2.disjointness_certificate(Some(1.5)).map_err(|e| e.to_string())?;
    ensure!(cert.certified, "certificate fails with eta = 1.5");
    ensure!(o.omega2.level < 1.5f64.powi(3), "level {} not below 3.375", o.omega2.level);
    let zeros = all_zeros(&p).map_err(|e| e.to_string())?;
    let window = Window::new(-4.0, 4.0, -4.0, 4.0).unwrap();
    let d = decompose(&o.omega2, &window, 512, Some(&zeros)).map_err(|e| e.to_string())?;
    ensure!(d.components.len() == 3, "{} components", d.components.len());
    for (i, c) in d.components.iter().enumerate() {
        ensure!(c.foci_inside == 1, "component {i} has {} foci", c.foci_inside);
        ensure!(c.observed_zeros == Some(1), "component {i} holds {:?} zeros", c.observed_zeros);
        ensure!(c.predicted_zeros == 1, "component {i} predicts {}", c.predicted_zeros);
    }
    Ok(format!("{:.4} < 3.3750; 3 components with 1 focus and 1 zero each", o.omega2.level))
}

fn zero_split() -> Outcome {
    let p = load("qA.json");
    let o = omega_regions(&p, 5, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let zeros = all_zeros(&p).map_err(|e| e.to_string())?;
    let small = zeros.iter().filter(|z| z.norm() <= o.r).count();
    let in_omega2 = zeros.iter().filter(|&&z| o.omega2.contains(z, 0.0).unwrap()).count();
    let annulus = zeros.iter().filter(|z| z.norm() > o.r && z.norm() < o.big_r).count();
    ensure!(small == 5, "{small} zeros in |z| <= r");
    ensure!(in_omega2 == 3, "{in_omega2} zeros in Omega2");
    ensure!(annulus == 0, "{annulus} zeros in the annulus");
    Ok("5 zeros in |z| <= r, 3 in Omega2(5), annulus empty".into())
}

fn trivial_cauchy() -> Outcome {
    let p = load("cube8.json");
    let radii = cauchy_radii(&p, DEFAULT_TOL).map_err(|e| e.to_string())?;
    ensure!((radii[2] - 2.0).abs() <= 1e-10, "s_2 = {}", radii[2]);
    let u = upsilon_regions(&p, 2, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let zeros = all_zeros(&p).map_err(|e| e.to_string())?;
    for &z in zeros.iter() {
        let gap = (u.upsilon1.modulus(z).unwrap() - u.upsilon1.level).abs();
        ensure!(gap <= 1e-9, "zero {z} is {gap:e} off the boundary");
    }
    Ok(format!("s_2 = {:.12}, 3 zeros on the boundary", radii[2]))
}

fn derived_pellet() -> Outcome {
    let p = load("qB.json");
    let f = p.pellet_poly(2).map_err(|e| e.to_string())?;
    let (linear, quadratic) = ([-1.0, 1.0], [-1.0, -3.0, 1.0]);
    let mut product = [0.0; 4];
    for (i, a) in linear.iter().enumerate() {
        for (j, b) in quadratic.iter().enumerate() {
            product[i + j] += a * b;
        }
    }
    ensure!(f.coeffs() == product, "f_2 coefficients {:?} vs (x-1)(x^2-3x-1) = {product:?}", f.coeffs());
    let exact_big_r = (3.0 + 13f64.sqrt()) / 2.0;
    let (r, big_r) = pellet_roots(&p, 2, DEFAULT_TOL)
        .map_err(|e| e.to_string())?
        .separated()
        .ok_or("q_B is not separated at k = 2")?;
    ensure!((r - 1.0).abs() <= 1e-6, "r = {r}");
    ensure!((big_r - exact_big_r).abs() <= 1e-6, "R = {big_r}");
    let zeros = all_zeros(&p).map_err(|e| e.to_string())?;
    let inside = zeros.iter().filter(|z| z.norm() <= 1.0).count();
    ensure!(inside == 2, "{inside} zeros in |z| <= 1");
    Ok(format!("r = {r:.9}, R = {big_r:.9}, 2 zeros in the unit disk"))
}

fn containment_suite() -> Outcome {
    let mut separated = 0;
    for (i, p) in corpus(200, 3..=12, 8).iter().enumerate() {
        let n = p.degree();
        let zeros = all_zeros(p).map_err(|e| format!("poly {i}: {e}"))?;
        for k in 1..n {
            let a_k = p.abs_coeff(k);
            let u = upsilon_regions(p, k, DEFAULT_TOL).map_err(|e| e.to_string())?;
            for region in [&u.upsilon1, &u.upsilon2] {
                for &z in zeros.iter() {
                    ensure!(
                        region.contains(z, 1e-9 * region.level).unwrap(),
                        "poly {i} k {k}: {z} outside {:?}",
                        region.kind
                    );
                }
            }
            ensure!(rel(u.upsilon1.level, p.mu(k, u.s_k).unwrap() + a_k) <= 1e-9, "poly {i} k {k}: Upsilon1 duality");
            ensure!(
                rel(u.upsilon2.level, p.majorant_at(n - k, u.s_k_minus_1).unwrap() + a_k) <= 1e-9,
                "poly {i} k {k}: Upsilon2 duality"
            );
            let Ok(o) = omega_regions(p, k, DEFAULT_TOL) else {
                continue;
            };
            separated += 1;
            let (r, big_r) = (o.r, o.big_r);
            let inner = zeros.iter().filter(|z| z.norm() <= r + 1e-7 * (1.0 + r)).count();
            ensure!(inner == k, "poly {i} k {k}: {inner} zeros inside r");
            let eps = 1e-7 * (1.0 + big_r);
            for &z in zeros.iter() {
                let m = z.norm();
                ensure!(!(m > r + eps && m < big_r - eps), "poly {i} k {k}: |z| = {m} in ({r}, {big_r})");
                if m > r + 1e-7 * (1.0 + r) {
                    ensure!(o.omega2.contains(z, 1e-7 * o.omega2.level).unwrap(), "poly {i} k {k}: {z} outside Omega2");
                }
            }
            ensure!(rel(o.omega1.level, a_k - p.mu(k, r).unwrap()) <= 1e-9, "poly {i} k {k}: Omega1 duality");
            ensure!(
                rel(o.omega2.level, a_k - p.majorant_at(n - k, big_r).unwrap()) <= 1e-9,
                "poly {i} k {k}: Omega2 duality"
            );
        }
    }
    Ok(format!("200 polynomials, {separated} separated splits"))
}

fn companion_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut samples = 0;
    for (i, p) in corpus(50, 3..=8, 9).iter().enumerate() {
        let n = p.degree();
        for k in 1..n {
            for m in [k, n - k] {
                let diff = mk_structured(p, m).unwrap().max_relative_difference(&mk_direct(p, m).unwrap());
                ensure!(diff <= 1e-10, "poly {i} M_{m}: difference {diff:e}");
            }
            let f = p.pellet_poly(k).unwrap();
            let f_scale = f.coeffs().iter().map(|a| a.abs()).fold(0.0, f64::max);
            for _ in 0..5 {
                let x = 10f64.powf(rng.gen_range(-1.0..1.0));
                let scaled = mk_structured(p, n - k).unwrap().diagonal_similarity(x);
                let sums = scaled.deleted_column_sums();
                let (big_p, mu) = (p.majorant_at(n - k, x).unwrap(), p.mu(k, x).unwrap());
                for (j, d) in scaled.diagonal().into_iter().enumerate() {
                    let (expected, center) = if j < k { (big_p, Complex64::new(0.0, 0.0)) } else { (mu, -p.coeff(k)) };
                    ensure!(rel(sums[j], expected) <= 1e-12, "poly {i} k {k} x {x}: column {j} sum {}", sums[j]);
                    ensure!((d - center).norm() <= 1e-12 * (1.0 + center.norm()), "poly {i} k {k}: column {j} diagonal {d}");
                }
                let pair = scaled_gershgorin_disks(p, k, x).map_err(|e| e.to_string())?;
                let fx = f.eval(x);
                if fx.abs() > 1e-12 * f_scale * x.max(1.0).powi(n as i32) {
                    ensure!(pair.disjoint() == (fx < 0.0), "poly {i} k {k} x {x}: disjoint {} but f_k = {fx:e}", pair.disjoint());
                }
                samples += 1;
            }
        }
    }
    Ok(format!("50 polynomials, {samples} disk-pair samples"))
}

/// `argmin g_k` by ternary search on `log x`.
fn gauge_minimizer(p: &Polynomial, k: usize) -> f64 {
    let n = p.degree();
    let g = |t: f64| p.majorant_at(n - k, t.exp()).unwrap() + p.mu(k, t.exp()).unwrap();
    let (mut lo, mut hi) = (-30.0f64, 30.0f64);
    for _ in 0..300 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) < g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    (0.5 * (lo + hi)).exp()
}

fn identity_suite() -> Outcome {
    let polys = corpus(200, 3..=12, 10);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (i, p) in polys.iter().enumerate() {
        let n = p.degree();
        for k in 1..n {
            let (f, h) = (p.pellet_poly(k).unwrap(), p.cauchy_poly(k).unwrap());
            for _ in 0..10 {
                let x: f64 = rng.gen_range(0.1..10.0);
                let (big_p, mu, a_k) = (p.majorant_at(n - k, x).unwrap(), p.mu(k, x).unwrap(), p.abs_coeff(k));
                let xk = x.powi(k as i32);
                let scale = xk * (big_p + a_k + mu);
                ensure!((f.eval(x) - xk * (big_p - a_k + mu)).abs() <= 1e-11 * scale, "poly {i} k {k} x {x}: f_k identity");
                ensure!((h.eval(x) - xk * (big_p - a_k - mu)).abs() <= 1e-11 * scale, "poly {i} k {k} x {x}: h_k identity");
            }
        }
    }

    let mut inputs: Vec<Polynomial> = ["qA.json", "qB.json", "qC.json", "qD.json", "cube8.json"].iter().map(|f| load(f)).collect();
    inputs.extend(polys.into_iter().take(40));
    let (mut cases, mut points, mut plain) = (0, 0, 0);
    for (i, p) in inputs.iter().enumerate() {
        let n = p.degree();
        for k in 1..n {
            if p.abs_coeff(k) == 0.0 {
                continue;
            }
            let x = gauge_minimizer(p, k);
            let modulus = p.majorant_at(n - k, x).unwrap() + p.mu(k, x).unwrap();
            let mut coeffs = p.coeffs().to_vec();
            coeffs[k] = coeffs[k] / coeffs[k].norm() * modulus;
            let q = MonicPolynomial::new(coeffs).unwrap();
            let fx = q.pellet_poly(k).unwrap().eval(x);
            ensure!(fx.abs() <= 1e-10 * x.powi(k as i32) * modulus, "case {i} k {k}: f_k(x*) = {fx:e}");
            let outcome = pellet_roots(&q, k, DEFAULT_TOL).map_err(|e| e.to_string())?.outcome;
            let PelletOutcome::Tangent { rho } = outcome else {
                return Err(format!("case {i} k {k}: {outcome:?}, expected tangent"));
            };
            let t = tangency_points(&q, k, DEFAULT_TOL).map_err(|e| e.to_string())?;
            ensure!(t.points.len() == n - k, "case {i} k {k}: {} tangency points", t.points.len());
            let base = q.associated(n - k).unwrap();
            let (inner, outer) = (q.majorant_at(n - k, rho).unwrap(), q.mu(k, rho).unwrap());
            for &zeta in &t.points {
                let w = base.eval(zeta);
                let e1 = (w.norm() - inner).abs();
                let e2 = ((w + q.coeff(k)).norm() - outer).abs();
                let (t1, t2) = (1e-8 * inner.max(1.0), 1e-8 * outer.max(1.0));
                // Horner rounding bound for p_{n-k} at zeta.
                let noise = 4.0 * (n - k) as f64 * f64::EPSILON * q.majorant_at(n - k, zeta.norm()).unwrap();
                ensure!(e1 <= t1 + noise && e2 <= t2 + noise, "case {i} k {k}: zeta {zeta} misses by {e1:e}, {e2:e}");
                if e1 <= t1 && e2 <= t2 {
                    plain += 1;
                }
                points += 1;
            }
            cases += 1;
        }
    }
    Ok(format!(
        "identities on 200 polynomials; {cases} tangent cases, {points} points ({plain} within 1e-8 without the rounding allowance)"
    ))
}

fn render_args(file: &str, set: RegionSet, k: Vec<usize>, out: PathBuf) -> RenderArgs {
    RenderArgs {
        poly: data(file),
        set,
        k,
        window: None,
        res: 512,
        out,
    }
}

fn figures() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let g = GlobalArgs {
        quiet: true,
        ..GlobalArgs::default()
    };
    let jobs = [
        ("qA.json", RegionSet::Omega, vec![5], "fig1.svg"),
        ("qA.json", RegionSet::OmegaRecip, vec![5], "fig4.svg"),
        ("qD.json", RegionSet::Upsilon1, vec![6, 5, 3], "fig5.svg"),
    ];
    let mut docs = Vec::new();
    for (file, set, k, name) in jobs {
        let args = render_args(file, set, k, dir.path().join(name));
        figure::run(&Input::load(&args.poly).unwrap(), &args, &g).map_err(|e| e.to_string())?;
        let svg = std::fs::read_to_string(&args.out).map_err(|e| e.to_string())?;
        roxmltree::Document::parse(&svg).map_err(|e| format!("{name}: {e}"))?;
        ensure!(figure::sidecar_path(&args.out).exists(), "{name}: no scene sidecar");
        docs.push(svg);
    }
    let doc = roxmltree::Document::parse(&docs[0]).unwrap();
    let class_count = |class: &str| doc.descendants().filter(|n| n.attribute("class") == Some(class)).count();
    ensure!(class_count("outline") == 2, "{} circle outlines", class_count("outline"));
    ensure!(class_count("zero") == 8, "{} zero markers", class_count("zero"));

    let input = Input::load(&data("qA.json")).unwrap();
    let zeros = all_zeros(input.reduced()).unwrap().zeros;
    let args = render_args("qA.json", RegionSet::Omega, vec![5], dir.path().join("unused.svg"));
    let scene = figure::build_scene(input.reduced(), &zeros, &args, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let grids = rasterize(&scene).map_err(|e| e.to_string())?;
    let dark = scene
        .layers
        .iter()
        .zip(&grids)
        .find_map(|(layer, grid)| match layer {
            Layer::Region { fill: lemniscate::render::Fill::Dark, .. } => grid.clone(),
            _ => None,
        })
        .ok_or("no Omega2 layer")?;
    let components = label_components(&dark).count;
    ensure!(components == 3, "Omega2 raster has {components} components");
    Ok("3 valid SVGs; Omega figure has 2 outlines, 8 zeros, 3 Omega2 components".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "q_A Pellet bracket", budget: Duration::from_millis(100), run: pellet_bracket },
        Criterion { id: 2, name: "q_A region levels", budget: Duration::from_millis(100), run: region_levels },
        Criterion { id: 3, name: "q_A foci", budget: Duration::from_millis(100), run: foci },
        Criterion { id: 4, name: "q_A disjointness certificate", budget: Duration::from_secs(5), run: certificate },
        Criterion { id: 5, name: "q_A zero split", budget: Duration::from_millis(500), run: zero_split },
        Criterion { id: 6, name: "trivial Cauchy radius", budget: Duration::from_millis(50), run: trivial_cauchy },
        Criterion { id: 7, name: "derived Pellet bracket for q_B", budget: Duration::from_millis(100), run: derived_pellet },
        Criterion { id: 8, name: "containment property suite", budget: Duration::from_secs(60), run: containment_suite },
        Criterion { id: 9, name: "companion property suite", budget: Duration::from_secs(30), run: companion_suite },
        Criterion { id: 10, name: "identity suite", budget: Duration::from_secs(10), run: identity_suite },
        Criterion { id: 11, name: "figure reproduction", budget: Duration::from_secs(10), run: figures },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > c.budget => ("FAIL", "over budget".to_string()),
            Ok(summary) => ("PASS", summary),
            Err(reason) => ("FAIL", reason),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {status} {:>9.3}s / {:>6.3}s  {}: {detail}",
            c.id,
            elapsed.as_secs_f64(),
            c.budget.as_secs_f64(),
            c.name
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
