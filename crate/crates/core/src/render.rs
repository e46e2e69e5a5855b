//! Static figures of inclusion regions: pixel-center rasterization, SVG and
//! binary PGM output.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::raster::{Grid, Window};
use crate::regions::LemniscateRegion;
use crate::scalar::Scalar;

pub const MIN_RESOLUTION: usize = 64;
pub const MAX_RESOLUTION: usize = 4096;

pub const LIGHT_GRAY: &str = "#C0C0C0";
pub const DARK_GRAY: &str = "#707070";
const LIGHT_LEVEL: u8 = 0xC0;
const DARK_LEVEL: u8 = 0x70;
/// Zero marker radius in pixels.
const MARKER_RADIUS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fill {
    Light,
    Dark,
    Outline,
}

impl Fill {
    fn darkness(self) -> u8 {
        match self {
            Fill::Light => 255 - LIGHT_LEVEL,
            Fill::Dark => 255 - DARK_LEVEL,
            Fill::Outline => 255,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Fill::Light => "light",
            Fill::Dark => "dark",
            Fill::Outline => "outline",
        }
    }
}

/// Set expression over lemniscate regions.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionExpr<T> {
    Region(LemniscateRegion<T>),
    Union(Vec<RegionExpr<T>>),
    Intersection(Vec<RegionExpr<T>>),
}

impl<T: Scalar> RegionExpr<T> {
    pub fn contains(&self, z: Complex<T>) -> bool {
        match self {
            RegionExpr::Region(r) => r.contains_masked(z),
            RegionExpr::Union(parts) => parts.iter().any(|p| p.contains(z)),
            RegionExpr::Intersection(parts) => parts.iter().all(|p| p.contains(z)),
        }
    }
}

impl<T> From<LemniscateRegion<T>> for RegionExpr<T> {
    fn from(r: LemniscateRegion<T>) -> Self {
        RegionExpr::Region(r)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Layer<T> {
    Region { expr: RegionExpr<T>, fill: Fill },
    Circle { center: Complex<T>, radius: T },
    Points { points: Vec<Complex<T>> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneSpec<T> {
    pub window: Window<T>,
    pub resolution: usize,
    pub layers: Vec<Layer<T>>,
}

impl<T: Scalar> SceneSpec<T> {
    fn validate(&self) -> Result<()> {
        if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&self.resolution) {
            return Err(Error::WindowDegenerate);
        }
        Window::new(self.window.re_min, self.window.re_max, self.window.im_min, self.window.im_max)?;
        Ok(())
    }

    /// Maps a point of the plane to SVG/pixel coordinates.
    fn to_pixel(&self, z: Complex<T>) -> (f64, f64) {
        let res = self.resolution as f64;
        let w = &self.window;
        let x = (z.re - w.re_min).as_f64() / w.width().as_f64() * res;
        let y = (w.im_max - z.im).as_f64() / w.height().as_f64() * res;
        (x, y)
    }
}

/// Membership grid for every region layer (`None` for circles and points).
pub fn rasterize<T: Scalar>(scene: &SceneSpec<T>) -> Result<Vec<Option<Grid>>> {
    scene.validate()?;
    Ok(scene
        .layers
        .iter()
        .map(|layer| match layer {
            Layer::Region { expr, .. } => {
                Some(Grid::sample(&scene.window, scene.resolution, |z| expr.contains(z)))
            }
            _ => None,
        })
        .collect())
}

fn check_grids<T: Scalar>(scene: &SceneSpec<T>, grids: &[Option<Grid>]) -> Result<()> {
    scene.validate()?;
    let consistent = grids.len() == scene.layers.len()
        && scene.layers.iter().zip(grids).all(|(layer, grid)| match (layer, grid) {
            (Layer::Region { .. }, Some(g)) => g.resolution == scene.resolution,
            (Layer::Region { .. }, None) => false,
            (_, g) => g.is_none(),
        });
    if consistent {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("grids do not match scene".into()))
    }
}

/// SVG 1.1 markup. Region layers are painted as row runs of pixels; circles
/// carry `class="outline"` and zero markers `class="zero"`.
pub fn svg_string<T: Scalar>(scene: &SceneSpec<T>, grids: &[Option<Grid>]) -> Result<String> {
    check_grids(scene, grids)?;
    let res = scene.resolution;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{res}" height="{res}" viewBox="0 0 {res} {res}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{res}" height="{res}" fill="#FFFFFF"/>"##);
    let sx = res as f64 / scene.window.width().as_f64();
    let sy = res as f64 / scene.window.height().as_f64();
    for (layer, grid) in scene.layers.iter().zip(grids) {
        match layer {
            Layer::Region { fill, .. } => {
                let grid = grid.as_ref().expect("checked");
                let (painted, color) = match fill {
                    Fill::Light => (grid.clone(), LIGHT_GRAY),
                    Fill::Dark => (grid.clone(), DARK_GRAY),
                    Fill::Outline => (grid.boundary(), "#000000"),
                };
                let _ = writeln!(
                    out,
                    r#"<g class="region {}" fill="{}" shape-rendering="crispEdges">"#,
                    fill.name(),
                    color
                );
                for row in 0..res {
                    let mut col = 0;
                    while col < res {
                        if !painted.get(col, row) {
                            col += 1;
                            continue;
                        }
                        let start = col;
                        while col < res && painted.get(col, row) {
                            col += 1;
                        }
                        let _ = writeln!(
                            out,
                            r#"<rect x="{start}" y="{row}" width="{}" height="1"/>"#,
                            col - start
                        );
                    }
                }
                let _ = writeln!(out, "</g>");
            }
            Layer::Circle { center, radius } => {
                let (cx, cy) = scene.to_pixel(*center);
                let (rx, ry) = (radius.as_f64() * sx, radius.as_f64() * sy);
                if (rx - ry).abs() <= 1e-9 * rx.max(1.0) {
                    let _ = writeln!(
                        out,
                        r##"<circle class="outline" cx="{cx:.3}" cy="{cy:.3}" r="{rx:.3}" fill="none" stroke="#000000" stroke-width="1"/>"##
                    );
                } else {
                    let _ = writeln!(
                        out,
                        r##"<ellipse class="outline" cx="{cx:.3}" cy="{cy:.3}" rx="{rx:.3}" ry="{ry:.3}" fill="none" stroke="#000000" stroke-width="1"/>"##
                    );
                }
            }
            Layer::Points { points } => {
                for &z in points {
                    let (cx, cy) = scene.to_pixel(z);
                    let _ = writeln!(
                        out,
                        r##"<circle class="zero" cx="{cx:.3}" cy="{cy:.3}" r="{MARKER_RADIUS:.1}" fill="#FFFFFF" stroke="#000000" stroke-width="1"/>"##
                    );
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Binary PGM (P5) bytes: layers composited by maximum darkness, then zero
/// markers drawn on top as white disks with a black rim.
pub fn pgm_bytes<T: Scalar>(scene: &SceneSpec<T>, grids: &[Option<Grid>]) -> Result<Vec<u8>> {
    check_grids(scene, grids)?;
    let res = scene.resolution;
    let mut darkness = vec![0u8; res * res];
    let pixel_w = scene.window.width().as_f64() / res as f64;
    let pixel_h = scene.window.height().as_f64() / res as f64;
    let mut markers = Vec::new();
    for (layer, grid) in scene.layers.iter().zip(grids) {
        match layer {
            Layer::Region { fill, .. } => {
                let grid = grid.as_ref().expect("checked");
                let painted = if *fill == Fill::Outline {
                    grid.boundary()
                } else {
                    grid.clone()
                };
                for (d, &on) in darkness.iter_mut().zip(&painted.cells) {
                    if on {
                        *d = (*d).max(fill.darkness());
                    }
                }
            }
            Layer::Circle { center, radius } => {
                let half_pixel = 0.5 * pixel_w.max(pixel_h);
                for row in 0..res {
                    for col in 0..res {
                        let z = scene.window.pixel_center(col, row, res);
                        let dist = (z - center).norm().as_f64();
                        if (dist - radius.as_f64()).abs() <= half_pixel {
                            darkness[row * res + col] = 255;
                        }
                    }
                }
            }
            Layer::Points { points } => markers.extend(points.iter().map(|&z| scene.to_pixel(z))),
        }
    }
    let mut pixels: Vec<u8> = darkness.iter().map(|d| 255 - d).collect();
    for (mx, my) in markers {
        for row in 0..res {
            for col in 0..res {
                let dist = (col as f64 + 0.5 - mx).hypot(row as f64 + 0.5 - my);
                if dist <= MARKER_RADIUS {
                    pixels[row * res + col] = if dist > MARKER_RADIUS - 1.0 { 0 } else { 255 };
                }
            }
        }
    }
    let mut bytes = format!("P5\n{res} {res}\n255\n").into_bytes();
    bytes.extend(pixels);
    Ok(bytes)
}

pub fn emit_svg<T: Scalar>(scene: &SceneSpec<T>, grids: &[Option<Grid>], path: &Path) -> Result<()> {
    std::fs::write(path, svg_string(scene, grids)?)?;
    Ok(())
}

pub fn emit_pgm<T: Scalar>(scene: &SceneSpec<T>, grids: &[Option<Grid>], path: &Path) -> Result<()> {
    std::fs::write(path, pgm_bytes(scene, grids)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonicPolynomial;
    use crate::raster::label_components;
    use crate::regions::omega_regions;
    use crate::roots_complex::all_zeros;
    use crate::scalar::c;

    fn q_a() -> MonicPolynomial<f64> {
        MonicPolynomial::new(
            [
                (1.0, 1.0),
                (-1.0, 0.0),
                (2.5, 0.0),
                (1.0, 0.0),
                (0.5, 0.0),
                (-11.0, 0.0),
                (-1.0, 1.0),
                (2.0, 0.0),
            ]
            .iter()
            .map(|&(re, im)| c(re, im))
            .collect(),
        )
        .unwrap()
    }

    fn figure_one(resolution: usize) -> SceneSpec<f64> {
        let p = q_a();
        let o = omega_regions(&p, 5, 1e-13).unwrap();
        SceneSpec {
            window: Window::new(-4.0, 4.0, -4.0, 4.0).unwrap(),
            resolution,
            layers: vec![
                Layer::Region {
                    expr: o.omega1.into(),
                    fill: Fill::Light,
                },
                Layer::Region {
                    expr: o.omega2.into(),
                    fill: Fill::Dark,
                },
                Layer::Circle {
                    center: c(0.0, 0.0),
                    radius: o.r,
                },
                Layer::Circle {
                    center: c(0.0, 0.0),
                    radius: o.big_r,
                },
                Layer::Points {
                    points: all_zeros(&p).unwrap().zeros,
                },
            ],
        }
    }

    #[test]
    fn omega2_layer_has_three_blobs() {
        let scene = figure_one(256);
        let grids = rasterize(&scene).unwrap();
        assert_eq!(label_components(grids[1].as_ref().unwrap()).count, 3);
        assert!(grids[2].is_none());
    }

    #[test]
    fn svg_element_census() {
        let scene = figure_one(128);
        let grids = rasterize(&scene).unwrap();
        let svg = svg_string(&scene, &grids).unwrap();
        assert_eq!(svg.matches(r#"class="outline""#).count(), 2);
        assert_eq!(svg.matches(r#"class="zero""#).count(), 8);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn pgm_is_deterministic() {
        let scene = figure_one(64);
        let a = pgm_bytes(&scene, &rasterize(&scene).unwrap()).unwrap();
        let b = pgm_bytes(&scene, &rasterize(&scene).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(b"P5\n64 64\n255\n"));
        assert_eq!(a.len(), "P5\n64 64\n255\n".len() + 64 * 64);
    }

    #[test]
    fn tiny_level_is_nearly_empty() {
        let mut o = omega_regions(&q_a(), 5, 1e-13).unwrap();
        o.omega2.level = 1e-300;
        let scene = SceneSpec {
            window: Window::new(-4.0, 4.0, -4.0, 4.0).unwrap(),
            resolution: 64,
            layers: vec![Layer::Region {
                expr: o.omega2.into(),
                fill: Fill::Dark,
            }],
        };
        let grids = rasterize(&scene).unwrap();
        assert!(grids[0].as_ref().unwrap().count() <= 3);
    }

    #[test]
    fn resolution_bounds() {
        let mut scene = figure_one(64);
        scene.resolution = 32;
        assert_eq!(rasterize(&scene), Err(Error::WindowDegenerate));
    }

    #[test]
    fn disk_area_ratio() {
        let mut o = omega_regions(&q_a(), 5, 1e-13).unwrap();
        // turn Omega1 into the unit disk: base z, level 1
        o.omega1.base = crate::poly::ComplexPolynomial::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        o.omega1.level = 1.0;
        let scene = SceneSpec {
            window: Window::new(-2.0, 2.0, -2.0, 2.0).unwrap(),
            resolution: 256,
            layers: vec![Layer::Region {
                expr: o.omega1.into(),
                fill: Fill::Light,
            }],
        };
        let g = rasterize(&scene).unwrap().remove(0).unwrap();
        assert!((g.fraction() - std::f64::consts::PI / 16.0).abs() < 2e-2);
    }
}
