//! Lemniscate inclusion regions for the zeros of a polynomial.
//!
//! Every region has the form `{z : |q(z) + shift| <= level}` where `q` is an
//! associated polynomial `p_{n-k}`:
//!
//! * `Omega1(k)`: `|p_{n-k}(z)| <= P_{n-k}(r)`, holds the `k` smallest zeros.
//! * `Omega2(k)`: `|p_{n-k}(z) + a_k| <= mu(k, R)`, holds the other `n-k`.
//! * `Upsilon1(k)`: `|p_{n-k}(z)| <= P_{n-k}(s_k)`, holds every zero.
//! * `Upsilon2(k)`: `|p_{n-k}(z) + a_k| <= mu(k, s_{k-1})`, holds every zero.
//!
//! `r < R` come from the Pellet test and `s_j` are the Cauchy radii.

use num_complex::Complex;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{ComplexPolynomial, MonicPolynomial};
use crate::raster::{label_components, Grid, Window};
use crate::roots_complex::{zeros_with_origin, ZeroSet};
use crate::roots_real::{cauchy_radius, pellet_roots, PelletOutcome};
use crate::scalar::{c, Scalar};

/// Foci closer than this are treated as repeated.
const REPEATED_FOCI: f64 = 1e-8;
/// Tangency points within this distance of `|z| = rho` count as on the circle.
const ON_CIRCLE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionKind {
    Omega1,
    Omega2,
    Upsilon1,
    Upsilon2,
}

/// `{z : |base(z) + shift| <= level}`, or its image under `z -> 1/z` when
/// `reciprocal` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct LemniscateRegion<T> {
    pub base: ComplexPolynomial<T>,
    pub shift: Complex<T>,
    pub level: T,
    /// Zeros of `base + shift`. For reciprocal regions these live in the
    /// `1/z` plane.
    pub foci: Vec<Complex<T>>,
    pub kind: RegionKind,
    pub k: usize,
    pub reciprocal: bool,
}

impl<T: Scalar> LemniscateRegion<T> {
    fn build(
        base: ComplexPolynomial<T>,
        shift: Complex<T>,
        level: T,
        kind: RegionKind,
        k: usize,
    ) -> Result<Self> {
        let foci = zeros_with_origin(&base.plus_constant(shift).to_monic()?)?.zeros;
        Ok(Self {
            base,
            shift,
            level,
            foci,
            kind,
            k,
            reciprocal: false,
        })
    }

    /// `|base(w) + shift|` at `w = z` (or `w = 1/z` for reciprocal regions).
    pub fn modulus(&self, z: Complex<T>) -> Result<T> {
        let w = if self.reciprocal {
            if z.re == T::zero() && z.im == T::zero() {
                return Err(Error::ZeroArgumentForReciprocal);
            }
            z.inv()
        } else {
            z
        };
        Ok((self.base.eval(w) + self.shift).norm())
    }

    /// Membership with an absolute slack added to the level.
    pub fn contains(&self, z: Complex<T>, slack: T) -> Result<bool> {
        Ok(self.modulus(z)? <= self.level + slack)
    }

    /// Membership for rasterization: the origin is excluded from reciprocal
    /// regions.
    pub fn contains_masked(&self, z: Complex<T>) -> bool {
        self.contains(z, T::zero()).unwrap_or(false)
    }

    pub fn foci_count(&self) -> usize {
        self.foci.len()
    }

    /// Radius of a disk about the origin containing the whole (non-reciprocal)
    /// region: every member is within `level^{1/m}` of some focus.
    pub fn bounding_radius(&self) -> T {
        let m = T::from_usize_lossy(self.foci.len().max(1));
        let reach = self.level.powf(m.recip());
        self.foci.iter().map(|f| f.norm()).fold(T::zero(), T::max) + reach
    }

    /// Decomposition window: centered on the foci centroid with half-width
    /// `2 (max |focus| + level^{1/m} + 1)`.
    pub fn default_window(&self) -> Result<Window<T>> {
        let m = T::from_usize_lossy(self.foci.len().max(1));
        let centroid = self.foci.iter().fold(c(T::zero(), T::zero()), |a, &f| a + f) / m;
        let half = T::lit(2.0) * (self.bounding_radius() + T::one());
        Window::square(centroid, half)
    }

    /// Sufficient condition for the region to split into `m` simple closed
    /// curves, one around each focus: disjoint disks of radius `eta` about
    /// the foci with `level <= eta^m`.
    pub fn disjointness_certificate(&self, eta: Option<T>) -> Result<DisjointnessCertificate<T>> {
        if self.reciprocal {
            return Err(Error::PreconditionViolated(
                "certificate applies to direct regions only".into(),
            ));
        }
        let m = self.foci.len();
        let mut min_distance = T::infinity();
        for i in 0..m {
            for j in i + 1..m {
                let d = (self.foci[i] - self.foci[j]).norm();
                if d <= T::tol(REPEATED_FOCI) {
                    return Err(Error::RepeatedFoci(i, j));
                }
                min_distance = min_distance.min(d);
            }
        }
        let eta_used = match eta {
            Some(e) => e,
            None if m == 1 => self.level.max(T::min_positive_value()),
            None => min_distance / T::lit(2.0),
        };
        if !(eta_used > T::zero()) {
            return Err(Error::NonpositiveArgument(eta_used.as_f64()));
        }
        let disks_disjoint = m < 2 || min_distance >= T::lit(2.0) * eta_used;
        let certified = disks_disjoint && self.level <= eta_used.powi(m as i32);
        Ok(DisjointnessCertificate {
            certified,
            eta_used,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisjointnessCertificate<T> {
    pub certified: bool,
    pub eta_used: T,
}

/// `Omega1(k)` and `Omega2(k)` together with the Pellet radii.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaRegions<T> {
    pub r: T,
    pub big_r: T,
    pub omega1: LemniscateRegion<T>,
    pub omega2: LemniscateRegion<T>,
}

pub fn omega_regions<T: Scalar>(p: &MonicPolynomial<T>, k: usize, tol: T) -> Result<OmegaRegions<T>> {
    let bracket = pellet_roots(p, k, tol)?;
    let (r, big_r) = match bracket.outcome {
        PelletOutcome::Separated { r, big_r } => (r, big_r),
        PelletOutcome::Tangent { rho } => {
            return Err(Error::PelletInapplicable {
                k,
                min_value: 0.0,
                minimizer: rho.as_f64(),
            })
        }
        PelletOutcome::Inapplicable {
            min_value,
            minimizer,
        } => {
            return Err(Error::PelletInapplicable {
                k,
                min_value: min_value.as_f64(),
                minimizer: minimizer.as_f64(),
            })
        }
    };
    let m = p.degree() - k;
    let base = p.associated(m)?;
    let omega1 = LemniscateRegion::build(
        base.clone(),
        c(T::zero(), T::zero()),
        p.majorant_at(m, r)?,
        RegionKind::Omega1,
        k,
    )?;
    let omega2 = LemniscateRegion::build(base, p.coeff(k), p.mu(k, big_r)?, RegionKind::Omega2, k)?;
    Ok(OmegaRegions {
        r,
        big_r,
        omega1,
        omega2,
    })
}

/// `Upsilon1(k)` and `Upsilon2(k)` together with `s_k` and `s_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpsilonRegions<T> {
    pub s_k: T,
    pub s_k_minus_1: T,
    pub upsilon1: LemniscateRegion<T>,
    pub upsilon2: LemniscateRegion<T>,
}

pub fn upsilon_regions<T: Scalar>(p: &MonicPolynomial<T>, k: usize, tol: T) -> Result<UpsilonRegions<T>> {
    p.check_split_index(k)?;
    p.require_theorem_hypotheses()?;
    let s_k = cauchy_radius(p, k, tol)?.s;
    let s_k_minus_1 = cauchy_radius(p, k - 1, tol)?.s;
    let m = p.degree() - k;
    let base = p.associated(m)?;
    let upsilon1 = LemniscateRegion::build(
        base.clone(),
        c(T::zero(), T::zero()),
        p.majorant_at(m, s_k)?,
        RegionKind::Upsilon1,
        k,
    )?;
    let upsilon2 = LemniscateRegion::build(
        base,
        p.coeff(k),
        p.mu(k, s_k_minus_1)?,
        RegionKind::Upsilon2,
        k,
    )?;
    Ok(UpsilonRegions {
        s_k,
        s_k_minus_1,
        upsilon1,
        upsilon2,
    })
}

/// `Omega` regions of the reciprocal polynomial at the mirrored index `n-k`,
/// flagged so that membership of `z` is tested at `1/z`.
///
/// For the `k` smallest zeros of `p`, `omega2` of the result is the relevant
/// set; for the `n-k` largest, `omega1`.
pub fn reciprocal_regions<T: Scalar>(p: &MonicPolynomial<T>, k: usize, tol: T) -> Result<OmegaRegions<T>> {
    p.check_split_index(k)?;
    let mirrored = p.reciprocal()?;
    let mut regions = omega_regions(&mirrored, p.degree() - k, tol)?;
    regions.omega1.reciprocal = true;
    regions.omega2.reciprocal = true;
    Ok(regions)
}

/// Touching points of `Omega1(k)` and `Omega2(k)` when `f_k` has a double
/// root `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencySet<T> {
    pub rho: T,
    pub points: Vec<Complex<T>>,
    /// Whether each point lies on `|z| = rho` to within `1e-6`.
    pub on_circle: Vec<bool>,
}

pub fn tangency_points<T: Scalar>(p: &MonicPolynomial<T>, k: usize, tol: T) -> Result<TangencySet<T>> {
    let rho = match pellet_roots(p, k, tol)?.outcome {
        PelletOutcome::Tangent { rho } => rho,
        _ => return Err(Error::NotTangentCase { k }),
    };
    let a_k = p.coeff(k);
    let m = p.degree() - k;
    let shift = a_k * (p.majorant_at(m, rho)? / a_k.norm());
    let points = zeros_with_origin(&p.associated(m)?.plus_constant(shift).to_monic()?)?.zeros;
    let on_circle = points
        .iter()
        .map(|z| (z.norm() - rho).abs() <= T::tol(ON_CIRCLE))
        .collect();
    Ok(TangencySet {
        rho,
        points,
        on_circle,
    })
}

/// One 4-connected component of a rasterized region.
#[derive(Debug, Clone, PartialEq)]
pub struct Component<T> {
    /// Pixel-center bounding box.
    pub bbox: Window<T>,
    pub pixel_count: usize,
    pub foci_inside: usize,
    pub contains_origin: bool,
    pub predicted_zeros: usize,
    pub observed_zeros: Option<usize>,
}

/// Grid-based decomposition of a region into connected components with the
/// zero counts predicted for each.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionDecomposition<T> {
    pub kind: RegionKind,
    pub k: usize,
    pub level: T,
    pub foci: Vec<Complex<T>>,
    pub window: Window<T>,
    pub resolution: usize,
    pub components: Vec<Component<T>>,
    /// Result of the default disjointness certificate.
    pub certified_disjoint: bool,
    pub eta: Option<T>,
    /// The origin lies within one cell of the region boundary, so the
    /// raster's `contains_origin` cannot be trusted.
    pub origin_indeterminate: bool,
    /// Oracle zeros not assigned to any component.
    pub unassigned_zeros: usize,
    /// Components whose observed count differs from the prediction.
    pub mismatches: Vec<usize>,
}

impl<T: Scalar> RegionDecomposition<T> {
    pub fn total_observed(&self) -> usize {
        self.components.iter().filter_map(|c| c.observed_zeros).sum()
    }

    pub fn total_foci_inside(&self) -> usize {
        self.components.iter().map(|c| c.foci_inside).sum()
    }
}

/// Zero count a component must hold, by region kind.
///
/// `Omega1` holds exactly the `k` smallest zeros, all inside the disk
/// `|z| <= r`, which sits in the component containing the origin.
fn predicted<T: Scalar>(region: &LemniscateRegion<T>, foci_inside: usize, contains_origin: bool) -> usize {
    match region.kind {
        RegionKind::Omega1 => {
            if contains_origin {
                region.k
            } else {
                0
            }
        }
        RegionKind::Omega2 => foci_inside,
        RegionKind::Upsilon1 | RegionKind::Upsilon2 => {
            foci_inside + if contains_origin { region.k } else { 0 }
        }
    }
}

pub fn decompose<T: Scalar>(
    region: &LemniscateRegion<T>,
    window: &Window<T>,
    resolution: usize,
    oracle_zeros: Option<&ZeroSet<T>>,
) -> Result<RegionDecomposition<T>> {
    if region.reciprocal {
        return Err(Error::PreconditionViolated(
            "grid decomposition applies to direct regions only".into(),
        ));
    }
    if resolution < 2 {
        return Err(Error::WindowDegenerate);
    }
    let grid = Grid::sample(window, resolution, |z| region.contains_masked(z));
    let labels = label_components(&grid);
    let n = resolution;

    // A member cell on the window edge means the window clips the region.
    for i in 0..n {
        if grid.get(i, 0) || grid.get(i, n - 1) || grid.get(0, i) || grid.get(n - 1, i) {
            return Err(Error::ComponentClipped);
        }
    }

    let mut boxes: Vec<Option<(usize, usize, usize, usize)>> = vec![None; labels.count];
    let mut pixel_counts = vec![0usize; labels.count];
    for row in 0..n {
        for col in 0..n {
            if let Some(l) = labels.get(col, row) {
                pixel_counts[l] += 1;
                boxes[l] = Some(match boxes[l] {
                    None => (col, col, row, row),
                    Some((c0, c1, r0, r1)) => (c0.min(col), c1.max(col), r0.min(row), r1.max(row)),
                });
            }
        }
    }

    let mut foci_inside = vec![0usize; labels.count];
    for (i, &f) in region.foci.iter().enumerate() {
        let label = window
            .pixel_of(f, n)
            .and_then(|(col, row)| labels.get(col, row))
            .ok_or(Error::ResolutionTooCoarse(i))?;
        foci_inside[label] += 1;
    }

    let origin = c(T::zero(), T::zero());
    let mut origin_label = None;
    let mut origin_indeterminate = false;
    if let Some((col, row)) = window.pixel_of(origin, n) {
        origin_label = labels.get(col, row);
        let here = grid.get(col, row);
        for dr in -1i64..=1 {
            for dc in -1i64..=1 {
                let (cc, rr) = (col as i64 + dc, row as i64 + dr);
                if cc >= 0 && rr >= 0 && (cc as usize) < n && (rr as usize) < n && grid.get(cc as usize, rr as usize) != here {
                    origin_indeterminate = true;
                }
            }
        }
    }

    let mut observed: Option<Vec<usize>> = None;
    let mut unassigned = 0;
    if let Some(zeros) = oracle_zeros {
        let mut counts = vec![0usize; labels.count];
        let slack = T::tol(1e-9) * region.level.max(T::one());
        for &z in zeros.iter() {
            match assign_zero(region, window, &labels, z, slack) {
                Some(l) => counts[l] += 1,
                None => unassigned += 1,
            }
        }
        observed = Some(counts);
    }

    let components: Vec<Component<T>> = (0..labels.count)
        .map(|l| {
            let (c0, c1, r0, r1) = boxes[l].expect("every label has a pixel");
            let top_left = window.pixel_center(c0, r0, n);
            let bottom_right = window.pixel_center(c1, r1, n);
            let contains_origin = origin_label == Some(l);
            Component {
                bbox: Window {
                    re_min: top_left.re,
                    re_max: bottom_right.re,
                    im_min: bottom_right.im,
                    im_max: top_left.im,
                },
                pixel_count: pixel_counts[l],
                foci_inside: foci_inside[l],
                contains_origin,
                predicted_zeros: predicted(region, foci_inside[l], contains_origin),
                observed_zeros: observed.as_ref().map(|o| o[l]),
            }
        })
        .collect();

    let mismatches = components
        .iter()
        .enumerate()
        .filter(|(_, comp)| comp.observed_zeros.is_some_and(|o| o != comp.predicted_zeros))
        .map(|(i, _)| i)
        .collect();

    let certificate = region.disjointness_certificate(None).ok();
    Ok(RegionDecomposition {
        kind: region.kind,
        k: region.k,
        level: region.level,
        foci: region.foci.clone(),
        window: *window,
        resolution,
        components,
        certified_disjoint: certificate.is_some_and(|c| c.certified),
        eta: certificate.map(|c| c.eta_used),
        origin_indeterminate,
        unassigned_zeros: unassigned,
        mismatches,
    })
}

/// Component holding a zero: the label of its pixel, or for zeros on the
/// boundary whose pixel center falls outside, the nearest labelled neighbor.
fn assign_zero<T: Scalar>(
    region: &LemniscateRegion<T>,
    window: &Window<T>,
    labels: &crate::raster::Labels,
    z: Complex<T>,
    slack: T,
) -> Option<usize> {
    if !region.contains(z, slack).unwrap_or(false) {
        return None;
    }
    let n = labels.resolution;
    let (col, row) = window.pixel_of(z, n)?;
    if let Some(l) = labels.get(col, row) {
        return Some(l);
    }
    let mut best: Option<(T, usize)> = None;
    for dr in -1i64..=1 {
        for dc in -1i64..=1 {
            let (cc, rr) = (col as i64 + dc, row as i64 + dr);
            if cc < 0 || rr < 0 || cc as usize >= n || rr as usize >= n {
                continue;
            }
            if let Some(l) = labels.get(cc as usize, rr as usize) {
                let d = (window.pixel_center(cc as usize, rr as usize, n) - z).norm();
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, l));
                }
            }
        }
    }
    best.map(|(_, l)| l)
}

#[derive(Serialize)]
struct ComponentRecord {
    bbox: [f64; 4],
    pixel_count: usize,
    foci_inside: usize,
    contains_origin: bool,
    predicted_zeros: usize,
    observed_zeros: Option<usize>,
}

#[derive(Serialize)]
struct DecompositionRecord {
    kind: RegionKind,
    k: usize,
    level: f64,
    foci: Vec<[f64; 2]>,
    certified_disjoint: bool,
    eta: Option<f64>,
    resolution: usize,
    origin_indeterminate: bool,
    unassigned_zeros: usize,
    components: Vec<ComponentRecord>,
}

impl<T: Scalar> Serialize for RegionDecomposition<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionRecord {
            kind: self.kind,
            k: self.k,
            level: self.level.as_f64(),
            foci: self.foci.iter().map(|f| [f.re.as_f64(), f.im.as_f64()]).collect(),
            certified_disjoint: self.certified_disjoint,
            eta: self.eta.map(|e| e.as_f64()),
            resolution: self.resolution,
            origin_indeterminate: self.origin_indeterminate,
            unassigned_zeros: self.unassigned_zeros,
            components: self
                .components
                .iter()
                .map(|comp| ComponentRecord {
                    bbox: [
                        comp.bbox.re_min.as_f64(),
                        comp.bbox.re_max.as_f64(),
                        comp.bbox.im_min.as_f64(),
                        comp.bbox.im_max.as_f64(),
                    ],
                    pixel_count: comp.pixel_count,
                    foci_inside: comp.foci_inside,
                    contains_origin: comp.contains_origin,
                    predicted_zeros: comp.predicted_zeros,
                    observed_zeros: comp.observed_zeros,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}
