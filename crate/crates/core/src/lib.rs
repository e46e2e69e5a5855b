//! Localization of the zeros of complex polynomials in lemniscate regions.
//!
//! The crate builds the Pellet-type regions `Omega1(k)`/`Omega2(k)` and the
//! generalized Cauchy regions `Upsilon1(k)`/`Upsilon2(k)` from the associated
//! polynomials `p_k`, their majorants `P_k` and the tail sums `mu(k, x)`. The
//! companion-matrix machinery behind these regions is exposed in
//! [`companion`], and an independent Aberth–Ehrlich root finder in
//! [`roots_complex`] checks every claim.
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod companion;
pub mod error;
pub mod poly;
pub mod random;
pub mod raster;
pub mod regions;
pub mod render;
pub mod roots_complex;
pub mod roots_real;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Scalar;

pub type Complex64 = num_complex::Complex<f64>;
pub type Polynomial = poly::MonicPolynomial<f64>;
pub type AssociatedPolynomial = poly::ComplexPolynomial<f64>;
pub type RealPolynomial = poly::RealPolynomial<f64>;
pub type DeflationRecord = poly::DeflationRecord<f64>;
pub type PelletBracket = roots_real::PelletBracket<f64>;
pub type PelletOutcome = roots_real::PelletOutcome<f64>;
pub type CauchyRadius = roots_real::CauchyRadius<f64>;
pub type ZeroSet = roots_complex::ZeroSet<f64>;
pub type ComplexMatrix = companion::ComplexMatrix<f64>;
pub type Disk = companion::Disk<f64>;
pub type DiskPair = companion::DiskPair<f64>;
pub type Window = raster::Window<f64>;
pub type LemniscateRegion = regions::LemniscateRegion<f64>;
pub type OmegaRegions = regions::OmegaRegions<f64>;
pub type UpsilonRegions = regions::UpsilonRegions<f64>;
pub type RegionDecomposition = regions::RegionDecomposition<f64>;
pub type TangencySet = regions::TangencySet<f64>;
pub type SceneSpec = render::SceneSpec<f64>;
pub type Layer = render::Layer<f64>;
pub type RegionExpr = render::RegionExpr<f64>;

pub type Polynomial32 = poly::MonicPolynomial<f32>;
