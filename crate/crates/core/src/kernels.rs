//! Compactly supported kernels on the unit ball of `R^d`.
//!
//! All families are radial: `K(t) = c_d * profile(|t|)` for `|t| <= 1` and zero
//! outside. In one dimension the cosine-squared kernel is exactly
//! `cos^2(pi t / 2)` on `[-1, 1]`. For `d > 1` it is the radial extension
//! `c_d * cos^2(pi |t| / 2)`, with `c_d` found by quadrature so the kernel
//! integrates to one over the ball. That extension is one admissible choice
//! among many; nothing in the estimators depends on it beyond unit-ball
//! support, non-negativity and Lipschitz continuity.

use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;
use core::str::FromStr;

use crate::numerics::integrate_adaptive;
use crate::{Error, Result};

const QUAD_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    /// `cos^2(pi r / 2)`.
    CosineSquared,
    /// `1 - r^2`.
    Epanechnikov,
    /// Constant on the ball. Not Lipschitz at the boundary; kept as a
    /// hand-checkable reference.
    Uniform,
}

impl KernelFamily {
    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::CosineSquared => "cosine2",
            KernelFamily::Epanechnikov => "epanechnikov",
            KernelFamily::Uniform => "uniform",
        }
    }

    fn profile(self, r: f64) -> f64 {
        match self {
            KernelFamily::CosineSquared => {
                let c = libm::cos(FRAC_PI_2 * r);
                c * c
            }
            KernelFamily::Epanechnikov => 1.0 - r * r,
            KernelFamily::Uniform => 1.0,
        }
    }

    /// Upper bound of `|profile'(r)|` on `[0, 1]`.
    fn profile_slope_bound(self) -> f64 {
        match self {
            KernelFamily::CosineSquared => FRAC_PI_2,
            KernelFamily::Epanechnikov => 2.0,
            KernelFamily::Uniform => f64::INFINITY,
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKernel;

impl fmt::Display for UnknownKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown kernel (expected cosine2, epanechnikov or uniform)")
    }
}

impl FromStr for KernelFamily {
    type Err = UnknownKernel;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "cosine2" => Ok(KernelFamily::CosineSquared),
            "epanechnikov" => Ok(KernelFamily::Epanechnikov),
            "uniform" => Ok(KernelFamily::Uniform),
            _ => Err(UnknownKernel),
        }
    }
}

/// A kernel density with its normalizing constant and moments cached.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    family: KernelFamily,
    dimension: usize,
    normalizer: f64,
    l2_moment: f64,
    l3_moment: f64,
    lipschitz: f64,
}

/// Surface area of the unit sphere in `R^d`; 2 for `d = 1` (the two points
/// `{-1, 1}`).
fn sphere_area(d: usize) -> f64 {
    let half = d as f64 / 2.0;
    2.0 * libm::pow(PI, half) / libm::tgamma(half)
}

fn ball_volume(d: usize) -> f64 {
    sphere_area(d) / d as f64
}

/// `int_B profile(|t|)^q dt` in radial coordinates.
fn radial_integral(family: KernelFamily, d: usize, q: i32) -> f64 {
    let exponent = (d - 1) as i32;
    let inner = integrate_adaptive(
        |r| libm::pow(r, exponent as f64) * libm::pow(family.profile(r), q as f64),
        0.0,
        1.0,
        QUAD_TOL,
    );
    sphere_area(d) * inner
}

impl KernelSpec {
    pub fn new(family: KernelFamily, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::domain("kernel dimension", "at least 1", 0.0));
        }
        let d = dimension as f64;
        let normalizer = match (family, dimension) {
            (KernelFamily::CosineSquared, 1) => 1.0,
            (KernelFamily::CosineSquared, _) => 1.0 / radial_integral(family, dimension, 1),
            (KernelFamily::Epanechnikov, _) => (d + 2.0) / (2.0 * ball_volume(dimension)),
            (KernelFamily::Uniform, _) => 1.0 / ball_volume(dimension),
        };
        let l2_moment = normalizer * normalizer * radial_integral(family, dimension, 2);
        let l3_moment = normalizer * normalizer * normalizer * radial_integral(family, dimension, 3);
        Ok(KernelSpec {
            family,
            dimension,
            normalizer,
            l2_moment,
            l3_moment,
            lipschitz: normalizer * family.profile_slope_bound(),
        })
    }

    /// The one-dimensional `cos^2(pi t / 2)` kernel.
    pub fn cosine_squared() -> Self {
        Self::new(KernelFamily::CosineSquared, 1).expect("dimension 1 is valid")
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// `int_B K^2`.
    pub fn l2_moment(&self) -> f64 {
        self.l2_moment
    }

    /// `int_B K^3`.
    pub fn l3_moment(&self) -> f64 {
        self.l3_moment
    }

    /// Lipschitz constant of `K`; infinite for the uniform family.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Kernel value at radius `r = |t|`.
    #[inline]
    pub fn eval_radius(&self, r: f64) -> f64 {
        if r > 1.0 {
            0.0
        } else {
            self.normalizer * self.family.profile(r)
        }
    }

    pub fn eval(&self, t: &[f64]) -> Result<f64> {
        self.check_dimension(t.len())?;
        Ok(self.eval_radius(norm(t)))
    }

    /// `K_h(v) = K(v / h) / h^d`.
    pub fn eval_scaled(&self, h: f64, v: &[f64]) -> Result<f64> {
        check_bandwidth(h)?;
        self.check_dimension(v.len())?;
        Ok(self.eval_radius(norm(v) / h) / libm::pow(h, self.dimension as f64))
    }

    pub(crate) fn check_dimension(&self, found: usize) -> Result<()> {
        if found != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_bandwidth(h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain("bandwidth h", "finite and positive", h));
    }
    Ok(())
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    match v {
        [x] => x.abs(),
        _ => libm::sqrt(v.iter().map(|x| x * x).sum()),
    }
}

pub fn kernel_eval(spec: &KernelSpec, t: &[f64]) -> Result<f64> {
    spec.eval(t)
}

pub fn kernel_scaled_eval(spec: &KernelSpec, h: f64, v: &[f64]) -> Result<f64> {
    spec.eval_scaled(h, v)
}

pub fn kernel_l2_moment(spec: &KernelSpec) -> f64 {
    spec.l2_moment()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const FAMILIES: [KernelFamily; 3] = [
        KernelFamily::CosineSquared,
        KernelFamily::Epanechnikov,
        KernelFamily::Uniform,
    ];

    /// Composite Gauss-Legendre (5 nodes) over equal panels; independent of
    /// the adaptive Simpson routine used at construction.
    fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        const NODES: [f64; 5] = [
            0.0,
            0.538_469_310_105_683_1,
            -0.538_469_310_105_683_1,
            0.906_179_845_938_664,
            -0.906_179_845_938_664,
        ];
        const WEIGHTS: [f64; 5] = [
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_5,
            0.478_628_670_499_366_5,
            0.236_926_885_056_189_1,
            0.236_926_885_056_189_1,
        ];
        let width = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + k as f64 * width;
                let mid = lo + 0.5 * width;
                NODES
                    .iter()
                    .zip(WEIGHTS)
                    .map(|(x, w)| w * f(mid + 0.5 * width * x))
                    .sum::<f64>()
                    * 0.5
                    * width
            })
            .sum()
    }

    fn k1(spec: &KernelSpec, t: f64) -> f64 {
        spec.eval(&[t]).unwrap()
    }

    #[test]
    fn cosine_kernel_values() {
        let k = KernelSpec::cosine_squared();
        assert_eq!(k1(&k, 0.0), 1.0);
        assert!(k1(&k, 1.0) < 1e-32);
        assert_eq!(k1(&k, 1.000_001), 0.0);
        assert_relative_eq!(k1(&k, 0.5), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn scaled_kernel_values() {
        let k = KernelSpec::cosine_squared();
        assert_eq!(k.eval_scaled(0.5, &[0.0]).unwrap(), 2.0);
        assert_eq!(k.eval_scaled(0.1, &[0.2]).unwrap(), 0.0);
        assert_relative_eq!(k.eval_scaled(1.0, &[0.5]).unwrap(), 0.5, max_relative = 1e-15);
        assert!(k.eval_scaled(0.0, &[0.0]).is_err());
        assert!(k.eval_scaled(-1.0, &[0.0]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let k = KernelSpec::cosine_squared();
        assert_eq!(
            k.eval(&[0.1, 0.2]),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        );
        assert!(KernelSpec::new(KernelFamily::Uniform, 0).is_err());
    }

    #[test]
    fn l2_moments_one_dimension() {
        let cos = KernelSpec::new(KernelFamily::CosineSquared, 1).unwrap();
        let uni = KernelSpec::new(KernelFamily::Uniform, 1).unwrap();
        let epa = KernelSpec::new(KernelFamily::Epanechnikov, 1).unwrap();
        assert_relative_eq!(kernel_l2_moment(&cos), 0.75, max_relative = 1e-12);
        assert_relative_eq!(kernel_l2_moment(&uni), 0.5, max_relative = 1e-12);
        assert_relative_eq!(kernel_l2_moment(&epa), 0.6, max_relative = 1e-12);
        // int cos^6(pi t / 2) over [-1, 1] = 5/8
        assert_relative_eq!(cos.l3_moment(), 0.625, max_relative = 1e-12);
        assert_relative_eq!(uni.normalizer(), 0.5);
        assert_relative_eq!(epa.normalizer(), 0.75, max_relative = 1e-15);
    }

    #[test]
    fn moments_agree_with_independent_quadrature() {
        for family in FAMILIES {
            let k = KernelSpec::new(family, 1).unwrap();
            let mass = gauss_legendre(|t| k1(&k, t), -1.0, 1.0, 400);
            let l2 = gauss_legendre(|t| k1(&k, t).powi(2), -1.0, 1.0, 400);
            let l3 = gauss_legendre(|t| k1(&k, t).powi(3), -1.0, 1.0, 400);
            assert!((mass - 1.0).abs() < 1e-9, "{family}: mass {mass}");
            assert!((l2 - k.l2_moment()).abs() < 1e-8, "{family}");
            assert!((l3 - k.l3_moment()).abs() < 1e-8, "{family}");
            assert!(k.l2_moment() > 0.0 && k.l3_moment() > 0.0);
        }
    }

    #[test]
    fn two_dimensional_kernels_integrate_to_one() {
        // Polar quadrature in x then y over the square [-1, 1]^2 is awkward at
        // the circular edge; integrate in polar coordinates with the angular
        // part done explicitly and the radial part by Gauss-Legendre.
        for family in FAMILIES {
            let k = KernelSpec::new(family, 2).unwrap();
            let mass = gauss_legendre(
                |r| {
                    let angular = gauss_legendre(
                        |theta| k.eval(&[r * theta.cos(), r * theta.sin()]).unwrap(),
                        0.0,
                        2.0 * PI,
                        16,
                    );
                    r * angular
                },
                0.0,
                1.0,
                200,
            );
            assert!((mass - 1.0).abs() < 1e-9, "{family}: {mass}");
        }
        // Closed form for the radial cosine kernel: mass of the unnormalized
        // profile is pi/2 - 2/pi.
        let k = KernelSpec::new(KernelFamily::CosineSquared, 2).unwrap();
        assert_relative_eq!(k.normalizer(), 1.0 / (FRAC_PI_2 - 2.0 / PI), max_relative = 1e-12);
    }

    #[test]
    fn three_dimensional_moments() {
        let k = KernelSpec::new(KernelFamily::CosineSquared, 3).unwrap();
        let radial = |q: i32| {
            4.0 * PI * gauss_legendre(|r| r * r * k.eval_radius(r).powi(q), 0.0, 1.0, 400)
        };
        assert!((radial(1) - 1.0).abs() < 1e-9);
        assert!((radial(2) - k.l2_moment()).abs() < 1e-8);
        assert!((radial(3) - k.l3_moment()).abs() < 1e-8);
        let uni = KernelSpec::new(KernelFamily::Uniform, 3).unwrap();
        assert_relative_eq!(uni.normalizer(), 3.0 / (4.0 * PI), max_relative = 1e-14);
    }

    #[test]
    fn scaling_preserves_mass() {
        let k = KernelSpec::cosine_squared();
        for &h in &[0.01, 0.3, 1.0, 7.5] {
            let mass = gauss_legendre(|v| k.eval_scaled(h, &[v]).unwrap(), -h, h, 200);
            assert!((mass - 1.0).abs() < 1e-8, "h={h}: {mass}");
        }
    }

    #[test]
    fn family_names_round_trip() {
        for family in FAMILIES {
            assert_eq!(family.name().parse::<KernelFamily>(), Ok(family));
        }
        assert!("gaussian".parse::<KernelFamily>().is_err());
    }

    proptest! {
        #[test]
        fn kernels_are_even_and_non_negative(t in -2.0f64..2.0) {
            for family in FAMILIES {
                let k = KernelSpec::new(family, 1).unwrap();
                prop_assert!(k1(&k, t) >= 0.0);
                prop_assert_eq!(k1(&k, t), k1(&k, -t));
                if t.abs() > 1.0 {
                    prop_assert_eq!(k1(&k, t), 0.0);
                }
            }
        }

        #[test]
        fn kernels_are_lipschitz(
            s in proptest::collection::vec(-1.5f64..1.5, 2),
            t in proptest::collection::vec(-1.5f64..1.5, 2),
        ) {
            for family in [KernelFamily::CosineSquared, KernelFamily::Epanechnikov] {
                for d in [1usize, 2] {
                    let k = KernelSpec::new(family, d).unwrap();
                    let a = k.eval(&s[..d]).unwrap();
                    let b = k.eval(&t[..d]).unwrap();
                    let dist = norm(&s[..d].iter().zip(&t[..d]).map(|(x, y)| x - y).collect::<Vec<_>>());
                    prop_assert!((a - b).abs() <= k.lipschitz() * dist + 1e-15);
                }
            }
        }
    }
}
