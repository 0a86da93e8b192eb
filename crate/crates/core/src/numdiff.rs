//! Finite difference Wirtinger derivatives on the closed chart
//! `{|z| ≤ R} × {|ν| ≤ 1}`. Stencils that would leave the chart are replaced
//! by second order one-sided stencils pointing inward.

use crate::scalar::{lit, Real};
use num_complex::Complex;

/// The four Wirtinger partials `∂z, ∂z̄, ∂ν, ∂ν̄` of one function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WirtingerPartials<T> {
    pub dz: Complex<T>,
    pub dzbar: Complex<T>,
    pub dnu: Complex<T>,
    pub dnubar: Complex<T>,
}

/// Derivative of `g` at `0` along a real parameter. Central differences are
/// used when both samples lie in the chart, a one-sided stencil when one
/// side does, and otherwise (tangent directions at the boundary) a central
/// stencil whose samples `g` projects radially back into the chart, which
/// perturbs them only at second order.
fn directional<T: Real, G, I>(g: G, inside: I, h: T) -> Complex<T>
where
    G: Fn(T) -> Complex<T>,
    I: Fn(T) -> bool,
{
    let two = lit::<T>(2.0);
    let central = inside(h) && inside(-h);
    let side = [h, -h].into_iter().find(|&s| inside(s) && inside(two * s));
    match side {
        Some(s) if !central => {
            // (-3 f0 + 4 f1 - f2) / 2h
            (g(T::zero()) * lit::<T>(-3.0) + g(s) * lit::<T>(4.0) - g(two * s)) / (two * s)
        }
        _ => (g(h) - g(-h)) / (two * h),
    }
}

fn project<T: Real>(p: Complex<T>, radius: T) -> Complex<T> {
    let n = p.norm();
    if n > radius {
        p * (radius / n)
    } else {
        p
    }
}

/// Wirtinger partials of `f(z, ν)` with real step `h`.
pub fn wirtinger_fd<T: Real, F>(f: F, z: Complex<T>, nu: Complex<T>, h: T, z_radius: T) -> WirtingerPartials<T>
where
    F: Fn(Complex<T>, Complex<T>) -> Complex<T>,
{
    let slack = T::one() + lit(1e-12);
    let in_z = |dz: Complex<T>| (z + dz).norm() <= z_radius * slack;
    let in_nu = |dn: Complex<T>| (nu + dn).norm() <= slack;
    let i = Complex::new(T::zero(), T::one());
    let one = Complex::new(T::one(), T::zero());
    let half = lit::<T>(0.5);

    let fz = |dz: Complex<T>| f(project(z + dz, z_radius), nu);
    let fnu = |dn: Complex<T>| f(z, project(nu + dn, T::one()));

    let dx = directional(|t| fz(one * t), |t| in_z(one * t), h);
    let dy = directional(|t| fz(i * t), |t| in_z(i * t), h);
    let da = directional(|t| fnu(one * t), |t| in_nu(one * t), h);
    let db = directional(|t| fnu(i * t), |t| in_nu(i * t), h);
    WirtingerPartials {
        dz: (dx - i * dy) * half,
        dzbar: (dx + i * dy) * half,
        dnu: (da - i * db) * half,
        dnubar: (da + i * db) * half,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_partials() {
        // f = z² z̄ + ν̄
        let f = |z: Complex<f64>, nu: Complex<f64>| z * z * z.conj() + nu.conj();
        let z = Complex::new(0.3, -0.2);
        let nu = Complex::new(0.1, 0.4);
        let p = wirtinger_fd(f, z, nu, 1e-5, 1.0);
        assert!((p.dz - z * z.conj() * 2.0).norm() < 1e-9);
        assert!((p.dzbar - z * z).norm() < 1e-9);
        assert!(p.dnu.norm() < 1e-9);
        assert!((p.dnubar - 1.0).norm() < 1e-9);
    }

    #[test]
    fn boundary_stencils_stay_inside() {
        let f = |z: Complex<f64>, nu: Complex<f64>| {
            assert!(z.norm() <= 1.0 + 1e-12 && nu.norm() <= 1.0 + 1e-12);
            z * nu * nu
        };
        let z = Complex::new(1.0, 0.0);
        let nu = Complex::new(0.0, 1.0);
        let p = wirtinger_fd(f, z, nu, 1e-5, 1.0);
        assert!((p.dz - nu * nu).norm() < 1e-8);
        assert!((p.dnu - z * nu * 2.0).norm() < 1e-8);
        assert!(p.dzbar.norm() < 1e-8 && p.dnubar.norm() < 1e-8);
    }
}
