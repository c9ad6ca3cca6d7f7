//! Simultaneous polynomial root finding (Aberth–Ehrlich) with Newton
//! polishing.

use num_complex::Complex64;

const MAX_ITER: usize = 500;

/// Horner evaluation of `p(z)` and `p'(z)`; `coeffs` ascending.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|p(z)|` relative to `Σ |cₖ| |z|^k`, so the residual is scale free.
pub(crate) fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(coeffs, z);
    let r = z.norm();
    let mut scale = 0.0;
    let mut rk = 1.0;
    for c in coeffs {
        scale += c.norm() * rk;
        rk *= r;
    }
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All roots of the polynomial with ascending coefficients `coeffs`, whose
/// leading coefficient must be nonzero. Returns `None` on non-convergence.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Some(vec![-monic[0]]);
    }
    // Fujiwara-style radius, initial points spread on a circle with an
    // irrational phase so no guess sits on a symmetry axis.
    let radius = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut converged = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                all = false;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    z.iter()
        .all(|r| r.re.is_finite() && r.im.is_finite())
        .then_some(z)
}

/// A few Newton steps, kept only while they reduce the residual.
pub(crate) fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut best = relative_residual(coeffs, z);
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let candidate = z - p / dp;
        let r = relative_residual(coeffs, candidate);
        if !(r < best) {
            break;
        }
        z = candidate;
        best = r;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cubic_with_known_roots() {
        // (z − 1)(z + 2)(z − 3) = z³ − 2z² − 5z + 6
        let p = [c(6.0), c(-5.0), c(-2.0), c(1.0)];
        let mut roots: Vec<f64> = aberth(&p).unwrap().iter().map(|r| r.re).collect();
        roots.sort_by(f64::total_cmp);
        for (r, e) in roots.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((r - e).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_roots() {
        let mut p = vec![c(0.0); 7];
        p[0] = c(-1.0);
        p[6] = c(1.0);
        let roots = aberth(&p).unwrap();
        for r in roots {
            assert!((r.norm() - 1.0).abs() < 1e-13);
            assert!(relative_residual(&p, r) < 1e-14);
        }
    }
}
