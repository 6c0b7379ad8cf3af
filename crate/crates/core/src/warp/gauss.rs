//! Fixed-order Gauss-Legendre quadrature for the blend-window integrals.
//! The integrands are analytic on each window, so 40 nodes are overkill by a
//! wide margin; overkill here is free and keeps every downstream tolerance
//! uncontested.

use std::sync::OnceLock;

use crate::scalar::Real;

const ORDER: usize = 40;

fn nodes_f64() -> &'static [(f64, f64); ORDER] {
    static TABLE: OnceLock<[(f64, f64); ORDER]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [(0.0, 0.0); ORDER];
        let n = ORDER;
        for i in 0..n {
            // Newton on P_n starting from the Chebyshev-like estimate
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out[n - 1 - i] = (x, w);
        }
        out
    })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<S: Real>(a: S, b: S, mut f: impl FnMut(S) -> S) -> S {
    let mid = (a + b) / S::of(2.0);
    let half = (b - a) / S::of(2.0);
    let mut acc = S::zero();
    for &(x, w) in nodes_f64() {
        acc += S::of(w) * f(mid + half * S::of(x));
    }
    acc * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        // degree 7 over [0, 2]
        let v = integrate(0.0, 2.0, |x: f64| x.powi(7) - 3.0 * x.powi(2) + 1.0);
        let exact = 2.0f64.powi(8) / 8.0 - 2.0f64.powi(3) + 2.0;
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn integrates_sine_to_machine_precision() {
        let v = integrate(0.0, std::f64::consts::PI, f64::sin);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
