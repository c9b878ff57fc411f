//! Topological charge of the monopole field by tensor-product quadrature over
//! the angular four-sphere.

use std::f64::consts::PI;

use crate::error::CoreError;
use crate::hyper::{calibrate_orientation, charge_density, surface_measure};

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Node counts: Gauss-Legendre in theta and beta, uniform in alpha and gamma.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub n_theta: usize,
    pub n_beta: usize,
    pub n_alpha: usize,
    pub n_gamma: usize,
}

impl QuadratureSpec {
    pub fn new(n_theta: usize, n_beta: usize, n_alpha: usize, n_gamma: usize) -> Result<QuadratureSpec, CoreError> {
        let spec = QuadratureSpec { n_theta, n_beta, n_alpha, n_gamma };
        if spec.counts().iter().any(|&n| n < 2) {
            return Err(CoreError::InvalidInput("every node count must be at least 2".into()));
        }
        Ok(spec)
    }

    pub fn counts(&self) -> [usize; 4] {
        [self.n_theta, self.n_beta, self.n_alpha, self.n_gamma]
    }

    pub fn doubled(&self) -> QuadratureSpec {
        QuadratureSpec { n_theta: 2 * self.n_theta, n_beta: 2 * self.n_beta, n_alpha: 2 * self.n_alpha, n_gamma: 2 * self.n_gamma }
    }
}

impl Default for QuadratureSpec {
    fn default() -> QuadratureSpec {
        QuadratureSpec { n_theta: 16, n_beta: 16, n_alpha: 8, n_gamma: 8 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChargeResult {
    pub q: f64,
    pub q_per_component: [f64; 3],
    pub estimated_error: f64,
}

fn mapped(n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (hi - lo);
    x.iter().zip(&w).map(|(x, w)| (lo + half * (x + 1.0), half * w)).collect()
}

fn uniform(n: usize, period: f64) -> Vec<(f64, f64)> {
    (0..n).map(|k| (period * (k as f64 + 0.5) / n as f64, period / n as f64)).collect()
}

/// Pairwise summation for reproducible reductions.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// q^a = (1/32 pi^2) \oint *F^a F^a dS on the sphere of the given radius.
pub fn charge_at(spec: &QuadratureSpec, radius: f64, orientation: f64) -> Result<[f64; 3], CoreError> {
    let th = mapped(spec.n_theta, 0.0, PI);
    let be = mapped(spec.n_beta, 0.0, PI);
    let al = uniform(spec.n_alpha, 2.0 * PI);
    let ga = uniform(spec.n_gamma, 4.0 * PI);
    let slab = |&(t, wt): &(f64, f64)| -> Result<[Vec<f64>; 3], CoreError> {
        let mut terms: [Vec<f64>; 3] = Default::default();
        for &(b, wb) in &be {
            for &(a, wa) in &al {
                for &(g, wg) in &ga {
                    let h = [radius, t, b, a, g];
                    let w = wt * wb * wa * wg * surface_measure(&h);
                    let d = charge_density(&h, orientation)?;
                    for k in 0..3 {
                        terms[k].push(w * d[k]);
                    }
                }
            }
        }
        Ok(terms)
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(th.len());
    let chunk = th.len().div_ceil(workers);
    let slabs: Vec<Result<[Vec<f64>; 3], CoreError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = th.chunks(chunk).map(|part| scope.spawn(move || part.iter().map(slab).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("quadrature worker")).collect()
    });
    // concatenated in node order, so the sum does not depend on the worker count
    let mut terms: [Vec<f64>; 3] = Default::default();
    for s in slabs {
        let s = s?;
        for k in 0..3 {
            terms[k].extend_from_slice(&s[k]);
        }
    }
    let norm = 1.0 / (32.0 * PI * PI);
    Ok(std::array::from_fn(|k| norm * pairwise_sum(&terms[k])))
}

/// q and q^a with the error estimated from a run at doubled node counts.
pub fn topological_charge(spec: &QuadratureSpec, radius: f64) -> Result<ChargeResult, CoreError> {
    if !(radius > 0.0) {
        return Err(CoreError::ZeroRadius);
    }
    let orientation = calibrate_orientation()?;
    let per = charge_at(spec, radius, orientation)?;
    let fine = charge_at(&spec.doubled(), radius, orientation)?;
    let q = pairwise_sum(&per);
    Ok(ChargeResult { q, q_per_component: per, estimated_error: (pairwise_sum(&fine) - q).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(5);
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((integral - 2.0 / 9.0).abs() < 1e-15);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn unit_charge() {
        let t = std::time::Instant::now();
        let c = topological_charge(&QuadratureSpec::default(), 1.0).unwrap();
        println!("{c:?} {:?}", t.elapsed());
        assert!((c.q - 1.0).abs() < 1e-10);
        for qa in c.q_per_component {
            assert!((qa - 1.0 / 3.0).abs() < 1e-10);
        }
    }
}
