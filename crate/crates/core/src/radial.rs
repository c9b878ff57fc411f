//! Finite-difference eigensolvers for the D-dimensional oscillator and the
//! d-dimensional Coulomb radial equations, and the map r = u^2 between them.

use crate::error::CoreError;

/// Symmetric tridiagonal matrix with constant off-diagonal.
#[derive(Clone, Debug)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: f64,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let b2 = self.off * self.off;
        let mut q = 1.0;
        let mut count = 0;
        for (i, &a) in self.diag.iter().enumerate() {
            q = if i == 0 { a - lambda } else { a - lambda - b2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (a.abs() + self.off.abs() + 1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn bounds(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - r;
        let hi = self.diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + r;
        (lo, hi)
    }

    /// The k-th smallest eigenvalue (0-based) by Sturm bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.bounds();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solves (T - shift) x = rhs by the Thomas algorithm.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let b = self.off;
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut denom = self.diag[0] - shift;
        c[0] = b / denom;
        d[0] = rhs[0] / denom;
        for i in 1..n {
            denom = self.diag[i] - shift - b * c[i - 1];
            if denom == 0.0 {
                denom = f64::EPSILON;
            }
            c[i] = b / denom;
            d[i] = (rhs[i] - b * d[i - 1]) / denom;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    }

    /// Unit eigenvector for an eigenvalue by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shift = lambda + 1e-10 * lambda.abs().max(1e-300);
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + (i % 7) as f64 * 1e-3).collect();
        for _ in 0..4 {
            x = self.solve_shifted(shift, &x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }

    pub fn residual(&self, lambda: f64, x: &[f64]) -> f64 {
        let n = x.len();
        let mut acc = 0.0;
        for i in 0..n {
            let mut y = (self.diag[i] - lambda) * x[i];
            if i > 0 {
                y += self.off * x[i - 1];
            }
            if i + 1 < n {
                y += self.off * x[i + 1];
            }
            acc += y * y;
        }
        acc.sqrt() / x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// -(hbar^2/2m) chi'' + [hbar^2 c/(2m x^2) + V(x)] chi = E chi on (0, x_max), chi = 0 at both ends.
pub struct ReducedProblem<'a> {
    pub x_max: f64,
    pub n_points: usize,
    pub mass: f64,
    pub hbar: f64,
    pub centrifugal: f64,
    pub potential: &'a dyn Fn(f64) -> f64,
}

impl ReducedProblem<'_> {
    pub fn step(&self) -> f64 {
        self.x_max / (self.n_points + 1) as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        let h = self.step();
        (1..=self.n_points).map(|i| i as f64 * h).collect()
    }

    pub fn matrix(&self) -> Tridiagonal {
        let h = self.step();
        let kin = self.hbar * self.hbar / (2.0 * self.mass);
        let diag = self.grid().into_iter().map(|x| 2.0 * kin / (h * h) + kin * self.centrifugal / (x * x) + (self.potential)(x)).collect();
        Tridiagonal { diag, off: -kin / (h * h) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult {
    /// Richardson-extrapolated eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues on the base grid before extrapolation.
    pub raw: Vec<f64>,
    pub grid: Vec<f64>,
    /// Richardson-combined eigenvectors of the reduced function chi on the base grid.
    pub eigenvectors: Vec<Vec<f64>>,
    pub residual_norms: Vec<f64>,
}

pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_POINTS: usize = 4096;

// Fine node 2i + 1 coincides with base node i. Both vectors are scaled to unit
// quadrature norm with matching sign before combining.
fn extrapolate_vector(base: &[f64], fine: &[f64]) -> Vec<f64> {
    let scaled = |v: &[f64], h: f64| {
        let norm = (v.iter().map(|x| x * x).sum::<f64>() * h).sqrt();
        let peak = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        let s = peak.signum() / norm;
        v.iter().map(|x| x * s).collect::<Vec<_>>()
    };
    let b = scaled(base, 2.0);
    let f = scaled(fine, 1.0);
    b.iter().enumerate().map(|(i, c)| (4.0 * f[2 * i + 1] - c) / 3.0).collect()
}

pub fn solve_reduced(problem: &ReducedProblem, levels: usize) -> Result<EigenResult, CoreError> {
    if problem.n_points < 64 {
        return Err(CoreError::GridTooCoarse(format!("{} points, at least 64 required", problem.n_points)));
    }
    let base = problem.matrix();
    let fine = ReducedProblem { n_points: 2 * problem.n_points + 1, ..*problem }.matrix();
    let mut eigenvalues = Vec::new();
    let mut raw = Vec::new();
    let mut eigenvectors = Vec::new();
    let mut residual_norms = Vec::new();
    for k in 0..levels {
        let coarse = base.eigenvalue(k);
        let refined = fine.eigenvalue(k);
        let v = base.eigenvector(coarse);
        let res = base.residual(coarse, &v) / coarse.abs().max(1.0);
        if !(res < RESIDUAL_TOLERANCE) {
            return Err(CoreError::GridTooCoarse(format!("level {k}: residual {res:e}")));
        }
        let w = fine.eigenvector(refined);
        raw.push(coarse);
        eigenvalues.push((4.0 * refined - coarse) / 3.0);
        eigenvectors.push(extrapolate_vector(&v, &w));
        residual_norms.push(res);
    }
    Ok(EigenResult { eigenvalues, raw, grid: problem.grid(), eigenvectors, residual_norms })
}

/// Radial equation of the D-dimensional isotropic oscillator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Oscillator {
    pub dim: u32,
    pub l: u32,
    pub omega: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl Oscillator {
    pub fn new(dim: u32, l: u32, omega: f64) -> Result<Oscillator, CoreError> {
        if dim <= 2 {
            return Err(CoreError::InvalidInput(format!("oscillator dimension must exceed 2, got {dim}")));
        }
        if !(omega > 0.0) {
            return Err(CoreError::InvalidInput("omega must be positive".into()));
        }
        Ok(Oscillator { dim, l, omega, mass: 1.0, hbar: 1.0 })
    }

    /// hbar omega (2 n_r + L + D/2).
    pub fn exact_level(&self, n_r: usize) -> f64 {
        self.hbar * self.omega * (2.0 * n_r as f64 + self.l as f64 + self.dim as f64 / 2.0)
    }

    /// L(L + D - 2) + (D - 1)(D - 3)/4 after R = u^{-(D-1)/2} chi.
    pub fn centrifugal(&self) -> f64 {
        let (l, d) = (self.l as f64, self.dim as f64);
        l * (l + d - 2.0) + (d - 1.0) * (d - 3.0) / 4.0
    }

    pub fn domain(&self, levels: usize) -> f64 {
        let e = self.exact_level(levels.saturating_sub(1));
        let turning = (2.0 * e / (self.mass * self.omega * self.omega)).sqrt();
        let length = (self.hbar / (self.mass * self.omega)).sqrt();
        1.5 * turning + 6.0 * length
    }

    pub fn solve(&self, levels: usize, n_points: usize) -> Result<EigenResult, CoreError> {
        let k = 0.5 * self.mass * self.omega * self.omega;
        let v = move |u: f64| k * u * u;
        let p = ReducedProblem { x_max: self.domain(levels), n_points, mass: self.mass, hbar: self.hbar, centrifugal: self.centrifugal(), potential: &v };
        solve_reduced(&p, levels)
    }
}

/// Radial equation of the d-dimensional Coulomb problem; d and l may be half-integers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coulomb {
    pub dim: f64,
    pub l: f64,
    pub e2: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl Coulomb {
    pub fn new(dim: f64, l: f64, e2: f64) -> Result<Coulomb, CoreError> {
        if !(e2 > 0.0) {
            return Err(CoreError::InvalidInput("e^2 must be positive".into()));
        }
        if !(dim > 1.0) || l < 0.0 {
            return Err(CoreError::InvalidInput(format!("d = {dim}, l = {l}")));
        }
        Ok(Coulomb { dim, l, e2, mass: 1.0, hbar: 1.0 })
    }

    /// -m e^4 / (2 hbar^2 (n_r + l + (d - 1)/2)^2).
    pub fn exact_level(&self, n_r: usize) -> f64 {
        let n = n_r as f64 + self.l + (self.dim - 1.0) / 2.0;
        -self.mass * self.e2 * self.e2 / (2.0 * self.hbar * self.hbar * n * n)
    }

    pub fn centrifugal(&self) -> f64 {
        let (l, d) = (self.l, self.dim);
        l * (l + d - 2.0) + (d - 1.0) * (d - 3.0) / 4.0
    }

    /// Sized from the hydrogenic estimate of the highest requested level.
    pub fn domain(&self, levels: usize) -> f64 {
        let eps = self.exact_level(levels.saturating_sub(1)).abs();
        let turning = self.e2 / eps;
        let decay = self.hbar / (2.0 * self.mass * eps).sqrt();
        1.5 * turning + 40.0 * decay
    }

    pub fn solve(&self, levels: usize, n_points: usize) -> Result<EigenResult, CoreError> {
        let e2 = self.e2;
        let v = move |r: f64| -e2 / r;
        let p = ReducedProblem { x_max: self.domain(levels), n_points, mass: self.mass, hbar: self.hbar, centrifugal: self.centrifugal(), potential: &v };
        solve_reduced(&p, levels)
    }
}

/// Coulomb data (e^2, epsilon) dual to an oscillator level: e^2 = E/4, epsilon = -m omega^2 / 8.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualCoulomb {
    pub dim: f64,
    pub l: f64,
    pub e2: f64,
    pub epsilon: f64,
}

pub fn duality_map(osc: &Oscillator, energy: f64) -> DualCoulomb {
    DualCoulomb {
        dim: osc.dim as f64 / 2.0 + 1.0,
        l: osc.l as f64 / 2.0,
        e2: energy / 4.0,
        epsilon: -osc.mass * osc.omega * osc.omega / 8.0,
    }
}

/// Inverse direction: oscillator (E, omega) from Coulomb (e^2, epsilon < 0).
pub fn duality_map_inverse(e2: f64, epsilon: f64, mass: f64) -> Result<(f64, f64), CoreError> {
    if epsilon > 0.0 {
        return Err(CoreError::InvalidInput("epsilon must be non-positive".into()));
    }
    Ok((4.0 * e2, (-8.0 * epsilon / mass).sqrt()))
}

/// Ansatz for V(u^2) = c0 + c1 u^2 + W(u^2): epsilon = -c1/4, e^2 = (E - c0)/4.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModifiedAnsatz {
    pub epsilon: f64,
    pub e2: f64,
    pub degenerate: bool,
}

pub fn modified_ansatz(c0: f64, c1: f64, energy: f64) -> ModifiedAnsatz {
    let e2 = (energy - c0) / 4.0;
    ModifiedAnsatz { epsilon: -c1 / 4.0, e2, degenerate: e2 == 0.0 }
}

/// Oscillator-like potential c0 + c1 u^2 + sum_n c_n u^{2n} and its dual after r = u^2,
/// -e^2/r + sum_n c_n r^{n-1}/4.
#[derive(Clone, Debug, PartialEq)]
pub struct Modified {
    pub dim: u32,
    pub l: u32,
    pub coeffs: Vec<f64>,
    pub mass: f64,
    pub hbar: f64,
}

impl Modified {
    fn higher(&self, s: f64) -> f64 {
        self.coeffs.iter().enumerate().skip(2).map(|(n, c)| c * s.powi(n as i32)).sum()
    }

    pub fn solve(&self, levels: usize, n_points: usize, x_max: f64) -> Result<EigenResult, CoreError> {
        let osc = Oscillator { dim: self.dim, l: self.l, omega: 1.0, mass: self.mass, hbar: self.hbar };
        let v = |u: f64| {
            let s = u * u;
            self.coeffs.first().copied().unwrap_or(0.0) + self.coeffs.get(1).copied().unwrap_or(0.0) * s + self.higher(s)
        };
        let p = ReducedProblem { x_max, n_points, mass: self.mass, hbar: self.hbar, centrifugal: osc.centrifugal(), potential: &v };
        solve_reduced(&p, levels)
    }

    /// Levels of the dual r-equation at coupling e^2; the level equal to -c1/4
    /// is the image of an oscillator level E with e^2 = (E - c0)/4.
    pub fn solve_dual(&self, e2: f64, levels: usize, n_points: usize, x_max: f64) -> Result<EigenResult, CoreError> {
        let d = self.dim as f64 / 2.0 + 1.0;
        let l = self.l as f64 / 2.0;
        let v = |r: f64| -e2 / r + self.higher(r) / (4.0 * r);
        let c = l * (l + d - 2.0) + (d - 1.0) * (d - 3.0) / 4.0;
        let p = ReducedProblem { x_max, n_points, mass: self.mass, hbar: self.hbar, centrifugal: c, potential: &v };
        solve_reduced(&p, levels)
    }
}

/// Inserts the oscillator eigenfunction, resampled at r_i = u_i^2, into the
/// Coulomb radial equation and returns the relative residual norm.
pub fn substitution_residual(osc: &Oscillator, result: &EigenResult, level: usize, epsilon: f64, e2: f64) -> Result<f64, CoreError> {
    let chi = result.eigenvectors.get(level).ok_or_else(|| CoreError::InvalidInput(format!("level {level} not solved")))?;
    let u = &result.grid;
    let d_osc = osc.dim as f64;
    let d = d_osc / 2.0 + 1.0;
    let l = osc.l as f64 / 2.0;
    let radial: Vec<f64> = u.iter().zip(chi).map(|(u, c)| c * u.powf(-(d_osc - 1.0) / 2.0)).collect();
    let r: Vec<f64> = u.iter().map(|u| u * u).collect();
    let k = 2.0 * osc.mass / (osc.hbar * osc.hbar);
    let peak = radial.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let start = r.len() / 50;
    if start < 2 {
        return Err(CoreError::InterpolationFailure("grid too short to stay away from r = 0".into()));
    }
    let h = u[1] - u[0];
    let (mut num, mut den) = (0.0, 0.0);
    for i in start.max(2)..r.len() - 2 {
        if radial[i].abs() < 1e-8 * peak {
            continue;
        }
        let f = |k: usize| radial[k];
        let du = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) / (12.0 * h);
        let duu = (-f(i - 2) + 16.0 * f(i - 1) - 30.0 * f(i) + 16.0 * f(i + 1) - f(i + 2)) / (12.0 * h * h);
        // d/dr = (1/2u) d/du
        let d1 = du / (2.0 * u[i]);
        let d2 = (duu - du / u[i]) / (4.0 * u[i] * u[i]);
        let source = k * (epsilon + e2 / r[i]) * radial[i];
        let centrifugal = l * (l + d - 2.0) / (r[i] * r[i]) * radial[i];
        let res = d2 + (d - 1.0) / r[i] * d1 - centrifugal + source;
        num += res * res;
        den += source * source + centrifugal * centrifugal;
    }
    if den == 0.0 {
        return Err(CoreError::InterpolationFailure("eigenfunction vanishes on the sampled range".into()));
    }
    Ok((num / den).sqrt())
}

/// Observed convergence order of the unextrapolated ground state under grid halving.
pub fn convergence_order(osc: &Oscillator, n_points: usize) -> Result<f64, CoreError> {
    let exact = osc.exact_level(0);
    let mut errs = Vec::new();
    for k in 0..3 {
        let n = (n_points + 1) * (1 << k) - 1;
        errs.push((osc.solve(1, n)?.raw[0] - exact).abs());
    }
    Ok(((errs[0] / errs[1]).log2() + (errs[1] / errs[2]).log2()) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn oscillator_examples() {
        for (d, l, w, e) in [(8, 0, 1.0, 4.0), (8, 2, 1.0, 6.0), (4, 0, 2.0, 4.0)] {
            let res = Oscillator::new(d, l, w).unwrap().solve(3, DEFAULT_POINTS).unwrap();
            println!("{d} {l} {w}: {:?} raw {:?}", res.eigenvalues, res.raw);
            assert!(rel(res.eigenvalues[0], e) < 1e-6);
        }
    }

    #[test]
    fn coulomb_examples() {
        for (d, l, e) in [(5.0, 0.0, -0.125), (5.0, 0.5, -0.08), (3.0, 0.0, -0.5)] {
            let res = Coulomb::new(d, l, 1.0).unwrap().solve(3, DEFAULT_POINTS).unwrap();
            println!("{d} {l}: {:?} raw {:?}", res.eigenvalues, res.raw);
            assert!(rel(res.eigenvalues[0], e) < 1e-6);
        }
    }

    #[test]
    fn substitution() {
        let osc = Oscillator::new(8, 0, 1.0).unwrap();
        let res = osc.solve(1, DEFAULT_POINTS).unwrap();
        let dual = duality_map(&osc, res.eigenvalues[0]);
        let good = substitution_residual(&osc, &res, 0, dual.epsilon, dual.e2).unwrap();
        let bad = substitution_residual(&osc, &res, 0, 1.1 * dual.epsilon, dual.e2).unwrap();
        println!("{good:e} {bad:e} order {}", convergence_order(&osc, 512).unwrap());
    }
}
