//! Bilinear maps realizing |x| = |u|^2 for D = 2, 4, 8, the S^3 fiber angles
//! and five-dimensional hyperspherical coordinates.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use hkit_algebra::Rational;

use crate::error::CoreError;

/// Field operations shared by exact and floating evaluation.
pub trait Num: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn int(n: i64) -> Self;
}

impl Num for f64 {
    fn int(n: i64) -> f64 {
        n as f64
    }
}

impl Num for Rational {
    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }
}

fn norm_sq<T: Num>(v: &[T]) -> T {
    v.iter().fold(T::int(0), |acc, x| acc + x.clone() * x.clone())
}

/// Signed index tables of H(u; D): entry `(s, k)` stands for `s * u_k`.
const H2: [[(i8, u8); 2]; 2] = [[(1, 0), (-1, 1)], [(1, 1), (1, 0)]];

const H4: [[(i8, u8); 4]; 4] = [
    [(1, 2), (-1, 3), (1, 0), (-1, 1)],
    [(1, 3), (1, 2), (1, 1), (1, 0)],
    [(1, 0), (1, 1), (-1, 2), (-1, 3)],
    [(1, 1), (-1, 0), (-1, 3), (1, 2)],
];

const H8: [[(i8, u8); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (-1, 4), (-1, 5), (-1, 6), (-1, 7)],
    [(1, 4), (1, 5), (-1, 6), (-1, 7), (1, 0), (1, 1), (-1, 2), (-1, 3)],
    [(1, 5), (-1, 4), (1, 7), (-1, 6), (-1, 1), (1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (1, 5), (1, 2), (1, 3), (1, 0), (1, 1)],
    [(1, 7), (-1, 6), (-1, 5), (1, 4), (1, 3), (-1, 2), (-1, 1), (1, 0)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (1, 7), (-1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (-1, 6), (1, 7), (1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (-1, 7), (-1, 6), (1, 5), (1, 4)],
];

/// H(u; D) as a table of signed u-indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMatrix {
    pub dim: usize,
    pub entries: Vec<Vec<(i8, u8)>>,
}

pub fn h_matrix(dim: usize) -> Result<HMatrix, CoreError> {
    let entries: Vec<Vec<(i8, u8)>> = match dim {
        2 => H2.iter().map(|r| r.to_vec()).collect(),
        4 => H4.iter().map(|r| r.to_vec()).collect(),
        8 => H8.iter().map(|r| r.to_vec()).collect(),
        d => return Err(CoreError::BadDimension(d)),
    };
    Ok(HMatrix { dim, entries })
}

/// Quadratic form in u as a map from sorted index pairs to integer coefficients.
pub type QuadForm = BTreeMap<(u8, u8), i64>;

impl HMatrix {
    pub fn eval<T: Num>(&self, u: &[T]) -> Vec<Vec<T>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&(s, k)| T::int(s as i64) * u[k as usize].clone()).collect())
            .collect()
    }

    pub fn apply<T: Num>(&self, u: &[T]) -> Vec<T> {
        self.eval(u)
            .into_iter()
            .map(|row| row.into_iter().zip(u.iter()).fold(T::int(0), |acc, (h, v)| acc + h * v.clone()))
            .collect()
    }

    /// (H H^T)_ij as symbolic quadratic forms in u.
    pub fn gram(&self) -> Vec<Vec<QuadForm>> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut form = QuadForm::new();
                        for k in 0..n {
                            let (si, vi) = self.entries[i][k];
                            let (sj, vj) = self.entries[j][k];
                            let key = (vi.min(vj), vi.max(vj));
                            *form.entry(key).or_insert(0) += (si * sj) as i64;
                        }
                        form.retain(|_, c| *c != 0);
                        form
                    })
                    .collect()
            })
            .collect()
    }

    /// Components of H(u; D) u as symbolic quadratic forms.
    pub fn image_forms(&self) -> Vec<QuadForm> {
        self.entries
            .iter()
            .map(|row| {
                let mut form = QuadForm::new();
                for (k, &(s, v)) in row.iter().enumerate() {
                    let k = k as u8;
                    *form.entry((v.min(k), v.max(k))).or_insert(0) += s as i64;
                }
                form.retain(|_, c| *c != 0);
                form
            })
            .collect()
    }

    /// Entries of H H^T - u^2 E(D) that fail to vanish identically.
    pub fn gram_defects(&self) -> Vec<(usize, usize, QuadForm)> {
        let u2: QuadForm = (0..self.dim as u8).map(|k| ((k, k), 1)).collect();
        let mut out = Vec::new();
        for (i, row) in self.gram().into_iter().enumerate() {
            for (j, form) in row.into_iter().enumerate() {
                let expected = if i == j { u2.clone() } else { QuadForm::new() };
                if form != expected {
                    out.push((i, j, form));
                }
            }
        }
        out
    }
}

pub fn levi_civita_map<T: Num>(u: &[T; 2]) -> [T; 2] {
    let x = h_matrix(2).expect("D = 2").apply(u);
    [x[0].clone(), x[1].clone()]
}

/// Returns the three nonzero components and the fourth row, which vanishes identically.
pub fn kustaanheimo_stiefel_map<T: Num>(u: &[T; 4]) -> ([T; 3], T) {
    let x = h_matrix(4).expect("D = 4").apply(u);
    ([x[0].clone(), x[1].clone(), x[2].clone()], x[3].clone())
}

/// The five quadratic components of the eight-dimensional map.
pub fn hurwitz_map<T: Num>(u: &[T; 8]) -> [T; 5] {
    let p = |a: usize, b: usize| u[a].clone() * u[b].clone();
    let two = T::int(2);
    [
        norm_sq(&u[0..4]) - norm_sq(&u[4..8]),
        two.clone() * (p(0, 4) - p(1, 5) - p(2, 6) - p(3, 7)),
        two.clone() * (p(0, 5) + p(1, 4) - p(2, 7) + p(3, 6)),
        two.clone() * (p(0, 6) + p(1, 7) + p(2, 4) - p(3, 5)),
        two * (p(0, 7) - p(1, 6) + p(2, 5) + p(3, 4)),
    ]
}

/// |x|^2 - |u|^4, which vanishes whenever |x| = |u|^2.
pub fn euler_defect<T: Num>(u: &[T], x: &[T]) -> T {
    let n = norm_sq(u);
    norm_sq(x) - n.clone() * n
}

/// U(1) fiber rotation of the eight-dimensional map: with z_k = u_{2k} + i u_{2k+1},
/// z1, z2, z4 -> e^{i phi} z and z3 -> e^{-i phi} z3.
pub fn fiber_rotate(u: &[f64; 8], phi: f64) -> [f64; 8] {
    let mut out = [0.0; 8];
    for k in 0..4 {
        let s = if k == 2 { -phi } else { phi };
        let (c, sn) = (s.cos(), s.sin());
        out[2 * k] = c * u[2 * k] - sn * u[2 * k + 1];
        out[2 * k + 1] = sn * u[2 * k] + c * u[2 * k + 1];
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn wrap(x: f64, period: f64) -> f64 {
    let y = x.rem_euclid(period);
    if y >= period { 0.0 } else { y }
}

/// alpha = p + q, gamma = q - p with alpha in [0, 2pi), gamma in [0, 4pi),
/// keeping (alpha - gamma)/2 = p and (alpha + gamma)/2 = q modulo 2pi.
fn paired(p: f64, q: f64) -> (f64, f64) {
    let mut alpha = p + q;
    let mut gamma = q - p;
    let shifts = (alpha / (2.0 * PI)).floor();
    alpha -= 2.0 * PI * shifts;
    gamma += 2.0 * PI * shifts;
    if alpha >= 2.0 * PI {
        alpha -= 2.0 * PI;
        gamma += 2.0 * PI;
    }
    (alpha, wrap(gamma, 4.0 * PI))
}

/// (alpha_T, beta_T, gamma_T) from the complex-log formulas, with
/// alpha_T = arg(u2 + i u3) - arg(u0 + i u1) and gamma_T = arg(u0 + i u1) + arg(u2 + i u3).
pub fn body_angles(u: &[f64; 8]) -> Result<AngleTriple, CoreError> {
    let n01 = u[0] * u[0] + u[1] * u[1];
    let n23 = u[2] * u[2] + u[3] * u[3];
    if n01 == 0.0 || n23 == 0.0 {
        return Err(CoreError::UndefinedAngle);
    }
    let psi0 = u[1].atan2(u[0]);
    let psi1 = u[3].atan2(u[2]);
    let (alpha, gamma) = paired(-psi0, psi1);
    Ok(AngleTriple { alpha, beta: 2.0 * (n01 / n23).sqrt().atan(), gamma })
}

/// Space angles of a point of R^5 (components x1..x4 used).
pub fn space_angles(x: &[f64; 5]) -> Result<AngleTriple, CoreError> {
    let rho1 = x[1].hypot(x[2]);
    let rho2 = x[3].hypot(x[4]);
    if rho1 == 0.0 || rho2 == 0.0 {
        return Err(CoreError::UndefinedAngle);
    }
    let phi1 = x[1].atan2(x[2]);
    let phi2 = x[3].atan2(x[4]);
    let (alpha, gamma) = paired(phi1, phi2);
    Ok(AngleTriple { alpha, beta: 2.0 * (rho1 / rho2).atan(), gamma })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperSpherical {
    pub r: f64,
    pub theta: f64,
    pub angles: AngleTriple,
}

impl HyperSpherical {
    /// Coordinates in the order (r, theta, beta, alpha, gamma).
    pub fn as_array(&self) -> [f64; 5] {
        [self.r, self.theta, self.angles.beta, self.angles.alpha, self.angles.gamma]
    }

    pub fn from_array(c: [f64; 5]) -> HyperSpherical {
        HyperSpherical { r: c[0], theta: c[1], angles: AngleTriple { beta: c[2], alpha: c[3], gamma: c[4] } }
    }
}

pub fn hyperspherical(x: &[f64; 5]) -> Result<HyperSpherical, CoreError> {
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(CoreError::ZeroRadius);
    }
    let transverse = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4]).sqrt();
    let theta = transverse.atan2(x[0]);
    Ok(HyperSpherical { r, theta, angles: space_angles(x)? })
}

/// x0 = r cos(theta), x2 + i x1 = r sin(theta) sin(beta/2) e^{i(alpha-gamma)/2},
/// x4 + i x3 = r sin(theta) cos(beta/2) e^{i(alpha+gamma)/2}.
pub fn hyperspherical_inverse(h: &HyperSpherical) -> [f64; 5] {
    let AngleTriple { alpha, beta, gamma } = h.angles;
    let s = h.r * h.theta.sin();
    let (p, q) = ((alpha - gamma) / 2.0, (alpha + gamma) / 2.0);
    let a = s * (beta / 2.0).sin();
    let b = s * (beta / 2.0).cos();
    [h.r * h.theta.cos(), a * p.sin(), a * p.cos(), b * q.sin(), b * q.cos()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn map_examples() {
        let e1: [Rational; 8] = std::array::from_fn(|k| q((k == 0) as i64));
        assert_eq!(hurwitz_map(&e1), [q(1), q(0), q(0), q(0), q(0)]);
        let u: [i64; 8] = [1, 0, 0, 0, 1, 0, 0, 0];
        assert_eq!(hurwitz_map(&u.map(q)), [q(0), q(2), q(0), q(0), q(0)]);
        assert_eq!(levi_civita_map(&[q(3), q(4)]), [q(-7), q(24)]);
        assert_eq!(levi_civita_map(&[q(1), q(0)]), [q(1), q(0)]);
        let (x, last) = kustaanheimo_stiefel_map(&[q(1), q(0), q(0), q(0)]);
        assert_eq!(x, [q(0), q(0), q(1)]);
        assert_eq!(last, q(0));
    }

    #[test]
    fn gram_is_diagonal() {
        for d in [2, 4, 8] {
            assert!(h_matrix(d).unwrap().gram_defects().is_empty(), "D = {d}");
        }
        assert_eq!(h_matrix(3), Err(CoreError::BadDimension(3)));
    }

    #[test]
    fn body_angle_examples() {
        let a = body_angles(&[1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!((a.alpha, a.beta, a.gamma), (0.0, PI / 2.0, 0.0));
        let b = body_angles(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((b.alpha - 1.5 * PI).abs() < 1e-15);
        assert!((b.beta - PI / 2.0).abs() < 1e-15);
        assert_eq!(body_angles(&[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]), Err(CoreError::UndefinedAngle));
    }

    #[test]
    fn polar_axis_is_undefined() {
        assert_eq!(hyperspherical(&[2.0, 0.0, 0.0, 0.0, 0.0]), Err(CoreError::UndefinedAngle));
        assert_eq!(hyperspherical(&[0.0; 5]), Err(CoreError::ZeroRadius));
    }

    #[test]
    fn round_trip_example() {
        let x = [0.0, 0.0, 1.0, 0.0, 1.0];
        let h = hyperspherical(&x).unwrap();
        assert!((h.r - 2f64.sqrt()).abs() < 1e-15);
        assert!((h.theta - PI / 2.0).abs() < 1e-15);
        let back = hyperspherical_inverse(&h);
        for k in 0..5 {
            assert!((back[k] - x[k]).abs() < 1e-15);
        }
    }
}
