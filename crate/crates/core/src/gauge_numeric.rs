//! Numeric checks of the angular su(2) generators and of the gauge
//! transformation between the two charts, in the spin-1/2 representation.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hkit_algebra::isospin::epsilon;
use hkit_algebra::{Chart, Point5};

use crate::error::CoreError;
use crate::gauge::GaugePotential;
use crate::report::CheckReport;

/// Coefficient of d/d alpha in T1: the printed cos(beta) or cot(beta).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T1Variant {
    Printed,
    Cotangent,
}

impl T1Variant {
    pub fn name(self) -> &'static str {
        match self {
            T1Variant::Printed => "cos(alpha) cos(beta)",
            T1Variant::Cotangent => "cos(alpha) cot(beta)",
        }
    }
}

/// Real vector fields V_a with T_a = i V_a (components along alpha, beta, gamma).
fn field(a: usize, variant: T1Variant, p: [f64; 3]) -> [f64; 3] {
    let [al, be, _] = p;
    let x = match variant {
        T1Variant::Printed => be.cos(),
        T1Variant::Cotangent => be.cos() / be.sin(),
    };
    match a {
        1 => [al.cos() * x, al.sin(), -al.cos() / be.sin()],
        2 => [al.sin() * be.cos() / be.sin(), -al.cos(), -al.sin() / be.sin()],
        3 => [-1.0, 0.0, 0.0],
        _ => unreachable!(),
    }
}

pub const FD_STEP: f64 = 1e-5;

/// dV/dp_j by central differences.
fn field_derivative(a: usize, variant: T1Variant, p: [f64; 3], j: usize) -> [f64; 3] {
    let mut up = p;
    let mut dn = p;
    up[j] += FD_STEP;
    dn[j] -= FD_STEP;
    let (fu, fd) = (field(a, variant, up), field(a, variant, dn));
    std::array::from_fn(|k| (fu[k] - fd[k]) / (2.0 * FD_STEP))
}

/// Test functions with analytic gradients: sin(a + 2b) cos(g), e^{cos b} sin(a - g),
/// sin(a) + sin(3b)/3 + cos(g/2).
fn test_gradient(k: usize, p: [f64; 3]) -> [f64; 3] {
    let [al, be, ga] = p;
    match k {
        0 => {
            let s = al + 2.0 * be;
            [s.cos() * ga.cos(), 2.0 * s.cos() * ga.cos(), -s.sin() * ga.sin()]
        }
        1 => {
            let e = be.cos().exp();
            let d = al - ga;
            [e * d.cos(), -be.sin() * e * d.sin(), -e * d.cos()]
        }
        _ => [al.cos(), (3.0 * be).cos(), -(0.5 * ga).sin() * 0.5],
    }
}

/// max over test functions of |([T_a, T_b] - i eps_abc T_c) f| at one point.
pub fn bracket_residual(variant: T1Variant, p: [f64; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, b) in [(1, 2), (2, 3), (3, 1)] {
        let c = 6 - a - b;
        let va = field(a, variant, p);
        let vb = field(b, variant, p);
        let vc = field(c, variant, p);
        let e = epsilon(a, b, c) as f64;
        // [T_a, T_b] = -[V_a, V_b]; i eps T_c = -eps V_c.
        let mut resid = [0.0; 3];
        for j in 0..3 {
            let db = field_derivative(b, variant, p, j);
            let da = field_derivative(a, variant, p, j);
            for k in 0..3 {
                resid[k] += va[j] * db[k] - vb[j] * da[k];
            }
        }
        for k in 0..3 {
            resid[k] -= e * vc[k];
        }
        for t in 0..3 {
            let g = test_gradient(t, p);
            worst = worst.max((0..3).map(|k| resid[k] * g[k]).sum::<f64>().abs());
        }
    }
    worst
}

pub fn random_angles(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.3..PI - 0.3), rng.gen_range(0.0..4.0 * PI)]
}

pub const TRIG_TOLERANCE: f64 = 1e-7;

/// Bracket residual of each T1 variant at `samples` random points away from sin(beta) = 0.
pub fn su2_trig_check(samples: usize, seed: u64) -> Vec<CheckReport> {
    [T1Variant::Cotangent, T1Variant::Printed]
        .into_iter()
        .map(|variant| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let worst = (0..samples).map(|_| bracket_residual(variant, random_angles(&mut rng))).fold(0.0f64, f64::max);
            CheckReport::numeric(
                "gauge",
                &format!("su(2) bracket of angular generators, T1 with {}", variant.name()),
                "[T_a, T_b] = i eps_abc T_c",
                worst,
                TRIG_TOLERANCE,
                format!("{samples} points, central differences with step {FD_STEP:e}"),
            )
        })
        .collect()
}

type M2 = [[Complex64; 2]; 2];

fn m_mul(a: &M2, b: &M2) -> M2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn m_add(a: &M2, b: &M2) -> M2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j]))
}

fn m_scale(a: &M2, k: Complex64) -> M2 {
    a.map(|row| row.map(|v| v * k))
}

fn spin_half(a: usize) -> M2 {
    let (o, h, ih) = (Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5));
    match a {
        1 => [[o, h], [h, o]],
        2 => [[o, -ih], [ih, o]],
        _ => [[h, o], [o, -h]],
    }
}

/// exp(i t T3) and exp(i t T2) in the spin-1/2 representation.
fn exp_t3(t: f64) -> M2 {
    let o = Complex64::new(0.0, 0.0);
    [[Complex64::from_polar(1.0, t / 2.0), o], [o, Complex64::from_polar(1.0, -t / 2.0)]]
}

fn exp_t2(t: f64) -> M2 {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    [[Complex64::new(c, 0.0), Complex64::new(s, 0.0)], [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)]]
}

/// Space angles with their Cartesian gradients.
fn angles_with_gradient(x: &[f64; 5]) -> ([f64; 3], [[f64; 5]; 3]) {
    let r1 = x[1] * x[1] + x[2] * x[2];
    let r2 = x[3] * x[3] + x[4] * x[4];
    let phi1 = x[1].atan2(x[2]);
    let phi2 = x[3].atan2(x[4]);
    let d1 = [0.0, x[2] / r1, -x[1] / r1, 0.0, 0.0];
    let d2 = [0.0, 0.0, 0.0, x[4] / r2, -x[3] / r2];
    let (s1, s2) = (r1.sqrt(), r2.sqrt());
    // beta = 2 atan(s1 / s2), d beta = 2 (s2 d s1 - s1 d s2) / (s1^2 + s2^2)
    let k = 2.0 / (r1 + r2);
    let db = [0.0, k * s2 * x[1] / s1, k * s2 * x[2] / s1, -k * s1 * x[3] / s2, -k * s1 * x[4] / s2];
    let alpha = phi1 + phi2;
    let gamma = phi2 - phi1;
    let beta = 2.0 * (s1 / s2).atan();
    (
        [alpha, beta, gamma],
        [std::array::from_fn(|j| d1[j] + d2[j]), db, std::array::from_fn(|j| d2[j] - d1[j])],
    )
}

fn potential_matrix(pot: &[[f64; 5]; 3], j: usize) -> M2 {
    (1..=3).fold([[Complex64::new(0.0, 0.0); 2]; 2], |acc, a| m_add(&acc, &m_scale(&spin_half(a), Complex64::new(pot[a - 1][j], 0.0))))
}

/// max_j |B_j - S A_j S^{-1} - i S d_j S^{-1}| with S = e^{-i gamma T3} e^{-i beta T2} e^{-i alpha T3}.
pub fn gauge_transform_residual(x: &[f64; 5]) -> Result<f64, CoreError> {
    let p = Point5::new(*x);
    let a = GaugePotential::at(Chart::Plus, &p)?;
    let b = GaugePotential::at(Chart::Minus, &p)?;
    if x[1].hypot(x[2]) == 0.0 || x[3].hypot(x[4]) == 0.0 {
        return Err(CoreError::UndefinedAngle);
    }
    let ([al, be, ga], grad) = angles_with_gradient(x);
    let s = m_mul(&m_mul(&exp_t3(-ga), &exp_t2(-be)), &exp_t3(-al));
    let (ea, eb, eg) = (exp_t3(al), exp_t2(be), exp_t3(ga));
    let s_inv = m_mul(&m_mul(&ea, &eb), &eg);
    let i = Complex64::new(0.0, 1.0);
    let (it3, it2) = (m_scale(&spin_half(3), i), m_scale(&spin_half(2), i));
    let da = m_mul(&it3, &s_inv);
    let db = m_mul(&m_mul(&ea, &m_mul(&it2, &eb)), &eg);
    let dg = m_mul(&m_mul(&ea, &eb), &m_mul(&it3, &eg));
    let mut worst: f64 = 0.0;
    for j in 0..5 {
        let d_inv = m_add(&m_add(&m_scale(&da, grad[0][j].into()), &m_scale(&db, grad[1][j].into())), &m_scale(&dg, grad[2][j].into()));
        let rotated = m_mul(&m_mul(&s, &potential_matrix(&a, j)), &s_inv);
        let rhs = m_add(&rotated, &m_scale(&m_mul(&s, &d_inv), i));
        let lhs = potential_matrix(&b, j);
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((lhs[r][c] - rhs[r][c]).norm());
            }
        }
    }
    Ok(worst)
}

pub const GAUGE_TOLERANCE: f64 = 1e-10;

/// Random point of R^5 with both transverse planes and both semiaxes avoided.
pub fn random_regular_point(rng: &mut ChaCha8Rng) -> [f64; 5] {
    loop {
        let x: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if x[1].hypot(x[2]) > 0.1 && x[3].hypot(x[4]) > 0.1 && r - x[0].abs() > 0.05 {
            return x;
        }
    }
}

pub fn gauge_transform_check(points: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut fixed = vec![[0.0, 1.0, 0.0, 1.0, 0.0]];
    fixed.extend((0..points).map(|_| random_regular_point(&mut rng)));
    for x in &fixed {
        match gauge_transform_residual(x) {
            Ok(v) => worst = worst.max(v),
            Err(_) => worst = f64::INFINITY,
        }
    }
    CheckReport::numeric(
        "gauge",
        "gauge transformation between charts",
        "B_j = S A_j S^-1 + i S d_j S^-1",
        worst,
        GAUGE_TOLERANCE,
        format!("{} points, spin-1/2 representation", fixed.len()),
    )
}
