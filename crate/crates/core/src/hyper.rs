//! Field tensor in hyperspherical coordinates (r, theta, beta, alpha, gamma),
//! the induced metric on r = const and the Hodge dual of the angular block.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use hkit_algebra::isospin::epsilon;
use nalgebra::Matrix4;

use crate::error::CoreError;

/// Value plus gradient in the five hyperspherical directions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual5 {
    pub v: f64,
    pub g: [f64; 5],
}

impl Dual5 {
    pub fn constant(v: f64) -> Dual5 {
        Dual5 { v, g: [0.0; 5] }
    }

    pub fn variable(v: f64, k: usize) -> Dual5 {
        let mut g = [0.0; 5];
        g[k] = 1.0;
        Dual5 { v, g }
    }

    fn chain(self, v: f64, dv: f64) -> Dual5 {
        Dual5 { v, g: self.g.map(|d| d * dv) }
    }

    pub fn sin(self) -> Dual5 {
        self.chain(self.v.sin(), self.v.cos())
    }

    pub fn cos(self) -> Dual5 {
        self.chain(self.v.cos(), -self.v.sin())
    }

    pub fn sqrt(self) -> Dual5 {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s)
    }

    pub fn scale(self, k: f64) -> Dual5 {
        Dual5 { v: self.v * k, g: self.g.map(|d| d * k) }
    }
}

impl Add for Dual5 {
    type Output = Dual5;
    fn add(self, o: Dual5) -> Dual5 {
        Dual5 { v: self.v + o.v, g: std::array::from_fn(|k| self.g[k] + o.g[k]) }
    }
}

impl Sub for Dual5 {
    type Output = Dual5;
    fn sub(self, o: Dual5) -> Dual5 {
        self + (-o)
    }
}

impl Neg for Dual5 {
    type Output = Dual5;
    fn neg(self) -> Dual5 {
        self.scale(-1.0)
    }
}

impl Mul for Dual5 {
    type Output = Dual5;
    fn mul(self, o: Dual5) -> Dual5 {
        Dual5 { v: self.v * o.v, g: std::array::from_fn(|k| self.g[k] * o.v + self.v * o.g[k]) }
    }
}

impl Div for Dual5 {
    type Output = Dual5;
    fn div(self, o: Dual5) -> Dual5 {
        let inv = 1.0 / o.v;
        Dual5 { v: self.v * inv, g: std::array::from_fn(|k| (self.g[k] - self.v * inv * o.g[k]) * inv) }
    }
}

/// Hyperspherical coordinates (r, theta, beta, alpha, gamma).
pub type Hyper = [f64; 5];

pub const COORD_NAMES: [&str; 5] = ["r", "theta", "beta", "alpha", "gamma"];

/// Cartesian point with its derivatives along each hyperspherical coordinate.
pub fn embedding(h: &Hyper) -> [Dual5; 5] {
    let [r, th, be, al, ga] = std::array::from_fn(|k| Dual5::variable(h[k], k));
    let s = r * th.sin();
    let p = (al - ga).scale(0.5);
    let q = (al + ga).scale(0.5);
    let a = s * be.scale(0.5).sin();
    let b = s * be.scale(0.5).cos();
    [r * th.cos(), a * p.sin(), a * p.cos(), b * q.sin(), b * q.cos()]
}

/// J[i][m] = dx_m / d xbar_i.
pub fn jacobian(h: &Hyper) -> [[f64; 5]; 5] {
    jacobian_of(&embedding(h))
}

pub type Tensor3 = [[[f64; 5]; 5]; 3];

const A_NUM: [[(f64, usize); 5]; 3] = [
    [(0.0, 0), (1.0, 4), (1.0, 3), (-1.0, 2), (-1.0, 1)],
    [(0.0, 0), (-1.0, 3), (1.0, 4), (1.0, 1), (-1.0, 2)],
    [(0.0, 0), (1.0, 2), (-1.0, 1), (1.0, 4), (-1.0, 3)],
];

/// Antisymmetric -2i tau^a as a real matrix.
fn tau_real() -> &'static Tensor3 {
    static CELL: OnceLock<Tensor3> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = crate::gauge::tau();
        std::array::from_fn(|a| std::array::from_fn(|i| std::array::from_fn(|j| 2.0 * t[a][i][j].im.to_f64())))
    })
}

/// Cartesian F^a_ij from the closed form at a point of chart A.
pub fn cartesian_field(x: &[f64; 5]) -> Result<Tensor3, CoreError> {
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 || r + x[0] <= 1e-300 {
        return Err(CoreError::SingularAxis);
    }
    let den = r * (r + x[0]);
    let t = tau_real();
    let shifted = |k: usize| if k == 0 { x[0] + r } else { x[k] };
    Ok(std::array::from_fn(|a| {
        let pot: [f64; 5] = std::array::from_fn(|j| A_NUM[a][j].0 * x[A_NUM[a][j].1] / den);
        std::array::from_fn(|i| std::array::from_fn(|j| (shifted(j) * pot[i] - shifted(i) * pot[j] + t[a][i][j]) / (r * r)))
    }))
}

fn check_regular(h: &Hyper) -> Result<(), CoreError> {
    let (st, sb) = (h[1].sin(), h[2].sin());
    if h[0] <= 0.0 || st.abs() < 1e-9 || sb.abs() < 1e-9 || (PI - h[1]).abs() < 1e-9 {
        return Err(CoreError::SingularMetric);
    }
    Ok(())
}

/// Covariant transformation of the Cartesian tensor: Fbar_ik = J_im J_kn F_mn.
pub fn transform_tensor(j: &[[f64; 5]; 5], f: &[[f64; 5]; 5]) -> [[f64; 5]; 5] {
    let jf: [[f64; 5]; 5] = std::array::from_fn(|i| std::array::from_fn(|n| (0..5).map(|m| j[i][m] * f[m][n]).sum()));
    std::array::from_fn(|i| std::array::from_fn(|k| (0..5).map(|n| jf[i][n] * j[k][n]).sum()))
}

/// Hyperspherical F through the Jacobian of the coordinate map.
pub fn field_by_jacobian(h: &Hyper) -> Result<Tensor3, CoreError> {
    check_regular(h)?;
    let e = embedding(h);
    field_from_embedding(&e)
}

fn jacobian_of(e: &[Dual5; 5]) -> [[f64; 5]; 5] {
    std::array::from_fn(|i| std::array::from_fn(|m| e[m].g[i]))
}

fn field_from_embedding(e: &[Dual5; 5]) -> Result<Tensor3, CoreError> {
    let x: [f64; 5] = e.map(|d| d.v);
    let f = cartesian_field(&x)?;
    let j = jacobian_of(e);
    Ok(std::array::from_fn(|a| transform_tensor(&j, &f[a])))
}

/// Hyperspherical F from the pulled-back potential Abar_i = J_im A_m, differentiated
/// in the hyperspherical coordinates themselves.
pub fn field_by_pullback(h: &Hyper) -> Result<Tensor3, CoreError> {
    check_regular(h)?;
    let x = embedding(h);
    let r = x.iter().fold(Dual5::constant(0.0), |acc, &c| acc + c * c).sqrt();
    let den = r * (r + x[0]);
    let pot: [[Dual5; 5]; 3] = std::array::from_fn(|a| std::array::from_fn(|m| x[A_NUM[a][m].1].scale(A_NUM[a][m].0) / den));
    let bar: [[f64; 5]; 3] = std::array::from_fn(|a| std::array::from_fn(|i| (0..5).map(|m| pot[a][m].v * x[m].g[i]).sum()));
    Ok(std::array::from_fn(|a| {
        std::array::from_fn(|i| {
            std::array::from_fn(|k| {
                let mut f: f64 = (0..5).map(|m| pot[a][m].g[i] * x[m].g[k] - pot[a][m].g[k] * x[m].g[i]).sum();
                for b in 1..=3 {
                    for c in 1..=3 {
                        let e = epsilon(a + 1, b, c);
                        if e != 0 {
                            f += e as f64 * bar[b - 1][i] * bar[c - 1][k];
                        }
                    }
                }
                f
            })
        })
    }))
}

/// A tabulated hyperspherical component: `coeff * sin^p(theta) * trig`.
#[derive(Clone, Copy, Debug)]
pub struct HyperEntry {
    pub a: usize,
    pub i: usize,
    pub j: usize,
    pub text: &'static str,
    pub value: fn(f64, f64, f64) -> f64,
}

macro_rules! he {
    ($a:expr, $i:expr, $j:expr, $text:expr, |$t:ident, $b:ident, $al:ident| $body:expr) => {
        HyperEntry { a: $a, i: $i, j: $j, text: $text, value: |$t: f64, $b: f64, $al: f64| { let _ = ($t, $b, $al); $body } }
    };
}

const TH: usize = 1;
const BE: usize = 2;
const AL: usize = 3;
const GA: usize = 4;

/// The hyperspherical components exactly as tabulated.
pub const TABULATED_HYPER: [HyperEntry; 18] = [
    he!(1, TH, BE, "sin(theta) sin(alpha)/2", |t, b, a| 0.5 * t.sin() * a.sin()),
    he!(1, TH, AL, "0", |t, b, a| 0.0),
    he!(1, TH, GA, "-sin(theta) sin(beta) cos(alpha)/2", |t, b, a| -0.5 * t.sin() * b.sin() * a.cos()),
    he!(1, BE, AL, "-sin^2(theta) cos(alpha)/4", |t, b, a| -0.25 * t.sin().powi(2) * a.cos()),
    he!(1, BE, GA, "-sin^2(theta) cos(beta) cos(alpha)/4", |t, b, a| -0.25 * t.sin().powi(2) * b.cos() * a.cos()),
    he!(1, AL, GA, "sin^2(theta) sin(beta) sin(alpha)/4", |t, b, a| 0.25 * t.sin().powi(2) * b.sin() * a.sin()),
    he!(2, TH, BE, "sin(theta) cos(alpha)/2", |t, b, a| 0.5 * t.sin() * a.cos()),
    he!(2, TH, AL, "0", |t, b, a| 0.0),
    he!(2, TH, GA, "sin(theta) sin(beta) sin(alpha)/2", |t, b, a| 0.5 * t.sin() * b.sin() * a.sin()),
    he!(2, BE, AL, "sin^2(theta) sin(alpha)/4", |t, b, a| 0.25 * t.sin().powi(2) * a.sin()),
    he!(2, BE, GA, "sin^2(theta) cos(beta) sin(alpha)/4", |t, b, a| 0.25 * t.sin().powi(2) * b.cos() * a.sin()),
    he!(2, AL, GA, "sin^2(theta) sin(beta) cos(alpha)/4", |t, b, a| 0.25 * t.sin().powi(2) * b.sin() * a.cos()),
    he!(3, TH, BE, "0", |t, b, a| 0.0),
    he!(3, TH, AL, "sin(theta)/2", |t, b, a| 0.5 * t.sin()),
    he!(3, TH, GA, "sin(theta) cos(beta)/2", |t, b, a| 0.5 * t.sin() * b.cos()),
    he!(3, BE, AL, "0", |t, b, a| 0.0),
    he!(3, BE, GA, "-sin^2(theta) sin(beta)/4", |t, b, a| -0.25 * t.sin().powi(2) * b.sin()),
    he!(3, AL, GA, "0", |t, b, a| 0.0),
];

impl HyperEntry {
    pub fn label(&self) -> String {
        format!("F^{}_{}{}", self.a, COORD_NAMES[self.i], COORD_NAMES[self.j])
    }

    pub fn eval(&self, h: &Hyper) -> f64 {
        (self.value)(h[1], h[2], h[3])
    }
}

/// The tabulated tensor, with the r row and column zero.
pub fn field_table(h: &Hyper) -> Tensor3 {
    let mut f = [[[0.0; 5]; 5]; 3];
    for e in TABULATED_HYPER {
        let v = e.eval(h);
        f[e.a - 1][e.i][e.j] = v;
        f[e.a - 1][e.j][e.i] = -v;
    }
    f
}

/// Induced metric on the sphere r = const in the angular coordinates (theta, beta, alpha, gamma).
pub fn induced_metric(h: &Hyper) -> Matrix4<f64> {
    metric_of(&jacobian(h))
}

fn metric_of(j: &[[f64; 5]; 5]) -> Matrix4<f64> {
    Matrix4::from_fn(|m, n| (0..5).map(|k| j[m + 1][k] * j[n + 1][k]).sum())
}

/// (r^4/8) sin^3(theta) sin(beta).
pub fn surface_measure(h: &Hyper) -> f64 {
    h[0].powi(4) / 8.0 * h[1].sin().powi(3) * h[2].sin()
}

fn perm_sign4(p: [usize; 4]) -> f64 {
    let mut s = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Angular block with both indices raised, and its dual
/// *F^{mu nu} = orientation / (2 sqrt g) eps^{mu nu rho sigma} F_{rho sigma}.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub raised: [[f64; 4]; 4],
    pub dual: [[f64; 4]; 4],
    pub lowered: [[f64; 4]; 4],
}

/// Inverse induced metric and the prefactor orientation / (2 sqrt g).
pub struct AngularFrame {
    inv: Matrix4<f64>,
    pref: f64,
}

impl AngularFrame {
    pub fn new(h: &Hyper, orientation: f64) -> Result<AngularFrame, CoreError> {
        check_regular(h)?;
        AngularFrame::from_jacobian(&jacobian(h), h[0], orientation)
    }

    fn from_jacobian(j: &[[f64; 5]; 5], radius: f64, orientation: f64) -> Result<AngularFrame, CoreError> {
        let g = metric_of(j);
        let det = g.determinant();
        if det <= 1e-30 * radius.powi(8) {
            return Err(CoreError::SingularMetric);
        }
        let inv = g.try_inverse().ok_or(CoreError::SingularMetric)?;
        Ok(AngularFrame { inv, pref: orientation / (2.0 * det.sqrt()) })
    }

    pub fn pair(&self, f: &[[f64; 5]; 5]) -> DualPair {
        let lowered: [[f64; 4]; 4] = std::array::from_fn(|m| std::array::from_fn(|n| f[m + 1][n + 1]));
        let inv = &self.inv;
        let half: [[f64; 4]; 4] = std::array::from_fn(|m| std::array::from_fn(|q| (0..4).map(|p| inv[(m, p)] * lowered[p][q]).sum()));
        let raised = std::array::from_fn(|m| std::array::from_fn(|n| (0..4).map(|q| half[m][q] * inv[(n, q)]).sum()));
        let dual = std::array::from_fn(|m| {
            std::array::from_fn(|n| {
                if m == n {
                    return 0.0;
                }
                let mut rest = (0..4).filter(|&k| k != m && k != n);
                let (p, q) = (rest.next().unwrap(), rest.next().unwrap());
                2.0 * self.pref * perm_sign4([m, n, p, q]) * lowered[p][q]
            })
        });
        DualPair { raised, dual, lowered }
    }
}

pub fn dual_pair(h: &Hyper, f: &[[f64; 5]; 5], orientation: f64) -> Result<DualPair, CoreError> {
    Ok(AngularFrame::new(h, orientation)?.pair(f))
}

/// max |*F - F| over all components and gauge indices.
pub fn duality_residual(h: &Hyper, f: &Tensor3, orientation: f64) -> Result<f64, CoreError> {
    let frame = AngularFrame::new(h, orientation)?;
    let mut worst: f64 = 0.0;
    for fa in f {
        let d = frame.pair(fa);
        for m in 0..4 {
            for n in 0..4 {
                worst = worst.max((d.dual[m][n] - d.raised[m][n]).abs());
            }
        }
    }
    Ok(worst)
}

/// Reference point for fixing the orientation once.
pub const CALIBRATION_POINT: Hyper = [1.0, 1.1, 0.7, 0.4, 2.3];

/// The orientation (+1 or -1) under which the field is self-dual at the calibration point.
pub fn calibrate_orientation() -> Result<f64, CoreError> {
    let f = field_by_jacobian(&CALIBRATION_POINT)?;
    let plus = duality_residual(&CALIBRATION_POINT, &f, 1.0)?;
    let minus = duality_residual(&CALIBRATION_POINT, &f, -1.0)?;
    Ok(if plus <= minus { 1.0 } else { -1.0 })
}

/// *F^{a mu nu} F^a_{mu nu} for each gauge component.
pub fn charge_density(h: &Hyper, orientation: f64) -> Result<[f64; 3], CoreError> {
    check_regular(h)?;
    let e = embedding(h);
    let f = field_from_embedding(&e)?;
    let det = metric_of(&jacobian_of(&e)).determinant();
    if det <= 1e-30 * h[0].powi(8) {
        return Err(CoreError::SingularMetric);
    }
    // *F^{mn} F_mn = orientation / (2 sqrt g) eps^{mnpq} F_pq F_mn = 4 orientation Pf(F) / sqrt g
    let scale = 4.0 * orientation / det.sqrt();
    Ok(std::array::from_fn(|a| {
        let l = &f[a];
        scale * (l[1][2] * l[3][4] - l[1][3] * l[2][4] + l[1][4] * l[2][3])
    }))
}

pub fn max_abs_diff(a: &Tensor3, b: &Tensor3) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..3 {
        for i in 0..5 {
            for j in 0..5 {
                worst = worst.max((a[k][i][j] - b[k][i][j]).abs());
            }
        }
    }
    worst
}

/// max |F_rk| over all components.
pub fn radial_row(f: &Tensor3) -> f64 {
    f.iter().flat_map(|m| m[0].iter()).fold(0.0f64, |w, v| w.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree_and_radial_row_vanishes() {
        let h = [1.3, 0.9, 1.2, 0.5, 3.1];
        let a = field_by_jacobian(&h).unwrap();
        let b = field_by_pullback(&h).unwrap();
        assert!(max_abs_diff(&a, &b) < 1e-12);
        assert!(radial_row(&a) < 1e-12);
    }

    #[test]
    fn tabulated_entry_at_equator() {
        let h = [1.0, PI / 2.0, 0.8, 0.3, 1.0];
        let e = TABULATED_HYPER.iter().find(|e| e.a == 3 && e.i == TH && e.j == AL).unwrap();
        assert_eq!(e.eval(&h), 0.5);
        let f = field_by_jacobian(&h).unwrap();
        println!("derived F3_theta_alpha = {}", f[2][TH][AL]);
    }

    #[test]
    fn measure_is_root_det() {
        let h = [2.0, 0.7, 1.9, 0.2, 5.0];
        let g = induced_metric(&h);
        assert!((g.determinant().sqrt() - surface_measure(&h)).abs() < 1e-12);
    }

    #[test]
    fn density_is_four_per_component() {
        let o = calibrate_orientation().unwrap();
        let h = [1.0, 0.6, 2.0, 1.0, 0.1];
        let d = charge_density(&h, o).unwrap();
        for v in d {
            assert!((v - 4.0).abs() < 1e-12, "{v}");
        }
        assert_eq!(charge_density(&[1.0, 0.0, 1.0, 1.0, 1.0], o), Err(CoreError::SingularMetric));
    }
}
