//! Exact rational functions on R^5 in x0..x4 and r = |x|, with denominators
//! restricted to powers of r and of the chart factor (r + x0) or (r - x0).
//!
//! An expression is stored as `(even + r * odd) / (r^p * a^q)` where `a` is
//! the chart factor. The numerator ring Q(i)[x][r]/(r^2 - |x|^2) is a UFD in
//! which r and a are non-associated primes, so cancelling every common factor
//! of the numerator with the denominator gives a unique representative and
//! equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::gauss::GaussRat;
use crate::poly::{Mono, Poly};
use crate::rational::Rational;

/// Gauge chart: which half-line of the x0 axis carries the denominator zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub enum Chart {
    /// Factor r + x0, singular on the non-positive x0 semi-axis.
    #[default]
    Plus,
    /// Factor r - x0, singular on the non-negative x0 semi-axis.
    Minus,
}

impl Chart {
    pub fn sign(self) -> i64 {
        match self {
            Chart::Plus => 1,
            Chart::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::Plus => "A",
            Chart::Minus => "B",
        }
    }
}

fn radius_sq() -> Poly {
    Poly::sum_of_squares(0..5)
}

fn x0_signed(chart: Chart) -> Poly {
    Poly::monomial(Mono::var(0), GaussRat::int(chart.sign()))
}

/// Numerator `even + r * odd`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
struct Numer {
    even: Poly,
    odd: Poly,
}

impl Numer {
    fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    fn add(&self, o: &Numer) -> Numer {
        Numer { even: self.even.add(&o.even), odd: self.odd.add(&o.odd) }
    }

    fn scale(&self, k: &GaussRat) -> Numer {
        Numer { even: self.even.scale(k), odd: self.odd.scale(k) }
    }

    fn mul_poly(&self, p: &Poly) -> Numer {
        Numer { even: self.even.mul(p), odd: self.odd.mul(p) }
    }

    fn mul(&self, o: &Numer) -> Numer {
        let mut even = self.even.mul(&o.even);
        if !self.odd.is_zero() && !o.odd.is_zero() {
            even = even.add(&self.odd.mul(&o.odd).mul(&radius_sq()));
        }
        let odd = self.even.mul(&o.odd).add(&self.odd.mul(&o.even));
        Numer { even, odd }
    }

    fn mul_r(&self) -> Numer {
        Numer { even: self.odd.mul(&radius_sq()), odd: self.even.clone() }
    }

    fn mul_axis(&self, chart: Chart) -> Numer {
        let sx0 = x0_signed(chart);
        Numer {
            even: self.even.mul(&sx0).add(&self.odd.mul(&radius_sq())),
            odd: self.even.add(&self.odd.mul(&sx0)),
        }
    }

    fn raise(&self, dp: u32, dq: u32, chart: Chart) -> Numer {
        let mut n = self.clone();
        for _ in 0..dq {
            n = n.mul_axis(chart);
        }
        if dp >= 2 {
            n = n.mul_poly(&radius_sq().pow(dp / 2));
        }
        if dp % 2 == 1 {
            n = n.mul_r();
        }
        n
    }

    fn div_r(&self) -> Option<Numer> {
        // (P + rQ)/r = Q + r (P / |x|^2)
        let rest = Poly::sum_of_squares(0..4);
        let p = self.even.div_monic_quadratic(4, &rest)?;
        Some(Numer { even: self.odd.clone(), odd: p })
    }

    fn div_axis(&self, chart: Chart) -> Option<Numer> {
        // (P + rQ) = (r + s x0)(P' + rQ')  <=>  P - s x0 Q = rho^2 Q',  P' = Q - s x0 Q'
        let sx0 = x0_signed(chart);
        let t = self.even.sub(&self.odd.mul(&sx0));
        let rest = Poly::sum_of_squares(1..4);
        let q = t.div_monic_quadratic(4, &rest)?;
        let p = self.odd.sub(&sx0.mul(&q));
        Some(Numer { even: p, odd: q })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarExpr {
    chart: Chart,
    r_pow: u32,
    axis_pow: u32,
    num: Numer,
}

fn join_chart(a: &ScalarExpr, b: &ScalarExpr) -> Chart {
    match (a.axis_pow > 0, b.axis_pow > 0) {
        (true, true) => {
            assert_eq!(a.chart, b.chart, "mixing expressions from different gauge charts");
            a.chart
        }
        (true, false) => a.chart,
        (false, true) => b.chart,
        (false, false) => Chart::Plus,
    }
}

impl ScalarExpr {
    pub fn zero() -> ScalarExpr {
        ScalarExpr::default()
    }

    pub fn constant(c: GaussRat) -> ScalarExpr {
        ScalarExpr::from_polys(Poly::constant(c), Poly::zero())
    }

    pub fn rational(c: Rational) -> ScalarExpr {
        ScalarExpr::constant(GaussRat::real(c))
    }

    pub fn int(n: i64) -> ScalarExpr {
        ScalarExpr::constant(GaussRat::int(n))
    }

    pub fn one() -> ScalarExpr {
        ScalarExpr::int(1)
    }

    /// Coordinate function x_k, k in 0..5.
    pub fn x(k: usize) -> ScalarExpr {
        assert!(k < 5);
        ScalarExpr::from_polys(Poly::var(k), Poly::zero())
    }

    pub fn r() -> ScalarExpr {
        ScalarExpr::from_polys(Poly::zero(), Poly::one())
    }

    pub fn poly(p: Poly) -> ScalarExpr {
        ScalarExpr::from_polys(p, Poly::zero())
    }

    /// `(even + r * odd)` with no denominator.
    pub fn from_polys(even: Poly, odd: Poly) -> ScalarExpr {
        ScalarExpr { chart: Chart::Plus, r_pow: 0, axis_pow: 0, num: Numer { even, odd } }
    }

    /// `(even + r * odd) / (r^r_pow * a^axis_pow)`, canonicalized.
    pub fn from_parts(chart: Chart, even: Poly, odd: Poly, r_pow: u32, axis_pow: u32) -> ScalarExpr {
        let mut e = ScalarExpr { chart, r_pow, axis_pow, num: Numer { even, odd } };
        e.canonicalize();
        e
    }

    /// `1 / r^k`.
    pub fn inv_r(k: u32) -> ScalarExpr {
        ScalarExpr::from_parts(Chart::Plus, Poly::one(), Poly::zero(), k, 0)
    }

    /// `1 / a^k` for the chart factor a = r ± x0.
    pub fn inv_axis(chart: Chart, k: u32) -> ScalarExpr {
        ScalarExpr::from_parts(chart, Poly::one(), Poly::zero(), 0, k)
    }

    /// The chart factor `r + x0` or `r - x0` itself.
    pub fn axis(chart: Chart) -> ScalarExpr {
        ScalarExpr::from_polys(x0_signed(chart), Poly::one())
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn r_power(&self) -> u32 {
        self.r_pow
    }

    pub fn axis_power(&self) -> u32 {
        self.axis_pow
    }

    pub fn even(&self) -> &Poly {
        &self.num.even
    }

    pub fn odd(&self) -> &Poly {
        &self.num.odd
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn term_count(&self) -> usize {
        self.num.even.len() + self.num.odd.len()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.r_pow == 0 && self.axis_pow == 0 && self.num.odd.is_zero() {
            match self.num.even.terms() {
                [] => Some(GaussRat::ZERO),
                [(m, c)] if *m == Mono::ONE => Some(c.clone()),
                _ => None,
            }
        } else {
            None
        }
    }

    /// Brings the expression to canonical form. Idempotent.
    pub fn normalize(&self) -> ScalarExpr {
        let mut e = self.clone();
        e.canonicalize();
        e
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            *self = ScalarExpr::zero();
            return;
        }
        while self.r_pow > 0 {
            match self.num.div_r() {
                Some(n) => {
                    self.num = n;
                    self.r_pow -= 1;
                }
                None => break,
            }
        }
        while self.axis_pow > 0 {
            match self.num.div_axis(self.chart) {
                Some(n) => {
                    self.num = n;
                    self.axis_pow -= 1;
                }
                None => break,
            }
        }
        if self.axis_pow == 0 {
            self.chart = Chart::Plus;
        }
    }

    /// Product without cancelling common factors.
    pub(crate) fn mul_raw(&self, other: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || other.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr {
            chart: join_chart(self, other),
            r_pow: self.r_pow + other.r_pow,
            axis_pow: self.axis_pow + other.axis_pow,
            num: self.num.mul(&other.num),
        }
    }

    pub fn scale(&self, k: &GaussRat) -> ScalarExpr {
        if k.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr { num: self.num.scale(k), ..self.clone() }
    }

    pub fn pow(&self, e: u32) -> ScalarExpr {
        let mut out = ScalarExpr::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact equality: the difference reduces to zero in the localized ring.
    pub fn equals(&self, other: &ScalarExpr) -> bool {
        (self - other).is_zero()
    }

    /// Partial derivative with respect to x_k, using dr/dx_k = x_k / r.
    pub fn differentiate(&self, k: usize) -> ScalarExpr {
        assert!(k < 5);
        if self.is_zero() {
            return ScalarExpr::zero();
        }
        let n = &self.num;
        let xk = Poly::var(k);
        // r * dN = r dP + |x|^2 dQ + x_k Q
        let r_dn = Numer {
            even: radius_sq().mul(&n.odd.derivative(k)).add(&xk.mul(&n.odd)),
            odd: n.even.derivative(k),
        };
        let (p, q) = (self.r_pow, self.axis_pow);
        let chart = self.chart;
        let mut out = if q == 0 {
            // (r * dN * r - p x_k N) / r^(p+2)
            let mut num = r_dn.mul_r();
            if p > 0 {
                num = num.add(&n.mul_poly(&xk).scale(&GaussRat::int(-(p as i64))));
            }
            ScalarExpr { chart, r_pow: p + 2, axis_pow: 0, num }
        } else {
            // (r dN * a * r - p x_k N a - q N (x_k r + s d_k0 |x|^2)) / (r^(p+2) a^(q+1))
            let mut num = r_dn.mul_axis(chart).mul_r();
            if p > 0 {
                num = num.add(&n.mul_poly(&xk).mul_axis(chart).scale(&GaussRat::int(-(p as i64))));
            }
            let factor = Numer {
                even: if k == 0 { radius_sq().scale(&GaussRat::int(chart.sign())) } else { Poly::zero() },
                odd: xk,
            };
            num = num.add(&n.mul(&factor).scale(&GaussRat::int(-(q as i64))));
            ScalarExpr { chart, r_pow: p + 2, axis_pow: q + 1, num }
        };
        out.canonicalize();
        out
    }

    /// Iterated partial derivative for a multi-index packed as a [`Mono`].
    pub fn differentiate_multi(&self, index: Mono) -> ScalarExpr {
        let mut out = self.clone();
        for k in 0..5 {
            for _ in 0..index.exp(k) {
                out = out.differentiate(k);
            }
        }
        out
    }

    pub fn evaluate(&self, p: &Point5) -> Result<Complex64, AlgebraError> {
        let r = p.radius();
        let a = r + self.chart.sign() as f64 * p.x[0];
        let scale = r.max(1.0);
        if (self.r_pow > 0 && r <= 1e-300) || (self.axis_pow > 0 && a.abs() <= 1e-14 * scale) {
            return Err(AlgebraError::SingularPoint);
        }
        let num = self.num.even.eval_f64(&p.x) + self.num.odd.eval_f64(&p.x) * r;
        Ok(num / (r.powi(self.r_pow as i32) * a.powi(self.axis_pow as i32)))
    }

    pub fn evaluate_exact(&self, p: &ExactPoint5) -> Result<GaussRat, AlgebraError> {
        let r = &p.r;
        let a = r + &(&Rational::from_int(self.chart.sign()) * &p.x[0]);
        if (self.r_pow > 0 && r.is_zero()) || (self.axis_pow > 0 && a.is_zero()) {
            return Err(AlgebraError::SingularPoint);
        }
        let num = &self.num.even.eval_exact(&p.x) + &self.num.odd.eval_exact(&p.x).scale(r);
        let den = &r.pow(self.r_pow as i32) * &a.pow(self.axis_pow as i32);
        Ok(num.scale(&den.recip()))
    }

    pub fn render(&self) -> String {
        let names = ["x0", "x1", "x2", "x3", "x4"];
        let num = match (self.num.even.is_zero(), self.num.odd.is_zero()) {
            (true, true) => return "0".into(),
            (false, true) => self.num.even.render(&names),
            (true, false) => format!("r*({})", self.num.odd.render(&names)),
            (false, false) => format!("{} + r*({})", self.num.even.render(&names), self.num.odd.render(&names)),
        };
        let mut den = Vec::new();
        match self.r_pow {
            0 => {}
            1 => den.push("r".to_string()),
            p => den.push(format!("r^{p}")),
        }
        let axis = if self.chart == Chart::Plus { "(r+x0)" } else { "(r-x0)" };
        match self.axis_pow {
            0 => {}
            1 => den.push(axis.to_string()),
            q => den.push(format!("{axis}^{q}")),
        }
        if den.is_empty() {
            num
        } else {
            format!("({num})/({})", den.join("*"))
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Accumulates many terms and cancels common factors once at the end.
#[derive(Default)]
pub struct ScalarSum {
    parts: Vec<ScalarExpr>,
}

impl ScalarSum {
    pub fn new() -> ScalarSum {
        ScalarSum::default()
    }

    pub fn push(&mut self, e: ScalarExpr) {
        if !e.is_zero() {
            self.parts.push(e);
        }
    }

    pub fn push_product(&mut self, a: &ScalarExpr, b: &ScalarExpr, k: &GaussRat) {
        if k.is_zero() {
            return;
        }
        self.push(a.mul_raw(b).scale(k));
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn finish(self) -> ScalarExpr {
        let parts = self.parts;
        match parts.len() {
            0 => return ScalarExpr::zero(),
            1 => return parts.into_iter().next().unwrap().normalize(),
            _ => {}
        }
        let chart = parts.iter().fold(Chart::Plus, |c, e| if e.axis_pow > 0 { e.chart } else { c });
        assert!(
            parts.iter().all(|e| e.axis_pow == 0 || e.chart == chart),
            "mixing expressions from different gauge charts"
        );
        let p = parts.iter().map(|e| e.r_pow).max().unwrap();
        let q = parts.iter().map(|e| e.axis_pow).max().unwrap();
        // Group by required raise so each raise is applied once to a partial sum.
        let mut groups: std::collections::BTreeMap<(u32, u32), Numer> = Default::default();
        for e in &parts {
            let key = (p - e.r_pow, q - e.axis_pow);
            let slot = groups.entry(key).or_default();
            *slot = slot.add(&e.num);
        }
        let mut num = Numer::default();
        for ((dp, dq), n) in groups {
            num = num.add(&n.raise(dp, dq, chart));
        }
        let mut out = ScalarExpr { chart, r_pow: p, axis_pow: q, num };
        out.canonicalize();
        out
    }
}

impl<'a> Add<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut s = ScalarSum::new();
        s.push(self.clone());
        s.push(rhs.clone());
        s.finish()
    }
}

impl<'a> Sub<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        self.mul_raw(rhs).normalize()
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        self.scale(&GaussRat::int(-1))
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A point of R^5 in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point5 {
    pub x: [f64; 5],
}

impl Point5 {
    pub fn new(x: [f64; 5]) -> Point5 {
        Point5 { x }
    }

    pub fn radius(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// A rational point of R^5 whose radius is also rational.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPoint5 {
    pub x: [Rational; 5],
    pub r: Rational,
}

impl ExactPoint5 {
    pub fn new(x: [Rational; 5]) -> Result<ExactPoint5, AlgebraError> {
        let sq = x.iter().fold(Rational::ZERO, |acc, v| &acc + &(v * v));
        let r = sq.sqrt_exact().ok_or(AlgebraError::IrrationalRadius)?;
        Ok(ExactPoint5 { x, r })
    }

    pub fn from_ints(x: [i64; 5]) -> Result<ExactPoint5, AlgebraError> {
        ExactPoint5::new(x.map(Rational::from_int))
    }

    pub fn to_f64(&self) -> Point5 {
        Point5 { x: std::array::from_fn(|k| self.x[k].to_f64()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> ScalarExpr {
        ScalarExpr::x(k)
    }

    fn r() -> ScalarExpr {
        ScalarExpr::r()
    }

    fn sum_sq() -> ScalarExpr {
        ScalarExpr::poly(Poly::sum_of_squares(0..5))
    }

    #[test]
    fn r_squared_reduces() {
        assert_eq!(&r() * &r(), sum_sq());
        assert!((&r() * &r()).equals(&sum_sq()));
    }

    #[test]
    fn difference_of_squares_with_relation() {
        let lhs = &(&r() - &x(0)) * &(&r() + &x(0));
        assert_eq!(lhs, ScalarExpr::poly(Poly::sum_of_squares(1..5)));
    }

    #[test]
    fn additive_inverse() {
        let e = &(&x(1) * &ScalarExpr::inv_r(3)) + &ScalarExpr::inv_axis(Chart::Plus, 2);
        assert!((&e + &(-&e)).is_zero());
    }

    #[test]
    fn axis_cancels() {
        let a = ScalarExpr::axis(Chart::Plus);
        let e = &(&(&r() - &x(0)) * &ScalarExpr::inv_r(1)) * &ScalarExpr::inv_axis(Chart::Plus, 1);
        assert!((&(&e * &r()) * &a).equals(&(&r() - &x(0))));
        assert_eq!(&a * &ScalarExpr::inv_axis(Chart::Plus, 1), ScalarExpr::one());
        let m = ScalarExpr::axis(Chart::Minus);
        assert_eq!(&m * &ScalarExpr::inv_axis(Chart::Minus, 3), ScalarExpr::inv_axis(Chart::Minus, 2));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(r().differentiate(0), &x(0) * &ScalarExpr::inv_r(1));
        let expected = -&(&(&x(1) * &ScalarExpr::inv_r(1)) * &ScalarExpr::inv_axis(Chart::Plus, 2));
        assert_eq!(ScalarExpr::inv_axis(Chart::Plus, 1).differentiate(1), expected);
        assert_eq!(x(2).differentiate(2), ScalarExpr::one());
        let expected = &(&x(3) * &ScalarExpr::inv_r(1)) * &ScalarExpr::inv_axis(Chart::Minus, 2);
        assert_eq!(ScalarExpr::inv_axis(Chart::Minus, 1).differentiate(3), -&expected);
    }

    #[test]
    fn evaluation_examples() {
        let p = Point5::new([0.0, 0.0, 0.0, 0.0, 1.0]);
        let e = &ScalarExpr::inv_r(1) * &ScalarExpr::inv_axis(Chart::Plus, 1);
        assert!((e.evaluate(&p).unwrap().re - 1.0).abs() < 1e-15);
        let e = &x(4) * &ScalarExpr::inv_r(3);
        assert!((e.evaluate(&p).unwrap().re - 1.0).abs() < 1e-15);
        let q = Point5::new([-1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(ScalarExpr::inv_axis(Chart::Plus, 1).evaluate(&q), Err(AlgebraError::SingularPoint));
        let qe = ExactPoint5::from_ints([-1, 0, 0, 0, 0]).unwrap();
        assert_eq!(ScalarExpr::inv_axis(Chart::Plus, 1).evaluate_exact(&qe), Err(AlgebraError::SingularPoint));
    }

    #[test]
    fn equals_examples() {
        let num = &r() - &x(0);
        let den = &r() * &ScalarExpr::axis(Chart::Plus);
        let frac = &(&num * &ScalarExpr::inv_r(1)) * &ScalarExpr::inv_axis(Chart::Plus, 1);
        assert!((&frac * &den).equals(&num));
        assert!(!x(0).equals(&x(1)));
    }

    #[test]
    fn normalize_is_idempotent() {
        let e = ScalarExpr::from_parts(Chart::Plus, Poly::sum_of_squares(0..5), Poly::var(0), 3, 1);
        assert_eq!(e.normalize(), e);
        assert_eq!(e, ScalarExpr::inv_r(2));
    }
}
