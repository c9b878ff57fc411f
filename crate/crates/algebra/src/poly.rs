//! Sparse multivariate polynomials with Gaussian-rational coefficients in up
//! to eight variables. Monomials are packed one byte per exponent.

use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

use num_complex::Complex64;

use crate::gauss::GaussRat;
use crate::rational::Rational;

pub const MAX_VARS: usize = 8;

/// Exponent vector packed into a `u64`, byte `k` holding the exponent of variable `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(k: usize) -> Mono {
        Mono::var_pow(k, 1)
    }

    pub fn var_pow(k: usize, e: u32) -> Mono {
        assert!(k < MAX_VARS && e < 256);
        Mono((e as u64) << (8 * k))
    }

    pub fn from_exponents(exps: &[u32]) -> Mono {
        exps.iter().enumerate().fold(Mono::ONE, |m, (k, &e)| m.mul(Mono::var_pow(k, e)))
    }

    #[inline]
    pub fn exp(self, k: usize) -> u32 {
        ((self.0 >> (8 * k)) & 0xff) as u32
    }

    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!((0..MAX_VARS).all(|k| self.exp(k) + other.exp(k) < 256));
        Mono(self.0 + other.0)
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    pub fn div(self, other: Mono) -> Option<Mono> {
        if (0..MAX_VARS).all(|k| self.exp(k) >= other.exp(k)) {
            Some(Mono(self.0 - other.0))
        } else {
            None
        }
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|k| self.exp(k)).sum()
    }

    pub fn exponents(self) -> [u32; MAX_VARS] {
        let mut out = [0; MAX_VARS];
        for (k, e) in out.iter_mut().enumerate() {
            *e = self.exp(k);
        }
        out
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exponents()[..])
    }
}

#[derive(Default)]
pub struct MonoHasher(u64);

impl Hasher for MonoHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 = (self.0 ^ *b as u64).wrapping_mul(0x100000001b3);
        }
    }
    fn write_u64(&mut self, n: u64) {
        self.0 = (self.0 ^ n).wrapping_mul(0x9e3779b97f4a7c15).rotate_left(29);
    }
}

pub type MonoMap<V> = HashMap<Mono, V, BuildHasherDefault<MonoHasher>>;

/// Canonical sparse polynomial: terms sorted by monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, GaussRat)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: GaussRat) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn one() -> Poly {
        Poly::constant(GaussRat::ONE)
    }

    pub fn var(k: usize) -> Poly {
        Poly::monomial(Mono::var(k), GaussRat::ONE)
    }

    pub fn monomial(m: Mono, c: GaussRat) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Sum of squares of the variables in `vars`.
    pub fn sum_of_squares(vars: std::ops::Range<usize>) -> Poly {
        Poly::from_terms(vars.map(|k| (Mono::var_pow(k, 2), GaussRat::ONE)))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, GaussRat)>>(iter: I) -> Poly {
        let mut map: MonoMap<GaussRat> = MonoMap::default();
        for (m, c) in iter {
            *map.entry(m).or_default() += &c;
        }
        Poly::from_map(map)
    }

    pub fn from_map(map: MonoMap<GaussRat>) -> Poly {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, GaussRat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(k)).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: Mono) -> GaussRat {
        match self.terms.binary_search_by_key(&m, |(k, _)| *k) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => GaussRat::ZERO,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &GaussRat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn scale_rational(&self, k: &Rational) -> Poly {
        self.scale(&GaussRat::real(k.clone()))
    }

    pub fn mul_mono(&self, m: Mono, k: &GaussRat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        // Adding a fixed exponent vector preserves the packed ordering.
        Poly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_mono(*m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_mono(*m, c);
        }
        let mut map: MonoMap<GaussRat> = MonoMap::default();
        map.reserve(self.terms.len() * other.terms.len() / 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match map.entry(ma.mul(*mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Poly::from_map(map)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, k: usize) -> Poly {
        let unit = Mono::var(k);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(k);
                (e > 0).then(|| (Mono(m.0 - unit.0), c.scale(&Rational::from_int(e as i64))))
            })
            .collect::<Vec<_>>();
        // Lowering one exponent can reorder keys.
        let mut terms = terms;
        terms.sort_unstable_by_key(|(m, _)| *m);
        Poly { terms }
    }

    /// Exact division by `x_top^2 + rest`, where `rest` does not involve `x_top`.
    /// Returns `None` when the division leaves a remainder.
    pub fn div_monic_quadratic(&self, top: usize, rest: &Poly) -> Option<Poly> {
        debug_assert_eq!(rest.degree_in(top), 0);
        let sq = Mono::var_pow(top, 2);
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        loop {
            let (high, low): (Vec<_>, Vec<_>) = rem.terms.iter().cloned().partition(|(m, _)| m.exp(top) >= 2);
            if high.is_empty() {
                return rem.is_zero().then_some(quot);
            }
            let mut q_terms: Vec<_> = high.into_iter().map(|(m, c)| (m.div(sq).unwrap(), c)).collect();
            q_terms.sort_unstable_by_key(|(m, _)| *m);
            let q = Poly { terms: q_terms };
            let mut low = low;
            low.sort_unstable_by_key(|(m, _)| *m);
            rem = Poly { terms: low }.sub(&q.mul(rest));
            quot = quot.add(&q);
        }
    }

    pub fn eval_f64(&self, point: &[f64]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = 1.0;
            for (k, x) in point.iter().enumerate().take(MAX_VARS) {
                let e = m.exp(k);
                if e > 0 {
                    v *= x.powi(e as i32);
                }
            }
            total += c.to_complex() * v;
        }
        total
    }

    pub fn eval_exact(&self, point: &[Rational]) -> GaussRat {
        let mut total = GaussRat::ZERO;
        for (m, c) in &self.terms {
            let mut v = Rational::ONE;
            for (k, x) in point.iter().enumerate().take(MAX_VARS) {
                let e = m.exp(k);
                if e > 0 {
                    v = &v * &x.pow(e as i32);
                }
            }
            total += &c.scale(&v);
        }
        total
    }

    /// Renders with the given variable names, highest monomials first.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (k, name) in names.iter().enumerate() {
                match m.exp(k) {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            let mono = factors.join("*");
            let part = match (mono.is_empty(), c.is_one()) {
                (true, _) => format!("{c}"),
                (false, true) => mono,
                (false, false) if *c == GaussRat::int(-1) => format!("-{mono}"),
                (false, false) => format!("{c}*{mono}"),
            };
            parts.push(part);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> Poly {
        Poly::var(k)
    }

    #[test]
    fn difference_of_squares() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let lhs = a.mul(&b);
        let rhs = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadratic_division() {
        let s = Poly::sum_of_squares(0..5);
        let rest = Poly::sum_of_squares(0..4);
        let f = s.mul(&x(2).add(&Poly::constant(GaussRat::int(3))));
        let q = f.div_monic_quadratic(4, &rest).unwrap();
        assert_eq!(q, x(2).add(&Poly::constant(GaussRat::int(3))));
        assert!(x(4).mul(&x(4)).div_monic_quadratic(4, &rest).is_none());
    }

    #[test]
    fn derivative_of_power() {
        let f = x(3).pow(4);
        assert_eq!(f.derivative(3), x(3).pow(3).scale(&GaussRat::int(4)));
        assert!(f.derivative(1).is_zero());
    }
}
