//! Truncated Taylor expansions in five variables around a point, used to apply
//! high-order differential operators numerically in a finite spin
//! representation.

use std::collections::HashMap;
use std::sync::Arc;

use hkit_algebra::{IsoWord, Mono, OperatorExpr, Point5, Poly, ScalarExpr};
use num_complex::Complex64;

use crate::error::CoreError;

/// Monomial bookkeeping for jets of order at most `order`.
#[derive(Debug)]
pub struct JetSpace {
    pub order: usize,
    monos: Vec<[u8; 5]>,
    index: HashMap<[u8; 5], usize>,
    /// Count of monomials of degree <= d, for every d.
    prefix: Vec<usize>,
    /// (i, j, k) with mono_i * mono_j = mono_k, sorted by degree of k.
    table: Vec<(u32, u32, u32)>,
    table_prefix: Vec<usize>,
}

impl JetSpace {
    pub fn new(order: usize) -> Arc<JetSpace> {
        let mut monos = Vec::new();
        let mut prefix = Vec::new();
        for d in 0..=order {
            let mut level = Vec::new();
            gen_degree(d as u8, 0, [0; 5], &mut level);
            level.sort_unstable_by(|a, b| b.cmp(a));
            monos.extend(level);
            prefix.push(monos.len());
        }
        let index: HashMap<[u8; 5], usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let deg = |m: &[u8; 5]| m.iter().map(|&e| e as usize).sum::<usize>();
        let mut table = Vec::new();
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                if deg(a) + deg(b) <= order {
                    let c: [u8; 5] = std::array::from_fn(|k| a[k] + b[k]);
                    table.push((i as u32, j as u32, index[&c] as u32));
                }
            }
        }
        table.sort_by_key(|&(_, _, k)| deg(&monos[k as usize]));
        let mut table_prefix = Vec::new();
        for d in 0..=order {
            table_prefix.push(table.iter().filter(|&&(_, _, k)| deg(&monos[k as usize]) <= d).count());
        }
        Arc::new(JetSpace { order, monos, index, prefix, table, table_prefix })
    }

    pub fn len(&self, order: usize) -> usize {
        self.prefix[order]
    }
}

fn gen_degree(d: u8, var: usize, cur: [u8; 5], out: &mut Vec<[u8; 5]>) {
    if var == 4 {
        let mut m = cur;
        m[4] = d;
        out.push(m);
        return;
    }
    for e in 0..=d {
        let mut m = cur;
        m[var] = e;
        gen_degree(d - e, var + 1, m, out);
    }
}

/// Taylor coefficients up to total degree `order` in the displacement.
#[derive(Clone, Debug)]
pub struct Jet {
    space: Arc<JetSpace>,
    pub order: usize,
    pub c: Vec<Complex64>,
}

impl Jet {
    pub fn zero(space: &Arc<JetSpace>, order: usize) -> Jet {
        Jet { space: space.clone(), order, c: vec![Complex64::default(); space.len(order)] }
    }

    pub fn constant(space: &Arc<JetSpace>, order: usize, v: Complex64) -> Jet {
        let mut j = Jet::zero(space, order);
        j.c[0] = v;
        j
    }

    /// Jet of the coordinate x_k at base value `v`.
    pub fn coordinate(space: &Arc<JetSpace>, order: usize, k: usize, v: f64) -> Jet {
        let mut j = Jet::constant(space, order, Complex64::new(v, 0.0));
        if order >= 1 {
            let mut m = [0u8; 5];
            m[k] = 1;
            j.c[space.index[&m]] = Complex64::new(1.0, 0.0);
        }
        j
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order);
        Jet { space: self.space.clone(), order, c: self.c[..self.space.len(order)].to_vec() }
    }

    pub fn add_assign(&mut self, other: &Jet, k: Complex64) {
        if other.order < self.order {
            self.order = other.order;
            self.c.truncate(self.space.len(self.order));
        }
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b * k;
        }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        let mut out = Jet::zero(&self.space, order);
        for &(i, j, k) in &self.space.table[..self.space.table_prefix[order]] {
            out.c[k as usize] += self.c[i as usize] * other.c[j as usize];
        }
        out
    }

    /// Partial derivative; the result is valid to one order less.
    pub fn deriv(&self, k: usize) -> Jet {
        assert!(self.order >= 1, "jet order exhausted");
        let order = self.order - 1;
        let mut out = Jet::zero(&self.space, order);
        for (idx, m) in self.space.monos[..self.space.len(order)].iter().enumerate() {
            let mut up = *m;
            up[k] += 1;
            let src = self.space.index[&up];
            out.c[idx] = self.c[src] * (up[k] as f64);
        }
        out
    }

    pub fn deriv_multi(&self, alpha: Mono) -> Jet {
        let mut out = self.clone();
        for k in 0..5 {
            for _ in 0..alpha.exp(k) {
                out = out.deriv(k);
            }
        }
        out
    }

    /// `sum_n coeffs[n] * (self - self(0))^n`.
    fn series(&self, coeffs: &[Complex64]) -> Jet {
        let mut delta = self.clone();
        delta.c[0] = Complex64::default();
        let mut out = Jet::constant(&self.space, self.order, coeffs[0]);
        let mut power = Jet::constant(&self.space, self.order, Complex64::new(1.0, 0.0));
        for &cn in coeffs.iter().skip(1).take(self.order) {
            power = power.mul(&delta);
            out.add_assign(&power, cn);
        }
        out
    }

    /// `self^s` for real exponent s, valid when the base value is positive.
    pub fn powf(&self, s: f64) -> Jet {
        let a = self.c[0].re;
        let mut coeffs = Vec::with_capacity(self.order + 1);
        let mut binom = 1.0;
        for n in 0..=self.order {
            coeffs.push(Complex64::new(binom * a.powf(s - n as f64), 0.0));
            binom *= (s - n as f64) / (n as f64 + 1.0);
        }
        self.series(&coeffs)
    }
}

/// Cached expansions of the coordinates, r and the chart factor around one point.
pub struct PointJets {
    space: Arc<JetSpace>,
    order: usize,
    powers: Vec<Vec<Jet>>,
    r: Jet,
    inv_r: Vec<Jet>,
    inv_axis: Vec<(i64, Vec<Jet>)>,
    xs: [Jet; 5],
}

impl PointJets {
    pub fn new(space: &Arc<JetSpace>, order: usize, p: &Point5) -> Result<PointJets, CoreError> {
        let xs: [Jet; 5] = std::array::from_fn(|k| Jet::coordinate(space, order, k, p.x[k]));
        let one = Jet::constant(space, order, Complex64::new(1.0, 0.0));
        let mut r2 = Jet::zero(space, order);
        for x in &xs {
            r2.add_assign(&x.mul(x), Complex64::new(1.0, 0.0));
        }
        if r2.value().re <= 0.0 {
            return Err(CoreError::ZeroRadius);
        }
        let r = r2.powf(0.5);
        Ok(PointJets {
            space: space.clone(),
            order,
            powers: xs.iter().map(|x| vec![one.clone(), x.clone()]).collect(),
            inv_r: vec![one],
            inv_axis: Vec::new(),
            r,
            xs,
        })
    }

    fn power(&mut self, k: usize, e: usize) -> &Jet {
        while self.powers[k].len() <= e {
            let next = self.powers[k].last().unwrap().mul(&self.xs[k]);
            self.powers[k].push(next);
        }
        &self.powers[k][e]
    }

    fn poly(&mut self, p: &Poly) -> Jet {
        let mut out = Jet::zero(&self.space, self.order);
        for (m, c) in p.terms() {
            let mut term = Jet::constant(&self.space, self.order, c.to_complex());
            for k in 0..5 {
                let e = m.exp(k) as usize;
                if e > 0 {
                    term = term.mul(self.power(k, e));
                }
            }
            out.add_assign(&term, Complex64::new(1.0, 0.0));
        }
        out
    }

    fn inv_r_pow(&mut self, e: usize) -> Jet {
        if self.inv_r.len() == 1 {
            self.inv_r.push(self.r.powf(-1.0));
        }
        while self.inv_r.len() <= e {
            let next = self.inv_r.last().unwrap().mul(&self.inv_r[1]);
            self.inv_r.push(next);
        }
        self.inv_r[e].clone()
    }

    fn inv_axis_pow(&mut self, sign: i64, e: usize) -> Result<Jet, CoreError> {
        let pos = match self.inv_axis.iter().position(|(s, _)| *s == sign) {
            Some(pos) => pos,
            None => {
                let mut axis = self.r.clone();
                axis.add_assign(&self.xs[0], Complex64::new(sign as f64, 0.0));
                if axis.value().re <= 1e-12 * self.r.value().re {
                    return Err(CoreError::SingularAxis);
                }
                let one = Jet::constant(&self.space, self.order, Complex64::new(1.0, 0.0));
                self.inv_axis.push((sign, vec![one, axis.powf(-1.0)]));
                self.inv_axis.len() - 1
            }
        };
        let list = &mut self.inv_axis[pos].1;
        while list.len() <= e {
            let next = list.last().unwrap().mul(&list[1]);
            list.push(next);
        }
        Ok(list[e].clone())
    }

    /// Expansion of a scalar expression.
    pub fn scalar(&mut self, e: &ScalarExpr) -> Result<Jet, CoreError> {
        let mut num = self.poly(e.even());
        if !e.odd().is_zero() {
            let odd = self.poly(e.odd()).mul(&self.r);
            num.add_assign(&odd, Complex64::new(1.0, 0.0));
        }
        if e.r_power() > 0 {
            num = num.mul(&self.inv_r_pow(e.r_power() as usize));
        }
        if e.axis_power() > 0 {
            num = num.mul(&self.inv_axis_pow(e.chart().sign(), e.axis_power() as usize)?);
        }
        Ok(num)
    }
}

/// Expansion of a scalar expression around `p`.
pub fn scalar_jet(space: &Arc<JetSpace>, order: usize, e: &ScalarExpr, p: &Point5) -> Result<Jet, CoreError> {
    PointJets::new(space, order, p)?.scalar(e)
}

/// `exp` of a jet.
pub fn exp_jet(space: &Arc<JetSpace>, j: &Jet) -> Jet {
    let _ = space;
    let base = j.value().exp();
    let mut coeffs = Vec::with_capacity(j.order + 1);
    let mut fact = 1.0;
    for n in 0..=j.order {
        if n > 0 {
            fact *= n as f64;
        }
        coeffs.push(base / fact);
    }
    j.series(&coeffs)
}

/// Spin-j matrices (dimension 2j+1) for the generators T1, T2, T3.
pub fn spin_matrices(twice_j: usize) -> [Vec<Vec<Complex64>>; 3] {
    let d = twice_j + 1;
    let j = twice_j as f64 / 2.0;
    let mut t1 = vec![vec![Complex64::default(); d]; d];
    let mut t2 = t1.clone();
    let mut t3 = t1.clone();
    for a in 0..d {
        let m = j - a as f64;
        t3[a][a] = Complex64::new(m, 0.0);
        if a >= 1 {
            // <m+1| T+ |m>
            let up = ((j - m) * (j + m + 1.0)).sqrt();
            t1[a - 1][a] += Complex64::new(up / 2.0, 0.0);
            t1[a][a - 1] += Complex64::new(up / 2.0, 0.0);
            t2[a - 1][a] += Complex64::new(0.0, -up / 2.0);
            t2[a][a - 1] += Complex64::new(0.0, up / 2.0);
        }
    }
    [t1, t2, t3]
}

fn mat_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn word_matrix(w: IsoWord, gens: &[Vec<Vec<Complex64>>; 3]) -> Vec<Vec<Complex64>> {
    let d = gens[0].len();
    let mut m: Vec<Vec<Complex64>> =
        (0..d).map(|i| (0..d).map(|j| Complex64::new((i == j) as u8 as f64, 0.0)).collect()).collect();
    for g in w.letters() {
        m = mat_mul(&m, &gens[g - 1]);
    }
    m
}

/// An operator expanded around a point, acting on spinor-valued jets.
pub struct JetOperator {
    terms: Vec<(Jet, Mono, Vec<Vec<Complex64>>)>,
}

pub type SpinorJet = Vec<Jet>;

impl JetOperator {
    pub fn new(ctx: &mut PointJets, op: &OperatorExpr, twice_j: usize) -> Result<JetOperator, CoreError> {
        let gens = spin_matrices(twice_j);
        let mut terms = Vec::new();
        for (d, w, c) in op.terms() {
            terms.push((ctx.scalar(c)?, d, word_matrix(w, &gens)));
        }
        Ok(JetOperator { terms })
    }

    pub fn apply(&self, f: &SpinorJet) -> SpinorJet {
        let dim = f.len();
        let space = f[0].space.clone();
        let in_order = f.iter().map(|j| j.order).min().unwrap_or(0);
        let max_deriv = self.terms.iter().map(|(_, d, _)| d.degree() as usize).max().unwrap_or(0);
        let out_order = in_order - max_deriv;
        let mut out: SpinorJet = (0..dim).map(|_| Jet::zero(&space, out_order)).collect();
        let mut cache: HashMap<(Mono, usize), Jet> = HashMap::new();
        for (coef, d, mat) in &self.terms {
            let coef = coef.truncate(out_order);
            for b in 0..dim {
                let col_nonzero = (0..dim).any(|a| mat[a][b] != Complex64::default());
                if !col_nonzero {
                    continue;
                }
                let df = cache.entry((*d, b)).or_insert_with(|| f[b].deriv_multi(*d).truncate(out_order));
                let prod = coef.mul(df);
                for a in 0..dim {
                    if mat[a][b] != Complex64::default() {
                        out[a].add_assign(&prod, mat[a][b]);
                    }
                }
            }
        }
        out
    }
}

pub fn spinor_add(acc: &mut SpinorJet, v: &SpinorJet, k: Complex64) {
    for (a, b) in acc.iter_mut().zip(v) {
        a.add_assign(b, k);
    }
}
