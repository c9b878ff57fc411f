//! Casimir identities of the hidden SO(6) symmetry, multiplied through by
//! powers of X = -2 mu0 H so that no inverse powers of H appear.

use std::sync::Arc;

use hkit_algebra::{AlgebraError, GaussRat, OperatorExpr, Point5, Poly, Rational, ScalarExpr};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CoreError;
use crate::jet::{exp_jet, spinor_add, JetOperator, JetSpace, PointJets, SpinorJet};
use crate::symmetry::SymmetryOperators;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Casimir {
    C2,
    C3,
    C4,
}

impl Casimir {
    pub const ALL: [Casimir; 3] = [Casimir::C2, Casimir::C3, Casimir::C4];

    pub fn name(self) -> &'static str {
        match self {
            Casimir::C2 => "C2",
            Casimir::C3 => "C3",
            Casimir::C4 => "C4",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Casimir::C2 => "X (1/2) L_ij L_ij + M.M = mu0^2 e^4/hbar^2 + (2T^2 - 4) X,  X = -2 mu0 H",
            Casimir::C3 => "eps D D D with M in place of M' = 48 mu0 e^2/hbar T^2",
            Casimir::C4 => "X^2 (1/2) D_mn D_nr D_rt D_tm = X^2 (C2^2 + 6 C2 - 4 C2 T^2 - 12 T^2 + 6 T^4)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    /// Both sides applied to test functions and compared at sample points.
    Numeric { test_functions: usize, points: usize },
}

#[derive(Clone, Debug)]
pub struct CasimirOutcome {
    pub casimir: Casimir,
    pub mode: CheckMode,
    /// Zero for an exact pass, residual term count for an exact failure,
    /// or the largest relative pointwise deviation in numeric mode.
    pub residual: f64,
    pub passed: bool,
    pub note: String,
}

/// Orientation of the six-index Levi-Civita symbol used for C3, relative to
/// eps_{012345} = +1 with the Runge-Lenz row and column carrying index 5.
/// Fixed once so that C3 = +48 (...) T^2 for mu3 >= 0.
pub const EPSILON_ORIENTATION: i64 = -1;

fn g(r: &Rational) -> GaussRat {
    GaussRat::real(r.clone())
}

/// Signature of a permutation of 0..n given as a slice.
fn perm_sign(p: &[usize]) -> i64 {
    let mut sign = 1;
    let mut seen = vec![false; p.len()];
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Perfect matchings of {0..5} into three ordered pairs (a<b), listed once.
fn matchings() -> Vec<[(usize, usize); 3]> {
    fn rec(rest: Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<[(usize, usize); 3]>) {
        if rest.is_empty() {
            out.push([acc[0], acc[1], acc[2]]);
            return;
        }
        let a = rest[0];
        for idx in 1..rest.len() {
            let b = rest[idx];
            let remaining: Vec<usize> = rest.iter().copied().filter(|&v| v != a && v != b).collect();
            acc.push((a, b));
            rec(remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec((0..6).collect(), &mut Vec::new(), &mut out);
    out
}

impl SymmetryOperators {
    /// X = -2 mu0 H.
    pub fn x_op(&self) -> OperatorExpr {
        self.h.scale(&g(&(&self.units.mu0 * &Rational::from_int(-2))))
    }

    /// Entry of the 6x6 matrix D with M' replaced by the scaled Runge-Lenz vector.
    pub fn d_cleared(&self, mu: usize, nu: usize) -> OperatorExpr {
        match (mu, nu) {
            (5, 5) => OperatorExpr::zero(),
            (i, 5) => -&self.m[i],
            (5, j) => self.m[j].clone(),
            (i, j) => self.l[i][j].clone(),
        }
    }

    fn c2_sides(&self) -> Result<(OperatorExpr, OperatorExpr), AlgebraError> {
        let x = self.x_op();
        let mut ll = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    ll.push(self.l[i][j].compose(&self.l[i][j])?);
                }
            }
        }
        let half_ll = OperatorExpr::sum(&ll).scale(&GaussRat::frac(1, 2));
        let mut parts = vec![x.compose(&half_ll)?];
        for m in &self.m {
            parts.push(m.compose(m)?);
        }
        let lhs = OperatorExpr::sum(&parts);
        Ok((lhs, self.k_op()?))
    }

    /// K = X C2 = mu0^2 e^4 / hbar^2 + (2 T^2 - 4) X.
    fn k_op(&self) -> Result<OperatorExpr, AlgebraError> {
        let u = &self.units;
        let c = &(&(&u.mu0 * &u.mu0) * &(&u.e2 * &u.e2)) / &(&u.hbar * &u.hbar);
        let shift = &self.tsq.scale(&GaussRat::int(2)) - &OperatorExpr::constant(GaussRat::int(4));
        Ok(&OperatorExpr::constant(g(&c)) + &shift.compose(&self.x_op())?)
    }

    /// `sum eps_{mu nu rho sigma tau lambda} D D D` with M' replaced by the
    /// scaled Runge-Lenz vector, for eps_{012345} = +1 and the Runge-Lenz row last.
    pub fn c3_epsilon_sum(&self) -> Result<OperatorExpr, AlgebraError> {
        let mut parts = Vec::new();
        for pairs in matchings() {
            let flat = [pairs[0].0, pairs[0].1, pairs[1].0, pairs[1].1, pairs[2].0, pairs[2].1];
            let sign = perm_sign(&flat);
            let ops: Vec<OperatorExpr> = pairs.iter().map(|&(a, b)| self.d_cleared(a, b)).collect();
            for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let prod = ops[order[0]].compose(&ops[order[1]])?.compose(&ops[order[2]])?;
                parts.push(prod.scale(&GaussRat::int(8 * sign)));
            }
        }
        Ok(OperatorExpr::sum(&parts))
    }

    fn c3_sides(&self) -> Result<(OperatorExpr, OperatorExpr), AlgebraError> {
        let lhs = self.c3_epsilon_sum()?.scale(&GaussRat::int(EPSILON_ORIENTATION));
        let u = &self.units;
        let c = &(&(&u.mu0 * &u.e2) / &u.hbar) * &Rational::from_int(48);
        Ok((lhs, self.tsq.scale(&g(&c))))
    }

    /// Blocks of X D^2 with M' cleared: P_ij, Q_i, R_i, S.
    fn d2_blocks(&self, budget: usize) -> Result<(Vec<Vec<OperatorExpr>>, Vec<OperatorExpr>, Vec<OperatorExpr>, OperatorExpr), AlgebraError> {
        let x = self.x_op();
        let mut p = vec![vec![OperatorExpr::zero(); 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                let mut ll = Vec::new();
                for k in 0..5 {
                    ll.push(self.l[i][k].compose_budgeted(&self.l[k][j], budget)?);
                }
                let xll = x.compose_budgeted(&OperatorExpr::sum(&ll), budget)?;
                p[i][j] = &xll - &self.m[i].compose_budgeted(&self.m[j], budget)?;
            }
        }
        let mut q = Vec::new();
        let mut r = Vec::new();
        for i in 0..5 {
            let mut qi = Vec::new();
            let mut ri = Vec::new();
            for k in 0..5 {
                qi.push(self.l[i][k].compose_budgeted(&self.m[k], budget)?);
                ri.push(self.m[k].compose_budgeted(&self.l[k][i], budget)?);
            }
            q.push(-&OperatorExpr::sum(&qi));
            r.push(OperatorExpr::sum(&ri));
        }
        let s = -&OperatorExpr::sum(&self.m.iter().map(|m| m.compose_budgeted(m, budget)).collect::<Result<Vec<_>, _>>()?);
        Ok((p, q, r, s))
    }

    /// Right-hand side of the cleared C4 identity, a polynomial in X and T^2.
    fn c4_rhs(&self, budget: usize) -> Result<OperatorExpr, AlgebraError> {
        let x = self.x_op();
        let k = self.k_op()?;
        let t2 = &self.tsq;
        let xk = x.compose_budgeted(&k, budget)?;
        let xx = x.compose_budgeted(&x, budget)?;
        let terms = [
            k.compose_budgeted(&k, budget)?,
            xk.scale(&GaussRat::int(6)),
            xk.compose_budgeted(t2, budget)?.scale(&GaussRat::int(-4)),
            xx.compose_budgeted(t2, budget)?.scale(&GaussRat::int(-12)),
            xx.compose_budgeted(&t2.compose(t2)?, budget)?.scale(&GaussRat::int(6)),
        ];
        Ok(OperatorExpr::sum(&terms))
    }

    fn c4_exact(&self, budget: usize) -> Result<OperatorExpr, AlgebraError> {
        let (p, q, r, s) = self.d2_blocks(budget)?;
        let x = self.x_op();
        // The budget covers all fourth-order products together.
        let mut needed = s.composition_cost(&s);
        for i in 0..5 {
            for j in 0..5 {
                needed += p[i][j].composition_cost(&p[j][i]);
            }
            needed += q[i].composition_cost(&r[i]) + r[i].composition_cost(&q[i]);
        }
        if needed > budget {
            return Err(AlgebraError::TermBudgetExceeded { needed, budget });
        }
        let mut parts = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                parts.push(p[i][j].compose(&p[j][i])?);
            }
            let qr = &q[i].compose(&r[i])? + &r[i].compose(&q[i])?;
            parts.push(x.compose(&qr)?);
        }
        parts.push(s.compose(&s)?);
        let lhs = OperatorExpr::sum(&parts).scale(&GaussRat::frac(1, 2));
        let rhs = self.c4_rhs(budget)?;
        Ok(&lhs - &rhs)
    }

    pub fn check_casimir(&self, which: Casimir, budget: usize, seed: u64, fallback: (usize, usize)) -> CasimirOutcome {
        let exact = |res: Result<(OperatorExpr, OperatorExpr), AlgebraError>| match res {
            Ok((l, r)) => {
                let d = &l - &r;
                CasimirOutcome {
                    casimir: which,
                    mode: CheckMode::Exact,
                    residual: d.term_count() as f64,
                    passed: d.is_zero(),
                    note: if d.is_zero() { String::new() } else { d.render().lines().take(3).collect::<Vec<_>>().join("; ") },
                }
            }
            Err(e) => CasimirOutcome { casimir: which, mode: CheckMode::Exact, residual: f64::INFINITY, passed: false, note: e.to_string() },
        };
        match which {
            Casimir::C2 => exact(self.c2_sides()),
            Casimir::C3 => exact(self.c3_sides()),
            Casimir::C4 => match self.c4_exact(budget) {
                Ok(d) => CasimirOutcome {
                    casimir: which,
                    mode: CheckMode::Exact,
                    residual: d.term_count() as f64,
                    passed: d.is_zero(),
                    note: String::new(),
                },
                Err(AlgebraError::TermBudgetExceeded { needed, budget }) => {
                    let mut out = self.c4_numeric(seed, fallback.0, fallback.1);
                    let head = format!("exact product needs {needed} scalar products, budget {budget}; order-8 jets at {} points x {} functions, spin 1/2 and 1", fallback.1, fallback.0);
                    out.note = if out.note.is_empty() { head } else { format!("{head}; {}", out.note) };
                    out
                }
                Err(e) => CasimirOutcome { casimir: which, mode: CheckMode::Exact, residual: f64::INFINITY, passed: false, note: e.to_string() },
            },
        }
    }

    /// Numeric form of the C4 identity: both sides applied to random test
    /// spinors in the spin-1/2 and spin-1 representations, expanded to eighth
    /// order around random points.
    pub fn c4_numeric(&self, seed: u64, functions: usize, points: usize) -> CasimirOutcome {
        self.c4_numeric_shifted(seed, functions, points, 0.0)
    }

    /// Same as [`Self::c4_numeric`] with `shift * X^2 T^2` added to the right side;
    /// a nonzero shift must make the check fail.
    pub fn c4_numeric_shifted(&self, seed: u64, functions: usize, points: usize, shift: f64) -> CasimirOutcome {
        let mode = CheckMode::Numeric { test_functions: functions, points };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = JetSpace::new(8);
        let mut worst = 0.0f64;
        for _ in 0..points {
            let p = random_point(&mut rng);
            for twice_j in [1usize, 2] {
                match self.c4_sides_at(&space, &p, twice_j, functions, shift, &mut rng) {
                    Ok(pairs) => {
                        for (a, b) in pairs {
                            let scale = a.norm().max(b.norm()).max(1.0);
                            worst = worst.max((a - b).norm() / scale);
                        }
                    }
                    Err(e) => {
                        return CasimirOutcome { casimir: Casimir::C4, mode, residual: f64::INFINITY, passed: false, note: e.to_string() }
                    }
                }
            }
        }
        CasimirOutcome {
            casimir: Casimir::C4,
            mode,
            residual: worst,
            passed: worst < 1e-8,
            note: if worst < 1e-8 { String::new() } else { "pointwise mismatch".into() },
        }
    }

    /// Values of both sides on `functions` random test spinors, component by component.
    fn c4_sides_at(
        &self,
        space: &Arc<JetSpace>,
        p: &Point5,
        twice_j: usize,
        functions: usize,
        shift: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<(Complex64, Complex64)>, CoreError> {
        let mut ctx = PointJets::new(space, 8, p)?;
        let mut jl: Vec<Vec<Option<JetOperator>>> = Vec::new();
        for i in 0..5 {
            let mut row = Vec::new();
            for j in 0..5 {
                row.push(if i == j { None } else { Some(JetOperator::new(&mut ctx, &self.l[i][j], twice_j)?) });
            }
            jl.push(row);
        }
        let jm: Vec<JetOperator> = self.m.iter().map(|m| JetOperator::new(&mut ctx, m, twice_j)).collect::<Result<_, _>>()?;
        let jx = JetOperator::new(&mut ctx, &self.x_op(), twice_j)?;
        let jk = JetOperator::new(&mut ctx, &self.k_op()?, twice_j)?;
        let jt = JetOperator::new(&mut ctx, &self.tsq, twice_j)?;
        let one = Complex64::new(1.0, 0.0);
        let minus = -one;

        let mut out = Vec::new();
        for _ in 0..functions {
            let f = random_spinor(space, &mut ctx, twice_j + 1, rng);
            let mut lhs = Accum::default();
            // P_ij P_ji f with P_ab = X sum_k L_ak L_kb - M_a M_b.
            let lf: Vec<Vec<Option<SpinorJet>>> =
                (0..5).map(|k| (0..5).map(|b| jl[k][b].as_ref().map(|op| op.apply(&f))).collect()).collect();
            let mf: Vec<SpinorJet> = jm.iter().map(|m| m.apply(&f)).collect();
            let p_apply = |a: usize, lg: &[Option<SpinorJet>], mg: &SpinorJet| -> SpinorJet {
                let mut ll = Accum::default();
                for k in 0..5 {
                    if let (Some(op), Some(v)) = (&jl[a][k], &lg[k]) {
                        ll.add(op.apply(v), one);
                    }
                }
                let mut v = jx.apply(&ll.get());
                spinor_add(&mut v, &jm[a].apply(mg), minus);
                v
            };
            for i in 0..5 {
                for j in 0..5 {
                    let col: Vec<Option<SpinorJet>> = (0..5).map(|k| lf[k][i].clone()).collect();
                    let pji = p_apply(j, &col, &mf[i]);
                    let inner: Vec<Option<SpinorJet>> = (0..5).map(|k| jl[k][j].as_ref().map(|op| op.apply(&pji))).collect();
                    let m_inner = jm[j].apply(&pji);
                    lhs.add(p_apply(i, &inner, &m_inner), one);
                }
            }
            // X (Q_i R_i + R_i Q_i) f with Q_i = -sum_k L_ik M_k, R_i = sum_k M_k L_ki.
            for i in 0..5 {
                let r_of = |g: &SpinorJet| {
                    let mut acc = Accum::default();
                    for k in 0..5 {
                        if let Some(op) = &jl[k][i] {
                            acc.add(jm[k].apply(&op.apply(g)), one);
                        }
                    }
                    acc.get()
                };
                let q_of = |g: &SpinorJet| {
                    let mut acc = Accum::default();
                    for k in 0..5 {
                        if let Some(op) = &jl[i][k] {
                            acc.add(op.apply(&jm[k].apply(g)), minus);
                        }
                    }
                    acc.get()
                };
                let mut both = Accum::default();
                both.add(q_of(&r_of(&f)), one);
                both.add(r_of(&q_of(&f)), one);
                lhs.add(jx.apply(&both.get()), one);
            }
            // S^2 f with S = -sum_k M_k M_k.
            let s_of = |g: &SpinorJet| {
                let mut acc = Accum::default();
                for m in &jm {
                    acc.add(m.apply(&m.apply(g)), minus);
                }
                acc.get()
            };
            lhs.add(s_of(&s_of(&f)), one);
            let lhs = lhs.get();

            let kf = jk.apply(&f);
            let mut rhs = jk.apply(&kf);
            let xkf = jx.apply(&kf);
            spinor_add(&mut rhs, &xkf, Complex64::new(6.0, 0.0));
            spinor_add(&mut rhs, &jt.apply(&xkf), Complex64::new(-4.0, 0.0));
            let xxf = jx.apply(&jx.apply(&f));
            let txxf = jt.apply(&xxf);
            spinor_add(&mut rhs, &txxf, Complex64::new(-12.0 + shift, 0.0));
            spinor_add(&mut rhs, &jt.apply(&txxf), Complex64::new(6.0, 0.0));

            for (a, b) in lhs.iter().zip(&rhs) {
                out.push((a.value() * 0.5, b.value()));
            }
        }
        Ok(out)
    }
}

#[derive(Default)]
struct Accum(Option<SpinorJet>);

impl Accum {
    fn add(&mut self, mut v: SpinorJet, k: Complex64) {
        match &mut self.0 {
            Some(a) => spinor_add(a, &v, k),
            None => {
                for j in v.iter_mut() {
                    j.c.iter_mut().for_each(|c| *c *= k);
                }
                self.0 = Some(v);
            }
        }
    }

    fn get(self) -> SpinorJet {
        self.0.expect("empty accumulation")
    }
}

/// Random smooth test spinor: each component a random amplitude times
/// exp of a random linear form, plus a random quadratic.
fn random_spinor(space: &Arc<JetSpace>, ctx: &mut PointJets, dim: usize, rng: &mut ChaCha8Rng) -> SpinorJet {
    (0..dim)
        .map(|_| {
            let mut lin = Poly::zero();
            let mut quad = Poly::zero();
            for k in 0..5 {
                lin = lin.add(&Poly::var(k).scale(&GaussRat::frac(rng.gen_range(-8..9), 8)));
                let l = rng.gen_range(0..5);
                quad = quad.add(&Poly::var(k).mul(&Poly::var(l)).scale(&GaussRat::frac(rng.gen_range(-4..5), 4)));
            }
            let lin_jet = ctx.scalar(&ScalarExpr::poly(lin)).expect("polynomial");
            let amp = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let mut v = exp_jet(space, &lin_jet);
            v.c.iter_mut().for_each(|c| *c *= amp);
            v.add_assign(&ctx.scalar(&ScalarExpr::poly(quad)).expect("polynomial"), Complex64::new(1.0, 0.0));
            v
        })
        .collect()
}

fn random_point(rng: &mut ChaCha8Rng) -> Point5 {
    loop {
        let x: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let p = Point5::new(x);
        let r = p.radius();
        if r > 0.3 && r + x[0] > 0.2 * r {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_fallback_detects_a_wrong_coefficient() {
        let ops = SymmetryOperators::build(&crate::Units::default());
        assert!(ops.c4_numeric(3, 1, 1).passed);
        assert!(!ops.c4_numeric_shifted(3, 1, 1, 1.0).passed);
    }

    #[test]
    fn c3_sum_is_negative_for_the_plain_orientation() {
        let ops = SymmetryOperators::build(&crate::Units::default());
        let sum = ops.c3_epsilon_sum().unwrap();
        let diff = sum.try_add(&ops.tsq.scale(&GaussRat::int(48))).unwrap();
        assert!(diff.is_zero(), "{}", diff.render());
    }

    #[test]
    fn matchings_count() {
        assert_eq!(matchings().len(), 15);
        assert_eq!(perm_sign(&[0, 1, 2, 3, 4, 5]), 1);
        assert_eq!(perm_sign(&[1, 0, 2, 3, 4, 5]), -1);
    }
}
