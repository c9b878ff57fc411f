//! Differential operators with isospin-valued coefficients:
//! finite sums of `f(x) * W * d^alpha` where `f` is a [`ScalarExpr`], `W` a
//! PBW word in T1, T2, T3 and `d^alpha` a mixed partial derivative. The
//! isospin generators act on internal degrees of freedom, so they commute
//! with both coordinates and derivatives.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::gauss::GaussRat;
use crate::isospin::{mul_words, IsoWord};
use crate::poly::Mono;
use crate::rational::Rational;
use crate::scalar::{Chart, ScalarExpr, ScalarSum};

/// Multi-index of partial derivatives over d0..d4.
pub type DerivIndex = Mono;

type Key = (DerivIndex, IsoWord);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    chart: Option<Chart>,
    terms: BTreeMap<Key, ScalarExpr>,
}

fn chart_of(e: &ScalarExpr) -> Option<Chart> {
    (e.axis_power() > 0).then(|| e.chart())
}

fn join(a: Option<Chart>, b: Option<Chart>) -> Result<Option<Chart>, AlgebraError> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(AlgebraError::ChartMismatch),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        _ => Ok(None),
    }
}

/// All sub-multi-indices gamma <= alpha with the product of binomials C(alpha, gamma).
fn leibniz_splits(alpha: DerivIndex) -> Vec<(DerivIndex, u64)> {
    let mut out = vec![(Mono::ONE, 1u64)];
    for k in 0..5 {
        let a = alpha.exp(k);
        if a == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for (g, b) in &out {
            let mut binom = 1u64;
            for j in 0..=a {
                next.push((g.mul(Mono::var_pow(k, j)), b * binom));
                binom = binom * (a - j) as u64 / (j + 1) as u64;
            }
        }
        out = next;
    }
    out
}

/// A function with isospin-word components, the object operators act on.
pub type IsoField = BTreeMap<IsoWord, ScalarExpr>;

impl OperatorExpr {
    pub fn zero() -> OperatorExpr {
        OperatorExpr::default()
    }

    pub fn term(coeff: ScalarExpr, word: IsoWord, deriv: DerivIndex) -> OperatorExpr {
        let mut op = OperatorExpr::zero();
        if !coeff.is_zero() {
            op.chart = chart_of(&coeff);
            op.terms.insert((deriv, word), coeff);
        }
        op
    }

    pub fn identity() -> OperatorExpr {
        OperatorExpr::scalar(ScalarExpr::one())
    }

    /// Multiplication by a function.
    pub fn scalar(f: ScalarExpr) -> OperatorExpr {
        OperatorExpr::term(f, IsoWord::ONE, Mono::ONE)
    }

    pub fn constant(c: GaussRat) -> OperatorExpr {
        OperatorExpr::scalar(ScalarExpr::constant(c))
    }

    /// Isospin generator T_g, g in 1..=3.
    pub fn generator(g: usize) -> OperatorExpr {
        OperatorExpr::term(ScalarExpr::one(), IsoWord::generator(g), Mono::ONE)
    }

    pub fn word(w: IsoWord) -> OperatorExpr {
        OperatorExpr::term(ScalarExpr::one(), w, Mono::ONE)
    }

    /// Partial derivative d/dx_k.
    pub fn deriv(k: usize) -> OperatorExpr {
        OperatorExpr::term(ScalarExpr::one(), IsoWord::ONE, Mono::var(k))
    }

    /// T^2 = T1^2 + T2^2 + T3^2.
    pub fn casimir() -> OperatorExpr {
        (1..=3).fold(OperatorExpr::zero(), |acc, g| {
            let mut w = IsoWord::ONE;
            w.exps[g - 1] = 2;
            &acc + &OperatorExpr::word(w)
        })
    }

    pub fn chart(&self) -> Option<Chart> {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total number of polynomial monomials across all coefficients.
    pub fn size(&self) -> usize {
        self.terms.values().map(ScalarExpr::term_count).sum()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(d, _)| d.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (DerivIndex, IsoWord, &ScalarExpr)> {
        self.terms.iter().map(|((d, w), c)| (*d, *w, c))
    }

    pub fn coefficient(&self, deriv: DerivIndex, word: IsoWord) -> ScalarExpr {
        self.terms.get(&(deriv, word)).cloned().unwrap_or_default()
    }

    fn from_sums(chart: Option<Chart>, sums: HashMap<Key, ScalarSum>) -> OperatorExpr {
        let mut terms = BTreeMap::new();
        let mut out_chart = None;
        for (k, s) in sums {
            let c = s.finish();
            if !c.is_zero() {
                out_chart = out_chart.or(chart_of(&c));
                terms.insert(k, c);
            }
        }
        OperatorExpr { chart: out_chart.or(chart).filter(|_| !terms.is_empty()), terms }
    }

    pub fn try_add(&self, other: &OperatorExpr) -> Result<OperatorExpr, AlgebraError> {
        join(self.chart, other.chart)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let sum = match terms.get(k) {
                Some(prev) => prev + c,
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, sum);
            }
        }
        let chart = terms.values().find_map(chart_of);
        Ok(OperatorExpr { chart, terms })
    }

    /// Sum of many operators, cancelling denominators once per coefficient.
    pub fn sum<'a, I: IntoIterator<Item = &'a OperatorExpr>>(ops: I) -> OperatorExpr {
        let mut sums: HashMap<Key, ScalarSum> = HashMap::new();
        let mut chart = None;
        for op in ops {
            chart = join(chart, op.chart).expect("mixing operators from different gauge charts");
            for (k, c) in &op.terms {
                sums.entry(*k).or_default().push(c.clone());
            }
        }
        OperatorExpr::from_sums(chart, sums)
    }

    pub fn scale(&self, k: &GaussRat) -> OperatorExpr {
        if k.is_zero() {
            return OperatorExpr::zero();
        }
        OperatorExpr { chart: self.chart, terms: self.terms.iter().map(|(key, c)| (*key, c.scale(k))).collect() }
    }

    pub fn scale_rational(&self, k: &Rational) -> OperatorExpr {
        self.scale(&GaussRat::real(k.clone()))
    }

    /// Left multiplication by a function, `f * A`.
    pub fn mul_scalar(&self, f: &ScalarExpr) -> OperatorExpr {
        let mut sums: HashMap<Key, ScalarSum> = HashMap::new();
        for (k, c) in &self.terms {
            sums.entry(*k).or_default().push_product(f, c, &GaussRat::ONE);
        }
        OperatorExpr::from_sums(join(self.chart, chart_of(f)).expect("chart mismatch"), sums)
    }

    /// Number of scalar products a composition `self * other` would form.
    pub fn composition_cost(&self, other: &OperatorExpr) -> usize {
        let splits: usize = self.terms.keys().map(|(d, _)| leibniz_splits(*d).len()).sum();
        splits * other.terms.len()
    }

    /// Operator product `self * other`.
    pub fn compose(&self, other: &OperatorExpr) -> Result<OperatorExpr, AlgebraError> {
        self.compose_budgeted(other, usize::MAX)
    }

    pub fn compose_budgeted(&self, other: &OperatorExpr, budget: usize) -> Result<OperatorExpr, AlgebraError> {
        let chart = join(self.chart, other.chart)?;
        let needed = self.composition_cost(other);
        if needed > budget {
            return Err(AlgebraError::TermBudgetExceeded { needed, budget });
        }
        let mut derivs: HashMap<(usize, DerivIndex), ScalarExpr> = HashMap::new();
        let mut sums: HashMap<Key, ScalarSum> = HashMap::new();
        let right: Vec<_> = other.terms.iter().collect();
        for ((alpha, w), f) in &self.terms {
            let splits = leibniz_splits(*alpha);
            for (j, ((beta, v), g)) in right.iter().enumerate() {
                let words = mul_words(*w, *v);
                for (gamma, binom) in &splits {
                    let dg = derivs.entry((j, *gamma)).or_insert_with(|| {
                        if *gamma == Mono::ONE {
                            (*g).clone()
                        } else {
                            g.differentiate_multi(*gamma)
                        }
                    });
                    if dg.is_zero() {
                        continue;
                    }
                    let prod = f.mul_raw(dg);
                    let rest = Mono(alpha.0 - gamma.0).mul(*beta);
                    let b = GaussRat::int(*binom as i64);
                    for (k, u) in &words {
                        sums.entry((rest, *u)).or_default().push(prod.scale(&(&b * k)));
                    }
                }
            }
        }
        Ok(OperatorExpr::from_sums(chart, sums))
    }

    /// `[self, other] = self * other - other * self`.
    pub fn commutator(&self, other: &OperatorExpr) -> Result<OperatorExpr, AlgebraError> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        Ok(&ab - &ba)
    }

    /// Applies the operator to a function with isospin components.
    pub fn apply(&self, field: &IsoField) -> Result<IsoField, AlgebraError> {
        let mut chart = self.chart;
        for f in field.values() {
            chart = join(chart, chart_of(f))?;
        }
        let mut sums: BTreeMap<IsoWord, ScalarSum> = BTreeMap::new();
        let mut derivs: HashMap<(IsoWord, DerivIndex), ScalarExpr> = HashMap::new();
        for ((alpha, w), c) in &self.terms {
            for (v, f) in field {
                let df = derivs.entry((*v, *alpha)).or_insert_with(|| f.differentiate_multi(*alpha));
                if df.is_zero() {
                    continue;
                }
                for (k, u) in mul_words(*w, *v) {
                    sums.entry(u).or_default().push_product(c, df, &k);
                }
            }
        }
        Ok(sums.into_iter().map(|(w, s)| (w, s.finish())).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Plain-text rendering, one term per line.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut lines = Vec::new();
        for ((d, w), c) in &self.terms {
            let mut parts = vec![format!("[{c}]")];
            if !w.is_one() {
                parts.push(format!("{w:?}"));
            }
            for k in 0..5 {
                match d.exp(k) {
                    0 => {}
                    1 => parts.push(format!("d{k}")),
                    e => parts.push(format!("d{k}^{e}")),
                }
            }
            lines.push(parts.join(" "));
        }
        lines.join("\n")
    }
}

impl fmt::Debug for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: &OperatorExpr) -> OperatorExpr {
        self.try_add(rhs).expect("mixing operators from different gauge charts")
    }
}

impl<'a> Sub<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: &OperatorExpr) -> OperatorExpr {
        self + &(-rhs)
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        self.scale(&GaussRat::int(-1))
    }
}

impl<'a> Mul<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: &OperatorExpr) -> OperatorExpr {
        self.compose(rhs).expect("mixing operators from different gauge charts")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: OperatorExpr) -> OperatorExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> OperatorExpr {
        OperatorExpr::scalar(ScalarExpr::x(k))
    }

    #[test]
    fn leibniz_on_coordinate() {
        let got = &OperatorExpr::deriv(1) * &x(1);
        let expected = &(&x(1) * &OperatorExpr::deriv(1)) + &OperatorExpr::identity();
        assert_eq!(got, expected);
        assert_eq!(OperatorExpr::deriv(1).commutator(&x(1)).unwrap(), OperatorExpr::identity());
    }

    #[test]
    fn generators_reorder() {
        let got = &OperatorExpr::generator(2) * &OperatorExpr::generator(1);
        let expected = &OperatorExpr::word(IsoWord::new(1, 1, 0)) - &OperatorExpr::generator(3).scale(&GaussRat::I);
        assert_eq!(got, expected);
    }

    #[test]
    fn identity_is_neutral() {
        let a = &(&OperatorExpr::deriv(0) * &x(2)) + &OperatorExpr::generator(3);
        assert_eq!(&OperatorExpr::identity() * &a, a);
        assert_eq!(&a * &OperatorExpr::identity(), a);
    }

    #[test]
    fn casimir_commutes_with_generators() {
        let t2 = OperatorExpr::casimir();
        assert!(t2.commutator(&OperatorExpr::generator(3)).unwrap().is_zero());
    }

    #[test]
    fn chart_mismatch_is_reported() {
        let a = OperatorExpr::scalar(ScalarExpr::inv_axis(Chart::Plus, 1));
        let b = OperatorExpr::scalar(ScalarExpr::inv_axis(Chart::Minus, 1));
        assert_eq!(a.compose(&b), Err(AlgebraError::ChartMismatch));
        assert_eq!(a.commutator(&b), Err(AlgebraError::ChartMismatch));
    }

    #[test]
    fn apply_examples() {
        let mut f = IsoField::new();
        f.insert(IsoWord::ONE, ScalarExpr::r());
        let got = OperatorExpr::deriv(0).apply(&f).unwrap();
        assert_eq!(got[&IsoWord::ONE], &ScalarExpr::x(0) * &ScalarExpr::inv_r(1));

        let mut g = IsoField::new();
        g.insert(IsoWord::ONE, ScalarExpr::x(0).pow(2));
        let op = &x(0) * &OperatorExpr::deriv(0);
        assert_eq!(op.apply(&g).unwrap()[&IsoWord::ONE], ScalarExpr::x(0).pow(2).scale(&GaussRat::int(2)));
    }

    #[test]
    fn budget_guard() {
        let a = &OperatorExpr::deriv(0) * &OperatorExpr::deriv(1);
        let err = a.compose_budgeted(&a, 1).unwrap_err();
        assert!(matches!(err, AlgebraError::TermBudgetExceeded { .. }));
    }
}
