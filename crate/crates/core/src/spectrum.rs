//! SO(6) Casimir eigenvalues and the bound-state spectrum they imply.

use hkit_algebra::Rational;

use crate::error::CoreError;
use crate::units::Units;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn is_half_integer(x: &Rational) -> bool {
    (x * &q(2)).is_integer()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirEigenvalues {
    pub mu: [Rational; 3],
    pub c2: Rational,
    pub c3: Rational,
    pub c4: Rational,
}

pub fn casimir_eigenvalues(mu1: &Rational, mu2: &Rational, mu3: &Rational) -> Result<CasimirEigenvalues, CoreError> {
    for m in [mu1, mu2, mu3] {
        if !is_half_integer(m) {
            return Err(CoreError::InvalidQuantumNumbers(format!("{m} is not a half-integer")));
        }
    }
    if !(mu1 >= mu2 && mu2 >= mu3 && mu3.signum() >= 0) {
        return Err(CoreError::OrderingViolation);
    }
    let a = mu1 * &(mu1 + &q(4));
    let b = mu2 * &(mu2 + &q(2));
    let m3sq = mu3 * mu3;
    let c2 = &(&a + &b) + &m3sq;
    let c3 = &(&(&q(48) * &(mu1 + &q(2))) * &(mu2 + &q(1))) * mu3;
    let c4 = &(&(&(&a * &a) + &(&q(6) * &a)) + &(&b * &b)) + &(&(&m3sq * &m3sq) - &(&q(2) * &m3sq));
    Ok(CasimirEigenvalues { mu: [mu1.clone(), mu2.clone(), mu3.clone()], c2, c3, c4 })
}

/// C4 expressed through C2 and the isospin: [C2 - 2T(T+1)]^2 + 6[C2 - 2T(T+1)] + 2T^2(T+1)^2.
pub fn c4_from_c2(c2: &Rational, t: &Rational) -> Rational {
    let tt = t * &(t + &q(1));
    let shifted = c2 - &(&q(2) * &tt);
    &(&(&shifted * &shifted) + &(&q(6) * &shifted)) + &(&(&q(2) * &tt) * &tt)
}

/// Solutions (mu2, mu3) of T(T+1) = (mu2 + 1) mu3 together with
/// mu2^2 (mu2 + 2)^2 + mu3^4 - 2 mu3^2 = 2 T^2 (T+1)^2, searched over
/// half-integers 0 <= mu3 <= mu2 <= 2T + 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraints {
    pub t: Rational,
    pub solutions: Vec<(Rational, Rational)>,
}

impl Constraints {
    /// Smallest admissible mu1 = N/2, which equals T once mu2 = T.
    pub fn mu1_min(&self) -> Option<Rational> {
        self.solutions.first().map(|(m2, _)| m2.clone())
    }

    /// First `count` admissible values of N.
    pub fn admissible_n(&self, count: usize) -> Vec<u64> {
        match self.mu1_min() {
            None => Vec::new(),
            Some(m) => {
                let start = (&m * &q(2)).to_f64() as u64;
                (0..count as u64).map(|k| start + 2 * k).collect()
            }
        }
    }
}

pub fn check_half_integer_t(t: &Rational) -> Result<(), CoreError> {
    if t.signum() < 0 || !is_half_integer(t) {
        return Err(CoreError::InvalidQuantumNumbers(format!("isospin {t} must be a non-negative half-integer")));
    }
    Ok(())
}

pub fn solve_constraints(t: &Rational) -> Result<Constraints, CoreError> {
    check_half_integer_t(t)?;
    let tt = t * &(t + &q(1));
    let target15 = &(&q(2) * &tt) * &tt;
    let limit = (&(t * &q(2)) + &q(2)).to_f64() as i64 * 2;
    let mut solutions = Vec::new();
    for twice2 in 0..=limit {
        let mu2 = Rational::new(twice2, 2);
        for twice3 in 0..=twice2 {
            let mu3 = Rational::new(twice3, 2);
            let eq17 = &(&mu2 + &q(1)) * &mu3 == tt;
            let m3sq = &mu3 * &mu3;
            let b = &mu2 * &(&mu2 + &q(2));
            let eq15 = &(&(&b * &b) + &(&m3sq * &m3sq)) - &(&q(2) * &m3sq) == target15;
            if eq17 && eq15 {
                solutions.push((mu2.clone(), mu3));
            }
        }
    }
    Ok(Constraints { t: t.clone(), solutions })
}

/// (mu2^2 - mu3^2)((mu2 + 2)^2 - mu3^2).
pub fn constraint_product(mu2: &Rational, mu3: &Rational) -> Rational {
    let a = &(mu2 * mu2) - &(mu3 * mu3);
    let p = mu2 + &q(2);
    let b = &(&p * &p) - &(mu3 * mu3);
    &a * &b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumLevel {
    pub n: u64,
    pub t: Rational,
    pub mu: [Rational; 3],
    pub energy: Rational,
    pub casimirs: CasimirEigenvalues,
}

/// epsilon = -mu0 e^4 / (2 hbar^2 (N/2 + 2)^2).
pub fn energy_formula(n: u64, units: &Units) -> Rational {
    let shift = &Rational::new(n as i64, 2) + &q(2);
    let num = &units.mu0 * &(&units.e2 * &units.e2);
    let den = &(&q(2) * &(&units.hbar * &units.hbar)) * &(&shift * &shift);
    -&(&num / &den)
}

/// Energy from the C2 eigenvalue: C2 = -mu0 e^4 / (2 hbar^2 eps) + 2T(T+1) - 4.
pub fn energy_from_c2(c2: &Rational, t: &Rational, units: &Units) -> Rational {
    let tt = t * &(t + &q(1));
    let denom = &(c2 - &(&q(2) * &tt)) + &q(4);
    let num = &units.mu0 * &(&units.e2 * &units.e2);
    -&(&num / &(&(&q(2) * &(&units.hbar * &units.hbar)) * &denom))
}

pub fn level(n: u64, t: &Rational, units: &Units) -> Result<SpectrumLevel, CoreError> {
    check_half_integer_t(t)?;
    let mu1 = Rational::new(n as i64, 2);
    let gap = &mu1 - t;
    if gap.signum() < 0 || !gap.is_integer() {
        return Err(CoreError::InvalidQuantumNumbers(format!("N/2 = {mu1} is not in {{T, T+1, ...}} for T = {t}")));
    }
    let casimirs = casimir_eigenvalues(&mu1, t, t)?;
    Ok(SpectrumLevel { n, t: t.clone(), mu: [mu1, t.clone(), t.clone()], energy: energy_formula(n, units), casimirs })
}

pub fn energy_levels(t: &Rational, count: usize, units: &Units) -> Result<Vec<SpectrumLevel>, CoreError> {
    if count == 0 {
        return Err(CoreError::InvalidInput("count must be at least 1".into()));
    }
    let cons = solve_constraints(t)?;
    cons.admissible_n(count).into_iter().map(|n| level(n, t, units)).collect()
}

/// Outcome of closing the duality ansatz for one oscillator level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub n: u64,
    pub omega: Rational,
    pub e2: Rational,
    pub energy_from_spectrum: Rational,
    pub energy_from_ansatz: Rational,
}

impl Closure {
    pub fn holds(&self) -> bool {
        self.energy_from_spectrum == self.energy_from_ansatz
    }
}

/// E = hbar omega (N + 4), e^2 = E/4; the charge-dyon level with mu1 = N/2
/// must equal -mu0 omega^2 / 8.
pub fn duality_closure(n: u64, omega: &Rational, units: &Units) -> Closure {
    let e_osc = &(&units.hbar * omega) * &q(n as i64 + 4);
    let e2 = &e_osc / &q(4);
    let dual = Units { e2: e2.clone(), ..units.clone() };
    let from_spectrum = energy_formula(n, &dual);
    let from_ansatz = -&(&(&units.mu0 * &(omega * omega)) / &q(8));
    Closure { n, omega: omega.clone(), e2, energy_from_spectrum: from_spectrum, energy_from_ansatz: from_ansatz }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64) -> Rational {
        Rational::new(n, 2)
    }

    #[test]
    fn eigenvalue_examples() {
        let z = casimir_eigenvalues(&q(0), &q(0), &q(0)).unwrap();
        assert_eq!((z.c2, z.c3, z.c4), (q(0), q(0), q(0)));
        let e = casimir_eigenvalues(&q(1), &q(1), &q(1)).unwrap();
        assert_eq!((e.c2, e.c3, e.c4), (q(9), q(288), q(63)));
        assert_eq!(casimir_eigenvalues(&q(1), &q(0), &q(1)), Err(CoreError::OrderingViolation));
    }

    #[test]
    fn constraints_force_mu2_equal_mu3_equal_t() {
        for twice_t in 0..=10 {
            let t = h(twice_t);
            let c = solve_constraints(&t).unwrap();
            assert_eq!(c.solutions, vec![(t.clone(), t.clone())], "T = {t}");
            assert!(constraint_product(&t, &t).is_zero());
        }
        assert_eq!(solve_constraints(&q(0)).unwrap().admissible_n(3), vec![0, 2, 4]);
        assert_eq!(solve_constraints(&h(1)).unwrap().admissible_n(3), vec![1, 3, 5]);
    }

    #[test]
    fn level_examples() {
        let u = Units::default();
        assert_eq!(level(0, &q(0), &u).unwrap().energy, Rational::new(-1, 8));
        assert_eq!(level(1, &h(1), &u).unwrap().energy, Rational::new(-2, 25));
        assert!(matches!(level(0, &q(1), &u), Err(CoreError::InvalidQuantumNumbers(_))));
        assert!(matches!(level(1, &q(0), &u), Err(CoreError::InvalidQuantumNumbers(_))));
    }

    #[test]
    fn closure_examples() {
        let u = Units::default();
        let c = duality_closure(0, &q(1), &u);
        assert_eq!(c.e2, q(1));
        assert_eq!(c.energy_from_spectrum, Rational::new(-1, 8));
        assert!(c.holds());
        assert!(duality_closure(6, &h(3), &u).holds());
    }
}
