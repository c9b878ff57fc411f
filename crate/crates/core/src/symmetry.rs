//! Exact construction of the covariant momenta, angular momenta, the
//! Runge-Lenz vector and the Hamiltonian, and the commutation relations
//! between them.

use hkit_algebra::{AlgebraError, Chart, GaussRat, IsoWord, OperatorExpr, Rational, ScalarExpr};

use crate::gauge::{FieldSource, FieldTensor, GaugePotential};
use crate::units::Units;

/// All operators are built in chart A. `m` holds sqrt(mu0) times the
/// Runge-Lenz vector, which has rational coefficients for every rational mu0.
#[derive(Clone, Debug)]
pub struct SymmetryOperators {
    pub units: Units,
    pub pi: Vec<OperatorExpr>,
    pub l: Vec<Vec<OperatorExpr>>,
    pub m: Vec<OperatorExpr>,
    pub h: OperatorExpr,
    pub tsq: OperatorExpr,
    pub field: Option<FieldTensor>,
}

fn g(r: &Rational) -> GaussRat {
    GaussRat::real(r.clone())
}

fn x(k: usize) -> OperatorExpr {
    OperatorExpr::scalar(ScalarExpr::x(k))
}

impl SymmetryOperators {
    /// Operators with the monopole field switched on.
    pub fn build(units: &Units) -> SymmetryOperators {
        let pot = GaugePotential::listed(Chart::Plus);
        let field = FieldTensor::build(FieldSource::Definition, Chart::Plus).expect("definition source");
        SymmetryOperators::assemble(units, Some((&pot, field)))
    }

    /// Plain five-dimensional Coulomb problem: no gauge field, no isospin.
    pub fn build_flat(units: &Units) -> SymmetryOperators {
        SymmetryOperators::assemble(units, None)
    }

    fn assemble(units: &Units, gauge: Option<(&GaugePotential, FieldTensor)>) -> SymmetryOperators {
        let hbar = g(&units.hbar);
        let minus_i_hbar = &GaussRat::I * &(-&hbar);
        let pi: Vec<OperatorExpr> = (0..5)
            .map(|i| {
                let p = OperatorExpr::deriv(i).scale(&minus_i_hbar);
                match &gauge {
                    None => p,
                    Some((pot, _)) => {
                        let terms: Vec<OperatorExpr> = (1..=3)
                            .map(|a| OperatorExpr::term(pot.get(a, i).scale(&-&hbar), IsoWord::generator(a), Default::default()))
                            .collect();
                        OperatorExpr::sum(std::iter::once(&p).chain(terms.iter()))
                    }
                }
            })
            .collect();

        let inv_hbar = g(&units.hbar.recip());
        let r2 = ScalarExpr::r().pow(2);
        let mut l = vec![vec![OperatorExpr::zero(); 5]; 5];
        for i in 0..5 {
            for j in (i + 1)..5 {
                let orbital = &(&x(i) * &pi[j]) - &(&x(j) * &pi[i]);
                let mut lij = orbital.scale(&inv_hbar);
                if let Some((_, f)) = &gauge {
                    for a in 1..=3 {
                        let c = (&r2 * f.get(a, i, j)).scale(&GaussRat::int(-1));
                        lij = &lij + &OperatorExpr::term(c, IsoWord::generator(a), Default::default());
                    }
                }
                l[j][i] = -&lij;
                l[i][j] = lij;
            }
        }

        let tsq = if gauge.is_some() { OperatorExpr::casimir() } else { OperatorExpr::zero() };
        let two_mu0 = &units.mu0 * &Rational::from_int(2);
        let kinetic = OperatorExpr::sum(&pi.iter().map(|p| p * p).collect::<Vec<_>>()).scale(&g(&two_mu0.recip()));
        let centrifugal = tsq.mul_scalar(&ScalarExpr::inv_r(2)).scale(&g(&(&(&units.hbar * &units.hbar) / &two_mu0)));
        let coulomb = OperatorExpr::scalar(ScalarExpr::inv_r(1).scale(&g(&-&units.e2)));
        let h = OperatorExpr::sum([&kinetic, &centrifugal, &coulomb]);

        let lenz = &(&units.mu0 * &units.e2) / &units.hbar;
        let half = GaussRat::frac(1, 2);
        let m = (0..5)
            .map(|k| {
                let mut parts: Vec<OperatorExpr> = Vec::new();
                for i in 0..5 {
                    if i != k {
                        parts.push((&pi[i] * &l[i][k]).scale(&half));
                        parts.push((&l[i][k] * &pi[i]).scale(&half));
                    }
                }
                let radial = &ScalarExpr::x(k) * &ScalarExpr::inv_r(1);
                parts.push(OperatorExpr::scalar(radial.scale(&g(&lenz))));
                OperatorExpr::sum(&parts)
            })
            .collect();

        SymmetryOperators { units: units.clone(), pi, l, m, h, tsq, field: gauge.map(|(_, f)| f) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    PiX,
    PiPi,
    LX,
    LPi,
    LL,
    HL,
    HM,
    LM,
    MM,
    So51Cleared,
}

impl Relation {
    pub const ALL: [Relation; 10] = [
        Relation::PiX,
        Relation::PiPi,
        Relation::LX,
        Relation::LPi,
        Relation::LL,
        Relation::HL,
        Relation::HM,
        Relation::LM,
        Relation::MM,
        Relation::So51Cleared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::PiX => "pi-x",
            Relation::PiPi => "pi-pi",
            Relation::LX => "L-x",
            Relation::LPi => "L-pi",
            Relation::LL => "L-L",
            Relation::HL => "H-L",
            Relation::HM => "H-M",
            Relation::LM => "L-M",
            Relation::MM => "M-M",
            Relation::So51Cleared => "SO51-cleared",
        }
    }

    pub fn parse(name: &str) -> Option<Relation> {
        let key = name.to_ascii_lowercase();
        Relation::ALL.into_iter().find(|r| r.name().to_ascii_lowercase() == key || (key == "l-l(so5)" && *r == Relation::LL))
    }

    pub fn formula(self) -> &'static str {
        match self {
            Relation::PiX => "[pi_i, x_j] = -i hbar delta_ij",
            Relation::PiPi => "[pi_i, pi_j] = i hbar^2 F^a_ij T_a",
            Relation::LX => "[L_ik, x_j] = i delta_ij x_k - i delta_kj x_i",
            Relation::LPi => "[L_ik, pi_j] = i delta_ij pi_k - i delta_kj pi_i",
            Relation::LL => "[L_ij, L_mn] = i d_im L_jn - i d_jm L_in - i d_in L_jm + i d_jn L_im",
            Relation::HL => "[H, L_ij] = 0",
            Relation::HM => "[H, M_i] = 0",
            Relation::LM => "[L_ij, M_k] = i delta_ik M_j - i delta_jk M_i",
            Relation::MM => "[M_i, M_k] + 2i H L_ik = 0",
            Relation::So51Cleared => "[M_i, M_k] - (2H)(-i L_ik) = 0",
        }
    }
}

/// Outcome of one relation family: number of index tuples checked and the
/// first nonvanishing residual, if any.
#[derive(Clone, Debug)]
pub struct RelationOutcome {
    pub relation: Relation,
    pub cases: usize,
    pub failures: usize,
    pub max_residual_terms: usize,
    pub first_failure: Option<String>,
}

impl RelationOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn delta(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

struct Tally {
    outcome: RelationOutcome,
}

impl Tally {
    fn new(relation: Relation) -> Tally {
        Tally { outcome: RelationOutcome { relation, cases: 0, failures: 0, max_residual_terms: 0, first_failure: None } }
    }

    fn record(&mut self, label: String, residual: Result<OperatorExpr, AlgebraError>) {
        self.outcome.cases += 1;
        match residual {
            Ok(res) if res.is_zero() => {}
            Ok(res) => {
                self.outcome.failures += 1;
                self.outcome.max_residual_terms = self.outcome.max_residual_terms.max(res.term_count());
                if self.outcome.first_failure.is_none() {
                    let text = res.render();
                    let short: String = text.lines().take(4).collect::<Vec<_>>().join("; ");
                    self.outcome.first_failure = Some(format!("{label}: {short}"));
                }
            }
            Err(e) => {
                self.outcome.failures += 1;
                if self.outcome.first_failure.is_none() {
                    self.outcome.first_failure = Some(format!("{label}: {e}"));
                }
            }
        }
    }
}

fn comb(terms: &[(GaussRat, &OperatorExpr)]) -> OperatorExpr {
    let scaled: Vec<OperatorExpr> = terms.iter().filter(|(c, _)| !c.is_zero()).map(|(c, o)| o.scale(c)).collect();
    OperatorExpr::sum(&scaled)
}

impl SymmetryOperators {
    fn i_int(k: i64) -> GaussRat {
        GaussRat::imag(Rational::from_int(k))
    }

    pub fn verify(&self, relation: Relation) -> RelationOutcome {
        let mut t = Tally::new(relation);
        let hbar = g(&self.units.hbar);
        let i1 = GaussRat::I;
        match relation {
            Relation::PiX => {
                for i in 0..5 {
                    for j in 0..5 {
                        let lhs = self.pi[i].commutator(&x(j));
                        let rhs = OperatorExpr::constant(&(&i1 * &-&hbar) * &GaussRat::int(delta(i, j)));
                        t.record(format!("i={i} j={j}"), lhs.map(|l| &l - &rhs));
                    }
                }
            }
            Relation::PiPi => {
                let h2 = &hbar * &hbar;
                for i in 0..5 {
                    for j in 0..5 {
                        let lhs = self.pi[i].commutator(&self.pi[j]);
                        let rhs = match &self.field {
                            Some(f) => OperatorExpr::sum(
                                &(1..=3)
                                    .map(|a| {
                                        OperatorExpr::term(f.get(a, i, j).scale(&(&i1 * &h2)), IsoWord::generator(a), Default::default())
                                    })
                                    .collect::<Vec<_>>(),
                            ),
                            None => OperatorExpr::zero(),
                        };
                        t.record(format!("i={i} j={j}"), lhs.map(|l| &l - &rhs));
                    }
                }
            }
            Relation::LX => {
                for i in 0..5 {
                    for k in 0..5 {
                        for j in 0..5 {
                            let lhs = self.l[i][k].commutator(&x(j));
                            let rhs = comb(&[(Self::i_int(delta(i, j)), &x(k)), (Self::i_int(-delta(k, j)), &x(i))]);
                            t.record(format!("i={i} k={k} j={j}"), lhs.map(|l| &l - &rhs));
                        }
                    }
                }
            }
            Relation::LPi => {
                for i in 0..5 {
                    for k in (i + 1)..5 {
                        for j in 0..5 {
                            let lhs = self.l[i][k].commutator(&self.pi[j]);
                            let rhs = comb(&[
                                (Self::i_int(delta(i, j)), &self.pi[k]),
                                (Self::i_int(-delta(k, j)), &self.pi[i]),
                            ]);
                            t.record(format!("i={i} k={k} j={j}"), lhs.map(|l| &l - &rhs));
                        }
                    }
                }
            }
            Relation::LL => {
                let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
                for (pi_, &(i, j)) in pairs.iter().enumerate() {
                    for &(m, n) in &pairs[pi_..] {
                        let lhs = self.l[i][j].commutator(&self.l[m][n]);
                        let rhs = comb(&[
                            (Self::i_int(delta(i, m)), &self.l[j][n]),
                            (Self::i_int(-delta(j, m)), &self.l[i][n]),
                            (Self::i_int(-delta(i, n)), &self.l[j][m]),
                            (Self::i_int(delta(j, n)), &self.l[i][m]),
                        ]);
                        t.record(format!("ij={i}{j} mn={m}{n}"), lhs.map(|l| &l - &rhs));
                    }
                }
            }
            Relation::HL => {
                for i in 0..5 {
                    for j in (i + 1)..5 {
                        t.record(format!("ij={i}{j}"), self.h.commutator(&self.l[i][j]));
                    }
                }
            }
            Relation::HM => {
                for i in 0..5 {
                    t.record(format!("i={i}"), self.h.commutator(&self.m[i]));
                }
            }
            Relation::LM => {
                for i in 0..5 {
                    for j in (i + 1)..5 {
                        for k in 0..5 {
                            let lhs = self.l[i][j].commutator(&self.m[k]);
                            let rhs = comb(&[
                                (Self::i_int(delta(i, k)), &self.m[j]),
                                (Self::i_int(-delta(j, k)), &self.m[i]),
                            ]);
                            t.record(format!("ij={i}{j} k={k}"), lhs.map(|l| &l - &rhs));
                        }
                    }
                }
            }
            Relation::MM | Relation::So51Cleared => {
                // m carries a factor sqrt(mu0), so [m_i, m_k] = mu0 [M_i, M_k].
                let mu0 = g(&self.units.mu0);
                for i in 0..5 {
                    for k in (i + 1)..5 {
                        let lhs = self.m[i].commutator(&self.m[k]);
                        let rhs = if relation == Relation::MM {
                            self.h.compose(&self.l[i][k]).map(|hl| hl.scale(&(&GaussRat::int(2) * &(&i1 * &mu0))))
                        } else {
                            let two_h = self.h.scale(&GaussRat::int(2));
                            let minus_il = self.l[i][k].scale(&-&i1);
                            two_h.compose(&minus_il).map(|x| x.scale(&-&mu0))
                        };
                        let res = lhs.and_then(|l| rhs.map(|r| &l + &r));
                        t.record(format!("i={i} k={k}"), res);
                    }
                }
            }
        }
        t.outcome
    }
}
