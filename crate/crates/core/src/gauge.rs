//! Yang monopole potentials on R^5, the 5x5 tau matrices and the field tensor
//! in exact form.

use hkit_algebra::isospin::epsilon;
use hkit_algebra::{Chart, GaussRat, Point5, Poly, Rational, ScalarExpr, ScalarSum};
use num_complex::Complex64;

use crate::error::CoreError;
use crate::report::CheckReport;

pub type Mat5 = [[GaussRat; 5]; 5];

fn zero5() -> Mat5 {
    std::array::from_fn(|_| std::array::from_fn(|_| GaussRat::ZERO))
}

fn pauli(a: usize) -> [[GaussRat; 2]; 2] {
    let (o, l, i) = (GaussRat::ZERO, GaussRat::ONE, GaussRat::I);
    match a {
        1 => [[o.clone(), l.clone()], [l, o]],
        2 => [[o.clone(), -&i], [i, o]],
        3 => [[l.clone(), o.clone()], [o, -&l]],
        _ => unreachable!(),
    }
}

fn place(m: &mut Mat5, row: usize, col: usize, block: &[[GaussRat; 2]; 2], k: &GaussRat) {
    for p in 0..2 {
        for q in 0..2 {
            m[row + p][col + q] = &block[p][q] * k;
        }
    }
}

/// The three antisymmetric 5x5 matrices tau^1, tau^2, tau^3 (index 0 is tau^1).
/// Rows and columns split as {0}, {1,2}, {3,4}.
pub fn tau() -> [Mat5; 3] {
    let half_i = GaussRat::new(Rational::ZERO, Rational::new(1, 2));
    let half = GaussRat::frac(1, 2);
    let mut t = [zero5(), zero5(), zero5()];
    place(&mut t[0], 1, 3, &pauli(1), &-&half_i);
    place(&mut t[0], 3, 1, &pauli(1), &half_i);
    place(&mut t[1], 1, 3, &pauli(3), &half_i);
    place(&mut t[1], 3, 1, &pauli(3), &-&half_i);
    place(&mut t[2], 1, 1, &pauli(2), &half);
    place(&mut t[2], 3, 3, &pauli(2), &half);
    t
}

pub fn mat_mul(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut out = zero5();
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                out[i][j] += &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

/// Signed coordinate numerators of the listed potentials, `(sign, variable)`.
const A_LIST: [[(i64, usize); 5]; 3] = [
    [(0, 0), (1, 4), (1, 3), (-1, 2), (-1, 1)],
    [(0, 0), (-1, 3), (1, 4), (1, 1), (-1, 2)],
    [(0, 0), (1, 2), (-1, 1), (1, 4), (-1, 3)],
];

const B_LIST: [[(i64, usize); 5]; 3] = [
    [(0, 0), (-1, 4), (1, 3), (-1, 2), (1, 1)],
    [(0, 0), (-1, 3), (-1, 4), (1, 1), (1, 2)],
    [(0, 0), (1, 2), (-1, 1), (-1, 4), (1, 3)],
];

/// Potentials A^a_j (chart Plus) or B^a_j (chart Minus), indexed `[a-1][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugePotential {
    pub chart: Chart,
    pub comps: [[ScalarExpr; 5]; 3],
}

impl GaugePotential {
    /// The potentials as listed, with denominator r (r + x0) or r (r - x0).
    pub fn listed(chart: Chart) -> GaugePotential {
        let table = match chart {
            Chart::Plus => &A_LIST,
            Chart::Minus => &B_LIST,
        };
        let comps = std::array::from_fn(|a| {
            std::array::from_fn(|j| {
                let (s, v) = table[a][j];
                let num = Poly::var(v).scale(&GaussRat::int(s));
                ScalarExpr::from_parts(chart, num, Poly::zero(), 1, 1)
            })
        });
        GaugePotential { chart, comps }
    }

    /// A^a_i = 2 i g tau^a_ij x_j / (r (r + x0)).
    pub fn from_tau(g: &Rational) -> GaugePotential {
        let t = tau();
        let pref = GaussRat::imag(g * &Rational::from_int(2));
        let comps = std::array::from_fn(|a| {
            std::array::from_fn(|i| {
                let num = (0..5).fold(Poly::zero(), |acc, j| acc.add(&Poly::var(j).scale(&(&pref * &t[a][i][j]))));
                ScalarExpr::from_parts(Chart::Plus, num, Poly::zero(), 1, 1)
            })
        });
        GaugePotential { chart: Chart::Plus, comps }
    }

    pub fn get(&self, a: usize, j: usize) -> &ScalarExpr {
        &self.comps[a - 1][j]
    }

    /// Numeric components at a point; fails on the chart's singular semiaxis.
    pub fn at(chart: Chart, p: &Point5) -> Result<[[f64; 5]; 3], CoreError> {
        let r = p.radius();
        let axis = r + chart.sign() as f64 * p.x[0];
        if r == 0.0 || axis.abs() <= 1e-300 {
            return Err(CoreError::SingularAxis);
        }
        let table = match chart {
            Chart::Plus => &A_LIST,
            Chart::Minus => &B_LIST,
        };
        Ok(std::array::from_fn(|a| {
            std::array::from_fn(|j| {
                let (s, v) = table[a][j];
                s as f64 * p.x[v] / (r * axis)
            })
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSource {
    Definition,
    ClosedForm,
    Tabulated,
}

impl FieldSource {
    pub fn name(self) -> &'static str {
        match self {
            FieldSource::Definition => "definition",
            FieldSource::ClosedForm => "closed-form",
            FieldSource::Tabulated => "table",
        }
    }
}

/// Cartesian field tensor F^a_ij, indexed `[a-1][i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldTensor {
    pub chart: Chart,
    pub comps: Vec<[[ScalarExpr; 5]; 5]>,
}

impl FieldTensor {
    pub fn get(&self, a: usize, i: usize, j: usize) -> &ScalarExpr {
        &self.comps[a - 1][i][j]
    }

    pub fn build(source: FieldSource, chart: Chart) -> Result<FieldTensor, CoreError> {
        match (source, chart) {
            (FieldSource::Definition, _) => Ok(FieldTensor::from_potential(&GaugePotential::listed(chart))),
            (FieldSource::ClosedForm, Chart::Plus) => Ok(FieldTensor::closed_form()),
            (FieldSource::Tabulated, Chart::Plus) => Ok(FieldTensor::tabulated()),
            _ => Err(CoreError::Unsupported(format!("{} source exists only in chart A", source.name()))),
        }
    }

    /// F^a_ij = d_i A^a_j - d_j A^a_i + eps_abc A^b_i A^c_j.
    pub fn from_potential(pot: &GaugePotential) -> FieldTensor {
        let d: Vec<Vec<Vec<ScalarExpr>>> = (0..3)
            .map(|a| (0..5).map(|i| (0..5).map(|j| pot.comps[a][j].differentiate(i)).collect()).collect())
            .collect();
        let comps = (1..=3)
            .map(|a| {
                std::array::from_fn(|i| {
                    std::array::from_fn(|j| {
                        let mut f = &d[a - 1][i][j] - &d[a - 1][j][i];
                        for b in 1..=3 {
                            for c in 1..=3 {
                                let e = epsilon(a, b, c);
                                if e != 0 {
                                    let t = (pot.get(b, i) * pot.get(c, j)).scale(&GaussRat::int(e));
                                    f = &f + &t;
                                }
                            }
                        }
                        f
                    })
                })
            })
            .collect();
        FieldTensor { chart: pot.chart, comps }
    }

    /// F^a_ij = [(x_j + r delta_j0) A^a_i - (x_i + r delta_i0) A^a_j - 2 i tau^a_ij] / r^2.
    pub fn closed_form() -> FieldTensor {
        let pot = GaugePotential::listed(Chart::Plus);
        let t = tau();
        let shifted = |k: usize| if k == 0 { &ScalarExpr::x(0) + &ScalarExpr::r() } else { ScalarExpr::x(k) };
        let inv_r2 = ScalarExpr::inv_r(2);
        let comps = (1..=3)
            .map(|a| {
                std::array::from_fn(|i| {
                    std::array::from_fn(|j| {
                        let tau_term = ScalarExpr::constant(&GaussRat::int(-2) * &(&GaussRat::I * &t[a - 1][i][j]));
                        let inner = &(&(&shifted(j) * pot.get(a, i)) - &(&shifted(i) * pot.get(a, j))) + &tau_term;
                        &inner * &inv_r2
                    })
                })
            })
            .collect();
        FieldTensor { chart: Chart::Plus, comps }
    }

    /// The Cartesian components exactly as tabulated (upper triangle, antisymmetrized).
    pub fn tabulated() -> FieldTensor {
        let mut comps: Vec<[[ScalarExpr; 5]; 5]> = (0..3).map(|_| Default::default()).collect();
        for entry in TABULATED_CARTESIAN {
            let e = entry.expr();
            comps[entry.a - 1][entry.j][entry.i] = -&e;
            comps[entry.a - 1][entry.i][entry.j] = e;
        }
        FieldTensor { chart: Chart::Plus, comps }
    }

    /// Numeric value of every component at a point.
    pub fn eval(&self, p: &Point5) -> Result<Vec<[[Complex64; 5]; 5]>, CoreError> {
        let mut out = Vec::with_capacity(3);
        for a in 0..3 {
            let mut m = [[Complex64::default(); 5]; 5];
            for i in 0..5 {
                for j in 0..5 {
                    m[i][j] = self.comps[a][i][j].evaluate(p).map_err(|_| CoreError::SingularAxis)?;
                }
            }
            out.push(m);
        }
        Ok(out)
    }
}

/// Shape of a tabulated Cartesian entry.
#[derive(Clone, Copy, Debug)]
pub enum TableForm {
    /// `s * x_v / r^3`
    Axial(i64, usize),
    /// `(s1 x_a x_b + s2 x_c x_d) / (r^3 (r + x0))`
    Mixed([(i64, usize, usize); 2]),
    /// `s / r^2 * [(x_a^2 + x_b^2) / (r (r + x0)) - 1]`
    Diagonal(i64, usize, usize),
}

#[derive(Clone, Copy, Debug)]
pub struct TableEntry {
    pub a: usize,
    pub i: usize,
    pub j: usize,
    pub form: TableForm,
}

impl TableEntry {
    pub fn expr(&self) -> ScalarExpr {
        let sq = |v: usize| Poly::var(v).mul(&Poly::var(v));
        match self.form {
            TableForm::Axial(s, v) => {
                ScalarExpr::from_parts(Chart::Plus, Poly::var(v).scale(&GaussRat::int(s)), Poly::zero(), 3, 0)
            }
            TableForm::Mixed(terms) => {
                let num = terms.iter().fold(Poly::zero(), |acc, &(s, p, q)| {
                    acc.add(&Poly::var(p).mul(&Poly::var(q)).scale(&GaussRat::int(s)))
                });
                ScalarExpr::from_parts(Chart::Plus, num, Poly::zero(), 3, 1)
            }
            TableForm::Diagonal(s, p, q) => {
                let frac = ScalarExpr::from_parts(Chart::Plus, sq(p).add(&sq(q)), Poly::zero(), 1, 1);
                (&(&frac - &ScalarExpr::one()) * &ScalarExpr::inv_r(2)).scale(&GaussRat::int(s))
            }
        }
    }

    pub fn label(&self) -> String {
        format!("F^{}_{}{}", self.a, self.i, self.j)
    }
}

macro_rules! ax {
    ($a:expr, $i:expr, $j:expr, $s:expr, $v:expr) => {
        TableEntry { a: $a, i: $i, j: $j, form: TableForm::Axial($s, $v) }
    };
}
macro_rules! mx {
    ($a:expr, $i:expr, $j:expr, $s1:expr, $p1:expr, $q1:expr, $s2:expr, $p2:expr, $q2:expr) => {
        TableEntry { a: $a, i: $i, j: $j, form: TableForm::Mixed([($s1, $p1, $q1), ($s2, $p2, $q2)]) }
    };
}
macro_rules! dg {
    ($a:expr, $i:expr, $j:expr, $s:expr, $p:expr, $q:expr) => {
        TableEntry { a: $a, i: $i, j: $j, form: TableForm::Diagonal($s, $p, $q) }
    };
}

/// Tabulated Cartesian components, transcribed verbatim including signs.
pub const TABULATED_CARTESIAN: [TableEntry; 30] = [
    ax!(1, 0, 1, -1, 4),
    ax!(1, 0, 2, -1, 3),
    ax!(1, 0, 3, 1, 2),
    ax!(1, 0, 4, 1, 1),
    mx!(1, 1, 2, 1, 2, 4, -1, 1, 3),
    mx!(1, 1, 3, 1, 1, 2, 1, 3, 4),
    dg!(1, 1, 4, 1, 1, 4),
    dg!(1, 2, 3, 1, 2, 3),
    mx!(1, 2, 4, 1, 1, 2, 1, 3, 4),
    mx!(1, 3, 4, -1, 1, 2, -1, 3, 4),
    ax!(2, 0, 1, -1, 3),
    ax!(2, 0, 2, 1, 4),
    ax!(2, 0, 3, -1, 1),
    ax!(2, 0, 4, 1, 2),
    mx!(2, 1, 2, -1, 1, 4, -1, 2, 3),
    dg!(2, 1, 3, -1, 1, 3),
    mx!(2, 1, 4, 1, 1, 2, -1, 3, 4),
    mx!(2, 2, 3, 1, 3, 4, -1, 1, 2),
    dg!(2, 2, 4, 1, 2, 4),
    mx!(2, 3, 4, 1, 1, 4, 1, 2, 3),
    ax!(3, 0, 1, -1, 2),
    ax!(3, 0, 2, 1, 1),
    ax!(3, 0, 3, -1, 4),
    ax!(3, 0, 4, 1, 3),
    dg!(3, 1, 2, 1, 1, 2),
    mx!(3, 1, 3, 1, 2, 3, -1, 1, 4),
    mx!(3, 1, 4, 1, 1, 3, 1, 2, 4),
    mx!(3, 2, 3, -1, 1, 3, -1, 2, 4),
    mx!(3, 2, 4, 1, 2, 3, -1, 1, 4),
    dg!(3, 3, 4, 1, 3, 4),
];

fn delta(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

fn gi(n: i64) -> GaussRat {
    GaussRat::int(n)
}

const SUITE: &str = "gauge";

/// Antisymmetry of every tau^a and [tau^a, tau^b] = i eps_abc tau^c.
pub fn tau_algebra_check() -> CheckReport {
    let t = tau();
    let mut failures = 0;
    for m in &t {
        for i in 0..5 {
            for j in 0..5 {
                if m[i][j] != -&m[j][i] {
                    failures += 1;
                }
            }
        }
    }
    for a in 1..=3 {
        for b in 1..=3 {
            let ab = mat_mul(&t[a - 1], &t[b - 1]);
            let ba = mat_mul(&t[b - 1], &t[a - 1]);
            for i in 0..5 {
                for j in 0..5 {
                    let mut rhs = GaussRat::ZERO;
                    for c in 1..=3 {
                        rhs += &(&(&GaussRat::I * &gi(epsilon(a, b, c))) * &t[c - 1][i][j]);
                    }
                    if &ab[i][j] - &ba[i][j] != rhs {
                        failures += 1;
                    }
                }
            }
        }
    }
    CheckReport::exact(SUITE, "tau antisymmetry and su(2) bracket", "tau^a_ij = -tau^a_ji, [tau^a, tau^b] = i eps_abc tau^c", failures, "")
}

/// 4 tau^a_ij tau^b_jk = delta_ab (delta_ik - delta_i0 delta_k0) + 2 i eps_abc tau^c_ik.
pub fn tau_product_check() -> CheckReport {
    let t = tau();
    let mut failures = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            let prod = mat_mul(&t[a - 1], &t[b - 1]);
            for i in 0..5 {
                for k in 0..5 {
                    let lhs = &gi(4) * &prod[i][k];
                    let mut rhs = gi(delta(a, b) * (delta(i, k) - delta(i, 0) * delta(k, 0)));
                    for c in 1..=3 {
                        rhs += &(&(&GaussRat::imag(Rational::from_int(2)) * &gi(epsilon(a, b, c))) * &t[c - 1][i][k]);
                    }
                    if lhs != rhs {
                        failures.push(format!("(a,b,i,k)=({a},{b},{i},{k})"));
                    }
                }
            }
        }
    }
    CheckReport::exact(
        SUITE,
        "tau product identity",
        "4 tau^a_ij tau^b_jk = delta_ab (delta_ik - delta_i0 delta_k0) + 2i eps_abc tau^c_ik",
        failures.len(),
        failures.join(" "),
    )
}

/// eps_abc tau^b_ij tau^c_km = (i/2)[(d_i0 d_k0 - d_ik) tau^a_jm - (d_i0 d_m0 - d_im) tau^a_jk
///   + (d_j0 d_m0 - d_jm) tau^a_ik - (d_j0 d_k0 - d_jk) tau^a_im].
pub fn tau_contraction_check() -> CheckReport {
    let t = tau();
    let p = |i: usize, k: usize| gi(delta(i, 0) * delta(k, 0) - delta(i, k));
    let half_i = GaussRat::imag(Rational::new(1, 2));
    let mut failures = 0;
    let mut first = String::new();
    for a in 1..=3 {
        let ta = &t[a - 1];
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    for m in 0..5 {
                        let mut lhs = GaussRat::ZERO;
                        for b in 1..=3 {
                            for c in 1..=3 {
                                let e = epsilon(a, b, c);
                                if e != 0 {
                                    lhs += &(&gi(e) * &(&t[b - 1][i][j] * &t[c - 1][k][m]));
                                }
                            }
                        }
                        let bracket = &(&(&p(i, k) * &ta[j][m]) - &(&p(i, m) * &ta[j][k]))
                            + &(&(&p(j, m) * &ta[i][k]) - &(&p(j, k) * &ta[i][m]));
                        if lhs != &half_i * &bracket {
                            if failures == 0 {
                                first = format!("first failure at (a,i,j,k,m)=({a},{i},{j},{k},{m})");
                            }
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    CheckReport::exact(SUITE, "tau contraction identity", "eps_abc tau^b_ij tau^c_km = (i/2)[...]", failures, first)
}

fn potential_mismatches(a: &GaugePotential, b: &GaugePotential) -> usize {
    (0..3).map(|k| (0..5).filter(|&j| !a.comps[k][j].equals(&b.comps[k][j])).count()).sum()
}

/// Coupling g for which 2 i g tau^a_ij x_j / (r (r + x0)) reproduces the listed A.
pub fn tau_coupling() -> Result<Rational, CoreError> {
    let unit = GaugePotential::from_tau(&Rational::ONE);
    let listed = GaugePotential::listed(Chart::Plus);
    let p = hkit_algebra::ExactPoint5::from_ints([0, 0, 0, 0, 1])?;
    let from_unit = unit.get(1, 1).evaluate_exact(&p)?;
    let target = listed.get(1, 1).evaluate_exact(&p)?;
    let ratio = &target * &from_unit.recip();
    if !ratio.im.is_zero() {
        return Err(CoreError::Unsupported("coupling is not real".into()));
    }
    Ok(ratio.re)
}

pub fn tau_potential_check() -> CheckReport {
    let (g, failures) = match tau_coupling() {
        Ok(g) => {
            let failures = potential_mismatches(&GaugePotential::from_tau(&g), &GaugePotential::listed(Chart::Plus));
            (g.to_string(), failures)
        }
        Err(e) => (e.to_string(), 15),
    };
    CheckReport::exact(
        SUITE,
        "potential from tau matrices",
        "A^a_i = 2ig tau^a_ij x_j / (r(r+x0))",
        failures,
        format!("g = {g}"),
    )
}

/// A^a_j A^b_j = (1/r^2)(r -+ x0)/(r +- x0) delta_ab and A^a_j x_j = 0 in either chart.
pub fn orthogonality_check(chart: Chart) -> CheckReport {
    let pot = GaugePotential::listed(chart);
    let s = chart.sign();
    let ratio = ScalarExpr::from_parts(chart, Poly::var(0).scale(&gi(-s)), Poly::one(), 2, 1);
    let mut failures = Vec::new();
    for a in 1..=3 {
        let dot_x = (0..5).fold(ScalarExpr::zero(), |acc, j| &acc + &(pot.get(a, j) * &ScalarExpr::x(j)));
        if !dot_x.is_zero() {
            failures.push(format!("A^{a}.x"));
        }
        for b in 1..=3 {
            let dot = (0..5).fold(ScalarExpr::zero(), |acc, j| &acc + &(pot.get(a, j) * pot.get(b, j)));
            let expected = if a == b { ratio.clone() } else { ScalarExpr::zero() };
            if !dot.equals(&expected) {
                failures.push(format!("A^{a}.A^{b}"));
            }
        }
    }
    let (name, anchor) = match chart {
        Chart::Plus => ("A orthogonality", "A^a_j A^b_j = (r-x0)/(r^2 (r+x0)) delta_ab, A^a.x = 0"),
        Chart::Minus => ("B orthogonality", "B^a_j B^b_j = (r+x0)/(r^2 (r-x0)) delta_ab, B^a.x = 0"),
    };
    CheckReport::exact(SUITE, name, anchor, failures.len(), failures.join(" "))
}

const FIELD: &str = "field";

pub fn antisymmetry_check(f: &FieldTensor, source: FieldSource) -> CheckReport {
    let mut failures = 0;
    for a in 1..=3 {
        for i in 0..5 {
            for j in 0..5 {
                if !f.get(a, i, j).equals(&-f.get(a, j, i)) {
                    failures += 1;
                }
            }
        }
    }
    CheckReport::exact(FIELD, &format!("{} antisymmetry", source.name()), "F^a_ij = -F^a_ji", failures, "")
}

/// sum_ij F^a_ij F^b_ij = 4/r^4 delta_ab.
pub fn field_square_check(f: &FieldTensor) -> CheckReport {
    let four = ScalarExpr::inv_r(4).scale(&gi(4));
    let mut failures = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            let mut acc = ScalarSum::new();
            for i in 0..5 {
                for j in 0..5 {
                    acc.push_product(f.get(a, i, j), f.get(b, i, j), &GaussRat::ONE);
                }
            }
            let expected = if a == b { four.clone() } else { ScalarExpr::zero() };
            let diff = &acc.finish() - &expected;
            if !diff.is_zero() {
                failures.push(format!("(a,b)=({a},{b}): {}", diff.render()));
            }
        }
    }
    CheckReport::exact(FIELD, "field square identity", "F^a_ij F^b_ij = 4/r^4 delta_ab", failures.len(), failures.join("; "))
}

/// F^a_ij F^b_jk = (x_i x_k - r^2 delta_ik) delta_ab / r^6 + eps_abc F^c_ik / r^2.
pub fn field_product_check(f: &FieldTensor) -> CheckReport {
    let inv6 = ScalarExpr::inv_r(6);
    let inv2 = ScalarExpr::inv_r(2);
    let mut failures = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for i in 0..5 {
                for k in 0..5 {
                    let mut acc = ScalarSum::new();
                    for j in 0..5 {
                        acc.push_product(f.get(a, i, j), f.get(b, j, k), &GaussRat::ONE);
                    }
                    let mut rhs = ScalarExpr::zero();
                    if a == b {
                        let mut q = &ScalarExpr::x(i) * &ScalarExpr::x(k);
                        if i == k {
                            q = &q - &(&ScalarExpr::r() * &ScalarExpr::r());
                        }
                        rhs = &q * &inv6;
                    }
                    for c in 1..=3 {
                        let e = epsilon(a, b, c);
                        if e != 0 {
                            rhs = &rhs + &(f.get(c, i, k) * &inv2).scale(&gi(e));
                        }
                    }
                    if !(&acc.finish() - &rhs).is_zero() {
                        failures.push(format!("({a},{b},{i},{k})"));
                    }
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        String::new()
    } else {
        format!("{} of 225 entries differ, e.g. {}", failures.len(), failures[..failures.len().min(6)].join(" "))
    };
    CheckReport::exact(FIELD, "field product identity", "F^a_ij F^b_jk = (x_i x_k - r^2 delta_ik) delta_ab / r^6 + eps_abc F^c_ik / r^2", failures.len(), detail)
}

/// Entrywise comparison of two tensors over the upper triangle.
pub fn compare_tensors(lhs: &FieldTensor, rhs: &FieldTensor) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=3 {
        for i in 0..5 {
            for j in i + 1..5 {
                if !lhs.get(a, i, j).equals(rhs.get(a, i, j)) {
                    out.push((a, i, j));
                }
            }
        }
    }
    out
}

pub fn closed_form_check(definition: &FieldTensor) -> CheckReport {
    let diff = compare_tensors(definition, &FieldTensor::closed_form());
    let detail = diff.iter().map(|(a, i, j)| format!("F^{a}_{i}{j}")).collect::<Vec<_>>().join(" ");
    CheckReport::exact(FIELD, "definition vs closed form", "F^a_ij = [(x_j + r d_j0) A^a_i - (x_i + r d_i0) A^a_j - 2i tau^a_ij] / r^2", diff.len(), detail)
}

/// One tabulated entry set against the derived value.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditEntry {
    pub label: String,
    pub tabulated: String,
    pub derived: String,
    pub agrees: bool,
    pub note: String,
}

/// Compares every tabulated Cartesian entry with the definition-built tensor.
/// Disagreeing entries are listed as printed, next to the derived value.
pub fn cartesian_audit(definition: &FieldTensor) -> Vec<AuditEntry> {
    TABULATED_CARTESIAN
        .iter()
        .map(|entry| {
            let table = entry.expr();
            let derived = definition.get(entry.a, entry.i, entry.j);
            let agrees = table.equals(derived);
            let note = if agrees {
                String::new()
            } else if table.equals(&-derived) {
                "sign differs".to_string()
            } else {
                "form differs".to_string()
            };
            AuditEntry { label: entry.label(), tabulated: table.render(), derived: derived.render(), agrees, note }
        })
        .collect()
}
