//! Named verification suites behind a runtime registry.

use std::f64::consts::PI;
use std::time::Instant;

use hkit_algebra::{Chart, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::casimir::{Casimir, CheckMode, EPSILON_ORIENTATION};
use crate::config::{ConfigError, SuiteConfig};
use crate::gauge::{self, FieldSource, FieldTensor};
use crate::gauge_numeric;
use crate::hyper::{self, Hyper, TABULATED_HYPER};
use crate::radial::{self, Coulomb, Modified, Oscillator};
use crate::report::{CheckReport, RunReport};
use crate::spectrum;
use crate::symmetry::{Relation, SymmetryOperators};
use crate::topology::{self, QuadratureSpec};
use crate::transforms::{self, h_matrix};

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport>;
}

/// Suites keyed by name, in registration order.
#[derive(Default)]
pub struct Registry {
    suites: Vec<Box<dyn Suite>>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    /// Every built-in suite.
    pub fn standard() -> Registry {
        let mut r = Registry::new();
        r.register(Box::new(EulerSuite));
        r.register(Box::new(GaugeSuite));
        r.register(Box::new(FieldSuite));
        r.register(Box::new(ChargeSuite));
        r.register(Box::new(AlgebraSuite));
        r.register(Box::new(CasimirSuite));
        r.register(Box::new(SpectrumSuite));
        r.register(Box::new(RadialSuite));
        r
    }

    /// Adds a suite, replacing any suite of the same name.
    pub fn register(&mut self, suite: Box<dyn Suite>) {
        match self.suites.iter().position(|s| s.name() == suite.name()) {
            Some(i) => self.suites[i] = suite,
            None => self.suites.push(suite),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    /// Resolves names (with `all`) to suites in registration order.
    pub fn select(&self, names: &[String]) -> Result<Vec<&dyn Suite>, ConfigError> {
        let mut wanted = vec![false; self.suites.len()];
        for name in names {
            if name == "all" {
                wanted.iter_mut().for_each(|w| *w = true);
                continue;
            }
            let i = self.suites.iter().position(|s| s.name() == name).ok_or_else(|| ConfigError::UnknownSuite(name.clone()))?;
            wanted[i] = true;
        }
        Ok(self.suites.iter().zip(wanted).filter(|(_, w)| *w).map(|(s, _)| s.as_ref()).collect())
    }

    /// Runs the configured suites on up to `jobs` threads.
    pub fn run(&self, cfg: &SuiteConfig, jobs: usize) -> Result<RunReport, ConfigError> {
        let selected = self.select(&cfg.suites)?;
        if let Some(name) = &cfg.relation {
            if Relation::parse(name).is_none() {
                return Err(ConfigError::BadValue { key: "relation".into(), value: name.clone() });
            }
        }
        let jobs = jobs.max(1);
        let mut rows = Vec::new();
        for chunk in selected.chunks(jobs) {
            let batch: Vec<Vec<CheckReport>> = std::thread::scope(|scope| {
                let handles: Vec<_> = chunk.iter().map(|s| scope.spawn(move || s.run(cfg))).collect();
                handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
            });
            rows.extend(batch.into_iter().flatten());
        }
        Ok(RunReport::new(cfg.seed, cfg.echo(), rows))
    }
}

fn rng_for(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-60..=60), rng.gen_range(1..=24))
}

fn exact_row(suite: &str, relation: &str, anchor: &str, failures: usize, detail: impl Into<String>) -> CheckReport {
    CheckReport::exact(suite, relation, anchor, failures, detail)
}

pub struct EulerSuite;

impl Suite for EulerSuite {
    fn name(&self) -> &'static str {
        "euler"
    }

    fn description(&self) -> &'static str {
        "bilinear maps with |x| = |u|^2, fiber angles, hyperspherical coordinates"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let s = self.name();
        let mut rows = Vec::new();
        for d in [2usize, 4, 8] {
            let h = h_matrix(d).expect("supported dimension");
            let defects = h.gram_defects();
            rows.push(exact_row(s, &format!("H H^T = u^2 E, D = {d}"), "H(u;D) H^T(u;D) = u^2 E(D)", defects.len(), defects.iter().map(|(i, j, _)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")));
        }
        let ks_zero = h_matrix(4).unwrap().image_forms()[3].len();
        let h8_zero: usize = h_matrix(8).unwrap().image_forms()[5..].iter().map(|f| f.len()).sum();
        rows.push(exact_row(s, "vanishing rows of H(u;4) u and H(u;8) u", "x = H(u;D) u with trailing zeros", ks_zero + h8_zero, ""));

        let mut rng = rng_for(cfg, 1);
        let n = cfg.euler_samples;
        let (mut lc, mut ks, mut hz, mut hm) = (0, 0, 0, 0);
        let mut differs = 0;
        let h8 = h_matrix(8).unwrap();
        for _ in 0..n {
            let u2: [Rational; 2] = std::array::from_fn(|_| random_rational(&mut rng));
            lc += !transforms::euler_defect(&u2, &transforms::levi_civita_map(&u2)).is_zero() as usize;
            let u4: [Rational; 4] = std::array::from_fn(|_| random_rational(&mut rng));
            let (x, last) = transforms::kustaanheimo_stiefel_map(&u4);
            ks += (!transforms::euler_defect(&u4, &x).is_zero() || !last.is_zero()) as usize;
            let u8: [Rational; 8] = std::array::from_fn(|_| random_rational(&mut rng));
            let x = transforms::hurwitz_map(&u8);
            hz += !transforms::euler_defect(&u8, &x).is_zero() as usize;
            let xm = h8.apply(&u8);
            hm += !transforms::euler_defect(&u8, &xm[..5]).is_zero() as usize;
            differs += (xm[..5] != x[..]) as usize;
        }
        rows.push(exact_row(s, "Euler identity, D = 2", "|x| = |u|^2", lc, format!("{n} random rational points")));
        rows.push(exact_row(s, "Euler identity, D = 4", "|x| = |u|^2", ks, format!("{n} random rational points")));
        rows.push(exact_row(s, "Euler identity, D = 8 component formulas", "|x| = |u|^2", hz, format!("{n} random rational points")));
        rows.push(exact_row(
            s,
            "Euler identity, D = 8 matrix image",
            "|x| = |u|^2",
            hm,
            format!("{n} random rational points; matrix image differs from the component formulas at {differs} of them"),
        ));

        let tol = cfg.tolerance("round-trip");
        let mut rng = rng_for(cfg, 2);
        let mut worst_map: f64 = 0.0;
        let mut worst_angle: f64 = 0.0;
        for _ in 0..cfg.point_samples {
            let u: [f64; 8] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let phi = rng.gen_range(0.0..2.0 * PI);
            let v = transforms::fiber_rotate(&u, phi);
            let (x, y) = (transforms::hurwitz_map(&u), transforms::hurwitz_map(&v));
            worst_map = worst_map.max((0..5).map(|k| (x[k] - y[k]).abs()).fold(0.0, f64::max));
            if let (Ok(a), Ok(b)) = (transforms::body_angles(&u), transforms::body_angles(&v)) {
                let shift = (b.gamma - a.gamma - 2.0 * phi).rem_euclid(4.0 * PI);
                let dg = shift.min(4.0 * PI - shift);
                worst_angle = worst_angle.max(dg).max((b.alpha - a.alpha).abs()).max((b.beta - a.beta).abs());
            }
        }
        rows.push(CheckReport::numeric(s, "fiber rotation leaves x fixed", "x(u) invariant under the U(1) fiber action", worst_map, tol, format!("{} random points", cfg.point_samples)));
        rows.push(CheckReport::numeric(s, "fiber rotation shifts gamma_T only", "gamma_T -> gamma_T + 2 phi", worst_angle, tol, ""));

        let mut rng = rng_for(cfg, 3);
        let mut worst: f64 = 0.0;
        let mut out_of_range = 0;
        for _ in 0..cfg.euler_samples {
            let x: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
            match transforms::hyperspherical(&x) {
                Ok(h) => {
                    let a = h.angles;
                    if !(0.0..2.0 * PI).contains(&a.alpha) || !(0.0..=PI).contains(&a.beta) || !(0.0..4.0 * PI).contains(&a.gamma) || !(0.0..=PI).contains(&h.theta) {
                        out_of_range += 1;
                    }
                    let back = transforms::hyperspherical_inverse(&h);
                    worst = worst.max((0..5).map(|k| (back[k] - x[k]).abs()).fold(0.0, f64::max));
                }
                Err(_) => worst = f64::INFINITY,
            }
            let u: [f64; 8] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            if let Ok(a) = transforms::body_angles(&u) {
                if !(0.0..2.0 * PI).contains(&a.alpha) || !(0.0..=PI).contains(&a.beta) || !(0.0..4.0 * PI).contains(&a.gamma) {
                    out_of_range += 1;
                }
            }
        }
        rows.push(CheckReport::numeric(s, "hyperspherical round trip", "x -> (r, theta, alpha, beta, gamma) -> x", worst, tol, format!("{} random points", cfg.euler_samples)));
        rows.push(exact_row(s, "angle ranges", "alpha in [0,2pi), beta in [0,pi], gamma in [0,4pi)", out_of_range, ""));
        rows
    }
}

pub struct GaugeSuite;

impl Suite for GaugeSuite {
    fn name(&self) -> &'static str {
        "gauge"
    }

    fn description(&self) -> &'static str {
        "tau matrices, potentials in both charts, angular su(2) generators, chart transformation"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let mut rows = vec![
            gauge::tau_algebra_check(),
            gauge::tau_product_check(),
            gauge::tau_contraction_check(),
            gauge::tau_potential_check(),
            gauge::orthogonality_check(Chart::Plus),
            gauge::orthogonality_check(Chart::Minus),
        ];
        let mut trig = gauge_numeric::su2_trig_check(50, cfg.seed);
        let printed = trig.pop().expect("two variants").expect_failure();
        rows.extend(trig);
        rows.push(printed);
        rows.push(gauge_numeric::gauge_transform_check(cfg.point_samples, cfg.seed));
        rows
    }
}

pub struct FieldSuite;

/// Random angular point with theta and beta kept away from the poles.
pub fn random_hyper(rng: &mut ChaCha8Rng) -> Hyper {
    [
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.25..PI - 0.25),
        rng.gen_range(0.25..PI - 0.25),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..4.0 * PI),
    ]
}

/// Tabulated hyperspherical entries compared with the Jacobian-transformed tensor.
pub fn hyperspherical_audit(points: &[Hyper], tol: f64) -> Vec<(String, &'static str, f64)> {
    let fields: Vec<_> = points.iter().map(|h| hyper::field_by_jacobian(h).expect("regular point")).collect();
    TABULATED_HYPER
        .iter()
        .map(|e| {
            let worst = points.iter().zip(&fields).map(|(h, f)| (e.eval(h) - f[e.a - 1][e.i][e.j]).abs()).fold(0.0, f64::max);
            (e.label(), e.text, if worst < tol { 0.0 } else { worst })
        })
        .collect()
}

impl Suite for FieldSuite {
    fn name(&self) -> &'static str {
        "field"
    }

    fn description(&self) -> &'static str {
        "field tensor from definition, closed form and tables; hyperspherical components; self-duality"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let s = self.name();
        let def = FieldTensor::build(FieldSource::Definition, Chart::Plus).expect("definition");
        let mut rows = vec![
            gauge::antisymmetry_check(&def, FieldSource::Definition),
            gauge::field_square_check(&def),
            gauge::field_product_check(&def),
            gauge::closed_form_check(&def),
        ];
        let audit = gauge::cartesian_audit(&def);
        let bad: Vec<_> = audit.iter().filter(|e| !e.agrees).collect();
        let mut row = exact_row(
            s,
            "Cartesian table audit",
            "tabulated F^a_ij vs definition",
            0,
            format!(
                "{} of {} entries agree exactly; disagreeing: {}",
                audit.len() - bad.len(),
                audit.len(),
                bad.iter().map(|e| format!("{} printed {} derived {} ({})", e.label, e.tabulated, e.derived, e.note)).collect::<Vec<_>>().join("; ")
            ),
        );
        row.residual = bad.len() as f64;
        rows.push(row);

        let mut rng = rng_for(cfg, 4);
        let points: Vec<Hyper> = (0..cfg.point_samples).map(|_| random_hyper(&mut rng)).collect();
        let tol = cfg.tolerance("hyperspherical");
        let mut radial_row: f64 = 0.0;
        let mut routes: f64 = 0.0;
        for h in &points {
            let a = hyper::field_by_jacobian(h).expect("regular point");
            let b = hyper::field_by_pullback(h).expect("regular point");
            radial_row = radial_row.max(hyper::radial_row(&a)).max(hyper::radial_row(&b));
            routes = routes.max(hyper::max_abs_diff(&a, &b));
        }
        rows.push(CheckReport::numeric(s, "hyperspherical F_rk vanishes", "F^a_rk = 0", radial_row, cfg.tolerance("round-trip"), format!("{} random points, both routes", points.len())));
        rows.push(CheckReport::numeric(s, "Jacobian transform vs pulled-back potential", "Fbar_ik = (dx_m/dxbar_i)(dx_n/dxbar_k) F_mn", routes, tol, format!("{} random points", points.len())));

        let audit = hyperspherical_audit(&points, tol);
        let bad: Vec<_> = audit.iter().filter(|(_, _, d)| *d > 0.0).collect();
        let mut row = exact_row(
            s,
            "hyperspherical table audit",
            "tabulated F^a in (theta, beta, alpha, gamma) vs transformed tensor",
            0,
            format!(
                "{} of {} entries agree within {tol:e}{}",
                audit.len() - bad.len(),
                audit.len(),
                bad.iter().map(|(l, t, d)| format!("; {l} printed {t} off by {d:e}")).collect::<String>()
            ),
        );
        row.mode = crate::report::Mode::Numeric;
        row.residual = bad.len() as f64;
        rows.push(row);

        let mut worst_measure: f64 = 0.0;
        for h in &points {
            let g = hyper::induced_metric(h).determinant().sqrt();
            worst_measure = worst_measure.max((g - hyper::surface_measure(h)).abs() / hyper::surface_measure(h));
        }
        rows.push(CheckReport::numeric(s, "surface element", "dS = (r^4/8) sin^3(theta) sin(beta)", worst_measure, cfg.tolerance("round-trip"), "relative to sqrt(det g)"));

        match hyper::calibrate_orientation() {
            Ok(o) => {
                let dual_points = &points[..points.len().min(50)];
                let mut same: f64 = 0.0;
                let mut opposite: f64 = f64::INFINITY;
                for h in dual_points {
                    let f = hyper::field_by_jacobian(h).expect("regular point");
                    same = same.max(hyper::duality_residual(h, &f, o).unwrap_or(f64::INFINITY));
                    opposite = opposite.min(hyper::duality_residual(h, &f, -o).unwrap_or(f64::INFINITY));
                }
                let tol = cfg.tolerance("self-duality");
                rows.push(CheckReport::numeric(s, "self-duality", "*F^{a mu nu} = F^{a mu nu}", same, tol, format!("{} random points, orientation {o:+} on (theta, beta, alpha, gamma)", dual_points.len())));
                rows.push(
                    CheckReport::numeric(s, "opposite orientation is anti-self-dual", "*F = -F under reversed orientation", opposite, tol, format!("smallest residual {opposite:e}"))
                        .expect_failure(),
                );
            }
            Err(e) => rows.push(CheckReport::numeric(s, "self-duality", "*F^{a mu nu} = F^{a mu nu}", f64::INFINITY, 0.0, e.to_string())),
        }
        rows
    }
}

pub struct ChargeSuite;

impl Suite for ChargeSuite {
    fn name(&self) -> &'static str {
        "charge"
    }

    fn description(&self) -> &'static str {
        "topological charge by quadrature over the angular four-sphere"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let s = self.name();
        let tol = cfg.tolerance("charge");
        let start = Instant::now();
        let result = topology::topological_charge(&cfg.nodes, cfg.radius);
        let elapsed = start.elapsed();
        let nodes = cfg.nodes.counts().map(|n| n.to_string()).join(",");
        let mut rows = Vec::new();
        match result {
            Ok(c) => {
                rows.push(CheckReport::numeric(s, "topological charge q", "q = 1", (c.q - 1.0).abs(), tol, format!("q = {:.15}, nodes {nodes}, {:.0} ms", c.q, elapsed.as_secs_f64() * 1e3)));
                let per = c.q_per_component.iter().map(|q| (q - 1.0 / 3.0).abs()).fold(0.0, f64::max);
                rows.push(CheckReport::numeric(s, "charge per component", "q^a = 1/3", per, tol, format!("{:?}", c.q_per_component)));
                let sum = (c.q_per_component.iter().sum::<f64>() - c.q).abs();
                rows.push(CheckReport::numeric(s, "components sum to q", "sum_a q^a = q", sum, tol, ""));
                rows.push(CheckReport::numeric(s, "node doubling", "q stable under doubled nodes", c.estimated_error, cfg.tolerance("charge-convergence"), ""));
                let other = topology::charge_at(&cfg.nodes, cfg.radius * 7.0 / 3.0, hyper::calibrate_orientation().unwrap_or(1.0)).map(|v| v.iter().sum::<f64>());
                let diff = other.map(|q| (q - c.q).abs()).unwrap_or(f64::INFINITY);
                rows.push(CheckReport::numeric(s, "radius independence", "q(r) = q(7r/3)", diff, cfg.tolerance("radius-independence"), ""));
            }
            Err(e) => rows.push(CheckReport::numeric(s, "topological charge q", "q = 1", f64::INFINITY, tol, e.to_string())),
        }
        let mut rng = rng_for(cfg, 5);
        let mut worst_total: f64 = 0.0;
        let mut worst_each: f64 = 0.0;
        let o = hyper::calibrate_orientation().unwrap_or(1.0);
        for _ in 0..cfg.point_samples {
            let h = random_hyper(&mut rng);
            match hyper::charge_density(&h, o) {
                Ok(d) => {
                    let r4 = h[0].powi(4);
                    worst_total = worst_total.max((d.iter().sum::<f64>() * r4 - 12.0).abs());
                    worst_each = worst_each.max(d.iter().map(|v| (v * r4 - 4.0).abs()).fold(0.0, f64::max));
                }
                Err(_) => worst_total = f64::INFINITY,
            }
        }
        rows.push(CheckReport::numeric(s, "charge density times r^4", "sum_a *F^a F^a r^4 = 12", worst_total, tol, format!("{} random points", cfg.point_samples)));
        rows.push(CheckReport::numeric(s, "charge density per component times r^4", "*F^a F^a r^4 = 4", worst_each, tol, ""));
        rows
    }
}

pub struct AlgebraSuite;

impl Suite for AlgebraSuite {
    fn name(&self) -> &'static str {
        "algebra"
    }

    fn description(&self) -> &'static str {
        "commutation relations of pi, L, M and H as exact operator identities"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let ops = SymmetryOperators::build(&cfg.units);
        let selected: Vec<Relation> = match cfg.relation.as_deref().and_then(Relation::parse) {
            Some(r) => vec![r],
            None => Relation::ALL.to_vec(),
        };
        selected
            .into_iter()
            .map(|rel| {
                let start = Instant::now();
                let out = ops.verify(rel);
                let mut detail = format!("{} index tuples, {:.0} ms", out.cases, start.elapsed().as_secs_f64() * 1e3);
                if let Some(f) = &out.first_failure {
                    detail += &format!("; first failure {f}");
                }
                exact_row(self.name(), rel.name(), rel.formula(), out.failures, detail)
            })
            .collect()
    }
}

pub struct CasimirSuite;

impl Suite for CasimirSuite {
    fn name(&self) -> &'static str {
        "casimir"
    }

    fn description(&self) -> &'static str {
        "SO(6) Casimir identities cleared of inverse powers of H"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let s = self.name();
        let ops = SymmetryOperators::build(&cfg.units);
        let mut rows: Vec<CheckReport> = Casimir::ALL
            .iter()
            .map(|&c| {
                let out = ops.check_casimir(c, cfg.term_budget, cfg.seed, (cfg.casimir_functions, cfg.casimir_points));
                let mut detail = out.note.clone();
                if c == Casimir::C3 {
                    detail = format!("eps orientation {EPSILON_ORIENTATION:+}");
                }
                let mut row = match out.mode {
                    CheckMode::Exact => exact_row(s, c.name(), c.formula(), if out.passed { 0 } else { out.residual.max(1.0) as usize }, detail),
                    CheckMode::Numeric { .. } => CheckReport::numeric(s, c.name(), c.formula(), out.residual, cfg.tolerance("casimir-numeric"), detail),
                };
                row.pass = row.pass && out.passed;
                row
            })
            .collect();
        let control = ops.c4_numeric_shifted(cfg.seed, 1, 1, 1.0);
        rows.push(CheckReport::numeric(s, "C4 with a perturbed coefficient", "-12 X^2 T^2 replaced by -11 X^2 T^2", control.residual, cfg.tolerance("casimir-numeric"), "").expect_failure());
        rows
    }
}

pub struct SpectrumSuite;

fn half(n: i64) -> Rational {
    Rational::new(n, 2)
}

impl Suite for SpectrumSuite {
    fn name(&self) -> &'static str {
        "spectrum"
    }

    fn description(&self) -> &'static str {
        "Casimir eigenvalues, constraints on the labels, energy levels and the duality closure"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let s = self.name();
        let q = Rational::from_int;
        let mut rows = Vec::new();

        let mut bad = 0;
        let z = spectrum::casimir_eigenvalues(&q(0), &q(0), &q(0));
        bad += !matches!(&z, Ok(c) if c.c2.is_zero() && c.c3.is_zero() && c.c4.is_zero()) as usize;
        let e = spectrum::casimir_eigenvalues(&q(1), &q(1), &q(1));
        bad += !matches!(&e, Ok(c) if c.c2 == q(9) && c.c3 == q(288) && c.c4 == q(63)) as usize;
        bad += (spectrum::casimir_eigenvalues(&q(1), &q(0), &q(1)) != Err(crate::CoreError::OrderingViolation)) as usize;
        rows.push(exact_row(s, "Casimir eigenvalue examples", "C2 = mu1(mu1+4) + mu2(mu2+2) + mu3^2, C3 = 48(mu1+2)(mu2+1)mu3", bad, ""));

        let mut bad = Vec::new();
        let mut shift_bad = 0;
        let mut c4_bad = 0;
        let mut lhs15_bad = 0;
        for twice_t in 0..=10 {
            let t = half(twice_t);
            let c = spectrum::solve_constraints(&t).expect("valid isospin");
            if c.solutions != vec![(t.clone(), t.clone())] || !spectrum::constraint_product(&t, &t).is_zero() {
                bad.push(t.to_string());
            }
            let tt = &t * &(&t + &q(1));
            let b = &t * &(&t + &q(2));
            let lhs15 = &(&(&b * &b) + &(&(&t * &t) * &(&t * &t))) - &(&q(2) * &(&t * &t));
            lhs15_bad += (lhs15 != &(&q(2) * &tt) * &tt) as usize;
            for n in (twice_t..=twice_t + 20).step_by(2) {
                let mu1 = half(n);
                let ev = spectrum::casimir_eigenvalues(&mu1, &t, &t).expect("ordered");
                shift_bad += (&ev.c2 - &(&q(2) * &tt) != &mu1 * &(&mu1 + &q(4))) as usize;
                c4_bad += (spectrum::c4_from_c2(&ev.c2, &t) != ev.c4) as usize;
            }
        }
        rows.push(exact_row(s, "constraints force mu2 = mu3 = T", "T(T+1) = (mu2+1) mu3 with mu3 <= mu2", bad.len(), format!("T = 0, 1/2, ..., 5{}", if bad.is_empty() { String::new() } else { format!("; failing {}", bad.join(",")) })));
        rows.push(exact_row(s, "quartic constraint at mu2 = mu3 = T", "mu2^2(mu2+2)^2 + mu3^4 - 2 mu3^2 = 2T^2(T+1)^2", lhs15_bad, ""));
        rows.push(exact_row(s, "C2 shifted by isospin", "C2 - 2T(T+1) = mu1(mu1+4)", shift_bad, ""));
        rows.push(exact_row(s, "C4 through C2 and T", "C4 = C2^2 + 6C2 - 4C2 T^2 - 12T^2 + 6T^4 on eigenvalues", c4_bad, ""));

        let mut bad = 0;
        let mut monotone = 0;
        let mut levels_seen = 0;
        for twice_t in 0..=10 {
            let t = half(twice_t);
            let levels = spectrum::energy_levels(&t, 12, &cfg.units).expect("valid isospin");
            for (k, lv) in levels.iter().enumerate() {
                levels_seen += 1;
                bad += (spectrum::energy_from_c2(&lv.casimirs.c2, &t, &cfg.units) != lv.energy) as usize;
                bad += (lv.n != twice_t as u64 + 2 * k as u64) as usize;
                monotone += (lv.energy.signum() >= 0) as usize;
                if k > 0 {
                    monotone += (lv.energy <= levels[k - 1].energy) as usize;
                }
            }
        }
        bad += spectrum::level(0, &q(1), &cfg.units).is_ok() as usize;
        rows.push(exact_row(s, "energy levels from C2", "eps = -mu0 e^4 / (2 hbar^2 (N/2 + 2)^2), N/2 = T, T+1, ...", bad, format!("{levels_seen} levels")));
        rows.push(exact_row(s, "levels negative and increasing", "eps_N < eps_{N+2} < 0", monotone, ""));

        let mut bad = Vec::new();
        for omega in [q(1), half(3)] {
            for n in 0..=40u64 {
                if !spectrum::duality_closure(n, &omega, &cfg.units).holds() {
                    bad.push(format!("N={n} omega={omega}"));
                }
            }
        }
        rows.push(exact_row(s, "duality closure", "E = hbar omega (N+4), e^2 = E/4 gives eps = -mu0 omega^2/8", bad.len(), format!("N = 0..40, omega in {{1, 3/2}}{}", bad.join(" "))));
        rows
    }
}

pub struct RadialSuite;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

impl Suite for RadialSuite {
    fn name(&self) -> &'static str {
        "radial"
    }

    fn description(&self) -> &'static str {
        "oscillator and Coulomb radial eigenproblems and the map r = u^2"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let s = self.name();
        let tol = cfg.tolerance("radial-eigenvalue");
        let sub_tol = cfg.tolerance("radial-substitution");
        let n = cfg.grid_points;
        let mut rows = Vec::new();
        let levels = 3;
        for l in [0u32, 2] {
            let osc = Oscillator::new(8, l, 1.0).expect("valid oscillator");
            let res = match osc.solve(levels, n) {
                Ok(r) => r,
                Err(e) => {
                    rows.push(CheckReport::numeric(s, &format!("oscillator D = 8, L = {l}"), "E = hbar omega (N + 4)", f64::INFINITY, tol, e.to_string()));
                    continue;
                }
            };
            let worst = (0..levels).map(|k| rel(res.eigenvalues[k], osc.exact_level(k))).fold(0.0, f64::max);
            rows.push(CheckReport::numeric(s, &format!("oscillator D = 8, L = {l}"), "E = hbar omega (N + 4)", worst, tol, format!("{:?}", res.eigenvalues)));

            let mut worst: f64 = 0.0;
            for k in 0..levels {
                let dual = radial::duality_map(&osc, res.eigenvalues[k]);
                let coul = Coulomb::new(dual.dim, dual.l, dual.e2).and_then(|c| c.solve(k + 1, n));
                worst = worst.max(match coul {
                    Ok(c) => rel(c.eigenvalues[k], dual.epsilon),
                    Err(_) => f64::INFINITY,
                });
            }
            rows.push(CheckReport::numeric(s, &format!("dual Coulomb d = 5, l = {}", l as f64 / 2.0), "eps = -m omega^2/8 at e^2 = E/4", worst, tol, format!("{levels} levels")));

            let dual = radial::duality_map(&osc, res.eigenvalues[0]);
            let good = radial::substitution_residual(&osc, &res, 0, dual.epsilon, dual.e2).unwrap_or(f64::INFINITY);
            rows.push(CheckReport::numeric(s, &format!("substitution r = u^2, L = {l}"), "oscillator eigenfunction solves the Coulomb equation", good, sub_tol, ""));
            if l == 0 {
                let bad = radial::substitution_residual(&osc, &res, 0, 1.1 * dual.epsilon, dual.e2).unwrap_or(f64::INFINITY);
                rows.push(CheckReport::numeric(s, "substitution with eps off by 10%", "wrong eps must not solve the Coulomb equation", bad, sub_tol, "").expect_failure());
            }
        }

        for (d, l, expected) in [(5.0, 0.0, -1.0 / 8.0), (5.0, 0.5, -2.0 / 25.0), (3.0, 0.0, -0.5)] {
            let worst = Coulomb::new(d, l, 1.0).and_then(|c| c.solve(3, n)).map(|r| {
                let c = Coulomb::new(d, l, 1.0).unwrap();
                (0..3).map(|k| rel(r.eigenvalues[k], c.exact_level(k))).fold(0.0, f64::max).max(rel(r.eigenvalues[0], expected))
            });
            rows.push(CheckReport::numeric(
                s,
                &format!("Coulomb d = {d}, l = {l}"),
                "eps = -m e^4 / (2 hbar^2 (n_r + l + (d-1)/2)^2)",
                worst.clone().unwrap_or(f64::INFINITY),
                tol,
                worst.err().map(|e| e.to_string()).unwrap_or_default(),
            ));
        }

        let osc = Oscillator::new(8, 0, 1.0).expect("valid oscillator");
        let order = radial::convergence_order(&osc, 511).unwrap_or(f64::NAN);
        let mut row = CheckReport::numeric(s, "second-order convergence", "error ~ h^2", (order - 2.0).abs(), 0.2, format!("observed order {order:.4}"));
        row.pass = (1.8..=2.2).contains(&order);
        rows.push(row);

        let model = Modified { dim: 8, l: 0, coeffs: vec![0.5, 0.5, 0.05], mass: 1.0, hbar: 1.0 };
        let worst = model.solve(1, n, 10.0).and_then(|r| {
            let ansatz = radial::modified_ansatz(model.coeffs[0], model.coeffs[1], r.eigenvalues[0]);
            model.solve_dual(ansatz.e2, 1, n, 80.0).map(|d| rel(d.eigenvalues[0], ansatz.epsilon))
        });
        rows.push(CheckReport::numeric(
            s,
            "modified potential duality",
            "eps = -c1/4, e^2 = (E - c0)/4",
            worst.clone().unwrap_or(f64::INFINITY),
            tol,
            format!("V = 0.5 + 0.5 u^2 + 0.05 u^4{}", worst.err().map(|e| format!("; {e}")).unwrap_or_default()),
        ));
        rows
    }
}

/// Node spec used by the acceptance criteria.
pub fn reference_nodes() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_selection() {
        let r = Registry::standard();
        assert_eq!(r.names(), vec!["euler", "gauge", "field", "charge", "algebra", "casimir", "spectrum", "radial"]);
        assert!(matches!(r.select(&["foo".to_string()]), Err(ConfigError::UnknownSuite(_))));
        assert_eq!(r.select(&["all".to_string()]).unwrap().len(), 8);
        assert_eq!(r.select(&["radial".to_string(), "euler".to_string()]).unwrap().iter().map(|s| s.name()).collect::<Vec<_>>(), vec!["euler", "radial"]);
    }

    #[test]
    fn light_suites() {
        let cfg = SuiteConfig { euler_samples: 50, point_samples: 20, ..SuiteConfig::default() };
        for name in ["euler", "gauge", "field", "spectrum", "radial"] {
            for row in Registry::standard().get(name).unwrap().run(&cfg) {
                println!("{} {} {} {:e} {}", if row.pass { "PASS" } else { "FAIL" }, row.suite, row.relation, row.residual, row.detail);
                assert!(row.pass, "{} {}", row.suite, row.relation);
            }
        }
    }
}
