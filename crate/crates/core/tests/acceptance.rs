//! One line per acceptance criterion, run against the default configuration.

use std::time::{Duration, Instant};

use hkit_core::config::SuiteConfig;
use hkit_core::report::{CheckReport, Mode};
use hkit_core::suites::Registry;
use hkit_core::topology::{self, QuadratureSpec};

const CHARGE_TOL: f64 = 1e-10;
const CHARGE_TIME: Duration = Duration::from_secs(1);
const DUALITY_TOL: f64 = 1e-10;
const DUALITY_POINTS: usize = 50;
const EULER_SAMPLES: usize = 1000;
const ALGEBRA_TIME: Duration = Duration::from_secs(60);
const C4_TOL: f64 = 1e-8;
const CLOSURE_RANGE: &str = "N = 0..40";
const RADIAL_TOL: f64 = 1e-6;
const SUBSTITUTION_TOL: f64 = 1e-4;
const RADIAL_TIME: Duration = Duration::from_secs(30);

struct Rows(Vec<CheckReport>);

impl Rows {
    fn get(&self, relation: &str) -> &CheckReport {
        self.0.iter().find(|r| r.relation == relation).unwrap_or_else(|| panic!("no row `{relation}`"))
    }

    fn exact_zero(&self, relation: &str) -> bool {
        let r = self.get(relation);
        r.mode == Mode::Exact && r.residual == 0.0 && r.pass
    }

    fn below(&self, relation: &str, tol: f64) -> bool {
        let r = self.get(relation);
        r.pass && r.residual < tol
    }
}

fn timed(reg: &Registry, name: &str, cfg: &SuiteConfig) -> (Rows, Duration) {
    let start = Instant::now();
    let rows = reg.get(name).unwrap().run(cfg);
    (Rows(rows), start.elapsed())
}

fn line(n: usize, ok: bool, text: String) -> bool {
    println!("criterion {n:>2}: {}  {text}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let reg = Registry::standard();
    let cfg = SuiteConfig::default();
    assert_eq!(cfg.euler_samples, EULER_SAMPLES);
    assert_eq!(cfg.nodes, QuadratureSpec::new(16, 16, 8, 8).unwrap());
    let mut results = Vec::new();

    let start = Instant::now();
    let charge = topology::topological_charge(&cfg.nodes, cfg.radius).unwrap();
    let elapsed = start.elapsed();
    let q_err = (charge.q - 1.0).abs();
    let qa_err = charge.q_per_component.iter().map(|q| (q - 1.0 / 3.0).abs()).fold(0.0, f64::max);
    results.push(line(
        1,
        q_err < CHARGE_TOL && qa_err < CHARGE_TOL && elapsed < CHARGE_TIME,
        format!("|q - 1| = {q_err:.1e}, max |q^a - 1/3| = {qa_err:.1e} (tol {CHARGE_TOL:e}); {:.0} ms incl. doubled-node estimate (limit {:?})", elapsed.as_secs_f64() * 1e3, CHARGE_TIME),
    ));

    let (field, _) = timed(&reg, "field", &cfg);
    let product = field.exact_zero("field product identity") && field.exact_zero("field square identity");
    results.push(line(2, product, "F^a_ij F^b_ij = 4/r^4 delta_ab, exact residual 0 from the definition-built tensor".into()));

    let sd = field.get("self-duality");
    let anti = field.get("opposite orientation is anti-self-dual");
    results.push(line(
        3,
        sd.detail.starts_with(&format!("{DUALITY_POINTS} random points")) && sd.pass && sd.residual < DUALITY_TOL && anti.pass,
        format!("max |*F - F| = {:.1e} (tol {DUALITY_TOL:e}), {}; opposite orientation {:.2e}", sd.residual, sd.detail, anti.residual),
    ));

    let (euler, _) = timed(&reg, "euler", &cfg);
    let euler_ok = ["Euler identity, D = 2", "Euler identity, D = 4", "Euler identity, D = 8 component formulas", "Euler identity, D = 8 matrix image"]
        .iter()
        .chain(["H H^T = u^2 E, D = 2", "H H^T = u^2 E, D = 4", "H H^T = u^2 E, D = 8"].iter())
        .all(|r| euler.exact_zero(r));
    results.push(line(4, euler_ok, format!("|x| = |u|^2 exact on {EULER_SAMPLES} rational inputs for D = 2, 4, 8; H H^T = u^2 E exact")));

    let (gauge, _) = timed(&reg, "gauge", &cfg);
    results.push(line(5, gauge.exact_zero("A orthogonality") && gauge.exact_zero("B orthogonality"), "A^a_j A^b_j and A^a x, exact residual 0 in both charts".into()));

    let (algebra, t) = timed(&reg, "algebra", &cfg);
    let relations = ["pi-x", "pi-pi", "L-x", "L-pi", "L-L", "H-L", "L-M", "H-M", "M-M", "SO51-cleared"];
    let all = relations.iter().all(|r| algebra.exact_zero(r)) && algebra.0.len() == relations.len();
    results.push(line(6, all && t < ALGEBRA_TIME, format!("{} relations, exact residual 0; {:.1} s (limit {:?})", relations.len(), t.as_secs_f64(), ALGEBRA_TIME)));

    let (casimir, _) = timed(&reg, "casimir", &cfg);
    let c4 = casimir.get("C4");
    let c4_ok = c4.pass && if c4.mode == Mode::Exact { c4.residual == 0.0 } else { c4.residual < C4_TOL };
    results.push(line(
        7,
        casimir.exact_zero("C2") && casimir.exact_zero("C3") && c4_ok && casimir.get("C4 with a perturbed coefficient").pass,
        format!("C2, C3 exact 0; C4 {} residual {:.1e} (tol {C4_TOL:e})", c4.mode.name(), c4.residual),
    ));

    let (spectrum, _) = timed(&reg, "spectrum", &cfg);
    let spec_ok = ["energy levels from C2", "constraints force mu2 = mu3 = T", "duality closure", "levels negative and increasing"].iter().all(|r| spectrum.exact_zero(r))
        && spectrum.get("duality closure").detail.contains(CLOSURE_RANGE);
    results.push(line(8, spec_ok, format!("levels from C2 with N/2 >= T, closure exact for {CLOSURE_RANGE}")));

    let (radial, t) = timed(&reg, "radial", &cfg);
    let eig = ["oscillator D = 8, L = 0", "oscillator D = 8, L = 2", "dual Coulomb d = 5, l = 0", "dual Coulomb d = 5, l = 1"];
    let worst_eig = eig.iter().map(|r| radial.get(r).residual).fold(0.0, f64::max);
    let worst_sub = ["substitution r = u^2, L = 0", "substitution r = u^2, L = 2"].iter().map(|r| radial.get(r).residual).fold(0.0, f64::max);
    let radial_ok = eig.iter().all(|r| radial.below(r, RADIAL_TOL))
        && radial.below("substitution r = u^2, L = 0", SUBSTITUTION_TOL)
        && radial.below("substitution r = u^2, L = 2", SUBSTITUTION_TOL)
        && radial.get("substitution with eps off by 10%").pass;
    results.push(line(
        9,
        radial_ok && t < RADIAL_TIME,
        format!("eigenvalues rel {worst_eig:.1e} (tol {RADIAL_TOL:e}); substitution {worst_sub:.1e} (tol {SUBSTITUTION_TOL:e}); {:.1} s (limit {:?})", t.as_secs_f64(), RADIAL_TIME),
    ));

    let cart = field.get("Cartesian table audit");
    let hyper_table = field.get("hyperspherical table audit");
    let itemized = cart.residual == 0.0 || cart.detail.contains("disagreeing:");
    results.push(line(
        10,
        cart.pass && hyper_table.pass && itemized && product && sd.pass,
        format!("Cartesian table: {} entries differ, itemized; hyperspherical table: {}; derived tensor meets criteria 2-3", cart.residual, hyper_table.detail),
    ));

    let failed: Vec<_> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
