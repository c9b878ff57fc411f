use hkit_core::config::{ConfigError, SuiteConfig};
use hkit_core::report::{CheckReport, Format, Mode, RunReport, CSV_COLUMNS};
use hkit_core::suites::{Registry, Suite};

struct Fixed;

impl Suite for Fixed {
    fn name(&self) -> &'static str {
        "fixed"
    }
    fn description(&self) -> &'static str {
        "two canned rows"
    }
    fn run(&self, _: &SuiteConfig) -> Vec<CheckReport> {
        vec![
            CheckReport::exact("fixed", "b, with comma", "x", 0, "quote \" inside"),
            CheckReport::numeric("fixed", "a", "y", 2.0, 1.0, ""),
        ]
    }
}

fn light() -> SuiteConfig {
    SuiteConfig {
        suites: vec!["euler".into(), "spectrum".into()],
        euler_samples: 40,
        point_samples: 10,
        ..SuiteConfig::default()
    }
}

#[test]
fn rows_and_summary() {
    let ok = CheckReport::numeric("s", "r", "a", 0.5, 1.0, "");
    assert!(ok.pass);
    assert!(!CheckReport::numeric("s", "r", "a", f64::NAN, 1.0, "").pass);
    assert!(!CheckReport::exact("s", "r", "a", 3, "").pass);
    let neg = CheckReport::numeric("s", "r", "a", 2.0, 1.0, "x").expect_failure();
    assert!(neg.pass);
    assert_eq!(neg.detail, "negative control; x");
    let rep = RunReport::new(1, Default::default(), vec![ok, CheckReport::numeric("s", "q", "a", f64::INFINITY, 1.0, "")]);
    assert_eq!((rep.summary.total, rep.summary.passed, rep.summary.failed), (2, 1, 1));
    assert_eq!(rep.rows[0].relation, "q");
    assert_eq!(rep.rows[0].residual, f64::MAX);
    assert!(!rep.all_passed());
}

#[test]
fn formats() {
    let mut reg = Registry::new();
    reg.register(Box::new(Fixed));
    let cfg = SuiteConfig { suites: vec!["fixed".into()], ..SuiteConfig::default() };
    let rep = reg.run(&cfg, 1).unwrap();
    let json = rep.emit(Format::Json);
    let back = RunReport::from_json(&json).unwrap();
    assert_eq!(back, rep);
    assert_eq!(back.rows[0].mode, Mode::Numeric);

    let csv = rep.emit(Format::Csv);
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_COLUMNS);
    let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), rep.rows.len());
    assert_eq!(&records[1][1], "b, with comma");
    assert_eq!(&records[1][7], "quote \" inside");

    let text = rep.emit(Format::Text);
    assert!(text.lines().next().unwrap().starts_with("FAIL"));
    assert!(text.lines().nth(1).unwrap().starts_with("PASS"));
    assert!(text.ends_with("2 checks, 1 passed, 1 failed\n"));
    assert_eq!(Format::parse("yaml"), None);
}

#[test]
fn config_parsing() {
    let cfg = SuiteConfig::parse("[run]\nsuites = euler, charge # two\nseed = 7\n[units]\nhbar = 1/2\n[quadrature]\nnodes = 8,8,4,4\n[tolerances]\nself-duality = 1e-9\n").unwrap();
    assert_eq!(cfg.suites, ["euler", "charge"]);
    assert_eq!(cfg.seed, 7);
    assert_eq!(cfg.units.hbar.to_string(), "1/2");
    assert_eq!(cfg.nodes.counts(), [8, 8, 4, 4]);
    assert_eq!(cfg.tolerance("self-duality"), 1e-9);
    assert_eq!(cfg.tolerance("charge"), 1e-10);

    let mut merged = cfg.clone();
    merged.merge("[run]\nseed = 9").unwrap();
    assert_eq!((merged.seed, merged.suites.clone()), (9, cfg.suites.clone()));
    assert_eq!(merged.echo()["run.seed"], "9");

    assert!(matches!(SuiteConfig::parse("[run]\ncolour = red"), Err(ConfigError::UnknownKey(_))));
    assert!(matches!(SuiteConfig::parse("[tolerances]\nmade-up = 1"), Err(ConfigError::UnknownKey(_))));
    assert!(matches!(SuiteConfig::parse("[run\n"), Err(ConfigError::Syntax { line: 1, .. })));
    assert!(matches!(SuiteConfig::parse("seed 3"), Err(ConfigError::Syntax { .. })));
    assert!(matches!(SuiteConfig::parse("[units]\nhbar = -1"), Err(ConfigError::BadValue { .. })));
    assert!(matches!(SuiteConfig::parse("[quadrature]\nnodes = 1,2"), Err(ConfigError::BadValue { .. })));
    assert!(matches!(SuiteConfig::parse("[quadrature]\nradius = 0"), Err(ConfigError::BadValue { .. })));
}

#[test]
fn registry_errors_and_replacement() {
    let reg = Registry::standard();
    let cfg = SuiteConfig { suites: vec!["nope".into()], ..SuiteConfig::default() };
    assert_eq!(reg.run(&cfg, 1).unwrap_err(), ConfigError::UnknownSuite("nope".into()));
    let cfg = SuiteConfig { suites: vec!["algebra".into()], relation: Some("nope".into()), ..SuiteConfig::default() };
    assert!(matches!(reg.run(&cfg, 1), Err(ConfigError::BadValue { .. })));

    let mut reg = Registry::standard();
    let before = reg.names().len();
    reg.register(Box::new(Fixed));
    reg.register(Box::new(Fixed));
    assert_eq!(reg.names().len(), before + 1);
    assert_eq!(reg.get("fixed").unwrap().description(), "two canned rows");
}

#[test]
fn runs_are_deterministic() {
    let reg = Registry::standard();
    let a = reg.run(&light(), 1).unwrap().emit(Format::Json);
    let b = reg.run(&light(), 2).unwrap().emit(Format::Json);
    assert_eq!(a, b);
    let other = reg.run(&SuiteConfig { seed: 11, ..light() }, 1).unwrap();
    assert!(other.all_passed());
    assert_ne!(other.emit(Format::Json), a);
}
