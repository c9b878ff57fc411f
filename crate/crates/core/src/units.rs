use hkit_algebra::Rational;

/// Physical constants kept exact: Planck's constant, the mass and the coupling e^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Units {
    pub hbar: Rational,
    pub mu0: Rational,
    pub e2: Rational,
}

impl Default for Units {
    fn default() -> Self {
        Units { hbar: Rational::ONE, mu0: Rational::ONE, e2: Rational::ONE }
    }
}

impl Units {
    pub fn new(hbar: Rational, mu0: Rational, e2: Rational) -> Units {
        assert!(hbar.signum() > 0 && mu0.signum() > 0 && e2.signum() > 0, "units must be positive");
        Units { hbar, mu0, e2 }
    }
}
