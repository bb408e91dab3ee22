//! Physical quantities and derived-parameter algebra shared by every solver.
//!
//! Units are natural units with hbar = c = 1 throughout: energies and masses
//! in fm^-1, lengths in fm, so the potential strengths carry a: fm^-3,
//! b: fm^-2 and c dimensionless. All types are immutable values; derived
//! quantities (gamma_tilde, beta_tilde_sq, A1..A5, l_tilde, delta) are
//! recomputed on demand from the primitive fields and never cached.

use crate::error::{Error, Result};

/// Killingbeck potential strengths for Delta(r) = a r^2 + b r - c / r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Quadratic (oscillator) strength, fm^-3. Must be >= 0; the general
    /// ansatz path additionally requires a > 0.
    pub a: f64,
    /// Linear (confining) strength, fm^-2. On the quasi-exact path this is
    /// an output, not an input; the shooting oracle takes it as fixed.
    pub b: f64,
    /// Coulomb strength, dimensionless; c > 0 is attractive as written.
    pub c: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidParameter {
                what: "potential strength a",
                constraint: ">= 0",
                value: a,
            });
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter {
                what: "potential strength b",
                constraint: "finite",
                value: b,
            });
        }
        if !c.is_finite() || c < 0.0 {
            return Err(Error::InvalidParameter {
                what: "potential strength c",
                constraint: ">= 0",
                value: c,
            });
        }
        Ok(Self { a, b, c })
    }

    /// Potential value Delta(r) = a r^2 + b r - c / r.
    pub fn delta_potential(&self, r: f64) -> f64 {
        self.a * r * r + self.b * r - self.c / r
    }

    /// Same strengths with a different linear coefficient.
    pub fn with_b(&self, b: f64) -> Self {
        Self { b, ..*self }
    }
}

/// Fermion mass and pseudospin constant Sigma(r) = C_ps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Fermion mass M, fm^-1.
    pub mass: f64,
    /// Pseudospin constant C_ps, fm^-1 (Sigma(r) = C_ps).
    pub c_ps: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, c_ps: f64) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::InvalidParameter {
                what: "mass M",
                constraint: "> 0",
                value: mass,
            });
        }
        if !c_ps.is_finite() {
            return Err(Error::InvalidParameter {
                what: "pseudospin constant C_ps",
                constraint: "finite",
                value: c_ps,
            });
        }
        Ok(Self { mass, c_ps })
    }
}

/// Quantum labels of one lower-component channel.
///
/// Only kappa and the series index n are stored; the pseudo-orbital number
/// l_tilde and the Frobenius exponent delta are derived so they can never go
/// stale. The stored convention is the regular root delta = max(kappa,
/// 1 - kappa) >= 1, the unique root of delta(delta - 1) = kappa(kappa - 1)
/// giving a square-integrable r^delta behaviour at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channel {
    kappa: i64,
    n: i64,
}

impl Channel {
    /// Build a channel from the spin-orbit number; n defaults to 1.
    pub fn from_kappa(kappa: i64) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidKappa);
        }
        Ok(Self { kappa, n: 1 })
    }

    /// Same channel with series index n (>= 1).
    pub fn with_n(self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSeriesIndex(n));
        }
        Ok(Self { n, ..self })
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Pseudo-orbital quantum number: kappa(kappa-1) = l_tilde(l_tilde+1).
    pub fn l_tilde(&self) -> i64 {
        if self.kappa < 0 {
            -self.kappa
        } else {
            self.kappa - 1
        }
    }

    /// Regular Frobenius exponent, max(kappa, 1 - kappa) >= 1.
    pub fn delta(&self) -> f64 {
        self.kappa.max(1 - self.kappa) as f64
    }

    /// Centrifugal strength kappa(kappa - 1) = l_tilde(l_tilde + 1).
    pub fn centrifugal(&self) -> f64 {
        (self.kappa * (self.kappa - 1)) as f64
    }
}

/// Energy E together with the derived gamma_tilde and beta_tilde^2.
///
/// gamma_tilde = E - M - C_ps and beta_tilde_sq = (M + E)(M - E + C_ps);
/// the identity beta_tilde_sq = -(M + E) * gamma_tilde holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyQuantities {
    pub e: f64,
    pub gamma_tilde: f64,
    pub beta_tilde_sq: f64,
}

impl EnergyQuantities {
    pub fn new(e: f64, phys: &PhysicalParams) -> Self {
        let gamma_tilde = e - phys.mass - phys.c_ps;
        let beta_tilde_sq = (phys.mass + e) * (phys.mass - e + phys.c_ps);
        Self {
            e,
            gamma_tilde,
            beta_tilde_sq,
        }
    }

    /// Energy recovered from gamma_tilde = E - M - C_ps.
    pub fn from_gamma_tilde(gamma_tilde: f64, phys: &PhysicalParams) -> Self {
        Self::new(gamma_tilde + phys.mass + phys.c_ps, phys)
    }
}

/// Coefficients of the canonical radial form
/// G'' + [A1/r^2 + A2/r - A3 - A4 r - A5 r^2] G = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
}

/// A1 = -kappa(kappa-1), A2 = gamma_tilde c, A3 = beta_tilde^2,
/// A4 = gamma_tilde b, A5 = gamma_tilde a, always derived from the inputs.
pub fn canonical_coefficients(
    pot: &PotentialParams,
    phys: &PhysicalParams,
    ch: &Channel,
    e: f64,
) -> CanonicalCoefficients {
    let eq = EnergyQuantities::new(e, phys);
    CanonicalCoefficients {
        a1: -ch.centrifugal(),
        a2: eq.gamma_tilde * pot.c,
        a3: eq.beta_tilde_sq,
        a4: eq.gamma_tilde * pot.b,
        a5: eq.gamma_tilde * pot.a,
    }
}
