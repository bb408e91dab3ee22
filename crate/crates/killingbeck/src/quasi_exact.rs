//! Quasi-exact spectrum solvers for the Killingbeck channel.
//!
//! Two routes are provided. `solve_energy` scans and polishes roots of the
//! closed-form energy relation in x = gamma_tilde (with the potential
//! constraint substituted), while `solve_by_termination` solves the joint
//! series-termination system in (x, b): the coefficient a_{n_r+1} must vanish
//! together with the recurrence factor Z_{n_r}, which kills every coefficient
//! beyond degree n_r of the three-term recurrence. The two routes coincide
//! only where the closed form's index bookkeeping is consistent with actual
//! termination; disagreements are reported, never hidden.

use crate::error::{Error, Result};
use crate::model::{
    canonical_coefficients, Channel, EnergyQuantities, PhysicalParams, PotentialParams,
};
use crate::roots::{newton2, refine_bracketed};
use crate::series;

/// Index convention used inside the closed-form energy relation.
///
/// `RegularDelta` replaces the printed spin-orbit index by the regular
/// Frobenius exponent (the one consistent with a normalizable origin
/// behaviour); `PaperKappa` evaluates the relation literally as printed,
/// which is useful only as a diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexConvention {
    #[default]
    RegularDelta,
    PaperKappa,
}

impl IndexConvention {
    fn index(&self, ch: &Channel) -> f64 {
        match self {
            IndexConvention::RegularDelta => ch.n() as f64 + ch.delta(),
            IndexConvention::PaperKappa => (ch.n() + ch.kappa()) as f64,
        }
    }
}

/// Exponent parameters of the ansatz G = exp(p r^2 / 2 + q r) r^delta P(r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzParams {
    /// Gaussian coefficient, fm^-2; always the negative root p = -sqrt(gamma_tilde a).
    pub p: f64,
    /// Linear coefficient, fm^-1; q = gamma_tilde b / (2p), so q <= 0 for b >= 0.
    pub q: f64,
    /// Frobenius exponent (regular root).
    pub delta: f64,
}

/// p = -sqrt(gamma_tilde a), q = gamma_tilde b / (2p); requires the general
/// path a > 0, gamma_tilde > 0.
pub fn ansatz_params(
    pot: &PotentialParams,
    gamma_tilde: f64,
    ch: &Channel,
) -> Result<AnsatzParams> {
    if pot.a <= 0.0 || gamma_tilde <= 0.0 {
        return Err(Error::RequiresSpecialCase {
            a: pot.a,
            gamma_tilde,
        });
    }
    let p = -(gamma_tilde * pot.a).sqrt();
    let q = gamma_tilde * pot.b / (2.0 * p);
    Ok(AnsatzParams {
        p,
        q,
        delta: ch.delta(),
    })
}

/// Linear strength forced by the potential constraint,
/// b = c sqrt(a gamma_tilde) / (n + delta - 1) on the positive branch.
pub fn constrained_b(pot: &PotentialParams, ch: &Channel, gamma_tilde: f64) -> Result<f64> {
    if pot.a <= 0.0 || gamma_tilde <= 0.0 {
        return Err(Error::RequiresSpecialCase {
            a: pot.a,
            gamma_tilde,
        });
    }
    let denom = ch.n() as f64 + ch.delta() - 1.0;
    if denom == 0.0 {
        return Err(Error::DegenerateChannel {
            n: ch.n(),
            delta: ch.delta(),
        });
    }
    Ok(pot.c * (pot.a * gamma_tilde).sqrt() / denom)
}

/// Residual of the closed-form energy relation at trial x = gamma_tilde:
/// R(x) = (M+E)x - 2 sqrt(a) sqrt(x) (idx - 3/2) + x^2 c^2 / (4 (idx - 1)^2)
/// with E = x + M + C_ps and idx = n + delta (or n + kappa in paper mode).
pub fn energy_residual(
    x: f64,
    pot: &PotentialParams,
    phys: &PhysicalParams,
    ch: &Channel,
    convention: IndexConvention,
) -> f64 {
    let idx = convention.index(ch);
    let e = x + phys.mass + phys.c_ps;
    let mu = idx - 1.0;
    let coulomb_term = if mu == 0.0 && pot.c == 0.0 {
        0.0
    } else {
        x * x * pot.c * pot.c / (4.0 * mu * mu)
    };
    (phys.mass + e) * x - 2.0 * pot.a.sqrt() * x.sqrt() * (idx - 1.5) + coulomb_term
}

/// Bracketing configuration for the gamma_tilde scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Lower edge of the geometric x grid, fm^-1.
    pub x_min: f64,
    /// Upper edge of the geometric x grid, fm^-1.
    pub x_max: f64,
    /// Number of geometric grid points.
    pub grid_points: usize,
    /// Absolute residual target for a polished root, fm^-2 scale.
    pub tol_root: f64,
    /// Bracket-width target for a polished root, fm^-1.
    pub tol_x: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            x_min: 1e-12,
            x_max: 50.0,
            grid_points: 2000,
            tol_root: 1e-12,
            tol_x: 1e-13,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite()
            && self.x_max.is_finite()
            && self.x_min > 0.0
            && self.x_max > self.x_min)
        {
            return Err(Error::InvalidBracket(format!(
                "need 0 < x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.grid_points < 2 {
            return Err(Error::InvalidBracket(format!(
                "need at least 2 grid points, got {}",
                self.grid_points
            )));
        }
        if !(self.tol_root > 0.0 && self.tol_x > 0.0) {
            return Err(Error::InvalidBracket(
                "tolerances must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

/// Which route produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Root of the closed-form energy relation.
    Eq19,
    /// Joint termination of the series recurrence.
    Recurrence,
}

impl SolveMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveMethod::Eq19 => "eq19",
            SolveMethod::Recurrence => "recurrence",
        }
    }
}

/// A self-consistent (E, b) pair with its ansatz parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiExactSolution {
    /// Relativistic energy, fm^-1.
    pub e: f64,
    /// Linear strength this solution lives at, fm^-2.
    pub b_solved: f64,
    pub ansatz: AnsatzParams,
    pub channel: Channel,
    /// For `Eq19`: |R(x)| of the energy relation. For `Recurrence`: the
    /// scaled sup-norm of the two termination equations at the solution.
    pub residual: f64,
    pub method: SolveMethod,
}

impl QuasiExactSolution {
    pub fn gamma_tilde(&self, phys: &PhysicalParams) -> f64 {
        EnergyQuantities::new(self.e, phys).gamma_tilde
    }
}

/// Scan x on a geometric grid, bracket sign changes of the energy residual
/// and polish every root. Returns all roots sorted ascending in E; an empty
/// list means no sign change was found (not an error).
pub fn solve_energy(
    pot: &PotentialParams,
    phys: &PhysicalParams,
    ch: &Channel,
    convention: IndexConvention,
    search: &SearchConfig,
) -> Result<Vec<QuasiExactSolution>> {
    search.validate()?;
    if pot.a <= 0.0 {
        return Err(Error::RequiresSpecialCase {
            a: pot.a,
            gamma_tilde: f64::NAN,
        });
    }

    let r = |x: f64| energy_residual(x, pot, phys, ch, convention);
    let ratio = (search.x_max / search.x_min).powf(1.0 / (search.grid_points - 1) as f64);

    let mut roots: Vec<f64> = Vec::new();
    let mut x_prev = search.x_min;
    let mut r_prev = r(x_prev);
    for i in 1..search.grid_points {
        let x = search.x_min * ratio.powi(i as i32);
        let rv = r(x);
        if r_prev == 0.0 {
            roots.push(x_prev);
        } else if rv.is_finite() && r_prev.is_finite() && (rv < 0.0) != (r_prev < 0.0) {
            roots.push(refine_bracketed(x_prev, x, r, search.tol_x));
        }
        x_prev = x;
        r_prev = rv;
    }

    roots.dedup_by(|a, b| (*a - *b).abs() < 4.0 * search.tol_x);

    let mut out = Vec::with_capacity(roots.len());
    for x in roots {
        let b = constrained_b(pot, ch, x)?;
        let ansatz = ansatz_params(&pot.with_b(b), x, ch)?;
        out.push(QuasiExactSolution {
            e: x + phys.mass + phys.c_ps,
            b_solved: b,
            ansatz,
            channel: *ch,
            residual: r(x).abs(),
            method: SolveMethod::Eq19,
        });
    }
    out.sort_by(|s1, s2| s1.e.total_cmp(&s2.e));
    Ok(out)
}

/// For each solution in `from`, the smallest |E gap| to any solution in
/// `to` (None when `to` is empty). Used for the cross-route agreement
/// diagnostic; disagreements are reported, never hidden.
pub fn nearest_energy_gap(
    from: &[QuasiExactSolution],
    to: &[QuasiExactSolution],
) -> Vec<Option<f64>> {
    from.iter()
        .map(|s| to.iter().map(|t| (t.e - s.e).abs()).min_by(f64::total_cmp))
        .collect()
}

/// The two termination equations at trial (x, b), scaled to O(1):
/// F1 = a_{n_r+1}(x, b) / max|a_k| and F2 = Z_{n_r}(x, b) / scale.
fn termination_system(
    x: f64,
    b: f64,
    pot: &PotentialParams,
    phys: &PhysicalParams,
    ch: &Channel,
    n_r: usize,
) -> Option<[f64; 2]> {
    if x <= 0.0 || !x.is_finite() || !b.is_finite() {
        return None;
    }
    let probe = pot.with_b(b);
    let ansatz = ansatz_params(&probe, x, ch).ok()?;
    let e = x + phys.mass + phys.c_ps;
    let co = canonical_coefficients(&probe, phys, ch, e);
    let coeffs = series::coefficients(&ansatz, &co, n_r + 1).ok()?;
    let lead = coeffs.a[..=n_r]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(1e-300);
    let d = ch.delta();
    let z = ansatz.q * ansatz.q + 2.0 * ansatz.p * (n_r as f64 + d + 0.5) - co.a3;
    let z_scale = (ansatz.q * ansatz.q).abs()
        + (2.0 * ansatz.p * (n_r as f64 + d + 0.5)).abs()
        + co.a3.abs()
        + 1e-300;
    Some([coeffs.a[n_r + 1] / lead, z / z_scale])
}

/// Upper edge x_w of the x domain on which the Z-constraint admits a real
/// b > 0: w(x) = 2 sqrt(x a) (n_r + delta + 1/2) - (M + E) x crosses zero
/// exactly once for x > 0 when 2M + C_ps > 0.
fn manifold_edge(
    pot: &PotentialParams,
    phys: &PhysicalParams,
    ch: &Channel,
    n_r: usize,
    x_cap: f64,
) -> Option<f64> {
    let nu = n_r as f64 + ch.delta() + 0.5;
    let w = |x: f64| 2.0 * (x * pot.a).sqrt() * nu - (2.0 * phys.mass + phys.c_ps + x) * x;
    let mut hi = 1e-12;
    while w(hi) > 0.0 && hi < x_cap {
        hi *= 2.0;
    }
    if w(hi) > 0.0 {
        return Some(x_cap);
    }
    let mut lo = hi * 0.5;
    if w(lo) <= 0.0 {
        // w <= 0 immediately; no positive-b manifold
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if w(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// b > 0 branch on the Z-constraint manifold at abscissa x.
fn manifold_b(
    pot: &PotentialParams,
    phys: &PhysicalParams,
    ch: &Channel,
    n_r: usize,
    x: f64,
) -> Option<f64> {
    let nu = n_r as f64 + ch.delta() + 0.5;
    let w = 2.0 * (x * pot.a).sqrt() * nu - (2.0 * phys.mass + phys.c_ps + x) * x;
    if w < 0.0 {
        return None;
    }
    Some(2.0 * (pot.a * w / x).sqrt())
}

/// Solve the joint termination system a_{n_r+1} = 0 and Z_{n_r} = 0 in the
/// two unknowns (x, b).
///
/// Candidate basins are located by scanning a_{n_r+1} along the Z-constraint
/// manifold (with extra samples in the boundary layer near its b -> 0 edge,
/// where the n_r = 0 root always sits) and from `solve_energy` roots; each
/// seed is then polished by a damped two-dimensional Newton iteration with a
/// finite-difference Jacobian. Only solutions whose trailing coefficients
/// actually vanish are returned.
pub fn solve_by_termination(
    pot: &PotentialParams,
    phys: &PhysicalParams,
    ch: &Channel,
    n_r: usize,
    search: &SearchConfig,
) -> Result<Vec<QuasiExactSolution>> {
    search.validate()?;
    if pot.a <= 0.0 {
        return Err(Error::RequiresSpecialCase {
            a: pot.a,
            gamma_tilde: f64::NAN,
        });
    }
    let ch_n = ch.with_n(n_r as i64 + 1)?;

    let mut seeds: Vec<[f64; 2]> = Vec::new();

    // seeds from the closed-form roots at the working alignment n = n_r + 1
    // (and n = n_r + 2, which the c = 0 limit of the termination equations
    // actually matches)
    for n in [n_r as i64 + 1, n_r as i64 + 2] {
        let ch_seed = ch.with_n(n)?;
        if let Ok(sols) = solve_energy(pot, phys, &ch_seed, IndexConvention::RegularDelta, search) {
            for s in sols {
                let x = s.gamma_tilde(phys);
                if let Ok(b) = constrained_b(pot, &ch_n, x) {
                    seeds.push([x, b]);
                }
            }
        }
    }

    // scan of a_{n_r+1} along the Z-constraint manifold
    if let Some(x_w) = manifold_edge(pot, phys, ch, n_r, search.x_max) {
        let f1_at = |x: f64| -> Option<f64> {
            let b = manifold_b(pot, phys, ch, n_r, x)?;
            termination_system(x, b, pot, phys, ch, n_r).map(|f| f[0])
        };
        let npts = search.grid_points.max(64);
        let mut samples: Vec<f64> = (1..npts)
            .map(|i| {
                let t = i as f64 / npts as f64;
                x_w * t * t
            })
            .collect();
        // boundary layer: the n_r = 0 root hugs the b -> 0 edge
        for k in 2..=26 {
            samples.push(x_w * (1.0 - 10f64.powf(-(k as f64) / 2.0)));
        }
        samples.sort_by(f64::total_cmp);
        samples.dedup();

        let mut prev: Option<(f64, f64)> = None;
        for &x in &samples {
            if x <= 0.0 || x > search.x_max {
                continue;
            }
            let Some(h) = f1_at(x) else {
                prev = None;
                continue;
            };
            if let Some((x0, h0)) = prev {
                if (h0 < 0.0) != (h < 0.0) {
                    let xm =
                        refine_bracketed(x0, x, |xx| f1_at(xx).unwrap_or(f64::NAN), 1e-9 * x_w);
                    if let Some(b) = manifold_b(pot, phys, ch, n_r, xm) {
                        seeds.push([xm, b]);
                    }
                }
            }
            prev = Some((x, h));
        }
        // the b = 0 edge itself is the solution in the c = 0 limit
        seeds.push([x_w, 0.0]);
    }

    let system = |v: [f64; 2]| -> [f64; 2] {
        termination_system(v[0], v[1], pot, phys, ch, n_r).unwrap_or([f64::NAN, f64::NAN])
    };

    let mut out: Vec<QuasiExactSolution> = Vec::new();
    let mut best_fail: Option<([f64; 2], f64)> = None;
    let mut converged_any = false;
    for seed in seeds {
        match newton2(system, seed, 1e-13, 80) {
            Ok((v, norm, _)) => {
                converged_any = true;
                let (x, mut b) = (v[0], v[1]);
                if x <= 0.0 {
                    continue;
                }
                if b.abs() < 1e-14 * (x * pot.a).sqrt().max(1e-30) {
                    b = 0.0;
                }
                if b < 0.0 {
                    continue; // negative-branch solutions are out of scope
                }
                if out.iter().any(|s| {
                    (s.gamma_tilde(phys) - x).abs() < 1e-8 * x.max(1e-12)
                        && (s.b_solved - b).abs() < 1e-8 * (b.abs() + 1e-12)
                }) {
                    continue;
                }
                // keep only solutions whose trailing coefficients truly die
                let probe = pot.with_b(b);
                let ansatz = ansatz_params(&probe, x, ch)?;
                let e = x + phys.mass + phys.c_ps;
                let co = canonical_coefficients(&probe, phys, ch, e);
                let coeffs = series::coefficients(&ansatz, &co, n_r + 6)?;
                let (terminated, _) = series::termination_check(&coeffs, n_r, 6);
                if !terminated {
                    continue;
                }
                out.push(QuasiExactSolution {
                    e,
                    b_solved: b,
                    ansatz,
                    channel: ch_n,
                    residual: norm,
                    method: SolveMethod::Recurrence,
                });
            }
            Err(best) => {
                if best_fail.as_ref().is_none_or(|(_, n)| best.1 < *n) {
                    best_fail = Some(best);
                }
            }
        }
    }

    if out.is_empty() && !converged_any {
        if let Some((v, norm)) = best_fail {
            return Err(Error::NoConvergence {
                iterations: 80,
                best_x: v[0],
                best_b: v[1],
                best_norm: norm,
            });
        }
    }
    out.sort_by(|s1, s2| s1.e.total_cmp(&s2.e));
    Ok(out)
}
