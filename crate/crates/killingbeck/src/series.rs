//! Series coefficients from the radial recurrence, truncation checks, and
//! evaluation / normalization of the two-component spinor.

use crate::error::{Error, Result};
use crate::model::{
    canonical_coefficients, CanonicalCoefficients, PhysicalParams, PotentialParams,
};
use crate::quasi_exact::{AnsatzParams, QuasiExactSolution};

/// Coefficients a_0..a_K of the power series in the ansatz, together with
/// the recurrence factor sequences X_n, Y_n, Z_n.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    /// `a[0]` = 1 by convention; the overall scale lives in the normalization.
    pub a: Vec<f64>,
    pub x_factors: Vec<f64>,
    pub y_factors: Vec<f64>,
    pub z_factors: Vec<f64>,
}

impl SeriesCoefficients {
    pub fn highest_index(&self) -> usize {
        self.a.len() - 1
    }
}

/// Generate a_0..a_K from the full four-term recurrence
///
/// a_n = -[(p^2 - A5) a_{n-4} + (2pq - A4) a_{n-3} + Z_{n-2} a_{n-2}
///         + Y_{n-1} a_{n-1}] / X_n,
///
/// X_n = (n+delta)(n+delta-1) + A1, Y_k = 2q(k+delta) + A2,
/// Z_k = q^2 + 2p(k+delta+1/2) - A3. The a_{n-3} and a_{n-4} terms vanish
/// identically when (p, q) satisfy p^2 = A5 and 2pq = A4.
pub fn coefficients(
    ansatz: &AnsatzParams,
    co: &CanonicalCoefficients,
    k_max: usize,
) -> Result<SeriesCoefficients> {
    let (p, q, d) = (ansatz.p, ansatz.q, ansatz.delta);
    let mut a = Vec::with_capacity(k_max + 1);
    a.push(1.0);
    let mut xs = Vec::with_capacity(k_max + 1);
    let mut ys = Vec::with_capacity(k_max + 1);
    let mut zs = Vec::with_capacity(k_max + 1);
    // index-0 factors (X_0 multiplies a_0 in the indicial equation)
    xs.push(d * (d - 1.0) + co.a1);
    ys.push(2.0 * q * d + co.a2);
    zs.push(q * q + 2.0 * p * (d + 0.5) - co.a3);

    let p2_def = p * p - co.a5;
    let pq_def = 2.0 * p * q - co.a4;

    for n in 1..=k_max {
        let nf = n as f64;
        let x_n = (nf + d) * (nf + d - 1.0) + co.a1;
        if x_n == 0.0 {
            return Err(Error::SingularRecurrence { n, delta: d });
        }
        let y_prev = ys[n - 1]; // Y_{n-1} = 2q(n-1+delta) + A2
        let mut num = y_prev * a[n - 1];
        if n >= 2 {
            num += zs[n - 2] * a[n - 2];
        }
        if n >= 3 {
            num += pq_def * a[n - 3];
        }
        if n >= 4 {
            num += p2_def * a[n - 4];
        }
        a.push(-num / x_n);
        xs.push(x_n);
        ys.push(2.0 * q * (nf + d) + co.a2);
        zs.push(q * q + 2.0 * p * (nf + d + 0.5) - co.a3);
    }
    Ok(SeriesCoefficients {
        a,
        x_factors: xs,
        y_factors: ys,
        z_factors: zs,
    })
}

/// Residual of the recurrence relation re-applied to the stored coefficients;
/// the recurrence is its own checksum, so this should sit at roundoff.
pub fn recurrence_residual(
    coeffs: &SeriesCoefficients,
    ansatz: &AnsatzParams,
    co: &CanonicalCoefficients,
) -> f64 {
    let (p, q) = (ansatz.p, ansatz.q);
    let p2_def = p * p - co.a5;
    let pq_def = 2.0 * p * q - co.a4;
    let mut worst = 0.0_f64;
    for n in 1..coeffs.a.len() {
        let mut lhs = coeffs.a[n] * coeffs.x_factors[n] + coeffs.y_factors[n - 1] * coeffs.a[n - 1];
        if n >= 2 {
            lhs += coeffs.z_factors[n - 2] * coeffs.a[n - 2];
        }
        if n >= 3 {
            lhs += pq_def * coeffs.a[n - 3];
        }
        if n >= 4 {
            lhs += p2_def * coeffs.a[n - 4];
        }
        worst = worst.max(lhs.abs());
    }
    worst
}

/// True iff every coefficient in (n_r, n_r + buffer] is below 1e-10 times
/// the largest coefficient up to n_r; also returns the largest trailing
/// magnitude found.
pub fn termination_check(coeffs: &SeriesCoefficients, n_r: usize, buffer: usize) -> (bool, f64) {
    assert!(
        coeffs.highest_index() >= n_r + buffer,
        "need coefficients up to n_r + buffer"
    );
    let lead = coeffs.a[..=n_r].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let trail = coeffs.a[n_r + 1..=n_r + buffer]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    (trail < 1e-10 * lead, trail)
}

/// Lower component G(r) = exp(p r^2/2 + q r) r^delta sum_k a_k r^k.
pub fn eval_g(sol: &QuasiExactSolution, coeffs: &SeriesCoefficients, r: f64) -> f64 {
    let ap = &sol.ansatz;
    let poly = coeffs.a.iter().rev().fold(0.0, |acc, &c| acc * r + c);
    (0.5 * ap.p * r * r + ap.q * r).exp() * r.powf(ap.delta) * poly
}

/// Upper component from the first-order relation,
/// F = [G' - (kappa/r) G] / (M - E + C_ps), with G' taken analytically:
/// F(r) = exp(S) r^(delta-1) [(delta - kappa) P + r P' + (p r + q) r P] / (M - E + C_ps).
pub fn eval_f(
    sol: &QuasiExactSolution,
    coeffs: &SeriesCoefficients,
    phys: &PhysicalParams,
    r: f64,
) -> Result<f64> {
    let denom = phys.mass - sol.e + phys.c_ps;
    if denom == 0.0 {
        return Err(Error::PspinSingularPoint { e: sol.e });
    }
    let ap = &sol.ansatz;
    let kappa = sol.channel.kappa() as f64;
    let poly = coeffs.a.iter().rev().fold(0.0, |acc, &c| acc * r + c);
    let dpoly = (1..coeffs.a.len())
        .rev()
        .fold(0.0, |acc, k| acc * r + k as f64 * coeffs.a[k]);
    let bracket = (ap.delta - kappa) * poly + r * dpoly + (ap.p * r + ap.q) * r * poly;
    Ok((0.5 * ap.p * r * r + ap.q * r).exp() * r.powf(ap.delta - 1.0) * bracket / denom)
}

/// Radial grid and sampling controls for `build_wavefunction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    /// Innermost radius, fm.
    pub r_min: f64,
    /// Number of samples; forced odd for Simpson quadrature.
    pub points: usize,
    /// The outer radius is placed where p r^2/2 + q r reaches this value.
    pub exponent_cut: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            points: 4001,
            exponent_cut: -40.0,
        }
    }
}

/// Sampled, normalized two-component spinor on a uniform radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWavefunction {
    /// Ascending radii, fm.
    pub grid: Vec<f64>,
    /// Lower-component samples (normalized).
    pub g: Vec<f64>,
    /// Upper-component samples (normalized).
    pub f: Vec<f64>,
    /// Normalization constant: samples are norm * (raw series value with a_0 = 1).
    pub norm: f64,
    /// Sign changes of G on the grid.
    pub node_count_g: usize,
}

impl RadialWavefunction {
    /// Composite Simpson quadrature of F^2 + G^2 over the stored grid.
    pub fn quadrature_norm(&self) -> f64 {
        simpson(&self.grid, |i| {
            self.f[i] * self.f[i] + self.g[i] * self.g[i]
        })
    }
}

fn simpson(grid: &[f64], f: impl Fn(usize) -> f64) -> f64 {
    let n = grid.len();
    debug_assert!(n >= 3 && n % 2 == 1);
    let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    let mut acc = f(0) + f(n - 1);
    for i in 1..n - 1 {
        acc += if i % 2 == 1 { 4.0 * f(i) } else { 2.0 * f(i) };
    }
    acc * h / 3.0
}

fn count_sign_changes(values: &[f64]) -> usize {
    let floor = values.iter().fold(0.0_f64, |m, v| m.max(v.abs())) * 1e-12;
    let mut changes = 0;
    let mut prev = 0.0_f64;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        if prev != 0.0 && (v < 0.0) != (prev < 0.0) {
            changes += 1;
        }
        prev = v;
    }
    changes
}

/// Sample, normalize and node-count the spinor of a terminating solution.
///
/// The polynomial degree is taken from the solution's channel (n = n_r + 1
/// working convention); the series is recomputed and its termination is
/// verified before any sampling, since a non-terminating series cannot be
/// evaluated against the Gaussian damping without catastrophic cancellation.
pub fn build_wavefunction(
    sol: &QuasiExactSolution,
    pot: &PotentialParams,
    phys: &PhysicalParams,
    grid_cfg: &GridConfig,
) -> Result<RadialWavefunction> {
    let n_r = (sol.channel.n() - 1).max(0) as usize;
    let pot_b = pot.with_b(sol.b_solved);
    let co = canonical_coefficients(&pot_b, phys, &sol.channel, sol.e);
    let all = coefficients(&sol.ansatz, &co, n_r + 6)?;
    let (terminated, trail) = termination_check(&all, n_r, 6);
    if !terminated {
        return Err(Error::UnsupportedRegime(format!(
            "wavefunction sampling needs a terminating series; trailing coefficient {trail} at degree {n_r}"
        )));
    }
    // evaluate the clean degree-n_r polynomial
    let coeffs = SeriesCoefficients {
        a: all.a[..=n_r].to_vec(),
        x_factors: all.x_factors[..=n_r].to_vec(),
        y_factors: all.y_factors[..=n_r].to_vec(),
        z_factors: all.z_factors[..=n_r].to_vec(),
    };

    let (p, q) = (sol.ansatz.p, sol.ansatz.q);
    // outer radius where the exponent p r^2/2 + q r hits the cut
    let half_p = 0.5 * p;
    let disc = q * q - 4.0 * half_p * (-grid_cfg.exponent_cut);
    let r_cut = (-q - disc.sqrt()) / (2.0 * half_p);
    if !r_cut.is_finite() || r_cut <= grid_cfg.r_min {
        return Err(Error::UnsupportedRegime(format!(
            "no decaying exponent cut (p = {p}, q = {q})"
        )));
    }

    let points = if grid_cfg.points.is_multiple_of(2) {
        grid_cfg.points + 1
    } else {
        grid_cfg.points
    }
    .max(5);
    let h = (r_cut - grid_cfg.r_min) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| grid_cfg.r_min + i as f64 * h).collect();

    let mut g = Vec::with_capacity(points);
    let mut f = Vec::with_capacity(points);
    for &r in &grid {
        let gv = eval_g(sol, &coeffs, r);
        let fv = eval_f(sol, &coeffs, phys, r)?;
        if !gv.is_finite() || !fv.is_finite() {
            return Err(Error::NumericOverflow { r });
        }
        g.push(gv);
        f.push(fv);
    }

    let raw = simpson(&grid, |i| f[i] * f[i] + g[i] * g[i]);
    if !(raw.is_finite() && raw > 0.0) {
        return Err(Error::NumericOverflow { r: r_cut });
    }
    let norm = 1.0 / raw.sqrt();
    for v in g.iter_mut().chain(f.iter_mut()) {
        *v *= norm;
    }
    let node_count_g = count_sign_changes(&g);

    Ok(RadialWavefunction {
        grid,
        g,
        f,
        norm,
        node_count_g,
    })
}

/// Maximum relative grid residual of the coupled first-order system,
/// (d/dr + kappa/r) F = (M + E - Delta) G  and
/// (d/dr - kappa/r) G = (M - E + C_ps) F,
/// with derivatives from central differences on interior points. Returns
/// (residual of the F equation, residual of the G equation).
pub fn dirac_system_residual(
    wf: &RadialWavefunction,
    pot: &PotentialParams,
    phys: &PhysicalParams,
    kappa: i64,
    e: f64,
) -> (f64, f64) {
    let n = wf.grid.len();
    let h = (wf.grid[n - 1] - wf.grid[0]) / (n - 1) as f64;
    let kf = kappa as f64;
    let mut worst_a = 0.0_f64;
    let mut scale_a = 0.0_f64;
    let mut worst_b = 0.0_f64;
    let mut scale_b = 0.0_f64;
    for i in 1..n - 1 {
        let r = wf.grid[i];
        let df = (wf.f[i + 1] - wf.f[i - 1]) / (2.0 * h);
        let dg = (wf.g[i + 1] - wf.g[i - 1]) / (2.0 * h);
        let lhs_a = df + kf / r * wf.f[i];
        let rhs_a = (phys.mass + e - pot.delta_potential(r)) * wf.g[i];
        let lhs_b = dg - kf / r * wf.g[i];
        let rhs_b = (phys.mass - e + phys.c_ps) * wf.f[i];
        worst_a = worst_a.max((lhs_a - rhs_a).abs());
        scale_a = scale_a.max(lhs_a.abs()).max(rhs_a.abs());
        worst_b = worst_b.max((lhs_b - rhs_b).abs());
        scale_b = scale_b.max(lhs_b.abs()).max(rhs_b.abs());
    }
    (worst_a / scale_a.max(1e-300), worst_b / scale_b.max(1e-300))
}
