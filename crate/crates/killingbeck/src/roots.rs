//! Scalar bracketing refinement and a small damped Newton iteration.

/// Refine a root of `f` inside the sign-change bracket [lo, hi] by bisection
/// with secant acceleration. The returned abscissa always lies inside a
/// sign-change bracket of `f` (bracket-preserving); iteration stops once the
/// bracket width drops below `tol_x`.
pub fn refine_bracketed<F>(mut lo: f64, mut hi: f64, f: F, tol_x: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    debug_assert!(
        f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0),
        "refine_bracketed called without a sign change"
    );
    if f_lo == 0.0 {
        return lo;
    }
    if f_hi == 0.0 {
        return hi;
    }

    for _ in 0..200 {
        if (hi - lo).abs() < tol_x {
            break;
        }
        // secant candidate, fall back to bisection when it leaves the bracket
        let mid = 0.5 * (lo + hi);
        let mut x = if f_hi != f_lo {
            hi - f_hi * (hi - lo) / (f_hi - f_lo)
        } else {
            mid
        };
        let margin = 0.1 * (hi - lo);
        if !x.is_finite() || x <= lo + margin * 0.0 || x >= hi || x <= lo {
            x = mid;
        }
        // keep the step from stagnating at an endpoint
        if (x - lo).min(hi - x) < 1e-3 * (hi - lo) {
            x = mid;
        }
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
    // midpoint of the final bracket
    if f_lo.abs() <= f_hi.abs() {
        lo
    } else {
        hi
    }
}

/// Best iterate of a failed solve: the point and its residual norm.
pub type BestIterate = ([f64; 2], f64);

/// One damped Newton solve of a 2x2 system with forward-difference Jacobian.
/// Returns (x, norm_inf of F at x, iterations) on convergence and Err with the
/// best iterate otherwise.
pub fn newton2<F>(
    f: F,
    mut x: [f64; 2],
    tol: f64,
    max_iter: usize,
) -> Result<([f64; 2], f64, usize), BestIterate>
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let norm = |v: [f64; 2]| v[0].abs().max(v[1].abs());
    let mut fx = f(x);
    let mut best = (x, norm(fx));

    for it in 0..max_iter {
        let n0 = norm(fx);
        if n0 < best.1 {
            best = (x, n0);
        }
        if n0 <= tol {
            return Ok((x, n0, it));
        }
        // forward-difference Jacobian
        let mut jac = [[0.0_f64; 2]; 2];
        for j in 0..2 {
            let h = 1e-7 * x[j].abs().max(1e-9);
            let mut xp = x;
            xp[j] += h;
            let fp = f(xp);
            jac[0][j] = (fp[0] - fx[0]) / h;
            jac[1][j] = (fp[1] - fx[1]) / h;
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            return Err(best);
        }
        let dx = [
            (fx[0] * jac[1][1] - fx[1] * jac[0][1]) / det,
            (fx[1] * jac[0][0] - fx[0] * jac[1][0]) / det,
        ];
        // damping: halve the step until the residual norm decreases
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = [x[0] - lambda * dx[0], x[1] - lambda * dx[1]];
            let ft = f(trial);
            if ft[0].is_finite() && ft[1].is_finite() && norm(ft) < n0 {
                x = trial;
                fx = ft;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(best);
        }
    }
    let nf = norm(fx);
    if nf <= tol {
        Ok((x, nf, max_iter))
    } else {
        Err(if nf < best.1 { (x, nf) } else { best })
    }
}
