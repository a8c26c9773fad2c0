//! Brute-force numerical oracles used by the test suites.
//!
//! Everything here is deliberately independent of the main crate: the
//! projection oracle enumerates level-set partitions instead of running
//! an isotonic-regression algorithm, and the quadrature routine knows
//! nothing about closed-form antiderivatives. Slow, simple, checkable.

/// Weighted least-squares projection of `values` onto the cone
/// `{ z : z[i] <= z[j] for every (i, j) in pairs }`, found by exhaustive
/// search over all set partitions of the indices.
///
/// Any projection onto such a cone is constant on each of its level sets,
/// with the constant equal to the weighted mean of the level set, so the
/// minimizer is the feasible partition candidate with the smallest
/// weighted sum of squared errors.
///
/// Panics on inconsistent input lengths or non-positive weights; this is
/// test support, not production code.
pub fn qp_project(values: &[f64], weights: &[f64], pairs: &[(usize, usize)]) -> Vec<f64> {
    let k = values.len();
    assert_eq!(k, weights.len(), "values/weights length mismatch");
    assert!(k > 0, "empty input");
    assert!(weights.iter().all(|w| *w > 0.0), "weights must be positive");
    for &(i, j) in pairs {
        assert!(i < k && j < k, "constraint index out of range");
    }

    let mut best: Option<Vec<f64>> = None;
    let mut best_sse = f64::INFINITY;
    let mut fitted = vec![0.0; k];

    for_each_partition(k, &mut |assignment: &[usize]| {
        let blocks = assignment.iter().copied().max().unwrap() + 1;
        for b in 0..blocks {
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..k {
                if assignment[i] == b {
                    num += weights[i] * values[i];
                    den += weights[i];
                }
            }
            let mean = num / den;
            for i in 0..k {
                if assignment[i] == b {
                    fitted[i] = mean;
                }
            }
        }
        // Tight feasibility tolerance: genuinely feasible candidates violate
        // only by rounding in the block means (~1e-16 at unit scale).
        let feasible = pairs.iter().all(|&(i, j)| fitted[i] <= fitted[j] + 1e-12);
        if feasible {
            let sse: f64 = (0..k)
                .map(|i| weights[i] * (fitted[i] - values[i]).powi(2))
                .sum();
            if sse < best_sse {
                best_sse = sse;
                best = Some(fitted.clone());
            }
        }
    });

    best.expect("the all-in-one-block partition is always feasible")
}

/// Visit every set partition of `{0, .., n-1}` as a restricted growth
/// string (block id per element).
fn for_each_partition(n: usize, visit: &mut dyn FnMut(&[usize])) {
    let mut assignment = vec![0usize; n];
    fn rec(
        i: usize,
        max_used: usize,
        assignment: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let n = assignment.len();
        if i == n {
            visit(assignment);
            return;
        }
        for b in 0..=(max_used + 1) {
            assignment[i] = b;
            rec(i + 1, max_used.max(b), assignment, visit);
        }
    }
    if n == 0 {
        return;
    }
    assignment[0] = 0;
    rec(1, 0, &mut assignment, visit);
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    simpson_rec(f, a, b, fa, fm, fb, simpson_rule(a, b, fa, fm, fb), tol, 60)
}

fn simpson_rule(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(a, m, fa, flm, fm);
    let right = simpson_rule(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}
