//! Exact expected range on the three families where it is tractable.
//!
//! On a vertex-transitive graph the last-visit decomposition turns the
//! expected range into a sum of no-return probabilities,
//! `E[R_t] = sum_{m=0..t} P(no return to the start within m steps)`:
//! count each vertex at the last time it is occupied; the walk after that
//! time never returns to it, and by transitivity plus the Markov property
//! that probability depends only on the remaining time. This powers the
//! line (no-return probabilities are central binomials) and the regular
//! tree (no-return probabilities from the radial birth-death lumping).
//!
//! The ray is not transitive, but its range is determined by the maximum:
//! the occupied set is always the interval `[0, max]`, so
//! `E[R_t] = 1 + sum_{m>=1} P(reach m by time t)`, each term an absorbing
//! dynamic program. Levels far beyond `sqrt(t)` are truncated with an
//! explicit, certified tail bound.

use crate::error::{Error, Result};

/// No-return probabilities on the line: `q_m = P(walk avoids its start
/// during steps 1..=m)`. `q_{2k} = q_{2k+1} = C(2k, k) / 4^k`.
pub fn line_no_return_curve(t: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(t as usize + 1);
    let mut c = 1.0f64; // C(2k,k)/4^k at k = 0
    out.push(1.0);
    for m in 1..=t {
        if m % 2 == 0 {
            let k = (m / 2) as f64;
            c *= (2.0 * k - 1.0) / (2.0 * k);
        }
        out.push(c);
    }
    out
}

/// Exact `E[R_t]` on the line.
pub fn line_expected_range(t: u64) -> f64 {
    line_no_return_curve(t).iter().sum()
}

/// No-return probabilities on the `d`-regular tree, from the radial
/// birth-death chain with an absorbing start.
pub fn tree_no_return_curve(d: u64, t: u64) -> Vec<f64> {
    let len = t as usize + 2;
    let mut mass = vec![0.0f64; len];
    let mut next = vec![0.0f64; len];
    let mut out = Vec::with_capacity(t as usize + 1);
    out.push(1.0); // q_0 = 1
    if t == 0 {
        return out;
    }
    mass[1] = 1.0; // after the first step the walk sits at distance 1
    out.push(1.0); // q_1 = 1: no return is possible in one step
    let down = 1.0 / d as f64;
    let up = 1.0 - down;
    for s in 2..=t as usize {
        next[..=s].iter_mut().for_each(|x| *x = 0.0);
        for k in 1..s {
            let m = mass[k];
            if m == 0.0 {
                continue;
            }
            if k > 1 {
                next[k - 1] += m * down;
            }
            // Mass moving from distance 1 to 0 is absorbed (the walk returned).
            next[k + 1] += m * up;
        }
        std::mem::swap(&mut mass, &mut next);
        out.push(mass[1..=s].iter().sum());
    }
    out
}

/// Exact `E[R_t]` on the `d`-regular tree (`O(t^2)`, capped at `t <= 30000`).
pub fn tree_expected_range(d: u64, t: u64) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidArgument("tree degree must be >= 3".into()));
    }
    if t > 30_000 {
        return Err(Error::WorkCapExceeded { units: (t as u128).pow(2), cap: 900_000_000 });
    }
    Ok(tree_no_return_curve(d, t).iter().sum())
}

/// Probability that the `d`-regular tree walk never returns to its start.
pub fn tree_escape_probability(d: u64) -> f64 {
    (d as f64 - 2.0) / (d as f64 - 1.0)
}

/// `E[R_t]` on any vertex-transitive graph, given its no-return curve.
pub fn transitive_range_from_no_return(q: &[f64]) -> f64 {
    q.iter().sum()
}

/// Exact `E[R_t]` on the ray (walk started at the endpoint).
///
/// `R_t = 1 + max position`, and `P(reach m by t)` is computed level by
/// level with an absorbing boundary at `m`. Levels stop once a term drops
/// below 1e-15; the remaining analytic tail (`P(reach m) <= 4 exp(-m^2/2t)`,
/// by the reflection coupling with the line and a Hoeffding bound) must be
/// below 1e-9 or an error is returned. Capped at `t <= 10000`.
pub fn ray_expected_range(t: u64) -> Result<f64> {
    if t > 10_000 {
        return Err(Error::WorkCapExceeded {
            units: 28 * (t as u128).pow(2),
            cap: 28 * 100_000_000,
        });
    }
    if t == 0 {
        return Ok(1.0);
    }
    let mut total = 1.0f64; // the start itself
    let t_usize = t as usize;
    let mut m = 1u64;
    loop {
        if m > t {
            return Ok(total); // cannot reach farther than t in t steps
        }
        let p_reach = ray_reach_probability(m as usize, t_usize);
        total += p_reach;
        if p_reach < 1e-15 {
            // Remaining tail: sum_{j > m} P(reach j by t) <= sum 4 e^{-j^2/2t}.
            let tail = analytic_reach_tail(m + 1, t);
            if tail > 1e-9 {
                return Err(Error::ResidualTooLarge { residual: tail, tol: 1e-9 });
            }
            return Ok(total);
        }
        m += 1;
    }
}

/// `P(ray walk reaches position m within t steps)` by an absorbing DP on
/// `0..m`. The absorbed mass is accumulated directly so tiny probabilities
/// are not lost to cancellation.
fn ray_reach_probability(m: usize, t: usize) -> f64 {
    debug_assert!(m >= 1);
    let mut mass = vec![0.0f64; m];
    let mut next = vec![0.0f64; m];
    mass[0] = 1.0;
    let mut absorbed = 0.0f64;
    for _s in 0..t {
        next.iter_mut().for_each(|x| *x = 0.0);
        // Position 0 steps to 1 surely (or absorbs if m == 1).
        if m == 1 {
            absorbed += mass[0];
        } else {
            next[1] += mass[0];
        }
        for k in 1..m {
            let w = mass[k];
            if w == 0.0 {
                continue;
            }
            next[k - 1] += 0.5 * w;
            if k + 1 == m {
                absorbed += 0.5 * w;
            } else {
                next[k + 1] += 0.5 * w;
            }
        }
        std::mem::swap(&mut mass, &mut next);
    }
    absorbed
}

/// Upper bound on `sum_{j >= from} P(reach j by t)` via
/// `P <= 4 exp(-j^2 / 2t)` and an integral comparison.
fn analytic_reach_tail(from: u64, t: u64) -> f64 {
    let t = t as f64;
    let x = from as f64;
    // sum_{j >= x} e^{-j^2/2t} <= e^{-x^2/2t} * (1 + t/x)
    4.0 * (-x * x / (2.0 * t)).exp() * (1.0 + t / x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_range_small_horizons() {
        // Enumerating the 2^t sign paths gives 1, 2, 2.5, 3.
        assert!((line_expected_range(0) - 1.0).abs() < 1e-12);
        assert!((line_expected_range(1) - 2.0).abs() < 1e-12);
        assert!((line_expected_range(2) - 2.5).abs() < 1e-12);
        assert!((line_expected_range(3) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn line_no_return_matches_return_probability_identity() {
        // q_{2k} equals the return probability P(X_{2k} = 0): both are the
        // normalized central binomial.
        let q = line_no_return_curve(8);
        assert!((q[2] - 0.5).abs() < 1e-12);
        assert!((q[4] - 0.375).abs() < 1e-12);
        assert!((q[6] - 0.3125).abs() < 1e-12);
        assert!((q[8] - 35.0 / 128.0).abs() < 1e-12);
    }

    #[test]
    fn tree_range_small_horizons() {
        // d = 3: E[R_0] = 1, E[R_1] = 2, E[R_2] = 2 + 2/3.
        assert!((tree_expected_range(3, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((tree_expected_range(3, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((tree_expected_range(3, 2).unwrap() - (2.0 + 2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn tree_no_return_approaches_escape_probability() {
        for d in [3u64, 4, 6] {
            let q = tree_no_return_curve(d, 400);
            let limit = tree_escape_probability(d);
            let last = *q.last().unwrap();
            assert!(last > limit, "q_t must stay above the escape probability");
            assert!(last - limit < 0.02, "d={d}: q_400 = {last}, limit {limit}");
        }
    }

    #[test]
    fn tree_no_return_consistent_with_return_curve() {
        // 1 - q_m = P(return by m) = sum of first-return masses; compare with
        // the independent occupancy lumping: P(return by m) >= p_m(root,root)
        // ... exact identity checked via first-return decomposition:
        // p_ret_cdf from the return curve with renewal stripping is overkill;
        // instead check q is nonincreasing and agrees at small m by hand.
        let q = tree_no_return_curve(3, 6);
        assert_eq!(q.len(), 7);
        assert!((q[2] - 2.0 / 3.0).abs() < 1e-12);
        // No return by 3 = no return by 2 (parity).
        assert!((q[3] - q[2]).abs() < 1e-12);
        assert!(q.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        // Cross-check against the truncated occupancy evolution: P(return at
        // exactly 2) = 1/3 and the first-return renewal at time 4 gives
        // q_4 = 1 - 1/3 - first_return(4). first_return(4) = P(X_2 != 0,
        // X_4 = 0 first time) = up-up-down-down over the tree = (2/3)*(1/3)*
        // (1/3)... compute: paths 1->2->1->0 with probs (2/3)(1/3)(1/3) = 2/27.
        assert!((q[4] - (1.0 - 1.0 / 3.0 - 2.0 / 27.0)).abs() < 1e-12);
    }

    #[test]
    fn ray_range_small_horizons() {
        // t = 1: always reach 1 -> E[R_1] = 2. t = 2: reach 2 with prob 1/2
        // -> E[R_2] = 2.5. t = 3: reach 2 with prob 1/2 + reach 3 with 1/4...
        // paths: RRR (3), RRL (2), RLR (1), RLL (1): E[max] = (3+2+1+1)/4 =
        // 7/4, E[R_3] = 11/4.
        assert!((ray_expected_range(0).unwrap() - 1.0).abs() < 1e-12);
        assert!((ray_expected_range(1).unwrap() - 2.0).abs() < 1e-12);
        assert!((ray_expected_range(2).unwrap() - 2.5).abs() < 1e-12);
        assert!((ray_expected_range(3).unwrap() - 2.75).abs() < 1e-12);
    }

    #[test]
    fn ray_range_grows_like_sqrt() {
        let r100 = ray_expected_range(100).unwrap();
        let r400 = ray_expected_range(400).unwrap();
        // Doubling the time scale by 4 should double the range, roughly.
        let ratio = (r400 - 1.0) / (r100 - 1.0);
        assert!((1.8..=2.2).contains(&ratio), "ratio {ratio}");
    }
}
