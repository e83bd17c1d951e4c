//! Least-squares helpers for growth-exponent estimation: plain line fits,
//! sliding-window slopes of log-log curves, and geometric time grids.

use crate::error::{Error, Result};

/// An ordinary least-squares line `y = slope · x + intercept`.
#[derive(Clone, Copy, Debug)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope (`NaN` with fewer than 3 points).
    pub slope_se: f64,
}

/// Fit a line through `(xs[i], ys[i])` by ordinary least squares.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("mismatched fit input lengths".into()));
    }
    if xs.len() < 2 {
        return Err(Error::InvalidArgument("line fit needs at least 2 points".into()));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("line fit needs finite inputs".into()));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("line fit needs at least 2 distinct x".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let slope_se = if xs.len() >= 3 {
        let rss: f64 = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
            .sum();
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    Ok(LineFit { slope, intercept, slope_se })
}

/// Slopes of least-squares lines over each window of `window` consecutive
/// points, in grid order.
pub fn windowed_slopes(xs: &[f64], ys: &[f64], window: usize) -> Result<Vec<f64>> {
    if window < 2 {
        return Err(Error::InvalidArgument("slope window needs at least 2 points".into()));
    }
    if xs.len() < window {
        return Err(Error::InvalidArgument(format!(
            "grid of {} points is shorter than the window of {window}",
            xs.len()
        )));
    }
    (0..=xs.len() - window)
        .map(|i| Ok(fit_line(&xs[i..i + window], &ys[i..i + window])?.slope))
        .collect()
}

/// Ascending geometric grid from `t_min` to `t_max` with `per_decade`
/// logarithmically equispaced points per factor of ten (duplicates after
/// rounding are dropped; both endpoints are included).
pub fn geometric_grid(t_min: u64, t_max: u64, per_decade: u32) -> Result<Vec<u64>> {
    if t_min == 0 || t_max < t_min {
        return Err(Error::InvalidArgument(
            "geometric grid needs 1 <= t_min <= t_max".into(),
        ));
    }
    if per_decade == 0 {
        return Err(Error::InvalidArgument("grid density must be positive".into()));
    }
    let ratio = 10f64.powf(1.0 / per_decade as f64);
    let mut grid = Vec::new();
    let mut value = t_min as f64;
    while (value as u64) < t_max {
        let t = value.round() as u64;
        if grid.last() != Some(&t) {
            grid.push(t);
        }
        value *= ratio;
    }
    if grid.last() != Some(&t_max) {
        grid.push(t_max);
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_is_recovered() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let fit = fit_line(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!(fit.slope_se.abs() < 1e-9);
    }

    #[test]
    fn noisy_fit_matches_hand_computation() {
        // Points (0,0), (1,1), (2,1): slope = 1/2, intercept = 1/6.
        let fit = fit_line(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.0]).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12);
        assert!((fit.intercept - 1.0 / 6.0).abs() < 1e-12);
        assert!(fit.slope_se > 0.0);
    }

    #[test]
    fn degenerate_fits_are_rejected() {
        assert!(fit_line(&[1.0], &[1.0]).is_err());
        assert!(fit_line(&[1.0, 1.0], &[1.0, 2.0]).is_err());
        assert!(fit_line(&[1.0, 2.0], &[1.0]).is_err());
        assert!(fit_line(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn windowed_slopes_track_local_behavior() {
        // Piecewise: slope 1 over the first three points, 0 over the last
        // three.
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let ys = [0.0, 1.0, 2.0, 2.0, 2.0];
        let slopes = windowed_slopes(&xs, &ys, 3).unwrap();
        assert_eq!(slopes.len(), 3);
        assert!((slopes[0] - 1.0).abs() < 1e-12);
        assert!((slopes[2] - 0.0).abs() < 1e-12);
        assert!(slopes[1] > 0.0 && slopes[1] < 1.0);
        assert!(windowed_slopes(&xs, &ys, 1).is_err());
        assert!(windowed_slopes(&xs[..2], &ys[..2], 3).is_err());
    }

    #[test]
    fn geometric_grids_are_ascending_and_inclusive() {
        let grid = geometric_grid(10, 10_000, 4).unwrap();
        assert_eq!(grid.first(), Some(&10));
        assert_eq!(grid.last(), Some(&10_000));
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        // 4 per decade over 3 decades: about 13 points.
        assert!(grid.len() >= 12 && grid.len() <= 14, "got {}", grid.len());

        assert_eq!(geometric_grid(5, 5, 8).unwrap(), vec![5]);
        assert!(geometric_grid(0, 10, 4).is_err());
        assert!(geometric_grid(10, 5, 4).is_err());
    }
}
