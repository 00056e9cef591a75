//! One-dimensional maximization: dense grid followed by golden-section
//! refinement on the cell around the best grid point.

const INV_PHI: f64 = 0.618_033_988_749_894_8;
const GOLDEN_MAX_ITER: usize = 200;

/// Maximum of `f` on `[lo, hi]` as `(argmax, value)`.
///
/// The grid has `grid_points` nodes including both endpoints. Golden-section
/// search then runs on the two cells adjacent to the best node, and the
/// better of the refined point and the grid node is returned, so endpoint
/// maxima are found exactly.
pub fn maximize<F>(f: F, lo: f64, hi: f64, grid_points: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    assert!(lo <= hi, "empty search interval [{lo}, {hi}]");
    let n = grid_points.max(2) - 1;
    let h = (hi - lo) / n as f64;
    let node = |i: usize| if i == n { hi } else { lo + h * i as f64 };

    let (best_i, best_v) =
        (0..=n)
            .map(|i| (i, f(node(i))))
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
            );

    let a = node(best_i.saturating_sub(1));
    let b = node((best_i + 1).min(n));
    let (x, v) = golden_section(&f, a, b, 1e-13);
    if v > best_v {
        (x, v)
    } else {
        (node(best_i), best_v)
    }
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
pub fn golden_section<F>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_MAX_ITER {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_parabola() {
        let (x, v) = maximize(|x| -(x - 0.3141).powi(2) + 2.0, 0.0, 1.0, 101);
        assert!((x - 0.3141).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_maximum() {
        let (x, v) = maximize(|x| x, 0.0, 1.0, 11);
        assert_eq!(x, 1.0);
        assert_eq!(v, 1.0);
        let (x, _) = maximize(|x| -x, 0.0, 1.0, 11);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn golden_on_cosine() {
        let (x, v) = golden_section(f64::cos, -1.0, 2.0, 1e-12);
        assert!(x.abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }
}
