//! Small numerical helpers: root scanning with bisection and the smallest
//! singular value of a 2x3 Jacobian.

/// Roots of `f` on `[lo, hi]` located by sign scanning on a uniform grid and
/// bisection refinement. Grid points where `f` vanishes to rounding are taken
/// as roots directly. Tangential (non-sign-changing) roots between grid
/// points are not found; callers choose the grid density accordingly.
pub fn find_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, grid: usize, tol: f64) -> Vec<f64> {
    assert!(grid >= 2 && hi > lo);
    let mut roots: Vec<f64> = Vec::new();
    let step = (hi - lo) / grid as f64;
    let mut push = |r: f64| {
        if !roots
            .iter()
            .any(|&x: &f64| (x - r).abs() <= 10.0 * tol.max(1e-13))
        {
            roots.push(r);
        }
    };
    let mut a = lo;
    let mut fa = f(a);
    for k in 1..=grid {
        let b = lo + k as f64 * step;
        let fb = f(b);
        if fa == 0.0 {
            push(a);
        } else if fa * fb < 0.0 {
            push(bisect(&f, a, b, fa, tol));
        }
        a = b;
        fa = fb;
    }
    if fa == 0.0 {
        push(a);
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Smallest singular value of a 2x3 matrix, via the eigenvalues of the 2x2
/// Gram matrix `J J^T`.
pub fn sigma_min_2x3(j: &[[f64; 3]; 2]) -> f64 {
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let g11 = dot(&j[0], &j[0]);
    let g12 = dot(&j[0], &j[1]);
    let g22 = dot(&j[1], &j[1]);
    let trace = g11 + g22;
    let det = g11 * g22 - g12 * g12;
    let disc = (trace * trace / 4.0 - det).max(0.0).sqrt();
    let lam_min = (trace / 2.0 - disc).max(0.0);
    lam_min.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let roots = find_roots(|x| (x - 1.0) * (x + 2.0), -5.0, 5.0, 1000, 1e-12);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 2.0).abs() < 1e-10);
        assert!((roots[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn no_roots_for_positive_function() {
        let roots = find_roots(|x| x * x + 1.0, -3.0, 3.0, 100, 1e-12);
        assert!(roots.is_empty());
    }

    #[test]
    fn sigma_min_of_rank_one_matrix_vanishes() {
        let j = [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]];
        assert!(sigma_min_2x3(&j) < 1e-12);
    }

    #[test]
    fn sigma_min_of_orthonormal_rows_is_one() {
        let j = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        assert!((sigma_min_2x3(&j) - 1.0).abs() < 1e-14);
    }
}
