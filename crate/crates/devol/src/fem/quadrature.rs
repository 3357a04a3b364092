//! Gauss–Legendre quadrature on [-1, 1] and its tensor products.

/// A quadrature point: coordinate in the reference interval and weight.
#[derive(Clone, Copy, Debug)]
pub struct GaussPoint {
    pub xi: f64,
    pub w: f64,
}

/// Gauss–Legendre points for any order n ≥ 1, via Newton iteration on the
/// Legendre polynomial from the Chebyshev-based initial guess.  Orders 1–3
/// are what the element rules use; higher orders serve as reference rules in
/// tests, which is why this is general instead of a two-entry table.
pub fn gauss_legendre(n: usize) -> Vec<GaussPoint> {
    assert!(n >= 1);
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        // Initial guess: Chebyshev node, accurate enough for Newton from n=1.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        pts.push(GaussPoint {
            xi: -x, // cos ordering is descending; flip so points ascend in xi
            w: 2.0 / ((1.0 - x * x) * dp * dp),
        });
    }
    pts
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (p0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x² - 1)
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Tensor-product rule over the reference square or cube: each point is
/// (coords, weight) with `dim` coordinates.
pub fn tensor_rule(order: usize, dim: usize) -> Vec<(Vec<f64>, f64)> {
    let line = gauss_legendre(order);
    match dim {
        2 => {
            let mut out = Vec::with_capacity(order * order);
            for a in &line {
                for b in &line {
                    out.push((vec![a.xi, b.xi], a.w * b.w));
                }
            }
            out
        }
        3 => {
            let mut out = Vec::with_capacity(order * order * order);
            for a in &line {
                for b in &line {
                    for c in &line {
                        out.push((vec![a.xi, b.xi, c.xi], a.w * b.w * c.w));
                    }
                }
            }
            out
        }
        _ => panic!("tensor_rule supports dim 2 or 3"),
    }
}
