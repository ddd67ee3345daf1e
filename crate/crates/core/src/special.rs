//! Small combinatorial helpers shared by the amplitude formulas.

/// ln(n!) by direct summation; exact enough for the index ranges used here.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// ln((n)!!) with the convention (-1)!! = 0!! = 1.
pub fn ln_double_factorial(n: i64) -> f64 {
    let mut acc = 0.0;
    let mut k = n;
    while k > 1 {
        acc += (k as f64).ln();
        k -= 2;
    }
    acc
}

/// (n)!! as a float, with (-1)!! = 1.
pub fn double_factorial(n: i64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// The scaled step function: 1/2 for even arguments, 0 for odd ones.
pub fn parity_step(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        0.5
    } else {
        0.0
    }
}

/// Physicists' Hermite polynomials H_0..=H_n at `y`.
pub fn hermite_all(n: usize, y: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(1.0);
    if n >= 1 {
        h.push(2.0 * y);
    }
    for j in 1..n {
        let next = 2.0 * y * h[j] - 2.0 * j as f64 * h[j - 1];
        h.push(next);
    }
    h
}

/// Evenly spaced grid of `points` values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (points - 1) as f64;
            (0..points)
                .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}
