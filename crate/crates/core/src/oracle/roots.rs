use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `tol`.
pub fn find_root_bracketed(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo * f_hi < 0.0) {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo < tol || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let x = find_root_bracketed(|x| x - 0.3, 0.0, 1.0, 1e-14).unwrap();
        assert!((x - 0.3).abs() < 1e-14);
    }

    #[test]
    fn decreasing_function() {
        let x = find_root_bracketed(|x| 2.0 - x * x, 0.0, 3.0, 1e-13).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_same_sign() {
        assert!(matches!(
            find_root_bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn endpoint_roots() {
        assert_eq!(find_root_bracketed(|x| x, 0.0, 1.0, 1e-12).unwrap(), 0.0);
        assert_eq!(find_root_bracketed(|x| x - 1.0, 0.0, 1.0, 1e-12).unwrap(), 1.0);
    }
}
