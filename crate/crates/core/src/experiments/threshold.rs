use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `(ln n + (r − 1) ln ln n) / n`, the edge probability at which minimum
/// degree r, r-connectivity and r-robustness all appear in G(n, p).
pub fn threshold_p<T: Scalar>(n: usize, r: usize) -> Result<T> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "threshold needs n >= 3 so that ln ln n > 0, got {n}"
        )));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let nn = T::of(n as f64);
    let ln = nn.ln();
    Ok((ln + T::of((r - 1) as f64) * ln.ln()) / nn)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_one_is_log_over_n() {
        for n in [3, 10, 1000] {
            let t: f64 = threshold_p(n, 1).unwrap();
            assert_eq!(t, (n as f64).ln() / n as f64);
        }
        assert!(threshold_p::<f64>(2, 1).is_err());
    }

    #[test]
    fn single_precision() {
        let t: f32 = threshold_p(1000, 2).unwrap();
        assert!((t - 0.008_840_4).abs() < 1e-6);
    }
}
