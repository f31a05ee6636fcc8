//! Tail-bound helper functions used to size sample counts.

use crate::error::{Error, Result};
use num_traits::Float;

fn check<F: Float>(x: F) -> Result<()> {
    if x > F::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Chernoff helper needs x > 0, got {}",
            x.to_f64().unwrap_or(f64::NAN)
        )))
    }
}

/// `exp(-x^2 / 2)`, the lower-tail bound base.
pub fn g1<F: Float>(x: F) -> Result<F> {
    check(x)?;
    let two = F::one() + F::one();
    Ok((-(x * x) / two).exp())
}

/// `e^x / (1 + x)^(1 + x)`, the upper-tail bound base.
///
/// Evaluated in log space so large `x` does not overflow.
pub fn g2<F: Float>(x: F) -> Result<F> {
    check(x)?;
    let one = F::one();
    Ok((x - (one + x) * x.ln_1p()).exp())
}

/// `max(g1(x), g2(x))`.
pub fn g<F: Float>(x: F) -> Result<F> {
    Ok(g1(x)?.max(g2(x)?))
}

/// `ln(1 / g(x))`, computed without forming `g(x)` so it stays accurate
/// when `g(x)` rounds to 1.
pub fn neg_ln_g(x: f64) -> Result<f64> {
    check(x)?;
    let l1 = x * x / 2.0;
    let l2 = (1.0 + x) * x.ln_1p() - x;
    Ok(l1.min(l2))
}
