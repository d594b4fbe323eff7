//! Counting idempotents over 𝔽_q: Gaussian binomials and the layer-count
//! formula |𝒮ⁿ_r(q)| = [n r]_q · q^{r(n−r)}, evaluated exactly.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;

/// Parameters (n, r, q) of one rank layer, validated once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QCount {
    n: u32,
    r: u32,
    q: u64,
}

impl QCount {
    pub fn new(n: u32, r: u32, q: u64) -> Result<QCount> {
        if r > n {
            return Err(Error::InvalidArgument(format!("r = {r} exceeds n = {n}")));
        }
        if q < 2 {
            return Err(Error::InvalidArgument(format!(
                "q = {q} must be at least 2"
            )));
        }
        Ok(QCount { n, r, q })
    }

    /// The Gaussian binomial [n r]_q: the number of r-dimensional subspaces
    /// of 𝔽_qⁿ. Computed as ∏_{i=0}^{r−1} (q^{n−i}−1) / ∏_{i=0}^{r−1} (q^{i+1}−1),
    /// one exact division at the end.
    pub fn gaussian(&self) -> BigInt {
        let q = BigInt::from(self.q);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..self.r {
            num *= q.pow(self.n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
        debug_assert!(
            num_traits::Zero::is_zero(&rem),
            "gaussian binomial is integral"
        );
        quot
    }

    /// The number of rank-r idempotents in M_n(𝔽_q).
    pub fn idempotent_count(&self) -> BigInt {
        let q = BigInt::from(self.q);
        self.gaussian() * q.pow(self.r * (self.n - self.r))
    }
}

/// [n r]_q as an exact integer. Errors when r > n or q < 2.
pub fn gaussian_binomial(n: u32, r: u32, q: u64) -> Result<BigInt> {
    Ok(QCount::new(n, r, q)?.gaussian())
}

/// |𝒮ⁿ_r(q)| = [n r]_q · q^{r(n−r)}. Errors when r > n or q < 2.
pub fn idempotent_count(n: u32, r: u32, q: u64) -> Result<BigInt> {
    Ok(QCount::new(n, r, q)?.idempotent_count())
}
