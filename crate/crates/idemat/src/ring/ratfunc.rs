//! Rational functions num/den over a field K, kept reduced (gcd 1) with a
//! monic denominator. These arise internally when a rank computation over
//! K[x] or ℤ[x] needs a field: matrices embed into K(x) and Gaussian
//! elimination proceeds there.

use super::upoly::{self, UPoly};
use super::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub(crate) num: UPoly,
    pub(crate) den: UPoly,
}

impl RatFunc {
    pub fn zero(base: &Ring) -> RatFunc {
        RatFunc::from_poly(base, UPoly::zero())
    }

    /// p/1. The canonical injection K[x] → K(x).
    pub fn from_poly(base: &Ring, num: UPoly) -> RatFunc {
        RatFunc {
            num,
            den: UPoly::constant(base.one()),
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    /// Build and canonicalize: divide out the gcd, make the denominator
    /// monic. Errors when den = 0.
    pub fn new(base: &Ring, num: UPoly, den: UPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(base));
        }
        let g = upoly::gcd_monic(base, &num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            let (qn, _) = upoly::div_rem(base, &num, &g)?;
            let (qd, _) = upoly::div_rem(base, &den, &g)?;
            (qn, qd)
        };
        let (lc, den) = upoly::make_monic(base, &den);
        let lc_inv = base.inv(&lc)?;
        let num = num.map_coeffs(&|c| base.mul(c, &lc_inv));
        Ok(RatFunc { num, den })
    }

    pub(super) fn is_reduced(&self, base: &Ring) -> bool {
        if self.den.is_zero() {
            return false;
        }
        if !base.is_one(self.den.leading_coeff().unwrap()) {
            return false;
        }
        if self.num.is_zero() {
            return self.den.degree() == Some(0);
        }
        let g = upoly::gcd_monic(base, &self.num, &self.den);
        g.degree() == Some(0)
    }
}

pub(super) fn add(base: &Ring, a: &RatFunc, b: &RatFunc) -> RatFunc {
    let num = upoly::add(
        base,
        &upoly::mul(base, &a.num, &b.den),
        &upoly::mul(base, &b.num, &a.den),
    );
    let den = upoly::mul(base, &a.den, &b.den);
    RatFunc::new(base, num, den).expect("nonzero denominator product")
}

pub(super) fn neg(base: &Ring, a: &RatFunc) -> RatFunc {
    RatFunc {
        num: upoly::neg(base, &a.num),
        den: a.den.clone(),
    }
}

pub(super) fn mul(base: &Ring, a: &RatFunc, b: &RatFunc) -> RatFunc {
    let num = upoly::mul(base, &a.num, &b.num);
    let den = upoly::mul(base, &a.den, &b.den);
    RatFunc::new(base, num, den).expect("nonzero denominator product")
}

pub(super) fn inv(base: &Ring, a: &RatFunc) -> Result<RatFunc> {
    if a.num.is_zero() {
        return Err(Error::DivisionByZero);
    }
    RatFunc::new(base, a.den.clone(), a.num.clone())
}

pub(super) fn format(base: &Ring, a: &RatFunc) -> String {
    if a.den.degree() == Some(0) {
        upoly::format(base, &a.num)
    } else {
        format!(
            "({})/({})",
            upoly::format(base, &a.num),
            upoly::format(base, &a.den)
        )
    }
}
