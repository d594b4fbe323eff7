//! Univariate polynomials as sparse exponent → coefficient maps.
//! Coefficients live in the base ring passed to each operation; the maps
//! never store zero coefficients, so equality of maps is equality of
//! polynomials.

use super::{scalar_is_zero, Ring, Scalar};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: BTreeMap<usize, Scalar>,
}

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly::default()
    }

    pub fn constant(c: Scalar) -> UPoly {
        UPoly::monomial(0, c)
    }

    /// c·x^e (the zero polynomial when c = 0).
    pub fn monomial(e: usize, c: Scalar) -> UPoly {
        let mut coeffs = BTreeMap::new();
        if !scalar_is_zero(&c) {
            coeffs.insert(e, c);
        }
        UPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.values().next_back()
    }

    pub fn coeff(&self, e: usize) -> Option<&Scalar> {
        self.coeffs.get(&e)
    }

    /// (exponent, coefficient) pairs, ascending in exponent.
    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Apply a base-ring map to every coefficient, dropping any that land
    /// on zero.
    pub(crate) fn map_coeffs(&self, f: &dyn Fn(&Scalar) -> Scalar) -> UPoly {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let v = f(c);
            if !scalar_is_zero(&v) {
                coeffs.insert(*e, v);
            }
        }
        UPoly { coeffs }
    }
}

fn insert_add(base: &Ring, map: &mut BTreeMap<usize, Scalar>, e: usize, c: &Scalar) {
    match map.remove(&e) {
        None => {
            if !scalar_is_zero(c) {
                map.insert(e, c.clone());
            }
        }
        Some(old) => {
            let sum = base.add(&old, c);
            if !scalar_is_zero(&sum) {
                map.insert(e, sum);
            }
        }
    }
}

pub(super) fn add(base: &Ring, a: &UPoly, b: &UPoly) -> UPoly {
    let mut coeffs = a.coeffs.clone();
    for (e, c) in &b.coeffs {
        insert_add(base, &mut coeffs, *e, c);
    }
    UPoly { coeffs }
}

pub(super) fn neg(base: &Ring, a: &UPoly) -> UPoly {
    a.map_coeffs(&|c| base.neg(c))
}

pub(super) fn sub(base: &Ring, a: &UPoly, b: &UPoly) -> UPoly {
    add(base, a, &neg(base, b))
}

pub(super) fn mul(base: &Ring, a: &UPoly, b: &UPoly) -> UPoly {
    let mut coeffs = BTreeMap::new();
    for (ea, ca) in &a.coeffs {
        for (eb, cb) in &b.coeffs {
            insert_add(base, &mut coeffs, ea + eb, &base.mul(ca, cb));
        }
    }
    UPoly { coeffs }
}

/// c·x^e · a, one row of the long-division update.
fn shifted_scale(base: &Ring, a: &UPoly, e: usize, c: &Scalar) -> UPoly {
    let mut coeffs = BTreeMap::new();
    for (ea, ca) in &a.coeffs {
        let v = base.mul(ca, c);
        if !scalar_is_zero(&v) {
            coeffs.insert(ea + e, v);
        }
    }
    UPoly { coeffs }
}

/// Long division over a field base: a = q·b + r with deg r < deg b.
pub(super) fn div_rem(base: &Ring, a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lc_inv = base.inv(b.leading_coeff().unwrap())?;
    let mut quo = BTreeMap::new();
    let mut rem = a.clone();
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let c = base.mul(rem.leading_coeff().unwrap(), &lc_inv);
        let e = dr - db;
        rem = sub(base, &rem, &shifted_scale(base, b, e, &c));
        quo.insert(e, c);
    }
    Ok((UPoly { coeffs: quo }, rem))
}

/// Exact division over any integral-domain base (used for ℤ[x]): errors
/// unless b divides a.
pub(super) fn div_exact(base: &Ring, a: &UPoly, b: &UPoly) -> Result<UPoly> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lc_b = b.leading_coeff().unwrap();
    let mut quo = BTreeMap::new();
    let mut rem = a.clone();
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let c = base
            .div_exact(rem.leading_coeff().unwrap(), lc_b)
            .map_err(|_| Error::InvalidArgument("polynomial division is not exact".into()))?;
        let e = dr - db;
        rem = sub(base, &rem, &shifted_scale(base, b, e, &c));
        quo.insert(e, c);
    }
    if rem.is_zero() {
        Ok(UPoly { coeffs: quo })
    } else {
        Err(Error::InvalidArgument(
            "polynomial division is not exact".into(),
        ))
    }
}

/// Monic gcd over a field base; gcd(0,0) = 0.
pub(super) fn gcd_monic(base: &Ring, a: &UPoly, b: &UPoly) -> UPoly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let (_, r) = div_rem(base, &r0, &r1).expect("nonzero divisor");
        r0 = r1;
        r1 = r;
    }
    make_monic(base, &r0).1
}

/// Split as (leading coefficient, monic polynomial); zero yields (1, 0).
pub(super) fn make_monic(base: &Ring, a: &UPoly) -> (Scalar, UPoly) {
    match a.leading_coeff() {
        None => (base.one(), UPoly::zero()),
        Some(lc) if base.is_one(lc) => (lc.clone(), a.clone()),
        Some(lc) => {
            let inv = base.inv(lc).expect("nonzero leading coefficient");
            (lc.clone(), a.map_coeffs(&|c| base.mul(c, &inv)))
        }
    }
}

/// Canonical text: terms in descending exponent, `*` between coefficient
/// and variable, no whitespace. Examples: `x^5+1`, `-3*x+1/2`, `0`.
pub(super) fn format(base: &Ring, a: &UPoly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let signed_base = base == &Ring::integers() || base == &Ring::rationals();
    let minus_one = base.embed_i64(-1);
    let mut out = String::new();
    for (e, c) in a.coeffs.iter().rev() {
        let mut term = String::new();
        if *e == 0 {
            term.push_str(&base.format_scalar(c));
        } else {
            if signed_base && *c == minus_one {
                term.push('-');
            } else if !base.is_one(c) {
                term.push_str(&base.format_scalar(c));
                term.push('*');
            }
            term.push('x');
            if *e > 1 {
                term.push_str(&format!("^{e}"));
            }
        }
        if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&term);
    }
    out.replace("+-", "-")
}
