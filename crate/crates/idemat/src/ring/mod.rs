//! Exact scalar arithmetic for every ring the library works over:
//! ℤ, 𝔽_p (p prime), ℚ, univariate polynomials R[x], multivariate
//! polynomials K[x1..xm], and rational functions K(x) (the fraction
//! field used internally for rank computations over polynomial rings).
//!
//! All values are immutable and kept in canonical form, so payload
//! equality is mathematical equality: rationals reduced with positive
//! denominator, residues in [0,p), polynomial maps free of zero
//! coefficients, rational functions reduced with monic denominator.

mod mpoly;
mod parse;
mod ratfunc;
mod upoly;

pub use mpoly::{MPoly, Monomial};
pub use parse::parse_scalar;
pub use ratfunc::RatFunc;
pub use upoly::UPoly;

use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Structure of a coefficient ring. Private so that descriptors can only be
/// built through the validating constructors on [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum RingKind {
    /// ℤ
    Int,
    /// 𝔽_p, p prime
    Fp(u64),
    /// ℚ
    Rat,
    /// base[x], univariate
    Poly(Box<RingKind>),
    /// base[x1..xm], multivariate
    MPoly(Box<RingKind>, usize),
    /// fraction field of base[x]; base must itself be a field
    Frac(Box<RingKind>),
}

/// A validated ring descriptor. Every scalar and matrix carries one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(pub(crate) RingKind);

/// Payload of a ring element. Which variant is legal depends on the ring;
/// values constructed through `Ring`/`RingValue` methods are always
/// consistent and canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Res(u64),
    Rat(BigRational),
    Poly(UPoly),
    MPoly(MPoly),
    Frac(Box<RatFunc>),
}

// ---------------------------------------------------------------------------
// 𝔽_p arithmetic on u64 residues (all intermediate products via u128)

pub(crate) mod fp {
    pub fn add(p: u64, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % p as u128) as u64
    }
    pub fn sub(p: u64, a: u64, b: u64) -> u64 {
        ((a as u128 + (p - b) as u128) % p as u128) as u64
    }
    pub fn neg(p: u64, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            p - a
        }
    }
    pub fn mul(p: u64, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % p as u128) as u64
    }
    pub fn pow(p: u64, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(p, acc, base);
            }
            base = mul(p, base, base);
            exp >>= 1;
        }
        acc
    }
    /// Inverse of a nonzero residue, via Fermat (p is prime).
    pub fn inv(p: u64, a: u64) -> u64 {
        debug_assert!(a != 0);
        pow(p, a, p - 2)
    }

    /// Deterministic Miller–Rabin, valid for all u64.
    pub fn is_prime(n: u64) -> bool {
        const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        if n < 2 {
            return false;
        }
        for &w in &WITNESSES {
            if n.is_multiple_of(w) {
                return n == w;
            }
        }
        let s = (n - 1).trailing_zeros();
        let d = (n - 1) >> s;
        'witness: for &w in &WITNESSES {
            let mut x = pow(n, w, d);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul(n, x, x);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Ring construction and structure

impl Ring {
    pub fn integers() -> Ring {
        Ring(RingKind::Int)
    }

    pub fn rationals() -> Ring {
        Ring(RingKind::Rat)
    }

    /// 𝔽_p. Fails unless `p` is prime; prime powers are out of scope.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if fp::is_prime(p) {
            Ok(Ring(RingKind::Fp(p)))
        } else {
            Err(Error::InvalidArgument(format!("{p} is not prime")))
        }
    }

    /// Univariate polynomials base[x]. The base must be ℤ, 𝔽_p, or ℚ.
    pub fn poly(base: &Ring) -> Result<Ring> {
        if base.is_scalar_domain() {
            Ok(Ring(RingKind::Poly(Box::new(base.0.clone()))))
        } else {
            Err(Error::UnsupportedRing(format!(
                "polynomial base must be Z, Q, or a prime field, got {base}"
            )))
        }
    }

    /// Multivariate polynomials base[x1..x_num_vars].
    pub fn multi_poly(base: &Ring, num_vars: usize) -> Result<Ring> {
        if num_vars == 0 {
            return Err(Error::InvalidArgument(
                "multivariate ring needs at least one variable".into(),
            ));
        }
        if base.is_scalar_domain() {
            Ok(Ring(RingKind::MPoly(Box::new(base.0.clone()), num_vars)))
        } else {
            Err(Error::UnsupportedRing(format!(
                "polynomial base must be Z, Q, or a prime field, got {base}"
            )))
        }
    }

    /// Rational functions base(x): the fraction field of base[x].
    pub fn rational_functions(base: &Ring) -> Result<Ring> {
        if matches!(base.0, RingKind::Fp(_) | RingKind::Rat) {
            Ok(Ring(RingKind::Frac(Box::new(base.0.clone()))))
        } else {
            Err(Error::UnsupportedRing(format!(
                "rational-function base must be a field, got {base}"
            )))
        }
    }

    fn is_scalar_domain(&self) -> bool {
        matches!(self.0, RingKind::Int | RingKind::Fp(_) | RingKind::Rat)
    }

    pub fn is_field(&self) -> bool {
        matches!(self.0, RingKind::Fp(_) | RingKind::Rat | RingKind::Frac(_))
    }

    /// Every ring this library constructs is an integral domain.
    pub fn is_integral_domain(&self) -> bool {
        true
    }

    /// Rings with a usable division-with-remainder: fields, ℤ, and K[x]
    /// for a field K. Notably not ℤ[x].
    pub fn is_euclidean(&self) -> bool {
        match &self.0 {
            RingKind::Int | RingKind::Fp(_) | RingKind::Rat | RingKind::Frac(_) => true,
            RingKind::Poly(base) => matches!(**base, RingKind::Fp(_) | RingKind::Rat),
            RingKind::MPoly(..) => false,
        }
    }

    /// Unique factorization holds in every ring here (fields trivially,
    /// ℤ, and polynomials over a UFD by Gauss's lemma).
    pub fn is_ufd(&self) -> bool {
        true
    }

    pub fn prime(&self) -> Option<u64> {
        match self.0 {
            RingKind::Fp(p) => Some(p),
            _ => None,
        }
    }

    pub fn num_vars(&self) -> Option<usize> {
        match self.0 {
            RingKind::MPoly(_, n) => Some(n),
            _ => None,
        }
    }

    pub fn base_ring(&self) -> Option<Ring> {
        match &self.0 {
            RingKind::Poly(b) | RingKind::MPoly(b, _) | RingKind::Frac(b) => {
                Some(Ring((**b).clone()))
            }
            _ => None,
        }
    }

    /// The smallest field this ring embeds into, together with nothing else:
    /// ℤ → ℚ, K[x] → K(x), ℤ[x] → ℚ(x), fields map to themselves.
    /// Multivariate rings have no supported embedding here.
    pub fn fraction_field(&self) -> Result<Ring> {
        match &self.0 {
            RingKind::Int => Ok(Ring::rationals()),
            RingKind::Fp(p) => Ok(Ring(RingKind::Fp(*p))),
            RingKind::Rat => Ok(Ring::rationals()),
            RingKind::Frac(b) => Ok(Ring(RingKind::Frac(b.clone()))),
            RingKind::Poly(b) => {
                let field_base = match **b {
                    RingKind::Int | RingKind::Rat => RingKind::Rat,
                    RingKind::Fp(p) => RingKind::Fp(p),
                    _ => unreachable!("validated poly base"),
                };
                Ok(Ring(RingKind::Frac(Box::new(field_base))))
            }
            RingKind::MPoly(..) => Err(Error::UnsupportedRing(format!(
                "no fraction-field embedding for {self}"
            ))),
        }
    }

    /// Carry a scalar of this ring into its `fraction_field()`.
    pub fn to_fraction_field(&self, s: &Scalar) -> Result<Scalar> {
        Ok(match (&self.0, s) {
            (RingKind::Int, Scalar::Int(x)) => Scalar::Rat(BigRational::from(x.clone())),
            (RingKind::Fp(_), Scalar::Res(_))
            | (RingKind::Rat, Scalar::Rat(_))
            | (RingKind::Frac(_), Scalar::Frac(_)) => s.clone(),
            (RingKind::Poly(b), Scalar::Poly(p)) => {
                let num = match **b {
                    RingKind::Int => {
                        let rat_coeff = |c: &Scalar| match c {
                            Scalar::Int(x) => Scalar::Rat(BigRational::from(x.clone())),
                            _ => unreachable!("int poly holds int coefficients"),
                        };
                        p.map_coeffs(&rat_coeff)
                    }
                    _ => p.clone(),
                };
                let field_base = self.fraction_field()?.base_ring().unwrap();
                Scalar::Frac(Box::new(RatFunc::from_poly(&field_base, num)))
            }
            (RingKind::MPoly(..), _) => {
                return Err(Error::UnsupportedRing(format!(
                    "no fraction-field embedding for {self}"
                )))
            }
            _ => panic!("scalar payload does not belong to {self}"),
        })
    }

    /// Short token used in matrix headers and CLI arguments.
    pub fn token(&self) -> Result<String> {
        match &self.0 {
            RingKind::Int => Ok("Z".into()),
            RingKind::Rat => Ok("Q".into()),
            RingKind::Fp(p) => Ok(format!("Fp:{p}")),
            RingKind::Poly(b) => match **b {
                RingKind::Int => Ok("Zx".into()),
                RingKind::Rat => Ok("Qx".into()),
                RingKind::Fp(p) => Ok(format!("Fpx:{p}")),
                _ => unreachable!("validated poly base"),
            },
            _ => Err(Error::UnsupportedRing(format!(
                "{self} has no file-format token"
            ))),
        }
    }

    /// Inverse of [`Ring::token`].
    pub fn from_token(tok: &str) -> Result<Ring> {
        let parse_p = |rest: &str| -> Result<u64> {
            rest.parse::<u64>()
                .map_err(|_| Error::parse(format!("ring token `{tok}`"), "bad modulus"))
        };
        match tok {
            "Z" => Ok(Ring::integers()),
            "Q" => Ok(Ring::rationals()),
            "Zx" => Ring::poly(&Ring::integers()),
            "Qx" => Ring::poly(&Ring::rationals()),
            _ => {
                if let Some(rest) = tok.strip_prefix("Fpx:") {
                    Ring::poly(&Ring::prime_field(parse_p(rest)?)?)
                } else if let Some(rest) = tok.strip_prefix("Fp:") {
                    Ring::prime_field(parse_p(rest)?)
                } else {
                    Err(Error::parse(
                        format!("ring token `{tok}`"),
                        "expected one of Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx",
                    ))
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            RingKind::Int => write!(f, "Z"),
            RingKind::Rat => write!(f, "Q"),
            RingKind::Fp(p) => write!(f, "F{p}"),
            RingKind::Poly(b) => write!(f, "{}[x]", Ring((**b).clone())),
            RingKind::MPoly(b, n) => write!(f, "{}[x1..x{n}]", Ring((**b).clone())),
            RingKind::Frac(b) => write!(f, "{}(x)", Ring((**b).clone())),
        }
    }
}

/// Zero detection needs no ring: canonical payloads are empty maps / zero
/// numerators exactly when they represent zero.
pub(crate) fn scalar_is_zero(s: &Scalar) -> bool {
    match s {
        Scalar::Int(x) => x.is_zero(),
        Scalar::Res(r) => *r == 0,
        Scalar::Rat(x) => x.is_zero(),
        Scalar::Poly(p) => p.is_zero(),
        Scalar::MPoly(p) => p.is_zero(),
        Scalar::Frac(f) => f.num.is_zero(),
    }
}

// ---------------------------------------------------------------------------
// Scalar arithmetic, dispatched on the ring

macro_rules! bad_payload {
    ($ring:expr) => {
        panic!("scalar payload does not belong to {}", $ring)
    };
}

impl Ring {
    pub fn zero(&self) -> Scalar {
        match &self.0 {
            RingKind::Int => Scalar::Int(BigInt::zero()),
            RingKind::Fp(_) => Scalar::Res(0),
            RingKind::Rat => Scalar::Rat(BigRational::zero()),
            RingKind::Poly(_) => Scalar::Poly(UPoly::zero()),
            RingKind::MPoly(_, n) => Scalar::MPoly(MPoly::zero(*n)),
            RingKind::Frac(_) => Scalar::Frac(Box::new(RatFunc::zero(&self.base()))),
        }
    }

    pub fn one(&self) -> Scalar {
        self.embed_i64(1)
    }

    /// The canonical image of a machine integer, in any ring.
    pub fn embed_i64(&self, k: i64) -> Scalar {
        match &self.0 {
            RingKind::Int => Scalar::Int(BigInt::from(k)),
            RingKind::Fp(p) => Scalar::Res((k.rem_euclid(*p as i64)) as u64),
            RingKind::Rat => Scalar::Rat(BigRational::from(BigInt::from(k))),
            RingKind::Poly(b) => {
                let base = Ring((**b).clone());
                Scalar::Poly(UPoly::constant(base.embed_i64(k)))
            }
            RingKind::MPoly(b, n) => {
                let base = Ring((**b).clone());
                Scalar::MPoly(MPoly::constant(*n, base.embed_i64(k)))
            }
            RingKind::Frac(b) => {
                let base = Ring((**b).clone());
                Scalar::Frac(Box::new(RatFunc::from_poly(
                    &base,
                    UPoly::constant(base.embed_i64(k)),
                )))
            }
        }
    }

    /// The canonical image of an arbitrary-precision integer.
    pub fn embed_bigint(&self, x: &BigInt) -> Scalar {
        match &self.0 {
            RingKind::Int => Scalar::Int(x.clone()),
            RingKind::Fp(p) => {
                use num_traits::ToPrimitive;
                let m = num_integer::Integer::mod_floor(x, &BigInt::from(*p));
                Scalar::Res(m.to_u64().expect("residue fits u64"))
            }
            RingKind::Rat => Scalar::Rat(BigRational::from(x.clone())),
            RingKind::Poly(_) => Scalar::Poly(UPoly::constant(self.base().embed_bigint(x))),
            RingKind::MPoly(_, n) => {
                Scalar::MPoly(MPoly::constant(*n, self.base().embed_bigint(x)))
            }
            RingKind::Frac(_) => {
                let base = self.base();
                Scalar::Frac(Box::new(RatFunc::from_poly(
                    &base,
                    UPoly::constant(base.embed_bigint(x)),
                )))
            }
        }
    }

    /// Does this payload belong to this ring, canonically? Checks variant,
    /// residue ranges, and coefficient rings recursively.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (&self.0, s) {
            (RingKind::Int, Scalar::Int(_)) => true,
            (RingKind::Fp(p), Scalar::Res(r)) => r < p,
            (RingKind::Rat, Scalar::Rat(_)) => true,
            (RingKind::Poly(b), Scalar::Poly(poly)) => {
                let base = Ring((**b).clone());
                poly.coeffs()
                    .all(|(_, c)| base.contains(c) && !base.is_zero(c))
            }
            (RingKind::MPoly(b, n), Scalar::MPoly(poly)) => {
                let base = Ring((**b).clone());
                poly.num_vars() == *n
                    && poly
                        .terms()
                        .all(|(m, c)| m.0.len() == *n && base.contains(c) && !base.is_zero(c))
            }
            (RingKind::Frac(b), Scalar::Frac(func)) => {
                let base = Ring((**b).clone());
                let poly_ok = |p: &UPoly| {
                    p.coeffs()
                        .all(|(_, c)| base.contains(c) && !base.is_zero(c))
                };
                poly_ok(&func.num) && poly_ok(&func.den) && func.is_reduced(&base)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        scalar_is_zero(s)
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        *s == self.one()
    }

    fn base(&self) -> Ring {
        match &self.0 {
            RingKind::Poly(b) | RingKind::MPoly(b, _) | RingKind::Frac(b) => Ring((**b).clone()),
            _ => panic!("{self} has no base ring"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0, a, b) {
            (RingKind::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (RingKind::Fp(p), Scalar::Res(x), Scalar::Res(y)) => Scalar::Res(fp::add(*p, *x, *y)),
            (RingKind::Rat, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (RingKind::Poly(_), Scalar::Poly(x), Scalar::Poly(y)) => {
                Scalar::Poly(upoly::add(&self.base(), x, y))
            }
            (RingKind::MPoly(..), Scalar::MPoly(x), Scalar::MPoly(y)) => {
                Scalar::MPoly(mpoly::add(&self.base(), x, y))
            }
            (RingKind::Frac(_), Scalar::Frac(x), Scalar::Frac(y)) => {
                Scalar::Frac(Box::new(ratfunc::add(&self.base(), x, y)))
            }
            _ => bad_payload!(self),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&self.0, a) {
            (RingKind::Int, Scalar::Int(x)) => Scalar::Int(-x),
            (RingKind::Fp(p), Scalar::Res(x)) => Scalar::Res(fp::neg(*p, *x)),
            (RingKind::Rat, Scalar::Rat(x)) => Scalar::Rat(-x),
            (RingKind::Poly(_), Scalar::Poly(x)) => Scalar::Poly(upoly::neg(&self.base(), x)),
            (RingKind::MPoly(..), Scalar::MPoly(x)) => Scalar::MPoly(mpoly::neg(&self.base(), x)),
            (RingKind::Frac(_), Scalar::Frac(x)) => {
                Scalar::Frac(Box::new(ratfunc::neg(&self.base(), x)))
            }
            _ => bad_payload!(self),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0, a, b) {
            (RingKind::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x - y),
            (RingKind::Fp(p), Scalar::Res(x), Scalar::Res(y)) => Scalar::Res(fp::sub(*p, *x, *y)),
            (RingKind::Rat, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0, a, b) {
            (RingKind::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (RingKind::Fp(p), Scalar::Res(x), Scalar::Res(y)) => Scalar::Res(fp::mul(*p, *x, *y)),
            (RingKind::Rat, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (RingKind::Poly(_), Scalar::Poly(x), Scalar::Poly(y)) => {
                Scalar::Poly(upoly::mul(&self.base(), x, y))
            }
            (RingKind::MPoly(..), Scalar::MPoly(x), Scalar::MPoly(y)) => {
                Scalar::MPoly(mpoly::mul(&self.base(), x, y))
            }
            (RingKind::Frac(_), Scalar::Frac(x), Scalar::Frac(y)) => {
                Scalar::Frac(Box::new(ratfunc::mul(&self.base(), x, y)))
            }
            _ => bad_payload!(self),
        }
    }

    /// Multiplicative inverse. Only fields have one for every nonzero element.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if !self.is_field() {
            return Err(Error::UnsupportedRing(format!("{self} is not a field")));
        }
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.0, a) {
            (RingKind::Fp(p), Scalar::Res(x)) => Scalar::Res(fp::inv(*p, *x)),
            (RingKind::Rat, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (RingKind::Frac(_), Scalar::Frac(x)) => {
                Scalar::Frac(Box::new(ratfunc::inv(&self.base(), x)?))
            }
            _ => bad_payload!(self),
        })
    }

    /// Field division a/b.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Exact division in an integral domain: returns q with a = q·b, or an
    /// error when b ∤ a (or b = 0).
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        match (&self.0, a, b) {
            (RingKind::Int, Scalar::Int(x), Scalar::Int(y)) => {
                let (q, r) = num_integer::Integer::div_rem(x, y);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(Error::InvalidArgument(format!("{y} does not divide {x}")))
                }
            }
            (RingKind::Poly(_), Scalar::Poly(x), Scalar::Poly(y)) => {
                let q = upoly::div_exact(&self.base(), x, y)?;
                Ok(Scalar::Poly(q))
            }
            _ if self.is_field() => self.div(a, b),
            _ => Err(Error::UnsupportedRing(format!(
                "exact division not supported in {self}"
            ))),
        }
    }

    /// Units: ±1 in ℤ, nonzero field elements, unit constants in R[x].
    pub fn is_unit(&self, a: &Scalar) -> bool {
        match (&self.0, a) {
            (RingKind::Int, Scalar::Int(x)) => x.is_one() || (-x).is_one(),
            (RingKind::Fp(_) | RingKind::Rat | RingKind::Frac(_), _) => !self.is_zero(a),
            (RingKind::Poly(_), Scalar::Poly(p)) => match p.degree() {
                Some(0) => self.base().is_unit(p.coeff(0).unwrap()),
                _ => false,
            },
            (RingKind::MPoly(..), Scalar::MPoly(p)) => match p.constant_part() {
                Some(c) if p.term_count() == 1 => self.base().is_unit(c),
                _ => false,
            },
            _ => bad_payload!(self),
        }
    }

    // -- Euclidean structure (used by gcd and Smith normal form) ------------

    /// Euclidean norm: |x| over ℤ, degree over K[x], 0 for nonzero field
    /// elements. `None` for the zero element.
    pub fn euclid_norm(&self, a: &Scalar) -> Option<BigInt> {
        if self.is_zero(a) {
            return None;
        }
        match (&self.0, a) {
            (RingKind::Int, Scalar::Int(x)) => Some(x.abs()),
            (RingKind::Fp(_) | RingKind::Rat | RingKind::Frac(_), _) => Some(BigInt::zero()),
            (RingKind::Poly(_), Scalar::Poly(p)) => Some(BigInt::from(p.degree().unwrap())),
            _ => None,
        }
    }

    /// Division with remainder: a = q·b + r with r = 0 or norm(r) < norm(b).
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar)> {
        if !self.is_euclidean() {
            return Err(Error::UnsupportedRing(format!("{self} is not Euclidean")));
        }
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        match (&self.0, a, b) {
            (RingKind::Int, Scalar::Int(x), Scalar::Int(y)) => {
                let (q, r) = num_integer::Integer::div_rem(x, y);
                Ok((Scalar::Int(q), Scalar::Int(r)))
            }
            (RingKind::Poly(_), Scalar::Poly(x), Scalar::Poly(y)) => {
                let (q, r) = upoly::div_rem(&self.base(), x, y)?;
                Ok((Scalar::Poly(q), Scalar::Poly(r)))
            }
            _ if self.is_field() => Ok((self.div(a, b)?, self.zero())),
            _ => unreachable!("euclidean rings are covered above"),
        }
    }

    /// Split a nonzero element as unit · normalized, where "normalized" means
    /// positive over ℤ, monic over K[x], and 1 in a field. Zero splits as
    /// (1, 0).
    pub fn unit_normalize(&self, a: &Scalar) -> (Scalar, Scalar) {
        if self.is_zero(a) {
            return (self.one(), self.zero());
        }
        match (&self.0, a) {
            (RingKind::Int, Scalar::Int(x)) => {
                if x.sign() == Sign::Minus {
                    (self.embed_i64(-1), Scalar::Int(-x))
                } else {
                    (self.one(), a.clone())
                }
            }
            (RingKind::Fp(_) | RingKind::Rat | RingKind::Frac(_), _) => (a.clone(), self.one()),
            (RingKind::Poly(_), Scalar::Poly(p)) => {
                let base = self.base();
                let lc = p.leading_coeff().unwrap().clone();
                if base.is_one(&lc) {
                    (self.one(), a.clone())
                } else {
                    // Base is a field here for every Euclidean use; over ℤ[x]
                    // only sign normalization is possible.
                    if base.is_field() {
                        let inv = base.inv(&lc).expect("nonzero leading coefficient");
                        let monic = p.map_coeffs(&|c| base.mul(c, &inv));
                        (Scalar::Poly(UPoly::constant(lc)), Scalar::Poly(monic))
                    } else {
                        let (u, _) = base.unit_normalize(&lc);
                        if base.is_one(&u) {
                            (self.one(), a.clone())
                        } else {
                            let u_inv = u.clone(); // ±1 is self-inverse in ℤ
                            let norm = p.map_coeffs(&|c| base.mul(c, &u_inv));
                            (Scalar::Poly(UPoly::constant(u)), Scalar::Poly(norm))
                        }
                    }
                }
            }
            _ => (self.one(), a.clone()),
        }
    }

    pub fn format_scalar(&self, s: &Scalar) -> String {
        match (&self.0, s) {
            (RingKind::Int, Scalar::Int(x)) => x.to_string(),
            (RingKind::Fp(_), Scalar::Res(r)) => r.to_string(),
            (RingKind::Rat, Scalar::Rat(x)) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (RingKind::Poly(_), Scalar::Poly(p)) => upoly::format(&self.base(), p),
            (RingKind::MPoly(..), Scalar::MPoly(p)) => mpoly::format(&self.base(), p),
            (RingKind::Frac(_), Scalar::Frac(f)) => ratfunc::format(&self.base(), f),
            _ => bad_payload!(self),
        }
    }
}

// ---------------------------------------------------------------------------
// RingValue: the checked public face of (Ring, Scalar)

/// A scalar together with its ring. All binary operations verify that the
/// rings agree; mismatches are errors, never coercions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingValue {
    ring: Ring,
    payload: Scalar,
}

impl RingValue {
    pub fn new(ring: Ring, payload: Scalar) -> Result<RingValue> {
        if ring.contains(&payload) {
            Ok(RingValue { ring, payload })
        } else {
            Err(Error::RingMismatch(format!(
                "payload is not a canonical element of {ring}"
            )))
        }
    }

    pub fn from_i64(ring: &Ring, k: i64) -> RingValue {
        RingValue {
            ring: ring.clone(),
            payload: ring.embed_i64(k),
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<RingValue> {
        let payload = parse::parse_scalar(ring, text)?;
        Ok(RingValue {
            ring: ring.clone(),
            payload,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn payload(&self) -> &Scalar {
        &self.payload
    }

    pub fn into_payload(self) -> Scalar {
        self.payload
    }

    fn same_ring<'a>(&self, other: &'a RingValue) -> Result<&'a Scalar> {
        if self.ring == other.ring {
            Ok(&other.payload)
        } else {
            Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn add(&self, other: &RingValue) -> Result<RingValue> {
        let rhs = self.same_ring(other)?;
        Ok(RingValue {
            ring: self.ring.clone(),
            payload: self.ring.add(&self.payload, rhs),
        })
    }

    pub fn sub(&self, other: &RingValue) -> Result<RingValue> {
        let rhs = self.same_ring(other)?;
        Ok(RingValue {
            ring: self.ring.clone(),
            payload: self.ring.sub(&self.payload, rhs),
        })
    }

    pub fn mul(&self, other: &RingValue) -> Result<RingValue> {
        let rhs = self.same_ring(other)?;
        Ok(RingValue {
            ring: self.ring.clone(),
            payload: self.ring.mul(&self.payload, rhs),
        })
    }

    pub fn neg(&self) -> RingValue {
        RingValue {
            ring: self.ring.clone(),
            payload: self.ring.neg(&self.payload),
        }
    }

    /// Multiplicative inverse; errors on zero and outside fields.
    pub fn inv(&self) -> Result<RingValue> {
        Ok(RingValue {
            ring: self.ring.clone(),
            payload: self.ring.inv(&self.payload)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.payload)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.payload)
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_scalar(&self.payload))
    }
}

// ---------------------------------------------------------------------------
// Extended Euclid

/// Extended gcd with Bézout witnesses: returns (g, u, v) with u·x + v·y = g,
/// g normalized (positive over ℤ, monic over K[x]), and g = 0 iff x = y = 0.
pub fn euclid_gcd(x: &RingValue, y: &RingValue) -> Result<(RingValue, RingValue, RingValue)> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", x.ring(), y.ring())));
    }
    let ring = x.ring().clone();
    let (g, u, v) = xgcd(&ring, x.payload(), y.payload())?;
    let wrap = |payload| RingValue {
        ring: ring.clone(),
        payload,
    };
    Ok((wrap(g), wrap(u), wrap(v)))
}

/// Payload-level extended Euclid used by the public wrapper and by Smith
/// normal form. Same contract as [`euclid_gcd`].
pub(crate) fn xgcd(ring: &Ring, x: &Scalar, y: &Scalar) -> Result<(Scalar, Scalar, Scalar)> {
    if !ring.is_euclidean() {
        return Err(Error::UnsupportedRing(format!("{ring} is not Euclidean")));
    }
    // Invariants: r0 = u0·x + v0·y and r1 = u1·x + v1·y.
    let (mut r0, mut u0, mut v0) = (x.clone(), ring.one(), ring.zero());
    let (mut r1, mut u1, mut v1) = (y.clone(), ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (q, r) = ring.div_rem(&r0, &r1)?;
        let next_u = ring.sub(&u0, &ring.mul(&q, &u1));
        let next_v = ring.sub(&v0, &ring.mul(&q, &v1));
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, next_u);
        (v0, v1) = (v1, next_v);
    }
    if ring.is_zero(&r0) {
        return Ok((ring.zero(), ring.zero(), ring.zero()));
    }
    let (unit, g) = ring.unit_normalize(&r0);
    if ring.is_one(&unit) {
        return Ok((r0, u0, v0));
    }
    // Fold the unit into the witnesses: g = (u0/unit)·x + (v0/unit)·y.
    let unit_inv = ring.div_exact(&ring.one(), &unit)?;
    Ok((g, ring.mul(&u0, &unit_inv), ring.mul(&v0, &unit_inv)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }
    fn q() -> Ring {
        Ring::rationals()
    }
    fn f(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }
    fn fx(p: u64) -> Ring {
        Ring::poly(&f(p)).unwrap()
    }

    #[test]
    fn descriptor_validation() {
        assert!(Ring::prime_field(2).is_ok());
        assert!(Ring::prime_field(97).is_ok());
        assert!(Ring::prime_field(1).is_err());
        assert!(Ring::prime_field(91).is_err()); // 7·13
        assert!(Ring::multi_poly(&q(), 0).is_err());
        assert!(Ring::poly(&Ring::poly(&z()).unwrap()).is_err()); // no towers
    }

    #[test]
    fn primality_battery() {
        let primes = [2u64, 3, 5, 7, 11, 101, 7919, 2147483647, 67280421310721];
        for p in primes {
            assert!(fp::is_prime(p), "{p} should be prime");
        }
        let composites = [0u64, 1, 4, 9, 91, 561, 2147483649, 67280421310723];
        for c in composites {
            assert!(!fp::is_prime(c), "{c} should be composite");
        }
    }

    #[test]
    fn integer_and_residue_arithmetic() {
        let a = RingValue::from_i64(&z(), 3);
        let b = RingValue::from_i64(&z(), 5);
        assert_eq!(a.mul(&b).unwrap(), RingValue::from_i64(&z(), 15));

        let one = RingValue::from_i64(&f(2), 1);
        assert!(one.add(&one).unwrap().is_zero(), "characteristic 2");
    }

    #[test]
    fn field_inverses() {
        let two = RingValue::from_i64(&f(5), 2);
        assert_eq!(two.inv().unwrap(), RingValue::from_i64(&f(5), 3));

        let x = RingValue::parse(&q(), "3/4").unwrap();
        assert_eq!(x.inv().unwrap(), RingValue::parse(&q(), "4/3").unwrap());

        let zero = RingValue::from_i64(&f(2), 0);
        assert_eq!(zero.inv().unwrap_err(), Error::DivisionByZero);

        let n = RingValue::from_i64(&z(), 2);
        assert!(matches!(n.inv().unwrap_err(), Error::UnsupportedRing(_)));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = RingValue::from_i64(&f(2), 1);
        let b = RingValue::from_i64(&f(3), 1);
        assert!(matches!(a.add(&b).unwrap_err(), Error::RingMismatch(_)));
    }

    #[test]
    fn poly_multiplication_mod_2() {
        // (x+1)(x^4+x^3+x^2+x+1) = x^5+1 over F2
        let r = fx(2);
        let a = RingValue::parse(&r, "x+1").unwrap();
        let b = RingValue::parse(&r, "x^4+x^3+x^2+x+1").unwrap();
        let expect = RingValue::parse(&r, "x^5+1").unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn gcd_integers() {
        let (g, u, v) = euclid_gcd(
            &RingValue::from_i64(&z(), 12),
            &RingValue::from_i64(&z(), 18),
        )
        .unwrap();
        assert_eq!(g, RingValue::from_i64(&z(), 6));
        let lhs = u
            .mul(&RingValue::from_i64(&z(), 12))
            .unwrap()
            .add(&v.mul(&RingValue::from_i64(&z(), 18)).unwrap())
            .unwrap();
        assert_eq!(lhs, g);
    }

    #[test]
    fn gcd_poly_f2() {
        let r = fx(2);
        let a = RingValue::parse(&r, "x^2+x").unwrap();
        let b = RingValue::parse(&r, "x").unwrap();
        let (g, u, v) = euclid_gcd(&a, &b).unwrap();
        assert_eq!(g, RingValue::parse(&r, "x").unwrap());
        let lhs = u.mul(&a).unwrap().add(&v.mul(&b).unwrap()).unwrap();
        assert_eq!(lhs, g);
    }

    #[test]
    fn gcd_of_zeros() {
        let zero = RingValue::from_i64(&z(), 0);
        let (g, u, v) = euclid_gcd(&zero, &zero).unwrap();
        assert!(g.is_zero() && u.is_zero() && v.is_zero());
    }

    #[test]
    fn gcd_normalization() {
        // Negative inputs still give a positive gcd over ℤ.
        let (g, _, _) = euclid_gcd(
            &RingValue::from_i64(&z(), -12),
            &RingValue::from_i64(&z(), -18),
        )
        .unwrap();
        assert_eq!(g, RingValue::from_i64(&z(), 6));

        // Non-monic inputs still give a monic gcd over Q[x].
        let qx = Ring::poly(&q()).unwrap();
        let a = RingValue::parse(&qx, "2*x^2+2*x").unwrap();
        let b = RingValue::parse(&qx, "4*x").unwrap();
        let (g, u, v) = euclid_gcd(&a, &b).unwrap();
        assert_eq!(g, RingValue::parse(&qx, "x").unwrap());
        let lhs = u.mul(&a).unwrap().add(&v.mul(&b).unwrap()).unwrap();
        assert_eq!(lhs, g);
    }

    #[test]
    fn gcd_rejects_non_euclidean() {
        let zx = Ring::poly(&z()).unwrap();
        let a = RingValue::parse(&zx, "x").unwrap();
        assert!(matches!(
            euclid_gcd(&a, &a).unwrap_err(),
            Error::UnsupportedRing(_)
        ));
    }

    #[test]
    fn unit_normalization() {
        let (u, n) = z().unit_normalize(&z().embed_i64(-7));
        assert_eq!(u, z().embed_i64(-1));
        assert_eq!(n, z().embed_i64(7));

        let qx = Ring::poly(&q()).unwrap();
        let p = parse::parse_scalar(&qx, "3*x^2+6").unwrap();
        let (unit, monic) = qx.unit_normalize(&p);
        assert_eq!(unit, parse::parse_scalar(&qx, "3").unwrap());
        assert_eq!(monic, parse::parse_scalar(&qx, "x^2+2").unwrap());
    }

    #[test]
    fn fraction_field_embeddings() {
        assert_eq!(z().fraction_field().unwrap(), q());
        assert_eq!(f(5).fraction_field().unwrap(), f(5));
        let zx = Ring::poly(&z()).unwrap();
        let qx_frac = Ring::rational_functions(&q()).unwrap();
        assert_eq!(zx.fraction_field().unwrap(), qx_frac);

        let s = parse::parse_scalar(&zx, "2*x+4").unwrap();
        let embedded = zx.to_fraction_field(&s).unwrap();
        assert!(qx_frac.contains(&embedded));
    }

    #[test]
    fn tokens_round_trip() {
        for tok in ["Z", "Q", "Fp:5", "Zx", "Fpx:2", "Qx"] {
            let ring = Ring::from_token(tok).unwrap();
            assert_eq!(ring.token().unwrap(), tok);
        }
        assert!(Ring::from_token("Fp:4").is_err());
        assert!(Ring::from_token("R").is_err());
    }
}
