//! Multivariate polynomials as sparse monomial → coefficient maps.
//! Monomials are exponent vectors; the map's key order (plain lexicographic
//! on the vector) is a storage detail, independent of any monomial order a
//! Gröbner computation might impose.

use super::{scalar_is_zero, Ring, Scalar};
use std::collections::BTreeMap;

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Monomial {
        Monomial(vec![0; num_vars])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Does self divide other?
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, when self divides other.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero(num_vars: usize) -> MPoly {
        MPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> MPoly {
        MPoly::term(num_vars, Monomial::one(num_vars), c)
    }

    /// c·m (the zero polynomial when c = 0).
    pub fn term(num_vars: usize, m: Monomial, c: Scalar) -> MPoly {
        debug_assert_eq!(m.0.len(), num_vars);
        let mut terms = BTreeMap::new();
        if !scalar_is_zero(&c) {
            terms.insert(m, c);
        }
        MPoly { num_vars, terms }
    }

    /// Collect (monomial, coefficient) pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_terms(
        base: &Ring,
        num_vars: usize,
        pairs: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> MPoly {
        let mut acc = MPoly::zero(num_vars);
        for (m, c) in pairs {
            insert_add(base, &mut acc.terms, m, &c);
        }
        acc
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_part(&self) -> Option<&Scalar> {
        self.terms.get(&Monomial::one(self.num_vars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }
}

fn insert_add(base: &Ring, map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    match map.remove(&m) {
        None => {
            if !scalar_is_zero(c) {
                map.insert(m, c.clone());
            }
        }
        Some(old) => {
            let sum = base.add(&old, c);
            if !scalar_is_zero(&sum) {
                map.insert(m, sum);
            }
        }
    }
}

pub(super) fn add(base: &Ring, a: &MPoly, b: &MPoly) -> MPoly {
    debug_assert_eq!(a.num_vars, b.num_vars);
    let mut terms = a.terms.clone();
    for (m, c) in &b.terms {
        insert_add(base, &mut terms, m.clone(), c);
    }
    MPoly {
        num_vars: a.num_vars,
        terms,
    }
}

pub(super) fn neg(base: &Ring, a: &MPoly) -> MPoly {
    MPoly {
        num_vars: a.num_vars,
        terms: a
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), base.neg(c)))
            .collect(),
    }
}

pub(super) fn mul(base: &Ring, a: &MPoly, b: &MPoly) -> MPoly {
    debug_assert_eq!(a.num_vars, b.num_vars);
    let mut terms = BTreeMap::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            insert_add(base, &mut terms, ma.mul(mb), &base.mul(ca, cb));
        }
    }
    MPoly {
        num_vars: a.num_vars,
        terms,
    }
}

/// Canonical text: terms descending by (total degree, exponent vector),
/// variables written `x1..xm`, no whitespace. Example: `2*x1^2*x2+x3`.
pub(super) fn format(base: &Ring, a: &MPoly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let signed_base = base == &Ring::integers() || base == &Ring::rationals();
    let minus_one = base.embed_i64(-1);
    let mut ordered: Vec<(&Monomial, &Scalar)> = a.terms.iter().collect();
    ordered.sort_by(|(m1, _), (m2, _)| (m2.total_degree(), &m2.0).cmp(&(m1.total_degree(), &m1.0)));
    let mut out = String::new();
    for (m, c) in ordered {
        let mut term = String::new();
        if m.is_one() {
            term.push_str(&base.format_scalar(c));
        } else {
            if signed_base && *c == minus_one {
                term.push('-');
            } else if !base.is_one(c) {
                term.push_str(&base.format_scalar(c));
                term.push('*');
            }
            let mut first = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    term.push('*');
                }
                first = false;
                term.push_str(&format!("x{}", i + 1));
                if e > 1 {
                    term.push_str(&format!("^{e}"));
                }
            }
        }
        if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&term);
    }
    out.replace("+-", "-")
}
