//! Gröbner bases over field coefficients, and the dimension of the variety
//! of idempotent matrices.
//!
//! The entries of an n×n matrix X are treated as n² indeterminates
//! x₁₁,…,x_nn (row-major, so variable k is x_{k/n, k%n}); the equation
//! X² = X becomes n² quadratic polynomials F_ij = Σ_k x_ik·x_kj − x_ij.
//! [`variety_dimension`] computes dim V(F) by running Buchberger's algorithm
//! on that ideal, reading off the leading-term ideal, and computing the
//! dimension of the resulting monomial ideal combinatorially: the variety of
//! a monomial ideal is a union of coordinate subspaces, and its dimension is
//! the number of variables minus a minimum hitting set of the generators'
//! supports.
//!
//! All Gröbner machinery is generic over a choice of [`MonomialOrder`] and
//! works for any ideal with coefficients in a field; the default order used
//! by the variety pipeline is graded lexicographic with x₁₁ > x₁₂ > … > x_nn.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ring::{MPoly, Monomial, Ring, Scalar};

/// Default cap on the number of S-polynomial pairs Buchberger's algorithm
/// may process before giving up with [`Error::BudgetExceeded`].
pub const DEFAULT_PAIR_BUDGET: u64 = 100_000;

/// The three classical monomial-order families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Pure lexicographic.
    Lex,
    /// Total degree, ties broken lexicographically.
    Grlex,
    /// Total degree, ties broken by *smallest* exponent on the least
    /// significant variable (graded reverse lexicographic).
    Grevlex,
}

/// A monomial order: an [`OrderKind`] plus a precedence permutation.
///
/// `precedence[0]` is the index of the most significant variable,
/// `precedence[last]` the least. The identity permutation gives the usual
/// x₁ > x₂ > … > x_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Order of the given kind with the identity precedence x₁ > … > x_m.
    pub fn new(kind: OrderKind, num_vars: usize) -> MonomialOrder {
        MonomialOrder {
            kind,
            precedence: (0..num_vars).collect(),
        }
    }

    /// Order with an explicit precedence permutation (most significant
    /// variable first). The permutation must contain each index below its
    /// length exactly once.
    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<MonomialOrder> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= precedence.len() || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "precedence {precedence:?} is not a permutation of 0..{}",
                    precedence.len()
                )));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn num_vars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// Compare two monomials under this order.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.0.len() != self.num_vars() || b.0.len() != self.num_vars() {
            return Err(Error::DimensionMismatch(format!(
                "monomials with {} and {} variables under an order on {}",
                a.0.len(),
                b.0.len(),
                self.num_vars()
            )));
        }
        Ok(self.cmp_mono(a, b))
    }

    fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), self.precedence.len());
        debug_assert_eq!(b.0.len(), self.precedence.len());
        let lex = |a: &Monomial, b: &Monomial| {
            for &v in &self.precedence {
                match a.0[v].cmp(&b.0[v]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        };
        match self.kind {
            OrderKind::Lex => lex(a, b),
            OrderKind::Grlex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| lex(a, b)),
            OrderKind::Grevlex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                // Ties: the monomial with the smaller exponent on the least
                // significant differing variable is the greater one.
                for &v in self.precedence.iter().rev() {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Compare two monomials under `order`. Thin convenience wrapper around
/// [`MonomialOrder::compare`].
pub fn monomial_compare(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    order.compare(a, b)
}

/// The leading (monomial, coefficient) of `p` under `order`, or `None` for
/// the zero polynomial.
pub fn leading_term(p: &MPoly, order: &MonomialOrder) -> Result<Option<(Monomial, Scalar)>> {
    let mut best: Option<(&Monomial, &Scalar)> = None;
    for (m, c) in p.terms() {
        if m.0.len() != order.num_vars() {
            return Err(Error::DimensionMismatch(format!(
                "{}-variable monomial under an order on {} variables",
                m.0.len(),
                order.num_vars()
            )));
        }
        match best {
            Some((bm, _)) if order.cmp_mono(m, bm) != Ordering::Greater => {}
            _ => best = Some((m, c)),
        }
    }
    Ok(best.map(|(m, c)| (m.clone(), c.clone())))
}

/// A generating set for an ideal in a multivariate polynomial ring over a
/// field. Zero generators are dropped on construction; the remaining ones
/// are kept in the order given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: Ring,
    generators: Vec<MPoly>,
}

impl IdealBasis {
    pub fn new(ring: &Ring, generators: Vec<MPoly>) -> Result<IdealBasis> {
        let num_vars = ring.num_vars().ok_or_else(|| {
            Error::UnsupportedRing(format!("{ring} is not a multivariate polynomial ring"))
        })?;
        let base = ring.base_ring().expect("multivariate rings have a base");
        if !base.is_field() {
            return Err(Error::UnsupportedRing(format!(
                "Gröbner bases need field coefficients, got {base}"
            )));
        }
        for g in &generators {
            if g.num_vars() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "generator in {} variables for an ideal in {num_vars}",
                    g.num_vars()
                )));
            }
            if !ring.contains(&Scalar::MPoly(g.clone())) {
                return Err(Error::RingMismatch(format!(
                    "generator has coefficients outside {base}"
                )));
            }
        }
        Ok(IdealBasis {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars().expect("validated at construction")
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }
}

/// A reduced Gröbner basis: monic elements, no term of any element divisible
/// by the leading term of another, sorted by leading term ascending under
/// the order. For a fixed ideal and order this representation is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<MPoly>,
    pairs_processed: u64,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[MPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// How many S-polynomial pairs the computation consumed.
    pub fn pairs_processed(&self) -> u64 {
        self.pairs_processed
    }

    /// Leading monomials of the elements, in element order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| {
                leading_term(g, &self.order)
                    .expect("elements match the order arity")
                    .expect("elements are nonzero")
                    .0
            })
            .collect()
    }

    /// Normal form of `f` modulo the basis: the unique remainder of `f`
    /// under full division. Zero exactly when `f` lies in the ideal.
    pub fn reduce(&self, f: &MPoly) -> Result<MPoly> {
        poly_reduce(f, &self.elements, &self.order, &self.ring)
    }
}

/// Sparse polynomial with terms sorted strictly descending under a fixed
/// monomial order — the working representation inside division and
/// Buchberger's algorithm, where repeated leading-term access dominates.
#[derive(Clone, Debug)]
struct OrderedPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl OrderedPoly {
    fn from_mpoly(p: &MPoly, ord: &MonomialOrder) -> OrderedPoly {
        let mut terms: Vec<(Monomial, Scalar)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| ord.cmp_mono(b, a));
        OrderedPoly { terms }
    }

    fn to_mpoly(&self, base: &Ring, num_vars: usize) -> MPoly {
        MPoly::from_terms(base, num_vars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(Monomial, Scalar) {
        &self.terms[0]
    }

    /// Leading monomial, for terse lcm chains.
    fn lt0(&self) -> &Monomial {
        &self.leading().0
    }

    /// self · c·x^m. Multiplication by a term preserves the sort order.
    fn mul_term(&self, base: &Ring, m: &Monomial, c: &Scalar) -> OrderedPoly {
        OrderedPoly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), base.mul(tc, c)))
                .collect(),
        }
    }

    /// self − c·x^m·other, by merging the two sorted term lists.
    fn sub_scaled(
        &self,
        base: &Ring,
        ord: &MonomialOrder,
        other: &OrderedPoly,
        m: &Monomial,
        c: &Scalar,
    ) -> OrderedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let mb = other.terms[j].0.mul(m);
            match ord.cmp_mono(ma, &mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb, base.neg(&base.mul(&other.terms[j].1, c))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = base.sub(ca, &base.mul(&other.terms[j].1, c));
                    if !base.is_zero(&v) {
                        out.push((mb, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (mb, cb) in &other.terms[j..] {
            out.push((mb.mul(m), base.neg(&base.mul(cb, c))));
        }
        OrderedPoly { terms: out }
    }

    /// Scale so the leading coefficient becomes 1.
    fn make_monic(&mut self, base: &Ring) -> Result<()> {
        if self.is_zero() || base.is_one(&self.terms[0].1) {
            return Ok(());
        }
        let lc = self.terms[0].1.clone();
        for (_, c) in &mut self.terms {
            *c = base.div(c, &lc)?;
        }
        Ok(())
    }
}

/// Full division: repeatedly cancel the leading term of the work polynomial
/// against the first divisor whose leading term divides it; leading terms
/// divisible by no divisor move to the remainder. The remainder's terms are
/// produced in strictly descending order, so the result needs no re-sort.
fn reduce_ordered(
    base: &Ring,
    ord: &MonomialOrder,
    f: &OrderedPoly,
    divisors: &[OrderedPoly],
) -> Result<OrderedPoly> {
    let mut work = f.clone();
    let mut remainder: Vec<(Monomial, Scalar)> = Vec::new();
    'outer: while !work.is_zero() {
        let (lm, lc) = work.leading().clone();
        for g in divisors {
            let (glm, glc) = g.leading();
            if let Some(q) = glm.quotient_into(&lm) {
                let coeff = base.div(&lc, glc)?;
                work = work.sub_scaled(base, ord, g, &q, &coeff);
                continue 'outer;
            }
        }
        remainder.push((lm, lc));
        work.terms.remove(0);
    }
    Ok(OrderedPoly { terms: remainder })
}

fn mpoly_ring_parts(ring: &Ring) -> Result<(Ring, usize)> {
    let num_vars = ring.num_vars().ok_or_else(|| {
        Error::UnsupportedRing(format!("{ring} is not a multivariate polynomial ring"))
    })?;
    let base = ring.base_ring().expect("multivariate rings have a base");
    if !base.is_field() {
        return Err(Error::UnsupportedRing(format!(
            "polynomial division needs field coefficients, got {base}"
        )));
    }
    Ok((base, num_vars))
}

/// Remainder of `f` on full division by `divisors` under `order`, inside the
/// multivariate polynomial ring `ring`. Divisors must all be nonzero.
pub fn poly_reduce(
    f: &MPoly,
    divisors: &[MPoly],
    order: &MonomialOrder,
    ring: &Ring,
) -> Result<MPoly> {
    let (base, num_vars) = mpoly_ring_parts(ring)?;
    if order.num_vars() != num_vars || f.num_vars() != num_vars {
        return Err(Error::DimensionMismatch(format!(
            "polynomial in {} variables, order on {}, ring has {num_vars}",
            f.num_vars(),
            order.num_vars()
        )));
    }
    let mut divs = Vec::with_capacity(divisors.len());
    for g in divisors {
        if g.is_zero() {
            return Err(Error::InvalidArgument(
                "division by the zero polynomial".into(),
            ));
        }
        if g.num_vars() != num_vars {
            return Err(Error::DimensionMismatch(format!(
                "divisor in {} variables, ring has {num_vars}",
                g.num_vars()
            )));
        }
        divs.push(OrderedPoly::from_mpoly(g, order));
    }
    let r = reduce_ordered(&base, order, &OrderedPoly::from_mpoly(f, order), &divs)?;
    Ok(r.to_mpoly(&base, num_vars))
}

/// The S-polynomial of `f` and `g` under `order`:
/// (lcm/LT f)·f/lc(f) − (lcm/LT g)·g/lc(g). Errors on zero inputs.
pub fn s_polynomial(f: &MPoly, g: &MPoly, order: &MonomialOrder, ring: &Ring) -> Result<MPoly> {
    let (base, num_vars) = mpoly_ring_parts(ring)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidArgument(
            "S-polynomial of the zero polynomial".into(),
        ));
    }
    let of = OrderedPoly::from_mpoly(f, order);
    let og = OrderedPoly::from_mpoly(g, order);
    let (fm, fc) = of.leading();
    let (gm, gc) = og.leading();
    let lcm = fm.lcm(gm);
    let qf = fm.quotient_into(&lcm).expect("lcm is a multiple");
    let qg = gm.quotient_into(&lcm).expect("lcm is a multiple");
    let left = of.mul_term(&base, &qf, &base.inv(fc)?);
    let s = left.sub_scaled(&base, order, &og, &qg, &base.inv(gc)?);
    Ok(s.to_mpoly(&base, num_vars))
}

/// Buchberger's algorithm with the normal selection strategy and the two
/// classical pair-skipping criteria, capped at `max_pairs` processed pairs.
///
/// Pairs are selected by minimal lcm total degree, ties broken by the
/// monomial order on the lcm and then by index. A pair is skipped without
/// reduction when its leading terms are coprime, or when some third element
/// divides the pair's lcm and both connecting pairs have already been
/// treated. The output is the unique reduced basis: monic, no term of any
/// element divisible by another's leading term, sorted by leading term
/// ascending.
pub fn buchberger(
    ideal: &IdealBasis,
    order: &MonomialOrder,
    max_pairs: u64,
) -> Result<GroebnerBasis> {
    let num_vars = ideal.num_vars();
    if order.num_vars() != num_vars {
        return Err(Error::DimensionMismatch(format!(
            "order on {} variables for an ideal in {num_vars}",
            order.num_vars()
        )));
    }
    let base = ideal.ring().base_ring().expect("validated at construction");

    let mut basis: Vec<OrderedPoly> = Vec::new();
    for g in ideal.generators() {
        let mut og = OrderedPoly::from_mpoly(g, order);
        og.make_monic(&base)?;
        basis.push(og);
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }

    let mut processed: u64 = 0;
    while !pending.is_empty() {
        if processed >= max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "S-polynomial pair budget of {max_pairs} exhausted with {} pairs pending",
                pending.len()
            )));
        }

        // Normal strategy: minimal lcm degree, then lcm order, then index.
        let mut best = 0;
        let mut best_lcm = basis[pending[0].0].lt0().lcm(basis[pending[0].1].lt0());
        for (idx, &(i, j)) in pending.iter().enumerate().skip(1) {
            let lcm = basis[i].lt0().lcm(basis[j].lt0());
            let better = match lcm.total_degree().cmp(&best_lcm.total_degree()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match order.cmp_mono(&lcm, &best_lcm) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => (i, j) < pending[best],
                },
            };
            if better {
                best = idx;
                best_lcm = lcm;
            }
        }
        let (i, j) = pending.swap_remove(best);
        processed += 1;

        let lti = basis[i].lt0();
        let ltj = basis[j].lt0();
        let lcm = lti.lcm(ltj);

        // Coprime leading terms: the S-polynomial always reduces to zero.
        if lcm == lti.mul(ltj) {
            continue;
        }
        // Chain criterion: a third element dividing the lcm whose pairs with
        // both i and j are already treated makes this pair redundant.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let qi = lti.quotient_into(&lcm).expect("lcm is a multiple");
        let qj = ltj.quotient_into(&lcm).expect("lcm is a multiple");
        // Elements are monic, so the S-polynomial needs no coefficient scaling.
        let shifted = basis[i].mul_term(&base, &qi, &base.one());
        let spoly = shifted.sub_scaled(&base, order, &basis[j], &qj, &base.one());

        let mut r = reduce_ordered(&base, order, &spoly, &basis)?;
        if !r.is_zero() {
            r.make_monic(&base)?;
            let t = basis.len();
            for k in 0..t {
                pending.push((k, t));
            }
            basis.push(r);
        }
    }

    // Minimalize: drop any element whose leading term another element's
    // leading term divides.
    let mut removed = vec![false; basis.len()];
    for i in 0..basis.len() {
        if removed[i] {
            continue;
        }
        let lti = &basis[i].leading().0;
        if (0..basis.len()).any(|j| j != i && !removed[j] && basis[j].leading().0.divides(lti)) {
            removed[i] = true;
        }
    }
    let mut kept: Vec<OrderedPoly> = basis
        .into_iter()
        .zip(removed)
        .filter(|(_, r)| !*r)
        .map(|(g, _)| g)
        .collect();

    // Inter-reduce tails to a fixpoint. Leading terms are pairwise
    // non-dividing, so reduction only rewrites trailing terms and keeps
    // every element nonzero and monic.
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<OrderedPoly> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_ordered(&base, order, &kept[i], &others)?;
            if r.terms != kept[i].terms {
                kept[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    kept.sort_by(|a, b| order.cmp_mono(&a.leading().0, &b.leading().0));
    let elements = kept.iter().map(|g| g.to_mpoly(&base, num_vars)).collect();
    Ok(GroebnerBasis {
        ring: ideal.ring().clone(),
        order: order.clone(),
        elements,
        pairs_processed: processed,
    })
}

/// Minimal generating set of the leading-term ideal of a Gröbner basis:
/// the leading monomials with every monomial divisible by another dropped,
/// sorted ascending under the basis order.
pub fn leading_term_ideal(gb: &GroebnerBasis) -> Vec<Monomial> {
    let monomials = gb.leading_monomials();
    let mut kept: Vec<Monomial> = Vec::new();
    for (i, m) in monomials.iter().enumerate() {
        let redundant = monomials
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && other.divides(m) && !(m.divides(other) && j > i));
        if !redundant {
            kept.push(m.clone());
        }
    }
    kept.sort_by(|a, b| gb.order().cmp_mono(a, b));
    kept.dedup();
    kept
}

/// Dimension of the variety of a monomial ideal in `num_vars` variables:
/// the variety is a finite union of coordinate subspaces, and its dimension
/// is `num_vars` minus the size of a minimum set of variables meeting every
/// generator's support. Found exhaustively by ascending subset size, which
/// is exact and fast at the scales arising here.
///
/// The empty list generates the zero ideal, whose variety is the whole
/// space. A constant (unit) monomial generates the whole ring, whose variety
/// is empty and has no dimension: that is an error.
pub fn monomial_ideal_dimension(monomials: &[Monomial], num_vars: usize) -> Result<usize> {
    let mut supports: Vec<Vec<usize>> = Vec::with_capacity(monomials.len());
    for m in monomials {
        if m.0.len() != num_vars {
            return Err(Error::DimensionMismatch(format!(
                "{}-variable monomial in an ideal on {num_vars} variables",
                m.0.len()
            )));
        }
        if m.is_one() {
            return Err(Error::InvalidArgument(
                "a unit monomial generates the whole ring; its variety is empty".into(),
            ));
        }
        supports.push(m.support());
    }
    let mut used: Vec<usize> = supports.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();

    for k in 0..=used.len() {
        for combo in crate::poset::combinations(used.len(), k) {
            let chosen: Vec<usize> = combo.iter().map(|&c| used[c]).collect();
            if supports
                .iter()
                .all(|s| s.iter().any(|v| chosen.contains(v)))
            {
                return Ok(num_vars - k);
            }
        }
    }
    unreachable!("the full variable set hits every support");
}

/// Generators of the ideal of the idempotent variety {X : X² = X} for n×n
/// matrices, over ℚ in the n² variables x₁₁,…,x_nn (row-major): the n²
/// entries of X² − X, row-major. With `trace_slice = Some(r)` the linear
/// polynomial tr(X) − r is appended, cutting the variety to the slice where
/// the trace (hence, on idempotent points, the rank) equals r.
pub fn idempotent_ideal(n: usize, trace_slice: Option<i64>) -> Result<IdealBasis> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "matrix dimension must be positive".into(),
        ));
    }
    let base = Ring::rationals();
    let ring = Ring::multi_poly(&base, n * n)?;
    let var = |i: usize, j: usize| i * n + j;

    let mut generators = Vec::with_capacity(n * n + 1);
    for i in 0..n {
        for j in 0..n {
            let mut terms: Vec<(Monomial, Scalar)> = Vec::with_capacity(n + 1);
            for k in 0..n {
                let mut exps = vec![0u32; n * n];
                exps[var(i, k)] += 1;
                exps[var(k, j)] += 1;
                terms.push((Monomial(exps), base.one()));
            }
            let mut linear = vec![0u32; n * n];
            linear[var(i, j)] = 1;
            terms.push((Monomial(linear), base.embed_i64(-1)));
            generators.push(MPoly::from_terms(&base, n * n, terms));
        }
    }
    if let Some(r) = trace_slice {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut exps = vec![0u32; n * n];
            exps[var(i, i)] = 1;
            terms.push((Monomial(exps), base.one()));
        }
        terms.push((Monomial::one(n * n), base.embed_i64(-r)));
        generators.push(MPoly::from_terms(&base, n * n, terms));
    }
    IdealBasis::new(&ring, generators)
}

/// Dimension of the variety of idempotent n×n matrices over ℚ, by the full
/// pipeline: Buchberger under graded lexicographic x₁₁ > … > x_nn, the
/// leading-term ideal, and the combinatorial monomial-ideal dimension.
/// `max_pairs` caps the Buchberger pair count ([`Error::BudgetExceeded`]).
pub fn variety_dimension(n: usize, max_pairs: u64) -> Result<usize> {
    let ideal = idempotent_ideal(n, None)?;
    let order = MonomialOrder::new(OrderKind::Grlex, n * n);
    let gb = buchberger(&ideal, &order, max_pairs)?;
    let lt = leading_term_ideal(&gb);
    monomial_ideal_dimension(&lt, n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingValue;

    fn qq() -> Ring {
        Ring::rationals()
    }

    fn pring(num_vars: usize) -> Ring {
        Ring::multi_poly(&qq(), num_vars).unwrap()
    }

    fn mp(ring: &Ring, text: &str) -> MPoly {
        match RingValue::parse(ring, text).unwrap().payload() {
            Scalar::MPoly(p) => p.clone(),
            other => panic!("expected a multivariate payload, got {other:?}"),
        }
    }

    fn mono(exps: &[u32]) -> Monomial {
        Monomial(exps.to_vec())
    }

    // Four variables a,b,c,d = x1..x4; the entries of X²−X for 2×2 X.
    fn two_by_two_generators(ring: &Ring) -> Vec<MPoly> {
        vec![
            mp(ring, "x1^2+x2*x3-x1"),
            mp(ring, "x1*x2+x2*x4-x2"),
            mp(ring, "x1*x3+x3*x4-x3"),
            mp(ring, "x2*x3+x4^2-x4"),
        ]
    }

    #[test]
    fn grlex_compares_by_degree_then_lexicographically() {
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        // a² > ab
        assert_eq!(
            ord.compare(&mono(&[2, 0, 0, 0]), &mono(&[1, 1, 0, 0]))
                .unwrap(),
            Ordering::Greater
        );
        // ad² > d³
        assert_eq!(
            ord.compare(&mono(&[1, 0, 0, 2]), &mono(&[0, 0, 0, 3]))
                .unwrap(),
            Ordering::Greater
        );
        // 1 < d
        assert_eq!(
            ord.compare(&mono(&[0, 0, 0, 0]), &mono(&[0, 0, 0, 1]))
                .unwrap(),
            Ordering::Less
        );
        assert_eq!(
            ord.compare(&mono(&[1, 1, 0, 0]), &mono(&[1, 1, 0, 0]))
                .unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn lex_ignores_total_degree() {
        let ord = MonomialOrder::new(OrderKind::Lex, 3);
        // x > y²: lexicographic order disregards degree.
        assert_eq!(
            ord.compare(&mono(&[1, 0, 0]), &mono(&[0, 2, 0])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn grevlex_differs_from_grlex_on_ties() {
        let grlex = MonomialOrder::new(OrderKind::Grlex, 3);
        let grevlex = MonomialOrder::new(OrderKind::Grevlex, 3);
        // x1·x3² vs x2³, both degree 3: grlex favors the x1, grevlex
        // penalizes the larger exponent on the last variable.
        let m1 = mono(&[1, 0, 2]);
        let m2 = mono(&[0, 3, 0]);
        assert_eq!(grlex.compare(&m1, &m2).unwrap(), Ordering::Greater);
        assert_eq!(grevlex.compare(&m1, &m2).unwrap(), Ordering::Less);
    }

    #[test]
    fn precedence_permutation_reorders_significance() {
        let ord = MonomialOrder::with_precedence(OrderKind::Lex, vec![2, 1, 0]).unwrap();
        // With x3 most significant, x3 beats x1.
        assert_eq!(
            ord.compare(&mono(&[1, 0, 0]), &mono(&[0, 0, 1])).unwrap(),
            Ordering::Less
        );
        assert!(MonomialOrder::with_precedence(OrderKind::Lex, vec![0, 0, 1]).is_err());
        assert!(MonomialOrder::with_precedence(OrderKind::Lex, vec![1, 2]).is_err());
    }

    #[test]
    fn compare_rejects_mismatched_arity() {
        let ord = MonomialOrder::new(OrderKind::Grlex, 3);
        assert!(ord.compare(&mono(&[1, 0]), &mono(&[0, 1, 0])).is_err());
        assert!(monomial_compare(&ord, &mono(&[1, 0, 0]), &mono(&[0, 1])).is_err());
    }

    #[test]
    fn leading_term_scans_under_the_active_order() {
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        let f = mp(&ring, "x1*x4^2+x4^3-x1*x4-2*x4^2+x4");
        let (m, c) = leading_term(&f, &ord).unwrap().unwrap();
        assert_eq!(m, mono(&[1, 0, 0, 2]));
        assert!(qq().is_one(&c));
        assert!(leading_term(&MPoly::zero(4), &ord).unwrap().is_none());
    }

    #[test]
    fn reduce_by_self_gives_zero_and_by_nothing_gives_back_the_input() {
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        let g = mp(&ring, "x1^2+x2*x3-x1");
        assert!(poly_reduce(&g, std::slice::from_ref(&g), &ord, &ring)
            .unwrap()
            .is_zero());
        assert_eq!(poly_reduce(&g, &[], &ord, &ring).unwrap(), g);
        assert!(poly_reduce(&g, &[MPoly::zero(4)], &ord, &ring).is_err());
    }

    #[test]
    fn reduction_of_a_generator_combination_exposes_a_new_leading_term() {
        // −c·f₂ + (a+d−1)·f₄ expands to ad²+d³−ad−2d²+d, none of whose
        // monomials the generators' leading terms divide, so reduction
        // returns it unchanged and its grlex leading term is ad².
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        let gens = two_by_two_generators(&ring);
        let combo = RingValue::new(ring.clone(), Scalar::MPoly(mp(&ring, "-x3")))
            .unwrap()
            .mul(&RingValue::new(ring.clone(), Scalar::MPoly(gens[1].clone())).unwrap())
            .unwrap()
            .add(
                &RingValue::new(ring.clone(), Scalar::MPoly(mp(&ring, "x1+x4-1")))
                    .unwrap()
                    .mul(&RingValue::new(ring.clone(), Scalar::MPoly(gens[3].clone())).unwrap())
                    .unwrap(),
            )
            .unwrap();
        let combo = match combo.payload() {
            Scalar::MPoly(p) => p.clone(),
            other => panic!("unexpected payload {other:?}"),
        };
        let expected = mp(&ring, "x1*x4^2+x4^3-x1*x4-2*x4^2+x4");
        assert_eq!(combo, expected);

        let reduced = poly_reduce(&combo, &gens, &ord, &ring).unwrap();
        assert_eq!(reduced, expected);
        let (lt, _) = leading_term(&reduced, &ord).unwrap().unwrap();
        assert_eq!(lt, mono(&[1, 0, 0, 2]));
    }

    #[test]
    fn a_principal_ideal_is_its_own_reduced_basis() {
        let ring = pring(1);
        let ord = MonomialOrder::new(OrderKind::Grlex, 1);
        let ideal = IdealBasis::new(&ring, vec![mp(&ring, "x1")]).unwrap();
        let gb = buchberger(&ideal, &ord, 100).unwrap();
        assert_eq!(gb.elements(), &[mp(&ring, "x1")]);

        let ideal = IdealBasis::new(&ring, vec![mp(&ring, "3*x1^2-3*x1")]).unwrap();
        let gb = buchberger(&ideal, &ord, 100).unwrap();
        assert_eq!(gb.elements(), &[mp(&ring, "x1^2-x1")]);
    }

    #[test]
    fn two_linear_forms_triangularize_under_lex() {
        let ring = pring(3);
        let ord = MonomialOrder::new(OrderKind::Lex, 3);
        let ideal = IdealBasis::new(&ring, vec![mp(&ring, "x1-x2"), mp(&ring, "x2-x3")]).unwrap();
        let gb = buchberger(&ideal, &ord, 100).unwrap();
        // Ascending leading terms: y−z before x−z.
        assert_eq!(gb.elements(), &[mp(&ring, "x2-x3"), mp(&ring, "x1-x3")]);
    }

    #[test]
    fn redundant_monomial_generators_are_minimalized_away() {
        let ring = pring(2);
        let ord = MonomialOrder::new(OrderKind::Grlex, 2);
        let ideal = IdealBasis::new(&ring, vec![mp(&ring, "x1^2"), mp(&ring, "x1^2*x2")]).unwrap();
        let gb = buchberger(&ideal, &ord, 100).unwrap();
        assert_eq!(gb.elements(), &[mp(&ring, "x1^2")]);
        assert_eq!(leading_term_ideal(&gb), vec![mono(&[2, 0])]);
    }

    #[test]
    fn idempotent_matrix_ideal_has_the_expected_leading_terms() {
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        let ideal = IdealBasis::new(&ring, two_by_two_generators(&ring)).unwrap();
        let gb = buchberger(&ideal, &ord, 10_000).unwrap();

        let mut lts = gb.leading_monomials();
        lts.sort();
        // {a², ab, ac, bc, ad²}
        let mut expected = vec![
            mono(&[2, 0, 0, 0]),
            mono(&[1, 1, 0, 0]),
            mono(&[1, 0, 1, 0]),
            mono(&[0, 1, 1, 0]),
            mono(&[1, 0, 0, 2]),
        ];
        expected.sort();
        assert_eq!(lts, expected);
        assert_eq!(gb.len(), 5);
        assert_eq!(leading_term_ideal(&gb).len(), 5);

        // Every element is monic.
        for g in gb.elements() {
            let (_, c) = leading_term(g, &ord).unwrap().unwrap();
            assert!(qq().is_one(&c));
        }
    }

    #[test]
    fn groebner_certificate_holds_for_the_computed_bases() {
        for (ring, ord, gens) in [
            (
                pring(4),
                MonomialOrder::new(OrderKind::Grlex, 4),
                two_by_two_generators(&pring(4)),
            ),
            (
                pring(3),
                MonomialOrder::new(OrderKind::Lex, 3),
                vec![mp(&pring(3), "x1-x2"), mp(&pring(3), "x2-x3")],
            ),
        ] {
            let ideal = IdealBasis::new(&ring, gens.clone()).unwrap();
            let gb = buchberger(&ideal, &ord, 10_000).unwrap();
            // Every S-polynomial of basis elements reduces to zero…
            for i in 0..gb.len() {
                for j in (i + 1)..gb.len() {
                    let s =
                        s_polynomial(&gb.elements()[i], &gb.elements()[j], &ord, &ring).unwrap();
                    assert!(gb.reduce(&s).unwrap().is_zero());
                }
            }
            // …and so does every original generator.
            for g in &gens {
                assert!(gb.reduce(g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn reduced_basis_is_canonical_under_generator_permutation() {
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        let gens = two_by_two_generators(&ring);
        let baseline =
            buchberger(&IdealBasis::new(&ring, gens.clone()).unwrap(), &ord, 10_000).unwrap();
        for permuted in [
            vec![
                gens[3].clone(),
                gens[2].clone(),
                gens[1].clone(),
                gens[0].clone(),
            ],
            vec![
                gens[1].clone(),
                gens[3].clone(),
                gens[0].clone(),
                gens[2].clone(),
            ],
        ] {
            let gb = buchberger(&IdealBasis::new(&ring, permuted).unwrap(), &ord, 10_000).unwrap();
            assert_eq!(gb.elements(), baseline.elements());
        }
    }

    #[test]
    fn pair_budget_exhaustion_is_reported() {
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        let ideal = IdealBasis::new(&ring, two_by_two_generators(&ring)).unwrap();
        match buchberger(&ideal, &ord, 1) {
            Err(Error::BudgetExceeded(_)) => {}
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_detects_membership() {
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Grlex, 4);
        let gens = two_by_two_generators(&ring);
        let gb = buchberger(&IdealBasis::new(&ring, gens).unwrap(), &ord, 10_000).unwrap();
        let f = mp(&ring, "x1^3+x2*x3*x4-7");
        let r = gb.reduce(&f).unwrap();
        assert_eq!(gb.reduce(&r).unwrap(), r);
        assert!(!r.is_zero());
    }

    #[test]
    fn monomial_dimension_counts_complement_of_minimum_hitting_set() {
        // Zero ideal: the whole affine space.
        assert_eq!(monomial_ideal_dimension(&[], 4).unwrap(), 4);
        // One variable: a hyperplane.
        assert_eq!(
            monomial_ideal_dimension(&[mono(&[1, 0, 0, 0])], 4).unwrap(),
            3
        );
        // The 2×2 idempotent leading terms: dimension 2.
        let lts = vec![
            mono(&[2, 0, 0, 0]),
            mono(&[1, 1, 0, 0]),
            mono(&[1, 0, 1, 0]),
            mono(&[0, 1, 1, 0]),
            mono(&[1, 0, 0, 2]),
        ];
        assert_eq!(monomial_ideal_dimension(&lts, 4).unwrap(), 2);
        // Adding a generator can only cut the variety down.
        assert_eq!(
            monomial_ideal_dimension(&[mono(&[1, 1, 0, 0])], 4).unwrap(),
            3
        );
        assert_eq!(
            monomial_ideal_dimension(&[mono(&[1, 1, 0, 0]), mono(&[0, 0, 1, 0])], 4).unwrap(),
            2
        );
        // A unit monomial means the empty variety: no dimension.
        assert!(monomial_ideal_dimension(&[mono(&[0, 0])], 2).is_err());
    }

    #[test]
    fn idempotent_ideal_lists_the_entries_of_x_squared_minus_x() {
        let ideal = idempotent_ideal(2, None).unwrap();
        let ring = ideal.ring().clone();
        assert_eq!(ideal.generators(), two_by_two_generators(&ring).as_slice());

        let sliced = idempotent_ideal(2, Some(1)).unwrap();
        assert_eq!(sliced.generators().len(), 5);
        assert_eq!(sliced.generators()[4], mp(&ring, "x1+x4-1"));

        let univariate = idempotent_ideal(1, None).unwrap();
        let uring = univariate.ring().clone();
        assert_eq!(univariate.generators(), &[mp(&uring, "x1^2-x1")]);

        assert!(idempotent_ideal(0, None).is_err());
    }

    #[test]
    fn variety_dimension_for_one_and_two_by_two() {
        // 1×1: the points {0, 1}.
        assert_eq!(variety_dimension(1, 1_000).unwrap(), 0);
        // 2×2: two isolated points plus a two-dimensional quadric of
        // projections; n−1 ≤ dim ≤ n²−2 must hold.
        let dim = variety_dimension(2, DEFAULT_PAIR_BUDGET).unwrap();
        assert_eq!(dim, 2);
        assert!((1..=2).contains(&dim));
    }

    #[test]
    fn variety_dimension_for_three_by_three() {
        let ideal = idempotent_ideal(3, None).unwrap();
        let order = MonomialOrder::new(OrderKind::Grlex, 9);
        let gb = buchberger(&ideal, &order, DEFAULT_PAIR_BUDGET).unwrap();
        let dim = monomial_ideal_dimension(&leading_term_ideal(&gb), 9).unwrap();
        assert_eq!(dim, 4);
        assert!((2..=7).contains(&dim));

        // Full certificate over the nine-variable basis.
        for i in 0..gb.len() {
            for j in (i + 1)..gb.len() {
                let s = s_polynomial(&gb.elements()[i], &gb.elements()[j], &order, ideal.ring())
                    .unwrap();
                assert!(gb.reduce(&s).unwrap().is_zero());
            }
        }
        for g in ideal.generators() {
            assert!(gb.reduce(g).unwrap().is_zero());
        }
    }

    #[test]
    fn linear_ideal_dimension_matches_matrix_corank() {
        // V(x1−x2, x2−x3) ⊂ 𝔸⁴ is a plane: 4 − rank of the coefficient
        // matrix. The Gröbner pipeline must agree with linear algebra.
        let ring = pring(4);
        let ord = MonomialOrder::new(OrderKind::Lex, 4);
        let gens = vec![mp(&ring, "x1-x2"), mp(&ring, "x2-x3")];
        let gb = buchberger(&IdealBasis::new(&ring, gens).unwrap(), &ord, 100).unwrap();
        let dim = monomial_ideal_dimension(&leading_term_ideal(&gb), 4).unwrap();

        let q = qq();
        let coeffs = crate::matrix::Matrix::from_fn(&q, 2, 4, |i, j| match (i, j) {
            (0, 0) | (1, 1) => q.one(),
            (0, 1) | (1, 2) => q.embed_i64(-1),
            _ => q.zero(),
        });
        assert_eq!(dim, 4 - crate::linalg::rank(&coeffs).unwrap());
    }

    #[test]
    fn ideal_basis_validates_its_inputs() {
        let ring = pring(2);
        // Zero generators are dropped.
        let ideal = IdealBasis::new(&ring, vec![MPoly::zero(2), mp(&ring, "x1")]).unwrap();
        assert_eq!(ideal.generators().len(), 1);
        // Wrong arity is rejected.
        assert!(IdealBasis::new(&ring, vec![MPoly::zero(3)]).is_err());
        // Integer coefficients are not a field.
        let zring = Ring::multi_poly(&Ring::integers(), 2).unwrap();
        assert!(IdealBasis::new(&zring, vec![]).is_err());
        // A non-polynomial ring is rejected outright.
        assert!(IdealBasis::new(&qq(), vec![]).is_err());
    }
}
