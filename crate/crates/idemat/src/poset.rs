//! The natural partial order e ≤ f ⟺ ef = e = fe on idempotents:
//! constructive enumeration of 𝒮(M_n(𝔽_p)) through (image, kernel) pairs,
//! Hasse diagrams layered by rank, interval extraction, and the
//! isomorphism [E, F] ≅ 𝒮(M_{Δr}) realized as an explicit bijection.

use crate::error::{Error, Result};
use crate::format;
use crate::idem::{diagonalize, Idempotent};
use crate::linalg;
use crate::matrix::{block_compose, block_split, hstack, BlockSpec, Matrix};
use crate::qcount;
use crate::ring::{Ring, Scalar};
use serde_json::{json, Value};

/// Ceiling on Σ_r |𝒮ⁿ_r(𝔽_p)| for the constructive enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 200_000;

/// Ceiling on p^(n²) for the brute-force oracle.
pub const BRUTE_FORCE_BUDGET: u64 = 10_000_000;

/// e ≤ f in the natural partial order: ef = e = fe.
pub fn leq(e: &Idempotent, f: &Idempotent) -> Result<bool> {
    check_same_poset(e, f)?;
    if &e.matrix().mul(f.matrix())? != e.matrix() {
        return Ok(false);
    }
    Ok(&f.matrix().mul(e.matrix())? == e.matrix())
}

/// F covers E exactly when E ≤ F and rank(F) = rank(E) + 1; over a field
/// no further minimality check is needed.
pub fn covers(e: &Idempotent, f: &Idempotent) -> Result<bool> {
    Ok(f.rank() == e.rank() + 1 && leq(e, f)?)
}

/// The block characterization of the order: E ≤ F iff A⁻¹FA, for A the
/// diagonalizing basis of E, is blockdiag(I_r, T) with T idempotent.
/// Equivalent to [`leq`]; exists so the equivalence is checkable.
pub fn leq_by_block_form(e: &Idempotent, f: &Idempotent) -> Result<bool> {
    check_same_poset(e, f)?;
    let w = diagonalize(e)?;
    let f_hat = f.matrix().embed_fraction_field()?;
    let conj = w.a_inv().mul(&f_hat)?.mul(w.a())?;
    let r = e.rank();
    let spec = block_split(&conj, r, r)?;
    let ring = conj.ring();
    Ok(spec.top_left == Matrix::identity(ring, r)
        && spec.top_right.is_zero()
        && spec.bottom_left.is_zero()
        && spec.bottom_right.mul(&spec.bottom_right)? == spec.bottom_right)
}

fn check_same_poset(e: &Idempotent, f: &Idempotent) -> Result<()> {
    if e.ring() != f.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", e.ring(), f.ring())));
    }
    if e.n() != f.n() {
        return Err(Error::DimensionMismatch(format!(
            "{}×{0} vs {1}×{1}",
            e.n(),
            f.n()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subspaces

/// A subspace of Fⁿ, held as the unique reduced column-echelon basis:
/// column k has a leading 1 in its pivot row, zeros above it, and zeros in
/// every other column's pivot row. Structural equality is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceRep {
    basis: Matrix,
    dim: usize,
}

impl SubspaceRep {
    /// Canonicalize the column span of an arbitrary matrix over a field.
    pub fn from_spanning(columns: &Matrix) -> Result<SubspaceRep> {
        if !columns.ring().is_field() {
            return Err(Error::UnsupportedRing(format!(
                "subspace representatives need a field, got {}",
                columns.ring()
            )));
        }
        // The column space of M is the row space of Mᵀ; RREF of Mᵀ is the
        // canonical representative of that row space.
        let reduced = linalg::rref(&columns.transpose())?;
        let dim = reduced.pivots.len();
        let basis = Matrix::from_fn(columns.ring(), columns.rows(), dim, |i, j| {
            reduced.r.entry(j, i).clone()
        });
        Ok(SubspaceRep { basis, dim })
    }

    /// Basis vectors as the columns of an n×dim matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension n of the ambient space Fⁿ.
    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }
}

pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Advance a little-endian-in-the-last-place base-p counter; false once it
/// wraps back to all zeros.
fn next_odometer(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// All r-dimensional subspaces of 𝔽_pⁿ, one canonical representative
/// each — exactly gaussian_binomial(n, r, p) of them.
pub fn enumerate_subspaces(n: usize, r: usize, p: u64) -> Result<Vec<SubspaceRep>> {
    let ring = Ring::prime_field(p)?;
    if r > n {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {r} exceeds ambient dimension {n}"
        )));
    }
    let mut out = Vec::new();
    for pivots in combinations(n, r) {
        // Free slots of the column-echelon form: (row j, column i) with
        // j > pivots[i] and j not itself a pivot row.
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (j, i))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let basis = Matrix::from_fn(&ring, n, r, |row, col| {
                if row == pivots[col] {
                    ring.one()
                } else if let Some(k) = free.iter().position(|&(fr, fc)| (fr, fc) == (row, col)) {
                    ring.embed_i64(digits[k] as i64)
                } else {
                    ring.zero()
                }
            });
            out.push(SubspaceRep { basis, dim: r });
            if !next_odometer(&mut digits, p) {
                break;
            }
        }
    }
    debug_assert_eq!(
        num_bigint::BigInt::from(out.len()),
        qcount::gaussian_binomial(n as u32, r as u32, p).unwrap_or_default()
    );
    Ok(out)
}

/// The projection onto `image` along `kernel`: the unique idempotent with
/// that image and kernel, namely A·diag(I_r, O)·A⁻¹ for
/// A = [image basis | kernel basis].
pub fn projection_idempotent(image: &SubspaceRep, kernel: &SubspaceRep) -> Result<Idempotent> {
    let ring = image.basis.ring();
    if kernel.basis.ring() != ring {
        return Err(Error::RingMismatch(format!(
            "{} vs {}",
            ring,
            kernel.basis.ring()
        )));
    }
    let n = image.ambient();
    if kernel.ambient() != n {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {n} vs {}",
            kernel.ambient()
        )));
    }
    if image.dim + kernel.dim != n {
        return Err(Error::NotComplementary(format!(
            "dimensions {} + {} ≠ {n}",
            image.dim, kernel.dim
        )));
    }
    let a = hstack(&image.basis, &kernel.basis)?;
    let a_inv = match linalg::invert(&a) {
        Ok(m) => m,
        Err(Error::SingularMatrix(_)) => {
            return Err(Error::NotComplementary(
                "image and kernel bases do not span the whole space".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let r = image.dim;
    let d = Matrix::from_fn(ring, n, n, |i, j| {
        if i == j && i < r {
            ring.one()
        } else {
            ring.zero()
        }
    });
    let e = a.mul(&d)?.mul(&a_inv)?;
    Idempotent::with_rank(e, r)
}

// ---------------------------------------------------------------------------
// Enumeration of 𝒮(M_n(𝔽_p))

fn entry_key(m: &Matrix) -> Vec<u64> {
    let mut key = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            match m.entry(i, j) {
                Scalar::Res(v) => key.push(*v),
                _ => unreachable!("enumeration stays over a prime field"),
            }
        }
    }
    key
}

fn scan_pairs(images: &[SubspaceRep], kernels: &[SubspaceRep]) -> Result<Vec<Idempotent>> {
    let mut out = Vec::new();
    for im in images {
        for ker in kernels {
            match projection_idempotent(im, ker) {
                Ok(e) => out.push(e),
                Err(Error::NotComplementary(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// All idempotents of M_n(𝔽_p), each exactly once, ordered by rank and
/// then lexicographically by row-major entries. A rank-r idempotent is
/// determined by its (image, kernel) pair, and every complementary pair of
/// an r-subspace and an (n−r)-subspace yields one, so scanning those pairs
/// enumerates the layer without duplicates.
pub fn enumerate_idempotents(n: usize, p: u64) -> Result<Vec<Idempotent>> {
    enumerate_idempotents_with(n, p, DEFAULT_ENUM_BUDGET, 1)
}

/// [`enumerate_idempotents`] with an explicit element budget and worker
/// count. Workers split the image subspaces of each rank layer; the final
/// ordering is independent of the split.
pub fn enumerate_idempotents_with(
    n: usize,
    p: u64,
    max_elements: u64,
    threads: usize,
) -> Result<Vec<Idempotent>> {
    Ring::prime_field(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "matrix size must be positive".into(),
        ));
    }
    let n32 = u32::try_from(n)
        .map_err(|_| Error::InvalidArgument(format!("matrix size {n} out of range")))?;
    let mut total = num_bigint::BigInt::from(0);
    for r in 0..=n32 {
        total += qcount::idempotent_count(n32, r, p)?;
    }
    if total > num_bigint::BigInt::from(max_elements) {
        return Err(Error::BudgetExceeded(format!(
            "|𝒮(M_{n}(𝔽_{p}))| = {total} exceeds the budget of {max_elements}"
        )));
    }

    let mut all = Vec::new();
    for r in 0..=n {
        let images = enumerate_subspaces(n, r, p)?;
        let kernels = enumerate_subspaces(n, n - r, p)?;
        let mut layer = if threads <= 1 || images.len() < 2 {
            scan_pairs(&images, &kernels)?
        } else {
            let kernels = &kernels;
            let chunk = images.len().div_ceil(threads);
            let partials: Vec<Result<Vec<Idempotent>>> = std::thread::scope(|s| {
                let handles: Vec<_> = images
                    .chunks(chunk)
                    .map(|part| s.spawn(move || scan_pairs(part, kernels)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("enumeration worker panicked"))
                    .collect()
            });
            let mut merged = Vec::new();
            for part in partials {
                merged.extend(part?);
            }
            merged
        };
        layer.sort_by_key(|e| entry_key(e.matrix()));
        debug_assert_eq!(
            num_bigint::BigInt::from(layer.len()),
            qcount::idempotent_count(n32, r as u32, p)?
        );
        all.extend(layer);
    }
    Ok(all)
}

/// Oracle enumeration: every one of the p^(n²) matrices, filtered by
/// E² = E. Same ordering as [`enumerate_idempotents`], so the two results
/// are directly comparable. Guarded by [`BRUTE_FORCE_BUDGET`].
pub fn brute_force_idempotents(n: usize, p: u64) -> Result<Vec<Idempotent>> {
    let ring = Ring::prime_field(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "matrix size must be positive".into(),
        ));
    }
    let cells = u32::try_from(n * n)
        .map_err(|_| Error::InvalidArgument(format!("matrix size {n} out of range")))?;
    (0..cells).try_fold(1u64, |acc, _| {
        acc.checked_mul(p)
            .filter(|&v| v <= BRUTE_FORCE_BUDGET)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "p^(n²) = {p}^{cells} exceeds the oracle budget of {BRUTE_FORCE_BUDGET}"
                ))
            })
    })?;

    let mut out = Vec::new();
    let mut digits = vec![0u64; cells as usize];
    loop {
        let m = Matrix::from_fn(&ring, n, n, |i, j| ring.embed_i64(digits[i * n + j] as i64));
        if m.mul(&m)? == m {
            out.push(Idempotent::new(m)?);
        }
        if !next_odometer(&mut digits, p) {
            break;
        }
    }
    out.sort_by(|a, b| (a.rank(), entry_key(a.matrix())).cmp(&(b.rank(), entry_key(b.matrix()))));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Hasse diagrams

/// One node of a Hasse diagram: a dense id, the idempotent, and its rank.
#[derive(Clone, Debug)]
pub struct PosetElement {
    pub id: usize,
    pub idem: Idempotent,
    pub rank: usize,
}

/// The Hasse diagram of 𝒮(M_n(𝔽_p)): elements layered by rank with ids
/// assigned in (rank, lexicographic-entry) order, and cover edges, each
/// joining consecutive ranks, listed lower id → upper id.
#[derive(Clone, Debug)]
pub struct HasseDiagram {
    n: usize,
    p: u64,
    layers: Vec<Vec<PosetElement>>,
    covers: Vec<(usize, usize)>,
}

/// Build the Hasse diagram of 𝒮(M_n(𝔽_p)). Covers are computed only
/// between consecutive rank layers: a cover forces rank to step by exactly
/// one, so no other pair needs testing.
pub fn build_hasse(n: usize, p: u64) -> Result<HasseDiagram> {
    build_hasse_with(n, p, DEFAULT_ENUM_BUDGET, 1)
}

/// [`build_hasse`] with an explicit enumeration budget and worker count.
pub fn build_hasse_with(
    n: usize,
    p: u64,
    max_elements: u64,
    threads: usize,
) -> Result<HasseDiagram> {
    let elements = enumerate_idempotents_with(n, p, max_elements, threads)?;
    let mut layers: Vec<Vec<PosetElement>> = vec![Vec::new(); n + 1];
    for (id, idem) in elements.into_iter().enumerate() {
        let rank = idem.rank();
        layers[rank].push(PosetElement { id, idem, rank });
    }
    assert!(
        layers[0].len() == 1 && layers[0][0].idem.matrix().is_zero(),
        "bottom layer must be the zero matrix"
    );
    assert!(
        layers[n].len() == 1,
        "top layer must be the identity matrix alone"
    );

    let mut covers = Vec::new();
    for r in 0..n {
        for lower in &layers[r] {
            for upper in &layers[r + 1] {
                if leq(&lower.idem, &upper.idem)? {
                    covers.push((lower.id, upper.id));
                }
            }
        }
    }
    Ok(HasseDiagram {
        n,
        p,
        layers,
        covers,
    })
}

impl HasseDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Layers indexed by rank 0..=n, each sorted by id.
    pub fn layers(&self) -> &[Vec<PosetElement>] {
        &self.layers
    }

    /// Cover edges as (lower id, upper id) pairs.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = &PosetElement> {
        self.layers.iter().flatten()
    }

    pub fn element(&self, id: usize) -> Option<&PosetElement> {
        let mut offset = 0;
        for layer in &self.layers {
            if id < offset + layer.len() {
                return Some(&layer[id - offset]);
            }
            offset += layer.len();
        }
        None
    }

    /// The id of an idempotent in this diagram, if present.
    pub fn find(&self, e: &Idempotent) -> Option<usize> {
        if e.rank() >= self.layers.len() {
            return None;
        }
        self.layers[e.rank()]
            .iter()
            .find(|el| &el.idem == e)
            .map(|el| el.id)
    }

    /// Graphviz DOT, bottom-up: one `rank=same` subgraph per rank layer,
    /// node labels the row-major matrix entries, one edge per cover. The
    /// output is byte-deterministic for fixed (n, p).
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str("digraph idempotent_poset {\n");
        s.push_str("  rankdir=BT;\n");
        s.push_str("  node [shape=box fontname=\"monospace\"];\n");
        for (r, layer) in self.layers.iter().enumerate() {
            s.push_str(&format!("  subgraph rank_{r} {{\n    rank=same;\n"));
            for el in layer {
                s.push_str(&format!(
                    "    n{} [label=\"{}\"];\n",
                    el.id,
                    flat_label(el.idem.matrix())
                ));
            }
            s.push_str("  }\n");
        }
        for (lo, hi) in &self.covers {
            s.push_str(&format!("  n{lo} -> n{hi};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// JSON document {n, p, layers, covers}; each element carries its
    /// matrix in the shared matrix JSON format.
    pub fn to_json(&self) -> Result<Value> {
        let mut layers = Vec::new();
        for layer in &self.layers {
            let mut nodes = Vec::new();
            for el in layer {
                nodes.push(json!({
                    "id": el.id,
                    "rank": el.rank,
                    "matrix": format::to_json(el.idem.matrix())?,
                }));
            }
            layers.push(Value::Array(nodes));
        }
        let covers: Vec<Value> = self
            .covers
            .iter()
            .map(|&(lo, hi)| json!([lo, hi]))
            .collect();
        Ok(json!({
            "n": self.n,
            "p": self.p,
            "layers": layers,
            "covers": covers,
        }))
    }
}

fn flat_label(m: &Matrix) -> String {
    let mut parts = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            parts.push(m.value(i, j).to_string());
        }
    }
    parts.join(" ")
}

// ---------------------------------------------------------------------------
// Lifts, intervals, and the interval isomorphism

/// Every idempotent above E arises as A·blockdiag(I_r, T)·A⁻¹ for the
/// diagonalizing basis A of E and an idempotent T of the complementary
/// size; this builds that lift. Guarantees E ≤ F and
/// rank(F) = rank(E) + rank(T).
pub fn lift_above(e: &Idempotent, t: &Idempotent) -> Result<Idempotent> {
    if e.ring() != t.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", e.ring(), t.ring())));
    }
    if !e.ring().is_field() {
        return Err(Error::UnsupportedRing(format!(
            "lifts are computed over a field, got {}",
            e.ring()
        )));
    }
    let r = e.rank();
    let m = e.n() - r;
    if t.n() != m {
        return Err(Error::DimensionMismatch(format!(
            "complement block must be {m}×{m}, got {0}×{0}",
            t.n()
        )));
    }
    let w = diagonalize(e)?;
    let ring = e.ring();
    let spec = BlockSpec::new(
        Matrix::identity(ring, r),
        Matrix::zero(ring, r, m),
        Matrix::zero(ring, m, r),
        t.matrix().clone(),
    )?;
    let f = w.a().mul(&block_compose(&spec))?.mul(w.a_inv())?;
    let lifted = Idempotent::with_rank(f, r + t.rank())?;
    debug_assert!(leq(e, &lifted)?);
    Ok(lifted)
}

/// All G with E ≤ G ≤ F, drawn from a diagram containing both endpoints,
/// in id order.
pub fn interval(
    e: &Idempotent,
    f: &Idempotent,
    diagram: &HasseDiagram,
) -> Result<Vec<PosetElement>> {
    if !leq(e, f)? {
        return Err(Error::NotComparable(
            "interval endpoints must satisfy E ≤ F".into(),
        ));
    }
    if diagram.find(e).is_none() || diagram.find(f).is_none() {
        return Err(Error::InvalidArgument(
            "both endpoints must be elements of the diagram".into(),
        ));
    }
    let mut out = Vec::new();
    for rank in e.rank()..=f.rank() {
        for el in &diagram.layers[rank] {
            if leq(e, &el.idem)? && leq(&el.idem, f)? {
                out.push(el.clone());
            }
        }
    }
    Ok(out)
}

/// The order isomorphism [E, F] → 𝒮(M_Δr(F)) of the interval theorem,
/// as an invertible pair of maps. Writing A for the diagonalizing basis of
/// E, every G in [E, F] has A⁻¹GA = blockdiag(I_r, S) with S ∈ [O, T] for
/// T the complement block of F; conjugating S by T's own diagonalizing
/// basis B confines it to its upper-left Δr×Δr corner, which is the image.
#[derive(Clone, Debug)]
pub struct IntervalIsoWitness {
    e: Idempotent,
    f: Idempotent,
    a: Matrix,
    a_inv: Matrix,
    b: Matrix,
    b_inv: Matrix,
    r: usize,
    m: usize,
    delta: usize,
}

pub fn interval_iso_witness(e: &Idempotent, f: &Idempotent) -> Result<IntervalIsoWitness> {
    if !leq(e, f)? {
        return Err(Error::NotComparable(
            "interval endpoints must satisfy E ≤ F".into(),
        ));
    }
    let w = diagonalize(e)?;
    let r = e.rank();
    let m = e.n() - r;
    let delta = f.rank() - r;
    let f_hat = f.matrix().embed_fraction_field()?;
    let conj = w.a_inv().mul(&f_hat)?.mul(w.a())?;
    let spec = block_split(&conj, r, r)?;
    debug_assert!(spec.top_right.is_zero() && spec.bottom_left.is_zero());
    let t = Idempotent::with_rank(spec.bottom_right, delta)?;
    let wt = diagonalize(&t)?;
    Ok(IntervalIsoWitness {
        e: Idempotent::new(e.matrix().embed_fraction_field()?)?,
        f: Idempotent::new(f_hat)?,
        a: w.a().clone(),
        a_inv: w.a_inv().clone(),
        b: wt.a().clone(),
        b_inv: wt.a_inv().clone(),
        r,
        m,
        delta,
    })
}

impl IntervalIsoWitness {
    /// Size Δr = rank(F) − rank(E) of the target poset 𝒮(M_Δr).
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Ring of the target poset (the fraction field of the source ring).
    pub fn target_ring(&self) -> &Ring {
        self.a.ring()
    }

    /// Forward map [E, F] → 𝒮(M_Δr): G ↦ upper-left Δr block of
    /// B⁻¹·(lower-right m block of A⁻¹GA)·B.
    pub fn apply(&self, g: &Idempotent) -> Result<Idempotent> {
        let g_hat = Idempotent::new(g.matrix().embed_fraction_field()?)?;
        if !leq(&self.e, &g_hat)? || !leq(&g_hat, &self.f)? {
            return Err(Error::NotComparable(
                "argument lies outside the interval [E, F]".into(),
            ));
        }
        let conj = self.a_inv.mul(g_hat.matrix())?.mul(&self.a)?;
        let s = block_split(&conj, self.r, self.r)?.bottom_right;
        let inner = self.b_inv.mul(&s)?.mul(&self.b)?;
        let h = block_split(&inner, self.delta, self.delta)?.top_left;
        Idempotent::with_rank(h, g_hat.rank() - self.r)
    }

    /// Inverse map 𝒮(M_Δr) → [E, F]: H ↦ A·blockdiag(I_r, B·blockdiag(H, O)·B⁻¹)·A⁻¹.
    pub fn apply_inverse(&self, h: &Idempotent) -> Result<Idempotent> {
        if h.n() != self.delta {
            return Err(Error::DimensionMismatch(format!(
                "expected a {0}×{0} idempotent, got {1}×{1}",
                self.delta,
                h.n()
            )));
        }
        let ring = self.a.ring();
        let h_hat = h.matrix().embed_fraction_field()?;
        if h_hat.ring() != ring {
            return Err(Error::RingMismatch(format!("{} vs {ring}", h_hat.ring())));
        }
        let padded = block_compose(&BlockSpec::new(
            h_hat,
            Matrix::zero(ring, self.delta, self.m - self.delta),
            Matrix::zero(ring, self.m - self.delta, self.delta),
            Matrix::zero(ring, self.m - self.delta, self.m - self.delta),
        )?);
        let s = self.b.mul(&padded)?.mul(&self.b_inv)?;
        let outer = block_compose(&BlockSpec::new(
            Matrix::identity(ring, self.r),
            Matrix::zero(ring, self.r, self.m),
            Matrix::zero(ring, self.m, self.r),
            s,
        )?);
        let g = self.a.mul(&outer)?.mul(&self.a_inv)?;
        Idempotent::with_rank(g, self.r + h.rank())
    }
}
