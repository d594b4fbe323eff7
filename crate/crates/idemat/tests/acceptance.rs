//! Acceptance suite: one test per numbered criterion, each ending in a single
//! `criterion NN ... PASS` line (visible with `cargo test --test acceptance
//! -- --nocapture`). Criterion 11 prints an explicit SKIP notice for its
//! expensive case when the S-polynomial pair budget is exhausted instead of
//! failing; every other shortfall is a hard test failure.
//!
//! The suite exercises the public API end to end: counting formulas, the
//! brute-force enumeration oracle, Hasse diagram goldens, the block
//! characterization of the natural partial order, cover and interval
//! structure, Smith-normal-form invariants on random inputs, the Kronecker
//! idempotence criterion, and Gröbner-based variety dimensions.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use idemat::format;
use idemat::groebner::{
    buchberger, idempotent_ideal, leading_term_ideal, variety_dimension, MonomialOrder, OrderKind,
    DEFAULT_PAIR_BUDGET,
};
use idemat::idem::{
    block_build_idempotent, is_idempotent, kron_idempotent, scaled_idempotent_factor,
    BlockBuilderInput, Idempotent,
};
use idemat::matrix::{kronecker, Matrix};
use idemat::poset::{
    brute_force_idempotents, build_hasse, covers, enumerate_idempotents, interval,
    interval_iso_witness, leq, leq_by_block_form, HasseDiagram, PosetElement,
};
use idemat::qcount::idempotent_count;
use idemat::ring::{Ring, RingValue};
use idemat::smith::{gcd_of_minors, smith_normal_form};
use idemat::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Environment override for the Gröbner pair budget used by criterion 11.
const PAIR_BUDGET_ENV: &str = "IDEMAT_PAIR_BUDGET";

fn report(num: u32, what: &str, start: Instant) {
    println!(
        "criterion {num:02}: {what} ... PASS ({:.2}s)",
        start.elapsed().as_secs_f64()
    );
}

fn within(num: u32, limit_secs: u64, start: Instant) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(limit_secs),
        "criterion {num:02} exceeded its {limit_secs}s time budget: {elapsed:.2?}"
    );
}

fn text_key(m: &Matrix) -> String {
    format::to_text(m).expect("every test matrix has a text form")
}

fn zz() -> Ring {
    Ring::integers()
}

fn qq() -> Ring {
    Ring::rationals()
}

fn f2x() -> Ring {
    Ring::poly(&Ring::prime_field(2).unwrap()).unwrap()
}

/// Elements of 𝒮(M₃(𝔽₂)) in diagram id order plus the full ≤ relation as a
/// boolean matrix indexed by id. Shared by criteria 4–6.
fn m3_f2_order() -> (HasseDiagram, Vec<PosetElement>, Vec<Vec<bool>>) {
    let diagram = build_hasse(3, 2).expect("diagram of 3×3 idempotents over 𝔽₂");
    let elements: Vec<PosetElement> = diagram.elements().cloned().collect();
    let m = elements.len();
    let mut le = vec![vec![false; m]; m];
    for (i, e) in elements.iter().enumerate() {
        for (j, f) in elements.iter().enumerate() {
            le[i][j] = leq(&e.idem, &f.idem).unwrap();
        }
    }
    (diagram, elements, le)
}

#[test]
fn criterion_01_layer_counts_match_the_gaussian_binomial_formula() {
    let start = Instant::now();
    for &(n, p) in &[(1usize, 2u64), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let all = enumerate_idempotents(n, p).unwrap();
        let mut by_rank = vec![0u64; n + 1];
        for e in &all {
            by_rank[e.rank()] += 1;
        }
        for (r, &layer_size) in by_rank.iter().enumerate() {
            let expected = idempotent_count(n as u32, r as u32, p).unwrap();
            assert_eq!(
                BigInt::from(layer_size),
                expected,
                "rank-{r} layer of n={n}, p={p}"
            );
        }
        assert_eq!(
            all.len() as u64,
            by_rank.iter().sum::<u64>(),
            "every enumerated element lands in exactly one layer"
        );
    }
    // Anchor values: 6 rank-1 idempotents in M₂(𝔽₂); 58 idempotents in M₃(𝔽₂).
    let m2 = enumerate_idempotents(2, 2).unwrap();
    assert_eq!(m2.iter().filter(|e| e.rank() == 1).count(), 6);
    assert_eq!(enumerate_idempotents(3, 2).unwrap().len(), 58);
    within(1, 10, start);
    report(
        1,
        "rank-layer sizes equal [n r]_q · q^{r(n−r)} for all five instances",
        start,
    );
}

#[test]
fn criterion_02_constructive_enumeration_equals_the_brute_force_oracle() {
    let start = Instant::now();
    for &(n, p) in &[(2usize, 2u64), (2, 3), (3, 2)] {
        let mut constructed: Vec<String> = enumerate_idempotents(n, p)
            .unwrap()
            .iter()
            .map(|e| text_key(e.matrix()))
            .collect();
        let mut filtered: Vec<String> = brute_force_idempotents(n, p)
            .unwrap()
            .iter()
            .map(|e| text_key(e.matrix()))
            .collect();
        constructed.sort();
        filtered.sort();
        let distinct = constructed.iter().collect::<BTreeSet<_>>().len();
        assert_eq!(
            distinct,
            constructed.len(),
            "no duplicates for n={n}, p={p}"
        );
        assert_eq!(constructed, filtered, "set equality for n={n}, p={p}");
    }
    within(2, 30, start);
    report(
        2,
        "constructive enumeration equals the exhaustive E²=E filter",
        start,
    );
}

#[test]
fn criterion_03_hasse_diagrams_match_the_golden_counts() {
    let start = Instant::now();
    let cases: &[(usize, u64, usize, usize, &[usize])] = &[
        (1, 2, 2, 1, &[1, 1]),
        (2, 2, 8, 12, &[1, 6, 1]),
        (3, 2, 58, 224, &[1, 28, 28, 1]),
    ];
    for &(n, p, nodes, edges, layers) in cases {
        let d = build_hasse(n, p).unwrap();
        assert_eq!(d.len(), nodes, "node count for n={n}, p={p}");
        assert_eq!(d.covers().len(), edges, "edge count for n={n}, p={p}");
        let sizes: Vec<usize> = d.layers().iter().map(|l| l.len()).collect();
        assert_eq!(sizes, layers, "layer sizes for n={n}, p={p}");
    }
    report(
        3,
        "Hasse diagrams have 2/1, 8/12, and 58/224 nodes/edges",
        start,
    );
}

#[test]
fn criterion_04_order_agrees_with_the_block_characterization() {
    let start = Instant::now();
    let (_, elements, le) = m3_f2_order();
    assert_eq!(elements.len(), 58);
    for (i, e) in elements.iter().enumerate() {
        for (j, f) in elements.iter().enumerate() {
            let block = leq_by_block_form(&e.idem, &f.idem).unwrap();
            assert_eq!(
                le[i][j], block,
                "definitional EF=E=FE vs block form on pair ({i}, {j})"
            );
        }
    }
    within(4, 60, start);
    report(
        4,
        "leq matches the block characterization on all 58² ordered pairs",
        start,
    );
}

#[test]
fn criterion_05_covers_are_exactly_the_rank_plus_one_comparable_pairs() {
    let start = Instant::now();
    let (diagram, elements, le) = m3_f2_order();
    let m = elements.len();
    let mut definitional_edges = BTreeSet::new();
    for i in 0..m {
        for j in 0..m {
            if i == j || !le[i][j] {
                continue;
            }
            // Definitional covering: no element strictly between.
            let has_middle = (0..m).any(|k| k != i && k != j && le[i][k] && le[k][j]);
            let by_rank = elements[j].rank == elements[i].rank + 1;
            assert_eq!(
                !has_middle, by_rank,
                "cover characterization on pair ({i}, {j})"
            );
            assert_eq!(
                covers(&elements[i].idem, &elements[j].idem).unwrap(),
                by_rank,
                "covers() on pair ({i}, {j})"
            );
            if !has_middle {
                definitional_edges.insert((i, j));
            }
        }
    }
    let diagram_edges: BTreeSet<(usize, usize)> = diagram.covers().iter().copied().collect();
    assert_eq!(diagram_edges, definitional_edges, "diagram edge set");
    report(
        5,
        "definitional covering coincides with rank stepping by one",
        start,
    );
}

#[test]
fn criterion_06_intervals_are_isomorphic_to_smaller_idempotent_posets() {
    let start = Instant::now();
    let (diagram, elements, le) = m3_f2_order();
    let m = elements.len();
    let expected_sizes = [1usize, 2, 8, 58];
    // Sorted text keys of 𝒮(M_δ(𝔽₂)) for δ = 1..3, the codomains of the witnesses.
    let mut target_keys: Vec<Vec<String>> = vec![Vec::new()];
    for delta in 1..=3 {
        let mut keys: Vec<String> = enumerate_idempotents(delta, 2)
            .unwrap()
            .iter()
            .map(|e| text_key(e.matrix()))
            .collect();
        keys.sort();
        target_keys.push(keys);
    }
    let mut comparable_pairs = 0usize;
    for i in 0..m {
        for j in 0..m {
            if !le[i][j] {
                continue;
            }
            comparable_pairs += 1;
            let e = &elements[i].idem;
            let f = &elements[j].idem;
            let delta = elements[j].rank - elements[i].rank;
            let inside = interval(e, f, &diagram).unwrap();
            assert_eq!(
                inside.len(),
                expected_sizes[delta],
                "interval size of pair ({i}, {j})"
            );
            let witness = interval_iso_witness(e, f).unwrap();
            assert_eq!(witness.delta(), delta);
            let images: Vec<Idempotent> = inside
                .iter()
                .map(|g| witness.apply(&g.idem).unwrap())
                .collect();
            if delta == 0 {
                assert_eq!(images.len(), 1);
                assert_eq!(images[0].n(), 0);
            } else {
                // Image key set equals the whole target poset: a bijection.
                let mut keys: Vec<String> = images.iter().map(|h| text_key(h.matrix())).collect();
                keys.sort();
                assert_eq!(keys, target_keys[delta], "image of pair ({i}, {j})");
            }
            for (g, h) in inside.iter().zip(&images) {
                let back = witness.apply_inverse(h).unwrap();
                assert_eq!(
                    back.matrix(),
                    g.idem.matrix(),
                    "round trip through pair ({i}, {j})"
                );
            }
            // Covers preserved in both directions.
            for (a, ga) in inside.iter().enumerate() {
                for (b, gb) in inside.iter().enumerate() {
                    if a == b {
                        continue;
                    }
                    let ambient = covers(&ga.idem, &gb.idem).unwrap();
                    let image = covers(&images[a], &images[b]).unwrap();
                    assert_eq!(
                        ambient, image,
                        "cover preservation in pair ({i}, {j}), elements ({a}, {b})"
                    );
                }
            }
        }
    }
    assert!(comparable_pairs > 58, "sanity: comparability is nontrivial");
    report(
        6,
        "every interval maps onto the matching smaller idempotent poset",
        start,
    );
}

#[test]
fn criterion_07_sample_idempotents_build_and_reduce_bit_exactly() {
    let start = Instant::now();

    // 4×4 integer sample with its coprime-template blocks.
    let z = zz();
    let sample_z = Matrix::from_i64_rows(
        &z,
        &[
            &[6, -2, -3, 7],
            &[15, -5, -9, 21],
            &[21, -7, 15, -35],
            &[9, -3, 6, -14],
        ],
    )
    .unwrap();
    assert!(is_idempotent(&sample_z).unwrap());
    let blocks_z = BlockBuilderInput::new(
        Matrix::from_i64_rows(&z, &[&[3, -1], &[0, 0]]).unwrap(),
        Matrix::from_i64_rows(&z, &[&[0, 0], &[-3, 7]]).unwrap(),
        Matrix::from_i64_rows(&z, &[&[2, 1], &[5, 3]]).unwrap(),
        Matrix::from_i64_rows(&z, &[&[7, -5], &[3, -2]]).unwrap(),
    )
    .unwrap();
    assert_eq!(
        block_build_idempotent(&blocks_z).unwrap().matrix(),
        &sample_z,
        "integer block reconstruction"
    );
    let snf_z = smith_normal_form(&sample_z).unwrap();
    let diag_z: Vec<String> = snf_z.diagonal().iter().map(|v| v.to_string()).collect();
    assert_eq!(diag_z, ["1", "1", "0", "0"], "integer invariant factors");

    // 4×4 sample over 𝔽₂[x] with its blocks.
    let rx = f2x();
    let sample_rx = Matrix::from_str_rows(
        &rx,
        &[
            &["x^3", "x^3+x^2+x", "x^5+x^4+1", "x^3+1"],
            &["x^3+x^2", "x^3+1", "x^5+x^3+x^2", "x^3+x^2"],
            &["x^3+x^2", "x^3+1", "x^3+x+1", "x+1"],
            &["x^5+x^3+x^2", "x^5+x^4+1", "x^5+x^4+x^3+x", "x^3+x"],
        ],
    )
    .unwrap();
    assert!(is_idempotent(&sample_rx).unwrap());
    let blocks_rx = BlockBuilderInput::new(
        Matrix::from_str_rows(&rx, &[&["x^2", "x^2+x+1"], &["0", "0"]]).unwrap(),
        Matrix::from_str_rows(&rx, &[&["0", "0"], &["x^3+x+1", "x+1"]]).unwrap(),
        Matrix::from_str_rows(&rx, &[&["x", "x^2+x+1"], &["x+1", "x^2"]]).unwrap(),
        Matrix::from_str_rows(&rx, &[&["x+1", "1"], &["x^3+x+1", "x^2+x"]]).unwrap(),
    )
    .unwrap();
    assert_eq!(
        block_build_idempotent(&blocks_rx).unwrap().matrix(),
        &sample_rx,
        "polynomial block reconstruction"
    );
    let snf_rx = smith_normal_form(&sample_rx).unwrap();
    let diag_rx: Vec<String> = snf_rx.diagonal().iter().map(|v| v.to_string()).collect();
    assert_eq!(
        diag_rx,
        ["1", "1", "0", "0"],
        "polynomial invariant factors"
    );

    report(
        7,
        "both 4×4 samples verify, rebuild from blocks, and reduce to diag(1,1,0,0)",
        start,
    );
}

#[test]
fn criterion_08_snf_properties_hold_on_random_matrices() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_1DE3);
    let z = zz();
    let rx = f2x();
    const PER_RING: usize = 1000;

    let mut random_matrix = |ring: &Ring, over_integers: bool| {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let mut draw = || -> RingValue {
            if over_integers {
                RingValue::from_i64(ring, rng.gen_range(-9..=9))
            } else {
                // Random polynomial over 𝔽₂ of degree at most 3.
                let bits: u8 = rng.gen_range(0..16);
                let text: Vec<&str> = [(8, "x^3"), (4, "x^2"), (2, "x"), (1, "1")]
                    .iter()
                    .filter(|(b, _)| bits & b != 0)
                    .map(|&(_, t)| t)
                    .collect();
                let text = if text.is_empty() {
                    "0".to_string()
                } else {
                    text.join("+")
                };
                RingValue::parse(ring, &text).unwrap()
            }
        };
        Matrix::from_fn(ring, rows, cols, |_, _| draw().into_payload())
    };

    for case in 0..2 * PER_RING {
        let over_integers = case < PER_RING;
        let ring = if over_integers { &z } else { &rx };
        let a = random_matrix(ring, over_integers);
        let snf = smith_normal_form(&a).unwrap();

        // Defining identity.
        assert_eq!(
            &snf.p().mul(&a).unwrap().mul(snf.q()).unwrap(),
            snf.d(),
            "P·A·Q = D for {a}"
        );
        // Unimodularity: exact ring inverses and unit determinants.
        assert_eq!(
            snf.p().mul(snf.p_inv()).unwrap(),
            Matrix::identity(ring, a.rows())
        );
        assert_eq!(
            snf.q().mul(snf.q_inv()).unwrap(),
            Matrix::identity(ring, a.cols())
        );
        assert!(ring.is_unit(snf.p().det().unwrap().payload()));
        assert!(ring.is_unit(snf.q().det().unwrap().payload()));

        // Divisibility chain with unit-normalized entries.
        let diag = snf.diagonal();
        for i in 0..diag.len() {
            let (unit, canonical) = ring.unit_normalize(diag[i].payload());
            assert!(ring.is_one(&unit), "normalized diagonal for {a}");
            assert_eq!(&canonical, diag[i].payload());
            if i + 1 < diag.len() && !diag[i + 1].is_zero() {
                assert!(
                    !diag[i].is_zero()
                        && ring
                            .div_exact(diag[i + 1].payload(), diag[i].payload())
                            .is_ok(),
                    "divisibility chain for {a}"
                );
            }
        }
        // Minor-gcd agreement: Π_{i≤k} d_i equals the gcd of all k×k minors.
        let mut product = RingValue::from_i64(ring, 1);
        for (k, d) in diag.iter().enumerate() {
            product = product.mul(d).unwrap();
            let oracle = gcd_of_minors(&a, k + 1).unwrap();
            assert_eq!(product, oracle, "minor gcd at k = {} for {a}", k + 1);
        }
    }
    within(8, 60, start);
    report(
        8,
        "SNF invariants hold on 1000 random matrices over each of two rings",
        start,
    );
}

#[test]
fn criterion_09_kronecker_idempotents_are_exactly_the_reciprocal_scaled_pairs() {
    let start = Instant::now();
    let f2 = Ring::prime_field(2).unwrap();
    let all: Vec<Matrix> = (0u32..16)
        .map(|bits| {
            Matrix::from_i64_rows(
                &f2,
                &[
                    &[(bits & 1) as i64, ((bits >> 1) & 1) as i64],
                    &[((bits >> 2) & 1) as i64, ((bits >> 3) & 1) as i64],
                ],
            )
            .unwrap()
        })
        .filter(|m| !m.is_zero())
        .collect();
    assert_eq!(all.len(), 15);
    for a in &all {
        for b in &all {
            let product = kronecker(a, b).unwrap();
            let is_nonzero_idempotent = !product.is_zero() && is_idempotent(&product).unwrap();
            let reciprocal_pair = match (
                scaled_idempotent_factor(a).unwrap(),
                scaled_idempotent_factor(b).unwrap(),
            ) {
                (Some(k), Some(l)) => k.mul(&l).unwrap().is_one(),
                _ => false,
            };
            assert_eq!(
                is_nonzero_idempotent, reciprocal_pair,
                "equivalence on the pair ({a}, {b})"
            );
            match kron_idempotent(a, b) {
                Ok(e) => {
                    assert!(is_nonzero_idempotent, "constructor accepted ({a}, {b})");
                    assert_eq!(e.matrix(), &product);
                }
                Err(_) => assert!(!is_nonzero_idempotent, "constructor rejected ({a}, {b})"),
            }
        }
    }

    // Rational pair of non-idempotents with reciprocal scalings k = 1/2, 2:
    // the product is the 4×4 matrix unit E₁₁.
    let q = qq();
    let a = Matrix::from_str_rows(&q, &[&["1/2", "0"], &["0", "0"]]).unwrap();
    let b = Matrix::from_str_rows(&q, &[&["2", "0"], &["0", "0"]]).unwrap();
    assert!(!is_idempotent(&a).unwrap() && !is_idempotent(&b).unwrap());
    let e = kron_idempotent(&a, &b).unwrap();
    let unit_idempotent = Matrix::from_i64_rows(
        &q,
        &[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
    )
    .unwrap();
    assert_eq!(e.matrix(), &unit_idempotent);
    assert_eq!(e.rank(), 1);

    report(
        9,
        "A⊠B is a nonzero idempotent exactly for reciprocal-scaled pairs",
        start,
    );
}

#[test]
fn criterion_10_groebner_basis_reproduces_the_two_by_two_leading_terms() {
    let start = Instant::now();
    let ideal = idempotent_ideal(2, None).unwrap();
    let order = MonomialOrder::new(OrderKind::Grlex, 4);
    let gb = buchberger(&ideal, &order, DEFAULT_PAIR_BUDGET).unwrap();
    let minimal: BTreeSet<Vec<u32>> = leading_term_ideal(&gb).into_iter().map(|m| m.0).collect();
    // With entries (a, b, c, d) = (x1, x2, x3, x4): a², ab, ac, bc, ad².
    let expected: BTreeSet<Vec<u32>> = [
        vec![2, 0, 0, 0],
        vec![1, 1, 0, 0],
        vec![1, 0, 1, 0],
        vec![0, 1, 1, 0],
        vec![1, 0, 0, 2],
    ]
    .into_iter()
    .collect();
    assert_eq!(minimal, expected, "minimal leading-monomial set");
    assert_eq!(variety_dimension(2, DEFAULT_PAIR_BUDGET).unwrap(), 2);
    within(10, 5, start);
    report(
        10,
        "2×2 leading terms are {a², ab, ac, bc, ad²} and the variety has dimension 2",
        start,
    );
}

#[test]
fn criterion_11_variety_dimensions_follow_the_sequence() {
    let start = Instant::now();
    let budget: u64 = std::env::var(PAIR_BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_PAIR_BUDGET);

    assert_eq!(variety_dimension(1, budget).unwrap(), 0, "n = 1");
    let d2 = variety_dimension(2, budget).unwrap();
    assert_eq!(d2, 2, "n = 2");
    assert!((1..=2).contains(&d2), "bounds n−1 ≤ dim ≤ n²−2 for n = 2");

    // The 3×3 case is budget-gated: pass when the basis completes within the
    // configured pair budget, otherwise skip with an explicit notice.
    match variety_dimension(3, budget) {
        Ok(d3) => {
            assert_eq!(d3, 4, "n = 3");
            assert!((2..=7).contains(&d3), "bounds n−1 ≤ dim ≤ n²−2 for n = 3");
            report(
                11,
                "variety dimensions are 0, 2, 4 for n = 1, 2, 3 within bounds",
                start,
            );
        }
        Err(Error::BudgetExceeded(msg)) => {
            println!(
                "criterion 11: dimensions 0, 2 verified for n = 1, 2; \
                 n = 3 SKIPPED ({msg}; raise {PAIR_BUDGET_ENV} to run it) \
                 ... PASS ({:.2}s)",
                start.elapsed().as_secs_f64()
            );
        }
        Err(other) => panic!("unexpected failure for n = 3: {other}"),
    }
}

#[test]
fn criterion_12_trace_is_congruent_to_rank_mod_p() {
    let start = Instant::now();
    for &(n, p) in &[(2usize, 2u64), (3, 2), (2, 3), (3, 3)] {
        for e in enumerate_idempotents(n, p).unwrap() {
            let trace = e.matrix().trace().unwrap();
            let rank_embedded = RingValue::from_i64(e.ring(), e.rank() as i64);
            assert_eq!(
                trace,
                rank_embedded,
                "tr ≡ rank (mod {p}) for an idempotent of rank {} in n={n}",
                e.rank()
            );
        }
    }
    report(
        12,
        "tr(E) ≡ rank(E) mod p across all enumerated idempotents",
        start,
    );
}
