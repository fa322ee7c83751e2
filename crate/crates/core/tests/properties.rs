use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use stretched_schur::asymptotics::{find_roots, ComplexPoly};
use stretched_schur::kostka::{kostka, schur_in_m_basis};
use stretched_schur::partitions::{dominates, sort_decreasing, IntVector, Partition};
use stretched_schur::poly::{
    complete_homogeneous, monomial_symmetric, skew_schur, skew_schur_from_tableaux, skew_schur_jacobi_trudi, Monomial,
    MultiPoly,
};
use stretched_schur::recurrence::{berlekamp_massey, build_sequence, char_poly, verify_recurrence, Family};
use stretched_schur::tableaux::{decompose, enumerate, insert, sits_inside, SkewShape, Tableau};

fn partition(max_part: usize, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn skew_shape(max_part: usize, max_len: usize) -> impl Strategy<Value = SkewShape> {
    partition(max_part, max_len).prop_flat_map(|outer| {
        let inners = outer.subpartitions();
        (0..inners.len()).prop_map(move |i| SkewShape::new(outer.clone(), inners[i].clone()).unwrap())
    })
}

fn tableau(max_part: usize, max_len: usize, n: usize) -> impl Strategy<Value = Tableau> {
    skew_shape(max_part, max_len)
        .prop_filter("has a filling", move |s| !enumerate(s, n).is_empty())
        .prop_flat_map(move |s| {
            let all = enumerate(&s, n);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
}

fn poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..=5), 0..5).prop_map(move |terms| {
        MultiPoly::from_terms(
            nvars,
            terms.into_iter().map(|(e, c)| (Monomial::new(e), BigInt::from(c))),
        )
        .unwrap()
    })
}

fn vector(len: usize, total: i64) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(0..=total, len).prop_map(IntVector)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominance_is_a_partial_order(a in partition(4, 4), b in partition(4, 4), c in partition(4, 4)) {
        let (va, vb, vc) = (a.to_vector(4), b.to_vector(4), c.to_vector(4));
        prop_assert!(dominates(&va, &va));
        if dominates(&va, &vb) && dominates(&vb, &va) {
            prop_assert_eq!(&a, &b);
        }
        if dominates(&va, &vb) && dominates(&vb, &vc) {
            prop_assert!(dominates(&va, &vc));
        }
        if dominates(&va, &vb) {
            prop_assert_eq!(a.size(), b.size());
        }
    }

    #[test]
    fn partition_text_form_round_trips(p in partition(9, 6)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), p.clone());
        prop_assert!(text.starts_with('[') && text.ends_with(']'));
    }

    #[test]
    fn sorting_a_vector_gives_a_partition(v in prop::collection::vec(0i64..6, 0..6)) {
        let sorted = sort_decreasing(&IntVector(v.clone())).unwrap();
        prop_assert!(sorted.is_decreasing());
        prop_assert_eq!(sorted.sum(), v.iter().sum::<i64>());
    }

    #[test]
    fn stretching_is_additive(a in partition(4, 3), b in partition(4, 3), k in 0usize..4) {
        prop_assert_eq!(a.add(&b).scale(k), a.scale(k).add(&b.scale(k)));
        prop_assert!(a.add(&b).contains(&a));
        prop_assert_eq!(a.scale(k).size(), k * a.size());
    }

    #[test]
    fn ring_axioms(p in poly(3), q in poly(3), s in poly(3)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert_eq!(&p - &p, MultiPoly::zero(3));
        prop_assert_eq!(&p * &MultiPoly::one(3), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(2), q in poly(2), x in -4i64..5, y in -4i64..5) {
        let point = [BigInt::from(x), BigInt::from(y)];
        let prod = (&p * &q).eval_int(&point).unwrap();
        prop_assert_eq!(prod, p.eval_int(&point).unwrap() * q.eval_int(&point).unwrap());
        let rational: Vec<BigRational> = point.iter().cloned().map(BigRational::from_integer).collect();
        prop_assert_eq!(
            p.eval_rational(&rational).unwrap(),
            BigRational::from_integer(p.eval_int(&point).unwrap())
        );
    }

    #[test]
    fn sum_of_products_matches_naive_sum(ps in prop::collection::vec((poly(3), poly(3)), 0..5)) {
        let fast = MultiPoly::sum_of_products(3, ps.iter().map(|(a, b)| (a, b)));
        let naive = ps.iter().fold(MultiPoly::zero(3), |acc, (a, b)| &acc + &(a * b));
        prop_assert_eq!(fast, naive);
    }

    #[test]
    fn polynomial_json_round_trips(p in poly(3)) {
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiPoly>(&json).unwrap(), p);
    }

    #[test]
    fn skew_schur_three_ways(shape in skew_shape(4, 4), n in 1usize..4) {
        let fast = skew_schur(&shape, n);
        prop_assert_eq!(&fast, &skew_schur_from_tableaux(&shape, n));
        prop_assert_eq!(&fast, &skew_schur_jacobi_trudi(&shape, n));
        prop_assert!(fast.is_symmetric());
        prop_assert_eq!(fast.eval_ones(), BigInt::from(enumerate(&shape, n).len()));
    }

    #[test]
    fn insertion_is_a_commutative_graded_product(t1 in tableau(3, 3, 3), t2 in tableau(3, 3, 3)) {
        let p = insert(&t1, &t2).unwrap();
        prop_assert!(p.is_valid_ssyt());
        prop_assert_eq!(&p, &insert(&t2, &t1).unwrap());
        prop_assert_eq!(p.weight(), t1.weight().add(&t2.weight()));
        prop_assert_eq!(p.shape(), &t1.shape().add(t2.shape()));
        prop_assert_eq!(insert(&t1, &Tableau::empty(3)).unwrap(), t1.clone());
    }

    #[test]
    fn decomposition_inverts_insertion(t1 in tableau(3, 3, 3), t2 in tableau(3, 3, 3)) {
        let p = insert(&t1, &t2).unwrap();
        if t1.shape().inner().is_empty() && t2.shape().inner().is_empty() {
            prop_assert!(sits_inside(t1.shape(), p.shape()));
        }
        // skew columns can re-pair under the row-wise sum
        prop_assume!(sits_inside(t1.shape(), p.shape()));
        let (first, second) = decompose(&p, t1.shape()).unwrap();
        prop_assert_eq!(first.shape(), t1.shape());
        prop_assert_eq!(insert(&first, &second).unwrap(), p);
    }

    #[test]
    fn powers_scale_shape_and_weight(t in tableau(3, 3, 3), k in 0usize..4) {
        let p = t.power(k).unwrap();
        prop_assert_eq!(p.shape(), &t.shape().scale(k));
        prop_assert_eq!(p.weight(), t.weight().scale(k as i64));
        prop_assert!(p.is_valid_ssyt());
    }

    #[test]
    fn kostka_is_symmetric_in_the_weight(shape in skew_shape(3, 3), w in vector(3, 3), swap in 0usize..2) {
        let mut v = w.0.clone();
        v.swap(swap, swap + 1);
        prop_assert_eq!(kostka(&shape, &w), kostka(&shape, &IntVector(v)));
        if w.sum() != shape.size() as i64 {
            prop_assert_eq!(kostka(&shape, &w), 0);
        }
    }

    #[test]
    fn m_basis_expansion_reassembles(shape in skew_shape(3, 3), n in 1usize..4) {
        let total = schur_in_m_basis(&shape, n)
            .into_iter()
            .fold(MultiPoly::zero(n), |acc, (lambda, c)| {
                &acc + &monomial_symmetric(&lambda, n).unwrap().scale(&BigInt::from(c))
            });
        prop_assert_eq!(total, skew_schur(&shape, n));
    }

    #[test]
    fn chi_coefficients_are_signed_elementary_sums(mu in partition(3, 2), n in 1usize..4) {
        prop_assume!(mu.len() <= n);
        let chi = char_poly(&mu, &Partition::empty(), n).unwrap();
        let roots: Vec<MultiPoly> = chi
            .roots()
            .iter()
            .map(|m| MultiPoly::from_term(m.clone(), BigInt::one()))
            .collect();
        let d = roots.len();
        prop_assume!(d <= 6);
        // coefficient of t^{d−j} is (−1)^j e_j(roots), summed over subsets
        let mut expected = vec![MultiPoly::zero(n); d + 1];
        for mask in 0u32..(1 << d) {
            let j = mask.count_ones() as usize;
            let product = (0..d)
                .filter(|i| mask & (1 << i) != 0)
                .fold(MultiPoly::one(n), |acc, i| &acc * &roots[i]);
            let signed = if j.is_multiple_of(2) { product } else { -product };
            expected[d - j] = &expected[d - j] + &signed;
        }
        prop_assert_eq!(chi.coeffs(), &expected[..]);
        prop_assert!(chi.is_permutation_invariant());
    }

    #[test]
    fn stretched_sequences_satisfy_chi(mu in partition(2, 2), nu_index in 0usize..4, n in 1usize..3) {
        let subs = mu.subpartitions();
        let nu = subs[nu_index % subs.len()].clone();
        let family = Family::stretched(mu.clone(), nu.clone(), n);
        let mut seq = build_sequence(&family).unwrap();
        let chi = char_poly(&mu, &nu, n).unwrap();
        let r = seq.r();
        prop_assert!(verify_recurrence(&mut seq, &chi, r, chi.degree() + 2).unwrap().holds());
    }

    #[test]
    fn berlekamp_massey_recovers_a_planted_recurrence(
        c in prop::collection::vec(-3i64..4, 1..4),
        init in prop::collection::vec(-3i64..4, 3),
    ) {
        let d = c.len();
        let mut s: Vec<BigRational> = init.iter().take(d).map(|&v| BigRational::from_integer(v.into())).collect();
        while s.len() < d {
            s.push(BigRational::zero());
        }
        for k in 0..2 * d {
            let next = (0..d).fold(BigRational::zero(), |acc, j| {
                acc - BigRational::from_integer(c[j].into()) * &s[k + j]
            });
            s.push(next);
        }
        let found = berlekamp_massey(&s);
        prop_assert!(found.len() - 1 <= d);
        let e = found.len() - 1;
        prop_assert!(found[e].is_one());
        for k in 0..s.len() - e {
            let v = (0..=e).fold(BigRational::zero(), |acc, j| acc + &found[j] * &s[k + j]);
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn real_polynomials_have_conjugate_symmetric_roots(coeffs in prop::collection::vec(-9i32..10, 2..9)) {
        let mut coeffs: Vec<f64> = coeffs.into_iter().map(f64::from).collect();
        let last = coeffs.len() - 1;
        if coeffs[last] == 0.0 {
            coeffs[last] = 1.0;
        }
        let p = ComplexPoly::from_real(&coeffs);
        prop_assume!(p.degree() > 0);
        let roots = find_roots(&p).unwrap();
        prop_assert_eq!(roots.roots.len(), p.degree());
        if roots.unconverged.is_empty() {
            for z in &roots.roots {
                let partner = roots.roots.iter().map(|w| (w - z.conj()).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(partner < 1e-6 * (1.0 + z.norm()), "{z} has no conjugate in {:?}", roots.roots);
            }
        }
    }
}

#[test]
fn roots_of_unity_are_recovered() {
    // z^5 − 1
    let p = ComplexPoly::from_real(&[-1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let roots = find_roots(&p).unwrap();
    assert!(roots.unconverged.is_empty());
    for j in 0..5 {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 5.0);
        assert!(roots.roots.iter().any(|z| (z - w).norm() < 1e-10));
    }
}

#[test]
fn split_rows_give_squares_of_complete_homogeneous() {
    // (2k,k)/(k) in two variables is two disjoint rows of length k
    let family = Family::stretched(Partition::new(vec![2, 1]).unwrap(), Partition::new(vec![1]).unwrap(), 2);
    let mut seq = build_sequence(&family).unwrap();
    for k in 0..8 {
        let h = complete_homogeneous(k, 2);
        assert_eq!(seq.term(k).unwrap(), &(&h * &h), "k = {k}");
    }
}

#[test]
fn weights_of_all_tableaux_are_counted_once() {
    let shape = SkewShape::new(Partition::new(vec![3, 2]).unwrap(), Partition::new(vec![1]).unwrap()).unwrap();
    let mut tally: BTreeMap<IntVector, u64> = BTreeMap::new();
    for t in enumerate(&shape, 3) {
        *tally.entry(t.weight()).or_default() += 1;
    }
    for (w, count) in tally {
        assert_eq!(kostka(&shape, &w), count);
    }
}
