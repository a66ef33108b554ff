mod common;

use comin_core::{
    cone_class, incidence_matrix, quantum_chevalley_q_part, space_named, SchubertClass,
};
use num_bigint::{BigInt, BigUint};
use num_traits::One;

#[test]
fn structural_invariants_up_to_dimension_16() {
    for s in common::spaces_up_to(16) {
        let m = incidence_matrix(&s).unwrap();
        let desc = s.descriptor();
        for ((a, b), x) in &m.entries {
            assert_eq!(m.get(*b, *a), *x, "{}", s.name());
            assert_eq!(a.dim() + b.dim(), desc.dim + desc.vmrt.dim_v + 1);
        }
        let xi = s.fundamental_class();
        let xi_row: Vec<_> = m.entries.iter().filter(|((a, _), _)| *a == xi).collect();
        assert_eq!(xi_row.len(), 1, "{}", s.name());
        assert!(xi_row[0].1.is_one());
        assert_eq!(cone_class(&s).unwrap().dim(), desc.vmrt.dim_v + 1);
    }
}

#[test]
fn rows_agree_with_curve_neighbourhoods() {
    let mut spaces = common::spaces_up_to(16);
    spaces.push(space_named("E7").unwrap());
    for s in spaces {
        let m = incidence_matrix(&s).unwrap();
        for sigma in 0..s.len() {
            let want: Vec<(usize, BigInt)> = common::curve_neighbourhood_row(&s, sigma)
                .map(|t| (t, BigInt::one()))
                .into_iter()
                .collect();
            assert_eq!(
                m.row(sigma),
                want.as_slice(),
                "{} row {}",
                s.name(),
                s.class(sigma)
            );
        }
    }
}

#[test]
fn grassmannian_rim_hook_rule() {
    for (k, n) in [(2, 4), (2, 5), (3, 6), (2, 6)] {
        let s = space_named(&format!("Gr({k},{n})")).unwrap();
        for &c in s.basis() {
            let lambda = s.codim_partition(c).unwrap();
            let mut padded = lambda.clone();
            padded.resize(k, 0);
            let q = quantum_chevalley_q_part(&s, c).unwrap();
            let got: Vec<(SchubertClass, BigInt)> =
                q.terms().map(|(c, x)| (*c, x.clone())).collect();
            let want: Vec<(SchubertClass, BigInt)> = common::bertram_q_term(k, n, &padded)
                .map(|mu| (s.class_from_codim_partition(&mu).unwrap(), BigInt::one()))
                .into_iter()
                .collect();
            assert_eq!(got, want, "Gr({k},{n}) {lambda:?}");
        }
    }
}

#[test]
fn grassmannian_entries_count_lines() {
    // Lines in Gr(2,4) meeting a general point and a general codimension-one
    // cycle: one; every other pair of dimensions is off the support.
    let s = space_named("Gr(2,4)").unwrap();
    let m = incidence_matrix(&s).unwrap();
    let xi = s.fundamental_class();
    let h = s.basis().iter().copied().find(|c| c.dim() == 3).unwrap();
    assert_eq!(m.get(xi, h), BigUint::one());
    assert_eq!(m.nonzero_count(), 2);
}

#[test]
fn quadric_lines_through_two_translates() {
    // On a quadric the only incidence is between the point and the hyperplane section.
    for name in ["Q(3)", "Q(4)", "Q(5)", "Q(6)", "Q(8)"] {
        let s = space_named(name).unwrap();
        let m = incidence_matrix(&s).unwrap();
        let xi = s.fundamental_class();
        let hyperplane: Vec<SchubertClass> = s
            .basis()
            .iter()
            .copied()
            .filter(|c| c.dim() + 1 == s.dim())
            .collect();
        assert_eq!(hyperplane.len(), 1);
        let h = hyperplane[0];
        let want = [((xi, h), BigUint::one()), ((h, xi), BigUint::one())].into();
        assert_eq!(m.entries, want, "{name}");
    }
}

#[test]
fn projective_spaces_are_all_lines() {
    for n in 1..=6 {
        let s = space_named(&format!("P({n})")).unwrap();
        let m = incidence_matrix(&s).unwrap();
        let xi = s.fundamental_class();
        assert_eq!(m.entries, [((xi, xi), BigUint::one())].into());
    }
}
