mod common;

use common::*;
use mhs_relations::geometry::{f_n_int, hodge_vector, Family, FamilySpec};

#[test]
fn coefficient_extraction_matches_closed_forms() {
    assert_eq!(geometry_grid(5, 10).unwrap(), 2 * (9 + 8 + 7 + 6 + 5));
}

#[test]
fn f_n_is_nonnegative() {
    assert!(f_n_nonnegative(3, 8, 30).unwrap() > 0);
    // also at the boundary of the small cases
    assert!(f_n_nonnegative(2, 2, 60).is_ok());
}

#[test]
fn f_n_at_n_plus_one_exceeds_the_stated_lower_bound() {
    // f_n(n+1) >= 2^{n-1}(n+1) - n(n+3)
    for n in 3..=10u32 {
        let value = f_n_int(n, n as u64 + 1).unwrap();
        let bound = (1i64 << (n - 1)) * (n as i64 + 1) - (n as i64) * (n as i64 + 3);
        assert!(value >= num_rational::BigRational::from_integer(bound.into()), "n={n}");
    }
}

#[test]
fn larger_instances_stay_symmetric() {
    for family in FAMILIES {
        for n in 1..=8 {
            for d in [n + 1, n + 7, 3 * n + 5] {
                let h = hodge_vector(&FamilySpec::new(family, n, d).unwrap()).unwrap();
                assert_eq!(h.weight(), if family == Family::Hypersurface { n as usize - 1 } else { n as usize });
            }
        }
    }
}
