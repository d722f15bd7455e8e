use coble_core::catalog::build_graph;
use coble_core::fibrations::{
    admissible_assignments, diagram_of, extremal_column, fibers_of, quasi_elliptic, CharClass, KodairaFiber,
};
use coble_core::rootgraph::vinberg_check;
use proptest::prelude::*;

fn fiber() -> impl Strategy<Value = KodairaFiber> {
    proptest::sample::select(KodairaFiber::all_up_to(10))
}

proptest! {
    #[test]
    fn diagram_round_trip(f in fiber()) {
        if let Some(d) = diagram_of(f) {
            prop_assert!(d.is_affine());
            prop_assert!(fibers_of(d).contains(&f));
            prop_assert!(fibers_of(d).iter().all(|&g| diagram_of(g) == Some(d)));
        } else {
            prop_assert!(!f.is_reducible());
        }
    }

    #[test]
    fn display_parse_round_trip(f in fiber()) {
        prop_assert_eq!(f.to_string().parse::<KodairaFiber>().unwrap(), f);
    }
}

#[test]
fn table_rows_have_rank_at_most_eight() {
    let mut rows: Vec<Vec<KodairaFiber>> = CharClass::ALL.iter().flat_map(|&c| extremal_column(c)).collect();
    rows.extend(quasi_elliptic());
    for row in rows {
        let rank: usize = row.iter().filter_map(|&f| diagram_of(f)).map(|d| d.rank()).sum();
        assert!(rank <= 8, "{row:?}");
    }
}

#[test]
fn every_maximal_type_of_mi_is_admissible_in_characteristic_three() {
    let g = build_graph("MI").unwrap();
    let r = vinberg_check(&g, 8).unwrap();
    let types = r.maximal_types();
    assert_eq!(types.len(), 4);
    for t in types {
        assert!(!admissible_assignments(&t, CharClass::P3).is_empty(), "{t:?}");
    }
}
