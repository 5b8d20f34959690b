use conelie::dynkin_io::tables::table_rows;
use conelie::dynkin_io::{emit_table, parse_diagram, print_diagram, Fixtures, Format};
use conelie::grading::CrossedDiagram;
use conelie::rootsys::LieType;
use proptest::prelude::*;

#[test]
fn every_diagram_up_to_rank_8_round_trips() {
    for t in LieType::all_up_to(8) {
        let n = t.rank();
        for bits in 1u32..(1 << n) {
            let d = CrossedDiagram::new(t, (1..=n).filter(|i| bits & (1 << (i - 1)) != 0)).unwrap();
            assert_eq!(parse_diagram(&print_diagram(&d)).unwrap(), d);
        }
    }
}

fn any_diagram() -> impl Strategy<Value = CrossedDiagram> {
    (0usize..LieType::all_up_to(12).len()).prop_flat_map(|k| {
        let t = LieType::all_up_to(12)[k];
        prop::collection::btree_set(1..=t.rank(), 1..=t.rank())
            .prop_map(move |s| CrossedDiagram::new(t, s).unwrap())
    })
}

proptest! {
    #[test]
    fn round_trip(d in any_diagram()) {
        prop_assert_eq!(parse_diagram(&print_diagram(&d)).unwrap(), d);
    }

    #[test]
    fn lowercase_and_uppercase_masks_agree(d in any_diagram()) {
        let s = print_diagram(&d);
        prop_assert_eq!(parse_diagram(&s.to_lowercase()).unwrap(), parse_diagram(&s.replace('x', "X")).unwrap());
    }

    #[test]
    fn garbage_never_panics(s in "[A-Ga-g0-9:*xX ?]{0,12}") {
        let _ = parse_diagram(&s);
    }
}

#[test]
fn tables_match_fixtures() {
    let fx = Fixtures::builtin();
    for which in 1..=3 {
        for (row, check) in table_rows(&fx, which).unwrap() {
            assert!(check.pass(), "{} {}: {:?}", row.label, row.g, check.mismatches);
            assert_eq!(row.ambient_proj_dim + 1 > row.cone_dim, true);
        }
    }
}

#[test]
fn parametrized_rows_have_three_ranks() {
    let fx = Fixtures::builtin();
    for t in &fx.tables {
        for row in &t.rows {
            if row.label.contains("_n") {
                assert!(row.instances.len() >= 3, "{}", row.label);
            }
        }
    }
}

#[test]
fn table_json_is_byte_stable() {
    let fx = Fixtures::builtin();
    for which in 1..=3 {
        let a = emit_table(&fx, which, Format::Json).unwrap();
        let b = emit_table(&Fixtures::builtin(), which, Format::Json).unwrap();
        assert_eq!(a.as_bytes(), b.as_bytes());
    }
}
