mod common;

use proptest::prelude::*;
use qfam_core::io::{emit_table, parse_table};
use qfam_core::{
    enumerate_tables, find_identity, validate_associativity, CayleyTable, TableFilter,
};

fn table_strategy() -> impl Strategy<Value = CayleyTable> {
    (1..=4usize).prop_flat_map(|n| {
        prop::collection::vec(0..n, n * n)
            .prop_map(move |cells| CayleyTable::from_fn(n, |r, s| cells[r * n + s]).unwrap())
    })
}

/// Left-zero, right-zero, constant, cyclic and max tables.
fn structured_table() -> impl Strategy<Value = CayleyTable> {
    (1..=4usize, 0..5u8, 0..4usize).prop_map(|(n, kind, c)| {
        let c = c % n;
        CayleyTable::from_fn(n, |r, s| match kind {
            0 => r,
            1 => s,
            2 => c,
            3 => (r + s) % n,
            _ => r.max(s),
        })
        .unwrap()
    })
}

fn naive_associative(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|r| (0..n).all(|s| (0..n).all(|u| t.mul(t.mul(r, s), u) == t.mul(r, t.mul(s, u)))))
}

proptest! {
    #[test]
    fn validation_matches_triple_loop(t in prop_oneof![table_strategy(), structured_table()]) {
        let verdict = validate_associativity(&t);
        prop_assert_eq!(verdict.is_ok(), naive_associative(&t));
        if let Err(w) = verdict {
            prop_assert_eq!(w.left, t.mul(t.mul(w.r, w.s), w.t));
            prop_assert_eq!(w.right, t.mul(w.r, t.mul(w.s, w.t)));
            prop_assert_ne!(w.left, w.right);
        }
    }

    #[test]
    fn identity_rows_and_columns(t in structured_table()) {
        let rec = validate_associativity(&t).unwrap();
        if let Some(e) = find_identity(&rec).unwrap() {
            for s in 0..t.order() {
                prop_assert_eq!(t.mul(e, s), s);
                prop_assert_eq!(t.mul(s, e), s);
            }
        }
    }

    #[test]
    fn table_json_round_trips(t in table_strategy()) {
        let text = emit_table(&t, None);
        prop_assert_eq!(parse_table(text.as_bytes()).unwrap(), t);
    }
}

#[test]
fn associative_tables_are_a_validated_subset() {
    for n in 1..=3 {
        let all: Vec<CayleyTable> = enumerate_tables(n, TableFilter::AllMagmas).unwrap().collect();
        let assoc: Vec<CayleyTable> =
            enumerate_tables(n, TableFilter::AssociativeOnly).unwrap().collect();
        let filtered: Vec<CayleyTable> = all.iter().filter(|t| naive_associative(t)).cloned().collect();
        assert_eq!(assoc, filtered);
        assert!(assoc.iter().all(|t| validate_associativity(t).is_ok()));
    }
}

#[test]
fn order_four_count() {
    let count = enumerate_tables(4, TableFilter::AssociativeOnly).unwrap().count();
    assert_eq!(count, 3492);
}

#[test]
fn identity_matches_brute_force() {
    for n in 1..=3 {
        for rec in common::semigroups(n) {
            let t = rec.table();
            let brute = (0..n).find(|&e| (0..n).all(|s| t.mul(e, s) == s && t.mul(s, e) == s));
            assert_eq!(find_identity(&rec).unwrap(), brute, "{t}");
        }
    }
}
