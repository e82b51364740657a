//! Property test: spec documents survive a serialize/parse cycle exactly,
//! both as values and as rendered bytes (bit-exact floats included).

use monorel_cli::spec::{parse_spec, serialize_spec, RelationSpec, GALLERY_NAMES};
use proptest::prelude::*;

/// Arbitrary finite doubles, subnormals and negative zero included.
fn finite_f64() -> impl Strategy<Value = f64> {
    any::<u64>()
        .prop_map(f64::from_bits)
        .prop_filter("finite", |x| x.is_finite())
}

fn tol_field() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![
        Just(None),
        (-300.0..0.0f64).prop_map(|e| Some(10f64.powf(e))),
    ]
}

fn square_payload(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(finite_f64(), n), n)
}

fn matrix_spec() -> impl Strategy<Value = RelationSpec> {
    (1usize..5).prop_flat_map(|n| {
        (square_payload(n), prop::option::of(Just(n)), tol_field()).prop_map(
            move |(payload, n, tol)| RelationSpec::Matrix { n, payload, tol },
        )
    })
}

fn graph_spec() -> impl Strategy<Value = RelationSpec> {
    (1usize..4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(finite_f64(), 2 * n), 1..=2 * n),
            prop::option::of(Just(n)),
            tol_field(),
        )
            .prop_map(move |(payload, n, tol)| RelationSpec::Graph { n, payload, tol })
    })
}

fn operator_spec() -> impl Strategy<Value = RelationSpec> {
    (1usize..4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(finite_f64(), n), 0..=n),
            square_payload(n),
            prop::option::of(Just(n)),
            tol_field(),
        )
            .prop_map(move |(domain, matrix, n, tol)| RelationSpec::OperatorOnSubspace {
                n,
                domain,
                matrix,
                tol,
            })
    })
}

fn gallery_spec() -> impl Strategy<Value = RelationSpec> {
    (
        prop::sample::select(GALLERY_NAMES),
        2usize..512,
        tol_field(),
    )
        .prop_map(|(name, n, tol)| RelationSpec::Gallery {
            name: name.to_owned(),
            n,
            tol,
        })
}

fn any_spec() -> impl Strategy<Value = RelationSpec> {
    prop_oneof![matrix_spec(), graph_spec(), operator_spec(), gallery_spec()]
}

proptest! {
    #[test]
    fn parse_after_serialize_is_the_identity(spec in any_spec()) {
        let text = serialize_spec(&spec);
        let back = parse_spec(&text).expect("serialized specs parse");
        prop_assert_eq!(&back, &spec);
        // Byte equality pins down bit-exact floats (−0.0 vs 0.0 included).
        prop_assert_eq!(serialize_spec(&back), text);
    }
}
