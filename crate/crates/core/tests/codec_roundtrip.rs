mod common;

use cmc_core::cmspace::{build_cm_trivial, verify_relations};
use cmc_core::codec;
use cmc_core::dmod::build_ideal_presentation;
use cmc_core::funcfield::FunctionField;
use cmc_core::kernel::qi;
use cmc_core::sample;
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn emitted_json_reparses(seed in any::<u64>(), n in 0usize..=3, elliptic in any::<bool>()) {
        let curve = if elliptic { c2() } else { c1() };
        let mut r = rng(seed);
        let pts = sample::admissible_points(&mut r, &curve, n).unwrap();
        let alphas = sample::random_alphas(&mut r, n);
        let m = build_cm_trivial(&curve, &pts, &alphas).unwrap();
        let text = codec::cm_to_json(&m).to_string();
        let back = codec::cm_from_json(&codec::parse_document(&text).unwrap()).unwrap();
        prop_assert_eq!(codec::cm_to_json(&back).to_string(), text);
        prop_assert_eq!(verify_relations(&back), verify_relations(&m));

        let ff = FunctionField::new(&curve).unwrap();
        let pres = build_ideal_presentation(&ff, &m).unwrap();
        let pv = codec::presentation_to_json(&ff, &pres);
        prop_assert_eq!(codec::presentation_from_json(&ff, &pv).unwrap(), pres);

        let (v, _) = sample::random_local_subspace(&mut r, &curve, 2, 3).unwrap();
        prop_assert_eq!(codec::pd_from_json(&codec::pd_to_json(&v)).unwrap(), v);

        let op = sample::random_operator(&mut r, &ff, 3, 2);
        prop_assert_eq!(codec::operator_from_json(&ff, &codec::operator_to_json(&op)).unwrap(), op);
    }
}

#[test]
fn truncated_documents_are_rejected() {
    let m = build_cm_trivial(&c1(), &c1_golden_points(), &[qi(0), qi(0)]).unwrap();
    let text = codec::cm_to_json(&m).to_string();
    let cut = &text[..text.len() / 2];
    assert!(matches!(codec::parse_document(cut), Err(cmc_core::Error::Json(_))));
}
