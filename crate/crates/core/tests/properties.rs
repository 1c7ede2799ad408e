use proptest::prelude::*;
use sturm_core::analysis::{oc_from_directive, reconstruct_from_oc};
use sturm_core::oracle::naive_is_closed;
use sturm_core::sturmian::{generate_prefix, is_finite_sturmian};
use sturm_core::words::{expand_runs, is_closed, oc_sequence, reversal, runs, Letter};
use sturm_core::{DirectiveSequence, Word};

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::B)], 0..max)
        .prop_map(Word::from_letters)
}

fn directive() -> impl Strategy<Value = DirectiveSequence> {
    (
        prop::collection::vec(1usize..6, 1..6),
        prop::collection::vec(1usize..6, 1..3),
    )
        .prop_map(|(head, tail)| DirectiveSequence::periodic(head, tail).unwrap())
}

fn exchanged(w: &[Letter]) -> Word {
    Word::from_letters(w.iter().map(|l| l.other()).collect())
}

proptest! {
    #[test]
    fn oc_bits_agree_with_prefix_closedness(w in word(48)) {
        let oc = oc_sequence(&w);
        prop_assert_eq!(oc.len(), w.len());
        for n in 1..=w.len() {
            prop_assert_eq!(oc.get(n), Some(naive_is_closed(&w[..n])));
        }
    }

    #[test]
    fn runs_round_trip(w in word(64)) {
        let oc = oc_sequence(&w);
        prop_assert_eq!(expand_runs(&runs(&oc)), oc);
    }

    #[test]
    fn closedness_ignores_reversal_and_letter_exchange(w in word(40)) {
        let c = is_closed(&w);
        prop_assert_eq!(is_closed(&reversal(&w)), c);
        prop_assert_eq!(is_closed(&exchanged(&w)), c);
    }

    #[test]
    fn directive_text_round_trip(d in directive()) {
        let back: DirectiveSequence = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn prefixes_are_nested_and_balanced(d in directive(), short in 1usize..80, extra in 0usize..80) {
        let long = generate_prefix(&d, short + extra).unwrap();
        prop_assert_eq!(generate_prefix(&d, short).unwrap(), long.prefix(short));
        prop_assert!(is_finite_sturmian(&long));
        prop_assert_eq!(long[0], Letter::A);
    }

    #[test]
    fn continuant_oc_matches_direct(d in directive(), len in 1usize..300) {
        let direct = oc_sequence(&generate_prefix(&d, len).unwrap());
        prop_assert_eq!(oc_from_directive(&d, len).unwrap(), direct);
    }

    #[test]
    fn reconstruction_inverts_oc(d in directive(), len in 1usize..150) {
        let w = generate_prefix(&d, len).unwrap();
        prop_assert_eq!(reconstruct_from_oc(&oc_sequence(&w)).unwrap(), w);
    }
}
