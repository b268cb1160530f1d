mod common;

use common::props;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cubical_identities(seed in any::<u64>()) {
        prop_assert_eq!(props::cubical_identities(seed), Ok(()));
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        prop_assert_eq!(props::boundary_squares_to_zero(seed), Ok(()));
    }

    #[test]
    fn face_coherence(seed in any::<u64>()) {
        prop_assert_eq!(props::face_coherence(seed), Ok(()));
    }

    #[test]
    fn quotient_functoriality(seed in any::<u64>()) {
        prop_assert_eq!(props::quotient_functoriality(seed), Ok(()));
    }
}
