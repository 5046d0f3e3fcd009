//! Property tests for encode/decode round trips across schemes and
//! assignments.

use encodings::{
    bits_to_sequence, decode_integer, encode_integer, sequence_to_bits, BitVector,
    EncodingScheme, NucleotideAssignment,
};
use proptest::prelude::*;
use rna_thermo::{Base, RnaSequence};

fn scheme_strategy() -> impl Strategy<Value = EncodingScheme> {
    (0usize..4).prop_map(|i| EncodingScheme::ALL[i])
}

fn assignment_strategy() -> impl Strategy<Value = NucleotideAssignment> {
    (0usize..24).prop_map(|i| NucleotideAssignment::all()[i])
}

fn sequence_strategy() -> impl Strategy<Value = RnaSequence> {
    proptest::collection::vec(0usize..4, 1..40)
        .prop_map(|vals| {
            RnaSequence::new(vals.into_iter().map(|v| Base::ALL[v]).collect()).unwrap()
        })
}

proptest! {
    #[test]
    fn encode_then_decode_reproduces_the_sequence(
        scheme in scheme_strategy(),
        assignment in assignment_strategy(),
        seq in sequence_strategy(),
    ) {
        let bits = sequence_to_bits(&seq, scheme, &assignment);
        prop_assert_eq!(bits.len(), scheme.num_bits(seq.len()));
        let decoded = bits_to_sequence(&bits, scheme, &assignment).unwrap();
        prop_assert_eq!(decoded.sequence, seq);
        prop_assert_eq!(decoded.repaired_blocks, 0);
    }

    #[test]
    fn arbitrary_bits_decode_and_reencode_to_a_fixed_point(
        scheme in scheme_strategy(),
        assignment in assignment_strategy(),
        raw in proptest::collection::vec(0u8..2, 1..60),
    ) {
        let width = scheme.bits_per_symbol();
        let usable = (raw.len() / width) * width;
        prop_assume!(usable > 0);
        let bits = BitVector::from_bits(raw[..usable].to_vec());
        let decoded = bits_to_sequence(&bits, scheme, &assignment).unwrap();
        prop_assert_eq!(decoded.sequence.len(), usable / width);
        // Re-encoding lands on canonical blocks, which decode to the same
        // sequence with nothing left to repair.
        let canonical = sequence_to_bits(&decoded.sequence, scheme, &assignment);
        let again = bits_to_sequence(&canonical, scheme, &assignment).unwrap();
        prop_assert_eq!(again.sequence, decoded.sequence);
        prop_assert_eq!(again.repaired_blocks, 0);
    }

    #[test]
    fn unary_and_domain_wall_decode_by_popcount(
        raw in proptest::collection::vec(0u8..2, 3),
    ) {
        let ones = raw.iter().filter(|&&b| b == 1).count();
        prop_assert_eq!(decode_integer(EncodingScheme::Unary, &raw), ones);
        prop_assert_eq!(decode_integer(EncodingScheme::DomainWall, &raw), ones);
    }

    #[test]
    fn encoded_values_decode_under_every_assignment(
        value in 0usize..4,
        scheme in scheme_strategy(),
    ) {
        let block = encode_integer(scheme, value);
        prop_assert_eq!(decode_integer(scheme, block.bits()), value);
    }
}
