use proptest::prelude::*;
use ssph::dssp::{reduce_dssp_string, ClassLabel};
use ssph::eval::{confusion, per_class_recall, q3};
use ssph::hmm::Hmm;
use ssph::io::{parse_fasta, read_models, write_fasta, write_models, FastaRecord};
use ssph::predictor::ClassModelSet;
use ssph::sequence::{AminoSequence, StructureString, ALPHABET_SIZE, AMINO_ALPHABET};

fn model_set() -> impl Strategy<Value = ClassModelSet> {
    (1usize..=4, 1usize..=4, 1usize..=4, any::<u64>()).prop_map(|(a, b, c, seed)| {
        ClassModelSet::new(
            Hmm::new_random(a, ALPHABET_SIZE, seed).unwrap(),
            Hmm::new_random(b, ALPHABET_SIZE, seed ^ 1).unwrap(),
            Hmm::new_random(c, ALPHABET_SIZE, seed ^ 2).unwrap(),
        )
        .unwrap()
    })
}

fn fasta_records() -> impl Strategy<Value = Vec<FastaRecord>> {
    let record = (
        "[A-Za-z0-9_.|-]{1,12}",
        prop::collection::vec(0usize..ALPHABET_SIZE, 1..200),
    )
        .prop_map(|(id, symbols)| {
            let s: String = symbols
                .iter()
                .map(|&i| AMINO_ALPHABET.as_bytes()[i] as char)
                .collect();
            FastaRecord {
                id,
                sequence: AminoSequence::new(&s).unwrap(),
            }
        });
    prop::collection::vec(record, 0..8)
}

fn labels(max: usize) -> impl Strategy<Value = StructureString> {
    prop::collection::vec(prop::sample::select(ClassLabel::ALL.to_vec()), 1..max)
        .prop_map(StructureString::from)
}

proptest! {
    #[test]
    fn model_file_roundtrip_is_bit_exact(models in model_set()) {
        let text = write_models(&models);
        let back = read_models(&text).unwrap();
        for class in ClassLabel::ALL {
            let (a, b) = (models.get(class), back.get(class));
            prop_assert_eq!(a.initial().iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
                            b.initial().iter().map(|x| x.to_bits()).collect::<Vec<_>>());
        }
        prop_assert_eq!(&back, &models);
        prop_assert_eq!(write_models(&back), text);
    }

    #[test]
    fn fasta_roundtrip(records in fasta_records()) {
        prop_assert_eq!(parse_fasta(&write_fasta(&records)).unwrap(), records);
    }

    #[test]
    fn dssp_reduction_preserves_length(s in "[HGIEBTSC]{0,64}") {
        let reduced = reduce_dssp_string(&s).unwrap();
        prop_assert_eq!(reduced.len(), s.len());
    }

    #[test]
    fn self_agreement_scores_one(s in labels(80)) {
        let m = confusion(&s, &s).unwrap();
        prop_assert_eq!(q3(&m).unwrap(), 1.0);
        prop_assert_eq!(m.total(), s.len() as u64);
        let r = per_class_recall(&m);
        for c in ClassLabel::ALL {
            prop_assert!(r.get(c).is_none_or(|v| v == 1.0));
        }
    }

    #[test]
    fn joint_permutation_keeps_matrix(pairs in prop::collection::vec(
        (prop::sample::select(ClassLabel::ALL.to_vec()), prop::sample::select(ClassLabel::ALL.to_vec())), 1..60),
        rotate in 0usize..60) {
        let (p, t): (Vec<_>, Vec<_>) = pairs.iter().copied().unzip();
        let m = confusion(&StructureString::from(p), &StructureString::from(t)).unwrap();
        let mut shuffled = pairs.clone();
        shuffled.rotate_left(rotate % pairs.len());
        shuffled.reverse();
        let (p2, t2): (Vec<_>, Vec<_>) = shuffled.into_iter().unzip();
        let m2 = confusion(&StructureString::from(p2), &StructureString::from(t2)).unwrap();
        prop_assert_eq!(m, m2);
        prop_assert_eq!(m.total(), pairs.len() as u64);
    }
}
