use skewbrace::catalog::{read_jsonl, BraceCatalog};
use skewbrace::cli::verify_entries;
use skewbrace::series::{central_class_by_chain_search, SeriesReport};
use skewbrace::ybe::solution_from_brace;

fn corpus() -> BraceCatalog {
    BraceCatalog::small_corpus(8).unwrap()
}

#[test]
fn central_class_matches_chain_search() {
    for e in corpus().entries {
        let s = SeriesReport::compute(&e.brace).unwrap();
        assert_eq!(
            s.central_class,
            central_class_by_chain_search(&e.brace).unwrap(),
            "{}",
            e.id
        );
    }
}

#[test]
fn centre_lies_in_additive_centre_and_kernel() {
    for e in corpus().entries {
        let b = &e.brace;
        let bound = b.additive().centre().intersection(&b.kernel_lambda());
        assert!(b.centre().is_subset_of(&bound), "{}", e.id);
        assert!(b.is_ideal(&b.centre()).is_ok(), "{}", e.id);
    }
}

#[test]
fn central_nilpotency_is_left_and_right_nilpotency_of_nilpotent_type() {
    for e in corpus().entries {
        let s = SeriesReport::compute(&e.brace).unwrap();
        let both = s.add_class_m.is_some() && s.left_class.is_some() && s.right_class.is_some();
        assert_eq!(s.central_class.is_some(), both, "{}", e.id);
        if let (Some(c), Some(l), Some(r)) = (s.central_class, s.left_class, s.right_class) {
            assert!(l <= c && r <= c, "{}", e.id);
        }
    }
}

#[test]
fn left_class_two_of_nilpotent_type_gives_multipermutation() {
    for e in corpus().entries {
        let s = SeriesReport::compute(&e.brace).unwrap();
        if s.add_class_m.is_some() && s.left_class_at_most_two() {
            let level = solution_from_brace(&e.brace)
                .unwrap()
                .multipermutation_level()
                .unwrap();
            assert!(level.is_some(), "{}", e.id);
        }
    }
}

#[test]
fn full_corpus_verifies_without_failures() {
    let catalog = corpus();
    let back = read_jsonl(catalog.to_jsonl().as_bytes()).unwrap();
    assert_eq!(back, catalog.entries);
    let report = verify_entries(&back).unwrap();
    assert_eq!(report.counts.total, 62);
    assert_eq!(report.counts.fail, 0);
    assert_eq!(report.counts.pass + report.counts.not_applicable, 62);
}
