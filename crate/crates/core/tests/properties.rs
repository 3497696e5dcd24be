use proptest::prelude::*;
use puttenham::partition::from_arcs;
use puttenham::render::{render_svg, RenderSpec};
use puttenham::{forward, inverse, validate_sequence, CatSeq, GoverningState, Partition};

/// A non-crossing partition of `[choices.len()]`. Each element opens a new
/// block or joins a still-open block, closing everything opened after it.
fn noncrossing(choices: &[u8]) -> Partition {
    let mut labels = Vec::with_capacity(choices.len());
    let mut open: Vec<usize> = Vec::new();
    let mut blocks = 0;
    for &c in choices {
        let pick = c as usize % (open.len() + 1);
        if pick == 0 {
            open.push(blocks);
            labels.push(blocks);
            blocks += 1;
        } else {
            let at = open.len() - pick;
            labels.push(open[at]);
            open.truncate(at + 1);
        }
    }
    Partition::from_labels(&labels).unwrap()
}

/// A valid sequence built by the right-to-left generator with arbitrary
/// in-range choices.
fn governed(choices: &[u8]) -> CatSeq {
    let mut state = GoverningState::initial(choices.len());
    for &c in choices {
        let bound = state.next_bound().unwrap();
        state = state.set_value(1 + c as u32 % bound).unwrap();
    }
    state.finish().unwrap()
}

proptest! {
    #[test]
    fn arcs_determine_the_partition(choices in prop::collection::vec(any::<u8>(), 1..40)) {
        let p = noncrossing(&choices);
        prop_assert!(p.is_noncrossing());
        prop_assert_eq!(from_arcs(&p.to_arcs().unwrap()), p);
    }

    #[test]
    fn pieces_tile_the_ground_set(choices in prop::collection::vec(any::<u8>(), 1..40)) {
        let p = noncrossing(&choices);
        let pieces = p.decompose_pieces().unwrap();
        let mut next = 1;
        let mut block_total = 0;
        for piece in &pieces.pieces {
            prop_assert_eq!(*piece.support.start(), next);
            let mut covered: Vec<u32> = piece.blocks.concat();
            covered.sort_unstable();
            prop_assert_eq!(covered, piece.support.clone().collect::<Vec<_>>());
            next = piece.support.end() + 1;
            block_total += piece.blocks.len();
        }
        prop_assert_eq!(next, p.ground_size() + 1);
        prop_assert_eq!(block_total, p.block_count());
    }

    #[test]
    fn sequences_round_trip(choices in prop::collection::vec(any::<u8>(), 0..30)) {
        let s = governed(&choices);
        prop_assert!(validate_sequence(s.entries()));
        let p = inverse(&s).unwrap();
        prop_assert!(p.is_special());
        prop_assert!(p.is_semi_special());
        prop_assert_eq!(p.ground_size() as usize, 2 * (p.block_count() - 1) + 1);
        prop_assert_eq!(p.decompose_pieces().unwrap().len(), 1);
        prop_assert_eq!(forward(&p).unwrap(), s);
    }

    #[test]
    fn special_iff_semi_special_of_the_right_size(choices in prop::collection::vec(any::<u8>(), 1..25)) {
        let p = noncrossing(&choices);
        let m = p.ground_size() as usize;
        let sized = m % 2 == 1 && p.block_count() == m / 2 + 1;
        prop_assert_eq!(p.is_special(), p.is_semi_special() && sized);
    }

    #[test]
    fn svg_is_deterministic(choices in prop::collection::vec(any::<u8>(), 0..20)) {
        let d = inverse(&governed(&choices)).unwrap().to_arcs().unwrap();
        let spec = RenderSpec::default();
        prop_assert_eq!(render_svg(&d, &spec), render_svg(&d, &spec));
    }
}
