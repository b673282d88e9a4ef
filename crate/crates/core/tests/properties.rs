use std::sync::Arc;

use proptest::prelude::*;

use thompson_ts::oracle::{cayley_ball, word_length};
use thompson_ts::witness::{build_grid_set, build_serpentine_path, lemma1_witness, serpentine_length, Preset};
use thompson_ts::{Alphabet, Dyadic, Element, GroupWord, Letter, PlMap, RationalElement};

fn word_over(alphabet: Arc<Alphabet>, max_len: usize) -> impl Strategy<Value = GroupWord> {
    let k = alphabet.len();
    prop::collection::vec((0..k, any::<bool>()), 0..=max_len).prop_map(move |ls| {
        GroupWord::new(alphabet.clone(), ls.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect()).unwrap()
    })
}

fn std2_word(max_len: usize) -> impl Strategy<Value = GroupWord> {
    word_over(Alphabet::std2(), max_len)
}

fn unit_dyadic() -> impl Strategy<Value = Dyadic> {
    (0u32..12).prop_flat_map(|e| (0i64..=(1i64 << e)).prop_map(move |n| Dyadic::new(n, e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(f in std2_word(10), g in std2_word(10), h in std2_word(10)) {
        let (f, g, h) = (f.evaluate(), g.evaluate(), h.evaluate());
        prop_assert_eq!(f.then(&g).then(&h), f.then(&g.then(&h)));
    }

    #[test]
    fn identity_and_inverses(f in std2_word(14)) {
        let f = f.evaluate();
        let e = Element::identity();
        prop_assert_eq!(&e.then(&f), &f);
        prop_assert_eq!(&f.then(&e), &f);
        prop_assert!(f.then(&f.inverse()).is_identity());
        prop_assert!(f.inverse().then(&f).is_identity());
        prop_assert_eq!(f.inverse().inverse(), f);
    }

    #[test]
    fn evaluation_is_a_homomorphism(w1 in std2_word(12), w2 in std2_word(12)) {
        prop_assert_eq!(w1.concat(&w2).evaluate(), w1.evaluate().then(&w2.evaluate()));
        prop_assert_eq!(w1.inverse().evaluate(), w1.evaluate().inverse());
    }

    #[test]
    fn right_action_on_points(w1 in std2_word(8), w2 in std2_word(8), t in unit_dyadic()) {
        let (f, g) = (w1.evaluate(), w2.evaluate());
        let direct = f.then(&g).apply(&t).unwrap();
        let stepwise = g.apply(&f.apply(&t).unwrap()).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn maps_from_words_are_canonical(w in word_over(Alphabet::mirror3(), 16)) {
        let f = w.evaluate();
        let pts = f.points();
        prop_assert_eq!(&pts[0], &(Dyadic::from_int(0), Dyadic::from_int(0)));
        prop_assert_eq!(&pts[pts.len() - 1], &(Dyadic::from_int(1), Dyadic::from_int(1)));
        for pair in pts.windows(2) {
            prop_assert!(pair[0].0 < pair[1].0 && pair[0].1 < pair[1].1);
        }
        for s in f.slopes().windows(2) {
            prop_assert_ne!(s[0], s[1]);
        }
        let rebuilt = PlMap::from_breakpoints(pts.to_vec()).unwrap();
        prop_assert_eq!(rebuilt, f);
    }

    #[test]
    fn redundant_breakpoints_are_removed(w in std2_word(10), t in unit_dyadic()) {
        let f = w.evaluate();
        prop_assume!(t > Dyadic::from_int(0) && t < Dyadic::from_int(1));
        let mut pts = f.points().to_vec();
        if !pts.iter().any(|(x, _)| *x == t) {
            let image = f.apply(&t).unwrap();
            let at = pts.iter().position(|(x, _)| *x > t).unwrap();
            pts.insert(at, (t, image));
        }
        prop_assert_eq!(PlMap::from_breakpoints(pts).unwrap(), f);
    }

    #[test]
    fn dyadic_and_rational_routes_agree(w1 in std2_word(10), w2 in std2_word(10)) {
        let (f, g) = (w1.evaluate(), w2.evaluate());
        let fr: RationalElement = f.to_rational_map();
        let gr: RationalElement = g.to_rational_map();
        prop_assert_eq!(f.then(&g).to_rational_map(), fr.then(&gr));
        prop_assert_eq!(f.inverse().to_rational_map(), fr.inverse());
    }

    #[test]
    fn support_is_exactly_the_moved_set(w in std2_word(10)) {
        let f = w.evaluate();
        let support = f.support();
        prop_assert_eq!(support.is_empty(), f.is_identity());
        let rf = f.to_rational_map();
        for iv in &support {
            let mid = (&iv.lo + &iv.hi) / num_rational::BigRational::from_integer(2.into());
            prop_assert_ne!(rf.apply(&mid).unwrap(), mid);
        }
    }

    #[test]
    fn lemma_holds_for_every_pair(xi in std2_word(24), which in 0usize..3) {
        let preset = Preset::ALL[which];
        let pair = preset.pair().unwrap();
        let xi = GroupWord::parse(pair.alphabet(), &xi.to_string()).unwrap();
        let lw = lemma1_witness(&xi, &pair).unwrap();
        prop_assert!(lw.w.commutes_with(pair.v_map()));
    }

    #[test]
    fn grid_card_or_degenerate_flag(xi in std2_word(3)) {
        let pair = Preset::Std2.pair().unwrap();
        let lw = lemma1_witness(&xi, &pair).unwrap();
        let grid = build_grid_set(&lw, &pair, 2).unwrap();
        prop_assert!(grid.card() <= 18);
        prop_assert_eq!(grid.card() == 18, !grid.is_degenerate());
    }

    #[test]
    fn serpentine_length_and_closure(xi in std2_word(5), half in 1usize..5) {
        let n = 2 * half;
        let pair = Preset::Std2.pair().unwrap();
        let lw = lemma1_witness(&xi, &pair).unwrap();
        let path = build_serpentine_path(n, pair.u(), pair.v(), &lw.z_word).unwrap();
        prop_assert_eq!(path.len(), serpentine_length(n, 5, xi.len()));
        prop_assert!(path.is_closed());
    }
}

#[test]
fn ball_distances_match_bidirectional_search() {
    let a = Alphabet::std2();
    let ball = cayley_ball(&a, 5).unwrap();
    for id in (0..ball.len()).step_by(7) {
        assert_eq!(word_length(ball.element(id), &a, 10).unwrap(), ball.distance(id));
    }
}

#[test]
fn v_is_geodesic_of_length_four() {
    let a = Alphabet::std2();
    let v = GroupWord::parse(&a, "abAA").unwrap().evaluate();
    assert_eq!(word_length(&v, &a, 8).unwrap(), 4);
}
