//! The factor-wise checker against the whole-graph scan.

use conetype::contraction::{check_contracting_direct, ContractionChecker, Horizon, Verdict};
use conetype::{Presentation, Word};

fn geodesics(pres: &Presentation, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| pres.alphabet().map(move |a| w.pushed(a)))
            .filter(|w| pres.is_geodesic(w))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn compare(pres: &Presentation, max_len: usize, horizon: u32, ds: &[u32]) {
    let checker = ContractionChecker::new(pres);
    for w in geodesics(pres, max_len) {
        for &d in ds {
            let fast = checker.check(&w, d, Horizon::Fixed(horizon)).unwrap();
            let direct =
                check_contracting_direct(pres, &w, d, Horizon::Fixed(horizon), 5_000_000).unwrap();
            assert_eq!(
                fast,
                direct,
                "{} at D={d}: {} vs {}",
                pres.display(&w),
                fast.render(pres),
                direct.render(pres)
            );
            if let Verdict::Fail { witness, .. } = &fast {
                assert!(witness.replay(pres, &w, d), "{}", fast.render(pres));
            }
        }
    }
}

#[test]
fn routes_agree_on_the_main_example() {
    compare(&Presentation::z2_free_z(), 3, 2, &[0, 1, 2]);
}

#[test]
fn routes_agree_in_the_plane() {
    compare(&Presentation::z2(), 4, 3, &[1, 2, 3]);
}

#[test]
fn routes_agree_in_the_free_group() {
    compare(&Presentation::free2(), 4, 3, &[0]);
}

#[test]
fn routes_agree_with_three_commuting_generators() {
    let g = Presentation::parse("generators = a, b, c\ncommuting = a b; b c").unwrap();
    compare(&g, 3, 2, &[1, 2]);
}

#[test]
fn verdicts_are_monotone_in_the_horizon() {
    let g = Presentation::z2_free_z();
    let checker = ContractionChecker::new(&g);
    for w in geodesics(&g, 4) {
        for d in 0..3 {
            let verdicts: Vec<bool> = (1..=6)
                .map(|r| checker.check(&w, d, Horizon::Fixed(r)).unwrap().passed())
                .collect();
            assert!(
                verdicts.windows(2).all(|p| p[0] || !p[1]),
                "{}: {verdicts:?}",
                g.display(&w)
            );
        }
    }
}
