use conetype::automata::Automaton;
use conetype::reference::{reference_automaton, REFERENCE_KEYS};
use conetype::{
    build_cone_automaton, growth_rate, series_from_automaton, ContractionChecker, Horizon,
    Presentation, Word,
};

fn words_up_to(pres: &Presentation, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| pres.alphabet().map(move |a| w.pushed(a)))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn assert_faithful(pres: &Presentation, aut: &Automaton, d: u32, n: usize) {
    let checker = ContractionChecker::new(pres);
    for w in words_up_to(pres, n) {
        let text = pres.format_word(&w);
        let text = if w.is_empty() { String::new() } else { text };
        assert_eq!(
            aut.accepts(&text).unwrap(),
            checker.check(&w, d, Horizon::default()).unwrap().passed(),
            "{text} at D={d}"
        );
    }
}

#[test]
fn cone_automata_accept_exactly_the_contracting_words() {
    let g = Presentation::z2_free_z();
    for (d, m) in [(0, 1), (1, 2)] {
        let cone = build_cone_automaton(&g, d, m, 6, Horizon::default()).unwrap();
        assert_faithful(&g, &cone.automaton, d, 6);
    }
}

#[test]
fn free_group_cone_automaton_accepts_reduced_words() {
    let f2 = Presentation::free2();
    let cone = build_cone_automaton(&f2, 0, 1, 4, Horizon::default()).unwrap();
    assert_faithful(&f2, &cone.automaton, 0, 6);
}

#[test]
fn second_representatives_give_the_same_transitions() {
    let g = Presentation::z2_free_z();
    let cone = build_cone_automaton(&g, 1, 2, 6, Horizon::default()).unwrap();
    let aut = &cone.automaton;
    // any accepted word reaching a state behaves like its representative
    for w in words_up_to(&g, 5) {
        let text = if w.is_empty() {
            String::new()
        } else {
            g.format_word(&w)
        };
        let s = aut.run(&text).unwrap();
        if s == aut.fail() {
            continue;
        }
        let rep = &cone.table.representatives[s];
        let checker = ContractionChecker::new(&g);
        for a in g.alphabet() {
            assert_eq!(
                checker
                    .check(&w.pushed(a), 1, Horizon::default())
                    .unwrap()
                    .passed(),
                checker
                    .check(&rep.pushed(a), 1, Horizon::default())
                    .unwrap()
                    .passed(),
                "{text} vs representative {}",
                g.format_word(rep)
            );
        }
    }
}

#[test]
fn cone_languages_grow_with_d() {
    let g = Presentation::z2_free_z();
    let l0 = build_cone_automaton(&g, 0, 1, 4, Horizon::default())
        .unwrap()
        .automaton;
    let l1 = build_cone_automaton(&g, 1, 2, 6, Horizon::default())
        .unwrap()
        .automaton;
    for w in words_up_to(&g, 6) {
        let text = if w.is_empty() {
            String::new()
        } else {
            g.format_word(&w)
        };
        if l0.accepts(&text).unwrap() {
            assert!(l1.accepts(&text).unwrap(), "{text}");
        }
    }
}

#[test]
fn series_expansion_matches_counting() {
    let g = Presentation::z2_free_z();
    let mut automata: Vec<Automaton> = REFERENCE_KEYS
        .iter()
        .map(|k| reference_automaton(k).unwrap())
        .collect();
    automata.push(
        build_cone_automaton(&g, 1, 2, 6, Horizon::default())
            .unwrap()
            .automaton,
    );
    for aut in &automata {
        let s = series_from_automaton(aut);
        assert_eq!(s.expand(30), aut.count_words(30).a);
        let r = s.recurrence();
        let a = aut.count_words(30).a;
        for n in r.valid_from.max(r.coeffs.len())..=30 {
            let predicted: num_bigint::BigInt = r
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * &a[n - 1 - i])
                .sum();
            assert_eq!(predicted, a[n]);
        }
    }
}

/// Spectral radius of the trimmed transfer matrix by power iteration.
fn perron(aut: &Automaton) -> f64 {
    let states = aut.trim_states();
    let k = states.len();
    let mut v = vec![1.0f64; k];
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let mut next = vec![0.0; k];
        for (r, &s) in states.iter().enumerate() {
            for a in 0..aut.alphabet().len() {
                if let Some(c) = states.iter().position(|&x| x == aut.step(s, a)) {
                    next[r] += v[c];
                }
            }
        }
        let norm = next.iter().cloned().fold(0.0, f64::max);
        lambda = norm;
        v = next.into_iter().map(|x| x / norm).collect();
    }
    lambda
}

#[test]
fn growth_matches_perron_root() {
    for key in ["all", "D1", "D2"] {
        let aut = reference_automaton(key).unwrap();
        let g = growth_rate(&series_from_automaton(&aut), 1e-10).unwrap();
        let p = perron(&aut);
        assert!((g.estimate() - p).abs() < 1e-6, "{key}: {g} vs {p}");
    }
}
