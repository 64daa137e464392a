//! Hand-built automata for ℤ²∗ℤ = ⟨a, b, c | [a, b]⟩ and the closed-form
//! membership rule they implement.
//!
//! A geodesic in ℤ²∗ℤ is D-contracting exactly when no run of plane letters
//! (a, A, b, B) is longer than D.

use rayon::prelude::*;

use crate::automata::{Automaton, AutomatonBuilder};
use crate::contraction::{ContractionChecker, Horizon};
use crate::error::{Error, Result};
use crate::group::Presentation;
use crate::langstats::{IntPolynomial, RationalSeriesForm};

pub const REFERENCE_KEYS: [&str; 4] = ["all", "D0", "D1", "D2"];

const ALPHABET: [char; 6] = ['a', 'A', 'b', 'B', 'c', 'C'];

/// The contraction parameter of a reference key; `None` for all geodesics.
pub fn reference_d(key: &str) -> Result<Option<u32>> {
    match key {
        "all" => Ok(None),
        "D0" => Ok(Some(0)),
        "D1" => Ok(Some(1)),
        "D2" => Ok(Some(2)),
        _ => Err(Error::UnknownReference(key.to_string())),
    }
}

pub fn reference_automaton(key: &str) -> Result<Automaton> {
    let b = AutomatonBuilder::new(&ALPHABET);
    let aut = match key {
        "all" => {
            let mut b = ["i", "a", "A", "b", "B", "c", "C", "q1", "q2", "q3", "q4"]
                .iter()
                .fold(b, |b, s| b.state(s, true));
            for from in ["i", "c", "C"] {
                b = b
                    .edge(from, "a", "a")
                    .edge(from, "A", "A")
                    .edge(from, "b", "b")
                    .edge(from, "B", "B");
            }
            b.edge("a", "a", "a")
                .edge("a", "b", "q1")
                .edge("a", "B", "q4")
                .edge("A", "A", "A")
                .edge("A", "b", "q2")
                .edge("A", "B", "q3")
                .edge("b", "b", "b")
                .edge("b", "a", "q1")
                .edge("b", "A", "q2")
                .edge("B", "B", "B")
                .edge("B", "A", "q3")
                .edge("B", "a", "q4")
                .edge("q1", "ab", "q1")
                .edge("q2", "Ab", "q2")
                .edge("q3", "AB", "q3")
                .edge("q4", "aB", "q4")
                .edge_from_all('c', "c", &["C"])
                .edge_from_all('C', "C", &["c"])
                .build()
        }
        "D0" => b
            .state("i", true)
            .state("c", true)
            .state("C", true)
            .edge("i", "c", "c")
            .edge("i", "C", "C")
            .edge("c", "c", "c")
            .edge("C", "C", "C")
            .build(),
        "D1" => b
            .state("i", true)
            .state("genc", true)
            .state("genC", true)
            .state("bottom", true)
            .edge("i", "aAbB", "bottom")
            .edge("i", "c", "genc")
            .edge("i", "C", "genC")
            .edge("genc", "c", "genc")
            .edge("genc", "aAbB", "bottom")
            .edge("genC", "C", "genC")
            .edge("genC", "aAbB", "bottom")
            .edge("bottom", "c", "genc")
            .edge("bottom", "C", "genC")
            .build(),
        "D2" => {
            let b = [
                "i", "gena", "genA", "genb", "genB", "genc", "genC", "bottom",
            ]
            .iter()
            .fold(b, |b, s| b.state(s, true));
            let mut b = b;
            for from in ["i", "genc", "genC"] {
                b = b
                    .edge(from, "a", "gena")
                    .edge(from, "A", "genA")
                    .edge(from, "b", "genb")
                    .edge(from, "B", "genB");
            }
            b.edge("gena", "abB", "bottom")
                .edge("genA", "AbB", "bottom")
                .edge("genb", "aAb", "bottom")
                .edge("genB", "aAB", "bottom")
                .edge_from_all('c', "genc", &["genC"])
                .edge_from_all('C', "genC", &["genc"])
                .build()
        }
        _ => return Err(Error::UnknownReference(key.to_string())),
    };
    Ok(aut)
}

/// Published growth series of each reference language.
pub fn reference_series(key: &str) -> Result<RationalSeriesForm> {
    let (p, q): (&[i64], &[i64]) = match key {
        "all" => (&[1, 2, 3, 2], &[1, -4, -3, -2]),
        "D0" => (&[1, 1], &[1, -1]),
        "D1" => (&[1, 5, 4], &[1, -1, -8]),
        "D2" => (&[1, 5, 16, 12], &[1, -1, -8, -24]),
        _ => return Err(Error::UnknownReference(key.to_string())),
    };
    Ok(RationalSeriesForm {
        p: IntPolynomial::from_i64(p),
        q: IntPolynomial::from_i64(q),
    })
}

/// Published approximate growth rate; `None` where it is subexponential.
pub fn reference_growth(key: &str) -> Result<Option<f64>> {
    match key {
        "all" => Ok(Some(4.725)),
        "D0" => Ok(None),
        "D1" => Ok(Some(3.372)),
        "D2" => Ok(Some(4.23)),
        _ => Err(Error::UnknownReference(key.to_string())),
    }
}

/// Membership in the language of geodesics of ℤ²∗ℤ whose plane runs have
/// length at most `d` (any length when `d` is `None`). Linear time.
pub fn rule_member(word: &str, d: Option<u32>) -> Result<bool> {
    let mut prev: Option<char> = None;
    let mut seen = [false; 4];
    let mut run = 0u32;
    let mut ok = true;
    for ch in word.chars() {
        match ch {
            'c' | 'C' => {
                if matches!((prev, ch), (Some('c'), 'C') | (Some('C'), 'c')) {
                    ok = false;
                }
                seen = [false; 4];
                run = 0;
            }
            'a' | 'A' | 'b' | 'B' => {
                let k = ALPHABET.iter().position(|&x| x == ch).unwrap();
                seen[k] = true;
                run += 1;
                if (seen[0] && seen[1]) || (seen[2] && seen[3]) {
                    ok = false;
                }
                if d.is_some_and(|d| run > d) {
                    ok = false;
                }
            }
            _ => return Err(Error::UnknownLetter(ch)),
        }
        prev = Some(ch);
    }
    Ok(ok)
}

/// A word on which the three membership oracles disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub word: String,
    pub rule: bool,
    pub automaton: bool,
    pub checker: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossValidation {
    pub words: usize,
    pub accepted: usize,
    /// At most the first few, in shortlex order.
    pub disagreements: Vec<Disagreement>,
    pub disagreement_count: usize,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.disagreement_count == 0
    }
}

const KEPT_DISAGREEMENTS: usize = 20;

/// Compares the closed-form rule, the reference automaton and the
/// contraction checker on every word over `a, A, b, B, c, C` of length at
/// most `n_max`. `jobs` sets the worker count (`None` uses all cores).
pub fn cross_validate(d: u32, n_max: usize, jobs: Option<usize>) -> Result<CrossValidation> {
    let key = format!("D{d}");
    let aut = reference_automaton(&key)?;
    let pres = Presentation::z2_free_z();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;

    let words_of_len = |n: usize| -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| ALPHABET.iter().map(move |&c| format!("{w}{c}")))
                .collect();
        }
        out
    };
    // shard on the first two letters
    let prefixes: Vec<String> = (0..=n_max.min(2)).flat_map(words_of_len).collect();
    let shards: Vec<Result<(usize, usize, Vec<Disagreement>)>> = pool.install(|| {
        prefixes
            .par_iter()
            .map_init(
                || ContractionChecker::new(&pres),
                |checker, prefix| {
                    let tails: Vec<String> = if prefix.chars().count() < 2 {
                        vec![String::new()]
                    } else {
                        (0..=n_max - 2).flat_map(words_of_len).collect()
                    };
                    let mut words = 0;
                    let mut accepted = 0;
                    let mut bad = Vec::new();
                    for tail in tails {
                        let w = format!("{prefix}{tail}");
                        let rule = rule_member(&w, Some(d))?;
                        let by_automaton = aut.accepts(&w)?;
                        let by_checker = checker
                            .check(&pres.parse_word(&w)?, d, Horizon::default())?
                            .passed();
                        words += 1;
                        accepted += usize::from(rule);
                        if rule != by_automaton || rule != by_checker {
                            bad.push(Disagreement {
                                word: w,
                                rule,
                                automaton: by_automaton,
                                checker: by_checker,
                            });
                        }
                    }
                    Ok((words, accepted, bad))
                },
            )
            .collect()
    });

    let mut out = CrossValidation::default();
    let mut all_bad = Vec::new();
    for shard in shards {
        let (w, a, bad) = shard?;
        out.words += w;
        out.accepted += a;
        all_bad.extend(bad);
    }
    all_bad.sort_by(|x, y| {
        (
            x.word.chars().count(),
            x.word.chars().map(order).collect::<Vec<_>>(),
        )
            .cmp(&(y.word.chars().count(), y.word.chars().map(order).collect()))
    });
    out.disagreement_count = all_bad.len();
    all_bad.truncate(KEPT_DISAGREEMENTS);
    out.disagreements = all_bad;
    Ok(out)
}

fn order(c: char) -> usize {
    ALPHABET.iter().position(|&x| x == c).unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::langstats::series_from_automaton;

    #[test]
    fn keys_resolve() {
        for key in REFERENCE_KEYS {
            assert!(reference_automaton(key).is_ok());
            assert!(reference_series(key).is_ok());
        }
        assert_eq!(
            reference_automaton("D3").unwrap_err(),
            Error::UnknownReference("D3".into())
        );
    }

    #[test]
    fn automaton_examples() {
        let d0 = reference_automaton("D0").unwrap();
        assert!(d0.accepts("ccc").unwrap());
        assert!(!d0.accepts("cC").unwrap());
        let d1 = reference_automaton("D1").unwrap();
        // plane letters may end a word
        assert!(d1.accepts("acb").unwrap());
        assert!(!d1.accepts("acba").unwrap());
        assert!(d1.accepts("acbc").unwrap());
        let all = reference_automaton("all").unwrap();
        assert!(all.accepts("abab").unwrap());
        assert!(!all.accepts("abA").unwrap());
        assert!(all.accepts("Cab").unwrap());
    }

    #[test]
    fn automata_compute_their_published_series() {
        for key in REFERENCE_KEYS {
            let aut = reference_automaton(key).unwrap();
            assert_eq!(
                series_from_automaton(&aut),
                reference_series(key).unwrap(),
                "{key}"
            );
        }
    }

    #[test]
    fn rule_examples() {
        assert!(rule_member("", Some(0)).unwrap());
        assert!(rule_member("acbc", Some(1)).unwrap());
        assert!(!rule_member("acb", Some(0)).unwrap());
        assert!(!rule_member("aab", Some(2)).unwrap());
        assert!(!rule_member("aba", Some(2)).unwrap());
        assert!(rule_member("ab", Some(2)).unwrap());
        assert!(!rule_member("cC", None).unwrap());
        assert!(!rule_member("baB", None).unwrap());
        assert!(rule_member("baab", None).unwrap());
        assert_eq!(rule_member("x", None), Err(Error::UnknownLetter('x')));
    }

    #[test]
    fn rule_matches_automata_to_length_five() {
        let mut words = vec![String::new()];
        for _ in 0..5 {
            words = words
                .iter()
                .flat_map(|w| ALPHABET.iter().map(move |&c| format!("{w}{c}")))
                .collect();
            for key in REFERENCE_KEYS {
                let aut = reference_automaton(key).unwrap();
                let d = reference_d(key).unwrap();
                for w in &words {
                    assert_eq!(
                        rule_member(w, d).unwrap(),
                        aut.accepts(w).unwrap(),
                        "{key} {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn small_cross_validation() {
        let report = cross_validate(1, 4, Some(2)).unwrap();
        assert!(report.agree(), "{:?}", report.disagreements);
        assert_eq!(report.words, (0..=4).map(|n| 6usize.pow(n)).sum::<usize>());
        assert_eq!(report.accepted, 1 + 6 + 18 + 66 + 210);
    }
}
