//! Cone-type fingerprints and the cone automaton for the language of
//! D-contracting geodesics.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::automata::Automaton;
use crate::cayley::{build_ball, BallIndex, DEFAULT_VERTEX_CAP};
use crate::contraction::{ContractionChecker, Horizon};
use crate::error::{Error, Result};
use crate::group::{Letter, Presentation, Word};

/// The m-tail and m-local contracting type of a geodesic word, both sorted
/// shortlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeFingerprint {
    pub tail: Vec<Word>,
    pub local_type: Vec<Word>,
    pub m: usize,
    pub d: u32,
}

/// Group elements `h` with `|h| ≤ k` and `|ūh| < |ū|`, as normal forms.
pub fn k_tail(pres: &Presentation, u: &Word, k: usize) -> Result<Vec<Word>> {
    let ball = build_ball(pres, k as u32, DEFAULT_VERTEX_CAP)?;
    tail_in(pres, &ball, u)
}

fn tail_in(pres: &Presentation, ball: &BallIndex, u: &Word) -> Result<Vec<Word>> {
    if !pres.is_geodesic(u) {
        return Err(Error::NotGeodesic(pres.format_word(u)));
    }
    let base = pres.normal_form(u);
    let mut tail: Vec<Word> = ball
        .vertices()
        .iter()
        .filter(|h| pres.multiply(&base, h.word()).length() < u.len())
        .map(|h| h.word().clone())
        .collect();
    tail.sort();
    Ok(tail)
}

/// Words `w` with `|w| ≤ t` such that `uw` is a D-contracting geodesic,
/// including ε when `u` itself is.
pub fn local_contracting_type(
    pres: &Presentation,
    u: &Word,
    t: usize,
    d: u32,
    horizon: Horizon,
) -> Result<Vec<Word>> {
    if !pres.is_geodesic(u) {
        return Err(Error::NotGeodesic(pres.format_word(u)));
    }
    Oracle::new(pres, d, horizon).local_type(u, t)
}

/// Contraction verdicts cached by word.
struct Oracle<'a> {
    pres: &'a Presentation,
    checker: ContractionChecker,
    d: u32,
    horizon: Horizon,
    verdicts: HashMap<Word, bool>,
}

impl<'a> Oracle<'a> {
    fn new(pres: &'a Presentation, d: u32, horizon: Horizon) -> Self {
        Oracle {
            pres,
            checker: ContractionChecker::new(pres),
            d,
            horizon,
            verdicts: HashMap::new(),
        }
    }

    fn passes(&mut self, w: &Word) -> Result<bool> {
        if let Some(&v) = self.verdicts.get(w) {
            return Ok(v);
        }
        let v = self.checker.check(w, self.d, self.horizon)?.passed();
        self.verdicts.insert(w.clone(), v);
        Ok(v)
    }

    /// Passing extensions are prefix-closed, so failures prune the search.
    fn local_type(&mut self, u: &Word, t: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        if !self.passes(u)? {
            return Ok(out);
        }
        let mut layer = vec![Word::empty()];
        out.push(Word::empty());
        for _ in 0..t {
            let mut next = Vec::new();
            for w in &layer {
                for a in self.pres.alphabet() {
                    let ext = w.pushed(a);
                    if self.passes(&u.concat(&ext))? {
                        next.push(ext);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        Ok(out)
    }
}

/// Outcome of the sanity checks run while building a cone automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDiagnostics {
    /// Non-fail states of the table.
    pub states: usize,
    pub consistent: bool,
    /// The minimized automata built with `m` and `m + 1` coincide.
    pub stabilized: bool,
    pub max_len: usize,
    pub m: usize,
    /// First pair of same-fingerprint words disagreeing on an extension.
    pub inconsistency: Option<(Word, Word, Letter)>,
}

impl ConeDiagnostics {
    pub fn require_consistent(&self, pres: &Presentation) -> Result<()> {
        match &self.inconsistency {
            None => Ok(()),
            Some((first, second, letter)) => Err(Error::InconsistentFingerprint {
                first: pres.format_word(first),
                second: pres.format_word(second),
                letter: pres.char_of(*letter),
            }),
        }
    }
}

impl fmt::Display for ConeDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states={} consistent={} stabilized={} max_len={} m={}",
            self.states, self.consistent, self.stabilized, self.max_len, self.m
        )
    }
}

#[derive(Clone, Debug)]
pub struct ConeTable {
    pub fingerprints: Vec<ConeFingerprint>,
    /// Shortlex-least word reaching each state.
    pub representatives: Vec<Word>,
    /// `None` is the fail state.
    pub transitions: Vec<Vec<Option<usize>>>,
    pub diagnostics: ConeDiagnostics,
}

impl ConeTable {
    pub fn state_of(&self, fp: &ConeFingerprint) -> Option<usize> {
        self.fingerprints.iter().position(|f| f == fp)
    }

    /// The table as a total automaton with the fail state appended. States
    /// are labelled by their representatives.
    pub fn to_automaton(&self, pres: &Presentation) -> Automaton {
        let n = self.representatives.len();
        let fail = n;
        let mut labels: Vec<String> = self
            .representatives
            .iter()
            .map(|w| pres.format_word(w))
            .collect();
        labels.push("fail".to_string());
        let mut delta: Vec<Vec<usize>> = self
            .transitions
            .iter()
            .map(|row| row.iter().map(|t| t.unwrap_or(fail)).collect())
            .collect();
        delta.push(vec![fail; pres.alphabet_size()]);
        let mut accepting = vec![true; n];
        accepting.push(false);
        Automaton::new(pres.alphabet_chars(), labels, 0, accepting, fail, delta)
            .expect("cone table is total")
    }
}

#[derive(Clone, Debug)]
pub struct ConeAutomaton {
    pub automaton: Automaton,
    pub table: ConeTable,
}

struct Builder<'a> {
    oracle: Oracle<'a>,
    ball: BallIndex,
    m: usize,
    fingerprints: HashMap<Word, ConeFingerprint>,
}

impl<'a> Builder<'a> {
    fn new(pres: &'a Presentation, d: u32, m: usize, horizon: Horizon) -> Result<Self> {
        Ok(Builder {
            oracle: Oracle::new(pres, d, horizon),
            ball: build_ball(pres, m as u32, DEFAULT_VERTEX_CAP)?,
            m,
            fingerprints: HashMap::new(),
        })
    }

    fn fingerprint(&mut self, u: &Word) -> Result<ConeFingerprint> {
        if let Some(fp) = self.fingerprints.get(u) {
            return Ok(fp.clone());
        }
        let fp = ConeFingerprint {
            tail: tail_in(self.oracle.pres, &self.ball, u)?,
            local_type: self.oracle.local_type(u, self.m)?,
            m: self.m,
            d: self.oracle.d,
        };
        self.fingerprints.insert(u.clone(), fp.clone());
        Ok(fp)
    }

    /// Closes the fingerprint table under one-letter extensions.
    fn table(&mut self, max_len: usize) -> Result<ConeTable> {
        let pres = self.oracle.pres;
        let mut index: HashMap<ConeFingerprint, usize> = HashMap::new();
        let mut fingerprints = Vec::new();
        let mut representatives = Vec::new();
        let mut transitions = Vec::new();
        let start = self.fingerprint(&Word::empty())?;
        index.insert(start.clone(), 0);
        fingerprints.push(start);
        representatives.push(Word::empty());
        let mut s = 0;
        while s < representatives.len() {
            let rep = representatives[s].clone();
            let mut row = Vec::with_capacity(pres.alphabet_size());
            for a in pres.alphabet() {
                let ext = rep.pushed(a);
                if !self.oracle.passes(&ext)? {
                    row.push(None);
                    continue;
                }
                let fp = self.fingerprint(&ext)?;
                let target = match index.get(&fp) {
                    Some(&t) => t,
                    None => {
                        if ext.len() > max_len {
                            return Err(Error::ConeClosure { max_len });
                        }
                        let t = representatives.len();
                        index.insert(fp.clone(), t);
                        fingerprints.push(fp);
                        representatives.push(ext);
                        t
                    }
                };
                row.push(Some(target));
            }
            transitions.push(row);
            s += 1;
        }
        let inconsistency = self.consistency(max_len)?;
        Ok(ConeTable {
            diagnostics: ConeDiagnostics {
                states: representatives.len(),
                consistent: inconsistency.is_none(),
                stabilized: false,
                max_len,
                m: self.m,
                inconsistency,
            },
            fingerprints,
            representatives,
            transitions,
        })
    }

    /// Compares one-letter extension verdicts of all passing words shorter
    /// than `max_len` against the first word seen with the same fingerprint.
    fn consistency(&mut self, max_len: usize) -> Result<Option<(Word, Word, Letter)>> {
        let pres = self.oracle.pres;
        let mut seen: HashMap<ConeFingerprint, (Word, Vec<bool>)> = HashMap::new();
        let mut queue = VecDeque::from([Word::empty()]);
        while let Some(w) = queue.pop_front() {
            if w.len() >= max_len {
                continue;
            }
            let mut verdicts = Vec::with_capacity(pres.alphabet_size());
            for a in pres.alphabet() {
                let ext = w.pushed(a);
                let ok = self.oracle.passes(&ext)?;
                verdicts.push(ok);
                if ok {
                    queue.push_back(ext);
                }
            }
            let fp = self.fingerprint(&w)?;
            match seen.get(&fp) {
                None => {
                    seen.insert(fp, (w, verdicts));
                }
                Some((first, expected)) => {
                    if let Some(k) = (0..verdicts.len()).find(|&k| verdicts[k] != expected[k]) {
                        return Ok(Some((first.clone(), w, Letter::from_index(k))));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Builds the cone automaton of D-contracting geodesics from fingerprints
/// with parameter `m`, exploring words up to `max_len`. The result is not
/// minimized; consult the diagnostics before trusting it.
pub fn build_cone_automaton(
    pres: &Presentation,
    d: u32,
    m: usize,
    max_len: usize,
    horizon: Horizon,
) -> Result<ConeAutomaton> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if max_len < m + 2 {
        return Err(Error::InvalidParameter(format!(
            "max_len {max_len} must be at least m + 2 = {}",
            m + 2
        )));
    }
    let mut table = Builder::new(pres, d, m, horizon)?.table(max_len)?;
    let automaton = table.to_automaton(pres);
    table.diagnostics.stabilized = match Builder::new(pres, d, m + 1, horizon)?.table(max_len) {
        Ok(next) => next
            .to_automaton(pres)
            .minimize()
            .same_structure(&automaton.minimize()),
        Err(Error::ConeClosure { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(ConeAutomaton { automaton, table })
}
