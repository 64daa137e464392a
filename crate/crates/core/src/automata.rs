//! Deterministic finite automata with an explicit absorbing fail state.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type StateId = usize;

/// Total DFA over a character alphabet. The fail state is non-accepting and
/// loops on every letter.
#[derive(Clone, Debug)]
pub struct Automaton {
    alphabet: Vec<char>,
    labels: Vec<String>,
    start: StateId,
    accepting: Vec<bool>,
    fail: StateId,
    delta: Vec<Vec<StateId>>,
}

impl Automaton {
    pub fn new(
        alphabet: Vec<char>,
        labels: Vec<String>,
        start: StateId,
        accepting: Vec<bool>,
        fail: StateId,
        delta: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        let n = delta.len();
        if labels.len() != n || accepting.len() != n || start >= n || fail >= n {
            return Err(Error::InvalidParameter(
                "state tables disagree in size".into(),
            ));
        }
        if delta
            .iter()
            .any(|row| row.len() != alphabet.len() || row.iter().any(|&t| t >= n))
        {
            return Err(Error::InvalidParameter(
                "transition function is not total".into(),
            ));
        }
        if accepting[fail] || delta[fail].iter().any(|&t| t != fail) {
            return Err(Error::InvalidParameter(
                "fail state must be rejecting and absorbing".into(),
            ));
        }
        Ok(Automaton {
            alphabet,
            labels,
            start,
            accepting,
            fail,
            delta,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    /// States other than the fail state.
    pub fn live_state_count(&self) -> usize {
        self.delta.len() - 1
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn fail(&self) -> StateId {
        self.fail
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s]
    }

    pub fn label(&self, s: StateId) -> &str {
        &self.labels[s]
    }

    pub fn state_by_label(&self, label: &str) -> Option<StateId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn step(&self, s: StateId, letter: usize) -> StateId {
        self.delta[s][letter]
    }

    pub fn letter_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&x| x == c)
    }

    pub fn run(&self, word: &str) -> Result<StateId> {
        word.chars().try_fold(self.start, |s, c| {
            let a = self.letter_index(c).ok_or(Error::UnknownLetter(c))?;
            Ok(self.delta[s][a])
        })
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepting[self.run(word)?])
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let s = word.iter().fold(self.start, |s, &a| self.delta[s][a]);
        self.accepting[s]
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.start] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(s) = queue.pop_front() {
            for &t in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev = vec![Vec::new(); n];
        for (s, row) in self.delta.iter().enumerate() {
            for &t in row {
                rev[t].push(s);
            }
        }
        let mut seen = self.accepting.clone();
        let mut queue: VecDeque<StateId> = (0..n).filter(|&s| seen[s]).collect();
        while let Some(t) = queue.pop_front() {
            for &s in &rev[t] {
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
        }
        seen
    }

    /// States that are reachable from the start and can reach acceptance.
    pub fn trim_states(&self) -> Vec<StateId> {
        let (r, c) = (self.reachable(), self.coreachable());
        (0..self.state_count()).filter(|&s| r[s] && c[s]).collect()
    }

    /// Whether every prefix of an accepted word is accepted.
    pub fn is_prefix_closed(&self) -> bool {
        let (r, c) = (self.reachable(), self.coreachable());
        (0..self.state_count()).all(|s| !r[s] || !c[s] || self.accepting[s])
    }

    /// Minimal equivalent automaton (Moore partition refinement). States are
    /// numbered by breadth-first search from the start over letters in
    /// alphabet order; the fail state comes last.
    pub fn minimize(&self) -> Automaton {
        let reach = self.reachable();
        let co = self.coreachable();
        let states: Vec<StateId> = (0..self.state_count()).filter(|&s| reach[s]).collect();

        let mut class: HashMap<StateId, usize> = states
            .iter()
            .map(|&s| (s, usize::from(self.accepting[s])))
            .collect();
        let mut count = {
            let mut seen: Vec<usize> = class.values().copied().collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        };
        loop {
            let mut signatures: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = HashMap::with_capacity(states.len());
            for &s in &states {
                let sig = (
                    class[&s],
                    self.delta[s].iter().map(|t| class[t]).collect::<Vec<_>>(),
                );
                let fresh = signatures.len();
                let id = *signatures.entry(sig).or_insert(fresh);
                next.insert(s, id);
            }
            let refined = signatures.len();
            class = next;
            if refined == count {
                break;
            }
            count = refined;
        }

        // canonical numbering of the live classes, dead class last
        let dead = |s: StateId| !co[s];
        let mut number: HashMap<usize, StateId> = HashMap::new();
        let mut reps: Vec<StateId> = Vec::new();
        if !dead(self.start) {
            number.insert(class[&self.start], 0);
            reps.push(self.start);
            let mut queue = VecDeque::from([self.start]);
            while let Some(s) = queue.pop_front() {
                for &t in &self.delta[s] {
                    if dead(t) || number.contains_key(&class[&t]) {
                        continue;
                    }
                    number.insert(class[&t], reps.len());
                    reps.push(t);
                    queue.push_back(t);
                }
            }
        }
        let fail = reps.len();
        let n = fail + 1;
        let mut labels = Vec::with_capacity(n);
        let mut accepting = Vec::with_capacity(n);
        let mut delta = Vec::with_capacity(n);
        for &r in &reps {
            // label each class by its lowest original state
            let lowest = states
                .iter()
                .copied()
                .find(|&s| class[&s] == class[&r])
                .unwrap();
            labels.push(self.labels[lowest].clone());
            accepting.push(self.accepting[r]);
            delta.push(
                self.delta[r]
                    .iter()
                    .map(|&t| if dead(t) { fail } else { number[&class[&t]] })
                    .collect(),
            );
        }
        labels.push("fail".to_string());
        accepting.push(false);
        delta.push(vec![fail; self.alphabet.len()]);
        Automaton {
            alphabet: self.alphabet.clone(),
            labels,
            start: if dead(self.start) { fail } else { 0 },
            accepting,
            fail,
            delta,
        }
    }

    /// Identical transition structure, ignoring labels.
    pub fn same_structure(&self, other: &Automaton) -> bool {
        self.alphabet == other.alphabet
            && self.start == other.start
            && self.fail == other.fail
            && self.accepting == other.accepting
            && self.delta == other.delta
    }

    pub fn equivalent(&self, other: &Automaton) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.minimize().same_structure(&other.minimize()))
    }

    /// Accepted words of each length `0..=n_max`, exactly.
    pub fn count_words(&self, n_max: usize) -> CountSequence {
        let mut current = vec![BigInt::zero(); self.state_count()];
        current[self.start] = BigInt::from(1);
        let mut terms = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let total: BigInt = current
                .iter()
                .zip(&self.accepting)
                .filter(|(_, &acc)| acc)
                .map(|(c, _)| c)
                .sum();
            terms.push(total);
            if n == n_max {
                break;
            }
            let mut next = vec![BigInt::zero(); self.state_count()];
            for (s, count) in current.iter().enumerate() {
                if s == self.fail || count.is_zero() {
                    continue;
                }
                for &t in &self.delta[s] {
                    next[t] += count;
                }
            }
            current = next;
        }
        CountSequence::from_terms(terms)
    }

    fn shortest_words_from(&self, from: StateId) -> Vec<Option<Vec<usize>>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.state_count()];
        words[from] = Some(Vec::new());
        let mut queue = VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            for (a, &t) in self.delta[s].iter().enumerate() {
                if t == self.fail || words[t].is_some() {
                    continue;
                }
                let mut w = words[s].clone().unwrap();
                w.push(a);
                words[t] = Some(w);
                queue.push_back(t);
            }
        }
        words
    }

    /// A pair `(u, v)` with `u·vⁿ` accepted for every `n ≥ 0`: `u` is the
    /// shortest word reaching an accepting state that lies on a cycle and `v`
    /// the shortest nonempty loop there. Among candidates the pair with the
    /// least total length wins, ties broken by shorter `u`, then shortlex.
    /// `None` when no accepting state lies on a cycle, which for prefix-closed
    /// languages means the language is finite.
    pub fn pump_witness(&self) -> Option<(String, String)> {
        let from_start = self.shortest_words_from(self.start);
        let mut best: Option<(usize, usize, Vec<usize>, Vec<usize>)> = None;
        for (s, reach) in from_start.iter().enumerate() {
            if s == self.fail || !self.accepting[s] {
                continue;
            }
            let Some(u) = reach.clone() else {
                continue;
            };
            // shortest loop: first letter then shortest return
            let mut loop_word: Option<Vec<usize>> = None;
            for (a, &t) in self.delta[s].iter().enumerate() {
                if t == self.fail {
                    continue;
                }
                if let Some(back) = &self.shortest_words_from(t)[s] {
                    let mut v = vec![a];
                    v.extend_from_slice(back);
                    let shorter = match &loop_word {
                        None => true,
                        Some(w) => (v.len(), &v) < (w.len(), w),
                    };
                    if shorter {
                        loop_word = Some(v);
                    }
                }
            }
            let Some(v) = loop_word else { continue };
            let key = (u.len() + v.len(), u.len(), u, v);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, u, v)| (self.spell(&u), self.spell(&v)))
    }

    fn spell(&self, letters: &[usize]) -> String {
        letters.iter().map(|&a| self.alphabet[a]).collect()
    }

    /// Redirects the listed `(state label, letter)` transitions to the fail
    /// state.
    pub fn remove_transitions(&self, removals: &[(&str, char)]) -> Result<Automaton> {
        let mut out = self.clone();
        for &(label, letter) in removals {
            let s = self
                .state_by_label(label)
                .ok_or_else(|| Error::UnknownState(label.to_string()))?;
            let a = self
                .letter_index(letter)
                .ok_or(Error::UnknownLetter(letter))?;
            out.delta[s][a] = self.fail;
        }
        Ok(out)
    }

    /// Graphviz rendering. Accepting states are double circles; the start
    /// state has an arrow from a point node; parallel edges are merged with
    /// comma-joined labels. The fail state is hidden unless `show_fail`.
    pub fn to_dot(&self, show_fail: bool) -> String {
        let mut out =
            String::from("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
        for s in 0..self.state_count() {
            if s == self.fail && !show_fail {
                continue;
            }
            let shape = if self.accepting[s] {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  s{s} [label=\"{}\", shape={shape}];", self.labels[s]);
        }
        let _ = writeln!(out, "  __start -> s{};", self.start);
        for s in 0..self.state_count() {
            if s == self.fail && !show_fail {
                continue;
            }
            let mut grouped: BTreeMap<StateId, Vec<char>> = BTreeMap::new();
            for (a, &t) in self.delta[s].iter().enumerate() {
                if t == self.fail && !show_fail {
                    continue;
                }
                grouped.entry(t).or_default().push(self.alphabet[a]);
            }
            for (t, letters) in grouped {
                let label: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "  s{s} -> s{t} [label=\"{}\"];", label.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Helper for writing automata down by state labels. Missing transitions go
/// to an implicit fail state appended last.
#[derive(Clone, Debug)]
pub struct AutomatonBuilder {
    alphabet: Vec<char>,
    labels: Vec<String>,
    accepting: Vec<bool>,
    edges: Vec<Vec<Option<StateId>>>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: &[char]) -> Self {
        AutomatonBuilder {
            alphabet: alphabet.to_vec(),
            labels: Vec::new(),
            accepting: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Adds a state; the first state added is the start state.
    pub fn state(mut self, label: &str, accepting: bool) -> Self {
        self.labels.push(label.to_string());
        self.accepting.push(accepting);
        self.edges.push(vec![None; self.alphabet.len()]);
        self
    }

    /// Adds one transition per character of `letters`.
    pub fn edge(mut self, from: &str, letters: &str, to: &str) -> Self {
        let f = self
            .labels
            .iter()
            .position(|l| l == from)
            .expect("known state");
        let t = self
            .labels
            .iter()
            .position(|l| l == to)
            .expect("known state");
        for c in letters.chars() {
            let a = self
                .alphabet
                .iter()
                .position(|&x| x == c)
                .expect("known letter");
            self.edges[f][a] = Some(t);
        }
        self
    }

    /// Adds `letter` transitions into `to` from every state except those
    /// listed in `except`.
    pub fn edge_from_all(mut self, letter: char, to: &str, except: &[&str]) -> Self {
        let labels = self.labels.clone();
        for from in labels.iter().filter(|l| !except.contains(&l.as_str())) {
            self = self.edge(from, &letter.to_string(), to);
        }
        self
    }

    pub fn build(self) -> Automaton {
        let fail = self.labels.len();
        let mut labels = self.labels;
        labels.push("fail".to_string());
        let mut accepting = self.accepting;
        accepting.push(false);
        let k = self.alphabet.len();
        let mut delta: Vec<Vec<StateId>> = self
            .edges
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(fail)).collect())
            .collect();
        delta.push(vec![fail; k]);
        Automaton::new(self.alphabet, labels, 0, accepting, fail, delta)
            .expect("builder output is well formed")
    }
}

/// `a[n]` words of length n and `b[n]` words of length at most n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence {
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
}

impl CountSequence {
    pub fn from_terms(a: Vec<BigInt>) -> Self {
        let mut b = Vec::with_capacity(a.len());
        let mut running = BigInt::zero();
        for term in &a {
            running += term;
            b.push(running.clone());
        }
        CountSequence { a, b }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a_n,b_n\n");
        for (n, (a, b)) in self.a.iter().zip(&self.b).enumerate() {
            let _ = writeln!(out, "{n},{a},{b}");
        }
        out
    }
}
