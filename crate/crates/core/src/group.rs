//! Right-angled Artin group presentations, words and shortlex normal forms.
//!
//! A letter is a generator or its inverse. Inverses are written in uppercase.
//! Letters are ordered by generator declaration order with the lowercase
//! letter first, so for generators `a, b, c` the alphabet order is
//! `a < A < b < B < c < C`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A signed generator, encoded as `2 * generator + inverse_bit`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u8) << 1 | inverse as u8)
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A word over the alphabet `A ∪ A⁻¹`. Ordered shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn pushed(&self, letter: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(letter);
        Word(letters)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical representative of a group element: the shortlex-least geodesic
/// word representing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Word);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Word::empty())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    /// Geodesic length of the element.
    pub fn length(&self) -> usize {
        self.0.len()
    }
}

/// Generators together with the pairs that commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<char>,
    commuting: Vec<Vec<bool>>,
    component: Vec<usize>,
}

impl Presentation {
    pub fn new(generators: &[char], commuting: &[(char, char)]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, &g) in generators.iter().enumerate() {
            if !g.is_ascii_lowercase() {
                return Err(Error::Presentation(format!(
                    "generator '{g}' is not a lowercase ASCII letter"
                )));
            }
            if generators[..i].contains(&g) {
                return Err(Error::DuplicateGenerator(g));
            }
        }
        let n = generators.len();
        let mut table = vec![vec![false; n]; n];
        for &(x, y) in commuting {
            let gx = generators
                .iter()
                .position(|&g| g == x)
                .ok_or(Error::UnknownGenerator(x))?;
            let gy = generators
                .iter()
                .position(|&g| g == y)
                .ok_or(Error::UnknownGenerator(y))?;
            if gx == gy {
                return Err(Error::Presentation(format!(
                    "generator '{x}' cannot commute with itself"
                )));
            }
            table[gx][gy] = true;
            table[gy][gx] = true;
        }

        // connected components of the commutation graph: the free factors
        let mut component = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            component[start] = next;
            while let Some(g) = stack.pop() {
                for h in 0..n {
                    if table[g][h] && component[h] == usize::MAX {
                        component[h] = next;
                        stack.push(h);
                    }
                }
            }
            next += 1;
        }

        Ok(Presentation {
            generators: generators.to_vec(),
            commuting: table,
            component,
        })
    }

    /// Parses the line-oriented `key = value` configuration format:
    ///
    /// ```text
    /// generators = a, b, c
    /// commuting = a b
    /// ```
    ///
    /// `commuting` holds semicolon-separated pairs and may be empty or absent.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<char>> = None;
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Presentation(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            match key.trim() {
                "generators" => {
                    let mut gens = Vec::new();
                    for item in value.split(',') {
                        let item = item.trim();
                        if item.is_empty() {
                            continue;
                        }
                        let mut chars = item.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => gens.push(c),
                            _ => {
                                return Err(Error::Presentation(format!(
                                    "generator '{item}' must be a single letter"
                                )))
                            }
                        }
                    }
                    generators = Some(gens);
                }
                "commuting" => {
                    for item in value.split(';') {
                        let item = item.trim();
                        if item.is_empty() {
                            continue;
                        }
                        let parts: Vec<&str> = item.split_whitespace().collect();
                        let letters: Vec<char> = parts
                            .iter()
                            .filter_map(|p| {
                                let mut c = p.chars();
                                match (c.next(), c.next()) {
                                    (Some(x), None) => Some(x),
                                    _ => None,
                                }
                            })
                            .collect();
                        if parts.len() != 2 || letters.len() != 2 {
                            return Err(Error::Presentation(format!(
                                "commuting pair '{item}' must be two letters separated by a space"
                            )));
                        }
                        pairs.push((letters[0], letters[1]));
                    }
                }
                other => {
                    return Err(Error::Presentation(format!("unknown key '{other}'")));
                }
            }
        }
        let generators =
            generators.ok_or_else(|| Error::Presentation("missing 'generators' line".into()))?;
        Presentation::new(&generators, &pairs)
    }

    /// The free product `ℤ² ∗ ℤ = ⟨a, b, c | [a, b]⟩`.
    pub fn z2_free_z() -> Self {
        Presentation::new(&['a', 'b', 'c'], &[('a', 'b')]).expect("valid presentation")
    }

    /// Free group on `a, b`.
    pub fn free2() -> Self {
        Presentation::new(&['a', 'b'], &[]).expect("valid presentation")
    }

    /// Free abelian group `ℤ² = ⟨a, b | [a, b]⟩`.
    pub fn z2() -> Self {
        Presentation::new(&['a', 'b'], &[('a', 'b')]).expect("valid presentation")
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn alphabet_size(&self) -> usize {
        2 * self.generators.len()
    }

    /// All letters in alphabet order.
    pub fn alphabet(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.alphabet_size()).map(Letter::from_index)
    }

    pub fn alphabet_chars(&self) -> Vec<char> {
        self.alphabet().map(|l| self.char_of(l)).collect()
    }

    pub fn commuting_pairs(&self) -> Vec<(char, char)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.commuting[i][j] {
                    out.push((self.generators[i], self.generators[j]));
                }
            }
        }
        out
    }

    /// Free factor (commutation-graph component) containing the letter.
    pub fn component_of(&self, letter: Letter) -> usize {
        self.component[letter.generator()]
    }

    pub fn component_count(&self) -> usize {
        self.component.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Letters of one free factor, in alphabet order.
    pub fn component_letters(&self, component: usize) -> Vec<Letter> {
        self.alphabet()
            .filter(|&l| self.component_of(l) == component)
            .collect()
    }

    /// Distinct generators that commute; such letters can be swapped.
    pub fn independent(&self, x: Letter, y: Letter) -> bool {
        x.generator() != y.generator() && self.commuting[x.generator()][y.generator()]
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        let lower = c.to_ascii_lowercase();
        let g = self.generators.iter().position(|&x| x == lower)?;
        Some(Letter::new(g, c.is_ascii_uppercase()))
    }

    pub fn char_of(&self, letter: Letter) -> char {
        let c = self.generators[letter.generator()];
        if letter.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    /// Parses a word; the empty string and `ε` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "ε" {
            return Ok(Word::empty());
        }
        text.chars()
            .map(|c| self.letter(c).ok_or(Error::UnknownLetter(c)))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Shorthand for tests and examples; panics on foreign letters.
    pub fn word(&self, text: &str) -> Word {
        self.parse_word(text).expect("word over the alphabet")
    }

    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.letters().iter().map(|&l| self.char_of(l)).collect()
    }

    pub fn display<'a>(&'a self, word: &'a Word) -> WordDisplay<'a> {
        WordDisplay { pres: self, word }
    }

    /// Shortlex-least geodesic representative of the element `word` spells.
    pub fn normal_form(&self, word: &Word) -> NormalForm {
        let mut reduced = Vec::with_capacity(word.len());
        for &x in word.letters() {
            self.append_reduced(&mut reduced, x);
        }
        NormalForm(Word(self.lex_least(reduced)))
    }

    /// Normal form of `g · x`.
    pub fn multiply_letter(&self, g: &NormalForm, x: Letter) -> NormalForm {
        let mut reduced = g.word().letters().to_vec();
        self.append_reduced(&mut reduced, x);
        NormalForm(Word(self.lex_least(reduced)))
    }

    /// Normal form of `g · w`.
    pub fn multiply(&self, g: &NormalForm, w: &Word) -> NormalForm {
        let mut reduced = g.word().letters().to_vec();
        for &x in w.letters() {
            self.append_reduced(&mut reduced, x);
        }
        NormalForm(Word(self.lex_least(reduced)))
    }

    /// Word-metric distance between the elements spelled by `g` and `h`.
    pub fn distance(&self, g: &Word, h: &Word) -> usize {
        self.normal_form(&g.inverse().concat(h)).length()
    }

    pub fn is_geodesic(&self, word: &Word) -> bool {
        self.normal_form(word).length() == word.len()
    }

    /// Appends `x` to a reduced word, cancelling against an earlier `x⁻¹`
    /// when every letter in between commutes with `x`.
    fn append_reduced(&self, reduced: &mut Vec<Letter>, x: Letter) {
        let inv = x.inverse();
        for j in (0..reduced.len()).rev() {
            let y = reduced[j];
            if y == inv {
                reduced.remove(j);
                return;
            }
            if !self.independent(x, y) {
                break;
            }
        }
        reduced.push(x);
    }

    /// Lexicographically least rearrangement of a reduced word under the
    /// commutation relations.
    fn lex_least(&self, mut rest: Vec<Letter>) -> Vec<Letter> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for p in 0..rest.len() {
                let candidate = rest[p];
                if best.is_some_and(|b| rest[b] <= candidate) {
                    continue;
                }
                if rest[..p].iter().all(|&y| self.independent(candidate, y)) {
                    best = Some(p);
                }
            }
            let p = best.expect("the first letter is always movable");
            out.push(rest.remove(p));
        }
        out
    }
}

pub struct WordDisplay<'a> {
    pres: &'a Presentation,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pres.format_word(self.word))
    }
}
