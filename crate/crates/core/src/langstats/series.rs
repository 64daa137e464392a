use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use crate::automata::Automaton;

/// Growth series `P(t)/Q(t)` in lowest terms with `Q(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeriesForm {
    pub p: IntPolynomial,
    pub q: IntPolynomial,
}

impl RationalSeriesForm {
    /// Reduces `p/q` to lowest terms, normalized so that `q(0) = 1`.
    /// Requires `q(0) = ±1`.
    pub fn reduced(p: IntPolynomial, q: IntPolynomial) -> Self {
        let g = p.gcd(&q);
        let (mut p, mut q) = (
            p.div_exact(&g).expect("gcd divides"),
            q.div_exact(&g).expect("gcd divides"),
        );
        if q.coeff(0).is_negative() {
            p = -p;
            q = -q;
        }
        debug_assert!(q.coeff(0).is_one(), "denominator must be a unit at 0");
        RationalSeriesForm { p, q }
    }

    /// The first `n + 1` coefficients of the power series.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        let mut a: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut x = self.p.coeff(k);
            for (i, qi) in self.q.coeffs().iter().enumerate().skip(1).take(k) {
                x -= qi * &a[k - i];
            }
            a.push(x);
        }
        a
    }

    /// Linear recurrence read off the denominator.
    pub fn recurrence(&self) -> Recurrence {
        Recurrence {
            coeffs: self.q.coeffs().iter().skip(1).map(|c| -c).collect(),
            valid_from: self.p.degree().map_or(0, |d| d + 1),
        }
    }
}

impl fmt::Display for RationalSeriesForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "P(t) = {}", self.p)?;
        write!(f, "Q(t) = {}", self.q)
    }
}

/// `a[n] = Σ coeffs[i-1]·a[n-i]` for all `n ≥ valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub coeffs: Vec<BigInt>,
    pub valid_from: usize,
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rhs = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = match (rhs.is_empty(), c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            rhs.push_str(&format!("{sign}{}*a[n-{}]", c.abs(), i + 1));
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        write!(f, "recurrence: a[n] = {rhs} (n >= {})", self.valid_from)
    }
}

pub fn recurrence_from_series(series: &RationalSeriesForm) -> Recurrence {
    series.recurrence()
}

/// Exact growth series of the accepted language. Solves `(I - tM)f = acc`
/// on the trimmed states by fraction-free elimination, with the start state
/// ordered last so the final pivot column yields its numerator.
pub fn series_from_automaton(automaton: &Automaton) -> RationalSeriesForm {
    let mut states = automaton.trim_states();
    let start = automaton.start();
    let Some(pos) = states.iter().position(|&s| s == start) else {
        return RationalSeriesForm {
            p: IntPolynomial::zero(),
            q: IntPolynomial::one(),
        };
    };
    states.remove(pos);
    states.push(start);
    let k = states.len();
    let index = |s| states.iter().position(|&x| x == s);

    // augmented matrix [I - tM | acc]
    let mut m: Vec<Vec<IntPolynomial>> = vec![vec![IntPolynomial::zero(); k + 1]; k];
    for (r, &s) in states.iter().enumerate() {
        let mut counts = vec![0i64; k];
        for a in 0..automaton.alphabet().len() {
            if let Some(c) = index(automaton.step(s, a)) {
                counts[c] += 1;
            }
        }
        for (c, &count) in counts.iter().enumerate() {
            let diag = i64::from(r == c);
            m[r][c] = IntPolynomial::from_i64(&[diag, -count]);
        }
        m[r][k] = IntPolynomial::from_i64(&[i64::from(automaton.is_accepting(s))]);
    }

    let mut prev = IntPolynomial::one();
    for p in 0..k {
        // leading principal minors of I - tM are 1 at t = 0, so pivots are nonzero
        for r in p + 1..k {
            for c in p + 1..=k {
                let num = &m[p][p] * &m[r][c] - &m[r][p] * &m[p][c];
                m[r][c] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][p] = IntPolynomial::zero();
        }
        prev = m[p][p].clone();
    }
    RationalSeriesForm::reduced(m[k - 1][k].clone(), m[k - 1][k - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::AutomatonBuilder;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn bigs(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let s = RationalSeriesForm::reduced(p(&[1, 1]), p(&[1, 0, -1]));
        assert_eq!(s.p, p(&[1]));
        assert_eq!(s.q, p(&[1, -1]));
        let s = RationalSeriesForm::reduced(p(&[-2]), p(&[-1, 3]));
        assert_eq!((s.p, s.q), (p(&[2]), p(&[1, -3])));
    }

    #[test]
    fn expansion_and_recurrence() {
        let s = RationalSeriesForm {
            p: p(&[1, 5, 4]),
            q: p(&[1, -1, -8]),
        };
        assert_eq!(s.expand(4), bigs(&[1, 6, 18, 66, 210]));
        let r = s.recurrence();
        assert_eq!(
            r.to_string(),
            "recurrence: a[n] = 1*a[n-1] + 8*a[n-2] (n >= 3)"
        );
        assert_eq!(
            s.to_string(),
            "P(t) = 1 + 5*t + 4*t^2\nQ(t) = 1 - t - 8*t^2"
        );
    }

    #[test]
    fn recurrence_formatting_signs() {
        let r = Recurrence {
            coeffs: bigs(&[-2, 0, 3]),
            valid_from: 1,
        };
        assert_eq!(
            r.to_string(),
            "recurrence: a[n] = -2*a[n-1] + 3*a[n-3] (n >= 1)"
        );
        let none = Recurrence {
            coeffs: vec![],
            valid_from: 2,
        };
        assert_eq!(none.to_string(), "recurrence: a[n] = 0 (n >= 2)");
    }

    #[test]
    fn free_monoid_on_two_letters() {
        let a = AutomatonBuilder::new(&['x', 'y'])
            .state("s", true)
            .edge("s", "xy", "s")
            .build();
        let s = series_from_automaton(&a);
        assert_eq!((s.p, s.q), (p(&[1]), p(&[1, -2])));
    }

    #[test]
    fn series_matches_counting() {
        let a = AutomatonBuilder::new(&['c', 'C', 'x'])
            .state("i", true)
            .state("c", true)
            .state("C", false)
            .state("x", true)
            .edge("i", "c", "c")
            .edge("i", "C", "C")
            .edge("c", "cx", "c")
            .edge("C", "x", "x")
            .edge("x", "cC", "i")
            .build();
        let s = series_from_automaton(&a);
        assert_eq!(s.q.coeff(0), BigInt::one());
        assert_eq!(s.expand(12), a.count_words(12).a);
    }

    #[test]
    fn empty_language() {
        let a = AutomatonBuilder::new(&['c']).state("i", false).build();
        let s = series_from_automaton(&a);
        assert!(s.p.is_zero());
        assert_eq!(s.q, p(&[1]));
    }
}
