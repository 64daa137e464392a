use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ContractionChecker, Horizon};
use crate::cayley::build_neighborhood;
use crate::error::{Error, Result};
use crate::group::{Presentation, Word};

/// Sample points are drawn from this neighborhood of the path.
const SAMPLE_RADIUS: u32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    /// Pairs with `d(p₁, p₂) > d(x₁, x₂) + 4D`.
    pub lipschitz_violations: usize,
    /// Splits where the projection onto the tail lands farther than D from
    /// the split point although the full projection meets the head.
    pub jump_violations: usize,
    pub first_violation: Option<String>,
}

impl AxiomReport {
    pub fn clean(&self) -> bool {
        self.lipschitz_violations == 0 && self.jump_violations == 0
    }
}

/// Samples pairs of points near a D-contracting path and checks that
/// projection is coarsely Lipschitz with constant `4D` and that projections
/// onto a tail never jump more than D past the split point.
pub fn verify_projection_axioms(
    pres: &Presentation,
    word: &Word,
    d: u32,
    samples: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let checker = ContractionChecker::new(pres);
    if !checker.check(word, d, Horizon::default())?.passed() {
        return Err(Error::NotContracting {
            word: pres.format_word(word),
            d,
            horizon: Horizon::default().resolve(word.len()),
        });
    }
    let n = word.len();
    let index = build_neighborhood(pres, word, SAMPLE_RADIUS, crate::cayley::DEFAULT_VERTEX_CAP)?;
    let prefixes: Vec<Word> = (0..=n).map(|k| word.slice(0, k)).collect();
    let dist_row = |v: usize| -> Vec<usize> {
        let y = index.vertex(v).word();
        prefixes.iter().map(|p| pres.distance(p, y)).collect()
    };
    let argmins = |row: &[usize], from: usize| -> (usize, usize) {
        let m = *row[from..].iter().min().unwrap();
        let lo = from + row[from..].iter().position(|&x| x == m).unwrap();
        let hi = from + row[from..].iter().rposition(|&x| x == m).unwrap();
        (lo, hi)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport {
        samples,
        ..Default::default()
    };
    for _ in 0..samples {
        let x1 = rng.gen_range(0..index.len());
        let x2 = rng.gen_range(0..index.len());
        let split = rng.gen_range(0..=n);
        let (r1, r2) = (dist_row(x1), dist_row(x2));
        let (lo1, hi1) = argmins(&r1, 0);
        let (lo2, hi2) = argmins(&r2, 0);
        let spread = hi1.abs_diff(lo2).max(hi2.abs_diff(lo1));
        let between = pres.distance(index.vertex(x1).word(), index.vertex(x2).word());
        if spread > between + 4 * d as usize {
            report.lipschitz_violations += 1;
            report.first_violation.get_or_insert_with(|| {
                format!(
                    "projection spread {spread} > {between} + 4*{d} for {} and {}",
                    pres.display(index.vertex(x1).word()),
                    pres.display(index.vertex(x2).word())
                )
            });
        }
        if lo1 <= split {
            let (_, tail_hi) = argmins(&r1, split);
            if tail_hi - split > d as usize {
                report.jump_violations += 1;
                report.first_violation.get_or_insert_with(|| {
                    format!(
                        "tail projection of {} lands at {tail_hi}, split {split}",
                        pres.display(index.vertex(x1).word())
                    )
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_direction_projects_one_lipschitz() {
        let g = Presentation::z2_free_z();
        let r = verify_projection_axioms(&g, &g.word("cccc"), 0, 300, 7).unwrap();
        assert!(r.clean(), "{r:?}");
    }

    #[test]
    fn alternating_word_has_no_violations() {
        let g = Presentation::z2_free_z();
        let r = verify_projection_axioms(&g, &g.word("acac"), 1, 500, 1).unwrap();
        assert_eq!(r.samples, 500);
        assert!(r.clean(), "{r:?}");
    }

    #[test]
    fn requires_a_contracting_word() {
        let g = Presentation::z2_free_z();
        assert!(matches!(
            verify_projection_axioms(&g, &g.word("ab"), 1, 10, 1),
            Err(Error::NotContracting { .. })
        ));
    }
}
