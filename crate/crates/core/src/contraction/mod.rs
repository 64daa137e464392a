//! D-contraction of finite geodesic words.
//!
//! A geodesic segment σ is D-contracting when every closed ball disjoint
//! from σ projects onto σ with diameter at most D. A word passes when every
//! subsegment of its path does. Balls are checked up to a center horizon:
//! every center `x` with `1 ≤ d(x, σ) ≤ R` contributes its maximal disjoint
//! ball `B(x, d(x, σ) − 1)`; any smaller disjoint ball around `x` projects
//! into the projection of the maximal one.
//!
//! Two independent routes compute the verdict. [`check_contracting_direct`]
//! scans a neighborhood index of the whole Cayley graph. [`ContractionChecker`]
//! splits the path at free-product boundaries (maximal runs of letters from
//! one commutation component) and scans each run inside its own factor:
//! every vertex outside a run's coset reaches it through a cut vertex and
//! projects exactly like that cut vertex, so centers and ball points outside
//! the coset never add a projection index the coset does not already see.

mod axioms;
mod direct;
mod scan;

use std::collections::HashMap;
use std::sync::Mutex;

use crate::cayley::{Arena, BallIndex, DistanceField, VertexId, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};
use crate::group::{Letter, Presentation, Word};

pub use axioms::{verify_projection_axioms, AxiomReport};
pub use direct::{check_contracting_direct, RangeArgmin};

/// How far from the segment ball centers are searched.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Horizon {
    Fixed(u32),
    /// `length(w) + k`.
    LengthPlus(u32),
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon::LengthPlus(2)
    }
}

impl Horizon {
    pub fn resolve(self, word_len: usize) -> u32 {
        match self {
            Horizon::Fixed(r) => r,
            Horizon::LengthPlus(k) => word_len as u32 + k,
        }
    }
}

/// A ball disjoint from `segment` whose projection is wider than D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub segment: (usize, usize),
    pub center: Word,
    /// Radius of the ball, one less than the center's distance to the segment.
    pub radius: u32,
    pub y1: Word,
    pub y2: Word,
    pub k1: usize,
    pub k2: usize,
}

impl Witness {
    /// Re-derives the witness from exact word-metric distances.
    pub fn replay(&self, pres: &Presentation, word: &Word, d: u32) -> bool {
        let (i, j) = self.segment;
        if i > j || j > word.len() {
            return false;
        }
        let path: Vec<Word> = (i..=j).map(|k| word.slice(0, k)).collect();
        let dists = |y: &Word| -> Vec<usize> { path.iter().map(|p| pres.distance(p, y)).collect() };
        let to_center = dists(&self.center);
        let gap = to_center.iter().copied().min().unwrap_or(0);
        if gap != self.radius as usize + 1 {
            return false;
        }
        if pres.distance(&self.center, &self.y1) > self.radius as usize
            || pres.distance(&self.center, &self.y2) > self.radius as usize
        {
            return false;
        }
        let d1 = dists(&self.y1);
        let d2 = dists(&self.y2);
        let m1 = *d1.iter().min().unwrap();
        let m2 = *d2.iter().min().unwrap();
        let left = d1.iter().position(|&x| x == m1).unwrap() + i;
        let right = d2.iter().rposition(|&x| x == m2).unwrap() + i;
        left == self.k1 && right == self.k2 && self.k2 > self.k1 + d as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass {
        d: u32,
        horizon: u32,
    },
    Fail {
        d: u32,
        horizon: u32,
        witness: Witness,
    },
    NotGeodesic,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// The single-line report used by the command line.
    pub fn render(&self, pres: &Presentation) -> String {
        match self {
            Verdict::Pass { d, horizon } => format!("PASS D={d} horizon={horizon}"),
            Verdict::Fail { d, witness: w, .. } => format!(
                "FAIL D={d} segment={}..{} center={} radius={} y1={} y2={} k1={} k2={}",
                w.segment.0,
                w.segment.1,
                pres.display(&w.center),
                w.radius,
                pres.display(&w.y1),
                pres.display(&w.y2),
                w.k1,
                w.k2
            ),
            Verdict::NotGeodesic => "NOT_GEODESIC".to_string(),
        }
    }
}

/// Nearest points of a subsegment `[i, j]` to a vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSet {
    pub i: usize,
    pub j: usize,
    pub distance: u32,
    pub leftmost: usize,
    pub rightmost: usize,
}

impl ProjectionSet {
    pub fn diameter(&self) -> usize {
        self.rightmost - self.leftmost
    }
}

/// Projection of `y` onto the subsegment `[i, j]`, where `fields[k]` is the
/// distance field of the k-th path vertex.
pub fn project_to_subsegment(
    index: &BallIndex,
    fields: &[DistanceField],
    y: VertexId,
    i: usize,
    j: usize,
) -> Result<ProjectionSet> {
    if fields.is_empty() || i > j || j >= fields.len() {
        return Err(Error::SegmentOutOfRange {
            i,
            j,
            len: fields.len().saturating_sub(1),
        });
    }
    if y >= index.len() {
        return Err(Error::UnknownVertex(y));
    }
    let mut best = u32::MAX;
    let (mut leftmost, mut rightmost) = (i, i);
    for (k, field) in fields.iter().enumerate().take(j + 1).skip(i) {
        let d = field.get(y);
        if d < best {
            best = d;
            leftmost = k;
            rightmost = k;
        } else if d == best {
            rightmost = k;
        }
    }
    let exact = fields[i..=j]
        .iter()
        .map(|f| f.exact_below(index))
        .min()
        .unwrap_or(u32::MAX);
    if best >= exact {
        return Err(Error::OutsideCorrectRegion(y));
    }
    Ok(ProjectionSet {
        i,
        j,
        distance: best,
        leftmost,
        rightmost,
    })
}

/// Contraction constant that makes a D-contracting geodesic D′-super-contracting:
/// `D′ = 26D + 4δ + 6` with slimness constant `δ = 7D + 1`, i.e. `54D + 10`.
pub fn super_contracting_parameter(d: u64) -> Option<u64> {
    let delta = d.checked_mul(7)?.checked_add(1)?;
    d.checked_mul(26)?
        .checked_add(delta.checked_mul(4)?)?
        .checked_add(6)
}

/// Failure of one run checked inside its factor, in coordinates relative to
/// the run's first vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LocalWitness {
    pub center: Word,
    pub radius: u32,
    pub y1: Word,
    pub y2: Word,
    pub k1: usize,
    pub k2: usize,
}

type MemoKey = (Vec<Letter>, u32, u32);

struct CheckerState {
    factors: Vec<Arena>,
    memo: HashMap<MemoKey, Option<LocalWitness>>,
}

/// Memoizing contraction checker working factor by factor.
///
/// Safe to share between threads; the factor graphs and the verdict cache
/// sit behind one lock.
pub struct ContractionChecker {
    pres: Presentation,
    state: Mutex<CheckerState>,
}

impl ContractionChecker {
    pub fn new(pres: &Presentation) -> Self {
        Self::with_vertex_cap(pres, DEFAULT_VERTEX_CAP)
    }

    pub fn with_vertex_cap(pres: &Presentation, cap: usize) -> Self {
        let factors = (0..pres.component_count())
            .map(|c| Arena::new(pres.component_letters(c), cap))
            .collect();
        ContractionChecker {
            pres: pres.clone(),
            state: Mutex::new(CheckerState {
                factors,
                memo: HashMap::new(),
            }),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// Number of cached segment verdicts.
    pub fn cached(&self) -> usize {
        self.state.lock().unwrap().memo.len()
    }

    pub fn check(&self, word: &Word, d: u32, horizon: Horizon) -> Result<Verdict> {
        let r = horizon.resolve(word.len());
        if r < 1 {
            return Err(Error::InvalidHorizon);
        }
        if !self.pres.is_geodesic(word) {
            return Ok(Verdict::NotGeodesic);
        }
        let letters = word.letters();
        let n = letters.len();
        // run_start[k]: first index of the maximal one-component run holding letter k
        let mut run_start = vec![0; n];
        for k in 1..n {
            run_start[k] =
                if self.pres.component_of(letters[k]) == self.pres.component_of(letters[k - 1]) {
                    run_start[k - 1]
                } else {
                    k
                };
        }
        for len in 1..=n {
            for i in 0..=n - len {
                let j = i + len;
                if run_start[j - 1] > i {
                    continue;
                }
                let sub = &letters[i..j];
                if let Some(local) = self.segment(sub, d, r)? {
                    let prefix = self.pres.normal_form(&word.slice(0, i));
                    let globalize = |w: &Word| self.pres.multiply(&prefix, w).into_word();
                    let witness = Witness {
                        segment: (i, j),
                        center: globalize(&local.center),
                        radius: local.radius,
                        y1: globalize(&local.y1),
                        y2: globalize(&local.y2),
                        k1: local.k1 + i,
                        k2: local.k2 + i,
                    };
                    return Ok(Verdict::Fail {
                        d,
                        horizon: r,
                        witness,
                    });
                }
            }
        }
        Ok(Verdict::Pass { d, horizon: r })
    }

    /// Whether the whole segment spelled by `sub` (one component only) has a
    /// violating ball, ignoring its proper subsegments.
    fn segment(&self, sub: &[Letter], d: u32, r: u32) -> Result<Option<LocalWitness>> {
        let key = (sub.to_vec(), d, r);
        let mut state = self.state.lock().unwrap();
        if let Some(hit) = state.memo.get(&key) {
            return Ok(hit.clone());
        }
        let component = self.pres.component_of(sub[0]);
        let arena = &mut state.factors[component];
        let word = Word::from_letters(sub.to_vec());
        let result = scan::scan_segment(&self.pres, arena, &word, d, r)?;
        state.memo.insert(key, result.clone());
        Ok(result)
    }
}
