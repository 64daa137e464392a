//! Finite pieces of the Cayley graph: balls, path neighborhoods and
//! breadth-first distance fields.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{Letter, NormalForm, Presentation, Word};

pub type VertexId = usize;

/// Default bound on the number of vertices any single search may touch.
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

pub const UNREACHED: u32 = u32::MAX;

/// Lazily expanded Cayley graph over a subset of the alphabet. Vertices are
/// keyed by normal form; neighbors are computed on first request.
#[derive(Clone, Debug)]
pub(crate) struct Arena {
    letters: Vec<Letter>,
    ids: HashMap<NormalForm, u32>,
    nodes: Vec<NormalForm>,
    adj: Vec<Vec<u32>>,
    cap: usize,
}

const UNKNOWN: u32 = u32::MAX;

impl Arena {
    pub(crate) fn new(letters: Vec<Letter>, cap: usize) -> Self {
        let mut arena = Arena {
            letters,
            ids: HashMap::new(),
            nodes: Vec::new(),
            adj: Vec::new(),
            cap,
        };
        arena
            .intern(NormalForm::identity())
            .expect("cap admits the identity");
        arena
    }

    pub(crate) fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub(crate) fn node(&self, id: u32) -> &NormalForm {
        &self.nodes[id as usize]
    }

    pub(crate) fn intern(&mut self, nf: NormalForm) -> Result<u32> {
        if let Some(&id) = self.ids.get(&nf) {
            return Ok(id);
        }
        if self.nodes.len() >= self.cap {
            return Err(Error::VertexCap { cap: self.cap });
        }
        let id = self.nodes.len() as u32;
        self.ids.insert(nf.clone(), id);
        self.nodes.push(nf);
        self.adj.push(vec![UNKNOWN; self.letters.len()]);
        Ok(id)
    }

    /// Neighbor of `id` across the `slot`-th letter of this arena.
    pub(crate) fn step(&mut self, pres: &Presentation, id: u32, slot: usize) -> Result<u32> {
        let known = self.adj[id as usize][slot];
        if known != UNKNOWN {
            return Ok(known);
        }
        let letter = self.letters[slot];
        let nf = pres.multiply_letter(&self.nodes[id as usize], letter);
        let next = self.intern(nf)?;
        self.adj[id as usize][slot] = next;
        if let Some(back) = self.letters.iter().position(|&l| l == letter.inverse()) {
            self.adj[next as usize][back] = id;
        }
        Ok(next)
    }

    pub(crate) fn slot_of(&self, letter: Letter) -> Option<usize> {
        self.letters.iter().position(|&l| l == letter)
    }

    pub(crate) fn walk(&mut self, pres: &Presentation, word: &Word) -> Result<Vec<u32>> {
        let mut path = Vec::with_capacity(word.len() + 1);
        let mut cur = 0;
        path.push(cur);
        for &l in word.letters() {
            let slot = self
                .slot_of(l)
                .ok_or_else(|| Error::UnknownLetter(pres.char_of(l)))?;
            cur = self.step(pres, cur, slot)?;
            path.push(cur);
        }
        Ok(path)
    }
}

/// Finite portion of the Cayley graph with dense vertex ids assigned in BFS
/// discovery order.
#[derive(Clone, Debug)]
pub struct BallIndex {
    alphabet: Vec<char>,
    vertices: Vec<NormalForm>,
    ids: HashMap<NormalForm, VertexId>,
    adjacency: Vec<Vec<Option<VertexId>>>,
    depth: Vec<u32>,
    frontier: Vec<bool>,
    radius: u32,
}

impl BallIndex {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex(&self, id: VertexId) -> &NormalForm {
        &self.vertices[id]
    }

    pub fn vertices(&self) -> &[NormalForm] {
        &self.vertices
    }

    pub fn id_of(&self, nf: &NormalForm) -> Option<VertexId> {
        self.ids.get(nf).copied()
    }

    /// Neighbor across letter `letter`, if it lies in the index.
    pub fn neighbor(&self, id: VertexId, letter: Letter) -> Option<VertexId> {
        self.adjacency[id][letter.index()]
    }

    pub fn neighbors(&self, id: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[id].iter().flatten().copied()
    }

    pub fn is_frontier(&self, id: VertexId) -> bool {
        self.frontier[id]
    }

    /// Distance from the defining set (identity for a ball, the path for a
    /// neighborhood).
    pub fn depth(&self, id: VertexId) -> u32 {
        self.depth[id]
    }

    /// Graphviz rendering: one node per vertex labeled by its normal form and
    /// one undirected edge per generator edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ball {\n");
        for (id, nf) in self.vertices.iter().enumerate() {
            let label: String = if nf.length() == 0 {
                "ε".to_string()
            } else {
                nf.word()
                    .letters()
                    .iter()
                    .map(|l| self.char_of(*l))
                    .collect()
            };
            let _ = writeln!(out, "  v{id} [label=\"{label}\"];");
        }
        for (id, row) in self.adjacency.iter().enumerate() {
            for (slot, target) in row.iter().enumerate() {
                let letter = Letter::from_index(slot);
                if letter.is_inverse() {
                    continue;
                }
                if let Some(t) = target {
                    let _ = writeln!(out, "  v{id} -- v{t} [label=\"{}\"];", self.char_of(letter));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    fn char_of(&self, letter: Letter) -> char {
        self.alphabet[letter.index()]
    }
}

/// Ball of the given radius around the identity.
pub fn build_ball(pres: &Presentation, radius: u32, vertex_cap: usize) -> Result<BallIndex> {
    build_around(pres, &[NormalForm::identity()], radius, vertex_cap)
}

/// All vertices within `rho` of some vertex of the geodesic path spelled by
/// `path` from the identity.
pub fn build_neighborhood(
    pres: &Presentation,
    path: &Word,
    rho: u32,
    vertex_cap: usize,
) -> Result<BallIndex> {
    if !pres.is_geodesic(path) {
        return Err(Error::NotGeodesic(pres.format_word(path)));
    }
    let mut seeds = Vec::with_capacity(path.len() + 1);
    let mut cur = NormalForm::identity();
    seeds.push(cur.clone());
    for &l in path.letters() {
        cur = pres.multiply_letter(&cur, l);
        seeds.push(cur.clone());
    }
    build_around(pres, &seeds, rho, vertex_cap)
}

fn build_around(
    pres: &Presentation,
    seeds: &[NormalForm],
    radius: u32,
    vertex_cap: usize,
) -> Result<BallIndex> {
    let k = pres.alphabet_size();
    let mut index = BallIndex {
        alphabet: pres.alphabet_chars(),
        vertices: Vec::new(),
        ids: HashMap::new(),
        adjacency: Vec::new(),
        depth: Vec::new(),
        frontier: Vec::new(),
        radius,
    };
    let mut queue = VecDeque::new();
    for seed in seeds {
        if index.ids.contains_key(seed) {
            continue;
        }
        push_vertex(&mut index, seed.clone(), 0, k, vertex_cap)?;
        queue.push_back(index.len() - 1);
    }
    while let Some(id) = queue.pop_front() {
        let depth = index.depth[id];
        for letter in pres.alphabet() {
            if index.adjacency[id][letter.index()].is_some() {
                continue;
            }
            let nf = pres.multiply_letter(&index.vertices[id], letter);
            let target = match index.ids.get(&nf) {
                Some(&t) => Some(t),
                None if depth < radius => {
                    push_vertex(&mut index, nf, depth + 1, k, vertex_cap)?;
                    let t = index.len() - 1;
                    queue.push_back(t);
                    Some(t)
                }
                None => None,
            };
            if let Some(t) = target {
                index.adjacency[id][letter.index()] = Some(t);
                index.adjacency[t][letter.inverse().index()] = Some(id);
            }
        }
    }
    for id in 0..index.len() {
        index.frontier[id] = index.depth[id] == radius;
    }
    Ok(index)
}

fn push_vertex(
    index: &mut BallIndex,
    nf: NormalForm,
    depth: u32,
    k: usize,
    cap: usize,
) -> Result<()> {
    if index.vertices.len() >= cap {
        return Err(Error::VertexCap { cap });
    }
    index.ids.insert(nf.clone(), index.vertices.len());
    index.vertices.push(nf);
    index.adjacency.push(vec![None; k]);
    index.depth.push(depth);
    index.frontier.push(false);
    Ok(())
}

/// Hop distances from one source, computed inside the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceField {
    source: VertexId,
    dist: Vec<u32>,
}

impl DistanceField {
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// Distance to `v`, or [`UNREACHED`].
    pub fn get(&self, v: VertexId) -> u32 {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }

    /// Distances are exact for every vertex closer to the source than this.
    pub fn exact_below(&self, index: &BallIndex) -> u32 {
        (0..index.len())
            .filter(|&v| index.is_frontier(v))
            .map(|v| self.dist[v].saturating_add(1))
            .min()
            .unwrap_or(UNREACHED)
    }
}

pub fn distance_field(index: &BallIndex, source: VertexId) -> Result<DistanceField> {
    if source >= index.len() {
        return Err(Error::UnknownVertex(source));
    }
    let mut dist = vec![UNREACHED; index.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for w in index.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    Ok(DistanceField { source, dist })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(index: &BallIndex, pres: &Presentation, w: &str) -> VertexId {
        index.id_of(&pres.normal_form(&pres.word(w))).unwrap()
    }

    #[test]
    fn ball_sizes() {
        let g = Presentation::z2_free_z();
        assert_eq!(build_ball(&g, 0, 100).unwrap().len(), 1);
        assert_eq!(build_ball(&g, 1, 100).unwrap().len(), 7);
        // sphere of radius 2: 8 in the plane, cc, CC, and 16 mixed words
        assert_eq!(build_ball(&g, 2, 100).unwrap().len(), 33);
        assert_eq!(
            build_ball(&Presentation::free2(), 2, 100).unwrap().len(),
            17
        );
    }

    #[test]
    fn ball_respects_vertex_cap() {
        let g = Presentation::z2_free_z();
        assert_eq!(
            build_ball(&g, 3, 30).unwrap_err(),
            Error::VertexCap { cap: 30 }
        );
    }

    #[test]
    fn ball_structure() {
        let g = Presentation::z2_free_z();
        let ball = build_ball(&g, 3, 10_000).unwrap();
        assert_eq!(ball.vertex(0).length(), 0);
        for v in 0..ball.len() {
            if !ball.is_frontier(v) {
                assert_eq!(ball.neighbors(v).count(), 6);
            }
            for l in g.alphabet() {
                if let Some(w) = ball.neighbor(v, l) {
                    assert_eq!(ball.neighbor(w, l.inverse()), Some(v));
                    let dv = ball.vertex(v).length() as i64;
                    let dw = ball.vertex(w).length() as i64;
                    assert_eq!((dv - dw).abs(), 1);
                }
            }
            assert_eq!(ball.depth(v) as usize, ball.vertex(v).length());
        }
    }

    #[test]
    fn neighborhood_examples() {
        let g = Presentation::z2_free_z();
        assert_eq!(
            build_neighborhood(&g, &g.word("cc"), 0, 100).unwrap().len(),
            3
        );
        let z2 = Presentation::z2();
        assert_eq!(
            build_neighborhood(&z2, &z2.word("a"), 1, 100)
                .unwrap()
                .len(),
            8
        );
        let a = build_neighborhood(&g, &Word::empty(), 2, 100).unwrap();
        let b = build_ball(&g, 2, 100).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_eq!(
            build_neighborhood(&g, &g.word("aA"), 1, 100).unwrap_err(),
            Error::NotGeodesic("aA".into())
        );
    }

    #[test]
    fn distance_field_examples() {
        let g = Presentation::z2_free_z();
        let ball = build_ball(&g, 2, 100).unwrap();
        let from_id = distance_field(&ball, 0).unwrap();
        assert_eq!(from_id.get(id(&ball, &g, "ab")), 2);
        let from_c = distance_field(&ball, id(&ball, &g, "c")).unwrap();
        assert_eq!(from_c.get(id(&ball, &g, "a")), 2);

        let z2 = Presentation::z2();
        let ball = build_ball(&z2, 2, 100).unwrap();
        let from_a = distance_field(&ball, id(&ball, &z2, "a")).unwrap();
        assert_eq!(from_a.get(id(&ball, &z2, "b")), 2);

        assert_eq!(distance_field(&ball, 999), Err(Error::UnknownVertex(999)));
    }

    #[test]
    fn dot_export_is_deterministic() {
        let g = Presentation::free2();
        let ball = build_ball(&g, 1, 100).unwrap();
        let dot = ball.to_dot();
        assert_eq!(dot, build_ball(&g, 1, 100).unwrap().to_dot());
        assert!(dot.starts_with("graph ball {\n  v0 [label=\"ε\"];"));
        assert_eq!(dot.matches(" -- ").count(), 4);
    }

    #[test]
    fn arena_matches_ball() {
        let g = Presentation::z2_free_z();
        let mut arena = Arena::new(g.alphabet().collect(), 1000);
        let path = arena.walk(&g, &g.word("acB")).unwrap();
        assert_eq!(path.len(), 4);
        assert_eq!(g.format_word(arena.node(path[3]).word()), "acB");
        assert_eq!(arena.walk(&g, &g.word("aA")).unwrap()[2], 0);
    }
}
