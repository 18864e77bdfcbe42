//! Finite Cayley balls built by BFS: exact in-ball metric queries, growth
//! functions, and graph export.
//!
//! BFS from the identity of a vertex-transitive graph computes true word
//! lengths, so `level` is exact. Vertex order is BFS discovery order with
//! the fixed generator order, making every downstream artifact
//! byte-reproducible.

use crate::error::{Error, Result};
use crate::groups::{Element, GeneratorSymbol, MarkedGroup};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

pub const DEFAULT_VERTEX_CAP: usize = 5_000_000;

/// The ball B(e, R) in the Cayley graph of a marked group.
///
/// Immutable once built. `parent` stores the BFS tree edge `v = u·s`
/// (geodesic words by right extension); `left_parent` stores a
/// decomposition `v = s·u` with ℓ(u) = ℓ(v) − 1, used to evaluate group
/// actions word by word.
pub struct CayleyBall {
    group: MarkedGroup,
    radius: u32,
    elems: Vec<Element>,
    index: HashMap<Element, u32>,
    level: Vec<u32>,
    adj: Vec<Vec<(u32, GeneratorSymbol)>>,
    parent: Vec<Option<(u32, GeneratorSymbol)>>,
    left_parent: Vec<Option<(GeneratorSymbol, u32)>>,
}

pub fn build_ball(g: &MarkedGroup, radius: u32, vertex_cap: usize) -> Result<CayleyBall> {
    let mut elems = vec![g.identity()];
    let mut index = HashMap::new();
    index.insert(g.identity(), 0u32);
    let mut level = vec![0u32];
    let mut parent = vec![None];
    let mut queue = VecDeque::from([0u32]);

    while let Some(u) = queue.pop_front() {
        if level[u as usize] == radius {
            break; // BFS order: all later vertices are at the boundary too
        }
        for &s in g.generators() {
            let v = g.apply_generator(&elems[u as usize], s);
            if let Entry::Vacant(slot) = index.entry(v.clone()) {
                if elems.len() >= vertex_cap {
                    return Err(Error::Capacity {
                        cap: vertex_cap,
                        radius: level[u as usize] + 1,
                    });
                }
                let id = elems.len() as u32;
                slot.insert(id);
                elems.push(v);
                level.push(level[u as usize] + 1);
                parent.push(Some((u, s)));
                queue.push_back(id);
            }
        }
    }

    // induced adjacency over the full vertex set
    let mut adj = Vec::with_capacity(elems.len());
    for u in 0..elems.len() {
        let mut row = Vec::new();
        for &s in g.generators() {
            let v = g.apply_generator(&elems[u], s);
            if let Some(&vi) = index.get(&v) {
                row.push((vi, s));
            }
        }
        adj.push(row);
    }

    // left decompositions v = s·u with u one level down
    let mut left_parent = vec![None; elems.len()];
    for v in 1..elems.len() {
        for &s in g.generators() {
            let sinv = g.generator_element(g.inverse_symbol(s));
            let u = g.multiply(&sinv, &elems[v]);
            if let Some(&ui) = index.get(&u) {
                if level[ui as usize] + 1 == level[v] {
                    left_parent[v] = Some((s, ui));
                    break;
                }
            }
        }
        debug_assert!(left_parent[v].is_some());
    }

    Ok(CayleyBall {
        group: g.clone(),
        radius,
        elems,
        index,
        level,
        adj,
        parent,
        left_parent,
    })
}

impl CayleyBall {
    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, v: u32) -> &Element {
        &self.elems[v as usize]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn index_of(&self, x: &Element) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    /// BFS level = exact word length ℓ_G for every vertex in the ball.
    pub fn level(&self, v: u32) -> u32 {
        self.level[v as usize]
    }

    /// Exact ℓ_G(x) if x lies in the ball, else None (ℓ_G(x) > radius).
    pub fn length_of(&self, x: &Element) -> Option<u32> {
        self.index_of(x).map(|v| self.level(v))
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, GeneratorSymbol)] {
        &self.adj[v as usize]
    }

    /// Geodesic word for a vertex along the BFS tree (left-to-right product).
    pub fn word_to(&self, v: u32) -> Vec<GeneratorSymbol> {
        let mut w = Vec::with_capacity(self.level(v) as usize);
        let mut cur = v;
        while let Some((u, s)) = self.parent[cur as usize] {
            w.push(s);
            cur = u;
        }
        w.reverse();
        w
    }

    /// Decomposition v = s·u with ℓ(u) = ℓ(v) − 1 (None only at identity).
    pub fn left_decomposition(&self, v: u32) -> Option<(GeneratorSymbol, u32)> {
        self.left_parent[v as usize]
    }

    pub fn sphere_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.radius as usize + 1];
        for &l in &self.level {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// |B_r| for r = 0..=radius.
    pub fn ball_sizes(&self) -> Vec<u64> {
        let mut acc = 0;
        self.sphere_sizes()
            .into_iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect()
    }

    /// BFS distance between two ball elements within the induced subgraph.
    ///
    /// The `exact` flag is set only when a true geodesic is guaranteed to
    /// stay inside the ball (min level + value ≤ radius); otherwise the
    /// value is an upper bound on d_G.
    pub fn distance_in_ball(&self, u: &Element, v: &Element) -> Result<InBallDistance> {
        let ui = self
            .index_of(u)
            .ok_or_else(|| Error::NotInBall(self.group.format_element(u)))?;
        let vi = self
            .index_of(v)
            .ok_or_else(|| Error::NotInBall(self.group.format_element(v)))?;
        let mut dist = vec![u32::MAX; self.len()];
        dist[ui as usize] = 0;
        let mut queue = VecDeque::from([ui]);
        while let Some(w) = queue.pop_front() {
            if w == vi {
                break;
            }
            for &(nb, _) in self.neighbors(w) {
                if dist[nb as usize] == u32::MAX {
                    dist[nb as usize] = dist[w as usize] + 1;
                    queue.push_back(nb);
                }
            }
        }
        if dist[vi as usize] == u32::MAX {
            // cannot happen in a ball (always connected through e), but keep honest
            return Err(Error::NotInBall(self.group.format_element(v)));
        }
        let value = dist[vi as usize];
        let exact = self.level(ui) + value <= self.radius || self.level(vi) + value <= self.radius;
        Ok(InBallDistance { value, exact })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InBallDistance {
    pub value: u32,
    pub exact: bool,
}

/// |B_r| for r = 0..=radius, by BFS.
pub fn growth(g: &MarkedGroup, radius: u32, vertex_cap: usize) -> Result<Vec<u64>> {
    Ok(build_ball(g, radius, vertex_cap)?.ball_sizes())
}

/// Exact ℓ_G(x) if ℓ_G(x) ≤ budget, else None. Answers through the BFS
/// oracle; Z^d and free groups take the closed form (cross-validated
/// against BFS in tests).
pub fn word_length(g: &MarkedGroup, x: &Element, budget: u32) -> Result<Option<u64>> {
    if let Some(l) = g.closed_form_length(x) {
        return Ok(if l <= u64::from(budget) { Some(l) } else { None });
    }
    let ball = build_ball(g, budget, DEFAULT_VERTEX_CAP)?;
    Ok(ball.length_of(x).map(u64::from))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dot,
    Json,
}

/// Serialized view of a ball's graph; the JSON export schema.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(u32, u32, String)>,
    pub levels: Vec<u32>,
}

/// Undirected edges (u < v) in deterministic order with generator labels.
pub fn ball_edges(ball: &CayleyBall) -> Vec<(u32, u32, String)> {
    let mut edges = Vec::new();
    for u in 0..ball.len() as u32 {
        for &(v, s) in ball.neighbors(u) {
            if u < v {
                edges.push((u, v, ball.group().generator_name(s).to_string()));
            }
        }
    }
    edges.sort();
    edges.dedup();
    edges
}

pub fn export_graph(ball: &CayleyBall, format: GraphFormat) -> String {
    let edges = ball_edges(ball);
    match format {
        GraphFormat::EdgeList => {
            let mut out = String::new();
            for (u, v, l) in &edges {
                writeln!(out, "{u} {v} {l}").unwrap();
            }
            out
        }
        GraphFormat::Dot => {
            let mut out = String::from("graph cayley_ball {\n");
            for v in 0..ball.len() as u32 {
                writeln!(out, "  {v} [level={}];", ball.level(v)).unwrap();
            }
            for (u, v, l) in &edges {
                writeln!(out, "  {u} -- {v} [label=\"{l}\"];").unwrap();
            }
            out.push_str("}\n");
            out
        }
        GraphFormat::Json => {
            let doc = GraphJson {
                n: ball.len(),
                edges,
                levels: (0..ball.len() as u32).map(|v| ball.level(v)).collect(),
            };
            let mut s = serde_json::to_string_pretty(&json!(doc)).unwrap();
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{group_from_spec, make_group, GroupKind};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn ball(spec: &str, r: u32) -> CayleyBall {
        build_ball(&group_from_spec(spec).unwrap(), r, DEFAULT_VERTEX_CAP).unwrap()
    }

    /// Independent oracle: evaluate every word of length ≤ r and dedup.
    fn enumerated_ball_sizes(g: &MarkedGroup, r: u32) -> Vec<u64> {
        let mut seen: HashSet<Element> = HashSet::from([g.identity()]);
        let mut frontier = vec![g.identity()];
        let mut sizes = vec![1u64];
        for _ in 1..=r {
            let mut next = Vec::new();
            for x in &frontier {
                for &s in g.generators() {
                    let y = g.apply_generator(x, s);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
            sizes.push(seen.len() as u64);
        }
        sizes
    }

    #[test]
    fn small_ball_sizes_match_enumeration_oracle() {
        for spec in ["zd:2", "free:2", "lamplighter", "bs1n:2"] {
            let g = group_from_spec(spec).unwrap();
            let bfs = growth(&g, 4, DEFAULT_VERTEX_CAP).unwrap();
            let oracle = enumerated_ball_sizes(&g, 4);
            assert_eq!(bfs, oracle, "growth mismatch for {spec}");
        }
    }

    #[test]
    fn frozen_ball_sizes() {
        // values computed by the enumeration oracle above
        assert_eq!(ball("zd:2", 1).len(), 5);
        assert_eq!(ball("free:2", 2).len(), 17);
        assert_eq!(ball("lamplighter", 2).len(), 10);
    }

    #[test]
    fn z2_growth_matches_closed_form() {
        let sizes = growth(&group_from_spec("zd:2").unwrap(), 6, DEFAULT_VERTEX_CAP).unwrap();
        for (r, &n) in sizes.iter().enumerate() {
            let r = r as u64;
            assert_eq!(n, 2 * r * r + 2 * r + 1);
        }
    }

    #[test]
    fn free2_growth_matches_closed_form() {
        let sizes = growth(&group_from_spec("free:2").unwrap(), 6, DEFAULT_VERTEX_CAP).unwrap();
        for (r, &n) in sizes.iter().enumerate() {
            assert_eq!(n, 2 * 3u64.pow(r as u32) - 1);
        }
    }

    #[test]
    fn z1_growth_is_odd_numbers() {
        let sizes = growth(&group_from_spec("zd:1").unwrap(), 4, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(sizes, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn levels_agree_with_closed_form_lengths() {
        for spec in ["zd:2", "free:2"] {
            let b = ball(spec, 5);
            for v in 0..b.len() as u32 {
                let cf = b.group().closed_form_length(b.element(v)).unwrap();
                assert_eq!(u64::from(b.level(v)), cf);
            }
        }
    }

    #[test]
    fn lamplighter_word_length_example() {
        // ({0,1}, 0) needs a t a t⁻¹: length 4
        let g = make_group(GroupKind::Lamplighter).unwrap();
        let x = Element::Lamp { lamps: vec![0, 1], pos: 0 };
        assert_eq!(word_length(&g, &x, 4).unwrap(), Some(4));
        assert_eq!(word_length(&g, &x, 3).unwrap(), None);
    }

    #[test]
    fn capacity_error_names_radius() {
        let g = group_from_spec("free:2").unwrap();
        match build_ball(&g, 10, 100) {
            Err(Error::Capacity { cap, radius }) => {
                assert_eq!(cap, 100);
                assert!(radius <= 10);
            }
            other => panic!("expected capacity error, got {:?}", other.map(|b| b.len())),
        }
    }

    #[test]
    fn adjacency_is_symmetric_with_inverse_labels() {
        for spec in ["zd:2", "lamplighter", "bs1n:2"] {
            let b = ball(spec, 4);
            for u in 0..b.len() as u32 {
                for &(v, s) in b.neighbors(u) {
                    let sinv = b.group().inverse_symbol(s);
                    assert!(
                        b.neighbors(v).iter().any(|&(w, t)| w == u && t.index == sinv.index),
                        "{spec}: missing reverse edge {u}->{v}"
                    );
                }
            }
        }
    }

    #[test]
    fn identity_vertex_has_full_degree() {
        for spec in ["zd:2", "free:2", "lamplighter", "bs1n:2"] {
            let b = ball(spec, 3);
            assert_eq!(b.neighbors(0).len(), b.group().generator_count());
            for v in 0..b.len() as u32 {
                assert!(b.neighbors(v).len() <= b.group().generator_count());
            }
        }
    }

    #[test]
    fn distance_exactness_rule() {
        let b = ball("zd:2", 5);
        let u = Element::Abelian(vec![2, 0]);
        let v = Element::Abelian(vec![0, 2]);
        let d = b.distance_in_ball(&u, &v).unwrap();
        assert_eq!(d.value, 4);
        assert!(!d.exact); // level 2 + 4 > 5 on both sides: conservative flag

        let d0 = b.distance_in_ball(&u, &u).unwrap();
        assert_eq!(d0, InBallDistance { value: 0, exact: true });

        let bf = ball("free:2", 3);
        let g = bf.group().clone();
        let a = g.generator_element(g.generator_by_name("a").unwrap());
        let bb = g.generator_element(g.generator_by_name("b").unwrap());
        let d = bf.distance_in_ball(&a, &bb).unwrap();
        assert_eq!(d, InBallDistance { value: 2, exact: true });
    }

    #[test]
    fn distance_outside_ball_errors() {
        let b = ball("zd:2", 2);
        let far = Element::Abelian(vec![5, 5]);
        assert!(matches!(
            b.distance_in_ball(&b.group().identity(), &far),
            Err(Error::NotInBall(_))
        ));
    }

    #[test]
    fn geodesic_words_evaluate_back() {
        for spec in ["zd:2", "free:2", "lamplighter", "bs1n:2"] {
            let b = ball(spec, 4);
            for v in (0..b.len() as u32).step_by(7) {
                let w = b.word_to(v);
                assert_eq!(w.len() as u32, b.level(v));
                assert_eq!(&b.group().evaluate_word(&w), b.element(v));
            }
        }
    }

    #[test]
    fn left_decomposition_is_consistent() {
        for spec in ["zd:2", "free:2", "lamplighter", "bs1n:2"] {
            let b = ball(spec, 4);
            let g = b.group().clone();
            for v in 1..b.len() as u32 {
                let (s, u) = b.left_decomposition(v).unwrap();
                let rebuilt =
                    g.multiply(&g.generator_element(s), b.element(u));
                assert_eq!(&rebuilt, b.element(v));
                assert_eq!(b.level(u) + 1, b.level(v));
            }
        }
    }

    #[test]
    fn vertex_transitivity_spot_check() {
        let b = ball("lamplighter", 6);
        let g = b.group().clone();
        let inner = ball("lamplighter", 2);
        for v in (0..b.len() as u32).filter(|&v| b.level(v) + 2 <= 6).step_by(11) {
            let t = b.element(v).clone();
            for x in 0..inner.len() as u32 {
                let tx = g.multiply(&t, inner.element(x));
                assert!(b.contains(&tx));
                for &(y, _) in inner.neighbors(x) {
                    let ty = g.multiply(&t, inner.element(y));
                    let ti = b.index_of(&tx).unwrap();
                    assert!(b.neighbors(ti).iter().any(|&(w, _)| w == b.index_of(&ty).unwrap()));
                }
            }
        }
    }

    #[test]
    fn export_json_round_trips() {
        let b = ball("zd:2", 2);
        let s = export_graph(&b, GraphFormat::Json);
        let parsed: GraphJson = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed.n, b.len());
        assert_eq!(parsed.edges, ball_edges(&b));
        assert_eq!(parsed.levels.len(), b.len());
    }

    #[test]
    fn export_edge_counts() {
        assert_eq!(ball_edges(&ball("zd:2", 1)).len(), 4);
        assert_eq!(ball_edges(&ball("free:2", 1)).len(), 4);
    }

    proptest! {
        #[test]
        fn length_symmetry_and_triangle(seed in 0u64..500) {
            use rand::SeedableRng;
            let g = group_from_spec("lamplighter").unwrap();
            let b = build_ball(&g, 6, DEFAULT_VERTEX_CAP).unwrap();
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let wx = crate::groups::random_word(&g, &mut rng, 3);
            let wy = crate::groups::random_word(&g, &mut rng, 3);
            let x = g.evaluate_word(&wx);
            let y = g.evaluate_word(&wy);
            let lx = b.length_of(&x).unwrap();
            let ly = b.length_of(&y).unwrap();
            let lxinv = b.length_of(&g.invert(&x)).unwrap();
            prop_assert_eq!(lx, lxinv);
            let xy = g.multiply(&x, &y);
            if let Some(lxy) = b.length_of(&xy) {
                prop_assert!(lxy <= lx + ly);
            }
        }

        #[test]
        fn metric_is_left_invariant(seed in 0u64..200) {
            use rand::SeedableRng;
            let g = group_from_spec("free:2").unwrap();
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let x = g.evaluate_word(&crate::groups::random_word(&g, &mut rng, 4));
            let y = g.evaluate_word(&crate::groups::random_word(&g, &mut rng, 4));
            let t = g.evaluate_word(&crate::groups::random_word(&g, &mut rng, 4));
            let d = |a: &Element, b: &Element| {
                g.closed_form_length(&g.multiply(&g.invert(a), b)).unwrap()
            };
            prop_assert_eq!(d(&x, &y), d(&g.multiply(&t, &x), &g.multiply(&t, &y)));
        }
    }
}
