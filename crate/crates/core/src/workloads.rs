//! Seeded insertion workloads and edge-stream generators.

use std::collections::{HashMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::order::{Anchor, ElementHandle, LabelError, Labeler, MoveStats};
use crate::outerplanar_draw::Side;
use crate::stream::{Mode, Stream, StreamEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Workload {
    /// Uniform anchor, uniform side.
    Random,
    /// Always after the latest element.
    Sequential,
    /// Always right after the first element.
    HotSpot,
}

impl Workload {
    pub const ALL: [Workload; 3] = [Workload::Random, Workload::Sequential, Workload::HotSpot];
}

/// One insertion relative to the `i`-th inserted element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorkOp {
    After(usize),
    Before(usize),
}

/// `n - 1` ops; the first element is implicit.
pub fn workload_ops(kind: Workload, n: usize, seed: u64) -> Vec<WorkOp> {
    let mut rng = StdRng::seed_from_u64(seed);
    (1..n)
        .map(|i| match kind {
            Workload::Random => {
                let j = rng.gen_range(0..i);
                if rng.gen_bool(0.5) {
                    WorkOp::After(j)
                } else {
                    WorkOp::Before(j)
                }
            }
            Workload::Sequential => WorkOp::After(i - 1),
            Workload::HotSpot => WorkOp::After(0),
        })
        .collect()
}

/// Runs `ops` and returns the handles in insertion order with move stats.
pub fn run_workload(l: &mut dyn Labeler, ops: &[WorkOp]) -> Result<(Vec<ElementHandle>, MoveStats), LabelError> {
    let mut stats = MoveStats::default();
    let r = l.insert_first()?;
    stats.record(&r, l.max_label().unwrap_or(0));
    let mut hs = vec![r.handle];
    for op in ops {
        let anchor = match *op {
            WorkOp::After(i) => Anchor::After(hs[i]),
            WorkOp::Before(i) => Anchor::Before(hs[i]),
        };
        let r = l.insert(anchor)?;
        stats.record(&r, l.max_label().unwrap_or(0));
        hs.push(r.handle);
    }
    Ok((hs, stats))
}

/// Insertion indices in list order, from a doubly linked list.
pub fn reference_order(ops: &[WorkOp]) -> Vec<usize> {
    const NIL: usize = usize::MAX;
    let n = ops.len() + 1;
    let (mut next, mut prev) = (vec![NIL; n], vec![NIL; n]);
    let mut head = 0;
    for (k, op) in ops.iter().enumerate() {
        let x = k + 1;
        match *op {
            WorkOp::After(i) => {
                (prev[x], next[x]) = (i, next[i]);
                if next[i] != NIL {
                    prev[next[i]] = x;
                }
                next[i] = x;
            }
            WorkOp::Before(i) => {
                (prev[x], next[x]) = (prev[i], i);
                if prev[i] != NIL {
                    next[prev[i]] = x;
                } else {
                    head = x;
                }
                prev[i] = x;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut cur = head;
    while cur != NIL {
        out.push(cur);
        cur = next[cur];
    }
    out
}

fn name(i: usize) -> String {
    format!("v{i}")
}

/// A random rooted tree: each new vertex hangs off a uniform earlier one at
/// a uniform child index.
pub fn random_tree_stream(mode: Mode, n: usize, seed: u64) -> Stream {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut kids = vec![0usize; n];
    let mut events = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let p = rng.gen_range(0..i);
        let pos = rng.gen_range(0..=kids[p]);
        kids[p] += 1;
        events.push(StreamEvent::new(name(p), name(i), pos, 0));
    }
    Stream { mode, events }
}

/// A random triangulation of the convex `n`-gon `0..n`, as edges.
pub fn random_triangulation(n: usize, rng: &mut StdRng) -> Vec<(usize, usize)> {
    assert!(n >= 3);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut todo = vec![(0..n).collect::<Vec<usize>>()];
    while let Some(poly) = todo.pop() {
        let k = poly.len();
        if k <= 3 {
            continue;
        }
        let i = rng.gen_range(0..k);
        let j = (i + rng.gen_range(2..k - 1)) % k;
        let (a, b) = (i.min(j), i.max(j));
        edges.push((poly[a], poly[b]));
        todo.push(poly[a..=b].to_vec());
        todo.push(poly[b..].iter().chain(&poly[..=a]).copied().collect());
    }
    edges
}

/// Replays `order` against final clockwise rotations, giving each new
/// neighbour the index after its nearest present predecessor.
pub fn rotation_events(order: &[(usize, usize)], rot: &[Vec<usize>]) -> Vec<StreamEvent> {
    let mut cur: Vec<Vec<usize>> = vec![Vec::new(); rot.len()];
    let mut out = Vec::with_capacity(order.len());
    let pos_for = |cur: &[Vec<usize>], v: usize, w: usize| -> usize {
        let fin = &rot[v];
        let k = fin.iter().position(|&x| x == w).expect("edge in final rotation");
        (1..fin.len())
            .map(|d| fin[(k + fin.len() - d) % fin.len()])
            .find_map(|x| cur[v].iter().position(|&y| y == x))
            .map_or(0, |i| i + 1)
    };
    for &(u, v) in order {
        let (pu, pv) = (pos_for(&cur, u, v), pos_for(&cur, v, u));
        cur[u].insert(pu, v);
        cur[v].insert(pv, u);
        out.push(StreamEvent::new(name(u), name(v), pu, pv));
    }
    out
}

/// Clockwise rotations for a graph drawn on a circle in clockwise order `0..n`.
pub fn circle_rotations(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut rot = vec![Vec::new(); n];
    for &(a, b) in edges {
        rot[a].push(b);
        rot[b].push(a);
    }
    for (v, r) in rot.iter_mut().enumerate() {
        r.sort_by_key(|&w| (w + n - v) % n);
    }
    rot
}

/// Shuffles `edges` so every prefix is connected.
pub fn connected_order(n: usize, edges: &[(usize, usize)], rng: &mut StdRng) -> Vec<(usize, usize)> {
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        inc[a].push(i);
        inc[b].push(i);
    }
    let mut seen = vec![false; n];
    let mut used = vec![false; edges.len()];
    let mut frontier = vec![rng.gen_range(0..edges.len())];
    let mut out = Vec::with_capacity(edges.len());
    while !frontier.is_empty() {
        let e = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        if used[e] {
            continue;
        }
        used[e] = true;
        out.push(edges[e]);
        for v in [edges[e].0, edges[e].1] {
            if !seen[v] {
                seen[v] = true;
                frontier.extend(inc[v].iter().filter(|&&f| !used[f]));
            }
        }
    }
    out
}

/// Events for `order` on a graph drawn on a circle in clockwise order `0..n`.
/// Edges between two drawn vertices carry a side hint naming some other
/// drawn vertex and the arc it ends on.
pub fn circle_events(n: usize, order: &[(usize, usize)], rot: &[Vec<usize>]) -> Vec<StreamEvent> {
    let mut events = rotation_events(order, rot);
    let mut present: Vec<usize> = Vec::new();
    let mut known = HashSet::new();
    for (e, &(p, q)) in events.iter_mut().zip(order) {
        if known.contains(&p) && known.contains(&q) {
            if let Some(&r) = present.iter().find(|&&r| r != p && r != q) {
                let side = if (r + n - p) % n < (q + n - p) % n { Side::Left } else { Side::Right };
                *e = e.clone().with_hint(name(r), side);
            }
        }
        for v in [p, q] {
            if known.insert(v) {
                present.push(v);
            }
        }
    }
    events
}

/// A random maximal outerplanar graph on `n` vertices, streamed in a
/// connected random order.
pub fn random_outerplanar_stream(n: usize, seed: u64) -> Stream {
    let mut rng = StdRng::seed_from_u64(seed);
    let edges = random_triangulation(n, &mut rng);
    let order = connected_order(n, &edges, &mut rng);
    let rot = circle_rotations(n, &edges);
    Stream { mode: Mode::Outerplanar, events: circle_events(n, &order, &rot) }
}

/// Degree of every vertex name in a stream.
pub fn degrees(s: &Stream) -> HashMap<String, usize> {
    let mut d = HashMap::new();
    for e in &s.events {
        *d.entry(e.u.clone()).or_default() += 1;
        *d.entry(e.v.clone()).or_default() += 1;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OracleLabeler;

    #[test]
    fn reference_matches_oracle_on_random_ops() {
        let ops = workload_ops(Workload::Random, 300, 7);
        let mut o = OracleLabeler::new();
        let (hs, _) = run_workload(&mut o, &ops).unwrap();
        let got: Vec<usize> =
            o.order().iter().map(|h| hs.iter().position(|x| x == h).unwrap()).collect();
        assert_eq!(got, reference_order(&ops));
    }

    #[test]
    fn linked_list_matches_vector_splicing() {
        let ops = workload_ops(Workload::Random, 500, 11);
        let mut list = vec![0usize];
        for (k, op) in ops.iter().enumerate() {
            let (i, off) = match *op {
                WorkOp::After(i) => (i, 1),
                WorkOp::Before(i) => (i, 0),
            };
            let p = list.iter().position(|&x| x == i).unwrap() + off;
            list.insert(p, k + 1);
        }
        assert_eq!(reference_order(&ops), list);
    }

    #[test]
    fn triangulation_has_two_n_minus_three_edges() {
        let mut rng = StdRng::seed_from_u64(3);
        for n in 3..40 {
            let e = random_triangulation(n, &mut rng);
            assert_eq!(e.len(), 2 * n - 3);
            let set: HashSet<(usize, usize)> = e.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            assert_eq!(set.len(), e.len());
        }
    }

    #[test]
    fn connected_order_keeps_prefixes_connected() {
        let mut rng = StdRng::seed_from_u64(5);
        let e = random_triangulation(30, &mut rng);
        let order = connected_order(30, &e, &mut rng);
        assert_eq!(order.len(), e.len());
        let mut seen: HashSet<usize> = [order[0].0, order[0].1].into();
        for &(a, b) in &order[1..] {
            assert!(seen.contains(&a) || seen.contains(&b));
            seen.insert(a);
            seen.insert(b);
        }
    }

    #[test]
    fn tree_streams_are_deterministic() {
        assert_eq!(random_tree_stream(Mode::Tree, 50, 1), random_tree_stream(Mode::Tree, 50, 1));
        assert_ne!(random_tree_stream(Mode::Tree, 50, 1), random_tree_stream(Mode::Tree, 50, 2));
    }
}
