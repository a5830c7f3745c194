//! Search for point sets whose maximal support graph equals a target
//! forest, and certify that cyclic targets are unrealizable.
//!
//! Realized candidates are always re-verified exactly; the randomized
//! search only proposes. Cyclic targets are settled by an explicit cycle
//! obstruction on a sampled generic candidate: a cycle of supported edges
//! would force a strictly negative boundary integral whose exact edge sum
//! telescopes to zero, so no candidate can ever realize a cycle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclofield::{CycloElement, Rational};
use crate::error::{Error, Result};
use crate::pencil::{cycle_obstruction, genericity_check, max_support_graph, CycleObstruction};

/// A simple labeled graph used as a realization target. Vertices are
/// 0-based internally; the text format is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetGraph {
    pub vertex_count: usize,
    /// Normalized: a < b, sorted lexicographically, no duplicates.
    pub edges: Vec<(usize, usize)>,
}

impl TargetGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidTarget("need at least one vertex".into()));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidTarget(format!("self-loop at {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidTarget(format!("edge ({a}, {b}) out of range")));
            }
            let e = (a.min(b), a.max(b));
            if norm.contains(&e) {
                return Err(Error::InvalidTarget(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            norm.push(e);
        }
        norm.sort_unstable();
        Ok(TargetGraph { vertex_count, edges: norm })
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Some cycle as a vertex sequence, when the graph has one.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut state = vec![0u8; self.vertex_count]; // 0 new, 1 on stack, 2 done
        let mut stack: Vec<usize> = Vec::new();

        fn dfs(
            v: usize,
            parent: Option<usize>,
            adj: &[Vec<usize>],
            state: &mut [u8],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for &w in &adj[v] {
                if Some(w) == parent {
                    continue;
                }
                if state[w] == 1 {
                    let pos = stack.iter().position(|&u| u == w).expect("on stack");
                    return Some(stack[pos..].to_vec());
                }
                if state[w] == 0 {
                    if let Some(c) = dfs(w, Some(v), adj, state, stack) {
                        return Some(c);
                    }
                }
            }
            state[v] = 2;
            stack.pop();
            None
        }

        for v in 0..self.vertex_count {
            if state[v] == 0 {
                if let Some(c) = dfs(v, None, &adj, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    pub fn is_forest(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Parse the edge-list text format:
    /// `graph v=4` header, then `edge 1 2` lines (1-based), `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut v: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("graph") {
                let rest = rest.trim();
                let n = rest
                    .strip_prefix("v=")
                    .and_then(|s| s.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: "expected 'graph v=<count>'".into(),
                    })?;
                v = Some(n);
            } else if let Some(rest) = line.strip_prefix("edge") {
                let mut it = rest.split_whitespace();
                let a: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: "expected 'edge <a> <b>'".into(),
                    })?;
                let b: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: "expected 'edge <a> <b>'".into(),
                    })?;
                if a == 0 || b == 0 {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: "vertices are numbered from 1".into(),
                    });
                }
                edges.push((a - 1, b - 1));
            } else {
                return Err(Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: "expected 'graph', 'edge', or a comment".into(),
                });
            }
        }
        let v = v.ok_or(Error::InvalidTarget("missing 'graph v=' header".into()))?;
        TargetGraph::new(v, edges)
    }
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph v={}", self.vertex_count)?;
        for &(a, b) in &self.edges {
            writeln!(f, "edge {} {}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Forest enumeration up to isomorphism.
// ---------------------------------------------------------------------------

fn rooted_canon(adj: &[Vec<usize>], root: usize, parent: usize) -> String {
    let mut subs: Vec<String> = adj[root]
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| rooted_canon(adj, c, root))
        .collect();
    subs.sort();
    format!("({})", subs.concat())
}

/// Canonical string of a free tree via its center(s).
fn tree_canon(v: usize, edges: &[(usize, usize)]) -> String {
    if v == 1 {
        return "()".to_string();
    }
    let mut adj = vec![Vec::new(); v];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // Strip leaves layer by layer until one or two centers remain.
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; v];
    let mut remaining = v;
    let mut leaves: Vec<usize> = (0..v).filter(|&i| degree[i] == 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &leaf in &leaves {
            removed[leaf] = true;
            remaining -= 1;
            for &w in &adj[leaf] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    let centers: Vec<usize> = (0..v).filter(|&i| !removed[i]).collect();
    match centers[..] {
        [c] => rooted_canon(&adj, c, usize::MAX),
        [c1, c2] => {
            let s1 = rooted_canon(&adj, c1, c2);
            let s2 = rooted_canon(&adj, c2, c1);
            if s1 <= s2 {
                format!("[{s1}{s2}]")
            } else {
                format!("[{s2}{s1}]")
            }
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

fn prufer_decode(k: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; k];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &x in seq {
        let j = (0..k).find(|&j| degree[j] == 1).expect("a leaf exists");
        edges.push((j.min(x), j.max(x)));
        degree[j] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&j| degree[j] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// All unlabeled trees on k vertices, as canonical labeled representatives
/// sorted by canonical string.
fn trees_of_size(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 1 {
        return vec![Vec::new()];
    }
    let mut seen: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    let total = (k as u64).pow(k as u32 - 2);
    let mut seq = vec![0usize; k - 2];
    for code in 0..total {
        let mut c = code;
        for s in seq.iter_mut() {
            *s = (c % k as u64) as usize;
            c /= k as u64;
        }
        let edges = prufer_decode(k, &seq);
        let canon = tree_canon(k, &edges);
        seen.entry(canon).or_insert(edges);
    }
    seen.into_values().collect()
}

fn partitions_desc(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for rest in partitions_desc(n - first, first) {
            let mut p = vec![first];
            p.extend(rest);
            out.push(p);
        }
    }
    out
}

/// Multisets of `count` indices from 0..n, non-decreasing.
fn multisets(n: usize, count: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, count: usize, start: usize) -> Vec<Vec<usize>> {
        if count == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in start..n {
            for rest in rec(n, count - 1, i) {
                let mut m = vec![i];
                m.extend(rest);
                out.push(m);
            }
        }
        out
    }
    rec(n, count, 0)
}

/// All forests on v vertices up to isomorphism, in a deterministic order:
/// partitions of v into tree sizes (descending), trees per size in
/// canonical order.
pub fn enumerate_forests(v: usize) -> Result<Vec<TargetGraph>> {
    if v == 0 || v > 8 {
        return Err(Error::ForestOrderOutOfRange(v));
    }
    let trees_by_size: Vec<Vec<Vec<(usize, usize)>>> =
        (0..=v).map(|k| if k == 0 { Vec::new() } else { trees_of_size(k) }).collect();
    let mut out = Vec::new();
    for partition in partitions_desc(v, v) {
        // Group equal sizes into runs and pick a multiset of trees per run.
        let mut runs: Vec<(usize, usize)> = Vec::new(); // (size, multiplicity)
        for &s in &partition {
            match runs.last_mut() {
                Some((size, mult)) if *size == s => *mult += 1,
                _ => runs.push((s, 1)),
            }
        }
        let mut choices: Vec<Vec<Vec<usize>>> = Vec::new(); // per run: list of multisets
        for &(size, mult) in &runs {
            choices.push(multisets(trees_by_size[size].len(), mult));
        }
        // Cartesian product over runs.
        let mut combos: Vec<Vec<(usize, usize)>> = vec![Vec::new()]; // (size, tree index)
        for (run_idx, &(size, _)) in runs.iter().enumerate() {
            let mut next = Vec::new();
            for combo in &combos {
                for ms in &choices[run_idx] {
                    let mut c = combo.clone();
                    c.extend(ms.iter().map(|&t| (size, t)));
                    next.push(c);
                }
            }
            combos = next;
        }
        for combo in combos {
            let mut edges: Vec<(usize, usize)> = Vec::new();
            let mut offset = 0;
            for &(size, tree_idx) in &combo {
                for &(a, b) in &trees_by_size[size][tree_idx] {
                    edges.push((a + offset, b + offset));
                }
                offset += size;
            }
            out.push(TargetGraph::new(v, edges)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Realization search.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationStatus {
    Realized,
    BudgetExhausted,
    ProvablyUnrealizable,
}

#[derive(Debug, Clone)]
pub struct RealizationResult {
    pub status: RealizationStatus,
    /// The realizing points when realized; the sampled candidate when a
    /// cycle obstruction is reported.
    pub points: Option<Vec<(CycloElement, CycloElement)>>,
    pub witness: Option<CycleObstruction>,
    pub candidates_tried: u64,
}

/// Default candidate budget for the search.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Outcome of exact re-verification of a candidate against a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Pass,
    Fail(String),
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Pass)
    }
}

/// Exact check that the maximal support graph of `points` has exactly the
/// target's labeled edge set. Genericity failures verify as Fail with a
/// diagnostic rather than an error.
pub fn verify_realization(
    points: &[(CycloElement, CycloElement)],
    target: &TargetGraph,
) -> Verification {
    if points.len() != target.vertex_count {
        return Verification::Fail(format!(
            "expected {} points, got {}",
            target.vertex_count,
            points.len()
        ));
    }
    if let Err(e) = genericity_check(points) {
        return Verification::Fail(format!("genericity: {e}"));
    }
    let g = match max_support_graph(points) {
        Ok(g) => g,
        Err(e) => return Verification::Fail(format!("support graph: {e}")),
    };
    let got = g.edge_pairs();
    let mut got_sorted = got.clone();
    got_sorted.sort_unstable();
    if got_sorted == target.edges {
        Verification::Pass
    } else {
        Verification::Fail(format!(
            "edge sets differ: got {:?}, want {:?}",
            got_sorted, target.edges
        ))
    }
}

fn rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, dmax: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(lo..=hi)),
        BigInt::from(rng.gen_range(1..=dmax)),
    )
}

fn gaussian(re: &Rational, im: &Rational) -> CycloElement {
    let i = CycloElement::i(4).expect("order 4");
    &CycloElement::from_rational(4, re.clone()) + &i.scale(im)
}

fn random_ys(rng: &mut ChaCha8Rng, v: usize) -> Vec<(Rational, Rational)> {
    loop {
        let ys: Vec<(Rational, Rational)> = (0..v)
            .map(|_| (rat(rng, -8, 8, 3), rat(rng, -8, 8, 3)))
            .collect();
        let distinct = (0..v).all(|i| (0..i).all(|j| ys[i] != ys[j]));
        if distinct {
            return ys;
        }
    }
}

/// Heights so each target edge's zero-tilt interpolation stays below every
/// other point; local repair raises violated heights. With all imaginary
/// parts zero, the interpolation value at y_c is exactly the support
/// functional of the pair, so repairs directly target the inequalities.
fn heights_candidate(
    rng: &mut ChaCha8Rng,
    target: &TargetGraph,
    ys: &[(Rational, Rational)],
) -> Vec<(CycloElement, CycloElement)> {
    let v = ys.len();
    let mut r: Vec<Rational> = (0..v).map(|_| rat(rng, -4, 4, 2)).collect();
    for _round in 0..25 {
        let mut changed = false;
        for &(a, b) in &target.edges {
            let (ax, ay) = &ys[a];
            let (bx, by) = &ys[b];
            let den = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
            for c in 0..v {
                if c == a || c == b {
                    continue;
                }
                let (cx, cy) = &ys[c];
                let proj = ((cx - ax) * (bx - ax) + (cy - ay) * (by - ay)) / den.clone();
                let g = &r[a] + &((&r[b] - &r[a]) * proj);
                if g >= r[c] {
                    r[c] = &g + &(Rational::from(BigInt::from(1)) + rat(rng, 0, 3, 4));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..v)
        .map(|j| {
            let x = CycloElement::from_rational(4, r[j].clone());
            let y = gaussian(&ys[j].0, &ys[j].1);
            (x, y)
        })
        .collect()
}

fn radial_candidate(
    rng: &mut ChaCha8Rng,
    ys: &[(Rational, Rational)],
) -> Vec<(CycloElement, CycloElement)> {
    let rho = rat(rng, 1, 3, 2);
    ys.iter()
        .map(|(yr, yi)| {
            let y = gaussian(yr, yi);
            let nr = rat(rng, -2, 2, 3);
            let ni = rat(rng, -2, 2, 3);
            let x = &y.conj().scale(&rho) + &gaussian(&nr, &ni);
            (x, y)
        })
        .collect()
}

fn random_candidate(
    rng: &mut ChaCha8Rng,
    ys: &[(Rational, Rational)],
) -> Vec<(CycloElement, CycloElement)> {
    ys.iter()
        .map(|(yr, yi)| {
            let y = gaussian(yr, yi);
            let xr = rat(rng, -8, 8, 3);
            let xi = rat(rng, -8, 8, 3);
            (gaussian(&xr, &xi), y)
        })
        .collect()
}

fn sample_generic(rng: &mut ChaCha8Rng, v: usize) -> Vec<(CycloElement, CycloElement)> {
    loop {
        let ys = random_ys(rng, v);
        let pts = random_candidate(rng, &ys);
        if genericity_check(&pts).is_ok() {
            return pts;
        }
    }
}

/// Randomized search for a point set realizing the target, deterministic
/// in the seed. Cyclic targets return `ProvablyUnrealizable` with an exact
/// cycle obstruction on a sampled generic candidate; forests that the
/// search cannot hit within the budget return `BudgetExhausted` (a value,
/// not an error).
pub fn realize(target: &TargetGraph, budget: u64, seed: u64) -> Result<RealizationResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(cycle) = target.find_cycle() {
        let points = sample_generic(&mut rng, target.vertex_count);
        let witness = cycle_obstruction(&points, &cycle)?;
        return Ok(RealizationResult {
            status: RealizationStatus::ProvablyUnrealizable,
            points: Some(points),
            witness: Some(witness),
            candidates_tried: 1,
        });
    }
    for tried in 0..budget {
        let ys = random_ys(&mut rng, target.vertex_count);
        let points = match tried % 3 {
            0 => heights_candidate(&mut rng, target, &ys),
            1 => radial_candidate(&mut rng, &ys),
            _ => random_candidate(&mut rng, &ys),
        };
        if verify_realization(&points, target).passed() {
            return Ok(RealizationResult {
                status: RealizationStatus::Realized,
                points: Some(points),
                witness: None,
                candidates_tried: tried + 1,
            });
        }
    }
    Ok(RealizationResult {
        status: RealizationStatus::BudgetExhausted,
        points: None,
        witness: None,
        candidates_tried: budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tg(v: usize, edges: &[(usize, usize)]) -> TargetGraph {
        TargetGraph::new(v, edges.to_vec()).unwrap()
    }

    #[test]
    fn forest_counts_match_oeis() {
        // Forests on n unlabeled vertices: 1, 2, 3, 6, 10, 20.
        let expect = [1usize, 2, 3, 6, 10, 20];
        for (v, &want) in (1..=6).zip(&expect) {
            assert_eq!(enumerate_forests(v).unwrap().len(), want, "v={v}");
        }
        assert!(enumerate_forests(0).is_err());
        assert!(enumerate_forests(9).is_err());
    }

    #[test]
    fn forests_on_three_vertices() {
        let fs = enumerate_forests(3).unwrap();
        let mut edge_counts: Vec<usize> = fs.iter().map(|f| f.edges.len()).collect();
        edge_counts.sort_unstable();
        assert_eq!(edge_counts, vec![0, 1, 2]);
    }

    #[test]
    fn forests_on_four_vertices_include_star_and_path() {
        let fs = enumerate_forests(4).unwrap();
        let degree_seqs: Vec<Vec<usize>> = fs
            .iter()
            .map(|f| {
                let mut d = vec![0usize; 4];
                for &(a, b) in &f.edges {
                    d[a] += 1;
                    d[b] += 1;
                }
                d.sort_unstable();
                d
            })
            .collect();
        assert!(degree_seqs.contains(&vec![1, 1, 1, 3]), "star");
        assert!(degree_seqs.contains(&vec![1, 1, 2, 2]), "path");
        assert!(degree_seqs.contains(&vec![0, 0, 0, 0]), "empty");
        assert!(degree_seqs.contains(&vec![1, 1, 1, 1]), "2-matching");
    }

    #[test]
    fn target_text_roundtrip() {
        let t = tg(4, &[(0, 1), (1, 2)]);
        let text = t.to_string();
        assert_eq!(text, "graph v=4\nedge 1 2\nedge 2 3\n");
        assert_eq!(TargetGraph::parse(&text).unwrap(), t);
        assert!(TargetGraph::parse("edge 1 2\n").is_err());
        assert!(TargetGraph::parse("graph v=2\nedge 0 1\n").is_err());
        assert!(TargetGraph::new(3, vec![(0, 0)]).is_err());
        assert!(TargetGraph::new(3, vec![(0, 5)]).is_err());
    }

    #[test]
    fn cycle_detection() {
        assert!(tg(3, &[(0, 1), (1, 2)]).is_forest());
        let c3 = tg(3, &[(0, 1), (1, 2), (0, 2)]);
        let cyc = c3.find_cycle().unwrap();
        assert_eq!(cyc.len(), 3);
    }

    #[test]
    fn single_edge_realizes_immediately() {
        let t = tg(2, &[(0, 1)]);
        let r = realize(&t, 100, 0).unwrap();
        assert_eq!(r.status, RealizationStatus::Realized);
        let pts = r.points.unwrap();
        assert!(verify_realization(&pts, &t).passed());
    }

    #[test]
    fn path_p3_realizes_and_is_deterministic() {
        let t = tg(3, &[(0, 1), (1, 2)]);
        let r1 = realize(&t, 50_000, 1).unwrap();
        assert_eq!(r1.status, RealizationStatus::Realized);
        let r2 = realize(&t, 50_000, 1).unwrap();
        assert_eq!(r1.points, r2.points);
        assert_eq!(r1.candidates_tried, r2.candidates_tried);
        let r3 = realize(&t, 50_000, 99).unwrap();
        assert_eq!(r3.status, RealizationStatus::Realized);
    }

    #[test]
    fn triangle_is_provably_unrealizable() {
        let c3 = tg(3, &[(0, 1), (1, 2), (0, 2)]);
        let r = realize(&c3, 100, 7).unwrap();
        assert_eq!(r.status, RealizationStatus::ProvablyUnrealizable);
        let w = r.witness.unwrap();
        // The witness is checkable against the sampled points: the edge's
        // line is not supported at the vertex.
        let pts = r.points.unwrap();
        let (k, d) =
            crate::pencil::graph::line_through(&pts[w.edge.0], &pts[w.edge.1]).unwrap();
        let v = &(&pts[w.vertex].0 + &(&k * &pts[w.vertex].1)) - &d;
        let s = (&v + &v.conj()).sign_real().unwrap();
        assert!(s < 0 || (s == 0 && !v.is_zero()));
    }

    #[test]
    fn cyclic_targets_never_realize() {
        for v in 3..=4usize {
            let mut edges: Vec<(usize, usize)> = (0..v).map(|i| (i, (i + 1) % v)).collect();
            edges.sort_unstable();
            let t = TargetGraph::new(v, edges).unwrap();
            let r = realize(&t, 1000, 3).unwrap();
            assert_eq!(r.status, RealizationStatus::ProvablyUnrealizable);
            assert!(r.witness.is_some());
        }
    }

    #[test]
    fn verification_rejects_wrong_targets() {
        let t = tg(2, &[(0, 1)]);
        let empty2 = tg(2, &[]);
        let r = realize(&t, 100, 0).unwrap();
        let pts = r.points.unwrap();
        // Two generic points always support their edge, so they never
        // verify against the empty 2-vertex target.
        assert!(!verify_realization(&pts, &empty2).passed());
        assert!(!verify_realization(&pts[..1], &t).passed());
    }
}
