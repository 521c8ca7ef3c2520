//! Fischer covers of both families, presentation checks, the minimal
//! right-resolving factor `M_G` and small-graph isomorphism.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::beta::{require_valid, ParrySeq};
use crate::error::{Error, Result};
use crate::gaps::{GapSet, Increments};

/// Adjacency counts: `m[i][j]` edges from `i` to `j`.
pub type AdjMatrix = Vec<Vec<u32>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: u8,
}

/// Directed multigraph with edge labels in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    #[serde(rename = "vertices")]
    names: Vec<String>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(names: Vec<String>, mut edges: Vec<Edge>) -> Result<Self> {
        let n = names.len();
        if let Some(e) = edges
            .iter()
            .find(|e| e.from >= n || e.to >= n || e.label > 1)
        {
            return Err(Error::Invalid(format!("bad edge {e:?}")));
        }
        edges.sort();
        Ok(LabeledGraph { names, edges })
    }

    /// Vertices named `v0, v1, …`.
    pub fn unnamed(n: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::new((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == v)
    }

    pub fn underlying(&self) -> AdjMatrix {
        let n = self.vertex_count();
        let mut m = vec![vec![0; n]; n];
        for e in &self.edges {
            m[e.from][e.to] += 1;
        }
        m
    }

    /// Per-label adjacency counts `[zeros, ones]`.
    pub fn labeled_matrix(&self) -> Vec<Vec<[u32; 2]>> {
        let n = self.vertex_count();
        let mut m = vec![vec![[0; 2]; n]; n];
        for e in &self.edges {
            m[e.from][e.to][e.label as usize] += 1;
        }
        m
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cover {\n  rankdir=LR;\n");
        for name in &self.names {
            let _ = writeln!(out, "  \"{name}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.names[e.from], self.names[e.to], e.label
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let g: LabeledGraph =
            serde_json::from_value(value.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        LabeledGraph::new(g.names, g.edges)
    }
}

fn gap_vertex_name(m: usize) -> String {
    match m {
        0 => "F1".into(),
        1 => "F10".into(),
        _ => format!("F10^{m}"),
    }
}

/// Which of the case formulas for the vertex count of an infinite sofic
/// gap set applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverCase {
    #[serde(rename = "1a")]
    OneA,
    #[serde(rename = "1b")]
    OneB,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
}

/// Fischer cover of `X(S)` with the outcome of the case-formula cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCover {
    pub graph: LabeledGraph,
    pub case: Option<CoverCase>,
    /// Vertex count `n(S) + 1` predicted by the case formulas.
    pub predicted_vertices: Option<usize>,
    pub warnings: Vec<String>,
}

impl GapCover {
    /// `n(S)`: index of the last vertex `F(10^{n(S)})`.
    pub fn n(&self) -> usize {
        self.graph.vertex_count() - 1
    }
}

/// Fischer cover of `X(S)` built from follower sets: vertex `m` stands for
/// `F(10^m)`, determined by `{e ≥ 0 : m + e ∈ S}`.
pub fn fischer_gap(s: &GapSet, horizon: Option<usize>) -> Result<GapCover> {
    if s.len().is_some_and(|n| n < 2) {
        return Err(Error::TooSmall);
    }
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    let vertex_count = match s.increments() {
        Increments::Finite(_) => {
            let max = s.max().unwrap();
            for m in 0..=max {
                if m < max {
                    edges.push(Edge {
                        from: m,
                        to: m + 1,
                        label: 0,
                    });
                }
                if s.contains(m) == Some(true) {
                    edges.push(Edge {
                        from: m,
                        to: 0,
                        label: 1,
                    });
                }
            }
            max + 1
        }
        Increments::Periodic(_) => {
            let ind = s.indicator().unwrap();
            let mut seen = HashMap::new();
            seen.insert(ind.clone(), 0usize);
            let mut m = 0;
            loop {
                if ind.letter(m) == 1 {
                    edges.push(Edge {
                        from: m,
                        to: 0,
                        label: 1,
                    });
                }
                let next = ind.shift(m + 1);
                match seen.get(&next) {
                    Some(&j) => {
                        edges.push(Edge {
                            from: m,
                            to: j,
                            label: 0,
                        });
                        break m + 1;
                    }
                    None => {
                        seen.insert(next, m + 1);
                        edges.push(Edge {
                            from: m,
                            to: m + 1,
                            label: 0,
                        });
                        m += 1;
                    }
                }
            }
        }
        Increments::Truncated { horizon: known, .. } => {
            let n = horizon.ok_or(Error::HorizonRequired)?;
            if n > *known {
                return Err(Error::HorizonTooSmall {
                    horizon: *known,
                    needed: n,
                });
            }
            for m in 0..n {
                if m + 1 < n {
                    edges.push(Edge {
                        from: m,
                        to: m + 1,
                        label: 0,
                    });
                }
                if s.contains(m) == Some(true) {
                    edges.push(Edge {
                        from: m,
                        to: 0,
                        label: 1,
                    });
                }
            }
            warnings.push(format!("cover truncated to the first {n} vertices"));
            n
        }
    };
    let names = (0..vertex_count).map(gap_vertex_name).collect();
    let graph = LabeledGraph::new(names, edges)?;
    let (case, predicted_vertices) = match case_prediction(s) {
        Some((case, n)) => (Some(case), Some(n + 1)),
        None => (None, None),
    };
    if let (Some(case), Some(pred)) = (case, predicted_vertices) {
        if pred != vertex_count {
            warnings.push(format!(
                "case ({}) predicts {pred} vertices, follower sets give {vertex_count}",
                case_name(case)
            ));
        } else {
            check_last_vertex(s, &graph, case, &mut warnings);
        }
    }
    Ok(GapCover {
        graph,
        case,
        predicted_vertices,
        warnings,
    })
}

fn case_name(c: CoverCase) -> &'static str {
    match c {
        CoverCase::OneA => "1a",
        CoverCase::OneB => "1b",
        CoverCase::Two => "2",
        CoverCase::Three => "3",
    }
}

/// Case and `n(S)` from the case formulas, for infinite sofic gap sets.
pub fn case_prediction(s: &GapSet) -> Option<(CoverCase, usize)> {
    let sh = s.delta_shape()?;
    let el = |i: usize| s.element(i).unwrap();
    let s0 = s.d0();
    Some(if sh.k == 1 && sh.g_last > s0 {
        if sh.g_last == s0 + 1 {
            (CoverCase::OneA, el(sh.l - 1))
        } else {
            (CoverCase::OneB, sh.g - 1)
        }
    } else if sh.k != 1 && sh.g_last > sh.d_last {
        (CoverCase::Two, sh.g + el(sh.k - 2))
    } else {
        (CoverCase::Three, el(sh.k + sh.l - 2))
    })
}

/// Compares the out-edges of the last vertex with what the case formulas
/// describe.
fn check_last_vertex(s: &GapSet, g: &LabeledGraph, case: CoverCase, warnings: &mut Vec<String>) {
    let last = g.vertex_count() - 1;
    let mut actual: Vec<(usize, u8)> = g.out_edges(last).map(|e| (e.to, e.label)).collect();
    actual.sort();
    let sh = s.delta_shape().unwrap();
    let el = |i: usize| s.element(i).unwrap();
    let mut expected = match case {
        CoverCase::OneA => vec![(0, 0), (0, 1)],
        CoverCase::OneB => vec![(0, 0)],
        CoverCase::Two => vec![(el(sh.k - 2) + 1, 0), (0, 1)],
        CoverCase::Three => vec![(el(sh.k - 1) - sh.g_last + 1, 0), (0, 1)],
    };
    expected.sort();
    if actual != expected {
        let show = |v: &[(usize, u8)]| {
            v.iter()
                .map(|(t, l)| format!("{}:{l}", gap_vertex_name(*t)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        warnings.push(format!(
            "case ({}) describes out-edges [{}] at {}, follower sets give [{}]",
            case_name(case),
            show(&expected),
            gap_vertex_name(last),
            show(&actual)
        ));
    }
}

/// Fischer cover of `X_β`: vertices `a1 … aN` on a ray with back edges to
/// `a1` labeled 0 wherever `a_i = 1`.
pub fn fischer_beta(s: &ParrySeq, horizon: Option<usize>) -> Result<LabeledGraph> {
    require_valid(s)?;
    let (n_vertices, terminal): (usize, Option<(usize, u8)>) = match s {
        ParrySeq::Finite(d) => (d.len(), None),
        ParrySeq::Periodic(w) => {
            let n = w.pre().len();
            let total = n + w.period().len();
            (total, Some((n, w.letter(total - 1) as u8)))
        }
        ParrySeq::Truncated { prefix } => {
            let h = horizon.ok_or(Error::HorizonRequired)?;
            if h > prefix.len() {
                return Err(Error::HorizonTooSmall {
                    horizon: prefix.len(),
                    needed: h,
                });
            }
            (h, None)
        }
    };
    let mut edges = Vec::new();
    for i in 1..=n_vertices {
        let a = s.digit(i).unwrap() as u8;
        let v = i - 1;
        if i < n_vertices {
            edges.push(Edge {
                from: v,
                to: v + 1,
                label: a,
            });
        } else if let Some((target, label)) = terminal {
            edges.push(Edge {
                from: v,
                to: target,
                label,
            });
        }
        if a == 1 {
            edges.push(Edge {
                from: v,
                to: 0,
                label: 0,
            });
        }
    }
    let names = (1..=n_vertices).map(|i| format!("a{i}")).collect();
    LabeledGraph::new(names, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PresentationFlags {
    pub right_resolving: bool,
    pub irreducible: bool,
    pub follower_separated: bool,
}

pub fn check_presentation(g: &LabeledGraph) -> PresentationFlags {
    let n = g.vertex_count();
    let right_resolving = (0..n).all(|v| {
        let labels: Vec<u8> = g.out_edges(v).map(|e| e.label).collect();
        labels.iter().filter(|&&l| l == 0).count() <= 1
            && labels.iter().filter(|&&l| l == 1).count() <= 1
    });
    let follower_separated = refine(n, |v, block| {
        let mut sig: Vec<(u8, usize)> = g.out_edges(v).map(|e| (e.label, block[e.to])).collect();
        sig.sort();
        sig.dedup();
        sig
    })
    .iter()
    .all(|b| b.len() == 1);
    PresentationFlags {
        right_resolving,
        irreducible: strongly_connected(&g.underlying()),
        follower_separated,
    }
}

pub fn strongly_connected(m: &AdjMatrix) -> bool {
    let n = m.len();
    if n == 0 {
        return false;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                let e = if forward { m[v][u] } else { m[u][v] };
                if e > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Coarsest partition stable under `signature`, starting from one block.
/// Blocks are listed in order of their smallest vertex.
fn refine<S: Ord>(n: usize, signature: impl Fn(usize, &[usize]) -> S) -> Vec<Vec<usize>> {
    let mut block = vec![0usize; n];
    let mut count = usize::from(n > 0);
    loop {
        let mut ids: BTreeMap<(usize, S), usize> = BTreeMap::new();
        let keys: Vec<(usize, S)> = (0..n).map(|v| (block[v], signature(v, &block))).collect();
        let mut next = vec![0; n];
        let mut order = Vec::new();
        for (v, key) in keys.into_iter().enumerate() {
            let fresh = ids.len();
            let id = *ids.entry(key).or_insert(fresh);
            if id == order.len() {
                order.push(id);
            }
            next[v] = id;
        }
        let new_count = ids.len();
        block = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        blocks[block[v]].push(v);
    }
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Partition of the vertex set into non-empty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&v))
            .expect("vertex in partition")
    }

    pub fn equal_sized(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinFactor {
    pub partition: Partition,
    /// Edge counts of `M_G` between blocks.
    pub quotient: AdjMatrix,
}

/// `M_G` by refining on per-block edge counts until the partition is stable.
pub fn min_factor_matrix(m: &AdjMatrix) -> MinFactor {
    let n = m.len();
    let blocks = refine(n, |v, block| {
        let mut counts = BTreeMap::new();
        for (u, &c) in m[v].iter().enumerate() {
            if c > 0 {
                *counts.entry(block[u]).or_insert(0u32) += c;
            }
        }
        counts.into_iter().collect::<Vec<_>>()
    });
    let partition = Partition { blocks };
    let k = partition.blocks.len();
    let mut quotient = vec![vec![0; k]; k];
    for (p, block) in partition.blocks.iter().enumerate() {
        for (u, &c) in m[block[0]].iter().enumerate() {
            quotient[p][partition.block_of(u)] += c;
        }
    }
    MinFactor {
        partition,
        quotient,
    }
}

pub fn min_factor(g: &LabeledGraph) -> MinFactor {
    min_factor_matrix(&g.underlying())
}

pub const MAX_ISO_VERTICES: usize = 64;

/// Bijection `f` with `g[i][j] = h[f(i)][f(j)]` for all `i, j`, if any.
pub fn graph_iso(g: &AdjMatrix, h: &AdjMatrix) -> Result<Option<Vec<usize>>> {
    iso_generic(g, h)
}

/// Isomorphism preserving labels and multiplicities.
pub fn labeled_iso(g: &LabeledGraph, h: &LabeledGraph) -> Result<Option<Vec<usize>>> {
    iso_generic(&g.labeled_matrix(), &h.labeled_matrix())
}

fn iso_generic<T: Copy + Ord + Default>(g: &[Vec<T>], h: &[Vec<T>]) -> Result<Option<Vec<usize>>> {
    let n = g.len();
    if n > MAX_ISO_VERTICES || h.len() > MAX_ISO_VERTICES {
        return Err(Error::TooLarge(n.max(h.len())));
    }
    if n != h.len() {
        return Ok(None);
    }
    // Joint colour refinement on the disjoint union so colours are comparable.
    let entry = |v: usize, u: usize| -> T {
        if v < n {
            g[v][u]
        } else {
            h[v - n][u - n]
        }
    };
    let side = |v: usize| if v < n { 0..n } else { n..2 * n };
    let zero = T::default();
    let mut colour = vec![0usize; 2 * n];
    let mut count = 1;
    loop {
        let mut ids = BTreeMap::new();
        let sigs: Vec<_> = (0..2 * n)
            .map(|v| {
                let mut out: Vec<(T, usize)> = side(v)
                    .filter(|&u| entry(v, u) != zero)
                    .map(|u| (entry(v, u), colour[u]))
                    .collect();
                let mut inc: Vec<(T, usize)> = side(v)
                    .filter(|&u| entry(u, v) != zero)
                    .map(|u| (entry(u, v), colour[u]))
                    .collect();
                out.sort();
                inc.sort();
                (colour[v], entry(v, v), out, inc)
            })
            .collect();
        for s in &sigs {
            let fresh = ids.len();
            ids.entry(s.clone()).or_insert(fresh);
        }
        colour = sigs.iter().map(|s| ids[s]).collect();
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }
    let mut hist_g: Vec<usize> = colour[..n].to_vec();
    let mut hist_h: Vec<usize> = colour[n..].to_vec();
    hist_g.sort();
    hist_h.sort();
    if hist_g != hist_h {
        return Ok(None);
    }
    let class_size = |c: usize| colour[..n].iter().filter(|&&x| x == c).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size(colour[v]), v));

    fn search<T: Copy + Eq>(
        depth: usize,
        order: &[usize],
        g: &[Vec<T>],
        h: &[Vec<T>],
        colour: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = g.len();
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for w in 0..n {
            if used[w] || colour[v] != colour[n + w] || g[v][v] != h[w][w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let x = map[u].unwrap();
                g[v][u] == h[w][x] && g[u][v] == h[x][w]
            });
            if !consistent {
                continue;
            }
            map[v] = Some(w);
            used[w] = true;
            if search(depth + 1, order, g, h, colour, map, used) {
                return true;
            }
            map[v] = None;
            used[w] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    Ok(search(0, &order, g, h, &colour, &mut map, &mut used)
        .then(|| map.into_iter().map(Option::unwrap).collect()))
}

/// Relabels a β-shift cover: edges into `a1` get 1, all others 0. Of two
/// parallel edges into `a1` (β = 2) one keeps label 0.
pub fn relabel_to_gap(g: &LabeledGraph) -> Result<LabeledGraph> {
    if g.names().first().map(String::as_str) != Some("a1") {
        return Err(Error::NoDistinguishedVertex);
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut edges = Vec::with_capacity(g.edges().len());
    for e in g.edges() {
        let one = e.to == 0 && !seen[e.from];
        if e.to == 0 {
            seen[e.from] = true;
        }
        edges.push(Edge {
            label: u8::from(one),
            ..*e
        });
    }
    LabeledGraph::new(g.names().to_vec(), edges)
}
