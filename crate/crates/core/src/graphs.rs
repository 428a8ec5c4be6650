//! Finite simple graphs on vertices `1..=n`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph. Edges are stored as sorted pairs `(u, v)` with
/// `u < v`, in lexicographic order; the position of an edge in that order is
/// its edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

/// Two-coloring of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub class_a: BTreeSet<usize>,
    pub class_b: BTreeSet<usize>,
}

/// Line graph together with the edge of the original graph behind each of
/// its vertices (`edge_map[i]` is vertex `i + 1`).
#[derive(Clone, Debug)]
pub struct LineGraph {
    pub graph: Graph,
    pub edge_map: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} outside vertex range 1..={n}"
                )));
            }
            let (a, b) = (u.min(v), u.max(v));
            if !adj[a - 1].insert(b) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{a}, {b}}}")));
            }
            adj[b - 1].insert(a);
            list.push((a, b));
        }
        list.sort_unstable();
        Ok(Self {
            n,
            edges: list,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("empty graph")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)))).expect("clique")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|u| (u, u + 1))).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::new(n, (1..n).map(|u| (u, u + 1)).chain([(1, n)])).expect("cycle")
    }

    /// Star with center 1 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v))).expect("star")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::new(
            a + b,
            (1..=a).flat_map(|u| (a + 1..=a + b).map(move |v| (u, v))),
        )
        .expect("complete bipartite")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u - 1].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> Result<&BTreeSet<usize>> {
        if v == 0 || v > self.n {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} outside 1..={}",
                self.n
            )));
        }
        Ok(&self.adj[v - 1])
    }

    fn nbrs(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Indices of the edges at `v`, ordered by the other endpoint.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.nbrs(v)
            .iter()
            .map(|&w| self.edge_index(v, w).expect("adjacent"))
            .collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.vertices().any(|v| self.degree(v) == 0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([1usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in self.nbrs(u) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Breadth-first two-coloring; each component's smallest vertex goes to
    /// class A. `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for root in self.vertices() {
            if color[root - 1].is_some() {
                continue;
            }
            color[root - 1] = Some(true);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u - 1].expect("colored");
                for &w in self.nbrs(u) {
                    match color[w - 1] {
                        None => {
                            color[w - 1] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut class_a, mut class_b) = (BTreeSet::new(), BTreeSet::new());
        for v in self.vertices() {
            if color[v - 1] == Some(true) {
                class_a.insert(v);
            } else {
                class_b.insert(v);
            }
        }
        Some(Bipartition { class_a, class_b })
    }

    /// Vertex `i + 1` of the line graph is edge `i` of `self`; two are
    /// adjacent when the edges share an endpoint.
    pub fn line_graph(&self) -> LineGraph {
        let mut pairs = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for (j, &(c, d)) in self.edges.iter().enumerate().skip(i + 1) {
                if a == c || a == d || b == c || b == d {
                    pairs.push((i + 1, j + 1));
                }
            }
        }
        LineGraph {
            graph: Graph::new(self.edges.len(), pairs).expect("line graph is simple"),
            edge_map: self.edges.clone(),
        }
    }

    /// Graph on the same vertices keeping the edges whose index bit is set in
    /// `mask`.
    pub fn edge_subgraph(&self, mask: u64) -> Graph {
        Graph::new(
            self.n,
            self.edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("subgraph of a simple graph")
    }

    /// Applies `perm` (a permutation of `1..=n`, `perm[v - 1]` is the image
    /// of `v`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::new(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])),
        )
        .expect("relabeling preserves simplicity")
    }

    /// Serializes as an edge list: `n m` then one `u v` line per edge, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found {tok:?}"),
    })
}

fn graph_error(line: usize) -> impl Fn(Error) -> Error {
    move |e| Error::Parse {
        line,
        message: e.to_string(),
    }
}

/// Reads the `n m` / `u v` edge-list format. Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header line \"n m\"".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            message: "header must be \"n m\"".into(),
        });
    }
    let n = parse_usize(toks[0], hline)?;
    let m = parse_usize(toks[1], hline)?;
    let mut g = Graph::empty(n);
    let mut count = 0;
    for (lineno, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: "edge line must be \"u v\"".into(),
            });
        }
        let (u, v) = (parse_usize(toks[0], lineno)?, parse_usize(toks[1], lineno)?);
        g = add_edge(&g, u, v).map_err(graph_error(lineno))?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: hline,
            message: format!("header announces {m} edges, found {count}"),
        });
    }
    Ok(g)
}

/// Reads DIMACS: `c` comment lines, one `p edge n m` line, `e u v` edges.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut announced = 0;
    let mut problem_line = 0;
    let mut count = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if graph.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "second problem line".into(),
                    });
                }
                if toks.len() != 4 || !matches!(toks[1], "edge" | "col") {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "problem line must be \"p edge n m\"".into(),
                    });
                }
                graph = Some(Graph::empty(parse_usize(toks[2], lineno)?));
                announced = parse_usize(toks[3], lineno)?;
                problem_line = lineno;
            }
            "e" => {
                let g = graph.as_ref().ok_or(Error::Parse {
                    line: lineno,
                    message: "edge line before the problem line".into(),
                })?;
                if toks.len() != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "edge line must be \"e u v\"".into(),
                    });
                }
                let (u, v) = (parse_usize(toks[1], lineno)?, parse_usize(toks[2], lineno)?);
                graph = Some(add_edge(g, u, v).map_err(graph_error(lineno))?);
                count += 1;
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unknown line type {other:?}"),
                })
            }
        }
    }
    let g = graph.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing problem line \"p edge n m\"".into(),
    })?;
    if count != announced {
        return Err(Error::Parse {
            line: problem_line,
            message: format!("problem line announces {announced} edges, found {count}"),
        });
    }
    Ok(g)
}

fn add_edge(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    Graph::new(g.n, g.edges.iter().copied().chain([(u, v)]))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative of every isomorphism class of graphs on exactly `n`
/// vertices (practical for `n <= 6`). Each representative is the labeling
/// whose edge set, read as a bitmask over the pairs of `K_n`, is smallest;
/// the list is sorted by that mask.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = Graph::complete(n).edges;
    let index = |u: usize, v: usize| pairs.binary_search(&(u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &(u, v))| {
                        acc | 1 << index(p[u - 1], p[v - 1])
                    })
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            reps.push(canon);
        }
    }
    reps.sort_unstable();
    reps.into_iter()
        .map(|mask| Graph::complete(n).edge_subgraph(mask))
        .collect()
}

/// Isomorphism-class representatives for every order `1..=max_n`.
pub fn small_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(nonisomorphic_graphs).collect()
}
