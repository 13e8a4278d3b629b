//! Graph representation, parsing and structural preprocessing.
//!
//! Graphs are immutable once built: compressed adjacency, optional integer
//! weights, and a precomputed reverse adjacency for directed graphs. All
//! node ids are `0..n`.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// One adjacency direction in compressed sparse form.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    index: Vec<usize>,
    /// (target, weight) per arc, grouped by source.
    arcs: Vec<(u32, u32)>,
}

impl Csr {
    fn build(n: usize, arcs: &[(usize, usize, u64)]) -> Csr {
        let mut index = vec![0usize; n + 1];
        for &(u, _, _) in arcs {
            index[u + 1] += 1;
        }
        for i in 0..n {
            index[i + 1] += index[i];
        }
        let mut out = vec![(0u32, 0u32); arcs.len()];
        let mut cursor = index.clone();
        for &(u, v, w) in arcs {
            out[cursor[u]] = (v as u32, w as u32);
            cursor[u] += 1;
        }
        Csr { index, arcs: out }
    }

    #[inline]
    fn arcs_from(&self, u: usize) -> &[(u32, u32)] {
        &self.arcs[self.index[u]..self.index[u + 1]]
    }
}

/// Immutable graph with non-negative integer weights.
///
/// Undirected graphs store each edge in both directions; directed graphs
/// additionally carry the transposed arc set so that backward sweeps cost
/// the same as forward ones.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    directed: bool,
    unit_weights: bool,
    max_weight: u64,
    fwd: Csr,
    rev: Option<Csr>,
}

impl Graph {
    /// Builds a graph from explicit arcs. For undirected graphs each edge is
    /// listed once and stored in both directions (self-loops once).
    pub fn from_edges(n: usize, directed: bool, edges: &[(usize, usize, u64)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for &(u, v, w) in edges {
            let bad = if u >= n { u } else { v };
            if u >= n || v >= n {
                return Err(Error::NodeOutOfRange {
                    line: 0,
                    id: bad,
                    n,
                });
            }
            debug_assert!(w <= u32::MAX as u64, "weight too large");
        }
        let mut fwd_arcs = Vec::with_capacity(if directed { edges.len() } else { edges.len() * 2 });
        for &(u, v, w) in edges {
            fwd_arcs.push((u, v, w));
            if !directed && u != v {
                fwd_arcs.push((v, u, w));
            }
        }
        let fwd = Csr::build(n, &fwd_arcs);
        let rev = if directed {
            let rev_arcs: Vec<_> = fwd_arcs.iter().map(|&(u, v, w)| (v, u, w)).collect();
            Some(Csr::build(n, &rev_arcs))
        } else {
            None
        };
        let mut max_weight = 0u64;
        let mut unit = true;
        for &(_, _, w) in &fwd_arcs {
            max_weight = max_weight.max(w);
            if w != 1 {
                unit = false;
            }
        }
        if fwd_arcs.is_empty() {
            max_weight = 1;
            unit = true;
        }
        Ok(Graph {
            n,
            directed,
            unit_weights: unit,
            max_weight: max_weight.max(1),
            fwd,
            rev,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored arcs (an undirected edge counts twice).
    pub fn arc_count(&self) -> usize {
        self.fwd.arcs.len()
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    /// True when every arc has weight exactly 1 (BFS suffices).
    pub fn unit_weights(&self) -> bool {
        self.unit_weights
    }

    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    /// True when some arc weight differs from 1.
    pub fn weighted(&self) -> bool {
        !self.unit_weights
    }

    #[inline]
    pub fn out_arcs(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.fwd
            .arcs_from(u)
            .iter()
            .map(|&(v, w)| (v as usize, w as u64))
    }

    /// Incoming arcs; for undirected graphs this aliases `out_arcs`.
    #[inline]
    pub fn in_arcs(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        match &self.rev {
            Some(rev) => rev.arcs_from(u),
            None => self.fwd.arcs_from(u),
        }
        .iter()
        .map(|&(v, w)| (v as usize, w as u64))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.fwd.arcs_from(u).len()
    }

    /// Raw arc slice for the traversal hot loops.
    #[inline]
    pub(crate) fn arc_slice(&self, u: usize, backward: bool) -> &[(u32, u32)] {
        if backward {
            match &self.rev {
                Some(rev) => rev.arcs_from(u),
                None => self.fwd.arcs_from(u),
            }
        } else {
            self.fwd.arcs_from(u)
        }
    }

    /// Longest zero-weight path out of each node, when zero-weight arcs
    /// exist and form no cycle. Distance-zero pairs of distinct nodes break
    /// the usual tie-breaking assumptions, and this depth ranks such chains:
    /// `d(u, v) = 0` with `u != v` implies `depth(u) > depth(v)`.
    pub(crate) fn zero_weight_depth(&self) -> Option<Vec<u32>> {
        if self.unit_weights {
            return None;
        }
        let n = self.n;
        let mut indeg = vec![0u32; n];
        let mut any = false;
        for u in 0..n {
            for &(v, w) in self.fwd.arcs_from(u) {
                if w == 0 && (v as usize) != u {
                    indeg[v as usize] += 1;
                    any = true;
                }
            }
        }
        if !any {
            return None;
        }
        let mut depth = vec![0u32; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = queue.len();
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &(v, w) in self.fwd.arcs_from(u) {
                let v = v as usize;
                if w != 0 || v == u {
                    continue;
                }
                depth[v] = depth[v].max(depth[u] + 1);
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                    seen += 1;
                }
            }
        }
        if seen < n {
            // A zero-weight cycle: distance-zero nodes are mutually
            // reachable and no ranking can separate them.
            return None;
        }
        // The longest path must run against the depth: flip so sinks get
        // depth 0 and sources the largest.
        let max = *depth.iter().max().unwrap();
        for d in &mut depth {
            *d = max - *d;
        }
        Some(depth)
    }

    /// Transposed graph. Reversing an undirected graph is the identity.
    pub fn reverse(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        Graph {
            n: self.n,
            directed: true,
            unit_weights: self.unit_weights,
            max_weight: self.max_weight,
            fwd: self.rev.clone().expect("directed graph has reverse"),
            rev: Some(self.fwd.clone()),
        }
    }

    /// SHA-256 over a canonical rendering (n, directedness, sorted adjacency).
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.n.to_le_bytes());
        hasher.update([self.directed as u8]);
        let mut row: Vec<(u32, u32)> = Vec::new();
        for u in 0..self.n {
            row.clear();
            row.extend_from_slice(self.fwd.arcs_from(u));
            row.sort_unstable();
            hasher.update((row.len() as u64).to_le_bytes());
            for &(v, w) in &row {
                hasher.update(v.to_le_bytes());
                hasher.update(w.to_le_bytes());
            }
        }
        hex_string(&hasher.finalize())
    }

    /// Restricts to the largest connected component (strongly connected for
    /// directed graphs). Ties go to the component holding the smallest node
    /// id. Node ids are remapped preserving relative order.
    pub fn restrict_to_core(&self) -> Result<CoreRestriction> {
        let comp = if self.directed {
            strongly_connected_components(self)
        } else {
            connected_components(self)
        };
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        if ncomp == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut size = vec![0usize; ncomp];
        let mut min_id = vec![usize::MAX; ncomp];
        for (v, &c) in comp.iter().enumerate() {
            size[c] += 1;
            min_id[c] = min_id[c].min(v);
        }
        let mut best = 0usize;
        for c in 1..ncomp {
            if size[c] > size[best] || (size[c] == size[best] && min_id[c] < min_id[best]) {
                best = c;
            }
        }
        let mut new_of_old = vec![None; self.n];
        let mut old_of_new = Vec::with_capacity(size[best]);
        for v in 0..self.n {
            if comp[v] == best {
                new_of_old[v] = Some(old_of_new.len());
                old_of_new.push(v);
            }
        }
        let mut edges = Vec::new();
        for u in 0..self.n {
            let Some(nu) = new_of_old[u] else { continue };
            for (v, w) in self.out_arcs(u) {
                let Some(nv) = new_of_old[v] else { continue };
                if self.directed || nu < nv || (nu == nv && u == v) {
                    edges.push((nu, nv, w));
                }
            }
        }
        let graph = Graph::from_edges(old_of_new.len(), self.directed, &edges)?;
        Ok(CoreRestriction {
            dropped: self.n - old_of_new.len(),
            graph,
            old_of_new,
            new_of_old,
        })
    }
}

/// Result of `restrict_to_core`: the core graph plus the id remapping.
#[derive(Debug, Clone)]
pub struct CoreRestriction {
    pub graph: Graph,
    /// new id -> old id
    pub old_of_new: Vec<usize>,
    /// old id -> new id (None when dropped)
    pub new_of_old: Vec<Option<usize>>,
    pub dropped: usize,
}

fn connected_components(g: &Graph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.n];
    let mut next = 0usize;
    let mut queue = Vec::new();
    for s in 0..g.n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        queue.push(s);
        while let Some(u) = queue.pop() {
            for (v, _) in g.out_arcs(u) {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Iterative Tarjan; component ids are renumbered so they are stable with
/// respect to node order (the numbering itself is irrelevant to callers).
fn strongly_connected_components(g: &Graph) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = g.n;
    let mut idx = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![UNSET; n];
    let mut counter = 0usize;
    let mut ncomp = 0usize;

    // Explicit DFS frames: (node, next-arc cursor).
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let adj = |u: usize| g.fwd.arcs_from(u);

    for root in 0..n {
        if idx[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        idx[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (u, ref mut cursor)) = frames.last_mut() {
            if *cursor < adj(u).len() {
                let v = adj(u)[*cursor].0 as usize;
                *cursor += 1;
                if idx[v] == UNSET {
                    idx[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    frames.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(idx[v]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _)) = frames.last() {
                    low[p] = low[p].min(low[u]);
                }
                if low[u] == idx[u] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == u {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// A bijective node ranking; antipodes break distance ties toward the
/// highest-ranked furthest node.
#[derive(Debug, Clone)]
pub struct Ranking {
    rank: Vec<usize>,
    descriptor: String,
}

impl Ranking {
    /// Node-id order, the default.
    pub fn id(n: usize) -> Ranking {
        Ranking {
            rank: (0..n).collect(),
            descriptor: "id".to_string(),
        }
    }

    /// Seeded random permutation.
    pub fn random(n: usize, seed: u64) -> Ranking {
        let mut rank: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rank.shuffle(&mut rng);
        Ranking {
            rank,
            descriptor: format!("random:{seed}"),
        }
    }

    pub fn from_perm(rank: Vec<usize>) -> Result<Ranking> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            if r >= n || seen[r] {
                return Err(Error::BadRanking);
            }
            seen[r] = true;
        }
        Ok(Ranking {
            rank,
            descriptor: "custom".to_string(),
        })
    }

    #[inline]
    pub fn rank_of(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Opens a path for reading; `-` means stdin and `*.gz` is decompressed.
pub fn open_input(path: &str) -> Result<Box<dyn BufRead>> {
    if path == "-" {
        return Ok(Box::new(BufReader::new(std::io::stdin())));
    }
    let file = std::fs::File::open(Path::new(path))?;
    if path.ends_with(".gz") {
        let dec = flate2::read::GzDecoder::new(file);
        Ok(Box::new(BufReader::new(dec)))
    } else {
        Ok(Box::new(BufReader::new(file)))
    }
}

struct EdgeListHeader {
    n: usize,
    directed: bool,
}

/// Parses the whitespace edge-list format.
///
/// Lines are `u v` or `u v w`; `#` starts a comment. An optional leading
/// header `n <count> directed <0|1>` fixes the node count and orientation;
/// without it the graph is undirected with `n = 1 + max id`.
pub fn parse_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let reader = BufReader::new(reader);
    let mut header: Option<EdgeListHeader> = None;
    let mut saw_data = false;
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut max_id = 0usize;

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let text = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let mut it = text.split_whitespace();
        let Some(first) = it.next() else { continue };

        if first == "n" && !saw_data && header.is_none() {
            let n = parse_count(it.next(), lineno, "node count")?;
            let kw = it.next();
            if kw != Some("directed") {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "header must read 'n <count> directed <0|1>'".into(),
                });
            }
            let d = parse_count(it.next(), lineno, "directed flag")?;
            if d > 1 || it.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "header must read 'n <count> directed <0|1>'".into(),
                });
            }
            header = Some(EdgeListHeader { n, directed: d == 1 });
            continue;
        }

        saw_data = true;
        let u = parse_node(Some(first), lineno)?;
        let v = parse_node(it.next(), lineno)?;
        let w = match it.next() {
            Some(tok) => parse_weight(tok, lineno)?,
            None => 1,
        };
        if it.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "expected 'u v' or 'u v w'".into(),
            });
        }
        if let Some(h) = &header {
            let bad = if u >= h.n {
                Some(u)
            } else if v >= h.n {
                Some(v)
            } else {
                None
            };
            if let Some(id) = bad {
                return Err(Error::NodeOutOfRange {
                    line: lineno,
                    id,
                    n: h.n,
                });
            }
        }
        max_id = max_id.max(u).max(v);
        edges.push((u, v, w));
    }

    let (n, directed) = match header {
        Some(h) => (h.n, h.directed),
        None => {
            if edges.is_empty() {
                return Err(Error::EmptyGraph);
            }
            (max_id + 1, false)
        }
    };
    Graph::from_edges(n, directed, &edges)
}

/// Parses the DIMACS shortest-path format: `p sp n m` header, `a u v w`
/// arc lines with 1-based ids, `c` comments. The result is directed.
pub fn parse_dimacs_gr<R: Read>(reader: R) -> Result<Graph> {
    let reader = BufReader::new(reader);
    let mut n: Option<usize> = None;
    let mut declared_m = 0usize;
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let mut it = line.split_whitespace();
        match it.next() {
            None | Some("c") => continue,
            Some("p") => {
                if it.next() != Some("sp") {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected 'p sp <n> <m>'".into(),
                    });
                }
                n = Some(parse_count(it.next(), lineno, "node count")?);
                declared_m = parse_count(it.next(), lineno, "arc count")?;
            }
            Some("a") => {
                let Some(nn) = n else {
                    return Err(Error::MissingHeader);
                };
                let u = parse_node(it.next(), lineno)?;
                let v = parse_node(it.next(), lineno)?;
                let w = parse_weight(
                    it.next().ok_or(Error::Parse {
                        line: lineno,
                        msg: "arc line needs 'a u v w'".into(),
                    })?,
                    lineno,
                )?;
                if u == 0 || v == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "ids are 1-based".into(),
                    });
                }
                if u > nn || v > nn {
                    return Err(Error::NodeOutOfRange {
                        line: lineno,
                        id: u.max(v),
                        n: nn,
                    });
                }
                edges.push((u - 1, v - 1, w));
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown record '{other}'"),
                });
            }
        }
    }

    let Some(n) = n else {
        return Err(Error::MissingHeader);
    };
    if edges.len() != declared_m {
        log::warn!(
            "dimacs header declares {declared_m} arcs but {} were read",
            edges.len()
        );
    }
    Graph::from_edges(n, true, &edges)
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} '{tok}'"),
    })
}

fn parse_node(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: "missing node id".into(),
    })?;
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad node id '{tok}'"),
    })
}

fn parse_weight(tok: &str, line: usize) -> Result<u64> {
    let val = tok.parse::<i64>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad weight '{tok}'"),
    })?;
    if val < 0 {
        return Err(Error::NegativeWeight { line });
    }
    Ok(val as u64)
}

/// Writes the edge-list format (with header) so parses round-trip.
/// Undirected edges are emitted once.
pub fn write_edge_list<W: std::io::Write>(
    g: &Graph,
    mut out: W,
    comment: Option<&str>,
) -> std::io::Result<()> {
    if let Some(c) = comment {
        writeln!(out, "# {c}")?;
    }
    writeln!(out, "n {} directed {}", g.n(), g.directed() as u8)?;
    for u in 0..g.n() {
        for (v, w) in g.out_arcs(u) {
            if !g.directed() && v < u {
                continue;
            }
            if g.weighted() {
                writeln!(out, "{u} {v} {w}")?;
            } else {
                writeln!(out, "{u} {v}")?;
            }
        }
    }
    Ok(())
}
