//! Small bipartite graphs and the generalized m-gon checks (connectivity,
//! regularity, diameter, girth) used on incidence and link graphs.
//!
//! Everything here is exhaustive BFS; the graphs never exceed a few
//! thousand vertices.

use crate::report::VerificationReport;
use std::collections::VecDeque;

/// Vertices 0..black_count are black, the rest white. Adjacency is
/// symmetric and kept sorted for deterministic iteration and output.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    black_count: usize,
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
    /// Edges that were inserted more than once (collapsed, but remembered).
    duplicate_edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(black_labels: Vec<String>, white_labels: Vec<String>) -> Self {
        let black_count = black_labels.len();
        let mut labels = black_labels;
        labels.extend(white_labels);
        let n = labels.len();
        BipartiteGraph {
            black_count,
            labels,
            adj: vec![Vec::new(); n],
            duplicate_edges: Vec::new(),
        }
    }

    /// Connects black vertex `b` to white vertex `w` (indices within their
    /// own class). Repeated insertions collapse to a single edge.
    pub fn add_edge(&mut self, b: usize, w: usize) {
        assert!(b < self.black_count);
        let w = self.black_count + w;
        assert!(w < self.labels.len());
        if self.adj[b].contains(&w) {
            self.duplicate_edges.push((b, w - self.black_count));
            return;
        }
        self.adj[b].push(w);
        self.adj[w].push(b);
    }

    pub fn finish(&mut self) {
        for l in &mut self.adj {
            l.sort_unstable();
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn black_count(&self) -> usize {
        self.black_count
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn duplicate_edges(&self) -> &[(usize, usize)] {
        &self.duplicate_edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn bfs_dist(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.labels.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle, or None for a forest. BFS from every
    /// vertex; a non-tree edge at depth d closes a cycle of length
    /// 2d+1 (same level) or 2d+2 (next level).
    pub fn girth(&self) -> Option<usize> {
        let n = self.labels.len();
        let mut best: Option<usize> = None;
        for src in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let cycle = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    pub fn diameter(&self) -> Option<usize> {
        let n = self.labels.len();
        let mut diam = 0;
        for src in 0..n {
            for d in self.bfs_dist(src) {
                match d {
                    Some(d) => diam = diam.max(d),
                    None => return None, // disconnected
                }
            }
        }
        Some(diam)
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return true;
        }
        self.bfs_dist(0).iter().all(|d| d.is_some())
    }

    /// Verifies that the graph is a generalized m-gon of order q:
    /// connected, bipartite by construction, (q+1)-regular, diameter
    /// exactly m, girth exactly 2m.
    pub fn verify_generalized_mgon(&self, m: usize, q: u64) -> VerificationReport {
        let mut rep = VerificationReport::new(format!("generalized {m}-gon, order {q}"));
        rep.record(
            "connected",
            self.is_connected(),
            "graph is disconnected".to_string(),
        );
        // Cross-class adjacency is structural; check it anyway so that a
        // corrupted adjacency list cannot pass silently.
        let cross = self.adj.iter().enumerate().all(|(u, l)| {
            l.iter()
                .all(|&v| (u < self.black_count) != (v < self.black_count))
        });
        rep.record("bipartite", cross, "same-class edge found".to_string());
        let want = (q + 1) as usize;
        let irregular = (0..self.vertex_count()).find(|&v| self.degree(v) != want);
        rep.record(
            format!("{}-regular", want),
            irregular.is_none(),
            irregular
                .map(|v| format!("vertex {} has degree {}", self.labels[v], self.degree(v)))
                .unwrap_or_default(),
        );
        let diam = self.diameter();
        rep.record(
            format!("diameter {m}"),
            diam == Some(m),
            format!("diameter is {diam:?}"),
        );
        let girth = self.girth();
        rep.record(
            format!("girth {}", 2 * m),
            girth == Some(2 * m),
            format!("girth is {girth:?}"),
        );
        rep
    }

    /// Graphviz rendering with black/white classes shaped differently.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for (v, label) in self.labels.iter().enumerate() {
            let shape = if v < self.black_count { "circle" } else { "box" };
            out.push_str(&format!("  v{v} [label=\"{label}\", shape={shape}];\n"));
        }
        for (u, l) in self.adj.iter().enumerate() {
            for &v in l {
                if u < v {
                    out.push_str(&format!("  v{u} -- v{v};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> BipartiteGraph {
        assert_eq!(n % 2, 0);
        let half = n / 2;
        let mut g = BipartiteGraph::new(
            (0..half).map(|i| format!("b{i}")).collect(),
            (0..half).map(|i| format!("w{i}")).collect(),
        );
        // b_i - w_i - b_{i+1}
        for i in 0..half {
            g.add_edge(i, i);
            g.add_edge((i + 1) % half, i);
        }
        g.finish();
        g
    }

    #[test]
    fn six_cycle_metrics() {
        let g = cycle(6);
        assert_eq!(g.girth(), Some(6));
        assert_eq!(g.diameter(), Some(3));
        assert!(g.is_connected());
    }

    #[test]
    fn six_cycle_fails_regularity_for_q2() {
        let rep = cycle(6).verify_generalized_mgon(3, 2);
        assert!(!rep.passed());
        assert!(rep.first_failure().unwrap().name.contains("3-regular"));
    }

    #[test]
    fn duplicate_edges_are_collapsed_and_reported() {
        let mut g = BipartiteGraph::new(vec!["a".into()], vec!["b".into()]);
        g.add_edge(0, 0);
        g.add_edge(0, 0);
        g.finish();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.duplicate_edges(), &[(0, 0)]);
    }

    #[test]
    fn tree_has_no_girth() {
        let mut g = BipartiteGraph::new(vec!["r".into()], vec!["x".into(), "y".into()]);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.finish();
        assert_eq!(g.girth(), None);
        assert_eq!(g.diameter(), Some(2));
    }
}
