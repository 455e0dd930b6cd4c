//! Hardware connectivity graphs: generators for the standard topologies and
//! an edge-list file format (`u v` per line, `#` comments).
//!
//! All constructors guarantee a connected simple graph, which is what the
//! router assumes.

use std::path::Path;

use thiserror::Error;

/// An undirected connectivity graph. Two-qubit gates are only allowed on
/// its edges after routing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    name: String,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl CouplingMap {
    /// Path graph on `m` vertices.
    pub fn line(m: usize) -> Self {
        let edges = (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::from_parts(format!("line:{m}"), m, edges).expect("line is connected")
    }

    /// Cycle on `m` vertices (a path for `m < 3`).
    pub fn ring(m: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if m >= 3 {
            edges.push((m - 1, 0));
        }
        Self::from_parts(format!("ring:{m}"), m, edges).expect("ring is connected")
    }

    /// Rectangular grid, `w` columns by `h` rows.
    pub fn grid(w: usize, h: usize) -> Self {
        assert!(w >= 1 && h >= 1, "grid needs at least one vertex");
        let at = |col: usize, row: usize| row * w + col;
        let mut edges = Vec::new();
        for row in 0..h {
            for col in 0..w {
                if col + 1 < w {
                    edges.push((at(col, row), at(col + 1, row)));
                }
                if row + 1 < h {
                    edges.push((at(col, row), at(col, row + 1)));
                }
            }
        }
        Self::from_parts(format!("grid:{w}x{h}"), w * h, edges).expect("grid is connected")
    }

    /// Heavy-hexagon lattice tiling `rows × cols` hexagonal cells: a
    /// brick-wall honeycomb with an extra vertex on every edge, so no vertex
    /// exceeds degree 3.
    pub fn heavy_hex(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "heavy_hex needs at least one cell");
        // Honeycomb as a brick wall: full horizontal rails, vertical rungs
        // where (row + col) is even.
        let rail_len = 2 * cols + 2;
        let n_rails = rows + 1;
        let at = |row: usize, col: usize| row * rail_len + col;
        let mut base_edges = Vec::new();
        for row in 0..n_rails {
            for col in 0..rail_len - 1 {
                base_edges.push((at(row, col), at(row, col + 1)));
            }
        }
        for row in 0..rows {
            for col in 0..rail_len {
                if (row + col) % 2 == 0 {
                    base_edges.push((at(row, col), at(row + 1, col)));
                }
            }
        }
        // Subdivide every edge once.
        let base_vertices = n_rails * rail_len;
        let mut vertices = base_vertices;
        let mut edges = Vec::with_capacity(2 * base_edges.len());
        for (u, v) in base_edges {
            let mid = vertices;
            vertices += 1;
            edges.push((u, mid));
            edges.push((mid, v));
        }
        Self::from_parts(format!("heavy_hex:{rows}x{cols}"), vertices, edges)
            .expect("heavy hex is connected")
    }

    /// Complete graph on `m` vertices.
    pub fn all_to_all(m: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                edges.push((a, b));
            }
        }
        Self::from_parts(format!("all_to_all:{m}"), m, edges).expect("complete graph is connected")
    }

    /// Parse an edge list: one `u v` pair per line, `#` starts a comment.
    /// The vertex count is `max index + 1`. Disconnected inputs are
    /// rejected.
    pub fn from_edge_list_str(name: &str, text: &str) -> Result<Self, CouplingError> {
        let mut edges = Vec::new();
        let mut max_vertex = None::<usize>;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let mut field = || -> Result<usize, CouplingError> {
                parts
                    .next()
                    .ok_or(CouplingError::Parse { line: idx + 1 })?
                    .parse()
                    .map_err(|_| CouplingError::Parse { line: idx + 1 })
            };
            let u = field()?;
            let v = field()?;
            max_vertex = Some(max_vertex.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u, v));
        }
        let vertices = max_vertex.map_or(0, |m| m + 1);
        Self::from_parts(name.to_string(), vertices, edges)
    }

    pub fn from_edge_list_file(path: &Path) -> Result<Self, CouplingError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CouplingError::Io(format!("{}: {e}", path.display())))?;
        let name = format!("file:{}", path.display());
        Self::from_edge_list_str(&name, &text)
    }

    fn from_parts(
        name: String,
        vertices: usize,
        raw_edges: Vec<(usize, usize)>,
    ) -> Result<Self, CouplingError> {
        if vertices == 0 {
            return Err(CouplingError::Empty);
        }
        let mut adjacency = vec![Vec::new(); vertices];
        let mut edges = Vec::new();
        for (u, v) in raw_edges {
            if u == v {
                return Err(CouplingError::SelfLoop(u));
            }
            if u >= vertices || v >= vertices {
                return Err(CouplingError::VertexOutOfRange {
                    vertex: u.max(v),
                    vertices,
                });
            }
            let (a, b) = (u.min(v), u.max(v));
            if adjacency[a].contains(&b) {
                continue; // ignore duplicate edges
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            edges.push((a, b));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        edges.sort_unstable();
        let map = CouplingMap {
            name,
            adjacency,
            edges,
        };
        if !map.is_connected() {
            return Err(CouplingError::Disconnected);
        }
        Ok(map)
    }

    fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    visited += 1;
                    stack.push(u);
                }
            }
        }
        visited == n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    /// Normalized `(min, max)` edge pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// BFS distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices()];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}

#[derive(Debug, Error)]
pub enum CouplingError {
    #[error("coupling map needs at least one vertex")]
    Empty,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("coupling map must be connected")]
    Disconnected,
    #[error("malformed edge list at line {line}")]
    Parse { line: usize },
    #[error("cannot read edge list: {0}")]
    Io(String),
}
