use crate::error::StabError;
use crate::tableau::{Gate, StabilizerTableau};

/// Simple undirected graph on vertices `0..n`, used for graph-state rewriting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![vec![false; n]; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, StabError> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(StabError::IndexOutOfRange { index: a.max(b), num_qubits: n });
            }
            if a == b {
                return Err(StabError::InvalidGraph(format!("self loop on vertex {a}")));
            }
            g.adj[a][b] = true;
            g.adj[b][a] = true;
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a][b] ^= true;
            self.adj[b][a] ^= true;
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.adj.len()).filter(|&u| self.adj[v][u]).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.adj.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.adj[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adj
    }

    /// Local complementation at `v`: complement the subgraph on N(v).
    pub fn local_complement(&mut self, v: usize) {
        let nb = self.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                self.toggle_edge(nb[i], nb[j]);
            }
        }
    }

    /// Remove all edges at `v`, leaving it isolated.
    pub fn isolate(&mut self, v: usize) {
        for u in self.neighbors(v) {
            self.toggle_edge(v, u);
        }
    }

    /// Graph after a Pauli-Z measurement of `v` (up to local byproducts).
    pub fn measure_z(&mut self, v: usize) {
        self.isolate(v);
    }

    /// Graph after a Pauli-Y measurement of `v` (up to local byproducts).
    pub fn measure_y(&mut self, v: usize) {
        self.local_complement(v);
        self.isolate(v);
    }

    /// Graph after a Pauli-X measurement of `v` with special neighbour `b0`
    /// (up to local byproducts). Returns `false` if `v` is isolated.
    pub fn measure_x(&mut self, v: usize, b0: Option<usize>) -> bool {
        let nb = self.neighbors(v);
        let Some(&first) = nb.first() else {
            return false;
        };
        let b0 = b0.filter(|b| nb.contains(b)).unwrap_or(first);
        self.local_complement(b0);
        self.local_complement(v);
        self.isolate(v);
        self.local_complement(b0);
        true
    }

    pub fn to_tableau(&self) -> StabilizerTableau {
        StabilizerTableau::graph_state(&self.adj).expect("graph is valid by construction")
    }

    /// Gates that turn the state left by a Y measurement of `v` (with `outcome`)
    /// into the graph state of [`Graph::measure_y`]. Call on the graph *before* the update.
    pub fn y_correction(&self, v: usize, outcome: i8) -> Vec<Gate> {
        self.neighbors(v)
            .into_iter()
            .map(|u| if outcome > 0 { Gate::SDag(u) } else { Gate::S(u) })
            .collect()
    }

    /// Gates that turn the state left by an X measurement of `v` into the graph
    /// state of [`Graph::measure_x`] with the same `b0`. Call on the graph *before* the update.
    pub fn x_correction(&self, v: usize, b0: usize, outcome: i8) -> Vec<Gate> {
        let na = self.neighbors(v);
        let nb = self.neighbors(b0);
        let mut out = Vec::new();
        if outcome > 0 {
            out.extend(na.iter().filter(|&&b| b != b0 && !nb.contains(&b)).map(|&b| Gate::Z(b)));
            out.push(Gate::Z(b0));
            out.push(Gate::H(b0));
        } else {
            out.extend(nb.iter().filter(|&&b| b != v && !na.contains(&b)).map(|&b| Gate::Z(b)));
            out.push(Gate::H(b0));
            out.push(Gate::Z(b0));
        }
        out
    }
}
