use serde::{Deserialize, Serialize};
use stabilizer_core::{Graph, Pauli, PauliString, StabilizerTableau};

use crate::{CodeError, RingCodeSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexKind {
    /// Kept encoding vertex (the memory spin).
    Encoding,
    /// Emitted photon; `emission` is its position in the emission order and
    /// `path` the ring index at every layer, top layer first.
    Photon { emission: usize, path: Vec<usize> },
    /// Virtual vertex, measured in X during generation. `layer` is the layer of
    /// the ring it heads (1 = rings of photons).
    Virtual { layer: usize, path: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    #[serde(flatten)]
    pub kind: VertexKind,
}

/// Graph of a concatenated ring code. `edges` is the graph before the
/// virtual vertices are measured; `photonic_edges` is the graph left on the
/// kept vertices afterwards, equal to the target state up to local Cliffords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    pub depth: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[usize; 2]>,
    pub photonic_edges: Vec<[usize; 2]>,
}

struct Builder {
    n: usize,
    depth: usize,
    next_photon: usize,
    next_virtual: usize,
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
}

impl Builder {
    fn new(n: usize, depth: usize, roots: Vec<Vertex>) -> Self {
        // One block per root.
        let photons = roots.len() * n.pow(depth as u32);
        let first_photon = roots.len();
        let mut vertices = roots;
        vertices.extend((0..photons).map(|i| Vertex {
            id: first_photon + i,
            kind: VertexKind::Photon { emission: i, path: Vec::new() },
        }));
        Builder {
            n,
            depth,
            next_photon: first_photon,
            next_virtual: first_photon + photons,
            vertices,
            edges: Vec::new(),
        }
    }

    /// Attach a layer-`layer` ring to `root`, depth-first in emission order.
    fn attach(&mut self, root: usize, layer: usize, prefix: &[usize]) {
        let mut ring = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let mut path = prefix.to_vec();
            path.push(k);
            let v = if layer == 1 {
                let id = self.next_photon;
                self.next_photon += 1;
                if let VertexKind::Photon { path: p, .. } = &mut self.vertices[id].kind {
                    *p = path;
                }
                id
            } else {
                let id = self.next_virtual;
                self.next_virtual += 1;
                self.vertices.push(Vertex { id, kind: VertexKind::Virtual { layer: layer - 1, path: path.clone() } });
                self.attach(id, layer - 1, &path);
                id
            };
            ring.push(v);
        }
        self.edges.push([root, ring[0]]);
        self.edges.push([root, ring[self.n - 1]]);
        for w in ring.windows(2) {
            self.edges.push([w[0], w[1]]);
        }
    }

    fn finish(mut self) -> GraphSpec {
        for e in &mut self.edges {
            e.sort_unstable();
        }
        self.edges.sort_unstable();
        let mut g = Graph::new(self.vertices.len());
        for e in &self.edges {
            g.toggle_edge(e[0], e[1]);
        }
        for v in &self.vertices {
            if matches!(v.kind, VertexKind::Virtual { .. }) {
                g.measure_x(v.id, None);
            }
        }
        let photonic_edges = g.edges().into_iter().map(|(a, b)| [a, b]).collect();
        GraphSpec { n: self.n, depth: self.depth, vertices: self.vertices, edges: self.edges, photonic_edges }
    }
}

/// Concatenated ring of depth `spec.depth` on encoding vertex 0. Photons get
/// ids `1..=n^depth` in emission order; virtual vertices follow.
pub fn build_concatenated_ring(spec: &RingCodeSpec) -> Result<GraphSpec, CodeError> {
    spec.validate()?;
    let mut b = Builder::new(spec.n, spec.depth, vec![Vertex { id: 0, kind: VertexKind::Encoding }]);
    b.attach(0, spec.depth, &[]);
    Ok(b.finish())
}

/// Two blocks joined into a line: the logical qubit of the first block is
/// adjacent to the root of the second. Both roots (ids 0 and 1) are virtual,
/// so every kept vertex is a photon (ids `2..2 + 2 n^depth`).
pub fn build_ring_line(spec: &RingCodeSpec) -> Result<GraphSpec, CodeError> {
    spec.validate()?;
    let root = |id| Vertex { id, kind: VertexKind::Virtual { layer: spec.depth, path: vec![id] } };
    let mut b = Builder::new(spec.n, spec.depth, vec![root(0), root(1)]);
    b.attach(0, spec.depth, &[0]);
    b.attach(1, spec.depth, &[1]);
    b.edges.push([0, 1]);
    Ok(b.finish())
}

impl GraphSpec {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Ids of the vertices that survive generation, in id order.
    pub fn kept(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| !matches!(v.kind, VertexKind::Virtual { .. }))
            .map(|v| v.id)
            .collect()
    }

    pub fn virtual_vertices(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| matches!(v.kind, VertexKind::Virtual { .. }))
            .map(|v| v.id)
            .collect()
    }

    /// Photon ids sorted by emission order.
    pub fn photons(&self) -> Vec<usize> {
        let mut p: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .filter_map(|v| match v.kind {
                VertexKind::Photon { emission, .. } => Some((emission, v.id)),
                _ => None,
            })
            .collect();
        p.sort_unstable();
        p.into_iter().map(|(_, id)| id).collect()
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.vertices.len());
        for e in &self.edges {
            g.toggle_edge(e[0], e[1]);
        }
        g
    }

    /// Exact target: the pre-measurement graph state with every virtual vertex
    /// projected onto X = +1. Virtual qubits end up in |+⟩.
    pub fn target_state(&self) -> StabilizerTableau {
        let mut t = self.graph().to_tableau();
        let n = self.num_vertices();
        for v in self.virtual_vertices() {
            t.measure_forced(&PauliString::single(n, v, Pauli::X), 1);
        }
        t
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CodeError> {
        let g: GraphSpec = serde_json::from_str(s).map_err(|e| CodeError::Parse(e.to_string()))?;
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<(), CodeError> {
        let nv = self.vertices.len();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(CodeError::Parse(format!("vertex {i} has id {}", v.id)));
            }
        }
        for e in self.edges.iter().chain(&self.photonic_edges) {
            if e[0] >= nv || e[1] >= nv || e[0] == e[1] {
                return Err(CodeError::Parse(format!("bad edge {e:?}")));
            }
        }
        Ok(())
    }
}

/// True when qubits `qa` of `a` and qubits `qb` of `b` (matched by position)
/// carry the same pure state.
pub fn same_reduced_state(a: &StabilizerTableau, qa: &[usize], b: &StabilizerTableau, qb: &[usize]) -> bool {
    assert_eq!(qa.len(), qb.len());
    let ga = a.subgroup_on(qa);
    let gb = b.subgroup_on(qb);
    if ga.len() != qa.len() || gb.len() != qb.len() {
        return false;
    }
    let nb = b.num_qubits();
    ga.iter().all(|g| {
        let mut m = PauliString::identity(nb);
        for (i, &q) in qa.iter().enumerate() {
            m.set(qb[i], g.get(q));
        }
        if g.sign() == Some(-1) {
            m.negate();
        }
        b.peek(&m) == Some(1)
    })
}
