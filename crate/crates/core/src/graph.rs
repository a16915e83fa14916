//! Vertex-weighted oriented graphs and recognition of disjoint unions of
//! gap-free bipartite graphs oriented away from one side.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("vertex name must be nonempty")]
    EmptyName,
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` has weight {1}; weights must be at least 1")]
    WeightTooSmall(String, u32),
    #[error("isolated vertex `{0}`: every vertex must lie on an edge")]
    IsolatedVertex(String),
    #[error("source vertex `{0}` has weight {1}; vertices with no incoming edge must have weight 1")]
    SourceWeight(String, u32),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("edge `{0}` -> `{1}` appears more than once")]
    MultiEdge(String, String),
    #[error("anti-parallel edges between `{0}` and `{1}`")]
    AntiParallel(String, String),
    #[error("graph has no vertices")]
    Empty,
}

/// A vertex: dense index plus display name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId {
    pub index: usize,
    pub name: String,
}

/// On-disk graph document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub name: String,
    pub weight: u32,
}

/// A simple oriented graph with positive vertex weights and no isolated
/// vertices. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedOrientedGraph {
    names: Vec<String>,
    weights: Vec<u32>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    in_degree: Vec<usize>,
}

impl WeightedOrientedGraph {
    /// Builds and validates a graph from `(name, weight)` pairs and
    /// `(tail, head)` index pairs.
    pub fn new(
        vertices: Vec<(String, u32)>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = HashMap::new();
        for (i, (name, weight)) in vertices.iter().enumerate() {
            if name.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if seen.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
            if *weight < 1 {
                return Err(GraphError::WeightTooSmall(name.clone(), *weight));
            }
        }
        let n = vertices.len();
        let (names, weights): (Vec<String>, Vec<u32>) = vertices.into_iter().unzip();

        let mut pairs = BTreeSet::new();
        let mut neighbors = vec![Vec::new(); n];
        let mut in_degree = vec![0; n];
        for &(u, v) in &edges {
            for endpoint in [u, v] {
                if endpoint >= n {
                    return Err(GraphError::UnknownVertex(format!("#{endpoint}")));
                }
            }
            if u == v {
                return Err(GraphError::Loop(names[u].clone()));
            }
            if pairs.contains(&(u, v)) {
                return Err(GraphError::MultiEdge(names[u].clone(), names[v].clone()));
            }
            if pairs.contains(&(v, u)) {
                return Err(GraphError::AntiParallel(names[v].clone(), names[u].clone()));
            }
            pairs.insert((u, v));
            neighbors[u].push(v);
            neighbors[v].push(u);
            in_degree[v] += 1;
        }
        for adj in &mut neighbors {
            adj.sort_unstable();
        }
        for i in 0..n {
            if neighbors[i].is_empty() {
                return Err(GraphError::IsolatedVertex(names[i].clone()));
            }
            if in_degree[i] == 0 && weights[i] != 1 {
                return Err(GraphError::SourceWeight(names[i].clone(), weights[i]));
            }
        }
        Ok(Self {
            names,
            weights,
            edges,
            neighbors,
            in_degree,
        })
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, GraphError> {
        let index: HashMap<&str, usize> = doc
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.as_str(), i))
            .collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (tail, head) in &doc.edges {
            let t = *index
                .get(tail.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(tail.clone()))?;
            let h = *index
                .get(head.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(head.clone()))?;
            edges.push((t, h));
        }
        let vertices = doc
            .vertices
            .iter()
            .map(|v| (v.name.clone(), v.weight))
            .collect();
        Self::new(vertices, edges)
    }

    /// Parses the JSON graph document format.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self
                .names
                .iter()
                .zip(&self.weights)
                .map(|(name, &weight)| VertexEntry {
                    name: name.clone(),
                    weight,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.names[u].clone(), self.names[v].clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph document serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex(&self, index: usize) -> VertexId {
        VertexId {
            index,
            name: self.names[index].clone(),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    /// Directed edges `(tail, head)` in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors in the underlying undirected graph, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Degree in the underlying undirected graph.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_degree[v] == 0
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    /// Edges with both endpoints in `component`, in input order.
    pub fn component_edges(&self, component: &[usize]) -> Vec<(usize, usize)> {
        let members: BTreeSet<usize> = component.iter().copied().collect();
        self.edges
            .iter()
            .copied()
            .filter(|(u, _)| members.contains(u))
            .collect()
    }

    /// The subgraph induced on one component, with vertices renumbered in
    /// increasing original index order.
    pub fn component_subgraph(&self, component: &[usize]) -> WeightedOrientedGraph {
        let mut sorted = component.to_vec();
        sorted.sort_unstable();
        let local: HashMap<usize, usize> =
            sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = sorted
            .iter()
            .map(|&v| (self.names[v].clone(), self.weights[v]))
            .collect();
        let edges = self
            .component_edges(&sorted)
            .into_iter()
            .map(|(u, v)| (local[&u], local[&v]))
            .collect();
        Self::new(vertices, edges).expect("a component of a valid graph is valid")
    }

    /// Disjoint union; every name is suffixed with `.k` for the 1-based part
    /// index `k`.
    pub fn disjoint_union(parts: &[WeightedOrientedGraph]) -> WeightedOrientedGraph {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let offset = vertices.len();
            for (name, &w) in part.names.iter().zip(&part.weights) {
                let name = if parts.len() == 1 {
                    name.clone()
                } else {
                    format!("{name}.{}", k + 1)
                };
                vertices.push((name, w));
            }
            edges.extend(part.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        }
        Self::new(vertices, edges).expect("disjoint union of valid graphs is valid")
    }

    /// Reverses the edges whose input positions are flagged, then resets the
    /// weight of every new source to 1. Heads keep their weights.
    pub fn reoriented(&self, flip: &[bool]) -> WeightedOrientedGraph {
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .zip(flip.iter().chain(std::iter::repeat(&false)))
            .map(|(&(u, v), &f)| if f { (v, u) } else { (u, v) })
            .collect();
        let mut has_in = vec![false; self.vertex_count()];
        for &(_, v) in &edges {
            has_in[v] = true;
        }
        let vertices = self
            .names
            .iter()
            .zip(&self.weights)
            .zip(&has_in)
            .map(|((name, &w), &incoming)| (name.clone(), if incoming { w } else { 1 }))
            .collect();
        Self::new(vertices, edges).expect("reorienting a valid graph keeps it valid")
    }
}

/// Connected components of the underlying undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    /// Each component's vertices, sorted; components ordered by smallest
    /// vertex index.
    pub components: Vec<Vec<usize>>,
}

impl ComponentDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

pub fn components(g: &WeightedOrientedGraph) -> ComponentDecomposition {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = id;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    ComponentDecomposition { components }
}

/// A two-coloring of one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Two-colors `component`. The X side is the side holding the tail of the
/// component's first edge in input order. Returns `None` on an odd cycle.
pub fn bipartition(g: &WeightedOrientedGraph, component: &[usize]) -> Option<Bipartition> {
    let (first_tail, _) = *g.component_edges(component).first()?;
    let mut color: HashMap<usize, bool> = HashMap::new();
    color.insert(first_tail, true);
    let mut queue = VecDeque::from([first_tail]);
    while let Some(u) = queue.pop_front() {
        let cu = color[&u];
        for &v in g.neighbors(u) {
            match color.get(&v) {
                Some(&cv) if cv == cu => return None,
                Some(_) => {}
                None => {
                    color.insert(v, !cu);
                    queue.push_back(v);
                }
            }
        }
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for &v in component {
        match color.get(&v) {
            Some(true) => x.push(v),
            Some(false) => y.push(v),
            None => return None,
        }
    }
    Some(Bipartition { x, y })
}

/// Two vertex-disjoint edges with no edge joining their endpoints.
pub type GapWitness = ((usize, usize), (usize, usize));

/// Returns `(gap_free, witness)` for one component of the underlying graph.
pub fn is_gap_free(
    g: &WeightedOrientedGraph,
    component: &[usize],
) -> (bool, Option<GapWitness>) {
    let edges = g.component_edges(component);
    let mut near = vec![false; g.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        for &a in [u, v].iter() {
            near[a] = true;
            for &b in g.neighbors(a) {
                near[b] = true;
            }
        }
        let gap = edges[i + 1..]
            .iter()
            .find(|&&(a, b)| !near[a] && !near[b]);
        for &a in [u, v].iter() {
            near[a] = false;
            for &b in g.neighbors(a) {
                near[b] = false;
            }
        }
        if let Some(&f) = gap {
            return (false, Some(((u, v), f)));
        }
    }
    (true, None)
}

/// The nested-neighborhood relabeling of a gap-free bipartite component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedOrder {
    /// X vertices by nondecreasing degree, ties by original index.
    pub x_order: Vec<usize>,
    /// Y vertices so that `N(x_order[i]) = y_order[..k[i]]`.
    pub y_order: Vec<usize>,
    /// Nondecreasing, last entry equals `|Y|`.
    pub k: Vec<usize>,
}

impl NestedOrder {
    /// The vertex `y_{k_i}` closing the neighborhood of the `i`-th X vertex.
    pub fn top_neighbor(&self, i: usize) -> usize {
        self.y_order[self.k[i] - 1]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("neighborhoods of the X side are not nested at `{0}`")]
pub struct NestedOrderViolation(pub String);

pub fn nested_order(
    g: &WeightedOrientedGraph,
    parts: &Bipartition,
) -> Result<NestedOrder, NestedOrderViolation> {
    let mut x_order = parts.x.clone();
    x_order.sort_by_key(|&v| (g.degree(v), v));

    let mut y_order: Vec<usize> = Vec::with_capacity(parts.y.len());
    let mut placed = BTreeSet::new();
    let mut k = Vec::with_capacity(x_order.len());
    for &x in &x_order {
        let mut fresh: Vec<usize> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|y| !placed.contains(y))
            .collect();
        fresh.sort_unstable();
        for &y in &fresh {
            placed.insert(y);
            y_order.push(y);
        }
        let ki = g.degree(x);
        let prefix: BTreeSet<usize> = y_order[..ki.min(y_order.len())].iter().copied().collect();
        let hood: BTreeSet<usize> = g.neighbors(x).iter().copied().collect();
        if ki > y_order.len() || prefix != hood {
            return Err(NestedOrderViolation(g.name(x).to_string()));
        }
        k.push(ki);
    }
    if y_order.len() != parts.y.len() {
        return Err(NestedOrderViolation("<Y not covered>".into()));
    }
    Ok(NestedOrder { x_order, y_order, k })
}

/// Per-component recognition result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentHypothesis {
    pub vertices: Vec<usize>,
    pub is_bipartite: bool,
    pub is_gap_free: bool,
    pub oriented_away_from_x: bool,
    pub bipartition: Option<Bipartition>,
    /// `max(|X|, |Y|)` when bipartite.
    pub b: Option<usize>,
    pub nested: Option<NestedOrder>,
    pub gap_witness: Option<GapWitness>,
}

impl ComponentHypothesis {
    pub fn holds(&self) -> bool {
        self.is_bipartite && self.is_gap_free && self.oriented_away_from_x
    }

    pub fn k_sequence(&self) -> Option<&[usize]> {
        self.nested.as_ref().map(|n| n.k.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub components: Vec<ComponentHypothesis>,
}

impl HypothesisReport {
    /// Every component is bipartite, gap-free and oriented away from X.
    pub fn applicable(&self) -> bool {
        self.components.iter().all(ComponentHypothesis::holds)
    }

    /// One human-readable line per failed condition.
    pub fn failures(&self, g: &WeightedOrientedGraph) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            let label = i + 1;
            if !c.is_bipartite {
                out.push(format!("component {label} is not bipartite"));
                continue;
            }
            if !c.is_gap_free {
                let detail = c
                    .gap_witness
                    .map(|((a, b), (p, q))| {
                        format!(
                            " ({}{} and {}{})",
                            g.name(a),
                            g.name(b),
                            g.name(p),
                            g.name(q)
                        )
                    })
                    .unwrap_or_default();
                out.push(format!("component {label} has a gap{detail}"));
            }
            if !c.oriented_away_from_x {
                out.push(format!("component {label} has an edge oriented into X"));
            }
        }
        out
    }
}

pub fn hypothesis_report(g: &WeightedOrientedGraph) -> HypothesisReport {
    let decomposition = components(g);
    let components = decomposition
        .components
        .iter()
        .map(|comp| {
            let parts = bipartition(g, comp);
            let (gap_free, gap_witness) = is_gap_free(g, comp);
            let oriented = parts.as_ref().is_some_and(|p| {
                let xs: BTreeSet<usize> = p.x.iter().copied().collect();
                g.component_edges(comp).iter().all(|(u, _)| xs.contains(u))
            });
            let nested = match &parts {
                Some(p) if gap_free => Some(
                    nested_order(g, p)
                        .expect("gap-free bipartite components have nested neighborhoods"),
                ),
                _ => None,
            };
            ComponentHypothesis {
                vertices: comp.clone(),
                is_bipartite: parts.is_some(),
                is_gap_free: gap_free,
                oriented_away_from_x: oriented,
                b: parts.as_ref().map(|p| p.x.len().max(p.y.len())),
                bipartition: parts,
                nested,
                gap_witness,
            }
        })
        .collect();
    HypothesisReport { components }
}

/// Draws a nondecreasing `k_1 <= ... <= k_l` with `k_1 >= 1`, `k_l = m`,
/// uniformly among all such sequences.
pub fn random_k_sequence<R: Rng>(l: usize, m: usize, rng: &mut R) -> Vec<usize> {
    // Stars and bars: a (l-1)-subset of {0..m+l-3} encodes the free prefix.
    let free = l - 1;
    let mut chosen = if free == 0 {
        Vec::new()
    } else {
        index::sample(rng, m + free - 1, free).into_vec()
    };
    chosen.sort_unstable();
    let mut k: Vec<usize> = chosen.iter().enumerate().map(|(i, &c)| c - i + 1).collect();
    k.push(m);
    k
}

/// Connected gap-free bipartite graph with `l` X-vertices (sources, weight 1)
/// and `m` Y-vertices (weights uniform in `1..=max_weight`), every edge
/// `x_i -> y_j` for `j <= k_i`.
pub fn random_gap_free_bipartite(
    l: usize,
    m: usize,
    max_weight: u32,
    seed: u64,
) -> WeightedOrientedGraph {
    assert!(l >= 1 && m >= 1 && max_weight >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = random_k_sequence(l, m, &mut rng);
    let mut vertices: Vec<(String, u32)> = (1..=l).map(|i| (format!("x{i}"), 1)).collect();
    vertices.extend((1..=m).map(|j| (format!("y{j}"), rng.gen_range(1..=max_weight))));
    let mut edges = Vec::new();
    for (i, &ki) in k.iter().enumerate() {
        edges.extend((0..ki).map(|j| (i, l + j)));
    }
    WeightedOrientedGraph::new(vertices, edges).expect("generated graph is valid")
}
