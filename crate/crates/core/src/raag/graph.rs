use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of vertices a defining graph may have; vertex sets are
/// stored as 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of a defining graph, stored as a bitmask.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0, |m, v| m | (1u64 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Smallest vertex in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// On-disk form of a defining graph:
/// `{"vertices": ["a","b","c"], "edges": [["a","b"],["b","c"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

/// A finite simplicial graph presenting a right-angled Artin group.
///
/// Vertex order is the input order and induces the letter order
/// `v1 < v1^-1 < v2 < v2^-1 < ...` used by every normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<VertexSet>,
}

impl fmt::Debug for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DefiningGraph")
            .field("vertices", &self.names)
            .field("edges", &self.edges())
            .finish()
    }
}

impl DefiningGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let file = GraphFile {
            vertices: vertices.iter().map(|s| s.as_ref().to_string()).collect(),
            edges: edges
                .iter()
                .map(|(u, v)| [u.as_ref().to_string(), v.as_ref().to_string()])
                .collect(),
        };
        Self::from_file(&file)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        if file.vertices.len() > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{} vertices exceeds the limit of {MAX_VERTICES}",
                file.vertices.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, name) in file.vertices.iter().enumerate() {
            validate_name(name)?;
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
        }
        let mut adjacency = vec![VertexSet::EMPTY; file.vertices.len()];
        for [u, v] in &file.edges {
            let lookup = |n: &String| {
                index
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::InvalidGraph(format!("edge endpoint `{n}` is not a vertex")))
            };
            let (iu, iv) = (lookup(u)?, lookup(v)?);
            if iu == iv {
                return Err(Error::InvalidGraph(format!("self-loop at `{u}`")));
            }
            adjacency[iu].insert(iv);
            adjacency[iv].insert(iu);
        }
        Ok(DefiningGraph { names: file.vertices.clone(), index, adjacency })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        }
    }

    /// Edgeless graph: the free group on the given generators.
    pub fn free<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        Self::new::<&str>(
            &vertices.iter().map(|s| s.as_ref()).collect::<Vec<_>>(),
            &[],
        )
    }

    /// Path `v0 - v1 - ... - v(n-1)`.
    pub fn path<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let names: Vec<&str> = vertices.iter().map(|s| s.as_ref()).collect();
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Self::new(&names, &edges)
    }

    /// Cycle on the given vertices, in order.
    pub fn cycle<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let names: Vec<&str> = vertices.iter().map(|s| s.as_ref()).collect();
        let n = names.len();
        let edges: Vec<(&str, &str)> = (0..n).map(|i| (names[i], names[(i + 1) % n])).collect();
        Self::new(&names, &edges)
    }

    /// Complete graph: a free abelian group.
    pub fn complete<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let names: Vec<&str> = vertices.iter().map(|s| s.as_ref()).collect();
        let mut edges = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                edges.push((names[i], names[j]));
            }
        }
        Self::new(&names, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet(if self.names.len() == 64 { u64::MAX } else { (1u64 << self.names.len()) - 1 })
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for n in names {
            set.insert(self.vertex(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn set_names(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.names.len() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertices adjacent to every vertex of `set`. The link of the empty set
    /// is every vertex.
    pub fn link(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(self.all_vertices(), |acc, v| acc.intersection(self.adjacency[v]))
            .difference(set)
    }

    pub fn star(&self, set: VertexSet) -> VertexSet {
        set.union(self.link(set))
    }

    /// Finest partition of `set` into blocks that are pairwise fully joined:
    /// the connected components of the complement of the induced subgraph.
    /// Blocks are ordered by their smallest vertex.
    pub fn join_factors(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut remaining = set;
        let mut blocks = Vec::new();
        while let Some(start) = remaining.first() {
            let mut block = VertexSet::singleton(start);
            let mut frontier = block;
            remaining = remaining.difference(block);
            while let Some(v) = frontier.first() {
                frontier = frontier.difference(VertexSet::singleton(v));
                // non-neighbours of v still unassigned
                let fresh = remaining.difference(self.adjacency[v]);
                block = block.union(fresh);
                frontier = frontier.union(fresh);
                remaining = remaining.difference(fresh);
            }
            blocks.push(block);
        }
        blocks
    }

    /// Whether the complement of the induced subgraph on `set` is connected,
    /// i.e. `set` does not split as a join.
    pub fn is_irreducible(&self, set: VertexSet) -> bool {
        !set.is_empty() && self.join_factors(set).len() == 1
    }
}

fn validate_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && !name.contains(char::is_whitespace)
        && !name.contains('^')
        && !name.contains('(')
        && !name.contains(')');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGraph(format!("bad vertex name `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> DefiningGraph {
        DefiningGraph::path(&["a", "b", "c"]).unwrap()
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(DefiningGraph::new(&["a", "a"], &[]).is_err());
        assert!(DefiningGraph::new(&["a", "b"], &[("a", "a")]).is_err());
        assert!(DefiningGraph::new(&["a", "b"], &[("a", "z")]).is_err());
        assert!(DefiningGraph::from_json(r#"{"vertices": ["a", "b c"]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = DefiningGraph::from_json(r#"{"vertices": ["a","b","c"], "edges": [["a","b"],["b","c"]]}"#)
            .unwrap();
        assert_eq!(g, path3());
        assert_eq!(DefiningGraph::from_file(&g.to_file()).unwrap(), g);
    }

    #[test]
    fn links_in_path() {
        let g = path3();
        let a = g.vertex_set(&["a"]).unwrap();
        let ac = g.vertex_set(&["a", "c"]).unwrap();
        assert_eq!(g.link(a), g.vertex_set(&["b"]).unwrap());
        assert_eq!(g.link(ac), g.vertex_set(&["b"]).unwrap());
        assert_eq!(g.star(a), g.vertex_set(&["a", "b"]).unwrap());
        assert_eq!(g.link(VertexSet::EMPTY), g.all_vertices());
    }

    #[test]
    fn join_factor_examples() {
        let edge = DefiningGraph::path(&["a", "b"]).unwrap();
        assert_eq!(
            edge.join_factors(edge.all_vertices()),
            vec![VertexSet::singleton(0), VertexSet::singleton(1)]
        );
        let g = path3();
        let ac = g.vertex_set(&["a", "c"]).unwrap();
        assert_eq!(g.join_factors(ac), vec![ac]);
        // complement of C5 is C5 again, hence connected
        let c5 = DefiningGraph::cycle(&["a", "b", "c", "d", "e"]).unwrap();
        assert_eq!(c5.join_factors(c5.all_vertices()).len(), 1);
        assert_eq!(g.join_factors(g.all_vertices()).len(), 2);
    }

    #[test]
    fn join_factor_blocks_are_joined() {
        let c5 = DefiningGraph::cycle(&["a", "b", "c", "d", "e"]).unwrap();
        for mask in 1u64..32 {
            let set = VertexSet(mask);
            let blocks = c5.join_factors(set);
            assert_eq!(blocks.iter().fold(VertexSet::EMPTY, |a, b| a.union(*b)), set);
            for (i, bi) in blocks.iter().enumerate() {
                for bj in &blocks[i + 1..] {
                    for u in bi.iter() {
                        assert!(bj.is_subset(c5.neighbors(u)));
                    }
                }
            }
        }
    }
}
