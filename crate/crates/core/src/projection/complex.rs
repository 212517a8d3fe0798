use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::enumerate_ball;
use crate::error::{Budget, Error, Result};
use crate::raag::NormalForm;

use super::axis::{AxisCoset, AxisFamily, Segment};

/// Interior cosets between a pair with their projection distances, ordered
/// from the first coset of the pair to the second.
type Between = Vec<(u32, u32)>;

/// A finite set of cosets closed under adding the cosets lying between two
/// members. The seeds are all canonical reps of length at most `bound`, or
/// an explicit list.
#[derive(Clone, Debug)]
pub struct Universe {
    pub family: AxisFamily,
    pub bound: usize,
    pub cosets: Vec<AxisCoset>,
    /// Members added by the closure step, beyond the length bound.
    pub closure_added: usize,
    index: HashMap<NormalForm, u32>,
    between: HashMap<(u32, u32), Between>,
}

/// `Y_K(X, Z)` together with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPath {
    pub from: AxisCoset,
    pub to: AxisCoset,
    pub k: usize,
    pub interior: Vec<AxisCoset>,
}

impl StandardPath {
    pub fn vertices(&self) -> Vec<AxisCoset> {
        let mut v = Vec::with_capacity(self.interior.len() + 2);
        v.push(self.from.clone());
        v.extend(self.interior.iter().cloned());
        if self.to != self.from {
            v.push(self.to.clone());
        }
        v
    }
}

impl Universe {
    pub fn new(family: AxisFamily, bound: usize, budget: &Budget) -> Result<Self> {
        let ball = enumerate_ball(family.group.raag(), bound, budget)?;
        let cosets: Vec<AxisCoset> = ball.iter().map(|w| family.coset(w)).collect();
        Self::close(family, bound, cosets, budget)
    }

    /// The closure of the cosets `c E(h)` for the given `c`. `bound` is
    /// reported as the longest canonical rep among them.
    pub fn with_members(family: AxisFamily, reps: &[NormalForm], budget: &Budget) -> Result<Self> {
        let cosets: Vec<AxisCoset> = reps.iter().map(|c| family.coset(c)).collect();
        let bound = cosets.iter().map(|c| c.rep.len()).max().unwrap_or(0);
        Self::close(family, bound, cosets, budget)
    }

    fn close(family: AxisFamily, bound: usize, mut cosets: Vec<AxisCoset>, budget: &Budget) -> Result<Self> {
        cosets.sort();
        cosets.dedup();
        let base_len = cosets.len();
        let mut index: HashMap<NormalForm, u32> =
            cosets.iter().enumerate().map(|(i, c)| (c.rep.clone(), i as u32)).collect();
        let threshold = family.period();
        let mut between: HashMap<(u32, u32), Between> = HashMap::new();
        let mut done = 0usize;
        // pairs (i, j) with i < j and j >= done still need their between set
        while done < cosets.len() {
            let n = cosets.len();
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|&(_, j)| j >= done).collect();
            let found: Vec<((usize, usize), Vec<(AxisCoset, usize)>)> = pairs
                .par_iter()
                .map(|&(i, j)| Ok(((i, j), family.between_scored(&cosets[i], &cosets[j], threshold)?)))
                .collect::<Result<_>>()?;
            done = n;
            let mut pending = Vec::new();
            for ((i, j), list) in found {
                for (w, _) in &list {
                    if !index.contains_key(&w.rep) {
                        index.insert(w.rep.clone(), cosets.len() as u32);
                        cosets.push(w.clone());
                    }
                }
                budget.check(cosets.len() * cosets.len(), "closing the coset universe")?;
                if !list.is_empty() {
                    pending.push(((i as u32, j as u32), list));
                }
            }
            for (key, list) in pending {
                let ids = list.into_iter().map(|(w, d)| (index[&w.rep], d as u32)).collect();
                between.insert(key, ids);
            }
        }
        let closure_added = cosets.len() - base_len;
        Ok(Universe { family, bound, cosets, closure_added, index, between })
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn index_of(&self, c: &AxisCoset) -> Option<usize> {
        self.index.get(&c.rep).map(|&i| i as usize)
    }

    pub fn contains(&self, c: &AxisCoset) -> bool {
        self.index.contains_key(&c.rep)
    }

    /// Indices of `Y_K(X, Z)` for members `x`, `z`, ordered from `x`.
    pub fn path_ids(&self, x: usize, z: usize, k: usize) -> Result<Vec<usize>> {
        if k < self.family.period() {
            return Err(Error::input(format!(
                "threshold {k} is below the root length {}",
                self.family.period()
            )));
        }
        if x == z {
            return Ok(Vec::new());
        }
        let key = (x.min(z) as u32, x.max(z) as u32);
        let mut ids: Vec<usize> = self
            .between
            .get(&key)
            .map(|l| l.iter().filter(|&&(_, d)| d as usize >= k).map(|&(w, _)| w as usize).collect())
            .unwrap_or_default();
        if x > z {
            ids.reverse();
        }
        Ok(ids)
    }

    /// Standard path between two cosets; every interior coset must be a
    /// member of the universe.
    pub fn standard_path(&self, x: &AxisCoset, z: &AxisCoset, k: usize) -> Result<StandardPath> {
        let interior = match (self.index_of(x), self.index_of(z)) {
            (Some(i), Some(j)) => {
                self.path_ids(i, j, k)?.into_iter().map(|w| self.cosets[w].clone()).collect()
            }
            _ => {
                let ws = self.family.between(x, z, k)?;
                if let Some(w) = ws.iter().find(|w| !self.contains(w)) {
                    return Err(Error::IncompleteUniverse(format!(
                        "coset {} lies between the endpoints but outside the universe",
                        self.family.group.format(&w.rep)
                    )));
                }
                ws
            }
        };
        Ok(StandardPath { from: x.clone(), to: z.clone(), k, interior })
    }

    /// `Y_K(X, Z)` by testing every member of the universe; the reference
    /// for [`Self::path_ids`].
    pub fn path_ids_exhaustive(
        &self,
        table: &ProjectionTable,
        x: usize,
        z: usize,
        k: usize,
    ) -> Result<Vec<usize>> {
        if x == z {
            return Ok(Vec::new());
        }
        let mut ws: Vec<AxisCoset> = (0..self.len())
            .filter(|&w| w != x && w != z && table.distance(w, x, z) >= k)
            .map(|w| self.cosets[w].clone())
            .collect();
        self.family.sort_between(&self.cosets[x], &self.cosets[z], &mut ws)?;
        Ok(ws.iter().map(|w| self.index[&w.rep] as usize).collect())
    }

    /// Largest projection distance recorded between any pair, or zero.
    pub fn max_recorded_distance(&self) -> usize {
        self.between.values().flatten().map(|&(_, d)| d as usize).max().unwrap_or(0)
    }
}

/// Projections of every member axis onto every other.
#[derive(Clone, Debug)]
pub struct ProjectionTable {
    n: usize,
    proj: Vec<Segment>,
}

impl ProjectionTable {
    pub fn new(universe: &Universe) -> Result<Self> {
        let n = universe.len();
        let fam = &universe.family;
        let proj = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (y, x) = (idx / n, idx % n);
                if x == y {
                    Ok(Segment::point(0))
                } else {
                    fam.project(&universe.cosets[y], &universe.cosets[x])
                }
            })
            .collect::<Result<_>>()?;
        Ok(ProjectionTable { n, proj })
    }

    /// Projection of member `x` onto member `y`.
    pub fn proj(&self, y: usize, x: usize) -> Segment {
        self.proj[y * self.n + x]
    }

    /// `d_y(x, z)`; `y` must differ from both.
    pub fn distance(&self, y: usize, x: usize, z: usize) -> usize {
        self.proj(y, x).hull(self.proj(y, z)).len()
    }
}

/// The projection complex `P_K` restricted to a universe, with all-pairs
/// graph distances.
#[derive(Clone, Debug)]
pub struct ProjectionComplex {
    pub k: usize,
    pub adjacency: Vec<Vec<u32>>,
    dist: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub diameter: Option<usize>,
}

pub const UNREACHABLE: u16 = u16::MAX;

impl ProjectionComplex {
    /// Edges from the recorded between sets: `X ~ Z` iff nothing lies
    /// between them at threshold `K + 1`.
    pub fn build(universe: &Universe, k: usize) -> Result<Self> {
        let n = universe.len();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = Vec::new();
                for j in 0..n {
                    if j != i && universe.path_ids(i, j, k + 1)?.is_empty() {
                        row.push(j as u32);
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_adjacency(k, rows))
    }

    /// Edges straight from the definition: every member `Y` is tested.
    pub fn build_exhaustive(universe: &Universe, table: &ProjectionTable, k: usize) -> Self {
        let n = universe.len();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .filter(|&j| {
                        j != i && (0..n).all(|y| y == i || y == j || table.distance(y, i, j) <= k)
                    })
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        Self::from_adjacency(k, rows)
    }

    fn from_adjacency(k: usize, adjacency: Vec<Vec<u32>>) -> Self {
        let n = adjacency.len();
        let dist: Vec<u16> = (0..n)
            .into_par_iter()
            .flat_map_iter(|s| bfs(&adjacency, s))
            .collect();
        ProjectionComplex { k, adjacency, dist }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&(j as u32)).is_ok()
    }

    /// Graph distance, `None` when disconnected.
    pub fn distance(&self, i: usize, j: usize) -> Option<usize> {
        let d = self.dist[i * self.len() + j];
        (d != UNREACHABLE).then_some(d as usize)
    }

    /// A shortest path from `i` to `j`, choosing the least next vertex.
    pub fn shortest_path(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let mut d = self.distance(i, j)?;
        let mut path = vec![i];
        let mut cur = i;
        while d > 0 {
            cur = self.adjacency[cur]
                .iter()
                .map(|&v| v as usize)
                .find(|&v| self.distance(v, j) == Some(d - 1))
                .expect("distances come from the same graph");
            path.push(cur);
            d -= 1;
        }
        Some(path)
    }

    pub fn summary(&self) -> ComplexSummary {
        let connected = self.dist.iter().all(|&d| d != UNREACHABLE);
        ComplexSummary {
            k: self.k,
            vertices: self.len(),
            edges: self.edge_count(),
            connected,
            diameter: connected.then(|| self.dist.iter().copied().max().unwrap_or(0) as usize),
        }
    }
}

fn bfs(adjacency: &[Vec<u32>], s: usize) -> Vec<u16> {
    let mut dist = vec![UNREACHABLE; adjacency.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = dist[u] + 1;
                queue.push_back(v as usize);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::FreeGroup;

    fn universe(bound: usize) -> Universe {
        let f = FreeGroup::new(2).unwrap();
        let h = f.word("a").unwrap();
        Universe::new(AxisFamily::new(f, &h).unwrap(), bound, &Budget::default()).unwrap()
    }

    #[test]
    fn universe_sizes() {
        // reps are the reduced words not ending in a^{+-1}
        assert_eq!(universe(0).len(), 1);
        assert_eq!(universe(2).len(), 1 + 2 + 6);
        let u = universe(3);
        assert_eq!(u.len(), 1 + 2 + 6 + 18);
        assert_eq!(u.closure_added, 0);
    }

    #[test]
    fn single_vertex_complex_has_no_edges() {
        let u = universe(0);
        let pk = ProjectionComplex::build(&u, 1).unwrap();
        assert_eq!(pk.edge_count(), 0);
        assert!(pk.summary().connected);
    }

    #[test]
    fn fast_and_exhaustive_builds_agree() {
        let u = universe(3);
        let table = ProjectionTable::new(&u).unwrap();
        for k in 1..4 {
            let fast = ProjectionComplex::build(&u, k).unwrap();
            let slow = ProjectionComplex::build_exhaustive(&u, &table, k);
            assert_eq!(fast.adjacency, slow.adjacency, "K = {k}");
        }
    }

    #[test]
    fn standard_path_outside_universe_is_reported() {
        let u = universe(2);
        let fam = &u.family;
        let x = fam.base_coset();
        let z = fam.coset(&fam.group.word("b a10 b a10 b").unwrap());
        let err = u.standard_path(&x, &z, 5).unwrap_err();
        assert!(matches!(err, Error::IncompleteUniverse(_)));
        let z = fam.coset(&fam.group.word("b a10 b").unwrap());
        let p = u.standard_path(&x, &z, 5).unwrap();
        assert_eq!(p.interior, vec![fam.coset(&fam.group.word("b").unwrap())]);
    }
}
