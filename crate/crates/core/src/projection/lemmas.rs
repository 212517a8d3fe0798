use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::complex::{ProjectionComplex, Universe};

/// Outcome of one check, in the shape written to report files.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub parameters: Value,
    pub universe_bound: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub worst_case: Value,
    pub pass: bool,
}

/// `Y_K` lists for every ordered pair, as member indices.
pub struct PathTable {
    /// Interior members satisfy `d_W(X, Z) >= threshold`.
    pub threshold: usize,
    n: usize,
    paths: Vec<Vec<u32>>,
}

impl PathTable {
    pub fn new(universe: &Universe, k: usize) -> Result<Self> {
        let n = universe.len();
        let paths = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let ids = universe.path_ids(idx / n, idx % n, k)?;
                Ok(ids.into_iter().map(|w| w as u32).collect())
            })
            .collect::<Result<_>>()?;
        Ok(PathTable { threshold: k, n, paths })
    }

    /// The standard paths that go with `P_K`: cosets with `d_W > K`, so that
    /// two vertices are adjacent exactly when their path has no interior.
    pub fn for_complex(universe: &Universe, k: usize) -> Result<Self> {
        Self::new(universe, k + 1)
    }

    pub fn interior(&self, x: usize, z: usize) -> &[u32] {
        &self.paths[x * self.n + z]
    }

    /// Endpoints and interior in order.
    pub fn vertices(&self, x: usize, z: usize) -> Vec<usize> {
        let mut v = vec![x];
        v.extend(self.interior(x, z).iter().map(|&w| w as usize));
        if z != x {
            v.push(z);
        }
        v
    }
}

/// Members of `Y_K(x, z)` missing from `Y_K(x, y) ∪ Y_K(y, z)`, in path
/// order, and whether they sit consecutively on the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleDefect {
    pub missing: Vec<usize>,
    pub consecutive: bool,
}

pub fn triangle_defect(paths: &PathTable, x: usize, y: usize, z: usize) -> TriangleDefect {
    let full = paths.interior(x, z);
    let (a, b) = (paths.interior(x, y), paths.interior(y, z));
    let mut positions = Vec::new();
    for (pos, w) in full.iter().enumerate() {
        if !a.contains(w) && !b.contains(w) {
            positions.push(pos);
        }
    }
    let consecutive = positions.windows(2).all(|p| p[1] == p[0] + 1);
    TriangleDefect { missing: positions.iter().map(|&p| full[p] as usize).collect(), consecutive }
}

/// Every triple of members: at most two standard-path members escape the
/// other two sides, and two escapees are adjacent on the path.
pub fn thin_triangle_check(universe: &Universe, paths: &PathTable, k: usize) -> Report {
    let n = universe.len();
    let worst = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut worst: Option<(usize, bool, [usize; 3])> = None;
            for z in 0..n {
                if paths.interior(x, z).is_empty() {
                    continue;
                }
                for y in 0..n {
                    let d = triangle_defect(paths, x, y, z);
                    let key = (d.missing.len(), !d.consecutive);
                    if worst.is_none_or(|(m, nc, _)| key > (m, nc)) {
                        worst = Some((key.0, key.1, [x, y, z]));
                    }
                }
            }
            worst
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(p), Some(q)) => Some(if (q.0, q.1) > (p.0, p.1) { q } else { p }),
                (p, None) => p,
                (None, q) => q,
            },
        );
    let (missing, nonconsecutive, triple) = match worst {
        Some((m, nc, t)) => (m, nc, Some(t)),
        None => (0, false, None),
    };
    let fmt = |i: usize| universe.family.group.format(&universe.cosets[i].rep);
    Report {
        check: "thin_triangles".into(),
        parameters: json!({
            "triples": n * n * n,
            "universe_size": n,
            "path_threshold": paths.threshold,
        }),
        universe_bound: universe.bound,
        k,
        worst_case: json!({
            "missing": missing,
            "nonconsecutive": nonconsecutive,
            "triple": triple.map(|t| t.map(fmt)),
        }),
        pass: missing <= 2 && !nonconsecutive,
    }
}

/// Largest distance from a standard-path member to the nearest vertex of
/// `path`, a path in `P_K` from `x` to `z`. `None` when the standard path has
/// no interior.
pub fn bottleneck_witness(
    pk: &ProjectionComplex,
    paths: &PathTable,
    x: usize,
    z: usize,
    path: &[usize],
) -> Result<Option<usize>> {
    if path.first() != Some(&x) || path.last() != Some(&z) {
        return Err(Error::input("the path does not join the given endpoints"));
    }
    if let Some(w) = path.windows(2).find(|w| w[0] != w[1] && !pk.adjacent(w[0], w[1])) {
        return Err(Error::input(format!("vertices {} and {} are not adjacent", w[0], w[1])));
    }
    let mut worst = None;
    for &xi in paths.interior(x, z) {
        let d = path
            .iter()
            .map(|&y| pk.distance(xi as usize, y).unwrap_or(usize::MAX))
            .min()
            .unwrap_or(usize::MAX);
        worst = worst.max(Some(d));
    }
    Ok(worst)
}

/// For every pair with a nonempty standard path: the shortest path and
/// `detours` concatenations of shortest paths through random members.
pub fn bottleneck_check(
    universe: &Universe,
    pk: &ProjectionComplex,
    paths: &PathTable,
    detours: usize,
    seed: u64,
) -> Result<Report> {
    let n = universe.len();
    let per_x: Vec<(usize, Option<(usize, [usize; 2])>)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(x as u64);
            let mut count = 0;
            let mut worst: Option<(usize, [usize; 2])> = None;
            for z in 0..n {
                if paths.interior(x, z).is_empty() {
                    continue;
                }
                let Some(direct) = pk.shortest_path(x, z) else {
                    worst = Some((usize::MAX, [x, z]));
                    continue;
                };
                let mut candidates = vec![direct];
                for _ in 0..detours {
                    let w = rng.gen_range(0..n);
                    if let (Some(mut p), Some(q)) = (pk.shortest_path(x, w), pk.shortest_path(w, z)) {
                        p.extend_from_slice(&q[1..]);
                        candidates.push(p);
                    }
                }
                for p in candidates {
                    count += 1;
                    if let Some(d) = bottleneck_witness(pk, paths, x, z, &p)? {
                        if worst.is_none_or(|(m, _)| d > m) {
                            worst = Some((d, [x, z]));
                        }
                    }
                }
            }
            Ok((count, worst))
        })
        .collect::<Result<_>>()?;
    let checked: usize = per_x.iter().map(|p| p.0).sum();
    let worst = per_x.iter().filter_map(|p| p.1).max_by_key(|w| w.0);
    let fmt = |i: usize| universe.family.group.format(&universe.cosets[i].rep);
    let distance = worst.map(|w| w.0);
    Ok(Report {
        check: "bottleneck".into(),
        parameters: json!({
            "paths_checked": checked,
            "detours_per_pair": detours,
            "seed": seed,
            "path_threshold": paths.threshold,
        }),
        universe_bound: universe.bound,
        k: pk.k,
        worst_case: json!({
            "witness_distance": distance.filter(|&d| d != usize::MAX),
            "disconnected": distance == Some(usize::MAX),
            "pair": worst.map(|w| w.1.map(fmt)),
        }),
        pass: distance.is_none_or(|d| d <= 2),
    })
}

/// Largest `| |i - j| - d_T(v_i, v_j) |` over all standard paths and all
/// pairs of their vertices: the additive constant for multiplicative
/// constant one.
pub fn quasi_geodesic_epsilon(pk: &ProjectionComplex, paths: &PathTable) -> Option<usize> {
    let n = pk.len();
    (0..n)
        .into_par_iter()
        .map(|x| {
            let mut eps = Some(0usize);
            for z in 0..n {
                let v = paths.vertices(x, z);
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        let gap = j - i;
                        eps = match (eps, pk.distance(v[i], v[j])) {
                            (Some(e), Some(d)) => Some(e.max(gap.abs_diff(d))),
                            _ => None,
                        };
                    }
                }
            }
            eps
        })
        .reduce(|| Some(0), |a, b| Some(a?.max(b?)))
}

pub fn quasi_geodesic_report(universe: &Universe, pk: &ProjectionComplex, paths: &PathTable) -> Report {
    let eps = quasi_geodesic_epsilon(pk, paths);
    Report {
        check: "standard_path_quasi_geodesic".into(),
        parameters: json!({
            "lambda": 1,
            "universe_size": universe.len(),
            "path_threshold": paths.threshold,
        }),
        universe_bound: universe.bound,
        k: pk.k,
        worst_case: json!({ "epsilon": eps }),
        pass: eps.is_some(),
    }
}

/// Outcome of scanning `K` upward.
#[derive(Clone, Debug, Serialize)]
pub struct KScan {
    #[serde(rename = "K")]
    pub k: Option<usize>,
    pub tried: Vec<KTrial>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KTrial {
    #[serde(rename = "K")]
    pub k: usize,
    pub thin_triangles: Report,
    pub bottleneck: Report,
}

/// Try `K = max(|r|, 1), ...` until both the thin triangle and the
/// bottleneck checks pass.
pub fn scan_k(universe: &Universe, k_max: usize, detours: usize, seed: u64) -> Result<KScan> {
    let mut tried = Vec::new();
    for k in universe.family.period().max(1)..=k_max {
        let pk = ProjectionComplex::build(universe, k)?;
        let paths = PathTable::for_complex(universe, k)?;
        let thin = thin_triangle_check(universe, &paths, k);
        let bottleneck = bottleneck_check(universe, &pk, &paths, detours, seed)?;
        let pass = thin.pass && bottleneck.pass;
        tried.push(KTrial { k, thin_triangles: thin, bottleneck });
        if pass {
            return Ok(KScan { k: Some(k), tried });
        }
    }
    Ok(KScan { k: None, tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::projection::{AxisFamily, FreeGroup};

    fn universe(bound: usize) -> Universe {
        let f = FreeGroup::new(2).unwrap();
        let h = f.word("a").unwrap();
        Universe::new(AxisFamily::new(f, &h).unwrap(), bound, &Budget::default()).unwrap()
    }

    #[test]
    fn degenerate_triangle_is_exact() {
        let u = universe(3);
        let paths = PathTable::new(&u, 1).unwrap();
        for x in 0..u.len() {
            for z in 0..u.len() {
                assert!(triangle_defect(&paths, x, x, z).missing.is_empty());
                assert!(triangle_defect(&paths, x, z, z).missing.is_empty());
            }
        }
    }

    #[test]
    fn trivial_bottleneck_cases() {
        let u = universe(2);
        let pk = ProjectionComplex::build(&u, 1).unwrap();
        let paths = PathTable::new(&u, 1).unwrap();
        assert_eq!(bottleneck_witness(&pk, &paths, 0, 0, &[0]).unwrap(), None);
        assert!(bottleneck_witness(&pk, &paths, 0, 1, &[0]).is_err());
    }

    #[test]
    fn report_json_shape() {
        let u = universe(1);
        let paths = PathTable::new(&u, 1).unwrap();
        let r = thin_triangle_check(&u, &paths, 1);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["check", "parameters", "universe_bound", "K", "worst_case", "pass"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
