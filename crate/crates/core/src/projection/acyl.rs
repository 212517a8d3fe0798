use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::enumerate_ball;
use crate::conjugator::random_reduced_word;
use crate::error::{Budget, Error, Result};
use crate::raag::NormalForm;

use super::axis::{AxisCoset, AxisFamily};
use super::complex::{ProjectionComplex, Universe};
use super::free::FreeGroup;

/// Elements of a group ball moving a point by at most `eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiStabilizer {
    pub center: String,
    pub eta: usize,
    pub radius: usize,
    pub members: Vec<NormalForm>,
}

/// `Stab_eta(x)` for the action of a free group on its Cayley tree.
pub fn tree_quasi_stabilizer(
    group: &FreeGroup,
    x: &NormalForm,
    eta: usize,
    radius: usize,
    budget: &Budget,
) -> Result<QuasiStabilizer> {
    let ball = enumerate_ball(group.raag(), radius, budget)?;
    let mut members: Vec<NormalForm> = ball
        .iter()
        .filter(|g| group.distance(x, &group.mul(g, x)) <= eta)
        .cloned()
        .collect();
    members.sort();
    Ok(QuasiStabilizer { center: group.format(x), eta, radius, members })
}

/// The action of a group ball on the members of a universe. Translates that
/// leave the universe are recorded as unknown.
pub struct Translates {
    pub radius: usize,
    pub ball: Vec<NormalForm>,
    n: usize,
    table: Vec<u32>,
}

const OUTSIDE: u32 = u32::MAX;

impl Translates {
    pub fn new(universe: &Universe, radius: usize, budget: &Budget) -> Result<Self> {
        let ball: Vec<NormalForm> =
            enumerate_ball(universe.family.group.raag(), radius, budget)?.iter().cloned().collect();
        let n = universe.len();
        budget.check(ball.len() * n, "tabulating translates")?;
        let table = ball
            .par_iter()
            .flat_map_iter(|g| {
                universe.cosets.iter().map(move |c| {
                    let t = universe.family.translate(g, c);
                    universe.index_of(&t).map_or(OUTSIDE, |i| i as u32)
                })
            })
            .collect();
        Ok(Translates { radius, ball, n, table })
    }

    /// Index of `ball[g] . member y`, if it is in the universe.
    pub fn image(&self, g: usize, y: usize) -> Option<usize> {
        let t = self.table[g * self.n + y];
        (t != OUTSIDE).then_some(t as usize)
    }

    /// Ball indices of `Stab_eta(y)` among elements of length at most `radius`.
    pub fn stabilizer_ids(
        &self,
        pk: &ProjectionComplex,
        y: usize,
        eta: usize,
        radius: usize,
    ) -> Vec<usize> {
        (0..self.ball.len())
            .filter(|&g| self.ball[g].len() <= radius)
            .filter(|&g| {
                self.image(g, y).and_then(|t| pk.distance(y, t)).is_some_and(|d| d <= eta)
            })
            .collect()
    }
}

/// `Stab_eta(y)` for the action on the projection complex, truncated to the
/// universe.
pub fn complex_quasi_stabilizer(
    universe: &Universe,
    pk: &ProjectionComplex,
    translates: &Translates,
    y: usize,
    eta: usize,
) -> QuasiStabilizer {
    let members = translates
        .stabilizer_ids(pk, y, eta, translates.radius)
        .into_iter()
        .map(|g| translates.ball[g].clone())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    QuasiStabilizer {
        center: universe.family.group.format(&universe.cosets[y].rep),
        eta,
        radius: translates.radius,
        members,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointStabilizerReport {
    pub r: usize,
    /// Least `r'` with `N_r(S_x) ∩ N_r(S_y) ⊆ N_r'(S_x ∩ S_y)` on the sample;
    /// `None` when the intersection is empty but the left side is not.
    pub r_prime: Option<usize>,
    pub tested: usize,
    pub intersection: usize,
}

fn neighbourhood(
    group: &FreeGroup,
    set: &[NormalForm],
    ball: &[NormalForm],
) -> HashSet<NormalForm> {
    set.iter().flat_map(|s| ball.iter().map(move |b| group.mul(s, b))).collect()
}

pub fn joint_stabilizer_check(
    group: &FreeGroup,
    sx: &[NormalForm],
    sy: &[NormalForm],
    r: usize,
    budget: &Budget,
) -> Result<JointStabilizerReport> {
    let ball: Vec<NormalForm> = enumerate_ball(group.raag(), r, budget)?.iter().cloned().collect();
    budget.check(ball.len() * sx.len().max(sy.len()), "joint stabilizer neighbourhoods")?;
    let nx = neighbourhood(group, sx, &ball);
    let ny = neighbourhood(group, sy, &ball);
    let sy_set: HashSet<&NormalForm> = sy.iter().collect();
    let both: Vec<&NormalForm> = sx.iter().filter(|s| sy_set.contains(s)).collect();
    let mut tested = 0;
    let mut r_prime = Some(0);
    for t in nx.iter().filter(|t| ny.contains(*t)) {
        tested += 1;
        let d = both.iter().map(|s| group.distance(s, t)).min();
        r_prime = match (r_prime, d) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    Ok(JointStabilizerReport { r, r_prime, tested, intersection: both.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcylindricityRow {
    pub eps: usize,
    /// Least tested distance from which the joint quasi-stabilizer count no
    /// longer changes when the group ball grows by one.
    #[serde(rename = "R")]
    pub r: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub radius: usize,
}

/// Joint quasi-stabilizers of `Y_0 = E(h)` and far vertices. For each
/// `eps`, `N(R)` is the largest `|Stab_eps(Y_0) ∩ Stab_eps(y)|` over `y` with
/// `d_T(Y_0, y) >= R`, counted in balls of radius `radius` and `radius + 1`.
pub fn acylindricity(
    universe: &Universe,
    pk: &ProjectionComplex,
    eps_values: &[usize],
    radius: usize,
    budget: &Budget,
) -> Result<Vec<AcylindricityRow>> {
    let y0 = universe
        .index_of(&universe.family.base_coset())
        .ok_or_else(|| Error::input("the universe must contain E(h)"))?;
    let translates = Translates::new(universe, radius + 1, budget)?;
    let n = universe.len();
    let far = (0..n).filter_map(|y| pk.distance(y0, y)).max().unwrap_or(0);
    let mut rows = Vec::new();
    for &eps in eps_values {
        let base: HashSet<usize> = translates.stabilizer_ids(pk, y0, eps, radius + 1).into_iter().collect();
        // joint counts per y, in the small and the large ball
        let counts: Vec<(usize, usize)> = (0..n)
            .into_par_iter()
            .map(|y| {
                let ids = translates.stabilizer_ids(pk, y, eps, radius + 1);
                let joint: Vec<usize> = ids.into_iter().filter(|g| base.contains(g)).collect();
                let small = joint.iter().filter(|&&g| translates.ball[g].len() <= radius).count();
                (small, joint.len())
            })
            .collect();
        let mut found = None;
        for r in 1..=far {
            let at = |pick: fn(&(usize, usize)) -> usize| {
                (0..n)
                    .filter(|&y| pk.distance(y0, y).is_some_and(|d| d >= r))
                    .map(|y| pick(&counts[y]))
                    .max()
                    .unwrap_or(0)
            };
            let (small, large) = (at(|c| c.0), at(|c| c.1));
            if small == large {
                found = Some((r, small));
                break;
            }
        }
        rows.push(AcylindricityRow { eps, r: found.map(|f| f.0), n: found.map(|f| f.1), radius });
    }
    Ok(rows)
}

/// `V_eps(y)` and its diameter, or why it was not evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VSetReport {
    pub y: String,
    pub eps: usize,
    #[serde(rename = "M")]
    pub m: usize,
    /// `d_T(Y_0, y)`.
    pub distance: usize,
    pub required_distance: usize,
    pub applicable: bool,
    pub members: Vec<String>,
    /// `None` for an empty set.
    pub diameter: Option<usize>,
}

fn diameter(group: &FreeGroup, set: &[NormalForm]) -> Option<usize> {
    let mut best = None;
    for (i, u) in set.iter().enumerate() {
        for v in &set[i..] {
            best = best.max(Some(group.distance(u, v)));
        }
    }
    best
}

/// `d_T(Y_0, y)`, see [`AxisFamily::standard_distance`].
pub fn path_distance(family: &AxisFamily, y: &AxisCoset, k: usize) -> Result<usize> {
    family.standard_distance(&family.base_coset(), y, k)
}

/// Exact `V_0(y)`: elements of `E(h)` within `M` of the coset `y`.
pub fn v_set_exact(
    family: &AxisFamily,
    y: &AxisCoset,
    m: usize,
    k: usize,
    required_distance: usize,
) -> Result<VSetReport> {
    let g = &family.group;
    let distance = path_distance(family, y, k)?;
    let applicable = distance >= required_distance;
    let mut members = Vec::new();
    if applicable {
        let period = family.rho.len().max(1) as i64;
        let reach = (m + y.rep.len() + 2 * family.root.conj.len()) as i64 / period + 2;
        for j in -reach..=reach {
            let gj = g.power(&family.rho, j);
            let gj_inv = g.inv(&gj);
            let near = (-2 * reach..=2 * reach)
                .map(|k| g.mul3(&gj_inv, &y.rep, &g.power(&family.rho, k)).len())
                .min()
                .unwrap_or(usize::MAX);
            if near <= m {
                members.push(gj);
            }
        }
    }
    Ok(VSetReport {
        y: g.format(&y.rep),
        eps: 0,
        m,
        distance,
        required_distance,
        applicable,
        diameter: diameter(g, &members),
        members: members.iter().map(|w| g.format(w)).collect(),
    })
}

/// Parameters of a truncated `V_eps(y)` evaluation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VSetQuery {
    pub eps: usize,
    pub m: usize,
    /// Group elements of `V` are taken from the ball of this radius.
    pub radius: usize,
    pub required_distance: usize,
}

/// `V_eps(y)` for a member `y`, with group elements restricted to a ball and
/// `pi^-1` restricted to a ball `M` larger; `translates` must reach that far.
pub fn v_set_truncated(
    universe: &Universe,
    pk: &ProjectionComplex,
    translates: &Translates,
    y: usize,
    q: VSetQuery,
) -> Result<VSetReport> {
    let g = &universe.family.group;
    if translates.radius < q.radius + q.m {
        return Err(Error::input("the translate table does not cover the search ball"));
    }
    let y0 = universe
        .index_of(&universe.family.base_coset())
        .ok_or_else(|| Error::input("the universe must contain E(h)"))?;
    let distance = pk
        .distance(y0, y)
        .ok_or_else(|| Error::input("the vertex is not connected to E(h) in the complex"))?;
    let applicable = distance >= q.required_distance;
    let mut members = Vec::new();
    if applicable {
        let near: Vec<&NormalForm> = (0..translates.ball.len())
            .filter(|&h| translates.ball[h].len() <= q.radius + q.m)
            .filter(|&h| {
                translates.image(h, y0).and_then(|t| pk.distance(t, y)).is_some_and(|d| d <= q.eps)
            })
            .map(|h| &translates.ball[h])
            .collect();
        for s in translates.stabilizer_ids(pk, y0, q.eps, q.radius) {
            let s = &translates.ball[s];
            if near.iter().any(|h| g.distance(s, h) <= q.m) {
                members.push(s.clone());
            }
        }
        members.sort();
    }
    Ok(VSetReport {
        y: g.format(&universe.cosets[y].rep),
        eps: q.eps,
        m: q.m,
        distance,
        required_distance: q.required_distance,
        applicable,
        diameter: diameter(g, &members),
        members: members.iter().map(|w| g.format(w)).collect(),
    })
}

pub const F_HEADER: [&str; 4] = ["M", "max_diam", "samples", "eps"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FRow {
    #[serde(rename = "M")]
    pub m: usize,
    /// Largest diameter of a nonempty `V_0(y)`; `None` if all were empty.
    pub max_diam: Option<usize>,
    pub samples: usize,
    pub eps: usize,
}

/// Empirical `f(M)` for `eps = 0`: the largest diameter of `V_0(y)` over all
/// cosets with reps of length at most two and `samples` random reps of
/// length `1..=M`.
pub fn f_measure(
    family: &AxisFamily,
    ms: std::ops::RangeInclusive<usize>,
    k: usize,
    required_distance: usize,
    samples: usize,
    seed: u64,
    budget: &Budget,
) -> Result<Vec<FRow>> {
    let g = &family.group;
    let short: Vec<NormalForm> =
        enumerate_ball(g.raag(), 2, budget)?.iter().cloned().collect();
    ms.into_par_iter()
        .map(|m| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(m as u64);
            let mut ys: Vec<AxisCoset> = short.iter().map(|c| family.coset(c)).collect();
            for _ in 0..samples {
                let len = rng.gen_range(1..=m.max(1));
                ys.push(family.coset(&random_reduced_word(g.raag(), len, &mut rng)));
            }
            ys.sort();
            ys.dedup();
            let mut max_diam = None;
            let mut evaluated = 0;
            for y in &ys {
                let v = v_set_exact(family, y, m, k, required_distance)?;
                if v.applicable {
                    evaluated += 1;
                    max_diam = max_diam.max(v.diameter);
                }
            }
            Ok(FRow { m, max_diam, samples: evaluated, eps: 0 })
        })
        .collect()
}

/// `f(M)` for `eps >= 1`, over the members of a truncated universe.
pub fn f_measure_truncated(
    universe: &Universe,
    pk: &ProjectionComplex,
    ms: std::ops::RangeInclusive<usize>,
    eps: usize,
    radius: usize,
    required_distance: usize,
    budget: &Budget,
) -> Result<Vec<FRow>> {
    let translates = Translates::new(universe, radius + *ms.end(), budget)?;
    ms.map(|m| {
        let q = VSetQuery { eps, m, radius, required_distance };
        let reports: Vec<VSetReport> = (0..universe.len())
            .into_par_iter()
            .map(|y| v_set_truncated(universe, pk, &translates, y, q))
            .collect::<Result<_>>()?;
        let applicable: Vec<&VSetReport> = reports.iter().filter(|v| v.applicable).collect();
        Ok(FRow {
            m,
            max_diam: applicable.iter().filter_map(|v| v.diameter).max(),
            samples: applicable.len(),
            eps,
        })
    })
    .collect()
}

/// CSV with `# key=value` metadata lines ahead of the header. Empty
/// diameters are written as `empty`.
pub fn f_table_csv(rows: &[FRow], meta: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in meta {
        out.push_str(&format!("# {k}={v}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(F_HEADER).expect("in-memory write");
    for r in rows {
        let diam = r.max_diam.map_or("empty".to_string(), |d| d.to_string());
        w.write_record([r.m.to_string(), diam, r.samples.to_string(), r.eps.to_string()])
            .expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family() -> AxisFamily {
        let f = FreeGroup::new(2).unwrap();
        let h = f.word("a").unwrap();
        AxisFamily::new(f, &h).unwrap()
    }

    #[test]
    fn free_action_has_trivial_stabilizers() {
        let fam = family();
        let b = Budget::default();
        let one = NormalForm::identity();
        let s = tree_quasi_stabilizer(&fam.group, &one, 0, 3, &b).unwrap();
        assert_eq!(s.members, vec![one.clone()]);
        for r in 0..4 {
            let rep = joint_stabilizer_check(&fam.group, &s.members, &s.members, r, &b).unwrap();
            assert_eq!(rep.r_prime, Some(r));
        }
    }

    #[test]
    fn v_set_examples() {
        let fam = family();
        let y0 = fam.base_coset();
        let v = v_set_exact(&fam, &y0, 3, 1, 1).unwrap();
        assert!(!v.applicable);
        let y = fam.coset(&fam.group.word("b").unwrap());
        assert_eq!(v_set_exact(&fam, &y, 0, 1, 1).unwrap().diameter, None);
        let v = v_set_exact(&fam, &y, 3, 1, 1).unwrap();
        assert_eq!(v.members, vec!["a^-1 a^-1", "a^-1", "", "a", "a a"]);
        assert_eq!(v.diameter, Some(4));
    }

    #[test]
    fn f_csv_shape() {
        let rows = [FRow { m: 0, max_diam: None, samples: 3, eps: 0 }];
        let csv = f_table_csv(&rows, &[("seed".into(), "1".into())]);
        assert_eq!(csv, "# seed=1\nM,max_diam,samples,eps\n0,empty,3,0\n");
    }
}
