use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::raag::{Letter, NormalForm};

use super::free::{FreeGroup, RootData};

/// A coset `c E(h)`, identified with the translated axis `c p . Axis(r)`
/// where `h = p r^n p^-1`.
#[derive(Clone, Debug)]
pub struct AxisCoset {
    /// Shortlex-least element of the coset.
    pub rep: NormalForm,
    /// `rep * p`, the point of the axis at parameter 0.
    pub base: NormalForm,
}

impl PartialEq for AxisCoset {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Eq for AxisCoset {}

impl Hash for AxisCoset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state)
    }
}

impl Ord for AxisCoset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep.cmp(&other.rep)
    }
}

impl PartialOrd for AxisCoset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Closed parameter interval on an axis.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub lo: i64,
    pub hi: i64,
}

impl Segment {
    pub fn point(t: i64) -> Self {
        Segment { lo: t, hi: t }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn hull(self, other: Segment) -> Segment {
        Segment { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }
}

/// The family of cosets of `E(h) = <p r p^-1>` in a free group, with their
/// axes and nearest-point projections in the Cayley tree.
#[derive(Clone, Debug)]
pub struct AxisFamily {
    pub group: FreeGroup,
    pub h: NormalForm,
    pub root: RootData,
    /// `p r p^-1`, generating `E(h)`.
    pub rho: NormalForm,
    root_inv: Vec<Letter>,
}

impl AxisFamily {
    pub fn new(group: FreeGroup, h: &[Letter]) -> Result<Self> {
        let root = group.primitive_root(h)?;
        let rho = group.conjugate(&root.conj, &root.root);
        let root_inv = group.inv(&root.root).into_letters();
        Ok(AxisFamily { h: group.reduce(h), group, rho, root, root_inv })
    }

    /// `|r|`; distinct axes share fewer than this many edges.
    pub fn period(&self) -> usize {
        self.root.root.len()
    }

    pub fn coset(&self, c: &[Letter]) -> AxisCoset {
        let g = &self.group;
        let c = g.reduce(c);
        // |c rho^k| >= |k| |r| - |c| - 2|p| exceeds |c| outside this window
        let w = (2 * c.len() + 2 * self.root.conj.len()) as i64 / self.period() as i64 + 1;
        let mut rep = c.clone();
        let mut cur = g.power(&self.rho, -w);
        let rho = &self.rho;
        cur = g.mul(&c, &cur);
        for _ in -w..=w {
            if cur < rep {
                rep = cur.clone();
            }
            cur = g.mul(&cur, rho);
        }
        let base = g.mul(&rep, &self.root.conj);
        AxisCoset { rep, base }
    }

    /// `E(h)` itself.
    pub fn base_coset(&self) -> AxisCoset {
        self.coset(&[])
    }

    pub fn translate(&self, g: &[Letter], y: &AxisCoset) -> AxisCoset {
        self.coset(&self.group.mul(g, &y.rep))
    }

    /// Axis vertex at parameter `t`.
    pub fn point(&self, y: &AxisCoset, t: i64) -> NormalForm {
        let (dir, n) = if t >= 0 {
            (self.root.root.letters(), t as usize)
        } else {
            (&self.root_inv[..], (-t) as usize)
        };
        let m = dir.len();
        let tail: Vec<Letter> = (0..n).map(|i| dir[i % m]).collect();
        self.group.mul(&y.base, &tail)
    }

    fn dist_to_point(&self, x: &[Letter], y: &AxisCoset, t: i64) -> usize {
        self.group.distance(x, &self.point(y, t))
    }

    /// Parameter of the nearest point of the axis of `y` to the vertex `x`.
    /// Distance along the axis is V-shaped with slopes of exactly one, and the
    /// minimizer lies within `d(x, point(0))` of zero.
    pub fn project_vertex(&self, y: &AxisCoset, x: &[Letter]) -> i64 {
        let w = self.dist_to_point(x, y, 0) as i64;
        let (mut lo, mut hi) = (-w, w);
        // least t in [lo, hi] where the distance starts increasing
        while lo < hi {
            let mid = lo + (hi - lo).div_euclid(2);
            if self.dist_to_point(x, y, mid + 1) > self.dist_to_point(x, y, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    pub fn distance_to_axis(&self, y: &AxisCoset, x: &[Letter]) -> usize {
        self.dist_to_point(x, y, self.project_vertex(y, x))
    }

    /// Nearest-point projection of the axis of `x` onto the axis of `y`: a
    /// single point when the axes are disjoint, their overlap otherwise.
    pub fn project(&self, y: &AxisCoset, x: &AxisCoset) -> Result<Segment> {
        if x == y {
            return Err(Error::input("a coset has no projection onto itself"));
        }
        let d = self.distance_to_axis(y, &x.base) as i64;
        // beyond the bridge foot and the (short) overlap, points of x all
        // project to the ends of the segment
        let s = d + 2 * self.period() as i64 + 2;
        let a = self.project_vertex(y, &self.point(x, -s));
        let b = self.project_vertex(y, &self.point(x, s));
        Ok(Segment { lo: a.min(b), hi: a.max(b) })
    }

    /// Diameter of the union of the projections of `x` and `z` onto `y`.
    pub fn proj_distance(&self, y: &AxisCoset, x: &AxisCoset, z: &AxisCoset) -> Result<usize> {
        Ok(self.project(y, x)?.hull(self.project(y, z)?).len())
    }

    /// Cosets whose axis contains the tree edge `{u, u x}`.
    pub fn cosets_through_edge(&self, u: &[Letter], x: Letter) -> Vec<AxisCoset> {
        let g = &self.group;
        let r = self.root.root.letters();
        let p_inv = g.inv(&self.root.conj);
        let v = g.mul(u, &[x]);
        let mut out = Vec::new();
        for j in 0..r.len() {
            // the axis reads r[j] when stepping from base r^k r[..j]
            let start = if r[j] == x {
                u
            } else if r[j] == x.inverse() {
                v.letters()
            } else {
                continue;
            };
            let a = g.mul(start, &g.inv(&r[..j]));
            out.push(self.coset(&g.mul(&a, &p_inv)));
        }
        out
    }

    /// Tree edges near where the axes of `x` and `z` come closest: the bridge
    /// between them plus a margin of each axis around its projection.
    fn junction_edges(&self, x: &AxisCoset, z: &AxisCoset) -> Result<Vec<(NormalForm, Letter)>> {
        let g = &self.group;
        let px = self.project(x, z)?;
        let pz = self.project(z, x)?;
        let mut edges = Vec::new();
        let margin = self.period() as i64 + 1;
        for (axis, seg) in [(x, px), (z, pz)] {
            for t in seg.lo - margin..seg.hi + margin {
                let u = self.point(axis, t);
                let v = self.point(axis, t + 1);
                edges.push(edge_letter(g, u, &v));
            }
        }
        let path = g.geodesic(&self.point(x, px.lo), &self.point(z, pz.lo));
        for w in path.windows(2) {
            edges.push(edge_letter(g, w[0].clone(), &w[1]));
        }
        Ok(edges)
    }

    /// All cosets `w` (other than `x`, `z`) with `d_w(x, z) >= k`, in the
    /// order they are met going from `x` to `z`. Requires `k >= |r|` so that
    /// such axes must run along the junction between `x` and `z`.
    pub fn between(&self, x: &AxisCoset, z: &AxisCoset, k: usize) -> Result<Vec<AxisCoset>> {
        Ok(self.between_scored(x, z, k)?.into_iter().map(|(w, _)| w).collect())
    }

    /// [`Self::between`] together with each `d_w(x, z)`.
    pub fn between_scored(
        &self,
        x: &AxisCoset,
        z: &AxisCoset,
        k: usize,
    ) -> Result<Vec<(AxisCoset, usize)>> {
        if k < self.period() {
            return Err(Error::input(format!(
                "threshold {k} is below the root length {}",
                self.period()
            )));
        }
        if x == z {
            return Ok(Vec::new());
        }
        let mut seen = std::collections::HashSet::new();
        let mut found = Vec::new();
        for (u, l) in self.junction_edges(x, z)? {
            for w in self.cosets_through_edge(&u, l) {
                if &w == x || &w == z || !seen.insert(w.rep.clone()) {
                    continue;
                }
                let d = self.proj_distance(&w, x, z)?;
                if d >= k {
                    found.push((w, d));
                }
            }
        }
        let mut ws: Vec<AxisCoset> = found.iter().map(|(w, _)| w.clone()).collect();
        self.sort_between(x, z, &mut ws)?;
        let score: std::collections::HashMap<NormalForm, usize> =
            found.into_iter().map(|(w, d)| (w.rep, d)).collect();
        Ok(ws.into_iter().map(|w| {
            let d = score[&w.rep];
            (w, d)
        }).collect())
    }

    /// Distance in `P_K` read off the standard path with threshold `K + 1`;
    /// these paths are geodesics of the complex.
    pub fn standard_distance(&self, x: &AxisCoset, z: &AxisCoset, k: usize) -> Result<usize> {
        if x == z {
            return Ok(0);
        }
        Ok(self.between(x, z, k + 1)?.len() + 1)
    }

    /// Order cosets between `x` and `z` by where their projection hull sits
    /// along the way from `x` to `z`.
    pub fn sort_between(&self, x: &AxisCoset, z: &AxisCoset, ws: &mut [AxisCoset]) -> Result<()> {
        if ws.len() < 2 {
            return Ok(());
        }
        let origin = self.point(x, self.project(x, z)?.lo);
        let mut keyed: Vec<((usize, usize), AxisCoset)> = Vec::with_capacity(ws.len());
        for w in ws.iter() {
            let seg = self.project(w, x)?.hull(self.project(w, z)?);
            let d1 = self.group.distance(&origin, &self.point(w, seg.lo));
            let d2 = self.group.distance(&origin, &self.point(w, seg.hi));
            keyed.push(((d1.min(d2), d1.max(d2)), w.clone()));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        for (slot, (_, w)) in ws.iter_mut().zip(keyed) {
            *slot = w;
        }
        Ok(())
    }
}

fn edge_letter(g: &FreeGroup, u: NormalForm, v: &NormalForm) -> (NormalForm, Letter) {
    let step = g.mul(&g.inv(&u), v);
    debug_assert_eq!(step.len(), 1);
    (u, step[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family() -> AxisFamily {
        let f = FreeGroup::new(2).unwrap();
        let h = f.word("a").unwrap();
        AxisFamily::new(f, &h).unwrap()
    }

    fn coset(fam: &AxisFamily, s: &str) -> AxisCoset {
        fam.coset(&fam.group.word(s).unwrap())
    }

    #[test]
    fn canonical_reps() {
        let fam = family();
        assert_eq!(coset(&fam, "b a3"), coset(&fam, "b"));
        assert_eq!(fam.group.format(&coset(&fam, "a^-2 b a").rep), "a^-1 a^-1 b");
        let f = FreeGroup::new(2).unwrap();
        let h = f.word("b a a b^-1").unwrap();
        let fam = AxisFamily::new(f, &h).unwrap();
        assert!(coset(&fam, "b a5 b^-1").rep.is_identity());
    }

    #[test]
    fn vertex_projection_examples() {
        let fam = family();
        let y0 = fam.base_coset();
        let b = fam.group.word("b").unwrap();
        assert_eq!(fam.project_vertex(&y0, &b), 0);
        let x = fam.group.word("a5 b a^-1").unwrap();
        assert_eq!(fam.project_vertex(&y0, &x), 5);
    }

    #[test]
    fn coset_projection_examples() {
        let fam = family();
        let y0 = fam.base_coset();
        assert_eq!(fam.project(&y0, &coset(&fam, "b")).unwrap(), Segment::point(0));
        assert_eq!(fam.project(&y0, &coset(&fam, "a5 b")).unwrap(), Segment::point(5));
        assert!(fam.project(&y0, &y0).is_err());
        let d = fam.proj_distance(&y0, &coset(&fam, "b"), &coset(&fam, "b^-1")).unwrap();
        assert_eq!(d, 0);
        let d = fam.proj_distance(&y0, &coset(&fam, "a5 b"), &coset(&fam, "b")).unwrap();
        assert_eq!(d, 5);
    }

    #[test]
    fn cosets_through_an_edge() {
        let fam = family();
        let u = fam.group.word("b").unwrap();
        let a = fam.group.raag().letter("a", false).unwrap();
        let bb = fam.group.raag().letter("b", false).unwrap();
        assert_eq!(fam.cosets_through_edge(&u, a), vec![coset(&fam, "b")]);
        assert!(fam.cosets_through_edge(&u, bb).is_empty());
    }

    #[test]
    fn between_example() {
        let fam = family();
        let x = fam.base_coset();
        let z = coset(&fam, "b a10 b");
        let mid = fam.between(&x, &z, 10).unwrap();
        assert_eq!(mid, vec![coset(&fam, "b")]);
        assert!(fam.between(&x, &z, 11).unwrap().is_empty());
        assert!(fam.between(&x, &coset(&fam, "b"), 1).unwrap().is_empty());
    }
}
