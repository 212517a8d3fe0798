use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conjugator::random_reduced_word;

use crate::error::{Budget, Error, Result};
use crate::raag::{Letter, NormalForm};

use super::acyl::FRow;
use super::axis::{AxisCoset, AxisFamily};

/// Parameters of the short-conjugator construction through the complex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    #[serde(rename = "K")]
    pub k: usize,
    /// Number of periods of `a` spanned by `P_a`.
    pub m: usize,
    /// `a` is loxodromic when `d_T(Y_0, a^{2n} Y_0) > d_T(Y_0, a^n Y_0)`.
    pub lox_power: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { k: 1, m: 1, lox_power: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub a: String,
    pub b: String,
    pub g: String,
    pub config: PipelineConfig,
    /// `g' = b^r g`.
    pub b_power: i64,
    pub g_normalized: String,
    pub p: String,
    pub q: String,
    pub d_gp_q: usize,
    pub p_prime: String,
    pub v: String,
    pub y_a: String,
    pub y_b: String,
    pub y_a_prime: String,
    pub y_b_prime: String,
    pub d_ya_v: usize,
    pub d_yb_w: usize,
    pub d_ya_prime: usize,
    pub d_yb_prime: usize,
    /// `d_G(y_b, g' y_a)` against `f(m|a| + m|b|)`.
    pub local_distance: usize,
    pub f_argument: usize,
    pub f_value: usize,
    pub local_bound_holds: bool,
    pub g_len: usize,
    /// `|a| + |b| + f(m|a| + m|b|)`.
    pub bound: usize,
    pub min_conjugator_len: Option<usize>,
    pub pass: bool,
}

/// `f(M)` from a measured table; an empty `V` contributes zero.
pub fn f_lookup(table: &[FRow], m: usize) -> Result<usize> {
    table
        .iter()
        .find(|r| r.m == m)
        .map(|r| r.max_diam.unwrap_or(0))
        .ok_or_else(|| Error::input(format!("the f table does not cover M = {m}")))
}

struct Geometry<'a> {
    fam: &'a AxisFamily,
    k: usize,
    y0: AxisCoset,
}

impl Geometry<'_> {
    fn d(&self, x: &AxisCoset, z: &AxisCoset) -> Result<usize> {
        self.fam.standard_distance(x, z, self.k)
    }

    fn path(&self, x: &AxisCoset, z: &AxisCoset) -> Result<Vec<AxisCoset>> {
        let mut v = vec![x.clone()];
        if x != z {
            v.extend(self.fam.between(x, z, self.k + 1)?);
            v.push(z.clone());
        }
        Ok(v)
    }

    fn orbit(&self, g: &[Letter], n: i64) -> AxisCoset {
        let gn = self.fam.group.power(g, n);
        self.fam.translate(&gn, &self.y0)
    }

    fn loxodromic(&self, g: &[Letter], n: usize) -> Result<bool> {
        let near = self.d(&self.y0, &self.orbit(g, n as i64))?;
        let far = self.d(&self.y0, &self.orbit(g, 2 * n as i64))?;
        Ok(far > near)
    }

    /// Vertex of the standard path from `g^-N Y_0` to `g^N Y_0` closest to
    /// `Y_0`; the first one on ties.
    fn axis_foot(&self, g: &[Letter], n: usize) -> Result<AxisCoset> {
        let axis = self.path(&self.orbit(g, -(n as i64)), &self.orbit(g, n as i64))?;
        let mut best: Option<(usize, AxisCoset)> = None;
        for c in axis {
            let d = self.d(&self.y0, &c)?;
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, c));
            }
        }
        Ok(best.expect("paths contain their endpoints").1)
    }

    /// Prefix `start * w[..i]` whose translate of `Y_0` is nearest `target`,
    /// shortest prefix on ties.
    fn nearest_prefix(
        &self,
        start: &[Letter],
        w: &[Letter],
        target: &AxisCoset,
    ) -> Result<(NormalForm, usize)> {
        let g = &self.fam.group;
        let mut best: Option<(usize, NormalForm)> = None;
        for i in 0..=w.len() {
            let y = g.mul(start, &w[..i]);
            let d = self.d(&self.fam.translate(&y, &self.y0), target)?;
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, y));
            }
        }
        let (d, y) = best.expect("the empty prefix is a candidate");
        Ok((y, d))
    }

    /// `p'` and the vertex `v` of `gamma_{x,1}` closest to it, for the
    /// element `x` with axis foot `p`.
    fn corner(&self, x: &[Letter], p: &AxisCoset, m: usize) -> Result<(AxisCoset, AxisCoset)> {
        let gamma = self.path(&self.y0, p)?;
        let xm = self.fam.group.power(x, m as i64);
        let big_p = self.path(p, &self.fam.translate(&xm, p))?;
        let mut p_prime = p.clone();
        let mut far = 0;
        for c in gamma.iter().filter(|c| big_p.contains(c)) {
            let d = self.d(p, c)?;
            if d > far {
                far = d;
                p_prime = c.clone();
            }
        }
        let gamma1 = self.path(&self.y0, &self.orbit(x, 1))?;
        let mut best: Option<(usize, AxisCoset)> = None;
        for c in gamma1 {
            let d = self.d(&c, &p_prime)?;
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, c));
            }
        }
        Ok((p_prime, best.expect("paths contain their endpoints").1))
    }
}

/// Follow the construction of a short conjugator through the projection
/// complex of `h` for conjugate loxodromic `a`, `b` with `g a g^-1 = b`, and
/// test `|g'| <= |a| + |b| + f(m|a| + m|b|)` for the normalized `g'`.
pub fn theorem_c_pipeline(
    fam: &AxisFamily,
    a: &[Letter],
    b: &[Letter],
    g: &[Letter],
    f_table: &[FRow],
    cfg: PipelineConfig,
    budget: &Budget,
) -> Result<PipelineReport> {
    let grp = &fam.group;
    let (a, b, g) = (grp.reduce(a), grp.reduce(b), grp.reduce(g));
    if grp.conjugate(&g, &a) != b {
        return Err(Error::input("g a g^-1 differs from b"));
    }
    if cfg.k + 1 < fam.period() || cfg.m == 0 {
        return Err(Error::input("need K + 1 >= |root| and m >= 1"));
    }
    let geo = Geometry { fam, k: cfg.k, y0: fam.base_coset() };
    for (name, x) in [("a", &a), ("b", &b)] {
        if x.is_identity() || !geo.loxodromic(x, cfg.lox_power)? {
            return Err(Error::input(format!(
                "{name} = '{}' is not loxodromic on the projection complex",
                grp.format(x)
            )));
        }
    }
    let n = cfg.m + 2;
    let p = geo.axis_foot(&a, n)?;
    let q = geo.axis_foot(&b, n)?;

    // replace g by b^r g so that g p lands as close to q as possible
    let reach = 2 * n as i64 + 2;
    let mut best: Option<((usize, usize), i64, NormalForm)> = None;
    for r in -reach..=reach {
        let cand = grp.mul(&grp.power(&b, r), &g);
        let key = (geo.d(&fam.translate(&cand, &p), &q)?, cand.len());
        if best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
            best = Some((key, r, cand));
        }
    }
    let ((d_gp_q, _), b_power, g1) = best.expect("the range is nonempty");

    let (p_prime, v) = geo.corner(&a, &p, cfg.m)?;
    let (_, w) = geo.corner(&b, &q, cfg.m)?;
    let (y_a, d_ya_v) = geo.nearest_prefix(&[], &a, &v)?;
    let (y_b, d_yb_w) = geo.nearest_prefix(&[], &b, &w)?;
    let am = grp.power(&a, cfg.m as i64);
    let bm = grp.power(&b, cfg.m as i64);
    let am1 = grp.power(&a, cfg.m as i64 - 1);
    let bm1 = grp.power(&b, cfg.m as i64 - 1);
    let (y_a_prime, d_ya_prime) = geo.nearest_prefix(&am1, &a, &fam.translate(&am, &p))?;
    let (y_b_prime, d_yb_prime) = geo.nearest_prefix(&bm1, &b, &fam.translate(&bm, &q))?;

    let local_distance = grp.distance(&y_b, &grp.mul(&g1, &y_a));
    let f_argument = cfg.m * (a.len() + b.len());
    let f_value = f_lookup(f_table, f_argument)?;
    let bound = a.len() + b.len() + f_value;
    let min_conjugator_len = grp
        .raag()
        .minimal_conjugator(&a, &b, budget)?
        .map(|c| c.len());
    let fmt = |w: &[Letter]| grp.format(w);
    Ok(PipelineReport {
        a: fmt(&a),
        b: fmt(&b),
        g: fmt(&g),
        config: cfg,
        b_power,
        g_normalized: fmt(&g1),
        p: fmt(&p.rep),
        q: fmt(&q.rep),
        d_gp_q,
        p_prime: fmt(&p_prime.rep),
        v: fmt(&v.rep),
        y_a: fmt(&y_a),
        y_b: fmt(&y_b),
        y_a_prime: fmt(&y_a_prime),
        y_b_prime: fmt(&y_b_prime),
        d_ya_v,
        d_yb_w,
        d_ya_prime,
        d_yb_prime,
        local_distance,
        f_argument,
        f_value,
        local_bound_holds: local_distance <= f_value,
        g_len: g1.len(),
        bound,
        min_conjugator_len,
        pass: g1.len() <= bound,
    })
}

/// Seeded conjugate pairs `(a, b = g a g^-1, g)` with `a` cyclically
/// reduced of length `1..=max_a` and loxodromic, `|g| <= max_g`.
pub fn sample_loxodromic_pairs(
    fam: &AxisFamily,
    count: usize,
    max_a: usize,
    max_g: usize,
    seed: u64,
    cfg: PipelineConfig,
) -> Result<Vec<(NormalForm, NormalForm, NormalForm)>> {
    let grp = &fam.group;
    let geo = Geometry { fam, k: cfg.k, y0: fam.base_coset() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0usize;
    while out.len() < count {
        draws += 1;
        if draws > 1000 * count.max(1) {
            return Err(Error::input("loxodromic samples are too rare for these lengths"));
        }
        let len = rng.gen_range(1..=max_a.max(1));
        let (_, a) = grp.cyclic_reduce(&grp.reduce(&random_reduced_word(grp.raag(), len, &mut rng)));
        let glen = rng.gen_range(0..=max_g);
        let g = grp.reduce(&random_reduced_word(grp.raag(), glen, &mut rng));
        if a.is_identity() || !geo.loxodromic(&a, cfg.lox_power)? {
            continue;
        }
        let b = grp.conjugate(&g, &a);
        out.push((a, b, g));
    }
    Ok(out)
}
