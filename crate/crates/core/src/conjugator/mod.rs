//! Conjugacy decision, conjugator construction and shortening, and the
//! conjugator length experiment.

mod experiment;

pub use experiment::{
    bucket_ratios, fit_linear_bound, random_reduced_word, BucketStat, ClfConfig, ClfRow, ClfTable,
    LinearFit, CLF_HEADER,
};

use serde::Serialize;

use crate::cayley::{is_conjugator, shortest_conjugator_bruteforce};
use crate::error::{Budget, Error, Result};
use crate::hhs::TracePrefixes;
use crate::raag::{invert_letters, Letter, NormalForm, Raag};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugatorSource {
    /// Cyclic reduction, rotation path and shortening.
    Pipeline,
    /// Exhaustive search inside the bound after the pipeline overshot it.
    Fallback,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjugacyCertificate {
    pub a: NormalForm,
    pub b: NormalForm,
    pub conjugator: NormalForm,
    /// `conjugator * a * conjugator^-1 = b`, rechecked.
    pub valid: bool,
    pub bound_k: f64,
    pub bound_c: f64,
    pub within_bound: bool,
    pub source: ConjugatorSource,
}

impl ConjugacyCertificate {
    pub fn bound(&self) -> f64 {
        linear_bound(self.bound_k, self.bound_c, &self.a, &self.b)
    }
}

fn linear_bound(k: f64, c: f64, a: &NormalForm, b: &NormalForm) -> f64 {
    k * (a.len() + b.len()) as f64 + c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerGenerators {
    pub owner: NormalForm,
    pub generators: Vec<NormalForm>,
}

impl Raag {
    pub fn are_conjugate(&self, a: &[Letter], b: &[Letter], budget: &Budget) -> Result<bool> {
        let (_, ca) = self.cyclic_reduce(a);
        let (_, cb) = self.cyclic_reduce(b);
        if ca.len() != cb.len() || self.support(&ca) != self.support(&cb) {
            return Ok(false);
        }
        Ok(self.rotation_closure(&ca, budget)?[0] == self.rotation_closure(&cb, budget)?[0])
    }

    /// `q r p^-1` where `a = p c_a p^-1`, `b = q c_b q^-1` and the rotation
    /// path gives `r c_a r^-1 = c_b`. `None` when not conjugate.
    pub fn pipeline_conjugator(
        &self,
        a: &[Letter],
        b: &[Letter],
        budget: &Budget,
    ) -> Result<Option<NormalForm>> {
        let (p, ca) = self.cyclic_reduce(a);
        let (q, cb) = self.cyclic_reduce(b);
        if ca.len() != cb.len() || self.support(&ca) != self.support(&cb) {
            return Ok(None);
        }
        Ok(self
            .rotation_path(&ca, &cb, budget)?
            .map(|r| self.product(&[&q, &r, &invert_letters(&p)])))
    }

    /// Shortest `r` with `r^k = c` for some `k >= 1`, for a cyclically reduced
    /// `c`. Roots of geodesic powers are trace prefixes, so only those are
    /// tried.
    pub fn primitive_root(&self, c: &NormalForm, budget: &Budget) -> Result<(NormalForm, usize)> {
        let n = c.len();
        if n == 0 {
            return Ok((NormalForm::identity(), 1));
        }
        let prefixes = TracePrefixes::new(self, c, budget)?;
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            for &m in prefixes.masks.iter().filter(|m| m.count_ones() as usize == d) {
                let r = self.normal_form(&TracePrefixes::word(c, m));
                if &self.power(&r, (n / d) as i64) == c {
                    return Ok((r, n / d));
                }
            }
        }
        Ok((c.clone(), 1))
    }

    /// Generators of the centralizer of `b`: conjugated primitive roots of the
    /// join pieces of its cyclic core, and conjugated link generators.
    pub fn centralizer_generators(
        &self,
        b: &[Letter],
        budget: &Budget,
    ) -> Result<CentralizerGenerators> {
        let owner = self.normal_form(b);
        let big = self.big(&owner);
        let q = &big.prefix;
        let mut gens = Vec::new();
        let mut push = |z: &[Letter]| {
            gens.push(self.conjugate(q, z));
            gens.push(self.conjugate(q, &invert_letters(z)));
        };
        let mut support = crate::VertexSet::EMPTY;
        for f in &big.factors {
            support = support.union(self.support(f));
            let (root, _) = self.primitive_root(f, budget)?;
            push(&root);
        }
        if !owner.is_identity() {
            for v in self.link(support).iter() {
                push(&[Letter::pos(v)]);
            }
        }
        gens.sort();
        gens.dedup();
        Ok(CentralizerGenerators { owner, generators: gens })
    }

    /// Greedy descent: left-multiply by the centralizer generator of `b` that
    /// shortens the conjugator most, until none does.
    pub fn shorten_conjugator(
        &self,
        a: &[Letter],
        b: &[Letter],
        g: &[Letter],
        budget: &Budget,
    ) -> Result<NormalForm> {
        if !is_conjugator(self, g, a, b) {
            return Err(Error::input("the given element does not conjugate a to b"));
        }
        let gens = self.centralizer_generators(b, budget)?.generators;
        let mut g = self.normal_form(g);
        loop {
            let best = gens.iter().map(|z| self.multiply(z, &g)).min();
            match best {
                Some(n) if n.len() < g.len() => g = n,
                _ => return Ok(g),
            }
        }
    }

    /// Build a conjugator by the pipeline, shorten it, and if it still
    /// exceeds `k (|a| + |b|) + c` search exhaustively inside that radius.
    /// `Ok(None)` means `a` and `b` are not conjugate.
    pub fn find_conjugator(
        &self,
        a: &[Letter],
        b: &[Letter],
        k: f64,
        c: f64,
        budget: &Budget,
    ) -> Result<Option<ConjugacyCertificate>> {
        let (a, b) = (self.normal_form(a), self.normal_form(b));
        let Some(g0) = self.pipeline_conjugator(&a, &b, budget)? else {
            return Ok(None);
        };
        let mut g = self.shorten_conjugator(&a, &b, &g0, budget)?;
        let bound = linear_bound(k, c, &a, &b);
        let mut source = ConjugatorSource::Pipeline;
        if g.len() as f64 > bound && bound >= 0.0 {
            let radius = bound.floor() as usize;
            if let Some(h) = shortest_conjugator_bruteforce(self, &a, &b, radius, budget)? {
                g = h;
                source = ConjugatorSource::Fallback;
            }
        }
        let valid = is_conjugator(self, &g, &a, &b);
        let within_bound = g.len() as f64 <= bound;
        Ok(Some(ConjugacyCertificate {
            a,
            b,
            conjugator: g,
            valid,
            bound_k: k,
            bound_c: c,
            within_bound,
            source,
        }))
    }

    /// A shortest conjugator: the pipeline gives an upper bound `L`, then the
    /// spheres of radius `< L` are scanned. Ties are broken shortlex.
    pub fn minimal_conjugator(
        &self,
        a: &[Letter],
        b: &[Letter],
        budget: &Budget,
    ) -> Result<Option<NormalForm>> {
        let (a, b) = (self.normal_form(a), self.normal_form(b));
        let Some(g0) = self.pipeline_conjugator(&a, &b, budget)? else {
            return Ok(None);
        };
        let g = self.shorten_conjugator(&a, &b, &g0, budget)?;
        Ok(Some(
            shortest_conjugator_bruteforce(self, &a, &b, g.len(), budget)?.unwrap_or(g),
        ))
    }
}
