use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::cayley::enumerate_ball;
use crate::error::{Budget, Error, Result};
use crate::raag::{invert_letters, Letter, NormalForm, Raag, VertexSet};

use super::{Domain, Relation};

/// Prefixes of a reduced word in the trace monoid: every element `q` with
/// `|q| + |q^-1 w| = |w|`, as sets of positions closed under dependency.
pub struct TracePrefixes {
    pub masks: Vec<u128>,
}

impl TracePrefixes {
    pub fn new(group: &Raag, w: &[Letter], budget: &Budget) -> Result<Self> {
        if w.len() > 128 {
            return Err(Error::input("trace prefixes are limited to words of length 128"));
        }
        // positions that must precede i
        let before: Vec<u128> = (0..w.len())
            .map(|i| {
                (0..i)
                    .filter(|&j| !group.commute(w[j], w[i]))
                    .fold(0u128, |m, j| m | 1 << j)
            })
            .collect();
        let mut seen: HashSet<u128> = HashSet::from([0]);
        let mut stack = vec![0u128];
        while let Some(m) = stack.pop() {
            for i in 0..w.len() {
                if m >> i & 1 == 0 && before[i] & !m == 0 && seen.insert(m | 1 << i) {
                    budget.check(seen.len(), "enumerating trace prefixes")?;
                    stack.push(m | 1 << i);
                }
            }
        }
        let mut masks: Vec<u128> = seen.into_iter().collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        Ok(TracePrefixes { masks })
    }

    pub fn word(w: &[Letter], mask: u128) -> Vec<Letter> {
        w.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l).collect()
    }

    pub fn elements(&self, group: &Raag, w: &[Letter]) -> Vec<NormalForm> {
        self.masks.iter().map(|&m| group.normal_form(&Self::word(w, m))).collect()
    }
}

/// Exact and proxy distances from a point to a product region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductRegionReport {
    pub exact: usize,
    pub proxy_sum: usize,
    pub terms: usize,
    pub ratio: Option<f64>,
}

impl Raag {
    /// Nonempty vertex sets whose induced subgraph does not split as a join.
    /// Only these carry unbounded domain geometry.
    pub fn irreducible_subsets(&self) -> Vec<VertexSet> {
        let n = self.rank();
        assert!(n <= 20, "subset enumeration is limited to 20 vertices");
        (1u64..1 << n)
            .map(VertexSet)
            .filter(|&s| self.graph().is_irreducible(s))
            .collect()
    }

    /// Domains `U` with irreducible vertex set and `d_U(x, y) >= k`. Candidate
    /// cosets pass through `x q s` for trace prefixes `q` of `x^-1 y` and `s`
    /// within `slack` of the identity. Sorted and deduplicated.
    pub fn relevant_domains(
        &self,
        x: &NormalForm,
        y: &NormalForm,
        k: usize,
        slack: usize,
        budget: &Budget,
    ) -> Result<Vec<Domain>> {
        let w = self.multiply(&invert_letters(x), y);
        if w.is_identity() {
            return Ok(Vec::new());
        }
        let prefixes = TracePrefixes::new(self, &w, budget)?.elements(self, &w);
        let ball = enumerate_ball(self, slack, budget)?;
        let subsets = self.irreducible_subsets();
        let mut seen: HashSet<Domain> = HashSet::new();
        let mut out = BTreeSet::new();
        for q in &prefixes {
            let xq = self.multiply(x, q);
            for s in ball.iter() {
                let base = self.multiply(&xq, s);
                for &delta in &subsets {
                    let d = self.domain(delta, &base);
                    if seen.insert(d.clone()) {
                        budget.check(seen.len(), "scanning candidate domains")?;
                        if self.domain_distance(&d, x, y) >= k {
                            out.insert(d);
                        }
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Compare `d(x, P_U)` with the sum of `d_Y(x, gate)` over relevant `Y`
    /// transverse to `U` or properly containing it.
    pub fn dist_to_product_region(
        &self,
        x: &NormalForm,
        base: &Domain,
        k: usize,
        slack: usize,
        budget: &Budget,
    ) -> Result<ProductRegionReport> {
        let region = self.product_region(base).coset();
        let gate = self.gate(x, &region);
        let mut proxy_sum = 0;
        let mut terms = 0;
        for y in self.relevant_domains(x, &gate.point, k, slack, budget)? {
            if matches!(self.relation(base, &y), Relation::Transverse | Relation::NestedIn) {
                proxy_sum += self.domain_distance(&y, x, &gate.point);
                terms += 1;
            }
        }
        let ratio = (gate.distance > 0).then(|| proxy_sum as f64 / gate.distance as f64);
        Ok(ProductRegionReport { exact: gate.distance, proxy_sum, terms, ratio })
    }
}
