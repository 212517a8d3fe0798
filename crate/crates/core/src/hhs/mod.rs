//! Standard cosets of a right-angled Artin group viewed as a hierarchy:
//! gates, domains up to parallelism, product regions, Big sets and relevant
//! domains.
//!
//! Distances "in a domain" are measured in the word metric of the domain's
//! coset between gates (the F-metric proxy), which is exact for detecting
//! unbounded projections and bounds the curve-graph style distance from above.

mod big;
mod domain;
mod relevant;

pub use big::{BigSet, TranslationLength};
pub use domain::{Domain, DomainJson, ProductRegion, Relation};
pub use relevant::{ProductRegionReport, TracePrefixes};

use crate::raag::{invert_letters, Letter, NormalForm, Raag, VertexSet};

/// The left coset `rep * A_delta`. The representative is arbitrary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    pub rep: NormalForm,
    pub delta: VertexSet,
}

impl Coset {
    pub fn new(rep: NormalForm, delta: VertexSet) -> Self {
        Coset { rep, delta }
    }
}

/// Nearest point of a coset together with its distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub point: NormalForm,
    pub distance: usize,
}

impl Raag {
    /// Split a reduced word into its maximal prefix with letters in `delta`
    /// and the remainder: a letter joins the prefix when it lies in `delta`
    /// and commutes with every earlier letter left behind.
    pub fn split_prefix(&self, w: &[Letter], delta: VertexSet) -> (Vec<Letter>, Vec<Letter>) {
        let mut prefix = Vec::new();
        let mut rest = Vec::new();
        let mut blockers = 0u64;
        for &x in w {
            if delta.contains(x.vertex()) && blockers & !self.adjacency_mask(x.vertex()) == 0 {
                prefix.push(x);
            } else {
                rest.push(x);
                blockers |= 1 << x.vertex();
            }
        }
        (prefix, rest)
    }

    /// The unique closest point of `coset` to `x`.
    pub fn gate(&self, x: &[Letter], coset: &Coset) -> Gate {
        let w = self.multiply(&invert_letters(&coset.rep), x);
        let (prefix, rest) = self.split_prefix(&w, coset.delta);
        Gate { point: self.multiply(&coset.rep, &prefix), distance: rest.len() }
    }

    pub fn in_coset(&self, x: &[Letter], coset: &Coset) -> bool {
        let w = self.multiply(&invert_letters(&coset.rep), x);
        self.support(&w).is_subset(coset.delta)
    }

    /// Whether `c A_X` and `d A_Y` share an element, i.e. `c^-1 d` lies in
    /// `A_X A_Y`.
    pub fn cosets_intersect(&self, p: &Coset, q: &Coset) -> bool {
        let w = self.multiply(&invert_letters(&p.rep), &q.rep);
        let (_, rest) = self.split_prefix(&w, p.delta);
        self.support(&rest).is_subset(q.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raag::DefiningGraph;

    fn p3() -> Raag {
        Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap())
    }

    #[test]
    fn gate_examples() {
        let z2 = Raag::new(DefiningGraph::complete(&["a", "b"]).unwrap());
        let coset = Coset::new(NormalForm::identity(), z2.graph().vertex_set(&["a"]).unwrap());
        let g = z2.gate(&z2.word("a3 b2").unwrap(), &coset);
        assert_eq!((z2.format(&g.point).as_str(), g.distance), ("a a a", 2));
        let x = z2.word("a^-2").unwrap();
        assert_eq!(z2.gate(&x, &coset), Gate { point: x.clone(), distance: 0 });

        // in the path a-b-c, c blocks a, so the gate of "c a" is the identity
        let g3 = p3();
        let a = Coset::new(NormalForm::identity(), g3.graph().vertex_set(&["a"]).unwrap());
        let gate = g3.gate(&g3.word("c a").unwrap(), &a);
        assert_eq!((gate.point.len(), gate.distance), (0, 2));
        let gate = g3.gate(&g3.word("a c").unwrap(), &a);
        assert_eq!((g3.format(&gate.point).as_str(), gate.distance), ("a", 1));
    }

    #[test]
    fn coset_intersection() {
        let g = p3();
        let vs = |n: &[&str]| g.graph().vertex_set(n).unwrap();
        let c = |w: &str| Coset::new(g.word(w).unwrap(), vs(&["a"]));
        let d = |w: &str, n: &[&str]| Coset::new(g.word(w).unwrap(), vs(n));
        assert!(g.cosets_intersect(&c("a^3"), &d("b", &["b"])));
        assert!(g.cosets_intersect(&c(""), &d("a b", &["b"])));
        assert!(!g.cosets_intersect(&c(""), &d("c", &["b"])));
        assert!(g.cosets_intersect(&c(""), &d("b a c", &["b", "c"])));
    }
}
