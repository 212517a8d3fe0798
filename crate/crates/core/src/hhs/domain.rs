use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raag::{NormalForm, Raag, VertexSet};

use super::Coset;

/// A parallelism class of standard cosets `c A_delta`.
///
/// Parallel copies of `c A_delta` sweep out `c A_{delta + lk(delta)}`, so the
/// class is named by `delta` and the gate of the identity into that coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domain {
    pub delta: VertexSet,
    pub rep: NormalForm,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    /// The first domain is nested in the second.
    NestedIn,
    /// The second domain is nested in the first.
    Contains,
    Orthogonal,
    Transverse,
}

/// `F x E` inside the coset `rep * A_{delta + lk(delta)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRegion {
    pub base: Domain,
    pub link: VertexSet,
}

impl ProductRegion {
    pub fn f_part(&self) -> Coset {
        Coset::new(self.base.rep.clone(), self.base.delta)
    }

    pub fn e_part(&self) -> Coset {
        Coset::new(self.base.rep.clone(), self.link)
    }

    pub fn coset(&self) -> Coset {
        Coset::new(self.base.rep.clone(), self.base.delta.union(self.link))
    }
}

/// `{"delta": ["a","c"], "rep": "b"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainJson {
    pub delta: Vec<String>,
    pub rep: String,
}

impl Raag {
    /// The domain of `c A_delta`.
    pub fn domain(&self, delta: VertexSet, c: &[crate::Letter]) -> Domain {
        let region = Coset::new(self.normal_form(c), self.star(delta));
        Domain { delta, rep: self.gate(&[], &region).point }
    }

    pub fn product_region(&self, d: &Domain) -> ProductRegion {
        ProductRegion { base: d.clone(), link: self.link(d.delta) }
    }

    /// The coset `rep * A_delta` representing the domain.
    pub fn f_coset(&self, d: &Domain) -> Coset {
        Coset::new(d.rep.clone(), d.delta)
    }

    /// `g` applied to a domain.
    pub fn translate_domain(&self, g: &[crate::Letter], d: &Domain) -> Domain {
        self.domain(d.delta, &self.multiply(g, &d.rep))
    }

    fn regions_meet(&self, u: &Domain, v: &Domain) -> bool {
        self.cosets_intersect(&self.product_region(u).coset(), &self.product_region(v).coset())
    }

    pub fn relation(&self, u: &Domain, v: &Domain) -> Relation {
        if u == v {
            return Relation::Equal;
        }
        let meet = || self.regions_meet(u, v);
        if u.delta.is_subset(v.delta) && meet() {
            Relation::NestedIn
        } else if v.delta.is_subset(u.delta) && meet() {
            Relation::Contains
        } else if u.delta.is_subset(self.link(v.delta)) && meet() {
            Relation::Orthogonal
        } else {
            Relation::Transverse
        }
    }

    /// Word-metric distance between the gates of `x` and `y` in the domain's
    /// coset.
    pub fn domain_distance(&self, d: &Domain, x: &[crate::Letter], y: &[crate::Letter]) -> usize {
        let f = self.f_coset(d);
        self.distance(&self.gate(x, &f).point, &self.gate(y, &f).point)
    }

    pub fn domain_to_json(&self, d: &Domain) -> DomainJson {
        DomainJson { delta: self.graph().set_names(d.delta), rep: self.format(&d.rep) }
    }

    pub fn domain_from_json(&self, j: &DomainJson) -> Result<Domain> {
        if j.delta.is_empty() {
            return Err(Error::input("a domain needs a nonempty vertex set"));
        }
        let delta = self.graph().vertex_set(&j.delta)?;
        Ok(self.domain(delta, &self.word(&j.rep)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raag::DefiningGraph;

    fn group(edges: &[(&str, &str)]) -> Raag {
        Raag::new(DefiningGraph::new(&["a", "b", "c"], edges).unwrap())
    }

    #[test]
    fn relation_examples() {
        let z2 = Raag::new(DefiningGraph::path(&["a", "b"]).unwrap());
        let vs = |g: &Raag, n: &[&str]| g.graph().vertex_set(n).unwrap();
        let da = z2.domain(vs(&z2, &["a"]), &[]);
        let db = z2.domain(vs(&z2, &["b"]), &[]);
        assert_eq!(z2.relation(&da, &db), Relation::Orthogonal);

        let p3 = group(&[("a", "b"), ("b", "c")]);
        let a = p3.domain(vs(&p3, &["a"]), &[]);
        let c = p3.domain(vs(&p3, &["c"]), &[]);
        let ab = p3.domain(vs(&p3, &["a", "b"]), &[]);
        assert_eq!(p3.relation(&a, &c), Relation::Transverse);
        assert_eq!(p3.relation(&a, &ab), Relation::NestedIn);
        assert_eq!(p3.relation(&ab, &a), Relation::Contains);
        assert_eq!(p3.relation(&a, &a), Relation::Equal);
    }

    #[test]
    fn parallel_cosets_share_a_domain() {
        let p3 = group(&[("a", "b"), ("b", "c")]);
        let a = p3.graph().vertex_set(&["a"]).unwrap();
        assert_eq!(p3.domain(a, &p3.word("b^3").unwrap()), p3.domain(a, &[]));
        assert_eq!(p3.domain(a, &p3.word("a^-2").unwrap()), p3.domain(a, &[]));
        assert_ne!(p3.domain(a, &p3.word("c").unwrap()), p3.domain(a, &[]));
    }

    #[test]
    fn domain_distance_examples() {
        let z2 = Raag::new(DefiningGraph::path(&["a", "b"]).unwrap());
        let a = z2.domain(z2.graph().vertex_set(&["a"]).unwrap(), &[]);
        assert_eq!(z2.domain_distance(&a, &[], &z2.word("a4 b").unwrap()), 4);
        let x = z2.word("a b").unwrap();
        assert_eq!(z2.domain_distance(&a, &x, &x), 0);
        let p3 = group(&[("a", "b"), ("b", "c")]);
        let b = p3.domain(p3.graph().vertex_set(&["b"]).unwrap(), &[]);
        assert_eq!(p3.domain_distance(&b, &p3.word("a").unwrap(), &p3.word("c").unwrap()), 0);
    }

    #[test]
    fn json_round_trip() {
        let p3 = group(&[("a", "b"), ("b", "c")]);
        let d = p3.domain(p3.graph().vertex_set(&["a", "c"]).unwrap(), &p3.word("c b").unwrap());
        let j = p3.domain_to_json(&d);
        assert_eq!(j.delta, vec!["a", "c"]);
        assert_eq!(p3.domain_from_json(&j).unwrap(), d);
    }
}
