use crate::raag::{NormalForm, Raag};

use super::Domain;

/// Domains on which `<g>` acts with unbounded orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigSet {
    pub owner: NormalForm,
    /// Cyclic conjugating prefix: `owner = prefix * (product of factors) * prefix^-1`.
    pub prefix: NormalForm,
    pub domains: Vec<Domain>,
    /// Pairwise commuting pieces of the cyclic core, one per domain.
    pub factors: Vec<NormalForm>,
    /// No domain is orthogonal to all of `domains`.
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationLength {
    pub total: usize,
    pub per_factor: Vec<usize>,
}

impl Raag {
    pub fn big(&self, g: &[crate::Letter]) -> BigSet {
        let owner = self.normal_form(g);
        let (prefix, core) = self.cyclic_reduce(&owner);
        let support = self.support(&core);
        let mut domains = Vec::new();
        let mut factors = Vec::new();
        for block in self.join_factors(support) {
            let piece: Vec<_> = core.iter().copied().filter(|l| block.contains(l.vertex())).collect();
            domains.push(self.domain(block, &prefix));
            factors.push(self.normal_form(&piece));
        }
        // blocks of a join decomposition are irreducible, so only the link matters
        let maximal = !support.is_empty() && self.link(support).is_empty();
        BigSet { owner, prefix, domains, factors, maximal }
    }

    /// `|core|`, the stable length `lim |g^n| / n`, with the per-factor split.
    pub fn translation_length(&self, g: &[crate::Letter]) -> TranslationLength {
        let big = self.big(g);
        let per_factor: Vec<usize> = big.factors.iter().map(|f| f.len()).collect();
        TranslationLength { total: per_factor.iter().sum(), per_factor }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hhs::Relation;
    use crate::raag::DefiningGraph;

    #[test]
    fn big_examples() {
        let f2 = Raag::free(&["a", "b"]).unwrap();
        let b = f2.big(&f2.word("a").unwrap());
        assert_eq!(b.domains.len(), 1);
        assert!(b.maximal);

        let z2 = Raag::new(DefiningGraph::path(&["a", "b"]).unwrap());
        let b = z2.big(&z2.word("a b").unwrap());
        assert_eq!(b.domains.len(), 2);
        assert_eq!(z2.relation(&b.domains[0], &b.domains[1]), Relation::Orthogonal);
        assert!(b.maximal);

        let p3 = Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap());
        let b = p3.big(&p3.word("a c").unwrap());
        assert_eq!(b.domains.len(), 1);
        assert_eq!(b.domains[0].delta, p3.graph().vertex_set(&["a", "c"]).unwrap());
        assert!(!b.maximal);

        assert!(f2.big(&[]).domains.is_empty());
    }

    #[test]
    fn factors_rebuild_the_element() {
        let p3 = Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap());
        let g = p3.word("c b a b c^-1").unwrap();
        let big = p3.big(&g);
        let refs: Vec<&[crate::Letter]> = big.factors.iter().map(|f| f.letters()).collect();
        let core = p3.product(&refs);
        assert_eq!(p3.conjugate(&big.prefix, &core), g);
    }

    #[test]
    fn translation_length_examples() {
        let f2 = Raag::free(&["a", "b"]).unwrap();
        assert_eq!(f2.translation_length(&f2.word("a b a^-1").unwrap()).total, 1);
        let z2 = Raag::new(DefiningGraph::path(&["a", "b"]).unwrap());
        let t = z2.translation_length(&z2.word("a b").unwrap());
        assert_eq!((t.total, t.per_factor), (2, vec![1, 1]));
        let p3 = Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap());
        let g = p3.word("a c").unwrap();
        assert_eq!(p3.translation_length(&g).total, 2);
        assert_eq!(p3.power(&g, 5).len(), 10);
    }
}
