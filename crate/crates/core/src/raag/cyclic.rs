use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Budget, Result};

use super::group::Raag;
use super::word::{Letter, NormalForm};

/// `g = prefix * core * prefix^-1` with `core` cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    pub prefix: NormalForm,
    pub core: NormalForm,
    /// Shortlex-least element of the rotation/commutation closure of `core`;
    /// a complete conjugacy invariant.
    pub canonical_core: NormalForm,
}

impl Raag {
    /// Strip conjugating letters until the remaining core is cyclically
    /// reduced. At each step the least initial letter whose inverse is a
    /// terminal letter is removed.
    pub fn cyclic_reduce(&self, g: &[Letter]) -> (NormalForm, NormalForm) {
        let mut w = self.normal_form(g).into_letters();
        let mut prefix: Vec<Letter> = Vec::new();
        loop {
            let terminal = self.terminal_positions(&w);
            let mut pick: Option<(usize, usize)> = None;
            for i in self.initial_positions(&w) {
                let x = w[i];
                if let Some(&j) = terminal.iter().find(|&&j| j != i && w[j] == x.inverse()) {
                    if pick.is_none_or(|(pi, _)| x < w[pi]) {
                        pick = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = pick else { break };
            prefix.push(w[i]);
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            w.remove(hi);
            w.remove(lo);
        }
        (self.normal_form(&prefix), self.normal_form(&w))
    }

    pub fn is_cyclically_reduced(&self, g: &NormalForm) -> bool {
        self.cyclic_reduce(g).0.is_identity()
    }

    /// Move the letter at an initial position of a cyclically reduced normal
    /// form to the end: `x u -> u x`, i.e. conjugation by `x^-1`.
    pub fn rotate(&self, c: &NormalForm, pos: usize) -> NormalForm {
        let mut w = c.letters().to_vec();
        let x = w.remove(pos);
        w.push(x);
        self.normal_form(&w)
    }

    /// Every normal form reachable from a cyclically reduced `core` by
    /// rotations and commutations, sorted shortlex.
    pub fn rotation_closure(&self, core: &NormalForm, budget: &Budget) -> Result<Vec<NormalForm>> {
        let mut seen: HashSet<NormalForm> = HashSet::from([core.clone()]);
        let mut queue = VecDeque::from([core.clone()]);
        while let Some(c) = queue.pop_front() {
            for pos in self.initial_positions(&c) {
                let next = self.rotate(&c, pos);
                if seen.insert(next.clone()) {
                    budget.check(seen.len(), "enumerating the cyclic closure")?;
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<NormalForm> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn canonical_core(&self, g: &[Letter], budget: &Budget) -> Result<NormalForm> {
        let (_, core) = self.cyclic_reduce(g);
        Ok(self.rotation_closure(&core, budget)?.swap_remove(0))
    }

    pub fn cyclic_form(&self, g: &[Letter], budget: &Budget) -> Result<CyclicForm> {
        let (prefix, core) = self.cyclic_reduce(g);
        let canonical_core = self.rotation_closure(&core, budget)?.swap_remove(0);
        Ok(CyclicForm { prefix, core, canonical_core })
    }

    /// Breadth-first search through the closure of `from` for `to`. Returns
    /// `r` with `r * from * r^-1 = to`, built from the rotation letters along
    /// the path, or `None` if `to` is not in the closure.
    pub fn rotation_path(
        &self,
        from: &NormalForm,
        to: &NormalForm,
        budget: &Budget,
    ) -> Result<Option<NormalForm>> {
        // each step x u -> u x multiplies the running conjugator by x^-1 on the left
        let mut conj: HashMap<NormalForm, NormalForm> = HashMap::new();
        conj.insert(from.clone(), NormalForm::identity());
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(c) = queue.pop_front() {
            let r = conj[&c].clone();
            if &c == to {
                return Ok(Some(r));
            }
            for pos in self.initial_positions(&c) {
                let next = self.rotate(&c, pos);
                if !conj.contains_key(&next) {
                    let step = self.multiply(&[c[pos].inverse()], &r);
                    conj.insert(next.clone(), step);
                    budget.check(conj.len(), "enumerating the cyclic closure")?;
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raag::graph::DefiningGraph;

    fn f2() -> Raag {
        Raag::free(&["a", "b"]).unwrap()
    }

    #[test]
    fn cyclic_form_examples() {
        let g = f2();
        let cf = g.cyclic_form(&g.word("a b a^-1").unwrap(), &Budget::default()).unwrap();
        assert_eq!(g.format(&cf.prefix), "a");
        assert_eq!(g.format(&cf.core), "b");
        let cf = g.cyclic_form(&g.word("b").unwrap(), &Budget::default()).unwrap();
        assert!(cf.prefix.is_identity());
        assert_eq!(g.format(&cf.core), "b");
    }

    #[test]
    fn closure_of_free_word_is_its_rotations() {
        let g = f2();
        let w = g.word("a b a b^-1").unwrap();
        let closure = g.rotation_closure(&w, &Budget::default()).unwrap();
        // brute-force the four cyclic rotations
        let mut rots: Vec<NormalForm> = (0..4)
            .map(|k| {
                let mut l = w.letters().to_vec();
                l.rotate_left(k);
                g.normal_form(&l)
            })
            .collect();
        rots.sort();
        rots.dedup();
        assert_eq!(closure, rots);
        let cf = g.cyclic_form(&w, &Budget::default()).unwrap();
        assert!(cf.prefix.is_identity());
        assert_eq!(cf.canonical_core, rots[0]);
    }

    #[test]
    fn prefix_recovers_element() {
        let g = Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap());
        let w = g.word("c a b a^-1 c^-1").unwrap();
        let cf = g.cyclic_form(&w, &Budget::default()).unwrap();
        assert_eq!(g.conjugate(&cf.prefix, &cf.core), w);
        assert_eq!(cf.core.len(), 1);
    }

    #[test]
    fn rotation_path_conjugates() {
        let g = f2();
        let from = g.word("a a b").unwrap();
        let to = g.word("b a a").unwrap();
        let r = g.rotation_path(&from, &to, &Budget::default()).unwrap().unwrap();
        assert_eq!(g.conjugate(&r, &from), to);
        let other = g.word("a b b").unwrap();
        assert!(g.rotation_path(&from, &other, &Budget::default()).unwrap().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let g = f2();
        let w = g.word("a a b a b b").unwrap();
        assert!(g.rotation_closure(&w, &Budget::new(2)).unwrap_err().is_budget());
    }
}
