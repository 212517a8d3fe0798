use crate::error::{Error, Result};

use super::graph::{DefiningGraph, VertexSet};
use super::word::{invert_letters, GroupWord, Letter, NormalForm};

/// A right-angled Artin group together with its word arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raag {
    graph: DefiningGraph,
    adj: Vec<u64>,
}

impl Raag {
    pub fn new(graph: DefiningGraph) -> Self {
        let adj = (0..graph.num_vertices()).map(|v| graph.neighbors(v).0).collect();
        Raag { graph, adj }
    }

    /// Free group on the given generators.
    pub fn free<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ok(Raag::new(DefiningGraph::free(names)?))
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.num_vertices()
    }

    /// All signed generators in letter order.
    pub fn alphabet(&self) -> Vec<Letter> {
        (0..2 * self.rank()).map(Letter::from_index).collect()
    }

    #[inline]
    pub fn commute(&self, x: Letter, y: Letter) -> bool {
        self.adj[x.vertex()] >> y.vertex() & 1 == 1
    }

    #[inline]
    pub(crate) fn adjacency_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn letter(&self, name: &str, inverse: bool) -> Result<Letter> {
        Ok(Letter::new(self.graph.vertex(name)?, inverse))
    }

    /// Parse space separated tokens: `a`, `a^-1`, `a^3`, `a^-2`, or `a3` as a
    /// shorthand for `a^3` when `a3` is not itself a generator. A lone `1`
    /// denotes the identity.
    pub fn parse(&self, text: &str) -> Result<GroupWord> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            self.parse_token(token, &mut out)?;
        }
        Ok(out)
    }

    fn parse_token(&self, token: &str, out: &mut Vec<Letter>) -> Result<()> {
        if let Ok(v) = self.graph.vertex(token) {
            out.push(Letter::pos(v));
            return Ok(());
        }
        let (base, exp) = if let Some((base, exp)) = token.split_once('^') {
            let exp: i64 = exp.parse().map_err(|_| Error::MalformedToken(token.to_string()))?;
            (base, exp)
        } else {
            let split = token.trim_end_matches(|c: char| c.is_ascii_digit()).len();
            if split == 0 {
                if token == "1" {
                    return Ok(());
                }
                return Err(Error::MalformedToken(token.to_string()));
            }
            if split == token.len() {
                return Err(Error::UnknownGenerator(token.to_string()));
            }
            let exp = token[split..].parse().map_err(|_| Error::MalformedToken(token.to_string()))?;
            (&token[..split], exp)
        };
        if base.is_empty() {
            return Err(Error::MalformedToken(token.to_string()));
        }
        let v = self.graph.vertex(base)?;
        let l = Letter::new(v, exp < 0);
        out.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        Ok(())
    }

    /// Parse and normalize.
    pub fn word(&self, text: &str) -> Result<NormalForm> {
        Ok(self.normal_form(&self.parse(text)?))
    }

    /// Render letters as `a b^-1 ...`; the identity renders as the empty
    /// string.
    pub fn format(&self, w: &[Letter]) -> String {
        let mut s = String::new();
        for (i, l) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(self.graph.name(l.vertex()));
            if l.is_inverse() {
                s.push_str("^-1");
            }
        }
        s
    }

    /// Delete cancelling pairs until the word is reduced. The output keeps the
    /// relative order of surviving letters.
    pub fn reduce(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &x in w {
            push_reduced(&self.adj, &mut out, x);
        }
        out
    }

    /// Shortlex-least shuffle of a reduced word: repeatedly take the least
    /// letter that commutes with everything still in front of it.
    pub fn shuffle_least(&self, reduced: &[Letter]) -> Vec<Letter> {
        let n = reduced.len();
        let mut taken = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let mut before = 0u64;
            let mut best: Option<usize> = None;
            for i in 0..n {
                if taken[i] {
                    continue;
                }
                let x = reduced[i];
                if before & !self.adj[x.vertex()] == 0
                    && best.is_none_or(|b| x < reduced[b])
                {
                    best = Some(i);
                }
                before |= 1 << x.vertex();
            }
            let b = best.expect("some letter is always available");
            taken[b] = true;
            out.push(reduced[b]);
        }
        out
    }

    pub fn normal_form(&self, w: &[Letter]) -> NormalForm {
        NormalForm::from_canonical(self.shuffle_least(&self.reduce(w)))
    }

    pub fn multiply(&self, u: &[Letter], v: &[Letter]) -> NormalForm {
        let mut w = Vec::with_capacity(u.len() + v.len());
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        self.normal_form(&w)
    }

    /// Product of any number of factors.
    pub fn product(&self, factors: &[&[Letter]]) -> NormalForm {
        let w: Vec<Letter> = factors.iter().flat_map(|f| f.iter().copied()).collect();
        self.normal_form(&w)
    }

    pub fn invert(&self, u: &[Letter]) -> NormalForm {
        self.normal_form(&invert_letters(u))
    }

    pub fn power(&self, u: &[Letter], k: i64) -> NormalForm {
        let base = if k < 0 { invert_letters(u) } else { u.to_vec() };
        let w: Vec<Letter> = (0..k.unsigned_abs()).flat_map(|_| base.iter().copied()).collect();
        self.normal_form(&w)
    }

    /// `h g h^-1`.
    pub fn conjugate(&self, h: &[Letter], g: &[Letter]) -> NormalForm {
        self.product(&[h, g, &invert_letters(h)])
    }

    pub fn commutes(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.multiply(u, v) == self.multiply(v, u)
    }

    /// Word metric distance `|u^-1 v|`.
    pub fn distance(&self, u: &[Letter], v: &[Letter]) -> usize {
        self.multiply(&invert_letters(u), v).len()
    }

    pub fn support(&self, w: &[Letter]) -> VertexSet {
        VertexSet(w.iter().fold(0, |m, l| m | 1 << l.vertex()))
    }

    pub fn link(&self, s: VertexSet) -> VertexSet {
        self.graph.link(s)
    }

    pub fn star(&self, s: VertexSet) -> VertexSet {
        self.graph.star(s)
    }

    pub fn join_factors(&self, s: VertexSet) -> Vec<VertexSet> {
        self.graph.join_factors(s)
    }

    /// Positions of letters of a reduced word that can be shuffled to the
    /// front.
    pub fn initial_positions(&self, w: &[Letter]) -> Vec<usize> {
        let mut before = 0u64;
        let mut out = Vec::new();
        for (i, x) in w.iter().enumerate() {
            if before & !self.adj[x.vertex()] == 0 {
                out.push(i);
            }
            before |= 1 << x.vertex();
        }
        out
    }

    /// Positions of letters of a reduced word that can be shuffled to the
    /// back.
    pub fn terminal_positions(&self, w: &[Letter]) -> Vec<usize> {
        let mut after = 0u64;
        let mut out = Vec::new();
        for (i, x) in w.iter().enumerate().rev() {
            if after & !self.adj[x.vertex()] == 0 {
                out.push(i);
            }
            after |= 1 << x.vertex();
        }
        out.reverse();
        out
    }
}

/// Append `x` to a reduced word, cancelling against the last occurrence of
/// `x^-1` that every later letter commutes with.
fn push_reduced(adj: &[u64], out: &mut Vec<Letter>, x: Letter) {
    let mask = adj[x.vertex()];
    for j in (0..out.len()).rev() {
        let y = out[j];
        if y == x.inverse() {
            out.remove(j);
            return;
        }
        if mask >> y.vertex() & 1 == 0 {
            break;
        }
    }
    out.push(x);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Raag {
        Raag::new(DefiningGraph::path(&["a", "b"]).unwrap())
    }

    fn p3() -> Raag {
        Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap())
    }

    fn f2() -> Raag {
        Raag::free(&["a", "b"]).unwrap()
    }

    fn nf(g: &Raag, s: &str) -> String {
        g.format(&g.word(s).unwrap())
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(nf(&edge(), "a b a^-1"), "b");
        assert_eq!(nf(&edge(), "b a"), "a b");
        assert_eq!(nf(&p3(), "a c a^-1 a"), "a c");
        assert_eq!(nf(&p3(), "b a b^-1"), "a");
        assert_eq!(nf(&f2(), "a a^-1"), "");
        assert_eq!(nf(&f2(), ""), "");
    }

    #[test]
    fn arithmetic_examples() {
        let g = f2();
        let a = g.word("a").unwrap();
        let ai = g.word("a^-1").unwrap();
        assert!(g.multiply(&a, &ai).is_identity());
        assert_eq!(g.format(&g.invert(&g.word("a b").unwrap())), "b^-1 a^-1");
        let e = edge();
        assert_eq!(e.format(&e.multiply(&e.word("a").unwrap(), &e.word("b").unwrap())), "a b");
    }

    #[test]
    fn token_grammar() {
        let g = edge();
        assert_eq!(g.format(&g.word("a^3 b^-2").unwrap()), "a a a b^-1 b^-1");
        assert_eq!(g.format(&g.word("a3 b2").unwrap()), "a a a b b");
        assert_eq!(g.word("1").unwrap(), NormalForm::identity());
        assert!(matches!(g.parse("z"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(g.parse("a^x"), Err(Error::MalformedToken(_))));
        assert!(matches!(g.parse("^2"), Err(Error::MalformedToken(_))));
    }

    #[test]
    fn generator_names_with_digits_take_precedence() {
        let g = Raag::free(&["x1", "x2"]).unwrap();
        assert_eq!(g.format(&g.word("x1 x2^-1").unwrap()), "x1 x2^-1");
    }

    #[test]
    fn initial_and_terminal_letters() {
        let g = p3();
        let w = g.word("a c b").unwrap();
        assert_eq!(g.format(&w), "a b c");
        assert_eq!(g.initial_positions(&w), vec![0, 1]);
        assert_eq!(g.terminal_positions(&w), vec![1, 2]);
    }

    #[test]
    fn support_examples() {
        let g = f2();
        assert_eq!(g.support(&g.parse("a b a^-1").unwrap()), VertexSet(0b11));
    }
}
