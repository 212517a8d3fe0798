#![allow(dead_code)]

use std::collections::HashMap;

use conjlab::{DefiningGraph, Letter, NormalForm, Raag};
use proptest::prelude::*;

pub fn f2() -> Raag {
    Raag::free(&["a", "b"]).unwrap()
}

pub fn z2() -> Raag {
    Raag::new(DefiningGraph::path(&["a", "b"]).unwrap())
}

pub fn p3() -> Raag {
    Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap())
}

pub fn c5() -> Raag {
    Raag::new(DefiningGraph::cycle(&["a", "b", "c", "d", "e"]).unwrap())
}

pub fn w(g: &Raag, s: &str) -> NormalForm {
    g.word(s).unwrap()
}

/// Raw (unreduced) words over `rank` generators.
pub fn raw_word(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(x, inv)| Letter::new(x, inv)).collect())
}

/// Piling of `w`: one column per vertex. Pushing `x` stacks `x` on its own
/// column and a blank on the column of every vertex it does not commute with;
/// `x` cancels against an `x^-1` sitting on top of its column. Two words are
/// equal in the group iff their pilings agree, and nothing here uses the
/// normal form code.
pub fn piling(g: &Raag, w: &[Letter]) -> Vec<Vec<Option<Letter>>> {
    let n = g.rank();
    let mut cols: Vec<Vec<Option<Letter>>> = vec![Vec::new(); n];
    for &x in w {
        let v = x.vertex();
        let others = (0..n).filter(|&u| u != v && !g.graph().adjacent(u, v));
        if cols[v].last() == Some(&Some(x.inverse())) {
            cols[v].pop();
            for u in others {
                assert_eq!(cols[u].pop(), Some(None));
            }
        } else {
            cols[v].push(Some(x));
            for u in others {
                cols[u].push(None);
            }
        }
    }
    cols
}

/// Breadth-first search of the Cayley graph keyed by pilings.
/// Returns one representative word per element with its distance.
pub fn signature_bfs(g: &Raag, radius: usize) -> Vec<(Vec<Letter>, usize)> {
    use std::collections::HashSet;
    let alphabet = g.alphabet();
    let mut seen: HashSet<Vec<Vec<Option<Letter>>>> = HashSet::new();
    seen.insert(piling(g, &[]));
    let mut out = vec![(Vec::new(), 0)];
    let mut frontier = vec![Vec::new()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for u in &frontier {
            for &x in &alphabet {
                let mut v: Vec<Letter> = u.clone();
                v.push(x);
                if seen.insert(piling(g, &v)) {
                    out.push((v.clone(), d));
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Every raw word of length at most `len`.
pub fn all_words(g: &Raag, len: usize) -> Vec<Vec<Letter>> {
    let alphabet = g.alphabet();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for u in &layer {
            for &x in &alphabet {
                let mut v: Vec<Letter> = u.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Distance from `w` to the subgroup `A_delta` and every nearest point,
/// found by iterative deepening over generator steps `w -> w x`. The
/// admissible lower bound is the number of letters of the current element
/// outside `delta`: one step changes the letter multiset by one letter.
pub fn nearest_in_subgroup(g: &Raag, w: &NormalForm, delta: conjlab::VertexSet) -> (usize, Vec<NormalForm>) {
    let outside = |y: &NormalForm| y.iter().filter(|l| !delta.contains(l.vertex())).count();
    let alphabet = g.alphabet();
    let mut bound = outside(w);
    loop {
        let mut found: Vec<NormalForm> = Vec::new();
        // shallowest depth at which each element was expanded in this pass
        let mut seen: HashMap<NormalForm, usize> = HashMap::new();
        let mut stack = vec![(w.clone(), 0usize)];
        while let Some((y, depth)) = stack.pop() {
            let h = outside(&y);
            if depth + h > bound {
                continue;
            }
            if depth == bound {
                if h == 0 {
                    found.push(y);
                }
                continue;
            }
            if seen.get(&y).is_some_and(|&d| d <= depth) {
                continue;
            }
            seen.insert(y.clone(), depth);
            for &x in &alphabet {
                stack.push((g.multiply(&y, &[x]), depth + 1));
            }
        }
        if !found.is_empty() {
            found.sort();
            found.dedup();
            return (bound, found);
        }
        bound += 1;
    }
}
