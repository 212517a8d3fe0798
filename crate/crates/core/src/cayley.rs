//! Exhaustive computations in the Cayley graph: balls, nearest points and
//! brute-force conjugator search. These are the ground truth the faster
//! algorithms are tested against.

use std::collections::HashSet;

use crate::error::{Budget, Error, Result};
use crate::raag::{invert_letters, NormalForm, Raag};

/// All elements of word length at most `radius`, grouped by length. Each
/// sphere is sorted shortlex.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    pub spheres: Vec<Vec<NormalForm>>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.spheres.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements in shortlex order.
    pub fn iter(&self) -> impl Iterator<Item = &NormalForm> {
        self.spheres.iter().flatten()
    }

    pub fn to_set(&self) -> HashSet<NormalForm> {
        self.iter().cloned().collect()
    }
}

/// Sphere-by-sphere breadth-first enumeration. `visit` sees each completed
/// sphere (sorted) and may stop the walk early by returning `false`.
pub fn walk_spheres(
    group: &Raag,
    radius: usize,
    budget: &Budget,
    mut visit: impl FnMut(usize, &[NormalForm]) -> bool,
) -> Result<()> {
    let alphabet = group.alphabet();
    let mut prev: Vec<NormalForm> = Vec::new();
    let mut current = vec![NormalForm::identity()];
    let mut total = 1usize;
    if !visit(0, &current) {
        return Ok(());
    }
    for k in 1..=radius {
        let back: HashSet<&NormalForm> = prev.iter().collect();
        let mut next: HashSet<NormalForm> = HashSet::new();
        let mut buf = Vec::with_capacity(k);
        for w in &current {
            for &x in &alphabet {
                buf.clear();
                buf.extend_from_slice(w);
                buf.push(x);
                let n = group.normal_form(&buf);
                // the Cayley graph is bipartite by length parity
                if n.len() == k && !back.contains(&n) {
                    next.insert(n);
                }
            }
        }
        total += next.len();
        budget.check(total, "enumerating a Cayley ball")?;
        let mut sphere: Vec<NormalForm> = next.into_iter().collect();
        sphere.sort();
        drop(back);
        prev = std::mem::replace(&mut current, sphere);
        if !visit(k, &current) {
            return Ok(());
        }
    }
    Ok(())
}

pub fn enumerate_ball(group: &Raag, radius: usize, budget: &Budget) -> Result<Ball> {
    let mut spheres = Vec::with_capacity(radius + 1);
    walk_spheres(group, radius, budget, |_, s| {
        spheres.push(s.to_vec());
        true
    })?;
    Ok(Ball { radius, spheres })
}

/// Result of a nearest-point search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nearest {
    pub element: NormalForm,
    pub distance: usize,
    pub unique: bool,
}

/// Closest element of `set` to `x` in the word metric; the shortlex-least
/// minimizer is returned when there are ties.
pub fn nearest_in_set<'a>(
    group: &Raag,
    x: &NormalForm,
    set: impl IntoIterator<Item = &'a NormalForm>,
) -> Result<Nearest> {
    let xi = invert_letters(x);
    let mut best: Option<Nearest> = None;
    for s in set {
        let d = group.multiply(&xi, s).len();
        match &mut best {
            None => best = Some(Nearest { element: s.clone(), distance: d, unique: true }),
            Some(b) if d < b.distance => {
                *b = Nearest { element: s.clone(), distance: d, unique: true };
            }
            Some(b) if d == b.distance => {
                b.unique = false;
                if s < &b.element {
                    b.element = s.clone();
                }
            }
            _ => {}
        }
    }
    best.ok_or_else(|| Error::input("nearest point requested in an empty set"))
}

/// Shortlex-least `g` of minimal length `<= r_max` with `g a = b g`, found by
/// scanning spheres in order. `Ok(None)` only says nothing was found within
/// the radius.
pub fn shortest_conjugator_bruteforce(
    group: &Raag,
    a: &NormalForm,
    b: &NormalForm,
    r_max: usize,
    budget: &Budget,
) -> Result<Option<NormalForm>> {
    if a.len() % 2 != b.len() % 2 {
        // conjugation preserves length parity in a RAAG
        return Ok(None);
    }
    let mut found = None;
    walk_spheres(group, r_max, budget, |_, sphere| {
        found = sphere.iter().find(|g| is_conjugator(group, g, a, b)).cloned();
        found.is_none()
    })?;
    Ok(found)
}

/// Whether `g a g^-1 = b`.
pub fn is_conjugator(group: &Raag, g: &[crate::Letter], a: &[crate::Letter], b: &[crate::Letter]) -> bool {
    group.multiply(g, a) == group.multiply(b, g)
}
