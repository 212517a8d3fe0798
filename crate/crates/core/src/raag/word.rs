use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

/// A signed generator. Encoded as `2 * vertex + (1 if inverse)`, so the
/// derived order is exactly `v1 < v1^-1 < v2 < v2^-1 < ...`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(vertex: usize, inverse: bool) -> Self {
        Letter((vertex as u16) << 1 | inverse as u16)
    }

    pub fn pos(vertex: usize) -> Self {
        Letter::new(vertex, false)
    }

    pub fn neg(vertex: usize) -> Self {
        Letter::new(vertex, true)
    }

    pub fn vertex(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i32 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2 * num_vertices`, handy for tables.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Letter(i as u16)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}{}", self.vertex(), if self.is_inverse() { "^-1" } else { "" })
    }
}

/// An arbitrary, possibly unreduced, word.
pub type GroupWord = Vec<Letter>;

/// The canonical representative of a group element: fully reduced and
/// shortlex-least among its commutation shuffles.
///
/// Only [`crate::Raag`] produces these, so holding one means the letters are
/// already canonical for the graph it came from. Ordering is shortlex.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm(Vec<Letter>);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Vec::new())
    }

    /// Wrap letters that are known to be canonical.
    pub(crate) fn from_canonical(letters: Vec<Letter>) -> Self {
        NormalForm(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl Deref for NormalForm {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn invert_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_interleaves_inverses() {
        let mut v = vec![Letter::pos(1), Letter::neg(0), Letter::neg(1), Letter::pos(0)];
        v.sort();
        assert_eq!(v, vec![Letter::pos(0), Letter::neg(0), Letter::pos(1), Letter::neg(1)]);
        assert_eq!(Letter::pos(3).inverse(), Letter::neg(3));
        assert_eq!(Letter::neg(3).vertex(), 3);
    }

    #[test]
    fn shortlex_prefers_length() {
        let a = vec![Letter::pos(1)];
        let b = vec![Letter::pos(0), Letter::pos(0)];
        assert_eq!(shortlex(&a, &b), Ordering::Less);
        assert_eq!(shortlex(&b, &b), Ordering::Equal);
    }
}
