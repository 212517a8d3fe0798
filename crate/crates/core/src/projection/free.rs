use crate::error::{Error, Result};
use crate::raag::{invert_letters, Letter, NormalForm, Raag};

/// A free group, with the word operations specialised to free reduction.
///
/// Elements are the same [`NormalForm`] values the RAAG code produces over
/// an edgeless graph, so everything in [`crate::cayley`] applies unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    group: Raag,
}

impl FreeGroup {
    /// Free group on `a`, `b`, `c`, ...
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(Error::input("free group rank must be between 1 and 26"));
        }
        let names: Vec<String> = (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Ok(FreeGroup { group: Raag::free(&names)? })
    }

    pub fn with_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ok(FreeGroup { group: Raag::free(names)? })
    }

    pub fn raag(&self) -> &Raag {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn word(&self, text: &str) -> Result<NormalForm> {
        Ok(self.reduce(&self.group.parse(text)?))
    }

    pub fn format(&self, w: &[Letter]) -> String {
        self.group.format(w)
    }

    pub fn reduce(&self, w: &[Letter]) -> NormalForm {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &x in w {
            if out.last() == Some(&x.inverse()) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        NormalForm::from_canonical(out)
    }

    /// Product of reduced words: cancel across the junction only.
    pub fn mul(&self, u: &[Letter], v: &[Letter]) -> NormalForm {
        let mut k = 0;
        while k < u.len() && k < v.len() && u[u.len() - 1 - k] == v[k].inverse() {
            k += 1;
        }
        let mut out = Vec::with_capacity(u.len() + v.len() - 2 * k);
        out.extend_from_slice(&u[..u.len() - k]);
        out.extend_from_slice(&v[k..]);
        NormalForm::from_canonical(out)
    }

    pub fn mul3(&self, u: &[Letter], v: &[Letter], w: &[Letter]) -> NormalForm {
        self.mul(&self.mul(u, v), w)
    }

    pub fn inv(&self, u: &[Letter]) -> NormalForm {
        NormalForm::from_canonical(invert_letters(u))
    }

    pub fn power(&self, u: &[Letter], k: i64) -> NormalForm {
        let base = if k < 0 { invert_letters(u) } else { u.to_vec() };
        let w: Vec<Letter> = (0..k.unsigned_abs()).flat_map(|_| base.iter().copied()).collect();
        self.reduce(&w)
    }

    pub fn conjugate(&self, h: &[Letter], g: &[Letter]) -> NormalForm {
        self.mul3(h, g, &invert_letters(h))
    }

    /// Tree distance between reduced words.
    pub fn distance(&self, u: &[Letter], v: &[Letter]) -> usize {
        let l = common_prefix(u, v);
        u.len() + v.len() - 2 * l
    }

    /// Vertices of the tree geodesic from `u` to `v`, both included.
    pub fn geodesic(&self, u: &[Letter], v: &[Letter]) -> Vec<NormalForm> {
        let l = common_prefix(u, v);
        let mut path: Vec<NormalForm> =
            (l..=u.len()).rev().map(|i| NormalForm::from_canonical(u[..i].to_vec())).collect();
        path.extend((l + 1..=v.len()).map(|i| NormalForm::from_canonical(v[..i].to_vec())));
        path
    }

    /// `g = p c p^-1` with `c` cyclically reduced.
    pub fn cyclic_reduce(&self, g: &[Letter]) -> (NormalForm, NormalForm) {
        let mut k = 0;
        while 2 * k + 1 < g.len() && g[k] == g[g.len() - 1 - k].inverse() {
            k += 1;
        }
        (
            NormalForm::from_canonical(g[..k].to_vec()),
            NormalForm::from_canonical(g[k..g.len() - k].to_vec()),
        )
    }
}

pub(crate) fn common_prefix(u: &[Letter], v: &[Letter]) -> usize {
    u.iter().zip(v).take_while(|(x, y)| x == y).count()
}

/// `h = conj * root^power * conj^-1` with `root` cyclically reduced and not a
/// proper power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    pub conj: NormalForm,
    pub root: NormalForm,
    pub power: usize,
}

impl FreeGroup {
    pub fn primitive_root(&self, h: &[Letter]) -> Result<RootData> {
        let h = self.reduce(h);
        if h.is_identity() {
            return Err(Error::input("the identity has no primitive root"));
        }
        let (conj, core) = self.cyclic_reduce(&h);
        let n = core.len();
        let period = (1..=n)
            .find(|&d| n % d == 0 && (d..n).all(|i| core[i] == core[i - d]))
            .unwrap_or(n);
        Ok(RootData {
            conj,
            root: NormalForm::from_canonical(core[..period].to_vec()),
            power: n / period,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FreeGroup {
        FreeGroup::new(2).unwrap()
    }

    #[test]
    fn tree_distances() {
        let f = f2();
        let w = |s| f.word(s).unwrap();
        assert_eq!(f.distance(&w(""), &w("a b")), 2);
        assert_eq!(f.distance(&w("a"), &w("a b")), 1);
        assert_eq!(f.distance(&w("a"), &w("b")), 2);
        let path = f.geodesic(&w("a b"), &w("a b^-1 a"));
        let fmt: Vec<String> = path.iter().map(|v| f.format(v)).collect();
        assert_eq!(fmt, vec!["a b", "a", "a b^-1", "a b^-1 a"]);
    }

    #[test]
    fn fast_product_matches_general_normal_form() {
        let f = f2();
        let u = f.word("a b a^-1").unwrap();
        let v = f.word("a b^-1 a").unwrap();
        assert_eq!(f.mul(&u, &v), f.raag().multiply(&u, &v));
        assert_eq!(f.format(&f.mul(&u, &v)), "a a");
    }

    #[test]
    fn primitive_root_examples() {
        let f = f2();
        let r = |s: &str| {
            let d = f.primitive_root(&f.word(s).unwrap()).unwrap();
            (f.format(&d.conj), f.format(&d.root), d.power)
        };
        assert_eq!(r("a3"), ("".into(), "a".into(), 3));
        assert_eq!(r("a b"), ("".into(), "a b".into(), 1));
        assert_eq!(r("a b a b"), ("".into(), "a b".into(), 2));
        assert_eq!(r("b a a b^-1"), ("b".into(), "a".into(), 2));
        assert!(f.primitive_root(&[]).is_err());
    }
}
