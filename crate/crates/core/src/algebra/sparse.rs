use std::fmt;

use super::scalar::Prime;

/// A finite linear combination of basis keys with nonzero F_p coefficients,
/// kept sorted by key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<K = usize> {
    p: Prime,
    terms: Vec<(K, u32)>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn zero(p: Prime) -> Self {
        SparseVec { p, terms: Vec::new() }
    }

    pub fn basis(p: Prime, key: K) -> Self {
        SparseVec { p, terms: vec![(key, 1)] }
    }

    pub fn from_terms(p: Prime, terms: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut v = Self::zero(p);
        for (k, c) in terms {
            v.add_term(k, p.reduce(c));
        }
        v
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (K, u32)> + '_ {
        self.terms.iter().cloned()
    }

    pub fn keys(&self) -> impl Iterator<Item = K> + '_ {
        self.terms.iter().map(|(k, _)| k.clone())
    }

    pub fn get(&self, key: &K) -> u32 {
        match self.terms.binary_search_by(|(k, _)| k.cmp(key)) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn leading(&self) -> Option<(K, u32)> {
        self.terms.first().cloned()
    }

    pub fn add_term(&mut self, key: K, c: u32) {
        let c = c % self.p.get();
        if c == 0 {
            return;
        }
        match self.terms.binary_search_by(|(k, _)| k.cmp(&key)) {
            Ok(i) => {
                let s = self.p.add(self.terms[i].1, c);
                if s == 0 {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = s;
                }
            }
            Err(i) => self.terms.insert(i, (key, c)),
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &SparseVec<K>, c: u32) {
        assert_eq!(self.p, other.p, "sparse vectors over different primes");
        let c = c % self.p.get();
        if c == 0 || other.is_zero() {
            return;
        }
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0.clone(), p.mul(b[j].1, c)));
                j += 1;
            } else {
                let s = p.add(a[i].1, p.mul(b[j].1, c));
                if s != 0 {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
        self.terms = out;
    }

    pub fn add_assign(&mut self, other: &SparseVec<K>) {
        self.add_scaled(other, 1);
    }

    pub fn scale(&mut self, c: u32) {
        let c = c % self.p.get();
        if c == 0 {
            self.terms.clear();
        } else {
            let p = self.p;
            for t in &mut self.terms {
                t.1 = p.mul(t.1, c);
            }
        }
    }

    pub fn scaled(mut self, c: u32) -> Self {
        self.scale(c);
        self
    }

    /// Relabels keys, accumulating collisions.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(K) -> L) -> SparseVec<L> {
        let mut out = SparseVec::zero(self.p);
        for (k, c) in &self.terms {
            out.add_term(f(k.clone()), *c);
        }
        out
    }

    /// Linear extension of `f` from basis keys.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(K) -> SparseVec<L>) -> SparseVec<L> {
        let mut out = SparseVec::zero(self.p);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k.clone()), *c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(K) -> bool) -> Self {
        SparseVec {
            p: self.p,
            terms: self.terms.iter().filter(|(k, _)| keep(k.clone())).cloned().collect(),
        }
    }
}

impl<K: fmt::Display> fmt::Display for SparseVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{c}*{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_stored_zeros() {
        let p = Prime::TWO;
        let mut v = SparseVec::basis(p, 3usize);
        v.add_term(3, 1);
        assert!(v.is_zero());
        let p5 = Prime::new(5).unwrap();
        let mut a = SparseVec::from_terms(p5, [(1usize, 2), (4, 3)]);
        let b = SparseVec::from_terms(p5, [(1usize, 3), (2, 1)]);
        a.add_assign(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![(2, 1), (4, 3)]);
        assert_eq!(a.clone().scaled(5), SparseVec::zero(p5));
    }
}
