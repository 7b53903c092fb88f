//! The free simplicial exterior algebra on the simplicial F_2-module with a
//! single nondegenerate simplex in degree s (normalized chains F_2 in degree
//! s). An n-simplex of the module is an order-preserving surjection
//! [n] -> [s], stored as the bitmask of its n unit steps.

use crate::algebra::{echelonize_f2, Prime, SparseVec};
use crate::error::{Error, Result};

/// A set of distinct surjections; the product of its members in Λ.
pub type Subset = Vec<u32>;

/// Masks of all surjections [n] -> [s], ascending.
pub fn surjections(n: u32, s: u32) -> Vec<u32> {
    if n >= 32 {
        return vec![];
    }
    (0u32..(1 << n)).filter(|m| m.count_ones() == s).collect()
}

fn low(bits: u32) -> u32 {
    if bits >= 32 {
        u32::MAX
    } else {
        (1 << bits) - 1
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SimplicialExterior {
    pub s: u32,
}

type Chain = SparseVec<Subset>;

impl SimplicialExterior {
    pub fn new(s: u32) -> Self {
        SimplicialExterior { s }
    }

    /// d_i of a surjection on [n]; None when the composite is not onto.
    pub fn face_map(n: u32, i: u32, m: u32) -> Option<u32> {
        let bit = |j: u32| (m >> j) & 1;
        if i == 0 {
            return (bit(0) == 0).then_some(m >> 1);
        }
        if i == n {
            return (bit(n - 1) == 0).then_some(m & low(n - 1));
        }
        if bit(i - 1) == 1 && bit(i) == 1 {
            return None;
        }
        let below = m & low(i - 1);
        let merged = (bit(i - 1) | bit(i)) << (i - 1);
        let above = (m >> (i + 1)) << i;
        Some(below | merged | above)
    }

    /// s_j of a surjection on [n]: repeat vertex j.
    pub fn degeneracy_map(j: u32, m: u32) -> u32 {
        (m & low(j)) | ((m >> j) << (j + 1))
    }

    pub fn degenerate(n: u32, set: &[u32]) -> bool {
        set.iter().fold(0, |a, &m| a | m) != low(n)
    }

    pub fn unit(&self) -> Chain {
        SparseVec::basis(Prime::TWO, vec![low(self.s)])
    }

    fn canon(mut v: Vec<u32>) -> Option<Subset> {
        v.sort_unstable();
        if v.windows(2).any(|p| p[0] == p[1]) {
            None
        } else {
            Some(v)
        }
    }

    pub fn face(&self, n: u32, i: u32, c: &Chain) -> Chain {
        let mut out = SparseVec::zero(Prime::TWO);
        for set in c.keys() {
            let img: Option<Vec<u32>> = set.iter().map(|&m| Self::face_map(n, i, m)).collect();
            if let Some(v) = img.and_then(Self::canon) {
                out.add_term(v, 1);
            }
        }
        out
    }

    pub fn degeneracy(&self, j: u32, c: &Chain) -> Chain {
        c.map_keys(|set| {
            let mut v: Vec<u32> = set.iter().map(|&m| Self::degeneracy_map(j, m)).collect();
            v.sort_unstable();
            v
        })
    }

    /// Drops degenerate terms of a level-n chain.
    pub fn normalize(&self, n: u32, c: &Chain) -> Chain {
        c.filter(|set| !Self::degenerate(n, &set))
    }

    pub fn boundary(&self, n: u32, c: &Chain) -> Chain {
        let mut out = SparseVec::zero(Prime::TWO);
        if n == 0 {
            return out;
        }
        for i in 0..=n {
            out.add_assign(&self.face(n, i, c));
        }
        self.normalize(n - 1, &out)
    }

    pub fn product(a: &Chain, b: &Chain) -> Chain {
        let mut out = SparseVec::zero(Prime::TWO);
        for x in a.keys() {
            for y in b.keys() {
                let mut v = x.clone();
                v.extend_from_slice(&y);
                if let Some(v) = Self::canon(v) {
                    out.add_term(v, 1);
                }
            }
        }
        out
    }

    /// The index set V(r, i): pairs (A, B) of increasing i-sequences
    /// partitioning {r-i, ..., r+i-1} with a_1 = r - i.
    pub fn v_pairs(r: u32, i: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
        let lo = r - i;
        let rest: Vec<u32> = (lo + 1..r + i).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << rest.len()) {
            if mask.count_ones() != i - 1 {
                continue;
            }
            let mut a = vec![lo];
            let mut b = Vec::new();
            for (k, &x) in rest.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    a.push(x);
                } else {
                    b.push(x);
                }
            }
            out.push((a, b));
        }
        out
    }

    /// γ_i of a normalized cycle of simplicial degree r:
    /// Σ_{(A,B)} s_A(z) s_B(z), reduced modulo degenerate terms.
    pub fn gamma_apply(&self, i: u32, z: &Chain, r: u32) -> Result<Chain> {
        if i == 0 || i > r {
            return Err(Error::Invalid(format!("gamma_{i} needs 1 <= i <= {r}")));
        }
        if !self.boundary(r, z).is_zero() {
            return Err(Error::Invalid("gamma operations need a cycle".into()));
        }
        let mut out = SparseVec::zero(Prime::TWO);
        for (a, b) in Self::v_pairs(r, i) {
            let sa = a.iter().fold(z.clone(), |c, &j| self.degeneracy(j, &c));
            let sb = b.iter().fold(z.clone(), |c, &j| self.degeneracy(j, &c));
            out.add_assign(&Self::product(&sa, &sb));
        }
        Ok(self.normalize(r + i, &out))
    }

    /// Nondegenerate products of `f` distinct n-simplices.
    pub fn basis(&self, n: u32, f: usize) -> Vec<Subset> {
        let simplices = surjections(n, self.s);
        let full = low(n);
        let mut out = Vec::new();
        fn go(simp: &[u32], from: usize, f: usize, acc: &mut Vec<u32>, cover: u32, full: u32, out: &mut Vec<Subset>) {
            if acc.len() == f {
                if cover == full {
                    out.push(acc.clone());
                }
                return;
            }
            for k in from..simp.len() {
                acc.push(simp[k]);
                go(simp, k + 1, f, acc, cover | simp[k], full, out);
                acc.pop();
            }
        }
        go(&simplices, 0, f, &mut Vec::new(), 0, full, &mut out);
        out
    }

    /// Whether a normalized level-n chain of f-fold products bounds.
    pub fn is_boundary(&self, n: u32, f: usize, c: &Chain) -> bool {
        let c = self.normalize(n, c);
        if c.is_zero() {
            return true;
        }
        let target = self.basis(n, f);
        let index: std::collections::HashMap<&Subset, usize> = target.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let to_row = |v: &Chain| v.map_keys(|k| index[&k]);
        let mut rows: Vec<SparseVec<usize>> = self
            .basis(n + 1, f)
            .into_iter()
            .map(|set| to_row(&self.boundary(n + 1, &SparseVec::basis(Prime::TWO, set))))
            .collect();
        let before = echelonize_f2(&rows, false).rank;
        rows.push(to_row(&c));
        echelonize_f2(&rows, false).rank == before
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_and_degeneracy_identities() {
        let s = 2;
        for n in 2..7 {
            for m in surjections(n, s) {
                for j in 0..=n {
                    let sm = SimplicialExterior::degeneracy_map(j, m);
                    assert_eq!(SimplicialExterior::face_map(n + 1, j, sm), Some(m));
                    assert_eq!(SimplicialExterior::face_map(n + 1, j + 1, sm), Some(m));
                }
                for j in 1..=n {
                    for i in 0..j {
                        let a = SimplicialExterior::face_map(n, j, m).and_then(|x| SimplicialExterior::face_map(n - 1, i, x));
                        let b = SimplicialExterior::face_map(n, i, m).and_then(|x| SimplicialExterior::face_map(n - 1, j - 1, x));
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn v_pair_examples() {
        assert_eq!(SimplicialExterior::v_pairs(2, 1), vec![(vec![1], vec![2])]);
        assert_eq!(SimplicialExterior::v_pairs(3, 2).len(), 3);
    }

    #[test]
    fn gamma_gives_cycles() {
        for s in 1..=3u32 {
            let cx = SimplicialExterior::new(s);
            let z = cx.unit();
            for i in 1..=s {
                let g = cx.gamma_apply(i, &z, s).unwrap();
                assert!(cx.boundary(s + i, &g).is_zero(), "s={s} i={i}");
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let cx = SimplicialExterior::new(2);
        for n in 2..=6 {
            for f in 1..=3 {
                for set in cx.basis(n, f) {
                    let d = cx.boundary(n, &SparseVec::basis(Prime::TWO, set));
                    assert!(cx.boundary(n - 1, &d).is_zero());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let cx = SimplicialExterior::new(2);
        assert!(cx.gamma_apply(3, &cx.unit(), 2).is_err());
        let not_cycle = cx
            .basis(4, 2)
            .into_iter()
            .map(|set| SparseVec::basis(Prime::TWO, set))
            .find(|c| !cx.boundary(4, c).is_zero())
            .unwrap();
        assert!(cx.gamma_apply(1, &not_cycle, 4).is_err());
    }
}
