//! Normalized two-sided bar complexes Bar(id, T, g).

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Cell, ChainComplex, Piece, SparseVec, WGModule, Window};
use crate::error::Result;
use crate::lie::{AlgebraPresentation, Monad, Tower};

/// Largest simplicial degree that can carry a nondegenerate word of weight w.
fn depth_bound(g: &AlgebraPresentation, w: u32) -> usize {
    let w_min = g.module.iter().map(|e| e.w).min().unwrap_or(1).max(1);
    (w / w_min).saturating_sub(1) as usize
}

/// Nondegenerate level-n words of (w, t), in canonical order.
pub fn nondegenerate_at(tower: &mut Tower, n: usize, w: u32, t: i64) -> Vec<u32> {
    let ids = tower.nodes_at(n, w, t);
    if n == 0 {
        return ids.to_vec();
    }
    ids.iter().copied().filter(|&i| !tower.node(n, i).degenerate()).collect()
}

/// The nondegenerate n-simplices of Bar(id, T, g) inside a window.
pub fn bar_level_basis(monad: Monad, g: &AlgebraPresentation, n: usize, window: Window) -> Result<WGModule> {
    let mut tower = Tower::new(monad, g);
    let mut out = WGModule::new(window);
    for w in 1..=window.w_max {
        if n > depth_bound(g, w) {
            continue;
        }
        for t in window.t_min..=window.t_max {
            for id in nondegenerate_at(&mut tower, n, w, t) {
                out.push(tower.display(n, id), t, w)?;
            }
        }
    }
    Ok(out)
}

/// Alternating face sum of a level-n word, reduced modulo degenerate words.
pub fn normalized_boundary(tower: &mut Tower, n: usize, id: u32) -> Result<SparseVec<u32>> {
    let mut out = SparseVec::zero(tower.base().p);
    for i in 0..=n {
        out.add_assign(&tower.face(n, i, id)?);
    }
    if n == 1 {
        return Ok(out);
    }
    Ok(out.filter(|k| !tower.node(n - 1, k).degenerate()))
}

/// Builds the truncated normalized bar complex. Every (t, w) block of the
/// window is filled through simplicial degree s_max + 1.
pub fn bar_complex(monad: Monad, g: &AlgebraPresentation, window: Window) -> Result<ChainComplex> {
    let mut tower = Tower::new(monad, g);
    let mut cx = ChainComplex::new(g.p, window);
    for w in 1..=window.w_max {
        let top = depth_bound(g, w).min(window.s_max + 1);
        for t in window.t_min..=window.t_max {
            let mut cell = Cell::default();
            let mut prev: HashMap<u32, usize> = HashMap::new();
            for s in 0..=top {
                let ids = nondegenerate_at(&mut tower, s, w, t);
                let mut piece = Piece::default();
                for &id in &ids {
                    piece.labels.push(tower.display(s, id));
                    if s > 0 {
                        let d = normalized_boundary(&mut tower, s, id)?;
                        piece.boundary.push(d.map_keys(|k| prev[&k]));
                    }
                }
                prev = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
                cell.pieces.push(piece);
            }
            if cell.pieces.iter().any(|p| !p.labels.is_empty()) {
                cx.insert_cell(w, t, cell);
            }
        }
    }
    Ok(cx)
}

/// Nonzero homology dimensions keyed by (w, s, t).
pub fn bar_homology(monad: Monad, g: &AlgebraPresentation, window: Window) -> Result<BTreeMap<(u32, usize, i64), usize>> {
    bar_complex(monad, g, window)?.homology_table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{free_lie_rbar_algebra, trivial, Mode};
    use crate::rbar::untor_basis;

    fn win(t_min: i64, t_max: i64, w_max: u32, s_max: usize) -> Window {
        Window::new(t_min, t_max, w_max, s_max).unwrap()
    }

    fn check_simplicial(monad: Monad, g: &AlgebraPresentation, w_max: u32, t_min: i64, t_max: i64, top: usize) {
        let mut tw = Tower::new(monad, g);
        for n in 1..=top {
            for w in 1..=w_max {
                for t in t_min..=t_max {
                    for &x in tw.nodes_at(n, w, t).iter() {
                        for j in 1..=n {
                            for i in 0..j {
                                let dj = tw.face(n, j, x).unwrap();
                                let mut lhs = SparseVec::zero(g.p);
                                for y in dj.keys() {
                                    if n > 1 {
                                        lhs.add_assign(&tw.face(n - 1, i, y).unwrap());
                                    }
                                }
                                let di = tw.face(n, i, x).unwrap();
                                let mut rhs = SparseVec::zero(g.p);
                                for y in di.keys() {
                                    if n > 1 {
                                        rhs.add_assign(&tw.face(n - 1, j - 1, y).unwrap());
                                    }
                                }
                                assert_eq!(lhs, rhs, "d{i}d{j} on {} at level {n}", tw.display(n, x));
                            }
                        }
                        for j in 0..=n {
                            let s = tw.degeneracy(n, j, x).unwrap();
                            for i in 0..=n + 1 {
                                let mut d = SparseVec::zero(g.p);
                                for y in s.keys() {
                                    d.add_assign(&tw.face(n + 1, i, y).unwrap());
                                }
                                let expected = if i == j || i == j + 1 {
                                    SparseVec::basis(g.p, x)
                                } else if i < j {
                                    let mut e = SparseVec::zero(g.p);
                                    for y in tw.face(n, i, x).unwrap().keys() {
                                        e.add_assign(&tw.degeneracy(n - 1, j - 1, y).unwrap());
                                    }
                                    e
                                } else {
                                    let mut e = SparseVec::zero(g.p);
                                    for y in tw.face(n, i - 1, x).unwrap().keys() {
                                        e.add_assign(&tw.degeneracy(n - 1, j, y).unwrap());
                                    }
                                    e
                                };
                                if i < j && n == 0 {
                                    continue;
                                }
                                assert_eq!(d, expected, "d{i}s{j} on {} at level {n}", tw.display(n, x));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simplicial_identities_over_trivial() {
        let g = trivial(1);
        for monad in [Monad::LieR, Monad::LieTiR, Monad::LieTiR0, Monad::AR, Monad::AR0] {
            check_simplicial(monad, &g, 4, -2, 8, 3);
        }
    }

    #[test]
    fn simplicial_identities_over_free_algebra() {
        let mut v = WGModule::new(win(-10, 10, 4, 0));
        v.push("x", 1, 1).unwrap();
        v.push("y", 2, 1).unwrap();
        let g = free_lie_rbar_algebra(&v, Mode::LieR, win(-10, 12, 4, 0)).unwrap();
        check_simplicial(Monad::LieR, &g, 3, 0, 6, 2);
    }

    #[test]
    fn level_bases() {
        let g = trivial(2);
        let b0 = bar_level_basis(Monad::AR, &g, 0, win(0, 10, 2, 2)).unwrap();
        assert_eq!(b0.len(), 1);
        let b1 = bar_level_basis(Monad::AR, &g, 1, win(0, 10, 2, 2)).unwrap();
        // Q_a|x2 for 3 + a <= 10
        assert_eq!(b1.len(), 8);
        let l1 = bar_level_basis(Monad::LieR, &g, 1, win(0, 10, 2, 2)).unwrap();
        assert_eq!(l1.len(), 8);
    }

    #[test]
    fn faces_of_small_words() {
        let g = trivial(0);
        let mut tw = Tower::new(Monad::AR, &g);
        let q = tw.nodes_at(1, 2, 1);
        assert_eq!(q.len(), 1);
        assert!(tw.face(1, 0, q[0]).unwrap().is_zero());
        assert!(tw.face(1, 1, q[0]).unwrap().is_zero());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let g = trivial(1);
        for monad in [Monad::LieR, Monad::AR, Monad::LieTiR0] {
            bar_complex(monad, &g, win(-2, 12, 4, 4)).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn weight_one_is_inert() {
        let h = bar_homology(Monad::LieR, &trivial(3), win(0, 10, 1, 3)).unwrap();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![((1, 0, 3), 1)]);
    }

    #[test]
    fn weight_two_one_class_per_degree() {
        let k = 1;
        let h = bar_homology(Monad::LieR, &trivial(k), win(0, 14, 2, 3)).unwrap();
        for t in 0..=14 {
            let expect = usize::from(t >= 2 * k - 1);
            assert_eq!(h.get(&(2, 1, t)).copied().unwrap_or(0), expect, "t={t}");
        }
    }

    #[test]
    fn unstable_tor_small() {
        for k in 0..=1 {
            let window = win(-2, 16, 4, 3);
            let h = bar_homology(Monad::AR, &trivial(k), window).unwrap();
            for r in 0..=2usize {
                let mut want: BTreeMap<i64, usize> = BTreeMap::new();
                for (_, t) in untor_basis(k, None, r, &window) {
                    *want.entry(t).or_default() += 1;
                }
                for t in window.t_min..=window.t_max {
                    let got = h.get(&(1 << r, r, t)).copied().unwrap_or(0);
                    assert_eq!(got, want.get(&t).copied().unwrap_or(0), "k={k} r={r} t={t}");
                }
            }
        }
    }
}
