//! Chevalley–Eilenberg complexes of shifted Lie algebras.
//!
//! Over F_2 the complex of a totally isotropic algebra is the exterior
//! algebra with δ(x_1…x_n) = Σ_{i<j} [x_i,x_j] x_1…x̂_i…x̂_j…x_n, in
//! (s, t) = (n − 1, Σ|x_i| − (n − 1)). The simplicial version runs the same
//! formula levelwise on AR_•(L) and adds the alternating face sum.
//!
//! At odd p the complex is Γ(L_even) ⊗ Λ(L_odd) with the four-term
//! differential. The bracket appearing there is the shifted bracket
//! [a, b] = (−1)^{|a|} {a, b}, where {·,·} is the stored bracket of the
//! desuspension.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{Cell, ChainComplex, Piece, Prime, SparseVec, Window};
use crate::error::{Error, Result};
use crate::lie::{AlgebraPresentation, Mode, Monad, Shape, Tower};

/// A square-zero monomial x_1 … x_n, strictly increasing basis indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CEWord(pub Vec<usize>);

/// γ_{k_1}(x_1)…γ_{k_m}(x_m)⟨y_1,…,y_n⟩: even labels with exponents, odd
/// labels strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CEWordOdd {
    pub gamma: Vec<(usize, u32)>,
    pub ext: Vec<usize>,
}

impl CEWordOdd {
    pub fn len(&self) -> usize {
        self.gamma.iter().map(|&(_, k)| k as usize).sum::<usize>() + self.ext.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn exponent(&self, x: usize) -> u32 {
        self.gamma.iter().find(|e| e.0 == x).map_or(0, |e| e.1)
    }

    fn bump(&mut self, x: usize, by: i64) {
        match self.gamma.iter().position(|e| e.0 == x) {
            Some(i) => {
                let k = self.gamma[i].1 as i64 + by;
                if k == 0 {
                    self.gamma.remove(i);
                } else {
                    self.gamma[i].1 = k as u32;
                }
            }
            None => {
                debug_assert!(by > 0);
                let i = self.gamma.partition_point(|e| e.0 < x);
                self.gamma.insert(i, (x, by as u32));
            }
        }
    }
}

fn show(g: &AlgebraPresentation, idx: &[usize]) -> String {
    idx.iter().map(|&i| g.module.label(i)).collect::<Vec<_>>().join(" ")
}

impl CEWord {
    pub fn display(&self, g: &AlgebraPresentation) -> String {
        show(g, &self.0)
    }
}

impl CEWordOdd {
    pub fn display(&self, g: &AlgebraPresentation) -> String {
        let mut s: String = self.gamma.iter().map(|&(x, k)| format!("g{k}({})", g.module.label(x))).collect();
        if !self.ext.is_empty() || s.is_empty() {
            s.push_str(&format!("<{}>", show(g, &self.ext).replace(' ', ",")));
        }
        s
    }
}

impl fmt::Display for CEWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A graded generator of a complex: (s, w, t, word).
type Graded<W> = (usize, u32, i64, W);

/// Groups words into (w, t) cells and wires up the boundary.
fn assemble<W: Ord + Clone + std::hash::Hash>(
    p: Prime,
    window: Window,
    words: Vec<Graded<W>>,
    mut boundary: impl FnMut(&W) -> Result<SparseVec<W>>,
    mut label: impl FnMut(&W) -> String,
) -> Result<ChainComplex> {
    let mut cells: BTreeMap<(u32, i64), Vec<Vec<W>>> = BTreeMap::new();
    for (s, w, t, word) in words {
        if s > window.s_max + 1 || !window.contains(t, w) {
            continue;
        }
        let cell = cells.entry((w, t)).or_default();
        if cell.len() <= s {
            cell.resize(s + 1, Vec::new());
        }
        cell[s].push(word);
    }
    let mut cx = ChainComplex::new(p, window);
    for ((w, t), mut by_s) in cells {
        let mut cell = Cell::default();
        let mut prev: HashMap<W, usize> = HashMap::new();
        for (s, words) in by_s.iter_mut().enumerate() {
            words.sort();
            let mut piece = Piece::default();
            for word in words.iter() {
                piece.labels.push(label(word));
                if s > 0 {
                    let d = boundary(word)?;
                    let mut row = SparseVec::zero(p);
                    for (k, c) in d.iter() {
                        let i = prev.get(&k).ok_or_else(|| Error::Invalid(format!("boundary of {} leaves the enumerated basis", label(word))))?;
                        row.add_term(*i, c);
                    }
                    piece.boundary.push(row);
                }
            }
            prev = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            cell.pieces.push(piece);
        }
        cx.insert_cell(w, t, cell);
    }
    Ok(cx)
}

/// Strictly increasing subsets of 0..n with total weight at most w_max,
/// as (indices, weight, degree sum).
fn subsets(weights: &[u32], degrees: &[i64], w_max: u32, max_len: usize, keep: &mut impl FnMut(&[usize]) -> bool) -> Vec<(Vec<usize>, u32, i64)> {
    fn go(
        from: usize,
        acc: &mut Vec<usize>,
        w: u32,
        t: i64,
        ctx: (&[u32], &[i64], u32, usize),
        keep: &mut impl FnMut(&[usize]) -> bool,
        out: &mut Vec<(Vec<usize>, u32, i64)>,
    ) {
        let (weights, degrees, w_max, max_len) = ctx;
        if !acc.is_empty() && keep(acc) {
            out.push((acc.clone(), w, t));
        }
        if acc.len() == max_len {
            return;
        }
        for i in from..weights.len() {
            if w + weights[i] > w_max {
                continue;
            }
            acc.push(i);
            go(i + 1, acc, w + weights[i], t + degrees[i], ctx, keep, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, &mut Vec::new(), 0, 0, (weights, degrees, w_max, max_len), keep, &mut out);
    out
}

fn require_ti(g: &AlgebraPresentation) -> Result<()> {
    if !g.p.is_two() {
        return Err(Error::Unsupported("the square-zero complex is defined over F_2; use ce_complex_fp".into()));
    }
    if !g.mode.is_ti() {
        return Err(Error::Unsupported(format!("CE over F_2 needs a totally isotropic bracket, got {:?}", g.mode)));
    }
    for i in 0..g.len() {
        let e = g.module.elt(i);
        if 2 * e.w <= g.window().w_max && !g.bracket(i, i)?.is_zero() {
            return Err(Error::Law(format!("<{0}, {0}> != 0, square-zero fails", e.label)));
        }
    }
    Ok(())
}

/// Inserts z into a sorted square-zero word; None if already present.
fn insert_f2(rest: &[usize], z: usize) -> Option<Vec<usize>> {
    let i = rest.partition_point(|&x| x < z);
    if rest.get(i) == Some(&z) {
        return None;
    }
    let mut v = rest.to_vec();
    v.insert(i, z);
    Some(v)
}

fn delta_f2(g: &AlgebraPresentation, word: &[usize]) -> Result<SparseVec<CEWord>> {
    let mut out = SparseVec::zero(Prime::TWO);
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            let b = g.bracket(word[i], word[j])?;
            if b.is_zero() {
                continue;
            }
            let rest: Vec<usize> = word.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect();
            for z in b.keys() {
                if let Some(v) = insert_f2(&rest, z) {
                    out.add_term(CEWord(v), 1);
                }
            }
        }
    }
    Ok(out)
}

/// The F_2 complex of a constant totally isotropic algebra.
pub fn ce_complex_f2(g: &AlgebraPresentation, window: Window) -> Result<ChainComplex> {
    require_ti(g)?;
    let weights: Vec<u32> = g.module.iter().map(|e| e.w).collect();
    let degrees: Vec<i64> = g.module.iter().map(|e| e.t).collect();
    let words = subsets(&weights, &degrees, window.w_max, window.s_max + 2, &mut |_| true)
        .into_iter()
        .map(|(v, w, t)| {
            let n = v.len();
            (n - 1, w, t - (n as i64 - 1), CEWord(v))
        })
        .collect();
    assemble(Prime::TWO, window, words, |w| delta_f2(g, &w.0), |w| w.display(g))
}

/// A level-m word of CE(AR_•(L)).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ArWord {
    m: usize,
    nodes: Vec<u32>,
}

fn full_units(m: usize) -> u64 {
    (1u64 << m) - 1
}

/// Follows a chain of m unit insertions down to level 0.
fn unit_root(tower: &Tower, m: usize, mut id: u32) -> u32 {
    for level in (1..=m).rev() {
        match tower.node(level, id).shape {
            Shape::Unit(c) => id = c,
            _ => unreachable!("checked by mask"),
        }
    }
    id
}

fn lift_units(tower: &mut Tower, m: usize, mut id: u32) -> u32 {
    for level in 1..=m {
        id = tower.intern(level, Shape::Unit(id));
    }
    id
}

fn mask_at(tower: &Tower, m: usize, id: u32) -> u64 {
    if m == 0 {
        0
    } else {
        tower.node(m, id).mask
    }
}

fn ar_degenerate(tower: &Tower, m: usize, nodes: &[u32]) -> bool {
    m > 0 && nodes.iter().fold(u64::MAX, |a, &x| a & mask_at(tower, m, x)) != 0
}

fn ar_boundary(tower: &mut Tower, word: &ArWord) -> Result<SparseVec<ArWord>> {
    let m = word.m;
    let g = tower.base();
    let mut out: SparseVec<ArWord> = SparseVec::zero(Prime::TWO);
    let n = word.nodes.len();
    // levelwise bracket: nonzero only on iterated units
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (word.nodes[i], word.nodes[j]);
            let full = full_units(m);
            if mask_at(tower, m, a) != full || mask_at(tower, m, b) != full {
                continue;
            }
            let (x, y) = (unit_root(tower, m, a), unit_root(tower, m, b));
            let br = g.bracket(x as usize, y as usize)?;
            let rest: Vec<u32> = word.nodes.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v).collect();
            for z in br.keys() {
                let z = lift_units(tower, m, z as u32);
                let mut v = rest.clone();
                if v.contains(&z) {
                    continue;
                }
                v.push(z);
                v.sort_unstable();
                out.add_term(ArWord { m, nodes: v }, 1);
            }
        }
    }
    // face maps, applied factorwise
    if m > 0 {
        for f in 0..=m {
            let mut terms: Vec<Vec<u32>> = vec![Vec::new()];
            for &x in &word.nodes {
                let d = tower.face(m, f, x)?;
                let mut next = Vec::new();
                for t in &terms {
                    for y in d.keys() {
                        if !t.contains(&y) {
                            let mut v = t.clone();
                            v.push(y);
                            next.push(v);
                        }
                    }
                }
                terms = next;
                if terms.is_empty() {
                    break;
                }
            }
            for mut v in terms {
                v.sort_unstable();
                out.add_term(ArWord { m: m - 1, nodes: v }, 1);
            }
        }
    }
    let filtered = out.filter(|w| !ar_degenerate(tower, w.m, &w.nodes));
    Ok(filtered)
}

/// The total complex of CE(AR_•(L)) for a totally isotropic L, normalized:
/// a word is degenerate when all of its letters lie in the image of one s_j.
/// A level-m word of n letters sits in s = (n − 1) + m.
pub fn ce_complex_ar(g: &AlgebraPresentation, window: Window) -> Result<ChainComplex> {
    require_ti(g)?;
    let mut tower = Tower::new(Monad::AR, g);
    let mut words = Vec::new();
    for m in 0..=window.s_max + 1 {
        let lows: Vec<i64> = (1..=window.w_max).filter_map(|w| tower.min_degree(m, w)).collect();
        let Some(&mu) = lows.iter().min() else { continue };
        let t_hi = window.t_max + (window.w_max as i64 - 1) * (1 - mu).max(0);
        let mut ids = Vec::new();
        for w in 1..=window.w_max {
            let Some(lo) = tower.min_degree(m, w) else { continue };
            for t in lo..=t_hi {
                ids.extend(tower.nodes_at(m, w, t).iter().copied());
            }
        }
        let weights: Vec<u32> = ids.iter().map(|&i| tower.info(m, i).0).collect();
        let degrees: Vec<i64> = ids.iter().map(|&i| tower.info(m, i).1).collect();
        let masks: Vec<u64> = ids.iter().map(|&i| tower.info(m, i).2).collect();
        let max_len = window.s_max + 2 - m;
        let keep = |v: &[usize]| m == 0 || v.iter().fold(u64::MAX, |a, &k| a & masks[k]) == 0;
        for (v, w, t) in subsets(&weights, &degrees, window.w_max, max_len, &mut { keep }) {
            let n = v.len();
            let mut nodes: Vec<u32> = v.into_iter().map(|k| ids[k]).collect();
            nodes.sort_unstable();
            words.push((n - 1 + m, w, t - (n as i64 - 1), ArWord { m, nodes }));
        }
    }
    let labels = |w: &ArWord, tower: &Tower| -> String {
        let parts: Vec<String> = w.nodes.iter().map(|&x| if w.m == 0 { g.module.label(x as usize).to_string() } else { tower.display(w.m, x) }).collect();
        format!("{}:{}", w.m, parts.join(" "))
    };
    let tower = std::cell::RefCell::new(tower);
    assemble(Prime::TWO, window, words, |w| ar_boundary(&mut tower.borrow_mut(), w), |w| labels(w, &tower.borrow()))
}

fn is_odd(t: i64) -> bool {
    t.rem_euclid(2) == 1
}

/// Inserts an odd element at the front of ⟨…⟩ and sorts: sign and word.
fn insert_ext(ext: &[usize], z: usize) -> Option<(usize, Vec<usize>)> {
    let i = ext.partition_point(|&x| x < z);
    if ext.get(i) == Some(&z) {
        return None;
    }
    let mut v = ext.to_vec();
    v.insert(i, z);
    Some((i, v))
}

struct OddCE<'a> {
    g: &'a AlgebraPresentation,
}

impl OddCE<'_> {
    fn deg(&self, i: usize) -> i64 {
        self.g.module.elt(i).t
    }

    fn bracket(&self, a: usize, b: usize) -> Result<SparseVec<usize>> {
        Ok(self.g.bracket(a, b)?.scaled(self.g.p.sign(self.deg(a))))
    }

    /// Adds c · base⟨z, ext⟩ for each term z of an odd-degree vector.
    fn push_ext(&self, out: &mut SparseVec<CEWordOdd>, base: &CEWordOdd, ext: &[usize], v: &SparseVec<usize>, c: u32) {
        let p = self.g.p;
        for (z, a) in v.iter() {
            debug_assert!(is_odd(self.deg(z)));
            if let Some((pos, e)) = insert_ext(ext, z) {
                let word = CEWordOdd { gamma: base.gamma.clone(), ext: e };
                out.add_term(word, p.mul(p.mul(c, a), p.sign(pos as i64)));
            }
        }
    }

    fn boundary(&self, word: &CEWordOdd) -> Result<SparseVec<CEWordOdd>> {
        let p = self.g.p;
        let mut out = SparseVec::zero(p);
        let (gam, ext) = (&word.gamma, &word.ext);
        // γ·γ → ⟨[x_i, x_j], …⟩
        for i in 0..gam.len() {
            for j in i + 1..gam.len() {
                let b = self.bracket(gam[i].0, gam[j].0)?;
                if b.is_zero() {
                    continue;
                }
                let mut base = word.clone();
                base.bump(gam[i].0, -1);
                base.bump(gam[j].0, -1);
                self.push_ext(&mut out, &base, ext, &b, 1);
            }
        }
        // ⟨y_i, y_j⟩ → (−1)^{i+j−1} ⟨[y_i, y_j], …⟩, indices from 1
        for i in 0..ext.len() {
            for j in i + 1..ext.len() {
                let b = self.bracket(ext[i], ext[j])?;
                if b.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = ext.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &y)| y).collect();
                self.push_ext(&mut out, word, &rest, &b, p.sign((i + j + 1) as i64));
            }
        }
        // γ_k(x) → ½ γ_{k−2}(x)⟨[x, x], …⟩
        let half = p.inv(2);
        for &(x, k) in gam {
            if k < 2 {
                continue;
            }
            let b = self.bracket(x, x)?;
            if b.is_zero() {
                continue;
            }
            let mut base = word.clone();
            base.bump(x, -2);
            self.push_ext(&mut out, &base, ext, &b, half);
        }
        // γ(x)⟨y⟩ → (−1)^{j−1} γ_1([x_i, y_j]) …
        for &(x, _) in gam {
            for (j, &y) in ext.iter().enumerate() {
                let b = self.bracket(x, y)?;
                if b.is_zero() {
                    continue;
                }
                let mut base = word.clone();
                base.bump(x, -1);
                base.ext.remove(j);
                for (z, a) in b.iter() {
                    debug_assert!(!is_odd(self.deg(z)));
                    let e = base.exponent(z) + 1;
                    let c = p.mul(p.mul(a, p.reduce(e as i64)), p.sign(j as i64));
                    if c == 0 {
                        continue;
                    }
                    let mut v = base.clone();
                    v.bump(z, 1);
                    out.add_term(v, c);
                }
            }
        }
        Ok(out)
    }

    /// Γ(even) ⊗ Λ(odd) monomials of weight ≤ w_max with at most max_len letters.
    fn words(&self, w_max: u32, max_len: usize) -> Vec<(CEWordOdd, u32, i64)> {
        let n = self.g.len();
        let mut out = Vec::new();
        fn go(ctx: &OddCE, i: usize, cur: &mut CEWordOdd, w: u32, t: i64, w_max: u32, max_len: usize, n: usize, out: &mut Vec<(CEWordOdd, u32, i64)>) {
            if i == n {
                if !cur.is_empty() {
                    out.push((cur.clone(), w, t));
                }
                return;
            }
            go(ctx, i + 1, cur, w, t, w_max, max_len, n, out);
            let e = ctx.g.module.elt(i);
            let cap = if is_odd(e.t) { 1 } else { u32::MAX };
            let mut k = 1;
            while k <= cap && w + k * e.w <= w_max && cur.len() + k as usize <= max_len {
                if is_odd(e.t) {
                    cur.ext.push(i);
                } else {
                    cur.gamma.push((i, k));
                }
                go(ctx, i + 1, cur, w + k * e.w, t + k as i64 * e.t, w_max, max_len, n, out);
                if is_odd(e.t) {
                    cur.ext.pop();
                } else {
                    cur.gamma.pop();
                }
                k += 1;
            }
        }
        go(self, 0, &mut CEWordOdd { gamma: vec![], ext: vec![] }, 0, 0, w_max, max_len, n, &mut out);
        out
    }
}

/// The odd-primary complex Γ(L_even) ⊗ Λ(L_odd). Divided powers are
/// truncated by weight.
pub fn ce_complex_fp(g: &AlgebraPresentation, window: Window) -> Result<ChainComplex> {
    if g.p.is_two() {
        return Err(Error::Unsupported("ce_complex_fp needs an odd prime".into()));
    }
    if g.mode != Mode::OddLie {
        return Err(Error::Unsupported(format!("ce_complex_fp expects an odd Lie presentation, got {:?}", g.mode)));
    }
    let ctx = OddCE { g };
    let words = ctx
        .words(window.w_max, window.s_max + 2)
        .into_iter()
        .map(|(word, w, t)| {
            let n = word.len();
            (n - 1, w, t - (n as i64 - 1), word)
        })
        .collect();
    assemble(g.p, window, words, |w| ctx.boundary(w), |w| w.display(g))
}

/// The odd-primary boundary of a single monomial.
pub fn ce_boundary_fp(g: &AlgebraPresentation, word: &CEWordOdd) -> Result<SparseVec<CEWordOdd>> {
    OddCE { g }.boundary(word)
}

/// Homology dims of the constant complex, by (w, s, t): the square-zero
/// complex at p = 2, the divided-power one at odd p.
pub fn ce_homology(g: &AlgebraPresentation, window: Window) -> Result<BTreeMap<(u32, usize, i64), usize>> {
    let cx = if g.p.is_two() { ce_complex_f2(g, window)? } else { ce_complex_fp(g, window)? };
    cx.homology_table()
}

pub fn ce_homology_ar(g: &AlgebraPresentation, window: Window) -> Result<BTreeMap<(u32, usize, i64), usize>> {
    ce_complex_ar(g, window)?.homology_table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::WGModule;
    use crate::bar::bar_homology;
    use crate::lie::{abelian, free_lie_rbar_algebra, free_odd_lie, ti_associate, trivial, unbounded};

    fn win(t_min: i64, t_max: i64, w_max: u32, s_max: usize) -> Window {
        Window::new(t_min, t_max, w_max, s_max).unwrap()
    }

    fn small_ti() -> AlgebraPresentation {
        let mut v = WGModule::new(win(-10, 10, 3, 0));
        v.push("x", 1, 1).unwrap();
        v.push("y", 2, 1).unwrap();
        let g = free_lie_rbar_algebra(&v, Mode::LieR, win(-10, 8, 3, 0)).unwrap();
        ti_associate(&g).unwrap()
    }

    #[test]
    fn two_and_three_letter_boundaries() {
        let g = small_ti();
        let (x, y) = (g.module.index("x").unwrap(), g.module.index("y").unwrap());
        let d = delta_f2(&g, &[x, y]).unwrap();
        let xy = g.bracket(x, y).unwrap();
        assert_eq!(d, xy.map_keys(|k| CEWord(vec![k])));
        assert!(!d.is_zero());
    }

    #[test]
    fn square_zero_is_required() {
        let g = free_lie_rbar_algebra(&trivial(1).module, Mode::LieR, win(-5, 8, 2, 0)).unwrap();
        assert!(ce_complex_f2(&g, win(-5, 8, 2, 2)).is_err());
    }

    #[test]
    fn abelian_homology_counts_words() {
        let mut v = WGModule::new(unbounded(-5));
        v.push("a", 1, 1).unwrap();
        v.push("b", 2, 1).unwrap();
        v.push("c", 3, 1).unwrap();
        let g = abelian(v, Mode::LieTiR);
        let h = ce_homology(&g, win(-5, 10, 3, 3)).unwrap();
        let total: usize = h.values().sum();
        assert_eq!(total, 7);
        assert_eq!(h[&(3, 2, 4)], 1);
    }

    #[test]
    fn constant_complex_matches_plain_bar() {
        let g = small_ti();
        let window = win(-4, 6, 3, 3);
        let cx = ce_complex_f2(&g, window).unwrap();
        cx.validate().unwrap();
        assert_eq!(cx.homology_table().unwrap(), bar_homology(Monad::PlainTi, &g, window).unwrap());
    }

    #[test]
    fn simplicial_complex_matches_rbar_bar() {
        for g in [ti_associate(&trivial(1)).unwrap(), small_ti()] {
            let window = win(-2, 7, 3, 3);
            let cx = ce_complex_ar(&g, window).unwrap();
            cx.validate().unwrap();
            assert_eq!(cx.homology_table().unwrap(), bar_homology(Monad::LieTiR, &g, window).unwrap());
        }
    }

    fn odd_letters(p: u32, spec: &[(&str, i64)], w: u32) -> AlgebraPresentation {
        let mut v = WGModule::new(unbounded(-20));
        for (l, t) in spec {
            v.push(*l, *t, 1).unwrap();
        }
        free_odd_lie(&v, Prime::new(p).unwrap(), win(-20, 60, w, 0)).unwrap()
    }

    #[test]
    fn odd_boundary_squares_to_zero() {
        for spec in [vec![("x", 2)], vec![("x", 2), ("y", 1)], vec![("x", 2), ("y", 2), ("z", 3)], vec![("y", 1), ("u", 3)]] {
            let g = odd_letters(5, &spec, 4);
            let cx = ce_complex_fp(&g, win(-20, 60, 4, 4)).unwrap();
            cx.validate().unwrap();
        }
    }

    #[test]
    fn odd_examples() {
        let g = odd_letters(5, &[("x", 2), ("y", 1), ("z", 3)], 2);
        let p = g.p;
        let (x, y, z) = (g.module.index("x").unwrap(), g.module.index("y").unwrap(), g.module.index("z").unwrap());
        // ∂⟨y, z⟩ = [y, z]
        let d = ce_boundary_fp(&g, &CEWordOdd { gamma: vec![], ext: vec![y, z] }).unwrap();
        let b = g.bracket(y, z).unwrap().scaled(p.sign(1));
        assert_eq!(d, b.map_keys(|k| CEWordOdd { gamma: vec![], ext: vec![k] }));
        // ∂γ_2(x) = ½⟨[x, x]⟩
        let d = ce_boundary_fp(&g, &CEWordOdd { gamma: vec![(x, 2)], ext: vec![] }).unwrap();
        let xx = g.bracket(x, x).unwrap().scaled(p.inv(2));
        assert_eq!(d, xx.map_keys(|k| CEWordOdd { gamma: vec![], ext: vec![k] }));
        // ∂γ_1(x)⟨y⟩ = γ_1([x, y])
        let d = ce_boundary_fp(&g, &CEWordOdd { gamma: vec![(x, 1)], ext: vec![y] }).unwrap();
        let xy = g.bracket(x, y).unwrap();
        assert_eq!(d, xy.map_keys(|k| CEWordOdd { gamma: vec![(k, 1)], ext: vec![] }));
    }

    #[test]
    fn self_bracket_cancels_at_weight_two() {
        let g = odd_letters(5, &[("x", 2)], 2);
        let h = ce_homology(&g, win(-20, 60, 2, 3)).unwrap();
        // γ_2(x) kills [x, x]; only x survives
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![((1, 0, 2), 1)]);
    }

    #[test]
    fn odd_rejects_p2() {
        assert!(ce_complex_fp(&small_ti(), win(0, 4, 2, 2)).is_err());
    }
}
