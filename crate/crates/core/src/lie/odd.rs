//! Free shifted Lie algebras over F_p, p odd.
//!
//! A shifted Lie algebra L is stored through its desuspension: a letter of
//! internal degree t sits in degree t - 1 of an ordinary graded Lie algebra,
//! realised inside the tensor algebra by the graded commutator.

use std::collections::BTreeMap;

use super::presentation::{AlgebraPresentation, Mode};
use crate::algebra::{Prime, SparseVec, WGModule, Window};
use crate::error::{Error, Result};

type Word = Vec<u16>;
type Poly = SparseVec<Word>;

fn concat(a: &Word, b: &Word) -> Word {
    let mut v = a.clone();
    v.extend_from_slice(b);
    v
}

fn product(p: Prime, x: &Poly, y: &Poly) -> Poly {
    let mut out = SparseVec::zero(p);
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            out.add_term(concat(&a, &b), p.mul(c, d));
        }
    }
    out
}

/// uv - (-1)^{|u||v|} vu for homogeneous u, v of the given (desuspended) degrees.
fn commutator(p: Prime, u: &Poly, du: i64, v: &Poly, dv: i64) -> Poly {
    let mut out = product(p, u, v);
    out.add_scaled(&product(p, v, u), p.neg(p.sign(du * dv)));
    out
}

/// Echelon rows over tensor words, each remembering its expression in the
/// chosen basis.
struct Span {
    p: Prime,
    rows: BTreeMap<Word, (Poly, SparseVec<usize>)>,
}

impl Span {
    fn new(p: Prime) -> Self {
        Span { p, rows: BTreeMap::new() }
    }

    /// Remainder of v and the combination subtracted to reach it.
    fn reduce(&self, v: &Poly) -> (Poly, SparseVec<usize>) {
        let p = self.p;
        let mut rem = v.clone();
        let mut used = SparseVec::zero(p);
        let mut from: Option<Word> = None;
        loop {
            let next = match &from {
                None => rem.iter().next(),
                Some(k) => rem.iter().find(|(w, _)| w > k),
            };
            let Some((key, c)) = next else { break };
            match self.rows.get(&key) {
                Some((row, combo)) => {
                    rem.add_scaled(row, p.neg(c));
                    used.add_scaled(combo, c);
                }
                None => from = Some(key),
            }
        }
        (rem, used)
    }

    /// Adds basis element `id` with tensor `v`; false if v is dependent.
    fn insert(&mut self, id: usize, v: &Poly) -> bool {
        let p = self.p;
        let (rem, used) = self.reduce(v);
        let Some((lead, c)) = rem.iter().next() else { return false };
        let inv = p.inv(c);
        let mut combo = SparseVec::basis(p, id);
        combo.add_scaled(&used, p.neg(1));
        self.rows.insert(lead, (rem.scaled(inv), combo.scaled(inv)));
        true
    }

    fn express(&self, v: &Poly) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce(v);
        rem.is_zero().then_some(used)
    }
}

struct Elt {
    label: String,
    t: i64,
    w: u32,
    poly: Poly,
}

/// The free shifted Lie algebra on `v` over F_p, through weight w_max and
/// internal degree t_max. The basis is chosen greedily among brackets of
/// lower basis elements, then sorted by weight, degree and label.
pub fn free_odd_lie(v: &WGModule, p: Prime, window: Window) -> Result<AlgebraPresentation> {
    if p.is_two() {
        return Err(Error::Unsupported("free_odd_lie needs an odd prime".into()));
    }
    if v.iter().any(|e| e.w != 1) {
        return Err(Error::Invalid("generators of a free odd Lie algebra have weight 1".into()));
    }
    let w_max = window.w_max;
    let gens = v
        .iter()
        .enumerate()
        .map(|(i, e)| Elt { label: e.label.clone(), t: e.t, w: 1, poly: SparseVec::basis(p, vec![i as u16]) })
        .collect();
    let mut by_weight: Vec<Vec<Elt>> = vec![Vec::new(), gens];
    let mut spans: BTreeMap<(u32, i64), Span> = BTreeMap::new();
    for w in 2..=w_max {
        let mut found = Vec::new();
        for w1 in 1..=w / 2 {
            let w2 = w - w1;
            for (ia, a) in by_weight[w1 as usize].iter().enumerate() {
                for (ib, b) in by_weight[w2 as usize].iter().enumerate() {
                    if w1 == w2 && ib < ia {
                        continue;
                    }
                    let c = commutator(p, &a.poly, a.t - 1, &b.poly, b.t - 1);
                    if c.is_zero() {
                        continue;
                    }
                    let t = a.t + b.t - 1;
                    let span = spans.entry((w, t)).or_insert_with(|| Span::new(p));
                    if span.insert(usize::MAX - found.len(), &c) {
                        found.push(Elt { label: format!("[{},{}]", a.label, b.label), t, w, poly: c });
                    }
                }
            }
        }
        by_weight.push(found);
    }
    let mut all: Vec<Elt> = by_weight.into_iter().flatten().filter(|e| e.t <= window.t_max).collect();
    all.sort_by(|a, b| (a.w, a.t, &a.label).cmp(&(b.w, b.t, &b.label)));
    let t_min = all.iter().map(|e| e.t).min().unwrap_or(window.t_min).min(window.t_min);
    let mut module = WGModule::new(Window { t_min, ..window });
    let mut spans: BTreeMap<(u32, i64), Span> = BTreeMap::new();
    for (i, e) in all.iter().enumerate() {
        module.push(e.label.clone(), e.t, e.w)?;
        let ok = spans.entry((e.w, e.t)).or_insert_with(|| Span::new(p)).insert(i, &e.poly);
        debug_assert!(ok);
    }
    let mut g = AlgebraPresentation::new(p, Mode::OddLie, module);
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let (w, t) = (a.w + b.w, a.t + b.t - 1);
            if w > w_max || t > window.t_max {
                continue;
            }
            let c = commutator(p, &a.poly, a.t - 1, &b.poly, b.t - 1);
            if c.is_zero() {
                continue;
            }
            let v = spans
                .get(&(w, t))
                .and_then(|s| s.express(&c))
                .ok_or_else(|| Error::Invalid(format!("[{}, {}] escapes the enumerated basis", a.label, b.label)))?;
            g.set_bracket(i, j, v);
        }
    }
    Ok(g)
}

/// Basis of the free odd-primary Lie^s_R algebra on weight-1 generators inside
/// a window of weight at most p: Lie words plus β^ε Q^j x at weight p, with
/// j >= |x|/2 and degree |x| + 2(p-1)j - ε - 1.
pub fn kjaer_basis(v: &WGModule, p: Prime, window: Window) -> Result<WGModule> {
    if p.is_two() {
        return Err(Error::Unsupported("kjaer_basis is for odd primes; use the R̄ route at p = 2".into()));
    }
    if window.w_max > p.get() {
        return Err(Error::Invalid(format!("operations of weight above {p} are not modelled")));
    }
    let lie = free_odd_lie(v, p, window)?;
    let mut out = lie.module.clone();
    if window.w_max == p.get() {
        let step = 2 * (p.get() as i64 - 1);
        for x in v.iter() {
            let mut j = x.t.div_euclid(2) + x.t.rem_euclid(2);
            while x.t + step * j - 2 <= window.t_max {
                for eps in [1i64, 0] {
                    let t = x.t + step * j - eps - 1;
                    if t <= window.t_max {
                        let b = if eps == 1 { "b" } else { "" };
                        out.push(format!("{b}Q{j}({})", x.label), t, p.get())?;
                    }
                }
                j += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::unbounded;

    fn letters(spec: &[(&str, i64)]) -> WGModule {
        let mut m = WGModule::new(unbounded(-50));
        for (l, t) in spec {
            m.push(*l, *t, 1).unwrap();
        }
        m
    }

    fn win(w: u32) -> Window {
        Window::new(-50, 200, w, 0).unwrap()
    }

    /// Dimensions of T(V) and of Sym(even) ⊗ Λ(odd) on the Lie basis, by
    /// (weight, desuspended degree).
    fn pbw(v: &WGModule, g: &AlgebraPresentation, w_max: u32) -> (BTreeMap<(u32, i64), i64>, BTreeMap<(u32, i64), i64>) {
        let mut tensor: BTreeMap<(u32, i64), i64> = BTreeMap::from([((0, 0), 1)]);
        for w in 1..=w_max {
            let prev: Vec<_> = tensor.iter().filter(|((pw, _), _)| *pw == w - 1).map(|(&k, &c)| (k, c)).collect();
            for ((_, d), c) in prev {
                for e in v.iter() {
                    *tensor.entry((w, d + e.t - 1)).or_default() += c;
                }
            }
        }
        let mut sym: BTreeMap<(u32, i64), i64> = BTreeMap::from([((0, 0), 1)]);
        for e in g.module.iter() {
            let d = e.t - 1;
            let odd = d.rem_euclid(2) == 1;
            let mut next = BTreeMap::new();
            for (&(w, t), &c) in &sym {
                let mut k = 0;
                while w + k * e.w <= w_max {
                    *next.entry((w + k * e.w, t + k as i64 * d)).or_default() += c;
                    k += 1;
                    if odd && k > 1 {
                        break;
                    }
                }
            }
            sym = next;
        }
        (tensor, sym)
    }

    #[test]
    fn pbw_counts_match_tensor_algebra() {
        let p = Prime::new(5).unwrap();
        for spec in [vec![("x", 2)], vec![("x", 1)], vec![("x", 2), ("y", 3)], vec![("x", 2), ("y", 2)], vec![("x", 1), ("y", 2), ("z", 4)]] {
            let v = letters(&spec);
            let g = free_odd_lie(&v, p, win(5)).unwrap();
            let (t, s) = pbw(&v, &g, 5);
            assert_eq!(t, s, "{spec:?}");
        }
    }

    #[test]
    fn one_even_generator() {
        let p = Prime::new(5).unwrap();
        let g = free_odd_lie(&letters(&[("x", 2)]), p, win(5)).unwrap();
        let labels: Vec<&str> = g.module.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, vec!["x", "[x,x]"]);
        let x = g.module.index("x").unwrap();
        let xx = g.bracket(x, x).unwrap();
        assert!(!xx.is_zero());
        assert!(g.bracket_vec(&xx, &SparseVec::basis(p, x)).unwrap().is_zero());
        g.check_laws().unwrap();
    }

    #[test]
    fn odd_generator_squares_to_zero() {
        let p = Prime::new(3).unwrap();
        let g = free_odd_lie(&letters(&[("y", 3)]), p, win(4)).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn laws_hold_on_two_generators() {
        let p = Prime::new(5).unwrap();
        let g = free_odd_lie(&letters(&[("x", 2), ("y", 1)]), p, win(4)).unwrap();
        g.check_laws().unwrap();
    }

    #[test]
    fn kjaer_extras_at_weight_p() {
        let p = Prime::new(3).unwrap();
        let v = letters(&[("x", 2)]);
        let m = kjaer_basis(&v, p, Window::new(-10, 12, 3, 0).unwrap()).unwrap();
        // Q^j x for j >= 1: degrees 2 + 4j - 1 and 2 + 4j - 2
        let ops: Vec<(String, i64)> = m.iter().filter(|e| e.w == 3).map(|e| (e.label.clone(), e.t)).collect();
        assert_eq!(ops, vec![("bQ1(x)".into(), 4), ("Q1(x)".into(), 5), ("bQ2(x)".into(), 8), ("Q2(x)".into(), 9), ("bQ3(x)".into(), 12)]);
        assert!(kjaer_basis(&v, Prime::TWO, Window::new(0, 5, 2, 0).unwrap()).is_err());
        assert!(kjaer_basis(&v, p, Window::new(0, 5, 4, 0).unwrap()).is_err());
    }
}
