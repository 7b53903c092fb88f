//! γ-operations: admissible sequences, predicted exterior bases and an
//! explicit simplicial exterior algebra on which γ_i is computed from
//! degeneracies.

mod exterior;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Window;
use crate::rbar::QWord;

pub use exterior::{surjections, SimplicialExterior, Subset};

/// γ_{i_1} ... γ_{i_m}, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaSeq(pub Vec<u32>);

impl GammaSeq {
    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= 2 * p[1])
    }

    pub fn excess(&self) -> i64 {
        match self.0.split_first() {
            None => 0,
            Some((&a, rest)) => a as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
        }
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Admissible sequences of length >= 1 with excess <= r, final entry >=
/// `min_last`, at most `max_len` entries and entry sum <= `max_sum`.
pub fn gamma_sequences(r: u32, min_last: u32, max_len: usize, max_sum: u32) -> Vec<GammaSeq> {
    fn go(acc: &mut Vec<u32>, r: u32, max_len: usize, max_sum: u32, out: &mut Vec<GammaSeq>) {
        // acc is innermost first
        let seq = GammaSeq(acc.iter().rev().copied().collect());
        if seq.excess() <= r as i64 {
            out.push(seq);
        }
        if acc.len() == max_len {
            return;
        }
        let used: u32 = acc.iter().sum();
        let lo = 2 * *acc.last().unwrap();
        for i in lo..=max_sum.saturating_sub(used) {
            acc.push(i);
            go(acc, r, max_len, max_sum, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    for i in min_last.max(1)..=max_sum {
        go(&mut vec![i], r, max_len, max_sum, &mut out);
    }
    out.sort();
    out
}

/// A class on the E² page with (bracket count h, simplicial degree s, internal
/// degree t, weight w). The bar complex sees it in degree h + s.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct E2Class {
    pub name: String,
    pub h: u32,
    pub s: u32,
    pub t: i64,
    pub w: u32,
}

impl E2Class {
    pub fn generator(name: impl Into<String>, s: u32, t: i64, w: u32) -> Self {
        E2Class { name: name.into(), h: 0, s, t, w }
    }

    pub fn total_s(&self) -> u32 {
        self.h + self.s
    }

    /// Q̄^j in upper indexing.
    pub fn q_upper(&self, j: i64) -> Self {
        E2Class { name: format!("Q^{j}({})", self.name), h: self.h, s: self.s + 1, t: self.t + j - 1, w: 2 * self.w }
    }

    pub fn gamma(&self, i: u32) -> Self {
        E2Class { name: format!("g{i}({})", self.name), h: 2 * self.h + 1, s: self.s + i, t: 2 * self.t - 1, w: 2 * self.w }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        E2Class {
            name: format!("{}^{}", self.name, other.name),
            h: self.h + other.h + 1,
            s: self.s + other.s,
            t: self.t + other.t - 1,
            w: self.w + other.w,
        }
    }
}

impl fmt::Display for E2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (h={}, s={}, t={}, w={})", self.name, self.h, self.s, self.t, self.w)
    }
}

/// Counts classes by (w, h + s, t).
pub fn dims(classes: &[E2Class]) -> BTreeMap<(u32, usize, i64), usize> {
    let mut out = BTreeMap::new();
    for c in classes {
        *out.entry((c.w, c.total_s() as usize, c.t)).or_default() += 1;
    }
    out
}

/// Which family of exterior generators to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Lie^s_R̄: i_m >= 2, and j_1 = 0 forces r = 1 or i_m = 2.
    Main,
    /// Lie^{s,ti}_R̄: any i_m >= 1.
    Ti,
    /// Lie^{s,ti}_{R̄>0}: i_m >= 1 and every j_l >= 1.
    Positive,
}

/// Lower-indexed sequences J = (j_1, ..., j_r) with j_l <= j_{l+1} + 1,
/// j_l >= floor, j_r < n, applied to x_k with degree at most t_max.
pub fn unstable_sequences(k: i64, r: usize, floor: i32, n: Option<u32>, t_max: i64) -> Vec<QWord> {
    fn go(acc: &mut Vec<i32>, r: usize, floor: i32, hi: i32, k: i64, t_max: i64, out: &mut Vec<QWord>) {
        if acc.len() == r {
            let q = QWord(acc.iter().rev().copied().collect());
            if q.degree(k) <= t_max {
                out.push(q);
            }
            return;
        }
        // acc holds j_r, j_{r-1}, ...; the next outer index is at most last + 1.
        let cap = acc.last().map_or(hi, |&j| (j + 1).min(hi));
        for j in floor..=cap {
            acc.push(j);
            go(acc, r, floor, hi, k, t_max, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        out.push(QWord::empty());
        return out;
    }
    // Each index contributes at least 2^{l-1} j_l to the degree.
    let bound = (t_max - (1i64 << r) * (k - 1) - 1).max(0);
    let hi = bound.min(i32::MAX as i64 / 2) as i32;
    let mut acc = Vec::new();
    match n {
        Some(n) => {
            for jr in floor..(n as i32).min(hi + 1) {
                acc.push(jr);
                go(&mut acc, r, floor, hi, k, t_max, &mut out);
                acc.pop();
            }
        }
        None => go(&mut acc, r, floor, hi, k, t_max, &mut out),
    }
    out.sort();
    out
}

fn qword_name(q: &QWord, k: i64) -> String {
    let ops: String = q.0.iter().map(|j| format!("Q{j}")).collect();
    format!("{ops}x{k}")
}

/// Exterior generators γ_I Q̄_J(x_k) of the chosen variant.
pub fn generators(k: i64, n: Option<u32>, variant: Variant, window: &Window) -> Vec<E2Class> {
    let w_max = window.w_max;
    let slack = (1 - k).max(0);
    let mut out = Vec::new();
    let mut r = 0usize;
    while (1u32 << r) <= w_max {
        let floor = if variant == Variant::Positive { 1 } else { 0 };
        let t_gen = window.t_max + slack * (w_max - (1 << r)) as i64;
        for q in unstable_sequences(k, r, floor, n, t_gen) {
            let base = E2Class::generator(qword_name(&q, k), r as u32, q.degree(k), q.weight(1));
            let j1_zero = q.0.first() == Some(&0);
            if !(variant == Variant::Main && j1_zero && r != 1) && base.total_s() as usize <= window.s_max {
                out.push(base.clone());
            }
            let mut m = 1;
            while (1u32 << (r + m)) <= w_max {
                let min_last = if variant == Variant::Main { 2 } else { 1 };
                for seq in gamma_sequences(r as u32, min_last, m, window.s_max as u32) {
                    if seq.0.len() != m {
                        continue;
                    }
                    if variant == Variant::Main && j1_zero && r != 1 && *seq.0.last().unwrap() != 2 {
                        continue;
                    }
                    let c = seq.0.iter().rev().fold(base.clone(), |c, &i| c.gamma(i));
                    if c.total_s() as usize <= window.s_max {
                        out.push(c);
                    }
                }
                m += 1;
            }
        }
        r += 1;
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// All exterior monomials (strictly increasing generator lists) inside the
/// window.
pub fn exterior_closure(gens: &[E2Class], window: &Window) -> Vec<E2Class> {
    fn go(gens: &[E2Class], from: usize, cur: Option<E2Class>, window: &Window, out: &mut Vec<E2Class>) {
        for i in from..gens.len() {
            let next = match &cur {
                None => gens[i].clone(),
                Some(c) => c.wedge(&gens[i]),
            };
            if next.w > window.w_max {
                continue;
            }
            if window.contains(next.t, next.w) && next.total_s() as usize <= window.s_max {
                out.push(next.clone());
            }
            go(gens, i + 1, Some(next), window, out);
        }
    }
    let mut out = Vec::new();
    go(gens, 0, None, window, &mut out);
    out
}

/// Predicted Quillen homology of Ω^n of the free algebra on Σ^{n+k}F_2
/// (n = None for the trivial algebra Σ^k F_2).
pub fn predicted_hq_trivial(k: i64, n: Option<u32>, window: &Window) -> Vec<E2Class> {
    exterior_closure(&generators(k, n, Variant::Main, window), window)
}

pub fn predicted_variant_bases(k: i64, n: Option<u32>, variant: Variant, window: &Window) -> Vec<E2Class> {
    exterior_closure(&generators(k, n, variant, window), window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(v: &[GammaSeq]) -> Vec<Vec<u32>> {
        v.iter().map(|s| s.0.clone()).collect()
    }

    #[test]
    fn sequence_examples() {
        assert!(gamma_sequences(1, 2, 4, 20).is_empty());
        let r2 = gamma_sequences(2, 2, 3, 14);
        assert_eq!(seqs(&r2), vec![vec![2], vec![4, 2], vec![8, 4, 2]]);
        let r3 = seqs(&gamma_sequences(3, 2, 2, 7));
        assert!(r3.contains(&vec![3]) && r3.contains(&vec![5, 2]) && r3.contains(&vec![4, 2]));
        assert!(GammaSeq(vec![5, 2]).is_admissible());
        assert_eq!(GammaSeq(vec![5, 2]).excess(), 3);
    }

    #[test]
    fn grading_maps() {
        let x = E2Class::generator("x", 0, 3, 1);
        let q = x.q_upper(5);
        assert_eq!((q.h, q.s, q.t, q.w), (0, 1, 7, 2));
        let g = q.gamma(2);
        assert_eq!((g.h, g.s, g.t, g.w), (1, 3, 13, 4));
        let p = x.wedge(&q);
        assert_eq!((p.h, p.s, p.t, p.w), (1, 1, 9, 3));
    }

    #[test]
    fn weight_two_is_one_per_degree() {
        let win = Window::new(-5, 20, 2, 6).unwrap();
        for k in 0..3 {
            let d = dims(&predicted_hq_trivial(k, None, &win));
            for t in win.t_min..=win.t_max {
                let expect = usize::from(t >= 2 * k - 1);
                assert_eq!(d.get(&(2, 1, t)).copied().unwrap_or(0), expect);
            }
        }
    }

    #[test]
    fn loop_depth_restricts_last_index() {
        let win = Window::new(-5, 20, 4, 6).unwrap();
        let classes = predicted_hq_trivial(1, Some(1), &win);
        assert!(classes.iter().filter(|c| c.w == 2).all(|c| c.name == "Q0x1"));
    }

    #[test]
    fn positive_variant_has_no_zero_index() {
        let win = Window::new(-5, 16, 4, 6).unwrap();
        let classes = predicted_variant_bases(0, None, Variant::Positive, &win);
        assert!(classes.iter().all(|c| !c.name.contains("Q0")));
        let ti = dims(&predicted_variant_bases(0, None, Variant::Ti, &Window { w_max: 2, ..win }));
        let main = dims(&predicted_hq_trivial(0, None, &Window { w_max: 2, ..win }));
        assert_eq!(ti, main);
    }
}
