//! The algebra R̄ of Q̄-operations at p = 2.
//!
//! Words are stored lower-indexed, outermost operation first: `[a_1, ..., a_r]`
//! means Q̄_{a_1} ⋯ Q̄_{a_r}(x). Lower and upper indices are related by
//! Q̄_a(y) = Q̄^{a+|y|}(y).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::algebra::{binom2, Prime, SparseVec, WGModule, Window};
use crate::error::Result;

/// A lower-indexed operation word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QWord(pub Vec<i32>);

impl QWord {
    pub fn empty() -> Self {
        QWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= p[1] + 2)
    }

    /// Internal degree of the word applied to a class of degree `t`.
    pub fn degree(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(t, |d, &a| 2 * d + a as i64 - 1)
    }

    pub fn weight(&self, w: u32) -> u32 {
        w << self.0.len()
    }

    /// Upper indices for a word applied to a class of degree `t`.
    pub fn upper(&self, t: i64) -> Vec<i64> {
        let mut d = t;
        let mut out: Vec<i64> = self
            .0
            .iter()
            .rev()
            .map(|&a| {
                let j = a as i64 + d;
                d = 2 * d + a as i64 - 1;
                j
            })
            .collect();
        out.reverse();
        out
    }

    pub fn from_upper(upper: &[i64], t: i64) -> Self {
        let mut d = t;
        let mut out: Vec<i32> = upper
            .iter()
            .rev()
            .map(|&j| {
                let a = j - d;
                d = d + j - 1;
                a as i32
            })
            .collect();
        out.reverse();
        QWord(out)
    }
}

impl fmt::Display for QWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "Q{a}")?;
        }
        Ok(())
    }
}

/// Behrens' relation for an inadmissible pair `0 <= a <= b + 1`:
/// Q̄_a Q̄_b = Σ_c C(a+b-2c-2, b-c) Q̄_{a+2b-2c} Q̄_c over 0 <= 3c < a+2b-1.
pub fn behrens_pair(a: i32, b: i32) -> Vec<(i32, i32)> {
    debug_assert!(0 <= a && a <= b + 1);
    let (a, b) = (a as i64, b as i64);
    (0..)
        .take_while(|&c| 3 * c < a + 2 * b - 1)
        .filter(|&c| binom2(a + b - 2 * c - 2, b - c))
        .map(|c| ((a + 2 * b - 2 * c) as i32, c as i32))
        .collect()
}

/// Normal forms with a floor on allowed indices: any word containing an index
/// below `floor` is zero. Floor 0 is R̄ acting on allowable modules; floor 1
/// is the R̄>0 quotient where Q̄_0 acts by zero.
#[derive(Default)]
pub struct Rewriter {
    pairs: HashMap<(i32, i32), Vec<(i32, i32)>>,
    words: HashMap<(i32, Vec<i32>), Vec<Vec<i32>>>,
}

impl Rewriter {
    pub fn new() -> Self {
        Self::default()
    }

    fn pair(&mut self, a: i32, b: i32) -> Vec<(i32, i32)> {
        self.pairs.entry((a, b)).or_insert_with(|| behrens_pair(a, b)).clone()
    }

    /// Admissible normal form by leftmost reduction, as a list of words with
    /// coefficient 1 over F_2.
    pub fn normal_form(&mut self, word: &[i32], floor: i32) -> Vec<Vec<i32>> {
        if word.iter().any(|&a| a < floor) {
            return vec![];
        }
        let Some(i) = word.windows(2).position(|p| p[0] < p[1] + 2) else {
            return vec![word.to_vec()];
        };
        let key = (floor, word.to_vec());
        if let Some(v) = self.words.get(&key) {
            return v.clone();
        }
        let mut acc: HashMap<Vec<i32>, bool> = HashMap::new();
        for (x, y) in self.pair(word[i], word[i + 1]) {
            let mut next = word.to_vec();
            next[i] = x;
            next[i + 1] = y;
            for nf in self.normal_form(&next, floor) {
                let e = acc.entry(nf).or_insert(false);
                *e = !*e;
            }
        }
        let mut out: Vec<Vec<i32>> = acc.into_iter().filter(|&(_, odd)| odd).map(|(w, _)| w).collect();
        out.sort();
        self.words.insert(key, out.clone());
        out
    }

    /// Normal form reducing a chosen redex first (for confluence checks).
    pub fn normal_form_at(&mut self, word: &[i32], floor: i32, pick: &mut impl FnMut(&[usize]) -> usize) -> Vec<Vec<i32>> {
        if word.iter().any(|&a| a < floor) {
            return vec![];
        }
        let redexes: Vec<usize> = (0..word.len().saturating_sub(1)).filter(|&i| word[i] < word[i + 1] + 2).collect();
        if redexes.is_empty() {
            return vec![word.to_vec()];
        }
        let i = redexes[pick(&redexes) % redexes.len()];
        let mut acc: HashMap<Vec<i32>, bool> = HashMap::new();
        for (x, y) in self.pair(word[i], word[i + 1]) {
            let mut next = word.to_vec();
            next[i] = x;
            next[i + 1] = y;
            for nf in self.normal_form_at(&next, floor, pick) {
                let e = acc.entry(nf).or_insert(false);
                *e = !*e;
            }
        }
        let mut out: Vec<Vec<i32>> = acc.into_iter().filter(|&(_, odd)| odd).map(|(w, _)| w).collect();
        out.sort();
        out
    }
}

thread_local! {
    static REWRITER: RefCell<Rewriter> = RefCell::new(Rewriter::new());
}

/// Normal form of a lower-indexed word with the given index floor.
pub fn normal_form(word: &[i32], floor: i32) -> Vec<Vec<i32>> {
    REWRITER.with(|r| r.borrow_mut().normal_form(word, floor))
}

/// Rewrites a word applied to a generator into admissible words.
pub fn behrens_rewrite(word: &QWord) -> SparseVec<QWord> {
    let mut v = SparseVec::zero(Prime::TWO);
    for w in normal_form(&word.0, 0) {
        v.add_term(QWord(w), 1);
    }
    v
}

/// Normal form for the action on Ω^n of a free allowable module: lower
/// indices relative to the looped class are shifted by n.
pub fn normal_form_looped(word: &[i32], n: i32, floor: i32) -> Vec<Vec<i32>> {
    let shifted: Vec<i32> = word.iter().map(|a| a - n).collect();
    normal_form(&shifted, floor)
        .into_iter()
        .map(|w| w.into_iter().map(|a| a + n).collect())
        .collect()
}

/// Admissible lower words of length r with every index at least `floor`
/// (only the last index matters) whose composite applied to a degree-k class
/// has internal degree in the window.
pub fn admissible_basis(r: usize, k: i64, floor: i32, window: &Window) -> Vec<QWord> {
    // `acc` holds indices innermost first; each new outer index exceeds the
    // previous one by at least 2.
    fn go(r: usize, t: i64, floor: i32, window: &Window, acc: &mut Vec<i32>, out: &mut Vec<QWord>) {
        if r == 0 {
            if t >= window.t_min {
                out.push(QWord(acc.iter().rev().copied().collect()));
            }
            return;
        }
        let mut a = acc.last().map_or(floor, |&b| (b + 2).max(floor));
        loop {
            let nt = 2 * t + a as i64 - 1;
            let (mut least, mut b) = (nt, a);
            for _ in 1..r {
                b += 2;
                least = 2 * least + b as i64 - 1;
            }
            if least > window.t_max {
                break;
            }
            acc.push(a);
            go(r - 1, nt, floor, window, acc, out);
            acc.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        if (window.t_min..=window.t_max).contains(&k) {
            out.push(QWord::empty());
        }
    } else {
        go(r, k, floor, window, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Basis of the free allowable module on `module` (restricted to the window),
/// with words whose last index is at least `floor`. Labels are `Q..(label)`.
pub fn free_allowable_basis(module: &WGModule, floor: i32, window: Window) -> Result<WGModule> {
    let mut out = WGModule::new(window);
    let mut r = 0;
    while (1u32 << r) <= window.w_max {
        for x in module.iter() {
            if x.w << r > window.w_max {
                continue;
            }
            let full = Window { t_min: i64::MIN / 4, ..window };
            for j in admissible_basis(r, x.t, floor, &full) {
                let t = j.degree(x.t);
                if t < window.t_min {
                    continue;
                }
                let label = if j.is_empty() { x.label.clone() } else { format!("{j}({})", x.label) };
                out.push(label, t, j.weight(x.w))?;
            }
        }
        r += 1;
    }
    Ok(out)
}

/// Unstable Tor basis: sequences with 0 <= j_l <= j_{l+1}+1, j_r < n when n
/// is finite, paired with the degree of Q̄_{j_1}⋯Q̄_{j_r}(x_k).
pub fn untor_basis(k: i64, n: Option<u32>, r: usize, window: &Window) -> Vec<(QWord, i64)> {
    fn go(r: usize, acc: &mut Vec<i32>, n: Option<u32>, k: i64, tmax: i64, out: &mut Vec<Vec<i32>>) {
        if acc.len() == r {
            out.push(acc.clone());
            return;
        }
        // acc holds j_r, j_{r-1}, ... (innermost first)
        let hi = match acc.last() {
            None => n.map_or(i32::MAX, |n| n as i32 - 1),
            Some(&b) => b + 1,
        };
        let mut a = 0;
        while a <= hi {
            acc.push(a);
            let mut inner = acc.clone();
            inner.reverse();
            // minimal completion uses zeros for the remaining outer slots
            let mut full = vec![0; r - acc.len()];
            full.extend(inner);
            let t = QWord(full).degree(k);
            if t > tmax {
                acc.pop();
                break;
            }
            go(r, acc, n, k, tmax, out);
            acc.pop();
            a += 1;
        }
    }
    let mut seqs = Vec::new();
    go(r, &mut Vec::new(), n, k, window.t_max, &mut seqs);
    let mut out: Vec<(QWord, i64)> = seqs
        .into_iter()
        .map(|mut s| {
            s.reverse();
            let q = QWord(s);
            let t = q.degree(k);
            (q, t)
        })
        .filter(|&(_, t)| t >= window.t_min && t <= window.t_max)
        .collect();
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(w: &[i32]) -> Vec<Vec<i32>> {
        normal_form(w, 0)
    }

    #[test]
    fn basic_relations() {
        assert_eq!(nf(&[3, 1]), vec![vec![3, 1]]);
        assert!(nf(&[0, 0]).is_empty());
        assert!(nf(&[1, 1]).is_empty());
        assert_eq!(nf(&[2, 1]), vec![vec![4, 0]]);
        assert!(nf(&[-1]).is_empty());
    }

    #[test]
    fn upper_lower_round_trip() {
        let q = QWord(vec![5, 2, 0]);
        for t in -3..6 {
            let up = q.upper(t);
            assert_eq!(QWord::from_upper(&up, t), q);
        }
        // admissibility agrees in both indexings
        for a in 0..8 {
            for b in 0..8 {
                let q = QWord(vec![a, b]);
                let up = q.upper(3);
                assert_eq!(q.is_admissible(), up[0] > 2 * up[1]);
            }
        }
    }

    #[test]
    fn admissible_pairs() {
        let w = Window::new(-100, 12, 4, 0).unwrap();
        let b = admissible_basis(2, 0, 0, &w);
        assert!(b.contains(&QWord(vec![2, 0])));
        assert!(b.contains(&QWord(vec![3, 1])));
        assert!(!b.contains(&QWord(vec![1, 0])));
        assert!(b.iter().all(|q| q.is_admissible() && q.degree(0) <= 12));
    }

    #[test]
    fn untor_low_degrees() {
        let k = 2;
        let w = Window::new(4 * k - 3, 4 * k + 1, 4, 2).unwrap();
        let b = untor_basis(k, None, 2, &w);
        let dims: Vec<usize> = (4 * k - 3..=4 * k + 1).map(|t| b.iter().filter(|e| e.1 == t).count()).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        let w1 = Window::new(-10, 20, 2, 1).unwrap();
        let b1 = untor_basis(0, None, 1, &w1);
        assert_eq!(b1.len(), 22);
        assert_eq!(untor_basis(0, Some(1), 1, &w1).len(), 1);
    }
}
