use std::collections::HashMap;

use super::presentation::{AlgebraPresentation, Mode};
use super::tower::{Monad, Shape, Tower};
use crate::algebra::{Prime, SparseVec, WGModule, Window};
use crate::error::{Error, Result};
use crate::rbar;

/// An effectively unbounded window, for presentations whose tables are zero
/// everywhere outside their listed basis.
pub fn unbounded(t_min: i64) -> Window {
    Window { t_min, t_max: i64::MAX / 4, w_max: u32::MAX / 2, s_max: 0 }
}

impl Mode {
    pub fn monad(self) -> Result<Monad> {
        match self {
            Mode::LieR => Ok(Monad::LieR),
            Mode::LieTiR => Ok(Monad::LieTiR),
            Mode::LieTiR0 => Ok(Monad::LieTiR0),
            Mode::OddLie => Err(Error::Unsupported("odd-primary presentations have no F_2 monad".into())),
        }
    }
}

/// Σ^k F_2: one weight-1 class of degree k, trivial bracket and action.
pub fn trivial(k: i64) -> AlgebraPresentation {
    let mut m = WGModule::new(unbounded(k));
    m.push(format!("x{k}"), k, 1).unwrap();
    AlgebraPresentation::new(Prime::TWO, Mode::LieR, m)
}

/// A presentation with trivial structure on a given module.
pub fn abelian(module: WGModule, mode: Mode) -> AlgebraPresentation {
    AlgebraPresentation::new(Prime::TWO, mode, module)
}

/// Ω^n of the free algebra on one class of degree n+k and weight `gen_weight`:
/// basis Q̄_J x_k with J admissible and every lower index at least n,
/// trivial brackets. Requires n >= 1.
pub fn omega_n(k: i64, n: u32, gen_weight: u32, window: Window) -> Result<AlgebraPresentation> {
    if n == 0 {
        return Err(Error::Invalid("loop depth n must be at least 1".into()));
    }
    let n = n as i32;
    let t_min = k.min(window.t_min);
    let win = Window { t_min, ..window };
    let mut m = WGModule::new(win);
    let mut words = Vec::new();
    let mut r = 0;
    while gen_weight << r <= window.w_max {
        for q in rbar::admissible_basis(r, k, n, &win) {
            m.push(if q.is_empty() { format!("x{k}") } else { format!("{q}x{k}") }, q.degree(k), q.weight(gen_weight))?;
            words.push(q);
        }
        r += 1;
    }
    let index: HashMap<Vec<i32>, usize> = words.iter().enumerate().map(|(i, q)| (q.0.clone(), i)).collect();
    let mut g = AlgebraPresentation::new(Prime::TWO, Mode::LieR, m);
    for (i, q) in words.iter().enumerate() {
        let (t, w) = (q.degree(k), q.weight(gen_weight));
        if 2 * w > window.w_max {
            continue;
        }
        let mut a = 0;
        while 2 * t + a as i64 - 1 <= window.t_max {
            let mut full = vec![a];
            full.extend_from_slice(&q.0);
            let mut v = SparseVec::zero(Prime::TWO);
            for nf in rbar::normal_form_looped(&full, n, 0) {
                let j = index.get(&nf).ok_or_else(|| Error::Invalid(format!("missing basis word {nf:?}")))?;
                v.add_term(*j, 1);
            }
            g.set_q(a, i, v);
            a += 1;
        }
    }
    Ok(g)
}

/// Readable label for a level-1 element of a free algebra: letters print as
/// their base labels.
pub fn free_label(tower: &Tower, id: u32) -> String {
    match &tower.node(1, id).shape {
        Shape::Unit(l) => tower.base().module.label(*l as usize).to_string(),
        Shape::Bracket(a, b) => format!("<{},{}>", free_label(tower, *a), free_label(tower, *b)),
        Shape::Op(word, base) => {
            let w: String = word.iter().map(|a| format!("Q{a}")).collect();
            let inner = free_label(tower, *base);
            if matches!(tower.node(1, *base).shape, Shape::Unit(_)) {
                format!("{w}{inner}")
            } else {
                format!("{w}({inner})")
            }
        }
    }
}

/// All level-1 elements of weight <= w_max and degree <= t_max, ordered by
/// weight, degree and canonical string.
pub fn free_basis(tower: &mut Tower, w_max: u32, t_max: i64) -> Vec<u32> {
    let mut out = Vec::new();
    for w in 1..=w_max {
        let Some(lo) = tower.min_degree(1, w) else { continue };
        for t in lo..=t_max {
            out.extend(tower.nodes_at(1, w, t).iter().copied());
        }
    }
    out
}

/// Converts the level-1 part of a tower into a presentation.
pub fn tower_presentation(tower: &mut Tower, mode: Mode, w_max: u32, t_max: i64) -> Result<(AlgebraPresentation, Vec<u32>)> {
    let ids = free_basis(tower, w_max, t_max);
    let t_min = ids.iter().map(|&i| tower.node(1, i).t).min().unwrap_or(0);
    let mut m = WGModule::new(Window { t_min, t_max, w_max, s_max: 0 });
    for &i in &ids {
        let n = tower.node(1, i);
        let (t, w) = (n.t, n.w);
        m.push(free_label(tower, i), t, w)?;
    }
    let index: HashMap<u32, usize> = ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let to_local = |v: SparseVec<u32>| -> Result<SparseVec<usize>> {
        let mut out = SparseVec::zero(Prime::TWO);
        for (k, c) in v.iter() {
            let j = index.get(&k).ok_or_else(|| Error::Invalid("bracket result outside enumerated basis".into()))?;
            out.add_term(*j, c);
        }
        Ok(out)
    };
    let mut g = AlgebraPresentation::new(Prime::TWO, mode, m);
    let monad = tower.monad();
    for (i, &a) in ids.iter().enumerate() {
        let (wa, ta) = (tower.node(1, a).w, tower.node(1, a).t);
        if monad.has_brackets() {
            for (j, &b) in ids.iter().enumerate() {
                let (wb, tb) = (tower.node(1, b).w, tower.node(1, b).t);
                if wa + wb > w_max || ta + tb - 1 > t_max {
                    continue;
                }
                let v = tower.bracket(1, a, b)?;
                g.set_bracket(i, j, to_local(v)?);
            }
        }
        if monad.has_ops() && 2 * wa <= w_max {
            let mut q = monad.floor();
            while 2 * ta + q as i64 - 1 <= t_max {
                let v = tower.q(1, q, a)?;
                g.set_q(q, i, to_local(v)?);
                q += 1;
            }
        }
    }
    Ok((g, ids))
}

/// The free algebra of the given mode on a module, truncated to the window.
pub fn free_lie_rbar_algebra(v: &WGModule, mode: Mode, window: Window) -> Result<AlgebraPresentation> {
    let base = abelian(v.clone(), mode);
    let mut tower = Tower::new(mode.monad()?, &base);
    Ok(tower_presentation(&mut tower, mode, window.w_max, window.t_max)?.0)
}

/// Bracket expressions over the generators of a free algebra.
#[derive(Clone, Debug)]
pub enum Term {
    Gen(usize),
    Bracket(Box<Term>, Box<Term>),
    Q(i32, Box<Term>),
}

impl Term {
    pub fn br(a: Term, b: Term) -> Term {
        Term::Bracket(Box::new(a), Box::new(b))
    }

    pub fn q(a: i32, x: Term) -> Term {
        Term::Q(a, Box::new(x))
    }
}

/// Evaluates a bracket expression in the level-1 free algebra of a tower.
pub fn lie_straighten(tower: &mut Tower, term: &Term) -> Result<SparseVec<u32>> {
    match term {
        Term::Gen(i) => {
            if *i >= tower.base().len() {
                return Err(Error::Invalid(format!("unknown generator {i}")));
            }
            Ok(SparseVec::basis(Prime::TWO, tower.intern(1, Shape::Unit(*i as u32))))
        }
        Term::Bracket(a, b) => {
            let (x, y) = (lie_straighten(tower, a)?, lie_straighten(tower, b)?);
            tower.bracket_vec(1, &x, &y)
        }
        Term::Q(a, x) => {
            if !tower.monad().has_ops() && *a != 0 {
                return Err(Error::Invalid(format!("{} has no operation Q{a}", tower.monad().name())));
            }
            let x = lie_straighten(tower, x)?;
            tower.q_word(1, &[*a], &x)
        }
    }
}

/// A Lyndon/Hall word as a binary tree over letter indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LyndonWord {
    Leaf(usize),
    Node(Box<LyndonWord>, Box<LyndonWord>),
}

impl LyndonWord {
    pub fn len(&self) -> usize {
        match self {
            LyndonWord::Leaf(_) => 1,
            LyndonWord::Node(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self, out: &mut Vec<usize>) {
        match self {
            LyndonWord::Leaf(i) => out.push(*i),
            LyndonWord::Node(a, b) => {
                a.letters(out);
                b.letters(out);
            }
        }
    }
}

fn to_lyndon(tower: &Tower, id: u32) -> LyndonWord {
    match tower.node(1, id).shape {
        Shape::Unit(l) => LyndonWord::Leaf(l as usize),
        Shape::Bracket(a, b) => LyndonWord::Node(Box::new(to_lyndon(tower, a)), Box::new(to_lyndon(tower, b))),
        Shape::Op(..) => unreachable!("Lyndon words are undecorated"),
    }
}

/// Hall basis of the totally isotropic free shifted Lie algebra on the given
/// letters, up to `max_weight`, with (word, degree, weight).
pub fn lyndon_words(letters: &WGModule, max_weight: u32) -> Vec<(LyndonWord, i64, u32)> {
    let base = abelian(letters.clone(), Mode::LieTiR);
    let mut tower = Tower::new(Monad::PlainTi, &base);
    let t_max = letters.iter().map(|e| e.t).max().unwrap_or(0);
    let mut out = Vec::new();
    for w in 1..=max_weight {
        let Some(lo) = tower.min_degree(1, w) else { continue };
        let hi = (w as i64) * t_max.max(lo) + 1;
        for t in lo..=hi {
            for &id in tower.nodes_at(1, w, t).iter() {
                out.push((to_lyndon(&tower, id), t, w));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(spec: &[(&str, i64, u32)]) -> WGModule {
        let mut m = WGModule::new(unbounded(-100));
        for (l, t, w) in spec {
            m.push(*l, *t, *w).unwrap();
        }
        m
    }

    fn necklace(k: usize, n: usize) -> usize {
        // (1/n) Σ_{d | n} μ(d) k^{n/d}
        fn mobius(mut d: usize) -> i64 {
            let mut r = 1;
            let mut f = 2;
            while f * f <= d {
                if d % f == 0 {
                    d /= f;
                    if d % f == 0 {
                        return 0;
                    }
                    r = -r;
                }
                f += 1;
            }
            if d > 1 {
                r = -r;
            }
            r
        }
        let s: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * (k as i64).pow((n / d) as u32)).sum();
        (s / n as i64) as usize
    }

    #[test]
    fn lyndon_counts_match_witt() {
        let m = letters(&[("a", 2, 1), ("b", 2, 1), ("c", 2, 1)]);
        let words = lyndon_words(&m, 6);
        for n in 1..=6u32 {
            let count = words.iter().filter(|w| w.2 == n).count();
            assert_eq!(count, necklace(3, n as usize), "length {n}");
        }
    }

    #[test]
    fn lyndon_small_cases() {
        let one = letters(&[("a", 3, 1)]);
        assert_eq!(lyndon_words(&one, 3).len(), 1);
        let two = letters(&[("a", 3, 1), ("b", 3, 1)]);
        let l2: Vec<_> = lyndon_words(&two, 2).into_iter().filter(|w| w.2 == 2).collect();
        assert_eq!(l2.len(), 1);
        assert_eq!(l2[0].0, LyndonWord::Node(Box::new(LyndonWord::Leaf(0)), Box::new(LyndonWord::Leaf(1))));
        assert_eq!(lyndon_words(&two, 3).iter().filter(|w| w.2 == 3).count(), 2);
    }

    #[test]
    fn free_on_one_generator_is_allowable_module() {
        let v = letters(&[("x", 2, 1)]);
        let win = Window::new(-10, 14, 8, 0).unwrap();
        let g = free_lie_rbar_algebra(&v, Mode::LieR, win).unwrap();
        let a = rbar::free_allowable_basis(&v, 0, Window { t_min: 2, ..win }).unwrap();
        assert_eq!(g.module.dims(), a.dims());
        assert!(g.module.index("x").is_some());
        g.check_laws().unwrap();
    }

    #[test]
    fn weight_two_slice_two_generators() {
        let v = letters(&[("x", 1, 1), ("y", 2, 1)]);
        let win = Window::new(-10, 6, 2, 0).unwrap();
        let g = free_lie_rbar_algebra(&v, Mode::LieR, win).unwrap();
        let w2: Vec<_> = g.module.iter().filter(|e| e.w == 2).map(|e| e.label.clone()).collect();
        assert!(w2.contains(&"<x,y>".to_string()));
        // Q_a x has degree 1 + a, Q_a y has degree 3 + a
        let qx = (0..=5).count();
        let qy = (0..=3).count();
        assert_eq!(w2.len(), 1 + qx + qy);
    }

    #[test]
    fn free_algebras_satisfy_their_laws() {
        let v = letters(&[("x", 1, 1), ("y", 2, 1), ("z", 2, 1)]);
        let win = Window::new(-10, 7, 3, 0).unwrap();
        for mode in [Mode::LieR, Mode::LieTiR, Mode::LieTiR0] {
            let g = free_lie_rbar_algebra(&v, mode, win).unwrap();
            g.check_laws().unwrap_or_else(|e| panic!("{mode:?}: {e}"));
        }
    }

    #[test]
    fn straightening_examples() {
        let v = letters(&[("a", 1, 1), ("b", 2, 1), ("c", 3, 1)]);
        let base = abelian(v, Mode::LieR);
        let mut tw = Tower::new(Monad::LieR, &base);
        let (a, b, c) = (Term::Gen(0), Term::Gen(1), Term::Gen(2));
        let sq = lie_straighten(&mut tw, &Term::br(a.clone(), a.clone())).unwrap();
        let q0 = lie_straighten(&mut tw, &Term::q(0, a.clone())).unwrap();
        assert_eq!(sq, q0);
        let z = lie_straighten(&mut tw, &Term::br(Term::q(2, a.clone()), b.clone())).unwrap();
        assert!(z.is_zero());
        assert_eq!(
            lie_straighten(&mut tw, &Term::br(b.clone(), a.clone())).unwrap(),
            lie_straighten(&mut tw, &Term::br(a.clone(), b.clone())).unwrap()
        );
        let abc = lie_straighten(&mut tw, &Term::br(a.clone(), Term::br(b.clone(), c.clone()))).unwrap();
        let mut cyc = abc.clone();
        cyc.add_assign(&lie_straighten(&mut tw, &Term::br(b.clone(), Term::br(c.clone(), a.clone()))).unwrap());
        cyc.add_assign(&lie_straighten(&mut tw, &Term::br(c.clone(), Term::br(a.clone(), b.clone()))).unwrap());
        assert!(cyc.is_zero());
        assert!(!abc.is_zero());
        assert!(lie_straighten(&mut tw, &Term::Gen(7)).is_err());
    }

    #[test]
    fn omega_n_tables() {
        let win = Window::new(-20, 12, 4, 0).unwrap();
        let g = omega_n(1, 1, 1, win).unwrap();
        g.check_laws().unwrap();
        // Q_0 vanishes after looping once
        assert!(g.q(0, 0).unwrap().is_zero());
        assert!(!g.q(1, 0).unwrap().is_zero());
        assert!(omega_n(1, 0, 1, win).is_err());
    }
}
