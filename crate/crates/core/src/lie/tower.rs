//! Iterated free algebras over a base presentation.
//!
//! Level 0 is the basis of a presentation g. Level m is the free algebra of a
//! monad on the level m-1 basis: Hall words in level m-1 letters, decorated by
//! admissible Q̄ words. Every basis element at every level is interned once;
//! nodes refer to same-level nodes for their bracket factors and operation
//! bases, and to level m-1 nodes for their letters.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::rc::Rc;

use super::presentation::AlgebraPresentation;
use crate::algebra::{Prime, SparseVec};
use crate::error::{Error, Result};
use crate::rbar;

/// The monads whose free algebras the tower builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monad {
    /// Lie^s_R̄: self-brackets are Q̄_0.
    LieR,
    /// Lie^{s,ti}_R̄.
    LieTiR,
    /// Lie^{s,ti}_{R̄>0}.
    LieTiR0,
    /// A_R̄: free allowable R̄-modules, no brackets.
    AR,
    /// A_{R̄>0}.
    AR0,
    /// Shifted Lie over F_2 with no operations; [w, w] is a central symbol.
    PlainLie,
    /// Totally isotropic shifted Lie with no operations.
    PlainTi,
}

impl Monad {
    pub fn has_brackets(self) -> bool {
        !matches!(self, Monad::AR | Monad::AR0)
    }

    pub fn has_ops(self) -> bool {
        !matches!(self, Monad::PlainLie | Monad::PlainTi)
    }

    /// Smallest allowed lower index.
    pub fn floor(self) -> i32 {
        match self {
            Monad::LieTiR0 | Monad::AR0 => 1,
            _ => 0,
        }
    }

    fn squares_to_q0(self) -> bool {
        matches!(self, Monad::LieR | Monad::PlainLie)
    }

    pub fn name(self) -> &'static str {
        match self {
            Monad::LieR => "Lie^s_R",
            Monad::LieTiR => "Lie^{s,ti}_R",
            Monad::LieTiR0 => "Lie^{s,ti}_{R>0}",
            Monad::AR => "A_R",
            Monad::AR0 => "A_{R>0}",
            Monad::PlainLie => "Lie^s",
            Monad::PlainTi => "Lie^{s,ti}",
        }
    }
}

/// How a node is built from lower pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// A level m-1 element viewed as a letter.
    Unit(u32),
    /// A Hall bracket ⟨a, b⟩ of two undecorated same-level nodes, a < b.
    Bracket(u32, u32),
    /// An admissible lower-indexed word applied to an undecorated node.
    Op(Rc<[i32]>, u32),
}

#[derive(Clone, Debug)]
pub struct Node {
    pub shape: Shape,
    pub w: u32,
    pub t: i64,
    key: Rc<str>,
    /// Bit d set iff the level at depth d (0 = this level) is a pure unit
    /// insertion on everything below.
    pub mask: u64,
}

impl Node {
    pub fn decorated(&self) -> bool {
        matches!(self.shape, Shape::Op(..))
    }

    pub fn degenerate(&self) -> bool {
        self.mask != 0
    }
}

#[derive(Default)]
struct Level {
    nodes: Vec<Node>,
    index: HashMap<Shape, u32>,
    all: HashMap<(u32, i64), Rc<Vec<u32>>>,
    hall: HashMap<(u32, i64), Rc<Vec<u32>>>,
    min_all: HashMap<u32, Option<i64>>,
    min_hall: HashMap<u32, Option<i64>>,
    brackets: HashMap<(u32, u32), SparseVec<u32>>,
    faces: HashMap<(usize, u32), SparseVec<u32>>,
}

pub struct Tower<'g> {
    monad: Monad,
    base: &'g AlgebraPresentation,
    base_keys: Vec<Rc<str>>,
    base_cells: HashMap<(u32, i64), Rc<Vec<u32>>>,
    levels: Vec<Level>,
}

type Vec2 = SparseVec<u32>;

impl<'g> Tower<'g> {
    pub fn new(monad: Monad, base: &'g AlgebraPresentation) -> Self {
        assert!(base.p.is_two(), "towers of free algebras are built over F_2");
        let n = base.len();
        let width = n.to_string().len();
        let base_keys = (0..n).map(|i| Rc::from(format!("#{i:0width$}"))).collect();
        let mut base_cells: HashMap<(u32, i64), Vec<u32>> = HashMap::new();
        for (i, e) in base.module.iter().enumerate() {
            base_cells.entry((e.w, e.t)).or_default().push(i as u32);
        }
        Tower {
            monad,
            base,
            base_keys,
            base_cells: base_cells.into_iter().map(|(k, v)| (k, Rc::new(v))).collect(),
            levels: vec![Level::default()],
        }
    }

    pub fn monad(&self) -> Monad {
        self.monad
    }

    pub fn base(&self) -> &'g AlgebraPresentation {
        self.base
    }

    fn p(&self) -> Prime {
        Prime::TWO
    }

    fn level(&mut self, m: usize) -> &mut Level {
        while self.levels.len() <= m {
            self.levels.push(Level::default());
        }
        &mut self.levels[m]
    }

    /// Weight, degree and mask of an element at level m.
    pub fn info(&self, m: usize, id: u32) -> (u32, i64, u64) {
        if m == 0 {
            let e = self.base.module.elt(id as usize);
            (e.w, e.t, 0)
        } else {
            let n = &self.levels[m].nodes[id as usize];
            (n.w, n.t, n.mask)
        }
    }

    pub fn node(&self, m: usize, id: u32) -> &Node {
        &self.levels[m].nodes[id as usize]
    }

    fn key(&self, m: usize, id: u32) -> &Rc<str> {
        if m == 0 {
            &self.base_keys[id as usize]
        } else {
            &self.levels[m].nodes[id as usize].key
        }
    }

    /// The fixed total order: weight, degree, canonical string.
    pub fn cmp(&self, m: usize, a: u32, b: u32) -> Ordering {
        let (wa, ta, _) = self.info(m, a);
        let (wb, tb, _) = self.info(m, b);
        (wa, ta).cmp(&(wb, tb)).then_with(|| self.key(m, a).cmp(self.key(m, b)))
    }

    pub fn intern(&mut self, m: usize, shape: Shape) -> u32 {
        assert!(m >= 1);
        if let Some(&id) = self.level(m).index.get(&shape) {
            return id;
        }
        let (w, t, key, mask) = match &shape {
            Shape::Unit(l) => {
                let (w, t, mk) = self.info(m - 1, *l);
                (w, t, format!("u{}", self.key(m - 1, *l)), 1 | (mk << 1))
            }
            Shape::Bracket(a, b) => {
                let (na, nb) = (self.node(m, *a), self.node(m, *b));
                (na.w + nb.w, na.t + nb.t - 1, format!("<{},{}>", na.key, nb.key), na.mask & nb.mask & !1)
            }
            Shape::Op(word, base) => {
                let nb = self.node(m, *base);
                let q = rbar::QWord(word.to_vec());
                let idx: Vec<String> = word.iter().map(|a| a.to_string()).collect();
                (q.weight(nb.w), q.degree(nb.t), format!("Q{}:{}", idx.join("."), nb.key), nb.mask & !1)
            }
        };
        let lvl = self.level(m);
        let id = lvl.nodes.len() as u32;
        lvl.nodes.push(Node { shape: shape.clone(), w, t, key: Rc::from(key), mask });
        lvl.index.insert(shape, id);
        id
    }

    /// Lowest degree of a level-m element of weight w.
    pub fn min_degree(&mut self, m: usize, w: u32) -> Option<i64> {
        self.min_all(m, w)
    }

    fn min_all(&mut self, m: usize, w: u32) -> Option<i64> {
        if m == 0 {
            return self.base.module.min_t(w);
        }
        if let Some(&v) = self.level(m).min_all.get(&w) {
            return v;
        }
        let mut best = self.min_hall(m, w);
        if w % 2 == 0 && self.monad.has_ops() {
            if let Some(inner) = self.min_all(m, w / 2) {
                let t = 2 * inner - 1 + self.monad.floor() as i64;
                best = Some(best.map_or(t, |b| b.min(t)));
            }
        }
        if w % 2 == 0 && self.monad == Monad::PlainLie {
            if let Some(inner) = self.min_hall(m, w / 2) {
                let t = 2 * inner - 1;
                best = Some(best.map_or(t, |b| b.min(t)));
            }
        }
        self.level(m).min_all.insert(w, best);
        best
    }

    fn min_hall(&mut self, m: usize, w: u32) -> Option<i64> {
        if let Some(&v) = self.level(m).min_hall.get(&w) {
            return v;
        }
        let mut best = self.min_all(m - 1, w);
        if self.monad.has_brackets() {
            for w1 in 1..w {
                if let (Some(a), Some(b)) = (self.min_hall(m, w1), self.min_hall(m, w - w1)) {
                    let t = a + b - 1;
                    best = Some(best.map_or(t, |x| x.min(t)));
                }
            }
        }
        self.level(m).min_hall.insert(w, best);
        best
    }

    fn sort_ids(&self, m: usize, v: &mut Vec<u32>) {
        v.sort_by(|&a, &b| self.cmp(m, a, b));
        v.dedup();
    }

    /// Every basis element of level m at (w, t).
    pub fn nodes_at(&mut self, m: usize, w: u32, t: i64) -> Rc<Vec<u32>> {
        if m == 0 {
            return self.base_cells.get(&(w, t)).cloned().unwrap_or_default();
        }
        if let Some(v) = self.level(m).all.get(&(w, t)) {
            return v.clone();
        }
        let mut out: Vec<u32> = self.hall_at(m, w, t).to_vec();
        if w % 2 == 0 && self.monad != Monad::PlainTi {
            let floor = self.monad.floor();
            if let Some(inner_min) = self.min_all(m, w / 2) {
                let mut a = floor;
                while (a as i64) <= t + 1 - 2 * inner_min {
                    if (t + 1 - a as i64) % 2 == 0 {
                        let ti = (t + 1 - a as i64) / 2;
                        for &x in self.nodes_at(m, w / 2, ti).iter() {
                            let shape = match &self.node(m, x).shape {
                                Shape::Op(word, base) => {
                                    if self.monad == Monad::PlainLie || word[0] > a - 2 {
                                        continue;
                                    }
                                    let mut v = vec![a];
                                    v.extend_from_slice(word);
                                    Shape::Op(v.into(), *base)
                                }
                                _ => Shape::Op(vec![a].into(), x),
                            };
                            out.push(self.intern(m, shape));
                        }
                    }
                    if self.monad == Monad::PlainLie {
                        break;
                    }
                    a += 1;
                }
            }
        }
        self.sort_ids(m, &mut out);
        let rc = Rc::new(out);
        self.level(m).all.insert((w, t), rc.clone());
        rc
    }

    /// Undecorated basis elements (letters and Hall brackets) at (w, t).
    pub fn hall_at(&mut self, m: usize, w: u32, t: i64) -> Rc<Vec<u32>> {
        if let Some(v) = self.level(m).hall.get(&(w, t)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for &l in self.nodes_at(m - 1, w, t).iter() {
            out.push(self.intern(m, Shape::Unit(l)));
        }
        if self.monad.has_brackets() {
            for w1 in 1..=w / 2 {
                let w2 = w - w1;
                let (Some(lo1), Some(lo2)) = (self.min_hall(m, w1), self.min_hall(m, w2)) else { continue };
                for t1 in lo1..=(t + 1 - lo2) {
                    let t2 = t + 1 - t1;
                    let left = self.hall_at(m, w1, t1);
                    if left.is_empty() {
                        continue;
                    }
                    let right = self.hall_at(m, w2, t2);
                    for &a in left.iter() {
                        for &b in right.iter() {
                            if self.is_hall_pair(m, a, b) {
                                out.push(self.intern(m, Shape::Bracket(a, b)));
                            }
                        }
                    }
                }
            }
        }
        self.sort_ids(m, &mut out);
        let rc = Rc::new(out);
        self.level(m).hall.insert((w, t), rc.clone());
        rc
    }

    fn is_hall_pair(&self, m: usize, a: u32, b: u32) -> bool {
        if self.cmp(m, a, b) != Ordering::Less {
            return false;
        }
        match self.node(m, b).shape {
            Shape::Bracket(b3, _) => self.cmp(m, b3, a) != Ordering::Greater,
            _ => true,
        }
    }

    /// Bracket of two level-m basis elements, straightened.
    pub fn bracket(&mut self, m: usize, a: u32, b: u32) -> Result<Vec2> {
        let p = self.p();
        if m == 0 {
            return Ok(self.base.bracket(a as usize, b as usize)?.map_keys(|k| k as u32));
        }
        if !self.monad.has_brackets() {
            return Err(Error::Invalid(format!("{} has no bracket", self.monad.name())));
        }
        let (a, b) = if self.cmp(m, a, b) == Ordering::Greater { (b, a) } else { (a, b) };
        if let Some(v) = self.level(m).brackets.get(&(a, b)) {
            return Ok(v.clone());
        }
        let out = if self.node(m, a).decorated() || self.node(m, b).decorated() {
            SparseVec::zero(p)
        } else if a == b {
            if self.monad.squares_to_q0() {
                SparseVec::basis(p, self.intern(m, Shape::Op(vec![0].into(), a)))
            } else {
                SparseVec::zero(p)
            }
        } else if self.is_hall_pair(m, a, b) {
            SparseVec::basis(p, self.intern(m, Shape::Bracket(a, b)))
        } else {
            // a < b = <b3, b4> with a < b3: Jacobi over F_2.
            let Shape::Bracket(b3, b4) = self.node(m, b).shape else { unreachable!() };
            let x = self.bracket(m, a, b4)?;
            let y = self.bracket(m, a, b3)?;
            let mut out = self.bracket_vec(m, &SparseVec::basis(p, b3), &x)?;
            out.add_assign(&self.bracket_vec(m, &SparseVec::basis(p, b4), &y)?);
            out
        };
        self.level(m).brackets.insert((a, b), out.clone());
        Ok(out)
    }

    pub fn bracket_vec(&mut self, m: usize, x: &Vec2, y: &Vec2) -> Result<Vec2> {
        let mut out = SparseVec::zero(self.p());
        for a in x.keys() {
            for b in y.keys() {
                out.add_assign(&self.bracket(m, a, b)?);
            }
        }
        Ok(out)
    }

    /// Q̄_a applied to a level-m basis element.
    pub fn q(&mut self, m: usize, a: i32, x: u32) -> Result<Vec2> {
        let p = self.p();
        if m == 0 {
            return Ok(self.base.q(a, x as usize)?.map_keys(|k| k as u32));
        }
        let mut out = SparseVec::zero(p);
        match self.node(m, x).shape.clone() {
            Shape::Op(word, base) => {
                if !self.monad.has_ops() {
                    return Ok(out);
                }
                let mut full = vec![a];
                full.extend_from_slice(&word);
                for nf in rbar::normal_form(&full, self.monad.floor()) {
                    out.add_term(self.intern(m, Shape::Op(nf.into(), base)), 1);
                }
            }
            _ => {
                let allowed = match self.monad {
                    Monad::PlainTi => false,
                    Monad::PlainLie => a == 0,
                    mo => a >= mo.floor(),
                };
                if allowed {
                    out.add_term(self.intern(m, Shape::Op(vec![a].into(), x)), 1);
                }
            }
        }
        Ok(out)
    }

    /// Applies an outermost-first lower word to a vector.
    pub fn q_word(&mut self, m: usize, word: &[i32], v: &Vec2) -> Result<Vec2> {
        let mut cur = v.clone();
        for &a in word.iter().rev() {
            let mut next = SparseVec::zero(self.p());
            for x in cur.keys() {
                next.add_assign(&self.q(m, a, x)?);
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Face map d_i from level m to level m-1.
    pub fn face(&mut self, m: usize, i: usize, x: u32) -> Result<Vec2> {
        if i > m || m == 0 {
            return Err(Error::Invalid(format!("face d_{i} on level {m}")));
        }
        if let Some(v) = self.levels[m].faces.get(&(i, x)) {
            return Ok(v.clone());
        }
        let p = self.p();
        let out = match self.node(m, x).shape.clone() {
            Shape::Unit(l) => {
                if i <= 1 {
                    SparseVec::basis(p, l)
                } else {
                    let below = self.face(m - 1, i - 1, l)?;
                    let mut out = SparseVec::zero(p);
                    for (y, c) in below.iter() {
                        out.add_term(self.intern(m - 1, Shape::Unit(y)), c);
                    }
                    out
                }
            }
            _ if i == 0 => SparseVec::zero(p),
            Shape::Bracket(a, b) => {
                let fa = self.face(m, i, a)?;
                let fb = self.face(m, i, b)?;
                self.bracket_vec(m - 1, &fa, &fb)?
            }
            Shape::Op(word, base) => {
                let fb = self.face(m, i, base)?;
                self.q_word(m - 1, &word, &fb)?
            }
        };
        self.levels[m].faces.insert((i, x), out.clone());
        Ok(out)
    }

    /// Degeneracy s_j from level m to level m+1: a unit inserted at depth j.
    pub fn degeneracy(&mut self, m: usize, j: usize, x: u32) -> Result<Vec2> {
        let p = self.p();
        if j == 0 {
            return Ok(SparseVec::basis(p, self.intern(m + 1, Shape::Unit(x))));
        }
        if j > m {
            return Err(Error::Invalid(format!("degeneracy s_{j} on level {m}")));
        }
        match self.node(m, x).shape.clone() {
            Shape::Unit(l) => {
                let below = self.degeneracy(m - 1, j - 1, l)?;
                let mut out = SparseVec::zero(p);
                for (y, c) in below.iter() {
                    out.add_term(self.intern(m + 1, Shape::Unit(y)), c);
                }
                Ok(out)
            }
            Shape::Bracket(a, b) => {
                let (sa, sb) = (self.degeneracy(m, j, a)?, self.degeneracy(m, j, b)?);
                self.bracket_vec(m + 1, &sa, &sb)
            }
            Shape::Op(word, base) => {
                let sb = self.degeneracy(m, j, base)?;
                self.q_word(m + 1, &word, &sb)
            }
        }
    }

    /// Readable name of an element.
    pub fn display(&self, m: usize, id: u32) -> String {
        if m == 0 {
            return self.base.module.label(id as usize).to_string();
        }
        match &self.node(m, id).shape {
            Shape::Unit(l) => format!("|{}", self.display(m - 1, *l)),
            Shape::Bracket(a, b) => format!("<{},{}>", self.display(m, *a), self.display(m, *b)),
            Shape::Op(word, base) => {
                let w: String = word.iter().map(|a| format!("Q{a}")).collect();
                format!("{w}{}", self.display(m, *base))
            }
        }
    }
}
