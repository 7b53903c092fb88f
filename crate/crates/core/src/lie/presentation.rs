use std::collections::HashMap;

use crate::algebra::{Prime, SparseVec, WGModule, Window};
use crate::error::{Error, Result};

/// Which laws a presentation is meant to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Lie^s_R̄: Q̄_0 x = [x, x].
    LieR,
    /// Lie^{s,ti}_R̄: ⟨x, x⟩ = 0.
    LieTiR,
    /// Lie^{s,ti}_{R̄>0}: additionally Q̄_0 = 0.
    LieTiR0,
    /// Shifted graded Lie algebra over F_p, p odd.
    OddLie,
}

impl Mode {
    pub fn is_ti(self) -> bool {
        matches!(self, Mode::LieTiR | Mode::LieTiR0)
    }
}

/// A weighted graded module with a shifted bracket and a lower-indexed Q̄
/// action, stored as sparse tables of nonzero entries.
///
/// A missing entry whose result would land inside the module's window is
/// zero; a lookup whose result lies outside the window is an error.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub p: Prime,
    pub mode: Mode,
    pub module: WGModule,
    bracket: HashMap<(usize, usize), SparseVec<usize>>,
    qaction: HashMap<(i32, usize), SparseVec<usize>>,
}

impl AlgebraPresentation {
    pub fn new(p: Prime, mode: Mode, module: WGModule) -> Self {
        AlgebraPresentation { p, mode, module, bracket: HashMap::new(), qaction: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.module.len()
    }

    pub fn is_empty(&self) -> bool {
        self.module.is_empty()
    }

    pub fn window(&self) -> Window {
        self.module.window()
    }

    fn covers(&self, t: i64, w: u32) -> bool {
        w <= self.window().w_max && t <= self.window().t_max
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec<usize>) {
        if v.is_zero() {
            self.bracket.remove(&(i, j));
        } else {
            self.bracket.insert((i, j), v);
        }
    }

    pub fn set_q(&mut self, a: i32, i: usize, v: SparseVec<usize>) {
        if v.is_zero() {
            self.qaction.remove(&(a, i));
        } else {
            self.qaction.insert((a, i), v);
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> Result<SparseVec<usize>> {
        if let Some(v) = self.bracket.get(&(i, j)) {
            return Ok(v.clone());
        }
        let (x, y) = (self.module.elt(i), self.module.elt(j));
        let (w, t) = (x.w + y.w, x.t + y.t - 1);
        if self.covers(t, w) {
            Ok(SparseVec::zero(self.p))
        } else {
            Err(Error::OutOfWindow { s: 0, t, w })
        }
    }

    /// Q̄_a applied to basis element i (lower indexing).
    pub fn q(&self, a: i32, i: usize) -> Result<SparseVec<usize>> {
        if let Some(v) = self.qaction.get(&(a, i)) {
            return Ok(v.clone());
        }
        let x = self.module.elt(i);
        let (w, t) = (2 * x.w, 2 * x.t + a as i64 - 1);
        if a < 0 || self.covers(t, w) {
            Ok(SparseVec::zero(self.p))
        } else {
            Err(Error::OutOfWindow { s: 0, t, w })
        }
    }

    pub fn bracket_vec(&self, x: &SparseVec<usize>, y: &SparseVec<usize>) -> Result<SparseVec<usize>> {
        let p = self.p;
        let mut out = SparseVec::zero(p);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.bracket(i, j)?, p.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn q_vec(&self, a: i32, x: &SparseVec<usize>) -> Result<SparseVec<usize>> {
        let mut out = SparseVec::zero(self.p);
        for (i, c) in x.iter() {
            out.add_scaled(&self.q(a, i)?, c);
        }
        Ok(out)
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec<usize>)> {
        self.bracket.iter()
    }

    pub fn q_entries(&self) -> impl Iterator<Item = (&(i32, usize), &SparseVec<usize>)> {
        self.qaction.iter()
    }

    /// The Q̄ table as a sorted list, for comparisons.
    pub fn q_table(&self) -> Vec<((i32, usize), SparseVec<usize>)> {
        let mut v: Vec<_> = self.qaction.iter().map(|(&k, v)| (k, v.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn bracket_table(&self) -> Vec<((usize, usize), SparseVec<usize>)> {
        let mut v: Vec<_> = self.bracket.iter().map(|(&k, v)| (k, v.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Replaces the bracket table wholesale.
    pub fn with_brackets(&self, mode: Mode, bracket: HashMap<(usize, usize), SparseVec<usize>>) -> Self {
        AlgebraPresentation { mode, bracket, ..self.clone() }
    }

    fn sign_swap(&self, i: usize, j: usize) -> u32 {
        // Graded symmetry of the shifted bracket: the transported Lie bracket on
        // the desuspension has degrees |x|-1.
        let (a, b) = (self.module.elt(i).t - 1, self.module.elt(j).t - 1);
        self.p.neg(self.p.sign(a * b))
    }

    /// Checks the laws of the presentation's mode on every table entry and on
    /// every pair/triple whose result lies in the window.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.len();
        let p = self.p;
        let law = |msg: String| Err(Error::Law(msg));
        let lbl = |i: usize| self.module.label(i).to_string();
        let in_window = |idx: &[usize]| {
            let w: u32 = idx.iter().map(|&i| self.module.elt(i).w).sum();
            let t: i64 = idx.iter().map(|&i| self.module.elt(i).t).sum::<i64>() - (idx.len() as i64 - 1);
            self.covers(t, w)
        };
        for i in 0..n {
            for j in 0..n {
                if !in_window(&[i, j]) {
                    continue;
                }
                let b = self.bracket(i, j)?;
                let expected = self.bracket(j, i)?.scaled(self.sign_swap(i, j));
                if b != expected {
                    return law(format!("graded symmetry fails on [{}, {}]", lbl(i), lbl(j)));
                }
            }
        }
        for i in 0..n {
            if !in_window(&[i, i]) {
                continue;
            }
            let sq = self.bracket(i, i)?;
            match self.mode {
                Mode::LieR => {
                    if sq != self.q(0, i)? {
                        return law(format!("Q0({0}) != [{0}, {0}]", lbl(i)));
                    }
                }
                Mode::LieTiR | Mode::LieTiR0 => {
                    if !sq.is_zero() {
                        return law(format!("<{0}, {0}> != 0", lbl(i)));
                    }
                }
                Mode::OddLie => {}
            }
        }
        if self.mode == Mode::LieTiR0 {
            for (&(a, i), v) in &self.qaction {
                if a == 0 && !v.is_zero() {
                    return law(format!("Q0({}) != 0 in the >0 mode", lbl(i)));
                }
            }
        }
        for (&(a, i), v) in &self.qaction {
            let (qt, qw) = (2 * self.module.elt(i).t + a as i64 - 1, 2 * self.module.elt(i).w);
            for z in 0..n {
                let e = self.module.elt(z);
                if !self.covers(e.t + qt - 1, e.w + qw) {
                    continue;
                }
                let vz = SparseVec::basis(p, z);
                if !self.bracket_vec(&vz, v)?.is_zero() {
                    return law(format!("bracket of {} with an operation on {} is nonzero", lbl(z), lbl(i)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !in_window(&[i, j, k]) || !in_window(&[i, j]) || !in_window(&[j, k]) || !in_window(&[i, k]) {
                        continue;
                    }
                    let jac = self.jacobi(i, j, k)?;
                    if !jac.is_zero() {
                        return law(format!("Jacobi fails on ({}, {}, {})", lbl(i), lbl(j), lbl(k)));
                    }
                }
            }
        }
        Ok(())
    }

    /// [x,[y,z]] - [[x,y],z] - (-1)^{(|x|-1)(|y|-1)} [y,[x,z]], transported through
    /// the desuspension; over F_2 this is the cyclic sum.
    fn jacobi(&self, i: usize, j: usize, k: usize) -> Result<SparseVec<usize>> {
        let p = self.p;
        let e = |i: usize| SparseVec::basis(p, i);
        let xyz = self.bracket_vec(&e(i), &self.bracket(j, k)?)?;
        let xy_z = self.bracket_vec(&self.bracket(i, j)?, &e(k))?;
        let y_xz = self.bracket_vec(&e(j), &self.bracket(i, k)?)?;
        let (a, b) = (self.module.elt(i).t - 1, self.module.elt(j).t - 1);
        let mut out = xyz;
        out.add_scaled(&xy_z, p.neg(1));
        out.add_scaled(&y_xz, p.neg(p.sign(a * b)));
        Ok(out)
    }
}
