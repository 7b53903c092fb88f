use std::collections::BTreeMap;

use rayon::prelude::*;

use super::echelon::{echelonize, rank, reduce_against};
use super::module::Window;
use super::scalar::Prime;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

/// One filtration degree of a (t, w) block: labelled basis plus the boundary
/// of each basis element, indexed into the piece one degree down.
#[derive(Clone, Debug, Default)]
pub struct Piece {
    pub labels: Vec<String>,
    pub boundary: Vec<SparseVec<usize>>,
}

/// A (t, w) block of a chain complex, pieces indexed by s.
#[derive(Clone, Debug, Default)]
pub struct Cell {
    pub pieces: Vec<Piece>,
}

impl Cell {
    pub fn dim(&self, s: usize) -> usize {
        self.pieces.get(s).map_or(0, |p| p.labels.len())
    }

    fn boundary_rank(&self, s: usize) -> Result<usize> {
        match self.pieces.get(s) {
            Some(piece) if s > 0 => rank(&piece.boundary),
            _ => Ok(0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub dim: usize,
    pub representatives: Vec<SparseVec<usize>>,
}

/// Chain complex graded by (s, t, w) with boundary s -> s-1 preserving (t, w).
/// Every block in the window carries pieces up to s_max + 1 so that homology
/// is exact through s_max.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    p: Prime,
    window: Window,
    cells: BTreeMap<(u32, i64), Cell>,
}

impl ChainComplex {
    pub fn new(p: Prime, window: Window) -> Self {
        ChainComplex { p, window, cells: BTreeMap::new() }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn insert_cell(&mut self, w: u32, t: i64, cell: Cell) {
        self.cells.insert((w, t), cell);
    }

    pub fn cell(&self, w: u32, t: i64) -> Option<&Cell> {
        self.cells.get(&(w, t))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(u32, i64), &Cell)> {
        self.cells.iter()
    }

    /// Checks that boundary indices are in range and that the boundary squares to zero.
    pub fn validate(&self) -> Result<()> {
        self.cells.par_iter().try_for_each(|(&(w, t), cell)| {
            for s in 1..cell.pieces.len() {
                let below = cell.dim(s - 1);
                for b in &cell.pieces[s].boundary {
                    if b.keys().any(|k| k >= below) || b.prime() != self.p {
                        return Err(Error::Invalid(format!("malformed boundary at (s={s}, t={t}, w={w})")));
                    }
                    if s >= 2 {
                        let dd = b.flat_map(|k| cell.pieces[s - 1].boundary[k].clone());
                        if !dd.is_zero() {
                            return Err(Error::BoundarySquare { s, t, w });
                        }
                    }
                }
            }
            Ok(())
        })
    }

    fn checked_cell(&self, s: usize, t: i64, w: u32) -> Result<Option<&Cell>> {
        if !self.window.contains_cell(s, t, w) {
            return Err(Error::OutOfWindow { s, t, w });
        }
        Ok(self.cells.get(&(w, t)))
    }

    pub fn homology_dim(&self, s: usize, t: i64, w: u32) -> Result<usize> {
        let Some(cell) = self.checked_cell(s, t, w)? else { return Ok(0) };
        Ok(cell.dim(s) - cell.boundary_rank(s)? - cell.boundary_rank(s + 1)?)
    }

    /// Homology with cycle representatives over the piece basis at s.
    pub fn homology(&self, s: usize, t: i64, w: u32) -> Result<Homology> {
        let Some(cell) = self.checked_cell(s, t, w)? else {
            return Ok(Homology { dim: 0, representatives: vec![] });
        };
        let n = cell.dim(s);
        let cycles: Vec<SparseVec<usize>> = if s == 0 {
            (0..n).map(|i| SparseVec::basis(self.p, i)).collect()
        } else {
            echelonize(&cell.pieces[s].boundary)?.kernel
        };
        let mut basis = match cell.pieces.get(s + 1) {
            Some(up) => echelonize(&up.boundary)?.image,
            None => vec![],
        };
        let mut reps = Vec::new();
        for z in cycles {
            let r = reduce_against(&z, &basis);
            if let Some((_, c)) = r.leading() {
                basis.push(r.scaled(self.p.inv(c)));
                reps.push(z);
            }
        }
        Ok(Homology { dim: reps.len(), representatives: reps })
    }

    /// All nonzero homology dimensions in the window, keyed by (w, s, t).
    pub fn homology_table(&self) -> Result<BTreeMap<(u32, usize, i64), usize>> {
        let rows: Vec<Vec<((u32, usize, i64), usize)>> = self
            .cells
            .par_iter()
            .filter(|(&(w, t), _)| self.window.contains(t, w))
            .map(|(&(w, t), cell)| {
                let ranks: Vec<usize> =
                    (0..=self.window.s_max + 1).map(|s| cell.boundary_rank(s)).collect::<Result<_>>()?;
                Ok((0..=self.window.s_max)
                    .filter_map(|s| {
                        let d = cell.dim(s) - ranks[s] - ranks[s + 1];
                        (d > 0).then_some(((w, s, t), d))
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(rows.into_iter().flatten().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(d: bool) -> ChainComplex {
        let p = Prime::TWO;
        let mut c = ChainComplex::new(p, Window::new(0, 0, 1, 1).unwrap());
        let boundary = if d { SparseVec::basis(p, 0) } else { SparseVec::zero(p) };
        c.insert_cell(
            1,
            0,
            Cell {
                pieces: vec![
                    Piece { labels: vec!["a".into()], boundary: vec![SparseVec::zero(p)] },
                    Piece { labels: vec!["b".into()], boundary: vec![boundary] },
                ],
            },
        );
        c
    }

    #[test]
    fn acyclic_and_zero_differential() {
        let c = two_term(true);
        c.validate().unwrap();
        assert_eq!(c.homology_dim(0, 0, 1).unwrap(), 0);
        assert_eq!(c.homology_dim(1, 0, 1).unwrap(), 0);
        let c = two_term(false);
        assert_eq!(c.homology_dim(0, 0, 1).unwrap(), 1);
        assert_eq!(c.homology(1, 0, 1).unwrap().dim, 1);
    }

    #[test]
    fn out_of_window_is_an_error() {
        let c = two_term(true);
        assert_eq!(c.homology_dim(2, 0, 1), Err(Error::OutOfWindow { s: 2, t: 0, w: 1 }));
        assert!(c.homology_dim(0, 5, 1).is_err());
    }
}
