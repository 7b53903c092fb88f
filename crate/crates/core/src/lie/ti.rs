use std::collections::{HashMap, HashSet};

use super::presentation::{AlgebraPresentation, Mode};
use crate::algebra::{reduce_against, rref, SparseVec};
use crate::error::{Error, Result};

/// The totally isotropic bracket on a Lie^s_R̄-algebra: split off the span V'
/// of self-brackets with its reduced echelon complement W, bracket W through
/// the quotient and make V' abelian.
pub fn ti_associate(g: &AlgebraPresentation) -> Result<AlgebraPresentation> {
    if g.mode != Mode::LieR {
        return Err(Error::Invalid(format!("ti_associate expects a Lie^s_R presentation, got {:?}", g.mode)));
    }
    let n = g.len();
    let w_max = g.window().w_max;
    let t_max = g.window().t_max;
    let fits = |i: usize, j: usize| {
        let (a, b) = (g.module.elt(i), g.module.elt(j));
        a.w + b.w <= w_max && a.t + b.t - 1 <= t_max
    };
    let squares: Vec<SparseVec<usize>> =
        (0..n).filter(|&i| fits(i, i)).map(|i| g.bracket(i, i)).collect::<Result<Vec<_>>>()?;
    let v_prime = rref(&squares)?;
    let pivots: HashMap<usize, usize> = v_prime.iter().enumerate().map(|(r, v)| (v.leading().unwrap().0, r)).collect();
    let p = g.p;
    // W-component of each basis vector.
    let proj = |k: usize| -> SparseVec<usize> {
        match pivots.get(&k) {
            None => SparseVec::basis(p, k),
            Some(&r) => {
                let mut v = SparseVec::basis(p, k);
                v.add_scaled(&v_prime[r], p.neg(1));
                v
            }
        }
    };
    let in_span: HashSet<usize> = pivots.keys().copied().collect();
    let mut table = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if !fits(i, j) {
                continue;
            }
            let b = g.bracket_vec(&proj(i), &proj(j))?;
            let b = reduce_against(&b, &v_prime);
            debug_assert!(b.keys().all(|k| !in_span.contains(&k)));
            if !b.is_zero() {
                table.insert((i, j), b);
            }
        }
    }
    Ok(g.with_brackets(Mode::LieTiR, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{WGModule, Window};
    use crate::lie::{free_lie_rbar_algebra, trivial};

    #[test]
    fn trivial_is_fixed() {
        let g = trivial(3);
        let h = ti_associate(&g).unwrap();
        assert_eq!(h.bracket_table(), g.bracket_table());
        assert_eq!(h.q_table(), g.q_table());
        assert_eq!(h.mode, Mode::LieTiR);
    }

    #[test]
    fn free_algebra_loses_self_brackets_only() {
        let mut v = WGModule::new(Window::new(-10, 10, 4, 0).unwrap());
        v.push("x", 1, 1).unwrap();
        v.push("y", 2, 1).unwrap();
        let g = free_lie_rbar_algebra(&v, Mode::LieR, Window::new(-10, 6, 3, 0).unwrap()).unwrap();
        let h = ti_associate(&g).unwrap();
        h.check_laws().unwrap();
        assert_eq!(h.q_table(), g.q_table());
        let x = g.module.index("x").unwrap();
        assert!(h.bracket(x, x).unwrap().is_zero());
        assert!(!g.q(0, x).unwrap().is_zero());
        let y = g.module.index("y").unwrap();
        assert_eq!(h.bracket(x, y).unwrap(), g.bracket(x, y).unwrap());
    }
}
