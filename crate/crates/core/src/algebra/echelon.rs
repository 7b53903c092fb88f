use super::scalar::Prime;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

/// Row reduction of a list of vectors.
///
/// `image` is an echelon basis of the row span. `kernel` is a basis of the
/// relations among the input rows: each vector is indexed by row position.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rank: usize,
    pub image: Vec<SparseVec<usize>>,
    pub kernel: Vec<SparseVec<usize>>,
}

fn common_prime(rows: &[SparseVec<usize>]) -> Result<Option<Prime>> {
    let mut p: Option<Prime> = None;
    for r in rows {
        match p {
            None => p = Some(r.prime()),
            Some(q) if q != r.prime() => return Err(Error::MixedPrimes(q.get(), r.prime().get())),
            _ => {}
        }
    }
    Ok(p)
}

/// Reduces `rows`, dispatching to the bit-packed path at p = 2.
pub fn echelonize(rows: &[SparseVec<usize>]) -> Result<Echelon> {
    match common_prime(rows)? {
        None => Ok(Echelon { rank: 0, image: vec![], kernel: vec![] }),
        Some(p) if p.is_two() => Ok(echelonize_f2(rows, true)),
        Some(_) => Ok(echelonize_generic(rows, true)),
    }
}

/// Rank only; skips kernel bookkeeping.
pub fn rank(rows: &[SparseVec<usize>]) -> Result<usize> {
    match common_prime(rows)? {
        None => Ok(0),
        Some(p) if p.is_two() => Ok(echelonize_f2(rows, false).rank),
        Some(_) => Ok(echelonize_generic(rows, false).rank),
    }
}

fn ncols(rows: &[SparseVec<usize>]) -> usize {
    rows.iter().filter_map(|r| r.keys().last()).max().map_or(0, |m| m + 1)
}

struct BitRow {
    bits: Vec<u64>,
    combo: Vec<u64>,
}

fn first_bit(words: &[u64], from_word: usize) -> Option<usize> {
    words[from_word..]
        .iter()
        .position(|&w| w != 0)
        .map(|i| (from_word + i) * 64 + words[from_word + i].trailing_zeros() as usize)
}

fn xor_from(dst: &mut [u64], src: &[u64], from_word: usize) {
    for (d, s) in dst[from_word..].iter_mut().zip(&src[from_word..]) {
        *d ^= *s;
    }
}

fn bits_to_sparse(words: &[u64]) -> SparseVec<usize> {
    let mut keys = Vec::new();
    for (i, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            keys.push(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    SparseVec::from_terms(Prime::TWO, keys.into_iter().map(|k| (k, 1)))
}

/// GF(2) elimination on dense bit-packed rows.
pub fn echelonize_f2(rows: &[SparseVec<usize>], want_kernel: bool) -> Echelon {
    let nc = ncols(rows);
    let cw = nc.div_ceil(64);
    let kw = if want_kernel { rows.len().div_ceil(64) } else { 0 };
    let mut pivot_of_col: Vec<u32> = vec![u32::MAX; nc];
    let mut pivots: Vec<BitRow> = Vec::new();
    let mut kernel = Vec::new();
    for (ri, r) in rows.iter().enumerate() {
        let mut row = BitRow { bits: vec![0; cw], combo: vec![0; kw] };
        for k in r.keys() {
            row.bits[k / 64] |= 1 << (k % 64);
        }
        if want_kernel {
            row.combo[ri / 64] |= 1 << (ri % 64);
        }
        let mut from = 0;
        loop {
            match first_bit(&row.bits, from) {
                None => {
                    if want_kernel {
                        kernel.push(bits_to_sparse(&row.combo));
                    }
                    break;
                }
                Some(c) => {
                    let piv = pivot_of_col[c];
                    if piv == u32::MAX {
                        pivot_of_col[c] = pivots.len() as u32;
                        pivots.push(row);
                        break;
                    }
                    let pr = &pivots[piv as usize];
                    xor_from(&mut row.bits, &pr.bits, c / 64);
                    if want_kernel {
                        xor_from(&mut row.combo, &pr.combo, 0);
                    }
                    from = c / 64;
                }
            }
        }
    }
    Echelon {
        rank: pivots.len(),
        image: pivots.iter().map(|r| bits_to_sparse(&r.bits)).collect(),
        kernel,
    }
}

/// Sparse elimination over any prime.
pub fn echelonize_generic(rows: &[SparseVec<usize>], want_kernel: bool) -> Echelon {
    let Some(p) = rows.first().map(|r| r.prime()) else {
        return Echelon { rank: 0, image: vec![], kernel: vec![] };
    };
    let mut pivot_of_col = std::collections::HashMap::<usize, usize>::new();
    let mut pivots: Vec<(SparseVec<usize>, SparseVec<usize>)> = Vec::new();
    let mut kernel = Vec::new();
    for (ri, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        let mut combo = if want_kernel { SparseVec::basis(p, ri) } else { SparseVec::zero(p) };
        loop {
            let Some((c, a)) = v.leading() else {
                if want_kernel {
                    kernel.push(combo);
                }
                break;
            };
            match pivot_of_col.get(&c) {
                None => {
                    let inv = p.inv(a);
                    v.scale(inv);
                    combo.scale(inv);
                    pivot_of_col.insert(c, pivots.len());
                    pivots.push((v, combo));
                    break;
                }
                Some(&pi) => {
                    let f = p.neg(a);
                    let (pv, pc) = &pivots[pi];
                    v.add_scaled(pv, f);
                    if want_kernel {
                        combo.add_scaled(pc, f);
                    }
                }
            }
        }
    }
    Echelon {
        rank: pivots.len(),
        image: pivots.into_iter().map(|(v, _)| v).collect(),
        kernel,
    }
}

/// Reduces `v` against an echelon basis whose rows have distinct leading keys
/// and unit leading coefficients.
pub fn reduce_against(v: &SparseVec<usize>, basis: &[SparseVec<usize>]) -> SparseVec<usize> {
    let p = v.prime();
    let lead: std::collections::HashMap<usize, usize> =
        basis.iter().enumerate().filter_map(|(i, b)| b.leading().map(|(k, _)| (k, i))).collect();
    let mut v = v.clone();
    let mut out = SparseVec::zero(p);
    while let Some((k, c)) = v.leading() {
        match lead.get(&k) {
            Some(&i) => {
                let inv = p.inv(basis[i].leading().unwrap().1);
                v.add_scaled(&basis[i], p.neg(p.mul(c, inv)));
            }
            None => {
                out.add_term(k, c);
                v.add_term(k, p.neg(c));
            }
        }
    }
    out
}

/// Reduced row echelon form of the span of `rows`, sorted by leading key.
pub fn rref(rows: &[SparseVec<usize>]) -> Result<Vec<SparseVec<usize>>> {
    let mut image = echelonize(rows)?.image;
    for r in &mut image {
        let p = r.prime();
        let (_, a) = r.leading().expect("echelon rows are nonzero");
        r.scale(p.inv(a));
    }
    image.sort_by_key(|r| r.leading().map(|(k, _)| k));
    for i in (0..image.len()).rev() {
        let (lead, _) = image[i].leading().unwrap();
        let (head, tail) = image.split_at_mut(i);
        let pivot = &tail[0];
        for r in head.iter_mut() {
            let c = r.get(&lead);
            if c != 0 {
                let p = r.prime();
                r.add_scaled(pivot, p.neg(c));
            }
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(keys: &[usize]) -> SparseVec<usize> {
        SparseVec::from_terms(Prime::TWO, keys.iter().map(|&k| (k, 1)))
    }

    #[test]
    fn small_cases() {
        assert_eq!(echelonize(&[]).unwrap().rank, 0);
        let e = echelonize(&[f2(&[0, 1]), f2(&[1])]).unwrap();
        assert_eq!((e.rank, e.kernel.len()), (2, 0));
        let e = echelonize(&[f2(&[0, 1]), f2(&[0, 1])]).unwrap();
        assert_eq!((e.rank, e.kernel.len()), (1, 1));
        assert_eq!(e.kernel[0], f2(&[0, 1]));
    }

    #[test]
    fn mixed_primes_rejected() {
        let p3 = Prime::new(3).unwrap();
        let rows = [f2(&[0]), SparseVec::basis(p3, 0)];
        assert_eq!(echelonize(&rows).unwrap_err(), Error::MixedPrimes(2, 3));
    }

    #[test]
    fn kernel_vectors_are_relations() {
        let p = Prime::new(7).unwrap();
        let rows = vec![
            SparseVec::from_terms(p, [(0, 1), (2, 3)]),
            SparseVec::from_terms(p, [(1, 2), (2, 1)]),
            SparseVec::from_terms(p, [(0, 2), (1, 4), (2, 1)]),
        ];
        let e = echelonize(&rows).unwrap();
        assert_eq!(e.rank, 2);
        let mut sum = SparseVec::zero(p);
        for (i, c) in e.kernel[0].iter() {
            sum.add_scaled(&rows[i], c);
        }
        assert!(sum.is_zero());
    }
}
