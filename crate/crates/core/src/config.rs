//! Manifold and label manifests, the Knudsen algebra H̃*(M⁺) ⊗ Free(ΣⁿX),
//! its E² page and the closed-form low-weight predictions.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use crate::algebra::{ChainComplex, Prime, SparseVec, WGModule, Window};
use crate::bar::bar_complex;
use crate::ce::{ce_complex_f2, ce_complex_fp};
use crate::error::{Error, Result};
use crate::gamma::{exterior_closure, gamma_sequences, unstable_sequences, E2Class};
use crate::lie::{abelian, free_odd_lie, tower_presentation, AlgebraPresentation, Mode, Monad, Tower};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    name: String,
    deg: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    name: String,
    #[serde(default = "one")]
    coef: i64,
}

fn one() -> i64 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    dim: u32,
    closed: bool,
    #[serde(default = "two")]
    p: u32,
    classes: Vec<RawClass>,
    #[serde(default)]
    cup: Vec<(String, String, Vec<RawTerm>)>,
    #[serde(default)]
    sq: Vec<(u32, String, Vec<RawTerm>)>,
}

fn two() -> u32 {
    2
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabels {
    classes: Vec<RawClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub name: String,
    pub deg: i64,
}

/// H̃*(M⁺; F_p) for a connected n-manifold M, with cup products and (at p = 2)
/// Steenrod squares. Closed manifolds carry a degree-0 unit class.
#[derive(Clone, Debug)]
pub struct ManifoldData {
    pub dim: u32,
    pub closed: bool,
    pub p: Prime,
    pub classes: Vec<Class>,
    cup: HashMap<(usize, usize), SparseVec<usize>>,
    sq: HashMap<(u32, usize), SparseVec<usize>>,
}

/// A graded basis of H_*(X; F_p).
#[derive(Clone, Debug)]
pub struct LabelData {
    pub classes: Vec<Class>,
}

fn parse<'a, T: Deserialize<'a>>(bytes: &'a [u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Manifest(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Manifest(msg.into())
}

fn unique(classes: &[RawClass]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        if index.insert(c.name.clone(), i).is_some() {
            return Err(bad(format!("class {} listed twice", c.name)));
        }
    }
    Ok(index)
}

pub fn load_labels(bytes: &[u8]) -> Result<LabelData> {
    let raw: RawLabels = parse(bytes)?;
    unique(&raw.classes)?;
    if raw.classes.is_empty() {
        return Err(bad("a label file needs at least one class"));
    }
    Ok(LabelData { classes: raw.classes.into_iter().map(|c| Class { name: c.name, deg: c.deg }).collect() })
}

pub fn load_manifold(bytes: &[u8]) -> Result<ManifoldData> {
    let raw: RawManifold = parse(bytes)?;
    let p = Prime::new(raw.p).map_err(|_| bad(format!("p = {} is not a prime", raw.p)))?;
    let n = raw.dim as i64;
    let mut classes = raw.classes;
    if raw.closed && !classes.iter().any(|c| c.deg == 0) {
        classes.insert(0, RawClass { name: "1".into(), deg: 0 });
    }
    let index = unique(&classes)?;
    for c in &classes {
        if !(0..=n).contains(&c.deg) {
            return Err(bad(format!("class {} has degree {} outside [0, {n}]", c.name, c.deg)));
        }
        if c.deg == 0 && !raw.closed {
            return Err(bad(format!("class {} has degree 0, but H̃* of an open manifold starts in degree 1", c.name)));
        }
    }
    if classes.iter().filter(|c| c.deg == 0).count() > 1 {
        return Err(bad("at most one degree-0 class (the unit) is allowed"));
    }
    let lookup = |name: &str| index.get(name).copied().ok_or_else(|| bad(format!("unknown class {name}")));
    let to_vec = |terms: &[RawTerm]| -> Result<SparseVec<usize>> {
        let mut v = SparseVec::zero(p);
        for t in terms {
            v.add_term(lookup(&t.name)?, p.reduce(t.coef));
        }
        Ok(v)
    };
    let deg = |i: usize| classes[i].deg;
    let homogeneous = |v: &SparseVec<usize>, d: i64| v.keys().all(|k| deg(k) == d);

    let mut cup = HashMap::new();
    for (a, b, terms) in &raw.cup {
        let (i, j) = (lookup(a)?, lookup(b)?);
        let v = to_vec(terms)?;
        if !homogeneous(&v, deg(i) + deg(j)) {
            return Err(bad(format!("cup product {a} ∪ {b} is not of degree {}", deg(i) + deg(j))));
        }
        if cup.insert((i, j), v).is_some() {
            return Err(bad(format!("cup product {a} ∪ {b} listed twice")));
        }
    }
    if let Some(u) = classes.iter().position(|c| c.deg == 0) {
        for i in 0..classes.len() {
            for key in [(u, i), (i, u)] {
                let unit = SparseVec::basis(p, i);
                match cup.get(&key) {
                    Some(v) if *v != unit => {
                        return Err(bad(format!("{} must act as the unit on {}", classes[u].name, classes[i].name)))
                    }
                    _ => {
                        cup.insert(key, unit);
                    }
                }
            }
        }
    }
    cup.retain(|_, v| !v.is_zero());

    let mut md = ManifoldData {
        dim: raw.dim,
        closed: raw.closed,
        p,
        classes: classes.iter().map(|c| Class { name: c.name.clone(), deg: c.deg }).collect(),
        cup,
        sq: HashMap::new(),
    };
    let k = md.classes.len();
    let name = |i: usize| md.classes[i].name.as_str();
    for i in 0..k {
        for j in 0..k {
            let mut swapped = md.cup(j, i);
            swapped.scale(p.sign(deg(i) * deg(j)));
            if md.cup(i, j) != swapped {
                return Err(bad(format!("cup product is not graded-commutative on ({}, {})", name(i), name(j))));
            }
            for l in 0..k {
                let left = md.cup(i, j).flat_map(|m| md.cup(m, l));
                let right = md.cup(j, l).flat_map(|m| md.cup(i, m));
                if left != right {
                    return Err(bad(format!("cup product is not associative on ({}, {}, {})", name(i), name(j), name(l))));
                }
            }
        }
    }

    if !raw.sq.is_empty() && !p.is_two() {
        return Err(bad("Steenrod squares are only meaningful at p = 2"));
    }
    let mut sq = HashMap::new();
    for (s, y, terms) in &raw.sq {
        let i = lookup(y)?;
        let v = to_vec(terms)?;
        let s = *s;
        if s == 0 && v != SparseVec::basis(p, i) {
            return Err(bad(format!("Sq^0 must be the identity on {y}")));
        }
        if s as i64 > deg(i) && !v.is_zero() {
            return Err(bad(format!("Sq^{s}({y}) must vanish above the degree of {y}")));
        }
        if !homogeneous(&v, deg(i) + s as i64) {
            return Err(bad(format!("Sq^{s}({y}) is not of degree {}", deg(i) + s as i64)));
        }
        if s as i64 == deg(i) && v != md.cup(i, i) {
            return Err(bad(format!("Sq^{s}({y}) must equal {y} ∪ {y}")));
        }
        if sq.insert((s, i), v).is_some() {
            return Err(bad(format!("Sq^{s}({y}) listed twice")));
        }
    }
    if p.is_two() {
        for i in 0..k {
            if deg(i) > 0 {
                sq.entry((deg(i) as u32, i)).or_insert_with(|| md.cup(i, i));
            }
        }
    }
    sq.retain(|&(s, _), v| s > 0 && !v.is_zero());
    md.sq = sq;
    Ok(md)
}

impl ManifoldData {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn deg(&self, i: usize) -> i64 {
        self.classes[i].deg
    }

    pub fn cup(&self, i: usize, j: usize) -> SparseVec<usize> {
        self.cup.get(&(i, j)).cloned().unwrap_or_else(|| SparseVec::zero(self.p))
    }

    /// Sq^s of a class; Sq^0 is the identity.
    pub fn sq(&self, s: u32, i: usize) -> SparseVec<usize> {
        if s == 0 {
            return SparseVec::basis(self.p, i);
        }
        self.sq.get(&(s, i)).cloned().unwrap_or_else(|| SparseVec::zero(self.p))
    }

    /// Classes of positive degree.
    pub fn positive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&i| self.deg(i) > 0)
    }

    fn max_deg(&self) -> i64 {
        self.classes.iter().map(|c| c.deg).max().unwrap_or(0)
    }
}

/// Which algebra to build on H̃*(M⁺) ⊗ (free algebra on ΣⁿX).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Lie^s_R̄ with the Steenrod-twisted action: the Knudsen algebra g.
    Full,
    /// Lie^{s,ti}_R̄ factor, twisted action.
    Ti,
    /// Lie^{s,ti}_R̄ factor, action y ⊗ Q̄ only.
    TiUntwisted,
    /// Plain Lie^{s,ti} factor without operations.
    Plain,
}

/// ΣⁿX as a weight-1 module.
pub fn suspended_labels(m: &ManifoldData, x: &LabelData) -> WGModule {
    let n = m.dim as i64;
    let t_min = x.classes.iter().map(|c| c.deg + n).min().unwrap_or(0);
    let mut v = WGModule::new(Window { t_min, t_max: i64::MAX / 4, w_max: u32::MAX / 2, s_max: 0 });
    for c in &x.classes {
        v.push(c.name.clone(), c.deg + n, 1).expect("labels are distinct");
    }
    v
}

fn label_factor(m: &ManifoldData, x: &LabelData, flavor: Flavor, window: Window) -> Result<AlgebraPresentation> {
    let v = suspended_labels(m, x);
    let win = Window { t_max: window.t_max + m.max_deg(), ..window };
    if !m.p.is_two() {
        return free_odd_lie(&v, m.p, win);
    }
    let (mode, monad) = match flavor {
        Flavor::Full => (Mode::LieR, Monad::LieR),
        Flavor::Ti | Flavor::TiUntwisted => (Mode::LieTiR, Monad::LieTiR),
        Flavor::Plain => (Mode::LieTiR, Monad::PlainTi),
    };
    let base = abelian(v, mode);
    let mut tower = Tower::new(monad, &base);
    Ok(tower_presentation(&mut tower, mode, win.w_max, win.t_max)?.0)
}

/// The Knudsen algebra g = H̃*(M⁺) ⊗ Free(ΣⁿX) with bracket
/// (y1 ∪ y2) ⊗ [u1, u2] and Q̄_a(y ⊗ u) = Σ_s Sq^s(y) ⊗ Q̄_{a-|y|+s}(u).
pub fn knudsen_algebra(m: &ManifoldData, x: &LabelData, window: Window) -> Result<AlgebraPresentation> {
    knudsen_variant(m, x, window, Flavor::Full)
}

pub fn knudsen_variant(m: &ManifoldData, x: &LabelData, window: Window, flavor: Flavor) -> Result<AlgebraPresentation> {
    let p = m.p;
    let u = label_factor(m, x, flavor, window)?;
    let mut cells: Vec<(usize, usize, i64, u32)> = Vec::new();
    for y in 0..m.classes.len() {
        for (k, e) in u.module.iter().enumerate() {
            let t = e.t - m.deg(y);
            if t <= window.t_max && e.w <= window.w_max {
                cells.push((y, k, t, e.w));
            }
        }
    }
    cells.sort_by(|a, b| (a.3, a.2, a.0, a.1).cmp(&(b.3, b.2, b.0, b.1)));
    let t_min = cells.iter().map(|c| c.2).min().unwrap_or(window.t_min).min(window.t_min);
    let mut module = WGModule::new(Window { t_min, t_max: window.t_max, w_max: window.w_max, s_max: 0 });
    let mut index = HashMap::new();
    for (i, &(y, k, t, w)) in cells.iter().enumerate() {
        module.push(format!("{}⊗{}", m.classes[y].name, u.module.label(k)), t, w)?;
        index.insert((y, k), i);
    }
    let mode = if !p.is_two() {
        Mode::OddLie
    } else if flavor == Flavor::Full {
        Mode::LieR
    } else {
        Mode::LieTiR
    };
    let lift = |terms: Vec<((usize, usize), u32)>| -> Result<SparseVec<usize>> {
        let mut out = SparseVec::zero(p);
        for (key, c) in terms {
            let i = index.get(&key).ok_or_else(|| Error::Invalid("Knudsen product leaves the enumerated basis".into()))?;
            out.add_term(*i, c);
        }
        Ok(out)
    };
    let mut g = AlgebraPresentation::new(p, mode, module);
    for (i, &(y1, u1, t1, w1)) in cells.iter().enumerate() {
        for (j, &(y2, u2, t2, w2)) in cells.iter().enumerate() {
            if w1 + w2 > window.w_max || t1 + t2 - 1 > window.t_max {
                continue;
            }
            let cup = m.cup(y1, y2);
            if cup.is_zero() {
                continue;
            }
            let br = u.bracket(u1, u2)?;
            let sign = if p.is_two() { 1 } else { p.sign((u.module.elt(u1).t - 1) * m.deg(y2)) };
            let mut terms = Vec::new();
            for (y, a) in cup.iter() {
                for (v, b) in br.iter() {
                    terms.push(((y, v), p.mul(sign, p.mul(a, b))));
                }
            }
            g.set_bracket(i, j, lift(terms)?);
        }
        if !p.is_two() || flavor == Flavor::Plain || 2 * w1 > window.w_max {
            continue;
        }
        let q = m.deg(y1);
        let mut a = 0i32;
        while 2 * t1 + a as i64 - 1 <= window.t_max {
            let mut terms = Vec::new();
            let top = if flavor == Flavor::TiUntwisted { 0 } else { q as u32 };
            for s in 0..=top {
                let b = a - q as i32 + s as i32;
                let ys = m.sq(s, y1);
                if b < 0 || ys.is_zero() {
                    continue;
                }
                let qu = u.q(b, u1)?;
                for (y, c) in ys.iter() {
                    for (v, d) in qu.iter() {
                        terms.push(((y, v), p.mul(c, d)));
                    }
                }
            }
            g.set_q(a, i, lift(terms)?);
            a += 1;
        }
    }
    Ok(g)
}

/// One nonzero cell of an E² page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Entry {
    pub w: u32,
    pub s: usize,
    pub t: i64,
    pub dim: usize,
    pub basis: Vec<String>,
}

fn entries(cx: &ChainComplex, w: u32, with_basis: bool) -> Result<Vec<E2Entry>> {
    let mut out = Vec::new();
    for ((cw, s, t), dim) in cx.homology_table()? {
        if cw != w {
            continue;
        }
        let mut basis = Vec::new();
        if with_basis {
            let labels = &cx.cell(w, t).expect("nonzero cell").pieces[s].labels;
            for rep in cx.homology(s, t, w)?.representatives {
                let terms: Vec<String> = rep
                    .iter()
                    .map(|(k, c)| if c == 1 { labels[k].clone() } else { format!("{c}·{}", labels[k]) })
                    .collect();
                basis.push(terms.join(" + "));
            }
        }
        out.push(E2Entry { w, s, t, dim, basis });
    }
    Ok(out)
}

fn check_k(m: &ManifoldData, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Invalid("weight k must be positive".into()));
    }
    let p = m.p.get();
    if !m.p.is_two() && (k > p || (k == p && p == 3)) {
        return Err(Error::Unsupported(format!("weight {k} at p = {p}: the odd-primary route needs k < p, or k = p >= 5")));
    }
    Ok(())
}

/// The weight-k part of E²_{s,t} = HQ_{s,t}(g), p = 2 through the bar
/// complex, p odd through Chevalley-Eilenberg plus the unary classes at k = p.
pub fn e2_page(m: &ManifoldData, x: &LabelData, k: u32, window: Window, with_basis: bool) -> Result<Vec<E2Entry>> {
    check_k(m, k)?;
    let win = Window { w_max: k, ..window };
    let g = knudsen_algebra(m, x, win)?;
    if m.p.is_two() {
        let cx = bar_complex(Monad::LieR, &g, win)?;
        return entries(&cx, k, with_basis);
    }
    let cx = ce_complex_fp(&g, win)?;
    let mut out = entries(&cx, k, with_basis)?;
    if k == m.p.get() {
        let mut extra: BTreeMap<(usize, i64), Vec<String>> = BTreeMap::new();
        for c in odd_unary(m, x) {
            if win.contains_cell(c.s as usize, c.t, k) {
                extra.entry((c.s as usize, c.t)).or_default().push(c.name);
            }
        }
        for ((s, t), names) in extra {
            match out.iter_mut().find(|e| e.s == s && e.t == t) {
                Some(e) => {
                    e.dim += names.len();
                    if with_basis {
                        e.basis.extend(names);
                    }
                }
                None => out.push(E2Entry { w: k, s, t, dim: names.len(), basis: if with_basis { names } else { vec![] } }),
            }
        }
        out.sort_by_key(|e| (e.s, e.t));
    }
    Ok(out)
}

/// β^ε Q^j(y ⊗ x) for (|x| - |y|)/2 <= j < |x|/2, both ε, at s = 1; |x| is
/// the degree in ΣⁿX.
pub fn odd_unary(m: &ManifoldData, x: &LabelData) -> Vec<E2Class> {
    let p = m.p.get() as i64;
    let n = m.dim as i64;
    let mut out = Vec::new();
    for y in m.positive() {
        let q = m.deg(y);
        for c in &x.classes {
            let d = c.deg + n;
            let z = d - q;
            let lo = z.div_euclid(2) + z.rem_euclid(2);
            let hi = d.div_euclid(2) + d.rem_euclid(2);
            for j in lo..hi {
                for eps in [1i64, 0] {
                    let b = if eps == 1 { "b" } else { "" };
                    let name = format!("{b}Q{j}({}⊗{})", m.classes[y].name, c.name);
                    out.push(E2Class::generator(name, 1, z + 2 * (p - 1) * j - eps - 1, p as u32));
                }
            }
        }
    }
    out
}

/// Q̄_j(y ⊗ x) for 0 <= j < |y|, at s = 1.
pub fn unary(m: &ManifoldData, x: &LabelData) -> Vec<E2Class> {
    let n = m.dim as i64;
    let mut out = Vec::new();
    for y in m.positive() {
        for c in &x.classes {
            let z = c.deg + n - m.deg(y);
            for j in 0..m.deg(y) {
                out.push(E2Class::generator(format!("Q{j}({}⊗{})", m.classes[y].name, c.name), 1, 2 * z + j - 1, 2));
            }
        }
    }
    out
}

/// Homology classes of the constant CE complex of a presentation, named by
/// representative.
fn ce_classes(g: &AlgebraPresentation, window: Window) -> Result<Vec<E2Class>> {
    let cx = if g.p.is_two() { ce_complex_f2(g, window)? } else { ce_complex_fp(g, window)? };
    let mut out = Vec::new();
    for w in 1..=window.w_max {
        for e in entries(&cx, w, true)? {
            for b in e.basis {
                out.push(E2Class { name: format!("[{b}]"), h: 0, s: e.s as u32, t: e.t, w });
            }
        }
    }
    Ok(out)
}

/// The ti algebra H̃*(M⁺) ⊗ Free^{Lie^{s,ti}}(ΣⁿX) with the plain cup bracket
/// and no operations, through the window.
pub fn plain_factor(m: &ManifoldData, x: &LabelData, window: Window) -> Result<AlgebraPresentation> {
    if !m.p.is_two() {
        return knudsen_algebra(m, x, window);
    }
    knudsen_variant(m, x, window, Flavor::Plain)
}

/// Closed-form weight-k classes: at p = 2, k = 2 the unary classes plus the
/// H^{ti} part, at k = 3 the unary classes wedged with the generators as
/// well; at odd p, the CE homology plus (k = p) unary classes.
pub fn predicted_low_weight(m: &ManifoldData, x: &LabelData, k: u32, window: Window) -> Result<Vec<E2Class>> {
    check_k(m, k)?;
    let win = Window { w_max: k, ..window };
    let in_window = |c: &E2Class| c.w == k && win.contains_cell(c.total_s() as usize, c.t, c.w);
    if !m.p.is_two() {
        let mut out: Vec<E2Class> = ce_classes(&knudsen_algebra(m, x, win)?, win)?.into_iter().filter(|c| c.w == k).collect();
        if k == m.p.get() {
            out.extend(odd_unary(m, x).into_iter().filter(in_window));
        }
        return Ok(out);
    }
    let mut out = match k {
        1 | 2 => unary(m, x),
        3 => {
            let n = m.dim as i64;
            let mut gens = Vec::new();
            for y in 0..m.classes.len() {
                for c in &x.classes {
                    gens.push(E2Class::generator(format!("{}⊗{}", m.classes[y].name, c.name), 0, c.deg + n - m.deg(y), 1));
                }
            }
            unary(m, x).iter().flat_map(|a| gens.iter().map(move |b| a.wedge(b))).collect()
        }
        _ => return Err(Error::Unsupported(format!("no closed formula at weight {k} and p = 2"))),
    };
    out.retain(in_window);
    let g0 = plain_factor(m, x, win)?;
    out.extend(ce_classes(&g0, win)?.into_iter().filter(|c| c.w == k));
    Ok(out)
}

/// The upper bound Λ{γ_I Q̄_J(y ⊗ w)} ⊗ H^{ti}(H̃*(M⁺) ⊗ Free^{Lie^{s,ti}}(ΣⁿX))
/// at p = 2, for every weight of the window.
pub fn upper_bound(m: &ManifoldData, x: &LabelData, window: Window) -> Result<Vec<E2Class>> {
    if !m.p.is_two() {
        return Err(Error::Unsupported("the upper bound is stated at p = 2".into()));
    }
    let big = i64::MAX / 8;
    let w_max = window.w_max;
    let hall = label_factor(m, x, Flavor::Plain, Window { t_max: window.t_max, ..window })?;
    let mut gens = Vec::new();
    for y in m.positive() {
        let q = m.deg(y);
        for e in hall.module.iter() {
            let z = e.t - q;
            let mut r = 1usize;
            while e.w << r <= w_max {
                for jw in unstable_sequences(z, r, 0, Some(q as u32), big) {
                    let base = E2Class::generator(format!("{jw}({}⊗{})", m.classes[y].name, e.label), r as u32, jw.degree(z), jw.weight(e.w));
                    gens.push(base.clone());
                    let mut len = 1;
                    while e.w << (r + len) <= w_max {
                        for seq in gamma_sequences(r as u32, 1, len, window.s_max as u32) {
                            if seq.0.len() == len {
                                gens.push(seq.0.iter().rev().fold(base.clone(), |c, &i| c.gamma(i)));
                            }
                        }
                        len += 1;
                    }
                }
                r += 1;
            }
        }
    }
    let loose = Window { t_min: -big, t_max: big, w_max, s_max: usize::MAX / 4 };
    let a = exterior_closure(&gens, &loose);
    let min_a = a.iter().map(|c| c.t).min().unwrap_or(0);
    let h_win = Window { t_max: window.t_max + (1 - min_a).max(0), s_max: window.s_max, ..window };
    let g0 = plain_factor(m, x, h_win)?;
    let low = g0.module.iter().map(|e| e.t).min().unwrap_or(0).min(0);
    let h_win = Window { t_min: window.t_min.min(w_max as i64 * (low - 1)), ..h_win };
    let h = ce_classes(&g0, h_win)?;
    let mut out: Vec<E2Class> = a.iter().chain(&h).cloned().collect();
    for c in &a {
        for d in &h {
            if c.w + d.w <= w_max {
                out.push(c.wedge(d));
            }
        }
    }
    out.retain(|c| window.contains_cell(c.total_s() as usize, c.t, c.w));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::dims;

    pub(crate) const TORUS_OPEN: &str = r#"{"dim": 2, "closed": false,
        "classes": [{"name": "a", "deg": 1}, {"name": "b", "deg": 1}, {"name": "c", "deg": 2}],
        "cup": [["a", "b", [{"name": "c"}]], ["b", "a", [{"name": "c"}]]]}"#;

    fn labels(spec: &[(&str, i64)]) -> LabelData {
        LabelData { classes: spec.iter().map(|&(n, d)| Class { name: n.into(), deg: d }).collect() }
    }

    fn win(t_min: i64, t_max: i64, w_max: u32, s_max: usize) -> Window {
        Window::new(t_min, t_max, w_max, s_max).unwrap()
    }

    fn table(e: &[E2Entry]) -> BTreeMap<(u32, usize, i64), usize> {
        e.iter().map(|e| ((e.w, e.s, e.t), e.dim)).collect()
    }

    #[test]
    fn manifest_validation() {
        let m = load_manifold(TORUS_OPEN.as_bytes()).unwrap();
        assert_eq!(m.classes.len(), 3);
        assert_eq!(m.sq(2, 2), SparseVec::zero(Prime::TWO));
        let noncomm = TORUS_OPEN.replace(r#", ["b", "a", [{"name": "c"}]]"#, "");
        let err = load_manifold(noncomm.as_bytes()).unwrap_err().to_string();
        assert!(err.contains("(a, b)"), "{err}");
        let unknown = TORUS_OPEN.replace(r#"["a", "b", [{"name": "c"}]]"#, r#"["a", "z", [{"name": "c"}]]"#);
        assert!(load_manifold(unknown.as_bytes()).unwrap_err().to_string().contains("unknown class z"));
        let wrong_deg = TORUS_OPEN.replace(r#"[{"name": "c"}]]]"#, r#"[{"name": "a"}]]]"#);
        assert!(load_manifold(wrong_deg.as_bytes()).is_err());
        let syntax = load_manifold(b"{\n\"dim\": 2,\n oops}").unwrap_err().to_string();
        assert!(syntax.contains("line 3"), "{syntax}");
        let closed = load_manifold(br#"{"dim": 1, "closed": true, "classes": [{"name": "y", "deg": 1}]}"#).unwrap();
        assert_eq!(closed.classes[0].name, "1");
        assert_eq!(closed.cup(0, 1), SparseVec::basis(Prime::TWO, 1));
    }

    #[test]
    fn steenrod_validation() {
        let rp2 = |sq: &str| format!(r#"{{"dim": 2, "closed": false, "classes": [{{"name": "y", "deg": 1}}, {{"name": "z", "deg": 2}}],
            "cup": [["y", "y", [{{"name": "z"}}]]], "sq": [{sq}]}}"#);
        let m = load_manifold(rp2("").as_bytes()).unwrap();
        assert_eq!(m.sq(1, 0), SparseVec::basis(Prime::TWO, 1));
        assert!(load_manifold(rp2(r#"[1, "y", []]"#).as_bytes()).is_err());
        assert!(load_manifold(rp2(r#"[3, "y", [{"name": "z"}]]"#).as_bytes()).is_err());
        assert!(load_manifold(rp2(r#"[0, "y", []]"#).as_bytes()).is_err());
        let odd = r#"{"dim": 2, "closed": false, "p": 3, "classes": [{"name": "a", "deg": 1}, {"name": "c", "deg": 2}], "sq": [[1, "a", [{"name": "c"}]]]}"#;
        assert!(load_manifold(odd.as_bytes()).unwrap_err().to_string().contains("p = 2"));
    }

    #[test]
    fn surface_algebra_brackets() {
        let m = load_manifold(TORUS_OPEN.as_bytes()).unwrap();
        let g = knudsen_algebra(&m, &labels(&[("x", 0)]), win(-5, 8, 2, 2)).unwrap();
        g.check_laws().unwrap();
        let ax = g.module.index("a⊗x").unwrap();
        let bx = g.module.index("b⊗x").unwrap();
        let cq = g.module.index("c⊗Q0x").unwrap();
        assert_eq!(g.bracket(ax, bx).unwrap(), SparseVec::basis(Prime::TWO, cq));
        let cx = g.module.index("c⊗x").unwrap();
        assert_eq!(g.q(2, cx).unwrap(), SparseVec::basis(Prime::TWO, cq));
        let ti = plain_factor(&m, &labels(&[("x", 0)]), win(-5, 8, 2, 2)).unwrap();
        let (ax, bx) = (ti.module.index("a⊗x").unwrap(), ti.module.index("b⊗x").unwrap());
        assert!(ti.bracket(ax, bx).unwrap().is_zero());
    }

    #[test]
    fn open_torus_weight_two() {
        let m = load_manifold(TORUS_OPEN.as_bytes()).unwrap();
        for (spec, count) in [(vec![("x", 1)], 7), (vec![("x", 1), ("z", 2)], 24)] {
            let x = labels(&spec);
            let w = win(-10, 20, 2, 4);
            let pred = predicted_low_weight(&m, &x, 2, w).unwrap();
            assert_eq!(pred.len(), count, "{spec:?}");
            let got = table(&e2_page(&m, &x, 2, w, false).unwrap());
            assert_eq!(got, dims(&pred), "{spec:?}");
        }
    }
}
