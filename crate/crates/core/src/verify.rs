//! Verification suites: each compares a computation against an independent
//! oracle and reports one check per comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{binom2, Prime, SparseVec, WGModule, Window};
use crate::bar::bar_homology;
use crate::ce::ce_complex_fp;
use crate::config::{
    e2_page, knudsen_algebra, knudsen_variant, load_labels, load_manifold, odd_unary, plain_factor, predicted_low_weight,
    upper_bound, Class, Flavor, LabelData, ManifoldData,
};
use crate::error::{Error, Result};
use crate::gamma::{dims, predicted_hq_trivial, SimplicialExterior};
use crate::lie::{abelian, free_lie_rbar_algebra, free_odd_lie, omega_n, ti_associate, trivial, unbounded, AlgebraPresentation, Mode, Monad};
use crate::rbar::{normal_form, untor_basis, QWord, Rewriter};

pub const TORUS_OPEN: &str = include_str!("../../../data/torus_open.json");
pub const TORUS_CLOSED: &str = include_str!("../../../data/torus_closed.json");
pub const RP3_CLOSED: &str = include_str!("../../../data/rp3_closed.json");
pub const RP3_PUNCTURED: &str = include_str!("../../../data/rp3_punctured.json");
pub const TORUS_OPEN_P5: &str = include_str!("../../../data/torus_open_p5.json");
pub const TORUS_CLOSED_P5: &str = include_str!("../../../data/torus_closed_p5.json");
pub const R2: &str = include_str!("../../../data/r2.json");
pub const LABELS_ONE: &str = include_str!("../../../data/labels_one.json");
pub const LABELS_TWO: &str = include_str!("../../../data/labels_two.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Rewrite,
    Untor,
    MainTheorem,
    WeightLt4,
    MayBound,
    GammaRelations,
    Surfaces,
    Rp3,
    OddP,
    Formality,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Rewrite,
        Suite::Untor,
        Suite::MainTheorem,
        Suite::WeightLt4,
        Suite::MayBound,
        Suite::GammaRelations,
        Suite::Surfaces,
        Suite::Rp3,
        Suite::OddP,
        Suite::Formality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rewrite => "rewrite",
            Suite::Untor => "untor",
            Suite::MainTheorem => "main-theorem",
            Suite::WeightLt4 => "weight-lt-4",
            Suite::MayBound => "may-bound",
            Suite::GammaRelations => "gamma-relations",
            Suite::Surfaces => "surfaces",
            Suite::Rp3 => "rp3",
            Suite::OddP => "odd-p",
            Suite::Formality => "formality",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s}; expected one of {}", Suite::ALL.map(|x| x.name()).join(", "))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        let detail = if pass { String::new() } else { detail.into() };
        self.0.push(Check { name: name.into(), pass, detail });
    }

    fn equal<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let pass = got == want;
        let detail = if pass { String::new() } else { format!("got {got:?}, expected {want:?}") };
        self.check(name, pass, detail);
    }
}

pub fn run(suite: Suite) -> Result<Report> {
    let mut c = Checks::default();
    match suite {
        Suite::Rewrite => rewrite(&mut c),
        Suite::Untor => untor(&mut c)?,
        Suite::MainTheorem => main_theorem(&mut c)?,
        Suite::WeightLt4 => weight_lt_4(&mut c)?,
        Suite::MayBound => may_bound(&mut c)?,
        Suite::GammaRelations => gamma_relations(&mut c)?,
        Suite::Surfaces => surfaces(&mut c)?,
        Suite::Rp3 => rp3(&mut c)?,
        Suite::OddP => odd_p(&mut c)?,
        Suite::Formality => formality(&mut c)?,
    }
    let pass = c.0.iter().all(|x| x.pass);
    Ok(Report { suite, pass, checks: c.0 })
}

type Table = BTreeMap<(u32, usize, i64), usize>;

fn win(t_min: i64, t_max: i64, w_max: u32, s_max: usize) -> Window {
    Window { t_min, t_max, w_max, s_max }
}

fn total(t: &Table) -> usize {
    t.values().sum()
}

fn rewrite(c: &mut Checks) {
    c.equal("Q2Q1 = Q4Q0", normal_form(&[2, 1], 0), vec![vec![4, 0]]);
    c.equal("Q0Q0 = 0", normal_form(&[0, 0], 0), vec![]);
    c.equal("Q1Q1 = 0", normal_form(&[1, 1], 0), vec![]);
    let mut words: Vec<Vec<i32>> = Vec::new();
    for len in 1..=3u32 {
        for code in 0..13i32.pow(len) {
            words.push((0..len).map(|k| code / 13i32.pow(k) % 13).collect());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rw = Rewriter::new();
    let mut bad = Vec::new();
    for w in &words {
        let left = rw.normal_form_at(w, 0, &mut |_| 0);
        let right = rw.normal_form_at(w, 0, &mut |r| r.len() - 1);
        let random = rw.normal_form_at(w, 0, &mut |r| rng.gen_range(0..r.len()));
        let admissible = left.iter().all(|v| QWord(v.clone()).is_admissible());
        if left != right || left != random || !admissible {
            bad.push(w.clone());
        }
    }
    c.check(
        format!("order-independent admissible normal forms on {} words", words.len()),
        bad.is_empty(),
        format!("{bad:?}"),
    );
}

fn untor(c: &mut Checks) -> Result<()> {
    for k in 0..=2 {
        let w = win(-10, 20, 8, 3);
        let got = bar_homology(Monad::AR, &trivial(k), w)?;
        let mut want = Table::new();
        for r in 0..=3 {
            for (_, t) in untor_basis(k, None, r, &w) {
                *want.entry((1 << r, r, t)).or_default() += 1;
            }
        }
        c.equal(format!("k={k}: bar over A_R equals unstable Tor ({} classes)", total(&want)), got, want);
    }
    Ok(())
}

fn main_theorem(c: &mut Checks) -> Result<()> {
    for k in 0..=1 {
        let w = win(-12, 2 * k + 25, 4, 6);
        let got = bar_homology(Monad::LieR, &trivial(k), w)?;
        let want = dims(&predicted_hq_trivial(k, None, &w));
        c.equal(format!("k={k}: Lie^s_R homology equals the exterior basis ({} classes)", total(&want)), got, want);
    }
    Ok(())
}

/// The trivial algebras plus six seeded random Lie^s_R presentations.
fn samples() -> Result<Vec<(String, AlgebraPresentation)>> {
    let mut out = vec![("trivial k=0".to_string(), trivial(0)), ("trivial k=1".to_string(), trivial(1))];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let w = win(-6, 24, 4, 0);
    let letters = |n: usize, rng: &mut ChaCha8Rng| {
        let mut v = WGModule::new(unbounded(-5));
        for i in 0..n {
            v.push(format!("x{i}"), rng.gen_range(0..=2), 1).expect("distinct labels");
        }
        v
    };
    let one = letters(1, &mut rng);
    out.push((format!("free on one class of degree {}", one.elt(0).t), free_lie_rbar_algebra(&one, Mode::LieR, w)?));
    let two = letters(2, &mut rng);
    out.push((
        format!("free on classes of degrees {}, {}", two.elt(0).t, two.elt(1).t),
        free_lie_rbar_algebra(&two, Mode::LieR, w)?,
    ));
    let ab = letters(2, &mut rng);
    out.push((format!("abelian on classes of degrees {}, {}", ab.elt(0).t, ab.elt(1).t), abelian(ab, Mode::LieR)));
    let (k, n) = (rng.gen_range(0..=2), rng.gen_range(1..=3));
    out.push((format!("Ω^{n} free, k={k}"), omega_n(k, n, 1, w)?));
    for (name, text) in [("punctured torus", TORUS_OPEN), ("punctured RP³", RP3_PUNCTURED)] {
        let d = rng.gen_range(0..=2);
        let m = load_manifold(text.as_bytes())?;
        let x = LabelData { classes: vec![Class { name: "x".into(), deg: d }] };
        out.push((format!("{name}, label degree {d}"), knudsen_algebra(&m, &x, w)?));
    }
    Ok(out)
}

fn weight_lt_4(c: &mut Checks) -> Result<()> {
    for (name, g) in samples()? {
        if let Err(e) = g.check_laws() {
            c.check(format!("{name}: laws"), false, e.to_string());
            continue;
        }
        let w = win(-6, 10, 3, 4);
        let full = bar_homology(Monad::LieR, &g, w)?;
        let ti = bar_homology(Monad::LieTiR, &ti_associate(&g)?, w)?;
        c.equal(format!("{name}: weight <= 3 ({} classes)", total(&full)), full, ti);
    }
    Ok(())
}

fn may_bound(c: &mut Checks) -> Result<()> {
    for (name, g) in samples()? {
        let w = win(-6, 10, 4, 4);
        let full = bar_homology(Monad::LieR, &g, w)?;
        let ti = bar_homology(Monad::LieTiR, &ti_associate(&g)?, w)?;
        let over: Vec<_> = full.iter().filter(|(k, &d)| ti.get(k).copied().unwrap_or(0) < d).map(|(k, _)| *k).collect();
        c.check(
            format!("{name}: cellwise bound through weight 4 ({} <= {})", total(&full), total(&ti)),
            over.is_empty(),
            format!("exceeds at {over:?}"),
        );
    }
    Ok(())
}

fn binomial_choose(n: i64, k: i64) -> usize {
    usize::from(n >= 0 && k >= 0 && binom2(n, k))
}

fn gamma_relations(c: &mut Checks) -> Result<()> {
    let small = |n: u32, s: u32| (1..=s).fold(1u64, |acc, i| acc * (n + 1 - s + i) as u64 / i as u64) <= 80;
    for (i, j) in [(1u32, 1u32), (2, 2), (3, 2), (1, 2)] {
        let mut degrees = Vec::new();
        let mut ok = true;
        for s in j..=12 {
            let n = s + i + j;
            if n > 12 || !small(n, s) {
                break;
            }
            let cx = SimplicialExterior::new(s);
            let z = cx.unit();
            let apply = |a: u32, b: u32| -> Result<SparseVec<crate::gamma::Subset>> {
                let inner = cx.gamma_apply(b, &z, s)?;
                cx.gamma_apply(a, &inner, s + b)
            };
            let mut diff = apply(i, j)?;
            for l in 1..=s {
                if 2 * l < i + 1 || 3 * l > i + j {
                    continue;
                }
                if binomial_choose(j as i64 - i as i64 + l as i64 - 1, j as i64 - l as i64) == 1 {
                    diff.add_assign(&apply(i + j - l, l)?);
                }
            }
            ok &= cx.is_boundary(n, 4, &diff);
            degrees.push(n);
        }
        c.check(
            format!("γ{i}γ{j} relation holds in homology, simplicial degrees {degrees:?}"),
            ok && !degrees.is_empty(),
            "",
        );
    }
    let cx = SimplicialExterior::new(2);
    let g2 = cx.gamma_apply(2, &cx.unit(), 2)?;
    c.check("γ2 of the degree-2 generator is nonzero", !cx.is_boundary(4, 2, &g2), "");
    let g21 = cx.gamma_apply(2, &cx.gamma_apply(1, &cx.unit(), 2)?, 3)?;
    c.check("γ2γ1 of the degree-2 generator is nonzero", !cx.is_boundary(5, 4, &g21), "");
    Ok(())
}

/// Weight and total-degree counts of the splitting for a single sphere
/// label S^r: the tensor product over homology classes of M of the loop
/// space homologies, weights below p at odd p.
fn sphere_series(m: &ManifoldData, r: i64, w_max: u32) -> BTreeMap<(u32, i64), usize> {
    let n = m.dim as i64;
    // (degree, weight, exterior)
    let mut gens: Vec<(i64, u32, bool)> = Vec::new();
    for cl in &m.classes {
        let q = cl.deg;
        let l = r + n - q;
        if q == 0 {
            gens.push((n + r, 1, true));
        } else if m.p.is_two() {
            gens.push((l, 1, false));
            for a in 1..q {
                gens.push((2 * l + a, 2, false));
            }
        } else {
            gens.push((l, 1, l.rem_euclid(2) == 1));
        }
    }
    let mut series = BTreeMap::from([((0u32, 0i64), 1usize)]);
    for (d, w, ext) in gens {
        let mut next = BTreeMap::new();
        for (&(sw, sd), &cnt) in &series {
            let mut e = 0u32;
            while sw + e * w <= w_max {
                *next.entry((sw + e * w, sd + e as i64 * d)).or_default() += cnt;
                e += 1;
                if ext && e > 1 {
                    break;
                }
            }
        }
        series = next;
    }
    series.remove(&(0, 0));
    series
}

fn e2_table(m: &ManifoldData, x: &LabelData, k: u32, w: Window) -> Result<Table> {
    Ok(e2_page(m, x, k, w, false)?.into_iter().map(|e| ((e.w, e.s, e.t), e.dim)).collect())
}

fn by_total(t: &Table) -> BTreeMap<(u32, i64), usize> {
    let mut out = BTreeMap::new();
    for (&(w, s, t), &d) in t {
        *out.entry((w, s as i64 + t)).or_default() += d;
    }
    out
}

/// Checks shared by the p = 2 manifold suites.
fn manifold_checks(c: &mut Checks, name: &str, m: &ManifoldData, w: Window) -> Result<()> {
    for (lname, text) in [("one label", LABELS_ONE), ("two labels", LABELS_TWO)] {
        let x = load_labels(text.as_bytes())?;
        for k in 2..=3 {
            let got = e2_table(m, &x, k, w)?;
            let want = dims(&predicted_low_weight(m, &x, k, w)?);
            c.equal(format!("{name}, {lname}, weight {k}: E² equals the closed-form family ({} classes)", total(&want)), got.clone(), want);
            if k == 3 && !m.closed {
                let high: usize = got.iter().filter(|(key, _)| key.1 >= 3).map(|(_, d)| d).sum();
                c.equal(format!("{name}, {lname}, weight 3: nothing in s >= 3"), high, 0);
            }
        }
        let bw = win(w.t_min, w.t_max, 4, w.s_max);
        let bound = dims(&upper_bound(m, &x, bw)?);
        let mut over = Vec::new();
        for k in 1..=4 {
            for (key, d) in e2_table(m, &x, k, bw)? {
                if bound.get(&key).copied().unwrap_or(0) < d {
                    over.push(key);
                }
            }
        }
        c.check(format!("{name}, {lname}: E² below the exterior upper bound through weight 4"), over.is_empty(), format!("{over:?}"));
    }
    let r = load_labels(LABELS_ONE.as_bytes())?.classes[0].deg;
    let x = load_labels(LABELS_ONE.as_bytes())?;
    for k in 2..=3 {
        let got = by_total(&e2_table(m, &x, k, w)?);
        let want: BTreeMap<(u32, i64), usize> = sphere_series(m, r, k).into_iter().filter(|(key, _)| key.0 == k).collect();
        c.equal(format!("{name}, sphere label S^{r}, weight {k}: totals match the loop space splitting"), got, want);
    }
    Ok(())
}

/// Künneth over the summands of a product of algebras with trivial brackets.
fn tensor(a: &Table, b: &Table, w: Window) -> Table {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_default() += v;
    }
    for (&(w1, s1, t1), d1) in a {
        for (&(w2, s2, t2), d2) in b {
            let key = (w1 + w2, s1 + s2 + 1, t1 + t2 - 1);
            if key.0 <= w.w_max && key.1 <= w.s_max && (w.t_min..=w.t_max).contains(&key.2) {
                *out.entry(key).or_default() += d1 * d2;
            }
        }
    }
    out
}

fn euclidean_splitting(c: &mut Checks) -> Result<()> {
    let m = load_manifold(R2.as_bytes())?;
    let x = load_labels(LABELS_TWO.as_bytes())?;
    let w = win(-4, 14, 4, 5);
    let mut full = Table::new();
    for k in 1..=4 {
        full.extend(e2_table(&m, &x, k, w)?);
    }
    let g = knudsen_algebra(&m, &x, w)?;
    let brackets = g.bracket_entries().count();
    c.equal("R²: the Knudsen bracket vanishes", brackets, 0);
    let wide = win(-30, 14, 4, 5);
    let words = knudsen_variant(&m, &x, win(-4, 30, 4, 5), Flavor::Plain)?;
    let mut product = Table::new();
    for e in words.module.iter() {
        let h = bar_homology(Monad::LieR, &omega_n(e.t, m.dim, e.w, wide)?, wide)?;
        product = tensor(&product, &h, wide);
    }
    product.retain(|k, _| (w.t_min..=w.t_max).contains(&k.2));
    c.equal(
        format!("R², two labels: E² is the product over Lyndon words of single-generator runs ({} classes)", total(&full)),
        full,
        product,
    );
    Ok(())
}

fn surfaces(c: &mut Checks) -> Result<()> {
    let w = win(-10, 20, 3, 6);
    let open = load_manifold(TORUS_OPEN.as_bytes())?;
    let closed = load_manifold(TORUS_CLOSED.as_bytes())?;
    let one = load_labels(LABELS_ONE.as_bytes())?;
    let two = load_labels(LABELS_TWO.as_bytes())?;
    for (name, m, x, want) in [("punctured torus, one label", &open, &one, 7), ("punctured torus, two labels", &open, &two, 24), ("torus, one label", &closed, &one, 10)] {
        c.equal(format!("{name}: weight-2 total from the listing"), total(&e2_table(m, x, 2, w)?), want);
    }
    let g = knudsen_algebra(&open, &one, w)?;
    let idx = |g: &AlgebraPresentation, l: &str| g.module.index(l).ok_or_else(|| Error::Invalid(format!("no class {l}")));
    let (ax, bx, cx, cq) = (idx(&g, "a⊗x")?, idx(&g, "b⊗x")?, idx(&g, "c⊗x")?, idx(&g, "c⊗Q0x")?);
    let target = SparseVec::basis(Prime::TWO, cq);
    c.check("[a⊗x, b⊗x] = c⊗Q̄_0 x = Q̄_2(c⊗x)", g.bracket(ax, bx)? == target && g.q(2, cx)? == target, "");
    let ti = plain_factor(&open, &one, w)?;
    c.check("⟨a⊗x, b⊗x⟩ = c⊗⟨x, x⟩ = 0", ti.bracket(idx(&ti, "a⊗x")?, idx(&ti, "b⊗x")?)?.is_zero(), "");
    let two_g = knudsen_algebra(&open, &two, w)?;
    let bracket = two_g.bracket(idx(&two_g, "a⊗x1")?, idx(&two_g, "b⊗x2")?)?;
    c.check("[a⊗x1, b⊗x2] = c⊗[x1, x2]", bracket == SparseVec::basis(Prime::TWO, idx(&two_g, "c⊗<x1,x2>")?), format!("{bracket}"));
    manifold_checks(c, "punctured torus", &open, w)?;
    manifold_checks(c, "torus", &closed, w)?;
    euclidean_splitting(c)
}

fn rp3(c: &mut Checks) -> Result<()> {
    let w = win(-10, 20, 3, 6);
    for (name, text) in [("RP³", RP3_CLOSED), ("punctured RP³", RP3_PUNCTURED)] {
        let m = load_manifold(text.as_bytes())?;
        let y = m.index("y").expect("manifest has y");
        let y2 = m.index("y2").expect("manifest has y2");
        c.equal(format!("{name}: Sq¹y = y²"), m.sq(1, y), SparseVec::basis(Prime::TWO, y2));
        let x = load_labels(LABELS_ONE.as_bytes())?;
        let g = knudsen_algebra(&m, &x, w)?;
        let first = &x.classes[0].name;
        let (yx, yq, y2q) = (
            g.module.index(&format!("y⊗{first}")).expect("class present"),
            g.module.index(&format!("y⊗Q0{first}")).expect("class present"),
            g.module.index(&format!("y2⊗Q1{first}")).expect("class present"),
        );
        let mut want = SparseVec::basis(Prime::TWO, yq);
        want.add_term(y2q, 1);
        c.equal(format!("{name}: Q̄_1(y⊗x) = y⊗Q̄_0 x + y²⊗Q̄_1 x"), g.q(1, yx)?, want);
        for (lname, ltext) in [("one label", LABELS_ONE), ("two labels", LABELS_TWO)] {
            let x = load_labels(ltext.as_bytes())?;
            let unary = predicted_low_weight(&m, &x, 2, w)?.into_iter().filter(|e| e.name.starts_with('Q')).count();
            c.equal(format!("{name}, {lname}: six unary classes per label"), unary, 6 * x.classes.len());
            let twisted = knudsen_variant(&m, &x, w, Flavor::Ti)?;
            let untwisted = knudsen_variant(&m, &x, w, Flavor::TiUntwisted)?;
            c.check(format!("{name}, {lname}: the Steenrod twist changes the action table"), twisted.q_table() != untwisted.q_table(), "");
            for k in 2..=3 {
                let kw = Window { w_max: k, ..w };
                let a = bar_homology(Monad::LieTiR, &knudsen_variant(&m, &x, kw, Flavor::Ti)?, kw)?;
                let b = bar_homology(Monad::LieTiR, &knudsen_variant(&m, &x, kw, Flavor::TiUntwisted)?, kw)?;
                let full = e2_table(&m, &x, k, kw)?;
                let a: Table = a.into_iter().filter(|e| e.0 .0 == k).collect();
                let b: Table = b.into_iter().filter(|e| e.0 .0 == k).collect();
                c.check(
                    format!("{name}, {lname}, weight {k}: twisted and untwisted runs agree with E² ({} classes)", total(&full)),
                    a == b && a == full,
                    "",
                );
            }
        }
        manifold_checks(c, name, &m, w)?;
    }
    Ok(())
}

fn odd_p(c: &mut Checks) -> Result<()> {
    let p = Prime::new(5)?;
    let mut x = WGModule::new(unbounded(-5));
    x.push("x", 2, 1)?;
    let free = free_odd_lie(&x, p, win(-5, 20, 5, 0))?;
    let xx = free.bracket(0, 0)?;
    let xxx = free.bracket_vec(&xx, &SparseVec::basis(p, 0))?;
    c.check("[x, x] != 0 and [[x, x], x] = 0 for even x", !xx.is_zero() && xxx.is_zero(), "");
    let one = load_labels(LABELS_ONE.as_bytes())?;
    let two = load_labels(LABELS_TWO.as_bytes())?;
    let w = win(-10, 20, 3, 6);
    for (name, text) in [("punctured torus", TORUS_OPEN_P5), ("torus", TORUS_CLOSED_P5)] {
        let m = load_manifold(text.as_bytes())?;
        for (lname, x) in [("one label", &one), ("two labels", &two)] {
            let g = knudsen_algebra(&m, x, win(-10, 20, 5, 6))?;
            c.check(format!("{name}, {lname}: Jacobi and antisymmetry"), g.check_laws().is_ok(), "");
            let sq = ce_complex_fp(&g, win(-10, 20, 5, 6)).and_then(|cx| cx.validate());
            c.check(format!("{name}, {lname}: ∂² = 0 through weight 5"), sq.is_ok(), sq.err().map(|e| e.to_string()).unwrap_or_default());
            for k in 2..=3 {
                let got = e2_table(&m, x, k, w)?;
                let want = dims(&predicted_low_weight(&m, x, k, w)?);
                c.equal(format!("{name}, {lname}, weight {k}: E² equals the weight-{k} CE homology"), got, want);
            }
        }
        let r = one.classes[0].deg;
        for k in 2..=3 {
            let got = by_total(&e2_table(&m, &one, k, w)?);
            let want: BTreeMap<_, _> = sphere_series(&m, r, k).into_iter().filter(|(key, _)| key.0 == k).collect();
            c.equal(format!("{name}, sphere label S^{r}, weight {k}: totals match the loop space splitting"), got, want);
        }
    }
    let m = load_manifold(TORUS_OPEN_P5.as_bytes())?;
    let mut got: Vec<(String, i64)> = odd_unary(&m, &one).into_iter().map(|e| (e.name, e.t)).collect();
    got.sort();
    // |x| = 3 in Σ²X; j = 1 is the only index for y of degree 1 and 2
    let mut want: Vec<(String, i64)> = vec![
        ("Q1(a⊗x)".into(), 9),
        ("bQ1(a⊗x)".into(), 8),
        ("Q1(b⊗x)".into(), 9),
        ("bQ1(b⊗x)".into(), 8),
        ("Q1(c⊗x)".into(), 8),
        ("bQ1(c⊗x)".into(), 7),
    ];
    want.sort();
    c.equal("weight-5 unary classes on the punctured torus", got, want);
    let page = e2_page(&m, &one, 5, win(-10, 20, 5, 6), true)?;
    let listed = page.iter().flat_map(|e| e.basis.iter()).filter(|b| b.contains("Q1(")).count();
    c.equal("weight-5 E² lists the unary classes", listed, 6);
    let p3 = TORUS_OPEN_P5.replace("\"p\": 5", "\"p\": 3");
    let m3 = load_manifold(p3.as_bytes())?;
    c.check("p = 3, weight 3 is rejected", e2_page(&m3, &one, 3, w, false).is_err(), "");
    c.check("p = 5, weight 6 is rejected", e2_page(&m, &one, 6, w, false).is_err(), "");
    Ok(())
}

fn formality(c: &mut Checks) -> Result<()> {
    let w = win(-1, 8, 2, 2);
    let full = bar_homology(Monad::LieR, &trivial(0), w)?;
    let wt2: Table = full.into_iter().filter(|e| e.0 .0 == 2).collect();
    c.equal("Lie^s_R weight 2, k = 0, t in [-1, 8]", total(&wt2), 10);
    let plain = bar_homology(Monad::PlainLie, &abelian(trivial(0).module, Mode::LieR), w)?;
    let plain2: Table = plain.into_iter().filter(|e| e.0 .0 == 2).collect();
    c.equal("plain shifted Lie weight 2: only [x, x]", plain2, Table::from([((2, 1, -1), 1)]));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn sphere_series_for_the_plane() {
        let m = load_manifold(R2.as_bytes()).unwrap();
        // H_*(Ω²S³) = F_2[x_1, x_3, x_7, ...]: weight 2 is x_1², x_3
        let s = sphere_series(&m, 1, 2);
        assert_eq!(s.get(&(2, 2)), Some(&1));
        assert_eq!(s.get(&(2, 3)), Some(&1));
        assert_eq!(s.len(), 3);
    }
}
