use std::collections::BTreeMap;

use proptest::prelude::*;

use slq::algebra::{rank, Prime, SparseVec, WGModule, Window};
use slq::bar::{bar_complex, bar_homology};
use slq::config::{e2_page, load_labels, load_manifold, Class, LabelData};
use slq::lie::{abelian, trivial, unbounded, Mode, Monad};
use slq::rbar::{normal_form, QWord, Rewriter};
use slq::verify::{TORUS_CLOSED, TORUS_OPEN};

fn win(t_min: i64, t_max: i64, w_max: u32, s_max: usize) -> Window {
    Window::new(t_min, t_max, w_max, s_max).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_admissible_and_stable(word in prop::collection::vec(0i32..=10, 1..=4)) {
        let nf = normal_form(&word, 0);
        for v in &nf {
            prop_assert!(QWord(v.clone()).is_admissible());
            prop_assert_eq!(v.len(), word.len());
            prop_assert_eq!(QWord(v.clone()).degree(3), QWord(word.clone()).degree(3));
            prop_assert_eq!(normal_form(v, 0), vec![v.clone()]);
        }
        let mut rw = Rewriter::new();
        prop_assert_eq!(rw.normal_form_at(&word, 0, &mut |r| r.len() - 1), nf);
    }

    #[test]
    fn sparse_addition_over_f3(a in prop::collection::vec((0usize..6, -4i64..5), 0..8), b in prop::collection::vec((0usize..6, -4i64..5), 0..8)) {
        let p = Prime::new(3).unwrap();
        let (x, y) = (SparseVec::from_terms(p, a), SparseVec::from_terms(p, b));
        let mut l = x.clone();
        l.add_assign(&y);
        let mut r = y.clone();
        r.add_assign(&x);
        prop_assert_eq!(&l, &r);
        let mut z = x.clone();
        z.add_scaled(&x, p.neg(1));
        prop_assert!(z.is_zero());
    }

    #[test]
    fn rank_is_bounded_and_shuffle_invariant(rows in prop::collection::vec(prop::collection::vec(0usize..10, 0..6), 0..8), p in prop::sample::select(vec![2u32, 3, 5])) {
        let p = Prime::new(p).unwrap();
        let rows: Vec<_> = rows.into_iter().map(|r| SparseVec::from_terms(p, r.into_iter().map(|k| (k, 1)))).collect();
        let r = rank(&rows).unwrap();
        prop_assert!(r <= rows.len().min(10));
        let mut rev = rows.clone();
        rev.reverse();
        prop_assert_eq!(rank(&rev).unwrap(), r);
    }

    #[test]
    fn homology_is_bounded_by_chains(degs in prop::collection::vec(0i64..=3, 1..=2)) {
        let mut v = WGModule::new(unbounded(-5));
        for (i, d) in degs.iter().enumerate() {
            v.push(format!("x{i}"), *d, 1).unwrap();
        }
        let w = win(-5, 9, 3, 3);
        let cx = bar_complex(Monad::LieR, &abelian(v, Mode::LieR), w).unwrap();
        cx.validate().unwrap();
        let h = cx.homology_table().unwrap();
        for (&(cw, s, t), &d) in &h {
            prop_assert!(d <= cx.cell(cw, t).unwrap().dim(s));
        }
        // weight one sees only the generators
        let mut want: BTreeMap<(u32, usize, i64), usize> = BTreeMap::new();
        for d in &degs {
            *want.entry((1, 0, *d)).or_default() += 1;
        }
        let got: BTreeMap<_, _> = h.into_iter().filter(|e| e.0.0 == 1).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn weight_one_is_classes_times_labels(d in -1i64..=3, closed in any::<bool>()) {
        let m = load_manifold(if closed { TORUS_CLOSED } else { TORUS_OPEN }.as_bytes()).unwrap();
        let x = LabelData { classes: vec![Class { name: "x".into(), deg: d }] };
        let page = e2_page(&m, &x, 1, win(-10, 10, 1, 3), false).unwrap();
        let mut want: BTreeMap<i64, usize> = BTreeMap::new();
        for c in &m.classes {
            *want.entry(d + m.dim as i64 - c.deg).or_default() += 1;
        }
        let got: BTreeMap<i64, usize> = page.iter().map(|e| { assert_eq!(e.s, 0); (e.t, e.dim) }).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn manifest_loader_never_panics(s in ".{0,64}") {
        let _ = load_manifold(s.as_bytes());
        let _ = load_labels(s.as_bytes());
    }
}

#[test]
fn bar_homology_of_trivial_algebras_is_deterministic() {
    let w = win(-2, 12, 3, 4);
    for k in 0..=2 {
        let a = bar_homology(Monad::LieR, &trivial(k), w).unwrap();
        let b = bar_homology(Monad::LieR, &trivial(k), w).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.get(&(1, 0, k)), Some(&1));
    }
}
