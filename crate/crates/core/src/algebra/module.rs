use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

/// Truncation window: internal degrees, weights and filtration degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub t_min: i64,
    pub t_max: i64,
    pub w_max: u32,
    pub s_max: usize,
}

impl Window {
    pub fn new(t_min: i64, t_max: i64, w_max: u32, s_max: usize) -> Result<Self> {
        if t_min > t_max {
            return Err(Error::BadWindow(format!("t_min {t_min} > t_max {t_max}")));
        }
        if w_max == 0 {
            return Err(Error::BadWindow("w_max must be at least 1".into()));
        }
        Ok(Window { t_min, t_max, w_max, s_max })
    }

    pub fn contains(&self, t: i64, w: u32) -> bool {
        (self.t_min..=self.t_max).contains(&t) && (1..=self.w_max).contains(&w)
    }

    pub fn contains_cell(&self, s: usize, t: i64, w: u32) -> bool {
        s <= self.s_max && self.contains(t, w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElt {
    pub label: String,
    pub t: i64,
    pub w: u32,
}

/// A finitely listed weighted graded basis inside a window.
#[derive(Clone, Debug)]
pub struct WGModule {
    window: Window,
    basis: Vec<BasisElt>,
    by_label: HashMap<String, usize>,
    by_cell: BTreeMap<(u32, i64), Vec<usize>>,
}

impl WGModule {
    pub fn new(window: Window) -> Self {
        WGModule { window, basis: Vec::new(), by_label: HashMap::new(), by_cell: BTreeMap::new() }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn push(&mut self, label: impl Into<String>, t: i64, w: u32) -> Result<usize> {
        let label = label.into();
        if !self.window.contains(t, w) {
            return Err(Error::Invalid(format!("{label} at (t={t}, w={w}) lies outside the window")));
        }
        if self.by_label.contains_key(&label) {
            return Err(Error::Invalid(format!("duplicate label {label}")));
        }
        let i = self.basis.len();
        self.by_label.insert(label.clone(), i);
        self.by_cell.entry((w, t)).or_default().push(i);
        self.basis.push(BasisElt { label, t, w });
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn elt(&self, i: usize) -> &BasisElt {
        &self.basis[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasisElt> {
        self.basis.iter()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn at(&self, w: u32, t: i64) -> &[usize] {
        self.by_cell.get(&(w, t)).map_or(&[], |v| v.as_slice())
    }

    /// Dimensions per (w, t).
    pub fn dims(&self) -> BTreeMap<(u32, i64), usize> {
        self.by_cell.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    pub fn min_t(&self, w: u32) -> Option<i64> {
        self.by_cell.range((w, i64::MIN)..=(w, i64::MAX)).next().map(|(&(_, t), _)| t)
    }
}
