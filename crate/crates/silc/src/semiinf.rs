//! Semi-infinite Bruhat order, semi-infinite length and covers.
//!
//! `w <= v` semi-infinitely when `w t_b <= v t_b` in the ordinary Bruhat
//! order for all sufficiently antidominant `b`. We take `b = -N sum alpha^vee`
//! and double `N` until two consecutive answers agree.

use thiserror::Error;

use crate::rootdata::{pair, AffineRoot, Coweight};
use crate::weylgroup::{AffineWeylElement, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemiInfError {
    #[error("semi-infinite comparison did not stabilize up to N = {cap}")]
    Unstable { cap: i64 },
}

pub fn si_length(g: &WeylGroup, x: &AffineWeylElement) -> i64 {
    let rho = g.datum().rho();
    g.finite_length(&x.finite) as i64 + 2 * pair(&x.translation, &rho)
}

// First N for which b_N dominates the translation parts of both arguments.
fn start_depth(g: &WeylGroup, xs: &[&AffineWeylElement]) -> i64 {
    let d = g.datum();
    let mut m = 1;
    for x in xs {
        for a in d.positive_roots() {
            m = m.max(pair(&x.translation, &a.weight).abs() + 1);
        }
    }
    let mut n = 2;
    while n < m {
        n *= 2;
    }
    n
}

/// Ordinary Bruhat comparison after right translation by `-N sum alpha^vee`.
pub fn translated_le(g: &WeylGroup, w: &AffineWeylElement, v: &AffineWeylElement, n: i64) -> bool {
    let t = g.translation(g.datum().coroot_sum().scale(-n));
    g.bruhat_le(&g.compose(w, &t), &g.compose(v, &t))
}

pub fn si_le(g: &WeylGroup, w: &AffineWeylElement, v: &AffineWeylElement) -> Result<bool, SemiInfError> {
    if w == v {
        return Ok(true);
    }
    let mut n = start_depth(g, &[w, v]);
    let cap = (4 * n).max(64);
    let mut prev = translated_le(g, w, v, n);
    while n < cap {
        n *= 2;
        let cur = translated_le(g, w, v, n);
        if cur == prev {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(SemiInfError::Unstable { cap })
}

/// Finite window of affine elements: every finite part, translations within
/// `radius` of the center in each coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiBox {
    pub center: Coweight,
    pub radius: i64,
}

impl SiBox {
    pub fn new(center: Coweight, radius: i64) -> Self {
        SiBox { center, radius }
    }

    pub fn elements(&self, g: &WeylGroup) -> Vec<AffineWeylElement> {
        let r = g.rank();
        let fin = g.elements();
        let mut out = Vec::new();
        let side = (2 * self.radius + 1) as usize;
        let total = side.pow(r as u32);
        for idx in 0..total {
            let mut k = idx;
            let mut beta = self.center.clone();
            for c in beta.0.iter_mut() {
                *c += (k % side) as i64 - self.radius;
                k /= side;
            }
            for u in &fin {
                out.push(g.affine(u.clone(), beta.clone()));
            }
        }
        sort_elements(g, &mut out);
        out
    }
}

/// Orders by semi-infinite length, then normal form.
pub fn sort_elements(g: &WeylGroup, xs: &mut [AffineWeylElement]) {
    xs.sort_by_cached_key(|x| (si_length(g, x), g.normal_form(x)));
}

/// `s_alpha` for a real affine root `gamma + n delta`, as `s_gamma t_{n gamma^vee}`.
pub fn affine_reflection(g: &WeylGroup, alpha: &AffineRoot) -> AffineWeylElement {
    let d = g.datum();
    let gamma_w = d.root_to_weight(&alpha.finite_part);
    let root = d
        .positive_roots()
        .iter()
        .find(|a| a.weight == gamma_w || a.weight == gamma_w.neg())
        .expect("finite part is a root");
    let coroot = if root.weight == gamma_w { root.coroot.clone() } else { root.coroot.neg() };
    g.affine(g.reflection(&gamma_w), coroot.scale(alpha.delta_coeff))
}

/// Positive real affine roots with `|n| <= bound`.
pub fn positive_affine_roots(g: &WeylGroup, bound: i64) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for n in 0..=bound {
        for a in g.datum().positive_roots() {
            out.push(AffineRoot { finite_part: a.coords.clone(), delta_coeff: n });
            if n > 0 {
                out.push(AffineRoot { finite_part: a.coords.iter().map(|c| -c).collect(), delta_coeff: n });
            }
        }
    }
    out
}

/// Pairs `(alpha, s_alpha v)` with `s_alpha v` a semi-infinite cover below `v`.
pub fn si_covers_below(
    g: &WeylGroup,
    v: &AffineWeylElement,
    height_bound: i64,
) -> Result<Vec<(AffineRoot, AffineWeylElement)>, SemiInfError> {
    let lv = si_length(g, v);
    let mut out = Vec::new();
    for alpha in positive_affine_roots(g, height_bound) {
        let x = g.compose(&affine_reflection(g, &alpha), v);
        if si_length(g, &x) == lv + 1 && si_le(g, &x, v)? {
            out.push((alpha, x));
        }
    }
    out.sort_by(|a, b| {
        (g.normal_form(&a.1), &a.0).cmp(&(g.normal_form(&b.1), &b.0))
    });
    Ok(out)
}

/// All `u` in the box of `radius` around `w` with `v <= u <= w`.
pub fn si_interval(
    g: &WeylGroup,
    v: &AffineWeylElement,
    w: &AffineWeylElement,
    radius: i64,
) -> Result<Vec<AffineWeylElement>, SemiInfError> {
    if !si_le(g, v, w)? {
        return Ok(Vec::new());
    }
    let (lo, hi) = (si_length(g, w), si_length(g, v));
    let mut out = Vec::new();
    for u in SiBox::new(w.translation.clone(), radius).elements(g) {
        let l = si_length(g, &u);
        if l < lo || l > hi {
            continue;
        }
        if si_le(g, v, &u)? && si_le(g, &u, w)? {
            out.push(u);
        }
    }
    Ok(out)
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::rootdata::RootDatum;
    use proptest::prelude::*;

    fn element(g: &WeylGroup, u: usize, b: &[i64]) -> AffineWeylElement {
        let fin = g.elements();
        g.affine(fin[u % fin.len()].clone(), Coweight(b.to_vec()))
    }

    proptest! {
        #[test]
        fn order_is_translation_invariant(
            u in 0usize..6, v in 0usize..6,
            b in prop::collection::vec(-2i64..3, 2),
            c in prop::collection::vec(-2i64..3, 2),
            t in prop::collection::vec(-3i64..4, 2),
        ) {
            let g = WeylGroup::new(RootDatum::of_type("A", 2).unwrap());
            let (x, y) = (element(&g, u, &b), element(&g, v, &c));
            let shift = g.translation(Coweight(t));
            let le = si_le(&g, &x, &y).unwrap();
            prop_assert_eq!(le, si_le(&g, &g.compose(&x, &shift), &g.compose(&y, &shift)).unwrap());
            if le {
                prop_assert!(si_length(&g, &x) >= si_length(&g, &y));
                if x != y {
                    prop_assert!(!si_le(&g, &y, &x).unwrap());
                }
            }
        }
    }
}
