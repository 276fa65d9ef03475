//! Truncated graded characters and affine Demazure operators.
//!
//! A character is a finite sum of `c q^n e^lam` whose terms all lie in a
//! half-open window `lo <= n < hi`. Here `q = e^delta`, so the affine simple
//! root is `alpha_0 = -theta + delta` and `D_0` moves the q-degree.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::rootdata::{pair, Coweight, RootDataError, Weight};
use crate::weylgroup::{AffineWeylElement, FiniteWeylElement, WeylGroup};

pub type Coeff = i128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("local Weyl module did not stabilize on window {0}")]
    Unstable(Window),
    #[error("empty or inverted window {0}")]
    BadWindow(Window),
}

/// Half-open range `lo <= n < hi` of q-exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub const UNBOUNDED: Window = Window { lo: i64::MIN / 4, hi: i64::MAX / 4 };

    pub fn new(lo: i64, hi: i64) -> Window {
        Window { lo, hi }
    }

    /// The window holding only q^0.
    pub fn degree_zero() -> Window {
        Window { lo: 0, hi: 1 }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n < self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn intersect(&self, other: &Window) -> Window {
        Window { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn shift(&self, k: i64) -> Window {
        if *self == Window::UNBOUNDED {
            return *self;
        }
        Window { lo: self.lo + k, hi: self.hi + k }
    }

    /// Image under `n -> -n`.
    pub fn reflect(&self) -> Window {
        if *self == Window::UNBOUNDED {
            return *self;
        }
        Window { lo: 1 - self.hi, hi: 1 - self.lo }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Truncated element of `Z[q, q^-1][P]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    terms: HashMap<(i64, Weight), Coeff>,
    window: Window,
}

impl GradedCharacter {
    pub fn zero(window: Window) -> Self {
        GradedCharacter { terms: HashMap::new(), window }
    }

    pub fn monomial(q: i64, wt: Weight, window: Window) -> Self {
        let mut f = GradedCharacter::zero(window);
        f.add_term(q, wt, 1);
        f
    }

    pub fn one(rank: usize, window: Window) -> Self {
        GradedCharacter::monomial(0, Weight::zero(rank), window)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, q: i64, wt: Weight, c: Coeff) {
        if c == 0 || !self.window.contains(q) {
            return;
        }
        match self.terms.entry((q, wt)) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coeff(&self, q: i64, wt: &Weight) -> Coeff {
        self.terms.get(&(q, wt.clone())).copied().unwrap_or(0)
    }

    /// Terms in canonical order: q-power, then weight lexicographically.
    pub fn terms(&self) -> Vec<(i64, &Weight, Coeff)> {
        let mut v: Vec<(i64, &Weight, Coeff)> = self.terms.iter().map(|((q, w), c)| (*q, w, *c)).collect();
        v.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Weight, Coeff)> {
        self.terms.iter().map(|((q, w), c)| (*q, w, *c))
    }

    pub fn truncate(&self, window: Window) -> Self {
        let window = self.window.intersect(&window);
        GradedCharacter {
            terms: self
                .terms
                .iter()
                .filter(|((q, _), _)| window.contains(*q))
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
            window,
        }
    }

    pub fn with_window(mut self, window: Window) -> Self {
        self.terms.retain(|(q, _), _| window.contains(*q));
        self.window = window;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: Coeff) -> Self {
        let window = self.window.intersect(&other.window);
        let mut out = self.truncate(window);
        for ((q, w), c) in &other.terms {
            if window.contains(*q) {
                *out.terms.entry((*q, w.clone())).or_insert(0) += sign * c;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn scale(&self, k: Coeff) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    /// Product, valid on the intersection of the windows shifted by the
    /// lowest degree of the other factor.
    pub fn mul(&self, other: &Self) -> Self {
        let lo_a = self.min_degree().unwrap_or(0).max(self.window.lo);
        let lo_b = other.min_degree().unwrap_or(0).max(other.window.lo);
        let window = self.window.shift(lo_b).intersect(&other.window.shift(lo_a));
        let mut terms: HashMap<(i64, Weight), Coeff> = HashMap::new();
        for ((qa, wa), ca) in &self.terms {
            for ((qb, wb), cb) in &other.terms {
                let q = qa + qb;
                if window.contains(q) {
                    *terms.entry((q, wa.add(wb))).or_insert(0) += ca * cb;
                }
            }
        }
        terms.retain(|_, c| *c != 0);
        GradedCharacter { terms, window }
    }

    /// Multiplies by `q^k e^wt`.
    pub fn shift(&self, k: i64, wt: Option<&Weight>) -> Self {
        GradedCharacter {
            terms: self
                .terms
                .iter()
                .map(|((q, w), c)| ((q + k, wt.map_or_else(|| w.clone(), |x| w.add(x))), *c))
                .collect(),
            window: self.window.shift(k),
        }
    }

    /// Negates all weights and q-powers.
    pub fn dual(&self) -> Self {
        GradedCharacter {
            terms: self.terms.iter().map(|((q, w), c)| ((-q, w.neg()), *c)).collect(),
            window: self.window.reflect(),
        }
    }

    /// Negates all weights and keeps q-powers.
    pub fn negate_weights(&self) -> Self {
        GradedCharacter {
            terms: self.terms.iter().map(|((q, w), c)| ((*q, w.neg()), *c)).collect(),
            window: self.window,
        }
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        GradedCharacter {
            terms: self.terms.iter().map(|((q, w), c)| ((-q, w.clone()), *c)).collect(),
            window: self.window.reflect(),
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Coefficient of `q^n` as a finite character.
    pub fn degree_part(&self, n: i64) -> GradedCharacter {
        let mut out = GradedCharacter::zero(Window::degree_zero());
        for ((q, w), c) in &self.terms {
            if *q == n {
                out.add_term(0, w.clone(), *c);
            }
        }
        out
    }

    /// Specialization `q -> 1, e^lam -> 1`.
    pub fn total(&self) -> Coeff {
        self.terms.values().sum()
    }

    /// True when every coefficient of `self - other` is nonnegative on the common window.
    pub fn dominates(&self, other: &Self) -> bool {
        self.sub(other).terms.values().all(|c| *c >= 0)
    }

    /// Equality of the truncations to a window.
    pub fn agrees_on(&self, other: &Self, window: Window) -> bool {
        self.truncate(window).terms == other.truncate(window).terms
    }
}

/// `D_i` for `0 <= i <= r`.
pub fn demazure_step(g: &WeylGroup, i: usize, f: &GradedCharacter) -> GradedCharacter {
    let d = g.datum();
    let (step, dq) = if i == 0 { (d.theta().weight.clone(), -1) } else { (d.simple_root(i).neg(), 0) };
    let theta_vee = &d.theta().coroot;
    let mut out: HashMap<(i64, Weight), Coeff> = HashMap::with_capacity(f.terms.len() * 2);
    let window = f.window;
    for ((n, lam), c) in &f.terms {
        let m = if i == 0 { -pair(theta_vee, lam) } else { lam.0[i - 1] };
        if m >= 0 {
            let mut wt = lam.clone();
            for k in 0..=m {
                let q = n + k * dq;
                if window.contains(q) {
                    *out.entry((q, wt.clone())).or_insert(0) += c;
                }
                wt = wt.add(&step);
            }
        } else if m < -1 {
            let mut wt = lam.sub(&step);
            for j in 1..-m {
                let q = n - j * dq;
                if window.contains(q) {
                    *out.entry((q, wt.clone())).or_insert(0) -= c;
                }
                wt = wt.sub(&step);
            }
        }
    }
    out.retain(|_, c| *c != 0);
    GradedCharacter { terms: out, window }
}

/// `D_{i_1} ... D_{i_k} f`; the rightmost operator acts first.
pub fn demazure_word(g: &WeylGroup, word: &[usize], f: &GradedCharacter) -> GradedCharacter {
    let mut out = f.clone();
    for &i in word.iter().rev() {
        out = demazure_step(g, i, &out);
    }
    out
}

pub fn weyl_character(g: &WeylGroup, lam: &Weight) -> Result<GradedCharacter, CharError> {
    g.datum().check_rank(lam.rank())?;
    if !lam.is_dominant() {
        return Err(RootDataError::NotDominant(lam.clone()).into());
    }
    let word = g.finite_reduced_word(g.longest());
    Ok(demazure_word(g, &word, &GradedCharacter::monomial(0, lam.clone(), Window::degree_zero())))
}

/// Distinct weights of `V(lam)`, sorted.
pub fn weights_of(g: &WeylGroup, lam: &Weight) -> Result<Vec<Weight>, CharError> {
    let ch = weyl_character(g, lam)?;
    let mut v: Vec<Weight> = ch.iter().map(|(_, w, _)| w.clone()).collect();
    v.sort();
    Ok(v)
}

/// Graded character of the local Weyl module on `[0, hi)`, as the limit of
/// `f -> q^{<b, w0 lam>} D_{t_b} f` from `e^{w0 lam}` with `b = -sum alpha^vee`.
pub fn local_weyl(g: &WeylGroup, lam: &Weight, hi: i64) -> Result<GradedCharacter, CharError> {
    let d = g.datum();
    d.check_rank(lam.rank())?;
    if !lam.is_dominant() {
        return Err(RootDataError::NotDominant(lam.clone()).into());
    }
    let window = Window::new(0, hi);
    let w0lam = g.longest().act_weight(lam);
    let beta = d.coroot_sum().neg();
    let word = g.reduced_word(&g.translation(beta.clone()));
    let c = pair(&beta, &w0lam);
    let mut f = GradedCharacter::monomial(0, w0lam, Window::UNBOUNDED);
    let mut prev = f.truncate(window);
    // each pass pushes the error at least one degree up
    for _ in 0..2 * hi + 8 {
        f = demazure_word(g, &word, &f).shift(c, None);
        let cur = f.truncate(window);
        if cur == prev {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(CharError::Unstable(window))
}

/// Graded character of the global Weyl module on `[0, hi)`: the local one
/// times `prod_i prod_{k=1}^{lam_i} (1 - q^k)^{-1}`.
pub fn global_weyl(g: &WeylGroup, lam: &Weight, hi: i64) -> Result<GradedCharacter, CharError> {
    let f = local_weyl(g, lam, hi)?;
    let mut layers: Vec<HashMap<Weight, Coeff>> = vec![HashMap::new(); hi.max(0) as usize];
    for (q, wt, c) in f.iter() {
        *layers[q as usize].entry(wt.clone()).or_insert(0) += c;
    }
    for &m in &lam.0 {
        for k in 1..=m as usize {
            // multiply by 1/(1 - q^k)
            for n in k..layers.len() {
                let below = layers[n - k].clone();
                for (wt, c) in below {
                    *layers[n].entry(wt).or_insert(0) += c;
                }
            }
        }
    }
    let mut out = GradedCharacter::zero(f.window());
    for (n, layer) in layers.into_iter().enumerate() {
        for (wt, c) in layer {
            out.add_term(n as i64, wt, c);
        }
    }
    Ok(out)
}

/// Smallest-height regular dominant element of the coroot lattice.
pub fn regular_dominant_coweight(g: &WeylGroup) -> Coweight {
    let d = g.datum();
    let r = d.rank();
    let rho = d.rho();
    let mut best: Option<(i64, Coweight)> = None;
    let bound = 4;
    let total = (bound as usize).pow(r as u32);
    for idx in 0..total {
        let mut k = idx;
        let mut c = vec![0i64; r];
        for x in c.iter_mut() {
            *x = (k % bound as usize) as i64 + 1;
            k /= bound as usize;
        }
        let beta = Coweight(c);
        if (1..=r).all(|i| d.coweight_on_simple_root(&beta, i) >= 1) {
            let h = pair(&beta, &rho);
            if best.as_ref().is_none_or(|b| (h, &beta) < (b.0, &b.1)) {
                best = Some((h, beta));
            }
        }
    }
    best.map(|b| b.1).unwrap_or_else(|| d.coroot_sum())
}

/// Demazure submodules `W_u(lam)` of the global Weyl module for all finite
/// `u`, graded so that the extremal vector of weight `u lam` sits in degree 0.
///
/// `W_e` is `q^{<d, lam>} D_x` applied to the global module with
/// `x = w0 t_{w0 d}` for a regular dominant `d`; the rest follow from
/// `W_{s_i u} = D_i W_u` when `s_i u > u`.
pub fn finite_demazure_modules(
    g: &WeylGroup,
    lam: &Weight,
    hi: i64,
) -> Result<HashMap<FiniteWeylElement, GradedCharacter>, CharError> {
    let e = g.identity();
    let w_e = demazure_module_direct(g, &e, lam, hi)?;
    let mut out = HashMap::new();
    out.insert(e.clone(), w_e);
    let mut layer = vec![e];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for u in &layer {
            let lu = g.finite_length(u);
            for i in 1..=g.rank() {
                let v = g.simple(i).mul(u);
                if g.finite_length(&v) > lu && !out.contains_key(&v) {
                    let f = demazure_step(g, i, &out[u]);
                    out.insert(v.clone(), f);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// `W_u(lam)` on `[0, hi)` straight from the global module.
pub fn demazure_module_direct(
    g: &WeylGroup,
    u: &FiniteWeylElement,
    lam: &Weight,
    hi: i64,
) -> Result<GradedCharacter, CharError> {
    let d = g.datum();
    let delta = regular_dominant_coweight(g);
    let w0 = g.longest();
    let x = g.affine(u.mul(w0), w0.act_coweight(&delta));
    let word = g.reduced_word(&x);
    let zeros = word.iter().filter(|&&i| i == 0).count() as i64;
    let th = pair(&d.theta().coroot, lam);
    let sh = pair(&delta, lam);
    // D_0 lowers degrees by at most <theta^vee, lam> per letter
    let need = (hi - sh + zeros * th + 1).max(1);
    // the window stays open below: D_0 pushes terms under degree 0 before the shift
    let big = global_weyl(g, lam, need)?.with_window(Window::new(Window::UNBOUNDED.lo, need));
    Ok(demazure_word(g, &word, &big)
        .shift(sh, None)
        .with_window(Window::new(0, hi)))
}

/// Truncated graded character of `W_x(lam)` for an affine `x = u t_b`; this is
/// `q^{-<b, lam>} W_u(lam)`.
pub fn gch_global_weyl(
    g: &WeylGroup,
    x: &AffineWeylElement,
    lam: &Weight,
    window: Window,
) -> Result<GradedCharacter, CharError> {
    let d = g.datum();
    d.check_rank(lam.rank())?;
    if !lam.is_dominant() {
        return Err(RootDataError::NotDominant(lam.clone()).into());
    }
    if window.is_empty() {
        return Err(CharError::BadWindow(window));
    }
    let s = -pair(&x.translation, lam);
    let hi = window.hi - s;
    if hi <= 0 {
        return Ok(GradedCharacter::zero(window));
    }
    let f = demazure_module_direct(g, &x.finite, lam, hi)?;
    Ok(f.shift(s, None).with_window(window))
}

pub fn gch_dual(f: &GradedCharacter) -> GradedCharacter {
    f.dual()
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::rootdata::RootDatum;
    use proptest::prelude::*;

    fn character(rank: usize, window: Window) -> impl Strategy<Value = GradedCharacter> {
        prop::collection::vec((0i64..3, prop::collection::vec(-3i64..4, rank), -3i128..4), 0..6).prop_map(move |ts| {
            let mut f = GradedCharacter::zero(window);
            for (q, w, c) in ts {
                f.add_term(q, Weight(w), c);
            }
            f
        })
    }

    proptest! {
        #[test]
        fn finite_demazure_operators_are_idempotent(f in character(2, Window::new(0, 3)), i in 1usize..3) {
            let g = WeylGroup::new(RootDatum::of_type("A", 2).unwrap());
            let once = demazure_step(&g, i, &f);
            prop_assert_eq!(demazure_step(&g, i, &once), once);
        }

        // D_0 moves degrees both ways, so it is only idempotent without truncation
        #[test]
        fn affine_demazure_operator_is_idempotent(f in character(2, Window::UNBOUNDED)) {
            let g = WeylGroup::new(RootDatum::of_type("A", 2).unwrap());
            let once = demazure_step(&g, 0, &f);
            prop_assert_eq!(demazure_step(&g, 0, &once), once);
        }

        #[test]
        fn products_commute_and_dual_is_involutive(a in character(1, Window::new(0, 4)), b in character(1, Window::new(0, 4))) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.dual().dual(), a.clone());
            prop_assert_eq!(a.add(&b).sub(&b), a);
        }
    }
}
