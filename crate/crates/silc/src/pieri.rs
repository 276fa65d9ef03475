//! Pieri-Chevalley coefficients and section characters of semi-infinite
//! Richardson varieties.
//!
//! The coefficients `a^u_w(lam)` are defined by
//! `Gamma_w(lam + mu) = sum_u a^u_w(lam) Gamma_u(mu)` for every strictly
//! dominant `mu`, where `Gamma_x(nu)` is the dual of the graded character of
//! `W_{x w0}(nu)`. They live in `Z[q^-1][P]`. Tables report them as
//! polynomials in `q` with nonnegative exponents by substituting `q -> q^-1`
//! and dividing by the q-degree of `a^w_w(lam)`, so that `a^w_w(lam)` is
//! exactly `e^{-w w0 lam}` in degree 0. Sums over `u` then give the section
//! characters of Richardson varieties in the same convention.
//!
//! The solver sets up the identity for several `mu` as a linear system in the
//! unknown coefficients of every `u <= w` that can reach the truncation
//! window, row-reduces it in the semi-infinite length order, reads off the
//! coefficients the system determines, and checks the result against one
//! more `mu` that was not used to solve.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::charring::{finite_demazure_modules, weights_of, CharError, Coeff, GradedCharacter, Window};
use crate::linsolve::EchelonSystem;
use crate::rootdata::{pair, Coweight, RootDataError, Weight};
use crate::semiinf::{si_le, si_length, sort_elements, SemiInfError};
use crate::weylgroup::{AffineWeylElement, FiniteWeylElement, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PieriError {
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    SemiInf(#[from] SemiInfError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("window must satisfy 0 <= lo < hi, got {0}")]
    BadWindow(Window),
    #[error("window exhausted at u = {element}: q^{degree} not determined")]
    WindowExhausted { element: String, degree: i64 },
    #[error("identity fails for mu = {mu} at q^{degree} e^{weight}")]
    Inconsistent { mu: Weight, degree: i64, weight: Weight },
    #[error("{0} is not below the base element")]
    NotBelow(String),
}

/// Demazure module characters `W_x(nu)` for finite `x`, memoized by `nu`.
#[derive(Debug, Default)]
pub struct DemazureCache {
    map: HashMap<Weight, (i64, HashMap<FiniteWeylElement, GradedCharacter>)>,
}

impl DemazureCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `W_x(nu)` on `[0, hi)`.
    pub fn get(
        &mut self,
        g: &WeylGroup,
        nu: &Weight,
        x: &FiniteWeylElement,
        hi: i64,
    ) -> Result<GradedCharacter, CharError> {
        let fresh = match self.map.get(nu) {
            Some((h, _)) => *h < hi,
            None => true,
        };
        if fresh {
            let all = finite_demazure_modules(g, nu, hi)?;
            self.map.insert(nu.clone(), (hi, all));
        }
        Ok(self.map[nu].1[x].truncate(Window::new(0, hi)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieriTable {
    pub base: AffineWeylElement,
    pub weight: Weight,
    pub window: Window,
    pub depth: i64,
    /// nonzero coefficients, ordered by semi-infinite length then normal form
    pub coeffs: Vec<(AffineWeylElement, GradedCharacter)>,
    pub solve_mus: Vec<Weight>,
    pub verify_mu: Weight,
    /// equations of the verification weight that were checked
    pub verified_equations: usize,
}

impl PieriTable {
    pub fn get(&self, u: &AffineWeylElement) -> Option<&GradedCharacter> {
        self.coeffs.iter().find(|(x, _)| x == u).map(|(_, c)| c)
    }
}

/// `<w0 (b_w - b_u), nu>`: how far the leading term of `Gamma_u` sits above
/// that of `Gamma_w`, in the reported grading.
fn reach(g: &WeylGroup, w: &AffineWeylElement, u: &AffineWeylElement, nu: &Weight) -> i64 {
    let diff = w.translation.sub(&u.translation);
    pair(&g.longest().act_coweight(&diff), nu)
}

// Elements u <= w whose translation lies within `radius` of that of w, with
// si-length between that of w and `max_len`.
fn below(
    g: &WeylGroup,
    w: &AffineWeylElement,
    radius: i64,
    keep: &dyn Fn(&AffineWeylElement) -> bool,
) -> Result<(Vec<AffineWeylElement>, bool), PieriError> {
    let r = g.rank();
    let fin = g.elements();
    let lw = si_length(g, w);
    let side = (2 * radius + 1) as usize;
    let mut out = Vec::new();
    let mut touches = false;
    for idx in 0..side.pow(r as u32) {
        let mut k = idx;
        let mut beta = w.translation.clone();
        let mut edge = false;
        for c in beta.0.iter_mut() {
            let off = (k % side) as i64 - radius;
            edge |= off.abs() == radius;
            *c += off;
            k /= side;
        }
        for u in &fin {
            let x = g.affine(u.clone(), beta.clone());
            if si_length(g, &x) < lw || !keep(&x) {
                continue;
            }
            if si_le(g, &x, w)? {
                touches |= edge;
                out.push(x);
            }
        }
    }
    sort_elements(g, &mut out);
    Ok((out, touches))
}

fn enumerate_below(
    g: &WeylGroup,
    w: &AffineWeylElement,
    start_radius: i64,
    keep: &dyn Fn(&AffineWeylElement) -> bool,
) -> Result<Vec<AffineWeylElement>, PieriError> {
    let mut radius = start_radius.max(1);
    loop {
        let (xs, touches) = below(g, w, radius, keep)?;
        if !touches {
            return Ok(xs);
        }
        radius += 2;
    }
}

// Unknown coefficients: for candidate `ui`, the coefficient of `q^k e^kappa`
// has column `start[ui] + k * kappas.len() + j` for `kappa = kappas[j]`.
// Candidates are numbered far to near, so the columns of the reported
// coefficients come last and elimination leaves them in a closed block.
struct Unknowns {
    start: Vec<usize>,
    degrees: Vec<i64>,
    kappas: Vec<Weight>,
    // first column belonging to a candidate within the depth bound
    first_target: usize,
}

impl Unknowns {
    fn new(
        g: &WeylGroup,
        w: &AffineWeylElement,
        lam: &Weight,
        cands: &[AffineWeylElement],
        kappas: Vec<Weight>,
        in_depth: &dyn Fn(&AffineWeylElement) -> bool,
    ) -> Self {
        let mut start = vec![0; cands.len()];
        let mut degrees = vec![0; cands.len()];
        let mut next = 0;
        let mut first_target = None;
        for (ui, u) in cands.iter().enumerate().rev() {
            if in_depth(u) && first_target.is_none() {
                first_target = Some(next);
            }
            let top = reach(g, w, u, lam);
            start[ui] = next;
            degrees[ui] = top + 1;
            next += (top + 1) as usize * kappas.len();
        }
        Unknowns { start, degrees, kappas, first_target: first_target.unwrap_or(next) }
    }

    fn column(&self, ui: usize, k: i64, j: usize) -> usize {
        self.start[ui] + k as usize * self.kappas.len() + j
    }
}

pub fn compute_pieri(
    g: &WeylGroup,
    w: &AffineWeylElement,
    lam: &Weight,
    window: Window,
    depth: i64,
) -> Result<PieriTable, PieriError> {
    compute_pieri_cached(g, &mut DemazureCache::new(), w, lam, window, depth)
}

pub fn compute_pieri_cached(
    g: &WeylGroup,
    cache: &mut DemazureCache,
    w: &AffineWeylElement,
    lam: &Weight,
    window: Window,
    depth: i64,
) -> Result<PieriTable, PieriError> {
    let d = g.datum();
    d.check_rank(lam.rank())?;
    d.check_rank(w.translation.rank())?;
    if !lam.is_dominant() {
        return Err(RootDataError::NotDominant(lam.clone()).into());
    }
    if window.lo < 0 || window.is_empty() {
        return Err(PieriError::BadWindow(window));
    }
    let lw = si_length(g, w);
    let kappas: Vec<Weight> = weights_of(g, lam)?.into_iter().map(|x| x.neg()).collect();
    let in_depth = |x: &AffineWeylElement| si_length(g, x) - lw <= depth;
    let targets = enumerate_below(g, w, depth + g.finite_length(g.longest()) as i64 + 1, &in_depth)?;

    let mut probes = probe_weights(g);
    let mut mus: Vec<Weight> = probes.by_ref().take(g.rank() + 1).collect();
    let mut extra = 0;
    loop {
        let far = targets.iter().map(|u| reach(g, w, u, &mus[0])).max().unwrap_or(0);
        let k_top = window.hi + far + extra;
        let cands = enumerate_below(g, w, k_top + 2, &|x| {
            reach(g, w, x, lam) >= 0 && mus.iter().any(|m| reach(g, w, x, m) <= k_top)
        })?;
        let unknowns = Unknowns::new(g, w, lam, &cands, kappas.clone(), &in_depth);

        let mut sys = EchelonSystem::new();
        let mut all_rows = Vec::new();
        for mu in &mus {
            for ((n, wt), (row, rhs)) in equations(g, cache, w, lam, mu, &cands, &unknowns, k_top)? {
                if sys.push(&row, rhs).is_err() {
                    return Err(PieriError::Inconsistent { mu: mu.clone(), degree: n, weight: wt });
                }
                all_rows.push((mu.clone(), n, wt, row, rhs));
            }
        }
        let sol = sys.solve_from(unknowns.first_target);

        let mut coeffs = Vec::new();
        let mut missing = None;
        'collect: for (ui, u) in cands.iter().enumerate() {
            if !in_depth(u) {
                continue;
            }
            let mut f = GradedCharacter::zero(window);
            for k in window.lo..window.hi.min(unknowns.degrees[ui]) {
                for (j, kappa) in kappas.iter().enumerate() {
                    match sol.determined(unknowns.column(ui, k, j)) {
                        Some(v) => f.add_term(k, kappa.clone(), v),
                        None => {
                            missing = Some((u.clone(), k));
                            break 'collect;
                        }
                    }
                }
            }
            if !f.is_empty() {
                coeffs.push((u.clone(), f));
            }
        }
        if let Some((u, k)) = missing {
            if extra < 2 * MAX_ROUNDS {
                extra += 2;
                mus.extend(probes.by_ref().take(g.rank()));
                continue;
            }
            return Err(PieriError::WindowExhausted { element: g.display(&u).to_string(), degree: k });
        }

        // The solving equations are rechecked over the integers, then a
        // weight not used for solving must satisfy the identity too.
        let verify_mu = probes.next().expect("infinite sequence");
        for ((n, wt), (row, rhs)) in equations(g, cache, w, lam, &verify_mu, &cands, &unknowns, k_top)? {
            all_rows.push((verify_mu.clone(), n, wt, row, rhs));
        }
        let mut verified_equations = 0;
        for (mu, n, wt, row, rhs) in all_rows {
            let mut total: Coeff = 0;
            let mut known = true;
            for (c, v) in &row {
                match sol.determined(*c) {
                    Some(x) => total += x * v,
                    None => {
                        known = false;
                        break;
                    }
                }
            }
            if !known {
                continue;
            }
            if total != rhs {
                return Err(PieriError::Inconsistent { mu, degree: n, weight: wt });
            }
            if mu == verify_mu {
                verified_equations += 1;
            }
        }

        return Ok(PieriTable {
            base: w.clone(),
            weight: lam.clone(),
            window,
            depth,
            coeffs,
            solve_mus: mus,
            verify_mu,
            verified_equations,
        });
    }
}

// Strictly dominant weights rho, rho + w_1, ..., rho + w_r, 2 rho + w_1, ...
// Multiples of rho alone cannot separate translations with the same height.
fn probe_weights(g: &WeylGroup) -> impl Iterator<Item = Weight> {
    let d = g.datum();
    let rho = d.rho();
    let fund: Vec<Weight> = (1..=d.rank()).map(|i| d.fundamental_weight(i)).collect();
    std::iter::once(rho.clone()).chain((1..).flat_map(move |c: i64| {
        let base = rho.scale(c);
        fund.clone().into_iter().map(move |f| base.add(&f))
    }))
}

// extra solving weights tried before giving up on a window
const MAX_ROUNDS: i64 = 6;

type Rows = BTreeMap<(i64, Weight), (BTreeMap<usize, Coeff>, Coeff)>;

// Coefficients of q^n e^nu, 0 <= n <= k_top, in the identity for one mu,
// after multiplying through so that Gamma_w(lam + mu) starts in degree 0.
#[allow(clippy::too_many_arguments)]
fn equations(
    g: &WeylGroup,
    cache: &mut DemazureCache,
    w: &AffineWeylElement,
    lam: &Weight,
    mu: &Weight,
    cands: &[AffineWeylElement],
    unknowns: &Unknowns,
    k_top: i64,
) -> Result<Rows, PieriError> {
    let w0 = g.longest().clone();
    let hi = k_top + 1;
    let lhs = cache.get(g, &lam.add(mu), &w.finite.mul(&w0), hi)?.negate_weights();
    let mut rows: Rows = BTreeMap::new();
    for (n, wt, c) in lhs.iter() {
        rows.entry((n, wt.clone())).or_default().1 = c;
    }
    let mut gammas: HashMap<FiniteWeylElement, Vec<(i64, Weight, Coeff)>> = HashMap::new();
    for (ui, u) in cands.iter().enumerate() {
        let off = reach(g, w, u, mu);
        if off > k_top {
            continue;
        }
        if !gammas.contains_key(&u.finite) {
            let f = cache.get(g, mu, &u.finite.mul(&w0), hi)?.negate_weights();
            let v = f.iter().map(|(q, wt, c)| (q, wt.clone(), c)).collect();
            gammas.insert(u.finite.clone(), v);
        }
        let terms = &gammas[&u.finite];
        for k in 0..unknowns.degrees[ui].min(k_top - off + 1) {
            for (j, kappa) in unknowns.kappas.iter().enumerate() {
                let col = unknowns.column(ui, k, j);
                for (m, omega, c) in terms {
                    let n = off + k + m;
                    if n > k_top {
                        continue;
                    }
                    let e = rows.entry((n, kappa.add(omega))).or_default();
                    *e.0.entry(col).or_insert(0) += c;
                }
            }
        }
    }
    Ok(rows)
}

/// Section character of `Q(w)` twisted by `lam` in the table convention:
/// `e^{-w0 ...}`-negated weights of `W_{u w0}(lam)` for `w = u t_b`.
pub fn section_character(
    g: &WeylGroup,
    w: &AffineWeylElement,
    lam: &Weight,
    window: Window,
) -> Result<GradedCharacter, PieriError> {
    if window.lo < 0 || window.is_empty() {
        return Err(PieriError::BadWindow(window));
    }
    let x = w.finite.mul(g.longest());
    let all = finite_demazure_modules(g, lam, window.hi)?;
    Ok(all[&x].negate_weights().truncate(window))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmtResult {
    pub character: GradedCharacter,
    /// `v` lies deeper than `depth` below `w`, so part of the interval was not explored
    pub depth_clipped: bool,
    /// the top degree of the window carries terms, so the character may continue beyond it
    pub window_clipped: bool,
    pub interval: Vec<AffineWeylElement>,
}

/// `sum_{v <= u <= w} a^u_w(lam)`: the section character of the Richardson
/// variety for `(v, w)`.
pub fn smt_character(
    g: &WeylGroup,
    v: &AffineWeylElement,
    w: &AffineWeylElement,
    lam: &Weight,
    window: Window,
    depth: i64,
) -> Result<SmtResult, PieriError> {
    smt_character_cached(g, &mut DemazureCache::new(), v, w, lam, window, depth)
}

pub fn smt_character_cached(
    g: &WeylGroup,
    cache: &mut DemazureCache,
    v: &AffineWeylElement,
    w: &AffineWeylElement,
    lam: &Weight,
    window: Window,
    depth: i64,
) -> Result<SmtResult, PieriError> {
    if !si_le(g, v, w)? {
        return Err(PieriError::NotBelow(g.display(v).to_string()));
    }
    let table = compute_pieri_cached(g, cache, w, lam, window, depth)?;
    smt_from_table(g, &table, v)
}

/// Sums a precomputed table over the interval above `v`.
pub fn smt_from_table(g: &WeylGroup, table: &PieriTable, v: &AffineWeylElement) -> Result<SmtResult, PieriError> {
    let mut character = GradedCharacter::zero(table.window);
    let mut interval = Vec::new();
    for (u, c) in &table.coeffs {
        if si_le(g, v, u)? {
            character = character.add(c);
            interval.push(u.clone());
        }
    }
    let depth_clipped = si_length(g, v) - si_length(g, &table.base) > table.depth;
    let window_clipped = character.max_degree() == Some(table.window.hi - 1);
    Ok(SmtResult { character, depth_clipped, window_clipped, interval })
}

pub fn h0_dimension(
    g: &WeylGroup,
    v: &AffineWeylElement,
    w: &AffineWeylElement,
    lam: &Weight,
    window: Window,
    depth: i64,
) -> Result<(Coeff, SmtResult), PieriError> {
    let s = smt_character(g, v, w, lam, window, depth)?;
    Ok((s.character.total(), s))
}

/// Translation part helper for callers building `w0 t_beta`.
pub fn longest_times_translation(g: &WeylGroup, beta: Coweight) -> AffineWeylElement {
    g.affine(g.longest().clone(), beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn group(k: &str, r: usize) -> WeylGroup {
        WeylGroup::new(RootDatum::of_type(k, r).unwrap())
    }

    #[test]
    fn a1_fundamental_from_identity() {
        let g = group("A", 1);
        let e = g.affine_identity();
        let t = compute_pieri(&g, &e, &Weight(vec![1]), Window::new(0, 3), 4).unwrap();
        assert_eq!(t.get(&e).unwrap(), &GradedCharacter::monomial(0, Weight(vec![1]), Window::new(0, 3)));
        let t1 = g.translation(Coweight(vec![1]));
        assert_eq!(t.get(&t1).unwrap(), &GradedCharacter::monomial(1, Weight(vec![1]), Window::new(0, 3)));
        let s = g.affine_simple(1);
        assert_eq!(t.get(&s).unwrap(), &GradedCharacter::monomial(0, Weight(vec![-1]), Window::new(0, 3)));
        assert!(t.verified_equations > 0);
    }

    #[test]
    fn zero_weight_is_trivial() {
        let g = group("A", 1);
        let e = g.affine_identity();
        let t = compute_pieri(&g, &e, &Weight(vec![0]), Window::new(0, 3), 3).unwrap();
        assert_eq!(t.coeffs.len(), 1);
        assert_eq!(t.coeffs[0].1.total(), 1);
    }

    #[test]
    fn a1_second_power() {
        let g = group("A", 1);
        let e = g.affine_identity();
        let win = Window::new(0, 4);
        let t = compute_pieri(&g, &e, &Weight(vec![2]), win, 3).unwrap();
        let mut at_s = GradedCharacter::zero(win);
        at_s.add_term(0, Weight(vec![-2]), 1);
        at_s.add_term(0, Weight(vec![0]), 1);
        assert_eq!(t.get(&g.affine_simple(1)).unwrap(), &at_s);
        let mut at_t = GradedCharacter::zero(win);
        at_t.add_term(1, Weight(vec![0]), 1);
        at_t.add_term(1, Weight(vec![2]), 1);
        at_t.add_term(2, Weight(vec![2]), 1);
        assert_eq!(t.get(&g.translation(Coweight(vec![1]))).unwrap(), &at_t);
    }

    #[test]
    fn a2_leading_coefficient_and_support() {
        let g = group("A", 2);
        let d = g.datum().clone();
        let mut cache = DemazureCache::new();
        for u in g.elements() {
            let w = g.affine(u.clone(), Coweight(vec![1, 0]));
            for lam in [d.fundamental_weight(1), d.rho()] {
                let t = compute_pieri_cached(&g, &mut cache, &w, &lam, Window::new(0, 1), 1).unwrap();
                let lead = u.mul(g.longest()).act_weight(&lam).neg();
                assert_eq!(t.get(&w).unwrap(), &GradedCharacter::monomial(0, lead, Window::new(0, 1)));
                for (x, _) in &t.coeffs {
                    assert!(si_le(&g, x, &w).unwrap());
                }
            }
        }
    }

    #[test]
    fn sl2_sections_of_projective_space() {
        let g = group("A", 1);
        let e = g.affine_identity();
        for (d, m, dim) in [(1, 1, 4), (2, 1, 6), (1, 2, 10)] {
            let v = longest_times_translation(&g, Coweight(vec![d]));
            let (h, s) = h0_dimension(&g, &v, &e, &Weight(vec![m]), Window::new(0, m * d + 2), 2 * d + 1).unwrap();
            assert_eq!(h, dim, "d={d} m={m}");
            assert!(!s.window_clipped);
        }
    }
}
