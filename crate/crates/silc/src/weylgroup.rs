//! Finite and affine Weyl groups.
//!
//! An affine element is a pair `(u, beta)` standing for `u t_beta`, so the
//! product is `(u, b)(v, c) = (uv, v^{-1} b + c)`. The affine simple
//! reflection is `s_0 = s_theta t_{-theta^vee}`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::rootdata::{pair, Coweight, RootDataError, RootDatum, Weight};

/// A finite Weyl group element, stored by its matrices on the weight and
/// coweight lattices (each the inverse transpose of the other).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeylElement {
    r: usize,
    on_weights: Vec<i64>,
    on_coweights: Vec<i64>,
}

impl FiniteWeylElement {
    fn identity(r: usize) -> Self {
        let mut m = vec![0; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        FiniteWeylElement { r, on_weights: m.clone(), on_coweights: m }
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn act_weight(&self, lam: &Weight) -> Weight {
        Weight(matvec(&self.on_weights, self.r, &lam.0))
    }

    pub fn act_coweight(&self, beta: &Coweight) -> Coweight {
        Coweight(matvec(&self.on_coweights, self.r, &beta.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        FiniteWeylElement {
            r: self.r,
            on_weights: matmul(&self.on_weights, &other.on_weights, self.r),
            on_coweights: matmul(&self.on_coweights, &other.on_coweights, self.r),
        }
    }

    pub fn inverse(&self) -> Self {
        FiniteWeylElement {
            r: self.r,
            on_weights: transpose(&self.on_coweights, self.r),
            on_coweights: transpose(&self.on_weights, self.r),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == FiniteWeylElement::identity(self.r)
    }

    /// Matrix on the weight lattice, row-major.
    pub fn weight_matrix(&self) -> &[i64] {
        &self.on_weights
    }
}

fn matvec(m: &[i64], r: usize, v: &[i64]) -> Vec<i64> {
    (0..r).map(|i| (0..r).map(|k| m[i * r + k] * v[k]).sum()).collect()
}

fn matmul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += x * b[k * r + j];
            }
        }
    }
    out
}

fn transpose(a: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for j in 0..r {
            out[j * r + i] = a[i * r + j];
        }
    }
    out
}

/// `u t_beta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    pub finite: FiniteWeylElement,
    pub translation: Coweight,
}

/// Finite and affine Weyl group of a root datum.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    datum: RootDatum,
    gens: Vec<FiniteWeylElement>,
    s_theta: FiniteWeylElement,
    two_rho_vee: Coweight,
    w0: FiniteWeylElement,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Self {
        let r = datum.rank();
        let gens: Vec<FiniteWeylElement> = (1..=r)
            .map(|i| {
                let mut w = FiniteWeylElement::identity(r);
                // column j of the matrix is s_i(basis_j)
                for j in 0..r {
                    let img = datum.reflect_weight(i, &Weight(crate::rootdata::unit(r, j)));
                    for k in 0..r {
                        w.on_weights[k * r + j] = img.0[k];
                    }
                    let img = datum.reflect_coweight(i, &Coweight(crate::rootdata::unit(r, j)));
                    for k in 0..r {
                        w.on_coweights[k * r + j] = img.0[k];
                    }
                }
                w
            })
            .collect();
        let two_rho_vee = datum.coroot_sum();
        let mut g = WeylGroup {
            s_theta: FiniteWeylElement::identity(r),
            w0: FiniteWeylElement::identity(r),
            datum,
            gens,
            two_rho_vee,
        };
        // walk theta down to a simple root alpha_k = x theta; then s_theta = x^{-1} s_k x
        let mut x = g.identity();
        let mut gamma = g.datum.theta().weight.clone();
        let k = loop {
            if let Some(k) = (1..=r).find(|&k| g.datum.simple_root(k) == gamma) {
                break k;
            }
            let i = (1..=r).find(|&i| gamma.0[i - 1] > 0).expect("non-simple positive root");
            gamma = g.datum.reflect_weight(i, &gamma);
            x = g.simple(i).mul(&x);
        };
        g.s_theta = x.inverse().mul(&g.simple(k)).mul(&x);
        let (_, word) = g.datum.to_dominant(&g.datum.rho().neg());
        let mut w0 = g.identity();
        for &i in &word {
            w0 = g.simple(i).mul(&w0);
        }
        g.w0 = w0;
        g
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn identity(&self) -> FiniteWeylElement {
        FiniteWeylElement::identity(self.rank())
    }

    /// Simple reflection `s_i`, `1 <= i <= r`.
    pub fn simple(&self, i: usize) -> FiniteWeylElement {
        self.gens[i - 1].clone()
    }

    /// Reflection in a root given in weight coordinates.
    pub fn reflection(&self, root: &Weight) -> FiniteWeylElement {
        let r = self.rank();
        let mut gamma = root.clone();
        if !self.datum.positive_roots().iter().any(|a| a.weight == gamma) {
            gamma = gamma.neg();
        }
        let mut x = self.identity();
        let k = loop {
            if let Some(k) = (1..=r).find(|&k| self.datum.simple_root(k) == gamma) {
                break k;
            }
            let i = (1..=r).find(|&i| gamma.0[i - 1] > 0).expect("non-simple positive root");
            gamma = self.datum.reflect_weight(i, &gamma);
            x = self.gens[i - 1].mul(&x);
        };
        x.inverse().mul(&self.gens[k - 1]).mul(&x)
    }

    pub fn reflection_theta(&self) -> &FiniteWeylElement {
        &self.s_theta
    }

    pub fn longest(&self) -> &FiniteWeylElement {
        &self.w0
    }

    pub fn from_word(&self, word: &[usize]) -> Result<FiniteWeylElement, RootDataError> {
        let mut w = self.identity();
        for &i in word {
            self.datum.check_index(i)?;
            w = w.mul(&self.gens[i - 1]);
        }
        Ok(w)
    }

    pub fn finite_length(&self, u: &FiniteWeylElement) -> usize {
        let g = u.inverse().act_coweight(&self.two_rho_vee);
        self.datum
            .positive_roots()
            .iter()
            .filter(|a| pair(&g, &a.weight) < 0)
            .count()
    }

    /// Greedy reduced word taking the smallest left descent first.
    pub fn finite_reduced_word(&self, u: &FiniteWeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut x = u.clone();
        let mut l = self.finite_length(&x);
        while l > 0 {
            for i in 1..=self.rank() {
                let y = self.gens[i - 1].mul(&x);
                let ly = self.finite_length(&y);
                if ly < l {
                    word.push(i);
                    x = y;
                    l = ly;
                    break;
                }
            }
        }
        word
    }

    /// All elements of the finite Weyl group ordered by length, then reduced word.
    pub fn elements(&self) -> Vec<FiniteWeylElement> {
        let mut seen: HashSet<FiniteWeylElement> = HashSet::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.mul(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        let mut keyed: Vec<(usize, Vec<usize>, FiniteWeylElement)> = out
            .into_iter()
            .map(|x| (self.finite_length(&x), self.finite_reduced_word(&x), x))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        keyed.into_iter().map(|k| k.2).collect()
    }

    pub fn affine(&self, u: FiniteWeylElement, beta: Coweight) -> AffineWeylElement {
        AffineWeylElement { finite: u, translation: beta }
    }

    pub fn affine_identity(&self) -> AffineWeylElement {
        self.translation(Coweight::zero(self.rank()))
    }

    pub fn translation(&self, beta: Coweight) -> AffineWeylElement {
        AffineWeylElement { finite: self.identity(), translation: beta }
    }

    pub fn from_finite(&self, u: &FiniteWeylElement) -> AffineWeylElement {
        self.affine(u.clone(), Coweight::zero(self.rank()))
    }

    /// Affine simple reflection `s_i`, `0 <= i <= r`.
    pub fn affine_simple(&self, i: usize) -> AffineWeylElement {
        if i == 0 {
            self.affine(self.s_theta.clone(), self.datum.theta().coroot.neg())
        } else {
            self.from_finite(&self.simple(i))
        }
    }

    pub fn compose(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> AffineWeylElement {
        let vi = y.finite.inverse();
        AffineWeylElement {
            finite: x.finite.mul(&y.finite),
            translation: vi.act_coweight(&x.translation).add(&y.translation),
        }
    }

    pub fn inverse(&self, x: &AffineWeylElement) -> AffineWeylElement {
        AffineWeylElement {
            finite: x.finite.inverse(),
            translation: x.finite.act_coweight(&x.translation).neg(),
        }
    }

    /// `s_i x` without a general product.
    pub fn left_simple(&self, i: usize, x: &AffineWeylElement) -> AffineWeylElement {
        if i == 0 {
            let shift = x.finite.inverse().act_coweight(&self.datum.theta().coroot);
            AffineWeylElement {
                finite: self.s_theta.mul(&x.finite),
                translation: x.translation.sub(&shift),
            }
        } else {
            AffineWeylElement {
                finite: self.gens[i - 1].mul(&x.finite),
                translation: x.translation.clone(),
            }
        }
    }

    /// `x s_i`.
    pub fn right_simple(&self, x: &AffineWeylElement, i: usize) -> AffineWeylElement {
        self.compose(x, &self.affine_simple(i))
    }

    /// `sum_{alpha > 0} |<beta, alpha> + [u alpha < 0]|`.
    pub fn length_affine(&self, x: &AffineWeylElement) -> usize {
        let g = x.finite.inverse().act_coweight(&self.two_rho_vee);
        self.datum
            .positive_roots()
            .iter()
            .map(|a| {
                let neg = (pair(&g, &a.weight) < 0) as i64;
                (pair(&x.translation, &a.weight) + neg).unsigned_abs() as usize
            })
            .sum()
    }

    pub fn left_descent(&self, x: &AffineWeylElement) -> Option<usize> {
        let l = self.length_affine(x);
        if l == 0 {
            return None;
        }
        (0..=self.rank()).find(|&i| self.length_affine(&self.left_simple(i, x)) < l)
    }

    /// Greedy reduced word: smallest left descent first, so `x = s_{w_1} s_{w_2} ...`.
    pub fn reduced_word(&self, x: &AffineWeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut y = x.clone();
        while let Some(i) = self.left_descent(&y) {
            word.push(i);
            y = self.left_simple(i, &y);
        }
        word
    }

    pub fn from_affine_word(&self, word: &[usize]) -> Result<AffineWeylElement, RootDataError> {
        let mut x = self.affine_identity();
        for &i in word.iter().rev() {
            if i > self.rank() {
                return Err(RootDataError::IndexOutOfRange { index: i, rank: self.rank() });
            }
            x = self.left_simple(i, &x);
        }
        Ok(x)
    }

    /// Bruhat order by descent recursion: for a left descent `s` of `y`,
    /// `x <= y` iff `min(x, sx) <= sy`.
    pub fn bruhat_le(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> bool {
        let mut x = x.clone();
        let mut y = y.clone();
        let mut lx = self.length_affine(&x);
        let mut ly = self.length_affine(&y);
        loop {
            if lx > ly {
                return false;
            }
            if lx == 0 {
                return true;
            }
            if lx == ly {
                return x == y;
            }
            let i = self.left_descent(&y).expect("positive length has a descent");
            y = self.left_simple(i, &y);
            ly -= 1;
            let sx = self.left_simple(i, &x);
            let lsx = self.length_affine(&sx);
            if lsx < lx {
                x = sx;
                lx = lsx;
            }
        }
    }

    /// Minimal-length element of the coset `x W`.
    pub fn min_coset_rep(&self, x: &AffineWeylElement) -> AffineWeylElement {
        let mut y = x.clone();
        let mut l = self.length_affine(&y);
        'outer: loop {
            for i in 1..=self.rank() {
                let z = self.right_simple(&y, i);
                let lz = self.length_affine(&z);
                if lz < l {
                    y = z;
                    l = lz;
                    continue 'outer;
                }
            }
            return y;
        }
    }

    /// Sort key: finite reduced word, then translation.
    pub fn normal_form(&self, x: &AffineWeylElement) -> (Vec<usize>, Vec<i64>) {
        (self.finite_reduced_word(&x.finite), x.translation.0.clone())
    }

    pub fn display(&self, x: &AffineWeylElement) -> ElementDisplay {
        ElementDisplay { word: self.finite_reduced_word(&x.finite), beta: x.translation.clone() }
    }

    /// Parses `u_word@beta`, e.g. `1,2@0,1`, `e@1`, `w0@1` or `e`.
    pub fn parse_element(&self, s: &str) -> Result<AffineWeylElement, ParseElementError> {
        let s = s.trim();
        let (w, b) = match s.split_once('@') {
            Some((w, b)) => (w.trim(), Some(b.trim())),
            None => (s, None),
        };
        let word = if w == "w0" { self.finite_reduced_word(&self.w0) } else { parse_word(w)? };
        let u = self
            .from_word(&word)
            .map_err(|e| ParseElementError(format!("u_word: {e}")))?;
        let beta = match b {
            None => Coweight::zero(self.rank()),
            Some(b) => {
                let v = parse_ints(b).map_err(|e| ParseElementError(format!("beta: {e}")))?;
                if v.len() != self.rank() {
                    return Err(ParseElementError(format!(
                        "beta: expected {} coordinates, got {}",
                        self.rank(),
                        v.len()
                    )));
                }
                Coweight(v)
            }
        };
        Ok(self.affine(u, beta))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ParseElementError(pub String);

fn parse_word(w: &str) -> Result<Vec<usize>, ParseElementError> {
    if w.is_empty() || w == "e" {
        return Ok(Vec::new());
    }
    w.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| ParseElementError(format!("u_word: bad index {t:?}")))
        })
        .collect()
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?}")))
        .collect()
}

/// Printable `u_word@beta` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementDisplay {
    pub word: Vec<usize>,
    pub beta: Coweight,
}

impl fmt::Display for ElementDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")?;
        } else {
            let w: Vec<String> = self.word.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", w.join(","))?;
        }
        let b: Vec<String> = self.beta.0.iter().map(|i| i.to_string()).collect();
        write!(f, "@{}", b.join(","))
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::rootdata::RootDatum;
    use proptest::prelude::*;

    fn group(r: usize) -> WeylGroup {
        WeylGroup::new(RootDatum::of_type("A", r).unwrap())
    }

    proptest! {
        #[test]
        fn reduced_words_rebuild_the_element(word in prop::collection::vec(0usize..3, 0..8)) {
            let g = group(2);
            let x = g.from_affine_word(&word).unwrap();
            let red = g.reduced_word(&x);
            prop_assert_eq!(red.len(), g.length_affine(&x));
            prop_assert!(red.len() <= word.len());
            prop_assert_eq!(red.len() % 2, word.len() % 2);
            prop_assert_eq!(g.from_affine_word(&red).unwrap(), x);
        }

        #[test]
        fn inverse_and_length(word in prop::collection::vec(0usize..2, 0..10)) {
            let g = group(1);
            let x = g.from_affine_word(&word).unwrap();
            let xi = g.inverse(&x);
            prop_assert!(g.compose(&x, &xi) == g.affine_identity());
            prop_assert_eq!(g.length_affine(&x), g.length_affine(&xi));
        }

        #[test]
        fn composition_is_associative(
            a in prop::collection::vec(0usize..3, 0..5),
            b in prop::collection::vec(0usize..3, 0..5),
            c in prop::collection::vec(0usize..3, 0..5),
        ) {
            let g = group(2);
            let (x, y, z) = (
                g.from_affine_word(&a).unwrap(),
                g.from_affine_word(&b).unwrap(),
                g.from_affine_word(&c).unwrap(),
            );
            prop_assert_eq!(g.compose(&g.compose(&x, &y), &z), g.compose(&x, &g.compose(&y, &z)));
        }

        #[test]
        fn bruhat_below_simple_multiple(word in prop::collection::vec(0usize..3, 1..7), i in 0usize..3) {
            let g = group(2);
            let x = g.from_affine_word(&word).unwrap();
            let y = g.left_simple(i, &x);
            let (lo, hi) = if g.length_affine(&x) < g.length_affine(&y) { (x, y) } else { (y, x) };
            prop_assert!(g.bruhat_le(&lo, &hi));
            prop_assert!(!g.bruhat_le(&hi, &lo));
        }
    }
}
