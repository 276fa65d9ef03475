//! A second affine Weyl group, written from scratch as affine maps on the
//! coweight lattice, with lengths from the inversion count and Bruhat order
//! from subwords of a reduced word.

use std::collections::{HashMap, HashSet, VecDeque};

type Mat = Vec<Vec<i64>>;

fn identity(r: usize) -> Mat {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let r = a.len();
    (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn apply(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// `lambda -> u(lambda) + b` on coweights, i.e. `u t_beta` with `b = u beta`.
/// `on_roots` is the same `u` acting on root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elt {
    pub on_coweights: Mat,
    pub on_roots: Mat,
    pub b: Vec<i64>,
}

pub struct Affine {
    pub cartan: Mat,
    pub rank: usize,
    /// positive roots (root coordinates) paired with their coroots (coroot coordinates)
    pub positive: Vec<(Vec<i64>, Vec<i64>)>,
    gens: Vec<Elt>,
}

impl Affine {
    pub fn new(cartan: Mat) -> Self {
        let r = cartan.len();
        let a = cartan.clone();
        let unit = |i: usize| (0..r).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
        // <alpha_i^vee, alpha> for alpha in root coordinates
        let on_root = |i: usize, al: &[i64]| -> Vec<i64> {
            let p: i64 = (0..r).map(|j| a[i][j] * al[j]).sum();
            let mut out = al.to_vec();
            out[i] -= p;
            out
        };
        // <lambda, alpha_i> for lambda in coroot coordinates
        let on_coroot = |i: usize, l: &[i64]| -> Vec<i64> {
            let p: i64 = (0..r).map(|j| l[j] * a[j][i]).sum();
            let mut out = l.to_vec();
            out[i] -= p;
            out
        };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = (0..r).map(|i| (unit(i), unit(i))).collect();
        let mut positive = Vec::new();
        while let Some((al, co)) = queue.pop_front() {
            if !seen.insert(al.clone()) {
                continue;
            }
            if al.iter().all(|&c| c >= 0) {
                positive.push((al.clone(), co.clone()));
            }
            for i in 0..r {
                queue.push_back((on_root(i, &al), on_coroot(i, &co)));
            }
        }
        positive.sort();
        let column_matrix = |f: &dyn Fn(&[i64]) -> Vec<i64>| -> Mat {
            let cols: Vec<Vec<i64>> = (0..r).map(|j| f(&unit(j))).collect();
            (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect()
        };
        let mut gens = Vec::new();
        // s_0 = s_theta t_{-theta^vee}
        let (theta, theta_vee) = positive.iter().max_by_key(|(al, _)| al.iter().sum::<i64>()).cloned().expect("roots");
        let refl_root = |al: &[i64], co: &[i64], x: &[i64]| -> Vec<i64> {
            // s_alpha(x) = x - <alpha^vee, x> alpha on roots
            let p: i64 = (0..r).map(|i| (0..r).map(|j| co[i] * a[i][j] * x[j]).sum::<i64>()).sum();
            x.iter().zip(al).map(|(v, c)| v - p * c).collect()
        };
        let refl_coweight = |al: &[i64], co: &[i64], x: &[i64]| -> Vec<i64> {
            let p: i64 = (0..r).map(|i| (0..r).map(|j| x[i] * a[i][j] * al[j]).sum::<i64>()).sum();
            x.iter().zip(co).map(|(v, c)| v - p * c).collect()
        };
        let mc = column_matrix(&|x| refl_coweight(&theta, &theta_vee, x));
        let mr = column_matrix(&|x| refl_root(&theta, &theta_vee, x));
        let b = apply(&mc, &theta_vee.iter().map(|c| -c).collect::<Vec<_>>());
        gens.push(Elt { on_coweights: mc, on_roots: mr, b });
        for i in 0..r {
            gens.push(Elt {
                on_coweights: column_matrix(&|x| on_coroot(i, x)),
                on_roots: column_matrix(&|x| on_root(i, x)),
                b: vec![0; r],
            });
        }
        Affine { cartan, rank: r, positive, gens }
    }

    pub fn one(&self) -> Elt {
        Elt { on_coweights: identity(self.rank), on_roots: identity(self.rank), b: vec![0; self.rank] }
    }

    pub fn gen(&self, i: usize) -> &Elt {
        &self.gens[i]
    }

    pub fn mul(&self, x: &Elt, y: &Elt) -> Elt {
        let b: Vec<i64> = apply(&x.on_coweights, &y.b).iter().zip(&x.b).map(|(p, q)| p + q).collect();
        Elt { on_coweights: mat_mul(&x.on_coweights, &y.on_coweights), on_roots: mat_mul(&x.on_roots, &y.on_roots), b }
    }

    pub fn word(&self, w: &[usize]) -> Elt {
        w.iter().fold(self.one(), |acc, &i| self.mul(&acc, self.gen(i)))
    }

    pub fn translate(&self, x: &Elt, gamma: &[i64]) -> Elt {
        let t = Elt { on_coweights: identity(self.rank), on_roots: identity(self.rank), b: gamma.to_vec() };
        self.mul(x, &t)
    }

    /// `<lambda, alpha>` for a coweight and a root.
    fn pair(&self, l: &[i64], al: &[i64]) -> i64 {
        (0..self.rank).map(|i| (0..self.rank).map(|j| l[i] * self.cartan[i][j] * al[j]).sum::<i64>()).sum()
    }

    /// Inversion count: `sum_{alpha > 0} |<beta, alpha> + [u alpha < 0]|`,
    /// using `<beta, alpha> = <u beta, u alpha>`.
    pub fn length(&self, x: &Elt) -> i64 {
        self.positive
            .iter()
            .map(|(al, _)| {
                let ua = apply(&x.on_roots, al);
                let neg = i64::from(ua.iter().all(|&c| c <= 0));
                (self.pair(&x.b, &ua) + neg).abs()
            })
            .sum()
    }

    /// Reduced word `i_1 ... i_k` with `x = s_{i_1} ... s_{i_k}`.
    pub fn reduced_word(&self, x: &Elt) -> Vec<usize> {
        let mut x = x.clone();
        let mut l = self.length(&x);
        let mut out = Vec::new();
        while l > 0 {
            let (i, y) = (0..=self.rank)
                .map(|i| (i, self.mul(self.gen(i), &x)))
                .find(|(_, y)| self.length(y) < l)
                .expect("nontrivial element has a left descent");
            out.push(i);
            x = y;
            l -= 1;
        }
        out
    }

    /// `x <= y`, reading a reduced word of `y` from the left and keeping the
    /// letters that shorten what is left of `x`; those letters form a subword
    /// with product `x` exactly when `x <= y`.
    pub fn bruhat_le_word(&self, x: &Elt, y_word: &[usize]) -> bool {
        let mut cur = x.clone();
        let mut l = self.length(&cur);
        let mut kept = Vec::new();
        for &i in y_word {
            let s = self.mul(self.gen(i), &cur);
            let ls = self.length(&s);
            if ls < l {
                cur = s;
                l = ls;
                kept.push(i);
            }
        }
        let ok = l == 0;
        if ok {
            debug_assert_eq!(&self.word(&kept), x);
        }
        ok
    }

    /// Exact lengths of everything within `radius` of the identity.
    pub fn ball(&self, radius: usize) -> HashMap<Elt, i64> {
        let mut dist = HashMap::new();
        dist.insert(self.one(), 0);
        let mut layer = vec![self.one()];
        for d in 1..=radius {
            let mut next = Vec::new();
            for x in &layer {
                for i in 0..=self.rank {
                    let y = self.mul(x, self.gen(i));
                    if !dist.contains_key(&y) {
                        dist.insert(y.clone(), d as i64);
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        dist
    }
}
