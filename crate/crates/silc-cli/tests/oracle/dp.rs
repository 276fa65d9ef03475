//! Random Drinfeld-Plücker data with planted defects, and integer polynomial
//! arithmetic for checking the incidence relation independently.

use rand::Rng;
use silc::quasimap::{DPComponent, DPData};
use silc::ratpoly::RatPoly;

pub type Poly = Vec<i64>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    trim(p.clone()).len().checked_sub(1)
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

pub fn neg(a: &Poly) -> Poly {
    a.iter().map(|x| -x).collect()
}

/// `a23 b1 - a13 b2 + a12 b3` for `u1 = (b1, b2, b3)` and `u2 = (a12, a13, a23)`.
pub fn contraction(u1: &[Poly], u2: &[Poly]) -> Poly {
    add(&add(&mul(&u2[2], &u1[0]), &neg(&mul(&u2[1], &u1[1]))), &mul(&u2[0], &u1[2]))
}

/// `(x1 y2 - x2 y1, x1 y3 - x3 y1, x2 y3 - x3 y2)`.
pub fn wedge(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let m = |i: usize, j: usize| add(&mul(&x[i], &y[j]), &neg(&mul(&x[j], &y[i])));
    vec![m(0, 1), m(0, 2), m(1, 2)]
}

fn random_poly(rng: &mut impl Rng, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    trim((0..=d).map(|_| rng.gen_range(-3..=3)).collect())
}

/// Product of `(z - a)^k` over distinct integer roots, with the planted
/// multiplicities.
fn random_defect(rng: &mut impl Rng, roots: &mut Vec<i64>) -> (Poly, usize) {
    let mut p = vec![1];
    let mut total = 0;
    for _ in 0..rng.gen_range(0..=2) {
        let a = loop {
            let a = rng.gen_range(-4..=4);
            if !roots.contains(&a) {
                break a;
            }
        };
        roots.push(a);
        let k = rng.gen_range(1..=2);
        for _ in 0..k {
            p = mul(&p, &vec![-a, 1]);
        }
        total += k;
    }
    (p, total)
}

pub struct Planted {
    pub data: DPData,
    /// saturated degree of each component
    pub saturated: Vec<i64>,
    /// planted defect size at finite points and at infinity, per component
    pub finite: Vec<i64>,
    pub infinity: Vec<i64>,
}

pub fn to_data(rank: usize, comps: &[Vec<Poly>], degrees: Vec<i64>) -> DPData {
    DPData {
        rank,
        components: comps
            .iter()
            .enumerate()
            .map(|(i, c)| DPComponent { weight: i + 1, polys: c.iter().map(|p| RatPoly::from_ints(p)).collect() })
            .collect(),
        degrees,
    }
}

/// A map through the big cell (one coordinate of each component is 1 after
/// a coordinate permutation, so the saturated part has no common zero),
/// multiplied by planted defects. `defects = false` plants none.
pub fn random_planted(rng: &mut impl Rng, rank: usize, defects: bool) -> Planted {
    let n = rank + 1;
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    // v1 = (1, a, b), v2 = (0, 1, c) up to permutation: v1 ^ v2 has a unit coordinate
    let mut v1 = vec![vec![1]];
    let mut v2 = vec![vec![]];
    for k in 1..n {
        v1.push(random_poly(rng, 2));
        v2.push(if k == 1 { vec![1] } else { random_poly(rng, 2) });
    }
    let v1: Vec<Poly> = perm.iter().map(|&i| v1[i].clone()).collect();
    let v2: Vec<Poly> = perm.iter().map(|&i| v2[i].clone()).collect();
    let mut sat = vec![v1.clone()];
    if rank == 2 {
        sat.push(wedge(&v1, &v2));
    }
    let mut roots = Vec::new();
    let mut comps = Vec::new();
    let (mut saturated, mut finite, mut infinity, mut degrees) = (vec![], vec![], vec![], vec![]);
    for c in &sat {
        let (p, k) = if defects { random_defect(rng, &mut roots) } else { (vec![1], 0) };
        let s = c.iter().filter_map(degree).max().unwrap_or(0) as i64;
        let inf = if defects { rng.gen_range(0..=1) } else { 0 };
        comps.push(c.iter().map(|x| mul(x, &p)).collect::<Vec<_>>());
        saturated.push(s);
        finite.push(k as i64);
        infinity.push(inf);
        degrees.push(s + k as i64 + inf);
    }
    Planted { data: to_data(rank, &comps, degrees), saturated, finite, infinity }
}
