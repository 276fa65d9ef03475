#![allow(dead_code)]

pub mod affine;
pub mod dp;

use std::collections::HashMap;

pub fn binomial(n: i64, k: i64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Character of `Sym^m` of the span of `vars`, each a `(q-degree, weight)`.
pub fn symmetric_power(vars: &[(i64, Vec<i64>)], m: usize) -> HashMap<(i64, Vec<i64>), i128> {
    let mut out = HashMap::new();
    let rank = vars.first().map_or(0, |v| v.1.len());
    // nondecreasing index sequences enumerate multisets
    fn rec(
        vars: &[(i64, Vec<i64>)],
        start: usize,
        left: usize,
        q: i64,
        wt: Vec<i64>,
        out: &mut HashMap<(i64, Vec<i64>), i128>,
    ) {
        if left == 0 {
            *out.entry((q, wt)).or_insert(0) += 1;
            return;
        }
        for i in start..vars.len() {
            let w: Vec<i64> = wt.iter().zip(&vars[i].1).map(|(a, b)| a + b).collect();
            rec(vars, i, left - 1, q + vars[i].0, w, out);
        }
    }
    rec(vars, 0, m, 0, vec![0; rank], &mut out);
    out
}

/// Dimension of `V(lam)` from the product over positive coroots of
/// `<lam + rho, a^vee> / <rho, a^vee>`, with coroots built by reflecting
/// simple coroots.
pub fn weyl_dimension(cartan: &[Vec<i64>], lam: &[i64]) -> i128 {
    let a = affine::Affine::new(cartan.to_vec());
    let (mut num, mut den) = (1i128, 1i128);
    for (_, co) in &a.positive {
        // <lam, a^vee> = sum_i c_i <lam, alpha_i^vee> = sum_i c_i lam_i
        let p: i64 = co.iter().zip(lam).map(|(c, l)| c * (l + 1)).sum();
        let r: i64 = co.iter().sum();
        num *= p as i128;
        den *= r as i128;
    }
    assert_eq!(num % den, 0);
    num / den
}
