//! Sparse Gaussian elimination over a large prime field that reports which
//! unknowns a linear system pins down.
//!
//! Callers whose true solutions are small integers recover them by the
//! symmetric lift and must check them against the integer equations; a wrong
//! lift shows up there as an inconsistency rather than a silent answer.

use std::collections::{BTreeMap, HashMap};

/// 2^61 - 1
pub const PRIME: u64 = (1 << 61) - 1;

fn reduce(x: i128) -> u64 {
    x.rem_euclid(PRIME as i128) as u64
}

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

fn inv(a: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

/// Representative in `(-p/2, p/2]`.
pub fn lift(x: u64) -> i128 {
    if x > PRIME / 2 {
        x as i128 - PRIME as i128
    } else {
        x as i128
    }
}

type Row = Vec<(usize, u64)>;

/// Row echelon form, built one equation at a time.
#[derive(Debug, Default)]
pub struct EchelonSystem {
    // each row is sorted, with leading entry 1 in its pivot column
    rows: Vec<(Row, u64)>,
    pivot_of: HashMap<usize, usize>,
}

/// A row whose left side reduced to zero but right side did not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistent;

impl EchelonSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `sum coeffs[c] x_c = rhs`.
    pub fn push(&mut self, coeffs: &BTreeMap<usize, i128>, rhs: i128) -> Result<(), Inconsistent> {
        let mut work: BTreeMap<usize, u64> =
            coeffs.iter().map(|(k, v)| (*k, reduce(*v))).filter(|(_, v)| *v != 0).collect();
        let mut b = reduce(rhs);
        let mut cursor = 0;
        let lead = loop {
            let Some((&c, &f)) = work.range(cursor..).next() else {
                break None;
            };
            let Some(&r) = self.pivot_of.get(&c) else {
                break Some(c);
            };
            let (prow, pb) = &self.rows[r];
            for &(k, v) in prow {
                let e = work.entry(k).or_insert(0);
                *e = sub(*e, mul(f, v));
                if *e == 0 {
                    work.remove(&k);
                }
            }
            b = sub(b, mul(f, *pb));
            cursor = c + 1;
        };
        let Some(p) = lead else {
            return if b == 0 { Ok(()) } else { Err(Inconsistent) };
        };
        let s = inv(work[&p]);
        let row: Row = work.range(p..).map(|(k, v)| (*k, mul(*v, s))).collect();
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push((row, mul(b, s)));
        Ok(())
    }

    /// Back-substitutes to reduced echelon form and reports forced values.
    pub fn solve(self) -> Solution {
        self.solve_from(0)
    }

    /// As `solve`, but only for the unknowns `x_c` with `c >= first`.
    /// Rows pivoted there involve no earlier column, so this is exact.
    pub fn solve_from(mut self, first: usize) -> Solution {
        let mut order: Vec<(usize, usize)> =
            self.pivot_of.iter().filter(|(c, _)| **c >= first).map(|(c, r)| (*c, *r)).collect();
        order.sort_unstable_by(|a, b| b.cmp(a));
        // reduced rows, indexed by pivot column; later pivots are handled first
        let mut done: HashMap<usize, (Row, u64)> = HashMap::new();
        for (c, r) in order {
            let (row, b) = std::mem::take(&mut self.rows[r]);
            let mut work: BTreeMap<usize, u64> = row.into_iter().collect();
            let mut b = b;
            let others: Vec<usize> = work.keys().copied().filter(|k| *k != c && done.contains_key(k)).collect();
            for k in others {
                let f = match work.get(&k) {
                    Some(f) => *f,
                    None => continue,
                };
                let (prow, pb) = &done[&k];
                for &(j, v) in prow {
                    let e = work.entry(j).or_insert(0);
                    *e = sub(*e, mul(f, v));
                    if *e == 0 {
                        work.remove(&j);
                    }
                }
                b = sub(b, mul(f, *pb));
            }
            done.insert(c, (work.into_iter().collect(), b));
        }
        let values = done
            .into_iter()
            .filter(|(_, (row, _))| row.len() == 1)
            .map(|(c, (_, b))| (c, lift(b)))
            .collect();
        Solution { values }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    values: HashMap<usize, i128>,
}

impl Solution {
    /// Value of `x_c` if the system forces it.
    pub fn determined(&self, c: usize) -> Option<i128> {
        self.values.get(&c).copied()
    }
}
