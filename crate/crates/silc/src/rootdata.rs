//! Finite root systems given by a Cartan matrix.
//!
//! Conventions: `a[i][j] = <alpha_i^vee, alpha_j>`. Weights live in the
//! fundamental-weight basis, coweights in the simple-coroot basis and roots in
//! the simple-root basis, so the weight/coweight pairing is a dot product.
//! Simple reflections are numbered `1..=r`; index `0` is reserved for the
//! affine reflection.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("cartan matrix must be square and nonempty")]
    NotSquare,
    #[error("diagonal entry a[{0}][{0}] must be 2")]
    Diagonal(usize),
    #[error("off-diagonal entry a[{0}][{1}] must be nonpositive")]
    OffDiagonal(usize, usize),
    #[error("a[{0}][{1}] and a[{1}][{0}] must vanish together")]
    ZeroPattern(usize, usize),
    #[error("cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("cartan matrix is decomposable")]
    Decomposable,
    #[error("cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("unknown root system type {0}")]
    UnknownType(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
}

/// Integer vector in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

/// Integer vector in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<i64>);

macro_rules! lattice_ops {
    ($t:ident) => {
        impl $t {
            pub fn zero(rank: usize) -> Self {
                $t(vec![0; rank])
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn add(&self, other: &$t) -> $t {
                $t(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &$t) -> $t {
                $t(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn neg(&self) -> $t {
                $t(self.0.iter().map(|a| -a).collect())
            }

            pub fn scale(&self, k: i64) -> $t {
                $t(self.0.iter().map(|a| k * a).collect())
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, x) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    };
}

lattice_ops!(Weight);
lattice_ops!(Coweight);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }
}

/// Validated Cartan matrix of a simple finite-type root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    // eps[i] * a[i][j] is symmetric; (alpha_i, alpha_i) = 2 eps[i]
    sym: Vec<i64>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, RootDataError> {
        let r = entries.len();
        if r == 0 || entries.iter().any(|row| row.len() != r) {
            return Err(RootDataError::NotSquare);
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 2 {
                return Err(RootDataError::Diagonal(i));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j {
                    if a > 0 {
                        return Err(RootDataError::OffDiagonal(i, j));
                    }
                    if (a == 0) != (entries[j][i] == 0) {
                        return Err(RootDataError::ZeroPattern(i, j));
                    }
                }
            }
        }
        let sym = symmetrizer(&entries)?;
        let b: Vec<Vec<i128>> = (0..r)
            .map(|i| (0..r).map(|j| (sym[i] * entries[i][j]) as i128).collect())
            .collect();
        if !leading_minors_positive(&b) {
            return Err(RootDataError::NotFiniteType);
        }
        Ok(CartanMatrix { entries, sym })
    }

    /// Built-in matrices in Bourbaki numbering.
    pub fn of_type(kind: &str, rank: usize) -> Result<Self, RootDataError> {
        let bad = || RootDataError::UnknownType(format!("{kind}{rank}"));
        let mut a = vec![vec![0i64; rank]; rank];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match kind.to_ascii_uppercase().as_str() {
            "A" if rank >= 1 => {
                for i in 1..rank {
                    link(&mut a, i - 1, i);
                }
            }
            "B" if rank >= 2 => {
                for i in 1..rank {
                    link(&mut a, i - 1, i);
                }
                a[rank - 1][rank - 2] = -2;
            }
            "C" if rank >= 2 => {
                for i in 1..rank {
                    link(&mut a, i - 1, i);
                }
                a[rank - 2][rank - 1] = -2;
            }
            "D" if rank >= 4 => {
                for i in 1..rank - 1 {
                    link(&mut a, i - 1, i);
                }
                link(&mut a, rank - 3, rank - 1);
            }
            "E" if (6..=8).contains(&rank) => {
                link(&mut a, 0, 2);
                link(&mut a, 1, 3);
                for i in 3..rank {
                    link(&mut a, i - 1, i);
                }
            }
            "F" if rank == 4 => {
                link(&mut a, 0, 1);
                link(&mut a, 2, 3);
                a[1][2] = -1;
                a[2][1] = -2;
            }
            "G" if rank == 2 => {
                a[0][1] = -3;
                a[1][0] = -1;
            }
            _ => return Err(bad()),
        }
        CartanMatrix::new(a)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Positive integers `eps` with `eps[i] a[i][j] = eps[j] a[j][i]`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>, RootDataError> {
    use num_integer::Integer;
    use num_rational::Ratio;
    let r = a.len();
    let mut eps: Vec<Option<Ratio<i64>>> = vec![None; r];
    eps[0] = Some(Ratio::from_integer(1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let ei = eps[i].unwrap();
        for j in 0..r {
            if j == i || a[i][j] == 0 {
                continue;
            }
            let ej = ei * Ratio::new(a[i][j], a[j][i]);
            match eps[j] {
                Some(x) if x != ej => return Err(RootDataError::NotSymmetrizable),
                Some(_) => {}
                None => {
                    eps[j] = Some(ej);
                    stack.push(j);
                }
            }
        }
    }
    if eps.iter().any(|e| e.is_none()) {
        return Err(RootDataError::Decomposable);
    }
    let eps: Vec<Ratio<i64>> = eps.into_iter().map(|e| e.unwrap()).collect();
    let den = eps.iter().fold(1i64, |acc, e| acc.lcm(e.denom()));
    let ints: Vec<i64> = eps.iter().map(|e| (e * den).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

// Bareiss elimination; all leading principal minors of a symmetric matrix.
fn leading_minors_positive(b: &[Vec<i128>]) -> bool {
    let n = b.len();
    let mut m = b.to_vec();
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    true
}

/// A positive root with its coordinate views.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    /// simple-root coordinates
    pub coords: Vec<i64>,
    /// fundamental-weight coordinates
    pub weight: Weight,
    /// the coroot in simple-coroot coordinates
    pub coroot: Coweight,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

/// Real affine root `finite + delta_coeff * delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    /// simple-root coordinates of a (possibly negative) finite root
    pub finite_part: Vec<i64>,
    pub delta_coeff: i64,
}

impl AffineRoot {
    pub fn is_positive(&self) -> bool {
        self.delta_coeff > 0 || (self.delta_coeff == 0 && self.finite_part.iter().sum::<i64>() > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicData {
    /// `varpi_i` for `i` outside `J`
    pub basis: Vec<Weight>,
    /// sum of the positive roots outside the span of `J`
    pub two_rho_j: Weight,
    /// generator indices of `W_J`, 1-based
    pub generators: Vec<usize>,
    /// number of positive roots inside the span of `J`
    pub levi_positive_roots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    cartan: CartanMatrix,
    positive: Vec<Root>,
    theta: usize,
}

impl RootDatum {
    pub fn new(cartan: CartanMatrix) -> Self {
        let r = cartan.rank();
        let mut all: Vec<Vec<i64>> = Vec::new();
        let mut layer: Vec<Vec<i64>> = (0..r).map(|i| unit(r, i)).collect();
        while !layer.is_empty() {
            all.extend(layer.iter().cloned());
            let mut next: Vec<Vec<i64>> = Vec::new();
            for a in &layer {
                for i in 0..r {
                    let mut b = a.clone();
                    b[i] += 1;
                    if next.contains(&b) {
                        continue;
                    }
                    let m: i64 = (0..r).map(|j| cartan.entry(i, j) * a[j]).sum();
                    let mut p = 0;
                    let mut c = a.clone();
                    loop {
                        c[i] -= 1;
                        if all.contains(&c) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - m > 0 {
                        next.push(b);
                    }
                }
            }
            layer = next;
        }
        all.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| x.cmp(y))
        });
        let eps = cartan.symmetrizer().to_vec();
        let positive: Vec<Root> = all
            .into_iter()
            .map(|c| {
                let weight = Weight(
                    (0..r)
                        .map(|i| (0..r).map(|j| cartan.entry(i, j) * c[j]).sum())
                        .collect(),
                );
                // (alpha, alpha) = sum_j c_j eps_j <alpha_j^vee, alpha>
                let norm: i64 = (0..r).map(|j| c[j] * eps[j] * weight.0[j]).sum();
                let coroot = Coweight((0..r).map(|j| 2 * c[j] * eps[j] / norm).collect());
                Root { coords: c, weight, coroot }
            })
            .collect();
        let theta = positive.len() - 1;
        RootDatum { cartan, positive, theta }
    }

    pub fn of_type(kind: &str, rank: usize) -> Result<Self, RootDataError> {
        Ok(RootDatum::new(CartanMatrix::of_type(kind, rank)?))
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Highest root.
    pub fn theta(&self) -> &Root {
        &self.positive[self.theta]
    }

    pub fn check_rank(&self, got: usize) -> Result<(), RootDataError> {
        if got != self.rank() {
            return Err(RootDataError::RankMismatch { expected: self.rank(), got });
        }
        Ok(())
    }

    pub fn check_index(&self, i: usize) -> Result<(), RootDataError> {
        if i == 0 || i > self.rank() {
            return Err(RootDataError::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    pub fn pairing(&self, beta: &Coweight, lam: &Weight) -> Result<i64, RootDataError> {
        self.check_rank(beta.rank())?;
        self.check_rank(lam.rank())?;
        Ok(pair(beta, lam))
    }

    /// `alpha_i` in fundamental-weight coordinates (column `i` of the matrix), 1-based.
    pub fn simple_root(&self, i: usize) -> Weight {
        let r = self.rank();
        Weight((0..r).map(|k| self.cartan.entry(k, i - 1)).collect())
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight(unit(self.rank(), i - 1))
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight(unit(self.rank(), i - 1))
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Sum of all positive coroots.
    pub fn coroot_sum(&self) -> Coweight {
        self.positive
            .iter()
            .fold(Coweight::zero(self.rank()), |acc, a| acc.add(&a.coroot))
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, coords: &[i64]) -> Weight {
        let r = self.rank();
        Weight(
            (0..r)
                .map(|i| (0..r).map(|j| self.cartan.entry(i, j) * coords[j]).sum())
                .collect(),
        )
    }

    /// `<beta, alpha_i>` for a coweight, 1-based `i`.
    pub fn coweight_on_simple_root(&self, beta: &Coweight, i: usize) -> i64 {
        (0..self.rank()).map(|k| beta.0[k] * self.cartan.entry(k, i - 1)).sum()
    }

    pub fn reflect_weight(&self, i: usize, lam: &Weight) -> Weight {
        let m = lam.0[i - 1];
        let mut out = lam.clone();
        for k in 0..self.rank() {
            out.0[k] -= m * self.cartan.entry(k, i - 1);
        }
        out
    }

    pub fn reflect_coweight(&self, i: usize, beta: &Coweight) -> Coweight {
        let m = self.coweight_on_simple_root(beta, i);
        let mut out = beta.clone();
        out.0[i - 1] -= m;
        out
    }

    /// Applies `s_{i_1} ... s_{i_k}` to `lam`; the rightmost reflection acts first.
    pub fn weyl_act(&self, word: &[usize], lam: &Weight) -> Result<Weight, RootDataError> {
        self.check_rank(lam.rank())?;
        let mut out = lam.clone();
        for &i in word.iter().rev() {
            self.check_index(i)?;
            out = self.reflect_weight(i, &out);
        }
        Ok(out)
    }

    pub fn weyl_act_coweight(&self, word: &[usize], beta: &Coweight) -> Result<Coweight, RootDataError> {
        self.check_rank(beta.rank())?;
        let mut out = beta.clone();
        for &i in word.iter().rev() {
            self.check_index(i)?;
            out = self.reflect_coweight(i, &out);
        }
        Ok(out)
    }

    /// Moves `lam` into the dominant chamber, returning the reflections used
    /// (first applied first).
    pub fn to_dominant(&self, lam: &Weight) -> (Weight, Vec<usize>) {
        let mut out = lam.clone();
        let mut used = Vec::new();
        while let Some(k) = out.0.iter().position(|&x| x < 0) {
            out = self.reflect_weight(k + 1, &out);
            used.push(k + 1);
        }
        (out, used)
    }

    /// Longest-element image `-w0(lam)` computed without building the group.
    pub fn dual_weight(&self, lam: &Weight) -> Weight {
        self.to_dominant(&lam.neg()).0
    }

    pub fn parabolic_data(&self, j: &[usize]) -> Result<ParabolicData, RootDataError> {
        for &i in j {
            self.check_index(i)?;
        }
        let r = self.rank();
        let basis = (1..=r)
            .filter(|i| !j.contains(i))
            .map(|i| self.fundamental_weight(i))
            .collect();
        let mut two_rho_j = Weight::zero(r);
        let mut levi = 0;
        for a in &self.positive {
            let inside = a
                .coords
                .iter()
                .enumerate()
                .all(|(k, &c)| c == 0 || j.contains(&(k + 1)));
            if inside {
                levi += 1;
            } else {
                two_rho_j = two_rho_j.add(&a.weight);
            }
        }
        let mut generators = j.to_vec();
        generators.sort_unstable();
        generators.dedup();
        Ok(ParabolicData { basis, two_rho_j, generators, levi_positive_roots: levi })
    }

    /// Dominant weights `mu <= lam` occurring in `V(lam)`, by walking down root strings.
    pub fn dominant_weights_below(&self, lam: &Weight) -> Vec<Weight> {
        let mut out = vec![lam.clone()];
        let mut i = 0;
        while i < out.len() {
            let mu = out[i].clone();
            for a in &self.positive {
                let nu = mu.sub(&a.weight);
                if nu.is_dominant() && !out.contains(&nu) {
                    out.push(nu);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }
}

pub(crate) fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// Dot product of coweight and weight coordinates.
pub fn pair(beta: &Coweight, lam: &Weight) -> i64 {
    beta.0.iter().zip(&lam.0).map(|(a, b)| a * b).sum()
}
