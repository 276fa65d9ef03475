//! Quasi-maps from the projective line to the flag variety of SL_2 and SL_3,
//! given by their Plücker data, and dimension counts of the associated
//! Richardson varieties.
//!
//! A datum has one polynomial vector `u_i(z)` in each fundamental
//! representation, of degree at most `d_i`. Bases are fixed:
//!
//! - SL_2: `V(w_1) = <e1, e2>`;
//! - SL_3: `V(w_1) = <e1, e2, e3>` and
//!   `V(w_2) = <e1^e2, e1^e3, e2^e3>`.
//!
//! For SL_3 the two vectors must be incident: under the pairing
//! `e1^e2 <-> e3*`, `e1^e3 <-> -e2*`, `e2^e3 <-> e1*`, the contraction
//! `<u_2(z), u_1(z)>` vanishes identically. Compatibility for every other pair
//! of dominant weights follows from this one quadratic relation, because the
//! Plücker relations of these flag varieties are generated in degrees
//! `2 w_i` and `w_i + w_j`, and for SL_3 the former are empty.
//!
//! The torus fixed point `p_w` is the flag whose Plücker vector in `V(w_i)`
//! is the weight vector of weight `w w0 w_i`; see `docs/fixed_points.md`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ratpoly::{split_by_orders, RatPoly};
use crate::rootdata::{pair, Coweight, RootDataError, RootDatum, Weight};
use crate::semiinf::{si_le, si_length, SemiInfError};
use crate::weylgroup::{AffineWeylElement, FiniteWeylElement, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuasiMapError {
    #[error("only SL_2 and SL_3 are supported, got rank {0}")]
    Rank(usize),
    #[error("expected one component for each fundamental weight 1..={rank}")]
    Components { rank: usize },
    #[error("component {weight} has {got} coordinates, expected {expected}")]
    Shape { weight: usize, expected: usize, got: usize },
    #[error("component {0} is the zero vector")]
    ZeroComponent(usize),
    #[error("component {weight} has degree {degree}, above its bound {bound}")]
    Degree { weight: usize, degree: usize, bound: i64 },
    #[error("degree bound {0} is negative")]
    NegativeDegree(i64),
    #[error("contraction of the two components is nonzero: coefficient {value} at z^{degree}")]
    Contraction { degree: usize, value: BigRational },
    #[error("the pair is not comparable, so the variety is empty")]
    Empty,
    #[error("{0} is not minimal in its coset")]
    NotMinimal(String),
    #[error("malformed flag coordinates: {0}")]
    Malformed(String),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    SemiInf(#[from] SemiInfError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DPComponent {
    /// index `i` of the fundamental weight
    pub weight: usize,
    pub polys: Vec<RatPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DPData {
    pub rank: usize,
    pub components: Vec<DPComponent>,
    /// `d_i`, indexed like the fundamental weights
    pub degrees: Vec<i64>,
}

impl DPData {
    pub fn component(&self, i: usize) -> &[RatPoly] {
        &self.components.iter().find(|c| c.weight == i).expect("validated").polys
    }

    fn component_degree(&self, i: usize) -> usize {
        self.component(i).iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    fn component_gcd(&self, i: usize) -> RatPoly {
        RatPoly::gcd_all(self.component(i))
    }
}

/// `beta` with `d_i = -<w0 beta, w_i>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    pub beta: Coweight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectPoint {
    /// monic factor whose roots are the points, each with the same multiplicity
    pub factor: RatPoly,
    pub multiplicity: Coweight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectDivisor {
    pub finite_points: Vec<DefectPoint>,
    pub at_infinity: Coweight,
}

impl DefectDivisor {
    /// `|D|`, counting every root of each factor.
    pub fn total(&self) -> Coweight {
        let mut t = self.at_infinity.clone();
        for p in &self.finite_points {
            let n = p.factor.degree().unwrap_or(0) as i64;
            t = t.add(&p.multiplicity.scale(n));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.finite_points.is_empty() && self.at_infinity.is_zero()
    }
}

impl fmt::Display for DefectDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.finite_points.iter().map(|p| format!("{}[{}]", p.multiplicity, p.factor)).collect();
        if !self.at_infinity.is_zero() {
            parts.push(format!("{}[inf]", self.at_infinity));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    Zero,
    Infinity,
}

/// Projective coordinates in each fundamental representation, scaled so the
/// first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPoint {
    pub coords: Vec<Vec<BigRational>>,
}

fn dims(rank: usize) -> Result<Vec<usize>, QuasiMapError> {
    match rank {
        1 => Ok(vec![2]),
        2 => Ok(vec![3, 3]),
        r => Err(QuasiMapError::Rank(r)),
    }
}

/// Weights of the basis vectors of `V(w_i)`, in fundamental weight coordinates.
fn basis_weights(rank: usize, i: usize) -> Vec<Weight> {
    let w = |v: &[i64]| Weight(v.to_vec());
    match (rank, i) {
        (1, 1) => vec![w(&[1]), w(&[-1])],
        (2, 1) => vec![w(&[1, 0]), w(&[-1, 1]), w(&[0, -1])],
        (2, 2) => vec![w(&[0, 1]), w(&[1, -1]), w(&[-1, 0])],
        _ => unreachable!("checked rank"),
    }
}

/// `<u_2, u_1>` in the fixed bases.
pub fn contraction(u1: &[RatPoly], u2: &[RatPoly]) -> RatPoly {
    u2[2].mul(&u1[0]).sub(&u2[1].mul(&u1[1])).add(&u2[0].mul(&u1[2]))
}

/// `a ^ b` in the basis `e1^e2, e1^e3, e2^e3`.
pub fn wedge(a: &[RatPoly], b: &[RatPoly]) -> Vec<RatPoly> {
    let m = |i: usize, j: usize| a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
    vec![m(0, 1), m(0, 2), m(1, 2)]
}

fn type_a(rank: usize) -> Result<WeylGroup, QuasiMapError> {
    dims(rank)?;
    Ok(WeylGroup::new(RootDatum::of_type("A", rank)?))
}

pub fn validate_dp(data: &DPData) -> Result<DegreeVector, QuasiMapError> {
    let r = data.rank;
    let dims = dims(r)?;
    if data.degrees.len() != r {
        return Err(QuasiMapError::Components { rank: r });
    }
    let mut seen: Vec<usize> = data.components.iter().map(|c| c.weight).collect();
    seen.sort_unstable();
    if seen != (1..=r).collect::<Vec<_>>() {
        return Err(QuasiMapError::Components { rank: r });
    }
    for c in &data.components {
        let expected = dims[c.weight - 1];
        if c.polys.len() != expected {
            return Err(QuasiMapError::Shape { weight: c.weight, expected, got: c.polys.len() });
        }
        if c.polys.iter().all(|p| p.is_zero()) {
            return Err(QuasiMapError::ZeroComponent(c.weight));
        }
        let bound = data.degrees[c.weight - 1];
        if bound < 0 {
            return Err(QuasiMapError::NegativeDegree(bound));
        }
        let degree = data.component_degree(c.weight);
        if degree as i64 > bound {
            return Err(QuasiMapError::Degree { weight: c.weight, degree, bound });
        }
    }
    if r == 2 {
        let k = contraction(data.component(1), data.component(2));
        if let Some((degree, value)) = k.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) {
            return Err(QuasiMapError::Contraction { degree, value: value.clone() });
        }
    }
    let g = type_a(r)?;
    let d = Coweight(data.degrees.clone());
    Ok(DegreeVector { beta: g.longest().act_coweight(&d).neg() })
}

pub fn defect_divisor(data: &DPData) -> Result<DefectDivisor, QuasiMapError> {
    validate_dp(data)?;
    let r = data.rank;
    let gcds: Vec<RatPoly> = (1..=r).map(|i| data.component_gcd(i)).collect();
    let product = gcds.iter().fold(RatPoly::constant(BigRational::one()), |acc, g| acc.mul(g));
    let finite_points = split_by_orders(&product, &gcds)
        .into_iter()
        .map(|(factor, orders)| DefectPoint {
            factor,
            // simple coroot coordinates are the pairings with the w_i
            multiplicity: Coweight(orders.into_iter().map(|o| o as i64).collect()),
        })
        .collect();
    let at_infinity = Coweight((1..=r).map(|i| data.degrees[i - 1] - data.component_degree(i) as i64).collect());
    Ok(DefectDivisor { finite_points, at_infinity })
}

/// Degree of the saturated map, paired with each `w_i`.
pub fn saturated_degrees(data: &DPData) -> Result<Coweight, QuasiMapError> {
    validate_dp(data)?;
    Ok(Coweight(
        (1..=data.rank)
            .map(|i| {
                let g = data.component_gcd(i);
                (data.component_degree(i) - g.degree().unwrap_or(0)) as i64
            })
            .collect(),
    ))
}

/// `f_*[P^1] + |D|`, to be compared with `-w0 beta = (d_i)`.
pub fn degree_balance(data: &DPData) -> Result<(Coweight, Coweight), QuasiMapError> {
    let beta = validate_dp(data)?.beta;
    let g = type_a(data.rank)?;
    let lhs = saturated_degrees(data)?.add(&defect_divisor(data)?.total());
    Ok((lhs, g.longest().act_coweight(&beta).neg()))
}

fn normalize(v: Vec<BigRational>) -> Vec<BigRational> {
    match v.iter().find(|c| !c.is_zero()).cloned() {
        Some(lead) => v.into_iter().map(|c| c / &lead).collect(),
        None => v,
    }
}

/// Value of the saturated map at `0` or `inf`.
pub fn evaluate(data: &DPData, point: Point) -> Result<FlagPoint, QuasiMapError> {
    validate_dp(data)?;
    let coords = (1..=data.rank)
        .map(|i| {
            let g = data.component_gcd(i);
            let sat: Vec<RatPoly> = data.component(i).iter().map(|p| p.div_exact(&g)).collect();
            let top = sat.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
            let v = sat
                .iter()
                .map(|p| match point {
                    Point::Zero => p.coeff(0),
                    Point::Infinity => p.coeff(top),
                })
                .collect();
            normalize(v)
        })
        .collect();
    Ok(FlagPoint { coords })
}

/// Coordinates of the fixed point `p_w`.
pub fn fixed_point(g: &WeylGroup, w: &FiniteWeylElement) -> Result<FlagPoint, QuasiMapError> {
    let r = g.rank();
    dims(r)?;
    let x = w.mul(g.longest());
    let coords = (1..=r)
        .map(|i| {
            let target = x.act_weight(&g.datum().fundamental_weight(i));
            basis_weights(r, i)
                .iter()
                .map(|b| if *b == target { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    Ok(FlagPoint { coords })
}

// `a - b` is a nonnegative combination of simple roots (type A1/A2 only).
fn dominates(rank: usize, a: &Weight, b: &Weight) -> bool {
    let d = a.sub(b);
    match rank {
        1 => d.0[0] >= 0 && d.0[0] % 2 == 0,
        _ => {
            // 3 * inverse Cartan matrix of A2
            let (x, y) = (2 * d.0[0] + d.0[1], d.0[0] + 2 * d.0[1]);
            x >= 0 && y >= 0 && x % 3 == 0 && y % 3 == 0
        }
    }
}

fn check_flag(rank: usize, p: &FlagPoint) -> Result<(), QuasiMapError> {
    let dims = dims(rank)?;
    if p.coords.len() != rank {
        return Err(QuasiMapError::Malformed(format!("expected {rank} coordinate vectors")));
    }
    for (i, (v, n)) in p.coords.iter().zip(&dims).enumerate() {
        if v.len() != *n {
            return Err(QuasiMapError::Malformed(format!("vector {} has {} entries, expected {n}", i + 1, v.len())));
        }
        if v.iter().all(|c| c.is_zero()) {
            return Err(QuasiMapError::Malformed(format!("vector {} is zero", i + 1)));
        }
    }
    if rank == 2 {
        let c = |v: &[BigRational]| v.iter().map(|x| RatPoly::constant(x.clone())).collect::<Vec<_>>();
        if !contraction(&c(&p.coords[0]), &c(&p.coords[1])).is_zero() {
            return Err(QuasiMapError::Malformed("line not contained in plane".into()));
        }
    }
    Ok(())
}

/// Membership in the Schubert variety through `p_w` for the upper unipotent
/// group, or for the lower one when `opposite`.
///
/// Both are cut out by Plücker coordinates: a flag lies in the closure of
/// `N p_w` exactly when, in each `V(w_i)`, it has no coordinate on a weight
/// that fails to dominate `w w0 w_i`; the opposite variety reverses the
/// comparison.
pub fn schubert_member(
    g: &WeylGroup,
    p: &FlagPoint,
    w: &FiniteWeylElement,
    opposite: bool,
) -> Result<bool, QuasiMapError> {
    let r = g.rank();
    check_flag(r, p)?;
    let x = w.mul(g.longest());
    for i in 1..=r {
        let anchor = x.act_weight(&g.datum().fundamental_weight(i));
        for (c, wt) in p.coords[i - 1].iter().zip(basis_weights(r, i)) {
            let allowed = if opposite { dominates(r, &anchor, &wt) } else { dominates(r, &wt, &anchor) };
            if !c.is_zero() && !allowed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dimension of the Richardson variety for `v <= w`.
pub fn dim_richardson(g: &WeylGroup, v: &AffineWeylElement, w: &AffineWeylElement) -> Result<i64, QuasiMapError> {
    if !si_le(g, v, w)? {
        return Err(QuasiMapError::Empty);
    }
    Ok(si_length(g, v) - si_length(g, w))
}

/// The same dimension for `v = w0 t_beta`, `w = u t_beta'`, counted as the
/// space of based quasi-maps plus the Schubert cell of `u`.
pub fn dim_quasimap_schubert(g: &WeylGroup, beta: &Coweight, u: &FiniteWeylElement, beta2: &Coweight) -> i64 {
    let rho = g.datum().rho();
    2 * pair(&beta.sub(beta2), &rho) + g.finite_length(g.longest()) as i64 - g.finite_length(u) as i64
}

/// Quasi-maps of degree `beta` whose value at 0 lies in the Schubert
/// variety of `w`, with the generic value in that of `v`.
pub fn dim_boundary(g: &WeylGroup, v: &FiniteWeylElement, w: &FiniteWeylElement, beta: &Coweight) -> i64 {
    g.finite_length(v) as i64 - g.finite_length(w) as i64 + 2 * pair(beta, &g.datum().rho())
}

/// `dim G/P(J) - 2 <w0 beta, rho_J> - l(w)` for `w` minimal in `w W_J`.
pub fn dim_parabolic(g: &WeylGroup, j: &[usize], beta: &Coweight, w: &FiniteWeylElement) -> Result<i64, QuasiMapError> {
    let d = g.datum();
    d.check_rank(beta.rank())?;
    let par = d.parabolic_data(j)?;
    let lw = g.finite_length(w);
    for &s in &par.generators {
        if g.finite_length(&w.mul(&g.simple(s))) < lw {
            return Err(QuasiMapError::NotMinimal(g.finite_reduced_word(w).iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")));
        }
    }
    let dim_gp = (d.positive_roots().len() - par.levi_positive_roots) as i64;
    let w0b = g.longest().act_coweight(beta);
    Ok(dim_gp - pair(&w0b, &par.two_rho_j) - lw as i64)
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn poly(max_len: usize) -> impl Strategy<Value = RatPoly> {
        prop::collection::vec(-3i64..4, 0..max_len).prop_map(|c| RatPoly::from_ints(&c))
    }

    fn data(rank: usize, comps: Vec<Vec<RatPoly>>, slack: &[i64]) -> DPData {
        let components: Vec<DPComponent> =
            comps.into_iter().enumerate().map(|(i, polys)| DPComponent { weight: i + 1, polys }).collect();
        let degrees = components
            .iter()
            .zip(slack)
            .map(|(c, s)| c.polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0) as i64 + s)
            .collect();
        DPData { rank, components, degrees }
    }

    proptest! {
        #[test]
        fn sl3_degree_conservation(
            v in prop::collection::vec(poly(3), 3),
            v2 in prop::collection::vec(poly(3), 3),
            h1 in poly(3), h2 in poly(3),
            slack in prop::collection::vec(0i64..3, 2),
        ) {
            let u1: Vec<RatPoly> = v.iter().map(|p| p.mul(&h1)).collect();
            let u2: Vec<RatPoly> = wedge(&v, &v2).iter().map(|p| p.mul(&h2)).collect();
            prop_assume!(u1.iter().any(|p| !p.is_zero()) && u2.iter().any(|p| !p.is_zero()));
            let dp = data(2, vec![u1, u2], &slack);
            let (lhs, rhs) = degree_balance(&dp).unwrap();
            prop_assert_eq!(lhs, rhs);
            let defect = defect_divisor(&dp).unwrap();
            prop_assert!(defect.total().coords().iter().all(|c| *c >= 0));
        }

        #[test]
        fn saturation_is_idempotent(a in poly(4), b in poly(4), h in poly(3), slack in 0i64..2) {
            prop_assume!(!h.is_zero() && !(a.is_zero() && b.is_zero()));
            let dp = data(1, vec![vec![a.mul(&h), b.mul(&h)]], &[slack]);
            let g = RatPoly::gcd_all(dp.component(1));
            let sat = data(1, vec![dp.component(1).iter().map(|p| p.div_exact(&g)).collect()], &[0]);
            for pt in [Point::Zero, Point::Infinity] {
                prop_assert_eq!(evaluate(&dp, pt).unwrap(), evaluate(&sat, pt).unwrap());
            }
            prop_assert!(defect_divisor(&sat).unwrap().is_zero());
        }
    }
}
