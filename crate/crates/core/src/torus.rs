//! Exact arithmetic for finite subgroups of tori.
//!
//! Finite isotropy data only ever lives inside a torus here, so elements are
//! vectors of rationals modulo 1. Keeping them exact makes subgroup
//! generation terminate and subgroup equality decidable, which the flat-type
//! classification depends on.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;

/// Largest denominator accepted when reading float-encoded torus elements.
pub const MAX_DENOMINATOR: i64 = 4096;

/// Hard cap on generated subgroup orders; inputs beyond this are rejected
/// rather than ground through.
pub const MAX_SUBGROUP_ORDER: usize = 1 << 20;

/// A point on the torus `R^k / Z^k`, entries reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusElement(Vec<Rat>);

fn reduce_mod_one(x: Rat) -> Rat {
    let f = x.floor();
    x - f
}

/// Closest rational with denominator at most `MAX_DENOMINATOR`, via continued
/// fractions. Errors when the approximation misses by more than `tol`.
pub fn rationalize(x: f64, tol: f64) -> Result<Rat> {
    if !x.is_finite() {
        return Err(Error::Parse(format!("torus coordinate {x} is not finite")));
    }
    let target = x - x.floor();
    // continued fraction expansion of `target`
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut frac = target;
    for _ in 0..64 {
        let a = frac.floor();
        if a > MAX_DENOMINATOR as f64 {
            break;
        }
        let a_int = a as i64;
        let (p2, q2) = (a_int * p1 + p0, a_int * q1 + q0);
        if q2 > MAX_DENOMINATOR {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let rem = frac - a;
        if rem.abs() < 1e-15 {
            break;
        }
        frac = 1.0 / rem;
    }
    if q1 == 0 {
        return Err(Error::Parse(format!(
            "cannot approximate {x} by a rational"
        )));
    }
    let cand = Rat::new(p1, q1);
    let err = (target - (*cand.numer() as f64) / (*cand.denom() as f64)).abs();
    if err > tol {
        return Err(Error::Parse(format!(
            "torus coordinate {x} is not a rational with denominator <= {MAX_DENOMINATOR} (best error {err:.3e})"
        )));
    }
    Ok(reduce_mod_one(cand))
}

impl TorusElement {
    pub fn from_rationals(coords: Vec<Rat>) -> Self {
        Self(coords.into_iter().map(reduce_mod_one).collect())
    }

    pub fn from_floats(coords: &[f64], tol: f64) -> Result<Self> {
        let rs = coords
            .iter()
            .map(|&x| rationalize(x, tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(rs))
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![Rat::new(0, 1); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn coords_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|r| r.numer() == &0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| reduce_mod_one(a + b))
                .collect(),
        )
    }

    /// Order of the cyclic group this element generates: the lcm of the
    /// coordinate denominators.
    pub fn order(&self) -> i64 {
        self.0.iter().fold(1i64, |acc, r| acc.lcm(r.denom()))
    }

    /// True exactly for the order-2 elements, i.e. all entries in {0, 1/2}
    /// with at least one 1/2.
    pub fn is_order_two(&self) -> bool {
        self.order() == 2
    }
}

/// A finite subgroup of a torus, materialized as its full element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTorusSubgroup {
    rank: usize,
    elements: BTreeSet<TorusElement>,
}

impl FiniteTorusSubgroup {
    pub fn trivial(rank: usize) -> Self {
        let mut elements = BTreeSet::new();
        elements.insert(TorusElement::zero(rank));
        Self { rank, elements }
    }

    /// Closure of the generators under addition mod 1.
    pub fn generate(rank: usize, generators: &[TorusElement]) -> Result<Self> {
        for g in generators {
            if g.rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: g.rank(),
                });
            }
        }
        let mut elements = BTreeSet::new();
        elements.insert(TorusElement::zero(rank));
        let mut frontier = vec![TorusElement::zero(rank)];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = x.add(g);
                if elements.insert(y.clone()) {
                    if elements.len() > MAX_SUBGROUP_ORDER {
                        return Err(Error::InvalidParameter(format!(
                            "generated torus subgroup exceeds {MAX_SUBGROUP_ORDER} elements"
                        )));
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(Self { rank, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &TorusElement) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.rank == other.rank && self.elements.is_subset(&other.elements)
    }

    /// Recognizes Z_2: exactly two elements, the non-trivial one of order 2.
    pub fn is_z2(&self) -> bool {
        self.order() == 2
    }
}

/// Basis (rows) of the lattice `Z^k + sum Z g_i` in `R^k`, computed by an
/// integer Hermite normal form after clearing denominators. Quotienting the
/// torus by the finite subgroup generated by the `g_i` re-coordinatizes it by
/// the inverse of this basis.
pub fn quotient_lattice_basis(rank: usize, generators: &[TorusElement]) -> Result<Vec<Vec<Rat>>> {
    // keep the cleared-denominator lattice safely inside i64: the HNF
    // reductions stay bounded by the pivot sizes, so the common denominator
    // is the only overflow risk
    const MAX_COMMON_DENOM: i64 = 1 << 40;
    let mut denom = 1i64;
    for g in generators {
        for r in g.coords() {
            denom = denom.lcm(r.denom());
            if denom > MAX_COMMON_DENOM {
                return Err(Error::InvalidParameter(
                    "finite isotropy denominators are too large to reduce exactly".into(),
                ));
            }
        }
    }
    // rows of N * (Z^k + sum Z g_i) as integer vectors
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut row = vec![0i64; rank];
        row[i] = denom;
        rows.push(row);
    }
    for g in generators {
        rows.push(
            g.coords()
                .iter()
                .map(|r| r.numer() * (denom / r.denom()))
                .collect(),
        );
    }
    let hnf = hermite_normal_form(rows, rank)?;
    let d = Rat::new(denom, 1);
    Ok(hnf
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rat::new(x, 1) / d).collect())
        .collect())
}

/// Row-style Hermite normal form (row upper triangular, positive diagonal)
/// of a full-rank integer row span.
fn hermite_normal_form(mut rows: Vec<Vec<i64>>, rank: usize) -> Result<Vec<Vec<i64>>> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for col in 0..rank {
        loop {
            // gather rows with support starting at `col`
            let mut pivot: Option<usize> = None;
            for (idx, r) in rows.iter().enumerate() {
                if r[..col].iter().all(|&x| x == 0) && r[col] != 0 {
                    pivot = match pivot {
                        None => Some(idx),
                        Some(p) if rows[p][col].abs() > r[col].abs() => Some(idx),
                        keep => keep,
                    };
                }
            }
            let Some(p) = pivot else {
                return Err(Error::InternalConsistency(
                    "lattice rows are not full rank".into(),
                ));
            };
            let pv = rows[p][col];
            let mut reduced_all = true;
            for idx in 0..rows.len() {
                if idx == p || rows[idx][..col].iter().any(|&x| x != 0) || rows[idx][col] == 0 {
                    continue;
                }
                let q = rows[idx][col].div_euclid(pv);
                for k in 0..rank {
                    rows[idx][k] -= q * rows[p][k];
                }
                if rows[idx][col] != 0 {
                    reduced_all = false;
                }
            }
            if reduced_all {
                let mut row = rows.swap_remove(p);
                if row[col] < 0 {
                    for x in &mut row {
                        *x = -*x;
                    }
                }
                basis.push(row);
                break;
            }
        }
    }
    // reduce entries below the diagonal against later pivots for a canonical form
    for i in (0..rank).rev() {
        for j in (i + 1)..rank {
            let pv = basis[j][j];
            let q = basis[i][j].div_euclid(pv);
            if q != 0 {
                for k in 0..rank {
                    basis[i][k] -= q * basis[j][k];
                }
            }
        }
    }
    Ok(basis)
}

/// Coordinates of `x` on the quotient torus, i.e. the solution of
/// `y B = x` mod 1 for the (row upper triangular) lattice basis `B`.
pub fn quotient_coordinates(basis: &[Vec<Rat>], x: &TorusElement) -> TorusElement {
    let rank = x.rank();
    let mut y = vec![Rat::new(0, 1); rank];
    for col in 0..rank {
        let mut acc = x.coords()[col];
        for j in 0..col {
            acc -= y[j] * basis[j][col];
        }
        y[col] = acc / basis[col][col];
    }
    TorusElement::from_rationals(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(rank: usize, at: usize) -> TorusElement {
        let mut v = vec![Rat::new(0, 1); rank];
        v[at] = Rat::new(1, 2);
        TorusElement::from_rationals(v)
    }

    #[test]
    fn rationalize_simple() {
        assert_eq!(rationalize(0.5, 1e-9).unwrap(), Rat::new(1, 2));
        assert_eq!(rationalize(0.25, 1e-9).unwrap(), Rat::new(1, 4));
        assert_eq!(rationalize(0.0, 1e-9).unwrap(), Rat::new(0, 1));
        assert_eq!(rationalize(1.5, 1e-9).unwrap(), Rat::new(1, 2));
        assert_eq!(rationalize(1.0 / 3.0, 1e-9).unwrap(), Rat::new(1, 3));
        assert!(rationalize(0.12345678901, 1e-9).is_err());
    }

    #[test]
    fn generation_and_equality() {
        let a = FiniteTorusSubgroup::generate(2, &[half(2, 0)]).unwrap();
        let b = FiniteTorusSubgroup::generate(2, &[half(2, 0)]).unwrap();
        let c = FiniteTorusSubgroup::generate(2, &[half(2, 1)]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.is_z2());

        let both = TorusElement::from_rationals(vec![Rat::new(1, 2), Rat::new(1, 2)]);
        let d = FiniteTorusSubgroup::generate(2, std::slice::from_ref(&both)).unwrap();
        let e = FiniteTorusSubgroup::generate(2, &[both]).unwrap();
        assert_eq!(d, e);
        assert!(d.is_z2());
    }

    #[test]
    fn z4_contains_z2() {
        let quarter = TorusElement::from_rationals(vec![Rat::new(1, 4)]);
        let z4 = FiniteTorusSubgroup::generate(1, &[quarter]).unwrap();
        let z2 = FiniteTorusSubgroup::generate(1, &[half(1, 0)]).unwrap();
        assert_eq!(z4.order(), 4);
        assert!(z2.is_subgroup_of(&z4));
        assert!(!z4.is_subgroup_of(&z2));
    }

    #[test]
    fn quotient_by_z2_on_circle() {
        // T^1 / Z_2(1/2): lattice (1/2)Z, so the class of 1/4 becomes 1/2.
        let basis = quotient_lattice_basis(1, &[half(1, 0)]).unwrap();
        assert_eq!(basis, vec![vec![Rat::new(1, 2)]]);
        let quarter = TorusElement::from_rationals(vec![Rat::new(1, 4)]);
        let img = quotient_coordinates(&basis, &quarter);
        assert_eq!(img.coords(), &[Rat::new(1, 2)]);
        // the old generator maps to the identity
        let img0 = quotient_coordinates(&basis, &half(1, 0));
        assert!(img0.is_zero());
    }

    #[test]
    fn quotient_in_rank_two() {
        let g = TorusElement::from_rationals(vec![Rat::new(1, 2), Rat::new(1, 2)]);
        let basis = quotient_lattice_basis(2, std::slice::from_ref(&g)).unwrap();
        // index of Z^2 in the new lattice is 2 = 1/det
        let det = basis[0][0] * basis[1][1];
        assert_eq!(det, Rat::new(1, 2));
        assert!(quotient_coordinates(&basis, &g).is_zero());
    }
}
