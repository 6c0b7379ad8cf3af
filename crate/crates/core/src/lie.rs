//! Compact Lie algebras presented by structure constants.
//!
//! An algebra is stored as the rank-3 array `c[i][j][k]` with
//! `[e_i, e_j] = sum_k c[i][j][k] e_k`, relative to a basis that is
//! orthonormal for the fixed Ad-invariant inner product `Q`. Keeping `Q`
//! equal to the identity matrix turns Ad-invariance,
//! `Q([X,Y],Z) = Q(X,[Y,Z])`, into the pure index identity
//! `c[i][j][k] = c[j][k][i]`, and makes all orthogonal decompositions
//! plain Euclidean ones.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Real;

/// Default tolerance for the algebra identities (antisymmetry, Jacobi,
/// Ad-invariance). Catalog algebras satisfy them exactly.
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-12;

/// Default singular-value-style cutoff deciding subspace ranks.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// A compact Lie algebra with structure constants in a `Q`-orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraModel<S> {
    dim: usize,
    label: String,
    /// Flattened `c[(i*dim + j)*dim + k]`.
    constants: Vec<S>,
}

impl<S: Real> LieAlgebraModel<S> {
    /// Builds an algebra from sparse structure-constant triples
    /// `(i, j, k, value)`. Entries not listed are zero; both orientations of
    /// each bracket must be listed explicitly (nothing is antisymmetrized
    /// here -- `validate` reports violations instead).
    pub fn from_triples(
        dim: usize,
        label: impl Into<String>,
        triples: &[(usize, usize, usize, S)],
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "algebra dimension must be positive".into(),
            ));
        }
        let mut constants = vec![S::zero(); dim * dim * dim];
        for &(i, j, k, v) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidParameter(format!(
                    "structure constant index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            constants[(i * dim + j) * dim + k] = v;
        }
        Ok(Self {
            dim,
            label: label.into(),
            constants,
        })
    }

    /// The abelian algebra `t^dim` (all brackets zero).
    pub fn abelian(dim: usize, label: impl Into<String>) -> Self {
        Self {
            dim,
            label: label.into(),
            constants: vec![S::zero(); dim * dim * dim],
        }
    }

    /// su(2) with the cyclic constants `[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2`.
    pub fn su2() -> Self {
        Self::with_cyclic_constants("su2")
    }

    /// so(3): identical constants to su(2), distinct label.
    pub fn so3() -> Self {
        Self::with_cyclic_constants("so3")
    }

    fn with_cyclic_constants(label: &str) -> Self {
        let one = S::one();
        Self::from_triples(
            3,
            label,
            &[
                (0, 1, 2, one),
                (1, 0, 2, -one),
                (1, 2, 0, one),
                (2, 1, 0, -one),
                (2, 0, 1, one),
                (0, 2, 1, -one),
            ],
        )
        .expect("static constants")
    }

    /// Direct sum, with `other`'s basis appended after `self`'s.
    pub fn direct_sum(&self, other: &Self, label: impl Into<String>) -> Self {
        let dim = self.dim + other.dim;
        let mut sum = Self {
            dim,
            label: label.into(),
            constants: vec![S::zero(); dim * dim * dim],
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    sum.constants[(i * dim + j) * dim + k] = self.constant(i, j, k);
                }
            }
        }
        let o = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    sum.constants[((i + o) * dim + j + o) * dim + k + o] = other.constant(i, j, k);
                }
            }
        }
        sum
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> S {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero structure constants as sparse triples.
    pub fn triples(&self) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let v = self.constant(i, j, k);
                    if v != S::zero() {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<S> {
        (0..self.dim).map(|k| self.constant(i, j, k)).collect()
    }

    /// `[X, Y]` by bilinear expansion over the structure constants.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let mut out = vec![S::zero(); self.dim];
        for i in 0..self.dim {
            if x[i] == S::zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j] == S::zero() {
                    continue;
                }
                let xy = x[i] * y[j];
                for k in 0..self.dim {
                    out[k] += xy * self.constant(i, j, k);
                }
            }
        }
        Ok(out)
    }

    /// `Q(X, Y)` -- the Euclidean dot product, since the basis is
    /// `Q`-orthonormal.
    pub fn inner(&self, x: &[S], y: &[S]) -> S {
        linalg::dot(x, y)
    }

    /// Checks antisymmetry, the Jacobi identity and Ad-invariance of `Q` on
    /// all basis tuples, reporting the largest violation of each.
    pub fn validate(&self, tol: f64) -> AlgebraValidation {
        let d = self.dim;
        let mut antisym = S::zero();
        let mut ad_inv = S::zero();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = (self.constant(i, j, k) + self.constant(j, i, k)).abs();
                    if v > antisym {
                        antisym = v;
                    }
                    // Q([e_i,e_j],e_k) = Q(e_i,[e_j,e_k])  <=>  c[i][j][k] = c[j][k][i]
                    let w = (self.constant(i, j, k) - self.constant(j, k, i)).abs();
                    if w > ad_inv {
                        ad_inv = w;
                    }
                }
            }
        }
        let mut jacobi = S::zero();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j], component l
                        let mut acc = S::zero();
                        for m in 0..d {
                            acc += self.constant(i, j, m) * self.constant(m, k, l)
                                + self.constant(j, k, m) * self.constant(m, i, l)
                                + self.constant(k, i, m) * self.constant(m, j, l);
                        }
                        let v = acc.abs();
                        if v > jacobi {
                            jacobi = v;
                        }
                    }
                }
            }
        }
        AlgebraValidation {
            max_antisymmetry: antisym.as_f64(),
            max_jacobi: jacobi.as_f64(),
            max_ad_invariance: ad_inv.as_f64(),
            tol,
        }
    }

    /// Span of all brackets of basis pairs, i.e. `[g, g]`.
    pub fn derived_subalgebra(&self, rank_tol: f64) -> Subspace<S> {
        let mut candidates = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                candidates.push(self.bracket_basis(i, j));
            }
        }
        Subspace::span(self.dim, &candidates, rank_tol)
    }

    /// Null space of `X -> ad_X`, i.e. `Z(g)`: the orthogonal complement of
    /// the row space of the adjoint-action matrix.
    pub fn center(&self, rank_tol: f64) -> Subspace<S> {
        // row (j,k): X -> sum_i c[i][j][k] X_i
        let mut rows = Vec::new();
        for j in 0..self.dim {
            for k in 0..self.dim {
                rows.push(
                    (0..self.dim)
                        .map(|i| self.constant(i, j, k))
                        .collect::<Vec<_>>(),
                );
            }
        }
        let row_space = Subspace::span(self.dim, &rows, rank_tol);
        self.orthogonal_complement(&row_space, rank_tol)
            .expect("row space is a subspace by construction")
    }

    /// `Q`-orthogonal complement of `s` inside this algebra.
    pub fn orthogonal_complement(&self, s: &Subspace<S>, rank_tol: f64) -> Result<Subspace<S>> {
        if s.ambient_dim != self.dim {
            return Err(Error::NotASubspace(format!(
                "ambient dimension {} does not match algebra dimension {}",
                s.ambient_dim, self.dim
            )));
        }
        let defect = linalg::orthonormality_defect(&s.basis).as_f64();
        if defect > rank_tol {
            return Err(Error::NotASubspace(format!(
                "basis is not orthonormal (defect {defect:.3e})"
            )));
        }
        let mut basis = s.basis.clone();
        let mut complement = Vec::new();
        for i in 0..self.dim {
            let e = linalg::basis_vector(self.dim, i);
            let r = linalg::orthogonal_residual(&basis, &e);
            let n = linalg::norm(&r);
            if n > S::of(rank_tol) {
                let unit = linalg::scaled(&r, S::one() / n);
                basis.push(unit.clone());
                complement.push(unit);
            }
        }
        debug_assert_eq!(s.dim() + complement.len(), self.dim);
        Ok(Subspace {
            ambient_dim: self.dim,
            basis: complement,
        })
    }

    /// The decomposition `g = [g,g] \u{2295} Z(g)` available for compact-type
    /// algebras. Errors when the two pieces do not fill the algebra, which
    /// signals non-reductive input. Sufficiency of the compactness
    /// assumptions themselves is not (and cannot be) checked here.
    pub fn split_compact(&self, rank_tol: f64) -> Result<(Subspace<S>, Subspace<S>)> {
        let derived = self.derived_subalgebra(rank_tol);
        let center = self.center(rank_tol);
        if derived.dim() + center.dim() != self.dim {
            return Err(Error::NonReductive);
        }
        let mut worst = S::zero();
        for d in &derived.basis {
            for z in &center.basis {
                let v = linalg::dot(d, z).abs();
                if v > worst {
                    worst = v;
                }
            }
        }
        if worst > S::of(rank_tol) {
            return Err(Error::NonReductive);
        }
        Ok((derived, center))
    }

    /// Abelian means the center is everything (decided at rank tolerance).
    pub fn is_abelian(&self, rank_tol: f64) -> bool {
        self.center(rank_tol).dim() == self.dim
    }
}

/// Validation report for the algebra identities.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AlgebraValidation {
    pub max_antisymmetry: f64,
    pub max_jacobi: f64,
    pub max_ad_invariance: f64,
    pub tol: f64,
}

impl AlgebraValidation {
    pub fn passes(&self) -> bool {
        self.max_antisymmetry <= self.tol
            && self.max_jacobi <= self.tol
            && self.max_ad_invariance <= self.tol
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.max_antisymmetry > self.tol {
            v.push(format!(
                "antisymmetry violated by {:.3e}",
                self.max_antisymmetry
            ));
        }
        if self.max_jacobi > self.tol {
            v.push(format!(
                "Jacobi identity violated by {:.3e}",
                self.max_jacobi
            ));
        }
        if self.max_ad_invariance > self.tol {
            v.push(format!(
                "Ad-invariance of Q violated by {:.3e}",
                self.max_ad_invariance
            ));
        }
        v
    }
}

/// A subspace of a Lie algebra, held as a `Q`-orthonormal basis in the
/// ambient coordinates. Bases are canonicalized by Gram-Schmidt with
/// lowest-index-first pivoting, so equal subspaces built from the same
/// generators come out with identical bases.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<S> {
    ambient_dim: usize,
    basis: Vec<Vec<S>>,
}

impl<S: Real> Subspace<S> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| linalg::basis_vector(ambient_dim, i))
            .collect();
        Self { ambient_dim, basis }
    }

    /// Orthonormalized span of `vectors`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<S>], rank_tol: f64) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        Self {
            ambient_dim,
            basis: linalg::gram_schmidt(vectors, S::of(rank_tol)),
        }
    }

    /// Wraps an already orthonormal basis, erroring if it is not one.
    pub fn from_orthonormal(ambient_dim: usize, basis: Vec<Vec<S>>, tol: f64) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::NotASubspace("basis vector length mismatch".into()));
        }
        let s = Self { ambient_dim, basis };
        let defect = linalg::orthonormality_defect(&s.basis).as_f64();
        if defect > tol {
            return Err(Error::NotASubspace(format!(
                "basis is not orthonormal (defect {defect:.3e})"
            )));
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    /// Residual norm of `v` against this subspace.
    pub fn residual_norm(&self, v: &[S]) -> S {
        linalg::norm(&linalg::orthogonal_residual(&self.basis, v))
    }

    pub fn contains_vector(&self, v: &[S], tol: f64) -> bool {
        self.residual_norm(v) <= S::of(tol) * (S::one() + linalg::norm(v))
    }

    pub fn contains(&self, other: &Self, tol: f64) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v, tol))
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.ambient_dim];
        for b in &self.basis {
            linalg::axpy(&mut out, linalg::dot(v, b), b);
        }
        out
    }

    /// Max bracket residual `max_{i<=j} |[b_i,b_j] - proj([b_i,b_j])|`; zero
    /// (to tolerance) iff the subspace is a subalgebra.
    pub fn subalgebra_defect(&self, algebra: &LieAlgebraModel<S>) -> Result<S> {
        if self.ambient_dim != algebra.dim() {
            return Err(Error::NotASubspace("ambient dimension mismatch".into()));
        }
        let mut worst = S::zero();
        for (i, x) in self.basis.iter().enumerate() {
            for y in &self.basis[i..] {
                let br = algebra.bracket(x, y)?;
                let r = self.residual_norm(&br);
                if r > worst {
                    worst = r;
                }
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type L = LieAlgebraModel<f64>;

    #[test]
    fn torus_bracket_vanishes() {
        let t2 = L::abelian(2, "t2");
        let b = t2.bracket(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(b, vec![0.0, 0.0]);
    }

    #[test]
    fn su2_bracket_cyclic() {
        let su2 = L::su2();
        let b = su2.bracket(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(b, vec![0.0, 0.0, 1.0]);
        // [X, X] = 0
        let z = su2.bracket(&[0.3, -0.2, 0.9], &[0.3, -0.2, 0.9]).unwrap();
        assert!(linalg::norm(&z) < 1e-15);
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let su2 = L::su2();
        assert!(su2.bracket(&[1.0, 0.0], &[0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn su2_validates_and_perturbation_fails() {
        let su2 = L::su2();
        assert!(su2.validate(1e-12).passes());

        let mut triples = su2.triples();
        for t in &mut triples {
            if (t.0, t.1, t.2) == (0, 1, 2) {
                t.3 += 0.1;
            }
            if (t.0, t.1, t.2) == (1, 0, 2) {
                t.3 -= 0.1;
            }
        }
        let bad = L::from_triples(3, "su2-perturbed", &triples).unwrap();
        let report = bad.validate(1e-12);
        assert!(!report.passes());
        // antisymmetry was preserved; Jacobi or Ad-invariance must catch it
        assert!(report.max_antisymmetry <= 1e-12);
        assert!(report.max_jacobi > 1e-12 || report.max_ad_invariance > 1e-12);
    }

    #[test]
    fn t3_validates() {
        assert!(L::abelian(3, "t3").validate(1e-12).passes());
    }

    #[test]
    fn derived_and_center() {
        let t3 = L::abelian(3, "t3");
        assert_eq!(t3.derived_subalgebra(1e-9).dim(), 0);
        assert_eq!(t3.center(1e-9).dim(), 3);

        let su2 = L::su2();
        assert_eq!(su2.derived_subalgebra(1e-9).dim(), 3);
        assert_eq!(su2.center(1e-9).dim(), 0);

        let mixed = su2.direct_sum(&L::abelian(1, "t1"), "su2+t1");
        let derived = mixed.derived_subalgebra(1e-9);
        let center = mixed.center(1e-9);
        assert_eq!(derived.dim(), 3);
        assert_eq!(center.dim(), 1);
        assert!(derived.contains_vector(&[0.0, 1.0, 0.0, 0.0], 1e-9));
        assert!(center.contains_vector(&[0.0, 0.0, 0.0, 1.0], 1e-9));
    }

    #[test]
    fn complement_cases() {
        let su2 = L::su2();
        let zero = Subspace::zero(3);
        assert_eq!(su2.orthogonal_complement(&zero, 1e-9).unwrap().dim(), 3);

        let e3 = Subspace::span(3, &[vec![0.0, 0.0, 1.0]], 1e-9);
        let c = su2.orthogonal_complement(&e3, 1e-9).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains_vector(&[1.0, 0.0, 0.0], 1e-9));
        assert!(c.contains_vector(&[0.0, 1.0, 0.0], 1e-9));

        // t^2 with the diagonal line: complement is the antidiagonal
        let t2 = L::abelian(2, "t2");
        let diag = Subspace::span(2, &[vec![1.0, 1.0]], 1e-9);
        let anti = t2.orthogonal_complement(&diag, 1e-9).unwrap();
        assert_eq!(anti.dim(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(anti.contains_vector(&[s, -s], 1e-9));
    }

    #[test]
    fn complement_rejects_non_subspaces() {
        let su2 = L::su2();
        // wrong ambient dimension
        let s = Subspace::span(2, &[vec![1.0, 0.0]], 1e-9);
        assert!(matches!(
            su2.orthogonal_complement(&s, 1e-9),
            Err(Error::NotASubspace(_))
        ));
        // non-orthonormal basis smuggled in
        let bad = Subspace::from_orthonormal(3, vec![vec![1.0, 1.0, 0.0]], 1e-9);
        assert!(bad.is_err());
    }

    #[test]
    fn split_compact_cases() {
        let (d, z) = L::abelian(4, "t4").split_compact(1e-9).unwrap();
        assert_eq!((d.dim(), z.dim()), (0, 4));

        let (d, z) = L::su2().split_compact(1e-9).unwrap();
        assert_eq!((d.dim(), z.dim()), (3, 0));

        let sum = L::su2().direct_sum(&L::abelian(2, "t2"), "su2+t2");
        let (d, z) = sum.split_compact(1e-9).unwrap();
        assert_eq!((d.dim(), z.dim()), (3, 2));
    }

    #[test]
    fn non_reductive_input_rejected() {
        // 2-dim algebra [e1,e2] = e2: solvable, not compact-type. Derived =
        // span(e2) and center = 0, so the dimensions cannot sum.
        let aff = L::from_triples(2, "aff(1)", &[(0, 1, 1, 1.0), (1, 0, 1, -1.0)]).unwrap();
        assert!(matches!(aff.split_compact(1e-9), Err(Error::NonReductive)));
    }
}
