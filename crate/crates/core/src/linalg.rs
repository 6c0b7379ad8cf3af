//! Small dense vector helpers. Algebra dimensions here are tiny (a handful of
//! basis vectors), so everything is plain `Vec`-based with deterministic
//! ordering rather than a linear algebra crate.

use crate::scalar::Real;

pub fn dot<S: Real>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc += *x * *y;
    }
    acc
}

pub fn norm<S: Real>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

pub fn scaled<S: Real>(a: &[S], s: S) -> Vec<S> {
    a.iter().map(|&x| x * s).collect()
}

/// a += s * b
pub fn axpy<S: Real>(a: &mut [S], s: S, b: &[S]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += s * *y;
    }
}

pub fn basis_vector<S: Real>(dim: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    v[i] = S::one();
    v
}

/// Removes from `v` its projection onto the (orthonormal) `basis`.
/// Two passes of classical Gram-Schmidt keep the residual orthogonal to
/// working precision.
pub fn orthogonal_residual<S: Real>(basis: &[Vec<S>], v: &[S]) -> Vec<S> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(&r, b);
            axpy(&mut r, -c, b);
        }
    }
    r
}

/// Orthonormalizes `candidates` in order, keeping a vector whenever its
/// residual against the span of the previously accepted ones exceeds `tol`.
/// The fixed lowest-index-first order makes the output basis reproducible.
pub fn gram_schmidt<S: Real>(candidates: &[Vec<S>], tol: S) -> Vec<Vec<S>> {
    let mut basis: Vec<Vec<S>> = Vec::new();
    for v in candidates {
        let r = orthogonal_residual(&basis, v);
        let n = norm(&r);
        if n > tol {
            basis.push(scaled(&r, S::one() / n));
        }
    }
    basis
}

/// Largest deviation of `basis` from orthonormality: max over pairs of
/// |<b_i, b_j> - delta_ij|.
pub fn orthonormality_defect<S: Real>(basis: &[Vec<S>]) -> S {
    let mut worst = S::zero();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let target = if i == j { S::one() } else { S::zero() };
            let dev = (dot(bi, bj) - target).abs();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

pub fn mat_vec<S: Real>(m: &[Vec<S>], v: &[S]) -> Vec<S> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// max |(M^T M - I)_{ij}|
pub fn orthogonality_defect<S: Real>(m: &[Vec<S>]) -> S {
    let n = m.len();
    let mut worst = S::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = S::zero();
            for row in m {
                acc += row[i] * row[j];
            }
            let target = if i == j { S::one() } else { S::zero() };
            let dev = (acc - target).abs();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let vs = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![2.0, 1.0, 0.0], // dependent on the first two
        ];
        let basis = gram_schmidt(&vs, 1e-9);
        assert_eq!(basis.len(), 2);
        assert!(orthonormality_defect(&basis) < 1e-12);
    }

    #[test]
    fn residual_is_orthogonal() {
        let basis = gram_schmidt::<f64>(&[vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]], 1e-9);
        let r = orthogonal_residual(&basis, &[0.3, -0.7, 2.0]);
        for b in &basis {
            assert!(dot(&r, b).abs() < 1e-12);
        }
    }
}
