//! The four curvature functions of the warped metric
//! `dt^2 + f_0^2 Q|p0 + f_1^2 Q|p1 + f_2^2 Q|p2 + Q|m`, plus the Ricci
//! curvature in the fixed directions `A in m`.
//!
//! With `F_0 = abc f_0`, `F_1 = bc f_1`, `F_2 = c f_2` and
//! `d_i = dim p_i`, the metric has non-negative Ricci curvature whenever
//! `f_i^2 <= 2` and the four functions below are non-negative:
//!
//! ```text
//! ric_t = - sum_i d_i F_i''/F_i
//! ric_0 = (d1/F1^4 + d2/F2^4) F0^2 - (d1 F1'/F1 + d2 F2'/F2) F0'/F0 - F0''/F0
//! ric_1 = [d0 F0^2/F1^2 + (d1-1)(4 - 3 F0^2/F1^2 - F1'^2)]/F1^2 + d2 F1^2/F2^4
//!         - (d0 F0'/F0 + d2 F2'/F2) F1'/F1 - F1''/F1
//! ric_2 = [d0 (3 - 2 F0^2/F2^2) + d1 (3 - 2 F1^2/F2^2) + (d2-1)(1 - F2'^2)]/F2^2
//!         - (d0 F0'/F0 + d1 F1'/F1) F2'/F2 - F2''/F2
//! ```
//!
//! Terms weighted by a vanishing `d_i` drop out. On a shared `c sin(t/c)`
//! segment every combination above collapses to an exact multiple of
//! `1/c^2`, which is how the removable singularities at `t = 0` are
//! evaluated: no individual `F'/F` is ever formed there.

use crate::error::{Error, Result};
use crate::lie::{LieAlgebraModel, Subspace};
use crate::linalg;
use crate::scalar::Real;
use crate::warp::profile::WarpProfile;

/// Values of the four curvature functions at one grid point. Slots with
/// `d_i = 0` carry no curvature function and stay `None`.
#[derive(Debug, Clone, Copy)]
pub struct RicValues<S> {
    pub ric_t: S,
    pub ric: [Option<S>; 3],
}

struct SlotData<S> {
    f: S,
    d1: S,
    d2: S,
    trig_c: Option<S>,
}

impl<S: Real> SlotData<S> {
    /// `-F''/F`; exactly `1/c^2` on a trig piece
    fn neg_dd_over_f(&self) -> S {
        match self.trig_c {
            Some(c) => (c * c).recip(),
            None => -self.d2 / self.f,
        }
    }
}

fn shared_trig<S: Real>(x: &SlotData<S>, y: &SlotData<S>) -> Option<S> {
    match (x.trig_c, y.trig_c) {
        (Some(a), Some(b)) if a == b => Some(a),
        _ => None,
    }
}

/// `F_i^2/F_j^4 - (F_j'/F_j)(F_i'/F_i)`, which is `1/c^2` when both slots
/// share the trig piece.
fn cross<S: Real>(i: &SlotData<S>, j: &SlotData<S>) -> S {
    if let Some(c) = shared_trig(i, j) {
        return (c * c).recip();
    }
    let fj2 = j.f * j.f;
    i.f * i.f / (fj2 * fj2) - (j.d1 / j.f) * (i.d1 / i.f)
}

/// Evaluates the four curvature functions at `t`.
pub fn ric_functions<S: Real>(p: &WarpProfile<S>, t: S) -> Result<RicValues<S>> {
    let jets = p.eval(t)?;
    let mut slots = Vec::with_capacity(3);
    for i in 0..3 {
        let s = SlotData {
            f: jets.f[i],
            d1: jets.d1[i],
            d2: jets.d2[i],
            trig_c: jets.trig_c[i],
        };
        if p.active[i] && s.trig_c.is_none() && s.f <= S::zero() {
            return Err(Error::Profile(format!(
                "degenerate profile: F_{i}({t}) = {} is not positive",
                s.f
            )));
        }
        slots.push(s);
    }
    let d = [
        S::of(p.dims[0] as f64),
        S::of(p.dims[1] as f64),
        S::of(p.dims[2] as f64),
    ];
    let active = p.active;

    let mut ric_t = S::zero();
    for i in 0..3 {
        if active[i] {
            ric_t += d[i] * slots[i].neg_dd_over_f();
        }
    }

    let mut ric = [None, None, None];

    if active[0] {
        let mut acc = S::zero();
        for j in [1, 2] {
            if active[j] {
                acc += d[j] * cross(&slots[0], &slots[j]);
            }
        }
        ric[0] = Some(acc + slots[0].neg_dd_over_f());
    }

    if active[1] {
        let s1 = &slots[1];
        let bracket = if shared_trig(&slots[0], s1).is_some() {
            (d[1] - S::one()) / (s1.trig_c.unwrap() * s1.trig_c.unwrap())
        } else {
            let ratio = slots[0].f * slots[0].f / (s1.f * s1.f);
            (d[1] - S::one()) * (S::of(4.0) - S::of(3.0) * ratio - s1.d1 * s1.d1) / (s1.f * s1.f)
        };
        let mut acc = bracket;
        if active[0] {
            acc += d[0] * cross(&slots[0], s1);
        }
        if active[2] {
            acc += d[2] * cross(s1, &slots[2]);
        }
        ric[1] = Some(acc + s1.neg_dd_over_f());
    }

    if active[2] {
        let s2 = &slots[2];
        let mut acc = S::zero();
        for j in [0, 1] {
            if !active[j] {
                continue;
            }
            let sj = &slots[j];
            acc += if let Some(c) = shared_trig(sj, s2) {
                d[j] / (c * c)
            } else {
                let ratio = sj.f * sj.f / (s2.f * s2.f);
                d[j] * ((S::of(3.0) - S::of(2.0) * ratio) / (s2.f * s2.f)
                    - (sj.d1 / sj.f) * (s2.d1 / s2.f))
            };
        }
        acc += match s2.trig_c {
            Some(c) => (d[2] - S::one()) / (c * c),
            None => (d[2] - S::one()) * (S::one() - s2.d1 * s2.d1) / (s2.f * s2.f),
        };
        ric[2] = Some(acc + s2.neg_dd_over_f());
    }

    Ok(RicValues { ric_t, ric })
}

/// The Ricci curvature of the orbit-space direction `T = d/dt`.
pub fn ric_t_component<S: Real>(p: &WarpProfile<S>, t: S) -> Result<S> {
    Ok(ric_functions(p, t)?.ric_t)
}

/// The Q-orthogonal block structure `g = h + p0 + p1 + p2 + m` underlying
/// the warped metric, with `h + p0 + p1 + p2 = k`.
#[derive(Debug, Clone)]
pub struct BlockSplitting<S> {
    pub algebra: LieAlgebraModel<S>,
    pub h: Subspace<S>,
    pub p: [Subspace<S>; 3],
    pub m: Subspace<S>,
}

impl<S: Real> BlockSplitting<S> {
    /// Checks mutual orthogonality, the dimension count, and that
    /// `k = h + p0 + p1 + p2` is a subalgebra.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.algebra.dim();
        let parts: Vec<&Subspace<S>> = std::iter::once(&self.h)
            .chain(self.p.iter())
            .chain(std::iter::once(&self.m))
            .collect();
        let total: usize = parts.iter().map(|s| s.dim()).sum();
        if total != n {
            return Err(Error::InvalidParameter(format!(
                "block dimensions sum to {total}, algebra has dimension {n}"
            )));
        }
        for s in &parts {
            if s.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: s.ambient_dim(),
                });
            }
        }
        let t = S::of(tol);
        for (i, a) in parts.iter().enumerate() {
            for b in parts.iter().skip(i + 1) {
                for x in a.basis() {
                    for y in b.basis() {
                        if linalg::dot(x, y).abs() > t {
                            return Err(Error::InvalidParameter(
                                "blocks are not mutually Q-orthogonal".into(),
                            ));
                        }
                    }
                }
            }
        }
        let mut k_vectors: Vec<Vec<S>> = Vec::new();
        k_vectors.extend_from_slice(self.h.basis());
        for p in &self.p {
            k_vectors.extend_from_slice(p.basis());
        }
        let k = Subspace::span(n, &k_vectors, tol);
        let defect = k.subalgebra_defect(&self.algebra)?;
        if defect > t {
            return Err(Error::InvalidParameter(format!(
                "h + p0 + p1 + p2 is not a subalgebra (defect {:.3e})",
                defect.as_f64()
            )));
        }
        Ok(())
    }

    fn project_norm_sq(space: &Subspace<S>, v: &[S]) -> S {
        let p = space.project(v);
        linalg::dot(&p, &p)
    }

    /// `Ric(A)` for `A in m`:
    ///
    /// ```text
    /// sum_k ( |[A,e_k]_h|^2 + 1/4 |[A,e_k]_m|^2
    ///         + sum_i (1 - f_i^2/2) |[A,e_k]_{p_i}|^2 )
    /// ```
    ///
    /// over an orthonormal basis `(e_k)` of `m`; non-negative whenever
    /// `f_i^2 <= 2`.
    pub fn ric_a(&self, a: &[S], f: [S; 3], tol: f64) -> Result<S> {
        if a.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.algebra.dim(),
                got: a.len(),
            });
        }
        if !self.m.contains_vector(a, tol) {
            return Err(Error::InvalidParameter("A does not lie in m".into()));
        }
        let half = S::of(0.5);
        let quarter = S::of(0.25);
        let mut total = S::zero();
        for e in self.m.basis() {
            let br = self.algebra.bracket(a, e)?;
            total += Self::project_norm_sq(&self.h, &br);
            total += quarter * Self::project_norm_sq(&self.m, &br);
            for i in 0..3 {
                let weight = S::one() - half * f[i] * f[i];
                total += weight * Self::project_norm_sq(&self.p[i], &br);
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::warp::profile::{build_gz_profile, build_modified_profile};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn round_sphere_reduction_is_exact() {
        // a = b = 1, d = (1,1,1), all F_i = sin: the unit round S^4 with
        // Ricci = 3 in every direction, exactly.
        let p = build_gz_profile(1.0, 1.0, 1.0, 1, 1, 1, 10.0).unwrap();
        for k in 1..1000 {
            let t = FRAC_PI_2 * k as f64 / 1000.0;
            let v = ric_functions(&p, t).unwrap();
            assert_eq!(v.ric_t, 3.0);
            for i in 0..3 {
                assert_eq!(v.ric[i].unwrap(), 3.0);
            }
        }
        // general c: Ricci = 3/c^2
        let p = build_gz_profile(1.0, 1.0, 2.0, 1, 1, 1, 10.0).unwrap();
        let v = ric_functions(&p, 1.3).unwrap();
        assert_eq!(v.ric_t, 0.75);
        assert_eq!(v.ric[1].unwrap(), 0.75);
    }

    #[test]
    fn degeneration_to_single_block() {
        // d = (0,0,1): ric_t = ric_2 = -F2''/F2, other slots inactive
        let p = build_gz_profile(1.0, 1.0, 1.0, 0, 0, 1, 10.0).unwrap();
        for k in 1..100 {
            let t = FRAC_PI_2 * k as f64 / 100.0;
            let v = ric_functions(&p, t).unwrap();
            assert_eq!(v.ric_t, 1.0);
            assert_eq!(v.ric, [None, None, Some(1.0)]);
        }
        // d = (0,0,3): radial component triples
        let p = build_gz_profile(1.0, 1.0, 1.0, 0, 0, 3, 10.0).unwrap();
        let v = ric_functions(&p, 0.7).unwrap();
        assert_eq!(v.ric_t, 3.0);
    }

    #[test]
    fn radial_component_accessor() {
        // d = (0,0,1), F2 = sin: Ric(T) = -F2''/F2 = 1, also at t = pi/4
        let p = build_gz_profile(1.0, 1.0, 1.0, 0, 0, 1, 10.0).unwrap();
        assert_eq!(ric_t_component(&p, std::f64::consts::FRAC_PI_4).unwrap(), 1.0);
        // constant region of the (1/2, 1/2) profile: Ric(T) = 0
        let p = build_gz_profile(0.5, 0.5, 1.0, 1, 1, 1, 10.0).unwrap();
        assert_eq!(ric_t_component(&p, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn constant_region_values() {
        // GZ profile beyond pi c/2: ric_t = 0 and e.g.
        // ric_0 = (1/F1^4 + 1/F2^4) F0^2 = (16 + 1)/16 with F = (1/4, 1/2, 1)
        let p = build_gz_profile(0.5, 0.5, 1.0, 1, 1, 1, 10.0).unwrap();
        let v = ric_functions(&p, 3.0).unwrap();
        assert_eq!(v.ric_t, 0.0);
        assert_eq!(v.ric[0].unwrap(), 1.0625);
        assert_eq!(v.ric[1].unwrap(), 1.25);
        assert_eq!(v.ric[2].unwrap(), 5.375);
    }

    #[test]
    fn rational_tail_curvature_sign() {
        let p = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.05, 10.0).unwrap();
        let j = p.eval(5.0).unwrap();
        for i in 0..3 {
            assert!(j.d2[i] < 0.0);
        }
        let v = ric_functions(&p, 5.0).unwrap();
        assert!(v.ric_t > 0.0);
    }

    fn su2_chain_splitting() -> BlockSplitting<f64> {
        // k = span(e1) as p2, m = span(e2, e3)
        let su2 = LieAlgebraModel::su2();
        BlockSplitting {
            algebra: su2,
            h: Subspace::zero(3),
            p: [
                Subspace::zero(3),
                Subspace::zero(3),
                Subspace::span(3, &[vec![1.0, 0.0, 0.0]], 1e-9),
            ],
            m: Subspace::span(3, &[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]], 1e-9),
        }
    }

    #[test]
    fn ric_a_su2_chain() {
        let s = su2_chain_splitting();
        s.validate(1e-9).unwrap();
        // [e2, e3] = e1 lands in p2: Ric(e2) = 1 - f2^2/2
        for f2 in [0.0, 0.3, 1.0] {
            let v = s.ric_a(&[0.0, 1.0, 0.0], [0.0, 0.0, f2], 1e-9).unwrap();
            assert!((v - (1.0 - 0.5 * f2 * f2)).abs() < 1e-12);
        }
        // A outside m rejected
        assert!(s.ric_a(&[1.0, 0.0, 0.0], [0.0; 3], 1e-9).is_err());
    }

    #[test]
    fn ric_a_abelian_vanishes() {
        let t3 = LieAlgebraModel::abelian(3, "t3");
        let s = BlockSplitting {
            algebra: t3,
            h: Subspace::zero(3),
            p: [
                Subspace::zero(3),
                Subspace::zero(3),
                Subspace::span(3, &[vec![1.0, 0.0, 0.0]], 1e-9),
            ],
            m: Subspace::span(3, &[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]], 1e-9),
        };
        s.validate(1e-9).unwrap();
        let v = s.ric_a(&[0.0, 0.6, -0.8], [0.5, 0.5, 0.5], 1e-9).unwrap();
        assert_eq!(v, 0.0);
    }
}
