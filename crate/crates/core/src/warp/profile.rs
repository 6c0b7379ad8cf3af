//! Warping-function profiles: the sine-then-constant construction giving
//! non-negative Ricci curvature, and the modified construction whose
//! concave rational tails force uniformly positive scalar curvature.
//!
//! Each radius function `F_i` is piecewise analytic. The profile keeps three
//! slots `(F_0, F_1, F_2)` scaled so that `F_0 = a b c f_0`, `F_1 = b c f_1`,
//! `F_2 = c f_2` with `f_i in [0, 1]`; a slot whose block dimension `d_i`
//! vanishes is aliased to the next one, which makes every displayed curvature
//! formula degenerate correctly without special cases.
//!
//! Smoothing replaces each corner by a window on which the second derivative
//! is prescribed directly:
//!
//! ```text
//! w = [(1 - chi) L'' + chi R''] * (1 + alpha P1 + beta P2) - gap * rho
//! ```
//!
//! where `chi` is a C^2 monotone step, `rho` a symmetric C^2 kernel carrying
//! the slope gap of the corner, and `(alpha, beta)` are solved so that the
//! twice-integrated `w` matches value and slope of the right piece exactly.
//! Because the correction is multiplicative on the (non-positive) curvature
//! blend and the kernel term is non-positive, concavity survives smoothing
//! whenever the solved multiplier stays positive; the verification report
//! audits the sign of the result on the evaluation grid either way.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::warp::gauss;

/// One analytic piece of a radius function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece<S> {
    /// `c sin(t/c)`
    Trig { c: S },
    /// constant
    Const { value: S },
    /// `limit - kappa / (t + lambda)`, increasing and strictly concave
    Rational { limit: S, kappa: S, lambda: S },
}

impl<S: Real> Piece<S> {
    pub fn value(&self, t: S) -> S {
        match *self {
            Piece::Trig { c } => c * (t / c).sin(),
            Piece::Const { value } => value,
            Piece::Rational {
                limit,
                kappa,
                lambda,
            } => limit - kappa / (t + lambda),
        }
    }

    pub fn d1(&self, t: S) -> S {
        match *self {
            Piece::Trig { c } => (t / c).cos(),
            Piece::Const { .. } => S::zero(),
            Piece::Rational { kappa, lambda, .. } => {
                let s = t + lambda;
                kappa / (s * s)
            }
        }
    }

    pub fn d2(&self, t: S) -> S {
        match *self {
            Piece::Trig { c } => -(t / c).sin() / c,
            Piece::Const { .. } => S::zero(),
            Piece::Rational { kappa, lambda, .. } => {
                let s = t + lambda;
                -S::of(2.0) * kappa / (s * s * s)
            }
        }
    }
}

/// quintic C^2 monotone step on [0, 1]
fn smootherstep<S: Real>(u: S) -> S {
    u * u * u * (u * (S::of(6.0) * u - S::of(15.0)) + S::of(10.0))
}

/// `(4u(1-u))^3`: C^2 bump, max 1 at the midpoint
fn qbump<S: Real>(u: S) -> S {
    let x = S::of(4.0) * u * (S::one() - u);
    x * x * x
}

fn p1<S: Real>(u: S) -> S {
    qbump(u) * (S::one() - u)
}

fn p2<S: Real>(u: S) -> S {
    qbump(u) * u
}

/// A smoothing window replacing the corner at `tb`.
#[derive(Debug, Clone)]
pub struct BlendWindow<S> {
    pub l: S,
    pub r: S,
    pub tb: S,
    pub delta: S,
    /// slope drop `L'(tb) - R'(tb)`; positive at concave corners
    pub gap: S,
    pub alpha: S,
    pub beta: S,
    left: Piece<S>,
    right: Piece<S>,
}

impl<S: Real> BlendWindow<S> {
    fn new(left: Piece<S>, right: Piece<S>, tb: S, delta: S) -> Result<Self> {
        let (l, r) = (tb - delta, tb + delta);
        if let Piece::Rational { lambda, .. } = right {
            if l + lambda <= S::zero() {
                return Err(Error::Profile(
                    "blend window reaches the pole of a rational extension; reduce delta".into(),
                ));
            }
        }
        let mut gap = left.d1(tb) - right.d1(tb);
        // drop roundoff-level gaps at C^1 corners so the kernel term vanishes
        if gap.abs() <= S::of(1e-14) * (S::one() + left.d1(tb).abs()) {
            gap = S::zero();
        }
        let mut win = Self {
            l,
            r,
            tb,
            delta,
            gap,
            alpha: S::zero(),
            beta: S::zero(),
            left,
            right,
        };

        let h = r - l;
        let slope_target = win.right.d1(r) - win.left.d1(l);
        let value_target = win.right.value(r) - win.left.value(l) - win.left.d1(l) * h;
        let i0 = gauss::integrate(l, r, |t| win.w(t));
        let m0 = gauss::integrate(l, r, |t| (r - t) * win.w(t));
        let a11 = gauss::integrate(l, r, |t| win.base(t) * p1(win.u(t)));
        let a12 = gauss::integrate(l, r, |t| win.base(t) * p2(win.u(t)));
        let a21 = gauss::integrate(l, r, |t| (r - t) * win.base(t) * p1(win.u(t)));
        let a22 = gauss::integrate(l, r, |t| (r - t) * win.base(t) * p2(win.u(t)));
        let r1 = slope_target - i0;
        let r2 = value_target - m0;
        let det = a11 * a22 - a12 * a21;
        if det.abs() <= S::of(1e-300) {
            return Err(Error::Profile(
                "degenerate smoothing window (flat corner data)".into(),
            ));
        }
        win.alpha = (r1 * a22 - a12 * r2) / det;
        win.beta = (a11 * r2 - r1 * a21) / det;
        Ok(win)
    }

    fn u(&self, t: S) -> S {
        (t - self.l) / (self.r - self.l)
    }

    fn base(&self, t: S) -> S {
        let chi = smootherstep(self.u(t));
        (S::one() - chi) * self.left.d2(t) + chi * self.right.d2(t)
    }

    fn rho(&self, t: S) -> S {
        let x = (t - self.tb) / self.delta;
        if x.abs() >= S::one() {
            return S::zero();
        }
        let y = S::one() - x * x;
        S::of(35.0 / 32.0) / self.delta * y * y * y
    }

    /// prescribed second derivative on the window
    pub fn w(&self, t: S) -> S {
        let u = self.u(t);
        self.base(t) * (S::one() + self.alpha * p1(u) + self.beta * p2(u)) - self.gap * self.rho(t)
    }

    /// smallest value of the concavity-preserving multiplier on the window
    pub fn multiplier_min(&self) -> S {
        let mut min = S::infinity();
        for k in 0..=400 {
            let u = S::of(k as f64 / 400.0);
            let m = S::one() + self.alpha * p1(u) + self.beta * p2(u);
            if m < min {
                min = m;
            }
        }
        min
    }

    /// value, first and second derivative at `t` inside the window
    pub fn eval(&self, t: S) -> (S, S, S) {
        let g2 = self.w(t);
        let g1 = self.left.d1(self.l) + gauss::integrate(self.l, t, |s| self.w(s));
        let g0 = self.left.value(self.l)
            + self.left.d1(self.l) * (t - self.l)
            + gauss::integrate(self.l, t, |s| (t - s) * self.w(s));
        (g0, g1, g2)
    }
}

/// A piecewise analytic radius function with optional smoothing windows.
#[derive(Debug, Clone)]
pub struct PiecewiseFn<S> {
    /// piece `i` is active on `[starts[i], starts[i+1])`
    starts: Vec<S>,
    pieces: Vec<Piece<S>>,
    windows: Vec<BlendWindow<S>>,
}

impl<S: Real> PiecewiseFn<S> {
    fn new(segments: Vec<(S, Piece<S>)>) -> Self {
        let (starts, pieces) = segments.into_iter().unzip();
        Self {
            starts,
            pieces,
            windows: Vec::new(),
        }
    }

    fn piece_index(&self, t: S) -> usize {
        let mut idx = 0;
        for (i, s) in self.starts.iter().enumerate() {
            if t >= *s {
                idx = i;
            }
        }
        idx
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.starts[1..]
    }

    pub fn windows(&self) -> &[BlendWindow<S>] {
        &self.windows
    }

    fn window_at(&self, t: S) -> Option<&BlendWindow<S>> {
        self.windows.iter().find(|w| t >= w.l && t <= w.r)
    }

    /// `(value, d1, d2, unblended trig scale if applicable)`
    pub fn jets(&self, t: S) -> (S, S, S, Option<S>) {
        if let Some(w) = self.window_at(t) {
            let (v, d1, d2) = w.eval(t);
            return (v, d1, d2, None);
        }
        let p = &self.pieces[self.piece_index(t)];
        let trig = match p {
            Piece::Trig { c } => Some(*c),
            _ => None,
        };
        (p.value(t), p.d1(t), p.d2(t), trig)
    }

    fn smoothed(&self, delta: S) -> Result<Self> {
        let mut out = self.clone();
        out.windows.clear();
        if delta == S::zero() {
            return Ok(out);
        }
        for i in 1..self.pieces.len() {
            out.windows.push(BlendWindow::new(
                self.pieces[i - 1],
                self.pieces[i],
                self.starts[i],
                delta,
            )?);
        }
        Ok(out)
    }
}

/// Which construction a profile came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileVariant {
    /// sine then constant; Ricci non-negative
    GroveZiller,
    /// sine then concave rational tails; scalar curvature uniformly positive
    Modified,
}

impl ProfileVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileVariant::GroveZiller => "gz",
            ProfileVariant::Modified => "modified",
        }
    }
}

/// The three warping functions with their block dimensions and scales.
#[derive(Debug, Clone)]
pub struct WarpProfile<S> {
    pub variant: ProfileVariant,
    pub a: S,
    pub b: S,
    pub c: S,
    pub dims: [usize; 3],
    /// crossing times: `F_2(t0) = abc`, `F_2(t1) = bc`
    pub t0: S,
    pub t1: S,
    pub epsilon: Option<S>,
    pub delta: S,
    pub t_max: S,
    /// `[abc, bc, c]`, with inactive slots aliased upward
    pub scales: [S; 3],
    /// `active[i] == (dims[i] > 0)`; inactive slots alias the next function
    pub active: [bool; 3],
    /// rational-extension constants `(kappa, lambda)` per slot, when present
    pub extensions: [Option<(S, S)>; 3],
    funcs: [PiecewiseFn<S>; 3],
}

/// jets of all three radius functions at one parameter value
#[derive(Debug, Clone, Copy)]
pub struct ProfileJets<S> {
    pub f: [S; 3],
    pub d1: [S; 3],
    pub d2: [S; 3],
    /// `Some(c)` when slot `i` sits on an unblended `c sin(t/c)` piece;
    /// shared trig segments let curvature combinations cancel exactly
    pub trig_c: [Option<S>; 3],
}

fn check_common<S: Real>(a: S, b: S, c: S, dims: [usize; 3], t_max: S) -> Result<()> {
    if !(c > S::zero()) {
        return Err(Error::InvalidParameter("c must be positive".into()));
    }
    if dims.iter().sum::<usize>() == 0 {
        return Err(Error::InvalidParameter(
            "at least one block dimension must be positive".into(),
        ));
    }
    for (name, v) in [("a", a), ("b", b)] {
        if !(v >= S::zero() && v <= S::one()) {
            return Err(Error::InvalidParameter(format!(
                "{name} must lie in [0, 1], got {v}"
            )));
        }
    }
    if dims[0] > 0 && (a <= S::zero() || b <= S::zero()) {
        return Err(Error::InvalidParameter(
            "a and b must be positive when the p0 block is non-trivial".into(),
        ));
    }
    if dims[1] > 0 && b <= S::zero() {
        return Err(Error::InvalidParameter(
            "b must be positive when the p1 block is non-trivial".into(),
        ));
    }
    let half_pi_c = c * S::of(std::f64::consts::FRAC_PI_2);
    if !(t_max > half_pi_c) {
        return Err(Error::InvalidParameter(format!(
            "t_max must exceed pi*c/2 = {half_pi_c}"
        )));
    }
    Ok(())
}

/// effective scale factors: inactive slots alias upward
fn effective<S: Real>(a: S, b: S, dims: [usize; 3]) -> (S, S) {
    let ae = if dims[0] > 0 { a } else { S::one() };
    let be = if dims[1] > 0 { b } else { S::one() };
    (ae, be)
}

/// Builds the sine-then-constant profile: `F_2 = c sin(t/c)` up to
/// `pi c / 2` then constant `c`; `F_1`, `F_0` follow the sine up to the
/// crossing times `t1`, `t0` and continue with the constants `bc`, `abc`.
pub fn build_gz_profile<S: Real>(
    a: S,
    b: S,
    c: S,
    d0: usize,
    d1: usize,
    d2: usize,
    t_max: S,
) -> Result<WarpProfile<S>> {
    let dims = [d0, d1, d2];
    check_common(a, b, c, dims, t_max)?;
    let (ae, be) = effective(a, b, dims);
    let half_pi_c = c * S::of(std::f64::consts::FRAC_PI_2);
    let t0 = c * (ae * be).asin();
    let t1 = c * be.asin();
    let trig = Piece::Trig { c };

    let f2 = PiecewiseFn::new(vec![
        (S::zero(), trig),
        (half_pi_c, Piece::Const { value: c }),
    ]);
    let f1 = if dims[1] > 0 {
        PiecewiseFn::new(vec![
            (S::zero(), trig),
            (t1, Piece::Const { value: be * c }),
        ])
    } else {
        f2.clone()
    };
    let f0 = if dims[0] > 0 {
        PiecewiseFn::new(vec![
            (S::zero(), trig),
            (t0, Piece::Const { value: ae * be * c }),
        ])
    } else {
        f1.clone()
    };

    Ok(WarpProfile {
        variant: ProfileVariant::GroveZiller,
        a,
        b,
        c,
        dims,
        t0,
        t1,
        epsilon: None,
        delta: S::zero(),
        t_max,
        scales: [ae * be * c, be * c, c],
        active: [d0 > 0, d1 > 0, d2 > 0],
        extensions: [None, None, None],
        funcs: [f0, f1, f2],
    })
}

/// Rational extension `limit - kappa/(t + lambda)` matching value and slope
/// of the sine piece at `tb`.
fn rational_matched<S: Real>(limit: S, tb: S, c: S) -> Result<Piece<S>> {
    let v = c * (tb / c).sin();
    let m = (tb / c).cos();
    let excess = limit - v;
    if excess <= S::zero() || m <= S::zero() {
        return Err(Error::Profile(format!(
            "rational extension unsolvable at t = {tb}: limit excess {excess}, slope {m}"
        )));
    }
    let lambda = excess / m - tb;
    let kappa = excess * excess / m;
    Ok(Piece::Rational {
        limit,
        kappa,
        lambda,
    })
}

/// Builds the modified profile: the sine pieces stop `epsilon` early and
/// continue with strictly increasing, strictly concave rational tails
/// converging to the same limits `abc`, `bc`, `c`. The `F_2` tail is the
/// one-parameter family `c - 1/(t + lambda)` fixed by continuity; the lower
/// tails are two-parameter and match the slope as well.
pub fn build_modified_profile<S: Real>(
    a: S,
    b: S,
    c: S,
    d0: usize,
    d1: usize,
    d2: usize,
    epsilon: S,
    t_max: S,
) -> Result<WarpProfile<S>> {
    let dims = [d0, d1, d2];
    check_common(a, b, c, dims, t_max)?;
    if dims[0] > 0 && a >= S::one() {
        return Err(Error::InvalidParameter(
            "the modified construction needs a < 1".into(),
        ));
    }
    if dims[1] > 0 && b >= S::one() {
        return Err(Error::InvalidParameter(
            "the modified construction needs b < 1".into(),
        ));
    }
    let (ae, be) = effective(a, b, dims);
    let half_pi_c = c * S::of(std::f64::consts::FRAC_PI_2);
    let t0 = c * (ae * be).asin();
    let t1 = c * be.asin();
    if !(epsilon > S::zero() && epsilon < t0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, t0) = (0, {t0}), got {epsilon}"
        )));
    }
    let trig = Piece::Trig { c };

    let t_star = half_pi_c - epsilon;
    // continuity: c - 1/(t* + lambda2) = c sin(t*/c)
    let lambda2 = (c * (S::one() - (t_star / c).sin())).recip() - t_star;
    let ext2 = Piece::Rational {
        limit: c,
        kappa: S::one(),
        lambda: lambda2,
    };
    let f2 = PiecewiseFn::new(vec![(S::zero(), trig), (t_star, ext2)]);

    let mut extensions: [Option<(S, S)>; 3] = [None, None, Some((S::one(), lambda2))];
    let f1 = if dims[1] > 0 {
        let ext = rational_matched(be * c, t1 - epsilon, c)?;
        if let Piece::Rational { kappa, lambda, .. } = ext {
            extensions[1] = Some((kappa, lambda));
        }
        PiecewiseFn::new(vec![(S::zero(), trig), (t1 - epsilon, ext)])
    } else {
        extensions[1] = extensions[2];
        f2.clone()
    };
    let f0 = if dims[0] > 0 {
        let ext = rational_matched(ae * be * c, t0 - epsilon, c)?;
        if let Piece::Rational { kappa, lambda, .. } = ext {
            extensions[0] = Some((kappa, lambda));
        }
        PiecewiseFn::new(vec![(S::zero(), trig), (t0 - epsilon, ext)])
    } else {
        extensions[0] = extensions[1];
        f1.clone()
    };

    Ok(WarpProfile {
        variant: ProfileVariant::Modified,
        a,
        b,
        c,
        dims,
        t0,
        t1,
        epsilon: Some(epsilon),
        delta: S::zero(),
        t_max,
        scales: [ae * be * c, be * c, c],
        active: [d0 > 0, d1 > 0, d2 > 0],
        extensions,
        funcs: [f0, f1, f2],
    })
}

/// Replaces every corner of `p` by a C^2 blend window of half-width `delta`.
/// `delta = 0` returns the profile unchanged. Windows must not overlap each
/// other or the origin.
pub fn smooth_profile<S: Real>(p: &WarpProfile<S>, delta: S) -> Result<WarpProfile<S>> {
    if delta < S::zero() {
        return Err(Error::InvalidParameter("delta must be non-negative".into()));
    }
    let mut out = p.clone();
    out.delta = delta;
    if delta == S::zero() {
        for f in &mut out.funcs {
            f.windows.clear();
        }
        return Ok(out);
    }
    // half the minimal gap of the combined breakpoint set (with 0), after
    // deduplicating coincident corners
    let mut points: Vec<S> = vec![S::zero()];
    for f in &p.funcs {
        points.extend_from_slice(f.breakpoints());
    }
    points.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    let mut min_gap = S::infinity();
    for w in points.windows(2) {
        let gap = w[1] - w[0];
        if gap > S::of(1e-12) * (S::one() + w[1].abs()) && gap < min_gap {
            min_gap = gap;
        }
    }
    if delta + delta >= min_gap {
        return Err(Error::Profile(format!(
            "overlapping blend windows: delta {delta} must be below half the minimal breakpoint gap {min_gap}"
        )));
    }
    // alias structure must be preserved: smooth distinct functions once
    let f2 = p.funcs[2].smoothed(delta)?;
    let f1 = if p.active[1] {
        p.funcs[1].smoothed(delta)?
    } else {
        f2.clone()
    };
    let f0 = if p.active[0] {
        p.funcs[0].smoothed(delta)?
    } else {
        f1.clone()
    };
    out.funcs = [f0, f1, f2];
    Ok(out)
}

impl<S: Real> WarpProfile<S> {
    /// Analytic jets of all three radius functions at `t in [0, t_max]`.
    pub fn eval(&self, t: S) -> Result<ProfileJets<S>> {
        if !(t >= S::zero() && t <= self.t_max) {
            return Err(Error::OutOfRange {
                t: t.as_f64(),
                t_max: self.t_max.as_f64(),
            });
        }
        let mut jets = ProfileJets {
            f: [S::zero(); 3],
            d1: [S::zero(); 3],
            d2: [S::zero(); 3],
            trig_c: [None; 3],
        };
        for i in 0..3 {
            let (v, d1, d2, trig) = self.funcs[i].jets(t);
            jets.f[i] = v;
            jets.d1[i] = d1;
            jets.d2[i] = d2;
            jets.trig_c[i] = trig;
        }
        Ok(jets)
    }

    /// Uniform evaluation grid `(0, t_max]` with `grid_size` points.
    pub fn grid(&self, grid_size: usize) -> Vec<S> {
        (1..=grid_size)
            .map(|k| self.t_max * S::of(k as f64) / S::of(grid_size as f64))
            .collect()
    }

    /// All smoothing windows with their slot index.
    pub fn windows(&self) -> Vec<(usize, &BlendWindow<S>)> {
        let mut out = Vec::new();
        for (i, f) in self.funcs.iter().enumerate() {
            for w in f.windows() {
                out.push((i, w));
            }
        }
        out
    }

    /// Interior breakpoints of slot `i`.
    pub fn breakpoints(&self, slot: usize) -> &[S] {
        self.funcs[slot].breakpoints()
    }

    /// The analytic piece of slot `i` active at `t`, ignoring windows.
    pub fn piece_for_audit(&self, slot: usize, t: S) -> Piece<S> {
        let f = &self.funcs[slot];
        f.pieces[f.piece_index(t)]
    }

    /// Swaps one analytic piece out, keeping everything else. Only the test
    /// suites use this, to manufacture profiles violating the certificates.
    #[cfg(test)]
    pub(crate) fn with_replaced_piece(
        &self,
        slot: usize,
        piece_idx: usize,
        piece: Piece<S>,
    ) -> Self {
        let mut out = self.clone();
        out.funcs[slot].pieces[piece_idx] = piece;
        out
    }

    /// True when the closed interval `[lo, hi]` avoids every smoothing
    /// window and stays inside a single analytic piece of slot `i`.
    pub fn span_is_analytic(&self, slot: usize, lo: S, hi: S) -> bool {
        let f = &self.funcs[slot];
        if f.piece_index(lo) != f.piece_index(hi) {
            return false;
        }
        for w in f.windows() {
            if hi >= w.l && lo <= w.r {
                return false;
            }
        }
        true
    }
}
