//! Twisted super Yangians of type AIII realized through `B(u) = T(u) G T(-u)^{-1}`
//! and the coideal tensor formula, with highest-weight extraction,
//! classification criteria, reductions and an irreducibility test.

use crate::error::{Error, Result};
use crate::exactalg::{rat, rational_roots, Poly, Rat, RatFun};
use crate::glmn::ParitySeq;
use crate::superlinalg::{
    check_identity_2var, family_degree_bound, family_den, graded_basis, grid_nodes,
    proportionality, rf_apply, rf_restrict, rf_super_kron, rfmat_kernel, span_basis, GridOutcome,
    QMat, RFMatrix, SuperSpace,
};
use crate::yangian::{
    eval_family, family_neg, inverse_series_action, r_operator, site_operator, telescope, TAction,
};
use num::{One, Zero};

/// Parity sequence, signs `ε` and the optional shift `γ` of `G^{ε,γ}(u) = G^ε + γ/u`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedContext {
    pub ps: ParitySeq,
    pub eps: Vec<i8>,
    pub gamma: Option<Rat>,
}

impl TwistedContext {
    pub fn new(ps: ParitySeq, eps: Vec<i8>, gamma: Option<Rat>) -> Result<TwistedContext> {
        if eps.len() != ps.kappa() || eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Input(format!(
                "invalid ε {eps:?} for κ = {}",
                ps.kappa()
            )));
        }
        Ok(TwistedContext { ps, eps, gamma })
    }

    /// Panicking constructor for literals.
    pub fn of(s: &[i8], eps: &[i8]) -> TwistedContext {
        TwistedContext::new(ParitySeq::of(s), eps.to_vec(), None).expect("valid context")
    }

    pub fn with_gamma(&self, gamma: Option<Rat>) -> TwistedContext {
        TwistedContext {
            gamma,
            ..self.clone()
        }
    }

    pub fn kappa(&self) -> usize {
        self.ps.kappa()
    }

    pub fn eps(&self, i: usize) -> i8 {
        self.eps[i]
    }

    pub fn eps_rat(&self, i: usize) -> Rat {
        rat(self.eps[i] as i64)
    }

    /// `ϖ_k = Σ_{j ≥ k} ε_j s_j` (0-based, so `varpi(κ) = 0`).
    pub fn varpi(&self, k: usize) -> Rat {
        (k..self.kappa()).fold(Rat::zero(), |acc, j| {
            acc + rat((self.eps[j] * self.ps.s(j)) as i64)
        })
    }

    pub fn g_matrix(&self) -> QMat {
        let k = self.kappa();
        QMat::from_fn(
            k,
            k,
            |i, j| if i == j { self.eps_rat(i) } else { Rat::zero() },
        )
    }

    /// Diagonal entry `ε_a + γ/u` of `G^{ε,γ}(u)`.
    pub fn g_entry(&self, a: usize) -> RatFun {
        let e = RatFun::constant(self.eps_rat(a));
        match &self.gamma {
            Some(g) if !g.is_zero() => &e + &RatFun::new(Poly::constant(g.clone()), Poly::u()),
            _ => e,
        }
    }

    /// At most one sign change in `ε`.
    pub fn is_simple(&self) -> bool {
        self.eps.windows(2).filter(|w| w[0] != w[1]).count() <= 1
    }

    /// `2ε_i u − ε_i ρ_{i+1} + ϖ_{i+1} + c` in 0-based indexing.
    pub fn linear_factor(&self, i: usize, c: &Rat) -> Poly {
        let e = self.eps_rat(i);
        Poly::linear(
            &e * rat(2),
            -&e * self.ps.rho(i + 1) + self.varpi(i + 1) + c,
        )
    }

    fn sub(&self, range: std::ops::Range<usize>) -> TwistedContext {
        TwistedContext {
            ps: ParitySeq::of(&self.ps.values()[range.clone()]),
            eps: self.eps[range].to_vec(),
            gamma: None,
        }
    }
}

/// The family `b_ij(u)` on a super space, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct BAction {
    pub ctx: TwistedContext,
    pub space: SuperSpace,
    pub b: Vec<RFMatrix>,
}

impl BAction {
    pub fn new(ctx: TwistedContext, space: SuperSpace, b: Vec<RFMatrix>) -> Result<BAction> {
        let k = ctx.kappa();
        let d = space.dim();
        if b.len() != k * k || b.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::DimensionMismatch(
                "b_ij matrices do not match".into(),
            ));
        }
        Ok(BAction { ctx, space, b })
    }

    /// The one-dimensional module with `B(u) = G^ε`.
    pub fn constant(ctx: &TwistedContext) -> BAction {
        let k = ctx.kappa();
        let b = (0..k * k)
            .map(|x| {
                let v = if x / k == x % k {
                    ctx.eps_rat(x / k)
                } else {
                    Rat::zero()
                };
                RFMatrix::from_fn(1, 1, |_, _| RatFun::constant(v.clone()))
            })
            .collect();
        BAction {
            ctx: ctx.with_gamma(None),
            space: SuperSpace::even(1),
            b,
        }
    }

    pub fn kappa(&self) -> usize {
        self.ctx.kappa()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &RFMatrix {
        &self.b[i * self.kappa() + j]
    }

    /// `b_ij(u) → ε_i δ_ij` at infinity.
    pub fn has_eps_limit(&self) -> bool {
        let k = self.kappa();
        self.b.iter().enumerate().all(|(x, m)| {
            let target = if x / k == x % k {
                self.ctx.eps_rat(x / k)
            } else {
                Rat::zero()
            };
            (0..m.rows()).all(|p| {
                (0..m.cols()).all(|q| {
                    let want = if p == q { target.clone() } else { Rat::zero() };
                    m.get(p, q).limit_at_infinity() == Some(want)
                })
            })
        })
    }

    /// The matrix of `b_ij` has parity `|i|+|j|`.
    pub fn parities_ok(&self) -> bool {
        let k = self.kappa();
        (0..k * k).all(|x| {
            let p = self.ctx.ps.pair_parity(x / k, x % k);
            let m = &self.b[x];
            (0..m.rows()).all(|r| {
                (0..m.cols()).all(|c| {
                    m.get(r, c).is_zero() || (self.space.parity(r) + self.space.parity(c)) % 2 == p
                })
            })
        })
    }
}

/// `b_ij(u) = Σ_a g_a(u) t_ia(u) t′_aj(-u)` with `g_a = ε_a (+ γ/u)`.
pub fn b_from_t(t: &TAction, ctx: &TwistedContext) -> Result<BAction> {
    if t.ps != ctx.ps {
        return Err(Error::DimensionMismatch("parity sequences differ".into()));
    }
    let k = t.kappa();
    let d = t.dim();
    let tneg = family_neg(&inverse_series_action(t)?.t);
    let mut b = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = RFMatrix::zeros(d, d);
            for a in 0..k {
                let (x, y) = (t.get(i, a), &tneg[a * k + j]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.add(&x.mul(y).scale(&ctx.g_entry(a)));
            }
            b.push(acc);
        }
    }
    BAction::new(ctx.clone(), t.space.clone(), b)
}

/// The one-dimensional module `b_ij(u) = δ_ij (ε_i u + γ)/(u − γ)`.
pub fn c_gamma(ctx: &TwistedContext, gamma: &Rat) -> BAction {
    let k = ctx.kappa();
    let b = (0..k * k)
        .map(|x| {
            let f = if x / k == x % k {
                RatFun::new(
                    Poly::linear(ctx.eps_rat(x / k), gamma.clone()),
                    Poly::root_factor(gamma),
                )
            } else {
                RatFun::zero()
            };
            RFMatrix::from_fn(1, 1, |_, _| f.clone())
        })
        .collect();
    BAction {
        ctx: ctx.with_gamma(None),
        space: SuperSpace::even(1),
        b,
    }
}

/// Coideal action on `L ⊗ V`:
/// `b_ij ↦ Σ_{a,c} ± t_ia(u) t′_cj(-u) ⊗ b_ac(u)`.
pub fn b_tensor(l: &TAction, v: &BAction) -> Result<BAction> {
    if l.ps != v.ctx.ps {
        return Err(Error::DimensionMismatch("parity sequences differ".into()));
    }
    let ps = &l.ps;
    let k = l.kappa();
    let d = l.dim() * v.dim();
    let tneg = family_neg(&inverse_series_action(l)?.t);
    let mut b = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = RFMatrix::zeros(d, d);
            for a in 0..k {
                let x = l.get(i, a);
                if x.is_zero() {
                    continue;
                }
                for c in 0..k {
                    let (y, z) = (&tneg[c * k + j], v.get(a, c));
                    if y.is_zero() || z.is_zero() {
                        continue;
                    }
                    let pac = ps.pair_parity(a, c);
                    let mut term = rf_super_kron(&x.mul(y), &l.space, z, pac);
                    if ps.pair_parity(c, j) * pac % 2 == 1 {
                        term = term.scale(&RatFun::from_i64(-1));
                    }
                    acc = acc.add(&term);
                }
            }
            b.push(acc);
        }
    }
    BAction::new(v.ctx.clone(), l.space.tensor(&v.space), b)
}

/// Block direct sum of two modules over the same algebra.
pub fn direct_sum(x: &BAction, y: &BAction) -> Result<BAction> {
    if x.ctx.ps != y.ctx.ps || x.ctx.eps != y.ctx.eps {
        return Err(Error::DimensionMismatch("contexts differ".into()));
    }
    let (dx, dy) = (x.dim(), y.dim());
    let mut par = x.space.parities().to_vec();
    par.extend_from_slice(y.space.parities());
    let b =
        x.b.iter()
            .zip(&y.b)
            .map(|(p, q)| {
                RFMatrix::from_fn(dx + dy, dx + dy, |r, c| match (r < dx, c < dx) {
                    (true, true) => p.get(r, c).clone(),
                    (false, false) => q.get(r - dx, c - dx).clone(),
                    _ => RatFun::zero(),
                })
            })
            .collect();
    BAction::new(x.ctx.clone(), SuperSpace::new(par), b)
}

/// Outcome of [`verify_b`]. `f` is `Some` when `B(u)B(-u)` is scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct BReport {
    pub reflection: GridOutcome,
    pub f: Option<RatFun>,
    pub f_even: bool,
    pub f_central: bool,
}

impl BReport {
    pub fn passed(&self) -> bool {
        self.reflection.passed() && self.f.is_some() && self.f_even && self.f_central
    }

    /// `B(u)B(-u) = 1`.
    pub fn unitary(&self) -> bool {
        self.f.as_ref().is_some_and(|f| f.is_one())
    }
}

pub fn verify_b(b: &BAction) -> Result<BReport> {
    verify_b_opts(b, false)
}

/// Certifies the reflection equation on `W ⊗ V ⊗ V` and computes
/// `Σ_a b_ia(u) b_aj(-u)` exactly.
pub fn verify_b_opts(b: &BAction, corrupt: bool) -> Result<BReport> {
    let ps = &b.ctx.ps;
    let w = &b.space;
    let dw = w.dim();
    let refs: Vec<&RFMatrix> = b.b.iter().collect();
    let db = family_degree_bound(&refs);
    let forb = vec![family_den(&refs)];
    let op = |x: &Rat, site: usize| -> Result<QMat> {
        Ok(site_operator(ps, w, 2, site, &eval_family(&b.b, x)?))
    };
    let reflection = check_identity_2var(
        |u, v| {
            let rm = r_operator(ps, dw, &(u - v), corrupt);
            let rp = r_operator(ps, dw, &(u + v), corrupt);
            Ok(rm.mul(&op(u, 1)?).mul(&rp).mul(&op(v, 2)?))
        },
        |u, v| {
            let rm = r_operator(ps, dw, &(u - v), corrupt);
            let rp = r_operator(ps, dw, &(u + v), corrupt);
            Ok(op(v, 2)?.mul(&rp).mul(&op(u, 1)?).mul(&rm))
        },
        (db + 2, db + 2),
        &forb,
        &forb,
    )?;
    let k = b.kappa();
    let neg = family_neg(&b.b);
    let prod = crate::yangian::block_product(&b.b, &neg, k);
    let f0 = prod[0].get(0, 0).clone();
    let scalar = RFMatrix::identity(dw).scale(&f0);
    let zero = RFMatrix::zeros(dw, dw);
    let is_scalar = (0..k * k).all(|x| {
        prod[x]
            == if x / k == x % k {
                scalar.clone()
            } else {
                zero.clone()
            }
    });
    let f = is_scalar.then_some(f0);
    let f_even = f.as_ref().is_some_and(|f| f.is_even());
    // A scalar operator commutes with every b_ij; the check is kept explicit.
    let f_central = f.as_ref().is_some_and(|f| {
        let fm = RFMatrix::identity(dw).scale(f);
        b.b.iter().all(|m| fm.mul(m) == m.mul(&fm))
    });
    Ok(BReport {
        reflection,
        f,
        f_even,
        f_central,
    })
}

/// `b̃_ii(u) = (2u − ρ_{i+1}) b_ii(u) + Σ_{a>i} s_a b_aa(u)`.
pub fn b_tilde(b: &BAction, i: usize) -> RFMatrix {
    let ps = &b.ctx.ps;
    let lead = RatFun::from_poly(Poly::linear(rat(2), -ps.rho(i + 1)));
    let mut acc = b.get(i, i).scale(&lead);
    for a in i + 1..b.kappa() {
        acc = acc.add(&b.get(a, a).scale(&RatFun::constant(ps.s_rat(a))));
    }
    acc
}

/// `μ̃_i(u) = (2u − ρ_{i+1}) μ_i(u) + Σ_{a>i} s_a μ_a(u)`.
pub fn mu_tilde(ctx: &TwistedContext, mu: &[RatFun]) -> Vec<RatFun> {
    let ps = &ctx.ps;
    (0..mu.len())
        .map(|i| {
            let lead = RatFun::from_poly(Poly::linear(rat(2), -ps.rho(i + 1)));
            (i + 1..mu.len()).fold(&lead * &mu[i], |acc, a| &acc + &mu[a].scale(&ps.s_rat(a)))
        })
        .collect()
}

/// A highest ℓ-weight `μ_i(u)` for the twisted algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct BHighestWeight {
    pub ctx: TwistedContext,
    pub mu: Vec<RatFun>,
}

impl BHighestWeight {
    pub fn new(ctx: TwistedContext, mu: Vec<RatFun>) -> Result<BHighestWeight> {
        if mu.len() != ctx.kappa() {
            return Err(Error::WrongRank {
                expected: ctx.kappa(),
                got: mu.len(),
            });
        }
        for (i, m) in mu.iter().enumerate() {
            if m.limit_at_infinity() != Some(ctx.eps_rat(i)) {
                return Err(Error::Input(format!(
                    "μ_{} does not tend to ε_{}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(BHighestWeight { ctx, mu })
    }

    pub fn tilde(&self) -> Vec<RatFun> {
        mu_tilde(&self.ctx, &self.mu)
    }

    /// Ratios `μ̃_i / μ̃_{i+1}`.
    pub fn tilde_ratios(&self) -> Vec<RatFun> {
        self.tilde().windows(2).map(|w| w[0].div(&w[1])).collect()
    }

    /// The gl-weight `e_ii ↦ ½ s_i ε_i μ_i^{(1)}`.
    pub fn gl_weight(&self) -> Vec<Rat> {
        self.mu
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let c1 = m.laurent(2).map(|c| c[1].clone()).unwrap_or_else(Rat::zero);
                c1 * self.ctx.ps.s_rat(i) * self.ctx.eps_rat(i) / rat(2)
            })
            .collect()
    }
}

/// Verifies `b_ij η = 0` for `i < j` and reads off `b_ii η = μ_i η`.
pub fn highest_bweight(b: &BAction, eta: &[Rat]) -> Result<BHighestWeight> {
    let k = b.kappa();
    if eta.iter().all(|x| x.is_zero()) {
        return Err(Error::Input("zero vector".into()));
    }
    for i in 0..k {
        for j in i + 1..k {
            if rf_apply(b.get(i, j), eta).iter().any(|x| !x.is_zero()) {
                return Err(Error::NotHighest(format!(
                    "b_{}{} does not annihilate",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mu = (0..k)
        .map(|i| {
            proportionality(&rf_apply(b.get(i, i), eta), eta)
                .ok_or_else(|| Error::NotHighest(format!("b_{}{} is not diagonal", i + 1, i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BHighestWeight {
        ctx: b.ctx.clone(),
        mu,
    })
}

/// The common kernel of `b_ij(u)`, `i < j`, with its structural checks.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestSpace {
    pub basis: Vec<(Vec<Rat>, u8)>,
    pub invariant: bool,
    pub commuting: bool,
}

pub fn find_highest_space(b: &BAction) -> Result<HighestSpace> {
    let k = b.kappa();
    let upper: Vec<RFMatrix> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .map(|(i, j)| b.get(i, j).clone())
        .collect();
    let raw = if upper.is_empty() {
        (0..b.dim())
            .map(|i| crate::superlinalg::unit_vector(b.dim(), i))
            .collect()
    } else {
        rfmat_kernel(&upper)?
    };
    let basis = graded_basis(&b.space, &raw);
    if basis.is_empty() {
        return Ok(HighestSpace {
            basis,
            invariant: true,
            commuting: true,
        });
    }
    let vecs: Vec<Vec<Rat>> = basis.iter().map(|(v, _)| v.clone()).collect();
    let restricted: Result<Vec<RFMatrix>> =
        (0..k).map(|r| rf_restrict(b.get(r, r), &vecs)).collect();
    let Ok(restricted) = restricted else {
        return Ok(HighestSpace {
            basis,
            invariant: false,
            commuting: false,
        });
    };
    let refs: Vec<&RFMatrix> = restricted.iter().collect();
    let forb = [family_den(&refs)];
    let us = grid_nodes(10, &Rat::new(1.into(), 3.into()), &forb)?;
    let vs = grid_nodes(10, &Rat::new(2.into(), 3.into()), &forb)?;
    let mut commuting = true;
    'outer: for (u, v) in us.iter().zip(&vs) {
        let a: Vec<QMat> = restricted
            .iter()
            .map(|m| m.eval(u))
            .collect::<Result<_>>()?;
        let c: Vec<QMat> = restricted
            .iter()
            .map(|m| m.eval(v))
            .collect::<Result<_>>()?;
        for x in &a {
            for y in &c {
                if !x.commutator(y).is_zero() {
                    commuting = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(HighestSpace {
        basis,
        invariant: true,
        commuting,
    })
}

/// Nontriviality of the Verma module: returns the first failing 0-based
/// index, where `κ−1` refers to `μ_κ(u)μ_κ(-u) = 1`.
pub fn verma_conditions(mu: &BHighestWeight) -> Option<usize> {
    let k = mu.ctx.kappa();
    let last = &mu.mu[k - 1];
    if !(last * &last.reflect(&Rat::zero())).is_one() {
        return Some(k - 1);
    }
    let tl = mu.tilde();
    let ps = &mu.ctx.ps;
    (0..k - 1).find(|&i| {
        let h = ps.rho(i + 1);
        &tl[i] * &tl[i].reflect(&h) != &tl[i + 1] * &tl[i + 1].reflect(&h)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    SEqualEpsEqual,
    SEqualEpsDiff,
    SDiff,
}

impl CaseTag {
    pub fn of(ctx: &TwistedContext, i: usize) -> CaseTag {
        if ctx.ps.s(i) != ctx.ps.s(i + 1) {
            CaseTag::SDiff
        } else if ctx.eps(i) == ctx.eps(i + 1) {
            CaseTag::SEqualEpsEqual
        } else {
            CaseTag::SEqualEpsDiff
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::SEqualEpsEqual => "s-equal-eps-equal",
            CaseTag::SEqualEpsDiff => "s-equal-eps-diff",
            CaseTag::SDiff => "s-diff",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertStatus {
    Verified,
    /// Verify mode: the supplied witness does not satisfy the criterion.
    Rejected,
    SearchFailed,
    UndecidedIrrational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationCertificate {
    pub case: CaseTag,
    pub p: Poly,
    pub gamma: Option<Rat>,
    pub status: CertStatus,
    /// For `s-equal-eps-diff`: whether exactly one rational pair `(P, γ)` exists.
    pub unique: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rank1Mode {
    Verify { p: Poly, gamma: Option<Rat> },
    Search,
}

fn is_monic(p: &Poly) -> bool {
    !p.is_zero() && p.lc().is_one()
}

fn sign_rf(e: i64, deg: usize) -> RatFun {
    RatFun::from_i64(if deg.is_multiple_of(2) { e } else { -e })
}

/// `c P(u)/P(−u+h)` with `c = ε ε′ (−1)^{deg P}`.
fn reflected_ratio(p: &Poly, h: &Rat, e: i64) -> RatFun {
    &sign_rf(e, p.deg()) * &RatFun::new(p.clone(), p.reflect(h))
}

fn rank1_identity(ctx: &TwistedContext, r: &RatFun, p: &Poly, gamma: Option<&Rat>) -> bool {
    let s2 = ctx.ps.s_rat(1);
    if !is_monic(p) {
        return false;
    }
    match CaseTag::of(ctx, 0) {
        CaseTag::SEqualEpsEqual => {
            p.reflect(&(&s2 * rat(2))) == *p && *r == RatFun::new(p.shift(&s2), p.clone())
        }
        CaseTag::SEqualEpsDiff => {
            let Some(g) = gamma else { return false };
            p.reflect(&(&s2 * rat(2))) == *p
                && !p.eval(g).is_zero()
                && *r
                    == &RatFun::new(p.shift(&s2), p.clone())
                        * &RatFun::new(
                            Poly::linear(rat(-1), g.clone()),
                            Poly::linear(rat(1), g - &s2),
                        )
        }
        CaseTag::SDiff => {
            let e = (ctx.eps(0) * ctx.eps(1)) as i64;
            *r == reflected_ratio(p, &s2, e)
        }
    }
}

/// Candidate shifts for a linear factor `a u + b` to cancel a rational root.
fn root_candidates(r: &RatFun) -> (Vec<Rat>, Vec<Rat>, bool) {
    let nr = rational_roots(r.num());
    let dr = rational_roots(r.den());
    let split = nr.splits() && dr.splits();
    (
        nr.roots.iter().map(|x| x.0.clone()).collect(),
        dr.roots.iter().map(|x| x.0.clone()).collect(),
        split,
    )
}

/// Candidate `P` for `r = c P(u)/P(−u+h)`.
fn reflected_candidates(r: &RatFun, h: &Rat) -> Vec<Poly> {
    let base = r.num().monic().1;
    let mid = Poly::root_factor(&(h / rat(2)));
    vec![base.clone(), &base * &mid]
}

fn rank1_search(ctx: &TwistedContext, r: &RatFun) -> ClassificationCertificate {
    let case = CaseTag::of(ctx, 0);
    let s2 = ctx.ps.s_rat(1);
    let fail = |status| ClassificationCertificate {
        case,
        p: Poly::one(),
        gamma: None,
        status,
        unique: None,
    };
    match case {
        CaseTag::SEqualEpsEqual => match telescope(r, &s2) {
            Ok(Some(p)) if rank1_identity(ctx, r, &p, None) => ClassificationCertificate {
                case,
                p,
                gamma: None,
                status: CertStatus::Verified,
                unique: None,
            },
            Ok(_) => fail(CertStatus::SearchFailed),
            Err(()) => fail(CertStatus::UndecidedIrrational),
        },
        CaseTag::SEqualEpsDiff => {
            let (num_roots, den_roots, split) = root_candidates(r);
            let mut cands: Vec<Rat> = num_roots;
            cands.extend(den_roots.iter().map(|d| &s2 - d));
            let mut found: Vec<(Poly, Rat)> = Vec::new();
            for g in cands {
                if found.iter().any(|(_, h)| *h == g) {
                    continue;
                }
                let q = r * &RatFun::new(
                    Poly::linear(rat(1), &g - &s2),
                    Poly::linear(rat(-1), g.clone()),
                );
                if let Ok(Some(p)) = telescope(&q, &s2) {
                    if rank1_identity(ctx, r, &p, Some(&g)) {
                        found.push((p, g));
                    }
                }
            }
            match found.len() {
                0 if !split => fail(CertStatus::UndecidedIrrational),
                0 => fail(CertStatus::SearchFailed),
                n => {
                    let (p, g) = found.swap_remove(0);
                    ClassificationCertificate {
                        case,
                        p,
                        gamma: Some(g),
                        status: CertStatus::Verified,
                        unique: Some(n == 1),
                    }
                }
            }
        }
        CaseTag::SDiff => {
            for p in reflected_candidates(r, &s2) {
                if rank1_identity(ctx, r, &p, None) {
                    return ClassificationCertificate {
                        case,
                        p,
                        gamma: None,
                        status: CertStatus::Verified,
                        unique: None,
                    };
                }
            }
            fail(CertStatus::SearchFailed)
        }
    }
}

/// The rank-one finiteness criteria for `μ̃_1/μ̃_2`.
pub fn classify_rank1(mu: &BHighestWeight, mode: &Rank1Mode) -> Result<ClassificationCertificate> {
    let ctx = &mu.ctx;
    if ctx.kappa() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: ctx.kappa(),
        });
    }
    let r = mu.tilde_ratios().remove(0);
    match mode {
        Rank1Mode::Search => Ok(rank1_search(ctx, &r)),
        Rank1Mode::Verify { p, gamma } => {
            let case = CaseTag::of(ctx, 0);
            let ok = rank1_identity(ctx, &r, p, gamma.as_ref());
            let unique = (case == CaseTag::SEqualEpsDiff && ok).then(|| {
                let s = rank1_search(ctx, &r);
                s.unique == Some(true) && s.p == *p && s.gamma.as_ref() == gamma.as_ref()
            });
            Ok(ClassificationCertificate {
                case,
                p: p.clone(),
                gamma: gamma.clone(),
                status: if ok {
                    CertStatus::Verified
                } else {
                    CertStatus::Rejected
                },
                unique,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HighrankClause {
    NotMonic,
    Symmetry,
    Ratio,
    Divisibility,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HighrankReport {
    /// The theorem assumes the standard parity sequence and simple `ε`.
    pub standard: bool,
    pub simple_eps: bool,
    pub failure: Option<(usize, HighrankClause)>,
}

impl HighrankReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn highrank_index(
    ctx: &TwistedContext,
    r: &RatFun,
    i: usize,
    gamma: &Rat,
    p: &Poly,
) -> Option<HighrankClause> {
    let ps = &ctx.ps;
    if !is_monic(p) {
        return Some(HighrankClause::NotMonic);
    }
    match CaseTag::of(ctx, i) {
        CaseTag::SDiff => {
            let e = (ctx.eps(i) * ctx.eps(i + 1)) as i64;
            (*r != reflected_ratio(p, &ps.rho(i + 1), e)).then_some(HighrankClause::Ratio)
        }
        case => {
            if p.reflect(&ps.rho(i)) != *p {
                return Some(HighrankClause::Symmetry);
            }
            let li = ctx.linear_factor(i, gamma);
            let lj = ctx.linear_factor(i + 1, gamma);
            let want = RatFun::new(&li * &p.shift(&ps.s_rat(i)), &lj * p);
            if *r != want {
                return Some(HighrankClause::Ratio);
            }
            (case == CaseTag::SEqualEpsDiff && li.divides(p))
                .then_some(HighrankClause::Divisibility)
        }
    }
}

/// Checks the higher-rank criterion for given `γ` and `P_1, …, P_{κ−1}`.
pub fn classify_highrank(
    mu: &BHighestWeight,
    gamma: &Rat,
    polys: &[Poly],
) -> Result<HighrankReport> {
    let ctx = &mu.ctx;
    let k = ctx.kappa();
    if polys.len() + 1 != k {
        return Err(Error::WrongRank {
            expected: k - 1,
            got: polys.len(),
        });
    }
    let rs = mu.tilde_ratios();
    let failure =
        (0..k - 1).find_map(|i| highrank_index(ctx, &rs[i], i, gamma, &polys[i]).map(|c| (i, c)));
    Ok(HighrankReport {
        standard: ctx.ps.is_standard(),
        simple_eps: ctx.is_simple(),
        failure,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum HighrankSearch {
    Found { gamma: Rat, polys: Vec<Poly> },
    Fails { index: usize },
    Undecided { index: usize },
}

fn highrank_solve(
    ctx: &TwistedContext,
    r: &RatFun,
    i: usize,
    gamma: &Rat,
) -> std::result::Result<Option<Poly>, ()> {
    let ps = &ctx.ps;
    match CaseTag::of(ctx, i) {
        CaseTag::SDiff => Ok(reflected_candidates(r, &ps.rho(i + 1))
            .into_iter()
            .find(|p| highrank_index(ctx, r, i, gamma, p).is_none())),
        _ => {
            let q = r * &RatFun::new(ctx.linear_factor(i + 1, gamma), ctx.linear_factor(i, gamma));
            Ok(telescope(&q, &ps.s_rat(i))?
                .filter(|p| highrank_index(ctx, r, i, gamma, p).is_none()))
        }
    }
}

/// Best-effort search for `(γ, P_i)` over rational roots.
pub fn classify_highrank_search(mu: &BHighestWeight) -> HighrankSearch {
    let ctx = &mu.ctx;
    let k = ctx.kappa();
    let rs = mu.tilde_ratios();
    let mut gammas = Vec::new();
    if let Some(i) = (0..k - 1).find(|&i| CaseTag::of(ctx, i) == CaseTag::SEqualEpsDiff) {
        let (nr, dr, _) = root_candidates(&rs[i]);
        let ps = &ctx.ps;
        let solve = |j: usize, x: &Rat| {
            let e = ctx.eps_rat(j);
            &e * ps.rho(j + 1) - ctx.varpi(j + 1) - rat(2) * e * x
        };
        gammas.extend(nr.iter().map(|x| solve(i, x)));
        gammas.extend(dr.iter().map(|x| solve(i + 1, x)));
        gammas.dedup();
    } else {
        gammas.push(Rat::zero());
    }
    let mut worst = HighrankSearch::Fails { index: 0 };
    for g in &gammas {
        let mut polys = Vec::with_capacity(k - 1);
        let mut stop = None;
        for (i, r) in rs.iter().enumerate() {
            match highrank_solve(ctx, r, i, g) {
                Ok(Some(p)) => polys.push(p),
                Ok(None) => {
                    stop = Some(HighrankSearch::Fails { index: i });
                    break;
                }
                Err(()) => {
                    stop = Some(HighrankSearch::Undecided { index: i });
                    break;
                }
            }
        }
        match stop {
            None => {
                return HighrankSearch::Found {
                    gamma: g.clone(),
                    polys,
                }
            }
            Some(s) => worst = s,
        }
    }
    worst
}

/// The sufficient condition: `μ̃_i/μ̃_{i+1}` agrees with the ratio built from a
/// Yangian weight `λ` and `γ`. Returns the first failing 0-based index.
pub fn sufficiency_check(
    mu: &BHighestWeight,
    gamma: &Rat,
    lam: &[RatFun],
) -> Result<Option<usize>> {
    let ctx = &mu.ctx;
    let k = ctx.kappa();
    if lam.len() != k {
        return Err(Error::WrongRank {
            expected: k,
            got: lam.len(),
        });
    }
    let g2 = gamma * rat(2);
    let rs = mu.tilde_ratios();
    Ok((0..k - 1).find(|&i| {
        let h = ctx.ps.rho(i + 1);
        let lin = RatFun::new(ctx.linear_factor(i, &g2), ctx.linear_factor(i + 1, &g2));
        let want = &(&lin * &lam[i]) * &lam[i + 1].reflect(&h);
        let want = want.div(&(&lam[i + 1] * &lam[i].reflect(&h)));
        rs[i] != want
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    Over,
    Under,
    /// 1-based `a` with `1 ≤ a < κ`.
    Star(usize),
}

fn reduction_basis(b: &BAction, kill: &[RFMatrix]) -> Result<Vec<(Vec<Rat>, u8)>> {
    let raw = if kill.is_empty() {
        (0..b.dim())
            .map(|i| crate::superlinalg::unit_vector(b.dim(), i))
            .collect()
    } else {
        rfmat_kernel(kill)?
    };
    let basis = graded_basis(&b.space, &raw);
    if basis.is_empty() {
        return Err(Error::EmptySubspace);
    }
    Ok(basis)
}

fn restrict_family(
    b: &BAction,
    ctx: TwistedContext,
    kill: Vec<RFMatrix>,
    ops: Vec<RFMatrix>,
) -> Result<BAction> {
    let basis = reduction_basis(b, &kill)?;
    let vecs: Vec<Vec<Rat>> = basis.iter().map(|(v, _)| v.clone()).collect();
    let space = SuperSpace::new(basis.iter().map(|(_, p)| *p).collect());
    let out = ops
        .iter()
        .map(|m| rf_restrict(m, &vecs))
        .collect::<Result<Vec<_>>>()?;
    BAction::new(ctx, space, out)
}

/// Sub-context, annihilator family, induced operators, index offset and
/// spectral shift of a reduction.
struct ReductionSetup {
    ctx: TwistedContext,
    kill: Vec<RFMatrix>,
    ops: Vec<RFMatrix>,
    offset: usize,
    shift: Rat,
}

fn reduction_setup(b: &BAction, mode: ReduceMode) -> Result<ReductionSetup> {
    let k = b.kappa();
    if k < 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: k,
        });
    }
    Ok(match mode {
        ReduceMode::Over => ReductionSetup {
            ctx: b.ctx.sub(1..k),
            kill: (1..k).map(|j| b.get(0, j).clone()).collect(),
            ops: (1..k)
                .flat_map(|i| (1..k).map(move |j| (i, j)))
                .map(|(i, j)| b.get(i, j).clone())
                .collect(),
            offset: 1,
            shift: Rat::zero(),
        },
        ReduceMode::Under => {
            let h = b.ctx.ps.s_rat(k - 1) / rat(2);
            ReductionSetup {
                ctx: b.ctx.sub(0..k - 1),
                kill: (0..k - 1).map(|i| b.get(i, k - 1).clone()).collect(),
                ops: shifted_block(b, 0, k - 1, &h),
                offset: 0,
                shift: h,
            }
        }
        ReduceMode::Star(a) => {
            if a == 0 || a >= k {
                return Err(Error::Input(format!(
                    "star reduction needs 1 ≤ a < κ, got {a}"
                )));
            }
            let a0 = a - 1;
            let mut kill = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    if i < a0 || j > a0 + 1 {
                        kill.push(b.get(i, j).clone());
                    }
                }
            }
            let h = b.ctx.ps.rho(a0 + 2) / rat(2);
            ReductionSetup {
                ctx: b.ctx.sub(a0..a0 + 2),
                kill,
                ops: shifted_block(b, a0, 2, &h),
                offset: a0,
                shift: h,
            }
        }
    })
}

/// `b°_ij(u) = b_{a+i,a+j}(u+h) + δ_ij/(2u) Σ_{k ≥ a+2} s_k b_kk(u+h)`.
fn shifted_block(b: &BAction, a0: usize, size: usize, h: &Rat) -> Vec<RFMatrix> {
    let k = b.kappa();
    let ps = &b.ctx.ps;
    let sh = |m: &RFMatrix| m.compose_affine(&rat(1), h);
    let mut corr = RFMatrix::zeros(b.dim(), b.dim());
    for c in a0 + size..k {
        corr = corr.add(&sh(b.get(c, c)).scale(&RatFun::constant(ps.s_rat(c))));
    }
    let corr = corr.scale(&RatFun::new(Poly::one(), Poly::linear(rat(2), Rat::zero())));
    let mut out = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let m = sh(b.get(a0 + i, a0 + j));
            out.push(if i == j { m.add(&corr) } else { m });
        }
    }
    out
}

/// Induced action of a lower-rank twisted algebra on the reduction subspace.
pub fn reduce(b: &BAction, mode: ReduceMode) -> Result<BAction> {
    let r = reduction_setup(b, mode)?;
    restrict_family(b, r.ctx, r.kill, r.ops)
}

/// Checks `b̃°_ii(u) = b̃_{o+i,o+i}(u+h)` on the reduction subspace, where `o`
/// and `h` are the index offset and spectral shift of the reduction. Returns
/// the first failing 0-based `i`.
pub fn reduction_shift_check(b: &BAction, mode: ReduceMode) -> Result<Option<usize>> {
    let r = reduction_setup(b, mode)?;
    let vecs: Vec<Vec<Rat>> = reduction_basis(b, &r.kill)?
        .into_iter()
        .map(|(v, _)| v)
        .collect();
    let (offset, shift) = (r.offset, r.shift.clone());
    let red = restrict_family(b, r.ctx, r.kill, r.ops)?;
    for i in 0..red.kappa() {
        let full = b_tilde(b, offset + i).compose_affine(&rat(1), &shift);
        match rf_restrict(&full, &vecs) {
            Ok(m) if m == b_tilde(&red, i) => {}
            _ => return Ok(Some(i)),
        }
    }
    Ok(None)
}

/// `b_ij(u) ↦ b_ij(-u)`, a module over the algebra with `-s`.
pub fn negate_s(b: &BAction) -> BAction {
    let ctx = TwistedContext {
        ps: b.ctx.ps.negated(),
        ..b.ctx.clone()
    };
    BAction {
        ctx,
        space: b.space.clone(),
        b: family_neg(&b.b),
    }
}

/// `b_ij(u) ↦ -b_ij(u)`, a module over the algebra with `-ε`.
pub fn negate_eps(b: &BAction) -> BAction {
    let ctx = TwistedContext {
        eps: b.ctx.eps.iter().map(|e| -e).collect(),
        ..b.ctx.clone()
    };
    let m1 = RatFun::from_i64(-1);
    BAction {
        ctx,
        space: b.space.clone(),
        b: b.b.iter().map(|m| m.scale(&m1)).collect(),
    }
}

/// `B(u) ↦ h(u) B(u)` for `h(u) h(-u) = 1`.
pub fn scale_by(b: &BAction, h: &RatFun) -> Result<BAction> {
    if !(h * &h.reflect(&Rat::zero())).is_one() || h.limit_at_infinity() != Some(rat(1)) {
        return Err(Error::ParameterConstraint(
            "h(u)h(-u) = 1 and h(∞) = 1 required".into(),
        ));
    }
    Ok(BAction {
        b: b.b.iter().map(|m| m.scale(h)).collect(),
        ..b.clone()
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility {
    Irreducible {
        closure_dim: usize,
    },
    Reducible {
        closure_dim: usize,
        witness: Vec<Vec<Rat>>,
    },
    Inconclusive {
        closure_dim: usize,
    },
}

/// Incremental echelon basis of a subspace of `Q^n`.
struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let c = v[p].recip();
        for x in v.iter_mut() {
            *x *= &c;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

fn flatten(m: &QMat) -> Vec<Rat> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Linear span of all products of the operators `b_ij(u_0)`.
fn closure(gens: &[QMat], n: usize) -> Vec<QMat> {
    let mut ech = Echelon { rows: vec![] };
    let mut alg = vec![QMat::identity(n)];
    ech.insert(flatten(&alg[0]));
    let mut idx = 0;
    while idx < alg.len() && alg.len() < n * n {
        let x = alg[idx].clone();
        for g in gens {
            let y = x.mul(g);
            if ech.insert(flatten(&y)) {
                alg.push(y);
            }
        }
        idx += 1;
    }
    alg
}

fn cyclic_witness(alg: &[QMat], n: usize) -> Option<Vec<Vec<Rat>>> {
    let try_seed = |v: &Vec<Rat>| {
        let span = span_basis(n, &alg.iter().map(|x| x.apply(v)).collect::<Vec<_>>());
        (!span.is_empty() && span.len() < n).then_some(span)
    };
    // Cheap seeds first: kernels of the algebra elements, then unit vectors.
    let cheap = alg
        .iter()
        .flat_map(|x| x.nullspace())
        .chain((0..n).map(|i| crate::superlinalg::unit_vector(n, i)));
    if let Some(w) = cheap.into_iter().find_map(|v| try_seed(&v)) {
        return Some(w);
    }
    let generic = alg
        .iter()
        .enumerate()
        .fold(QMat::zeros(n, n), |acc, (i, x)| {
            acc.add(&x.scale(&rat((i * i + 3 * i + 1) as i64)))
        });
    let mut seeds: Vec<Vec<Rat>> = Vec::new();
    for (lam, _) in rational_roots(&crate::superlinalg::char_poly(&generic)).roots {
        seeds.extend(generic.sub(&QMat::scalar(n, &lam)).nullspace());
    }
    seeds.iter().find_map(try_seed)
}

/// Absolute irreducibility by the dimension of the generated matrix algebra.
pub fn irreducible_burnside(b: &BAction) -> Result<Irreducibility> {
    let n = b.dim();
    let refs: Vec<&RFMatrix> = b.b.iter().collect();
    let pts = grid_nodes(
        family_degree_bound(&refs) + 1,
        &Rat::new(1.into(), 3.into()),
        &[family_den(&refs)],
    )?;
    let mut gens = Vec::new();
    for u in &pts {
        gens.extend(eval_family(&b.b, u)?);
    }
    let alg = closure(&gens, n);
    let closure_dim = alg.len();
    if closure_dim == n * n {
        return Ok(Irreducibility::Irreducible { closure_dim });
    }
    if let Some(w) = cyclic_witness(&alg, n) {
        return Ok(Irreducibility::Reducible {
            closure_dim,
            witness: w,
        });
    }
    let talg: Vec<QMat> = alg.iter().map(|x| x.transpose()).collect();
    if let Some(w) = cyclic_witness(&talg, n) {
        let perp = QMat::from_rows(w)?.nullspace();
        return Ok(Irreducibility::Reducible {
            closure_dim,
            witness: perp,
        });
    }
    Ok(Irreducibility::Inconclusive { closure_dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;
    use crate::glmn::{make_lab, make_vector_rep};
    use crate::superlinalg::unit_vector;
    use crate::yangian::{evaluation_action, highest_lweight, lambda_prime};

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_i64(num), Poly::from_i64(den))
    }

    fn l12(z: i64) -> TAction {
        evaluation_action(&make_lab(1, &rat(1), &rat(2)).unwrap(), &rat(z))
    }

    #[test]
    fn trivial_and_constant() {
        let ctx = TwistedContext::of(&[1, -1], &[1, -1]);
        let b = b_from_t(&TAction::trivial(&ctx.ps), &ctx).unwrap();
        assert_eq!(b, BAction::constant(&ctx));
        let rep = verify_b(&b).unwrap();
        assert!(rep.passed() && rep.unitary());
        let g = b_from_t(&TAction::trivial(&ctx.ps), &ctx.with_gamma(Some(rat(1)))).unwrap();
        let rep = verify_b(&g).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.f, Some(rf(&[-1, 0, 1], &[0, 0, 1])));
    }

    #[test]
    fn c_gamma_module() {
        let ctx = TwistedContext::of(&[1, -1], &[1, 1]);
        assert_eq!(
            *c_gamma(&ctx, &rat(2)).get(0, 0).get(0, 0),
            rf(&[2, 1], &[-2, 1])
        );
        assert_eq!(*c_gamma(&ctx, &rat(0)).get(1, 1).get(0, 0), RatFun::one());
        let rep = verify_b(&c_gamma(&ctx, &rat(3))).unwrap();
        assert!(rep.passed() && rep.unitary());
        let mu = highest_bweight(&c_gamma(&ctx, &rat(3)), &[rat(1)]).unwrap();
        assert_eq!(mu.mu[0], rf(&[3, 1], &[-3, 1]));
        assert_eq!(verma_conditions(&mu), None);
    }

    #[test]
    fn restricted_l12() {
        let ctx = TwistedContext::of(&[1, -1], &[1, 1]);
        let b = b_from_t(&l12(0), &ctx).unwrap();
        assert!(b.has_eps_limit() && b.parities_ok());
        let rep = verify_b(&b).unwrap();
        assert!(rep.passed() && rep.unitary());
        assert!(!verify_b_opts(&b, true).unwrap().reflection.passed());
        let mu = highest_bweight(&b, &unit_vector(2, 0)).unwrap();
        assert_eq!(mu.tilde_ratios()[0], rf(&[3, 4, 1], &[0, -2, 1]));
        assert_eq!(verma_conditions(&mu), None);
        let cert = classify_rank1(&mu, &Rank1Mode::Search).unwrap();
        assert_eq!(cert.status, CertStatus::Verified);
        assert_eq!(cert.p, Poly::from_i64(&[3, 4, 1]));
        let hr = classify_highrank(&mu, &Rat::zero(), std::slice::from_ref(&cert.p)).unwrap();
        assert!(hr.passed());
        assert!(matches!(
            highest_bweight(&b, &unit_vector(2, 1)),
            Err(Error::NotHighest(_))
        ));
        let hs = find_highest_space(&b).unwrap();
        assert_eq!(hs.basis.len(), 1);
        assert!(hs.invariant && hs.commuting);
        assert_eq!(
            find_highest_space(&direct_sum(&b, &b).unwrap())
                .unwrap()
                .basis
                .len(),
            2
        );
        assert_eq!(
            irreducible_burnside(&b).unwrap(),
            Irreducibility::Irreducible { closure_dim: 4 }
        );
    }

    #[test]
    fn tensor_with_c_gamma() {
        let ctx = TwistedContext::of(&[1, -1], &[1, -1]);
        let g = rat(1);
        let l = l12(0);
        let b = b_tensor(&l, &c_gamma(&ctx, &g)).unwrap();
        assert!(verify_b(&b).unwrap().passed());
        let xi = unit_vector(2, 0);
        let lam = highest_lweight(&l, &xi).unwrap();
        let lp = lambda_prime(&ctx.ps, &lam);
        for i in 0..2 {
            let got = proportionality(&rf_apply(&b_tilde(&b, i), &xi), &xi).unwrap();
            let pref = RatFun::new(
                &ctx.linear_factor(i, &(&g * rat(2))) * &Poly::u(),
                Poly::root_factor(&g),
            );
            let want = &(&pref * &lam[i]) * &lp[i].reflect(&Rat::zero());
            assert_eq!(got, want);
        }
        let trivial = b_tensor(&l, &BAction::constant(&ctx)).unwrap();
        assert_eq!(trivial.b, b_from_t(&l, &ctx).unwrap().b);
    }

    #[test]
    fn verma_negative_control() {
        let ctx = TwistedContext::of(&[1, -1], &[1, 1]);
        let mut mu =
            highest_bweight(&b_from_t(&l12(0), &ctx).unwrap(), &unit_vector(2, 0)).unwrap();
        mu.mu[1] = &mu.mu[1] * &rf(&[1, 1], &[2, 1]);
        assert_eq!(verma_conditions(&mu), Some(1));
    }

    #[test]
    fn rank1_eps_diff_unique_pair() {
        let ctx = TwistedContext::of(&[1, 1], &[1, -1]);
        let l = evaluation_action(&make_vector_rep(&ctx.ps), &ratio(1, 2));
        let b = b_tensor(&l, &c_gamma(&ctx, &rat(2))).unwrap();
        assert!(verify_b(&b).unwrap().passed());
        let mu = highest_bweight(&b, &unit_vector(2, 0)).unwrap();
        let found = classify_rank1(&mu, &Rank1Mode::Search).unwrap();
        assert_eq!(found.status, CertStatus::Verified);
        assert_eq!(found.unique, Some(true));
        let again = classify_rank1(
            &mu,
            &Rank1Mode::Verify {
                p: found.p.clone(),
                gamma: found.gamma.clone(),
            },
        )
        .unwrap();
        assert_eq!(again.status, CertStatus::Verified);
        assert_eq!(again.unique, Some(true));
    }

    #[test]
    fn reductions() {
        let ctx = TwistedContext::of(&[1, -1], &[1, -1]);
        let b = b_tensor(&l12(0), &c_gamma(&ctx, &rat(1))).unwrap();
        let mu = highest_bweight(&b, &unit_vector(2, 0)).unwrap();
        let over = reduce(&b, ReduceMode::Over).unwrap();
        assert!(verify_b(&over).unwrap().passed());
        let under = reduce(&b, ReduceMode::Under).unwrap();
        assert!(verify_b(&under).unwrap().passed());
        let h = ctx.ps.s_rat(1) / rat(2);
        let tl = mu.tilde();
        let eta = unit_vector(under.dim(), 0);
        let got = proportionality(&rf_apply(&b_tilde(&under, 0), &eta), &eta).unwrap();
        assert_eq!(got, tl[0].shift(&h));
        for mode in [ReduceMode::Over, ReduceMode::Under] {
            assert_eq!(reduction_shift_check(&b, mode).unwrap(), None);
        }
    }

    #[test]
    fn star_reduction_rank3() {
        let ctx = TwistedContext::of(&[1, 1, -1], &[1, 1, 1]);
        let t = evaluation_action(&make_vector_rep(&ctx.ps), &rat(0));
        let b = b_from_t(&t, &ctx).unwrap();
        assert!(verify_b(&b).unwrap().passed());
        let s = reduce(&b, ReduceMode::Star(1)).unwrap();
        assert_eq!(s.kappa(), 2);
        assert!(verify_b(&s).unwrap().passed());
        assert_eq!(
            reduction_shift_check(&b, ReduceMode::Star(1)).unwrap(),
            None
        );
        assert_eq!(
            reduction_shift_check(&b, ReduceMode::Star(2)).unwrap(),
            None
        );
    }

    #[test]
    fn sign_isomorphisms_and_scaling() {
        let ctx = TwistedContext::of(&[1, -1], &[1, 1]);
        let b = b_from_t(&l12(0), &ctx).unwrap();
        assert!(verify_b(&negate_s(&b)).unwrap().passed());
        assert!(verify_b(&negate_eps(&b)).unwrap().passed());
        let h = rf(&[1, 1], &[-1, 1]);
        let scaled = scale_by(&b, &h).unwrap();
        assert!(verify_b(&scaled).unwrap().passed());
        let m0 = highest_bweight(&b, &unit_vector(2, 0)).unwrap();
        let m1 = highest_bweight(&scaled, &unit_vector(2, 0)).unwrap();
        assert_eq!(m0.tilde_ratios(), m1.tilde_ratios());
        assert!(scale_by(&b, &rf(&[1, 1], &[0, 1])).is_err());
    }

    #[test]
    fn reducible_direct_sum() {
        let ctx = TwistedContext::of(&[1, -1], &[1, 1]);
        let ds = direct_sum(&c_gamma(&ctx, &rat(1)), &c_gamma(&ctx, &rat(2))).unwrap();
        assert!(matches!(
            irreducible_burnside(&ds).unwrap(),
            Irreducibility::Reducible { .. }
        ));
    }

    #[test]
    fn b1_on_evaluation_modules() {
        let ctx = TwistedContext::of(&[1, -1, 1], &[1, -1, -1]);
        let m = make_vector_rep(&ctx.ps);
        let b = b_from_t(&evaluation_action(&m, &rat(0)), &ctx).unwrap();
        for i in 0..3 {
            let c = b.get(i, i).laurent_coeff(1).unwrap();
            let want = m
                .e(i, i)
                .scale(&(ctx.ps.s_rat(i) * ctx.eps_rat(i) * rat(2)));
            assert_eq!(c, want);
        }
    }
}
