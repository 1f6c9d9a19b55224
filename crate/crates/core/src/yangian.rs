//! Super Yangian actions `T(u)` on modules: evaluation, shift, tensor,
//! inverse series, RTT certification, highest ℓ-weights and duals.

use crate::error::{Error, Result};
use crate::exactalg::{rat, rational_roots, Poly, Rat, RatFun};
use crate::glmn::{GlModule, ParitySeq};
use crate::superlinalg::{
    check_identity_2var, family_degree_bound, family_den, grid_nodes, proportionality, rf_apply,
    rf_super_kron, rfmat_inverse, GridOutcome, QMat, RFMatrix, SuperSpace,
};
use num::Zero;

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Trivial,
    Evaluation { z: Rat },
    Tensor(Box<TAction>, Box<TAction>),
    Shifted,
    Dual,
    Custom,
}

/// The family `t_ij(u)` (stored row-major, `t[i*κ+j]`) on a super space.
#[derive(Clone, Debug, PartialEq)]
pub struct TAction {
    pub ps: ParitySeq,
    pub space: SuperSpace,
    pub t: Vec<RFMatrix>,
    pub provenance: Provenance,
}

/// The family `t′_ij(u)` of the inverse matrix `T(u)^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TPrimeAction {
    pub ps: ParitySeq,
    pub space: SuperSpace,
    pub t: Vec<RFMatrix>,
}

impl TPrimeAction {
    pub fn get(&self, i: usize, j: usize) -> &RFMatrix {
        &self.t[i * self.ps.kappa() + j]
    }
}

impl TAction {
    pub fn new(ps: ParitySeq, space: SuperSpace, t: Vec<RFMatrix>) -> Result<TAction> {
        let k = ps.kappa();
        let d = space.dim();
        if t.len() != k * k || t.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::DimensionMismatch(
                "t_ij matrices do not match".into(),
            ));
        }
        Ok(TAction {
            ps,
            space,
            t,
            provenance: Provenance::Custom,
        })
    }

    pub fn trivial(ps: &ParitySeq) -> TAction {
        let k = ps.kappa();
        let t = (0..k * k)
            .map(|x| {
                if x / k == x % k {
                    RFMatrix::identity(1)
                } else {
                    RFMatrix::zeros(1, 1)
                }
            })
            .collect();
        TAction {
            ps: ps.clone(),
            space: SuperSpace::even(1),
            t,
            provenance: Provenance::Trivial,
        }
    }

    pub fn kappa(&self) -> usize {
        self.ps.kappa()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &RFMatrix {
        &self.t[i * self.kappa() + j]
    }

    /// `τ_z`: substitutes `u ↦ u - z` in every entry.
    pub fn shifted(&self, z: &Rat) -> TAction {
        TAction {
            ps: self.ps.clone(),
            space: self.space.clone(),
            t: self
                .t
                .iter()
                .map(|m| m.compose_affine(&rat(1), &-z))
                .collect(),
            provenance: Provenance::Shifted,
        }
    }

    /// True when every `t_ij(u)` tends to `δ_ij` at infinity.
    pub fn has_unit_limit(&self) -> bool {
        let k = self.kappa();
        self.t.iter().enumerate().all(|(x, m)| {
            let target = if x / k == x % k { rat(1) } else { Rat::zero() };
            (0..m.rows()).all(|p| {
                (0..m.cols()).all(|q| {
                    let want = if p == q { target.clone() } else { Rat::zero() };
                    m.get(p, q).limit_at_infinity() == Some(want)
                })
            })
        })
    }

    /// The matrix of `t_ij` has parity `|i|+|j|`.
    pub fn parities_ok(&self) -> bool {
        let k = self.kappa();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let m = self.get(i, j);
                let p = self.ps.pair_parity(i, j);
                (0..m.rows()).all(|a| {
                    (0..m.cols()).all(|b| {
                        m.get(a, b).is_zero()
                            || (self.space.parity(a) + self.space.parity(b)) % 2 == p
                    })
                })
            })
        })
    }
}

/// `t_ij(u) = δ_ij + s_i e_ij/(u - z)`.
pub fn evaluation_action(m: &GlModule, z: &Rat) -> TAction {
    let k = m.kappa();
    let d = m.dim();
    let pole = RatFun::pole_at(z);
    let mut t = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let c = pole.scale(&m.ps.s_rat(i));
            let e = m.e(i, j);
            let mut r = RFMatrix::from_fn(d, d, |p, q| c.scale(e.get(p, q)));
            if i == j {
                r = r.add(&RFMatrix::identity(d));
            }
            t.push(r);
        }
    }
    TAction {
        ps: m.ps.clone(),
        space: m.space.clone(),
        t,
        provenance: Provenance::Evaluation { z: z.clone() },
    }
}

/// Coproduct action on `L ⊗ R`: `t_ij ↦ Σ_k t_ik ⊗ t_kj` with Koszul signs.
pub fn tensor_action(l: &TAction, r: &TAction) -> Result<TAction> {
    if l.ps != r.ps {
        return Err(Error::DimensionMismatch("parity sequences differ".into()));
    }
    let k = l.kappa();
    let d = l.dim() * r.dim();
    let mut t = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = RFMatrix::zeros(d, d);
            for a in 0..k {
                let (x, y) = (l.get(i, a), r.get(a, j));
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.add(&rf_super_kron(x, &l.space, y, l.ps.pair_parity(a, j)));
            }
            t.push(acc);
        }
    }
    Ok(TAction {
        ps: l.ps.clone(),
        space: l.space.tensor(&r.space),
        t,
        provenance: Provenance::Tensor(Box::new(l.clone()), Box::new(r.clone())),
    })
}

/// Assembles `[t_ij]` as one `κd × κd` block matrix.
pub fn block_matrix(t: &[RFMatrix], k: usize) -> RFMatrix {
    let d = t[0].rows();
    RFMatrix::from_fn(k * d, k * d, |r, c| {
        t[(r / d) * k + c / d].get(r % d, c % d).clone()
    })
}

pub fn split_blocks(m: &RFMatrix, k: usize) -> Vec<RFMatrix> {
    let d = m.rows() / k;
    (0..k * k)
        .map(|x| {
            let (i, j) = (x / k, x % k);
            RFMatrix::from_fn(d, d, |p, q| m.get(i * d + p, j * d + q).clone())
        })
        .collect()
}

/// `T′` by exact block inversion of `[t_ij]`.
pub fn inverse_by_blocks(t: &TAction) -> Result<TPrimeAction> {
    let inv = rfmat_inverse(&block_matrix(&t.t, t.kappa()))?;
    Ok(TPrimeAction {
        ps: t.ps.clone(),
        space: t.space.clone(),
        t: split_blocks(&inv, t.kappa()),
    })
}

/// `T′(u)` with `T(u) T′(u) = 1`. Tensor products use the coproduct of `t′`
/// (`Δ t′_ij = Σ_a ± t′_aj ⊗ t′_ia`) instead of inverting the full block matrix.
pub fn inverse_series_action(t: &TAction) -> Result<TPrimeAction> {
    match &t.provenance {
        Provenance::Tensor(l, r) => {
            let lp = inverse_series_action(l)?;
            let rp = inverse_series_action(r)?;
            let ps = &t.ps;
            let k = t.kappa();
            let d = t.dim();
            let mut out = Vec::with_capacity(k * k);
            for i in 0..k {
                for j in 0..k {
                    let mut acc = RFMatrix::zeros(d, d);
                    for a in 0..k {
                        let (x, y) = (lp.get(a, j), rp.get(i, a));
                        if x.is_zero() || y.is_zero() {
                            continue;
                        }
                        let mut term = rf_super_kron(x, &l.space, y, ps.pair_parity(i, a));
                        if ps.pair_parity(a, j) * ps.pair_parity(i, a) % 2 == 1 {
                            term = term.scale(&RatFun::from_i64(-1));
                        }
                        acc = acc.add(&term);
                    }
                    out.push(acc);
                }
            }
            Ok(TPrimeAction {
                ps: ps.clone(),
                space: t.space.clone(),
                t: out,
            })
        }
        _ => inverse_by_blocks(t),
    }
}

/// Plain block product `[x_ij] [y_ij]`.
pub fn block_product(x: &[RFMatrix], y: &[RFMatrix], k: usize) -> Vec<RFMatrix> {
    let d = x[0].rows();
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = RFMatrix::zeros(d, d);
            for a in 0..k {
                let (p, q) = (&x[i * k + a], &y[a * k + j]);
                if !p.is_zero() && !q.is_zero() {
                    acc = acc.add(&p.mul(q));
                }
            }
            out.push(acc);
        }
    }
    out
}

/// `Σ_ij sign_std(i,j) X_ij ⊗ E_ij^{(site)}` on `W ⊗ V^{⊗n}` with Koszul signs;
/// `x[i*κ+j]` is the value of `X_ij` on `W` and `site` is 1-based.
pub fn site_operator(ps: &ParitySeq, w: &SuperSpace, n: usize, site: usize, x: &[QMat]) -> QMat {
    let k = ps.kappa();
    let dw = w.dim();
    let vdim = k.pow(n as u32);
    let total = dw * vdim;
    let stride = k.pow((n - site) as u32);
    let mut out = QMat::zeros(total, total);
    for col in 0..total {
        let wi = col / vdim;
        let vi = col % vdim;
        let j = (vi / stride) % k;
        let mut before = w.parity(wi) as usize;
        let mut rest = vi;
        for pos in (1..=n).rev() {
            let a = rest % k;
            rest /= k;
            if pos < site {
                before += ps.parity(a) as usize;
            }
        }
        for i in 0..k {
            let m = &x[i * k + j];
            let p = ps.pair_parity(i, j) as usize;
            let mut sign = ps.sign_std(i, j);
            if p * before % 2 == 1 {
                sign = -sign;
            }
            let vo = vi - j * stride + i * stride;
            for wo in 0..dw {
                let c = m.get(wo, wi);
                if c.is_zero() {
                    continue;
                }
                out.add_at(wo * vdim + vo, col, &(c * &sign));
            }
        }
    }
    out
}

/// The graded flip on `V ⊗ V`. With `corrupt`, the sign of the `v_1⊗v_1`
/// entry is flipped (negative control).
pub fn flip_operator(ps: &ParitySeq, corrupt: bool) -> QMat {
    let k = ps.kappa();
    let mut p = QMat::zeros(k * k, k * k);
    for a in 0..k {
        for b in 0..k {
            let mut v = if ps.parity(a) * ps.parity(b) == 1 {
                rat(-1)
            } else {
                rat(1)
            };
            if corrupt && a == 0 && b == 0 {
                v = -v;
            }
            p.set(b * k + a, a * k + b, v);
        }
    }
    p
}

/// `1_W ⊗ R(x)` with `R(x) = 1 - P/x` acting on the two `V` factors.
pub fn r_operator(ps: &ParitySeq, dw: usize, x: &Rat, corrupt: bool) -> QMat {
    let k = ps.kappa();
    let r = QMat::identity(k * k).sub(&flip_operator(ps, corrupt).scale(&x.recip()));
    QMat::identity(dw).kron(&r)
}

pub(crate) fn eval_family(t: &[RFMatrix], u: &Rat) -> Result<Vec<QMat>> {
    t.iter().map(|m| m.eval(u)).collect()
}

pub(crate) fn family_neg(t: &[RFMatrix]) -> Vec<RFMatrix> {
    t.iter()
        .map(|m| m.compose_affine(&rat(-1), &Rat::zero()))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RttReport {
    pub rtt: GridOutcome,
    pub inverse_left: GridOutcome,
    pub inverse_right: GridOutcome,
}

impl RttReport {
    pub fn passed(&self) -> bool {
        self.rtt.passed() && self.inverse_left.passed() && self.inverse_right.passed()
    }
}

pub fn verify_rtt(t: &TAction) -> Result<RttReport> {
    verify_rtt_opts(t, false)
}

/// Certifies the RTT relation and the two mixed relations with `T^{-1}(-u)`
/// on `W ⊗ V ⊗ V`.
pub fn verify_rtt_opts(t: &TAction, corrupt: bool) -> Result<RttReport> {
    let tp = inverse_series_action(t)?;
    let ps = &t.ps;
    let w = &t.space;
    let dw = w.dim();
    let tneg = family_neg(&tp.t);
    let trefs: Vec<&RFMatrix> = t.t.iter().collect();
    let nrefs: Vec<&RFMatrix> = tneg.iter().collect();
    let dt = family_degree_bound(&trefs);
    let dn = family_degree_bound(&nrefs);
    let forb = vec![family_den(&trefs), family_den(&nrefs)];
    let op = |fam: &[RFMatrix], x: &Rat, site: usize| -> Result<QMat> {
        Ok(site_operator(ps, w, 2, site, &eval_family(fam, x)?))
    };
    let rtt = check_identity_2var(
        |u, v| {
            let r = r_operator(ps, dw, &(u - v), corrupt);
            Ok(r.mul(&op(&t.t, u, 1)?).mul(&op(&t.t, v, 2)?))
        },
        |u, v| {
            let r = r_operator(ps, dw, &(u - v), corrupt);
            Ok(op(&t.t, v, 2)?.mul(&op(&t.t, u, 1)?).mul(&r))
        },
        (dt + 1, dt + 1),
        &forb,
        &forb,
    )?;
    let inverse_left = check_identity_2var(
        |u, v| {
            let r = r_operator(ps, dw, &(u + v), corrupt);
            Ok(op(&tneg, u, 1)?.mul(&r).mul(&op(&t.t, v, 2)?))
        },
        |u, v| {
            let r = r_operator(ps, dw, &(u + v), corrupt);
            Ok(op(&t.t, v, 2)?.mul(&r).mul(&op(&tneg, u, 1)?))
        },
        (dn + 1, dt + 1),
        &forb,
        &forb,
    )?;
    let inverse_right = check_identity_2var(
        |u, v| {
            let r = r_operator(ps, dw, &(u + v), corrupt);
            Ok(op(&t.t, u, 1)?.mul(&r).mul(&op(&tneg, v, 2)?))
        },
        |u, v| {
            let r = r_operator(ps, dw, &(u + v), corrupt);
            Ok(op(&tneg, v, 2)?.mul(&r).mul(&op(&t.t, u, 1)?))
        },
        (dt + 1, dn + 1),
        &forb,
        &forb,
    )?;
    Ok(RttReport {
        rtt,
        inverse_left,
        inverse_right,
    })
}

/// Certifies the Yang–Baxter equation for `R(u)` on `V^{⊗3}`.
pub fn verify_yang_baxter(ps: &ParitySeq) -> Result<GridOutcome> {
    let k = ps.kappa();
    let p = flip_operator(ps, false);
    let id = QMat::identity(k);
    let p12 = p.kron(&id);
    let p23 = id.kron(&p);
    let p13 = p23.mul(&p12).mul(&p23);
    let one = QMat::identity(k * k * k);
    let r = |pm: &QMat, x: &Rat| one.sub(&pm.scale(&x.recip()));
    let w = rat(7);
    check_identity_2var(
        |u, v| {
            Ok(r(&p12, &(u - v))
                .mul(&r(&p13, &(u - &w)))
                .mul(&r(&p23, &(v - &w))))
        },
        |u, v| {
            Ok(r(&p23, &(v - &w))
                .mul(&r(&p13, &(u - &w)))
                .mul(&r(&p12, &(u - v))))
        },
        (2, 2),
        &[Poly::root_factor(&w)],
        &[Poly::root_factor(&w)],
    )
}

/// `λ_i(u)` of a highest ℓ-weight vector.
pub type HighestLWeight = Vec<RatFun>;

/// Verifies `t_ij ξ = 0` for `i < j` and returns the eigenvalues of `t_ii`.
pub fn highest_lweight(t: &TAction, xi: &[Rat]) -> Result<HighestLWeight> {
    let k = t.kappa();
    if xi.iter().all(|x| x.is_zero()) {
        return Err(Error::Input("zero vector".into()));
    }
    for i in 0..k {
        for j in i + 1..k {
            if rf_apply(t.get(i, j), xi).iter().any(|x| !x.is_zero()) {
                return Err(Error::NotHighest(format!(
                    "t_{}{} does not annihilate",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    (0..k)
        .map(|i| {
            proportionality(&rf_apply(t.get(i, i), xi), xi).ok_or_else(|| {
                Error::NotHighest(format!("t_{}{} is not diagonal on ξ", i + 1, i + 1))
            })
        })
        .collect()
}

/// `λ′_i(u) = λ_i(u+ρ_{i+1})^{-1} Π_{k>i} λ_k(u+ρ_k)/λ_k(u+ρ_{k+1})` in 1-based
/// indexing; here `ps.rho(k)` is the 0-based tail sum.
pub fn lambda_prime(ps: &ParitySeq, lam: &[RatFun]) -> Vec<RatFun> {
    let k = ps.kappa();
    (0..k)
        .map(|i| {
            let mut acc = lam[i].shift(&ps.rho(i + 1)).inv();
            for a in i + 1..k {
                acc = &acc * &lam[a].shift(&ps.rho(a)).div(&lam[a].shift(&ps.rho(a + 1)));
            }
            acc
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum LambdaPrimeClause {
    UpperKills {
        i: usize,
        j: usize,
    },
    Diagonal {
        i: usize,
    },
    Killing {
        i: usize,
        a: usize,
        c: usize,
        j: usize,
    },
}

/// Checks (a) `t′_ij ξ = 0` for `i<j`, (b) `t′_ii ξ = λ′_i ξ`, and (c) the
/// vanishing of `t_ia(u) t′_cj(v) ξ` on ten evaluation pairs.
pub fn lambda_prime_check(
    t: &TAction,
    xi: &[Rat],
    lam: &[RatFun],
) -> Result<std::result::Result<(), LambdaPrimeClause>> {
    let tp = inverse_series_action(t)?;
    let k = t.kappa();
    for i in 0..k {
        for j in i + 1..k {
            if rf_apply(tp.get(i, j), xi).iter().any(|x| !x.is_zero()) {
                return Ok(Err(LambdaPrimeClause::UpperKills { i, j }));
            }
        }
    }
    let lp = lambda_prime(&t.ps, lam);
    for i in 0..k {
        if proportionality(&rf_apply(tp.get(i, i), xi), xi).as_ref() != Some(&lp[i]) {
            return Ok(Err(LambdaPrimeClause::Diagonal { i }));
        }
    }
    let trefs: Vec<&RFMatrix> = t.t.iter().chain(tp.t.iter()).collect();
    let forb = [family_den(&trefs)];
    let us = grid_nodes(10, &Rat::new(1.into(), 3.into()), &forb)?;
    let vs = grid_nodes(10, &Rat::new(2.into(), 3.into()), &forb)?;
    for (u, v) in us.iter().zip(&vs) {
        let tu = eval_family(&t.t, u)?;
        let tv = eval_family(&tp.t, v)?;
        for i in 0..k {
            for j in i..k {
                for a in 0..k {
                    for c in 0..k {
                        let applies = if i < j { c <= a } else { c < a };
                        if !applies {
                            continue;
                        }
                        let w = tu[i * k + a].apply(&tv[c * k + j].apply(xi));
                        if w.iter().any(|x| !x.is_zero()) {
                            return Ok(Err(LambdaPrimeClause::Killing { i, a, c, j }));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// The dual module: `t_ij(u)` acts on the dual basis through the signed
/// supertranspose of `t′_ji(-u)`.
pub fn dual_action(t: &TAction) -> Result<TAction> {
    let tp = inverse_series_action(t)?;
    let ps = &t.ps;
    let k = t.kappa();
    let d = t.dim();
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let src = tp.get(j, i).compose_affine(&rat(-1), &Rat::zero());
            let s = ps.sign_std(i, j);
            let pij = ps.pair_parity(i, j);
            out.push(RFMatrix::from_fn(d, d, |p, q| {
                let e = src.get(q, p);
                if e.is_zero() {
                    return RatFun::zero();
                }
                let sg = if t.space.parity(q) * pij % 2 == 1 {
                    -s.clone()
                } else {
                    s.clone()
                };
                e.scale(&sg)
            }));
        }
    }
    Ok(TAction {
        ps: ps.clone(),
        space: t.space.clone(),
        t: out,
        provenance: Provenance::Dual,
    })
}

/// The expected highest ℓ-weight of the dual vector: `λ′_i(-u)`.
pub fn dual_weight(ps: &ParitySeq, lam: &[RatFun]) -> Vec<RatFun> {
    lambda_prime(ps, lam)
        .iter()
        .map(|f| f.compose_affine(&rat(-1), &Rat::zero()))
        .collect()
}

/// Consecutive ratios `λ_i/λ_{i+1}`, the invariant of "almost isomorphic".
pub fn weight_ratios(lam: &[RatFun]) -> Vec<RatFun> {
    lam.windows(2).map(|w| w[0].div(&w[1])).collect()
}

/// Solves `r(u) = P(u+s)/P(u)` for a monic `P` when all roots are rational.
/// `Err` means irrational roots block the search; `Ok(None)` means no `P`.
pub fn telescope(r: &RatFun, s: &Rat) -> std::result::Result<Option<Poly>, ()> {
    if r.num().deg() != r.den().deg() || r.num().lc() != r.den().lc() {
        return Ok(None);
    }
    let nr = rational_roots(r.num());
    let dr = rational_roots(r.den());
    if !nr.splits() || !dr.splits() {
        return Err(());
    }
    let mut betas = nr.flat();
    let mut alphas = dr.flat();
    // Sort by value/s so that "α - β ∈ s·Z_{>0}" means "α/s > β/s".
    let key = |x: &Rat| x / s;
    betas.sort_by_key(key);
    alphas.sort_by_key(key);
    let mut p = Poly::one();
    let mut used = vec![false; betas.len()];
    for a in &alphas {
        let found = betas.iter().enumerate().find(|(idx, b)| {
            let q = (a - *b) / s;
            !used[*idx] && q.is_integer() && q > Rat::zero()
        });
        let Some((idx, b)) = found else {
            return Ok(None);
        };
        used[idx] = true;
        let steps = ((a - b) / s).to_integer();
        let mut j = num::BigInt::zero();
        while j < steps {
            p = &p * &Poly::root_factor(&(a - s * Rat::from_integer(j.clone())));
            j += 1;
        }
    }
    let ok = RatFun::new(p.shift(s), p.clone()) == *r;
    Ok(ok.then_some(p))
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZhangOutcome {
    FiniteDimensional(Vec<Poly>),
    Fails { index: usize },
    Undecided { index: usize },
}

/// The finiteness criterion for the standard parity sequence. Returns the
/// polynomials `P_1, ..., P_κ` (with `P_κ` the denominator at the boundary).
pub fn zhang_check(ps: &ParitySeq, lam: &[RatFun]) -> Result<ZhangOutcome> {
    if !ps.is_standard() {
        return Err(Error::NonStandardParity);
    }
    let k = ps.kappa();
    let m = ps.m();
    let mut polys = vec![Poly::one(); k];
    for i in 0..k.saturating_sub(1) {
        let r = lam[i].div(&lam[i + 1]);
        if i + 1 == m {
            let (num, den) = (r.num(), r.den());
            if num.deg() != den.deg() || num.lc() != den.lc() {
                return Ok(ZhangOutcome::Fails { index: i });
            }
            polys[i] = num.monic().1;
            polys[k - 1] = den.clone();
        } else {
            match telescope(&r, &ps.s_rat(i)) {
                Ok(Some(p)) => polys[i] = p,
                Ok(None) => return Ok(ZhangOutcome::Fails { index: i }),
                Err(()) => return Ok(ZhangOutcome::Undecided { index: i }),
            }
        }
    }
    Ok(ZhangOutcome::FiniteDimensional(polys))
}

/// Basis of the common kernel of `t_ij(u)`, `i < j`.
pub fn highest_space(t: &TAction) -> Result<Vec<Vec<Rat>>> {
    let k = t.kappa();
    let ms: Vec<RFMatrix> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .map(|(i, j)| t.get(i, j).clone())
        .collect();
    if ms.is_empty() {
        return Ok((0..t.dim())
            .map(|i| crate::superlinalg::unit_vector(t.dim(), i))
            .collect());
    }
    crate::superlinalg::rfmat_kernel(&ms)
}
