//! Drinfeld functors: a dAHA module `M` is sent to a quotient of `M ⊗ V^{⊗l}`
//! carrying either `T^χ(u) = T_1⋯T_l` (type A) or
//! `B^χ(u) = T_1⋯T_l G^{ε,γ}(u) S_l(-u)⋯S_1(-u)` (type BC).
//!
//! All operator families are block matrices in the `t_ij` normalization, so
//! products are plain block products. Rational-function entries on the
//! quotient are recovered by evaluating at grid nodes and interpolating
//! against the known common denominator.

use crate::daha::{odot, sf_presentation, DahaModule, DahaParams};
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, rat, Poly, Rat, RatFun};
use crate::glmn::ParitySeq;
use crate::par;
use crate::superlinalg::{
    apply_at_factor, char_poly, family_degree_bound, family_den, grid_nodes, QMat, RFMatrix,
    SuperSpace,
};
use crate::twisted::{
    b_tensor, find_highest_space, highest_bweight, irreducible_burnside, BAction, Irreducibility,
    TwistedContext,
};
use crate::yangian::{eval_family, TAction};
use num::Zero;

/// Functor parameters. `θ1`, `θ2` are read from the dAHA module.
#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldParams {
    /// Parity sequence, `ε` sequence and `γ`.
    pub ctx: TwistedContext,
    /// The sign `ε = ±1` of the quotient.
    pub epsilon: i8,
    pub chi: Rat,
    /// Type-A shift in `u − χy_k + c`.
    pub c: Rat,
}

impl DrinfeldParams {
    pub fn new(ctx: TwistedContext, epsilon: i8, chi: Rat, c: Rat) -> Result<DrinfeldParams> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::Input(format!("ε must be ±1, got {epsilon}")));
        }
        Ok(DrinfeldParams {
            ctx,
            epsilon,
            chi,
            c,
        })
    }

    /// The type-BC preset `c = −ȷ`.
    pub fn bc(ctx: TwistedContext, epsilon: i8, chi: Rat) -> Result<DrinfeldParams> {
        let c = -ctx.ps.jbar();
        DrinfeldParams::new(ctx, epsilon, chi, c)
    }

    /// BC preset solving both constraints for the given dAHA parameters:
    /// `χ = ε/θ1` and `γ = (θ2/θ1 − ϖ_1)/2`.
    pub fn matched(ctx: &TwistedContext, epsilon: i8, daha: &DahaParams) -> Result<DrinfeldParams> {
        if daha.theta1.is_zero() {
            return Err(Error::ParameterConstraint("θ1 must be nonzero".into()));
        }
        let chi = rat(epsilon as i64) / &daha.theta1;
        let gamma = daha
            .theta2
            .as_ref()
            .map(|t2| (t2 / &daha.theta1 - ctx.varpi(0)) / rat(2));
        DrinfeldParams::bc(ctx.with_gamma(gamma), epsilon, chi)
    }

    pub fn gamma(&self) -> Rat {
        self.ctx.gamma.clone().unwrap_or_else(Rat::zero)
    }

    pub fn jbar(&self) -> Rat {
        self.ctx.ps.jbar()
    }

    /// `θ1 χ = ε`.
    pub fn constraint_a(&self, d: &DahaParams) -> Result<()> {
        if &d.theta1 * &self.chi != rat(self.epsilon as i64) {
            return Err(Error::ParameterConstraint(format!(
                "θ1·χ = {} but ε = {}",
                fmt_rat(&(&d.theta1 * &self.chi)),
                self.epsilon
            )));
        }
        Ok(())
    }

    /// `θ1 χ = ε` and `θ2 = θ1(2γ + ϖ_1)`.
    pub fn constraint_bc(&self, d: &DahaParams) -> Result<()> {
        self.constraint_a(d)?;
        let t2 = d
            .theta2
            .clone()
            .ok_or_else(|| Error::Input("type BC module required".into()))?;
        let want = &d.theta1 * (rat(2) * self.gamma() + self.ctx.varpi(0));
        if t2 != want {
            return Err(Error::ParameterConstraint(format!(
                "θ2 = {} but θ1(2γ+ϖ_1) = {}",
                fmt_rat(&t2),
                fmt_rat(&want)
            )));
        }
        Ok(())
    }
}

/// Operators on `V^{⊗l}` built from the graded matrix units.
#[derive(Clone, Debug)]
pub struct TensorPower {
    pub ps: ParitySeq,
    pub l: usize,
    spaces: Vec<SuperSpace>,
}

impl TensorPower {
    pub fn new(ps: &ParitySeq, l: usize) -> TensorPower {
        TensorPower {
            ps: ps.clone(),
            l,
            spaces: vec![ps.space(); l],
        }
    }

    pub fn space(&self) -> SuperSpace {
        SuperSpace::tensor_all(&self.spaces)
    }

    pub fn dim(&self) -> usize {
        self.ps.kappa().pow(self.l as u32)
    }

    fn op_at(&self, op: &QMat, k: usize, parity: u8) -> QMat {
        apply_at_factor(op, k + 1, &self.spaces, parity).expect("factor in range")
    }

    /// `E^{(k)}_ij`, 0-based `k`.
    pub fn unit(&self, k: usize, i: usize, j: usize) -> QMat {
        let n = self.ps.kappa();
        self.op_at(&QMat::unit(n, n, i, j), k, self.ps.pair_parity(i, j))
    }

    /// `P^{(a,b)} = Σ s_y E^{(a)}_xy E^{(b)}_yx`, the graded flip of factors `a`, `b`.
    pub fn flip(&self, a: usize, b: usize) -> QMat {
        let n = self.ps.kappa();
        let d = self.dim();
        let mut out = QMat::zeros(d, d);
        for x in 0..n {
            for y in 0..n {
                let t = self.unit(a, x, y).mul(&self.unit(b, y, x));
                out.add_assign_scaled(&t, &self.ps.s_rat(y));
            }
        }
        out
    }

    /// `G^ε` on factor `k`.
    pub fn g_at(&self, ctx: &TwistedContext, k: usize) -> QMat {
        self.op_at(&ctx.g_matrix(), k, 0)
    }

    fn digit(&self, w: usize, k: usize) -> usize {
        let n = self.ps.kappa();
        w / n.pow((self.l - 1 - k) as u32) % n
    }

    fn with_digit(&self, w: usize, k: usize, v: usize) -> usize {
        let p = self.ps.kappa().pow((self.l - 1 - k) as u32);
        w - self.digit(w, k) * p + v * p
    }

    fn prefix_parity(&self, w: usize, k: usize) -> u8 {
        (0..k).map(|r| self.ps.parity(self.digit(w, r))).sum::<u8>() % 2
    }
}

/// A factor of an ordered product of block operators on `M ⊗ V^{⊗l}`.
#[derive(Clone, Debug)]
enum Factor {
    /// `1 + coef (u − a)^{-1} ⊗ Q^{(k)}` with `a` acting on `M`.
    Q { k: usize, a: QMat, coef: Rat },
    /// `G^ε + γ/u`.
    G { gamma: Rat },
}

/// Block operators: `blocks[i]` is the `i`-th block row, a `D × cols` matrix.
type Blocks = Vec<QMat>;

struct Product<'a> {
    tp: &'a TensorPower,
    ctx: &'a TwistedContext,
    dm: usize,
    factors: Vec<Factor>,
}

impl Product<'_> {
    fn d(&self) -> usize {
        self.dm * self.tp.dim()
    }

    /// `(r ⊗ E^{(k)}_ij) x` without forming the Kronecker product.
    fn site(&self, r: &QMat, k: usize, i: usize, j: usize, x: &QMat) -> QMat {
        let vd = self.tp.dim();
        let pij = self.tp.ps.pair_parity(i, j);
        let mut out = QMat::zeros(x.rows(), x.cols());
        for w2 in (0..vd).filter(|&w| self.tp.digit(w, k) == i) {
            let w = self.tp.with_digit(w2, k, j);
            let neg = pij * self.tp.prefix_parity(w, k) % 2 == 1;
            for m in 0..self.dm {
                for m2 in 0..self.dm {
                    let c = r.get(m, m2);
                    if c.is_zero() {
                        continue;
                    }
                    let c = if neg { -c } else { c.clone() };
                    let src = x.row(m2 * vd + w);
                    let dst = m * vd + w2;
                    for (col, v) in src.iter().enumerate() {
                        if !v.is_zero() {
                            out.add_at(dst, col, &(&c * v));
                        }
                    }
                }
            }
        }
        out
    }

    /// `x + coef Σ_j s_i (r ⊗ E^{(k)}_ij) x_j` blockwise.
    fn apply_q(&self, r: &QMat, k: usize, coef: &Rat, x: &Blocks, with_identity: bool) -> Blocks {
        let n = self.tp.ps.kappa();
        (0..n)
            .map(|i| {
                let mut acc = if with_identity {
                    x[i].clone()
                } else {
                    QMat::zeros(x[i].rows(), x[i].cols())
                };
                let sc = coef * self.tp.ps.s_rat(i);
                for (j, xj) in x.iter().enumerate() {
                    acc.add_assign_scaled(&self.site(r, k, i, j, xj), &sc);
                }
                acc
            })
            .collect()
    }

    /// The product evaluated at `u`, applied to `x`.
    fn eval_apply(&self, u: &Rat, x: &Blocks) -> Result<Blocks> {
        let mut y = x.clone();
        for f in self.factors.iter().rev() {
            y = match f {
                Factor::Q { k, a, coef } => {
                    let r = QMat::scalar(self.dm, u)
                        .sub(a)
                        .inverse()
                        .map_err(|_| Error::Pole(u.clone()))?;
                    self.apply_q(&r, *k, coef, &y, true)
                }
                Factor::G { gamma } => {
                    if u.is_zero() {
                        return Err(Error::Pole(Rat::zero()));
                    }
                    let g = gamma / u;
                    y.iter()
                        .enumerate()
                        .map(|(i, b)| b.scale(&(self.ctx.eps_rat(i) + &g)))
                        .collect()
                }
            };
        }
        Ok(y)
    }

    /// Common denominator of all entries.
    fn den(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, f| match f {
            Factor::Q { a, .. } => &acc * &char_poly(a),
            Factor::G { .. } => &acc * &Poly::u(),
        })
    }

    /// Coefficients of `u^0, u^{-1}, …, u^{-order}` of the product applied to `x`.
    fn series_apply(&self, order: usize, x: &Blocks) -> Vec<Blocks> {
        let zero_like =
            |b: &Blocks| -> Blocks { b.iter().map(|m| QMat::zeros(m.rows(), m.cols())).collect() };
        let mut y: Vec<Blocks> = (0..=order)
            .map(|r| if r == 0 { x.clone() } else { zero_like(x) })
            .collect();
        for f in self.factors.iter().rev() {
            let mut next: Vec<Blocks> = (0..=order).map(|_| zero_like(x)).collect();
            match f {
                Factor::Q { k, a, coef } => {
                    // (u − a)^{-1} = Σ_{n ≥ 0} a^n u^{-n-1}
                    let mut pw = QMat::identity(self.dm);
                    let mut powers = Vec::new();
                    for _ in 0..order {
                        powers.push(pw.clone());
                        pw = pw.mul(a);
                    }
                    for r in 0..=order {
                        for (bi, b) in next[r].iter_mut().enumerate() {
                            *b = b.add(&y[r][bi]);
                        }
                        for s in 1..=r {
                            let t = self.apply_q(&powers[s - 1], *k, coef, &y[r - s], false);
                            for (bi, b) in next[r].iter_mut().enumerate() {
                                *b = b.add(&t[bi]);
                            }
                        }
                    }
                }
                Factor::G { gamma } => {
                    for r in 0..=order {
                        for (bi, b) in next[r].iter_mut().enumerate() {
                            *b = b.add(&y[r][bi].scale(&self.ctx.eps_rat(bi)));
                            if r >= 1 {
                                *b = b.add(&y[r - 1][bi].scale(gamma));
                            }
                        }
                    }
                }
            }
            y = next;
        }
        y
    }
}

fn identity_blocks(kappa: usize, d: usize) -> Blocks {
    (0..kappa)
        .map(|i| {
            QMat::from_fn(d, kappa * d, |r, c| {
                if c == i * d + r {
                    rat(1)
                } else {
                    Rat::zero()
                }
            })
        })
        .collect()
}

fn column_slice(m: &QMat, start: usize, len: usize) -> QMat {
    QMat::from_fn(m.rows(), len, |r, c| m.get(r, start + c).clone())
}

fn y_shifted(m: &DahaModule, k: usize, scale: &Rat, shift: &Rat) -> QMat {
    m.y[k].scale(scale).add(&QMat::scalar(m.dim, shift))
}

fn factors_a(m: &DahaModule, p: &DrinfeldParams) -> Vec<Factor> {
    (0..m.l())
        .map(|k| Factor::Q {
            k,
            a: y_shifted(m, k, &p.chi, &-p.c.clone()),
            coef: rat(1),
        })
        .collect()
}

fn factors_bc(m: &DahaModule, p: &DrinfeldParams) -> Vec<Factor> {
    let j = p.jbar();
    let l = m.l();
    let mut f: Vec<Factor> = (0..l)
        .map(|k| Factor::Q {
            k,
            a: y_shifted(m, k, &p.chi, &j),
            coef: rat(1),
        })
        .collect();
    f.push(Factor::G { gamma: p.gamma() });
    // S_k(−u) = 1 + (u − (ȷ − χy_k))^{-1} Q^{(k)}
    f.extend((0..l).rev().map(|k| Factor::Q {
        k,
        a: y_shifted(m, k, &-p.chi.clone(), &j),
        coef: rat(1),
    }));
    f
}

/// `M ⊗ V^{⊗l}` modulo a subspace, with explicit projection and section
/// fixed by the pivots of the reduced row echelon form of the subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient {
    pub ambient: SuperSpace,
    /// Echelon basis of the quotiented subspace `N`.
    pub kernel: Vec<Vec<Rat>>,
    /// `q × D`, kernel exactly `N`.
    pub projection: QMat,
    /// `D × q`, unit vectors on the non-pivot coordinates.
    pub section: QMat,
    pub space: SuperSpace,
}

impl Quotient {
    /// Quotient by `Σ Im(g − ε)` over the given operators.
    pub fn by_images(ambient: SuperSpace, ops: &[QMat], epsilon: &Rat) -> Quotient {
        let d = ambient.dim();
        let mut vecs = Vec::new();
        for g in ops {
            let h = g.sub(&QMat::scalar(d, epsilon));
            vecs.extend(
                (0..d)
                    .map(|c| h.column(c))
                    .filter(|v| v.iter().any(|x| !x.is_zero())),
            );
        }
        let (kernel, pivots) = if vecs.is_empty() {
            (vec![], vec![])
        } else {
            let (r, piv) = QMat::from_rows(vecs).expect("equal lengths").rref();
            (
                (0..piv.len())
                    .map(|i| r.row(i).to_vec())
                    .collect::<Vec<_>>(),
                piv,
            )
        };
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let q = free.len();
        let mut projection = QMat::zeros(q, d);
        for (t, &c) in free.iter().enumerate() {
            projection.set(t, c, rat(1));
            for (row, &p) in kernel.iter().zip(&pivots) {
                if !row[c].is_zero() {
                    projection.set(t, p, -row[c].clone());
                }
            }
        }
        let section = QMat::from_fn(d, q, |r, t| if r == free[t] { rat(1) } else { Rat::zero() });
        let space = SuperSpace::new(free.iter().map(|&c| ambient.parity(c)).collect());
        Quotient {
            ambient,
            kernel,
            projection,
            section,
            space,
        }
    }

    pub fn dim(&self) -> usize {
        self.section.cols()
    }

    pub fn kernel_matrix(&self) -> QMat {
        QMat::from_columns(self.ambient.dim(), &self.kernel)
    }
}

/// The induced action on the quotient.
#[derive(Clone, Debug, PartialEq)]
pub enum DrinfeldAction {
    A(TAction),
    BC(BAction),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldModule {
    pub params: DrinfeldParams,
    pub l: usize,
    pub quotient: Quotient,
    pub action: DrinfeldAction,
}

impl DrinfeldModule {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn t_action(&self) -> Option<&TAction> {
        match &self.action {
            DrinfeldAction::A(t) => Some(t),
            DrinfeldAction::BC(_) => None,
        }
    }

    pub fn b_action(&self) -> Option<&BAction> {
        match &self.action {
            DrinfeldAction::BC(b) => Some(b),
            DrinfeldAction::A(_) => None,
        }
    }
}

/// Generators of the diagonal `W_l` action whose images, shifted by `−ε`, span `N`.
fn diagonal_ops(
    m: &DahaModule,
    tp: &TensorPower,
    ctx: &TwistedContext,
    with_varsigma: bool,
) -> Vec<QMat> {
    let l = m.l();
    let mut ops: Vec<QMat> = (0..l.saturating_sub(1))
        .map(|i| m.sigma[i].kron(&tp.flip(i, i + 1)))
        .collect();
    if with_varsigma {
        if let Some(v) = &m.sigma_l {
            ops.push(v.kron(&tp.g_at(ctx, l - 1)));
        }
    }
    ops
}

fn ambient_space(m: &DahaModule, tp: &TensorPower) -> SuperSpace {
    SuperSpace::even(m.dim).tensor(&tp.space())
}

/// Evaluates the product on `[section | N]` at enough nodes, certifies that
/// every block maps `N` into `N`, and interpolates the quotient blocks.
fn induced_family(prod: &Product, quot: &Quotient, name: &str) -> Result<Vec<RFMatrix>> {
    let n = prod.tp.ps.kappa();
    let d = prod.d();
    let q = quot.dim();
    let w = d;
    let seed = &quot.section;
    let kern = quot.kernel_matrix();
    let both = QMat::from_fn(d, w, |r, c| {
        if c < q {
            seed.get(r, c).clone()
        } else {
            kern.get(r, c - q).clone()
        }
    });
    let x0: Blocks = (0..n)
        .map(|i| {
            QMat::from_fn(d, n * w, |r, c| {
                if c / w == i {
                    both.get(r, c % w).clone()
                } else {
                    Rat::zero()
                }
            })
        })
        .collect();
    let den = prod.den();
    let nodes = grid_nodes(den.deg() + 1, &ratio_offset(), std::slice::from_ref(&den))?;
    let evals: Vec<Result<Vec<QMat>>> = par::map(&nodes, |u| {
        let y = prod.eval_apply(u, &x0)?;
        let mut out = Vec::with_capacity(n * n);
        for (i, yi) in y.iter().enumerate() {
            let py = quot.projection.mul(yi);
            for j in 0..n {
                let blk = column_slice(&py, j * w, w);
                if let Some((r, c)) = first_nonzero(&column_slice(&blk, q, w - q)) {
                    return Err(Error::WellDefinedness(format!(
                        "{name}_{}{}({}) maps kernel vector #{} out of N (quotient coordinate {})",
                        i + 1,
                        j + 1,
                        fmt_rat(u),
                        c + 1,
                        r + 1
                    )));
                }
                out.push(column_slice(&blk, 0, q));
            }
        }
        Ok(out)
    });
    let evals: Vec<Vec<QMat>> = evals.into_iter().collect::<Result<_>>()?;
    let dvals: Vec<Rat> = nodes.iter().map(|u| den.eval(u)).collect();
    Ok((0..n * n)
        .map(|b| {
            RFMatrix::from_fn(q, q, |r, c| {
                let ys: Vec<Rat> = evals
                    .iter()
                    .zip(&dvals)
                    .map(|(e, dv)| e[b].get(r, c) * dv)
                    .collect();
                RatFun::new(Poly::interpolate(&nodes, &ys), den.clone())
            })
        })
        .collect())
}

fn ratio_offset() -> Rat {
    Rat::new(1.into(), 7.into())
}

fn first_nonzero(m: &QMat) -> Option<(usize, usize)> {
    (0..m.rows()).find_map(|r| {
        (0..m.cols())
            .find(|&c| !m.get(r, c).is_zero())
            .map(|c| (r, c))
    })
}

/// Type-A Drinfeld functor `D_s^ε(M)` with `T^χ(u) = T_1(u)⋯T_l(u)`.
///
/// The image of `N` is certified first, so a violated constraint that breaks
/// well-definedness surfaces as [`Error::WellDefinedness`].
pub fn drinfeld_a(m: &DahaModule, params: &DrinfeldParams) -> Result<DrinfeldModule> {
    let tp = TensorPower::new(&params.ctx.ps, m.l());
    let quot = Quotient::by_images(
        ambient_space(m, &tp),
        &diagonal_ops(m, &tp, &params.ctx, false),
        &rat(params.epsilon as i64),
    );
    let prod = Product {
        tp: &tp,
        ctx: &params.ctx,
        dm: m.dim,
        factors: factors_a(m, params),
    };
    let t = induced_family(&prod, &quot, "t")?;
    params.constraint_a(&m.params)?;
    let act = TAction::new(params.ctx.ps.clone(), quot.space.clone(), t)?;
    Ok(DrinfeldModule {
        params: params.clone(),
        l: m.l(),
        quotient: quot,
        action: DrinfeldAction::A(act),
    })
}

/// Type-BC Drinfeld functor `D_{s,ε}^ε(M)` with the action `B^χ(u)`.
pub fn drinfeld_bc(m: &DahaModule, params: &DrinfeldParams) -> Result<DrinfeldModule> {
    if m.sigma_l.is_none() {
        return Err(Error::Input("type BC module required".into()));
    }
    let tp = TensorPower::new(&params.ctx.ps, m.l());
    let quot = Quotient::by_images(
        ambient_space(m, &tp),
        &diagonal_ops(m, &tp, &params.ctx, true),
        &rat(params.epsilon as i64),
    );
    let prod = Product {
        tp: &tp,
        ctx: &params.ctx,
        dm: m.dim,
        factors: factors_bc(m, params),
    };
    let b = induced_family(&prod, &quot, "b")?;
    params.constraint_bc(&m.params)?;
    let act = BAction::new(params.ctx.clone(), quot.space.clone(), b)?;
    Ok(DrinfeldModule {
        params: params.clone(),
        l: m.l(),
        quotient: quot,
        action: DrinfeldAction::BC(act),
    })
}

/// `T_k(u) S_k(u) = 1` on `M ⊗ V^{⊗l}`, certified on a degree-bounded grid.
pub fn ts_identity(m: &DahaModule, params: &DrinfeldParams, k: usize) -> Result<bool> {
    let tp = TensorPower::new(&params.ctx.ps, m.l());
    let j = params.jbar();
    let factors = vec![
        Factor::Q {
            k,
            a: y_shifted(m, k, &params.chi, &j),
            coef: rat(1),
        },
        // S_k(u) = 1 − (u − (χy_k − ȷ))^{-1} Q^{(k)}
        Factor::Q {
            k,
            a: y_shifted(m, k, &params.chi, &-j),
            coef: rat(-1),
        },
    ];
    let prod = Product {
        tp: &tp,
        ctx: &params.ctx,
        dm: m.dim,
        factors,
    };
    let n = tp.ps.kappa();
    let d = prod.d();
    let x0 = identity_blocks(n, d);
    let den = prod.den();
    let nodes = grid_nodes(den.deg() + 1, &ratio_offset(), std::slice::from_ref(&den))?;
    for u in &nodes {
        if prod.eval_apply(u, &x0)? != x0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first coefficient of `B^χ(u)` that disagrees with its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionFailure {
    pub order: usize,
    pub i: usize,
    pub j: usize,
}

/// Compares the `u^0`, `u^{-1}`, `u^{-2}` coefficients of `B^χ(u)` on
/// `M ⊗ V^{⊗l}` with their closed forms. The order-2 identity is taken modulo
/// `N`, i.e. after applying the quotient projection.
pub fn bchi_expansion_check(
    m: &DahaModule,
    params: &DrinfeldParams,
) -> Result<Option<ExpansionFailure>> {
    let ctx = &params.ctx;
    let n = ctx.kappa();
    let tp = TensorPower::new(&ctx.ps, m.l());
    let prod = Product {
        tp: &tp,
        ctx,
        dm: m.dim,
        factors: factors_bc(m, params),
    };
    let d = prod.d();
    let series = prod.series_apply(2, &identity_blocks(n, d));
    let block = |r: usize, i: usize, j: usize| column_slice(&series[r][i], j * d, d);
    let im = QMat::identity(m.dim);
    let sum_units = |i: usize, j: usize, left: &dyn Fn(usize) -> QMat| {
        (0..m.l()).fold(QMat::zeros(d, d), |acc, k| {
            acc.add(&left(k).kron(&tp.unit(k, i, j)))
        })
    };
    let fail = |order, i, j| Ok(Some(ExpansionFailure { order, i, j }));
    for i in 0..n {
        for j in 0..n {
            let want0 = if i == j {
                QMat::scalar(d, &ctx.eps_rat(i))
            } else {
                QMat::zeros(d, d)
            };
            if block(0, i, j) != want0 {
                return fail(0, i, j);
            }
            let mut want1 = sum_units(i, j, &|_| im.clone())
                .scale(&(ctx.ps.s_rat(i) * (ctx.eps_rat(i) + ctx.eps_rat(j))));
            if i == j {
                want1 = want1.add(&QMat::scalar(d, &params.gamma()));
            }
            if block(1, i, j) != want1 {
                return fail(1, i, j);
            }
        }
    }
    let sf = sf_presentation(m)?;
    let quot = Quotient::by_images(
        ambient_space(m, &tp),
        &diagonal_ops(m, &tp, ctx, true),
        &rat(params.epsilon as i64),
    );
    let scale = rat(params.epsilon as i64) * &m.params.theta1;
    for i in 0..n {
        for j in (0..n).filter(|&j| ctx.eps(j) != ctx.eps(i)) {
            let lhs = block(2, i, j).scale(&(&scale * ctx.ps.s_rat(i)));
            let rhs = sum_units(i, j, &|k| sf.ys[k].clone()).scale(&(rat(-2) * ctx.eps_rat(i)));
            if !quot.projection.mul(&lhs.sub(&rhs)).is_zero() {
                return fail(2, i, j);
            }
        }
    }
    Ok(None)
}

/// A failed operator identity on `V^{⊗l} ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub id: String,
    /// Row and column of the first differing matrix entry.
    pub entry: (usize, usize),
}

/// Operators on `W ⊗ V` with `W = V^{⊗l}`, as graded Kronecker products.
struct Aux<'a> {
    tp: &'a TensorPower,
    ctx: &'a TwistedContext,
    w: SuperSpace,
}

impl Aux<'_> {
    fn sign(&self, i: usize, j: usize) -> Rat {
        // (−1)^{|i||j| + |i| + |j|}
        self.ctx.ps.sign_std(i, j) * self.ctx.ps.s_rat(i)
    }

    fn q(&self, k: usize, pick: impl Fn(usize, usize) -> bool) -> QMat {
        let n = self.ctx.kappa();
        let d = self.tp.dim() * n;
        let mut out = QMat::zeros(d, d);
        for i in 0..n {
            for j in (0..n).filter(|&j| pick(i, j)) {
                let t = self.tp.unit(k, i, j).super_kron(
                    &self.w,
                    &QMat::unit(n, n, i, j),
                    self.ctx.ps.pair_parity(i, j),
                );
                out.add_assign_scaled(&t, &self.sign(i, j));
            }
        }
        out
    }

    fn g(&self) -> QMat {
        QMat::identity(self.tp.dim()).kron(&self.ctx.g_matrix())
    }

    /// `X_ij` with `X = Σ (−1)^{|i||j|+|j|} X_ij ⊗ E_ij`.
    fn entry(&self, x: &QMat, i: usize, j: usize) -> QMat {
        let n = self.ctx.kappa();
        let pij = self.ctx.ps.pair_parity(i, j);
        let sgn = self.ctx.ps.sign_std(i, j);
        QMat::from_fn(self.tp.dim(), self.tp.dim(), |a, b| {
            let v = x.get(a * n + i, b * n + j) * &sgn;
            if pij * self.w.parity(b) % 2 == 1 {
                -v
            } else {
                v
            }
        })
    }
}

fn compare(id: String, lhs: &QMat, rhs: &QMat) -> std::result::Result<(), IdentityFailure> {
    match first_nonzero(&lhs.sub(rhs)) {
        None => Ok(()),
        Some(entry) => Err(IdentityFailure { id, entry }),
    }
}

/// The operator identities behind the BC functor: `Q² = 2ȷQ`, the `𝔨/𝔭`
/// (anti)commutator identities, `G Q + Q G`, and the two entrywise identities
/// for `ε_i ≠ ε_j` relating flips and `ς_k` to products of `Q`.
pub fn appendix_identities(
    ctx: &TwistedContext,
    l: usize,
) -> std::result::Result<(), IdentityFailure> {
    let ps = &ctx.ps;
    let n = ctx.kappa();
    let tp = TensorPower::new(ps, l);
    let aux = Aux {
        tp: &tp,
        ctx,
        w: tp.space(),
    };
    let two_j = ps.rho(0);
    let varpi1 = ctx.varpi(0);
    let g = aux.g();
    let qs: Vec<QMat> = (0..l).map(|k| aux.q(k, |_, _| true)).collect();
    for k in 0..l {
        let q = &qs[k];
        compare(format!("Q{}^2", k + 1), &q.mul(q), &q.scale(&two_j))?;
        let qk = aux.q(k, |i, j| ctx.eps(i) == ctx.eps(j));
        let qp = aux.q(k, |i, j| ctx.eps(i) != ctx.eps(j));
        compare(
            format!("kp-anticommutator-{}", k + 1),
            &qk.anticommutator(&qp),
            &qp.scale(&two_j),
        )?;
        compare(
            format!("kp-commutator-{}", k + 1),
            &g.mul(&qk.commutator(&qp)),
            &qp.scale(&varpi1),
        )?;
        let weighted = {
            let d = tp.dim() * n;
            let mut out = QMat::zeros(d, d);
            for i in 0..n {
                for j in 0..n {
                    let t = tp.unit(k, i, j).super_kron(
                        &aux.w,
                        &QMat::unit(n, n, i, j),
                        ps.pair_parity(i, j),
                    );
                    out.add_assign_scaled(
                        &t,
                        &(aux.sign(i, j) * (ctx.eps_rat(i) + ctx.eps_rat(j))),
                    );
                }
            }
            out
        };
        compare(
            format!("GQ+QG-{}", k + 1),
            &g.mul(q).add(&q.mul(&g)),
            &weighted,
        )?;
    }
    let vd = tp.dim();
    let mut ordered = QMat::zeros(vd * n, vd * n);
    let mut middle = QMat::zeros(vd * n, vd * n);
    for k in 0..l {
        for r in 0..l {
            if k < r {
                ordered = ordered.add(&qs[k].mul(&qs[r]).mul(&g));
            } else if r < k {
                ordered = ordered.add(&g.mul(&qs[k]).mul(&qs[r]));
            }
            middle = middle.add(&qs[k].mul(&g).mul(&qs[r]));
        }
    }
    let flip = |a: usize, b: usize| tp.flip(a.min(b), a.max(b));
    let vs: Vec<QMat> = (0..l).map(|k| tp.g_at(ctx, k)).collect();
    for i in 0..n {
        for j in (0..n).filter(|&j| ctx.eps(j) != ctx.eps(i)) {
            let si = ps.s_rat(i);
            let mut lhs1 = QMat::zeros(vd, vd);
            let mut lhs2 = QMat::zeros(vd, vd);
            for k in 0..l {
                let e = tp.unit(k, i, j);
                let mut a = QMat::zeros(vd, vd);
                let mut b = vs[k].scale(&varpi1);
                for r in 0..l {
                    if r < k {
                        a = a.add(&flip(r, k));
                    } else if r > k {
                        a = a.sub(&flip(r, k));
                    }
                    if r != k {
                        b = b.add(&flip(k, r).mul(&vs[r]).mul(&vs[k]));
                    }
                }
                lhs1 = lhs1.add(&a.mul(&e));
                lhs2 = lhs2.add(&b.mul(&e));
            }
            let ei = ctx.eps_rat(i);
            compare(
                format!("flip-sum-{}{}", i + 1, j + 1),
                &lhs1.scale(&si),
                &aux.entry(&ordered, i, j).scale(&-ei.clone()),
            )?;
            compare(
                format!("varsigma-sum-{}{}", i + 1, j + 1),
                &lhs2.scale(&si),
                &aux.entry(&middle, i, j).scale(&ei),
            )?;
        }
    }
    Ok(())
}

/// Outcome of comparing `D(M1 ⊙ M2)` with `D(M1) ⊗ D(M2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorCheck {
    pub dims: (usize, usize),
    pub lhs_weights: Vec<Vec<RatFun>>,
    pub rhs_weights: Vec<Vec<RatFun>>,
    pub lhs_irreducible: Option<Irreducibility>,
    pub rhs_irreducible: Option<Irreducibility>,
    /// Invertible `X` with `b^{lhs}_ij(u) X = X b^{rhs}_ij(u)`.
    pub intertwiner: Option<QMat>,
    pub mismatch: Option<String>,
}

impl TensorCheck {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn highest_weights(b: &BAction) -> Result<Vec<Vec<RatFun>>> {
    let hs = find_highest_space(b)?;
    let mut out = Vec::new();
    for (v, _) in &hs.basis {
        if let Ok(w) = highest_bweight(b, v) {
            out.push(w.mu);
        }
    }
    out.sort_by_key(|w| format!("{w:?}"));
    Ok(out)
}

fn same_verdict(a: &Irreducibility, b: &Irreducibility) -> bool {
    matches!(
        (a, b),
        (
            Irreducibility::Irreducible { .. },
            Irreducibility::Irreducible { .. }
        ) | (
            Irreducibility::Reducible { .. },
            Irreducibility::Reducible { .. }
        )
    )
}

/// Solves `L(u) X = X R(u)` on a degree-bounded grid and returns an
/// invertible solution if one exists among the basis and its sum.
pub fn find_intertwiner(lhs: &BAction, rhs: &BAction) -> Result<Option<QMat>> {
    let (dl, dr) = (lhs.dim(), rhs.dim());
    let refs: Vec<&RFMatrix> = lhs.b.iter().chain(rhs.b.iter()).collect();
    let den = family_den(&refs);
    let nodes = grid_nodes(
        2 * family_degree_bound(&refs) + 1,
        &ratio_offset(),
        std::slice::from_ref(&den),
    )?;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for u in &nodes {
        let (l_vals, r_vals) = (eval_family(&lhs.b, u)?, eval_family(&rhs.b, u)?);
        for (lm, rm) in l_vals.iter().zip(&r_vals) {
            for a in 0..dl {
                for c in 0..dr {
                    let mut row = vec![Rat::zero(); dl * dr];
                    for p in 0..dl {
                        row[p * dr + c] += lm.get(a, p);
                    }
                    for r in 0..dr {
                        row[a * dr + r] -= rm.get(r, c);
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        // Keep the system small.
        if !rows.is_empty() {
            let (r, piv) = QMat::from_rows(rows.clone())?.rref();
            rows = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
        }
    }
    let sols = if rows.is_empty() {
        (0..dl * dr)
            .map(|i| crate::superlinalg::unit_vector(dl * dr, i))
            .collect()
    } else {
        QMat::from_rows(rows)?.nullspace()
    };
    if dl != dr {
        return Ok(None);
    }
    let as_mat = |v: &[Rat]| QMat::from_fn(dl, dr, |a, c| v[a * dr + c].clone());
    let mut candidates: Vec<Vec<Rat>> = sols.clone();
    if sols.len() > 1 {
        let mut comb = vec![Rat::zero(); dl * dr];
        for (t, s) in sols.iter().enumerate() {
            for (x, y) in comb.iter_mut().zip(s) {
                *x += y * rat(t as i64 + 1);
            }
        }
        candidates.push(comb);
    }
    Ok(candidates
        .iter()
        .map(|v| as_mat(v))
        .find(|x| !x.det().is_zero()))
}

/// `D(M1 ⊙ M2)` against `D_A(M1) ⊗ D(M2)`, the type-A factor taken with the
/// BC preset `c = −ȷ`.
pub fn functor_tensor_check(
    m1: &DahaModule,
    m2: &DahaModule,
    params: &DrinfeldParams,
) -> Result<TensorCheck> {
    let big = odot(m1, m2)?;
    let lhs = drinfeld_bc(&big, params)?;
    let pa = DrinfeldParams {
        c: -params.jbar(),
        ..params.clone()
    };
    let left = drinfeld_a(m1, &pa)?;
    let right = drinfeld_bc(m2, params)?;
    let lb = lhs.b_action().expect("BC action").clone();
    let rb = b_tensor(
        left.t_action().expect("A action"),
        right.b_action().expect("BC action"),
    )?;
    let mut out = TensorCheck {
        dims: (lb.dim(), rb.dim()),
        lhs_weights: vec![],
        rhs_weights: vec![],
        lhs_irreducible: None,
        rhs_irreducible: None,
        intertwiner: None,
        mismatch: None,
    };
    if lb.dim() != rb.dim() {
        out.mismatch = Some(format!("dimension {} vs {}", lb.dim(), rb.dim()));
        return Ok(out);
    }
    if lb.dim() == 0 {
        return Ok(out);
    }
    out.lhs_weights = highest_weights(&lb)?;
    out.rhs_weights = highest_weights(&rb)?;
    if out.lhs_weights != out.rhs_weights {
        out.mismatch = Some("highest weights differ".into());
        return Ok(out);
    }
    let (li, ri) = (irreducible_burnside(&lb)?, irreducible_burnside(&rb)?);
    let agree = same_verdict(&li, &ri);
    out.lhs_irreducible = Some(li);
    out.rhs_irreducible = Some(ri);
    if !agree {
        out.mismatch = Some("irreducibility verdicts differ".into());
        return Ok(out);
    }
    out.intertwiner = find_intertwiner(&lb, &rb)?;
    if out.intertwiner.is_none() {
        out.mismatch = Some("no invertible intertwiner".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha::{char_module, principal_series, verify_daha};
    use crate::twisted::verify_b;
    use crate::yangian::verify_rtt;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn flip_is_graded_swap() {
        let ps = ParitySeq::of(&[1, -1]);
        let tp = TensorPower::new(&ps, 2);
        let p = tp.flip(0, 1);
        assert_eq!(p.mul(&p), QMat::identity(4));
        // v_2 ⊗ v_2 (both odd) picks up a sign.
        assert_eq!(p.get(3, 3), &rat(-1));
        assert_eq!(p.get(1, 2), &rat(1));
    }

    #[test]
    fn single_strand_is_shifted_evaluation() {
        let ps = ParitySeq::of(&[1, -1]);
        let ctx = TwistedContext::new(ps.clone(), vec![1, 1], None).unwrap();
        let dp = DahaParams::type_a(1, rat(2)).unwrap();
        let m = char_module(&dp, 1, 1);
        let p = DrinfeldParams::new(ctx, 1, r(1, 2), rat(3)).unwrap();
        let dm = drinfeld_a(&m, &p).unwrap();
        assert_eq!(dm.dim(), 2);
        let t = dm.t_action().unwrap();
        // t_ij = δ_ij + s_i e_ij/(u − z) with z = χy − c
        let z = &p.chi * m.y[0].get(0, 0) - &p.c;
        let pole = RatFun::pole_at(&z);
        assert_eq!(t.get(0, 1).get(1, 0), &RatFun::zero());
        assert_eq!(t.get(1, 0).get(1, 0), &pole.scale(&rat(-1)));
        assert_eq!(t.get(0, 0).get(0, 0), &(&RatFun::one() + &pole));
        assert!(verify_rtt(t).unwrap().passed());
    }

    #[test]
    fn type_a_two_strands() {
        let ps = ParitySeq::of(&[1, -1]);
        let ctx = TwistedContext::new(ps, vec![1, 1], None).unwrap();
        let dp = DahaParams::type_a(2, rat(1)).unwrap();
        let m = principal_series(&dp, &[rat(0), r(1, 2)]).unwrap();
        let p = DrinfeldParams::new(ctx.clone(), 1, rat(1), rat(0)).unwrap();
        let dm = drinfeld_a(&m, &p).unwrap();
        assert!(dm.dim() > 0);
        assert!(verify_rtt(dm.t_action().unwrap()).unwrap().passed());
        let bad = DrinfeldParams::new(ctx, 1, rat(-1), rat(0)).unwrap();
        assert!(matches!(
            drinfeld_a(&m, &bad),
            Err(Error::WellDefinedness(_))
        ));
    }

    fn bc_instance(s: &[i8], eps: &[i8], l: usize) -> (DahaModule, DrinfeldParams) {
        let ctx = TwistedContext::of(s, eps);
        let dp = DahaParams::bc(l, rat(1), r(3, 2)).unwrap();
        let lam: Vec<Rat> = (0..l).map(|k| r(2 * k as i64 + 1, 3)).collect();
        let m = principal_series(&dp, &lam).unwrap();
        let p = DrinfeldParams::matched(&ctx, 1, &dp).unwrap();
        (m, p)
    }

    #[test]
    fn bc_single_strand_passes_verify_b() {
        let (m, p) = bc_instance(&[1, -1], &[1, -1], 1);
        let dm = drinfeld_bc(&m, &p).unwrap();
        assert!(dm.dim() > 0);
        assert!(verify_b(dm.b_action().unwrap()).unwrap().passed());
    }

    #[test]
    fn bc_two_strands_and_negative_controls() {
        let (m, p) = bc_instance(&[1, -1], &[1, -1], 2);
        assert!(verify_daha(&m).is_ok());
        let dm = drinfeld_bc(&m, &p).unwrap();
        assert!(dm.dim() > 0);
        assert!(verify_b(dm.b_action().unwrap()).unwrap().passed());
        let wrong_chi = DrinfeldParams {
            chi: -p.chi.clone(),
            ..p.clone()
        };
        assert!(matches!(
            drinfeld_bc(&m, &wrong_chi),
            Err(Error::WellDefinedness(_))
        ));
        let wrong_gamma = DrinfeldParams {
            ctx: p.ctx.with_gamma(Some(p.gamma() + rat(1))),
            ..p.clone()
        };
        assert!(matches!(
            drinfeld_bc(&m, &wrong_gamma),
            Err(Error::WellDefinedness(_))
        ));
    }

    #[test]
    fn t_times_s_is_one() {
        for s in [[1i8, -1], [1, 1]] {
            let (m, p) = bc_instance(&s, &[1, -1], 2);
            for k in 0..2 {
                assert!(ts_identity(&m, &p, k).unwrap());
            }
        }
    }

    #[test]
    fn expansion_to_order_two() {
        let (m, p) = bc_instance(&[1, -1], &[1, -1], 2);
        assert_eq!(bchi_expansion_check(&m, &p).unwrap(), None);
        let (m, p) = bc_instance(&[1, 1], &[1, -1], 2);
        assert_eq!(bchi_expansion_check(&m, &p).unwrap(), None);
    }

    #[test]
    fn appendix_identities_small() {
        for (s, e) in [
            (vec![1, -1], vec![1, -1]),
            (vec![1, 1], vec![1, -1]),
            (vec![1, -1, 1], vec![1, -1, -1]),
        ] {
            let ctx = TwistedContext::of(&s, &e);
            for l in 1..=2 {
                assert_eq!(
                    appendix_identities(&ctx, l),
                    Ok(()),
                    "s={s:?} ε={e:?} l={l}"
                );
            }
        }
    }

    #[test]
    fn tensor_compatibility_one_plus_one() {
        let ctx = TwistedContext::of(&[1, -1], &[1, -1]);
        let t1 = rat(1);
        let t2 = r(3, 2);
        let a = char_module(&DahaParams::type_a(1, t1.clone()).unwrap(), 1, 1);
        let mut a = a;
        a.y[0] = QMat::scalar(1, &r(2, 3));
        let b = char_module(&DahaParams::bc(1, t1, t2).unwrap(), 1, 1);
        let p = DrinfeldParams::matched(&ctx, 1, &b.params).unwrap();
        let rep = functor_tensor_check(&a, &b, &p).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatch);
    }
}
