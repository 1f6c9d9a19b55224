//! Degenerate affine Hecke algebras of types A_l and BC_l acting by matrices.

use crate::error::{Error, Result};
use crate::exactalg::{rat, Rat};
use crate::superlinalg::QMat;
use num::Zero;
use std::collections::HashMap;

/// `θ1` and, for type BC, `θ2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DahaParams {
    pub l: usize,
    pub theta1: Rat,
    pub theta2: Option<Rat>,
}

impl DahaParams {
    pub fn new(l: usize, theta1: Rat, theta2: Option<Rat>) -> Result<DahaParams> {
        if l == 0 {
            return Err(Error::Input("l must be positive".into()));
        }
        if theta1.is_zero() || theta2.as_ref().is_some_and(|t| t.is_zero()) {
            return Err(Error::ParameterConstraint(
                "θ1 and θ2 must be nonzero".into(),
            ));
        }
        Ok(DahaParams { l, theta1, theta2 })
    }

    pub fn bc(l: usize, theta1: Rat, theta2: Rat) -> Result<DahaParams> {
        DahaParams::new(l, theta1, Some(theta2))
    }

    pub fn type_a(l: usize, theta1: Rat) -> Result<DahaParams> {
        DahaParams::new(l, theta1, None)
    }

    pub fn is_bc(&self) -> bool {
        self.theta2.is_some()
    }
}

/// A signed permutation `w(e_i) = sign[i] e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(l: usize) -> SignedPerm {
        SignedPerm {
            perm: (0..l).collect(),
            sign: vec![1; l],
        }
    }

    /// `(self ∘ o)(e_i) = self(o(e_i))`.
    pub fn compose(&self, o: &SignedPerm) -> SignedPerm {
        let l = self.perm.len();
        SignedPerm {
            perm: (0..l).map(|i| self.perm[o.perm[i]]).collect(),
            sign: (0..l).map(|i| o.sign[i] * self.sign[o.perm[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let l = self.perm.len();
        let mut perm = vec![0; l];
        let mut sign = vec![1; l];
        for i in 0..l {
            perm[self.perm[i]] = i;
            sign[self.perm[i]] = self.sign[i];
        }
        SignedPerm { perm, sign }
    }

    /// Transposition of `i` and `j` (0-based).
    pub fn transposition(l: usize, i: usize, j: usize) -> SignedPerm {
        let mut w = SignedPerm::identity(l);
        w.perm.swap(i, j);
        w
    }

    /// Sign change at `i` (0-based).
    pub fn flip(l: usize, i: usize) -> SignedPerm {
        let mut w = SignedPerm::identity(l);
        w.sign[i] = -1;
        w
    }
}

/// Simple generators: `σ_1, …, σ_{l−1}` then `ς_l` for type BC.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    /// 0-based `i`, swapping positions `i` and `i+1`.
    Sigma(usize),
    SigmaL,
}

impl Gen {
    fn element(&self, l: usize) -> SignedPerm {
        match *self {
            Gen::Sigma(i) => SignedPerm::transposition(l, i, i + 1),
            Gen::SigmaL => SignedPerm::flip(l, l - 1),
        }
    }
}

/// The Weyl group enumerated in breadth-first order from the identity; each
/// non-identity element `w` is stored as `g · w′` with `w′` earlier.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub l: usize,
    pub gens: Vec<Gen>,
    pub elems: Vec<SignedPerm>,
    pub words: Vec<Option<(Gen, usize)>>,
    index: HashMap<SignedPerm, usize>,
}

impl WeylGroup {
    pub fn new(l: usize, bc: bool) -> WeylGroup {
        let mut gens: Vec<Gen> = (0..l.saturating_sub(1)).map(Gen::Sigma).collect();
        if bc {
            gens.push(Gen::SigmaL);
        }
        WeylGroup::generated(l, &gens)
    }

    /// The subgroup generated by `gens`.
    pub fn generated(l: usize, gens: &[Gen]) -> WeylGroup {
        let id = SignedPerm::identity(l);
        let mut elems = vec![id.clone()];
        let mut words = vec![None];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < elems.len() {
            for g in gens {
                let w = g.element(l).compose(&elems[head]);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), elems.len());
                    elems.push(w);
                    words.push(Some((*g, head)));
                }
            }
            head += 1;
        }
        WeylGroup {
            l,
            gens: gens.to_vec(),
            elems,
            words,
            index,
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Generator word `g_1 ⋯ g_k` of element `idx`, leftmost first.
    pub fn word(&self, mut idx: usize) -> Vec<Gen> {
        let mut out = Vec::new();
        while let Some((g, p)) = self.words[idx] {
            out.push(g);
            idx = p;
        }
        out
    }
}

/// Matrices for `σ_i`, `ς_l` and `y_i` on a module.
#[derive(Clone, Debug, PartialEq)]
pub struct DahaModule {
    pub params: DahaParams,
    pub dim: usize,
    pub sigma: Vec<QMat>,
    pub sigma_l: Option<QMat>,
    pub y: Vec<QMat>,
}

impl DahaModule {
    pub fn new(
        params: DahaParams,
        sigma: Vec<QMat>,
        sigma_l: Option<QMat>,
        y: Vec<QMat>,
    ) -> Result<DahaModule> {
        let l = params.l;
        let dim = y.first().map(|m| m.rows()).unwrap_or(0);
        if y.len() != l || sigma.len() + 1 != l || sigma_l.is_some() != params.is_bc() {
            return Err(Error::DimensionMismatch(
                "generator counts do not match l".into(),
            ));
        }
        if y.iter()
            .chain(&sigma)
            .chain(sigma_l.iter())
            .any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(Error::DimensionMismatch(
                "generator matrices differ in size".into(),
            ));
        }
        Ok(DahaModule {
            params,
            dim,
            sigma,
            sigma_l,
            y,
        })
    }

    pub fn l(&self) -> usize {
        self.params.l
    }

    pub fn gen_matrix(&self, g: Gen) -> &QMat {
        match g {
            Gen::Sigma(i) => &self.sigma[i],
            Gen::SigmaL => self.sigma_l.as_ref().expect("type BC module"),
        }
    }

    /// Matrix of a group element, via its generator word.
    pub fn element_matrix(&self, w: &SignedPerm) -> Result<QMat> {
        let grp = WeylGroup::new(self.l(), self.params.is_bc());
        let idx = grp
            .index_of(w)
            .ok_or_else(|| Error::Input("element outside the Weyl group".into()))?;
        Ok(grp
            .word(idx)
            .iter()
            .fold(QMat::identity(self.dim), |acc, g| {
                acc.mul(self.gen_matrix(*g))
            }))
    }

    /// `σ_ij` (0-based, `i ≠ j`).
    pub fn sigma_ij(&self, i: usize, j: usize) -> Result<QMat> {
        self.element_matrix(&SignedPerm::transposition(self.l(), i, j))
    }

    /// `ς_i` (0-based).
    pub fn varsigma(&self, i: usize) -> Result<QMat> {
        self.element_matrix(&SignedPerm::flip(self.l(), i))
    }

    /// Restriction to the type-A subalgebra `⟨σ_i, y_i⟩`.
    pub fn restrict_type_a(&self) -> DahaModule {
        DahaModule {
            params: DahaParams {
                theta2: None,
                ..self.params.clone()
            },
            sigma_l: None,
            ..self.clone()
        }
    }
}

/// Checks every defining relation; returns the first failing relation id.
pub fn verify_daha(m: &DahaModule) -> std::result::Result<(), String> {
    let l = m.l();
    let n = m.dim;
    let id = QMat::identity(n);
    let t1 = QMat::scalar(n, &m.params.theta1);
    let fail = |ok: bool, name: String| if ok { Ok(()) } else { Err(name) };
    for i in 0..l.saturating_sub(1) {
        let s = &m.sigma[i];
        fail(s.mul(s) == id, format!("sigma{}^2", i + 1))?;
        for j in i + 1..l - 1 {
            let t = &m.sigma[j];
            if j == i + 1 {
                fail(
                    s.mul(t).mul(s) == t.mul(s).mul(t),
                    format!("braid-sigma{}-sigma{}", i + 1, j + 1),
                )?;
            } else {
                fail(
                    s.mul(t) == t.mul(s),
                    format!("commute-sigma{}-sigma{}", i + 1, j + 1),
                )?;
            }
        }
    }
    if let Some(v) = &m.sigma_l {
        fail(v.mul(v) == id, "varsigma^2".into())?;
        for i in 0..l.saturating_sub(1) {
            let s = &m.sigma[i];
            if i + 2 == l {
                let sv = s.mul(v);
                fail(
                    sv.mul(&sv).mul(&sv).mul(&sv) == id,
                    format!("braid4-sigma{}-varsigma", i + 1),
                )?;
            } else {
                fail(
                    s.mul(v) == v.mul(s),
                    format!("commute-sigma{}-varsigma", i + 1),
                )?;
            }
        }
    }
    for i in 0..l {
        for j in i + 1..l {
            fail(
                m.y[i].commutator(&m.y[j]).is_zero(),
                format!("y{}y{}", i + 1, j + 1),
            )?;
        }
    }
    for i in 0..l.saturating_sub(1) {
        let s = &m.sigma[i];
        fail(
            s.mul(&m.y[i]).sub(&m.y[i + 1].mul(s)) == t1,
            format!("hecke-sigma{}", i + 1),
        )?;
        for j in (0..l).filter(|&j| j != i && j != i + 1) {
            fail(
                s.commutator(&m.y[j]).is_zero(),
                format!("sigma{}-y{}", i + 1, j + 1),
            )?;
        }
    }
    if let (Some(v), Some(t2)) = (&m.sigma_l, &m.params.theta2) {
        for i in 0..l - 1 {
            fail(
                v.commutator(&m.y[i]).is_zero(),
                format!("varsigma-y{}", i + 1),
            )?;
        }
        fail(
            v.anticommutator(&m.y[l - 1]) == QMat::scalar(n, t2),
            format!("hecke-varsigma-y{l}"),
        )?;
    }
    Ok(())
}

/// One-dimensional module with `σ_i = sign_σ`, `ς_l = sign_ς`.
pub fn char_module(params: &DahaParams, sign_sigma: i8, sign_varsigma: i8) -> DahaModule {
    let l = params.l;
    let base = params
        .theta2
        .as_ref()
        .map(|t| t * rat(sign_varsigma as i64) / rat(2))
        .unwrap_or_else(Rat::zero);
    let y = (0..l)
        .map(|i| {
            let v = &base + &params.theta1 * rat(((l - 1 - i) as i64) * sign_sigma as i64);
            QMat::scalar(1, &v)
        })
        .collect();
    let sigma = vec![QMat::scalar(1, &rat(sign_sigma as i64)); l - 1];
    let sigma_l = params
        .theta2
        .as_ref()
        .map(|_| QMat::scalar(1, &rat(sign_varsigma as i64)));
    DahaModule {
        params: params.clone(),
        dim: 1,
        sigma,
        sigma_l,
        y,
    }
}

/// Moves `y_a` past a simple generator: `y_a g = s · g y_b + c`.
fn y_move(params: &DahaParams, a: usize, g: Gen) -> (Rat, usize, Rat) {
    let l = params.l;
    match g {
        Gen::Sigma(i) if a == i => (rat(1), i + 1, params.theta1.clone()),
        Gen::Sigma(i) if a == i + 1 => (rat(1), i, -params.theta1.clone()),
        Gen::SigmaL if a == l - 1 => (rat(-1), a, params.theta2.clone().unwrap_or_else(Rat::zero)),
        _ => (rat(1), a, Rat::zero()),
    }
}

/// Induced module `H ⊗_{C[y] ⋊ H_sub} N` for a subgroup generated by
/// `sub_gens` acting on `N` by `sub_mats`, with `y_i` acting on `N` by `y_sub`.
pub fn induce(
    params: &DahaParams,
    sub_gens: &[Gen],
    sub_mats: &[QMat],
    y_sub: &[QMat],
) -> Result<DahaModule> {
    let l = params.l;
    if y_sub.len() != l || sub_gens.len() != sub_mats.len() {
        return Err(Error::DimensionMismatch("induction data".into()));
    }
    let nd = y_sub[0].rows();
    let grp = WeylGroup::new(l, params.is_bc());
    let sub = WeylGroup::generated(l, sub_gens);
    // Matrices of subgroup elements, following the subgroup's own words.
    let mut sub_rep: Vec<QMat> = Vec::with_capacity(sub.order());
    for idx in 0..sub.order() {
        let m = match sub.words[idx] {
            None => QMat::identity(nd),
            Some((g, p)) => {
                let gi = sub_gens
                    .iter()
                    .position(|x| *x == g)
                    .expect("subgroup generator");
                sub_mats[gi].mul(&sub_rep[p])
            }
        };
        sub_rep.push(m);
    }
    // Coset decomposition x = r · h with r the first element of its coset.
    let mut coset: Vec<Option<(usize, usize)>> = vec![None; grp.order()];
    let mut reps = Vec::new();
    for w in 0..grp.order() {
        if coset[w].is_some() {
            continue;
        }
        let r = reps.len();
        reps.push(w);
        for (hi, h) in sub.elems.iter().enumerate() {
            let x = grp.index_of(&grp.elems[w].compose(h)).expect("closed");
            coset[x] = Some((r, hi));
        }
    }
    let dim = reps.len() * nd;
    // act[w]: N → Ind, m ↦ w · (1 ⊗ m).
    let act: Vec<QMat> = (0..grp.order())
        .map(|w| {
            let (r, hi) = coset[w].expect("covered");
            let mut out = QMat::zeros(dim, nd);
            let h = &sub_rep[hi];
            for p in 0..nd {
                for q in 0..nd {
                    out.set(r * nd + p, q, h.get(p, q).clone());
                }
            }
            out
        })
        .collect();
    let gen_mat = |g: Gen| -> QMat {
        let ge = g.element(l);
        let mut out = QMat::zeros(dim, dim);
        for (r, &w) in reps.iter().enumerate() {
            let x = grp.index_of(&ge.compose(&grp.elems[w])).expect("closed");
            let block = &act[x];
            for row in 0..dim {
                for q in 0..nd {
                    out.set(row, r * nd + q, block.get(row, q).clone());
                }
            }
        }
        out
    };
    let gens: HashMap<Gen, QMat> = grp.gens.iter().map(|g| (*g, gen_mat(*g))).collect();
    // ya[a][w]: N → Ind, m ↦ y_a · w · (1 ⊗ m), by breadth-first recursion.
    let mut ya: Vec<Vec<QMat>> = vec![Vec::with_capacity(grp.order()); l];
    for w in 0..grp.order() {
        for a in 0..l {
            let m = match grp.words[w] {
                None => act[0].mul(&y_sub[a]),
                Some((g, p)) => {
                    let (s, b, c) = y_move(params, a, g);
                    let mut acc = gens[&g].mul(&ya[b][p]).scale(&s);
                    if !c.is_zero() {
                        acc = acc.add(&act[p].scale(&c));
                    }
                    acc
                }
            };
            ya[a].push(m);
        }
    }
    let y = (0..l)
        .map(|a| {
            let mut out = QMat::zeros(dim, dim);
            for (r, &w) in reps.iter().enumerate() {
                for row in 0..dim {
                    for q in 0..nd {
                        out.set(row, r * nd + q, ya[a][w].get(row, q).clone());
                    }
                }
            }
            out
        })
        .collect();
    let sigma = (0..l - 1).map(|i| gens[&Gen::Sigma(i)].clone()).collect();
    let sigma_l = params.is_bc().then(|| gens[&Gen::SigmaL].clone());
    DahaModule::new(params.clone(), sigma, sigma_l, y)
}

/// The module induced from the character `y_i ↦ λ_i`, with basis `W_l`.
pub fn principal_series(params: &DahaParams, lambda: &[Rat]) -> Result<DahaModule> {
    if lambda.len() != params.l {
        return Err(Error::DimensionMismatch("λ must have l entries".into()));
    }
    let ys: Vec<QMat> = lambda.iter().map(|x| QMat::scalar(1, x)).collect();
    induce(params, &[], &[], &ys)
}

/// `M1 ⊙ M2`: induction along `ı1 ⊗ ı2` from a type-A module on the first
/// `l1` strands and a type-BC module on the last `l2`.
pub fn odot(m1: &DahaModule, m2: &DahaModule) -> Result<DahaModule> {
    if m1.params.is_bc() || !m2.params.is_bc() || m1.params.theta1 != m2.params.theta1 {
        return Err(Error::Input(
            "M1 ⊙ M2 needs type A then type BC with equal θ1".into(),
        ));
    }
    let (l1, l2) = (m1.l(), m2.l());
    let params = DahaParams::bc(
        l1 + l2,
        m1.params.theta1.clone(),
        m2.params.theta2.clone().unwrap(),
    )?;
    let (i1, i2) = (QMat::identity(m1.dim), QMat::identity(m2.dim));
    let mut gens = Vec::new();
    let mut mats = Vec::new();
    for j in 0..l1.saturating_sub(1) {
        gens.push(Gen::Sigma(j));
        mats.push(m1.sigma[j].kron(&i2));
    }
    for j in 0..l2.saturating_sub(1) {
        gens.push(Gen::Sigma(l1 + j));
        mats.push(i1.kron(&m2.sigma[j]));
    }
    gens.push(Gen::SigmaL);
    mats.push(i1.kron(m2.sigma_l.as_ref().unwrap()));
    let ys: Vec<QMat> =
        m1.y.iter()
            .map(|y| y.kron(&i2))
            .chain(m2.y.iter().map(|y| i1.kron(y)))
            .collect();
    induce(&params, &gens, &mats, &ys)
}

/// The alternative generators `𝗒_i` and the first failing relation, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct SfReport {
    pub ys: Vec<QMat>,
    pub failure: Option<String>,
}

pub fn sf_presentation(m: &DahaModule) -> Result<SfReport> {
    let l = m.l();
    let t1 = m.params.theta1.clone();
    let t2 = m
        .params
        .theta2
        .clone()
        .ok_or_else(|| Error::Input("type BC module required".into()))?;
    let half = |x: &Rat| x / rat(2);
    let vs: Vec<QMat> = (0..l).map(|i| m.varsigma(i)).collect::<Result<_>>()?;
    let mut sij: HashMap<(usize, usize), QMat> = HashMap::new();
    for i in 0..l {
        for j in 0..l {
            if i != j {
                sij.insert((i, j), m.sigma_ij(i, j)?);
            }
        }
    }
    let ys: Vec<QMat> = (0..l)
        .map(|i| {
            let mut acc = m.y[i].sub(&vs[i].scale(&half(&t2)));
            for k in 0..l {
                if k == i {
                    continue;
                }
                let s = &sij[&(i, k)];
                let sign = if k < i { rat(1) } else { rat(-1) };
                acc = acc.add(&s.scale(&(half(&t1) * sign)));
                acc = acc.sub(&s.mul(&vs[i]).mul(&vs[k]).scale(&half(&t1)));
            }
            acc
        })
        .collect();
    let mut failure = None;
    let mut check = |ok: bool, name: String| {
        if !ok && failure.is_none() {
            failure = Some(name);
        }
    };
    let v = m.sigma_l.as_ref().unwrap();
    for i in 0..l - 1 {
        let s = &m.sigma[i];
        check(
            s.mul(&ys[i]) == ys[i + 1].mul(s),
            format!("sigma{}-sy{}", i + 1, i + 1),
        );
        for j in (0..l).filter(|&j| j != i && j != i + 1) {
            check(
                s.commutator(&ys[j]).is_zero(),
                format!("sigma{}-sy{}", i + 1, j + 1),
            );
        }
        check(
            v.commutator(&ys[i]).is_zero(),
            format!("varsigma-sy{}", i + 1),
        );
    }
    check(
        v.anticommutator(&ys[l - 1]).is_zero(),
        format!("varsigma-sy{l}"),
    );
    let q = &t1 * &t1 / rat(4);
    for i in 0..l {
        for j in i + 1..l {
            let mut rhs = sij[&(i, j)]
                .mul(&vs[j].sub(&vs[i]))
                .scale(&(&t1 * &t2 / rat(2)));
            for k in (0..l).filter(|&k| k != i && k != j) {
                let (sik, sjk) = (&sij[&(i, k)], &sij[&(j, k)]);
                let (vij, vik, vjk) = (vs[i].mul(&vs[j]), vs[i].mul(&vs[k]), vs[j].mul(&vs[k]));
                let term = sjk
                    .mul(sik)
                    .sub(&sik.mul(sjk))
                    .add(&sik.mul(sjk).mul(&vij.sub(&vik).add(&vjk)))
                    .sub(&sjk.mul(sik).mul(&vij.add(&vik).sub(&vjk)));
                rhs = rhs.add(&term.scale(&q));
            }
            check(
                ys[i].commutator(&ys[j]) == rhs,
                format!("bracket-sy{}-sy{}", i + 1, j + 1),
            );
        }
    }
    Ok(SfReport { ys, failure })
}

/// A polynomial in commuting `y_i`: terms `(coefficient, exponents)`.
#[derive(Clone, Debug, PartialEq)]
pub struct YPoly {
    pub terms: Vec<(Rat, Vec<u32>)>,
}

impl YPoly {
    /// `Σ_i y_i^{2k}`.
    pub fn power_sum_squares(l: usize, k: u32) -> YPoly {
        YPoly {
            terms: (0..l)
                .map(|i| {
                    (
                        rat(1),
                        (0..l).map(|j| if i == j { 2 * k } else { 0 }).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn eval(&self, y: &[QMat]) -> QMat {
        let n = y[0].rows();
        self.terms.iter().fold(QMat::zeros(n, n), |acc, (c, e)| {
            let mono = e.iter().enumerate().fold(QMat::identity(n), |m, (i, &k)| {
                (0..k).fold(m, |m, _| m.mul(&y[i]))
            });
            acc.add(&mono.scale(c))
        })
    }
}

/// `p(y)` commutes with every generator; returns the first failing generator.
pub fn center_check(m: &DahaModule, p: &YPoly) -> std::result::Result<(), String> {
    let z = p.eval(&m.y);
    let mut named: Vec<(String, &QMat)> = m
        .sigma
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("sigma{}", i + 1), s))
        .collect();
    if let Some(v) = &m.sigma_l {
        named.push(("varsigma".into(), v));
    }
    named.extend(
        m.y.iter()
            .enumerate()
            .map(|(i, y)| (format!("y{}", i + 1), y)),
    );
    match named.into_iter().find(|(_, g)| !z.commutator(g).is_zero()) {
        Some((name, _)) => Err(name),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn bc(l: usize) -> DahaParams {
        DahaParams::bc(l, rat(1), rat(2)).unwrap()
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(WeylGroup::new(1, true).order(), 2);
        assert_eq!(WeylGroup::new(2, true).order(), 8);
        assert_eq!(WeylGroup::new(3, true).order(), 48);
        assert_eq!(WeylGroup::new(3, false).order(), 6);
        let g = WeylGroup::new(2, true);
        let w = &g.elems[5];
        assert_eq!(w.compose(&w.inverse()), SignedPerm::identity(2));
    }

    #[test]
    fn characters() {
        let c = char_module(&bc(2), 1, 1);
        assert_eq!(
            (c.y[0].get(0, 0).clone(), c.y[1].get(0, 0).clone()),
            (rat(2), rat(1))
        );
        let c = char_module(&bc(2), -1, 1);
        assert_eq!(
            (c.y[0].get(0, 0).clone(), c.y[1].get(0, 0).clone()),
            (rat(0), rat(1))
        );
        assert_eq!(char_module(&bc(1), 1, 1).y[0].get(0, 0), &rat(1));
        for a in -3..3 {
            for b in 1..3 {
                let p = DahaParams::bc(3, ratio(a * 2 + 1, 2), rat(b)).unwrap();
                for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    assert_eq!(verify_daha(&char_module(&p, s, t)), Ok(()));
                }
            }
        }
    }

    #[test]
    fn principal_series_l1() {
        let m = principal_series(&bc(1), &[rat(3)]).unwrap();
        assert_eq!(m.y[0], QMat::from_i64(&[&[3, 2], &[0, -3]]));
        assert_eq!(verify_daha(&m), Ok(()));
    }

    #[test]
    fn principal_series_l2_l3() {
        let m = principal_series(&bc(2), &[rat(3), rat(1)]).unwrap();
        assert_eq!(m.dim, 8);
        assert_eq!(verify_daha(&m), Ok(()));
        let r = sf_presentation(&m).unwrap();
        assert_eq!(r.failure, None);
        assert_eq!(verify_daha(&m.restrict_type_a()), Ok(()));
        let m3 = principal_series(&bc(3), &[rat(2), ratio(1, 2), rat(-1)]).unwrap();
        assert_eq!(m3.dim, 48);
        assert_eq!(verify_daha(&m3), Ok(()));
        assert_eq!(sf_presentation(&m3).unwrap().failure, None);
        let a = principal_series(
            &DahaParams::type_a(3, rat(1)).unwrap(),
            &[rat(0), rat(1), rat(5)],
        )
        .unwrap();
        assert_eq!(a.dim, 6);
        assert_eq!(verify_daha(&a), Ok(()));
    }

    #[test]
    fn corrupted_module_fails() {
        let mut m = principal_series(&bc(2), &[rat(3), rat(1)]).unwrap();
        m.params.theta2 = Some(rat(3));
        assert_eq!(verify_daha(&m), Err("hecke-varsigma-y2".into()));
    }

    #[test]
    fn sf_on_character() {
        let r = sf_presentation(&char_module(&bc(1), 1, 1)).unwrap();
        assert!(r.ys[0].is_zero());
        assert_eq!(r.failure, None);
    }

    #[test]
    fn center() {
        let m = principal_series(&bc(2), &[rat(3), rat(1)]).unwrap();
        assert_eq!(center_check(&m, &YPoly::power_sum_squares(2, 1)), Ok(()));
        let y1 = YPoly {
            terms: vec![(rat(1), vec![1, 0])],
        };
        assert_eq!(center_check(&m, &y1), Err("sigma1".into()));
        assert_eq!(
            center_check(
                &m,
                &YPoly {
                    terms: vec![(rat(1), vec![0, 0])]
                }
            ),
            Ok(())
        );
    }

    #[test]
    fn odot_dimension() {
        let a = char_module(&DahaParams::type_a(1, rat(1)).unwrap(), 1, 1);
        let b = principal_series(&bc(1), &[rat(2)]).unwrap();
        let m = odot(&a, &b).unwrap();
        assert_eq!(m.dim, 4 * a.dim * b.dim);
        assert_eq!(verify_daha(&m), Ok(()));
    }
}
