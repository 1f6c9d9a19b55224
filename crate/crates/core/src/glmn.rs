//! Parity sequences and gl(m|n) modules given by explicit matrices.

use crate::error::{Error, Result};
use crate::exactalg::{rat, rational_roots, Rat};
use crate::superlinalg::{char_poly, QMat, SuperSpace};
use num::Zero;

/// A sequence `s` in `{±1}^κ`; index `i` (0-based) has parity `|i|` with
/// `s_i = (-1)^{|i|}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParitySeq {
    s: Vec<i8>,
}

impl ParitySeq {
    pub fn new(s: Vec<i8>) -> Result<ParitySeq> {
        if s.is_empty() || s.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::Input(format!("invalid parity sequence {s:?}")));
        }
        Ok(ParitySeq { s })
    }

    /// Panicking constructor for literals.
    pub fn of(s: &[i8]) -> ParitySeq {
        ParitySeq::new(s.to_vec()).expect("valid parity sequence")
    }

    /// `m` entries `+1` followed by `n` entries `-1`.
    pub fn standard(m: usize, n: usize) -> ParitySeq {
        let mut s = vec![1; m];
        s.extend(std::iter::repeat_n(-1, n));
        ParitySeq::of(&s)
    }

    /// Every sequence of length `κ`, in lexicographic order with `+1` first.
    pub fn all(kappa: usize) -> Vec<ParitySeq> {
        (0..1usize << kappa)
            .map(|mask| {
                ParitySeq::of(
                    &(0..kappa)
                        .map(|i| {
                            if mask >> (kappa - 1 - i) & 1 == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    pub fn values(&self) -> &[i8] {
        &self.s
    }

    pub fn kappa(&self) -> usize {
        self.s.len()
    }

    pub fn m(&self) -> usize {
        self.s.iter().filter(|&&x| x == 1).count()
    }

    pub fn n(&self) -> usize {
        self.kappa() - self.m()
    }

    pub fn s(&self, i: usize) -> i8 {
        self.s[i]
    }

    pub fn s_rat(&self, i: usize) -> Rat {
        rat(self.s[i] as i64)
    }

    pub fn parity(&self, i: usize) -> u8 {
        u8::from(self.s[i] == -1)
    }

    /// `ρ_k = Σ_{a ≥ k} s_a` for the 0-based index `k`; `rho(κ) = 0`.
    pub fn rho(&self, k: usize) -> Rat {
        rat(self.s[k.min(self.kappa())..]
            .iter()
            .map(|&x| x as i64)
            .sum())
    }

    /// `ȷ = (m - n)/2`.
    pub fn jbar(&self) -> Rat {
        self.rho(0) / rat(2)
    }

    pub fn is_standard(&self) -> bool {
        self.s.windows(2).all(|w| !(w[0] == -1 && w[1] == 1))
    }

    /// The sign `(-1)^{|i||j|+|j|}` attached to `t_ij ⊗ E_ij`.
    pub fn sign_std(&self, i: usize, j: usize) -> Rat {
        let e = self.parity(i) * self.parity(j) + self.parity(j);
        if e.is_multiple_of(2) {
            rat(1)
        } else {
            rat(-1)
        }
    }

    /// Parity of the generator indexed by `(i, j)`.
    pub fn pair_parity(&self, i: usize, j: usize) -> u8 {
        (self.parity(i) + self.parity(j)) % 2
    }

    /// The defining representation `V = C^{m|n}`.
    pub fn space(&self) -> SuperSpace {
        SuperSpace::new((0..self.kappa()).map(|i| self.parity(i)).collect())
    }

    pub fn negated(&self) -> ParitySeq {
        ParitySeq {
            s: self.s.iter().map(|x| -x).collect(),
        }
    }
}

/// A gl(m|n) module: matrices `e[i*κ + j]` for `e_ij` on a super space.
#[derive(Clone, Debug, PartialEq)]
pub struct GlModule {
    pub ps: ParitySeq,
    pub space: SuperSpace,
    pub e: Vec<QMat>,
}

impl GlModule {
    pub fn new(ps: ParitySeq, space: SuperSpace, e: Vec<QMat>) -> Result<GlModule> {
        let k = ps.kappa();
        let d = space.dim();
        if e.len() != k * k || e.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::DimensionMismatch(
                "e_ij matrices do not match".into(),
            ));
        }
        Ok(GlModule { ps, space, e })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn kappa(&self) -> usize {
        self.ps.kappa()
    }

    pub fn e(&self, i: usize, j: usize) -> &QMat {
        &self.e[i * self.kappa() + j]
    }

    /// Graded tensor product under `x ↦ x⊗1 + 1⊗x`.
    pub fn tensor(&self, other: &GlModule) -> Result<GlModule> {
        if self.ps != other.ps {
            return Err(Error::DimensionMismatch("parity sequences differ".into()));
        }
        let k = self.kappa();
        let id_l = QMat::identity(self.dim());
        let id_r = QMat::identity(other.dim());
        let mut e = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let p = self.ps.pair_parity(i, j);
                let left = self.e(i, j).kron(&id_r);
                let right = id_l.super_kron(&self.space, other.e(i, j), p);
                e.push(left.add(&right));
            }
        }
        GlModule::new(self.ps.clone(), self.space.tensor(&other.space), e)
    }
}

/// The vector representation `e_ij ↦ E_ij`.
pub fn make_vector_rep(ps: &ParitySeq) -> GlModule {
    let k = ps.kappa();
    let e = (0..k * k).map(|x| QMat::unit(k, k, x / k, x % k)).collect();
    GlModule {
        ps: ps.clone(),
        space: ps.space(),
        e,
    }
}

/// The two-dimensional gl(1|1) module `L(a, b)` with `s = (s1, -s1)`, basis
/// `v⁺` (even), `v⁻ = e_21 v⁺`.
pub fn make_lab(s1: i8, a: &Rat, b: &Rat) -> Result<GlModule> {
    if (a + b).is_zero() {
        return Err(Error::ParameterConstraint(
            "L(a,b) requires a + b ≠ 0".into(),
        ));
    }
    let ps = ParitySeq::new(vec![s1, -s1])?;
    let m =
        |rows: [[Rat; 2]; 2]| QMat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
    let z = Rat::zero;
    let e11 = m([[a.clone(), z()], [z(), a - rat(1)]]);
    let e12 = m([[z(), a + b], [z(), z()]]);
    let e21 = m([[z(), z()], [rat(1), z()]]);
    let e22 = m([[b.clone(), z()], [z(), b + rat(1)]]);
    let space = SuperSpace::new(vec![0, 1]).with_labels(vec!["v+".into(), "v-".into()]);
    GlModule::new(ps, space, vec![e11, e12, e21, e22])
}

/// Checks `[e_ij, e_kl] = δ_jk e_il − (−1)^{(|i|+|j|)(|k|+|l|)} δ_il e_kj`.
/// Returns the first failing quadruple (0-based).
pub fn verify_gl_module(m: &GlModule) -> std::result::Result<(), (usize, usize, usize, usize)> {
    let k = m.kappa();
    let ps = &m.ps;
    let zero = QMat::zeros(m.dim(), m.dim());
    for i in 0..k {
        for j in 0..k {
            for a in 0..k {
                for b in 0..k {
                    let pij = ps.pair_parity(i, j);
                    let pab = ps.pair_parity(a, b);
                    let lhs = m.e(i, j).supercommutator(pij, m.e(a, b), pab);
                    let mut rhs = zero.clone();
                    if j == a {
                        rhs = rhs.add(m.e(i, b));
                    }
                    if i == b {
                        let t = m.e(a, j);
                        rhs = if pij * pab % 2 == 1 {
                            rhs.add(t)
                        } else {
                            rhs.sub(t)
                        };
                    }
                    if lhs != rhs {
                        return Err((i, j, a, b));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Weight of a vector: the eigenvalues of `e_11, ..., e_κκ`.
pub type Weight = Vec<Rat>;

/// Simultaneous eigenspace decomposition of the `e_ii`, ordered by weight.
pub fn weight_decompose(m: &GlModule) -> Result<Vec<(Weight, Vec<Vec<Rat>>)>> {
    let n = m.dim();
    let mut parts: Vec<(Weight, Vec<Vec<Rat>>)> = vec![(
        vec![],
        (0..n)
            .map(|i| crate::superlinalg::unit_vector(n, i))
            .collect(),
    )];
    for i in 0..m.kappa() {
        let a = m.e(i, i);
        let mut next = Vec::new();
        for (w, basis) in parts {
            let r = a.restrict(&basis)?;
            let roots = rational_roots(&char_poly(&r));
            if !roots.splits() {
                return Err(Error::IrrationalSpectrum(format!(
                    "e_{}{} is not split over Q",
                    i + 1,
                    i + 1
                )));
            }
            let c = QMat::from_columns(n, &basis);
            let mut found = 0;
            for (lam, _) in &roots.roots {
                let ker = r.sub(&QMat::scalar(r.rows(), lam)).nullspace();
                found += ker.len();
                let vecs: Vec<Vec<Rat>> = ker.iter().map(|x| c.apply(x)).collect();
                let mut w2 = w.clone();
                w2.push(lam.clone());
                next.push((w2, vecs));
            }
            if found != basis.len() {
                return Err(Error::IrrationalSpectrum(format!(
                    "e_{}{} is not diagonalizable",
                    i + 1,
                    i + 1
                )));
            }
        }
        parts = next;
    }
    parts.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn rho_and_jbar() {
        let ps = ParitySeq::of(&[1, -1, 1]);
        assert_eq!(ps.rho(0), rat(1));
        assert_eq!(ps.rho(1), rat(0));
        assert_eq!(ps.rho(3), rat(0));
        assert_eq!(ps.jbar(), ratio(1, 2));
        assert!(!ps.is_standard());
        for k in 0..3 {
            assert_eq!(ps.rho(k) - ps.rho(k + 1), ps.s_rat(k));
        }
    }

    #[test]
    fn vector_rep_action() {
        let ps = ParitySeq::of(&[1, -1]);
        let v = make_vector_rep(&ps);
        assert_eq!(v.e(0, 0).column(0), vec![rat(1), rat(0)]);
        assert_eq!(v.e(1, 1).column(0), vec![rat(0), rat(0)]);
        assert_eq!(v.e(1, 0).column(0), vec![rat(0), rat(1)]);
        assert_eq!(v.e(1, 0).column(1), vec![rat(0), rat(0)]);
        for k in 1..=4 {
            for ps in ParitySeq::all(k) {
                assert_eq!(verify_gl_module(&make_vector_rep(&ps)), Ok(()));
            }
        }
    }

    #[test]
    fn lab_relations_and_degenerate_case() {
        let l = make_lab(1, &rat(1), &rat(2)).unwrap();
        assert_eq!(verify_gl_module(&l), Ok(()));
        assert!(matches!(
            make_lab(1, &rat(3), &rat(-3)),
            Err(Error::ParameterConstraint(_))
        ));
    }

    #[test]
    fn zeroed_matrix_is_caught() {
        let mut v = make_vector_rep(&ParitySeq::of(&[1, -1]));
        v.e[1] = QMat::zeros(2, 2);
        assert!(verify_gl_module(&v).is_err());
    }

    #[test]
    fn weights_of_vector_rep() {
        let w = weight_decompose(&make_vector_rep(&ParitySeq::of(&[1, -1]))).unwrap();
        let ws: Vec<Weight> = w.iter().map(|x| x.0.clone()).collect();
        assert_eq!(ws, vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        assert!(w.iter().all(|x| x.1.len() == 1));
    }

    #[test]
    fn nilpotent_e11_rejected() {
        let mut v = make_vector_rep(&ParitySeq::of(&[1, 1]));
        v.e[0] = QMat::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(weight_decompose(&v).is_err());
    }
}
