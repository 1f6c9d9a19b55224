use num::{Integer, One, Signed, Zero};
use proptest::prelude::*;
use tyang::daha::{char_module, principal_series, verify_daha, DahaParams};
use tyang::drinfeld::TensorPower;
use tyang::exactalg::{rat, ratio, rational_roots, rf_eval, Poly, Rat, RatFun};
use tyang::glmn::{make_lab, make_vector_rep, verify_gl_module, weight_decompose, ParitySeq};
use tyang::superlinalg::{rfmat_inverse, rfmat_kernel, QMat, RFMatrix};
use tyang::twisted::{
    b_from_t, classify_rank1, highest_bweight, negate_eps, negate_s, scale_by, verify_b, Rank1Mode,
    TwistedContext,
};
use tyang::yangian::{
    block_product, evaluation_action, flip_operator, inverse_series_action, tensor_action,
    verify_rtt, TAction,
};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(Poly::from_coeffs)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn sign() -> impl Strategy<Value = i8> {
    prop_oneof![Just(1i8), Just(-1i8)]
}

fn lab_params() -> impl Strategy<Value = (i8, Rat, Rat, Rat)> {
    (sign(), small_rat(), small_rat(), small_rat())
        .prop_filter("a+b != 0", |(_, a, b, _)| !(a + b).is_zero())
}

fn lab_t(s1: i8, a: &Rat, b: &Rat, z: &Rat) -> TAction {
    evaluation_action(&make_lab(s1, a, b).unwrap(), z)
}

fn lcm_den(cs: &[Rat]) -> num::BigInt {
    cs.iter()
        .fold(num::BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn divisors(n: &num::BigInt) -> Vec<num::BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = num::BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

/// Candidate scan `±p/q` with `p | a_0`, `q | a_n` after clearing denominators.
fn brute_roots(p: &Poly) -> Vec<Rat> {
    let mut c: Vec<Rat> = p.coeffs().to_vec();
    let mut out = Vec::new();
    if c[0].is_zero() {
        out.push(Rat::zero());
        while c[0].is_zero() {
            c.remove(0);
        }
    }
    let l = Rat::from_integer(lcm_den(&c));
    let ints: Vec<num::BigInt> = c.iter().map(|x| (x * &l).to_integer()).collect();
    let (a0, an) = (&ints[0], ints.last().unwrap());
    for num in divisors(a0) {
        for den in divisors(an) {
            for s in [1i64, -1] {
                let x = Rat::new(&num * num::BigInt::from(s), den.clone());
                if p.eval(&x).is_zero() && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfun_is_normalized(p in poly(5), q in nonzero_poly(5)) {
        let f = RatFun::new(p, q);
        prop_assert!(f.den().lc().is_one());
        prop_assert_eq!(Poly::gcd(f.num(), f.den()).deg(), 0);
        prop_assert_eq!(RatFun::new(f.num().clone(), f.den().clone()), f);
    }

    #[test]
    fn rf_eval_clears_denominators(p in poly(5), q in nonzero_poly(4), xs in prop::collection::vec(small_rat(), 100)) {
        let f = RatFun::new(p.clone(), q.clone());
        for x in xs.iter().filter(|x| !q.eval(x).is_zero()) {
            prop_assert_eq!(q.eval(x) * rf_eval(&f, x).unwrap(), p.eval(x));
        }
    }

    #[test]
    fn rational_roots_match_candidate_scan(
        roots in prop::collection::vec(small_rat(), 0..=4),
        irr in 0usize..2,
        c in small_rat().prop_filter("nonzero", |c| !c.is_zero()),
    ) {
        let mut p = Poly::from_roots(&roots).scale(&c);
        if irr == 1 {
            // u^2 + 2 has no rational roots.
            p = &p * &Poly::from_i64(&[2, 0, 1]);
        }
        let mut got: Vec<Rat> = rational_roots(&p).roots.into_iter().map(|(r, _)| r).collect();
        got.sort();
        prop_assert_eq!(got, brute_roots(&p));
    }

    #[test]
    fn rfmatrix_inverse_is_two_sided(es in prop::collection::vec((small_rat(), small_rat()), 9)) {
        let m = RFMatrix::from_fn(3, 3, |i, j| {
            let (a, b) = &es[i * 3 + j];
            let diag = if i == j { Poly::linear(rat(1), a.clone()) } else { Poly::constant(b.clone()) };
            RatFun::from_poly(diag)
        });
        let inv = rfmat_inverse(&m).unwrap();
        let id = RFMatrix::from_qmat(&QMat::identity(3));
        prop_assert_eq!(inv.mul(&m), id.clone());
        prop_assert_eq!(m.mul(&inv), id);
    }

    #[test]
    fn kernel_vectors_are_killed(es in prop::collection::vec(small_rat(), 6), c in (small_rat(), small_rat()), us in prop::collection::vec(small_rat(), 20)) {
        // Third column is a fixed combination of the first two.
        let m = RFMatrix::from_fn(2, 3, |i, j| {
            let col = |k: usize| RatFun::from_poly(Poly::linear(es[i * 3 + k].clone(), es[i * 3 + 2].clone()));
            match j {
                0 | 1 => col(j),
                _ => &col(0).scale(&c.0) + &col(1).scale(&c.1),
            }
        });
        let ker = rfmat_kernel(std::slice::from_ref(&m)).unwrap();
        prop_assert!(!ker.is_empty());
        for v in &ker {
            for u in &us {
                let mu = m.eval(u).unwrap();
                prop_assert!(mu.apply(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn graded_unit_products_have_summed_parity(k1 in 1usize..=2, k2 in 1usize..=2, idx in prop::collection::vec(0usize..3, 4)) {
        let ps = ParitySeq::of(&[1, -1, 1]);
        let tp = TensorPower::new(&ps, 2);
        let space = tp.space();
        let parity_of = |m: &QMat| -> Option<u8> {
            let mut p = None;
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m.get(r, c).is_zero() {
                        let q = (space.parity(r) + space.parity(c)) % 2;
                        if p.is_some_and(|x| x != q) {
                            return Some(2);
                        }
                        p = Some(q);
                    }
                }
            }
            p
        };
        let a = tp.unit(k1 - 1, idx[0], idx[1]);
        let b = tp.unit(k2 - 1, idx[2], idx[3]);
        let pa = ps.pair_parity(idx[0], idx[1]);
        let pb = ps.pair_parity(idx[2], idx[3]);
        prop_assert_eq!(parity_of(&a), Some(pa));
        let prod = a.mul(&b);
        if let Some(p) = parity_of(&prod) {
            prop_assert_eq!(p, (pa + pb) % 2);
        }
    }

    #[test]
    fn lab_is_a_gl11_module((s1, a, b, _) in lab_params()) {
        prop_assert!(verify_gl_module(&make_lab(s1, &a, &b).unwrap()).is_ok());
    }

    #[test]
    fn t_times_t_prime_is_one((s1, a, b, z) in lab_params(), (c, d, w) in (small_rat(), small_rat(), small_rat())) {
        prop_assume!(!(&c + &d).is_zero());
        let t = tensor_action(&lab_t(s1, &a, &b, &z), &lab_t(s1, &c, &d, &w)).unwrap();
        prop_assert!(t.has_unit_limit());
        let tp = inverse_series_action(&t).unwrap();
        let prod = block_product(&t.t, &tp.t, t.kappa());
        let (one, zero) = (RFMatrix::from_qmat(&QMat::identity(4)), RFMatrix::from_qmat(&QMat::zeros(4, 4)));
        for i in 0..2 {
            for j in 0..2 {
                prop_assert_eq!(&prod[i * 2 + j], if i == j { &one } else { &zero });
            }
        }
    }

    #[test]
    fn t_shifts_weights((s1, a, b, z) in lab_params(), u0 in small_rat()) {
        let gl = make_lab(s1, &a, &b).unwrap();
        let t = evaluation_action(&gl, &z);
        prop_assume!(!t.t.iter().any(|m| m.common_den().eval(&u0).is_zero()));
        let ws = weight_decompose(&gl).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let m = t.get(i, j).eval(&u0).unwrap();
                for (w, vs) in &ws {
                    let mut target = w.clone();
                    target[i] += rat(1);
                    target[j] -= rat(1);
                    let allowed: Vec<Vec<Rat>> = ws.iter().filter(|(x, _)| *x == target).flat_map(|(_, v)| v.clone()).collect();
                    for v in vs {
                        let img = m.apply(v);
                        if img.iter().all(|x| x.is_zero()) {
                            continue;
                        }
                        let mut rows = allowed.clone();
                        let before = QMat::from_rows(rows.clone()).map(|q| q.rref().1.len()).unwrap_or(0);
                        rows.push(img);
                        let after = QMat::from_rows(rows).unwrap().rref().1.len();
                        prop_assert_eq!(before, after, "t_{}{} leaves the shifted weight space", i + 1, j + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn b_coefficient_one_is_diagonal((s1, a, b, z) in lab_params(), eps in (sign(), sign())) {
        let gl = make_lab(s1, &a, &b).unwrap();
        let t = evaluation_action(&gl, &z);
        let ctx = TwistedContext::of(&[s1, -s1], &[eps.0, eps.1]);
        let bb = b_from_t(&t, &ctx).unwrap();
        for i in 0..2 {
            let want = gl.e(i, i).scale(&(rat(2) * ctx.ps.s_rat(i) * ctx.eps_rat(i)));
            prop_assert_eq!(bb.get(i, i).laurent_coeff(1).unwrap(), want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn rtt_on_random_evaluation_modules((s1, a, b, z) in lab_params()) {
        prop_assert!(verify_rtt(&lab_t(s1, &a, &b, &z)).unwrap().passed());
    }

    #[test]
    fn restriction_is_unitary_and_symmetric((s1, a, b, z) in lab_params(), eps in (sign(), sign()), c in small_rat().prop_filter("nonzero", |c| !c.is_zero())) {
        let ctx = TwistedContext::of(&[s1, -s1], &[eps.0, eps.1]);
        let bb = b_from_t(&lab_t(s1, &a, &b, &z), &ctx).unwrap();
        let rep = verify_b(&bb).unwrap();
        prop_assert!(rep.passed() && rep.unitary());
        prop_assert!(verify_b(&negate_s(&bb)).unwrap().passed());
        prop_assert!(verify_b(&negate_eps(&bb)).unwrap().passed());
        // h(u) h(-u) = 1.
        let h = RatFun::new(Poly::linear(rat(1), c.clone()), Poly::linear(rat(1), -c));
        let scaled = scale_by(&bb, &h).unwrap();
        prop_assert!(verify_b(&scaled).unwrap().passed());
        let xi = tyang::superlinalg::unit_vector(2, 0);
        let m0 = highest_bweight(&bb, &xi).unwrap();
        let m1 = highest_bweight(&scaled, &xi).unwrap();
        prop_assert_eq!(m0.tilde_ratios(), m1.tilde_ratios());
        let c0 = classify_rank1(&m0, &Rank1Mode::Search).unwrap();
        let c1 = classify_rank1(&m1, &Rank1Mode::Search).unwrap();
        prop_assert_eq!(c0, c1);
    }

    #[test]
    fn daha_constructors_satisfy_relations(t1 in small_rat(), t2 in small_rat(), lam in prop::collection::vec(small_rat(), 2)) {
        prop_assume!(!t1.is_zero());
        let bc = DahaParams::bc(2, t1.clone(), t2).unwrap();
        let m = principal_series(&bc, &lam).unwrap();
        prop_assert!(verify_daha(&m).is_ok());
        prop_assert!(verify_daha(&m.restrict_type_a()).is_ok());
        let a = principal_series(&DahaParams::type_a(2, t1).unwrap(), &lam).unwrap();
        prop_assert!(verify_daha(&a).is_ok());
    }
}

#[test]
fn char_module_closed_form_sweep() {
    for (n, (t1, t2)) in (1..=10)
        .map(|k| (ratio(k, 3), ratio(5 - 2 * k, 2)))
        .enumerate()
    {
        for l in 1..=3 {
            let p = DahaParams::bc(l, t1.clone(), t2.clone()).unwrap();
            for s in [1i8, -1] {
                for v in [1i8, -1] {
                    let m = char_module(&p, s, v);
                    assert!(verify_daha(&m).is_ok(), "sweep point {n}");
                    for i in 0..l {
                        let want = rat(v as i64) * &t2 / rat(2)
                            + rat((l - 1 - i) as i64) * rat(s as i64) * &t1;
                        assert_eq!(*m.y[i].get(0, 0), want);
                    }
                }
            }
        }
    }
}

#[test]
fn super_flip_is_an_involution() {
    for k in 1..=4 {
        for ps in ParitySeq::all(k) {
            let p = flip_operator(&ps, false);
            assert_eq!(p.mul(&p), QMat::identity(k * k));
        }
    }
}

#[test]
fn parity_sequence_identities() {
    for k in 1..=4 {
        for ps in ParitySeq::all(k) {
            let v = make_vector_rep(&ps);
            for i in 0..k {
                for j in 0..k {
                    let want = if i == j { rat(1) } else { rat(0) };
                    assert_eq!(
                        v.e(j, j).apply(&tyang::superlinalg::unit_vector(k, i))[i],
                        want
                    );
                }
                assert_eq!(ps.rho(i) - ps.rho(i + 1), ps.s_rat(i));
            }
            let ctx = TwistedContext::of(ps.values(), &vec![-1; k]);
            for i in 0..k {
                assert_eq!(
                    ctx.varpi(i) - ctx.varpi(i + 1),
                    ctx.eps_rat(i) * ps.s_rat(i)
                );
            }
        }
    }
}
