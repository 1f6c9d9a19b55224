//! The verification pipelines. Each one turns its input block into a list of
//! independent checks.

use crate::inputs::{
    boolean, ctx, field, opt_field, poly, rat, rats, reduce_mode, sign, string, uint, Builder,
    IResult, InputError,
};
use crate::report::{Outcome, Status};
use serde_json::{json, Value};
use std::sync::{Arc, OnceLock};
use tyang::daha::{center_check, sf_presentation, verify_daha, DahaModule, YPoly};
use tyang::drinfeld::{
    appendix_identities, bchi_expansion_check, drinfeld_a, drinfeld_bc, functor_tensor_check,
    ts_identity, DrinfeldModule, DrinfeldParams,
};
use tyang::exactalg::{Rat, RatFun};
use tyang::serial::{ctx_to_json, poly_to_json, rat_to_json, ratfun_to_json};
use tyang::twisted::{
    classify_highrank, classify_highrank_search, classify_rank1, find_highest_space,
    highest_bweight, irreducible_burnside, mu_tilde, reduce, reduction_shift_check, verify_b,
    verify_b_opts, verma_conditions, BAction, BReport, CertStatus, HighrankSearch, Irreducibility,
    Rank1Mode,
};
use tyang::yangian::{
    highest_lweight, highest_space, lambda_prime_check, verify_rtt_opts, verify_yang_baxter,
    zhang_check, LambdaPrimeClause, ZhangOutcome,
};

type Runner = Box<dyn Fn() -> Outcome + Send + Sync>;

pub struct Job {
    pub id: String,
    pub anchor: &'static str,
    pub run: Runner,
}

fn job(
    id: impl Into<String>,
    anchor: &'static str,
    f: impl Fn() -> Outcome + Send + Sync + 'static,
) -> Job {
    Job {
        id: id.into(),
        anchor,
        run: Box::new(f),
    }
}

pub struct Pipeline {
    pub id: &'static str,
    pub summary: &'static str,
    pub build: fn(&Value, &Builder) -> IResult<Vec<Job>>,
}

pub const PIPELINES: &[Pipeline] = &[
    Pipeline {
        id: "verify-yangian",
        summary: "RTT and inverse relations, Yang-Baxter, highest l-weights of T'(u), finiteness",
        build: verify_yangian,
    },
    Pipeline {
        id: "verify-twisted",
        summary:
            "reflection equation, B(u)B(-u), highest vectors with Verma conditions, irreducibility",
        build: verify_twisted,
    },
    Pipeline {
        id: "classify",
        summary: "highest weight of a twisted module and its classification certificate",
        build: classify,
    },
    Pipeline {
        id: "reduce",
        summary: "over/under/star reductions and the tilde-b shift relation",
        build: reduce_pipeline,
    },
    Pipeline {
        id: "daha",
        summary: "degenerate affine Hecke relations, alternative generators, central elements",
        build: daha,
    },
    Pipeline {
        id: "drinfeld",
        summary: "Drinfeld functor construction of type A or BC and its properties",
        build: drinfeld,
    },
    Pipeline {
        id: "appendix",
        summary: "operator identities on tensor powers of the vector representation",
        build: appendix,
    },
];

pub fn find(id: &str) -> Option<&'static Pipeline> {
    PIPELINES.iter().find(|p| p.id == id)
}

const MODULE: &str = "/inputs/module";

fn mu_json(mu: &[RatFun]) -> Value {
    Value::Array(mu.iter().map(ratfun_to_json).collect())
}

fn vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

fn irreducibility_json(i: &Irreducibility) -> Value {
    match i {
        Irreducibility::Irreducible { closure_dim } => {
            json!({"verdict": "irreducible", "closure_dim": closure_dim})
        }
        Irreducibility::Reducible {
            closure_dim,
            witness,
        } => json!({
            "verdict": "reducible",
            "closure_dim": closure_dim,
            "invariant_subspace": witness.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        }),
        Irreducibility::Inconclusive { closure_dim } => {
            json!({"verdict": "inconclusive", "closure_dim": closure_dim})
        }
    }
}

/// Without an expectation the check passes on any conclusive verdict.
fn irreducibility_outcome(b: &BAction, expect: Option<bool>) -> Outcome {
    if b.dim() == 0 {
        return Outcome::pass().with_data(json!({"verdict": "zero module"}));
    }
    match irreducible_burnside(b) {
        Err(e) => Outcome::error(&e),
        Ok(v) => {
            let got = match &v {
                Irreducibility::Irreducible { .. } => Some(true),
                Irreducibility::Reducible { .. } => Some(false),
                Irreducibility::Inconclusive { .. } => None,
            };
            let ok = match expect {
                Some(e) => got == Some(e),
                None => got.is_some(),
            };
            let data = irreducibility_json(&v);
            if ok {
                Outcome::pass().with_data(data)
            } else {
                Outcome::fail(json!({"kind": "irreducibility", "expected_irreducible": expect}))
                    .with_data(data)
            }
        }
    }
}

fn expect_irreducible(inputs: &Value) -> IResult<Option<bool>> {
    opt_field(inputs, "expect_irreducible")
        .map(|x| boolean(x, "/inputs/expect_irreducible"))
        .transpose()
}

fn corrupt_flag(inputs: &Value) -> IResult<bool> {
    Ok(match opt_field(inputs, "corrupt") {
        Some(x) => boolean(x, "/inputs/corrupt")?,
        None => false,
    })
}

fn verify_yangian(inputs: &Value, bld: &Builder) -> IResult<Vec<Job>> {
    let t = Arc::new(bld.t(field(inputs, "/inputs", "module")?, MODULE)?);
    let corrupt = corrupt_flag(inputs)?;
    let mut jobs = Vec::new();
    {
        let t = t.clone();
        jobs.push(job(
            "rtt",
            "RTT relation R(u-v)T1(u)T2(v) = T2(v)T1(u)R(u-v) and T(u)T'(u) = 1",
            move || match verify_rtt_opts(&t, corrupt) {
                Err(e) => Outcome::error(&e),
                Ok(r) => {
                    for (name, g) in [
                        ("rtt", &r.rtt),
                        ("inverse-left", &r.inverse_left),
                        ("inverse-right", &r.inverse_right),
                    ] {
                        if let o @ Outcome {
                            status: Status::Fail,
                            ..
                        } = Outcome::grid(g)
                        {
                            return o.with_data(json!({"relation": name}));
                        }
                    }
                    Outcome::pass()
                }
            },
        ));
    }
    {
        let ps = t.ps.clone();
        jobs.push(job(
            "yang-baxter",
            "Yang-Baxter equation for R(u) = 1 - P/u",
            move || match verify_yang_baxter(&ps) {
                Err(e) => Outcome::error(&e),
                Ok(g) => Outcome::grid(&g),
            },
        ));
    }
    let weights: Arc<OnceLock<tyang::Result<Vec<(Vec<Rat>, Vec<RatFun>)>>>> =
        Arc::new(OnceLock::new());
    let get_weights = {
        let t = t.clone();
        let w = weights.clone();
        move || -> tyang::Result<Vec<(Vec<Rat>, Vec<RatFun>)>> {
            w.get_or_init(|| {
                highest_space(&t)?
                    .into_iter()
                    .map(|xi| {
                        let lam = highest_lweight(&t, &xi)?;
                        Ok((xi, lam))
                    })
                    .collect()
            })
            .clone()
        }
    };
    {
        let t = t.clone();
        let gw = get_weights.clone();
        jobs.push(job(
            "lambda-prime",
            "highest l-weight of the inverse matrix T'(u) on a highest vector",
            move || {
                let ws = match gw() {
                    Err(e) => return Outcome::error(&e),
                    Ok(ws) => ws,
                };
                if ws.is_empty() {
                    return Outcome::fail(json!({"kind": "error", "message": "no highest vector"}));
                }
                for (xi, lam) in &ws {
                    match lambda_prime_check(&t, xi, lam) {
                        Err(e) => return Outcome::error(&e),
                        Ok(Err(c)) => {
                            let clause = match c {
                                LambdaPrimeClause::UpperKills { i, j } => {
                                    json!({"clause": "a", "i": i + 1, "j": j + 1})
                                }
                                LambdaPrimeClause::Diagonal { i } => {
                                    json!({"clause": "b", "i": i + 1})
                                }
                                LambdaPrimeClause::Killing { i, a, c, j } => json!({
                                    "clause": "c", "i": i + 1, "a": a + 1, "c": c + 1, "j": j + 1
                                }),
                            };
                            return Outcome::fail(json!({"kind": "lambda-prime", "vector": vec_json(xi), "failure": clause}));
                        }
                        Ok(Ok(())) => {}
                    }
                }
                Outcome::pass().with_data(json!({
                    "highest_vectors": ws.iter().map(|(xi, lam)| json!({"vector": vec_json(xi), "lambda": mu_json(lam)})).collect::<Vec<_>>(),
                }))
            },
        ));
    }
    if t.ps.is_standard() {
        let ps = t.ps.clone();
        let gw = get_weights.clone();
        jobs.push(job(
            "finiteness",
            "finite-dimensionality criterion for highest l-weights, standard parity",
            move || {
                let ws = match gw() {
                    Err(e) => return Outcome::error(&e),
                    Ok(ws) => ws,
                };
                let mut polys = Vec::new();
                for (_, lam) in &ws {
                    match zhang_check(&ps, lam) {
                        Err(e) => return Outcome::error(&e),
                        Ok(ZhangOutcome::FiniteDimensional(p)) => {
                            polys.push(Value::Array(p.iter().map(poly_to_json).collect()))
                        }
                        Ok(ZhangOutcome::Fails { index }) => {
                            return Outcome::fail(json!({"kind": "finiteness", "index": index + 1}))
                        }
                        Ok(ZhangOutcome::Undecided { index }) => {
                            return Outcome::fail(json!({"kind": "undecided", "index": index + 1}))
                        }
                    }
                }
                Outcome::pass().with_data(json!({"polynomials": polys}))
            },
        ));
    }
    Ok(jobs)
}

fn verify_twisted(inputs: &Value, bld: &Builder) -> IResult<Vec<Job>> {
    let b = Arc::new(bld.b(field(inputs, "/inputs", "module")?, MODULE)?);
    let corrupt = corrupt_flag(inputs)?;
    let expect = expect_irreducible(inputs)?;
    let report: Arc<OnceLock<tyang::Result<BReport>>> = Arc::new(OnceLock::new());
    let get_report = {
        let b = b.clone();
        move || report.get_or_init(|| verify_b_opts(&b, corrupt)).clone()
    };
    let mut jobs = Vec::new();
    {
        let gr = get_report.clone();
        jobs.push(job(
            "reflection",
            "reflection equation R(u-v)B1(u)R(u+v)B2(v) = B2(v)R(u+v)B1(u)R(u-v)",
            move || match gr() {
                Err(e) => Outcome::error(&e),
                Ok(r) => Outcome::grid(&r.reflection),
            },
        ));
    }
    jobs.push(job(
        "unitarity",
        "B(u)B(-u) is an even central scalar f(u)",
        move || match get_report() {
            Err(e) => Outcome::error(&e),
            Ok(r) => {
                let data = json!({
                    "f": r.f.as_ref().map(ratfun_to_json),
                    "unitary": r.unitary(),
                    "f_even": r.f_even,
                    "f_central": r.f_central,
                });
                if r.f.is_some() && r.f_even && r.f_central {
                    Outcome::pass().with_data(data)
                } else {
                    Outcome::fail(json!({"kind": "unitarity"})).with_data(data)
                }
            }
        },
    ));
    {
        let b = b.clone();
        jobs.push(job(
            "highest-space",
            "highest vectors, their weights, and the Verma nontriviality conditions",
            move || highest_space_outcome(&b),
        ));
    }
    jobs.push(job(
        "irreducibility",
        "absolute irreducibility via the Burnside dimension of the closure",
        move || irreducibility_outcome(&b, expect),
    ));
    Ok(jobs)
}

fn highest_space_outcome(b: &BAction) -> Outcome {
    let hs = match find_highest_space(b) {
        Err(e) => return Outcome::error(&e),
        Ok(h) => h,
    };
    if hs.basis.is_empty() || !hs.invariant || !hs.commuting {
        return Outcome::fail(json!({
            "kind": "highest-space",
            "dim": hs.basis.len(),
            "invariant": hs.invariant,
            "commuting": hs.commuting,
        }));
    }
    let mut weights = Vec::new();
    for (v, _) in &hs.basis {
        let w = match highest_bweight(b, v) {
            Err(e) => return Outcome::error(&e),
            Ok(w) => w,
        };
        if let Some(i) = verma_conditions(&w) {
            return Outcome::fail(json!({"kind": "verma", "vector": vec_json(v), "index": i + 1}));
        }
        weights.push(json!({"vector": vec_json(v), "mu": mu_json(&w.mu)}));
    }
    Outcome::pass().with_data(json!({"dim": hs.basis.len(), "weights": weights}))
}

fn classify(inputs: &Value, bld: &Builder) -> IResult<Vec<Job>> {
    let b = Arc::new(bld.b(field(inputs, "/inputs", "module")?, MODULE)?);
    let k = b.kappa();
    let vector = opt_field(inputs, "vector")
        .map(|x| rats(x, "/inputs/vector"))
        .transpose()?;
    if let Some(v) = &vector {
        if v.len() != b.dim() {
            return Err(InputError::new(
                "/inputs/vector",
                "length differs from the module dimension",
            ));
        }
    }
    let cert = match opt_field(inputs, "certificate") {
        None => None,
        Some(c) => {
            let p = "/inputs/certificate";
            let gamma = opt_field(c, "gamma")
                .map(|x| rat(x, &format!("{p}/gamma")))
                .transpose()?;
            if k == 2 {
                Some(Cert::Rank1(Rank1Mode::Verify {
                    p: poly(field(c, p, "p")?, &format!("{p}/p"))?,
                    gamma,
                }))
            } else {
                let pp = format!("{p}/polys");
                let list = field(c, p, "polys")?
                    .as_array()
                    .ok_or_else(|| InputError::new(&pp, "expected an array"))?;
                let polys = list
                    .iter()
                    .enumerate()
                    .map(|(i, x)| poly(x, &format!("{pp}/{i}")))
                    .collect::<IResult<Vec<_>>>()?;
                let gamma = gamma.ok_or_else(|| InputError::new(p, "missing field \"gamma\""))?;
                Some(Cert::Highrank(gamma, polys))
            }
        }
    };
    let expect = expect_irreducible(inputs)?;
    let mut jobs = Vec::new();
    {
        let b = b.clone();
        jobs.push(job(
            "classification",
            "classification of finite-dimensional irreducible modules by highest weight",
            move || classification_outcome(&b, vector.as_deref(), cert.as_ref()),
        ));
    }
    jobs.push(job(
        "irreducibility",
        "absolute irreducibility via the Burnside dimension of the closure",
        move || irreducibility_outcome(&b, expect),
    ));
    Ok(jobs)
}

enum Cert {
    Rank1(Rank1Mode),
    Highrank(Rat, Vec<tyang::exactalg::Poly>),
}

fn classification_outcome(b: &BAction, vector: Option<&[Rat]>, cert: Option<&Cert>) -> Outcome {
    let v = match vector {
        Some(v) => v.to_vec(),
        None => match find_highest_space(b) {
            Err(e) => return Outcome::error(&e),
            Ok(h) => match h.basis.into_iter().next() {
                Some((v, _)) => v,
                None => {
                    return Outcome::fail(json!({"kind": "error", "message": "no highest vector"}))
                }
            },
        },
    };
    let mu = match highest_bweight(b, &v) {
        Err(e) => return Outcome::error(&e),
        Ok(m) => m,
    };
    let mut data = json!({
        "dim": b.dim(),
        "vector": vec_json(&v),
        "mu": mu_json(&mu.mu),
        "mu_tilde": mu_json(&mu_tilde(&mu.ctx, &mu.mu)),
    });
    let (ok, cert_json) = if b.kappa() == 2 {
        let mode = match cert {
            Some(Cert::Rank1(m)) => m.clone(),
            _ => Rank1Mode::Search,
        };
        match classify_rank1(&mu, &mode) {
            Err(e) => return Outcome::error(&e).with_data(data),
            Ok(c) => (
                c.status == CertStatus::Verified,
                json!({
                    "case": c.case.as_str(),
                    "p": poly_to_json(&c.p),
                    "gamma": c.gamma.as_ref().map(rat_to_json),
                    "status": format!("{:?}", c.status),
                    "unique": c.unique,
                }),
            ),
        }
    } else if let Some(Cert::Highrank(gamma, polys)) = cert {
        match classify_highrank(&mu, gamma, polys) {
            Err(e) => return Outcome::error(&e).with_data(data),
            Ok(r) => (
                r.passed(),
                json!({
                    "gamma": rat_to_json(gamma),
                    "polys": polys.iter().map(poly_to_json).collect::<Vec<_>>(),
                    "standard": r.standard,
                    "simple_eps": r.simple_eps,
                    "failure": r.failure.map(|(i, c)| json!({"index": i + 1, "clause": format!("{c:?}")})),
                }),
            ),
        }
    } else {
        match classify_highrank_search(&mu) {
            HighrankSearch::Found { gamma, polys } => (
                true,
                json!({
                    "gamma": rat_to_json(&gamma),
                    "polys": polys.iter().map(poly_to_json).collect::<Vec<_>>(),
                }),
            ),
            HighrankSearch::Fails { index } => (false, json!({"fails_at": index + 1})),
            HighrankSearch::Undecided { index } => (false, json!({"undecided_at": index + 1})),
        }
    };
    data["certificate"] = cert_json;
    if ok {
        Outcome::pass().with_data(data)
    } else {
        Outcome::fail(json!({"kind": "classification"})).with_data(data)
    }
}

fn reduce_pipeline(inputs: &Value, bld: &Builder) -> IResult<Vec<Job>> {
    let b = Arc::new(bld.b(field(inputs, "/inputs", "module")?, MODULE)?);
    let mode = reduce_mode(inputs, "/inputs")?;
    let reduced = Arc::new(reduce(&b, mode));
    let mut jobs = Vec::new();
    {
        let reduced = reduced.clone();
        jobs.push(job(
            "reduced-relations",
            "the reduced module satisfies the reflection equation and unitarity",
            move || match reduced.as_ref() {
                Err(e) => Outcome::error(e),
                Ok(r) => match verify_b(r) {
                    Err(e) => Outcome::error(&e),
                    Ok(rep) => {
                        let data = json!({"dim": r.dim(), "ctx": ctx_to_json(&r.ctx)});
                        if rep.passed() {
                            Outcome::pass().with_data(data)
                        } else if let o @ Outcome {
                            status: Status::Fail,
                            ..
                        } = Outcome::grid(&rep.reflection)
                        {
                            o.with_data(data)
                        } else {
                            Outcome::fail(json!({"kind": "unitarity"})).with_data(data)
                        }
                    }
                },
            },
        ));
    }
    jobs.push(job(
        "tilde-shift",
        "reduced tilde b_ii(u) equals a shifted tilde b of the original module",
        move || match reduction_shift_check(&b, mode) {
            Err(e) => Outcome::error(&e),
            Ok(None) => Outcome::pass(),
            Ok(Some(i)) => Outcome::fail(json!({"kind": "tilde-shift", "index": i + 1})),
        },
    ));
    Ok(jobs)
}

fn ypoly(v: &Value, path: &str, l: usize) -> IResult<YPoly> {
    if let Some(k) = opt_field(v, "power_sum_squares") {
        let k = uint(k, &format!("{path}/power_sum_squares"))?;
        return Ok(YPoly::power_sum_squares(l, k as u32));
    }
    let tp = format!("{path}/terms");
    let terms = field(v, path, "terms")?
        .as_array()
        .ok_or_else(|| InputError::new(&tp, "expected an array"))?;
    let mut out = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let p = format!("{tp}/{i}");
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| InputError::new(&p, "expected [coefficient, exponents]"))?;
        let c = rat(&pair[0], &format!("{p}/0"))?;
        let ep = format!("{p}/1");
        let exps = pair[1]
            .as_array()
            .filter(|a| a.len() == l)
            .ok_or_else(|| InputError::new(&ep, format!("expected {l} exponents")))?
            .iter()
            .enumerate()
            .map(|(j, e)| uint(e, &format!("{ep}/{j}")).map(|x| x as u32))
            .collect::<IResult<Vec<_>>>()?;
        out.push((c, exps));
    }
    Ok(YPoly { terms: out })
}

fn daha(inputs: &Value, bld: &Builder) -> IResult<Vec<Job>> {
    let m = Arc::new(bld.daha(field(inputs, "/inputs", "module")?, MODULE)?);
    let mut jobs = Vec::new();
    {
        let m = m.clone();
        jobs.push(job(
            "relations",
            "defining relations of the degenerate affine Hecke algebra",
            move || match verify_daha(&m) {
                Ok(()) => Outcome::pass().with_data(json!({"dim": m.dim})),
                Err(r) => Outcome::fail(json!({"kind": "relation", "relation": r})),
            },
        ));
    }
    if m.params.is_bc() {
        let m = m.clone();
        jobs.push(job(
            "sf-presentation",
            "relations of the alternative generators of the type BC algebra",
            move || match sf_presentation(&m) {
                Err(e) => Outcome::error(&e),
                Ok(r) => match r.failure {
                    None => Outcome::pass(),
                    Some(f) => Outcome::fail(json!({"kind": "relation", "relation": f})),
                },
            },
        ));
    }
    if let Some(list) = opt_field(inputs, "center") {
        let list = list
            .as_array()
            .ok_or_else(|| InputError::new("/inputs/center", "expected an array"))?;
        for (i, c) in list.iter().enumerate() {
            let path = format!("/inputs/center/{i}");
            let p = ypoly(c, &path, m.l())?;
            let expect = match opt_field(c, "expect_central") {
                Some(x) => boolean(x, &format!("{path}/expect_central"))?,
                None => true,
            };
            let m = m.clone();
            jobs.push(job(
                format!("center-{}", i + 1),
                "symmetric polynomials in y^2 are central; others are not",
                move || {
                    let res = center_check(&m, &p);
                    let data = json!({
                        "central": res.is_ok(),
                        "expect_central": expect,
                        "detail": res.as_ref().err(),
                    });
                    if res.is_ok() == expect {
                        Outcome::pass().with_data(data)
                    } else {
                        Outcome::fail(json!({"kind": "center"})).with_data(data)
                    }
                },
            ));
        }
    }
    Ok(jobs)
}

fn drinfeld_params(inputs: &Value, m: &DahaModule, bc: bool) -> IResult<DrinfeldParams> {
    let c = ctx(field(inputs, "/inputs", "ctx")?, "/inputs/ctx")?;
    let eps = sign(field(inputs, "/inputs", "epsilon")?, "/inputs/epsilon")?;
    let chi = opt_field(inputs, "chi")
        .map(|x| rat(x, "/inputs/chi"))
        .transpose()?;
    let lift =
        |r: tyang::Result<DrinfeldParams>| r.map_err(|e| InputError::new("/inputs", e.to_string()));
    if bc {
        match chi {
            None => lift(DrinfeldParams::matched(&c, eps, &m.params)),
            Some(chi) => lift(DrinfeldParams::bc(c, eps, chi)),
        }
    } else {
        let chi = match chi {
            Some(x) => x,
            None if m.params.theta1 != Rat::from_integer(0.into()) => {
                Rat::from_integer(eps.into()) / &m.params.theta1
            }
            None => {
                return Err(InputError::new(
                    "/inputs/chi",
                    "θ1 = 0 requires an explicit χ",
                ))
            }
        };
        let shift = opt_field(inputs, "c")
            .map(|x| rat(x, "/inputs/c"))
            .transpose()?
            .unwrap_or_else(|| Rat::from_integer(0.into()));
        lift(DrinfeldParams::new(c, eps, chi, shift))
    }
}

fn drinfeld(inputs: &Value, bld: &Builder) -> IResult<Vec<Job>> {
    let m = Arc::new(bld.daha(field(inputs, "/inputs", "module")?, MODULE)?);
    let ty = string(field(inputs, "/inputs", "type")?, "/inputs/type")?;
    let bc = match ty {
        "A" => false,
        "BC" => true,
        t => {
            return Err(InputError::new(
                "/inputs/type",
                format!("unknown type \"{t}\""),
            ))
        }
    };
    if bc && !m.params.is_bc() {
        return Err(InputError::new(
            MODULE,
            "type BC functor needs a type BC module",
        ));
    }
    let params = Arc::new(drinfeld_params(inputs, &m, bc)?);
    let kappa = params.ctx.kappa();
    bld.cap(m.dim * kappa.pow(m.l() as u32), MODULE)?;
    let tensor = match opt_field(inputs, "tensor") {
        None => None,
        Some(t) => Some(Arc::new((
            bld.daha(field(t, "/inputs/tensor", "a")?, "/inputs/tensor/a")?,
            bld.daha(field(t, "/inputs/tensor", "b")?, "/inputs/tensor/b")?,
        ))),
    };
    let expect = expect_irreducible(inputs)?;
    let built: Arc<tyang::Result<DrinfeldModule>> = Arc::new(if bc {
        drinfeld_bc(&m, &params)
    } else {
        drinfeld_a(&m, &params)
    });
    let mut jobs = Vec::new();
    {
        let built = built.clone();
        jobs.push(job(
            "construct",
            "the functor action descends to the quotient by N and the parameter constraints hold",
            move || match built.as_ref() {
                Err(e) => Outcome::error(e),
                Ok(d) => Outcome::pass().with_data(json!({
                    "ambient_dim": d.quotient.ambient.dim(),
                    "dim": d.dim(),
                    "chi": rat_to_json(&d.params.chi),
                    "c": rat_to_json(&d.params.c),
                    "gamma": rat_to_json(&d.params.gamma()),
                })),
            },
        ));
    }
    let missing = || Outcome::fail(json!({"kind": "error", "message": "construction failed"}));
    {
        let built = built.clone();
        jobs.push(job(
            "relations",
            "the induced action satisfies the defining relations of its algebra",
            move || {
                let d = match built.as_ref() {
                    Err(_) => return missing(),
                    Ok(d) => d,
                };
                if d.dim() == 0 {
                    return Outcome::pass().with_data(json!({"dim": 0}));
                }
                if let Some(t) = d.t_action() {
                    match verify_rtt_opts(t, false) {
                        Err(e) => Outcome::error(&e),
                        Ok(r) if r.passed() => Outcome::pass(),
                        Ok(r) => Outcome::grid(&r.rtt),
                    }
                } else {
                    match verify_b(d.b_action().expect("BC action")) {
                        Err(e) => Outcome::error(&e),
                        Ok(r) if r.passed() => Outcome::pass(),
                        Ok(r) => match Outcome::grid(&r.reflection) {
                            o @ Outcome {
                                status: Status::Fail,
                                ..
                            } => o,
                            _ => Outcome::fail(json!({"kind": "unitarity"})),
                        },
                    }
                }
            },
        ));
    }
    if bc {
        {
            let (m, params) = (m.clone(), params.clone());
            jobs.push(job(
                "ts-identity",
                "T_k(u)S_k(u) = 1 on M tensor the l-th tensor power",
                move || {
                    for k in 0..m.l() {
                        match ts_identity(&m, &params, k) {
                            Err(e) => return Outcome::error(&e),
                            Ok(false) => {
                                return Outcome::fail(json!({"kind": "ts-identity", "k": k + 1}))
                            }
                            Ok(true) => {}
                        }
                    }
                    Outcome::pass()
                },
            ));
        }
        {
            let (m, params) = (m.clone(), params.clone());
            jobs.push(job(
                "expansion",
                "expansion of B(u) to order u^-2 modulo N",
                move || match bchi_expansion_check(&m, &params) {
                    Err(e) => Outcome::error(&e),
                    Ok(None) => Outcome::pass(),
                    Ok(Some(f)) => Outcome::fail(json!({
                        "kind": "expansion", "order": f.order, "i": f.i + 1, "j": f.j + 1
                    })),
                },
            ));
        }
        {
            let built = built.clone();
            jobs.push(job(
                "irreducibility",
                "absolute irreducibility via the Burnside dimension of the closure",
                move || match built.as_ref() {
                    Err(_) => missing(),
                    Ok(d) => irreducibility_outcome(d.b_action().expect("BC action"), expect),
                },
            ));
        }
        if let Some(t) = tensor {
            let params = params.clone();
            jobs.push(job(
                "tensor",
                "the functor takes the induced product to the coideal tensor product",
                move || match functor_tensor_check(&t.0, &t.1, &params) {
                    Err(e) => Outcome::error(&e),
                    Ok(r) => {
                        let data = json!({"dims": [r.dims.0, r.dims.1]});
                        match r.mismatch {
                            None => Outcome::pass().with_data(data),
                            Some(s) => Outcome::fail(json!({"kind": "tensor", "mismatch": s}))
                                .with_data(data),
                        }
                    }
                },
            ));
        }
    }
    Ok(jobs)
}

fn appendix(inputs: &Value, bld: &Builder) -> IResult<Vec<Job>> {
    let c = Arc::new(ctx(field(inputs, "/inputs", "ctx")?, "/inputs/ctx")?);
    let lv = field(inputs, "/inputs", "l")?;
    let ls: Vec<usize> = match lv.as_array() {
        Some(a) => a
            .iter()
            .enumerate()
            .map(|(i, x)| uint(x, &format!("/inputs/l/{i}")))
            .collect::<IResult<_>>()?,
        None => vec![uint(lv, "/inputs/l")?],
    };
    let mut jobs = Vec::new();
    for l in ls {
        if l == 0 {
            return Err(InputError::new("/inputs/l", "l must be positive"));
        }
        bld.cap(c.kappa().pow(l as u32 + 1), "/inputs/l")?;
        let c = c.clone();
        jobs.push(job(
            format!("identities-l{l}"),
            "operator identities for Q, G and the flips on the tensor powers of V",
            move || match appendix_identities(&c, l) {
                Ok(()) => Outcome::pass(),
                Err(f) => Outcome::fail(json!({
                    "kind": "identity", "id": f.id, "entry": [f.entry.0 + 1, f.entry.1 + 1]
                })),
            },
        ));
    }
    Ok(jobs)
}
