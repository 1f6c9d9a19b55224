//! JSON encodings of modules and actions. Rationals are `"p/q"` strings,
//! matrices are row-major arrays of rows, polynomials are coefficient arrays
//! (constant term first), and `(i,j)` keys are 1-based `"i,j"` strings.

use crate::daha::{DahaModule, DahaParams};
use crate::drinfeld::{DrinfeldAction, DrinfeldModule};
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, parse_rat, Poly, Rat, RatFun};
use crate::glmn::{GlModule, ParitySeq};
use crate::superlinalg::{QMat, RFMatrix, SuperSpace};
use crate::twisted::{BAction, TwistedContext};
use crate::yangian::TAction;
use serde_json::{json, Map, Value};

fn bad(what: &str) -> Error {
    Error::Input(format!("malformed {what}"))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

/// Accepts `"p/q"` strings and JSON integers.
pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(crate::exactalg::rat)
            .ok_or_else(|| bad("rational")),
        _ => Err(bad("rational")),
    }
}

pub fn rats_from_json(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| bad("rational list"))?
        .iter()
        .map(rat_from_json)
        .collect()
}

pub fn signs_from_json(v: &Value) -> Result<Vec<i8>> {
    v.as_array()
        .ok_or_else(|| bad("sign list"))?
        .iter()
        .map(|x| match x.as_i64() {
            Some(1) => Ok(1),
            Some(-1) => Ok(-1),
            _ => Err(bad("sign (expected ±1)")),
        })
        .collect()
}

pub fn qmat_to_json(m: &QMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(rat_to_json).collect()))
            .collect(),
    )
}

pub fn qmat_from_json(v: &Value) -> Result<QMat> {
    let rows = v.as_array().ok_or_else(|| bad("matrix"))?;
    let rows: Vec<Vec<Rat>> = rows.iter().map(rats_from_json).collect::<Result<_>>()?;
    QMat::from_rows(rows)
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Poly> {
    Ok(Poly::from_coeffs(rats_from_json(v)?))
}

pub fn ratfun_to_json(f: &RatFun) -> Value {
    json!({"num": poly_to_json(f.num()), "den": poly_to_json(f.den())})
}

pub fn ratfun_from_json(v: &Value) -> Result<RatFun> {
    let num = poly_from_json(v.get("num").ok_or_else(|| bad("rational function"))?)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| bad("rational function"))?)?;
    if den.is_zero() {
        return Err(bad("rational function (zero denominator)"));
    }
    Ok(RatFun::new(num, den))
}

pub fn rfmat_to_json(m: &RFMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| ratfun_to_json(m.get(r, c))).collect()))
            .collect(),
    )
}

pub fn rfmat_from_json(v: &Value, n: usize) -> Result<RFMatrix> {
    let rows = v.as_array().ok_or_else(|| bad("matrix"))?;
    if rows.len() != n {
        return Err(Error::DimensionMismatch(format!("expected {n} rows")));
    }
    let mut m = RFMatrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad("matrix row"))?;
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!("expected {n} columns")));
        }
        for (c, x) in row.iter().enumerate() {
            m.set(r, c, ratfun_from_json(x)?);
        }
    }
    Ok(m)
}

fn key(i: usize, j: usize) -> String {
    format!("{},{}", i + 1, j + 1)
}

fn family_to_json<T>(k: usize, fam: &[T], f: impl Fn(&T) -> Value) -> Value {
    let mut m = Map::new();
    for i in 0..k {
        for j in 0..k {
            m.insert(key(i, j), f(&fam[i * k + j]));
        }
    }
    Value::Object(m)
}

fn family_from_json<T>(k: usize, v: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<Vec<T>> {
    let obj = v.as_object().ok_or_else(|| bad("operator family"))?;
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            out.push(f(obj.get(&key(i, j)).ok_or_else(|| {
                Error::Input(format!("missing entry {}", key(i, j)))
            })?)?);
        }
    }
    Ok(out)
}

fn parities_to_json(s: &SuperSpace) -> Value {
    json!(s.parities())
}

/// Adds the basis labels of `s`, if any, under `"labels"`.
fn with_labels(mut v: Value, s: &SuperSpace) -> Value {
    if let (Some(l), Some(obj)) = (s.labels(), v.as_object_mut()) {
        obj.insert("labels".into(), json!(l));
    }
    v
}

fn space_from_json(v: &Value, dim: usize) -> Result<SuperSpace> {
    let ps: Vec<u8> = match v.get("parities") {
        Some(p) => p
            .as_array()
            .ok_or_else(|| bad("parities"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&y| y <= 1)
                    .map(|y| y as u8)
                    .ok_or_else(|| bad("parity"))
            })
            .collect::<Result<_>>()?,
        None => vec![0; dim],
    };
    if ps.len() != dim {
        return Err(Error::DimensionMismatch("parities do not match dim".into()));
    }
    let space = SuperSpace::new(ps);
    match v.get("labels").and_then(Value::as_array) {
        Some(l) if l.len() == dim => {
            let l = l
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("label")))
                .collect::<Result<_>>()?;
            Ok(space.with_labels(l))
        }
        Some(_) => Err(Error::DimensionMismatch("labels do not match dim".into())),
        None => Ok(space),
    }
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    v.get(name)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Input(format!("missing integer \"{name}\"")))
}

pub fn ps_from_json(v: &Value) -> Result<ParitySeq> {
    ParitySeq::new(signs_from_json(v)?)
}

pub fn gl_module_to_json(m: &GlModule) -> Value {
    with_labels(
        json!({
        "ps": m.ps.values(),
        "dim": m.dim(),
        "parities": parities_to_json(&m.space),
        "e": family_to_json(m.kappa(), &m.e, qmat_to_json),
        }),
        &m.space,
    )
}

pub fn gl_module_from_json(v: &Value) -> Result<GlModule> {
    let ps = ps_from_json(v.get("ps").ok_or_else(|| bad("module (ps)"))?)?;
    let dim = usize_field(v, "dim")?;
    let space = space_from_json(v, dim)?;
    let e = family_from_json(
        ps.kappa(),
        v.get("e").ok_or_else(|| bad("module (e)"))?,
        qmat_from_json,
    )?;
    GlModule::new(ps, space, e)
}

pub fn t_action_to_json(t: &TAction) -> Value {
    with_labels(
        json!({
        "ps": t.ps.values(),
        "dim": t.dim(),
        "parities": parities_to_json(&t.space),
        "t": family_to_json(t.kappa(), &t.t, rfmat_to_json),
        }),
        &t.space,
    )
}

pub fn t_action_from_json(v: &Value) -> Result<TAction> {
    let ps = ps_from_json(v.get("ps").ok_or_else(|| bad("action (ps)"))?)?;
    let dim = usize_field(v, "dim")?;
    let space = space_from_json(v, dim)?;
    let t = family_from_json(
        ps.kappa(),
        v.get("t").ok_or_else(|| bad("action (t)"))?,
        |x| rfmat_from_json(x, dim),
    )?;
    TAction::new(ps, space, t)
}

pub fn ctx_to_json(c: &TwistedContext) -> Value {
    let mut m = Map::new();
    m.insert("s".into(), json!(c.ps.values()));
    m.insert("eps".into(), json!(c.eps));
    if let Some(g) = &c.gamma {
        m.insert("gamma".into(), rat_to_json(g));
    }
    Value::Object(m)
}

pub fn ctx_from_json(v: &Value) -> Result<TwistedContext> {
    let ps = ps_from_json(v.get("s").ok_or_else(|| bad("context (s)"))?)?;
    let eps = signs_from_json(v.get("eps").ok_or_else(|| bad("context (eps)"))?)?;
    let gamma = v.get("gamma").map(rat_from_json).transpose()?;
    TwistedContext::new(ps, eps, gamma)
}

pub fn b_action_to_json(b: &BAction) -> Value {
    with_labels(
        json!({
        "ctx": ctx_to_json(&b.ctx),
        "dim": b.dim(),
        "parities": parities_to_json(&b.space),
        "b": family_to_json(b.kappa(), &b.b, rfmat_to_json),
        }),
        &b.space,
    )
}

pub fn b_action_from_json(v: &Value) -> Result<BAction> {
    let ctx = ctx_from_json(v.get("ctx").ok_or_else(|| bad("action (ctx)"))?)?;
    let dim = usize_field(v, "dim")?;
    let space = space_from_json(v, dim)?;
    let b = family_from_json(
        ctx.kappa(),
        v.get("b").ok_or_else(|| bad("action (b)"))?,
        |x| rfmat_from_json(x, dim),
    )?;
    BAction::new(ctx, space, b)
}

pub fn daha_to_json(m: &DahaModule) -> Value {
    json!({
        "l": m.l(),
        "theta1": rat_to_json(&m.params.theta1),
        "theta2": m.params.theta2.as_ref().map(rat_to_json),
        "dim": m.dim,
        "sigma": m.sigma.iter().map(qmat_to_json).collect::<Vec<_>>(),
        "sigmaL": m.sigma_l.as_ref().map(qmat_to_json),
        "y": m.y.iter().map(qmat_to_json).collect::<Vec<_>>(),
    })
}

pub fn daha_from_json(v: &Value) -> Result<DahaModule> {
    let l = usize_field(v, "l")?;
    let theta1 = rat_from_json(v.get("theta1").ok_or_else(|| bad("dAHA module (theta1)"))?)?;
    let theta2 = match v.get("theta2") {
        None | Some(Value::Null) => None,
        Some(x) => Some(rat_from_json(x)?),
    };
    let mats = |name: &str| -> Result<Vec<QMat>> {
        v.get(name)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input(format!("missing \"{name}\"")))?
            .iter()
            .map(qmat_from_json)
            .collect()
    };
    let sigma_l = match v.get("sigmaL") {
        None | Some(Value::Null) => None,
        Some(x) => Some(qmat_from_json(x)?),
    };
    let m = DahaModule::new(
        DahaParams::new(l, theta1, theta2)?,
        mats("sigma")?,
        sigma_l,
        mats("y")?,
    )?;
    if let Some(d) = v.get("dim").and_then(Value::as_u64) {
        if d as usize != m.dim {
            return Err(Error::DimensionMismatch(
                "dim does not match the matrices".into(),
            ));
        }
    }
    Ok(m)
}

pub fn drinfeld_to_json(d: &DrinfeldModule) -> Value {
    let p = &d.params;
    json!({
        "params": {
            "ctx": ctx_to_json(&p.ctx),
            "epsilon": p.epsilon,
            "chi": rat_to_json(&p.chi),
            "c": rat_to_json(&p.c),
        },
        "l": d.l,
        "ambient_dim": d.quotient.ambient.dim(),
        "dim": d.dim(),
        "projection": qmat_to_json(&d.quotient.projection),
        "section": qmat_to_json(&d.quotient.section),
        "action": match &d.action {
            DrinfeldAction::A(t) => json!({"type": "A", "t_action": t_action_to_json(t)}),
            DrinfeldAction::BC(b) => json!({"type": "BC", "b_action": b_action_to_json(b)}),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha::principal_series;
    use crate::exactalg::rat;
    use crate::glmn::make_lab;
    use crate::twisted::b_from_t;
    use crate::yangian::evaluation_action;

    #[test]
    fn round_trips() {
        let g = make_lab(1, &rat(1), &rat(2)).unwrap();
        assert_eq!(gl_module_from_json(&gl_module_to_json(&g)).unwrap().e, g.e);
        let t = evaluation_action(&g, &Rat::new(1.into(), 2.into()));
        let t2 = t_action_from_json(&t_action_to_json(&t)).unwrap();
        assert_eq!((t2.t, t2.space), (t.t.clone(), t.space.clone()));
        let ctx = TwistedContext::new(t.ps.clone(), vec![1, 1], Some(rat(3))).unwrap();
        let b = b_from_t(&t, &ctx).unwrap();
        let b2 = b_action_from_json(&b_action_to_json(&b)).unwrap();
        assert_eq!(
            (&b2.ctx, &b2.b, b2.space.parities()),
            (&b.ctx, &b.b, b.space.parities())
        );
        let m = principal_series(
            &DahaParams::bc(2, rat(1), rat(2)).unwrap(),
            &[rat(0), rat(1)],
        )
        .unwrap();
        assert_eq!(daha_from_json(&daha_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(rat_from_json(&json!("1/0")).is_err());
        assert!(qmat_from_json(&json!([["1"], ["1", "2"]])).is_err());
        assert!(ctx_from_json(&json!({"s": [1, 2], "eps": [1, 1]})).is_err());
    }
}
