//! Typed readers for scenario input blocks. Every error carries the JSON
//! pointer of the offending value.

use serde_json::Value;
use std::fmt;
use tyang::daha::{char_module, odot, principal_series, DahaModule, DahaParams};
use tyang::exactalg::{Poly, Rat};
use tyang::glmn::{make_lab, make_vector_rep, GlModule, ParitySeq};
use tyang::serial;
use tyang::twisted::{
    b_from_t, b_tensor, c_gamma, direct_sum, reduce, BAction, ReduceMode, TwistedContext,
};
use tyang::yangian::{evaluation_action, tensor_action, TAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    /// JSON pointer, or `line:column` for syntax errors.
    pub location: String,
    pub message: String,
}

impl InputError {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> InputError {
        InputError {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "input error at {}: {}", self.location, self.message)
    }
}

impl std::error::Error for InputError {}

pub type IResult<T> = Result<T, InputError>;

fn lift<T>(r: tyang::Result<T>, path: &str) -> IResult<T> {
    r.map_err(|e| InputError::new(path, e.to_string()))
}

fn child(path: &str, key: &str) -> String {
    format!("{path}/{key}")
}

pub fn field<'a>(v: &'a Value, path: &str, key: &str) -> IResult<&'a Value> {
    if !v.is_object() {
        return Err(InputError::new(path, "expected an object"));
    }
    v.get(key)
        .ok_or_else(|| InputError::new(path, format!("missing field \"{key}\"")))
}

pub fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

pub fn string<'a>(v: &'a Value, path: &str) -> IResult<&'a str> {
    v.as_str()
        .ok_or_else(|| InputError::new(path, "expected a string"))
}

pub fn uint(v: &Value, path: &str) -> IResult<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| InputError::new(path, "expected a non-negative integer"))
}

pub fn boolean(v: &Value, path: &str) -> IResult<bool> {
    v.as_bool()
        .ok_or_else(|| InputError::new(path, "expected a boolean"))
}

pub fn sign(v: &Value, path: &str) -> IResult<i8> {
    match v.as_i64() {
        Some(1) => Ok(1),
        Some(-1) => Ok(-1),
        _ => Err(InputError::new(path, "expected 1 or -1")),
    }
}

pub fn rat(v: &Value, path: &str) -> IResult<Rat> {
    lift(serial::rat_from_json(v), path)
}

pub fn rats(v: &Value, path: &str) -> IResult<Vec<Rat>> {
    let a = v
        .as_array()
        .ok_or_else(|| InputError::new(path, "expected an array"))?;
    a.iter()
        .enumerate()
        .map(|(i, x)| rat(x, &child(path, &i.to_string())))
        .collect()
}

pub fn poly(v: &Value, path: &str) -> IResult<Poly> {
    Ok(Poly::from_coeffs(rats(v, path)?))
}

fn array<'a>(v: &'a Value, path: &str) -> IResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| InputError::new(path, "expected an array"))
}

pub fn ps(v: &Value, path: &str) -> IResult<ParitySeq> {
    lift(serial::ps_from_json(v), path)
}

pub fn ctx(v: &Value, path: &str) -> IResult<TwistedContext> {
    lift(serial::ctx_from_json(v), path)
}

/// Builds modules from declarative specs, enforcing the dimension cap.
pub struct Builder {
    pub max_dim: usize,
}

impl Builder {
    pub fn cap(&self, dim: usize, path: &str) -> IResult<()> {
        if dim > self.max_dim {
            return Err(InputError::new(
                path,
                format!("dimension {dim} exceeds --max-dim {}", self.max_dim),
            ));
        }
        Ok(())
    }

    fn kind<'a>(&self, v: &'a Value, path: &str) -> IResult<&'a str> {
        string(field(v, path, "kind")?, &child(path, "kind"))
    }

    pub fn gl(&self, v: &Value, path: &str) -> IResult<GlModule> {
        let m = match self.kind(v, path)? {
            "vector" => make_vector_rep(&ps(field(v, path, "s")?, &child(path, "s"))?),
            "lab" => lift(
                make_lab(
                    sign(field(v, path, "s1")?, &child(path, "s1"))?,
                    &rat(field(v, path, "a")?, &child(path, "a"))?,
                    &rat(field(v, path, "b")?, &child(path, "b"))?,
                ),
                path,
            )?,
            "tensor" => {
                let fp = child(path, "factors");
                let fs = array(field(v, path, "factors")?, &fp)?;
                let mut it = fs.iter().enumerate();
                let (_, first) = it
                    .next()
                    .ok_or_else(|| InputError::new(&fp, "empty tensor product"))?;
                let mut acc = self.gl(first, &child(&fp, "0"))?;
                for (i, f) in it {
                    let p = child(&fp, &i.to_string());
                    acc = lift(acc.tensor(&self.gl(f, &p)?), &p)?;
                }
                acc
            }
            "json" => lift(
                serial::gl_module_from_json(field(v, path, "module")?),
                &child(path, "module"),
            )?,
            k => {
                return Err(InputError::new(
                    path,
                    format!("unknown gl module kind \"{k}\""),
                ))
            }
        };
        self.cap(m.dim(), path)?;
        Ok(m)
    }

    pub fn t(&self, v: &Value, path: &str) -> IResult<TAction> {
        let t = match self.kind(v, path)? {
            "evaluation" => {
                let m = self.gl(field(v, path, "module")?, &child(path, "module"))?;
                let z = match opt_field(v, "z") {
                    Some(z) => rat(z, &child(path, "z"))?,
                    None => Rat::from_integer(0.into()),
                };
                evaluation_action(&m, &z)
            }
            "tensor" => {
                let fp = child(path, "factors");
                let fs = array(field(v, path, "factors")?, &fp)?;
                let mut it = fs.iter().enumerate();
                let (_, first) = it
                    .next()
                    .ok_or_else(|| InputError::new(&fp, "empty tensor product"))?;
                let mut acc = self.t(first, &child(&fp, "0"))?;
                for (i, f) in it {
                    let p = child(&fp, &i.to_string());
                    acc = lift(tensor_action(&acc, &self.t(f, &p)?), &p)?;
                    self.cap(acc.dim(), &p)?;
                }
                acc
            }
            "json" => lift(
                serial::t_action_from_json(field(v, path, "action")?),
                &child(path, "action"),
            )?,
            k => {
                return Err(InputError::new(
                    path,
                    format!("unknown Yangian module kind \"{k}\""),
                ))
            }
        };
        self.cap(t.dim(), path)?;
        Ok(t)
    }

    pub fn b(&self, v: &Value, path: &str) -> IResult<BAction> {
        let b = match self.kind(v, path)? {
            "restrict" => {
                let t = self.t(field(v, path, "t")?, &child(path, "t"))?;
                let c = ctx(field(v, path, "ctx")?, &child(path, "ctx"))?;
                lift(b_from_t(&t, &c), path)?
            }
            "c_gamma" => {
                let c = ctx(field(v, path, "ctx")?, &child(path, "ctx"))?;
                let g = rat(field(v, path, "gamma")?, &child(path, "gamma"))?;
                c_gamma(&c, &g)
            }
            "coideal" => {
                let t = self.t(field(v, path, "t")?, &child(path, "t"))?;
                let inner = self.b(field(v, path, "b")?, &child(path, "b"))?;
                self.cap(t.dim() * inner.dim(), path)?;
                lift(b_tensor(&t, &inner), path)?
            }
            "sum" => {
                let x = self.b(field(v, path, "a")?, &child(path, "a"))?;
                let y = self.b(field(v, path, "b")?, &child(path, "b"))?;
                lift(direct_sum(&x, &y), path)?
            }
            "reduce" => {
                let inner = self.b(field(v, path, "b")?, &child(path, "b"))?;
                let mode = reduce_mode(v, path)?;
                lift(reduce(&inner, mode), path)?
            }
            "json" => lift(
                serial::b_action_from_json(field(v, path, "action")?),
                &child(path, "action"),
            )?,
            k => {
                return Err(InputError::new(
                    path,
                    format!("unknown twisted module kind \"{k}\""),
                ))
            }
        };
        self.cap(b.dim(), path)?;
        Ok(b)
    }

    pub fn daha(&self, v: &Value, path: &str) -> IResult<DahaModule> {
        let m = match self.kind(v, path)? {
            "char" => {
                let p = daha_params(v, path)?;
                let s = match opt_field(v, "sigma") {
                    Some(x) => sign(x, &child(path, "sigma"))?,
                    None => 1,
                };
                let vs = match opt_field(v, "varsigma") {
                    Some(x) => sign(x, &child(path, "varsigma"))?,
                    None => 1,
                };
                char_module(&p, s, vs)
            }
            "principal" => {
                let p = daha_params(v, path)?;
                let lam = rats(field(v, path, "lambda")?, &child(path, "lambda"))?;
                lift(principal_series(&p, &lam), path)?
            }
            "odot" => {
                let a = self.daha(field(v, path, "a")?, &child(path, "a"))?;
                let b = self.daha(field(v, path, "b")?, &child(path, "b"))?;
                lift(odot(&a, &b), path)?
            }
            "json" => lift(
                serial::daha_from_json(field(v, path, "module")?),
                &child(path, "module"),
            )?,
            k => {
                return Err(InputError::new(
                    path,
                    format!("unknown dAHA module kind \"{k}\""),
                ))
            }
        };
        self.cap(m.dim, path)?;
        Ok(m)
    }
}

fn daha_params(v: &Value, path: &str) -> IResult<DahaParams> {
    let l = uint(field(v, path, "l")?, &child(path, "l"))?;
    let t1 = rat(field(v, path, "theta1")?, &child(path, "theta1"))?;
    let t2 = opt_field(v, "theta2")
        .map(|x| rat(x, &child(path, "theta2")))
        .transpose()?;
    lift(DahaParams::new(l, t1, t2), path)
}

/// `"mode": "over" | "under" | "star"` with `"a"` (1-based) for `star`.
pub fn reduce_mode(v: &Value, path: &str) -> IResult<ReduceMode> {
    let mp = child(path, "mode");
    match string(field(v, path, "mode")?, &mp)? {
        "over" => Ok(ReduceMode::Over),
        "under" => Ok(ReduceMode::Under),
        "star" => Ok(ReduceMode::Star(uint(
            field(v, path, "a")?,
            &child(path, "a"),
        )?)),
        m => Err(InputError::new(
            mp,
            format!("unknown reduction mode \"{m}\""),
        )),
    }
}
