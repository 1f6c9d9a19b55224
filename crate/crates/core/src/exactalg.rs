//! Exact rationals, univariate polynomials and rational functions over Q.
//!
//! Polynomials store ascending coefficients with no trailing zeros. Rational
//! functions are kept reduced with a monic denominator, so structural equality
//! coincides with equality as functions.

use crate::error::{Error, Result};
use num::bigint::{BigInt, Sign};
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// (-1)^k as a rational.
pub fn sign_pow(k: usize) -> Rat {
    if k.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn from_coeffs(mut c: Vec<Rat>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Poly {
        Poly { c: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(rat(1))
    }

    pub fn constant(a: Rat) -> Poly {
        Poly::from_coeffs(vec![a])
    }

    /// The indeterminate `u`.
    pub fn u() -> Poly {
        Poly::from_coeffs(vec![rat(0), rat(1)])
    }

    /// `a*u + b`.
    pub fn linear(a: Rat, b: Rat) -> Poly {
        Poly::from_coeffs(vec![b, a])
    }

    /// `u - r`.
    pub fn root_factor(r: &Rat) -> Poly {
        Poly::from_coeffs(vec![-r.clone(), rat(1)])
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rat>) -> Poly {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::root_factor(r))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn scale(&self, a: &Rat) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x * a).collect(),
        }
    }

    /// Leading coefficient and monic part. The zero polynomial maps to (0, 0).
    pub fn monic(&self) -> (Rat, Poly) {
        if self.is_zero() {
            return (Rat::zero(), Poly::zero());
        }
        let lc = self.lc();
        let inv = lc.recip();
        (lc, self.scale(&inv))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * rat(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let inv = d.lc().recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &inv;
            if f.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] -= &f * dj;
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic().1
    }

    /// `p(a*u + b)`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Poly {
        let lin = Poly::linear(a.clone(), b.clone());
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(u + h)`.
    pub fn shift(&self, h: &Rat) -> Poly {
        self.compose_affine(&rat(1), h)
    }

    /// `p(-u + h)`.
    pub fn reflect(&self, h: &Rat) -> Poly {
        self.compose_affine(&rat(-1), h)
    }

    /// The unique polynomial of degree `< xs.len()` through `(xs[i], ys[i])`
    /// (Newton divided differences). Nodes must be distinct.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
            }
        }
        let mut p = Poly::zero();
        for i in (0..n).rev() {
            p = &(&p * &Poly::root_factor(&xs[i])) + &Poly::constant(dd[i].clone());
        }
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})u")?,
                _ => write!(f, "({a})u^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Poly, Add, add);
forward_owned!(Poly, Sub, sub);
forward_owned!(Poly, Mul, mul);

/// Result of rational root isolation: the roots with multiplicity and the
/// cofactor left after dividing out every rational linear factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Roots {
    pub roots: Vec<(Rat, usize)>,
    pub cofactor: Poly,
}

impl Roots {
    /// True when the polynomial splits completely over Q.
    pub fn splits(&self) -> bool {
        self.cofactor.is_constant()
    }

    /// Roots repeated by multiplicity, ascending.
    pub fn flat(&self) -> Vec<Rat> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
            .collect()
    }
}

fn integer_primitive(p: &Poly) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    if let Some(v) = n.to_u64() {
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= v {
            if v % d == 0 {
                small.push(BigInt::from(d));
                if d != v / d {
                    large.push(BigInt::from(v / d));
                }
            }
            d += 1;
        }
        large.reverse();
        small.extend(large);
        return small;
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// All rational roots of `p` with multiplicity, by the rational root theorem.
pub fn rational_roots(p: &Poly) -> Roots {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut rest = p.clone();
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    let mut zero_mult = 0;
    while rest.coeff(0).is_zero() && !rest.is_constant() {
        rest = Poly::from_coeffs(rest.coeffs()[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
    }
    if !rest.is_constant() {
        let ints = integer_primitive(&rest);
        let a0 = ints[0].clone();
        let an = ints[ints.len() - 1].clone();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        let mut cands: Vec<Rat> = Vec::new();
        for pp in &ps {
            for qq in &qs {
                let r = Rat::new(pp.clone(), qq.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            let mut m = 0;
            while !rest.is_constant() && rest.eval(&r).is_zero() {
                rest = rest.div_rem(&Poly::root_factor(&r)).0;
                m += 1;
            }
            if m > 0 {
                roots.push((r, m));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Roots {
        roots,
        cofactor: rest,
    }
}

/// Reduced rational function with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Builds and reduces `num/den`. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> RatFun {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let (lc, den) = den.monic();
        let num = num.scale(&lc.recip());
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(a: Rat) -> RatFun {
        RatFun::from_poly(Poly::constant(a))
    }

    pub fn from_i64(a: i64) -> RatFun {
        RatFun::constant(rat(a))
    }

    pub fn zero() -> RatFun {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Poly::one())
    }

    pub fn u() -> RatFun {
        RatFun::from_poly(Poly::u())
    }

    /// `1/(u - r)`.
    pub fn pole_at(r: &Rat) -> RatFun {
        RatFun {
            num: Poly::one(),
            den: Poly::root_factor(r),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == Poly::one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_constant() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn scale(&self, a: &Rat) -> RatFun {
        if a.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(a),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFun) -> RatFun {
        self * &o.inv()
    }

    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> RatFun {
        RatFun::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    pub fn shift(&self, h: &Rat) -> RatFun {
        self.compose_affine(&rat(1), h)
    }

    pub fn reflect(&self, h: &Rat) -> RatFun {
        self.compose_affine(&rat(-1), h)
    }

    /// Value at infinity when the function is proper.
    pub fn limit_at_infinity(&self) -> Option<Rat> {
        let (dn, dd) = (self.num.deg(), self.den.deg());
        if self.is_zero() || dn < dd {
            Some(Rat::zero())
        } else if dn == dd {
            Some(self.num.lc() / self.den.lc())
        } else {
            None
        }
    }

    /// Coefficients `c_0, c_1, ...` of the expansion `sum c_k u^{-k}` at
    /// infinity. Requires a proper function.
    pub fn laurent(&self, n: usize) -> Option<Vec<Rat>> {
        let (dn, dd) = (self.num.deg(), self.den.deg());
        if self.is_zero() {
            return Some(vec![Rat::zero(); n]);
        }
        if dn > dd {
            return None;
        }
        // With x = 1/u: f = N(x)/D(x), N(x) = x^dd num(1/x), D(x) = x^dd den(1/x).
        let nx: Vec<Rat> = (0..=dd).map(|k| self.num.coeff(dd - k)).collect();
        let dx: Vec<Rat> = (0..=dd).map(|k| self.den.coeff(dd - k)).collect();
        let d0inv = dx[0].recip();
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = nx.get(k).cloned().unwrap_or_else(Rat::zero);
            for j in 1..=k.min(dd) {
                acc -= &dx[j] * &out[k - j];
            }
            out.push(acc * &d0inv);
        }
        Some(out)
    }

    pub fn is_even(&self) -> bool {
        *self == self.compose_affine(&rat(-1), &rat(0))
    }
}

pub fn rf_eval(f: &RatFun, x: &Rat) -> Result<Rat> {
    f.eval(x)
}

pub fn rf_equal(a: &RatFun, b: &RatFun) -> bool {
    a == b
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}]/[{}]", self.num, self.den)
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFun::from_poly(&self.num * &o.num);
        }
        RatFun::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RatFun, Add, add);
forward_owned!(RatFun, Sub, sub);
forward_owned!(RatFun, Mul, mul);

/// Rationals in `[lo, hi]` with denominators up to `max_den`, used by tests
/// as a brute-force root oracle.
pub fn small_rationals(lo: i64, hi: i64, max_den: i64) -> Vec<Rat> {
    let mut v = Vec::new();
    for q in 1..=max_den {
        for p in lo * q..=hi * q {
            v.push(ratio(p, q));
        }
    }
    v.sort();
    v.dedup();
    v
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

pub fn rat_sign(r: &Rat) -> Sign {
    r.numer().sign() * r.denom().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7/2", "5/10"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_roots(&[rat(1), rat(2), ratio(1, 3)]);
        let b = Poly::from_roots(&[rat(2), rat(5)]);
        assert_eq!(Poly::gcd(&a, &b), Poly::root_factor(&rat(2)));
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn roots_with_multiplicity_and_cofactor() {
        let p = &Poly::from_roots(&[ratio(-3, 2), ratio(-3, 2), rat(0), rat(4)])
            * &Poly::from_i64(&[2, 0, 1]);
        let r = rational_roots(&p.scale(&ratio(7, 3)));
        assert_eq!(r.roots, vec![(ratio(-3, 2), 2), (rat(0), 1), (rat(4), 1)]);
        assert_eq!(r.cofactor.monic().1, Poly::from_i64(&[2, 0, 1]));
        assert!(!r.splits());
    }

    #[test]
    fn laurent_of_simple_pole() {
        // u/(u-2) = 1 + 2/u + 4/u^2 + ...
        let f = RatFun::new(Poly::u(), Poly::root_factor(&rat(2)));
        assert_eq!(f.laurent(4).unwrap(), vec![rat(1), rat(2), rat(4), rat(8)]);
        assert!(RatFun::u().laurent(2).is_none());
    }

    #[test]
    fn eval_reports_poles() {
        let f = RatFun::pole_at(&rat(3));
        assert_eq!(f.eval(&rat(3)), Err(Error::Pole(rat(3))));
        assert_eq!(f.eval(&rat(4)).unwrap(), rat(1));
    }
}
