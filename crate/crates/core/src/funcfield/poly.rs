//! Dense univariate polynomials over F_q in the variable `t`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fq::Fq;

/// A polynomial with coefficients stored low degree first, without
/// trailing zeros. The zero polynomial has an empty coefficient list and
/// `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u8,
    c: Vec<Fq>,
}

impl Poly {
    pub fn new(q: u8, mut c: Vec<Fq>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { q, c }
    }

    pub fn from_ints(q: u8, c: &[i64]) -> Poly {
        Poly::new(q, c.iter().map(|&n| Fq::from_int(q, n)).collect())
    }

    pub fn zero(q: u8) -> Poly {
        Poly { q, c: Vec::new() }
    }

    pub fn one(q: u8) -> Poly {
        Poly::constant(Fq::one(q))
    }

    pub fn constant(a: Fq) -> Poly {
        Poly::new(a.q(), vec![a])
    }

    /// The monomial `t`.
    pub fn t(q: u8) -> Poly {
        Poly::monomial(Fq::one(q), 1)
    }

    pub fn monomial(a: Fq, n: usize) -> Poly {
        let mut c = vec![Fq::zero(a.q()); n + 1];
        c[n] = a;
        Poly::new(a.q(), c)
    }

    /// `t + a`.
    pub fn linear(a: Fq) -> Poly {
        Poly::new(a.q(), vec![a, Fq::one(a.q())])
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(Fq::zero(self.q))
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i64(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn lead(&self) -> Fq {
        self.c.last().copied().unwrap_or(Fq::zero(self.q))
    }

    pub fn scale(&self, a: Fq) -> Poly {
        Poly::new(self.q, self.c.iter().map(|&x| x * a).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.lead().inv() {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Fq::zero(self.q); n];
        c.extend_from_slice(&self.c);
        Poly { q: self.q, c }
    }

    pub fn eval(&self, x: Fq) -> Fq {
        self.c
            .iter()
            .rev()
            .fold(Fq::zero(self.q), |acc, &a| acc * x + a)
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a * Fq::from_int(self.q, i as i64))
            .collect();
        Poly::new(self.q, c)
    }

    /// Coefficients reversed: `t^deg * p(1/t)`.
    pub fn reversed(&self) -> Poly {
        let mut c = self.c.clone();
        c.reverse();
        Poly::new(self.q, c)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(self.q), self.clone());
        }
        let mut quo = vec![Fq::zero(self.q); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = r[i + dd] * inv;
            quo[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[i + j] = r[i + j] - c * dj;
            }
        }
        r.truncate(dd);
        (Poly::new(self.q, quo), Poly::new(self.q, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (quo, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        quo
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, u) with s*self + u*other = g, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(q), Poly::zero(q));
        let (mut u0, mut u1) = (Poly::zero(q), Poly::one(q));
        while !r1.is_zero() {
            let (quo, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&quo * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let u = &u0 - &(&quo * &u1);
            u0 = std::mem::replace(&mut u1, u);
        }
        match r0.lead().inv() {
            Some(inv) => (r0.scale(inv), s0.scale(inv), u0.scale(inv)),
            None => (r0, s0, u0),
        }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.q).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Integer encoding `sum c_i q^i`, used to enumerate polynomials.
    pub fn from_index(q: u8, mut idx: u64) -> Poly {
        let mut c = Vec::new();
        while idx > 0 {
            c.push(Fq::new(q, (idx % q as u64) as u8));
            idx /= q as u64;
        }
        Poly::new(q, c)
    }

    /// All monic polynomials of degree `d`, in encoding order.
    pub fn monics_of_degree(q: u8, d: usize) -> impl Iterator<Item = Poly> {
        let count = (q as u64).pow(d as u32);
        (0..count).map(move |i| {
            let low = Poly::from_index(q, i);
            &low + &Poly::monomial(Fq::one(q), d)
        })
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients compared from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::new(self.q, c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Poly::new(self.q, c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.q, self.c.iter().map(|&x| -x).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.q);
        }
        let mut c = vec![Fq::zero(self.q); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j] + a * b;
            }
        }
        Poly::new(self.q, c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    /// Renders as an expression over `t` that the parser reads back,
    /// e.g. `t^2+t+1` or `2*t+(g+1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}
