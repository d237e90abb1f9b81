//! Small finite fields F_q, q = p^k <= 16, backed by precomputed tables.
//!
//! An element of F_{p^k} is encoded as the integer sum c_i p^i of the
//! coefficients of its residue polynomial in the generator `g`, reduced
//! modulo a fixed irreducible polynomial per field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// The prime powers this crate supports.
pub const SUPPORTED_Q: [u8; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Defining polynomials for non-prime fields, low coefficient first.
/// q=4: g^2+g+1, q=8: g^3+g+1, q=9: g^2+1, q=16: g^4+g+1.
fn defining_poly(q: u8) -> Option<&'static [u8]> {
    match q {
        4 => Some(&[1, 1, 1]),
        8 => Some(&[1, 1, 0, 1]),
        9 => Some(&[1, 0, 1]),
        16 => Some(&[1, 1, 0, 0, 1]),
        _ => None,
    }
}

#[derive(Debug)]
pub(crate) struct Tables {
    pub p: u8,
    pub k: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// A fixed primitive element.
    pub generator: u8,
}

impl Tables {
    fn build(q: u8) -> Tables {
        let (p, k) = prime_power(q).expect("supported q");
        let qs = q as usize;
        let digits = |mut x: usize| {
            let mut d = vec![0u8; k as usize];
            for slot in d.iter_mut() {
                *slot = (x % p as usize) as u8;
                x /= p as usize;
            }
            d
        };
        let encode = |d: &[u8]| {
            d.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize) as u8
        };
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let s: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&s);
                // polynomial product reduced by the defining polynomial
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] += *x as u32 * *y as u32;
                    }
                }
                let mut prod: Vec<u8> = prod.iter().map(|c| (c % p as u32) as u8).collect();
                if let Some(m) = defining_poly(q) {
                    for deg in (k as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        // subtract c * g^(deg-k) * m, m monic
                        for (i, mi) in m.iter().enumerate() {
                            let idx = deg - k as usize + i;
                            prod[idx] = ((prod[idx] as u32 + (p as u32 - c as u32) * *mi as u32)
                                % p as u32) as u8;
                        }
                    }
                }
                mul[a * qs + b] = encode(&prod[..k as usize]);
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let order = |a: usize| {
            let mut x = a;
            let mut n = 1;
            while x != 1 {
                x = mul[x * qs + a] as usize;
                n += 1;
            }
            n
        };
        let generator = (1..qs)
            .find(|&a| order(a) == qs - 1)
            .expect("multiplicative group is cyclic") as u8;
        Tables {
            p,
            k,
            add,
            mul,
            neg,
            inv,
            generator,
        }
    }
}

fn prime_power(q: u8) -> Option<(u8, u8)> {
    if !SUPPORTED_Q.contains(&q) {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r > 1 {
        if r % p != 0 {
            return None;
        }
        r /= p;
        k += 1;
    }
    Some((p, k))
}

static TABLES: [OnceLock<Tables>; 17] = [const { OnceLock::new() }; 17];

pub(crate) fn tables(q: u8) -> &'static Tables {
    TABLES[q as usize].get_or_init(|| Tables::build(q))
}

/// Checks that `q` is one of the supported field sizes.
pub fn check_q(q: u8) -> Result<()> {
    if SUPPORTED_Q.contains(&q) {
        Ok(())
    } else {
        Err(Error::UnsupportedField(q))
    }
}

/// An element of F_q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    q: u8,
    v: u8,
}

impl Fq {
    pub fn new(q: u8, v: u8) -> Fq {
        debug_assert!(SUPPORTED_Q.contains(&q) && v < q);
        Fq { q, v }
    }

    /// The image of an integer under Z -> F_p -> F_q.
    pub fn from_int(q: u8, n: i64) -> Fq {
        let p = tables(q).p as i64;
        Fq::new(q, n.rem_euclid(p) as u8)
    }

    pub fn zero(q: u8) -> Fq {
        Fq { q, v: 0 }
    }

    pub fn one(q: u8) -> Fq {
        Fq { q, v: 1 }
    }

    /// The fixed primitive element of F_q.
    pub fn generator(q: u8) -> Fq {
        Fq::new(q, tables(q).generator)
    }

    /// The residue polynomial generator `g` (equal to the prime-field
    /// element 0 when k = 1; callers use it only for k > 1).
    pub fn symbol_g(q: u8) -> Fq {
        let t = tables(q);
        if t.k == 1 {
            Fq::zero(q)
        } else {
            Fq::new(q, t.p)
        }
    }

    pub fn q(self) -> u8 {
        self.q
    }

    pub fn value(self) -> u8 {
        self.v
    }

    pub fn characteristic(self) -> u8 {
        tables(self.q).p
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn is_one(self) -> bool {
        self.v == 1
    }

    pub fn inv(self) -> Option<Fq> {
        if self.v == 0 {
            None
        } else {
            Some(Fq::new(self.q, tables(self.q).inv[self.v as usize]))
        }
    }

    pub fn pow(self, mut e: u64) -> Fq {
        let mut base = self;
        let mut acc = Fq::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Inverse Frobenius in characteristic 2: the unique s with s^2 = self.
    pub fn sqrt_char2(self) -> Fq {
        debug_assert_eq!(self.characteristic(), 2);
        self.pow(self.q as u64 / 2)
    }

    /// All elements of F_q in encoding order.
    pub fn elements(q: u8) -> impl Iterator<Item = Fq> {
        (0..q).map(move |v| Fq::new(q, v))
    }

    /// Residue digits over F_p, low first.
    pub fn digits(self) -> Vec<u8> {
        let t = tables(self.q);
        let mut x = self.v;
        (0..t.k)
            .map(|_| {
                let d = x % t.p;
                x /= t.p;
                d
            })
            .collect()
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, o: Fq) -> Fq {
        debug_assert_eq!(self.q, o.q);
        let q = self.q as usize;
        Fq::new(self.q, tables(self.q).add[self.v as usize * q + o.v as usize])
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq::new(self.q, tables(self.q).neg[self.v as usize])
    }
}

impl Sub for Fq {
    type Output = Fq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: Fq) -> Fq {
        self + (-o)
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, o: Fq) -> Fq {
        debug_assert_eq!(self.q, o.q);
        let q = self.q as usize;
        Fq::new(self.q, tables(self.q).mul[self.v as usize * q + o.v as usize])
    }
}

impl Div for Fq {
    type Output = Fq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fq) -> Fq {
        self * o.inv().expect("division by zero in F_q")
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fq {
    /// Prime-field elements print as integers; extension elements as a
    /// parenthesised polynomial in `g`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = tables(self.q);
        if t.k == 1 {
            return write!(f, "{}", self.v);
        }
        let d = self.digits();
        let terms: Vec<String> = d
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                };
                match (i, *c) {
                    (0, c) => c.to_string(),
                    (_, 1) => mono,
                    (_, c) => format!("{c}*{mono}"),
                }
            })
            .collect();
        match terms.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", terms[0]),
            _ => write!(f, "({})", terms.join("+")),
        }
    }
}
