//! Elements of K = F_q(t) in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::fq::Fq;
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Builds `num/den` and reduces it. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn::zero(num.q());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.lead().inv().unwrap();
        RatFn {
            num: num.scale(lc),
            den: den.scale(lc),
        }
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let q = p.q();
        RatFn {
            num: p,
            den: Poly::one(q),
        }
    }

    pub fn constant(a: Fq) -> RatFn {
        RatFn::from_poly(Poly::constant(a))
    }

    pub fn zero(q: u8) -> RatFn {
        RatFn::from_poly(Poly::zero(q))
    }

    pub fn one(q: u8) -> RatFn {
        RatFn::from_poly(Poly::one(q))
    }

    pub fn t(q: u8) -> RatFn {
        RatFn::from_poly(Poly::t(q))
    }

    /// `t^n` for any integer n.
    pub fn t_pow(q: u8, n: i64) -> RatFn {
        let m = Poly::monomial(Fq::one(q), n.unsigned_abs() as usize);
        if n >= 0 {
            RatFn::from_poly(m)
        } else {
            RatFn {
                num: Poly::one(q),
                den: m,
            }
        }
    }

    pub fn q(&self) -> u8 {
        self.num.q()
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
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a constant if this is an element of F_q.
    pub fn as_constant(&self) -> Option<Fq> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            None
        } else {
            Some(RatFn::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn scale(&self, a: Fq) -> RatFn {
        if a.is_zero() {
            return RatFn::zero(self.q());
        }
        RatFn {
            num: self.num.scale(a),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> RatFn {
        let base = if n < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        RatFn {
            num: base.num.pow(n.unsigned_abs()),
            den: base.den.pow(n.unsigned_abs()),
        }
    }

    /// Order of vanishing at infinity: deg(den) - deg(num). `None` for zero.
    pub fn val_inf(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.den.deg_i64() - self.num.deg_i64())
        }
    }

    /// Order of vanishing at the finite place given by the monic
    /// irreducible `p`. `None` for zero.
    pub fn val_poly(&self, p: &Poly) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(multiplicity(&self.num, p) as i64 - multiplicity(&self.den, p) as i64)
    }

    /// Laurent coefficients in u = 1/t: returns `(v, c)` with
    /// `self = sum_{i} c[i] u^(v+i)` truncated to exponents `< prec`.
    /// `v` is the valuation at infinity. Zero gives `(prec, [])`.
    pub fn laurent_inf(&self, prec: i64) -> (i64, Vec<Fq>) {
        let q = self.q();
        let Some(v) = self.val_inf() else {
            return (prec, Vec::new());
        };
        if prec <= v {
            return (v, Vec::new());
        }
        let n = (prec - v) as usize;
        // self = u^v * rev(num)(u) / rev(den)(u), rev(den)(0) = 1
        let a = self.num.reversed();
        let b = self.den.reversed();
        let b0inv = b.coeff(0).inv().unwrap();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = a.coeff(i);
            for j in 1..=i.min(b.deg_i64().max(0) as usize) {
                s = s - b.coeff(j) * out[i - j];
            }
            out.push(s * b0inv);
        }
        let _ = q;
        (v, out)
    }

    /// Keeps the Laurent terms u^i with i < prec, as a rational function.
    pub fn truncate_inf(&self, prec: i64) -> RatFn {
        let q = self.q();
        let (v, c) = self.laurent_inf(prec);
        let mut acc = RatFn::zero(q);
        for (i, a) in c.into_iter().enumerate() {
            if !a.is_zero() {
                acc = &acc + &RatFn::t_pow(q, -(v + i as i64)).scale(a);
            }
        }
        acc
    }
}

pub(crate) fn multiplicity(f: &Poly, p: &Poly) -> u32 {
    if f.is_zero() {
        return 0;
    }
    let mut m = 0;
    let mut g = f.clone();
    loop {
        let (quo, r) = g.div_rem(p);
        if !r.is_zero() {
            return m;
        }
        g = quo;
        m += 1;
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone());
        }
        RatFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(self.q());
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = o.den.div_exact(&g1);
        let n2 = o.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.lead().inv().unwrap();
        RatFn {
            num: num.scale(lc),
            den: den.scale(lc),
        }
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        self * &o.inv().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, o: RatFn) -> RatFn {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_monic_denominator() {
        let q = 3;
        let f = RatFn::new(Poly::from_ints(q, &[0, 2, 2]), Poly::from_ints(q, &[0, 2]));
        assert!(f.den().is_one());
        assert_eq!(f.num(), &Poly::from_ints(q, &[1, 1]));
    }

    #[test]
    fn valuation_at_infinity() {
        let q = 2;
        let f = RatFn::new(Poly::from_ints(q, &[1, 1, 1]), Poly::from_ints(q, &[0, 0, 0, 1]));
        assert_eq!(f.val_inf(), Some(1));
        assert_eq!(RatFn::t(q).val_inf(), Some(-1));
    }

    #[test]
    fn laurent_expansion_reconstructs_series() {
        // 1/(t-1) = u + u^2 + u^3 + ... over F_5
        let q = 5;
        let f = RatFn::new(Poly::one(q), Poly::from_ints(q, &[-1, 1]));
        let (v, c) = f.laurent_inf(5);
        assert_eq!(v, 1);
        assert!(c.iter().all(|x| x.is_one()));
        assert_eq!(c.len(), 4);
        // truncation differs from f by something of valuation >= prec
        let tr = f.truncate_inf(4);
        assert!((&f - &tr).val_inf().unwrap() >= 4);
    }

    #[test]
    fn field_operations() {
        let q = 7;
        let a = RatFn::new(Poly::from_ints(q, &[1, 2, 3]), Poly::from_ints(q, &[4, 0, 1]));
        let b = RatFn::new(Poly::from_ints(q, &[6, 1]), Poly::from_ints(q, &[0, 1, 1]));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!((&a * &a.inv().unwrap()).is_one());
    }
}
