//! Places and divisors of the projective line.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::factor::{factor, is_irreducible};
use super::fq::Fq;
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};

/// A closed point of P^1 over F_q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// The finite place of a monic irreducible polynomial.
    pub fn finite(p: Poly) -> Result<Place> {
        if p.is_monic() && is_irreducible(&p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotAPlace(p.to_string()))
        }
    }

    /// The degree-one place `t - a`.
    pub fn rational(a: Fq) -> Place {
        Place::Finite(Poly::linear(-a))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.degree().unwrap(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// A uniformizing parameter: `p` at a finite place, `1/t` at infinity.
    pub fn uniformizer(&self, q: u8) -> RatFn {
        match self {
            Place::Infinity => RatFn::t_pow(q, -1),
            Place::Finite(p) => RatFn::from_poly(p.clone()),
        }
    }

    /// Valuation of a nonzero function at this place.
    pub fn valuation(&self, f: &RatFn) -> Result<i64> {
        match self {
            Place::Infinity => f.val_inf(),
            Place::Finite(p) => f.val_poly(p),
        }
        .ok_or(Error::ZeroFunction)
    }

    /// All places of the given degree, in canonical order.
    pub fn of_degree(q: u8, d: usize) -> Vec<Place> {
        let mut out = Vec::new();
        if d == 1 {
            out.push(Place::Infinity);
        }
        out.extend(
            Poly::monics_of_degree(q, d)
                .filter(is_irreducible)
                .map(Place::Finite),
        );
        out.sort();
        out
    }
}

impl Ord for Place {
    /// Infinity first, then finite places by degree and coefficients.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Less,
            (_, Place::Infinity) => Ordering::Greater,
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(p) => write!(f, "({p})"),
        }
    }
}

/// A finite formal sum of places with nonzero integer multiplicities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    q: u8,
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero(q: u8) -> Divisor {
        Divisor {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn place(q: u8, p: Place) -> Divisor {
        Divisor::from_terms(q, [(p, 1)])
    }

    pub fn infinity(q: u8, n: i64) -> Divisor {
        Divisor::from_terms(q, [(Place::Infinity, n)])
    }

    pub fn from_terms(q: u8, terms: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero(q);
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn add_term(&mut self, p: Place, n: i64) {
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, n)| (p, *n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(p, n)| n * p.degree() as i64)
            .sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n >= 0)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|&n| n == 1)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.q, self.terms.iter().map(|(p, n)| (p.clone(), n * k)))
    }

    pub fn abs(&self) -> Divisor {
        Divisor::from_terms(self.q, self.terms.iter().map(|(p, n)| (p.clone(), n.abs())))
    }

    fn pointwise(&self, other: &Divisor, f: impl Fn(i64, i64) -> i64) -> Divisor {
        let places: Vec<Place> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        let mut d = Divisor::zero(self.q);
        for p in places {
            if d.terms.contains_key(&p) {
                continue;
            }
            let n = f(self.coeff(&p), other.coeff(&p));
            if n != 0 {
                d.terms.insert(p, n);
            }
        }
        d
    }

    pub fn pointwise_min(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, i64::min)
    }

    pub fn pointwise_max(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, i64::max)
    }

    /// `self <= other` pointwise.
    pub fn pointwise_le(&self, other: &Divisor) -> bool {
        (other - self).is_effective()
    }

    /// The finite part `prod p^(-n_p)`: a generator of L^B over F_q[t].
    pub fn finite_generator(&self) -> RatFn {
        let q = self.q;
        let mut num = Poly::one(q);
        let mut den = Poly::one(q);
        for (p, &n) in &self.terms {
            if let Place::Finite(f) = p {
                if n > 0 {
                    den = &den * &f.pow(n as u64);
                } else {
                    num = &num * &f.pow((-n) as u64);
                }
            }
        }
        RatFn::new(num, den)
    }

    /// Divisor of a nonzero function, found by factoring numerator and
    /// denominator.
    pub fn principal(f: &RatFn) -> Result<Divisor> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let q = f.q();
        let mut d = Divisor::zero(q);
        if !f.num().is_constant() {
            for (p, m) in factor(f.num()) {
                d.add_term(Place::Finite(p), m as i64);
            }
        }
        if !f.den().is_constant() {
            for (p, m) in factor(f.den()) {
                d.add_term(Place::Finite(p), -(m as i64));
            }
        }
        d.add_term(Place::Infinity, f.val_inf().unwrap());
        Ok(d)
    }
}

impl std::ops::Add for &Divisor {
    type Output = Divisor;
    fn add(self, o: &Divisor) -> Divisor {
        self.pointwise(o, |a, b| a + b)
    }
}

impl std::ops::Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, o: &Divisor) -> Divisor {
        self.pointwise(o, |a, b| a - b)
    }
}

impl std::ops::Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        self.scale(-1)
    }
}

impl Ord for Divisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl PartialOrd for Divisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Divisor {
    /// `3*(t^2+t+1) - 2*inf`; the zero divisor prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, &n)) in self.terms.iter().enumerate() {
            let sign = if n < 0 { "-" } else { "+" };
            if i == 0 {
                if n < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if n.abs() == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{}*{p}", n.abs())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_place(q: u8) -> Place {
        Place::finite(Poly::t(q)).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let q = 2;
        let t = RatFn::t(q);
        assert_eq!(t_place(q).valuation(&t).unwrap(), 1);
        assert_eq!(Place::Infinity.valuation(&t).unwrap(), -1);
        let f = RatFn::new(Poly::from_ints(q, &[1, 1, 1]), Poly::from_ints(q, &[0, 0, 0, 1]));
        assert_eq!(Place::Infinity.valuation(&f).unwrap(), 1);
        assert!(Place::Infinity.valuation(&RatFn::zero(q)).is_err());
    }

    #[test]
    fn principal_divisor_examples() {
        let q = 2;
        let t = RatFn::t(q);
        let d = Divisor::principal(&t).unwrap();
        assert_eq!(
            d,
            Divisor::from_terms(q, [(t_place(q), 1), (Place::Infinity, -1)])
        );
        let irr = Place::finite(Poly::from_ints(q, &[1, 1, 1])).unwrap();
        let d = Divisor::principal(&RatFn::from_poly(Poly::from_ints(q, &[1, 1, 1]))).unwrap();
        assert_eq!(d, Divisor::from_terms(q, [(irr, 1), (Place::Infinity, -2)]));
        let f = RatFn::new(Poly::from_ints(q, &[1, 1]), Poly::t(q));
        let d = Divisor::principal(&f).unwrap();
        let tp1 = Place::finite(Poly::from_ints(q, &[1, 1])).unwrap();
        assert_eq!(d, Divisor::from_terms(q, [(tp1, 1), (t_place(q), -1)]));
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn pointwise_operations() {
        let q = 3;
        let p1 = Place::Infinity;
        let p2 = t_place(q);
        let a = Divisor::from_terms(q, [(p1.clone(), 2), (p2.clone(), -1)]);
        assert_eq!(
            a.abs(),
            Divisor::from_terms(q, [(p1.clone(), 2), (p2.clone(), 1)])
        );
        let b = Divisor::from_terms(q, [(p1.clone(), 1), (p2.clone(), 2)]);
        let c = Divisor::from_terms(q, [(p1.clone(), 2)]);
        assert_eq!(b.pointwise_min(&c), Divisor::from_terms(q, [(p1.clone(), 1)]));
        let p3 = Place::rational(Fq::one(q));
        let free = Divisor::from_terms(q, [(p1.clone(), 1), (p2, 1), (p3, 1)]);
        assert!(free.is_multiplicity_free());
        assert!(!Divisor::from_terms(q, [(p1, 2)]).is_multiplicity_free());
    }

    #[test]
    fn place_ordering() {
        let q = 2;
        let places = Place::of_degree(q, 1);
        assert_eq!(places.len(), 3);
        assert!(places[0].is_infinity());
        assert_eq!(Place::of_degree(q, 2).len(), 1);
        assert_eq!(Place::of_degree(3, 2).len(), 3);
    }

    #[test]
    fn display_format() {
        let q = 2;
        let irr = Place::finite(Poly::from_ints(q, &[1, 1, 1])).unwrap();
        let d = Divisor::from_terms(q, [(irr, 3), (Place::Infinity, -2)]);
        assert_eq!(d.to_string(), "-2*inf + 3*(t^2+t+1)");
    }
}
