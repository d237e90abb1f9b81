//! Local invariant factors, distance divisors and Bruhat–Tits neighbors.

use crate::funcfield::factor::factor;
use crate::funcfield::{Divisor, Fq, Place, Poly, RatFn};
use crate::linalg::KMat;

use super::echelon::Ring;
use super::Lattice2;

fn change_of_basis(l: &Lattice2, m: &Lattice2, p: &Place) -> KMat {
    l.basis_at(p).inverse().expect("invertible basis").mul(m.basis_at(p))
}

/// Elementary-divisor exponents (a, b), a <= b, of M relative to Λ at P.
pub fn local_invariant_factors(l: &Lattice2, m: &Lattice2, p: &Place) -> (i64, i64) {
    let c = change_of_basis(l, m, p);
    let a = c
        .data
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| p.valuation(x).unwrap())
        .min()
        .expect("invertible basis");
    let det = p.valuation(&c.det()).unwrap();
    (a, det - a)
}

/// Sum of the local tree distances d_P = b - a over all places.
pub fn distance_divisor(l: &Lattice2, m: &Lattice2) -> Divisor {
    let q = l.q();
    let c = change_of_basis(l, m, &Place::Finite(Poly::t(q)));
    let mut polys: Vec<Poly> = c.data.iter().map(|x| x.den().clone()).collect();
    let det = c.det();
    polys.push(det.num().clone());
    polys.push(det.den().clone());
    let mut places: Vec<Place> = Vec::new();
    for f in polys {
        if f.is_constant() {
            continue;
        }
        for (p, _) in factor(&f) {
            let pl = Place::Finite(p);
            if !places.contains(&pl) {
                places.push(pl);
            }
        }
    }
    places.push(Place::Infinity);
    let mut d = Divisor::zero(q);
    for p in places {
        let (a, b) = local_invariant_factors(l, m, &p);
        if b > a {
            d.add_term(p, b - a);
        }
    }
    d
}

/// Smallest multiplicative order test: `x` generates (F_q[t]/f)^*.
fn is_primitive_mod(x: &Poly, f: &Poly, order: u64) -> bool {
    let mut n = order;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
        .iter()
        .all(|&p| !x.pow_mod(order / p, f).is_one())
}

/// Residue-field representatives at Q in the fixed order 0, 1, w, w^2, ...
/// for a primitive element w. Finite places use polynomials of degree
/// below deg Q; infinity uses constants.
pub fn residue_representatives(q: u8, place: &Place) -> Vec<Poly> {
    let modulus = match place {
        Place::Infinity => Poly::t(q),
        Place::Finite(f) => f.clone(),
    };
    let d = modulus.degree().unwrap() as u32;
    let order = (q as u64).pow(d) - 1;
    let w = if d == 1 {
        Poly::constant(Fq::generator(q))
    } else {
        (q as u64..)
            .map(|i| Poly::from_index(q, i))
            .find(|x| x.degree().unwrap_or(0) < d as usize && is_primitive_mod(x, &modulus, order))
            .expect("primitive element exists")
    };
    let mut out = vec![Poly::zero(q), Poly::one(q)];
    let mut x = w.clone();
    for _ in 1..order {
        out.push(x.clone());
        x = (&x * &w).rem(&modulus);
    }
    out
}

/// The q^deg Q + 1 lattices M with π Λ ⊂ M ⊂ Λ at Q and M = Λ elsewhere.
/// The first q^deg Q contain the lines spanned by e1 + c e2, the last one
/// contains e2.
pub fn tree_neighbors(l: &Lattice2, place: &Place) -> Vec<Lattice2> {
    let q = l.q();
    let (ring, pi, base) = match place {
        Place::Infinity => (Ring::Infinity, RatFn::t_pow(q, -1), l.inf()),
        Place::Finite(f) => (Ring::Poly, RatFn::from_poly(f.clone()), l.fin()),
    };
    let reps = residue_representatives(q, place);
    let zero = RatFn::zero(q);
    let one = RatFn::one(q);
    let mut out = Vec::with_capacity(reps.len() + 1);
    for c in reps {
        let c = RatFn::from_poly(c);
        let step = KMat::from_rows(vec![vec![one.clone(), zero.clone()], vec![c, pi.clone()]]);
        out.push(l.with_basis(ring, base.mul(&step)));
    }
    let step = KMat::from_rows(vec![vec![pi.clone(), zero.clone()], vec![zero, one]]);
    out.push(l.with_basis(ring, base.mul(&step)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::{parse_divisor, parse_place};

    #[test]
    fn invariant_factors_of_diagonal_change() {
        let q = 2;
        let std = Lattice2::standard(q);
        let p = parse_place("t", q).unwrap();
        let d = |s| parse_divisor(s, q).unwrap();
        let m = Lattice2::from_divisor_pair(&d("t"), &d("-(t)"));
        assert_eq!(local_invariant_factors(&std, &m, &p), (-1, 1));
        assert_eq!(local_invariant_factors(&std, &std, &p), (0, 0));
        let m3 = Lattice2::from_divisor_pair(&d("3*t"), &Divisor::zero(q));
        let (a, b) = local_invariant_factors(&std, &m3, &p);
        assert_eq!(b - a, 3);
    }

    #[test]
    fn distance_examples() {
        let q = 2;
        let std = Lattice2::standard(q);
        let d = |s| parse_divisor(s, q).unwrap();
        let z = Divisor::zero(q);
        assert!(distance_divisor(&std, &std).is_zero());
        let m = Lattice2::from_divisor_pair(&d("2*inf"), &z);
        assert_eq!(distance_divisor(&std, &m), d("2*inf"));
        let m = Lattice2::from_divisor_pair(&d("t + inf"), &z);
        assert_eq!(distance_divisor(&std, &m), d("t + inf"));
    }

    #[test]
    fn neighbor_counts_and_distances() {
        let q = 2;
        let std = Lattice2::standard(q);
        for (s, n) in [("t", 3), ("(t^2+t+1)", 5), ("inf", 3)] {
            let p = parse_place(s, q).unwrap();
            let nb = tree_neighbors(&std, &p);
            assert_eq!(nb.len(), n);
            for (i, m) in nb.iter().enumerate() {
                assert_eq!(distance_divisor(&std, m), Divisor::place(q, p.clone()));
                for o in &nb[..i] {
                    assert_ne!(o.class_normalized(), m.class_normalized());
                }
            }
        }
    }

    #[test]
    fn representatives_cover_residue_field() {
        for q in [2u8, 3, 4] {
            let p = parse_place("(t^2+t+1)", q);
            let Ok(p) = p else { continue };
            let reps = residue_representatives(q, &p);
            let n = (q as usize).pow(2);
            assert_eq!(reps.len(), n);
            let mut sorted = reps.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), n);
        }
    }
}
