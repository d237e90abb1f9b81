#![allow(dead_code)]

use eichler_core::funcfield::{Divisor, Fq, Place, Poly, RatFn};
use eichler_core::lattices::{tree_neighbors, Lattice2};
use eichler_core::orders::{split_order, EichlerOrder};
use eichler_core::linalg::KMat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(r: &mut ChaCha8Rng, q: u8, max_deg: usize) -> Poly {
    let d = r.gen_range(0..=max_deg);
    Poly::new(q, (0..=d).map(|_| Fq::new(q, r.gen_range(0..q))).collect())
}

pub fn random_nonzero_poly(r: &mut ChaCha8Rng, q: u8, max_deg: usize) -> Poly {
    loop {
        let p = random_poly(r, q, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ratfn(r: &mut ChaCha8Rng, q: u8, max_deg: usize) -> RatFn {
    let n = random_poly(r, q, max_deg);
    let d = random_nonzero_poly(r, q, max_deg);
    RatFn::new(n, d)
}

pub fn random_invertible(
    r: &mut ChaCha8Rng,
    q: u8,
    max_deg: usize,
    gen: fn(&mut ChaCha8Rng, u8, usize) -> RatFn,
) -> KMat {
    loop {
        let m = KMat::from_rows(
            (0..2)
                .map(|_| (0..2).map(|_| gen(r, q, max_deg)).collect())
                .collect(),
        );
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn poly_entry(r: &mut ChaCha8Rng, q: u8, max_deg: usize) -> RatFn {
    RatFn::from_poly(random_poly(r, q, max_deg))
}

/// Random lattice with polynomial affine basis and rational infinity basis.
pub fn random_lattice(r: &mut ChaCha8Rng, q: u8, max_deg: usize) -> Lattice2 {
    let fin = random_invertible(r, q, max_deg, poly_entry);
    let inf = random_invertible(r, q, max_deg, random_ratfn);
    Lattice2::new(fin, inf).unwrap()
}

/// A small pool of places over F_q: infinity and a few finite places of
/// degree 1 and 2.
pub fn place_pool(q: u8) -> Vec<Place> {
    let mut v = Place::of_degree(q, 1);
    v.truncate(3);
    v.extend(Place::of_degree(q, 2).into_iter().take(1));
    v
}

pub fn random_divisor(r: &mut ChaCha8Rng, q: u8, range: i64) -> Divisor {
    let mut d = Divisor::zero(q);
    for p in place_pool(q) {
        let n = r.gen_range(-range..=range);
        d.add_term(p, n);
    }
    d
}

/// Divisor supported on the place pool with coefficients in [0, range].
pub fn random_effective(r: &mut ChaCha8Rng, q: u8, range: i64) -> Divisor {
    let mut d = Divisor::zero(q);
    for p in place_pool(q) {
        d.add_term(p, r.gen_range(0..=range));
    }
    d
}

/// Brute-force idempotent search: every F_q-combination of the basis,
/// squared with matrix arithmetic.
pub fn has_idempotent_by_enumeration(q: u8, basis: &[KMat]) -> bool {
    let elems: Vec<Fq> = Fq::elements(q).collect();
    let n = basis.len();
    let total = (q as u64).pow(n as u32);
    let id = KMat::identity(q, 2);
    for code in 1..total {
        let mut x = KMat::zeros(q, 2, 2);
        let mut c = code;
        for b in basis {
            let a = elems[(c % q as u64) as usize];
            c /= q as u64;
            if !a.is_zero() {
                x = x.add(&b.scale(&RatFn::constant(a)));
            }
        }
        if x != id && x.mul(&x) == x {
            return true;
        }
    }
    false
}

/// A random Eichler order: a random lattice and a lattice reached from it
/// by a short walk at one or two places.
pub fn random_order(r: &mut ChaCha8Rng, q: u8) -> EichlerOrder {
    let l1 = random_lattice(r, q, 1);
    let pool = place_pool(q);
    let mut l2 = l1.clone();
    for _ in 0..r.gen_range(0..=3) {
        let p = &pool[r.gen_range(0..pool.len())];
        let ns = tree_neighbors(&l2, p);
        l2 = ns[r.gen_range(0..ns.len())].clone();
    }
    EichlerOrder::new(&l1, &l2)
}

/// A split order E[B, B2], conjugated by a random matrix.
pub fn random_split_order(r: &mut ChaCha8Rng, q: u8) -> EichlerOrder {
    loop {
        let b = random_divisor(r, q, 1);
        let b2 = random_divisor(r, q, 1);
        if let Ok(e) = split_order(&b, &b2) {
            let g = random_invertible(r, q, 1, poly_entry);
            return e.conjugate_by(&g);
        }
    }
}
