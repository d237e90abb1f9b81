//! Factorisation of polynomials over F_q: square-free decomposition,
//! distinct-degree splitting, then equal-degree splitting with a
//! deterministic sequence of trial polynomials.

use super::fq::{tables, Fq};
use super::poly::Poly;

/// Factors `f` into monic irreducibles with multiplicities, sorted by the
/// polynomial ordering. The unit part is dropped; `f` must be nonzero.
pub fn factor(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sqf, mult) in square_free(&f.monic()) {
        for (block, d) in distinct_degree(&sqf) {
            for irr in equal_degree(&block, d) {
                out.push((irr, mult));
            }
        }
    }
    out.sort();
    // merge repeated irreducibles (cannot happen after a correct square-free
    // step, but keep the output canonical)
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (p, m) in out {
        match merged.last_mut() {
            Some((last, lm)) if *last == p => *lm += m,
            _ => merged.push((p, m)),
        }
    }
    merged
}

pub fn is_irreducible(f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let fac = factor(f);
            fac.len() == 1 && fac[0].1 == 1
        }
    }
}

fn pth_root(f: &Poly) -> Poly {
    let t = tables(f.q());
    let p = t.p as usize;
    let root_exp = f.q() as u64 / t.p as u64;
    let c: Vec<Fq> = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| a.pow(root_exp))
        .collect();
    Poly::new(f.q(), c)
}

fn square_free(f: &Poly) -> Vec<(Poly, u32)> {
    let p = tables(f.q()).p as u32;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in square_free(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in square_free(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let q = f.q();
    let x = Poly::t(q);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.deg_i64() >= 2 * i as i64 {
        h = h.pow_mod(q as u64, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &Poly, d: usize) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let q = f.q();
    let t = tables(q);
    let mut idx = q as u64; // skip constants
    loop {
        let a = Poly::from_index(q, idx);
        idx += 1;
        if a.deg_i64() >= n as i64 {
            // exhausted trial polynomials without a split; cannot happen for
            // a product of >1 distinct degree-d irreducibles
            unreachable!("equal-degree splitting failed");
        }
        let b = if t.p == 2 {
            // absolute trace to F_2
            let steps = t.k as usize * d;
            let mut acc = Poly::zero(q);
            let mut cur = a.rem(f);
            for _ in 0..steps {
                acc = &acc + &cur;
                cur = (&cur * &cur).rem(f);
            }
            acc
        } else {
            // a^((q^d-1)/2) = (prod_j a^(q^j))^((q-1)/2)
            let mut norm = Poly::one(q);
            let mut cur = a.rem(f);
            for _ in 0..d {
                norm = (&norm * &cur).rem(f);
                cur = cur.pow_mod(q as u64, f);
            }
            &norm.pow_mod((q as u64 - 1) / 2, f) - &Poly::one(q)
        };
        let g = b.gcd(f);
        if !g.is_constant() && g.deg_i64() < n as i64 {
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&f.div_exact(&g), d));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::fq::SUPPORTED_Q;

    fn expand(fac: &[(Poly, u32)], q: u8) -> Poly {
        fac.iter()
            .fold(Poly::one(q), |acc, (p, m)| &acc * &p.pow(*m as u64))
    }

    #[test]
    fn factors_reexpand_to_input() {
        for &q in &SUPPORTED_Q {
            let f = &(&Poly::from_ints(q, &[1, 1, 0, 1]) * &Poly::from_ints(q, &[0, 1]).pow(3))
                * &Poly::from_ints(q, &[2, 0, 1, 1, 0, 1]).pow(2);
            let fac = factor(&f);
            assert_eq!(expand(&fac, q), f.monic(), "q = {q}");
            for (p, _) in &fac {
                assert!(p.is_monic());
                assert!(is_irreducible(p));
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree n over F_q
        let count = |q: u8, n: usize| {
            Poly::monics_of_degree(q, n)
                .filter(is_irreducible)
                .count()
        };
        assert_eq!(count(2, 2), 1);
        assert_eq!(count(2, 3), 2);
        assert_eq!(count(2, 4), 3);
        assert_eq!(count(3, 2), 3);
        assert_eq!(count(3, 3), 8);
        assert_eq!(count(4, 2), 6);
    }

    #[test]
    fn pth_power_inputs() {
        // (t^2+t+1)^4 over F_2 has zero derivative
        let f = Poly::from_ints(2, &[1, 1, 1]).pow(4);
        assert_eq!(factor(&f), vec![(Poly::from_ints(2, &[1, 1, 1]), 4)]);
        let g = &Poly::from_ints(3, &[1, 0, 1]).pow(3) * &Poly::from_ints(3, &[1, 1]);
        assert_eq!(expand(&factor(&g), 3), g);
    }
}
