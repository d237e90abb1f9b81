//! Class invariants and the conjugacy decision for Eichler orders.
//!
//! For E1 = D_Λ1 ∩ D_Λ2 we replace Λ2 by the far grid corner Λ2' ⊆ Λ1. A
//! conjugator g onto E2 sends (Λ1, Λ2') to (L c, L c') for a corner c of
//! E2's grid, its far corner c' ⊆ c, and one line bundle L (the inclusion
//! and the local indices force the same L on both). Rescaling g by a
//! function makes L = L^{n inf}, and n is pinned by deg det. Then g lies in
//! Hom(Λ1, L c) ∩ Hom(Λ2', L c') and any element there with det g != 0 is
//! a conjugator, since an inclusion of bundles of equal degree is onto.

use log::debug;

use crate::funcfield::{Divisor, Fq, Place, RatFn};
use crate::lattices::hom_space;
use crate::linalg::KMat;

use super::algebra::{intersect_spaces, section_algebra};
use super::grid::Grid;
use super::{EichlerOrder, MaximalOrder};

/// Cap on projective points tried when looking for an invertible element.
const SEARCH_LIMIT: u64 = 1 << 22;

/// Necessary conditions for conjugacy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassInvariant {
    pub level: Divisor,
    /// Grid side lengths α_P + 1, places in canonical order.
    pub shape: Vec<usize>,
    /// Splitting-type gaps over the grid (row-major), minimized over axis
    /// flips.
    pub gaps: Vec<i64>,
    pub section_dim: usize,
    pub semisimple_dim: usize,
    /// deg det of the canonical origin corner mod 2.
    pub parity: i64,
}

fn flipped(shape: &[usize], values: &[i64], flips: &[bool]) -> Vec<i64> {
    let k = shape.len();
    let mut out = vec![0; values.len()];
    for (pos, &v) in values.iter().enumerate() {
        let mut rem = pos;
        let mut idx = vec![0usize; k];
        for j in (0..k).rev() {
            idx[j] = rem % shape[j];
            rem /= shape[j];
        }
        let mut np = 0;
        for j in 0..k {
            let i = if flips[j] { shape[j] - 1 - idx[j] } else { idx[j] };
            np = np * shape[j] + i;
        }
        out[np] = v;
    }
    out
}

impl ClassInvariant {
    pub fn of(e: &EichlerOrder) -> ClassInvariant {
        let g = e.grid();
        let shape = g.dims();
        let gaps: Vec<i64> = g
            .vertices()
            .iter()
            .map(|l| MaximalOrder::new(l).splitting_type().gap())
            .collect();
        let gaps = g
            .sigmas()
            .iter()
            .map(|f| flipped(&shape, &gaps, f))
            .min()
            .unwrap();
        let alg = section_algebra(e);
        ClassInvariant {
            level: e.level().clone(),
            parity: gaps[0].rem_euclid(2),
            shape,
            gaps,
            section_dim: alg.dim(),
            semisimple_dim: alg.semisimple_dim(),
        }
    }

    /// Gap values at the 2^k grid corners, in corner counting order.
    pub fn corner_gaps(&self) -> Vec<i64> {
        let k = self.shape.len();
        (0..1usize << k)
            .map(|m| {
                let mut pos = 0;
                for j in 0..k {
                    let i = if m >> (k - 1 - j) & 1 == 1 { self.shape[j] - 1 } else { 0 };
                    pos = pos * self.shape[j] + i;
                }
                self.gaps[pos]
            })
            .collect()
    }
}

/// A certified conjugator g with g E1 g^-1 = E2, and the corner choice of
/// E2's grid that Λ1 was sent to.
#[derive(Clone, Debug)]
pub struct Conjugator {
    pub g: KMat,
    pub sigma: Vec<bool>,
}

/// Conjugacy test with invariant-based rejection first.
pub fn are_conjugate(e1: &EichlerOrder, e2: &EichlerOrder) -> Option<Conjugator> {
    if ClassInvariant::of(e1) != ClassInvariant::of(e2) {
        debug!("rejected by class invariant");
        return None;
    }
    are_conjugate_with(e1, e2, None)
}

/// Conjugacy test, optionally requiring that Λ1 goes to E2's side
/// (`false`) or the opposite side (`true`) at the given place.
pub fn are_conjugate_with(
    e1: &EichlerOrder,
    e2: &EichlerOrder,
    constraint: Option<(&Place, bool)>,
) -> Option<Conjugator> {
    if e1.level() != e2.level() {
        return None;
    }
    let q = e1.q();
    let l1 = e1.corner_a().lattice();
    let g1 = e1.grid();
    let all: Vec<bool> = vec![true; g1.places.len()];
    let l2 = g1.corner(&all);
    let l2_orig = e1.corner_b().lattice();
    let grid2 = e2.grid();
    let qi = constraint.map(|(p, s)| (grid2.places.iter().position(|x| x == p), s));
    for sigma in grid2.sigmas() {
        if let Some((Some(i), s)) = qi {
            if sigma[i] != s {
                continue;
            }
        }
        let opp: Vec<bool> = sigma.iter().map(|x| !x).collect();
        let c = grid2.corner(&sigma);
        let c_opp = grid2.corner(&opp);
        let cg = Grid::new(&c, &c_opp);
        let c_far = cg.corner(&all);
        let diff = l1.det_degree() - c.det_degree();
        if diff % 2 != 0 {
            continue;
        }
        let tw = Divisor::infinity(q, diff / 2);
        let v = intersect_spaces(
            q,
            &hom_space(l1, &c, &tw).basis,
            &hom_space(&l2, &c_far, &tw).basis,
        );
        let Some(g) = invertible_element(q, &v) else {
            continue;
        };
        // transport check
        let a_ok = MaximalOrder::new(&l1.transform(&g)) == MaximalOrder::new(&c);
        let b_ok = MaximalOrder::new(&l2_orig.transform(&g)) == MaximalOrder::new(&c_opp);
        if a_ok && b_ok {
            return Some(Conjugator { g, sigma });
        }
        debug!("candidate failed transport check");
    }
    debug!("conjugator search exhausted");
    None
}

/// Some element of the span of `v` with nonzero determinant. On these
/// spaces det takes values in F_q * h for a single function h, so the
/// search runs over a quadratic form with constant coefficients.
fn invertible_element(q: u8, v: &[KMat]) -> Option<KMat> {
    let m = v.len();
    if m == 0 {
        return None;
    }
    let dets: Vec<RatFn> = v.iter().map(|x| x.det()).collect();
    let mut pair = vec![vec![RatFn::zero(q); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            pair[i][j] = &(&v[i].add(&v[j]).det() - &dets[i]) - &dets[j];
        }
    }
    let h = dets
        .iter()
        .chain(pair.iter().flatten())
        .find(|x| !x.is_zero())?
        .clone();
    let hinv = h.inv().unwrap();
    let norm = |x: &RatFn| {
        (x * &hinv)
            .as_constant()
            .expect("determinants on a hom space are proportional")
    };
    let d: Vec<Fq> = dets.iter().map(norm).collect();
    let b: Vec<Vec<Fq>> = pair.iter().map(|r| r.iter().map(norm).collect()).collect();
    let form = |c: &[Fq]| {
        let mut acc = Fq::zero(q);
        for i in 0..m {
            if c[i].is_zero() {
                continue;
            }
            acc = acc + c[i] * c[i] * d[i];
            for j in i + 1..m {
                acc = acc + c[i] * c[j] * b[i][j];
            }
        }
        acc
    };
    let build = |c: &[Fq]| {
        let mut g = KMat::zeros(q, 2, 2);
        for (x, &ci) in v.iter().zip(c) {
            if !ci.is_zero() {
                g = g.add(&x.scale(&RatFn::constant(ci)));
            }
        }
        g
    };
    let elems: Vec<Fq> = Fq::elements(q).collect();
    let qq = q as u64;
    let mut tried = 0u64;
    // projective points: first nonzero coordinate equal to 1
    for lead in 0..m {
        let rest = m - lead - 1;
        for code in 0..qq.saturating_pow(rest as u32) {
            let mut c = vec![Fq::zero(q); m];
            c[lead] = Fq::one(q);
            let mut x = code;
            for k in (0..rest).rev() {
                c[lead + 1 + k] = elems[(x % qq) as usize];
                x /= qq;
            }
            if !form(&c).is_zero() {
                return Some(build(&c));
            }
            tried += 1;
            if tried >= SEARCH_LIMIT {
                log::warn!("invertible-element search stopped after {tried} points");
                return None;
            }
        }
    }
    None
}

/// Transport check used by callers holding a conjugator.
pub fn conjugates_to(e1: &EichlerOrder, e2: &EichlerOrder, g: &KMat) -> bool {
    &e1.conjugate_by(g) == e2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::parse_divisor;
    use crate::orders::split_order;

    fn d(s: &str, q: u8) -> Divisor {
        parse_divisor(s, q).unwrap()
    }

    #[test]
    fn order_is_conjugate_to_itself() {
        let q = 2;
        let e = split_order(&d("inf", q), &d("t", q)).unwrap();
        let c = are_conjugate(&e, &e).expect("self conjugate");
        assert!(conjugates_to(&e, &e, &c.g));
    }

    #[test]
    fn shifted_split_orders_are_conjugate() {
        let q = 2;
        // E[2P1, -P1] and E[P2 + P1, -P2] with P1 = inf, P2 = (t)
        let e1 = split_order(&d("2*inf", q), &d("-inf", q)).unwrap();
        let e2 = split_order(&d("t + inf", q), &d("-t", q)).unwrap();
        assert_eq!(e1.level(), e2.level());
        let c = are_conjugate(&e1, &e2).expect("conjugate");
        assert!(conjugates_to(&e1, &e2, &c.g));
    }

    #[test]
    fn different_corner_patterns_are_not_conjugate() {
        let q = 2;
        let e1 = split_order(&d("inf", q), &d("t", q)).unwrap();
        let e2 = split_order(&d("inf + t", q), &d("0", q)).unwrap();
        let i1 = ClassInvariant::of(&e1);
        let i2 = ClassInvariant::of(&e2);
        let mut c1 = i1.corner_gaps();
        let mut c2 = i2.corner_gaps();
        c1.sort();
        c2.sort();
        assert_eq!(c1, vec![0, 0, 1, 1]);
        assert_eq!(c2, vec![0, 1, 1, 2]);
        assert!(are_conjugate(&e1, &e2).is_none());
    }

    #[test]
    fn random_conjugates_are_found() {
        let q = 3;
        let e = split_order(&d("inf + t", q), &d("-t", q)).unwrap();
        let g = KMat::from_rows(vec![
            vec![RatFn::t(q), RatFn::one(q)],
            vec![RatFn::one(q), RatFn::zero(q)],
        ]);
        let f = e.conjugate_by(&g);
        assert_eq!(f.level(), e.level());
        let c = are_conjugate(&e, &f).expect("conjugate");
        assert!(conjugates_to(&e, &f, &c.g));
    }
}
