//! Grothendieck–Birkhoff splitting type.

use serde::{Deserialize, Serialize};

use crate::funcfield::{Poly, RatFn};
use crate::linalg::common_denominator;

use super::sections::h0_vectors;
use super::Lattice2;

/// Λ ≅ O(a) + O(b) with a >= b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitType {
    pub a: i64,
    pub b: i64,
}

impl SplitType {
    pub fn new(x: i64, y: i64) -> SplitType {
        SplitType {
            a: x.max(y),
            b: x.min(y),
        }
    }

    pub fn gap(&self) -> i64 {
        self.a - self.b
    }
}

fn h0_dim_shifted(l: &Lattice2, n: i64) -> usize {
    let q = l.q();
    let inf = l.inf().scale(&RatFn::t_pow(q, -n));
    h0_vectors(l.fin(), &inf).len()
}

/// a = max{n : h0(Λ(-n inf)) != 0}, b = deg det - a.
pub fn splitting_type(l: &Lattice2) -> SplitType {
    let deg = l.det_degree();
    // a >= deg/2 always, so the search starts below a
    let mut n = deg.div_euclid(2);
    debug_assert!(h0_dim_shifted(l, n) > 0);
    while h0_dim_shifted(l, n + 1) > 0 {
        n += 1;
    }
    SplitType::new(n, deg - n)
}

/// Independent route: column-reduce the polynomial part of the transition
/// matrix. If `inf^-1 fin = P/d` with P column reduced of column degrees
/// (c0, c1), the bundle is O(deg d - c0) + O(deg d - c1).
pub fn splitting_type_birkhoff(l: &Lattice2) -> SplitType {
    let t = l.transition();
    let d = common_denominator(t.data.iter());
    let mut p: Vec<[Poly; 2]> = (0..2)
        .map(|j| {
            let e = |i: usize| {
                let x = t.get(i, j);
                x.num() * &d.div_exact(x.den())
            };
            [e(0), e(1)]
        })
        .collect();
    let cdeg = |c: &[Poly; 2]| c[0].deg_i64().max(c[1].deg_i64());
    loop {
        let (d0, d1) = (cdeg(&p[0]), cdeg(&p[1]));
        let lc = |c: &[Poly; 2], k: i64| [c[0].coeff(k as usize), c[1].coeff(k as usize)];
        let l0 = lc(&p[0], d0);
        let l1 = lc(&p[1], d1);
        let det = l0[0] * l1[1] - l0[1] * l1[0];
        if !det.is_zero() {
            let dd = d.deg_i64();
            return SplitType::new(dd - d0, dd - d1);
        }
        // leading columns are proportional: cancel the top of the higher one
        let (hi, lo, dh, dl, lh, ll) = if d0 >= d1 {
            (0, 1, d0, d1, l0, l1)
        } else {
            (1, 0, d1, d0, l1, l0)
        };
        let r = if !ll[0].is_zero() { 0 } else { 1 };
        let c = lh[r] / ll[r];
        let shift = (dh - dl) as usize;
        let lo_col = p[lo].clone();
        for i in 0..2 {
            let sub = lo_col[i].shift(shift).scale(c);
            p[hi][i] = &p[hi][i] - &sub;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::{parse_divisor, parse_ratfn};
    use crate::funcfield::Divisor;
    use crate::linalg::KMat;

    fn mat(q: u8, rows: [[&str; 2]; 2]) -> KMat {
        KMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_ratfn(s, q).unwrap()).collect())
                .collect(),
        )
    }

    #[test]
    fn divisor_pairs() {
        let q = 2;
        let d = |s| parse_divisor(s, q).unwrap();
        let cases = [
            (Lattice2::standard(q), (0, 0)),
            (Lattice2::from_divisor_pair(&d("3*inf"), &Divisor::zero(q)), (3, 0)),
            (Lattice2::from_divisor_pair(&d("t"), &d("-inf")), (1, -1)),
        ];
        for (l, (a, b)) in cases {
            assert_eq!(splitting_type(&l), SplitType { a, b });
            assert_eq!(splitting_type_birkhoff(&l), SplitType { a, b });
        }
    }

    #[test]
    fn transition_matrix_reading() {
        let q = 2;
        // transition [[t,1],[0,1/t]] reduces to the identity
        let l = Lattice2::new(KMat::identity(q, 2), mat(q, [["1/t", "1"], ["0", "t"]])).unwrap();
        assert_eq!(splitting_type(&l), SplitType { a: 0, b: 0 });
        assert_eq!(splitting_type_birkhoff(&l), SplitType { a: 0, b: 0 });
        // the same matrix used as the infinity basis gives O(1) + O(-1)
        let l = Lattice2::new(KMat::identity(q, 2), mat(q, [["t", "1"], ["0", "1/t"]])).unwrap();
        assert_eq!(splitting_type(&l), SplitType { a: 1, b: -1 });
        assert_eq!(splitting_type_birkhoff(&l), SplitType { a: 1, b: -1 });
    }
}
