//! Global sections of bundles given by a pair of basis matrices.

use crate::funcfield::{Divisor, Fq, Place, Poly, RatFn};
use crate::linalg::{nullspace, KMat};

use super::Lattice2;

/// An F_q-linearly independent family of matrices over K (vectors are
/// stored as single columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    pub basis: Vec<KMat>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// F_q-basis of the global sections of the rank-n bundle whose affine
/// module is spanned by the columns of `fin` and whose completion at
/// infinity is spanned by the columns of `inf`.
///
/// A section is `fin * a` with `a` polynomial and `inf^-1 fin a` integral
/// at infinity. Since `a = (fin^-1 inf) w` with `w` integral, the degree of
/// `a_j` is bounded by the pole orders in row j of `fin^-1 inf`.
pub fn h0_vectors(fin: &KMat, inf: &KMat) -> Vec<Vec<RatFn>> {
    let n = fin.rows;
    let q = fin.q();
    let t = inf.inverse().expect("invertible basis").mul(fin);
    let tinv = fin.inverse().expect("invertible basis").mul(inf);
    let bounds: Vec<i64> = (0..n)
        .map(|j| {
            let m = (0..n)
                .filter_map(|i| tinv.get(j, i).val_inf())
                .min()
                .expect("invertible basis");
            -m
        })
        .collect();
    let mut unknowns = Vec::new();
    for (j, &bd) in bounds.iter().enumerate() {
        for k in 0..=bd.max(-1) {
            if k >= 0 {
                unknowns.push((j, k as usize));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    for i in 0..n {
        let d = crate::linalg::common_denominator((0..n).map(|j| t.get(i, j)));
        let nums: Vec<Poly> = (0..n)
            .map(|j| {
                let x = t.get(i, j);
                x.num() * &d.div_exact(x.den())
            })
            .collect();
        let dd = d.deg_i64();
        let top = (0..n)
            .filter(|&j| bounds[j] >= 0 && !nums[j].is_zero())
            .map(|j| nums[j].deg_i64() + bounds[j])
            .max()
            .unwrap_or(-1);
        for e in (dd + 1)..=top {
            let row: Vec<Fq> = unknowns
                .iter()
                .map(|&(j, k)| {
                    let idx = e - k as i64;
                    if idx < 0 {
                        Fq::zero(q)
                    } else {
                        nums[j].coeff(idx as usize)
                    }
                })
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let sols = nullspace(q, &rows, unknowns.len());
    sols.into_iter()
        .map(|c| {
            let mut a = vec![Poly::zero(q); n];
            for (&(j, k), &v) in unknowns.iter().zip(&c) {
                if !v.is_zero() {
                    a[j] = &a[j] + &Poly::monomial(v, k);
                }
            }
            (0..n)
                .map(|i| {
                    (0..n).fold(RatFn::zero(q), |acc, j| {
                        if a[j].is_zero() {
                            acc
                        } else {
                            &acc + &(fin.get(i, j) * &RatFn::from_poly(a[j].clone()))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Sections of L^twist * Λ.
pub fn global_sections(l: &Lattice2, twist: &Divisor) -> SectionSpace {
    let lt = l.twist(twist);
    SectionSpace {
        basis: h0_vectors(lt.fin(), lt.inf())
            .into_iter()
            .map(|v| KMat::from_cols(&[v]))
            .collect(),
    }
}

/// The rank-4 bundle Hom(Λ, L^twist M) as (fin, inf) bases of K^4, with a
/// 2x2 matrix g flattened row-major.
fn hom_bundle(l: &Lattice2, m: &Lattice2, twist: &Divisor) -> (KMat, KMat) {
    let q = l.q();
    let build = |src: &KMat, dst: &KMat, scale: &RatFn| {
        let sinv = src.inverse().expect("invertible basis");
        let mut cols = Vec::new();
        for j in 0..2 {
            for k in 0..2 {
                let mut v = Vec::with_capacity(4);
                for r in 0..2 {
                    for c in 0..2 {
                        v.push(&(dst.get(r, j) * sinv.get(k, c)) * scale);
                    }
                }
                cols.push(v);
            }
        }
        KMat::from_cols(&cols)
    };
    let fin = build(l.fin(), m.fin(), &twist.finite_generator());
    let inf = build(
        l.inf(),
        m.inf(),
        &RatFn::t_pow(q, twist.coeff(&Place::Infinity)),
    );
    (fin, inf)
}

/// F_q-basis of {g in M_2(K) : g Λ ⊆ L^twist M}.
pub fn hom_space(l: &Lattice2, m: &Lattice2, twist: &Divisor) -> SectionSpace {
    let (fin, inf) = hom_bundle(l, m, twist);
    SectionSpace {
        basis: h0_vectors(&fin, &inf)
            .into_iter()
            .map(|v| KMat::from_rows(vec![v[0..2].to_vec(), v[2..4].to_vec()]))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::parse_divisor;

    fn div(s: &str, q: u8) -> Divisor {
        parse_divisor(s, q).unwrap()
    }

    #[test]
    fn sections_of_small_bundles() {
        let q = 2;
        let std = Lattice2::standard(q);
        assert_eq!(global_sections(&std, &Divisor::zero(q)).dim(), 2);
        assert_eq!(global_sections(&std, &div("-inf", q)).dim(), 0);
        let l = Lattice2::from_divisor_pair(&div("3*inf", q), &Divisor::zero(q));
        assert_eq!(global_sections(&l, &Divisor::zero(q)).dim(), 5);
    }

    #[test]
    fn sections_lie_in_the_lattice() {
        let q = 3;
        let l = Lattice2::from_divisor_pair(&div("2*(t) - inf", q), &div("(t+1) + inf", q));
        let s = global_sections(&l, &Divisor::zero(q));
        assert_eq!(s.dim(), 2 + 3);
        for v in &s.basis {
            let a = l.fin().inverse().unwrap().mul(v);
            assert!(a.data.iter().all(|x| x.is_poly()));
            let w = l.inf().inverse().unwrap().mul(v);
            assert!(w.data.iter().all(|x| x.is_zero() || x.val_inf().unwrap() >= 0));
        }
    }

    #[test]
    fn hom_space_dimensions() {
        let q = 2;
        let std = Lattice2::standard(q);
        assert_eq!(hom_space(&std, &std, &Divisor::zero(q)).dim(), 4);
        assert_eq!(hom_space(&std, &std, &div("-inf", q)).dim(), 0);
        let l = Lattice2::from_divisor_pair(&div("inf", q), &Divisor::zero(q));
        // first column entries lie in L^-inf, second column entries in L^0
        assert_eq!(hom_space(&l, &std, &Divisor::zero(q)).dim(), 2);
        // End: L^0, L^inf over L^-inf, L^0
        assert_eq!(hom_space(&l, &l, &Divisor::zero(q)).dim(), 4);
    }
}
