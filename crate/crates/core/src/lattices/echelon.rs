//! Column echelon forms of rank-2 modules over F_q[t] and over the
//! valuation ring O_inf = F_q[1/t]_(1/t), plus sums and intersections.

use crate::funcfield::{Poly, RatFn};
use crate::linalg::{common_denominator, KMat};

/// Which coefficient ring a basis matrix is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    /// F_q[t]
    Poly,
    /// O_inf
    Infinity,
}

fn columns(m: &KMat) -> Vec<[RatFn; 2]> {
    (0..m.cols)
        .map(|j| [m.get(0, j).clone(), m.get(1, j).clone()])
        .collect()
}

fn from_pair(c0: [RatFn; 2], c1: [RatFn; 2]) -> KMat {
    let [a, b] = c0;
    let [c, d] = c1;
    KMat::from_rows(vec![vec![a, c], vec![b, d]])
}

/// Lower-triangular column Hermite form over F_q[t] of the module spanned
/// by the columns of `m` (2 rows, rank 2): `[[h11, 0], [h21, h22]]` with
/// monic diagonal and `deg h21 < deg h22`.
pub fn hermite_poly(m: &KMat) -> KMat {
    let q = m.q();
    let d = common_denominator(m.data.iter());
    let mut cols: Vec<[Poly; 2]> = columns(m)
        .into_iter()
        .map(|[a, b]| {
            [
                a.num() * &d.div_exact(a.den()),
                b.num() * &d.div_exact(b.den()),
            ]
        })
        .collect();
    let p = cols
        .iter()
        .position(|c| !c[0].is_zero())
        .expect("rank-2 input");
    let mut piv = cols.swap_remove(p);
    for k in cols.iter_mut() {
        if k[0].is_zero() {
            continue;
        }
        let (g, s, u) = piv[0].ext_gcd(&k[0]);
        let pa = piv[0].div_exact(&g);
        let ka = k[0].div_exact(&g);
        let new_piv = [&(&s * &piv[0]) + &(&u * &k[0]), &(&s * &piv[1]) + &(&u * &k[1])];
        let new_k = [Poly::zero(q), &(&pa * &k[1]) - &(&ka * &piv[1])];
        piv = new_piv;
        *k = new_k;
    }
    let h22 = cols
        .iter()
        .fold(Poly::zero(q), |acc, k| acc.gcd(&k[1]));
    assert!(!h22.is_zero(), "rank-2 input");
    let h11 = piv[0].monic();
    let lc = piv[0].lead().inv().unwrap();
    let h21 = piv[1].scale(lc).rem(&h22);
    let dr = RatFn::from_poly(d);
    let div = |p: Poly| &RatFn::from_poly(p) / &dr;
    from_pair([div(h11), div(h21)], [RatFn::zero(q), div(h22)])
}

/// Column form over O_inf: `[[u^a, 0], [x, u^b]]` with u = 1/t and x a
/// Laurent polynomial in u whose exponents are all below b.
pub fn hermite_inf(m: &KMat) -> KMat {
    let q = m.q();
    let mut cols = columns(m);
    let p = (0..cols.len())
        .filter(|&j| !cols[j][0].is_zero())
        .min_by_key(|&j| cols[j][0].val_inf().unwrap())
        .expect("rank-2 input");
    let piv = cols.swap_remove(p);
    for k in cols.iter_mut() {
        if k[0].is_zero() {
            continue;
        }
        let f = &k[0] / &piv[0];
        k[1] = &k[1] - &(&f * &piv[1]);
        k[0] = RatFn::zero(q);
    }
    let a = piv[0].val_inf().unwrap();
    let b = cols
        .iter()
        .filter_map(|k| k[1].val_inf())
        .min()
        .expect("rank-2 input");
    let unit = &RatFn::t_pow(q, -a) / &piv[0];
    let x = (&piv[1] * &unit).truncate_inf(b);
    from_pair(
        [RatFn::t_pow(q, -a), x],
        [RatFn::zero(q), RatFn::t_pow(q, -b)],
    )
}

pub fn hermite(m: &KMat, ring: Ring) -> KMat {
    match ring {
        Ring::Poly => hermite_poly(m),
        Ring::Infinity => hermite_inf(m),
    }
}

fn concat(a: &KMat, b: &KMat) -> KMat {
    let mut cols: Vec<Vec<RatFn>> = (0..a.cols).map(|j| a.col(j)).collect();
    cols.extend((0..b.cols).map(|j| b.col(j)));
    KMat::from_cols(&cols)
}

/// Basis of the sum of two rank-2 modules.
pub fn sum(a: &KMat, b: &KMat, ring: Ring) -> KMat {
    hermite(&concat(a, b), ring)
}

/// Basis of the intersection of two rank-2 modules, via duals.
pub fn intersection(a: &KMat, b: &KMat, ring: Ring) -> KMat {
    let dual = |m: &KMat| m.inverse().expect("invertible basis").transpose();
    let s = sum(&dual(a), &dual(b), ring);
    hermite(&dual(&s), ring)
}

/// True if the module spanned by `a` contains the one spanned by `b`.
pub fn contains(a: &KMat, b: &KMat, ring: Ring) -> bool {
    let c = a.inverse().expect("invertible basis").mul(b);
    c.data.iter().all(|x| match ring {
        Ring::Poly => x.is_poly(),
        Ring::Infinity => x.is_zero() || x.val_inf().unwrap() >= 0,
    })
}
