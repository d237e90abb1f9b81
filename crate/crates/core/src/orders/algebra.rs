//! The F_q-algebra of global sections of an Eichler order, and the
//! idempotent search deciding splitness.

use serde::{Deserialize, Serialize};

use crate::funcfield::{Divisor, Fq, RatFn};
use crate::lattices::hom_space;
use crate::linalg::{fq_coordinates, nullspace, solve, KMat};

use super::EichlerOrder;

/// Largest slice enumerated point by point before switching to solving
/// the last coordinate as a quadratic.
const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// E(X) with its structure constants: `basis[i] * basis[j] =
/// sum_k table[i][j][k] basis[k]`.
#[derive(Clone, Debug)]
pub struct SectionAlgebra {
    pub q: u8,
    pub basis: Vec<KMat>,
    pub table: Vec<Vec<Vec<Fq>>>,
    traces: Vec<Fq>,
    dets: Vec<Fq>,
    polar: Vec<Vec<Fq>>,
    identity: Vec<Fq>,
}

fn flat(m: &KMat) -> Vec<RatFn> {
    m.data.clone()
}

fn constant(x: &RatFn, what: &str) -> Fq {
    x.as_constant()
        .unwrap_or_else(|| panic!("{what} of a global section is not constant: {x}"))
}

/// Basis of the intersection of two F_q-subspaces of M_2(K).
pub fn intersect_spaces(q: u8, v: &[KMat], w: &[KMat]) -> Vec<KMat> {
    if v.is_empty() || w.is_empty() {
        return Vec::new();
    }
    let all: Vec<Vec<RatFn>> = v.iter().chain(w).map(flat).collect();
    let coords = fq_coordinates(q, &all);
    let len = coords[0].len();
    let m = v.len();
    let n = v.len() + w.len();
    // kernel of [V | -W]
    let rows: Vec<Vec<Fq>> = (0..len)
        .map(|r| {
            (0..n)
                .map(|c| if c < m { coords[c][r] } else { -coords[c][r] })
                .collect()
        })
        .collect();
    nullspace(q, &rows, n)
        .into_iter()
        .map(|x| combine(q, v, &x[..m]))
        .collect()
}

fn combine(q: u8, basis: &[KMat], c: &[Fq]) -> KMat {
    let mut acc = KMat::zeros(q, 2, 2);
    for (b, &x) in basis.iter().zip(c) {
        if !x.is_zero() {
            acc = acc.add(&b.scale(&RatFn::constant(x)));
        }
    }
    acc
}

impl SectionAlgebra {
    pub fn new(q: u8, basis: Vec<KMat>) -> SectionAlgebra {
        let n = basis.len();
        let mut family: Vec<Vec<RatFn>> = basis.iter().map(flat).collect();
        family.push(flat(&KMat::identity(q, 2)));
        for i in 0..n {
            for j in 0..n {
                family.push(flat(&basis[i].mul(&basis[j])));
            }
        }
        let coords = fq_coordinates(q, &family);
        let len = coords[0].len();
        let a: Vec<Vec<Fq>> = (0..len).map(|r| (0..n).map(|c| coords[c][r]).collect()).collect();
        let express = |k: usize| solve(q, &a, n, &coords[k]).expect("closed under products");
        let identity = express(n);
        let mut table = vec![vec![Vec::new(); n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = express(n + 1 + i * n + j);
            }
        }
        let traces: Vec<Fq> = basis.iter().map(|b| constant(&b.trace(), "trace")).collect();
        let dets: Vec<Fq> = basis.iter().map(|b| constant(&b.det(), "determinant")).collect();
        let mut polar = vec![vec![Fq::zero(q); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = constant(&basis[i].add(&basis[j]).det(), "determinant");
                polar[i][j] = d - dets[i] - dets[j];
                polar[j][i] = polar[i][j];
            }
        }
        SectionAlgebra {
            q,
            basis,
            table,
            traces,
            dets,
            polar,
            identity,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn identity_coords(&self) -> &[Fq] {
        &self.identity
    }

    pub fn element(&self, c: &[Fq]) -> KMat {
        combine(self.q, &self.basis, c)
    }

    pub fn mul_coords(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        let n = self.dim();
        let mut out = vec![Fq::zero(self.q); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = x[i] * y[j];
                for k in 0..n {
                    out[k] = out[k] + s * self.table[i][j][k];
                }
            }
        }
        out
    }

    pub fn trace_coords(&self, c: &[Fq]) -> Fq {
        c.iter()
            .zip(&self.traces)
            .fold(Fq::zero(self.q), |acc, (&x, &t)| acc + x * t)
    }

    pub fn det_coords(&self, c: &[Fq]) -> Fq {
        let n = self.dim();
        let mut acc = Fq::zero(self.q);
        for i in 0..n {
            if c[i].is_zero() {
                continue;
            }
            acc = acc + c[i] * c[i] * self.dets[i];
            for j in i + 1..n {
                acc = acc + c[i] * c[j] * self.polar[i][j];
            }
        }
        acc
    }

    /// Dimension of the Jacobson radical, found from the trace form: in odd
    /// characteristic it is the kernel W of (x, y) -> tr(xy); in
    /// characteristic 2 it is the kernel of the semilinear map sqrt(det) on W.
    pub fn radical_dim(&self) -> usize {
        let q = self.q;
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Fq::zero(q); n];
            v[i] = Fq::one(q);
            v
        };
        let gram: Vec<Vec<Fq>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.trace_coords(&self.mul_coords(&unit(i), &unit(j))))
                    .collect()
            })
            .collect();
        let w = nullspace(q, &gram, n);
        if Fq::one(q).characteristic() != 2 {
            return w.len();
        }
        let nonzero = w.iter().any(|x| !self.det_coords(x).is_zero());
        w.len() - usize::from(nonzero)
    }

    /// dim E(X)/J.
    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }
}

/// F_q-basis of E(X) = End(Λ1)(X) ∩ End(Λ2)(X).
pub fn section_algebra(e: &EichlerOrder) -> SectionAlgebra {
    let q = e.q();
    let z = Divisor::zero(q);
    let l1 = e.corner_a().lattice();
    let l2 = e.corner_b().lattice();
    let v1 = hom_space(l1, l1, &z).basis;
    let basis = if e.is_maximal() {
        v1
    } else {
        let v2 = hom_space(l2, l2, &z).basis;
        intersect_spaces(q, &v1, &v2)
    };
    SectionAlgebra::new(q, basis)
}

/// Outcome of the idempotent search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub split: bool,
    /// A non-trivial idempotent, as row-major strings, when split.
    pub witness: Option<Vec<Vec<String>>>,
    /// Dimension of E(X).
    pub dim: usize,
    /// Points of the trace-one slice examined (the whole slice when not
    /// split).
    pub points_searched: u64,
}

fn matrix_strings(m: &KMat) -> Vec<Vec<String>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

/// Roots in F_q of a x^2 + b x + c.
fn quadratic_roots(q: u8, a: Fq, b: Fq, c: Fq) -> Vec<Fq> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { Fq::elements(q).collect() } else { Vec::new() };
        }
        return vec![-(c / b)];
    }
    if a.characteristic() == 2 {
        if b.is_zero() {
            return vec![(c / a).sqrt_char2()];
        }
        // x = (b/a) y with y^2 + y = ac/b^2
        let k = a * c / (b * b);
        let s = b / a;
        return Fq::elements(q)
            .filter(|&y| y * y + y == k)
            .map(|y| s * y)
            .collect();
    }
    let two = Fq::from_int(q, 2);
    let disc = b * b - Fq::from_int(q, 4) * a * c;
    Fq::elements(q)
        .filter(|&r| r * r == disc)
        .map(|r| (r - b) / (two * a))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Searches E(X) for e with tr e = 1 and det e = 0, which are exactly the
/// non-trivial idempotents of M_2(K). The unit matrix e11 is tried first.
pub fn is_split(e: &EichlerOrder) -> (bool, Option<KMat>, SplitCertificate) {
    let alg = section_algebra(e);
    let q = alg.q;
    let n = alg.dim();
    let e11 = KMat::from_rows(vec![
        vec![RatFn::one(q), RatFn::zero(q)],
        vec![RatFn::zero(q), RatFn::zero(q)],
    ]);
    let found = |w: KMat, pts: u64| {
        let cert = SplitCertificate {
            split: true,
            witness: Some(matrix_strings(&w)),
            dim: n,
            points_searched: pts,
        };
        (true, Some(w), cert)
    };
    if e.contains_matrix(&e11) {
        return found(e11, 0);
    }
    let none = |pts: u64| {
        (
            false,
            None,
            SplitCertificate {
                split: false,
                witness: None,
                dim: n,
                points_searched: pts,
            },
        )
    };
    let Some(p) = alg.traces.iter().position(|t| !t.is_zero()) else {
        return none(0);
    };
    let free: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    let tp_inv = alg.traces[p].inv().unwrap();
    // the slice point with free coordinates `vals`
    let point = |vals: &[Fq]| {
        let mut c = vec![Fq::zero(q); n];
        let mut s = Fq::one(q);
        for (&i, &v) in free.iter().zip(vals) {
            c[i] = v;
            s = s - v * alg.traces[i];
        }
        c[p] = s * tp_inv;
        c
    };
    let elems: Vec<Fq> = Fq::elements(q).collect();
    let slice_size = (q as u64).saturating_pow(free.len() as u32);
    let mut searched = 0u64;
    let enumerate = |k: usize, f: &mut dyn FnMut(&[Fq]) -> bool| {
        let mut idx = vec![0usize; k];
        loop {
            let vals: Vec<Fq> = idx.iter().map(|&i| elems[i]).collect();
            if f(&vals) {
                return;
            }
            let mut j = k;
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < elems.len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    };
    let mut witness: Option<Vec<Fq>> = None;
    if slice_size <= EXHAUSTIVE_LIMIT || free.is_empty() {
        enumerate(free.len(), &mut |vals| {
            searched += 1;
            let c = point(vals);
            if alg.det_coords(&c).is_zero() {
                witness = Some(c);
                true
            } else {
                false
            }
        });
    } else {
        // fix all but the last free coordinate and solve det = 0 for it
        let last = *free.last().unwrap();
        let mut dir = vec![Fq::zero(q); n];
        dir[last] = Fq::one(q);
        dir[p] = -(alg.traces[last] * tp_inv);
        let qa = alg.det_coords(&dir);
        enumerate(free.len() - 1, &mut |vals| {
            let mut full = vals.to_vec();
            full.push(Fq::zero(q));
            let c0 = point(&full);
            searched += q as u64;
            let sum: Vec<Fq> = c0.iter().zip(&dir).map(|(&a, &b)| a + b).collect();
            let q0 = alg.det_coords(&c0);
            let qb = alg.det_coords(&sum) - q0 - qa;
            if let Some(x) = quadratic_roots(q, qa, qb, q0).into_iter().next() {
                witness = Some(c0.iter().zip(&dir).map(|(&a, &b)| a + x * b).collect());
                true
            } else {
                false
            }
        });
    }
    match witness {
        Some(c) => found(alg.element(&c), searched),
        None => none(searched),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::parse_divisor;
    use crate::orders::{split_order, MaximalOrder};

    fn d(s: &str, q: u8) -> Divisor {
        parse_divisor(s, q).unwrap()
    }

    #[test]
    fn section_algebra_dimensions() {
        let q = 2;
        let e = split_order(&d("inf", q), &d("0", q)).unwrap();
        assert_eq!(section_algebra(&e).dim(), 3);
        let e = split_order(&d("inf", q), &d("t", q)).unwrap();
        assert_eq!(section_algebra(&e).dim(), 2);
        let m = EichlerOrder::maximal(&MaximalOrder::standard(q));
        let a = section_algebra(&m);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.radical_dim(), 0);
    }

    #[test]
    fn radical_of_triangular_algebra() {
        for q in [2u8, 3] {
            // [[F, L^-B'(X)], [0, F]] with h0(-B') = 2 has a 2-dimensional radical
            let e = split_order(&d("2*inf", q), &d("-inf", q)).unwrap();
            let a = section_algebra(&e);
            assert_eq!(a.dim(), 4);
            assert_eq!(a.radical_dim(), 2);
            assert_eq!(a.semisimple_dim(), 2);
        }
    }

    #[test]
    fn split_orders_contain_e11() {
        let q = 3;
        let e = split_order(&d("inf + t", q), &d("-t", q)).unwrap();
        let (split, w, cert) = is_split(&e);
        assert!(split && cert.split);
        let w = w.unwrap();
        assert_eq!(w.mul(&w), w);
    }

    #[test]
    fn quadratic_roots_are_roots() {
        for q in [2u8, 3, 4, 5, 8, 9] {
            for a in Fq::elements(q) {
                for b in Fq::elements(q) {
                    for c in Fq::elements(q) {
                        let roots = quadratic_roots(q, a, b, c);
                        let expect: Vec<Fq> = Fq::elements(q).filter(|&x| a * x * x + b * x + c == Fq::zero(q)).collect();
                        let mut r = roots.clone();
                        r.sort();
                        r.dedup();
                        assert_eq!(r, expect, "q={q} {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }
}
