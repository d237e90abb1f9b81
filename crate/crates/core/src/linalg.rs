//! Dense linear algebra over F_q and over K = F_q(t).

use crate::error::{Error, Result};
use crate::funcfield::{Fq, Poly, RatFn};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Fq>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..ncols {
                    let v = rows[r][j];
                    rows[i][j] = rows[i][j] - f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of { x : A x = 0 } for `a` given as rows of length `ncols`.
pub fn nullspace(q: u8, a: &[Vec<Fq>], ncols: usize) -> Vec<Vec<Fq>> {
    let mut m: Vec<Vec<Fq>> = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Fq::zero(q); ncols];
            x[f] = Fq::one(q);
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[r][f];
            }
            x
        })
        .collect()
}

pub fn rank(a: &[Vec<Fq>], ncols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, ncols).len()
}

/// Solves A x = b, returning one solution if consistent.
pub fn solve(q: u8, a: &[Vec<Fq>], ncols: usize, b: &[Fq]) -> Option<Vec<Fq>> {
    let mut m: Vec<Vec<Fq>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Fq::zero(q); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][ncols];
    }
    Some(x)
}

/// Dense matrix over K with rows stored contiguously.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<RatFn>,
}

impl KMat {
    pub fn zeros(q: u8, rows: usize, cols: usize) -> KMat {
        KMat {
            rows,
            cols,
            data: vec![RatFn::zero(q); rows * cols],
        }
    }

    pub fn identity(q: u8, n: usize) -> KMat {
        let mut m = KMat::zeros(q, n, n);
        for i in 0..n {
            m.data[i * n + i] = RatFn::one(q);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFn>>) -> KMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        KMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diag(entries: &[RatFn]) -> KMat {
        let n = entries.len();
        let mut m = KMat::zeros(entries[0].q(), n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn q(&self) -> u8 {
        self.data[0].q()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFn) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<RatFn> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_cols(cols: &[Vec<RatFn>]) -> KMat {
        let r = cols[0].len();
        let mut m = KMat::zeros(cols[0][0].q(), r, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> KMat {
        let mut m = KMat::zeros(self.q(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &KMat) -> KMat {
        assert_eq!(self.cols, o.rows);
        let mut m = KMat::zeros(self.q(), self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RatFn::zero(self.q());
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn scale(&self, f: &RatFn) -> KMat {
        KMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * f).collect(),
        }
    }

    pub fn add(&self, o: &KMat) -> KMat {
        KMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &KMat) -> KMat {
        KMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<KMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let q = self.q();
        if n == 2 {
            let d = self.det();
            if d.is_zero() {
                return Err(Error::Singular);
            }
            let di = d.inv().unwrap();
            return Ok(KMat::from_rows(vec![
                vec![self.get(1, 1) * &di, -(self.get(0, 1) * &di)],
                vec![-(self.get(1, 0) * &di), self.get(0, 0) * &di],
            ]));
        }
        let mut a = self.clone();
        let mut inv = KMat::identity(q, n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a.get(c, c).inv().unwrap();
            for j in 0..n {
                let v = a.get(c, j) * &pinv;
                a.set(c, j, v);
                let w = inv.get(c, j) * &pinv;
                inv.set(c, j, w);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &(&f * inv.get(c, j));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// Determinant (square matrices), by elimination.
    pub fn det(&self) -> RatFn {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 2 {
            return &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0));
        }
        let mut a = self.clone();
        let mut det = RatFn::one(self.q());
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return RatFn::zero(self.q());
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            det = &det * a.get(c, c);
            let pinv = a.get(c, c).inv().unwrap();
            for r in c + 1..n {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c) * &pinv;
                for j in c..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> RatFn {
        (0..self.rows).fold(RatFn::zero(self.q()), |acc, i| &acc + self.get(i, i))
    }

    /// Monic lcm of all entry denominators.
    pub fn common_denominator(&self) -> Poly {
        common_denominator(self.data.iter())
    }
}

impl std::fmt::Debug for KMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    (a * &b.div_exact(&a.gcd(b))).monic()
}

pub fn common_denominator<'a>(it: impl Iterator<Item = &'a RatFn>) -> Poly {
    let mut d: Option<Poly> = None;
    for x in it {
        d = Some(match d {
            None => x.den().clone(),
            Some(d) => {
                if x.den().divides(&d) {
                    d
                } else {
                    lcm(&d, x.den())
                }
            }
        });
    }
    d.unwrap_or_else(|| Poly::one(2))
}

/// F_q-coordinates for a family of vectors over K: every entry is scaled by
/// a common denominator and flattened into polynomial coefficients, so that
/// F_q-linear relations among the inputs are exactly the relations among
/// the returned vectors.
pub fn fq_coordinates(q: u8, vectors: &[Vec<RatFn>]) -> Vec<Vec<Fq>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let d = common_denominator(vectors.iter().flatten());
    let d = if d.q() == q { d } else { Poly::one(q) };
    let scaled: Vec<Vec<Poly>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.num() * &d.div_exact(x.den()))
                .collect()
        })
        .collect();
    let len = vectors[0].len();
    let widths: Vec<usize> = (0..len)
        .map(|i| {
            scaled
                .iter()
                .map(|v| v[i].coeffs().len())
                .max()
                .unwrap_or(0)
        })
        .collect();
    scaled
        .iter()
        .map(|v| {
            let mut out = Vec::new();
            for (i, p) in v.iter().enumerate() {
                for k in 0..widths[i] {
                    out.push(p.coeff(k));
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::parse_ratfn;

    fn r(s: &str, q: u8) -> RatFn {
        parse_ratfn(s, q).unwrap()
    }

    #[test]
    fn nullspace_is_annihilated() {
        let q = 3;
        let f = |n| Fq::from_int(q, n);
        let a = vec![vec![f(1), f(2), f(0), f(1)], vec![f(2), f(1), f(1), f(0)]];
        let ns = nullspace(q, &a, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in &a {
                let s = row.iter().zip(x).fold(Fq::zero(q), |acc, (a, b)| acc + *a * *b);
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn inverse_of_3x3() {
        let q = 5;
        let m = KMat::from_rows(vec![
            vec![r("t", q), r("1", q), r("0", q)],
            vec![r("1/t", q), r("t+1", q), r("2", q)],
            vec![r("0", q), r("3", q), r("t^2", q)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), KMat::identity(q, 3));
        let d = m.det();
        assert_eq!(&d * &inv.det(), RatFn::one(q));
    }

    #[test]
    fn coordinates_detect_relations() {
        let q = 2;
        let v = vec![
            vec![r("1/t", q), r("1", q)],
            vec![r("1", q), r("t", q)],
            vec![r("1/t+1", q), r("1+t", q)],
        ];
        let c = fq_coordinates(q, &v);
        assert_eq!(rank(&c, c[0].len()), 2);
    }
}
