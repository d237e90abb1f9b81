//! Rank-2 lattices (vector bundles) on P^1 inside K^2.
//!
//! A lattice is stored as a pair of 2x2 basis matrices over K: `fin`, whose
//! columns span the F_q[t]-module of sections over the affine line, and
//! `inf`, whose columns span the completion at infinity over O_inf. Both
//! are kept in column Hermite form, so structural equality is equality of
//! sheaves.
//!
//! Orientation convention for split orders: D_B is End(L^B e1 + O e2),
//! i.e. the matrices `[[O, L^B], [L^-B, O]]`.

pub mod echelon;
mod local;
mod sections;
mod split;

pub use local::{distance_divisor, local_invariant_factors, residue_representatives, tree_neighbors};
pub use sections::{global_sections, h0_vectors, hom_space, SectionSpace};
pub use split::{splitting_type, splitting_type_birkhoff, SplitType};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcfield::parse::parse_ratfn;
use crate::funcfield::{Divisor, Place, Poly, RatFn};
use crate::linalg::KMat;
use echelon::{hermite_inf, hermite_poly, Ring};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice2 {
    fin: KMat,
    inf: KMat,
}

impl Lattice2 {
    /// Builds a lattice from arbitrary invertible basis matrices and brings
    /// it to canonical form.
    pub fn new(fin: KMat, inf: KMat) -> Result<Lattice2> {
        if fin.rows != 2 || fin.cols != 2 || inf.rows != 2 || inf.cols != 2 {
            return Err(Error::Invalid("lattice bases must be 2x2".into()));
        }
        if fin.q() != inf.q() {
            return Err(Error::FieldMismatch(fin.q(), inf.q()));
        }
        if fin.det().is_zero() || inf.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(Lattice2::from_parts(fin, inf))
    }

    /// Canonicalizes without the invertibility check.
    pub(crate) fn from_parts(fin: KMat, inf: KMat) -> Lattice2 {
        Lattice2 {
            fin: hermite_poly(&fin),
            inf: hermite_inf(&inf),
        }
    }

    /// O e1 + O e2.
    pub fn standard(q: u8) -> Lattice2 {
        Lattice2 {
            fin: KMat::identity(q, 2),
            inf: KMat::identity(q, 2),
        }
    }

    /// L^B e1 + L^C e2.
    pub fn from_divisor_pair(b: &Divisor, c: &Divisor) -> Lattice2 {
        let q = b.q();
        let inf_gen = |d: &Divisor| RatFn::t_pow(q, d.coeff(&Place::Infinity));
        Lattice2::from_parts(
            KMat::diag(&[b.finite_generator(), c.finite_generator()]),
            KMat::diag(&[inf_gen(b), inf_gen(c)]),
        )
    }

    pub fn q(&self) -> u8 {
        self.fin.q()
    }

    pub fn fin(&self) -> &KMat {
        &self.fin
    }

    pub fn inf(&self) -> &KMat {
        &self.inf
    }

    /// The basis at `place`'s side: `fin` for finite places, `inf` at infinity.
    pub fn basis_at(&self, place: &Place) -> &KMat {
        if place.is_infinity() {
            &self.inf
        } else {
            &self.fin
        }
    }

    /// The transition matrix `inf^-1 * fin`.
    pub fn transition(&self) -> KMat {
        self.inf.inverse().expect("invertible basis").mul(&self.fin)
    }

    /// Degree of the determinant bundle.
    pub fn det_degree(&self) -> i64 {
        // sum over finite places of v_P(f) deg P equals -v_inf(f)
        let vf = self.fin.det().val_inf().unwrap();
        let vi = self.inf.det().val_inf().unwrap();
        vf - vi
    }

    /// L^B * self.
    pub fn twist(&self, b: &Divisor) -> Lattice2 {
        let q = self.q();
        Lattice2::from_parts(
            self.fin.scale(&b.finite_generator()),
            self.inf
                .scale(&RatFn::t_pow(q, b.coeff(&Place::Infinity))),
        )
    }

    /// g * self for g in GL_2(K).
    pub fn transform(&self, g: &KMat) -> Lattice2 {
        Lattice2::from_parts(g.mul(&self.fin), g.mul(&self.inf))
    }

    pub fn scale(&self, f: &RatFn) -> Lattice2 {
        Lattice2::from_parts(self.fin.scale(f), self.inf.scale(f))
    }

    /// Canonical representative of the class of Λ up to twisting by line
    /// bundles, which is what determines the maximal order End(Λ): the
    /// affine basis gets polynomial entries with trivial content and the
    /// infinity basis gets entries of minimal valuation 0.
    pub fn class_normalized(&self) -> Lattice2 {
        let q = self.q();
        let d = self.fin.common_denominator();
        let content = self
            .fin
            .data
            .iter()
            .fold(Poly::zero(q), |acc, x| acc.gcd(&(x.num() * &d.div_exact(x.den()))));
        let h = RatFn::new(d, content);
        let m = self
            .inf
            .data
            .iter()
            .filter_map(|x| x.val_inf())
            .min()
            .expect("invertible basis");
        if h.is_one() && m == 0 {
            return self.clone();
        }
        Lattice2 {
            fin: hermite_poly(&self.fin.scale(&h)),
            inf: hermite_inf(&self.inf.scale(&RatFn::t_pow(q, m))),
        }
    }

    /// Replaces the basis at one side, keeping the other.
    pub(crate) fn with_basis(&self, ring: Ring, m: KMat) -> Lattice2 {
        match ring {
            Ring::Poly => Lattice2 {
                fin: hermite_poly(&m),
                inf: self.inf.clone(),
            },
            Ring::Infinity => Lattice2 {
                fin: self.fin.clone(),
                inf: hermite_inf(&m),
            },
        }
    }

    pub fn sum(&self, o: &Lattice2) -> Lattice2 {
        Lattice2 {
            fin: echelon::sum(&self.fin, &o.fin, Ring::Poly),
            inf: echelon::sum(&self.inf, &o.inf, Ring::Infinity),
        }
    }

    pub fn intersection(&self, o: &Lattice2) -> Lattice2 {
        Lattice2 {
            fin: echelon::intersection(&self.fin, &o.fin, Ring::Poly),
            inf: echelon::intersection(&self.inf, &o.inf, Ring::Infinity),
        }
    }

    /// True if `o` is a subsheaf of `self`.
    pub fn contains(&self, o: &Lattice2) -> bool {
        echelon::contains(&self.fin, &o.fin, Ring::Poly)
            && echelon::contains(&self.inf, &o.inf, Ring::Infinity)
    }

    pub fn to_json(&self) -> LatticeJson {
        let rows = |m: &KMat| {
            (0..2)
                .map(|i| (0..2).map(|j| m.get(i, j).to_string()).collect())
                .collect()
        };
        LatticeJson {
            fin: rows(&self.fin),
            inf: rows(&self.inf),
        }
    }

    pub fn from_json(j: &LatticeJson, q: u8) -> Result<Lattice2> {
        let parse = |rows: &Vec<Vec<String>>| -> Result<KMat> {
            if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
                return Err(Error::Invalid("lattice bases must be 2x2".into()));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|s| parse_ratfn(s, q)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(KMat::from_rows(rows))
        };
        Lattice2::new(parse(&j.fin)?, parse(&j.inf)?)
    }
}

/// Serialized form: row-major matrices of rational-function strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub fin: Vec<Vec<String>>,
    pub inf: Vec<Vec<String>>,
}

impl fmt::Debug for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice2 {{ fin: {:?}, inf: {:?} }}", self.fin, self.inf)
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
    fn divisor_pair_zero_is_standard() {
        let q = 2;
        let z = Divisor::zero(q);
        assert_eq!(Lattice2::from_divisor_pair(&z, &z), Lattice2::standard(q));
    }

    #[test]
    fn det_degree_of_divisor_pair() {
        let q = 3;
        let b = div("2*(t^2+1) - inf", q);
        let c = div("-(t) + 3*inf", q);
        let l = Lattice2::from_divisor_pair(&b, &c);
        assert_eq!(l.det_degree(), b.degree() + c.degree());
    }

    #[test]
    fn twist_matches_divisor_pair() {
        let q = 2;
        let b = div("t + inf", q);
        let l = Lattice2::standard(q).twist(&b);
        assert_eq!(l, Lattice2::from_divisor_pair(&b, &b));
    }

    #[test]
    fn class_normalization_forgets_twists() {
        let q = 5;
        let l = Lattice2::from_divisor_pair(&div("t", q), &div("inf", q));
        let f = parse_ratfn("(t^2+2)/(t+3)", q).unwrap();
        assert_eq!(l.scale(&f).class_normalized(), l.class_normalized());
        let b = div("2*(t+1) - 3*inf", q);
        assert_eq!(l.twist(&b).class_normalized(), l.class_normalized());
        assert_ne!(l.class_normalized(), Lattice2::standard(q));
    }

    #[test]
    fn json_round_trip() {
        let q = 4;
        let l = Lattice2::from_divisor_pair(&div("(t+g)", q), &div("-inf", q));
        let j = serde_json::to_string(&l.to_json()).unwrap();
        let back: LatticeJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Lattice2::from_json(&back, q).unwrap(), l);
    }
}
