//! Maximal orders, Eichler orders and their global sections.

mod algebra;
mod conjugacy;
pub mod grid;

pub use algebra::{is_split, section_algebra, SectionAlgebra, SplitCertificate};
pub use conjugacy::{are_conjugate, are_conjugate_with, conjugates_to, ClassInvariant, Conjugator};

use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcfield::{Divisor, Place};
use crate::lattices::{distance_divisor, splitting_type, tree_neighbors, Lattice2, LatticeJson, SplitType};
use crate::linalg::KMat;
use grid::Grid;

/// D_Λ = End(Λ), stored as the normalized class of Λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalOrder {
    lattice: Lattice2,
}

impl MaximalOrder {
    pub fn new(l: &Lattice2) -> MaximalOrder {
        MaximalOrder {
            lattice: l.class_normalized(),
        }
    }

    pub fn standard(q: u8) -> MaximalOrder {
        MaximalOrder::new(&Lattice2::standard(q))
    }

    /// D_B = End(L^B e1 + O e2).
    pub fn of_divisor(b: &Divisor) -> MaximalOrder {
        MaximalOrder::new(&Lattice2::from_divisor_pair(b, &Divisor::zero(b.q())))
    }

    pub fn lattice(&self) -> &Lattice2 {
        &self.lattice
    }

    pub fn q(&self) -> u8 {
        self.lattice.q()
    }

    pub fn splitting_type(&self) -> SplitType {
        splitting_type(&self.lattice)
    }

    /// True if g is a global section of End(Λ) near every place, i.e.
    /// g Λ ⊆ Λ.
    pub fn contains_matrix(&self, g: &KMat) -> bool {
        let l = &self.lattice;
        let ok = |b: &KMat, integral: &dyn Fn(&crate::funcfield::RatFn) -> bool| {
            b.inverse()
                .expect("invertible basis")
                .mul(g)
                .mul(b)
                .data
                .iter()
                .all(integral)
        };
        ok(l.fin(), &|x| x.is_poly()) && ok(l.inf(), &|x| x.is_zero() || x.val_inf().unwrap() >= 0)
    }

    /// Maximal orders at distance Q.
    pub fn neighbors(&self, place: &Place) -> Vec<MaximalOrder> {
        tree_neighbors(&self.lattice, place)
            .iter()
            .map(MaximalOrder::new)
            .collect()
    }
}

/// The class index n of [D_{nP}] for a degree-one P: the gap a - b of the
/// splitting type.
pub fn max_order_class(d: &MaximalOrder) -> i64 {
    d.splitting_type().gap()
}

/// D_1 ∩ D_2, stored as an ordered corner pair. Equality and hashing use a
/// canonical opposite-corner pair, so two presentations of the same order
/// compare equal.
#[derive(Clone, Debug)]
pub struct EichlerOrder {
    a: MaximalOrder,
    b: MaximalOrder,
    level: Divisor,
    key: (MaximalOrder, MaximalOrder),
}

impl PartialEq for EichlerOrder {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}

impl Eq for EichlerOrder {}

impl Hash for EichlerOrder {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key.hash(h);
    }
}

impl EichlerOrder {
    pub fn new(a: &Lattice2, b: &Lattice2) -> EichlerOrder {
        let a = MaximalOrder::new(a);
        let b = MaximalOrder::new(b);
        let g = Grid::new(a.lattice(), b.lattice());
        let level = distance_divisor(a.lattice(), b.lattice());
        let key = g
            .sigmas()
            .iter()
            .map(|s| {
                let comp: Vec<bool> = s.iter().map(|x| !x).collect();
                (MaximalOrder::new(&g.corner(s)), MaximalOrder::new(&g.corner(&comp)))
            })
            .min()
            .expect("at least one corner");
        EichlerOrder { a, b, level, key }
    }

    pub fn maximal(d: &MaximalOrder) -> EichlerOrder {
        EichlerOrder::new(d.lattice(), d.lattice())
    }

    pub fn q(&self) -> u8 {
        self.a.q()
    }

    pub fn corner_a(&self) -> &MaximalOrder {
        &self.a
    }

    pub fn corner_b(&self) -> &MaximalOrder {
        &self.b
    }

    pub fn level(&self) -> &Divisor {
        &self.level
    }

    pub fn is_maximal(&self) -> bool {
        self.level.is_zero()
    }

    /// The same order with its corners swapped.
    pub fn reversed(&self) -> EichlerOrder {
        EichlerOrder {
            a: self.b.clone(),
            b: self.a.clone(),
            level: self.level.clone(),
            key: self.key.clone(),
        }
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.a.lattice(), self.b.lattice())
    }

    /// The grid S(E) of maximal orders containing E.
    pub fn containing_maximal_orders(&self) -> Vec<MaximalOrder> {
        self.grid().vertices().iter().map(MaximalOrder::new).collect()
    }

    /// g E g^-1.
    pub fn conjugate_by(&self, g: &KMat) -> EichlerOrder {
        EichlerOrder::new(&self.a.lattice().transform(g), &self.b.lattice().transform(g))
    }

    /// True if g lies in E near every place.
    pub fn contains_matrix(&self, g: &KMat) -> bool {
        self.a.contains_matrix(g) && self.b.contains_matrix(g)
    }

    pub fn to_json(&self) -> OrderJson {
        OrderJson {
            corner_a: self.a.lattice().to_json(),
            corner_b: self.b.lattice().to_json(),
        }
    }

    pub fn from_json(j: &OrderJson, q: u8) -> Result<EichlerOrder> {
        Ok(EichlerOrder::new(
            &Lattice2::from_json(&j.corner_a, q)?,
            &Lattice2::from_json(&j.corner_b, q)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub corner_a: LatticeJson,
    pub corner_b: LatticeJson,
}

/// E[B, B2] = D_B ∩ D_{-B2}, of level B + B2.
pub fn split_order(b: &Divisor, b2: &Divisor) -> Result<EichlerOrder> {
    let s = b + b2;
    if !s.is_effective() {
        return Err(Error::NotEffective(s.to_string()));
    }
    Ok(intersect(&MaximalOrder::of_divisor(b), &MaximalOrder::of_divisor(&-b2)))
}

pub fn intersect(d1: &MaximalOrder, d2: &MaximalOrder) -> EichlerOrder {
    EichlerOrder::new(d1.lattice(), d2.lattice())
}

pub fn level(e: &EichlerOrder) -> &Divisor {
    e.level()
}

/// The order F_r of level 2P: the intersection of two distinct class-r
/// neighbors at P of the class-(r+1) order D_{(r+1)P}. P must have degree 1.
pub fn f_order(r: i64, p: &Place, q: u8) -> Result<EichlerOrder> {
    if p.degree() != 1 || r < 0 {
        return Err(Error::Invalid(format!("F_r needs r >= 0 and a degree-one place, got r = {r}, P = {p}")));
    }
    let center = MaximalOrder::of_divisor(&Divisor::place(q, p.clone()).scale(r + 1));
    let below: Vec<MaximalOrder> = center
        .neighbors(p)
        .into_iter()
        .filter(|n| max_order_class(n) == r)
        .collect();
    if below.len() < 2 {
        return Err(Error::Invalid(format!("fewer than two class-{r} neighbors")));
    }
    Ok(intersect(&below[0], &below[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::parse_divisor;

    fn d(s: &str, q: u8) -> Divisor {
        parse_divisor(s, q).unwrap()
    }

    #[test]
    fn split_order_levels() {
        let q = 2;
        assert!(split_order(&d("0", q), &d("0", q)).unwrap().is_maximal());
        let e = split_order(&d("inf", q), &d("t", q)).unwrap();
        assert_eq!(e.level(), &d("inf + t", q));
        let e = split_order(&d("2*inf", q), &d("-inf", q)).unwrap();
        assert_eq!(e.level(), &d("inf", q));
        assert!(split_order(&d("inf", q), &d("-2*inf", q)).is_err());
    }

    #[test]
    fn intersections_of_divisor_orders() {
        let q = 2;
        let e = intersect(&MaximalOrder::standard(q), &MaximalOrder::of_divisor(&d("2*inf", q)));
        assert_eq!(e, split_order(&d("2*inf", q), &d("0", q)).unwrap());
        let e = intersect(&MaximalOrder::of_divisor(&d("t", q)), &MaximalOrder::of_divisor(&d("-inf", q)));
        assert_eq!(e.level(), &d("t + inf", q));
    }

    #[test]
    fn equality_ignores_corner_presentation() {
        let q = 2;
        let e = split_order(&d("inf", q), &d("t", q)).unwrap();
        assert_eq!(e.reversed(), e);
        let g = e.grid();
        let other = EichlerOrder::new(&g.corner(&[true, false]), &g.corner(&[false, true]));
        assert_eq!(other, e);
        assert_ne!(e, split_order(&d("inf + t", q), &d("0", q)).unwrap());
    }

    #[test]
    fn class_indices() {
        let q = 2;
        assert_eq!(max_order_class(&MaximalOrder::standard(q)), 0);
        let qq = d("(t^2+t+1)", q);
        assert_eq!(max_order_class(&MaximalOrder::of_divisor(&qq)), 2);
        assert_eq!(max_order_class(&MaximalOrder::of_divisor(&d("t - inf", q))), 0);
    }

    #[test]
    fn grids_of_split_orders() {
        let q = 2;
        let e = split_order(&d("inf", q), &d("t", q)).unwrap();
        let classes: Vec<i64> = e.containing_maximal_orders().iter().map(max_order_class).collect();
        let mut sorted = classes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 0, 1, 1]);
        let e = split_order(&d("2*inf", q), &d("0", q)).unwrap();
        assert_eq!(e.containing_maximal_orders().len(), 3);
    }
}
