//! Navigation in the Bruhat–Tits tree at a place Q. Vertices are global
//! maximal orders that vary only at Q.

use crate::error::{Error, Result};
use crate::funcfield::Place;
use crate::lattices::distance_divisor;
use crate::orders::grid::Grid;
use crate::orders::MaximalOrder;

pub const DEFAULT_DEPTH_BOUND: usize = 16;

pub type TreeVertex = MaximalOrder;

/// Vertices along a geodesic, consecutive ones at distance Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePath {
    pub vertices: Vec<TreeVertex>,
}

impl TreePath {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The Q-coefficient of the distance divisor; errors if v and w differ at
/// some other place.
pub fn local_distance(v: &TreeVertex, w: &TreeVertex, q_place: &Place) -> Result<i64> {
    let d = distance_divisor(v.lattice(), w.lattice());
    if d.support().any(|p| p != q_place) {
        return Err(Error::NotLocalAt(q_place.to_string()));
    }
    Ok(d.coeff(q_place))
}

pub fn geodesic(v: &TreeVertex, w: &TreeVertex, q_place: &Place) -> Result<TreePath> {
    let n = local_distance(v, w, q_place)?;
    let g = Grid::new(v.lattice(), w.lattice());
    let vertices = (0..=n)
        .map(|i| {
            let idx = if n == 0 { vec![] } else { vec![i] };
            MaximalOrder::new(&g.vertex(&idx))
        })
        .collect();
    Ok(TreePath { vertices })
}

/// All vertices at distance exactly r from v, with the default depth bound.
pub fn sphere(v: &TreeVertex, q_place: &Place, r: usize) -> Result<Vec<TreeVertex>> {
    sphere_bounded(v, q_place, r, DEFAULT_DEPTH_BOUND)
}

pub fn sphere_bounded(
    v: &TreeVertex,
    q_place: &Place,
    r: usize,
    bound: usize,
) -> Result<Vec<TreeVertex>> {
    if r > bound {
        return Err(Error::DepthBound {
            requested: r,
            bound,
        });
    }
    // (vertex, parent)
    let mut frontier: Vec<(TreeVertex, Option<TreeVertex>)> = vec![(v.clone(), None)];
    for _ in 0..r {
        let mut next = Vec::new();
        for (x, parent) in &frontier {
            for y in x.neighbors(q_place) {
                if Some(&y) != parent.as_ref() {
                    next.push((y, Some(x.clone())));
                }
            }
        }
        frontier = next;
    }
    Ok(frontier.into_iter().map(|(x, _)| x).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::parse_divisor;
    use crate::funcfield::Divisor;
    use crate::orders::max_order_class;

    #[test]
    fn small_spheres() {
        let q = 2;
        let v = MaximalOrder::standard(q);
        let p = Place::Infinity;
        assert_eq!(sphere(&v, &p, 0).unwrap(), vec![v.clone()]);
        assert_eq!(sphere(&v, &p, 1).unwrap().len(), 3);
        assert_eq!(sphere(&v, &p, 2).unwrap().len(), 6);
        assert!(sphere(&v, &p, 17).is_err());
    }

    #[test]
    fn distance_and_geodesic() {
        let q = 2;
        let v = MaximalOrder::standard(q);
        let w = MaximalOrder::of_divisor(&Divisor::infinity(q, 2));
        let p = Place::Infinity;
        assert_eq!(local_distance(&v, &v, &p).unwrap(), 0);
        assert_eq!(local_distance(&v, &w, &p).unwrap(), 2);
        let path = geodesic(&v, &w, &p).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(max_order_class(&path.vertices[1]), 1);
        let back = geodesic(&w, &v, &p).unwrap();
        let mut rev = back.vertices.clone();
        rev.reverse();
        assert_eq!(rev, path.vertices);
        let x = MaximalOrder::of_divisor(&parse_divisor("t", q).unwrap());
        assert!(local_distance(&v, &x, &p).is_err());
    }
}
