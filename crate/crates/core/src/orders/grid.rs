//! Grids of maximal orders containing an Eichler order.
//!
//! Locally at P, if the invariant factors of Λ2 relative to Λ1 are (a, b),
//! the geodesic from Λ1 to Λ2 is L_i = Λ1 ∩ (π^-a Λ2 + π^i Λ1) for
//! 0 <= i <= b - a. Away from P this intersection returns Λ1 unchanged, so
//! the construction can be applied one place at a time.

use crate::funcfield::{Place, RatFn};
use crate::lattices::echelon::{self, Ring};
use crate::lattices::{local_invariant_factors, Lattice2};

/// The lattice `L ∩ (π^-a M + π^i L)`, changed only at `p`.
pub fn chain_step(l: &Lattice2, m: &Lattice2, p: &Place, a: i64, i: i64) -> Lattice2 {
    if i == 0 {
        return l.clone();
    }
    let q = l.q();
    let pi = p.uniformizer(q);
    let ring = if p.is_infinity() { Ring::Infinity } else { Ring::Poly };
    let lb = l.basis_at(p);
    let mb = m.basis_at(p);
    let s = echelon::sum(&mb.scale(&pi.pow(-a)), &lb.scale(&pi.pow(i)), ring);
    let x = echelon::intersection(lb, &s, ring);
    l.with_basis(ring, x)
}

/// The lattice chain between two lattices, described per place.
#[derive(Clone, Debug)]
pub struct Grid {
    /// Places of the level, in canonical order.
    pub places: Vec<Place>,
    /// Local distances α_P.
    pub alphas: Vec<i64>,
    /// Minimal local exponents a_P of Λ2 relative to Λ1.
    mins: Vec<i64>,
    l1: Lattice2,
    l2: Lattice2,
}

impl Grid {
    pub fn new(l1: &Lattice2, l2: &Lattice2) -> Grid {
        let level = crate::lattices::distance_divisor(l1, l2);
        let mut places = Vec::new();
        let mut alphas = Vec::new();
        let mut mins = Vec::new();
        for (p, n) in level.terms() {
            places.push(p.clone());
            alphas.push(n);
            mins.push(local_invariant_factors(l1, l2, p).0);
        }
        Grid {
            places,
            alphas,
            mins,
            l1: l1.clone(),
            l2: l2.clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.alphas.iter().map(|&a| (a + 1) as usize).product()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.alphas.iter().map(|&a| (a + 1) as usize).collect()
    }

    /// The vertex with local coordinates `idx` (0 <= idx[k] <= α_k); the
    /// origin is Λ1 and the far corner is contained in Λ1.
    pub fn vertex(&self, idx: &[i64]) -> Lattice2 {
        let mut l = self.l1.clone();
        for (k, p) in self.places.iter().enumerate() {
            l = chain_step(&l, &self.l2, p, self.mins[k], idx[k]);
        }
        l
    }

    /// All grid vertices in row-major order (last place fastest).
    pub fn vertices(&self) -> Vec<Lattice2> {
        self.indices().iter().map(|i| self.vertex(i)).collect()
    }

    pub fn indices(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &a in &self.alphas {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=a).map(move |i| {
                        let mut w = v.clone();
                        w.push(i);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Corner index for a choice of side per place (false = Λ1's side).
    pub fn corner_index(&self, sigma: &[bool]) -> Vec<i64> {
        sigma
            .iter()
            .zip(&self.alphas)
            .map(|(&s, &a)| if s { a } else { 0 })
            .collect()
    }

    pub fn corner(&self, sigma: &[bool]) -> Lattice2 {
        self.vertex(&self.corner_index(sigma))
    }

    /// All 2^k corner choices, in binary counting order.
    pub fn sigmas(&self) -> Vec<Vec<bool>> {
        let k = self.places.len();
        (0..1usize << k)
            .map(|m| (0..k).map(|j| m >> (k - 1 - j) & 1 == 1).collect())
            .collect()
    }
}

/// Scales a lattice at one place by π^n without changing it elsewhere.
pub fn local_scale(l: &Lattice2, p: &Place, n: i64) -> Lattice2 {
    let q = l.q();
    let ring = if p.is_infinity() { Ring::Infinity } else { Ring::Poly };
    let f: RatFn = p.uniformizer(q).pow(n);
    l.with_basis(ring, l.basis_at(p).scale(&f))
}
