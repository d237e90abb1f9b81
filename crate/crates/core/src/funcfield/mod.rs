//! Exact arithmetic in F_q, F_q[t] and K = F_q(t), places and divisors
//! of P^1, and Riemann–Roch spaces.

pub mod divisor;
pub mod factor;
pub mod fq;
pub mod parse;
pub mod poly;
pub mod ratfn;

pub use divisor::{Divisor, Place};
pub use fq::Fq;
pub use poly::Poly;
pub use ratfn::RatFn;

use crate::error::Result;

/// Order of vanishing of `f` at `place`.
pub fn valuation(f: &RatFn, place: &Place) -> Result<i64> {
    place.valuation(f)
}

/// The canonical F_q-basis of L^B(P^1) = {f : div(f) + B >= 0} ∪ {0}:
/// `t^i / prod p^(n_p)` for `0 <= i <= deg B`, empty when `deg B < 0`.
pub fn rr_space(b: &Divisor) -> Vec<RatFn> {
    let q = b.q();
    let g = b.finite_generator();
    (0..=b.degree())
        .map(|i| &g * &RatFn::t_pow(q, i))
        .collect()
}

/// dim L^B(P^1).
pub fn rr_dim(b: &Divisor) -> usize {
    (b.degree() + 1).max(0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn in_space(f: &RatFn, b: &Divisor) -> bool {
        let d = Divisor::principal(f).unwrap();
        (&d + b).is_effective()
    }

    #[test]
    fn rr_examples() {
        let q = 2;
        assert_eq!(rr_space(&Divisor::zero(q)), vec![RatFn::one(q)]);
        let two_inf = Divisor::infinity(q, 2);
        assert_eq!(
            rr_space(&two_inf),
            vec![RatFn::one(q), RatFn::t(q), RatFn::t_pow(q, 2)]
        );
        assert!(rr_space(&Divisor::infinity(q, -1)).is_empty());
    }

    #[test]
    fn rr_brute_force_monomials() {
        // B = (t) + inf over F_2: scan Laurent monomials t^j and keep those
        // satisfying div + B >= 0.
        let q = 2;
        let b = parse::parse_divisor("t + inf", q).unwrap();
        let found: Vec<RatFn> = (-6..=6)
            .map(|j| RatFn::t_pow(q, j))
            .filter(|f| in_space(f, &b))
            .collect();
        assert_eq!(
            found,
            vec![RatFn::t_pow(q, -1), RatFn::one(q), RatFn::t(q)]
        );
        assert_eq!(rr_space(&b), found);
    }

    #[test]
    fn rr_basis_members_satisfy_bound() {
        let q = 3;
        let b = parse::parse_divisor("2*(t^2+1) - (t) + inf", q).unwrap();
        let basis = rr_space(&b);
        assert_eq!(basis.len(), rr_dim(&b));
        for f in &basis {
            assert!(in_space(f, &b));
        }
    }
}
