use crate::error::{Error, Result};
use crate::funcfield::{rr_dim, Divisor, Place};

/// Valency at Q of the vertex of the split order E[B, B2] in its S-graph.
///
/// After swapping so that deg B > 0, the unipotent global sections act on
/// the Q-neighbours, identified with P^1(F(Q)), by translations through the
/// image W of L^-B2 in F(Q), and the diagonal units by F_q^* scalings. The
/// orbits are {inf}, {W} and the F_q^*-orbits of F(Q)/W minus zero.
pub fn sgraph_split_valency(b: &Divisor, b2: &Divisor, place: &Place) -> Result<usize> {
    let s = b + b2;
    if !s.is_effective() {
        return Err(Error::NotEffective(s.to_string()));
    }
    if s.is_zero() {
        return Err(Error::ZeroLevel);
    }
    let (_, b2) = if b.degree() > 0 { (b, b2) } else { (b2, b) };
    let q = b.q() as usize;
    let d = place.degree();
    let minus = -b2;
    let qd = Divisor::place(b.q(), place.clone());
    let r = rr_dim(&minus) - rr_dim(&(&minus - &qd));
    debug_assert!(r <= d);
    Ok(2 + (q.pow((d - r) as u32) - 1) / (q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::{parse_divisor, parse_place};

    #[test]
    fn small_cases() {
        let q = 2;
        let d = |s: &str| parse_divisor(s, q).unwrap();
        let p3 = parse_place("t+1", q).unwrap();
        assert_eq!(sgraph_split_valency(&d("inf"), &d("t"), &p3).unwrap(), 3);
        assert_eq!(sgraph_split_valency(&d("t"), &d("inf"), &p3).unwrap(), 3);
        assert_eq!(sgraph_split_valency(&d("inf + 3*t"), &d("-2*t"), &p3).unwrap(), 2);
        assert_eq!(sgraph_split_valency(&d("0"), &d("0"), &p3), Err(Error::ZeroLevel));
    }
}
