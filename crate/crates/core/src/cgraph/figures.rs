//! Named figure windows and their expected shapes. Places are named by
//! the canonical order of degree-one places: P1 = inf, P2 = (t), P3 = (t+1).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcfield::{Divisor, Place};
use crate::orders::{f_order, split_order, EichlerOrder, MaximalOrder};

use super::{build_cgraph, default_seeds, standard_places, QuotientGraph};

pub const FIGURES: &[&str] = &["fig1a", "fig1c", "fig1d", "fig4b"];

pub fn figure_setting(id: &str, q: u8) -> Result<(Divisor, Place)> {
    let p = standard_places(q);
    let pt = |i: usize| Divisor::place(q, p[i].clone());
    Ok(match id {
        "fig1a" => (Divisor::zero(q), p[0].clone()),
        "fig1c" => (pt(0), p[1].clone()),
        "fig1d" => (&pt(0) + &pt(1), p[2].clone()),
        "fig4b" => (pt(0).scale(2), p[1].clone()),
        _ => return Err(Error::Invalid(format!("unknown figure id {id}"))),
    })
}

/// The window of a named figure from the default seeds.
pub fn figure_graph(id: &str, q: u8, depth: usize) -> Result<QuotientGraph> {
    let (level, place) = figure_setting(id, q)?;
    build_cgraph(&level, &place, depth, &default_seeds(&level, &place)?)
}

/// Vertex ids of the classes of `orders`, if all are present and
/// consecutive ones are adjacent.
pub fn find_path(g: &QuotientGraph, orders: &[EichlerOrder]) -> Option<Vec<usize>> {
    let ids: Vec<usize> = orders.iter().map(|o| g.find_class(o)).collect::<Option<_>>()?;
    let adjacent = ids.windows(2).all(|w| g.neighbors(w[0]).contains(&w[1]));
    adjacent.then_some(ids)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureCheck {
    pub id: String,
    pub pass: bool,
    pub notes: Vec<String>,
}

struct Checker {
    pass: bool,
    notes: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: String) {
        self.notes.push(format!("{}: {what}", if ok { "ok" } else { "FAILED" }));
        self.pass &= ok;
    }
}

/// Orders E[B + nQ', B2 - nQ'] for n = 0..=count.
fn shifted(b: &Divisor, b2: &Divisor, step: &Divisor, count: usize) -> Result<Vec<EichlerOrder>> {
    (0..=count as i64)
        .map(|n| split_order(&(b + &step.scale(n)), &(b2 - &step.scale(n))))
        .collect()
}

fn is_line(g: &QuotientGraph) -> bool {
    g.vertices.iter().all(|v| g.neighbors(v.id).len() <= 2)
        && g.edges.iter().all(|e| e.src != e.dst)
        && g.edges.len() == 2 * (g.vertices.len().saturating_sub(1))
}

/// Compares a built window with the expected classes, adjacencies,
/// half-edges and splitness of the named figure.
pub fn check_figure(id: &str, g: &QuotientGraph) -> Result<FigureCheck> {
    let q = g.meta.q;
    let depth = g.meta.depth;
    let p = standard_places(q);
    let pt = |i: usize| Divisor::place(q, p[i].clone());
    let zero = Divisor::zero(q);
    let mut c = Checker {
        pass: true,
        notes: Vec::new(),
    };
    c.check(g.check_axioms(), "reverse-edge axioms".into());
    c.check(is_line(g), "window is a simple path".into());
    match id {
        "fig1a" => {
            let orders: Vec<EichlerOrder> = (0..=depth as i64)
                .map(|n| EichlerOrder::maximal(&MaximalOrder::of_divisor(&pt(0).scale(n))))
                .collect();
            c.check(find_path(g, &orders).is_some(), format!("path D_0 .. D_{depth}"));
            c.check(g.vertices.len() == depth + 1, format!("{} vertices", g.vertices.len()));
            c.check(g.half_edges.is_empty(), "no half-edges".into());
        }
        "fig1c" => {
            let orders = shifted(&pt(0), &zero, &pt(1), depth)?;
            let path = find_path(g, &orders);
            c.check(path.is_some(), format!("ray E[P1 + nP2, -nP2], n = 0..{depth}"));
            c.check(g.vertices.len() == depth + 1, format!("{} vertices", g.vertices.len()));
            let at: Vec<usize> = g.half_edges.iter().map(|h| h.vertex).collect();
            let first = path.map(|x| x[0]);
            c.check(at.len() == 1 && Some(at[0]) == first, "one half-edge, at E[P1, 0]".into());
        }
        "fig1d" => {
            let orders = shifted(&pt(0), &pt(1), &pt(2), depth)?;
            let path = find_path(g, &orders);
            c.check(path.is_some(), format!("ray E[P1 + nP3, P2 - nP3], n = 0..{depth}"));
            let at: Vec<usize> = g.half_edges.iter().map(|h| h.vertex).collect();
            let first = path.map(|x| x[0]);
            c.check(at.len() == 1 && Some(at[0]) == first, "one half-edge, at E[P1, P2]".into());
            c.check(g.vertices.iter().all(|v| v.split), "every class split".into());
        }
        "fig4b" => {
            let pp = &p[0];
            let mut orders = Vec::new();
            for r in (0..3).rev() {
                orders.push(f_order(r, pp, q)?);
            }
            orders.push(split_order(&pt(0), &pt(0))?);
            orders.push(split_order(&pt(0).scale(2), &zero)?);
            orders.push(split_order(&pt(0).scale(3), &(-&pt(0)))?);
            let path = find_path(g, &orders);
            c.check(path.is_some(), "line F2, F1, F0, E[P,P], E[2P,0], E[3P,-P]".into());
            if let Some(ids) = path {
                let flags: Vec<bool> = ids.iter().map(|&i| g.vertices[i].split).collect();
                let want = [false, false, false, true, true, true];
                c.check(flags == want, format!("splitness {flags:?}"));
            }
            c.check(g.half_edges.is_empty(), "no half-edges".into());
        }
        _ => return Err(Error::Invalid(format!("unknown figure id {id}"))),
    }
    Ok(FigureCheck {
        id: id.to_string(),
        pass: c.pass,
        notes: c.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_windows_pass() {
        for id in FIGURES {
            let g = figure_graph(id, 2, 4).unwrap();
            let r = check_figure(id, &g).unwrap();
            assert!(r.pass, "{id}: {:?}", r.notes);
        }
        assert!(figure_graph("fig9", 2, 3).is_err());
    }
}
