use super::QuotientGraph;

fn adjacency(g: &QuotientGraph) -> Vec<Vec<usize>> {
    let n = g.vertices.len();
    let mut a = vec![vec![0; n]; n];
    for e in &g.edges {
        a[e.src][e.dst] += 1;
    }
    a
}

/// Isomorphism of graph windows respecting class invariants, splitness,
/// half-edges and edge multiplicities. Backtracking over vertices in order.
pub fn is_isomorphic(g1: &QuotientGraph, g2: &QuotientGraph) -> bool {
    let n = g1.vertices.len();
    if n != g2.vertices.len()
        || g1.edges.len() != g2.edges.len()
        || g1.half_edges.len() != g2.half_edges.len()
    {
        return false;
    }
    let color = |g: &QuotientGraph, v: usize| {
        let x = &g.vertices[v];
        (x.invariant.clone(), x.split, g.half_edges_at(v).count(), g.valency(v))
    };
    let c1: Vec<_> = (0..n).map(|v| color(g1, v)).collect();
    let c2: Vec<_> = (0..n).map(|v| color(g2, v)).collect();
    let a1 = adjacency(g1);
    let a2 = adjacency(g2);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize, &[usize]) -> bool,
    ) -> bool {
        if i == map.len() {
            return true;
        }
        for j in 0..map.len() {
            if used[j] || !ok(i, j, map) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if go(i + 1, map, used, ok) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }
    let ok = |i: usize, j: usize, map: &[usize]| {
        c1[i] == c2[j]
            && a1[i][i] == a2[j][j]
            && (0..i).all(|k| a1[i][k] == a2[j][map[k]] && a1[k][i] == a2[map[k]][j])
    };
    go(0, &mut map, &mut used, &ok)
}
