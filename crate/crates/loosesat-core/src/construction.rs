use crate::error::DomainError;
use crate::hypergraph::{Hypergraph3, Triple, Vertex};

/// One brick of the extremal construction, with its fresh vertices by role.
/// Every brick shares exactly the two hub vertices `x = 0` and `y = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Brick {
    /// 4 fresh vertices, 6 edges.
    A {
        index: usize,
        ax: Vertex,
        ay: Vertex,
        a1: Vertex,
        a2: Vertex,
    },
    /// 5 fresh vertices, 9 edges.
    B {
        index: usize,
        bx: Vertex,
        by: Vertex,
        b1: Vertex,
        b2: Vertex,
        b3: Vertex,
    },
}

pub const HUB_X: Vertex = 0;
pub const HUB_Y: Vertex = 1;

impl Brick {
    /// The brick's own vertices, hubs included.
    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            Brick::A { ax, ay, a1, a2, .. } => vec![HUB_X, HUB_Y, ax, ay, a1, a2],
            Brick::B {
                bx, by, b1, b2, b3, ..
            } => vec![HUB_X, HUB_Y, bx, by, b1, b2, b3],
        }
    }

    /// The brick's edge list.
    pub fn edges(&self) -> Vec<Triple> {
        let (x, y) = (HUB_X, HUB_Y);
        match *self {
            Brick::A { ax, ay, a1, a2, .. } => vec![
                [x, ax, ay],
                [y, ax, ay],
                [x, ax, a1],
                [x, ax, a2],
                [y, ay, a1],
                [y, ay, a2],
            ],
            Brick::B {
                bx, by, b1, b2, b3, ..
            } => vec![
                [x, bx, by],
                [y, bx, by],
                [b1, b2, b3],
                [x, bx, b1],
                [y, by, b1],
                [x, bx, b2],
                [y, by, b2],
                [x, bx, b3],
                [y, by, b3],
            ],
        }
    }

    pub fn fresh_vertex_count(&self) -> usize {
        match self {
            Brick::A { .. } => 4,
            Brick::B { .. } => 5,
        }
    }
}

/// The unique decomposition n = 4m + c with 2 <= c <= 5.
fn decompose(n: usize) -> Result<(usize, usize), DomainError> {
    if n < 14 {
        return Err(DomainError::ConstructionTooSmall(n));
    }
    let c = (n - 2) % 4 + 2;
    let m = (n - c) / 4;
    Ok((m, c))
}

/// Edge count of the construction: 6(m+2-c) + 9(c-2) for n = 4m + c,
/// which works out to 3n/2, 3n/2 + 3/2, 3n/2 - 3 and 3n/2 - 3/2 for
/// n = 0, 1, 2, 3 (mod 4) respectively.
pub fn expected_edge_count(n: usize) -> Result<usize, DomainError> {
    let (m, c) = decompose(n)?;
    Ok(6 * (m + 2 - c) + 9 * (c - 2))
}

/// Builds the saturated construction on `n >= 14` vertices: `m + 2 - c`
/// A-bricks followed by `c - 2` B-bricks, all glued on the hubs `x = 0` and
/// `y = 1`, with brick vertices numbered consecutively by brick then role.
pub fn construct_gn(n: usize) -> Result<(Hypergraph3, Vec<Brick>), DomainError> {
    let (m, c) = decompose(n)?;
    let a_bricks = m + 2 - c;
    let b_bricks = c - 2;
    let mut bricks = Vec::with_capacity(a_bricks + b_bricks);
    let mut next: Vertex = 2;
    for index in 1..=a_bricks {
        bricks.push(Brick::A {
            index,
            ax: next,
            ay: next + 1,
            a1: next + 2,
            a2: next + 3,
        });
        next += 4;
    }
    for index in 1..=b_bricks {
        bricks.push(Brick::B {
            index,
            bx: next,
            by: next + 1,
            b1: next + 2,
            b2: next + 3,
            b3: next + 4,
        });
        next += 5;
    }
    debug_assert_eq!(next, n);
    let triples: Vec<Triple> = bricks.iter().flat_map(|b| b.edges()).collect();
    let g = Hypergraph3::build(n, &triples)?;
    Ok((g, bricks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saturation::{is_free, verify_saturated};
    use crate::triangle::find_triangle;

    #[test]
    fn rejects_small_n() {
        for n in 0..14 {
            assert!(construct_gn(n).is_err());
            assert!(expected_edge_count(n).is_err());
        }
    }

    #[test]
    fn edge_counts_by_residue() {
        assert_eq!(expected_edge_count(14).unwrap(), 18);
        assert_eq!(expected_edge_count(15).unwrap(), 21);
        assert_eq!(expected_edge_count(16).unwrap(), 24);
        assert_eq!(expected_edge_count(17).unwrap(), 27);
        assert_eq!(expected_edge_count(20).unwrap(), 30);
        for n in 14..=500 {
            let e = expected_edge_count(n).unwrap();
            let closed = match n % 4 {
                0 => 3 * n / 2,
                1 => (3 * n + 3) / 2,
                2 => 3 * n / 2 - 3,
                _ => (3 * n - 3) / 2,
            };
            assert_eq!(e, closed, "n={}", n);
        }
    }

    #[test]
    fn brick_counts() {
        let (g14, bricks14) = construct_gn(14).unwrap();
        assert_eq!(g14.n(), 14);
        assert_eq!(g14.edge_count(), 18);
        assert_eq!(bricks14.len(), 3);
        assert!(bricks14.iter().all(|b| matches!(b, Brick::A { .. })));

        let (g16, bricks16) = construct_gn(16).unwrap();
        assert_eq!(g16.edge_count(), 24);
        let a = bricks16
            .iter()
            .filter(|b| matches!(b, Brick::A { .. }))
            .count();
        assert_eq!((a, bricks16.len() - a), (1, 2));
    }

    #[test]
    fn g16_degrees_and_codegrees() {
        let (g, _) = construct_gn(16).unwrap();
        // x sits in 3 edges of the A-brick and 4 of each B-brick
        assert_eq!(g.degree(HUB_X).unwrap(), 11);
        assert_eq!(g.degree(HUB_Y).unwrap(), 11);
        // first A-brick: ax = 2
        assert_eq!(g.codegree(HUB_X, 2).unwrap(), 3);
        assert_eq!(g.codegree(HUB_X, HUB_Y).unwrap(), 0);
    }

    #[test]
    fn hubs_never_coincide_in_an_edge() {
        for n in [14, 17, 23, 40] {
            let (g, _) = construct_gn(n).unwrap();
            assert_eq!(g.codegree(HUB_X, HUB_Y).unwrap(), 0);
        }
    }

    #[test]
    fn every_brick_contains_a_hub_link() {
        for n in [14, 16, 17, 25] {
            let (g, bricks) = construct_gn(n).unwrap();
            for b in bricks {
                let verts = b.vertices();
                let link = g.find_link(HUB_X, HUB_Y, &[]).unwrap();
                assert!(link.is_some());
                // a link within this brick alone
                let sub = Hypergraph3::build(g.n(), &b.edges()).unwrap();
                let l = sub.find_link(HUB_X, HUB_Y, &[]).unwrap().expect("brick link");
                l.validate(&sub).unwrap();
                assert!(verts.contains(&l.center));
            }
        }
    }

    #[test]
    fn no_brick_contains_a_triangle() {
        let (_, bricks) = construct_gn(17).unwrap();
        let (_, bricks14) = construct_gn(14).unwrap();
        for b in bricks.iter().chain(bricks14.iter()) {
            let sub = Hypergraph3::build(25, &b.edges()).unwrap();
            assert!(find_triangle(&sub).is_none());
        }
    }

    #[test]
    fn cross_brick_links_must_pass_through_hubs() {
        let (g, _) = construct_gn(16).unwrap();
        // a1 of the A-brick is vertex 4, b1 of the first B-brick is vertex 8
        assert!(g.find_link(4, 8, &[HUB_X, HUB_Y]).unwrap().is_none());
        assert!(g.find_link(4, 8, &[]).unwrap().is_some());
    }

    #[test]
    fn small_instances_are_saturated() {
        for n in [14, 15, 16, 17] {
            let (g, _) = construct_gn(n).unwrap();
            assert!(is_free(&g), "n={}", n);
            assert!(verify_saturated(&g).is_saturated(), "n={}", n);
        }
    }
}
