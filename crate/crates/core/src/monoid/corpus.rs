//! Small affine monoids used by tests and the acceptance suite.
//!
//! An affine monoid is locally monogenic exactly when its cone is a ray or
//! the whole ambient span (otherwise some generator sits on a proper face),
//! so the locally monogenic corpus consists of numerical semigroups, rays in
//! higher rank, and lattices with assorted generating sets.

use super::affine::AffineMonoid;

fn m(rank: usize, gens: &[&[i64]]) -> AffineMonoid {
    AffineMonoid::new(rank, gens.iter().map(|g| g.to_vec()).collect()).expect("corpus entries are well formed")
}

/// Locally monogenic affine monoids of rank at most 3.
pub fn locally_monogenic_corpus() -> Vec<(String, AffineMonoid)> {
    let entries = vec![
        ("N", m(1, &[&[1]])),
        ("<2,3>", m(1, &[&[2], &[3]])),
        ("<3,5>", m(1, &[&[3], &[5]])),
        ("<3,4,5>", m(1, &[&[3], &[4], &[5]])),
        ("<4,6,9>", m(1, &[&[4], &[6], &[9]])),
        ("<5,7>", m(1, &[&[5], &[7]])),
        ("<2,4>", m(1, &[&[2], &[4]])),
        ("<6,10,15>", m(1, &[&[6], &[10], &[15]])),
        ("Z", AffineMonoid::lattice(1)),
        ("<-2,3>", m(1, &[&[-2], &[3]])),
        ("<-3,5>", m(1, &[&[-3], &[5]])),
        ("ray (1,2)", m(2, &[&[1, 2]])),
        ("ray <(2,4),(3,6)>", m(2, &[&[2, 4], &[3, 6]])),
        ("ray <(1,-1,2),(2,-2,4)>", m(3, &[&[1, -1, 2], &[2, -2, 4]])),
        ("ray <(2,0,2),(3,0,3)>", m(3, &[&[2, 0, 2], &[3, 0, 3]])),
        ("Z^2", AffineMonoid::lattice(2)),
        ("<(1,0),(0,1),(-1,-1)>", m(2, &[&[1, 0], &[0, 1], &[-1, -1]])),
        ("<(2,0),(0,3),(-1,-1)>", m(2, &[&[2, 0], &[0, 3], &[-1, -1]])),
        ("<(1,2),(-1,0),(0,-1)>", m(2, &[&[1, 2], &[-1, 0], &[0, -1]])),
        (
            "<(2,0),(-2,0),(1,1),(-1,-1)>",
            m(2, &[&[2, 0], &[-2, 0], &[1, 1], &[-1, -1]]),
        ),
        ("Z^3", AffineMonoid::lattice(3)),
        (
            "<e1,e2,e3,-(e1+e2+e3)>",
            m(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]),
        ),
        (
            "<(1,1,0),(0,1,1),(1,0,1),(-1,-1,-1)>",
            m(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1], &[-1, -1, -1]]),
        ),
        (
            "plane <(1,0,1),(0,1,1),(-1,-1,-2)>",
            m(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, -1, -2]]),
        ),
    ];
    entries.into_iter().map(|(n, m)| (n.to_string(), m)).collect()
}

/// Affine monoids that are not locally monogenic.
pub fn non_monogenic_corpus() -> Vec<(String, AffineMonoid)> {
    let entries = vec![
        ("N^2", AffineMonoid::free(2)),
        ("N^3", AffineMonoid::free(3)),
        ("<(1,1),(1,2)>", m(2, &[&[1, 1], &[1, 2]])),
        ("N x Z", m(2, &[&[1, 0], &[0, 1], &[0, -1]])),
    ];
    entries.into_iter().map(|(n, m)| (n.to_string(), m)).collect()
}
