#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use treewave::random::RandomRationals;
use treewave::wave::{propagate, CauchyData};
use treewave::{Result, TreeBall, TreeFunction, Vertex};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ball(q: u32, r: usize) -> Arc<TreeBall> {
    Arc::new(TreeBall::new(q, r).unwrap())
}

pub fn random_wave(b: &Arc<TreeBall>, seed: u64) -> CauchyData {
    let r = b.radius();
    let mut rng = RandomRationals::new(seed);
    CauchyData::new(rng.function(b, r).unwrap(), rng.function(b, r).unwrap()).unwrap()
}

/// Equality on the common domain.
pub fn agree(a: &TreeFunction, b: &TreeFunction) -> bool {
    let r = a.domain_radius().min(b.domain_radius());
    a.restrict(r).unwrap() == b.restrict(r).unwrap()
}

/// Snapshots at `0, k, l`, all cut to the domain of `f_l`.
pub fn triple(c: &CauchyData, k: usize, l: usize) -> [TreeFunction; 3] {
    let h = propagate(c, l as i64).unwrap();
    let r = h.domain_radius();
    [
        c.f0().restrict(r).unwrap(),
        propagate(c, k as i64).unwrap().restrict(r).unwrap(),
        h,
    ]
}

/// Explicit adjacency lists grown breadth first: the root gets `q + 1`
/// children, every other vertex `q`, numbered in visiting order.
pub fn adjacency(q: usize, r: usize) -> Vec<Vec<Vertex>> {
    let mut adj: Vec<Vec<Vertex>> = vec![vec![]];
    let mut frontier = vec![0];
    for _ in 0..r {
        let mut next = vec![];
        for &v in &frontier {
            let kids = if v == 0 { q + 1 } else { q };
            for _ in 0..kids {
                let w = adj.len();
                adj.push(vec![v]);
                adj[v].push(w);
                next.push(w);
            }
        }
        frontier = next;
    }
    adj
}

/// Distances from `src` by breadth-first search.
pub fn bfs_distances(adj: &[Vec<Vertex>], src: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A function `z` on `B_R` with `op(z) = 0` on `B_{rows}` and `z(o) = 1`, found
/// by exact Gaussian elimination on the matrix whose columns are `op` applied
/// to point masses. Columns are ordered outermost first so that inner
/// vertices end up free; returns `None` if the root is a pivot column.
pub fn kernel_vector<F>(b: &Arc<TreeBall>, rows: usize, op: F) -> Result<Option<TreeFunction>>
where
    F: Fn(&TreeFunction) -> Result<TreeFunction>,
{
    let n = b.len();
    let m = b.ball_len(rows);
    let order: Vec<Vertex> = (0..n).rev().collect();
    let mut mat = vec![vec![BigRational::zero(); n]; m];
    for (j, &v) in order.iter().enumerate() {
        let col = op(&TreeFunction::delta(b.clone(), b.radius(), v)?)?;
        for (i, row) in mat.iter_mut().enumerate() {
            row[j] = col.values()[i].clone();
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    let root_col = n - 1;
    if pivots.contains(&root_col) {
        return Ok(None);
    }
    let mut z = vec![BigRational::zero(); n];
    z[0] = BigRational::one();
    for (row, &c) in pivots.iter().enumerate() {
        z[order[c]] = -mat[row][root_col].clone();
    }
    Ok(Some(TreeFunction::new(b.clone(), b.radius(), z)?))
}
