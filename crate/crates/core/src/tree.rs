//! Finite balls of the homogeneous tree of degree `q + 1`.
//!
//! The ball `B_R(o)` is stored implicitly: vertices are numbered in
//! breadth-first order starting from the root `o = 0`, and the children of
//! every vertex occupy a contiguous index range. Only the layer boundaries and
//! the parent links are materialised; everything else (children, descendants,
//! spheres) is index arithmetic.

use std::ops::Range;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// The radius-`R` ball around a fixed root in the `(q+1)`-homogeneous tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeBall {
    q: u32,
    radius: usize,
    /// `layer_offsets[m]..layer_offsets[m + 1]` is layer `m`; `R + 2` entries.
    layer_offsets: Vec<usize>,
    /// Parent of every vertex; the root points at itself.
    parent: Vec<Vertex>,
}

/// Number of vertices at distance exactly `m` from any vertex.
pub fn sphere_size(q: u32, m: usize) -> Option<usize> {
    if m == 0 {
        return Some(1);
    }
    let q = q as usize;
    let exp = u32::try_from(m - 1).ok()?;
    q.checked_pow(exp)?.checked_mul(q + 1)
}

/// Number of vertices at distance at most `r` from any vertex.
pub fn ball_size(q: u32, r: usize) -> Option<usize> {
    (0..=r).try_fold(0usize, |acc, m| acc.checked_add(sphere_size(q, m)?))
}

impl TreeBall {
    /// Builds the ball of radius `radius` in the tree of degree `q + 1`.
    pub fn new(q: u32, radius: usize) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidParameter(format!("q must be at least 1, got {q}")));
        }
        let too_big = || Error::InvalidParameter(format!("ball q={q}, R={radius} is too large"));
        let mut layer_offsets: Vec<usize> = Vec::with_capacity(radius + 2);
        layer_offsets.push(0);
        for m in 0..=radius {
            let size = sphere_size(q, m).ok_or_else(too_big)?;
            let next = layer_offsets[m].checked_add(size).ok_or_else(too_big)?;
            layer_offsets.push(next);
        }
        let len = layer_offsets[radius + 1];
        let mut parent = Vec::with_capacity(len);
        parent.push(0);
        for m in 1..=radius {
            let start = layer_offsets[m];
            for v in start..layer_offsets[m + 1] {
                let p = if m == 1 {
                    0
                } else {
                    layer_offsets[m - 1] + (v - start) / q as usize
                };
                parent.push(p);
            }
        }
        Ok(TreeBall {
            q,
            radius,
            layer_offsets,
            parent,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Total number of vertices in the ball.
    pub fn len(&self) -> usize {
        self.layer_offsets[self.radius + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn layer_offsets(&self) -> &[usize] {
        &self.layer_offsets
    }

    /// Number of vertices of the sub-ball `B_r(o)`, `r <= R`.
    pub fn ball_len(&self, r: usize) -> usize {
        self.layer_offsets[r.min(self.radius) + 1]
    }

    /// Index range of the vertices at distance `m` from the root.
    pub fn layer(&self, m: usize) -> Range<Vertex> {
        self.layer_offsets[m]..self.layer_offsets[m + 1]
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                index: v,
                len: self.len(),
            })
        }
    }

    /// Distance from the root.
    pub fn depth(&self, v: Vertex) -> Result<usize> {
        self.check(v)?;
        Ok(self.depth_unchecked(v))
    }

    pub(crate) fn depth_unchecked(&self, v: Vertex) -> usize {
        self.layer_offsets.partition_point(|&off| off <= v) - 1
    }

    pub fn parent(&self, v: Vertex) -> Result<Option<Vertex>> {
        self.check(v)?;
        Ok((v != 0).then(|| self.parent[v]))
    }

    /// Children of `v` inside the ball (empty on the outermost layer).
    pub fn children(&self, v: Vertex) -> Result<Range<Vertex>> {
        let m = self.depth(v)?;
        if m == self.radius {
            return Ok(0..0);
        }
        Ok(self.descendant_range(v, m, 1))
    }

    /// Descendants of `v` (at depth `depth`) lying `j` layers further out.
    /// Caller guarantees `depth + j <= R`.
    pub(crate) fn descendant_range(&self, v: Vertex, depth: usize, j: usize) -> Range<Vertex> {
        if j == 0 {
            return v..v + 1;
        }
        let target = depth + j;
        if v == 0 {
            return self.layer(target);
        }
        let width = (self.q as usize).pow(j as u32);
        let rank = v - self.layer_offsets[depth];
        let start = self.layer_offsets[target] + rank * width;
        start..start + width
    }

    /// Length of the unique path between `u` and `v`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        let (mut a, mut b) = (u, v);
        let (mut da, mut db) = (self.depth_unchecked(a), self.depth_unchecked(b));
        let mut dist = 0;
        while da > db {
            a = self.parent[a];
            da -= 1;
            dist += 1;
        }
        while db > da {
            b = self.parent[b];
            db -= 1;
            dist += 1;
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            dist += 2;
        }
        Ok(dist)
    }

    /// Calls `visit` with contiguous index ranges that together make up the
    /// sphere `S_k(v)`, each vertex exactly once. `depth` must be the depth of
    /// `v` and `depth + k <= R`.
    pub(crate) fn for_each_sphere_range(
        &self,
        v: Vertex,
        depth: usize,
        k: usize,
        mut visit: impl FnMut(Range<Vertex>),
    ) {
        visit(self.descendant_range(v, depth, k));
        let mut anc = v;
        for j in 1..=k.min(depth) {
            let below = anc;
            anc = self.parent[anc];
            let anc_depth = depth - j;
            if j == k {
                visit(anc..anc + 1);
            } else {
                let full = self.descendant_range(anc, anc_depth, k - j);
                let skip = self.descendant_range(below, anc_depth + 1, k - j - 1);
                visit(full.start..skip.start);
                visit(skip.end..full.end);
            }
        }
    }

    /// All vertices at distance exactly `k` from `v`, in increasing index order
    /// within each branch.
    pub fn sphere(&self, v: Vertex, k: usize) -> Result<Vec<Vertex>> {
        let depth = self.depth(v)?;
        if depth + k > self.radius {
            return Err(Error::SphereOutOfRange {
                depth,
                k,
                radius: self.radius,
            });
        }
        let mut out = Vec::new();
        self.for_each_sphere_range(v, depth, k, |r| out.extend(r));
        Ok(out)
    }

    /// The `q^k` vertices `s` with `d(v, s) = k` and `d(o, s) = d(o, v) + k`,
    /// i.e. the depth-`k` descendants of a non-root vertex `v`.
    pub fn outward_cone(&self, v: Vertex, k: usize) -> Result<Vec<Vertex>> {
        let depth = self.depth(v)?;
        if depth == 0 {
            return Err(Error::InvalidParameter(
                "outward cone is defined for non-root vertices".into(),
            ));
        }
        if depth + k > self.radius {
            return Err(Error::SphereOutOfRange {
                depth,
                k,
                radius: self.radius,
            });
        }
        Ok(self.descendant_range(v, depth, k).collect())
    }
}
