//! Lattice points in strictly convex, roughly circular position.

use std::cmp::Ordering;

use crate::geometry::{bounding_box, Point};

/// `m` lattice points on a closed convex chain, listed clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSlots {
    points: Vec<Point>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Clockwise angular order starting at direction `(1, 0)`.
fn clockwise(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| u8::from(p.y > 0 || (p.y == 0 && p.x < 0));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = i128::from(a.x) * i128::from(b.y) - i128::from(a.y) * i128::from(b.x);
        cross.cmp(&0)
    })
}

fn primitive_within(r: i64) -> Vec<(i64, Point)> {
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let n = x * x + y * y;
            if n > 0 && n <= r * r && gcd(x, y) == 1 {
                out.push((n, Point::new(x, y)));
            }
        }
    }
    out
}

impl ConvexSlots {
    /// Sorts primitive vectors of bounded norm clockwise and chains them; the
    /// vector set is centrally symmetric, so the chain closes.
    pub fn new(m: usize) -> Self {
        assert!(m >= 3, "need at least three slots");
        let mut r = ((m as f64 / 1.5).sqrt().ceil() as i64).max(2);
        let mut vecs = primitive_within(r);
        while vecs.len() < m {
            r = r * 3 / 2 + 1;
            vecs = primitive_within(r);
        }
        vecs.sort_unstable_by_key(|v| v.0);
        let cut = vecs[m - 1].0;
        let mut dirs: Vec<Point> = vecs.into_iter().take_while(|v| v.0 <= cut).map(|v| v.1).collect();
        dirs.sort_by(clockwise);
        let mut points = Vec::with_capacity(m);
        let mut cur = Point::new(0, 0);
        for d in dirs.iter().take(m) {
            points.push(cur);
            cur = Point::new(cur.x + d.x, cur.y + d.y);
        }
        let (lo, _) = bounding_box(points.iter().copied()).expect("non-empty");
        for p in &mut points {
            *p = Point::new(p.x - lo.x, p.y - lo.y);
        }
        ConvexSlots { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, slot: u64) -> Point {
        self.points[slot as usize]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Bounding-box area.
    pub fn area(&self) -> u128 {
        crate::geometry::area_of(self.points.iter().copied())
    }
}

/// Whether the closed polygon through `points` turns strictly clockwise at
/// every vertex and winds exactly once.
pub fn strictly_convex(points: &[Point]) -> bool {
    let m = points.len();
    if m < 3 {
        return false;
    }
    let mut turn = 0i128;
    for i in 0..m {
        let (a, b, c) = (points[i], points[(i + 1) % m], points[(i + 2) % m]);
        if crate::geometry::orient(a, b, c) >= 0 {
            return false;
        }
        let e = Point::new(b.x - a.x, b.y - a.y);
        let f = Point::new(c.x - b.x, c.y - b.y);
        // Count crossings of the edge directions through the +x axis.
        if clockwise(&e, &f) == Ordering::Greater {
            turn += 1;
        }
    }
    turn == 1
}
