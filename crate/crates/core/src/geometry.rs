//! Exact integer geometry: points, rationals, segment predicates and the
//! planarity audit.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Reduced fraction with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ratio {
    pub num: i128,
    pub den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Ratio { num: s * num / g, den: s * den / g }
    }

    pub fn int(v: i128) -> Self {
        Ratio { num: v, den: 1 }
    }

    pub fn floor(self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(self) -> i128 {
        -(-self.num).div_euclid(self.den)
    }

    pub fn abs(self) -> Self {
        Ratio { num: self.num.abs(), den: self.den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::ops::Add for Ratio {
    type Output = Ratio;
    fn add(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }
}

impl std::ops::Sub for Ratio {
    type Output = Ratio;
    fn sub(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }
}

impl std::ops::Mul for Ratio {
    type Output = Ratio;
    fn mul(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.num, self.den * o.den)
    }
}

impl std::ops::Div for Ratio {
    type Output = Ratio;
    fn div(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den, self.den * o.num)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, o: &Ratio) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Ratio {
    fn cmp(&self, o: &Ratio) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Sign of the turn `a -> b -> c`: positive for counter-clockwise.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (i128::from(a.x), i128::from(a.y));
    let (bx, by) = (i128::from(b.x), i128::from(b.y));
    let (cx, cy) = (i128::from(c.x), i128::from(c.y));
    ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)).signum()
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    /// Interiors cross at a single point.
    Crossing,
    /// An endpoint of one segment lies in the other's interior.
    Touching,
    /// Collinear with a shared stretch of positive length.
    Overlap,
    /// A segment of zero length.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: usize,
    pub b: usize,
    pub kind: ViolationKind,
    /// Crossing point, when the kind has a single one.
    pub at: Option<(Ratio, Ratio)>,
}

/// Classifies how two segments meet. Sharing exactly one endpoint is fine.
pub fn segment_conflict(s: (Point, Point), t: (Point, Point)) -> Option<(ViolationKind, Option<(Ratio, Ratio)>)> {
    let (a, b) = s;
    let (c, d) = t;
    if a == b || c == d {
        return Some((ViolationKind::Degenerate, None));
    }
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 == 0 && o2 == 0 {
        // Collinear: compare the projections on the dominant axis.
        let key = |p: Point| if a.x != b.x { p.x } else { p.y };
        let (lo1, hi1) = (key(a).min(key(b)), key(a).max(key(b)));
        let (lo2, hi2) = (key(c).min(key(d)), key(c).max(key(d)));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(&hi) {
            Ordering::Greater => None,
            Ordering::Less => Some((ViolationKind::Overlap, None)),
            Ordering::Equal => {
                let shared = [a, b].iter().any(|p| *p == c || *p == d);
                if shared {
                    None
                } else {
                    Some((ViolationKind::Touching, None))
                }
            }
        };
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Some((ViolationKind::Crossing, Some(crossing_point(a, b, c, d))));
    }
    let shared = a == c || a == d || b == c || b == d;
    let touches = (o1 == 0 && on_segment(c, a, b))
        || (o2 == 0 && on_segment(d, a, b))
        || (o3 == 0 && on_segment(a, c, d))
        || (o4 == 0 && on_segment(b, c, d));
    if touches && !shared {
        return Some((ViolationKind::Touching, None));
    }
    None
}

fn crossing_point(a: Point, b: Point, c: Point, d: Point) -> (Ratio, Ratio) {
    let (ax, ay) = (i128::from(a.x), i128::from(a.y));
    let (rx, ry) = (i128::from(b.x - a.x), i128::from(b.y - a.y));
    let (sx, sy) = (i128::from(d.x - c.x), i128::from(d.y - c.y));
    let (qx, qy) = (i128::from(c.x - a.x), i128::from(c.y - a.y));
    let den = rx * sy - ry * sx;
    let t = qx * sy - qy * sx;
    (Ratio::new(ax * den + t * rx, den), Ratio::new(ay * den + t * ry, den))
}

/// Every conflicting pair among `segments`, by brute force.
pub fn planarity_audit(segments: &[(Point, Point)]) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if let Some((kind, at)) = segment_conflict(segments[i], segments[j]) {
                out.push(Violation { a: i, b: j, kind, at });
            }
        }
    }
    out
}

/// Conflicts between `changed` and every other segment in `all`.
pub fn planarity_audit_subset(all: &[(Point, Point)], changed: &[usize]) -> Vec<Violation> {
    let mut mark = vec![false; all.len()];
    for &i in changed {
        mark[i] = true;
    }
    let mut out = Vec::new();
    for &i in changed {
        for (j, &t) in all.iter().enumerate() {
            if j == i || (mark[j] && j < i) {
                continue;
            }
            if let Some((kind, at)) = segment_conflict(all[i], t) {
                out.push(Violation { a: i.min(j), b: i.max(j), kind, at });
            }
        }
    }
    out
}

/// Bounding box `(min, max)` of the points, if any.
pub fn bounding_box(points: impl IntoIterator<Item = Point>) -> Option<(Point, Point)> {
    points.into_iter().fold(None, |acc, p| {
        Some(match acc {
            None => (p, p),
            Some((lo, hi)) => (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y))),
        })
    })
}

/// Bounding-box area with each side clamped to at least 1.
pub fn area_of(points: impl IntoIterator<Item = Point>) -> u128 {
    match bounding_box(points) {
        None => 0,
        Some((lo, hi)) => {
            let w = (hi.x - lo.x).max(1) as u128;
            let h = (hi.y - lo.y).max(1) as u128;
            w * h
        }
    }
}
