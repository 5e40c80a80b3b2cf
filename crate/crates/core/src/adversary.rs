//! An adaptive adversary against drawing strategies that never move a vertex.
//!
//! Every edge hangs off a root at the origin, so the drawing is a star and a
//! strategy only ever chooses a direction. The adversary first finds two
//! edges crossing one side of the 2x2 square around the root, then keeps
//! inserting between the two edges that bound its wedge and keeps the half
//! with the shorter cut on that side. Once the cut is tiny it switches to
//! keeping the half with fewer lattice points below a fixed horizontal line.
//! All wedge arithmetic is exact.

use std::cmp::Ordering;

use serde::Serialize;

use crate::geometry::{area_of, Point, Ratio};
use crate::stream::{Mode, Stream, StreamEvent};

/// A placement rule that fixes every point at insertion time.
pub trait NoMoveStrategy {
    fn name(&self) -> &'static str;

    /// Point for a new root child inserted at rotation index `pos` among
    /// `children` (clockwise, root at the origin).
    fn place(&mut self, children: &[Point], pos: usize) -> Point;
}

fn cross(a: Point, b: Point) -> i128 {
    i128::from(a.x) * i128::from(b.y) - i128::from(a.y) * i128::from(b.x)
}

fn dot(a: Point, b: Point) -> i128 {
    i128::from(a.x) * i128::from(b.x) + i128::from(a.y) * i128::from(b.y)
}

fn same_ray(a: Point, b: Point) -> bool {
    cross(a, b) == 0 && dot(a, b) > 0
}

/// Clockwise angle from `u` to `p` compared with that from `u` to `q`;
/// `u` itself is at angle zero.
fn cw_from(u: Point, p: Point, q: Point) -> Ordering {
    let half = |p: Point| u8::from(!(cross(u, p) < 0 || same_ray(u, p)));
    half(p).cmp(&half(q)).then_with(|| {
        if same_ray(p, q) {
            Ordering::Equal
        } else if cross(p, q) < 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

/// Whether direction `p` lies strictly inside the clockwise sweep from `u` to `v`.
pub fn strictly_between(u: Point, v: Point, p: Point) -> bool {
    if same_ray(p, u) || same_ray(p, v) {
        return false;
    }
    if same_ray(u, v) {
        return true;
    }
    cw_from(u, p, v) == Ordering::Less
}

/// Whether `p` can join `children` at rotation index `pos` as a straight edge.
pub fn admissible(children: &[Point], pos: usize, p: Point) -> bool {
    if p == Point::new(0, 0) || children.iter().any(|&c| same_ray(c, p)) {
        return false;
    }
    match children.len() {
        0 | 1 => true,
        k => strictly_between(children[(pos + k - 1) % k], children[pos % k], p),
    }
}

/// Clockwise order and distinct directions of a star's children.
pub fn star_is_valid(children: &[Point]) -> bool {
    let k = children.len();
    if children.iter().any(|&c| c == Point::new(0, 0)) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            if same_ray(children[i], children[j]) {
                return false;
            }
        }
    }
    (2..k).all(|i| cw_from(children[0], children[i - 1], children[i]) == Ordering::Less)
}

/// The simplest fraction strictly inside `(lo, hi)`; `hi = None` is unbounded.
fn simplest(lo: Ratio, hi: Option<Ratio>) -> (i128, i128) {
    let n = lo.floor() + 1;
    if hi.is_none_or(|h| Ratio::int(n) < h) {
        let m = hi.map_or(i128::MAX, |h| h.ceil() - 1);
        let k = if n > 0 {
            n
        } else if m < 0 {
            m
        } else {
            0
        };
        return (k, 1);
    }
    let f = lo.floor();
    let lo_f = lo - Ratio::int(f);
    let hi_f = hi.expect("bounded here") - Ratio::int(f);
    let inv_hi = Ratio::new(hi_f.den, hi_f.num);
    let inv_lo = (lo_f.num != 0).then(|| Ratio::new(lo_f.den, lo_f.num));
    let (p, q) = simplest(inv_hi, inv_lo);
    (f * p + q, p)
}

/// All reduced fractions in `(lo, hi)` with denominator at most `h`.
fn fractions_within(lo: Ratio, hi: Ratio, h: i128, out: &mut Vec<(i128, i128)>) {
    if lo >= hi || out.len() > 1 << 20 {
        return;
    }
    let (p, q) = simplest(lo, Some(hi));
    if q > h {
        return;
    }
    out.push((p, q));
    let mid = Ratio::new(p, q);
    fractions_within(lo, mid, h, out);
    fractions_within(mid, hi, h, out);
}

/// Rotation by a multiple of a quarter turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

impl Side {
    /// Maps original coordinates into the frame where this side is on top.
    pub fn to_frame(self, p: Point) -> Point {
        match self {
            Side::Top => p,
            Side::Right => Point::new(-p.y, p.x),
            Side::Bottom => Point::new(-p.x, -p.y),
            Side::Left => Point::new(p.y, -p.x),
        }
    }

    pub fn from_frame(self, p: Point) -> Point {
        match self {
            Side::Top => p,
            Side::Right => Point::new(p.y, -p.x),
            Side::Bottom => Point::new(-p.x, -p.y),
            Side::Left => Point::new(-p.y, p.x),
        }
    }

    /// The side of the 2x2 square a ray from the origin leaves through;
    /// corners count as top or bottom.
    pub fn pierced_by(d: Point) -> Side {
        if d.y.abs() >= d.x.abs() {
            if d.y > 0 {
                Side::Top
            } else {
                Side::Bottom
            }
        } else if d.x > 0 {
            Side::Right
        } else {
            Side::Left
        }
    }
}

/// Nearest admissible lattice point to the root; ties prefer larger `y`, then smaller `x`.
#[derive(Clone, Debug, Default)]
pub struct GreedyBaseline;

const BOX_RADIUS: i64 = 32;

fn greedy_key(p: Point) -> (i128, i64, i64) {
    (dot(p, p), -p.y, p.x)
}

impl GreedyBaseline {
    fn thin_sector(children: &[Point], pos: usize) -> Option<Point> {
        let k = children.len();
        if k < 2 {
            return None;
        }
        let (u, v) = (children[(pos + k - 1) % k], children[pos % k]);
        for side in [Side::Top, Side::Right, Side::Bottom, Side::Left] {
            let (a, b) = (side.to_frame(u), side.to_frame(v));
            if a.y <= 0 || b.y <= 0 {
                continue;
            }
            let (lo, hi) = (Ratio::new(a.x.into(), a.y.into()), Ratio::new(b.x.into(), b.y.into()));
            if lo >= hi {
                continue;
            }
            let (p0, q0) = simplest(lo, Some(hi));
            let d0 = p0 * p0 + q0 * q0;
            let h = isqrt(d0);
            let mut fr = Vec::new();
            fractions_within(lo, hi, h, &mut fr);
            return fr
                .into_iter()
                .map(|(x, y)| side.from_frame(Point::new(x as i64, y as i64)))
                .min_by_key(|&p| greedy_key(p));
        }
        None
    }
}

fn isqrt(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl NoMoveStrategy for GreedyBaseline {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn place(&mut self, children: &[Point], pos: usize) -> Point {
        let r2 = i128::from(BOX_RADIUS * BOX_RADIUS);
        let mut best: Option<Point> = None;
        for x in -BOX_RADIUS..=BOX_RADIUS {
            for y in -BOX_RADIUS..=BOX_RADIUS {
                let p = Point::new(x, y);
                if dot(p, p) <= r2
                    && admissible(children, pos, p)
                    && best.is_none_or(|b| greedy_key(p) < greedy_key(b))
                {
                    best = Some(p);
                }
            }
        }
        best.or_else(|| Self::thin_sector(children, pos)).expect("an open sector contains lattice points")
    }
}

/// `sum_{i=0}^{n-1} floor((a*i + b) / m)` for `m > 0`.
fn floor_sum(mut n: i128, mut m: i128, mut a: i128, mut b: i128) -> i128 {
    let mut ans = 0;
    if a < 0 {
        let a2 = a.rem_euclid(m);
        ans -= n * (n - 1) / 2 * ((a2 - a) / m);
        a = a2;
    }
    if b < 0 {
        let b2 = b.rem_euclid(m);
        ans -= n * ((b2 - b) / m);
        b = b2;
    }
    loop {
        if a >= m {
            ans += n * (n - 1) / 2 * (a / m);
            a %= m;
        }
        if b >= m {
            ans += n * (b / m);
            b %= m;
        }
        let y_max = a * n + b;
        if y_max < m {
            return ans;
        }
        n = y_max / m;
        b = y_max % m;
        std::mem::swap(&mut m, &mut a);
    }
}

/// A wedge in the frame where its side is on top: slopes `x / y` of the
/// left and right bounding rays.
#[derive(Clone, Copy, Debug)]
struct Wedge {
    left: Point,
    right: Point,
}

impl Wedge {
    fn lo(&self) -> Ratio {
        Ratio::new(self.left.x.into(), self.left.y.into())
    }

    fn hi(&self) -> Ratio {
        Ratio::new(self.right.x.into(), self.right.y.into())
    }

    /// Length of the cut on the line `y = 1`.
    fn s(&self) -> Ratio {
        self.hi() - self.lo()
    }

    /// Lattice points strictly inside at height `y`.
    fn row(&self, y: i128) -> i128 {
        (Ratio::int(y) * self.hi()).ceil() - (Ratio::int(y) * self.lo()).floor() - 1
    }

    /// Lowest height with two lattice points strictly inside.
    fn first_double_row(&self) -> i128 {
        // Two points in one row need a row wider than one.
        let start = (Ratio::int(1) / self.s()).floor().max(1);
        let mut lo = FloorSeq::new(self.lo(), start);
        let mut neg_hi = FloorSeq::new(Ratio::int(0) - self.hi(), start);
        let mut y = start;
        loop {
            if -neg_hi.value - lo.value > 2 {
                debug_assert_eq!(self.row(y), -neg_hi.value - lo.value - 1);
                return y;
            }
            lo.step();
            neg_hi.step();
            y += 1;
        }
    }

    /// Lattice points strictly inside with `1 <= y <= top`.
    fn count_below(&self, top: i128) -> i128 {
        let (lo, hi) = (self.lo(), self.hi());
        let ceil_sum = -floor_sum(top + 1, hi.den, -hi.num, 0);
        let floor_sum_lo = floor_sum(top + 1, lo.den, lo.num, 0);
        ceil_sum - floor_sum_lo - top
    }
}

/// `floor(y * r)` for successive `y` without division.
struct FloorSeq {
    value: i128,
    rem: i128,
    whole: i128,
    frac: i128,
    den: i128,
}

impl FloorSeq {
    fn new(r: Ratio, y: i128) -> Self {
        let v = y * r.num;
        FloorSeq {
            value: v.div_euclid(r.den),
            rem: v.rem_euclid(r.den),
            whole: r.num.div_euclid(r.den),
            frac: r.num.rem_euclid(r.den),
            den: r.den,
        }
    }

    fn step(&mut self) {
        self.value += self.whole;
        self.rem += self.frac;
        if self.rem >= self.den {
            self.rem -= self.den;
            self.value += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Round {
    pub round: usize,
    pub phase: u8,
    pub pos: usize,
    pub point: Point,
    /// Cut length of the kept wedge, as `num/den`.
    pub s: Option<String>,
    /// Lattice points left in the kept wedge below the fixed line.
    pub lattice_left: Option<i128>,
    pub area: u128,
    pub log2_area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdversaryReport {
    pub strategy: String,
    pub side: Side,
    pub phase1_rounds: usize,
    pub final_s: String,
    pub s_within_bound: bool,
    /// Height of the line bounding the lattice triangle, in the wedge frame.
    pub line_height: i128,
    pub switch_round: usize,
    pub phase2_rounds: usize,
    pub phase2_log2_slope: f64,
    pub beyond_line: bool,
    pub rounds: Vec<Round>,
    pub valid: bool,
}

pub struct Adversary {
    children: Vec<Point>,
    rounds: Vec<Round>,
}

fn log2_u128(v: u128) -> f64 {
    (v as f64).log2()
}

impl Adversary {
    fn add(&mut self, strat: &mut dyn NoMoveStrategy, pos: usize, phase: u8) -> Point {
        let p = strat.place(&self.children, pos);
        self.children.insert(pos, p);
        let pts = std::iter::once(Point::new(0, 0)).chain(self.children.iter().copied());
        let area = area_of(pts);
        self.rounds.push(Round {
            round: self.rounds.len(),
            phase,
            pos,
            point: p,
            s: None,
            lattice_left: None,
            area,
            log2_area: log2_u128(area),
        });
        p
    }

    fn index_of(&self, p: Point) -> usize {
        self.children.iter().position(|&c| c == p).expect("placed")
    }

    /// Plays `phase1` halving rounds, then lattice halving until the
    /// triangle below the line is empty, then one more edge.
    pub fn run(strat: &mut dyn NoMoveStrategy, phase1: usize) -> AdversaryReport {
        let mut adv = Adversary { children: Vec::new(), rounds: Vec::new() };
        // Phase 0: five edges force some side to be crossed twice.
        let (side, mut w) = loop {
            let k = adv.children.len();
            adv.add(strat, k, 0);
            if let Some(found) = adv.initial_wedge() {
                break found;
            }
            assert!(adv.children.len() < 5, "five rays always share a side");
        };
        let mut valid = true;
        for _ in 0..phase1 {
            let pos = adv.index_of(side.from_frame(w.left)) + 1;
            let p = side.to_frame(adv.add(strat, pos, 1));
            let (a, b) = (Wedge { left: w.left, right: p }, Wedge { left: p, right: w.right });
            valid &= p.y > 0 && w.lo() < Ratio::new(p.x.into(), p.y.into());
            w = if a.s() <= b.s() { a } else { b };
            adv.rounds.last_mut().expect("just added").s = Some(w.s().to_string());
        }
        let final_s = w.s();
        let switch_round = adv.rounds.len();
        let line = w.first_double_row();
        let start_area = adv.rounds.last().map_or(1, |r| r.area);
        let mut phase2 = 0;
        while w.count_below(line) > 0 && phase2 < 128 {
            let pos = adv.index_of(side.from_frame(w.left)) + 1;
            let p = side.to_frame(adv.add(strat, pos, 2));
            let (a, b) = (Wedge { left: w.left, right: p }, Wedge { left: p, right: w.right });
            let (ca, cb) = (a.count_below(line), b.count_below(line));
            w = if ca <= cb { a } else { b };
            let r = adv.rounds.last_mut().expect("just added");
            r.lattice_left = Some(ca.min(cb));
            r.s = Some(w.s().to_string());
            phase2 += 1;
        }
        let pos = adv.index_of(side.from_frame(w.left)) + 1;
        let last = side.to_frame(adv.add(strat, pos, 3));
        let end_area = adv.rounds[adv.rounds.len() - 2].area;
        valid &= star_is_valid(&adv.children);
        AdversaryReport {
            strategy: strat.name().into(),
            side,
            phase1_rounds: phase1,
            final_s: final_s.to_string(),
            s_within_bound: final_s <= Ratio::new(2, 1i128 << phase1),
            line_height: line,
            switch_round,
            phase2_rounds: phase2,
            phase2_log2_slope: if phase2 == 0 {
                0.0
            } else {
                (log2_u128(end_area) - log2_u128(start_area)) / phase2 as f64
            },
            beyond_line: i128::from(last.y) > line,
            rounds: adv.rounds,
            valid,
        }
    }

    /// Two rays through one side, bounding no other ray, with the shortest cut.
    fn initial_wedge(&self) -> Option<(Side, Wedge)> {
        let mut best: Option<(Side, Wedge)> = None;
        for side in [Side::Top, Side::Right, Side::Bottom, Side::Left] {
            let mut rays: Vec<Point> = self
                .children
                .iter()
                .filter(|&&c| Side::pierced_by(c) == side)
                .map(|&c| side.to_frame(c))
                .collect();
            rays.sort_by_key(|p| Ratio::new(p.x.into(), p.y.into()));
            for pair in rays.windows(2) {
                let w = Wedge { left: pair[0], right: pair[1] };
                if best.as_ref().is_none_or(|(_, b)| w.s() < b.s()) {
                    best = Some((side, w));
                }
            }
        }
        best
    }

    /// The adversary's edges as a tree stream rooted at `r`.
    pub fn stream(report: &AdversaryReport) -> Stream {
        let events = report
            .rounds
            .iter()
            .enumerate()
            .map(|(i, r)| StreamEvent::new("r", format!("c{i}"), r.pos, 0))
            .collect();
        Stream { mode: Mode::Tree, events }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_child_goes_straight_up() {
        assert_eq!(GreedyBaseline.place(&[], 0), Point::new(0, 1));
    }

    #[test]
    fn simplest_fraction_has_least_denominator() {
        assert_eq!(simplest(Ratio::new(1, 3), Some(Ratio::new(1, 2))), (2, 5));
        assert_eq!(simplest(Ratio::new(-7, 2), Some(Ratio::new(5, 1))), (0, 1));
        assert_eq!(simplest(Ratio::new(3, 1), None), (4, 1));
        assert_eq!(simplest(Ratio::new(-5, 2), Some(Ratio::new(-2, 1))), (-7, 3));
        assert_eq!(simplest(Ratio::new(0, 1), Some(Ratio::new(1, 1000))), (1, 1001));
    }

    #[test]
    fn fractions_match_brute_force() {
        let (lo, hi) = (Ratio::new(2, 7), Ratio::new(5, 9));
        let mut got = Vec::new();
        fractions_within(lo, hi, 30, &mut got);
        got.sort();
        let mut want = Vec::new();
        for q in 1..=30i128 {
            for p in -40..=40i128 {
                let r = Ratio::new(p, q);
                if r.den == q && lo < r && r < hi {
                    want.push((p, q));
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn floor_sum_matches_direct_sum() {
        for (n, m, a, b) in [(10i128, 3i128, 7i128, 2i128), (25, 7, -11, 5), (13, 5, 4, -9), (1, 4, 3, 3)] {
            let direct: i128 = (0..n).map(|i| (a * i + b).div_euclid(m)).sum();
            assert_eq!(floor_sum(n, m, a, b), direct);
        }
    }

    #[test]
    fn wedge_counts_match_enumeration() {
        let w = Wedge { left: Point::new(1, 3), right: Point::new(4, 7) };
        let brute: i128 = (1..=50).map(|y| w.row(y)).sum();
        assert_eq!(w.count_below(50), brute);
        let direct: i128 = (1..=50i64)
            .flat_map(|y| (-60..=60i64).map(move |x| Point::new(x, y)))
            .filter(|&p| strictly_between(w.left, w.right, p))
            .count() as i128;
        assert_eq!(brute, direct);
    }

    #[test]
    fn greedy_matches_exhaustive_search_in_thin_sectors() {
        let children = [Point::new(100, 101), Point::new(103, 104), Point::new(-1, -1)];
        let got = GreedyBaseline.place(&children, 1);
        let mut best: Option<Point> = None;
        for x in -400..=400 {
            for y in -400..=400 {
                let p = Point::new(x, y);
                if admissible(&children, 1, p) && best.is_none_or(|b| greedy_key(p) < greedy_key(b)) {
                    best = Some(p);
                }
            }
        }
        assert_eq!(Some(got), best);
        assert!(dot(got, got) > i128::from(BOX_RADIUS * BOX_RADIUS));
    }

    #[test]
    fn first_double_row_matches_scan() {
        for (l, r) in [((1, 3), (4, 7)), ((-5, 8), (-3, 5)), ((2, 9), (3, 13))] {
            let w = Wedge { left: Point::new(l.0, l.1), right: Point::new(r.0, r.1) };
            let scan = (1..).find(|&y| w.row(y) >= 2).unwrap();
            assert_eq!(w.first_double_row(), scan);
        }
    }

    #[test]
    fn sides_round_trip() {
        for side in [Side::Top, Side::Right, Side::Bottom, Side::Left] {
            let p = Point::new(3, -5);
            assert_eq!(side.from_frame(side.to_frame(p)), p);
            assert_eq!(Side::pierced_by(side.from_frame(Point::new(0, 1))), side);
        }
    }

    #[test]
    fn short_run_halves_the_cut_each_round() {
        let r = Adversary::run(&mut GreedyBaseline, 8);
        assert!(r.valid);
        assert!(r.s_within_bound, "{}", r.final_s);
        assert!(r.rounds.iter().filter(|x| x.phase == 0).count() <= 5);
        assert!(r.beyond_line);
    }
}
