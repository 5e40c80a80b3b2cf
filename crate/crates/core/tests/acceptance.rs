//! Acceptance suite: one pass/fail line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use streamdraw::adversary::{Adversary, GreedyBaseline};
use streamdraw::bench::{bench, slope};
use streamdraw::convex::ConvexSlots;
use streamdraw::geometry::bounding_box;
use streamdraw::outerplanar_draw::{Hint, OuterplanarDrawer, Side};
use streamdraw::run::{run, RunParams};
use streamdraw::stream::{parse_stream, Mode};
use streamdraw::svg::{emit_svg, parse_svg_rects};
use streamdraw::tree_draw::TreeDrawer;
use streamdraw::treemap_draw::{Axis, TreeMapDrawer};
use streamdraw::workloads::{
    circle_events, circle_rotations, random_outerplanar_stream, random_tree_stream, reference_order, run_workload,
    workload_ops, Workload,
};
use streamdraw::Strategy;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut mismatches = 0;
    let mut inserted = 0usize;
    let mut per = Vec::new();
    for strategy in Strategy::ALL {
        let t = Instant::now();
        for i in 0..1000u64 {
            let kind = Workload::ALL[(i % 3) as usize];
            let n = (2f64.powf(rng.gen_range(1.0..=14.0))).round() as usize;
            let ops = workload_ops(kind, n, i);
            let mut l = strategy.build(2);
            let (hs, _) = run_workload(l.as_mut(), &ops).map_err(|e| format!("{strategy} workload {i}: {e}"))?;
            let want: Vec<_> = reference_order(&ops).into_iter().map(|k| hs[k]).collect();
            if l.order() != want {
                mismatches += 1;
            }
            inserted += n;
        }
        per.push(format!("{strategy} {:.1?}", t.elapsed()));
    }
    let elapsed = start.elapsed();
    ensure(mismatches == 0, || format!("{mismatches} mismatching workloads"))?;
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:.1?} ({})", per.join(", ")))?;
    Ok(format!("6000 workloads, {inserted} insertions, 0 mismatches ({})", per.join(", ")))
}

const LO: u32 = 10;
const HI: u32 = 16;

fn sqrt_bounds() -> Check {
    let r = bench(Strategy::Sqrt, Workload::HotSpot, LO, HI, 1, 2).map_err(|e| e.to_string())?;
    for p in &r.points {
        ensure(p.bulks_per_insert <= 8.0, || format!("n={} bulks/ins {:.3}", p.n, p.bulks_per_insert))?;
        ensure(p.max_label <= 8 * p.n as u64, || format!("n={} max label {}", p.n, p.max_label))?;
    }
    ensure(r.bulks_vs_log_slope.abs() <= 0.2, || format!("slope {:.3}", r.bulks_vs_log_slope))?;
    let worst = r.points.iter().map(|p| p.bulks_per_insert).fold(0.0, f64::max);
    Ok(format!("max bulks/ins {worst:.3}, slope vs log n {:.3}", r.bulks_vs_log_slope))
}

fn twolevel_bounds() -> Check {
    let mut worst = 0.0f64;
    for k in LO..=HI {
        let n = 1usize << k;
        let mut l = Strategy::TwoLevel.build(2);
        let first = l.insert_first().map_err(|e| e.to_string())?.handle;
        let mut bulks = 0usize;
        for i in 1..n {
            let r = l.insert_after(first).map_err(|e| e.to_string())?;
            bulks += r.bulks();
            let cap = 2 * (i as f64 + 1.0).log2().ceil() as usize;
            ensure(r.max_bulk <= cap, || format!("n={n} insertion {i}: bulk of {} > {cap}", r.max_bulk))?;
        }
        let per = bulks as f64 / (n - 1) as f64;
        worst = worst.max(per);
        ensure(per <= 4.0, || format!("n={n} bulks/ins {per:.3}"))?;
        let bound = l.label_bound() as u128;
        ensure(bound <= (n as u128).pow(3), || format!("n={n} label space {bound} > n^3"))?;
    }
    Ok(format!("max bulks/ins {worst:.3}; bulks within 2*ceil(log2 n); label space within n^3"))
}

fn bulkpacked_bounds() -> Check {
    let r = bench(Strategy::BulkPacked, Workload::HotSpot, LO, HI, 1, 2).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for p in &r.points {
        worst = worst.max(p.bulks_per_log);
        ensure(p.bulks_per_log <= 4.0, || format!("n={} bulks/log n {:.3}", p.n, p.bulks_per_log))?;
        ensure(p.max_label <= 8 * p.n as u64, || format!("n={} max label {}", p.n, p.max_label))?;
    }
    Ok(format!("max bulks/ins/log2 n {worst:.3}"))
}

fn classic_bounds() -> Check {
    let packed = bench(Strategy::Packed, Workload::HotSpot, LO, HI, 1, 2).map_err(|e| e.to_string())?;
    let tag = bench(Strategy::Tag, Workload::HotSpot, LO, HI, 1, 2).map_err(|e| e.to_string())?;
    let pw = packed.points.iter().map(|p| p.singles_per_log2).fold(0.0, f64::max);
    let tw = tag.points.iter().map(|p| p.singles_per_log).fold(0.0, f64::max);
    ensure(pw <= 2.0, || format!("packed singles/log^2 n {pw:.3}"))?;
    ensure(tw <= 4.0, || format!("tag singles/log n {tw:.3}"))?;
    Ok(format!("packed singles/log^2 n <= {pw:.3}, tag singles/log n <= {tw:.3}"))
}

const FILE_MAINTENANCE: [Strategy; 3] = [Strategy::Packed, Strategy::Sqrt, Strategy::BulkPacked];

fn tree_drawing() -> Check {
    let n = 2000;
    for seed in 0..100u64 {
        let strategy = FILE_MAINTENANCE[seed as usize % 3];
        let s = random_tree_stream(Mode::Tree, n, seed);
        let mut t = TreeDrawer::new(strategy, 2);
        for (i, e) in s.events.iter().enumerate() {
            let d = t.insert_edge(&e.u, &e.v, e.pos_u, e.pos_v).map_err(|err| format!("seed {seed} event {i}: {err}"))?;
            let bad = t.audit_delta(&d);
            ensure(bad.is_empty(), || format!("seed {seed} event {i}: {bad:?}"))?;
            let grouped: usize = d.bulk_groups.iter().map(|g| g.points.len()).sum();
            ensure(d.bulk_groups.len() == d.bulks && d.moved.len() == d.singles + grouped, || {
                format!("seed {seed} event {i}: moves do not match labeler ops")
            })?;
        }
        let full = t.audit();
        ensure(full.is_empty(), || format!("seed {seed}: {full:?}"))?;
        let (lo, hi) = bounding_box(t.drawing().points()).expect("non-empty");
        let (w, h) = (hi.x - lo.x + 1, hi.y - lo.y + 1);
        ensure(w as usize <= 8 * n && h as usize <= t.depth_span(), || format!("seed {seed}: box {w}x{h}"))?;
    }
    Ok("100 streams of 2000 vertices: every event planar, moves equal labeler ops, box within 8n x depth".into())
}

fn treemap_drawing() -> Check {
    let n = 2000;
    for seed in 0..100u64 {
        let strategy = FILE_MAINTENANCE[seed as usize % 3];
        let s = random_tree_stream(Mode::TreeMap, n, seed);
        let mut t = TreeMapDrawer::new(strategy, 2);
        for (i, e) in s.events.iter().enumerate() {
            t.insert_edge(&e.u, &e.v, e.pos_u, e.pos_v).map_err(|err| format!("seed {seed} event {i}: {err}"))?;
            let bad = t.audit_recent();
            ensure(bad.is_empty(), || format!("seed {seed} event {i}: {bad:?}"))?;
        }
        let full = t.audit();
        ensure(full.is_empty(), || format!("seed {seed}: {full:?}"))?;
        for axis in [Axis::X, Axis::Y] {
            let m = t.max_label(axis);
            ensure(m < 8 * n as u64, || format!("seed {seed}: {axis:?} extent {m}"))?;
        }
    }
    Ok("100 streams of 2000 nodes: containment, disjointness and order hold after every event; each axis within 8n".into())
}

const FIG: [&str; 9] = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];

fn rotated(v: Vec<String>, start: &str) -> Vec<String> {
    let k = v.iter().position(|x| x == start).unwrap_or(0);
    v[k..].iter().chain(&v[..k]).cloned().collect()
}

fn chord_bypass_example() -> Result<(), String> {
    let edges = [(0, 2), (0, 1), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5), (8, 2), (8, 3)];
    let rot = circle_rotations(9, &edges);
    let mut o = OuterplanarDrawer::new(Strategy::Oracle, 2).map_err(|e| e.to_string())?;
    let letter = |s: &str| FIG[s[1..].parse::<usize>().unwrap()];
    for e in circle_events(9, &edges, &rot) {
        let hint = e.hint.map(|h| Hint { reference: letter(&h.reference).into(), side: h.side });
        o.insert_edge(letter(&e.u), letter(&e.v), e.pos_u, e.pos_v, hint.as_ref()).map_err(|e| e.to_string())?;
    }
    let before = rotated(o.circle_order(), "a");
    ensure(before == FIG, || format!("order before (a,g): {before:?}"))?;
    let after = |v: &str, pred: &str| o.rotation(v).unwrap().iter().position(|x| x == pred).unwrap() + 1;
    let (pa, pg) = (after("a", "b"), after("g", "f"));
    o.insert_edge("a", "g", pa, pg, None).map_err(|e| e.to_string())?;
    let got = rotated(o.circle_order(), "a");
    ensure(got == ["a", "b", "g", "h", "f", "e", "d", "i", "c"], || format!("order after (a,g): {got:?}"))?;
    let mut moved = o.last_repositioned();
    moved.sort();
    ensure(moved == ["c", "d", "e", "f"], || format!("moved {moved:?}"))?;
    ensure(o.audit().is_empty(), || format!("{:?}", o.audit()))
}

fn hinted_chord_example() -> Result<(), String> {
    let path = |o: &mut OuterplanarDrawer| {
        o.insert_edge("a", "b", 0, 0, None).unwrap();
        o.insert_edge("b", "c", 1, 0, None).unwrap();
    };
    let mut o = OuterplanarDrawer::new(Strategy::Oracle, 2).unwrap();
    path(&mut o);
    let err = o.insert_edge("a", "c", 1, 1, None).err().map(|e| e.to_string()).unwrap_or_default();
    ensure(err.contains("ambiguous insertion"), || format!("no-hint case gave {err:?}"))?;
    let mut o = OuterplanarDrawer::new(Strategy::Oracle, 2).unwrap();
    path(&mut o);
    let hint = Hint { reference: "b".into(), side: Side::Left };
    o.insert_edge("a", "c", 1, 1, Some(&hint)).map_err(|e| e.to_string())?;
    o.insert_edge("b", "d", 1, 0, None).map_err(|e| e.to_string())?;
    ensure(o.rotation("b").unwrap() == ["a", "d", "c"], || "rotation at b".into())?;
    ensure(o.audit().is_empty(), || format!("{:?}", o.audit()))
}

fn outerplanar() -> Check {
    chord_bypass_example()?;
    hinted_chord_example()?;
    let strategies = [Strategy::Oracle, Strategy::Packed, Strategy::Sqrt, Strategy::BulkPacked];
    let mut max_ratio = 0.0f64;
    for seed in 0..100u64 {
        let strategy = strategies[seed as usize % 4];
        let s = random_outerplanar_stream(500, seed);
        let mut o = OuterplanarDrawer::new(strategy, 2).map_err(|e| e.to_string())?;
        for (i, e) in s.events.iter().enumerate() {
            o.insert_edge(&e.u, &e.v, e.pos_u, e.pos_v, e.hint.as_ref())
                .map_err(|err| format!("seed {seed} event {i}: {err}"))?;
            let bad = o.audit_fast();
            ensure(bad.is_empty(), || format!("seed {seed} event {i}: {bad:?}"))?;
            let over = o.move_audit();
            ensure(over.is_empty(), || format!("seed {seed} event {i}: {over:?}"))?;
        }
        let full = o.audit();
        ensure(full.is_empty(), || format!("seed {seed}: {full:?}"))?;
    }
    for m in [64usize, 128, 256, 512] {
        let c = ConvexSlots::new(m);
        max_ratio = max_ratio.max(c.area() as f64 / (m as f64).powi(3));
    }
    ensure(max_ratio <= 1.0, || format!("area/m^3 reached {max_ratio:.4}"))?;
    Ok(format!(
        "worked-example orders exact, hint cases behave, 100 maximal streams (n=500) planar with moves <= deg-1, slot area/m^3 <= {max_ratio:.4}"
    ))
}

fn adversary() -> Check {
    let start = Instant::now();
    let r = Adversary::run(&mut GreedyBaseline, 20);
    let elapsed = start.elapsed();
    ensure(r.valid, || "baseline broke planarity or rotation".into())?;
    ensure(r.s_within_bound, || format!("s = {}", r.final_s))?;
    let s_ok = {
        let (num, den) = r.final_s.split_once('/').map_or((r.final_s.as_str(), "1"), |x| x);
        let (num, den): (i128, i128) = (num.parse().unwrap(), den.parse().unwrap());
        num * (1 << 19) <= den
    };
    ensure(s_ok, || format!("s = {} exceeds 2^-19", r.final_s))?;
    ensure(r.phase2_log2_slope >= 0.5, || format!("phase-2 growth {:.3}", r.phase2_log2_slope))?;
    let areas: Vec<f64> = r.rounds.iter().filter(|x| x.phase == 2).map(|x| x.log2_area).collect();
    let xs: Vec<f64> = (0..areas.len()).map(|i| i as f64).collect();
    let fit = slope(&xs, &areas);
    ensure(fit >= 0.5, || format!("phase-2 regression slope {fit:.3}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:.1?}"))?;
    Ok(format!("s = {} <= 2^-19, log2(area) +{:.2}/round over {} phase-2 rounds", r.final_s, r.phase2_log2_slope, r.phase2_rounds))
}

fn determinism() -> Check {
    let streams = [
        random_tree_stream(Mode::Tree, 300, 42),
        random_tree_stream(Mode::TreeMap, 300, 42),
        random_outerplanar_stream(120, 42),
    ];
    for s in &streams {
        for strategy in [Strategy::Packed, Strategy::Sqrt, Strategy::BulkPacked] {
            let p = RunParams { strategy, exponent: 2, audit_each: true };
            let (r1, d1) = run(s, p).map_err(|e| e.to_string())?;
            let (r2, d2) = run(s, p).map_err(|e| e.to_string())?;
            ensure(r1.audit.passed, || format!("{} {strategy}: {:?}", s.mode, r1.audit.violations))?;
            ensure(r1.to_json() == r2.to_json(), || format!("{} {strategy}: JSON differs", s.mode))?;
            let svg = emit_svg(&d1);
            ensure(svg == emit_svg(&d2), || format!("{} {strategy}: SVG differs", s.mode))?;
            if s.mode == Mode::TreeMap {
                let rects = parse_svg_rects(&svg);
                ensure(rects == d1.rects, || "SVG rectangles do not round-trip".into())?;
                let root = rects.first().map(|r| r.1).ok_or("no rectangles")?;
                ensure(rects.iter().all(|(_, r)| root.contains(r)), || "rectangle escapes the root".into())?;
            }
        }
    }
    let text = "mode tree\nedge r a 0 0\nedge r b 1 0\n";
    let s = parse_stream(text).map_err(|e| e.to_string())?;
    ensure(run(&s, RunParams::default()).is_ok(), || "parsed stream runs".into())?;
    Ok("JSON and SVG byte-identical across repeated runs in all three modes".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("sqrt-chunk bulk moves", sqrt_bounds),
        ("two-level bulk moves", twolevel_bounds),
        ("bulk packed array", bulkpacked_bounds),
        ("classic labelers", classic_bounds),
        ("tree drawing", tree_drawing),
        ("tree-map drawing", treemap_drawing),
        ("outerplanar drawing", outerplanar),
        ("no-move adversary", adversary),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail} [{:.1?}]", i + 1, start.elapsed());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
