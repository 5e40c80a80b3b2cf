use crate::order::{plan_bulks, Anchor, Core, ElementHandle, Gap, InsertResult, Label, LabelError, LabelMap, Labeler, RelabelOp};

/// File maintenance with bulk moves of `B = ceil(sqrt(n))` elements.
///
/// Chunk `j` sits left-packed in window `j`, a block of `2B` labels. An insert
/// shifts the suffix of its chunk by one; a chunk reaching `2B` elements
/// splits after every chunk to its right has moved over by one window.
#[derive(Clone, Debug)]
pub struct SqrtChunkLabeler {
    core: Core,
    /// Rebuild once the element count would exceed this.
    n_cap: u64,
    b: u64,
    windows: u64,
    chunks: Vec<u64>,
}

impl Default for SqrtChunkLabeler {
    fn default() -> Self {
        Self::new()
    }
}

fn ceil_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

impl SqrtChunkLabeler {
    pub fn new() -> Self {
        let mut s = SqrtChunkLabeler { core: Core::default(), n_cap: 0, b: 0, windows: 0, chunks: Vec::new() };
        s.reshape(4);
        s
    }

    fn reshape(&mut self, n_cap: u64) {
        self.n_cap = n_cap;
        self.b = ceil_sqrt(n_cap).max(2);
        self.windows = n_cap.div_ceil(self.b) + 3;
    }

    fn width(&self) -> u64 {
        2 * self.b
    }

    /// Sizes of the chunks, in order. Chunk `j` occupies window `j`.
    pub fn chunk_sizes(&self) -> &[u64] {
        &self.chunks
    }

    /// Shifts the contiguous run `[lo, hi]` by `delta`, as bulk ops of at most
    /// `B` elements ordered so that no op passes another element.
    fn shift_run(&mut self, lo: Label, hi: Label, delta: i64) -> Result<(), LabelError> {
        let b = self.b;
        let mut pieces = Vec::new();
        let mut start = lo;
        while start <= hi {
            let end = (start + b - 1).min(hi);
            pieces.push((start, end));
            start = end + 1;
        }
        if delta > 0 {
            pieces.reverse();
        }
        for (lo, hi) in pieces {
            self.core.emit(RelabelOp::Bulk { lo, hi, delta }, Some(b as usize))?;
        }
        Ok(())
    }

    fn rebuild(&mut self, gap: &Gap, h: ElementHandle) -> Result<InsertResult, LabelError> {
        let n = self.core.map.len() as u64;
        let mut cap = self.n_cap.max(4);
        while cap < n + 1 {
            cap *= 2;
        }
        if cap == self.n_cap {
            cap *= 2;
        }
        self.reshape(cap);
        let elems: Vec<(ElementHandle, Label)> = self.core.map.iter().map(|(l, e)| (e, l)).collect();
        let rank = self.core.rank_of_gap(gap);
        let total = n + 1;
        let (b, w) = (self.b, self.width());
        let mut targets: Vec<Label> = (0..total).map(|i| (i / b) * w + i % b).collect();
        self.chunks = (0..total.div_ceil(b)).map(|j| b.min(total - j * b)).collect();
        let new_label = targets.remove(rank);
        for op in plan_bulks(&elems, &targets, b as usize) {
            self.core.emit(op, Some(b as usize))?;
        }
        self.core.finish(h, new_label, gap)
    }
}

impl Labeler for SqrtChunkLabeler {
    fn name(&self) -> &'static str {
        "sqrt"
    }

    fn insert(&mut self, anchor: Anchor) -> Result<InsertResult, LabelError> {
        let gap = self.core.gap(anchor)?;
        let h = self.core.fresh();
        if self.core.map.is_empty() {
            self.chunks = vec![1];
            return self.core.finish(h, 0, &gap);
        }
        if self.core.map.len() as u64 + 1 > self.n_cap {
            return self.rebuild(&gap, h);
        }
        let w = self.width();
        let (j, pos) = match gap.pred {
            Some((p, _)) => ((p / w) as usize, p % w + 1),
            None => (0, 0),
        };
        let size = self.chunks[j];
        let splits = size + 1 == w;
        if splits && self.chunks.len() as u64 + 1 > self.windows {
            return self.rebuild(&gap, h);
        }
        let base = j as u64 * w;
        if !splits {
            if pos < size {
                self.shift_run(base + pos, base + size - 1, 1)?;
            }
            self.chunks[j] += 1;
            return self.core.finish(h, base + pos, &gap);
        }
        let b = self.b;
        for t in (j + 1..self.chunks.len()).rev() {
            let tb = t as u64 * w;
            self.shift_run(tb, tb + self.chunks[t] - 1, w as i64)?;
        }
        // Final slot of the element at rank `i` of the merged chunk.
        let slot = |i: u64| if i < b { base + i } else { base + w + i - b };
        let elems: Vec<(ElementHandle, Label)> =
            self.core.map.range(base, base + size - 1).into_iter().map(|(l, e)| (e, l)).collect();
        let targets: Vec<Label> = (0..size).map(|i| slot(if i < pos { i } else { i + 1 })).collect();
        for op in plan_bulks(&elems, &targets, b as usize) {
            self.core.emit(op, Some(b as usize))?;
        }
        self.chunks[j] = b;
        self.chunks.insert(j + 1, b);
        let label = slot(pos);
        self.core.finish(h, label, &gap)
    }

    fn labels(&self) -> &LabelMap {
        &self.core.map
    }

    fn label_bound(&self) -> Label {
        self.windows * self.width() - 1
    }

    fn bulk_limit(&self) -> Option<usize> {
        Some(self.b as usize)
    }
}
