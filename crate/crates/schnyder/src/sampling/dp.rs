use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::color::Color;
use crate::sampling::SeedSpec;
use crate::words::Word;

/// Count-and-sample dynamic program over suffix counts.
///
/// The state after `k` letters is `(x, y, f)` with `(x, y)` the walk value
/// and `f` set when the last letter was an `r`; `N(s, x, y, f)` counts the
/// length-`s` quadrant-confined completions to the origin without an
/// `r -> b`. The table is independent of how `x + 2y <= s` splits into
/// letters, so layers are shared by all samples of one size.
///
/// Exact mode keeps big-integer counts and draws exactly uniformly. Float
/// mode keeps mantissa/exponent pairs; each cell is a sum of at most three
/// rounded terms per layer, so the relative error after `3n` layers is at
/// most `9n * f64::EPSILON` (reported by [`DpSampler::relative_error_bound`])
/// and its samples are approximately uniform.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DpMode {
    Exact,
    Float,
}

/// Default memory budget for the layer store: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: usize = 2 << 30;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("n = {n} in {mode:?} mode needs about {required} bytes of layer store, over the budget of {budget}")]
    MemoryBudget { n: usize, mode: DpMode, required: usize, budget: usize },
}

/// Mantissa in `[1, 2)` (or zero) with a separate binary exponent.
#[derive(Clone, Copy, Debug, Default)]
struct F64E {
    m: f64,
    e: i64,
}

impl F64E {
    fn normalize(mut m: f64, mut e: i64) -> F64E {
        if m == 0.0 {
            return F64E { m: 0.0, e: 0 };
        }
        while m >= 2.0 {
            m *= 0.5;
            e += 1;
        }
        while m < 1.0 {
            m *= 2.0;
            e -= 1;
        }
        F64E { m, e }
    }

    fn to_scaled(self, ref_e: i64) -> f64 {
        if self.m == 0.0 {
            return 0.0;
        }
        let d = self.e - ref_e;
        if d < -1060 {
            0.0
        } else {
            self.m * (d as f64).exp2()
        }
    }
}

trait Weight: Clone + Default {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sum3(parts: [Option<&Self>; 3]) -> Self;
    /// Chooses a branch index proportionally to the weights (`None` = 0).
    fn pick(parts: [Option<&Self>; 3], rng: &mut ChaCha8Rng) -> usize;
    fn bytes_per_cell(n: usize) -> usize;
    fn approx_f64(&self) -> f64;
}

impl Weight for BigUint {
    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sum3(parts: [Option<&Self>; 3]) -> Self {
        let mut acc = BigUint::zero();
        for p in parts.into_iter().flatten() {
            acc += p;
        }
        acc
    }

    fn pick(parts: [Option<&Self>; 3], rng: &mut ChaCha8Rng) -> usize {
        let total = Self::sum3(parts);
        debug_assert!(!Zero::is_zero(&total));
        let mut draw = rng.gen_biguint_below(&total);
        for (i, p) in parts.into_iter().enumerate() {
            if let Some(p) = p {
                if draw < *p {
                    return i;
                }
                draw -= p;
            }
        }
        unreachable!("draw below total")
    }

    fn bytes_per_cell(n: usize) -> usize {
        // Counts stay below 16^n: 4n bits plus limb/Vec overhead.
        n / 2 + 48
    }

    fn approx_f64(&self) -> f64 {
        let bits = self.bits();
        if bits <= 52 {
            u64::try_from(self.clone()).map(|v| v as f64).unwrap_or(f64::MAX)
        } else {
            let shift = bits - 52;
            let top: u64 = u64::try_from(self >> shift).expect("52 bits");
            top as f64 * (shift as f64).exp2()
        }
    }
}

impl Weight for F64E {
    fn one() -> Self {
        F64E { m: 1.0, e: 0 }
    }

    fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    fn sum3(parts: [Option<&Self>; 3]) -> Self {
        let ref_e = parts
            .iter()
            .flatten()
            .filter(|w| !w.is_zero())
            .map(|w| w.e)
            .max();
        let Some(ref_e) = ref_e else {
            return F64E::default();
        };
        let mut acc = 0.0;
        for p in parts.into_iter().flatten() {
            acc += p.to_scaled(ref_e);
        }
        F64E::normalize(acc, ref_e)
    }

    fn pick(parts: [Option<&Self>; 3], rng: &mut ChaCha8Rng) -> usize {
        let ref_e = parts
            .iter()
            .flatten()
            .filter(|w| !w.is_zero())
            .map(|w| w.e)
            .max()
            .expect("positive total");
        let scaled: Vec<f64> = parts
            .iter()
            .map(|p| p.map(|w| w.to_scaled(ref_e)).unwrap_or(0.0))
            .collect();
        let total: f64 = scaled.iter().sum();
        let mut draw = rng.gen::<f64>() * total;
        for (i, w) in scaled.iter().enumerate() {
            if draw < *w && *w > 0.0 {
                return i;
            }
            draw -= w;
        }
        // Rounding pushed the draw past the last positive weight.
        scaled.iter().rposition(|&w| w > 0.0).expect("positive total")
    }

    fn bytes_per_cell(_n: usize) -> usize {
        16
    }

    fn approx_f64(&self) -> f64 {
        self.to_scaled(0)
    }
}

/// Packed layout of one layer: rows by `y`, within a row only the `x` with
/// `x ≡ s + y (mod 3)` (others cannot reach the origin), two flag slots per
/// state.
struct LayerShape {
    s: usize,
    n: usize,
    /// Per row: (x0, cell offset of the row), plus a sentinel total.
    rows: Vec<(i64, usize)>,
    cells: usize,
}

impl LayerShape {
    fn new(s: usize, n: usize) -> LayerShape {
        let ymax = (s / 2).min(n);
        let mut rows = Vec::with_capacity(ymax + 2);
        let mut offset = 0usize;
        for y in 0..=ymax as i64 {
            let x0 = (s as i64 + y).rem_euclid(3);
            let xlim = (s as i64 - 2 * y).min(n as i64);
            let len = if xlim < x0 { 0 } else { ((xlim - x0) / 3 + 1) as usize };
            rows.push((x0, offset));
            offset += 2 * len;
        }
        rows.push((0, offset));
        LayerShape { s, n, rows, cells: offset }
    }

    fn index(&self, x: i64, y: i64, flag: bool) -> Option<usize> {
        if x < 0 || y < 0 || x > self.n as i64 || x + 2 * y > self.s as i64 {
            return None;
        }
        let row = usize::try_from(y).ok()?;
        if row + 1 >= self.rows.len() {
            return None;
        }
        let (x0, offset) = self.rows[row];
        if x < x0 || (x - x0) % 3 != 0 {
            return None;
        }
        let slot = offset + 2 * ((x - x0) / 3) as usize + flag as usize;
        (slot < self.rows[row + 1].1).then_some(slot)
    }
}

fn base_layer<T: Weight>(n: usize) -> (LayerShape, Vec<T>) {
    let shape = LayerShape::new(0, n);
    let mut vals = vec![T::default(); shape.cells];
    for flag in [false, true] {
        if let Some(i) = shape.index(0, 0, flag) {
            vals[i] = T::one();
        }
    }
    (shape, vals)
}

fn next_layer<T: Weight>(prev: &LayerShape, prev_vals: &[T], s: usize, n: usize) -> (LayerShape, Vec<T>) {
    let shape = LayerShape::new(s, n);
    let mut vals = vec![T::default(); shape.cells];
    let get = |x: i64, y: i64, f: bool| prev.index(x, y, f).map(|i| &prev_vals[i]);
    let ymax = (s / 2).min(n) as i64;
    for y in 0..=ymax {
        let (x0, _) = shape.rows[y as usize];
        let xlim = (s as i64 - 2 * y).min(n as i64);
        let mut x = x0;
        while x <= xlim {
            // Branches: g, r, b (b only when the flag is down).
            let g = get(x, y + 1, false);
            let r = if x >= 1 { get(x - 1, y, true) } else { None };
            let b = if y >= 1 { get(x + 1, y - 1, false) } else { None };
            let with_b = T::sum3([g, r, b]);
            let without_b = T::sum3([g, r, None]);
            let i = shape.index(x, y, false).expect("in shape");
            vals[i] = with_b;
            let i = shape.index(x, y, true).expect("in shape");
            vals[i] = without_b;
            x += 3;
        }
    }
    (shape, vals)
}

/// Layer-store cells for the checkpointed sampler: every checkpoint plus
/// the largest (topmost) block.
fn sampler_cells(n: usize) -> usize {
    let total = 3 * n;
    let stride = ((total + 1) as f64).sqrt().ceil() as usize;
    let mut cells = 0usize;
    for s in (0..=total).step_by(stride) {
        cells += LayerShape::new(s, n).cells;
    }
    for s in total.saturating_sub(stride - 1)..=total {
        cells += LayerShape::new(s, n).cells;
    }
    cells
}

/// Exact `|W_n|` by dynamic programming (two rolling layers; cheap in
/// memory compared to the sampler).
pub fn dp_count(n: usize) -> Result<BigUint, DpError> {
    dp_count_with_budget(n, DEFAULT_MEMORY_BUDGET)
}

pub fn dp_count_with_budget(n: usize, budget: usize) -> Result<BigUint, DpError> {
    let per_cell = <BigUint as Weight>::bytes_per_cell(n);
    let peak = 2 * LayerShape::new(3 * n, n).cells * per_cell;
    if peak > budget {
        return Err(DpError::MemoryBudget { n, mode: DpMode::Exact, required: peak, budget });
    }
    let (mut shape, mut vals) = base_layer::<BigUint>(n);
    for s in 1..=3 * n {
        let (ns, nv) = next_layer(&shape, &vals, s, n);
        shape = ns;
        vals = nv;
    }
    let i = shape.index(0, 0, false).expect("origin");
    Ok(vals[i].clone())
}

struct Table<T: Weight> {
    n: usize,
    stride: usize,
    /// Checkpoint layers at s = 0, stride, 2 stride, ...
    checkpoints: Vec<Vec<T>>,
    /// Currently materialized block [block_start, block_start + stride).
    block_start: usize,
    block: Vec<Vec<T>>,
    count: T,
}

impl<T: Weight> Table<T> {
    fn build(n: usize) -> Table<T> {
        let total = 3 * n;
        let stride = ((total + 1) as f64).sqrt().ceil() as usize;
        let mut checkpoints = Vec::with_capacity(total / stride + 1);
        let (mut shape, mut vals) = base_layer::<T>(n);
        checkpoints.push(vals.clone());
        for s in 1..=total {
            let (ns, nv) = next_layer(&shape, &vals, s, n);
            shape = ns;
            vals = nv;
            if s % stride == 0 {
                checkpoints.push(vals.clone());
            }
        }
        let i = shape.index(0, 0, false).expect("origin");
        let count = vals[i].clone();
        let mut table = Table { n, stride, checkpoints, block_start: usize::MAX, block: Vec::new(), count };
        // Seed the block cache with the top block.
        table.ensure(total);
        table
    }

    fn ensure(&mut self, s: usize) {
        let start = (s / self.stride) * self.stride;
        if self.block_start == start {
            return;
        }
        let n = self.n;
        let total = 3 * n;
        let end = (start + self.stride - 1).min(total);
        let mut block = Vec::with_capacity(end - start + 1);
        let mut shape = LayerShape::new(start, n);
        let mut vals = self.checkpoints[start / self.stride].clone();
        block.push(vals.clone());
        for t in start + 1..=end {
            let (ns, nv) = next_layer(&shape, &vals, t, n);
            shape = ns;
            vals = nv;
            block.push(vals.clone());
        }
        self.block_start = start;
        self.block = block;
    }

    fn layer(&mut self, s: usize) -> &[T] {
        self.ensure(s);
        &self.block[s - self.block_start]
    }

    fn sample_batch(&mut self, k: usize, seed: &SeedSpec, substream_base: u64) -> Vec<Word> {
        let total = 3 * self.n;
        let mut rngs: Vec<ChaCha8Rng> =
            (0..k).map(|j| seed.stream(substream_base + j as u64)).collect();
        let mut states: Vec<(i64, i64, bool)> = vec![(0, 0, false); k];
        let mut words: Vec<Vec<Color>> = vec![Vec::with_capacity(total); k];
        for step in 0..total {
            let s_next = total - step - 1;
            let n = self.n;
            let shape = LayerShape::new(s_next, n);
            let layer = self.layer(s_next);
            for j in 0..k {
                let (x, y, f) = states[j];
                let get = |x: i64, y: i64, fl: bool| shape.index(x, y, fl).map(|i| &layer[i]);
                let g = get(x, y + 1, false);
                let r = if x >= 1 { get(x - 1, y, true) } else { None };
                let b = if !f && y >= 1 { get(x + 1, y - 1, false) } else { None };
                let nonzero = |w: Option<&T>| w.filter(|v| !v.is_zero()).map(|v| v as &T);
                let parts = [nonzero(g), nonzero(r), nonzero(b)];
                let choice = T::pick(parts, &mut rngs[j]);
                let (letter, next) = match choice {
                    0 => (Color::G, (x, y + 1, false)),
                    1 => (Color::R, (x - 1, y, true)),
                    _ => (Color::B, (x + 1, y - 1, false)),
                };
                words[j].push(letter);
                states[j] = next;
            }
        }
        debug_assert!(states.iter().all(|&(x, y, _)| x == 0 && y == 0));
        words.into_iter().map(Word::finite).collect()
    }
}

enum TableKind {
    Exact(Table<BigUint>),
    Float(Table<F64E>),
}

/// A reusable sampler for one size `n`. Building it runs the full DP once
/// (with sqrt-spaced checkpoints); each batch of samples re-materializes
/// each block once while sweeping the word left to right.
pub struct DpSampler {
    n: usize,
    mode: DpMode,
    table: TableKind,
}

impl DpSampler {
    pub fn new(n: usize, mode: DpMode) -> Result<DpSampler, DpError> {
        DpSampler::with_budget(n, mode, DEFAULT_MEMORY_BUDGET)
    }

    pub fn with_budget(n: usize, mode: DpMode, budget: usize) -> Result<DpSampler, DpError> {
        let per_cell = match mode {
            DpMode::Exact => <BigUint as Weight>::bytes_per_cell(n),
            DpMode::Float => <F64E as Weight>::bytes_per_cell(n),
        };
        let required = sampler_cells(n) * per_cell;
        if required > budget {
            return Err(DpError::MemoryBudget { n, mode, required, budget });
        }
        let table = match mode {
            DpMode::Exact => TableKind::Exact(Table::build(n)),
            DpMode::Float => TableKind::Float(Table::build(n)),
        };
        Ok(DpSampler { n, mode, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> DpMode {
        self.mode
    }

    /// `|W_n|`, available exactly in exact mode only.
    pub fn count(&self) -> Option<BigUint> {
        match &self.table {
            TableKind::Exact(t) => Some(t.count.clone()),
            TableKind::Float(_) => None,
        }
    }

    /// `log10 |W_n|` (subject to the mode's rounding error); defined for
    /// sizes whose count overflows any primitive.
    pub fn count_log10(&self) -> f64 {
        match &self.table {
            TableKind::Exact(t) => {
                let bits = t.count.bits();
                if bits <= 52 {
                    t.count.approx_f64().log10()
                } else {
                    let shift = bits - 52;
                    let top: u64 = u64::try_from(&t.count >> shift).expect("52 bits");
                    (top as f64).log10() + shift as f64 * std::f64::consts::LOG10_2
                }
            }
            TableKind::Float(t) => {
                t.count.m.log10() + t.count.e as f64 * std::f64::consts::LOG10_2
            }
        }
    }

    /// Bound on the relative rounding error of any stored count (zero in
    /// exact mode).
    pub fn relative_error_bound(&self) -> f64 {
        match self.mode {
            DpMode::Exact => 0.0,
            DpMode::Float => 9.0 * self.n as f64 * f64::EPSILON,
        }
    }

    /// Draws `k` words; sample `j` uses substream `substream_base + j`, so
    /// the output is byte-identical however the batch is split.
    pub fn sample_batch(&mut self, k: usize, seed: &SeedSpec, substream_base: u64) -> Vec<Word> {
        match &mut self.table {
            TableKind::Exact(t) => t.sample_batch(k, seed, substream_base),
            TableKind::Float(t) => t.sample_batch(k, seed, substream_base),
        }
    }
}

/// One-shot exact-count unless told otherwise.
pub fn dp_sample(n: usize, seed: &SeedSpec, substream: u64, mode: DpMode) -> Result<Word, DpError> {
    let mut sampler = DpSampler::new(n, mode)?;
    Ok(sampler.sample_batch(1, seed, substream).pop().expect("one sample"))
}

pub fn dp_sample_batch(
    n: usize,
    k: usize,
    seed: &SeedSpec,
    substream_base: u64,
    mode: DpMode,
) -> Result<Vec<Word>, DpError> {
    let mut sampler = DpSampler::new(n, mode)?;
    Ok(sampler.sample_batch(k, seed, substream_base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::count::count_wn_closed;
    use crate::words::validate_wn;

    #[test]
    fn dp_count_matches_closed_form() {
        for n in 1..=30 {
            assert_eq!(dp_count(n).unwrap(), count_wn_closed(n), "n = {n}");
        }
    }

    #[test]
    fn float_count_close() {
        for n in [10usize, 40] {
            let float = DpSampler::new(n, DpMode::Float).unwrap().count_log10();
            let exact = DpSampler::new(n, DpMode::Exact).unwrap().count_log10();
            assert!((float - exact).abs() < 1e-9, "n = {n}: {float} vs {exact}");
        }
    }

    #[test]
    fn samples_are_members() {
        let seed = SeedSpec::new(5);
        let mut sampler = DpSampler::new(12, DpMode::Exact).unwrap();
        for (j, w) in sampler.sample_batch(20, &seed, 0).into_iter().enumerate() {
            assert!(validate_wn(&w).is_member(), "sample {j}: {w}");
        }
    }

    #[test]
    fn batch_split_invariant() {
        let seed = SeedSpec::new(77);
        let mut sampler = DpSampler::new(8, DpMode::Exact).unwrap();
        let all = sampler.sample_batch(6, &seed, 100);
        let mut sampler2 = DpSampler::new(8, DpMode::Exact).unwrap();
        let first = sampler2.sample_batch(2, &seed, 100);
        let rest = sampler2.sample_batch(4, &seed, 102);
        let glued: Vec<Word> = first.into_iter().chain(rest).collect();
        assert_eq!(all, glued);
    }

    #[test]
    fn float_mode_samples_validate() {
        let seed = SeedSpec::new(6);
        let mut sampler = DpSampler::new(60, DpMode::Float).unwrap();
        for w in sampler.sample_batch(5, &seed, 0) {
            assert!(validate_wn(&w).is_member());
        }
    }

    #[test]
    fn memory_refusal() {
        let err = DpSampler::with_budget(500, DpMode::Exact, 1 << 20).unwrap_err();
        match err {
            DpError::MemoryBudget { required, budget, .. } => {
                assert!(required > budget);
            }
        }
    }
}
