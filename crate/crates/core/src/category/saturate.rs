//! Worklist saturation for generated categories.
//!
//! The engine explores lower-aligned (single-row) forms, which quotient out
//! edge rotations: a two-row member is recovered by rotating legs back up.
//! Moves, all composites of the calculus operations with duality caps:
//!
//! * cyclic shift and reflection — applied eagerly on discovery, so the set
//!   is always closed under rotations and the involution;
//! * contraction of adjacent legs with any cap available in the set (the
//!   matching caps are always present, unicolor caps unlock when derived);
//! * tensor of two discovered forms — covers horizontal concatenation of
//!   arbitrary members, since interleavings are shift-conjugates;
//! * small "tools": discovered diagrams of at most [`TOOL_SOURCE_LEGS`] legs
//!   applied through `id ⊗ tool ⊗ id` below a form (crossings re-wire legs,
//!   strands recolor them);
//! * a direct pairwise composition pass over the two-row members within the
//!   degree, run whenever the small strata are quiescent.
//!
//! Exploration is width-ascending with a canonical within-width order, so a
//! given seed set, degree, bound and budget always produce the same result,
//! regardless of the order in which seeds were supplied. The budget counts
//! rule applications; exhausting it truncates the exploration and is
//! reported in the outcome, never silently.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};

use super::oneline::{apply_tool, as_cap_pair, contract, contraction_colors, cyclic_shift, reflected};
use crate::calculus::{compose, is_identity, rotated_down, rotated_up, tensor};
use crate::partition::{cap, empty_partition, Color, ColoredPartition};

/// Largest diagram (total legs) whose rotations are registered as tools.
const TOOL_SOURCE_LEGS: usize = 4;

pub(crate) struct SaturationOutcome {
    /// Lower-aligned members with at most `degree` legs, canonically sorted.
    pub lower: std::collections::BTreeSet<ColoredPartition>,
    /// Whether the exploration reached a fixpoint within the budget.
    pub complete: bool,
    /// Rule applications spent (used by determinism diagnostics).
    #[allow(dead_code)]
    pub ops: u64,
}

enum Rescan {
    /// A new cap color pair became available: re-run contractions over the
    /// first `arena_len` discovered forms (later forms see the pair in
    /// their own insertion cascade).
    Cap((Color, Color), usize),
    /// A new tool arrived: apply to forms popped before this point.
    Tool(ColoredPartition, usize),
}

struct Saturator {
    degree: usize,
    bound: usize,
    budget: u64,
    ops: u64,
    exhausted: bool,
    /// Every discovered form, in discovery order; indices are stable.
    arena: Vec<ColoredPartition>,
    seen: HashSet<ColoredPartition>,
    /// Arena indices bucketed by width.
    by_width: Vec<Vec<u32>>,
    queue: BinaryHeap<Reverse<ColoredPartition>>,
    popped: Vec<ColoredPartition>,
    tools: BTreeMap<Vec<Color>, Vec<ColoredPartition>>,
    cap_pairs: [[bool; 2]; 2],
    rescans: VecDeque<Rescan>,
    post_done: HashSet<ColoredPartition>,
}

fn color_idx(c: Color) -> usize {
    match c {
        Color::White => 0,
        Color::Black => 1,
    }
}

impl Saturator {
    fn new(degree: usize, bound: usize, budget: u64) -> Self {
        Saturator {
            degree,
            bound,
            budget,
            ops: 0,
            exhausted: false,
            arena: Vec::new(),
            seen: HashSet::new(),
            by_width: vec![Vec::new(); bound + 1],
            queue: BinaryHeap::new(),
            popped: Vec::new(),
            tools: BTreeMap::new(),
            cap_pairs: [[false; 2]; 2],
            rescans: VecDeque::new(),
            post_done: HashSet::new(),
        }
    }

    fn charge(&mut self) -> bool {
        if self.ops >= self.budget {
            self.exhausted = true;
            return false;
        }
        self.ops += 1;
        true
    }

    fn cap_available(&self, pair: (Color, Color)) -> bool {
        self.cap_pairs[color_idx(pair.0)][color_idx(pair.1)]
    }

    /// Inserts a lower-aligned form and eagerly closes its shift orbit,
    /// reflection and available contractions.
    fn insert(&mut self, p: ColoredPartition) {
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            if self.exhausted {
                return;
            }
            if q.total_legs() > self.bound || self.seen.contains(&q) {
                continue;
            }
            self.seen.insert(q.clone());
            let w = q.total_legs();
            self.arena.push(q.clone());
            self.by_width[w].push(self.arena.len() as u32 - 1);
            self.queue.push(Reverse(q.clone()));

            if let Some(pair) = as_cap_pair(&q) {
                let slot = &mut self.cap_pairs[color_idx(pair.0)][color_idx(pair.1)];
                if !*slot {
                    *slot = true;
                    self.rescans.push_back(Rescan::Cap(pair, self.arena.len()));
                }
            }
            if w > 0 && w <= TOOL_SOURCE_LEGS {
                for k in 1..=w {
                    let tool = rotated_up(&q, k);
                    if is_identity(&tool) {
                        continue;
                    }
                    if tool.upper_len() == 2 && tool.lower_len() == 0 && tool.block_count() == 1 {
                        continue; // plain cups are the contraction move
                    }
                    let key: Vec<Color> = tool.upper_word().colors().to_vec();
                    self.tools.entry(key).or_default().push(tool.clone());
                    self.rescans.push_back(Rescan::Tool(tool, self.popped.len()));
                }
            }

            // Eager unary cascade.
            if w > 1 {
                if !self.charge() {
                    return;
                }
                stack.push(cyclic_shift(&q));
            }
            if !self.charge() {
                return;
            }
            stack.push(reflected(&q));
            for i in 0..w.saturating_sub(1) {
                if self.cap_available(contraction_colors(&q, i)) {
                    if !self.charge() {
                        return;
                    }
                    stack.push(contract(&q, i));
                }
            }
        }
    }

    fn run_rescan(&mut self, rescan: Rescan) {
        match rescan {
            Rescan::Cap(pair, upto) => {
                for idx in 0..upto.min(self.arena.len()) {
                    if self.exhausted {
                        return;
                    }
                    let candidates: Vec<ColoredPartition> = {
                        let q = &self.arena[idx];
                        (0..q.total_legs().saturating_sub(1))
                            .filter(|&i| contraction_colors(q, i) == pair)
                            .map(|i| contract(q, i))
                            .collect()
                    };
                    for c in candidates {
                        if !self.charge() {
                            return;
                        }
                        self.insert(c);
                    }
                }
            }
            Rescan::Tool(tool, upto) => {
                for idx in 0..upto.min(self.popped.len()) {
                    if self.exhausted {
                        return;
                    }
                    let q = self.popped[idx].clone();
                    self.apply_tool_everywhere(&q, &tool);
                }
            }
        }
    }

    fn apply_tool_everywhere(&mut self, q: &ColoredPartition, tool: &ColoredPartition) {
        let w = q.total_legs();
        let kt = tool.upper_len();
        if kt > w {
            return;
        }
        if w + tool.lower_len() > self.bound + kt {
            return; // result would exceed the bound
        }
        for offset in 0..=w - kt {
            if self.exhausted {
                return;
            }
            if !self.charge() {
                return;
            }
            if let Some(r) = apply_tool(q, offset, tool) {
                self.insert(r);
            }
        }
    }

    fn process_pop(&mut self, q: ColoredPartition) {
        let w = q.total_legs();
        // Tensor against everything small enough, in both orders. Items
        // discovered during this pop pair up when they pop themselves.
        for w2 in 1..=self.bound.saturating_sub(w) {
            let mut idx = 0;
            loop {
                if idx >= self.by_width[w2].len() {
                    break;
                }
                if self.exhausted {
                    return;
                }
                let arena_idx = self.by_width[w2][idx] as usize;
                idx += 1;
                let left = {
                    let partner = &self.arena[arena_idx];
                    tensor(&q, partner)
                };
                if !self.charge() {
                    return;
                }
                self.insert(left);
                let right = {
                    let partner = &self.arena[arena_idx];
                    tensor(partner, &q)
                };
                if !self.charge() {
                    return;
                }
                self.insert(right);
            }
        }
        // Tools over every window.
        let tool_list: Vec<ColoredPartition> = {
            let mut v = Vec::new();
            for len in 1..=TOOL_SOURCE_LEGS.min(w) {
                for offset in 0..=w - len {
                    let key: Vec<Color> =
                        (offset..offset + len).map(|i| q.lower_word().get(i)).collect();
                    if let Some(ts) = self.tools.get(&key) {
                        v.extend(ts.iter().cloned());
                    }
                }
            }
            v.sort();
            v.dedup();
            v
        };
        for tool in tool_list {
            if self.exhausted {
                return;
            }
            self.apply_tool_everywhere(&q, &tool);
        }
        self.popped.push(q);
    }

    /// Pairwise vertical composition over the two-row members within the
    /// degree. Returns true if a nonempty frontier was processed.
    fn post_pass(&mut self) -> bool {
        let mut members: Vec<ColoredPartition> = Vec::new();
        for p in &self.arena {
            if p.total_legs() <= self.degree {
                for k in 0..=p.total_legs() {
                    members.push(rotated_up(p, k));
                }
            }
        }
        members.sort();
        members.dedup();
        let frontier: Vec<ColoredPartition> = members
            .iter()
            .filter(|m| !self.post_done.contains(*m))
            .cloned()
            .collect();
        if frontier.is_empty() {
            return false;
        }
        let mut by_up: BTreeMap<Vec<Color>, Vec<usize>> = BTreeMap::new();
        let mut by_down: BTreeMap<Vec<Color>, Vec<usize>> = BTreeMap::new();
        for (i, m) in members.iter().enumerate() {
            by_up.entry(m.upper_word().colors().to_vec()).or_default().push(i);
            by_down.entry(m.lower_word().colors().to_vec()).or_default().push(i);
        }
        for f in &frontier {
            if self.exhausted {
                break;
            }
            if let Some(partners) = by_up.get(f.lower_word().colors()) {
                for &i in partners {
                    if !self.charge() {
                        break;
                    }
                    let r = compose(f, &members[i]).expect("word-matched composition");
                    self.insert(rotated_down(&r.partition));
                }
            }
            if self.exhausted {
                break;
            }
            if let Some(partners) = by_down.get(f.upper_word().colors()) {
                for &i in partners {
                    if !self.charge() {
                        break;
                    }
                    let r = compose(&members[i], f).expect("word-matched composition");
                    self.insert(rotated_down(&r.partition));
                }
            }
        }
        self.post_done.extend(frontier);
        true
    }

    fn run(&mut self, seeds: Vec<ColoredPartition>) -> SaturationOutcome {
        self.insert(empty_partition());
        self.insert(cap(Color::White, Color::Black));
        self.insert(cap(Color::Black, Color::White));
        for s in seeds {
            self.insert(s);
        }
        loop {
            if self.exhausted {
                break;
            }
            if let Some(r) = self.rescans.pop_front() {
                self.run_rescan(r);
                continue;
            }
            let small_next = self
                .queue
                .peek()
                .map(|Reverse(p)| p.total_legs() <= self.degree)
                .unwrap_or(false);
            if small_next {
                let Reverse(p) = self.queue.pop().unwrap();
                self.process_pop(p);
                continue;
            }
            if self.post_pass() {
                continue;
            }
            if let Some(Reverse(p)) = self.queue.pop() {
                self.process_pop(p);
                continue;
            }
            break;
        }
        let complete = !self.exhausted;
        let lower: std::collections::BTreeSet<ColoredPartition> = self
            .arena
            .iter()
            .filter(|p| p.total_legs() <= self.degree)
            .cloned()
            .collect();
        SaturationOutcome {
            lower,
            complete,
            ops: self.ops,
        }
    }
}

/// Saturates the closure of `seeds` (lower-aligned forms) together with the
/// base caps, keeping explored forms within `bound` legs, and returns the
/// members within `degree` legs.
pub(crate) fn saturate(
    seeds: &[ColoredPartition],
    degree: usize,
    bound: usize,
    budget: u64,
) -> SaturationOutcome {
    let mut sat = Saturator::new(degree, bound, budget);
    sat.run(seeds.to_vec())
}
