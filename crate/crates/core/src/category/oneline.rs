//! Moves on single-row partitions.
//!
//! Categories of partitions are rotation-closed, so a degree-truncated
//! category is fully described by its members with no upper legs (the
//! "lower-aligned" forms); two-row members are recovered by rotating legs
//! back up. The saturation engine explores lower-aligned forms under the
//! moves below, each of which is a composite of the calculus operations and
//! duality caps and therefore never leaves the generated category.

use crate::calculus::UnionFind;
use crate::partition::{Color, ColorWord, ColoredPartition};

/// Cyclic rotation: the leftmost leg travels around the diagram to the
/// right end. Up the left edge it flips color, down the right edge it flips
/// back, so the word is cycled with colors preserved and the block structure
/// follows the leg.
pub fn cyclic_shift(p: &ColoredPartition) -> ColoredPartition {
    debug_assert_eq!(p.upper_len(), 0);
    let n = p.lower_len();
    if n <= 1 {
        return p.clone();
    }
    let mut colors = Vec::with_capacity(n);
    for i in 1..n {
        colors.push(p.lower_word().get(i));
    }
    colors.push(p.lower_word().get(0));
    let mut raw = Vec::with_capacity(n);
    for i in 1..n {
        raw.push(p.class_of(i) as usize);
    }
    raw.push(p.class_of(0) as usize);
    ColoredPartition::from_classes(ColorWord::empty(), ColorWord::new(colors), &raw)
}

/// The upside-down turning in lower-aligned coordinates: word reversed and
/// color-flipped, leg `i` goes to position `n+1-i`.
pub fn reflected(p: &ColoredPartition) -> ColoredPartition {
    debug_assert_eq!(p.upper_len(), 0);
    let n = p.lower_len();
    let colors = p.lower_word().reversed_flipped();
    let mut raw = Vec::with_capacity(n);
    for i in 0..n {
        raw.push(p.class_of(n - 1 - i) as usize);
    }
    ColoredPartition::from_classes(ColorWord::empty(), colors, &raw)
}

/// Glues legs `i` and `i+1` (0-based) with a cup, merging their blocks and
/// deleting both legs; closed middle components are discarded.
pub fn contract(p: &ColoredPartition, i: usize) -> ColoredPartition {
    debug_assert_eq!(p.upper_len(), 0);
    let n = p.lower_len();
    debug_assert!(i + 1 < n);
    let mut colors = Vec::with_capacity(n - 2);
    let mut raw = Vec::with_capacity(n - 2);
    // Relabel through a merged class: reuse the class vector with the two
    // contracted legs' classes unified.
    let a = p.class_of(i) as usize;
    let b = p.class_of(i + 1) as usize;
    for j in 0..n {
        if j == i || j == i + 1 {
            continue;
        }
        colors.push(p.lower_word().get(j));
        let mut c = p.class_of(j) as usize;
        if c == b {
            c = a;
        }
        raw.push(c);
    }
    ColoredPartition::from_classes(ColorWord::empty(), ColorWord::new(colors), &raw)
}

/// Colors of the two legs a contraction at `i` would glue.
pub fn contraction_colors(p: &ColoredPartition, i: usize) -> (Color, Color) {
    (p.lower_word().get(i), p.lower_word().get(i + 1))
}

/// Composes `p` with `id ⊗ tool ⊗ id` below: the window of legs starting at
/// `offset` is fed through `tool`. Returns `None` when the window does not
/// match the tool's upper word. Closed middle components are discarded.
pub fn apply_tool(
    p: &ColoredPartition,
    offset: usize,
    tool: &ColoredPartition,
) -> Option<ColoredPartition> {
    debug_assert_eq!(p.upper_len(), 0);
    let n = p.lower_len();
    let kt = tool.upper_len();
    let lt = tool.lower_len();
    if offset + kt > n {
        return None;
    }
    for i in 0..kt {
        if p.lower_word().get(offset + i) != tool.upper_word().get(i) {
            return None;
        }
    }
    let total = n + kt + lt;
    let mut uf = UnionFind::new(total);
    // Blocks of p occupy nodes 0..n, blocks of tool nodes n..n+kt+lt.
    union_classes(&mut uf, p.classes(), 0);
    union_classes(&mut uf, tool.classes(), n);
    for i in 0..kt {
        uf.union(offset + i, n + i);
    }
    let mut colors = Vec::with_capacity(n - kt + lt);
    let mut raw = Vec::with_capacity(n - kt + lt);
    for j in 0..offset {
        colors.push(p.lower_word().get(j));
        raw.push(uf.find(j));
    }
    for j in 0..lt {
        colors.push(tool.lower_word().get(j));
        raw.push(uf.find(n + kt + j));
    }
    for j in offset + kt..n {
        colors.push(p.lower_word().get(j));
        raw.push(uf.find(j));
    }
    Some(ColoredPartition::from_classes(
        ColorWord::empty(),
        ColorWord::new(colors),
        &raw,
    ))
}

fn union_classes(uf: &mut UnionFind, classes: &[u8], offset: usize) {
    let nblocks = classes.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut first: Vec<Option<usize>> = vec![None; nblocks];
    for (i, &c) in classes.iter().enumerate() {
        match first[c as usize] {
            None => first[c as usize] = Some(i),
            Some(f) => uf.union(offset + f, offset + i),
        }
    }
}

/// True for a 2-leg single-block lower cap `[|xy] {d1 d2}`.
pub fn as_cap_pair(p: &ColoredPartition) -> Option<(Color, Color)> {
    if p.upper_len() == 0 && p.lower_len() == 2 && p.block_count() == 1 {
        Some((p.lower_word().get(0), p.lower_word().get(1)))
    } else {
        None
    }
}
