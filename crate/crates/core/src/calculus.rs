//! The operational calculus on partitions: horizontal and vertical
//! concatenation, the upside-down involution, and edge rotations.
//!
//! Vertical concatenation keeps count of the closed middle blocks (loops):
//! at the operator level the product of the realizing maps picks up a factor
//! `N^loops`, while categories of partitions discard the factor.

use crate::partition::{ColorWord, ColoredPartition};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq, Clone)]
pub enum CalculusError {
    #[error("words do not match for composition: lower {lower} vs upper {upper}")]
    ComposeMismatch { lower: String, upper: String },
    #[error("cannot rotate: the {0} row is empty")]
    EmptyRow(&'static str),
}

/// Result of a vertical concatenation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositionResult {
    pub partition: ColoredPartition,
    /// Number of merged components living entirely in the glued middle row.
    pub loops: usize,
}

/// Minimal union-find over dense node ids.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u32;
        }
    }
}

/// Unions all legs sharing a class label, with nodes offset into a larger
/// union-find.
fn union_blocks(uf: &mut UnionFind, classes: &[u8], offset: usize) {
    let nblocks = classes.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut first: Vec<Option<usize>> = vec![None; nblocks];
    for (i, &c) in classes.iter().enumerate() {
        match first[c as usize] {
            None => first[c as usize] = Some(i),
            Some(f) => uf.union(offset + f, offset + i),
        }
    }
}

/// Horizontal concatenation: `p` on the left, `q` on the right.
pub fn tensor(p: &ColoredPartition, q: &ColoredPartition) -> ColoredPartition {
    let up = p.upper_word().concat(q.upper_word());
    let down = p.lower_word().concat(q.lower_word());
    let (k1, l1) = (p.upper_len(), p.lower_len());
    let (k2, l2) = (q.upper_len(), q.lower_len());
    let shift = p.total_legs();
    let mut raw = Vec::with_capacity(shift + q.total_legs());
    for i in 0..k1 {
        raw.push(p.class_of(i) as usize);
    }
    for i in 0..k2 {
        raw.push(shift + q.class_of(i) as usize);
    }
    for j in 0..l1 {
        raw.push(p.class_of(k1 + j) as usize);
    }
    for j in 0..l2 {
        raw.push(shift + q.class_of(k2 + j) as usize);
    }
    ColoredPartition::from_classes(up, down, &raw)
}

/// Vertical concatenation: `p` on top of `q`, glued along `p`'s lower row
/// and `q`'s upper row (which must agree color for color).
pub fn compose(
    p: &ColoredPartition,
    q: &ColoredPartition,
) -> Result<CompositionResult, CalculusError> {
    if p.lower_word() != q.upper_word() {
        return Err(CalculusError::ComposeMismatch {
            lower: p.lower_word().to_string(),
            upper: q.upper_word().to_string(),
        });
    }
    let (k1, l1) = (p.upper_len(), p.lower_len());
    let (k2, l2) = (q.upper_len(), q.lower_len());
    let np = k1 + l1;
    let total = np + k2 + l2;
    let mut uf = UnionFind::new(total);
    union_blocks(&mut uf, p.classes(), 0);
    union_blocks(&mut uf, q.classes(), np);
    for i in 0..l1 {
        uf.union(k1 + i, np + i);
    }
    // Result legs: p's upper row then q's lower row.
    let mut raw = Vec::with_capacity(k1 + l2);
    let mut outer = vec![false; total];
    for i in 0..k1 {
        let r = uf.find(i);
        outer[r] = true;
        raw.push(r);
    }
    for j in 0..l2 {
        let r = uf.find(np + k2 + j);
        outer[r] = true;
        raw.push(r);
    }
    // Loops: components made of middle legs only.
    let mut loops = 0;
    let mut seen = vec![false; total];
    for i in 0..l1 {
        let r = uf.find(k1 + i);
        if !outer[r] && !seen[r] {
            seen[r] = true;
            loops += 1;
        }
    }
    let partition = ColoredPartition::from_classes(
        p.upper_word().clone(),
        q.lower_word().clone(),
        &raw,
    );
    Ok(CompositionResult { partition, loops })
}

/// The upside-down turning: rows swap, colors and positions are preserved.
pub fn involve(p: &ColoredPartition) -> ColoredPartition {
    let (k, l) = (p.upper_len(), p.lower_len());
    let mut raw = Vec::with_capacity(k + l);
    for i in 0..l {
        raw.push(p.class_of(k + i) as usize);
    }
    for i in 0..k {
        raw.push(p.class_of(i) as usize);
    }
    ColoredPartition::from_classes(p.lower_word().clone(), p.upper_word().clone(), &raw)
}

/// Moves the leftmost upper leg to the leftmost lower position, inverting
/// its color; the block structure follows the moved leg.
pub fn rotate_left(p: &ColoredPartition) -> Result<ColoredPartition, CalculusError> {
    let (k, l) = (p.upper_len(), p.lower_len());
    if k == 0 {
        return Err(CalculusError::EmptyRow("upper"));
    }
    let up = p.upper_word().slice(1..k);
    let mut down_colors = Vec::with_capacity(l + 1);
    down_colors.push(p.upper_word().get(0).flipped());
    down_colors.extend(p.lower_word().iter());
    let mut raw = Vec::with_capacity(k + l);
    for i in 1..k {
        raw.push(p.class_of(i) as usize);
    }
    raw.push(p.class_of(0) as usize);
    for j in 0..l {
        raw.push(p.class_of(k + j) as usize);
    }
    Ok(ColoredPartition::from_classes(up, ColorWord::new(down_colors), &raw))
}

/// Inverse of [`rotate_left`]: moves the leftmost lower leg to the leftmost
/// upper position, inverting its color.
pub fn rotate_right(p: &ColoredPartition) -> Result<ColoredPartition, CalculusError> {
    let (k, l) = (p.upper_len(), p.lower_len());
    if l == 0 {
        return Err(CalculusError::EmptyRow("lower"));
    }
    let mut up_colors = Vec::with_capacity(k + 1);
    up_colors.push(p.lower_word().get(0).flipped());
    up_colors.extend(p.upper_word().iter());
    let down = p.lower_word().slice(1..l);
    let mut raw = Vec::with_capacity(k + l);
    raw.push(p.class_of(k) as usize);
    for i in 0..k {
        raw.push(p.class_of(i) as usize);
    }
    for j in 1..l {
        raw.push(p.class_of(k + j) as usize);
    }
    Ok(ColoredPartition::from_classes(ColorWord::new(up_colors), down, &raw))
}

/// All upper legs rotated down: the single-row form with word
/// `rev-flip(up) ++ down`. Equals `rotate_left` applied `k` times.
pub fn rotated_down(p: &ColoredPartition) -> ColoredPartition {
    let (k, l) = (p.upper_len(), p.lower_len());
    let down = p.upper_word().reversed_flipped().concat(p.lower_word());
    let mut raw = Vec::with_capacity(k + l);
    for i in 0..k {
        raw.push(p.class_of(k - 1 - i) as usize);
    }
    for j in 0..l {
        raw.push(p.class_of(k + j) as usize);
    }
    ColoredPartition::from_classes(ColorWord::empty(), down, &raw)
}

/// Rotates the first `m` legs of a single-row partition back up; the inverse
/// bookkeeping of [`rotated_down`].
pub fn rotated_up(p: &ColoredPartition, m: usize) -> ColoredPartition {
    debug_assert_eq!(p.upper_len(), 0, "rotated_up applies to single-row forms");
    debug_assert!(m <= p.lower_len());
    let n = p.lower_len();
    let up = ColorWord::new(
        (0..m)
            .map(|i| p.lower_word().get(m - 1 - i).flipped())
            .collect(),
    );
    let down = p.lower_word().slice(m..n);
    let mut raw = Vec::with_capacity(n);
    for i in 0..m {
        raw.push(p.class_of(m - 1 - i) as usize);
    }
    for j in m..n {
        raw.push(p.class_of(j) as usize);
    }
    ColoredPartition::from_classes(up, down, &raw)
}

/// The identity partition on a word: parallel strands of matching colors.
pub fn identity_partition(word: &ColorWord) -> ColoredPartition {
    let n = word.len();
    let mut raw = Vec::with_capacity(2 * n);
    for i in 0..n {
        raw.push(i);
    }
    for i in 0..n {
        raw.push(i);
    }
    ColoredPartition::from_classes(word.clone(), word.clone(), &raw)
}

/// True iff `p` is an identity partition on some word.
pub fn is_identity(p: &ColoredPartition) -> bool {
    let (k, l) = (p.upper_len(), p.lower_len());
    if k != l || p.upper_word() != p.lower_word() {
        return false;
    }
    (0..k).all(|i| p.class_of(i) == p.class_of(k + i) && p.class_of(i) as usize == i)
}
