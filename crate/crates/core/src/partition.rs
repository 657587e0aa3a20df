//! Two-colored partitions in canonical form.
//!
//! A [`ColoredPartition`] is a set partition of an upper row of `k` points
//! and a lower row of `l` points, each point colored white or black. Legs
//! are numbered in traversal order (upper row left to right, then lower row
//! left to right) and the block structure is stored as a restricted-growth
//! labeling over that order, which makes the representation canonical by
//! construction: two partitions are equal iff their fields are identical.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Leg color; white corresponds to the fundamental representation, black to
/// its conjugate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Color {
    White,
    Black,
}

impl Color {
    /// The opposite color.
    pub fn flipped(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'w' => Some(Color::White),
            'b' => Some(Color::Black),
            _ => None,
        }
    }
}

/// A finite word over `{w, b}`; one row of a partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct ColorWord(Vec<Color>);

impl ColorWord {
    pub fn new(colors: Vec<Color>) -> Self {
        ColorWord(colors)
    }

    pub fn empty() -> Self {
        ColorWord(Vec::new())
    }

    /// All-white word of the given length.
    pub fn white(len: usize) -> Self {
        ColorWord(vec![Color::White; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Color {
        self.0[i]
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.0.iter().copied()
    }

    pub fn concat(&self, other: &ColorWord) -> ColorWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ColorWord(v)
    }

    /// Word reversed with every color flipped; the row as seen after
    /// rotating it around an edge of the diagram.
    pub fn reversed_flipped(&self) -> ColorWord {
        ColorWord(self.0.iter().rev().map(|c| c.flipped()).collect())
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> ColorWord {
        ColorWord(self.0[range].to_vec())
    }
}

impl fmt::Display for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for ColorWord {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let mut v = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match Color::from_char(ch) {
                Some(c) => v.push(c),
                None => {
                    return Err(PartitionError::Parse {
                        position: i,
                        message: format!("invalid color character {ch:?}, expected 'w' or 'b'"),
                    })
                }
            }
        }
        Ok(ColorWord(v))
    }
}

impl Serialize for ColorWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ColorWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which row a leg belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Row {
    Upper,
    Lower,
}

/// A single attachment point: row plus 1-based index within the row.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Leg {
    pub row: Row,
    pub index: usize,
}

impl Leg {
    pub fn upper(index: usize) -> Leg {
        Leg { row: Row::Upper, index }
    }

    pub fn lower(index: usize) -> Leg {
        Leg { row: Row::Lower, index }
    }
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Upper => write!(f, "u{}", self.index),
            Row::Lower => write!(f, "d{}", self.index),
        }
    }
}

impl FromStr for Leg {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let err = |m: String| PartitionError::Parse { position: 0, message: m };
        let mut chars = s.chars();
        let row = match chars.next() {
            Some('u') => Row::Upper,
            Some('d') => Row::Lower,
            _ => return Err(err(format!("invalid leg {s:?}, expected u<i> or d<j>"))),
        };
        let index: usize = chars
            .as_str()
            .parse()
            .map_err(|_| err(format!("invalid leg index in {s:?}")))?;
        if index == 0 {
            return Err(err(format!("leg index in {s:?} must be 1-based")));
        }
        Ok(Leg { row, index })
    }
}

#[derive(Error, Debug, PartialEq, Eq, Clone)]
pub enum PartitionError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("leg {0} referenced twice")]
    DuplicateLeg(String),
    #[error("leg {0} missing from all blocks")]
    MissingLeg(String),
    #[error("leg {leg} out of range for word of length {len}")]
    LegOutOfRange { leg: String, len: usize },
    #[error("empty block")]
    EmptyBlock,
    #[error("index tuple length {got} does not match leg count {expected}")]
    IndexLengthMismatch { expected: usize, got: usize },
    #[error("enumeration bound exceeded: {legs} legs > bound {bound}")]
    BoundExceeded { legs: usize, bound: usize },
    #[error("unknown filter {0:?}")]
    UnknownFilter(String),
}

/// A two-colored partition in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredPartition {
    up: ColorWord,
    down: ColorWord,
    /// Block label of each leg in traversal order, in restricted-growth
    /// form: labels appear in first-use order starting from 0.
    classes: Vec<u8>,
}

impl Ord for ColoredPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        // Degree-first order so that minimal witnesses have the fewest legs.
        self.total_legs()
            .cmp(&other.total_legs())
            .then_with(|| self.up.len().cmp(&other.up.len()))
            .then_with(|| self.up.cmp(&other.up))
            .then_with(|| self.down.cmp(&other.down))
            .then_with(|| self.classes.cmp(&other.classes))
    }
}

impl PartialOrd for ColoredPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn normalize_classes(raw: &[usize]) -> Vec<u8> {
    let width = raw.iter().max().map_or(1, |&m| m + 1);
    let mut map: Vec<Option<u8>> = vec![None; width];
    let mut next = 0u8;
    let mut out = Vec::with_capacity(raw.len());
    for &r in raw {
        let slot = &mut map[r];
        let label = match *slot {
            Some(l) => l,
            None => {
                let l = next;
                *slot = Some(l);
                next += 1;
                l
            }
        };
        out.push(label);
    }
    out
}

impl ColoredPartition {
    /// Builds a partition from explicit blocks, validating that they cover
    /// every leg exactly once, and canonicalizes.
    pub fn new(
        up: ColorWord,
        down: ColorWord,
        blocks: &[Vec<Leg>],
    ) -> Result<Self, PartitionError> {
        let k = up.len();
        let l = down.len();
        let n = k + l;
        let mut raw: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for leg in block {
                let lin = match leg.row {
                    Row::Upper => {
                        if leg.index == 0 || leg.index > k {
                            return Err(PartitionError::LegOutOfRange {
                                leg: leg.to_string(),
                                len: k,
                            });
                        }
                        leg.index - 1
                    }
                    Row::Lower => {
                        if leg.index == 0 || leg.index > l {
                            return Err(PartitionError::LegOutOfRange {
                                leg: leg.to_string(),
                                len: l,
                            });
                        }
                        k + leg.index - 1
                    }
                };
                if raw[lin].is_some() {
                    return Err(PartitionError::DuplicateLeg(leg.to_string()));
                }
                raw[lin] = Some(b);
            }
        }
        let mut flat = Vec::with_capacity(n);
        for (lin, slot) in raw.iter().enumerate() {
            match slot {
                Some(b) => flat.push(*b),
                None => {
                    let leg = if lin < k {
                        Leg::upper(lin + 1)
                    } else {
                        Leg::lower(lin - k + 1)
                    };
                    return Err(PartitionError::MissingLeg(leg.to_string()));
                }
            }
        }
        Ok(ColoredPartition {
            up,
            down,
            classes: normalize_classes(&flat),
        })
    }

    /// Builds a partition from a block label per leg in traversal order.
    /// Labels are relabeled to restricted-growth form.
    pub fn from_classes(up: ColorWord, down: ColorWord, raw: &[usize]) -> Self {
        assert_eq!(raw.len(), up.len() + down.len(), "class vector length mismatch");
        ColoredPartition {
            up,
            down,
            classes: normalize_classes(raw),
        }
    }

    pub fn upper_word(&self) -> &ColorWord {
        &self.up
    }

    pub fn lower_word(&self) -> &ColorWord {
        &self.down
    }

    pub fn upper_len(&self) -> usize {
        self.up.len()
    }

    pub fn lower_len(&self) -> usize {
        self.down.len()
    }

    pub fn total_legs(&self) -> usize {
        self.classes.len()
    }

    /// Block label of a leg by linear position (upper row first).
    pub fn class_of(&self, linear: usize) -> u8 {
        self.classes[linear]
    }

    pub fn classes(&self) -> &[u8] {
        &self.classes
    }

    pub fn block_count(&self) -> usize {
        self.classes.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    /// Color of a leg by linear position.
    pub fn color_at(&self, linear: usize) -> Color {
        let k = self.up.len();
        if linear < k {
            self.up.get(linear)
        } else {
            self.down.get(linear - k)
        }
    }

    fn leg_at(&self, linear: usize) -> Leg {
        let k = self.up.len();
        if linear < k {
            Leg::upper(linear + 1)
        } else {
            Leg::lower(linear - k + 1)
        }
    }

    /// Blocks in canonical order (by earliest leg), legs in traversal order.
    pub fn blocks(&self) -> Vec<Vec<Leg>> {
        let mut out: Vec<Vec<Leg>> = vec![Vec::new(); self.block_count()];
        for (lin, &c) in self.classes.iter().enumerate() {
            out[c as usize].push(self.leg_at(lin));
        }
        out
    }

    /// Block sizes indexed by block label.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.block_count()];
        for &c in &self.classes {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// The Kronecker symbol: 1 iff the combined index assignment is constant
    /// on every block.
    pub fn delta(&self, upper: &[usize], lower: &[usize]) -> Result<bool, PartitionError> {
        if upper.len() != self.up.len() {
            return Err(PartitionError::IndexLengthMismatch {
                expected: self.up.len(),
                got: upper.len(),
            });
        }
        if lower.len() != self.down.len() {
            return Err(PartitionError::IndexLengthMismatch {
                expected: self.down.len(),
                got: lower.len(),
            });
        }
        let mut assigned: Vec<Option<usize>> = vec![None; self.block_count()];
        for (lin, &c) in self.classes.iter().enumerate() {
            let v = if lin < self.up.len() {
                upper[lin]
            } else {
                lower[lin - self.up.len()]
            };
            match assigned[c as usize] {
                None => assigned[c as usize] = Some(v),
                Some(w) if w == v => {}
                Some(_) => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Structural predicate flags.
    pub fn flags(&self) -> PartitionFlags {
        let sizes = self.block_sizes();
        let even_blocks = sizes.iter().all(|&s| s % 2 == 0);
        let pairing = sizes.iter().all(|&s| s == 2);

        // Matching: counting upper legs with sign -1 and lower legs with
        // sign +1, the signed white total equals the signed black total in
        // every block.
        let k = self.up.len();
        let nblocks = self.block_count();
        let mut white = vec![0i32; nblocks];
        let mut black = vec![0i32; nblocks];
        for (lin, &c) in self.classes.iter().enumerate() {
            let sign = if lin < k { -1 } else { 1 };
            match self.color_at(lin) {
                Color::White => white[c as usize] += sign,
                Color::Black => black[c as usize] += sign,
            }
        }
        let matching = white.iter().zip(&black).all(|(w, b)| w == b);

        PartitionFlags {
            even_blocks,
            pairing,
            noncrossing: self.is_noncrossing(),
            matching,
        }
    }

    /// Noncrossing in the circular order u1..uk then d_l..d_1: no two blocks
    /// interleave on that circle.
    fn is_noncrossing(&self) -> bool {
        let k = self.up.len();
        let l = self.down.len();
        let nblocks = self.block_count();
        if nblocks < 2 {
            return true;
        }
        // Circular position of each linear leg.
        let circ = |lin: usize| -> usize {
            if lin < k {
                lin
            } else {
                k + (l - 1 - (lin - k))
            }
        };
        let mut by_block: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
        for lin in 0..self.classes.len() {
            by_block[self.classes[lin] as usize].push(circ(lin));
        }
        for b in &mut by_block {
            b.sort_unstable();
        }
        // Two blocks cross iff their merged circular positions alternate in
        // at least four runs; run counts on any fixed cut of the circle
        // distinguish crossing (>= 4) from nested/disjoint (<= 3).
        for a in 0..nblocks {
            for b in a + 1..nblocks {
                if interleaves(&by_block[a], &by_block[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// The positions where the literal matching rule and the stricter
    /// per-color zero-sum reading disagree: blocks with equal but nonzero
    /// signed totals. Used to surface the ambiguity rather than resolve it.
    pub fn matching_readings_disagree(&self) -> bool {
        let k = self.up.len();
        let nblocks = self.block_count();
        let mut white = vec![0i32; nblocks];
        let mut black = vec![0i32; nblocks];
        for (lin, &c) in self.classes.iter().enumerate() {
            let sign = if lin < k { -1 } else { 1 };
            match self.color_at(lin) {
                Color::White => white[c as usize] += sign,
                Color::Black => black[c as usize] += sign,
            }
        }
        white
            .iter()
            .zip(&black)
            .any(|(w, b)| w == b && *w != 0)
    }

    /// Parses the text grammar `"[" up "|" down "]" block*`.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        Parser::new(text).parse()
    }

    pub fn to_record(&self) -> PartitionRecord {
        PartitionRecord {
            up: self.up.to_string(),
            down: self.down.to_string(),
            blocks: self
                .blocks()
                .iter()
                .map(|b| b.iter().map(|l| l.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_record(rec: &PartitionRecord) -> Result<Self, PartitionError> {
        let up: ColorWord = rec.up.parse()?;
        let down: ColorWord = rec.down.parse()?;
        let mut blocks = Vec::with_capacity(rec.blocks.len());
        for block in &rec.blocks {
            let legs = block
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<Leg>, _>>()?;
            blocks.push(legs);
        }
        ColoredPartition::new(up, down, &blocks)
    }
}

/// True iff the two sorted position lists alternate in four or more runs.
fn interleaves(a: &[usize], b: &[usize]) -> bool {
    let mut runs = 0u32;
    let mut last = 2u8; // 2 = none yet
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i] < b[j]);
        let cur = if take_a { 0 } else { 1 };
        if take_a {
            i += 1;
        } else {
            j += 1;
        }
        if cur != last {
            runs += 1;
            last = cur;
            if runs >= 4 {
                return true;
            }
        }
    }
    false
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.up, self.down)?;
        for block in self.blocks() {
            write!(f, " {{")?;
            for (i, leg) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{leg}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl FromStr for ColoredPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        ColoredPartition::parse(s)
    }
}

/// Structured interchange record; block and leg order is tolerated unordered
/// on input and canonical on output.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PartitionRecord {
    pub up: String,
    pub down: String,
    pub blocks: Vec<Vec<String>>,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> PartitionError {
        PartitionError::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, ch: u8) -> Result<(), PartitionError> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == ch {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {:?}, found {:?}",
                ch as char,
                self.text[self.pos..].chars().next().map(String::from).unwrap_or_default()
            )))
        }
    }

    fn word(&mut self) -> ColorWord {
        let mut v = Vec::new();
        while self.pos < self.bytes.len() {
            match Color::from_char(self.bytes[self.pos] as char) {
                Some(c) => {
                    v.push(c);
                    self.pos += 1;
                }
                None => break,
            }
        }
        ColorWord::new(v)
    }

    fn leg(&mut self) -> Result<Leg, PartitionError> {
        self.skip_ws();
        let start = self.pos;
        let row = match self.bytes.get(self.pos) {
            Some(b'u') => Row::Upper,
            Some(b'd') => Row::Lower,
            _ => return Err(self.error("expected leg u<i> or d<j>")),
        };
        self.pos += 1;
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected digits after leg row letter"));
        }
        let index: usize = self.text[digits_start..self.pos]
            .parse()
            .map_err(|_| self.error("leg index out of range"))?;
        if index == 0 {
            self.pos = start;
            return Err(self.error("leg index must be 1-based"));
        }
        Ok(Leg { row, index })
    }

    fn parse(mut self) -> Result<ColoredPartition, PartitionError> {
        self.expect(b'[')?;
        self.skip_ws();
        let up = self.word();
        self.expect(b'|')?;
        self.skip_ws();
        let down = self.word();
        self.expect(b']')?;
        let mut blocks: Vec<Vec<Leg>> = Vec::new();
        loop {
            self.skip_ws();
            if self.pos >= self.bytes.len() {
                break;
            }
            self.expect(b'{')?;
            let mut block = Vec::new();
            loop {
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&b'}') {
                    self.pos += 1;
                    break;
                }
                block.push(self.leg()?);
            }
            blocks.push(block);
        }
        ColoredPartition::new(up, down, &blocks)
    }
}

/// The four structural predicates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PartitionFlags {
    pub even_blocks: bool,
    pub pairing: bool,
    pub noncrossing: bool,
    pub matching: bool,
}

impl PartitionFlags {
    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.even_blocks {
            v.push("even");
        }
        if self.pairing {
            v.push("pairing");
        }
        if self.noncrossing {
            v.push("noncrossing");
        }
        if self.matching {
            v.push("matching");
        }
        v
    }
}

/// The eight vertex predicates of the cube.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ClassPredicate {
    Peven,
    P2,
    CPeven,
    CP2,
    NCeven,
    NC2,
    CNCeven,
    CNC2,
}

impl ClassPredicate {
    pub const ALL: [ClassPredicate; 8] = [
        ClassPredicate::Peven,
        ClassPredicate::P2,
        ClassPredicate::CPeven,
        ClassPredicate::CP2,
        ClassPredicate::NCeven,
        ClassPredicate::NC2,
        ClassPredicate::CNCeven,
        ClassPredicate::CNC2,
    ];

    pub fn matches(self, flags: PartitionFlags) -> bool {
        match self {
            ClassPredicate::Peven => flags.even_blocks,
            ClassPredicate::P2 => flags.pairing,
            ClassPredicate::CPeven => flags.even_blocks && flags.matching,
            ClassPredicate::CP2 => flags.pairing && flags.matching,
            ClassPredicate::NCeven => flags.even_blocks && flags.noncrossing,
            ClassPredicate::NC2 => flags.pairing && flags.noncrossing,
            ClassPredicate::CNCeven => flags.even_blocks && flags.noncrossing && flags.matching,
            ClassPredicate::CNC2 => flags.pairing && flags.noncrossing && flags.matching,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassPredicate::Peven => "Peven",
            ClassPredicate::P2 => "P2",
            ClassPredicate::CPeven => "CPeven",
            ClassPredicate::CP2 => "CP2",
            ClassPredicate::NCeven => "NCeven",
            ClassPredicate::NC2 => "NC2",
            ClassPredicate::CNCeven => "CNCeven",
            ClassPredicate::CNC2 => "CNC2",
        }
    }
}

impl FromStr for ClassPredicate {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "peven" => ClassPredicate::Peven,
            "p2" => ClassPredicate::P2,
            "cpeven" => ClassPredicate::CPeven,
            "cp2" => ClassPredicate::CP2,
            "nceven" => ClassPredicate::NCeven,
            "nc2" => ClassPredicate::NC2,
            "cnceven" => ClassPredicate::CNCeven,
            "cnc2" => ClassPredicate::CNC2,
            _ => return Err(PartitionError::UnknownFilter(s.to_string())),
        })
    }
}

/// Named enumeration filters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartitionFilter {
    EvenBlocks,
    Pairing,
    Noncrossing,
    Matching,
    NcPairing,
    MatchingNcPairing,
    Class(ClassPredicate),
}

impl PartitionFilter {
    pub fn matches(self, p: &ColoredPartition) -> bool {
        let f = p.flags();
        match self {
            PartitionFilter::EvenBlocks => f.even_blocks,
            PartitionFilter::Pairing => f.pairing,
            PartitionFilter::Noncrossing => f.noncrossing,
            PartitionFilter::Matching => f.matching,
            PartitionFilter::NcPairing => f.pairing && f.noncrossing,
            PartitionFilter::MatchingNcPairing => f.pairing && f.noncrossing && f.matching,
            PartitionFilter::Class(c) => c.matches(f),
        }
    }
}

impl FromStr for PartitionFilter {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "even" | "even-blocks" => PartitionFilter::EvenBlocks,
            "pairing" => PartitionFilter::Pairing,
            "noncrossing" => PartitionFilter::Noncrossing,
            "matching" => PartitionFilter::Matching,
            "nc-pairing" | "noncrossing-pairing" => PartitionFilter::NcPairing,
            "matching-nc-pairing" | "matching-noncrossing-pairing" => {
                PartitionFilter::MatchingNcPairing
            }
            _ => PartitionFilter::Class(s.parse()?),
        })
    }
}

/// All set partitions of the legs of the given word pair, in canonical
/// (restricted-growth) order, optionally filtered.
pub fn enumerate_partitions(
    up: &ColorWord,
    down: &ColorWord,
    filter: Option<PartitionFilter>,
    bound: usize,
) -> Result<Vec<ColoredPartition>, PartitionError> {
    let n = up.len() + down.len();
    if n > bound {
        return Err(PartitionError::BoundExceeded { legs: n, bound });
    }
    let mut out = Vec::new();
    for classes in RgsIter::new(n) {
        let p = ColoredPartition {
            up: up.clone(),
            down: down.clone(),
            classes,
        };
        if filter.map_or(true, |f| f.matches(&p)) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Iterator over restricted growth strings of length `n` in lexicographic
/// order; each string is a canonical block labeling.
pub(crate) struct RgsIter {
    n: usize,
    current: Vec<u8>,
    max_prefix: Vec<u8>,
    done: bool,
}

impl RgsIter {
    pub(crate) fn new(n: usize) -> Self {
        RgsIter {
            n,
            current: vec![0; n],
            max_prefix: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for RgsIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        if self.n <= 1 {
            self.done = true;
            return Some(item);
        }
        // Compute successor: rightmost position that can be incremented.
        let mut i = self.n - 1;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            let cap = self.max_prefix[i - 1] + 1;
            if self.current[i] < cap {
                self.current[i] += 1;
                self.max_prefix[i] = self.max_prefix[i - 1].max(self.current[i]);
                for j in i + 1..self.n {
                    self.current[j] = 0;
                    self.max_prefix[j] = self.max_prefix[j - 1];
                }
                break;
            }
            i -= 1;
        }
        Some(item)
    }
}

// Named small diagrams used throughout.

/// The identity strand `[c|c] {u1 d1}`.
pub fn identity_strand(c: Color) -> ColoredPartition {
    ColoredPartition::from_classes(
        ColorWord::new(vec![c]),
        ColorWord::new(vec![c]),
        &[0, 0],
    )
}

/// The lower cap `[|c1 c2] {d1 d2}`.
pub fn cap(c1: Color, c2: Color) -> ColoredPartition {
    ColoredPartition::from_classes(ColorWord::empty(), ColorWord::new(vec![c1, c2]), &[0, 0])
}

/// The upper cup `[c1 c2|] {u1 u2}`.
pub fn cup(c1: Color, c2: Color) -> ColoredPartition {
    ColoredPartition::from_classes(ColorWord::new(vec![c1, c2]), ColorWord::empty(), &[0, 0])
}

/// The crossing `[c1 c2|c2 c1] {u1 d2} {u2 d1}`.
pub fn crossing(c1: Color, c2: Color) -> ColoredPartition {
    ColoredPartition::from_classes(
        ColorWord::new(vec![c1, c2]),
        ColorWord::new(vec![c2, c1]),
        &[0, 1, 1, 0],
    )
}

/// The all-white crossing, the standard liberation generator.
pub fn crossing_white() -> ColoredPartition {
    crossing(Color::White, Color::White)
}

/// One lower block joining four legs of the given colors.
pub fn four_block(colors: [Color; 4]) -> ColoredPartition {
    ColoredPartition::from_classes(ColorWord::empty(), ColorWord::new(colors.to_vec()), &[0; 4])
}

/// The empty partition `[|]`.
pub fn empty_partition() -> ColoredPartition {
    ColoredPartition::from_classes(ColorWord::empty(), ColorWord::empty(), &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Black, White};

    fn p(text: &str) -> ColoredPartition {
        ColoredPartition::parse(text).unwrap()
    }

    #[test]
    fn parse_examples_round_trip() {
        let id = p("[w|w] {u1 d1}");
        assert_eq!(id, identity_strand(White));
        assert_eq!(id.to_string(), "[w|w] {u1 d1}");

        let cap_wb = p("[|wb] {d1 d2}");
        assert_eq!(cap_wb, cap(White, Black));
        assert_eq!(cap_wb.to_string(), "[|wb] {d1 d2}");

        let x = p("[ww|ww] {u1 d2} {u2 d1}");
        assert_eq!(x, crossing_white());
        assert_eq!(x.to_string(), "[ww|ww] {u1 d2} {u2 d1}");

        assert_eq!(empty_partition().to_string(), "[|]");
        assert_eq!(p("[|]"), empty_partition());
    }

    #[test]
    fn parse_is_whitespace_and_order_tolerant() {
        let a = p("  [ ww | ww ]   {u2 d1} { u1 d2 }");
        assert_eq!(a, crossing_white());
        let b = p("[ww|ww] {d2 u1} {d1 u2}");
        assert_eq!(b, crossing_white());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match ColoredPartition::parse("[w|w] {u1 d1} {d1}") {
            Err(PartitionError::DuplicateLeg(l)) => assert_eq!(l, "d1"),
            other => panic!("expected duplicate leg, got {other:?}"),
        }
        match ColoredPartition::parse("[w|w] {u1}") {
            Err(PartitionError::MissingLeg(l)) => assert_eq!(l, "d1"),
            other => panic!("expected missing leg, got {other:?}"),
        }
        match ColoredPartition::parse("[w|w] {u1 d2}") {
            Err(PartitionError::LegOutOfRange { leg, .. }) => assert_eq!(leg, "d2"),
            other => panic!("expected out of range, got {other:?}"),
        }
        match ColoredPartition::parse("(w|w)") {
            Err(PartitionError::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn structured_record_round_trip() {
        let x = crossing_white();
        let rec = x.to_record();
        assert_eq!(rec.blocks, vec![vec!["u1", "d2"], vec!["u2", "d1"]]);
        assert_eq!(ColoredPartition::from_record(&rec).unwrap(), x);
        // Unordered input is canonicalized.
        let rec2 = PartitionRecord {
            up: "ww".into(),
            down: "ww".into(),
            blocks: vec![vec!["d1".into(), "u2".into()], vec!["d2".into(), "u1".into()]],
        };
        assert_eq!(ColoredPartition::from_record(&rec2).unwrap(), x);
    }

    #[test]
    fn enumeration_counts_match_bell_catalan_double_factorial() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for n in 0..=8usize {
            let down = ColorWord::white(n);
            let all =
                enumerate_partitions(&ColorWord::empty(), &down, None, 8).unwrap();
            assert_eq!(all.len(), bell[n], "Bell number at n={n}");
        }
        // Catalan numbers for noncrossing pairings of 2m points.
        let catalan = [1usize, 1, 2, 5, 14];
        for m in 0..=4usize {
            if 2 * m > 8 {
                break;
            }
            let down = ColorWord::white(2 * m);
            let nc = enumerate_partitions(
                &ColorWord::empty(),
                &down,
                Some(PartitionFilter::NcPairing),
                8,
            )
            .unwrap();
            assert_eq!(nc.len(), catalan[m], "Catalan at m={m}");
        }
        // (2m-1)!! for pairings.
        let dfact = [1usize, 1, 3, 15, 105];
        for m in 0..=4usize {
            let down = ColorWord::white(2 * m);
            let pr = enumerate_partitions(
                &ColorWord::empty(),
                &down,
                Some(PartitionFilter::Pairing),
                8,
            )
            .unwrap();
            assert_eq!(pr.len(), dfact[m], "double factorial at m={m}");
        }
    }

    #[test]
    fn enumeration_respects_bound_and_splits() {
        let e = enumerate_partitions(&ColorWord::white(5), &ColorWord::white(5), None, 8);
        assert!(matches!(e, Err(PartitionError::BoundExceeded { legs: 10, bound: 8 })));
        let two = enumerate_partitions(&ColorWord::white(1), &ColorWord::white(1), None, 8)
            .unwrap();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn matching_nc_pairing_on_wbwb() {
        let down: ColorWord = "wbwb".parse().unwrap();
        let got = enumerate_partitions(
            &ColorWord::empty(),
            &down,
            Some(PartitionFilter::MatchingNcPairing),
            8,
        )
        .unwrap();
        let expected = vec![p("[|wbwb] {d1 d2} {d3 d4}"), p("[|wbwb] {d1 d4} {d2 d3}")];
        assert_eq!(got, expected);
    }

    #[test]
    fn flags_examples() {
        let x = crossing_white().flags();
        assert!(x.even_blocks && x.pairing && !x.noncrossing && x.matching);

        let all_white_cap = p("[|ww] {d1 d2}").flags();
        assert!(all_white_cap.even_blocks && all_white_cap.pairing);
        assert!(all_white_cap.noncrossing && !all_white_cap.matching);

        let wb_cap = p("[|wb] {d1 d2}").flags();
        assert!(wb_cap.even_blocks && wb_cap.pairing && wb_cap.noncrossing && wb_cap.matching);
    }

    #[test]
    fn matching_readings_disagree_on_duality_pairs() {
        // Caps and cups satisfy the literal rule with equal but nonzero
        // signed totals, so the per-color zero-sum reading would reject
        // them; strands and the crossing are matching under both readings.
        let c = cup(White, Black);
        assert!(c.flags().matching);
        assert!(c.matching_readings_disagree());
        assert!(cap(White, Black).matching_readings_disagree());
        assert!(!identity_strand(White).matching_readings_disagree());
        assert!(!crossing_white().matching_readings_disagree());
    }

    #[test]
    fn flags_invariant_under_left_right_mirror() {
        // Color-preserving left-right reflection: reverse each row.
        fn mirror(q: &ColoredPartition) -> ColoredPartition {
            let k = q.upper_len();
            let l = q.lower_len();
            let up = ColorWord::new(q.upper_word().colors().iter().rev().copied().collect());
            let down = ColorWord::new(q.lower_word().colors().iter().rev().copied().collect());
            let mut raw = vec![0usize; k + l];
            for lin in 0..k + l {
                let src = if lin < k { k - 1 - lin } else { k + (l - 1 - (lin - k)) };
                raw[lin] = q.class_of(src) as usize;
            }
            ColoredPartition::from_classes(up, down, &raw)
        }
        for up_len in 0..=2usize {
            for down_len in 0..=3usize {
                let up = ColorWord::white(up_len);
                let down = ColorWord::new(
                    (0..down_len).map(|i| if i % 2 == 0 { White } else { Black }).collect(),
                );
                for q in enumerate_partitions(&up, &down, None, 8).unwrap() {
                    let f = q.flags();
                    let g = mirror(&q).flags();
                    assert_eq!(f.even_blocks, g.even_blocks);
                    assert_eq!(f.pairing, g.pairing);
                    assert_eq!(f.noncrossing, g.noncrossing, "noncrossing mirror on {q}");
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        let id = identity_strand(White);
        assert!(id.delta(&[3], &[3]).unwrap());
        assert!(!id.delta(&[3], &[2]).unwrap());

        let c = p("[|ww] {d1 d2}");
        assert!(!c.delta(&[], &[1, 2]).unwrap());
        assert!(c.delta(&[], &[2, 2]).unwrap());

        let fb = p("[|wwww] {d1 d2 d3 d4}");
        assert!(fb.delta(&[], &[2, 2, 2, 2]).unwrap());
        assert!(!fb.delta(&[], &[2, 2, 1, 2]).unwrap());

        assert!(matches!(
            id.delta(&[1, 2], &[1]),
            Err(PartitionError::IndexLengthMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn delta_depends_only_on_blocks() {
        // Recolor arbitrarily and compare delta on all index tuples at N=2.
        let words: [(usize, usize); 3] = [(1, 2), (2, 2), (0, 4)];
        for &(k, l) in &words {
            let up = ColorWord::white(k);
            let down = ColorWord::white(l);
            for q in enumerate_partitions(&up, &down, None, 8).unwrap() {
                let recolored = ColoredPartition::from_classes(
                    ColorWord::new((0..k).map(|i| if i % 2 == 0 { Black } else { White }).collect()),
                    ColorWord::new(vec![Black; l]),
                    &q.classes().iter().map(|&c| c as usize).collect::<Vec<_>>(),
                );
                let n = 2usize;
                for code in 0..n.pow((k + l) as u32) {
                    let mut digits = Vec::with_capacity(k + l);
                    let mut c = code;
                    for _ in 0..k + l {
                        digits.push(c % n + 1);
                        c /= n;
                    }
                    let (ui, li) = digits.split_at(k);
                    assert_eq!(
                        q.delta(ui, li).unwrap(),
                        recolored.delta(ui, li).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for q in enumerate_partitions(&ColorWord::white(2), &ColorWord::white(3), None, 8).unwrap()
        {
            let rebuilt = ColoredPartition::new(
                q.upper_word().clone(),
                q.lower_word().clone(),
                &q.blocks(),
            )
            .unwrap();
            assert_eq!(rebuilt, q);
            let again = ColoredPartition::from_classes(
                q.upper_word().clone(),
                q.lower_word().clone(),
                &q.classes().iter().map(|&c| c as usize).collect::<Vec<_>>(),
            );
            assert_eq!(again, q);
        }
    }

    #[test]
    fn ordering_is_degree_first() {
        let small = identity_strand(White);
        let big = p("[|wwww] {d1 d2 d3 d4}");
        assert!(small < big);
        assert!(empty_partition() < small);
    }
}
