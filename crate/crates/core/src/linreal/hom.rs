//! Hom-space families: per word-pair bases of realized partitions, their
//! saturation under composition/tensor/adjoint, the corner compression, and
//! the uniformity verdict.
//!
//! Bases are kept as sparse integer rows in echelon form (content-stripped,
//! fraction-free reduction), which represents the same rational row space
//! exactly without denominators.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::op::{t_map, SparseOperator};
use crate::category::TruncatedCategory;
use crate::partition::{Color, ColorWord};
use crate::{Int, Rat};

/// Sparse vector: sorted (index, coefficient) pairs, no zeros.
pub type SparseVec = Vec<(u64, Int)>;

fn strip_content(v: &mut SparseVec) {
    let mut g = Int::zero();
    for (_, c) in v.iter() {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return;
    }
    let negate = v.first().map(|(_, c)| c.is_negative()).unwrap_or(false);
    for (_, c) in v.iter_mut() {
        *c = &*c / &g;
        if negate {
            *c = -std::mem::take(c);
        }
    }
}

/// `a*x - b*y` over sorted sparse vectors.
fn combine(a: &Int, x: &SparseVec, b: &Int, y: &SparseVec) -> SparseVec {
    let mut out = SparseVec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < x.len() || j < y.len() {
        let (idx, val) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let e = (x[i].0, a * &x[i].1);
            i += 1;
            e
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let e = (y[j].0, -(b * &y[j].1));
            j += 1;
            e
        } else {
            let e = (x[i].0, a * &x[i].1 - b * &y[j].1);
            i += 1;
            j += 1;
            e
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

/// Sparse integer rows in echelon form; spans a rational subspace exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntBasis {
    rows: Vec<SparseVec>, // sorted by leading index, content-stripped
}

impl IntBasis {
    pub fn new() -> IntBasis {
        IntBasis { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        for row in &self.rows {
            if v.is_empty() {
                break;
            }
            let lead = row[0].0;
            if v[0].0 > lead {
                continue;
            }
            if let Ok(pos) = v.binary_search_by_key(&lead, |e| e.0) {
                let coeff = v[pos].1.clone();
                v = combine(&row[0].1, &v, &coeff, row);
                strip_content(&mut v);
            }
        }
        v
    }

    /// Inserts a vector; returns true when it enlarges the span.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        v.retain(|(_, c)| !c.is_zero());
        strip_content(&mut v);
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let lead = v[0].0;
        let pos = self
            .rows
            .partition_point(|r| r[0].0 < lead);
        self.rows.insert(pos, v);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduced rational rows (pivots 1, eliminated above and below),
    /// densified; used by the basis dump.
    pub fn rational_rref(&self, length: u64) -> Vec<Vec<Rat>> {
        let mut rows: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .map(|r| {
                let mut dense = vec![Rat::zero(); length as usize];
                for (i, c) in r {
                    dense[*i as usize] = Rat::from_integer(c.clone());
                }
                dense
            })
            .collect();
        let n = rows.len();
        for i in (0..n).rev() {
            let lead = rows[i].iter().position(|c| !c.is_zero()).expect("nonzero row");
            let pivot = rows[i][lead].clone();
            for c in rows[i].iter_mut() {
                *c = &*c / &pivot;
            }
            for j in 0..i {
                let factor = rows[j][lead].clone();
                if factor.is_zero() {
                    continue;
                }
                for k in 0..length as usize {
                    let delta = &factor * &rows[i][k];
                    rows[j][k] = &rows[j][k] - &delta;
                }
            }
        }
        rows
    }
}

impl Default for IntBasis {
    fn default() -> Self {
        IntBasis::new()
    }
}

/// Word pair key with the comparison order used for witness scans:
/// balanced pairs first within a total, then lexicographic.
pub fn word_pair_scan_order(a: &(ColorWord, ColorWord), b: &(ColorWord, ColorWord)) -> std::cmp::Ordering {
    let total = |p: &(ColorWord, ColorWord)| p.0.len() + p.1.len();
    let skew = |p: &(ColorWord, ColorWord)| {
        (p.0.len() as isize - p.1.len() as isize).unsigned_abs()
    };
    total(a)
        .cmp(&total(b))
        .then_with(|| skew(a).cmp(&skew(b)))
        .then_with(|| a.0.len().cmp(&b.0.len()))
        .then_with(|| a.cmp(b))
}

/// Per word-pair bases of realized partitions at a fixed ambient dimension.
#[derive(Clone, Debug)]
pub struct HomSpaceFamily {
    ambient: usize,
    degree: usize,
    spaces: BTreeMap<(ColorWord, ColorWord), IntBasis>,
    saturated: bool,
}

impl HomSpaceFamily {
    pub fn new(ambient: usize, degree: usize) -> HomSpaceFamily {
        HomSpaceFamily {
            ambient,
            degree,
            spaces: BTreeMap::new(),
            saturated: true,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// False when a saturation run stopped on its budget.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn spaces(&self) -> impl Iterator<Item = (&(ColorWord, ColorWord), &IntBasis)> {
        self.spaces.iter()
    }

    pub fn dim_at(&self, up: &ColorWord, down: &ColorWord) -> usize {
        self.spaces
            .get(&(up.clone(), down.clone()))
            .map_or(0, IntBasis::dim)
    }

    pub fn basis_at(&self, up: &ColorWord, down: &ColorWord) -> Option<&IntBasis> {
        self.spaces.get(&(up.clone(), down.clone()))
    }

    fn insert_vec(&mut self, up: ColorWord, down: ColorWord, v: SparseVec) -> bool {
        if v.is_empty() {
            return false;
        }
        self.spaces.entry((up, down)).or_default().insert(v)
    }

    pub fn insert_operator(&mut self, op: &SparseOperator) -> bool {
        debug_assert_eq!(op.ambient(), self.ambient);
        let v = flatten(op);
        self.insert_vec(op.col_word().clone(), op.row_word().clone(), v)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(IntBasis::dim).sum()
    }
}

/// Flat encoding of an operator: index = row · N^k + col.
pub fn flatten(op: &SparseOperator) -> SparseVec {
    let cols = op.cols();
    op.entries()
        .map(|(&(r, c), &v)| (r * cols + c, Int::from(v)))
        .collect()
}

/// The family of spans `span{T_p : p ∈ C(word pair)}` over all word pairs
/// with total legs within the degree.
pub fn hom_family(cat: &TruncatedCategory, ambient: usize, degree: usize) -> HomSpaceFamily {
    let mut family = HomSpaceFamily::new(ambient, degree);
    for m in cat.members() {
        if m.total_legs() > degree {
            continue;
        }
        family.insert_operator(&t_map(&m, ambient));
    }
    family
}

/// The four `e₁` vectors: the first basis vector as a state of the white and
/// black single-letter words, plus their adjoints.
pub fn e1_extras(_ambient: usize) -> Vec<(ColorWord, ColorWord, SparseVec)> {
    let mut out = Vec::new();
    for color in [Color::White, Color::Black] {
        let word = ColorWord::new(vec![color]);
        // State: column vector with a single entry at index 0.
        out.push((ColorWord::empty(), word.clone(), vec![(0u64, Int::from(1))]));
        // Adjoint: row vector.
        out.push((word, ColorWord::empty(), vec![(0u64, Int::from(1))]));
    }
    out
}

fn pow(n: usize, e: usize) -> u64 {
    (n as u64).pow(e as u32)
}

/// Saturates a family under composition, tensor product and adjoint, keeping
/// word pairs within `pair_bound` total legs; runs to a dimension fixpoint.
/// The budget counts elementary products; exceeding it flags the result as
/// unsaturated.
pub fn saturate_homspaces(
    seed: &HomSpaceFamily,
    extras: &[(ColorWord, ColorWord, SparseVec)],
    pair_bound: usize,
    budget: u64,
) -> HomSpaceFamily {
    saturate_homspaces_from(seed, extras, pair_bound, budget, false)
}

/// Like [`saturate_homspaces`], but when `seed_closed` holds the caller
/// asserts the seed family is already closed under the three operations, so
/// the fixpoint iteration starts from the extras alone. Hom families of
/// truncated categories are closed by construction (their member sets are),
/// which is what the uniformity check relies on.
pub fn saturate_homspaces_from(
    seed: &HomSpaceFamily,
    extras: &[(ColorWord, ColorWord, SparseVec)],
    pair_bound: usize,
    budget: u64,
    seed_closed: bool,
) -> HomSpaceFamily {
    let ambient = seed.ambient;
    let mut family = HomSpaceFamily::new(ambient, pair_bound);
    family.saturated = seed.saturated;
    // Rows with index >= fresh[pair] entered the family in the last round;
    // a round only forms products touching at least one fresh row.
    let mut fresh: BTreeMap<(ColorWord, ColorWord), usize> = BTreeMap::new();
    for ((up, down), basis) in &seed.spaces {
        if up.len() + down.len() > family.degree {
            continue;
        }
        for row in basis.rows() {
            family.insert_vec(up.clone(), down.clone(), row.clone());
        }
        if !seed_closed {
            fresh.insert((up.clone(), down.clone()), 0);
        }
    }
    for (up, down, v) in extras {
        let key = (up.clone(), down.clone());
        let before = family.dim_at(up, down);
        if family.insert_vec(up.clone(), down.clone(), v.clone()) {
            let entry = fresh.entry(key).or_insert(before);
            *entry = (*entry).min(before);
        }
    }

    let mut ops: u64 = 0;
    while !fresh.is_empty() {
        let pairs: Vec<(ColorWord, ColorWord)> = family.spaces.keys().cloned().collect();
        let mut new_vectors: Vec<(ColorWord, ColorWord, SparseVec)> = Vec::new();
        let fresh_at = |key: &(ColorWord, ColorWord)| -> usize {
            // usize::MAX marks a space with no fresh rows.
            fresh.get(key).copied().unwrap_or(usize::MAX)
        };
        'rounds: for a in &pairs {
            let fa = fresh_at(a);
            for b in &pairs {
                let fb = fresh_at(b);
                if fa == usize::MAX && fb == usize::MAX {
                    continue;
                }
                if ops > budget {
                    family.saturated = false;
                    break 'rounds;
                }
                let (au, ad) = a;
                let (bu, bd) = b;
                let a_basis = &family.spaces[a];
                let b_basis = &family.spaces[b];
                // Composition b after a: a maps au -> ad, b maps bu -> bd,
                // glued along ad == bu; the product lives at (au, bd).
                if ad == bu && au.len() + bd.len() <= pair_bound {
                    compose_fresh(
                        ambient, au, ad, bd, a_basis, b_basis, fa, fb, &mut ops,
                        &mut new_vectors,
                    );
                }
                // Tensor a (x) b.
                if au.len() + ad.len() + bu.len() + bd.len() <= pair_bound {
                    tensor_fresh(
                        ambient, au, ad, bu, bd, a_basis, b_basis, fa, fb, &mut ops,
                        &mut new_vectors,
                    );
                }
            }
            // Adjoints of the fresh rows.
            if fa != usize::MAX {
                let (au, ad) = a;
                let basis = &family.spaces[a];
                let cols = pow(ambient, au.len());
                let rows_len = pow(ambient, ad.len());
                for row in basis.rows().iter().skip(fa) {
                    ops += 1;
                    let mut t: SparseVec = row
                        .iter()
                        .map(|(i, c)| {
                            let (r, cc) = (i / cols, i % cols);
                            (cc * rows_len + r, c.clone())
                        })
                        .collect();
                    t.sort_by_key(|e| e.0);
                    new_vectors.push((ad.clone(), au.clone(), t));
                }
            }
        }
        let mut next: BTreeMap<(ColorWord, ColorWord), usize> = BTreeMap::new();
        for (u, d, v) in new_vectors {
            if u.len() + d.len() > pair_bound {
                continue;
            }
            let before = family.dim_at(&u, &d);
            if family.insert_vec(u.clone(), d.clone(), v) {
                let entry = next.entry((u, d)).or_insert(before);
                *entry = (*entry).min(before);
            }
        }
        if !family.saturated {
            break;
        }
        fresh = next;
    }
    family
}

/// Products of two bases where at least one row is fresh.
#[allow(clippy::too_many_arguments)]
fn compose_fresh(
    ambient: usize,
    w1: &ColorWord,
    w2: &ColorWord,
    w3: &ColorWord,
    a_basis: &IntBasis,
    b_basis: &IntBasis,
    fresh_a: usize,
    fresh_b: usize,
    ops: &mut u64,
    out: &mut Vec<(ColorWord, ColorWord, SparseVec)>,
) {
    let a_cols = pow(ambient, w1.len());
    let b_cols = pow(ambient, w2.len());
    for (i, a) in a_basis.rows().iter().enumerate() {
        let da: Vec<(u64, u64, Int)> = a
            .iter()
            .map(|(idx, c)| (idx / a_cols, idx % a_cols, c.clone()))
            .collect();
        let mut a_by_mid: BTreeMap<u64, Vec<(u64, Int)>> = BTreeMap::new();
        for (r, c, v) in &da {
            a_by_mid.entry(*r).or_default().push((*c, v.clone()));
        }
        for (j, b) in b_basis.rows().iter().enumerate() {
            if i < fresh_a && j < fresh_b {
                continue;
            }
            *ops += 1;
            let mut acc: BTreeMap<u64, Int> = BTreeMap::new();
            for (idx, vb) in b {
                let (r3, mid) = (idx / b_cols, idx % b_cols);
                if let Some(cols) = a_by_mid.get(&mid) {
                    for (c1, va) in cols {
                        let slot = acc.entry(r3 * a_cols + c1).or_insert_with(Int::zero);
                        *slot += va * vb;
                    }
                }
            }
            let v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !v.is_empty() {
                out.push((w1.clone(), w3.clone(), v));
            }
        }
    }
}

/// Tensor products of two bases where at least one row is fresh.
#[allow(clippy::too_many_arguments)]
fn tensor_fresh(
    ambient: usize,
    w1: &ColorWord,
    w2: &ColorWord,
    w3: &ColorWord,
    w4: &ColorWord,
    a_basis: &IntBasis,
    b_basis: &IntBasis,
    fresh_a: usize,
    fresh_b: usize,
    ops: &mut u64,
    out: &mut Vec<(ColorWord, ColorWord, SparseVec)>,
) {
    let a_cols = pow(ambient, w1.len());
    let b_cols = pow(ambient, w3.len());
    let b_rows = pow(ambient, w4.len());
    let out_cols = pow(ambient, w1.len() + w3.len());
    let up = w1.concat(w3);
    let down = w2.concat(w4);
    for (i, a) in a_basis.rows().iter().enumerate() {
        let da: Vec<(u64, u64, &Int)> = a
            .iter()
            .map(|(idx, c)| (idx / a_cols, idx % a_cols, c))
            .collect();
        for (j, b) in b_basis.rows().iter().enumerate() {
            if i < fresh_a && j < fresh_b {
                continue;
            }
            *ops += 1;
            let mut v: SparseVec = Vec::with_capacity(da.len() * b.len());
            for (r1, c1, va) in &da {
                for (idx, vb) in b {
                    let (r2, c2) = (idx / b_cols, idx % b_cols);
                    let row = r1 * b_rows + r2;
                    let col = c1 * b_cols + c2;
                    v.push((row * out_cols + col, *va * vb));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push((up.clone(), down.clone(), v));
        }
    }
}

/// Restricts every basis vector to the coordinates `2..N` in each tensor
/// factor and re-reduces; the compression of the family onto the lower
/// corner.
pub fn compress_basis(
    basis: &IntBasis,
    up: &ColorWord,
    down: &ColorWord,
    ambient: usize,
) -> IntBasis {
    let k = up.len();
    let l = down.len();
    let small = ambient - 1;
    let cols = pow(ambient, k);
    let mut out = IntBasis::new();
    for row in basis.rows() {
        let mut v: SparseVec = Vec::new();
        'entry: for (flat, coeff) in row {
            let (mut r, mut c) = (flat / cols, flat % cols);
            let mut rd = vec![0u64; l];
            for i in (0..l).rev() {
                rd[i] = r % ambient as u64;
                r /= ambient as u64;
                if rd[i] == 0 {
                    continue 'entry;
                }
            }
            let mut cd = vec![0u64; k];
            for i in (0..k).rev() {
                cd[i] = c % ambient as u64;
                c /= ambient as u64;
                if cd[i] == 0 {
                    continue 'entry;
                }
            }
            let mut nr = 0u64;
            for d in &rd {
                nr = nr * small as u64 + (d - 1);
            }
            let mut nc = 0u64;
            for d in &cd {
                nc = nc * small as u64 + (d - 1);
            }
            v.push((nr * pow(small, k) + nc, coeff.clone()));
        }
        v.sort_by_key(|e| e.0);
        out.insert(v);
    }
    out
}

/// Witness for a uniformity failure: the first word pair (balanced pairs
/// first) where the compressed capped family and the lower-level family
/// disagree in dimension.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct UniformityWitness {
    pub up: String,
    pub down: String,
    pub compressed_dim: usize,
    pub expected_dim: usize,
}

/// Verdict of the uniformity check at `(ambient, degree)`.
#[derive(Clone, Debug)]
pub struct UniformityReport {
    pub subject: String,
    pub ambient: usize,
    pub degree: usize,
    /// `None` when the saturation budget was exhausted (inconclusive).
    pub uniform: Option<bool>,
    pub witness: Option<UniformityWitness>,
}

/// Checks compatibility with the embedding fixing the first basis vector:
/// saturates the level-`N` family with the `e₁` extras, compresses each
/// space onto coordinates `2..N`, and compares dimensions with the level
/// `N-1` family on every word pair within `degree`.
///
/// The saturation works with word pairs up to a conduit bound: the check
/// degree, raised to fit the category's generators (capping a generator
/// routes through its own word pairs, as for the half-liberation reversal),
/// but never beyond the category degree.
pub fn uniformity_check(
    cat: &TruncatedCategory,
    ambient: usize,
    degree: usize,
    budget: u64,
) -> UniformityReport {
    assert!(ambient >= 2, "uniformity needs ambient >= 2");
    assert!(degree <= cat.degree(), "check degree {degree} beyond category degree");
    let generator_legs = cat
        .generators()
        .iter()
        .map(|g| g.total_legs())
        .max()
        .unwrap_or(0);
    let conduit = degree.max(generator_legs).min(cat.degree());
    let seed = hom_family(cat, ambient, conduit);
    let capped = saturate_homspaces_from(&seed, &e1_extras(ambient), conduit, budget, true);
    if !capped.saturated() {
        return UniformityReport {
            subject: cat.label().to_string(),
            ambient,
            degree,
            uniform: None,
            witness: None,
        };
    }
    let small = hom_family(cat, ambient - 1, degree);

    let mut pairs: Vec<(ColorWord, ColorWord)> = Vec::new();
    for (pair, _) in capped.spaces() {
        if pair.0.len() + pair.1.len() <= degree {
            pairs.push(pair.clone());
        }
    }
    for (pair, _) in small.spaces() {
        if pair.0.len() + pair.1.len() <= degree {
            pairs.push(pair.clone());
        }
    }
    pairs.sort_by(word_pair_scan_order);
    pairs.dedup();

    for (up, down) in pairs {
        let compressed_dim = capped
            .basis_at(&up, &down)
            .map_or(0, |b| compress_basis(b, &up, &down, ambient).dim());
        let expected_dim = small.dim_at(&up, &down);
        if compressed_dim != expected_dim {
            return UniformityReport {
                subject: cat.label().to_string(),
                ambient,
                degree,
                uniform: Some(false),
                witness: Some(UniformityWitness {
                    up: up.to_string(),
                    down: down.to_string(),
                    compressed_dim,
                    expected_dim,
                }),
            };
        }
    }
    UniformityReport {
        subject: cat.label().to_string(),
        ambient,
        degree,
        uniform: Some(true),
        witness: None,
    }
}
