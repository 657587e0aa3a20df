//! The cube model: vertex dictionary, projections, midpoint and slicing
//! verification, and the classification harness.
//!
//! All checks here run at the category-of-partitions level; the dictionary
//! between quantum groups and their categories reverses the lattice
//! operations, so a group intersection is a category join (saturated
//! generation) and a group generation is a category intersection.

mod classify;
mod report;

pub use classify::{classify_pool, PoolEntry};
pub use report::{
    Axiom, CandidateOutcome, ClassificationReport, ConditionReport, ConditionResult,
    ReportParameters, Status, Summary, Verdict,
};

use std::fmt;
use std::sync::Arc;

use crate::category::{CategoryError, Engine, TruncatedCategory};
use crate::partition::ClassPredicate;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum LatticeError {
    #[error("malformed square: {0}")]
    MalformedSquare(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// The eight basic quantum groups, named by their classical/free and
/// real/complex/discrete flavor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum CubeVertexName {
    HN,
    KN,
    ON,
    UN,
    HNplus,
    KNplus,
    ONplus,
    UNplus,
}

impl CubeVertexName {
    pub const ALL: [CubeVertexName; 8] = [
        CubeVertexName::HN,
        CubeVertexName::KN,
        CubeVertexName::ON,
        CubeVertexName::UN,
        CubeVertexName::HNplus,
        CubeVertexName::KNplus,
        CubeVertexName::ONplus,
        CubeVertexName::UNplus,
    ];

    /// The paired category of partitions; quantum-group inclusion reverses
    /// category inclusion.
    pub fn category_name(self) -> ClassPredicate {
        match self {
            CubeVertexName::HN => ClassPredicate::Peven,
            CubeVertexName::KN => ClassPredicate::CPeven,
            CubeVertexName::ON => ClassPredicate::P2,
            CubeVertexName::UN => ClassPredicate::CP2,
            CubeVertexName::HNplus => ClassPredicate::NCeven,
            CubeVertexName::KNplus => ClassPredicate::CNCeven,
            CubeVertexName::ONplus => ClassPredicate::NC2,
            CubeVertexName::UNplus => ClassPredicate::CNC2,
        }
    }
}

impl fmt::Display for CubeVertexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CubeVertexName::HN => "HN",
            CubeVertexName::KN => "KN",
            CubeVertexName::ON => "ON",
            CubeVertexName::UN => "UN",
            CubeVertexName::HNplus => "HN+",
            CubeVertexName::KNplus => "KN+",
            CubeVertexName::ONplus => "ON+",
            CubeVertexName::UNplus => "UN+",
        };
        f.write_str(s)
    }
}

/// A cube vertex together with its paired truncated category.
#[derive(Clone)]
pub struct CubeVertex {
    pub name: CubeVertexName,
    pub category: Arc<TruncatedCategory>,
}

impl CubeVertex {
    pub fn new(engine: &Engine, name: CubeVertexName, degree: usize) -> Result<Self, LatticeError> {
        Ok(CubeVertex {
            name,
            category: engine.vertex(name.category_name(), degree)?,
        })
    }
}

/// The six projection directions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Class,
    Free,
    Disc,
    Cont,
    Real,
    Unit,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::Class,
        Direction::Free,
        Direction::Disc,
        Direction::Cont,
        Direction::Real,
        Direction::Unit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Direction::Class => "class",
            Direction::Free => "free",
            Direction::Disc => "disc",
            Direction::Cont => "cont",
            Direction::Real => "real",
            Direction::Unit => "unit",
        }
    }

    /// Group-intersection directions are category joins with the listed
    /// vertex; group-generation directions are category intersections.
    fn action(self) -> (bool, ClassPredicate) {
        match self {
            Direction::Class => (true, ClassPredicate::CP2),
            Direction::Disc => (true, ClassPredicate::CNCeven),
            Direction::Real => (true, ClassPredicate::NC2),
            Direction::Free => (false, ClassPredicate::NCeven),
            Direction::Cont => (false, ClassPredicate::P2),
            Direction::Unit => (false, ClassPredicate::CPeven),
        }
    }
}

/// Projects a category onto one of the six cube faces.
pub fn project(
    engine: &Engine,
    cat: &Arc<TruncatedCategory>,
    direction: Direction,
    bound: usize,
) -> Result<Arc<TruncatedCategory>, LatticeError> {
    let (is_join, target) = direction.action();
    let vertex = engine.vertex(target, cat.degree())?;
    let out = if is_join {
        engine.join(cat, &vertex, bound)?
    } else {
        engine.intersect(cat, &vertex)?
    };
    Ok(out)
}

/// Minimal element (canonical order) of the symmetric difference of two
/// member sets, rendered for witness fields.
fn sym_diff_witness(a: &TruncatedCategory, b: &TruncatedCategory) -> Option<String> {
    let left = a.witness_not_in(b);
    let right = b.witness_not_in(a);
    match (left, right) {
        (None, None) => None,
        (Some(p), None) | (None, Some(p)) => Some(p.to_string()),
        (Some(p), Some(q)) => Some(p.min(q).to_string()),
    }
}

fn stability_of(cats: &[&Arc<TruncatedCategory>]) -> bool {
    cats.iter().all(|c| c.stable())
}

fn condition(
    id: &str,
    ok: bool,
    stable: bool,
    witness: Option<String>,
) -> ConditionResult {
    if !stable {
        return ConditionResult::new(id, Status::Inconclusive, witness);
    }
    if ok {
        ConditionResult::new(id, Status::Pass, None)
    } else {
        ConditionResult::new(id, Status::Fail, witness)
    }
}

/// Outcome of one intersection-and-generation square.
#[derive(Clone, Debug)]
pub struct FaceCheck {
    pub intersection_ok: bool,
    pub generation_ok: bool,
    pub intersection_witness: Option<String>,
    pub generation_witness: Option<String>,
    pub stable: bool,
}

/// Checks a square `P ⊂ Q, R ⊂ S` of quantum groups, given by their
/// categories: the intersection condition `P = Q ∩ R` becomes
/// `D_P = <D_Q ∪ D_R>`, the generation condition `<Q, R> = S` becomes
/// `D_S = D_Q ∩ D_R`.
pub fn face_check(
    engine: &Engine,
    p: &Arc<TruncatedCategory>,
    q: &Arc<TruncatedCategory>,
    r: &Arc<TruncatedCategory>,
    s: &Arc<TruncatedCategory>,
    bound: usize,
) -> Result<FaceCheck, LatticeError> {
    for (big, small, names) in [
        (p, q, "P ⊇ Q"),
        (p, r, "P ⊇ R"),
        (q, s, "Q ⊇ S"),
        (r, s, "R ⊇ S"),
    ] {
        if !big.includes(small)? {
            return Err(LatticeError::MalformedSquare(format!(
                "category inclusion {names} fails (labels {}, {})",
                big.label(),
                small.label()
            )));
        }
    }
    let joined = engine.join(q, r, bound)?;
    let met = engine.intersect(q, r)?;
    Ok(FaceCheck {
        intersection_ok: joined.equals(p)?,
        generation_ok: met.equals(s)?,
        intersection_witness: sym_diff_witness(&joined, p),
        generation_witness: sym_diff_witness(&met, s),
        stable: stability_of(&[p, q, r, s, &joined, &met]),
    })
}

/// Verifies the intersection-and-generation property on all six faces of
/// the vertex cube.
pub fn verify_cube(
    engine: &Engine,
    degree: usize,
    bound: usize,
) -> Result<ConditionReport, LatticeError> {
    use CubeVertexName::*;
    let faces: [(&str, [CubeVertexName; 4]); 6] = [
        ("bottom", [HN, KN, ON, UN]),
        ("top", [HNplus, KNplus, ONplus, UNplus]),
        ("left", [HN, KN, HNplus, KNplus]),
        ("right", [ON, UN, ONplus, UNplus]),
        ("front", [HN, ON, HNplus, ONplus]),
        ("back", [KN, UN, KNplus, UNplus]),
    ];
    let mut conditions = Vec::new();
    for (name, [pn, qn, rn, sn]) in faces {
        let p = engine.vertex(pn.category_name(), degree)?;
        let q = engine.vertex(qn.category_name(), degree)?;
        let r = engine.vertex(rn.category_name(), degree)?;
        let s = engine.vertex(sn.category_name(), degree)?;
        let fc = face_check(engine, &p, &q, &r, &s, bound)?;
        conditions.push(condition(
            &format!("face.{name}.intersection"),
            fc.intersection_ok,
            fc.stable,
            fc.intersection_witness,
        ));
        conditions.push(condition(
            &format!("face.{name}.generation"),
            fc.generation_ok,
            fc.stable,
            fc.generation_witness,
        ));
    }
    Ok(ConditionReport::new(
        "verify-cube",
        "vertex-cube",
        ReportParameters {
            degree,
            bound,
            budget: engine.budget(),
            ambient: None,
        },
        conditions,
    ))
}

/// The six automatic midpoints: same-flavor double projections agree with a
/// single join or intersection against the edge vertex.
const MIDPOINTS: [(&str, Direction, Direction, bool, ClassPredicate); 6] = [
    ("midpoint.class_disc", Direction::Class, Direction::Disc, true, ClassPredicate::CPeven),
    ("midpoint.class_real", Direction::Class, Direction::Real, true, ClassPredicate::P2),
    ("midpoint.disc_real", Direction::Disc, Direction::Real, true, ClassPredicate::NCeven),
    ("midpoint.free_cont", Direction::Free, Direction::Cont, false, ClassPredicate::NC2),
    ("midpoint.free_unit", Direction::Free, Direction::Unit, false, ClassPredicate::CNCeven),
    ("midpoint.cont_unit", Direction::Cont, Direction::Unit, false, ClassPredicate::CP2),
];

/// Checks the six automatic midpoint identities.
pub fn midpoint_check(
    engine: &Engine,
    cat: &Arc<TruncatedCategory>,
    bound: usize,
) -> Result<Vec<ConditionResult>, LatticeError> {
    let mut out = Vec::new();
    for (id, dx, dy, is_join, edge) in MIDPOINTS {
        let xy = project(engine, &project(engine, cat, dx, bound)?, dy, bound)?;
        let yx = project(engine, &project(engine, cat, dy, bound)?, dx, bound)?;
        let vertex = engine.vertex(edge, cat.degree())?;
        let direct = if is_join {
            engine.join(cat, &vertex, bound)?
        } else {
            engine.intersect(cat, &vertex)?
        };
        let ok = xy.equals(&yx)? && xy.equals(&direct)?;
        let witness = sym_diff_witness(&xy, &yx).or_else(|| sym_diff_witness(&xy, &direct));
        out.push(condition(id, ok, stability_of(&[&xy, &yx, &direct]), witness));
    }
    Ok(out)
}

/// The six non-automatic commutations of mixed projections.
const PRESLICE: [(&str, Direction, Direction); 6] = [
    ("preslice.class_cont", Direction::Class, Direction::Cont),
    ("preslice.class_unit", Direction::Class, Direction::Unit),
    ("preslice.disc_free", Direction::Disc, Direction::Free),
    ("preslice.disc_unit", Direction::Disc, Direction::Unit),
    ("preslice.real_free", Direction::Real, Direction::Free),
    ("preslice.real_cont", Direction::Real, Direction::Cont),
];

/// Checks the six pre-slicing commutation conditions.
pub fn preslice_check(
    engine: &Engine,
    cat: &Arc<TruncatedCategory>,
    bound: usize,
) -> Result<Vec<ConditionResult>, LatticeError> {
    let mut out = Vec::new();
    for (id, dx, dy) in PRESLICE {
        let xy = project(engine, &project(engine, cat, dx, bound)?, dy, bound)?;
        let yx = project(engine, &project(engine, cat, dy, bound)?, dx, bound)?;
        let ok = xy.equals(&yx)?;
        out.push(condition(
            id,
            ok,
            stability_of(&[&xy, &yx]),
            sym_diff_witness(&xy, &yx),
        ));
    }
    Ok(out)
}

/// Join-direction targets by the set of applied join projections
/// (disc, real, class), and dually for intersections.
fn join_target(disc: bool, real: bool, class: bool) -> Option<ClassPredicate> {
    match (disc, real, class) {
        (false, false, false) => None,
        (true, false, false) => Some(ClassPredicate::CNCeven),
        (false, true, false) => Some(ClassPredicate::NC2),
        (false, false, true) => Some(ClassPredicate::CP2),
        (true, true, false) => Some(ClassPredicate::NCeven),
        (true, false, true) => Some(ClassPredicate::CPeven),
        (false, true, true) => Some(ClassPredicate::P2),
        (true, true, true) => Some(ClassPredicate::Peven),
    }
}

fn intersect_target(cont: bool, unit: bool, free: bool) -> Option<ClassPredicate> {
    match (cont, unit, free) {
        (false, false, false) => None,
        (true, false, false) => Some(ClassPredicate::P2),
        (false, true, false) => Some(ClassPredicate::CPeven),
        (false, false, true) => Some(ClassPredicate::NCeven),
        (true, true, false) => Some(ClassPredicate::CP2),
        (true, false, true) => Some(ClassPredicate::NC2),
        (false, true, true) => Some(ClassPredicate::CNCeven),
        (true, true, true) => Some(ClassPredicate::CNC2),
    }
}

/// The 27-node sliced diagram: grid coordinate 0/2 projects toward the
/// named side, 1 leaves the axis alone. Mixed double projections are taken
/// join-first; the pre-slicing conditions certify the other order agrees.
pub struct SlicedGrid {
    /// Indexed `[disc..cont][real..unit][class..free]`.
    pub nodes: Vec<Vec<Vec<Arc<TruncatedCategory>>>>,
}

impl SlicedGrid {
    pub fn build(
        engine: &Engine,
        cat: &Arc<TruncatedCategory>,
        bound: usize,
    ) -> Result<SlicedGrid, LatticeError> {
        let degree = cat.degree();
        let mut nodes: Vec<Vec<Vec<Arc<TruncatedCategory>>>> = Vec::with_capacity(3);
        for a in 0..3usize {
            let mut plane = Vec::with_capacity(3);
            for b in 0..3usize {
                let mut line = Vec::with_capacity(3);
                for c in 0..3usize {
                    let jv = join_target(a == 0, b == 0, c == 0);
                    let iv = intersect_target(a == 2, b == 2, c == 2);
                    let mut node = cat.clone();
                    if let Some(target) = jv {
                        let vertex = engine.vertex(target, degree)?;
                        node = engine.join(&node, &vertex, bound)?;
                    }
                    if let Some(target) = iv {
                        let vertex = engine.vertex(target, degree)?;
                        node = engine.intersect(&node, &vertex)?;
                    }
                    line.push(node);
                }
                plane.push(line);
            }
            nodes.push(plane);
        }
        Ok(SlicedGrid { nodes })
    }

    pub fn node(&self, a: usize, b: usize, c: usize) -> &Arc<TruncatedCategory> {
        &self.nodes[a][b][c]
    }
}

/// The two slicing conditions of a node against a face with corners
/// `Q`, `R`: generation `X = <X∩Q, X∩R>` and intersection
/// `X = <X,Q> ∩ <X,R>`, at category level.
fn node_slices_face(
    engine: &Engine,
    x: &Arc<TruncatedCategory>,
    q: &Arc<TruncatedCategory>,
    r: &Arc<TruncatedCategory>,
    bound: usize,
    id_prefix: &str,
    out: &mut Vec<ConditionResult>,
) -> Result<(), LatticeError> {
    // Group generation `X = <X∩Q, X∩R>`: categories intersect then join.
    let xq = engine.join(x, q, bound)?;
    let xr = engine.join(x, r, bound)?;
    let gen_side = engine.intersect(&xq, &xr)?;
    let gen_ok = gen_side.equals(x)?;
    out.push(condition(
        &format!("{id_prefix}.generation"),
        gen_ok,
        stability_of(&[x, &xq, &xr, &gen_side]),
        sym_diff_witness(&gen_side, x),
    ));
    // Group intersection `X = <X,Q> ∩ <X,R>`: categories join then intersect.
    let xiq = engine.intersect(x, q)?;
    let xir = engine.intersect(x, r)?;
    let int_side = engine.join(&xiq, &xir, bound)?;
    let int_ok = int_side.equals(x)?;
    out.push(condition(
        &format!("{id_prefix}.intersection"),
        int_ok,
        stability_of(&[x, &xiq, &xir, &int_side]),
        sym_diff_witness(&int_side, x),
    ));
    Ok(())
}

/// Full slicing verification: midpoints, pre-slicing, the 24 slicing
/// conditions, and the 36 small squares of the sliced diagram.
pub fn slice_check(
    engine: &Engine,
    cat: &Arc<TruncatedCategory>,
    bound: usize,
    ambient: Option<usize>,
) -> Result<ConditionReport, LatticeError> {
    let degree = cat.degree();
    let parameters = ReportParameters {
        degree,
        bound,
        budget: engine.budget(),
        ambient,
    };
    let mut conditions = midpoint_check(engine, cat, bound)?;
    let preslice = preslice_check(engine, cat, bound)?;
    let preslice_ok = preslice.iter().all(|c| c.status == Status::Pass);
    conditions.extend(preslice.iter().cloned());

    // Def-2.8 item 1 restates the pre-slicing conditions.
    for c in &preslice {
        conditions.push(ConditionResult::new(
            c.id.replace("preslice.", "slice.item1."),
            c.status,
            c.witness.clone(),
        ));
    }

    if !preslice_ok {
        // Short-circuit: the sliced diagram is not well defined; mark the
        // remaining conditions inconclusive.
        for id in slicing_condition_ids() {
            conditions.push(ConditionResult::new(id, Status::Inconclusive, None));
        }
        for id in square_condition_ids() {
            conditions.push(ConditionResult::new(id, Status::Inconclusive, None));
        }
        return Ok(ConditionReport::new(
            "slice",
            cat.label(),
            parameters,
            conditions,
        ));
    }

    let grid = SlicedGrid::build(engine, cat, bound)?;
    let vertex = |name: ClassPredicate| engine.vertex(name, degree);

    // Items 2-4: each axis contributes its two outer faces and the middle
    // section, sliced by the corresponding projection (or the subject).
    {
        use ClassPredicate::*;
        let item2: [(&str, &Arc<TruncatedCategory>, Arc<TruncatedCategory>, Arc<TruncatedCategory>); 3] = [
            ("slice.item2.classical_face", grid.node(1, 1, 0), vertex(CPeven)?, vertex(P2)?),
            ("slice.item2.intermediate_face", grid.node(1, 1, 1), grid.node(0, 2, 1).clone(), grid.node(2, 0, 1).clone()),
            ("slice.item2.free_face", grid.node(1, 1, 2), vertex(CNCeven)?, vertex(NC2)?),
        ];
        let item3: [(&str, &Arc<TruncatedCategory>, Arc<TruncatedCategory>, Arc<TruncatedCategory>); 3] = [
            ("slice.item3.discrete_face", grid.node(0, 1, 1), vertex(CPeven)?, vertex(NCeven)?),
            ("slice.item3.intermediate_face", grid.node(1, 1, 1), grid.node(1, 2, 0).clone(), grid.node(1, 0, 2).clone()),
            ("slice.item3.continuous_face", grid.node(2, 1, 1), vertex(CP2)?, vertex(NC2)?),
        ];
        let item4: [(&str, &Arc<TruncatedCategory>, Arc<TruncatedCategory>, Arc<TruncatedCategory>); 3] = [
            ("slice.item4.real_face", grid.node(1, 0, 1), vertex(P2)?, vertex(NCeven)?),
            ("slice.item4.intermediate_face", grid.node(1, 1, 1), grid.node(2, 1, 0).clone(), grid.node(0, 1, 2).clone()),
            ("slice.item4.unitary_face", grid.node(1, 2, 1), vertex(CP2)?, vertex(CNCeven)?),
        ];
        for (prefix, x, q, r) in item2.iter().chain(&item3).chain(&item4) {
            node_slices_face(engine, x, q, r, bound, prefix, &mut conditions)?;
        }
    }

    // The 36 unit squares of the sliced diagram.
    for (axis, level, i, j, id) in square_coords() {
        let pick = |u: usize, w: usize| -> &Arc<TruncatedCategory> {
            match axis {
                Plane::DiscCont => grid.node(level, u, w),
                Plane::RealUnit => grid.node(u, level, w),
                Plane::ClassFree => grid.node(u, w, level),
            }
        };
        let p = pick(i, j);
        let q = pick(i, j + 1);
        let r = pick(i + 1, j);
        let s = pick(i + 1, j + 1);
        let joined = engine.join(q, r, bound)?;
        let met = engine.intersect(q, r)?;
        let int_ok = joined.equals(p)?;
        let gen_ok = met.equals(s)?;
        let witness = if !int_ok {
            sym_diff_witness(&joined, p)
        } else if !gen_ok {
            sym_diff_witness(&met, s)
        } else {
            None
        };
        conditions.push(condition(
            &id,
            int_ok && gen_ok,
            stability_of(&[p, q, r, s, &joined, &met]),
            witness,
        ));
    }

    Ok(ConditionReport::new(
        "slice",
        cat.label(),
        parameters,
        conditions,
    ))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Plane {
    DiscCont,
    RealUnit,
    ClassFree,
}

impl Plane {
    fn tag(self) -> &'static str {
        match self {
            Plane::DiscCont => "dc",
            Plane::RealUnit => "ru",
            Plane::ClassFree => "cf",
        }
    }
}

fn square_coords() -> Vec<(Plane, usize, usize, usize, String)> {
    let mut out = Vec::with_capacity(36);
    for plane in [Plane::DiscCont, Plane::RealUnit, Plane::ClassFree] {
        for level in 0..3usize {
            for i in 0..2usize {
                for j in 0..2usize {
                    out.push((
                        plane,
                        level,
                        i,
                        j,
                        format!("square.{}{}.{}{}", plane.tag(), level, i, j),
                    ));
                }
            }
        }
    }
    out
}

fn square_condition_ids() -> Vec<String> {
    square_coords().into_iter().map(|(_, _, _, _, id)| id).collect()
}

fn slicing_condition_ids() -> Vec<String> {
    let mut out = Vec::new();
    for item in [
        ("slice.item2", ["classical_face", "intermediate_face", "free_face"]),
        ("slice.item3", ["discrete_face", "intermediate_face", "continuous_face"]),
        ("slice.item4", ["real_face", "intermediate_face", "unitary_face"]),
    ] {
        for face in item.1 {
            out.push(format!("{}.{}.generation", item.0, face));
            out.push(format!("{}.{}.intersection", item.0, face));
        }
    }
    out
}
