//! Behaviours of canonical functions on 2-types: the 27-way table for the
//! order-enriched digraph, the two-orbit table with its combined cases,
//! orbit labelling against constants, and finite realizations of behaviours
//! by pair rewriting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, PairType};
use crate::error::{Error, Result};

/// The three 2-types of the plain digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TwoType {
    E,
    Estar,
    N,
}

impl TwoType {
    pub const ALL: [TwoType; 3] = [TwoType::E, TwoType::Estar, TwoType::N];

    /// Conjugation by reversal: E and E* swap, N is fixed.
    pub fn reversed(self) -> TwoType {
        match self {
            TwoType::E => TwoType::Estar,
            TwoType::Estar => TwoType::E,
            TwoType::N => TwoType::N,
        }
    }
}

impl std::fmt::Display for TwoType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwoType::E => write!(f, "E"),
            TwoType::Estar => write!(f, "E*"),
            TwoType::N => write!(f, "N"),
        }
    }
}

/// Images of the three order-increasing 2-types. 27 such maps exist; this is
/// the full fingerprint of a canonical function without constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeMap {
    pub on_e: TwoType,
    pub on_estar: TwoType,
    pub on_n: TwoType,
}

impl TypeMap {
    pub fn new(on_e: TwoType, on_estar: TwoType, on_n: TwoType) -> TypeMap {
        TypeMap {
            on_e,
            on_estar,
            on_n,
        }
    }

    pub fn identity() -> TypeMap {
        TypeMap::new(TwoType::E, TwoType::Estar, TwoType::N)
    }

    pub fn image(&self, t: TwoType) -> TwoType {
        match t {
            TwoType::E => self.on_e,
            TwoType::Estar => self.on_estar,
            TwoType::N => self.on_n,
        }
    }

    /// Composition `self ∘ self ∘ ...`, `times` factors.
    pub fn power(&self, times: usize) -> TypeMap {
        let mut out = TypeMap::identity();
        for _ in 0..times {
            out = TypeMap::new(
                self.image(out.on_e),
                self.image(out.on_estar),
                self.image(out.on_n),
            );
        }
        out
    }

    /// Conjugation by the reversal of all 2-types.
    pub fn mirrored(&self) -> TypeMap {
        TypeMap::new(
            self.image(TwoType::Estar).reversed(),
            self.image(TwoType::E).reversed(),
            self.image(TwoType::N).reversed(),
        )
    }
}

impl std::fmt::Display for TypeMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "E\u{21a6}{}, E*\u{21a6}{}, N\u{21a6}{}",
            self.on_e, self.on_estar, self.on_n
        )
    }
}

/// All 27 type maps, lexicographic in (image of E, image of E*, image of N)
/// with E < E* < N.
pub fn enumerate_behaviors() -> Vec<TypeMap> {
    let mut out = Vec::with_capacity(27);
    for e in TwoType::ALL {
        for estar in TwoType::ALL {
            for n in TwoType::ALL {
                out.push(TypeMap::new(e, estar, n));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    BehavesLikeId,
    BehavesLikeMinus,
    ContainsAutGamma,
    EqualsSymD,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Verdict for a no-constants behaviour, with its case label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub case: &'static str,
}

/// The frozen case table for canonical functions without constants.
///
/// Case 1 keeps non-edges, case 2 sends them to edges, case 3 mirrors case 2
/// under reversal. The chained reductions inside cases 2 and 3 all end in
/// the full symmetric group except for the double-deletion case, which only
/// reaches the graph-automorphism group.
pub fn classify_behavior(b: &TypeMap) -> Verdict {
    use TwoType::*;
    let v = |kind, case| Verdict { kind, case };
    match (b.on_e, b.on_estar, b.on_n) {
        (E, Estar, N) => v(VerdictKind::BehavesLikeId, "1a"),
        (Estar, E, N) => v(VerdictKind::BehavesLikeMinus, "1b"),
        (E, E, N) | (Estar, Estar, N) => v(VerdictKind::ContainsAutGamma, "1c"),
        (_, _, N) => v(VerdictKind::EqualsSymD, "1d"),
        (N, N, E) => v(VerdictKind::ContainsAutGamma, "2b"),
        (N, E, E) => v(VerdictKind::EqualsSymD, "2c"),
        (N, Estar, E) => v(VerdictKind::EqualsSymD, "2d"),
        (E, N, E) => v(VerdictKind::EqualsSymD, "2e"),
        (Estar, N, E) => v(VerdictKind::EqualsSymD, "2f"),
        (_, _, E) => v(VerdictKind::EqualsSymD, "2a"),
        (N, N, Estar) => v(VerdictKind::ContainsAutGamma, "3b"),
        (Estar, N, Estar) => v(VerdictKind::EqualsSymD, "3c"),
        (E, N, Estar) => v(VerdictKind::EqualsSymD, "3d"),
        (N, Estar, Estar) => v(VerdictKind::EqualsSymD, "3e"),
        (N, E, Estar) => v(VerdictKind::EqualsSymD, "3f"),
        (_, _, Estar) => v(VerdictKind::EqualsSymD, "3a"),
    }
}

/// How a function acts inside one infinite orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitAction {
    Id,
    Minus,
}

/// Behaviour across two orbits X < Y: the action inside each orbit plus the
/// images of the three X-to-Y pair types (all X-to-Y pairs are increasing).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoOrbitBehavior {
    pub on_x: OrbitAction,
    pub on_y: OrbitAction,
    pub between: TypeMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoOrbitVerdictKind {
    IdBetween,
    SwBetween,
    RotBetween,
    RotInvBetween,
    MinusRotCombined,
    ContainsAutGamma,
    EqualsSymD,
}

impl std::fmt::Display for TwoOrbitVerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoOrbitVerdict {
    pub kind: TwoOrbitVerdictKind,
    pub case: String,
}

/// The frozen two-orbit case table.
///
/// Between-maps that keep non-edges mirror the no-constants table. The
/// rotation case reads E↦E*, E*↦N, N↦E (the inverse rotation arises as its
/// mirror), and the non-edge-to-edge map fixing inward edges combines with a
/// reversal on the upper orbit into the mixed verdict; acting by reversal on
/// the upper orbit degrades the rotation case to the symmetric group.
pub fn classify_two_orbit(b: &TwoOrbitBehavior) -> TwoOrbitVerdict {
    use TwoType::*;
    let v = |kind, case: &str| TwoOrbitVerdict {
        kind,
        case: case.to_string(),
    };
    let m = &b.between;
    match (m.on_e, m.on_estar, m.on_n) {
        (E, Estar, N) => v(TwoOrbitVerdictKind::IdBetween, "1a"),
        (Estar, E, N) => v(TwoOrbitVerdictKind::SwBetween, "1b"),
        (E, E, N) | (Estar, Estar, N) => v(TwoOrbitVerdictKind::ContainsAutGamma, "1c"),
        (_, _, N) => v(TwoOrbitVerdictKind::EqualsSymD, "1d"),
        (Estar, N, E) => {
            if b.on_y == OrbitAction::Minus {
                v(TwoOrbitVerdictKind::EqualsSymD, "2f*")
            } else {
                v(TwoOrbitVerdictKind::RotBetween, "2f")
            }
        }
        (N, E, Estar) => {
            if b.on_y == OrbitAction::Minus {
                v(TwoOrbitVerdictKind::EqualsSymD, "3f*")
            } else {
                v(TwoOrbitVerdictKind::RotInvBetween, "3f")
            }
        }
        (N, Estar, E) => match (b.on_x, b.on_y) {
            (_, OrbitAction::Id) => v(TwoOrbitVerdictKind::EqualsSymD, "2d(i)"),
            (OrbitAction::Id, OrbitAction::Minus) => {
                v(TwoOrbitVerdictKind::MinusRotCombined, "2d(ii)")
            }
            (OrbitAction::Minus, OrbitAction::Minus) => {
                v(TwoOrbitVerdictKind::EqualsSymD, "2d(ii)*")
            }
        },
        (E, N, Estar) => match (b.on_x, b.on_y) {
            (_, OrbitAction::Id) => v(TwoOrbitVerdictKind::EqualsSymD, "3d(i)"),
            (OrbitAction::Id, OrbitAction::Minus) => {
                v(TwoOrbitVerdictKind::MinusRotCombined, "3d(ii)")
            }
            (OrbitAction::Minus, OrbitAction::Minus) => {
                v(TwoOrbitVerdictKind::EqualsSymD, "3d(ii)*")
            }
        },
        (N, N, E) => v(TwoOrbitVerdictKind::EqualsSymD, "2b"),
        (N, E, E) => v(TwoOrbitVerdictKind::EqualsSymD, "2c"),
        (E, N, E) => v(TwoOrbitVerdictKind::EqualsSymD, "2e"),
        (_, _, E) => v(TwoOrbitVerdictKind::EqualsSymD, "2a"),
        (N, N, Estar) => v(TwoOrbitVerdictKind::EqualsSymD, "3b"),
        (Estar, N, Estar) => v(TwoOrbitVerdictKind::EqualsSymD, "3c"),
        (N, Estar, Estar) => v(TwoOrbitVerdictKind::EqualsSymD, "3e"),
        (_, _, Estar) => v(TwoOrbitVerdictKind::EqualsSymD, "3a"),
    }
}

/// All 108 two-orbit behaviours in deterministic order.
pub fn enumerate_two_orbit_behaviors() -> Vec<TwoOrbitBehavior> {
    let mut out = Vec::with_capacity(108);
    for on_x in [OrbitAction::Id, OrbitAction::Minus] {
        for on_y in [OrbitAction::Id, OrbitAction::Minus] {
            for between in enumerate_behaviors() {
                out.push(TwoOrbitBehavior {
                    on_x,
                    on_y,
                    between,
                });
            }
        }
    }
    out
}

fn positions_from(order: &[usize]) -> Result<Vec<usize>> {
    let n = order.len();
    let mut pos = vec![usize::MAX; n];
    for (p, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if pos[v] != usize::MAX {
            return Err(Error::NotInjective);
        }
        pos[v] = p;
    }
    Ok(pos)
}

/// Rewrites each pair according to `b`, reading and writing pair types in
/// the orientation of the given linear order (a permutation listing the
/// vertices from least to greatest).
pub fn rewrite_under_order(g: &Digraph, order: &[usize], b: &TypeMap) -> Result<Digraph> {
    if order.len() != g.vertex_count() {
        return Err(Error::NotBijective);
    }
    let pos = positions_from(order)?;
    let n = g.vertex_count();
    let mut out = g.clone();
    for x in 0..n {
        for y in (x + 1)..n {
            let (lo, hi) = if pos[x] < pos[y] { (x, y) } else { (y, x) };
            let t = match g.pair_type(lo, hi)? {
                PairType::Out => TwoType::E,
                PairType::In => TwoType::Estar,
                PairType::None => TwoType::N,
            };
            let image = match b.image(t) {
                TwoType::E => PairType::Out,
                TwoType::Estar => PairType::In,
                TwoType::N => PairType::None,
            };
            out.set_pair_mut(lo, hi, image);
        }
    }
    Ok(out)
}

/// Finite realization of the canonical function: every pair, read in index
/// order, is replaced by its image type.
pub fn rewrite_by_behavior(g: &Digraph, b: &TypeMap) -> Digraph {
    let order: Vec<usize> = g.vertices().collect();
    rewrite_under_order(g, &order, b).expect("identity order is valid")
}

/// A vertex's relation to each constant, or the constant itself.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum OrbitLabel {
    /// Index into the constants tuple.
    Constant(usize),
    /// Per constant: whether the vertex lies below it in the order, and the
    /// pair type from the vertex to the constant.
    Profile(Vec<(bool, TwoType)>),
}

/// Labels every vertex by its full profile against the constants. Constants
/// must be distinct and listed in increasing index order; each is its own
/// singleton label.
pub fn orbit_labels(g: &Digraph, constants: &[usize]) -> Result<BTreeMap<usize, OrbitLabel>> {
    for (i, &c) in constants.iter().enumerate() {
        if c >= g.vertex_count() {
            return Err(Error::BadConstants);
        }
        if i > 0 && constants[i - 1] >= c {
            return Err(Error::BadConstants);
        }
    }
    let mut labels = BTreeMap::new();
    for x in g.vertices() {
        if let Some(i) = constants.iter().position(|&c| c == x) {
            labels.insert(x, OrbitLabel::Constant(i));
            continue;
        }
        let mut profile = Vec::with_capacity(constants.len());
        for &c in constants {
            let below = x < c;
            let rel = match g.pair_type(x, c)? {
                PairType::Out => TwoType::E,
                PairType::In => TwoType::Estar,
                PairType::None => TwoType::N,
            };
            profile.push((below, rel));
        }
        labels.insert(x, OrbitLabel::Profile(profile));
    }
    Ok(labels)
}

/// Three orbit classes receiving out-edges, in-edges, and non-edges from the
/// constant `c`, when the finite sample realizes all three.
#[derive(Clone, Debug, Serialize)]
pub struct CGenericTriple {
    pub out_class: (OrbitLabel, Vec<usize>),
    pub in_class: (OrbitLabel, Vec<usize>),
    pub non_class: (OrbitLabel, Vec<usize>),
}

pub fn find_c_generic_triple(
    g: &Digraph,
    c: usize,
    constants: &[usize],
) -> Result<Option<CGenericTriple>> {
    let Some(c_index) = constants.iter().position(|&x| x == c) else {
        return Err(Error::BadConstants);
    };
    let labels = orbit_labels(g, constants)?;
    let mut classes: BTreeMap<OrbitLabel, Vec<usize>> = BTreeMap::new();
    for (v, label) in labels {
        if let OrbitLabel::Profile(_) = label {
            classes.entry(label).or_default().push(v);
        }
    }
    let pick = |wanted: TwoType| -> Option<(OrbitLabel, Vec<usize>)> {
        classes
            .iter()
            .find(|(label, _)| match label {
                OrbitLabel::Profile(profile) => profile[c_index].1 == wanted,
                OrbitLabel::Constant(_) => false,
            })
            .map(|(label, members)| (label.clone(), members.clone()))
    };
    // Out-edges from c reach vertices whose pair type toward c is E*.
    let out_class = pick(TwoType::Estar);
    let in_class = pick(TwoType::E);
    let non_class = pick(TwoType::N);
    Ok(match (out_class, in_class, non_class) {
        (Some(o), Some(i), Some(n)) => Some(CGenericTriple {
            out_class: o,
            in_class: i,
            non_class: n,
        }),
        _ => None,
    })
}

/// A verified demonstration that the group generated by realizations of a
/// behaviour can strictly reduce edge counts.
///
/// Each variant records forward chains of relabel-then-rewrite rounds whose
/// executed results certify the reduction: a `Direct` chain shrinks the
/// count outright; a `Fork` produces two images of one digraph whose counts
/// differ, so the element through the common source maps the larger image to
/// the smaller; a `Meet` rewrites a digraph and the same digraph minus one
/// edge onto the same image, so the element through the image deletes that
/// edge.
#[derive(Clone, Debug, Serialize)]
pub enum DeletionWitness {
    Direct {
        rounds: usize,
        edges_before: usize,
        edges_after: usize,
    },
    Fork {
        edge: (usize, usize),
        count_kept: usize,
        count_swapped: usize,
    },
    Meet {
        edge: (usize, usize),
        swapped_order: bool,
    },
}

fn order_with_pair_first(n: usize, first: usize, second: usize) -> Vec<usize> {
    let mut order = vec![first, second];
    order.extend((0..n).filter(|&v| v != first && v != second));
    order
}

/// Searches for an edge-deletion witness for `b` on `g`, using at most
/// `max_rounds` rewrite rounds in total.
pub fn find_edge_deletion_witness(
    b: &TypeMap,
    g: &Digraph,
    max_rounds: usize,
) -> Option<DeletionWitness> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m == 0 {
        return None;
    }
    let identity: Vec<usize> = (0..n).collect();
    let reversal: Vec<usize> = (0..n).rev().collect();

    // Direct: iterate b^j; a round with a chosen order deletes edges when
    // the composed map keeps non-edges and drops at least one edge type.
    for rounds in 1..=max_rounds {
        let bj = b.power(rounds);
        if bj.on_n != TwoType::N {
            continue;
        }
        let keeps_e = bj.on_e != TwoType::N;
        let keeps_estar = bj.on_estar != TwoType::N;
        if keeps_e && keeps_estar {
            continue;
        }
        let has_ascending = g.edges().iter().any(|&(u, v)| u < v);
        let has_descending = g.edges().iter().any(|&(u, v)| u > v);
        let order = if !keeps_e {
            // Ascending edges get deleted; make sure one exists.
            if has_ascending {
                &identity
            } else {
                &reversal
            }
        } else {
            if has_descending {
                &identity
            } else {
                &reversal
            }
        };
        let mut h = g.clone();
        for _ in 0..rounds {
            h = rewrite_under_order(&h, order, b).expect("orders are valid");
        }
        if h.edge_count() < m {
            return Some(DeletionWitness::Direct {
                rounds,
                edges_before: m,
                edges_after: h.edge_count(),
            });
        }
    }

    let (u, v) = *g.edges().first()?;
    // Fork: the two placements of one edge produce images whose edge counts
    // differ whenever exactly one of the two edge types maps to a non-edge.
    if max_rounds >= 2 && (b.on_e != TwoType::N) != (b.on_estar != TwoType::N) {
        let kept = rewrite_under_order(g, &order_with_pair_first(n, u, v), b).ok()?;
        let swapped = rewrite_under_order(g, &order_with_pair_first(n, v, u), b).ok()?;
        if kept.edge_count() != swapped.edge_count() {
            return Some(DeletionWitness::Fork {
                edge: (u, v),
                count_kept: kept.edge_count(),
                count_swapped: swapped.edge_count(),
            });
        }
    }

    // Meet: when both an edge type and the non-edge type land on edges, the
    // digraph and the digraph minus one edge rewrite onto the same image,
    // placing the deleted pair in the order that aligns the two images.
    if max_rounds >= 2 && b.on_e != TwoType::N && b.on_n != TwoType::N {
        let reduced = g.set_pair(u, v, PairType::None).ok()?;
        let swapped_order = b.on_n != b.on_e;
        let o1 = order_with_pair_first(n, u, v);
        let o2 = if swapped_order {
            order_with_pair_first(n, v, u)
        } else {
            o1.clone()
        };
        let image_full = rewrite_under_order(g, &o1, b).ok()?;
        let image_reduced = rewrite_under_order(&reduced, &o2, b).ok()?;
        if image_full == image_reduced {
            return Some(DeletionWitness::Meet {
                edge: (u, v),
                swapped_order,
            });
        }
    }
    None
}

/// A verified demonstration that a behaviour aligns every edge with the
/// linear order while fixing the underlying graph.
#[derive(Clone, Debug, Serialize)]
pub struct AlignmentWitness {
    /// True when edges end up pointing from lower to higher index.
    pub ascending: bool,
}

pub fn find_alignment_witness(b: &TypeMap, g: &Digraph) -> Option<AlignmentWitness> {
    let h = rewrite_by_behavior(g, b);
    if h.underlying_graph() != g.underlying_graph() {
        return None;
    }
    let edges = h.edges();
    if edges.is_empty() {
        return None;
    }
    if edges.iter().all(|&(x, y)| x < y) {
        Some(AlignmentWitness { ascending: true })
    } else if edges.iter().all(|&(x, y)| x > y) {
        Some(AlignmentWitness { ascending: false })
    } else {
        None
    }
}
