//! The eleven-element lattice of closed groups between Aut(D,E) and Sym(D),
//! with order, meet, join, invariant-relation signatures, and classification
//! of finite maps by the relations they preserve.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::Result;
use crate::relations::{preserved_relations, RelationId};

/// The eleven lattice elements, ordered bottom to top in `ALL`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ReductNode {
    AutDE,
    Sw,
    Minus,
    Rot,
    SwMinus,
    MinusRot,
    AutGamma,
    SwGamma,
    MinusGamma,
    SwMinusGamma,
    SymD,
}

impl ReductNode {
    pub const ALL: [ReductNode; 11] = [
        ReductNode::AutDE,
        ReductNode::Sw,
        ReductNode::Minus,
        ReductNode::Rot,
        ReductNode::SwMinus,
        ReductNode::MinusRot,
        ReductNode::AutGamma,
        ReductNode::SwGamma,
        ReductNode::MinusGamma,
        ReductNode::SwMinusGamma,
        ReductNode::SymD,
    ];

    fn index(self) -> usize {
        ReductNode::ALL.iter().position(|&n| n == self).unwrap()
    }
}

impl std::fmt::Display for ReductNode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Covering pairs (lower, upper) of the Hasse diagram.
const HASSE: [(ReductNode, ReductNode); 14] = [
    (ReductNode::AutDE, ReductNode::Sw),
    (ReductNode::AutDE, ReductNode::Minus),
    (ReductNode::AutDE, ReductNode::Rot),
    (ReductNode::Sw, ReductNode::SwMinus),
    (ReductNode::Minus, ReductNode::SwMinus),
    (ReductNode::Minus, ReductNode::MinusRot),
    (ReductNode::Rot, ReductNode::MinusRot),
    (ReductNode::SwMinus, ReductNode::AutGamma),
    (ReductNode::AutGamma, ReductNode::SwGamma),
    (ReductNode::AutGamma, ReductNode::MinusGamma),
    (ReductNode::SwGamma, ReductNode::SwMinusGamma),
    (ReductNode::MinusGamma, ReductNode::SwMinusGamma),
    (ReductNode::SwMinusGamma, ReductNode::SymD),
    (ReductNode::MinusRot, ReductNode::SymD),
];

struct Tables {
    leq: [[bool; 11]; 11],
    meet: [[ReductNode; 11]; 11],
    join: [[ReductNode; 11]; 11],
}

/// Builds the order as the reflexive-transitive closure of the Hasse
/// diagram, then derives the meet and join tables, asserting on the way that
/// every pair has a unique greatest lower and least upper bound.
fn build_tables() -> Tables {
    let mut leq = [[false; 11]; 11];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(lo, hi) in &HASSE {
        leq[lo.index()][hi.index()] = true;
    }
    for _ in 0..11 {
        for a in 0..11 {
            for b in 0..11 {
                if !leq[a][b] {
                    leq[a][b] = (0..11).any(|m| leq[a][m] && leq[m][b] && m != a && m != b);
                }
            }
        }
    }
    let bound = |a: usize, b: usize, lower: bool| -> ReductNode {
        let candidates: Vec<usize> = (0..11)
            .filter(|&m| {
                if lower {
                    leq[m][a] && leq[m][b]
                } else {
                    leq[a][m] && leq[b][m]
                }
            })
            .collect();
        // The unique candidate that bounds every other candidate.
        let selected: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&m| {
                candidates
                    .iter()
                    .all(|&other| if lower { leq[other][m] } else { leq[m][other] })
            })
            .collect();
        assert_eq!(
            selected.len(),
            1,
            "order is not a lattice at ({:?}, {:?})",
            ReductNode::ALL[a],
            ReductNode::ALL[b]
        );
        ReductNode::ALL[selected[0]]
    };
    let mut meet = [[ReductNode::AutDE; 11]; 11];
    let mut join = [[ReductNode::AutDE; 11]; 11];
    for a in 0..11 {
        for b in 0..11 {
            meet[a][b] = bound(a, b, true);
            join[a][b] = bound(a, b, false);
        }
    }
    Tables { leq, meet, join }
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

/// The lattice order.
pub fn leq(a: ReductNode, b: ReductNode) -> bool {
    tables().leq[a.index()][b.index()]
}

pub fn meet(a: ReductNode, b: ReductNode) -> ReductNode {
    tables().meet[a.index()][b.index()]
}

pub fn join(a: ReductNode, b: ReductNode) -> ReductNode {
    tables().join[a.index()][b.index()]
}

/// One line per node: `name: relations...`, in lattice enumeration order.
pub fn signature_table_string() -> String {
    let mut out = String::new();
    for node in ReductNode::ALL {
        let rels: Vec<String> = signature(node).iter().map(|r| format!("{r:?}")).collect();
        if rels.is_empty() {
            out.push_str(&format!("{node}:\n"));
        } else {
            out.push_str(&format!("{node}: {}\n", rels.join(" ")));
        }
    }
    out
}

/// The relations every member of the node preserves, at desk scale.
///
/// Each signature is the exact preservation profile of the node's generating
/// maps over the fixed relation vocabulary; signatures shrink monotonically
/// going up the lattice.
pub fn signature(node: ReductNode) -> &'static [RelationId] {
    use RelationId::*;
    match node {
        ReductNode::AutDE => &[
            E,
            Estar,
            N,
            EGamma,
            Ew,
            Psw,
            PswW,
            Prot1,
            Prot2,
            Prot3,
            ProtW,
            GammaTriParity,
            EGammaW,
            GammaTriParityW,
        ],
        ReductNode::Sw => &[
            N,
            EGamma,
            Psw,
            PswW,
            GammaTriParity,
            EGammaW,
            GammaTriParityW,
        ],
        // Reversal fixes the empty-triple rotation orbit setwise and swaps
        // the other two, so Prot3 and ProtW survive here.
        ReductNode::Minus => &[
            N,
            EGamma,
            Ew,
            PswW,
            Prot3,
            ProtW,
            GammaTriParity,
            EGammaW,
            GammaTriParityW,
        ],
        ReductNode::Rot => &[Prot1, Prot2, Prot3, ProtW],
        ReductNode::SwMinus => &[N, EGamma, PswW, GammaTriParity, EGammaW, GammaTriParityW],
        ReductNode::MinusRot => &[Prot3, ProtW],
        ReductNode::AutGamma => &[N, EGamma, GammaTriParity, EGammaW, GammaTriParityW],
        ReductNode::SwGamma => &[GammaTriParity, GammaTriParityW],
        ReductNode::MinusGamma => &[EGammaW, GammaTriParityW],
        ReductNode::SwMinusGamma => &[GammaTriParityW],
        ReductNode::SymD => &[],
    }
}

/// Classification of a finite bijection against the lattice.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub node: ReductNode,
    pub preserved: Vec<RelationId>,
    /// One witness tuple per relation the map fails to preserve.
    pub excluded_by: BTreeMap<RelationId, Vec<usize>>,
    /// Whether the preserved set equals the returned node's signature.
    pub exact: bool,
    /// All minimal consistent nodes when there is more than one; the first
    /// in lattice enumeration order is returned as `node`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ambiguous: Vec<ReductNode>,
}

/// Returns the least node whose signature the map's preserved relations
/// contain. Membership at finite scale means "consistent with": the witness
/// tuples in `excluded_by` show which relations ruled lower nodes out.
///
/// ```
/// use gdr_core::ep::{extend_to_ep, random_digraph};
/// use gdr_core::lattice::{classify_map, ReductNode};
/// use gdr_core::Transform;
///
/// let g = extend_to_ep(&random_digraph(6, 1), 2, 1);
/// let h = Transform::Reverse.apply(&g).unwrap();
/// let id: Vec<usize> = (0..g.vertex_count()).collect();
/// let verdict = classify_map(&g, &h, &id).unwrap();
/// assert_eq!(verdict.node, ReductNode::Minus);
/// ```
pub fn classify_map(g: &Digraph, h: &Digraph, f: &[usize]) -> Result<Classification> {
    let report = preserved_relations(g, h, f)?;
    let candidates: Vec<ReductNode> = ReductNode::ALL
        .into_iter()
        .filter(|&n| signature(n).iter().all(|r| report.is_preserved(*r)))
        .collect();
    let minimal: Vec<ReductNode> = candidates
        .iter()
        .copied()
        .filter(|&n| candidates.iter().all(|&m| !(leq(m, n) && m != n)))
        .collect();
    let node = minimal[0];
    let exact = {
        let mut sig: Vec<RelationId> = signature(node).to_vec();
        sig.sort();
        sig == report.preserved
    };
    Ok(Classification {
        node,
        preserved: report.preserved,
        excluded_by: report.violations,
        exact,
        ambiguous: if minimal.len() > 1 {
            minimal
        } else {
            Vec::new()
        },
    })
}
