//! Definable relations of the generic digraph as executable predicates.
//!
//! The three-ary rotation orbits are computed, not transcribed: the 27
//! triangle codes are closed under every pair-level rotation action, and the
//! resulting partition is required to have exactly three classes of nine
//! codes each. Anything else panics, since it would falsify the table.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, PairType, TriangleCode};
use crate::error::{Error, Result};

/// Identifiers for the relation vocabulary used by signatures and
/// preservation scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationId {
    /// E(x,y): edge x→y. Arity 2.
    E,
    /// E*(x,y) = E(y,x). Arity 2.
    Estar,
    /// N(x,y): non-edge. Arity 2.
    N,
    /// E_Γ(x,y) = E(x,y) ∨ E*(x,y). Arity 2.
    EGamma,
    /// E_w(x,y,a,b): both pairs are edges and E(x,y) ↔ E(a,b). Arity 4.
    ///
    /// The edge guard is what makes reversal preserve the relation; the
    /// unguarded biconditional flips on tuples mixing an edge with a
    /// non-edge pair.
    Ew,
    /// P_sw(x,y,z): the four even-switching tournament triangles. Arity 3.
    Psw,
    /// P_sw,w(x̄,ȳ): both triples are tournaments and their P_sw values agree.
    /// Arity 6.
    PswW,
    /// P_rot,1(x,y,z): rotation orbit of the transitive tournament. Arity 3.
    Prot1,
    /// P_rot,2(x,y,z): the remaining rotation orbit. Arity 3.
    Prot2,
    /// P_rot,3(x,y,z): rotation orbit of the empty triple. Arity 3.
    Prot3,
    /// P_rot,w(x̄,ȳ) = (P_rot,1(x̄) ∧ P_rot,1(ȳ)) ∨ (P_rot,2(x̄) ∧ P_rot,2(ȳ)).
    /// Arity 6.
    ProtW,
    /// Even number of underlying-graph edges among the three pairs. Arity 3.
    GammaTriParity,
    /// E_Γ(x,y) ↔ E_Γ(a,b). Arity 4.
    EGammaW,
    /// GammaTriParity(x̄) ↔ GammaTriParity(ȳ). Arity 6.
    GammaTriParityW,
}

impl RelationId {
    pub const ALL: [RelationId; 14] = [
        RelationId::E,
        RelationId::Estar,
        RelationId::N,
        RelationId::EGamma,
        RelationId::Ew,
        RelationId::Psw,
        RelationId::PswW,
        RelationId::Prot1,
        RelationId::Prot2,
        RelationId::Prot3,
        RelationId::ProtW,
        RelationId::GammaTriParity,
        RelationId::EGammaW,
        RelationId::GammaTriParityW,
    ];

    pub fn arity(self) -> usize {
        match self {
            RelationId::E | RelationId::Estar | RelationId::N | RelationId::EGamma => 2,
            RelationId::Ew | RelationId::EGammaW => 4,
            RelationId::Psw
            | RelationId::Prot1
            | RelationId::Prot2
            | RelationId::Prot3
            | RelationId::GammaTriParity => 3,
            RelationId::PswW | RelationId::ProtW | RelationId::GammaTriParityW => 6,
        }
    }
}

/// The four P_sw disjuncts as triangle codes of (x,y), (y,z), (x,z).
const PSW_CODES: [(PairType, PairType, PairType); 4] = [
    (PairType::Out, PairType::Out, PairType::Out),
    (PairType::In, PairType::In, PairType::Out),
    (PairType::In, PairType::Out, PairType::In),
    (PairType::Out, PairType::In, PairType::In),
];

pub fn psw_code(code: TriangleCode) -> bool {
    PSW_CODES.contains(&(code.0, code.1, code.2))
}

pub fn gamma_tri_parity_code(code: TriangleCode) -> bool {
    code.edge_count().is_multiple_of(2)
}

/// Partition of the 27 triangle codes into the three rotation orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotOrbitTable {
    labels: [u8; 27],
}

impl RotOrbitTable {
    pub fn label(&self, code: TriangleCode) -> u8 {
        self.labels[code.index()]
    }

    pub fn orbit_sizes(&self) -> [usize; 3] {
        let mut sizes = [0usize; 3];
        for &l in &self.labels {
            sizes[(l - 1) as usize] += 1;
        }
        sizes
    }

    /// 27 lines `code -> label` in lexicographic code order (Out < In < None).
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        for code in TriangleCode::all() {
            out.push_str(&format!("{} -> {}\n", code, self.label(code)));
        }
        out
    }
}

/// Applies the pair-level rotation with vertex-to-piece assignment
/// `(p0, p1, p2)` (piece values in Z/3) to a triangle code.
fn rotate_code(code: TriangleCode, p: [u8; 3]) -> TriangleCode {
    let shift = |s: PairType, i: usize, j: usize| -> PairType {
        PairType::from_z3((s.to_z3() + 3 + p[j]) - p[i])
    };
    TriangleCode(
        shift(code.0, 0, 1),
        shift(code.1, 1, 2),
        shift(code.2, 0, 2),
    )
}

fn compute_rot_orbits() -> RotOrbitTable {
    // Closure of the 27 codes under all 27 piece assignments.
    let mut orbit_of = [usize::MAX; 27];
    let mut orbit_count = 0usize;
    for start in 0..27 {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbit_count;
        orbit_count += 1;
        let mut stack = vec![start];
        orbit_of[start] = id;
        while let Some(i) = stack.pop() {
            let code = TriangleCode::from_index(i);
            for a in 0..3u8 {
                for b in 0..3u8 {
                    for c in 0..3u8 {
                        let img = rotate_code(code, [a, b, c]).index();
                        if orbit_of[img] == usize::MAX {
                            orbit_of[img] = id;
                            stack.push(img);
                        }
                    }
                }
            }
        }
    }
    assert_eq!(
        orbit_count, 3,
        "rotation closure must yield exactly 3 orbits"
    );
    let empty_orbit =
        orbit_of[TriangleCode(PairType::None, PairType::None, PairType::None).index()];
    let transitive_orbit =
        orbit_of[TriangleCode(PairType::Out, PairType::Out, PairType::Out).index()];
    assert_ne!(empty_orbit, transitive_orbit);
    let mut labels = [0u8; 27];
    for i in 0..27 {
        labels[i] = if orbit_of[i] == transitive_orbit {
            1
        } else if orbit_of[i] == empty_orbit {
            3
        } else {
            2
        };
    }
    let table = RotOrbitTable { labels };
    assert_eq!(table.orbit_sizes(), [9, 9, 9], "orbit sizes must be 9/9/9");
    table
}

/// The rotation-orbit table, computed once.
pub fn rot_orbit_table() -> &'static RotOrbitTable {
    static TABLE: OnceLock<RotOrbitTable> = OnceLock::new();
    TABLE.get_or_init(compute_rot_orbits)
}

pub fn rot_orbit_label(code: TriangleCode) -> u8 {
    rot_orbit_table().label(code)
}

fn distinct(tuple: &[usize]) -> bool {
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] == tuple[j] {
                return false;
            }
        }
    }
    true
}

/// Evaluates `rel` on a tuple of distinct vertices.
pub fn eval(rel: RelationId, g: &Digraph, tuple: &[usize]) -> Result<bool> {
    if tuple.len() != rel.arity() {
        return Err(Error::ArityMismatch {
            expected: rel.arity(),
            got: tuple.len(),
        });
    }
    if !distinct(tuple) {
        return Err(Error::RepeatedVertex);
    }
    let t = |x: usize, y: usize| g.pair_type(tuple[x], tuple[y]);
    let code3 = |a: usize, b: usize, c: usize| -> Result<TriangleCode> {
        Ok(TriangleCode(t(a, b)?, t(b, c)?, t(a, c)?))
    };
    Ok(match rel {
        RelationId::E => t(0, 1)? == PairType::Out,
        RelationId::Estar => t(0, 1)? == PairType::In,
        RelationId::N => t(0, 1)? == PairType::None,
        RelationId::EGamma => t(0, 1)?.is_edge(),
        RelationId::Ew => {
            let a = t(0, 1)?;
            let b = t(2, 3)?;
            a.is_edge() && b.is_edge() && ((a == PairType::Out) == (b == PairType::Out))
        }
        RelationId::Psw => psw_code(code3(0, 1, 2)?),
        RelationId::PswW => {
            let a = code3(0, 1, 2)?;
            let b = code3(3, 4, 5)?;
            a.is_tournament() && b.is_tournament() && (psw_code(a) == psw_code(b))
        }
        RelationId::Prot1 => rot_orbit_label(code3(0, 1, 2)?) == 1,
        RelationId::Prot2 => rot_orbit_label(code3(0, 1, 2)?) == 2,
        RelationId::Prot3 => rot_orbit_label(code3(0, 1, 2)?) == 3,
        RelationId::ProtW => {
            let a = rot_orbit_label(code3(0, 1, 2)?);
            let b = rot_orbit_label(code3(3, 4, 5)?);
            (a == 1 && b == 1) || (a == 2 && b == 2)
        }
        RelationId::GammaTriParity => gamma_tri_parity_code(code3(0, 1, 2)?),
        RelationId::EGammaW => t(0, 1)?.is_edge() == t(2, 3)?.is_edge(),
        RelationId::GammaTriParityW => {
            gamma_tri_parity_code(code3(0, 1, 2)?) == gamma_tri_parity_code(code3(3, 4, 5)?)
        }
    })
}

/// Outcome of scanning all tuples of every relation under a bijection.
#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    /// Relations with equal truth value on every tuple and its image.
    pub preserved: Vec<RelationId>,
    /// One witness tuple per violated relation.
    pub violations: BTreeMap<RelationId, Vec<usize>>,
}

impl PreservationReport {
    pub fn is_preserved(&self, rel: RelationId) -> bool {
        self.preserved.contains(&rel)
    }
}

/// Tuples in one (before, after) evaluation class, encoded in base n.
type ClassMap<K> = BTreeMap<K, Vec<usize>>;

pub(crate) fn check_bijection(g: &Digraph, h: &Digraph, f: &[usize]) -> Result<()> {
    if f.len() != g.vertex_count() || g.vertex_count() != h.vertex_count() {
        return Err(Error::NotBijective);
    }
    let mut seen = vec![false; h.vertex_count()];
    for &y in f {
        if y >= h.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: y,
                n: h.vertex_count(),
            });
        }
        if seen[y] {
            return Err(Error::NotInjective);
        }
        seen[y] = true;
    }
    Ok(())
}

/// The set of relations `R` with `eval(R, g, τ) == eval(R, h, f(τ))` for
/// every tuple `τ` of distinct vertices, plus one witness per violation.
///
/// Pair and triple relations are scanned directly. The arity-4 and arity-6
/// weakenings factor through per-pair or per-triple values, which the scan
/// exploits; `preserved_relations_brute` is the same predicate by literal
/// tuple enumeration and the two are cross-checked in tests.
pub fn preserved_relations(g: &Digraph, h: &Digraph, f: &[usize]) -> Result<PreservationReport> {
    check_bijection(g, h, f)?;
    let n = g.vertex_count();
    let mut preserved = Vec::new();
    let mut violations = BTreeMap::new();

    // Per-pair data, indexed by ordered pairs. The pair weakenings factor
    // through the (before, after) pair-type classes; scanning class pairs
    // with vertex-disjoint representatives is equivalent to scanning all
    // distinct 4-tuples.
    let mut pair_mismatch: BTreeMap<RelationId, Option<Vec<usize>>> = BTreeMap::new();
    for rel in [
        RelationId::E,
        RelationId::Estar,
        RelationId::N,
        RelationId::EGamma,
    ] {
        pair_mismatch.insert(rel, None);
    }
    let mut pair_classes: BTreeMap<(PairType, PairType), Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let before = g.pair_type(x, y)?;
            let after = h.pair_type(f[x], f[y])?;
            for (rel, pred) in [
                (RelationId::E, PairType::Out),
                (RelationId::Estar, PairType::In),
                (RelationId::N, PairType::None),
            ] {
                if (before == pred) != (after == pred) {
                    pair_mismatch
                        .get_mut(&rel)
                        .unwrap()
                        .get_or_insert(vec![x, y]);
                }
            }
            if before.is_edge() != after.is_edge() {
                pair_mismatch
                    .get_mut(&RelationId::EGamma)
                    .unwrap()
                    .get_or_insert(vec![x, y]);
            }
            pair_classes
                .entry((before, after))
                .or_default()
                .push(x * n + y);
        }
    }
    for rel in [
        RelationId::E,
        RelationId::Estar,
        RelationId::N,
        RelationId::EGamma,
    ] {
        match pair_mismatch.remove(&rel).unwrap() {
            Some(w) => {
                violations.insert(rel, w);
            }
            _ => preserved.push(rel),
        }
    }
    let ew_value = |a: PairType, b: PairType| {
        a.is_edge() && b.is_edge() && ((a == PairType::Out) == (b == PairType::Out))
    };
    let ew = pairwise_weakening_violation(n, &pair_classes, |&(pb, pa), &(qb, qa)| {
        ew_value(pb, qb) == ew_value(pa, qa)
    });
    let egw = pairwise_weakening_violation(n, &pair_classes, |&(pb, pa), &(qb, qa)| {
        (pb.is_edge() == qb.is_edge()) == (pa.is_edge() == qa.is_edge())
    });
    for (rel, violation) in [(RelationId::Ew, ew), (RelationId::EGammaW, egw)] {
        match violation {
            Some(w) => {
                violations.insert(rel, w);
            }
            None => preserved.push(rel),
        }
    }

    // Per-triple data.
    let mut psw_mismatch: Option<Vec<usize>> = None;
    let mut prot_mismatch: [Option<Vec<usize>>; 3] = [None, None, None];
    let mut gtp_mismatch: Option<Vec<usize>> = None;
    let mut psww_classes: ClassMap<((bool, bool), (bool, bool))> = BTreeMap::new();
    let mut protw_classes: ClassMap<(u8, u8)> = BTreeMap::new();
    let mut gtpw_classes: ClassMap<(bool, bool)> = BTreeMap::new();
    let triples = crate::exec::map_range(n * n * n, |i| {
        let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
        if x == y || y == z || x == z {
            return None;
        }
        let before = g.triangle_code(x, y, z).unwrap();
        let after = h.triangle_code(f[x], f[y], f[z]).unwrap();
        Some((i, before, after))
    });
    for item in triples.into_iter().flatten() {
        let (i, before, after) = item;
        let tuple = vec![i / (n * n), (i / n) % n, i % n];
        if psw_code(before) != psw_code(after) {
            psw_mismatch.get_or_insert(tuple.clone());
        }
        let (lb, la) = (rot_orbit_label(before), rot_orbit_label(after));
        for orbit in 1..=3u8 {
            if (lb == orbit) != (la == orbit) {
                prot_mismatch[(orbit - 1) as usize].get_or_insert(tuple.clone());
            }
        }
        if gamma_tri_parity_code(before) != gamma_tri_parity_code(after) {
            gtp_mismatch.get_or_insert(tuple.clone());
        }
        psww_classes
            .entry((
                (before.is_tournament(), psw_code(before)),
                (after.is_tournament(), psw_code(after)),
            ))
            .or_default()
            .push(i);
        protw_classes.entry((lb, la)).or_default().push(i);
        gtpw_classes
            .entry((gamma_tri_parity_code(before), gamma_tri_parity_code(after)))
            .or_default()
            .push(i);
    }
    match psw_mismatch {
        Some(w) => {
            violations.insert(RelationId::Psw, w);
        }
        None => preserved.push(RelationId::Psw),
    }
    for orbit in 1..=3u8 {
        let rel = [RelationId::Prot1, RelationId::Prot2, RelationId::Prot3][(orbit - 1) as usize];
        match prot_mismatch[(orbit - 1) as usize].take() {
            Some(w) => {
                violations.insert(rel, w);
            }
            None => preserved.push(rel),
        }
    }
    match gtp_mismatch {
        Some(w) => {
            violations.insert(RelationId::GammaTriParity, w);
        }
        None => preserved.push(RelationId::GammaTriParity),
    }

    let psww = triple_weakening_violation(n, &psww_classes, |&(bt, bp), &(ct, cp)| {
        let before = bt.0 && ct.0 && (bt.1 == ct.1);
        let after = bp.0 && cp.0 && (bp.1 == cp.1);
        before == after
    });
    let protw = triple_weakening_violation(n, &protw_classes, |&(lb, la), &(mb, ma)| {
        let before = (lb == 1 && mb == 1) || (lb == 2 && mb == 2);
        let after = (la == 1 && ma == 1) || (la == 2 && ma == 2);
        before == after
    });
    let gtpw = triple_weakening_violation(n, &gtpw_classes, |&(pb, pa), &(qb, qa)| {
        (pb == qb) == (pa == qa)
    });
    for (rel, violation) in [
        (RelationId::PswW, psww),
        (RelationId::ProtW, protw),
        (RelationId::GammaTriParityW, gtpw),
    ] {
        match violation {
            Some(w) => {
                violations.insert(rel, w);
            }
            None => preserved.push(rel),
        }
    }

    preserved.sort();
    Ok(PreservationReport {
        preserved,
        violations,
    })
}

/// Finds a violating 4-tuple for a pair-weakening relation. `ok` returns
/// whether a pair of pair classes agrees before and after; representatives
/// must be vertex-disjoint to form a valid tuple.
fn pairwise_weakening_violation<K: Ord, F: Fn(&K, &K) -> bool>(
    n: usize,
    classes: &BTreeMap<K, Vec<usize>>,
    ok: F,
) -> Option<Vec<usize>> {
    let decode = |e: usize| (e / n, e % n);
    for (ca, pairs_a) in classes {
        for (cb, pairs_b) in classes {
            if ok(ca, cb) {
                continue;
            }
            for &ea in pairs_a {
                let (x, y) = decode(ea);
                for &eb in pairs_b {
                    let (a, b) = decode(eb);
                    if x != a && x != b && y != a && y != b {
                        return Some(vec![x, y, a, b]);
                    }
                }
            }
        }
    }
    None
}

/// Finds a violating 6-tuple for a triple-weakening relation. `ok` returns
/// whether a pair of triple classes agrees before and after.
fn triple_weakening_violation<K: Ord, F: Fn(&K, &K) -> bool>(
    n: usize,
    classes: &BTreeMap<K, Vec<usize>>,
    ok: F,
) -> Option<Vec<usize>> {
    let decode = |e: usize| (e / (n * n), (e / n) % n, e % n);
    for (ca, triples_a) in classes {
        for (cb, triples_b) in classes {
            if ok(ca, cb) {
                continue;
            }
            for &ea in triples_a {
                let (x, y, z) = decode(ea);
                for &eb in triples_b {
                    let (a, b, c) = decode(eb);
                    if [a, b, c].iter().all(|&v| v != x && v != y && v != z) {
                        return Some(vec![x, y, z, a, b, c]);
                    }
                }
            }
        }
    }
    None
}

/// Literal tuple-enumeration version of [`preserved_relations`]; exponential
/// in arity, kept as the independent route for cross-checking.
pub fn preserved_relations_brute(g: &Digraph, h: &Digraph, f: &[usize]) -> Result<Vec<RelationId>> {
    use itertools::Itertools;
    check_bijection(g, h, f)?;
    let n = g.vertex_count();
    let mut preserved = Vec::new();
    for rel in RelationId::ALL {
        let arity = rel.arity();
        let mut ok = true;
        'outer: for tuple in (0..n).permutations(arity) {
            let image: Vec<usize> = tuple.iter().map(|&v| f[v]).collect();
            if eval(rel, g, &tuple)? != eval(rel, h, &image)? {
                ok = false;
                break 'outer;
            }
        }
        if ok {
            preserved.push(rel);
        }
    }
    Ok(preserved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;

    #[test]
    fn orbit_table_structure() {
        let table = rot_orbit_table();
        assert_eq!(table.orbit_sizes(), [9, 9, 9]);
        assert_eq!(
            table.label(TriangleCode(PairType::None, PairType::None, PairType::None)),
            3
        );
        assert_eq!(
            table.label(TriangleCode(PairType::Out, PairType::Out, PairType::Out)),
            1
        );
    }

    #[test]
    fn orbit_labels_match_coset_invariant() {
        // Independent route: each rotation adds a vector (a, b, a+b) over Z/3
        // to the code, so s13 - s12 - s23 (mod 3) is constant on orbits and
        // separates them.
        for code in TriangleCode::all() {
            let inv = (3 + code.2.to_z3() + 6 - code.0.to_z3() - code.1.to_z3()) % 3;
            let expected = match inv {
                0 => 1,
                1 => 3,
                _ => 2,
            };
            assert_eq!(rot_orbit_label(code), expected, "code {code}");
        }
    }

    #[test]
    fn empty_triple_rotated_about_one_vertex_joins_the_three_cycle_orbit() {
        let empty = TriangleCode(PairType::None, PairType::None, PairType::None);
        let rotated = rotate_code(empty, [0, 1, 1]);
        let cycle = TriangleCode(PairType::Out, PairType::Out, PairType::In);
        assert_eq!(rot_orbit_label(rotated), rot_orbit_label(cycle));
    }

    #[test]
    fn orbit_labels_are_fixed_by_every_generator() {
        for code in TriangleCode::all() {
            for a in 0..3u8 {
                for b in 0..3u8 {
                    for c in 0..3u8 {
                        let image = rotate_code(code, [a, b, c]);
                        assert_eq!(rot_orbit_label(code), rot_orbit_label(image));
                    }
                }
            }
        }
    }

    #[test]
    fn egamma_matches_underlying_graph() {
        let g = crate::ep::random_digraph(7, 2);
        let graph = g.underlying_graph();
        for x in 0..7 {
            for y in 0..7 {
                if x != y {
                    assert_eq!(
                        eval(RelationId::EGamma, &g, &[x, y]).unwrap(),
                        graph.has_edge(x, y).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn change_one_pair_changes_orbit() {
        for code in TriangleCode::all() {
            for pos in 0..3 {
                for replacement in PairType::ALL {
                    let mut parts = [code.0, code.1, code.2];
                    if parts[pos] == replacement {
                        continue;
                    }
                    parts[pos] = replacement;
                    let changed = TriangleCode(parts[0], parts[1], parts[2]);
                    assert_ne!(rot_orbit_label(code), rot_orbit_label(changed));
                }
            }
        }
    }

    #[test]
    fn closure_with_full_relabelling_symmetry_fails_the_checksum() {
        // The alternative convention: close under the rotation generators
        // and all six relabellings of the triple. Transpositions merge the
        // two tournament-side orbits, so the 3x9 checksum rejects it.
        use itertools::Itertools;
        let relabel = |code: TriangleCode, p: &[usize]| -> TriangleCode {
            let mut g = Digraph::empty(3);
            g.set_pair_mut(0, 1, code.0);
            g.set_pair_mut(1, 2, code.1);
            g.set_pair_mut(0, 2, code.2);
            g.triangle_code(p[0], p[1], p[2]).unwrap()
        };
        let mut orbit_of = [usize::MAX; 27];
        let mut count = 0;
        for start in 0..27 {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let mut stack = vec![start];
            orbit_of[start] = id;
            while let Some(i) = stack.pop() {
                let code = TriangleCode::from_index(i);
                let mut images = Vec::new();
                for a in 0..3u8 {
                    for b in 0..3u8 {
                        for c in 0..3u8 {
                            images.push(rotate_code(code, [a, b, c]).index());
                        }
                    }
                }
                for p in (0..3usize).permutations(3) {
                    images.push(relabel(code, &p).index());
                }
                for img in images {
                    if orbit_of[img] == usize::MAX {
                        orbit_of[img] = id;
                        stack.push(img);
                    }
                }
            }
        }
        let mut sizes: Vec<usize> = (0..count)
            .map(|id| orbit_of.iter().filter(|&&o| o == id).count())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![9, 18]);
    }

    #[test]
    fn psw_census() {
        let tournaments: Vec<TriangleCode> =
            TriangleCode::all().filter(|c| c.is_tournament()).collect();
        assert_eq!(tournaments.len(), 8);
        assert_eq!(tournaments.iter().filter(|c| psw_code(**c)).count(), 4);
        for code in TriangleCode::all() {
            if !code.is_tournament() {
                assert!(!psw_code(code));
            }
        }
    }

    #[test]
    fn eval_examples() {
        let transitive = Digraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(eval(RelationId::Psw, &transitive, &[0, 1, 2]).unwrap());

        // (In, Out, Out) is not among the four disjuncts.
        let mixed = Digraph::from_edges(3, &[(1, 0), (1, 2), (0, 2)]).unwrap();
        assert!(!eval(RelationId::Psw, &mixed, &[0, 1, 2]).unwrap());

        let with_nonedge = Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!eval(RelationId::Psw, &with_nonedge, &[0, 1, 2]).unwrap());

        let empty = Digraph::empty(3);
        assert!(eval(RelationId::Prot3, &empty, &[0, 1, 2]).unwrap());

        let two_edges = Digraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(eval(RelationId::Ew, &two_edges, &[0, 1, 2, 3]).unwrap());
        assert!(!eval(RelationId::Ew, &two_edges, &[0, 1, 3, 2]).unwrap());
        // The edge guard: a tuple mixing an edge with a non-edge is out.
        let one_edge = Digraph::from_edges(4, &[(0, 1)]).unwrap();
        assert!(!eval(RelationId::Ew, &one_edge, &[0, 1, 2, 3]).unwrap());

        assert!(matches!(
            eval(RelationId::Psw, &empty, &[0, 1]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            eval(RelationId::E, &empty, &[1, 1]),
            Err(Error::RepeatedVertex)
        ));
    }

    #[test]
    fn psww_is_parity_equivalence_on_tournament_pairs() {
        // On pairs of tournament triples the weakening agrees with plain
        // equivalence of P_sw values.
        let g = Digraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        let x = [0usize, 1, 2];
        let y = [3usize, 4, 5];
        let tuple: Vec<usize> = x.iter().chain(y.iter()).copied().collect();
        let lhs = eval(RelationId::PswW, &g, &tuple).unwrap();
        let rhs = eval(RelationId::Psw, &g, &x).unwrap() == eval(RelationId::Psw, &g, &y).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn table_serialization_golden_shape() {
        let table = rot_orbit_table().to_table_string();
        assert_eq!(table.lines().count(), 27);
        assert!(table.starts_with("Out,Out,Out -> 1"));
        assert!(table.ends_with("None,None,None -> 3\n"));
    }

    #[test]
    fn identity_preserves_everything() {
        let g = Digraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 1), (4, 5)]).unwrap();
        let f: Vec<usize> = (0..6).collect();
        let report = preserved_relations(&g, &g, &f).unwrap();
        assert_eq!(report.preserved.len(), RelationId::ALL.len());
        assert!(report.violations.is_empty());
    }

    #[test]
    fn fast_scan_matches_brute_force() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..4 {
            let g = crate::ep::random_digraph(6, 100 + trial);
            let h = crate::ep::random_digraph(6, 200 + trial);
            let f = crate::test_support::random_permutation(6, &mut rng);
            let fast = preserved_relations(&g, &h, &f).unwrap();
            let brute = preserved_relations_brute(&g, &h, &f).unwrap();
            assert_eq!(fast.preserved, brute);
        }
        // A structured case as well: reversal of a rich digraph.
        let g = crate::ep::random_digraph(7, 5);
        let h = crate::transform::Transform::Reverse.apply(&g).unwrap();
        let f: Vec<usize> = (0..7).collect();
        let fast = preserved_relations(&g, &h, &f).unwrap();
        let brute = preserved_relations_brute(&g, &h, &f).unwrap();
        assert_eq!(fast.preserved, brute);
    }
}
