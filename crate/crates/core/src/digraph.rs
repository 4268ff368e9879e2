//! Finite digraphs with a three-valued pair relation.
//!
//! Every unordered pair of distinct vertices carries exactly one of three
//! states: an edge in either direction or a non-edge. Vertices are dense
//! integers `0..n`, and the linear order used by ordered-pair arguments is
//! always index order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The relation a single ordered pair of distinct vertices carries.
///
/// `pair_type(g, x, y) == Out` means the edge x→y is present, `In` means y→x,
/// and `None` means the pair is a non-edge. Orientation is always read from
/// the first argument to the second, so `Out` and `In` swap when the
/// arguments swap while `None` is symmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PairType {
    Out,
    In,
    None,
}

impl PairType {
    /// The same pair read in the opposite direction.
    pub fn reversed(self) -> PairType {
        match self {
            PairType::Out => PairType::In,
            PairType::In => PairType::Out,
            PairType::None => PairType::None,
        }
    }

    pub fn is_edge(self) -> bool {
        self != PairType::None
    }

    /// Encoding into Z/3 used by the rotation algebra: Out=0, In=1, None=2.
    pub fn to_z3(self) -> u8 {
        match self {
            PairType::Out => 0,
            PairType::In => 1,
            PairType::None => 2,
        }
    }

    pub fn from_z3(v: u8) -> PairType {
        match v % 3 {
            0 => PairType::Out,
            1 => PairType::In,
            _ => PairType::None,
        }
    }

    /// All pair types in the lexicographic order used throughout: Out < In < None.
    pub const ALL: [PairType; 3] = [PairType::Out, PairType::In, PairType::None];
}

/// The pair types of the ordered pairs (x,y), (y,z), (x,z) of an ordered
/// vertex triple. Exactly 27 distinct codes exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleCode(pub PairType, pub PairType, pub PairType);

impl TriangleCode {
    /// Index in lexicographic order (Out < In < None on each component).
    pub fn index(self) -> usize {
        self.0.to_z3() as usize * 9 + self.1.to_z3() as usize * 3 + self.2.to_z3() as usize
    }

    pub fn from_index(i: usize) -> TriangleCode {
        debug_assert!(i < 27);
        TriangleCode(
            PairType::from_z3((i / 9) as u8),
            PairType::from_z3(((i / 3) % 3) as u8),
            PairType::from_z3((i % 3) as u8),
        )
    }

    /// All 27 codes in lexicographic order.
    pub fn all() -> impl Iterator<Item = TriangleCode> {
        (0..27).map(TriangleCode::from_index)
    }

    /// True when all three pairs are edges.
    pub fn is_tournament(self) -> bool {
        self.0.is_edge() && self.1.is_edge() && self.2.is_edge()
    }

    pub fn edge_count(self) -> usize {
        [self.0, self.1, self.2]
            .iter()
            .filter(|t| t.is_edge())
            .count()
    }
}

impl std::fmt::Display for TriangleCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?},{:?},{:?}", self.0, self.1, self.2)
    }
}

/// A finite digraph on vertices `0..n`, stored as one [`PairType`] per
/// unordered pair, oriented from the lower to the higher index.
///
/// Values are immutable through the public API; operations that change pairs
/// return a new digraph.
///
/// ```
/// use gdr_core::{Digraph, PairType};
///
/// let g = Digraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
/// assert_eq!(g.pair_type(0, 1).unwrap(), PairType::Out);
/// assert_eq!(g.pair_type(1, 2).unwrap(), PairType::In);
/// assert_eq!(g.pair_type(0, 2).unwrap(), PairType::None);
/// assert_eq!(g.underlying_graph().edge_count(), 2);
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    pairs: Vec<PairType>,
}

fn pair_index(n: usize, x: usize, y: usize) -> usize {
    debug_assert!(x < y && y < n);
    x * n - x * (x + 1) / 2 + (y - x - 1)
}

impl Digraph {
    /// The digraph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Digraph {
        Digraph {
            n,
            pairs: vec![PairType::None; n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds a digraph from a directed edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Digraph> {
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            match g.pair_type(u, v)? {
                PairType::None => {}
                PairType::Out => return Err(Error::DuplicateEdge(u, v)),
                PairType::In => return Err(Error::TwoWayPair(u, v)),
            }
            g.set_pair_mut(u, v, PairType::Out);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The stored relation oriented from `x` to `y`.
    pub fn pair_type(&self, x: usize, y: usize) -> Result<PairType> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::RepeatedVertex);
        }
        Ok(if x < y {
            self.pairs[pair_index(self.n, x, y)]
        } else {
            self.pairs[pair_index(self.n, y, x)].reversed()
        })
    }

    pub(crate) fn set_pair_mut(&mut self, x: usize, y: usize, t: PairType) {
        debug_assert!(x != y);
        if x < y {
            self.pairs[pair_index(self.n, x, y)] = t;
        } else {
            self.pairs[pair_index(self.n, y, x)] = t.reversed();
        }
    }

    /// A copy of this digraph with the pair `{x, y}` set to `t` (oriented from
    /// `x` to `y`).
    pub fn set_pair(&self, x: usize, y: usize, t: PairType) -> Result<Digraph> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::RepeatedVertex);
        }
        let mut g = self.clone();
        g.set_pair_mut(x, y, t);
        Ok(g)
    }

    /// A copy with `extra` fresh vertices appended; new pairs are non-edges.
    pub fn with_fresh_vertices(&self, extra: usize) -> Digraph {
        let m = self.n + extra;
        let mut g = Digraph::empty(m);
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                g.pairs[pair_index(m, x, y)] = self.pairs[pair_index(self.n, x, y)];
            }
        }
        g
    }

    /// The induced digraph on the listed vertices, relabelled in list order.
    pub fn induced(&self, order: &[usize]) -> Result<Digraph> {
        let mut seen = vec![false; self.n];
        for &v in order {
            self.check_vertex(v)?;
            if seen[v] {
                return Err(Error::RepeatedVertex);
            }
            seen[v] = true;
        }
        let mut g = Digraph::empty(order.len());
        for i in 0..order.len() {
            for j in (i + 1)..order.len() {
                g.set_pair_mut(i, j, self.pair_type(order[i], order[j])?);
            }
        }
        Ok(g)
    }

    /// Relabels with `perm`, where old vertex `i` becomes `perm[i]`.
    pub fn relabelled(&self, perm: &[usize]) -> Result<Digraph> {
        if perm.len() != self.n {
            return Err(Error::NotBijective);
        }
        let mut inverse = vec![usize::MAX; self.n];
        for (i, &p) in perm.iter().enumerate() {
            self.check_vertex(p)?;
            if inverse[p] != usize::MAX {
                return Err(Error::NotInjective);
            }
            inverse[p] = i;
        }
        self.induced(&inverse)
    }

    /// Ordered pairs (x, y) with an edge x→y.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                match self.pairs[pair_index(self.n, x, y)] {
                    PairType::Out => out.push((x, y)),
                    PairType::In => out.push((y, x)),
                    PairType::None => {}
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.iter().filter(|t| t.is_edge()).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n)
            .filter(|&u| u != v && self.pair_type(v, u).unwrap() == PairType::Out)
            .count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n)
            .filter(|&u| u != v && self.pair_type(v, u).unwrap() == PairType::In)
            .count()
    }

    /// The code of the ordered triple (x, y, z).
    pub fn triangle_code(&self, x: usize, y: usize, z: usize) -> Result<TriangleCode> {
        if x == y || y == z || x == z {
            return Err(Error::RepeatedVertex);
        }
        Ok(TriangleCode(
            self.pair_type(x, y)?,
            self.pair_type(y, z)?,
            self.pair_type(x, z)?,
        ))
    }

    /// Forgets orientation: Out/In become an edge, None stays a non-edge.
    pub fn underlying_graph(&self) -> Graph {
        Graph {
            n: self.n,
            adj: self.pairs.iter().map(|t| t.is_edge()).collect(),
        }
    }

    /// Searches for an isomorphism onto `other`.
    ///
    /// Backtracking over vertex images, pruned by the (out-degree, in-degree)
    /// invariant. Returns a full image vector `phi` with
    /// `pair_type(self, x, y) == pair_type(other, phi[x], phi[y])` everywhere,
    /// or `None` when the digraphs are not isomorphic.
    pub fn is_isomorphic(&self, other: &Digraph) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let profile =
            |g: &Digraph, v: usize| -> (usize, usize) { (g.out_degree(v), g.in_degree(v)) };
        let mine: Vec<(usize, usize)> = (0..self.n).map(|v| profile(self, v)).collect();
        let theirs: Vec<(usize, usize)> = (0..self.n).map(|v| profile(other, v)).collect();
        {
            let mut a = mine.clone();
            let mut b = theirs.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return None;
            }
        }
        // Assign images rarest degree profile first, so mismatches surface
        // near the root of the search tree.
        let mut frequency: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        for p in &mine {
            *frequency.entry(*p).or_default() += 1;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (frequency[&mine[v]], mine[v]));
        let mut search = IsoSearch {
            source: self,
            target: other,
            order,
            image: vec![usize::MAX; self.n],
            used: vec![false; self.n],
            mine,
            theirs,
        };
        if search.assign(0) {
            Some(search.image)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> String {
        let file = DigraphFile {
            n: self.n,
            edges: self.edges(),
        };
        serde_json::to_string_pretty(&file).expect("digraph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Digraph> {
        let file: DigraphFile = serde_json::from_str(text)?;
        let edges: Vec<(usize, usize)> = file.edges;
        Digraph::from_edges(file.n, &edges)
    }
}

/// Backtracking state for [`Digraph::is_isomorphic`].
struct IsoSearch<'a> {
    source: &'a Digraph,
    target: &'a Digraph,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    mine: Vec<(usize, usize)>,
    theirs: Vec<(usize, usize)>,
}

impl IsoSearch<'_> {
    fn assign(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        'candidates: for y in 0..self.target.n {
            if self.used[y] || self.mine[x] != self.theirs[y] {
                continue;
            }
            for &px in &self.order[..depth] {
                if self.source.pair_type(x, px).unwrap()
                    != self.target.pair_type(y, self.image[px]).unwrap()
                {
                    continue 'candidates;
                }
            }
            self.image[x] = y;
            self.used[y] = true;
            if self.assign(depth + 1) {
                return true;
            }
            self.image[x] = usize::MAX;
            self.used[y] = false;
        }
        false
    }
}

/// On-disk digraph format: `{"n": int, "edges": [[u, v], ...]}` where
/// `[u, v]` is the directed edge u→v.
#[derive(Serialize, Deserialize)]
struct DigraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// An undirected graph on vertices `0..n`, used for the edge-or-not view of a
/// digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![false; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn complete(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![true; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, x: usize, y: usize) -> Result<bool> {
        if x >= self.n || y >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: x.max(y),
                n: self.n,
            });
        }
        if x == y {
            return Err(Error::RepeatedVertex);
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        Ok(self.adj[pair_index(self.n, a, b)])
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|b| **b).count()
    }
}
