//! The cube of resolutions: circles of every full resolution and the
//! merge/split type of every edge.
//!
//! Vertices are bit masks: bit `j` of `alpha` selects the resolution of
//! crossing `j`. Circles are found by union-find over arcs, so no geometry is
//! involved; circle indices are ordered by the smallest arc they contain.

use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::LinkDiagram;

pub const DEFAULT_MAX_CROSSINGS: usize = 16;
/// Vertices are `u32` masks.
pub const HARD_MAX_CROSSINGS: usize = 31;
/// Labelings are `u64` masks.
pub const MAX_CIRCLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("diagram has {crossings} crossings, above the limit of {limit} (raise it with --max-crossings)")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("vertex has length {got}, expected {expected}")]
    VertexLength { got: usize, expected: usize },
    #[error("edge from {alpha} along crossing {crossing} requires bit {crossing} to be 0")]
    NotAnOutgoingEdge { alpha: String, crossing: usize },
    #[error("crossing index {crossing} out of range for {n} crossings")]
    CrossingOutOfRange { crossing: usize, n: usize },
    #[error(
        "surgery at crossing {crossing} from vertex {alpha} neither merges nor splits \
         (the PD code is not planar)"
    )]
    DegenerateSurgery { alpha: String, crossing: usize },
    #[error("a resolution has at least {0} circles; at most {MAX_CIRCLES} are supported")]
    TooManyCircles(usize),
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Formats a vertex as a 0/1 string in crossing order.
pub fn alpha_string(alpha: u32, n: usize) -> String {
    (0..n)
        .map(|j| if alpha >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a 0/1 string in crossing order.
pub fn parse_alpha(s: &str) -> Option<u32> {
    if s.len() > HARD_MAX_CROSSINGS {
        return None;
    }
    s.chars()
        .enumerate()
        .try_fold(0u32, |acc, (j, ch)| match ch {
            '0' => Some(acc),
            '1' => Some(acc | 1 << j),
            _ => None,
        })
}

/// Dense arc-slot numbering shared by all resolutions of one diagram.
#[derive(Debug, Clone)]
struct Slots {
    ids: Vec<u32>,
}

impl Slots {
    fn new(diagram: &LinkDiagram) -> Self {
        Self {
            ids: diagram.arc_ids(),
        }
    }

    fn of(&self, arc: u32) -> usize {
        self.ids.binary_search(&arc).expect("arc of diagram")
    }
}

/// One full resolution `D_alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexResolution {
    pub alpha: u32,
    /// Circle index of each arc slot (slots are the diagram's arc ids, sorted).
    circle_of_slot: Vec<u8>,
    /// Smallest arc id of each circle; circles are indexed in this order.
    circle_min_arc: Vec<u32>,
    pub basepoint_circle: usize,
}

impl VertexResolution {
    pub fn circle_count(&self) -> usize {
        self.circle_min_arc.len()
    }

    /// Arc ids of each circle, ascending.
    pub fn circles(&self, diagram: &LinkDiagram) -> Vec<Vec<u32>> {
        let ids = diagram.arc_ids();
        let mut out = vec![Vec::new(); self.circle_count()];
        for (slot, &c) in self.circle_of_slot.iter().enumerate() {
            out[c as usize].push(ids[slot]);
        }
        out
    }

    pub fn smallest_arcs(&self) -> &[u32] {
        &self.circle_min_arc
    }

    fn circle_of(&self, slot: usize) -> usize {
        self.circle_of_slot[slot] as usize
    }
}

/// The local change along an edge of the cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgeryKind {
    /// Two circles of the source fuse into `target`.
    Merge { sources: [usize; 2], target: usize },
    /// One circle of the source divides into `targets`.
    Split { source: usize, targets: [usize; 2] },
}

impl SurgeryKind {
    pub fn name(&self) -> &'static str {
        match self {
            SurgeryKind::Merge { .. } => "merge",
            SurgeryKind::Split { .. } => "split",
        }
    }
}

/// The edge `alpha -> alpha | 1 << crossing`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSurgery {
    pub from: u32,
    pub to: u32,
    pub crossing: usize,
    pub kind: SurgeryKind,
    /// For each circle of the source, its image in the target, or `None` for
    /// the circles taking part in the surgery.
    pub carry: Vec<Option<usize>>,
}

fn check_alpha(diagram: &LinkDiagram, alpha: &[bool]) -> Result<u32, CubeError> {
    let n = diagram.crossing_count();
    if alpha.len() != n {
        return Err(CubeError::VertexLength {
            got: alpha.len(),
            expected: n,
        });
    }
    if n > HARD_MAX_CROSSINGS {
        return Err(CubeError::TooManyCrossings {
            crossings: n,
            limit: HARD_MAX_CROSSINGS,
        });
    }
    Ok(alpha
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &b)| acc | (b as u32) << j))
}

/// Resolves every crossing according to `alpha` (bit `j` for crossing `j`).
pub fn resolve(diagram: &LinkDiagram, alpha: &[bool]) -> Result<VertexResolution, CubeError> {
    let mask = check_alpha(diagram, alpha)?;
    resolve_mask(diagram, &Slots::new(diagram), mask)
}

fn resolve_mask(
    diagram: &LinkDiagram,
    slots: &Slots,
    alpha: u32,
) -> Result<VertexResolution, CubeError> {
    let mut uf = UnionFind::new(slots.ids.len());
    for (j, crossing) in diagram.crossings().iter().enumerate() {
        let pairs = if alpha >> j & 1 == 0 {
            crossing.zero_pairs()
        } else {
            crossing.one_pairs()
        };
        for (x, y) in pairs {
            uf.union(slots.of(x), slots.of(y));
        }
    }
    // Slots are sorted by arc id, so the first slot met in each class is its
    // smallest arc and circles come out in canonical order.
    let mut root_circle = vec![usize::MAX; slots.ids.len()];
    let mut circle_of_slot = Vec::with_capacity(slots.ids.len());
    let mut circle_min_arc = Vec::new();
    for slot in 0..slots.ids.len() {
        let root = uf.find(slot);
        if root_circle[root] == usize::MAX {
            if circle_min_arc.len() == MAX_CIRCLES {
                return Err(CubeError::TooManyCircles(MAX_CIRCLES + 1));
            }
            root_circle[root] = circle_min_arc.len();
            circle_min_arc.push(slots.ids[slot]);
        }
        circle_of_slot.push(root_circle[root] as u8);
    }
    let basepoint_circle = circle_of_slot[slots.of(diagram.basepoint())] as usize;
    Ok(VertexResolution {
        alpha,
        circle_of_slot,
        circle_min_arc,
        basepoint_circle,
    })
}

/// Classifies the edge leaving `alpha` along crossing `j`.
pub fn edge(diagram: &LinkDiagram, alpha: &[bool], j: usize) -> Result<EdgeSurgery, CubeError> {
    let mask = check_alpha(diagram, alpha)?;
    let n = diagram.crossing_count();
    if j >= n {
        return Err(CubeError::CrossingOutOfRange { crossing: j, n });
    }
    if mask >> j & 1 == 1 {
        return Err(CubeError::NotAnOutgoingEdge {
            alpha: alpha_string(mask, n),
            crossing: j,
        });
    }
    let slots = Slots::new(diagram);
    let from = resolve_mask(diagram, &slots, mask)?;
    let to = resolve_mask(diagram, &slots, mask | 1 << j)?;
    surgery(diagram, &slots, &from, &to, j)
}

fn surgery(
    diagram: &LinkDiagram,
    slots: &Slots,
    from: &VertexResolution,
    to: &VertexResolution,
    j: usize,
) -> Result<EdgeSurgery, CubeError> {
    let [a, b, c, _] = diagram.crossings()[j].arcs.map(|x| slots.of(x));
    let degenerate = || CubeError::DegenerateSurgery {
        alpha: alpha_string(from.alpha, diagram.crossing_count()),
        crossing: j,
    };
    let (ca, cc) = (from.circle_of(a), from.circle_of(c));
    let kind = if ca != cc {
        if to.circle_count() + 1 != from.circle_count() {
            return Err(degenerate());
        }
        SurgeryKind::Merge {
            sources: [ca.min(cc), ca.max(cc)],
            target: to.circle_of(a),
        }
    } else {
        let (ta, tb) = (to.circle_of(a), to.circle_of(b));
        if ta == tb || to.circle_count() != from.circle_count() + 1 {
            return Err(degenerate());
        }
        SurgeryKind::Split {
            source: ca,
            targets: [ta.min(tb), ta.max(tb)],
        }
    };
    let touched = |circle: usize| match kind {
        SurgeryKind::Merge { sources, .. } => sources.contains(&circle),
        SurgeryKind::Split { source, .. } => circle == source,
    };
    let carry = from
        .circle_min_arc
        .iter()
        .enumerate()
        .map(|(circle, &arc)| (!touched(circle)).then(|| to.circle_of(slots.of(arc))))
        .collect();
    Ok(EdgeSurgery {
        from: from.alpha,
        to: to.alpha,
        crossing: j,
        kind,
        carry,
    })
}

/// The fully materialized cube: `2^n` vertices and `n * 2^(n-1)` edges.
#[derive(Debug, Clone)]
pub struct Cube {
    n: usize,
    vertices: Vec<VertexResolution>,
    /// Indexed by `alpha * n + j`; `None` where bit `j` of `alpha` is set.
    edges: Vec<Option<EdgeSurgery>>,
    max_circles: usize,
}

impl Cube {
    pub fn build(diagram: &LinkDiagram) -> Result<Self, CubeError> {
        Self::build_with_limit(diagram, DEFAULT_MAX_CROSSINGS)
    }

    pub fn build_with_limit(diagram: &LinkDiagram, limit: usize) -> Result<Self, CubeError> {
        let n = diagram.crossing_count();
        let limit = limit.min(HARD_MAX_CROSSINGS);
        if n > limit {
            return Err(CubeError::TooManyCrossings {
                crossings: n,
                limit,
            });
        }
        let slots = Slots::new(diagram);
        let vertices = (0..1u32 << n)
            .map(|alpha| resolve_mask(diagram, &slots, alpha))
            .collect::<Result<Vec<_>, _>>()?;
        let mut edges = Vec::with_capacity(vertices.len() * n);
        for from in &vertices {
            for j in 0..n {
                edges.push(if from.alpha >> j & 1 == 0 {
                    let to = &vertices[(from.alpha | 1 << j) as usize];
                    Some(surgery(diagram, &slots, from, to, j)?)
                } else {
                    None
                });
            }
        }
        let max_circles = vertices.iter().map(|v| v.circle_count()).max().unwrap_or(0);
        Ok(Self {
            n,
            vertices,
            edges,
            max_circles,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.n
    }

    pub fn vertex(&self, alpha: u32) -> &VertexResolution {
        &self.vertices[alpha as usize]
    }

    pub fn vertices(&self) -> &[VertexResolution] {
        &self.vertices
    }

    pub fn edge(&self, alpha: u32, j: usize) -> Option<&EdgeSurgery> {
        self.edges.get(alpha as usize * self.n + j)?.as_ref()
    }

    /// Outgoing edges of `alpha`, by increasing crossing index.
    pub fn outgoing(&self, alpha: u32) -> impl Iterator<Item = &EdgeSurgery> {
        let start = alpha as usize * self.n;
        self.edges[start..start + self.n].iter().flatten()
    }

    pub fn edges(&self) -> impl Iterator<Item = &EdgeSurgery> {
        self.edges.iter().flatten()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Largest circle count over all resolutions.
    pub fn max_circles(&self) -> usize {
        self.max_circles
    }

    /// One line per vertex (`alpha k basepoint_circle`), then one per edge
    /// (`alpha j kind`).
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "{} {} {}",
                alpha_string(v.alpha, self.n),
                v.circle_count(),
                v.basepoint_circle
            );
        }
        for e in self.edges() {
            let _ = writeln!(
                out,
                "{} {} {}",
                alpha_string(e.from, self.n),
                e.crossing,
                e.kind.name()
            );
        }
        out
    }
}
