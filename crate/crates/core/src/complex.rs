//! Chain-level objects: the labeling basis, the Khovanov differential `d`,
//! the Bar-Natan perturbation `h`, the basepoint split into `C_x` and `C_1`,
//! and the maps `f`, `K_i`, `K`, `I` and `iota` between the two halves.
//!
//! All coefficients live in `F2[H]`; the Khovanov complex is the special
//! case where every coefficient is `1`. Maps from `C_1` to `C_x` are extended
//! by zero on `C_x` when composed with differentials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::AddAssign;

use thiserror::Error;

use crate::cube::{alpha_string, Cube, CubeError, EdgeSurgery, SurgeryKind};
use crate::diagram::LinkDiagram;
use crate::poly::PolyH;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("chain term {0} has its basepoint circle labelled x; expected an element of C_1")]
    NotInC1(String),
    #[error("labeling at vertex {labeling} does not live at the source {from} of the edge")]
    VertexMismatch { labeling: String, from: String },
    #[error("labeling {0} sets labels beyond the circle count of its vertex")]
    InvalidLabeling(String),
}

/// A basis element: a vertex of the cube and a label on each of its circles.
/// Bit `c` of `labels` is 1 when circle `c` is labelled `x`, 0 for `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    pub alpha: u32,
    pub labels: u64,
}

impl Labeling {
    pub fn new(alpha: u32, labels: u64) -> Self {
        Self { alpha, labels }
    }

    pub fn is_x(&self, circle: usize) -> bool {
        self.labels >> circle & 1 == 1
    }

    pub fn x_count(&self) -> u32 {
        self.labels.count_ones()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub i: i32,
    pub q: i32,
}

/// A finitely supported `F2[H]`-combination of labelings. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct ChainBN {
    terms: BTreeMap<Labeling, PolyH>,
}

impl ChainBN {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(l: Labeling) -> Self {
        Self::monomial(l, 0)
    }

    /// `H^k * l`.
    pub fn monomial(l: Labeling, k: u32) -> Self {
        let mut c = Self::zero();
        c.add_term(l, &PolyH::monomial(k));
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &Labeling) -> PolyH {
        self.terms.get(l).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Labeling, &PolyH)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, l: Labeling, coeff: &PolyH) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(l).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&l);
        }
    }

    /// Adds `H^k * other`.
    pub fn add_shifted(&mut self, other: &ChainBN, k: u32) {
        for (l, p) in other.iter() {
            self.add_term(*l, &p.shifted(k));
        }
    }

    /// Multiplies every coefficient by `H^k`.
    pub fn shifted(&self, k: u32) -> Self {
        let mut out = Self::zero();
        out.add_shifted(self, k);
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&Labeling) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| keep(l))
                .map(|(l, p)| (*l, p.clone()))
                .collect(),
        }
    }
}

impl AddAssign<&ChainBN> for ChainBN {
    fn add_assign(&mut self, rhs: &ChainBN) {
        for (l, p) in rhs.iter() {
            self.add_term(*l, p);
        }
    }
}

impl std::ops::Add for &ChainBN {
    type Output = ChainBN;

    fn add(self, rhs: &ChainBN) -> ChainBN {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl FromIterator<(Labeling, PolyH)> for ChainBN {
    fn from_iter<T: IntoIterator<Item = (Labeling, PolyH)>>(iter: T) -> Self {
        let mut out = ChainBN::zero();
        for (l, p) in iter {
            out.add_term(l, &p);
        }
        out
    }
}

impl fmt::Debug for ChainBN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(l, p)| ((l.alpha, l.labels), p)))
            .finish()
    }
}

/// Deliberately wrong map variants, used as negative controls for the
/// verification checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// `Delta(1) = 1 (x) x`, dropping the `x (x) 1` term.
    SplitDropsTerm,
    /// `K_i` relabels the chosen circles to `1` but leaves the basepoint at `1`.
    KKeepsBasepoint,
    /// `K_i` sums over `(i+1)`-multisets of `x` circles instead of subsets.
    KSubsetsWithRepetition,
    /// `iota = I`, without the `H K` correction.
    IotaWithoutH,
}

impl Fault {
    pub const ALL: [Fault; 4] = [
        Fault::SplitDropsTerm,
        Fault::KKeepsBasepoint,
        Fault::KSubsetsWithRepetition,
        Fault::IotaWithoutH,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Fault::SplitDropsTerm => "split-drops-term",
            Fault::KKeepsBasepoint => "k-keeps-basepoint",
            Fault::KSubsetsWithRepetition => "k-with-repetition",
            Fault::IotaWithoutH => "iota-without-h",
        }
    }

    pub fn from_name(name: &str) -> Option<Fault> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// The Bar-Natan complex of a diagram, with its cube and basepoint.
#[derive(Debug, Clone)]
pub struct BnComplex {
    diagram: LinkDiagram,
    cube: Cube,
    fault: Option<Fault>,
}

impl BnComplex {
    pub fn new(diagram: &LinkDiagram) -> Result<Self, CubeError> {
        Ok(Self::from_cube(diagram, Cube::build(diagram)?))
    }

    pub fn with_limit(diagram: &LinkDiagram, max_crossings: usize) -> Result<Self, CubeError> {
        Ok(Self::from_cube(
            diagram,
            Cube::build_with_limit(diagram, max_crossings)?,
        ))
    }

    pub fn from_cube(diagram: &LinkDiagram, cube: Cube) -> Self {
        Self {
            diagram: diagram.clone(),
            cube,
            fault: None,
        }
    }

    /// A copy whose maps carry the given defect.
    pub fn with_fault(&self, fault: Fault) -> Self {
        Self {
            fault: Some(fault),
            ..self.clone()
        }
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn cube(&self) -> &Cube {
        &self.cube
    }

    fn has_fault(&self, fault: Fault) -> bool {
        self.fault == Some(fault)
    }

    /// Highest `i` for which `K_i` can be nonzero.
    pub fn k_bound(&self) -> usize {
        self.cube.max_circles().saturating_sub(1)
    }

    pub fn circle_count(&self, alpha: u32) -> usize {
        self.cube.vertex(alpha).circle_count()
    }

    fn basepoint_bit(&self, alpha: u32) -> u64 {
        1 << self.cube.vertex(alpha).basepoint_circle
    }

    pub fn basepoint_is_x(&self, l: &Labeling) -> bool {
        l.labels & self.basepoint_bit(l.alpha) != 0
    }

    pub fn in_c1(&self, l: &Labeling) -> bool {
        !self.basepoint_is_x(l)
    }

    pub fn check_labeling(&self, l: &Labeling) -> Result<(), ComplexError> {
        let k = self.circle_count(l.alpha);
        if k < 64 && l.labels >> k != 0 {
            return Err(ComplexError::InvalidLabeling(self.format_labeling(l)));
        }
        Ok(())
    }

    /// `(w(alpha) - n_-, gr + i + n_+ - n_-)` with `gr = #1 - #x`.
    pub fn grading(&self, l: &Labeling) -> Bigrading {
        let n_plus = self.diagram.n_plus() as i32;
        let n_minus = self.diagram.n_minus() as i32;
        let i = l.alpha.count_ones() as i32 - n_minus;
        let k = self.circle_count(l.alpha) as i32;
        let gr = k - 2 * l.x_count() as i32;
        Bigrading {
            i,
            q: gr + i + n_plus - n_minus,
        }
    }

    /// Grading of `H^k * l`; `H` has quantum degree -2.
    pub fn term_grading(&self, l: &Labeling, k: u32) -> Bigrading {
        let g = self.grading(l);
        Bigrading {
            i: g.i,
            q: g.q - 2 * k as i32,
        }
    }

    /// Every labeling of every vertex, ordered by `(alpha, labels)`.
    pub fn basis(&self) -> impl Iterator<Item = Labeling> + '_ {
        self.cube.vertices().iter().flat_map(|v| {
            let alpha = v.alpha;
            (0..1u64 << v.circle_count()).map(move |labels| Labeling { alpha, labels })
        })
    }

    /// Basis of `C_1`: basepoint circle labelled `1`.
    pub fn basis_c1(&self) -> impl Iterator<Item = Labeling> + '_ {
        self.basis().filter(|l| self.in_c1(l))
    }

    /// Basis of `C_x`: basepoint circle labelled `x`.
    pub fn basis_cx(&self) -> impl Iterator<Item = Labeling> + '_ {
        self.basis().filter(|l| self.basepoint_is_x(l))
    }

    fn carried(surgery: &EdgeSurgery, labels: u64) -> u64 {
        surgery
            .carry
            .iter()
            .enumerate()
            .filter_map(|(c, t)| t.filter(|_| labels >> c & 1 == 1))
            .fold(0, |acc, t| acc | 1 << t)
    }

    /// Images of a label set under `m`/`Delta` along one edge.
    fn d_images(&self, surgery: &EdgeSurgery, labels: u64, out: &mut Vec<u64>) {
        let base = Self::carried(surgery, labels);
        match surgery.kind {
            SurgeryKind::Merge {
                sources: [a, b],
                target,
            } => match (labels >> a & 1, labels >> b & 1) {
                (0, 0) => out.push(base),
                (1, 1) => {}
                _ => out.push(base | 1 << target),
            },
            SurgeryKind::Split {
                source,
                targets: [t1, t2],
            } => {
                if labels >> source & 1 == 0 {
                    out.push(base | 1 << t2);
                    if !self.has_fault(Fault::SplitDropsTerm) {
                        out.push(base | 1 << t1);
                    }
                } else {
                    out.push(base | 1 << t1 | 1 << t2);
                }
            }
        }
    }

    /// Images under `m'`/`Delta'`: `m'(x,x) = x`, `Delta'(1) = 1 (x) 1`.
    fn h_images(surgery: &EdgeSurgery, labels: u64, out: &mut Vec<u64>) {
        let base = Self::carried(surgery, labels);
        match surgery.kind {
            SurgeryKind::Merge {
                sources: [a, b],
                target,
            } => {
                if labels >> a & 1 == 1 && labels >> b & 1 == 1 {
                    out.push(base | 1 << target);
                }
            }
            SurgeryKind::Split { source, .. } => {
                if labels >> source & 1 == 0 {
                    out.push(base);
                }
            }
        }
    }

    fn check_edge(&self, surgery: &EdgeSurgery, l: &Labeling) -> Result<(), ComplexError> {
        if l.alpha != surgery.from {
            let n = self.cube.crossing_count();
            return Err(ComplexError::VertexMismatch {
                labeling: alpha_string(l.alpha, n),
                from: alpha_string(surgery.from, n),
            });
        }
        self.check_labeling(l)
    }

    /// The Khovanov edge map `d_{alpha,beta}` on one basis element.
    pub fn edge_map_d(&self, surgery: &EdgeSurgery, l: &Labeling) -> Result<ChainBN, ComplexError> {
        self.check_edge(surgery, l)?;
        let mut imgs = Vec::new();
        self.d_images(surgery, l.labels, &mut imgs);
        Ok(imgs
            .into_iter()
            .map(|labels| (Labeling::new(surgery.to, labels), PolyH::one()))
            .collect())
    }

    /// The Bar-Natan edge map `h_{alpha,beta}` on one basis element.
    pub fn edge_map_h(&self, surgery: &EdgeSurgery, l: &Labeling) -> Result<ChainBN, ComplexError> {
        self.check_edge(surgery, l)?;
        let mut imgs = Vec::new();
        Self::h_images(surgery, l.labels, &mut imgs);
        Ok(imgs
            .into_iter()
            .map(|labels| (Labeling::new(surgery.to, labels), PolyH::one()))
            .collect())
    }

    /// Sum of edge maps over outgoing edges, extended `F2[H]`-linearly. `d`
    /// contributes at `H^0`, `h` at `H^1`.
    fn apply_edges(&self, chain: &ChainBN, with_d: bool, with_h: bool) -> ChainBN {
        let mut out = ChainBN::zero();
        let mut imgs = Vec::new();
        for (l, p) in chain.iter() {
            let shifted = with_h.then(|| p.shifted(1));
            for e in self.cube.outgoing(l.alpha) {
                if with_d {
                    imgs.clear();
                    self.d_images(e, l.labels, &mut imgs);
                    for &labels in &imgs {
                        out.add_term(Labeling::new(e.to, labels), p);
                    }
                }
                if let Some(hp) = &shifted {
                    imgs.clear();
                    Self::h_images(e, l.labels, &mut imgs);
                    for &labels in &imgs {
                        out.add_term(Labeling::new(e.to, labels), hp);
                    }
                }
            }
        }
        out
    }

    /// Khovanov differential `d`.
    pub fn apply_d(&self, chain: &ChainBN) -> ChainBN {
        self.apply_edges(chain, true, false)
    }

    /// Bar-Natan perturbation `h` (without the factor `H`).
    pub fn apply_h(&self, chain: &ChainBN) -> ChainBN {
        self.apply_edges(chain, false, true).map_coeffs_down()
    }

    /// Bar-Natan differential `d + H h`.
    pub fn apply_dbn(&self, chain: &ChainBN) -> ChainBN {
        self.apply_edges(chain, true, true)
    }

    /// Splits a chain into its `C_x` and `C_1` parts.
    pub fn reduced_split(&self, chain: &ChainBN) -> (ChainBN, ChainBN) {
        (
            chain.filter(|l| self.basepoint_is_x(l)),
            chain.filter(|l| self.in_c1(l)),
        )
    }

    pub fn x_part(&self, chain: &ChainBN) -> ChainBN {
        chain.filter(|l| self.basepoint_is_x(l))
    }

    pub fn one_part(&self, chain: &ChainBN) -> ChainBN {
        chain.filter(|l| self.in_c1(l))
    }

    /// Differential of the quotient complex `C_1`: `pi_1 (d + H h)`.
    pub fn apply_dbn_c1(&self, chain: &ChainBN) -> ChainBN {
        self.one_part(&self.apply_dbn(chain))
    }

    fn require_c1(&self, chain: &ChainBN) -> Result<(), ComplexError> {
        match chain.iter().find(|(l, _)| self.basepoint_is_x(l)) {
            Some((l, _)) => Err(ComplexError::NotInC1(self.format_labeling(l))),
            None => Ok(()),
        }
    }

    /// `f = pi_x (d + H h)` on `C_1`, zero on `C_x`.
    pub fn f_extended(&self, chain: &ChainBN) -> ChainBN {
        self.x_part(&self.apply_dbn(&self.one_part(chain)))
    }

    /// `f = pi_x (d + H h) : C_1 -> C_x`.
    pub fn map_f(&self, chain: &ChainBN) -> Result<ChainBN, ComplexError> {
        self.require_c1(chain)?;
        Ok(self.f_extended(chain))
    }

    /// `pi_x d`, extended `H`-linearly; agrees with [`Self::map_f`] because `h`
    /// never turns a basepoint `1` into `x`.
    pub fn map_f_unperturbed(&self, chain: &ChainBN) -> Result<ChainBN, ComplexError> {
        self.require_c1(chain)?;
        Ok(self.x_part(&self.apply_d(chain)))
    }

    /// `K_i` on one basis element: the sum over `(i+1)`-subsets `S` of the
    /// `x` circles of the labeling with `S` relabelled `1` and the basepoint
    /// relabelled `x`. Zero when the basepoint is already `x`.
    fn k_basis(&self, i: usize, l: &Labeling, out: &mut ChainBN, coeff: &PolyH) {
        if self.basepoint_is_x(l) {
            return;
        }
        let xs: Vec<usize> = (0..self.circle_count(l.alpha))
            .filter(|&c| l.is_x(c))
            .collect();
        let bp = if self.has_fault(Fault::KKeepsBasepoint) {
            0
        } else {
            self.basepoint_bit(l.alpha)
        };
        let mut emit = |chosen: u64| {
            out.add_term(Labeling::new(l.alpha, (l.labels & !chosen) | bp), coeff);
        };
        if self.has_fault(Fault::KSubsetsWithRepetition) {
            for_each_multiset(&xs, i + 1, &mut emit);
        } else {
            for_each_subset(&xs, i + 1, &mut emit);
        }
    }

    /// `K_i`, zero on `C_x`. Fixes `i` and raises `q` by `2i`.
    pub fn map_k(&self, i: usize, chain: &ChainBN) -> ChainBN {
        let mut out = ChainBN::zero();
        for (l, p) in chain.iter() {
            self.k_basis(i, l, &mut out, p);
        }
        out
    }

    /// `K = K_0 + H K_1 + H^2 K_2 + ...`, truncated at [`Self::k_bound`].
    pub fn map_k_total(&self, chain: &ChainBN) -> ChainBN {
        let mut out = ChainBN::zero();
        for i in 0..=self.k_bound() {
            for (l, p) in chain.iter() {
                self.k_basis(i, l, &mut out, &p.shifted(i as u32));
            }
        }
        out
    }

    /// `I`: relabels the basepoint from `1` to `x`; zero on `C_x`.
    pub fn i_extended(&self, chain: &ChainBN) -> ChainBN {
        chain
            .iter()
            .filter(|(l, _)| self.in_c1(l))
            .map(|(l, p)| {
                (
                    Labeling::new(l.alpha, l.labels | self.basepoint_bit(l.alpha)),
                    p.clone(),
                )
            })
            .collect()
    }

    pub fn map_i(&self, chain: &ChainBN) -> Result<ChainBN, ComplexError> {
        self.require_c1(chain)?;
        Ok(self.i_extended(chain))
    }

    /// `iota = I + H K`; zero on `C_x`.
    pub fn iota_extended(&self, chain: &ChainBN) -> ChainBN {
        let mut out = self.i_extended(chain);
        if !self.has_fault(Fault::IotaWithoutH) {
            out.add_shifted(&self.map_k_total(chain), 1);
        }
        out
    }

    pub fn map_iota(&self, chain: &ChainBN) -> Result<ChainBN, ComplexError> {
        self.require_c1(chain)?;
        Ok(self.iota_extended(chain))
    }

    /// `alpha:labels`, labels as a `1`/`x` string in circle order.
    pub fn format_labeling(&self, l: &Labeling) -> String {
        let k = self.circle_count(l.alpha);
        let labels: String = (0..k).map(|c| if l.is_x(c) { 'x' } else { '1' }).collect();
        format!(
            "{}:{}",
            alpha_string(l.alpha, self.cube.crossing_count()),
            labels
        )
    }

    /// Space-separated `alpha:labels:poly` triples; `0` for the zero chain.
    pub fn format_chain(&self, chain: &ChainBN) -> String {
        if chain.is_zero() {
            return "0".to_string();
        }
        chain
            .iter()
            .map(|(l, p)| format!("{}:{}", self.format_labeling(l), p))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl ChainBN {
    /// Divides every coefficient by `H` (all must be multiples of `H`).
    fn map_coeffs_down(self) -> ChainBN {
        self.terms
            .into_iter()
            .map(|(l, p)| {
                let lowered = PolyH::from_powers(p.powers().map(|k| {
                    debug_assert!(k > 0);
                    k - 1
                }));
                (l, lowered)
            })
            .collect()
    }
}

/// Calls `emit` with the union mask of every `size`-subset of `items`.
fn for_each_subset(items: &[usize], size: usize, emit: &mut impl FnMut(u64)) {
    fn go(items: &[usize], size: usize, acc: u64, emit: &mut impl FnMut(u64)) {
        if size == 0 {
            emit(acc);
            return;
        }
        for (idx, &c) in items.iter().enumerate() {
            if items.len() - idx < size {
                break;
            }
            go(&items[idx + 1..], size - 1, acc | 1 << c, emit);
        }
    }
    go(items, size, 0, emit);
}

/// Like [`for_each_subset`] but over multisets (repetition allowed); each
/// multiset emits the mask of its support.
fn for_each_multiset(items: &[usize], size: usize, emit: &mut impl FnMut(u64)) {
    fn go(items: &[usize], size: usize, acc: u64, emit: &mut impl FnMut(u64)) {
        if size == 0 {
            emit(acc);
            return;
        }
        for (idx, &c) in items.iter().enumerate() {
            go(&items[idx..], size - 1, acc | 1 << c, emit);
        }
    }
    go(items, size, 0, emit);
}
