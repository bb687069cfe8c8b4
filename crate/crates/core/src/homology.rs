//! Homology: bigraded `F2` dimensions of the Khovanov complex, and graded
//! `F2[H]`-module decompositions of the Bar-Natan complex and its two
//! basepoint-reduced pieces.
//!
//! Bar-Natan reduction works on [`MonomialMatrix`] blocks. Between
//! q-homogeneous bases every nonzero entry of `d + Hh` is `H^k` with
//! `k = (q_target - q_source) / 2`, so entries are stored as bits and their
//! `H`-power (the *level*) is read off the gradings. Pivoting on an entry that
//! is minimal in its row and column is then an ordinary cancellation, and the
//! pair contributes `F2[H]/(H^level)` when `level > 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{Bigrading, BnComplex, ChainBN, Labeling};
use crate::matrix::MatrixF2;
use crate::poly::Laurent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("d_{i} d_{prev} != 0 at q = {q}; the complex is not a complex", prev = i - 1)]
    NotComposable { i: i32, q: i32 },
    #[error("entry {coeff} from {from} to {to} is not a homogeneous monomial")]
    NonMonomial {
        from: String,
        to: String,
        coeff: String,
    },
    #[error("pivot ({source_index}, {target_index}) in degree {i} is not q-homogeneous")]
    NonHomogeneous {
        i: i32,
        source_index: usize,
        target_index: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    Kh,
    Bn,
    ReducedX,
    Reduced1,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::Kh, Theory::Bn, Theory::ReducedX, Theory::Reduced1];

    pub fn name(&self) -> &'static str {
        match self {
            Theory::Kh => "kh",
            Theory::Bn => "bn",
            Theory::ReducedX => "reduced-x",
            Theory::Reduced1 => "reduced-1",
        }
    }

    pub fn from_name(name: &str) -> Option<Theory> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }
}

/// Order in which the Bar-Natan reducer picks pivots. Both produce the same
/// module; comparing them guards the reduction itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    /// Cancel every unit entry first, then `H`, then `H^2`, ...
    #[default]
    UnitsFirst,
    /// Take the first nonzero entry and walk to one minimal in its row and
    /// column; no separate unit pass.
    LocalMinimum,
}

/// A bigraded homology report.
///
/// For `Kh`, `dims` holds the `F2` dimensions and `free`/`torsion` are empty.
/// For the Bar-Natan theories, `free` lists one `(i, q)` per `F2[H]` summand
/// (the generator's own grading), `torsion` one `(i, q, k)` per
/// `F2[H]/(H^k)` summand generated in bidegree `(i, q)`, and `dims` is the
/// `F2` count obtained by setting `H = 0` (each torsion summand contributes at
/// `(i, q)` and at `(i - 1, q - 2k)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    pub theory: Theory,
    pub dims: BTreeMap<(i32, i32), usize>,
    pub free: Vec<(i32, i32)>,
    pub torsion: Vec<(i32, i32, u32)>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    theory: &'a str,
    diagram: &'a str,
    free: Vec<JsonFree>,
    torsion: Vec<JsonTorsion>,
    dims: Vec<JsonDim>,
}

#[derive(Serialize)]
struct JsonFree {
    i: i32,
    q: i32,
}

#[derive(Serialize)]
struct JsonTorsion {
    i: i32,
    q: i32,
    k: u32,
}

#[derive(Serialize)]
struct JsonDim {
    i: i32,
    q: i32,
    d: usize,
}

impl GradedModule {
    fn from_dims(theory: Theory, dims: BTreeMap<(i32, i32), usize>) -> Self {
        Self {
            theory,
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
            free: Vec::new(),
            torsion: Vec::new(),
        }
    }

    fn from_summands(
        theory: Theory,
        mut free: Vec<(i32, i32)>,
        mut torsion: Vec<(i32, i32, u32)>,
    ) -> Self {
        free.sort_unstable();
        torsion.sort_unstable();
        let dims = associated_graded_dims(&free, &torsion);
        Self {
            theory,
            dims,
            free,
            torsion,
        }
    }

    pub fn is_bar_natan(&self) -> bool {
        self.theory != Theory::Kh
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dim(&self, i: i32, q: i32) -> usize {
        self.dims.get(&(i, q)).copied().unwrap_or(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    /// Same module data, ignoring which theory produced it.
    pub fn same_module(&self, other: &GradedModule) -> bool {
        self.dims == other.dims && self.free == other.free && self.torsion == other.torsion
    }

    /// Shifts every quantum grading by `delta`.
    pub fn q_shifted(&self, delta: i32) -> GradedModule {
        GradedModule {
            theory: self.theory,
            dims: self
                .dims
                .iter()
                .map(|(&(i, q), &d)| ((i, q + delta), d))
                .collect(),
            free: self.free.iter().map(|&(i, q)| (i, q + delta)).collect(),
            torsion: self
                .torsion
                .iter()
                .map(|&(i, q, k)| (i, q + delta, k))
                .collect(),
        }
    }

    /// Multiset union of summands (and sum of dimensions).
    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut dims = self.dims.clone();
        for (&g, &d) in &other.dims {
            *dims.entry(g).or_default() += d;
        }
        let mut free = [self.free.as_slice(), other.free.as_slice()].concat();
        let mut torsion = [self.torsion.as_slice(), other.torsion.as_slice()].concat();
        free.sort_unstable();
        torsion.sort_unstable();
        GradedModule {
            theory: self.theory,
            dims,
            free,
            torsion,
        }
    }

    /// `sum (-1)^i q^q dim` over `dims`.
    pub fn euler_characteristic(&self) -> Laurent {
        Laurent::from_terms(self.dims.iter().map(|(&(i, q), &d)| {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            (q, sign * d as i64)
        }))
    }

    /// Stable JSON: `{theory, diagram, free, torsion, dims}`.
    pub fn to_json(&self, diagram: &str) -> String {
        let report = JsonReport {
            theory: self.theory.name(),
            diagram,
            free: self.free.iter().map(|&(i, q)| JsonFree { i, q }).collect(),
            torsion: self
                .torsion
                .iter()
                .map(|&(i, q, k)| JsonTorsion { i, q, k })
                .collect(),
            dims: self
                .dims
                .iter()
                .map(|(&(i, q), &d)| JsonDim { i, q, d })
                .collect(),
        };
        serde_json::to_string(&report).expect("report serializes")
    }

    /// Aligned text table, rows `i`, columns `q`. Khovanov cells hold
    /// dimensions; Bar-Natan cells list `F` (free, `F^r` for rank r) and
    /// `Tk` (one `F2[H]/(H^k)` each), joined by `+`.
    pub fn to_table(&self) -> String {
        let mut cells: BTreeMap<(i32, i32), String> = BTreeMap::new();
        if self.is_bar_natan() {
            let mut free: BTreeMap<(i32, i32), usize> = BTreeMap::new();
            for &g in &self.free {
                *free.entry(g).or_default() += 1;
            }
            let mut tors: BTreeMap<(i32, i32), Vec<u32>> = BTreeMap::new();
            for &(i, q, k) in &self.torsion {
                tors.entry((i, q)).or_default().push(k);
            }
            let keys: BTreeSet<_> = free.keys().chain(tors.keys()).copied().collect();
            for g in keys {
                let mut parts = Vec::new();
                match free.get(&g) {
                    Some(1) => parts.push("F".to_string()),
                    Some(&r) => parts.push(format!("F^{r}")),
                    None => {}
                }
                for k in tors.get(&g).into_iter().flatten() {
                    parts.push(format!("T{k}"));
                }
                cells.insert(g, parts.join("+"));
            }
        } else {
            for (&g, &d) in &self.dims {
                cells.insert(g, d.to_string());
            }
        }

        let mut out = String::new();
        let _ = writeln!(out, "theory: {}", self.theory.name());
        if cells.is_empty() {
            out.push_str("(zero)\n");
            return out;
        }
        let is: BTreeSet<i32> = cells.keys().map(|g| g.0).collect();
        let qs: BTreeSet<i32> = cells.keys().map(|g| g.1).collect();
        let width = cells
            .values()
            .map(String::len)
            .chain(qs.iter().map(|q| format!("q={q}").len()))
            .max()
            .unwrap_or(1);
        let label_w = is.iter().map(|i| format!("i={i}").len()).max().unwrap_or(3);
        let _ = write!(out, "{:label_w$}", "");
        for q in &qs {
            let _ = write!(out, " {:>width$}", format!("q={q}"));
        }
        out.push('\n');
        for &i in &is {
            let _ = write!(out, "{:<label_w$}", format!("i={i}"));
            for &q in &qs {
                let cell = cells.get(&(i, q)).map_or(".", String::as_str);
                let _ = write!(out, " {cell:>width$}");
            }
            out.push('\n');
        }
        if self.is_bar_natan() {
            let _ = writeln!(
                out,
                "free rank {}, torsion summands {}, F2 total {}",
                self.free.len(),
                self.torsion.len(),
                self.total_dim()
            );
        } else {
            let _ = writeln!(out, "F2 total {}", self.total_dim());
        }
        out
    }
}

/// `F2` dimensions after setting `H = 0`: free `(i, q)` contributes once,
/// torsion `(i, q, k)` at `(i, q)` and `(i - 1, q - 2k)`.
pub fn associated_graded_dims(
    free: &[(i32, i32)],
    torsion: &[(i32, i32, u32)],
) -> BTreeMap<(i32, i32), usize> {
    let mut dims = BTreeMap::new();
    for &g in free {
        *dims.entry(g).or_default() += 1;
    }
    for &(i, q, k) in torsion {
        *dims.entry((i, q)).or_default() += 1;
        *dims.entry((i - 1, q - 2 * k as i32)).or_default() += 1;
    }
    dims
}

/// `dim ker(next) - rank(prev)` for `prev: C_{i-1} -> C_i`,
/// `next: C_i -> C_{i+1}`.
pub fn homology_f2(prev: &MatrixF2, next: &MatrixF2) -> Result<usize, HomologyError> {
    assert_eq!(
        prev.rows(),
        next.cols(),
        "matrices do not share a middle space"
    );
    if !next.mul(prev).is_zero() {
        return Err(HomologyError::NotComposable { i: 0, q: 0 });
    }
    Ok(next.cols() - next.rank() - prev.rank())
}

/// Khovanov homology over `F2`, one q-slice at a time.
pub fn khovanov(cx: &BnComplex) -> Result<GradedModule, HomologyError> {
    // (q, i) -> basis of that slice, with each labeling's position.
    let mut slices: BTreeMap<(i32, i32), Vec<Labeling>> = BTreeMap::new();
    for l in cx.basis() {
        let g = cx.grading(&l);
        slices.entry((g.q, g.i)).or_default().push(l);
    }
    let index: BTreeMap<Labeling, usize> = slices
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(k, l)| (*l, k)))
        .collect();
    let matrix = |q: i32, i: i32| -> MatrixF2 {
        let empty = Vec::new();
        let src = slices.get(&(q, i)).unwrap_or(&empty);
        let tgt_len = slices.get(&(q, i + 1)).map_or(0, Vec::len);
        let mut m = MatrixF2::zeros(tgt_len, src.len());
        for (c, l) in src.iter().enumerate() {
            for (t, _) in cx.apply_d(&ChainBN::basis(*l)).iter() {
                m.toggle(index[t], c);
            }
        }
        m
    };

    let mut dims = BTreeMap::new();
    for &(q, i) in slices.keys() {
        let prev = matrix(q, i - 1);
        let next = matrix(q, i);
        let d = homology_f2(&prev, &next).map_err(|_| HomologyError::NotComposable { i, q })?;
        dims.insert((i, q), d);
    }
    Ok(GradedModule::from_dims(Theory::Kh, dims))
}

/// The block `d_i : C_i -> C_{i+1}` of a Bar-Natan-type differential between
/// q-homogeneous bases. Entries are bits; the `H`-power of entry
/// `(row, col)` is `(row_q - col_q) / 2`.
#[derive(Debug, Clone, Default)]
pub struct MonomialMatrix {
    pub col_q: Vec<i32>,
    pub row_q: Vec<i32>,
    cols: Vec<BTreeSet<usize>>,
    rows: Vec<BTreeSet<usize>>,
}

impl MonomialMatrix {
    pub fn new(col_q: Vec<i32>, row_q: Vec<i32>) -> Self {
        Self {
            cols: vec![BTreeSet::new(); col_q.len()],
            rows: vec![BTreeSet::new(); row_q.len()],
            col_q,
            row_q,
        }
    }

    pub fn toggle(&mut self, row: usize, col: usize) {
        if !self.cols[col].insert(row) {
            self.cols[col].remove(&row);
        }
        if !self.rows[row].insert(col) {
            self.rows[row].remove(&col);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cols[col].contains(&row)
    }

    /// `H`-power of a (possibly absent) entry, or `None` if the gradings do
    /// not allow a monomial there.
    pub fn level(&self, row: usize, col: usize) -> Option<u32> {
        let gap = self.row_q[row] - self.col_q[col];
        (gap >= 0 && gap % 2 == 0).then_some(gap as u32 / 2)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeSet::len).sum()
    }

    fn clear_col_and_row(&mut self, row: usize, col: usize) {
        for r in std::mem::take(&mut self.cols[col]) {
            self.rows[r].remove(&col);
        }
        for c in std::mem::take(&mut self.rows[row]) {
            self.cols[c].remove(&row);
        }
    }
}

/// A chain complex of free graded `F2[H]`-modules, as consecutive
/// [`MonomialMatrix`] blocks over homogeneous generators.
#[derive(Debug, Clone)]
pub struct MonomialComplex {
    /// Lowest homological degree.
    pub i_min: i32,
    /// Generators per degree: labeling and quantum grading.
    pub gens: Vec<Vec<(Labeling, i32)>>,
    /// `blocks[k]` maps degree `i_min + k` to `i_min + k + 1`.
    pub blocks: Vec<MonomialMatrix>,
}

impl MonomialComplex {
    /// Assembles the Bar-Natan complex (`Bn`), the subcomplex with basepoint
    /// labelled `x` (`ReducedX`), or the quotient with basepoint labelled `1`
    /// (`Reduced1`).
    pub fn assemble(cx: &BnComplex, theory: Theory) -> Result<Self, HomologyError> {
        let keep = |l: &Labeling| match theory {
            Theory::Kh | Theory::Bn => true,
            Theory::ReducedX => cx.basepoint_is_x(l),
            Theory::Reduced1 => cx.in_c1(l),
        };
        let mut by_degree: BTreeMap<i32, Vec<(Labeling, i32)>> = BTreeMap::new();
        for l in cx.basis().filter(|l| keep(l)) {
            let g = cx.grading(&l);
            by_degree.entry(g.i).or_default().push((l, g.q));
        }
        let (i_min, i_max) = match (by_degree.keys().next(), by_degree.keys().next_back()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => {
                return Ok(Self {
                    i_min: 0,
                    gens: Vec::new(),
                    blocks: Vec::new(),
                })
            }
        };
        let gens: Vec<Vec<(Labeling, i32)>> = (i_min..=i_max)
            .map(|i| by_degree.remove(&i).unwrap_or_default())
            .collect();
        let index: BTreeMap<Labeling, usize> = gens
            .iter()
            .flat_map(|v| v.iter().enumerate().map(|(k, (l, _))| (*l, k)))
            .collect();

        let mut blocks = Vec::new();
        for k in 0..gens.len().saturating_sub(1) {
            let (src, tgt) = (&gens[k], &gens[k + 1]);
            let mut m = MonomialMatrix::new(
                src.iter().map(|g| g.1).collect(),
                tgt.iter().map(|g| g.1).collect(),
            );
            for (c, (l, _)) in src.iter().enumerate() {
                for (t, p) in cx.apply_dbn(&ChainBN::basis(*l)).iter() {
                    if !keep(t) {
                        continue;
                    }
                    let r = index[t];
                    let expected = m.level(r, c);
                    if expected.is_none() || p.as_monomial() != expected {
                        return Err(HomologyError::NonMonomial {
                            from: cx.format_labeling(l),
                            to: cx.format_labeling(t),
                            coeff: p.to_string(),
                        });
                    }
                    m.toggle(r, c);
                }
            }
            blocks.push(m);
        }
        Ok(Self {
            i_min,
            gens,
            blocks,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.gens.iter().map(Vec::len).sum()
    }

    /// Reduces to free and torsion summands.
    pub fn reduce(
        mut self,
        theory: Theory,
        strategy: PivotStrategy,
    ) -> Result<GradedModule, HomologyError> {
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        // Generators of the current degree already cancelled as pivot rows.
        let mut dead_here: BTreeSet<usize> = BTreeSet::new();
        for k in 0..self.gens.len() {
            let i = self.i_min + k as i32;
            let mut pivot_cols = BTreeSet::new();
            let mut pivot_rows = BTreeSet::new();
            if k < self.blocks.len() {
                let m = &mut self.blocks[k];
                for &c in &dead_here {
                    for r in std::mem::take(&mut m.cols[c]) {
                        m.rows[r].remove(&c);
                    }
                }
                for (r, c, level) in eliminate(m, i, strategy)? {
                    pivot_cols.insert(c);
                    pivot_rows.insert(r);
                    if level > 0 {
                        torsion.push((i + 1, m.row_q[r], level));
                    }
                }
            }
            for (c, &(_, q)) in self.gens[k].iter().enumerate() {
                if !dead_here.contains(&c) && !pivot_cols.contains(&c) {
                    free.push((i, q));
                }
            }
            dead_here = pivot_rows;
        }
        Ok(GradedModule::from_summands(theory, free, torsion))
    }
}

/// Gaussian elimination on one block with level-minimal pivots. Returns the
/// pivots as `(row, col, level)`.
fn eliminate(
    m: &mut MonomialMatrix,
    i: i32,
    strategy: PivotStrategy,
) -> Result<Vec<(usize, usize, u32)>, HomologyError> {
    let level = |m: &MonomialMatrix, r: usize, c: usize| {
        m.level(r, c).ok_or(HomologyError::NonHomogeneous {
            i,
            source_index: c,
            target_index: r,
        })
    };
    let mut pivots = Vec::new();
    match strategy {
        PivotStrategy::UnitsFirst => {
            let mut current = 0u32;
            while m.nnz() > 0 {
                let mut progressed = false;
                for c in 0..m.cols.len() {
                    let found = m.cols[c]
                        .iter()
                        .copied()
                        .find(|&r| m.level(r, c) == Some(current));
                    if let Some(r) = found {
                        pivot(m, r, c, i)?;
                        pivots.push((r, c, current));
                        progressed = true;
                    }
                }
                if !progressed {
                    current += 1;
                }
            }
        }
        PivotStrategy::LocalMinimum => {
            while let Some(mut c) = (0..m.cols.len()).find(|&c| !m.cols[c].is_empty()) {
                let min_in_col =
                    |m: &MonomialMatrix, c: usize| -> Result<(usize, u32), HomologyError> {
                        let mut best: Option<(usize, u32)> = None;
                        for &r in &m.cols[c] {
                            let l = level(m, r, c)?;
                            if best.is_none_or(|(_, b)| l < b) {
                                best = Some((r, l));
                            }
                        }
                        Ok(best.expect("nonempty column"))
                    };
                let (mut r, mut lv) = min_in_col(m, c)?;
                loop {
                    let mut lower = None;
                    for &c2 in &m.rows[r] {
                        if level(m, r, c2)? < lv {
                            lower = Some(c2);
                            break;
                        }
                    }
                    match lower {
                        Some(c2) => {
                            c = c2;
                            (r, lv) = min_in_col(m, c)?;
                        }
                        None => break,
                    }
                }
                pivot(m, r, c, i)?;
                pivots.push((r, c, lv));
            }
        }
    }
    Ok(pivots)
}

/// Cancels `(r, c)`: clears the rest of column `c` by adding multiples of row
/// `r`, then drops row `r` and column `c`. The basis changes this implies
/// only touch the two cancelled generators, so neighbouring blocks need no
/// compensation.
fn pivot(m: &mut MonomialMatrix, r: usize, c: usize, i: i32) -> Result<(), HomologyError> {
    let pivot_level = m.level(r, c);
    let others: Vec<usize> = m.cols[c].iter().copied().filter(|&t| t != r).collect();
    let row_r: Vec<usize> = m.rows[r].iter().copied().filter(|&g| g != c).collect();
    for &t in &others {
        if m.level(t, c) < pivot_level {
            return Err(HomologyError::NonHomogeneous {
                i,
                source_index: c,
                target_index: r,
            });
        }
        for &g in &row_r {
            if m.level(t, g).is_none() {
                return Err(HomologyError::NonHomogeneous {
                    i,
                    source_index: g,
                    target_index: t,
                });
            }
            m.toggle(t, g);
        }
    }
    m.clear_col_and_row(r, c);
    Ok(())
}

/// Bar-Natan homology of one of the three `F2[H]` theories.
pub fn bar_natan(
    cx: &BnComplex,
    theory: Theory,
    strategy: PivotStrategy,
) -> Result<GradedModule, HomologyError> {
    assert!(theory != Theory::Kh, "use khovanov() for the F2 theory");
    MonomialComplex::assemble(cx, theory)?.reduce(theory, strategy)
}

/// Any of the four theories, with the default pivot strategy.
pub fn compute(cx: &BnComplex, theory: Theory) -> Result<GradedModule, HomologyError> {
    match theory {
        Theory::Kh => khovanov(cx),
        t => bar_natan(cx, t, PivotStrategy::default()),
    }
}

/// Dimension of `C` in bidegree `g`.
pub fn chain_dims(cx: &BnComplex) -> BTreeMap<Bigrading, usize> {
    let mut dims = BTreeMap::new();
    for l in cx.basis() {
        *dims.entry(cx.grading(&l)).or_default() += 1;
    }
    dims
}
