//! Mechanical checks of the chain-level identities, the splitting of
//! Bar-Natan homology, Euler characteristic versus the Jones state sum, and
//! invariance on pairs of diagrams.
//!
//! Identities are checked on every basis element; since all maps are
//! `F2[H]`-linear that covers every chain. Failures carry the basis element
//! and both sides of the identity.

use std::fmt;

use serde::Serialize;

use crate::complex::{BnComplex, ChainBN, Labeling};
use crate::cube::{Cube, CubeError};
use crate::homology::{self, GradedModule, HomologyError, Theory};
use crate::matrix::MatrixF2;
use crate::poly::Laurent;

/// Failures kept per report; the count of all failures is still tracked.
pub const MAX_RECORDED_FAILURES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// `d^2 = 0` and `(d + Hh)^2 = 0`.
    DSquared,
    /// `f = [K_0, d]`.
    K0,
    /// `[K_i, h] + [K_{i+1}, d] = 0`.
    Ladder,
    /// `f = [K, d + Hh]`.
    FullHomotopy,
    /// `[iota, d + Hh] = 0`, `f = [I, h]`, and bijectivity of `iota`.
    Iota,
    /// Bar-Natan homology splits as `H(C_x) + H(C_1)`.
    Splitting,
    /// Euler characteristic of `Kh` equals the Jones state sum.
    EulerJones,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::DSquared,
        Check::K0,
        Check::Ladder,
        Check::FullHomotopy,
        Check::Iota,
        Check::Splitting,
        Check::EulerJones,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::DSquared => "dsq",
            Check::K0 => "k0",
            Check::Ladder => "ladder",
            Check::FullHomotopy => "full",
            Check::Iota => "iota",
            Check::Splitting => "split",
            Check::EulerJones => "jones",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One located counterexample. `alpha`/`labels` are `-` for checks that
/// compare whole modules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub alpha: String,
    pub labels: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub diagram: String,
    pub status: Status,
    pub failures: Vec<Failure>,
    /// Number of basis elements or comparisons examined.
    #[serde(skip)]
    pub checked: usize,
    /// Number of failures, including those not recorded.
    #[serde(skip)]
    pub failure_count: usize,
}

impl CheckReport {
    fn new(check: &str, diagram: &str) -> Self {
        Self {
            check: check.to_string(),
            diagram: diagram.to_string(),
            status: Status::Pass,
            failures: Vec::new(),
            checked: 0,
            failure_count: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn fail(&mut self, failure: Failure) {
        self.status = Status::Fail;
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(failure);
        }
    }

    fn fail_at(&mut self, cx: &BnComplex, l: &Labeling, lhs: String, rhs: String) {
        let located = cx.format_labeling(l);
        let (alpha, labels) = located.split_once(':').unwrap_or((&located, ""));
        self.fail(Failure {
            alpha: alpha.to_string(),
            labels: labels.to_string(),
            lhs,
            rhs,
        });
    }

    fn fail_global(&mut self, lhs: String, rhs: String) {
        self.fail(Failure {
            alpha: "-".to_string(),
            labels: "-".to_string(),
            lhs,
            rhs,
        });
    }

    /// Compares two chains at basis element `l`.
    fn expect_eq(&mut self, cx: &BnComplex, l: &Labeling, lhs: &ChainBN, rhs: &ChainBN) {
        if lhs != rhs {
            self.fail_at(cx, l, cx.format_chain(lhs), cx.format_chain(rhs));
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// `PASS dsq trefoil (52 checked)` or `FAIL ... (3 failures, first at ...)`.
    pub fn summary_line(&self) -> String {
        match self.failures.first() {
            None => format!(
                "PASS {} {} ({} checked)",
                self.check, self.diagram, self.checked
            ),
            Some(f) => format!(
                "FAIL {} {} ({} of {} failed; first at {}:{}: {} != {})",
                self.check,
                self.diagram,
                self.failure_count,
                self.checked,
                f.alpha,
                f.labels,
                f.lhs,
                f.rhs
            ),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line())
    }
}

fn diagram_label(cx: &BnComplex) -> String {
    cx.diagram().to_string()
}

fn basis_chain(l: Labeling) -> ChainBN {
    ChainBN::basis(l)
}

/// `d^2 = 0` and `(d + Hh)^2 = 0` on every basis element.
pub fn check_d_squared(cx: &BnComplex) -> CheckReport {
    let mut r = CheckReport::new(Check::DSquared.name(), &diagram_label(cx));
    for l in cx.basis() {
        let b = basis_chain(l);
        r.checked += 1;
        r.expect_eq(cx, &l, &cx.apply_d(&cx.apply_d(&b)), &ChainBN::zero());
        r.expect_eq(cx, &l, &cx.apply_dbn(&cx.apply_dbn(&b)), &ChainBN::zero());
    }
    r
}

/// `[a, b](c) = a(b(c)) + b(a(c))`.
fn commutator(
    a: impl Fn(&ChainBN) -> ChainBN,
    b: impl Fn(&ChainBN) -> ChainBN,
    c: &ChainBN,
) -> ChainBN {
    &a(&b(c)) + &b(&a(c))
}

/// `f = [K_0, d]` on the basis of `C_1`.
pub fn check_k0(cx: &BnComplex) -> CheckReport {
    let mut r = CheckReport::new(Check::K0.name(), &diagram_label(cx));
    for l in cx.basis_c1() {
        let b = basis_chain(l);
        r.checked += 1;
        let lhs = cx.f_extended(&b);
        let rhs = commutator(|c| cx.map_k(0, c), |c| cx.apply_d(c), &b);
        r.expect_eq(cx, &l, &lhs, &rhs);
    }
    r
}

/// `[K_i, h] = [K_{i+1}, d]` for `0 <= i <= i_max` on the basis of `C_1`;
/// `i_max` defaults to the truncation bound of `K`.
pub fn check_ladder(cx: &BnComplex, i_max: Option<usize>) -> CheckReport {
    let mut r = CheckReport::new(Check::Ladder.name(), &diagram_label(cx));
    let i_max = i_max.unwrap_or_else(|| cx.k_bound());
    for l in cx.basis_c1() {
        let b = basis_chain(l);
        for i in 0..=i_max {
            r.checked += 1;
            let lhs = commutator(|c| cx.map_k(i, c), |c| cx.apply_h(c), &b);
            let rhs = commutator(|c| cx.map_k(i + 1, c), |c| cx.apply_d(c), &b);
            if lhs != rhs {
                r.fail_at(
                    cx,
                    &l,
                    format!("[K{i},h]={}", cx.format_chain(&lhs)),
                    format!("[K{},d]={}", i + 1, cx.format_chain(&rhs)),
                );
            }
        }
    }
    r
}

/// `f = [K, d + Hh]` on the basis of `C_1`.
pub fn check_full_homotopy(cx: &BnComplex) -> CheckReport {
    let mut r = CheckReport::new(Check::FullHomotopy.name(), &diagram_label(cx));
    for l in cx.basis_c1() {
        let b = basis_chain(l);
        r.checked += 1;
        let lhs = cx.f_extended(&b);
        let rhs = commutator(|c| cx.map_k_total(c), |c| cx.apply_dbn(c), &b);
        r.expect_eq(cx, &l, &lhs, &rhs);
    }
    r
}

/// `[iota, d + Hh] = 0` and `f = [I, h]` on the basis of `C_1`; every term
/// of `iota` lowers `q` by exactly 2; and `iota` is bijective on each
/// `F2`-piece `(C_1)_{i,q} -> (C_x)_{i,q-2}` of the graded modules.
pub fn check_iota(cx: &BnComplex) -> CheckReport {
    let mut r = CheckReport::new(Check::Iota.name(), &diagram_label(cx));
    for l in cx.basis_c1() {
        let b = basis_chain(l);
        r.checked += 1;
        let chain_map = commutator(|c| cx.iota_extended(c), |c| cx.apply_dbn(c), &b);
        r.expect_eq(cx, &l, &chain_map, &ChainBN::zero());
        let f = cx.f_extended(&b);
        let ih = commutator(|c| cx.i_extended(c), |c| cx.apply_h(c), &b);
        r.expect_eq(cx, &l, &f, &ih);

        let g = cx.grading(&l);
        for (t, p) in cx.iota_extended(&b).iter() {
            for k in p.powers() {
                let tg = cx.term_grading(t, k);
                if tg.i != g.i || tg.q != g.q - 2 {
                    r.fail_at(
                        cx,
                        &l,
                        format!("term {}:{k} at ({},{})", cx.format_labeling(t), tg.i, tg.q),
                        format!("({},{})", g.i, g.q - 2),
                    );
                }
            }
        }
    }
    iota_bijective(cx, &mut r);
    r
}

/// Only the bijectivity part of [`check_iota`].
pub fn check_iota_bijective(cx: &BnComplex) -> CheckReport {
    let mut r = CheckReport::new("iota-bijective", &diagram_label(cx));
    iota_bijective(cx, &mut r);
    r
}

/// Builds the `F2` matrix of `iota` from `(C_1)_{i,q}` to `(C_x)_{i,q-2}`
/// for every `(i, q)` down to the lowest generator grading (below it,
/// multiplication by `H` identifies each piece with the one two steps up).
fn iota_bijective(cx: &BnComplex, r: &mut CheckReport) {
    let c1: Vec<(Labeling, i32, i32)> = cx
        .basis_c1()
        .map(|l| {
            let g = cx.grading(&l);
            (l, g.i, g.q)
        })
        .collect();
    let cx_gens: Vec<(Labeling, i32, i32)> = cx
        .basis_cx()
        .map(|l| {
            let g = cx.grading(&l);
            (l, g.i, g.q)
        })
        .collect();
    let mut degrees: Vec<i32> = c1.iter().map(|g| g.1).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for i in degrees {
        let src: Vec<_> = c1.iter().filter(|g| g.1 == i).collect();
        let tgt: Vec<_> = cx_gens.iter().filter(|g| g.1 == i).collect();
        let q_max = src.iter().map(|g| g.2).max().unwrap_or(0);
        let q_min = src.iter().map(|g| g.2).min().unwrap_or(0);
        let mut q = q_max;
        while q >= q_min {
            // Piece at (i, q): H^m * l with q_l - 2m = q.
            let cols: Vec<(Labeling, u32)> = src
                .iter()
                .filter(|g| g.2 >= q && (g.2 - q) % 2 == 0)
                .map(|g| (g.0, ((g.2 - q) / 2) as u32))
                .collect();
            let qt = q - 2;
            let rows: Vec<(Labeling, u32)> = tgt
                .iter()
                .filter(|g| g.2 >= qt && (g.2 - qt) % 2 == 0)
                .map(|g| (g.0, ((g.2 - qt) / 2) as u32))
                .collect();
            r.checked += 1;
            if cols.len() != rows.len() {
                r.fail_global(
                    format!("dim (C_1)_({i},{q}) = {}", cols.len()),
                    format!("dim (C_x)_({i},{qt}) = {}", rows.len()),
                );
                q -= 2;
                continue;
            }
            let row_index: std::collections::BTreeMap<(Labeling, u32), usize> =
                rows.iter().enumerate().map(|(k, &x)| (x, k)).collect();
            let mut m = MatrixF2::zeros(rows.len(), cols.len());
            for (c, &(l, shift)) in cols.iter().enumerate() {
                for (t, p) in cx.iota_extended(&ChainBN::basis(l)).iter() {
                    for k in p.powers() {
                        if let Some(&row) = row_index.get(&(*t, k + shift)) {
                            m.toggle(row, c);
                        }
                    }
                }
            }
            let rank = m.rank();
            if rank != cols.len() {
                r.fail_global(
                    format!("rank iota on ({i},{q}) = {rank}"),
                    format!("dim = {}", cols.len()),
                );
            }
            q -= 2;
        }
    }
}

fn module_summary(m: &GradedModule) -> String {
    let free: Vec<String> = m.free.iter().map(|(i, q)| format!("({i},{q})")).collect();
    let tors: Vec<String> = m
        .torsion
        .iter()
        .map(|(i, q, k)| format!("({i},{q},{k})"))
        .collect();
    format!("free [{}] torsion [{}]", free.join(" "), tors.join(" "))
}

/// `BN = H(C_x) + H(C_1)` as multisets of free and torsion summands, and
/// `H(C_x) = H(C_1)` shifted by `q - 2`.
pub fn check_splitting(cx: &BnComplex) -> CheckReport {
    let mut r = CheckReport::new(Check::Splitting.name(), &diagram_label(cx));
    let modules = (
        homology::compute(cx, Theory::Bn),
        homology::compute(cx, Theory::ReducedX),
        homology::compute(cx, Theory::Reduced1),
    );
    let (bn, rx, r1) = match modules {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (a, b, c) => {
            let err = [a.err(), b.err(), c.err()].into_iter().flatten().next();
            r.fail_global(
                format!("homology failed: {}", err.expect("one error")),
                "a chain complex".to_string(),
            );
            return r;
        }
    };
    r.checked = 2;
    let sum = rx.direct_sum(&r1);
    if bn.free != sum.free || bn.torsion != sum.torsion {
        r.fail_global(
            format!("BN: {}", module_summary(&bn)),
            format!("H(C_x)+H(C_1): {}", module_summary(&sum)),
        );
    }
    let shifted = r1.q_shifted(-2);
    if rx.free != shifted.free || rx.torsion != shifted.torsion {
        r.fail_global(
            format!("H(C_x): {}", module_summary(&rx)),
            format!("H(C_1){{-2}}: {}", module_summary(&shifted)),
        );
    }
    r
}

/// Unreduced Jones polynomial by the state sum over the cube:
/// `sum_alpha (-1)^(w - n_-) q^(w + n_+ - 2 n_-) (q + q^-1)^k`.
pub fn jones_state_sum(cube: &Cube, n_plus: usize, n_minus: usize) -> Laurent {
    let loop_value = Laurent::from_terms([(-1, 1), (1, 1)]);
    let mut total = Laurent::zero();
    for v in cube.vertices() {
        let w = v.alpha.count_ones() as i32;
        let sign = if (w - n_minus as i32).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let shift = Laurent::term(sign, w + n_plus as i32 - 2 * n_minus as i32);
        total += &(&shift * &loop_value.pow(v.circle_count()));
    }
    total
}

/// Jones polynomial of a diagram, straight from its cube.
pub fn jones_polynomial(diagram: &crate::diagram::LinkDiagram) -> Result<Laurent, CubeError> {
    let cube = Cube::build(diagram)?;
    Ok(jones_state_sum(&cube, diagram.n_plus(), diagram.n_minus()))
}

/// State sum equals the graded Euler characteristic of `Kh`.
pub fn check_euler_jones(cx: &BnComplex) -> CheckReport {
    let mut r = CheckReport::new(Check::EulerJones.name(), &diagram_label(cx));
    let d = cx.diagram();
    let state_sum = jones_state_sum(cx.cube(), d.n_plus(), d.n_minus());
    r.checked = 1;
    match homology::khovanov(cx) {
        Ok(kh) => {
            let chi = kh.euler_characteristic();
            if chi != state_sum {
                r.fail_global(
                    format!("chi(Kh) = {chi}"),
                    format!("state sum = {state_sum}"),
                );
            }
        }
        Err(e) => r.fail_global(format!("homology failed: {e}"), format!("{state_sum}")),
    }
    r
}

/// Runs one check with default parameters.
pub fn run_check(cx: &BnComplex, check: Check) -> CheckReport {
    match check {
        Check::DSquared => check_d_squared(cx),
        Check::K0 => check_k0(cx),
        Check::Ladder => check_ladder(cx, None),
        Check::FullHomotopy => check_full_homotopy(cx),
        Check::Iota => check_iota(cx),
        Check::Splitting => check_splitting(cx),
        Check::EulerJones => check_euler_jones(cx),
    }
}

pub fn run_checks(cx: &BnComplex, checks: &[Check]) -> Vec<CheckReport> {
    checks.iter().map(|&c| run_check(cx, c)).collect()
}

/// Equal `Kh` dimensions and equal Bar-Natan modules for two diagrams.
pub fn check_invariance_pair(a: &BnComplex, b: &BnComplex) -> CheckReport {
    let label = format!("{} vs {}", diagram_label(a), diagram_label(b));
    let mut r = CheckReport::new("invariance", &label);
    for theory in [Theory::Kh, Theory::Bn] {
        r.checked += 1;
        let pair: Result<(GradedModule, GradedModule), HomologyError> =
            homology::compute(a, theory).and_then(|x| Ok((x, homology::compute(b, theory)?)));
        match pair {
            Ok((x, y)) if x.same_module(&y) => {}
            Ok((x, y)) => {
                let show = |m: &GradedModule| match theory {
                    Theory::Kh => format!("{:?}", m.dims),
                    _ => module_summary(m),
                };
                r.fail_global(
                    format!("{}: {}", theory.name(), show(&x)),
                    format!("{}: {}", theory.name(), show(&y)),
                );
            }
            Err(e) => r.fail_global(format!("homology failed: {e}"), "-".to_string()),
        }
    }
    r
}

/// Aggregate JSON: `{"diagram": ..., "reports": [...]}`.
pub fn reports_json(diagram: &str, reports: &[CheckReport]) -> String {
    #[derive(Serialize)]
    struct All<'a> {
        diagram: &'a str,
        passed: bool,
        reports: &'a [CheckReport],
    }
    serde_json::to_string(&All {
        diagram,
        passed: reports.iter().all(CheckReport::passed),
        reports,
    })
    .expect("reports serialize")
}
