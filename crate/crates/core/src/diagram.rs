//! Planar-diagram (PD) codes: parsing, validation, crossing signs and the
//! basepoint.
//!
//! A crossing `X(a,b,c,d)` lists its four arcs counterclockwise, starting
//! from the incoming under-strand. The under-strand therefore runs `a -> c`,
//! and the over-strand runs either `d -> b` (a positive crossing) or `b -> d`
//! (a negative crossing).
//!
//! Text format, whitespace separated, `#` starts a line comment:
//!
//! ```text
//! X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)   # unsigned, signs inferred
//! X+(1,1,2,2)                        # explicit sign
//! O                                  # a crossing-free unknotted component
//! @3                                 # basepoint on arc 3
//! ```
//!
//! Free loops receive identifiers `max_arc + 1, max_arc + 2, ...` so that a
//! basepoint may sit on one of them; `O @1` is the crossingless unknot.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("arc identifiers must be positive integers (found 0 in `{0}`)")]
    ZeroArc(String),
    #[error("arc {arc} appears {count} time(s); every arc must appear exactly twice")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error(
        "cannot infer the sign of crossing {index} {crossing}: arcs are not numbered \
         consecutively along its strands; annotate it as X+ or X-"
    )]
    AmbiguousSign { index: usize, crossing: String },
    #[error("crossing {index} {crossing} is annotated {annotated} but its arc numbering says {inferred}")]
    SignConflict {
        index: usize,
        crossing: String,
        annotated: Sign,
        inferred: Sign,
    },
    #[error("basepoint arc {0} is not an arc of the diagram")]
    UnknownBasepoint(u32),
    #[error("more than one basepoint marker")]
    DuplicateBasepoint,
    #[error("the diagram is empty (no crossings and no free loops)")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// One crossing of a PD code, with its sign resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Arc pairs joined by the 0-resolution: `(a,b)` and `(c,d)`.
    pub fn zero_pairs(&self) -> [(u32, u32); 2] {
        let [a, b, c, d] = self.arcs;
        [(a, b), (c, d)]
    }

    /// Arc pairs joined by the 1-resolution: `(a,d)` and `(b,c)`.
    pub fn one_pairs(&self) -> [(u32, u32); 2] {
        let [a, b, c, d] = self.arcs;
        [(a, d), (b, c)]
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X{}({a},{b},{c},{d})", self.sign)
    }
}

/// A crossing as written in the input, before sign inference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawCrossing {
    pub arcs: [u32; 4],
    pub sign: Option<Sign>,
}

impl fmt::Display for RawCrossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            Some(s) => write!(f, "X{s}({a},{b},{c},{d})"),
            None => write!(f, "X({a},{b},{c},{d})"),
        }
    }
}

/// An oriented link diagram with every crossing signed.
///
/// Crossings are sorted by their arc quadruple at construction; the position
/// in [`LinkDiagram::crossings`] is the crossing's index in the cube of
/// resolutions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    basepoint: u32,
}

impl LinkDiagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn n_plus(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| c.sign == Sign::Positive)
            .count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossing_count() - self.n_plus()
    }

    /// The arc carrying the basepoint (possibly a free-loop identifier).
    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    /// Largest arc identifier used by a crossing, 0 when there are none.
    pub fn max_crossing_arc(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|c| c.arcs)
            .max()
            .unwrap_or(0)
    }

    /// Identifiers assigned to the free loops.
    pub fn free_loop_ids(&self) -> impl Iterator<Item = u32> + '_ {
        let base = self.max_crossing_arc();
        (1..=self.free_loops as u32).map(move |i| base + i)
    }

    /// Every arc identifier, crossing arcs first then free loops, ascending.
    pub fn arc_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.crossings.iter().flat_map(|c| c.arcs).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.extend(self.free_loop_ids());
        ids
    }

    /// Returns a copy with the basepoint moved to `arc`.
    pub fn with_basepoint(&self, arc: u32) -> Result<Self, DiagramError> {
        if !self.arc_ids().contains(&arc) {
            return Err(DiagramError::UnknownBasepoint(arc));
        }
        Ok(Self {
            basepoint: arc,
            ..self.clone()
        })
    }

    /// Builds a validated diagram from raw crossings, inferring missing signs.
    pub fn from_parts(
        crossings: Vec<RawCrossing>,
        free_loops: usize,
        basepoint: Option<u32>,
    ) -> Result<Self, DiagramError> {
        if crossings.is_empty() && free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &crossings {
            for &arc in &c.arcs {
                *counts.entry(arc).or_default() += 1;
            }
        }
        if let Some((&arc, &count)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(DiagramError::ArcMultiplicity { arc, count });
        }

        let mut crossings = crossings;
        crossings.sort();
        let crossings = infer_signs(&crossings)?;

        let max_arc = counts.keys().next_back().copied().unwrap_or(0);
        let is_arc =
            |a: u32| counts.contains_key(&a) || (a > max_arc && a <= max_arc + free_loops as u32);
        let basepoint = match basepoint {
            Some(a) if is_arc(a) => a,
            Some(a) => return Err(DiagramError::UnknownBasepoint(a)),
            None => counts.keys().next().copied().unwrap_or(max_arc + 1),
        };
        Ok(Self {
            crossings,
            free_loops,
            basepoint,
        })
    }

    /// Re-runs sign inference on the signed crossings; annotations are kept
    /// and cross-checked, so the result equals `self` for any valid diagram.
    pub fn infer_signs(&self) -> Result<Self, DiagramError> {
        let raw: Vec<RawCrossing> = self
            .crossings
            .iter()
            .map(|c| RawCrossing {
                arcs: c.arcs,
                sign: Some(c.sign),
            })
            .collect();
        Ok(Self {
            crossings: infer_signs(&raw)?,
            ..self.clone()
        })
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                f.write_str(" ")
            }
        };
        for c in &self.crossings {
            sep(f)?;
            write!(f, "{c}")?;
        }
        for _ in 0..self.free_loops {
            sep(f)?;
            f.write_str("O")?;
        }
        sep(f)?;
        write!(f, "@{}", self.basepoint)
    }
}

impl FromStr for LinkDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Parses PD text into a validated, fully signed diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut free_loops = 0;
    let mut basepoint = None;

    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for token in Tokens::new(line) {
            match token? {
                Token::Crossing(c) => crossings.push(c),
                Token::Loop => free_loops += 1,
                Token::Basepoint(arc) => {
                    if basepoint.replace(arc).is_some() {
                        return Err(DiagramError::DuplicateBasepoint);
                    }
                }
            }
        }
    }
    LinkDiagram::from_parts(crossings, free_loops, basepoint)
}

enum Token {
    Crossing(RawCrossing),
    Loop,
    Basepoint(u32),
}

/// Splits a comment-free line into tokens. Whitespace is allowed inside the
/// parentheses of a crossing.
struct Tokens<'a> {
    rest: &'a str,
}

impl<'a> Tokens<'a> {
    fn new(line: &'a str) -> Self {
        Self { rest: line }
    }

    fn next_token(&mut self) -> Option<&'a str> {
        let s = self.rest.trim_start();
        if s.is_empty() {
            self.rest = s;
            return None;
        }
        let end = if s.starts_with('X') {
            s.find(')').map_or(s.len(), |i| i + 1)
        } else {
            s.find(char::is_whitespace).unwrap_or(s.len())
        };
        let (tok, rest) = s.split_at(end);
        self.rest = rest;
        Some(tok)
    }
}

impl Iterator for Tokens<'_> {
    type Item = Result<Token, DiagramError>;

    fn next(&mut self) -> Option<Self::Item> {
        let tok = self.next_token()?;
        Some(parse_token(tok))
    }
}

fn parse_arc(s: &str, tok: &str) -> Result<u32, DiagramError> {
    let v: u32 = s
        .trim()
        .parse()
        .map_err(|_| DiagramError::MalformedToken(tok.to_string()))?;
    if v == 0 {
        return Err(DiagramError::ZeroArc(tok.to_string()));
    }
    Ok(v)
}

fn parse_token(tok: &str) -> Result<Token, DiagramError> {
    let malformed = || DiagramError::MalformedToken(tok.to_string());
    if tok == "O" {
        return Ok(Token::Loop);
    }
    if let Some(arc) = tok.strip_prefix('@') {
        return parse_arc(arc, tok).map(Token::Basepoint);
    }
    let body = tok.strip_prefix('X').ok_or_else(malformed)?;
    let (sign, body) = match body.as_bytes().first() {
        Some(b'+') => (Some(Sign::Positive), &body[1..]),
        Some(b'-') => (Some(Sign::Negative), &body[1..]),
        _ => (None, body),
    };
    let inner = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(malformed)?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 4 {
        return Err(malformed());
    }
    let mut arcs = [0u32; 4];
    for (slot, part) in arcs.iter_mut().zip(&parts) {
        *slot = parse_arc(part, tok)?;
    }
    Ok(Token::Crossing(RawCrossing { arcs, sign }))
}

/// Assigns signs from the arc numbering and cross-checks explicit ones.
///
/// Components are the classes of arcs joined by strands passing through
/// crossings (`a`–`c` and `b`–`d`). When a component's arcs form a contiguous
/// range of at least three identifiers numbered along the orientation, the
/// successor of an arc is the next identifier (wrapping around). A crossing
/// is positive when `b` follows `d` and negative when `d` follows `b`.
pub fn infer_signs(crossings: &[RawCrossing]) -> Result<Vec<Crossing>, DiagramError> {
    let successor = Successors::new(crossings);
    crossings
        .iter()
        .enumerate()
        .map(|(index, raw)| {
            let inferred = successor.sign_of(raw.arcs);
            let sign = match (raw.sign, inferred) {
                (Some(s), Some(t)) if s != t => {
                    return Err(DiagramError::SignConflict {
                        index,
                        crossing: raw.to_string(),
                        annotated: s,
                        inferred: t,
                    })
                }
                (Some(s), _) | (None, Some(s)) => s,
                (None, None) => {
                    return Err(DiagramError::AmbiguousSign {
                        index,
                        crossing: raw.to_string(),
                    })
                }
            };
            Ok(Crossing {
                arcs: raw.arcs,
                sign,
            })
        })
        .collect()
}

struct Successors {
    /// Arc -> (min, max) of its component when the component is a contiguous
    /// range of at least three arcs.
    ranges: BTreeMap<u32, (u32, u32)>,
}

impl Successors {
    fn new(crossings: &[RawCrossing]) -> Self {
        let ids: Vec<u32> = {
            let mut v: Vec<u32> = crossings.iter().flat_map(|c| c.arcs).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let index_of = |a: u32| ids.binary_search(&a).expect("arc id");
        let mut uf = crate::cube::UnionFind::new(ids.len());
        for c in crossings {
            let [a, b, cc, d] = c.arcs;
            uf.union(index_of(a), index_of(cc));
            uf.union(index_of(b), index_of(d));
        }
        let mut members: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (i, &a) in ids.iter().enumerate() {
            members.entry(uf.find(i)).or_default().push(a);
        }
        let mut ranges = BTreeMap::new();
        for arcs in members.values() {
            let (lo, hi) = (arcs[0], arcs[arcs.len() - 1]);
            if arcs.len() >= 3 && (hi - lo) as usize + 1 == arcs.len() {
                for &a in arcs {
                    ranges.insert(a, (lo, hi));
                }
            }
        }
        Self { ranges }
    }

    fn next(&self, arc: u32) -> Option<u32> {
        let &(lo, hi) = self.ranges.get(&arc)?;
        Some(if arc == hi { lo } else { arc + 1 })
    }

    fn sign_of(&self, [a, b, c, d]: [u32; 4]) -> Option<Sign> {
        if self.next(a)? != c {
            return None;
        }
        let d_to_b = self.next(d)? == b;
        let b_to_d = self.next(b)? == d;
        match (d_to_b, b_to_d) {
            (true, false) => Some(Sign::Positive),
            (false, true) => Some(Sign::Negative),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_annotated_kink() {
        let d = parse_pd("X+(1,1,2,2)").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!((d.n_plus(), d.n_minus()), (1, 0));
        assert_eq!(d.basepoint(), 1);
    }

    #[test]
    fn crossingless_unknot() {
        let d = parse_pd("O @1").unwrap();
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.basepoint(), 1);
        assert_eq!(parse_pd("O").unwrap().basepoint(), 1);
    }

    #[test]
    fn left_trefoil_is_all_negative() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!((d.n_plus(), d.n_minus()), (0, 3));
    }

    #[test]
    fn figure_eight_has_two_of_each() {
        let d = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        assert_eq!((d.n_plus(), d.n_minus()), (2, 2));
    }

    #[test]
    fn explicit_annotation_wins_without_numbering() {
        let d = parse_pd("X+(5,5,6,6)").unwrap();
        assert_eq!(d.crossings()[0].sign, Sign::Positive);
    }

    #[test]
    fn symmetric_kink_demands_annotation() {
        let err = parse_pd("X(1,2,2,1)").unwrap_err();
        assert!(matches!(err, DiagramError::AmbiguousSign { index: 0, .. }));
        assert!(err.to_string().contains("X+ or X-"));
    }

    #[test]
    fn conflicting_annotation_is_rejected() {
        let err = parse_pd("X+(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap_err();
        assert!(matches!(err, DiagramError::SignConflict { .. }));
    }

    #[test]
    fn arc_multiplicity_is_enforced() {
        assert_eq!(
            parse_pd("X+(1,1,2,3)").unwrap_err(),
            DiagramError::ArcMultiplicity { arc: 2, count: 1 }
        );
        assert_eq!(
            parse_pd("X+(1,1,1,2) X+(2,3,3,2)").unwrap_err(),
            DiagramError::ArcMultiplicity { arc: 1, count: 3 }
        );
    }

    #[test]
    fn malformed_tokens() {
        for bad in [
            "X(1,2,3)",
            "Y(1,1,2,2)",
            "X+(1,1,2,a)",
            "@x",
            "X*(1,1,2,2)",
            "OO",
        ] {
            assert!(
                matches!(parse_pd(bad), Err(DiagramError::MalformedToken(_))),
                "{bad}"
            );
        }
        assert!(matches!(
            parse_pd("X+(0,0,2,2)"),
            Err(DiagramError::ZeroArc(_))
        ));
        assert_eq!(parse_pd("  # nothing\n").unwrap_err(), DiagramError::Empty);
    }

    #[test]
    fn basepoint_handling() {
        let d = parse_pd("X+(1,1,2,2) O @3").unwrap();
        assert_eq!(d.basepoint(), 3);
        assert_eq!(d.free_loop_ids().collect::<Vec<_>>(), vec![3]);
        assert_eq!(
            parse_pd("X+(1,1,2,2) @4").unwrap_err(),
            DiagramError::UnknownBasepoint(4)
        );
        assert_eq!(
            parse_pd("O @1 @1").unwrap_err(),
            DiagramError::DuplicateBasepoint
        );
        assert_eq!(d.with_basepoint(2).unwrap().basepoint(), 2);
    }

    #[test]
    fn comments_and_spacing() {
        let d = parse_pd("# hopf\nX-( 4, 1, 3, 2 )  # first\nX-(2,3,1,4)\n").unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.to_string(), "X-(2,3,1,4) X-(4,1,3,2) @1");
    }

    #[test]
    fn canonical_serialization() {
        let d = parse_pd("O X(3,6,4,1) X(1,4,2,5) X(5,2,6,3) @2").unwrap();
        assert_eq!(d.to_string(), "X-(1,4,2,5) X-(3,6,4,1) X-(5,2,6,3) O @2");
    }

    fn braid_like_diagram() -> impl Strategy<Value = LinkDiagram> {
        // Unknot and trefoil families with optional extra loops and basepoints.
        let bases = prop_oneof![
            Just("X+(1,1,2,2)"),
            Just("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"),
            Just("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"),
            Just("X-(4,1,3,2) X-(2,3,1,4)"),
        ];
        (bases, 0usize..3, 0u32..12).prop_filter_map("basepoint", |(b, loops, bp)| {
            let mut text = b.to_string();
            for _ in 0..loops {
                text.push_str(" O");
            }
            let d = parse_pd(&text).ok()?;
            d.with_basepoint(bp).ok().or(Some(d))
        })
    }

    proptest! {
        #[test]
        fn serialization_round_trips(d in braid_like_diagram()) {
            let again = parse_pd(&d.to_string()).unwrap();
            prop_assert_eq!(again, d);
        }

        #[test]
        fn sign_inference_is_idempotent(d in braid_like_diagram()) {
            let once = d.infer_signs().unwrap();
            prop_assert_eq!(once.infer_signs().unwrap(), once.clone());
            prop_assert_eq!(once, d);
        }
    }
}
