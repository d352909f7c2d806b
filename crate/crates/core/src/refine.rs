//! Refinements of geometric types.
//!
//! * [`bin_refine`]: every horizontal sub-rectangle becomes a rectangle, which
//!   makes the incidence matrix binary.
//! * [`s_refine`]: cut every rectangle along the stable intervals through all
//!   iterates of a family of periodic codes.
//! * [`u_refine`]: the same construction on the inverse type, inverted back.
//! * [`corner_refine`], [`corner_refine_along`], [`wp_refine`]: compositions of
//!   the two that end with a type having the corner property.
//!
//! Everything here is computed from the combinatorics alone. Cut intervals in
//! the same rectangle are ordered by following both itineraries until they
//! enter different horizontal sub-rectangles and undoing the orientation
//! changes met on the way.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::boundary::{self, lcm, BoundarySets};
use crate::error::{Error, Result};
use crate::shift::{enumerate_orbits, CodeOrbit, IncidenceMatrix, PeriodicCode};
use crate::types::{GeometricType, HLabel, Image, Sign, VLabel};

/// The binary refinement together with its label map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryRefinement {
    pub refined: GeometricType,
    /// `labels[r-1]` is the horizontal label `(i, j)` that became rectangle `r`.
    pub labels: Vec<HLabel>,
}

/// Makes every horizontal sub-rectangle `H^i_j` a rectangle `r(i,j)` of its own.
pub fn bin_refine(t: &GeometricType) -> BinaryRefinement {
    let r = |a: HLabel| t.lex_index(a).expect("label of t");
    let labels: Vec<HLabel> = t.h_labels().collect();
    let mut widths = Vec::with_capacity(labels.len());
    let mut rows = Vec::with_capacity(labels.len());
    for &a in &labels {
        let Image { target, sign } = t.image(a);
        let k = target.k;
        let hk = t.h(k);
        widths.push(t.v(a.i));
        rows.push(
            (1..=hk)
                .map(|j0| {
                    let j = match sign {
                        Sign::Plus => j0,
                        Sign::Minus => hk - (j0 - 1),
                    };
                    Image {
                        target: VLabel::new(r(HLabel::new(k, j)), target.l),
                        sign,
                    }
                })
                .collect(),
        );
    }
    let refined = GeometricType::new(widths, rows).expect("binary refinement is a valid type");
    BinaryRefinement { refined, labels }
}

/// A pointed position `sigma^t(w)` of a periodic code.
#[derive(Debug, Clone, Copy)]
pub struct CodeAt<'a> {
    pub code: &'a PeriodicCode,
    pub t: usize,
}

impl<'a> CodeAt<'a> {
    pub fn new(code: &'a PeriodicCode, t: usize) -> Self {
        CodeAt { code, t }
    }

    fn at(&self, m: usize) -> usize {
        self.code.at((self.t + m) as i64)
    }

    pub fn host(&self) -> usize {
        self.at(0)
    }

    fn label(&self) -> String {
        format!("{},{}", self.t, self.code)
    }
}

/// The unique `j` with `xi(w_t, j) = w_{t+1}`.
pub fn j_index(t: &GeometricType, w: &PeriodicCode, time: usize) -> Result<usize> {
    let i = w.at(time as i64);
    let next = w.at(time as i64 + 1);
    let mut found = (1..=t.h(i)).filter(|&j| t.xi(i, j) == next);
    match (found.next(), found.next()) {
        (Some(j), None) => Ok(j),
        (None, _) => Err(Error::Inadmissible {
            code: w.to_string(),
            from: i,
            to: next,
        }),
        (Some(_), Some(_)) => Err(Error::NonBinary),
    }
}

/// First time `M >= 1` at which the two itineraries differ.
pub fn mismatch_m(a: CodeAt<'_>, b: CodeAt<'_>) -> Result<usize> {
    if a.host() != b.host() {
        return Err(Error::HostMismatch(a.host(), b.host()));
    }
    let window = lcm(a.code.period(), b.code.period());
    (1..=window)
        .find(|&m| a.at(m) != b.at(m))
        .ok_or_else(|| Error::ShiftEqual(a.label(), b.label()))
}

/// `+1` when the first `M-1` steps preserve the relative vertical position of
/// the two intervals, `-1` when they reverse it.
pub fn interchange_delta(t: &GeometricType, a: CodeAt<'_>, b: CodeAt<'_>) -> Result<Sign> {
    let m = mismatch_m(a, b)?;
    let mut delta = Sign::Plus;
    for step in 0..m.saturating_sub(1) {
        let j = j_index(t, a.code, a.t + step)?;
        delta = delta * t.eps(HLabel::new(a.at(step), j));
    }
    Ok(delta)
}

/// Vertical order of the stable intervals through `a` and `b` in their
/// common rectangle.
pub fn compare_intervals(t: &GeometricType, a: CodeAt<'_>, b: CodeAt<'_>) -> Result<Ordering> {
    let m = mismatch_m(a, b)?;
    let delta = interchange_delta(t, a, b)?;
    let ja = j_index(t, a.code, a.t + m - 1)?;
    let jb = j_index(t, b.code, b.t + m - 1)?;
    let ord = ja.cmp(&jb);
    Ok(match delta {
        Sign::Plus => ord,
        Sign::Minus => ord.reverse(),
    })
}

/// `I_a < I_b` in the vertical order of their host rectangle.
pub fn interval_less(t: &GeometricType, a: CodeAt<'_>, b: CodeAt<'_>) -> Result<bool> {
    Ok(compare_intervals(t, a, b)? == Ordering::Less)
}

/// One cut interval `I_{t,w}`: time `t` of code number `code` of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalRef {
    pub t: usize,
    pub code: usize,
    pub host: usize,
}

/// Per rectangle, the cuts sorted from bottom to top. Position `0` is the
/// lower side and position `O(i)+1` the upper side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderTable {
    per_host: Vec<Vec<IntervalRef>>,
    position: HashMap<(usize, usize), usize>,
}

impl OrderTable {
    /// `O(i, W)`, the number of cuts in `R_i`.
    pub fn cuts_in(&self, i: usize) -> usize {
        self.per_host[i - 1].len()
    }

    pub fn sorted(&self, i: usize) -> &[IntervalRef] {
        &self.per_host[i - 1]
    }

    /// The order position of cut `(t, code)`, in `1..=O(host)`.
    pub fn position(&self, t: usize, code: usize) -> usize {
        self.position[&(code, t)]
    }
}

fn require_binary(t: &GeometricType) -> Result<IncidenceMatrix> {
    let a = IncidenceMatrix::of(t);
    if a.is_binary() {
        Ok(a)
    } else {
        Err(Error::NonBinary)
    }
}

fn check_distinct_orbits(family: &[PeriodicCode]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for w in family {
        if !seen.insert(w.orbit()) {
            return Err(Error::DuplicateOrbit(w.orbit().to_string()));
        }
    }
    Ok(())
}

/// Checks the preconditions shared by every s-refinement: binary incidence,
/// admissible codes, no s-boundary codes, one code per orbit.
pub fn check_s_family(t: &GeometricType, family: &[PeriodicCode]) -> Result<()> {
    let a = require_binary(t)?;
    let s_orbits = BoundarySets::orbits(&boundary::per_s_codes(t)?);
    for w in family {
        w.check_admissible(&a)?;
        if s_orbits.contains(&w.orbit()) {
            return Err(Error::SBoundaryCode(w.to_string()));
        }
    }
    check_distinct_orbits(family)
}

/// Splits a family into the codes usable as s-cuts and the s-boundary codes.
pub fn split_s_boundary(
    t: &GeometricType,
    family: &[PeriodicCode],
) -> Result<(Vec<PeriodicCode>, Vec<PeriodicCode>)> {
    let s_orbits = BoundarySets::orbits(&boundary::per_s_codes(t)?);
    Ok(family
        .iter()
        .cloned()
        .partition(|w| !s_orbits.contains(&w.orbit())))
}

/// Splits a family into the codes usable as u-cuts and the u-boundary codes.
pub fn split_u_boundary(
    t: &GeometricType,
    family: &[PeriodicCode],
) -> Result<(Vec<PeriodicCode>, Vec<PeriodicCode>)> {
    let u_orbits = BoundarySets::orbits(&boundary::per_u_codes(t)?);
    Ok(family
        .iter()
        .cloned()
        .partition(|w| !u_orbits.contains(&w.orbit())))
}

/// Sorts all cuts `I_{t,w}` of the family inside their host rectangles.
pub fn build_order(t: &GeometricType, family: &[PeriodicCode]) -> Result<OrderTable> {
    check_s_family(t, family)?;
    order_unchecked(t, family)
}

fn order_unchecked(t: &GeometricType, family: &[PeriodicCode]) -> Result<OrderTable> {
    let mut per_host: Vec<Vec<IntervalRef>> = vec![Vec::new(); t.n()];
    for (code, w) in family.iter().enumerate() {
        for time in 0..w.period() {
            let host = w.at(time as i64);
            per_host[host - 1].push(IntervalRef {
                t: time,
                code,
                host,
            });
        }
    }
    let mut failure = None;
    for cuts in &mut per_host {
        cuts.sort_by(|x, y| {
            let a = CodeAt::new(&family[x.code], x.t);
            let b = CodeAt::new(&family[y.code], y.t);
            compare_intervals(t, a, b).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                Ordering::Equal
            })
        });
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let mut position = HashMap::new();
    for cuts in &per_host {
        for (idx, c) in cuts.iter().enumerate() {
            position.insert((c.code, c.t), idx + 1);
        }
    }
    Ok(OrderTable { per_host, position })
}

/// One side of a refined rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Bottom,
    Top,
    Cut(IntervalRef),
}

/// How a horizontal sub-rectangle `H^i_j` of the original type meets a
/// refined rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Both sides of the refined rectangle cut through `H^i_j`.
    BothInside,
    /// `H^i_j` lies entirely inside the refined rectangle.
    Spanning,
    /// Only the upper side cuts through `H^i_j`.
    UpperInside,
    /// Only the lower side cuts through `H^i_j`.
    LowerInside,
}

/// The part of `H^i_j` inside one refined rectangle and where it goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Piece {
    pub j: usize,
    pub case: Case,
    /// Number of horizontal sub-rectangles of the refined rectangle in `H^i_j`.
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Stable,
    Unstable,
}

/// Outcome of one s- or u-boundary refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementResult {
    pub refined: GeometricType,
    pub direction: Direction,
    /// The type the cutting engine ran on (the inverse type for u-refinements).
    pub source: GeometricType,
    /// The cutting codes in the engine's time direction.
    pub family: Vec<PeriodicCode>,
    pub order: OrderTable,
    /// `labels[r-1] = (i, s)`.
    pub labels: Vec<(usize, usize)>,
    /// Lower and upper side of each refined rectangle.
    pub bounds: Vec<(Bound, Bound)>,
    pub pieces: Vec<Vec<Piece>>,
}

impl RefinementResult {
    /// The refined label `r(i, s)`.
    pub fn index_of(&self, i: usize, s: usize) -> usize {
        let before: usize = (1..i).map(|x| self.order.cuts_in(x) + 1).sum();
        before + s
    }

    pub fn label_of(&self, r: usize) -> (usize, usize) {
        self.labels[r - 1]
    }

    /// Codes of the refined type that describe the same point as the
    /// periodic code `w` of the unrefined type.
    pub fn recode(&self, w: &PeriodicCode) -> Result<Vec<PeriodicCode>> {
        match self.direction {
            Direction::Stable => self.recode_forward(w),
            Direction::Unstable => Ok(self
                .recode_forward(&w.reversed())?
                .iter()
                .map(PeriodicCode::reversed)
                .collect()),
        }
    }

    fn recode_forward(&self, w: &PeriodicCode) -> Result<Vec<PeriodicCode>> {
        let src = &self.source;
        w.check_admissible(&IncidenceMatrix::of(src))?;
        let p = w.period();
        let orbit = w.orbit();
        let on_cut = self.family.iter().enumerate().find_map(|(c, fw)| {
            (fw.orbit() == orbit).then(|| {
                (0..fw.period())
                    .find(|&t0| fw.shift(t0) == *w)
                    .map(|t0| (c, t0))
            })
        });
        if let Some(Some((c, t0))) = on_cut {
            let fw = &self.family[c];
            let mut out = Vec::new();
            for start_above in [false, true] {
                let mut above = start_above;
                let mut seq = Vec::with_capacity(2 * p);
                for time in 0..2 * p {
                    let host = w.at(time as i64);
                    let pos = self.order.position((t0 + time) % fw.period(), c);
                    seq.push(self.index_of(host, if above { pos + 1 } else { pos }));
                    let j = j_index(src, w, time)?;
                    if src.eps(HLabel::new(host, j)) == Sign::Minus {
                        above = !above;
                    }
                }
                out.push(PeriodicCode::from_cycle(&seq)?);
            }
            out.dedup();
            return Ok(out);
        }
        let mut seq = Vec::with_capacity(p);
        for time in 0..p {
            let host = w.at(time as i64);
            let me = CodeAt::new(w, time);
            let mut below = 0;
            for cut in self.order.sorted(host) {
                let other = CodeAt::new(&self.family[cut.code], cut.t);
                if compare_intervals(src, other, me)? == Ordering::Less {
                    below += 1;
                }
            }
            seq.push(self.index_of(host, below + 1));
        }
        Ok(vec![PeriodicCode::from_cycle(&seq)?])
    }
}

/// The s-boundary refinement of `t` along `family`.
pub fn s_refine(t: &GeometricType, family: &[PeriodicCode]) -> Result<RefinementResult> {
    check_s_family(t, family)?;
    cut_along(t, family.to_vec(), Direction::Stable)
}

fn cut_along(
    t: &GeometricType,
    family: Vec<PeriodicCode>,
    direction: Direction,
) -> Result<RefinementResult> {
    let order = order_unchecked(t, &family)?;
    let n = t.n();
    let mut offsets = vec![0usize; n + 1];
    for i in 1..=n {
        offsets[i] = offsets[i - 1] + order.cuts_in(i) + 1;
    }
    let r_of = |i: usize, s: usize| offsets[i - 1] + s;
    let image_pos = |cut: IntervalRef| {
        let w = &family[cut.code];
        order.position((cut.t + 1) % w.period(), cut.code)
    };
    let j_of = |cut: IntervalRef| j_index(t, &family[cut.code], cut.t);

    let mut labels = Vec::new();
    let mut bounds = Vec::new();
    let mut pieces = Vec::new();
    let mut widths = Vec::new();
    let mut rows = Vec::new();
    for i in 1..=n {
        let cuts = order.sorted(i);
        for s in 1..=cuts.len() + 1 {
            let lower = if s == 1 {
                Bound::Bottom
            } else {
                Bound::Cut(cuts[s - 2])
            };
            let upper = if s == cuts.len() + 1 {
                Bound::Top
            } else {
                Bound::Cut(cuts[s - 1])
            };
            let j_lo = match lower {
                Bound::Cut(c) => j_of(c)?,
                _ => 1,
            };
            let j_hi = match upper {
                Bound::Cut(c) => j_of(c)?,
                _ => t.h(i),
            };
            if j_lo > j_hi {
                return Err(Error::Inconsistent(format!(
                    "bounds of ({i},{s}) out of order"
                )));
            }
            let mut row = Vec::new();
            let mut rect_pieces = Vec::new();
            for j in j_lo..=j_hi {
                let Image { target, sign } = t.image(HLabel::new(i, j));
                let k = target.k;
                let top = order.cuts_in(k) + 1;
                let lower_cut = match lower {
                    Bound::Cut(c) if j == j_lo => Some(c),
                    _ => None,
                };
                let upper_cut = match upper {
                    Bound::Cut(c) if j == j_hi => Some(c),
                    _ => None,
                };
                let case = match (lower_cut.is_some(), upper_cut.is_some()) {
                    (true, true) => Case::BothInside,
                    (false, false) => Case::Spanning,
                    (false, true) => Case::UpperInside,
                    (true, false) => Case::LowerInside,
                };
                // image positions of the lower and upper side of the piece
                let (lo_edge, hi_edge) = match sign {
                    Sign::Plus => (0, top),
                    Sign::Minus => (top, 0),
                };
                let lo = lower_cut.map_or(lo_edge, image_pos);
                let hi = upper_cut.map_or(hi_edge, image_pos);
                let count = lo.abs_diff(hi);
                if count == 0 {
                    return Err(Error::Inconsistent(format!(
                        "degenerate image of ({i},{j}) in ({i},{s})"
                    )));
                }
                for sub in 1..=count {
                    let s_img = match sign {
                        Sign::Plus => lo + sub,
                        Sign::Minus => lo + 1 - sub,
                    };
                    row.push(Image {
                        target: VLabel::new(r_of(k, s_img), target.l),
                        sign,
                    });
                }
                rect_pieces.push(Piece { j, case, count });
            }
            labels.push((i, s));
            bounds.push((lower, upper));
            pieces.push(rect_pieces);
            widths.push(t.v(i));
            rows.push(row);
        }
    }
    let refined = GeometricType::new(widths, rows)
        .map_err(|e| Error::Inconsistent(format!("refined type invalid: {e}")))?;
    Ok(RefinementResult {
        refined,
        direction,
        source: t.clone(),
        family,
        order,
        labels,
        bounds,
        pieces,
    })
}

/// The u-boundary refinement: s-refine the inverse type along the reversed
/// codes and invert the result.
pub fn u_refine(t: &GeometricType, family: &[PeriodicCode]) -> Result<RefinementResult> {
    let a = require_binary(t)?;
    let u_orbits = BoundarySets::orbits(&boundary::per_u_codes(t)?);
    for w in family {
        w.check_admissible(&a)?;
        if u_orbits.contains(&w.orbit()) {
            return Err(Error::UBoundaryCode(w.to_string()));
        }
    }
    check_distinct_orbits(family)?;
    let inverse = t.invert();
    let reversed: Vec<PeriodicCode> = family.iter().map(PeriodicCode::reversed).collect();
    let mut res = cut_along(&inverse, reversed, Direction::Unstable)?;
    res.refined = res.refined.invert();
    Ok(res)
}

/// A sequence of refinements applied one after the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementChain {
    pub base: GeometricType,
    pub stages: Vec<RefinementResult>,
}

impl RefinementChain {
    pub fn refined(&self) -> &GeometricType {
        self.stages.last().map_or(&self.base, |s| &s.refined)
    }

    fn push(&mut self, stage: RefinementResult) {
        self.stages.push(stage);
    }

    /// Codes of the final type describing the same point as `w`.
    pub fn recode(&self, w: &PeriodicCode) -> Result<BTreeSet<PeriodicCode>> {
        let mut current = BTreeSet::from([w.clone()]);
        for stage in &self.stages {
            let mut next = BTreeSet::new();
            for c in &current {
                next.extend(stage.recode(c)?);
            }
            current = next;
        }
        Ok(current)
    }
}

fn orbit_family(set: &BTreeSet<PeriodicCode>) -> Vec<PeriodicCode> {
    BoundarySets::orbits(set)
        .into_iter()
        .map(|o: CodeOrbit| o.canonical().clone())
        .collect()
}

fn corner_stages(chain: &mut RefinementChain) -> Result<()> {
    let t = chain.refined().clone();
    let sets = boundary::boundary_sets(&t)?;
    let (cuts, _) = split_s_boundary(&t, &orbit_family(&sets.b))?;
    let stage = s_refine(&t, &cuts)?;
    let mid = stage.refined.clone();
    chain.push(stage);

    let s_mid = boundary::per_s_codes(&mid)?;
    let (cuts, _) = split_u_boundary(&mid, &orbit_family(&s_mid))?;
    let stage = u_refine(&mid, &cuts)?;
    chain.push(stage);
    Ok(())
}

/// s-refine along the periodic boundary codes, then u-refine along the
/// periodic s-boundary codes of the intermediate type. Codes that would cut
/// along an existing boundary are dropped at each stage.
pub fn corner_refine(t: &GeometricType) -> Result<RefinementChain> {
    require_binary(t)?;
    let mut chain = RefinementChain {
        base: t.clone(),
        stages: Vec::new(),
    };
    corner_stages(&mut chain)?;
    Ok(chain)
}

/// For a type with the corner property: s-refine along `family` (dropping
/// s-boundary codes) and take the corner refinement of the result.
pub fn corner_refine_along(t: &GeometricType, family: &[PeriodicCode]) -> Result<RefinementChain> {
    if !boundary::has_corner_property(t)? {
        return Err(Error::NotCorner);
    }
    let a = IncidenceMatrix::of(t);
    for w in family {
        w.check_admissible(&a)?;
    }
    check_distinct_orbits(family)?;
    let (cuts, _) = split_s_boundary(t, family)?;
    let mut chain = RefinementChain {
        base: t.clone(),
        stages: Vec::new(),
    };
    chain.push(s_refine(t, &cuts)?);
    corner_stages(&mut chain)?;
    Ok(chain)
}

/// The orbits with minimal period at most `max_period`, for [`wp_refine`].
pub fn wp_family(t: &GeometricType, max_period: usize) -> Result<Vec<PeriodicCode>> {
    let a = require_binary(t)?;
    Ok(enumerate_orbits(&a, max_period)?
        .into_iter()
        .map(|o| o.canonical().clone())
        .collect())
}

/// Corner refinement along every periodic orbit of period `<= max_period`.
pub fn wp_refine(t: &GeometricType, max_period: usize) -> Result<RefinementChain> {
    require_binary(t)?;
    let sets = boundary::boundary_sets(t)?;
    if sets.b != sets.c {
        return Err(Error::NotCorner);
    }
    let required = sets.max_period();
    if max_period < required {
        return Err(Error::PeriodBelowBoundary {
            given: max_period,
            required,
        });
    }
    corner_refine_along(t, &wp_family(t, max_period)?)
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::BothInside => "I",
            Case::Spanning => "II",
            Case::UpperInside => "III-upper",
            Case::LowerInside => "III-lower",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{has_corner_property, per_s_codes};
    use crate::examples::{e0, e1, e1m, e2, e3};

    fn code(w: &[usize]) -> PeriodicCode {
        PeriodicCode::new(w.to_vec()).unwrap()
    }

    #[test]
    fn bin_refine_examples() {
        let b = bin_refine(&e1());
        assert_eq!(b.refined, e2());
        assert_eq!(
            IncidenceMatrix::of(&b.refined).rows(),
            &[vec![1, 1], vec![1, 1]]
        );
        assert_eq!(bin_refine(&e0()).refined, e0());

        let m = bin_refine(&e1m()).refined;
        let img = |j| m.image(HLabel::new(2, j));
        assert_eq!(
            img(1),
            Image {
                target: VLabel::new(2, 2),
                sign: Sign::Minus
            }
        );
        assert_eq!(
            img(2),
            Image {
                target: VLabel::new(1, 2),
                sign: Sign::Minus
            }
        );
    }

    #[test]
    fn j_index_examples() {
        let w = code(&[1, 2]);
        assert_eq!(j_index(&e2(), &w, 0).unwrap(), 2);
        assert_eq!(j_index(&e2(), &w, 1).unwrap(), 1);
        assert_eq!(j_index(&e2(), &code(&[1]), 0).unwrap(), 1);
    }

    #[test]
    fn mismatch_examples() {
        let (w12, w1, w2) = (code(&[1, 2]), code(&[1]), code(&[2]));
        assert_eq!(
            mismatch_m(CodeAt::new(&w12, 0), CodeAt::new(&w1, 0)).unwrap(),
            1
        );
        assert_eq!(
            mismatch_m(CodeAt::new(&w12, 1), CodeAt::new(&w2, 0)).unwrap(),
            1
        );
        assert!(matches!(
            mismatch_m(CodeAt::new(&w12, 0), CodeAt::new(&w12, 0)),
            Err(Error::ShiftEqual(..))
        ));
        assert!(matches!(
            mismatch_m(CodeAt::new(&w12, 0), CodeAt::new(&w2, 0)),
            Err(Error::HostMismatch(1, 2))
        ));
    }

    #[test]
    fn interchange_signs() {
        let (a, b) = (code(&[1, 2]), code(&[1, 2, 2]));
        let t = e2();
        assert_eq!(
            interchange_delta(&t, CodeAt::new(&a, 0), CodeAt::new(&code(&[1]), 0)).unwrap(),
            Sign::Plus
        );
        assert_eq!(
            interchange_delta(&t, CodeAt::new(&a, 0), CodeAt::new(&b, 0)).unwrap(),
            Sign::Plus
        );
        // through the flipped branch of the orientation-reversing binary type
        let m = bin_refine(&e1m()).refined;
        // rectangle 2 = old (1,2): its sub-rectangles go to 2 then 1, flipped
        let (x, y) = (code(&[2, 2, 1]), code(&[2, 2, 2, 1]));
        assert_eq!(
            mismatch_m(CodeAt::new(&x, 0), CodeAt::new(&y, 0)).unwrap(),
            2
        );
        assert_eq!(
            interchange_delta(&m, CodeAt::new(&x, 0), CodeAt::new(&y, 0)).unwrap(),
            Sign::Minus
        );
    }

    #[test]
    fn interval_order_example() {
        let (a, b) = (code(&[1, 2]), code(&[1, 2, 2]));
        let t = e2();
        assert_eq!(
            mismatch_m(CodeAt::new(&a, 0), CodeAt::new(&b, 0)).unwrap(),
            2
        );
        assert!(interval_less(&t, CodeAt::new(&a, 0), CodeAt::new(&b, 0)).unwrap());
        assert!(!interval_less(&t, CodeAt::new(&b, 0), CodeAt::new(&a, 0)).unwrap());
        assert!(interval_less(&t, CodeAt::new(&a, 0), CodeAt::new(&a, 0)).is_err());
    }

    #[test]
    fn build_order_examples() {
        let t = e2();
        let order = build_order(&t, &[code(&[1, 2])]).unwrap();
        assert_eq!(order.cuts_in(1), 1);
        assert_eq!(order.cuts_in(2), 1);
        assert_eq!(order.position(0, 0), 1);
        assert_eq!(order.position(1, 0), 1);
        let empty = build_order(&t, &[]).unwrap();
        assert_eq!((empty.cuts_in(1), empty.cuts_in(2)), (0, 0));
        assert!(matches!(
            build_order(&t, &[code(&[1])]),
            Err(Error::SBoundaryCode(_))
        ));
        assert!(matches!(
            build_order(&t, &[code(&[1, 2]), code(&[2, 1])]),
            Err(Error::DuplicateOrbit(_))
        ));
        assert!(matches!(build_order(&e1(), &[]), Err(Error::NonBinary)));
    }

    #[test]
    fn s_refine_e2_gives_e3() {
        let res = s_refine(&e2(), &[code(&[1, 2])]).unwrap();
        assert_eq!(res.refined, e3());
        assert_eq!(res.labels, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        let cases: Vec<Vec<Case>> = res
            .pieces
            .iter()
            .map(|p| p.iter().map(|x| x.case).collect())
            .collect();
        assert_eq!(
            cases,
            vec![
                vec![Case::Spanning, Case::UpperInside],
                vec![Case::LowerInside],
                vec![Case::UpperInside],
                vec![Case::LowerInside, Case::Spanning],
            ]
        );
    }

    #[test]
    fn empty_family_is_identity() {
        for t in [e0(), e2(), e3()] {
            let res = s_refine(&t, &[]).unwrap();
            assert_eq!(res.refined, t);
            assert!(res.labels.iter().all(|&(_, s)| s == 1));
            assert_eq!(u_refine(&t, &[]).unwrap().refined, t);
        }
    }

    #[test]
    fn recoded_cut_codes_are_s_boundary() {
        let w = code(&[1, 2]);
        let res = s_refine(&e2(), std::slice::from_ref(&w)).unwrap();
        let per_s = per_s_codes(&res.refined).unwrap();
        assert!(per_s.contains(&code(&[1, 3])));
        assert!(per_s.contains(&code(&[2, 4])));
        let rec = res.recode(&w).unwrap();
        assert_eq!(rec, vec![code(&[1, 3]), code(&[2, 4])]);
    }

    #[test]
    fn u_refine_e2() {
        let res = u_refine(&e2(), &[code(&[1, 2])]).unwrap();
        let t = &res.refined;
        assert_eq!(t.n(), 4);
        assert!(t.widths().iter().all(|&v| v == 1 || v == 3));
        assert_eq!(t.widths().iter().sum::<usize>(), 8);
        assert_eq!(t.alpha(), 8);
        assert!(matches!(
            u_refine(&e2(), &[code(&[2])]),
            Err(Error::UBoundaryCode(_))
        ));
    }

    #[test]
    fn corner_refinements() {
        let c2 = corner_refine(&e2()).unwrap();
        assert_eq!(c2.refined(), &e2());
        let c3 = corner_refine(&e3()).unwrap();
        assert!(has_corner_property(c3.refined()).unwrap());
        let along = corner_refine_along(&e2(), &[code(&[1, 2])]).unwrap();
        assert!(has_corner_property(along.refined()).unwrap());
        let per_s = per_s_codes(along.refined()).unwrap();
        for c in along.recode(&code(&[1, 2])).unwrap() {
            assert!(per_s.contains(&c), "{c} missing");
        }
        assert_eq!(corner_refine_along(&e3(), &[]), Err(Error::NotCorner));
    }

    #[test]
    fn wp_examples() {
        assert_eq!(wp_refine(&e2(), 1).unwrap().refined(), &e2());
        let w2 = wp_refine(&e2(), 2).unwrap();
        assert!(w2.refined().n() >= 4);
        assert!(has_corner_property(w2.refined()).unwrap());
        assert_eq!(
            wp_refine(&e2(), 0),
            Err(Error::PeriodBelowBoundary {
                given: 0,
                required: 1
            })
        );
    }
}
