//! Boundary codes via the generating functions on the `2n` boundary labels.
//!
//! The s-generating function follows the lower (`-`) or upper (`+`) stable
//! side of a rectangle under the map; the u-generating function does the same
//! for the vertical sides under the inverse map. Their cycles give the
//! periodic boundary codes `S(T)` and `U(T)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::shift::{CodeOrbit, EventuallyPeriodicCode, IncidenceMatrix, PeriodicCode};
use crate::types::{GeometricType, HLabel, Sign, VLabel};

/// A boundary label `(i, eps)`: the lower (`-`) or upper (`+`) side of `R_i`
/// for s-labels, the left (`-`) or right (`+`) side for u-labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SULabel {
    pub i: usize,
    pub sign: Sign,
}

impl SULabel {
    pub fn new(i: usize, sign: Sign) -> Self {
        SULabel { i, sign }
    }

    /// All `2n` labels ordered by `(i, sign)`.
    pub fn all(n: usize) -> impl Iterator<Item = SULabel> {
        (1..=n).flat_map(|i| [SULabel::new(i, Sign::Minus), SULabel::new(i, Sign::Plus)])
    }
}

impl fmt::Display for SULabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.sign)
    }
}

/// `theta(i,-) = (i,1)` and `theta(i,+) = (i,h_i)`.
pub fn theta(t: &GeometricType, label: SULabel) -> HLabel {
    match label.sign {
        Sign::Minus => HLabel::new(label.i, 1),
        Sign::Plus => HLabel::new(label.i, t.h(label.i)),
    }
}

/// One step of the s-generating function.
pub fn gamma_step(t: &GeometricType, label: SULabel) -> SULabel {
    let a = theta(t, label);
    SULabel::new(t.xi(a.i, a.j), label.sign * t.eps(a))
}

/// One step of the u-generating function: the s-generating function of the
/// inverse type, read off `rho^{-1}` directly.
pub fn upsilon_step(t: &GeometricType, label: SULabel) -> SULabel {
    let l = match label.sign {
        Sign::Minus => 1,
        Sign::Plus => t.v(label.i),
    };
    let a = t.preimage(VLabel::new(label.i, l));
    SULabel::new(a.i, label.sign * t.eps(a))
}

/// The eventually periodic code generated from one boundary label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryOrbitSummary {
    pub label: SULabel,
    pub preperiod: Vec<usize>,
    pub cycle: Vec<usize>,
    /// Distinct labels visited, in order; the cycle is the tail of this list.
    pub trace: Vec<SULabel>,
}

impl BoundaryOrbitSummary {
    fn generate(start: SULabel, step: impl Fn(SULabel) -> SULabel) -> Self {
        let mut trace = vec![start];
        let mut seen = BTreeMap::from([(start, 0usize)]);
        let mut cur = start;
        let cycle_start = loop {
            cur = step(cur);
            if let Some(&at) = seen.get(&cur) {
                break at;
            }
            seen.insert(cur, trace.len());
            trace.push(cur);
        };
        BoundaryOrbitSummary {
            label: start,
            preperiod: trace[..cycle_start].iter().map(|l| l.i).collect(),
            cycle: trace[cycle_start..].iter().map(|l| l.i).collect(),
            trace,
        }
    }

    /// Symbols `0..len` of the one-sided sequence `preperiod cycle cycle ...`.
    pub fn prefix(&self, len: usize) -> Vec<usize> {
        (0..len).map(|m| self.symbol(m)).collect()
    }

    pub fn symbol(&self, m: usize) -> usize {
        if m < self.preperiod.len() {
            self.preperiod[m]
        } else {
            self.cycle[(m - self.preperiod.len()) % self.cycle.len()]
        }
    }

    /// Whether two summaries describe the same one-sided sequence.
    pub fn same_sequence(&self, other: &Self) -> bool {
        let window = self.preperiod.len().max(other.preperiod.len())
            + lcm(self.cycle.len(), other.cycle.len());
        self.prefix(window) == other.prefix(window)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The s-boundary positive code `I^+(label)`.
pub fn s_boundary_positive_code(t: &GeometricType, label: SULabel) -> BoundaryOrbitSummary {
    BoundaryOrbitSummary::generate(label, |l| gamma_step(t, l))
}

/// The u-boundary negative code `J^-(label)`; its words list symbols at
/// times `0, -1, -2, ...`.
pub fn u_boundary_negative_code(t: &GeometricType, label: SULabel) -> BoundaryOrbitSummary {
    BoundaryOrbitSummary::generate(label, |l| upsilon_step(t, l))
}

fn require_binary(t: &GeometricType) -> Result<IncidenceMatrix> {
    let a = IncidenceMatrix::of(t);
    if a.is_binary() {
        Ok(a)
    } else {
        Err(Error::NonBinary)
    }
}

fn cycle_words(n: usize, step: impl Fn(SULabel) -> SULabel) -> Vec<Vec<usize>> {
    let mut on_cycle = BTreeSet::new();
    let mut words = Vec::new();
    for start in SULabel::all(n) {
        let s = BoundaryOrbitSummary::generate(start, &step);
        let first = s.trace[s.preperiod.len()];
        if on_cycle.insert(first) {
            let cyc = &s.trace[s.preperiod.len()..];
            on_cycle.extend(cyc.iter().copied());
            words.push(s.cycle);
        }
    }
    words
}

/// Pointed periodic codes from every phase of every cycle of the
/// s-generating function.
pub fn per_s_codes(t: &GeometricType) -> Result<BTreeSet<PeriodicCode>> {
    require_binary(t)?;
    let mut out = BTreeSet::new();
    for word in cycle_words(t.n(), |l| gamma_step(t, l)) {
        let code = PeriodicCode::from_cycle(&word)?;
        out.extend(code.phases());
    }
    Ok(out)
}

/// Pointed periodic codes from the cycles of the u-generating function,
/// reversed so they read in forward time.
pub fn per_u_codes(t: &GeometricType) -> Result<BTreeSet<PeriodicCode>> {
    require_binary(t)?;
    let mut out = BTreeSet::new();
    for word in cycle_words(t.n(), |l| upsilon_step(t, l)) {
        let code = PeriodicCode::from_cycle(&word)?.reversed();
        out.extend(code.phases());
    }
    Ok(out)
}

/// `S(T)`, `U(T)`, `B(T) = S ∪ U` and `C(T) = S ∩ U` as sets of pointed codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySets {
    pub s: BTreeSet<PeriodicCode>,
    pub u: BTreeSet<PeriodicCode>,
    pub b: BTreeSet<PeriodicCode>,
    pub c: BTreeSet<PeriodicCode>,
}

impl BoundarySets {
    pub fn orbits(set: &BTreeSet<PeriodicCode>) -> BTreeSet<CodeOrbit> {
        set.iter().map(PeriodicCode::orbit).collect()
    }

    /// Largest minimal period in `B(T)`.
    pub fn max_period(&self) -> usize {
        self.b.iter().map(PeriodicCode::period).max().unwrap_or(0)
    }
}

pub fn boundary_sets(t: &GeometricType) -> Result<BoundarySets> {
    let s = per_s_codes(t)?;
    let u = per_u_codes(t)?;
    let b = s.union(&u).cloned().collect();
    let c = s.intersection(&u).cloned().collect();
    Ok(BoundarySets { s, u, b, c })
}

/// Every periodic boundary code is a corner code.
pub fn has_corner_property(t: &GeometricType) -> Result<bool> {
    let sets = boundary_sets(t)?;
    Ok(sets.b == sets.c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafClass {
    SLeaf,
    ULeaf,
    Corner,
    Interior,
}

impl fmt::Display for LeafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LeafClass::SLeaf => "s-leaf",
            LeafClass::ULeaf => "u-leaf",
            LeafClass::Corner => "corner-leaf",
            LeafClass::Interior => "interior",
        })
    }
}

/// Decides whether a code lies on the stable leaf of an s-boundary code
/// (its future eventually agrees with some `I^+`), the unstable leaf of a
/// u-boundary code (its past eventually agrees with some `J^-`), both, or
/// neither.
pub fn classify_code(t: &GeometricType, code: &EventuallyPeriodicCode) -> Result<LeafClass> {
    let a = require_binary(t)?;
    code.check_admissible(&a)?;

    let s_leaf = tail_matches(
        &code.middle,
        &code.right_cycle,
        SULabel::all(t.n()).map(|l| s_boundary_positive_code(t, l)),
    );

    // the past read backwards from time -1
    let mut back_cycle: Vec<usize> = code.left_cycle.clone();
    back_cycle.reverse();
    let u_leaf = tail_matches(
        &[],
        &back_cycle,
        SULabel::all(t.n()).map(|l| u_boundary_negative_code(t, l)),
    );

    Ok(match (s_leaf, u_leaf) {
        (true, true) => LeafClass::Corner,
        (true, false) => LeafClass::SLeaf,
        (false, true) => LeafClass::ULeaf,
        (false, false) => LeafClass::Interior,
    })
}

// Does some shift of `head cycle cycle ...` equal one of the boundary
// sequences? Checked over the aligned window `preperiod + 2 lcm`.
fn tail_matches(
    head: &[usize],
    cycle: &[usize],
    boundary: impl Iterator<Item = BoundaryOrbitSummary>,
) -> bool {
    let seq = |m: usize| {
        if m < head.len() {
            head[m]
        } else {
            cycle[(m - head.len()) % cycle.len()]
        }
    };
    for b in boundary {
        let pre = b.preperiod.len().max(head.len());
        let window = pre + 2 * lcm(b.cycle.len(), cycle.len());
        for k in 0..=pre + cycle.len() {
            if (0..window).all(|m| seq(k + m) == b.symbol(m)) {
                return true;
            }
        }
    }
    false
}
