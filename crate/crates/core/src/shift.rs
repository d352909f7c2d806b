//! Incidence matrices and the subshift of finite type they define.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::types::GeometricType;

/// `a[i][k]` counts the horizontal sub-rectangles of `R_i` sent into `R_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    a: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn new(a: Vec<Vec<u64>>) -> Self {
        let n = a.len();
        assert!(
            a.iter().all(|row| row.len() == n),
            "incidence matrix must be square"
        );
        IncidenceMatrix { a }
    }

    pub fn of(t: &GeometricType) -> Self {
        let n = t.n();
        let mut a = vec![vec![0u64; n]; n];
        for lab in t.h_labels() {
            a[lab.i - 1][t.xi(lab.i, lab.j) - 1] += 1;
        }
        IncidenceMatrix { a }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Entry `a_{ik}` with 1-based indices.
    pub fn get(&self, i: usize, k: usize) -> u64 {
        self.a[i - 1][k - 1]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.a
    }

    pub fn allows(&self, i: usize, k: usize) -> bool {
        self.get(i, k) >= 1
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        IncidenceMatrix {
            a: (0..n)
                .map(|i| (0..n).map(|k| self.a[k][i]).collect())
                .collect(),
        }
    }

    pub fn is_binary(&self) -> bool {
        self.a.iter().flatten().all(|&x| x <= 1)
    }

    /// Primitivity: some power is entrywise positive. Powers up to the
    /// Wielandt bound `n^2 - 2n + 2` are enough.
    pub fn is_mixing(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let base: Vec<Vec<bool>> = self
            .a
            .iter()
            .map(|row| row.iter().map(|&x| x > 0).collect())
            .collect();
        let mut power = base.clone();
        let bound = n * n + 2 - 2 * n;
        for _ in 1..bound {
            if power.iter().flatten().all(|&b| b) {
                return true;
            }
            power = bool_product(&power, &base);
        }
        power.iter().flatten().all(|&b| b)
    }

    /// `tr(A^p)`, the number of points fixed by `sigma^p`.
    pub fn trace_power(&self, p: usize) -> u128 {
        let n = self.n();
        let base: Vec<Vec<u128>> = self
            .a
            .iter()
            .map(|row| row.iter().map(|&x| x as u128).collect())
            .collect();
        let mut acc: Vec<Vec<u128>> = (0..n)
            .map(|i| (0..n).map(|k| u128::from(i == k)).collect())
            .collect();
        for _ in 0..p {
            let mut next = vec![vec![0u128; n]; n];
            for i in 0..n {
                for m in 0..n {
                    if acc[i][m] == 0 {
                        continue;
                    }
                    for k in 0..n {
                        next[i][k] += acc[i][m] * base[m][k];
                    }
                }
            }
            acc = next;
        }
        (0..n).map(|i| acc[i][i]).sum()
    }

    fn check_symbol(&self, s: usize) -> Result<()> {
        if s == 0 || s > self.n() {
            Err(Error::SymbolOutOfRange {
                symbol: s,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// True iff every consecutive pair of `word`, including the wrap pair,
    /// is an allowed transition.
    pub fn is_admissible_cycle(&self, word: &[usize]) -> Result<bool> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        for &s in word {
            self.check_symbol(s)?;
        }
        Ok(first_forbidden(self, word).is_none())
    }
}

fn bool_product(x: &[Vec<bool>], y: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|k| (0..n).any(|m| x[i][m] && y[m][k])).collect())
        .collect()
}

fn first_forbidden(a: &IncidenceMatrix, word: &[usize]) -> Option<(usize, usize)> {
    let p = word.len();
    (0..p)
        .map(|t| (word[t], word[(t + 1) % p]))
        .find(|&(x, y)| !a.allows(x, y))
}

/// One minimal period of a periodic code, read in forward shift time and
/// pointed at `w_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicCode {
    word: Vec<usize>,
}

impl PeriodicCode {
    /// Rejects empty words, the symbol 0 and proper powers.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&s) = word.iter().find(|&&s| s == 0) {
            return Err(Error::SymbolOutOfRange { symbol: s, n: 0 });
        }
        let code = PeriodicCode { word };
        if code.root_len() != code.word.len() {
            return Err(Error::NotPrimitive(code.to_string()));
        }
        Ok(code)
    }

    /// The periodic sequence `word^infinity`, reduced to its minimal period.
    pub fn from_cycle(word: &[usize]) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let tmp = PeriodicCode {
            word: word.to_vec(),
        };
        let d = tmp.root_len();
        PeriodicCode::new(word[..d].to_vec())
    }

    fn root_len(&self) -> usize {
        let p = self.word.len();
        (1..=p)
            .find(|&d| p.is_multiple_of(d) && (d..p).all(|t| self.word[t] == self.word[t - d]))
            .unwrap_or(p)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    /// `w_t` for any integer time `t`.
    pub fn at(&self, t: i64) -> usize {
        let p = self.period() as i64;
        self.word[t.rem_euclid(p) as usize]
    }

    /// `sigma^t(w)`.
    pub fn shift(&self, t: usize) -> PeriodicCode {
        let p = self.period();
        let mut word = self.word.clone();
        word.rotate_left(t % p);
        PeriodicCode { word }
    }

    /// Time reversal keeping `w_0` in place: `(w_0, w_{P-1}, ..., w_1)`.
    pub fn reversed(&self) -> PeriodicCode {
        let p = self.period() as i64;
        PeriodicCode {
            word: (0..p).map(|t| self.at(-t)).collect(),
        }
    }

    pub fn orbit(&self) -> CodeOrbit {
        let p = self.period();
        let best = (0..p)
            .map(|t| self.shift(t))
            .min_by(|x, y| x.word.cmp(&y.word))
            .unwrap();
        CodeOrbit(best)
    }

    /// All pointed codes in the shift orbit.
    pub fn phases(&self) -> impl Iterator<Item = PeriodicCode> + '_ {
        (0..self.period()).map(move |t| self.shift(t))
    }

    pub fn check_admissible(&self, a: &IncidenceMatrix) -> Result<()> {
        for &s in &self.word {
            a.check_symbol(s)?;
        }
        match first_forbidden(a, &self.word) {
            None => Ok(()),
            Some((from, to)) => Err(Error::Inadmissible {
                code: self.to_string(),
                from,
                to,
            }),
        }
    }
}

impl fmt::Display for PeriodicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(" "))
    }
}

/// A shift orbit of periodic codes, stored as its lexicographically minimal
/// rotation. Orbits order by period first, then by word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeOrbit(PeriodicCode);

impl CodeOrbit {
    pub fn canonical(&self) -> &PeriodicCode {
        &self.0
    }

    pub fn period(&self) -> usize {
        self.0.period()
    }
}

impl Ord for CodeOrbit {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.period(), &self.0.word).cmp(&(other.period(), &other.0.word))
    }
}

impl PartialOrd for CodeOrbit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CodeOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `... L L L M R R R ...`: a left cycle repeated toward minus infinity, a
/// finite middle word starting at time 0, and a right cycle repeated toward
/// plus infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodicCode {
    pub left_cycle: Vec<usize>,
    pub middle: Vec<usize>,
    pub right_cycle: Vec<usize>,
}

impl EventuallyPeriodicCode {
    pub fn new(
        left_cycle: Vec<usize>,
        middle: Vec<usize>,
        right_cycle: Vec<usize>,
    ) -> Result<Self> {
        if left_cycle.is_empty() || right_cycle.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(EventuallyPeriodicCode {
            left_cycle,
            middle,
            right_cycle,
        })
    }

    /// The purely periodic code `w^infinity` centred at `w_0`.
    pub fn periodic(w: &PeriodicCode) -> Self {
        EventuallyPeriodicCode {
            left_cycle: w.word().to_vec(),
            middle: Vec::new(),
            right_cycle: w.word().to_vec(),
        }
    }

    pub fn check_admissible(&self, a: &IncidenceMatrix) -> Result<()> {
        let all = self
            .left_cycle
            .iter()
            .chain(&self.middle)
            .chain(&self.right_cycle);
        for &s in all {
            a.check_symbol(s)?;
        }
        // two copies of each cycle cover both wrap pairs and both junctions
        let mut seq = Vec::new();
        seq.extend_from_slice(&self.left_cycle);
        seq.extend_from_slice(&self.left_cycle);
        seq.extend_from_slice(&self.middle);
        seq.extend_from_slice(&self.right_cycle);
        seq.extend_from_slice(&self.right_cycle);
        for pair in seq.windows(2) {
            if !a.allows(pair[0], pair[1]) {
                return Err(Error::Inadmissible {
                    code: self.to_string(),
                    from: pair[0],
                    to: pair[1],
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for EventuallyPeriodicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |w: &[usize]| {
            w.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{}|{}|{}",
            j(&self.left_cycle),
            j(&self.middle),
            j(&self.right_cycle)
        )
    }
}

/// Shift orbits of admissible periodic codes with minimal period `<= max_period`,
/// ordered by period then word. Lyndon words are generated depth first over
/// the transition digraph.
pub fn enumerate_orbits(a: &IncidenceMatrix, max_period: usize) -> Result<Vec<CodeOrbit>> {
    if !a.is_binary() {
        return Err(Error::NonBinary);
    }
    let mut found = Vec::new();
    let mut word = Vec::with_capacity(max_period);
    for first in 1..=a.n() {
        word.push(first);
        lyndon_dfs(a, max_period, &mut word, 1, &mut found);
        word.pop();
    }
    let mut orbits: Vec<CodeOrbit> = found
        .into_iter()
        .map(|w| CodeOrbit(PeriodicCode { word: w }))
        .collect();
    orbits.sort();
    Ok(orbits)
}

// `word` is a prenecklace whose longest Lyndon prefix has length `p`.
fn lyndon_dfs(
    a: &IncidenceMatrix,
    max_len: usize,
    word: &mut Vec<usize>,
    p: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let len = word.len();
    if p == len && a.allows(word[len - 1], word[0]) {
        out.push(word.clone());
    }
    if len == max_len {
        return;
    }
    let last = word[len - 1];
    let forced = word[len - p];
    for c in forced..=a.n() {
        if !a.allows(last, c) {
            continue;
        }
        word.push(c);
        let np = if c == forced { p } else { len + 1 };
        lyndon_dfs(a, max_len, word, np, out);
        word.pop();
    }
}

/// Number of points with `sigma^p(w) = w`, i.e. `tr(A^p)`.
pub fn count_periodic_points(a: &IncidenceMatrix, p: usize) -> u128 {
    a.trace_power(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{e0, e1, e2};

    fn m(rows: &[&[u64]]) -> IncidenceMatrix {
        IncidenceMatrix::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    fn words(orbits: &[CodeOrbit]) -> Vec<Vec<usize>> {
        orbits
            .iter()
            .map(|o| o.canonical().word().to_vec())
            .collect()
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(IncidenceMatrix::of(&e1()), m(&[&[2]]));
        assert_eq!(IncidenceMatrix::of(&e2()), m(&[&[1, 1], &[1, 1]]));
        assert_eq!(IncidenceMatrix::of(&e0()), m(&[&[1]]));
    }

    #[test]
    fn binary_and_mixing() {
        assert!(!m(&[&[2]]).is_binary());
        assert!(IncidenceMatrix::of(&e2()).is_binary());
        assert!(m(&[&[1]]).is_binary());
        assert!(m(&[&[1, 1], &[1, 1]]).is_mixing());
        assert!(m(&[&[0, 1], &[1, 1]]).is_mixing());
        assert!(!m(&[&[1, 0], &[0, 1]]).is_mixing());
        assert!(!m(&[&[0, 1], &[1, 0]]).is_mixing());
        // primitive with exponent exactly at the Wielandt bound for n = 3
        assert!(m(&[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]).is_mixing());
    }

    #[test]
    fn admissible_cycles() {
        let a2 = IncidenceMatrix::of(&e2());
        assert!(a2.is_admissible_cycle(&[1, 2]).unwrap());
        assert!(!m(&[&[0, 1], &[1, 1]]).is_admissible_cycle(&[1, 1]).unwrap());
        assert!(m(&[&[0, 1], &[1, 1]]).is_admissible_cycle(&[2]).unwrap());
        assert!(a2.is_admissible_cycle(&[3]).is_err());
        assert!(a2.is_admissible_cycle(&[]).is_err());
    }

    #[test]
    fn orbit_enumeration_examples() {
        let a2 = IncidenceMatrix::of(&e2());
        assert_eq!(
            words(&enumerate_orbits(&a2, 1).unwrap()),
            vec![vec![1], vec![2]]
        );
        assert_eq!(
            words(&enumerate_orbits(&a2, 2).unwrap()),
            vec![vec![1], vec![2], vec![1, 2]]
        );
        let golden = m(&[&[0, 1], &[1, 1]]);
        assert_eq!(
            words(&enumerate_orbits(&golden, 2).unwrap()),
            vec![vec![2], vec![1, 2]]
        );
        assert_eq!(enumerate_orbits(&m(&[&[2]]), 2), Err(Error::NonBinary));
    }

    #[test]
    fn periodic_point_counts() {
        let a2 = IncidenceMatrix::of(&e2());
        assert_eq!(count_periodic_points(&a2, 1), 2);
        assert_eq!(count_periodic_points(&a2, 2), 4);
        for k in 0..5 {
            assert_eq!(count_periodic_points(&m(&[&[1]]), k), 1);
        }
    }

    #[test]
    fn codes_canonicalize_and_reject_powers() {
        let c = PeriodicCode::new(vec![2, 1, 2, 2]).unwrap();
        assert_eq!(c.orbit().canonical().word(), &[1, 2, 2, 2]);
        assert_eq!(c.shift(1).orbit(), c.orbit());
        assert_eq!(c.reversed().word(), &[2, 2, 2, 1]);
        assert_eq!(c.at(-1), 2);
        assert!(matches!(
            PeriodicCode::new(vec![1, 2, 1, 2]),
            Err(Error::NotPrimitive(_))
        ));
        assert_eq!(
            PeriodicCode::from_cycle(&[1, 2, 1, 2]).unwrap().word(),
            &[1, 2]
        );
        assert!(PeriodicCode::new(vec![]).is_err());
    }

    #[test]
    fn eventually_periodic_admissibility() {
        let a = m(&[&[0, 1], &[1, 1]]);
        assert!(EventuallyPeriodicCode::new(vec![2], vec![1], vec![2])
            .unwrap()
            .check_admissible(&a)
            .is_ok());
        assert!(EventuallyPeriodicCode::new(vec![1], vec![], vec![2])
            .unwrap()
            .check_admissible(&a)
            .is_err());
        assert!(EventuallyPeriodicCode::new(vec![2], vec![1, 1], vec![2])
            .unwrap()
            .check_admissible(&a)
            .is_err());
    }

    #[test]
    fn transpose_of_inverse() {
        let t = crate::examples::e3();
        assert_eq!(
            IncidenceMatrix::of(&t.invert()),
            IncidenceMatrix::of(&t).transpose()
        );
    }
}
