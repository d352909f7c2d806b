//! Geometric types: the quintuple `(n, {h_i, v_i}, rho, eps)`.
//!
//! Rectangles are indexed `1..=n`. Inside rectangle `i` the horizontal
//! sub-rectangles are numbered `1..=h_i` from the bottom and the vertical
//! sub-rectangles `1..=v_i` from the left. `rho` sends the horizontal label
//! `(i, j)` to the vertical label `(k, l)` of its image and `eps` records
//! whether the vertical orientation is preserved (`+1`) or reversed (`-1`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// An orientation sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus = -1,
    Plus = 1,
}

impl Sign {
    pub fn value(self) -> i32 {
        self as i32
    }

    pub fn from_value(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Horizontal label `(i, j)`: sub-rectangle `j` (from the bottom) of `R_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HLabel {
    pub i: usize,
    pub j: usize,
}

/// Vertical label `(k, l)`: sub-rectangle `l` (from the left) of `R_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VLabel {
    pub k: usize,
    pub l: usize,
}

impl HLabel {
    pub fn new(i: usize, j: usize) -> Self {
        HLabel { i, j }
    }
}

impl VLabel {
    pub fn new(k: usize, l: usize) -> Self {
        VLabel { k, l }
    }
}

impl fmt::Display for HLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl fmt::Display for VLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// Where a horizontal sub-rectangle goes: `rho(i,j)` together with `eps(i,j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Image {
    pub target: VLabel,
    pub sign: Sign,
}

/// A single failed invariant reported by [`TypeData::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyType,
    LengthMismatch {
        n: usize,
        h: usize,
        v: usize,
    },
    ZeroCount {
        which: char,
        i: usize,
    },
    SumMismatch {
        sum_h: usize,
        sum_v: usize,
    },
    MissingImage(HLabel),
    ExtraLabel(HLabel),
    TargetOutOfRange {
        from: HLabel,
        to: VLabel,
    },
    NotInjective {
        target: VLabel,
        sources: Vec<HLabel>,
    },
    NotSurjective(VLabel),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyType => write!(f, "n must be positive"),
            Violation::LengthMismatch { n, h, v } => {
                write!(f, "n={n} but h has {h} entries and v has {v}")
            }
            Violation::ZeroCount { which, i } => write!(f, "{which}_{i} must be positive"),
            Violation::SumMismatch { sum_h, sum_v } => {
                write!(f, "\u{3a3}h \u{2260} \u{3a3}v ({sum_h} vs {sum_v})")
            }
            Violation::MissingImage(a) => write!(f, "rho not total: no image for {a}"),
            Violation::ExtraLabel(a) => write!(f, "label {a} is not a horizontal label"),
            Violation::TargetOutOfRange { from, to } => {
                write!(f, "rho{from}={to} is not a vertical label")
            }
            Violation::NotInjective { target, sources } => {
                let s: Vec<String> = sources.iter().map(|a| a.to_string()).collect();
                write!(f, "rho not injective: {} all map to {target}", s.join(", "))
            }
            Violation::NotSurjective(b) => write!(f, "rho not surjective: {b} has no preimage"),
        }
    }
}

/// Unchecked geometric-type data, as read from text. Use [`TypeData::validate`]
/// for a report or [`GeometricType::try_from`] for a checked value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeData {
    pub n: usize,
    pub h: Vec<usize>,
    pub v: Vec<usize>,
    pub maps: BTreeMap<HLabel, Image>,
}

impl TypeData {
    /// Lists every violated invariant. An empty list means the data is a
    /// valid geometric type.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(Violation::EmptyType);
        }
        if self.h.len() != self.n || self.v.len() != self.n {
            out.push(Violation::LengthMismatch {
                n: self.n,
                h: self.h.len(),
                v: self.v.len(),
            });
            return out;
        }
        for (which, counts) in [('h', &self.h), ('v', &self.v)] {
            for (idx, &c) in counts.iter().enumerate() {
                if c == 0 {
                    out.push(Violation::ZeroCount { which, i: idx + 1 });
                }
            }
        }
        let sum_h: usize = self.h.iter().sum();
        let sum_v: usize = self.v.iter().sum();
        if sum_h != sum_v {
            out.push(Violation::SumMismatch { sum_h, sum_v });
        }

        let in_h = |a: &HLabel| a.i >= 1 && a.i <= self.n && a.j >= 1 && a.j <= self.h[a.i - 1];
        let in_v = |b: &VLabel| b.k >= 1 && b.k <= self.n && b.l >= 1 && b.l <= self.v[b.k - 1];

        for i in 1..=self.n {
            for j in 1..=self.h[i - 1] {
                if !self.maps.contains_key(&HLabel::new(i, j)) {
                    out.push(Violation::MissingImage(HLabel::new(i, j)));
                }
            }
        }
        let mut preimages: BTreeMap<VLabel, Vec<HLabel>> = BTreeMap::new();
        for (a, img) in &self.maps {
            if !in_h(a) {
                out.push(Violation::ExtraLabel(*a));
                continue;
            }
            if !in_v(&img.target) {
                out.push(Violation::TargetOutOfRange {
                    from: *a,
                    to: img.target,
                });
                continue;
            }
            preimages.entry(img.target).or_default().push(*a);
        }
        for (b, sources) in &preimages {
            if sources.len() > 1 {
                out.push(Violation::NotInjective {
                    target: *b,
                    sources: sources.clone(),
                });
            }
        }
        // Surjectivity only carries information once the counts agree.
        if sum_h == sum_v {
            for k in 1..=self.n {
                for l in 1..=self.v[k - 1] {
                    if !preimages.contains_key(&VLabel::new(k, l)) {
                        out.push(Violation::NotSurjective(VLabel::new(k, l)));
                    }
                }
            }
        }
        out
    }
}

/// A validated geometric type. Immutable; every accessor uses 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeometricType {
    h: Vec<usize>,
    v: Vec<usize>,
    images: Vec<Vec<Image>>,
    preimages: Vec<Vec<HLabel>>,
}

impl TryFrom<TypeData> for GeometricType {
    type Error = Error;

    fn try_from(data: TypeData) -> Result<Self> {
        let violations = data.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidType(violations));
        }
        let images = (1..=data.n)
            .map(|i| {
                (1..=data.h[i - 1])
                    .map(|j| data.maps[&HLabel::new(i, j)])
                    .collect()
            })
            .collect();
        Ok(Self::assemble(data.h, data.v, images))
    }
}

impl GeometricType {
    /// Builds a type from per-rectangle image lists: `images[i-1][j-1]` is the
    /// image of `(i, j)`, so `h_i = images[i-1].len()`.
    pub fn new(v: Vec<usize>, images: Vec<Vec<Image>>) -> Result<Self> {
        let h: Vec<usize> = images.iter().map(Vec::len).collect();
        let mut maps = BTreeMap::new();
        for (i, row) in images.iter().enumerate() {
            for (j, img) in row.iter().enumerate() {
                maps.insert(HLabel::new(i + 1, j + 1), *img);
            }
        }
        GeometricType::try_from(TypeData {
            n: h.len(),
            h,
            v,
            maps,
        })
    }

    /// Convenience constructor from `(k, l, sign)` triples.
    pub fn from_triples(v: Vec<usize>, rows: &[&[(usize, usize, i32)]]) -> Result<Self> {
        let images = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(k, l, s)| Image {
                        target: VLabel::new(k, l),
                        sign: Sign::from_value(s).expect("sign must be +1 or -1"),
                    })
                    .collect()
            })
            .collect();
        GeometricType::new(v, images)
    }

    fn assemble(h: Vec<usize>, v: Vec<usize>, images: Vec<Vec<Image>>) -> Self {
        let mut preimages: Vec<Vec<HLabel>> =
            v.iter().map(|&vk| vec![HLabel::new(0, 0); vk]).collect();
        for (i, row) in images.iter().enumerate() {
            for (j, img) in row.iter().enumerate() {
                preimages[img.target.k - 1][img.target.l - 1] = HLabel::new(i + 1, j + 1);
            }
        }
        GeometricType {
            h,
            v,
            images,
            preimages,
        }
    }

    pub fn data(&self) -> TypeData {
        let mut maps = BTreeMap::new();
        for a in self.h_labels() {
            maps.insert(a, self.image(a));
        }
        TypeData {
            n: self.n(),
            h: self.h.clone(),
            v: self.v.clone(),
            maps,
        }
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    /// `h_i`, the number of horizontal sub-rectangles of `R_i`.
    pub fn h(&self, i: usize) -> usize {
        self.h[i - 1]
    }

    /// `v_k`, the number of vertical sub-rectangles of `R_k`.
    pub fn v(&self, k: usize) -> usize {
        self.v[k - 1]
    }

    pub fn heights(&self) -> &[usize] {
        &self.h
    }

    pub fn widths(&self) -> &[usize] {
        &self.v
    }

    /// `alpha(T)`, the total number of sub-rectangles.
    pub fn alpha(&self) -> usize {
        self.h.iter().sum()
    }

    pub fn image(&self, a: HLabel) -> Image {
        self.images[a.i - 1][a.j - 1]
    }

    pub fn rho(&self, a: HLabel) -> VLabel {
        self.image(a).target
    }

    pub fn eps(&self, a: HLabel) -> Sign {
        self.image(a).sign
    }

    /// First component of `rho`: the rectangle that `(i, j)` is sent into.
    pub fn xi(&self, i: usize, j: usize) -> usize {
        self.images[i - 1][j - 1].target.k
    }

    /// The horizontal label whose image is the vertical label `b`.
    pub fn preimage(&self, b: VLabel) -> HLabel {
        self.preimages[b.k - 1][b.l - 1]
    }

    pub fn contains(&self, a: HLabel) -> bool {
        a.i >= 1 && a.i <= self.n() && a.j >= 1 && a.j <= self.h(a.i)
    }

    /// Horizontal labels in lexicographic order.
    pub fn h_labels(&self) -> impl Iterator<Item = HLabel> + '_ {
        (1..=self.n()).flat_map(move |i| (1..=self.h(i)).map(move |j| HLabel::new(i, j)))
    }

    /// Position of `a` in the lexicographic order of `H(T)`, in `1..=alpha`.
    pub fn lex_index(&self, a: HLabel) -> Result<usize> {
        if !self.contains(a) {
            return Err(Error::LabelOutOfRange { i: a.i, j: a.j });
        }
        Ok(self.h[..a.i - 1].iter().sum::<usize>() + a.j)
    }

    /// Inverse of [`GeometricType::lex_index`].
    pub fn lex_unindex(&self, r: usize) -> Result<HLabel> {
        if r == 0 || r > self.alpha() {
            return Err(Error::IndexOutOfRange(r));
        }
        let mut rest = r;
        for (idx, &hi) in self.h.iter().enumerate() {
            if rest <= hi {
                return Ok(HLabel::new(idx + 1, rest));
            }
            rest -= hi;
        }
        unreachable!("r was checked against alpha")
    }

    /// The inverse type: horizontal and vertical roles are exchanged, so
    /// `rho_inv(k,l) = (i,j)` whenever `rho(i,j) = (k,l)`, with the same sign.
    pub fn invert(&self) -> GeometricType {
        let images: Vec<Vec<Image>> = (1..=self.n())
            .map(|k| {
                (1..=self.v(k))
                    .map(|l| {
                        let a = self.preimage(VLabel::new(k, l));
                        Image {
                            target: VLabel::new(a.i, a.j),
                            sign: self.eps(a),
                        }
                    })
                    .collect()
            })
            .collect();
        GeometricType::assemble(self.v.clone(), self.h.clone(), images)
    }
}
