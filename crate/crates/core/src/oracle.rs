//! Exact piecewise-affine model of a geometric type on unit squares.
//!
//! Each rectangle becomes `[0,1]^2` cut into `h_i` horizontal strips of equal
//! height and `v_i` vertical strips of equal width. The branch on strip `j` is
//! affine, stretches vertically by `h_i`, contracts horizontally by `v_k` and
//! lands on vertical strip `l` of square `k`, flipping both axes when the sign
//! is negative.
//!
//! The model is used to recompute s-refinements from cut heights. It only uses
//! the public accessors of [`GeometricType`] and never calls into the
//! combinatorial refinement engine.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::shift::PeriodicCode;
use crate::types::{GeometricType, HLabel, Image, Sign, VLabel};

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Affine map `x -> a x + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub a: BigRational,
    pub b: BigRational,
}

impl Affine {
    fn identity() -> Self {
        Affine {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    pub fn apply(&self, x: &BigRational) -> BigRational {
        &self.a * x + &self.b
    }

    fn inverse(&self) -> Self {
        let a = BigRational::one() / &self.a;
        let b = -&self.b * &a;
        Affine { a, b }
    }

    /// `self ∘ other`
    fn after(&self, other: &Affine) -> Affine {
        Affine {
            a: &self.a * &other.a,
            b: &self.a * &other.b + &self.b,
        }
    }

    fn fixed_point(&self, what: &str) -> Result<BigRational> {
        if self.a.is_one() {
            return Err(Error::NonContracting(what.to_string()));
        }
        Ok(&self.b / (BigRational::one() - &self.a))
    }
}

/// The branch defined on one horizontal strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub square: usize,
    pub strip: usize,
    pub target: usize,
    pub x: Affine,
    pub y: Affine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineModel {
    /// `(h_i, v_i)` per square.
    pub squares: Vec<(usize, usize)>,
    /// `branches[i-1][j-1]`
    pub branches: Vec<Vec<Branch>>,
}

/// A point of the model with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub square: usize,
    pub x: BigRational,
    pub y: BigRational,
}

pub fn realize(t: &GeometricType) -> AffineModel {
    let squares: Vec<(usize, usize)> = (1..=t.n()).map(|i| (t.h(i), t.v(i))).collect();
    let branches = (1..=t.n())
        .map(|i| {
            let h = int(t.h(i));
            (1..=t.h(i))
                .map(|j| {
                    let Image { target, sign } = t.image(HLabel::new(i, j));
                    let v = int(t.v(target.k));
                    let (x, y) = match sign {
                        Sign::Plus => (
                            Affine {
                                a: BigRational::one() / &v,
                                b: int(target.l - 1) / &v,
                            },
                            Affine {
                                a: h.clone(),
                                b: -int(j - 1),
                            },
                        ),
                        Sign::Minus => (
                            Affine {
                                a: -BigRational::one() / &v,
                                b: int(target.l) / &v,
                            },
                            Affine {
                                a: -h.clone(),
                                b: int(j),
                            },
                        ),
                    };
                    Branch {
                        square: i,
                        strip: j,
                        target: target.k,
                        x,
                        y,
                    }
                })
                .collect()
        })
        .collect();
    AffineModel { squares, branches }
}

impl AffineModel {
    pub fn n(&self) -> usize {
        self.squares.len()
    }

    /// The branch of square `i` landing in square `k`.
    pub fn branch_to(&self, i: usize, k: usize, code: &str) -> Result<&Branch> {
        let mut hits = self.branches[i - 1].iter().filter(|b| b.target == k);
        match (hits.next(), hits.next()) {
            (Some(b), None) => Ok(b),
            (None, _) => Err(Error::Inadmissible {
                code: code.to_string(),
                from: i,
                to: k,
            }),
            _ => Err(Error::NonBinary),
        }
    }

    pub fn check_binary(&self) -> Result<()> {
        for row in &self.branches {
            let mut targets: Vec<usize> = row.iter().map(|b| b.target).collect();
            targets.sort_unstable();
            if targets.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NonBinary);
            }
        }
        Ok(())
    }

    /// Reads the combinatorics back off the branch coefficients.
    pub fn extract(&self) -> Result<GeometricType> {
        let mut widths = Vec::new();
        let mut rows = Vec::new();
        for (i, row) in self.branches.iter().enumerate() {
            let (h, v) = self.squares[i];
            widths.push(v);
            let mut images = Vec::new();
            for (j0, b) in row.iter().enumerate() {
                let vk = int(self.squares[b.target - 1].1);
                let (x0, x1) = (
                    b.x.apply(&BigRational::zero()),
                    b.x.apply(&BigRational::one()),
                );
                let low = if x0 < x1 { &x0 } else { &x1 };
                let scaled = low * &vk;
                let width = (&x1 - &x0).abs() * &vk;
                let y_lo = b.y.apply(&(int(j0) / int(h)));
                let y_hi = b.y.apply(&(int(j0 + 1) / int(h)));
                let spans = (y_lo.is_zero() && y_hi.is_one()) || (y_lo.is_one() && y_hi.is_zero());
                if !scaled.is_integer() || !width.is_one() || !spans {
                    return Err(Error::Inconsistent(format!(
                        "branch ({},{}) is not strip to strip",
                        i + 1,
                        j0 + 1
                    )));
                }
                let l = scaled.to_integer().to_usize().unwrap_or(0) + 1;
                let sign = if b.y.a.is_positive() {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                images.push(Image {
                    target: VLabel::new(b.target, l),
                    sign,
                });
            }
            rows.push(images);
        }
        GeometricType::new(widths, rows)
    }

    /// The periodic point with itinerary `w`, at phase 0.
    pub fn periodic_point(&self, w: &PeriodicCode) -> Result<RationalPoint> {
        let p = w.period();
        let name = w.to_string();
        let mut steps = Vec::with_capacity(p);
        for t in 0..p {
            steps.push(self.branch_to(w.at(t as i64), w.at(t as i64 + 1), &name)?);
        }
        let mut back = Affine::identity();
        for b in steps.iter().rev() {
            back = b.y.inverse().after(&back);
        }
        let mut forward = Affine::identity();
        for b in &steps {
            forward = b.x.after(&forward);
        }
        Ok(RationalPoint {
            square: w.at(0),
            x: forward.fixed_point(&name)?,
            y: back.fixed_point(&name)?,
        })
    }
}

/// The horizontal line through the periodic point of `sigma^t(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutLine {
    pub t: usize,
    pub code: usize,
    pub y: BigRational,
}

/// All cut lines of a family, sorted bottom to top in each square.
pub fn cut_lines(model: &AffineModel, family: &[PeriodicCode]) -> Result<Vec<Vec<CutLine>>> {
    let mut per_square: Vec<Vec<CutLine>> = vec![Vec::new(); model.n()];
    for (code, w) in family.iter().enumerate() {
        for t in 0..w.period() {
            let pt = model.periodic_point(&w.shift(t))?;
            let h = int(model.squares[pt.square - 1].0);
            if (&pt.y * h).is_integer() {
                return Err(Error::SBoundaryCode(w.to_string()));
            }
            per_square[pt.square - 1].push(CutLine { t, code, y: pt.y });
        }
    }
    for lines in &mut per_square {
        lines.sort_by(|a, b| a.y.cmp(&b.y));
        if let Some(w) = lines.windows(2).find(|w| w[0].y == w[1].y) {
            let name = |c: &CutLine| format!("{},{}", c.t, family[c.code]);
            return Err(Error::CutTie(name(&w[0]), name(&w[1])));
        }
    }
    Ok(per_square)
}

/// The s-refinement recomputed geometrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRefinement {
    pub refined: GeometricType,
    /// `labels[r-1] = (i, s)`
    pub labels: Vec<(usize, usize)>,
    pub cuts: Vec<Vec<CutLine>>,
}

struct SubImage {
    target: usize,
    x_low: BigRational,
    sign: Sign,
}

pub fn oracle_s_refine(t: &GeometricType, family: &[PeriodicCode]) -> Result<OracleRefinement> {
    let model = realize(t);
    model.check_binary()?;
    let cuts = cut_lines(&model, family)?;
    // band edges per square: 0, cut heights, 1
    let edges: Vec<Vec<BigRational>> = cuts
        .iter()
        .map(|lines| {
            let mut e = vec![BigRational::zero()];
            e.extend(lines.iter().map(|c| c.y.clone()));
            e.push(BigRational::one());
            e
        })
        .collect();
    let mut first_label = vec![1usize; model.n() + 1];
    for i in 1..=model.n() {
        first_label[i] = first_label[i - 1] + edges[i - 1].len() - 1;
    }
    let edge_index = |k: usize, y: &BigRational| -> Result<usize> {
        edges[k - 1].binary_search(y).map_err(|_| {
            Error::Inconsistent(format!("image edge {y} in square {k} is not a cut line"))
        })
    };

    let mut labels = Vec::new();
    let mut subs: Vec<Vec<SubImage>> = Vec::new();
    for (i0, e) in edges.iter().enumerate() {
        let (h, _) = model.squares[i0];
        for s in 1..e.len() {
            let (lo, hi) = (&e[s - 1], &e[s]);
            let mut row = Vec::new();
            for b in &model.branches[i0] {
                let strip_lo = int(b.strip - 1) / int(h);
                let strip_hi = int(b.strip) / int(h);
                let a = if lo > &strip_lo { lo.clone() } else { strip_lo };
                let z = if hi < &strip_hi { hi.clone() } else { strip_hi };
                if a >= z {
                    continue;
                }
                let (ya, yz) = (b.y.apply(&a), b.y.apply(&z));
                let sign = if ya < yz { Sign::Plus } else { Sign::Minus };
                let (ia, iz) = (edge_index(b.target, &ya)?, edge_index(b.target, &yz)?);
                let x0 = b.x.apply(&BigRational::zero());
                let x1 = b.x.apply(&BigRational::one());
                let x_low = if x0 < x1 { x0 } else { x1 };
                let bands: Vec<usize> = match sign {
                    Sign::Plus => (ia + 1..=iz).collect(),
                    Sign::Minus => (iz + 1..=ia).rev().collect(),
                };
                for band in bands {
                    row.push(SubImage {
                        target: first_label[b.target - 1] + band - 1,
                        x_low: x_low.clone(),
                        sign,
                    });
                }
            }
            labels.push((i0 + 1, s));
            subs.push(row);
        }
    }

    // vertical sub-rectangles of each refined rectangle, ordered left to right
    let total = labels.len();
    let mut columns: Vec<Vec<BigRational>> = vec![Vec::new(); total];
    for row in &subs {
        for sub in row {
            columns[sub.target - 1].push(sub.x_low.clone());
        }
    }
    for (r0, col) in columns.iter_mut().enumerate() {
        col.sort();
        let (i, _) = labels[r0];
        let v = model.squares[i - 1].1;
        let expected: Vec<BigRational> = (0..v).map(|l| int(l) / int(v)).collect();
        if *col != expected {
            return Err(Error::Inconsistent(format!(
                "images do not tile refined rectangle {}",
                r0 + 1
            )));
        }
    }
    let widths: Vec<usize> = columns.iter().map(Vec::len).collect();
    let rows: Vec<Vec<Image>> = subs
        .iter()
        .map(|row| {
            row.iter()
                .map(|sub| {
                    let l = columns[sub.target - 1]
                        .iter()
                        .position(|x| *x == sub.x_low)
                        .expect("column present")
                        + 1;
                    Image {
                        target: VLabel::new(sub.target, l),
                        sign: sub.sign,
                    }
                })
                .collect()
        })
        .collect();
    let refined = GeometricType::new(widths, rows)
        .map_err(|e| Error::Inconsistent(format!("oracle produced an invalid type: {e}")))?;
    Ok(OracleRefinement {
        refined,
        labels,
        cuts,
    })
}

/// Compares two cut lines in the same square by height.
pub fn compare_heights(
    model: &AffineModel,
    a: (&PeriodicCode, usize),
    b: (&PeriodicCode, usize),
) -> Result<Ordering> {
    let pa = model.periodic_point(&a.0.shift(a.1))?;
    let pb = model.periodic_point(&b.0.shift(b.1))?;
    if pa.square != pb.square {
        return Err(Error::HostMismatch(pa.square, pb.square));
    }
    Ok(pa.y.cmp(&pb.y))
}

const SIDE: f64 = 160.0;
const GAP: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn f(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

/// SVG drawing of the squares, their strips and the given cut lines.
pub fn svg_diagram(model: &AffineModel, cuts: &[Vec<CutLine>]) -> String {
    let n = model.n();
    let width = 2.0 * MARGIN + n as f64 * SIDE + n.saturating_sub(1) as f64 * GAP;
    let height = 2.0 * MARGIN + SIDE + 20.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">"#
    );
    for (i0, &(h, v)) in model.squares.iter().enumerate() {
        let x0 = MARGIN + i0 as f64 * (SIDE + GAP);
        let y0 = MARGIN;
        let _ = writeln!(out, r#"<g id="square-{}">"#, i0 + 1);
        for l in 1..v {
            let x = x0 + SIDE * l as f64 / v as f64;
            let _ = writeln!(
                out,
                r##"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{:.2}" stroke="#bbb" stroke-dasharray="3 3"/>"##,
                y0 + SIDE
            );
        }
        for j in 1..h {
            let y = y0 + SIDE * (1.0 - j as f64 / h as f64);
            let _ = writeln!(
                out,
                r##"<line x1="{x0}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#888"/>"##,
                x0 + SIDE
            );
        }
        if let Some(lines) = cuts.get(i0) {
            for c in lines {
                let y = y0 + SIDE * (1.0 - f(&c.y));
                let _ = writeln!(
                    out,
                    r##"<line x1="{x0}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#c0392b" stroke-width="1.5"/>"##,
                    x0 + SIDE
                );
                let _ = writeln!(
                    out,
                    r##"<text x="{:.2}" y="{:.2}" fill="#c0392b">({},{})</text>"##,
                    x0 + SIDE + 3.0,
                    y + 3.0,
                    c.t,
                    c.code + 1
                );
            }
        }
        let _ = writeln!(
            out,
            r#"<rect x="{x0}" y="{y0}" width="{SIDE}" height="{SIDE}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">R{}</text>"#,
            x0 + SIDE / 2.0,
            y0 + SIDE + 16.0,
            i0 + 1
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{e0, e1, e1m, e2, e3};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn code(w: &[usize]) -> PeriodicCode {
        PeriodicCode::new(w.to_vec()).unwrap()
    }

    #[test]
    fn realize_round_trips() {
        for t in [e0(), e1(), e1m(), e2(), e3()] {
            assert_eq!(realize(&t).extract().unwrap(), t);
        }
        let m = realize(&e1());
        assert_eq!(m.branches[0][1].y.apply(&q(1, 2)), BigRational::zero());
    }

    #[test]
    fn periodic_points_of_e2() {
        let m = realize(&e2());
        let p = m.periodic_point(&code(&[1])).unwrap();
        assert_eq!((p.square, p.y), (1, BigRational::zero()));
        let p = m.periodic_point(&code(&[1, 2])).unwrap();
        assert_eq!((p.square, p.y), (1, q(2, 3)));
        let p = m.periodic_point(&code(&[2, 1])).unwrap();
        assert_eq!((p.square, p.y), (2, q(1, 3)));
        let p = m.periodic_point(&code(&[1, 2, 2])).unwrap();
        assert_eq!(p.y, q(6, 7));
    }

    #[test]
    fn e0_is_not_contracting() {
        assert!(matches!(
            realize(&e0()).periodic_point(&code(&[1])),
            Err(Error::NonContracting(_))
        ));
    }

    #[test]
    fn oracle_refines_e2_to_e3() {
        let res = oracle_s_refine(&e2(), &[code(&[1, 2])]).unwrap();
        assert_eq!(res.refined, e3());
        assert_eq!(res.labels, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(oracle_s_refine(&e2(), &[]).unwrap().refined, e2());
    }

    #[test]
    fn oracle_errors() {
        assert!(matches!(
            oracle_s_refine(&e2(), &[code(&[1])]),
            Err(Error::SBoundaryCode(_))
        ));
        assert!(matches!(
            oracle_s_refine(&e2(), &[code(&[1, 2]), code(&[2, 1])]),
            Err(Error::CutTie(..))
        ));
        assert_eq!(oracle_s_refine(&e1(), &[]), Err(Error::NonBinary));
    }

    #[test]
    fn svg_mentions_every_cut() {
        let res = oracle_s_refine(&e2(), &[code(&[1, 2])]).unwrap();
        let svg = svg_diagram(&realize(&e2()), &res.cuts);
        assert!(svg.contains("(0,1)") && svg.contains("(1,1)"));
        assert!(svg.starts_with("<svg"));
    }
}
