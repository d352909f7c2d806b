//! Text reports for refinement results and boundary codes.

use std::fmt::Write as _;

use crate::boundary::{
    boundary_sets, s_boundary_positive_code, u_boundary_negative_code, BoundarySets, SULabel,
};
use crate::error::Result;
use crate::refine::{Direction, RefinementChain, RefinementResult};
use crate::shift::PeriodicCode;
use crate::text::{serialize_codes, serialize_type};
use crate::types::GeometricType;

fn comma(w: &[usize]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn body(out: &mut String, res: &RefinementResult) {
    for (r0, (i, s)) in res.labels.iter().enumerate() {
        let _ = writeln!(out, "LABEL {}=({i},{s})", r0 + 1);
    }
    for i in 1..=res.source.n() {
        let _ = write!(out, "ORDER {i} :");
        for c in res.order.sorted(i) {
            let _ = write!(out, " ({},{})", c.t, c.code + 1);
        }
        out.push('\n');
    }
    for (code, w) in res.family.iter().enumerate() {
        for t in 0..w.period() {
            let host = w.at(t as i64);
            let _ = writeln!(
                out,
                "CUT ({t},{}) host={host} pos={}",
                code + 1,
                res.order.position(t, code)
            );
        }
    }
}

/// Refined type, label map, order table and cut positions.
pub fn serialize_refinement(res: &RefinementResult) -> String {
    let mut out = serialize_type(&res.refined);
    body(&mut out, res);
    out
}

/// Final type followed by one block per stage. Unstable stages list their
/// codes and cut times in reversed time, as fed to the inverse type.
pub fn serialize_chain(chain: &RefinementChain) -> String {
    let mut out = serialize_type(chain.refined());
    for (k, stage) in chain.stages.iter().enumerate() {
        let dir = match stage.direction {
            Direction::Stable => 's',
            Direction::Unstable => 'u',
        };
        let _ = writeln!(out, "STAGE {} {dir}", k + 1);
        out.push_str(&serialize_codes(&stage.family));
        body(&mut out, stage);
    }
    out
}

fn set_line(out: &mut String, name: &str, set: &std::collections::BTreeSet<PeriodicCode>) {
    out.push_str(name);
    for c in set {
        let _ = write!(out, " {c}");
    }
    out.push('\n');
}

/// Boundary labels, periodic boundary sets and the corner verdict.
pub fn codes_report(t: &GeometricType) -> Result<String> {
    let sets: BoundarySets = boundary_sets(t)?;
    let mut out = String::new();
    for l in SULabel::all(t.n()) {
        let s = s_boundary_positive_code(t, l);
        let _ = writeln!(
            out,
            "SLABEL {l} : pre={} cyc={}",
            comma(&s.preperiod),
            comma(&s.cycle)
        );
    }
    for l in SULabel::all(t.n()) {
        let u = u_boundary_negative_code(t, l);
        let _ = writeln!(
            out,
            "ULABEL {l} : pre={} cyc={}",
            comma(&u.preperiod),
            comma(&u.cycle)
        );
    }
    set_line(&mut out, "S", &sets.s);
    set_line(&mut out, "U", &sets.u);
    set_line(&mut out, "B", &sets.b);
    set_line(&mut out, "C", &sets.c);
    let _ = writeln!(out, "CORNER {}", sets.b == sets.c);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::e2;
    use crate::refine::s_refine;

    #[test]
    fn e2_refinement_block() {
        let w = PeriodicCode::new(vec![1, 2]).unwrap();
        let text = serialize_refinement(&s_refine(&e2(), &[w]).unwrap());
        let tail: Vec<&str> = text
            .lines()
            .skip_while(|l| !l.starts_with("LABEL"))
            .collect();
        assert_eq!(
            tail,
            [
                "LABEL 1=(1,1)",
                "LABEL 2=(1,2)",
                "LABEL 3=(2,1)",
                "LABEL 4=(2,2)",
                "ORDER 1 : (0,1)",
                "ORDER 2 : (1,1)",
                "CUT (0,1) host=1 pos=1",
                "CUT (1,1) host=2 pos=1",
            ]
        );
    }

    #[test]
    fn e2_codes_report() {
        let r = codes_report(&e2()).unwrap();
        assert!(r.contains("SLABEL (1,-) : pre= cyc=1\n"));
        assert!(r.ends_with("CORNER true\n"));
    }
}
