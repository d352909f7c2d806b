//! Browser bindings. Each export takes the text formats used by the command
//! line tool and returns text (or SVG markup); errors come back as strings.

use wasm_bindgen::prelude::*;

use geotype::oracle::{cut_lines, oracle_s_refine, realize, svg_diagram};
use geotype::refine::{bin_refine, corner_refine, s_refine};
use geotype::report::{codes_report, serialize_chain, serialize_refinement};
use geotype::text::{parse_codes, parse_type, serialize_type};
use geotype::GeometricType;

fn load(text: &str) -> Result<GeometricType, String> {
    parse_type(text).map_err(|e| format!("type: {e}"))
}

pub fn binary_text(text: &str) -> Result<String, String> {
    Ok(serialize_type(&bin_refine(&load(text)?).refined))
}

/// Refinement block followed by the oracle verdict.
pub fn refine_text(text: &str, codes: &str) -> Result<String, String> {
    let t = load(text)?;
    let w = parse_codes(codes).map_err(|e| format!("codes: {e}"))?;
    let res = s_refine(&t, &w).map_err(|e| e.to_string())?;
    let verdict = match oracle_s_refine(&t, &w) {
        Ok(o) if o.refined == res.refined && o.labels == res.labels => {
            "affine model agrees".to_string()
        }
        Ok(_) => "affine model DISAGREES".to_string(),
        Err(e) => format!("affine model failed: {e}"),
    };
    Ok(format!("{}# {verdict}\n", serialize_refinement(&res)))
}

pub fn diagram_svg(text: &str, codes: &str) -> Result<String, String> {
    let t = load(text)?;
    let w = parse_codes(codes).map_err(|e| format!("codes: {e}"))?;
    let model = realize(&t);
    let cuts = cut_lines(&model, &w).map_err(|e| e.to_string())?;
    Ok(svg_diagram(&model, &cuts))
}

/// Boundary code report, then the corner refinement.
pub fn corner_text(text: &str) -> Result<String, String> {
    let t = load(text)?;
    let report = codes_report(&t).map_err(|e| e.to_string())?;
    let chain = corner_refine(&t).map_err(|e| e.to_string())?;
    Ok(format!("{report}\n{}", serialize_chain(&chain)))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn binary(text: &str) -> Result<String, JsValue> {
    js(binary_text(text))
}

#[wasm_bindgen]
pub fn refine(text: &str, codes: &str) -> Result<String, JsValue> {
    js(refine_text(text, codes))
}

#[wasm_bindgen]
pub fn diagram(text: &str, codes: &str) -> Result<String, JsValue> {
    js(diagram_svg(text, codes))
}

#[wasm_bindgen]
pub fn corner(text: &str) -> Result<String, JsValue> {
    js(corner_text(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: &str = "GEOTYPE 1\nn=1\nh=2\nv=2\nmap (1,1)->(1,1) +\nmap (1,2)->(1,2) +\n";

    #[test]
    fn demo_operations() {
        let e2 = binary_text(E1).unwrap();
        assert!(e2.starts_with("GEOTYPE 1\nn=2\n"));
        let refined = refine_text(&e2, "CODE 1 2\n").unwrap();
        assert!(refined.contains("n=4\n") && refined.ends_with("# affine model agrees\n"));
        assert!(diagram_svg(&e2, "CODE 1 2\n").unwrap().contains("(0,1)"));
        assert!(corner_text(&e2).unwrap().contains("CORNER true"));
        assert!(refine_text(&e2, "CODE 1\n")
            .unwrap_err()
            .contains("s-boundary code"));
        assert!(binary_text("nonsense").is_err());
    }
}
