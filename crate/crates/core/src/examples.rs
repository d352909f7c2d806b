//! The small worked types used throughout the tests and the demo.

use crate::types::GeometricType;

/// One rectangle, one sub-rectangle, identity map.
pub fn e0() -> GeometricType {
    GeometricType::from_triples(vec![1], &[&[(1, 1, 1)]]).unwrap()
}

/// One rectangle crossed twice by its own image (a baker-like map).
pub fn e1() -> GeometricType {
    GeometricType::from_triples(vec![2], &[&[(1, 1, 1), (1, 2, 1)]]).unwrap()
}

/// [`e1`] with the upper sub-rectangle flipped.
pub fn e1m() -> GeometricType {
    GeometricType::from_triples(vec![2], &[&[(1, 1, 1), (1, 2, -1)]]).unwrap()
}

/// The binary refinement of [`e1`]; incidence matrix `[[1,1],[1,1]]`.
pub fn e2() -> GeometricType {
    GeometricType::from_triples(
        vec![2, 2],
        &[&[(1, 1, 1), (2, 1, 1)], &[(1, 2, 1), (2, 2, 1)]],
    )
    .unwrap()
}

/// The s-boundary refinement of [`e2`] along the orbit `(1 2)`.
pub fn e3() -> GeometricType {
    GeometricType::from_triples(
        vec![2, 2, 2, 2],
        &[
            &[(1, 1, 1), (2, 1, 1), (3, 1, 1)],
            &[(4, 1, 1)],
            &[(1, 2, 1)],
            &[(2, 2, 1), (3, 2, 1), (4, 2, 1)],
        ],
    )
    .unwrap()
}
