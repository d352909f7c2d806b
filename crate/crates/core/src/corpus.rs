//! Seeded generators for test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::per_s_codes;
use crate::shift::{enumerate_orbits, IncidenceMatrix, PeriodicCode};
use crate::types::{GeometricType, HLabel, Image, Sign, VLabel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A valid type with `1 <= n <= max_n` and all `h_i, v_i` in `1..=max_hv`.
pub fn random_type(rng: &mut impl Rng, max_n: usize, max_hv: usize) -> GeometricType {
    let n = rng.gen_range(1..=max_n);
    let h: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_hv)).collect();
    let total: usize = h.iter().sum();
    let mut v = vec![1usize; n];
    for _ in n..total {
        let open: Vec<usize> = (0..n).filter(|&k| v[k] < max_hv).collect();
        v[*open.choose(rng).expect("total fits")] += 1;
    }
    let mut targets: Vec<VLabel> = (1..=n)
        .flat_map(|k| (1..=v[k - 1]).map(move |l| VLabel::new(k, l)))
        .collect();
    targets.shuffle(rng);
    let mut it = targets.into_iter();
    let rows = h
        .iter()
        .map(|&hi| {
            (0..hi)
                .map(|_| Image {
                    target: it.next().unwrap(),
                    sign: random_sign(rng),
                })
                .collect()
        })
        .collect();
    GeometricType::new(v, rows).expect("generated type is valid")
}

/// A type with binary mixing incidence matrix and `n <= max_n` rectangles.
/// Sub-rectangle orders and signs are random.
pub fn random_binary_mixing(rng: &mut impl Rng, max_n: usize) -> GeometricType {
    loop {
        let n = rng.gen_range(1..=max_n);
        let a: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| u64::from(rng.gen_bool(0.55))).collect())
            .collect();
        let m = IncidenceMatrix::new(a.clone());
        if !m.is_mixing() {
            continue;
        }
        // n = 1 with a single loop is the degenerate one-strip type
        if n == 1 {
            continue;
        }
        let mut rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (1..=n).filter(|&k| a[i][k - 1] == 1).collect())
            .collect();
        for r in &mut rows {
            r.shuffle(rng);
        }
        let mut columns: Vec<Vec<HLabel>> = vec![Vec::new(); n];
        for (i0, r) in rows.iter().enumerate() {
            for (j0, &k) in r.iter().enumerate() {
                columns[k - 1].push(HLabel::new(i0 + 1, j0 + 1));
            }
        }
        let mut images: Vec<Vec<Option<Image>>> =
            rows.iter().map(|r| vec![None; r.len()]).collect();
        for (k0, col) in columns.iter_mut().enumerate() {
            col.shuffle(rng);
            for (l0, src) in col.iter().enumerate() {
                images[src.i - 1][src.j - 1] = Some(Image {
                    target: VLabel::new(k0 + 1, l0 + 1),
                    sign: random_sign(rng),
                });
            }
        }
        let v = columns.iter().map(Vec::len).collect();
        let images = images
            .into_iter()
            .map(|r| r.into_iter().map(Option::unwrap).collect())
            .collect();
        return GeometricType::new(v, images).expect("generated type is valid");
    }
}

/// Distinct non-s-boundary orbits of `t` with total period at most `max_total`.
/// `t` must have binary incidence.
pub fn random_family(rng: &mut impl Rng, t: &GeometricType, max_total: usize) -> Vec<PeriodicCode> {
    let a = IncidenceMatrix::of(t);
    let boundary = per_s_codes(t).expect("binary type");
    let mut pool: Vec<PeriodicCode> = enumerate_orbits(&a, max_total)
        .expect("binary type")
        .into_iter()
        .map(|o| o.canonical().clone())
        .filter(|w| !boundary.contains(w))
        .collect();
    pool.shuffle(rng);
    let budget = rng.gen_range(1..=max_total);
    let mut used = 0;
    let mut family = Vec::new();
    for w in pool {
        if used + w.period() <= budget {
            used += w.period();
            let phase = rng.gen_range(0..w.period());
            family.push(w.shift(phase));
        }
    }
    family
}
