#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use vague_core::specio::bundled;
use vague_core::{load_partition_str, ConnectiveTriple, Interval, PiecewiseLinearFn, VagueExpr, VaguePartition};

pub fn height() -> (Arc<VaguePartition>, ConnectiveTriple) {
    let (p, t) = load_partition_str(bundled::HEIGHT_NL_2006).unwrap();
    (Arc::new(p), t)
}

pub fn grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..=n).map(move |i| i as f64 / n as f64)
}

/// Random PL function on `domain` with `k` interior breakpoints.
pub fn random_pl<R: Rng>(rng: &mut R, domain: Interval, k: usize) -> PiecewiseLinearFn {
    let mut xs: Vec<f64> = (0..k).map(|_| rng.gen_range(domain.lo()..domain.hi())).collect();
    xs.push(domain.lo());
    xs.push(domain.hi());
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let pts = xs
        .into_iter()
        .map(|x| {
            let y = match rng.gen_range(0..4) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.gen_range(0.0..=1.0),
            };
            (x, y)
        })
        .collect();
    PiecewiseLinearFn::on(domain, pts).unwrap()
}

/// Trapezoid-like shape on [0, 1] with breakpoints on the k/20 lattice.
pub fn lattice_pl<R: Rng>(rng: &mut R) -> PiecewiseLinearFn {
    let mut xs: Vec<u32> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(1..20)).collect();
    xs.extend([0, 20]);
    xs.sort_unstable();
    xs.dedup();
    let levels = [0.0, 0.25, 0.5, 1.0];
    let pts = xs
        .into_iter()
        .map(|k| (k as f64 / 20.0, levels[rng.gen_range(0..levels.len())]))
        .collect();
    PiecewiseLinearFn::new(pts).unwrap()
}

pub const ATOMS: [&str; 3] = ["short", "medium", "tall"];

pub fn arb_expr(depth: u32) -> impl Strategy<Value = VagueExpr> {
    let leaf = prop_oneof![
        1 => Just(VagueExpr::Bot),
        1 => Just(VagueExpr::Top),
        6 => proptest::sample::select(ATOMS.to_vec()).prop_map(VagueExpr::atom),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(VagueExpr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| VagueExpr::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| VagueExpr::or(a, b)),
        ]
    })
}
