//! Replays the fuzz corpus seeds through the fuzz targets' invariants.

use std::fs;
use std::path::PathBuf;

use vague_core::specio::{bundled, partition_to_json};
use vague_core::{invert, judge, load_partition_str, parse, ConnectiveTriple, TargetVector};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter_map(|p| fs::read_to_string(&p).ok().map(|s| (p, s)))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn parse_expr_seeds() {
    for (path, src) in seeds("parse_expr") {
        match parse(&src) {
            Ok(e) => assert_eq!(parse(&e.to_string()).unwrap(), e, "{}", path.display()),
            Err(err) => assert!(err.offset <= src.len()),
        }
    }
}

#[test]
fn load_partition_seeds() {
    let mut loaded = 0;
    for (path, text) in seeds("load_partition") {
        let Ok((p, t)) = load_partition_str(&text) else { continue };
        loaded += 1;
        let (q, u) = load_partition_str(&partition_to_json(&p, &t)).unwrap();
        assert_eq!((&p, t), (&q, u), "{}", path.display());
        let d = p.domain();
        for x in [d.lo(), d.hi()] {
            assert!(judge(&p, x).unwrap().degrees().all(|(_, v)| (0.0..=1.0).contains(&v)));
        }
    }
    assert!(loaded >= 3);
}

#[test]
fn parse_targets_seeds() {
    let (p, _) = load_partition_str(bundled::HEIGHT_NL_2006).unwrap();
    for (_, src) in seeds("parse_targets") {
        let Ok(t) = TargetVector::parse_pairs(src.split_whitespace(), 1e-9) else { continue };
        if let Ok(inv) = invert(&p, &t) {
            for c in inv.solutions.components() {
                assert!(c.lo <= c.hi && p.domain().contains(c.lo) && p.domain().contains(c.hi));
            }
        }
    }
}

#[test]
fn parse_triple_seeds() {
    for (_, src) in seeds("parse_triple") {
        if let Ok(t) = src.parse::<ConnectiveTriple>() {
            assert_eq!(t.to_string().parse::<ConnectiveTriple>().unwrap(), t);
            assert!(t.negation().is_strong());
        }
    }
}
