#![no_main]

use libfuzzer_sys::fuzz_target;
use vague_core::specio::bundled;
use vague_core::{invert, load_partition_str, TargetVector};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(targets) = TargetVector::parse_pairs(src.split_whitespace(), 1e-9) else {
        return;
    };
    let (p, _) = load_partition_str(bundled::HEIGHT_NL_2006).unwrap();
    if let Ok(inv) = invert(&p, &targets) {
        for c in inv.solutions.components() {
            assert!(c.lo <= c.hi && p.domain().contains(c.lo) && p.domain().contains(c.hi));
        }
    }
});
