#![no_main]

use libfuzzer_sys::fuzz_target;
use vague_core::specio::partition_to_json;
use vague_core::{judge, load_partition_str};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok((p, t)) = load_partition_str(text) else {
        return;
    };
    let json = partition_to_json(&p, &t);
    let (q, u) = load_partition_str(&json).expect("saved documents load");
    assert_eq!((&p, t), (&q, u));
    let d = p.domain();
    for x in [d.lo(), (d.lo() + d.hi()) / 2.0, d.hi()] {
        let j = judge(&p, x).expect("domain points judge");
        assert!(j.degrees().all(|(_, v)| (0.0..=1.0).contains(&v)));
    }
});
