#![no_main]

use libfuzzer_sys::fuzz_target;
use vague_core::ConnectiveTriple;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = src.parse::<ConnectiveTriple>() {
        assert_eq!(t.to_string().parse::<ConnectiveTriple>().unwrap(), t);
        assert!(t.negation().is_strong());
    }
});
