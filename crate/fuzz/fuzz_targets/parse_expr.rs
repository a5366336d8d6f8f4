#![no_main]

use libfuzzer_sys::fuzz_target;
use vague_core::parse;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    match parse(src) {
        Ok(e) => {
            // the canonical form parses back to the same tree
            let again = parse(&e.to_string()).expect("canonical text parses");
            assert_eq!(again, e);
        }
        Err(err) => assert!(err.offset <= src.len()),
    }
});
