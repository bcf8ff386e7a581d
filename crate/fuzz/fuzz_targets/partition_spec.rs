#![no_main]

use libfuzzer_sys::fuzz_target;
use partsat::generators::fixture;
use partsat::{decide, PartitionSpec, DEFAULT_BUDGET};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = text.parse::<PartitionSpec>() else {
        return;
    };
    let f = fixture("example6").unwrap();
    let Ok(p) = spec.resolve(&f) else { return };
    assert_eq!(p.mu().iter().sum::<usize>(), f.num_clauses());
    let _ = decide(&f, &p, DEFAULT_BUDGET);
});
