#![no_main]

use libfuzzer_sys::fuzz_target;
use partsat::{parse_matrix, write_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(f) = parse_matrix(data) else { return };
    assert!(f.stats().relations_hold());
    if let Some(grid) = write_matrix(&f) {
        let g = parse_matrix(grid.as_bytes()).expect("written grid parses");
        assert!(g.eq_up_to_literal_order(&f));
    }
});
