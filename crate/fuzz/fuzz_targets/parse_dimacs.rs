#![no_main]

use libfuzzer_sys::fuzz_target;
use partsat::{parse_dimacs, sigma_extremes, write_dimacs};

fuzz_target!(|data: &[u8]| {
    let Ok(f) = parse_dimacs(data) else { return };
    assert!(f.stats().relations_hold());
    let ext = sigma_extremes(&f);
    assert_eq!(ext.sigma_min + ext.sigma_max, f.stats().total);
    let text = write_dimacs(&f);
    let g = parse_dimacs(text.as_bytes()).expect("written DIMACS parses");
    assert_eq!(g.stats(), f.stats());
    assert_eq!(write_dimacs(&g), text);
});
