#![no_main]

use libfuzzer_sys::fuzz_target;
use partsat::Assignment;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for n in [0, 1, 5] {
        if let Ok(x) = Assignment::parse(text, n) {
            assert_eq!(x.len(), n);
            let again = Assignment::parse(&x.to_string(), n).expect("display parses");
            assert_eq!(again, x);
        }
    }
});
