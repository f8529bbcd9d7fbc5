#![no_main]

use libfuzzer_sys::fuzz_target;
use polyfrac::Ring;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = Ring::new(&["x", "y", "z"]).unwrap();
    if let Ok(p) = ring.parse(text) {
        let printed = p.to_string();
        assert_eq!(ring.parse(&printed).unwrap(), p, "{printed}");
    }
});
