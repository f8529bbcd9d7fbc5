#![no_main]

use libfuzzer_sys::fuzz_target;
use polyfrac::PolyMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = PolyMatrix::from_json_str(text) {
        let again = PolyMatrix::from_json_str(&m.to_json_string()).unwrap();
        assert_eq!(again, m);
    }
});
