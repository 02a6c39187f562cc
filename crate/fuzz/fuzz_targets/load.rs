#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(src) = std::str::from_utf8(data) else { return };
    let _ = msplect::load(src);
});
