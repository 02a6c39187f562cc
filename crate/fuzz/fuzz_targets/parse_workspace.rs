#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(ws) = msplect::parse_workspace(src) {
        let printed = msplect::print_workspace(&ws);
        let again = msplect::parse_workspace(&printed).expect("printed workspace must parse");
        assert_eq!(msplect::print_workspace(&again), printed);
    }
});
