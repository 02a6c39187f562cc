#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(expr) = msplect::parse_expr(src) {
        let printed = msplect::print_expr(&expr);
        let again = msplect::parse_expr(&printed).expect("printed expression must parse");
        assert_eq!(again, expr);
    }
});
