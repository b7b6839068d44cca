#![no_main]

use libfuzzer_sys::fuzz_target;
use wander_core::algebra::BaseField;
use wander_core::expr::parse_class;

fn field(b: u8) -> BaseField {
    match b % 4 {
        0 | 1 => BaseField::Rational,
        2 => BaseField::Prime(2),
        _ => BaseField::Prime(5),
    }
}

fuzz_target!(|data: &[u8]| {
    let Some((&b, rest)) = data.split_first() else { return };
    if rest.len() > 256 {
        return;
    }
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(c) = parse_class(text, field(b)) {
            let _ = c.to_string();
        }
    }
});
