#![no_main]

use fls_core::SystemDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = SystemDocument::parse(text) else {
        return;
    };
    let Ok(sys) = doc.to_system() else {
        return;
    };
    let again = SystemDocument::from_system(&sys, doc.grid_points);
    let text = again.to_json_pretty();
    let reparsed = SystemDocument::parse(&text).expect("re-parsing a serialized document");
    assert_eq!(reparsed, again);
});
