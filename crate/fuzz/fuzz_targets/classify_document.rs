#![no_main]

use fls_core::{classify, parse_system, residual, LinSolveConfig, RGrid, RESIDUAL_TOL};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok((sys, _)) = parse_system(text) else {
        return;
    };
    if sys.n() > 8 {
        return;
    }
    let grid = RGrid::uniform(5).expect("five points form a valid grid");
    let report = classify(&sys, &grid, &LinSolveConfig::default());
    if let Some(analysis) = &report.analysis {
        residual(&sys, &analysis.candidate, &grid, RESIDUAL_TOL)
            .expect("candidate length matches the system");
    }
});
