#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(register) = blockade_core::io::parse_register(data) {
        // Accepted registers must satisfy their invariants; small ones can
        // build a Hamiltonian without panicking.
        if register.len() <= 4 {
            let _ = register.hamiltonian();
        }
    }
});
