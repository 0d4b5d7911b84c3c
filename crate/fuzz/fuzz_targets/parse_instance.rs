#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Must reject or accept without panicking; accepted instances carry
    // validated geometry, so exercise the derived quantities too.
    if let Ok(instance) = blockade_core::io::parse_instance(data) {
        let edges = instance.graph.induced_edges();
        assert_eq!(edges, instance.target.edges());
        let _ = instance.graph.lambda_breaks();
        if instance.target.n() <= 12 {
            let _ = instance.target.mis_enumerate();
        }
    }
});
