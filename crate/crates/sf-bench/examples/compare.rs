//! Compare per-byte encryption cost of the three variants on this machine.
//!
//!     cargo run --release -p sf-bench --example compare

use sf_bench::{compare_variants, reports_to_csv};
use sf_core::ConstantSet;

fn main() {
    let cmp = compare_variants(ConstantSet::builtin_v1(), 1 << 20, 20, 3, 1).unwrap();
    print!("{}", reports_to_csv(&cmp.reports));
    for r in &cmp.reports {
        println!(
            "{}: {:.3} ms/pass  {:.3} ns/byte  (pinned: {})",
            r.variant, r.mean_ms, r.per_byte_ns, r.pinned
        );
    }
    println!("per-byte ordering: {}", cmp.per_byte_ordering.join(" < "));
}
