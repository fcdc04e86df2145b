use sf_bench::{
    compare_variants, fold_checksum, reports_to_csv, seeded_key, seeded_workload, time_encrypt,
    BenchError,
};
use sf_core::{derive_round_keys, encrypt_blocks, CipherVariant, ConstantSet};

fn v1() -> &'static ConstantSet {
    ConstantSet::builtin_v1()
}

#[test]
fn zero_runs_is_an_error() {
    let constants = v1().for_variant(CipherVariant::Sf64).unwrap();
    assert_eq!(
        time_encrypt(CipherVariant::Sf64, &constants, 1024, 0, 0, 1).unwrap_err(),
        BenchError::ZeroRuns
    );
}

#[test]
fn sub_block_workload_is_an_error() {
    let constants = v1().for_variant(CipherVariant::Sf192).unwrap();
    assert_eq!(
        time_encrypt(CipherVariant::Sf192, &constants, 23, 1, 0, 1).unwrap_err(),
        BenchError::WorkloadTooSmall {
            workload_bytes: 23,
            block_bytes: 24
        }
    );
}

/// The ciphertext computed inside the timed region is bit-identical to an
/// untimed encryption of the same workload.
#[test]
fn timing_never_alters_functional_output() {
    let variant = CipherVariant::Sf64;
    let constants = v1().for_variant(variant).unwrap();
    let seed = 42;
    let report = time_encrypt(variant, &constants, 4096, 3, 1, seed).unwrap();

    let workload = seeded_workload(4096, constants.block_bytes(), seed);
    let key = seeded_key(variant, seed);
    let schedule = derive_round_keys(&key, &constants).unwrap();
    let ct = encrypt_blocks(&workload, &schedule, &constants).unwrap();
    assert_eq!(report.output_checksum, fold_checksum(&ct));
    assert_eq!(report.workload_bytes, 4096);
}

#[test]
fn repeated_runs_report_independently_with_stable_output() {
    let variant = CipherVariant::Sf128;
    let constants = v1().for_variant(variant).unwrap();
    let a = time_encrypt(variant, &constants, 8192, 2, 0, 9).unwrap();
    let b = time_encrypt(variant, &constants, 8192, 2, 0, 9).unwrap();
    assert_eq!(a.output_checksum, b.output_checksum);
    assert_eq!(a.machine, b.machine);
    assert!(a.mean_ms >= 0.0 && b.mean_ms >= 0.0);
    assert!(a.stddev_ms >= 0.0);
}

#[test]
fn comparison_covers_all_variants_on_one_machine() {
    let cmp = compare_variants(v1(), 16 * 1024, 3, 1, 5).unwrap();
    assert_eq!(cmp.reports.len(), 3);
    assert_eq!(cmp.per_byte_ordering.len(), 3);
    let machine = &cmp.reports[0].machine;
    assert!(!machine.is_empty());
    for r in &cmp.reports {
        assert_eq!(&r.machine, machine);
    }
    let csv = reports_to_csv(&cmp.reports);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "variant,workload_bytes,runs,mean_ms,stddev_ms"
    );
    assert_eq!(lines.count(), 3);
}

/// Doubling the workload roughly doubles the mean: blockwise cost is
/// linear. Loose bounds absorb scheduler noise.
#[test]
fn workload_scaling_is_roughly_linear() {
    let variant = CipherVariant::Sf64;
    let constants = v1().for_variant(variant).unwrap();
    let small = time_encrypt(variant, &constants, 256 * 1024, 12, 3, 7).unwrap();
    let large = time_encrypt(variant, &constants, 512 * 1024, 12, 3, 7).unwrap();
    let ratio = large.mean_ms / small.mean_ms;
    assert!(
        (1.6..=2.4).contains(&ratio),
        "scaling ratio {ratio:.3} outside [1.6, 2.4] (small {:.3} ms, large {:.3} ms)",
        small.mean_ms,
        large.mean_ms
    );
}

#[test]
fn report_serializes_with_provenance() {
    let variant = CipherVariant::Sf64;
    let constants = v1().for_variant(variant).unwrap();
    let report = time_encrypt(variant, &constants, 1024, 1, 0, 3).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["variant"], "sf64");
    assert_eq!(json["runs"], 1);
    assert!(json["machine"].as_str().unwrap().contains("cpu="));
    assert!(json.get("pinned").is_some());
}
