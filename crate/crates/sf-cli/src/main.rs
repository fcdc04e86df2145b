//! `sf` — encryption, avalanche analysis, image statistics and timing for
//! the Secure Force cipher family.

mod error;
mod report;

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sf_analysis::{
    avalanche_suite, entropy_report, four_flip_preset, histogram, mean_ratio, sac_verdict,
    Histogram256, TrialSpec,
};
use sf_bench::{compare_variants, reports_to_csv, time_encrypt};
use sf_core::hex::parse_hex;
use sf_core::{
    derive_round_keys, validate_constants, Block, CipherConstants, CipherKey, CipherVariant,
    ConstantSet,
};
use sf_imagio::{
    decrypt_image, encrypt_image, load_image, read_blob, write_blob, write_p5, GrayImage,
};

use error::CliError;
use report::{Meta, PaperReport};

const CONSTANTS_ENV: &str = "SF_CONSTANTS";

#[derive(Parser)]
#[command(
    name = "sf",
    version,
    about = "Secure Force (SF) cipher toolkit: block and image encryption, \
             avalanche analysis, entropy statistics and timing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the five round keys for a cipher key
    ExpandKey(ExpandKeyArgs),
    /// Encrypt one block, printing uppercase hex
    Encrypt(BlockCryptArgs),
    /// Decrypt one block (reads the ciphertext from stdin when --ct is absent)
    Decrypt(BlockCryptArgs),
    /// Run bit-flip avalanche trials and the strict-avalanche verdict
    Avalanche(AvalancheArgs),
    /// Encrypt a PGM/PPM image, writing the display image and ciphertext blob
    ImageEncrypt(ImageEncryptArgs),
    /// Decrypt a ciphertext blob back into a PGM image
    ImageDecrypt(ImageDecryptArgs),
    /// Entropy of an image before and after encryption
    Entropy(EntropyArgs),
    /// 256-bin intensity histogram as `intensity,count` CSV
    Histogram(HistogramArgs),
    /// Time bulk encryption on this machine
    Bench(BenchArgs),
    /// One JSON document with the avalanche, entropy and timing tables
    PaperReport(PaperReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct CommonOpts {
    /// Constant-set file (overrides the embedded v1 set and $SF_CONSTANTS)
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    /// RNG seed; recorded in every report
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format (defaults per subcommand)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write primary output to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn variant_arg(name: &str) -> Result<CipherVariant, String> {
    CipherVariant::from_name(name).ok_or_else(|| format!("unknown variant {name:?}, expected sf64|sf128|sf192"))
}

#[derive(Args)]
struct ExpandKeyArgs {
    #[arg(long, value_parser = variant_arg)]
    variant: CipherVariant,
    /// Cipher key as uppercase or lowercase hex at the variant width
    #[arg(long)]
    key: String,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct BlockCryptArgs {
    #[arg(long, value_parser = variant_arg)]
    variant: CipherVariant,
    #[arg(long)]
    key: String,
    /// Plaintext block (encrypt only)
    #[arg(long)]
    pt: Option<String>,
    /// Ciphertext block (decrypt only; stdin when omitted)
    #[arg(long)]
    ct: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AvalanchePreset {
    /// The fixed four-trial protocol (two key flips, two plaintext flips)
    FourFlip,
    /// Aggregate the vendored characterization ratios instead of running trials
    Reference,
}

#[derive(Args)]
struct AvalancheArgs {
    #[arg(long, value_parser = variant_arg)]
    variant: CipherVariant,
    /// Number of seeded random trials (ignored when --preset is given)
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, value_enum)]
    preset: Option<AvalanchePreset>,
    /// Strict-avalanche tolerance around the ideal 0.5
    #[arg(long, default_value_t = 0.05)]
    sac_tolerance: f64,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct ImageEncryptArgs {
    #[arg(long, value_parser = variant_arg)]
    variant: CipherVariant,
    #[arg(long)]
    key: String,
    /// Source image (binary PGM or PPM, maxval 255)
    #[arg(long)]
    image: PathBuf,
    /// Where to write the encrypted display image (PGM)
    #[arg(long)]
    out_image: PathBuf,
    /// Where to write the ciphertext blob
    #[arg(long)]
    out_blob: PathBuf,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct ImageDecryptArgs {
    #[arg(long, value_parser = variant_arg)]
    variant: CipherVariant,
    #[arg(long)]
    key: String,
    /// Ciphertext blob produced by image-encrypt
    #[arg(long)]
    blob: PathBuf,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct EntropyArgs {
    #[arg(long, value_parser = variant_arg)]
    variant: CipherVariant,
    #[arg(long)]
    key: String,
    #[arg(long)]
    image: PathBuf,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct HistogramArgs {
    #[arg(long)]
    image: PathBuf,
    /// Histogram the ECB-encrypted image instead of the source
    #[arg(long)]
    encrypted: bool,
    #[arg(long, value_parser = variant_arg, required_if_eq("encrypted", "true"))]
    variant: Option<CipherVariant>,
    #[arg(long, required_if_eq("encrypted", "true"))]
    key: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct BenchArgs {
    /// Single variant; omit with --all
    #[arg(long, value_parser = variant_arg, conflicts_with = "all")]
    variant: Option<CipherVariant>,
    /// Benchmark all three variants and report the per-byte ordering
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 1 << 20)]
    workload_bytes: usize,
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = 10)]
    warmup: usize,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct PaperReportArgs {
    /// Directory of PGM/PPM images for the entropy tables (rows are labeled
    /// by file stem); omit for an empty entropy section
    #[arg(long)]
    images: Option<PathBuf>,
    /// Also measure encryption timings (makes output machine- and run-dependent)
    #[arg(long)]
    measure_time: bool,
    #[arg(long, default_value_t = 1 << 20)]
    workload_bytes: usize,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 3)]
    warmup: usize,
    #[command(flatten)]
    common: CommonOpts,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::ExpandKey(args) => expand_key(args),
        Command::Encrypt(args) => block_crypt(args, false),
        Command::Decrypt(args) => block_crypt(args, true),
        Command::Avalanche(args) => avalanche(args),
        Command::ImageEncrypt(args) => image_encrypt(args),
        Command::ImageDecrypt(args) => image_decrypt(args),
        Command::Entropy(args) => entropy_cmd(args),
        Command::Histogram(args) => histogram_cmd(args),
        Command::Bench(args) => bench(args),
        Command::PaperReport(args) => paper_report(args),
    }
}

/// Load and validate the constant set: --constants flag, then
/// $SF_CONSTANTS, then the embedded v1 set.
fn load_constants(flag: &Option<PathBuf>) -> Result<ConstantSet, CliError> {
    let path = flag
        .clone()
        .or_else(|| std::env::var_os(CONSTANTS_ENV).map(PathBuf::from));
    let set = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(CliError::io(&p))?;
            ConstantSet::parse(&text).map_err(|e| CliError::Constants(e.to_string()))?
        }
        None => ConstantSet::builtin_v1().clone(),
    };
    for bits in set.widths().collect::<Vec<_>>() {
        let constants = set
            .for_width(bits)
            .map_err(|e| CliError::Constants(e.to_string()))?;
        let report = validate_constants(&constants);
        if !report.is_pass() {
            return Err(CliError::Constants(format!(
                "{} ({}-bit tables): {report}",
                set.version(),
                bits
            )));
        }
    }
    Ok(set)
}

fn table_for(
    set: &ConstantSet,
    variant: CipherVariant,
) -> Result<CipherConstants, CliError> {
    set.for_variant(variant)
        .map_err(|e| CliError::Constants(e.to_string()))
}

fn emit(out: &Option<PathBuf>, data: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, data).map_err(CliError::io(path)),
        None => write_stdout(data),
    }
}

/// Write a line to stdout, treating a closed pipe as a normal early exit
/// rather than a panic (`sf ... | head` must not error).
fn write_stdout(data: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let result = writeln!(stdout, "{}", data.trim_end_matches('\n')).and_then(|_| stdout.flush());
    match result {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        Ok(()) => Ok(()),
    }
}

fn meta(set: &ConstantSet, variant: Option<CipherVariant>, seed: u64) -> Meta {
    Meta {
        tool_version: env!("CARGO_PKG_VERSION"),
        constant_version: set.version().to_string(),
        variant: variant.map(|v| v.name().to_string()),
        rng_seed: seed,
    }
}

fn expand_key(args: ExpandKeyArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let constants = table_for(&set, args.variant)?;
    let key = CipherKey::from_bytes(parse_hex(&args.key, args.variant.key_bits())?);
    let schedule = derive_round_keys(&key, &constants)?;
    let keys_hex: Vec<String> = schedule
        .round_keys()
        .iter()
        .map(|rk| sf_core::hex::to_hex_upper(rk))
        .collect();
    let text = match args.common.format.unwrap_or(OutputFormat::Table) {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "meta": meta(&set, Some(args.variant), args.common.seed),
            "round_keys": keys_hex,
        }))
        .expect("serializable"),
        OutputFormat::Csv => {
            let mut s = String::from("round,key_hex\n");
            for (i, k) in keys_hex.iter().enumerate() {
                s.push_str(&format!("{},{}\n", i + 1, k));
            }
            s
        }
        OutputFormat::Table => keys_hex
            .iter()
            .enumerate()
            .map(|(i, k)| format!("K{} {}", i + 1, k))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&args.common.out, &text)
}

fn block_crypt(args: BlockCryptArgs, decrypt: bool) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let constants = table_for(&set, args.variant)?;
    let bits = args.variant.block_bits();
    let key = CipherKey::from_bytes(parse_hex(&args.key, bits)?);
    let input_hex = if decrypt {
        match &args.ct {
            Some(ct) => ct.clone(),
            None => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(CliError::io("<stdin>"))?;
                buf.trim().to_string()
            }
        }
    } else {
        args.pt.clone().ok_or_else(|| {
            CliError::Params("encrypt requires --pt <hex block>".to_string())
        })?
    };
    let input = Block::from_bytes(parse_hex(&input_hex, bits)?);
    let schedule = derive_round_keys(&key, &constants)?;
    let output = if decrypt {
        sf_core::decrypt_block(&input, &schedule, &constants)?
    } else {
        sf_core::encrypt_block(&input, &schedule, &constants)?
    };
    let field = if decrypt { "plaintext" } else { "ciphertext" };
    let text = match args.common.format.unwrap_or(OutputFormat::Table) {
        OutputFormat::Table => output.to_hex(),
        OutputFormat::Csv => format!("{field}_hex\n{}\n", output.to_hex()),
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "meta": meta(&set, Some(args.variant), args.common.seed),
            field: output.to_hex(),
        }))
        .expect("serializable"),
    };
    emit(&args.common.out, &text)
}

fn avalanche(args: AvalancheArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let constants = table_for(&set, args.variant)?;
    let doc_meta = meta(&set, Some(args.variant), args.common.seed);

    if let Some(AvalanchePreset::Reference) = args.preset {
        let ratio_set = sf_analysis::reference::ratio_set(args.variant);
        let mean = mean_ratio(&ratio_set.ratios)?;
        let text = match args.common.format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
                "meta": doc_meta,
                "preset": "reference",
                "ratios": ratio_set.ratios,
                "mean_ratio": sf_analysis::round4(mean),
            }))
            .expect("serializable"),
            OutputFormat::Csv => {
                let mut s = String::from("trial,ratio\n");
                for (i, r) in ratio_set.ratios.iter().enumerate() {
                    s.push_str(&format!("{},{:.4}\n", i + 1, r));
                }
                s.push_str(&format!("mean,{:.4}\n", mean));
                s
            }
            OutputFormat::Table => format!(
                "{}\nmean {:.4}",
                ratio_set
                    .ratios
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("trial {} ratio {:.4}", i + 1, r))
                    .collect::<Vec<_>>()
                    .join("\n"),
                mean
            ),
        };
        return emit(&args.common.out, &text);
    }

    let spec = match args.preset {
        Some(AvalanchePreset::FourFlip) => TrialSpec::Explicit(four_flip_preset(args.variant)),
        Some(AvalanchePreset::Reference) => unreachable!("handled above"),
        None => TrialSpec::Random {
            count: args.trials,
        },
    };
    let report = avalanche_suite(args.variant, &constants, &spec, args.common.seed)?;
    let verdict = sac_verdict(&report, args.sac_tolerance);
    let text = match args.common.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "meta": doc_meta,
            "report": report,
            "sac": verdict,
        }))
        .expect("serializable"),
        OutputFormat::Csv => {
            let mut s =
                String::from("trial,flip_target,bit_index,ratio\n");
            for (i, t) in report.trials.iter().enumerate() {
                s.push_str(&format!(
                    "{},{},{},{:.4}\n",
                    i + 1,
                    match t.flip_target {
                        sf_analysis::FlipTarget::Key => "KEY",
                        sf_analysis::FlipTarget::Plaintext => "PLAINTEXT",
                    },
                    t.bit_index,
                    t.ratio
                ));
            }
            s.push_str(&format!("mean,,,{:.4}\n", report.mean_ratio));
            s
        }
        OutputFormat::Table => format!(
            "variant {}\ntrials {}\nmean {:.4}\nsac {} (margin {:+.4}, tolerance {})",
            report.variant,
            report.trial_count,
            report.mean_ratio,
            if verdict.pass { "pass" } else { "fail" },
            verdict.margin,
            verdict.tolerance
        ),
    };
    emit(&args.common.out, &text)
}

fn load_gray(path: &Path) -> Result<GrayImage, CliError> {
    let bytes = std::fs::read(path).map_err(CliError::io(path))?;
    Ok(load_image(&bytes)?)
}

fn image_encrypt(args: ImageEncryptArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let constants = table_for(&set, args.variant)?;
    let key = CipherKey::from_bytes(parse_hex(&args.key, args.variant.key_bits())?);
    let image = load_gray(&args.image)?;
    let artifact = encrypt_image(&image, &key, &constants)?;
    std::fs::write(&args.out_image, write_p5(artifact.display_image()))
        .map_err(CliError::io(&args.out_image))?;
    std::fs::write(&args.out_blob, write_blob(&artifact)).map_err(CliError::io(&args.out_blob))?;
    let text = serde_json::to_string_pretty(&serde_json::json!({
        "meta": meta(&set, Some(args.variant), args.common.seed),
        "width": image.width(),
        "height": image.height(),
        "pad_length": artifact.pad_length(),
        "display_image": args.out_image,
        "ciphertext_blob": args.out_blob,
    }))
    .expect("serializable");
    emit(&args.common.out, &text)
}

fn image_decrypt(args: ImageDecryptArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let constants = table_for(&set, args.variant)?;
    let key = CipherKey::from_bytes(parse_hex(&args.key, args.variant.key_bits())?);
    let blob = std::fs::read(&args.blob).map_err(CliError::io(&args.blob))?;
    let artifact = read_blob(&blob, &constants)?;
    let image = decrypt_image(&artifact, &key, &constants)?;
    let out = args.common.out.clone().ok_or_else(|| {
        CliError::Params("image-decrypt requires --out <pgm path>".to_string())
    })?;
    std::fs::write(&out, write_p5(&image)).map_err(CliError::io(&out))?;
    write_stdout(
        &serde_json::json!({
            "meta": meta(&set, Some(args.variant), args.common.seed),
            "width": image.width(),
            "height": image.height(),
            "out": out,
        })
        .to_string(),
    )
}

fn entropy_cmd(args: EntropyArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let constants = table_for(&set, args.variant)?;
    let key = CipherKey::from_bytes(parse_hex(&args.key, args.variant.key_bits())?);
    let image = load_gray(&args.image)?;
    let artifact = encrypt_image(&image, &key, &constants)?;
    let original = histogram(&image);
    let encrypted = histogram(artifact.display_image());
    let report = entropy_report(&original, &encrypted)?;
    let label = args
        .image
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let text = match args.common.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "meta": meta(&set, Some(args.variant), args.common.seed),
            "image": label,
            "width": image.width(),
            "height": image.height(),
            "report": report,
        }))
        .expect("serializable"),
        OutputFormat::Csv => format!(
            "image,entropy_original,entropy_encrypted,percent_change\n{label},{:.4},{:.4},{:.2}\n",
            report.entropy_original, report.entropy_encrypted, report.percent_change
        ),
        OutputFormat::Table => format!(
            "{label} ({}x{}): original {:.4}  encrypted {:.4}  change {:.2}%",
            image.width(),
            image.height(),
            report.entropy_original,
            report.entropy_encrypted,
            report.percent_change
        ),
    };
    emit(&args.common.out, &text)
}

fn histogram_cmd(args: HistogramArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let image = load_gray(&args.image)?;
    let hist: Histogram256 = if args.encrypted {
        let variant = args.variant.expect("clap enforces --variant with --encrypted");
        let key_hex = args.key.as_ref().expect("clap enforces --key with --encrypted");
        let constants = table_for(&set, variant)?;
        let key = CipherKey::from_bytes(parse_hex(key_hex, variant.key_bits())?);
        let artifact = encrypt_image(&image, &key, &constants)?;
        histogram(artifact.display_image())
    } else {
        histogram(&image)
    };
    let text = match args.common.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            // Exactly 256 `intensity,count` lines, no header.
            let mut s = String::new();
            for (intensity, count) in hist.counts().iter().enumerate() {
                s.push_str(&format!("{intensity},{count}\n"));
            }
            s
        }
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "meta": meta(&set, args.variant, args.common.seed),
            "total": hist.total(),
            "counts": hist.counts().to_vec(),
        }))
        .expect("serializable"),
        OutputFormat::Table => {
            let max = hist.counts().iter().copied().max().unwrap_or(1).max(1);
            hist.counts()
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let bar = "#".repeat((c * 40 / max) as usize);
                    format!("{i:3} {c:8} {bar}")
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
    };
    emit(&args.common.out, &text)
}

fn bench(args: BenchArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let format = args.common.format.unwrap_or(OutputFormat::Json);
    if args.all || args.variant.is_none() {
        let cmp = compare_variants(
            &set,
            args.workload_bytes,
            args.runs,
            args.warmup,
            args.common.seed,
        )?;
        let text = match format {
            OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
                "meta": meta(&set, None, args.common.seed),
                "comparison": cmp,
            }))
            .expect("serializable"),
            OutputFormat::Csv => reports_to_csv(&cmp.reports),
            OutputFormat::Table => {
                let mut lines: Vec<String> = cmp
                    .reports
                    .iter()
                    .map(|r| {
                        format!(
                            "{}: {:.3} ms mean, {:.3} ms stddev, {:.3} ns/byte",
                            r.variant, r.mean_ms, r.stddev_ms, r.per_byte_ns
                        )
                    })
                    .collect();
                lines.push(format!(
                    "per-byte ordering: {}",
                    cmp.per_byte_ordering.join(" < ")
                ));
                lines.join("\n")
            }
        };
        return emit(&args.common.out, &text);
    }
    let variant = args.variant.expect("checked above");
    let constants = table_for(&set, variant)?;
    let report = time_encrypt(
        variant,
        &constants,
        args.workload_bytes,
        args.runs,
        args.warmup,
        args.common.seed,
    )?;
    let text = match format {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "meta": meta(&set, Some(variant), args.common.seed),
            "report": report,
        }))
        .expect("serializable"),
        OutputFormat::Csv => reports_to_csv(std::slice::from_ref(&report)),
        OutputFormat::Table => format!(
            "{}: {:.3} ms mean, {:.3} ms stddev over {} runs of {} bytes ({})",
            report.variant,
            report.mean_ms,
            report.stddev_ms,
            report.runs,
            report.workload_bytes,
            report.machine
        ),
    };
    emit(&args.common.out, &text)
}

fn paper_report(args: PaperReportArgs) -> Result<(), CliError> {
    let set = load_constants(&args.common.constants)?;
    let report = PaperReport::build(
        &set,
        args.images.as_deref(),
        args.common.seed,
        args.measure_time
            .then_some((args.workload_bytes, args.runs, args.warmup)),
    )?;
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    emit(&args.common.out, &text)
}
