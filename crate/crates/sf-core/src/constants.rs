//! Constant sets: the table data parameterizing the cipher, the text file
//! format they are stored in, and the structural validation applied before
//! any table is trusted.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::variant::CipherVariant;

/// The embedded canonical constant set (see `data/sf_constants_v1.txt` for
/// the documented file layout).
const BUILTIN_V1: &str = include_str!("../data/sf_constants_v1.txt");

/// Full table set for one block width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherConstants {
    version: String,
    block_bits: usize,
    sboxes: Vec<[u8; 16]>,
    p_table: Vec<u16>,
    t_table: Vec<u16>,
    fm_rows: [u8; 4],
    fm_map: [u8; 16],
    ls_amounts: Vec<u16>,
}

impl CipherConstants {
    pub fn new(
        version: impl Into<String>,
        block_bits: usize,
        sboxes: Vec<[u8; 16]>,
        p_table: Vec<u16>,
        t_table: Vec<u16>,
        fm_rows: [u8; 4],
        ls_amounts: Vec<u16>,
    ) -> Self {
        CipherConstants {
            version: version.into(),
            block_bits,
            sboxes,
            p_table,
            t_table,
            fm_map: fm_to_map(fm_rows),
            fm_rows,
            ls_amounts,
        }
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn block_bits(&self) -> usize {
        self.block_bits
    }

    pub fn block_bytes(&self) -> usize {
        self.block_bits / 8
    }

    pub fn sboxes(&self) -> &[[u8; 16]] {
        &self.sboxes
    }

    pub fn p_table(&self) -> &[u16] {
        &self.p_table
    }

    pub fn t_table(&self) -> &[u16] {
        &self.t_table
    }

    pub fn fm_rows(&self) -> [u8; 4] {
        self.fm_rows
    }

    /// Lookup table for the FM multiplication: `fm_map()[v]` is FM·v over
    /// GF(2) for every nibble value v.
    pub fn fm_map(&self) -> &[u8; 16] {
        &self.fm_map
    }

    pub fn ls_amounts(&self) -> &[u16] {
        &self.ls_amounts
    }
}

/// Evaluate FM·v for all 16 nibble values. Row 0 of `rows` produces output
/// bit 3 (the nibble MSB); bit 3 of a row selects input bit 3.
fn fm_to_map(rows: [u8; 4]) -> [u8; 16] {
    let mut map = [0u8; 16];
    for (v, slot) in map.iter_mut().enumerate() {
        let mut out = 0u8;
        for (r, row) in rows.iter().enumerate() {
            let parity = (row & v as u8).count_ones() as u8 & 1;
            out |= parity << (3 - r);
        }
        *slot = out;
    }
    map
}

/// Gaussian elimination over GF(2); true iff the 4x4 matrix is invertible.
fn fm_invertible(rows: [u8; 4]) -> bool {
    let mut m = rows;
    for col in 0..4 {
        let bit = 1u8 << (3 - col);
        let Some(pivot) = (col..4).find(|&r| m[r] & bit != 0) else {
            return false;
        };
        m.swap(col, pivot);
        for r in 0..4 {
            if r != col && m[r] & bit != 0 {
                m[r] ^= m[col];
            }
        }
    }
    true
}

/// One parsed constant file: shared S-boxes and FM plus per-width tables.
#[derive(Debug, Clone)]
pub struct ConstantSet {
    version: String,
    sboxes: Vec<[u8; 16]>,
    fm_rows: [u8; 4],
    widths: BTreeMap<usize, WidthTables>,
}

#[derive(Debug, Clone)]
struct WidthTables {
    p_table: Vec<u16>,
    t_table: Vec<u16>,
    ls_amounts: Vec<u16>,
}

impl ConstantSet {
    /// The embedded canonical `v1` set. Parsed and validated once.
    pub fn builtin_v1() -> &'static ConstantSet {
        static V1: OnceLock<ConstantSet> = OnceLock::new();
        V1.get_or_init(|| {
            let set = ConstantSet::parse(BUILTIN_V1).expect("embedded v1 constants parse");
            for variant in CipherVariant::ALL {
                let constants = set.for_variant(variant).expect("v1 covers all variants");
                let report = validate_constants(&constants);
                assert!(report.is_pass(), "embedded v1 constants invalid: {report}");
            }
            set
        })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    /// Assemble the table view for one named variant.
    pub fn for_variant(&self, variant: CipherVariant) -> Result<CipherConstants, ConstantsError> {
        self.for_width(variant.block_bits())
    }

    pub fn for_width(&self, block_bits: usize) -> Result<CipherConstants, ConstantsError> {
        let tables = self
            .widths
            .get(&block_bits)
            .ok_or(ConstantsError::MissingWidth { block_bits })?;
        Ok(CipherConstants::new(
            self.version.clone(),
            block_bits,
            self.sboxes.clone(),
            tables.p_table.clone(),
            tables.t_table.clone(),
            self.fm_rows,
            tables.ls_amounts.clone(),
        ))
    }

    pub fn widths(&self) -> impl Iterator<Item = usize> + '_ {
        self.widths.keys().copied()
    }

    /// Parse the documented key-value text layout.
    pub fn parse(text: &str) -> Result<ConstantSet, ConstantsError> {
        let mut version: Option<String> = None;
        let mut sboxes: Vec<[u8; 16]> = Vec::new();
        let mut fm_rows: Option<[u8; 4]> = None;
        let mut widths: BTreeMap<usize, WidthTables> = BTreeMap::new();
        let mut current: Option<(usize, PartialTables)> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut tokens = line.split_whitespace();
            let Some(key) = tokens.next() else { continue };
            let rest: Vec<&str> = tokens.collect();
            match key {
                "version" => {
                    let [v] = rest.as_slice() else {
                        return Err(ConstantsError::Malformed {
                            line: line_no,
                            reason: "version takes exactly one token".into(),
                        });
                    };
                    version = Some((*v).to_string());
                }
                "sbox" => {
                    let [digits] = rest.as_slice() else {
                        return Err(ConstantsError::Malformed {
                            line: line_no,
                            reason: "sbox takes one 16-digit hex token".into(),
                        });
                    };
                    if digits.len() != 16 {
                        return Err(ConstantsError::Malformed {
                            line: line_no,
                            reason: format!("sbox needs 16 hex digits, got {}", digits.len()),
                        });
                    }
                    let mut table = [0u8; 16];
                    for (i, ch) in digits.chars().enumerate() {
                        table[i] = ch.to_digit(16).ok_or_else(|| ConstantsError::Malformed {
                            line: line_no,
                            reason: format!("invalid hex digit {ch:?} in sbox"),
                        })? as u8;
                    }
                    sboxes.push(table);
                }
                "fm" => {
                    if rest.len() != 4 {
                        return Err(ConstantsError::Malformed {
                            line: line_no,
                            reason: "fm takes four 4-digit binary rows".into(),
                        });
                    }
                    let mut rows = [0u8; 4];
                    for (i, tok) in rest.iter().enumerate() {
                        if tok.len() != 4 || !tok.chars().all(|c| c == '0' || c == '1') {
                            return Err(ConstantsError::Malformed {
                                line: line_no,
                                reason: format!("fm row {tok:?} is not four binary digits"),
                            });
                        }
                        rows[i] = u8::from_str_radix(tok, 2).unwrap();
                    }
                    fm_rows = Some(rows);
                }
                "variant" => {
                    let [name] = rest.as_slice() else {
                        return Err(ConstantsError::Malformed {
                            line: line_no,
                            reason: "variant takes one name".into(),
                        });
                    };
                    let v = CipherVariant::from_name(name).ok_or_else(|| {
                        ConstantsError::Malformed {
                            line: line_no,
                            reason: format!("unknown variant {name:?}"),
                        }
                    })?;
                    if let Some((bits, partial)) = current.take() {
                        widths.insert(bits, partial.finish(bits)?);
                    }
                    current = Some((v.block_bits(), PartialTables::default()));
                }
                "ls" | "ptable" | "ttable" => {
                    let Some((_, partial)) = current.as_mut() else {
                        return Err(ConstantsError::Malformed {
                            line: line_no,
                            reason: format!("{key} appears before any variant section"),
                        });
                    };
                    let values: Result<Vec<u16>, _> = rest.iter().map(|t| t.parse()).collect();
                    let values = values.map_err(|_| ConstantsError::Malformed {
                        line: line_no,
                        reason: format!("{key} entries must be decimal integers"),
                    })?;
                    match key {
                        "ls" => partial.ls_amounts = Some((values, line_no)),
                        "ptable" => partial.p_table = Some((values, line_no)),
                        _ => partial.t_table = Some((values, line_no)),
                    }
                }
                other => {
                    return Err(ConstantsError::Malformed {
                        line: line_no,
                        reason: format!("unknown key {other:?}"),
                    });
                }
            }
        }
        if let Some((bits, partial)) = current.take() {
            widths.insert(bits, partial.finish(bits)?);
        }

        Ok(ConstantSet {
            version: version.ok_or(ConstantsError::MissingVersion)?,
            sboxes,
            fm_rows: fm_rows.ok_or(ConstantsError::MissingFm)?,
            widths,
        })
    }
}

#[derive(Debug, Default)]
struct PartialTables {
    ls_amounts: Option<(Vec<u16>, usize)>,
    p_table: Option<(Vec<u16>, usize)>,
    t_table: Option<(Vec<u16>, usize)>,
}

impl PartialTables {
    fn finish(self, block_bits: usize) -> Result<WidthTables, ConstantsError> {
        let take = |field: Option<(Vec<u16>, usize)>, name: &'static str| {
            field.map(|(v, _)| v).ok_or(ConstantsError::MissingTable {
                block_bits,
                table: name,
            })
        };
        Ok(WidthTables {
            p_table: take(self.p_table, "ptable")?,
            t_table: take(self.t_table, "ttable")?,
            ls_amounts: take(self.ls_amounts, "ls")?,
        })
    }
}

/// Errors raised while reading a constant file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantsError {
    #[error("constant file line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("constant file has no version line")]
    MissingVersion,
    #[error("constant file has no fm line")]
    MissingFm,
    #[error("constant file has no {table} for the {block_bits}-bit variant")]
    MissingTable {
        block_bits: usize,
        table: &'static str,
    },
    #[error("constant set has no tables for {block_bits}-bit blocks")]
    MissingWidth { block_bits: usize },
}

/// One violated structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantViolation {
    NoSboxes,
    SboxNotBijective { index: usize },
    SboxEntryOutOfRange { index: usize },
    PTableWrongLength { expected: usize, actual: usize },
    PTableNotBijective,
    TTableWrongLength { expected: usize, actual: usize },
    TTableNotBijective,
    FmNotInvertible,
    LsWrongCount { expected: usize, actual: usize },
    LsAmountOutOfRange { stage: usize, amount: u16 },
}

impl fmt::Display for ConstantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantViolation::NoSboxes => write!(f, "constant set defines no S-boxes"),
            ConstantViolation::SboxNotBijective { index } => {
                write!(f, "S-box {index} is not a bijection on 0..15")
            }
            ConstantViolation::SboxEntryOutOfRange { index } => {
                write!(f, "S-box {index} has an entry outside 0..15")
            }
            ConstantViolation::PTableWrongLength { expected, actual } => {
                write!(f, "p_table has {actual} entries, expected {expected}")
            }
            ConstantViolation::PTableNotBijective => {
                write!(f, "p_table is not a bijection on its bit range")
            }
            ConstantViolation::TTableWrongLength { expected, actual } => {
                write!(f, "t_table has {actual} entries, expected {expected}")
            }
            ConstantViolation::TTableNotBijective => {
                write!(f, "t_table is not a bijection on its nibble range")
            }
            ConstantViolation::FmNotInvertible => write!(f, "fm not invertible"),
            ConstantViolation::LsWrongCount { expected, actual } => {
                write!(f, "ls has {actual} amounts, expected {expected}")
            }
            ConstantViolation::LsAmountOutOfRange { stage, amount } => {
                write!(f, "ls amount {amount} at stage {stage} outside 1..block_bits-1")
            }
        }
    }
}

/// Outcome of structural validation: pass, or the list of violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<ConstantViolation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[ConstantViolation] {
        &self.violations
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "pass");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

fn is_permutation(table: &[u16], domain: usize) -> bool {
    if table.len() != domain {
        return false;
    }
    let mut seen = vec![false; domain];
    for &t in table {
        let Some(slot) = seen.get_mut(t as usize) else {
            return false;
        };
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// Check every structural invariant of a table set. Violations come back as
/// data rather than errors so callers can report all of them at once.
pub fn validate_constants(constants: &CipherConstants) -> ValidationReport {
    let mut violations = Vec::new();
    let bits = constants.block_bits();
    let nibbles = bits / 4;

    if constants.sboxes().is_empty() {
        violations.push(ConstantViolation::NoSboxes);
    }
    for (index, sbox) in constants.sboxes().iter().enumerate() {
        if sbox.iter().any(|&v| v > 15) {
            violations.push(ConstantViolation::SboxEntryOutOfRange { index });
            continue;
        }
        let mut seen = [false; 16];
        let mut bijective = true;
        for &v in sbox {
            if seen[v as usize] {
                bijective = false;
            }
            seen[v as usize] = true;
        }
        if !bijective {
            violations.push(ConstantViolation::SboxNotBijective { index });
        }
    }

    if constants.p_table().len() != bits {
        violations.push(ConstantViolation::PTableWrongLength {
            expected: bits,
            actual: constants.p_table().len(),
        });
    } else if !is_permutation(constants.p_table(), bits) {
        violations.push(ConstantViolation::PTableNotBijective);
    }

    if constants.t_table().len() != nibbles {
        violations.push(ConstantViolation::TTableWrongLength {
            expected: nibbles,
            actual: constants.t_table().len(),
        });
    } else if !is_permutation(constants.t_table(), nibbles) {
        violations.push(ConstantViolation::TTableNotBijective);
    }

    if !fm_invertible(constants.fm_rows()) {
        violations.push(ConstantViolation::FmNotInvertible);
    }

    if constants.ls_amounts().len() != crate::schedule::ROUNDS {
        violations.push(ConstantViolation::LsWrongCount {
            expected: crate::schedule::ROUNDS,
            actual: constants.ls_amounts().len(),
        });
    }
    for (stage, &amount) in constants.ls_amounts().iter().enumerate() {
        if amount == 0 || amount as usize >= bits {
            violations.push(ConstantViolation::LsAmountOutOfRange { stage, amount });
        }
    }

    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_constants(bits: usize) -> CipherConstants {
        let identity_sbox: [u8; 16] = core::array::from_fn(|i| i as u8);
        CipherConstants::new(
            "test-id",
            bits,
            vec![identity_sbox],
            (0..bits as u16).collect(),
            (0..(bits / 4) as u16).collect(),
            [0b1000, 0b0100, 0b0010, 0b0001],
            vec![1, 2, 3, 4, 5],
        )
    }

    #[test]
    fn identity_set_passes() {
        let report = validate_constants(&identity_constants(64));
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn repeated_sbox_output_fails_naming_the_box() {
        let mut sbox: [u8; 16] = core::array::from_fn(|i| i as u8);
        sbox[3] = 5; // 5 now appears twice
        let mut c = identity_constants(64);
        c.sboxes = vec![core::array::from_fn(|i| i as u8), sbox];
        let report = validate_constants(&c);
        assert_eq!(
            report.violations(),
            &[ConstantViolation::SboxNotBijective { index: 1 }]
        );
    }

    #[test]
    fn zero_fm_fails_as_not_invertible() {
        let mut c = identity_constants(64);
        c.fm_rows = [0, 0, 0, 0];
        let report = validate_constants(&c);
        assert_eq!(report.violations(), &[ConstantViolation::FmNotInvertible]);
        assert!(report.to_string().contains("fm not invertible"));
    }

    #[test]
    fn out_of_range_shift_fails() {
        let mut c = identity_constants(64);
        c.ls_amounts = vec![1, 2, 3, 4, 64];
        let report = validate_constants(&c);
        assert_eq!(
            report.violations(),
            &[ConstantViolation::LsAmountOutOfRange { stage: 4, amount: 64 }]
        );
    }

    #[test]
    fn builtin_v1_parses_and_validates() {
        let set = ConstantSet::builtin_v1();
        assert_eq!(set.version(), "v1");
        assert_eq!(set.widths().collect::<Vec<_>>(), vec![64, 128, 192]);
        for variant in CipherVariant::ALL {
            let c = set.for_variant(variant).unwrap();
            assert_eq!(c.block_bits(), variant.block_bits());
            assert_eq!(c.sboxes().len(), 4);
            assert!(validate_constants(&c).is_pass());
        }
    }

    #[test]
    fn fm_map_of_identity_is_identity() {
        let map = fm_to_map([0b1000, 0b0100, 0b0010, 0b0001]);
        for v in 0..16u8 {
            assert_eq!(map[v as usize], v);
        }
    }

    #[test]
    fn fm_map_matches_manual_expansion_for_asymmetric_matrix() {
        // Rows (MSB-output first): out3 = in3^in1, out2 = in3, out1 = in0,
        // out0 = in2^in0. Invertible by inspection.
        let rows = [0b1010, 0b1000, 0b0001, 0b0101];
        assert!(fm_invertible(rows));
        let map = fm_to_map(rows);
        for v in 0..16u8 {
            let b = |k: u8| (v >> k) & 1;
            let expect = ((b(3) ^ b(1)) << 3) | (b(3) << 2) | (b(0) << 1) | (b(2) ^ b(0));
            assert_eq!(map[v as usize], expect, "v={v}");
        }
    }

    #[test]
    fn v1_fm_is_an_involution() {
        let c = ConstantSet::builtin_v1()
            .for_variant(CipherVariant::Sf64)
            .unwrap();
        let map = c.fm_map();
        for v in 0..16u8 {
            assert_eq!(map[map[v as usize] as usize], v);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            ConstantSet::parse("nonsense 1 2 3"),
            Err(ConstantsError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            ConstantSet::parse("sbox 0123456789ABCDEF"),
            Err(ConstantsError::MissingVersion)
        ));
    }

    #[test]
    fn missing_width_reported() {
        let set = ConstantSet::builtin_v1();
        assert_eq!(
            set.for_width(96).unwrap_err(),
            ConstantsError::MissingWidth { block_bits: 96 }
        );
    }
}
