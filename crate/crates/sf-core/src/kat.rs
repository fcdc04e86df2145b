//! Known-answer vector files: one `variant, key_hex, plaintext_hex,
//! ciphertext_hex` record per line, uppercase hex without prefixes. Lines
//! starting with `#` and blank lines are ignored.

use thiserror::Error;

use crate::variant::CipherVariant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatVector {
    pub variant: CipherVariant,
    pub key_hex: String,
    pub plaintext_hex: String,
    pub ciphertext_hex: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KatError {
    #[error("KAT line {line}: expected 4 comma-separated fields, got {fields}")]
    WrongFieldCount { line: usize, fields: usize },
    #[error("KAT line {line}: unknown variant {name:?}")]
    UnknownVariant { line: usize, name: String },
    #[error("KAT line {line}: field {field} is not {digits}-digit uppercase hex")]
    BadHexField {
        line: usize,
        field: &'static str,
        digits: usize,
    },
}

fn check_hex(
    text: &str,
    bits: usize,
    line: usize,
    field: &'static str,
) -> Result<(), KatError> {
    let digits = bits / 4;
    let ok = text.len() == digits
        && text
            .chars()
            .all(|c| c.is_ascii_digit() || ('A'..='F').contains(&c));
    if ok {
        Ok(())
    } else {
        Err(KatError::BadHexField { line, field, digits })
    }
}

/// Parse a whole KAT file.
pub fn parse_kat_file(text: &str) -> Result<Vec<KatVector>, KatError> {
    let mut vectors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(KatError::WrongFieldCount {
                line,
                fields: fields.len(),
            });
        }
        let variant = CipherVariant::from_name(fields[0]).ok_or_else(|| {
            KatError::UnknownVariant {
                line,
                name: fields[0].to_string(),
            }
        })?;
        let bits = variant.block_bits();
        check_hex(fields[1], bits, line, "key_hex")?;
        check_hex(fields[2], bits, line, "plaintext_hex")?;
        check_hex(fields[3], bits, line, "ciphertext_hex")?;
        vectors.push(KatVector {
            variant,
            key_hex: fields[1].to_string(),
            plaintext_hex: fields[2].to_string(),
            ciphertext_hex: fields[3].to_string(),
        });
    }
    Ok(vectors)
}

/// Render one record in canonical file form.
pub fn format_kat_line(vector: &KatVector) -> String {
    format!(
        "{}, {}, {}, {}",
        vector.variant.name(),
        vector.key_hex,
        vector.plaintext_hex,
        vector.ciphertext_hex
    )
}
