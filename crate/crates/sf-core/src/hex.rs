//! Hex encoding helpers. Keys and blocks are printed as uppercase hex with
//! no prefix; parsing accepts either case but enforces the exact width.

use crate::error::HexError;

/// Parse `text` as exactly `expected_bits / 4` hex digits.
pub fn parse_hex(text: &str, expected_bits: usize) -> Result<Vec<u8>, HexError> {
    let expected_digits = expected_bits / 4;
    // Scan for bad digits first so "GG" reports the digit, not the length.
    for (position, ch) in text.chars().enumerate() {
        if !ch.is_ascii_hexdigit() {
            return Err(HexError::InvalidDigit { position, found: ch });
        }
    }
    if text.len() != expected_digits {
        return Err(HexError::WrongLength {
            expected_digits,
            actual_digits: text.len(),
        });
    }
    let digits: Vec<u8> = text
        .chars()
        .map(|c| c.to_digit(16).unwrap() as u8)
        .collect();
    Ok(digits.chunks(2).map(|p| (p[0] << 4) | p[1]).collect())
}

/// Canonical uppercase rendering, two digits per octet.
pub fn to_hex_upper(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02X}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_example() {
        let octets = parse_hex("000A4A6DE8DB6667", 64).unwrap();
        assert_eq!(octets, [0x00, 0x0A, 0x4A, 0x6D, 0xE8, 0xDB, 0x66, 0x67]);
    }

    #[test]
    fn lowercase_accepted_output_uppercase() {
        let octets = parse_hex("deadbeefdeadbeef", 64).unwrap();
        assert_eq!(to_hex_upper(&octets), "DEADBEEFDEADBEEF");
    }

    #[test]
    fn wrong_length_reported() {
        assert_eq!(
            parse_hex("FF", 64),
            Err(HexError::WrongLength {
                expected_digits: 16,
                actual_digits: 2
            })
        );
    }

    #[test]
    fn invalid_digit_reports_position_zero() {
        assert_eq!(
            parse_hex("GGGGGGGGGGGGGGGG", 64),
            Err(HexError::InvalidDigit {
                position: 0,
                found: 'G'
            })
        );
    }

    #[test]
    fn invalid_digit_beats_length_check() {
        assert_eq!(
            parse_hex("0G", 64),
            Err(HexError::InvalidDigit {
                position: 1,
                found: 'G'
            })
        );
    }
}
