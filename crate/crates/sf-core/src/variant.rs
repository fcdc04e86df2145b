use std::fmt;

/// The three published widths of the SF family. Key width equals block width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CipherVariant {
    Sf64,
    Sf128,
    Sf192,
}

impl CipherVariant {
    pub const ALL: [CipherVariant; 3] =
        [CipherVariant::Sf64, CipherVariant::Sf128, CipherVariant::Sf192];

    pub fn block_bits(self) -> usize {
        match self {
            CipherVariant::Sf64 => 64,
            CipherVariant::Sf128 => 128,
            CipherVariant::Sf192 => 192,
        }
    }

    pub fn key_bits(self) -> usize {
        self.block_bits()
    }

    pub fn block_bytes(self) -> usize {
        self.block_bits() / 8
    }

    pub fn name(self) -> &'static str {
        match self {
            CipherVariant::Sf64 => "sf64",
            CipherVariant::Sf128 => "sf128",
            CipherVariant::Sf192 => "sf192",
        }
    }

    pub fn from_name(name: &str) -> Option<CipherVariant> {
        match name.to_ascii_lowercase().as_str() {
            "sf64" | "sf-64" => Some(CipherVariant::Sf64),
            "sf128" | "sf-128" => Some(CipherVariant::Sf128),
            "sf192" | "sf-192" => Some(CipherVariant::Sf192),
            _ => None,
        }
    }

    pub fn from_block_bits(bits: usize) -> Option<CipherVariant> {
        match bits {
            64 => Some(CipherVariant::Sf64),
            128 => Some(CipherVariant::Sf128),
            192 => Some(CipherVariant::Sf192),
            _ => None,
        }
    }
}

impl fmt::Display for CipherVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
