//! Straight-line reference implementation used only to generate and guard
//! golden fixtures. It shares no code with the library: state is a vector
//! of single bits, the P/T tables and the FM matrix are derived from their
//! documented generator formulas instead of the shipped data file, and all
//! steps are written out longhand. Divergence between this path and the
//! library is always a bug in one of them.

/// The four v1 S-boxes, typed here a second time on purpose.
pub const SBOXES: [[u8; 16]; 4] = [
    [
        0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2,
    ],
    [
        0xE, 0x4, 0xB, 0x2, 0x3, 0x8, 0x0, 0x9, 0x1, 0xA, 0x7, 0xF, 0x6, 0xC, 0x5, 0xD,
    ],
    [
        0xB, 0xF, 0x3, 0x2, 0xA, 0xC, 0x9, 0x1, 0x6, 0x7, 0x8, 0x0, 0xE, 0x5, 0xD, 0x4,
    ],
    [
        0x7, 0x4, 0xA, 0x9, 0x1, 0xF, 0xB, 0x0, 0xC, 0x3, 0x2, 0x6, 0x8, 0xE, 0xD, 0x5,
    ],
];

pub const LS_AMOUNTS: [usize; 5] = [7, 13, 23, 37, 53];

/// Hex string to a vector of bits, most significant bit first.
pub fn hex_to_bits(hex: &str) -> Vec<u8> {
    let mut bits = Vec::with_capacity(hex.len() * 4);
    for ch in hex.chars() {
        let v = ch.to_digit(16).expect("oracle inputs are valid hex") as u8;
        bits.push((v >> 3) & 1);
        bits.push((v >> 2) & 1);
        bits.push((v >> 1) & 1);
        bits.push(v & 1);
    }
    bits
}

pub fn bits_to_hex(bits: &[u8]) -> String {
    assert_eq!(bits.len() % 4, 0);
    bits.chunks(4)
        .map(|q| {
            let v = (q[0] << 3) | (q[1] << 2) | (q[2] << 1) | q[3];
            char::from_digit(v as u32, 16).unwrap().to_ascii_uppercase()
        })
        .collect()
}

fn nibble_value(bits: &[u8], nibble: usize) -> u8 {
    let b = &bits[4 * nibble..4 * nibble + 4];
    (b[0] << 3) | (b[1] << 2) | (b[2] << 1) | b[3]
}

fn set_nibble(bits: &mut [u8], nibble: usize, value: u8) {
    bits[4 * nibble] = (value >> 3) & 1;
    bits[4 * nibble + 1] = (value >> 2) & 1;
    bits[4 * nibble + 2] = (value >> 1) & 1;
    bits[4 * nibble + 3] = value & 1;
}

fn xorshift64(mut state: u64) -> u64 {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    state
}

/// Fisher-Yates driven by xorshift64, matching the generator that produced
/// the v1 P/T tables.
fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut state = seed;
    let mut table: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        state = xorshift64(state);
        let j = (state % (i as u64 + 1)) as usize;
        table.swap(i, j);
    }
    table
}

fn v1_p_table(width: usize) -> Vec<usize> {
    seeded_permutation(width, 0x53465631 ^ width as u64)
}

fn v1_t_table(width: usize) -> Vec<usize> {
    let seed = xorshift64((0x53465631 ^ width as u64) ^ 0xA5A5A5A5);
    seeded_permutation(width / 4, seed)
}

/// Key expansion, stage by stage; returns the register after each stage.
pub fn expand_key(key_hex: &str) -> Vec<Vec<u8>> {
    let mut register = hex_to_bits(key_hex);
    let width = register.len();
    let p_table = v1_p_table(width);
    let t_table = v1_t_table(width);
    let mut round_keys = Vec::new();

    for stage in 0..5 {
        // Stage 1: halves mix. New high half is the old low half; new low
        // half is hi XOR lo, complemented on odd nibble positions (XNOR).
        let half = width / 2;
        let mut mixed = Vec::with_capacity(width);
        mixed.extend_from_slice(&register[half..]);
        for m in 0..half / 4 {
            for k in 0..4 {
                let hi = register[4 * m + k];
                let lo = register[half + 4 * m + k];
                let mut bit = hi ^ lo;
                if m % 2 == 1 {
                    bit ^= 1;
                }
                mixed.push(bit);
            }
        }
        register = mixed;

        // Stage 2: left rotation.
        register.rotate_left(LS_AMOUNTS[stage] % width);

        // Stage 3: FM multiplication. Each output bit of a nibble is the
        // XOR of the other three input bits.
        for nibble in 0..width / 4 {
            let b = &register[4 * nibble..4 * nibble + 4];
            let out = [
                b[1] ^ b[2] ^ b[3],
                b[0] ^ b[2] ^ b[3],
                b[0] ^ b[1] ^ b[3],
                b[0] ^ b[1] ^ b[2],
            ];
            register[4 * nibble..4 * nibble + 4].copy_from_slice(&out);
        }

        // Stage 4: bit permutation. Output bit j reads input bit p_table[j].
        let mut permuted = vec![0u8; width];
        for (j, slot) in permuted.iter_mut().enumerate() {
            *slot = register[p_table[j]];
        }
        register = permuted;

        // Stage 5: nibble transposition. Output nibble j reads input nibble
        // t_table[j].
        let nibbles = width / 4;
        let mut transposed = vec![0u8; width];
        for (j, &src) in t_table.iter().enumerate().take(nibbles) {
            let v = nibble_value(&register, src);
            set_nibble(&mut transposed, j, v);
        }
        register = transposed;

        round_keys.push(register.clone());
    }
    round_keys
}

/// The F-function on one half, written out step by step.
fn f_function(x: &[u8], round_key: &[u8], round: usize) -> Vec<u8> {
    let half = x.len();
    let n = half / 4;
    let ka = &round_key[..half];
    let kb = &round_key[half..];

    // AND with ka, OR with the nibble-rotated kb, then the alternating
    // XOR/XNOR mix folding in the shifted data copy, the bare kb nibble and
    // the round/position constant drawn from the first S-box.
    let mut mixed = vec![0u8; half];
    for i in 0..n {
        let next = (i + 1) % n;
        let rc = SBOXES[0][(i + 5 * round) % 16];
        for k in 0..4 {
            let a = x[4 * i + k] & ka[4 * i + k];
            let o = x[4 * i + k] | kb[4 * next + k];
            let mut bit = a ^ o ^ x[4 * next + k] ^ kb[4 * i + k] ^ ((rc >> (3 - k)) & 1);
            if i % 2 == 1 {
                bit ^= 1;
            }
            mixed[4 * i + k] = bit;
        }
    }

    // Left rotation by three bits across the whole half.
    mixed.rotate_left(3 % half.max(1));

    // First substitution layer: S-box cycling by nibble position.
    for i in 0..n {
        let v = nibble_value(&mixed, i);
        set_nibble(&mut mixed, i, SBOXES[i % 4][v as usize]);
    }

    // Diffusion cascade: shift-XOR at doubling distances, substituting
    // through the S-boxes after every stage.
    let mut distances = Vec::new();
    let mut d = 1;
    while d < n {
        distances.push(d);
        d *= 2;
    }
    for (s, &d) in distances.iter().enumerate() {
        let mut next_state = vec![0u8; half];
        for i in 0..n {
            let j = (i + d) % n;
            let mut v = 0u8;
            for k in 0..4 {
                v = (v << 1) | (mixed[4 * i + k] ^ mixed[4 * j + k]);
            }
            let substituted = SBOXES[((i + s + 1) % n) % 4][v as usize];
            set_nibble(&mut next_state, i, nibble_value(&mixed, i) ^ substituted);
        }
        mixed = next_state;
    }

    // Cross swap of the half's two nibble groups.
    let mut swapped = vec![0u8; half];
    for i in 0..n / 2 {
        let a = nibble_value(&mixed, i);
        let b = nibble_value(&mixed, i + n / 2);
        set_nibble(&mut swapped, i, b);
        set_nibble(&mut swapped, i + n / 2, a);
    }
    if n % 2 == 1 {
        let mid = nibble_value(&mixed, n - 1);
        set_nibble(&mut swapped, n - 1, mid);
    }
    if n / 2 == 0 {
        swapped = mixed;
    }
    swapped
}

/// Five Feistel rounds; halves swap after every round except the last.
pub fn encrypt(plaintext_hex: &str, round_keys: &[Vec<u8>]) -> String {
    let state = hex_to_bits(plaintext_hex);
    let width = state.len();
    let mut left = state[..width / 2].to_vec();
    let mut right = state[width / 2..].to_vec();

    for (round, rk) in round_keys.iter().enumerate() {
        let f = f_function(&right, rk, round);
        let tmp: Vec<u8> = left.iter().zip(&f).map(|(l, fb)| l ^ fb).collect();
        if round < 4 {
            left = std::mem::replace(&mut right, tmp);
        } else {
            left = tmp;
        }
    }

    let mut out = left;
    out.extend(right);
    bits_to_hex(&out)
}
