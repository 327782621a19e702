//! Words in tensor powers and their bigraded blocks.
//!
//! A word of length m over an alphabet of L letters is encoded as a base-L
//! integer with the first letter most significant, so numeric order on codes
//! is lexicographic order on words. For the bigraded algebra on 2n generators
//! the alphabet is 0..2n with codes 0..n the x-letters and n..2n the
//! y-letters; bidegree (r, s) counts x- and y-letters.

use crate::exact::{Mode, Scalar, SparseVec};

/// Encodes a word (slice of letter codes) over an alphabet of `alphabet`
/// letters, first letter most significant.
pub fn encode_word(letters: &[u8], alphabet: u32) -> u32 {
    let mut code = 0u32;
    for &l in letters {
        debug_assert!((l as u32) < alphabet);
        code = code * alphabet + l as u32;
    }
    code
}

/// Decodes a word code back into letters.
pub fn decode_word(code: u32, alphabet: u32, len: usize) -> Vec<u8> {
    let mut letters = vec![0u8; len];
    let mut c = code;
    for i in (0..len).rev() {
        letters[i] = (c % alphabet) as u8;
        c /= alphabet;
    }
    debug_assert_eq!(c, 0, "code out of range for word length");
    letters
}

/// alphabet^len, the dimension of the full tensor power.
pub fn full_dim(alphabet: u32, len: usize) -> usize {
    (alphabet as usize).pow(len as u32)
}

/// Concatenation on codes: the code of uw given code(u) and code(w).
pub fn concat_codes(u: u32, w: u32, alphabet: u32, w_len: usize) -> u32 {
    u * (alphabet as usize).pow(w_len as u32) as u32 + w
}

pub fn binomial(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// True when the letter is a y-letter for the given generator count.
pub fn is_y(letter: u8, n: u8) -> bool {
    letter >= n
}

/// (-1)^(number of y-letters strictly before position `pos`).
pub fn prefix_sign(letters: &[u8], pos: usize, n: u8) -> i8 {
    let ys = letters[..pos].iter().filter(|&&l| is_y(l, n)).count();
    if ys % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Reletters an x-word (base-n code) into the 2n-letter alphabet, either
/// keeping the letters as x or shifting them all to y.
pub fn widen_x_word(code: u32, n: u32, len: usize, to_y: bool) -> u32 {
    let letters = decode_word(code, n, len);
    let shift = if to_y { n as u8 } else { 0 };
    let widened: Vec<u8> = letters.iter().map(|&l| l + shift).collect();
    encode_word(&widened, 2 * n)
}

/// The sorted word codes of one bidegree block: all length r+s words over the
/// 2n-letter alphabet with exactly r x-letters and s y-letters.
#[derive(Clone, Debug)]
pub struct BlockWords {
    n: u32,
    r: usize,
    s: usize,
    codes: Vec<u32>,
}

impl BlockWords {
    pub fn new(n: u32, r: usize, s: usize) -> Self {
        let mut codes = Vec::with_capacity(binomial(r + s, r) * full_dim(n, r + s));
        gen_block(n, r, s, 0, &mut codes);
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        BlockWords { n, r, s, codes }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len_words(&self) -> usize {
        self.r + self.s
    }

    pub fn dim(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn code_at(&self, ordinal: usize) -> u32 {
        self.codes[ordinal]
    }

    pub fn ordinal_of(&self, code: u32) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }

    pub fn letters_at(&self, ordinal: usize) -> Vec<u8> {
        decode_word(self.codes[ordinal], 2 * self.n, self.r + self.s)
    }
}

fn gen_block(n: u32, r: usize, s: usize, prefix: u32, out: &mut Vec<u32>) {
    if r + s == 0 {
        out.push(prefix);
        return;
    }
    if r > 0 {
        for l in 0..n {
            gen_block(n, r - 1, s, prefix * 2 * n + l, out);
        }
    }
    if s > 0 {
        for l in n..2 * n {
            gen_block(n, r, s - 1, prefix * 2 * n + l, out);
        }
    }
}

/// Places relation rows (sparse over pair codes, alphabet L) at a given slot
/// inside length-`len` words: every row becomes one output row per choice of
/// left and right context words, spanning E^slot ⊗ ℛ ⊗ E^(len-slot-2) in the
/// full tensor power.
pub fn embed_full(rows: &[SparseVec], slot: usize, len: usize, alphabet: u32) -> Vec<SparseVec> {
    assert!(slot + 2 <= len, "slot out of range");
    let right_len = len - slot - 2;
    let left_dim = full_dim(alphabet, slot) as u32;
    let right_dim = full_dim(alphabet, right_len) as u32;
    let pair_shift = right_dim;
    let left_shift = alphabet.pow((len - slot) as u32);
    let mut out = Vec::with_capacity(rows.len() * (left_dim * right_dim) as usize);
    for u in 0..left_dim {
        for w in 0..right_dim {
            for row in rows {
                out.push(row.map_cols(|pc| u * left_shift + pc * pair_shift + w));
            }
        }
    }
    out
}

/// Places bihomogeneous relation rows (sparse over pair codes for the
/// 2n-letter alphabet, every pair of bidegree `pair_bidegree`) at slot 0 of a
/// target block: one output row per right-context word, with coordinates in
/// the target block's ordinals.
pub fn embed_block_slot0(
    rows: &[SparseVec],
    pair_bidegree: (usize, usize),
    target: &BlockWords,
    right: &BlockWords,
) -> Vec<SparseVec> {
    let n = target.n();
    let (pa, pb) = pair_bidegree;
    assert_eq!(target.r(), right.r() + pa, "x-degree mismatch");
    assert_eq!(target.s(), right.s() + pb, "y-degree mismatch");
    let shift = full_dim(2 * n, right.len_words()) as u32;
    let mut out = Vec::with_capacity(rows.len() * right.dim());
    for wi in 0..right.dim() {
        let w = right.code_at(wi);
        for row in rows {
            let mapped = row.map_cols(|pc| {
                let code = pc * shift + w;
                target
                    .ordinal_of(code)
                    .expect("placed word lands in the target block") as u32
            });
            out.push(mapped);
        }
    }
    out
}

/// Lifts rows from a sub-block by prepending one letter: ordinals of `src`
/// map to ordinals of `target` under w ↦ letter·w.
pub fn prefix_lift(rows: &[SparseVec], letter: u8, src: &BlockWords, target: &BlockWords) -> Vec<SparseVec> {
    let n = target.n();
    let shift = full_dim(2 * n, src.len_words()) as u32;
    let base = letter as u32 * shift;
    rows.iter()
        .map(|row| {
            row.map_cols(|ord| {
                let code = base + src.code_at(ord as usize);
                target
                    .ordinal_of(code)
                    .expect("lifted word lands in the target block") as u32
            })
        })
        .collect()
}

/// A sparse element of one tensor-power block together with the mode, mainly
/// a convenience for building test vectors from words.
pub fn word_vec(letters: &[u8], alphabet: u32, mode: Mode) -> SparseVec {
    SparseVec::unit(encode_word(letters, alphabet), mode)
}

pub fn scaled_word(letters: &[u8], alphabet: u32, coeff: Scalar) -> SparseVec {
    SparseVec::from_entries([(encode_word(letters, alphabet), coeff)])
}
