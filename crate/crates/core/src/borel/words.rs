//! Binary words coded by length-lexicographic index + 1; code 0 is a stutter.

use crate::error::{Error, Result};
use crate::kernel::Nat;

pub type Word = Vec<u8>;

/// Longest word with a code in `Nat`.
pub const MAX_WORD_LEN: usize = 62;

pub fn word_index(w: &[u8]) -> Nat {
    assert!(w.len() <= MAX_WORD_LEN, "word too long to code");
    let bits = w.iter().fold(0, |acc: Nat, &b| (acc << 1) | b as Nat);
    (1 << w.len()) - 1 + bits
}

pub fn word_of_index(i: Nat) -> Word {
    let len = (Nat::BITS - 1 - (i + 1).leading_zeros()) as usize;
    let bits = i + 1 - (1 << len);
    (0..len).rev().map(|k| ((bits >> k) & 1) as u8).collect()
}

pub fn word_code(w: &[u8]) -> Nat {
    word_index(w) + 1
}

pub fn decode_code(c: Nat) -> Option<Word> {
    (c != 0).then(|| word_of_index(c - 1))
}

pub fn format_word(w: &[u8]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

/// `words: e, 0, _, 1` with `_` for stutters.
pub fn format_stream(codes: &[Nat]) -> String {
    let items: Vec<String> = codes
        .iter()
        .map(|&c| decode_code(c).map_or_else(|| "_".into(), |w| format_word(&w)))
        .collect();
    format!("words: {}", items.join(", "))
}

pub fn parse_stream(text: &str) -> Result<Vec<Nat>> {
    let body = text.trim().strip_prefix("words:").ok_or(Error::Parse {
        pos: 0,
        msg: "expected `words:`".into(),
    })?;
    let offset = text.len() - body.len();
    let mut pos = offset;
    let mut out = Vec::new();
    if body.trim().is_empty() {
        return Ok(out);
    }
    for item in body.split(',') {
        let tok = item.trim();
        let c = match tok {
            "_" => 0,
            "e" => word_code(&[]),
            _ if !tok.is_empty()
                && tok.len() <= MAX_WORD_LEN
                && tok.bytes().all(|b| b == b'0' || b == b'1') =>
            {
                word_code(&tok.bytes().map(|b| b - b'0').collect::<Vec<_>>())
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("bad word `{tok}`"),
                })
            }
        };
        out.push(c);
        pos += item.len() + 1;
    }
    Ok(out)
}

/// All words of length `len` in lexicographic order.
pub fn words_of_length(len: usize) -> impl Iterator<Item = Word> {
    let first = (1u64 << len) - 1;
    (first..first + (1 << len)).map(word_of_index)
}
