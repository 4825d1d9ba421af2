//! Tokenizers.
//!
//! `whitespace` splits on runs of Unicode whitespace.
//!
//! `treebank` is a self-contained rule set in the style of the Penn Treebank / CoreNLP
//! tokenizers. It starts from the whitespace chunks and, per chunk:
//!
//! 1. peels opening brackets and quotes (`( [ { " ' `` ` `` “ ‘ «`) off the front, one token each;
//! 2. peels closing brackets, quotes and `, ; : ! ?` off the back; a trailing `...` is one token;
//! 3. peels a trailing `.` unless the chunk is an abbreviation: a single letter (`J.`),
//!    a dotted form (`e.g.`, `U.S.`) or a listed short form (`Fig.`, `al.`, `vs.`, ...);
//! 4. splits the clitics `n't`, `'s`, `'re`, `'ve`, `'ll`, `'d`, `'m` from the word;
//! 5. splits a hyphen joining two alphanumeric runs when a digit follows it
//!    (`miR-146a` → `miR - 146a`, but `well-known` stays whole).

use super::TokenizerMode;
use crate::data::TokenSequence;

const OPENERS: &[char] = &['(', '[', '{', '"', '\'', '`', '“', '‘', '«'];
const CLOSERS: &[char] = &[')', ']', '}', '"', '\'', '”', '’', '»', ',', ';', ':', '!', '?'];
const ABBREVIATIONS: &[&str] = &[
    "al", "approx", "ca", "cf", "co", "dr", "eq", "eqs", "etc", "fig", "figs", "inc", "jr", "ltd", "mr", "mrs", "ms",
    "no", "prof", "ref", "refs", "resp", "sr", "st", "vol", "vs",
];
const CLITICS: &[&str] = &["n't", "'s", "'re", "'ve", "'ll", "'d", "'m"];

pub fn tokenize(text: &str, mode: TokenizerMode) -> TokenSequence {
    tokenize_str(text, mode).into_iter().collect()
}

pub fn tokenize_str(text: &str, mode: TokenizerMode) -> Vec<String> {
    match mode {
        TokenizerMode::Whitespace => text.split_whitespace().map(str::to_string).collect(),
        TokenizerMode::Treebank => {
            let mut out = Vec::new();
            for chunk in text.split_whitespace() {
                treebank_chunk(chunk, &mut out);
            }
            out
        }
    }
}

fn is_abbreviation(stem: &str) -> bool {
    if stem.is_empty() {
        return false;
    }
    let mut chars = stem.chars();
    let first = chars.next().unwrap();
    if chars.next().is_none() {
        return first.is_alphabetic();
    }
    if stem.contains('.') {
        return stem
            .split('.')
            .all(|p| !p.is_empty() && p.chars().all(char::is_alphabetic));
    }
    ABBREVIATIONS.contains(&stem.to_lowercase().as_str())
}

fn treebank_chunk(chunk: &str, out: &mut Vec<String>) {
    let mut s = chunk;
    while let Some(c) = s.chars().next() {
        if s.chars().count() > 1 && OPENERS.contains(&c) {
            out.push(c.to_string());
            s = &s[c.len_utf8()..];
        } else {
            break;
        }
    }

    let mut suffix: Vec<String> = Vec::new();
    loop {
        if s.len() > 3 && s.ends_with("...") {
            suffix.push("...".into());
            s = &s[..s.len() - 3];
            continue;
        }
        let Some(c) = s.chars().last() else { break };
        if s.chars().count() == 1 {
            break;
        }
        let stem = &s[..s.len() - c.len_utf8()];
        if CLOSERS.contains(&c) {
            suffix.push(c.to_string());
            s = stem;
        } else if c == '.' && !is_abbreviation(stem) {
            suffix.push(".".into());
            s = stem;
        } else {
            break;
        }
    }

    if !s.is_empty() {
        let (word, clitic) = split_clitic(s);
        split_hyphen_digit(word, out);
        if let Some(c) = clitic {
            out.push(c.to_string());
        }
    }
    out.extend(suffix.into_iter().rev());
}

fn split_clitic(s: &str) -> (&str, Option<&str>) {
    let lower = s.to_lowercase();
    for c in CLITICS {
        if lower.len() == s.len() && lower.ends_with(c) && s.len() > c.len() {
            let cut = s.len() - c.len();
            if s.is_char_boundary(cut) {
                return (&s[..cut], Some(&s[cut..]));
            }
        }
    }
    (s, None)
}

fn split_hyphen_digit(word: &str, out: &mut Vec<String>) {
    let chars: Vec<(usize, char)> = word.char_indices().collect();
    let mut start = 0;
    for (i, &(byte, c)) in chars.iter().enumerate() {
        if c != '-' || i == 0 || i + 1 >= chars.len() {
            continue;
        }
        let prev = chars[i - 1].1;
        let next = chars[i + 1].1;
        if prev.is_alphanumeric() && next.is_ascii_digit() {
            if byte > start {
                out.push(word[start..byte].to_string());
            }
            out.push("-".into());
            start = byte + 1;
        }
    }
    if start < word.len() {
        out.push(word[start..].to_string());
    }
}
