//! Reduced words for free groups.
//!
//! Generator indices come in pairs: index `2i` is the i-th letter, `2i + 1`
//! its inverse, so `idx ^ 1` flips a letter. A word is canonical iff no
//! adjacent pair cancels.

/// Appends a letter, cancelling against the tail if possible.
pub fn push_reduced(word: &mut Vec<u16>, letter: u16) {
    if word.last() == Some(&(letter ^ 1)) {
        word.pop();
    } else {
        word.push(letter);
    }
}

/// Reduces an arbitrary letter sequence to canonical form.
pub fn reduce(letters: impl IntoIterator<Item = u16>) -> Vec<u16> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

/// Product of two reduced words (concatenate, cancel at the seam).
pub fn concat(lhs: &[u16], rhs: &[u16]) -> Vec<u16> {
    let mut out = Vec::with_capacity(lhs.len() + rhs.len());
    out.extend_from_slice(lhs);
    for &l in rhs {
        push_reduced(&mut out, l);
    }
    out
}

/// Inverse of a reduced word: reverse and flip every letter.
pub fn invert(word: &[u16]) -> Vec<u16> {
    word.iter().rev().map(|&l| l ^ 1).collect()
}

pub fn is_reduced(word: &[u16]) -> bool {
    word.windows(2).all(|w| w[0] != w[1] ^ 1)
}
