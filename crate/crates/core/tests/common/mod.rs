//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use rand::RngCore;

/// Random source that replays a fixed list of `u64` words.
///
/// Uniform `f64` draws take the top 53 bits of one word, so the word
/// `k << 11` yields exactly `k · 2⁻⁵³`. Every word handed out is logged.
pub struct ScriptedRng {
    words: Vec<u64>,
    next: usize,
}

impl ScriptedRng {
    pub fn new(words: Vec<u64>) -> Self {
        Self { words, next: 0 }
    }

    /// Words for the given mantissas, each in `0..2⁵³`.
    pub fn from_mantissas(mantissas: &[u64]) -> Self {
        Self::new(mantissas.iter().map(|k| k << 11).collect())
    }

    pub fn consumed(&self) -> usize {
        self.next
    }

    /// The uniform value behind word `i`.
    pub fn uniform_at(&self, i: usize) -> f64 {
        word_to_unit(self.words[i])
    }
}

pub fn word_to_unit(word: u64) -> f64 {
    (word >> 11) as f64 / (1u64 << 53) as f64
}

impl RngCore for ScriptedRng {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        let w = *self
            .words
            .get(self.next)
            .expect("scripted random stream exhausted");
        self.next += 1;
        w
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Counts every ordered level pair in every column pair and checks balance.
pub fn brute_force_strength_two(levels: u32, rows: &[Vec<u32>]) -> bool {
    let a = levels as usize;
    let cols = rows.first().map_or(0, Vec::len);
    for c1 in 0..cols {
        for c2 in 0..cols {
            if c1 == c2 {
                continue;
            }
            let mut seen = std::collections::HashMap::new();
            for row in rows {
                *seen.entry((row[c1], row[c2])).or_insert(0usize) += 1;
            }
            if seen.len() != a * a {
                return false;
            }
            let first = *seen.values().next().unwrap();
            if seen.values().any(|&n| n != first) {
                return false;
            }
        }
    }
    true
}
