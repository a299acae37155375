//! Token vocabulary layout.
//!
//! The vocabulary is symbolic: harmfulness is carried by per-category marker
//! tokens so ground truth is exact, and the refusal token is pinned to
//! index 40. Layout (K >= 70, default 96):
//!
//! ```text
//!   0        PAD
//!   1        BOS
//!   2..=15   ANSWER_PREFIX[c], c in 1..=14
//!   16..=29  HARM_MARKER[c]
//!   30..=39  response filler (refusal template body)
//!   40       REFUSAL_TOKEN
//!   41..=54  BENIGN_MARKER[c]
//!   55       REFUSE_DIRECTIVE
//!   56..=68  prompt tokens (two shared + eleven variant tokens)
//!   69..K-1  query context tokens
//! ```

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number of harmful/benign categories.
pub const NUM_CATEGORIES: u8 = 14;

/// Refusal first-token index, fixed by convention.
pub const REFUSAL_TOKEN: u32 = 40;

/// Response sequences (answer and refusal templates) are this long.
pub const RESPONSE_LEN: usize = 8;

/// Query token sequences (context + marker) span this length range.
pub const QUERY_LEN_MIN: usize = 4;
pub const QUERY_LEN_MAX: usize = 12;

const PAD: u32 = 0;
const BOS: u32 = 1;
const ANSWER_PREFIX_BASE: u32 = 1; // +c -> 2..=15
const HARM_MARKER_BASE: u32 = 15; // +c -> 16..=29
const RESP_FILLER_BASE: u32 = 30; // ..=39
const BENIGN_MARKER_BASE: u32 = 40; // +c -> 41..=54
const REFUSE_DIRECTIVE: u32 = 55;
const PROMPT_SHARED_A: u32 = 56;
const PROMPT_SHARED_B: u32 = 57;
const PROMPT_VARIANT_BASE: u32 = 58; // +v -> 58..=68, v in 0..=10
const CONTEXT_BASE: u32 = 69;

/// Token vocabulary with reserved-index accessors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    size: u32,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Vocabulary::new(96).expect("default size is valid")
    }
}

impl Vocabulary {
    pub fn new(size: usize) -> Result<Self> {
        // 28 markers + 14 answer prefixes + 16 structural tokens at minimum,
        // plus at least one context token past the reserved region.
        if size < 2 * 14 + 14 + 16 {
            return Err(Error::Corpus(format!(
                "vocab size {size} below reserved minimum 58"
            )));
        }
        if (size as u32) <= CONTEXT_BASE {
            return Err(Error::Corpus(format!(
                "vocab size {size} leaves no context tokens (need > {CONTEXT_BASE})"
            )));
        }
        Ok(Vocabulary { size: size as u32 })
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn pad(&self) -> u32 {
        PAD
    }

    pub fn bos(&self) -> u32 {
        BOS
    }

    pub fn refusal_token(&self) -> u32 {
        REFUSAL_TOKEN
    }

    pub fn refuse_directive(&self) -> u32 {
        REFUSE_DIRECTIVE
    }

    pub fn answer_prefix(&self, category: u8) -> u32 {
        assert!((1..=NUM_CATEGORIES).contains(&category));
        ANSWER_PREFIX_BASE + category as u32
    }

    pub fn harm_marker(&self, category: u8) -> u32 {
        assert!((1..=NUM_CATEGORIES).contains(&category));
        HARM_MARKER_BASE + category as u32
    }

    pub fn benign_marker(&self, category: u8) -> u32 {
        assert!((1..=NUM_CATEGORIES).contains(&category));
        BENIGN_MARKER_BASE + category as u32
    }

    pub fn is_harm_marker(&self, token: u32) -> bool {
        (HARM_MARKER_BASE + 1..=HARM_MARKER_BASE + NUM_CATEGORIES as u32).contains(&token)
    }

    pub fn is_benign_marker(&self, token: u32) -> bool {
        (BENIGN_MARKER_BASE + 1..=BENIGN_MARKER_BASE + NUM_CATEGORIES as u32).contains(&token)
    }

    pub fn is_answer_prefix(&self, token: u32) -> bool {
        (ANSWER_PREFIX_BASE + 1..=ANSWER_PREFIX_BASE + NUM_CATEGORIES as u32).contains(&token)
    }

    /// Query context tokens (everything past the reserved region).
    pub fn context_tokens(&self) -> std::ops::Range<u32> {
        CONTEXT_BASE..self.size
    }

    /// The designated extraction prompt `t`.
    pub fn prompt_extraction(&self) -> Vec<u32> {
        vec![PROMPT_SHARED_A, PROMPT_SHARED_B, PROMPT_VARIANT_BASE]
    }

    /// The refusal-directive prompt: `t` plus the appended directive token.
    pub fn prompt_directive(&self) -> Vec<u32> {
        let mut p = self.prompt_extraction();
        p.push(REFUSE_DIRECTIVE);
        p
    }

    /// The fixed pool of ten fine-tuning prompts, each one variant token
    /// away from `t`.
    pub fn prompt_pool(&self) -> Vec<Vec<u32>> {
        (1..=10u32)
            .map(|v| vec![PROMPT_SHARED_A, PROMPT_SHARED_B, PROMPT_VARIANT_BASE + v])
            .collect()
    }

    /// Refusal response template: refusal token then fixed filler.
    pub fn refusal_response(&self) -> Vec<u32> {
        let mut r = vec![REFUSAL_TOKEN];
        r.extend((0..RESPONSE_LEN as u32 - 1).map(|j| RESP_FILLER_BASE + j));
        r
    }

    /// Per-category templated answer response: the category's answer prefix
    /// then seven context-region tokens keyed by the category.
    pub fn answer_response(&self, category: u8) -> Vec<u32> {
        let n_ctx = self.size - CONTEXT_BASE;
        let mut r = vec![self.answer_prefix(category)];
        r.extend(
            (1..RESPONSE_LEN as u32).map(|j| CONTEXT_BASE + (category as u32 * 5 + 3 * j) % n_ctx),
        );
        r
    }
}

/// All categories, 1..=14.
pub fn categories() -> impl Iterator<Item = u8> {
    1..=NUM_CATEGORIES
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn reserved_indices_are_distinct() {
        let v = Vocabulary::default();
        let mut seen = HashSet::new();
        let mut reserved = vec![v.pad(), v.bos(), v.refusal_token(), v.refuse_directive()];
        for c in categories() {
            reserved.push(v.answer_prefix(c));
            reserved.push(v.harm_marker(c));
            reserved.push(v.benign_marker(c));
        }
        reserved.extend(v.prompt_directive());
        for p in v.prompt_pool() {
            reserved.extend(p);
        }
        for tok in &reserved {
            assert!(*tok < v.size() as u32);
        }
        for tok in reserved {
            seen.insert(tok);
        }
        // 4 singletons + 42 category tokens + 13 prompt tokens
        assert_eq!(seen.len(), 4 + 42 + 13);
        assert!(!seen.iter().any(|t| v.context_tokens().contains(t)));
    }

    #[test]
    fn refusal_token_pinned_to_40() {
        assert_eq!(Vocabulary::default().refusal_token(), 40);
    }

    #[test]
    fn directive_prompt_extends_extraction_prompt_by_one() {
        let v = Vocabulary::default();
        let t = v.prompt_extraction();
        let tt = v.prompt_directive();
        assert_eq!(&tt[..t.len()], &t[..]);
        assert_eq!(tt.len(), t.len() + 1);
        assert_eq!(*tt.last().unwrap(), v.refuse_directive());
    }

    #[test]
    fn pool_has_ten_distinct_prompts() {
        let v = Vocabulary::default();
        let pool = v.prompt_pool();
        assert_eq!(pool.len(), 10);
        let distinct: HashSet<_> = pool.iter().collect();
        assert_eq!(distinct.len(), 10);
        assert!(!pool.contains(&v.prompt_extraction()));
    }

    #[test]
    fn templates_have_fixed_length_and_leading_token() {
        let v = Vocabulary::default();
        assert_eq!(v.refusal_response().len(), RESPONSE_LEN);
        assert_eq!(v.refusal_response()[0], REFUSAL_TOKEN);
        for c in categories() {
            let r = v.answer_response(c);
            assert_eq!(r.len(), RESPONSE_LEN);
            assert_eq!(r[0], v.answer_prefix(c));
            assert!(r[1..].iter().all(|t| v.context_tokens().contains(t)));
        }
    }

    #[test]
    fn undersized_vocab_rejected() {
        assert!(Vocabulary::new(57).is_err());
        assert!(Vocabulary::new(69).is_err());
        assert!(Vocabulary::new(70).is_ok());
    }
}
