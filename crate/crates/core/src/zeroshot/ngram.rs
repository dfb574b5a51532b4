use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{LikelihoodBackend, Perturbation, ZeroShotError};

const BOS: u32 = 0;
const UNK: u32 = 1;
const UNK_CHAR: char = '\u{FFFD}';
const SYMBOL_BITS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NgramConfig {
    pub order: usize,
    pub add_k: f64,
}

impl Default for NgramConfig {
    fn default() -> Self {
        NgramConfig { order: 4, add_k: 0.01 }
    }
}

#[derive(Debug, Clone, Default)]
struct Context {
    total: u64,
    /// Sorted by symbol.
    next: Vec<(u32, u64)>,
}

/// Character n-gram model with add-k smoothing over a closed vocabulary
/// plus an unknown symbol.
#[derive(Debug, Clone)]
pub struct NgramBackend {
    order: usize,
    add_k: f64,
    /// `chars[i]` is symbol `i + 2`.
    chars: Vec<char>,
    ids: HashMap<char, u32>,
    contexts: HashMap<u64, Context>,
    corpus_digest: String,
}

impl NgramBackend {
    pub fn train<'a>(texts: impl IntoIterator<Item = &'a str>, cfg: &NgramConfig) -> Result<Self, ZeroShotError> {
        if !(1..=4).contains(&cfg.order) {
            return Err(ZeroShotError::InvalidConfig("n-gram order must be in 1..=4".into()));
        }
        if cfg.add_k.is_nan() || cfg.add_k <= 0.0 {
            return Err(ZeroShotError::InvalidConfig("add_k must be > 0".into()));
        }
        let texts: Vec<&str> = texts.into_iter().collect();
        let mut hasher = Sha256::new();
        let mut charset = BTreeSet::new();
        for t in &texts {
            hasher.update((t.len() as u64).to_le_bytes());
            hasher.update(t.as_bytes());
            charset.extend(t.chars());
        }
        let max_chars = (1usize << SYMBOL_BITS) - 2;
        let chars: Vec<char> = charset.into_iter().take(max_chars).collect();
        let ids = chars.iter().enumerate().map(|(i, &c)| (c, i as u32 + 2)).collect();
        let mut model = NgramBackend {
            order: cfg.order,
            add_k: cfg.add_k,
            chars,
            ids,
            contexts: HashMap::new(),
            corpus_digest: hex::encode(hasher.finalize()),
        };
        let mut counts: HashMap<u64, HashMap<u32, u64>> = HashMap::new();
        for t in &texts {
            let symbols = model.encode(t);
            for (i, &s) in symbols.iter().enumerate() {
                *counts.entry(model.context_key(&symbols, i)).or_default().entry(s).or_default() += 1;
            }
        }
        model.contexts = counts
            .into_iter()
            .map(|(key, next)| {
                let mut next: Vec<(u32, u64)> = next.into_iter().collect();
                next.sort_unstable();
                let total = next.iter().map(|(_, c)| c).sum();
                (key, Context { total, next })
            })
            .collect();
        Ok(model)
    }

    pub fn corpus_digest(&self) -> &str {
        &self.corpus_digest
    }

    /// Prediction vocabulary size, unknown symbol included.
    pub fn vocab_size(&self) -> usize {
        self.chars.len() + 1
    }

    fn encode(&self, text: &str) -> Vec<u32> {
        text.chars().map(|c| self.ids.get(&c).copied().unwrap_or(UNK)).collect()
    }

    fn symbol_char(&self, s: u32) -> char {
        if s == UNK {
            UNK_CHAR
        } else {
            self.chars[(s - 2) as usize]
        }
    }

    /// Packs the `order - 1` symbols before position `i`, BOS-padded.
    fn context_key(&self, symbols: &[u32], i: usize) -> u64 {
        let mut key = 0u64;
        for back in (1..self.order).rev() {
            let s = if i >= back { symbols[i - back] } else { BOS };
            key = (key << SYMBOL_BITS) | u64::from(s);
        }
        key
    }

    fn log_prob(&self, ctx: Option<&Context>, symbol: u32) -> f64 {
        let v = self.vocab_size() as f64;
        let (count, total) = match ctx {
            Some(c) => (
                c.next
                    .binary_search_by_key(&symbol, |&(s, _)| s)
                    .map_or(0, |i| c.next[i].1),
                c.total,
            ),
            None => (0, 0),
        };
        ((count as f64 + self.add_k) / (total as f64 + self.add_k * v)).ln()
    }

    /// Full next-symbol distribution after `prefix`, indexed by symbol id
    /// minus one (index 0 is the unknown symbol).
    pub fn distribution(&self, prefix: &str) -> Vec<f64> {
        let mut symbols = self.encode(prefix);
        let i = symbols.len();
        symbols.push(UNK);
        let ctx = self.contexts.get(&self.context_key(&symbols, i));
        (1..=self.vocab_size() as u32).map(|s| self.log_prob(ctx, s).exp()).collect()
    }

    /// Draws from `(count + k) / (total + kV)` as a mixture of the empirical
    /// counts and the uniform distribution.
    fn sample_symbol(&self, ctx: Option<&Context>, rng: &mut ChaCha8Rng) -> u32 {
        let v = self.vocab_size() as f64;
        let total = ctx.map_or(0, |c| c.total);
        let smooth = self.add_k * v;
        let u: f64 = rng.random::<f64>() * (total as f64 + smooth);
        if let (Some(c), true) = (ctx, u < total as f64) {
            let mut target = u.floor() as u64;
            for &(s, n) in &c.next {
                if target < n {
                    return s;
                }
                target -= n;
            }
            return c.next.last().expect("non-empty context").0;
        }
        1 + rng.random_range(0..self.vocab_size() as u32)
    }
}

impl LikelihoodBackend for NgramBackend {
    fn name(&self) -> &str {
        "char-ngram"
    }

    fn log_likelihood(&self, code: &str) -> Result<f64, ZeroShotError> {
        if code.is_empty() {
            return Err(ZeroShotError::EmptyInput);
        }
        let symbols = self.encode(code);
        Ok((0..symbols.len())
            .map(|i| self.log_prob(self.contexts.get(&self.context_key(&symbols, i)), symbols[i]))
            .sum())
    }

    /// Each position is resampled from the model's conditional given the
    /// original prefix, and scored under that same conditional.
    fn sample_perturbations(&self, code: &str, k: usize, seed: u64) -> Result<Vec<Perturbation>, ZeroShotError> {
        if code.is_empty() {
            return Err(ZeroShotError::EmptyInput);
        }
        let symbols = self.encode(code);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut texts = vec![String::with_capacity(code.len()); k];
        let mut logliks = vec![0.0; k];
        for i in 0..symbols.len() {
            let ctx = self.contexts.get(&self.context_key(&symbols, i));
            for (text, ll) in texts.iter_mut().zip(logliks.iter_mut()) {
                let s = self.sample_symbol(ctx, &mut rng);
                text.push(self.symbol_char(s));
                *ll += self.log_prob(ctx, s);
            }
        }
        Ok(texts
            .into_iter()
            .zip(logliks)
            .map(|(text, log_likelihood)| Perturbation {
                text: Some(text),
                log_likelihood,
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributions_are_normalized() {
        let m = NgramBackend::train(["def f(x):\n    return x\n", "print(1)\n"], &NgramConfig::default()).unwrap();
        for prefix in ["", "de", "def f(", "zzz", "ret"] {
            let total: f64 = m.distribution(prefix).iter().sum();
            assert!((total - 1.0).abs() < 1e-9, "{prefix}: {total}");
        }
    }

    #[test]
    fn seen_text_beats_unseen() {
        let m = NgramBackend::train(["abcabcabcabc"], &NgramConfig::default()).unwrap();
        assert!(m.log_likelihood("abcabc").unwrap() > m.log_likelihood("cbacba").unwrap());
        assert!(matches!(m.log_likelihood(""), Err(ZeroShotError::EmptyInput)));
    }

    #[test]
    fn perturbations_are_seeded() {
        let m = NgramBackend::train(["for i in range(10):\n    pass\n"], &NgramConfig::default()).unwrap();
        let a = m.sample_perturbations("for i in x", 8, 3).unwrap();
        let b = m.sample_perturbations("for i in x", 8, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        for p in &a {
            let text = p.text.as_deref().unwrap();
            assert_eq!(text.chars().count(), "for i in x".len());
        }
    }
}
