use super::sample::Language;

/// Counts lexical tokens: whitespace separates tokens, and every ASCII
/// punctuation or operator character (except `_`) is a token of its own.
///
/// The language argument is accepted for interface symmetry; the rule is
/// the same for every language.
pub fn count_tokens(code: &str, _language: &Language) -> usize {
    let mut count = 0;
    let mut in_word = false;
    for c in code.chars() {
        if c.is_whitespace() {
            in_word = false;
        } else if c.is_ascii_punctuation() && c != '_' {
            count += 1;
            in_word = false;
        } else if !in_word {
            count += 1;
            in_word = true;
        }
    }
    count
}
