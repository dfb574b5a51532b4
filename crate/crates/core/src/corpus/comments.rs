//! String-aware comment and docstring removal.
//!
//! Each supported language gets a small lexical scanner that knows just
//! enough about string literals to avoid treating `"// not a comment"` as a
//! comment. After removal, lines that became blank are deleted, touched lines
//! lose trailing whitespace, and a block comment sitting between two tokens is
//! replaced by a single space.

use super::sample::{CodeSample, Language};
use super::CorpusError;

pub fn supports(language: &Language) -> bool {
    !language.is_other()
}

pub fn strip_comments(sample: &CodeSample) -> Result<CodeSample, CorpusError> {
    let code = strip_code(&sample.code, &sample.language)?;
    Ok(CodeSample {
        code,
        ..sample.clone()
    })
}

pub fn strip_code(code: &str, language: &Language) -> Result<String, CorpusError> {
    let style = match language {
        Language::Python => return Ok(strip_python(code)),
        Language::Ruby => return Ok(strip_ruby(code)),
        Language::Java => CStyle {
            triple_quote_blocks: true,
            ..CStyle::default()
        },
        Language::Cpp => CStyle {
            cpp_raw_strings: true,
            digit_separators: true,
            ..CStyle::default()
        },
        Language::CSharp => CStyle {
            verbatim_strings: true,
            triple_quote_blocks: true,
            ..CStyle::default()
        },
        Language::Go => CStyle {
            backtick_strings: true,
            ..CStyle::default()
        },
        Language::JavaScript => CStyle {
            backtick_strings: true,
            regex_literals: true,
            ..CStyle::default()
        },
        Language::Php => CStyle {
            hash_comments: true,
            multiline_strings: true,
            ..CStyle::default()
        },
        Language::Other(tag) => {
            return Err(CorpusError::NoCommentGrammar {
                language: tag.clone(),
            })
        }
    };
    Ok(strip_c_like(code, style))
}

/// Output buffer that remembers which lines had something removed.
struct Emitter {
    out: String,
    touched: Vec<bool>,
}

impl Emitter {
    fn new(capacity: usize) -> Self {
        Emitter {
            out: String::with_capacity(capacity),
            touched: vec![false],
        }
    }

    fn push_str(&mut self, s: &str) {
        for _ in s.bytes().filter(|&b| b == b'\n') {
            self.touched.push(false);
        }
        self.out.push_str(s);
    }

    fn push(&mut self, c: char) {
        if c == '\n' {
            self.touched.push(false);
        }
        self.out.push(c);
    }

    fn touch(&mut self) {
        if let Some(last) = self.touched.last_mut() {
            *last = true;
        }
    }

    fn at_gap(&self) -> bool {
        matches!(self.out.as_bytes().last(), None | Some(b' ' | b'\t' | b'\n'))
    }

    fn finish(self) -> String {
        let mut lines = Vec::with_capacity(self.touched.len());
        for (line, touched) in self.out.split('\n').zip(self.touched) {
            if touched {
                let trimmed = line.trim_end();
                if !trimmed.is_empty() {
                    lines.push(trimmed);
                }
            } else {
                lines.push(line);
            }
        }
        lines.join("\n")
    }
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b >= 0x80
}

/// Index just past a quoted literal starting at `open` (the quote itself).
/// Backslash escapes the next byte. Unless `multiline`, an unescaped newline
/// ends the literal without being consumed.
fn scan_quoted(bytes: &[u8], open: usize, quote: u8, multiline: bool) -> usize {
    let mut i = open + 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'\n' if !multiline => return i,
            b if b == quote => return i + 1,
            _ => i += 1,
        }
    }
    bytes.len()
}

fn find(bytes: &[u8], from: usize, needle: &[u8]) -> Option<usize> {
    if from >= bytes.len() {
        return None;
    }
    bytes[from..]
        .windows(needle.len())
        .position(|w| w == needle)
        .map(|p| p + from)
}

#[derive(Debug, Clone, Copy, Default)]
struct CStyle {
    hash_comments: bool,
    backtick_strings: bool,
    regex_literals: bool,
    verbatim_strings: bool,
    triple_quote_blocks: bool,
    cpp_raw_strings: bool,
    digit_separators: bool,
    multiline_strings: bool,
}

fn strip_c_like(src: &str, style: CStyle) -> String {
    let bytes = src.as_bytes();
    let n = bytes.len();
    let mut em = Emitter::new(n);
    let mut seg = 0;
    let mut i = 0;
    // Last significant byte of code (strings count as `"`), used for the
    // regex-vs-division decision.
    let mut last_sig: Option<u8> = None;

    while i < n {
        let b = bytes[i];
        let next = bytes.get(i + 1).copied();
        match b {
            b'/' if next == Some(b'/') => {
                em.push_str(&src[seg..i]);
                let end = find(bytes, i, b"\n").unwrap_or(n);
                em.touch();
                i = end;
                seg = i;
            }
            b'#' if style.hash_comments && next != Some(b'[') => {
                em.push_str(&src[seg..i]);
                let end = find(bytes, i, b"\n").unwrap_or(n);
                em.touch();
                i = end;
                seg = i;
            }
            b'/' if next == Some(b'*') => {
                em.push_str(&src[seg..i]);
                let end = find(bytes, i + 2, b"*/").map(|p| p + 2).unwrap_or(n);
                em.touch();
                if bytes[i..end].contains(&b'\n') {
                    em.push('\n');
                    em.touch();
                }
                i = end;
                if em.at_gap() {
                    while i < n && matches!(bytes[i], b' ' | b'\t') {
                        i += 1;
                    }
                } else if i < n && !bytes[i].is_ascii_whitespace() {
                    em.push(' ');
                }
                seg = i;
            }
            b'/' if style.regex_literals
                && matches!(
                    last_sig,
                    None | Some(
                        b'(' | b',' | b'=' | b':' | b'[' | b'!' | b'&' | b'|' | b'?' | b'{'
                            | b'}' | b';' | b'+' | b'-' | b'*' | b'%' | b'<' | b'>' | b'~'
                            | b'^'
                    )
                ) =>
            {
                i = scan_regex(bytes, i);
                last_sig = Some(b'/');
            }
            b'"' => {
                let prev = if i > 0 { Some(bytes[i - 1]) } else { None };
                i = if style.triple_quote_blocks && bytes[i..].starts_with(b"\"\"\"") {
                    find(bytes, i + 3, b"\"\"\"").map(|p| p + 3).unwrap_or(n)
                } else if style.verbatim_strings && prev == Some(b'@') {
                    scan_verbatim(bytes, i)
                } else if style.cpp_raw_strings && prev == Some(b'R') && is_raw_prefix(bytes, i - 1)
                {
                    scan_cpp_raw(bytes, i)
                } else {
                    scan_quoted(bytes, i, b'"', style.multiline_strings)
                };
                last_sig = Some(b'"');
            }
            b'\'' => {
                let prev = if i > 0 { bytes[i - 1] } else { b' ' };
                if style.digit_separators && prev.is_ascii_alphanumeric() {
                    i += 1;
                } else {
                    i = scan_quoted(bytes, i, b'\'', style.multiline_strings);
                    last_sig = Some(b'"');
                }
            }
            b'`' if style.backtick_strings => {
                i = if style.regex_literals {
                    scan_quoted(bytes, i, b'`', true)
                } else {
                    find(bytes, i + 1, b"`").map(|p| p + 1).unwrap_or(n)
                };
                last_sig = Some(b'"');
            }
            _ => {
                if !b.is_ascii_whitespace() {
                    last_sig = Some(b);
                }
                i += 1;
            }
        }
    }
    em.push_str(&src[seg..n.max(seg)]);
    em.finish()
}

/// `R` at `r` starts a raw string when it stands alone or after an
/// encoding prefix (`u8R`, `LR`, `uR`, `UR`).
fn is_raw_prefix(bytes: &[u8], r: usize) -> bool {
    let before = &bytes[..r];
    let prefix_len = [&b"u8"[..], b"L", b"u", b"U"]
        .iter()
        .find(|p| before.ends_with(p))
        .map_or(0, |p| p.len());
    let start = r - prefix_len;
    start == 0 || !is_ident_byte(bytes[start - 1])
}

fn scan_cpp_raw(bytes: &[u8], open: usize) -> usize {
    let Some(paren) = find(bytes, open + 1, b"(") else {
        return scan_quoted(bytes, open, b'"', false);
    };
    let delim = &bytes[open + 1..paren];
    if delim.len() > 16 || delim.iter().any(|b| b.is_ascii_whitespace() || *b == b'\\') {
        return scan_quoted(bytes, open, b'"', false);
    }
    let mut closing = Vec::with_capacity(delim.len() + 2);
    closing.push(b')');
    closing.extend_from_slice(delim);
    closing.push(b'"');
    find(bytes, paren + 1, &closing)
        .map(|p| p + closing.len())
        .unwrap_or(bytes.len())
}

fn scan_verbatim(bytes: &[u8], open: usize) -> usize {
    let mut i = open + 1;
    while i < bytes.len() {
        if bytes[i] == b'"' {
            if bytes.get(i + 1) == Some(&b'"') {
                i += 2;
                continue;
            }
            return i + 1;
        }
        i += 1;
    }
    bytes.len()
}

fn scan_regex(bytes: &[u8], open: usize) -> usize {
    let mut i = open + 1;
    let mut in_class = false;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'\n' => return i,
            b'[' => {
                in_class = true;
                i += 1
            }
            b']' => {
                in_class = false;
                i += 1
            }
            b'/' if !in_class => return i + 1,
            _ => i += 1,
        }
    }
    bytes.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PyLineKind {
    /// Nothing but blank or comment lines so far.
    ModuleStart,
    /// `def`/`class` header ending in `:`.
    Header,
    /// A bare string statement that was removed as a docstring.
    Docstring,
    Other,
}

/// Valid Python string prefixes, lowercase.
const PY_PREFIXES: &[&str] = &["r", "u", "b", "f", "br", "rb", "fr", "rf"];

fn python_prefix_start(bytes: &[u8], quote: usize) -> usize {
    for len in [2usize, 1] {
        if quote < len {
            continue;
        }
        let start = quote - len;
        let candidate = std::str::from_utf8(&bytes[start..quote])
            .unwrap_or("")
            .to_ascii_lowercase();
        if PY_PREFIXES.contains(&candidate.as_str())
            && (start == 0 || !is_ident_byte(bytes[start - 1]))
        {
            return start;
        }
    }
    quote
}

fn scan_python_string(bytes: &[u8], quote_at: usize) -> usize {
    let q = bytes[quote_at];
    let triple = bytes.get(quote_at + 1) == Some(&q) && bytes.get(quote_at + 2) == Some(&q);
    if !triple {
        return scan_quoted(bytes, quote_at, q, false);
    }
    let mut i = quote_at + 3;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b if b == q && bytes.get(i + 1) == Some(&q) && bytes.get(i + 2) == Some(&q) => {
                return i + 3
            }
            _ => i += 1,
        }
    }
    bytes.len()
}

/// Removes `#` comments and docstrings. A docstring is a statement made of a
/// single string literal that opens the module, directly follows a
/// `def`/`class` header, or directly follows another docstring.
fn strip_python(src: &str) -> String {
    let bytes = src.as_bytes();
    let n = bytes.len();
    let mut em = Emitter::new(n);
    let mut seg = 0;
    let mut i = 0;

    let mut depth: i32 = 0;
    let mut prev_kind = PyLineKind::ModuleStart;
    // State of the current logical line.
    let mut line_has_code = false;
    let mut first_code_at = 0usize;
    let mut line_is_docstring = false;
    let mut first_word = String::new();
    let mut collecting_word = true;
    let mut last_sig: u8 = b' ';

    while i < n {
        let b = bytes[i];
        match b {
            b'#' => {
                em.push_str(&src[seg..i]);
                i = find(bytes, i, b"\n").unwrap_or(n);
                em.touch();
                seg = i;
            }
            b'"' | b'\'' => {
                let start = python_prefix_start(bytes, i);
                let end = scan_python_string(bytes, i);
                let at_stmt_start =
                    depth == 0 && (!line_has_code || (start < i && first_code_at == start));
                let mut bare = false;
                if at_stmt_start {
                    let mut j = end;
                    while j < n && matches!(bytes[j], b' ' | b'\t') {
                        j += 1;
                    }
                    bare = j >= n || matches!(bytes[j], b'\n' | b'\r' | b'#');
                }
                let docstring_slot = matches!(
                    prev_kind,
                    PyLineKind::ModuleStart | PyLineKind::Header | PyLineKind::Docstring
                );
                if bare && docstring_slot {
                    em.push_str(&src[seg..start]);
                    em.touch();
                    line_is_docstring = true;
                    seg = end;
                } else {
                    line_has_code = true;
                    collecting_word = false;
                    last_sig = b'"';
                }
                i = end;
            }
            b'\\' if bytes.get(i + 1) == Some(&b'\n') => {
                i += 2;
            }
            b'\n' => {
                if depth <= 0 {
                    if line_has_code {
                        let header = last_sig == b':'
                            && matches!(first_word.as_str(), "def" | "class" | "async");
                        prev_kind = if header {
                            PyLineKind::Header
                        } else {
                            PyLineKind::Other
                        };
                    } else if line_is_docstring {
                        prev_kind = PyLineKind::Docstring;
                    }
                    depth = 0;
                    line_has_code = false;
                    line_is_docstring = false;
                    first_word.clear();
                    collecting_word = true;
                    last_sig = b' ';
                }
                i += 1;
            }
            _ => {
                match b {
                    b'(' | b'[' | b'{' => depth += 1,
                    b')' | b']' | b'}' => depth -= 1,
                    _ => {}
                }
                if !b.is_ascii_whitespace() {
                    if !line_has_code {
                        first_code_at = i;
                    }
                    line_has_code = true;
                    last_sig = b;
                    if collecting_word {
                        if is_ident_byte(b) {
                            first_word.push(b as char);
                        } else {
                            collecting_word = false;
                        }
                    }
                } else if !first_word.is_empty() {
                    collecting_word = false;
                }
                i += 1;
            }
        }
    }
    em.push_str(&src[seg..n.max(seg)]);
    em.finish()
}

fn strip_ruby(src: &str) -> String {
    let bytes = src.as_bytes();
    let n = bytes.len();
    let mut em = Emitter::new(n);
    let mut seg = 0;
    let mut i = 0;
    while i < n {
        let line_start = i == 0 || bytes[i - 1] == b'\n';
        match bytes[i] {
            b'=' if line_start && bytes[i..].starts_with(b"=begin") => {
                em.push_str(&src[seg..i]);
                let mut end = n;
                let mut search = i;
                while let Some(p) = find(bytes, search, b"\n=end") {
                    let after = p + 5;
                    if after >= n || bytes[after].is_ascii_whitespace() {
                        end = find(bytes, after, b"\n").unwrap_or(n);
                        break;
                    }
                    search = p + 1;
                }
                em.touch();
                i = end;
                seg = i;
            }
            b'#' => {
                em.push_str(&src[seg..i]);
                i = find(bytes, i, b"\n").unwrap_or(n);
                em.touch();
                seg = i;
            }
            q @ (b'"' | b'\'') => i = scan_quoted(bytes, i, q, true),
            _ => i += 1,
        }
    }
    em.push_str(&src[seg..n.max(seg)]);
    em.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn py(s: &str) -> String {
        strip_code(s, &Language::Python).unwrap()
    }

    fn java(s: &str) -> String {
        strip_code(s, &Language::Java).unwrap()
    }

    fn cpp(s: &str) -> String {
        strip_code(s, &Language::Cpp).unwrap()
    }

    #[test]
    fn python_line_comment() {
        assert_eq!(py("x = 1  # set x"), "x = 1");
    }

    #[test]
    fn python_module_docstring() {
        assert_eq!(py("\"\"\"doc\"\"\"\ndef f(): pass"), "def f(): pass");
    }

    #[test]
    fn python_function_docstring_and_strings_kept() {
        let src = "def f(a):\n    \"\"\"Doc.\n\n    More.\n    \"\"\"\n    s = \"# not a comment\"\n    return s  # bye\n";
        assert_eq!(py(src), "def f(a):\n    s = \"# not a comment\"\n    return s\n");
    }

    #[test]
    fn python_non_docstring_bare_string_kept() {
        let src = "x = 1\n'kept'\n";
        assert_eq!(py(src), src);
    }

    #[test]
    fn python_prefixed_docstring() {
        assert_eq!(py("class A:\n    r'''raw doc'''\n    x = 1\n"), "class A:\n    x = 1\n");
    }

    #[test]
    fn python_untouched_blank_lines_survive() {
        let src = "a = 1\n\nb = 2\n";
        assert_eq!(py(src), src);
    }

    #[test]
    fn java_block_and_line_comment() {
        assert_eq!(java("/* a */ int x; // b"), "int x;");
    }

    #[test]
    fn java_comment_between_tokens_keeps_separation() {
        assert_eq!(java("int/* c */x = 1;"), "int x = 1;");
        assert_eq!(java("int /* c */ x = 1;"), "int x = 1;");
    }

    #[test]
    fn java_strings_are_preserved() {
        let src = "String s = \"// not /* a */ comment\"; char c = '\\'';\n";
        assert_eq!(java(src), src);
    }

    #[test]
    fn multiline_block_comment_lines_deleted() {
        let src = "class A {\n    /**\n     * Javadoc.\n     */\n    int x;\n}\n";
        assert_eq!(java(src), "class A {\n    int x;\n}\n");
    }

    #[test]
    fn cpp_raw_string_and_digit_separator() {
        let src = "auto s = R\"x(// in raw)x\"; int n = 1'000; // c\n";
        assert_eq!(cpp(src), "auto s = R\"x(// in raw)x\"; int n = 1'000;\n");
    }

    #[test]
    fn other_language_rejected() {
        let err = strip_code("x", &Language::Other("cobol".into())).unwrap_err();
        assert!(err.to_string().contains("no comment grammar"));
    }

    #[test]
    fn javascript_regex_literal_not_comment() {
        let src = "const re = /a\\/\\/b/; // c\n";
        assert_eq!(
            strip_code(src, &Language::JavaScript).unwrap(),
            "const re = /a\\/\\/b/;\n"
        );
    }

    #[test]
    fn php_hash_comment_but_not_attribute() {
        let src = "#[Attr]\n$x = 1; # c\n";
        assert_eq!(strip_code(src, &Language::Php).unwrap(), "#[Attr]\n$x = 1;\n");
    }

    #[test]
    fn ruby_block_comment() {
        let src = "=begin\nhello\n=end\nputs 'a#b' # c\n";
        assert_eq!(strip_code(src, &Language::Ruby).unwrap(), "puts 'a#b'\n");
    }
}
