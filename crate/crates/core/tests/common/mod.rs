//! Oracles and generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use codetect_core::corpus::{CodeSample, Generator, Label, Language, Source};
use codetect_core::stylometry::FeatureMatrix;
use codetect_core::LabelSpace;
use num_rational::Ratio;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// The bundled code files with their language, sorted by name.
pub fn fixture_files() -> Vec<(String, Language, String)> {
    let mut out: Vec<(String, Language, String)> = std::fs::read_dir(fixtures().join("code"))
        .expect("fixture code directory")
        .map(|e| {
            let path = e.unwrap().path();
            let lang = match path.extension().and_then(|x| x.to_str()) {
                Some("py") => Language::Python,
                Some("java") => Language::Java,
                Some("cpp") => Language::Cpp,
                other => panic!("unexpected fixture extension {other:?}"),
            };
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, lang, std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Smallest value whose cumulative count reaches `p` percent of the
/// multiset, found by scanning every candidate.
pub fn brute_percentile(values: &[usize], p: u32) -> usize {
    let n = values.len();
    let mut candidates: Vec<usize> = values.to_vec();
    candidates.sort_unstable();
    candidates.dedup();
    for v in candidates.iter().copied() {
        let at_most = values.iter().filter(|&&x| x <= v).count();
        if at_most * 100 >= p as usize * n {
            return v;
        }
    }
    unreachable!("the maximum always qualifies")
}

pub fn sample(id: &str, code: &str, language: Language, label: Label, source: Source) -> CodeSample {
    CodeSample {
        id: id.into(),
        code: code.into(),
        language,
        source,
        generator: (label != Label::Human).then_some(Generator::Gpt4o),
        label,
        split: None,
        human_fraction: None,
    }
}

/// Corpus of `n` samples over label x language x source, with uneven
/// stratum sizes.
pub fn strata_corpus(n: usize, seed: u64) -> Vec<CodeSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = [Label::Human, Label::Llm, Label::Hybrid];
    let langs = [Language::Python, Language::Java, Language::Cpp];
    let sources = [Source::LeetCode, Source::CodeForces, Source::GitHub, Source::Mbpp];
    let weights: Vec<f64> = (0..labels.len() * langs.len() * sources.len())
        .map(|_| rng.random_range(0.2..3.0))
        .collect();
    let dist = rand::distr::weighted::WeightedIndex::new(&weights).unwrap();
    (0..n)
        .map(|i| {
            let k = dist.sample(&mut rng);
            let label = labels[k % 3];
            let lang = langs[(k / 3) % 3].clone();
            let source = sources[k / 9].clone();
            sample(&format!("s{i}"), &format!("x = {i}\n"), lang, label, source)
        })
        .collect()
}

const PY_CODE: &[&str] = &[
    "x = 1",
    "total += x * 2",
    "print(\"a # not a comment\")",
    "s = 'it''s'",
    "url = \"http://example.com/#frag\"",
    "for i in range(3):\n    pass",
    "def f(a, b):\n    return a + b",
    "y = x if x else 0",
    "t = f\"{x} # {y}\"",
];

const PY_COMMENTS: &[&str] = &[
    "# a comment",
    "#!shebang-like",
    "\"\"\"module docstring\nspanning lines\"\"\"",
    "'''single quoted docstring'''",
];

const C_CODE: &[&str] = &[
    "int x = 1;",
    "x += 2;",
    "s = \"// not a comment\";",
    "t = \"/* nor this */\";",
    "char c = '/';",
    "if (a / b > 0) { x--; }",
    "for (int i = 0; i < n; i++) { sum += i; }",
    "return x;",
];

const C_COMMENTS: &[&str] = &[
    "// line comment",
    "/* block */",
    "/** doc\n * comment\n */",
    "/* a */ int z; // b",
    "int w; /* trailing */",
];

/// Random snippets that interleave code, comments, comment-like strings,
/// blank lines and trailing whitespace.
pub fn fuzz_snippets(n: usize, seed: u64) -> Vec<(Language, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let langs = [Language::Python, Language::Java, Language::Cpp];
    (0..n)
        .map(|i| {
            let lang = langs[i % 3].clone();
            let (code, comments) = if lang == Language::Python {
                (PY_CODE, PY_COMMENTS)
            } else {
                (C_CODE, C_COMMENTS)
            };
            let mut lines = Vec::new();
            for _ in 0..rng.random_range(1..15) {
                let roll: f64 = rng.random();
                let mut line = if roll < 0.55 {
                    code.choose(&mut rng).unwrap().to_string()
                } else if roll < 0.85 {
                    comments.choose(&mut rng).unwrap().to_string()
                } else {
                    String::new()
                };
                if rng.random_bool(0.2) {
                    let tail = if lang == Language::Python { "  # tail" } else { "  // tail" };
                    line.push_str(tail);
                }
                if rng.random_bool(0.15) {
                    line.push_str("   ");
                }
                lines.push(line);
            }
            (lang, lines.join("\n"))
        })
        .collect()
}

/// What an independent walk of the concrete syntax tree reports.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct TreeOracle {
    pub max_depth: usize,
    pub assignment_count: usize,
    pub node_counts: BTreeMap<String, usize>,
}

fn grammar(lang: &Language) -> tree_sitter::Language {
    match lang {
        Language::Python => tree_sitter_python::LANGUAGE.into(),
        Language::Java => tree_sitter_java::LANGUAGE.into(),
        Language::Cpp => tree_sitter_cpp::LANGUAGE.into(),
        other => panic!("no grammar for {other}"),
    }
}

fn assignment_parents(lang: &Language) -> &'static [&'static str] {
    match lang {
        Language::Python => &["assignment", "augmented_assignment", "named_expression"],
        Language::Java => &["assignment_expression", "variable_declarator"],
        _ => &["assignment_expression", "init_declarator"],
    }
}

const ASSIGN_OPS: &[&str] = &[
    "=", "+=", "-=", "*=", "/=", "%=", "//=", "**=", "@=", "&=", "|=", "^=", "<<=", ">>=", ">>>=", ":=",
];

fn walk(node: tree_sitter::Node, depth: usize, lang: &Language, out: &mut TreeOracle) {
    for i in 0..node.child_count() {
        let child = node.child(i).unwrap();
        if child.is_missing() {
            continue;
        }
        let child_depth = depth + usize::from(child.is_named());
        if child.is_named() {
            out.max_depth = out.max_depth.max(child_depth);
            *out.node_counts.entry(format!("{lang}/{}", child.kind())).or_default() += 1;
        } else if ASSIGN_OPS.contains(&child.kind()) && assignment_parents(lang).contains(&node.kind()) {
            out.assignment_count += 1;
        }
        walk(child, child_depth, lang, out);
    }
}

pub fn tree_oracle(code: &str, lang: &Language) -> TreeOracle {
    let mut parser = tree_sitter::Parser::new();
    parser.set_language(&grammar(lang)).unwrap();
    let tree = parser.parse(code, None).unwrap();
    let mut out = TreeOracle::default();
    walk(tree.root_node(), 0, lang, &mut out);
    out
}

/// Whitespace share, counted character by character.
pub fn hand_whitespace_ratio(code: &str) -> f64 {
    let mut ws = 0u64;
    let mut all = 0u64;
    for c in code.chars() {
        all += 1;
        if c.is_whitespace() {
            ws += 1;
        }
    }
    ws as f64 / all as f64
}

/// Mean length of lines holding a non-space character.
pub fn hand_avg_line_length(code: &str) -> f64 {
    let mut total = 0u64;
    let mut lines = 0u64;
    for raw in code.lines() {
        if raw.chars().any(|c| !c.is_whitespace()) {
            total += raw.chars().count() as u64;
            lines += 1;
        }
    }
    total as f64 / lines as f64
}

pub type Q = Ratio<i64>;

/// Per-class precision, recall and F from counts, written out longhand.
pub fn rational_metrics(preds: &[usize], golds: &[usize], n: usize) -> (Q, Q, Q, Q) {
    let zero = Q::from_integer(0);
    let frac = |a: usize, b: usize| if b == 0 { zero } else { Q::new(a as i64, b as i64) };
    let (mut ps, mut rs, mut fs) = (zero, zero, zero);
    for k in 0..n {
        let tp = preds.iter().zip(golds).filter(|&(&p, &g)| p == k && g == k).count();
        let predicted = preds.iter().filter(|&&p| p == k).count();
        let actual = golds.iter().filter(|&&g| g == k).count();
        let p = frac(tp, predicted);
        let r = frac(tp, actual);
        let f = if p + r == zero { zero } else { Q::from_integer(2) * p * r / (p + r) };
        ps += p;
        rs += r;
        fs += f;
    }
    let k = Q::from_integer(n as i64);
    let correct = preds.iter().zip(golds).filter(|(p, g)| p == g).count();
    (ps / k, rs / k, fs / k, frac(correct, golds.len()))
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("f{i}")).collect()
}

/// Two Gaussian blobs around (-2, -2) and (2, 2), alternating labels.
pub fn blobs(n: usize, seed: u64) -> FeatureMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 0.5).unwrap();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let c = i % 2;
        let center = if c == 0 { -2.0 } else { 2.0 };
        rows.push(vec![center + noise.sample(&mut rng), center + noise.sample(&mut rng)]);
        labels.push(c);
    }
    FeatureMatrix::from_dense(names(2), LabelSpace::binary(), rows, labels)
}

/// Uniform points on the square labeled by the sign of x * y.
pub fn xor(n: usize, seed: u64) -> FeatureMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for _ in 0..n {
        let x: f64 = rng.random_range(-1.0..1.0);
        let y: f64 = rng.random_range(-1.0..1.0);
        labels.push(usize::from((x > 0.0) != (y > 0.0)));
        rows.push(vec![x, y]);
    }
    FeatureMatrix::from_dense(names(2), LabelSpace::binary(), rows, labels)
}
