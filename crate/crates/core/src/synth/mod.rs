//! Deterministic generator of labeled code in Python, Java and C++.
//!
//! Human authors vary: each has personal spacing habits, throwaway names
//! and the occasional irregular space. Generated code always takes the
//! most common convention and spelling, plus a few habits per generator
//! (type hints, Allman braces, while loops, ...). Hybrids mix human and
//! generated units in one file and record the share of lines that came
//! from the human author.

mod ir;
mod render;
mod style;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{CodeSample, Generator, Label, Language, Source};

pub use ir::Template;
pub use style::{camel_case, Style};

use ir::{build, Func, Params, Ty, Unit};
use render::{Line, Renderer};
use style::Namer;

/// Per-language sample counts.
#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub seed: u64,
    pub languages: Vec<Language>,
    pub human: usize,
    pub llm_per_generator: usize,
    pub hybrid: usize,
    pub generators: Vec<Generator>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seed: 20_240_901,
            languages: vec![Language::Python, Language::Java, Language::Cpp],
            human: 180,
            llm_per_generator: 36,
            hybrid: 150,
            generators: Generator::KNOWN.to_vec(),
        }
    }
}

/// The committed fixture corpus: 1530 samples over three languages.
pub fn fixture_corpus() -> Vec<CodeSample> {
    generate(&SynthConfig::default())
}

const SOURCES: [Source; 3] = [Source::LeetCode, Source::CodeForces, Source::GitHub];

pub fn generate(cfg: &SynthConfig) -> Vec<CodeSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for lang in &cfg.languages {
        let tag = lang.as_str();
        for i in 0..cfg.human {
            let source = SOURCES.choose(&mut rng).expect("sources").clone();
            let code = human_program(lang, &source, rng.random());
            out.push(sample(format!("{tag}-human-{i:04}"), code, lang, source, Label::Human, None, None));
        }
        for g in &cfg.generators {
            for i in 0..cfg.llm_per_generator {
                let source = SOURCES.choose(&mut rng).expect("sources").clone();
                let code = llm_program(lang, &source, g, rng.random());
                let id = format!("{tag}-{}-{i:04}", g.as_str());
                out.push(sample(id, code, lang, source, Label::Llm, Some(g.clone()), None));
            }
        }
        for i in 0..cfg.hybrid {
            let source = SOURCES.choose(&mut rng).expect("sources").clone();
            let g = cfg.generators.choose(&mut rng).expect("generators").clone();
            let (code, fraction) = hybrid_program(lang, &source, &g, rng.random());
            let id = format!("{tag}-hybrid-{i:04}");
            out.push(sample(id, code, lang, source, Label::Hybrid, Some(g), Some(fraction)));
        }
    }
    out
}

fn sample(
    id: String,
    code: String,
    language: &Language,
    source: Source,
    label: Label,
    generator: Option<Generator>,
    human_fraction: Option<f64>,
) -> CodeSample {
    CodeSample {
        id,
        code,
        language: language.clone(),
        source,
        label,
        generator,
        split: None,
        human_fraction,
    }
}

fn params(rng: &mut ChaCha8Rng) -> Params {
    let modulus = rng.random_range(2..=6);
    Params {
        modulus,
        remainder: rng.random_range(0..modulus),
        big_mod: *[1_000_000_007, 998_244_353].choose(rng).expect("moduli"),
        extra_condition: rng.random_bool(0.3),
    }
}

fn templates(rng: &mut ChaCha8Rng, n: usize) -> Vec<Template> {
    Template::ALL.choose_multiple(rng, n).copied().collect()
}

fn unit_count(source: &Source, rng: &mut ChaCha8Rng) -> usize {
    let extra = if *source == Source::GitHub { 0.6 } else { 0.4 };
    let mut n = 1;
    while n < 4 && rng.random_bool(extra) {
        n += 1;
    }
    n
}

pub fn human_program(lang: &Language, source: &Source, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let style = Style::human(&mut rng, source);
    let n = unit_count(source, &mut rng);
    let parts = templates(&mut rng, n).into_iter().map(|t| (style.clone(), t)).collect();
    lines_to_code(&compose(lang, parts, &style, &mut rng))
}

pub fn llm_program(lang: &Language, source: &Source, generator: &Generator, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let style = Style::llm(generator, lang);
    let n = unit_count(source, &mut rng);
    let parts = templates(&mut rng, n).into_iter().map(|t| (style.clone(), t)).collect();
    lines_to_code(&compose(lang, parts, &style, &mut rng))
}

/// A file of 2 to 4 units, each written by the human or by `generator`,
/// with at least one generated unit. The majority author writes the file
/// scaffolding.
/// Returns the code and the share of non-blank unit lines written by the
/// human.
pub fn hybrid_program(lang: &Language, source: &Source, generator: &Generator, seed: u64) -> (String, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let human = Style::human(&mut rng, source);
    let mut machine = Style::llm(generator, lang);
    let units = rng.random_range(2..=4);
    let human_units = rng.random_range(0..units);
    let file_style = if 2 * human_units > units { human.clone() } else { machine.clone() };
    machine.indent = file_style.indent.clone();
    let mut owners: Vec<bool> = (0..units).map(|i| i < human_units).collect();
    // human units come first more often: generated code tends to complete a file
    if rng.random_bool(0.3) {
        owners.reverse();
    }
    let parts = templates(&mut rng, units)
        .into_iter()
        .zip(owners)
        .map(|(t, is_human)| (if is_human { human.clone() } else { machine.clone() }, t))
        .collect();
    let lines = compose(lang, parts, &file_style, &mut rng);
    let attributed = |want: bool| {
        lines
            .iter()
            .filter(|l| !l.text.trim().is_empty() && l.human == Some(want))
            .count()
    };
    let (h, m) = (attributed(true), attributed(false));
    let fraction = if h + m == 0 { 0.0 } else { h as f64 / (h + m) as f64 };
    (lines_to_code(&lines), fraction)
}

fn lines_to_code(lines: &[Line]) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&l.text);
        out.push('\n');
    }
    out
}

/// Renders units into one file. A single unit's driver statements go
/// straight into the entry point; several units each get a driver
/// function that the entry point calls.
fn compose(lang: &Language, parts: Vec<(Style, Template)>, file_style: &Style, rng: &mut ChaCha8Rng) -> Vec<Line> {
    let multi = parts.len() > 1;
    let mut taken = std::collections::BTreeSet::new();
    let mut units: Vec<(Style, Unit)> = Vec::new();
    let mut drivers: Vec<String> = Vec::new();
    for (k, (style, template)) in parts.into_iter().enumerate() {
        let p = params(rng);
        let mut namer = Namer::for_unit(&style, rng.random(), taken.clone()).with_suffix(&(k + 1).to_string());
        let mut unit = build(template, &p, &style, &mut namer);
        if multi {
            let key = "solve";
            let name = namer.func(key);
            unit.funcs.push(Func {
                name: name.clone(),
                params: vec![],
                ret: Ty::Void,
                doc: "Read one input block and print the answer.".into(),
                body: std::mem::take(&mut unit.main),
            });
            drivers.push(name);
        }
        taken = namer.taken().clone();
        units.push((style, unit));
    }

    let java_scanner = if multi {
        "sc"
    } else if file_style.is_human() {
        *["scanner", "scanner", "sc", "in"].choose(rng).expect("names")
    } else {
        "scanner"
    };
    let mut lines = Vec::new();
    let mut r = Renderer {
        lang: lang.clone(),
        style: file_style,
        indent: &file_style.indent,
        scanner: java_scanner,
        owner: None,
        rng,
        lines: &mut lines,
    };
    match lang {
        Language::Python => python_file(&mut r, &units, &drivers),
        Language::Java => java_file(&mut r, &units, &drivers),
        _ => cpp_file(&mut r, &units, &drivers),
    }
    lines
}

fn with_unit<F>(r: &mut Renderer<'_>, style: &Style, f: F)
where
    F: FnOnce(&mut Renderer<'_>),
{
    let mut inner = Renderer {
        lang: r.lang.clone(),
        style,
        indent: r.indent,
        scanner: r.scanner,
        owner: Some(style.is_human()),
        rng: &mut *r.rng,
        lines: &mut *r.lines,
    };
    f(&mut inner);
}

fn gap(r: &mut Renderer<'_>, n: usize) {
    r.blank();
    for _ in 1..n {
        r.emit(0, "");
    }
}

fn funcs(r: &mut Renderer<'_>, units: &[(Style, Unit)], depth: usize, java_public: bool) {
    for (style, unit) in units {
        for f in &unit.funcs {
            with_unit(r, style, |r| {
                r.func(depth, f, java_public);
                gap(r, style.blank_between_funcs.max(usize::from(!style.is_human())));
            });
        }
    }
}

fn call_line(r: &mut Renderer<'_>, depth: usize, name: &str) {
    let end = if r.lang == Language::Python { "" } else { ";" };
    r.emit(depth, format!("{name}(){end}"));
}

fn python_file(r: &mut Renderer<'_>, units: &[(Style, Unit)], drivers: &[String]) {
    funcs(r, units, 0, false);
    let main_fn = r.style.main_fn;
    let depth = usize::from(main_fn);
    if main_fn {
        r.emit(0, "def main():");
    }
    if drivers.is_empty() {
        let (style, unit) = &units[0];
        with_unit(r, style, |r| r.block(depth, &unit.main));
    } else {
        for d in drivers {
            call_line(r, depth, d);
        }
    }
    if main_fn {
        gap(r, r.style.blank_between_funcs.max(1));
        r.emit(0, "if __name__ == \"__main__\":");
        r.emit(1, "main()");
    }
}

fn java_file(r: &mut Renderer<'_>, units: &[(Style, Unit)], drivers: &[String]) {
    if r.style.formal {
        r.emit(0, "import java.util.Scanner;");
    } else {
        r.emit(0, "import java.util.*;");
    }
    r.emit(0, "");
    let public = r.style.formal;
    let class_header = if public { "public class Main" } else { "class Main" };
    if r.style.allman {
        r.emit(0, class_header);
        r.emit(0, "{");
    } else {
        r.emit(0, format!("{class_header} {{"));
    }
    let scanner = r.scanner.to_string();
    if !drivers.is_empty() {
        r.emit(1, format!("static Scanner {scanner} = new Scanner(System.in);"));
        r.emit(0, "");
    }
    funcs(r, units, 1, public);
    let header = "public static void main(String[] args)";
    if r.style.allman {
        r.emit(1, header);
        r.emit(1, "{");
    } else {
        r.emit(1, format!("{header} {{"));
    }
    if drivers.is_empty() {
        r.emit(2, format!("Scanner {scanner} = new Scanner(System.in);"));
        let (style, unit) = &units[0];
        with_unit(r, style, |r| r.block(2, &unit.main));
        if r.style.formal {
            r.emit(2, format!("{scanner}.close();"));
        }
    } else {
        for d in drivers {
            call_line(r, 2, d);
        }
    }
    r.emit(1, "}");
    r.emit(0, "}");
}

fn cpp_file(r: &mut Renderer<'_>, units: &[(Style, Unit)], drivers: &[String]) {
    if r.style.formal {
        r.emit(0, "#include <iostream>");
        r.emit(0, "#include <vector>");
    } else {
        r.emit(0, "#include <bits/stdc++.h>");
    }
    if !units.iter().all(|(s, _)| s.qualified_std) {
        r.emit(0, "using namespace std;");
    }
    r.emit(0, "");
    funcs(r, units, 0, false);
    if r.style.allman {
        r.emit(0, "int main()");
        r.emit(0, "{");
    } else {
        r.emit(0, "int main() {");
    }
    if r.style.fast_io {
        r.emit(1, "ios::sync_with_stdio(false);");
        r.emit(1, "cin.tie(nullptr);");
    }
    if drivers.is_empty() {
        let (style, unit) = &units[0];
        with_unit(r, style, |r| r.block(1, &unit.main));
    } else {
        for d in drivers {
            call_line(r, 1, d);
        }
    }
    if r.style.formal || r.rng.random_bool(0.5) {
        r.emit(1, "return 0;");
    }
    r.emit(0, "}");
}
