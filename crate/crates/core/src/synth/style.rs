use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Generator, Language, Source};

/// Formatting and structuring habits of one author.
#[derive(Debug, Clone)]
pub struct Style {
    pub generator: Option<Generator>,
    pub indent: String,
    /// Probability of spaces around a binary operator.
    pub op_space: f64,
    pub comma_space: f64,
    /// Probability of `if (` over `if(`.
    pub keyword_space: f64,
    /// Probability that a section break becomes an empty line.
    pub blank_sections: f64,
    pub blank_between_funcs: usize,
    pub comments: bool,
    pub docstrings: bool,
    pub type_hints: bool,
    pub helpers: bool,
    pub main_fn: bool,
    pub allman: bool,
    pub validation: bool,
    pub prefer_while: bool,
    /// `std::` prefixes instead of `using namespace std`.
    pub qualified_std: bool,
    pub fast_io: bool,
    /// Wide integer types (`long`, `long long`).
    pub wide_ints: bool,
    pub braces_always: bool,
    pub snake_case: bool,
    pub vocabulary: Vocabulary,
    /// Probability that a variable gets a personal throwaway name.
    pub odd_names: f64,
    /// Textbook idioms: explicit imports, `++i`, `endl`, `const&`, `public`.
    pub formal: bool,
    /// Per-line probability of an irregular space.
    pub sloppy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vocabulary {
    Terse,
    Descriptive,
    Verbose,
}

impl Style {
    pub fn is_human(&self) -> bool {
        self.generator.is_none()
    }

    /// Human habits vary per author; the most common choice of each habit
    /// is the conventional one.
    pub fn human(rng: &mut ChaCha8Rng, source: &Source) -> Style {
        let indents = ["    ", "    ", "    ", "  ", "\t", "   "];
        let competitive = *source == Source::CodeForces;
        let mut habit = |regular: f64| -> f64 {
            if rng.random_bool(regular) {
                1.0
            } else {
                rng.random_range(0.0..0.8)
            }
        };
        let op_space = habit(0.5);
        let comma_space = habit(0.6);
        let keyword_space = habit(0.5);
        let blank_sections = habit(0.3).min(0.6);
        Style {
            generator: None,
            indent: indents[rng.random_range(0..indents.len())].to_string(),
            op_space,
            comma_space,
            keyword_space,
            blank_sections,
            blank_between_funcs: rng.random_range(0..3),
            comments: rng.random_bool(0.2),
            docstrings: rng.random_bool(0.3),
            type_hints: rng.random_bool(0.2),
            helpers: rng.random_bool(match source {
                Source::LeetCode => 0.6,
                Source::GitHub => 0.5,
                _ => 0.15,
            }),
            main_fn: rng.random_bool(0.35),
            allman: rng.random_bool(0.1),
            validation: rng.random_bool(0.1),
            prefer_while: rng.random_bool(0.1),
            qualified_std: rng.random_bool(0.15),
            fast_io: competitive || rng.random_bool(0.3),
            wide_ints: rng.random_bool(0.4),
            braces_always: rng.random_bool(0.5),
            snake_case: rng.random_bool(0.5),
            vocabulary: match rng.random_range(0..20) {
                0..=10 => Vocabulary::Terse,
                11..=17 => Vocabulary::Descriptive,
                _ => Vocabulary::Verbose,
            },
            odd_names: rng.random_range(0.3..0.7),
            formal: rng.random_bool(0.35),
            sloppy: rng.random_range(0.15..0.45),
        }
    }

    pub fn llm(generator: &Generator, language: &Language) -> Style {
        let mut s = Style {
            generator: Some(generator.clone()),
            indent: "    ".into(),
            op_space: 1.0,
            comma_space: 1.0,
            keyword_space: 1.0,
            blank_sections: 1.0,
            blank_between_funcs: if *language == Language::Python { 2 } else { 1 },
            comments: true,
            docstrings: true,
            type_hints: false,
            helpers: true,
            main_fn: true,
            allman: false,
            validation: true,
            prefer_while: false,
            qualified_std: false,
            fast_io: false,
            wide_ints: true,
            braces_always: true,
            snake_case: *language == Language::Python,
            vocabulary: Vocabulary::Descriptive,
            odd_names: 0.0,
            formal: true,
            sloppy: 0.0,
        };
        match generator {
            Generator::Gpt4o => {
                s.type_hints = true;
                s.qualified_std = true;
                s.comments = false;
            }
            Generator::CodeLlama => {
                s.allman = true;
                s.docstrings = *language != Language::Cpp;
            }
            Generator::Llama31 => {
                s.prefer_while = true;
                s.validation = false;
                s.docstrings = false;
            }
            Generator::CodeQwen15 => {
                s.indent = if *language == Language::Python { "    ".into() } else { "  ".into() };
                s.blank_sections = 0.0;
                s.comments = false;
                s.main_fn = *language != Language::Python;
            }
            _ => {
                // nxcode and unknown generators: terse and compact
                s.vocabulary = Vocabulary::Terse;
                s.comments = false;
                s.docstrings = false;
                s.validation = false;
                s.blank_sections = 0.0;
                s.main_fn = *language != Language::Python;
                s.snake_case = true;
            }
        }
        s
    }
}

fn table(vocabulary: Vocabulary, key: &str) -> &'static [&'static str] {
    match (vocabulary, key) {
        (Vocabulary::Terse, "n") => &["n"],
        (Vocabulary::Terse, "arr") => &["a", "arr", "v"],
        (Vocabulary::Terse, "total") => &["s", "sum", "tot"],
        (Vocabulary::Terse, "count") => &["cnt", "c", "ans"],
        (Vocabulary::Terse, "result") => &["ans", "res", "r"],
        (Vocabulary::Terse, "best") => &["mx", "best", "ans"],
        (Vocabulary::Terse, "cur") => &["cur", "s", "c"],
        (Vocabulary::Terse, "lo") => &["l", "lo"],
        (Vocabulary::Terse, "hi") => &["r", "hi", "h"],
        (Vocabulary::Terse, "mid") => &["m", "mid"],
        (Vocabulary::Terse, "target") => &["t", "k", "x"],
        (Vocabulary::Terse, "flag") => &["ok", "f", "p"],
        (Vocabulary::Terse, "dp") => &["dp", "f"],
        (Vocabulary::Terse, "mod") => &["MOD", "M", "md"],
        (Vocabulary::Terse, "tmp") => &["t", "tmp"],
        (Vocabulary::Terse, "steps") => &["cnt", "c", "steps"],
        (Vocabulary::Terse, "d") => &["d", "j"],
        (Vocabulary::Terse, "x") => &["x", "v"],
        (Vocabulary::Descriptive, "n") => &["n", "num_count", "size"],
        (Vocabulary::Descriptive, "arr") => &["nums", "numbers", "values"],
        (Vocabulary::Descriptive, "total") => &["total", "total_sum"],
        (Vocabulary::Descriptive, "count") => &["count", "counter"],
        (Vocabulary::Descriptive, "result") => &["result", "answer"],
        (Vocabulary::Descriptive, "best") => &["max_sum", "best_sum"],
        (Vocabulary::Descriptive, "cur") => &["current_sum", "running_sum"],
        (Vocabulary::Descriptive, "lo") => &["left", "low"],
        (Vocabulary::Descriptive, "hi") => &["right", "high"],
        (Vocabulary::Descriptive, "mid") => &["mid", "middle"],
        (Vocabulary::Descriptive, "target") => &["target"],
        (Vocabulary::Descriptive, "flag") => &["is_prime", "prime"],
        (Vocabulary::Descriptive, "dp") => &["dp", "fib"],
        (Vocabulary::Descriptive, "mod") => &["MOD"],
        (Vocabulary::Descriptive, "tmp") => &["temp", "remainder"],
        (Vocabulary::Descriptive, "steps") => &["steps", "step_count"],
        (Vocabulary::Descriptive, "d") => &["divisor"],
        (Vocabulary::Descriptive, "x") => &["num", "value"],
        (Vocabulary::Descriptive, "q") => &["q", "num_queries"],
        (Vocabulary::Descriptive, "g") => &["result", "current_gcd"],
        (Vocabulary::Verbose, "n") => &["number_of_elements", "input_size"],
        (Vocabulary::Verbose, "arr") => &["input_numbers", "list_of_values"],
        (Vocabulary::Verbose, "total") => &["running_total", "sum_of_values"],
        (Vocabulary::Verbose, "count") => &["element_count", "number_of_matches"],
        (Vocabulary::Verbose, "result") => &["final_result", "computed_answer"],
        (Vocabulary::Verbose, "best") => &["maximum_sum_so_far"],
        (Vocabulary::Verbose, "cur") => &["current_running_sum"],
        (Vocabulary::Verbose, "lo") => &["left_index", "lower_bound_index"],
        (Vocabulary::Verbose, "hi") => &["right_index", "upper_bound_index"],
        (Vocabulary::Verbose, "mid") => &["middle_index"],
        (Vocabulary::Verbose, "target") => &["target_value", "search_value"],
        (Vocabulary::Verbose, "flag") => &["is_prime_number"],
        (Vocabulary::Verbose, "dp") => &["fibonacci_values"],
        (Vocabulary::Verbose, "mod") => &["MODULO_VALUE"],
        (Vocabulary::Verbose, "tmp") => &["temporary_value"],
        (Vocabulary::Verbose, "steps") => &["number_of_steps"],
        (Vocabulary::Verbose, "d") => &["current_divisor"],
        (Vocabulary::Verbose, "x") => &["current_number", "input_value"],
        (Vocabulary::Verbose, "q") => &["number_of_queries"],
        (Vocabulary::Verbose, "g") => &["current_gcd_value"],
        (Vocabulary::Verbose, "i") => &["i", "index"],
        (Vocabulary::Verbose, "j") => &["j", "inner_index"],
        _ => &[],
    }
}

fn func_table(vocabulary: Vocabulary, key: &str) -> &'static [&'static str] {
    match (vocabulary, key) {
        (Vocabulary::Terse, "gcd") => &["gcd", "g"],
        (Vocabulary::Terse, "is_prime") => &["prime", "isp", "chk"],
        (Vocabulary::Terse, "sum_matching") => &["calc", "f", "go"],
        (Vocabulary::Terse, "max_subarray") => &["kadane", "f", "calc"],
        (Vocabulary::Terse, "fibonacci") => &["fib", "f"],
        (Vocabulary::Terse, "digit_sum") => &["ds", "sd", "digits"],
        (Vocabulary::Terse, "lower_bound") => &["lb", "bs", "search"],
        (Vocabulary::Terse, "count_pairs") => &["calc", "f", "pairs"],
        (Vocabulary::Terse, "collatz_steps") => &["f", "go", "steps"],
        (Vocabulary::Terse, "count_primes") => &["cnt", "calc", "f"],
        (Vocabulary::Terse, "array_gcd") => &["all_gcd", "f", "calc"],
        (Vocabulary::Terse, _) => &["solve", "f", "work"],
        (Vocabulary::Verbose, "gcd") => &["compute_greatest_common_divisor"],
        (Vocabulary::Verbose, "is_prime") => &["check_if_number_is_prime"],
        (Vocabulary::Verbose, "sum_matching") => &["calculate_sum_of_matching_elements"],
        (Vocabulary::Verbose, "max_subarray") => &["find_maximum_subarray_sum"],
        (Vocabulary::Verbose, "fibonacci") => &["compute_fibonacci_number"],
        (Vocabulary::Verbose, "digit_sum") => &["calculate_sum_of_digits"],
        (Vocabulary::Verbose, "lower_bound") => &["find_lower_bound_index"],
        (Vocabulary::Verbose, "count_pairs") => &["count_pairs_with_target_sum"],
        (Vocabulary::Verbose, "collatz_steps") => &["compute_collatz_sequence_length"],
        (Vocabulary::Verbose, "count_primes") => &["count_prime_numbers_up_to"],
        (Vocabulary::Verbose, "array_gcd") => &["compute_gcd_of_array"],
        (Vocabulary::Descriptive, "sum_matching") => &["sum_matching", "filtered_sum"],
        (Vocabulary::Descriptive, "max_subarray") => &["max_subarray_sum", "max_subarray"],
        (Vocabulary::Descriptive, "digit_sum") => &["digit_sum", "sum_of_digits"],
        (Vocabulary::Descriptive, "count_pairs") => &["count_pairs", "count_pairs_with_sum"],
        (Vocabulary::Descriptive, "array_gcd") => &["gcd_of_array", "array_gcd"],
        _ => &[],
    }
}

pub fn camel_case(snake: &str) -> String {
    if snake.chars().all(|c| c.is_ascii_uppercase() || c == '_') {
        return snake.to_string();
    }
    let mut out = String::new();
    let mut upper = false;
    for c in snake.chars() {
        if c == '_' {
            upper = !out.is_empty();
        } else if upper {
            out.push(c.to_ascii_uppercase());
            upper = false;
        } else {
            out.push(c);
        }
    }
    out
}

/// Per-program identifier choices. The first lookup of a key fixes its
/// spelling for the rest of the program.
#[derive(Debug)]
pub struct Namer {
    rng: ChaCha8Rng,
    vocabulary: Vocabulary,
    /// Always take the most common spelling.
    modal: bool,
    odd_names: f64,
    snake: bool,
    suffix: String,
    vars: HashMap<String, String>,
    funcs: HashMap<String, String>,
    taken: BTreeSet<String>,
}

impl Namer {
    pub fn new(style: &Style, seed: u64) -> Self {
        Namer {
            rng: ChaCha8Rng::seed_from_u64(seed),
            vocabulary: style.vocabulary,
            modal: !style.is_human(),
            odd_names: style.odd_names,
            snake: style.snake_case,
            suffix: String::new(),
            vars: HashMap::new(),
            funcs: HashMap::new(),
            taken: BTreeSet::new(),
        }
    }

    /// Names of a new unit inside a file that already has `taken` functions.
    pub fn for_unit(style: &Style, seed: u64, taken: BTreeSet<String>) -> Self {
        Namer {
            taken,
            ..Namer::new(style, seed)
        }
    }

    pub fn taken(&self) -> &BTreeSet<String> {
        &self.taken
    }

    pub fn with_suffix(mut self, suffix: &str) -> Self {
        self.suffix = suffix.to_string();
        self
    }

    fn case(&self, name: &str) -> String {
        if self.snake {
            name.to_string()
        } else {
            camel_case(name)
        }
    }

    /// Index into a spelling table: the first entry is the most common,
    /// and generated code always takes it.
    fn pick(&mut self, len: usize) -> usize {
        if self.modal || len == 1 || self.rng.random_bool(0.5) {
            0
        } else {
            self.rng.random_range(1..len)
        }
    }

    fn odd_name(&mut self) -> String {
        const HEADS: &[&str] = &["q", "z", "w", "x", "k", "y", "j", "v", "b", "g"];
        const TAILS: &[&str] = &["", "q", "z", "x", "w", "k", "y", "j", "1", "2", "0", "_"];
        let head = HEADS[self.rng.random_range(0..HEADS.len())];
        let mid = HEADS[self.rng.random_range(0..HEADS.len())];
        let tail = TAILS[self.rng.random_range(0..TAILS.len())];
        format!("{head}{mid}{}", tail.trim_end_matches('_'))
    }

    pub fn var(&mut self, key: &str) -> String {
        if let Some(v) = self.vars.get(key) {
            return v.clone();
        }
        let options = table(self.vocabulary, key);
        let base = if key.len() > 1 && self.odd_names > 0.0 && self.rng.random_bool(self.odd_names) {
            self.odd_name()
        } else if options.is_empty() {
            key.to_string()
        } else {
            options[self.pick(options.len())].to_string()
        };
        let mut name = self.case(&base);
        // distinct keys must not share a spelling
        while self.vars.values().any(|v| *v == name) {
            name.push('2');
        }
        self.vars.insert(key.to_string(), name.clone());
        name
    }

    pub fn func(&mut self, key: &str) -> String {
        if let Some(f) = self.funcs.get(key) {
            return f.clone();
        }
        let options = func_table(self.vocabulary, key);
        let base = if options.is_empty() {
            key.to_string()
        } else {
            options[self.pick(options.len())].to_string()
        };
        let mut name = self.case(&base);
        if !self.suffix.is_empty() && self.taken.contains(&name) {
            name.push_str(&self.suffix);
        }
        while self.taken.contains(&name) || self.vars.values().any(|v| *v == name) {
            name.push('_');
        }
        self.taken.insert(name.clone());
        self.funcs.insert(key.to_string(), name.clone());
        name
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn camel() {
        assert_eq!(camel_case("total_sum"), "totalSum");
        assert_eq!(camel_case("MODULO_VALUE"), "MODULO_VALUE");
        assert_eq!(camel_case("n"), "n");
    }

    #[test]
    fn spellings_are_stable_and_distinct() {
        let style = Style::llm(&Generator::Gpt4o, &Language::Python);
        let mut n = Namer::new(&style, 1);
        let a = n.var("arr");
        assert_eq!(n.var("arr"), a);
        let keys = ["n", "total", "count", "result", "cur", "best", "x", "g"];
        let names: BTreeSet<String> = keys.iter().map(|k| n.var(k)).collect();
        assert_eq!(names.len(), keys.len());
    }
}
