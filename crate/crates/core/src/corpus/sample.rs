use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Collapses case and separator noise so that `Llama-3.1`, `llama3.1` and
/// `llama_31` all compare equal.
fn squash(tag: &str) -> String {
    tag.chars()
        .filter(|c| !matches!(c, '-' | '_' | '.' | ' '))
        .flat_map(char::to_lowercase)
        .collect()
}

macro_rules! open_enum {
    (
        $(#[$meta:meta])*
        $name:ident { $($variant:ident => $canon:literal $(| $alias:literal)*),+ $(,)? }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant,)+
            Other(String),
        }

        impl $name {
            pub const KNOWN: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &str {
                match self {
                    $($name::$variant => $canon,)+
                    $name::Other(tag) => tag.as_str(),
                }
            }

            pub fn is_other(&self) -> bool {
                matches!(self, $name::Other(_))
            }
        }

        impl FromStr for $name {
            type Err = std::convert::Infallible;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let key = squash(s);
                $(
                    if key == squash($canon) $(|| key == squash($alias))* {
                        return Ok($name::$variant);
                    }
                )+
                Ok($name::Other(s.trim().to_string()))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(self.as_str())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let raw = String::deserialize(deserializer)?;
                Ok(raw.parse().unwrap_or_else(|e| match e {}))
            }
        }
    };
}

open_enum! {
    /// Programming language of a snippet.
    Language {
        Python => "python" | "py" | "python3",
        Java => "java",
        Cpp => "cpp" | "c++" | "cxx",
        CSharp => "csharp" | "c#" | "cs",
        Go => "go" | "golang",
        JavaScript => "javascript" | "js",
        Php => "php",
        Ruby => "ruby" | "rb",
    }
}

open_enum! {
    /// Where a snippet (or the problem it solves) was collected from.
    Source {
        LeetCode => "leetcode",
        CodeForces => "codeforces",
        GitHub => "github",
        Mbpp => "mbpp",
        TheVault => "thevault" | "the_vault",
    }
}

open_enum! {
    /// Model that produced an LLM or hybrid snippet.
    Generator {
        Gpt4o => "gpt4o" | "gpt-4o" | "openai",
        CodeLlama => "codellama" | "codellama-7b",
        Llama31 => "llama31" | "llama3.1" | "llama3.1-8b" | "llama",
        CodeQwen15 => "codeqwen15" | "codeqwen1.5" | "codeqwen" | "qwen",
        Nxcode => "nxcode" | "nxcode-orpo" | "nxcodeorpo",
    }
}

/// Authorship label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Human,
    Llm,
    Hybrid,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Human => "human",
            Label::Llm => "llm",
            Label::Hybrid => "hybrid",
        }
    }

    /// Lenient parse used by ingestion; accepts the spellings common in
    /// released detection corpora.
    pub fn parse(raw: &str) -> Option<Label> {
        match squash(raw).as_str() {
            "human" | "humanwritten" | "0" => Some(Label::Human),
            "llm" | "machine" | "machinegenerated" | "ai" | "aigenerated" | "generated" | "1" => {
                Some(Label::Llm)
            }
            "hybrid" | "mixed" => Some(Label::Hybrid),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Val, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Split::Train => 0,
            Split::Val => 1,
            Split::Test => 2,
        }
    }

    pub fn parse(raw: &str) -> Option<Split> {
        match squash(raw).as_str() {
            "train" | "training" => Some(Split::Train),
            "val" | "valid" | "validation" | "dev" => Some(Split::Val),
            "test" | "testing" => Some(Split::Test),
            _ => None,
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One labeled code snippet.
///
/// `human_fraction` is only meaningful for hybrid samples: the share of
/// lines that were kept from the human original.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSample {
    pub id: String,
    pub code: String,
    pub language: Language,
    pub source: Source,
    pub label: Label,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub human_fraction: Option<f64>,
}

impl CodeSample {
    /// Checks the label/generator pairing. Returns a message suitable for
    /// an ingestion error.
    pub fn check_label_invariant(&self) -> Result<(), String> {
        match (self.label, &self.generator) {
            (Label::Human, Some(_)) => Err("generator must be absent for human".into()),
            (Label::Llm, None) => Err("generator required for llm".into()),
            (Label::Hybrid, None) => Err("generator required for hybrid".into()),
            _ => Ok(()),
        }
    }

    /// Stable name for the author class: `human` or the generator tag.
    pub fn author(&self) -> &str {
        match &self.generator {
            Some(g) if self.label != Label::Human => g.as_str(),
            _ => "human",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_normalize() {
        assert_eq!("Llama3.1".parse::<Generator>().unwrap(), Generator::Llama31);
        assert_eq!("CodeQwen1.5".parse::<Generator>().unwrap(), Generator::CodeQwen15);
        assert_eq!("C++".parse::<Language>().unwrap(), Language::Cpp);
        assert_eq!(
            "starcoder".parse::<Generator>().unwrap(),
            Generator::Other("starcoder".into())
        );
    }

    #[test]
    fn unknown_language_serializes_as_tag() {
        let lang: Language = serde_json::from_str("\"kotlin\"").unwrap();
        assert_eq!(lang, Language::Other("kotlin".into()));
        assert_eq!(serde_json::to_string(&lang).unwrap(), "\"kotlin\"");
    }

    #[test]
    fn label_aliases() {
        assert_eq!(Label::parse("machine_generated"), Some(Label::Llm));
        assert_eq!(Label::parse("Human"), Some(Label::Human));
        assert_eq!(Label::parse("robot"), None);
    }
}
