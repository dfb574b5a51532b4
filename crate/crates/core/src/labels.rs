use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{CodeSample, Generator, Label};

/// Classification task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    /// human vs. llm; hybrid gold labels count as llm.
    Binary,
    /// human vs. each generator; hybrid samples are excluded.
    Attribution,
    /// human vs. llm vs. hybrid.
    Ternary,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::Binary => "binary",
            Task::Attribution => "attribution",
            Task::Ternary => "ternary",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered class names for a task. The order is the tie-break order used by
/// prediction and the row/column order of confusion matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSpace {
    pub task: Task,
    pub classes: Vec<String>,
}

impl LabelSpace {
    pub fn binary() -> Self {
        LabelSpace {
            task: Task::Binary,
            classes: vec!["human".into(), "llm".into()],
        }
    }

    pub fn ternary() -> Self {
        LabelSpace {
            task: Task::Ternary,
            classes: vec!["human".into(), "llm".into(), "hybrid".into()],
        }
    }

    /// `human` followed by the given generators: known ones in their
    /// canonical order, then unknown tags alphabetically.
    pub fn attribution<'a>(generators: impl IntoIterator<Item = &'a Generator>) -> Self {
        let mut gens: Vec<&Generator> = generators.into_iter().collect();
        gens.sort();
        gens.dedup();
        let mut classes = vec!["human".to_string()];
        classes.extend(gens.into_iter().map(|g| g.as_str().to_string()));
        LabelSpace {
            task: Task::Attribution,
            classes,
        }
    }

    /// Attribution over the generators that occur in `samples`.
    pub fn attribution_for(samples: &[CodeSample]) -> Self {
        Self::attribution(
            samples
                .iter()
                .filter(|s| s.label == Label::Llm)
                .filter_map(|s| s.generator.as_ref()),
        )
    }

    pub fn for_task(task: Task, samples: &[CodeSample]) -> Self {
        match task {
            Task::Binary => Self::binary(),
            Task::Ternary => Self::ternary(),
            Task::Attribution => Self::attribution_for(samples),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, class: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.classes[index]
    }

    /// Gold class of a sample, or `None` when the sample has no place in
    /// this task.
    pub fn class_of(&self, sample: &CodeSample) -> Option<usize> {
        match self.task {
            Task::Binary => match sample.label {
                Label::Human => self.index_of("human"),
                Label::Llm | Label::Hybrid => self.index_of("llm"),
            },
            Task::Ternary => self.index_of(sample.label.as_str()),
            Task::Attribution => match sample.label {
                Label::Human => self.index_of("human"),
                Label::Llm => sample
                    .generator
                    .as_ref()
                    .and_then(|g| self.index_of(g.as_str())),
                Label::Hybrid => None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attribution_order_is_canonical() {
        let gens = [
            Generator::Nxcode,
            Generator::Other("zeta".into()),
            Generator::Gpt4o,
            Generator::Gpt4o,
            Generator::Other("alpha".into()),
        ];
        let space = LabelSpace::attribution(gens.iter());
        assert_eq!(space.classes, ["human", "gpt4o", "nxcode", "alpha", "zeta"]);
    }
}
