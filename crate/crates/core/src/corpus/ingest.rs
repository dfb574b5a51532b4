use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde_json::Value;
use sha2::{Digest, Sha256};

use super::sample::{CodeSample, Label, Source, Split};
use super::CorpusError;

/// Deterministic id derived from the code body: the first 16 hex digits of
/// its SHA-256.
pub fn content_id(code: &str) -> String {
    let digest = Sha256::digest(code.as_bytes());
    hex::encode(&digest[..8])
}

/// Reads a JSONL corpus. Samples come back in file order; blank lines are
/// skipped but still counted for line numbers.
pub fn ingest(path: &Path) -> Result<Vec<CodeSample>, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    read_jsonl(BufReader::new(file))
}

pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Vec<CodeSample>, CorpusError> {
    let mut samples = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CorpusError::Malformed {
            line: line_no,
            reason: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        samples.push(parse_record(&line, line_no)?);
    }
    Ok(samples)
}

pub fn parse_record(line: &str, line_no: usize) -> Result<CodeSample, CorpusError> {
    let value: Value = serde_json::from_str(line).map_err(|e| CorpusError::Malformed {
        line: line_no,
        reason: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| CorpusError::Malformed {
        line: line_no,
        reason: "record is not a JSON object".into(),
    })?;

    let text = |field: &'static str| -> Result<Option<&str>, CorpusError> {
        match obj.get(field) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(_) => Err(CorpusError::Malformed {
                line: line_no,
                reason: format!("field `{field}` must be a string"),
            }),
        }
    };
    let required = |field: &'static str| -> Result<&str, CorpusError> {
        text(field)?.ok_or(CorpusError::MissingField {
            line: line_no,
            field,
        })
    };

    let code = required("code")?.to_string();
    let language = required("language")?.parse().unwrap_or_else(|e| match e {});
    let raw_label = required("label")?;
    let label = Label::parse(raw_label).ok_or_else(|| CorpusError::Malformed {
        line: line_no,
        reason: format!("unknown label `{raw_label}`"),
    })?;
    let source = match text("source")? {
        Some(s) => s.parse().unwrap_or_else(|e| match e {}),
        None => Source::Other("unknown".into()),
    };
    let generator = text("generator")?
        .filter(|g| !g.trim().is_empty())
        .map(|g| g.parse().unwrap_or_else(|e| match e {}));
    let split = match text("split")? {
        Some(raw) => Some(Split::parse(raw).ok_or_else(|| CorpusError::Malformed {
            line: line_no,
            reason: format!("unknown split `{raw}`"),
        })?),
        None => None,
    };
    let human_fraction = match obj.get("human_fraction") {
        None | Some(Value::Null) => None,
        Some(v) => match v.as_f64() {
            Some(f) if (0.0..=1.0).contains(&f) => Some(f),
            _ => {
                return Err(CorpusError::Malformed {
                    line: line_no,
                    reason: "human_fraction must be a number in [0, 1]".into(),
                })
            }
        },
    };
    let id = match text("id")? {
        Some(id) => id.to_string(),
        None => content_id(&code),
    };

    let sample = CodeSample {
        id,
        code,
        language,
        source,
        label,
        generator,
        split,
        human_fraction,
    };
    sample
        .check_label_invariant()
        .map_err(|reason| CorpusError::Invariant {
            line: line_no,
            reason,
        })?;
    Ok(sample)
}

pub fn write_jsonl(path: &Path, samples: &[CodeSample]) -> Result<(), CorpusError> {
    let io_err = |e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    };
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    for sample in samples {
        let line = serde_json::to_string(sample).expect("sample serializes");
        writeln!(out, "{line}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::sample::{Generator, Language};

    fn read(text: &str) -> Result<Vec<CodeSample>, CorpusError> {
        read_jsonl(text.as_bytes())
    }

    #[test]
    fn three_lines_in_order() {
        let text = r#"{"id":"a","code":"x = 1","language":"python","label":"human"}
{"id":"b","code":"int x;","language":"java","label":"llm","generator":"gpt4o","source":"leetcode"}
{"id":"c","code":"y","language":"cpp","label":"hybrid","generator":"nxcode","split":"test"}
"#;
        let samples = read(text).unwrap();
        let ids: Vec<_> = samples.iter().map(|s| s.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert_eq!(samples[1].generator, Some(Generator::Gpt4o));
        assert_eq!(samples[2].split, Some(Split::Test));
        assert_eq!(samples[0].language, Language::Python);
    }

    #[test]
    fn llm_without_generator_rejected() {
        let err = read(r#"{"code":"x","language":"python","label":"llm"}"#).unwrap_err();
        assert!(err.to_string().contains("generator required for llm"), "{err}");
        assert!(err.to_string().contains("line 1"));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = "{\"code\":\"x\",\"language\":\"python\",\"label\":\"human\"}\n{oops\n";
        match read(text).unwrap_err() {
            CorpusError::Malformed { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn missing_field_is_named() {
        let err = read(r#"{"code":"x","label":"human"}"#).unwrap_err();
        assert!(matches!(err, CorpusError::MissingField { field: "language", .. }));
    }

    #[test]
    fn identical_bodies_get_identical_ids() {
        let text = r#"{"code":"print(1)","language":"python","label":"human"}
{"code":"print(1)","language":"python","label":"human"}
"#;
        let samples = read(text).unwrap();
        assert_eq!(samples[0].id, samples[1].id);
        let expected = Sha256::digest(b"print(1)");
        assert_eq!(samples[0].id, hex::encode(&expected[..8]));
    }

    #[test]
    fn unknown_enums_become_other() {
        let text = r#"{"code":"x","language":"kotlin","label":"llm","generator":"starcoder","source":"kaggle"}"#;
        let s = &read(text).unwrap()[0];
        assert_eq!(s.language, Language::Other("kotlin".into()));
        assert_eq!(s.generator, Some(Generator::Other("starcoder".into())));
        assert_eq!(s.source, Source::Other("kaggle".into()));
    }
}
