use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};

use serde::{Deserialize, Serialize};

use super::{item_seed, Evaluation, LikelihoodBackend, Perturbation, ZeroShotError};

/// One request line written to the external scorer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendRequest {
    pub id: String,
    pub code: String,
    /// Requested perturbation count; scorers may ignore it.
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub seed: u64,
}

/// One reply line read back from the external scorer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendReply {
    pub id: String,
    pub loglik: f64,
    pub perturbation_logliks: Vec<f64>,
}

/// Runs an external program that reads request JSONL on stdin and writes
/// reply JSONL on stdout. Each batch is one process invocation.
#[derive(Debug, Clone)]
pub struct ProcessBackend {
    pub program: String,
    pub args: Vec<String>,
}

impl ProcessBackend {
    pub fn new(program: impl Into<String>, args: Vec<String>) -> Self {
        ProcessBackend {
            program: program.into(),
            args,
        }
    }

    fn fail(&self, reason: impl Into<String>) -> ZeroShotError {
        ZeroShotError::Backend {
            backend: self.program.clone(),
            reason: reason.into(),
        }
    }

    pub fn exchange(&self, requests: &[BackendRequest]) -> Result<Vec<BackendReply>, ZeroShotError> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| self.fail(format!("cannot start: {e}")))?;
        let mut stdin = child.stdin.take().expect("piped stdin");
        let payload: String = requests
            .iter()
            .map(|r| serde_json::to_string(r).expect("request serializes") + "\n")
            .collect();
        let writer = std::thread::spawn(move || stdin.write_all(payload.as_bytes()));

        let stdout = child.stdout.take().expect("piped stdout");
        let mut replies: HashMap<String, BackendReply> = HashMap::new();
        for (n, line) in BufReader::new(stdout).lines().enumerate() {
            let line = line.map_err(|e| self.fail(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let reply: BackendReply = serde_json::from_str(&line)
                .map_err(|e| self.fail(format!("reply line {}: {e}", n + 1)))?;
            replies.insert(reply.id.clone(), reply);
        }
        writer
            .join()
            .expect("writer thread")
            .map_err(|e| self.fail(format!("writing requests: {e}")))?;
        let status = child.wait().map_err(|e| self.fail(e.to_string()))?;
        if !status.success() {
            return Err(self.fail(format!("exited with {status}")));
        }
        requests
            .iter()
            .map(|r| {
                replies
                    .remove(&r.id)
                    .ok_or_else(|| self.fail(format!("no reply for `{}`", r.id)))
            })
            .collect()
    }
}

impl LikelihoodBackend for ProcessBackend {
    fn name(&self) -> &str {
        &self.program
    }

    fn log_likelihood(&self, code: &str) -> Result<f64, ZeroShotError> {
        Ok(self.evaluate(code, 0, 0)?.log_likelihood)
    }

    fn sample_perturbations(&self, code: &str, k: usize, seed: u64) -> Result<Vec<Perturbation>, ZeroShotError> {
        Ok(self
            .evaluate(code, k, seed)?
            .perturbation_log_likelihoods
            .into_iter()
            .map(|log_likelihood| Perturbation { text: None, log_likelihood })
            .collect())
    }

    fn evaluate(&self, code: &str, k: usize, seed: u64) -> Result<Evaluation, ZeroShotError> {
        let request = BackendRequest {
            id: "0".into(),
            code: code.into(),
            k,
            seed,
        };
        let reply = self.exchange(std::slice::from_ref(&request))?.remove(0);
        Ok(Evaluation {
            log_likelihood: reply.loglik,
            perturbation_log_likelihoods: reply.perturbation_logliks,
        })
    }

    fn evaluate_batch(&self, items: &[(&str, &str)], k: usize, seed: u64) -> Result<Vec<Evaluation>, ZeroShotError> {
        let requests: Vec<BackendRequest> = items
            .iter()
            .map(|(id, code)| BackendRequest {
                id: id.to_string(),
                code: code.to_string(),
                k,
                seed: item_seed(seed, id),
            })
            .collect();
        Ok(self
            .exchange(&requests)?
            .into_iter()
            .map(|r| Evaluation {
                log_likelihood: r.loglik,
                perturbation_log_likelihoods: r.perturbation_logliks,
            })
            .collect())
    }
}
