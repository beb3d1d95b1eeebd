use std::path::PathBuf;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Resource limits and run settings shared by the engine and the checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    /// Largest ambient word space a component computation may use.
    pub max_ambient_dimension: usize,
    /// Largest number of consequence generators streamed for one component.
    pub max_generators: usize,
    /// Worker threads for generator expansion; `0` means the rayon default.
    pub thread_count: usize,
    pub output_format: OutputFormat,
    pub certificate_directory: Option<PathBuf>,
    /// Seed for the sampled checks.
    pub random_seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_ambient_dimension: 6_000,
            max_generators: 5_000_000,
            thread_count: 0,
            output_format: OutputFormat::Text,
            certificate_directory: None,
            random_seed: 20_170_301,
        }
    }
}

impl Config {
    /// Runs `f` inside a pool sized by `thread_count`.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.thread_count == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.thread_count)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
