//! Data-file writing: CSV with fixed formatting, JSON, and the metadata
//! sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::CliError;

/// One tabular result: a header plus pre-formatted rows.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "header": self.header,
            "rows": self.rows.iter().map(|r| {
                r.iter().map(|cell| {
                    cell.parse::<f64>().map(|x| serde_json::json!(x))
                        .unwrap_or_else(|_| serde_json::json!(cell))
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FileFormat {
    Csv,
    Json,
}

/// Writes data files plus a `<file>.meta.json` sidecar recording the
/// resolved specification, the library version and the wall time.
pub struct Emitter {
    started: Instant,
    spec: serde_json::Value,
    written: Vec<PathBuf>,
}

impl Emitter {
    pub fn new(spec: serde_json::Value) -> Self {
        Self {
            started: Instant::now(),
            spec,
            written: Vec::new(),
        }
    }

    pub fn emit_table(
        &mut self,
        table: &Table,
        output: Option<&Path>,
        format: FileFormat,
    ) -> Result<(), CliError> {
        let body = match format {
            FileFormat::Csv => table.to_csv(),
            FileFormat::Json => format!("{:#}\n", table.to_json()),
        };
        self.emit_text(&body, output)
    }

    pub fn emit_json(
        &mut self,
        value: &serde_json::Value,
        output: Option<&Path>,
    ) -> Result<(), CliError> {
        self.emit_text(&format!("{value:#}\n"), output)
    }

    fn emit_text(&mut self, body: &str, output: Option<&Path>) -> Result<(), CliError> {
        match output {
            None => {
                std::io::stdout()
                    .write_all(body.as_bytes())
                    .map_err(|e| CliError::new(format!("stdout: {e}")))?;
            }
            Some(path) => {
                if let Some(dir) = path.parent() {
                    if !dir.as_os_str().is_empty() {
                        std::fs::create_dir_all(dir)
                            .map_err(|e| CliError::new(format!("{}: {e}", dir.display())))?;
                    }
                }
                std::fs::write(path, body)
                    .map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
                self.written.push(path.to_path_buf());
            }
        }
        Ok(())
    }

    /// Write one sidecar per data file. Wall time lives here, never in the
    /// data files, so identical runs stay byte-identical.
    pub fn finish(self) -> Result<(), CliError> {
        let wall = self.started.elapsed().as_secs_f64();
        for path in &self.written {
            let meta = serde_json::json!({
                "spec": self.spec,
                "version": env!("CARGO_PKG_VERSION"),
                "wall_time_s": wall,
                "outputs": self.written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            });
            let mut name = path.clone().into_os_string();
            name.push(".meta.json");
            std::fs::write(&name, format!("{meta:#}\n"))
                .map_err(|e| CliError::new(format!("sidecar: {e}")))?;
        }
        Ok(())
    }
}
