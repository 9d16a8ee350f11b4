//! Line-oriented run reports: `# key: value` metadata lines in a fixed
//! order followed by bare payload lines. Stdout is byte-stable across runs;
//! wall time goes to stderr.

/// Everything a command wants to say, plus the exit code to finish with.
#[derive(Debug, Default)]
pub struct Report {
    meta: Vec<(String, String)>,
    payload: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.meta("command", command);
        r
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn line(&mut self, s: impl ToString) {
        self.payload.push(s.to_string());
    }

    pub fn fail(&mut self) {
        self.exit_code = 1;
    }

    pub fn print(&self) {
        for (k, v) in &self.meta {
            println!("# {k}: {v}");
        }
        for line in &self.payload {
            println!("{line}");
        }
    }
}

/// A command failure with its exit code: 2 for input problems, 1 for
/// mathematical failures.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl ToString) -> Self {
        CliError { code: 2, message: message.to_string() }
    }

    pub fn math(message: impl ToString) -> Self {
        CliError { code: 1, message: message.to_string() }
    }
}

impl From<eck_core::orbitcat::CatalogError> for CliError {
    fn from(e: eck_core::orbitcat::CatalogError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<eck_core::ring::RingError> for CliError {
    fn from(e: eck_core::ring::RingError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<eck_core::eckcomplex::ComplexError> for CliError {
    fn from(e: eck_core::eckcomplex::ComplexError) -> Self {
        use eck_core::eckcomplex::ComplexError::*;
        match e {
            Differential(_) | NotSquareZero => CliError::math(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<eck_core::alexander::AlexError> for CliError {
    fn from(e: eck_core::alexander::AlexError) -> Self {
        use eck_core::alexander::AlexError::*;
        match e {
            NotDetectablyFinite { .. } => CliError::math(format!("{e}; raise --cutoff")),
            _ => CliError::input(e.to_string()),
        }
    }
}
