use std::path::PathBuf;

/// Everything that can stop a command, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    ReadConfig {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    ParseConfig {
        path: PathBuf,
        source: Box<toml::de::Error>,
    },
    #[error("budget exceeded: {0}")]
    Budget(risopt_core::Error),
    #[error(transparent)]
    Model(risopt_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// 2 for anything the user can fix in the config, 3 for budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::ReadConfig { .. } | Self::ParseConfig { .. } => 2,
            Self::Budget(_) => 3,
            _ => 1,
        }
    }

    /// The reader of our output went away (e.g. `risopt bench ... | head`).
    pub fn is_broken_pipe(&self) -> bool {
        let io = match self {
            Self::Io(e) => Some(e),
            Self::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e),
                _ => None,
            },
            _ => None,
        };
        io.is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
    }
}

impl From<risopt_core::Error> for CliError {
    fn from(e: risopt_core::Error) -> Self {
        use risopt_core::Error as E;
        match e {
            E::BudgetExceeded { .. } => Self::Budget(e),
            E::InvalidCoupling(_)
            | E::InvalidLink(_)
            | E::InvalidMagnitude
            | E::GridTooSmall(_)
            | E::InvalidOptionSize { .. }
            | E::NoElements
            | E::EmptyConfigurationSet => Self::Config(e.to_string()),
            _ => Self::Model(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
