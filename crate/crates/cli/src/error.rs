use serde_json::{json, Map, Value};

/// Failure carried to the process exit: code plus a JSON object for stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub body: Map<String, Value>,
}

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

impl CliError {
    fn new(code: i32, kind: &str, message: String) -> Self {
        let mut body = Map::new();
        body.insert("error".into(), json!(kind));
        body.insert("message".into(), json!(message));
        Self { code, body }
    }

    pub fn validation(message: String) -> Self {
        Self::new(EXIT_VALIDATION, "validation", message)
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.body.insert(key.into(), value);
        self
    }

    pub fn to_json(&self) -> String {
        Value::Object(self.body.clone()).to_string()
    }
}

impl From<gr_codes::Error> for CliError {
    fn from(err: gr_codes::Error) -> Self {
        use gr_codes::Error::*;
        let message = err.to_string();
        match err {
            RadiusTooLarge { e, johnson_radius } => Self::new(EXIT_INFEASIBLE, "radius_too_large", message)
                .with("bound", json!("johnson_radius"))
                .with("e", json!(e))
                .with("johnson_radius", json!(johnson_radius)),
            AgreementTooLow { t, min_t } => Self::new(EXIT_INFEASIBLE, "agreement_too_low", message)
                .with("bound", json!("frs_radius"))
                .with("t", json!(t))
                .with("min_t", json!(min_t)),
            BudgetExceeded { .. } | RootBudgetExceeded { .. } => Self::new(EXIT_BUDGET, "budget_exceeded", message),
            _ => Self::validation(message),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::validation(err.to_string())
    }
}
