use std::fmt;
use std::time::Duration;

use super::GatewayError;

/// Environment variable holding the API key for live backends.
pub const API_KEY_ENV: &str = "CSI_SENSE_API_KEY";

/// An API key that never prints. `Debug` and `Display` are redacted; the
/// raw value is only reachable inside this crate when the HTTP transport
/// sets the authorization header.
#[derive(Clone, PartialEq, Eq)]
pub struct ApiKey(String);

impl ApiKey {
    pub fn new(key: impl Into<String>) -> Self {
        Self(key.into())
    }

    /// Reads the key from `CSI_SENSE_API_KEY`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var(API_KEY_ENV)
            .ok()
            .filter(|v| !v.is_empty())
            .map(Self)
    }

    pub(crate) fn expose(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for ApiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ApiKey(redacted)")
    }
}

/// Connection settings for a chat-completion backend.
#[derive(Debug, Clone)]
pub struct BackendConfig {
    /// Absolute base URL; requests go to `{base_url}/chat/completions`.
    pub base_url: String,
    /// Model identifier sent with every request.
    pub model: String,
    /// Bearer token, usually from `CSI_SENSE_API_KEY`.
    pub api_key: Option<ApiKey>,
    /// Per-request timeout.
    pub timeout: Duration,
    /// Retries after the first attempt for transient failures.
    pub max_retries: u32,
    /// Sampling temperature; zero by default so reruns are as repeatable as
    /// the backend allows.
    pub temperature: f64,
    /// First retry delay; doubles per retry with +/-20% jitter.
    pub backoff_base: Duration,
    /// Upper bound on simultaneous in-flight requests.
    pub concurrency: usize,
}

impl BackendConfig {
    /// Creates a config with library defaults, picking up the API key from
    /// the environment.
    pub fn new(base_url: impl Into<String>, model: impl Into<String>) -> Self {
        Self {
            base_url: base_url.into(),
            model: model.into(),
            api_key: ApiKey::from_env(),
            timeout: Duration::from_secs(60),
            max_retries: 3,
            temperature: 0.0,
            backoff_base: Duration::from_millis(500),
            concurrency: 4,
        }
    }

    pub fn validate(&self) -> Result<(), GatewayError> {
        if !(self.base_url.starts_with("http://") || self.base_url.starts_with("https://")) {
            return Err(GatewayError::InvalidConfig(format!(
                "base_url must be absolute (http:// or https://), got {:?}",
                self.base_url
            )));
        }
        if self.timeout.is_zero() {
            return Err(GatewayError::InvalidConfig("timeout must be positive".into()));
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(GatewayError::InvalidConfig(format!(
                "temperature must be non-negative, got {}",
                self.temperature
            )));
        }
        if self.concurrency == 0 {
            return Err(GatewayError::InvalidConfig(
                "concurrency must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn api_key_debug_is_redacted() {
        let key = ApiKey::new("sk-very-secret");
        assert_eq!(format!("{key:?}"), "ApiKey(redacted)");
        let config = BackendConfig {
            api_key: Some(key),
            ..BackendConfig::new("http://localhost", "m")
        };
        let debug = format!("{config:?}");
        assert!(!debug.contains("very-secret"));
    }

    #[test]
    fn validation_catches_bad_values() {
        let mut c = BackendConfig::new("localhost:8080", "m");
        assert!(c.validate().is_err());
        c.base_url = "http://localhost:8080".into();
        assert!(c.validate().is_ok());
        c.temperature = -1.0;
        assert!(c.validate().is_err());
        c.temperature = 0.0;
        c.concurrency = 0;
        assert!(c.validate().is_err());
    }
}
