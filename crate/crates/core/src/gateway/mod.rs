//! Pluggable chat-completion backends.
//!
//! [`complete`] drives any [`ChatTransport`] with retry and exponential
//! backoff; [`HttpTransport`] speaks the OpenAI-compatible wire format and
//! [`MockTransport`] scripts responses for offline runs. [`llm_classify`]
//! is the one-call path from an assembled prompt to an activity label.

mod chat;
mod config;
mod http;
mod mock;

pub use chat::{ChatMessage, ChatRequest, ChatResponse, Role, TokenUsage};
pub use config::{ApiKey, BackendConfig, API_KEY_ENV};
pub use http::HttpTransport;
pub use mock::MockTransport;

use rand::Rng;
use thiserror::Error;

use crate::csi::ActivityLabel;
use crate::prompting::{parse_answer, PromptBundle};

/// One attempt against a chat-completion backend.
pub trait ChatTransport: Send + Sync {
    fn send(&self, config: &BackendConfig, request: &ChatRequest) -> Result<ChatResponse, GatewayError>;
}

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("invalid backend config: {0}")]
    InvalidConfig(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("authentication rejected (http {status})")]
    Auth { status: u16 },
    #[error("http status {status}")]
    Http { status: u16 },
    #[error("network error: {0}")]
    Network(String),
    #[error("request timed out")]
    Timeout,
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("gave up after {attempts} attempts: {source}")]
    Exhausted {
        attempts: u32,
        #[source]
        source: Box<GatewayError>,
    },
    #[error("no activity label found in answer: {raw:?}")]
    UnparseableAnswer { raw: String },
}

impl GatewayError {
    /// Transient failures worth retrying: transport errors, timeouts and
    /// 408/429/5xx statuses. Auth rejections and malformed bodies are not.
    pub fn is_retryable(&self) -> bool {
        match self {
            GatewayError::Network(_) | GatewayError::Timeout => true,
            GatewayError::Http { status } => {
                *status == 408 || *status == 429 || *status >= 500
            }
            _ => false,
        }
    }
}

/// Sends `request`, retrying transient failures with exponential backoff
/// (base delay doubled per retry, +/-20% jitter) up to
/// `config.max_retries` additional attempts.
pub fn complete(
    config: &BackendConfig,
    transport: &dyn ChatTransport,
    request: &ChatRequest,
) -> Result<ChatResponse, GatewayError> {
    config.validate()?;
    let mut attempt: u32 = 0;
    loop {
        match transport.send(config, request) {
            Ok(response) => return Ok(response),
            Err(e) if !e.is_retryable() => return Err(e),
            Err(e) if attempt >= config.max_retries => {
                return Err(GatewayError::Exhausted {
                    attempts: attempt + 1,
                    source: Box::new(e),
                });
            }
            Err(_) => {
                let jitter = rand::thread_rng().gen_range(0.8..1.2);
                let backoff = config
                    .backoff_base
                    .mul_f64(2f64.powi(attempt as i32) * jitter);
                std::thread::sleep(backoff);
                attempt += 1;
            }
        }
    }
}

/// Wraps a prompt bundle into a single-user-message request, calls the
/// backend, and parses the reply into a label. The raw reply text is
/// returned alongside for auditing.
pub fn llm_classify(
    config: &BackendConfig,
    transport: &dyn ChatTransport,
    bundle: &PromptBundle,
) -> Result<(ActivityLabel, String), GatewayError> {
    let message = match &bundle.image {
        Some(image) => ChatMessage::user_with_image(bundle.text.clone(), image.clone()),
        None => ChatMessage::user(bundle.text.clone()),
    };
    let request = ChatRequest::new(vec![message])?;
    let response = complete(config, transport, &request)?;
    match parse_answer(&response.text) {
        Ok(label) => Ok((label, response.text)),
        Err(_) => Err(GatewayError::UnparseableAnswer { raw: response.text }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prompting::{build_prompt, to_text, PromptStrategy, Representation};
    use crate::dsp::AmplitudeSeries;
    use std::time::Duration;

    fn fast_config() -> BackendConfig {
        let mut c = BackendConfig::new("http://mock.invalid", "mock-model");
        c.backoff_base = Duration::from_millis(1);
        c
    }

    fn request() -> ChatRequest {
        ChatRequest::new(vec![ChatMessage::user("classify this")]).unwrap()
    }

    fn bundle() -> crate::prompting::PromptBundle {
        let series = AmplitudeSeries::new(vec![10.0; 100], 100.0).unwrap();
        let text = to_text(&series, 10, 2).unwrap();
        build_prompt(&PromptStrategy::Knowledge, &Representation::Text(text)).unwrap()
    }

    #[test]
    fn scripted_response_passes_through() {
        let mock = MockTransport::always("walk");
        let resp = complete(&fast_config(), &mock, &request()).unwrap();
        assert_eq!(resp.text, "walk");
        assert_eq!(mock.attempts(), 1);
    }

    #[test]
    fn two_failures_then_success_within_retry_budget() {
        let mock = MockTransport::with_script(vec![
            Err(GatewayError::Http { status: 500 }),
            Err(GatewayError::Timeout),
            Ok("breath".into()),
        ]);
        let config = fast_config(); // max_retries = 3
        let resp = complete(&config, &mock, &request()).unwrap();
        assert_eq!(resp.text, "breath");
        assert_eq!(mock.attempts(), 3);
    }

    #[test]
    fn persistent_server_errors_exhaust_after_max_retries() {
        let mock = MockTransport::with_script(vec![
            Err(GatewayError::Http { status: 500 }),
            Err(GatewayError::Http { status: 500 }),
            Err(GatewayError::Http { status: 500 }),
            Err(GatewayError::Http { status: 500 }),
        ]);
        let mut config = fast_config();
        config.max_retries = 2;
        let err = complete(&config, &mock, &request()).unwrap_err();
        match err {
            GatewayError::Exhausted { attempts, source } => {
                assert_eq!(attempts, 3);
                assert!(matches!(*source, GatewayError::Http { status: 500 }));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert_eq!(mock.attempts(), 3);
    }

    #[test]
    fn auth_failures_do_not_retry() {
        let mock = MockTransport::with_script(vec![
            Err(GatewayError::Auth { status: 401 }),
            Ok("walk".into()),
        ]);
        let err = complete(&fast_config(), &mock, &request()).unwrap_err();
        assert!(matches!(err, GatewayError::Auth { status: 401 }));
        assert_eq!(mock.attempts(), 1);
    }

    #[test]
    fn llm_classify_parses_labels_and_keeps_raw_text() {
        let mock = MockTransport::always("I think it is a fall");
        let (label, raw) = llm_classify(&fast_config(), &mock, &bundle()).unwrap();
        assert_eq!(label, ActivityLabel::Falling);
        assert_eq!(raw, "I think it is a fall");
    }

    #[test]
    fn llm_classify_surfaces_unparseable_answers() {
        let mock = MockTransport::always("maybe");
        let err = llm_classify(&fast_config(), &mock, &bundle()).unwrap_err();
        match err {
            GatewayError::UnparseableAnswer { raw } => assert_eq!(raw, "maybe"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn breathing_answer_maps_to_breathing() {
        let mock = MockTransport::always("breath");
        let (label, _) = llm_classify(&fast_config(), &mock, &bundle()).unwrap();
        assert_eq!(label, ActivityLabel::Breathing);
    }
}
