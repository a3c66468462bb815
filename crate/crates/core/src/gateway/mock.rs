use std::collections::VecDeque;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Mutex;

use super::{BackendConfig, ChatRequest, ChatResponse, ChatTransport, GatewayError};

/// Scriptable in-process backend; makes the whole prompt → gateway → parse →
/// metrics pipeline runnable with zero network access.
pub struct MockTransport {
    script: Mutex<VecDeque<Result<String, GatewayError>>>,
    fallback: Option<String>,
    attempts: AtomicU32,
}

impl MockTransport {
    /// Answers every request with the same text.
    pub fn always(text: impl Into<String>) -> Self {
        Self {
            script: Mutex::new(VecDeque::new()),
            fallback: Some(text.into()),
            attempts: AtomicU32::new(0),
        }
    }

    /// Answers requests with the given texts in order, then fails.
    pub fn with_responses<I, S>(responses: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_script(responses.into_iter().map(|s| Ok(s.into())).collect())
    }

    /// Full control: each entry is either a response text or an error,
    /// consumed one per attempt.
    pub fn with_script(script: Vec<Result<String, GatewayError>>) -> Self {
        Self {
            script: Mutex::new(script.into()),
            fallback: None,
            attempts: AtomicU32::new(0),
        }
    }

    /// How many requests this transport has served (including failures).
    pub fn attempts(&self) -> u32 {
        self.attempts.load(Ordering::SeqCst)
    }
}

impl ChatTransport for MockTransport {
    fn send(&self, _config: &BackendConfig, _request: &ChatRequest) -> Result<ChatResponse, GatewayError> {
        self.attempts.fetch_add(1, Ordering::SeqCst);
        let next = self.script.lock().expect("mock script lock").pop_front();
        match next {
            Some(Ok(text)) => Ok(ChatResponse::text_only(text)),
            Some(Err(e)) => Err(e),
            None => match &self.fallback {
                Some(text) => Ok(ChatResponse::text_only(text.clone())),
                None => Err(GatewayError::Network("mock script exhausted".into())),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::ChatMessage;

    fn request() -> ChatRequest {
        ChatRequest::new(vec![ChatMessage::user("q")]).unwrap()
    }

    fn config() -> BackendConfig {
        BackendConfig::new("http://mock.invalid", "mock")
    }

    #[test]
    fn always_repeats_and_counts() {
        let mock = MockTransport::always("walk");
        for _ in 0..3 {
            assert_eq!(mock.send(&config(), &request()).unwrap().text, "walk");
        }
        assert_eq!(mock.attempts(), 3);
    }

    #[test]
    fn scripted_responses_run_out() {
        let mock = MockTransport::with_responses(["a", "b"]);
        assert_eq!(mock.send(&config(), &request()).unwrap().text, "a");
        assert_eq!(mock.send(&config(), &request()).unwrap().text, "b");
        assert!(mock.send(&config(), &request()).is_err());
    }
}
