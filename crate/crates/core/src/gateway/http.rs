use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde_json::{json, Value};

use super::{BackendConfig, ChatRequest, ChatResponse, ChatTransport, GatewayError, TokenUsage};

/// Blocking HTTP transport for OpenAI-compatible chat-completion endpoints.
///
/// Requests go to `{base_url}/chat/completions` as
/// `{"model", "temperature", "messages"}`; image attachments are inlined as
/// base64 `data:` URIs in the multimodal content-part format.
pub struct HttpTransport {
    client: reqwest::blocking::Client,
}

impl HttpTransport {
    pub fn new(config: &BackendConfig) -> Result<Self, GatewayError> {
        config.validate()?;
        let client = reqwest::blocking::Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|e| GatewayError::Network(format!("client construction failed: {e}")))?;
        Ok(Self { client })
    }

    fn endpoint(config: &BackendConfig) -> String {
        format!("{}/chat/completions", config.base_url.trim_end_matches('/'))
    }
}

impl ChatTransport for HttpTransport {
    fn send(&self, config: &BackendConfig, request: &ChatRequest) -> Result<ChatResponse, GatewayError> {
        let body = json!({
            "model": config.model,
            "temperature": config.temperature,
            "messages": request.messages().iter().map(message_json).collect::<Vec<_>>(),
        });

        let mut builder = self.client.post(Self::endpoint(config)).json(&body);
        if let Some(key) = &config.api_key {
            builder = builder.bearer_auth(key.expose());
        }

        let response = builder.send().map_err(map_reqwest_error)?;
        let status = response.status().as_u16();
        match status {
            200..=299 => {}
            401 | 403 => return Err(GatewayError::Auth { status }),
            _ => return Err(GatewayError::Http { status }),
        }

        let value: Value = response
            .json()
            .map_err(|e| GatewayError::MalformedResponse(e.to_string()))?;
        parse_completion(&value)
    }
}

fn message_json(message: &super::ChatMessage) -> Value {
    match &message.image {
        None => json!({ "role": message.role.as_str(), "content": message.text }),
        Some(image) => json!({
            "role": message.role.as_str(),
            "content": [
                { "type": "text", "text": message.text },
                {
                    "type": "image_url",
                    "image_url": {
                        "url": format!("data:image/png;base64,{}", BASE64.encode(&image.png_bytes)),
                    },
                },
            ],
        }),
    }
}

fn map_reqwest_error(e: reqwest::Error) -> GatewayError {
    if e.is_timeout() {
        GatewayError::Timeout
    } else {
        GatewayError::Network(e.to_string())
    }
}

fn parse_completion(value: &Value) -> Result<ChatResponse, GatewayError> {
    let text = value
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| {
            GatewayError::MalformedResponse("missing choices[0].message.content".into())
        })?
        .to_string();
    let usage = value.get("usage").and_then(|u| {
        Some(TokenUsage {
            prompt_tokens: u.get("prompt_tokens")?.as_u64()?,
            completion_tokens: u.get("completion_tokens")?.as_u64()?,
        })
    });
    Ok(ChatResponse { text, usage })
}
