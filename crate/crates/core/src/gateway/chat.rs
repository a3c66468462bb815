use super::GatewayError;
use crate::prompting::VisualRepresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    System,
    User,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::System => "system",
            Role::User => "user",
        }
    }
}

/// One chat message; images may only ride on user messages.
#[derive(Debug, Clone, PartialEq)]
pub struct ChatMessage {
    pub role: Role,
    pub text: String,
    pub image: Option<VisualRepresentation>,
}

impl ChatMessage {
    pub fn system(text: impl Into<String>) -> Self {
        Self {
            role: Role::System,
            text: text.into(),
            image: None,
        }
    }

    pub fn user(text: impl Into<String>) -> Self {
        Self {
            role: Role::User,
            text: text.into(),
            image: None,
        }
    }

    pub fn user_with_image(text: impl Into<String>, image: VisualRepresentation) -> Self {
        Self {
            role: Role::User,
            text: text.into(),
            image: Some(image),
        }
    }
}

/// An ordered list of messages with at least one user message.
#[derive(Debug, Clone, PartialEq)]
pub struct ChatRequest {
    messages: Vec<ChatMessage>,
}

impl ChatRequest {
    pub fn new(messages: Vec<ChatMessage>) -> Result<Self, GatewayError> {
        if !messages.iter().any(|m| m.role == Role::User) {
            return Err(GatewayError::InvalidRequest(
                "request needs at least one user message".into(),
            ));
        }
        if messages
            .iter()
            .any(|m| m.image.is_some() && m.role != Role::User)
        {
            return Err(GatewayError::InvalidRequest(
                "images may only be attached to user messages".into(),
            ));
        }
        Ok(Self { messages })
    }

    pub fn messages(&self) -> &[ChatMessage] {
        &self.messages
    }
}

/// Token accounting as reported by the backend, when available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TokenUsage {
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
}

/// The first choice of a completion.
#[derive(Debug, Clone, PartialEq)]
pub struct ChatResponse {
    pub text: String,
    pub usage: Option<TokenUsage>,
}

impl ChatResponse {
    pub fn text_only(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            usage: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_requires_a_user_message() {
        assert!(ChatRequest::new(vec![ChatMessage::system("hi")]).is_err());
        assert!(ChatRequest::new(vec![
            ChatMessage::system("hi"),
            ChatMessage::user("data")
        ])
        .is_ok());
    }

    #[test]
    fn images_only_on_user_messages() {
        let img = VisualRepresentation {
            png_bytes: vec![0x89],
            width_px: 1,
            height_px: 1,
        };
        let mut msg = ChatMessage::system("hi");
        msg.image = Some(img);
        assert!(ChatRequest::new(vec![msg, ChatMessage::user("u")]).is_err());
    }
}
