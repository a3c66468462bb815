use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The closed set of activities a segment can be labelled with.
///
/// The canonical string forms are the lowercase answers expected from a
/// classifier: `"breath"`, `"walk"`, `"fall"` and `"no event"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ActivityLabel {
    #[serde(rename = "breath")]
    Breathing,
    #[serde(rename = "walk")]
    Walking,
    #[serde(rename = "fall")]
    Falling,
    #[serde(rename = "no event")]
    NoEvent,
}

impl ActivityLabel {
    /// All labels in canonical order. This order also fixes the rows and
    /// columns of confusion matrices.
    pub const ALL: [ActivityLabel; 4] = [
        ActivityLabel::Breathing,
        ActivityLabel::Walking,
        ActivityLabel::Falling,
        ActivityLabel::NoEvent,
    ];

    /// Canonical lowercase answer string.
    pub fn canonical(self) -> &'static str {
        match self {
            ActivityLabel::Breathing => "breath",
            ActivityLabel::Walking => "walk",
            ActivityLabel::Falling => "fall",
            ActivityLabel::NoEvent => "no event",
        }
    }

    /// Filename-safe short form (`no event` becomes `no_event`).
    pub fn slug(self) -> &'static str {
        match self {
            ActivityLabel::NoEvent => "no_event",
            other => other.canonical(),
        }
    }

    /// Position of the label in [`ActivityLabel::ALL`].
    pub fn index(self) -> usize {
        match self {
            ActivityLabel::Breathing => 0,
            ActivityLabel::Walking => 1,
            ActivityLabel::Falling => 2,
            ActivityLabel::NoEvent => 3,
        }
    }
}

impl fmt::Display for ActivityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical())
    }
}

impl FromStr for ActivityLabel {
    type Err = String;

    /// Accepts the canonical form plus common filename variants
    /// (`no_event`, `no-event`, `noevent`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "breath" | "breathing" => Ok(ActivityLabel::Breathing),
            "walk" | "walking" => Ok(ActivityLabel::Walking),
            "fall" | "falling" => Ok(ActivityLabel::Falling),
            "no event" | "no_event" | "no-event" | "noevent" => Ok(ActivityLabel::NoEvent),
            other => Err(format!("unknown activity label: {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trips() {
        for label in ActivityLabel::ALL {
            assert_eq!(label.canonical().parse::<ActivityLabel>(), Ok(label));
        }
    }

    #[test]
    fn indices_match_all_order() {
        for (i, label) in ActivityLabel::ALL.into_iter().enumerate() {
            assert_eq!(label.index(), i);
        }
    }

    #[test]
    fn serde_uses_canonical_strings() {
        let json = serde_json::to_string(&ActivityLabel::NoEvent).unwrap();
        assert_eq!(json, "\"no event\"");
        let back: ActivityLabel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ActivityLabel::NoEvent);
    }
}
