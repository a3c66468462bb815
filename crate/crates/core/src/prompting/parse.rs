use super::PromptError;
use crate::csi::ActivityLabel;

/// Extracts an activity label from a model answer.
///
/// The answer is lowercased, hyphens and underscores become spaces and
/// whitespace runs collapse, then the earliest occurrence of any canonical
/// label string wins. Longer labels are tried first at each position, so
/// "no event" is never shadowed by a shorter match.
pub fn parse_answer(raw: &str) -> Result<ActivityLabel, PromptError> {
    let lowered = raw.to_lowercase();
    let spaced: String = lowered
        .chars()
        .map(|c| if c == '-' || c == '_' { ' ' } else { c })
        .collect();
    let normalized = spaced.split_whitespace().collect::<Vec<_>>().join(" ");

    // Ordered longest-first so ties at the same position prefer the longer
    // label.
    const CANDIDATES: [(&str, ActivityLabel); 4] = [
        ("no event", ActivityLabel::NoEvent),
        ("breath", ActivityLabel::Breathing),
        ("walk", ActivityLabel::Walking),
        ("fall", ActivityLabel::Falling),
    ];

    let mut best: Option<(usize, ActivityLabel)> = None;
    for (needle, label) in CANDIDATES {
        if let Some(pos) = normalized.find(needle) {
            if best.map_or(true, |(p, _)| pos < p) {
                best = Some((pos, label));
            }
        }
    }
    best.map(|(_, label)| label).ok_or(PromptError::UnparseableAnswer {
        raw: raw.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_folds() {
        assert_eq!(parse_answer("Walk").unwrap(), ActivityLabel::Walking);
        assert_eq!(parse_answer("  FALL\n").unwrap(), ActivityLabel::Falling);
    }

    #[test]
    fn finds_label_inside_sentences() {
        assert_eq!(
            parse_answer("The activity is: no event.").unwrap(),
            ActivityLabel::NoEvent
        );
        assert_eq!(
            parse_answer("I think it is a fall").unwrap(),
            ActivityLabel::Falling
        );
        assert_eq!(parse_answer("Walking.").unwrap(), ActivityLabel::Walking);
    }

    #[test]
    fn earliest_occurrence_wins() {
        assert_eq!(
            parse_answer("fall, not a walk").unwrap(),
            ActivityLabel::Falling
        );
    }

    #[test]
    fn hyphen_and_underscore_variants_parse() {
        assert_eq!(parse_answer("No-event").unwrap(), ActivityLabel::NoEvent);
        assert_eq!(parse_answer("no_event").unwrap(), ActivityLabel::NoEvent);
        assert_eq!(parse_answer("no    event").unwrap(), ActivityLabel::NoEvent);
    }

    #[test]
    fn canonical_strings_round_trip_under_casing_and_whitespace() {
        for label in ActivityLabel::ALL {
            for wrap in [
                format!("{}", label.canonical()),
                format!("  {}  ", label.canonical().to_uppercase()),
                format!("\t{}\n", label.canonical()),
            ] {
                assert_eq!(parse_answer(&wrap).unwrap(), label, "input {wrap:?}");
            }
        }
    }

    #[test]
    fn unmatchable_answer_errors_with_raw_text() {
        let err = parse_answer("unsure").unwrap_err();
        match err {
            PromptError::UnparseableAnswer { raw } => assert_eq!(raw, "unsure"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
