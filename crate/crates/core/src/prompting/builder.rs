use super::templates::{TemplateKind, DATA_PLACEHOLDER, IMAGE_ATTACHED_SENTENCE};
use super::{PromptError, TextRepresentation, VisualRepresentation};
use crate::csi::ActivityLabel;

/// A signal rendered for a prompt, either as text or as an image.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    Text(TextRepresentation),
    Visual(VisualRepresentation),
}

/// A labelled example embedded in a few-shot prompt.
#[derive(Debug, Clone, PartialEq)]
pub struct Exemplar {
    pub representation: Representation,
    pub label: ActivityLabel,
}

/// A labelled example with a worked explanation, for reasoning-style
/// few-shot prompts. The shipped strategies use the step-list template
/// instead; this type exists for extensions that supply worked exemplars.
#[derive(Debug, Clone, PartialEq)]
pub struct CoTExemplar {
    pub representation: Representation,
    pub explanation: String,
    pub label: ActivityLabel,
}

/// The five prompting strategies.
#[derive(Debug, Clone, PartialEq)]
pub enum PromptStrategy {
    /// Plain zero-shot classification request.
    Base,
    /// Zero-shot with the activity signatures described.
    Knowledge,
    /// Zero-shot with explicit step-by-step analysis instructions.
    Cot,
    /// Few-shot: labelled exemplars precede the query. The default policy
    /// supplies one exemplar per label.
    Icl(Vec<Exemplar>),
    /// The chosen text template with the signal attached as an image
    /// instead of inline numbers.
    Multimodal(TemplateKind),
}

/// A fully assembled prompt ready for a chat backend.
#[derive(Debug, Clone, PartialEq)]
pub struct PromptBundle {
    /// The complete prompt text, sent as a single user message.
    pub text: String,
    /// Attached plot for multimodal strategies.
    pub image: Option<VisualRepresentation>,
    /// The answer strings the model is instructed to choose from.
    pub expected_answers: [&'static str; 4],
}

fn expected_answers() -> [&'static str; 4] {
    [
        ActivityLabel::Breathing.canonical(),
        ActivityLabel::Walking.canonical(),
        ActivityLabel::Falling.canonical(),
        ActivityLabel::NoEvent.canonical(),
    ]
}

/// Assembles the prompt for `strategy` around the query `representation`.
///
/// Text strategies substitute the rendered series for the data placeholder;
/// the multimodal strategies substitute an image-attached sentence and carry
/// the plot alongside. Few-shot prompts prepend one `Example i:` block per
/// exemplar, each ending in `Answer: <label>`.
pub fn build_prompt(
    strategy: &PromptStrategy,
    representation: &Representation,
) -> Result<PromptBundle, PromptError> {
    match (strategy, representation) {
        (PromptStrategy::Base, Representation::Text(text)) => {
            Ok(text_bundle(TemplateKind::Base, text))
        }
        (PromptStrategy::Knowledge, Representation::Text(text)) => {
            Ok(text_bundle(TemplateKind::Knowledge, text))
        }
        (PromptStrategy::Cot, Representation::Text(text)) => {
            Ok(text_bundle(TemplateKind::Cot, text))
        }
        (PromptStrategy::Icl(exemplars), Representation::Text(text)) => {
            let mut prelude = String::new();
            for (i, exemplar) in exemplars.iter().enumerate() {
                let Representation::Text(example) = &exemplar.representation else {
                    return Err(PromptError::NonTextExemplar);
                };
                prelude.push_str(&format!(
                    "Example {}:\n{}\nAnswer: {}\n\n",
                    i + 1,
                    example.rendered,
                    exemplar.label.canonical()
                ));
            }
            let mut bundle = text_bundle(TemplateKind::Base, text);
            bundle.text = format!("{prelude}{}", bundle.text);
            Ok(bundle)
        }
        (PromptStrategy::Multimodal(kind), Representation::Visual(visual)) => Ok(PromptBundle {
            text: kind.template().replace(DATA_PLACEHOLDER, IMAGE_ATTACHED_SENTENCE),
            image: Some(visual.clone()),
            expected_answers: expected_answers(),
        }),
        (PromptStrategy::Multimodal(_), Representation::Text(_)) => {
            Err(PromptError::RepresentationMismatch {
                strategy: "multimodal",
                expected: "visual",
            })
        }
        (_, Representation::Visual(_)) => Err(PromptError::RepresentationMismatch {
            strategy: "text",
            expected: "text",
        }),
    }
}

fn text_bundle(kind: TemplateKind, text: &TextRepresentation) -> PromptBundle {
    PromptBundle {
        text: kind.template().replace(DATA_PLACEHOLDER, &text.rendered),
        image: None,
        expected_answers: expected_answers(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prompting::templates::{BASE_TEMPLATE, KNOWLEDGE_TEMPLATE, ONE_WORD_INSTRUCTION};
    use crate::prompting::to_text;
    use crate::dsp::AmplitudeSeries;

    fn text_repr(rendered: &str) -> TextRepresentation {
        TextRepresentation {
            rendered: rendered.to_string(),
            num_points: rendered.split(", ").count(),
            decimals: 2,
        }
    }

    fn visual() -> VisualRepresentation {
        let series = AmplitudeSeries::new(vec![1.0; 200], 100.0).unwrap();
        crate::prompting::to_plot(&series, 100, 100).unwrap()
    }

    #[test]
    fn base_prompt_is_template_with_data_inlined() {
        let bundle = build_prompt(
            &PromptStrategy::Base,
            &Representation::Text(text_repr("1.00, 2.00")),
        )
        .unwrap();
        assert_eq!(bundle.text, BASE_TEMPLATE.replace("{time_series_data}", "1.00, 2.00"));
        assert!(bundle.image.is_none());
    }

    #[test]
    fn knowledge_prompt_contains_signature_block() {
        let bundle = build_prompt(
            &PromptStrategy::Knowledge,
            &Representation::Text(text_repr("9.81")),
        )
        .unwrap();
        assert!(bundle
            .text
            .contains("Walking: Large and multiple changes in amplitude over time."));
        assert_eq!(bundle.text.matches(ONE_WORD_INSTRUCTION).count(), 1);
    }

    #[test]
    fn icl_prepends_one_answer_line_per_exemplar() {
        let labels = crate::csi::ActivityLabel::ALL;
        let exemplars: Vec<Exemplar> = labels
            .into_iter()
            .map(|label| Exemplar {
                representation: Representation::Text(text_repr("1.00, 2.00, 3.00")),
                label,
            })
            .collect();
        let bundle = build_prompt(
            &PromptStrategy::Icl(exemplars),
            &Representation::Text(text_repr("4.00, 5.00")),
        )
        .unwrap();
        let query_pos = bundle.text.find("You are given a time series").unwrap();
        let before_query = &bundle.text[..query_pos];
        assert_eq!(before_query.matches("Answer:").count(), 4);
        for label in labels {
            assert!(before_query.contains(&format!("Answer: {}", label.canonical())));
        }
        assert_eq!(bundle.text.matches(ONE_WORD_INSTRUCTION).count(), 1);
    }

    #[test]
    fn multimodal_swaps_data_for_image_sentence() {
        let bundle = build_prompt(
            &PromptStrategy::Multimodal(TemplateKind::Knowledge),
            &Representation::Visual(visual()),
        )
        .unwrap();
        assert!(bundle.text.contains(IMAGE_ATTACHED_SENTENCE));
        assert!(!bundle.text.contains("{time_series_data}"));
        assert!(bundle.image.is_some());
        assert_eq!(
            bundle.text,
            KNOWLEDGE_TEMPLATE.replace("{time_series_data}", IMAGE_ATTACHED_SENTENCE)
        );
    }

    #[test]
    fn mismatched_representations_error() {
        assert!(matches!(
            build_prompt(&PromptStrategy::Base, &Representation::Visual(visual())),
            Err(PromptError::RepresentationMismatch { .. })
        ));
        assert!(matches!(
            build_prompt(
                &PromptStrategy::Multimodal(TemplateKind::Base),
                &Representation::Text(text_repr("1.0"))
            ),
            Err(PromptError::RepresentationMismatch { .. })
        ));
        let bad_exemplar = Exemplar {
            representation: Representation::Visual(visual()),
            label: crate::csi::ActivityLabel::Walking,
        };
        assert!(matches!(
            build_prompt(
                &PromptStrategy::Icl(vec![bad_exemplar]),
                &Representation::Text(text_repr("1.0"))
            ),
            Err(PromptError::NonTextExemplar)
        ));
    }

    #[test]
    fn real_series_end_to_end_smoke() {
        let series = AmplitudeSeries::new((0..200).map(|i| 10.0 + (i as f64) * 0.01).collect(), 100.0).unwrap();
        let text = to_text(&series, 50, 2).unwrap();
        let bundle = build_prompt(&PromptStrategy::Cot, &Representation::Text(text)).unwrap();
        assert_eq!(bundle.text.matches(ONE_WORD_INSTRUCTION).count(), 1);
    }
}
