//! The prompt templates, verbatim. `{time_series_data}` marks where the
//! serialized series (or the image-attached sentence) is substituted.

/// Placeholder replaced by the data block.
pub const DATA_PLACEHOLDER: &str = "{time_series_data}";

/// Sentence substituted for the data block when the signal is attached as
/// an image instead.
pub const IMAGE_ATTACHED_SENTENCE: &str = "The CSI amplitude plot is attached as an image.";

/// The instruction that forces a one-word answer; every assembled prompt
/// contains it exactly once.
pub const ONE_WORD_INSTRUCTION: &str = "Output only one word";

/// Plain zero-shot template.
pub const BASE_TEMPLATE: &str = "You are given a time series of Channel State Information (CSI) amplitude values captured in an environment. Your task is to classify the activity into one of the following four categories: breath, fall, no event, or walk. The provided data represents the amplitude variations over time. Analyze the pattern and determine the most appropriate classification label based on the observed fluctuations.
Input Data: {time_series_data}
No need to explain the reason. Output only one word as the predicted activity label: breath, fall, no event, or walk.";

/// Zero-shot template with the four activity signatures spelled out.
pub const KNOWLEDGE_TEMPLATE: &str = "You are an expert in Channel State Information (CSI)-based human activity recognition. CSI data reflects the changes in wireless signals as they interact with human movements. Based on CSI amplitude variations, human activities can be categorized into four types:
Walking: Large and multiple changes in amplitude over time.
Falling: A single significant peak or trough followed by a relatively stable period.
Breathing: Smooth and moderate changes in amplitude over time.
No-event: The amplitude remains mostly stable with minimal fluctuations.
Input Data: {time_series_data}
Your task is to classify the following CSI time series into one of these four categories.
No need to explain the reason. Output only one word as the predicted activity label: breath, fall, no event, or walk.";

/// Zero-shot template that walks the model through explicit analysis steps.
pub const COT_TEMPLATE: &str = "You are an expert in Channel State Information (CSI)-based human activity recognition. CSI data reflects the changes in wireless signals as they interact with human movements. Human bodies, being significant obstacles, cause changes in wireless signals that CSI can capture.
You will receive time series CSI amplitude data recorded when a person is performing an activity. The person's activity belongs to one of the following categories: Walking, Falling, Breathing, or No-event.
Step-by-Step Analysis of Human Activity:
- What is the variation range of the data? If the variation range is very small, does it suggest a no-event scenario?
- Does the data change smoothly over time with a moderate variation range (e.g., less than 5)? If so, could this indicate breathing?
- Identify large peaks or troughs characterized by a significant increase or decrease, which then return to the overall range.
- How many large peaks or troughs are present in the data?
- If the data contains only one significant peak or trough (dramatically larger than others), does it transition into a relatively stable period with minor variations? If so, does this indicate a falling event?
- If there are multiple large peaks and troughs occurring regularly, does this suggest a walking activity?
Final Classification: Based on the above step-by-step analysis, determine the most appropriate classification for the given time series data.
Input Data: {time_series_data}
No need to explain the reason. Output only one word as the predicted activity label: breath, fall, no event, or walk.";

/// Which of the three zero-shot templates to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemplateKind {
    Base,
    Knowledge,
    Cot,
}

impl TemplateKind {
    pub fn template(self) -> &'static str {
        match self {
            TemplateKind::Base => BASE_TEMPLATE,
            TemplateKind::Knowledge => KNOWLEDGE_TEMPLATE,
            TemplateKind::Cot => COT_TEMPLATE,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_template_has_placeholder_and_instruction_once() {
        for kind in [TemplateKind::Base, TemplateKind::Knowledge, TemplateKind::Cot] {
            let t = kind.template();
            assert_eq!(t.matches(DATA_PLACEHOLDER).count(), 1);
            assert_eq!(t.matches(ONE_WORD_INSTRUCTION).count(), 1);
            assert_eq!(t.matches("Answer:").count(), 0);
        }
    }
}
