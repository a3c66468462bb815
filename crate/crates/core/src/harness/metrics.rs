use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::csi::ActivityLabel;

/// A prediction for one segment: `None` stands for an unparseable or failed
/// model answer.
pub type Prediction = (ActivityLabel, Option<ActivityLabel>);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Classification quality summary.
///
/// Conventions: confusion rows are true labels, columns predictions, both
/// in `labels` order. Unparseable predictions stay out of the confusion
/// matrix but count against accuracy (`accuracy = trace / total`, with
/// `total = sum(confusion) + num_unparseable`). Precision divides by the
/// column sum, recall by the row sum, and `f1 = 2PR / (P + R)`; all three
/// are zero when their denominator is zero. `macro_f1` averages the four
/// per-class F1 scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub labels: Vec<String>,
    pub confusion: [[u64; 4]; 4],
    pub accuracy: f64,
    pub per_class: BTreeMap<String, ClassMetrics>,
    pub macro_f1: f64,
    pub num_unparseable: u64,
    pub total: u64,
}

/// Fills the confusion matrix and derives all metrics from a prediction
/// list.
pub fn evaluate(predictions: &[Prediction]) -> Result<EvalReport, HarnessError> {
    if predictions.is_empty() {
        return Err(HarnessError::InvalidInput(
            "cannot evaluate an empty prediction list".into(),
        ));
    }

    let mut confusion = [[0u64; 4]; 4];
    let mut num_unparseable = 0u64;
    for (truth, predicted) in predictions {
        match predicted {
            Some(p) => confusion[truth.index()][p.index()] += 1,
            None => num_unparseable += 1,
        }
    }

    let total = predictions.len() as u64;
    let trace: u64 = (0..4).map(|i| confusion[i][i]).sum();
    let accuracy = trace as f64 / total as f64;

    let mut per_class = BTreeMap::new();
    let mut f1_sum = 0.0;
    for label in ActivityLabel::ALL {
        let i = label.index();
        let tp = confusion[i][i];
        let row: u64 = confusion[i].iter().sum();
        let col: u64 = (0..4).map(|r| confusion[r][i]).sum();
        let precision = if col > 0 { tp as f64 / col as f64 } else { 0.0 };
        let recall = if row > 0 { tp as f64 / row as f64 } else { 0.0 };
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        f1_sum += f1;
        per_class.insert(
            label.canonical().to_string(),
            ClassMetrics {
                precision,
                recall,
                f1,
            },
        );
    }

    Ok(EvalReport {
        labels: ActivityLabel::ALL
            .iter()
            .map(|l| l.canonical().to_string())
            .collect(),
        confusion,
        accuracy,
        per_class,
        macro_f1: f1_sum / 4.0,
        num_unparseable,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ActivityLabel::*;

    #[test]
    fn all_correct_is_perfect() {
        let preds: Vec<Prediction> = ActivityLabel::ALL
            .into_iter()
            .cycle()
            .take(40)
            .map(|l| (l, Some(l)))
            .collect();
        let report = evaluate(&preds).unwrap();
        assert_eq!(report.accuracy, 1.0);
        assert_eq!(report.macro_f1, 1.0);
        assert_eq!(report.num_unparseable, 0);
        assert_eq!(report.total, 40);
    }

    #[test]
    fn falls_predicted_as_walk_match_hand_computed_accuracy() {
        // 118 segments; the 27 falls all predicted walk, everything else
        // correct: accuracy = 91/118.
        let mut preds: Vec<Prediction> = Vec::new();
        for (label, n) in [(Breathing, 37), (Walking, 27), (NoEvent, 27)] {
            preds.extend(std::iter::repeat((label, Some(label))).take(n));
        }
        preds.extend(std::iter::repeat((Falling, Some(Walking))).take(27));
        let report = evaluate(&preds).unwrap();
        assert_eq!(report.total, 118);
        assert!((report.accuracy - 91.0 / 118.0).abs() < 1e-15);
        assert_eq!(report.confusion[Falling.index()][Walking.index()], 27);
        assert_eq!(report.per_class["fall"].recall, 0.0);
        // walking precision: 27 true walks / 54 predicted walks
        assert!((report.per_class["walk"].precision - 0.5).abs() < 1e-15);
    }

    #[test]
    fn all_unparseable_scores_zero_accuracy() {
        let preds: Vec<Prediction> = (0..10).map(|_| (Walking, None)).collect();
        let report = evaluate(&preds).unwrap();
        assert_eq!(report.accuracy, 0.0);
        assert_eq!(report.num_unparseable, 10);
        assert_eq!(report.total, 10);
        let matrix_sum: u64 = report.confusion.iter().flatten().sum();
        assert_eq!(matrix_sum, 0);
    }

    #[test]
    fn confusion_plus_unparseable_accounts_for_every_prediction() {
        let preds = vec![
            (Walking, Some(Walking)),
            (Falling, None),
            (Breathing, Some(Walking)),
            (NoEvent, Some(NoEvent)),
        ];
        let report = evaluate(&preds).unwrap();
        let matrix_sum: u64 = report.confusion.iter().flatten().sum();
        assert_eq!(matrix_sum + report.num_unparseable, report.total);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            evaluate(&[]),
            Err(HarnessError::InvalidInput(_))
        ));
    }
}
