//! NFH anchor identification: the rule cascade over parse trees and the
//! learned linear classifier.

pub mod features;
pub mod linear;
pub mod rules;

pub use features::{extract_identification_features, Ablation, FeatureVector};
pub use linear::{classify_span, train_identifier, LinearModel, TrainOptions};
pub use rules::{
    apply_filters, apply_textual_patterns, identify_by_constituency, identify_rule_based,
    PatternRegistry, RuleDecision, TagScheme,
};
