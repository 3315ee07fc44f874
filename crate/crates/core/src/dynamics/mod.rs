//! Moving arrangements: vertical translation sweeps and triangle flips.

mod flips;
mod translation;

pub use flips::{
    apply_flip, class_key, enumerate_flips, flip_graph, reduced_word_count, sequence_from_key,
    ClassKey, FlipFilter, FlipGraph, FlipMove, FlipNode,
};
pub use translation::{
    bichromatic_triangle, translation_events, Direction, EventKind, TranslationEvent,
};
