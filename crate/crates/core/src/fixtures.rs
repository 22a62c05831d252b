//! Reference diagrams shipped with the repository under `fixtures/`.

use crate::diagram::PDiagram;
use crate::format::{parse_diagram, Format};

pub const STAR_COX: &str = include_str!("../../../fixtures/star.cox");
pub const PAIR_LEFT_COX: &str = include_str!("../../../fixtures/pair_left.cox");
pub const PAIR_RIGHT_COX: &str = include_str!("../../../fixtures/pair_right.cox");
pub const FOUR_FORMS_COX: &str = include_str!("../../../fixtures/four_forms.cox");

fn load(text: &str) -> PDiagram {
    parse_diagram(text.as_bytes(), Format::Cox).expect("bundled fixture parses")
}

/// Six generators; `{a,b,c}` is a G3 head with bad focus `c`.
pub fn star() -> PDiagram {
    load(STAR_COX)
}

/// Left member of a pair related only by a cross-eyed twist.
pub fn pair_left() -> PDiagram {
    load(PAIR_LEFT_COX)
}

/// Right member of the pair.
pub fn pair_right() -> PDiagram {
    load(PAIR_RIGHT_COX)
}

/// Diagram whose twist orbit has four canonical forms.
pub fn four_forms() -> PDiagram {
    load(FOUR_FORMS_COX)
}

/// All bundled fixtures with short names.
pub fn all() -> Vec<(&'static str, PDiagram)> {
    vec![("star", star()), ("pair_left", pair_left()), ("pair_right", pair_right()), ("four_forms", four_forms())]
}
