use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three colors of a Schnyder wood. The same three symbols serve
/// as the letters `b`, `r`, `g` of the walk encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    B,
    R,
    G,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::B, Color::R, Color::G];

    /// Cyclic successor in the order b -> r -> g -> b.
    pub fn next(self) -> Color {
        match self {
            Color::B => Color::R,
            Color::R => Color::G,
            Color::G => Color::B,
        }
    }

    /// Cyclic predecessor.
    pub fn prev(self) -> Color {
        self.next().next()
    }

    pub fn as_char(self) -> char {
        match self {
            Color::B => 'b',
            Color::R => 'r',
            Color::G => 'g',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'b' => Some(Color::B),
            'r' => Some(Color::R),
            'g' => Some(Color::G),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_order() {
        for c in Color::ALL {
            assert_eq!(c.next().next().next(), c);
            assert_eq!(c.prev().next(), c);
        }
        assert_eq!(Color::B.next(), Color::R);
        assert_eq!(Color::G.next(), Color::B);
    }
}
