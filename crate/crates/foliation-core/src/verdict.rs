//! Three-valued verdicts. The engine never converts uncertainty into a
//! yes/no answer; INCONCLUSIVE propagates.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict3 {
    Yes,
    No,
    Inconclusive,
}

impl Verdict3 {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict3::Yes
        } else {
            Verdict3::No
        }
    }

    /// Conjunction: any No wins, else any Inconclusive, else Yes.
    pub fn and(self, other: Verdict3) -> Verdict3 {
        use Verdict3::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Yes,
        }
    }

    pub fn all(iter: impl IntoIterator<Item = Verdict3>) -> Verdict3 {
        iter.into_iter().fold(Verdict3::Yes, Verdict3::and)
    }

    pub fn is_yes(self) -> bool {
        self == Verdict3::Yes
    }
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict3::Yes => write!(f, "yes"),
            Verdict3::No => write!(f, "no"),
            Verdict3::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// Certified emptiness of a zero locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    NonEmpty { witness: String },
    Inconclusive { reason: String },
}

impl Emptiness {
    pub fn verdict_empty(&self) -> Verdict3 {
        match self {
            Emptiness::Empty => Verdict3::Yes,
            Emptiness::NonEmpty { .. } => Verdict3::No,
            Emptiness::Inconclusive { .. } => Verdict3::Inconclusive,
        }
    }
}

impl fmt::Display for Emptiness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Emptiness::Empty => write!(f, "empty"),
            Emptiness::NonEmpty { witness } => write!(f, "non-empty ({witness})"),
            Emptiness::Inconclusive { reason } => write!(f, "INCONCLUSIVE ({reason})"),
        }
    }
}
