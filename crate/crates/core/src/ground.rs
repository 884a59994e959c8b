//! Ground sets with canonical (sorted) element labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_ELEMENTS};

/// An element identifier: either a small integer or a name.
///
/// Integers sort before names; integers compare numerically and names
/// compare as strings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<&str> for Label {
    fn from(v: &str) -> Self {
        Label::Name(v.to_owned())
    }
}

/// The ground set `E`. Labels are kept sorted; element `i` of the crate's
/// bit-set encoding is `labels[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<Label>,
}

impl GroundSet {
    /// Builds a ground set from distinct labels (in any order).
    pub fn new(mut labels: Vec<Label>) -> Result<Self> {
        if labels.len() > MAX_ELEMENTS - 1 {
            return Err(Error::Input(format!(
                "ground set has {} elements; at most {} are supported",
                labels.len(),
                MAX_ELEMENTS - 1
            )));
        }
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("duplicate ground set label {}", w[0])));
        }
        Ok(GroundSet { labels })
    }

    /// The ground set `{1, .., n}`.
    pub fn numbered(n: usize) -> Self {
        GroundSet {
            labels: (1..=n as i64).map(Label::Int).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Translates labels into a subset, rejecting unknown labels and repeats.
    pub fn subset(&self, labels: &[Label]) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::Input(format!("unknown element {l}")))?;
            if s.contains(i) {
                return Err(Error::Input(format!("element {l} listed twice")));
            }
            s = s.with(i);
        }
        Ok(s)
    }

    /// Subset from integer labels; convenient for numbered ground sets.
    pub fn subset_of_ints(&self, labels: &[i64]) -> Result<Subset> {
        let ls: Vec<Label> = labels.iter().map(|&i| Label::Int(i)).collect();
        self.subset(&ls)
    }

    pub fn labels_of(&self, s: Subset) -> Vec<Label> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// The ground set left after removing `removed`.
    pub fn without(&self, removed: Subset) -> GroundSet {
        GroundSet {
            labels: self
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(*i))
                .map(|(_, l)| l.clone())
                .collect(),
        }
    }

    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if s.is_subset_of(self.full()) {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "subset {s:?} is not contained in a ground set of size {}",
                self.len()
            )))
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}
