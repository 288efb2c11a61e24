use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::sequence::EPSequence;

/// Concrete evidence attached to a failed (or, for existence checks,
/// successful) verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<EPSequence>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<u64>,
    pub note: String,
}

impl Witness {
    pub fn sequence(x: &EPSequence, note: impl Into<String>) -> Self {
        Witness {
            sequence: Some(x.clone()),
            elements: vec![],
            note: note.into(),
        }
    }

    pub fn set(elements: Vec<u64>, note: impl Into<String>) -> Self {
        Witness {
            sequence: None,
            elements,
            note: note.into(),
        }
    }

    pub fn note(note: impl Into<String>) -> Self {
        Witness {
            sequence: None,
            elements: vec![],
            note: note.into(),
        }
    }

    pub fn with_elements(mut self, elements: Vec<u64>) -> Self {
        self.elements = elements;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Number of cases examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass(checked: usize) -> Self {
        Verdict {
            holds: true,
            checked,
            witness: None,
        }
    }

    pub fn fail(checked: usize, witness: Witness) -> Self {
        Verdict {
            holds: false,
            checked,
            witness: Some(witness),
        }
    }

    pub fn from_option(checked: usize, counterexample: Option<Witness>) -> Self {
        match counterexample {
            None => Verdict::pass(checked),
            Some(w) => Verdict::fail(checked, w),
        }
    }

    /// Both must hold; the first failure wins.
    pub fn and(self, other: Verdict) -> Verdict {
        let checked = self.checked + other.checked;
        match (self.holds, other.holds) {
            (true, true) => Verdict::pass(checked),
            (false, _) => Verdict { checked, ..self },
            (true, false) => Verdict { checked, ..other },
        }
    }
}

/// Runs `check` over `cases` in parallel and reports the first failure in
/// input order, so a corpus sorted by size yields its minimal witness.
pub fn scan<T, F>(cases: &[T], check: F) -> Result<Verdict>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Witness>> + Sync,
{
    let first = cases
        .par_iter()
        .map(&check)
        .find_first(|r| !matches!(r, Ok(None)));
    match first {
        None => Ok(Verdict::pass(cases.len())),
        Some(r) => Ok(Verdict::fail(cases.len(), r?.expect("failure carries a witness"))),
    }
}
