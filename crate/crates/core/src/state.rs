//! Program states: total maps from identifiers to integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Machine integer used throughout the toolchain.
///
/// Arithmetic is 64-bit two's-complement with wrapping; the interpreter, the
/// stack machine and the assertion evaluator all use [`Value::wrapping_add`].
pub type Value = i64;

/// A persistent variable store. Unbound identifiers read as `0`.
///
/// Cloning is O(1); [`State::update`] copies the (small) binding map and
/// leaves the original untouched.
#[derive(Clone, Default)]
pub struct State {
    bindings: Arc<BTreeMap<String, Value>>,
}

impl State {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn read(&self, name: &str) -> Value {
        self.bindings.get(name).copied().unwrap_or(0)
    }

    #[must_use]
    pub fn update(&self, name: &str, value: Value) -> State {
        let mut bindings = (*self.bindings).clone();
        bindings.insert(name.to_owned(), value);
        State {
            bindings: Arc::new(bindings),
        }
    }

    /// Explicitly bound identifiers with their values, sorted by name.
    /// A binding to `0` is still reported here.
    pub fn bindings(&self) -> impl Iterator<Item = (&str, Value)> + '_ {
        self.bindings.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn bound_names(&self) -> BTreeSet<String> {
        self.bindings.keys().cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// The identifiers on which `self` and `other` read differently.
    pub fn diff(&self, other: &State) -> BTreeSet<String> {
        self.bindings
            .keys()
            .chain(other.bindings.keys())
            .filter(|k| self.read(k) != other.read(k))
            .cloned()
            .collect()
    }
}

impl<S: Into<String>> FromIterator<(S, Value)> for State {
    fn from_iter<I: IntoIterator<Item = (S, Value)>>(iter: I) -> Self {
        State {
            bindings: Arc::new(iter.into_iter().map(|(k, v)| (k.into(), v)).collect()),
        }
    }
}

// Equality is extensional: an explicit `x = 0` equals an unbound `x`.
impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.bindings, &other.bindings) || self.diff(other).is_empty()
    }
}

impl Eq for State {}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.bindings.iter()).finish()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("}")
    }
}

impl serde::Serialize for State {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.bindings.iter())
    }
}
