//! Structured element labels.
//!
//! Every element of every finite set is a [`Label`]: either an atom or a tuple
//! of labels. Constructions build their elements as tuples of the labels they
//! came from, so equal inputs always produce identical outputs and the order
//! of a set (atoms first, then tuples lexicographically) is canonical.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Shared storage makes clones cheap; labels of iterated constructions are
/// deep trees that are copied into many sets.
#[derive(Clone)]
pub enum Label {
    Atom(Arc<str>),
    Tuple(Arc<[Label]>),
}

// Atoms before tuples, tuples lexicographically; shared subtrees compare in
// constant time.
impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Label::Atom(a), Label::Atom(b)) => {
                if Arc::ptr_eq(a, b) {
                    Ordering::Equal
                } else {
                    a.cmp(b)
                }
            }
            (Label::Tuple(a), Label::Tuple(b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                for (x, y) in a.iter().zip(b.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        unequal => return unequal,
                    }
                }
                a.len().cmp(&b.len())
            }
            (Label::Atom(_), Label::Tuple(_)) => Ordering::Less,
            (Label::Tuple(_), Label::Atom(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Label::Atom(a), Label::Atom(b)) => Arc::ptr_eq(a, b) || a == b,
            (Label::Tuple(a), Label::Tuple(b)) => {
                Arc::ptr_eq(a, b) || (a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x == y))
            }
            _ => false,
        }
    }
}

impl Eq for Label {}

// by content, agreeing with `eq`
impl Hash for Label {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Label::Atom(a) => {
                state.write_u8(0);
                a.hash(state);
            }
            Label::Tuple(items) => {
                state.write_u8(1);
                items.hash(state);
            }
        }
    }
}

impl Label {
    pub fn atom(name: impl Into<String>) -> Self {
        Label::Atom(Arc::from(name.into()))
    }

    pub fn tuple(items: Vec<Label>) -> Self {
        Label::Tuple(items.into())
    }

    pub fn pair(first: Label, second: Label) -> Self {
        Label::Tuple(Arc::new([first, second]))
    }

    /// The element of the canonical singleton.
    pub fn star() -> Self {
        Label::atom("*")
    }

    pub fn as_tuple(&self) -> Option<&[Label]> {
        match self {
            Label::Tuple(items) => Some(items),
            Label::Atom(_) => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Label, &Label)> {
        match self.as_tuple() {
            Some([a, b]) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Label::Atom(s) => Some(s),
            Label::Tuple(_) => None,
        }
    }
}

/// Encodes a section (a dependent function on a finite fibre) as the sorted
/// list of its `(argument, value)` pairs. The caller supplies the arguments in
/// canonical order.
pub fn section_label<I>(entries: I) -> Label
where
    I: IntoIterator<Item = (Label, Label)>,
{
    Label::Tuple(entries.into_iter().map(|(k, v)| Label::pair(k, v)).collect())
}

/// Reads back a label produced by [`section_label`].
pub fn section_entries(label: &Label) -> Option<Vec<(&Label, &Label)>> {
    label.as_tuple()?.iter().map(Label::as_pair).collect()
}

/// Looks up the value of a section label at `arg`.
pub fn section_value<'a>(label: &'a Label, arg: &Label) -> Option<&'a Label> {
    label.as_tuple()?.iter().filter_map(Label::as_pair).find(|(k, _)| *k == arg).map(|(_, v)| v)
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::atom(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::atom(s)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Atom(s) => serializer.serialize_str(s),
            Label::Tuple(items) => {
                let mut seq = serializer.serialize_seq(Some(items.len()))?;
                for item in items.iter() {
                    seq.serialize_element(item)?;
                }
                seq.end()
            }
        }
    }
}

struct LabelVisitor;

impl<'de> Visitor<'de> for LabelVisitor {
    type Value = Label;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a string, an integer, or an array of labels")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Label, E> {
        Ok(Label::atom(v))
    }

    fn visit_string<E: de::Error>(self, v: String) -> Result<Label, E> {
        Ok(Label::atom(v))
    }

    // Integers are accepted on input as a convenience and read as atoms.
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Label, E> {
        Ok(Label::atom(v.to_string()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Label, E> {
        Ok(Label::atom(v.to_string()))
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Label, A::Error> {
        let mut items = Vec::new();
        while let Some(item) = seq.next_element()? {
            items.push(item);
        }
        Ok(Label::tuple(items))
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Label, D::Error> {
        deserializer.deserialize_any(LabelVisitor)
    }
}
