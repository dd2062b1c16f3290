use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label::Label;

/// A finite set of labels, stored in canonical (sorted) order.
///
/// Two sets with the same elements are identical, so structural equality of
/// sets, maps and everything built from them is meaningful.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSet {
    elems: Arc<[Label]>,
}

impl FinSet {
    /// Builds a set, rejecting duplicate labels.
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Result<Self> {
        let mut elems: Vec<Label> = labels.into_iter().collect();
        elems.sort();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(FinSet { elems: elems.into() })
    }

    /// Builds a set from labels known to be distinct.
    pub(crate) fn from_distinct(mut elems: Vec<Label>) -> Self {
        elems.sort();
        debug_assert!(elems.windows(2).all(|w| w[0] != w[1]), "duplicate labels");
        FinSet { elems: elems.into() }
    }

    /// Builds a set from labels, silently merging duplicates.
    pub fn collect_unique(labels: impl IntoIterator<Item = Label>) -> Self {
        let mut elems: Vec<Label> = labels.into_iter().collect();
        elems.sort();
        elems.dedup();
        FinSet { elems: elems.into() }
    }

    pub fn empty() -> Self {
        FinSet { elems: Arc::from(Vec::new()) }
    }

    /// The canonical terminal object `{*}`.
    pub fn unit() -> Self {
        FinSet::from_distinct(vec![Label::star()])
    }

    /// `{name0, name1, ...}` with the given prefix.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        FinSet::from_distinct((0..n).map(|i| Label::atom(format!("{prefix}{i}"))).collect())
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.elems
    }

    pub fn get(&self, index: usize) -> &Label {
        &self.elems[index]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.elems.binary_search(label).ok()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.index_of(label).is_some()
    }

    pub(crate) fn require_index(&self, label: &Label, context: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::NotAnElement { label: label.clone(), context: context.to_string() })
    }

    /// Cartesian product with elements `(x, y)`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut elems = Vec::with_capacity(self.len() * other.len());
        for x in self.iter() {
            for y in other.iter() {
                elems.push(Label::pair(x.clone(), y.clone()));
            }
        }
        // lexicographic order of pairs coincides with the nested loop order
        FinSet { elems: elems.into() }
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Label;
    type IntoIter = std::slice::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_duplicates() {
        let a = FinSet::new(vec!["b".into(), "a".into()]).unwrap();
        let b = FinSet::new(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.get(0), &Label::atom("a"));
        assert_eq!(FinSet::new(vec!["a".into(), "a".into()]), Err(Error::DuplicateLabel("a".into())));
    }

    #[test]
    fn product_is_sorted() {
        let a = FinSet::numbered("a", 2);
        let b = FinSet::numbered("b", 3);
        let p = a.product(&b);
        assert_eq!(p.len(), 6);
        assert!(p.as_slice().windows(2).all(|w| w[0] < w[1]));
        assert!(p.contains(&Label::pair("a1".into(), "b2".into())));
    }
}
