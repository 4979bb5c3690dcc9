use std::collections::HashSet;
use std::sync::Arc;

use crate::hypotheses::Hypothesis;

use super::LearnerError;

/// Ordered list of active functions `g_0, ..., g_{L-1}`. Appends go to the
/// end; deletions keep the relative order of the survivors. No two entries
/// are extensionally equal.
#[derive(Debug, Clone, Default)]
pub struct ActiveList {
    functions: Vec<Arc<Hypothesis>>,
    members: HashSet<Arc<Hypothesis>>,
}

impl ActiveList {
    pub fn new() -> Self {
        ActiveList::default()
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn get(&self, i: usize) -> &Arc<Hypothesis> {
        &self.functions[i]
    }

    pub fn as_slice(&self) -> &[Arc<Hypothesis>] {
        &self.functions
    }

    pub fn push(&mut self, f: Arc<Hypothesis>) -> Result<(), LearnerError> {
        if !self.members.insert(Arc::clone(&f)) {
            return Err(LearnerError::RepeatedActiveFunction {
                id: f.id().to_string(),
            });
        }
        self.functions.push(f);
        Ok(())
    }

    /// Removes the entries at `indices` (sorted, distinct) and returns them.
    pub fn remove_indices(&mut self, indices: &[usize]) -> Vec<Arc<Hypothesis>> {
        let mut removed = Vec::with_capacity(indices.len());
        let mut doomed = indices.iter().peekable();
        let mut kept = Vec::with_capacity(self.functions.len() - indices.len());
        for (i, f) in self.functions.drain(..).enumerate() {
            if doomed.peek() == Some(&&i) {
                doomed.next();
                removed.push(f);
            } else {
                kept.push(f);
            }
        }
        self.functions = kept;
        for f in &removed {
            self.members.remove(f);
        }
        removed
    }

    /// Extensional no-repetition check, independent of the membership set.
    pub fn is_repetition_free(&self) -> bool {
        self.functions
            .iter()
            .enumerate()
            .all(|(i, f)| self.functions[..i].iter().all(|g| **g != **f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::Point;

    fn ind(id: &str, p: u64) -> Arc<Hypothesis> {
        Arc::new(Hypothesis::indicator(id, [], &[Point(p)]))
    }

    #[test]
    fn push_and_delete_keep_order() {
        let mut list = ActiveList::new();
        for (i, id) in ["a", "b", "c", "d"].iter().enumerate() {
            list.push(ind(id, i as u64)).unwrap();
        }
        let removed = list.remove_indices(&[1, 3]);
        assert_eq!(removed.iter().map(|f| f.id()).collect::<Vec<_>>(), ["b", "d"]);
        assert_eq!(list.as_slice().iter().map(|f| f.id()).collect::<Vec<_>>(), ["a", "c"]);
        // a deleted function may come back
        list.push(ind("b2", 1)).unwrap();
        assert!(list.is_repetition_free());
    }

    #[test]
    fn rejects_extensional_repeat() {
        let mut list = ActiveList::new();
        list.push(ind("a", 3)).unwrap();
        let same = Arc::new(Hypothesis::indicator("other-name", [Point(0)], &[Point(3)]));
        assert_eq!(
            list.push(same),
            Err(LearnerError::RepeatedActiveFunction {
                id: "other-name".into()
            })
        );
    }
}
