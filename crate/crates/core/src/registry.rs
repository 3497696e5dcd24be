//! Name-keyed collections of interchangeable strategies.
//!
//! Claims, renderers and bijection implementations are all looked up by name
//! at runtime (from the CLI or from tests). Insertion order is preserved so
//! listings and "run everything" loops are deterministic.

use crate::error::{Error, Result};

/// Something that can be registered under a stable name.
pub trait Named {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str {
        ""
    }

    /// Hidden entries resolve by name but are left out of listings.
    fn hidden(&self) -> bool {
        false
    }
}

pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds an entry, replacing any existing entry with the same name.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        match self.entries.iter().position(|e| e.name() == entry.name()) {
            Some(i) => self.entries[i] = entry,
            None => self.entries.push(entry),
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: self.kind,
                name: name.to_string(),
            })
    }

    /// Visible entries in registration order.
    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries
            .iter()
            .filter(|e| !e.hidden())
            .map(|e| e.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.iter().map(|e| e.name()).collect()
    }
}
