//! Bundled example specs: the worked examples that double as golden tests.

use serde::Serialize;

use crate::derived::MorphicWordSpec;
use crate::error::{Error, Result};
use crate::morphisms::Morphism;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub inner: &'static str,
    pub seed: char,
    pub outer: Option<&'static str>,
    pub description: &'static str,
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "thue-morse",
        inner: "0->01;1->10",
        seed: '0',
        outer: None,
        description: "Thue-Morse word; palindromic but of infinite defect",
    },
    CorpusEntry {
        name: "labbe",
        inner: "a->ac;b->acab;c->ab",
        seed: 'a',
        outer: None,
        description: "Labbe's rich ternary fixed point",
    },
    CorpusEntry {
        name: "labbe-shift2",
        inner: "a->ab;b->acac;c->ac",
        seed: 'a',
        outer: None,
        description: "second shift of Labbe's word, fixed by a class P morphism",
    },
    CorpusEntry {
        name: "tau",
        inner: "b->ccb;c->cb",
        seed: 'c',
        outer: None,
        description: "rich binary fixed point related to period doubling",
    },
    CorpusEntry {
        name: "derived-labbe",
        inner: "0->01;1->001",
        seed: '0',
        outer: None,
        description: "derived word of labbe at its first letter",
    },
];

pub fn entries() -> &'static [CorpusEntry] {
    ENTRIES
}

impl CorpusEntry {
    pub fn load(&self) -> Result<MorphicWordSpec> {
        let inner = Morphism::parse(self.inner)?;
        let seed = inner
            .domain()
            .letter_named(self.seed)
            .ok_or_else(|| Error::InvalidInput(format!("seed '{}' not in alphabet", self.seed)))?;
        let outer = self.outer.map(Morphism::parse).transpose()?;
        MorphicWordSpec::new(inner, seed, outer)
    }
}

pub fn load(name: &str) -> Result<MorphicWordSpec> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))?
        .load()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for entry in entries() {
            let spec = entry.load().unwrap();
            assert!(!spec.generate_prefix(16).is_empty());
        }
    }

    #[test]
    fn entries_round_trip_through_the_parser() {
        for entry in entries() {
            let spec = entry.load().unwrap();
            let reparsed = Morphism::parse(&spec.inner().to_string()).unwrap();
            assert_eq!(&reparsed, spec.inner());
            assert_eq!(
                spec.inner().domain().name(spec.seed()),
                entry.seed.to_string()
            );
        }
    }

    #[test]
    fn unknown_name_errors() {
        assert!(matches!(load("nope"), Err(Error::UnknownExample(_))));
    }
}
