//! Return words, return factorization, derived words and iterated
//! derivation over lazily generated morphic words.
//!
//! An infinite word is only ever represented as a [`MorphicWordSpec`]: an
//! optional outer morphism applied to the fixed point of a primitive
//! substitution. Return structures are certified by doubling-stability: the
//! inspected prefix doubles until the return set and an initial derived
//! segment agree across two consecutive doublings. The stability record
//! travels with every downstream certificate.

use std::fmt;
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::words::{Alphabet, Letter, Word};

/// Number of derived letters that must agree across a doubling before a
/// return structure counts as stable.
const STABLE_DERIVED_LETTERS: usize = 64;

/// Default initial prefix length for the doubling search.
pub const DEFAULT_STABILITY_SEED: usize = 256;

/// Hard cap on generated source prefixes.
pub const DEFAULT_SOURCE_CAP: usize = 1 << 22;

/// A lazily generated infinite word: `outer` applied to the fixed point of
/// the primitive substitution `inner` from `seed`. Growth of the cached
/// prefix is serialized behind a lock; reads of an already grown prefix are
/// concurrent.
pub struct MorphicWordSpec {
    inner: Morphism,
    seed: Letter,
    outer: Option<Morphism>,
    cache: RwLock<Word>,
}

impl MorphicWordSpec {
    pub fn new(inner: Morphism, seed: Letter, outer: Option<Morphism>) -> Result<Self> {
        if !inner.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        if !inner.is_prolongable_at(seed) {
            return Err(Error::NotProlongable {
                letter: inner.domain().name(seed),
            });
        }
        if !inner.is_primitive()? {
            return Err(Error::NotPrimitive);
        }
        if let Some(f) = &outer {
            if f.domain() != inner.domain() {
                return Err(Error::AlphabetMismatch(
                    "outer morphism domain differs from the substitution alphabet".into(),
                ));
            }
        }
        let cache = RwLock::new(inner.image(seed).clone());
        Ok(MorphicWordSpec {
            inner,
            seed,
            outer,
            cache,
        })
    }

    /// The fixed point of `inner` itself, with no outer morphism.
    pub fn pure(inner: Morphism, seed: Letter) -> Result<Self> {
        Self::new(inner, seed, None)
    }

    pub fn inner(&self) -> &Morphism {
        &self.inner
    }

    pub fn seed(&self) -> Letter {
        self.seed
    }

    pub fn outer(&self) -> Option<&Morphism> {
        self.outer.as_ref()
    }

    /// Alphabet of the generated word.
    pub fn alphabet(&self) -> &Alphabet {
        match &self.outer {
            Some(f) => f.codomain(),
            None => self.inner.domain(),
        }
    }

    fn pure_prefix(&self, n: usize) -> Word {
        {
            let cache = self.cache.read().unwrap();
            if cache.len() >= n {
                return cache.prefix(n);
            }
        }
        let mut cache = self.cache.write().unwrap();
        // each application grows the prefix by at least one letter
        while cache.len() < n {
            *cache = self.inner.apply(&cache).unwrap();
        }
        cache.prefix(n)
    }

    /// Length-`n` prefix of the generated word. Deterministic; cached
    /// incrementally.
    pub fn generate_prefix(&self, n: usize) -> Word {
        match &self.outer {
            None => self.pure_prefix(n),
            Some(f) => {
                // grow the pure prefix until its image is long enough
                let mut k = n;
                loop {
                    let pure = self.pure_prefix(k);
                    let image = f.apply(&pure).unwrap();
                    if image.len() >= n || pure.len() < k {
                        return image.prefix(n);
                    }
                    k *= 2;
                }
            }
        }
    }
}

impl Clone for MorphicWordSpec {
    fn clone(&self) -> Self {
        MorphicWordSpec {
            inner: self.inner.clone(),
            seed: self.seed,
            outer: self.outer.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for MorphicWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MorphicWordSpec(inner: {}, seed: {}",
            self.inner,
            self.inner.domain().name(self.seed)
        )?;
        if let Some(outer) = &self.outer {
            write!(f, ", outer: {outer}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MorphicWordSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("MorphicWordSpec", 3)?;
        s.serialize_field("inner", &self.inner)?;
        s.serialize_field("seed", &self.inner.domain().name(self.seed))?;
        s.serialize_field("outer", &self.outer)?;
        s.end()
    }
}

/// The two prefix lengths whose return structures agreed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stability {
    pub n1: usize,
    pub n2: usize,
}

/// Return words of a word at a prefix `u`, ordered by first occurrence in
/// the return factorization, together with the derived prefix they induce.
#[derive(Debug, Clone)]
pub struct ReturnStructure {
    pub u: Word,
    pub returns: Vec<Word>,
    pub derived_prefix: Word,
    pub stability: Stability,
}

impl ReturnStructure {
    pub fn derived_alphabet(&self) -> &Alphabet {
        self.derived_prefix.alphabet()
    }

    /// The order-preserving bijection as a morphism: letter `i` maps to the
    /// `i`-th return word.
    pub fn morphism(&self) -> Morphism {
        Morphism::new(
            self.derived_alphabet().clone(),
            self.u.alphabet().clone(),
            self.returns.clone(),
        )
        .unwrap()
    }
}

/// A derived word `D_u(x)` together with the connecting morphism `f_u`
/// mapping each derived letter to its return word.
#[derive(Debug, Clone)]
pub struct DerivedWord {
    pub structure: ReturnStructure,
    pub f_u: Morphism,
}

/// Return factorization of a finite prefix: chunks between consecutive
/// occurrences of `u`, with returns indexed by first appearance.
pub(crate) struct Factorization {
    pub returns: Vec<Word>,
    pub letters: Vec<Letter>,
}

pub(crate) fn factorize_at(w: &Word, u: &Word) -> Result<Factorization> {
    if u.is_empty() || !w.starts_with(u) {
        return Err(Error::NotAPrefix { u: u.to_string() });
    }
    let occ = w.occurrences(u)?;
    let mut returns: Vec<Word> = Vec::new();
    let mut letters = Vec::with_capacity(occ.len().saturating_sub(1));
    for pair in occ.windows(2) {
        let chunk = w.factor(pair[0]..pair[1]);
        let idx = match returns.iter().position(|r| *r == chunk) {
            Some(i) => i,
            None => {
                returns.push(chunk);
                returns.len() - 1
            }
        };
        letters.push(idx);
    }
    Ok(Factorization { returns, letters })
}

impl Factorization {
    fn derived_word(&self) -> Word {
        let alphabet = Alphabet::anonymous(self.returns.len().max(1)).unwrap();
        Word::from_letters(alphabet, self.letters.clone()).unwrap()
    }
}

/// Computes a stabilized return structure, doubling the inspected prefix
/// from `n0` until the return set and the first 64 derived letters agree
/// across two consecutive doublings.
pub(crate) fn stabilized_returns(
    prefix_of: &dyn Fn(usize) -> Result<Word>,
    u: &Word,
    n0: usize,
    cap: usize,
) -> Result<ReturnStructure> {
    let mut n = n0.max(u.len() + 1).max(2);
    let mut prev: Option<(usize, Factorization)> = None;
    loop {
        let w = prefix_of(n)?;
        if !w.starts_with(u) {
            return Err(Error::NotAPrefix { u: u.to_string() });
        }
        let fact = factorize_at(&w, u)?;
        if let Some((n1, prev_fact)) = &prev {
            let stable = prev_fact.returns == fact.returns
                && prev_fact.letters.len() >= STABLE_DERIVED_LETTERS
                && prev_fact.letters[..STABLE_DERIVED_LETTERS]
                    == fact.letters[..STABLE_DERIVED_LETTERS.min(fact.letters.len())];
            if stable {
                let stability = Stability { n1: *n1, n2: n };
                return Ok(ReturnStructure {
                    u: u.clone(),
                    returns: fact.returns.clone(),
                    derived_prefix: fact.derived_word(),
                    stability,
                });
            }
        }
        if n >= cap {
            return Err(Error::StabilityNotReached { n });
        }
        prev = Some((n, fact));
        n = (n * 2).min(cap);
    }
}

/// Return words of `x` at the nonempty prefix `u`, certified by
/// doubling-stability starting from source length `n0`.
pub fn first_returns(x: &MorphicWordSpec, u: &Word, n0: usize) -> Result<ReturnStructure> {
    if u.alphabet() != x.alphabet() {
        return Err(Error::AlphabetMismatch(
            "prefix is over a different alphabet than the word".into(),
        ));
    }
    let prefix_of = |n: usize| Ok(x.generate_prefix(n));
    stabilized_returns(&prefix_of, u, n0, DEFAULT_SOURCE_CAP)
}

/// The derived word of `x` at the prefix `u` and the connecting morphism.
pub fn derived_word(x: &MorphicWordSpec, u: &Word) -> Result<DerivedWord> {
    let structure = first_returns(x, u, DEFAULT_STABILITY_SEED)?;
    let f_u = structure.morphism();
    Ok(DerivedWord { structure, f_u })
}

/// One level of an iterated-derivation chain: the connecting morphism
/// `g_k` (level-k alphabet to level-(k-1) alphabet), a stabilized sample
/// prefix of `S_k`, and the stability evidence.
#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub morphism: Morphism,
    pub prefix: Word,
    pub stability: Stability,
}

/// Iterated derivation at the first letter: `S_0` is the source word (or
/// its derived word at `root_at`) and `S_{k+1} = D_0(S_k)`, each level
/// recoded over `{0..#R-1}`. Level prefixes of any length are recomputed on
/// demand by cascading the return factorization down from the source.
pub struct DerivationChain<'a> {
    source: &'a MorphicWordSpec,
    root: Option<ReturnStructure>,
    levels: Vec<ChainLevel>,
    source_cap: usize,
}

impl<'a> DerivationChain<'a> {
    pub fn new(source: &'a MorphicWordSpec) -> Self {
        DerivationChain {
            source,
            root: None,
            levels: Vec::new(),
            source_cap: DEFAULT_SOURCE_CAP,
        }
    }

    /// Chain whose level 0 is the derived word of `source` at `u`.
    pub fn with_root(source: &'a MorphicWordSpec, u: &Word) -> Result<Self> {
        let root = first_returns(source, u, DEFAULT_STABILITY_SEED)?;
        Ok(DerivationChain {
            source,
            root: Some(root),
            levels: Vec::new(),
            source_cap: DEFAULT_SOURCE_CAP,
        })
    }

    pub fn root(&self) -> Option<&ReturnStructure> {
        self.root.as_ref()
    }

    /// Number of derivation levels built so far (excluding level 0).
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    /// The connecting morphisms `g_1, .., g_depth`.
    pub fn morphisms(&self) -> Vec<Morphism> {
        self.levels.iter().map(|l| l.morphism.clone()).collect()
    }

    pub fn level_alphabet(&self, k: usize) -> &Alphabet {
        if k == 0 {
            match &self.root {
                Some(root) => root.derived_alphabet(),
                None => self.source.alphabet(),
            }
        } else {
            self.levels[k - 1].morphism.domain()
        }
    }

    fn root_prefix(&self, n: usize) -> Result<Word> {
        match &self.root {
            None => Ok(self.source.generate_prefix(n)),
            Some(root) => {
                let mut src_len = n.saturating_mul(root.u.len().max(1)).max(64);
                loop {
                    let w = self.source.generate_prefix(src_len);
                    let fact = factorize_at(&w, &root.u)?;
                    check_consistent(&fact, &root.returns, 0)?;
                    if fact.letters.len() >= n {
                        let word =
                            Word::from_letters(root.derived_alphabet().clone(), fact.letters)
                                .unwrap();
                        return Ok(word.prefix(n));
                    }
                    if src_len >= self.source_cap {
                        return Err(Error::PrefixCapExceeded {
                            level: 0,
                            requested: n,
                        });
                    }
                    src_len = (src_len * 2).min(self.source_cap);
                }
            }
        }
    }

    /// Length-`n` prefix of `S_k`, recomputed by cascading factorizations
    /// from the source. Fresh factorizations are checked against the
    /// stabilized return lists; a newly appearing return word is reported
    /// as instability rather than silently accepted. Each level's output is
    /// carried over that level's stabilized alphabet.
    pub fn level_prefix(&self, k: usize, n: usize) -> Result<Word> {
        assert!(k <= self.depth());
        let mut need = n.max(1);
        // estimate how much of level 0 the cascade consumes
        for level in self.levels[..k].iter().rev() {
            let max_ret = level.morphism.images().iter().map(Word::len).max().unwrap();
            need = need.saturating_mul(max_ret).saturating_add(1);
        }
        need = need.min(self.source_cap);
        loop {
            let mut w = self.root_prefix(need)?;
            let mut exhausted = false;
            for (idx, level) in self.levels[..k].iter().enumerate() {
                if w.is_empty() {
                    exhausted = true;
                    break;
                }
                let u = single_letter_prefix(&w)?;
                let fact = factorize_at(&w, &u)?;
                check_consistent(&fact, level.morphism.images(), idx + 1)?;
                w = Word::from_letters(level.morphism.domain().clone(), fact.letters).unwrap();
            }
            if !exhausted && w.len() >= n {
                return Ok(w.prefix(n));
            }
            if need >= self.source_cap {
                return Err(Error::PrefixCapExceeded {
                    level: k,
                    requested: n,
                });
            }
            need = (need * 2).min(self.source_cap);
        }
    }

    /// Builds the next level: derive the current deepest word at its first
    /// letter, with doubling-stability.
    pub fn extend(&mut self) -> Result<&ChainLevel> {
        let k = self.depth();
        let parent_first = self.level_prefix(k, 1)?;
        let prefix_of = |n: usize| self.level_prefix(k, n);
        let structure = stabilized_returns(
            &prefix_of,
            &parent_first,
            DEFAULT_STABILITY_SEED,
            self.source_cap,
        )?;
        let morphism = structure.morphism();
        self.levels.push(ChainLevel {
            morphism,
            prefix: structure.derived_prefix,
            stability: structure.stability,
        });
        Ok(self.levels.last().unwrap())
    }
}

fn single_letter_prefix(w: &Word) -> Result<Word> {
    match w.first() {
        Some(first) => Ok(Word::single(w.alphabet().clone(), first).unwrap()),
        None => Err(Error::NotAPrefix { u: String::new() }),
    }
}

/// Returns discovered by a fresh factorization must be a prefix of (or equal
/// to) the stabilized list: first-occurrence order is stable under prefix
/// extension, so any disagreement means the doubling check was fooled.
fn check_consistent(fact: &Factorization, stable: &[Word], level: usize) -> Result<()> {
    if fact.returns.len() > stable.len() || fact.returns.iter().zip(stable).any(|(a, b)| a != b) {
        return Err(Error::UnstableReturns { level });
    }
    Ok(())
}

/// Builds the full iterated-derivation chain of `y` down to `max_depth`,
/// deriving at the first letter at every level. Stability failures are
/// reported with the level they occurred at.
pub fn iterate_derived(y: &MorphicWordSpec, max_depth: usize) -> Result<DerivationChain<'_>> {
    let mut chain = DerivationChain::new(y);
    for _ in 0..max_depth {
        chain.extend()?;
    }
    Ok(chain)
}
