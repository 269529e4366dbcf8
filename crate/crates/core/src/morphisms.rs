//! Morphism algebra: application, composition, primitivity, fixed points,
//! conjugacy with witnesses, and classification into the palindromic classes
//! P, extended P, P_ret and P'.
//!
//! Every positive classification answer carries a witness that can be
//! re-checked by direct equation evaluation; bounded searches never report a
//! definitive negative.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// A non-erasing morphism between free monoids: one nonempty image per
/// domain letter.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

/// Which side of the conjugacy equation the witness sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `f(a)u = u g(a)` for all `a`.
    Right,
    /// `u f(a) = g(a) u` for all `a`.
    Left,
}

/// A conjugator word together with its side; `verify` re-checks the defining
/// equation letterwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyWitness {
    pub u: Word,
    pub side: Side,
}

impl ConjugacyWitness {
    pub fn verify(&self, f: &Morphism, g: &Morphism) -> bool {
        if f.domain.size() != g.domain.size() {
            return false;
        }
        (0..f.domain.size()).all(|a| {
            let (fa, ga) = (f.image(a), g.image(a));
            match self.side {
                Side::Right => match (fa.concat(&self.u), self.u.concat(ga)) {
                    (Ok(l), Ok(r)) => l == r,
                    _ => false,
                },
                Side::Left => match (self.u.concat(fa), ga.concat(&self.u)) {
                    (Ok(l), Ok(r)) => l == r,
                    _ => false,
                },
            }
        })
    }
}

/// A class-P style factorization: `f(a) = p q_a` (or `f(a) = q_a p` for the
/// extended class), with `p` and every `q_a` palindromes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PalFactorization {
    pub p: Word,
    pub q: Vec<Word>,
}

impl PalFactorization {
    /// Re-checks `f(a) = p q_a` with all parts palindromic.
    pub fn verify_prefix_form(&self, f: &Morphism) -> bool {
        self.p.is_palindrome()
            && self.q.len() == f.domain.size()
            && self.q.iter().enumerate().all(|(a, qa)| {
                qa.is_palindrome()
                    && self
                        .p
                        .concat(qa)
                        .map(|pq| pq == *f.image(a))
                        .unwrap_or(false)
            })
    }

    /// Re-checks `f(a) = q_a p` with all parts palindromic.
    pub fn verify_suffix_form(&self, f: &Morphism) -> bool {
        self.p.is_palindrome()
            && self.q.len() == f.domain.size()
            && self.q.iter().enumerate().all(|(a, qa)| {
                qa.is_palindrome()
                    && qa
                        .concat(&self.p)
                        .map(|qp| qp == *f.image(a))
                        .unwrap_or(false)
            })
    }
}

/// Verdict of the bounded P' search. `NoUpToBound` is never a definitive no.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PPrimeVerdict {
    Yes,
    NoUpToBound,
}

/// Witness for P' membership: a conjugacy witness to a class-P morphism,
/// plus that morphism's own factorization.
#[derive(Debug, Clone, Serialize)]
pub struct PPrimeWitness {
    pub witness: ConjugacyWitness,
    pub conjugate: Morphism,
    pub conjugate_factorization: PalFactorization,
}

impl PPrimeWitness {
    pub fn verify(&self, f: &Morphism) -> bool {
        self.witness.verify(f, &self.conjugate)
            && self
                .conjugate_factorization
                .verify_prefix_form(&self.conjugate)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationResult {
    pub in_p: bool,
    pub p_witness: Option<PalFactorization>,
    pub in_extended_p: bool,
    pub extended_p_witness: Option<PalFactorization>,
    pub in_p_ret: bool,
    pub p_ret_marker: Option<Word>,
    pub in_p_prime: PPrimeVerdict,
    pub p_prime_witness: Option<PPrimeWitness>,
    pub search_bound: usize,
}

impl ClassificationResult {
    pub fn p_prime_yes(&self) -> bool {
        self.in_p_prime == PPrimeVerdict::Yes
    }
}

impl Morphism {
    pub fn new(domain: Alphabet, codomain: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.size() {
            return Err(Error::InvalidMorphism(format!(
                "expected {} images, got {}",
                domain.size(),
                images.len()
            )));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidMorphism(format!(
                    "image of '{}' is empty (erasing morphisms are not supported)",
                    domain.name(a)
                )));
            }
            if img.alphabet() != &codomain {
                return Err(Error::AlphabetMismatch(format!(
                    "image of '{}' is over {:?}, expected {:?}",
                    domain.name(a),
                    img.alphabet(),
                    codomain
                )));
            }
        }
        Ok(Morphism {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.size())
            .map(|a| Word::single(alphabet.clone(), a).unwrap())
            .collect();
        Morphism {
            domain: alphabet.clone(),
            codomain: alphabet,
            images,
        }
    }

    /// Parses a semicolon-separated rule list like `a->ac;b->acab;c->ab`.
    /// The domain lists the rule letters in order; the codomain equals the
    /// domain when every image letter has a rule, and otherwise extends it
    /// with the remaining image letters in order of first appearance.
    pub fn parse(literal: &str) -> Result<Self> {
        let mut domain_names: Vec<char> = Vec::new();
        let mut image_strs: Vec<&str> = Vec::new();
        let mut offset = 0usize;
        for rule in literal.split(';') {
            let col = offset + 1;
            let Some((lhs, rhs)) = rule.split_once("->") else {
                return Err(Error::parse_at(col, format!("rule '{rule}' lacks '->'")));
            };
            let mut lhs_chars = lhs.chars();
            let (Some(letter), None) = (lhs_chars.next(), lhs_chars.next()) else {
                return Err(Error::parse_at(
                    col,
                    format!("rule left-hand side '{lhs}' must be a single letter"),
                ));
            };
            if domain_names.contains(&letter) {
                return Err(Error::parse_at(
                    col,
                    format!("duplicate rule for '{letter}'"),
                ));
            }
            if rhs.is_empty() {
                return Err(Error::parse_at(
                    col + lhs.len() + 2,
                    format!("image of '{letter}' is empty"),
                ));
            }
            domain_names.push(letter);
            image_strs.push(rhs);
            offset += rule.len() + 1;
        }
        if domain_names.is_empty() {
            return Err(Error::parse_at(1, "morphism literal has no rules"));
        }
        let mut codomain_names = domain_names.clone();
        for rhs in &image_strs {
            for c in rhs.chars() {
                if !codomain_names.contains(&c) {
                    codomain_names.push(c);
                }
            }
        }
        let domain = Alphabet::named(domain_names)?;
        let codomain = if codomain_names.len() == domain.size() {
            domain.clone()
        } else {
            Alphabet::named(codomain_names)?
        };
        let images = image_strs
            .iter()
            .map(|rhs| Word::parse(&codomain, rhs))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(domain, codomain, images)
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// Sum of image lengths; the default bound for conjugator searches.
    pub fn total_image_len(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != &self.domain {
            return Err(Error::AlphabetMismatch(format!(
                "word over {:?} fed to morphism with domain {:?}",
                w.alphabet(),
                self.domain
            )));
        }
        let total: usize = w.letters().iter().map(|&a| self.images[a].len()).sum();
        let mut letters = Vec::with_capacity(total);
        for &a in w.letters() {
            letters.extend_from_slice(self.images[a].letters());
        }
        Ok(Word::from_letters(self.codomain.clone(), letters).unwrap())
    }

    /// `(g o f)(a) = g(f(a))`; `f` is applied first.
    pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.codomain != g.domain {
            return Err(Error::AlphabetMismatch(
                "codomain of the inner morphism differs from the domain of the outer".into(),
            ));
        }
        let images = f
            .images
            .iter()
            .map(|img| g.apply(img))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(f.domain.clone(), g.codomain.clone(), images)
    }

    /// Same rules, new domain alphabet of equal size. Used to close a
    /// composition chain into an endomorphism.
    pub fn relabel_domain(&self, domain: Alphabet) -> Result<Morphism> {
        if domain.size() != self.domain.size() {
            return Err(Error::AlphabetMismatch(format!(
                "cannot relabel a domain of size {} to size {}",
                self.domain.size(),
                domain.size()
            )));
        }
        Ok(Morphism {
            domain,
            codomain: self.codomain.clone(),
            images: self.images.clone(),
        })
    }

    /// Letter-count matrix: entry `(b, a)` is `|f(a)|_b`.
    pub fn incidence_matrix(&self) -> Result<Vec<Vec<u64>>> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        let k = self.domain.size();
        let mut m = vec![vec![0u64; k]; k];
        for (a, img) in self.images.iter().enumerate() {
            for &b in img.letters() {
                m[b][a] += 1;
            }
        }
        Ok(m)
    }

    /// Primitivity test: some power of the incidence matrix is entrywise
    /// positive. The exponent search stops at the Wielandt bound
    /// `(k-1)^2 + 1`; entries saturate since only positivity matters.
    pub fn is_primitive(&self) -> Result<bool> {
        let m = self.incidence_matrix()?;
        let k = self.domain.size();
        let wielandt = (k - 1) * (k - 1) + 1;
        let mut power = m.clone();
        for _ in 0..wielandt {
            if power.iter().all(|row| row.iter().all(|&e| e > 0)) {
                return Ok(true);
            }
            power = mat_mul_saturating(&power, &m);
        }
        Ok(power.iter().all(|row| row.iter().all(|&e| e > 0)))
    }

    /// Whether `f(a)` begins with `a` and has length at least 2.
    pub fn is_prolongable_at(&self, a: Letter) -> bool {
        self.is_endomorphism() && self.images[a].len() >= 2 && self.images[a].letter(0) == a
    }

    /// Length-`n` prefix of the fixed point `lim f^k(a)`, for `f`
    /// prolongable at `a`.
    pub fn fixed_point_prefix(&self, a: Letter, n: usize) -> Result<Word> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        if !self.is_prolongable_at(a) {
            return Err(Error::NotProlongable {
                letter: self.domain.name(a),
            });
        }
        let mut w = self.images[a].clone();
        while w.len() < n {
            w = self.apply(&w).unwrap();
        }
        Ok(w.prefix(n))
    }

    /// The unique `g` with `f(a)u = u g(a)` (right) or `u f(a) = g(a) u`
    /// (left) for all `a`, when `u` satisfies the prefix/suffix condition.
    pub fn conjugate_by(&self, u: &Word, side: Side) -> Result<Morphism> {
        let mut images = Vec::with_capacity(self.images.len());
        for (a, img) in self.images.iter().enumerate() {
            let stripped = match side {
                Side::Right => img.concat(u)?.strip_prefix(u),
                Side::Left => u.concat(img)?.strip_suffix(u),
            };
            match stripped {
                Some(g) => images.push(g),
                None => {
                    return Err(Error::InvalidConjugator {
                        conjugator: u.to_string(),
                        reason: format!(
                            "the {} condition fails at letter '{}'",
                            match side {
                                Side::Right => "prefix",
                                Side::Left => "suffix",
                            },
                            self.domain.name(a)
                        ),
                    })
                }
            }
        }
        Morphism::new(self.domain.clone(), self.codomain.clone(), images)
    }

    /// The unique length-`len` word that can conjugate `self` on `side`, if
    /// the images agree that far. A right conjugator must be a common prefix
    /// of every `f(a)^omega`, a left one a common suffix of every
    /// `^omega f(a)`; this is the periodicity-aware enumeration.
    fn conjugator_candidate(&self, len: usize, side: Side) -> Option<Word> {
        let mut letters = vec![0 as Letter; len];
        for i in 0..len {
            let pick = |img: &Word| match side {
                Side::Right => img.letter(i % img.len()),
                Side::Left => img.letter(img.len() - 1 - (i % img.len())),
            };
            let c = pick(&self.images[0]);
            if self.images[1..].iter().any(|img| pick(img) != c) {
                return None;
            }
            match side {
                Side::Right => letters[i] = c,
                Side::Left => letters[len - 1 - i] = c,
            }
        }
        Some(Word::from_letters(self.codomain.clone(), letters).unwrap())
    }

    /// Classifies `self` into P, extended P, P_ret and P'. `bound` limits
    /// the conjugator and marker searches on both sides.
    pub fn classify(&self, bound: usize) -> ClassificationResult {
        let p_witness = self.class_p_prefix_witness();
        let extended_p_witness = self.class_p_suffix_witness();
        let p_ret_marker = self.p_ret_marker(bound);
        let p_prime_witness = self.p_prime_search(bound);
        ClassificationResult {
            in_p: p_witness.is_some(),
            p_witness,
            in_extended_p: extended_p_witness.is_some(),
            extended_p_witness,
            in_p_ret: p_ret_marker.is_some(),
            p_ret_marker,
            in_p_prime: if p_prime_witness.is_some() {
                PPrimeVerdict::Yes
            } else {
                PPrimeVerdict::NoUpToBound
            },
            p_prime_witness,
            search_bound: bound,
        }
    }

    /// Exact class-P test: `f(a) = p q_a` with `p` and every `q_a`
    /// palindromes. Any valid `p` is a common prefix of all images, hence a
    /// prefix of the shortest one, so enumerating its palindromic prefixes
    /// (full image included) decides membership exactly. Shortest `p` wins.
    fn class_p_prefix_witness(&self) -> Option<PalFactorization> {
        let shortest = self.images.iter().min_by_key(|img| img.len()).unwrap();
        for plen in 0..=shortest.len() {
            let p = shortest.prefix(plen);
            if !p.is_palindrome() {
                continue;
            }
            let q: Option<Vec<Word>> = self
                .images
                .iter()
                .map(|img| img.strip_prefix(&p).filter(Word::is_palindrome))
                .collect();
            if let Some(q) = q {
                return Some(PalFactorization { p, q });
            }
        }
        None
    }

    /// Extended class: `f(a) = q_a p`, decided symmetrically with suffixes.
    fn class_p_suffix_witness(&self) -> Option<PalFactorization> {
        let shortest = self.images.iter().min_by_key(|img| img.len()).unwrap();
        for plen in 0..=shortest.len() {
            let p = shortest.factor(shortest.len() - plen..shortest.len());
            if !p.is_palindrome() {
                continue;
            }
            let q: Option<Vec<Word>> = self
                .images
                .iter()
                .map(|img| img.strip_suffix(&p).filter(Word::is_palindrome))
                .collect();
            if let Some(q) = q {
                return Some(PalFactorization { p, q });
            }
        }
        None
    }

    /// Bounded P_ret test. A marker `p` must satisfy: `f(a)p` is a
    /// palindrome, begins and ends in `p`, contains `p` exactly twice, and
    /// the images are pairwise distinct. "Begins in p" makes every candidate
    /// a common prefix of all `f(a)^omega`, so there is at most one nonempty
    /// candidate per length.
    fn p_ret_marker(&self, bound: usize) -> Option<Word> {
        for (i, img) in self.images.iter().enumerate() {
            if self.images[..i].contains(img) {
                return None;
            }
        }
        for len in 1..=bound {
            let p = self.conjugator_candidate(len, Side::Right)?;
            if !p.is_palindrome() {
                continue;
            }
            let ok = self.images.iter().all(|img| {
                let fap = img.concat(&p).unwrap();
                fap.is_palindrome()
                    && fap.starts_with(&p)
                    && fap.ends_with(&p)
                    && fap.count_occurrences(&p).unwrap() == 2
            });
            if ok {
                return Some(p);
            }
        }
        None
    }

    /// Bounded P' search: enumerate every valid conjugator up to `bound` on
    /// both sides, shortest first, and test each conjugate for class P or
    /// extended class P. An extended-P conjugate `a -> q_a p` is rotated to
    /// the class-P morphism `a -> p q_a` through the left conjugator `p`,
    /// and the two witnesses are composed into one.
    fn p_prime_search(&self, bound: usize) -> Option<PPrimeWitness> {
        for len in 0..=bound {
            for side in [Side::Right, Side::Left] {
                let Some(u) = self.conjugator_candidate(len, side) else {
                    continue;
                };
                let Ok(conjugate) = self.conjugate_by(&u, side) else {
                    continue;
                };
                let direct = ConjugacyWitness { u: u.clone(), side };
                if let Some(pf) = conjugate.class_p_prefix_witness() {
                    return Some(PPrimeWitness {
                        witness: direct,
                        conjugate,
                        conjugate_factorization: pf,
                    });
                }
                if let Some(ext) = conjugate.class_p_suffix_witness() {
                    // rotate a -> q_a p into the class-P morphism a -> p q_a
                    let rotated_images: Vec<Word> =
                        ext.q.iter().map(|qa| ext.p.concat(qa).unwrap()).collect();
                    let rotated =
                        Morphism::new(self.domain.clone(), self.codomain.clone(), rotated_images)
                            .unwrap();
                    let rotation = ConjugacyWitness {
                        u: ext.p.clone(),
                        side: Side::Left,
                    };
                    if let Some(total) = compose_witnesses(&direct, &rotation, self, &rotated) {
                        let pf = PalFactorization {
                            p: ext.p.clone(),
                            q: ext.q.clone(),
                        };
                        return Some(PPrimeWitness {
                            witness: total,
                            conjugate: rotated,
                            conjugate_factorization: pf,
                        });
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}->{}", self.domain.name(a), img)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({self})")
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn mat_mul_saturating(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let k = a.len();
    let mut out = vec![vec![0u64; k]; k];
    for i in 0..k {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..k {
                out[i][j] = out[i][j].saturating_add(x.saturating_mul(b[l][j]));
            }
        }
    }
    out
}

/// Searches for a conjugacy witness with `|u| <= bound`, both sides,
/// shortest first with the right side preferred. `None` means "not conjugate
/// within the bound", never a proof of non-conjugacy.
pub fn are_conjugate(f: &Morphism, g: &Morphism, bound: usize) -> Option<ConjugacyWitness> {
    if f.domain.size() != g.domain.size() || f.codomain.size() != g.codomain.size() {
        return None;
    }
    for len in 0..=bound {
        for side in [Side::Right, Side::Left] {
            let Some(u) = f.conjugator_candidate(len, side) else {
                continue;
            };
            if let Ok(candidate) = f.conjugate_by(&u, side) {
                if candidate.images() == g.images() {
                    return Some(ConjugacyWitness { u, side });
                }
            }
        }
    }
    None
}

/// Transitivity, made executable: witnesses for `(f, g)` and `(g, h)`
/// compose into a witness for `(f, h)`. Same-side witnesses concatenate;
/// mixed sides reduce through the prefix/suffix relation between the two
/// conjugators. The result is verified before being returned.
pub fn compose_witnesses(
    fg: &ConjugacyWitness,
    gh: &ConjugacyWitness,
    f: &Morphism,
    h: &Morphism,
) -> Option<ConjugacyWitness> {
    let (u, v) = (&fg.u, &gh.u);
    let candidate = match (fg.side, gh.side) {
        (Side::Right, Side::Right) => Some(ConjugacyWitness {
            u: u.concat(v).ok()?,
            side: Side::Right,
        }),
        (Side::Left, Side::Left) => Some(ConjugacyWitness {
            u: v.concat(u).ok()?,
            side: Side::Left,
        }),
        (Side::Right, Side::Left) => {
            // one of u, v is a suffix of the other
            if let Some(rest) = v.strip_suffix(u) {
                Some(ConjugacyWitness {
                    u: rest,
                    side: Side::Left,
                })
            } else {
                u.strip_prefix(v).map(|rest| ConjugacyWitness {
                    u: rest,
                    side: Side::Right,
                })
            }
        }
        (Side::Left, Side::Right) => {
            // both conjugators are prefixes of g(a)^omega, so one is a
            // prefix of the other
            if let Some(rest) = v.strip_prefix(u) {
                Some(ConjugacyWitness {
                    u: rest,
                    side: Side::Right,
                })
            } else {
                u.strip_prefix(v).map(|rest| ConjugacyWitness {
                    u: rest,
                    side: Side::Left,
                })
            }
        }
    };
    candidate.filter(|w| w.verify(f, h))
}
