//! Palindromic factor counting, defect and richness checks.
//!
//! The palindromic tree (eertree) counts distinct palindromic factors per
//! prefix in linear-ish time; a brute-force enumeration backs it as an
//! oracle. Richness is decided two ways: by counting (defect zero) and by
//! the complete-first-return characterization.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::derived::MorphicWordSpec;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// Cap on the brute-force palindrome enumeration.
pub const NAIVE_ORACLE_CAP: usize = 4096;

struct Node {
    len: isize,
    link: usize,
    next: BTreeMap<Letter, usize>,
    /// End index (inclusive) of this palindrome's first occurrence.
    first_end: usize,
    /// End index of the most recent occurrence seen so far.
    last_end: usize,
}

/// Palindromic tree over a fixed word. Construction is append-only; a built
/// tree is immutable and all queries are pure.
pub struct Eertree {
    nodes: Vec<Node>,
    /// counts[k] = distinct nonempty palindromic factors of the length-k prefix.
    counts: Vec<usize>,
    letters: Vec<Letter>,
    last: usize,
}

impl Eertree {
    pub fn build(w: &Word) -> Eertree {
        let mut t = Eertree {
            nodes: vec![
                // root of length -1
                Node {
                    len: -1,
                    link: 0,
                    next: BTreeMap::new(),
                    first_end: 0,
                    last_end: 0,
                },
                // root of length 0
                Node {
                    len: 0,
                    link: 0,
                    next: BTreeMap::new(),
                    first_end: 0,
                    last_end: 0,
                },
            ],
            counts: vec![0],
            letters: Vec::with_capacity(w.len()),
            last: 1,
        };
        for &c in w.letters() {
            t.push(c);
        }
        t
    }

    fn suffix_ancestor(&self, mut v: usize, i: usize) -> usize {
        loop {
            let l = self.nodes[v].len;
            let j = i as isize - 1 - l;
            if j >= 0 && self.letters[j as usize] == self.letters[i] {
                return v;
            }
            v = self.nodes[v].link;
        }
    }

    fn push(&mut self, c: Letter) {
        let i = self.letters.len();
        self.letters.push(c);
        let cur = self.suffix_ancestor(self.last, i);
        if let Some(&existing) = self.nodes[cur].next.get(&c) {
            self.last = existing;
            let prev = self.counts[i];
            self.counts.push(prev);
            return;
        }
        let link = if self.nodes[cur].len == -1 {
            // single letter palindromes link to the empty root
            1
        } else {
            let anc = self.suffix_ancestor(self.nodes[cur].link, i);
            self.nodes[anc].next[&c]
        };
        let node = Node {
            len: self.nodes[cur].len + 2,
            link,
            next: BTreeMap::new(),
            first_end: i,
            last_end: i,
        };
        self.nodes.push(node);
        let id = self.nodes.len() - 1;
        self.nodes[cur].next.insert(c, id);
        self.last = id;
        let prev = self.counts[i];
        self.counts.push(prev + 1);
    }

    /// Distinct nonempty palindromic factors of the whole word.
    pub fn distinct_count(&self) -> usize {
        *self.counts.last().unwrap()
    }

    /// Per-prefix distinct counts including the empty palindrome:
    /// entry k is `|Pal(w[0..k))|`, entry 0 is 1.
    pub fn prefix_counts(&self) -> Vec<usize> {
        self.counts.iter().map(|c| c + 1).collect()
    }

    /// Every distinct palindromic factor, extracted from the node set.
    pub fn factors(&self, w: &Word) -> Vec<Word> {
        self.nodes[2..]
            .iter()
            .map(|n| {
                let len = n.len as usize;
                w.factor(n.first_end + 1 - len..n.first_end + 1)
            })
            .collect()
    }
}

/// `|Pal(prefix)|` for every prefix, empty word included.
pub fn eertree_count(w: &Word) -> Vec<usize> {
    Eertree::build(w).prefix_counts()
}

/// Exact set `Pal(w)` by center expansion, including the empty word.
/// Quadratic by design; refuses words longer than `cap`.
pub fn palindromic_factors_naive(w: &Word, cap: usize) -> Result<HashSet<Word>> {
    if w.len() > cap {
        return Err(Error::OracleCapExceeded { len: w.len(), cap });
    }
    let n = w.len();
    let s = w.letters();
    let mut out = HashSet::new();
    out.insert(Word::empty(w.alphabet().clone()));
    for center in 0..n {
        for start in [(center, center), (center, center + 1)] {
            let (mut l, mut r) = start;
            while r < n && s[l] == s[r] {
                out.insert(w.factor(l..r + 1));
                if l == 0 {
                    break;
                }
                l -= 1;
                r += 1;
            }
        }
    }
    Ok(out)
}

/// `D(w) = |w| + 1 - |Pal(w)|`; zero exactly when `w` is rich.
pub fn defect(w: &Word) -> usize {
    w.len() + 1 - (Eertree::build(w).distinct_count() + 1)
}

/// Defect of the length-`n` prefix. Defect is monotone under prefix
/// extension, so this is also the max over all prefixes up to `n`.
pub fn defect_of_prefix(x: &MorphicWordSpec, n: usize) -> usize {
    defect(&x.generate_prefix(n))
}

/// Ascending lengths `L` such that `w[0..L)` is a palindrome, including 0.
pub fn palindromic_prefixes(w: &Word) -> Vec<usize> {
    let radii = manacher(w.letters());
    (0..=w.len()).filter(|&l| radii[l] >= l).collect()
}

/// Manacher palindrome array: `a[i]` is the longest `r - l` with `l + r = i`
/// and `w[l..r)` a palindrome. Answers palindromicity of any factor in O(1).
pub fn manacher(s: &[Letter]) -> Vec<usize> {
    let n = s.len();
    let mut a = vec![0usize; 2 * n + 1];
    let mut i = 1;
    let mut j = 0;
    while i <= 2 * n {
        j += (i + j) % 2;
        while j < i && i + j < 2 * n && s[(i - j) / 2 - 1] == s[(i + j) / 2] {
            j += 2;
        }
        a[i] = j;
        if j == 0 {
            i += 1;
            continue;
        }
        let mut k = 1;
        while k <= i && k + a[i - k] < j {
            a[i + k] = a[i - k];
            k += 1;
        }
        i += k;
        j -= k;
    }
    a
}

/// Richness verdict for a word or a prefix of an infinite word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RichnessVerdict {
    Rich,
    NotRich,
    RichUpToLength,
}

/// A complete first return to a palindromic factor that is not itself a
/// palindrome; disproves richness of the inspected word.
#[derive(Debug, Clone, Serialize)]
pub struct ReturnViolation {
    pub factor: Word,
    pub complete_return: Word,
}

impl ReturnViolation {
    /// Re-checks the witness against `w` by direct scanning.
    pub fn verify(&self, w: &Word) -> bool {
        let p = &self.factor;
        let r = &self.complete_return;
        p.is_palindrome()
            && !r.is_palindrome()
            && r.starts_with(p)
            && r.ends_with(p)
            && r.count_occurrences(p).unwrap_or(0) == 2
            && w.count_occurrences(r).unwrap_or(0) >= 1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RichnessReport {
    pub verdict: RichnessVerdict,
    pub witness: Option<ReturnViolation>,
    pub checked_length: usize,
}

impl RichnessReport {
    pub fn is_rich(&self) -> bool {
        !matches!(self.verdict, RichnessVerdict::NotRich)
    }
}

/// Scans every complete first return to every palindromic factor of `w` and
/// returns the first non-palindromic one. Factors are enumerated through the
/// eertree: the palindromic suffixes ending at each position are exactly the
/// suffix-link chain, so consecutive occurrences of each factor are visited
/// once. Palindromicity of each return is answered in O(1) via Manacher.
fn first_return_violation(w: &Word) -> Option<ReturnViolation> {
    let radii = manacher(w.letters());
    let is_pal = |l: usize, r: usize| radii[l + r] >= r - l; // w[l..r)
    let mut t = Eertree {
        nodes: vec![
            Node {
                len: -1,
                link: 0,
                next: BTreeMap::new(),
                first_end: 0,
                last_end: 0,
            },
            Node {
                len: 0,
                link: 0,
                next: BTreeMap::new(),
                first_end: 0,
                last_end: 0,
            },
        ],
        counts: vec![0],
        letters: Vec::with_capacity(w.len()),
        last: 1,
    };
    for (i, &c) in w.letters().iter().enumerate() {
        t.push(c);
        // every palindromic suffix of w[0..=i] lies on the suffix-link chain
        let mut v = t.last;
        while t.nodes[v].len > 0 {
            let len = t.nodes[v].len as usize;
            let prev_end = t.nodes[v].last_end;
            if prev_end != i {
                let start = prev_end + 1 - len;
                if !is_pal(start, i + 1) {
                    return Some(ReturnViolation {
                        factor: w.factor(start..start + len),
                        complete_return: w.factor(start..i + 1),
                    });
                }
                t.nodes[v].last_end = i;
            }
            v = t.nodes[v].link;
        }
    }
    None
}

/// One-shot richness check of a finite word via the complete-first-return
/// characterization.
pub fn richness_check_word(w: &Word) -> RichnessReport {
    match first_return_violation(w) {
        Some(v) => RichnessReport {
            verdict: RichnessVerdict::NotRich,
            witness: Some(v),
            checked_length: w.len(),
        },
        None => RichnessReport {
            verdict: RichnessVerdict::Rich,
            witness: None,
            checked_length: w.len(),
        },
    }
}

/// Checks the length-`n` prefix of `x`: every complete first return to every
/// palindromic factor occurring fully inside the prefix must be a palindrome.
/// A clean pass certifies richness up to length `n` only.
pub fn richness_check_returns(x: &MorphicWordSpec, n: usize) -> RichnessReport {
    let prefix = x.generate_prefix(n);
    match first_return_violation(&prefix) {
        Some(v) => RichnessReport {
            verdict: RichnessVerdict::NotRich,
            witness: Some(v),
            checked_length: n,
        },
        None => RichnessReport {
            verdict: RichnessVerdict::RichUpToLength,
            witness: None,
            checked_length: n,
        },
    }
}
