//! C ABI for the palword library.
//!
//! Conventions:
//! - Objects are opaque handles created by `*_new`/`*_parse` functions and
//!   released by the matching `*_free`; handles are not thread-safe to
//!   mutate concurrently but may be shared for reads.
//! - Fallible calls return a [`PalwordStatus`]; on anything but `OK` the
//!   out-parameters are untouched and `palword_last_error_message` returns
//!   a description of the failure (thread-local).
//! - Strings returned by the library are NUL-terminated, heap-allocated,
//!   and must be released with `palword_string_free`.
//! - Structured results (analysis, classification, derivation,
//!   decomposition certificates) are returned as JSON using the same
//!   schemas as the `palword` CLI.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use palword::cli::{self, Command, InputSource, RunConfig};
use palword::derived::MorphicWordSpec;
use palword::error::Error;
use palword::morphisms::Morphism;
use palword::palindromes::{defect, richness_check_word};
use palword::words::Word;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PalwordStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A literal failed to parse.
    ParseError = 3,
    /// The operation failed its contract (see the last error message).
    DomainError = 4,
    /// The library panicked internally; state may be inconsistent.
    Panic = 5,
}

/// Opaque finite word.
pub struct PalwordWord(Word);

/// Opaque morphism.
pub struct PalwordMorphism(Morphism);

/// Opaque morphic word: a substitution fixed point behind an optional outer
/// morphism, with its defining literals retained.
pub struct PalwordSpec {
    spec: MorphicWordSpec,
    inner_literal: String,
    seed: char,
    outer_literal: Option<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn status_of(e: &Error) -> PalwordStatus {
    if e.is_parse() {
        PalwordStatus::ParseError
    } else {
        PalwordStatus::DomainError
    }
}

fn guard(body: impl FnOnce() -> PalwordStatus) -> PalwordStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            PalwordStatus::Panic
        }
    }
}

/// # Safety
/// `s` must be NULL or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PalwordStatus> {
    if s.is_null() {
        set_error("argument is NULL");
        return Err(PalwordStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        PalwordStatus::InvalidUtf8
    })
}

fn alloc_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

unsafe fn write_out<T>(out: *mut T, value: T) -> PalwordStatus {
    if out.is_null() {
        set_error("out-parameter is NULL");
        return PalwordStatus::NullArgument;
    }
    out.write(value);
    PalwordStatus::Ok
}

/// Runs a CLI-equivalent command and hands the JSON result to `out`.
unsafe fn run_to_json(config: &RunConfig, out: *mut *mut c_char) -> PalwordStatus {
    let outcome = cli::run(config);
    match outcome.exit_code {
        0 => write_out(out, alloc_string(&outcome.output)),
        2 => {
            set_error(&outcome.output);
            PalwordStatus::ParseError
        }
        _ => {
            set_error(&outcome.output);
            PalwordStatus::DomainError
        }
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn palword_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent failure on this thread, or NULL. Free with
/// `palword_string_free`.
#[no_mangle]
pub extern "C" fn palword_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| alloc_string(s.to_str().unwrap_or("invalid error")))
            .unwrap_or(ptr::null_mut())
    })
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn palword_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// --- words ---------------------------------------------------------------

/// Parses a word literal (one character per letter; the alphabet is
/// inferred).
///
/// # Safety
/// `literal` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_word_parse(
    literal: *const c_char,
    out: *mut *mut PalwordWord,
) -> PalwordStatus {
    guard(|| {
        let literal = match read_str(literal) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match Word::parse_infer(literal) {
            Ok(word) => write_out(out, Box::into_raw(Box::new(PalwordWord(word)))),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// # Safety
/// `word` must be NULL or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn palword_word_free(word: *mut PalwordWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Literal of the word. NULL if `word` is NULL.
///
/// # Safety
/// `word` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn palword_word_to_string(word: *const PalwordWord) -> *mut c_char {
    match word.as_ref() {
        Some(w) => alloc_string(&w.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// Length of the word; 0 if `word` is NULL.
///
/// # Safety
/// `word` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn palword_word_len(word: *const PalwordWord) -> usize {
    word.as_ref().map(|w| w.0.len()).unwrap_or(0)
}

/// # Safety
/// `word` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn palword_word_is_palindrome(word: *const PalwordWord) -> bool {
    word.as_ref().map(|w| w.0.is_palindrome()).unwrap_or(false)
}

/// Palindromic defect |w| + 1 - |Pal(w)|.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_word_defect(
    word: *const PalwordWord,
    out: *mut u64,
) -> PalwordStatus {
    guard(|| {
        let Some(w) = word.as_ref() else {
            set_error("word is NULL");
            return PalwordStatus::NullArgument;
        };
        write_out(out, defect(&w.0) as u64)
    })
}

/// Richness of the word by the complete-first-return characterization.
///
/// # Safety
/// `word` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn palword_word_is_rich(word: *const PalwordWord) -> bool {
    word.as_ref()
        .map(|w| richness_check_word(&w.0).is_rich())
        .unwrap_or(false)
}

/// Analysis JSON for a finite word: length, palindrome count, defect,
/// richness verdict and witness.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_word_analyze_json(
    word: *const PalwordWord,
    out: *mut *mut c_char,
) -> PalwordStatus {
    guard(|| {
        let Some(w) = word.as_ref() else {
            set_error("word is NULL");
            return PalwordStatus::NullArgument;
        };
        let mut config = RunConfig::new(Command::Analyze);
        config.input = Some(InputSource::Literal(w.0.to_string()));
        run_to_json(&config, out)
    })
}

// --- morphisms -----------------------------------------------------------

/// Parses a morphism literal like "a->ac;b->acab;c->ab".
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_morphism_parse(
    literal: *const c_char,
    out: *mut *mut PalwordMorphism,
) -> PalwordStatus {
    guard(|| {
        let literal = match read_str(literal) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match Morphism::parse(literal) {
            Ok(m) => write_out(out, Box::into_raw(Box::new(PalwordMorphism(m)))),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// # Safety
/// `morphism` must be NULL or an unfreed handle.
#[no_mangle]
pub unsafe extern "C" fn palword_morphism_free(morphism: *mut PalwordMorphism) {
    if !morphism.is_null() {
        drop(Box::from_raw(morphism));
    }
}

/// Rule literal of the morphism. NULL if the handle is NULL.
///
/// # Safety
/// `morphism` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn palword_morphism_to_string(
    morphism: *const PalwordMorphism,
) -> *mut c_char {
    match morphism.as_ref() {
        Some(m) => alloc_string(&m.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// Primitivity of an endomorphism.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_morphism_is_primitive(
    morphism: *const PalwordMorphism,
    out: *mut bool,
) -> PalwordStatus {
    guard(|| {
        let Some(m) = morphism.as_ref() else {
            set_error("morphism is NULL");
            return PalwordStatus::NullArgument;
        };
        match m.0.is_primitive() {
            Ok(v) => write_out(out, v),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Applies the morphism to a word, producing a new word handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_morphism_apply(
    morphism: *const PalwordMorphism,
    word: *const PalwordWord,
    out: *mut *mut PalwordWord,
) -> PalwordStatus {
    guard(|| {
        let (Some(m), Some(w)) = (morphism.as_ref(), word.as_ref()) else {
            set_error("morphism or word is NULL");
            return PalwordStatus::NullArgument;
        };
        match m.0.apply(&w.0) {
            Ok(image) => write_out(out, Box::into_raw(Box::new(PalwordWord(image)))),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Classification JSON (classes P, extended P, P_ret, P'). `bound` of 0
/// selects the default: the total image length.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_morphism_classify_json(
    morphism: *const PalwordMorphism,
    bound: usize,
    out: *mut *mut c_char,
) -> PalwordStatus {
    guard(|| {
        let Some(m) = morphism.as_ref() else {
            set_error("morphism is NULL");
            return PalwordStatus::NullArgument;
        };
        let mut config = RunConfig::new(Command::Classify);
        config.input = Some(InputSource::Literal(m.0.to_string()));
        config.conjugator_bound = (bound > 0).then_some(bound);
        run_to_json(&config, out)
    })
}

/// Length-`n` prefix of the fixed point of the morphism at `seed`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_morphism_fixed_point_prefix(
    morphism: *const PalwordMorphism,
    seed: *const c_char,
    n: usize,
    out: *mut *mut PalwordWord,
) -> PalwordStatus {
    guard(|| {
        let Some(m) = morphism.as_ref() else {
            set_error("morphism is NULL");
            return PalwordStatus::NullArgument;
        };
        let seed = match read_str(seed) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let Some(letter) = seed
            .chars()
            .next()
            .filter(|_| seed.chars().count() == 1)
            .and_then(|c| m.0.domain().letter_named(c))
        else {
            set_error("seed must be a single letter of the domain");
            return PalwordStatus::DomainError;
        };
        match m.0.fixed_point_prefix(letter, n) {
            Ok(word) => write_out(out, Box::into_raw(Box::new(PalwordWord(word)))),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

// --- morphic word specs ----------------------------------------------------

/// Creates a morphic word: the fixed point of `inner` at `seed`, mapped
/// through the optional `outer` morphism (`outer` may be NULL).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_spec_new(
    inner: *const c_char,
    seed: *const c_char,
    outer: *const c_char,
    out: *mut *mut PalwordSpec,
) -> PalwordStatus {
    guard(|| {
        let inner_literal = match read_str(inner) {
            Ok(s) => s.to_string(),
            Err(status) => return status,
        };
        let seed_str = match read_str(seed) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let outer_literal = if outer.is_null() {
            None
        } else {
            match read_str(outer) {
                Ok(s) => Some(s.to_string()),
                Err(status) => return status,
            }
        };
        let build = || -> Result<PalwordSpec, Error> {
            let inner = Morphism::parse(&inner_literal)?;
            let seed_char = seed_str
                .chars()
                .next()
                .filter(|_| seed_str.chars().count() == 1)
                .ok_or_else(|| Error::InvalidInput("seed must be a single letter".into()))?;
            let seed = inner.domain().letter_named(seed_char).ok_or_else(|| {
                Error::InvalidInput(format!("seed '{seed_char}' is not in the alphabet"))
            })?;
            let outer = outer_literal.as_deref().map(Morphism::parse).transpose()?;
            let spec = MorphicWordSpec::new(inner, seed, outer)?;
            Ok(PalwordSpec {
                spec,
                inner_literal: inner_literal.clone(),
                seed: seed_char,
                outer_literal: outer_literal.clone(),
            })
        };
        match build() {
            Ok(handle) => write_out(out, Box::into_raw(Box::new(handle))),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Loads a bundled example by name ("thue-morse", "labbe", "labbe-shift2",
/// "tau", "derived-labbe").
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_spec_example(
    name: *const c_char,
    out: *mut *mut PalwordSpec,
) -> PalwordStatus {
    guard(|| {
        let name = match read_str(name) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let Some(entry) = palword::corpus::entries().iter().find(|e| e.name == name) else {
            set_error(&format!("unknown example '{name}'"));
            return PalwordStatus::DomainError;
        };
        match entry.load() {
            Ok(spec) => write_out(
                out,
                Box::into_raw(Box::new(PalwordSpec {
                    spec,
                    inner_literal: entry.inner.to_string(),
                    seed: entry.seed,
                    outer_literal: entry.outer.map(str::to_string),
                })),
            ),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// # Safety
/// `spec` must be NULL or an unfreed handle.
#[no_mangle]
pub unsafe extern "C" fn palword_spec_free(spec: *mut PalwordSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Length-`n` prefix of the generated word.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_spec_generate(
    spec: *const PalwordSpec,
    n: usize,
    out: *mut *mut PalwordWord,
) -> PalwordStatus {
    guard(|| {
        let Some(s) = spec.as_ref() else {
            set_error("spec is NULL");
            return PalwordStatus::NullArgument;
        };
        let word = s.spec.generate_prefix(n);
        write_out(out, Box::into_raw(Box::new(PalwordWord(word))))
    })
}

fn spec_config(spec: &PalwordSpec, command: Command) -> RunConfig {
    let mut config = RunConfig::new(command);
    config.input = Some(InputSource::Literal(spec.inner_literal.clone()));
    config.seed = Some(spec.seed);
    config.outer = spec.outer_literal.clone();
    config
}

/// Analysis JSON of the length-`n` prefix: palindrome count, defect,
/// richness-up-to-length and (when not rich) a witness.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_spec_analyze_json(
    spec: *const PalwordSpec,
    n: usize,
    out: *mut *mut c_char,
) -> PalwordStatus {
    guard(|| {
        let Some(s) = spec.as_ref() else {
            set_error("spec is NULL");
            return PalwordStatus::NullArgument;
        };
        let mut config = spec_config(s, Command::Analyze);
        config.prefix_length = n;
        run_to_json(&config, out)
    })
}

/// Derivation JSON at the prefix `at` (NULL for the first letter): return
/// words, the derived prefix of length `n`, the connecting morphism and the
/// stability record.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_spec_derive_json(
    spec: *const PalwordSpec,
    at: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> PalwordStatus {
    guard(|| {
        let Some(s) = spec.as_ref() else {
            set_error("spec is NULL");
            return PalwordStatus::NullArgument;
        };
        let at = if at.is_null() {
            None
        } else {
            match read_str(at) {
                Ok(s) => Some(s.to_string()),
                Err(status) => return status,
            }
        };
        let mut config = spec_config(s, Command::Derive);
        config.at = at;
        config.prefix_length = n;
        run_to_json(&config, out)
    })
}

/// Decomposition certificate JSON. Routes through the finite-defect
/// reduction when `finite_defect` is set; `verify_len` of 0 skips the
/// re-verification block.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn palword_spec_decompose_json(
    spec: *const PalwordSpec,
    depth: usize,
    cmp_len: usize,
    finite_defect: bool,
    marker_bound: usize,
    verify_len: usize,
    out: *mut *mut c_char,
) -> PalwordStatus {
    guard(|| {
        let Some(s) = spec.as_ref() else {
            set_error("spec is NULL");
            return PalwordStatus::NullArgument;
        };
        let mut config = spec_config(s, Command::Decompose);
        config.depth = depth;
        config.cmp_len = cmp_len;
        config.finite_defect = finite_defect;
        config.marker_bound = marker_bound;
        config.verify_length = (verify_len > 0).then_some(verify_len);
        run_to_json(&config, out)
    })
}
