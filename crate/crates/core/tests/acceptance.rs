//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p palword --test acceptance -- --nocapture`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use palword::corpus;
use palword::decompose::{
    decompose_finite_defect, decompose_rich, verify_certificate, CertificateStatus,
};
use palword::derived::{first_returns, MorphicWordSpec};
use palword::error::Error;
use palword::morphisms::{are_conjugate, compose_witnesses, ConjugacyWitness, Morphism, Side};
use palword::palindromes::{
    defect, defect_of_prefix, eertree_count, palindromic_factors_naive, richness_check_returns,
    richness_check_word,
};
use palword::words::{Alphabet, Letter, Word};

fn pass(criterion: usize, label: &str) {
    println!("criterion {criterion} ({label}): PASS");
}

fn m(s: &str) -> Morphism {
    Morphism::parse(s).unwrap()
}

fn spec(name: &str) -> MorphicWordSpec {
    corpus::load(name).unwrap()
}

fn word(alphabet: &Alphabet, s: &str) -> Word {
    Word::parse(alphabet, s).unwrap()
}

#[test]
fn criterion_01_thue_morse_returns_and_derived_word() {
    let tm = spec("thue-morse");
    let u = word(tm.alphabet(), "0");
    let rs = first_returns(&tm, &u, 64).unwrap();
    let returns: Vec<String> = rs.returns.iter().map(|r| r.to_string()).collect();
    assert_eq!(returns, vec!["011", "01", "0"]);
    assert_eq!(rs.derived_prefix.prefix(15).to_string(), "012021012102012");
    pass(1, "Thue-Morse returns and derived word");
}

#[test]
fn criterion_02_labbe_pipeline() {
    let labbe = spec("labbe");
    let u = word(labbe.alphabet(), "a");
    let rs = first_returns(&labbe, &u, 64).unwrap();
    let returns: Vec<String> = rs.returns.iter().map(|r| r.to_string()).collect();
    assert_eq!(returns, vec!["ac", "ab"]);

    let chain = palword::derived::DerivationChain::with_root(&labbe, &u).unwrap();
    let derived = chain.level_prefix(0, 4096).unwrap();
    let dl = spec("derived-labbe");
    assert_eq!(derived.letters(), dl.generate_prefix(4096).letters());

    let f_u = rs.morphism();
    assert_eq!(f_u.to_string(), "0->ac;1->ab");
    let classification = f_u.classify(f_u.total_image_len());
    assert!(classification.in_p);
    let witness = classification.p_witness.unwrap();
    assert_eq!(witness.p.to_string(), "a");
    assert!(witness.verify_prefix_form(&f_u));
    pass(
        2,
        "Labbe returns, derived fixed point, connecting morphism in P",
    );
}

#[test]
fn criterion_03_displayed_fixed_points() {
    assert_eq!(
        m("a->ac;b->acab;c->ab")
            .fixed_point_prefix(0, 26)
            .unwrap()
            .to_string(),
        "acabacacabacabacabacacabac"
    );
    assert_eq!(
        m("a->ab;b->acac;c->ac")
            .fixed_point_prefix(0, 32)
            .unwrap()
            .to_string(),
        "abacacabacabacabacacabacabacacab"
    );
    assert_eq!(
        m("0->01;1->10")
            .fixed_point_prefix(0, 32)
            .unwrap()
            .to_string(),
        "01101001100101101001011001101001"
    );
    pass(3, "displayed fixed points reproduced exactly");
}

#[test]
fn criterion_04_classification_golden_set() {
    let r = m("0->0;1->01").classify(3);
    assert!(r.in_p && r.in_p_ret && r.p_prime_yes());
    assert_eq!(r.p_ret_marker.unwrap().to_string(), "0");

    let r = m("0->00;1->01").classify(4);
    assert!(r.in_p && !r.in_p_ret);

    let r = m("0->001;1->0010").classify(7);
    assert!(!r.in_p && r.in_p_ret && r.p_prime_yes());
    assert_eq!(r.p_ret_marker.unwrap().to_string(), "00100");

    let f = m("0->01;1->01011");
    let r = f.classify(f.total_image_len());
    assert!(!r.in_p && r.p_prime_yes());
    assert!(r.p_prime_witness.unwrap().verify(&f));

    let f = m("0->01;1->001");
    let r = f.classify(f.total_image_len());
    assert!(r.p_prime_yes());
    assert!(r.p_prime_witness.unwrap().verify(&f));

    let f = m("a->abbab;b->abb");
    let r = f.classify(f.total_image_len());
    assert!(r.p_prime_yes());
    let witness = r.p_prime_witness.unwrap();
    assert_eq!(witness.conjugate.to_string(), "a->bbaba;b->bba");
    assert!(witness.verify(&f));
    pass(4, "classification golden set with re-verified witnesses");
}

#[test]
fn criterion_05_conjugacy_witness() {
    let f = m("0->001;1->0010010010010");
    let g = m("0->010;1->0100100010010");
    let witness = are_conjugate(&f, &g, 13).unwrap();
    assert_eq!(witness.u.to_string(), "0010010");
    assert!(witness.verify(&f, &g));
    pass(5, "conjugacy search returns u=0010010");
}

#[test]
fn criterion_06_richness_and_defect() {
    let rich = Word::parse_infer("aababbab").unwrap();
    let not_rich = Word::parse_infer("aababbaa").unwrap();
    assert_eq!(defect(&rich), 0);
    assert_eq!(defect(&not_rich), 1);
    // exact counts against the brute-force oracle
    assert_eq!(palindromic_factors_naive(&rich, 64).unwrap().len(), 9);
    assert_eq!(palindromic_factors_naive(&not_rich, 64).unwrap().len(), 8);

    let labbe = spec("labbe");
    assert_eq!(defect_of_prefix(&labbe, 4096), 0);

    let tau = spec("tau");
    let report = richness_check_returns(&tau, 4096);
    assert!(report.is_rich(), "{report:?}");

    let tm = spec("thue-morse");
    let d_4096 = defect_of_prefix(&tm, 4096);
    let d_256 = defect_of_prefix(&tm, 256);
    assert!(d_4096 >= 1);
    assert!(d_4096 > d_256);
    pass(6, "richness and defect across the worked examples");
}

#[test]
fn criterion_07_oracle_equivalence() {
    // exhaustive: eertree count equals brute-force palindrome count
    for (alpha, max_len) in [(2usize, 12usize), (3, 8)] {
        let alphabet = Alphabet::anonymous(alpha).unwrap();
        for len in 0..=max_len {
            let total = alpha.pow(len as u32);
            for mut code in 0..total {
                let mut letters = Vec::with_capacity(len);
                for _ in 0..len {
                    letters.push(code % alpha);
                    code /= alpha;
                }
                let word = Word::from_letters(alphabet.clone(), letters).unwrap();
                let naive = palindromic_factors_naive(&word, 64).unwrap().len();
                assert_eq!(*eertree_count(&word).last().unwrap(), naive, "{word}");
            }
        }
    }

    // randomized: defect zero iff the return characterization passes
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..200 {
        let alpha = rng.random_range(2..=3);
        let len = rng.random_range(0..=40);
        let alphabet = Alphabet::anonymous(alpha).unwrap();
        let letters: Vec<Letter> = (0..len).map(|_| rng.random_range(0..alpha)).collect();
        let word = Word::from_letters(alphabet, letters).unwrap();
        let report = richness_check_word(&word);
        assert_eq!(defect(&word) == 0, report.is_rich(), "{word}");
        if let Some(witness) = report.witness {
            assert!(witness.verify(&word));
        }
    }
    pass(7, "eertree vs naive oracle and richness criteria agreement");
}

// --- random generators for the algebraic suites -------------------------

fn random_palindrome(rng: &mut StdRng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let mut letters = vec![0 as Letter; len];
    for i in 0..len.div_ceil(2) {
        let c = rng.random_range(0..alphabet.size());
        letters[i] = c;
        letters[len - 1 - i] = c;
    }
    Word::from_letters(alphabet.clone(), letters).unwrap()
}

fn random_word(rng: &mut StdRng, alphabet: &Alphabet, min_len: usize, max_len: usize) -> Word {
    let len = rng.random_range(min_len..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| rng.random_range(0..alphabet.size()))
        .collect();
    Word::from_letters(alphabet.clone(), letters).unwrap()
}

/// Random morphism with images of length 1..=max_image.
fn random_morphism(
    rng: &mut StdRng,
    domain: &Alphabet,
    codomain: &Alphabet,
    max_image: usize,
) -> Morphism {
    let images = (0..domain.size())
        .map(|_| random_word(rng, codomain, 1, max_image))
        .collect();
    Morphism::new(domain.clone(), codomain.clone(), images).unwrap()
}

/// Random class-P morphism `a -> p q_a` with image lengths <= max_image.
fn random_class_p(
    rng: &mut StdRng,
    domain: &Alphabet,
    codomain: &Alphabet,
    max_image: usize,
) -> Morphism {
    loop {
        let p = random_palindrome(rng, codomain, max_image - 1);
        let images: Option<Vec<Word>> = (0..domain.size())
            .map(|_| {
                let q = random_palindrome(rng, codomain, max_image - p.len());
                let img = p.concat(&q).unwrap();
                (!img.is_empty()).then_some(img)
            })
            .collect();
        if let Some(images) = images {
            return Morphism::new(domain.clone(), codomain.clone(), images).unwrap();
        }
    }
}

/// Random conjugate of `f` together with the witness, built by trying short
/// periodic extensions of the images on both sides.
fn random_conjugate(
    rng: &mut StdRng,
    f: &Morphism,
    max_len: usize,
) -> (Morphism, ConjugacyWitness) {
    for _ in 0..64 {
        let side = if rng.random_bool(0.5) {
            Side::Right
        } else {
            Side::Left
        };
        let len = rng.random_range(0..=max_len);
        let base = f.image(rng.random_range(0..f.domain().size()));
        let letters: Vec<Letter> = match side {
            Side::Right => (0..len).map(|i| base.letter(i % base.len())).collect(),
            Side::Left => {
                let mut v: Vec<Letter> = (0..len)
                    .map(|i| base.letter(base.len() - 1 - (i % base.len())))
                    .collect();
                v.reverse();
                v
            }
        };
        let u = Word::from_letters(f.codomain().clone(), letters).unwrap();
        if let Ok(g) = f.conjugate_by(&u, side) {
            return (g, ConjugacyWitness { u, side });
        }
    }
    (
        f.clone(),
        ConjugacyWitness {
            u: Word::empty(f.codomain().clone()),
            side: Side::Right,
        },
    )
}

/// Random P_ret morphism by rejection sampling: a nonempty palindromic
/// marker p such that every f(a)p is a palindromic complete first return to
/// p, with pairwise distinct images.
fn random_p_ret(rng: &mut StdRng, domain_size: usize, codomain: &Alphabet) -> Option<Morphism> {
    'outer: for _ in 0..4000 {
        let p = random_palindrome(rng, codomain, 4);
        if p.is_empty() {
            continue;
        }
        let mut images: Vec<Word> = Vec::new();
        for _ in 0..domain_size {
            let mut found = false;
            for _ in 0..400 {
                let f_a = random_word(rng, codomain, 1, 4);
                let fap = f_a.concat(&p).unwrap();
                if fap.is_palindrome()
                    && fap.starts_with(&p)
                    && fap.ends_with(&p)
                    && fap.count_occurrences(&p).unwrap() == 2
                    && !images.contains(&f_a)
                {
                    images.push(f_a);
                    found = true;
                    break;
                }
            }
            if !found {
                continue 'outer;
            }
        }
        let domain = Alphabet::anonymous(domain_size).unwrap();
        return Some(Morphism::new(domain, codomain.clone(), images).unwrap());
    }
    None
}

#[test]
fn criterion_08_algebraic_property_suites() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let alphabets: Vec<Alphabet> = (2..=3).map(|k| Alphabet::anonymous(k).unwrap()).collect();
    let pick = |rng: &mut StdRng, set: &[Alphabet]| set[rng.random_range(0..set.len())].clone();

    // conjugacy is reflexive, symmetric and transitive, with witnesses
    for _ in 0..200 {
        let domain = pick(&mut rng, &alphabets);
        let codomain = pick(&mut rng, &alphabets);
        let f = random_morphism(&mut rng, &domain, &codomain, 4);

        let witness = are_conjugate(&f, &f, 2).expect("reflexivity");
        assert!(witness.u.is_empty());

        let (g, fg) = random_conjugate(&mut rng, &f, 4);
        assert!(fg.verify(&f, &g));
        // symmetry: the same word witnesses (g, f) on the flipped side
        let flipped = ConjugacyWitness {
            u: fg.u.clone(),
            side: match fg.side {
                Side::Right => Side::Left,
                Side::Left => Side::Right,
            },
        };
        assert!(flipped.verify(&g, &f));

        let (h, gh) = random_conjugate(&mut rng, &g, 4);
        let composed = compose_witnesses(&fg, &gh, &f, &h).expect("transitive witness");
        assert!(composed.verify(&f, &h));
        let bound = fg.u.len() + gh.u.len() + 2;
        let found = are_conjugate(&f, &h, bound).expect("transitivity by search");
        assert!(found.verify(&f, &h));
    }

    // conjugate pairs compose to conjugate compositions
    for _ in 0..200 {
        let a = pick(&mut rng, &alphabets);
        let b = pick(&mut rng, &alphabets);
        let c = pick(&mut rng, &alphabets);
        let f = random_morphism(&mut rng, &a, &b, 3);
        let g = random_morphism(&mut rng, &b, &c, 3);
        let (f2, _wf) = random_conjugate(&mut rng, &f, 3);
        let (g2, wg) = random_conjugate(&mut rng, &g, 3);
        let gf = Morphism::compose(&g, &f).unwrap();
        let g2f2 = Morphism::compose(&g2, &f2).unwrap();
        let bound = wg.u.len() + gf.total_image_len() + g2f2.total_image_len() + 4;
        let witness = are_conjugate(&gf, &g2f2, bound).expect("compositions conjugate");
        assert!(witness.verify(&gf, &g2f2));
    }

    // compositions of class-P morphisms land in P'
    for _ in 0..200 {
        let a = pick(&mut rng, &alphabets);
        let b = pick(&mut rng, &alphabets);
        let c = pick(&mut rng, &alphabets);
        let f = random_class_p(&mut rng, &a, &b, 4);
        let g = random_class_p(&mut rng, &b, &c, 4);
        let gf = Morphism::compose(&g, &f).unwrap();
        let r = gf.classify(gf.total_image_len());
        assert!(r.p_prime_yes(), "P o P must classify P': {gf}");
        assert!(r.p_prime_witness.unwrap().verify(&gf));
    }

    // P_ret morphisms land in P'
    let mut produced = 0;
    while produced < 200 {
        let domain_size = rng.random_range(2..=3);
        let codomain = pick(&mut rng, &alphabets);
        let Some(f) = random_p_ret(&mut rng, domain_size, &codomain) else {
            continue;
        };
        let bound = f.total_image_len().max(8);
        let r = f.classify(bound);
        assert!(r.in_p_ret, "generated morphism must classify P_ret: {f}");
        assert!(r.p_prime_yes(), "P_ret must classify P': {f}");
        assert!(r.p_prime_witness.unwrap().verify(&f));
        produced += 1;
    }

    // extended-P morphisms land in P' and the left conjugator u = p works
    for _ in 0..200 {
        let a = pick(&mut rng, &alphabets);
        let b = pick(&mut rng, &alphabets);
        let p = random_palindrome(&mut rng, &b, 2);
        let images: Vec<Word> = (0..a.size())
            .map(|_| loop {
                let q = random_palindrome(&mut rng, &b, 4 - p.len());
                let img = q.concat(&p).unwrap();
                if !img.is_empty() {
                    return img;
                }
            })
            .collect();
        let f = Morphism::new(a.clone(), b.clone(), images.clone()).unwrap();
        let r = f.classify(f.total_image_len());
        assert!(r.p_prime_yes(), "extended P must classify P': {f}");
        // u = p satisfies p f(a) = (p q_a) p letter by letter
        let rotated: Vec<Word> = images
            .iter()
            .map(|img| {
                let q = img.strip_suffix(&p).unwrap();
                p.concat(&q).unwrap()
            })
            .collect();
        let rotated = Morphism::new(a.clone(), b.clone(), rotated).unwrap();
        let witness = ConjugacyWitness {
            u: p.clone(),
            side: Side::Left,
        };
        assert!(witness.verify(&f, &rotated));
    }

    pass(8, "algebraic property suites with zero counterexamples");
}

#[test]
fn criterion_09_end_to_end_decomposition() {
    for name in ["labbe", "tau"] {
        let y = spec(name);
        let cert = decompose_rich(&y, 12, 4096).unwrap();
        assert_eq!(cert.status, CertificateStatus::Complete, "{name}");
        let report = verify_certificate(&cert, 10000);
        assert!(report.all_passed, "{name}: {report:?}");

        // tamper with g: flip one letter
        let mut tampered = cert.clone();
        let mut images: Vec<Word> = tampered.g.images().to_vec();
        let mut letters = images[0].letters().to_vec();
        letters[0] = (letters[0] + 1) % tampered.g.codomain().size();
        images[0] = Word::from_letters(tampered.g.codomain().clone(), letters).unwrap();
        tampered.g = Morphism::new(
            tampered.g.domain().clone(),
            tampered.g.codomain().clone(),
            images,
        )
        .unwrap();
        let report = verify_certificate(&tampered, 4096);
        assert!(!report.check("prefix_match").unwrap().passed, "{name}");

        // replace h with a permutation morphism
        let mut tampered = cert.clone();
        let k = tampered.h.domain().size();
        let images: Vec<Word> = (0..k)
            .map(|a| Word::single(tampered.h.domain().clone(), (a + 1) % k).unwrap())
            .collect();
        tampered.h = Morphism::new(
            tampered.h.domain().clone(),
            tampered.h.domain().clone(),
            images,
        )
        .unwrap();
        let report = verify_certificate(&tampered, 4096);
        assert!(!report.check("h_primitive").unwrap().passed, "{name}");
    }
    pass(
        9,
        "complete certificates for labbe and tau; tampering detected",
    );
}

#[test]
fn criterion_10_finite_defect_route() {
    // plant a randomly generated P_ret morphism on top of the rich
    // derived-labbe word and recover the structure
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let base = spec("derived-labbe");
    let p_ret = loop {
        if let Some(f) = random_p_ret(&mut rng, 2, base.alphabet()) {
            let f = Morphism::new(
                base.inner().domain().clone(),
                base.alphabet().clone(),
                f.images().to_vec(),
            )
            .unwrap();
            break f;
        }
    };
    assert!(p_ret.classify(p_ret.total_image_len().max(8)).in_p_ret);

    let z = MorphicWordSpec::new(base.inner().clone(), base.seed(), Some(p_ret.clone())).unwrap();
    let cert = decompose_finite_defect(&z, 12, 4096, 64).unwrap();
    assert_eq!(cert.status, CertificateStatus::Complete);

    // the recovered factor is in P_ret
    let factor = &cert.chain[0];
    assert!(factor.classify(factor.total_image_len()).in_p_ret);

    // the recovered derived word is rich and the round trip matches at 4096
    assert!(cert.m >= 1);
    let x_prefix = cert.x.generate_prefix(4096);
    let mut derived = x_prefix.clone();
    for g_k in cert.chain[1..cert.m].iter().rev() {
        derived = g_k.apply(&derived).unwrap();
    }
    assert!(richness_check_word(&derived.prefix(4096)).is_rich());
    let image = factor.apply(&derived).unwrap();
    assert!(image.len() >= 4096);
    assert_eq!(image.prefix(4096), z.generate_prefix(4096));

    let report = verify_certificate(&cert, 4096);
    assert!(report.all_passed, "{report:?}");

    // Thue-Morse is refused by the finite-defect precondition
    let tm = spec("thue-morse");
    assert!(matches!(
        decompose_finite_defect(&tm, 8, 4096, 64),
        Err(Error::DefectNotStabilized { .. })
    ));
    pass(
        10,
        "finite-defect route recovers a P_ret factor over a rich word",
    );
}
