use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checker::Checker;
use super::{CheckResult, HarnessConfig};
use crate::homs::{abelianization_image, perm_image};
use crate::presentation::{Flavor, Presentation};
use crate::words::{Alphabet, Letter, Word};
use crate::Result;

/// Longest random word drawn.
pub const SAMPLE_MAX_LEN: usize = 12;

/// Uniform random word of length `0..=max_len` over the braid alphabet.
pub fn random_word<R: Rng>(rng: &mut R, n: u32, max_len: usize) -> Word {
    let alphabet = Alphabet::Braid { n };
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| {
        let i = rng.gen_range(1..=n);
        if i == n {
            Letter::gen(n)
        } else {
            Letter::new(i, rng.gen_bool(0.5))
        }
    });
    Word::reduce(alphabet, letters).expect("letters drawn from the alphabet")
}

/// Seeded property checks at `n`: half the pairs are planted equal by
/// inserting a conjugated relator, the rest are random.
pub fn verify_sampling(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.sample"), cfg)?;
    let model = c.model().clone();
    let relators = Presentation::build(n, Flavor::Extended)?.relators().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs = cfg.sample_pairs;

    let start = Instant::now();
    let mut sample = Vec::with_capacity(pairs);
    for k in 0..pairs {
        let u = random_word(&mut rng, n, SAMPLE_MAX_LEN);
        let v = if k % 2 == 0 {
            let r = &relators[rng.gen_range(0..relators.len())].word;
            let g = random_word(&mut rng, n, 4);
            let cut = rng.gen_range(0..=u.len());
            let head = Word::reduce(u.alphabet(), u.letters()[..cut].iter().copied())?;
            let tail = Word::reduce(u.alphabet(), u.letters()[cut..].iter().copied())?;
            Word::product(u.alphabet(), [&head, &g.conjugate(r)?, &tail])?
        } else {
            random_word(&mut rng, n, SAMPLE_MAX_LEN)
        };
        let eq = model.equal_in_group(&u, &v)?;
        sample.push((u, v, k % 2 == 0, eq));
    }
    let gen_ms = start;

    let planted_ok = sample.iter().filter(|s| s.2).all(|s| s.3);
    let planted = sample.iter().filter(|s| s.2).count();
    c.boolean("planted", format!("{planted} planted pairs are equal"), planted_ok, None, gen_ms);

    let start = Instant::now();
    let mut violation = None;
    for (u, v, _, eq) in &sample {
        if *eq && (perm_image(u)? != perm_image(v)? || abelianization_image(u) != abelianization_image(v)) {
            violation = Some(format!("{u} vs {v}"));
            break;
        }
    }
    let equal = sample.iter().filter(|s| s.3).count();
    let statement = format!("{pairs} pairs: equality implies equal perm and psi' images");
    c.boolean("soundness", statement, violation.is_none(), violation.or(Some(format!("{equal} equal pairs"))), start);

    let start = Instant::now();
    let mut ok = true;
    for (u, v, _, eq) in &sample {
        ok &= model.equal_in_group(u, u)?;
        ok &= model.equal_in_group(v, u)? == *eq;
    }
    c.boolean("equivalence", format!("{pairs} pairs: equality is reflexive and symmetric"), ok, None, start);

    let start = Instant::now();
    let mut ok = true;
    for w in sample.windows(2) {
        let (u, v) = (&w[0].1, &w[1].0);
        let (u0, v1) = (&w[0].0, &w[1].1);
        if w[0].3 && w[1].3 && model.equal_in_group(v, u)? {
            ok &= model.equal_in_group(u0, v1)?;
        }
    }
    c.boolean("transitive", "chained equal pairs stay equal".into(), ok, None, start);

    let start = Instant::now();
    let mut ok = true;
    let hom_pairs = pairs / 2;
    for _ in 0..hom_pairs {
        let u = random_word(&mut rng, n, SAMPLE_MAX_LEN);
        let v = random_word(&mut rng, n, SAMPLE_MAX_LEN);
        let lhs = model.word_to_aut(&u.concat(&v)?)?;
        ok &= lhs == model.word_to_aut(&u)?.compose(&model.word_to_aut(&v)?);
    }
    c.boolean("homomorphism", format!("{hom_pairs} pairs: aut(u v) = aut(u) aut(v)"), ok, None, start);
    Ok(c.out)
}
