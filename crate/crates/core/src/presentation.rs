//! Presentations of the (extended) mapping class group of the n-punctured
//! sphere, the named elements used throughout the generation arguments, and
//! the normal form coming from `Mod± = Mod ⋊ Z/2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Orientation-preserving classes, generated by the half-twists.
    Oriented,
    /// All classes; adds the reflection `t`.
    Extended,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Oriented => "oriented",
            Flavor::Extended => "extended",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oriented" => Ok(Flavor::Oriented),
            "extended" => Ok(Flavor::Extended),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "flavor must be `oriented` or `extended`".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    /// Stable label such as `braid(2,3)` or `(t s4)^2`.
    pub id: String,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n: u32,
    flavor: Flavor,
    relators: Vec<Relator>,
}

pub fn sigma(n: u32, i: u32) -> Word {
    Word::from_valid(Alphabet::Braid { n }, vec![Letter::gen(i)])
}

pub fn sigma_inv(n: u32, i: u32) -> Word {
    Word::from_valid(Alphabet::Braid { n }, vec![Letter::inv(i)])
}

pub fn reflection(n: u32) -> Word {
    Word::from_valid(Alphabet::Braid { n }, vec![Letter::gen(n)])
}

fn letters_word(n: u32, letters: impl IntoIterator<Item = Letter>) -> Word {
    Word::from_valid(Alphabet::Braid { n }, letters.into_iter().collect())
}

/// `s_from s_(from+1) … s_to`, empty when `from > to`.
fn ascending(n: u32, from: u32, to: u32) -> Word {
    letters_word(n, (from..=to).map(Letter::gen))
}

/// `s_from s_(from-1) … s_to`, empty when `from < to`.
fn descending(n: u32, from: u32, to: u32) -> Word {
    letters_word(n, (to..=from).rev().map(Letter::gen))
}

fn check_n(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidN(n));
    }
    Ok(())
}

impl Presentation {
    /// Builds the relator list: far commutations, braid relations, the
    /// sphere relator `s1…s(n-1)s(n-1)…s1`, the power `(s1…s(n-1))^n`, and
    /// for the extended flavor `t^2` and `(t s_i)^2`.
    pub fn build(n: u32, flavor: Flavor) -> Result<Self> {
        check_n(n)?;
        let mut relators = Vec::new();
        let s = |i| Letter::gen(i);
        let si = |i| Letter::inv(i);
        for i in 1..n {
            for j in (i + 2)..n {
                relators.push(Relator {
                    id: format!("comm({i},{j})"),
                    word: letters_word(n, [s(i), s(j), si(i), si(j)]),
                });
            }
        }
        for i in 1..n - 1 {
            let j = i + 1;
            relators.push(Relator {
                id: format!("braid({i},{j})"),
                word: letters_word(n, [s(i), s(j), s(i), si(j), si(i), si(j)]),
            });
        }
        let a0 = ascending(n, 1, n - 1);
        relators.push(Relator {
            id: "sphere".into(),
            word: a0.concat(&descending(n, n - 1, 1))?,
        });
        relators.push(Relator { id: "a0^n".into(), word: a0.pow(n as i64) });
        if flavor == Flavor::Extended {
            let t = Letter::gen(n);
            relators.push(Relator { id: "t^2".into(), word: letters_word(n, [t, t]) });
            for i in 1..n {
                relators.push(Relator {
                    id: format!("(t s{i})^2"),
                    word: letters_word(n, [t, s(i), t, s(i)]),
                });
            }
        }
        Ok(Presentation { n, flavor, relators })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Braid { n: self.n }
    }

    /// Generator letters in column order: `s1 … s(n-1)` then `t` if present.
    pub fn generators(&self) -> Vec<Letter> {
        let count = match self.flavor {
            Flavor::Oriented => self.n - 1,
            Flavor::Extended => self.n,
        };
        (1..=count).map(Letter::gen).collect()
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn with_relators(&self, relators: Vec<Relator>) -> Self {
        Presentation { n: self.n, flavor: self.flavor, relators }
    }

    /// Text dump: a header line, then one relator per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} flavor={}\n", self.n, self.flavor);
        for r in &self.relators {
            out.push_str(&r.word.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedElement {
    Alpha0,
    Alpha1,
    Alpha2,
    A,
    B,
    Gamma(u32),
    Delta(u32),
    Y,
    Z,
    W,
    C,
    Phi,
}

impl NamedElement {
    pub fn token(self) -> String {
        match self {
            NamedElement::Alpha0 => "a0".into(),
            NamedElement::Alpha1 => "a1".into(),
            NamedElement::Alpha2 => "a2".into(),
            NamedElement::A => "a".into(),
            NamedElement::B => "b".into(),
            NamedElement::Gamma(k) => format!("g{k}"),
            NamedElement::Delta(k) => format!("d{k}"),
            NamedElement::Y => "y".into(),
            NamedElement::Z => "z".into(),
            NamedElement::W => "w".into(),
            NamedElement::C => "c".into(),
            NamedElement::Phi => "phi".into(),
        }
    }

    fn from_token(tok: &str) -> Option<NamedElement> {
        let indexed = |prefix: char| {
            tok.strip_prefix(prefix)
                .filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|r| r.parse::<u32>().ok())
        };
        Some(match tok {
            "a0" => NamedElement::Alpha0,
            "a1" => NamedElement::Alpha1,
            "a2" => NamedElement::Alpha2,
            "a" => NamedElement::A,
            "b" => NamedElement::B,
            "y" => NamedElement::Y,
            "z" => NamedElement::Z,
            "w" => NamedElement::W,
            "c" => NamedElement::C,
            "phi" => NamedElement::Phi,
            _ => {
                if let Some(k) = indexed('g') {
                    NamedElement::Gamma(k)
                } else {
                    let k = indexed('d')?;
                    NamedElement::Delta(k)
                }
            }
        })
    }
}

fn invalid(name: NamedElement, n: u32, reason: &str) -> Error {
    Error::InvalidName { name: name.token(), n, reason: reason.to_string() }
}

/// Reduces a subscript into `1..n`; callers guarantee it is nonzero mod n.
fn mod_index(i: u32, n: u32) -> u32 {
    let r = i % n;
    assert!(r != 0, "subscript {i} vanishes modulo {n}");
    r
}

fn require_even_at_least(name: NamedElement, n: u32, min: u32) -> Result<()> {
    if !n.is_multiple_of(2) || n < min {
        return Err(invalid(name, n, &format!("needs even n >= {min}")));
    }
    Ok(())
}

/// Defining σ/t-word of a named element.
pub fn named_word(name: NamedElement, n: u32) -> Result<Word> {
    check_n(n)?;
    let alphabet = Alphabet::Braid { n };
    let odd_run = |upto: u32| letters_word(n, (1..=upto).step_by(2).map(Letter::gen));
    let word = match name {
        NamedElement::Alpha0 => ascending(n, 1, n - 1),
        NamedElement::Alpha1 => ascending(n, 1, n - 2),
        NamedElement::Alpha2 => {
            // a0 · S(n-1) · s(n-2), reducing to s1…s(n-3) s(n-2)^2
            let w = named_word(NamedElement::Alpha0, n)?
                .concat(&sigma_inv(n, n - 1))?
                .concat(&sigma(n, n - 2))?;
            debug_assert_eq!(w, ascending(n, 1, n - 3).concat(&sigma(n, n - 2).pow(2))?);
            w
        }
        NamedElement::A => {
            if n < 4 {
                return Err(invalid(name, n, "needs n >= 4"));
            }
            Word::product(
                alphabet,
                [
                    &sigma(n, n - 3),
                    &reflection(n),
                    &named_word(NamedElement::Alpha0, n)?,
                    &sigma_inv(n, n - 3),
                ],
            )?
        }
        NamedElement::B => {
            if n < 4 {
                return Err(invalid(name, n, "needs n >= 4"));
            }
            Word::product(
                alphabet,
                [&reflection(n), &sigma_inv(n, n - 1), &named_word(NamedElement::Alpha2, n)?],
            )?
        }
        NamedElement::Gamma(k) => {
            require_even_at_least(name, n, 6)?;
            if k % 2 == 0 || k == 0 || k >= n {
                return Err(invalid(name, n, "index must be odd and in 1..n"));
            }
            letters_word(
                n,
                [
                    Letter::gen(mod_index(k, n)),
                    Letter::gen(mod_index(k + 2, n)),
                    Letter::inv(mod_index(k + 4, n)),
                ],
            )
        }
        NamedElement::Delta(k) => {
            if n < 6 || k == 0 || k > n - 5 {
                return Err(invalid(name, n, "index must lie in 1..=n-5"));
            }
            letters_word(n, [Letter::gen(k), Letter::gen(k + 1), Letter::gen(k + 3)])
        }
        NamedElement::Y => {
            require_even_at_least(name, n, 4)?;
            odd_run(n - 1)
        }
        NamedElement::Z => {
            require_even_at_least(name, n, 6)?;
            odd_run(n - 5).concat(&sigma(n, n - 2))?
        }
        NamedElement::W => {
            require_even_at_least(name, n, 6)?;
            sigma_inv(n, n - 2).concat(&sigma(n, 1))?
        }
        NamedElement::C => {
            require_even_at_least(name, n, 6)?;
            sigma_inv(n, n - 1).concat(&sigma(n, 1))?
        }
        NamedElement::Phi => {
            // positive half-twist on strands 1..n-1: s1 (s2 s1) (s3 s2 s1) … (s(n-2) … s1)
            let mut letters = Vec::new();
            for top in 1..=n - 2 {
                letters.extend((1..=top).rev().map(Letter::gen));
            }
            letters_word(n, letters)
        }
    };
    Ok(word)
}

/// Defining expressions of `w` and `c` in terms of the other named elements:
/// `w = z⁻¹ · y · γ(n-3)⁻¹` and `c = a⁻¹ b · w · b⁻¹ a`. Other names return
/// their plain word.
pub fn named_definition(name: NamedElement, n: u32) -> Result<Word> {
    let alphabet = Alphabet::Braid { n };
    match name {
        NamedElement::W => {
            require_even_at_least(name, n, 6)?;
            Word::product(
                alphabet,
                [
                    &named_word(NamedElement::Z, n)?.inverse(),
                    &named_word(NamedElement::Y, n)?,
                    &named_word(NamedElement::Gamma(n - 3), n)?.inverse(),
                ],
            )
        }
        NamedElement::C => {
            require_even_at_least(name, n, 6)?;
            let a = named_word(NamedElement::A, n)?;
            let b = named_word(NamedElement::B, n)?;
            let ab = a.inverse().concat(&b)?;
            ab.conjugate(&named_definition(NamedElement::W, n)?)
        }
        other => named_word(other, n),
    }
}

/// Parses a word expression: whitespace-separated tokens that are either
/// letters (`s3`, `S3`, `t`) or named elements (`a0 a1 a2 a b y z w c phi`,
/// `g<k>`, `d<k>`), each with an optional `^<int>` exponent such as `^-1`.
/// Named elements are expanded here, so the result is a plain σ/t word.
pub fn parse_expression(text: &str, n: u32) -> Result<Word> {
    check_n(n)?;
    let alphabet = Alphabet::Braid { n };
    let mut acc = Word::identity(alphabet);
    for tok in text.split_whitespace() {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => {
                let e: i64 = e.parse().map_err(|_| Error::Parse {
                    token: tok.to_string(),
                    reason: "exponent must be an integer".into(),
                })?;
                (b, e)
            }
            None => (tok, 1),
        };
        let word = match NamedElement::from_token(base) {
            Some(name) => named_word(name, n).map_err(|e| Error::Parse {
                token: tok.to_string(),
                reason: e.to_string(),
            })?,
            None => Word::letter(alphabet, crate::words::parse_letter(base, alphabet)?)?,
        };
        acc = acc.concat(&word.pow(exp))?;
    }
    Ok(acc)
}

/// Pushes every `t` to the front using `t s_i = s_i⁻¹ t`, returning the
/// parity of `t`-letters and the remaining σ-word. A σ-letter is inverted
/// iff an odd number of `t`-letters stand to its right.
pub fn t_normal_form(u: &Word) -> (u8, Word) {
    let alphabet = u.alphabet();
    let mut parity = 0u8;
    let mut rev = Vec::with_capacity(u.len());
    for &l in u.letters().iter().rev() {
        if alphabet.is_t(l) {
            parity ^= 1;
        } else if parity == 1 {
            rev.push(l.inverse());
        } else {
            rev.push(l);
        }
    }
    rev.reverse();
    (parity, Word::from_valid(alphabet, rev))
}
