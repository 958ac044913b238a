//! Free-group word calculus.
//!
//! A [`Word`] is a freely reduced sequence of signed letters tagged with the
//! [`Alphabet`] it lives over. Two alphabets occur: the braid alphabet
//! `s1 … s(n-1), t` of the sphere mapping class groups, and the free basis
//! `x1 … x(rank)` of the fundamental group the action module works in.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// Half-twists `s1 … s(n-1)` plus the reflection `t`, which has id `n`.
    Braid { n: u32 },
    /// Free basis `x1 … x(rank)`.
    Free { rank: u32 },
}

impl Alphabet {
    /// Number of generators; valid letter indices are `1..=generator_count()`.
    pub fn generator_count(self) -> u32 {
        match self {
            Alphabet::Braid { n } => n,
            Alphabet::Free { rank } => rank,
        }
    }

    /// Index of the reflection letter, when the alphabet has one.
    pub fn t_index(self) -> Option<u32> {
        match self {
            Alphabet::Braid { n } => Some(n),
            Alphabet::Free { .. } => None,
        }
    }

    pub fn contains(self, letter: Letter) -> bool {
        (1..=self.generator_count()).contains(&letter.index())
    }

    pub fn is_t(self, letter: Letter) -> bool {
        self.t_index() == Some(letter.index())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Braid { n } => write!(f, "braid alphabet (n={n})"),
            Alphabet::Free { rank } => write!(f, "free basis (rank {rank})"),
        }
    }
}

/// A generator or its inverse, stored as a nonzero signed index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: u32, inverse: bool) -> Self {
        assert!(index > 0 && index <= i32::MAX as u32, "letter index out of range");
        let i = index as i32;
        Letter(if inverse { -i } else { i })
    }

    pub fn gen(index: u32) -> Self {
        Letter::new(index, false)
    }

    pub fn inv(index: u32) -> Self {
        Letter::new(index, true)
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }
}

/// Appends `next` to a reduced buffer, cancelling against the tail.
#[inline]
pub(crate) fn push_reduced(buf: &mut Vec<Letter>, next: Letter) {
    if buf.last() == Some(&next.inverse()) {
        buf.pop();
    } else {
        buf.push(next);
    }
}

pub(crate) fn reduce_letters<I: IntoIterator<Item = Letter>>(raw: I) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in raw {
        push_reduced(&mut out, l);
    }
    out
}

pub(crate) fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Freely reduced word over a fixed alphabet. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(alphabet: Alphabet) -> Self {
        Word { alphabet, letters: Vec::new() }
    }

    /// Validates every letter against `alphabet` and freely reduces.
    pub fn reduce<I: IntoIterator<Item = Letter>>(alphabet: Alphabet, raw: I) -> Result<Self> {
        let mut letters = Vec::new();
        for l in raw {
            if !alphabet.contains(l) {
                return Err(Error::InvalidLetter { index: l.index(), alphabet });
            }
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet, letters })
    }

    /// Caller guarantees the letters are valid for `alphabet`.
    pub(crate) fn from_valid(alphabet: Alphabet, raw: Vec<Letter>) -> Self {
        debug_assert!(raw.iter().all(|l| alphabet.contains(*l)));
        let letters = if raw.windows(2).any(|w| w[0] == w[1].inverse()) {
            reduce_letters(raw)
        } else {
            raw
        };
        Word { alphabet, letters }
    }

    pub fn letter(alphabet: Alphabet, letter: Letter) -> Result<Self> {
        Word::reduce(alphabet, [letter])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet, right: other.alphabet });
        }
        Ok(())
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet: self.alphabet, letters })
    }

    /// Product of a sequence of words over one alphabet.
    pub fn product<'a, I>(alphabet: Alphabet, words: I) -> Result<Word>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut acc = Word::identity(alphabet);
        for w in words {
            acc = acc.concat(w)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Word {
        Word { alphabet: self.alphabet, letters: invert_letters(&self.letters) }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word { alphabet: self.alphabet, letters }
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Word) -> Result<Word> {
        self.concat(other)?.concat(&self.inverse())
    }

    /// Splits `self` as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced. Returns `(core, conjugator)`.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let (core, conj) = cyclic_split(&self.letters);
        (
            Word { alphabet: self.alphabet, letters: core.to_vec() },
            Word { alphabet: self.alphabet, letters: conj.to_vec() },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) => self.letters.len() == 1 || *a != b.inverse(),
            _ => true,
        }
    }

    /// Finds `w` with `w · v · w⁻¹ = u`, or `None` when `u` and `v` are not
    /// conjugate. Among solutions the smallest rotation of the cyclic core is
    /// used, so for a basis letter `v` the result carries no trailing power
    /// of `v`.
    pub fn solve_conjugacy(u: &Word, v: &Word) -> Result<Option<Word>> {
        u.check_same(v)?;
        Ok(solve_conjugacy_letters(&u.letters, &v.letters)
            .map(|letters| Word { alphabet: u.alphabet, letters }))
    }

    /// Applies the endomorphism sending generator `g` to `images[g]`.
    pub fn substitute(&self, target: Alphabet, images: &BTreeMap<u32, Word>) -> Result<Word> {
        let mut letters = Vec::new();
        for &l in &self.letters {
            let img = images.get(&l.index()).ok_or(Error::MissingImage(l.index()))?;
            if img.alphabet != target {
                return Err(Error::AlphabetMismatch { left: target, right: img.alphabet });
            }
            if l.is_inverse() {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut letters, m.inverse());
                }
            } else {
                for &m in &img.letters {
                    push_reduced(&mut letters, m);
                }
            }
        }
        Ok(Word { alphabet: target, letters })
    }

    /// Parses the whitespace-separated token grammar: `s<i>`/`S<i>` and
    /// `t`/`T` over the braid alphabet, `x<i>`/`X<i>` over a free basis.
    /// Uppercase is the inverse, except that `T` is accepted as an alias of `t`.
    /// The token `e` is the identity.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace().filter(|&tok| tok != "e") {
            let l = parse_letter(tok, alphabet)?;
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet, letters })
    }
}

pub(crate) fn parse_letter(tok: &str, alphabet: Alphabet) -> Result<Letter> {
    let err = |reason: &str| Error::Parse { token: tok.to_string(), reason: reason.to_string() };
    let mut chars = tok.chars();
    let head = chars.next().ok_or_else(|| err("empty token"))?;
    let rest = chars.as_str();
    match (alphabet, head) {
        (Alphabet::Braid { n }, 't' | 'T') if rest.is_empty() => Ok(Letter::gen(n)),
        (Alphabet::Braid { n }, 's' | 'S') | (Alphabet::Free { rank: n }, 'x' | 'X') => {
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("expected a generator index"));
            }
            let index: u32 = rest.parse().map_err(|_| err("index overflow"))?;
            // braid alphabet: s1..s(n-1); free basis: x1..x(rank)
            let limit = match alphabet {
                Alphabet::Braid { .. } => n - 1,
                Alphabet::Free { .. } => n,
            };
            if index == 0 || index > limit {
                return Err(err(&format!("index must lie in 1..={limit}")));
            }
            Ok(Letter::new(index, head.is_ascii_uppercase()))
        }
        _ => Err(err("unknown letter")),
    }
}

fn cyclic_split(letters: &[Letter]) -> (&[Letter], &[Letter]) {
    let len = letters.len();
    let mut k = 0;
    while 2 * k + 1 < len && letters[k] == letters[len - 1 - k].inverse() {
        k += 1;
    }
    (&letters[k..len - k], &letters[..k])
}

pub(crate) fn solve_conjugacy_letters(u: &[Letter], v: &[Letter]) -> Option<Vec<Letter>> {
    let (ku, cu) = cyclic_split(u);
    let (kv, cv) = cyclic_split(v);
    if ku.len() != kv.len() {
        return None;
    }
    if ku.is_empty() {
        return Some(Vec::new());
    }
    let len = kv.len();
    // ku = p⁻¹ · kv · p where kv = p·q and ku = q·p
    let r = (0..len).find(|&r| ku[..len - r] == kv[r..] && ku[len - r..] == kv[..r])?;
    let mut w = Vec::with_capacity(cu.len() + r + cv.len());
    for &l in cu {
        push_reduced(&mut w, l);
    }
    for &l in kv[..r].iter().rev() {
        push_reduced(&mut w, l.inverse());
    }
    for &l in cv.iter().rev() {
        push_reduced(&mut w, l.inverse());
    }
    Some(w)
}

pub(crate) fn fmt_letter(f: &mut fmt::Formatter<'_>, alphabet: Alphabet, l: Letter) -> fmt::Result {
    match alphabet {
        Alphabet::Braid { n } if l.index() == n => f.write_str(if l.is_inverse() { "T" } else { "t" }),
        Alphabet::Braid { .. } => {
            write!(f, "{}{}", if l.is_inverse() { 'S' } else { 's' }, l.index())
        }
        Alphabet::Free { .. } => {
            write!(f, "{}{}", if l.is_inverse() { 'X' } else { 'x' }, l.index())
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            fmt_letter(f, self.alphabet, l)?;
        }
        Ok(())
    }
}
