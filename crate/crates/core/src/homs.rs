//! Homomorphisms out of the extended mapping class group: puncture
//! permutation, the mod-2 abelianization, and the n = 4 quotient to PGL₂(ℤ).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Alphabet, Letter, Word};

/// Bijection of the punctures `{1 … n}`, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: u32) -> Self {
        Perm((0..n).collect())
    }

    /// From one-based images; `None` unless a bijection of `1..=len`.
    pub fn from_images(images: &[u32]) -> Option<Self> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        let mut out = Vec::with_capacity(images.len());
        for &i in images {
            if i == 0 || i > n || seen[(i - 1) as usize] {
                return None;
            }
            seen[(i - 1) as usize] = true;
            out.push(i - 1);
        }
        Some(Perm(out))
    }

    /// Image of the one-based point `p`.
    pub fn apply(&self, p: u32) -> u32 {
        self.0[(p - 1) as usize] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.0[p] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Action on punctures: `s_i` swaps `i` and `i+1`; `t` fixes every puncture.
pub fn perm_image(u: &Word) -> Result<Perm> {
    let n = braid_n(u)?;
    let mut images: Vec<u32> = (0..n).collect();
    // (p ∘ τ)(x) = p(τ(x)): swapping entries i-1, i
    for &l in u.letters() {
        if l.index() < n {
            images.swap((l.index() - 1) as usize, l.index() as usize);
        }
    }
    Ok(Perm(images))
}

fn braid_n(u: &Word) -> Result<u32> {
    match u.alphabet() {
        Alphabet::Braid { n } => Ok(n),
        other => Err(Error::AlphabetMismatch { left: Alphabet::Braid { n: 0 }, right: other }),
    }
}

/// Element of `(Z/2)²`: parity of σ-letters and parity of `t`-letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Vec {
    pub s: u8,
    pub t: u8,
}

impl std::ops::Add for Gf2Vec {
    type Output = Gf2Vec;

    fn add(self, other: Gf2Vec) -> Gf2Vec {
        Gf2Vec::new(self.s ^ other.s, self.t ^ other.t)
    }
}

impl Gf2Vec {
    pub const ZERO: Gf2Vec = Gf2Vec { s: 0, t: 0 };

    pub fn new(s: u8, t: u8) -> Self {
        Gf2Vec { s: s & 1, t: t & 1 }
    }

    pub fn is_zero(self) -> bool {
        self == Gf2Vec::ZERO
    }
}

impl fmt::Display for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

pub fn abelianization_image(u: &Word) -> Gf2Vec {
    let alphabet = u.alphabet();
    let t = u.letters().iter().filter(|l| alphabet.is_t(**l)).count();
    let s = u.len() - t;
    Gf2Vec::new((s % 2) as u8, (t % 2) as u8)
}

/// True iff the vectors span `(Z/2)²`.
pub fn span_gf2(vs: &[Gf2Vec]) -> bool {
    let nonzero: Vec<Gf2Vec> = vs.iter().copied().filter(|v| !v.is_zero()).collect();
    nonzero.iter().enumerate().any(|(i, a)| nonzero[i + 1..].iter().any(|b| a != b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }

    /// Inverse of a determinant ±1 matrix.
    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        assert!(det == 1 || det == -1, "matrix is not invertible over Z");
        Mat2::new(self.d * det, -self.b * det, -self.c * det, self.a * det)
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Mat2, y: &Mat2) -> Mat2 {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// A matrix up to global sign, stored with its first nonzero entry positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjMat2(Mat2);

impl ProjMat2 {
    pub fn new(m: Mat2) -> Self {
        let first = [m.a, m.b, m.c, m.d].into_iter().find(|&v| v != 0).unwrap_or(0);
        ProjMat2(if first < 0 { m.neg() } else { m })
    }

    pub fn representative(&self) -> Mat2 {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Mat2::IDENTITY
    }

    pub fn mul(&self, o: &ProjMat2) -> ProjMat2 {
        ProjMat2::new(self.0.mul(&o.0))
    }
}

impl fmt::Display for ProjMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.0)
    }
}

/// Image of `s1` and `s3` under the n = 4 quotient.
pub const PGL2_S1: Mat2 = Mat2::new(1, 1, 0, 1);
/// Image of `s2`.
pub const PGL2_S2: Mat2 = Mat2::new(1, 0, -1, 1);
/// Candidate images of `t`, tried in this order.
pub const PGL2_T_CANDIDATES: [Mat2; 2] = [Mat2::new(1, 0, 0, -1), Mat2::new(-1, 0, 0, 1)];

/// Generator assignment defining one homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assignment {
    /// Puncture permutation.
    Perm,
    /// `s_i ↦ (1,0)`, `t ↦ (0,1)`.
    Abelianization,
    /// n = 4 only: `s1, s3 ↦ [[1,1],[0,1]]`, `s2 ↦ [[1,0],[-1,1]]`, `t ↦` the given matrix.
    Pgl2 { t: Mat2 },
}

impl Assignment {
    /// The PGL₂(ℤ) assignment with the first `t` candidate that validates.
    pub fn pgl2_validated() -> Result<Assignment> {
        let p = Presentation::build(4, crate::presentation::Flavor::Extended)?;
        PGL2_T_CANDIDATES
            .into_iter()
            .map(|t| Assignment::Pgl2 { t })
            .find(|a| validate_hom(a, &p))
            .ok_or(Error::NoValidConvention(4))
    }
}

fn pgl2_letter(letter: Letter, t: &Mat2) -> Mat2 {
    let m = match letter.index() {
        1 | 3 => PGL2_S1,
        2 => PGL2_S2,
        _ => *t,
    };
    if letter.is_inverse() {
        m.inverse()
    } else {
        m
    }
}

/// Product of generator images under the n = 4 assignment with `t ↦ t_image`.
pub fn pgl2_image_with(u: &Word, t_image: &Mat2) -> Result<Mat2> {
    let n = braid_n(u)?;
    if n != 4 {
        return Err(Error::WrongN { expected: 4, got: n });
    }
    Ok(u.letters().iter().fold(Mat2::IDENTITY, |acc, &l| acc.mul(&pgl2_letter(l, t_image))))
}

/// Class in PGL₂(ℤ) of an n = 4 word, using the first validating `t` image.
pub fn pgl2_image(u: &Word) -> Result<ProjMat2> {
    Ok(ProjMat2::new(pgl2_image_with(u, &PGL2_T_CANDIDATES[0])?))
}

/// True iff every relator of `p` maps to the identity of the target.
pub fn validate_hom(assignment: &Assignment, p: &Presentation) -> bool {
    p.relators().iter().all(|r| match assignment {
        Assignment::Perm => perm_image(&r.word).map(|q| q.is_identity()).unwrap_or(false),
        Assignment::Abelianization => abelianization_image(&r.word).is_zero(),
        Assignment::Pgl2 { t } => pgl2_image_with(&r.word, t)
            .map(|m| ProjMat2::new(m).is_identity())
            .unwrap_or(false),
    })
}

/// Breadth-first search, in shortlex order over `s1 S1 s2 S2 s3 S3 t`, for
/// an n = 4 word of length at most `max_len` whose PGL₂(ℤ) class is `target`.
pub fn pgl2_preimage(target: &ProjMat2, t_image: &Mat2, max_len: usize) -> Option<Word> {
    let alphabet = Alphabet::Braid { n: 4 };
    let letters: Vec<Letter> = (1..=3)
        .flat_map(|i| [Letter::gen(i), Letter::inv(i)])
        .chain([Letter::gen(4)])
        .collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let start = ProjMat2::new(Mat2::IDENTITY);
    seen.insert(start);
    queue.push_back((start, Vec::<Letter>::new()));
    while let Some((m, word)) = queue.pop_front() {
        if m == *target {
            return Some(Word::from_valid(alphabet, word));
        }
        if word.len() == max_len {
            continue;
        }
        for &l in &letters {
            let next = m.mul(&ProjMat2::new(pgl2_letter(l, t_image)));
            if seen.insert(next) {
                let mut w = word.clone();
                w.push(l);
                queue.push_back((next, w));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{named_word, parse_expression, Flavor, NamedElement};

    #[test]
    fn perm_examples() {
        let n = 6;
        assert_eq!(perm_image(&parse_expression("s1", n).unwrap()).unwrap().to_string(), "(1 2)");
        assert!(perm_image(&parse_expression("t", n).unwrap()).unwrap().is_identity());
        let a = named_word(NamedElement::A, n).unwrap();
        assert_eq!(perm_image(&a).unwrap().to_string(), "(1 2 4 3 5 6)");
    }

    #[test]
    fn perm_a_matches_direct_conjugation() {
        // (3 4) ∘ (1 2 3 4 5 6) ∘ (3 4), composed by hand
        let swap = Perm::from_images(&[1, 2, 4, 3, 5, 6]).unwrap();
        let cycle = Perm::from_images(&[2, 3, 4, 5, 6, 1]).unwrap();
        let expected = swap.compose(&cycle).compose(&swap);
        let a = named_word(NamedElement::A, 6).unwrap();
        assert_eq!(perm_image(&a).unwrap(), expected);
    }

    #[test]
    fn abelianization_examples() {
        let n = 6;
        assert_eq!(abelianization_image(&named_word(NamedElement::A, n).unwrap()), Gf2Vec::new(1, 1));
        assert_eq!(abelianization_image(&named_word(NamedElement::B, n).unwrap()), Gf2Vec::new(0, 1));
        assert_eq!(abelianization_image(&Word::identity(Alphabet::Braid { n })), Gf2Vec::ZERO);
        assert_eq!(Gf2Vec::new(1, 1).to_string(), "(1,1)");
    }

    #[test]
    fn span_examples() {
        assert!(span_gf2(&[Gf2Vec::new(1, 1), Gf2Vec::new(0, 1)]));
        assert!(!span_gf2(&[Gf2Vec::new(1, 1)]));
        assert!(!span_gf2(&[]));
        assert!(!span_gf2(&[Gf2Vec::new(1, 0), Gf2Vec::new(1, 0), Gf2Vec::ZERO]));
    }

    #[test]
    fn pgl2_examples() {
        let s1 = parse_expression("s1", 4).unwrap();
        assert_eq!(pgl2_image(&s1).unwrap(), ProjMat2::new(PGL2_S1));
        let x = Mat2::new(0, 1, 1, 0);
        let y = Mat2::new(-1, 0, 0, 1);
        assert_eq!(Mat2::commutator(&x, &y), Mat2::IDENTITY.neg());
        let power = parse_expression("a0^4", 4).unwrap();
        assert!(pgl2_image(&power).unwrap().is_identity());
        assert_eq!(
            pgl2_image(&parse_expression("s1", 6).unwrap()),
            Err(Error::WrongN { expected: 4, got: 6 })
        );
        assert_eq!(ProjMat2::new(Mat2::IDENTITY.neg()), ProjMat2::new(Mat2::IDENTITY));
    }

    #[test]
    fn homs_validate() {
        let p6 = Presentation::build(6, Flavor::Extended).unwrap();
        assert!(validate_hom(&Assignment::Perm, &p6));
        assert!(validate_hom(&Assignment::Abelianization, &p6));
        let p4 = Presentation::build(4, Flavor::Extended).unwrap();
        assert!(validate_hom(&Assignment::pgl2_validated().unwrap(), &p4));
        // a wrong assignment is rejected
        assert!(!validate_hom(&Assignment::Pgl2 { t: Mat2::new(0, 1, 1, 0) }, &p4));
    }

    #[test]
    fn preimage_search_finds_x_and_y() {
        let t = PGL2_T_CANDIDATES[0];
        for target in [Mat2::new(0, 1, 1, 0), Mat2::new(-1, 0, 0, 1)] {
            let target = ProjMat2::new(target);
            let w = pgl2_preimage(&target, &t, 8).expect("preimage within 8 letters");
            assert_eq!(ProjMat2::new(pgl2_image_with(&w, &t).unwrap()), target);
        }
    }
}
