//! Word-problem oracle for the extended mapping class group of the
//! n-punctured sphere.
//!
//! Mapping classes act on `π₁(Σ₀,ₙ) = ⟨x1 … xn | x1⋯xn = 1⟩`; eliminating
//! `xn = (x1⋯x(n-1))⁻¹` makes it free of rank `n-1`. Two words are equal in
//! the group iff the automorphism of `u·v⁻¹` is inner. This relies on the
//! action being faithful on outer automorphisms (Dehn–Nielsen–Baer for
//! punctured spheres, n ≥ 3); the harness cross-checks it against coset
//! enumeration and the puncture permutation.
//!
//! Neither the handedness of the half-twist action nor the formula for the
//! reflection is fixed a priori. [`ActionModel::new`] tries the candidate
//! conventions in a fixed order and keeps the first one under which every
//! relator of the extended presentation acts as an inner automorphism.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Flavor, Presentation};
use crate::words::{push_reduced, reduce_letters, solve_conjugacy_letters, Alphabet, Letter, Word};

/// Default bound on the total image length of one automorphism.
pub const DEFAULT_IMAGE_GUARD: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaConvention {
    /// `x_i ↦ x_i x_(i+1) x_i⁻¹`, `x_(i+1) ↦ x_i`.
    Standard,
    /// `x_i ↦ x_(i+1)`, `x_(i+1) ↦ x_(i+1)⁻¹ x_i x_(i+1)`.
    Mirrored,
}

/// Conjugator `c_i` in the reflection `x_i ↦ c_i x_i⁻¹ c_i⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReflectionConjugator {
    /// `x1 ⋯ x(i-1)`
    Prefix,
    /// `x(i-1) ⋯ x1`
    PrefixReversed,
    /// `(x1 ⋯ x(i-1))⁻¹`
    PrefixInverse,
    /// `x(i+1) ⋯ x(n-1)`
    Suffix,
    /// `x(n-1) ⋯ x(i+1)`
    SuffixReversed,
    /// `(x(i+1) ⋯ x(n-1))⁻¹`
    SuffixInverse,
    Empty,
}

impl ReflectionConjugator {
    pub const CANDIDATES: [ReflectionConjugator; 7] = [
        ReflectionConjugator::Prefix,
        ReflectionConjugator::PrefixReversed,
        ReflectionConjugator::PrefixInverse,
        ReflectionConjugator::Suffix,
        ReflectionConjugator::SuffixReversed,
        ReflectionConjugator::SuffixInverse,
        ReflectionConjugator::Empty,
    ];

    fn conjugator(self, i: u32, rank: u32) -> Vec<Letter> {
        let prefix = (1..i).map(Letter::gen);
        let suffix = (i + 1..=rank).map(Letter::gen);
        match self {
            ReflectionConjugator::Prefix => prefix.collect(),
            ReflectionConjugator::PrefixReversed => prefix.rev().collect(),
            ReflectionConjugator::PrefixInverse => prefix.rev().map(Letter::inverse).collect(),
            ReflectionConjugator::Suffix => suffix.collect(),
            ReflectionConjugator::SuffixReversed => suffix.rev().collect(),
            ReflectionConjugator::SuffixInverse => suffix.rev().map(Letter::inverse).collect(),
            ReflectionConjugator::Empty => Vec::new(),
        }
    }
}

impl fmt::Display for SigmaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaConvention::Standard => "standard",
            SigmaConvention::Mirrored => "mirrored",
        })
    }
}

impl fmt::Display for ReflectionConjugator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok();
        f.write_str(s.as_ref().and_then(|v| v.as_str()).unwrap_or("?"))
    }
}

/// Endomorphism of the free group `F(x1 … x(rank))`, given by basis images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAut {
    rank: u32,
    images: Vec<Vec<Letter>>,
}

impl FreeAut {
    pub fn identity(rank: u32) -> Self {
        FreeAut { rank, images: (1..=rank).map(|i| vec![Letter::gen(i)]).collect() }
    }

    /// Builds from raw images; whether the map is invertible is not checked.
    pub fn from_images(rank: u32, images: Vec<Word>) -> Result<Self> {
        let alphabet = Alphabet::Free { rank };
        if images.len() != rank as usize {
            return Err(Error::MissingImage(images.len() as u32 + 1));
        }
        let mut out = Vec::with_capacity(images.len());
        for w in images {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet, right: w.alphabet() });
            }
            out.push(w.letters().to_vec());
        }
        Ok(FreeAut { rank, images: out })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Free { rank: self.rank }
    }

    /// Image of the basis letter `x_i`, `1 ≤ i ≤ rank`.
    pub fn image(&self, i: u32) -> Word {
        Word::from_valid(self.alphabet(), self.images[(i - 1) as usize].clone())
    }

    pub fn images(&self) -> Vec<Word> {
        (1..=self.rank).map(|i| self.image(i)).collect()
    }

    pub fn total_len(&self) -> usize {
        self.images.iter().map(Vec::len).sum()
    }

    fn substitute_into(&self, out: &mut Vec<Letter>, word: &[Letter]) {
        for &l in word {
            let img = &self.images[(l.index() - 1) as usize];
            if l.is_inverse() {
                for &m in img.iter().rev() {
                    push_reduced(out, m.inverse());
                }
            } else {
                for &m in img {
                    push_reduced(out, m);
                }
            }
        }
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        if word.alphabet() != self.alphabet() {
            return Err(Error::AlphabetMismatch { left: self.alphabet(), right: word.alphabet() });
        }
        let mut out = Vec::new();
        self.substitute_into(&mut out, word.letters());
        Ok(Word::from_valid(self.alphabet(), out))
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &FreeAut) -> FreeAut {
        assert_eq!(self.rank, other.rank, "rank mismatch in composition");
        let images = other
            .images
            .iter()
            .map(|img| {
                let mut out = Vec::new();
                self.substitute_into(&mut out, img);
                out
            })
            .collect();
        FreeAut { rank: self.rank, images }
    }

    /// Post-composes with conjugation by `c`: `x ↦ c · self(x) · c⁻¹`.
    pub fn conjugated_by(&self, c: &[Letter]) -> FreeAut {
        let images = self
            .images
            .iter()
            .map(|img| {
                let mut out = Vec::with_capacity(img.len() + 2 * c.len());
                for &l in c {
                    push_reduced(&mut out, l);
                }
                for &l in img {
                    push_reduced(&mut out, l);
                }
                for &l in c.iter().rev() {
                    push_reduced(&mut out, l.inverse());
                }
                out
            })
            .collect();
        FreeAut { rank: self.rank, images }
    }

    /// Representative of the same outer class whose image of `x1` is
    /// cyclically reduced.
    fn outer_normalized(self) -> FreeAut {
        let first = &self.images[0];
        let len = first.len();
        let mut k = 0;
        while 2 * k + 1 < len && first[k] == first[len - 1 - k].inverse() {
            k += 1;
        }
        if k == 0 {
            return self;
        }
        let conj: Vec<Letter> = first[..k].iter().rev().map(|l| l.inverse()).collect();
        self.conjugated_by(&conj)
    }

    /// Canonical representative of the outer class: two automorphisms differ
    /// by an inner automorphism iff their canonical forms are equal.
    ///
    /// The image of `x1` becomes the least rotation of its cyclic reduction;
    /// the remaining freedom, conjugation by powers of that word's root, is
    /// fixed by minimizing the images in (total length, lexicographic) order.
    pub fn canonical_outer(&self) -> FreeAut {
        let base = self.clone().outer_normalized();
        let core = base.images[0].clone();
        let len = core.len();
        if len == 0 {
            return base;
        }
        let rotation = |r: usize| core[r..].iter().chain(&core[..r]).copied().collect::<Vec<_>>();
        let r = (0..len).min_by_key(|&r| rotation(r)).expect("nonempty core");
        let p_inv: Vec<Letter> = core[..r].iter().rev().map(|l| l.inverse()).collect();
        let rotated = base.conjugated_by(&p_inv);
        if self.rank < 2 {
            return rotated;
        }
        let word = &rotated.images[0];
        let period = (1..=len)
            .find(|&d| len.is_multiple_of(d) && (0..len).all(|i| word[i] == word[i % d]))
            .expect("len is a period");
        let root = word[..period].to_vec();
        let root_inv: Vec<Letter> = root.iter().rev().map(|l| l.inverse()).collect();
        let bound = rotated.total_len() / period + 2;
        let mut best = rotated.clone();
        let (mut up, mut down) = (rotated.clone(), rotated);
        for _ in 0..bound {
            up = up.conjugated_by(&root);
            down = down.conjugated_by(&root_inv);
            for cand in [&up, &down] {
                if (cand.total_len(), &cand.images) < (best.total_len(), &best.images) {
                    best = cand.clone();
                }
            }
        }
        best
    }

    /// Returns `w` with `self(x_i) = w x_i w⁻¹` for every basis letter, if
    /// `self` is inner.
    ///
    /// Solving the conjugacy equation on `x1` pins `w` down to the coset
    /// `c·⟨x1⟩`; the exponent of `x1` is read off the image of `x2` and then
    /// verified on every remaining letter.
    pub fn is_inner(&self) -> Option<Word> {
        let x1 = Letter::gen(1);
        let c = solve_conjugacy_letters(&self.images[0], &[x1])?;
        // the conjugacy solution certifies images[0] = c x1 c⁻¹; the x1-power
        // ambiguity is fixed by x2 (rank >= 2 always holds for n >= 3)
        let mut w = c.clone();
        if self.rank >= 2 {
            let mut v = Vec::new();
            for &l in c.iter().rev() {
                push_reduced(&mut v, l.inverse());
            }
            for &l in &self.images[1] {
                push_reduced(&mut v, l);
            }
            for &l in &c {
                push_reduced(&mut v, l);
            }
            // v must be x1^k x2 x1^-k
            let lead = v.iter().take_while(|l| l.index() == 1).count();
            let k: i64 = v[..lead].iter().map(|l| l.sign() as i64).sum();
            for _ in 0..k.unsigned_abs() {
                push_reduced(&mut w, if k > 0 { x1 } else { x1.inverse() });
            }
        }
        let inner = FreeAut::identity(self.rank).conjugated_by(&w);
        if inner.images == self.images {
            Some(Word::from_valid(self.alphabet(), w))
        } else {
            None
        }
    }
}

/// Per-generator action, storing only basis letters whose image changes.
#[derive(Clone, Debug)]
struct GenAction {
    changes: Vec<(usize, Vec<Letter>)>,
}

impl GenAction {
    fn from_aut(aut: &FreeAut) -> Self {
        let changes = aut
            .images
            .iter()
            .enumerate()
            .filter(|(i, img)| img.as_slice() != [Letter::gen(*i as u32 + 1)])
            .map(|(i, img)| (i, img.clone()))
            .collect();
        GenAction { changes }
    }

    fn to_aut(&self, rank: u32) -> FreeAut {
        let mut aut = FreeAut::identity(rank);
        for (i, img) in &self.changes {
            aut.images[*i] = img.clone();
        }
        aut
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorCheck {
    pub id: String,
    pub word: String,
    pub passed: bool,
    /// Conjugator realizing the relator's action, when it is inner.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n: u32,
    pub sigma: SigmaConvention,
    pub reflection: ReflectionConjugator,
    /// Candidates tried and rejected before the recorded ones.
    pub rejected: Vec<String>,
    pub rows: Vec<RelatorCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

/// Validated action of the braid alphabet on `F(x1 … x(n-1))`.
#[derive(Clone, Debug)]
pub struct ActionModel {
    n: u32,
    sigma: SigmaConvention,
    reflection: ReflectionConjugator,
    /// Indexed by column `2·(index-1) + inverse`.
    gens: Vec<GenAction>,
    guard: usize,
    rejected: Vec<String>,
}

/// `y_j` for `1 ≤ j ≤ n`, with `y_n = (x1 ⋯ x(n-1))⁻¹`, optionally inverted.
fn peripheral(n: u32, j: u32, inverse: bool) -> Vec<Letter> {
    if j < n {
        vec![Letter::new(j, inverse)]
    } else if inverse {
        (1..n).map(Letter::gen).collect()
    } else {
        (1..n).rev().map(Letter::inv).collect()
    }
}

fn cat(parts: &[Vec<Letter>]) -> Vec<Letter> {
    reduce_letters(parts.iter().flatten().copied())
}

/// `y_i ↦ y_i y_(i+1) y_i⁻¹`, `y_(i+1) ↦ y_i` as a basis automorphism.
fn half_twist_forward(n: u32, i: u32) -> FreeAut {
    let mut aut = FreeAut::identity(n - 1);
    let yi = peripheral(n, i, false);
    let yj = peripheral(n, i + 1, false);
    let yi_inv = peripheral(n, i, true);
    aut.images[(i - 1) as usize] = cat(&[yi.clone(), yj, yi_inv]);
    if i + 1 < n {
        aut.images[i as usize] = yi;
    }
    aut
}

/// Inverse of [`half_twist_forward`]: `y_i ↦ y_(i+1)`, `y_(i+1) ↦ y_(i+1)⁻¹ y_i y_(i+1)`.
fn half_twist_backward(n: u32, i: u32) -> FreeAut {
    let mut aut = FreeAut::identity(n - 1);
    let yi = peripheral(n, i, false);
    let yj = peripheral(n, i + 1, false);
    let yj_inv = peripheral(n, i + 1, true);
    aut.images[(i - 1) as usize] = yj.clone();
    if i + 1 < n {
        aut.images[i as usize] = cat(&[yj_inv, yi, yj]);
    }
    aut
}

fn reflection_aut(n: u32, conj: ReflectionConjugator) -> FreeAut {
    let rank = n - 1;
    let images = (1..=rank)
        .map(|i| {
            let c = conj.conjugator(i, rank);
            let c_inv: Vec<Letter> = c.iter().rev().map(|l| l.inverse()).collect();
            cat(&[c, vec![Letter::inv(i)], c_inv])
        })
        .collect();
    FreeAut { rank, images }
}

impl ActionModel {
    /// Selects the first convention pair under which every relator of the
    /// extended presentation acts trivially on the outer automorphism group.
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidN(n));
        }
        let extended = Presentation::build(n, Flavor::Extended)?;
        let oriented = Presentation::build(n, Flavor::Oriented)?;
        let mut rejected = Vec::new();
        for sigma in [SigmaConvention::Standard, SigmaConvention::Mirrored] {
            let probe = ActionModel::assemble(n, sigma, None);
            if !probe.relators_trivial(&oriented)? {
                rejected.push(format!("sigma={sigma}"));
                continue;
            }
            for refl in ReflectionConjugator::CANDIDATES {
                match ActionModel::with_conventions(n, sigma, refl) {
                    Ok(mut model) if model.relators_trivial(&extended)? => {
                        model.rejected = rejected;
                        return Ok(model);
                    }
                    _ => rejected.push(format!("sigma={sigma} reflection={refl}")),
                }
            }
        }
        Err(Error::NoValidConvention(n))
    }

    /// Builds a model with the given conventions, failing when the
    /// reflection candidate does not square to an inner automorphism.
    pub fn with_conventions(
        n: u32,
        sigma: SigmaConvention,
        reflection: ReflectionConjugator,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidN(n));
        }
        let t = reflection_aut(n, reflection);
        let square = t.compose(&t);
        let w = square.is_inner().ok_or(Error::NoValidConvention(n))?;
        // t⁻¹ = conj(w⁻¹) ∘ t
        let t_inv = t.conjugated_by(w.inverse().letters());
        debug_assert_eq!(t_inv.compose(&t).is_inner(), Some(Word::identity(t.alphabet())));
        let mut model = ActionModel::assemble(n, sigma, Some((t, t_inv)));
        model.reflection = reflection;
        Ok(model)
    }

    fn assemble(n: u32, sigma: SigmaConvention, t: Option<(FreeAut, FreeAut)>) -> Self {
        let mut gens = Vec::with_capacity(2 * n as usize);
        for i in 1..n {
            let (fwd, bwd) = (half_twist_forward(n, i), half_twist_backward(n, i));
            let (pos, neg) = match sigma {
                SigmaConvention::Standard => (fwd, bwd),
                SigmaConvention::Mirrored => (bwd, fwd),
            };
            gens.push(GenAction::from_aut(&pos));
            gens.push(GenAction::from_aut(&neg));
        }
        let (t, t_inv) = t.unwrap_or_else(|| (FreeAut::identity(n - 1), FreeAut::identity(n - 1)));
        gens.push(GenAction::from_aut(&t));
        gens.push(GenAction::from_aut(&t_inv));
        ActionModel {
            n,
            sigma,
            reflection: ReflectionConjugator::Empty,
            gens,
            guard: DEFAULT_IMAGE_GUARD,
            rejected: Vec::new(),
        }
    }

    fn relators_trivial(&self, p: &Presentation) -> Result<bool> {
        for r in p.relators() {
            if self.word_to_aut(&r.word)?.is_inner().is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn with_guard(mut self, guard: usize) -> Self {
        self.guard = guard;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sigma_convention(&self) -> SigmaConvention {
        self.sigma
    }

    pub fn reflection_convention(&self) -> ReflectionConjugator {
        self.reflection
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Braid { n: self.n }
    }

    fn check_word(&self, u: &Word) -> Result<()> {
        if u.alphabet() != self.alphabet() {
            return Err(Error::AlphabetMismatch { left: self.alphabet(), right: u.alphabet() });
        }
        Ok(())
    }

    fn column(letter: Letter) -> usize {
        2 * (letter.index() - 1) as usize + letter.is_inverse() as usize
    }

    /// Automorphism of a single letter (`s_i`, `S_i`, `t` or `T`).
    pub fn generator_aut(&self, letter: Letter) -> Result<FreeAut> {
        if !self.alphabet().contains(letter) {
            return Err(Error::InvalidLetter { index: letter.index(), alphabet: self.alphabet() });
        }
        Ok(self.gens[Self::column(letter)].to_aut(self.n - 1))
    }

    fn check_guard(&self, aut: &FreeAut) -> Result<()> {
        let len = aut.total_len();
        if len > self.guard {
            return Err(Error::ImageTooLong { len, bound: self.guard });
        }
        Ok(())
    }

    fn evaluate(&self, letters: &[Letter], normalize: bool) -> Result<FreeAut> {
        let mut aut = FreeAut::identity(self.n - 1);
        let mut scratch: Vec<(usize, Vec<Letter>)> = Vec::new();
        for &l in letters {
            let action = &self.gens[Self::column(l)];
            scratch.clear();
            for (i, img) in &action.changes {
                let mut out = Vec::new();
                aut.substitute_into(&mut out, img);
                scratch.push((*i, out));
            }
            for (i, img) in scratch.drain(..) {
                aut.images[i] = img;
            }
            if normalize {
                aut = aut.outer_normalized();
            }
            self.check_guard(&aut)?;
        }
        Ok(aut)
    }

    /// Exact composite automorphism: `word_to_aut(u·v) = word_to_aut(u) ∘ word_to_aut(v)`.
    pub fn word_to_aut(&self, u: &Word) -> Result<FreeAut> {
        self.check_word(u)?;
        self.evaluate(u.letters(), false)
    }

    /// Some automorphism in the outer class of `u`, kept short by
    /// renormalizing after every letter.
    pub fn outer_class(&self, u: &Word) -> Result<FreeAut> {
        self.check_word(u)?;
        self.evaluate(u.letters(), true)
    }

    pub fn is_trivial(&self, u: &Word) -> Result<bool> {
        Ok(self.outer_class(u)?.is_inner().is_some())
    }

    pub fn equal_in_group(&self, u: &Word, v: &Word) -> Result<bool> {
        self.check_word(u)?;
        self.check_word(v)?;
        self.is_trivial(&u.concat(&v.inverse())?)
    }

    /// Least `k ≤ cap` with `u^k` trivial, or `None` when no such `k` exists.
    pub fn order_of(&self, u: &Word, cap: u32) -> Result<Option<u32>> {
        let base = self.outer_class(u)?;
        let mut power = base.clone();
        for k in 1..=cap {
            if power.is_inner().is_some() {
                return Ok(Some(k));
            }
            if k < cap {
                power = power.compose(&base).outer_normalized();
                self.check_guard(&power)?;
            }
        }
        Ok(None)
    }

    /// Evaluates every relator of the extended presentation.
    pub fn validate_action(&self) -> Result<ValidationReport> {
        let p = Presentation::build(self.n, Flavor::Extended)?;
        let mut rows = Vec::with_capacity(p.relators().len());
        for r in p.relators() {
            let witness = self.word_to_aut(&r.word)?.is_inner();
            rows.push(RelatorCheck {
                id: r.id.clone(),
                word: r.word.to_string(),
                passed: witness.is_some(),
                witness: witness.map(|w| w.to_string()),
            });
        }
        Ok(ValidationReport {
            n: self.n,
            sigma: self.sigma,
            reflection: self.reflection,
            rejected: self.rejected.clone(),
            rows,
        })
    }
}
