use std::collections::HashMap;
use std::time::Instant;

use super::checker::Checker;
use crate::action::FreeAut;
use super::{CheckResult, HarnessConfig, Status};
use crate::homs::{
    abelianization_image, pgl2_image_with, pgl2_preimage, span_gf2, validate_hom, Assignment, Gf2Vec, Mat2,
    ProjMat2,
};
use crate::presentation::{named_word, Flavor, NamedElement, Presentation};
use crate::words::Word;
use crate::Result;

fn s(i: u32) -> String {
    format!("s{i}")
}

fn si(i: u32) -> String {
    format!("S{i}")
}

fn join<I: IntoIterator<Item = String>>(parts: I) -> String {
    parts.into_iter().collect::<Vec<_>>().join(" ")
}

impl Checker<'_> {
    /// Equality of two parsed expressions; the statement is `lhs = rhs`.
    fn eq_text(&mut self, key: &str, lhs: &str, rhs: &str) -> Result<()> {
        let (l, r) = (self.expr(lhs)?, self.expr(rhs)?);
        self.equal(key, &format!("{lhs} = {rhs}"), &l, &r);
        Ok(())
    }

    fn order_text(&mut self, key: &str, text: &str, expected: &[u32]) -> Result<()> {
        let u = self.expr(text)?;
        let shown: Vec<String> = expected.iter().map(u32::to_string).collect();
        self.order(key, &format!("order({text}) = {}", shown.join(" or ")), &u, expected);
        Ok(())
    }
}

pub fn verify_presentation(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.pres"), cfg)?;
    let start = Instant::now();
    let report = c.model().validate_action()?;
    let mut witness = format!("sigma={} reflection={}", report.sigma, report.reflection);
    if !report.rejected.is_empty() {
        witness.push_str(&format!(" rejected={}", report.rejected.join(",")));
    }
    c.boolean("convention", "a convention realizing every relator exists".into(), true, Some(witness), start);
    for row in &report.rows {
        let start = Instant::now();
        let key = format!("rel.{}", row.id.replace(' ', ""));
        let statement = format!("relator {} = {} acts trivially", row.id, row.word);
        let witness = row.witness.as_ref().map(|w| format!("conjugator {w}"));
        c.boolean(&key, statement, row.passed, witness, start);
    }

    let start = Instant::now();
    let extended = Presentation::build(n, Flavor::Extended)?;
    let oriented = Presentation::build(n, Flavor::Oriented)?;
    let covered = oriented.relators().iter().all(|r| extended.relators().iter().any(|e| e.word == r.word));
    c.boolean("oriented", "every oriented relator is among the validated ones".into(), covered, None, start);

    let start = Instant::now();
    let ok = validate_hom(&Assignment::Perm, &extended);
    c.boolean("hom.perm", "puncture permutation kills every relator".into(), ok, None, start);
    let start = Instant::now();
    let ok = validate_hom(&Assignment::Abelianization, &extended);
    c.boolean("hom.psi", "s_i -> (1,0), t -> (0,1) kills every relator".into(), ok, None, start);
    Ok(c.out)
}

pub fn verify_prop22(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.prop22"), cfg)?;
    c.order_text("order.a0", "a0", &[n])?;
    c.order_text("order.a1", "a1", &[n - 1])?;
    c.order_text("order.a2", "a2", &[n - 2])?;

    let lhs = format!("{} s{}^2", join((1..=n - 2).map(s)), n - 1);
    let rhs = join((1..=n - 2).rev().map(s));
    let (l, r) = (c.expr(&lhs)?.inverse(), c.expr(&rhs)?);
    c.equal("inverse", &format!("({lhs})^-1 = {rhs}"), &l, &r);

    for i in 1..=n - 2 {
        c.eq_text(&format!("phi.{i}"), &format!("phi s{i} phi^-1"), &s(n - 1 - i))?;
    }
    for (name, bound) in [("a0", n - 1), ("a1", n - 2), ("a2", n - 3)] {
        for i in 1..bound {
            c.eq_text(&format!("rot.{name}.{i}"), &format!("{name} s{i} {name}^-1"), &s(i + 1))?;
        }
    }
    let gens = [c.expr("s1")?, c.expr("a0")?];
    c.index("gen", "index of <s1, a0> in the oriented group = 1", Flavor::Oriented, &gens, 1);
    Ok(c.out)
}

pub fn verify_section3(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.sec3"), cfg)?;
    let even = n.is_multiple_of(2);
    c.eq_text("ta0t.inverse", "t a0 t", &join((1..n).map(si)))?;
    c.eq_text("ta0t", "t a0 t", "a0")?;
    for k in 0..=n / 2 {
        let odd = join((1..=k).map(|j| s(2 * j - 1)));
        let text = if odd.is_empty() { "t".to_string() } else { format!("t {odd}") };
        let u = c.expr(&text)?.pow(2);
        let e = Word::identity(u.alphabet());
        c.equal(&format!("todd.{k}"), &format!("({text})^2 = e"), &u, &e);
    }
    let tb = format!("t S{}", n - 1);
    c.eq_text("conj.a2", &format!("{tb} a2 {tb}"), "a2")?;
    c.eq_text("commute", &format!("{tb} a2"), &format!("a2 {tb}"))?;
    c.order_text("order.ta0", "t a0", &[if even { n } else { 2 * n }])?;
    let m = n - 2;
    c.order_text("order.tb", &format!("{tb} a2"), &[if even { m } else { 2 * m }])?;
    Ok(c.out)
}

/// The `a,b`-words x0 through x4 of the y-lemma chain.
fn x_chain(a: &Word, b: &Word) -> Result<[Word; 5]> {
    let x0 = Word::product(a.alphabet(), [&b.pow(-2), a, b])?;
    let x1 = x0.conjugate(a)?;
    let x2 = x1.concat(&a.inverse())?;
    let x3 = x2.concat(&b.inverse())?;
    let x4 = x3.concat(a)?;
    Ok([x0, x1, x2, x3, x4])
}

/// `a^(2m) x4 a^(-2m)` with `2m ≡ j + 5 (mod n)`, an `a,b`-word equal to γ_j.
fn gamma_ab(a: &Word, x4: &Word, j: u32, n: u32) -> Result<Word> {
    let m = ((j + 5) % n) / 2;
    a.pow(2 * m as i64).conjugate(x4)
}

pub fn verify_lemma_y(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.lemY"), cfg)?;
    let (a, b) = (c.expr("a")?, c.expr("b")?);
    let xs = x_chain(&a, &b)?;
    let sigma_forms = [
        join([si(n - 2), si(n - 3), s(n - 5), s(n - 4), s(n - 2)]),
        join([
            si(n - 2),
            si(n - 3),
            s(n - 5),
            s(n - 4),
            s(n - 2),
            s(n - 3),
            s(n - 2),
            s(n - 1),
            s(n - 3),
            s(n - 4),
            si(n - 2),
            si(n - 1),
            "t a0".into(),
        ]),
        join([s(n - 5), si(n - 2), si(n - 3), s(n - 2), s(n - 2), s(n - 3), s(n - 4), si(n - 1)]),
        join([s(n - 5), s(n - 3), s(n - 3), s(n - 4), si(n - 1), "a0^-1 t".into()]),
        join([s(n - 5), s(n - 3), si(n - 1)]),
    ];
    let defs = ["b^-2 a b", "x0 a x0^-1", "x1 a^-1", "x2 b^-1", "x3 a"];
    for (i, (x, form)) in xs.iter().zip(&sigma_forms).enumerate() {
        let rhs = c.expr(form)?;
        c.equal(&format!("x{i}"), &format!("x{i} = {} = {form}", defs[i]), x, &rhs);
    }

    for k in 1..n {
        if [n.wrapping_sub(6), n - 4, n - 2].contains(&k) {
            continue;
        }
        let target = (k + 2) % n;
        c.eq_text(&format!("a2conj.{k}"), &format!("a^2 s{k} a^-2"), &s(target))?;
    }
    for k in 0..n / 2 {
        let lhs = format!("a^{} g1 a^{}", 2 * k, -2 * k as i64);
        c.eq_text(&format!("gshift.{k}"), &lhs, &format!("g{}", 2 * k + 1))?;
    }

    let mut product = Word::identity(a.alphabet());
    for j in (1..n).step_by(2) {
        let g = gamma_ab(&a, &xs[4], j, n)?;
        let m = ((j + 5) % n) / 2;
        let rhs = named_word(NamedElement::Gamma(j), n)?;
        c.equal(&format!("gamma.{j}"), &format!("a^{} x4 a^{} = g{j}", 2 * m, -2 * (m as i64)), &g, &rhs);
        product = product.concat(&g)?;
    }
    let gammas = join((1..n).step_by(2).map(|j| format!("g{j}")));
    c.eq_text("gproduct", &gammas, "y")?;
    let y = c.expr("y")?;
    c.equal("y", "product of the a,b-words for g1 g3 ... equals y", &product, &y);
    Ok(c.out)
}

pub fn verify_lemma_z(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.lemZ"), cfg)?;
    let r = format!("a0 S{}", n - 1);
    let r2 = format!("{r} {r}");
    let lines = [
        join([s(n - 3), "a0".into(), s(n - 3), si(n - 1), "a0".into(), si(n - 1), s(n - 2)]),
        join([r2.clone(), s(n - 5), s(n - 4), s(n - 2)]),
        format!("{r2} d{}", n - 5),
        join(["a0^2".into(), si(n - 2), si(n - 1), s(n - 5), s(n - 4), s(n - 2)]),
        join(["a0^2".into(), s(n - 5), s(n - 4), si(n - 2), si(n - 1), s(n - 2)]),
        join([s(n - 3), s(n - 2), "a0^2".into(), s(n - 1), si(n - 2), si(n - 1)]),
        join([s(n - 3), s(n - 2), s(1), r2.clone()]),
    ];
    for (i, line) in lines.iter().enumerate() {
        c.eq_text(&format!("ab.{i}"), "a b", line)?;
    }
    for k in 1..=n.saturating_sub(7) {
        c.eq_text(&format!("dshift.{k}"), &format!("{r2} d{k}"), &format!("d{} {r2}", k + 2))?;
    }
    let deltas = join((1..=n - 5).step_by(2).map(|k| format!("d{k}")));
    let expanded = join((1..=n - 4).map(s).chain((3..=n - 5).step_by(2).map(s)).chain([s(n - 2)]));
    c.eq_text("dproduct.0", &deltas, &expanded)?;
    let closed = join([r.clone(), si(n - 2), si(n - 3), si(1), "z".into()]);
    c.eq_text("dproduct.1", &deltas, &closed)?;
    let half = n / 2 - 1;
    let ab = c.expr("a b")?;
    let z = c.expr("z")?;
    c.equal("abpower", &format!("(a b)^{half} = z"), &ab.pow(half as i64), &z);
    c.eq_text("a1", &r, "a1")?;
    c.order_text("order.a1", "a1", &[n - 1])?;
    Ok(c.out)
}

pub fn verify_main_even(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.main"), cfg)?;
    let (a, b) = (c.expr("a")?, c.expr("b")?);
    let w_sigma = join([si(n - 2), s(1)]);
    let w_def = format!("z^-1 y g{}^-1", n - 3);
    c.eq_text("w.0", &w_def, &join([si(n - 2), s(n - 3), s(n - 1), si(n - 3), si(n - 1), s(1)]))?;
    c.eq_text("w", &w_def, &w_sigma)?;

    let xs = x_chain(&a, &b)?;
    let half = (n / 2 - 1) as i64;
    let mut y_ab = Word::identity(a.alphabet());
    for j in (1..n).step_by(2) {
        y_ab = y_ab.concat(&gamma_ab(&a, &xs[4], j, n)?)?;
    }
    let w_ab = Word::product(
        a.alphabet(),
        [&a.concat(&b)?.pow(-half), &y_ab, &gamma_ab(&a, &xs[4], n - 3, n)?.inverse()],
    )?;
    let w_rhs = c.expr(&w_sigma)?;
    c.equal("w.ab", &format!("w as an a,b-word = {w_sigma}"), &w_ab, &w_rhs);

    c.eq_text("ainvb", "a^-1 b", &join([s(n - 3), s(n - 4), si(n - 2), si(n - 1), s(n - 2)]))?;

    let c_sigma = join([si(n - 1), s(1)]);
    let a_inv_b = a.inverse().concat(&b)?;
    let w = c.expr(&w_sigma)?;
    let c_claim = c.expr(&c_sigma)?;
    let cw = a_inv_b.conjugate(&w)?;
    c.equal("c", &format!("a^-1 b w b^-1 a = {c_sigma}"), &cw, &c_claim);
    let cw_ab = a_inv_b.conjugate(&w_ab)?;
    c.equal("c.ab", &format!("c as an a,b-word = {c_sigma}"), &cw_ab, &c_claim);
    let general = join([si(n - 1), s(n - 3), s(n - 4), s(1), si(n - 4), si(n - 3)]);
    let general_word = c.expr(&general)?;
    c.equal("c.general", &format!("a^-1 b w b^-1 a = {general}"), &cw, &general_word);

    let lhs = a.concat(&c.expr("t a0")?.inverse())?;
    let bridge = join([s(n - 3), s(n - 2)]);
    let rhs = c.expr(&bridge)?;
    c.equal("bridge", &format!("a (t a0)^-1 = {bridge}"), &lhs, &rhs);

    c.index("gen", "index of <a, b> = 1", Flavor::Extended, &[a.clone(), b.clone()], 1);
    if let Some(max_len) = cfg.witness_search {
        witness_search(&mut c, &a, &b, max_len)?;
    }
    Ok(c.out)
}

/// Node budget for the bounded witness search.
const WITNESS_NODES: usize = 400_000;

struct Ball {
    seen: HashMap<FreeAut, Vec<u8>>,
    frontier: Vec<(FreeAut, Vec<u8>)>,
}

impl Ball {
    fn new(start: FreeAut) -> Self {
        let start = start.canonical_outer();
        Ball { seen: HashMap::from([(start.clone(), Vec::new())]), frontier: vec![(start, Vec::new())] }
    }
}

/// Bidirectional breadth-first search over `{a, a^-1, b, b^-1}` for a word
/// equal to `t a0`, keyed by canonical outer classes. Not finding one is
/// recorded as skipped.
fn witness_search(c: &mut Checker<'_>, a: &Word, b: &Word, max_len: usize) -> Result<()> {
    const NAMES: [&str; 4] = ["a", "A", "b", "B"];
    let start = Instant::now();
    let model = c.model().clone();
    let words = [a.clone(), a.inverse(), b.clone(), b.inverse()];
    let gens = words.iter().map(|w| model.word_to_aut(w)).collect::<Result<Vec<_>>>()?;
    let target = c.expr("t a0")?;
    let mut fwd = Ball::new(FreeAut::identity(model.n() - 1));
    let mut bwd = Ball::new(model.word_to_aut(&target)?);
    let mut depth = (0, 0);
    // forward path p and backward path q meet when p = t a0 · q, so t a0 = p q^-1
    let mut found = bwd.seen.get(&fwd.frontier[0].0).map(|q| (Vec::new(), q.clone()));
    while found.is_none() && depth.0 + depth.1 < max_len && fwd.seen.len() + bwd.seen.len() < WITNESS_NODES {
        let forward = fwd.seen.len() <= bwd.seen.len();
        let (ball, other) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        let mut next = Vec::new();
        'layer: for (aut, path) in &ball.frontier {
            for (g, gen) in gens.iter().enumerate() {
                if path.last().is_some_and(|&p| p as usize ^ 1 == g) {
                    continue;
                }
                let key = aut.compose(gen).canonical_outer();
                if ball.seen.contains_key(&key) {
                    continue;
                }
                let mut p = path.clone();
                p.push(g as u8);
                if let Some(q) = other.seen.get(&key) {
                    found = Some(if forward { (p, q.clone()) } else { (q.clone(), p) });
                    break 'layer;
                }
                ball.seen.insert(key.clone(), p.clone());
                next.push((key, p));
            }
        }
        ball.frontier = next;
        if forward {
            depth.0 += 1;
        } else {
            depth.1 += 1;
        }
        if ball.frontier.is_empty() {
            break;
        }
    }
    let statement = format!("some a,b-word of length <= {max_len} equals t a0");
    let visited = fwd.seen.len() + bwd.seen.len();
    match found {
        Some((p, q)) => {
            let path: Vec<usize> =
                p.iter().map(|&g| g as usize).chain(q.iter().rev().map(|&g| g as usize ^ 1)).collect();
            let word = Word::product(target.alphabet(), path.iter().map(|&g| &words[g]))?;
            let text = join(path.iter().map(|&g| NAMES[g].to_string()));
            c.equal("ta0", &statement, &word, &target);
            if let Some(last) = c.out.last_mut() {
                last.witness = Some(format!("{text} (length {})", path.len()));
                last.millis = start.elapsed().as_millis() as u64;
            }
        }
        None => {
            let note = format!("not found ({visited} classes visited, depth {}+{})", depth.0, depth.1);
            c.record("ta0", statement, Status::Skipped, Some(note), start);
        }
    }
    Ok(())
}

pub fn verify_odd(n: u32, cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(n, &format!("n{n}.odd"), cfg)?;
    let ta0 = c.expr("t a0")?;
    let t = c.expr("t")?;
    c.equal("power", &format!("(t a0)^{n} = t"), &ta0.pow(n as i64), &t);
    let gens = [c.expr("t s1")?, ta0];
    c.index("gen", "index of <t s1, t a0> = 1", Flavor::Extended, &gens, 1);
    c.order_text("order.ts1", "t s1", &[2])?;
    c.order_text("order.ta0", "t a0", &[2 * n])?;
    Ok(c.out)
}

/// Search bound for the PGL2 preimage words.
const PREIMAGE_LEN: usize = 8;

pub fn verify_n4(cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(4, "n4", cfg)?;
    let start = Instant::now();
    let t_image = match Assignment::pgl2_validated() {
        Ok(Assignment::Pgl2 { t }) => {
            c.boolean("pgl2.relators", "the PGL2(Z) assignment kills every relator".into(), true, Some(format!("t -> {t}")), start);
            t
        }
        _ => {
            c.boolean("pgl2.relators", "the PGL2(Z) assignment kills every relator".into(), false, None, start);
            crate::homs::PGL2_T_CANDIDATES[0]
        }
    };

    let start = Instant::now();
    let x = Mat2::new(0, 1, 1, 0);
    let y = Mat2::new(-1, 0, 0, 1);
    let comm = Mat2::commutator(&x, &y);
    let ok = comm == Mat2::IDENTITY.neg();
    c.boolean("pgl2.commutator", format!("[{x}, {y}] = -Id"), ok, Some(comm.to_string()), start);

    for (name, m) in [("x", x), ("y", y)] {
        let start = Instant::now();
        let target = ProjMat2::new(m);
        let statement = format!("some word of length <= {PREIMAGE_LEN} maps to {name} = {m} in PGL2(Z)");
        match pgl2_preimage(&target, &t_image, PREIMAGE_LEN) {
            Some(w) => {
                let ok = ProjMat2::new(pgl2_image_with(&w, &t_image)?) == target;
                c.boolean(&format!("pgl2.preimage.{name}"), statement, ok, Some(w.to_string()), start);
            }
            None => c.boolean(&format!("pgl2.preimage.{name}"), statement, false, None, start),
        }
    }

    c.order_text("order.t", "t", &[2])?;
    c.order_text("order.ts1", "t s1", &[2])?;
    c.order_text("order.a0", "a0", &[4])?;
    let gens = [c.expr("t")?, c.expr("t s1")?, c.expr("a0")?];
    c.index("gen", "index of <t, t s1, a0> = 1", Flavor::Extended, &gens, 1);
    Ok(c.out)
}

pub fn verify_sigma2(cfg: &HarnessConfig) -> Result<Vec<CheckResult>> {
    let mut c = Checker::new(6, "sigma2", cfg)?;
    let (a, b) = (c.expr("a")?, c.expr("b")?);
    let (pa, pb) = (abelianization_image(&a), abelianization_image(&b));
    let start = Instant::now();
    c.boolean("psi.a", "psi'(a) = (1,1)".into(), pa == Gf2Vec::new(1, 1), Some(pa.to_string()), start);
    let start = Instant::now();
    c.boolean("psi.b", "psi'(b) = (0,1)".into(), pb == Gf2Vec::new(0, 1), Some(pb.to_string()), start);
    let start = Instant::now();
    let spans = span_gf2(&[pa, pb]);
    c.boolean("span", "psi'(a), psi'(b) span (Z/2)^2".into(), spans, None, start);
    c.index("gen", "index of <a, b> = 1 at n = 6", Flavor::Extended, &[a, b], 1);

    let start = Instant::now();
    let statement = "central Z/2 extension argument applicable".to_string();
    if c.out.iter().all(|r| r.status == Status::Pass) {
        c.record("conclusion", statement, Status::Pass, None, start);
    } else {
        c.record("conclusion", statement, Status::Skipped, Some("premises not all certified".into()), start);
    }
    Ok(c.out)
}
