use std::time::Instant;

use super::{CheckResult, HarnessConfig, Status};
use crate::action::ActionModel;
use crate::homs::{abelianization_image, perm_image};
use crate::presentation::{parse_expression, Flavor, Presentation};
use crate::todd_coxeter::{enumerate, Enumeration};
use crate::words::Word;
use crate::Result;

/// Collects check results under a common id prefix.
pub(super) struct Checker<'a> {
    n: Option<u32>,
    prefix: String,
    model: Option<ActionModel>,
    pub cfg: &'a HarnessConfig,
    pub out: Vec<CheckResult>,
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

impl<'a> Checker<'a> {
    /// Checker at `n` with a validated action model; ids start with `prefix`.
    pub fn new(n: u32, prefix: &str, cfg: &'a HarnessConfig) -> Result<Self> {
        let model = ActionModel::new(n)?.with_guard(cfg.image_guard);
        Ok(Checker { n: Some(n), prefix: prefix.to_string(), model: Some(model), cfg, out: Vec::new() })
    }

    pub fn n(&self) -> u32 {
        self.n.expect("checker has an n")
    }

    pub fn model(&self) -> &ActionModel {
        self.model.as_ref().expect("checker has an action model")
    }

    pub fn expr(&self, text: &str) -> Result<Word> {
        parse_expression(text, self.n())
    }

    pub fn record(&mut self, key: &str, statement: String, status: Status, witness: Option<String>, start: Instant) {
        self.out.push(CheckResult {
            id: format!("{}.{key}", self.prefix),
            statement,
            status,
            witness,
            millis: elapsed(start),
            n: self.n,
        });
    }

    pub fn boolean(&mut self, key: &str, statement: String, ok: bool, witness: Option<String>, start: Instant) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.record(key, statement, status, witness, start);
    }

    /// Equality in the group, cross-checked against the permutation and mod-2 images.
    pub fn equal(&mut self, key: &str, statement: &str, lhs: &Word, rhs: &Word) {
        let start = Instant::now();
        let (status, witness) = match self.model().equal_in_group(lhs, rhs) {
            Err(e) => (Status::Fail, Some(e.to_string())),
            Ok(false) => (Status::Fail, Some(mismatch_witness(lhs, rhs))),
            Ok(true) => match soundness(lhs, rhs) {
                Ok(()) => (Status::Pass, None),
                Err(w) => (Status::Fail, Some(format!("soundness violation: {w}"))),
            },
        };
        self.record(key, statement.to_string(), status, witness, start);
    }

    /// Order of `u` must be one of `expected`.
    pub fn order(&mut self, key: &str, statement: &str, u: &Word, expected: &[u32]) {
        let start = Instant::now();
        let cap = self.cfg.order_cap(self.n()).max(expected.iter().copied().max().unwrap_or(0));
        let (status, witness) = match self.model().order_of(u, cap) {
            Err(e) => (Status::Fail, Some(e.to_string())),
            Ok(Some(k)) if expected.contains(&k) => (Status::Pass, Some(format!("order {k}"))),
            Ok(Some(k)) => (Status::Fail, Some(format!("order {k}"))),
            Ok(None) => (Status::Fail, Some(format!("exceeds cap {cap}"))),
        };
        self.record(key, statement.to_string(), status, witness, start);
    }

    /// Coset enumeration of `subgens` in the presentation of the given flavor.
    pub fn index(&mut self, key: &str, statement: &str, flavor: Flavor, subgens: &[Word], expected: usize) {
        let start = Instant::now();
        let run = Presentation::build(self.n(), flavor).and_then(|p| {
            let e = enumerate(&p, subgens, &self.cfg.limits)?;
            let verified = match &e {
                Enumeration::Finished { table, .. } => table.verify(&p, subgens),
                Enumeration::Overflow { .. } => false,
            };
            Ok((e, verified))
        });
        let (status, witness) = match run {
            Err(e) => (Status::Fail, Some(e.to_string())),
            Ok((Enumeration::Overflow { reason, stats }, _)) => {
                (Status::Overflow, Some(format!("OVERFLOW ({reason:?}) {stats}")))
            }
            Ok((Enumeration::Finished { index, stats, .. }, verified)) => {
                let ok = index == expected && verified;
                let note = if verified { "" } else { " table-unverified" };
                (if ok { Status::Pass } else { Status::Fail }, Some(format!("index {index} {stats}{note}")))
            }
        };
        self.record(key, statement.to_string(), status, witness, start);
    }
}

fn soundness(lhs: &Word, rhs: &Word) -> std::result::Result<(), String> {
    let (pl, pr) = (perm_image(lhs).map_err(|e| e.to_string())?, perm_image(rhs).map_err(|e| e.to_string())?);
    if pl != pr {
        return Err(format!("perm {pl} vs {pr}"));
    }
    let (al, ar) = (abelianization_image(lhs), abelianization_image(rhs));
    if al != ar {
        return Err(format!("mod-2 image {al} vs {ar}"));
    }
    Ok(())
}

fn mismatch_witness(lhs: &Word, rhs: &Word) -> String {
    match soundness(lhs, rhs) {
        Err(w) => w,
        Ok(()) => "outer classes differ".to_string(),
    }
}
