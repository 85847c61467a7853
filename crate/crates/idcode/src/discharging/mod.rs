//! The share-shifting scheme: ten pattern-triggered rules that move fixed
//! rational amounts from a sending codeword to a nearby receiving one.
//!
//! The bound verifier consumes only the *outflow* side (how much leaves a
//! sender); receiver identities matter only to [`discharge_simulate`],
//! which applies the whole scheme to a periodic code. Where the receiving
//! vertex is not forced by the defining pattern the firing is labelled
//! [`Confidence::Inferred`] or resolved by I-set comparison
//! ([`Confidence::Conditional`]).

mod rules;

use crate::codeset::{iset, verify_periodic, CodeWindow, PeriodicCode};
use crate::error::{Error, Result};
use crate::lattice::{ball_offsets, ball_region, GridPoint, Metric, SymmetryOp};
use crate::share::share_exact;
use crate::{rat, Rational};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub(crate) use rules::{Precondition, ReceiverSpec, RuleDef, SenderContext};

/// A rule number, 1 through 10.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RuleId(u8);

/// Number of rules in the scheme.
pub const RULE_COUNT: u8 = 10;

impl RuleId {
    pub fn new(id: u8) -> Result<RuleId> {
        if (1..=RULE_COUNT).contains(&id) {
            Ok(RuleId(id))
        } else {
            Err(Error::InvalidParameter {
                reason: format!("rule number must be 1..={RULE_COUNT}, got {id}"),
            })
        }
    }

    pub fn all() -> impl Iterator<Item = RuleId> {
        (1..=RULE_COUNT).map(RuleId)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How firmly the receiver of a firing is known.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Confidence {
    /// The defining pattern forces the receiver.
    Determined,
    /// Nearest-codeword convention; not forced by the definitions.
    Inferred,
    /// Chosen between two candidates by an I-set difference test.
    Conditional,
}

impl Confidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Confidence::Determined => "determined",
            Confidence::Inferred => "inferred",
            Confidence::Conditional => "conditional",
        }
    }
}

/// One matched rule variant at a concrete sender.
#[derive(Clone, Debug)]
pub struct RuleFiring {
    pub rule: RuleId,
    /// Symmetry carrying the rule's canonical pattern onto the matched one.
    pub variant: SymmetryOp,
    pub amount: Rational,
    pub receiver: Option<GridPoint>,
    pub confidence: Confidence,
    /// True when the two conditional candidates were interchangeable (both
    /// or neither I-set difference nonempty) and the documented ordering
    /// convention made the choice.
    pub convention_decided: bool,
}

impl RuleFiring {
    /// `{rule, variant, amount:"p/q", receiver:[x,y]|null, confidence}`,
    /// plus `convention_decided:true` when the ordering convention decided
    /// the receiver.
    pub fn to_json(&self) -> serde_json::Value {
        let receiver = match self.receiver {
            Some(p) => serde_json::json!([p.x, p.y]),
            None => serde_json::Value::Null,
        };
        let mut obj = serde_json::json!({
            "rule": self.rule.get(),
            "variant": self.variant.dihedral_label(),
            "amount": self.amount.to_string(),
            "receiver": receiver,
            "confidence": self.confidence.as_str(),
        });
        if self.convention_decided {
            obj.as_object_mut()
                .expect("object literal")
                .insert("convention_decided".into(), true.into());
        }
        obj
    }
}

/// The ten rules with their amounts; amounts can be overridden for
/// sensitivity experiments.
#[derive(Clone, Debug)]
pub struct RuleSet {
    defs: Vec<RuleDef>,
}

impl RuleSet {
    pub fn standard() -> RuleSet {
        RuleSet {
            defs: rules::standard_defs(),
        }
    }

    /// Same rules with one amount replaced.
    pub fn with_amount(mut self, rule: RuleId, amount: Rational) -> RuleSet {
        self.defs[rule.index()].amount = amount;
        self
    }

    pub fn amount(&self, rule: RuleId) -> Rational {
        self.defs[rule.index()].amount
    }

    pub(crate) fn defs(&self) -> &[RuleDef] {
        &self.defs
    }

    /// Sender-side precondition facts, computed once per (code, c).
    fn context(&self, code: &CodeWindow, c: GridPoint) -> SenderContext {
        let codeword =
            |dx: i32, dy: i32| code.codewords().contains(c.translate(dx, dy));
        let king = rules::king_offsets()
            .iter()
            .filter(|&&(dx, dy)| codeword(dx, dy))
            .count();
        let ball2 = ball_offsets(Metric::Manhattan, 2)
            .iter()
            .filter(|&&(dx, dy)| codeword(dx, dy))
            .count();
        let axis = rules::AXIS_OFFSETS
            .iter()
            .filter(|&&(dx, dy)| codeword(dx, dy))
            .count();
        SenderContext {
            king_isolated: king == 1,
            ball2_isolated: ball2 == 1,
            axis_codewords: axis,
        }
    }

    fn check_window(&self, code: &CodeWindow, c: GridPoint) -> Result<()> {
        if !code.codewords().contains(c) {
            return Err(Error::NotACodeword { vertex: c });
        }
        if !ball_region(Metric::Manhattan, 4, c).is_subset_of(code.support()) {
            return Err(Error::InsufficientWindow {
                center: c,
                radius: 4,
            });
        }
        Ok(())
    }

    /// Share leaving `c` under one rule: the amount times the number of
    /// matching variants (variants are additive).
    pub fn outflow(&self, code: &CodeWindow, c: GridPoint, rule: RuleId) -> Result<Rational> {
        self.check_window(code, c)?;
        Ok(self.outflow_unchecked(code, c, rule, &self.context(code, c)))
    }

    fn outflow_unchecked(
        &self,
        code: &CodeWindow,
        c: GridPoint,
        rule: RuleId,
        ctx: &SenderContext,
    ) -> Rational {
        let def = &self.defs[rule.index()];
        if !ctx.allows(def.precondition) {
            return rat(0, 1);
        }
        let codeword = |dx: i32, dy: i32| code.codewords().contains(c.translate(dx, dy));
        let matches = def
            .variants
            .iter()
            .filter(|v| v.matches(codeword))
            .count();
        def.amount * Rational::from_integer(matches as i128)
    }

    /// Share leaving `c` under all ten rules together.
    pub fn total_outflow(&self, code: &CodeWindow, c: GridPoint) -> Result<Rational> {
        self.check_window(code, c)?;
        let ctx = self.context(code, c);
        Ok(RuleId::all()
            .map(|rule| self.outflow_unchecked(code, c, rule, &ctx))
            .fold(rat(0, 1), |a, b| a + b))
    }

    /// Every variant match at sender `c`, with receivers resolved.
    ///
    /// Conditional receivers (rules whose pattern admits two candidates)
    /// need `B_2` of both candidates inside the support; a window of
    /// radius 6 around `c` always suffices.
    pub fn firings(&self, code: &CodeWindow, c: GridPoint) -> Result<Vec<RuleFiring>> {
        self.check_window(code, c)?;
        let ctx = self.context(code, c);
        let codeword = |dx: i32, dy: i32| code.codewords().contains(c.translate(dx, dy));
        let mut out = Vec::new();
        for (idx, def) in self.defs.iter().enumerate() {
            if !ctx.allows(def.precondition) {
                continue;
            }
            for v in &def.variants {
                if !v.matches(codeword) {
                    continue;
                }
                let firing = self.resolve(code, c, RuleId(idx as u8 + 1), def, v)?;
                out.push(firing);
            }
        }
        Ok(out)
    }

    fn resolve(
        &self,
        code: &CodeWindow,
        c: GridPoint,
        rule: RuleId,
        def: &RuleDef,
        variant: &rules::RuleVariant,
    ) -> Result<RuleFiring> {
        let abs = |p: (i32, i32)| c.translate(p.0, p.1);
        let (receiver, confidence, convention_decided) = match variant.receiver {
            ReceiverSpec::Determined(p) => (abs(p), Confidence::Determined, false),
            ReceiverSpec::Inferred(p) => (abs(p), Confidence::Inferred, false),
            ReceiverSpec::Conditional(a, b) => {
                // Candidates ordered by (x, y); the first is checked first.
                let (v, w) = {
                    let (a, b) = (abs(a), abs(b));
                    if b < a {
                        (b, a)
                    } else {
                        (a, b)
                    }
                };
                let iv = iset(code, v, 2)?;
                let iw = iset(code, w, 2)?;
                let v_extra = !iv.difference(&iw).is_empty();
                let w_extra = !iw.difference(&iv).is_empty();
                let receiver = if v_extra { v } else { w };
                (receiver, Confidence::Conditional, v_extra == w_extra)
            }
        };
        Ok(RuleFiring {
            rule,
            variant: variant.op,
            amount: def.amount,
            receiver: Some(receiver),
            confidence,
            convention_decided,
        })
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::standard()
    }
}

/// [`RuleSet::outflow`] with the standard rules.
pub fn rule_outflow(code: &CodeWindow, c: GridPoint, rule: RuleId) -> Result<Rational> {
    RuleSet::standard().outflow(code, c, rule)
}

/// [`RuleSet::total_outflow`] with the standard rules.
pub fn total_outflow(code: &CodeWindow, c: GridPoint) -> Result<Rational> {
    RuleSet::standard().total_outflow(code, c)
}

/// [`RuleSet::firings`] with the standard rules.
pub fn rule_firings(code: &CodeWindow, c: GridPoint) -> Result<Vec<RuleFiring>> {
    RuleSet::standard().firings(code, c)
}

/// Share at radius 2 minus total outflow — the modified share of a
/// codeword that receives nothing.
pub fn modified_share_sender(code: &CodeWindow, c: GridPoint) -> Result<Rational> {
    Ok(share_exact(code, c, 2)? - total_outflow(code, c)?)
}

/// Full application of the scheme to a periodic code.
#[derive(Clone, Debug)]
pub struct DischargeReport {
    /// Modified share per fundamental-domain codeword:
    /// share − outflow + inflow.
    pub shares: BTreeMap<GridPoint, Rational>,
    /// True when some firing's receiver rests on a convention (inferred
    /// nearest-codeword receivers, or a conditional tie broken by
    /// ordering) rather than on the defining patterns.
    pub convention_dependent: bool,
}

/// Applies every rule at every codeword of the (2-identifying) periodic
/// code and accounts the flows. Work is per codeword class: by
/// periodicity, a class member's firings are the class representative's
/// firings translated.
pub fn discharge_simulate(code: &PeriodicCode) -> Result<DischargeReport> {
    let verdict = verify_periodic(code, 2)?;
    if let Some(witness) = verdict.witness() {
        return Err(Error::InvalidParameter {
            reason: format!("code is not identifying at radius 2: {witness}"),
        });
    }
    let rules = RuleSet::standard();
    let reps: Vec<GridPoint> = code.domain_codewords().collect();
    // Radius 6 covers every window precondition: rule patterns reach
    // distance 4 and conditional receivers need B_2 around points at
    // distance up to 4.
    let per_rep: Vec<(GridPoint, Rational, Vec<RuleFiring>)> = reps
        .par_iter()
        .map(|&c| {
            let window = code.window(c, 6)?;
            let share = share_exact(&window, c, 2)?;
            let firings = rules.firings(&window, c)?;
            Ok((c, share, firings))
        })
        .collect::<Result<_>>()?;

    let class_of = |p: GridPoint| -> GridPoint {
        GridPoint::new(
            p.x.rem_euclid(code.width() as i32),
            p.y.rem_euclid(code.height() as i32),
        )
    };
    let firings_of: BTreeMap<GridPoint, &Vec<RuleFiring>> = per_rep
        .iter()
        .map(|(c, _, firings)| (*c, firings))
        .collect();
    let convention_dependent = per_rep.iter().flat_map(|(_, _, f)| f).any(|f| {
        matches!(f.confidence, Confidence::Inferred) || f.convention_decided
    });

    // Receivers sit within distance 4 of their sender, so the senders
    // reaching c are exactly the codewords of B_4(c).
    let sender_offsets = ball_offsets(Metric::Manhattan, 4);
    let mut shares = BTreeMap::new();
    let mut domain_share_sum = rat(0, 1);
    let mut domain_ms_sum = rat(0, 1);
    for (c, share, firings) in &per_rep {
        let outflow: Rational = firings
            .iter()
            .map(|f| f.amount)
            .fold(rat(0, 1), |a, b| a + b);
        let mut inflow = rat(0, 1);
        for &(dx, dy) in &sender_offsets {
            let s = c.translate(dx, dy);
            if !code.is_codeword(s) {
                continue;
            }
            let rep = class_of(s);
            let (tx, ty) = (s.x - rep.x, s.y - rep.y);
            for f in firings_of[&rep] {
                let r = f.receiver.expect("simulator firings are resolved");
                if r.translate(tx, ty) == *c {
                    inflow += f.amount;
                }
            }
        }
        let ms = *share - outflow + inflow;
        domain_share_sum += *share;
        domain_ms_sum += ms;
        shares.insert(*c, ms);
    }
    // Every shifted unit has exactly one receiver, so the totals agree.
    debug_assert_eq!(domain_share_sum, domain_ms_sum);
    Ok(DischargeReport {
        shares,
        convention_dependent,
    })
}
