//! Rule definitions: canonical directional patterns and their symmetry
//! variants.
//!
//! Each rule is stored once in its east-pointing orientation; the full
//! variant list is the orbit of that pattern under the eight point
//! symmetries, deduplicated (patterns on a mirror axis have orbit 4, the
//! rest 8). Points are relative to the sending codeword; `on` points must
//! be codewords, `off` points must not be. Anything unlisted is
//! unconstrained.

use crate::lattice::{ball_offsets, GridPoint, Metric, SymmetryOp};
use crate::{rat, Rational};

/// Which global condition on the sender a rule requires before any of its
/// variants may match.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Precondition {
    /// The sender is the only codeword of its 3×3 king-metric 1-ball.
    KingIsolated,
    /// The sender is the only codeword of its Manhattan 2-ball.
    Ball2Isolated,
    /// King isolation, plus at most one codeword among the four axis
    /// points at distance 2.
    KingAxisLimited,
}

/// How a variant names its receiver, in canonical orientation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum ReceiverSpec {
    /// The pattern forces the receiver.
    Determined((i32, i32)),
    /// Convention: the pattern codeword nearest the sender. Consumed only
    /// by the simulator, never by the bound verifier.
    Inferred((i32, i32)),
    /// Two candidates; the receiver depends on their I-sets.
    Conditional((i32, i32), (i32, i32)),
}

impl ReceiverSpec {
    fn transform(self, op: &SymmetryOp) -> ReceiverSpec {
        let map = |p: (i32, i32)| -> (i32, i32) {
            let q = op.apply(GridPoint::new(p.0, p.1));
            (q.x, q.y)
        };
        match self {
            ReceiverSpec::Determined(p) => ReceiverSpec::Determined(map(p)),
            ReceiverSpec::Inferred(p) => ReceiverSpec::Inferred(map(p)),
            ReceiverSpec::Conditional(a, b) => ReceiverSpec::Conditional(map(a), map(b)),
        }
    }
}

/// One directional instance of a rule.
#[derive(Clone, Debug)]
pub(crate) struct RuleVariant {
    /// The symmetry carrying the canonical pattern onto this one.
    pub(crate) op: SymmetryOp,
    pub(crate) on: Vec<(i32, i32)>,
    pub(crate) off: Vec<(i32, i32)>,
    pub(crate) receiver: ReceiverSpec,
}

/// A full rule: identity, shifted amount, sender precondition, variants.
#[derive(Clone, Debug)]
pub(crate) struct RuleDef {
    pub(crate) amount: Rational,
    pub(crate) precondition: Precondition,
    pub(crate) variants: Vec<RuleVariant>,
}

fn transform_points(points: &[(i32, i32)], op: &SymmetryOp) -> Vec<(i32, i32)> {
    let mut out: Vec<(i32, i32)> = points
        .iter()
        .map(|&(x, y)| {
            let q = op.apply(GridPoint::new(x, y));
            (q.x, q.y)
        })
        .collect();
    out.sort_unstable();
    out
}

/// Orbit of a canonical pattern under the point group, first-op
/// representative per distinct (on, off) pair.
fn orbit(
    on: &[(i32, i32)],
    off: &[(i32, i32)],
    receiver: ReceiverSpec,
) -> Vec<RuleVariant> {
    let mut variants: Vec<RuleVariant> = Vec::with_capacity(8);
    for op in SymmetryOp::point_group() {
        let v = RuleVariant {
            on: transform_points(on, &op),
            off: transform_points(off, &op),
            receiver: receiver.transform(&op),
            op,
        };
        if !variants.iter().any(|w| w.on == v.on && w.off == v.off) {
            variants.push(v);
        }
    }
    variants
}

/// The ten standard rules, in order. Canonical patterns point east; the
/// `y`-mirrored or rotated forms are generated.
pub(crate) fn standard_defs() -> Vec<RuleDef> {
    use Precondition::*;
    use ReceiverSpec::*;
    let defs = vec![
        // Rule 1: empty near column at x=2, full far column at x=3 (one
        // diagonal each); shifts to one of the two far codewords, chosen
        // by I-set difference.
        RuleDef {
            amount: rat(1, 5),
            precondition: KingIsolated,
            variants: orbit(
                &[(3, 0), (3, -1)],
                &[(2, 0), (2, -1)],
                Conditional((3, -1), (3, 0)),
            ),
        },
        // Rule 2: empty axis point at distance 2, codewords at 3 and 4.
        RuleDef {
            amount: rat(1, 30),
            precondition: KingIsolated,
            variants: orbit(&[(3, 0), (4, 0)], &[(2, 0)], Determined((3, 0))),
        },
        // Rule 3: knight-and-extension pair (2,1),(3,1).
        RuleDef {
            amount: rat(1, 12),
            precondition: Ball2Isolated,
            variants: orbit(&[(2, 1), (3, 1)], &[], Inferred((2, 1))),
        },
        // Rule 4: knight-and-diagonal pair (2,1),(2,2).
        RuleDef {
            amount: rat(7, 60),
            precondition: Ball2Isolated,
            variants: orbit(&[(2, 1), (2, 2)], &[], Inferred((2, 1))),
        },
        // Rule 5: axis codeword at distance 2 with one off-axis neighbor.
        RuleDef {
            amount: rat(1, 30),
            precondition: KingAxisLimited,
            variants: orbit(&[(2, 0), (2, 1)], &[], Inferred((2, 0))),
        },
        // Rule 6: full column of three at x=2.
        RuleDef {
            amount: rat(1, 20),
            precondition: KingAxisLimited,
            variants: orbit(&[(2, -1), (2, 0), (2, 1)], &[], Inferred((2, 0))),
        },
        // Rule 7: axis codeword at distance 3 plus a knight codeword that
        // is the only codeword of its own 1-ball.
        RuleDef {
            amount: rat(7, 60),
            precondition: Ball2Isolated,
            variants: orbit(
                &[(3, 0), (2, 1)],
                &[(1, 1), (2, 0), (2, 2), (3, 1)],
                Determined((2, 1)),
            ),
        },
        // Rule 8: both far diagonals and the axis point at 3, with the
        // surrounding ring explicitly empty.
        RuleDef {
            amount: rat(1, 20),
            precondition: Ball2Isolated,
            variants: orbit(
                &[(2, -2), (2, 2), (3, 0)],
                &[(2, -1), (3, -1), (2, 1), (3, 1), (4, 0), (1, -2), (1, 2)],
                Determined((3, 0)),
            ),
        },
        // Rule 9: axis codeword at distance 2 flanked by both knights,
        // with the column neighbors empty.
        RuleDef {
            amount: rat(7, 60),
            precondition: KingAxisLimited,
            variants: orbit(
                &[(2, 0), (1, -2), (1, 2)],
                &[(2, -1), (2, 1)],
                Determined((2, 0)),
            ),
        },
        // Rule 10: both knights plus the axis point at 4, with column 3
        // and the far diagonals empty; receiver chosen by I-set
        // difference between the knights.
        RuleDef {
            amount: rat(7, 60),
            precondition: Ball2Isolated,
            variants: orbit(
                &[(2, -1), (2, 1), (4, 0)],
                &[(3, -1), (3, 0), (3, 1), (2, -2), (2, 2)],
                Conditional((2, -1), (2, 1)),
            ),
        },
    ];
    debug_assert_eq!(
        defs.iter().map(|d| d.variants.len()).collect::<Vec<_>>(),
        vec![8, 4, 8, 8, 8, 4, 8, 4, 4, 4]
    );
    defs
}

/// Offsets referenced by the sender preconditions.
pub(crate) fn king_offsets() -> Vec<(i32, i32)> {
    ball_offsets(Metric::Chebyshev, 1)
}

pub(crate) const AXIS_OFFSETS: [(i32, i32); 4] = [(-2, 0), (0, -2), (0, 2), (2, 0)];

/// Sender-side facts shared by every rule's precondition.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SenderContext {
    pub(crate) king_isolated: bool,
    pub(crate) ball2_isolated: bool,
    pub(crate) axis_codewords: usize,
}

impl SenderContext {
    pub(crate) fn allows(&self, pre: Precondition) -> bool {
        match pre {
            Precondition::KingIsolated => self.king_isolated,
            Precondition::Ball2Isolated => self.ball2_isolated,
            Precondition::KingAxisLimited => self.king_isolated && self.axis_codewords <= 1,
        }
    }
}

impl RuleVariant {
    pub(crate) fn matches(&self, is_codeword: impl Fn(i32, i32) -> bool) -> bool {
        self.on.iter().all(|&(x, y)| is_codeword(x, y))
            && self.off.iter().all(|&(x, y)| !is_codeword(x, y))
    }
}
