//! Bitmask kernel for the exhaustive stage-2 sweep.
//!
//! Candidate codes live inside the radius-4 Manhattan ball around the
//! origin: 41 vertices, one bit each, ordered by `(y, x)` ascending. Every
//! per-candidate quantity — the thirteen I-sets of the radius-2 ball, the
//! share, the rule outflows — becomes masked AND / popcount work, and the
//! share comparison happens in integers over a fixed common denominator.
//! The general `Region`-based paths compute the same values; tests hold
//! the two routes equal.

use crate::discharging::{RuleSet, SenderContext};
use crate::error::{Error, Result};
use crate::lattice::{ball_offsets, GridPoint, Metric};
use num_integer::Integer;
use std::collections::BTreeMap;

/// Vertices of the radius-4 ball (window), radius-2 ball, and the two
/// enumeration rings, each ordered by `(y, x)` ascending.
pub(crate) struct Window {
    offsets: Vec<(i32, i32)>,
    index: BTreeMap<(i32, i32), usize>,
    /// For each radius-2 vertex `u` (in ring order), the mask of `B_2(u)`.
    iset_masks: Vec<u64>,
    ring3: Vec<(i32, i32)>,
    ring4: Vec<(i32, i32)>,
    ring3_lo: [u64; 256],
    ring3_hi: [u64; 16],
    ring4_lo: [u64; 256],
    ring4_hi: [u64; 256],
}

/// Window vertex count: `2·4² + 2·4 + 1`.
pub(crate) const WINDOW_BITS: usize = 41;
/// Radius-2 ball vertex count.
pub(crate) const BALL2_BITS: usize = 13;
/// `lcm(1..=13)`, the common denominator of all per-vertex share terms.
const SHARE_DENOM: i64 = 360_360;

impl Window {
    pub(crate) fn new() -> Window {
        let offsets = ball_offsets(Metric::Manhattan, 4);
        debug_assert_eq!(offsets.len(), WINDOW_BITS);
        let index: BTreeMap<(i32, i32), usize> =
            offsets.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let ball2 = ball_offsets(Metric::Manhattan, 2);
        debug_assert_eq!(ball2.len(), BALL2_BITS);
        let iset_masks = ball2
            .iter()
            .map(|&(ux, uy)| {
                let mut mask = 0u64;
                for &(dx, dy) in &ball2 {
                    mask |= 1 << index[&(ux + dx, uy + dy)];
                }
                mask
            })
            .collect();
        let ring = |d: i32| -> Vec<(i32, i32)> {
            offsets
                .iter()
                .copied()
                .filter(|&(x, y)| x.abs() + y.abs() == d)
                .collect()
        };
        let (ring3, ring4) = (ring(3), ring(4));
        debug_assert_eq!((ring3.len(), ring4.len()), (12, 16));
        let spread = |points: &[(i32, i32)], out: &mut [u64]| {
            for (pattern, slot) in out.iter_mut().enumerate() {
                let mut mask = 0u64;
                for (j, p) in points.iter().enumerate() {
                    if pattern >> j & 1 == 1 {
                        mask |= 1 << index[p];
                    }
                }
                *slot = mask;
            }
        };
        let mut ring3_lo = [0u64; 256];
        let mut ring3_hi = [0u64; 16];
        let mut ring4_lo = [0u64; 256];
        let mut ring4_hi = [0u64; 256];
        spread(&ring3[..8], &mut ring3_lo);
        spread(&ring3[8..], &mut ring3_hi);
        spread(&ring4[..8], &mut ring4_lo);
        spread(&ring4[8..], &mut ring4_hi);
        Window {
            offsets,
            index,
            iset_masks,
            ring3,
            ring4,
            ring3_lo,
            ring3_hi,
            ring4_lo,
            ring4_hi,
        }
    }

    pub(crate) fn ring3(&self) -> &[(i32, i32)] {
        &self.ring3
    }

    pub(crate) fn ring4(&self) -> &[(i32, i32)] {
        &self.ring4
    }

    /// Window mask of a 12-bit subset of the inner ring.
    pub(crate) fn spread_ring3(&self, subset: u16) -> u64 {
        debug_assert!(subset < 1 << 12);
        self.ring3_lo[(subset & 0xff) as usize] | self.ring3_hi[(subset >> 8) as usize]
    }

    /// Window mask of a 16-bit subset of the outer ring.
    pub(crate) fn spread_ring4(&self, subset: u16) -> u64 {
        self.ring4_lo[(subset & 0xff) as usize] | self.ring4_hi[(subset >> 8) as usize]
    }

    pub(crate) fn mask_of(
        &self,
        points: impl IntoIterator<Item = GridPoint>,
    ) -> Result<u64> {
        let mut mask = 0u64;
        for p in points {
            let bit = self.index.get(&(p.x, p.y)).ok_or_else(|| {
                Error::InvalidParameter {
                    reason: format!("{p} lies outside the radius-4 window"),
                }
            })?;
            mask |= 1 << bit;
        }
        Ok(mask)
    }

    /// Points of a window mask, in bit (= `(y, x)`) order.
    pub(crate) fn points_of(&self, mask: u64) -> Vec<GridPoint> {
        self.offsets
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(x, y))| GridPoint::new(x, y))
            .collect()
    }
}

/// A rule set lowered onto the window: per-variant bit patterns and
/// integer amounts over one common denominator.
pub(crate) struct CompiledRules {
    iset_masks: [u64; BALL2_BITS],
    /// `denom / n` for each I-set size `n` (index 0 unused).
    share_weights: [i64; BALL2_BITS + 1],
    rules: Vec<CompiledRule>,
    king_mask: u64,
    ball2_mask: u64,
    axis_mask: u64,
    origin_bit: u64,
    /// Common denominator of every integer amount here.
    denom: i64,
}

struct CompiledRule {
    precondition: crate::discharging::Precondition,
    /// Amount over `denom`.
    unit: i64,
    variants: Vec<(u64, u64)>, // (on, off)
}

fn to_i64(v: i128, what: &str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::InvalidParameter {
        reason: format!("{what} overflows the kernel's integer range"),
    })
}

impl CompiledRules {
    pub(crate) fn new(rules: &RuleSet, window: &Window) -> Result<CompiledRules> {
        let mut denom = SHARE_DENOM as i128;
        for def in rules.defs() {
            denom = denom.lcm(def.amount.denom());
        }
        let mut share_weights = [0i64; BALL2_BITS + 1];
        for (n, w) in share_weights.iter_mut().enumerate().skip(1) {
            *w = to_i64(denom / n as i128, "share weight")?;
        }
        let compiled = rules
            .defs()
            .iter()
            .map(|def| {
                let unit = to_i64(
                    def.amount.numer() * (denom / def.amount.denom()),
                    "rule amount",
                )?;
                let variants = def
                    .variants
                    .iter()
                    .map(|v| {
                        let on = window.mask_of(
                            v.on.iter().map(|&(x, y)| GridPoint::new(x, y)),
                        )?;
                        let off = window.mask_of(
                            v.off.iter().map(|&(x, y)| GridPoint::new(x, y)),
                        )?;
                        Ok((on, off))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CompiledRule {
                    precondition: def.precondition,
                    unit,
                    variants,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mask_from = |offsets: &[(i32, i32)]| -> u64 {
            let mut mask = 0u64;
            for &p in offsets {
                if p != (0, 0) {
                    mask |= 1 << window.index[&p];
                }
            }
            mask
        };
        Ok(CompiledRules {
            iset_masks: window
                .iset_masks
                .as_slice()
                .try_into()
                .expect("thirteen radius-2 vertices"),
            share_weights,
            rules: compiled,
            king_mask: mask_from(&ball_offsets(Metric::Chebyshev, 1)),
            ball2_mask: mask_from(&ball_offsets(Metric::Manhattan, 2)),
            axis_mask: mask_from(&[(-2, 0), (0, -2), (0, 2), (2, 0)]),
            origin_bit: 1 << window.index[&(0, 0)],
            denom: to_i64(denom, "share denominator")?,
        })
    }

    pub(crate) fn denom(&self) -> i64 {
        self.denom
    }

    /// Modified share of the origin (numerator over [`denom`](Self::denom))
    /// for the candidate code `k`, or `None` when `k` does not identify
    /// the radius-2 ball.
    pub(crate) fn evaluate(&self, k: u64) -> Option<i64> {
        debug_assert!(k & self.origin_bit != 0, "candidates contain the origin");
        let mut isets = [0u64; BALL2_BITS];
        for (slot, mask) in isets.iter_mut().zip(&self.iset_masks) {
            let i = k & mask;
            if i == 0 {
                return None;
            }
            *slot = i;
        }
        let mut sorted = isets;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let mut num = 0i64;
        for i in isets {
            num += self.share_weights[i.count_ones() as usize];
        }
        let ctx = SenderContext {
            king_isolated: k & self.king_mask == 0,
            ball2_isolated: k & self.ball2_mask == 0,
            axis_codewords: (k & self.axis_mask).count_ones() as usize,
        };
        for rule in &self.rules {
            if !ctx.allows(rule.precondition) {
                continue;
            }
            for &(on, off) in &rule.variants {
                if k & on == on && k & off == 0 {
                    num -= rule.unit;
                }
            }
        }
        Some(num)
    }
}
