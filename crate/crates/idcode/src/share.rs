//! Exact share of a codeword and its grouped upper-bound estimate.
//!
//! The share of a codeword `c` at radius `r` is `Σ 1/|I(u)|` over all `u`
//! within distance `r` of `c`. Every quantity here is an exact rational;
//! there is no floating point on any verdict path.

use crate::codeset::{iset, CodeWindow};
use crate::error::{Error, Result};
use crate::lattice::{ball_region, GridPoint, Metric, Region, MAX_RADIUS};
use crate::{rat, Rational};
use std::collections::BTreeMap;

fn check_radius(r: u32) -> Result<()> {
    if r > MAX_RADIUS {
        return Err(Error::RadiusTooLarge {
            radius: r,
            max: MAX_RADIUS,
        });
    }
    Ok(())
}

/// Requires `c` to be a codeword and `B_{2r}(c)` to lie inside the support,
/// so every I-set touching `B_r(c)` is fully determined.
fn check_share_inputs(code: &CodeWindow, c: GridPoint, r: u32) -> Result<()> {
    check_radius(r)?;
    if !code.codewords().contains(c) {
        return Err(Error::NotACodeword { vertex: c });
    }
    if !ball_region(Metric::Manhattan, 2 * r, c).is_subset_of(code.support()) {
        return Err(Error::InsufficientWindow {
            center: c,
            radius: 2 * r,
        });
    }
    Ok(())
}

/// Exact share `Σ_{u ∈ B_r(c)} 1/|I(u)|`.
///
/// Errors if `c` is not a codeword, if the window is too small to determine
/// every I-set, or if some `u` has an empty I-set (the sum is undefined
/// there, not infinite).
pub fn share_exact(code: &CodeWindow, c: GridPoint, r: u32) -> Result<Rational> {
    check_share_inputs(code, c, r)?;
    let mut total = rat(0, 1);
    for u in ball_region(Metric::Manhattan, r, c).iter_top_down() {
        let size = iset(code, u, r)?.len();
        if size == 0 {
            return Err(Error::Uncovered { vertex: u });
        }
        total += rat(1, size as i128);
    }
    Ok(total)
}

/// Upper-bound estimate of the share from a subcode only.
///
/// Vertices of `B_r(c)` are grouped by their I-set with respect to
/// `subcode`; a group of `i` vertices sharing the I-set `I` contributes
/// `1/|I| + (i−1)/(|I|+1)`. Larger codes only refine these groups, so the
/// result bounds [`share_exact`] of any identifying code containing the
/// subcode from above.
pub fn share_estimate(subcode: &CodeWindow, c: GridPoint, r: u32) -> Result<Rational> {
    check_share_inputs(subcode, c, r)?;
    // Region's total order makes group iteration (hence the sum) canonical.
    let mut groups: BTreeMap<Region, i128> = BTreeMap::new();
    for u in ball_region(Metric::Manhattan, r, c).iter_top_down() {
        // c itself lies in every ball, so no group is empty.
        *groups.entry(iset(subcode, u, r)?).or_insert(0) += 1;
    }
    let mut total = rat(0, 1);
    for (i, count) in &groups {
        let size = i.len() as i128;
        total += rat(1, size) + rat(count - 1, size + 1);
    }
    Ok(total)
}
