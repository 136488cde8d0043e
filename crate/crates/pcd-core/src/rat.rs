//! Exact nonnegative rationals and the fixed-point rendering used by the
//! bound tables.

pub use num::rational::Ratio;

/// Nonnegative exact rational; all qualities and bounds in this crate fit.
pub type Rat = Ratio<u64>;

/// Renders `r` truncated (not rounded) to four decimal places, matching how
/// the reference tables print values like 24/13 as `1.8461`.
pub fn dec4_trunc(r: Rat) -> String {
    let int = r.numer() / r.denom();
    let rem = r.numer() % r.denom();
    // rem * 10000 fits u64 for every value this crate produces, but use u128
    // so pathological inputs cannot wrap.
    let frac = (rem as u128 * 10_000) / (*r.denom() as u128);
    format!("{int}.{frac:04}")
}

/// Renders `r` as an exact fraction, `n/d` (or just `n` when integral).
pub fn exact(r: Rat) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
