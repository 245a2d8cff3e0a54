//! Closed-form bounds on small minimal blocking sets, evaluated exactly.
//!
//! Everything is a `BigRational` because several formulas contain powers
//! of p0 with negative exponents at small parameters (for instance
//! `3 p0^(hk-h-3)` with h = k = 2). Callers decide how to compare.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Q = BigRational;

pub fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// `base^exp` for any integer exponent.
pub fn pw(base: u64, exp: i64) -> Q {
    let b = Q::from_integer(BigInt::from(base));
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b, (-exp) as usize).recip()
    }
}

pub fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Exact decimal-free rendering: `a` or `a/b`.
pub fn show(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `3(q^k + 1)/2`; a set is small when strictly below this.
pub fn small_threshold(q: u64, k: i64) -> Q {
    int(3) * (pw(q, k) + int(1)) / int(2)
}

/// Lower bound on a non-trivial k-blocking set with exponent e in PG(n,p^t).
pub fn grootte(p: u64, t: i64, k: i64, e: i64) -> Q {
    pw(p, t * k) + pw(p, t * k - e) - pw(p, t * k - 2 * e)
}

/// The sharper size bound from which [`grootte`] is derived.
pub fn szonyi_iv(p: u64, t: i64, k: i64, e: i64) -> Q {
    let pe = pw(p, e);
    let inner = (pw(p, t * k) / &pe + int(1)) / (&pe + int(1));
    pw(p, t * k) + int(1) + pe * Q::from_integer(ceil(&inner))
}

/// Below this an (n-k+s)-space is small.
pub fn gap_low(p0: u64, h: i64, s: i64) -> Q {
    let hs = h * s;
    pw(p0, hs) + pw(p0, hs - 1) + pw(p0, hs - 2) + int(3) * pw(p0, hs - 3)
}

/// Above this an (n-k+s)-space is large.
pub fn gap_high(p0: u64, h: i64, s: i64) -> Q {
    let hs = h * s;
    pw(p0, hs + 1) - pw(p0, hs - 1) - pw(p0, hs - 2) - int(3) * pw(p0, hs - 3)
}

/// Lower bound on points off B and off every secant, with the denominator
/// `p0^h + 1` exactly as printed.
pub fn lemma6_printed(p0: u64, h: i64, n: i64, k: i64) -> Q {
    lemma6_with_denominator(p0, h, n, k, pw(p0, h) + int(1))
}

/// Same bound with the point count of PG(n, p0^h), i.e. denominator `p0^h - 1`.
pub fn lemma6_sharp(p0: u64, h: i64, n: i64, k: i64) -> Q {
    lemma6_with_denominator(p0, h, n, k, pw(p0, h) - int(1))
}

fn lemma6_with_denominator(p0: u64, h: i64, n: i64, k: i64, den: Q) -> Q {
    let hk = h * k;
    (pw(p0, h * (n + 1)) - int(1)) / den
        - (pw(p0, 2 * hk - 2) + int(2) * pw(p0, 2 * hk - 3)) * (pw(p0, h) + int(1))
        - pw(p0, hk)
        - pw(p0, hk - 1)
        - pw(p0, hk - 2)
        - int(3) * pw(p0, hk - 3)
}

/// Number of points of PG(n-1, p0^h), which the printed count must exceed.
pub fn hyperplane_points(p0: u64, h: i64, n: i64) -> Q {
    (pw(p0, h * n) - int(1)) / (pw(p0, h) - int(1))
}

/// (p0+1)-secants through a point on one, k = 1.
pub fn lemma1(p0: u64, h: i64) -> Q {
    pw(p0, h - 1) - int(4) * pw(p0, h - 2) + int(1)
}

/// Large (n-k+1)-spaces through an (n-k)-space meeting B in p0+1 points.
pub fn large(p0: u64, h: i64, k: i64) -> Q {
    int(3) * pw(p0, h * k - h - 3)
}

/// `(p0^(hk)-1)/(p0^h-1)`: the (n-k+1)-spaces through an (n-k)-space.
pub fn spaces_through(p0: u64, h: i64, k: i64) -> Q {
    (pw(p0, h * k) - int(1)) / (pw(p0, h) - int(1))
}

/// Upper bound on |B| used throughout the counting arguments.
pub fn size_ceiling(p0: u64, h: i64, k: i64) -> Q {
    gap_low(p0, h, k)
}

/// Largest integer y allowed by the counting inequality behind [`large`].
pub fn large_from_proof(p0: u64, h: i64, k: i64) -> BigInt {
    let a = pw(p0, h + 1) - pw(p0, h - 1) - pw(p0, h - 2) - int(3) * pw(p0, h - 3) - int(p0 as i64) - int(1);
    let c = pw(p0, h) + pw(p0, h - 1) - pw(p0, h - 2) - int(p0 as i64) - int(1);
    let rest = size_ceiling(p0, h, k) - spaces_through(p0, h, k) * &c - int(p0 as i64) - int(1);
    floor(&(rest / (a - c)))
}

/// (p0+1)-secants through a point of B on one, k > 1.
pub fn aantalsecanten(p0: u64, h: i64, k: i64) -> Q {
    (spaces_through(p0, h, k) - large(p0, h, k)) * (pw(p0, h - 1) - int(4) * pw(p0, h - 2)) + int(1)
}

/// Large (n-k+1)-spaces through a tangent (n-k)-space.
pub fn hypervlakken_i(p0: u64, h: i64, k: i64) -> Q {
    pw(p0, h * k - h - 2) + int(4) * pw(p0, h * k - h - 3) - int(1)
}

/// Largest integer y allowed by the counting inequality behind [`hypervlakken_i`].
pub fn hypervlakken_i_from_proof(p0: u64, h: i64, k: i64) -> BigInt {
    let a = pw(p0, h + 1) - pw(p0, h - 1) - pw(p0, h - 2) - int(3) * pw(p0, h - 3) - int(1);
    let c = pw(p0, h);
    let rest = size_ceiling(p0, h, k) - spaces_through(p0, h, k) * &c - int(1);
    floor(&(rest / (a - c)))
}

/// Small (n-k+1)-spaces through a tangent (n-k)-space carrying a (p0+1)-secant through P.
pub fn situatie(p0: u64, h: i64, k: i64) -> Q {
    pw(p0, h * k - h) - int(5) * pw(p0, h * k - h - 1)
}

/// Size of a small (n-k+s)-space's trace on B.
pub fn handig_i(p0: u64, h: i64, s: i64) -> Q {
    (pw(p0, h * s + 1) - int(1)) / (int(p0 as i64) - int(1))
}

/// Large (n-1)-spaces through a small (n-2)-space containing a (p0+1)-secant.
pub fn handig_iv(p0: u64, h: i64) -> Q {
    int(4) * pw(p0, h - 3)
}

/// (p0+1)-secants through a point on one, planar case, `|B| = q + kappa`.
pub fn sziklai_i(q: u64, p0: u64, kappa: i64) -> Q {
    int(q as i64) / int(p0 as i64) - int(3) * (int(kappa) - int(1)) / int(p0 as i64) + int(2)
}

/// Points on W in the final counting step; must exceed `(p0^(hk)-1)/(p0-1)`.
pub fn span_point_count(p0: u64, h: i64, k: i64) -> Q {
    aantalsecanten(p0, h, k) * int(p0 as i64) + int(1)
}
