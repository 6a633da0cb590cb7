//! Exponential dominance on `Σ = n·μ_n` and the Stokes directions of the
//! pulled-back system.
//!
//! Angles are exact fractions of a full turn ([`Turn`]) so that genericity is
//! decided without rounding.

use std::cmp::Reverse;
use std::f64::consts::TAU;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::check_coprime;
use crate::error::Result;

/// An angle as an exact fraction of `2π`, normalised into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Turn(Ratio<i64>);

impl Turn {
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        let frac = r - r.floor();
        Turn(frac)
    }

    pub fn zero() -> Self {
        Turn(Ratio::zero())
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    pub fn radians(&self) -> f64 {
        TAU * self.num() as f64 / self.den() as f64
    }

    /// Renders `p/q·2π`, or `0` for the zero angle.
    pub fn describe(&self) -> String {
        if self.0.is_zero() {
            "0".into()
        } else {
            format!("{}/{}·2π", self.num(), self.den())
        }
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Serialize, Deserialize)]
struct TurnRepr {
    num: i64,
    den: i64,
    of: String,
}

impl Serialize for Turn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TurnRepr { num: self.num(), den: self.den(), of: "2pi".into() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Turn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TurnRepr::deserialize(d)?;
        if repr.of != "2pi" {
            return Err(D::Error::custom(format!("angle unit must be 2pi, got {}", repr.of)));
        }
        if repr.den <= 0 {
            return Err(D::Error::custom("angle denominator must be positive"));
        }
        Ok(Turn::new(repr.num, repr.den))
    }
}

/// The exponents `k` of `n·ζ_nᵏ`, smallest first under `Re(s·𝔟)` with
/// `𝔟 = e^{2πi/(3n)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceOrder {
    pub n: usize,
    pub ascending: Vec<usize>,
}

impl DominanceOrder {
    pub fn descending(&self) -> Vec<usize> {
        self.ascending.iter().rev().copied().collect()
    }

    /// Position of exponent `k` in the ascending list.
    pub fn position(&self, k: usize) -> Option<usize> {
        self.ascending.iter().position(|&j| j == k)
    }

    /// `1 > ζ^6 > ζ > …` style chain.
    pub fn chain(&self) -> String {
        self.descending()
            .iter()
            .map(|&k| match k {
                0 => "1".to_string(),
                1 => "ζ".to_string(),
                _ => format!("ζ^{k}"),
            })
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

/// `D(k) = min(3k+1, 3(n−k)−1)`; `Re(ζ_nᵏ𝔟) = cos(2π·D(k)/(3n))`, so a larger
/// `D` means a smaller real part.
pub fn dominance_key(n: usize, k: usize) -> usize {
    (3 * k + 1).min(3 * (n - k) - 1)
}

pub fn dominance_order(n: usize) -> DominanceOrder {
    assert!(n >= 1, "dominance order needs n ≥ 1");
    let mut ascending: Vec<usize> = (0..n).collect();
    ascending.sort_by_key(|&k| Reverse(dominance_key(n, k)));
    DominanceOrder { n, ascending }
}

/// Floating-point reference: sort by `Re(ζ_nᵏ·e^{2πi/(3n)})`. Also returns
/// the smallest gap between consecutive real parts.
pub fn dominance_order_float(n: usize) -> (DominanceOrder, f64) {
    let re = |k: usize| (TAU * (3 * k + 1) as f64 / (3 * n) as f64).cos();
    let mut ascending: Vec<usize> = (0..n).collect();
    ascending.sort_by(|&a, &b| re(a).total_cmp(&re(b)));
    let gap = ascending
        .windows(2)
        .map(|w| re(w[1]) - re(w[0]))
        .fold(f64::INFINITY, f64::min);
    (DominanceOrder { n, ascending }, gap)
}

/// The admissibility conditions on `(𝔞, 𝔟)` for `Σ = n·μ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbCheck {
    pub n: usize,
    /// `arg 𝔟` as a fraction of a turn.
    pub arg_b: Turn,
    /// `arg 𝔞` with `𝔞 = i/𝔟`.
    pub arg_a: Turn,
    /// `Re(𝔞𝔟) = 0`, i.e. `arg 𝔞 + arg 𝔟 ≡ ±1/4`.
    pub orthogonal: bool,
    /// `Re((s − s')𝔟) ≠ 0` for all distinct `s, s'`, via distinct `D` values.
    pub separating: bool,
}

impl AbCheck {
    pub fn passed(&self) -> bool {
        self.orthogonal && self.separating
    }
}

pub fn check_ab(n: usize) -> AbCheck {
    let nn = n as i64;
    let arg_b = Turn::new(1, 3 * nn);
    let arg_a = Turn::from_ratio(Ratio::new(1, 4) - arg_b.ratio());
    let sum = Turn::from_ratio(arg_a.ratio() + arg_b.ratio());
    let orthogonal = sum == Turn::new(1, 4) || sum == Turn::new(3, 4);
    let mut keys: Vec<usize> = (0..n).map(|k| dominance_key(n, k)).collect();
    keys.sort_unstable();
    let separating = keys.windows(2).all(|w| w[0] != w[1]);
    AbCheck { n, arg_b, arg_a, orthogonal, separating }
}

/// One Stokes direction of the pair `(i, j)`, `i > j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StokesDirection {
    pub angle: Turn,
    pub pair: (usize, usize),
}

/// All `θ` with `Re((ζ_nⁱ − ζ_nʲ)·e^{i(n+m)θ}) = 0`, sorted by angle.
///
/// With `ζⁱ − ζʲ = r·e^{iψ}`, `ψ = π(i+j)/n + π/2` for `i > j`, the solutions
/// are `θ = (π/2 + πt − ψ)/(n+m)`, i.e. `(n·t − (i+j))/(2n(n+m))` turns.
pub fn stokes_directions(n: usize, m: usize) -> Result<Vec<StokesDirection>> {
    check_coprime(n, m)?;
    let (nn, nm) = (n as i64, (n + m) as i64);
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) * (n + m));
    for i in 0..n {
        for j in 0..i {
            let s = (i + j) as i64;
            for t in 0..2 * nm {
                out.push(StokesDirection { angle: Turn::new(nn * t - s, 2 * nn * nm), pair: (i, j) });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `θ_0 = 1/(3n(n+m))` of a turn.
pub fn theta0(n: usize, m: usize) -> Turn {
    Turn::new(1, 3 * (n * (n + m)) as i64)
}

pub fn is_generic(theta: Turn, n: usize, m: usize) -> Result<bool> {
    Ok(stokes_directions(n, m)?.iter().all(|d| d.angle != theta))
}

/// Sanity check of one direction against the defining equation in floating
/// point; used by tests.
pub fn direction_residual(d: &StokesDirection, n: usize, m: usize) -> f64 {
    let zeta = |k: usize| num_complex::Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
    let diff = zeta(d.pair.0) - zeta(d.pair.1);
    let rot = num_complex::Complex64::from_polar(1.0, (n + m) as f64 * d.angle.radians());
    (diff * rot).re
}
