//! Exact count oracles: binomials, polygon Catalan numbers `a_l`, the
//! half-integer sequence `b_m` with its recursion and closed form, and the
//! generating-function identity `2xfg = g − 1/2` tying them together.
//!
//! All arithmetic is exact integer / half-integer; no floating point.

use crate::quiver::{DiagramSpec, Family};
use crate::{Error, Result};

/// Binomial coefficient with exact stepwise division.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut res: u128 = 1;
    for i in 0..k {
        res = res * (n - i) as u128 / (i + 1) as u128;
    }
    res
}

/// Number of triangulations of the regular `l`-gon,
/// `a_l = C(2l−4, l−2) / (l−1)` for `l ≥ 2` (so `a_2 = a_3 = 1`).
pub fn catalan_a(l: u32) -> u64 {
    assert!(l >= 2, "a_l needs l >= 2");
    let num = binomial(2 * l as u64 - 4, l as u64 - 2);
    let den = (l - 1) as u128;
    assert_eq!(num % den, 0, "Catalan division must be exact");
    u64::try_from(num / den).expect("a_l overflows u64")
}

/// Exact multiple of 1/2, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfInteger {
    twice: i128,
}

impl HalfInteger {
    pub fn from_integer(n: i128) -> HalfInteger {
        HalfInteger { twice: 2 * n }
    }

    pub fn one_half() -> HalfInteger {
        HalfInteger { twice: 1 }
    }

    pub fn from_twice(twice: i128) -> HalfInteger {
        HalfInteger { twice }
    }

    pub fn twice(self) -> i128 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn mul_int(self, k: i128) -> HalfInteger {
        HalfInteger {
            twice: self.twice * k,
        }
    }

    /// Doubling always lands back in the integers.
    pub fn double(self) -> HalfInteger {
        HalfInteger::from_integer(self.twice)
    }
}

impl std::ops::Add for HalfInteger {
    type Output = HalfInteger;

    fn add(self, other: HalfInteger) -> HalfInteger {
        HalfInteger {
            twice: self.twice + other.twice,
        }
    }
}

impl std::fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Closed form `b_i = C(2i−1, i)` for `i ≥ 1`.
pub fn b_closed(i: u32) -> u128 {
    assert!(i >= 1);
    binomial(2 * i as u64 - 1, i as u64)
}

/// The sequence `b_0 = 1/2, b_1, …, b_upTo` computed from the recursion
/// `b_m = 2 Σ_{i=2}^{m+1} a_i b_{m−i+1}`, each value checked against the
/// closed form `C(2i−1, i)`.
pub fn b_sequence(up_to: u32) -> Result<Vec<HalfInteger>> {
    let mut seq = vec![HalfInteger::one_half()];
    for m in 1..=up_to {
        let mut acc = HalfInteger::from_integer(0);
        for i in 2..=m + 1 {
            let a = catalan_a(i) as i128;
            acc = acc + seq[(m + 1 - i) as usize].mul_int(a);
        }
        let rec = acc.double();
        let closed = HalfInteger::from_integer(b_closed(m) as i128);
        if rec != closed {
            return Err(Error::RecursionMismatch {
                index: m,
                recursion: rec.to_string(),
                closed: closed.to_string(),
            });
        }
        seq.push(rec);
    }
    Ok(seq)
}

/// The two closed-form counts attached to a diagram: maximal 1-orthogonal
/// subsets of the quiver quotient, and of the polygon chord set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedCounts {
    pub quiver: u64,
    pub dissection: u64,
}

/// Closed forms of the two counting theorems, with every division checked to
/// be exact and, for type `D`, the fiber reconciliation
/// `quiver = C(2m,m) + 2·(dissection − C(2m,m))` asserted.
pub fn expected_counts(spec: &DiagramSpec) -> ExpectedCounts {
    let m = spec.m() as u64;
    let (quiver, dissection) = match spec.family() {
        Family::A => {
            let num = binomial(2 * m + 2, m + 1);
            assert_eq!(num % (m as u128 + 2), 0);
            let c = u64::try_from(num / (m as u128 + 2)).expect("count overflows u64");
            (c, c)
        }
        Family::B | Family::C => {
            let c = u64::try_from(binomial(2 * m, m)).expect("count overflows u64");
            (c, c)
        }
        Family::D => {
            let central = binomial(2 * m, m);
            let num = (3 * m as u128 + 1) * central;
            assert_eq!(num % (m as u128 + 1), 0);
            let quiver = u64::try_from(num / (m as u128 + 1)).expect("count overflows u64");
            let dissection = u64::try_from(binomial(2 * m + 1, m)).expect("count overflows u64");
            let fiber_one = u64::try_from(central).expect("count overflows u64");
            assert_eq!(quiver, fiber_one + 2 * (dissection - fiber_one));
            (quiver, dissection)
        }
    };
    ExpectedCounts { quiver, dissection }
}

/// Verifies the formal power-series identity `2xfg = g − 1/2` coefficientwise
/// up to the given order, where `f = Σ a_{i+2} x^i` and `g = Σ b_i x^i`.
pub fn generating_function_check(order: u32) -> Result<()> {
    let b = b_sequence(order)?;
    if b[0] != HalfInteger::one_half() {
        return Err(Error::CoefficientMismatch {
            order: 0,
            lhs: b[0].to_string(),
            rhs: HalfInteger::one_half().to_string(),
        });
    }
    for k in 1..=order {
        let mut acc = HalfInteger::from_integer(0);
        for i in 0..k {
            let f_i = catalan_a(i + 2) as i128;
            acc = acc + b[(k - 1 - i) as usize].mul_int(f_i);
        }
        let lhs = acc.double();
        let rhs = b[k as usize];
        if lhs != rhs {
            return Err(Error::CoefficientMismatch {
                order: k,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(39, 20), 68923264410);
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan_a(3), 1);
        assert_eq!(catalan_a(4), 2);
        assert_eq!(catalan_a(5), 5);
        assert_eq!(catalan_a(6), 14);
        assert_eq!(catalan_a(8), 132);
    }

    #[test]
    fn b_values() {
        let b = b_sequence(6).unwrap();
        assert_eq!(b[0], HalfInteger::one_half());
        assert_eq!(b[1], HalfInteger::from_integer(1));
        // b₂ = 2(a₂b₁ + a₃b₀) = 2(1 + 1/2) = 3 = C(3,2)
        assert_eq!(b[2], HalfInteger::from_integer(3));
        assert_eq!(b[4], HalfInteger::from_integer(35));
        assert_eq!(b_closed(4), 35);
    }

    #[test]
    fn b_recursion_matches_closed_form_deep() {
        let b = b_sequence(20).unwrap();
        for i in 1..=20u32 {
            assert_eq!(b[i as usize].twice(), 2 * b_closed(i) as i128);
        }
    }

    #[test]
    fn expected_count_values() {
        let e = |f, m| expected_counts(&DiagramSpec::new(f, m).unwrap());
        assert_eq!(e(Family::A, 3).quiver, 14);
        assert_eq!(e(Family::A, 5).quiver, 132);
        assert_eq!(e(Family::A, 5).dissection, 132);
        assert_eq!(e(Family::B, 2).quiver, 6);
        assert_eq!(e(Family::C, 4).quiver, 70);
        assert_eq!(e(Family::C, 4).dissection, 70);
        assert_eq!(e(Family::D, 3).quiver, 50);
        assert_eq!(e(Family::D, 3).dissection, 35);
        assert_eq!(e(Family::D, 4).quiver, 182);
        assert_eq!(e(Family::D, 4).dissection, 126);
    }

    #[test]
    fn divisions_exact_up_to_20() {
        for m in 1..=20 {
            expected_counts(&DiagramSpec::new(Family::A, m).unwrap());
            expected_counts(&DiagramSpec::new(Family::D, m.max(2)).unwrap());
        }
    }

    #[test]
    fn generating_function_low_orders() {
        // order 1 is the identity 2·a₂·b₀ = b₁.
        generating_function_check(1).unwrap();
        generating_function_check(12).unwrap();
        generating_function_check(20).unwrap();
    }

    #[test]
    fn half_integer_display() {
        assert_eq!(HalfInteger::one_half().to_string(), "1/2");
        assert_eq!(HalfInteger::from_integer(-4).to_string(), "-4");
        assert_eq!(HalfInteger::from_twice(7).to_string(), "7/2");
    }
}
