//! Small numeric helpers shared across modules: u64 modular arithmetic
//! and float read-outs of huge exact integers.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn pow3_u64(k: u32) -> u64 {
    3u64.pow(k)
}

pub(crate) fn pow3_big(k: u32) -> BigUint {
    BigUint::from(3u32).pow(k)
}

pub(crate) fn pow2_big(a: u64) -> BigUint {
    BigUint::from(1u32) << a
}

/// Natural log of an arbitrary-precision natural (m ≥ 1).
///
/// Uses the top 128 bits plus bit-length · ln 2, so it stays accurate for
/// values far beyond f64 range; relative error is that of f64 `ln`.
pub(crate) fn ln_big(m: &BigUint) -> f64 {
    let bits = m.bits();
    if bits <= 128 {
        (m.to_u128().expect("fits by bit count") as f64).ln()
    } else {
        let top = (m >> (bits - 128)).to_u128().expect("128-bit window");
        (top as f64).ln() + (bits - 128) as f64 * std::f64::consts::LN_2
    }
}

/// num/den as f64 for exact naturals of any size (den ≥ 1).
///
/// Aligns the quotient to ~64 bits before converting, then rescales, so
/// a ratio near 1 of two 10000-bit integers comes out right instead of
/// inf/inf. Ratios outside f64 range saturate to inf or 0.
pub(crate) fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.bits() == 0 {
        return 0.0;
    }
    if num.bits() <= 96 && den.bits() <= 96 {
        return num.to_u128().unwrap() as f64 / den.to_u128().unwrap() as f64;
    }
    // Shift so the integer quotient carries 64-65 significant bits.
    let s: i64 = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if s >= 0 {
        (num << s as u64) / den
    } else {
        num / (den << (-s) as u64)
    };
    let q = q.to_u128().expect("aligned quotient is small") as f64;
    q * (-s as f64).exp2()
}

/// Check that 2 generates the full unit group modulo 3^n, i.e. its
/// multiplicative order is exactly φ(3^n) = 2·3^{n−1}.
pub(crate) fn two_generates_mod_3pow(n: u32) -> bool {
    let md = pow3_u64(n);
    let order = 2 * pow3_u64(n - 1);
    pow_mod(2, order, md) == 1
        && pow_mod(2, order / 2, md) != 1
        && (n == 1 || pow_mod(2, order / 3, md) != 1)
}

/// Discrete logarithm base 2 modulo 3^n: the unique x in [0, 2·3^{n−1})
/// with 2^x ≡ h (mod 3^n), or None when h is not a unit.
///
/// Splits the cyclic group of order 2·3^{n−1} into its 2-part (read from
/// h^{order/2} = ±1) and 3-part (base-3 digit lifting against a cube
/// root of unity), then recombines; the result is verified before
/// returning.
pub(crate) fn dlog2_mod3pow(h: u64, n: u32) -> Option<u64> {
    let md = pow3_u64(n);
    let h = h % md;
    if h.is_multiple_of(3) {
        return None;
    }
    if n == 1 {
        return Some(if h == 1 { 0 } else { 1 });
    }
    let order = 2 * pow3_u64(n - 1);
    let x2 = if pow_mod(h, order / 2, md) == 1 { 0 } else { 1 };
    // Remove the 2-part: b = h·g^{−x2} lies in ⟨g²⟩ of order 3^{n−1}.
    let g_inv = md.div_ceil(2); // (md+1)/2 = 2^{−1} mod the odd md
    let mut cur = if x2 == 1 { mul_mod(h, g_inv, md) } else { h };
    let order3 = pow3_u64(n - 1);
    let g3_inv = mul_mod(g_inv, g_inv, md);
    let w = pow_mod(4, order3 / 3, md);
    let w2 = mul_mod(w, w, md);
    let mut y = 0u64;
    let mut pw3 = 1u64;
    for _ in 0..n - 1 {
        let gamma = pow_mod(cur, order3 / (3 * pw3), md);
        let d = if gamma == 1 {
            0
        } else if gamma == w {
            1
        } else if gamma == w2 {
            2
        } else {
            return None;
        };
        if d > 0 {
            cur = mul_mod(cur, pow_mod(g3_inv, d * pw3, md), md);
            y += d * pw3;
        }
        pw3 *= 3;
    }
    let x = (x2 + 2 * y) % order;
    if pow_mod(2, x, md) == h {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn pow_mod_small_cases() {
        assert_eq!(pow_mod(2, 5, 9), 5); // 32 mod 9
        assert_eq!(pow_mod(2, 12, 27), 19);
        assert_eq!(pow_mod(7, 0, 13), 1);
        assert_eq!(pow_mod(10, 3, 1), 0);
    }

    #[test]
    fn ln_big_matches_f64_in_range() {
        for v in [1u64, 2, 3, 151, 993, u64::MAX] {
            let got = ln_big(&BigUint::from(v));
            let want = (v as f64).ln();
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn ln_big_beyond_f64() {
        // ln(2^10000) = 10000 ln 2
        let m = BigUint::from(1u32) << 10000u32;
        let want = 10000.0 * std::f64::consts::LN_2;
        assert!((ln_big(&m) - want).abs() <= 1e-9 * want);
    }

    #[test]
    fn ratio_of_huge_near_one() {
        // (2^9000 + 2^8000) / 2^9000 = 1 + 2^-1000 -> 1.0 in f64
        let num = (BigUint::from(1u32) << 9000u32) + (BigUint::from(1u32) << 8000u32);
        let den = BigUint::from(1u32) << 9000u32;
        let r = ratio_to_f64(&num, &den);
        assert_eq!(r, 1.0);
        // (2^9001 + small) / 2^9000 ~ 2.0
        let r2 = ratio_to_f64(&(&den << 1u32), &den);
        assert_eq!(r2, 2.0);
    }

    #[test]
    fn ratio_small_values() {
        let r = ratio_to_f64(&BigUint::from(32u32), &BigUint::from(27u32));
        assert!((r - 32.0 / 27.0).abs() < 1e-15);
        assert_eq!(ratio_to_f64(&BigUint::from(0u32), &BigUint::from(5u32)), 0.0);
    }

    #[test]
    fn two_generates_small_powers() {
        for n in 1..=12 {
            assert!(two_generates_mod_3pow(n), "n={n}");
        }
    }

    #[test]
    fn dlog_anchor_values() {
        assert_eq!(dlog2_mod3pow(19, 3), Some(12)); // 2^12 = 4096 ≡ 19 (mod 27)
        assert_eq!(dlog2_mod3pow(10, 3), Some(6)); // 2^6 = 64 ≡ 10 (mod 27)
        assert_eq!(dlog2_mod3pow(26, 3), Some(9)); // 2^9 = 512 ≡ 26 (mod 27)
        assert_eq!(dlog2_mod3pow(1, 3), Some(0));
        assert_eq!(dlog2_mod3pow(9, 3), None); // not a unit
        assert_eq!(dlog2_mod3pow(2, 1), Some(1));
        assert_eq!(dlog2_mod3pow(1, 1), Some(0));
    }

    #[test]
    fn dlog_matches_direct_scan() {
        for n in 2..=7u32 {
            let md = pow3_u64(n);
            let order = 2 * pow3_u64(n - 1);
            // build the table 2^x mod 3^n by direct iteration
            let mut pow = 1u64;
            for x in 0..order {
                assert_eq!(dlog2_mod3pow(pow, n), Some(x), "n={n} x={x}");
                pow = pow * 2 % md;
            }
            assert_eq!(pow, 1, "order of 2 mod 3^{n}");
        }
    }
}
