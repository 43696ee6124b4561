//! Exact integer powers of the imaginary unit.

use num_complex::Complex64;

/// `i^k` for any integer `k`, reduced on the 4-cycle so no rounding enters.
#[inline]
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(-1)^k` as a float.
#[inline]
pub fn parity_sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle() {
        assert_eq!(i_pow(0), Complex64::new(1.0, 0.0));
        assert_eq!(i_pow(5), Complex64::new(0.0, 1.0));
        assert_eq!(i_pow(-1), Complex64::new(0.0, -1.0));
        assert_eq!(i_pow(-6), Complex64::new(-1.0, 0.0));
        for k in -12..12 {
            assert_eq!(i_pow(k) * i_pow(-k), Complex64::new(1.0, 0.0));
            assert_eq!(i_pow(k) * i_pow(1), i_pow(k + 1));
        }
    }

    #[test]
    fn parity() {
        assert_eq!(parity_sign(-3), -1.0);
        assert_eq!(parity_sign(4), 1.0);
    }
}
