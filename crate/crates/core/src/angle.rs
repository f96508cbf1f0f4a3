//! Angle helpers. All phases in this crate live on `[0, 2π)`.

pub use core::f64::consts::PI;

pub const TWO_PI: f64 = 2.0 * PI;

/// Two phases closer than this (mod 2π) are the same reflection choice.
pub const DEDUP_TOL: f64 = 1e-12;

/// Boundary comparison tolerance for interval work.
pub const BOUNDARY_EPS: f64 = 1e-9;

/// Maps any finite angle onto `[0, 2π)`.
///
/// Tiny negative inputs would round up to exactly `2π`; those fold to zero.
pub fn normalize(x: f64) -> f64 {
    let mut r = x % TWO_PI;
    if r < 0.0 {
        r += TWO_PI;
    }
    if r >= TWO_PI {
        0.0
    } else {
        r
    }
}

/// Shortest unsigned distance between two angles, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = normalize(a - b);
    if d > PI {
        TWO_PI - d
    } else {
        d
    }
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_maps_into_range() {
        assert_eq!(normalize(0.0), 0.0);
        assert_eq!(normalize(TWO_PI), 0.0);
        assert!((normalize(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!((normalize(5.0 * PI) - PI).abs() < 1e-12);
        let tiny = normalize(-1e-18);
        assert!((0.0..TWO_PI).contains(&tiny));
    }

    #[test]
    fn distance_wraps() {
        assert!((circular_distance(0.1, TWO_PI - 0.1) - 0.2).abs() < 1e-12);
        assert!((circular_distance(0.0, PI) - PI).abs() < 1e-15);
    }
}
