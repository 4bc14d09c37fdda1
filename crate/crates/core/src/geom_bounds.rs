//! Closed-form bounds: the Fejes Tóth bound on `A(3, φ)`, the Tammes
//! angles where it is tight, Harborth's planar contact count, and the
//! trivial contact bound `k(d) n / 2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Known kissing numbers `k(d)`.
pub const KISSING_TABLE: [(usize, u64); 6] =
    [(1, 2), (2, 6), (3, 12), (4, 24), (8, 240), (24, 196_560)];

pub fn kissing_number(d: usize) -> Option<u64> {
    KISSING_TABLE
        .iter()
        .find(|(dim, _)| *dim == d)
        .map(|(_, k)| *k)
}

/// Area of the regular spherical triangle with side `φ`.
pub fn delta_area(phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::Domain(format!("angle {phi} outside (0, π)")));
    }
    let c = phi.cos();
    let ratio = (c / (1.0 + c)).clamp(-1.0, 1.0);
    Ok(3.0 * ratio.acos() - PI)
}

/// `A(3, φ) <= 2π / Δ(φ) + 2`.
pub fn fejes_toth_bound(phi: f64) -> Result<f64> {
    let delta = delta_area(phi)?;
    if delta <= 0.0 {
        return Err(Error::Domain(format!(
            "triangle area {delta} is not positive at φ = {phi}"
        )));
    }
    Ok(2.0 * PI / delta + 2.0)
}

/// The angle `φ` with `fejes_toth_bound(φ) = N`, for the `N` where the bound
/// is attained. Found by bisection on the increasing function `Δ`.
pub fn tammes_angle_from_bound(n: usize) -> Result<f64> {
    if ![3, 4, 6, 12].contains(&n) {
        return Err(Error::Unsupported(format!(
            "Tammes angle is only tight for N in {{3, 4, 6, 12}}, got {n}"
        )));
    }
    let target = 2.0 * PI / (n as f64 - 2.0);
    // Δ increases from 0 at π/3 to 2π at 2π/3.
    let (mut lo, mut hi) = (PI / 3.0, 2.0 * PI / 3.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if delta_area(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Maximum number of touching pairs among `n` unit circles in the plane,
/// `⌊3n - √(12n - 3)⌋`, computed in integers.
pub fn harborth(n: u64) -> u64 {
    assert!(n >= 1, "harborth needs n >= 1");
    let m = 12 * n - 3;
    let r = m.isqrt();
    // ⌊3n - √m⌋ = 3n - ⌈√m⌉
    let ceil = if r * r == m { r } else { r + 1 };
    3 * n - ceil
}

/// `k(d) n / 2`, a strict upper bound on the contact count of `n` unit balls.
pub fn trivial_contact_bound(n: u64, d: usize) -> Result<f64> {
    let k = kissing_number(d)
        .ok_or_else(|| Error::Unsupported(format!("no known kissing number in dimension {d}")))?;
    Ok(k as f64 * n as f64 / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        assert!((delta_area(PI / 2.0).unwrap() - PI / 2.0).abs() < 1e-14);
        let ico = (1.0 / 5f64.sqrt()).acos();
        assert!((delta_area(ico).unwrap() - PI / 5.0).abs() < 1e-12);
        // acos has infinite slope at -1, so the rounding in cos(2π/3) is amplified.
        assert!((delta_area(2.0 * PI / 3.0).unwrap() - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn delta_domain() {
        assert!(delta_area(PI).is_err());
        assert!(delta_area(0.0).is_err());
        assert!(delta_area(-1.0).is_err());
        assert!(fejes_toth_bound(0.0).is_err());
    }

    #[test]
    fn bound_examples() {
        assert!((fejes_toth_bound(PI / 2.0).unwrap() - 6.0).abs() < 1e-12);
        let ico = (1.0 / 5f64.sqrt()).acos();
        assert!((fejes_toth_bound(ico).unwrap() - 12.0).abs() < 1e-9);
        // 30-digit evaluation: 13.39733257143766162999970...
        let b = fejes_toth_bound(PI / 3.0).unwrap();
        assert!((b - 13.397_332_571_437_66).abs() < 1e-12, "{b}");
        assert_eq!(b.floor(), 13.0);
    }

    #[test]
    fn tammes_angles() {
        let cases = [
            (3, 2.0 * PI / 3.0),
            (4, (-1.0f64 / 3.0).acos()),
            (6, PI / 2.0),
            (12, (1.0 / 5f64.sqrt()).acos()),
        ];
        for (n, expected) in cases {
            let a = tammes_angle_from_bound(n).unwrap();
            assert!((a - expected).abs() < 1e-12, "N={n}: {a} vs {expected}");
        }
        assert!(tammes_angle_from_bound(5).is_err());
    }

    #[test]
    fn harborth_examples() {
        assert_eq!(harborth(1), 0);
        assert_eq!(harborth(2), 1);
        assert_eq!(harborth(3), 3);
        assert_eq!(harborth(7), 12);
        // ⌊300 - √1197⌋ = ⌊265.40⌋
        assert_eq!(harborth(100), 265);
    }

    #[test]
    fn contact_bounds() {
        assert_eq!(trivial_contact_bound(10, 4).unwrap(), 120.0);
        assert_eq!(trivial_contact_bound(1, 3).unwrap(), 6.0);
        assert_eq!(trivial_contact_bound(100, 2).unwrap(), 300.0);
        assert!(trivial_contact_bound(5, 5).is_err());
    }
}
