use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Plotkin {
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
    pub equality: bool,
}

/// Generalized Plotkin bound for equitable codes:
/// C(M,2)·d <= n·Σ_{i<j} M_i M_j with M_i = ⌊(M+i)/q⌋.
pub fn plotkin_check(n: u64, d: u64, q: u64, m: u64) -> Plotkin {
    let (n, d, q, m) = (n as u128, d as u128, q as u128, m as u128);
    let lhs = m * m.saturating_sub(1) / 2 * d;
    let parts: Vec<u128> = (0..q).map(|i| (m + i) / q).collect();
    let sum: u128 = parts.iter().sum();
    let sq: u128 = parts.iter().map(|x| x * x).sum();
    let rhs = n * ((sum * sum - sq) / 2);
    let equality = q > 0 && m % q == 0 && lhs == n * (q * (q - 1) / 2) * (m / q) * (m / q);
    Plotkin { lhs, rhs, holds: lhs <= rhs, equality }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlotkinCert {
    pub m: u64,
    pub n: u64,
    pub d: u64,
    pub size: u64,
    pub check: Plotkin,
    pub poly_lhs: i128,
    pub poly_rhs: i128,
}

/// Certificate that no ESWC(2m-3, 2m-4)_m has 2m+2 words.
pub fn optimality_cert_2q3(m: u64) -> Result<PlotkinCert> {
    if m < 7 {
        return Err(Error::MTooSmall(m));
    }
    let check = plotkin_check(2 * m - 3, 2 * m - 4, m, 2 * m + 2);
    let x = m as i128;
    let poly_lhs = 4 * x * x * x - 2 * x * x - 10 * x - 4;
    let poly_rhs = 4 * x * x * x - 2 * x * x - 12 * x + 9;
    assert_eq!((check.lhs as i128, check.rhs as i128), (poly_lhs, poly_rhs));
    assert!(!check.holds);
    Ok(PlotkinCert { m, n: 2 * m - 3, d: 2 * m - 4, size: 2 * m + 2, check, poly_lhs, poly_rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let p = plotkin_check(10, 9, 7, 21);
        assert_eq!((p.lhs, p.rhs, p.holds, p.equality), (1890, 1890, true, true));
        let p = plotkin_check(4, 3, 3, 6);
        assert_eq!((p.lhs, p.rhs, p.holds, p.equality), (45, 48, true, false));
        let p = plotkin_check(29, 28, 16, 34);
        assert_eq!((p.lhs, p.rhs, p.holds), (15708, 15689, false));
        let p = plotkin_check(7, 6, 5, 15);
        assert_eq!((p.lhs, p.rhs, p.equality), (630, 630, true));
    }

    #[test]
    fn certificate_bounds() {
        let c = optimality_cert_2q3(7).unwrap();
        assert_eq!((c.check.lhs, c.check.rhs), (1200, 1199));
        assert_eq!(optimality_cert_2q3(6), Err(Error::MTooSmall(6)));
        for m in 4..=6 {
            assert!(plotkin_check(2 * m - 3, 2 * m - 4, m, 2 * m + 2).holds);
        }
    }
}
