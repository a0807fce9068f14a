//! Solving `h = g * g^*` in GF(2)[z]/(z^n - 1).
//!
//! For `n = 2^s >= 4` every `h` in the set H has exactly one factor `g`
//! in the structured set G. Restricted to G the quadratic system
//! `h_j = sum_i z_i z_(i+j)` collapses to a linear one in the free
//! coordinates `z_1, z_3, z_4, ..., z_(n/2-1)`:
//!
//! ```text
//! y_j = z_j + z_(j-1)                                  j even
//! y_j = z_j + z_(j-1) + z_((n-1-j)/2) + z_((j-1)/2)    j odd
//! ```
//!
//! with `z_0 = 1` and `z_2 = 0` substituted. For odd `n` the symmetric
//! square root `b_i = h_(2i mod n)` does the job.

use crate::error::{Error, Result};
use crate::linalg::{AffineSystem, Solution};
use crate::poly2::CyclicPoly;

pub(crate) fn is_two_power_ge4(n: usize) -> bool {
    n >= 4 && n.is_power_of_two()
}

fn require_two_power(n: usize) -> Result<()> {
    if is_two_power_ge4(n) {
        Ok(())
    } else {
        Err(Error::NotTwoPower(n))
    }
}

/// Parity of `a_1 + a_3 + ... + a_(n/2-1)`.
pub(crate) fn odd_half_sum(a: &CyclicPoly) -> bool {
    (1..a.n() / 2).step_by(2).fold(false, |acc, i| acc ^ a.get(i))
}

/// Which of the conditions defining H fail for `h` (empty when `h` is in H).
fn h_violations(h: &CyclicPoly) -> Vec<&'static str> {
    let n = h.n();
    let mut out = Vec::new();
    if !h.get(0) {
        out.push("a_0 = 1");
    }
    if h.get(n / 2) {
        out.push("a_(n/2) = 0");
    }
    if !h.is_symmetric() {
        out.push("a_i = a_(n-i)");
    }
    if odd_half_sum(h) {
        out.push("sum of a_i over odd i < n/2 is 0");
    }
    out
}

pub fn in_h(h: &CyclicPoly) -> Result<bool> {
    require_two_power(h.n())?;
    Ok(h_violations(h).is_empty())
}

pub fn in_g(g: &CyclicPoly) -> Result<bool> {
    let n = g.n();
    require_two_power(n)?;
    Ok(g.get(0)
        && !g.get(n - 1)
        && !g.get(2)
        && !g.get(n - 3)
        && (1..n / 2)
            .filter(|&i| i != 2)
            .all(|i| g.get(i) == g.get(n - 1 - i)))
}

/// Indices `1, 3, 4, ..., n/2 - 1` that parametrize G (empty for `n = 4`,
/// where `b_1 = b_(n-3)` is pinned to zero).
pub(crate) fn g_free_indices(n: usize) -> Vec<usize> {
    (1..n / 2).filter(|&i| i != 2 && i != n - 3).collect()
}

/// The member of G with `b_i = b_(n-1-i) = z_i` for the free indices.
pub(crate) fn g_from_free(n: usize, free: &[usize], z: impl Fn(usize) -> bool) -> CyclicPoly {
    let mut g = CyclicPoly::one(n);
    for (k, &i) in free.iter().enumerate() {
        if z(k) {
            g.set(i, true);
            g.set(n - 1 - i, true);
        }
    }
    g
}

/// All `2^(n/2-2)` members of G.
pub fn enumerate_g(n: usize) -> Result<Vec<CyclicPoly>> {
    require_two_power(n)?;
    let free = g_free_indices(n);
    if free.len() >= 32 {
        return Err(Error::Unsupported(format!("G for n = {n} is too large to list")));
    }
    Ok((0..1u64 << free.len())
        .map(|mask| g_from_free(n, &free, |k| (mask >> k) & 1 == 1))
        .collect())
}

fn solve_linear(h: &CyclicPoly) -> Result<CyclicPoly> {
    let n = h.n();
    let free = g_free_indices(n);
    let col = |i: usize| free.iter().position(|&f| f == i);
    let mut system = AffineSystem::new(free.len());
    for j in 1..n / 2 {
        let mut terms = vec![j, j - 1];
        if j % 2 == 1 {
            terms.push((n - 1 - j) / 2);
            terms.push((j - 1) / 2);
        }
        let mut row = vec![false; free.len()];
        let mut rhs = h.get(j);
        for idx in terms {
            match idx {
                0 => rhs ^= true,
                2 => {}
                _ => {
                    let c = col(idx).expect("index lies in the free set");
                    row[c] ^= true;
                }
            }
        }
        system.push(row, rhs);
    }
    match system.solve() {
        Solution::Unique(z) => Ok(g_from_free(n, &free, |k| z[k])),
        Solution::Inconsistent => Err(Error::Internal(format!(
            "linear system for h = {h} has no solution"
        ))),
        Solution::Underdetermined { rank } => Err(Error::Internal(format!(
            "linear system for h = {h} has rank {rank} < {}",
            free.len()
        ))),
    }
}

/// The unique `g` in G with `g * g^* = h`, for `h` in H and `n = 2^s >= 4`.
///
/// `n = 4, 8` search G directly (at most four candidates); larger `n`
/// solve the linear system.
pub fn factor_2power(h: &CyclicPoly) -> Result<CyclicPoly> {
    let n = h.n();
    require_two_power(n)?;
    let bad = h_violations(h);
    if !bad.is_empty() {
        return Err(Error::NotInH(bad.join(", ")));
    }
    let g = if n <= 8 {
        let found: Vec<_> = enumerate_g(n)?
            .into_iter()
            .filter(|g| verify_factorization(h, g).unwrap_or(false))
            .collect();
        match found.as_slice() {
            [g] => g.clone(),
            _ => {
                return Err(Error::Internal(format!(
                    "{} factors of {h} in G",
                    found.len()
                )))
            }
        }
    } else {
        solve_linear(h)?
    };
    if !verify_factorization(h, &g)? {
        return Err(Error::Internal(format!("g * g^* != h for g = {g}, h = {h}")));
    }
    Ok(g)
}

/// `g` with `b_i = h_(2i mod n)`; symmetric, and `g^2 = g * g^* = h`.
pub fn factor_odd(h: &CyclicPoly) -> Result<CyclicPoly> {
    let n = h.n();
    if n.is_multiple_of(2) {
        return Err(Error::NotOdd(n));
    }
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut g = CyclicPoly::zero(n);
    for i in 0..n {
        g.set(i, h.get(2 * i % n));
    }
    Ok(g)
}

pub fn verify_factorization(h: &CyclicPoly, g: &CyclicPoly) -> Result<bool> {
    Ok(g.mul(&g.reciprocal())? == *h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, s: &str) -> CyclicPoly {
        CyclicPoly::parse_poly(n, s).unwrap()
    }

    #[test]
    fn membership() {
        assert!(in_h(&CyclicPoly::one(4)).unwrap());
        assert!(in_h(&c(16, "1+x+x^2+x^7+x^9+x^14+x^15")).unwrap());
        assert!(!in_h(&c(16, "1+x+x^15")).unwrap());
        assert!(in_g(&CyclicPoly::one(4)).unwrap());
        assert!(in_g(&c(16, "1+x+x^5+x^6+x^9+x^10+x^14")).unwrap());
        assert!(!in_g(&c(16, "1+x^2")).unwrap());
        assert_eq!(in_h(&CyclicPoly::one(6)), Err(Error::NotTwoPower(6)));
        assert_eq!(in_g(&CyclicPoly::one(2)), Err(Error::NotTwoPower(2)));
    }

    #[test]
    fn g_for_n4_is_singleton() {
        let members: Vec<_> = (0..16u64)
            .map(|v| CyclicPoly::from_u64(4, v))
            .filter(|g| in_g(g).unwrap())
            .collect();
        assert_eq!(members, vec![CyclicPoly::one(4)]);
        assert_eq!(enumerate_g(4).unwrap(), members);
    }

    #[test]
    fn enumerate_g_matches_predicate() {
        for n in [8, 16] {
            let listed = enumerate_g(n).unwrap();
            assert_eq!(listed.len(), 1 << (n / 2 - 2));
            let brute = (0..1u64 << n)
                .map(|v| CyclicPoly::from_u64(n, v))
                .filter(|g| in_g(g).unwrap())
                .count();
            assert_eq!(brute, listed.len());
        }
    }

    #[test]
    fn example_factorization() {
        let h = c(16, "1+x+x^2+x^7+x^9+x^14+x^15");
        let g = factor_2power(&h).unwrap();
        assert_eq!(g, c(16, "1+x+x^5+x^6+x^9+x^10+x^14"));
        assert!(verify_factorization(&h, &g).unwrap());
        let perturbed = g.add(&CyclicPoly::monomial(16, 1)).unwrap();
        assert!(!verify_factorization(&h, &perturbed).unwrap());
        assert!(verify_factorization(&CyclicPoly::one(5), &CyclicPoly::one(5)).unwrap());
    }

    #[test]
    fn small_two_powers() {
        assert_eq!(factor_2power(&CyclicPoly::one(4)).unwrap(), CyclicPoly::one(4));
        let h = c(8, "1+x^2+x^6");
        let g = factor_2power(&h).unwrap();
        let brute: Vec<_> = enumerate_g(8)
            .unwrap()
            .into_iter()
            .filter(|g| verify_factorization(&h, g).unwrap())
            .collect();
        assert_eq!(brute, vec![g]);
    }

    #[test]
    fn linear_system_covers_n8_too() {
        // the elimination path is only used from n = 16 on, but the
        // formulas already hold at n = 8
        for g in enumerate_g(8).unwrap() {
            let h = g.mul(&g.reciprocal()).unwrap();
            assert_eq!(solve_linear(&h).unwrap(), g);
        }
    }

    #[test]
    fn rejects_targets_outside_h() {
        assert!(matches!(
            factor_2power(&c(16, "1+x+x^15")),
            Err(Error::NotInH(_))
        ));
        assert!(matches!(factor_2power(&CyclicPoly::one(12)), Err(Error::NotTwoPower(12))));
    }

    #[test]
    fn odd_square_roots() {
        assert_eq!(factor_odd(&CyclicPoly::one(7)).unwrap(), CyclicPoly::one(7));
        let h = c(5, "1+x+x^4");
        let g = factor_odd(&h).unwrap();
        assert_eq!(g, c(5, "1+x^2+x^3"));
        assert_eq!(g.mul(&g).unwrap(), h);
        let h = c(3, "1+x+x^2");
        assert_eq!(factor_odd(&h).unwrap(), h);
        assert_eq!(factor_odd(&c(5, "1+x")), Err(Error::NotSymmetric));
        assert_eq!(factor_odd(&CyclicPoly::one(4)), Err(Error::NotOdd(4)));
    }
}
