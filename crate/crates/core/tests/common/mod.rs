#![allow(dead_code)]

use gf2_normal::{CyclicPoly, TraceVector};
use rand::Rng;

/// Uniform symmetric polynomial of ring size `n` with the given constant term.
pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, constant: bool) -> CyclicPoly {
    let mut f = CyclicPoly::zero(n);
    f.set(0, constant);
    for i in 1..=n / 2 {
        if rng.gen::<bool>() {
            f.set(i, true);
            f.set(n - i, true);
        }
    }
    f
}

/// A uniformly chosen vector passing the exact characterization for
/// `n = 2^s >= 4` or odd `n`.
pub fn random_valid_vector<R: Rng>(rng: &mut R, n: usize) -> TraceVector {
    loop {
        let mut f = random_symmetric(rng, n, true);
        if n.is_multiple_of(2) {
            f.set(n / 2, false);
            let odd = (1..n / 2).step_by(2).filter(|&i| f.get(i)).count();
            if odd % 2 == 0 {
                f.set(1, !f.get(1));
                f.set(n - 1, f.get(1));
            }
            return f.into();
        }
        if f.is_unit() {
            return f.into();
        }
    }
}
