//! Brute-force ground truth at desk scale.
//!
//! Normality here is decided by the rank of the conjugate matrix, never by
//! the gcd criterion, so comparing the two is a real check.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::construct::{necessary_conditions, split_two_power};
use crate::error::{Error, Result};
use crate::factor::{enumerate_g, factor_2power, is_two_power_ge4};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::rank_u64;
use crate::normal::{corresponding_vector, TraceVector};
use crate::poly2::CyclicPoly;

/// `alpha` is normal iff its `n` conjugates are linearly independent.
pub fn is_normal_by_rank(spec: &FieldSpec, alpha: FieldElem) -> bool {
    is_normal_in_subfield_by_rank(spec, alpha, spec.n())
}

/// Independence of `alpha, alpha^2, ..., alpha^(2^(t-1))` over GF(2).
/// Only meaningful when `alpha` lies in GF(2^t).
pub fn is_normal_in_subfield_by_rank(spec: &FieldSpec, alpha: FieldElem, t: usize) -> bool {
    let mut rows: Vec<u64> = spec.conjugates(alpha, t).iter().map(|e| e.bits()).collect();
    rank_u64(&mut rows) == t
}

/// Size limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest field degree walked element by element.
    pub enumerate: usize,
    /// Largest ring size for searches restricted to G.
    pub factor_in_g: usize,
    /// Largest ring size for searches over every `g`.
    pub factor_all: usize,
    pub self_dual: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            enumerate: 20,
            factor_in_g: 24,
            factor_all: 16,
            self_dual: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub caps: Caps,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub n: usize,
    pub normal_elements: u64,
    pub achievable: usize,
    pub predicted: usize,
    /// Predicted but never observed.
    pub missing: Vec<TraceVector>,
    /// Observed but not predicted.
    pub unexpected: Vec<TraceVector>,
}

impl CharacterizationReport {
    pub fn holds(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub n: usize,
    /// Distinct values of `g * g^*` over all `g`.
    pub image_size: usize,
    /// `|G|` and `|H|` when `n = 2^s >= 4`.
    pub g_size: Option<usize>,
    pub h_size: Option<usize>,
    pub violations: Vec<String>,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryReport {
    pub n: usize,
    pub normal_elements: u64,
    pub failures: Vec<(FieldElem, Vec<String>)>,
}

impl NecessaryReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualEntry {
    pub n: usize,
    pub exists: bool,
    /// What the `4 does not divide n` rule predicts.
    pub predicted: bool,
    pub witness: Option<FieldElem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualReport {
    pub entries: Vec<SelfDualEntry>,
}

impl SelfDualReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.exists == e.predicted)
    }
}

/// Symmetric vectors of length `n` with free half `a_0..=a_(n/2)`.
fn symmetric_vectors(n: usize) -> impl Iterator<Item = TraceVector> {
    let half = n / 2;
    (0..1u64 << (half + 1)).map(move |mask| {
        let mut v = CyclicPoly::zero(n);
        for i in 0..=half {
            if (mask >> i) & 1 == 1 {
                v.set(i, true);
                v.set((n - i) % n, true);
            }
        }
        TraceVector::from(v)
    })
}

impl Oracle {
    pub fn new(caps: Caps) -> Self {
        Self { caps }
    }

    fn check_enum_cap(&self, n: usize) -> Result<()> {
        if n > self.caps.enumerate {
            return Err(Error::OverCap {
                n,
                cap: self.caps.enumerate,
            });
        }
        Ok(())
    }

    /// Every normal element of the field with its vector, in ascending
    /// coordinate order.
    pub fn enumerate_normal<'a>(
        &self,
        spec: &'a FieldSpec,
    ) -> Result<impl Iterator<Item = (FieldElem, TraceVector)> + 'a> {
        self.check_enum_cap(spec.n())?;
        Ok((0..1u64 << spec.n()).filter_map(move |v| {
            let a = spec.elem(v).expect("below 2^n");
            is_normal_by_rank(spec, a).then(|| (a, corresponding_vector(spec, a)))
        }))
    }

    /// Distinct vectors of all normal elements, with the number of normal
    /// elements seen.
    fn scan_vectors(&self, spec: &FieldSpec) -> Result<(u64, BTreeSet<TraceVector>)> {
        self.check_enum_cap(spec.n())?;
        Ok((0..1u64 << spec.n())
            .into_par_iter()
            .filter_map(|v| {
                let a = spec.elem(v).expect("below 2^n");
                is_normal_by_rank(spec, a).then(|| corresponding_vector(spec, a))
            })
            .fold(
                || (0u64, BTreeSet::new()),
                |(c, mut s), v| {
                    s.insert(v);
                    (c + 1, s)
                },
            )
            .reduce(
                || (0, BTreeSet::new()),
                |(c1, mut s1), (c2, s2)| {
                    s1.extend(s2);
                    (c1 + c2, s1)
                },
            ))
    }

    pub fn achievable_vectors(&self, spec: &FieldSpec) -> Result<BTreeSet<TraceVector>> {
        Ok(self.scan_vectors(spec)?.1)
    }

    /// Vectors satisfying the exact characterization for `n = 2^s >= 4`
    /// (`a_0 = 1`, `a_(n/2) = 0`, symmetric, odd half-sum 1) or odd `n`
    /// (symmetric, `f_a` a unit).
    pub fn predicted_vectors(&self, n: usize) -> Result<BTreeSet<TraceVector>> {
        self.check_enum_cap(n)?;
        if is_two_power_ge4(n) {
            Ok(symmetric_vectors(n)
                .filter(|a| {
                    let odd = (1..n / 2).step_by(2).filter(|&i| a.get(i)).count();
                    a.get(0) && !a.get(n / 2) && odd % 2 == 1
                })
                .collect())
        } else if n % 2 == 1 {
            Ok(symmetric_vectors(n)
                .filter(|a| a.as_poly().is_unit())
                .collect())
        } else {
            Err(Error::Unsupported(format!(
                "no exact characterization to predict for n = {n}"
            )))
        }
    }

    pub fn check_characterization(&self, spec: &FieldSpec) -> Result<CharacterizationReport> {
        let predicted = self.predicted_vectors(spec.n())?;
        let (normal_elements, achievable) = self.scan_vectors(spec)?;
        Ok(CharacterizationReport {
            n: spec.n(),
            normal_elements,
            achievable: achievable.len(),
            predicted: predicted.len(),
            missing: predicted.difference(&achievable).cloned().collect(),
            unexpected: achievable.difference(&predicted).cloned().collect(),
        })
    }

    /// Every `g` in the search space with `g * g^* = h`.
    pub fn brute_factor(&self, h: &CyclicPoly, restrict_to_g: bool) -> Result<Vec<CyclicPoly>> {
        let n = h.n();
        let candidates: Box<dyn Iterator<Item = CyclicPoly>> = if restrict_to_g {
            if n > self.caps.factor_in_g {
                return Err(Error::OverCap {
                    n,
                    cap: self.caps.factor_in_g,
                });
            }
            Box::new(enumerate_g(n)?.into_iter())
        } else {
            if n > self.caps.factor_all {
                return Err(Error::OverCap {
                    n,
                    cap: self.caps.factor_all,
                });
            }
            Box::new((0..1u64 << n).map(move |v| CyclicPoly::from_u64(n, v)))
        };
        Ok(candidates
            .filter(|g| g.mul(&g.reciprocal()).expect("same ring") == *h)
            .collect())
    }

    /// Audits the factorization results at ring size `n`:
    /// * every `g * g^*` is symmetric with zero middle coefficient (even `n`);
    /// * odd `n`: the image is exactly the symmetric polynomials;
    /// * `n = 2^s >= 4`: the image with constant term 1 is exactly H, the
    ///   map restricted to G is a bijection onto H, and `factor_2power`
    ///   returns the preimage.
    pub fn check_factorization(&self, n: usize) -> Result<FactorizationReport> {
        if n > self.caps.factor_all {
            return Err(Error::OverCap {
                n,
                cap: self.caps.factor_all,
            });
        }
        let image: BTreeSet<CyclicPoly> = (0..1u64 << n)
            .into_par_iter()
            .map(|v| {
                let g = CyclicPoly::from_u64(n, v);
                g.mul(&g.reciprocal()).expect("same ring")
            })
            .collect();
        let mut violations = Vec::new();
        for h in &image {
            if !h.is_symmetric() || (n.is_multiple_of(2) && h.get(n / 2)) {
                violations.push(format!("g * g^* = {h} is not symmetric with a_(n/2) = 0"));
            }
        }
        let (mut g_size, mut h_size) = (None, None);
        if n % 2 == 1 {
            let symmetric: BTreeSet<CyclicPoly> =
                symmetric_vectors(n).map(TraceVector::into_poly).collect();
            if symmetric != image {
                violations.push(format!(
                    "image has {} members, symmetric set has {}",
                    image.len(),
                    symmetric.len()
                ));
            }
        } else if is_two_power_ge4(n) {
            let h_set: BTreeSet<CyclicPoly> = symmetric_vectors(n)
                .map(TraceVector::into_poly)
                .filter(|h| crate::factor::in_h(h).expect("two power"))
                .collect();
            let unit_image: BTreeSet<CyclicPoly> =
                image.iter().filter(|h| h.get(0)).cloned().collect();
            if unit_image != h_set {
                violations.push(format!(
                    "image with a_0 = 1 has {} members, H has {}",
                    unit_image.len(),
                    h_set.len()
                ));
            }
            let g_list = enumerate_g(n)?;
            let mut preimages: BTreeMap<CyclicPoly, Vec<CyclicPoly>> = BTreeMap::new();
            for g in &g_list {
                preimages
                    .entry(g.mul(&g.reciprocal()).expect("same ring"))
                    .or_default()
                    .push(g.clone());
            }
            for h in &h_set {
                match preimages.get(h).map(Vec::as_slice) {
                    Some([g]) => match factor_2power(h) {
                        Ok(found) if found == *g => {}
                        Ok(found) => violations.push(format!(
                            "factor_2power({h}) = {found}, brute force gives {g}"
                        )),
                        Err(e) => violations.push(format!("factor_2power({h}) failed: {e}")),
                    },
                    other => violations.push(format!(
                        "{h} has {} preimages in G",
                        other.map_or(0, <[_]>::len)
                    )),
                }
            }
            if preimages.keys().any(|h| !h_set.contains(h)) {
                violations.push("G maps outside H".into());
            }
            g_size = Some(g_list.len());
            h_size = Some(h_set.len());
        }
        Ok(FactorizationReport {
            n,
            image_size: image.len(),
            g_size,
            h_size,
            violations,
        })
    }

    /// Every normal element satisfies the necessary conditions for
    /// composite `n` (`2^s >= 4`, odd `m > 1`).
    pub fn check_necessary(&self, spec: &FieldSpec) -> Result<NecessaryReport> {
        self.check_enum_cap(spec.n())?;
        let n = spec.n();
        let (pow2, m) = split_two_power(n);
        if pow2 < 4 || m == 1 {
            return Err(Error::Unsupported(format!(
                "necessary-condition audit needs 4 | n with an odd part > 1, got n = {n}"
            )));
        }
        let normals: Vec<(FieldElem, TraceVector)> = self.enumerate_normal(spec)?.collect();
        let mut failures = Vec::new();
        for (a, v) in &normals {
            let verdict = necessary_conditions(n, v)?;
            if !verdict.failures().is_empty() {
                failures.push((*a, verdict.failures()));
            }
        }
        Ok(NecessaryReport {
            n,
            normal_elements: normals.len() as u64,
            failures,
        })
    }

    /// Exhaustive search for self-dual normal elements, `1 <= n <= max_n`.
    pub fn check_self_dual_existence(&self, max_n: usize) -> Result<SelfDualReport> {
        if max_n > self.caps.self_dual {
            return Err(Error::OverCap {
                n: max_n,
                cap: self.caps.self_dual,
            });
        }
        let mut entries = Vec::new();
        for n in 1..=max_n {
            let spec = FieldSpec::with_default_modulus(n)?;
            let e0 = TraceVector::unit(n);
            let witness = (0..1u64 << n)
                .into_par_iter()
                .map(|v| spec.elem(v).expect("below 2^n"))
                .find_first(|&a| {
                    spec.abs_trace(a)
                        && corresponding_vector(&spec, a) == e0
                        && is_normal_by_rank(&spec, a)
                });
            entries.push(SelfDualEntry {
                n,
                exists: witness.is_some(),
                predicted: n % 4 != 0,
                witness,
            });
        }
        Ok(SelfDualReport { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle() -> Oracle {
        Oracle::default()
    }

    #[test]
    fn normal_counts() {
        for (n, count) in [(1, 1), (2, 2), (3, 3), (4, 8)] {
            let spec = FieldSpec::with_default_modulus(n).unwrap();
            let all: Vec<_> = oracle().enumerate_normal(&spec).unwrap().collect();
            assert_eq!(all.len(), count, "n = {n}");
            for (a, v) in all {
                assert!(crate::normal::is_normal(&spec, a));
                assert!(v.as_poly().is_unit());
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let small = Oracle::new(Caps {
            enumerate: 4,
            ..Caps::default()
        });
        let spec = FieldSpec::with_default_modulus(5).unwrap();
        assert!(matches!(small.enumerate_normal(&spec), Err(Error::OverCap { .. })));
        assert!(oracle().brute_factor(&CyclicPoly::one(17), false).is_err());
        assert!(oracle().check_self_dual_existence(17).is_err());
    }

    #[test]
    fn predicted_sets() {
        let o = oracle();
        assert_eq!(
            o.predicted_vectors(4).unwrap().into_iter().collect::<Vec<_>>(),
            vec![TraceVector::parse("1,1,0,1").unwrap()]
        );
        assert_eq!(
            o.predicted_vectors(3).unwrap().into_iter().collect::<Vec<_>>(),
            vec![TraceVector::unit(3)]
        );
        assert_eq!(o.predicted_vectors(16).unwrap().len(), 64);
        assert!(o.predicted_vectors(12).is_err());
        for n in [4, 8, 16, 3, 5, 7, 9] {
            for a in o.predicted_vectors(n).unwrap() {
                let verdict = crate::construct::validate_vector(n, &a).unwrap();
                assert!(verdict.is_valid());
            }
        }
    }

    #[test]
    fn characterization_small() {
        for n in [4, 5, 8] {
            let spec = FieldSpec::with_default_modulus(n).unwrap();
            let r = oracle().check_characterization(&spec).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        let spec = FieldSpec::with_default_modulus(8).unwrap();
        assert_eq!(oracle().check_characterization(&spec).unwrap().achievable, 4);
    }

    #[test]
    fn brute_factor_examples() {
        let o = oracle();
        let h = CyclicPoly::parse_poly(16, "1+x+x^2+x^7+x^9+x^14+x^15").unwrap();
        assert_eq!(
            o.brute_factor(&h, true).unwrap(),
            vec![CyclicPoly::parse_poly(16, "1+x+x^5+x^6+x^9+x^10+x^14").unwrap()]
        );
        let all = o.brute_factor(&CyclicPoly::one(4), false).unwrap();
        assert!(all.len() > 1);
        assert!(all.contains(&CyclicPoly::one(4)));
        let asym = CyclicPoly::parse_poly(5, "1+x").unwrap();
        assert!(o.brute_factor(&asym, false).unwrap().is_empty());
    }

    #[test]
    fn factorization_audits() {
        for n in [3, 4, 5, 6, 7, 8] {
            let r = oracle().check_factorization(n).unwrap();
            assert!(r.holds(), "n = {n}: {:?}", r.violations);
        }
    }

    #[test]
    fn self_dual_small() {
        let r = oracle().check_self_dual_existence(8).unwrap();
        assert!(r.holds());
        let exists: Vec<usize> = r.entries.iter().filter(|e| e.exists).map(|e| e.n).collect();
        assert_eq!(exists, vec![1, 2, 3, 5, 6, 7]);
    }
}
