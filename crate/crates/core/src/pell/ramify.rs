use std::collections::BTreeMap;

use serde::Serialize;

use crate::poly::{Poly, Rat};

/// Ramification indices above one point, as `index -> number of preimages`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationType(pub BTreeMap<usize, usize>);

impl RamificationType {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        RamificationType(pairs.iter().copied().collect())
    }

    /// Indices with repetition in ascending order, e.g. `[1, 1, 2, 2, 2]`.
    pub fn indices(&self) -> Vec<usize> {
        self.0
            .iter()
            .flat_map(|(&idx, &count)| std::iter::repeat_n(idx, count))
            .collect()
    }

    pub fn count(&self, index: usize) -> usize {
        self.0.get(&index).copied().unwrap_or(0)
    }

    /// Sum of `index - 1` over preimages.
    pub fn branching(&self) -> usize {
        self.0.iter().map(|(&idx, &count)| (idx - 1) * count).sum()
    }

    /// Sum of `index * count`, the degree of the map.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|(&idx, &count)| idx * count).sum()
    }
}

/// Multiplicities of the roots of `f - c`.
///
/// A squarefree factor of multiplicity `i` and degree `g` contributes `g`
/// preimages of index `i`. Panics when `f - c` is the zero polynomial.
pub fn ramification_type(f: &Poly, c: &Rat) -> RamificationType {
    let shifted = f - &Poly::constant(c.clone());
    let mut out = BTreeMap::new();
    for (factor, mult) in shifted
        .squarefree_decomposition()
        .expect("f - c must be nonzero")
    {
        *out.entry(mult).or_insert(0) += factor.degree().unwrap();
    }
    RamificationType(out)
}

/// True iff every finite critical point of `f` maps into `locus`.
///
/// Tested as: the squarefree part of `f'` divides `prod_{s in locus} (f - s)`.
pub fn verify_branch_locus_in(f: &Poly, locus: &[Rat]) -> bool {
    let df = f.derivative();
    if df.is_constant() {
        return true;
    }
    let critical = df.squarefree_part().expect("nonzero derivative");
    let product = locus.iter().fold(Poly::one(), |acc, s| {
        &acc * &(f - &Poly::constant(s.clone()))
    });
    critical.divides(&product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::power_polynomial;
    use crate::poly::rat;

    fn zero_one() -> Vec<Rat> {
        vec![rat(0), rat(1)]
    }

    #[test]
    fn power_polynomials_branch_over_zero_and_one() {
        assert!(verify_branch_locus_in(&power_polynomial(4), &zero_one()));
        assert!(verify_branch_locus_in(&power_polynomial(5), &zero_one()));
    }

    #[test]
    fn chebyshev_three_is_not_belyi_over_zero_one() {
        let f: Poly = "t^3 - 3*t".parse().unwrap();
        assert!(!verify_branch_locus_in(&f, &zero_one()));
        assert!(verify_branch_locus_in(&f, &[rat(2), rat(-2)]));
    }

    #[test]
    fn linear_maps_are_unbranched() {
        let f: Poly = "3*t + 1".parse().unwrap();
        assert!(verify_branch_locus_in(&f, &[]));
    }

    #[test]
    fn types_of_f4() {
        // f_4 = (8w^2 - 8w + 1)^2 has degree 4.
        let f4 = power_polynomial(4);
        assert_eq!(
            ramification_type(&f4, &rat(0)),
            RamificationType::from_pairs(&[(2, 2)])
        );
        assert_eq!(
            ramification_type(&f4, &rat(1)),
            RamificationType::from_pairs(&[(1, 2), (2, 1)])
        );
        assert_eq!(ramification_type(&f4, &rat(1)).indices(), vec![1, 1, 2]);
    }

    #[test]
    fn types_of_f3() {
        let f3 = power_polynomial(3);
        assert_eq!(ramification_type(&f3, &rat(0)).indices(), vec![1, 2]);
        assert_eq!(ramification_type(&f3, &rat(1)).indices(), vec![1, 2]);
        assert_eq!(ramification_type(&f3, &rat(7)).indices(), vec![1, 1, 1]);
    }

    #[test]
    fn degree_and_branching_bookkeeping() {
        let f: Poly = "t^5 - t^3".parse().unwrap();
        let ty = ramification_type(&f, &rat(0));
        assert_eq!(ty.degree(), 5);
        assert_eq!(ty.indices(), vec![1, 1, 3]);
        assert_eq!(ty.branching(), 2);
    }
}
