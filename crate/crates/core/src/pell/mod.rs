//! The Pell-Abel equation `A^2 - D B^2 = 1` over `Q[t]`.
//!
//! Verification, powers of solutions through Chebyshev polynomials,
//! construction from a seed `A`, and the algebraic side of the power
//! classification.

mod chebyshev;
mod ramify;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{discriminant, Poly, Rat};

pub use chebyshev::{chebyshev, extract_mth_root, power_polynomial, MthRoot};
pub use ramify::{ramification_type, verify_branch_locus_in, RamificationType};

/// Why a candidate triple is not accepted as a solution.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason")]
pub enum Rejection {
    #[error("A^2 - D*B^2 is not 1")]
    NotUnit,
    #[error("B is zero")]
    ZeroB,
    #[error("D has odd degree {degree}")]
    OddDegreeD { degree: usize },
    #[error("D has degree {degree}; at least {minimum} required")]
    DegreeTooSmallD { degree: usize, minimum: usize },
    #[error("D is not squarefree")]
    NonSquarefreeD,
    #[error("seed A must be nonconstant")]
    ConstantSeed,
}

/// Which half-degrees of `D` are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Policy {
    /// Accept `deg D = 2` (half-degree 1) in addition to `deg D >= 4`.
    pub allow_d1: bool,
}

impl Policy {
    pub const STRICT: Policy = Policy { allow_d1: false };
    pub const RELAXED: Policy = Policy { allow_d1: true };

    fn min_degree(self) -> usize {
        if self.allow_d1 {
            2
        } else {
            4
        }
    }
}

/// A verified solution. Degrees: `n = deg A`, `deg D = 2 * half_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(rename = "A")]
    a: Poly,
    #[serde(rename = "B")]
    b: Poly,
    #[serde(rename = "D")]
    d: Poly,
    n: usize,
    #[serde(rename = "d")]
    half_degree: usize,
}

impl PellSolution {
    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    /// Degree of `A`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Half the degree of `D`.
    pub fn half_degree(&self) -> usize {
        self.half_degree
    }
}

/// Checks `A^2 - D B^2 = 1` together with the shape conditions on `D`.
pub fn verify_pell(
    a: &Poly,
    b: &Poly,
    d: &Poly,
    policy: Policy,
) -> Result<PellSolution, Rejection> {
    if b.is_zero() {
        return Err(Rejection::ZeroB);
    }
    let deg_d = d.degree().unwrap_or(0);
    if deg_d % 2 == 1 {
        return Err(Rejection::OddDegreeD { degree: deg_d });
    }
    if deg_d < policy.min_degree() {
        return Err(Rejection::DegreeTooSmallD {
            degree: deg_d,
            minimum: policy.min_degree(),
        });
    }
    if num_traits::Zero::is_zero(&discriminant(d).expect("deg D >= 2")) {
        return Err(Rejection::NonSquarefreeD);
    }
    let lhs = &(a * a) - &(&(d * b) * b);
    if !lhs.is_one() {
        return Err(Rejection::NotUnit);
    }
    Ok(PellSolution {
        a: a.clone(),
        b: b.clone(),
        d: d.clone(),
        n: a.degree().expect("A^2 = 1 + D B^2 is nonconstant"),
        half_degree: deg_d / 2,
    })
}

/// The `m`-th power: `A_m + sqrt(D) B_m = (A + sqrt(D) B)^m`.
///
/// `A_m = T_m(A)`; `B_m` collects the odd binomial terms
/// `C(m, j) D^((j-1)/2) B^j A^(m-j)`. Panics for `m == 0`.
pub fn power_solution(sol: &PellSolution, m: usize) -> PellSolution {
    assert!(m >= 1, "powers start at m = 1");
    let a_m = chebyshev(m).compose(&sol.a);
    let mut b_m = Poly::zero();
    for j in (1..=m).step_by(2) {
        let c = Rat::from_integer(binomial(BigInt::from(m), BigInt::from(j)));
        let term =
            &(&sol.d.pow(((j - 1) / 2) as u32) * &sol.b.pow(j as u32)) * &sol.a.pow((m - j) as u32);
        b_m = &b_m + &term.scale(&c);
    }
    debug_assert!((&(&a_m * &a_m) - &(&(&sol.d * &b_m) * &b_m)).is_one());
    PellSolution {
        n: sol.n * m,
        a: a_m,
        b: b_m,
        d: sol.d.clone(),
        half_degree: sol.half_degree,
    }
}

/// Builds `(A, B, D)` from `A` alone, writing `A^2 - 1 = D B^2`.
///
/// `D` is the monic product of the squarefree factors of odd multiplicity
/// in `A^2 - 1`, and `B` the square root of the cofactor (positive leading
/// coefficient).
pub fn generate_from_seed(a: &Poly, policy: Policy) -> Result<PellSolution, Rejection> {
    if a.is_constant() {
        return Err(Rejection::ConstantSeed);
    }
    let x = &(a * a) - &Poly::one();
    let d = x
        .squarefree_decomposition()
        .expect("A^2 - 1 is nonzero")
        .into_iter()
        .filter(|(_, mult)| mult % 2 == 1)
        .fold(Poly::one(), |acc, (f, _)| &acc * &f);
    let b = x
        .exact_div(&d)
        .sqrt()
        .expect("even multiplicities with a square leading coefficient");
    verify_pell(a, &b, &d, policy)
}

/// Powers `m >= 2` with `m | n` and `n / m >= d`.
pub fn admissible_powers(n: usize, d: usize) -> Vec<usize> {
    (2..=n).filter(|m| n.is_multiple_of(*m) && n / m >= d).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerClassification {
    pub n: usize,
    pub admissible: Vec<usize>,
    /// `m -> A'` with `T_m(A') = ±A`, for every admissible `m` that has a
    /// rational Chebyshev root.
    pub witnesses: BTreeMap<usize, MthRoot>,
    /// No rational witness exists. Over `C` a solution could still be a
    /// power with irrational `A'`, so this certifies rational primitivity.
    pub primitive: bool,
}

pub fn classify_powers(sol: &PellSolution) -> PowerClassification {
    let admissible = admissible_powers(sol.n, sol.half_degree);
    let witnesses: BTreeMap<_, _> = admissible
        .iter()
        .filter_map(|&m| extract_mth_root(&sol.a, m).map(|r| (m, r)))
        .collect();
    PowerClassification {
        n: sol.n,
        primitive: witnesses.is_empty(),
        admissible,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn check(a: &str, b: &str, d: &str, policy: Policy) -> Result<PellSolution, Rejection> {
        verify_pell(&p(a), &p(b), &p(d), policy)
    }

    #[test]
    fn verify_examples() {
        let s = check("t", "1", "t^2 - 1", Policy::RELAXED).unwrap();
        assert_eq!((s.n(), s.half_degree()), (1, 1));
        let s = check("t^2", "1", "t^4 - 1", Policy::STRICT).unwrap();
        assert_eq!((s.n(), s.half_degree()), (2, 2));
        let s = check("2*t^3 - 1", "2*t", "t^4 - t", Policy::STRICT).unwrap();
        assert_eq!((s.n(), s.half_degree()), (3, 2));
    }

    #[test]
    fn verify_rejections() {
        assert_eq!(
            check("t", "1", "t^2 - 1", Policy::STRICT),
            Err(Rejection::DegreeTooSmallD {
                degree: 2,
                minimum: 4
            })
        );
        assert_eq!(
            check("t^2", "0", "t^4 - 1", Policy::STRICT),
            Err(Rejection::ZeroB)
        );
        assert_eq!(
            check("t^2", "1", "t^3 - 1", Policy::STRICT),
            Err(Rejection::OddDegreeD { degree: 3 })
        );
        assert_eq!(
            check("t^2", "1", "t^4 - 2*t^2 + 1", Policy::STRICT),
            Err(Rejection::NonSquarefreeD)
        );
        assert_eq!(
            check("t^2 + 1", "1", "t^4 - 1", Policy::STRICT),
            Err(Rejection::NotUnit)
        );
    }

    #[test]
    fn power_examples() {
        let s = check("t", "1", "t^2 - 1", Policy::RELAXED).unwrap();
        let s2 = power_solution(&s, 2);
        assert_eq!(
            (s2.a(), s2.b(), s2.d()),
            (&p("2*t^2 - 1"), &p("2*t"), &p("t^2 - 1"))
        );

        let s = check("t^2", "1", "t^4 - 1", Policy::STRICT).unwrap();
        let s2 = power_solution(&s, 2);
        assert_eq!((s2.a(), s2.b()), (&p("2*t^4 - 1"), &p("2*t^2")));
        assert_eq!(s2.n(), 4);

        assert_eq!(power_solution(&s, 1), s);
    }

    #[test]
    fn seed_examples() {
        let s = generate_from_seed(&p("t^2"), Policy::STRICT).unwrap();
        assert_eq!((s.b(), s.d()), (&p("1"), &p("t^4 - 1")));

        let s = generate_from_seed(&p("2*t^3 - 1"), Policy::STRICT).unwrap();
        assert_eq!((s.b(), s.d()), (&p("2*t"), &p("t^4 - t")));

        assert_eq!(
            generate_from_seed(&p("2*t^2 - 1"), Policy::STRICT),
            Err(Rejection::DegreeTooSmallD {
                degree: 2,
                minimum: 4
            })
        );
        let s = generate_from_seed(&p("2*t^2 - 1"), Policy::RELAXED).unwrap();
        assert_eq!((s.b(), s.d()), (&p("2*t"), &p("t^2 - 1")));

        assert_eq!(
            generate_from_seed(&p("3"), Policy::STRICT),
            Err(Rejection::ConstantSeed)
        );
    }

    #[test]
    fn seed_absorbs_square_leading_factor_into_b() {
        // (3t^2 + 1)^2 - 1 = 9t^4 + 6t^2 = 3t^2 (3t^2 + 2): D = t^2 + 2/3 monic, B^2 = 9 t^2
        let s = generate_from_seed(&p("3*t^2 + 1"), Policy::RELAXED).unwrap();
        assert_eq!(s.d(), &p("t^2 + 2/3"));
        assert_eq!(s.b(), &p("3*t"));
    }

    #[test]
    fn classify_examples() {
        let s = check("2*t^4 - 1", "2*t^2", "t^4 - 1", Policy::STRICT).unwrap();
        let c = classify_powers(&s);
        assert_eq!(c.admissible, vec![2]);
        assert_eq!(c.witnesses[&2].root, p("t^2"));
        assert!(!c.primitive);

        let s = check("t^2", "1", "t^4 - 1", Policy::STRICT).unwrap();
        let c = classify_powers(&s);
        assert!(c.admissible.is_empty() && c.primitive);

        let s = check("2*t^3 - 1", "2*t", "t^4 - t", Policy::STRICT).unwrap();
        let c = classify_powers(&s);
        assert!(c.admissible.is_empty() && c.primitive);
    }

    #[test]
    fn admissible_lists() {
        assert_eq!(admissible_powers(6, 2), vec![2, 3]);
        assert_eq!(admissible_powers(12, 3), vec![2, 3, 4]);
        assert_eq!(admissible_powers(7, 2), Vec::<usize>::new());
        assert_eq!(admissible_powers(4, 1), vec![2, 4]);
    }

    #[test]
    fn seeded_solutions_have_2d_odd_points_over_one() {
        for seed in ["t^2", "2*t^3 - 1", "t^3 + t", "2*t^4 - 1", "t^5 - 3*t"] {
            let Ok(s) = generate_from_seed(&p(seed), Policy::STRICT) else {
                continue;
            };
            let phi = s.a() * s.a();
            let ty = ramification_type(&phi, &rat(1));
            let odd: usize =
                ty.0.iter()
                    .filter(|(i, _)| *i % 2 == 1)
                    .map(|(_, c)| c)
                    .sum();
            assert_eq!(odd, 2 * s.half_degree(), "{seed}");
            // Roots of D are simple preimages unless B vanishes there too.
            let coprime = crate::poly::gcd(s.b(), s.d()).unwrap().is_one();
            assert_eq!(ty.count(1) == 2 * s.half_degree(), coprime, "{seed}");
        }
    }
}
