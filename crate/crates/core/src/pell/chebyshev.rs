//! Chebyshev polynomials, the power polynomials `f_m` with
//! `f_m(t^2) = T_m(t)^2`, and inversion of `A = ±T_m(A')`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use serde::Serialize;

use crate::poly::{rat, rational_root, Poly, Rat};

/// `T_m` from `T_0 = 1`, `T_1 = t`, `T_{k+1} = 2t T_k - T_{k-1}`.
pub fn chebyshev(m: usize) -> Poly {
    let two_t = Poly::from_ints(&[0, 2]);
    let mut prev = Poly::one();
    let mut cur = Poly::var();
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &(&two_t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn binom(n: usize, k: usize) -> Rat {
    Rat::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// `sum_{j=0}^{k} C(m, 2j) (w-1)^j w^(k-j)` with `k = floor(m/2)`.
fn power_core(m: usize) -> Poly {
    let k = m / 2;
    let w = Poly::var();
    let w_minus_one = Poly::from_ints(&[-1, 1]);
    (0..=k).fold(Poly::zero(), |acc, j| {
        let term = &w_minus_one.pow(j as u32) * &w.pow((k - j) as u32);
        &acc + &term.scale(&binom(m, 2 * j))
    })
}

/// The degree-`m` power polynomial `f_m`, satisfying `f_m(A^2) = T_m(A)^2`.
///
/// Panics for `m == 0`.
pub fn power_polynomial(m: usize) -> Poly {
    assert!(m >= 1, "power polynomials start at m = 1");
    let core = power_core(m);
    let sq = &core * &core;
    if m.is_multiple_of(2) {
        sq
    } else {
        &Poly::var() * &sq
    }
}

/// A Chebyshev root: `T_m(root) = sign * A` with `sign` in `{1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MthRoot {
    pub root: Poly,
    pub sign: i8,
}

/// Finds a rational `A'` with `T_m(A') = A` or `T_m(A') = -A`.
///
/// The leading coefficient solves `2^(m-1) lc(A')^m = ±lc(A)`; the next
/// `deg A'` coefficients follow from the top coefficients of `A'^m`, which
/// the lower Chebyshev terms do not reach. Every candidate is confirmed by
/// full composition. For even `m` the root with positive leading
/// coefficient is returned; `T_m(A) = A` is tried before `-A`.
pub fn extract_mth_root(a: &Poly, m: usize) -> Option<MthRoot> {
    let n = a.degree()?;
    if m < 1 || n == 0 || n % m != 0 {
        return None;
    }
    if m == 1 {
        return Some(MthRoot {
            root: a.clone(),
            sign: 1,
        });
    }
    let k = n / m;
    let t_m = chebyshev(m);
    let scale = num_traits::pow(rat(2), m - 1).recip();
    for sign in [1i8, -1] {
        let target = a.scale(&(rat(sign as i64) * &scale));
        let Some(lead) = rational_root(&target.coeff(n), m as u32) else {
            continue;
        };
        let denom = rat(m as i64) * num_traits::pow(lead.clone(), m - 1);
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = lead;
        for j in 1..=k {
            let partial = Poly::new(coeffs.clone()).pow(m as u32);
            let gap = target.coeff(n - j) - partial.coeff(n - j);
            coeffs[k - j] = gap / &denom;
        }
        let root = Poly::new(coeffs);
        let image = t_m.compose(&root);
        let expected = if sign == 1 { a.clone() } else { -a };
        if image == expected {
            return Some(MthRoot { root, sign });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    /// `sum_{h} C(m, 2h) t^(m-2h) (t^2 - 1)^h`.
    fn chebyshev_closed_form(m: usize) -> Poly {
        let t = Poly::var();
        let t2m1 = p("t^2 - 1");
        (0..=m / 2).fold(Poly::zero(), |acc, h| {
            let term = &t.pow((m - 2 * h) as u32) * &t2m1.pow(h as u32);
            &acc + &term.scale(&binom(m, 2 * h))
        })
    }

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev(0), Poly::one());
        assert_eq!(chebyshev(1), p("t"));
        assert_eq!(chebyshev(2), p("2*t^2 - 1"));
        assert_eq!(chebyshev(3), p("4*t^3 - 3*t"));
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for m in 0..=12 {
            assert_eq!(chebyshev(m), chebyshev_closed_form(m), "m = {m}");
        }
    }

    #[test]
    fn top_two_terms() {
        for m in 2..=12usize {
            let t = chebyshev(m);
            assert_eq!(t.coeff(m), num_traits::pow(rat(2), m - 1));
            // -m 2^(m-3) as a rational for m = 2
            let second = rat(-(m as i64)) * num_traits::pow(rat(2), m - 2) / rat(2);
            assert_eq!(t.coeff(m - 2), second, "m = {m}");
        }
    }

    #[test]
    fn power_polynomial_small() {
        assert_eq!(power_polynomial(1), p("t"));
        assert_eq!(power_polynomial(2), p("4*t^2 - 4*t + 1"));
        assert_eq!(power_polynomial(3), p("16*t^3 - 24*t^2 + 9*t"));
        assert_eq!(power_polynomial(4), p("8*t^2 - 8*t + 1").pow(2));
    }

    #[test]
    fn power_polynomial_degree() {
        for m in 1..=15 {
            assert_eq!(power_polynomial(m).degree(), Some(m));
        }
    }

    #[test]
    fn extract_examples() {
        let shift = p("t + 1");
        let a = chebyshev(6).compose(&shift);
        let r = extract_mth_root(&a, 2).unwrap();
        assert_eq!(
            r,
            MthRoot {
                root: chebyshev(3).compose(&shift),
                sign: 1
            }
        );

        let r = extract_mth_root(&p("2*t^4 - 1"), 2).unwrap();
        assert_eq!(r.root, p("t^2"));

        assert_eq!(extract_mth_root(&p("2*t^3 - 1"), 3), None);
    }

    #[test]
    fn extract_negated() {
        // -T_2(t^2 + 1)
        let a = -chebyshev(2).compose(&p("t^2 + 1"));
        let r = extract_mth_root(&a, 2).unwrap();
        assert_eq!(
            r,
            MthRoot {
                root: p("t^2 + 1"),
                sign: -1
            }
        );
    }

    #[test]
    fn extract_rejects_bad_degree_and_non_powers() {
        assert_eq!(extract_mth_root(&p("t^3 + 1"), 2), None);
        // right leading coefficient, wrong tail
        assert_eq!(extract_mth_root(&p("2*t^4 + t - 1"), 2), None);
    }
}
