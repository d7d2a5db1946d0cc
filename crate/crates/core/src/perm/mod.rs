//! Permutations of `{1, ..., N}` and block systems of the groups they
//! generate.
//!
//! Products read left to right: `a.then(b)` applies `a` first, so the
//! monodromy relation `σ0 σ∞ σ1 τ = id` is
//! `s0.then(&sinf).then(&s1).then(&tau).is_identity()`. Labels are 1-based
//! at the API boundary.

mod blocks;

use std::fmt;

use thiserror::Error;

pub use blocks::{
    congruence_partition, induced_block_action, is_dihedral_of_order, is_dihedral_of_order_bounded,
    is_ell_imprimitive, is_transitive, preserves_partition, BlockPartition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutations act on {left} and {right} points")]
    SizeMismatch { left: usize, right: usize },
    #[error("images do not form a bijection")]
    NotABijection,
    #[error("label {label} outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{ell} does not divide {n}")]
    NotADivisor { ell: usize, n: usize },
    #[error("no generator is a full cycle")]
    NeedFullCycle,
    #[error("generator {generator} does not preserve the partition")]
    NotPreserved { generator: usize },
    #[error("group closure exceeded {bound} elements")]
    ClosureOverflow { bound: usize },
    #[error("order {order} is not twice the number of points")]
    InvalidOrder { order: usize },
}

/// A permutation stored as 0-based images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &y in images {
            if y == 0 || y > n {
                return Err(PermError::LabelOutOfRange { label: y, n });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(PermError::NotABijection);
            }
            out.push(y - 1);
        }
        Ok(Perm { images: out })
    }

    /// Trusted 0-based constructor for hot loops.
    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(&images.iter().map(|x| x + 1).collect::<Vec<_>>()).is_ok());
        Perm { images }
    }

    /// Product of disjoint cycles on `n` points. Cycles may not overlap.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(PermError::LabelOutOfRange { label: x, n });
                }
                if std::mem::replace(&mut touched[x - 1], true) {
                    return Err(PermError::NotABijection);
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Perm { images })
    }

    /// The transposition `(a, b)`; panics on labels out of range or `a == b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a != b && (1..=n).contains(&a) && (1..=n).contains(&b));
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Perm { images }
    }

    /// `(n, n-1, ..., 1)`: `x -> x - 1` and `1 -> n`.
    pub fn descending_cycle(n: usize) -> Self {
        Perm {
            images: (0..n).map(|i| (i + n - 1) % n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based label `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    pub(crate) fn apply0(&self, x: usize) -> usize {
        self.images[x]
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|y| y + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// `self` first, then `other`. Panics on a size mismatch; see
    /// [`compose_perm`] for the checked form.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.size(), other.size(), "permutation sizes differ");
        Perm {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.size()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[y] = i;
        }
        Perm { images: inv }
    }

    /// `g^-1 a g`: the cycle structure of `a` with every label `y` renamed
    /// to `g(y)`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        assert_eq!(self.size(), g.size(), "permutation sizes differ");
        let mut out = vec![0; self.size()];
        for (y, &ay) in self.images.iter().enumerate() {
            out[g.images[y]] = g.images[ay];
        }
        Perm { images: out }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.size());
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    /// Every cycle including fixed points, each starting at its least label,
    /// ordered by that label.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    /// Cycle lengths including 1-cycles, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.all_cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.images[i] == i)
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_full_cycle(&self) -> bool {
        let n = self.size();
        let mut x = 0;
        for step in 1..=n {
            x = self.images[x];
            if x == 0 {
                return step == n;
            }
        }
        false
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &y)| self.images[y] == i)
    }

    /// `N - (number of cycles)`, the sum of `length - 1` over cycles.
    pub fn branching(&self) -> usize {
        self.size() - self.all_cycles().len()
    }

    /// Parses cycle notation such as `(1,8)(2,7)` or `()` on `n` points.
    pub fn parse(s: &str, n: usize) -> Result<Perm, PermError> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let err = |offset: usize, message: &str| PermError::Parse {
            offset,
            message: message.into(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut starts = Vec::new();
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty permutation; write `()` for the identity"));
        }
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(err(pos, "expected `(`"));
            }
            starts.push(pos);
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b')' && cycle.is_empty() {
                    pos += 1;
                    break;
                }
                let begin = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if begin == pos {
                    return Err(err(pos, "expected a label"));
                }
                let label: usize = s[begin..pos]
                    .parse()
                    .map_err(|_| err(begin, "label too large"))?;
                if label == 0 || label > n {
                    return Err(err(begin, &format!("label {label} outside 1..={n}")));
                }
                cycle.push(label);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(err(pos, "expected `,` or `)`")),
                }
            }
            cycles.push(cycle);
            skip_ws(&mut pos);
        }
        Perm::from_cycles(n, &cycles).map_err(|e| match e {
            PermError::NotABijection => err(*starts.last().unwrap(), "cycles overlap"),
            other => other,
        })
    }
}

/// Checked left-to-right product: `a` first, then `b`.
pub fn compose_perm(a: &Perm, b: &Perm) -> Result<Perm, PermError> {
    if a.size() != b.size() {
        return Err(PermError::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    Ok(a.then(b))
}

/// Checked `g^-1 a g`.
pub fn conjugate(a: &Perm, g: &Perm) -> Result<Perm, PermError> {
    if a.size() != g.size() {
        return Err(PermError::SizeMismatch {
            left: a.size(),
            right: g.size(),
        });
    }
    Ok(a.conjugate(g))
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.size(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn left_to_right_product() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        // 1 -> 2 -> 3
        assert_eq!(a.then(&b).apply(1), 3);
        assert_eq!(a.then(&b), p("(1,3,2)", 3));
        assert_eq!(compose_perm(&Perm::identity(3), &a).unwrap(), a);
        assert_eq!(
            compose_perm(&a, &Perm::identity(4)),
            Err(PermError::SizeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn conjugation_relabels() {
        let sinf = Perm::descending_cycle(12);
        let a = p("(1,11)", 12);
        assert_eq!(a.conjugate(&sinf.pow(6)), p("(5,7)", 12));
        assert_eq!(a.conjugate(&Perm::identity(12)), a);
        let g = p("(1,2,3)", 12);
        assert_eq!(a.conjugate(&g), g.inverse().then(&a).then(&g));
    }

    #[test]
    fn cycle_data() {
        let a = p("(1,2)(3,4,5)", 5);
        assert_eq!(a.cycle_type(), vec![3, 2]);
        assert_eq!(a.branching(), 3);
        let sinf = Perm::descending_cycle(8);
        assert_eq!(sinf.cycle_type(), vec![8]);
        assert!(sinf.is_full_cycle());
        assert_eq!(sinf.apply(1), 8);
        assert_eq!(sinf.apply(5), 4);
        assert_eq!(sinf.to_string(), "(1,8,7,6,5,4,3,2)");
        let s1 = p("(1,7)(2,6)", 8);
        assert_eq!(s1.fixed_points(), vec![3, 4, 5, 8]);
        assert_eq!(s1.cycle_type(), vec![2, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn pow_and_inverse() {
        let c = Perm::descending_cycle(6);
        assert!(c.pow(6).is_identity());
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(-2), c.pow(4));
        assert!(c.then(&c.inverse()).is_identity());
    }

    #[test]
    fn text_round_trip() {
        for s in ["()", "(1,8)(2,7)(3,6)(4,5)", "(1,3,2)", "(2,5)"] {
            assert_eq!(p(s, 8).to_string(), s);
        }
        assert_eq!(p(" ( 2 , 1 ) ", 3).to_string(), "(1,2)");
        assert_eq!(p("(1)(2,3)", 3).to_string(), "(2,3)");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Perm::parse("(1,9)", 8),
            Err(PermError::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            Perm::parse("(1,2)(2,3)", 8),
            Err(PermError::Parse { offset: 5, .. })
        ));
        assert!(matches!(
            Perm::parse("(1 2)", 8),
            Err(PermError::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            Perm::parse("1,2", 8),
            Err(PermError::Parse { offset: 0, .. })
        ));
        assert!(matches!(Perm::parse("", 8), Err(PermError::Parse { .. })));
    }

    #[test]
    fn from_images_checks() {
        assert_eq!(Perm::from_images(&[2, 1, 3]).unwrap(), p("(1,2)", 3));
        assert_eq!(Perm::from_images(&[1, 1, 3]), Err(PermError::NotABijection));
        assert_eq!(
            Perm::from_images(&[1, 4, 3]),
            Err(PermError::LabelOutOfRange { label: 4, n: 3 })
        );
    }
}
