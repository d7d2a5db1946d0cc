#![allow(dead_code)]

use num_traits::{One, Zero};
use pellab::census::{brute_force_enumerate, enumerate_shapes, DEFAULT_BRUTE_MAX};
use pellab::hurwitz::HurwitzTuple;
use pellab::perm::Perm;
use pellab::poly::{Poly, Rat};

/// Every partition of `0..n` into `ell` blocks of size `n / ell`, as block
/// labels per point. Blocks are numbered by their least element.
pub fn equal_partitions(n: usize, ell: usize) -> Vec<Vec<usize>> {
    fn go(
        label: &mut Vec<usize>,
        next_block: usize,
        size: usize,
        ell: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(first) = label.iter().position(|&l| l == usize::MAX) else {
            out.push(label.clone());
            return;
        };
        if next_block == ell {
            return;
        }
        label[first] = next_block;
        choose(label, first + 1, size - 1, next_block, ell, size, out);
        label[first] = usize::MAX;
    }
    fn choose(
        label: &mut Vec<usize>,
        from: usize,
        remaining: usize,
        block: usize,
        ell: usize,
        size: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            go(label, block + 1, size, ell, out);
            return;
        }
        for x in from..label.len() {
            if label[x] == usize::MAX {
                label[x] = block;
                choose(label, x + 1, remaining - 1, block, ell, size, out);
                label[x] = usize::MAX;
            }
        }
    }
    assert!(ell > 0 && n.is_multiple_of(ell));
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], 0, n / ell, ell, &mut out);
    out
}

/// Whether `p` maps blocks to blocks under the labelling.
pub fn preserves(p: &Perm, label: &[usize]) -> bool {
    let ell = label.iter().max().map_or(0, |m| m + 1);
    let mut map = vec![usize::MAX; ell];
    for x in 1..=p.size() {
        let (from, to) = (label[x - 1], label[p.apply(x) - 1]);
        if map[from] == usize::MAX {
            map[from] = to;
        } else if map[from] != to {
            return false;
        }
    }
    true
}

/// Sorted blocks (1-based) of every equal partition preserved by all of
/// `gens`.
pub fn preserved_partitions(gens: &[Perm], partitions: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    partitions
        .iter()
        .filter(|label| gens.iter().all(|g| preserves(g, label)))
        .map(|label| blocks_of(label))
        .collect()
}

pub fn blocks_of(label: &[usize]) -> Vec<Vec<usize>> {
    let ell = label.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); ell];
    for (x, &b) in label.iter().enumerate() {
        blocks[b].push(x + 1);
    }
    blocks.sort();
    blocks
}

pub fn sorted_blocks(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    blocks.iter_mut().for_each(|b| b.sort_unstable());
    blocks.sort();
    blocks
}

/// Determinant by Gaussian elimination over `Q`.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut sign = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = &row[col] / &pivot_row[col];
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
        }
    }
    (0..n).fold(sign, |acc, i| acc * &m[i][i])
}

/// `Res(p, q)` as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(p: &Poly, q: &Poly) -> Rat {
    let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
    let size = dp + dq;
    if size == 0 {
        return Rat::one();
    }
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, copies) in [(p, dp, dq), (q, dq, dp)] {
        for shift in 0..copies {
            let mut row = vec![Rat::zero(); size];
            for k in 0..=deg {
                row[shift + k] = poly.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    det(rows)
}

/// `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn sylvester_discriminant(p: &Poly) -> Rat {
    let d = p.degree().unwrap();
    let r = sylvester_resultant(p, &p.derivative()) / p.leading_coeff().unwrap();
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Special tuples for `d = 2` from the exhaustive search when `n` is within
/// the default bound, otherwise from the shapes.
pub fn census_tuples(n: usize) -> Vec<HurwitzTuple> {
    if n <= DEFAULT_BRUTE_MAX {
        brute_force_enumerate(n, DEFAULT_BRUTE_MAX).unwrap().tuples
    } else {
        enumerate_shapes(n).into_iter().map(|(_, t)| t).collect()
    }
}

pub fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}
