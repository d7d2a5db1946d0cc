use std::collections::{HashSet, VecDeque};

use super::{Perm, PermError};

/// A partition of `{1, ..., N}` into `ell` blocks of equal size, labelled
/// `1..=ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    n: usize,
    ell: usize,
    /// 0-based block index of each 0-based point.
    label: Vec<usize>,
}

impl BlockPartition {
    /// Blocks given as lists of 1-based points; block `i` gets label `i + 1`.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self, PermError> {
        let ell = blocks.len();
        if ell == 0 || !n.is_multiple_of(ell) {
            return Err(PermError::NotADivisor { ell, n });
        }
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.len() != n / ell {
                return Err(PermError::NotABijection);
            }
            for &x in block {
                if x == 0 || x > n {
                    return Err(PermError::LabelOutOfRange { label: x, n });
                }
                if label[x - 1] != usize::MAX {
                    return Err(PermError::NotABijection);
                }
                label[x - 1] = b;
            }
        }
        Ok(BlockPartition { n, ell, label })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Label in `1..=ell` of the block holding `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.label[x - 1] + 1
    }

    /// Blocks in label order, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::with_capacity(self.n / self.ell); self.ell];
        for (x, &b) in self.label.iter().enumerate() {
            out[b].push(x + 1);
        }
        out
    }
}

/// Blocks by residue mod `ell`: block `h` holds the points `≡ h`, with
/// label `ell` standing for residue 0.
pub fn congruence_partition(n: usize, ell: usize) -> Result<BlockPartition, PermError> {
    if ell == 0 || !n.is_multiple_of(ell) {
        return Err(PermError::NotADivisor { ell, n });
    }
    Ok(BlockPartition {
        n,
        ell,
        label: (0..n).map(|x| x % ell).collect(),
    })
}

/// The induced permutation of block labels, or `None` if some block is
/// split.
pub fn preserves_partition(a: &Perm, part: &BlockPartition) -> Option<Perm> {
    if a.size() != part.n {
        return None;
    }
    let mut map = vec![usize::MAX; part.ell];
    for x in 0..part.n {
        let from = part.label[x];
        let to = part.label[a.apply0(x)];
        if map[from] == usize::MAX {
            map[from] = to;
        } else if map[from] != to {
            return None;
        }
    }
    Some(Perm::from_zero_based(map))
}

/// One orbit under the group generated by `gens`. An empty list is not
/// transitive.
pub fn is_transitive(gens: &[Perm]) -> bool {
    let Some(first) = gens.first() else {
        return false;
    };
    let n = first.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for g in gens {
        assert_eq!(g.size(), n, "permutation sizes differ");
        for x in 0..n {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, g.apply0(x)));
            if rx != ry {
                parent[rx] = ry;
                components -= 1;
            }
        }
    }
    components == 1
}

/// The `ell`-block system compatible with the first full cycle among
/// `gens`, if every generator preserves it.
///
/// With a full cycle present the only candidate is the congruence
/// partition read along that cycle: position `p` (steps from `N`) gets
/// block `(N - p - 1) mod ell`. For the standard descending cycle this is
/// [`congruence_partition`].
pub fn is_ell_imprimitive(gens: &[Perm], ell: usize) -> Result<Option<BlockPartition>, PermError> {
    let cycle = gens
        .iter()
        .find(|g| g.is_full_cycle())
        .ok_or(PermError::NeedFullCycle)?;
    let n = cycle.size();
    if let Some(g) = gens.iter().find(|g| g.size() != n) {
        return Err(PermError::SizeMismatch {
            left: n,
            right: g.size(),
        });
    }
    if ell == 0 || n % ell != 0 {
        return Err(PermError::NotADivisor { ell, n });
    }
    let mut label = vec![0; n];
    let mut x = n - 1;
    for pos in 0..n {
        label[x] = (n - pos - 1) % ell;
        x = cycle.apply0(x);
    }
    let part = BlockPartition { n, ell, label };
    Ok(gens
        .iter()
        .all(|g| preserves_partition(g, &part).is_some())
        .then_some(part))
}

/// Action of each generator on the block labels.
pub fn induced_block_action(gens: &[Perm], part: &BlockPartition) -> Result<Vec<Perm>, PermError> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| preserves_partition(g, part).ok_or(PermError::NotPreserved { generator: i }))
        .collect()
}

/// [`is_dihedral_of_order_bounded`] with a closure bound of `10 m`.
pub fn is_dihedral_of_order(perms: &[Perm], order: usize) -> Result<bool, PermError> {
    is_dihedral_of_order_bounded(perms, order, 5 * order)
}

/// Whether `perms` generate a dihedral group of the given order `2m`, with
/// `r = perms[0]` and `s = perms[1]` (identity when absent) satisfying
/// `r^m = s^2 = (sr)^2 = id`. Remaining entries only enlarge the closure.
pub fn is_dihedral_of_order_bounded(
    perms: &[Perm],
    order: usize,
    bound: usize,
) -> Result<bool, PermError> {
    let Some(r) = perms.first() else {
        return Ok(false);
    };
    let m = r.size();
    if order != 2 * m {
        return Err(PermError::InvalidOrder { order });
    }
    if let Some(g) = perms.iter().find(|g| g.size() != m) {
        return Err(PermError::SizeMismatch {
            left: m,
            right: g.size(),
        });
    }
    let id = Perm::identity(m);
    let s = perms.get(1).cloned().unwrap_or_else(|| id.clone());
    let relations =
        r.pow(m as i64).is_identity() && s.then(&s).is_identity() && s.then(r).pow(2).is_identity();

    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for gen in perms {
            let h = g.then(gen);
            if seen.insert(h.clone()) {
                if seen.len() > bound {
                    return Err(PermError::ClosureOverflow { bound });
                }
                queue.push_back(h);
            }
        }
    }
    Ok(relations && seen.len() == order)
}
