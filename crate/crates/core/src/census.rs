//! Special 4-tuples for `d = 2`: generation from the three shape families,
//! an exhaustive search over fixed-point-free involutions, conjugacy
//! classes under rotation, and the closed counting formulas.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hurwitz::{primitivity_profile, HurwitzTuple, TupleJson};
use crate::perm::Perm;

/// Largest `n` searched exhaustively unless overridden.
pub const DEFAULT_BRUTE_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n = {n} is below 2")]
    InvalidN { n: usize },
    #[error("exhaustive search at n = {n} exceeds the bound {max}")]
    TooLarge { n: usize, max: usize },
}

/// Which long cycle, if any, `σ1 τ` carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ShapeCase {
    Disjoint,
    ThreeCycle,
    FourCycle,
}

impl ShapeCase {
    pub const ALL: [ShapeCase; 3] = [
        ShapeCase::Disjoint,
        ShapeCase::ThreeCycle,
        ShapeCase::FourCycle,
    ];

    /// Case of `σ1 τ`: all 2-cycles with two fixed points, or one 3-cycle
    /// with three, or one 4-cycle with four.
    pub fn of_product(pi: &Perm) -> Option<ShapeCase> {
        let ty = pi.cycle_type();
        let fixed = ty.iter().filter(|&&l| l == 1).count();
        let long: Vec<usize> = ty.iter().copied().filter(|&l| l > 2).collect();
        match (long.as_slice(), fixed) {
            ([], 2) => Some(ShapeCase::Disjoint),
            ([3], 3) => Some(ShapeCase::ThreeCycle),
            ([4], 4) => Some(ShapeCase::FourCycle),
            _ => None,
        }
    }

    pub fn of_tuple(t: &HurwitzTuple) -> Option<ShapeCase> {
        let tau = t.taus().first()?;
        ShapeCase::of_product(&t.sigma1().then(tau))
    }
}

/// Parameters of one shape. `tau` indexes the transposition choice:
/// `ThreeCycle` picks from `(h,k)`, `(h,2n-h)`, `(k,2n-h)`; `FourCycle` from
/// `(h,k2)`, `(k1,2n-h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "case")]
pub enum ShapeParams {
    Disjoint {
        h: usize,
    },
    ThreeCycle {
        h: usize,
        k: usize,
        tau: u8,
    },
    FourCycle {
        h: usize,
        k1: usize,
        k2: usize,
        tau: u8,
    },
}

impl ShapeParams {
    pub fn case(&self) -> ShapeCase {
        match self {
            ShapeParams::Disjoint { .. } => ShapeCase::Disjoint,
            ShapeParams::ThreeCycle { .. } => ShapeCase::ThreeCycle,
            ShapeParams::FourCycle { .. } => ShapeCase::FourCycle,
        }
    }

    /// Every admissible parameter set for degree `n`, in a fixed order.
    pub fn all(n: usize) -> Vec<ShapeParams> {
        let top = 2 * n;
        let mut out: Vec<ShapeParams> = (1..n).map(|h| ShapeParams::Disjoint { h }).collect();
        for h in 1..=n.saturating_sub(2) {
            for k in (h + 2..=top - h - 2).step_by(2) {
                out.extend((0..3).map(|tau| ShapeParams::ThreeCycle { h, k, tau }));
            }
        }
        for h in 1..=n.saturating_sub(3) {
            for k1 in (h + 2..=top - h - 4).step_by(2) {
                for k2 in (k1 + 2..=top - h - 2).step_by(2) {
                    out.extend((0..2).map(|tau| ShapeParams::FourCycle { h, k1, k2, tau }));
                }
            }
        }
        out
    }

    /// Endpoints of `τ`.
    fn tau_pair(&self, n: usize) -> (usize, usize) {
        let top = 2 * n;
        match *self {
            ShapeParams::Disjoint { h } => (h, top - h),
            ShapeParams::ThreeCycle { h, k, tau } => {
                [(h, k), (h, top - h), (k, top - h)][tau as usize]
            }
            ShapeParams::FourCycle { h, k1, k2, tau } => [(h, k2), (k1, top - h)][tau as usize],
        }
    }

    /// Builds `σ0` and `σ1 τ` from the shape and splits off `τ`.
    pub fn build(&self, n: usize) -> HurwitzTuple {
        let top = 2 * n;
        // Cut points splitting 1..2n-h into nested reflections.
        let (h, cuts, long): (usize, Vec<usize>, Vec<usize>) = match *self {
            ShapeParams::Disjoint { h: _ } => (n, vec![], vec![]),
            ShapeParams::ThreeCycle { h, k, .. } => (h, vec![k], vec![top - h, h, k]),
            ShapeParams::FourCycle { h, k1, k2, .. } => (h, vec![k1, k2], vec![top - h, h, k1, k2]),
        };
        let mut s0: Vec<Vec<usize>> = (1..=h).map(|i| vec![i, top + 1 - i]).collect();
        let mut pi: Vec<Vec<usize>> = (1..h).map(|i| vec![i, top - i]).collect();
        if long.is_empty() {
            // Disjoint: σ1 τ = (1,2n-1)...(n-1,n+1).
            pi = (1..n).map(|i| vec![i, top - i]).collect();
        } else {
            let mut bounds = vec![h];
            bounds.extend(&cuts);
            bounds.push(top - h);
            for w in bounds.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let half = (hi - lo) / 2;
                s0.extend((1..=half).map(|j| vec![lo + j, hi + 1 - j]));
                pi.extend((1..half).map(|j| vec![lo + j, hi - j]));
            }
            pi.push(long);
        }
        let sigma0 = Perm::from_cycles(top, &s0).expect("shape reflections are disjoint");
        let pi = Perm::from_cycles(top, &pi).expect("shape cycles are disjoint");
        let (a, b) = self.tau_pair(n);
        let tau = Perm::transposition(top, a, b);
        let sigma1 = pi.then(&tau);
        HurwitzTuple::new(sigma0, Perm::descending_cycle(top), sigma1, vec![tau], 2)
            .expect("sizes agree")
    }

    /// Reads the parameters back from a special tuple, if it has one of
    /// the three shapes.
    pub fn recover(t: &HurwitzTuple) -> Option<ShapeParams> {
        let n = t.n();
        let top = 2 * n;
        let tau = t.taus().first()?;
        let pi = t.sigma1().then(tau);
        let moved = tau.cycles();
        let [pair] = moved.as_slice() else {
            return None;
        };
        let pair = (pair[0], pair[1]);
        let params = match ShapeCase::of_product(&pi)? {
            ShapeCase::Disjoint => ShapeParams::Disjoint { h: pair.0 },
            case => {
                let long = pi.cycles().into_iter().find(|c| c.len() > 2)?;
                // Cycles start at their least label h; the last entry is 2n - h.
                let h = long[0];
                if *long.last()? != top - h {
                    return None;
                }
                let choices: Vec<(usize, usize)> = match case {
                    ShapeCase::ThreeCycle => vec![(h, long[1]), (h, top - h), (long[1], top - h)],
                    _ => vec![(h, long[2]), (long[1], top - h)],
                };
                let tau = choices.iter().position(|&p| p == pair)? as u8;
                match case {
                    ShapeCase::ThreeCycle => ShapeParams::ThreeCycle { h, k: long[1], tau },
                    _ => ShapeParams::FourCycle {
                        h,
                        k1: long[1],
                        k2: long[2],
                        tau,
                    },
                }
            }
        };
        (params.build(n) == *t).then_some(params)
    }

    /// Four-cycle on `{h, n-h, n+h, 2n-h}`, fixed by the half-turn.
    pub fn is_square(&self, n: usize) -> bool {
        matches!(*self, ShapeParams::FourCycle { h, k1, k2, .. } if k1 + h == n && k2 == n + h)
    }
}

/// Every special tuple built from the shape families.
pub fn enumerate_shapes(n: usize) -> Vec<(ShapeParams, HurwitzTuple)> {
    ShapeParams::all(n)
        .into_iter()
        .map(|p| (p, p.build(n)))
        .collect()
}

/// Tuples found by the exhaustive search, sorted, with the number of
/// involutions visited.
#[derive(Debug, Clone)]
pub struct BruteForceResult {
    pub tuples: Vec<HurwitzTuple>,
    pub involutions: u64,
}

/// All special tuples, found by running over every fixed-point-free
/// involution `σ0` of `{1..2n}`. Work is split by the partner of `1`.
pub fn brute_force_enumerate(n: usize, max: usize) -> Result<BruteForceResult, CensusError> {
    if n < 2 {
        return Err(CensusError::InvalidN { n });
    }
    if n > max {
        return Err(CensusError::TooLarge { n, max });
    }
    let top = 2 * n;
    let parts: Vec<(Vec<HurwitzTuple>, u64)> = (1..top)
        .into_par_iter()
        .map(|partner| {
            let mut s0 = vec![usize::MAX; top];
            s0[0] = partner;
            s0[partner] = 0;
            let mut found = Vec::new();
            let mut count = 0;
            involutions(&mut s0, &mut |s0| {
                count += 1;
                splits(s0, &mut found);
            });
            (found, count)
        })
        .collect();
    let involutions = parts.iter().map(|p| p.1).sum();
    let mut tuples: Vec<HurwitzTuple> = parts.into_iter().flat_map(|p| p.0).collect();
    tuples.sort();
    Ok(BruteForceResult {
        tuples,
        involutions,
    })
}

/// Completes a partial matching (`usize::MAX` = unmatched) in every way.
fn involutions(s0: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    let Some(a) = s0.iter().position(|&x| x == usize::MAX) else {
        visit(s0);
        return;
    };
    for b in a + 1..s0.len() {
        if s0[b] == usize::MAX {
            s0[a] = b;
            s0[b] = a;
            involutions(s0, visit);
            s0[b] = usize::MAX;
        }
    }
    s0[a] = usize::MAX;
}

/// Every `(σ1, τ)` with `σ1 τ = (σ0 σ∞)^-1`, `τ` a transposition, `σ1` an
/// involution with four fixed points, both fixing `2n`.
fn splits(s0: &[usize], out: &mut Vec<HurwitzTuple>) {
    let top = s0.len();
    let last = top - 1;
    // σ0 then x -> x - 1, inverted.
    let mut pi = vec![0; top];
    for x in 0..top {
        pi[(s0[x] + top - 1) % top] = x;
    }
    if pi[last] != last {
        return;
    }
    let pi = Perm::from_zero_based(pi);
    if ShapeCase::of_product(&pi).is_none() {
        return;
    }
    let sigma0 = Perm::from_zero_based(s0.to_vec());
    for a in 1..top {
        for b in a + 1..top {
            let tau = Perm::transposition(top, a, b);
            let sigma1 = pi.then(&tau);
            if sigma1.is_involution() && sigma1.fixed_points().len() == 4 {
                let t = HurwitzTuple::new(
                    sigma0.clone(),
                    Perm::descending_cycle(top),
                    sigma1,
                    vec![tau],
                    2,
                )
                .expect("sizes agree");
                out.push(t);
            }
        }
    }
}

/// A conjugacy class of special tuples; `representative` is the least
/// member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleClass {
    pub representative: HurwitzTuple,
    pub members: Vec<HurwitzTuple>,
}

/// Least special tuple among the conjugates by powers of `σ∞`.
pub fn canonical_form(t: &HurwitzTuple) -> HurwitzTuple {
    let rot = t.sigma_inf().clone();
    let mut g = Perm::identity(rot.size());
    let mut best: Option<HurwitzTuple> = None;
    for _ in 0..rot.size() {
        let c = t.conjugate(&g);
        if c.is_special() && best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
        g = g.then(&rot);
    }
    best.unwrap_or_else(|| t.clone())
}

/// Partition of special tuples into classes, ordered by representative.
pub fn conjugacy_classes(tuples: &[HurwitzTuple]) -> Vec<TupleClass> {
    let mut by_rep: BTreeMap<HurwitzTuple, BTreeSet<HurwitzTuple>> = BTreeMap::new();
    for t in tuples {
        by_rep
            .entry(canonical_form(t))
            .or_default()
            .insert(t.clone());
    }
    by_rep
        .into_iter()
        .map(|(representative, members)| TupleClass {
            representative,
            members: members.into_iter().collect(),
        })
        .collect()
}

/// Class counts predicted by the closed formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedFormulas {
    pub disjoint: usize,
    pub three_cycle: usize,
    /// `C1 / 2` for odd `n`, `(C1 + C2) / 2` for even `n`, rounded down.
    pub four_cycle: usize,
    /// Whether the numerator of `four_cycle` was even.
    pub four_cycle_exact: bool,
    pub c1: usize,
    /// Only for even `n`.
    pub c2: Option<usize>,
}

impl ClosedFormulas {
    pub fn get(&self, case: ShapeCase) -> usize {
        match case {
            ShapeCase::Disjoint => self.disjoint,
            ShapeCase::ThreeCycle => self.three_cycle,
            ShapeCase::FourCycle => self.four_cycle,
        }
    }
}

pub fn closed_formulas(n: usize) -> ClosedFormulas {
    let mut c1 = 0;
    for h in 1..=n.saturating_sub(3) {
        for k in (h + 2..=2 * n - 4 - h).step_by(2) {
            c1 += n - 1 - (k + h) / 2;
        }
    }
    let c2 = n.is_multiple_of(2).then(|| n / 2 - 1);
    let numerator = c1 + c2.unwrap_or(0);
    ClosedFormulas {
        disjoint: n / 2,
        three_cycle: (n - 1) * (n - 2) / 2,
        four_cycle: numerator / 2,
        four_cycle_exact: numerator % 2 == 0,
        c1,
        c2,
    }
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveDisjoint {
    pub count: usize,
    /// Least `h` with `τ = (h, 2n-h)` in each primitive class.
    pub classes: Vec<usize>,
    /// `φ(n) / 2`.
    pub expected: usize,
}

/// Disjoint classes with `gcd(h, n) = 1`.
pub fn primitive_disjoint_classes(n: usize) -> PrimitiveDisjoint {
    let tuples: Vec<HurwitzTuple> = (1..n)
        .map(|h| ShapeParams::Disjoint { h }.build(n))
        .collect();
    let mut classes: Vec<usize> = conjugacy_classes(&tuples)
        .iter()
        .map(|c| {
            c.members
                .iter()
                .map(|t| t.taus()[0].cycles()[0][0])
                .min()
                .unwrap()
        })
        .filter(|h| h.gcd(&n) == 1)
        .collect();
    classes.sort_unstable();
    PrimitiveDisjoint {
        count: classes.len(),
        classes,
        expected: euler_phi(n) / 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BruteForce {
    /// Only when asked for.
    #[default]
    Never,
    /// Whenever `n` is within the bound.
    Auto,
    /// Always; an error beyond the bound.
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub brute_force: BruteForce,
    pub brute_max: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            brute_force: BruteForce::Auto,
            brute_max: DEFAULT_BRUTE_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: ShapeCase,
    pub shape_tuples: usize,
    pub shape_classes: usize,
    pub brute_tuples: Option<usize>,
    pub brute_classes: Option<usize>,
    pub closed_classes: usize,
    /// Sorted class sizes from the exhaustive search when run, otherwise
    /// from the shapes.
    pub class_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub case: ShapeCase,
    pub kind: DiscrepancyKind,
    pub left: (String, usize),
    pub right: (String, usize),
    /// Up to 16 tuples in the symmetric difference or in offending classes.
    pub tuples: Vec<TupleJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiscrepancyKind {
    ShapeVsBrute,
    CountVsClosed,
    ClassSize,
    UnclassifiedTuple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub brute_forced: bool,
    pub involutions_scanned: Option<u64>,
    pub cases: Vec<CaseReport>,
    pub closed: ClosedFormulas,
    pub primitive_disjoint: PrimitiveDisjoint,
    pub discrepancies: Vec<Discrepancy>,
}

impl CensusReport {
    pub fn case(&self, case: ShapeCase) -> &CaseReport {
        self.cases
            .iter()
            .find(|c| c.case == case)
            .expect("all cases reported")
    }

    /// Shapes and the exhaustive search agree, tuple for tuple.
    pub fn shape_matches_brute(&self) -> bool {
        !self.discrepancies.iter().any(|d| {
            matches!(
                d.kind,
                DiscrepancyKind::ShapeVsBrute | DiscrepancyKind::UnclassifiedTuple
            )
        })
    }
}

const MAX_ATTACHED: usize = 16;

fn attach<'a>(tuples: impl IntoIterator<Item = &'a HurwitzTuple>) -> Vec<TupleJson> {
    tuples
        .into_iter()
        .take(MAX_ATTACHED)
        .map(TupleJson::from)
        .collect()
}

fn split_by_case(
    tuples: &[HurwitzTuple],
) -> (BTreeMap<ShapeCase, Vec<HurwitzTuple>>, Vec<HurwitzTuple>) {
    let mut by_case: BTreeMap<ShapeCase, Vec<HurwitzTuple>> =
        ShapeCase::ALL.iter().map(|&c| (c, Vec::new())).collect();
    let mut other = Vec::new();
    for t in tuples {
        match ShapeCase::of_tuple(t) {
            Some(c) => by_case.get_mut(&c).unwrap().push(t.clone()),
            None => other.push(t.clone()),
        }
    }
    (by_case, other)
}

/// Expected class size: 3 for three-cycles; 2 for the square four-cycle
/// configuration and 4 otherwise; the disjoint pairing `h <-> n - h`.
fn expected_class_size(class: &TupleClass, n: usize) -> Option<usize> {
    let params = ShapeParams::recover(&class.representative)?;
    Some(match params {
        ShapeParams::Disjoint { h } => {
            if 2 * h == n {
                1
            } else {
                2
            }
        }
        ShapeParams::ThreeCycle { .. } => 3,
        ShapeParams::FourCycle { .. } => {
            let square = class
                .members
                .iter()
                .any(|t| ShapeParams::recover(t).is_some_and(|p| p.is_square(n)));
            if square {
                2
            } else {
                4
            }
        }
    })
}

pub fn census(n: usize, options: &CensusOptions) -> Result<CensusReport, CensusError> {
    if n < 2 {
        return Err(CensusError::InvalidN { n });
    }
    let run_brute = match options.brute_force {
        BruteForce::Never => false,
        BruteForce::Auto => n <= options.brute_max,
        BruteForce::Always => true,
    };
    let brute = if run_brute {
        Some(brute_force_enumerate(n, options.brute_max)?)
    } else {
        None
    };

    let shapes: Vec<HurwitzTuple> = enumerate_shapes(n).into_iter().map(|(_, t)| t).collect();
    let (shape_by_case, _) = split_by_case(&shapes);
    let closed = closed_formulas(n);
    let mut discrepancies = Vec::new();
    let mut cases = Vec::new();

    let brute_split = brute.as_ref().map(|b| split_by_case(&b.tuples));
    if let Some((_, other)) = &brute_split {
        if !other.is_empty() {
            discrepancies.push(Discrepancy {
                case: ShapeCase::Disjoint,
                kind: DiscrepancyKind::UnclassifiedTuple,
                left: ("unclassified".into(), other.len()),
                right: ("expected".into(), 0),
                tuples: attach(other),
            });
        }
    }

    for case in ShapeCase::ALL {
        let shape_tuples = &shape_by_case[&case];
        let shape_classes = conjugacy_classes(shape_tuples);
        let brute_case = brute_split.as_ref().map(|(by_case, _)| &by_case[&case]);
        let brute_classes = brute_case.map(|b| conjugacy_classes(b));

        if let Some(b) = brute_case {
            let s: BTreeSet<&HurwitzTuple> = shape_tuples.iter().collect();
            let bset: BTreeSet<&HurwitzTuple> = b.iter().collect();
            if s != bset {
                let diff: Vec<&HurwitzTuple> = s.symmetric_difference(&bset).copied().collect();
                discrepancies.push(Discrepancy {
                    case,
                    kind: DiscrepancyKind::ShapeVsBrute,
                    left: ("shape_tuples".into(), s.len()),
                    right: ("brute_tuples".into(), bset.len()),
                    tuples: attach(diff),
                });
            }
        }

        let (counted_name, counted) = match &brute_classes {
            Some(c) => ("brute_classes", c.len()),
            None => ("shape_classes", shape_classes.len()),
        };
        if counted != closed.get(case) || (case == ShapeCase::FourCycle && !closed.four_cycle_exact)
        {
            discrepancies.push(Discrepancy {
                case,
                kind: DiscrepancyKind::CountVsClosed,
                left: (counted_name.into(), counted),
                right: ("closed_classes".into(), closed.get(case)),
                tuples: Vec::new(),
            });
        }

        let ground = brute_classes.as_ref().unwrap_or(&shape_classes);
        for class in ground {
            let expected = expected_class_size(class, n);
            if expected != Some(class.members.len()) {
                discrepancies.push(Discrepancy {
                    case,
                    kind: DiscrepancyKind::ClassSize,
                    left: ("class_size".into(), class.members.len()),
                    right: ("expected_size".into(), expected.unwrap_or(0)),
                    tuples: attach(&class.members),
                });
            }
        }
        let mut class_sizes: Vec<usize> = ground.iter().map(|c| c.members.len()).collect();
        class_sizes.sort_unstable();

        cases.push(CaseReport {
            case,
            shape_tuples: shape_tuples.len(),
            shape_classes: shape_classes.len(),
            brute_tuples: brute_case.map(Vec::len),
            brute_classes: brute_classes.as_ref().map(Vec::len),
            closed_classes: closed.get(case),
            class_sizes,
        });
    }

    Ok(CensusReport {
        n,
        brute_forced: brute.is_some(),
        involutions_scanned: brute.as_ref().map(|b| b.involutions),
        cases,
        closed,
        primitive_disjoint: primitive_disjoint_classes(n),
        discrepancies,
    })
}

/// Profiles of the disjoint classes: `(least h, profile)`.
pub fn disjoint_profiles(n: usize) -> Vec<(usize, Vec<usize>)> {
    (1..=n / 2)
        .map(|h| {
            (
                h,
                primitivity_profile(&ShapeParams::Disjoint { h }.build(n)).expect("special tuple"),
            )
        })
        .collect()
}
