//! Monodromy tuples `(σ0, σ∞, σ1, τ1, ..., τk)` of the covers `A^2` for a
//! solution of degree `n` with `deg D = 2d`, and the block criterion for
//! recognising powers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pell::admissible_powers;
use crate::perm::{is_transitive, Perm, PermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("tuple acts on {size} points; an even positive number is required")]
    OddSize { size: usize },
    #[error("need n >= d, got n = {n}, d = {d}")]
    DegreeOrder { n: usize, d: usize },
    #[error("need d >= 2, got {d}")]
    DegreeTooSmall { d: usize },
    #[error("tuple is not special: σ∞ must be (2n,...,1) and 2n fixed by σ1 and every τ")]
    NotSpecialForm,
    #[error("m = {m} is not admissible for n = {n}, d = {d}")]
    NotAdmissible { m: usize, n: usize, d: usize },
    #[error("no index is fixed by σ1 and every τ")]
    NoCommonFixedPoint,
    #[error("invalid tuple JSON: {0}")]
    Json(String),
}

/// Ordered member by member, `σ0` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzTuple {
    sigma0: Perm,
    sigma_inf: Perm,
    sigma1: Perm,
    taus: Vec<Perm>,
    n: usize,
    d: usize,
}

impl HurwitzTuple {
    /// Checks only that all members act on the same even number of points.
    pub fn new(
        sigma0: Perm,
        sigma_inf: Perm,
        sigma1: Perm,
        taus: Vec<Perm>,
        d: usize,
    ) -> Result<Self, HurwitzError> {
        let size = sigma0.size();
        if size == 0 || size % 2 == 1 {
            return Err(HurwitzError::OddSize { size });
        }
        for p in [&sigma_inf, &sigma1].into_iter().chain(&taus) {
            if p.size() != size {
                return Err(PermError::SizeMismatch {
                    left: size,
                    right: p.size(),
                }
                .into());
            }
        }
        Ok(HurwitzTuple {
            sigma0,
            sigma_inf,
            sigma1,
            taus,
            n: size / 2,
            d,
        })
    }

    pub fn sigma0(&self) -> &Perm {
        &self.sigma0
    }

    pub fn sigma_inf(&self) -> &Perm {
        &self.sigma_inf
    }

    pub fn sigma1(&self) -> &Perm {
        &self.sigma1
    }

    pub fn taus(&self) -> &[Perm] {
        &self.taus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Generators with `σ∞` first, then `σ0`, `σ1` and the `τ`s.
    pub fn gens(&self) -> Vec<Perm> {
        let mut g = vec![
            self.sigma_inf.clone(),
            self.sigma0.clone(),
            self.sigma1.clone(),
        ];
        g.extend(self.taus.iter().cloned());
        g
    }

    /// `σ0 σ∞ σ1 τ1 ... τk`, read left to right.
    pub fn product(&self) -> Perm {
        let head = self.sigma0.then(&self.sigma_inf).then(&self.sigma1);
        self.taus.iter().fold(head, |acc, t| acc.then(t))
    }

    /// Every member conjugated by `g`.
    pub fn conjugate(&self, g: &Perm) -> HurwitzTuple {
        HurwitzTuple {
            sigma0: self.sigma0.conjugate(g),
            sigma_inf: self.sigma_inf.conjugate(g),
            sigma1: self.sigma1.conjugate(g),
            taus: self.taus.iter().map(|t| t.conjugate(g)).collect(),
            n: self.n,
            d: self.d,
        }
    }

    /// `σ∞ = (2n, ..., 1)` and `2n` fixed by `σ1` and every `τ`.
    pub fn is_special(&self) -> bool {
        let top = 2 * self.n;
        self.sigma_inf == Perm::descending_cycle(top)
            && self.sigma1.apply(top) == top
            && self.taus.iter().all(|t| t.apply(top) == top)
    }

    /// Indices fixed by `σ1` and by every `τ`.
    pub fn common_fixed_points(&self) -> Vec<usize> {
        self.sigma1
            .fixed_points()
            .into_iter()
            .filter(|&x| self.taus.iter().all(|t| t.apply(x) == x))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TupleJson::from(self)).expect("tuple serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, HurwitzError> {
        let raw: TupleJson =
            serde_json::from_str(s).map_err(|e| HurwitzError::Json(e.to_string()))?;
        raw.try_into()
    }
}

/// File form: permutations in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub n: usize,
    pub d: usize,
    pub sigma0: String,
    #[serde(rename = "sigmaInf")]
    pub sigma_inf: String,
    pub sigma1: String,
    pub taus: Vec<String>,
}

impl From<&HurwitzTuple> for TupleJson {
    fn from(t: &HurwitzTuple) -> Self {
        TupleJson {
            n: t.n,
            d: t.d,
            sigma0: t.sigma0.to_string(),
            sigma_inf: t.sigma_inf.to_string(),
            sigma1: t.sigma1.to_string(),
            taus: t.taus.iter().map(Perm::to_string).collect(),
        }
    }
}

impl TryFrom<TupleJson> for HurwitzTuple {
    type Error = HurwitzError;

    fn try_from(raw: TupleJson) -> Result<Self, HurwitzError> {
        if raw.n == 0 {
            return Err(HurwitzError::OddSize { size: 0 });
        }
        let size = 2 * raw.n;
        let parse = |s: &str| Perm::parse(s, size);
        let taus = raw
            .taus
            .iter()
            .map(|s| parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        HurwitzTuple::new(
            parse(&raw.sigma0)?,
            parse(&raw.sigma_inf)?,
            parse(&raw.sigma1)?,
            taus,
            raw.d,
        )
    }
}

impl Serialize for HurwitzTuple {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TupleJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HurwitzTuple {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = TupleJson::deserialize(deserializer)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Check {
    ProductIdentity,
    Transitive,
    InfinityFullCycle,
    ZeroEvenNoFixed,
    OneEvenCycles,
    FixedPointCount,
    TauCount,
    TausNontrivial,
    BranchingAboveZero,
    BranchingAboveOne,
    BranchingAboveTaus,
    TotalBranching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

/// Sum of `length - 1` over the cycles of each member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchingBudget {
    pub zero: usize,
    pub one: usize,
    pub infinity: usize,
    pub taus: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub budget: BranchingBudget,
}

impl ValidationReport {
    pub fn failures(&self) -> Vec<Check> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.check)
            .collect()
    }
}

pub fn validate(t: &HurwitzTuple) -> ValidationReport {
    let (n, d) = (t.n, t.d);
    let budget = {
        let zero = t.sigma0.branching();
        let one = t.sigma1.branching();
        let infinity = t.sigma_inf.branching();
        let taus = t.taus.iter().map(Perm::branching).sum();
        BranchingBudget {
            zero,
            one,
            infinity,
            taus,
            total: zero + one + infinity + taus,
        }
    };
    let all_even = |p: &Perm| p.cycles().iter().all(|c| c.len() % 2 == 0);
    let fixed = t.sigma1.fixed_points().len();
    let mut checks = Vec::new();
    let mut push = |check, passed, detail: String| {
        checks.push(CheckResult {
            check,
            passed,
            detail,
        })
    };

    let product = t.product();
    push(
        Check::ProductIdentity,
        product.is_identity(),
        format!("product is {product}"),
    );
    push(Check::Transitive, is_transitive(&t.gens()), String::new());
    push(
        Check::InfinityFullCycle,
        t.sigma_inf.is_full_cycle(),
        format!("σ∞ has cycle type {:?}", t.sigma_inf.cycle_type()),
    );
    push(
        Check::ZeroEvenNoFixed,
        all_even(&t.sigma0) && t.sigma0.fixed_points().is_empty(),
        format!("σ0 has cycle type {:?}", t.sigma0.cycle_type()),
    );
    push(
        Check::OneEvenCycles,
        all_even(&t.sigma1),
        format!("σ1 has cycle type {:?}", t.sigma1.cycle_type()),
    );
    push(
        Check::FixedPointCount,
        fixed == 2 * d,
        format!("σ1 fixes {fixed} points, expected {}", 2 * d),
    );
    push(
        Check::TauCount,
        t.taus.len() < d.max(1),
        format!("{} τ, at most {}", t.taus.len(), d.saturating_sub(1)),
    );
    push(
        Check::TausNontrivial,
        t.taus.iter().all(|p| !p.is_identity()),
        String::new(),
    );
    push(
        Check::BranchingAboveZero,
        budget.zero >= n,
        format!("{} above 0, at least {n}", budget.zero),
    );
    push(
        Check::BranchingAboveOne,
        budget.one + d >= n,
        format!("{} above 1, at least {}", budget.one, n.saturating_sub(d)),
    );
    push(
        Check::BranchingAboveTaus,
        budget.taus < d.max(1),
        format!("{} across τ, at most {}", budget.taus, d.saturating_sub(1)),
    );
    push(
        Check::TotalBranching,
        budget.total + 2 == 4 * n,
        format!("total {}, expected {}", budget.total, 4 * n - 2),
    );
    ValidationReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
        budget,
    }
}

/// The tuple `σ∞ = (2n, ..., 1)`, `σ0 = (1,2n)(2,2n-1)...(n,n+1)`,
/// `σ1 = (1,2n-1)(2,2n-2)...(n-d,n+d)`, `τi = (n-i, n+i)` for `i < d`.
pub fn standard_tuple(n: usize, d: usize) -> Result<HurwitzTuple, HurwitzError> {
    if d < 2 {
        return Err(HurwitzError::DegreeTooSmall { d });
    }
    if n < d {
        return Err(HurwitzError::DegreeOrder { n, d });
    }
    let size = 2 * n;
    let sigma0: Vec<[usize; 2]> = (1..=n).map(|i| [i, size + 1 - i]).collect();
    let sigma1: Vec<[usize; 2]> = (1..=n - d).map(|i| [i, size - i]).collect();
    let taus = (1..d)
        .map(|i| Perm::transposition(size, n - i, n + i))
        .collect();
    HurwitzTuple::new(
        Perm::from_cycles(size, &sigma0)?,
        Perm::descending_cycle(size),
        Perm::from_cycles(size, &sigma1)?,
        taus,
        d,
    )
}

/// Whether a special tuple passes the block conditions for an `m`-th power:
/// with `F_h` the indices `≡ h (mod 2m)`,
/// `σ∞: F_h -> F_(h-1)`, `σ1: F_h -> F_(-h)`, `σ0: F_h -> F_(1-h)`, and every
/// `τ` fixes each `F_h`. Checked pointwise on residues.
pub fn power_test(t: &HurwitzTuple, m: usize) -> Result<bool, HurwitzError> {
    if !t.is_special() {
        return Err(HurwitzError::NotSpecialForm);
    }
    if m == 0 || !t.n.is_multiple_of(m) || t.n / m < t.d {
        return Err(HurwitzError::NotAdmissible { m, n: t.n, d: t.d });
    }
    let modulus = 2 * m;
    let res = |x: usize| x % modulus;
    let maps = |p: &Perm, rule: &dyn Fn(usize) -> usize| {
        (1..=2 * t.n).all(|x| res(p.apply(x)) == rule(res(x)))
    };
    Ok(maps(&t.sigma_inf, &|r| (r + modulus - 1) % modulus)
        && maps(&t.sigma1, &|r| (modulus - r) % modulus)
        && maps(&t.sigma0, &|r| (modulus + 1 - r) % modulus)
        && t.taus.iter().all(|tau| maps(tau, &|r| r)))
}

/// The admissible `m >= 2` for which [`power_test`] holds. Empty means
/// combinatorially primitive.
pub fn primitivity_profile(t: &HurwitzTuple) -> Result<Vec<usize>, HurwitzError> {
    let mut out = Vec::new();
    for m in admissible_powers(t.n, t.d) {
        if power_test(t, m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// A conjugate in special form. Special tuples are returned unchanged;
/// otherwise the least index fixed by `σ1` and every `τ` is sent to `2n`
/// and `σ∞` is straightened to `(2n, ..., 1)` from there.
pub fn normalize_special(t: &HurwitzTuple) -> Result<HurwitzTuple, HurwitzError> {
    if t.is_special() {
        return Ok(t.clone());
    }
    if !t.sigma_inf.is_full_cycle() {
        return Err(PermError::NeedFullCycle.into());
    }
    let start = *t
        .common_fixed_points()
        .first()
        .ok_or(HurwitzError::NoCommonFixedPoint)?;
    let size = 2 * t.n;
    let mut images = vec![0; size];
    let mut x = start;
    for j in 0..size {
        images[x - 1] = size - j;
        x = t.sigma_inf.apply(x);
    }
    let g = Perm::from_images(&images)?;
    let out = t.conjugate(&g);
    debug_assert!(out.is_special());
    Ok(out)
}
