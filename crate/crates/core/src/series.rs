//! Nilpotency series of a skew brace and checkers for the right-nilpotency
//! bounds that hold when `B³ = 0`.
//!
//! Chains are 1-indexed the way they are written mathematically: `chain[0]`
//! is `B¹ = B`. Every chain stops at its first repeated term, so
//! [`term`] returns the stable value for indices past the end.

use serde::Serialize;

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::{Elem, SubSet, SCAN_ORDER_CAP};

/// `k`-th term (1-based) of a chain that stops once it stabilizes.
pub fn term(chain: &[SubSet], k: usize) -> &SubSet {
    assert!(k >= 1, "series are 1-indexed");
    &chain[(k - 1).min(chain.len() - 1)]
}

/// Class of a descending chain: `n` with `chain_{n+1} = 0 ≠ chain_n`.
fn descending_class(chain: &[SubSet]) -> Option<usize> {
    chain.last().unwrap().is_zero().then(|| chain.len() - 1)
}

fn iterate_series(b: &SkewBrace, step: impl Fn(&SubSet) -> SubSet) -> Vec<SubSet> {
    let mut chain = vec![SubSet::full(b.order())];
    for _ in 0..=b.order() {
        let next = step(chain.last().unwrap());
        if &next == chain.last().unwrap() {
            break;
        }
        chain.push(next);
    }
    chain
}

/// `B¹ = B`, `B^{n+1} = B ∗ Bⁿ`.
pub fn left_series(b: &SkewBrace) -> Vec<SubSet> {
    let full = SubSet::full(b.order());
    iterate_series(b, |prev| b.star_span(&full, prev))
}

/// `B^(1) = B`, `B^(n+1) = B^(n) ∗ B`.
pub fn right_series(b: &SkewBrace) -> Vec<SubSet> {
    let full = SubSet::full(b.order());
    iterate_series(b, |prev| b.star_span(prev, &full))
}

/// `B² = B ∗ B`.
pub fn b_squared(b: &SkewBrace) -> SubSet {
    let full = SubSet::full(b.order());
    b.star_span(&full, &full)
}

/// True when `B³ = B ∗ B² = 0`.
pub fn b_cubed_is_zero(b: &SkewBrace) -> bool {
    let full = SubSet::full(b.order());
    b.star_span(&full, &b_squared(b)).is_zero()
}

/// Ascending chain `0 = I_0 ⊆ I_1 ⊆ …` with `I_{j+1}/I_j = ζ(B/I_j)`, listed
/// until it stabilizes. Every term is checked to be an ideal.
pub fn upper_central_chain(b: &SkewBrace) -> Result<Vec<SubSet>> {
    let n = b.order();
    let mut chain = vec![SubSet::trivial(n)];
    for _ in 0..=n {
        let current = chain.last().unwrap();
        let ideal = b.is_ideal(current)?;
        let (quotient, coset_of) = b.quotient(&ideal)?;
        let centre = quotient.centre();
        let next = SubSet::new(n, (0..n).filter(|&x| centre.contains(coset_of[x])));
        if &next == current {
            break;
        }
        chain.push(next);
    }
    Ok(chain)
}

/// Central nilpotency class, or `None` when the upper central chain stalls
/// below `B`.
pub fn central_class(b: &SkewBrace) -> Result<Option<usize>> {
    let chain = upper_central_chain(b)?;
    Ok(chain.last().unwrap().is_full().then(|| chain.len() - 1))
}

/// Every ideal of `b`, by brute force over subsets containing 0. Order ≤ 8.
pub fn all_ideals(b: &SkewBrace) -> Result<Vec<SubSet>> {
    let n = b.order();
    if n > SCAN_ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: SCAN_ORDER_CAP,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set = SubSet::new(
            n,
            std::iter::once(0).chain((1..n).filter(|&i| mask >> (i - 1) & 1 == 1)),
        );
        if b.is_ideal(&set).is_ok() {
            out.push(set);
        }
    }
    Ok(out)
}

/// Shortest chain of ideals `0 = I_0 < … < I_k = B` with
/// `I_j/I_{j-1} ⊆ ζ(B/I_{j-1})`, by breadth-first search over all ideals.
/// Independent of [`central_class`]; order ≤ 8.
pub fn central_class_by_chain_search(b: &SkewBrace) -> Result<Option<usize>> {
    let n = b.order();
    let ideals = all_ideals(b)?;
    // J/I ⊆ ζ(B/I): stars both ways and additive commutators land in I
    let central_over = |i: &SubSet, j: &SubSet| {
        i.is_subset_of(j)
            && j.iter().all(|x| {
                (0..n).all(|a| {
                    i.contains(b.star(a, x))
                        && i.contains(b.star(x, a))
                        && i.contains(b.additive().commutator(a, x))
                })
            })
    };
    let start = ideals.iter().position(SubSet::is_zero).unwrap();
    let mut dist = vec![usize::MAX; ideals.len()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        if ideals[i].is_full() {
            return Ok(Some(dist[i]));
        }
        for j in 0..ideals.len() {
            if dist[j] == usize::MAX
                && ideals[j] != ideals[i]
                && central_over(&ideals[i], &ideals[j])
            {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    Ok(None)
}

/// Nilpotency class of `(B²,+)`.
pub fn b_squared_class(b: &SkewBrace) -> Option<usize> {
    let (group, _) = b
        .additive()
        .subgroup_as_group(&b_squared(b))
        .expect("B² is an additive subgroup");
    group.nilpotency_class()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub left_chain: Vec<SubSet>,
    pub right_chain: Vec<SubSet>,
    pub central_chain: Vec<SubSet>,
    pub left_class: Option<usize>,
    pub right_class: Option<usize>,
    /// Class of `(B,+)`.
    pub add_class_m: Option<usize>,
    /// Class of `(B²,+)`.
    pub bsq_class_r: Option<usize>,
    pub central_class: Option<usize>,
}

impl SeriesReport {
    pub fn compute(b: &SkewBrace) -> Result<Self> {
        let left_chain = left_series(b);
        let right_chain = right_series(b);
        let central_chain = upper_central_chain(b)?;
        Ok(SeriesReport {
            left_class: descending_class(&left_chain),
            right_class: descending_class(&right_chain),
            add_class_m: b.additive().nilpotency_class(),
            bsq_class_r: b_squared_class(b),
            central_class: central_chain
                .last()
                .unwrap()
                .is_full()
                .then(|| central_chain.len() - 1),
            left_chain,
            right_chain,
            central_chain,
        })
    }

    pub fn right_term(&self, k: usize) -> &SubSet {
        term(&self.right_chain, k)
    }

    pub fn left_term(&self, k: usize) -> &SubSet {
        term(&self.left_chain, k)
    }

    /// `B³ = 0`.
    pub fn left_class_at_most_two(&self) -> bool {
        self.left_term(3).is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    NotApplicable(String),
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, Verdict::NotApplicable(_))
    }
}

/// Outcome of the `2 + mr` bound check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightClassBound {
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub left_class: Option<usize>,
    pub right_class: Option<usize>,
    pub central_class: Option<usize>,
    /// `2 + m·r`, when both classes are finite.
    pub bound: Option<usize>,
    pub verdict: Verdict,
}

/// Applicable when `(B,+)` is nilpotent and `B³ = 0`. Passes when
/// `B^(2+mr+1) = 0` and `B` is centrally nilpotent.
pub fn right_class_bound_check(b: &SkewBrace) -> Result<RightClassBound> {
    right_class_bound_from_report(&SeriesReport::compute(b)?)
}

pub fn right_class_bound_from_report(report: &SeriesReport) -> Result<RightClassBound> {
    let (m, r) = (report.add_class_m, report.bsq_class_r);
    let bound = m.zip(r).map(|(m, r)| 2 + m * r);
    let verdict = if m.is_none() {
        Verdict::NotApplicable("additive group is not nilpotent".into())
    } else if !report.left_class_at_most_two() {
        Verdict::NotApplicable("B^3 is not zero".into())
    } else {
        let bound = bound.expect("B² ⊆ B is nilpotent when B is");
        if !report.right_term(bound + 1).is_zero() {
            Verdict::Fail(format!("B^({}) is not zero", bound + 1))
        } else if report.central_class.is_none() {
            Verdict::Fail("not centrally nilpotent".into())
        } else {
            Verdict::Pass
        }
    };
    Ok(RightClassBound {
        m,
        r,
        left_class: report.left_class,
        right_class: report.right_class,
        central_class: report.central_class,
        bound,
        verdict,
    })
}

/// Abelian type with `B³ = 0` forces `B^(4) = 0`.
pub fn abelian_type_check(b: &SkewBrace) -> Verdict {
    abelian_type_from_series(b, &right_series(b))
}

fn abelian_type_from_series(b: &SkewBrace, right: &[SubSet]) -> Verdict {
    if !b.additive().is_abelian() {
        Verdict::NotApplicable("additive group is not abelian".into())
    } else if !b_cubed_is_zero(b) {
        Verdict::NotApplicable("B^3 is not zero".into())
    } else if term(right, 4).is_zero() {
        Verdict::Pass
    } else {
        Verdict::Fail("B^(4) is not zero".into())
    }
}

/// For each `k ≥ 2` with `B^(k) ⊆ Z(B,·)`, whether `B^(k+m+1) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralTermCheck {
    pub m: Option<usize>,
    /// `(k, B^(k+m+1) = 0)` for every central `B^(k)`.
    pub central_terms: Vec<(usize, bool)>,
    pub verdict: Verdict,
}

pub fn central_term_check(b: &SkewBrace) -> CentralTermCheck {
    let m = b.additive().nilpotency_class();
    let right = right_series(b);
    let Some(m_val) = m else {
        return CentralTermCheck {
            m,
            central_terms: Vec::new(),
            verdict: Verdict::NotApplicable("additive group is not nilpotent".into()),
        };
    };
    if !b_cubed_is_zero(b) {
        return CentralTermCheck {
            m,
            central_terms: Vec::new(),
            verdict: Verdict::NotApplicable("B^3 is not zero".into()),
        };
    }
    let centre = b.multiplicative_centre();
    // past the end of the chain every term repeats, so one extra k suffices
    let central_terms: Vec<(usize, bool)> = (2..=right.len() + 1)
        .filter(|&k| term(&right, k).is_subset_of(&centre))
        .map(|k| (k, term(&right, k + m_val + 1).is_zero()))
        .collect();
    let verdict = match central_terms.iter().find(|(_, ok)| !ok) {
        Some((k, _)) => Verdict::Fail(format!(
            "B^({k}) is central but B^({}) is not zero",
            k + m_val + 1
        )),
        None => Verdict::Pass,
    };
    CentralTermCheck {
        m,
        central_terms,
        verdict,
    }
}

/// `Z_n(B²,+)` and `S_n = Ker λ^(n) ∩ B²` for `n = 0..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelChain {
    pub m: usize,
    pub r: usize,
    pub b_squared: SubSet,
    pub z_terms: Vec<SubSet>,
    /// `Ker λ^(n)`: elements acting trivially on `B/Z_n(B²,+)`.
    pub kernels: Vec<SubSet>,
    pub s_terms: Vec<SubSet>,
}

/// Builds the chain. Requires `(B,+)` nilpotent and `B³ = 0`.
pub fn kernel_chain(b: &SkewBrace) -> Result<KernelChain> {
    let n = b.order();
    let m = b
        .additive()
        .nilpotency_class()
        .ok_or_else(|| Error::NotApplicable("additive group is not nilpotent".into()))?;
    if !b_cubed_is_zero(b) {
        return Err(Error::NotApplicable("B^3 is not zero".into()));
    }
    let b2 = b_squared(b);
    let (b2_group, embed) = b.additive().subgroup_as_group(&b2)?;
    let z_terms: Vec<SubSet> = b2_group
        .upper_central_series()
        .into_iter()
        .map(|z| SubSet::new(n, z.iter().map(|i| embed[i])))
        .collect();
    let r = z_terms.len() - 1;
    if z_terms.last() != Some(&b2) {
        return Err(Error::ConstructionInvariantFailed(
            "upper central series of B² does not reach B²".into(),
        ));
    }
    let mut kernels = Vec::with_capacity(r + 1);
    for z in &z_terms {
        let ideal = b.is_ideal(z)?;
        kernels.push(quotient_action_kernel(b, &ideal.members)?);
    }
    let s_terms = kernels.iter().map(|k| k.intersection(&b2)).collect();
    Ok(KernelChain {
        m,
        r,
        b_squared: b2,
        z_terms,
        kernels,
        s_terms,
    })
}

/// Kernel of `a ↦ (b + Z ↦ λ_a(b) + Z)` acting on the additive cosets of `z`.
fn quotient_action_kernel(b: &SkewBrace, z: &SubSet) -> Result<SubSet> {
    let n = b.order();
    let (_, coset_of) = b.additive().quotient_group(z)?;
    let mut kernel = Vec::new();
    for a in 0..n {
        let mut image = vec![usize::MAX; n];
        for x in 0..n {
            let c = coset_of[x];
            let img = coset_of[b.lambda(a, x)];
            if image[c] == usize::MAX {
                image[c] = img;
            } else if image[c] != img {
                return Err(Error::ConstructionInvariantFailed(
                    "quotient action is not well defined".into(),
                ));
            }
        }
        if (0..n).all(|x| image[coset_of[x]] == coset_of[x]) {
            kernel.push(a);
        }
    }
    Ok(SubSet::new(n, kernel))
}

/// One containment `B^(right_index) ⊆ S_{s_index}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Containment {
    pub k: usize,
    pub right_index: usize,
    pub s_index: usize,
    pub holds: bool,
}

/// Every intermediate containment behind the `2 + mr` bound, on one brace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelChainReport {
    pub chain: KernelChain,
    /// Each `Z_n(B²,+)` is an ideal (checked while building the chain).
    pub z_terms_are_ideals: bool,
    pub s_terms_are_ideals: Vec<bool>,
    /// `S_0 ⊆ S_1 ⊆ … ⊆ S_r = B²`.
    pub s_chain_ascends_to_b_squared: bool,
    /// `S_0 = Ker λ ∩ B²`.
    pub s0_is_kernel_meet_b_squared: bool,
    /// `c∗b = [-c,b]_+ + [b, [c⁻¹,b⁻¹]_·]_+ + [c⁻¹,b⁻¹]_·` for `c ∈ B²`.
    pub star_commutator_expansion: Option<(Elem, Elem)>,
    /// `[d⁻¹,b⁻¹]_· ∈ S_{r-k}` for `d ∈ B^(2+m(k-1))`, each `1 ≤ k ≤ r`.
    pub commutators_in_s: Vec<(usize, bool)>,
    /// `B^(2+mk) ⊆ S_{r-k}` for `1 ≤ k ≤ r`.
    pub containments: Vec<Containment>,
    /// `B^(2+mr+1) = 0`.
    pub final_term_zero: bool,
}

impl KernelChainReport {
    pub fn all_pass(&self) -> bool {
        self.z_terms_are_ideals
            && self.s_terms_are_ideals.iter().all(|&x| x)
            && self.s_chain_ascends_to_b_squared
            && self.s0_is_kernel_meet_b_squared
            && self.star_commutator_expansion.is_none()
            && self.commutators_in_s.iter().all(|(_, ok)| *ok)
            && self.containments.iter().all(|c| c.holds)
            && self.final_term_zero
    }
}

pub fn kernel_chain_check(b: &SkewBrace) -> Result<KernelChainReport> {
    let chain = kernel_chain(b)?;
    let n = b.order();
    let (m, r) = (chain.m, chain.r);
    let right = right_series(b);
    let add = b.additive();
    let mul = b.multiplicative();

    let s_terms_are_ideals = chain
        .s_terms
        .iter()
        .map(|s| b.is_ideal(s).is_ok())
        .collect();
    let s_chain_ascends_to_b_squared = chain.s_terms.windows(2).all(|w| w[0].is_subset_of(&w[1]))
        && chain.s_terms.last() == Some(&chain.b_squared);
    let s0_is_kernel_meet_b_squared =
        chain.s_terms[0] == b.kernel_lambda().intersection(&chain.b_squared);

    let star_commutator_expansion = chain
        .b_squared
        .iter()
        .flat_map(|c| (0..n).map(move |x| (c, x)))
        .find(|&(c, x)| {
            let k = mul.commutator(mul.inv(c), mul.inv(x));
            let rhs = add.op(
                add.op(add.commutator(add.inv(c), x), add.commutator(x, k)),
                k,
            );
            b.star(c, x) != rhs
        });

    let commutators_in_s = (1..=r)
        .map(|k| {
            let source = term(&right, 2 + m * (k - 1));
            let target = &chain.s_terms[r - k];
            let ok = source
                .iter()
                .all(|d| (0..n).all(|x| target.contains(mul.commutator(mul.inv(d), mul.inv(x)))));
            (k, ok)
        })
        .collect();

    let containments = (1..=r)
        .map(|k| Containment {
            k,
            right_index: 2 + m * k,
            s_index: r - k,
            holds: term(&right, 2 + m * k).is_subset_of(&chain.s_terms[r - k]),
        })
        .collect();

    Ok(KernelChainReport {
        z_terms_are_ideals: true,
        s_terms_are_ideals,
        s_chain_ascends_to_b_squared,
        s0_is_kernel_meet_b_squared,
        star_commutator_expansion,
        commutators_in_s,
        containments,
        final_term_zero: term(&right, 2 + m * r + 1).is_zero(),
        chain,
    })
}

/// One instance in the bound-attainment ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInstance {
    pub id: String,
    pub m: usize,
    pub r: usize,
    pub right_class: usize,
    pub bound: usize,
    /// `(right_class - 2) / (m·r)`, floored at 0; 0 when `m·r = 0`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub examined: usize,
    pub applicable: usize,
    /// Applicable instances, best ratio first, ties by id.
    pub ranking: Vec<BoundInstance>,
    /// Instances with `right_class = 2 + mr` and `mr > 1`.
    pub attaining: Vec<BoundInstance>,
}

/// Ranks braces passing [`right_class_bound_check`] by how close they come
/// to the `2 + mr` bound.
/// Empirical only.
pub fn bound_attainment_search<'a>(
    catalog: impl IntoIterator<Item = (&'a str, &'a SkewBrace)>,
) -> Result<SearchReport> {
    let mut examined = 0;
    let mut ranking = Vec::new();
    for (id, b) in catalog {
        examined += 1;
        let check = right_class_bound_check(b)?;
        if !check.verdict.is_pass() {
            continue;
        }
        let (m, r) = (check.m.unwrap(), check.r.unwrap());
        let right_class = check
            .right_class
            .expect("passing braces are right nilpotent");
        let mr = m * r;
        let ratio = if mr == 0 {
            0.0
        } else {
            right_class.saturating_sub(2) as f64 / mr as f64
        };
        ranking.push(BoundInstance {
            id: id.to_string(),
            m,
            r,
            right_class,
            bound: 2 + mr,
            ratio,
        });
    }
    ranking.sort_by(|x, y| y.ratio.total_cmp(&x.ratio).then_with(|| x.id.cmp(&y.id)));
    let attaining = ranking
        .iter()
        .filter(|x| x.right_class == x.bound && x.m * x.r > 1)
        .cloned()
        .collect();
    Ok(SearchReport {
        examined,
        applicable: ranking.len(),
        ranking,
        attaining,
    })
}
