//! Finite skew braces: two group structures on `0..n` sharing the identity `0`
//! and linked by left distributivity `a·(b + c) = a·b - a + a·c`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{coset_partition, Elem, FiniteGroup, Perm, SubSet};

/// On-disk representation of a brace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraceJson {
    pub order: usize,
    pub add_table: Vec<Vec<Elem>>,
    pub mul_table: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "BraceJson", into = "BraceJson")]
pub struct SkewBrace {
    add: FiniteGroup,
    mul: FiniteGroup,
    /// `lambda[a * n + b] = λ_a(b) = -a + a·b`
    lambda: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl PartialEq for SkewBrace {
    fn eq(&self, other: &Self) -> bool {
        self.add == other.add && self.mul == other.mul
    }
}

impl Eq for SkewBrace {}

impl TryFrom<BraceJson> for SkewBrace {
    type Error = Error;

    fn try_from(json: BraceJson) -> Result<Self> {
        if json.add_table.len() != json.order || json.mul_table.len() != json.order {
            return Err(Error::MalformedTable { order: json.order });
        }
        let brace = SkewBrace::from_tables(&json.add_table, &json.mul_table)?;
        match json.labels {
            Some(labels) if labels.len() != json.order => {
                Err(Error::MalformedTable { order: json.order })
            }
            labels => Ok(brace.with_labels_opt(labels)),
        }
    }
}

impl From<SkewBrace> for BraceJson {
    fn from(b: SkewBrace) -> Self {
        BraceJson {
            order: b.order(),
            add_table: b.add.rows(),
            mul_table: b.mul.rows(),
            labels: b.labels,
        }
    }
}

/// Closure flags recorded for a subset tested as an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IdealFlags {
    pub additive_subgroup: bool,
    pub normal_add: bool,
    pub multiplicative_subgroup: bool,
    pub normal_mul: bool,
    pub lambda_invariant: bool,
    pub star_absorbing_left: bool,
    pub star_absorbing_right: bool,
}

impl IdealFlags {
    /// `(I,+) ⊴ (B,+)`, `I∗B ⊆ I` and `B∗I ⊆ I`.
    pub fn by_star_absorption(&self) -> bool {
        self.additive_subgroup
            && self.normal_add
            && self.star_absorbing_left
            && self.star_absorbing_right
    }

    /// λ-invariant, normal in `(B,+)` and normal in `(B,·)`.
    pub fn by_normality(&self) -> bool {
        self.additive_subgroup
            && self.normal_add
            && self.lambda_invariant
            && self.multiplicative_subgroup
            && self.normal_mul
    }

    fn first_failure(&self) -> &'static str {
        [
            (self.additive_subgroup, "not an additive subgroup"),
            (self.normal_add, "not normal in (B,+)"),
            (self.lambda_invariant, "not lambda-invariant"),
            (self.star_absorbing_right, "B*I not contained in I"),
            (self.star_absorbing_left, "I*B not contained in I"),
            (
                self.multiplicative_subgroup,
                "not a multiplicative subgroup",
            ),
            (self.normal_mul, "not normal in (B,.)"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map_or("unknown", |(_, why)| why)
    }
}

/// A subset that passed both ideal characterizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub members: SubSet,
    pub flags: IdealFlags,
}

impl SkewBrace {
    /// Builds a brace from two validated groups and checks left distributivity
    /// over every triple.
    pub fn new(add: FiniteGroup, mul: FiniteGroup) -> Result<Self> {
        if add.order() != mul.order() {
            return Err(Error::SizeMismatch {
                left: add.order(),
                right: mul.order(),
            });
        }
        let n = add.order();
        for a in 0..n {
            let neg_a = add.inv(a);
            for b in 0..n {
                let ab = mul.op(a, b);
                for c in 0..n {
                    let lhs = mul.op(a, add.op(b, c));
                    let rhs = add.op(add.op(ab, neg_a), mul.op(a, c));
                    if lhs != rhs {
                        return Err(Error::DistributivityFails { a, b, c });
                    }
                }
            }
        }
        Ok(Self::new_unchecked(add, mul))
    }

    pub(crate) fn new_unchecked(add: FiniteGroup, mul: FiniteGroup) -> Self {
        let n = add.order();
        let mut lambda = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                lambda.push(add.op(add.inv(a), mul.op(a, b)));
            }
        }
        SkewBrace {
            add,
            mul,
            lambda,
            labels: None,
        }
    }

    pub fn from_tables(add_table: &[Vec<Elem>], mul_table: &[Vec<Elem>]) -> Result<Self> {
        Self::new(
            FiniteGroup::from_table(add_table)?,
            FiniteGroup::from_table(mul_table)?,
        )
    }

    /// The trivial brace `a·b = a + b` on `g`.
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone())
    }

    pub fn with_labels(self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.with_labels_opt(Some(labels))
    }

    fn with_labels_opt(mut self, labels: Option<Vec<String>>) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `x`, or its index when the brace carries no labels.
    pub fn label(&self, x: Elem) -> String {
        self.labels
            .as_ref()
            .map_or_else(|| x.to_string(), |l| l[x].clone())
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn multiplicative(&self) -> &FiniteGroup {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add.op(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.add.inv(a)
    }

    /// `a - b = a + (-b)`.
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add.op(a, self.add.inv(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul.op(a, b)
    }

    #[inline]
    pub fn mul_inv(&self, a: Elem) -> Elem {
        self.mul.inv(a)
    }

    /// `λ_a(b) = -a + a·b`.
    #[inline]
    pub fn lambda(&self, a: Elem, b: Elem) -> Elem {
        self.lambda[a * self.order() + b]
    }

    pub fn lambda_map(&self, a: Elem) -> Perm {
        let n = self.order();
        self.lambda[a * n..(a + 1) * n].to_vec()
    }

    /// `a∗b = -a + a·b - b = λ_a(b) - b`.
    #[inline]
    pub fn star(&self, a: Elem, b: Elem) -> Elem {
        self.sub(self.lambda(a, b), b)
    }

    pub fn is_trivial(&self) -> bool {
        self.add == self.mul
    }

    /// True when `a ↦ λ_a` is a homomorphism `(B,·) → Aut(B,+)`.
    pub fn lambda_is_action(&self) -> bool {
        let n = self.order();
        let auts_ok = (0..n).all(|a| {
            let l = self.lambda_map(a);
            crate::group::is_permutation(&l) && crate::group::is_hom(&self.add, &self.add, &l)
        });
        auts_ok
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n).all(|x| self.lambda(ab, x) == self.lambda(a, self.lambda(b, x)))
                })
            })
    }

    /// `X ∗ Y = ⟨x ∗ y | x ∈ X, y ∈ Y⟩_+`.
    pub fn star_span(&self, xs: &SubSet, ys: &SubSet) -> SubSet {
        self.add.closure_of(
            xs.iter()
                .flat_map(|x| ys.iter().map(move |y| self.star(x, y))),
        )
    }

    /// `Ker λ = {a : λ_a = id}`.
    pub fn kernel_lambda(&self) -> SubSet {
        let n = self.order();
        SubSet::new(
            n,
            (0..n).filter(|&a| (0..n).all(|b| self.lambda(a, b) == b)),
        )
    }

    /// `ζ(B) = {b : a∗b = b∗a = [a,b]_+ = 0 for all a}`.
    pub fn centre(&self) -> SubSet {
        let n = self.order();
        SubSet::new(
            n,
            (0..n).filter(|&b| {
                (0..n).all(|a| {
                    self.star(a, b) == 0 && self.star(b, a) == 0 && self.add.commutator(a, b) == 0
                })
            }),
        )
    }

    /// `λ_a(X) ⊆ X` for every `a`.
    pub fn is_lambda_invariant(&self, xs: &SubSet) -> bool {
        (0..self.order()).all(|a| xs.iter().all(|x| xs.contains(self.lambda(a, x))))
    }

    /// λ-invariant additive subgroup.
    pub fn is_left_ideal(&self, xs: &SubSet) -> bool {
        self.add.is_subgroup(xs) && self.is_lambda_invariant(xs)
    }

    pub fn ideal_flags(&self, xs: &SubSet) -> IdealFlags {
        let n = self.order();
        let additive_subgroup = self.add.is_subgroup(xs);
        let multiplicative_subgroup = self.mul.is_subgroup(xs);
        IdealFlags {
            additive_subgroup,
            normal_add: additive_subgroup && self.add.is_normal_unchecked(xs),
            multiplicative_subgroup,
            normal_mul: multiplicative_subgroup && self.mul.is_normal_unchecked(xs),
            lambda_invariant: self.is_lambda_invariant(xs),
            star_absorbing_left: xs
                .iter()
                .all(|x| (0..n).all(|b| xs.contains(self.star(x, b)))),
            star_absorbing_right: xs
                .iter()
                .all(|x| (0..n).all(|b| xs.contains(self.star(b, x)))),
        }
    }

    /// Checks both ideal characterizations; they must agree.
    pub fn is_ideal(&self, xs: &SubSet) -> Result<Ideal> {
        let flags = self.ideal_flags(xs);
        let by_star = flags.by_star_absorption();
        if by_star != flags.by_normality() {
            return Err(Error::ConstructionInvariantFailed(format!(
                "ideal characterizations disagree on {:?}",
                xs.members()
            )));
        }
        if !by_star {
            return Err(Error::NotIdeal {
                reason: flags.first_failure(),
            });
        }
        Ok(Ideal {
            members: xs.clone(),
            flags,
        })
    }

    /// Quotient brace `B/I` on additive cosets numbered by least member. The
    /// second value maps each element to its coset.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(SkewBrace, Vec<Elem>)> {
        let n = self.order();
        let (reps, coset_of) = coset_partition(n, |x, m| self.add(x, m), &ideal.members);
        // b + I = b·I
        for x in 0..n {
            for m in ideal.members.iter() {
                if coset_of[self.mul(x, m)] != coset_of[x] {
                    return Err(Error::ConstructionInvariantFailed(
                        "additive and multiplicative cosets differ".into(),
                    ));
                }
            }
        }
        let k = reps.len();
        let add = FiniteGroup::from_fn(k, |i, j| coset_of[self.add(reps[i], reps[j])])?;
        let mul = FiniteGroup::from_fn(k, |i, j| coset_of[self.mul(reps[i], reps[j])])?;
        for x in 0..n {
            for y in 0..n {
                if coset_of[self.add(x, y)] != add.op(coset_of[x], coset_of[y])
                    || coset_of[self.mul(x, y)] != mul.op(coset_of[x], coset_of[y])
                {
                    return Err(Error::ConstructionInvariantFailed(
                        "quotient operation not well defined".into(),
                    ));
                }
            }
        }
        Ok((SkewBrace::new(add, mul)?, coset_of))
    }

    /// Centre of the multiplicative group `Z(B,·)`.
    pub fn multiplicative_centre(&self) -> SubSet {
        self.mul.centre()
    }

    /// Evaluates the star-product identities. The general identity is always
    /// checked; the identities that need `B³ = 0` only run when it holds here.
    pub fn star_identities_check(&self) -> StarIdentityReport {
        let n = self.order();
        let full = SubSet::full(n);
        let b2 = self.star_span(&full, &full);
        let b3 = self.star_span(&full, &b2);
        let b3_zero = b3.is_zero();

        let triples =
            || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));
        let b2_members = b2.members();
        // (a, c, x) with c ∈ B²
        let with_b2 = || {
            (0..n).flat_map(move |a| {
                b2_members
                    .iter()
                    .flat_map(move |&c| (0..n).map(move |x| (a, c, x)))
            })
        };
        let gated = |check: &dyn Fn() -> Outcome| {
            if b3_zero {
                check()
            } else {
                Outcome::Skipped
            }
        };

        // (ab)∗c = a∗(b∗c) + b∗c + a∗c
        let product_rule = first_failure(triples(), |a, b, c| {
            let bc = self.star(b, c);
            self.star(self.mul(a, b), c)
                == self.add(self.add(self.star(a, bc), bc), self.star(a, c))
        });
        // a·c = a + c and c⁻¹ = -c for c ∈ B²
        let b2_absorbs = gated(&|| {
            first_failure(with_b2(), |a, c, _| {
                self.mul(a, c) == self.add(a, c) && self.mul_inv(c) == self.neg(c)
            })
        });
        // (ab)∗x = b∗x + a∗x and a⁻¹∗x = -(a∗x)
        let star_reverses_products = gated(&|| {
            first_failure(triples(), |a, b, x| {
                self.star(self.mul(a, b), x) == self.add(self.star(b, x), self.star(a, x))
                    && self.star(self.mul_inv(a), x) == self.neg(self.star(a, x))
            })
        });
        // [a,b]_·∗x = [-b∗x, -a∗x]_+
        let commutator_star = gated(&|| {
            first_failure(triples(), |a, b, x| {
                let lhs = self.star(self.mul.commutator(a, b), x);
                let rhs = self
                    .add
                    .commutator(self.neg(self.star(b, x)), self.neg(self.star(a, x)));
                lhs == rhs
            })
        });
        // (a+c)∗x = c∗x + a∗x for c ∈ B²
        let b2_shift = gated(&|| {
            first_failure(with_b2(), |a, c, x| {
                self.star(self.add(a, c), x) == self.add(self.star(c, x), self.star(a, x))
            })
        });
        // cd = c + d on B²
        let b2_trivial = gated(&|| {
            first_failure(
                b2.iter().flat_map(|c| b2.iter().map(move |d| (c, d, 0))),
                |c, d, _| self.mul(c, d) == self.add(c, d),
            )
        });

        StarIdentityReport {
            b_cubed_zero: b3_zero,
            product_rule,
            b2_absorbs,
            star_reverses_products,
            commutator_star,
            b2_shift,
            b2_trivial,
        }
    }
}

fn first_failure(
    mut tuples: impl Iterator<Item = (Elem, Elem, Elem)>,
    holds: impl Fn(Elem, Elem, Elem) -> bool,
) -> Outcome {
    tuples
        .find(|&(a, b, c)| !holds(a, b, c))
        .map_or(Outcome::Pass, |(a, b, c)| Outcome::Fail([a, b, c]))
}

/// Result of one identity check; failures carry a witness tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail([Elem; 3]),
    Skipped,
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarIdentityReport {
    pub b_cubed_zero: bool,
    pub product_rule: Outcome,
    pub b2_absorbs: Outcome,
    pub star_reverses_products: Outcome,
    pub commutator_star: Outcome,
    pub b2_shift: Outcome,
    /// `(B²,+)` and `(B²,·)` coincide.
    pub b2_trivial: Outcome,
}

impl StarIdentityReport {
    /// No identity failed; the gated identities are mandatory only when `B³ = 0`.
    pub fn all_pass(&self) -> bool {
        let gated = [
            self.b2_absorbs,
            self.star_reverses_products,
            self.commutator_star,
            self.b2_shift,
            self.b2_trivial,
        ];
        self.product_rule == Outcome::Pass
            && if self.b_cubed_zero {
                gated.iter().all(|o| *o == Outcome::Pass)
            } else {
                gated.iter().all(|o| *o == Outcome::Skipped)
            }
    }
}
