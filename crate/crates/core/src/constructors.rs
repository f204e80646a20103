//! Skew braces from bijective derivations, the two worked fixtures, and
//! brace isomorphism.
//!
//! Given an action `φ: G → Aut(A)` and a bijection `δ: G → A` with
//! `δ(xy) = δ(x) + φ_x(δ(y))`, the carrier of `A` becomes a skew brace with
//! `a·b = a + φ_{δ⁻¹(a)}(b)`.

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::{
    compose, cyclic, dihedral, direct_product, invert_perm, is_hom, is_permutation, Elem,
    FiniteGroup, Perm, SCAN_ORDER_CAP,
};

/// Data for the derivation construction.
#[derive(Debug, Clone)]
pub struct DerivationInput {
    /// Multiplicative source `G`.
    pub source: FiniteGroup,
    /// Additive target `A`.
    pub target: FiniteGroup,
    /// `phi[g]` is the automorphism of `A` attached to `g`.
    pub phi: Vec<Perm>,
    pub delta: Vec<Elem>,
}

impl DerivationInput {
    /// Checks that `φ` is a homomorphism into `Aut(A)`, `δ` is a bijection
    /// fixing the identity, and the cocycle law holds. Failures carry the
    /// first witness pair found.
    pub fn check(&self) -> Result<()> {
        let (g, a) = (&self.source, &self.target);
        let n = g.order();
        if a.order() != n || self.phi.len() != n || self.delta.len() != n {
            return Err(Error::SizeMismatch {
                left: n,
                right: a.order(),
            });
        }
        let invalid = |reason, x, y| Err(Error::InvalidDerivation { reason, x, y });
        for (x, p) in self.phi.iter().enumerate() {
            if p.len() != n || !is_permutation(p) || !is_hom(a, a, p) {
                return invalid("phi(x) is not an automorphism", x, x);
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.phi[g.op(x, y)] != compose(&self.phi[x], &self.phi[y]) {
                    return invalid("phi is not a homomorphism", x, y);
                }
            }
        }
        if !is_permutation(&self.delta) {
            return invalid("delta is not a bijection", 0, 0);
        }
        if self.delta[0] != 0 {
            return invalid("delta does not fix the identity", 0, 0);
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = self.delta[g.op(x, y)];
                let rhs = a.op(self.delta[x], self.phi[x][self.delta[y]]);
                if lhs != rhs {
                    return invalid("cocycle law fails", x, y);
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// The brace on `A`'s carrier with `a·b = a + φ_{δ⁻¹(a)}(b)`.
    pub fn brace(&self) -> Result<SkewBrace> {
        self.check()?;
        let n = self.source.order();
        let delta_inv = invert_perm(&self.delta);
        let a = &self.target;
        let mul = FiniteGroup::from_fn(n, |x, y| a.op(x, self.phi[delta_inv[x]][y]))?;
        // δ is an isomorphism (G,·) → (B,·)
        if !is_hom(&self.source, &mul, &self.delta) {
            return Err(Error::ConstructionInvariantFailed(
                "delta is not an isomorphism onto the multiplicative group".into(),
            ));
        }
        SkewBrace::new(a.clone(), mul)
    }

    /// `δ = id`, `φ = λ`: a derivation `(B,·) → (B,+)` that rebuilds `b`.
    pub fn identity_of(b: &SkewBrace) -> Self {
        let n = b.order();
        DerivationInput {
            source: b.multiplicative().clone(),
            target: b.additive().clone(),
            phi: (0..n).map(|a| b.lambda_map(a)).collect(),
            delta: (0..n).collect(),
        }
    }
}

/// `φ` as powers of generator images: `phi[w] = ∏ gens[i]^{exps(w)[i]}`.
fn action_from_words(
    n: usize,
    words: impl Fn(Elem) -> Vec<(usize, usize)>,
    gens: &[Perm],
) -> Vec<Perm> {
    (0..n)
        .map(|w| {
            words(w)
                .into_iter()
                .fold((0..gens[0].len()).collect(), |acc: Perm, (g, e)| {
                    (0..e).fold(acc, |p, _| compose(&p, &gens[g]))
                })
        })
        .collect()
}

/// Sym(3) written additively, `kσ + jτ ↦ k + 3j`, acted on by `C6 = ⟨g⟩`
/// through `g: σ ↦ σ, τ ↦ σ + τ`.
pub fn nonnilpotent_type_input() -> DerivationInput {
    let target = dihedral(6);
    let phi_g: Perm = (0..6).map(|x| (x % 3 + x / 3) % 3 + 3 * (x / 3)).collect();
    let phi = action_from_words(6, |i| vec![(0, i)], &[phi_g]);
    DerivationInput {
        source: cyclic(6),
        target,
        phi,
        // 1, g, g², g³, g⁴, g⁵ ↦ 0, 2σ+τ, 2σ, τ, σ, σ+τ
        delta: vec![0, 5, 2, 3, 1, 4],
    }
}

/// `C4 × C2 = ⟨a⟩ × ⟨b⟩`, `ia + jb ↦ i + 4j`, acted on by
/// `D8 = ⟨σ, τ⟩` (`σ^r τ^f ↦ r + 4f`) through `σ: a ↦ 3a + b` and
/// `τ: a ↦ a + b`, both fixing `b`.
pub fn c4c2_input() -> DerivationInput {
    let target = direct_product(&cyclic(2), &cyclic(4));
    let phi_sigma: Perm = (0..8)
        .map(|x| {
            let (i, j) = (x % 4, x / 4);
            (3 * i) % 4 + 4 * ((i + j) % 2)
        })
        .collect();
    let phi_tau: Perm = (0..8)
        .map(|x| {
            let (i, j) = (x % 4, x / 4);
            i + 4 * ((i + j) % 2)
        })
        .collect();
    let phi = action_from_words(8, |w| vec![(0, w % 4), (1, w / 4)], &[phi_sigma, phi_tau]);
    DerivationInput {
        source: dihedral(8),
        target,
        phi,
        // 1, σ, σ², σ³, τ, στ, σ²τ, σ³τ ↦ 0, a+b, b, a, 2a, 3a+b, 2a+b, 3a
        delta: vec![0, 5, 4, 1, 2, 7, 6, 3],
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The brace on Sym(3) with multiplicative group C6 and `B³ = 0`.
pub fn example_nonnilpotent_type() -> SkewBrace {
    nonnilpotent_type_input()
        .brace()
        .expect("fixture derivation is valid")
        .with_labels(labels(&[
            "0",
            "sigma",
            "2sigma",
            "tau",
            "sigma+tau",
            "2sigma+tau",
        ]))
}

/// The abelian-type brace on C4 × C2 with multiplicative group D8.
pub fn example_c4c2() -> SkewBrace {
    c4c2_input()
        .brace()
        .expect("fixture derivation is valid")
        .with_labels(labels(&["0", "a", "2a", "3a", "b", "a+b", "2a+b", "3a+b"]))
}

pub const EXAMPLE_NAMES: [&str; 2] = ["nonnilpotent-type", "c4c2-d8"];

pub fn example_by_name(name: &str) -> Result<SkewBrace> {
    match name {
        "nonnilpotent-type" => Ok(example_nonnilpotent_type()),
        "c4c2-d8" => Ok(example_c4c2()),
        _ => Err(Error::UnknownExample {
            name: name.to_string(),
            valid: EXAMPLE_NAMES.join(", "),
        }),
    }
}

/// A bijection that is simultaneously an isomorphism of both group
/// structures, if one exists. Candidates are one additive isomorphism
/// composed with every additive automorphism.
pub fn brace_isomorphic(b1: &SkewBrace, b2: &SkewBrace) -> Result<Option<Perm>> {
    for order in [b1.order(), b2.order()] {
        if order > SCAN_ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                order,
                cap: SCAN_ORDER_CAP,
            });
        }
    }
    if b1.order() != b2.order() {
        return Ok(None);
    }
    let Some(base) = b1.additive().is_isomorphic(b2.additive())? else {
        return Ok(None);
    };
    Ok(b1
        .additive()
        .automorphisms()?
        .into_iter()
        .map(|alpha| compose(&base, &alpha))
        .find(|f| is_hom(b1.multiplicative(), b2.multiplicative(), f)))
}
