//! Exhaustive enumeration of skew braces with a given additive group.
//!
//! Multiplications on `A` making `(A,+,·)` a skew brace are in bijection with
//! regular subgroups of the holomorph `Hol(A) = A ⋊ Aut(A)` acting on `A` by
//! `x ↦ t + α(x)`: the unique element sending `0` to `a` is `(a, λ_a)` and
//! `a·b = a + λ_a(b)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::{compose, invert_perm, Elem, FiniteGroup, Perm};

/// Default order cap for enumeration.
pub const DEFAULT_ORDER_CAP: usize = 8;
/// Largest cap that may be configured.
pub const MAX_ORDER_CAP: usize = 12;
/// Largest order the direct-search oracle accepts.
pub const DIRECT_ORACLE_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dedup {
    /// Every multiplication is kept.
    None,
    /// One representative per brace isomorphism class.
    #[default]
    BraceIsomorphism,
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_ORDER_CAP);
    if order > cap {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    Ok(())
}

/// `Aut(A)` in sorted order together with its composition table.
struct AutTable {
    auts: Vec<Perm>,
    /// `compose[i * k + j]` is the index of `auts[i] ∘ auts[j]`.
    compose: Vec<usize>,
    identity: usize,
}

impl AutTable {
    fn new(add: &FiniteGroup) -> Result<Self> {
        let mut auts = add.automorphisms()?;
        auts.sort();
        let index: HashMap<&Perm, usize> = auts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let k = auts.len();
        let mut table = Vec::with_capacity(k * k);
        for p in &auts {
            for q in &auts {
                table.push(index[&compose(p, q)]);
            }
        }
        let identity = index[&(0..add.order()).collect::<Perm>()];
        Ok(AutTable {
            auts,
            compose: table,
            identity,
        })
    }

    #[inline]
    fn comp(&self, i: usize, j: usize) -> usize {
        self.compose[i * self.auts.len() + j]
    }
}

/// Partial regular subgroup: `lam[t]` is the automorphism part of the unique
/// element with translation `t`, once known.
#[derive(Clone)]
struct Partial {
    lam: Vec<Option<usize>>,
    members: Vec<Elem>,
}

impl Partial {
    /// Adds `(t, alpha)` and closes under composition. `None` when the
    /// closure contains two elements with the same translation.
    fn extend(&self, add: &FiniteGroup, auts: &AutTable, t: Elem, alpha: usize) -> Option<Partial> {
        let mut next = self.clone();
        let mut fresh = vec![(t, alpha)];
        next.lam[t] = Some(alpha);
        next.members.push(t);
        while let Some((s, beta)) = fresh.pop() {
            let snapshot = next.members.clone();
            for &u in &snapshot {
                let gamma = next.lam[u].unwrap();
                // (s,β)(u,γ) and (u,γ)(s,β)
                for (x, xa, y, ya) in [(s, beta, u, gamma), (u, gamma, s, beta)] {
                    let prod_t = add.op(x, auts.auts[xa][y]);
                    let prod_a = auts.comp(xa, ya);
                    match next.lam[prod_t] {
                        Some(existing) if existing != prod_a => return None,
                        Some(_) => {}
                        None => {
                            next.lam[prod_t] = Some(prod_a);
                            next.members.push(prod_t);
                            fresh.push((prod_t, prod_a));
                        }
                    }
                }
            }
        }
        Some(next)
    }

    fn first_missing(&self) -> Option<Elem> {
        self.lam.iter().position(Option::is_none)
    }
}

fn search(add: &FiniteGroup, auts: &AutTable, partial: Partial, out: &mut Vec<Vec<usize>>) {
    match partial.first_missing() {
        None => out.push(partial.lam.iter().map(|l| l.unwrap()).collect()),
        Some(t) => {
            for alpha in 0..auts.auts.len() {
                if let Some(next) = partial.extend(add, auts, t, alpha) {
                    search(add, auts, next, out);
                }
            }
        }
    }
}

/// Every λ-assignment `a ↦ λ_a` coming from a regular subgroup of `Hol(A)`,
/// as indices into the sorted automorphism list. Sorted.
fn regular_subgroups(add: &FiniteGroup, auts: &AutTable) -> Vec<Vec<usize>> {
    let n = add.order();
    let root = Partial {
        lam: {
            let mut lam = vec![None; n];
            lam[0] = Some(auts.identity);
            lam
        },
        members: vec![0],
    };
    let mut found: Vec<Vec<usize>> = match root.first_missing() {
        None => vec![vec![auts.identity]],
        Some(t) => (0..auts.auts.len())
            .into_par_iter()
            .flat_map_iter(|alpha| {
                let mut out = Vec::new();
                if let Some(next) = root.extend(add, auts, t, alpha) {
                    search(add, auts, next, &mut out);
                }
                out
            })
            .collect(),
    };
    found.sort();
    found.dedup();
    found
}

/// All skew brace multiplications on `add`, through regular subgroups of the
/// holomorph. Results are sorted by multiplication table; with
/// [`Dedup::BraceIsomorphism`] only the canonical representative of each
/// isomorphism class is returned.
pub fn enumerate_braces(add: &FiniteGroup, dedup: Dedup, cap: usize) -> Result<Vec<SkewBrace>> {
    check_cap(add.order(), cap)?;
    let auts = AutTable::new(add)?;
    let n = add.order();
    let mut braces = regular_subgroups(add, &auts)
        .into_iter()
        .map(|lam| {
            let mul = FiniteGroup::from_fn(n, |a, b| add.op(a, auts.auts[lam[a]][b]))?;
            SkewBrace::new(add.clone(), mul)
        })
        .collect::<Result<Vec<_>>>()?;
    braces.sort_by_key(|b| b.multiplicative().rows());
    Ok(match dedup {
        Dedup::None => braces,
        Dedup::BraceIsomorphism => dedup_by_isomorphism(braces, &auts.auts),
    })
}

/// Direct search: every map `a ↦ λ_a ∈ Aut(A)` with `λ_0 = id`, kept when
/// `a·b = a + λ_a(b)` is a group satisfying left distributivity. Uses the
/// exhaustive automorphism scan so it shares no search code with the
/// holomorph route. Order ≤ 6 only.
pub fn enumerate_braces_direct(add: &FiniteGroup) -> Result<Vec<SkewBrace>> {
    let n = add.order();
    if n > DIRECT_ORACLE_CAP {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: DIRECT_ORACLE_CAP,
        });
    }
    let auts = add.automorphisms_by_scan()?;
    let identity: Perm = (0..n).collect();
    let k = auts.len();
    let mut choice = vec![0usize; n.saturating_sub(1)];
    let mut out = Vec::new();
    loop {
        let lam = |a: Elem| {
            if a == 0 {
                &identity
            } else {
                &auts[choice[a - 1]]
            }
        };
        if let Ok(mul) = FiniteGroup::from_fn(n, |a, b| add.op(a, lam(a)[b])) {
            if let Ok(b) = SkewBrace::new(add.clone(), mul) {
                out.push(b);
            }
        }
        // mixed-radix increment
        let mut i = 0;
        while i < choice.len() && choice[i] + 1 == k {
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
        choice[i] += 1;
    }
    out.sort_by_key(|b| b.multiplicative().rows());
    Ok(out)
}

/// Canonical multiplication table of `b` under relabelling by additive
/// automorphisms: the lexicographically least `α(α⁻¹x · α⁻¹y)` table.
fn canonical_mul_table(b: &SkewBrace, auts: &[Perm]) -> Vec<Elem> {
    let n = b.order();
    let mut best: Option<Vec<Elem>> = None;
    for alpha in auts {
        let inv = invert_perm(alpha);
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(alpha[b.mul(inv[x], inv[y])]);
            }
        }
        if best.as_ref().is_none_or(|cur| table < *cur) {
            best = Some(table);
        }
    }
    best.expect("automorphism group is never empty")
}

/// Braces sharing one additive table are isomorphic exactly when an additive
/// automorphism carries one multiplication onto the other, so the canonical
/// table is a complete invariant. Representatives are returned in canonical
/// form, sorted.
pub fn dedup_by_isomorphism(braces: Vec<SkewBrace>, auts: &[Perm]) -> Vec<SkewBrace> {
    let mut classes: BTreeMap<Vec<Elem>, SkewBrace> = BTreeMap::new();
    for b in braces {
        let key = canonical_mul_table(&b, auts);
        classes.entry(key).or_insert_with_key(|key| {
            let n = b.order();
            let rows: Vec<Vec<Elem>> = key.chunks(n).map(<[Elem]>::to_vec).collect();
            let mul = FiniteGroup::from_table(&rows).expect("relabelled group table");
            SkewBrace::new(b.additive().clone(), mul).expect("relabelled brace")
        });
    }
    classes.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{brace_isomorphic, example_nonnilpotent_type};
    use crate::group::{cyclic, dihedral, named_group, small_groups};

    #[test]
    fn prime_orders_have_only_the_trivial_brace() {
        for n in [2, 3, 5] {
            let g = cyclic(n);
            let holo = enumerate_braces(&g, Dedup::None, 8).unwrap();
            let direct = enumerate_braces_direct(&g).unwrap();
            assert_eq!(holo.len(), 1);
            assert_eq!(holo, direct);
            assert!(holo[0].is_trivial());
        }
        assert_eq!(
            enumerate_braces(&cyclic(7), Dedup::BraceIsomorphism, 8)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn both_routes_agree_up_to_order_six() {
        for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() <= 6) {
            let holo = enumerate_braces(&g, Dedup::None, 8).unwrap();
            let direct = enumerate_braces_direct(&g).unwrap();
            assert_eq!(holo, direct, "{name}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_braces(&cyclic(9), Dedup::None, 8),
            Err(Error::OrderCapExceeded { order: 9, cap: 8 })
        ));
        assert!(matches!(
            enumerate_braces(&cyclic(13), Dedup::None, 40),
            Err(Error::OrderCapExceeded { order: 13, cap: 12 })
        ));
        assert!(enumerate_braces_direct(&cyclic(7)).is_err());
    }

    #[test]
    fn sym3_catalog_contains_the_fixture() {
        let catalog = enumerate_braces(&dihedral(6), Dedup::BraceIsomorphism, 8).unwrap();
        let fixture = example_nonnilpotent_type();
        let hits = catalog
            .iter()
            .filter(|b| brace_isomorphic(b, &fixture).unwrap().is_some())
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn dedup_classes_are_pairwise_non_isomorphic() {
        for name in ["C4", "C2xC2", "S3", "C6", "D8"] {
            let g = named_group(name).unwrap();
            let raw = enumerate_braces(&g, Dedup::None, 8).unwrap();
            let classes = enumerate_braces(&g, Dedup::BraceIsomorphism, 8).unwrap();
            for (i, x) in classes.iter().enumerate() {
                for y in &classes[i + 1..] {
                    assert!(brace_isomorphic(x, y).unwrap().is_none(), "{name}");
                }
            }
            // every raw brace lands in exactly one class
            for b in &raw {
                let n = classes
                    .iter()
                    .filter(|c| brace_isomorphic(b, c).unwrap().is_some())
                    .count();
                assert_eq!(n, 1, "{name}");
            }
        }
    }

    #[test]
    fn dedup_is_idempotent() {
        let g = named_group("C4xC2").unwrap();
        let auts = g.automorphisms().unwrap();
        let once = enumerate_braces(&g, Dedup::BraceIsomorphism, 8).unwrap();
        let twice = dedup_by_isomorphism(once.clone(), &auts);
        assert_eq!(once, twice);
    }

    #[test]
    fn trivial_group() {
        let braces = enumerate_braces(&cyclic(1), Dedup::None, 8).unwrap();
        assert_eq!(braces.len(), 1);
        assert_eq!(enumerate_braces_direct(&cyclic(1)).unwrap().len(), 1);
    }
}
