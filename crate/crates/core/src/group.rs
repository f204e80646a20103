//! Finite groups stored as explicit Cayley tables.
//!
//! Every group lives on the carrier `0..order` and element `0` is always the
//! identity. Commutators use the convention `[a, b] = a∘b∘a⁻¹∘b⁻¹` everywhere
//! in the crate; additive notation reads `[a, b]_+ = a + b - a - b`.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element of a finite carrier `0..n`.
pub type Elem = usize;

/// A permutation of `0..n`, stored as its image list.
pub type Perm = Vec<Elem>;

/// Largest order for which automorphism and isomorphism searches run.
pub const AUTOMORPHISM_ORDER_CAP: usize = 16;

/// Largest order for which the exhaustive bijection scan is allowed.
pub const SCAN_ORDER_CAP: usize = 8;

/// A sorted, duplicate-free subset of a carrier `0..ambient_order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubSet {
    members: Vec<Elem>,
    ambient_order: usize,
}

impl SubSet {
    pub fn new(ambient_order: usize, members: impl IntoIterator<Item = Elem>) -> Self {
        let mut members: Vec<Elem> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        assert!(
            members.last().is_none_or(|&m| m < ambient_order),
            "subset member outside carrier"
        );
        SubSet {
            members,
            ambient_order,
        }
    }

    pub fn trivial(ambient_order: usize) -> Self {
        SubSet::new(ambient_order, [0])
    }

    pub fn full(ambient_order: usize) -> Self {
        SubSet::new(ambient_order, 0..ambient_order)
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        SubSet {
            members: (0..mask.len()).filter(|&i| mask[i]).collect(),
            ambient_order: mask.len(),
        }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn ambient_order(&self) -> usize {
        self.ambient_order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the subset is exactly `{0}`.
    pub fn is_zero(&self) -> bool {
        self.members == [0]
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ambient_order
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &SubSet) -> SubSet {
        SubSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
            ambient_order: self.ambient_order,
        }
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.ambient_order];
        for &m in &self.members {
            mask[m] = true;
        }
        mask
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }
}

impl Serialize for SubSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// On-disk representation of a group: `{"order": n, "table": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<Elem>>,
}

/// A validated finite group on `0..order` with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;

    fn try_from(json: GroupJson) -> Result<Self> {
        if json.table.len() != json.order {
            return Err(Error::MalformedTable { order: json.order });
        }
        FiniteGroup::from_table(&json.table)
    }
}

impl From<FiniteGroup> for GroupJson {
    fn from(g: FiniteGroup) -> Self {
        GroupJson {
            order: g.order,
            table: g.rows(),
        }
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and computes inverses.
    pub fn from_table(rows: &[Vec<Elem>]) -> Result<Self> {
        let n = rows.len();
        if n == 0
            || rows
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::MalformedTable { order: n });
        }
        let table: Vec<Elem> = rows.iter().flatten().copied().collect();
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<Elem>) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        let at = |a: Elem, b: Elem| table[a * n + b];
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::NoIdentityAtZero { witness: a });
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let x = at(a, b);
                if seen[x] == a {
                    return Err(Error::NotLatinSquare {
                        line: "row",
                        index: a,
                        element: x,
                    });
                }
                seen[x] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let x = at(a, b);
                if seen[x] == b {
                    return Err(Error::NotLatinSquare {
                        line: "column",
                        index: b,
                        element: x,
                    });
                }
                seen[x] = b;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            // Latin rows guarantee exactly one solution.
            *inv = (0..n).find(|&b| at(a, b) == 0).expect("latin row");
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
        })
    }

    /// Builds the table of `op` on `0..n` and validates it.
    pub fn from_fn(n: usize, op: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let x = op(a, b);
                if x >= n {
                    return Err(Error::MalformedTable { order: n });
                }
                table.push(x);
            }
        }
        Self::from_flat(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverse
    }

    /// Row-major copy of the Cayley table.
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Re-runs every axiom check on the stored table.
    pub fn validate(&self) -> Result<()> {
        Self::from_flat(self.order, self.table.clone()).map(|_| ())
    }

    /// `[a, b] = a∘b∘a⁻¹∘b⁻¹`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.op(a, b);
        self.op(self.op(ab, self.inv(a)), self.inv(b))
    }

    /// Product `a∘b∘a⁻¹`.
    pub fn conjugate(&self, a: Elem, b: Elem) -> Elem {
        self.op(self.op(a, b), self.inv(a))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn is_subgroup(&self, h: &SubSet) -> bool {
        h.contains(0)
            && h.iter()
                .all(|a| h.contains(self.inv(a)) && h.iter().all(|b| h.contains(self.op(a, b))))
    }

    /// Smallest subgroup containing `generators`.
    pub fn subgroup_closure(&self, generators: &SubSet) -> SubSet {
        self.closure_of(generators.iter())
    }

    pub(crate) fn closure_of(&self, generators: impl IntoIterator<Item = Elem>) -> SubSet {
        let gens: Vec<Elem> = generators.into_iter().filter(|&g| g != 0).collect();
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.op(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        SubSet::from_mask(&mask)
    }

    pub fn is_normal(&self, h: &SubSet) -> Result<bool> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        Ok(self.is_normal_unchecked(h))
    }

    pub(crate) fn is_normal_unchecked(&self, h: &SubSet) -> bool {
        h.iter()
            .all(|x| (0..self.order).all(|g| h.contains(self.conjugate(g, x))))
    }

    /// Subgroup generated by `[x, y]` for `x ∈ xs`, `y ∈ ys`.
    pub fn commutator_subgroup(&self, xs: &SubSet, ys: &SubSet) -> SubSet {
        self.closure_of(
            xs.iter()
                .flat_map(|x| ys.iter().map(move |y| (x, y)))
                .map(|(x, y)| self.commutator(x, y)),
        )
    }

    pub fn centre(&self) -> SubSet {
        SubSet::new(
            self.order,
            (0..self.order).filter(|&z| (0..self.order).all(|g| self.op(z, g) == self.op(g, z))),
        )
    }

    /// `γ_1 = G`, `γ_{k+1} = [γ_k, G]`, listed until the first repeat.
    pub fn lower_central_series(&self) -> Vec<SubSet> {
        let full = SubSet::full(self.order);
        let mut series = vec![full.clone()];
        for _ in 0..=self.order {
            let next = self.commutator_subgroup(series.last().unwrap(), &full);
            if &next == series.last().unwrap() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// `Z_0 = {0}`, `Z_{k+1} = {g : [g, x] ∈ Z_k for all x}`, listed until the first repeat.
    pub fn upper_central_series(&self) -> Vec<SubSet> {
        let mut series = vec![SubSet::trivial(self.order)];
        for _ in 0..=self.order {
            let current = series.last().unwrap();
            let next = SubSet::new(
                self.order,
                (0..self.order)
                    .filter(|&g| (0..self.order).all(|x| current.contains(self.commutator(g, x)))),
            );
            if &next == current {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class, or `None` when the group is not nilpotent.
    ///
    /// The trivial group has class 0 and non-trivial abelian groups class 1.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lower = self.lower_central_series();
        lower.last().unwrap().is_zero().then(|| lower.len() - 1)
    }

    /// Same class read off the upper central series.
    pub fn nilpotency_class_upper(&self) -> Option<usize> {
        let upper = self.upper_central_series();
        upper.last().unwrap().is_full().then(|| upper.len() - 1)
    }

    /// Greedy generating sequence: each entry is the least element outside the
    /// subgroup generated by the previous ones.
    pub fn generating_sequence(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = SubSet::trivial(self.order);
        while !span.is_full() {
            let g = (0..self.order).find(|&g| !span.contains(g)).unwrap();
            gens.push(g);
            span = self.closure_of(gens.iter().copied());
        }
        gens
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their least member
    /// in increasing order; the second value maps each element to its coset.
    pub fn quotient_group(&self, n: &SubSet) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !self.is_normal(n)? {
            return Err(Error::NotNormal);
        }
        let (reps, coset_of) = coset_partition(self.order, |x, m| self.op(x, m), n);
        let q = FiniteGroup::from_fn(reps.len(), |i, j| coset_of[self.op(reps[i], reps[j])])?;
        Ok((q, coset_of))
    }

    /// The subgroup `h` as a group in its own right. Element `i` of the result
    /// is `h.members()[i]`, which is also the returned embedding.
    pub fn subgroup_as_group(&self, h: &SubSet) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let embed = h.members().to_vec();
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in embed.iter().enumerate() {
            index[x] = i;
        }
        let g = FiniteGroup::from_fn(embed.len(), |i, j| index[self.op(embed[i], embed[j])])?;
        Ok((g, embed))
    }

    /// Every automorphism, found by assigning images to a generating sequence
    /// and pruning as soon as a partial assignment stops being a homomorphism.
    pub fn automorphisms(&self) -> Result<Vec<Perm>> {
        isomorphisms(self, self, false)
    }

    /// Exhaustive scan over all bijections fixing 0. Only for order ≤ 8.
    pub fn automorphisms_by_scan(&self) -> Result<Vec<Perm>> {
        if self.order > SCAN_ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                order: self.order,
                cap: SCAN_ORDER_CAP,
            });
        }
        let mut out = Vec::new();
        for tail in (1..self.order).permutations(self.order - 1) {
            let mut p = Vec::with_capacity(self.order);
            p.push(0);
            p.extend(tail);
            if is_hom(self, self, &p) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// A witness isomorphism `self → other`, if one exists.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> Result<Option<Perm>> {
        Ok(isomorphisms(self, other, true)?.into_iter().next())
    }
}

/// Partitions `0..n` into the cosets `x·N` under `act(x, m)`. Representatives are
/// least members; cosets are numbered in order of their representatives.
pub(crate) fn coset_partition(
    n: usize,
    act: impl Fn(Elem, Elem) -> Elem,
    sub: &SubSet,
) -> (Vec<Elem>, Vec<Elem>) {
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for m in sub.iter() {
            coset_of[act(x, m)] = id;
        }
    }
    (reps, coset_of)
}

/// True when `map` is a homomorphism `g → h`.
pub fn is_hom(g: &FiniteGroup, h: &FiniteGroup, map: &[Elem]) -> bool {
    map.len() == g.order()
        && (0..g.order()).all(|a| (0..g.order()).all(|b| map[g.op(a, b)] == h.op(map[a], map[b])))
}

/// A homomorphism between two finite groups, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub domain_order: usize,
    pub codomain_order: usize,
    pub image: Vec<Elem>,
}

impl GroupHom {
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, image: Vec<Elem>) -> Option<Self> {
        (image.first() == Some(&0)
            && image.iter().all(|&x| x < codomain.order())
            && is_hom(domain, codomain, &image))
        .then(|| GroupHom {
            domain_order: domain.order(),
            codomain_order: codomain.order(),
            image,
        })
    }

    pub fn kernel(&self) -> SubSet {
        SubSet::new(
            self.domain_order,
            (0..self.domain_order).filter(|&x| self.image[x] == 0),
        )
    }
}

/// Extends images of `gens[..assigned]` to the generated subgroup. Returns
/// `None` on any conflict or loss of injectivity.
fn extend_partial(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut visited = vec![0];
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.op(x, s);
            let img = h.op(map[x], t);
            if map[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                used[img] = true;
                map[y] = img;
                visited.push(y);
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

fn isomorphisms(g: &FiniteGroup, h: &FiniteGroup, first_only: bool) -> Result<Vec<Perm>> {
    for order in [g.order(), h.order()] {
        if order > AUTOMORPHISM_ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                order,
                cap: AUTOMORPHISM_ORDER_CAP,
            });
        }
    }
    if g.order() != h.order() {
        return Ok(Vec::new());
    }
    let gens = g.generating_sequence();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let k = g.element_order(s);
            (1..h.order())
                .filter(|&t| h.element_order(t) == k)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search_images(g, h, &gens, &candidates, &mut images, &mut out, first_only);
    Ok(out)
}

fn search_images(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
    out: &mut Vec<Perm>,
    first_only: bool,
) {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(map) = extend_partial(g, h, gens, images) {
            if map.iter().all(|&x| x != usize::MAX) && is_hom(g, h, &map) {
                out.push(map);
            }
        }
        return;
    }
    for &t in &candidates[depth] {
        images.push(t);
        if extend_partial(g, h, &gens[..=depth], images).is_some() {
            search_images(g, h, gens, candidates, images, out, first_only);
        }
        images.pop();
        if first_only && !out.is_empty() {
            return;
        }
    }
}

/// Composition `(p ∘ q)(x) = p(q(x))`.
pub fn compose(p: &[Elem], q: &[Elem]) -> Perm {
    q.iter().map(|&x| p[x]).collect()
}

pub fn invert_perm(p: &[Elem]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_permutation(p: &[Elem]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// Cyclic group: `i∘j = (i + j) mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    FiniteGroup::from_fn(n, |i, j| (i + j) % n).expect("cyclic table")
}

/// Dihedral group of the given (even) order `2n`. Element `r + n·f` is
/// `σ^r τ^f` with `σ^n = τ² = 1` and `τστ = σ⁻¹`.
pub fn dihedral(order: usize) -> FiniteGroup {
    assert!(
        order >= 2 && order.is_multiple_of(2),
        "dihedral order must be even"
    );
    let n = order / 2;
    FiniteGroup::from_fn(order, |x, y| {
        let (r1, f1) = (x % n, x / n);
        let (r2, f2) = (y % n, y / n);
        let r = if f1 == 0 { r1 + r2 } else { r1 + n - r2 } % n;
        r + n * (f1 ^ f2)
    })
    .expect("dihedral table")
}

/// Direct product with lexicographic numbering: `(g, h) ↦ g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    FiniteGroup::from_fn(g.order() * m, |x, y| {
        g.op(x / m, y / m) * m + h.op(x % m, y % m)
    })
    .expect("product table")
}

/// Quaternion group. Elements `0..4` are `1, i, j, k`; `4..8` their negatives.
pub fn quaternion() -> FiniteGroup {
    // unit products as (sign flip, unit) for 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn(8, |x, y| {
        let (s, u) = UNIT[x % 4][y % 4];
        let sign = (x / 4) ^ (y / 4) ^ s;
        u + 4 * sign
    })
    .expect("quaternion table")
}

/// Resolves a group name: `Cn`, `Dn` (dihedral of order n), `S3`, `Q8`, and
/// products such as `C4xC2`.
pub fn named_group(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let factors: Vec<&str> = name.split(['x', 'X', '×']).collect();
    if factors.len() > 1 {
        let mut it = factors.into_iter().map(named_group);
        let first = it.next().unwrap().map_err(|_| unknown())?;
        return it.try_fold(first, |acc, f| {
            f.map(|f| direct_product(&acc, &f)).map_err(|_| unknown())
        });
    }
    let name = name.trim();
    let number = |s: &str| s.parse::<usize>().ok().filter(|&n| (1..=64).contains(&n));
    match name {
        "S3" => Ok(dihedral(6)),
        "Q8" => Ok(quaternion()),
        _ if name.starts_with('C') => number(&name[1..]).map(cyclic).ok_or_else(unknown),
        _ if name.starts_with('D') => number(&name[1..])
            .filter(|n| n % 2 == 0)
            .map(dihedral)
            .ok_or_else(unknown),
        _ => Err(unknown()),
    }
}

/// One representative of every isomorphism class of groups of order ≤ 8.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    [
        "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2xC2xC2", "D8",
        "Q8",
    ]
    .into_iter()
    .map(|name| (name, named_group(name).expect("known name")))
    .collect()
}

/// Name of the group of order ≤ 8 isomorphic to `g`, if any.
pub fn identify(g: &FiniteGroup) -> Option<&'static str> {
    if g.order() > SCAN_ORDER_CAP {
        return None;
    }
    small_groups()
        .into_iter()
        .filter(|(_, h)| h.order() == g.order())
        .find(|(_, h)| matches!(g.is_isomorphic(h), Ok(Some(_))))
        .map(|(name, _)| name)
}
