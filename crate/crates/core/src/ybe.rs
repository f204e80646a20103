//! Set-theoretic solutions of the Yang–Baxter equation.
//!
//! A solution on `0..n` is `r(x, y) = (σ_x(y), τ_y(x))`, stored as
//! `lam[x][y] = σ_x(y)` and `rho[y][x] = τ_y(x)`. Solutions here are always
//! bijective and non-degenerate.
//!
//! Retraction identifies `x ~ y` when both `σ_x = σ_y` and `τ_x = τ_y`; the
//! ρ-components are needed because the solutions coming from skew braces are
//! in general not involutive. The one-point solution has multipermutation
//! level 0 and the flip on two or more points has level 1.

use serde::{Deserialize, Serialize};

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::{is_permutation, Elem};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionJson {
    pub n: usize,
    pub lam: Vec<Vec<Elem>>,
    pub rho: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SolutionJson", into = "SolutionJson")]
pub struct Solution {
    n: usize,
    lam: Vec<Vec<Elem>>,
    rho: Vec<Vec<Elem>>,
}

impl TryFrom<SolutionJson> for Solution {
    type Error = Error;

    fn try_from(json: SolutionJson) -> Result<Self> {
        Solution::new(json.n, json.lam, json.rho)
    }
}

impl From<Solution> for SolutionJson {
    fn from(s: Solution) -> Self {
        SolutionJson {
            n: s.n,
            lam: s.lam,
            rho: s.rho,
        }
    }
}

impl Solution {
    /// Validates shape, non-degeneracy, bijectivity and the braid relation.
    pub fn new(n: usize, lam: Vec<Vec<Elem>>, rho: Vec<Vec<Elem>>) -> Result<Self> {
        let shape_ok = |t: &Vec<Vec<Elem>>| {
            t.len() == n
                && t.iter()
                    .all(|row| row.len() == n && row.iter().all(|&x| x < n))
        };
        if n == 0 || !shape_ok(&lam) || !shape_ok(&rho) {
            return Err(Error::InvalidSolution(
                "tables must be n x n over 0..n".into(),
            ));
        }
        let s = Solution { n, lam, rho };
        s.validate()?;
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `r(x, y)`.
    #[inline]
    pub fn apply(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        (self.lam[x][y], self.rho[y][x])
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.lam.iter().all(|row| is_permutation(row))
            && self.rho.iter().all(|row| is_permutation(row))
    }

    pub fn is_bijective(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n * n];
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (u, v) = self.apply(x, y);
                !std::mem::replace(&mut seen[u * n + v], true)
            })
        })
    }

    /// First triple violating `r₁₂ r₂₃ r₁₂ = r₂₃ r₁₂ r₂₃`.
    pub fn braid_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let r12 = |(x, y, z): (Elem, Elem, Elem)| {
            let (u, v) = self.apply(x, y);
            (u, v, z)
        };
        let r23 = |(x, y, z): (Elem, Elem, Elem)| {
            let (u, v) = self.apply(y, z);
            (x, u, v)
        };
        let n = self.n;
        (0..n)
            .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .find(|&t| r12(r23(r12(t))) != r23(r12(r23(t))))
    }

    pub fn validate(&self) -> Result<()> {
        if !self.is_non_degenerate() {
            return Err(Error::InvalidSolution("degenerate".into()));
        }
        if !self.is_bijective() {
            return Err(Error::InvalidSolution("not bijective".into()));
        }
        if let Some(t) = self.braid_violation() {
            return Err(Error::InvalidSolution(format!(
                "braid relation fails at {t:?}"
            )));
        }
        Ok(())
    }

    /// `r(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Self {
        let id: Vec<Vec<Elem>> = vec![(0..n).collect(); n];
        Solution::new(n, id.clone(), id).expect("flip is a solution")
    }

    /// Quotient by `x ~ y ⇔ (σ_x, τ_x) = (σ_y, τ_y)`. Classes are numbered by
    /// least member; the second value is the projection.
    pub fn retract(&self) -> Result<(Solution, Vec<Elem>)> {
        let n = self.n;
        let mut class_of = vec![usize::MAX; n];
        let mut reps: Vec<Elem> = Vec::new();
        for (x, class) in class_of.iter_mut().enumerate() {
            if let Some(c) = reps
                .iter()
                .position(|&y| self.lam[x] == self.lam[y] && self.rho[x] == self.rho[y])
            {
                *class = c;
            } else {
                *class = reps.len();
                reps.push(x);
            }
        }
        let k = reps.len();
        let mut lam = vec![vec![usize::MAX; k]; k];
        let mut rho = vec![vec![usize::MAX; k]; k];
        for x in 0..n {
            for y in 0..n {
                let (cx, cy) = (class_of[x], class_of[y]);
                for (slot, value) in [
                    (&mut lam[cx][cy], class_of[self.lam[x][y]]),
                    (&mut rho[cy][cx], class_of[self.rho[y][x]]),
                ] {
                    if *slot == usize::MAX {
                        *slot = value;
                    } else if *slot != value {
                        return Err(Error::ConstructionInvariantFailed(
                            "retraction is not well defined".into(),
                        ));
                    }
                }
            }
        }
        let quotient = Solution::new(k, lam, rho).map_err(|e| {
            Error::ConstructionInvariantFailed(format!("retraction is not a solution: {e}"))
        })?;
        Ok((quotient, class_of))
    }

    /// Sizes of the iterated retractions, starting with `self`, until a
    /// fixed point.
    pub fn retraction_tower(&self) -> Result<Vec<usize>> {
        let mut sizes = vec![self.n];
        let mut current = self.clone();
        loop {
            let (next, _) = current.retract()?;
            if next.n == current.n {
                return Ok(sizes);
            }
            sizes.push(next.n);
            current = next;
        }
    }

    /// Least `k` whose `k`-fold retraction has one point; `None` when the
    /// tower stalls above one point.
    pub fn multipermutation_level(&self) -> Result<Option<usize>> {
        let tower = self.retraction_tower()?;
        Ok((*tower.last().unwrap() == 1).then(|| tower.len() - 1))
    }
}

/// `r(x, y) = (λ_x(y), λ_x(y)⁻¹ · x · y)` with inverse and products in `(B,·)`.
pub fn solution_from_brace(b: &SkewBrace) -> Result<Solution> {
    let n = b.order();
    let mut lam = vec![vec![0; n]; n];
    let mut rho = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let u = b.lambda(x, y);
            lam[x][y] = u;
            rho[y][x] = b.mul(b.mul_inv(u), b.mul(x, y));
        }
    }
    Solution::new(n, lam, rho).map_err(|e| Error::ConstructionInvariantFailed(e.to_string()))
}
