//! Universal-coefficient conversions between integral homology, integral
//! cohomology, and (co)homology with coefficients in a finitely generated
//! abelian group.
//!
//! The short exact sequences involved split (non-naturally) for finitely
//! generated groups, so every function returns the direct sum.

use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;

/// Groups indexed by degree `0..=reliable_up_to`. Degrees present in the
/// reliable range but past the end of `entries` are trivial, which lets a
/// finite list describe a space with no cohomology above some degree
/// ([`GradedGroups::complete`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroups {
    entries: Vec<FgAbGroup>,
    reliable_up_to: usize,
}

impl GradedGroups {
    /// Table known exactly through `entries.len() - 1`.
    pub fn new(entries: Vec<FgAbGroup>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("graded table needs degree 0".into()));
        }
        let reliable_up_to = entries.len() - 1;
        Ok(GradedGroups {
            entries,
            reliable_up_to,
        })
    }

    /// Table whose listed entries are followed by zeros in every degree.
    pub fn complete(entries: Vec<FgAbGroup>) -> Self {
        GradedGroups {
            entries,
            reliable_up_to: usize::MAX,
        }
    }

    pub fn reliable_up_to(&self) -> usize {
        self.reliable_up_to
    }

    pub fn is_complete(&self) -> bool {
        self.reliable_up_to == usize::MAX
    }

    /// The group in `degree`, or `None` past the reliability bound.
    pub fn get(&self, degree: usize) -> Option<FgAbGroup> {
        if degree > self.reliable_up_to {
            return None;
        }
        Some(self.entries.get(degree).cloned().unwrap_or_default())
    }

    pub fn entries(&self) -> &[FgAbGroup] {
        &self.entries
    }

    /// Same data cut down to `degree` (no-op if already shorter).
    pub fn truncate(&self, degree: usize) -> GradedGroups {
        let bound = self.reliable_up_to.min(degree);
        let entries = (0..=bound)
            .map(|d| self.get(d).unwrap_or_default())
            .collect();
        GradedGroups {
            entries,
            reliable_up_to: bound,
        }
    }

    fn require(&self, degree: usize) -> Result<FgAbGroup> {
        self.get(degree).ok_or(Error::DegreeOutOfRange {
            degree,
            reliable_up_to: self.reliable_up_to,
        })
    }
}

/// `Ext(h_prev, g) ⊕ Hom(h_n, g)`
pub fn split_cohomology(h_prev: &FgAbGroup, h_n: &FgAbGroup, g: &FgAbGroup) -> FgAbGroup {
    h_prev.ext(g).direct_sum(&h_n.hom(g))
}

/// `H^n(X; G)` from the integral homology of `X`.
pub fn cohomology_with_coefficients(
    homology: &GradedGroups,
    g: &FgAbGroup,
    n: usize,
) -> Result<FgAbGroup> {
    let h_n = homology.require(n)?;
    let h_prev = if n == 0 {
        FgAbGroup::trivial()
    } else {
        homology.require(n - 1)?
    };
    Ok(split_cohomology(&h_prev, &h_n, g))
}

/// `H_n(X; G) = (H_n ⊗ G) ⊕ Tor(H_{n-1}, G)`
pub fn homology_with_coefficients(
    homology: &GradedGroups,
    g: &FgAbGroup,
    n: usize,
) -> Result<FgAbGroup> {
    let h_n = homology.require(n)?;
    let h_prev = if n == 0 {
        FgAbGroup::trivial()
    } else {
        homology.require(n - 1)?
    };
    Ok(h_n.tensor(g).direct_sum(&h_prev.tor(g)))
}

/// Inverts `H^n ≅ H_n/T_n ⊕ T_{n-1}` degreewise: `H_n` has the free rank
/// of `H^n` and the torsion of `H^{n+1}`. The result is reliable one
/// degree lower than the input, except that `H_0` is always free and so
/// always recoverable.
pub fn homology_from_integral_cohomology(cohomology: &GradedGroups) -> GradedGroups {
    let top = if cohomology.is_complete() {
        // zeros continue forever; stop where the listed data has been consumed
        let listed = cohomology.entries.len();
        let mut entries = Vec::with_capacity(listed);
        for n in 0..listed {
            entries.push(homology_degree(cohomology, n).expect("complete table"));
        }
        return GradedGroups {
            entries,
            reliable_up_to: usize::MAX,
        };
    } else {
        cohomology.reliable_up_to.saturating_sub(1)
    };
    let entries = (0..=top)
        .map(|n| {
            if n == cohomology.reliable_up_to {
                // only reachable for n = 0
                cohomology.get(0).map(|h| h.free_part()).unwrap_or_default()
            } else {
                homology_degree(cohomology, n).expect("within reliability")
            }
        })
        .collect();
    GradedGroups {
        entries,
        reliable_up_to: top,
    }
}

fn homology_degree(cohomology: &GradedGroups, n: usize) -> Option<FgAbGroup> {
    let here = cohomology.get(n)?;
    let next = cohomology.get(n + 1)?;
    Some(here.free_part().direct_sum(&next.torsion_subgroup()))
}

/// The full table `H^n(X; G)` for every degree the homology supports.
pub fn cohomology_table(homology: &GradedGroups, g: &FgAbGroup) -> GradedGroups {
    if homology.is_complete() {
        let listed = homology.entries.len() + 1;
        let entries = (0..listed)
            .map(|n| cohomology_with_coefficients(homology, g, n).expect("complete"))
            .collect();
        return GradedGroups {
            entries,
            reliable_up_to: usize::MAX,
        };
    }
    let entries = (0..=homology.reliable_up_to)
        .map(|n| cohomology_with_coefficients(homology, g, n).expect("within reliability"))
        .collect();
    GradedGroups {
        entries,
        reliable_up_to: homology.reliable_up_to,
    }
}
