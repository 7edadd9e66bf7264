//! Pages of a first-quadrant cohomological Serre spectral sequence,
//! truncated to total degree `cap + 1`.
//!
//! Entries are known groups, zero, or unknowns. Differentials are recorded
//! per source position; turning a page takes `ker d_r / im d_r` at each
//! known entry.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgab::{subquotient, FgAbGroup, GroupMap};
use crate::uct::{split_cohomology, GradedGroups};

/// `(p, q)` with `p` the base degree and `q` the fiber degree.
pub type Pos = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryState {
    Zero,
    Known(FgAbGroup),
    Variable(String),
}

impl EntryState {
    /// Trivial groups collapse to `Zero`.
    pub fn known(g: FgAbGroup) -> Self {
        if g.is_trivial() {
            EntryState::Zero
        } else {
            EntryState::Known(g)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, EntryState::Zero)
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, EntryState::Variable(_))
    }

    /// The group, with `Zero` as the trivial group; `None` for unknowns.
    pub fn group(&self) -> Option<FgAbGroup> {
        match self {
            EntryState::Zero => Some(FgAbGroup::trivial()),
            EntryState::Known(g) => Some(g.clone()),
            EntryState::Variable(_) => None,
        }
    }

    fn cell(&self) -> String {
        match self {
            EntryState::Zero => ".".into(),
            EntryState::Known(g) => g.to_string().replace(' ', ""),
            EntryState::Variable(s) => format!("?{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffStatus {
    ForcedZero,
    KnownMap(GroupMap),
    Opaque,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialRecord {
    pub status: DiffStatus,
    pub reason: String,
}

impl DifferentialRecord {
    pub fn forced_zero(reason: impl Into<String>) -> Self {
        DifferentialRecord {
            status: DiffStatus::ForcedZero,
            reason: reason.into(),
        }
    }

    pub fn known(map: GroupMap, reason: impl Into<String>) -> Self {
        DifferentialRecord {
            status: DiffStatus::KnownMap(map),
            reason: reason.into(),
        }
    }

    pub fn opaque(reason: impl Into<String>) -> Self {
        DifferentialRecord {
            status: DiffStatus::Opaque,
            reason: reason.into(),
        }
    }
}

/// Target of `d_r` from `(p, q)`, or `None` when it leaves the quadrant.
pub fn differential_target(p: usize, q: usize, r: usize) -> Option<Pos> {
    if q + 1 < r {
        None
    } else {
        Some((p + r, q + 1 - r))
    }
}

/// Source of the `d_r` landing on `(p, q)`, or `None` outside the quadrant.
pub fn differential_source(p: usize, q: usize, r: usize) -> Option<Pos> {
    if p < r {
        None
    } else {
        Some((p - r, q + r - 1))
    }
}

static ZERO: EntryState = EntryState::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    r: usize,
    cap: usize,
    entries: BTreeMap<Pos, EntryState>,
    diffs: BTreeMap<Pos, DifferentialRecord>,
}

impl Page {
    /// An empty (all-zero) page.
    pub fn new(r: usize, cap: usize) -> Self {
        Page {
            r,
            cap,
            entries: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn in_grid(&self, (p, q): Pos) -> bool {
        p + q <= self.cap + 1
    }

    pub fn entry(&self, pos: Pos) -> &EntryState {
        self.entries.get(&pos).unwrap_or(&ZERO)
    }

    pub fn set_entry(&mut self, pos: Pos, state: EntryState) {
        assert!(self.in_grid(pos), "{pos:?} is outside the grid");
        let state = match state {
            EntryState::Known(g) => EntryState::known(g),
            s => s,
        };
        if state.is_zero() {
            self.entries.remove(&pos);
        } else {
            self.entries.insert(pos, state);
        }
    }

    /// Grid positions ordered by total degree, then by `p`.
    pub fn positions(&self) -> Vec<Pos> {
        let mut out = Vec::new();
        for t in 0..=self.cap + 1 {
            for p in 0..=t {
                out.push((p, t - p));
            }
        }
        out
    }

    /// Target of this page's differential from `pos`, if it stays in the grid.
    pub fn target(&self, pos: Pos) -> Option<Pos> {
        differential_target(pos.0, pos.1, self.r).filter(|&t| self.in_grid(t))
    }

    /// Source of this page's differential into `pos`.
    pub fn source(&self, pos: Pos) -> Option<Pos> {
        differential_source(pos.0, pos.1, self.r)
    }

    pub fn differential(&self, source: Pos) -> Option<&DifferentialRecord> {
        self.diffs.get(&source)
    }

    pub fn differentials(&self) -> impl Iterator<Item = (&Pos, &DifferentialRecord)> {
        self.diffs.iter()
    }

    /// Records `d_r` out of `source`. A differential touching a zero entry
    /// is stored as `ForcedZero` whatever was passed in.
    pub fn set_differential(&mut self, source: Pos, mut record: DifferentialRecord) -> Result<()> {
        let target = self.target(source).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "d_{} from {source:?} leaves the truncated grid",
                self.r
            ))
        })?;
        let (src, tgt) = (self.entry(source), self.entry(target));
        if src.is_zero() || tgt.is_zero() {
            record.status = DiffStatus::ForcedZero;
        } else if let DiffStatus::KnownMap(map) = &record.status {
            let ok = matches!(src, EntryState::Known(g) if g == map.domain())
                && matches!(tgt, EntryState::Known(g) if g == map.codomain());
            if !ok {
                return Err(Error::Shape(format!(
                    "d_{} {source:?}->{target:?} does not match the entries",
                    self.r
                )));
            }
            if map.is_zero() {
                record.status = DiffStatus::ForcedZero;
            }
        }
        self.diffs.insert(source, record);
        Ok(())
    }

    /// Fixed-width table, `q` descending, `p` ascending.
    pub fn render(&self) -> String {
        let top = self.cap + 1;
        let width = self
            .entries
            .values()
            .map(|e| e.cell().len())
            .max()
            .unwrap_or(1)
            .max(top.to_string().len())
            + 1;
        let label = top.to_string().len();
        let mut out = String::new();
        let _ = writeln!(out, "E_{} (total degree <= {})", self.r, top);
        for q in (0..=top).rev() {
            let mut line = format!("{q:>label$} |");
            for p in 0..=top - q {
                let _ = write!(line, "{:>width$}", self.entry((p, q)).cell());
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} +{}",
            " ".repeat(label),
            "-".repeat(width * (top + 1))
        );
        let mut axis = format!("{} ", " ".repeat(label + 1));
        for p in 0..=top {
            let _ = write!(axis, "{p:>width$}");
        }
        out.push_str(axis.trim_end());
        out.push('\n');
        out
    }
}

/// `E_2^{p,q} = H^p(B; H^q(F))` with trivial local coefficients.
///
/// `base[p]` describes `H^p(B)`; degrees past the end of `base` are
/// unknown, as are fiber degrees past its reliability bound. An entry is
/// unknown exactly when the groups it depends on are.
pub fn build_e2(base: &[EntryState], fiber: &GradedGroups, cap: usize) -> Result<Page> {
    let z = FgAbGroup::free(1);
    if base.first().and_then(|e| e.group()) != Some(z.clone()) {
        return Err(Error::InvalidArgument(
            "base must be connected (H^0 = Z)".into(),
        ));
    }
    if fiber.get(0) != Some(z) {
        return Err(Error::InvalidArgument(
            "fiber must be connected (H^0 = Z)".into(),
        ));
    }
    let base_at = |p: usize| base.get(p).and_then(|e| e.group());
    let mut page = Page::new(2, cap);
    for pos in page.positions() {
        let (p, q) = pos;
        let state = match fiber.get(q) {
            None => EntryState::Variable(format!("e{p}_{q}")),
            Some(m) if m.is_trivial() => EntryState::Zero,
            Some(m) => match coefficient_entry(base_at(p), base_at(p + 1), &m) {
                Some(g) => EntryState::known(g),
                None if q == 0 => EntryState::Variable(format!("v{p}")),
                None => EntryState::Variable(format!("e{p}_{q}")),
            },
        };
        page.set_entry(pos, state);
    }
    Ok(page)
}

/// `H^p(B; M)` from `H^p(B)` and `H^{p+1}(B)`; the latter only matters
/// through its torsion, and only when `M` has torsion.
fn coefficient_entry(
    here: Option<FgAbGroup>,
    next: Option<FgAbGroup>,
    m: &FgAbGroup,
) -> Option<FgAbGroup> {
    let here = here?;
    let next_torsion = if !m.torsion().is_empty() {
        next?.torsion_subgroup()
    } else {
        FgAbGroup::trivial()
    };
    let h_p = here.free_part().direct_sum(&next_torsion);
    Some(split_cohomology(&here.torsion_subgroup(), &h_p, m))
}

/// `E_{r+1}` from `E_r` and its recorded differentials. Fails with
/// `OpaqueDifferential` when a differential between two nonzero known
/// entries has no definite map.
pub fn turn_page(page: &Page) -> Result<Page> {
    let r = page.r;
    let mut opaque = Vec::new();
    for pos in page.positions() {
        let Some(t) = page.target(pos) else { continue };
        if let (EntryState::Known(_), EntryState::Known(_)) = (page.entry(pos), page.entry(t)) {
            match page.differential(pos).map(|d| &d.status) {
                Some(DiffStatus::ForcedZero) | Some(DiffStatus::KnownMap(_)) => {}
                _ => opaque.push(pos),
            }
        }
    }
    if !opaque.is_empty() {
        return Err(Error::OpaqueDifferential(opaque));
    }

    let mut next = Page::new(r + 1, page.cap);
    for pos in page.positions() {
        let state = match page.entry(pos) {
            EntryState::Zero => continue,
            EntryState::Variable(s) => EntryState::Variable(s.clone()),
            EntryState::Known(e) => match (outgoing_map(page, pos, e), incoming_map(page, pos)) {
                (Some(out), Some(inc)) => EntryState::known(subquotient(&out, inc.as_ref()).0),
                _ => EntryState::Variable(format!("u{}_{}_{}", r + 1, pos.0, pos.1)),
            },
        };
        next.set_entry(pos, state);
    }
    Ok(next)
}

/// The outgoing map at a known entry; `None` when it is not determined.
fn outgoing_map(page: &Page, pos: Pos, e: &FgAbGroup) -> Option<GroupMap> {
    let zero = || GroupMap::zero(e.clone(), FgAbGroup::trivial());
    let Some(t) = page.target(pos) else {
        return Some(zero());
    };
    if page.entry(t).is_zero() {
        return Some(zero());
    }
    match page.differential(pos).map(|d| &d.status) {
        Some(DiffStatus::ForcedZero) => Some(zero()),
        Some(DiffStatus::KnownMap(m)) => Some(m.clone()),
        _ => None,
    }
}

/// `Some(None)` for a zero incoming map, `Some(Some(map))` for a known one.
fn incoming_map(page: &Page, pos: Pos) -> Option<Option<GroupMap>> {
    let Some(s) = page.source(pos) else {
        return Some(None);
    };
    if page.entry(s).is_zero() {
        return Some(None);
    }
    match page.differential(s).map(|d| &d.status) {
        Some(DiffStatus::ForcedZero) => Some(None),
        Some(DiffStatus::KnownMap(m)) => Some(Some(m.clone())),
        _ => None,
    }
}

/// What the spectral sequence converges to.
#[derive(Clone, Debug)]
pub enum Abutment {
    /// Total space contractible: only `Z` in degree 0.
    Contractible,
    /// Known cohomology of the total space.
    Groups(GradedGroups),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub violations: Vec<Violation>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares a stable page against the abutment in total degrees
/// `0..=cap`. For a general abutment only rank and torsion order are
/// compared, since the extension problem is not solved here.
pub fn check_convergence(page: &Page, abutment: &Abutment) -> ConvergenceReport {
    let mut report = ConvergenceReport::default();
    if page.r <= page.cap + 1 {
        report.violations.push(Violation {
            degree: page.cap,
            message: format!(
                "E_{} is not stable through total degree {}",
                page.r, page.cap
            ),
        });
    }
    for t in 0..=page.cap {
        let cells: Vec<(Pos, &EntryState)> = (0..=t)
            .map(|p| ((p, t - p), page.entry((p, t - p))))
            .collect();
        if let Some((pos, _)) = cells.iter().find(|(_, e)| e.is_variable()) {
            report.violations.push(Violation {
                degree: t,
                message: format!("E_inf{pos:?} is unresolved"),
            });
            continue;
        }
        let expected = match abutment {
            Abutment::Contractible if t == 0 => FgAbGroup::free(1),
            Abutment::Contractible => FgAbGroup::trivial(),
            Abutment::Groups(h) => match h.get(t) {
                Some(g) => g,
                None => continue,
            },
        };
        let mut rank = 0;
        let mut order = BigUint::one();
        for (_, e) in &cells {
            let g = e.group().expect("checked above");
            rank += g.free_rank();
            order *= g.torsion_subgroup().order().expect("finite");
        }
        let want_order = expected.torsion_subgroup().order().expect("finite");
        if rank != expected.free_rank() || order != want_order {
            let found: Vec<String> = cells
                .iter()
                .filter(|(_, e)| !e.is_zero())
                .map(|(pos, e)| format!("{pos:?}={}", e.cell()))
                .collect();
            report.violations.push(Violation {
                degree: t,
                message: format!(
                    "total degree {t} should assemble to {expected}, survivors: {}",
                    if found.is_empty() {
                        "none".into()
                    } else {
                        found.join(", ")
                    }
                ),
            });
        }
    }
    report
}
