//! Degree-by-degree computation of `H^*(K(Z,n); Z)` from the path-loop
//! fibration `K(Z,n-1) -> P -> K(Z,n)`.
//!
//! The total space is contractible, so every entry in total degree
//! `1..=N` has to die. The solver replays the spectral sequence from
//! `E_2` with the base groups found so far, choosing a differential only
//! when exactness leaves a single possibility up to isomorphism of the
//! outcome. Whatever hits an unknown base entry `(d, 0)` and is forced to
//! die there is recorded; once everything arriving at `(d, 0)` is
//! accounted for, `H^d` is the iterated extension of those images. Each
//! newly determined degree triggers a fresh pass.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fgab::{
    all_homs, cokernel_projection, extension_classes, kernel_cokernel, FgAbGroup, GroupMap,
};
use crate::intlin::IntMatrix;
use crate::ssengine::{
    build_e2, check_convergence, differential_source, differential_target, turn_page, Abutment,
    ConvergenceReport, DiffStatus, DifferentialRecord, EntryState, Page, Pos, Violation,
};
use crate::uct::{cohomology_table, GradedGroups};

/// Upper bound on hom-set enumeration when choosing a forced map.
const HOM_LIMIT: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Determined(FgAbGroup),
    Ambiguous(Vec<FgAbGroup>),
    Underdetermined,
    Inconsistent,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Determined(_) => "Determined",
            Status::Ambiguous(_) => "Ambiguous",
            Status::Underdetermined => "Underdetermined",
            Status::Inconsistent => "Inconsistent",
        }
    }

    pub fn group(&self) -> Option<&FgAbGroup> {
        match self {
            Status::Determined(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Determined(g) => write!(f, "{g}"),
            Status::Ambiguous(c) => {
                let c: Vec<String> = c.iter().map(|g| g.to_string()).collect();
                write!(f, "one of {{{}}}", c.join(", "))
            }
            Status::Underdetermined => f.write_str("undetermined"),
            Status::Inconsistent => f.write_str("inconsistent"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    pub degree: usize,
    pub status: Status,
    pub trace: String,
}

/// Cohomology of `K(Z, n)` through `reliable_up_to`, one record per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerResult {
    pub n: usize,
    pub reliable_up_to: usize,
    pub degrees: Vec<DegreeRecord>,
}

impl TowerResult {
    pub fn status(&self, degree: usize) -> Option<&Status> {
        self.degrees.get(degree).map(|r| &r.status)
    }

    /// First degree that is not `Determined`.
    pub fn first_open_degree(&self) -> Option<usize> {
        self.degrees
            .iter()
            .find(|r| !matches!(r.status, Status::Determined(_)))
            .map(|r| r.degree)
    }

    /// The determined prefix, usable as the fiber of the next stage.
    pub fn determined_prefix(&self) -> GradedGroups {
        let groups: Vec<FgAbGroup> = self
            .degrees
            .iter()
            .map_while(|r| r.status.group().cloned())
            .collect();
        GradedGroups::new(groups).unwrap_or_else(|_| GradedGroups::complete(vec![]))
    }

    pub fn all_determined(&self) -> bool {
        self.first_open_degree().is_none()
    }

    pub fn any_inconsistent(&self) -> bool {
        self.degrees
            .iter()
            .any(|r| r.status == Status::Inconsistent)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Source has no later chance: the differential is injective on it.
    MustDieOutgoing,
    /// Target has no other chance: the differential is onto it.
    MustDieIncoming,
    /// `w -> x -> y` exact at `x`.
    ThreeTermExact,
    /// `u -> w -> x -> y` exact at `w` and `x`.
    FourTermExact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRecord {
    pub kind: ConstraintKind,
    pub page: usize,
    pub positions: Vec<Pos>,
    pub entries: Vec<EntryState>,
    pub note: String,
}

/// A differential whose map was fixed, kept for independent replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduledDifferential {
    pub page: usize,
    pub source: Pos,
    pub target: Pos,
    pub map: GroupMap,
}

#[derive(Clone, Debug)]
pub struct TowerSolution {
    pub result: TowerResult,
    pub constraints: Vec<ConstraintRecord>,
    pub schedule: Vec<ScheduledDifferential>,
    /// `E_2` through `E_{N+2}` of the last pass.
    pub pages: Vec<Page>,
    /// Contradictions that could not be pinned to an open degree.
    pub notes: Vec<String>,
    pub passes: usize,
}

impl TowerSolution {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|p| p.r() == r)
    }
}

/// `H^*(K(Z,1)) = H^*(S^1)`.
pub fn circle_cohomology() -> GradedGroups {
    GradedGroups::complete(vec![FgAbGroup::free(1), FgAbGroup::free(1)])
}

/// `H^k(K(Z,n))` for `k <= n + 1`: homology is `Z` in degrees 0 and `n`
/// and vanishes in between (Hurewicz), and `H_{n+1} = 0` because the
/// Hurewicz map onto it is surjective from `pi_{n+1} = 0`.
pub fn hurewicz_seed(n: usize) -> Result<GradedGroups> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the seed needs n >= 2 (got {n}); K(Z,1) is the circle"
        )));
    }
    let mut homology = vec![FgAbGroup::trivial(); n + 2];
    homology[0] = FgAbGroup::free(1);
    homology[n] = FgAbGroup::free(1);
    let homology = GradedGroups::new(homology)?;
    Ok(cohomology_table(&homology, &FgAbGroup::free(1)))
}

/// Computes `H^k(K(Z,n))` for `k <= max_degree` over `fiber`, the
/// cohomology of `K(Z,n-1)`. Fiber degrees past its reliability bound are
/// treated as unknown, which only ever costs determinacy.
pub fn solve_tower(n: usize, max_degree: usize, fiber: &GradedGroups) -> Result<TowerSolution> {
    let seed = hurewicz_seed(n)?;
    let cap = max_degree;
    let mut base: Vec<Option<FgAbGroup>> = (0..=cap + 1).map(|d| seed.get(d)).collect();
    let mut records: BTreeMap<usize, (Status, String)> = BTreeMap::new();
    for (d, g) in base.iter().enumerate().take(cap + 1) {
        if let Some(g) = g {
            records.insert(
                d,
                (
                    Status::Determined(g.clone()),
                    "Hurewicz and universal coefficients".into(),
                ),
            );
        }
    }
    let mut notes = Vec::new();
    let mut passes = 0;
    let mut halted = None;
    let sim = loop {
        passes += 1;
        let sim = simulate(&base, fiber, cap)?;
        if let Some((t, msg)) = sim.inconsistencies.first().cloned() {
            match (t.max(1)..=cap).find(|d| !records.contains_key(d)) {
                Some(d) => {
                    records.insert(d, (Status::Inconsistent, msg));
                    halted = Some(d);
                }
                None => notes.push(msg),
            }
            break sim;
        }
        let mut progressed = false;
        for d in n + 2..=cap {
            if records.contains_key(&d) || sim.opaque.contains_key(&d) {
                continue;
            }
            let pieces = sim.pieces.get(&d).cloned().unwrap_or_default();
            match iterated_extension(&pieces) {
                Ok(c) if c.len() == 1 => {
                    base[d] = Some(c[0].clone());
                    records.insert(
                        d,
                        (Status::Determined(c[0].clone()), piece_trace(d, &pieces)),
                    );
                    progressed = true;
                    break;
                }
                Ok(c) => {
                    let trace = format!("{}; extension not determined", piece_trace(d, &pieces));
                    records.insert(d, (Status::Ambiguous(c), trace));
                }
                Err(e) => {
                    let trace = format!("{}; {e}", piece_trace(d, &pieces));
                    records.insert(d, (Status::Underdetermined, trace));
                }
            }
        }
        if !progressed {
            break sim;
        }
    };

    let degrees = (0..=cap)
        .map(|d| {
            let (status, trace) = records.remove(&d).unwrap_or_else(|| {
                let why = match (halted, sim.opaque.get(&d)) {
                    (Some(h), _) if h < d => {
                        format!("not attempted after the contradiction in degree {h}")
                    }
                    (_, Some(reasons)) => reasons[0].clone(),
                    _ => "E_2 entries feeding (d,0) are unknown".replace('d', &d.to_string()),
                };
                (Status::Underdetermined, why)
            });
            DegreeRecord {
                degree: d,
                status,
                trace,
            }
        })
        .collect();
    Ok(TowerSolution {
        result: TowerResult {
            n,
            reliable_up_to: cap,
            degrees,
        },
        constraints: sim.constraints,
        schedule: sim.schedule,
        pages: sim.pages,
        notes,
        passes,
    })
}

fn piece_trace(d: usize, pieces: &[Piece]) -> String {
    if pieces.is_empty() {
        return format!("nothing can reach ({d},0) and it must vanish");
    }
    let parts: Vec<String> = pieces
        .iter()
        .map(|p| format!("d_{} from {:?} injects {}", p.page, p.source, p.group))
        .collect();
    format!("({d},0) must vanish: {}", parts.join("; "))
}

/// `E_r^{d,0}` is an extension of `E_{r+1}^{d,0}` by the image of `d_r`.
fn iterated_extension(pieces: &[Piece]) -> Result<Vec<FgAbGroup>> {
    let mut sorted = pieces.to_vec();
    sorted.sort_by_key(|p| p.page);
    let mut acc = BTreeSet::from([FgAbGroup::trivial()]);
    for piece in sorted.iter().rev() {
        let mut next = BTreeSet::new();
        for quot in &acc {
            next.extend(extension_classes(&piece.group, quot)?);
        }
        acc = next;
    }
    Ok(acc.into_iter().collect())
}

#[derive(Clone, Debug)]
struct Piece {
    page: usize,
    source: Pos,
    group: FgAbGroup,
}

#[derive(Default)]
struct Sim {
    pages: Vec<Page>,
    pieces: BTreeMap<usize, Vec<Piece>>,
    opaque: BTreeMap<usize, Vec<String>>,
    inconsistencies: Vec<(usize, String)>,
    constraints: Vec<ConstraintRecord>,
    schedule: Vec<ScheduledDifferential>,
}

impl Sim {
    fn constrain(&mut self, page: &Page, kind: ConstraintKind, positions: Vec<Pos>, note: String) {
        let entries = positions.iter().map(|&p| page.entry(p).clone()).collect();
        self.constraints.push(ConstraintRecord {
            kind,
            page: page.r(),
            positions,
            entries,
            note,
        });
    }
}

fn simulate(base: &[Option<FgAbGroup>], fiber: &GradedGroups, cap: usize) -> Result<Sim> {
    let states: Vec<EntryState> = base
        .iter()
        .enumerate()
        .map(|(d, g)| match g {
            Some(g) => EntryState::known(g.clone()),
            None => EntryState::Variable(format!("v{d}")),
        })
        .collect();
    let mut page = build_e2(&states, fiber, cap)?;
    let mut sim = Sim::default();
    for _ in 2..=cap + 1 {
        let mut dying = Vec::new();
        for x in page.positions() {
            if let Some(y) = page.target(x) {
                decide(&mut page, x, y, &mut sim, &mut dying)?;
            }
        }
        let mut next = turn_page(&page)?;
        for x in dying {
            next.set_entry(x, EntryState::Zero);
        }
        sim.pages.push(page);
        page = next;
    }
    for x in page.positions() {
        if in_range(&page, x) {
            if let EntryState::Known(g) = page.entry(x) {
                sim.inconsistencies.push((
                    x.0 + x.1,
                    format!(
                        "{g} at {x:?} survives to E_inf in total degree {}",
                        x.0 + x.1
                    ),
                ));
            }
        }
    }
    sim.inconsistencies.sort_by_key(|(t, _)| *t);
    sim.pages.push(page);
    Ok(sim)
}

fn in_range(page: &Page, (p, q): Pos) -> bool {
    (1..=page.cap()).contains(&(p + q))
}

fn capable(page: &Page, pos: Option<Pos>) -> bool {
    pos.is_some_and(|t| page.in_grid(t) && !page.entry(t).is_zero())
}

/// No differential after this page can touch `x`.
fn must_die_now(page: &Page, x: Pos) -> bool {
    in_range(page, x)
        && (page.r() + 1..=page.cap() + 1).all(|r| {
            !capable(page, differential_target(x.0, x.1, r))
                && !capable(page, differential_source(x.0, x.1, r))
        })
}

/// Only this page's incoming differential can still kill `y`.
fn must_be_hit_now(page: &Page, y: Pos) -> bool {
    let r = page.r();
    in_range(page, y)
        && (r..=page.cap() + 1).all(|s| !capable(page, differential_target(y.0, y.1, s)))
        && (r + 1..=page.cap() + 1).all(|s| !capable(page, differential_source(y.0, y.1, s)))
}

fn incoming_map(page: &Page, x: Pos) -> Option<(Pos, GroupMap)> {
    let w = page.source(x)?;
    match &page.differential(w)?.status {
        DiffStatus::KnownMap(m) => Some((w, m.clone())),
        _ => None,
    }
}

fn unknown_symbol(r: usize, (p, q): Pos) -> EntryState {
    EntryState::Variable(format!("u{r}_{p}_{q}"))
}

fn decide(page: &mut Page, x: Pos, y: Pos, sim: &mut Sim, dying: &mut Vec<Pos>) -> Result<()> {
    let r = page.r();
    let ex = page.entry(x).clone();
    let ey = page.entry(y).clone();
    if ex.is_zero() || ey.is_zero() {
        return page.set_differential(x, DifferentialRecord::forced_zero("zero endpoint"));
    }
    let EntryState::Known(e) = &ex else {
        let reason = format!("d_{r} from {x:?} leaves an unknown source");
        if y.1 == 0 {
            sim.opaque.entry(y.0).or_default().push(reason.clone());
        }
        if !ey.is_variable() {
            page.set_entry(y, unknown_symbol(r + 1, y));
        }
        return page.set_differential(x, DifferentialRecord::opaque(reason));
    };
    let incoming = incoming_map(page, x);
    let in_map = incoming
        .as_ref()
        .map(|(_, m)| m.clone())
        .unwrap_or_else(|| GroupMap::zero(FgAbGroup::trivial(), e.clone()));
    let (q, pi) = cokernel_projection(&in_map);
    if q.is_trivial() {
        schedule_zero(page, sim, x, y);
        return page.set_differential(
            x,
            DifferentialRecord::forced_zero("source is all boundaries"),
        );
    }
    let x_dies = must_die_now(page, x);

    let yg = match &ey {
        EntryState::Known(g) => g.clone(),
        _ => {
            if x_dies {
                dying.push(x);
                if y.1 == 0 {
                    sim.pieces.entry(y.0).or_default().push(Piece {
                        page: r,
                        source: x,
                        group: q.clone(),
                    });
                }
                sim.constrain(
                    page,
                    ConstraintKind::MustDieOutgoing,
                    vec![x, y],
                    format!("{q} injects into the unknown at {y:?}"),
                );
                exactness_chain(page, sim, x, y, incoming.as_ref());
                return page
                    .set_differential(x, DifferentialRecord::opaque("injective into an unknown"));
            }
            let reason = format!("d_{r} from {x:?} into {y:?} is not forced");
            if y.1 == 0 {
                sim.opaque.entry(y.0).or_default().push(reason.clone());
            }
            return page.set_differential(x, DifferentialRecord::opaque(reason));
        }
    };

    if q.hom(&yg).is_trivial() {
        if x_dies {
            sim.inconsistencies.push((
                x.0 + x.1,
                format!("{q} at {x:?} must die on E_{r} but Hom({q}, {yg}) = 0"),
            ));
        }
        schedule_zero(page, sim, x, y);
        return page.set_differential(
            x,
            DifferentialRecord::forced_zero("Hom(source, target) = 0"),
        );
    }
    let y_dies = must_be_hit_now(page, y);
    let choice = if x_dies || y_dies {
        choose_map(&q, &yg, x_dies, y_dies)
    } else {
        ForcedMap::Open("neither end is forced")
    };
    match choice {
        ForcedMap::Unique(g) => {
            let d = pi.then(&g)?;
            if x_dies {
                sim.constrain(
                    page,
                    ConstraintKind::MustDieOutgoing,
                    vec![x, y],
                    format!("{q} injects into {yg}"),
                );
                exactness_chain(page, sim, x, y, incoming.as_ref());
            }
            if y_dies {
                sim.constrain(
                    page,
                    ConstraintKind::MustDieIncoming,
                    vec![x, y],
                    format!("{q} maps onto {yg}"),
                );
            }
            sim.schedule.push(ScheduledDifferential {
                page: r,
                source: x,
                target: y,
                map: d.clone(),
            });
            page.set_differential(x, DifferentialRecord::known(d, "forced by exactness"))
        }
        ForcedMap::Impossible(why) => {
            sim.inconsistencies.push((
                x.0 + x.1,
                format!("d_{r} {x:?} -> {y:?}: no map {q} -> {yg} is {why}"),
            ));
            make_opaque(page, x, y, format!("impossible: {why}"))
        }
        ForcedMap::Open(why) => {
            let reason = format!("d_{r} {x:?} -> {y:?} ({q} -> {yg}): {why}");
            make_opaque(page, x, y, reason)
        }
    }
}

/// Zero maps between known entries are part of the replay schedule too.
fn schedule_zero(page: &Page, sim: &mut Sim, x: Pos, y: Pos) {
    if let (EntryState::Known(a), EntryState::Known(b)) = (page.entry(x), page.entry(y)) {
        sim.schedule.push(ScheduledDifferential {
            page: page.r(),
            source: x,
            target: y,
            map: GroupMap::zero(a.clone(), b.clone()),
        });
    }
}

fn make_opaque(page: &mut Page, x: Pos, y: Pos, reason: String) -> Result<()> {
    let r = page.r();
    page.set_differential(x, DifferentialRecord::opaque(reason))?;
    page.set_entry(x, unknown_symbol(r + 1, x));
    page.set_entry(y, unknown_symbol(r + 1, y));
    Ok(())
}

/// Records `w -> x -> y` (and `u -> w -> x -> y`) when the differential
/// out of `x` is injective and `x` is hit.
fn exactness_chain(page: &Page, sim: &mut Sim, x: Pos, y: Pos, incoming: Option<&(Pos, GroupMap)>) {
    let Some((w, m)) = incoming else { return };
    if m.is_zero() {
        return;
    }
    let positions = match incoming_map(page, *w) {
        Some((u, mu)) if !mu.is_zero() => vec![u, *w, x, y],
        _ => vec![*w, x, y],
    };
    let kind = if positions.len() == 4 {
        ConstraintKind::FourTermExact
    } else {
        ConstraintKind::ThreeTermExact
    };
    sim.constrain(
        page,
        kind,
        positions,
        "kernel of the outgoing map is the image of the incoming".into(),
    );
}

/// Outcome of asking for a map with prescribed injectivity/surjectivity.
#[derive(Debug)]
pub enum ForcedMap {
    Unique(GroupMap),
    Impossible(&'static str),
    Open(&'static str),
}

/// A map `q -> y` with the required injectivity/surjectivity, provided all
/// such maps have isomorphic kernel and cokernel.
pub fn choose_map(q: &FgAbGroup, y: &FgAbGroup, inj: bool, surj: bool) -> ForcedMap {
    if inj && surj {
        return if q == y {
            ForcedMap::Unique(GroupMap::identity(q.clone()))
        } else {
            ForcedMap::Impossible("an isomorphism")
        };
    }
    if inj {
        if q.free_rank() > y.free_rank() {
            return ForcedMap::Impossible("injective");
        }
        if !q.is_finite() {
            return ForcedMap::Open("cokernel of an injection from an infinite group is not fixed");
        }
        // a finite group lands in the torsion subgroup
        let t = y.torsion_subgroup();
        let Some(homs) = all_homs(q, &t, HOM_LIMIT) else {
            return ForcedMap::Open("too many maps to enumerate");
        };
        let lifted = homs.into_iter().filter(|h| h.is_injective()).map(|h| {
            let mut m = IntMatrix::zeros(y.num_generators(), q.num_generators());
            for i in 0..t.num_generators() {
                for j in 0..q.num_generators() {
                    m.set(y.free_rank() + i, j, h.matrix().get(i, j).clone());
                }
            }
            GroupMap::new(q.clone(), y.clone(), m).expect("torsion lift is well defined")
        });
        return unique_by(lifted, |m| kernel_cokernel(m).1, "injective");
    }
    if y.free_rank() > q.free_rank() {
        return ForcedMap::Impossible("surjective");
    }
    if y.is_finite() {
        let Some(homs) = all_homs(q, y, HOM_LIMIT) else {
            return ForcedMap::Open("too many maps to enumerate");
        };
        return unique_by(
            homs.into_iter().filter(|h| h.is_surjective()),
            |m| kernel_cokernel(m).0,
            "surjective",
        );
    }
    if y.torsion().is_empty() {
        // onto a free group: q = ker + Z^b, so the kernel is fixed
        let b = y.free_rank();
        let mut m = IntMatrix::zeros(b, q.num_generators());
        for i in 0..b {
            m.set(i, i, 1.into());
        }
        return ForcedMap::Unique(GroupMap::new(q.clone(), y.clone(), m).expect("projection"));
    }
    ForcedMap::Open("kernel of a surjection onto a mixed group is not fixed")
}

fn unique_by(
    maps: impl Iterator<Item = GroupMap>,
    key: impl Fn(&GroupMap) -> FgAbGroup,
    what: &'static str,
) -> ForcedMap {
    let mut first = None;
    let mut keys = BTreeSet::new();
    for m in maps {
        keys.insert(key(&m));
        first.get_or_insert(m);
    }
    match (first, keys.len()) {
        (None, _) => ForcedMap::Impossible(what),
        (Some(m), 1) => ForcedMap::Unique(m),
        _ => ForcedMap::Open("several outcomes are possible"),
    }
}

/// Rebuilds the spectral sequence through total degree `D - 2`, where `D`
/// is the first degree that is not `Determined`, from the determined
/// groups and the recorded differentials alone, and checks that it
/// converges to a point. Entries in degree `D - 1` only receive maps, so
/// they are taken from the recorded codomains.
pub fn replay(solution: &TowerSolution, fiber: &GradedGroups) -> ConvergenceReport {
    let result = &solution.result;
    let open = result
        .first_open_degree()
        .unwrap_or(result.reliable_up_to + 1);
    let mut report = ConvergenceReport::default();
    if open < 2 {
        return report;
    }
    let cap = open - 2;
    let base: Vec<EntryState> = result.degrees[..open]
        .iter()
        .map(|r| EntryState::known(r.status.group().expect("determined").clone()))
        .collect();
    let fail = |report: &mut ConvergenceReport, degree: usize, message: String| {
        report.violations.push(Violation { degree, message });
    };
    let mut page = match build_e2(&base, fiber, cap) {
        Ok(p) => p,
        Err(e) => {
            fail(&mut report, 0, e.to_string());
            return report;
        }
    };
    for r in 2..=cap + 1 {
        for s in solution.schedule.iter().filter(|s| s.page == r) {
            if !page.in_grid(s.target) {
                continue;
            }
            if s.target.0 + s.target.1 == cap + 1 {
                page.set_entry(s.target, EntryState::known(s.map.codomain().clone()));
            }
            let rec = DifferentialRecord::known(s.map.clone(), "replayed");
            if let Err(e) = page.set_differential(s.source, rec) {
                fail(&mut report, s.source.0 + s.source.1, e.to_string());
                return report;
            }
        }
        for x in page.positions() {
            let (Some(y), Some((_, inc))) = (page.target(x), incoming_map(&page, x)) else {
                continue;
            };
            if let Some(DiffStatus::KnownMap(out)) = page.differential(x).map(|d| &d.status) {
                if !inc.then(out).map(|c| c.is_zero()).unwrap_or(false) {
                    fail(
                        &mut report,
                        x.0 + x.1,
                        format!("d_{r} into {x:?} then {x:?} -> {y:?} is not zero"),
                    );
                    return report;
                }
            }
        }
        page = match turn_page(&page) {
            Ok(p) => p,
            Err(e) => {
                fail(&mut report, 0, e.to_string());
                return report;
            }
        };
    }
    report
        .violations
        .extend(check_convergence(&page, &Abutment::Contractible).violations);
    report
}
