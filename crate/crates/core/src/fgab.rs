//! Finitely generated abelian groups in invariant-factor form, the maps
//! between them, and the bilinear functors.
//!
//! Generator convention for every presentation in this crate: free
//! generators first, then one generator per invariant factor in chain
//! order. A [`GroupMap`] matrix is `codomain gens x domain gens` on that
//! convention.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlin::{self, IntMatrix};

/// Canonical finitely generated abelian group `Z^r + Z_{d1} + ... + Z_{dk}`
/// with `2 <= d1 | d2 | ... | dk`. Field equality is isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z_d`; `cyclic(0)` is `Z` and `cyclic(1)` is trivial.
    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => Self::free(1),
            1 => Self::trivial(),
            d => FgAbGroup {
                free_rank: 0,
                torsion: vec![d],
            },
        }
    }

    /// Trusted constructor for chains produced by SNF.
    pub(crate) fn from_chain(free_rank: usize, torsion: Vec<u64>) -> Self {
        debug_assert!(is_chain(&torsion));
        FgAbGroup { free_rank, torsion }
    }

    /// Validated constructor: `torsion` must already be an invariant-factor chain.
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if !is_chain(&torsion) {
            return Err(Error::InvalidArgument(format!(
                "torsion {torsion:?} is not an invariant-factor chain (entries >= 2, each dividing the next)"
            )));
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    /// Invariant-factor form of `Z^free_rank + Z_{c1} + ... + Z_{cm}` for
    /// arbitrary positive coefficients. Zero coefficients are rejected.
    pub fn canonicalize(free_rank: usize, coefficients: &[u64]) -> Result<Self> {
        if coefficients.contains(&0) {
            return Err(Error::InvalidArgument(
                "cyclic coefficient 0 (use the free rank for Z summands)".into(),
            ));
        }
        let diag = IntMatrix::diagonal(
            coefficients.len(),
            coefficients.len(),
            coefficients.iter().map(|&c| BigInt::from(c)),
        );
        let torsion_part = intlin::cokernel(&diag);
        Ok(FgAbGroup {
            free_rank,
            torsion: torsion_part.torsion,
        })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn torsion_subgroup(&self) -> FgAbGroup {
        FgAbGroup::from_chain(0, self.torsion.clone())
    }

    pub fn free_part(&self) -> FgAbGroup {
        FgAbGroup::free(self.free_rank)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.torsion.len() <= 1
    }

    /// Order of a finite group; `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|&d| BigUint::from(d)).product())
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of each canonical generator, `0` standing for infinite order.
    pub fn generator_orders(&self) -> Vec<u64> {
        std::iter::repeat_n(0, self.free_rank)
            .chain(self.torsion.iter().copied())
            .collect()
    }

    /// Relation matrix of the canonical presentation (gens x torsion gens).
    pub fn relations(&self) -> IntMatrix {
        let g = self.num_generators();
        let mut r = IntMatrix::zeros(g, self.torsion.len());
        for (j, &d) in self.torsion.iter().enumerate() {
            r.set(self.free_rank + j, j, BigInt::from(d));
        }
        r
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let coeffs: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        FgAbGroup::canonicalize(self.free_rank + other.free_rank, &coeffs)
            .expect("torsion entries are nonzero")
    }

    /// `A^k`
    pub fn power(&self, k: usize) -> FgAbGroup {
        (0..k).fold(FgAbGroup::trivial(), |acc, _| acc.direct_sum(self))
    }

    /// Cyclic summands, `0` meaning `Z`.
    fn cyclic_factors(&self) -> impl Iterator<Item = u64> + '_ {
        self.generator_orders().into_iter()
    }

    pub fn tensor(&self, other: &FgAbGroup) -> FgAbGroup {
        bilinear(self, other, |a, b| match (a, b) {
            (0, 0) => 0,
            (0, d) | (d, 0) => d,
            (a, b) => a.gcd(&b),
        })
    }

    pub fn tor(&self, other: &FgAbGroup) -> FgAbGroup {
        bilinear(self, other, |a, b| match (a, b) {
            (0, _) | (_, 0) => 1,
            (a, b) => a.gcd(&b),
        })
    }

    /// `Hom(self, other)`
    pub fn hom(&self, other: &FgAbGroup) -> FgAbGroup {
        bilinear(self, other, |a, b| match (a, b) {
            (0, b) => b,
            (_, 0) => 1,
            (a, b) => a.gcd(&b),
        })
    }

    /// `Ext(self, other)`
    pub fn ext(&self, other: &FgAbGroup) -> FgAbGroup {
        bilinear(self, other, |a, b| match (a, b) {
            (0, _) => 1,
            (a, 0) => a,
            (a, b) => a.gcd(&b),
        })
    }

    /// Prime-power cyclic summands `(p, p^k)` of the torsion part, sorted.
    pub fn primary_factors(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for &d in &self.torsion {
            for (p, e) in factorize(d) {
                out.push((p, p.pow(e)));
            }
        }
        out.sort_unstable();
        out
    }

    /// Renders the primary decomposition, e.g. `Z_2 + Z_3` for `Z_6`.
    pub fn display_primary(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(
            self.primary_factors()
                .into_iter()
                .map(|(_, q)| format!("Z_{q}")),
        );
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// All elements of a finite group as coordinate vectors on the
    /// canonical generators. Panics for infinite groups.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        assert!(self.is_finite(), "element enumeration of an infinite group");
        let mut out = vec![Vec::new()];
        for &d in &self.torsion {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for prefix in &out {
                for x in 0..d {
                    let mut v = prefix.clone();
                    v.push(x);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

fn is_chain(torsion: &[u64]) -> bool {
    torsion.iter().all(|&d| d >= 2) && torsion.windows(2).all(|w| w[1] % w[0] == 0)
}

fn bilinear(a: &FgAbGroup, b: &FgAbGroup, rule: impl Fn(u64, u64) -> u64) -> FgAbGroup {
    let mut free = 0;
    let mut coeffs = Vec::new();
    for x in a.cyclic_factors() {
        for y in b.cyclic_factors() {
            match rule(x, y) {
                0 => free += 1,
                1 => {}
                d => coeffs.push(d),
            }
        }
    }
    FgAbGroup::canonicalize(free, &coeffs).expect("nonzero coefficients")
}

/// Trial-division factorization.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, " + ")
            }
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                write!(f, "Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z_{d}")?;
        }
        Ok(())
    }
}

/// Parses `0`, `Z`, `Z^r`, `Z_d` summands joined by `+`. Non-canonical
/// input (`Z_2 + Z_3`) is accepted and canonicalized.
impl FromStr for FgAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut free = 0usize;
        let mut coeffs = Vec::new();
        let mut offset = 0usize;
        for term in s.split('+') {
            let lead = term.len() - term.trim_start().len();
            let at = offset + lead;
            offset += term.len() + 1;
            let t = term.trim();
            let err = |message: String| Error::Parse {
                offset: at,
                message,
            };
            if t == "0" {
                continue;
            } else if t == "Z" {
                free += 1;
            } else if let Some(r) = t.strip_prefix("Z^") {
                let r: usize = r
                    .parse()
                    .map_err(|_| err(format!("bad free rank in `{t}`")))?;
                free += r;
            } else if let Some(d) = t.strip_prefix("Z_") {
                let d: u64 = d
                    .parse()
                    .map_err(|_| err(format!("bad cyclic order in `{t}`")))?;
                if d == 0 {
                    return Err(err("Z_0 is not allowed; write Z".into()));
                }
                if d > 1 {
                    coeffs.push(d);
                }
            } else {
                return Err(err(format!("unrecognized summand `{t}`")));
            }
        }
        FgAbGroup::canonicalize(free, &coeffs)
    }
}

/// Homomorphism between two canonical groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupMap {
    /// Validates shape and well-definedness; torsion rows are reduced into `[0, d)`.
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        let (m, n) = (domain.num_generators(), codomain.num_generators());
        if matrix.rows() != n || matrix.cols() != m {
            return Err(Error::Shape(format!(
                "map {domain} -> {codomain} needs a {n}x{m} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dorders = domain.generator_orders();
        let corders = codomain.generator_orders();
        for (j, &dj) in dorders.iter().enumerate() {
            if dj == 0 {
                continue;
            }
            for (i, &ei) in corders.iter().enumerate() {
                let v = matrix.get(i, j) * BigInt::from(dj);
                let ok = if ei == 0 {
                    v.is_zero()
                } else {
                    v.is_multiple_of(&BigInt::from(ei))
                };
                if !ok {
                    return Err(Error::IllDefinedMap(format!(
                        "generator {j} of order {dj} sent to a non-annihilated value in coordinate {i}"
                    )));
                }
            }
        }
        Ok(GroupMap {
            matrix: reduce_rows(matrix, &corders),
            domain,
            codomain,
        })
    }

    pub fn zero(domain: FgAbGroup, codomain: FgAbGroup) -> Self {
        let matrix = IntMatrix::zeros(codomain.num_generators(), domain.num_generators());
        GroupMap {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(group: FgAbGroup) -> Self {
        let matrix = IntMatrix::identity(group.num_generators());
        GroupMap {
            domain: group.clone(),
            codomain: group,
            matrix,
        }
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(group: FgAbGroup, k: i64) -> Self {
        let n = group.num_generators();
        let matrix = IntMatrix::diagonal(n, n, std::iter::repeat_n(BigInt::from(k), n));
        GroupMap::new(group.clone(), group, matrix).expect("scalar maps are well defined")
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupMap) -> Result<GroupMap> {
        if self.codomain != other.domain {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        GroupMap::new(
            self.domain.clone(),
            other.codomain.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    pub fn is_injective(&self) -> bool {
        kernel_cokernel(self).0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        kernel_cokernel(self).1.is_trivial()
    }

    /// `im(f) ≅ domain / ker(f)`
    pub fn image(&self) -> FgAbGroup {
        let (_, kinc) = kernel_inclusion(self);
        cokernel_projection(&kinc).0
    }
}

fn reduce_rows(mut m: IntMatrix, orders: &[u64]) -> IntMatrix {
    for (i, &d) in orders.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let d = BigInt::from(d);
        for j in 0..m.cols() {
            let v = m.get(i, j).mod_floor(&d);
            m.set(i, j, v);
        }
    }
    m
}

/// Kernel and cokernel of `f` as abstract groups.
pub fn kernel_cokernel(f: &GroupMap) -> (FgAbGroup, FgAbGroup) {
    (kernel_inclusion(f).0, cokernel_projection(f).0)
}

/// Cokernel of `f` together with the projection `codomain -> coker`.
pub fn cokernel_projection(f: &GroupMap) -> (FgAbGroup, GroupMap) {
    let b = f.codomain();
    let n = b.num_generators();
    let combined = f.matrix().hcat(&b.relations());
    let snf = intlin::snf_full(&combined);
    let mut free_rows: Vec<usize> = (snf.rank..n).collect();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..snf.rank {
        let d = snf.diag(i);
        if !d.is_one() {
            torsion_rows.push(i);
            torsion.push(intlin::to_order(d));
        }
    }
    let coker = FgAbGroup::from_chain(free_rows.len(), torsion);
    free_rows.extend(torsion_rows);
    let proj = snf.u.select_rows(&free_rows);
    let proj = reduce_rows(proj, &coker.generator_orders());
    let map = GroupMap {
        domain: b.clone(),
        codomain: coker.clone(),
        matrix: proj,
    };
    (coker, map)
}

/// Kernel of `f` together with its inclusion into the domain.
pub fn kernel_inclusion(f: &GroupMap) -> (FgAbGroup, GroupMap) {
    subquotient(f, None)
}

/// `ker(out) / im(incoming)` for composable `incoming: W -> E`, `out: E -> Y`
/// with `out ∘ incoming = 0`, together with a map from the result back to
/// `E` (a section of generators, well defined only modulo `im(incoming)`
/// when `incoming` is present).
pub fn subquotient(out: &GroupMap, incoming: Option<&GroupMap>) -> (FgAbGroup, GroupMap) {
    let e = out.domain();
    let m = e.num_generators();
    // lift of ker(out): x in Z^m with out*x in the codomain relation lattice
    let combined = out.matrix().hcat(&out.codomain().relations());
    let (_, kbasis) = intlin::kernel(&combined);
    let proj = kbasis.select_rows(&(0..m).collect::<Vec<_>>());
    let lbasis = intlin::lattice_basis(&proj);
    let k = lbasis.cols();

    let mut sub = e.relations();
    if let Some(inc) = incoming {
        assert_eq!(
            inc.codomain(),
            e,
            "incoming map does not land in the middle group"
        );
        sub = inc.matrix().hcat(&sub);
    }
    let coords: Vec<Vec<BigInt>> = (0..sub.cols())
        .map(|j| {
            intlin::solve_in_basis(&lbasis, &sub.column(j))
                .expect("subgroup must lie in the kernel (d∘d = 0)")
        })
        .collect();
    let c = IntMatrix::from_columns(k, &coords);
    let snf = intlin::snf_full(&c);
    let mut gens_rows: Vec<usize> = (snf.rank..k).collect();
    let mut torsion = Vec::new();
    for i in 0..snf.rank {
        let d = snf.diag(i);
        if !d.is_one() {
            gens_rows.push(i);
            torsion.push(intlin::to_order(d));
        }
    }
    let group = FgAbGroup::from_chain(k - snf.rank, torsion);
    let cols: Vec<Vec<BigInt>> = gens_rows.iter().map(|&i| snf.u_inv.column(i)).collect();
    let in_basis = IntMatrix::from_columns(k, &cols);
    let incl = reduce_rows(lbasis.mul(&in_basis), &e.generator_orders());
    let map = GroupMap {
        domain: group.clone(),
        codomain: e.clone(),
        matrix: incl,
    };
    (group, map)
}

/// Enumerates every homomorphism `domain -> codomain` when the codomain is
/// finite and the count does not exceed `limit`.
pub fn all_homs(domain: &FgAbGroup, codomain: &FgAbGroup, limit: usize) -> Option<Vec<GroupMap>> {
    if !codomain.is_finite() {
        return None;
    }
    let elems = codomain.elements();
    let corders = codomain.generator_orders();
    let annihilated = |d: u64, y: &Vec<u64>| -> bool {
        d == 0
            || y.iter()
                .zip(&corders)
                .all(|(&yi, &e)| (yi as u128 * d as u128).is_multiple_of(e as u128))
    };
    let choices: Vec<Vec<&Vec<u64>>> = domain
        .generator_orders()
        .iter()
        .map(|&d| elems.iter().filter(|y| annihilated(d, y)).collect())
        .collect();
    let mut total: usize = 1;
    for c in &choices {
        total = total.checked_mul(c.len())?;
        if total > limit {
            return None;
        }
    }
    let n = codomain.num_generators();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut mat = IntMatrix::zeros(n, choices.len());
        for (j, &ix) in idx.iter().enumerate() {
            for (i, &v) in choices[j][ix].iter().enumerate() {
                mat.set(i, j, BigInt::from(v));
            }
        }
        out.push(GroupMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: mat,
        });
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Some(out);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Cap on the order of the middle group for [`extension_candidates`].
pub const EXTENSION_ORDER_CAP: u64 = 1_000_000;

/// Isomorphism classes `X` admitting `0 -> a -> X -> b -> 0`, for finite
/// `a` and `b`. Sorted ascending.
pub fn extension_candidates(a: &FgAbGroup, b: &FgAbGroup) -> Result<Vec<FgAbGroup>> {
    let (Some(oa), Some(ob)) = (a.order_u64(), b.order_u64()) else {
        return Err(Error::Unsupported(format!(
            "extension candidates of infinite groups ({a}, {b})"
        )));
    };
    let order = oa
        .checked_mul(ob)
        .filter(|&o| o <= EXTENSION_ORDER_CAP)
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "extension order {oa}*{ob} exceeds cap {EXTENSION_ORDER_CAP}"
            ))
        })?;
    // per prime: partitions lambda with LR coefficient c^lambda_{mu,nu} > 0
    let mut per_prime: Vec<(u64, Vec<Vec<u32>>)> = Vec::new();
    for (p, e) in factorize(order) {
        let mu = p_type(a, p);
        let nu = p_type(b, p);
        let lambdas: Vec<Vec<u32>> = partitions(e)
            .into_iter()
            .filter(|lam| lr_positive(lam, &mu, &nu))
            .collect();
        per_prime.push((p, lambdas));
    }
    let mut out = BTreeSet::new();
    let mut acc = vec![Vec::<u64>::new()];
    for (p, lambdas) in &per_prime {
        let mut next = Vec::new();
        for prefix in &acc {
            for lam in lambdas {
                let mut v = prefix.clone();
                v.extend(lam.iter().map(|&k| p.pow(k)));
                next.push(v);
            }
        }
        acc = next;
    }
    for coeffs in acc {
        out.insert(FgAbGroup::canonicalize(0, &coeffs)?);
    }
    Ok(out.into_iter().collect())
}

/// Isomorphism classes of `X` in `0 -> sub -> X -> quot -> 0`, allowing
/// free parts where the answer is still a finite list: the free part of
/// `quot` always splits off. Fails when `sub` is infinite and `quot` has
/// torsion (the torsion of `X` is then not determined by a finite search).
pub fn extension_classes(sub: &FgAbGroup, quot: &FgAbGroup) -> Result<Vec<FgAbGroup>> {
    let qt = quot.torsion_subgroup();
    let split_free = FgAbGroup::free(quot.free_rank());
    if qt.is_trivial() {
        return Ok(vec![sub.direct_sum(&split_free)]);
    }
    if sub.is_trivial() {
        return Ok(vec![quot.clone()]);
    }
    if !sub.is_finite() {
        return Err(Error::Unsupported(format!(
            "extension of {quot} by infinite {sub}"
        )));
    }
    Ok(extension_candidates(sub, &qt)?
        .into_iter()
        .map(|x| x.direct_sum(&split_free))
        .collect())
}

/// Every abelian group of order `n` (sorted).
pub fn groups_of_order(n: u64) -> Vec<FgAbGroup> {
    let mut acc = vec![Vec::<u64>::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for prefix in &acc {
            for lam in partitions(e) {
                let mut v = prefix.clone();
                v.extend(lam.iter().map(|&k| p.pow(k)));
                next.push(v);
            }
        }
        acc = next;
    }
    let mut out: Vec<FgAbGroup> = acc
        .into_iter()
        .map(|c| FgAbGroup::canonicalize(0, &c).expect("positive"))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Exponents of the p-primary cyclic summands, as a partition (descending).
fn p_type(g: &FgAbGroup, p: u64) -> Vec<u32> {
    let mut parts: Vec<u32> = g
        .torsion()
        .iter()
        .map(|&d| {
            let mut d = d;
            let mut k = 0;
            while d % p == 0 {
                d /= p;
                k += 1;
            }
            k
        })
        .filter(|&k| k > 0)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Partitions of `n` in descending part order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Whether the Littlewood–Richardson coefficient `c^lambda_{mu,nu}` is
/// positive, by searching for one LR tableau of shape `lambda/mu` and
/// content `nu`.
fn lr_positive(lambda: &[u32], mu: &[u32], nu: &[u32]) -> bool {
    let sum = |v: &[u32]| v.iter().sum::<u32>();
    if sum(lambda) != sum(mu) + sum(nu) || mu.len() > lambda.len() {
        return false;
    }
    let mu_at = |i: usize| mu.get(i).copied().unwrap_or(0) as usize;
    if (0..lambda.len()).any(|i| mu_at(i) > lambda[i] as usize) {
        return false;
    }
    if nu.is_empty() {
        return true;
    }
    // reading order: rows top to bottom, each right to left
    let mut cells = Vec::new();
    for (i, &l) in lambda.iter().enumerate() {
        for j in (mu_at(i)..l as usize).rev() {
            cells.push((i, j));
        }
    }
    let width = lambda[0] as usize;
    let mut grid = vec![vec![0u32; width]; lambda.len()];
    let mut counts = vec![0u32; nu.len() + 1];

    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
        lambda: &[u32],
        mu_at: &dyn Fn(usize) -> usize,
        nu: &[u32],
    ) -> bool {
        if k == cells.len() {
            return true;
        }
        let (i, j) = cells[k];
        let mut hi = nu.len() as u32;
        if j + 1 < lambda[i] as usize {
            hi = hi.min(grid[i][j + 1]);
        }
        let lo = if i > 0 && j >= mu_at(i - 1) {
            grid[i - 1][j] + 1
        } else {
            1
        };
        for v in lo..=hi {
            let vi = v as usize;
            if counts[vi] >= nu[vi - 1] {
                continue;
            }
            if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
                continue;
            }
            counts[vi] += 1;
            grid[i][j] = v;
            if fill(k + 1, cells, grid, counts, lambda, mu_at, nu) {
                return true;
            }
            counts[vi] -= 1;
            grid[i][j] = 0;
        }
        false
    }
    fill(0, &cells, &mut grid, &mut counts, lambda, &mu_at, nu)
}

/// Number of elements of each order, the complete isomorphism invariant
/// of a finite abelian group. Used by tests as an independent oracle.
pub fn order_profile(g: &FgAbGroup) -> std::collections::BTreeMap<u64, u64> {
    let orders = g.generator_orders();
    let mut profile = std::collections::BTreeMap::new();
    for el in g.elements() {
        let o = el
            .iter()
            .zip(&orders)
            .map(|(&x, &d)| d / x.gcd(&d))
            .fold(1u64, |acc, k| acc.lcm(&k));
        *profile.entry(o).or_insert(0) += 1;
    }
    profile
}
