//! Brute-force oracles shared by the property suites and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;

use emtower::fgab::{groups_of_order, order_profile};
use emtower::intlin::{cokernel, smith_normal_form};
use emtower::{FgAbGroup, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn g(s: &str) -> FgAbGroup {
    s.parse().unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> IntMatrix {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-20..=20)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

/// Every check the SNF suite makes on one matrix; `Ok(true)` when the
/// cokernel was small enough to go through the residue oracle.
pub fn check_snf(m: &IntMatrix) -> Result<bool, String> {
    let snf = smith_normal_form(m);
    if snf.u.mul(m).mul(&snf.v) != snf.d {
        return Err(format!("U·M·V != D for {m}"));
    }
    for (name, x) in [("U", &snf.u), ("V", &snf.v)] {
        if x.determinant().abs() != BigInt::one() {
            return Err(format!("{name} not unimodular for {m}"));
        }
    }
    let d = &snf.d;
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d.get(i, j).is_zero() {
                return Err(format!("D not diagonal for {m}"));
            }
        }
    }
    let diag = snf.diagonal();
    if diag.iter().any(|x| x.is_negative()) {
        return Err(format!("negative invariant factor for {m}"));
    }
    for w in diag.windows(2) {
        let divides = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        };
        if !divides {
            return Err(format!("divisibility chain broken for {m}: {diag:?}"));
        }
    }
    let lib = cokernel(m);
    let oracle = Lattice::new(m);
    if lib.free_rank() != m.rows() - oracle.rank() {
        return Err(format!(
            "cokernel free rank of {m}: {lib} vs rank {}",
            oracle.rank()
        ));
    }
    match oracle.finite_profile(1000) {
        Some(profile) => {
            if profile != order_profile(&lib) {
                return Err(format!(
                    "cokernel of {m}: {lib} disagrees with residue enumeration"
                ));
            }
            Ok(true)
        }
        None => Ok(false),
    }
}

/// Column lattice of an integer matrix in echelon form, built by plain
/// Euclidean elimination (no SNF involved).
pub struct Lattice {
    dim: usize,
    pivots: Vec<Option<Vec<i128>>>,
}

impl Lattice {
    pub fn new(m: &IntMatrix) -> Self {
        let dim = m.rows();
        let mut pool: Vec<Vec<i128>> = (0..m.cols())
            .map(|j| m.column(j).iter().map(|x| x.to_i128().unwrap()).collect())
            .collect();
        let mut pivots = Vec::with_capacity(dim);
        for i in 0..dim {
            loop {
                pool.retain(|v| v.iter().any(|&x| x != 0));
                let Some(k) = (0..pool.len())
                    .filter(|&k| pool[k][i] != 0)
                    .min_by_key(|&k| pool[k][i].abs())
                else {
                    pivots.push(None);
                    break;
                };
                let p = pool[k].clone();
                let mut others = false;
                for (l, v) in pool.iter_mut().enumerate() {
                    if l != k && v[i] != 0 {
                        let q = Integer::div_floor(&v[i], &p[i]);
                        for (a, b) in v.iter_mut().zip(&p) {
                            *a -= q * b;
                        }
                        others |= v[i] != 0;
                    }
                }
                if !others {
                    let mut p = pool.swap_remove(k);
                    if p[i] < 0 {
                        p.iter_mut().for_each(|x| *x = -*x);
                    }
                    pivots.push(Some(p));
                    break;
                }
            }
        }
        Lattice { dim, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().flatten().count()
    }

    fn reduce(&self, mut x: Vec<i128>) -> Vec<i128> {
        for (i, p) in self.pivots.iter().enumerate() {
            if let Some(p) = p {
                let q = Integer::div_floor(&x[i], &p[i]);
                for (a, b) in x.iter_mut().zip(p) {
                    *a -= q * b;
                }
            }
        }
        x
    }

    /// Element-order counts of `Z^dim / L`, enumerating the residues
    /// `0 <= x_i < h_i`; `None` if infinite or larger than `limit`.
    pub fn finite_profile(&self, limit: u64) -> Option<BTreeMap<u64, u64>> {
        let mut heights = Vec::with_capacity(self.dim);
        let mut order: u64 = 1;
        for p in &self.pivots {
            let h = p.as_ref()?[heights.len()] as u64;
            order = order.checked_mul(h)?;
            if order > limit {
                return None;
            }
            heights.push(h);
        }
        let mut profile = BTreeMap::new();
        let mut x = vec![0i128; self.dim];
        loop {
            let mut k = 1u64;
            while self
                .reduce(x.iter().map(|&c| c * k as i128).collect())
                .iter()
                .any(|&c| c != 0)
            {
                k += 1;
            }
            *profile.entry(k).or_insert(0) += 1;
            // odometer over the residue box
            let mut i = 0;
            loop {
                if i == self.dim {
                    return Some(profile);
                }
                x[i] += 1;
                if (x[i] as u64) < heights[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }
}

/// All groups with torsion order <= `max_order` and free rank <= `max_rank`.
pub fn universe(max_order: u64, max_rank: usize) -> Vec<FgAbGroup> {
    let mut out = Vec::new();
    for rank in 0..=max_rank {
        for order in 1..=max_order {
            for t in groups_of_order(order) {
                out.push(FgAbGroup::free(rank).direct_sum(&t));
            }
        }
    }
    out
}

/// Element-order counts of `Hom(a, b)` for finite `a`, `b`, enumerating
/// every assignment of generator images that respects the generator orders.
pub fn hom_profile_by_enumeration(a: &FgAbGroup, b: &FgAbGroup) -> BTreeMap<u64, u64> {
    let b_orders = b.generator_orders();
    let elements: Vec<(Vec<u64>, u64)> = b
        .elements()
        .into_iter()
        .map(|e| {
            let o = e
                .iter()
                .zip(&b_orders)
                .map(|(&x, &d)| d / x.gcd(&d))
                .fold(1, |acc: u64, k| acc.lcm(&k));
            (e, o)
        })
        .collect();
    // a generator of order d may go to any element whose order divides d
    let choices: Vec<Vec<u64>> = a
        .generator_orders()
        .iter()
        .map(|&d| {
            elements
                .iter()
                .filter(|(_, o)| d % o == 0)
                .map(|(_, o)| *o)
                .collect()
        })
        .collect();
    let mut profile = BTreeMap::new();
    let mut stack = vec![(0usize, 1u64)];
    while let Some((i, acc)) = stack.pop() {
        if i == choices.len() {
            *profile.entry(acc).or_insert(0) += 1;
            continue;
        }
        for &o in &choices[i] {
            stack.push((i + 1, acc.lcm(&o)));
        }
    }
    profile
}
