//! Exhaustive minimum-weight search over F_q-spans in F_q^{2n}.
//!
//! Two independent strategies:
//!
//! - [`Strategy::Full`] walks the span in odometer order over an F_p-basis,
//!   updating the running word by a single row addition per step (a digit
//!   wrapping from p−1 to 0 adds the row a p-th time, which cancels it). On
//!   GF(2) words are packed into a pair of `u64` masks.
//! - [`Strategy::Partitioned`] fixes the coefficient of the last generator,
//!   giving q cosets that are searched in parallel, each word rebuilt from its
//!   decoded coefficient vector.
//!
//! Both minimise the symplectic weight over `span(fixed) + (span(free) \ {0})`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::Matrix;

pub const DEFAULT_BUDGET: u128 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Full,
    /// `threads == 0` uses the global rayon pool.
    Partitioned { threads: usize },
}

/// Result of a minimum-weight search. When the searched set is empty the
/// weight is the sentinel `length + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinWeight {
    pub weight: usize,
    pub length: usize,
    pub enumerated: u128,
}

impl MinWeight {
    pub fn value(&self) -> Option<usize> {
        (self.weight <= self.length).then_some(self.weight)
    }

    pub fn is_defined(&self) -> bool {
        self.weight <= self.length
    }
}

impl std::fmt::Display for MinWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            Some(d) => write!(f, "{d}"),
            None => write!(f, "undefined"),
        }
    }
}

fn pow_sat(q: usize, k: usize) -> u128 {
    (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Number of words in `span(fixed) + (span(free) \ {0})`.
pub fn search_size(q: usize, fixed: usize, free: usize) -> u128 {
    pow_sat(q, fixed).saturating_mul(pow_sat(q, free).saturating_sub(1))
}

/// Minimum symplectic weight over `span(fixed) ⊕ (span(free) \ {0})`, where
/// the rows of `fixed` and `free` together are independent.
pub fn search(fixed: &Matrix, free: &Matrix, strategy: Strategy, budget: u128) -> Result<MinWeight> {
    let q = fixed.field().order();
    let length = fixed.cols() / 2;
    let required = search_size(q, fixed.rows(), free.rows());
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let empty = MinWeight { weight: length + 1, length, enumerated: 0 };
    if free.rows() == 0 {
        return Ok(empty);
    }
    let (weight, enumerated) = match strategy {
        Strategy::Full => odometer(fixed, free),
        Strategy::Partitioned { threads } => {
            if threads == 0 {
                partitioned(fixed, free)
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::Range(format!("thread pool: {e}")))?;
                pool.install(|| partitioned(fixed, free))
            }
        }
    };
    Ok(MinWeight { weight, length, enumerated })
}

/// Rows `r, x·r, …, x^{e−1}·r` for each row, spanning the F_q-span over F_p.
fn prime_basis(m: &Matrix) -> Vec<Vec<Elem>> {
    let f = m.field();
    let p = f.characteristic() as usize;
    let e = f.degree() as usize;
    let mut out = Vec::with_capacity(m.rows() * e);
    for r in m.iter_rows() {
        let mut scalar = 1usize;
        for _ in 0..e {
            out.push(r.iter().map(|&x| f.mul(scalar as Elem, x)).collect());
            scalar *= p;
        }
    }
    out
}

fn odometer(fixed: &Matrix, free: &Matrix) -> (usize, u128) {
    let f = fixed.field();
    let n = fixed.cols() / 2;
    // low digits: fixed part; high digits: free part
    let mut rows = prime_basis(fixed);
    let first_free = rows.len();
    rows.extend(prime_basis(free));
    if f.order() == 2 && n <= 64 {
        return odometer_binary(&rows, first_free, n);
    }
    let p = f.characteristic() as usize;
    let supports: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| (0..n).filter(|&j| r[j] != 0 || r[n + j] != 0).collect())
        .collect();
    let mut digits = vec![0usize; rows.len()];
    digits[first_free] = 1;
    let mut word = rows[first_free].clone();
    let mut wt = supports[first_free].len();
    let mut best = wt;
    let mut count: u128 = 1;
    'outer: loop {
        if best == 1 {
            break;
        }
        let mut i = 0;
        loop {
            let row = &rows[i];
            for &j in &supports[i] {
                let before = word[j] != 0 || word[n + j] != 0;
                word[j] = f.add(word[j], row[j]);
                word[n + j] = f.add(word[n + j], row[n + j]);
                let after = word[j] != 0 || word[n + j] != 0;
                match (before, after) {
                    (true, false) => wt -= 1,
                    (false, true) => wt += 1,
                    _ => {}
                }
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            if i == rows.len() {
                break 'outer;
            }
        }
        count += 1;
        best = best.min(wt);
    }
    (best, count)
}

fn odometer_binary(rows: &[Vec<Elem>], first_free: usize, n: usize) -> (usize, u128) {
    let masks: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| {
            let mut a = 0u64;
            let mut b = 0u64;
            for j in 0..n {
                a |= (r[j] as u64 & 1) << j;
                b |= (r[n + j] as u64 & 1) << j;
            }
            (a, b)
        })
        .collect();
    let (mut a, mut b) = masks[first_free];
    let mut best = (a | b).count_ones() as usize;
    let mut count: u128 = 1;
    let total = rows.len();
    let mut digits = vec![false; total];
    digits[first_free] = true;
    'outer: loop {
        if best == 1 {
            break;
        }
        let mut i = 0;
        loop {
            a ^= masks[i].0;
            b ^= masks[i].1;
            digits[i] = !digits[i];
            if digits[i] {
                break;
            }
            i += 1;
            if i == total {
                break 'outer;
            }
        }
        count += 1;
        best = best.min((a | b).count_ones() as usize);
    }
    (best, count)
}

fn partitioned(fixed: &Matrix, free: &Matrix) -> (usize, u128) {
    let f = fixed.field().clone();
    let q = f.order();
    let n = fixed.cols() / 2;
    let gens: Vec<&[Elem]> = fixed.iter_rows().chain(free.iter_rows()).collect();
    let nfixed = fixed.rows();
    let top = gens.len() - 1;
    let rest = &gens[..top];
    let per_part = q.pow(rest.len() as u32);
    (0..q)
        .into_par_iter()
        .map(|t| {
            let mut best = n + 1;
            let mut count: u128 = 0;
            let mut coeffs = vec![0usize; rest.len()];
            let mut word = vec![0 as Elem; 2 * n];
            for idx in 0..per_part {
                let mut x = idx;
                for c in coeffs.iter_mut() {
                    *c = x % q;
                    x /= q;
                }
                if t == 0 && coeffs[nfixed..].iter().all(|&c| c == 0) {
                    continue;
                }
                for (k, w) in word.iter_mut().enumerate() {
                    let mut acc = f.mul(t as Elem, gens[top][k]);
                    for (g, &c) in rest.iter().zip(&coeffs) {
                        if c != 0 {
                            acc = f.add(acc, f.mul(c as Elem, g[k]));
                        }
                    }
                    *w = acc;
                }
                count += 1;
                best = best.min(crate::symplectic::weight(&word));
            }
            (best, count)
        })
        .reduce(|| (n + 1, 0), |x, y| (x.0.min(y.0), x.1 + y.1))
}
