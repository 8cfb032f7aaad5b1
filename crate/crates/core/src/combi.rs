//! Composition and bounded-partition streams, multinomials, and the partition
//! expansion of Lucas polynomial coefficients.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::PolyError;
use crate::poly::{factorial, lucas_polynomial};

/// Ordered tuples of `parts` positive integers summing to `total`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

pub fn compositions(total: usize, parts: usize) -> Compositions {
    let current = match (total, parts) {
        (0, 0) => Some(Vec::new()),
        (_, 0) => None,
        (n, k) if n < k => None,
        (n, k) => {
            let mut first = vec![1; k];
            first[k - 1] = n - k + 1;
            Some(first)
        }
    };
    Compositions { current }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        // Rightmost position (before the last) whose increment leaves slack in the tail.
        let mut tail = *out.last().unwrap_or(&0);
        let mut next = None;
        for i in (0..k.saturating_sub(1)).rev() {
            if tail > k - 1 - i {
                let mut c = out.clone();
                c[i] += 1;
                for x in &mut c[i + 1..k - 1] {
                    *x = 1;
                }
                c[k - 1] = tail - 1 - (k - 2 - i);
                next = Some(c);
                break;
            }
            tail += out[i];
        }
        self.current = next;
        Some(out)
    }
}

/// Partitions of `total` into exactly `parts` parts, each at most `max_part`, yielded as
/// multiplicity vectors `(m_1, ..., m_max_part)`. Order is reverse-lexicographic on the
/// non-increasing part sequence.
#[derive(Clone, Debug)]
pub struct BoundedPartitions {
    max_part: usize,
    current: Option<Vec<usize>>,
}

/// Greedy non-increasing fill of `count` parts summing to `remaining`, each at most `cap`.
fn fill(out: &mut Vec<usize>, count: usize, mut remaining: usize, cap: usize) -> bool {
    if remaining < count || remaining > count * cap {
        return false;
    }
    let mut cap = cap;
    for left in (1..=count).rev() {
        let v = cap.min(remaining - (left - 1));
        out.push(v);
        remaining -= v;
        cap = v;
    }
    true
}

pub fn bounded_partitions(max_part: usize, parts: usize, total: usize) -> BoundedPartitions {
    let mut first = Vec::with_capacity(parts);
    let current = if parts == 0 {
        (total == 0).then_some(first)
    } else if fill(&mut first, parts, total, max_part) {
        Some(first)
    } else {
        None
    };
    BoundedPartitions { max_part, current }
}

impl Iterator for BoundedPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let parts = self.current.take()?;
        let mut mult = vec![0; self.max_part];
        for &v in &parts {
            mult[v - 1] += 1;
        }
        let k = parts.len();
        let mut suffix: usize = parts.last().copied().unwrap_or(0);
        for i in (0..k.saturating_sub(1)).rev() {
            let lowered = parts[i] - 1;
            if lowered >= 1 {
                let mut next = parts[..i].to_vec();
                next.push(lowered);
                if fill(&mut next, k - 1 - i, suffix + 1, lowered) {
                    self.current = Some(next);
                    break;
                }
            }
            suffix += parts[i];
        }
        Some(mult)
    }
}

/// `k! / prod m_i!`.
pub fn multinomial(k: usize, m: &[usize]) -> Result<BigUint, PolyError> {
    let sum: usize = m.iter().sum();
    if sum != k {
        return Err(PolyError::MultiplicitySum { sum, expected: k });
    }
    let denom: BigUint = m.iter().map(|&mi| factorial(mi as u64)).product();
    Ok(factorial(k as u64) / denom)
}

/// `[x^k] L_p(x)` through the bounded-partition sum: `sum_m (p/k) * multinomial(k, m)` over
/// `m` in `P[p-2k+1, k, p-k]`. The division by `k` is applied to the aggregate and must be exact.
/// `k = 0` (where the sum is undefined) and `2k > p` read the coefficient off `L_p` directly.
pub fn lucas_triangle_coefficient(p: usize, k: usize) -> BigUint {
    if k == 0 || 2 * k > p {
        return lucas_polynomial(p).coeff(k);
    }
    let total: BigUint = bounded_partitions(p - 2 * k + 1, k, p - k)
        .map(|m| multinomial(k, &m).expect("partition multiplicities sum to k") * p)
        .sum();
    let (q, r) = total.div_rem(&BigUint::from(k));
    assert!(r.is_zero(), "partition sum for L_{p}, k = {k} is not divisible by k");
    q
}
