//! Structured graph families and the exact formulas for their class polynomials,
//! counts and size spectra.
//!
//! Fibonacci indexing is `F_0 = F_1 = 1` throughout, and `M(I_0;x) = M(I_1;x) = 1`,
//! `M(G_1(0);x) = M(G_1(1);x) = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combi::{bounded_partitions, compositions, multinomial};
use crate::error::FamilyError;
use crate::graph::UndirectedGraph;
use crate::poly::{binomial, fibonacci_number, fibonacci_polynomial, lucas_polynomial, Polynomial, SizeSpectrum};

/// Largest graph `build` will materialise.
pub const MAX_BUILD_NODES: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Bistar(usize, usize),
    /// Leg lengths, sorted descending.
    Spider(Vec<usize>),
    Caterpillar(usize),
    BinaryTree(usize),
    AdditiveTree(usize),
    K2p(usize),
    /// Path `0..q.len()` with `q[i]` leaves hung on node `i`.
    LeafyPath(Vec<usize>),
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::Invalid(msg.into())
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn to_unsigned(v: BigInt, what: &str) -> Result<BigUint, FamilyError> {
    v.to_biguint().ok_or_else(|| invalid(format!("{what} evaluated negative")))
}

impl FamilySpec {
    /// Spider with legs sorted into partition order.
    pub fn spider(mut legs: Vec<usize>) -> Result<Self, FamilyError> {
        legs.sort_unstable_by(|a, b| b.cmp(a));
        let spec = FamilySpec::Spider(legs);
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            FamilySpec::Path(0) => Err(invalid("path needs p >= 1")),
            FamilySpec::Cycle(p) if *p < 3 => Err(invalid("cycle needs p >= 3")),
            FamilySpec::Bistar(p, q) if *p == 0 || *q == 0 => Err(invalid("bistar needs p, q >= 1")),
            FamilySpec::Spider(legs) => {
                if legs.is_empty() {
                    Err(invalid("spider needs at least one leg"))
                } else if legs.contains(&0) {
                    Err(invalid("spider legs must be >= 1"))
                } else if legs.windows(2).any(|w| w[0] < w[1]) {
                    Err(invalid("spider legs must be sorted descending"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Caterpillar(0) => Err(invalid("caterpillar needs p >= 1")),
            FamilySpec::BinaryTree(0) | FamilySpec::AdditiveTree(0) => Err(invalid("binary tree needs k >= 1")),
            FamilySpec::K2p(0) => Err(invalid("k2p needs p >= 1")),
            FamilySpec::LeafyPath(q) if q.is_empty() => Err(invalid("leafy path needs at least one spine node")),
            _ => Ok(()),
        }
    }

    /// Vertex count, or `None` if it does not fit in `usize`.
    pub fn node_count(&self) -> Option<usize> {
        match self {
            FamilySpec::Path(p) | FamilySpec::Cycle(p) => Some(*p),
            FamilySpec::Star(p) => p.checked_add(1),
            FamilySpec::Bistar(p, q) => p.checked_add(*q)?.checked_add(2),
            FamilySpec::Spider(legs) => legs.iter().sum::<usize>().checked_add(1),
            FamilySpec::Caterpillar(p) => Some(*p),
            FamilySpec::BinaryTree(k) => 1usize.checked_shl(*k as u32).filter(|_| *k < 63).map(|n| n - 1),
            FamilySpec::AdditiveTree(k) => 1usize.checked_shl(*k as u32).filter(|_| *k < 63),
            FamilySpec::K2p(p) => p.checked_add(2),
            FamilySpec::LeafyPath(q) => q.iter().sum::<usize>().checked_add(q.len()),
        }
    }

    pub fn build(&self) -> Result<UndirectedGraph, FamilyError> {
        self.validate()?;
        let n = self
            .node_count()
            .filter(|&n| n <= MAX_BUILD_NODES)
            .ok_or_else(|| FamilyError::OutOfRange(format!("{self} has more than {MAX_BUILD_NODES} nodes")))?;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match self {
            FamilySpec::Path(p) => edges.extend((1..*p).map(|i| (i - 1, i))),
            FamilySpec::Cycle(p) => {
                edges.extend((1..*p).map(|i| (i - 1, i)));
                edges.push((0, p - 1));
            }
            FamilySpec::Star(p) => edges.extend((1..=*p).map(|i| (0, i))),
            FamilySpec::Bistar(p, q) => {
                edges.push((0, 1));
                edges.extend((0..*p).map(|i| (0, 2 + i)));
                edges.extend((0..*q).map(|i| (1, 2 + p + i)));
            }
            FamilySpec::Spider(legs) => {
                let mut next = 1;
                for &len in legs {
                    let mut prev = 0;
                    for _ in 0..len {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
            }
            FamilySpec::Caterpillar(p) => return caterpillar_leaves(*p).build(),
            FamilySpec::BinaryTree(_) => edges.extend((1..n).map(|i| ((i - 1) / 2, i))),
            FamilySpec::AdditiveTree(_) => {
                edges.extend((1..n - 1).map(|i| ((i - 1) / 2, i)));
                edges.push((0, n - 1));
            }
            FamilySpec::K2p(p) => {
                for s in 2..p + 2 {
                    edges.push((0, s));
                    edges.push((1, s));
                }
            }
            FamilySpec::LeafyPath(q) => {
                let spine = q.len();
                edges.extend((1..spine).map(|i| (i - 1, i)));
                let mut next = spine;
                for (i, &leaves) in q.iter().enumerate() {
                    for _ in 0..leaves {
                        edges.push((i, next));
                        next += 1;
                    }
                }
            }
        }
        Ok(UndirectedGraph::new(n, edges).expect("family constructions are valid"))
    }

    /// Closed-form `M(G;x)`, where one exists.
    pub fn formula_polynomial(&self) -> Result<Option<Polynomial>, FamilyError> {
        self.validate()?;
        Ok(match self {
            FamilySpec::Path(p) => Some(path_polynomial(*p)?),
            FamilySpec::Cycle(p) if *p >= 4 => Some(cycle_polynomial(*p)?),
            FamilySpec::Star(p) => Some(star_polynomial(*p)),
            FamilySpec::Bistar(p, q) => Some(bistar_polynomial(*p, *q)?),
            FamilySpec::Spider(legs) => Some(spider_polynomial(legs)?),
            FamilySpec::Caterpillar(p) => Some(caterpillar_polynomial(*p)?),
            _ => None,
        })
    }

    /// Closed-form or recursive `M(G)`.
    pub fn formula_count(&self) -> Result<Option<BigUint>, FamilyError> {
        if let Some(poly) = self.formula_polynomial()? {
            return Ok(Some(poly.eval_at_one()));
        }
        Ok(match self {
            FamilySpec::BinaryTree(k) => Some(binary_tree_counts(*k)?.t),
            FamilySpec::AdditiveTree(k) => Some(binary_tree_counts(*k)?.a),
            FamilySpec::K2p(p) => Some(k2p_count(*p)?),
            _ => None,
        })
    }

    pub fn formula_spectrum(&self) -> Result<Option<SizeSpectrum>, FamilyError> {
        self.validate()?;
        Ok(match self {
            FamilySpec::Path(p) => Some(path_size_spectrum(*p)?),
            FamilySpec::Cycle(p) if *p >= 4 => Some(cycle_size_spectrum(*p)?),
            FamilySpec::Star(p) => Some(star_size_spectrum(*p)),
            FamilySpec::Bistar(p, q) => Some(bistar_size_spectrum(*p, *q)?),
            FamilySpec::K2p(p) => Some(k2p_size_spectrum(*p)?),
            _ => None,
        })
    }

    pub fn formula_immorality_number(&self) -> Result<Option<usize>, FamilyError> {
        if let FamilySpec::K2p(p) = self {
            return Ok(Some(k2p_immorality_number(*p)?));
        }
        Ok(self.formula_polynomial()?.map(|poly| poly.degree().unwrap_or(0)))
    }
}

fn parse_list(name: &str, body: &str) -> Result<Vec<usize>, FamilyError> {
    body.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| invalid(format!("{name}: bad parameter {t:?}"))))
        .collect()
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let (name, body) = s.trim().split_once(':').ok_or_else(|| FamilyError::Unknown(s.to_string()))?;
        let args = parse_list(name, body)?;
        let one = || match args.as_slice() {
            [v] => Ok(*v),
            _ => Err(invalid(format!("{name} takes exactly one parameter"))),
        };
        let spec = match name.trim() {
            "path" => FamilySpec::Path(one()?),
            "cycle" => FamilySpec::Cycle(one()?),
            "star" => FamilySpec::Star(one()?),
            "bistar" => match args.as_slice() {
                [p, q] => FamilySpec::Bistar(*p, *q),
                _ => return Err(invalid("bistar takes two parameters")),
            },
            "spider" => return FamilySpec::spider(args),
            "caterpillar" => FamilySpec::Caterpillar(one()?),
            "btree" => FamilySpec::BinaryTree(one()?),
            "atree" => FamilySpec::AdditiveTree(one()?),
            "k2p" => FamilySpec::K2p(one()?),
            "leafy" => FamilySpec::LeafyPath(args),
            _ => return Err(FamilyError::Unknown(s.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Path(p) => write!(f, "path:{p}"),
            FamilySpec::Cycle(p) => write!(f, "cycle:{p}"),
            FamilySpec::Star(p) => write!(f, "star:{p}"),
            FamilySpec::Bistar(p, q) => write!(f, "bistar:{p},{q}"),
            FamilySpec::Spider(legs) => write!(f, "spider:{}", join(legs)),
            FamilySpec::Caterpillar(p) => write!(f, "caterpillar:{p}"),
            FamilySpec::BinaryTree(k) => write!(f, "btree:{k}"),
            FamilySpec::AdditiveTree(k) => write!(f, "atree:{k}"),
            FamilySpec::K2p(p) => write!(f, "k2p:{p}"),
            FamilySpec::LeafyPath(q) => write!(f, "leafy:{}", join(q)),
        }
    }
}

/// The leafy path realising `W_p`: one leaf per spine node, the last spine node bare for odd `p`.
pub fn caterpillar_leaves(p: usize) -> FamilySpec {
    let spine = p.div_ceil(2);
    let mut q = vec![1; spine];
    if p % 2 == 1 {
        q[spine - 1] = 0;
    }
    FamilySpec::LeafyPath(q)
}

/// `M(I_p;x)` with `M(I_0;x) = 1`.
fn path_poly_or_one(p: usize) -> Polynomial {
    if p == 0 {
        Polynomial::one()
    } else {
        fibonacci_polynomial(p - 1)
    }
}

pub fn path_polynomial(p: usize) -> Result<Polynomial, FamilyError> {
    if p == 0 {
        return Err(FamilyError::OutOfRange("path needs p >= 1".into()));
    }
    Ok(fibonacci_polynomial(p - 1))
}

/// `L_p(x) - 1`; the 3-cycle is a triangle with no immorality sites, so `p >= 4`.
pub fn cycle_polynomial(p: usize) -> Result<Polynomial, FamilyError> {
    if p < 4 {
        return Err(FamilyError::OutOfRange("cycle formulas need p >= 4".into()));
    }
    Ok(lucas_polynomial(p).checked_sub(&Polynomial::one()).expect("L_p has constant term 1"))
}

/// Number of path classes of size `ell`: compositions of `p - k` into `k + 1` parts with product `ell`.
pub fn path_size_count(p: usize, ell: u64) -> Result<BigUint, FamilyError> {
    Ok(path_size_spectrum(p)?.get(ell))
}

pub fn path_size_spectrum(p: usize) -> Result<SizeSpectrum, FamilyError> {
    if p == 0 {
        return Err(FamilyError::OutOfRange("path needs p >= 1".into()));
    }
    let mut s = SizeSpectrum::new();
    for k in 0..=p / 2 {
        for c in compositions(p - k, k + 1) {
            s.add(c.iter().map(|&x| x as u64).product(), 1u32);
        }
    }
    Ok(s)
}

/// Cycle classes by size from bounded partitions; each `(k, size)` aggregate of
/// `p * multinomial` is divided by `k` and must be exact.
pub fn cycle_size_spectrum(p: usize) -> Result<SizeSpectrum, FamilyError> {
    if p < 4 {
        return Err(FamilyError::OutOfRange("cycle formulas need p >= 4".into()));
    }
    let mut s = SizeSpectrum::new();
    for k in 1..=p / 2 {
        let mut by_size: std::collections::BTreeMap<u64, BigUint> = Default::default();
        for m in bounded_partitions(p - 2 * k + 1, k, p - k) {
            let size: u64 = m.iter().enumerate().map(|(i, &mi)| ((i + 1) as u64).pow(mi as u32)).product();
            let term = multinomial(k, &m).expect("multiplicities sum to k") * p;
            *by_size.entry(size).or_default() += term;
        }
        for (size, total) in by_size {
            let kk = BigUint::from(k);
            assert!((&total % &kk).is_zero(), "cycle aggregate for p={p}, k={k}, size={size} not divisible by k");
            s.add(size, total / kk);
        }
    }
    Ok(s)
}

pub fn cycle_size_count(p: usize, ell: u64) -> Result<BigUint, FamilyError> {
    Ok(cycle_size_spectrum(p)?.get(ell))
}

pub fn star_polynomial(p: usize) -> Polynomial {
    let mut poly = Polynomial::one();
    for k in 2..=p {
        poly = &poly + &Polynomial::monomial(binomial(p as u64, k as u64), k * (k - 1) / 2);
    }
    poly
}

/// `{1: 2^p - p - 1, p + 1: 1}`; the no-immorality class holds the `p + 1` single-source DAGs.
pub fn star_size_spectrum(p: usize) -> SizeSpectrum {
    let mut s = SizeSpectrum::new();
    s.add(1, pow2(p) - big(p as u64 + 1));
    s.add(p as u64 + 1, 1u32);
    s
}

fn bistar_p(m: usize) -> Polynomial {
    (1..=m).map(|k| Polynomial::monomial(binomial(m as u64, k as u64), k * (k + 1) / 2)).sum()
}

pub fn bistar_polynomial(p: usize, q: usize) -> Result<Polynomial, FamilyError> {
    if p == 0 || q == 0 {
        return Err(invalid("bistar needs p, q >= 1"));
    }
    let (sp, sq) = (star_polynomial(p), star_polynomial(q));
    let total = &(&(&sp * &bistar_p(q)) + &(&sq * &bistar_p(p))) + &(&sp + &sq);
    Ok(total.checked_sub(&Polynomial::one()).expect("constant term is at least 2"))
}

pub fn bistar_size_spectrum(p: usize, q: usize) -> Result<SizeSpectrum, FamilyError> {
    if p == 0 || q == 0 {
        return Err(invalid("bistar needs p, q >= 1"));
    }
    let b = |e: usize| BigInt::from(pow2(e));
    let (pi, qi) = (BigInt::from(p), BigInt::from(q));
    let s1 = b(p + q + 1) - &pi * b(q) - &qi * b(p) - b(p) - b(q);
    let mut s = SizeSpectrum::new();
    s.add(1, to_unsigned(s1, "bistar s_1")?);
    s.add(p as u64 + 1, pow2(q) - 1u32);
    s.add(q as u64 + 1, pow2(p) - 1u32);
    s.add((p + q + 2) as u64, 1u32);
    Ok(s)
}

/// Sum over subsets `S` of the legs longer than one, grouped by `|S| = j`, of
/// `L(S;x) x^j M(G_1(k - j);x)`.
pub fn spider_polynomial(legs: &[usize]) -> Result<Polynomial, FamilyError> {
    if legs.is_empty() || legs.contains(&0) {
        return Err(invalid("spider needs at least one leg, all legs >= 1"));
    }
    let k = legs.len();
    // by_j[j] = sum over |S| = j of L(S;x); legs of length one contribute M(I_1;x) = 1.
    let mut by_j = vec![Polynomial::one()];
    for &len in legs.iter().filter(|&&l| l > 1) {
        let stay = path_poly_or_one(len);
        let take = path_poly_or_one(len - 1);
        let mut next = vec![Polynomial::zero(); by_j.len() + 1];
        for (j, poly) in by_j.iter().enumerate() {
            next[j] = &next[j] + &(poly * &stay);
            next[j + 1] = &next[j + 1] + &(poly * &take);
        }
        by_j = next;
    }
    Ok(by_j
        .iter()
        .enumerate()
        .map(|(j, l)| (l * &star_polynomial(k - j)).shift(j))
        .sum())
}

/// `F_{m+1}^k - k F_{m-1} F_m^{k-1}` for the spider with `k` legs of length `m`.
pub fn uniform_spider_count(k: usize, m: usize) -> Result<BigUint, FamilyError> {
    if k < 2 || m < 1 {
        return Err(invalid("uniform spider needs k >= 2 and m >= 1"));
    }
    let f = |i: usize| BigInt::from(fibonacci_number(i));
    let v = num_traits::pow(f(m + 1), k) - BigInt::from(k) * f(m - 1) * num_traits::pow(f(m), k - 1);
    to_unsigned(v, "uniform spider count")
}

type SignedPoly = Vec<BigInt>;

fn sp_from(c: &[i64]) -> SignedPoly {
    c.iter().map(|&v| BigInt::from(v)).collect()
}

fn sp_add(a: &SignedPoly, b: &SignedPoly) -> SignedPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

fn sp_mul(a: &SignedPoly, b: &SignedPoly) -> SignedPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sp_to_poly(a: &SignedPoly) -> Result<Polynomial, FamilyError> {
    let coeffs = a
        .iter()
        .map(|c| c.to_biguint().ok_or_else(|| invalid("caterpillar recursion produced a negative coefficient")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::from_coeffs(coeffs))
}

/// All `W_1 .. W_p` as signed coefficient vectors.
///
/// Even `p` takes the Fibonacci-style step and odd `p` the four-term step; this is the
/// parity that reproduces the tabulated polynomials (the opposite labelling does not).
fn caterpillar_sequence(p: usize) -> Vec<SignedPoly> {
    let mut w: Vec<SignedPoly> = vec![Vec::new(), sp_from(&[1]), sp_from(&[1]), sp_from(&[1, 1]), sp_from(&[1, 2])];
    let x = sp_from(&[0, 1]);
    let (a, b, c) = (sp_from(&[2, 1]), sp_from(&[-2, 1, -1, 1]), sp_from(&[1, 0, 1]));
    for i in 5..=p {
        let next = if i % 2 == 0 {
            sp_add(&w[i - 1], &sp_mul(&x, &w[i - 2]))
        } else {
            sp_add(&sp_add(&sp_mul(&a, &w[i - 2]), &sp_mul(&b, &w[i - 3])), &sp_mul(&c, &w[i - 4]))
        };
        w.push(next);
    }
    w.truncate(p.max(1) + 1);
    w
}

pub fn caterpillar_polynomial(p: usize) -> Result<Polynomial, FamilyError> {
    if p == 0 {
        return Err(FamilyError::OutOfRange("caterpillar needs p >= 1".into()));
    }
    sp_to_poly(&caterpillar_sequence(p)[p])
}

pub fn caterpillar_count(p: usize) -> Result<BigUint, FamilyError> {
    Ok(caterpillar_polynomial(p)?.eval_at_one())
}

/// `M(W_1) .. M(W_p)` (index 0 unused) from the count recursion, seeded with the
/// polynomial values up to `p = 6`; valid from `p = 7` where every index is at least 1.
pub fn caterpillar_counts_by_recursion(p: usize) -> Result<Vec<BigUint>, FamilyError> {
    if p == 0 {
        return Err(FamilyError::OutOfRange("caterpillar needs p >= 1".into()));
    }
    let mut m: Vec<BigInt> = vec![BigInt::zero()];
    for i in 1..=p.min(6) {
        m.push(BigInt::from(caterpillar_count(i)?));
    }
    for i in 7..=p {
        let next = if i % 2 == 0 {
            &m[i - 1] + &m[i - 2]
        } else {
            BigInt::from(3) * &m[i - 2] + &m[i - 4] - &m[i - 5]
        };
        m.push(next);
    }
    m.into_iter().map(|v| to_unsigned(v, "caterpillar count")).collect()
}

/// `floor(p/2) + floor(p/4)`, the suggested immorality number of `W_p`.
pub fn caterpillar_immorality_estimate(p: usize) -> usize {
    p / 2 + p / 4
}

/// Joint values of the binary-tree recursions at one `k`. `sqrt_z` is kept exactly so
/// that `X_k = T_{k-1} sqrt(Z_k)` never takes a numeric root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTreeCounts {
    pub k: usize,
    pub t: BigUint,
    pub a: BigUint,
    pub x: BigUint,
    pub y: BigUint,
    pub z: BigUint,
    pub sqrt_z: BigUint,
}

/// Counts for `k = 1 ..= k_max`.
pub fn binary_tree_sequence(k_max: usize) -> Result<Vec<BinaryTreeCounts>, FamilyError> {
    if k_max == 0 {
        return Err(FamilyError::OutOfRange("binary tree needs k >= 1".into()));
    }
    let one = BigUint::one();
    let mut seq = vec![BinaryTreeCounts {
        k: 1,
        t: one.clone(),
        a: one.clone(),
        x: one.clone(),
        y: one.clone(),
        z: one.clone(),
        sqrt_z: one.clone(),
    }];
    for k in 2..=k_max {
        let prev = &seq[k - 2];
        let sqrt_z = if k == 2 {
            one.clone()
        } else {
            let prev2 = &seq[k - 3];
            BigUint::from(2u32) * &prev.x + &prev2.t * &prev2.t + &prev.z
        };
        let z = &sqrt_z * &sqrt_z;
        // 2 Z_{k-1} T_{k-1} - Z_{k-1}^2 = Z_{k-1} (2 T_{k-1} - Z_{k-1}), and Z_{k-1} <= T_{k-1}.
        let y = &prev.z * (BigUint::from(2u32) * &prev.t - &prev.z);
        let t = &prev.a * &prev.a + &y;
        let x = &prev.t * &sqrt_z;
        let a = &t + BigUint::from(2u32) * &x + &prev.t * &prev.t;
        seq.push(BinaryTreeCounts { k, t, a, x, y, z, sqrt_z });
    }
    Ok(seq)
}

pub fn binary_tree_counts(k: usize) -> Result<BinaryTreeCounts, FamilyError> {
    Ok(binary_tree_sequence(k)?.pop().expect("k >= 1"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    pub k: usize,
    /// `M(A_k) / M(T_k)`, exact.
    pub ratio: BigRational,
    /// `1 < ratio < 4`, strictly.
    pub within_bounds: bool,
    /// `Z_k < T_k`; `None` at `k = 1`, where both are 1.
    pub z_below_t: Option<bool>,
    pub note: Option<&'static str>,
}

pub fn binary_tree_ratio_check(k: usize) -> Result<RatioCheck, FamilyError> {
    let c = binary_tree_counts(k)?;
    let ratio = BigRational::new(BigInt::from(c.a), BigInt::from(c.t.clone()));
    let within_bounds = ratio > BigRational::one() && ratio < BigRational::from_integer(BigInt::from(4));
    let (z_below_t, note) = if k == 1 {
        (None, Some("A_1 and T_1 both have one class; the strict lower bound is meant for growing k"))
    } else {
        (Some(c.z < c.t), None)
    };
    Ok(RatioCheck { k, ratio, within_bounds, z_below_t, note })
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    // Scale down to keep both within f64 range.
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift as usize).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift as usize).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `sum_k C(p,k) (2^{p-k} - 1 + 2^k - k) - p 2^{p-1}`.
pub fn k2p_count(p: usize) -> Result<BigUint, FamilyError> {
    if p == 0 {
        return Err(FamilyError::OutOfRange("k2p needs p >= 1".into()));
    }
    let mut total = BigInt::zero();
    for k in 0..=p {
        let inner = BigInt::from(pow2(p - k)) - 1 + BigInt::from(pow2(k)) - BigInt::from(k);
        total += BigInt::from(binomial(p as u64, k as u64)) * inner;
    }
    total -= BigInt::from(p) * BigInt::from(pow2(p - 1));
    to_unsigned(total, "k2p count")
}

/// Class sizes on `K_{2,p}`, re-derived by the number `r` of spine nodes that are not colliders:
/// `s_1 = 1 + sum_{r>=2} C(p,r)(2^{r+1} - 2r - 3)`, `s_3 = p^2`, `s_{r+1} = 2 C(p,r)` for `r >= 3`.
pub fn k2p_size_spectrum(p: usize) -> Result<SizeSpectrum, FamilyError> {
    if p == 0 {
        return Err(FamilyError::OutOfRange("k2p needs p >= 1".into()));
    }
    let c = |r: usize| BigInt::from(binomial(p as u64, r as u64));
    let mut s1 = BigInt::one();
    for r in 2..=p {
        s1 += c(r) * (BigInt::from(pow2(r + 1)) - BigInt::from(2 * r + 3));
    }
    let mut s = SizeSpectrum::new();
    s.add(1, to_unsigned(s1, "k2p s_1")?);
    s.add(3, BigUint::from(p * p));
    for r in 3..=p {
        s.add(r as u64 + 1, to_unsigned(BigInt::from(2) * c(r), "k2p s_r")?);
    }
    Ok(s)
}

/// The printed class-size table for `K_{2,p}`, kept for comparison only: it disagrees
/// with exhaustive enumeration for every `p >= 2`.
pub fn k2p_size_spectrum_published(p: usize) -> Result<SizeSpectrum, FamilyError> {
    if p == 0 {
        return Err(FamilyError::OutOfRange("k2p needs p >= 1".into()));
    }
    let c = |k: usize| binomial(p as u64, k as u64);
    let mut s = SizeSpectrum::new();
    let mut s1 = big(2);
    for k in 2..p {
        s1 += c(k) * pow2(p - k);
    }
    s.add(1, s1);
    s.add(2, big(2) + c(2));
    for size in 3..p {
        s.add(size as u64, BigUint::one() + c(2));
    }
    s.add(p as u64, 2u32);
    Ok(s)
}

/// `2 C(p,2)` (all arrows into `a` and `b`); at `p = 1` the graph is a 3-path with one immorality.
pub fn k2p_immorality_number(p: usize) -> Result<usize, FamilyError> {
    match p {
        0 => Err(FamilyError::OutOfRange("k2p needs p >= 1".into())),
        1 => Ok(1),
        _ => Ok(p * (p - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[u64]) -> Polynomial {
        Polynomial::from_u64s(c)
    }

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "path:7",
            "cycle:5",
            "star:4",
            "bistar:3,2",
            "spider:3,2,2",
            "caterpillar:9",
            "btree:3",
            "atree:3",
            "k2p:4",
            "leafy:1,0,2",
        ] {
            assert_eq!(spec(s).to_string(), s);
        }
        assert_eq!(spec("spider:2,3,2"), FamilySpec::Spider(vec![3, 2, 2]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("tree:3".parse::<FamilySpec>(), Err(FamilyError::Unknown(_))));
        assert!(matches!("path".parse::<FamilySpec>(), Err(FamilyError::Unknown(_))));
        assert!(matches!("path:x".parse::<FamilySpec>(), Err(FamilyError::Invalid(_))));
        assert!(matches!("cycle:2".parse::<FamilySpec>(), Err(FamilyError::Invalid(_))));
        assert!(matches!("bistar:3".parse::<FamilySpec>(), Err(FamilyError::Invalid(_))));
        assert!(matches!("spider:2,0".parse::<FamilySpec>(), Err(FamilyError::Invalid(_))));
        assert!(matches!("btree:0".parse::<FamilySpec>(), Err(FamilyError::Invalid(_))));
        assert!(FamilySpec::Spider(vec![1, 2]).validate().is_err());
    }

    #[test]
    fn build_examples() {
        let s = spec("spider:2,2").build().unwrap();
        assert_eq!(s.n(), 5);
        assert!(s.is_tree());
        assert!(s.degrees().iter().all(|&d| d <= 2));
        let w4 = spec("caterpillar:4").build().unwrap();
        assert_eq!((w4.n(), w4.edge_count()), (4, 3));
        assert_eq!(w4, spec("leafy:1,1").build().unwrap());
        let t3 = spec("btree:3").build().unwrap();
        assert_eq!((t3.n(), t3.edge_count()), (7, 6));
        let a3 = spec("atree:3").build().unwrap();
        assert_eq!((a3.n(), a3.edge_count()), (8, 7));
        assert_eq!(a3.degrees()[0], 3);
        let k = spec("k2p:3").build().unwrap();
        assert_eq!(k.edge_count(), 6);
        assert!(!k.has_edge(0, 1));
        assert_eq!(spec("cycle:5").build().unwrap().degrees(), vec![2; 5]);
        assert_eq!(spec("star:0").build().unwrap().n(), 1);
        let b = spec("bistar:2,1").build().unwrap();
        assert_eq!(b.degrees(), vec![3, 2, 1, 1, 1]);
        assert!(matches!(spec("btree:40").build(), Err(FamilyError::OutOfRange(_))));
    }

    #[test]
    fn path_and_cycle_polynomials() {
        assert_eq!(path_polynomial(5).unwrap(), poly(&[1, 3, 1]));
        assert_eq!(path_polynomial(1).unwrap(), poly(&[1]));
        assert_eq!(cycle_polynomial(4).unwrap(), poly(&[0, 4, 2]));
        assert_eq!(cycle_polynomial(5).unwrap().eval_at_one(), big(10));
        assert!(cycle_polynomial(3).is_err());
        assert!(path_polynomial(0).is_err());
    }

    #[test]
    fn path_and_cycle_immorality_numbers() {
        for p in 1..=20 {
            // Heads form an independent set among the p internal nodes of I_{p+2}.
            assert_eq!(path_polynomial(p + 2).unwrap().degree(), Some(p.div_ceil(2)), "path p={p}");
        }
        for p in 4..=20 {
            assert_eq!(cycle_polynomial(p).unwrap().degree(), Some(p / 2), "cycle p={p}");
        }
    }

    #[test]
    fn path_size_counts() {
        assert_eq!(path_size_count(4, 2).unwrap(), big(2));
        assert_eq!(path_size_count(4, 4).unwrap(), big(1));
        assert_eq!(path_size_count(5, 1).unwrap(), big(1));
        assert_eq!(path_size_count(4, 3).unwrap(), big(0));
    }

    #[test]
    fn path_spectrum_totals() {
        for p in 1..=14 {
            let s = path_size_spectrum(p).unwrap();
            assert_eq!(s.total_count(), fibonacci_number(p - 1), "p={p}");
            assert_eq!(s.total_members(), pow2(p - 1), "p={p}");
        }
    }

    #[test]
    fn cycle_size_counts() {
        assert_eq!(cycle_size_count(4, 3).unwrap(), big(4));
        assert_eq!(cycle_size_count(4, 1).unwrap(), big(2));
        assert_eq!(cycle_size_spectrum(5).unwrap().total_count(), big(10));
        for p in 4..=16 {
            assert_eq!(cycle_size_spectrum(p).unwrap().total_count(), cycle_polynomial(p).unwrap().eval_at_one());
            // Acyclic orientations of C_p: all 2^p minus the two directed cycles.
            assert_eq!(cycle_size_spectrum(p).unwrap().total_members(), pow2(p) - 2u32);
        }
    }

    #[test]
    fn star_formulas() {
        assert_eq!(star_polynomial(3), poly(&[1, 3, 0, 1]));
        assert_eq!(star_polynomial(3).eval_at_one(), big(5));
        assert_eq!(star_polynomial(0), poly(&[1]));
        assert_eq!(star_polynomial(1), poly(&[1]));
        assert_eq!(star_size_spectrum(3).to_string(), "{1:4, 4:1}");
        assert_eq!(star_size_spectrum(0).to_string(), "{1:1}");
        assert_eq!(star_size_spectrum(1).to_string(), "{2:1}");
        for p in 0..=20 {
            let s = star_size_spectrum(p);
            assert_eq!(s.total_count(), star_polynomial(p).eval_at_one());
        }
    }

    #[test]
    fn bistar_formulas() {
        assert_eq!(bistar_polynomial(1, 1).unwrap().eval_at_one(), big(3));
        assert_eq!(bistar_polynomial(1, 1).unwrap(), path_polynomial(4).unwrap());
        assert_eq!(bistar_size_spectrum(1, 1).unwrap().to_string(), "{2:2, 4:1}");
        assert_eq!(bistar_polynomial(2, 2).unwrap().eval_at_one(), big(15));
        assert_eq!(bistar_size_spectrum(1, 2).unwrap().to_string(), "{1:2, 2:3, 3:1, 5:1}");
        for p in 1..=6 {
            for q in 1..=6 {
                let expected = BigInt::from(pow2(p + q + 1))
                    - BigInt::from(p) * BigInt::from(pow2(q))
                    - BigInt::from(q) * BigInt::from(pow2(p))
                    - 1;
                let m = bistar_polynomial(p, q).unwrap().eval_at_one();
                assert_eq!(BigInt::from(m.clone()), expected);
                assert_eq!(bistar_size_spectrum(p, q).unwrap().total_count(), m);
            }
        }
    }

    #[test]
    fn spider_formulas() {
        assert_eq!(spider_polynomial(&[2, 2]).unwrap(), poly(&[1, 3, 1]));
        assert_eq!(spider_polynomial(&[1, 1, 1]).unwrap(), star_polynomial(3));
        assert_eq!(spider_polynomial(&[5]).unwrap(), path_polynomial(6).unwrap());
        assert_eq!(spider_polynomial(&[4, 3]).unwrap(), path_polynomial(8).unwrap());
        assert!(spider_polynomial(&[]).is_err());
        assert_eq!(uniform_spider_count(2, 2).unwrap(), big(5));
        assert_eq!(uniform_spider_count(3, 2).unwrap(), big(15));
        for k in 2..=8 {
            assert_eq!(uniform_spider_count(k, 1).unwrap(), pow2(k) - big(k as u64));
            for m in 1..=6 {
                let legs = vec![m; k];
                assert_eq!(uniform_spider_count(k, m).unwrap(), spider_polynomial(&legs).unwrap().eval_at_one());
            }
        }
        for m in 1..=10 {
            assert_eq!(uniform_spider_count(2, m).unwrap(), fibonacci_number(2 * m));
        }
    }

    #[test]
    fn caterpillar_table() {
        let table: [(usize, &[u64], u64); 14] = [
            (1, &[1], 1),
            (2, &[1], 1),
            (3, &[1, 1], 2),
            (4, &[1, 2], 3),
            (5, &[1, 4, 1, 1], 7),
            (6, &[1, 5, 3, 1], 10),
            (7, &[1, 7, 8, 3, 3], 22),
            (8, &[1, 8, 13, 6, 4], 32),
            (9, &[1, 10, 23, 16, 13, 6, 1], 70),
            (10, &[1, 11, 31, 29, 19, 10, 1], 102),
            (11, &[1, 13, 46, 59, 46, 39, 13, 5], 222),
            (12, &[1, 14, 57, 90, 75, 58, 23, 6], 324),
            (13, &[1, 16, 77, 153, 158, 147, 97, 39, 15, 1], 704),
            (14, &[1, 17, 91, 210, 248, 222, 155, 62, 21, 1], 1028),
        ];
        for (p, coeffs, count) in table {
            assert_eq!(caterpillar_polynomial(p).unwrap(), poly(coeffs), "p={p}");
            assert_eq!(caterpillar_count(p).unwrap(), big(count), "p={p}");
        }
    }

    #[test]
    fn caterpillar_count_recursion_agrees() {
        let rec = caterpillar_counts_by_recursion(20).unwrap();
        for (p, r) in rec.iter().enumerate().skip(7) {
            assert_eq!(*r, caterpillar_count(p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn caterpillar_unimodal_up_to_20() {
        for p in 1..=20 {
            let c = caterpillar_polynomial(p).unwrap().coeffs().to_vec();
            let peak = c.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).unwrap().0;
            assert!(c[..=peak].windows(2).all(|w| w[0] <= w[1]), "p={p}");
            assert!(c[peak..].windows(2).all(|w| w[0] >= w[1]), "p={p}");
        }
    }

    #[test]
    fn caterpillar_estimate_odd_only() {
        for p in (1..=13).step_by(2) {
            let deg = caterpillar_polynomial(p).unwrap().degree().unwrap();
            assert_eq!(deg, caterpillar_immorality_estimate(p), "p={p}");
        }
        let even: Vec<usize> = (2..=14).step_by(2).map(|p| caterpillar_polynomial(p).unwrap().degree().unwrap()).collect();
        assert_eq!(even, vec![0, 1, 3, 4, 6, 7, 9]);
        assert_ne!(caterpillar_immorality_estimate(14), 9);
    }

    #[test]
    fn binary_tree_values() {
        let c2 = binary_tree_counts(2).unwrap();
        assert_eq!((c2.t.clone(), c2.a.clone()), (big(2), big(5)));
        assert_eq!(c2.a, star_polynomial(3).eval_at_one());
        let c3 = binary_tree_counts(3).unwrap();
        assert_eq!(
            (c3.t, c3.a, c3.x, c3.y, c3.z, c3.sqrt_z),
            (big(28), big(48), big(8), big(3), big(16), big(4))
        );
        let c4 = binary_tree_counts(4).unwrap();
        assert_eq!((c4.t, c4.a, c4.x, c4.y, c4.z), (big(2944), big(5744), big(1008), big(640), big(1296)));
        assert!(binary_tree_counts(0).is_err());
    }

    #[test]
    fn binary_tree_ratios() {
        let r2 = binary_tree_ratio_check(2).unwrap();
        assert_eq!(r2.ratio, BigRational::new(5.into(), 2.into()));
        assert!(r2.within_bounds);
        let r3 = binary_tree_ratio_check(3).unwrap();
        assert_eq!(r3.ratio, BigRational::new(48.into(), 28.into()));
        assert!(r3.within_bounds && r3.z_below_t == Some(true));
        let r1 = binary_tree_ratio_check(1).unwrap();
        assert!(!r1.within_bounds);
        assert_eq!(r1.z_below_t, None);
        assert!(r1.note.is_some());
        for k in 8..=12 {
            let r = ratio_to_f64(&binary_tree_ratio_check(k).unwrap().ratio);
            assert!(r > 1.5 && r < 2.5, "k={k} ratio {r}");
        }
    }

    #[test]
    fn k2p_formulas() {
        let counts: Vec<BigUint> = (1..=5).map(|p| k2p_count(p).unwrap()).collect();
        assert_eq!(counts, [2u32, 6, 22, 82, 294].map(BigUint::from));
        assert_eq!(k2p_count(2).unwrap(), cycle_polynomial(4).unwrap().eval_at_one());
        assert_eq!(k2p_immorality_number(3).unwrap(), 6);
        assert_eq!(k2p_immorality_number(1).unwrap(), 1);
        assert_eq!(k2p_size_spectrum(2).unwrap().to_string(), "{1:2, 3:4}");
        assert_eq!(k2p_size_spectrum(3).unwrap().to_string(), "{1:11, 3:9, 4:2}");
        for p in 1..=25 {
            assert_eq!(k2p_size_spectrum(p).unwrap().total_count(), k2p_count(p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn k2p_published_table_disagrees() {
        // For K_{2,2} = C_4 the table's size-2 and size-p rows collide; C_4 has no class of size 2.
        assert_eq!(k2p_size_spectrum_published(2).unwrap().to_string(), "{1:2, 2:5}");
        assert_eq!(k2p_size_spectrum_published(3).unwrap().total_count(), big(15));
        for p in 2..=8 {
            assert_ne!(k2p_size_spectrum_published(p).unwrap(), k2p_size_spectrum(p).unwrap());
        }
    }

    #[test]
    fn per_spec_accessors() {
        assert_eq!(spec("caterpillar:14").formula_count().unwrap(), Some(big(1028)));
        assert_eq!(spec("k2p:3").formula_count().unwrap(), Some(big(22)));
        assert_eq!(spec("btree:3").formula_count().unwrap(), Some(big(28)));
        assert_eq!(spec("atree:3").formula_count().unwrap(), Some(big(48)));
        assert_eq!(spec("leafy:1,0,2").formula_count().unwrap(), None);
        assert_eq!(spec("cycle:3").formula_polynomial().unwrap(), None);
        assert_eq!(spec("k2p:3").formula_immorality_number().unwrap(), Some(6));
        assert_eq!(spec("path:7").formula_immorality_number().unwrap(), Some(3));
        assert!(spec("spider:3,2").formula_spectrum().unwrap().is_none());
    }
}
