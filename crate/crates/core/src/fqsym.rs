//! The quadri-bialgebra of permutations and the quadri-algebra of words
//! under the shuffle product.
//!
//! Products are shuffles filtered by where the first and last letters of
//! the result come from. Coproducts are deconcatenations filtered by where
//! the letters `1` and `n` sit relative to the cut.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{int, Echelon, LinComb, SparseMatrix};
use crate::quadri::{unital_product, Kind, Op, QuadriCoops, QuadriOps, Space, Unital};
use crate::words::{shift, shuffles, std, Permutation, Shuffle};

/// Largest degree accepted by [`quadri_span`] and [`quadri_primitives`].
pub const DEGREE_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FqsymError {
    #[error("degree {requested} exceeds the cap {cap}")]
    DegreeCap { requested: usize, cap: usize },
    #[error("generator {index} is not homogeneous")]
    Inhomogeneous { index: usize },
    #[error("ψ needs a permutation of even length, got length {0}")]
    OddLength(usize),
}

pub type FqsymElement = LinComb<Permutation>;
pub type ShuffleWordElement = LinComb<String>;

/// Whether a `(k, l)`-shuffle qualifies for `op`: `↖` keeps the first and
/// last letters in the left factor, `↘` in the right one, `↙` takes the
/// first from the right and the last from the left, `↗` the reverse.
pub fn shuffle_qualifies(op: Op, sh: &Shuffle) -> bool {
    let (k, n) = (sh.k(), sh.k() + sh.l());
    let first_left = sh.source_of(1) <= k;
    let last_left = sh.source_of(n as u32) <= k;
    match op {
        Op::Nw => first_left && last_left,
        Op::Sw => !first_left && last_left,
        Op::Se => !first_left && !last_left,
        Op::Ne => first_left && !last_left,
    }
}

fn filtered_shuffles<T: Clone>(kind: Kind, u: &[T], v: &[T]) -> Vec<Vec<T>> {
    shuffles(u.len(), v.len())
        .into_iter()
        .filter(|sh| kind.ops().iter().any(|&op| shuffle_qualifies(op, sh)))
        .map(|sh| sh.interleave(u, v))
        .collect()
}

pub fn fqsym_product(kind: Kind, sigma: &Permutation, tau: &Permutation) -> FqsymElement {
    let shifted = shift(tau.letters(), sigma.len() as u32);
    LinComb::from_keys(
        filtered_shuffles(kind, sigma.letters(), &shifted)
            .into_iter()
            .map(|w| Permutation::new(w).expect("shuffle of disjoint alphabets")),
    )
}

/// Whether cutting after position `i` qualifies for `op`, with
/// `p1 = σ⁻¹(1)` and `pn = σ⁻¹(n)`.
pub fn cut_qualifies(op: Op, i: usize, p1: usize, pn: usize) -> bool {
    match op {
        Op::Nw => p1 <= i && pn <= i,
        Op::Sw => pn <= i && i < p1,
        Op::Se => i < p1 && i < pn,
        Op::Ne => p1 <= i && i < pn,
    }
}

/// Reduced coproduct of a permutation.
pub fn fqsym_coproduct(kind: Kind, sigma: &Permutation) -> LinComb<(Permutation, Permutation)> {
    let n = sigma.len();
    if n < 2 {
        return LinComb::zero();
    }
    let p1 = sigma.position_of(1);
    let pn = sigma.position_of(n as u32);
    let w = sigma.letters();
    LinComb::from_keys((1..n).filter(|&i| kind.ops().iter().any(|&op| cut_qualifies(op, i, p1, pn))).map(
        |i| {
            (
                std(&w[..i]).expect("subword of a permutation"),
                std(&w[i..]).expect("subword of a permutation"),
            )
        },
    ))
}

/// FQSym restricted to its augmentation ideal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fqsym;

impl Space for Fqsym {
    type Basis = Permutation;
}

impl QuadriOps for Fqsym {
    fn product(&self, op: Op, a: &Permutation, b: &Permutation) -> FqsymElement {
        fqsym_product(op.into(), a, b)
    }

    fn product_kind(&self, kind: Kind, a: &Permutation, b: &Permutation) -> FqsymElement {
        fqsym_product(kind, a, b)
    }
}

impl QuadriCoops for Fqsym {
    fn coproduct(&self, op: Op, c: &Permutation) -> LinComb<(Permutation, Permutation)> {
        fqsym_coproduct(op.into(), c)
    }

    fn coproduct_kind(&self, kind: Kind, c: &Permutation) -> LinComb<(Permutation, Permutation)> {
        fqsym_coproduct(kind, c)
    }
}

pub fn fqsym_basis(n: usize) -> Vec<Permutation> {
    Permutation::all(n)
}

pub fn shuffle_word_product(kind: Kind, u: &str, v: &str) -> ShuffleWordElement {
    let u: Vec<char> = u.chars().collect();
    let v: Vec<char> = v.chars().collect();
    LinComb::from_keys(
        filtered_shuffles(kind, &u, &v)
            .into_iter()
            .map(|w| w.into_iter().collect::<String>()),
    )
}

/// The augmentation ideal of the tensor algebra on a set of letters, with
/// words stored as strings.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShuffleWords;

impl Space for ShuffleWords {
    type Basis = String;
}

impl QuadriOps for ShuffleWords {
    fn product(&self, op: Op, a: &String, b: &String) -> ShuffleWordElement {
        shuffle_word_product(op.into(), a, b)
    }
}

/// Nonempty words of length `n` over `alphabet`.
pub fn words_over(alphabet: &[char], n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |c| {
                    let mut x = w.clone();
                    x.push(*c);
                    x
                })
            })
            .collect();
    }
    out
}

/// One degree of a quadri-span computation.
#[derive(Clone, Debug, Serialize)]
pub struct SpanDegree {
    pub degree: usize,
    /// Number of free quadri-magma monomials of this degree.
    pub monomials: usize,
    pub dim: usize,
    #[serde(skip)]
    pub basis: Vec<FqsymElement>,
}

fn degree_of(x: &FqsymElement) -> Option<usize> {
    let mut lens = x.keys().map(Permutation::len);
    let first = lens.next()?;
    lens.all(|l| l == first).then_some(first)
}

/// Graded dimensions of the quadri-subalgebra generated by homogeneous
/// elements, up to `max_degree`. Every monomial of the free quadri-magma on
/// the generators is evaluated; the dimension is the rank of the values.
pub fn quadri_span(generators: &[FqsymElement], max_degree: usize) -> Result<Vec<SpanDegree>, FqsymError> {
    if max_degree > DEGREE_CAP {
        return Err(FqsymError::DegreeCap {
            requested: max_degree,
            cap: DEGREE_CAP,
        });
    }
    let mut values: Vec<Vec<FqsymElement>> = vec![Vec::new(); max_degree + 1];
    for (index, g) in generators.iter().enumerate() {
        let d = degree_of(g).ok_or(FqsymError::Inhomogeneous { index })?;
        if d <= max_degree {
            values[d].push(g.clone());
        }
    }
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let products: Vec<FqsymElement> = (1..d)
            .flat_map(|a| {
                let (va, vb) = (&values[a], &values[d - a]);
                va.iter()
                    .flat_map(move |x| vb.iter().flat_map(move |y| Op::ALL.iter().map(move |&op| (op, x, y))))
            })
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(op, x, y)| x.bilinear(y, |s, t| fqsym_product(op.into(), s, t)))
            .collect();
        values[d].extend(products);
        let mut ech = Echelon::new();
        for v in &values[d] {
            ech.insert(v.clone());
        }
        if values[d].is_empty() {
            continue;
        }
        out.push(SpanDegree {
            degree: d,
            monomials: values[d].len(),
            dim: ech.rank(),
            basis: ech.rows().cloned().collect(),
        });
    }
    Ok(out)
}

/// Basis of `Ker Δ̃_↖ ∩ Ker Δ̃_↙ ∩ Ker Δ̃_↘ ∩ Ker Δ̃_↗` in degree `n`.
pub fn quadri_primitives(degree: usize) -> Result<Vec<FqsymElement>, FqsymError> {
    if degree > DEGREE_CAP.min(8) {
        return Err(FqsymError::DegreeCap {
            requested: degree,
            cap: DEGREE_CAP.min(8),
        });
    }
    let basis = Permutation::all(degree);
    let mut rows: BTreeMap<(Op, Permutation, Permutation), FqsymElement> = BTreeMap::new();
    for sigma in &basis {
        for op in Op::ALL {
            for ((a, b), c) in fqsym_coproduct(op.into(), sigma).iter() {
                rows.entry((op, a.clone(), b.clone()))
                    .or_default()
                    .add_term(sigma.clone(), c.clone());
            }
        }
    }
    Ok(SparseMatrix::with_columns(rows.into_values().collect(), basis).kernel_basis())
}

/// Sends `σ ∈ S_2n` whose first half is odd and second half even to
/// `((σ(i)+1)/2)_{i<=n} ⊗ (σ(i)/2)_{i>n}`, everything else to zero.
pub fn psi(sigma: &Permutation) -> Result<LinComb<(Permutation, Permutation)>, FqsymError> {
    let len = sigma.len();
    if len % 2 == 1 {
        return Err(FqsymError::OddLength(len));
    }
    let (first, second) = sigma.letters().split_at(len / 2);
    if !first.iter().all(|x| x % 2 == 1) || !second.iter().all(|x| x % 2 == 0) {
        return Ok(LinComb::zero());
    }
    let a = Permutation::new(first.iter().map(|x| x.div_ceil(2)).collect()).expect("odd letters halve to 1..n");
    let b = Permutation::new(second.iter().map(|x| x / 2).collect()).expect("even letters halve to 1..n");
    Ok(LinComb::basis((a, b)))
}

/// `ψ(σ♦τ) − ψ(σ)♦ψ(τ)` with the right side computed in `FQSym ⊗̄ FQSym`.
pub fn psi_morphism_defect(
    op: Op,
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<LinComb<(Permutation, Permutation)>, FqsymError> {
    let lhs = fqsym_product(op.into(), sigma, tau);
    let mut left = LinComb::zero();
    for (w, c) in lhs.iter() {
        left.add_scaled(&psi(w)?, c);
    }
    let lift = |t: LinComb<(Permutation, Permutation)>| t.map_keys(|(a, b)| (Unital::Elem(a.clone()), Unital::Elem(b.clone())));
    let ps = lift(psi(sigma)?);
    let pt = lift(psi(tau)?);
    let right = ps.bilinear(&pt, |p, q| {
        unital_product(&Fqsym, op.into(), p, q).expect("no unit components")
    });
    let right = right.map_keys(|(a, b)| match (a, b) {
        (Unital::Elem(a), Unital::Elem(b)) => (a.clone(), b.clone()),
        _ => unreachable!("products of non-unit pairs stay non-unit"),
    });
    Ok(left - right)
}

/// Images of ψ on `S_2n` with nonzero value.
pub fn psi_support(n: usize) -> Vec<Permutation> {
    Permutation::all(2 * n)
        .into_iter()
        .filter(|s| psi(s).map(|v| !v.is_zero()).unwrap_or(false))
        .collect()
}

/// Sum with coefficient one over all inputs; handy for building examples.
pub fn element(perms: &[Permutation]) -> FqsymElement {
    LinComb::from_terms(perms.iter().map(|p| (p.clone(), int(1))))
}
