//! Combinatorial models: the free dual quadri-algebra on squares `[n]²`,
//! its decorated version, the operad `Quad^!` on squares and the operad
//! `Dias` on intervals `[n]`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::LinComb;
use crate::operad::TreeMonomial;
use crate::quadri::{Op, QuadriOps, Space};

/// Largest degree accepted by the exhaustive checks.
pub const MODEL_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("({i},{j})_{n} is outside [n]²")]
    RectBounds { i: usize, j: usize, n: usize },
    #[error("({i})_{n} is outside [n]")]
    DiasBounds { i: usize, n: usize },
    #[error("outer element has arity {expected} but {got} inner elements were given")]
    ArityMismatch { expected: usize, got: usize },
    #[error("{got} decorations for degree {n}")]
    DecorationLength { got: usize, n: usize },
}

/// The element `(i,j)_n` of `[n]²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rect {
    pub i: usize,
    pub j: usize,
    pub n: usize,
}

impl Rect {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Rect, ModelError> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(ModelError::RectBounds { i, j, n });
        }
        Ok(Rect { i, j, n })
    }

    pub fn unit() -> Rect {
        Rect { i: 1, j: 1, n: 1 }
    }

    pub fn all(n: usize) -> Vec<Rect> {
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| Rect { i, j, n }))
            .collect()
    }

    /// The four generators of `Quad^!` as elements of `[2]²`.
    pub fn generator(op: Op) -> Rect {
        match op {
            Op::Nw => Rect { i: 1, j: 1, n: 2 },
            Op::Sw => Rect { i: 1, j: 2, n: 2 },
            Op::Se => Rect { i: 2, j: 2, n: 2 },
            Op::Ne => Rect { i: 2, j: 1, n: 2 },
        }
    }

    /// `n × n` grid, `#` on the cells `(a,b)` with `a ≤ i`, `b ≤ j`. The
    /// first coordinate runs left to right, the second top to bottom.
    pub fn grid(&self) -> String {
        let mut s = String::new();
        for b in 1..=self.n {
            for a in 1..=self.n {
                s.push(if a <= self.i && b <= self.j { '#' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})_{}", self.i, self.j, self.n)
    }
}

/// Products on squares; every product is a single square.
pub fn rect_product(op: Op, a: &Rect, b: &Rect) -> Rect {
    let (p, q) = (a.n, b.n);
    let (i, j) = match op {
        Op::Nw => (a.i, a.j),
        Op::Sw => (a.i, p + b.j),
        Op::Se => (p + b.i, p + b.j),
        Op::Ne => (p + b.i, a.j),
    };
    Rect { i, j, n: p + q }
}

/// `A_R` as a dual quadri-algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct Squares;

impl Space for Squares {
    type Basis = Rect;
}

impl QuadriOps for Squares {
    fn product(&self, op: Op, a: &Rect, b: &Rect) -> LinComb<Rect> {
        LinComb::basis(rect_product(op, a, b))
    }
}

pub fn squares_basis(n: usize) -> Vec<Rect> {
    Rect::all(n)
}

/// Counts of elements of `[n]²` reached from `(1,1)_1` by the four
/// products, by degree, for `n = 1..=max_n`.
pub fn rect_generation(max_n: usize) -> Vec<usize> {
    let max_n = max_n.min(MODEL_CAP);
    let mut levels: Vec<BTreeSet<Rect>> = vec![BTreeSet::new(); max_n + 1];
    if max_n >= 1 {
        levels[1].insert(Rect::unit());
    }
    for n in 2..=max_n {
        let mut level = BTreeSet::new();
        for p in 1..n {
            for a in &levels[p] {
                for b in &levels[n - p] {
                    for op in Op::ALL {
                        level.insert(rect_product(op, a, b));
                    }
                }
            }
        }
        levels[n] = level;
    }
    levels.iter().skip(1).map(BTreeSet::len).collect()
}

/// True iff every element of `[n]²` is reached for `n ≤ max_n`.
pub fn rect_generation_check(max_n: usize) -> bool {
    rect_generation(max_n)
        .iter()
        .enumerate()
        .all(|(k, &c)| c == (k + 1) * (k + 1))
}

/// `(i,j)_m ∘ ((k_1,l_1)_{n_1}, …)`: the first index is shifted by the
/// degrees of the inner elements before position `i`, the second by those
/// before position `j`.
pub fn quad_shriek_compose(outer: &Rect, inners: &[Rect]) -> Result<Rect, ModelError> {
    if inners.len() != outer.n {
        return Err(ModelError::ArityMismatch {
            expected: outer.n,
            got: inners.len(),
        });
    }
    let before = |pos: usize| inners[..pos - 1].iter().map(|r| r.n).sum::<usize>();
    Ok(Rect {
        i: before(outer.i) + inners[outer.i - 1].i,
        j: before(outer.j) + inners[outer.j - 1].j,
        n: inners.iter().map(|r| r.n).sum(),
    })
}

/// The element `(i)_n` of `Dias_n`. The unit is `(1)_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DiasElt {
    pub i: usize,
    pub n: usize,
}

impl DiasElt {
    pub fn new(i: usize, n: usize) -> Result<DiasElt, ModelError> {
        if i == 0 || i > n {
            return Err(ModelError::DiasBounds { i, n });
        }
        Ok(DiasElt { i, n })
    }

    pub fn unit() -> DiasElt {
        DiasElt { i: 1, n: 1 }
    }

    pub fn all(n: usize) -> Vec<DiasElt> {
        (1..=n).map(|i| DiasElt { i, n }).collect()
    }
}

impl fmt::Display for DiasElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})_{}", self.i, self.n)
    }
}

pub fn dias_compose(outer: &DiasElt, inners: &[DiasElt]) -> Result<DiasElt, ModelError> {
    if inners.len() != outer.n {
        return Err(ModelError::ArityMismatch {
            expected: outer.n,
            got: inners.len(),
        });
    }
    let before: usize = inners[..outer.i - 1].iter().map(|d| d.n).sum();
    Ok(DiasElt {
        i: before + inners[outer.i - 1].i,
        n: inners.iter().map(|d| d.n).sum(),
    })
}

/// `(i)_n ⊗ (j)_n ↦ (i,j)_n`.
pub fn dias_pair(a: &DiasElt, b: &DiasElt) -> Rect {
    assert_eq!(a.n, b.n, "tensor factors live in the same arity");
    Rect { i: a.i, j: b.i, n: a.n }
}

/// Compositions of total arity at most `max_n`: an outer arity `m` and
/// inner arities summing to at most `max_n`.
fn arity_profiles(max_n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            out.push(cur.clone());
            return;
        }
        for a in 1..=remaining.saturating_sub(slots - 1) {
            cur.push(a);
            go(remaining - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for m in 1..=max_n {
        go(max_n, m, &mut Vec::new(), &mut out);
    }
    out
}

fn product_of<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

/// Checks that `(i)⊗(j) ↦ (i,j)` sends componentwise `Dias` composition to
/// `Quad^!` composition, for every composition of total arity `≤ max_n`.
pub fn tensor_iso_check(max_n: usize) -> bool {
    let max_n = max_n.min(MODEL_CAP);
    arity_profiles(max_n).par_iter().all(|arities| {
        let m = arities.len();
        let inner_choices: Vec<Vec<(DiasElt, DiasElt)>> = arities
            .iter()
            .map(|&a| {
                DiasElt::all(a)
                    .into_iter()
                    .flat_map(|x| DiasElt::all(a).into_iter().map(move |y| (x, y)))
                    .collect()
            })
            .collect();
        for inners in product_of(&inner_choices) {
            let left: Vec<DiasElt> = inners.iter().map(|p| p.0).collect();
            let right: Vec<DiasElt> = inners.iter().map(|p| p.1).collect();
            let rects: Vec<Rect> = inners.iter().map(|(a, b)| dias_pair(a, b)).collect();
            for a in DiasElt::all(m) {
                for b in DiasElt::all(m) {
                    let lhs = dias_pair(
                        &dias_compose(&a, &left).expect("arity matches"),
                        &dias_compose(&b, &right).expect("arity matches"),
                    );
                    let rhs = quad_shriek_compose(&dias_pair(&a, &b), &rects).expect("arity matches");
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    })
}

/// Value of a `Quad^!` tree monomial in the square operad, generators
/// sent to [`Rect::generator`].
pub fn eval_quad_shriek_tree(m: &TreeMonomial) -> Rect {
    match m.split() {
        None => Rect::unit(),
        Some((g, l, r)) => quad_shriek_compose(
            &Rect::generator(Op::from_index(g)),
            &[eval_quad_shriek_tree(&l), eval_quad_shriek_tree(&r)],
        )
        .expect("binary vertex"),
    }
}

/// Value of a `Quad^!` tree monomial in `A_R` with every leaf at `(1,1)_1`.
pub fn eval_in_squares(m: &TreeMonomial) -> Rect {
    match m.split() {
        None => Rect::unit(),
        Some((g, l, r)) => rect_product(Op::from_index(g), &eval_in_squares(&l), &eval_in_squares(&r)),
    }
}

/// A square together with one decoration per unit of degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DecoratedRect<D> {
    pub rect: Rect,
    pub decorations: Vec<D>,
}

impl<D: Clone> DecoratedRect<D> {
    pub fn new(rect: Rect, decorations: Vec<D>) -> Result<Self, ModelError> {
        if decorations.len() != rect.n {
            return Err(ModelError::DecorationLength {
                got: decorations.len(),
                n: rect.n,
            });
        }
        Ok(DecoratedRect { rect, decorations })
    }
}

pub fn decorated_rect_product<D: Clone>(op: Op, a: &DecoratedRect<D>, b: &DecoratedRect<D>) -> DecoratedRect<D> {
    let mut decorations = a.decorations.clone();
    decorations.extend(b.decorations.iter().cloned());
    DecoratedRect {
        rect: rect_product(op, &a.rect, &b.rect),
        decorations,
    }
}

/// Decorated squares as a dual quadri-algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct DecoratedSquares;

impl Space for DecoratedSquares {
    type Basis = DecoratedRect<char>;
}

impl QuadriOps for DecoratedSquares {
    fn product(&self, op: Op, a: &DecoratedRect<char>, b: &DecoratedRect<char>) -> LinComb<DecoratedRect<char>> {
        LinComb::basis(decorated_rect_product(op, a, b))
    }
}
