//! Generic checker for quadri-algebras, dual quadri-algebras,
//! quadri-coalgebras and quadri-bialgebras given by evaluators on a basis.
//!
//! Every check returns the list of defects (left side minus right side of
//! each identity) instead of a boolean, so failures can be inspected.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::LinComb;

/// The four elementary products (or coproducts). The derived `Ord` is the
/// generator order `↘ < ↗ < ↙ < ↖` used for rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Op {
    Se,
    Ne,
    Sw,
    Nw,
}

impl Op {
    /// Display order ↖, ↙, ↘, ↗.
    pub const ALL: [Op; 4] = [Op::Nw, Op::Sw, Op::Se, Op::Ne];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(i: u8) -> Op {
        [Op::Se, Op::Ne, Op::Sw, Op::Nw][i as usize]
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Nw => "nw",
            Op::Sw => "sw",
            Op::Se => "se",
            Op::Ne => "ne",
        }
    }

    pub fn symbol(self) -> &'static str {
        Kind::from(self).symbol()
    }

    /// Factorization through the two dendriform structures:
    /// `↖ = ↑⊗←`, `↗ = ↑⊗→`, `↙ = ↓⊗←`, `↘ = ↓⊗→`.
    pub fn split(self) -> (Kind, Kind) {
        match self {
            Op::Nw => (Kind::Up, Kind::Left),
            Op::Ne => (Kind::Up, Kind::Right),
            Op::Sw => (Kind::Down, Kind::Left),
            Op::Se => (Kind::Down, Kind::Right),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Elementary and derived product kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    Nw,
    Sw,
    Se,
    Ne,
    Left,
    Right,
    Up,
    Down,
    Star,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Nw,
        Kind::Sw,
        Kind::Se,
        Kind::Ne,
        Kind::Left,
        Kind::Right,
        Kind::Up,
        Kind::Down,
        Kind::Star,
    ];

    /// Elementary summands. Coproducts use the same decomposition, so
    /// `Δ_← = Δ_↖ + Δ_↙` is the transpose of `← = ↖ + ↙`.
    pub fn ops(self) -> &'static [Op] {
        match self {
            Kind::Nw => &[Op::Nw],
            Kind::Sw => &[Op::Sw],
            Kind::Se => &[Op::Se],
            Kind::Ne => &[Op::Ne],
            Kind::Left => &[Op::Nw, Op::Sw],
            Kind::Right => &[Op::Se, Op::Ne],
            Kind::Up => &[Op::Nw, Op::Ne],
            Kind::Down => &[Op::Sw, Op::Se],
            Kind::Star => &Op::ALL,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kind::Nw => "↖",
            Kind::Sw => "↙",
            Kind::Se => "↘",
            Kind::Ne => "↗",
            Kind::Left => "←",
            Kind::Right => "→",
            Kind::Up => "↑",
            Kind::Down => "↓",
            Kind::Star => "⋆",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Nw => "nw",
            Kind::Sw => "sw",
            Kind::Se => "se",
            Kind::Ne => "ne",
            Kind::Left => "left",
            Kind::Right => "right",
            Kind::Up => "up",
            Kind::Down => "down",
            Kind::Star => "star",
        }
    }
}

impl From<Op> for Kind {
    fn from(op: Op) -> Kind {
        match op {
            Op::Nw => Kind::Nw,
            Op::Sw => Kind::Sw,
            Op::Se => Kind::Se,
            Op::Ne => Kind::Ne,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub trait BasisKey: Ord + Clone + fmt::Debug + Send + Sync {}
impl<T: Ord + Clone + fmt::Debug + Send + Sync> BasisKey for T {}

pub trait Space {
    type Basis: BasisKey;
}

/// Four products given on basis elements.
pub trait QuadriOps: Space {
    fn product(&self, op: Op, a: &Self::Basis, b: &Self::Basis) -> LinComb<Self::Basis>;

    fn product_kind(&self, kind: Kind, a: &Self::Basis, b: &Self::Basis) -> LinComb<Self::Basis> {
        let mut out = LinComb::zero();
        for &op in kind.ops() {
            out += &self.product(op, a, b);
        }
        out
    }

    fn mul(
        &self,
        kind: Kind,
        x: &LinComb<Self::Basis>,
        y: &LinComb<Self::Basis>,
    ) -> LinComb<Self::Basis> {
        x.bilinear(y, |a, b| self.product_kind(kind, a, b))
    }
}

/// Four reduced coproducts given on basis elements.
pub trait QuadriCoops: Space {
    fn coproduct(&self, op: Op, c: &Self::Basis) -> LinComb<(Self::Basis, Self::Basis)>;

    fn coproduct_kind(&self, kind: Kind, c: &Self::Basis) -> LinComb<(Self::Basis, Self::Basis)> {
        let mut out = LinComb::zero();
        for &op in kind.ops() {
            out += &self.coproduct(op, c);
        }
        out
    }
}

/// Shape of an arity-3 tree monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Shape3 {
    /// `(x child y) root z`
    Left,
    /// `x root (y child z)`
    Right,
}

/// Arity-3 monomial in possibly derived products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Comb {
    pub shape: Shape3,
    pub root: Kind,
    pub child: Kind,
}

impl Comb {
    pub const fn left(root: Kind, child: Kind) -> Comb {
        Comb {
            shape: Shape3::Left,
            root,
            child,
        }
    }

    pub const fn right(root: Kind, child: Kind) -> Comb {
        Comb {
            shape: Shape3::Right,
            root,
            child,
        }
    }

    pub fn eval<A: QuadriOps + ?Sized>(
        &self,
        alg: &A,
        x: &A::Basis,
        y: &A::Basis,
        z: &A::Basis,
    ) -> LinComb<A::Basis> {
        match self.shape {
            Shape3::Left => {
                let xy = alg.product_kind(self.child, x, y);
                alg.mul(self.root, &xy, &LinComb::basis(z.clone()))
            }
            Shape3::Right => {
                let yz = alg.product_kind(self.child, y, z);
                alg.mul(self.root, &LinComb::basis(x.clone()), &yz)
            }
        }
    }
}

impl fmt::Display for Comb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape3::Left => write!(f, "(x{}y){}z", self.child, self.root),
            Shape3::Right => write!(f, "x{}(y{}z)", self.root, self.child),
        }
    }
}

use Kind::{Down, Left, Ne, Nw, Right, Se, Star, Sw, Up};

/// The nine quadri-algebra axioms, row-major in the 3x3 relation matrix:
/// entry `(i, j)` is `QUAD_AXIOMS[3 * (i - 1) + (j - 1)]`.
pub const QUAD_AXIOMS: [(Comb, Comb); 9] = [
    (Comb::left(Nw, Nw), Comb::right(Nw, Star)),
    (Comb::left(Nw, Ne), Comb::right(Ne, Left)),
    (Comb::left(Ne, Up), Comb::right(Ne, Right)),
    (Comb::left(Nw, Sw), Comb::right(Sw, Up)),
    (Comb::left(Nw, Se), Comb::right(Se, Nw)),
    (Comb::left(Ne, Down), Comb::right(Se, Ne)),
    (Comb::left(Sw, Left), Comb::right(Sw, Down)),
    (Comb::left(Sw, Right), Comb::right(Se, Sw)),
    (Comb::left(Se, Star), Comb::right(Se, Se)),
];

/// The 23 dual quadri-algebra identities as nine groups of monomials that
/// must all agree.
pub const DUAL_QUAD_GROUPS: [&[Comb]; 9] = [
    &[
        Comb::left(Nw, Nw),
        Comb::right(Nw, Nw),
        Comb::right(Nw, Sw),
        Comb::right(Nw, Se),
        Comb::right(Nw, Ne),
    ],
    &[Comb::left(Nw, Ne), Comb::right(Ne, Nw), Comb::right(Ne, Sw)],
    &[
        Comb::left(Ne, Nw),
        Comb::left(Ne, Ne),
        Comb::right(Ne, Se),
        Comb::right(Ne, Ne),
    ],
    &[Comb::left(Nw, Sw), Comb::right(Sw, Nw), Comb::right(Sw, Ne)],
    &[Comb::left(Nw, Se), Comb::right(Se, Nw)],
    &[Comb::left(Ne, Sw), Comb::left(Ne, Se), Comb::right(Se, Ne)],
    &[
        Comb::left(Sw, Nw),
        Comb::left(Sw, Sw),
        Comb::right(Sw, Sw),
        Comb::right(Sw, Se),
    ],
    &[Comb::left(Sw, Se), Comb::left(Sw, Ne), Comb::right(Se, Sw)],
    &[
        Comb::left(Se, Nw),
        Comb::left(Se, Sw),
        Comb::left(Se, Se),
        Comb::left(Se, Ne),
        Comb::right(Se, Se),
    ],
];

/// The nine quadri-coalgebra axioms in the same matrix order as
/// [`QUAD_AXIOMS`]: `(a, b, c, d)` stands for
/// `(Δ_a ⊗ Id)∘Δ_b = (Id ⊗ Δ_c)∘Δ_d`.
pub const QUAD_COAXIOMS: [(Kind, Kind, Kind, Kind); 9] = [
    (Nw, Nw, Star, Nw),
    (Ne, Nw, Left, Ne),
    (Up, Ne, Right, Ne),
    (Sw, Nw, Up, Sw),
    (Se, Nw, Nw, Se),
    (Down, Ne, Ne, Se),
    (Left, Sw, Down, Sw),
    (Right, Sw, Sw, Se),
    (Star, Se, Se, Se),
];

/// The sixteen bialgebra compatibilities `Δ_c(a ♦ b) = Δ_r(a) ♦ Δ_s(b)`
/// as `(c, ♦, r, s)`.
pub const BIALGEBRA_COMPAT: [(Op, Op, Kind, Kind); 16] = {
    const fn row(c: Op, p: Op) -> (Op, Op, Kind, Kind) {
        let r = match c {
            Op::Nw | Op::Ne => Kind::Up,
            Op::Sw | Op::Se => Kind::Down,
        };
        let s = match c {
            Op::Nw | Op::Sw => Kind::Left,
            Op::Ne | Op::Se => Kind::Right,
        };
        (c, p, r, s)
    }
    [
        row(Op::Nw, Op::Nw),
        row(Op::Nw, Op::Sw),
        row(Op::Nw, Op::Se),
        row(Op::Nw, Op::Ne),
        row(Op::Ne, Op::Nw),
        row(Op::Ne, Op::Sw),
        row(Op::Ne, Op::Se),
        row(Op::Ne, Op::Ne),
        row(Op::Sw, Op::Nw),
        row(Op::Sw, Op::Sw),
        row(Op::Sw, Op::Se),
        row(Op::Sw, Op::Ne),
        row(Op::Se, Op::Nw),
        row(Op::Se, Op::Sw),
        row(Op::Se, Op::Se),
        row(Op::Se, Op::Ne),
    ]
};

/// Defects of the nine quadri-algebra axioms on `(x, y, z)`.
pub fn check_quadri_axioms<A: QuadriOps + ?Sized>(
    alg: &A,
    x: &A::Basis,
    y: &A::Basis,
    z: &A::Basis,
) -> Vec<LinComb<A::Basis>> {
    QUAD_AXIOMS
        .iter()
        .map(|(l, r)| l.eval(alg, x, y, z) - r.eval(alg, x, y, z))
        .collect()
}

/// Defects of the 23 dual quadri-algebra identities, tagged with their
/// group number `1..=9`. Within a group every monomial is compared to the
/// first one.
pub fn check_dual_quadri_axioms<A: QuadriOps + ?Sized>(
    alg: &A,
    x: &A::Basis,
    y: &A::Basis,
    z: &A::Basis,
) -> Vec<(usize, LinComb<A::Basis>)> {
    let mut out = Vec::with_capacity(23);
    for (g, group) in DUAL_QUAD_GROUPS.iter().enumerate() {
        let first = group[0].eval(alg, x, y, z);
        for m in &group[1..] {
            out.push((g + 1, first.clone() - m.eval(alg, x, y, z)));
        }
    }
    out
}

/// Defects of the three dendriform axioms for the pair `(prec, succ)`.
pub fn dendriform_defects<A: QuadriOps + ?Sized>(
    alg: &A,
    prec: Kind,
    succ: Kind,
    x: &A::Basis,
    y: &A::Basis,
    z: &A::Basis,
) -> [LinComb<A::Basis>; 3] {
    let b = |v: &A::Basis| LinComb::basis(v.clone());
    let both = |u: &LinComb<A::Basis>, v: &LinComb<A::Basis>| {
        alg.mul(prec, u, v) + alg.mul(succ, u, v)
    };
    let xy_p = alg.mul(prec, &b(x), &b(y));
    let xy_s = alg.mul(succ, &b(x), &b(y));
    let yz_p = alg.mul(prec, &b(y), &b(z));
    let yz_s = alg.mul(succ, &b(y), &b(z));
    [
        alg.mul(prec, &xy_p, &b(z)) - alg.mul(prec, &b(x), &both(&b(y), &b(z))),
        alg.mul(prec, &xy_s, &b(z)) - alg.mul(succ, &b(x), &yz_p),
        alg.mul(succ, &both(&b(x), &b(y)), &b(z)) - alg.mul(succ, &b(x), &yz_s),
    ]
}

/// Associativity defect `(x⋆y)⋆z − x⋆(y⋆z)`.
pub fn star_associator<A: QuadriOps + ?Sized>(
    alg: &A,
    x: &A::Basis,
    y: &A::Basis,
    z: &A::Basis,
) -> LinComb<A::Basis> {
    Comb::left(Star, Star).eval(alg, x, y, z) - Comb::right(Star, Star).eval(alg, x, y, z)
}

fn apply_left<C: QuadriCoops + ?Sized>(
    coalg: &C,
    kind: Kind,
    t: &LinComb<(C::Basis, C::Basis)>,
) -> LinComb<(C::Basis, C::Basis, C::Basis)> {
    t.flat_map(|(a, b)| {
        coalg
            .coproduct_kind(kind, a)
            .map_keys(|(x, y)| (x.clone(), y.clone(), b.clone()))
    })
}

fn apply_right<C: QuadriCoops + ?Sized>(
    coalg: &C,
    kind: Kind,
    t: &LinComb<(C::Basis, C::Basis)>,
) -> LinComb<(C::Basis, C::Basis, C::Basis)> {
    t.flat_map(|(a, b)| {
        coalg
            .coproduct_kind(kind, b)
            .map_keys(|(x, y)| (a.clone(), x.clone(), y.clone()))
    })
}

/// Defects of the nine quadri-coalgebra axioms on `c`.
pub fn check_quadri_coaxioms<C: QuadriCoops + ?Sized>(
    coalg: &C,
    c: &C::Basis,
) -> Vec<LinComb<(C::Basis, C::Basis, C::Basis)>> {
    QUAD_COAXIOMS
        .iter()
        .map(|&(a, b, cc, d)| {
            let lhs = apply_left(coalg, a, &coalg.coproduct_kind(b, c));
            let rhs = apply_right(coalg, cc, &coalg.coproduct_kind(d, c));
            lhs - rhs
        })
        .collect()
}

/// Coassociativity defect of `Δ_⋆`.
pub fn star_coassociator<C: QuadriCoops + ?Sized>(
    coalg: &C,
    c: &C::Basis,
) -> LinComb<(C::Basis, C::Basis, C::Basis)> {
    let d = coalg.coproduct_kind(Star, c);
    apply_left(coalg, Star, &d) - apply_right(coalg, Star, &d)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadriError {
    #[error("the product of the unit with itself is undefined")]
    UnitTimesUnit,
    #[error("1⊗1 does not belong to the augmented tensor square")]
    UnitTensorUnit,
}

/// Basis element of `K ⊕ A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unital<B> {
    One,
    Elem(B),
}

impl<B: fmt::Display> fmt::Display for Unital<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unital::One => write!(f, "1"),
            Unital::Elem(b) => write!(f, "{b}"),
        }
    }
}

/// Basis element of `A ⊗̄ A`; `(One, One)` never occurs.
pub type UnitalPair<B> = (Unital<B>, Unital<B>);

/// Products extended to `K ⊕ A`: `a↖1 = a`, `1↘a = a`, every other
/// product involving the unit vanishes.
pub fn unit_product<A: QuadriOps + ?Sized>(
    alg: &A,
    kind: Kind,
    a: &Unital<A::Basis>,
    b: &Unital<A::Basis>,
) -> Result<LinComb<Unital<A::Basis>>, QuadriError> {
    match (a, b) {
        (Unital::One, Unital::One) => Err(QuadriError::UnitTimesUnit),
        (Unital::Elem(x), Unital::Elem(y)) => {
            Ok(alg.product_kind(kind, x, y).map_keys(|k| Unital::Elem(k.clone())))
        }
        (Unital::Elem(_), Unital::One) if kind.ops().contains(&Op::Nw) => {
            Ok(LinComb::basis(a.clone()))
        }
        (Unital::One, Unital::Elem(_)) if kind.ops().contains(&Op::Se) => {
            Ok(LinComb::basis(b.clone()))
        }
        _ => Ok(LinComb::zero()),
    }
}

fn unit_product_lc<A: QuadriOps + ?Sized>(
    alg: &A,
    kind: Kind,
    a: &Unital<A::Basis>,
    b: &Unital<A::Basis>,
) -> LinComb<Unital<A::Basis>> {
    unit_product(alg, kind, a, b).expect("unit pairs are filtered by the caller")
}

/// Product of two basis elements of `A ⊗̄ A`.
pub fn unital_product<A: QuadriOps + ?Sized>(
    alg: &A,
    kind: Kind,
    p: &UnitalPair<A::Basis>,
    q: &UnitalPair<A::Basis>,
) -> Result<LinComb<UnitalPair<A::Basis>>, QuadriError> {
    use Unital::One;
    if matches!(p, (One, One)) || matches!(q, (One, One)) {
        return Err(QuadriError::UnitTensorUnit);
    }
    let mut out = LinComb::zero();
    for &op in kind.ops() {
        let term = if matches!((&p.0, &q.0), (One, One)) {
            unit_product_lc(alg, op.into(), &p.1, &q.1).map_keys(|y| (One, y.clone()))
        } else if matches!((&p.1, &q.1), (One, One)) {
            unit_product_lc(alg, op.into(), &p.0, &q.0).map_keys(|x| (x.clone(), One))
        } else {
            let (first, second) = op.split();
            let xs = unit_product_lc(alg, first, &p.0, &q.0);
            if xs.is_zero() {
                continue;
            }
            xs.tensor(&unit_product_lc(alg, second, &p.1, &q.1))
        };
        out += &term;
    }
    Ok(out)
}

/// Bilinear extension of [`unital_product`].
pub fn unital_mul<A: QuadriOps + ?Sized>(
    alg: &A,
    kind: Kind,
    x: &LinComb<UnitalPair<A::Basis>>,
    y: &LinComb<UnitalPair<A::Basis>>,
) -> Result<LinComb<UnitalPair<A::Basis>>, QuadriError> {
    let mut err = None;
    let out = x.bilinear(y, |p, q| match unital_product(alg, kind, p, q) {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            LinComb::zero()
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Lifts a reduced coproduct value into `A ⊗̄ A`.
pub fn lift_pairs<B: BasisKey>(t: &LinComb<(B, B)>) -> LinComb<UnitalPair<B>> {
    t.map_keys(|(a, b)| (Unital::Elem(a.clone()), Unital::Elem(b.clone())))
}

/// Coproduct extended by the unit: `Δ_↖(a) = Δ̃_↖(a) + a⊗1`,
/// `Δ_↘(a) = Δ̃_↘(a) + 1⊗a`, the other two unchanged.
pub fn extended_coproduct<C: QuadriCoops + ?Sized>(
    coalg: &C,
    kind: Kind,
    a: &C::Basis,
) -> LinComb<UnitalPair<C::Basis>> {
    let mut out = lift_pairs(&coalg.coproduct_kind(kind, a));
    if kind.ops().contains(&Op::Nw) {
        out.add_term(
            (Unital::Elem(a.clone()), Unital::One),
            crate::exactlin::int(1),
        );
    }
    if kind.ops().contains(&Op::Se) {
        out.add_term(
            (Unital::One, Unital::Elem(a.clone())),
            crate::exactlin::int(1),
        );
    }
    out
}

/// Defects of the sixteen compatibilities on `(a, b)`, in the order of
/// [`BIALGEBRA_COMPAT`].
pub fn check_bialgebra_compat<A>(
    alg: &A,
    a: &A::Basis,
    b: &A::Basis,
) -> Vec<LinComb<UnitalPair<A::Basis>>>
where
    A: QuadriOps + QuadriCoops + ?Sized,
{
    BIALGEBRA_COMPAT
        .iter()
        .map(|&(c, p, r, s)| {
            let prod = alg.product(p, a, b);
            let lhs = prod.flat_map(|w| extended_coproduct(alg, c.into(), w));
            let rhs = unital_mul(
                alg,
                p.into(),
                &extended_coproduct(alg, r, a),
                &extended_coproduct(alg, s, b),
            )
            .expect("coproducts never produce 1⊗1");
            lhs - rhs
        })
        .collect()
}

/// Tally of an exhaustive defect scan.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DefectSummary {
    /// Number of basis inputs examined.
    pub inputs: usize,
    /// Number of individual identities evaluated.
    pub identities: usize,
    /// Number of identities with a nonzero defect.
    pub nonzero: usize,
    pub first_failure: Option<String>,
}

impl DefectSummary {
    pub fn passed(&self) -> bool {
        self.nonzero == 0
    }

    fn absorb<T: fmt::Debug, K: Ord + Clone + fmt::Debug>(&mut self, input: T, defects: &[LinComb<K>]) {
        self.inputs += 1;
        self.identities += defects.len();
        for (i, d) in defects.iter().enumerate() {
            if !d.is_zero() {
                self.nonzero += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{input:?} identity #{}: {d:?}", i + 1));
                }
            }
        }
    }

    fn merge(mut self, other: DefectSummary) -> DefectSummary {
        self.inputs += other.inputs;
        self.identities += other.identities;
        self.nonzero += other.nonzero;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self
    }
}

/// All ordered triples of basis elements with degrees `>= 1` summing to at
/// most `max_total`.
pub fn graded_triples<B: Clone>(
    basis: &dyn Fn(usize) -> Vec<B>,
    max_total: usize,
) -> Vec<(B, B, B)> {
    let by_degree: Vec<Vec<B>> = (0..=max_total).map(|d| if d == 0 { vec![] } else { basis(d) }).collect();
    let mut out = Vec::new();
    for p in 1..=max_total {
        for q in 1..=max_total.saturating_sub(p) {
            for r in 1..=max_total.saturating_sub(p + q) {
                for x in &by_degree[p] {
                    for y in &by_degree[q] {
                        for z in &by_degree[r] {
                            out.push((x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

/// All ordered pairs with degrees `>= 1` summing to at most `max_total`.
pub fn graded_pairs<B: Clone>(basis: &dyn Fn(usize) -> Vec<B>, max_total: usize) -> Vec<(B, B)> {
    let by_degree: Vec<Vec<B>> = (0..=max_total).map(|d| if d == 0 { vec![] } else { basis(d) }).collect();
    let mut out = Vec::new();
    for p in 1..=max_total {
        for q in 1..=max_total.saturating_sub(p) {
            for x in &by_degree[p] {
                for y in &by_degree[q] {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
    }
    out
}

/// Scans the nine axioms over every triple of total degree `<= max_total`.
pub fn scan_axioms<A>(alg: &A, basis: &dyn Fn(usize) -> Vec<A::Basis>, max_total: usize) -> DefectSummary
where
    A: QuadriOps + Sync + ?Sized,
{
    graded_triples(basis, max_total)
        .into_par_iter()
        .map(|(x, y, z)| {
            let mut s = DefectSummary::default();
            let d = check_quadri_axioms(alg, &x, &y, &z);
            s.absorb((&x, &y, &z), &d);
            s
        })
        .reduce(DefectSummary::default, DefectSummary::merge)
}

/// Scans the 23 dual identities over every triple of total degree `<= max_total`.
pub fn scan_dual_axioms<A>(
    alg: &A,
    basis: &dyn Fn(usize) -> Vec<A::Basis>,
    max_total: usize,
) -> DefectSummary
where
    A: QuadriOps + Sync + ?Sized,
{
    graded_triples(basis, max_total)
        .into_par_iter()
        .map(|(x, y, z)| {
            let mut s = DefectSummary::default();
            let d: Vec<_> = check_dual_quadri_axioms(alg, &x, &y, &z)
                .into_iter()
                .map(|(_, v)| v)
                .collect();
            s.absorb((&x, &y, &z), &d);
            s
        })
        .reduce(DefectSummary::default, DefectSummary::merge)
}

/// Scans the nine coaxioms over every basis element of degree `<= max_degree`.
pub fn scan_coaxioms<C>(coalg: &C, basis: &dyn Fn(usize) -> Vec<C::Basis>, max_degree: usize) -> DefectSummary
where
    C: QuadriCoops + Sync + ?Sized,
{
    (1..=max_degree)
        .flat_map(basis)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|c| {
            let mut s = DefectSummary::default();
            let d = check_quadri_coaxioms(coalg, &c);
            s.absorb(&c, &d);
            s
        })
        .reduce(DefectSummary::default, DefectSummary::merge)
}

/// Scans the sixteen compatibilities over every pair of total degree `<= max_total`.
pub fn scan_bialgebra<A>(alg: &A, basis: &dyn Fn(usize) -> Vec<A::Basis>, max_total: usize) -> DefectSummary
where
    A: QuadriOps + QuadriCoops + Sync + ?Sized,
{
    graded_pairs(basis, max_total)
        .into_par_iter()
        .map(|(a, b)| {
            let mut s = DefectSummary::default();
            let d = check_bialgebra_compat(alg, &a, &b);
            s.absorb((&a, &b), &d);
            s
        })
        .reduce(DefectSummary::default, DefectSummary::merge)
}

/// Quadri-algebra given by a closure, for controls and ad-hoc models.
pub struct FnAlgebra<B, F> {
    f: F,
    _basis: std::marker::PhantomData<fn() -> B>,
}

impl<B, F> FnAlgebra<B, F>
where
    B: BasisKey,
    F: Fn(Op, &B, &B) -> LinComb<B>,
{
    pub fn new(f: F) -> Self {
        FnAlgebra {
            f,
            _basis: std::marker::PhantomData,
        }
    }
}

impl<B: BasisKey, F> Space for FnAlgebra<B, F> {
    type Basis = B;
}

impl<B, F> QuadriOps for FnAlgebra<B, F>
where
    B: BasisKey,
    F: Fn(Op, &B, &B) -> LinComb<B>,
{
    fn product(&self, op: Op, a: &B, b: &B) -> LinComb<B> {
        (self.f)(op, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Free words on {1, 2} of length <= 4, with concatenation as the
    /// product for every kind: associative but not quadri.
    fn concat_all() -> impl QuadriOps<Basis = Vec<u8>> {
        FnAlgebra::new(|_op, a: &Vec<u8>, b: &Vec<u8>| {
            let mut w = a.clone();
            w.extend(b);
            LinComb::basis(w)
        })
    }

    #[test]
    fn dual_group_sizes() {
        let sizes: Vec<usize> = DUAL_QUAD_GROUPS.iter().map(|g| g.len() - 1).collect();
        assert_eq!(sizes, vec![4, 2, 3, 2, 1, 2, 3, 2, 4]);
        assert_eq!(sizes.iter().sum::<usize>(), 23);
    }

    #[test]
    fn derived_kinds() {
        assert_eq!(Kind::Left.ops(), &[Op::Nw, Op::Sw]);
        assert_eq!(Kind::Right.ops(), &[Op::Se, Op::Ne]);
        assert_eq!(Kind::Up.ops(), &[Op::Nw, Op::Ne]);
        assert_eq!(Kind::Down.ops(), &[Op::Sw, Op::Se]);
        assert_eq!(Kind::Star.ops().len(), 4);
        assert!(Op::Se < Op::Ne && Op::Ne < Op::Sw && Op::Sw < Op::Nw);
    }

    #[test]
    fn concatenation_is_dual_quadri_but_not_quadri() {
        // With every product equal to concatenation all 23 dual monomials
        // agree, while (1,1) reads xyz = 4·xyz.
        let alg = concat_all();
        let (x, y, z) = (vec![1], vec![2], vec![1]);
        let d = check_quadri_axioms(&alg, &x, &y, &z);
        assert!(!d[0].is_zero());
        assert!(check_dual_quadri_axioms(&alg, &x, &y, &z)
            .iter()
            .all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn distinguishing_ops_breaks_dual_identities() {
        let alg = FnAlgebra::new(|op: Op, a: &Vec<u8>, b: &Vec<u8>| {
            let mut w = a.clone();
            if op == Op::Nw {
                w.extend(b);
            } else {
                w.extend(b.iter().rev());
            }
            LinComb::basis(w)
        });
        let dd = check_dual_quadri_axioms(&alg, &vec![1], &vec![1, 2], &vec![2, 1, 1]);
        assert!(dd.iter().any(|(_, v)| !v.is_zero()));
    }

    #[test]
    fn unit_rules() {
        let alg = concat_all();
        let a = Unital::Elem(vec![1u8]);
        assert_eq!(
            unit_product(&alg, Kind::Nw, &a, &Unital::One).unwrap(),
            LinComb::basis(a.clone())
        );
        assert!(unit_product(&alg, Kind::Sw, &Unital::One, &a).unwrap().is_zero());
        assert!(unit_product(&alg, Kind::Ne, &a, &Unital::One).unwrap().is_zero());
        assert_eq!(
            unit_product(&alg, Kind::Se, &Unital::One, &a).unwrap(),
            LinComb::basis(a.clone())
        );
        assert_eq!(
            unit_product(&alg, Kind::Nw, &Unital::One, &Unital::One),
            Err(QuadriError::UnitTimesUnit)
        );
        let p = (a.clone(), Unital::One);
        let q = (Unital::Elem(vec![2u8]), Unital::One);
        // (a⊗1)↘(a'⊗1) = (a↘a')⊗1
        assert_eq!(
            unital_product(&alg, Kind::Se, &p, &q).unwrap(),
            LinComb::basis((Unital::Elem(vec![1, 2]), Unital::One))
        );
        assert_eq!(
            unital_product(&alg, Kind::Se, &(Unital::One, Unital::One), &q),
            Err(QuadriError::UnitTensorUnit)
        );
        // mixed: (a⊗1)↖(1⊗b) = (a↑1)⊗(1←b) = a⊗0
        let r = (Unital::One, Unital::Elem(vec![2u8]));
        assert!(unital_product(&alg, Kind::Nw, &p, &r).unwrap().is_zero());
        // (a⊗1)↗(1⊗b) = (a↑1)⊗(1→b) = a⊗b
        assert_eq!(
            unital_product(&alg, Kind::Ne, &p, &r).unwrap(),
            LinComb::basis((a, Unital::Elem(vec![2u8])))
        );
    }

    #[test]
    fn compat_table_shape() {
        for (c, _, r, s) in BIALGEBRA_COMPAT {
            let expect_r = if matches!(c, Op::Nw | Op::Ne) { Kind::Up } else { Kind::Down };
            let expect_s = if matches!(c, Op::Nw | Op::Sw) { Kind::Left } else { Kind::Right };
            assert_eq!((r, s), (expect_r, expect_s));
        }
        let prods: std::collections::BTreeSet<_> =
            BIALGEBRA_COMPAT.iter().map(|&(c, p, _, _)| (c, p)).collect();
        assert_eq!(prods.len(), 16);
    }
}
