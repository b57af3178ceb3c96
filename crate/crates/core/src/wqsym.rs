//! The quadri-bialgebra of packed words.
//!
//! Products split the quasi-shuffle product according to where the last
//! `1` and the last maximal letter of the result fall. Coproducts split the
//! alphabet cuts according to the first and last letters.

use serde::Serialize;

use crate::exactlin::LinComb;
use crate::quadri::{Kind, Op, QuadriCoops, QuadriOps, Space};
use crate::words::{pack, restrict, PackedWord};

pub type WqsymElement = LinComb<PackedWord>;

/// Positions (1-based) of the last `1` and of the last maximal letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WordStats {
    pub m: usize,
    #[serde(rename = "M")]
    pub big_m: usize,
}

impl WordStats {
    pub fn of(w: &PackedWord) -> WordStats {
        let letters = w.letters();
        let max = w.max_letter();
        let last = |v: u32| letters.iter().rposition(|&x| x == v).expect("letter occurs") + 1;
        WordStats {
            m: last(1),
            big_m: last(max),
        }
    }

    /// Which of the four products a quasi-shuffle with prefix length `k`
    /// contributes to.
    pub fn op(&self, k: usize) -> Op {
        match (self.m <= k, self.big_m <= k) {
            (true, true) => Op::Nw,
            (true, false) => Op::Ne,
            (false, true) => Op::Sw,
            (false, false) => Op::Se,
        }
    }
}

/// Every packed word whose first `|u|` letters pack to `u` and whose last
/// `|v|` letters pack to `v`.
///
/// The letters `1..=max(u)` and `1..=max(v)` are merged into one chain,
/// each step taking the next letter of one side or fusing the next letters
/// of both.
pub fn enumerate_quasi_shuffles(u: &PackedWord, v: &PackedWord) -> Vec<PackedWord> {
    let (a, b) = (u.max_letter() as usize, v.max_letter() as usize);
    let mut out = Vec::new();
    let mut f = vec![0u32; a + 1];
    let mut g = vec![0u32; b + 1];
    fuse(u, v, 0, 0, 0, &mut f, &mut g, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn fuse(
    u: &PackedWord,
    v: &PackedWord,
    i: usize,
    j: usize,
    next: u32,
    f: &mut Vec<u32>,
    g: &mut Vec<u32>,
    out: &mut Vec<PackedWord>,
) {
    let (a, b) = (f.len() - 1, g.len() - 1);
    if i == a && j == b {
        let mut w: Vec<u32> = u.letters().iter().map(|&x| f[x as usize]).collect();
        w.extend(v.letters().iter().map(|&y| g[y as usize]));
        out.push(PackedWord::new(w).expect("merged alphabets are packed"));
        return;
    }
    let value = next + 1;
    if i < a {
        f[i + 1] = value;
        fuse(u, v, i + 1, j, value, f, g, out);
    }
    if j < b {
        g[j + 1] = value;
        fuse(u, v, i, j + 1, value, f, g, out);
    }
    if i < a && j < b {
        f[i + 1] = value;
        g[j + 1] = value;
        fuse(u, v, i + 1, j + 1, value, f, g, out);
    }
}

pub fn wqsym_product(kind: Kind, u: &PackedWord, v: &PackedWord) -> WqsymElement {
    let k = u.len();
    LinComb::from_keys(
        enumerate_quasi_shuffles(u, v)
            .into_iter()
            .filter(|w| kind.ops().contains(&WordStats::of(w).op(k))),
    )
}

/// Whether the alphabet cut at `i` qualifies for `op`, given the first
/// and last letters `first = u(1)` and `last = u(n)`.
pub fn alphabet_cut_qualifies(op: Op, i: u32, first: u32, last: u32) -> bool {
    match op {
        Op::Nw => first <= i && last <= i,
        Op::Sw => last <= i && i < first,
        Op::Se => i < first && i < last,
        Op::Ne => first <= i && i < last,
    }
}

/// Reduced coproduct: `u|[i] ⊗ Pack(u|[max]∖[i])` over qualifying `1 <= i < max(u)`.
pub fn wqsym_coproduct(kind: Kind, u: &PackedWord) -> LinComb<(PackedWord, PackedWord)> {
    let letters = u.letters();
    let (first, last) = (letters[0], letters[letters.len() - 1]);
    LinComb::from_keys(
        (1..u.max_letter())
            .filter(|&i| kind.ops().iter().any(|&op| alphabet_cut_qualifies(op, i, first, last)))
            .map(|i| {
                let (left, right) = restrict(u, i).expect("cut below the maximum");
                (
                    PackedWord::new(left).expect("restriction to an initial alphabet is packed"),
                    pack(&right).expect("nonempty right part"),
                )
            }),
    )
}

/// WQSym restricted to its augmentation ideal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Wqsym;

impl Space for Wqsym {
    type Basis = PackedWord;
}

impl QuadriOps for Wqsym {
    fn product(&self, op: Op, a: &PackedWord, b: &PackedWord) -> WqsymElement {
        wqsym_product(op.into(), a, b)
    }

    fn product_kind(&self, kind: Kind, a: &PackedWord, b: &PackedWord) -> WqsymElement {
        wqsym_product(kind, a, b)
    }
}

impl QuadriCoops for Wqsym {
    fn coproduct(&self, op: Op, c: &PackedWord) -> LinComb<(PackedWord, PackedWord)> {
        wqsym_coproduct(op.into(), c)
    }

    fn coproduct_kind(&self, kind: Kind, c: &PackedWord) -> LinComb<(PackedWord, PackedWord)> {
        wqsym_coproduct(kind, c)
    }
}

pub fn wqsym_basis(n: usize) -> Vec<PackedWord> {
    PackedWord::all(n)
}
