//! Free nonsymmetric operads on binary generators, quadratic presentations,
//! Koszul duality through the signed arity-3 pairing, the black Manin
//! product of binomial presentations, and the morphism `Quad → Dend ⊗ Dend`.
//!
//! Generators are small integers. Their numeric order is the generator
//! order used by the monomial order on trees.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{int, orth_complement, BilinearForm, LinComb, Rational};
use crate::quadri::{Comb, Kind, Op, Shape3, DUAL_QUAD_GROUPS, QUAD_AXIOMS};
use crate::rewrite::RewriteSystem;

/// Largest arity accepted by [`free_basis`].
pub const ARITY_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("leaf position {position} outside 1..={arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("arity {requested} exceeds the cap {cap}")]
    ArityCap { requested: usize, cap: usize },
    #[error("unknown presentation {0:?}")]
    UnknownName(String),
    #[error("relation {index} of {operad} is not of the form left comb − right comb")]
    NotBinomial { operad: String, index: usize },
    #[error("cannot parse tree monomial from {0:?}")]
    Parse(String),
    #[error("generator map has {got} entries, expected {expected}")]
    BadRelabel { got: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Tree {
    Leaf,
    Node(u8, Box<Tree>, Box<Tree>),
}

impl Tree {
    fn paths(&self, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        match self {
            Tree::Leaf => out.push(prefix.clone()),
            Tree::Node(g, l, r) => {
                prefix.push(*g);
                l.paths(prefix, out);
                r.paths(prefix, out);
                prefix.pop();
            }
        }
    }

    fn decorations(&self, out: &mut Vec<u8>) {
        if let Tree::Node(g, l, r) = self {
            l.decorations(out);
            out.push(*g);
            r.decorations(out);
        }
    }
}

/// Planar binary tree whose internal vertices carry generators.
///
/// Ordered by arity, then by the root-to-leaf generator words read from
/// the last leaf backwards, each word compared by length and then
/// lexicographically. In arity 3 this puts every left comb below every
/// right comb and compares root before child.
#[derive(Clone)]
pub struct TreeMonomial {
    tree: Tree,
    key: Vec<u8>,
}

impl TreeMonomial {
    fn from_tree(tree: Tree) -> TreeMonomial {
        let mut paths = Vec::new();
        tree.paths(&mut Vec::new(), &mut paths);
        let mut key = Vec::with_capacity(1 + paths.iter().map(|p| p.len() + 1).sum::<usize>());
        key.push(paths.len() as u8);
        for p in paths.iter().rev() {
            key.push(p.len() as u8);
            key.extend(p);
        }
        TreeMonomial { tree, key }
    }

    pub fn leaf() -> TreeMonomial {
        TreeMonomial::from_tree(Tree::Leaf)
    }

    pub fn node(gen: u8, left: TreeMonomial, right: TreeMonomial) -> TreeMonomial {
        TreeMonomial::from_tree(Tree::Node(gen, Box::new(left.tree), Box::new(right.tree)))
    }

    pub fn corolla(gen: u8) -> TreeMonomial {
        TreeMonomial::node(gen, TreeMonomial::leaf(), TreeMonomial::leaf())
    }

    /// `(x child y) root z`
    pub fn left_comb(root: u8, child: u8) -> TreeMonomial {
        TreeMonomial::node(root, TreeMonomial::corolla(child), TreeMonomial::leaf())
    }

    /// `x root (y child z)`
    pub fn right_comb(root: u8, child: u8) -> TreeMonomial {
        TreeMonomial::node(root, TreeMonomial::leaf(), TreeMonomial::corolla(child))
    }

    pub fn comb(shape: Shape3, root: u8, child: u8) -> TreeMonomial {
        match shape {
            Shape3::Left => TreeMonomial::left_comb(root, child),
            Shape3::Right => TreeMonomial::right_comb(root, child),
        }
    }

    /// Arity-3 monomial as `(shape, root, child)`.
    pub fn as_comb(&self) -> Option<(Shape3, u8, u8)> {
        match &self.tree {
            Tree::Node(r, l, rt) => match (&**l, &**rt) {
                (Tree::Node(c, a, b), Tree::Leaf) if **a == Tree::Leaf && **b == Tree::Leaf => {
                    Some((Shape3::Left, *r, *c))
                }
                (Tree::Leaf, Tree::Node(c, a, b)) if **a == Tree::Leaf && **b == Tree::Leaf => {
                    Some((Shape3::Right, *r, *c))
                }
                _ => None,
            },
            Tree::Leaf => None,
        }
    }

    pub fn arity(&self) -> usize {
        self.key[0] as usize
    }

    pub fn is_leaf(&self) -> bool {
        self.tree == Tree::Leaf
    }

    pub fn root(&self) -> Option<u8> {
        match &self.tree {
            Tree::Leaf => None,
            Tree::Node(g, _, _) => Some(*g),
        }
    }

    /// Root generator with the two subtrees.
    pub fn split(&self) -> Option<(u8, TreeMonomial, TreeMonomial)> {
        match &self.tree {
            Tree::Leaf => None,
            Tree::Node(g, l, r) => Some((
                *g,
                TreeMonomial::from_tree((**l).clone()),
                TreeMonomial::from_tree((**r).clone()),
            )),
        }
    }

    /// Generators of the internal vertices in left-to-right infix order.
    pub fn decorations(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.tree.decorations(&mut out);
        out
    }

    /// Bracket notation of the underlying shape, e.g. `((xx)x)`.
    pub fn shape(&self) -> String {
        fn go(t: &Tree, s: &mut String) {
            match t {
                Tree::Leaf => s.push('x'),
                Tree::Node(_, l, r) => {
                    s.push('(');
                    go(l, s);
                    go(r, s);
                    s.push(')');
                }
            }
        }
        let mut s = String::new();
        go(&self.tree, &mut s);
        s
    }

    /// Inverse of [`Self::shape`] together with [`Self::decorations`].
    pub fn from_parts(shape: &str, decorations: &[u8]) -> Result<TreeMonomial, OperadError> {
        fn go(chars: &[char], pos: &mut usize, decos: &[u8], d: &mut usize) -> Option<Tree> {
            match chars.get(*pos)? {
                'x' => {
                    *pos += 1;
                    Some(Tree::Leaf)
                }
                '(' => {
                    *pos += 1;
                    let l = go(chars, pos, decos, d)?;
                    let g = *decos.get(*d)?;
                    *d += 1;
                    let r = go(chars, pos, decos, d)?;
                    if chars.get(*pos) != Some(&')') {
                        return None;
                    }
                    *pos += 1;
                    Some(Tree::Node(g, Box::new(l), Box::new(r)))
                }
                _ => None,
            }
        }
        let chars: Vec<char> = shape.chars().filter(|c| !c.is_whitespace()).collect();
        let (mut pos, mut d) = (0, 0);
        let err = || OperadError::Parse(shape.to_string());
        let tree = go(&chars, &mut pos, decorations, &mut d).ok_or_else(err)?;
        if pos != chars.len() || d != decorations.len() {
            return Err(err());
        }
        Ok(TreeMonomial::from_tree(tree))
    }

    /// Infix rendering with generator names, e.g. `((x↙x)↖x)`.
    pub fn render(&self, names: &[String]) -> String {
        fn go(t: &Tree, names: &[String], s: &mut String) {
            match t {
                Tree::Leaf => s.push('x'),
                Tree::Node(g, l, r) => {
                    s.push('(');
                    go(l, names, s);
                    match names.get(*g as usize) {
                        Some(n) => s.push_str(n),
                        None => s.push_str(&format!("g{g}")),
                    }
                    go(r, names, s);
                    s.push(')');
                }
            }
        }
        let mut s = String::new();
        go(&self.tree, names, &mut s);
        s
    }

    /// Parses the output of [`Self::render`].
    pub fn parse(text: &str, names: &[String]) -> Result<TreeMonomial, OperadError> {
        let err = || OperadError::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut shape = String::new();
        let mut decos = Vec::new();
        let mut rest = compact.as_str();
        while let Some(c) = rest.chars().next() {
            if c == '(' || c == ')' || c == 'x' {
                shape.push(c);
                rest = &rest[c.len_utf8()..];
                continue;
            }
            let (idx, name) = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len())
                .ok_or_else(err)?;
            decos.push(idx as u8);
            rest = &rest[name.len()..];
        }
        TreeMonomial::from_parts(&shape, &decos).map_err(|_| err())
    }

    /// Partial composition `self ∘_position inner`.
    pub fn graft(&self, position: usize, inner: &TreeMonomial) -> Result<TreeMonomial, OperadError> {
        let arity = self.arity();
        if position == 0 || position > arity {
            return Err(OperadError::PositionOutOfRange { position, arity });
        }
        fn go(t: &Tree, pos: &mut usize, inner: &Tree) -> Tree {
            match t {
                Tree::Leaf => {
                    *pos = pos.wrapping_sub(1);
                    if *pos == 0 {
                        inner.clone()
                    } else {
                        Tree::Leaf
                    }
                }
                Tree::Node(g, l, r) => {
                    let l2 = go(l, pos, inner);
                    let r2 = go(r, pos, inner);
                    Tree::Node(*g, Box::new(l2), Box::new(r2))
                }
            }
        }
        let mut pos = position;
        Ok(TreeMonomial::from_tree(go(&self.tree, &mut pos, &inner.tree)))
    }

    /// Applies a generator map to every vertex.
    pub fn relabel(&self, f: &dyn Fn(u8) -> u8) -> TreeMonomial {
        fn go(t: &Tree, f: &dyn Fn(u8) -> u8) -> Tree {
            match t {
                Tree::Leaf => Tree::Leaf,
                Tree::Node(g, l, r) => Tree::Node(f(*g), Box::new(go(l, f)), Box::new(go(r, f))),
            }
        }
        TreeMonomial::from_tree(go(&self.tree, f))
    }

    /// Arity-3 subtrees rooted at a vertex together with one of its
    /// children, as `(path to the vertex, shape, root, child)`. The path is
    /// a list of `false` (left) / `true` (right) steps.
    pub fn edges(&self) -> Vec<(Vec<bool>, Shape3, u8, u8)> {
        fn go(t: &Tree, path: &mut Vec<bool>, out: &mut Vec<(Vec<bool>, Shape3, u8, u8)>) {
            if let Tree::Node(g, l, r) = t {
                if let Tree::Node(c, _, _) = &**l {
                    out.push((path.clone(), Shape3::Left, *g, *c));
                }
                if let Tree::Node(c, _, _) = &**r {
                    out.push((path.clone(), Shape3::Right, *g, *c));
                }
                path.push(false);
                go(l, path, out);
                path.pop();
                path.push(true);
                go(r, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.tree, &mut Vec::new(), &mut out);
        out
    }

    /// Subtree at a path of left/right steps.
    pub fn subtree(&self, path: &[bool]) -> Option<TreeMonomial> {
        let mut t = &self.tree;
        for &step in path {
            match t {
                Tree::Leaf => return None,
                Tree::Node(_, l, r) => t = if step { r } else { l },
            }
        }
        Some(TreeMonomial::from_tree(t.clone()))
    }

    /// Replaces the subtree at `path` by each monomial of `by`.
    pub fn replace_at(&self, path: &[bool], by: &LinComb<TreeMonomial>) -> LinComb<TreeMonomial> {
        fn go(t: &Tree, path: &[bool], by: &Tree) -> Tree {
            match (path.split_first(), t) {
                (None, _) => by.clone(),
                (Some((&step, rest)), Tree::Node(g, l, r)) => {
                    if step {
                        Tree::Node(*g, l.clone(), Box::new(go(r, rest, by)))
                    } else {
                        Tree::Node(*g, Box::new(go(l, rest, by)), r.clone())
                    }
                }
                (Some(_), Tree::Leaf) => panic!("path leaves the tree"),
            }
        }
        by.map_keys(|m| TreeMonomial::from_tree(go(&self.tree, path, &m.tree)))
    }

    /// Substitutes `args` (in leaf order) into the leaves.
    pub fn substitute(&self, args: &[TreeMonomial]) -> TreeMonomial {
        fn go(t: &Tree, args: &mut std::slice::Iter<'_, TreeMonomial>) -> Tree {
            match t {
                Tree::Leaf => args.next().expect("one argument per leaf").tree.clone(),
                Tree::Node(g, l, r) => {
                    let l2 = go(l, args);
                    let r2 = go(r, args);
                    Tree::Node(*g, Box::new(l2), Box::new(r2))
                }
            }
        }
        assert_eq!(args.len(), self.arity());
        TreeMonomial::from_tree(go(&self.tree, &mut args.iter()))
    }
}

impl PartialEq for TreeMonomial {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for TreeMonomial {}

impl std::hash::Hash for TreeMonomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for TreeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TreeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Debug for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.shape(), self.decorations())
    }
}

/// All planar binary tree shapes with `n` leaves (generator 0 everywhere).
pub fn shapes(n: usize) -> Vec<TreeMonomial> {
    fn go(n: usize) -> Vec<Tree> {
        if n == 1 {
            return vec![Tree::Leaf];
        }
        let mut out = Vec::new();
        for a in 1..n {
            for l in go(a) {
                for r in go(n - a) {
                    out.push(Tree::Node(0, Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }
    go(n).into_iter().map(TreeMonomial::from_tree).collect()
}

/// Every monomial of arity `n` on `k` generators, in increasing order.
pub fn free_basis(k: usize, n: usize) -> Result<Vec<TreeMonomial>, OperadError> {
    if n > ARITY_CAP || n == 0 {
        return Err(OperadError::ArityCap {
            requested: n,
            cap: ARITY_CAP,
        });
    }
    let mut out = Vec::new();
    for s in shapes(n) {
        let mut decos = vec![0u8; n - 1];
        loop {
            out.push(TreeMonomial::from_parts(&s.shape(), &decos).expect("decoration count matches"));
            let Some(i) = (0..n - 1).rev().find(|&i| (decos[i] as usize) + 1 < k) else {
                break;
            };
            decos[i] += 1;
            for d in decos.iter_mut().skip(i + 1) {
                *d = 0;
            }
            if k == 0 {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Number of arity-`n` monomials on `k` generators: `Catalan(n−1)·k^(n−1)`.
pub fn free_dimension(k: usize, n: usize) -> u128 {
    let m = (n - 1) as u128;
    let mut cat: u128 = 1;
    for i in 0..m {
        cat = cat * 2 * (2 * i + 1) / (i + 2);
    }
    cat * (k as u128).pow(m as u32)
}

/// Quadratic operad presented by binary generators and arity-3 relations.
#[derive(Clone, Debug)]
pub struct PresentedOperad {
    pub name: String,
    pub generators: Vec<String>,
    pub relations: Vec<LinComb<TreeMonomial>>,
}

#[derive(Serialize)]
struct TermJson {
    monomial: String,
    coefficient: String,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    name: &'a str,
    generators: &'a [String],
    relations: Vec<Vec<TermJson>>,
}

impl PresentedOperad {
    pub fn arity3_basis(&self) -> Vec<TreeMonomial> {
        free_basis(self.generators.len(), 3).expect("arity 3 is below the cap")
    }

    pub fn render(&self, v: &LinComb<TreeMonomial>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in v.iter().enumerate() {
            let neg = *c < int(0);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if abs != int(1) {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&m.render(&self.generators));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(m, c)| TermJson {
                        monomial: m.render(&self.generators),
                        coefficient: c.to_string(),
                    })
                    .collect()
            })
            .collect();
        serde_json::to_value(PresentationJson {
            name: &self.name,
            generators: &self.generators,
            relations,
        })
        .expect("plain data serializes")
    }

    /// Renames generators through `map[old] = new`.
    pub fn relabel(&self, map: &[u8], names: Vec<String>) -> Result<PresentedOperad, OperadError> {
        if map.len() != self.generators.len() {
            return Err(OperadError::BadRelabel {
                got: map.len(),
                expected: self.generators.len(),
            });
        }
        let f = |g: u8| map[g as usize];
        Ok(PresentedOperad {
            name: self.name.clone(),
            generators: names,
            relations: self
                .relations
                .iter()
                .map(|r| r.map_keys(|m| m.relabel(&f)))
                .collect(),
        })
    }
}

/// Quad generators in index order: the index of each is `Op::index`.
pub fn quad_generator_names() -> Vec<String> {
    (0..4).map(|i| Op::from_index(i).symbol().to_string()).collect()
}

/// Expands a comb in derived products into the monomial basis.
pub fn expand_comb(c: &Comb) -> LinComb<TreeMonomial> {
    let mut out = LinComb::zero();
    for &r in c.root.ops() {
        for &ch in c.child.ops() {
            out.add_term(TreeMonomial::comb(c.shape, r.index(), ch.index()), int(1));
        }
    }
    out
}

/// Dend generator indices.
pub const SUCC: u8 = 0;
pub const PREC: u8 = 1;
/// Dias generator indices, paired with Dend through the index.
pub const VDASH: u8 = 0;
pub const DASHV: u8 = 1;

fn quad() -> PresentedOperad {
    PresentedOperad {
        name: "Quad".into(),
        generators: quad_generator_names(),
        relations: QUAD_AXIOMS
            .iter()
            .map(|(l, r)| expand_comb(l) - expand_comb(r))
            .collect(),
    }
}

fn quad_shriek() -> PresentedOperad {
    let mut relations = Vec::new();
    for group in DUAL_QUAD_GROUPS {
        let first = expand_comb(&group[0]);
        for m in &group[1..] {
            relations.push(first.clone() - expand_comb(m));
        }
    }
    PresentedOperad {
        name: "QuadShriek".into(),
        generators: quad_generator_names(),
        relations,
    }
}

fn dend() -> PresentedOperad {
    use TreeMonomial as T;
    let b = |t: TreeMonomial| LinComb::basis(t);
    PresentedOperad {
        name: "Dend".into(),
        generators: vec!["≻".into(), "≺".into()],
        relations: vec![
            b(T::left_comb(PREC, PREC)) - b(T::right_comb(PREC, PREC)) - b(T::right_comb(PREC, SUCC)),
            b(T::left_comb(PREC, SUCC)) - b(T::right_comb(SUCC, PREC)),
            b(T::left_comb(SUCC, PREC)) + b(T::left_comb(SUCC, SUCC)) - b(T::right_comb(SUCC, SUCC)),
        ],
    }
}

/// The five diassociative identifications `(a, b, c, d)`, read as
/// `(x a y) b z = x c (y d z)`.
pub const DIAS_IDENTIFICATIONS: [(u8, u8, u8, u8); 5] = [
    (DASHV, DASHV, DASHV, DASHV),
    (DASHV, DASHV, DASHV, VDASH),
    (VDASH, DASHV, VDASH, DASHV),
    (DASHV, VDASH, VDASH, VDASH),
    (VDASH, VDASH, VDASH, VDASH),
];

fn dias() -> PresentedOperad {
    PresentedOperad {
        name: "Dias".into(),
        generators: vec!["⊢".into(), "⊣".into()],
        relations: DIAS_IDENTIFICATIONS
            .iter()
            .map(|&(a, b, c, d)| {
                LinComb::basis(TreeMonomial::left_comb(b, a)) - LinComb::basis(TreeMonomial::right_comb(c, d))
            })
            .collect(),
    }
}

/// Named presentations: `Quad`, `QuadShriek`, `Dend`, `Dias`.
pub fn presentation(name: &str) -> Result<PresentedOperad, OperadError> {
    match name {
        "Quad" | "quad" => Ok(quad()),
        "QuadShriek" | "quad-shriek" | "quad!" | "Quad!" => Ok(quad_shriek()),
        "Dend" | "dend" => Ok(dend()),
        "Dias" | "dias" => Ok(dias()),
        other => Err(OperadError::UnknownName(other.to_string())),
    }
}

pub const PRESENTATION_NAMES: [&str; 4] = ["Quad", "QuadShriek", "Dend", "Dias"];

/// Pairing on arity-3 monomials for an orthonormal generator basis: `+1`
/// between equal left combs, `−1` between equal right combs, `0` otherwise.
pub fn arity3_pairing(k: usize) -> BilinearForm<TreeMonomial> {
    let entries = free_basis(k, 3)
        .expect("arity 3 is below the cap")
        .into_iter()
        .map(|m| {
            let sign = match m.as_comb() {
                Some((Shape3::Left, _, _)) => int(1),
                _ => int(-1),
            };
            (m, sign)
        })
        .collect();
    BilinearForm::diagonal(entries)
}

/// Relations `R^⊥` for the same generators.
pub fn koszul_dual(p: &PresentedOperad) -> PresentedOperad {
    let form = arity3_pairing(p.generators.len());
    let name = match p.name.strip_suffix('!') {
        Some(base) => base.to_string(),
        None => format!("{}!", p.name),
    };
    PresentedOperad {
        name,
        generators: p.generators.clone(),
        relations: orth_complement(&p.relations, &form),
    }
}

fn binomial_parts(
    p: &PresentedOperad,
) -> Result<Vec<((u8, u8), (u8, u8))>, OperadError> {
    p.relations
        .iter()
        .enumerate()
        .map(|(index, r)| {
            let bad = || OperadError::NotBinomial {
                operad: p.name.clone(),
                index,
            };
            let terms: Vec<(&TreeMonomial, &Rational)> = r.iter().collect();
            if terms.len() != 2 {
                return Err(bad());
            }
            let mut left = None;
            let mut right = None;
            for (m, c) in terms {
                match m.as_comb() {
                    Some((Shape3::Left, root, child)) if *c == int(1) => left = Some((root, child)),
                    Some((Shape3::Right, root, child)) if *c == int(-1) => right = Some((root, child)),
                    _ => return Err(bad()),
                }
            }
            Ok((left.ok_or_else(bad)?, right.ok_or_else(bad)?))
        })
        .collect()
}

/// Relations of `p ■ q` for binomial presentations: one relation per pair
/// of relations, taken componentwise. The product generator `(a, b)` gets
/// index `a·|G_q| + b`.
pub fn manin_black_relations(p: &PresentedOperad, q: &PresentedOperad) -> Result<PresentedOperad, OperadError> {
    let ps = binomial_parts(p)?;
    let qs = binomial_parts(q)?;
    let kq = q.generators.len() as u8;
    let pair = |a: u8, b: u8| a * kq + b;
    let mut relations = Vec::new();
    for &((lr1, lc1), (rr1, rc1)) in &ps {
        for &((lr2, lc2), (rr2, rc2)) in &qs {
            let l = TreeMonomial::left_comb(pair(lr1, lr2), pair(lc1, lc2));
            let r = TreeMonomial::right_comb(pair(rr1, rr2), pair(rc1, rc2));
            relations.push(LinComb::basis(l) - LinComb::basis(r));
        }
    }
    let mut generators = Vec::new();
    for a in &p.generators {
        for b in &q.generators {
            generators.push(format!("({a},{b})"));
        }
    }
    Ok(PresentedOperad {
        name: format!("{}■{}", p.name, q.name),
        generators,
        relations,
    })
}

/// The generator dictionary `↖ ↦ (⊣,⊣)`, `↙ ↦ (⊣,⊢)`, `↘ ↦ (⊢,⊢)`,
/// `↗ ↦ (⊢,⊣)` from Quad^! generators to `Dias ■ Dias` generators.
pub fn quad_shriek_to_dias_pairs(op: Op) -> (u8, u8) {
    match op {
        Op::Nw => (DASHV, DASHV),
        Op::Sw => (DASHV, VDASH),
        Op::Se => (VDASH, VDASH),
        Op::Ne => (VDASH, DASHV),
    }
}

/// `Θ` on generators: `↖ ↦ ≺⊗≺`, `↙ ↦ ≺⊗≻`, `↘ ↦ ≻⊗≻`, `↗ ↦ ≻⊗≺`.
pub fn theta_generator(op: Op) -> (u8, u8) {
    match op {
        Op::Nw => (PREC, PREC),
        Op::Sw => (PREC, SUCC),
        Op::Se => (SUCC, SUCC),
        Op::Ne => (SUCC, PREC),
    }
}

/// Image of a Quad monomial in `Dend ⊗ Dend`, both factors in normal form.
pub fn theta_expand(m: &TreeMonomial, dend: &RewriteSystem) -> LinComb<(TreeMonomial, TreeMonomial)> {
    let first = m.relabel(&|g| theta_generator(Op::from_index(g)).0);
    let second = m.relabel(&|g| theta_generator(Op::from_index(g)).1);
    let a = dend.normal_form(&first).expect("Dend rewriting terminates");
    let b = dend.normal_form(&second).expect("Dend rewriting terminates");
    a.tensor(&b)
}

/// Linear extension of [`theta_expand`].
pub fn theta_apply(v: &LinComb<TreeMonomial>, dend: &RewriteSystem) -> LinComb<(TreeMonomial, TreeMonomial)> {
    v.flat_map(|m| theta_expand(m, dend))
}

/// The nine Quad relations as combs in derived products, for display.
pub fn quad_relation_labels() -> Vec<String> {
    QUAD_AXIOMS.iter().map(|(l, r)| format!("{l} = {r}")).collect()
}

/// Groups arity-3 monomials of a relation set by their comb data, for
/// lookups by `(shape, root, child)`.
pub fn comb_index(vs: &[LinComb<TreeMonomial>]) -> BTreeMap<(Shape3, u8, u8), usize> {
    let mut out = BTreeMap::new();
    for v in vs {
        for m in v.keys() {
            if let Some(c) = m.as_comb() {
                *out.entry(c).or_insert(0) += 1;
            }
        }
    }
    out
}

/// The comb of derived products corresponding to a kind pair, expanded.
pub fn expand_kinds(shape: Shape3, root: Kind, child: Kind) -> LinComb<TreeMonomial> {
    expand_comb(&Comb { shape, root, child })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rank_of, span_equal};
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn arity3_order() {
        let all = free_basis(4, 3).unwrap();
        assert_eq!(all.len(), 32);
        // every left comb sits below every right comb
        let first_right = all.iter().position(|m| m.as_comb().unwrap().0 == Shape3::Right).unwrap();
        assert_eq!(first_right, 16);
        // root is compared before child
        assert!(TreeMonomial::left_comb(1, 3) < TreeMonomial::left_comb(2, 0));
        assert!(TreeMonomial::right_comb(1, 3) < TreeMonomial::right_comb(2, 0));
    }

    #[test]
    fn graft_examples() {
        let t = TreeMonomial::corolla(2);
        assert_eq!(TreeMonomial::leaf().graft(1, &t).unwrap(), t);
        let g = TreeMonomial::corolla(3).graft(1, &TreeMonomial::corolla(2)).unwrap();
        assert_eq!(g, TreeMonomial::left_comb(3, 2));
        assert_eq!(g.decorations(), vec![2, 3]);
        assert_eq!(
            TreeMonomial::corolla(3).graft(3, &t),
            Err(OperadError::PositionOutOfRange { position: 3, arity: 2 })
        );
    }

    #[test]
    fn graft_associativity_small() {
        let trees: Vec<TreeMonomial> = (1..=3).flat_map(|n| free_basis(2, n).unwrap()).collect();
        for t in &trees {
            for u in &trees {
                for v in &trees {
                    if t.arity() + u.arity() + v.arity() - 2 > 5 {
                        continue;
                    }
                    for i in 1..=t.arity() {
                        // sequential: (t ∘_i u) ∘_{i+j-1} v = t ∘_i (u ∘_j v)
                        for j in 1..=u.arity() {
                            let lhs = t.graft(i, u).unwrap().graft(i + j - 1, v).unwrap();
                            let rhs = t.graft(i, &u.graft(j, v).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                        // parallel: (t ∘_i u) ∘_{k+|u|-1} v = (t ∘_k v) ∘_i u for i < k
                        for k in (i + 1)..=t.arity() {
                            let lhs = t.graft(i, u).unwrap().graft(k + u.arity() - 1, v).unwrap();
                            let rhs = t.graft(k, v).unwrap().graft(i, u).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn free_counts() {
        assert_eq!(free_basis(4, 3).unwrap().len(), 32);
        assert_eq!(free_basis(2, 3).unwrap().len(), 8);
        assert_eq!(free_basis(4, 4).unwrap().len(), 320);
        for k in 1..=4 {
            for n in 1..=6 {
                assert_eq!(free_basis(k, n).unwrap().len() as u128, free_dimension(k, n), "k={k} n={n}");
            }
        }
        assert!(matches!(free_basis(2, ARITY_CAP + 1), Err(OperadError::ArityCap { .. })));
    }

    #[test]
    fn parts_round_trip() {
        for m in free_basis(3, 4).unwrap() {
            assert_eq!(TreeMonomial::from_parts(&m.shape(), &m.decorations()).unwrap(), m);
            let ns = names(&["a", "b", "c"]);
            assert_eq!(TreeMonomial::parse(&m.render(&ns), &ns).unwrap(), m);
        }
        let q = quad_generator_names();
        let m = TreeMonomial::parse("((x↙x)↖x)", &q).unwrap();
        assert_eq!(m, TreeMonomial::left_comb(Op::Nw.index(), Op::Sw.index()));
        assert!(TreeMonomial::parse("((x↙x)↖", &q).is_err());
    }

    #[test]
    fn presentations_have_independent_relations() {
        let expected = [("Quad", 9, 4), ("QuadShriek", 23, 4), ("Dend", 3, 2), ("Dias", 5, 2)];
        for (name, count, gens) in expected {
            let p = presentation(name).unwrap();
            assert_eq!(p.generators.len(), gens);
            assert_eq!(p.relations.len(), count);
            assert_eq!(rank_of(&p.relations), count, "{name}");
        }
        assert!(matches!(presentation("Nope"), Err(OperadError::UnknownName(_))));
    }

    #[test]
    fn koszul_duals() {
        let quad = presentation("Quad").unwrap();
        let shriek = presentation("QuadShriek").unwrap();
        assert!(span_equal(&koszul_dual(&quad).relations, &shriek.relations));
        assert!(span_equal(&koszul_dual(&shriek).relations, &quad.relations));
        let dend = presentation("Dend").unwrap();
        let dias = presentation("Dias").unwrap();
        let dd = koszul_dual(&dend);
        assert_eq!(dd.relations.len(), 5);
        assert!(span_equal(&dd.relations, &dias.relations));
        for name in PRESENTATION_NAMES {
            let p = presentation(name).unwrap();
            assert!(span_equal(&koszul_dual(&koszul_dual(&p)).relations, &p.relations));
        }
    }

    #[test]
    fn black_product_of_dias() {
        let dias = presentation("Dias").unwrap();
        let black = manin_black_relations(&dias, &dias).unwrap();
        assert_eq!(black.relations.len(), 25);
        assert_eq!(rank_of(&black.relations), 23);
        // the pair index a·2+b coincides with Op::index under the dictionary
        for op in Op::ALL {
            let (a, b) = quad_shriek_to_dias_pairs(op);
            assert_eq!(a * 2 + b, op.index());
        }
        let shriek = presentation("QuadShriek").unwrap();
        let map: Vec<u8> = (0..4)
            .map(|i| {
                let (a, b) = quad_shriek_to_dias_pairs(Op::from_index(i));
                a * 2 + b
            })
            .collect();
        let moved = shriek.relabel(&map, black.generators.clone()).unwrap();
        assert!(span_equal(&moved.relations, &black.relations));
        // Quad is not binomial
        assert!(matches!(
            manin_black_relations(&presentation("Quad").unwrap(), &dias),
            Err(OperadError::NotBinomial { .. })
        ));
    }

    #[test]
    fn theta_and_dias_pairs_are_index_splits() {
        for op in Op::ALL {
            let (a, b) = theta_generator(op);
            assert_eq!(a * 2 + b, op.index());
        }
    }

    #[test]
    fn json_export() {
        let v = presentation("Dend").unwrap().to_json();
        assert_eq!(v["generators"].as_array().unwrap().len(), 2);
        assert_eq!(v["relations"].as_array().unwrap().len(), 3);
        assert_eq!(v["relations"][1][0]["coefficient"], "1");
    }

    fn tree_of_arity(k: u8, n: usize) -> impl Strategy<Value = TreeMonomial> {
        let shape_count = shapes(n).len();
        (0..shape_count, proptest::collection::vec(0..k, n - 1))
            .prop_map(move |(s, d)| TreeMonomial::from_parts(&shapes(n)[s].shape(), &d).unwrap())
    }

    fn same_arity_pair(k: u8, max_arity: usize) -> impl Strategy<Value = (TreeMonomial, TreeMonomial)> {
        (2..=max_arity).prop_flat_map(move |n| (tree_of_arity(k, n), tree_of_arity(k, n)))
    }

    proptest! {
        #[test]
        fn order_is_compatible_with_grafting(
            (a, b) in same_arity_pair(4, 4),
            c in (1usize..=3).prop_flat_map(|n| tree_of_arity(4, n)),
            pos in 1usize..5,
        ) {
            // a < b implies c ∘_i a < c ∘_i b and a ∘_j c < b ∘_j c
            prop_assume!(a != b);
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            let i = 1 + (pos - 1) % c.arity();
            prop_assert!(c.graft(i, &a).unwrap() < c.graft(i, &b).unwrap());
            let j = 1 + (pos - 1) % a.arity();
            prop_assert!(a.graft(j, &c).unwrap() < b.graft(j, &c).unwrap());
        }
    }
}
