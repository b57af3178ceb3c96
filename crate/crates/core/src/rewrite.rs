//! Quadratic rewriting systems on tree monomials.
//!
//! Relations are oriented by reduced row echelon form under a monomial
//! order, so every rule head is the largest monomial of its row and no
//! head occurs in another rule's right-hand side.

use std::cell::Cell;
use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{Echelon, LinComb};
use crate::operad::{free_basis, OperadError, PresentedOperad, TreeMonomial};
use crate::quadri::Shape3;

/// Rewriting steps allowed for one normal-form computation.
pub const STEP_BUDGET: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("reduction exceeded {budget} steps")]
    BudgetExceeded { budget: usize },
    #[error("generator order must be a permutation of 0..{0}")]
    BadOrder(usize),
    #[error(transparent)]
    Operad(#[from] OperadError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: TreeMonomial,
    pub rhs: LinComb<TreeMonomial>,
}

/// Path-lexicographic order on tree monomials after ranking generators.
/// `rank[g]` is the position of generator `g`, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    rank: Vec<u8>,
}

impl MonomialOrder {
    /// Generator order equal to the index order.
    pub fn by_index(k: usize) -> MonomialOrder {
        MonomialOrder {
            rank: (0..k as u8).collect(),
        }
    }

    /// `ascending` lists the generators from smallest to largest.
    pub fn from_ascending(ascending: &[u8]) -> Result<MonomialOrder, RewriteError> {
        let k = ascending.len();
        let mut rank = vec![u8::MAX; k];
        for (pos, &g) in ascending.iter().enumerate() {
            let slot = rank.get_mut(g as usize).ok_or(RewriteError::BadOrder(k))?;
            if *slot != u8::MAX {
                return Err(RewriteError::BadOrder(k));
            }
            *slot = pos as u8;
        }
        Ok(MonomialOrder { rank })
    }

    pub fn generators(&self) -> usize {
        self.rank.len()
    }

    /// Image of `m` in the index-ordered copy, where the derived order of
    /// [`TreeMonomial`] applies.
    pub fn key(&self, m: &TreeMonomial) -> TreeMonomial {
        m.relabel(&|g| self.rank[g as usize])
    }

    fn unkey(&self, m: &TreeMonomial) -> TreeMonomial {
        let mut inv = vec![0u8; self.rank.len()];
        for (g, &r) in self.rank.iter().enumerate() {
            inv[r as usize] = g as u8;
        }
        m.relabel(&|r| inv[r as usize])
    }

    pub fn less(&self, a: &TreeMonomial, b: &TreeMonomial) -> bool {
        self.key(a) < self.key(b)
    }
}

/// Orients relations: each row of the reduced echelon form becomes
/// `lead → lead − row` with the row made monic at its lead.
pub fn orient(relations: &[LinComb<TreeMonomial>], order: &MonomialOrder) -> Vec<RewriteRule> {
    let mut ech = Echelon::new();
    for r in relations {
        ech.insert(r.map_keys(|m| order.key(m)));
    }
    ech.into_reduced()
        .into_iter()
        .map(|(lead, row)| {
            let mut rhs = LinComb::basis(lead.clone()) - row;
            rhs = rhs.map_keys(|m| order.unkey(m));
            RewriteRule {
                lhs: order.unkey(&lead),
                rhs,
            }
        })
        .collect()
}

/// Which occurrence a one-step rewriting strategy picks inside a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInnermost,
    RightmostOutermost,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub rules: usize,
    pub critical: usize,
    pub joinable: bool,
    pub failures: Vec<String>,
    pub normal_form_dims: Vec<usize>,
}

/// Rules indexed by their heads, with a shared normal-form cache.
pub struct RewriteSystem {
    generators: Vec<String>,
    order: MonomialOrder,
    rules: Vec<RewriteRule>,
    heads: HashMap<(Shape3, u8, u8), usize>,
    cache: RwLock<HashMap<TreeMonomial, LinComb<TreeMonomial>>>,
}

type Occurrence = (Vec<bool>, Shape3, u8, u8);

impl RewriteSystem {
    pub fn new(generators: Vec<String>, order: MonomialOrder, rules: Vec<RewriteRule>) -> RewriteSystem {
        let heads = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lhs.as_comb().expect("quadratic rule heads have arity 3"), i))
            .collect();
        RewriteSystem {
            generators,
            order,
            rules,
            heads,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn from_presentation(p: &PresentedOperad, order: MonomialOrder) -> RewriteSystem {
        let rules = orient(&p.relations, &order);
        RewriteSystem::new(p.generators.clone(), order, rules)
    }

    /// Index order on generators.
    pub fn standard(p: &PresentedOperad) -> RewriteSystem {
        RewriteSystem::from_presentation(p, MonomialOrder::by_index(p.generators.len()))
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same system with rule `index` removed.
    pub fn without_rule(&self, index: usize) -> RewriteSystem {
        let mut rules = self.rules.clone();
        rules.remove(index);
        RewriteSystem::new(self.generators.clone(), self.order.clone(), rules)
    }

    pub fn render_rule(&self, r: &RewriteRule) -> String {
        let rhs: Vec<String> = r
            .rhs
            .iter()
            .map(|(m, c)| format!("{c}·{}", m.render(&self.generators)))
            .collect();
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
        format!("{} → {}", r.lhs.render(&self.generators), rhs)
    }

    fn occurrences(&self, m: &TreeMonomial) -> Vec<Occurrence> {
        m.edges()
            .into_iter()
            .filter(|(_, s, r, c)| self.heads.contains_key(&(*s, *r, *c)))
            .collect()
    }

    pub fn is_normal(&self, m: &TreeMonomial) -> bool {
        self.occurrences(m).is_empty()
    }

    /// Rewrites one occurrence of a rule head.
    fn apply(&self, m: &TreeMonomial, occ: &Occurrence) -> LinComb<TreeMonomial> {
        let (path, shape, root, child) = occ;
        let rule = &self.rules[self.heads[&(*shape, *root, *child)]];
        let at = |steps: &[bool]| {
            let mut p = path.clone();
            p.extend_from_slice(steps);
            m.subtree(&p).expect("occurrence lies inside the tree")
        };
        let args = match shape {
            Shape3::Left => [at(&[false, false]), at(&[false, true]), at(&[true])],
            Shape3::Right => [at(&[false]), at(&[true, false]), at(&[true, true])],
        };
        let local = rule.rhs.map_keys(|t| t.substitute(&args));
        let out = m.replace_at(path, &local);
        debug_assert!(
            out.keys().all(|t| self.order.less(t, m)),
            "rewriting did not decrease {m:?}"
        );
        out
    }

    /// Result of rewriting the occurrence given by an edge of `m`.
    pub fn rewrite_at(&self, m: &TreeMonomial, edge: usize) -> Option<LinComb<TreeMonomial>> {
        let occ = self.occurrences(m).into_iter().nth(edge)?;
        Some(self.apply(m, &occ))
    }

    /// Memoized normal form, reducing subtrees before the root.
    pub fn normal_form(&self, m: &TreeMonomial) -> Result<LinComb<TreeMonomial>, RewriteError> {
        let steps = Cell::new(0);
        self.nf(m, &steps)
    }

    fn nf(&self, m: &TreeMonomial, steps: &Cell<usize>) -> Result<LinComb<TreeMonomial>, RewriteError> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(m) {
            return Ok(hit.clone());
        }
        let Some((g, l, r)) = m.split() else {
            return Ok(LinComb::basis(m.clone()));
        };
        let nl = self.nf(&l, steps)?;
        let nr = self.nf(&r, steps)?;
        let mut out = LinComb::zero();
        for (a, ca) in nl.iter() {
            for (b, cb) in nr.iter() {
                let t = TreeMonomial::node(g, a.clone(), b.clone());
                let top = self.occurrences(&t).into_iter().find(|(p, _, _, _)| p.is_empty());
                let coeff = ca * cb;
                match top {
                    None => out.add_term(t, coeff),
                    Some(occ) => {
                        steps.set(steps.get() + 1);
                        if steps.get() > STEP_BUDGET {
                            return Err(RewriteError::BudgetExceeded { budget: STEP_BUDGET });
                        }
                        for (u, cu) in self.apply(&t, &occ).iter() {
                            out.add_scaled(&self.nf(u, steps)?, &(&coeff * cu));
                        }
                    }
                }
            }
        }
        self.cache.write().expect("cache lock").insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn normal_form_lin(&self, v: &LinComb<TreeMonomial>) -> Result<LinComb<TreeMonomial>, RewriteError> {
        let mut out = LinComb::zero();
        for (m, c) in v.iter() {
            out.add_scaled(&self.normal_form(m)?, c);
        }
        Ok(out)
    }

    /// Unmemoized one-step reduction: always rewrites the largest reducible
    /// monomial, at the occurrence chosen by `strategy`.
    pub fn normal_form_with(
        &self,
        v: &LinComb<TreeMonomial>,
        strategy: Strategy,
        budget: usize,
    ) -> Result<LinComb<TreeMonomial>, RewriteError> {
        let mut cur = v.clone();
        for _ in 0..=budget {
            let target = cur
                .iter()
                .rev()
                .map(|(m, c)| (m.clone(), c.clone(), self.occurrences(m)))
                .find(|(_, _, occ)| !occ.is_empty());
            let Some((m, c, occs)) = target else {
                return Ok(cur);
            };
            let occ = match strategy {
                Strategy::LeftmostInnermost => occs
                    .iter()
                    .min_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)))
                    .expect("nonempty"),
                Strategy::RightmostOutermost => occs
                    .iter()
                    .min_by(|a, b| a.0.len().cmp(&b.0.len()).then(b.0.cmp(&a.0)))
                    .expect("nonempty"),
            };
            let replaced = self.apply(&m, occ);
            cur.add_term(m, -c.clone());
            cur.add_scaled(&replaced, &c);
        }
        Err(RewriteError::BudgetExceeded { budget })
    }

    /// Arity-4 monomials in which both edges are rule heads. With three
    /// internal vertices any two edges share a vertex.
    pub fn critical_monomials(&self) -> Vec<TreeMonomial> {
        free_basis(self.generators.len(), 4)
            .expect("arity 4 is below the cap")
            .into_iter()
            .filter(|m| self.occurrences(m).len() == 2)
            .collect()
    }

    /// Rewrites every critical monomial once at each occurrence, then to
    /// normal form, and compares the results.
    pub fn confluence_check(&self, max_arity: usize) -> Result<ConfluenceReport, RewriteError> {
        let critical = self.critical_monomials();
        let results: Vec<Result<Option<String>, RewriteError>> = critical
            .par_iter()
            .map(|m| {
                let mut outcomes = Vec::new();
                for occ in self.occurrences(m) {
                    outcomes.push(self.normal_form_lin(&self.apply(m, &occ))?);
                }
                Ok(if outcomes.windows(2).all(|w| w[0] == w[1]) {
                    None
                } else {
                    Some(m.render(&self.generators))
                })
            })
            .collect();
        let mut failures = Vec::new();
        for r in results {
            if let Some(f) = r? {
                failures.push(f);
            }
        }
        Ok(ConfluenceReport {
            rules: self.rules.len(),
            critical: critical.len(),
            joinable: failures.is_empty(),
            failures,
            normal_form_dims: self.normal_form_dims(2..=max_arity),
        })
    }

    /// Number of normal monomials in each arity, by dynamic programming
    /// over (arity, root generator).
    pub fn normal_form_dims(&self, arities: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        let k = self.generators.len();
        let top = *arities.end();
        // count[n][g]: normal monomials of arity n with root g
        let mut count: Vec<Vec<u128>> = vec![vec![0; k]; top + 1];
        let side = |count: &Vec<Vec<u128>>, n: usize, shape: Shape3, g: usize| -> u128 {
            if n == 1 {
                return 1;
            }
            (0..k)
                .filter(|&c| !self.heads.contains_key(&(shape, g as u8, c as u8)))
                .map(|c| count[n][c])
                .sum()
        };
        for n in 2..=top {
            for g in 0..k {
                count[n][g] = (1..n)
                    .map(|a| side(&count, a, Shape3::Left, g) * side(&count, n - a, Shape3::Right, g))
                    .sum();
            }
        }
        arities
            .map(|n| if n == 1 { 1 } else { count[n].iter().sum::<u128>() as usize })
            .collect()
    }

    /// Brute-force count of normal monomials of arity `n`.
    pub fn count_normal_monomials(&self, n: usize) -> Result<usize, RewriteError> {
        Ok(free_basis(self.generators.len(), n)?
            .into_iter()
            .filter(|m| self.is_normal(m))
            .count())
    }

    pub fn report_json(&self, report: &ConfluenceReport) -> serde_json::Value {
        serde_json::json!({
            "rules": report.rules,
            "critical": report.critical,
            "joinable": report.joinable,
            "normal_form_dims": report.normal_form_dims,
        })
    }

    /// Rules grouped by right-hand side, rendered.
    pub fn rule_table(&self) -> BTreeMap<String, Vec<String>> {
        let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for r in &self.rules {
            let rhs: Vec<String> = r
                .rhs
                .iter()
                .map(|(m, c)| format!("{c}·{}", m.render(&self.generators)))
                .collect();
            out.entry(rhs.join(" + ")).or_default().push(r.lhs.render(&self.generators));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::operad::{presentation, shapes, DASHV, PREC, SUCC, VDASH};
    use crate::quadri::Op;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};
    use proptest::strategy::Strategy as _;

    fn system(name: &str) -> RewriteSystem {
        RewriteSystem::standard(&presentation(name).unwrap())
    }

    fn l(r: Op, c: Op) -> TreeMonomial {
        TreeMonomial::left_comb(r.index(), c.index())
    }

    fn r(r: Op, c: Op) -> TreeMonomial {
        TreeMonomial::right_comb(r.index(), c.index())
    }

    /// The displayed rule table, heads grouped by their common image. The
    /// eighth group reads `(x↗y)↙z` as the head, not `(x↖y)↙z`.
    fn quad_shriek_table() -> Vec<(Vec<TreeMonomial>, TreeMonomial)> {
        use Op::*;
        vec![
            (vec![r(Nw, Nw), r(Nw, Sw), r(Nw, Se), r(Nw, Ne)], l(Nw, Nw)),
            (vec![r(Ne, Nw), r(Ne, Sw)], l(Nw, Ne)),
            (vec![l(Ne, Nw), r(Ne, Se), r(Ne, Ne)], l(Ne, Ne)),
            (vec![r(Sw, Nw), r(Sw, Ne)], l(Nw, Sw)),
            (vec![r(Se, Nw)], l(Nw, Se)),
            (vec![r(Se, Ne), l(Ne, Sw)], l(Ne, Se)),
            (vec![r(Sw, Sw), r(Sw, Se), l(Sw, Nw)], l(Sw, Sw)),
            (vec![r(Se, Sw), l(Sw, Ne)], l(Sw, Se)),
            (vec![r(Se, Se), l(Se, Nw), l(Se, Sw), l(Se, Ne)], l(Se, Se)),
        ]
    }

    #[test]
    fn quad_shriek_rules_match_table() {
        let s = system("QuadShriek");
        assert_eq!(s.rules().len(), 23);
        let mut expected: Vec<RewriteRule> = quad_shriek_table()
            .into_iter()
            .flat_map(|(heads, image)| {
                heads.into_iter().map(move |h| RewriteRule {
                    lhs: h,
                    rhs: LinComb::basis(image.clone()),
                })
            })
            .collect();
        expected.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        assert_eq!(s.rules(), expected.as_slice());
        for rule in s.rules() {
            assert!(rule.rhs.keys().all(|m| *m < rule.lhs));
        }
    }

    #[test]
    fn dend_and_dias_rules() {
        let d = system("Dend");
        assert_eq!(d.rules().len(), 3);
        let sizes: Vec<usize> = d.rules().iter().map(|r| r.rhs.len()).collect();
        // heads x≻(y≻z), x≻(y≺z), x≺(y≺z)
        assert_eq!(sizes, vec![2, 1, 2]);
        let succ_succ = &d.rules()[0];
        assert_eq!(succ_succ.lhs, TreeMonomial::right_comb(SUCC, SUCC));
        assert_eq!(
            succ_succ.rhs,
            LinComb::basis(TreeMonomial::left_comb(SUCC, SUCC)) + LinComb::basis(TreeMonomial::left_comb(SUCC, PREC))
        );
        let prec_prec = &d.rules()[2];
        assert_eq!(prec_prec.lhs, TreeMonomial::right_comb(PREC, PREC));
        assert_eq!(
            prec_prec.rhs,
            LinComb::basis(TreeMonomial::left_comb(PREC, PREC)) - LinComb::basis(TreeMonomial::right_comb(PREC, SUCC))
        );
        let dias = system("Dias");
        assert_eq!(dias.rules().len(), 5);
        assert!(dias.rules().iter().any(|r| r.lhs == TreeMonomial::left_comb(VDASH, DASHV)));
        assert!(orient(&[], &MonomialOrder::by_index(2)).is_empty());
    }

    #[test]
    fn heads_rewrite_to_their_images() {
        for name in ["QuadShriek", "Dend", "Dias"] {
            let s = system(name);
            for rule in s.rules() {
                assert_eq!(s.normal_form(&rule.lhs).unwrap(), s.normal_form_lin(&rule.rhs).unwrap());
                assert_eq!(s.rewrite_at(&rule.lhs, 0).unwrap(), rule.rhs);
            }
        }
    }

    #[test]
    fn arity3_normal_form_counts() {
        assert_eq!(system("QuadShriek").count_normal_monomials(3).unwrap(), 9);
        assert_eq!(system("Dend").count_normal_monomials(3).unwrap(), 5);
        assert_eq!(system("Dias").count_normal_monomials(3).unwrap(), 3);
    }

    #[test]
    fn dims_dp_matches_brute_force() {
        for name in ["QuadShriek", "Dend", "Dias"] {
            let s = system(name);
            let dp = s.normal_form_dims(1..=5);
            let brute: Vec<usize> = (1..=5).map(|n| s.count_normal_monomials(n).unwrap()).collect();
            assert_eq!(dp, brute, "{name}");
        }
    }

    #[test]
    fn normal_form_dimensions() {
        assert_eq!(system("QuadShriek").normal_form_dims(2..=5), vec![4, 9, 16, 25]);
        assert_eq!(system("Dend").normal_form_dims(2..=5), vec![2, 5, 14, 42]);
        assert_eq!(system("Dias").normal_form_dims(2..=6), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn critical_monomials_match_brute_force() {
        for name in ["QuadShriek", "Dend", "Dias"] {
            let s = system(name);
            let heads: Vec<(Shape3, u8, u8)> = s.rules().iter().map(|r| r.lhs.as_comb().unwrap()).collect();
            let brute: Vec<TreeMonomial> = free_basis(s.generators().len(), 4)
                .unwrap()
                .into_iter()
                .filter(|m| {
                    m.edges()
                        .iter()
                        .filter(|(_, sh, r, c)| heads.contains(&(*sh, *r, *c)))
                        .count()
                        >= 2
                })
                .collect();
            assert_eq!(s.critical_monomials(), brute, "{name}");
        }
        assert_eq!(system("QuadShriek").critical_monomials().len(), 156);
        assert_eq!(free_basis(2, 4).unwrap().len(), 40);
    }

    #[test]
    fn single_rule_self_overlaps() {
        // head (x↗y)↖z overlaps itself only through trees with two such edges
        let head = l(Op::Nw, Op::Ne);
        let s = RewriteSystem::new(
            crate::operad::quad_generator_names(),
            MonomialOrder::by_index(4),
            vec![RewriteRule {
                lhs: head,
                rhs: LinComb::basis(l(Op::Nw, Op::Se)),
            }],
        );
        // a vertex cannot be both ↖ and ↗, so the two edges never overlap
        assert!(s.critical_monomials().is_empty());
    }

    #[test]
    fn confluence_of_named_systems() {
        let q = system("QuadShriek").confluence_check(5).unwrap();
        assert!(q.joinable, "{:?}", q.failures);
        assert_eq!((q.rules, q.critical), (23, 156));
        assert_eq!(q.normal_form_dims, vec![4, 9, 16, 25]);
        let d = system("Dend").confluence_check(5).unwrap();
        assert!(d.joinable, "{:?}", d.failures);
        let di = system("Dias").confluence_check(6).unwrap();
        assert!(di.joinable, "{:?}", di.failures);
    }

    #[test]
    fn dropping_a_rule_breaks_confluence() {
        let full = system("QuadShriek");
        let broken = (0..full.rules().len()).any(|i| !full.without_rule(i).confluence_check(4).unwrap().joinable);
        assert!(broken);
        let d = system("Dend").without_rule(0).confluence_check(4).unwrap();
        assert!(!d.joinable);
        assert!(!d.failures.is_empty());
    }

    #[test]
    fn order_parsing() {
        assert!(MonomialOrder::from_ascending(&[0, 0]).is_err());
        let o = MonomialOrder::from_ascending(&[1, 0]).unwrap();
        assert!(o.less(&TreeMonomial::corolla(1), &TreeMonomial::corolla(0)));
    }

    #[test]
    fn json_report_shape() {
        let s = system("Dend");
        let rep = s.confluence_check(4).unwrap();
        let v = s.report_json(&rep);
        assert_eq!(v["rules"], 3);
        assert_eq!(v["joinable"], true);
        assert_eq!(v["normal_form_dims"][2], 14);
    }

    fn any_tree(k: u8, max_arity: usize) -> impl proptest::strategy::Strategy<Value = TreeMonomial> {
        (2..=max_arity).prop_flat_map(move |n| {
            let count = shapes(n).len();
            (0..count, proptest::collection::vec(0..k, n - 1))
                .prop_map(move |(s, d)| TreeMonomial::from_parts(&shapes(n)[s].shape(), &d).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn strategies_agree_quad_shriek(m in any_tree(4, 5)) {
            let s = system("QuadShriek");
            let v = LinComb::basis(m.clone());
            let a = s.normal_form_with(&v, super::Strategy::LeftmostInnermost, STEP_BUDGET).unwrap();
            let b = s.normal_form_with(&v, super::Strategy::RightmostOutermost, STEP_BUDGET).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &s.normal_form(&m).unwrap());
        }

        #[test]
        fn strategies_agree_dend(m in any_tree(2, 6)) {
            let s = system("Dend");
            let v = LinComb::basis(m.clone());
            let a = s.normal_form_with(&v, super::Strategy::LeftmostInnermost, STEP_BUDGET).unwrap();
            let b = s.normal_form_with(&v, super::Strategy::RightmostOutermost, STEP_BUDGET).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &s.normal_form(&m).unwrap());
        }

        #[test]
        fn strategies_agree_dias(m in any_tree(2, 6)) {
            let s = system("Dias");
            let v = LinComb::basis(m.clone());
            let a = s.normal_form_with(&v, super::Strategy::LeftmostInnermost, STEP_BUDGET).unwrap();
            let b = s.normal_form_with(&v, super::Strategy::RightmostOutermost, STEP_BUDGET).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a.iter().all(|(_, c)| *c == int(1)));
        }
    }
}
