//! Exhaustive verification sweeps over small degrees.
//!
//! Each sweep enumerates basis forests (or tuples of them), evaluates a
//! property on every case and collects the failures.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::exec::{self, Strategy};
use crate::forest::{OrderedForest, PlaneTree};
use crate::graft::{
    count_indexings, generate_set, ladders, oracle_count_indexings, Algebra, FamilySelector,
    Signature,
};
use crate::hopf::{
    antipode, check_b_operator_coproduct, coproduct, coproduct_left, coproduct_right, counit,
    multiply, prim_tot_dimension, tensor_product, AlgebraElement, CoproductVariant,
    Tensor2Element, PRIM_TOT_MAX_DEGREE,
};
use crate::series::{enumeration_bound, verify_against_enumeration, SeriesId};
use crate::structures::{apply_elem, check_identity, generate_closure_with, GraftOp, IdentityName};

/// Failure descriptions kept per check.
const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub examples: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn from_outcomes(name: impl Into<String>, outcomes: Vec<Option<String>>) -> Self {
        let cases = outcomes.len();
        let failures: Vec<String> = outcomes.into_iter().flatten().collect();
        CheckResult {
            name: name.into(),
            cases,
            failed: failures.len(),
            examples: failures.into_iter().take(KEPT_FAILURES).collect(),
        }
    }

    fn single(name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Self {
        let outcome = if ok { None } else { Some(detail()) };
        CheckResult::from_outcomes(name, vec![outcome])
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if !self.passed() {
            write!(f, ", {} failed", self.failed)?;
        }
        f.write_str(")")?;
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Hopf,
    Duplicial,
    Dendriform,
    LeftGraft,
    RightGraft,
    Bigraft,
    Counts,
    PrimTot,
    Closure,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Hopf,
        Suite::Duplicial,
        Suite::Dendriform,
        Suite::LeftGraft,
        Suite::RightGraft,
        Suite::Bigraft,
        Suite::Counts,
        Suite::PrimTot,
        Suite::Closure,
    ];

    pub fn default_max_degree(self) -> usize {
        match self {
            Suite::Hopf | Suite::Dendriform | Suite::PrimTot => 5,
            Suite::Duplicial | Suite::LeftGraft | Suite::RightGraft | Suite::Bigraft | Suite::Closure => 6,
            Suite::Counts => 8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Hopf => "hopf",
            Suite::Duplicial => "duplicial",
            Suite::Dendriform => "dendriform",
            Suite::LeftGraft => "leftgraft",
            Suite::RightGraft => "rightgraft",
            Suite::Bigraft => "bigraft",
            Suite::Counts => "counts",
            Suite::PrimTot => "primtot",
            Suite::Closure => "closure",
        })
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_degree: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

pub fn run_suite(suite: Suite, max_degree: usize, strategy: Strategy) -> SuiteReport {
    let n = max_degree;
    let checks = match suite {
        Suite::Hopf => hopf_checks(n, strategy),
        Suite::Duplicial => identity_checks(&[IdentityName::E1a, IdentityName::E1b, IdentityName::E1c], n, false, strategy),
        Suite::Dendriform => {
            let mut c = identity_checks(&[IdentityName::E2a, IdentityName::E2b, IdentityName::E2c], n, false, strategy);
            c.push(dendriform_split(n, strategy));
            c.extend(identity_checks(
                &[IdentityName::E3prec, IdentityName::E3succ, IdentityName::E4prec, IdentityName::E4succ],
                n,
                false,
                strategy,
            ));
            c
        }
        Suite::LeftGraft => {
            let mut c = identity_checks(&[IdentityName::LGa, IdentityName::LGb], n, false, strategy);
            c.extend(identity_checks(&[IdentityName::DeltaSucc], n, true, strategy));
            c.push(stability(GraftOp::Lgraft, n, strategy));
            c.push(non_associativity_witness());
            c
        }
        Suite::RightGraft => {
            let mut c = identity_checks(&[IdentityName::RGa, IdentityName::RGb], n, false, strategy);
            c.extend(identity_checks(&[IdentityName::DeltaPrec], n, true, strategy));
            c.push(stability(GraftOp::Rgraft, n, strategy));
            c.push(right_non_associativity_witness());
            c
        }
        Suite::Bigraft => {
            let mut c = identity_checks(&[IdentityName::Bigraft], n, true, strategy);
            c.push(stability(GraftOp::Nwarrow, n, strategy));
            c.push(non_freeness_witness());
            c
        }
        Suite::Counts => count_checks(n, strategy),
        Suite::PrimTot => vec![prim_tot_check(n)],
        Suite::Closure => closure_checks(n, strategy),
    };
    SuiteReport { suite, max_degree, checks }
}

/// All tuples of basis forests of `algebra` with the given arity and total
/// degree at most `max_total`; with `units`, tuples with exactly one unit
/// entry are included too.
pub fn tuples(algebra: Algebra, arity: usize, max_total: usize, units: bool) -> Vec<Vec<OrderedForest>> {
    let min_deg = if units { 0 } else { 1 };
    let mut out: Vec<Vec<OrderedForest>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &out {
            let used: usize = prefix.iter().map(OrderedForest::degree).sum();
            for d in min_deg..=max_total.saturating_sub(used) {
                for f in algebra.basis(d).iter() {
                    let mut t = prefix.clone();
                    t.push(f.clone());
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out.retain(|t| {
        let empties = t.iter().filter(|f| f.is_empty()).count();
        empties == 0 || (units && empties == 1)
    });
    out
}

fn describe(args: &[OrderedForest]) -> String {
    args.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join(", ")
}

pub fn identity_check(name: IdentityName, cases: &[Vec<OrderedForest>], strategy: Strategy) -> CheckResult {
    let outcomes = exec::map(strategy, cases, |args| match check_identity(name, args) {
        Ok(true) => None,
        Ok(false) => Some(format!("{name} fails on {}", describe(args))),
        Err(e) => Some(format!("{name} errors on {}: {e}", describe(args))),
    });
    CheckResult::from_outcomes(format!("{name} (total degree <= {})", max_total(cases)), outcomes)
}

fn max_total(cases: &[Vec<OrderedForest>]) -> usize {
    cases.iter().map(|t| t.iter().map(OrderedForest::degree).sum::<usize>()).max().unwrap_or(0)
}

/// Units are admitted where the identity allows them: the first argument
/// of DELTASUCC, the second of DELTAPREC, any single one for BIGRAFT.
fn identity_checks(names: &[IdentityName], n: usize, units: bool, strategy: Strategy) -> Vec<CheckResult> {
    names
        .iter()
        .map(|&name| {
            let mut cases = tuples(Algebra::B, name.arity(), n, units);
            match name {
                IdentityName::DeltaSucc => cases.retain(|t| !t[1].is_empty()),
                IdentityName::DeltaPrec => cases.retain(|t| !t[0].is_empty()),
                _ => {}
            }
            identity_check(name, &cases, strategy)
        })
        .collect()
}

/// Property over every basis forest of `algebra` with degree `1..=n`.
pub fn forest_check(
    name: impl Into<String>,
    forests: &[OrderedForest],
    strategy: Strategy,
    property: impl Fn(&OrderedForest) -> Result<(), String> + Sync + Send,
) -> CheckResult {
    let outcomes = exec::map(strategy, forests, |f| property(f).err().map(|e| format!("({f}): {e}")));
    CheckResult::from_outcomes(name, outcomes)
}

fn full(f: &OrderedForest) -> Tensor2Element {
    coproduct(f, CoproductVariant::Full).expect("full coproduct is total")
}

/// Every leg of `Δ(F)` is a word over the generators of `algebra`.
pub fn closure_property(algebra: Algebra) -> impl Fn(&OrderedForest) -> Result<(), String> + Sync + Send {
    move |f| {
        for ((a, b), _) in full(f).iter() {
            for leg in [a, b] {
                if !algebra.contains(leg) {
                    return Err(format!("leg ({leg}) leaves the algebra"));
                }
            }
        }
        Ok(())
    }
}

/// `Δ̃(T) ⊆ B^i ⊗ B^(i−1)` on the trees of G^i, pruned part on the left.
pub fn filtration_property(i: usize) -> impl Fn(&OrderedForest) -> Result<(), String> + Sync + Send {
    leg_levels(i, i - 1)
}

/// `Δ̃(T) ⊆ B^(i−1) ⊗ B^i` on the trees of G^i.
pub fn reversed_filtration_property(i: usize) -> impl Fn(&OrderedForest) -> Result<(), String> + Sync + Send {
    leg_levels(i - 1, i)
}

fn leg_levels(lea: usize, roo: usize) -> impl Fn(&OrderedForest) -> Result<(), String> + Sync + Send {
    move |f| {
        let d = coproduct(f, CoproductVariant::Reduced).map_err(|e| e.to_string())?;
        for ((a, b), _) in d.iter() {
            if !Algebra::Bi(lea).contains(a) || !Algebra::Bi(roo).contains(b) {
                return Err(format!("term ({a}) ⊗ ({b})"));
            }
        }
        Ok(())
    }
}

/// Trees of G^i with degree `1..=n`, as forests.
pub fn gi_trees(i: usize, n: usize) -> Vec<OrderedForest> {
    (1..=n)
        .flat_map(|d| Algebra::Bi(i).generators(d).iter().cloned().map(OrderedForest::from).collect::<Vec<_>>())
        .collect()
}

fn coassociativity(f: &OrderedForest, v: CoproductVariant) -> Result<(), String> {
    let d = coproduct(f, v).map_err(|e| e.to_string())?;
    let lhs = coproduct_left(&d, CoproductVariant::Full).map_err(|e| e.to_string())?;
    let rhs = coproduct_right(&d, v).map_err(|e| e.to_string())?;
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("({v} coassociativity)"))
    }
}

fn antipode_law(f: &OrderedForest) -> Result<(), String> {
    let d = full(f);
    let lhs = multiply(&d.flat_map(|(a, b)| {
        antipode(&AlgebraElement::basis(a.clone()))
            .flat_map(|s| Tensor2Element::basis((s.clone(), b.clone())))
    }));
    let unit = AlgebraElement::basis(OrderedForest::empty());
    let rhs = unit.scaled(&counit(&AlgebraElement::basis(f.clone())));
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("m(S⊗Id)Δ = {lhs}"))
    }
}

fn hopf_checks(n: usize, strategy: Strategy) -> Vec<CheckResult> {
    let basis = Algebra::B.basis_up_to(n);
    let mut checks = vec![
        forest_check(format!("coassociativity (degree <= {n})"), &basis, strategy, |f| {
            coassociativity(f, CoproductVariant::Full)
        }),
        forest_check(format!("left-root mixed coassociativity (degree <= {n})"), &basis, strategy, |f| {
            coassociativity(f, CoproductVariant::LeftRoot)
        }),
        forest_check(format!("right-root mixed coassociativity (degree <= {n})"), &basis, strategy, |f| {
            coassociativity(f, CoproductVariant::RightRoot)
        }),
        forest_check(format!("antipode law (degree <= {n})"), &basis, strategy, antipode_law),
        forest_check(
            format!("B- and B+ coproduct formulas (degree <= {})", n.saturating_sub(1)),
            &Algebra::B.basis_up_to(n.saturating_sub(1)),
            strategy,
            |f| if check_b_operator_coproduct(f) { Ok(()) } else { Err("mismatch".into()) },
        ),
    ];
    let pairs = tuples(Algebra::B, 2, n, false);
    let outcomes = exec::map(strategy, &pairs, |t| {
        let lhs = full(&t[0].concat(&t[1]));
        let rhs = tensor_product(&full(&t[0]), &full(&t[1]));
        (lhs != rhs).then(|| format!("multiplicativity fails on {}", describe(t)))
    });
    checks.push(CheckResult::from_outcomes(format!("multiplicativity (total degree <= {n})"), outcomes));
    for algebra in [Algebra::Binfty, Algebra::B, Algebra::Bi(1), Algebra::Bi(2), Algebra::Bi(3)] {
        checks.push(forest_check(
            format!("{algebra:?} closed under the coproduct (degree <= {n})"),
            &algebra.basis_up_to(n),
            strategy,
            closure_property(algebra),
        ));
    }
    for i in [2, 3] {
        let trees = gi_trees(i, n);
        checks.push(forest_check(
            format!("reduced coproduct of G{i} trees in B{i} ⊗ B{} (degree <= {n})", i - 1),
            &trees,
            strategy,
            filtration_property(i),
        ));
        checks.push(forest_check(
            format!("reduced coproduct of G{i} trees in B{} ⊗ B{i} (degree <= {n})", i - 1),
            &trees,
            strategy,
            reversed_filtration_property(i),
        ));
    }
    let g0: Vec<OrderedForest> = (1..=n)
        .flat_map(|d| generate_set(FamilySelector::G0, d, None).expect("degree ≥ 1"))
        .collect();
    checks.push(forest_check(format!("G0 trunks stay in B0 (degree <= {n})"), &g0, strategy, |f| {
        for ((_, b), _) in full(f).iter() {
            if !Algebra::B0.contains(b) {
                return Err(format!("trunk ({b})"));
            }
        }
        Ok(())
    }));
    checks
}

fn dendriform_split(n: usize, strategy: Strategy) -> CheckResult {
    forest_check(format!("prec + succ = reduced (degree <= {n})"), &Algebra::B.basis_up_to(n), strategy, |f| {
        let p = coproduct(f, CoproductVariant::PrecRed).map_err(|e| e.to_string())?;
        let s = coproduct(f, CoproductVariant::SuccRed).map_err(|e| e.to_string())?;
        let r = coproduct(f, CoproductVariant::Reduced).map_err(|e| e.to_string())?;
        if p + s == r {
            Ok(())
        } else {
            Err("split mismatch".into())
        }
    })
}

/// Results of the operation on basis pairs are basis forests.
fn stability(op: GraftOp, n: usize, strategy: Strategy) -> CheckResult {
    let pairs = tuples(Algebra::B, 2, n, false);
    let outcomes = exec::map(strategy, &pairs, |t| {
        let a = AlgebraElement::basis(t[0].clone());
        let b = AlgebraElement::basis(t[1].clone());
        match apply_elem(op, &a, &b) {
            Ok(r) if r.iter().all(|(f, _)| Algebra::B.contains(f)) => None,
            Ok(r) => Some(format!("{op} on {} gives {r}", describe(t))),
            Err(e) => Some(e.to_string()),
        }
    });
    CheckResult::from_outcomes(format!("{op} stays in the basis (total degree <= {n})"), outcomes)
}

fn v() -> AlgebraElement {
    AlgebraElement::basis(OrderedForest::vertex())
}

fn op(o: GraftOp, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    apply_elem(o, a, b).expect("nonempty arguments")
}

pub fn non_associativity_witness() -> CheckResult {
    let lhs = op(GraftOp::Lgraft, &v(), &op(GraftOp::Lgraft, &v(), &v()));
    let rhs = op(GraftOp::Lgraft, &op(GraftOp::Lgraft, &v(), &v()), &v());
    CheckResult::single("lgraft is not associative on the single vertex", lhs != rhs, || {
        format!("both sides equal {lhs}")
    })
}

pub fn right_non_associativity_witness() -> CheckResult {
    let lhs = op(GraftOp::Rgraft, &v(), &op(GraftOp::Rgraft, &v(), &v()));
    let rhs = op(GraftOp::Rgraft, &op(GraftOp::Rgraft, &v(), &v()), &v());
    CheckResult::single("rgraft is not associative on the single vertex", lhs != rhs, || {
        format!("both sides equal {lhs}")
    })
}

pub fn non_freeness_witness() -> CheckResult {
    let lhs = op(GraftOp::Rgraft, &v(), &op(GraftOp::Rgraft, &v(), &v()));
    let rhs = op(GraftOp::Rgraft, &v(), &op(GraftOp::Lgraft, &v(), &v()));
    CheckResult::single("1 ≺ (1 ≺ 1) = 1 ≺ (1 ≻ 1)", lhs == rhs, || format!("{lhs} vs {rhs}"))
}

/// Tables checked by the counts suite.
pub fn count_tables() -> Vec<SeriesId> {
    let mut ids = vec![
        SeriesId::BinftyForests,
        SeriesId::BinftyTrees,
        SeriesId::B0Trees,
        SeriesId::B0Forests,
        SeriesId::BTrees,
        SeriesId::BForests,
        SeriesId::DDims,
    ];
    for i in 1..=6 {
        ids.push(SeriesId::BiTrees(i));
        ids.push(SeriesId::BiForests(i));
    }
    ids.extend((1..=4).map(SeriesId::BinftyLength));
    ids
}

fn count_checks(n: usize, strategy: Strategy) -> Vec<CheckResult> {
    let mut checks: Vec<CheckResult> = count_tables()
        .into_iter()
        .map(|id| {
            let max = n.min(enumeration_bound(id));
            let report = verify_against_enumeration(id, max).expect("within bound");
            let outcomes = report
                .rows
                .iter()
                .map(|r| {
                    (!r.matches()).then(|| format!("degree {}: series {} vs enumerated {}", r.degree, r.expected, r.enumerated))
                })
                .collect();
            CheckResult::from_outcomes(format!("{id} (degree <= {max})"), outcomes)
        })
        .collect();
    let ladder_max = n.min(8);
    let outcomes = (1..=ladder_max)
        .map(|d| {
            let l = ladders(d);
            let want: BTreeSet<Signature> = (1..=d).map(|i| Signature::ladder(d, i)).collect();
            let got: BTreeSet<Signature> = l.keys().cloned().collect();
            let total = generate_set(FamilySelector::G, d, None)
                .expect("degree ≥ 1")
                .iter()
                .filter(|f| f.as_tree().is_some_and(|t| t.is_ladder()))
                .count();
            (total != d || got != want).then(|| format!("degree {d}: {total} ladders"))
        })
        .collect();
    checks.push(CheckResult::from_outcomes(format!("one ladder per signature (degree <= {ladder_max})"), outcomes));
    let shape_max = n.min(7);
    let shapes: Vec<PlaneTree> = (1..=shape_max).flat_map(PlaneTree::all).collect();
    for family in [FamilySelector::G, FamilySelector::T] {
        checks.push(indexing_check(family, &shapes, strategy));
    }
    checks
}

/// Closed count formula against brute force over all labellings.
pub fn indexing_check(family: FamilySelector, shapes: &[PlaneTree], strategy: Strategy) -> CheckResult {
    let outcomes = exec::map(strategy, shapes, |t| {
        let formula = count_indexings(t, family).expect("G or T");
        let oracle = oracle_count_indexings(t, family).expect("within oracle bound");
        (formula != oracle.into()).then(|| format!("{t}: formula {formula}, oracle {oracle}"))
    });
    let max = shapes.iter().map(PlaneTree::size).max().unwrap_or(0);
    CheckResult::from_outcomes(format!("{family} indexing count vs oracle (degree <= {max})"), outcomes)
}

fn prim_tot_check(n: usize) -> CheckResult {
    let max = n.min(PRIM_TOT_MAX_DEGREE);
    let report = verify_against_enumeration(SeriesId::DDims, max).expect("within bound");
    let outcomes = report
        .rows
        .iter()
        .map(|r| (!r.matches()).then(|| format!("degree {}: expected {}, kernel {}", r.degree, r.expected, r.enumerated)))
        .collect();
    let _ = prim_tot_dimension;
    CheckResult::from_outcomes(format!("totally primitive dimensions (degree <= {max})"), outcomes)
}

fn closure_checks(n: usize, strategy: Strategy) -> Vec<CheckResult> {
    let ops = |xs: &[GraftOp]| xs.iter().copied().collect::<BTreeSet<_>>();
    let bigraft = generate_closure_with(&ops(&[GraftOp::Concat, GraftOp::Lgraft, GraftOp::Rgraft]), n, strategy);
    let duplicial = generate_closure_with(&ops(&[GraftOp::Concat, GraftOp::Nwarrow]), n, strategy);
    let left = generate_closure_with(&ops(&[GraftOp::Concat, GraftOp::Lgraft]), n, strategy);
    let b: BTreeSet<OrderedForest> = Algebra::B.basis_up_to(n).into_iter().collect();
    let bl: BTreeSet<OrderedForest> = Algebra::Bl.basis_up_to(n).into_iter().collect();
    let diff = |a: &BTreeSet<OrderedForest>, b: &BTreeSet<OrderedForest>| {
        format!("{} extra, {} missing", a.difference(b).count(), b.difference(a).count())
    };
    vec![
        CheckResult::single(format!("concat, lgraft, rgraft generate B (degree <= {n})"), bigraft == b, || diff(&bigraft, &b)),
        CheckResult::single(format!("concat, nwarrow generate Bl words (degree <= {n})"), duplicial == bl, || diff(&duplicial, &bl)),
        CheckResult::single(format!("concat, lgraft generate Bl words (degree <= {n})"), left == bl, || diff(&left, &bl)),
    ]
}
