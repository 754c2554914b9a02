//! The operations ↖, ≻ and ≺, their tensor extensions, the identities they
//! satisfy and closure generation from the single vertex.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exec::{self, Strategy};
use crate::forest::{standardize, Label, OrderedForest, OrderedTree};
use crate::hopf::{
    coproduct, coproduct_elem, coproduct_left, coproduct_right, product, AlgebraElement,
    CoproductVariant, HopfError, Tensor2Element,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraftOp {
    Concat,
    Nwarrow,
    Lgraft,
    Rgraft,
}

impl fmt::Display for GraftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraftOp::Concat => "concat",
            GraftOp::Nwarrow => "nwarrow",
            GraftOp::Lgraft => "lgraft",
            GraftOp::Rgraft => "rgraft",
        })
    }
}

impl FromStr for GraftOp {
    type Err = StructError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [GraftOp::Concat, GraftOp::Nwarrow, GraftOp::Lgraft, GraftOp::Rgraft]
            .into_iter()
            .find(|op| op.to_string() == s)
            .ok_or_else(|| StructError::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructError {
    #[error("{0} is undefined on two units")]
    BothUnits(GraftOp),
    #[error("{name} takes {expected} arguments, got {got}")]
    Arity { name: IdentityName, expected: usize, got: usize },
    #[error("{0} is not defined with a unit argument here")]
    UnitArgument(IdentityName),
    #[error("{0} has no tensor extension")]
    NoTensorExtension(GraftOp),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// Grafts `g` on the rightmost leaf of `f`.
pub fn nwarrow(f: &OrderedForest, g: &OrderedForest) -> OrderedForest {
    if f.is_empty() {
        return g.clone();
    }
    if g.is_empty() {
        return f.clone();
    }
    let r = f.rightmost_leaf().expect("nonempty");
    let gd = g.degree() as Label;
    let mut trees = f.trees().to_vec();
    for t in &mut trees {
        t.relabel(&|l| if l < r { l } else { l + gd });
    }
    let grafted: Vec<OrderedTree> = g.trees().iter().map(|t| t.shifted(r - 1)).collect();
    let mut leaf = trees.last_mut().expect("nonempty");
    while !leaf.is_leaf() {
        leaf = leaf.children_mut().last_mut().expect("child");
    }
    *leaf.children_mut() = grafted;
    OrderedForest::from_trees_unchecked(trees)
}

/// `f ≻ g` on basis forests; `None` is the zero result `a ≻ 1`.
pub fn lgraft_basis(f: &OrderedForest, g: &OrderedForest) -> Result<Option<OrderedForest>, StructError> {
    match (f.is_empty(), g.is_empty()) {
        (true, true) => Err(StructError::BothUnits(GraftOp::Lgraft)),
        (true, false) => Ok(Some(g.clone())),
        (false, true) => Ok(None),
        (false, false) => {
            let by = f.degree() as Label;
            let mut trees: Vec<OrderedTree> = g.trees().iter().map(|t| t.shifted(by)).collect();
            let first = trees[0].children_mut();
            let mut children = f.trees().to_vec();
            children.append(first);
            *first = children;
            Ok(Some(OrderedForest::from_trees_unchecked(trees)))
        }
    }
}

/// `f ≺ g` on basis forests; `None` is the zero result `1 ≺ a`.
pub fn rgraft_basis(f: &OrderedForest, g: &OrderedForest) -> Result<Option<OrderedForest>, StructError> {
    match (f.is_empty(), g.is_empty()) {
        (true, true) => Err(StructError::BothUnits(GraftOp::Rgraft)),
        (false, true) => Ok(Some(f.clone())),
        (true, false) => Ok(None),
        (false, false) => {
            let mut trees = f.trees().to_vec();
            let mut next = f.degree() as Label;
            for t in g.trees() {
                let mut t = standardize(vec![t.clone()]).into_trees().pop().expect("tree");
                let size = t.size() as Label;
                let root = t.label();
                let base = next;
                t.relabel(&|l| match l.cmp(&root) {
                    std::cmp::Ordering::Less => base + l,
                    std::cmp::Ordering::Equal => base + size,
                    std::cmp::Ordering::Greater => base + l - 1,
                });
                trees.last_mut().expect("nonempty").children_mut().push(t);
                next += size;
            }
            Ok(Some(OrderedForest::from_trees_unchecked(trees)))
        }
    }
}

fn to_element(f: Option<OrderedForest>) -> AlgebraElement {
    f.map(AlgebraElement::basis).unwrap_or_default()
}

pub fn lgraft(f: &OrderedForest, g: &OrderedForest) -> Result<AlgebraElement, StructError> {
    lgraft_basis(f, g).map(to_element)
}

pub fn rgraft(f: &OrderedForest, g: &OrderedForest) -> Result<AlgebraElement, StructError> {
    rgraft_basis(f, g).map(to_element)
}

/// A basis-valued operation; `None` is zero.
pub fn apply_op(op: GraftOp, f: &OrderedForest, g: &OrderedForest) -> Result<Option<OrderedForest>, StructError> {
    match op {
        GraftOp::Concat => Ok(Some(f.concat(g))),
        GraftOp::Nwarrow => Ok(Some(nwarrow(f, g))),
        GraftOp::Lgraft => lgraft_basis(f, g),
        GraftOp::Rgraft => rgraft_basis(f, g),
    }
}

/// Bilinear extension of a basis operation.
pub fn apply_elem(op: GraftOp, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, StructError> {
    a.try_flat_map(|x| b.try_flat_map(|y| apply_op(op, x, y).map(to_element)))
}

/// Extension of ≻ or ≺ to `A ⊗ A`: when both right legs are the unit the
/// left legs are grafted, otherwise left legs multiply and right legs graft.
pub fn tensor_graft(op: GraftOp, x: &Tensor2Element, y: &Tensor2Element) -> Result<Tensor2Element, StructError> {
    if !matches!(op, GraftOp::Lgraft | GraftOp::Rgraft) {
        return Err(StructError::NoTensorExtension(op));
    }
    x.try_flat_map(|(a, b)| {
        y.try_flat_map(|(c, d)| {
            if b.is_empty() && d.is_empty() {
                Ok(apply_op(op, a, c)?
                    .map(|g| Tensor2Element::basis((g, OrderedForest::empty())))
                    .unwrap_or_default())
            } else {
                Ok(apply_op(op, b, d)?
                    .map(|g| Tensor2Element::basis((a.concat(c), g)))
                    .unwrap_or_default())
            }
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityName {
    E1a,
    E1b,
    E1c,
    E2a,
    E2b,
    E2c,
    E3prec,
    E3succ,
    E4prec,
    E4succ,
    LGa,
    LGb,
    RGa,
    RGb,
    Bigraft,
    DeltaSucc,
    DeltaPrec,
}

impl IdentityName {
    pub const ALL: [IdentityName; 17] = [
        IdentityName::E1a,
        IdentityName::E1b,
        IdentityName::E1c,
        IdentityName::E2a,
        IdentityName::E2b,
        IdentityName::E2c,
        IdentityName::E3prec,
        IdentityName::E3succ,
        IdentityName::E4prec,
        IdentityName::E4succ,
        IdentityName::LGa,
        IdentityName::LGb,
        IdentityName::RGa,
        IdentityName::RGb,
        IdentityName::Bigraft,
        IdentityName::DeltaSucc,
        IdentityName::DeltaPrec,
    ];

    pub fn arity(self) -> usize {
        use IdentityName::*;
        match self {
            E2a | E2b | E2c => 1,
            E3prec | E3succ | E4prec | E4succ | DeltaSucc | DeltaPrec => 2,
            E1a | E1b | E1c | LGa | LGb | RGa | RGb | Bigraft => 3,
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IdentityName::*;
        f.write_str(match self {
            E1a => "E1a",
            E1b => "E1b",
            E1c => "E1c",
            E2a => "E2a",
            E2b => "E2b",
            E2c => "E2c",
            E3prec => "E3prec",
            E3succ => "E3succ",
            E4prec => "E4prec",
            E4succ => "E4succ",
            LGa => "LGa",
            LGb => "LGb",
            RGa => "RGa",
            RGb => "RGb",
            Bigraft => "BIGRAFT",
            DeltaSucc => "DELTASUCC",
            DeltaPrec => "DELTAPREC",
        })
    }
}

impl FromStr for IdentityName {
    type Err = StructError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityName::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| StructError::UnknownName(s.to_string()))
    }
}

fn el(f: &OrderedForest) -> AlgebraElement {
    AlgebraElement::basis(f.clone())
}

fn t2(a: OrderedForest, b: OrderedForest) -> Tensor2Element {
    Tensor2Element::basis((a, b))
}

/// Evaluates both sides of an identity independently and compares them.
pub fn check_identity(name: IdentityName, args: &[OrderedForest]) -> Result<bool, StructError> {
    use CoproductVariant::{Full, LeftRoot, PrecRed, Reduced, RightRoot, SuccRed};
    use IdentityName::*;
    if args.len() != name.arity() {
        return Err(StructError::Arity { name, expected: name.arity(), got: args.len() });
    }
    let needs_nonempty = |fs: &[&OrderedForest]| {
        if fs.iter().any(|f| f.is_empty()) {
            Err(StructError::UnitArgument(name))
        } else {
            Ok(())
        }
    };
    let op = |op, a: &AlgebraElement, b: &AlgebraElement| apply_elem(op, a, b);
    let mul = |a: &AlgebraElement, b: &AlgebraElement| product(a, b);
    let delta = |f: &OrderedForest, v| coproduct(f, v);

    match name {
        E1a | E1b | E1c | LGa | LGb | RGa | RGb | Bigraft => {
            let (x, y, z) = (el(&args[0]), el(&args[1]), el(&args[2]));
            let (lhs, rhs) = match name {
                E1a => (
                    op(GraftOp::Nwarrow, &op(GraftOp::Nwarrow, &x, &y)?, &z)?,
                    op(GraftOp::Nwarrow, &x, &op(GraftOp::Nwarrow, &y, &z)?)?,
                ),
                E1b => (mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z))),
                E1c => (op(GraftOp::Nwarrow, &mul(&x, &y), &z)?, mul(&x, &op(GraftOp::Nwarrow, &y, &z)?)),
                LGa => (
                    op(GraftOp::Lgraft, &mul(&x, &y), &z)?,
                    op(GraftOp::Lgraft, &x, &op(GraftOp::Lgraft, &y, &z)?)?,
                ),
                LGb => (mul(&op(GraftOp::Lgraft, &x, &y)?, &z), op(GraftOp::Lgraft, &x, &mul(&y, &z))?),
                RGa => (
                    op(GraftOp::Rgraft, &x, &mul(&y, &z))?,
                    op(GraftOp::Rgraft, &op(GraftOp::Rgraft, &x, &y)?, &z)?,
                ),
                RGb => (mul(&x, &op(GraftOp::Rgraft, &y, &z)?), op(GraftOp::Rgraft, &mul(&x, &y), &z)?),
                _ => (
                    op(GraftOp::Rgraft, &op(GraftOp::Lgraft, &x, &y)?, &z)?,
                    op(GraftOp::Lgraft, &x, &op(GraftOp::Rgraft, &y, &z)?)?,
                ),
            };
            Ok(lhs == rhs)
        }
        E2a | E2b | E2c => {
            let f = &args[0];
            needs_nonempty(&[f])?;
            let (lhs, rhs) = match name {
                E2a => {
                    let d = delta(f, PrecRed)?;
                    (coproduct_left(&d, PrecRed)?, coproduct_right(&d, Reduced)?)
                }
                E2b => {
                    let lhs = coproduct_left(&delta(f, PrecRed)?, SuccRed)?;
                    (lhs, coproduct_right(&delta(f, SuccRed)?, PrecRed)?)
                }
                _ => {
                    let d = delta(f, SuccRed)?;
                    (coproduct_left(&d, Reduced)?, coproduct_right(&d, SuccRed)?)
                }
            };
            Ok(lhs == rhs)
        }
        E3prec | E3succ => {
            let (x, y) = (&args[0], &args[1]);
            needs_nonempty(&[x, y])?;
            let (v, lead) = if name == E3prec { (PrecRed, t2(y.clone(), x.clone())) } else { (SuccRed, t2(x.clone(), y.clone())) };
            let lhs = delta(&x.concat(y), v)?;
            let dx = delta(x, Reduced)?;
            let dy = delta(y, v)?;
            let mut rhs = lead;
            rhs += &dx.flat_map(|(a, b)| {
                if v == PrecRed {
                    t2(a.concat(y), b.clone())
                } else {
                    t2(a.clone(), b.concat(y))
                }
            });
            rhs += &dy.flat_map(|(a, b)| t2(x.concat(a), b.clone()));
            rhs += &dy.flat_map(|(a, b)| t2(a.clone(), x.concat(b)));
            rhs += &dx.flat_map(|(a, b)| dy.flat_map(|(c, d)| t2(a.concat(c), b.concat(d))));
            Ok(lhs == rhs)
        }
        E4prec | E4succ => {
            let (x, y) = (&args[0], &args[1]);
            needs_nonempty(&[x, y])?;
            let lhs_v = if name == E4prec { PrecRed } else { SuccRed };
            let lhs = delta(&nwarrow(x, y), lhs_v)?;
            let xs = delta(x, SuccRed)?;
            let ys = delta(y, lhs_v)?;
            let mut rhs = Tensor2Element::zero();
            if name == E4prec {
                let xp = delta(x, PrecRed)?;
                rhs += &t2(y.clone(), x.clone());
                rhs += &ys.flat_map(|(a, b)| t2(a.clone(), nwarrow(x, b)));
                rhs += &xp.flat_map(|(a, b)| t2(nwarrow(a, y), b.clone()));
                rhs += &xs.flat_map(|(a, b)| t2(a.concat(y), b.clone()));
            } else {
                rhs += &ys.flat_map(|(a, b)| t2(a.clone(), nwarrow(x, b)));
                rhs += &xs.flat_map(|(a, b)| t2(a.clone(), nwarrow(b, y)));
            }
            rhs += &xs.flat_map(|(a, b)| ys.flat_map(|(c, d)| t2(a.concat(c), nwarrow(b, d))));
            Ok(lhs == rhs)
        }
        DeltaSucc => {
            let (f, g) = (&args[0], &args[1]);
            needs_nonempty(&[g])?;
            let lhs = coproduct_elem(&lgraft(f, g)?, LeftRoot)?;
            let rhs = tensor_graft(GraftOp::Lgraft, &delta(f, Full)?, &delta(g, LeftRoot)?)?;
            Ok(lhs == rhs)
        }
        DeltaPrec => {
            let (f, g) = (&args[0], &args[1]);
            needs_nonempty(&[f])?;
            let lhs = coproduct_elem(&rgraft(f, g)?, RightRoot)?;
            let rhs = tensor_graft(GraftOp::Rgraft, &delta(f, RightRoot)?, &delta(g, Full)?)?;
            Ok(lhs == rhs)
        }
    }
}

/// Smallest set containing the single vertex and closed under `ops`,
/// restricted to degree at most `n`.
pub fn generate_closure(ops: &BTreeSet<GraftOp>, n: usize) -> BTreeSet<OrderedForest> {
    generate_closure_with(ops, n, Strategy::default())
}

pub fn generate_closure_with(ops: &BTreeSet<GraftOp>, n: usize, strategy: Strategy) -> BTreeSet<OrderedForest> {
    let mut levels: Vec<Vec<OrderedForest>> = vec![Vec::new(); n + 1];
    if n >= 1 {
        levels[1] = vec![OrderedForest::vertex()];
    }
    for d in 2..=n {
        let mut layer = BTreeSet::new();
        for a in 1..d {
            let right = &levels[d - a];
            let found = exec::map(strategy, &levels[a], |x| {
                let mut out = Vec::new();
                for y in right {
                    for &op in ops {
                        // Both arguments are nonempty, so no operation can fail.
                        if let Ok(Some(f)) = apply_op(op, x, y) {
                            out.push(f);
                        }
                    }
                }
                out
            });
            layer.extend(found.into_iter().flatten());
        }
        levels[d] = layer.into_iter().collect();
    }
    levels.into_iter().flatten().collect()
}
