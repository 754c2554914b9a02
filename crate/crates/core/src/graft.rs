//! The grafting operators B⁺ and B⁻ and the tree families they build.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::cache::Memo;
use crate::forest::{Label, OrderedForest, OrderedTree, PlaneTree};
use crate::structures::{generate_closure, GraftOp};

/// Largest degree accepted by the labelling oracle.
pub const ORACLE_MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraftError {
    #[error("signature has length {got}, expected {expected}")]
    InvalidSignatureLength { expected: usize, got: usize },
    #[error("invalid signature {0:?}")]
    InvalidSignature(String),
    #[error("a signature is only meaningful for the family G")]
    SignatureWithoutG,
    #[error("forest is not in G")]
    NotInG,
    #[error("degree {degree} exceeds the limit {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("family {0} is not supported here")]
    UnsupportedFamily(FamilySelector),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// A word over {+, −}; the first letter is always `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    letters: Vec<Sign>,
}

impl Signature {
    /// Canonicalizes the first letter to `+`.
    pub fn new(mut letters: Vec<Sign>) -> Self {
        if let Some(first) = letters.first_mut() {
            *first = Sign::Plus;
        }
        Signature { letters }
    }

    pub fn letters(&self) -> &[Sign] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_all_plus(&self) -> bool {
        self.letters.iter().all(|&s| s == Sign::Plus)
    }

    /// Whether letters `1..=n−i` are all `+`.
    pub fn in_level(&self, i: usize) -> bool {
        let fixed = self.letters.len().saturating_sub(i);
        self.letters[..fixed].iter().all(|&s| s == Sign::Plus)
    }

    /// The `2^(n−1)` canonical signatures of length `n`.
    pub fn all(n: usize) -> Vec<Signature> {
        if n == 0 {
            return Vec::new();
        }
        (0..n - 1)
            .map(|_| [Sign::Plus, Sign::Minus])
            .multi_cartesian_product()
            .map(|tail| {
                let mut letters = vec![Sign::Plus];
                letters.extend(tail);
                Signature { letters }
            })
            .collect()
    }

    /// `+^i −^(n−i)`.
    pub fn ladder(n: usize, i: usize) -> Signature {
        let letters = (0..n).map(|k| if k < i { Sign::Plus } else { Sign::Minus }).collect();
        Signature::new(letters)
    }

    fn pushed(&self, s: Sign) -> Signature {
        let mut letters = self.letters.clone();
        letters.push(s);
        Signature::new(letters)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.letters {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = GraftError;
    /// Accepts `+`, `-` or `−`, optionally separated by commas or spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for c in s.chars() {
            match c {
                '+' => letters.push(Sign::Plus),
                '-' | '−' => letters.push(Sign::Minus),
                ',' | ' ' => {}
                _ => return Err(GraftError::InvalidSignature(s.to_string())),
            }
        }
        if letters.is_empty() {
            return Err(GraftError::InvalidSignature(s.to_string()));
        }
        Ok(Signature::new(letters))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySelector {
    G,
    G0,
    Gi(usize),
    T,
    Tplus,
    Tminus,
    Bl,
    Br,
}

impl fmt::Display for FamilySelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySelector::G => f.write_str("G"),
            FamilySelector::G0 => f.write_str("G0"),
            FamilySelector::Gi(i) => write!(f, "G{i}"),
            FamilySelector::T => f.write_str("T"),
            FamilySelector::Tplus => f.write_str("Tplus"),
            FamilySelector::Tminus => f.write_str("Tminus"),
            FamilySelector::Bl => f.write_str("Bl"),
            FamilySelector::Br => f.write_str("Br"),
        }
    }
}

impl FromStr for FamilySelector {
    type Err = GraftError;
    /// `G`, `G0`, `G<i>` or `Gi(<i>)`, `T`, `Tplus`/`T+`, `Tminus`/`T-`, `Bl`, `Br`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GraftError::UnknownFamily(s.to_string());
        Ok(match s {
            "G" => FamilySelector::G,
            "G0" => FamilySelector::G0,
            "T" => FamilySelector::T,
            "Tplus" | "T+" => FamilySelector::Tplus,
            "Tminus" | "T-" => FamilySelector::Tminus,
            "Bl" => FamilySelector::Bl,
            "Br" => FamilySelector::Br,
            _ => {
                let digits = s
                    .strip_prefix("Gi(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix('G'))
                    .ok_or_else(unknown)?;
                match digits.parse::<usize>() {
                    Ok(0) => FamilySelector::G0,
                    Ok(i) => FamilySelector::Gi(i),
                    Err(_) => return Err(unknown()),
                }
            }
        })
    }
}

/// A new root labelled `n+1` above the trees of `f`.
pub fn b_minus(f: &OrderedForest) -> OrderedTree {
    OrderedTree::new(f.degree() as Label + 1, f.trees().to_vec())
}

/// Vertex `n+1` grafted as the rightmost child of the first root, the
/// remaining trees becoming its subtrees.
pub fn b_plus(f: &OrderedForest) -> OrderedTree {
    let n = f.degree() as Label;
    let mut trees = f.trees().to_vec().into_iter();
    match trees.next() {
        None => OrderedTree::leaf(1),
        Some(mut first) => {
            first.children_mut().push(OrderedTree::new(n + 1, trees.collect()));
            first
        }
    }
}

type Level = Vec<(Signature, Vec<OrderedForest>)>;

static G_LEVELS: LazyLock<Memo<usize, Level>> = LazyLock::new(Memo::new);

/// The forests of every `G^(ε)` with `|ε| = n`, keyed by signature.
fn g_level(n: usize) -> Arc<Level> {
    G_LEVELS.get_or(n, || {
        if n == 1 {
            return vec![(Signature::new(vec![Sign::Plus]), vec![OrderedForest::vertex()])];
        }
        let new = n as Label;
        let prev = g_level(n - 1);
        let mut out = Vec::with_capacity(2 * prev.len());
        for (sig, forests) in prev.iter() {
            let mut plus = Vec::new();
            for f in forests {
                let trees = f.trees();
                let mut appended = trees.to_vec();
                appended.push(OrderedTree::leaf(new));
                plus.push(OrderedForest::from_trees_unchecked(appended));
                for i in 0..trees.len() {
                    let mut head = trees[..i].to_vec();
                    let mut graft = trees[i].clone();
                    graft.children_mut().push(OrderedTree::new(new, trees[i + 1..].to_vec()));
                    head.push(graft);
                    plus.push(OrderedForest::from_trees_unchecked(head));
                }
            }
            plus.sort();
            let mut minus: Vec<OrderedForest> =
                forests.iter().map(|f| OrderedForest::from(b_minus(f))).collect();
            minus.sort();
            out.push((sig.pushed(Sign::Plus), plus));
            out.push((sig.pushed(Sign::Minus), minus));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    })
}

static T_TREES: LazyLock<Memo<usize, Vec<OrderedTree>>> = LazyLock::new(Memo::new);
static BL_TREES: LazyLock<Memo<usize, Vec<OrderedTree>>> = LazyLock::new(Memo::new);
static BR_TREES: LazyLock<Memo<usize, Vec<OrderedTree>>> = LazyLock::new(Memo::new);
static WORDS: LazyLock<Memo<(Algebra, usize), Vec<OrderedForest>>> = LazyLock::new(Memo::new);
static GENERATORS: LazyLock<Memo<(Algebra, usize), Vec<OrderedTree>>> = LazyLock::new(Memo::new);

fn t_trees(n: usize) -> Arc<Vec<OrderedTree>> {
    T_TREES.get_or(n, || {
        if n == 1 {
            return vec![OrderedTree::leaf(1)];
        }
        let words = Algebra::B.basis(n - 1);
        let mut out: Vec<OrderedTree> =
            words.iter().flat_map(|f| [b_minus(f), b_plus(f)]).collect();
        out.sort();
        out
    })
}

fn bl_trees(n: usize) -> Arc<Vec<OrderedTree>> {
    BL_TREES.get_or(n, || {
        if n == 1 {
            return vec![OrderedTree::leaf(1)];
        }
        let mut out: Vec<OrderedTree> = Algebra::Bl.basis(n - 1).iter().map(b_minus).collect();
        out.sort();
        out
    })
}

fn br_trees(n: usize) -> Arc<Vec<OrderedTree>> {
    BR_TREES.get_or(n, || {
        let ops = BTreeSet::from([GraftOp::Concat, GraftOp::Rgraft]);
        let mut out: Vec<OrderedTree> = generate_closure(&ops, n)
            .into_iter()
            .filter(|f| f.degree() == n)
            .filter_map(|f| f.as_tree().cloned())
            .collect();
        out.sort();
        out
    })
}

fn g_trees_where(n: usize, keep: impl Fn(&Signature) -> bool) -> Vec<OrderedTree> {
    let mut out: Vec<OrderedTree> = g_level(n)
        .iter()
        .filter(|(s, _)| keep(s))
        .flat_map(|(_, fs)| fs.iter().filter_map(|f| f.as_tree().cloned()))
        .collect();
    out.sort();
    out
}

/// The algebras spanned by free words over a tree family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    /// Words over the trees of G.
    Binfty,
    /// Words over the trees of G⁰.
    B0,
    /// Words over the trees of G^i.
    Bi(usize),
    /// Words over the trees of T.
    B,
    Bl,
    Br,
}

impl Algebra {
    pub fn tree_family(self) -> FamilySelector {
        match self {
            Algebra::Binfty => FamilySelector::G,
            Algebra::B0 => FamilySelector::G0,
            Algebra::Bi(0) => FamilySelector::G0,
            Algebra::Bi(i) => FamilySelector::Gi(i),
            Algebra::B => FamilySelector::T,
            Algebra::Bl => FamilySelector::Bl,
            Algebra::Br => FamilySelector::Br,
        }
    }

    /// Generating trees of degree `n`, sorted.
    pub fn generators(self, n: usize) -> Arc<Vec<OrderedTree>> {
        if n == 0 {
            return Arc::new(Vec::new());
        }
        match self {
            Algebra::B => t_trees(n),
            Algebra::Bl => bl_trees(n),
            Algebra::Br => br_trees(n),
            Algebra::Binfty => GENERATORS.get_or((self, n), || g_trees_where(n, |_| true)),
            Algebra::B0 | Algebra::Bi(0) => {
                GENERATORS.get_or((Algebra::B0, n), || g_trees_where(n, Signature::is_all_plus))
            }
            Algebra::Bi(i) => GENERATORS.get_or((self, n), || g_trees_where(n, |s| s.in_level(i))),
        }
    }

    /// Free words of degree `n` over the generators, sorted.
    pub fn basis(self, n: usize) -> Arc<Vec<OrderedForest>> {
        let key = match self {
            Algebra::Bi(0) => Algebra::B0,
            other => other,
        };
        WORDS.get_or((key, n), || {
            if n == 0 {
                return vec![OrderedForest::empty()];
            }
            let mut out = Vec::new();
            for k in 1..=n {
                let heads = key.generators(k);
                let tails = key.basis(n - k);
                for h in heads.iter() {
                    let h = OrderedForest::from(h.clone());
                    out.extend(tails.iter().map(|t| h.concat(t)));
                }
            }
            out.sort();
            out
        })
    }

    /// All basis forests of degree `1..=n`.
    pub fn basis_up_to(self, n: usize) -> Vec<OrderedForest> {
        (1..=n).flat_map(|d| self.basis(d).iter().cloned().collect::<Vec<_>>()).collect()
    }

    pub fn is_generator(self, t: &OrderedTree) -> bool {
        let f = OrderedForest::from(t.clone());
        membership(self.tree_family(), &f)
    }

    /// Whether `f` is a word of standardized generators (the unit included).
    pub fn contains(self, f: &OrderedForest) -> bool {
        f.factors().is_some_and(|fs| fs.iter().all(|t| self.is_generator(t)))
    }
}

/// The exact set selected by `sel` at degree `n`, sorted.
///
/// For G, G0 and Gi these are forests (the union of the addressed `G^(ε)`);
/// the other families consist of trees. A signature is accepted for G only.
pub fn generate_set(
    sel: FamilySelector,
    n: usize,
    sig: Option<&Signature>,
) -> Result<Vec<OrderedForest>, GraftError> {
    if n == 0 {
        return Err(GraftError::ZeroDegree);
    }
    if let Some(sig) = sig {
        if sel != FamilySelector::G {
            return Err(GraftError::SignatureWithoutG);
        }
        if sig.len() != n {
            return Err(GraftError::InvalidSignatureLength { expected: n, got: sig.len() });
        }
        let level = g_level(n);
        let found = level.iter().find(|(s, _)| s == sig).map(|(_, fs)| fs.clone());
        return Ok(found.unwrap_or_default());
    }
    let from_level = |keep: &dyn Fn(&Signature) -> bool| {
        let mut out: Vec<OrderedForest> = g_level(n)
            .iter()
            .filter(|(s, _)| keep(s))
            .flat_map(|(_, fs)| fs.iter().cloned())
            .collect();
        out.sort();
        out
    };
    let trees = |ts: Arc<Vec<OrderedTree>>| ts.iter().cloned().map(OrderedForest::from).collect();
    Ok(match sel {
        FamilySelector::G => from_level(&|_| true),
        FamilySelector::G0 => from_level(&Signature::is_all_plus),
        FamilySelector::Gi(i) => from_level(&|s| s.in_level(i)),
        FamilySelector::T => trees(t_trees(n)),
        FamilySelector::Tplus | FamilySelector::Tminus => {
            let want_minus = sel == FamilySelector::Tminus;
            t_trees(n)
                .iter()
                .filter(|t| n == 1 || (t.label() as usize == n) == want_minus)
                .cloned()
                .map(OrderedForest::from)
                .collect()
        }
        FamilySelector::Bl => trees(bl_trees(n)),
        FamilySelector::Br => trees(br_trees(n)),
    })
}

/// The single-tree members of [`generate_set`].
pub fn generate_trees(sel: FamilySelector, n: usize) -> Result<Vec<OrderedTree>, GraftError> {
    Ok(generate_set(sel, n, None)?.into_iter().filter_map(|f| f.as_tree().cloned()).collect())
}

/// Recovers the canonical signature by peeling the maximal label.
pub fn signature_of(f: &OrderedForest) -> Result<Signature, GraftError> {
    let mut trees = f.trees().to_vec();
    let mut n = f.degree() as Label;
    let mut letters = Vec::with_capacity(f.degree());
    while n > 1 {
        if trees.len() == 1 && trees[0].label() == n {
            let (_, children) = trees.pop().expect("one tree").into_parts();
            trees = children;
            letters.push(Sign::Minus);
        } else {
            let last = trees.last_mut().ok_or(GraftError::NotInG)?;
            if last.label() == n && last.is_leaf() {
                trees.pop();
            } else if last.children().last().map(OrderedTree::label) == Some(n) {
                let (_, grafted) = last.children_mut().pop().expect("child").into_parts();
                trees.extend(grafted);
            } else {
                return Err(GraftError::NotInG);
            }
            letters.push(Sign::Plus);
        }
        n -= 1;
    }
    if trees != [OrderedTree::leaf(1)] {
        return Err(GraftError::NotInG);
    }
    letters.push(Sign::Plus);
    letters.reverse();
    Ok(Signature::new(letters))
}

fn forest_of_trees_in_t(trees: Vec<OrderedTree>) -> bool {
    OrderedForest::from_trees_unchecked(trees)
        .factors()
        .is_some_and(|fs| fs.iter().all(tree_in_t))
}

/// Peeling test for T on a standardized tree.
fn tree_in_t(t: &OrderedTree) -> bool {
    let n = t.size() as Label;
    if n == 1 {
        return true;
    }
    if t.label() == n {
        return forest_of_trees_in_t(t.children().to_vec());
    }
    match t.children().split_last() {
        Some((last, rest)) if last.label() == n => {
            let mut trees = vec![OrderedTree::new(t.label(), rest.to_vec())];
            trees.extend(last.children().iter().cloned());
            forest_of_trees_in_t(trees)
        }
        _ => false,
    }
}

/// Postorder labelling check for the trees built from B⁻ alone.
fn tree_in_bl(t: &OrderedTree) -> bool {
    fn walk(t: &OrderedTree, next: &mut Label) -> bool {
        for c in t.children() {
            if !walk(c, next) {
                return false;
            }
        }
        *next += 1;
        t.label() == *next
    }
    walk(t, &mut 0)
}

pub fn membership(sel: FamilySelector, f: &OrderedForest) -> bool {
    if f.is_empty() {
        return false;
    }
    match sel {
        FamilySelector::G => signature_of(f).is_ok(),
        FamilySelector::G0 => signature_of(f).is_ok_and(|s| s.is_all_plus()),
        FamilySelector::Gi(i) => signature_of(f).is_ok_and(|s| s.in_level(i)),
        FamilySelector::T => f.as_tree().is_some_and(tree_in_t),
        FamilySelector::Tplus => {
            f.as_tree().is_some_and(|t| (f.degree() == 1 || t.label() as usize != f.degree()) && tree_in_t(t))
        }
        FamilySelector::Tminus => {
            f.as_tree().is_some_and(|t| t.label() as usize == f.degree() && tree_in_t(t))
        }
        FamilySelector::Bl => f.as_tree().is_some_and(tree_in_bl),
        FamilySelector::Br => {
            f.as_tree().is_some_and(|t| br_trees(f.degree()).binary_search(t).is_ok())
        }
    }
}

/// Number of labellings of `t` landing in G (closed formula) or T (recursion).
pub fn count_indexings(t: &PlaneTree, family: FamilySelector) -> Result<BigUint, GraftError> {
    match family {
        FamilySelector::G => {
            let mut total = BigUint::one();
            let mut prod = BigUint::one();
            let mut v = t;
            while let Some(first) = v.children().first() {
                prod *= v.children().len();
                total += &prod;
                v = first;
            }
            Ok(total)
        }
        FamilySelector::T => Ok(t_weight(t)),
        other => Err(GraftError::UnsupportedFamily(other)),
    }
}

fn t_weight(v: &PlaneTree) -> BigUint {
    let a: Vec<BigUint> = v.children().iter().map(t_weight).collect();
    // Product of the grandchildren weights below each child.
    let g: Vec<BigUint> = v
        .children()
        .iter()
        .map(|c| c.children().iter().map(t_weight).product())
        .collect();
    let mut total: BigUint = a.iter().product();
    for i in 0..a.len() {
        let left: BigUint = a[..i].iter().product();
        let right: BigUint = g[i..].iter().product();
        total += left * right;
    }
    total
}

fn labelled(t: &PlaneTree, labels: &mut impl Iterator<Item = Label>) -> OrderedTree {
    let label = labels.next().expect("enough labels");
    OrderedTree::new(label, t.children().iter().map(|c| labelled(c, labels)).collect())
}

/// Brute force over all `n!` labellings.
pub fn oracle_count_indexings(t: &PlaneTree, family: FamilySelector) -> Result<u64, GraftError> {
    let n = t.size();
    if n > ORACLE_MAX_DEGREE {
        return Err(GraftError::DegreeTooLarge { degree: n, max: ORACLE_MAX_DEGREE });
    }
    let mut count = 0;
    for perm in (1..=n as Label).permutations(n) {
        let tree = labelled(t, &mut perm.into_iter());
        if membership(family, &OrderedForest::from(tree)) {
            count += 1;
        }
    }
    Ok(count)
}

/// The unique labelling of `t` in G⁰ or in the B⁻-only family.
pub fn canonical_indexing(t: &PlaneTree, family: FamilySelector) -> Result<OrderedTree, GraftError> {
    match family {
        FamilySelector::G0 => Ok(g0_indexing(t)),
        FamilySelector::Bl => {
            fn post(t: &PlaneTree, next: &mut Label) -> OrderedTree {
                let children = t.children().iter().map(|c| post(c, next)).collect();
                *next += 1;
                OrderedTree::new(*next, children)
            }
            Ok(post(t, &mut 0))
        }
        other => Err(GraftError::UnsupportedFamily(other)),
    }
}

/// `B(T₁…T_m)` is `B⁺` of the indexed `B(T₁…T_{m−1})` followed by the
/// indexed subtrees of `T_m`.
fn g0_indexing(t: &PlaneTree) -> OrderedTree {
    match t.children().split_last() {
        None => OrderedTree::leaf(1),
        Some((last, rest)) => {
            let base = g0_indexing(&PlaneTree::new(rest.to_vec()));
            let mut f = OrderedForest::from(base);
            for c in last.children() {
                f = f.concat(&OrderedForest::from(g0_indexing(c)));
            }
            b_plus(&f)
        }
    }
}

/// The ladders of G of degree `n`, keyed by signature.
pub fn ladders(n: usize) -> BTreeMap<Signature, OrderedTree> {
    g_level(n)
        .iter()
        .flat_map(|(s, fs)| {
            fs.iter()
                .filter_map(|f| f.as_tree().filter(|t| t.is_ladder()).cloned())
                .map(move |t| (s.clone(), t))
        })
        .collect()
}
