//! Ordered and plane rooted forests, admissible cuts and the text format.
//!
//! A forest of degree `n` carries the labels `1..=n` bijectively. Trees are
//! written `label[child child ...]`, forests as space separated trees and the
//! empty forest as `()`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: &'static str },
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("label {label} out of range 1..={degree}")]
    LabelOutOfRange { label: Label, degree: usize },
    #[error("cut is not admissible")]
    NotAdmissible,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedTree {
    label: Label,
    children: Vec<OrderedTree>,
}

impl OrderedTree {
    pub fn new(label: Label, children: Vec<OrderedTree>) -> Self {
        OrderedTree { label, children }
    }

    pub fn leaf(label: Label) -> Self {
        OrderedTree { label, children: Vec::new() }
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn children(&self) -> &[OrderedTree] {
        &self.children
    }

    pub(crate) fn children_mut(&mut self) -> &mut Vec<OrderedTree> {
        &mut self.children
    }

    pub(crate) fn into_parts(self) -> (Label, Vec<OrderedTree>) {
        (self.label, self.children)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(OrderedTree::size).sum::<usize>()
    }

    /// Labels in preorder.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<Label>) {
        out.push(self.label);
        for c in &self.children {
            c.collect_labels(out);
        }
    }

    pub fn relabel(&mut self, f: &impl Fn(Label) -> Label) {
        self.label = f(self.label);
        for c in &mut self.children {
            c.relabel(f);
        }
    }

    pub fn shifted(&self, by: Label) -> OrderedTree {
        let mut t = self.clone();
        t.relabel(&|l| l + by);
        t
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Every non-leaf vertex has exactly one child.
    pub fn is_ladder(&self) -> bool {
        match self.children.as_slice() {
            [] => true,
            [c] => c.is_ladder(),
            _ => false,
        }
    }

    /// Label of the rightmost leaf.
    pub fn rightmost_leaf(&self) -> Label {
        match self.children.last() {
            None => self.label,
            Some(c) => c.rightmost_leaf(),
        }
    }

    pub fn shape(&self) -> PlaneTree {
        PlaneTree::new(self.children.iter().map(OrderedTree::shape).collect())
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            f.write_str("[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// A sequence of trees whose labels are exactly `1..=degree`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedForest {
    trees: Vec<OrderedTree>,
    degree: usize,
}

impl OrderedForest {
    /// Validates that the labels are exactly `1..=n`.
    pub fn new(trees: Vec<OrderedTree>) -> Result<Self, ForestError> {
        let f = OrderedForest::from_trees_unchecked(trees);
        let mut seen = vec![false; f.degree + 1];
        for t in &f.trees {
            for l in t.labels() {
                let i = l as usize;
                if i == 0 || i > f.degree {
                    return Err(ForestError::LabelOutOfRange { label: l, degree: f.degree });
                }
                if seen[i] {
                    return Err(ForestError::DuplicateLabel(l));
                }
                seen[i] = true;
            }
        }
        Ok(f)
    }

    pub(crate) fn from_trees_unchecked(trees: Vec<OrderedTree>) -> Self {
        let degree = trees.iter().map(OrderedTree::size).sum();
        OrderedForest { trees, degree }
    }

    pub fn empty() -> Self {
        OrderedForest::default()
    }

    /// The single vertex `1`.
    pub fn vertex() -> Self {
        OrderedForest::from_trees_unchecked(vec![OrderedTree::leaf(1)])
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of trees.
    pub fn length(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &[OrderedTree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<OrderedTree> {
        self.trees
    }

    pub fn as_tree(&self) -> Option<&OrderedTree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn is_tree(&self) -> bool {
        self.trees.len() == 1
    }

    /// Shift concatenation: the product of the forest algebra.
    pub fn concat(&self, other: &OrderedForest) -> OrderedForest {
        let by = self.degree as Label;
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().map(|t| t.shifted(by)));
        OrderedForest { trees, degree: self.degree + other.degree }
    }

    pub fn leftmost_root(&self) -> Option<Label> {
        self.trees.first().map(OrderedTree::label)
    }

    pub fn rightmost_root(&self) -> Option<Label> {
        self.trees.last().map(OrderedTree::label)
    }

    /// The rightmost leaf `r_F`.
    pub fn rightmost_leaf(&self) -> Option<Label> {
        self.trees.last().map(OrderedTree::rightmost_leaf)
    }

    /// Path from the rightmost root down to the rightmost leaf.
    pub(crate) fn right_spine(&self) -> Vec<Label> {
        let mut out = Vec::new();
        let mut cur = self.trees.last();
        while let Some(t) = cur {
            out.push(t.label);
            cur = t.children.last();
        }
        out
    }

    /// Decomposition into standardized trees when each tree occupies a
    /// consecutive label block, blocks increasing left to right.
    pub fn factors(&self) -> Option<Vec<OrderedTree>> {
        let mut offset: Label = 0;
        let mut out = Vec::with_capacity(self.trees.len());
        for t in &self.trees {
            let labels = t.labels();
            let size = labels.len() as Label;
            let (lo, hi) = labels
                .iter()
                .fold((Label::MAX, 0), |(lo, hi), &l| (lo.min(l), hi.max(l)));
            if lo != offset + 1 || hi != offset + size {
                return None;
            }
            let mut t = t.clone();
            t.relabel(&|l| l - offset);
            out.push(t);
            offset += size;
        }
        Some(out)
    }

    pub fn shape(&self) -> Vec<PlaneTree> {
        self.trees.iter().map(OrderedTree::shape).collect()
    }
}

impl From<OrderedTree> for OrderedForest {
    fn from(t: OrderedTree) -> Self {
        OrderedForest::from_trees_unchecked(vec![t])
    }
}

impl fmt::Display for OrderedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("()");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for OrderedForest {
    type Err = ForestError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_forest(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &'static str) -> ForestError {
        ForestError::Syntax { pos: self.pos, msg }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8, msg: &'static str) -> Result<(), ForestError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(msg))
        }
    }

    fn int(&mut self) -> Result<Label, ForestError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a label"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ForestError::Syntax { pos: start, msg: "label too large" })
    }

    fn tree(&mut self) -> Result<OrderedTree, ForestError> {
        let label = self.int()?;
        let mut children = Vec::new();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            children.push(self.tree()?);
            while self.peek() == Some(b' ') {
                self.pos += 1;
                children.push(self.tree()?);
            }
            self.expect(b']', "expected ']'")?;
        }
        Ok(OrderedTree { label, children })
    }

    fn trees(&mut self) -> Result<Vec<OrderedTree>, ForestError> {
        if self.bytes.get(self.pos..) == Some(b"()") {
            self.pos += 2;
            return Ok(Vec::new());
        }
        let mut trees = vec![self.tree()?];
        while self.peek() == Some(b' ') {
            self.pos += 1;
            trees.push(self.tree()?);
        }
        if self.pos != self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(trees)
    }
}

fn parse_trees(text: &str) -> Result<Vec<OrderedTree>, ForestError> {
    let mut p = Parser { bytes: text.trim().as_bytes(), pos: 0 };
    let trees = p.trees()?;
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(trees)
}

pub fn parse_forest(text: &str) -> Result<OrderedForest, ForestError> {
    OrderedForest::new(parse_trees(text)?)
}

pub fn format_forest(f: &OrderedForest) -> String {
    f.to_string()
}

/// Unlabelled planar rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn new(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    pub fn vertex() -> Self {
        PlaneTree::default()
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::size).sum::<usize>()
    }

    /// Height of the leftmost leaf, the root having height 0.
    pub fn leftmost_leaf_height(&self) -> usize {
        match self.children.first() {
            None => 0,
            Some(c) => 1 + c.leftmost_leaf_height(),
        }
    }

    /// Every plane tree with `n` vertices.
    pub fn all(n: usize) -> Vec<PlaneTree> {
        if n == 0 {
            return Vec::new();
        }
        plane_forests(n - 1).into_iter().map(PlaneTree::new).collect()
    }
}

fn plane_forests(n: usize) -> Vec<Vec<PlaneTree>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        let heads = PlaneTree::all(first);
        let tails = plane_forests(n - first);
        for h in &heads {
            for t in &tails {
                let mut f = Vec::with_capacity(t.len() + 1);
                f.push(h.clone());
                f.extend(t.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0")?;
        if !self.children.is_empty() {
            f.write_str("[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

fn erase(t: OrderedTree) -> PlaneTree {
    PlaneTree::new(t.children.into_iter().map(erase).collect())
}

/// Parses a plane tree written in the forest grammar; labels are ignored.
pub fn parse_plane_tree(text: &str) -> Result<PlaneTree, ForestError> {
    let mut trees = parse_trees(text)?;
    if trees.len() != 1 {
        return Err(ForestError::Syntax { pos: 0, msg: "expected exactly one tree" });
    }
    Ok(erase(trees.pop().expect("one tree")))
}

impl FromStr for PlaneTree {
    type Err = ForestError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_plane_tree(s)
    }
}

pub fn shape_of(f: &OrderedForest) -> Vec<PlaneTree> {
    f.shape()
}

/// A set of vertices of a host forest, no one an ancestor of another.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdmissibleCut {
    vertices: Vec<Label>,
}

impl AdmissibleCut {
    /// Builds a cut from labels; admissibility is checked against a host.
    pub fn new(mut vertices: Vec<Label>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        AdmissibleCut { vertices }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn contains(&self, l: Label) -> bool {
        self.vertices.binary_search(&l).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Whether the cut consists of every root of `f`.
    pub fn is_total(&self, f: &OrderedForest) -> bool {
        !f.is_empty()
            && self.vertices.len() == f.length()
            && f.trees().iter().all(|t| self.contains(t.label()))
    }

    pub fn is_admissible(&self, f: &OrderedForest) -> bool {
        fn walk(t: &OrderedTree, cut: &AdmissibleCut, above: bool, hits: &mut usize) -> bool {
            let here = cut.contains(t.label);
            if here {
                if above {
                    return false;
                }
                *hits += 1;
            }
            t.children.iter().all(|c| walk(c, cut, above || here, hits))
        }
        let mut hits = 0;
        f.trees().iter().all(|t| walk(t, self, false, &mut hits)) && hits == self.vertices.len()
    }
}

fn tree_cuts(t: &OrderedTree) -> Vec<Vec<Label>> {
    let mut acc = forest_cuts(&t.children);
    acc.push(vec![t.label]);
    acc
}

fn forest_cuts(trees: &[OrderedTree]) -> Vec<Vec<Label>> {
    let mut acc: Vec<Vec<Label>> = vec![Vec::new()];
    for t in trees {
        let local = tree_cuts(t);
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for a in &acc {
            for b in &local {
                let mut v = a.clone();
                v.extend_from_slice(b);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// All admissible cuts, including the empty and total cuts, sorted
/// lexicographically by their sorted label sets.
pub fn admissible_cuts(f: &OrderedForest) -> Vec<AdmissibleCut> {
    let mut cuts: Vec<AdmissibleCut> =
        forest_cuts(f.trees()).into_iter().map(AdmissibleCut::new).collect();
    cuts.sort();
    cuts
}

/// Order-preserving relabelling of trees onto `1..=k`, keeping planar order.
pub fn standardize(trees: Vec<OrderedTree>) -> OrderedForest {
    let mut labels: Vec<Label> = trees.iter().flat_map(OrderedTree::labels).collect();
    labels.sort_unstable();
    let max = labels.last().copied().unwrap_or(0) as usize;
    let mut rank = vec![0 as Label; max + 1];
    for (i, &l) in labels.iter().enumerate() {
        rank[l as usize] = i as Label + 1;
    }
    let mut trees = trees;
    for t in &mut trees {
        t.relabel(&|l| rank[l as usize]);
    }
    OrderedForest::from_trees_unchecked(trees)
}

/// Splits along a cut assumed admissible: (Lea, Roo), unstandardized.
pub(crate) fn split_raw(
    f: &OrderedForest,
    cut: &AdmissibleCut,
) -> (Vec<OrderedTree>, Vec<OrderedTree>) {
    fn walk(t: &OrderedTree, cut: &AdmissibleCut, lea: &mut Vec<OrderedTree>) -> Option<OrderedTree> {
        if cut.contains(t.label) {
            lea.push(t.clone());
            return None;
        }
        let children = t.children.iter().filter_map(|c| walk(c, cut, lea)).collect();
        Some(OrderedTree { label: t.label, children })
    }
    let mut lea = Vec::new();
    let roo = f.trees().iter().filter_map(|t| walk(t, cut, &mut lea)).collect();
    (lea, roo)
}

/// (Lea, Roo) of an admissible cut, both standardized.
pub fn cut_split(
    f: &OrderedForest,
    cut: &AdmissibleCut,
) -> Result<(OrderedForest, OrderedForest), ForestError> {
    if !cut.is_admissible(f) {
        return Err(ForestError::NotAdmissible);
    }
    let (lea, roo) = split_raw(f, cut);
    Ok((standardize(lea), standardize(roo)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OrderedForest {
        parse_forest(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("()").degree(), 0);
        let f = p("1[2]");
        assert_eq!(f.trees()[0].label(), 1);
        assert_eq!(f.trees()[0].children()[0].label(), 2);
        let f = p("1[2] 3");
        assert_eq!((f.length(), f.degree()), (2, 3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_forest("1[2"), Err(ForestError::Syntax { .. })));
        assert!(matches!(parse_forest("1 1"), Err(ForestError::DuplicateLabel(1))));
        assert!(matches!(parse_forest("1 3"), Err(ForestError::LabelOutOfRange { .. })));
        assert!(parse_forest("1[]").is_err());
        assert!(parse_forest("1  2").is_err());
        assert!(parse_forest("0").is_err());
    }

    #[test]
    fn format_examples() {
        assert_eq!(OrderedForest::empty().to_string(), "()");
        assert_eq!(OrderedForest::from(OrderedTree::new(2, vec![OrderedTree::leaf(1)])).to_string(), "2[1]");
        assert_eq!(p("3[1 2]").to_string(), "3[1 2]");
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(vec![OrderedTree::leaf(3)]).to_string(), "1");
        let host = p("2[4[1] 3]");
        let (lea, _) = split_raw(&host, &AdmissibleCut::new(vec![4, 3]));
        assert_eq!(standardize(lea).to_string(), "3[1] 2");
        let t = OrderedTree::new(2, vec![OrderedTree::leaf(4), OrderedTree::leaf(3)]);
        assert_eq!(standardize(vec![t]).to_string(), "1[3 2]");
    }

    #[test]
    fn cut_examples() {
        let cuts: Vec<_> = admissible_cuts(&p("1")).into_iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(cuts, vec![vec![], vec![1]]);
        let cuts: Vec<_> = admissible_cuts(&p("1[2]")).into_iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(cuts, vec![vec![], vec![1], vec![2]]);
        assert_eq!(admissible_cuts(&p("2[4[1] 3]")).len(), 7);
    }

    #[test]
    fn split_examples() {
        let f = p("2[4[1] 3]");
        let (l, r) = cut_split(&f, &AdmissibleCut::default()).unwrap();
        assert_eq!((l.to_string(), r), ("()".to_string(), f.clone()));
        let (l, r) = cut_split(&f, &AdmissibleCut::new(vec![4])).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("2[1]".into(), "1[2]".into()));
        let (l, r) = cut_split(&f, &AdmissibleCut::new(vec![1])).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("1".into(), "1[3 2]".into()));
        assert_eq!(cut_split(&f, &AdmissibleCut::new(vec![4, 1])), Err(ForestError::NotAdmissible));
        assert_eq!(cut_split(&f, &AdmissibleCut::new(vec![7])), Err(ForestError::NotAdmissible));
    }

    #[test]
    fn shapes() {
        assert_eq!(shape_of(&p("1")), vec![PlaneTree::vertex()]);
        assert_eq!(shape_of(&p("3[1 2]")), shape_of(&p("1[2 3]")));
        let s = shape_of(&p("1[2] 3"));
        assert_eq!(s, vec![PlaneTree::new(vec![PlaneTree::vertex()]), PlaneTree::vertex()]);
    }

    #[test]
    fn plane_tree_counts_are_catalan() {
        let counts: Vec<usize> = (1..=8).map(|n| PlaneTree::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(parse_plane_tree("0[0 0[0]]").unwrap().size(), 4);
    }

    #[test]
    fn factors_detect_blocks() {
        let f = p("1[2] 3 6[4 5]");
        let fs: Vec<String> = f.factors().unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(fs, vec!["1[2]", "1", "3[1 2]"]);
        assert!(p("2[4[1] 3]").factors().is_some());
        assert!(p("2 1").factors().is_none());
        assert!(p("1[3] 2").factors().is_none());
    }

    #[test]
    fn concat_shifts() {
        assert_eq!(p("1[2]").concat(&p("1 4[2 3]")).to_string(), "1[2] 3 6[4 5]");
        assert_eq!(OrderedForest::empty().concat(&p("1[2]")), p("1[2]"));
    }
}
