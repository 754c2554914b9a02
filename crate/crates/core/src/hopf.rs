//! The free algebra on ordered forests with exact rational coefficients,
//! the admissible-cut coproduct and its restricted variants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::forest::{admissible_cuts, split_raw, standardize, OrderedForest};
use crate::graft::{b_minus, b_plus, Algebra};
use crate::linalg::Matrix;

pub type Coeff = BigRational;

/// Default degree bound for [`prim_tot_dimension`].
pub const PRIM_TOT_MAX_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("the {0} coproduct is undefined on the empty forest")]
    EmptyForest(CoproductVariant),
    #[error("degree {degree} exceeds the bound {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("unknown coproduct variant {0:?}")]
    UnknownVariant(String),
}

/// Finite formal sum with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Coeff>,
}

pub type AlgebraElement = LinComb<OrderedForest>;
pub type Tensor2Element = LinComb<(OrderedForest, OrderedForest)>;
pub type Tensor3Element = LinComb<(OrderedForest, OrderedForest, OrderedForest)>;

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut out = Self::zero();
        out.add_term(k, Coeff::one());
        out
    }

    pub fn add_term(&mut self, k: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<K, Coeff> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Coeff {
        self.terms.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn scaled(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Linear extension of a basis map.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            for (l, d) in f(k).terms {
                out.add_term(l, c * d);
            }
        }
        out
    }

    pub fn try_flat_map<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<LinComb<L>, E>,
    ) -> Result<LinComb<L>, E> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            for (l, d) in f(k)?.terms {
                out.add_term(l, c * d);
            }
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Coeff)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Coeff)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> Self {
        LinComb { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            write_coeff(f, c, i == 0)?;
            write_factor(f, k)?;
        }
        Ok(())
    }
}

impl fmt::Display for Tensor2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            write_coeff(f, c, i == 0)?;
            write_factor(f, a)?;
            f.write_str(" ⊗ ")?;
            write_factor(f, b)?;
        }
        Ok(())
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Coeff, first: bool) -> fmt::Result {
    let sep = match (first, c.is_negative()) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    f.write_str(sep)?;
    let a = c.abs();
    if !a.is_one() {
        write!(f, "{a}*")?;
    }
    Ok(())
}

fn write_factor(f: &mut fmt::Formatter<'_>, x: &OrderedForest) -> fmt::Result {
    if x.length() > 1 {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

pub fn coeff(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

pub fn element(f: &OrderedForest) -> AlgebraElement {
    AlgebraElement::basis(f.clone())
}

/// Bilinear shift concatenation.
pub fn product(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    a.flat_map(|x| b.flat_map(|y| AlgebraElement::basis(x.concat(y))))
}

/// Componentwise product in `A ⊗ A`.
pub fn tensor_product(x: &Tensor2Element, y: &Tensor2Element) -> Tensor2Element {
    x.flat_map(|(a, b)| y.flat_map(|(c, d)| Tensor2Element::basis((a.concat(c), b.concat(d)))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoproductVariant {
    Full,
    Reduced,
    /// The leftmost root stays in the trunk.
    LeftRoot,
    /// The rightmost root stays in the trunk.
    RightRoot,
    /// Nontrivial cuts with the rightmost leaf in the pruned part.
    PrecRed,
    /// Nontrivial cuts with the rightmost leaf in the trunk.
    SuccRed,
}

impl CoproductVariant {
    pub const ALL: [CoproductVariant; 6] = [
        CoproductVariant::Full,
        CoproductVariant::Reduced,
        CoproductVariant::LeftRoot,
        CoproductVariant::RightRoot,
        CoproductVariant::PrecRed,
        CoproductVariant::SuccRed,
    ];
}

impl fmt::Display for CoproductVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoproductVariant::Full => "full",
            CoproductVariant::Reduced => "reduced",
            CoproductVariant::LeftRoot => "left-root",
            CoproductVariant::RightRoot => "right-root",
            CoproductVariant::PrecRed => "prec",
            CoproductVariant::SuccRed => "succ",
        })
    }
}

impl FromStr for CoproductVariant {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CoproductVariant::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| HopfError::UnknownVariant(s.to_string()))
    }
}

pub fn coproduct(f: &OrderedForest, variant: CoproductVariant) -> Result<Tensor2Element, HopfError> {
    if f.is_empty() {
        return match variant {
            CoproductVariant::Full => Ok(Tensor2Element::basis((f.clone(), f.clone()))),
            v => Err(HopfError::EmptyForest(v)),
        };
    }
    let spine = f.right_spine();
    let left_root = f.leftmost_root().expect("nonempty");
    let right_root = f.rightmost_root().expect("nonempty");
    let mut out = Tensor2Element::zero();
    for cut in admissible_cuts(f) {
        let trivial = cut.is_empty() || cut.is_total(f);
        let leaf_pruned = || spine.iter().any(|&l| cut.contains(l));
        let keep = match variant {
            CoproductVariant::Full => true,
            CoproductVariant::Reduced => !trivial,
            CoproductVariant::LeftRoot => !cut.contains(left_root),
            CoproductVariant::RightRoot => !cut.contains(right_root),
            CoproductVariant::PrecRed => !trivial && leaf_pruned(),
            CoproductVariant::SuccRed => !trivial && !leaf_pruned(),
        };
        if keep {
            let (lea, roo) = split_raw(f, &cut);
            out.add_term((standardize(lea), standardize(roo)), Coeff::one());
        }
    }
    Ok(out)
}

pub fn coproduct_elem(a: &AlgebraElement, variant: CoproductVariant) -> Result<Tensor2Element, HopfError> {
    a.try_flat_map(|f| coproduct(f, variant))
}

/// `(Δ_v ⊗ Id)` applied to a tensor.
pub fn coproduct_left(t: &Tensor2Element, variant: CoproductVariant) -> Result<Tensor3Element, HopfError> {
    t.try_flat_map(|(a, b)| {
        Ok(coproduct(a, variant)?.flat_map(|(x, y)| Tensor3Element::basis((x.clone(), y.clone(), b.clone()))))
    })
}

/// `(Id ⊗ Δ_v)` applied to a tensor.
pub fn coproduct_right(t: &Tensor2Element, variant: CoproductVariant) -> Result<Tensor3Element, HopfError> {
    t.try_flat_map(|(a, b)| {
        Ok(coproduct(b, variant)?.flat_map(|(x, y)| Tensor3Element::basis((a.clone(), x.clone(), y.clone()))))
    })
}

/// Multiplication `A ⊗ A → A`.
pub fn multiply(t: &Tensor2Element) -> AlgebraElement {
    t.flat_map(|(a, b)| AlgebraElement::basis(a.concat(b)))
}

/// Sends the empty forest to 1 and every other forest to 0.
pub fn counit(a: &AlgebraElement) -> Coeff {
    a.coeff(&OrderedForest::empty())
}

pub fn antipode(a: &AlgebraElement) -> AlgebraElement {
    let mut memo = HashMap::new();
    a.flat_map(|f| antipode_basis(f, &mut memo))
}

fn antipode_basis(f: &OrderedForest, memo: &mut HashMap<OrderedForest, AlgebraElement>) -> AlgebraElement {
    if f.is_empty() {
        return AlgebraElement::basis(f.clone());
    }
    if let Some(s) = memo.get(f) {
        return s.clone();
    }
    let mut s = -AlgebraElement::basis(f.clone());
    let reduced = coproduct(f, CoproductVariant::Reduced).expect("nonempty");
    for ((lea, roo), c) in reduced.iter() {
        let sl = antipode_basis(lea, memo);
        s -= &product(&sl, &AlgebraElement::basis(roo.clone())).scaled(c);
    }
    memo.insert(f.clone(), s.clone());
    s
}

/// Dimension of `Ker Δ̃_≺ ∩ Ker Δ̃_≻` on the degree-`n` part of the forest
/// algebra spanned by words over T, up to [`PRIM_TOT_MAX_DEGREE`].
pub fn prim_tot_dimension(n: usize) -> Result<usize, HopfError> {
    prim_tot_dimension_bounded(n, PRIM_TOT_MAX_DEGREE)
}

pub fn prim_tot_dimension_bounded(n: usize, bound: usize) -> Result<usize, HopfError> {
    if n == 0 {
        return Err(HopfError::ZeroDegree);
    }
    if n > bound {
        return Err(HopfError::DegreeTooLarge { degree: n, max: bound });
    }
    let mut basis: Vec<OrderedForest> = Algebra::B.basis(n).to_vec();
    basis.sort_by_cached_key(|f| f.to_string());
    let mut keys: BTreeMap<(bool, OrderedForest, OrderedForest), usize> = BTreeMap::new();
    let mut images = Vec::with_capacity(basis.len());
    for f in &basis {
        let mut row = Vec::new();
        for (tag, v) in [(false, CoproductVariant::PrecRed), (true, CoproductVariant::SuccRed)] {
            for ((a, b), c) in coproduct(f, v)?.iter() {
                let next = keys.len();
                let col = *keys.entry((tag, a.clone(), b.clone())).or_insert(next);
                // Coproduct coefficients are cut multiplicities, hence integers.
                row.push((col, c.to_integer()));
            }
        }
        images.push(row);
    }
    let mut m = Matrix::zeros(basis.len(), keys.len());
    for (r, row) in images.into_iter().enumerate() {
        for (c, v) in row {
            m.set(r, c, v);
        }
    }
    Ok(basis.len() - m.rank())
}

/// Checks the coproduct formulas for `B⁻(F)` and `B⁺(F)`, each side
/// computed independently.
pub fn check_b_operator_coproduct(f: &OrderedForest) -> bool {
    if f.is_empty() {
        return false;
    }
    let minus = OrderedForest::from(b_minus(f));
    let plus = OrderedForest::from(b_plus(f));
    let unit = OrderedForest::empty();
    let full = |x: &OrderedForest| coproduct(x, CoproductVariant::Full).expect("full");
    let left = |x: &OrderedForest| coproduct(x, CoproductVariant::LeftRoot).expect("nonempty");

    let mut rhs_minus = full(f).flat_map(|(a, b)| Tensor2Element::basis((a.clone(), b_minus(b).into())));
    rhs_minus.add_term((minus.clone(), unit.clone()), Coeff::one());
    if full(&minus) != rhs_minus {
        return false;
    }

    let trees = f.trees().to_vec();
    let first = standardize(trees[..1].to_vec());
    let rest = OrderedForest::from(b_minus(&standardize(trees[1..].to_vec())));
    let mut rhs_plus = left(f).flat_map(|(a, b)| Tensor2Element::basis((a.clone(), b_plus(b).into())));
    rhs_plus.add_term((plus.clone(), unit), Coeff::one());
    rhs_plus += &left(&first).flat_map(|(a, b)| Tensor2Element::basis((a.concat(&rest), b.clone())));
    full(&plus) == rhs_plus
}
