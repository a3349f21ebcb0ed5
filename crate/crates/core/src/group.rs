//! Finite abelian groups given by a chosen cyclic decomposition, their duals,
//! automorphisms and the integral group ring.
//!
//! A group `Z/m_1 + ... + Z/m_h` keeps its distinguished generators: the
//! factors are never rewritten into invariant-factor form, since several
//! downstream computations (reduced building data, Abel–Prym collisions)
//! depend on the chosen generators and not just the isomorphism class.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `|G|` for brute-force searches over group elements.
pub const DEFAULT_MAX_ORDER: u64 = 64;

/// Default cap on the number of automorphisms materialized as permutations.
pub const DEFAULT_MAX_AUTOMORPHISMS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(orders: Vec<u64>) -> Result<Self> {
        Self::new(orders)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(group: FiniteAbelianGroup) -> Self {
        group.orders
    }
}

/// Element of `G` as coordinates with respect to the distinguished generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

/// Character `(sigma_1^*)^{k_1} ... (sigma_h^*)^{k_h}` of `G`, stored by its exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Reinterprets a character's exponents as group coordinates (the
    /// isomorphism `G^* = G` given by the dual generators).
    pub fn from_character(chi: &Character) -> GroupElement {
        GroupElement(chi.0.clone())
    }
}

impl Character {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn from_element(x: &GroupElement) -> Character {
        Character(x.0.clone())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{:?}", self.0)
    }
}

/// A point of `Q/Z` in lowest terms: `0 <= numerator < denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalRotation {
    numerator: u64,
    denominator: u64,
}

impl RationalRotation {
    pub const ZERO: RationalRotation = RationalRotation {
        numerator: 0,
        denominator: 1,
    };

    /// Reduces `numerator / denominator` modulo 1.
    pub fn new(numerator: u128, denominator: u128) -> Self {
        assert!(denominator > 0, "rotation with zero denominator");
        let num = numerator % denominator;
        if num == 0 {
            return Self::ZERO;
        }
        let d = num.gcd(&denominator);
        RationalRotation {
            numerator: (num / d) as u64,
            denominator: (denominator / d) as u64,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }
}

impl Add for RationalRotation {
    type Output = RationalRotation;

    fn add(self, rhs: Self) -> Self {
        let den = self.denominator as u128 * rhs.denominator as u128;
        let num = self.numerator as u128 * rhs.denominator as u128
            + rhs.numerator as u128 * self.denominator as u128;
        RationalRotation::new(num, den)
    }
}

impl fmt::Display for RationalRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(&m) = orders.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidOrder(m));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of distinguished generators `h`.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent of the group (lcm of the factor orders).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    fn check_rank(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.orders.len() {
            return Err(Error::RankMismatch {
                expected: self.orders.len(),
                found: coords.len(),
            });
        }
        Ok(())
    }

    /// Builds an element, reducing each coordinate modulo its factor order.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        self.check_rank(coords)?;
        Ok(GroupElement(
            coords.iter().zip(&self.orders).map(|(c, m)| c % m).collect(),
        ))
    }

    /// Builds an element from signed coordinates.
    pub fn element_signed(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::RankMismatch {
                expected: self.orders.len(),
                found: coords.len(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    /// Builds an element, rejecting coordinates that are not already reduced.
    pub fn element_strict(&self, coords: &[u64]) -> Result<GroupElement> {
        self.check_rank(coords)?;
        for (c, m) in coords.iter().zip(&self.orders) {
            if c >= m {
                return Err(Error::Inadmissible(format!(
                    "coordinate {c} is not reduced modulo {m}"
                )));
            }
        }
        Ok(GroupElement(coords.to_vec()))
    }

    pub fn character(&self, coords: &[u64]) -> Result<Character> {
        self.element(coords).map(|e| Character(e.0))
    }

    pub fn character_strict(&self, coords: &[u64]) -> Result<Character> {
        self.element_strict(coords).map(|e| Character(e.0))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    /// The `i`th distinguished generator `sigma_i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElement(c)
    }

    /// The dual generator `sigma_i^*`.
    pub fn dual_generator(&self, i: usize) -> Character {
        Character(self.generator(i).0)
    }

    /// Checks that `x` belongs to this group (right rank, reduced coordinates).
    pub fn contains(&self, x: &GroupElement) -> Result<()> {
        self.check_coords(&x.0)
    }

    fn check_coords(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.orders.len() || coords.iter().zip(&self.orders).any(|(c, m)| c >= m)
        {
            return Err(Error::ShapeMismatch {
                left: self.orders.clone(),
                right: coords.to_vec(),
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.orders)
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.orders)
                .map(|(a, m)| (m - a) % m)
                .collect(),
        )
    }

    pub fn scale(&self, x: &GroupElement, k: u64) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.orders)
                .map(|(a, m)| ((*a as u128 * k as u128) % *m as u128) as u64)
                .collect(),
        )
    }

    /// Product of two characters (pointwise multiplication of values).
    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(self.add(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    pub fn char_inv(&self, a: &Character) -> Character {
        Character(self.neg(&GroupElement(a.0.clone())).0)
    }

    pub fn char_pow(&self, a: &Character, k: u64) -> Character {
        Character(self.scale(&GroupElement(a.0.clone()), k).0)
    }

    /// Order of `x`: `lcm_i(m_i / gcd(m_i, c_i))`.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.0.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&c, &m)| acc.lcm(&(m / m.gcd(&c))))
    }

    pub fn character_order(&self, chi: &Character) -> u64 {
        self.element_order(&GroupElement(chi.0.clone()))
    }

    /// The value `chi(x)` written as a rotation number in `Q/Z`.
    pub fn pair(&self, chi: &Character, x: &GroupElement) -> Result<RationalRotation> {
        self.check_coords(&chi.0)?;
        self.check_coords(&x.0)?;
        Ok(self.pair_unchecked(chi, x))
    }

    pub(crate) fn pair_unchecked(&self, chi: &Character, x: &GroupElement) -> RationalRotation {
        let common = self.exponent() as u128;
        let num: u128 = chi
            .0
            .iter()
            .zip(&x.0)
            .zip(&self.orders)
            .map(|((&k, &c), &m)| (k as u128 * c as u128 % m as u128) * (common / m as u128))
            .sum();
        RationalRotation::new(num, common)
    }

    /// Mixed-radix index of an element; the last coordinate varies fastest,
    /// so index order is lexicographic order on coordinates.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (slot, &m) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = (index % m as usize) as u64;
            index /= m as usize;
        }
        GroupElement(coords)
    }

    /// All elements in lexicographic order, starting with the identity.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    /// All characters of `G` in lexicographic order; the first is trivial.
    pub fn dual_enumerate(&self) -> Vec<Character> {
        self.elements().map(|e| Character(e.0)).collect()
    }

    /// Subgroup generated by `gens`, as a sorted set of element indices.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> BTreeSet<usize> {
        let mut members: BTreeSet<usize> = BTreeSet::from([self.index_of(&self.zero())]);
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if members.insert(self.index_of(&y)) {
                    frontier.push(y);
                }
            }
        }
        members
    }

    pub fn ensure_order_at_most(&self, limit: u64) -> Result<()> {
        if self.order() > limit {
            return Err(Error::BoundExceeded {
                what: "group order",
                value: self.order() as u128,
                limit: limit as u128,
            });
        }
        Ok(())
    }

    /// Every automorphism of `G` as a permutation of element indices.
    ///
    /// Backtracks over images of the distinguished generators. The image of
    /// `sigma_k` must have order exactly `m_k` and meet the subgroup spanned by
    /// the earlier images trivially, which is precisely injectivity.
    pub fn automorphisms(&self, max_order: u64, max_count: usize) -> Result<Vec<Automorphism>> {
        self.ensure_order_at_most(max_order)?;
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(self.rank());
        let span: BTreeSet<usize> = BTreeSet::from([0]);
        self.extend_automorphisms(&mut images, &span, max_count, &mut out)?;
        Ok(out)
    }

    fn extend_automorphisms(
        &self,
        images: &mut Vec<GroupElement>,
        span: &BTreeSet<usize>,
        max_count: usize,
        out: &mut Vec<Automorphism>,
    ) -> Result<()> {
        let k = images.len();
        if k == self.rank() {
            if out.len() == max_count {
                return Err(Error::BoundExceeded {
                    what: "automorphism count",
                    value: max_count as u128 + 1,
                    limit: max_count as u128,
                });
            }
            out.push(Automorphism::from_generator_images(self, images.clone()));
            return Ok(());
        }
        let m = self.orders[k];
        for candidate in self.elements() {
            if self.element_order(&candidate) != m {
                continue;
            }
            let meets = (1..m).any(|t| span.contains(&self.index_of(&self.scale(&candidate, t))));
            if meets {
                continue;
            }
            let mut next = BTreeSet::new();
            for &s in span {
                let base = self.element_at(s);
                for t in 0..m {
                    next.insert(self.index_of(&self.add(&base, &self.scale(&candidate, t))));
                }
            }
            images.push(candidate);
            self.extend_automorphisms(images, &next, max_count, out)?;
            images.pop();
        }
        Ok(())
    }
}

/// A group automorphism, kept both as generator images and as a permutation
/// of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    generator_images: Vec<GroupElement>,
    permutation: Vec<usize>,
}

impl Automorphism {
    fn from_generator_images(group: &FiniteAbelianGroup, generator_images: Vec<GroupElement>) -> Self {
        let permutation = group
            .elements()
            .map(|x| {
                let image = x
                    .0
                    .iter()
                    .zip(&generator_images)
                    .fold(group.zero(), |acc, (&c, g)| group.add(&acc, &group.scale(g, c)));
                group.index_of(&image)
            })
            .collect();
        Automorphism {
            generator_images,
            permutation,
        }
    }

    pub fn generator_images(&self) -> &[GroupElement] {
        &self.generator_images
    }

    /// `permutation()[i]` is the index of the image of element `i`.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn apply(&self, group: &FiniteAbelianGroup, x: &GroupElement) -> GroupElement {
        group.element_at(self.permutation[group.index_of(x)])
    }
}

/// Element of the integral group ring `Z[G]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: FiniteAbelianGroup,
    coefficients: BTreeMap<GroupElement, i64>,
}

impl GroupRingElement {
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        GroupRingElement {
            group: group.clone(),
            coefficients: BTreeMap::new(),
        }
    }

    /// The unit `1 = [0_G]`.
    pub fn one(group: &FiniteAbelianGroup) -> Self {
        Self::basis(group, group.zero())
    }

    pub fn basis(group: &FiniteAbelianGroup, x: GroupElement) -> Self {
        Self::from_terms(group, [(x, 1)])
    }

    pub fn from_terms(
        group: &FiniteAbelianGroup,
        terms: impl IntoIterator<Item = (GroupElement, i64)>,
    ) -> Self {
        let mut out = Self::zero(group);
        for (x, c) in terms {
            out.add_term(x, c);
        }
        out
    }

    fn add_term(&mut self, x: GroupElement, c: i64) {
        if c == 0 {
            return;
        }
        match self.coefficients.entry(x) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coefficient(&self, x: &GroupElement) -> i64 {
        self.coefficients.get(x).copied().unwrap_or(0)
    }

    /// Nonzero terms in lexicographic order of group elements.
    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, i64)> {
        self.coefficients.iter().map(|(x, &c)| (x, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Sum of coefficients; a ring homomorphism `Z[G] -> Z`.
    pub fn augmentation(&self) -> i64 {
        self.coefficients.values().sum()
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::ShapeMismatch {
                left: self.group.orders.clone(),
                right: other.group.orders.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        for (x, &c) in &other.coefficients {
            out.add_term(x.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Convolution product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut acc: BTreeMap<GroupElement, i64> = BTreeMap::new();
        for (x, &a) in &self.coefficients {
            for (y, &b) in &other.coefficients {
                *acc.entry(self.group.add(x, y)).or_insert(0) += a * b;
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(GroupRingElement {
            group: self.group.clone(),
            coefficients: acc,
        })
    }

    /// Multiplication by the basis element `[g]`: translates every term by `g`.
    pub fn translate(&self, g: &GroupElement) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|(x, &c)| (self.group.add(x, g), c))
                .collect(),
        }
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            group: self.group.clone(),
            coefficients: self.coefficients.iter().map(|(x, &c)| (x.clone(), -c)).collect(),
        }
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    /// Panics on mismatched groups; use [`GroupRingElement::try_add`] otherwise.
    fn add(self, rhs: Self) -> GroupRingElement {
        self.try_add(rhs).expect("group ring elements over different groups")
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: Self) -> GroupRingElement {
        self.try_sub(rhs).expect("group ring elements over different groups")
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: Self) -> GroupRingElement {
        self.try_mul(rhs).expect("group ring elements over different groups")
    }
}
