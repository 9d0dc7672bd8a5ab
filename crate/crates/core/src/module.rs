//! Finite pointed-set modules over `⟨t⟩` (or `⟨t⁻¹⟩`).
//!
//! A module is stored as its generator action: a total self-map of a finite
//! pointed set fixing the basepoint. Higher powers act by iteration and the
//! zero element sends everything to the basepoint.
//!
//! Classification follows the graph `Γ_M` whose vertices are the nonzero
//! elements with an arrow `m → t·m` whenever `t·m ≠ *`. For a normal module
//! every vertex has at most one incoming and exactly one outgoing arrow in
//! the full graph, so each connected component of `Γ_M` is either a ladder
//! ending at `*` (the torsion module `T(n)`) or a directed cycle (`C(n)`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, ParseError, Result};
use crate::monoid::F1Monoid;
use crate::parse::{Cursor, PResult};

/// Default limit on nonzero elements for exhaustive submodule enumeration.
pub const DEFAULT_SUBMODULE_BOUND: usize = 20;

/// Hard limit imposed by the bitmask representation used for enumeration.
const MAX_SUBMODULE_BOUND: usize = 63;

pub const BASEPOINT: &str = "*";

/// Index of the basepoint in every [`FinModule`].
pub const BASE: usize = 0;

/// A set of element indices of a [`FinModule`]. The basepoint is always
/// included in sets returned by this module.
pub type ElementSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinModule {
    base: F1Monoid,
    /// `labels[0]` is the basepoint.
    labels: Vec<String>,
    action: Vec<usize>,
}

impl FinModule {
    /// The zero module `{*}`.
    pub fn zero(base: F1Monoid) -> Self {
        Self {
            base,
            labels: vec![BASEPOINT.to_string()],
            action: vec![BASE],
        }
    }

    /// Builds a module from `name -> target` edges, one per nonzero element.
    /// The target `*` denotes the basepoint.
    pub fn from_edges<I, S, T>(base: F1Monoid, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let edges: Vec<(String, String)> = edges
            .into_iter()
            .map(|(s, t)| (s.into(), t.into()))
            .collect();
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (name, _) in &edges {
            if name == BASEPOINT {
                return Err(Error::Validation("the basepoint `*` has no outgoing edge".into()));
            }
            if name.is_empty() {
                return Err(Error::Validation("empty element name".into()));
            }
            if index.insert(name, 0).is_some() {
                return Err(Error::Validation(format!("element `{name}` defined twice")));
            }
        }
        let labels: Vec<String> = std::iter::once(BASEPOINT)
            .chain(index.keys().copied())
            .map(str::to_string)
            .collect();
        for (i, name) in labels.iter().enumerate().skip(1) {
            index.insert(name, i);
        }
        let mut action = vec![BASE; labels.len()];
        for (name, target) in &edges {
            let source = index[name.as_str()];
            action[source] = if target == BASEPOINT {
                BASE
            } else {
                *index
                    .get(target.as_str())
                    .ok_or_else(|| Error::Validation(format!("undefined element `{target}`")))?
            };
        }
        Ok(Self { base, labels, action })
    }

    /// Builds a module from labels and the action on indices. Labels need
    /// not be sorted; `labels[0]` must be the basepoint.
    fn from_parts(base: F1Monoid, labels: Vec<String>, action: Vec<usize>) -> Self {
        debug_assert_eq!(labels.len(), action.len());
        debug_assert_eq!(action[BASE], BASE);
        let mut order: Vec<usize> = (1..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut new_index = vec![BASE; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new + 1;
        }
        let mut sorted_labels = vec![BASEPOINT.to_string()];
        let mut sorted_action = vec![BASE];
        for &old in &order {
            sorted_labels.push(labels[old].clone());
            sorted_action.push(new_index[action[old]]);
        }
        Self {
            base,
            labels: sorted_labels,
            action: sorted_action,
        }
    }

    /// Parses the line-oriented format `name -> target` over `base`.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(base: F1Monoid, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let content = line.split('#').next().unwrap_or("").trim();
            if !content.is_empty() {
                let Some((name, target)) = content.split_once("->") else {
                    return Err(ParseError::new(offset, "expected `name -> target`").into());
                };
                let (name, target) = (name.trim(), target.trim());
                if name.is_empty() || target.is_empty() || target.contains(char::is_whitespace) {
                    return Err(ParseError::new(offset, "malformed edge").into());
                }
                edges.push((name.to_string(), target.to_string()));
            }
            offset += line.len();
        }
        Self::from_edges(base, edges)
    }

    pub fn base(&self) -> F1Monoid {
        self.base
    }

    /// Number of nonzero elements.
    pub fn size(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        if label == BASEPOINT {
            return Some(BASE);
        }
        self.labels[1..]
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
            .map(|i| i + 1)
    }

    /// The image of element `index` under the generator.
    pub fn act(&self, index: usize) -> usize {
        self.action[index]
    }

    pub fn all_elements(&self) -> ElementSet {
        (0..self.labels.len()).collect()
    }

    fn nonzero(&self) -> std::ops::Range<usize> {
        1..self.labels.len()
    }

    /// A pair of distinct nonzero elements with the same nonzero image.
    fn merging_pair(&self) -> Option<(usize, usize, usize)> {
        let mut preimage: BTreeMap<usize, usize> = BTreeMap::new();
        for m in self.nonzero() {
            let target = self.action[m];
            if target == BASE {
                continue;
            }
            if let Some(&other) = preimage.get(&target) {
                return Some((other, m, target));
            }
            preimage.insert(target, m);
        }
        None
    }

    /// True iff the generator is injective away from the preimage of `*`.
    pub fn check_normal(&self) -> bool {
        self.merging_pair().is_none()
    }

    fn require_normal(&self) -> Result<()> {
        match self.merging_pair() {
            None => Ok(()),
            Some((a, b, target)) => Err(Error::NotNormal {
                first: self.labels[a].clone(),
                second: self.labels[b].clone(),
                target: self.labels[target].clone(),
            }),
        }
    }

    /// Decomposes `Γ_M` into ladders and cycles, rejecting non-normal input.
    pub fn classify(&self) -> Result<ModuleClass> {
        self.require_normal()?;
        let mut has_incoming = vec![false; self.labels.len()];
        for m in self.nonzero() {
            has_incoming[self.action[m]] = true;
        }
        let mut visited = vec![false; self.labels.len()];
        let mut summands = Vec::new();
        for start in self.nonzero().filter(|&m| !has_incoming[m]) {
            // no incoming arrow: the top of a ladder
            let mut length = 0;
            let mut m = start;
            while m != BASE {
                visited[m] = true;
                length += 1;
                m = self.action[m];
            }
            summands.push(ModuleSummand::Torsion(length));
        }
        for start in self.nonzero() {
            if visited[start] {
                continue;
            }
            let mut length = 0;
            let mut m = start;
            while !visited[m] {
                visited[m] = true;
                length += 1;
                m = self.action[m];
            }
            summands.push(ModuleSummand::Cyclic(length));
        }
        Ok(ModuleClass::new(summands, 0))
    }

    /// Wedge sum: disjoint union with basepoints identified. Labels are
    /// prefixed with `a.` and `b.` to keep them distinct.
    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule> {
        self.same_base(other)?;
        let mut labels = vec![BASEPOINT.to_string()];
        let mut action = vec![BASE];
        let offset = self.size();
        labels.extend(self.labels[1..].iter().map(|l| format!("a.{l}")));
        action.extend(self.action[1..].iter().copied());
        labels.extend(other.labels[1..].iter().map(|l| format!("b.{l}")));
        action.extend(
            other.action[1..]
                .iter()
                .map(|&t| if t == BASE { BASE } else { t + offset }),
        );
        Ok(Self::from_parts(self.base, labels, action))
    }

    fn same_base(&self, other: &FinModule) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "modules over different monoids: {} and {}",
                self.base, other.base
            )))
        }
    }

    /// `M ∧ N`: the product modulo the relation generated by
    /// `(t·m, n) ∼ (m, t·n)`, with every pair containing a basepoint
    /// collapsed to the new basepoint. The result need not be normal.
    pub fn smash_product(&self, other: &FinModule) -> Result<FinModule> {
        self.same_base(other)?;
        let (p, q) = (self.labels.len(), other.labels.len());
        let pair = |m: usize, n: usize| m * q + n;
        let mut classes = UnionFind::new(p * q);
        for m in 0..p {
            for n in 0..q {
                if m == BASE || n == BASE {
                    classes.union(pair(m, n), pair(BASE, BASE));
                } else {
                    classes.union(pair(self.action[m], n), pair(m, other.action[n]));
                }
            }
        }
        let base_root = classes.find(pair(BASE, BASE));
        let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
        class_index.insert(base_root, BASE);
        let mut labels = vec![BASEPOINT.to_string()];
        // pairs are visited in order, so each class is labeled by its least pair
        for m in 1..p {
            for n in 1..q {
                let root = classes.find(pair(m, n));
                class_index.entry(root).or_insert_with(|| {
                    labels.push(format!("({},{})", self.labels[m], other.labels[n]));
                    labels.len() - 1
                });
            }
        }
        let mut action = vec![BASE; labels.len()];
        for m in 1..p {
            for n in 1..q {
                let here = class_index[&classes.find(pair(m, n))];
                let image = class_index[&classes.find(pair(self.action[m], n))];
                action[here] = image;
            }
        }
        Ok(Self::from_parts(self.base, labels, action))
    }

    /// Elements of `set` whose image leaves `set`.
    fn escape_witness(&self, set: &ElementSet) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&m| !set.contains(&self.action[m]))
    }

    fn check_indices(&self, set: &ElementSet) -> Result<()> {
        match set.iter().find(|&&m| m >= self.labels.len()) {
            Some(m) => Err(Error::Validation(format!("element index {m} out of range"))),
            None => Ok(()),
        }
    }

    /// True iff `set ∪ {*}` is closed under the action.
    pub fn is_submodule(&self, set: &ElementSet) -> bool {
        let mut set = set.clone();
        set.insert(BASE);
        self.check_indices(&set).is_ok() && self.escape_witness(&set).is_none()
    }

    /// `M/M′`: removes the nonzero elements of `sub` and redirects arrows
    /// that land in `sub` to the basepoint.
    pub fn quotient(&self, sub: &ElementSet) -> Result<FinModule> {
        let sub = self.checked_submodule(sub)?;
        let kept: Vec<usize> = self.nonzero().filter(|m| !sub.contains(m)).collect();
        let mut new_index = vec![BASE; self.labels.len()];
        for (i, &m) in kept.iter().enumerate() {
            new_index[m] = i + 1;
        }
        let mut labels = vec![BASEPOINT.to_string()];
        let mut action = vec![BASE];
        for &m in &kept {
            labels.push(self.labels[m].clone());
            action.push(new_index[self.action[m]]);
        }
        Ok(Self::from_parts(self.base, labels, action))
    }

    /// The submodule `sub` as a module in its own right.
    pub fn restrict(&self, sub: &ElementSet) -> Result<FinModule> {
        let sub = self.checked_submodule(sub)?;
        let kept: Vec<usize> = sub.iter().copied().filter(|&m| m != BASE).collect();
        let mut new_index = vec![BASE; self.labels.len()];
        for (i, &m) in kept.iter().enumerate() {
            new_index[m] = i + 1;
        }
        let mut labels = vec![BASEPOINT.to_string()];
        let mut action = vec![BASE];
        for &m in &kept {
            labels.push(self.labels[m].clone());
            action.push(new_index[self.action[m]]);
        }
        Ok(Self::from_parts(self.base, labels, action))
    }

    fn checked_submodule(&self, sub: &ElementSet) -> Result<ElementSet> {
        let mut sub = sub.clone();
        sub.insert(BASE);
        self.check_indices(&sub)?;
        match self.escape_witness(&sub) {
            None => Ok(sub),
            Some(m) => Err(Error::NotSubmodule {
                element: self.labels[m].clone(),
                image: self.labels[self.action[m]].clone(),
            }),
        }
    }

    /// Smallest submodule containing `elements`.
    pub fn closure(&self, elements: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut set = ElementSet::from([BASE]);
        for mut m in elements {
            while set.insert(m) {
                m = self.action[m];
            }
        }
        set
    }

    /// All submodules with the default bound.
    pub fn submodules(&self) -> Result<Vec<ElementSet>> {
        self.submodules_bounded(DEFAULT_SUBMODULE_BOUND)
    }

    /// All action-closed pointed subsets, obtained as unions of the
    /// principal closures `⟨m⟩` and deduplicated. Sorted by size, then
    /// lexicographically.
    pub fn submodules_bounded(&self, bound: usize) -> Result<Vec<ElementSet>> {
        let bound = bound.min(MAX_SUBMODULE_BOUND);
        if self.size() > bound {
            return Err(Error::BoundExceeded {
                size: self.size(),
                bound,
            });
        }
        let bit = |m: usize| 1u64 << (m - 1);
        let principal: Vec<u64> = self
            .nonzero()
            .map(|m| {
                self.closure([m])
                    .into_iter()
                    .filter(|&x| x != BASE)
                    .fold(0, |acc, x| acc | bit(x))
            })
            .collect();
        let mut found: BTreeSet<u64> = BTreeSet::from([0]);
        for gen in principal.into_iter().unique() {
            let extended: Vec<u64> = found.iter().map(|s| s | gen).collect();
            found.extend(extended);
        }
        let mut subs: Vec<ElementSet> = found
            .into_iter()
            .map(|mask| {
                std::iter::once(BASE)
                    .chain(self.nonzero().filter(|&m| mask & bit(m) != 0))
                    .collect()
            })
            .collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(subs)
    }

    /// Elements killed by some power of `t`, plus the basepoint.
    pub fn torsion_submodule(&self) -> ElementSet {
        let periodic = self.periodic_elements();
        self.all_elements()
            .into_iter()
            .filter(|m| !periodic.contains(m))
            .collect()
    }

    /// Nonzero elements lying on a cycle of the action.
    fn periodic_elements(&self) -> ElementSet {
        let n = self.labels.len();
        self.nonzero()
            .filter(|&start| {
                let mut m = self.action[start];
                for _ in 0..n {
                    if m == start {
                        return true;
                    }
                    if m == BASE {
                        return false;
                    }
                    m = self.action[m];
                }
                false
            })
            .collect()
    }

    /// Inverts `t`: torsion elements die and the cycles survive, giving a
    /// module over `⟨t, t⁻¹⟩` whose generator acts bijectively on nonzero
    /// elements.
    pub fn localize_module(&self) -> FinModule {
        let periodic = self.periodic_elements();
        let kept: Vec<usize> = periodic.into_iter().collect();
        let mut new_index = vec![BASE; self.labels.len()];
        for (i, &m) in kept.iter().enumerate() {
            new_index[m] = i + 1;
        }
        let mut labels = vec![BASEPOINT.to_string()];
        let mut action = vec![BASE];
        for &m in &kept {
            labels.push(self.labels[m].clone());
            action.push(new_index[self.action[m]]);
        }
        Self::from_parts(F1Monoid::Laurent, labels, action)
    }

    /// True iff the generator permutes the nonzero elements.
    pub fn is_invertible_action(&self) -> bool {
        let images: BTreeSet<usize> = self.nonzero().map(|m| self.action[m]).collect();
        images.len() == self.size() && !images.contains(&BASE)
    }
}

impl fmt::Display for FinModule {
    /// One `name -> target` line per nonzero element, sorted by name.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in self.nonzero() {
            writeln!(f, "{} -> {}", self.labels[m], self.labels[self.action[m]])?;
        }
        Ok(())
    }
}

impl FromStr for FinModule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(F1Monoid::Pos, s)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so the search order is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// An indecomposable finite normal module: the ladder `T(n)` or the cycle
/// `C(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleSummand {
    Torsion(u32),
    Cyclic(u32),
}

impl ModuleSummand {
    pub fn len(self) -> u32 {
        match self {
            ModuleSummand::Torsion(n) | ModuleSummand::Cyclic(n) => n,
        }
    }
}

impl fmt::Display for ModuleSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSummand::Torsion(n) => write!(f, "T({n})"),
            ModuleSummand::Cyclic(n) => write!(f, "C({n})"),
        }
    }
}

/// Isomorphism class of a finitely generated normal module: a sorted
/// multiset of ladders and cycles plus a symbolic free rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleClass {
    summands: Vec<ModuleSummand>,
    free_rank: u32,
}

impl ModuleClass {
    pub fn new(mut summands: Vec<ModuleSummand>, free_rank: u32) -> Self {
        summands.sort();
        Self { summands, free_rank }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn summands(&self) -> &[ModuleSummand] {
        &self.summands
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion_lengths(&self) -> impl Iterator<Item = u32> + '_ {
        self.summands.iter().filter_map(|s| match s {
            ModuleSummand::Torsion(n) => Some(*n),
            ModuleSummand::Cyclic(_) => None,
        })
    }

    pub fn cyclic_lengths(&self) -> impl Iterator<Item = u32> + '_ {
        self.summands.iter().filter_map(|s| match s {
            ModuleSummand::Cyclic(n) => Some(*n),
            ModuleSummand::Torsion(_) => None,
        })
    }

    /// Number of nonzero elements of a realization.
    pub fn size(&self) -> u32 {
        self.summands.iter().map(|s| s.len()).sum()
    }

    /// Multiset union.
    pub fn union(&self, other: &ModuleClass) -> ModuleClass {
        let summands = self.summands.iter().chain(&other.summands).copied().collect();
        ModuleClass::new(summands, self.free_rank + other.free_rank)
    }

    /// A concrete module in this class over `⟨t⟩`. Component `c` of type
    /// `T(n)` has elements `x{c}_0 → … → x{c}_{n-1} → *`, and a cycle has
    /// elements `z{c}_0 → … → z{c}_{n-1} → z{c}_0`.
    pub fn realize(&self) -> Result<FinModule> {
        self.realize_over(F1Monoid::Pos)
    }

    pub fn realize_over(&self, base: F1Monoid) -> Result<FinModule> {
        if self.free_rank > 0 {
            return Err(Error::Unsupported(
                "free modules are infinite and are not realized".into(),
            ));
        }
        let mut labels = vec![BASEPOINT.to_string()];
        let mut action = vec![BASE];
        for (c, summand) in self.summands.iter().enumerate() {
            let first = labels.len();
            let n = summand.len() as usize;
            for i in 0..n {
                let (prefix, next) = match summand {
                    ModuleSummand::Torsion(_) => ("x", if i + 1 < n { first + i + 1 } else { BASE }),
                    ModuleSummand::Cyclic(_) => ("z", first + (i + 1) % n),
                };
                labels.push(format!("{prefix}{c}_{i}"));
                action.push(next);
            }
        }
        Ok(FinModule::from_parts(base, labels, action))
    }

    pub(crate) fn parse_from(cursor: &mut Cursor<'_>) -> PResult<ModuleClass> {
        if cursor.eat("0") {
            return Ok(ModuleClass::zero());
        }
        let mut summands = Vec::new();
        let mut free_rank = 0;
        loop {
            let start = cursor.position();
            let name = cursor.ident()?;
            cursor.expect("(")?;
            let arg_pos = cursor.position();
            let n = cursor.u32()?;
            cursor.expect(")")?;
            if n == 0 {
                return Err(ParseError::new(arg_pos, "index must be at least 1"));
            }
            match name {
                "T" => summands.push(ModuleSummand::Torsion(n)),
                "C" => summands.push(ModuleSummand::Cyclic(n)),
                "FREE" => free_rank += n,
                _ => return Err(ParseError::new(start, format!("unknown summand `{name}`"))),
            }
            if !cursor.eat("+") {
                break;
            }
        }
        Ok(ModuleClass::new(summands, free_rank))
    }
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() && self.free_rank == 0 {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        if self.free_rank > 0 {
            parts.push(format!("FREE({})", self.free_rank));
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for ModuleClass {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut cursor = Cursor::new(s);
        let class = ModuleClass::parse_from(&mut cursor)?;
        cursor.finish()?;
        Ok(class)
    }
}
