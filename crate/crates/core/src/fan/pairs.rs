//! Regressive compatible pairs over a fixed basis, their caterpillar trees
//! and the simplicial cones they cut out.

use crate::matroid::FundamentalCircuits;
use crate::set::ElementSet;

use super::FanError;

const UNRANKED: usize = usize::MAX;

/// A preference function `p : E - B -> B` together with a total order on its
/// image.
///
/// `pref[t]` is `p(nonbasis[t])`; `order` lists `Image(p)` from the
/// smallest to the largest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompatiblePair {
    pub basis: Vec<usize>,
    pub nonbasis: Vec<usize>,
    pub pref: Vec<usize>,
    pub order: Vec<usize>,
}

impl CompatiblePair {
    pub fn preference(&self, k: usize) -> Option<usize> {
        let t = self.nonbasis.iter().position(|&x| x == k)?;
        Some(self.pref[t])
    }

    pub fn is_regressive(&self) -> bool {
        self.nonbasis.iter().zip(&self.pref).all(|(&k, &b)| b < k)
    }

    fn order_rank(&self, b: usize) -> Option<usize> {
        self.order.iter().position(|&x| x == b)
    }

    /// Re-checks the defining conditions against the fundamental circuits:
    /// `p(k)` lies in `F_k`, `order` is exactly the image, and `p(k)` is the
    /// order-smallest image element of `F_k`.
    pub fn is_compatible(&self, fc: &FundamentalCircuits) -> bool {
        if fc.basis != self.basis || fc.nonbasis != self.nonbasis {
            return false;
        }
        let mut image: Vec<usize> = self.pref.clone();
        image.sort_unstable();
        image.dedup();
        let mut ordered = self.order.clone();
        ordered.sort_unstable();
        if image != ordered {
            return false;
        }
        self.pref.iter().zip(&fc.parts).all(|(&b, part)| {
            let Some(rb) = self.order_rank(b) else {
                return false;
            };
            part.contains(&b)
                && part
                    .iter()
                    .filter_map(|&a| self.order_rank(a))
                    .all(|ra| ra >= rb)
        })
    }
}

/// Directed caterpillar tree on the blocks `Q_b = {b} + p^{-1}(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarTree {
    /// `(b, Q_b)` for every basis element, in basis order; blocks are sorted.
    pub blocks: Vec<(usize, Vec<usize>)>,
    /// Basis elements of the non-singleton blocks, in increasing order.
    pub spine: Vec<usize>,
    /// `(c, b)`: the singleton block `{c}` hangs off the spine block `Q_b`.
    pub leaves: Vec<(usize, usize)>,
}

impl CaterpillarTree {
    fn block(&self, b: usize) -> &[usize] {
        &self
            .blocks
            .iter()
            .find(|(x, _)| *x == b)
            .expect("block of a basis element")
            .1
    }
}

pub fn build_tree(pair: &CompatiblePair, fc: &FundamentalCircuits) -> Result<CaterpillarTree, FanError> {
    let blocks: Vec<(usize, Vec<usize>)> = pair
        .basis
        .iter()
        .map(|&b| {
            let mut q = vec![b];
            q.extend(
                pair.nonbasis
                    .iter()
                    .zip(&pair.pref)
                    .filter(|&(_, &p)| p == b)
                    .map(|(&k, _)| k),
            );
            q.sort_unstable();
            (b, q)
        })
        .collect();
    let mut leaves = Vec::new();
    for &c in &pair.basis {
        if pair.order.contains(&c) {
            continue;
        }
        let parent = pair
            .order
            .iter()
            .rev()
            .find(|&&b| {
                pair.pref
                    .iter()
                    .zip(&fc.parts)
                    .any(|(&p, part)| p == b && part.contains(&c))
            })
            .ok_or(FanError::Unattached(c))?;
        leaves.push((c, *parent));
    }
    Ok(CaterpillarTree {
        blocks,
        spine: pair.order.clone(),
        leaves,
    })
}

/// Generators of the cone cut out by `tree`, modulo the all-ones lineality:
/// the indicators of the up-sets of every block except the minimal one.
/// Spine up-sets come first (from the second spine block on), then leaves.
pub fn cone_from_tree(tree: &CaterpillarTree, n: usize) -> Vec<ElementSet> {
    let mut rays = Vec::new();
    for r in 1..tree.spine.len() {
        let mut up = ElementSet::empty(n);
        for &b in &tree.spine[r..] {
            up.union_with(&ElementSet::from_elements(n, tree.block(b).iter().copied()));
        }
        for &(c, parent) in &tree.leaves {
            let pr = tree.spine.iter().position(|&x| x == parent).expect("parent on spine");
            if pr >= r {
                up.insert(c);
            }
        }
        rays.push(up);
    }
    for &(c, _) in &tree.leaves {
        rays.push(ElementSet::from_elements(n, [c]));
    }
    rays
}

/// Recursive enumeration of regressive compatible pairs over one basis.
///
/// Works on basis positions. For a new image element `b` the admissible
/// insertion positions of `b` into the current chain form an interval, so
/// the no-earlier-conflict test is evaluated once per candidate rather than
/// once per extension.
pub(crate) struct PairEnumerator<'a> {
    fc: &'a FundamentalCircuits,
    n: usize,
    parts: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
    pref: Vec<usize>,
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl<'a> PairEnumerator<'a> {
    pub(crate) fn new(fc: &'a FundamentalCircuits, n: usize) -> Self {
        let m = fc.basis.len();
        let pos_of = |b: usize| fc.basis.binary_search(&b).expect("part element in basis");
        let parts: Vec<Vec<usize>> = fc
            .parts
            .iter()
            .map(|p| p.iter().map(|&b| pos_of(b)).collect())
            .collect();
        let mut containing = vec![Vec::new(); m];
        for (t, part) in parts.iter().enumerate() {
            for &b in part {
                containing[b].push(t);
            }
        }
        Self {
            fc,
            n,
            parts,
            containing,
            pref: Vec::with_capacity(fc.nonbasis.len()),
            order: Vec::with_capacity(m),
            rank: vec![UNRANKED; m],
        }
    }

    /// Whether some basis element lies in no fundamental circuit (a coloop).
    pub(crate) fn unattached(&self) -> Option<usize> {
        self.containing
            .iter()
            .position(Vec::is_empty)
            .map(|b| self.fc.basis[b])
    }

    pub(crate) fn run(&mut self, emit: &mut dyn FnMut(&PairEnumerator<'_>)) {
        self.recurse(0, emit);
    }

    fn insert(&mut self, q: usize, b: usize) {
        self.order.insert(q, b);
        for (r, &x) in self.order.iter().enumerate().skip(q) {
            self.rank[x] = r;
        }
    }

    fn remove(&mut self, q: usize) {
        let b = self.order.remove(q);
        self.rank[b] = UNRANKED;
        for (r, &x) in self.order.iter().enumerate().skip(q) {
            self.rank[x] = r;
        }
    }

    fn recurse(&mut self, t: usize, emit: &mut dyn FnMut(&PairEnumerator<'_>)) {
        if t == self.parts.len() {
            emit(self);
            return;
        }
        let k = self.fc.nonbasis[t];
        let min_rank = self.parts[t]
            .iter()
            .map(|&b| self.rank[b])
            .filter(|&r| r != UNRANKED)
            .min();

        if let Some(r) = min_rank {
            self.pref.push(self.order[r]);
            self.recurse(t + 1, emit);
            self.pref.pop();
        }

        let hi = min_rank.unwrap_or(self.order.len());
        for i in 0..self.parts[t].len() {
            let b = self.parts[t][i];
            if self.rank[b] != UNRANKED || self.fc.basis[b] >= k {
                continue;
            }
            // b must sit above p(l) for every earlier l with b in F_l
            let lo = self.containing[b]
                .iter()
                .take_while(|&&l| l < t)
                .map(|&l| self.rank[self.pref[l]] + 1)
                .max()
                .unwrap_or(0);
            for q in lo..=hi {
                self.insert(q, b);
                self.pref.push(b);
                self.recurse(t + 1, emit);
                self.pref.pop();
                self.remove(q);
            }
        }
    }

    pub(crate) fn pair(&self) -> CompatiblePair {
        CompatiblePair {
            basis: self.fc.basis.clone(),
            nonbasis: self.fc.nonbasis.clone(),
            pref: self.pref.iter().map(|&b| self.fc.basis[b]).collect(),
            order: self.order.iter().map(|&b| self.fc.basis[b]).collect(),
        }
    }

    /// Appends the cone generators of the current pair to `out`, in the same
    /// order as [`cone_from_tree`].
    pub(crate) fn push_rays(&self, out: &mut Vec<ElementSet>) {
        let n = self.n;
        let s = self.order.len();
        let m = self.fc.basis.len();
        let mut blocks: Vec<ElementSet> = Vec::with_capacity(s);
        for &b in &self.order {
            blocks.push(ElementSet::from_elements(n, [self.fc.basis[b]]));
        }
        for (t, &b) in self.pref.iter().enumerate() {
            blocks[self.rank[b]].insert(self.fc.nonbasis[t]);
        }
        let mut leaves_at: Vec<Vec<usize>> = vec![Vec::new(); s];
        let mut leaf_rays = Vec::new();
        for c in 0..m {
            if self.rank[c] != UNRANKED {
                continue;
            }
            let attach = self.containing[c]
                .iter()
                .map(|&t| self.rank[self.pref[t]])
                .max()
                .expect("no coloops");
            leaves_at[attach].push(self.fc.basis[c]);
            leaf_rays.push(ElementSet::from_elements(n, [self.fc.basis[c]]));
        }
        let start = out.len();
        let mut acc = ElementSet::empty(n);
        for r in (1..s).rev() {
            acc.union_with(&blocks[r]);
            for &c in &leaves_at[r] {
                acc.insert(c);
            }
            out.push(acc.clone());
        }
        out[start..].reverse();
        out.extend(leaf_rays);
    }
}
