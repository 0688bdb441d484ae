//! Generating sequences and the ordered-chain search.
//!
//! A chain is an ordered generating sequence a₁, …, a_ℓ in which every
//! element has order > 2, every consecutive ratio a_{i+1}·a_i⁻¹ has
//! order > 2, the set is irredundant (no proper subset generates), and
//! the set avoids five-letter products: no product of five elements of
//! T ∪ T⁻¹ ∪ {1} lands in T unless it equals a factor or a factor's
//! inverse. Such chains feed the chain-based connection-set recipes.

use crate::bits::BitSet;
use crate::error::{OrrError, Result};
use crate::group::{Elem, GroupTable};

/// An ordered generating sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenChain {
    pub elems: Vec<Elem>,
}

impl GenChain {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Consecutive ratios a_{i+1}·a_i⁻¹, one per adjacent pair.
    pub fn ratios(&self, group: &GroupTable) -> Vec<Elem> {
        self.elems
            .windows(2)
            .map(|w| group.mul(w[1], group.inv(w[0])))
            .collect()
    }
}

/// True when `elems` generates the group and no proper subset does.
/// Since generation is monotone it is enough to drop one element at a
/// time.
pub fn is_irredundant(group: &GroupTable, elems: &[Elem]) -> bool {
    if !group.generates(elems) {
        return false;
    }
    let mut rest: Vec<Elem> = Vec::with_capacity(elems.len().saturating_sub(1));
    for i in 0..elems.len() {
        rest.clear();
        rest.extend(elems.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e));
        if group.generates(&rest) {
            return false;
        }
    }
    true
}

/// True when no product of five elements of T ∪ T⁻¹ ∪ {1} lies in T,
/// except products that equal one of their own factors or a factor's
/// inverse.
pub fn is_five_product_avoiding(group: &GroupTable, elems: &[Elem]) -> bool {
    let mut in_t = BitSet::new(group.order());
    for &t in elems {
        in_t.insert(t as usize);
    }
    let mut u: Vec<Elem> = vec![0];
    for &t in elems {
        u.push(t);
        u.push(group.inv(t));
    }
    u.sort_unstable();
    u.dedup();
    let excl = |p: Elem, factors: &[Elem]| {
        factors
            .iter()
            .any(|&f| p == f || p == group.inv(f))
    };
    for &x in &u {
        for &y in &u {
            let pxy = group.mul(x, y);
            for &z in &u {
                let pxyz = group.mul(pxy, z);
                for &w in &u {
                    let pxyzw = group.mul(pxyz, w);
                    for &v in &u {
                        let p = group.mul(pxyzw, v);
                        if in_t.contains(p as usize) && !excl(p, &[x, y, z, w, v]) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Outcome of a chain search.
#[derive(Debug, Clone)]
pub struct ChainSearch {
    pub chain: Option<GenChain>,
    /// True when the whole candidate space was explored and no chain
    /// exists; false together with `chain: None` means the node budget
    /// ran out first.
    pub exhausted: bool,
    pub nodes: u64,
}

/// Search for a chain, shortest first, then by ascending element index.
///
/// Runs one depth-first pass per target length. Every extension must
/// escape the closure of the prefix, which any irredundant ordered
/// generating sequence satisfies, and those closures at least double at
/// each step, so lengths beyond 1 + log₂(n/3) are impossible and
/// exhaustion of the passes is definitive. Leaves (prefixes of the
/// target length that generate) are accepted once the full irredundance
/// and five-product checks pass.
pub fn find_ordered_chain(group: &GroupTable, budget: u64) -> ChainSearch {
    let n = group.order();
    let mut state = ChainDfs {
        group,
        budget,
        nodes: 0,
        chain: Vec::new(),
    };
    if n >= 3 {
        let mut target = 1;
        while 3 << (target - 1) <= n {
            let closure = group.closure_bits(&[]);
            match state.grow(&closure, target) {
                Ok(Some(elems)) => {
                    return ChainSearch {
                        chain: Some(GenChain { elems }),
                        exhausted: true,
                        nodes: state.nodes,
                    }
                }
                Ok(None) => {}
                Err(_) => {
                    return ChainSearch {
                        chain: None,
                        exhausted: false,
                        nodes: state.nodes,
                    }
                }
            }
            target += 1;
        }
    }
    ChainSearch {
        chain: None,
        exhausted: true,
        nodes: state.nodes,
    }
}

struct ChainDfs<'g> {
    group: &'g GroupTable,
    budget: u64,
    nodes: u64,
    chain: Vec<Elem>,
}

impl ChainDfs<'_> {
    fn grow(&mut self, closure: &BitSet, target: usize) -> Result<Option<Vec<Elem>>> {
        let g = self.group;
        for cand in g.elements() {
            if closure.contains(cand as usize) || g.elem_order(cand) <= 2 {
                continue;
            }
            if let Some(&last) = self.chain.last() {
                if g.elem_order(g.mul(cand, g.inv(last))) <= 2 {
                    continue;
                }
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OrrError::BudgetExhausted {
                    budget: self.budget,
                    unit: "chain search nodes",
                });
            }
            self.chain.push(cand);
            let extended = g.closure_bits(&self.chain);
            let full = extended.count() == g.order();
            if self.chain.len() == target {
                if full
                    && is_irredundant(g, &self.chain)
                    && is_five_product_avoiding(g, &self.chain)
                {
                    let found = self.chain.clone();
                    self.chain.pop();
                    return Ok(Some(found));
                }
            } else if !full {
                if let Some(found) = self.grow(&extended, target)? {
                    self.chain.pop();
                    return Ok(Some(found));
                }
            }
            self.chain.pop();
        }
        Ok(None)
    }
}
