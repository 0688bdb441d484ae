//! Connection sets and Cayley digraphs.
//!
//! Cay(G, S) puts an arc from x to s·x for every s in S, so (x, y) is an
//! arc exactly when y·x⁻¹ ∈ S. Right translations x ↦ x·g preserve arcs,
//! which makes every Cayley digraph vertex-transitive.

use std::io::Write;
use std::sync::OnceLock;

use crate::bits::BitSet;
use crate::error::{OrrError, Result};
use crate::group::{Elem, GroupTable};

/// A set of group elements used as arc labels. Never contains the
/// identity; duplicates and out-of-range indices are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    elems: Vec<Elem>,
    bits: BitSet,
}

impl ConnectionSet {
    pub fn new(group: &GroupTable, elems: &[Elem]) -> Result<ConnectionSet> {
        let mut bits = BitSet::new(group.order());
        let mut sorted: Vec<Elem> = Vec::with_capacity(elems.len());
        for &s in elems {
            if s as usize >= group.order() {
                return Err(OrrError::BadSet(format!("element {s} out of range")));
            }
            if s == 0 {
                return Err(OrrError::IdentityInSet);
            }
            if !bits.insert(s as usize) {
                return Err(OrrError::BadSet(format!("element {s} repeated")));
            }
            sorted.push(s);
        }
        sorted.sort_unstable();
        Ok(ConnectionSet {
            elems: sorted,
            bits,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Members in ascending order.
    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x as usize)
    }

    /// S ∩ S⁻¹ = ∅: no element appears together with its inverse, which
    /// also rules out involutions.
    pub fn is_oriented(&self, group: &GroupTable) -> bool {
        self.elems.iter().all(|&s| !self.contains(group.inv(s)))
    }

    pub fn generates(&self, group: &GroupTable) -> bool {
        group.generates(&self.elems)
    }
}

/// A plain digraph with sorted adjacency in both directions.
#[derive(Debug, Clone)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
}

impl Digraph {
    /// Builds from an arc list; duplicate arcs collapse, loops are kept.
    pub fn from_arcs(n: usize, arcs: &[(u32, u32)]) -> Digraph {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in arcs {
            out[u as usize].push(v);
            inn[v as usize].push(u);
        }
        for adj in out.iter_mut().chain(inn.iter_mut()) {
            adj.sort_unstable();
            adj.dedup();
        }
        Digraph { n, out, inn }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn out(&self) -> &[Vec<u32>] {
        &self.out
    }

    pub fn inn(&self) -> &[Vec<u32>] {
        &self.inn
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search(&v).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|a| a.len()).sum()
    }
}

/// Cay(G, S) with lazily mirrored in-neighbor lists.
pub struct CayleyDigraph<'g> {
    group: &'g GroupTable,
    set: ConnectionSet,
    out: Vec<Vec<u32>>,
    inn: OnceLock<Vec<Vec<u32>>>,
}

impl<'g> CayleyDigraph<'g> {
    pub fn new(group: &'g GroupTable, set: ConnectionSet) -> CayleyDigraph<'g> {
        let n = group.order();
        let mut out = vec![Vec::with_capacity(set.len()); n];
        for x in group.elements() {
            for &s in set.elems() {
                out[x as usize].push(group.mul(s, x) as u32);
            }
            out[x as usize].sort_unstable();
        }
        CayleyDigraph {
            group,
            set,
            out,
            inn: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &GroupTable {
        self.group
    }

    pub fn set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn out(&self) -> &[Vec<u32>] {
        &self.out
    }

    pub fn inn(&self) -> &[Vec<u32>] {
        self.inn.get_or_init(|| {
            let mut inn = vec![Vec::with_capacity(self.set.len()); self.n()];
            for (u, nbrs) in self.out.iter().enumerate() {
                for &v in nbrs {
                    inn[v as usize].push(u as u32);
                }
            }
            for adj in inn.iter_mut() {
                adj.sort_unstable();
            }
            inn
        })
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search(&v).is_ok()
    }

    /// Strong connectivity. For a Cayley digraph this is equivalent to S
    /// generating the group, because s⁻¹ is a positive power of s.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        let mut seen = BitSet::new(self.n());
        seen.insert(0);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for &v in &self.out[u] {
                if seen.insert(v as usize) {
                    queue.push(v);
                }
            }
        }
        seen.count() == self.n()
    }

    /// The subdigraph induced on `verts`, relabeled 0..k in the given
    /// order.
    pub fn induced(&self, verts: &[Elem]) -> Digraph {
        let mut pos = vec![u32::MAX; self.n()];
        for (i, &v) in verts.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut arcs = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.out[v as usize] {
                let j = pos[w as usize];
                if j != u32::MAX {
                    arcs.push((i as u32, j));
                }
            }
        }
        Digraph::from_arcs(verts.len(), &arcs)
    }

    /// The subdigraph induced on the connection set itself.
    pub fn induced_on_set(&self) -> Digraph {
        self.induced(&self.set.elems().to_vec())
    }

    /// Writes "n m" then one "u v" line per arc.
    pub fn write_arcs<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let m: usize = self.out.iter().map(|a| a.len()).sum();
        writeln!(w, "{} {}", self.n(), m)?;
        for (u, nbrs) in self.out.iter().enumerate() {
            for &v in nbrs {
                writeln!(w, "{u} {v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::load_fixture;

    fn cyclic(n: usize) -> GroupTable {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        GroupTable::from_rows(&rows).unwrap()
    }

    #[test]
    fn rejects_bad_sets() {
        let g = cyclic(6);
        assert!(matches!(
            ConnectionSet::new(&g, &[0, 1]),
            Err(OrrError::IdentityInSet)
        ));
        assert!(matches!(
            ConnectionSet::new(&g, &[1, 1]),
            Err(OrrError::BadSet(_))
        ));
        assert!(matches!(
            ConnectionSet::new(&g, &[9]),
            Err(OrrError::BadSet(_))
        ));
    }

    #[test]
    fn orientation_check() {
        let g = cyclic(6);
        let s = ConnectionSet::new(&g, &[1, 2]).unwrap();
        assert!(s.is_oriented(&g));
        // 2 and 4 are mutually inverse in C6.
        let s = ConnectionSet::new(&g, &[2, 4]).unwrap();
        assert!(!s.is_oriented(&g));
        // 3 is an involution.
        let s = ConnectionSet::new(&g, &[3]).unwrap();
        assert!(!s.is_oriented(&g));
    }

    #[test]
    fn directed_cycle_adjacency() {
        let g = cyclic(5);
        let s = ConnectionSet::new(&g, &[1]).unwrap();
        let cay = CayleyDigraph::new(&g, s);
        // Arc from x to 1+x: a single directed 5-cycle.
        for x in 0..5u32 {
            assert_eq!(cay.out()[x as usize], vec![(x + 1) % 5]);
            assert_eq!(cay.inn()[x as usize], vec![(x + 4) % 5]);
            assert!(cay.has_arc(x, (x + 1) % 5));
            assert!(!cay.has_arc((x + 1) % 5, x));
        }
        assert!(cay.is_connected());
    }

    #[test]
    fn connectivity_matches_generation() {
        let g = cyclic(12);
        for elems in [vec![2u16, 3], vec![2], vec![4, 6], vec![7]] {
            let s = ConnectionSet::new(&g, &elems).unwrap();
            let cay = CayleyDigraph::new(&g, s.clone());
            assert_eq!(cay.is_connected(), s.generates(&g), "set {elems:?}");
        }
    }

    #[test]
    fn right_translations_preserve_arcs() {
        let (_, g) = load_fixture("order_le16/dih8.json");
        let s = ConnectionSet::new(&g, &[1, 2, 5]).unwrap();
        let cay = CayleyDigraph::new(&g, s);
        for t in g.elements() {
            for x in g.elements() {
                for &y in &cay.out()[x as usize] {
                    assert!(cay.has_arc(g.mul(x, t) as u32, g.mul(y as Elem, t) as u32));
                }
            }
        }
    }

    #[test]
    fn induced_subdigraph() {
        let g = cyclic(6);
        let s = ConnectionSet::new(&g, &[1, 2]).unwrap();
        let cay = CayleyDigraph::new(&g, s);
        // On {1, 2, 3}: arcs 1→2, 1→3, 2→3 (y−x ∈ {1,2} mod 6).
        let sub = cay.induced(&[1, 2, 3]);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.arc_count(), 3);
        assert!(sub.has_arc(0, 1) && sub.has_arc(0, 2) && sub.has_arc(1, 2));
        assert!(!sub.has_arc(1, 0));
        assert_eq!(sub.inn()[2], vec![0, 1]);
    }

    #[test]
    fn arc_dump_format() {
        let g = cyclic(3);
        let s = ConnectionSet::new(&g, &[1]).unwrap();
        let cay = CayleyDigraph::new(&g, s);
        let mut buf = Vec::new();
        cay.write_arcs(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "3 3\n0 1\n1 2\n2 0\n");
    }
}
