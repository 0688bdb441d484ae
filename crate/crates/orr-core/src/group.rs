//! Finite groups as dense multiplication tables, plus structural analysis:
//! orders, closures, solvability, generalized dihedral detection, and
//! minimum generating size.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{OrrError, Result};

/// Index of a group element within one `GroupTable`. Only meaningful
/// relative to the table that produced it. The identity is always 0.
pub type Elem = u16;

/// Largest group order accepted, whether from a table or from closing
/// permutation generators.
pub const DEFAULT_ORDER_BOUND: usize = 20_000;

/// Orders up to this bound get the full `n^3` associativity check;
/// larger tables are spot-checked on seeded random triples.
pub const EXHAUSTIVE_ASSOC_BOUND: usize = 512;

const SAMPLED_ASSOC_TRIPLES: usize = 1_000_000;
const ASSOC_SAMPLE_SEED: u64 = 0;

/// How associativity of an input table was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AssocCheck {
    /// All `n^3` triples were checked, or the table came from genuine
    /// permutation composition, which is associative by construction.
    Exhaustive,
    /// Only a seeded random sample of triples was checked.
    Sampled { seed: u64, triples: usize },
}

/// A finite group of order `n` as a dense multiplication table.
///
/// `mul[a*n + b]` is the product a·b, `inv[a]` the inverse of a, and
/// element 0 the identity.
pub struct GroupTable {
    n: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    assoc: AssocCheck,
}

impl GroupTable {
    /// Builds and fully validates a group from table rows.
    ///
    /// Requirements: square table, identity at index 0, every row and
    /// column a permutation, two-sided inverses, associativity
    /// (exhaustive up to `EXHAUSTIVE_ASSOC_BOUND`, sampled beyond).
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<GroupTable> {
        let n = rows.len();
        if n == 0 {
            return Err(OrrError::NotAGroup("empty table".into()));
        }
        if n > DEFAULT_ORDER_BOUND {
            return Err(OrrError::ClosureTooLarge {
                bound: DEFAULT_ORDER_BOUND,
            });
        }
        let mut mul = vec![0 as Elem; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(OrrError::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(OrrError::NotAGroup(format!(
                        "entry ({i},{j}) = {v} out of range"
                    )));
                }
                mul[i * n + j] = v as Elem;
            }
        }
        // Identity at index 0.
        for j in 0..n {
            if mul[j] as usize != j || mul[j * n] as usize != j {
                return Err(OrrError::NotAGroup(
                    "element 0 is not a two-sided identity".into(),
                ));
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.fill(false);
            for j in 0..n {
                let v = mul[i * n + j] as usize;
                if seen[v] {
                    return Err(OrrError::NotAGroup(format!("row {i} repeats {v}")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.fill(false);
            for i in 0..n {
                let v = mul[i * n + j] as usize;
                if seen[v] {
                    return Err(OrrError::NotAGroup(format!("column {j} repeats {v}")));
                }
                seen[v] = true;
            }
        }
        // Two-sided inverses.
        let mut inv = vec![0 as Elem; n];
        for i in 0..n {
            let mut found = None;
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    found = Some(j);
                    break;
                }
            }
            let j = found.ok_or_else(|| {
                OrrError::NotAGroup(format!("element {i} has no right inverse"))
            })?;
            if mul[j * n + i] != 0 {
                return Err(OrrError::NotAGroup(format!(
                    "element {i} has no two-sided inverse"
                )));
            }
            inv[i] = j as Elem;
        }
        // Associativity.
        let assoc = if n <= EXHAUSTIVE_ASSOC_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b] as usize;
                    for c in 0..n {
                        let bc = mul[b * n + c] as usize;
                        if mul[ab * n + c] != mul[a * n + bc] {
                            return Err(OrrError::NotAGroup(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
            AssocCheck::Exhaustive
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SAMPLE_SEED);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                let c = rng.random_range(0..n);
                let ab = mul[a * n + b] as usize;
                let bc = mul[b * n + c] as usize;
                if mul[ab * n + c] != mul[a * n + bc] {
                    return Err(OrrError::NotAGroup(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
            AssocCheck::Sampled {
                seed: ASSOC_SAMPLE_SEED,
                triples: SAMPLED_ASSOC_TRIPLES,
            }
        };
        Ok(GroupTable { n, mul, inv, assoc })
    }

    /// Builds a group by closing permutation generators under
    /// composition, where the product p·q means "apply p, then q".
    ///
    /// Elements are sorted lexicographically as arrays, which always
    /// places the identity at index 0.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        bound: usize,
    ) -> Result<GroupTable> {
        for (gi, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(OrrError::NotAGroup(format!(
                    "generator {gi} has length {}, expected {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(OrrError::NotAGroup(format!(
                        "generator {gi} is not a permutation"
                    )));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index: HashSet<Vec<usize>> = elems.iter().cloned().collect();
        let mut frontier = 0;
        while frontier < elems.len() {
            let p = elems[frontier].clone();
            frontier += 1;
            for g in generators {
                // p then g.
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if index.insert(q.clone()) {
                    if elems.len() >= bound {
                        return Err(OrrError::ClosureTooLarge { bound });
                    }
                    elems.push(q);
                }
            }
        }
        elems.sort();
        debug_assert_eq!(elems[0], identity);
        let n = elems.len();
        let pos: std::collections::HashMap<&[usize], Elem> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i as Elem))
            .collect();
        let mut mul = vec![0 as Elem; n * n];
        for (i, p) in elems.iter().enumerate() {
            for (j, q) in elems.iter().enumerate() {
                let r: Vec<usize> = p.iter().map(|&x| q[x]).collect();
                mul[i * n + j] = *pos.get(r.as_slice()).expect("closure is closed");
            }
        }
        let mut inv = vec![0 as Elem; n];
        for (i, p) in elems.iter().enumerate() {
            let mut pi = vec![0usize; degree];
            for (x, &px) in p.iter().enumerate() {
                pi[px] = x;
            }
            inv[i] = *pos.get(pi.as_slice()).expect("inverse is in closure");
        }
        // Composition of genuine permutations is associative, and the
        // remaining axioms hold by construction.
        Ok(GroupTable {
            n,
            mul,
            inv,
            assoc: AssocCheck::Exhaustive,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn assoc_check(&self) -> AssocCheck {
        self.assoc
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// a^k for k ≥ 0.
    pub fn power(&self, a: Elem, k: usize) -> Elem {
        let mut acc: Elem = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Smallest k ≥ 1 with a^k = 1.
    pub fn elem_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// b⁻¹·a·b.
    #[inline]
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// a⁻¹·b⁻¹·a·b.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.n as Elem
    }

    /// The subgroup generated by `seed`, as a membership bit set.
    pub fn closure_bits(&self, seed: &[Elem]) -> BitSet {
        let mut bits = BitSet::new(self.n);
        bits.insert(0);
        let mut queue: Vec<Elem> = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in seed {
                let y = self.mul(x, g);
                if bits.insert(y as usize) {
                    queue.push(y);
                }
            }
        }
        bits
    }

    /// The subgroup generated by `seed`, sorted ascending.
    pub fn closure(&self, seed: &[Elem]) -> Vec<Elem> {
        self.closure_bits(seed)
            .iter()
            .map(|x| x as Elem)
            .collect()
    }

    pub fn generates(&self, seed: &[Elem]) -> bool {
        self.closure_bits(seed).count() == self.n
    }

    pub fn is_abelian(&self) -> bool {
        for a in 1..self.n as Elem {
            for b in (a + 1)..self.n as Elem {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        let mut e: usize = 1;
        for a in self.elements() {
            let o = self.elem_order(a);
            e = e / gcd(e, o) * o;
        }
        e
    }

    /// Map from element order to the number of elements of that order.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for a in self.elements() {
            *hist.entry(self.elem_order(a)).or_insert(0) += 1;
        }
        hist
    }

    /// Derived subgroup of the subgroup on `elems` (which must be closed).
    pub fn derived_subgroup(&self, elems: &[Elem]) -> Vec<Elem> {
        let mut comms: Vec<Elem> = Vec::new();
        let mut seen = BitSet::new(self.n);
        for &a in elems {
            for &b in elems {
                let c = self.commutator(a, b);
                if seen.insert(c as usize) {
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    /// True when the derived series reaches the trivial subgroup.
    pub fn is_solvable(&self) -> bool {
        let mut current: Vec<Elem> = self.elements().collect();
        loop {
            let next = self.derived_subgroup(&current);
            if next.len() == 1 {
                return true;
            }
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }

    /// If the group is an abelian group A extended by an element that
    /// squares to the identity and inverts A, returns (A, flip).
    ///
    /// Every index-2 subgroup contains the subgroup generated by all
    /// squares and commutators, so candidates for A are enumerated as
    /// kernels of the nonzero linear functionals on that elementary
    /// abelian 2-quotient. For each candidate A it suffices to test a
    /// single element outside A: if some flip works, all of them do.
    pub fn generalized_dihedral_witness(&self) -> Option<(Vec<Elem>, Elem)> {
        let n = self.n;
        if n < 2 {
            return None;
        }
        let mut seeds: Vec<Elem> = Vec::new();
        let mut seen = BitSet::new(n);
        for a in self.elements() {
            let s = self.mul(a, a);
            if seen.insert(s as usize) {
                seeds.push(s);
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                let c = self.commutator(a, b);
                if seen.insert(c as usize) {
                    seeds.push(c);
                }
            }
        }
        let base = self.closure_bits(&seeds);
        let m = n / base.count();
        if m < 2 {
            return None;
        }
        // Label cosets of the base subgroup; the quotient is elementary
        // abelian of order 2^k.
        let mut coset = vec![usize::MAX; n];
        let mut reps: Vec<Elem> = Vec::new();
        for x in self.elements() {
            if coset[x as usize] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for b in base.iter() {
                coset[self.mul(x, b as Elem) as usize] = id;
            }
        }
        debug_assert_eq!(reps.len(), m);
        let cmul = |c1: usize, c2: usize| coset[self.mul(reps[c1], reps[c2]) as usize];
        // Greedy basis of the quotient, then coordinates for each coset.
        let mut basis: Vec<usize> = Vec::new();
        let mut coords = vec![usize::MAX; m];
        coords[0] = 0;
        let mut span: Vec<usize> = vec![0];
        for c in 1..m {
            if coords[c] != usize::MAX {
                continue;
            }
            let bit = 1usize << basis.len();
            basis.push(c);
            for i in 0..span.len() {
                let s = span[i];
                let t = cmul(s, c);
                debug_assert_eq!(coords[t], usize::MAX);
                coords[t] = coords[s] | bit;
                span.push(t);
            }
        }
        let k = basis.len();
        debug_assert_eq!(m, 1 << k);
        for f in 1..(1usize << k) {
            let mut part: Vec<Elem> = Vec::with_capacity(n / 2);
            let mut tau: Option<Elem> = None;
            for x in self.elements() {
                if (f & coords[coset[x as usize]]).count_ones() % 2 == 0 {
                    part.push(x);
                } else if tau.is_none() {
                    tau = Some(x);
                }
            }
            let tau = tau.expect("proper functional has a nonzero coset");
            if self.mul(tau, tau) != 0 {
                continue;
            }
            let abelian = part.iter().all(|&a| {
                part.iter()
                    .all(|&b| self.mul(a, b) == self.mul(b, a))
            });
            if !abelian {
                continue;
            }
            let inverts = part
                .iter()
                .all(|&a| self.mul(self.mul(tau, a), tau) == self.inv(a));
            if inverts {
                return Some((part, tau));
            }
        }
        None
    }

    /// Minimum number of generators, with a witness tuple.
    ///
    /// Breadth-first search over distinct subgroups: level k holds every
    /// subgroup generated by k elements, deduplicated by membership bit
    /// set, so the first level whose extension reaches the whole group
    /// is exact. Returns (0, []) for the trivial group.
    pub fn min_gen_size(&self) -> (usize, Vec<Elem>) {
        if self.n == 1 {
            return (0, Vec::new());
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let trivial = self.closure_bits(&[]);
        seen.insert(trivial.key().to_vec());
        // (generator tuple, membership bits) per known subgroup.
        let mut level: Vec<(Vec<Elem>, BitSet)> = vec![(Vec::new(), trivial)];
        let mut depth = 0;
        while !level.is_empty() {
            depth += 1;
            let mut next: Vec<(Vec<Elem>, BitSet)> = Vec::new();
            for (gens, bits) in &level {
                for g in self.elements() {
                    if bits.contains(g as usize) {
                        continue;
                    }
                    let mut egens = gens.clone();
                    egens.push(g);
                    let ebits = self.closure_bits(&egens);
                    if ebits.count() == self.n {
                        return (depth, egens);
                    }
                    if seen.insert(ebits.key().to_vec()) {
                        next.push((egens, ebits));
                    }
                }
            }
            level = next;
        }
        unreachable!("whole group is reachable from its own elements");
    }

    /// Full structural summary.
    pub fn structure_report(&self) -> StructureReport {
        let witness = self.generalized_dihedral_witness();
        let (d, gens) = self.min_gen_size();
        StructureReport {
            order: self.n,
            is_abelian: self.is_abelian(),
            is_solvable: self.is_solvable(),
            is_generalized_dihedral: witness.is_some(),
            dihedral_abelian_part: witness
                .as_ref()
                .map(|(a, _)| a.iter().map(|&x| x as usize).collect()),
            dihedral_flip: witness.as_ref().map(|&(_, t)| t as usize),
            min_gen_size: d,
            min_gen_witness: gens.iter().map(|&x| x as usize).collect(),
            exponent: self.exponent(),
            order_histogram: self.order_histogram(),
        }
    }
}

/// Structural facts about one group.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub order: usize,
    pub is_abelian: bool,
    pub is_solvable: bool,
    pub is_generalized_dihedral: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dihedral_abelian_part: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dihedral_flip: Option<usize>,
    pub min_gen_size: usize,
    pub min_gen_witness: Vec<usize>,
    pub exponent: usize,
    pub order_histogram: BTreeMap<usize, usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Deserialize)]
struct PermSpec {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct GroupFile {
    name: String,
    kind: String,
    #[serde(default)]
    table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    perm: Option<PermSpec>,
}

/// Parses a group description from JSON text.
///
/// Two kinds are accepted:
/// `{"name": N, "kind": "table", "table": [[..], ..]}` with the identity
/// at index 0, and
/// `{"name": N, "kind": "perm", "perm": {"degree": d, "generators": [..]}}`
/// whose closure is relabeled so the identity gets index 0.
pub fn parse_group_json(text: &str) -> Result<(String, GroupTable)> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| OrrError::Parse(e.to_string()))?;
    let table = match file.kind.as_str() {
        "table" => {
            let rows = file
                .table
                .ok_or_else(|| OrrError::Parse("kind \"table\" needs a \"table\" field".into()))?;
            GroupTable::from_rows(&rows)?
        }
        "perm" => {
            let spec = file
                .perm
                .ok_or_else(|| OrrError::Parse("kind \"perm\" needs a \"perm\" field".into()))?;
            GroupTable::from_permutations(spec.degree, &spec.generators, DEFAULT_ORDER_BOUND)?
        }
        other => {
            return Err(OrrError::Parse(format!(
                "unknown kind {other:?}, expected \"table\" or \"perm\""
            )))
        }
    };
    Ok((file.name, table))
}

/// Loads a group description from a JSON file.
pub fn load_group_file(path: &Path) -> Result<(String, GroupTable)> {
    let text = std::fs::read_to_string(path)?;
    parse_group_json(&text)
}
