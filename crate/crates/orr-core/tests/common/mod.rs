//! Shared helpers for the integration test targets.
#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use orr_core::aut::{stabilizer_of_origin, DEFAULT_NODE_BUDGET};
use orr_core::cayley::{CayleyDigraph, ConnectionSet};
use orr_core::construct::Recipe;
use orr_core::group::load_group_file;
use orr_core::{Elem, GroupTable};

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn load_fixture(rel: &str) -> (String, GroupTable) {
    load_group_file(&fixture_path(rel)).unwrap_or_else(|e| panic!("loading {rel}: {e}"))
}

/// All fixture files directly under `fixtures/<dir>`, sorted by name.
pub fn fixture_files(dir: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture_path(dir))
        .unwrap_or_else(|e| panic!("listing fixtures/{dir}: {e}"))
        .map(|entry| entry.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

/// Runs the command-line binary with the given arguments.
pub fn orr_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orr"))
        .args(args)
        .output()
        .expect("running the orr binary")
}

pub fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Direct product of two groups, with (x, y) numbered x·|B| + y.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    let rows: Vec<Vec<usize>> = (0..na * nb)
        .map(|p| {
            let (xa, ya) = (p / nb, p % nb);
            (0..na * nb)
                .map(|q| {
                    let (xb, yb) = (q / nb, q % nb);
                    a.mul(xa as u16, xb as u16) as usize * nb + b.mul(ya as u16, yb as u16) as usize
                })
                .collect()
        })
        .collect();
    GroupTable::from_rows(&rows).expect("direct product of groups is a group")
}

/// Asserts the six rearrangement identities that bind every pair with
/// |ab| = |ab⁻¹| = 2, plus the consequence that when one of the pair
/// has odd order the other is an involution. Returns the number of
/// qualifying pairs.
pub fn check_inverting_pair_identities(g: &GroupTable) -> usize {
    let mut pairs = 0;
    for a in g.elements() {
        for b in g.elements() {
            if g.elem_order(g.mul(a, b)) != 2 || g.elem_order(g.mul(a, g.inv(b))) != 2 {
                continue;
            }
            pairs += 1;
            let (ai, bi) = (g.inv(a), g.inv(b));
            assert_eq!(g.mul(g.mul(b, a), b), ai, "bab = a⁻¹");
            assert_eq!(g.mul(g.mul(b, ai), b), a, "ba⁻¹b = a");
            assert_eq!(g.mul(g.mul(a, b), a), bi, "aba = b⁻¹");
            assert_eq!(g.mul(g.mul(a, bi), a), b, "ab⁻¹a = b");
            let a2 = g.power(a, 2);
            let b2 = g.power(b, 2);
            assert_eq!(g.mul(g.mul(bi, a2), b), g.inv(a2), "b⁻¹a²b = a⁻²");
            assert_eq!(g.mul(g.mul(ai, b2), a), g.inv(b2), "a⁻¹b²a = b⁻²");
            if g.elem_order(a) % 2 == 1 {
                assert_eq!(g.elem_order(b), 2, "odd |a| forces |b| = 2");
            }
            if g.elem_order(b) % 2 == 1 {
                assert_eq!(g.elem_order(a), 2, "odd |b| forces |a| = 2");
            }
        }
    }
    pairs
}

/// Searches for a generating set of minimum cardinality avoiding
/// involutions. `None` means every minimum generating set contains an
/// involution.
pub fn involution_free_min_gen(g: &GroupTable) -> Option<Vec<Elem>> {
    let (d, _) = g.min_gen_size();
    if d == 0 {
        return Some(Vec::new());
    }
    let cands: Vec<Elem> = g
        .elements()
        .filter(|&x| x != 0 && g.elem_order(x) > 2)
        .collect();
    if !g.generates(&cands) {
        return None;
    }
    fn grow(
        g: &GroupTable,
        cands: &[Elem],
        start: usize,
        d: usize,
        cur: &mut Vec<Elem>,
    ) -> Option<Vec<Elem>> {
        if cur.len() == d {
            return g.generates(cur).then(|| cur.clone());
        }
        let pool: Vec<Elem> = cur.iter().chain(&cands[start..]).copied().collect();
        if !g.generates(&pool) {
            return None;
        }
        for i in start..cands.len() {
            cur.push(cands[i]);
            if let Some(found) = grow(g, cands, i + 1, d, cur) {
                return Some(found);
            }
            cur.pop();
        }
        None
    }
    grow(g, &cands, 0, d, &mut Vec::new())
}

/// A chain-built connection set decomposed into the pieces the
/// structure facts speak about: the ordered path of generators, the
/// optional extra product of the first two, and the optional swapped
/// head pair.
pub struct ChainParts {
    pub path: Vec<Elem>,
    /// `b₁b₂`, present in the commuting variant.
    pub head_product: Option<Elem>,
    /// `(b₁⁻¹, b₂b₁⁻¹)`, present in the swapped variant, where the
    /// path drops its first element.
    pub swapped_head: Option<(Elem, Elem)>,
}

/// Relabels a chain according to which variant of the chain set was
/// built from it.
pub fn chain_parts(g: &GroupTable, chain: &[Elem], recipe: Recipe) -> ChainParts {
    match recipe {
        Recipe::CHAIN_S => ChainParts {
            path: chain.to_vec(),
            head_product: None,
            swapped_head: None,
        },
        Recipe::CHAIN_Sprime => ChainParts {
            path: chain.to_vec(),
            head_product: Some(g.mul(chain[0], chain[1])),
            swapped_head: None,
        },
        Recipe::CHAIN_Sdoubleprime => {
            let b1_inv = g.inv(chain[0]);
            ChainParts {
                path: chain[1..].to_vec(),
                head_product: None,
                swapped_head: Some((b1_inv, g.mul(chain[1], b1_inv))),
            }
        }
        other => panic!("not a chain recipe: {other:?}"),
    }
}

/// Verifies the structural facts of a chain-built connection set:
/// (1) the path, its consecutive ratios, and the extra elements are
///     pairwise distinct and together are exactly the set;
/// (2) the set is oriented;
/// (4) consecutive-pair arcs appear precisely as dictated by
///     commuting/inverting relations;
/// (5) the path induces exactly the directed path in the digraph;
/// (10) the stabilizer of the origin moves no vertex of the set other
///      than possibly the first path element and the first ratio.
pub fn check_chain_facts(g: &GroupTable, parts: &ChainParts, set: &ConnectionSet) {
    let m = parts.path.len();
    assert!(m >= 3, "chain view too short");
    let ratios: Vec<Elem> = (0..m - 1)
        .map(|i| g.mul(parts.path[i + 1], g.inv(parts.path[i])))
        .collect();

    let mut all: Vec<Elem> = parts.path.clone();
    all.extend(&ratios);
    if let Some(p) = parts.head_product {
        all.push(p);
    }
    if let Some((a, b)) = parts.swapped_head {
        all.push(a);
        all.push(b);
    }
    let distinct: HashSet<Elem> = all.iter().copied().collect();
    assert_eq!(distinct.len(), all.len(), "duplication among set pieces");
    let set_elems: HashSet<Elem> = set.elems().iter().copied().collect();
    assert_eq!(set_elems, distinct, "set differs from its pieces");

    assert!(set.is_oriented(g), "chain set not oriented");

    let cay = CayleyDigraph::new(g, set.clone());
    for i in 0..m - 1 {
        let (ai, ai1, x) = (parts.path[i], parts.path[i + 1], ratios[i]);
        assert_eq!(
            cay.has_arc(x as u32, ai1 as u32),
            g.commutes(ai, ai1),
            "ratio→next arc iff the pair commutes"
        );
        let inverts = g.mul(g.mul(ai1, ai), g.inv(ai1)) == g.inv(ai);
        assert_eq!(
            cay.has_arc(ai1 as u32, x as u32),
            inverts,
            "next→ratio arc iff the next element inverts the previous"
        );
        let exempt = i == 0 && parts.head_product.is_some() && g.elem_order(parts.path[0]) == 3;
        if !exempt {
            assert!(
                !cay.has_arc(ai as u32, x as u32),
                "unexpected arc from a path element to its outgoing ratio"
            );
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            assert_eq!(
                cay.has_arc(parts.path[i] as u32, parts.path[j] as u32),
                j == i + 1,
                "path must induce exactly the directed path"
            );
        }
    }

    let stab = stabilizer_of_origin(&cay, DEFAULT_NODE_BUDGET).expect("stabilizer search");
    let movable: HashSet<Elem> = [parts.path[0], ratios[0]].into_iter().collect();
    for sigma in &stab.generators {
        for &s in set.elems() {
            if !movable.contains(&s) {
                assert_eq!(
                    sigma[s as usize],
                    s as u32,
                    "stabilizer moved a vertex the facts pin down"
                );
            }
        }
    }
}
