//! Verdict assembly: group structure, construction outcome, element
//! words, and timings, all serializable to JSON.

use std::time::Instant;

use serde::Serialize;

use crate::construct::{construct, Answer, ConstructOptions, Construction, Recipe};
use crate::error::Result;
use crate::genset::GenChain;
use crate::group::{Elem, GroupTable};
use crate::oracle::OracleTranscript;

/// Wall-clock seconds spent in each phase of `analyze`.
#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub structure_secs: f64,
    pub construct_secs: f64,
    pub total_secs: f64,
}

/// The connection set both as element indices and as words in the
/// minimum generating witness (a, b, c, …).
#[derive(Debug, Clone, Serialize)]
pub struct ConnectionSetReport {
    pub indices: Vec<Elem>,
    pub words: Vec<String>,
}

/// Complete analysis result for one group.
#[derive(Debug, Serialize)]
pub struct Verdict {
    pub group_name: String,
    pub order: usize,
    /// Minimum number of generators.
    pub d: usize,
    pub solvable: bool,
    pub generalized_dihedral: bool,
    pub answer: Answer,
    /// Recipe wire identifier, "exception:<tag>", or "oracle:sampled".
    pub method: String,
    /// For refusals: the theorem tag or the enumeration digest.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection_set: Option<ConnectionSetReport>,
    /// Order of the digraph's automorphism group; equals the group
    /// order exactly when the digraph is an ORR.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<u64>,
    /// The ordered chain behind a chain-built set, as element indices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleTranscript>,
    pub timings: Timings,
}

/// Shortest words for every element over the given generators, labeled
/// a, b, c, … (then g26, g27, … past the alphabet). Words use `*` for
/// concatenation and signed exponents, e.g. `a^2*b^-1`; the identity is
/// `e`. Ties prefer positive powers and earlier generators.
pub fn element_words(group: &GroupTable, gens: &[Elem]) -> Vec<String> {
    let n = group.order();
    let label = |i: usize| -> String {
        if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("g{i}")
        }
    };
    // Steps in preference order: each generator positively, then the
    // non-involution inverses.
    let mut steps: Vec<(Elem, usize, i32)> = Vec::new();
    for (i, &g) in gens.iter().enumerate() {
        steps.push((g, i, 1));
    }
    for (i, &g) in gens.iter().enumerate() {
        if group.inv(g) != g {
            steps.push((group.inv(g), i, -1));
        }
    }
    let mut from: Vec<Option<(Elem, usize, i32)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue: std::collections::VecDeque<Elem> = std::collections::VecDeque::new();
    queue.push_back(0);
    while let Some(x) = queue.pop_front() {
        for &(g, i, sign) in &steps {
            let y = group.mul(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                from[y as usize] = Some((x, i, sign));
                queue.push_back(y);
            }
        }
    }
    (0..n)
        .map(|e| {
            if e == 0 {
                return "e".to_string();
            }
            if !seen[e] {
                return format!("#{e}");
            }
            let mut letters: Vec<(usize, i32)> = Vec::new();
            let mut cur = e as Elem;
            while cur != 0 {
                let (prev, i, sign) = from[cur as usize].expect("path back to identity");
                letters.push((i, sign));
                cur = prev;
            }
            letters.reverse();
            let mut parts: Vec<String> = Vec::new();
            let mut run: Option<(usize, i32)> = None;
            let flush = |run: &mut Option<(usize, i32)>, parts: &mut Vec<String>| {
                if let Some((i, exp)) = run.take() {
                    if exp == 1 {
                        parts.push(label(i));
                    } else {
                        parts.push(format!("{}^{}", label(i), exp));
                    }
                }
            };
            for (i, sign) in letters {
                match &mut run {
                    Some((j, exp)) if *j == i && exp.signum() == sign => *exp += sign,
                    _ => {
                        flush(&mut run, &mut parts);
                        run = Some((i, sign));
                    }
                }
            }
            flush(&mut run, &mut parts);
            parts.join("*")
        })
        .collect()
}

/// Runs the structure analysis and the construction, and assembles the
/// verdict.
pub fn analyze(name: &str, group: &GroupTable, opts: &ConstructOptions) -> Result<Verdict> {
    let t_total = Instant::now();
    let t = Instant::now();
    let structure = group.structure_report();
    let structure_secs = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let done = construct(group, opts)?;
    let construct_secs = t.elapsed().as_secs_f64();
    let witness: Vec<Elem> = structure.min_gen_witness.iter().map(|&x| x as Elem).collect();
    Ok(assemble(
        name,
        group,
        &witness,
        structure.min_gen_size,
        structure.is_solvable,
        structure.is_generalized_dihedral,
        done,
        Timings {
            structure_secs,
            construct_secs,
            total_secs: t_total.elapsed().as_secs_f64(),
        },
    ))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    name: &str,
    group: &GroupTable,
    witness: &[Elem],
    d: usize,
    solvable: bool,
    generalized_dihedral: bool,
    done: Construction,
    timings: Timings,
) -> Verdict {
    let connection_set = done.set.as_ref().map(|s| {
        let words = element_words(group, witness);
        ConnectionSetReport {
            indices: s.elems().to_vec(),
            words: s
                .elems()
                .iter()
                .map(|&e| words[e as usize].clone())
                .collect(),
        }
    });
    let aut_order = match done.answer {
        Answer::Orr => Some(group.order() as u64),
        _ => None,
    };
    Verdict {
        group_name: name.to_string(),
        order: group.order(),
        d,
        solvable,
        generalized_dihedral,
        answer: done.answer,
        method: done.method,
        reason: done.reason,
        connection_set,
        aut_order,
        chain: done.chain.as_ref().map(|c: &GenChain| c.elems.clone()),
        annotations: done.annotations,
        oracle: done.oracle,
        timings,
    }
}

/// Recipes reachable from `construct`, exposed for documentation and
/// exhaustive matching in clients.
pub fn recipe_wire_ids() -> Vec<&'static str> {
    use Recipe::*;
    [
        D0_D1,
        L32_a,
        L32_b,
        L33_nonab,
        L33_ab,
        L42_S,
        L42_Sprime,
        L44,
        L45,
        L46_i,
        L46_ii,
        L46_iii,
        L47,
        L48,
        CHAIN_S,
        CHAIN_Sprime,
        CHAIN_Sdoubleprime,
        ORACLE_FOUND,
    ]
    .iter()
    .map(|r| r.wire_id())
    .collect()
}
