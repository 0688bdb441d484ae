//! Case analysis that produces a connection set (or a refusal) for any
//! finite group, with every positive answer verified before return.
//!
//! Dispatch outline, in order:
//! 1. Orders 1 and 2 use the empty set.
//! 2. Generalized dihedral groups (beyond order 2) never admit an ORR.
//! 3. Odd orders go to the brute-force search, full-support candidates
//!    first, unless the group is C3 × C3 (the lone odd refusal).
//! 4. One generator: a single directed cycle.
//! 5. Two or three generators: scan for a generating pair or triple
//!    matching one of the explicit recipes below, each verified; the
//!    residual groups are recognized per isomorphism against the
//!    exception catalog.
//! 6. Four or more generators: search for an ordered chain and build
//!    the chain-based set; if no chain exists, fall back to the
//!    brute-force search and, where that is infeasible, report unknown.

use serde::Serialize;

use crate::aut::{verify_orr, VerifyReport, DEFAULT_NODE_BUDGET};
use crate::cayley::ConnectionSet;
use crate::error::{OrrError, Result};
use crate::genset::{find_ordered_chain, GenChain};
use crate::group::{Elem, GroupTable};
use crate::oracle::{
    brute_force_orr, count_oriented_sets, identify_exception, matches_exception, OracleAnswer,
    OracleTranscript, DEFAULT_CANDIDATE_BUDGET,
};

/// Which explicit construction produced a connection set. The names are
/// stable wire identifiers.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recipe {
    /// Trivial cases: order ≤ 2 (empty set) or a one-generator group
    /// (single directed cycle).
    D0_D1,
    /// Pair with |a| > 4 whose products with b square to 1: {a, a², b}.
    L32_a,
    /// Mirror of `L32_a` with |b| > 4: {a, b, b²}.
    L32_b,
    /// Non-commuting pair with |a|, |b|, |ba⁻¹| > 2: {a, b, ba⁻¹}.
    L33_nonab,
    /// Abelian pair recipes: {a, a², b} and its variants, or the
    /// four-element set for C4 × C4.
    L33_ab,
    /// Abelian triple: {a, b, c, ba⁻¹} plus a tail element.
    L42_S,
    /// Abelian triple fallback with both ratios included.
    L42_Sprime,
    /// Triple with one non-commuting pair: {a, b, c, ba⁻¹}.
    L44,
    /// Triple with a central-ish b: {a, b, c, ca⁻¹} or the six-element
    /// variant when ⟨a, c⟩ is quaternion.
    L45,
    /// Commuting outer pair, |b| > 4: {a, c, cb⁻², b, b²}.
    L46_i,
    /// Commuting outer pair, |a| > 4: {a, a², c, ca⁻², b}.
    L46_ii,
    /// Commuting outer pair, |c| > 4: {a, c, c², ac⁻², b}.
    L46_iii,
    /// Quaternion ⟨a, b⟩ with c commuting with b: {a, b, c⁻¹, ba⁻¹, bc⁻¹}.
    L47,
    /// Two quaternion overlaps: {a, b, c, ab}.
    L48,
    /// Chain set T ∪ X (elements plus consecutive ratios).
    CHAIN_S,
    /// Chain set with the extra product b₁b₂.
    CHAIN_Sprime,
    /// Chain set with b₁ replaced by b₁⁻¹.
    CHAIN_Sdoubleprime,
    /// Found by the brute-force search.
    ORACLE_FOUND,
}

impl Recipe {
    pub fn wire_id(self) -> &'static str {
        match self {
            Recipe::D0_D1 => "D0_D1",
            Recipe::L32_a => "L32_a",
            Recipe::L32_b => "L32_b",
            Recipe::L33_nonab => "L33_nonab",
            Recipe::L33_ab => "L33_ab",
            Recipe::L42_S => "L42_S",
            Recipe::L42_Sprime => "L42_Sprime",
            Recipe::L44 => "L44",
            Recipe::L45 => "L45",
            Recipe::L46_i => "L46_i",
            Recipe::L46_ii => "L46_ii",
            Recipe::L46_iii => "L46_iii",
            Recipe::L47 => "L47",
            Recipe::L48 => "L48",
            Recipe::CHAIN_S => "CHAIN_S",
            Recipe::CHAIN_Sprime => "CHAIN_Sprime",
            Recipe::CHAIN_Sdoubleprime => "CHAIN_Sdoubleprime",
            Recipe::ORACLE_FOUND => "ORACLE_FOUND",
        }
    }
}

/// Final answer for one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Answer {
    #[serde(rename = "ORR")]
    Orr,
    #[serde(rename = "NO_ORR")]
    NoOrr,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// Knobs for `construct`.
#[derive(Debug, Clone)]
pub struct ConstructOptions {
    /// Allow settling the stabilizer via an asymmetric induced
    /// subdigraph on S instead of the full search.
    pub allow_fast_path: bool,
    /// Node budget per automorphism search.
    pub node_budget: u64,
    /// Candidate budget for the brute-force search.
    pub candidate_budget: u64,
    /// Seed for sampled searches.
    pub seed: u64,
    /// Node budget for the ordered-chain search.
    pub chain_budget: u64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            allow_fast_path: true,
            node_budget: DEFAULT_NODE_BUDGET,
            candidate_budget: DEFAULT_CANDIDATE_BUDGET,
            seed: 0,
            chain_budget: 1_000_000,
        }
    }
}

/// Outcome of `construct`.
#[derive(Debug)]
pub struct Construction {
    pub answer: Answer,
    /// Wire identifier of the recipe, or "exception:<tag>" for
    /// refusals, or "oracle:sampled" when nothing was concluded.
    pub method: String,
    pub recipe: Option<Recipe>,
    pub set: Option<ConnectionSet>,
    pub verify: Option<VerifyReport>,
    /// For refusals: the theorem tag or the enumeration digest.
    pub reason: Option<String>,
    pub oracle: Option<OracleTranscript>,
    /// Free-form notes (conjectured exceptions, budget exhaustion).
    pub annotations: Vec<String>,
    /// The chain behind a chain-based set.
    pub chain: Option<GenChain>,
}

impl Construction {
    fn orr(recipe: Recipe, set: ConnectionSet, verify: VerifyReport) -> Construction {
        Construction {
            answer: Answer::Orr,
            method: recipe.wire_id().to_string(),
            recipe: Some(recipe),
            set: Some(set),
            verify: Some(verify),
            reason: None,
            oracle: None,
            annotations: Vec::new(),
            chain: None,
        }
    }

    fn no_orr(method: String, reason: String) -> Construction {
        Construction {
            answer: Answer::NoOrr,
            method,
            recipe: None,
            set: None,
            verify: None,
            reason: Some(reason),
            oracle: None,
            annotations: Vec::new(),
            chain: None,
        }
    }
}

/// Builds a connection set for the group, or recognizes the group as
/// one of the refusals, or reports unknown when neither is feasible.
pub fn construct(group: &GroupTable, opts: &ConstructOptions) -> Result<Construction> {
    let n = group.order();
    if n <= 2 {
        let set = ConnectionSet::new(group, &[])?;
        let verify = verify_orr(group, &set, opts.allow_fast_path, opts.node_budget)?;
        debug_assert!(verify.is_orr);
        return Ok(Construction::orr(Recipe::D0_D1, set, verify));
    }
    if group.generalized_dihedral_witness().is_some() {
        return Ok(Construction::no_orr(
            "exception:generalized_dihedral".into(),
            "theorem:generalized_dihedral".into(),
        ));
    }
    if n % 2 == 1 {
        if matches_exception(group, "c3xc3") {
            return Ok(Construction::no_orr(
                "exception:c3xc3".into(),
                "theorem:catalog:c3xc3".into(),
            ));
        }
        return oracle_fallback(group, opts, Vec::new());
    }
    let (d, gens) = group.min_gen_size();
    match d {
        1 => {
            let a = gens[0];
            debug_assert!(group.elem_order(a) == n && n > 2);
            let set = ConnectionSet::new(group, &[a])?;
            let verify = must_verify(group, &set, opts, "single directed cycle")?;
            Ok(Construction::orr(Recipe::D0_D1, set, verify))
        }
        2 => construct_two_generated(group, opts),
        3 => construct_three_generated(group, opts),
        _ => construct_via_chain(group, opts),
    }
}

/// Verification that is guaranteed to succeed by the construction's
/// correctness argument; failure is a bug, not a property of the group.
fn must_verify(
    group: &GroupTable,
    set: &ConnectionSet,
    opts: &ConstructOptions,
    what: &str,
) -> Result<VerifyReport> {
    let verify = verify_orr(group, set, opts.allow_fast_path, opts.node_budget)?;
    if !verify.is_orr {
        return Err(OrrError::VerificationFailed(format!(
            "{what} produced {:?} which is not an ORR set",
            set.elems()
        )));
    }
    Ok(verify)
}

fn build_set(group: &GroupTable, elems: &[Elem], what: &str) -> Result<ConnectionSet> {
    ConnectionSet::new(group, elems).map_err(|e| {
        OrrError::VerificationFailed(format!("{what} produced an invalid set {elems:?}: {e}"))
    })
}

/// Two-generated groups: pair scans in recipe order.
fn construct_two_generated(group: &GroupTable, opts: &ConstructOptions) -> Result<Construction> {
    let g = group;
    let n = g.order();
    let ord: Vec<usize> = g.elements().map(|x| g.elem_order(x)).collect();

    if g.is_abelian() {
        // A generating pair with |a| > 4 and |b| > 2 gives {a, a², b},
        // flipping a to a⁻¹ when a² = b². Ordered scan also covers the
        // case with the roles of a and b swapped.
        for a in g.elements() {
            if ord[a as usize] <= 4 {
                continue;
            }
            for b in g.elements() {
                if b == a || ord[b as usize] <= 2 || !g.generates(&[a, b]) {
                    continue;
                }
                let (x, x2) = if g.mul(a, a) == g.mul(b, b) {
                    (g.inv(a), g.inv(g.mul(a, a)))
                } else {
                    (a, g.mul(a, a))
                };
                let set = build_set(g, &[x, x2, b], "abelian pair recipe")?;
                let verify = must_verify(g, &set, opts, "abelian pair recipe")?;
                return Ok(Construction::orr(Recipe::L33_ab, set, verify));
            }
        }
        // All generating pairs have orders in {3, 4}: the group is one
        // of C3 × C3, C4 × C2, C4 × C4.
        for tag in ["c3xc3", "c4xc2"] {
            if matches_exception(g, tag) {
                return Ok(Construction::no_orr(
                    format!("exception:{tag}"),
                    format!("theorem:catalog:{tag}"),
                ));
            }
        }
        for a in g.elements() {
            if ord[a as usize] != 4 {
                continue;
            }
            for b in g.elements() {
                if b == a || ord[b as usize] != 4 || !g.generates(&[a, b]) {
                    continue;
                }
                let ab = g.mul(a, b);
                let a2b = g.mul(g.mul(a, a), b);
                let a3b = g.mul(g.power(a, 3), b);
                let set = build_set(g, &[a, ab, a2b, a3b], "order-16 abelian recipe")?;
                let verify = must_verify(g, &set, opts, "order-16 abelian recipe")?;
                return Ok(Construction::orr(Recipe::L33_ab, set, verify));
            }
        }
        return oracle_fallback(group, opts, vec!["abelian pair scan found no recipe".into()]);
    }

    // Non-commuting pair with all of |a|, |b|, |ba⁻¹| > 2: the set
    // {a, b, ba⁻¹} works for every group except the quaternion group.
    for a in g.elements() {
        if ord[a as usize] <= 2 {
            continue;
        }
        for b in g.elements() {
            if b == a || ord[b as usize] <= 2 {
                continue;
            }
            let r = g.mul(b, g.inv(a));
            if ord[r as usize] <= 2 || !g.generates(&[a, b]) {
                continue;
            }
            let set = build_set(g, &[a, b, r], "pair-with-ratio recipe")?;
            let verify = verify_orr(g, &set, opts.allow_fast_path, opts.node_budget)?;
            if verify.is_orr {
                return Ok(Construction::orr(Recipe::L33_nonab, set, verify));
            }
            if matches_exception(g, "q8") {
                return Ok(Construction::no_orr(
                    "exception:q8".into(),
                    "theorem:catalog:q8".into(),
                ));
            }
            return Err(OrrError::VerificationFailed(format!(
                "pair-with-ratio recipe failed on a group of order {n} that is not quaternion"
            )));
        }
    }

    // Every qualifying pair has |ba| = |ba⁻¹| = 2: recipes with a high
    // power of one generator.
    for a in g.elements() {
        if ord[a as usize] <= 2 {
            continue;
        }
        for b in g.elements() {
            if b == a
                || ord[b as usize] <= 2
                || ord[g.mul(b, a) as usize] > 2
                || ord[g.mul(b, g.inv(a)) as usize] > 2
                || !g.generates(&[a, b])
            {
                continue;
            }
            if ord[a as usize] > 4 {
                let set = build_set(g, &[a, g.mul(a, a), b], "flipping pair recipe")?;
                let verify = must_verify(g, &set, opts, "flipping pair recipe")?;
                return Ok(Construction::orr(Recipe::L32_a, set, verify));
            }
            if ord[b as usize] > 4 {
                let set = build_set(g, &[a, b, g.mul(b, b)], "flipping pair recipe")?;
                let verify = must_verify(g, &set, opts, "flipping pair recipe")?;
                return Ok(Construction::orr(Recipe::L32_b, set, verify));
            }
            // Both orders are 4: the order-16 exception presentation.
            if matches_exception(g, "ex16a") {
                return Ok(Construction::no_orr(
                    "exception:ex16a".into(),
                    "theorem:catalog:ex16a".into(),
                ));
            }
            return oracle_fallback(
                group,
                opts,
                vec!["flipping pair with both orders 4 on an unrecognized group".into()],
            );
        }
    }
    oracle_fallback(group, opts, vec!["pair scan found no recipe".into()])
}

/// Three-generated groups: triple scans in recipe order.
fn construct_three_generated(group: &GroupTable, opts: &ConstructOptions) -> Result<Construction> {
    let g = group;
    let ord: Vec<usize> = g.elements().map(|x| g.elem_order(x)).collect();
    let big = |x: Elem| ord[x as usize] > 2;

    if g.is_abelian() {
        // Triple with both consecutive ratios of order > 2.
        if let Some((a, b, c)) = scan_triples(g, &ord, |a, b, c| {
            big(g.mul(b, g.inv(a))) && big(g.mul(c, g.inv(b)))
        }) {
            return abelian_triple_ladder(g, opts, a, b, c);
        }
        // Triple whose middle element pairs to involutions both ways.
        if let Some((a, b, c)) = scan_triples(g, &ord, |a, b, c| {
            !big(g.mul(b, a))
                && !big(g.mul(b, g.inv(a)))
                && !big(g.mul(b, c))
                && !big(g.mul(b, g.inv(c)))
                && big(g.mul(c, g.inv(a)))
        }) {
            return commuting_outer_ladder(g, opts, a, b, c);
        }
        // Residual: every product of two generators squares to 1.
        if matches_exception(g, "c4xc2p2") {
            return Ok(Construction::no_orr(
                "exception:c4xc2p2".into(),
                "theorem:catalog:c4xc2p2".into(),
            ));
        }
        return oracle_fallback(group, opts, vec!["abelian triple scan found no recipe".into()]);
    }

    // Triple with both ratios big and a non-commuting leading pair.
    if let Some((a, b, c)) = scan_triples(g, &ord, |a, b, c| {
        big(g.mul(b, g.inv(a))) && big(g.mul(c, g.inv(b))) && !g.commutes(a, b)
    }) {
        let set = build_set(g, &[a, b, c, g.mul(b, g.inv(a))], "triple-with-ratio recipe")?;
        let verify = verify_orr(g, &set, opts.allow_fast_path, opts.node_budget)?;
        if verify.is_orr {
            return Ok(Construction::orr(Recipe::L44, set, verify));
        }
        // ⟨a, b⟩ is quaternion; route on whether b and c commute.
        if g.commutes(b, c) {
            let elems = [a, b, g.inv(c), g.mul(b, g.inv(a)), g.mul(b, g.inv(c))];
            let set = build_set(g, &elems, "quaternion-avoiding recipe")?;
            let verify = must_verify(g, &set, opts, "quaternion-avoiding recipe")?;
            return Ok(Construction::orr(Recipe::L47, set, verify));
        }
        let set = build_set(g, &[c, b, a, g.mul(b, g.inv(c))], "reversed triple recipe")?;
        let verify = verify_orr(g, &set, opts.allow_fast_path, opts.node_budget)?;
        if verify.is_orr {
            return Ok(Construction::orr(Recipe::L44, set, verify));
        }
        // Both ⟨a, b⟩ and ⟨c, b⟩ quaternion: the four-element set whose
        // induced subdigraph is a triangle plus an isolated vertex, so
        // only the full search settles it.
        let set = build_set(g, &[a, b, c, g.mul(a, b)], "double-quaternion recipe")?;
        let verify = must_verify(g, &set, opts, "double-quaternion recipe")?;
        return Ok(Construction::orr(Recipe::L48, set, verify));
    }

    // Triple whose middle element pairs to involutions both ways.
    if let Some((a, b, c)) = scan_triples(g, &ord, |a, b, c| {
        !big(g.mul(b, a))
            && !big(g.mul(b, g.inv(a)))
            && !big(g.mul(b, c))
            && !big(g.mul(b, g.inv(c)))
            && big(g.mul(c, g.inv(a)))
    }) {
        if g.commutes(a, c) {
            return commuting_outer_ladder(g, opts, a, b, c);
        }
        let set = build_set(g, &[a, b, c, g.mul(c, g.inv(a))], "outer-ratio recipe")?;
        let verify = verify_orr(g, &set, opts.allow_fast_path, opts.node_budget)?;
        if verify.is_orr {
            return Ok(Construction::orr(Recipe::L45, set, verify));
        }
        // ⟨a, c⟩ is quaternion.
        if ord[b as usize] > 4 {
            let b2 = g.mul(b, b);
            let elems = [a, c, g.mul(c, g.inv(a)), b, b2, g.mul(b2, a)];
            let set = build_set(g, &elems, "quaternion-pair recipe")?;
            let verify = must_verify(g, &set, opts, "quaternion-pair recipe")?;
            return Ok(Construction::orr(Recipe::L45, set, verify));
        }
        if matches_exception(g, "ex16b") {
            return Ok(Construction::no_orr(
                "exception:ex16b".into(),
                "theorem:catalog:ex16b".into(),
            ));
        }
        return oracle_fallback(
            group,
            opts,
            vec!["outer-ratio residual on an unrecognized group".into()],
        );
    }

    // Residual: every product of two generators squares to 1.
    if matches_exception(g, "ex32") {
        return Ok(Construction::no_orr(
            "exception:ex32".into(),
            "theorem:catalog:ex32".into(),
        ));
    }
    oracle_fallback(group, opts, vec!["triple scan found no recipe".into()])
}

/// First generating triple of non-involutions, in lexicographic order,
/// satisfying `extra`.
fn scan_triples<F: Fn(Elem, Elem, Elem) -> bool>(
    g: &GroupTable,
    ord: &[usize],
    extra: F,
) -> Option<(Elem, Elem, Elem)> {
    for a in g.elements() {
        if ord[a as usize] <= 2 {
            continue;
        }
        for b in g.elements() {
            if b == a || ord[b as usize] <= 2 {
                continue;
            }
            for c in g.elements() {
                if c == a || c == b || ord[c as usize] <= 2 {
                    continue;
                }
                if extra(a, b, c) && g.generates(&[a, b, c]) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Abelian triple with both ratios big: base set plus a tail chosen by
/// the order of the leading generator.
fn abelian_triple_ladder(
    g: &GroupTable,
    opts: &ConstructOptions,
    a: Elem,
    b: Elem,
    c: Elem,
) -> Result<Construction> {
    // Work on (a, b, c) when |ab| > 2, on the reversed triple when
    // |cb| > 2; otherwise the orders force the high-power tail.
    let try_ladder =
        |g: &GroupTable, a: Elem, b: Elem, c: Elem| -> Result<Option<Construction>> {
            let ab = g.mul(a, b);
            if g.elem_order(ab) <= 2 {
                return Ok(None);
            }
            let ba = g.mul(b, g.inv(a));
            let primary = [a, b, c, ba, ab];
            let set = build_set(g, &primary, "abelian triple recipe")?;
            let verify = verify_orr(g, &set, opts.allow_fast_path, opts.node_budget)?;
            if verify.is_orr {
                return Ok(Some(Construction::orr(Recipe::L42_S, set, verify)));
            }
            let cb = g.mul(c, g.inv(b));
            let fallback = [a, b, c, ba, cb, ab];
            let set = build_set(g, &fallback, "abelian triple fallback")?;
            let verify = must_verify(g, &set, opts, "abelian triple fallback")?;
            Ok(Some(Construction::orr(Recipe::L42_Sprime, set, verify)))
        };
    if let Some(done) = try_ladder(g, a, b, c)? {
        return Ok(done);
    }
    if let Some(done) = try_ladder(g, c, b, a)? {
        return Ok(done);
    }
    // Here a² = b⁻² = c², so a's order is at least 6 and decides.
    debug_assert_eq!(g.mul(a, a), g.inv(g.mul(b, b)));
    debug_assert_eq!(g.mul(a, a), g.mul(c, c));
    let oa = g.elem_order(a);
    if oa > 8 {
        let elems = [a, b, c, g.mul(b, g.inv(a)), g.inv(g.power(a, 4))];
        let set = build_set(g, &elems, "abelian high-order recipe")?;
        let verify = must_verify(g, &set, opts, "abelian high-order recipe")?;
        return Ok(Construction::orr(Recipe::L42_S, set, verify));
    }
    if oa == 6 && matches_exception(g, "c3xc2p3") {
        return Ok(Construction::no_orr(
            "exception:c3xc2p3".into(),
            "theorem:catalog:c3xc2p3".into(),
        ));
    }
    if oa == 8 {
        let a3 = g.power(a, 3);
        let elems = [a, a3, g.mul(a3, b), g.mul(g.mul(a, b), c)];
        let set = build_set(g, &elems, "order-32 abelian recipe")?;
        let verify = must_verify(g, &set, opts, "order-32 abelian recipe")?;
        return Ok(Construction::orr(Recipe::L42_S, set, verify));
    }
    oracle_fallback(
        g,
        opts,
        vec![format!("abelian triple ladder fell through with |a| = {oa}")],
    )
}

/// Triple with commuting outer pair and involution products around b:
/// one of three sets keyed by which generator has order > 4.
fn commuting_outer_ladder(
    g: &GroupTable,
    opts: &ConstructOptions,
    a: Elem,
    b: Elem,
    c: Elem,
) -> Result<Construction> {
    let (oa, ob, oc) = (
        g.elem_order(a),
        g.elem_order(b),
        g.elem_order(c),
    );
    if ob > 4 {
        let elems = [a, c, g.mul(c, g.inv(g.mul(b, b))), b, g.mul(b, b)];
        let set = build_set(g, &elems, "commuting outer recipe")?;
        let verify = must_verify(g, &set, opts, "commuting outer recipe")?;
        return Ok(Construction::orr(Recipe::L46_i, set, verify));
    }
    if oa > 4 {
        let ca2 = g.mul(c, g.inv(g.mul(a, a)));
        if g.elem_order(ca2) > 2 {
            let elems = [a, g.mul(a, a), c, ca2, b];
            let set = build_set(g, &elems, "commuting outer recipe")?;
            let verify = must_verify(g, &set, opts, "commuting outer recipe")?;
            return Ok(Construction::orr(Recipe::L46_ii, set, verify));
        }
    }
    if oc > 4 {
        let ac2 = g.mul(a, g.inv(g.mul(c, c)));
        if g.elem_order(ac2) > 2 {
            let elems = [a, c, g.mul(c, c), ac2, b];
            let set = build_set(g, &elems, "commuting outer recipe")?;
            let verify = must_verify(g, &set, opts, "commuting outer recipe")?;
            return Ok(Construction::orr(Recipe::L46_iii, set, verify));
        }
    }
    // All three orders are 4 (or the shifted elements degenerate); the
    // groups here are small and always admit an ORR, found by search.
    oracle_fallback(
        g,
        opts,
        vec!["commuting outer ladder deferred to search".into()],
    )
}

/// Four or more generators: ordered chain, then the chain sets.
fn construct_via_chain(group: &GroupTable, opts: &ConstructOptions) -> Result<Construction> {
    let search = find_ordered_chain(group, opts.chain_budget);
    match search.chain {
        Some(chain) => {
            let (elems, recipe) = chain_connection_elems(group, &chain)?;
            let set = build_set(group, &elems, "chain recipe")?;
            let verify = must_verify(group, &set, opts, "chain recipe")?;
            let mut done = Construction::orr(recipe, set, verify);
            done.chain = Some(chain);
            Ok(done)
        }
        None => {
            let note = if search.exhausted {
                "no ordered chain exists".to_string()
            } else {
                format!("chain search stopped at {} nodes", search.nodes)
            };
            oracle_fallback(group, opts, vec![note])
        }
    }
}

/// The chain-based connection set: all chain elements, all consecutive
/// ratios, and a corrective tail when the first two elements commute.
pub fn chain_connection_elems(
    group: &GroupTable,
    chain: &GenChain,
) -> Result<(Vec<Elem>, Recipe)> {
    let b = &chain.elems;
    if b.len() < 4 {
        return Err(OrrError::ChainTooShort {
            found: b.len(),
            need: 4,
        });
    }
    let mut elems = b.clone();
    elems.extend(chain.ratios(group));
    let (b1, b2) = (b[0], b[1]);
    if !group.commutes(b1, b2) {
        return Ok((elems, Recipe::CHAIN_S));
    }
    let prod = group.mul(b1, b2);
    if group.elem_order(prod) > 2 {
        elems.push(prod);
        return Ok((elems, Recipe::CHAIN_Sprime));
    }
    // b₁b₂ is an involution: swap b₁ for its inverse. The ratio b₂b₁⁻¹
    // stays; the pair {b₁⁻¹, b₂b₁⁻¹} plays the corrective role.
    let mut swapped: Vec<Elem> = elems
        .iter()
        .map(|&x| if x == b1 { group.inv(b1) } else { x })
        .collect();
    swapped.dedup();
    Ok((swapped, Recipe::CHAIN_Sdoubleprime))
}

/// On groups matching a cataloged exception, sampling can only succeed
/// by disproving the catalog; a short attempt is enough before
/// reporting unknown. Full-budget sampling would pay a complete
/// stabilizer search per draw, since the subdigraph shortcut never
/// certifies a set on a group without an ORR.
const CONJECTURE_DISPROOF_DRAWS: u64 = 500;

/// Brute-force fallback, annotating conjectured exceptions.
fn oracle_fallback(
    group: &GroupTable,
    opts: &ConstructOptions,
    mut annotations: Vec<String>,
) -> Result<Construction> {
    let mut budget = opts.candidate_budget;
    if count_oriented_sets(group) > budget as u128 && identify_exception(group).is_some() {
        budget = budget.min(CONJECTURE_DISPROOF_DRAWS);
    }
    let out = brute_force_orr(group, budget, opts.seed)?;
    let transcript = out.transcript;
    match out.answer {
        OracleAnswer::Found(elems) => {
            let set = ConnectionSet::new(group, &elems)?;
            let verify = must_verify(group, &set, opts, "search result")?;
            let mut done = Construction::orr(Recipe::ORACLE_FOUND, set, verify);
            done.oracle = Some(transcript);
            done.annotations = annotations;
            Ok(done)
        }
        OracleAnswer::DefinitelyNone => {
            let (method, reason) = match identify_exception(group) {
                Some(entry) if entry.theorem_backed => (
                    format!("exception:{}", entry.tag),
                    format!("theorem:catalog:{}; search: {}", entry.tag, transcript.digest()),
                ),
                Some(entry) => (
                    format!("exception:{}", entry.tag),
                    format!(
                        "conjectured exception {}, computationally confirmed: {}",
                        entry.tag,
                        transcript.digest()
                    ),
                ),
                None => ("oracle:exhaustive".to_string(), transcript.digest()),
            };
            let mut done = Construction::no_orr(method, reason);
            done.oracle = Some(transcript);
            done.annotations = annotations;
            Ok(done)
        }
        OracleAnswer::Unknown => {
            if let Some(entry) = identify_exception(group) {
                annotations.push(format!(
                    "matches conjectured exception {}; enumeration infeasible at {} candidates",
                    entry.tag, transcript.candidates_total
                ));
            }
            Ok(Construction {
                answer: Answer::Unknown,
                method: "oracle:sampled".into(),
                recipe: None,
                set: None,
                verify: None,
                reason: None,
                oracle: Some(transcript),
                annotations,
                chain: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::load_fixture;

    fn run(file: &str) -> Construction {
        let (_, g) = load_fixture(file);
        construct(&g, &ConstructOptions::default()).unwrap()
    }

    #[test]
    fn trivial_and_cyclic_groups() {
        for file in ["order_le16/c1.json", "order_le16/c2.json"] {
            let c = run(file);
            assert_eq!(c.answer, Answer::Orr);
            assert_eq!(c.method, "D0_D1");
            assert!(c.set.unwrap().is_empty());
        }
        let c = run("order_le16/c4.json");
        assert_eq!(c.answer, Answer::Orr);
        assert_eq!(c.method, "D0_D1");
        assert_eq!(c.set.unwrap().elems(), &[1]);
    }

    #[test]
    fn dihedral_groups_are_refused() {
        for file in [
            "order_le16/dih8.json",
            "order_le16/dih16.json",
            "order_le16/c2xc2.json",
            "order_le16/c2p4.json",
        ] {
            let c = run(file);
            assert_eq!(c.answer, Answer::NoOrr, "{file}");
            assert_eq!(c.method, "exception:generalized_dihedral");
        }
    }

    #[test]
    fn odd_orders_use_the_search() {
        let c = run("order_le16/c3xc3.json");
        assert_eq!(c.answer, Answer::NoOrr);
        assert_eq!(c.method, "exception:c3xc3");
        let c = run("odd_le27/he27.json");
        assert_eq!(c.answer, Answer::Orr);
        assert_eq!(c.method, "ORACLE_FOUND");
        assert!(c.verify.unwrap().is_orr);
    }

    #[test]
    fn known_exceptions_are_refused() {
        for (file, tag) in [
            ("order_le16/q8.json", "q8"),
            ("order_le16/c4xc2.json", "c4xc2"),
            ("order_le16/c4xc2p2.json", "c4xc2p2"),
            ("order_le16/c2c2_by_c4.json", "ex16a"),
            ("order_le16/pauli16.json", "ex16b"),
            ("exceptions/ex32.json", "ex32"),
            ("exceptions/c3xc2p3.json", "c3xc2p3"),
        ] {
            let c = run(file);
            assert_eq!(c.answer, Answer::NoOrr, "{file}");
            assert_eq!(c.method, format!("exception:{tag}"), "{file}");
            assert!(c.reason.unwrap().starts_with("theorem:catalog:"), "{file}");
        }
    }

    #[test]
    fn conjectured_exceptions_are_confirmed_by_search() {
        let c = run("exceptions/c4xc2p3.json");
        assert_eq!(c.answer, Answer::NoOrr);
        assert_eq!(c.method, "exception:c4xc2p3");
        assert!(c.reason.unwrap().starts_with("conjectured exception"));
        let c = run("exceptions/es32p.json");
        assert_eq!(c.answer, Answer::NoOrr);
        assert_eq!(c.method, "exception:es32p");
        let t = c.oracle.unwrap();
        assert!(t.exhaustive);
        assert_eq!(t.candidates_total, 729);
    }

    #[test]
    fn infeasible_conjecture_reports_unknown() {
        let c = run("exceptions/c4xc2p4.json");
        assert_eq!(c.answer, Answer::Unknown);
        assert_eq!(c.method, "oracle:sampled");
        assert!(c
            .annotations
            .iter()
            .any(|a| a.contains("conjectured exception c4xc2p4")));
    }

    #[test]
    fn recipes_cover_the_small_catalog() {
        // One representative per pair-recipe family reachable at low
        // order; every answer set is re-verified by `construct`.
        for (file, method) in [
            ("order_le16/q16.json", "L33_nonab"),
            ("order_le16/sd16.json", "L32_a"),
            ("order_le16/mod16.json", "L33_nonab"),
            ("order_le16/c4xc4.json", "L33_ab"),
            ("order_le16/c8xc2.json", "L33_ab"),
        ] {
            let c = run(file);
            assert_eq!(c.answer, Answer::Orr, "{file}");
            assert_eq!(c.method, method, "{file}");
            assert!(c.verify.unwrap().is_orr);
        }
    }

    #[test]
    fn chain_groups_get_chain_sets() {
        // C4 × C4 × C2 × C2 needs four generators, is not generalized
        // dihedral, and carries an ordered chain (for example the two
        // order-4 basis vectors and two mixed elements), so the chain
        // recipe applies. The first two chain elements commute and
        // their product has order 4, so the variant with the extra
        // product is selected.
        let (_, c4xc4) = load_fixture("order_le16/c4xc4.json");
        let (_, c2xc2) = load_fixture("order_le16/c2xc2.json");
        let g = crate::testutil::direct_product(&c4xc4, &c2xc2);
        assert_eq!(g.min_gen_size().0, 4);
        let c = construct(&g, &ConstructOptions::default()).unwrap();
        assert_eq!(c.answer, Answer::Orr);
        assert_eq!(c.method, "CHAIN_Sprime");
        assert!(c.verify.unwrap().is_orr);
        let chain = c.chain.unwrap();
        assert_eq!(chain.len(), 4);
        let set = c.set.unwrap();
        for &x in &chain.elems {
            assert!(set.contains(x));
        }
    }

    #[test]
    fn short_chains_are_rejected() {
        let (_, g) = load_fixture("order_le16/c4xc4.json");
        let short = GenChain { elems: vec![1, 2] };
        assert!(matches!(
            chain_connection_elems(&g, &short),
            Err(OrrError::ChainTooShort { .. })
        ));
    }

    #[test]
    fn nonsolvable_groups_get_verified_sets() {
        let c = run("nonsolvable/alt5.json");
        assert_eq!(c.answer, Answer::Orr);
        assert!(c.verify.unwrap().is_orr);
        assert_eq!(c.method, "L33_nonab");
    }
}
