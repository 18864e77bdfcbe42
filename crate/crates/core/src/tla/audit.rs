//! Finite-sample audits of the translation-like conditions.
//!
//! Coverage semantics: partial (table-backed) actions never fail a check
//! they cannot evaluate — triples with any undefined term are counted as
//! `uncovered`, not as violations.

use super::TranslationAction;
use crate::cayley::{build_ball, CayleyBall, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};
use crate::groups::{Element, GeneratorSymbol, MarkedGroup};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

/// A triple (h₁, h₂, x) witnessing a failed identity, in element JSON form.
#[derive(Clone, Debug, Serialize)]
pub struct TripleWitness {
    pub h1: Value,
    pub h2: Value,
    pub x: Value,
}

#[derive(Debug, Serialize)]
pub struct CocycleReport {
    pub action: String,
    pub h_radius: u32,
    pub g_radius: u32,
    pub checked: u64,
    pub uncovered: u64,
    /// True when only the trivial h₁ = h₂ = e instances were evaluable
    /// (a pass then says nothing about the action).
    pub vacuous: bool,
    pub violations: Vec<TripleWitness>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Serialize)]
pub struct FreenessReport {
    pub action: String,
    pub h_radius: u32,
    pub g_radius: u32,
    pub checked: u64,
    pub uncovered: u64,
    /// True when no nonidentity h was evaluable anywhere.
    pub vacuous: bool,
    pub violations: Vec<TripleWitness>,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// act(h, x) for every h in the ball, by dynamic programming over left
/// decompositions h = s·u: act(h, x) = s·act(u, x). Ball indices are in
/// BFS (level) order, so parents are always filled first.
fn act_table(
    action: &TranslationAction,
    h_ball: &CayleyBall,
    x: &Element,
) -> Vec<Option<Element>> {
    let mut table: Vec<Option<Element>> = Vec::with_capacity(h_ball.len());
    table.push(Some(x.clone()));
    for v in 1..h_ball.len() as u32 {
        let (s, u) = h_ball.left_decomposition(v).expect("nonidentity vertex");
        let val = table[u as usize]
            .as_ref()
            .and_then(|ux| action.apply_gen(s, ux));
        table.push(val);
    }
    table
}

/// Exhaustively checks c(h₁h₂, x) = c(h₁, h₂·x)·c(h₂, x) for all h₁, h₂
/// in the H-ball of `h_radius` and all x in `g_ball` where every term is
/// defined. After cancelling the common x, the identity is equivalent to
/// act(h₁h₂, x) = act(h₁, act(h₂, x)), which is what gets evaluated.
pub fn audit_cocycle_law(
    action: &TranslationAction,
    h_radius: u32,
    g_ball: &CayleyBall,
) -> Result<CocycleReport> {
    let h = action.acting_group();
    let ball2 = build_ball(h, 2 * h_radius, DEFAULT_VERTEX_CAP)?;
    let ball1 = build_ball(h, h_radius, DEFAULT_VERTEX_CAP)?;

    // position of each B_R element inside B_2R, and of each pairwise product
    let to2: Vec<u32> = (0..ball1.len() as u32)
        .map(|v| ball2.index_of(ball1.element(v)).expect("B_R inside B_2R"))
        .collect();
    let products: Vec<Vec<u32>> = (0..ball1.len() as u32)
        .map(|i| {
            (0..ball1.len() as u32)
                .map(|j| {
                    let p = h.multiply(ball1.element(i), ball1.element(j));
                    ball2.index_of(&p).expect("product of B_R elements is in B_2R")
                })
                .collect()
        })
        .collect();

    let per_x: Vec<(u64, u64, u64, Vec<(Element, Element, Element)>)> = g_ball
        .elements()
        .par_iter()
        .map(|x| {
            let acts2 = act_table(action, &ball2, x);
            let mut checked = 0u64;
            let mut nontrivial = 0u64;
            let mut uncovered = 0u64;
            let mut violations = Vec::new();
            for h2 in 0..ball1.len() as u32 {
                let Some(y) = &acts2[to2[h2 as usize] as usize] else {
                    uncovered += ball1.len() as u64;
                    continue;
                };
                let acts_y = act_table(action, &ball1, y);
                for h1 in 0..ball1.len() as u32 {
                    let lhs = &acts2[products[h1 as usize][h2 as usize] as usize];
                    let rhs = &acts_y[h1 as usize];
                    match (lhs, rhs) {
                        (Some(l), Some(r)) => {
                            checked += 1;
                            nontrivial += u64::from(h1 != 0 || h2 != 0);
                            if l != r {
                                violations.push((
                                    ball1.element(h1).clone(),
                                    ball1.element(h2).clone(),
                                    x.clone(),
                                ));
                            }
                        }
                        _ => uncovered += 1,
                    }
                }
            }
            (checked, nontrivial, uncovered, violations)
        })
        .collect();

    let mut checked = 0;
    let mut nontrivial = 0;
    let mut uncovered = 0;
    let mut raw: Vec<(Element, Element, Element)> = Vec::new();
    for (c, nt, u, v) in per_x {
        checked += c;
        nontrivial += nt;
        uncovered += u;
        raw.extend(v);
    }
    raw.sort();
    let violations = raw
        .into_iter()
        .map(|(h1, h2, x)| TripleWitness {
            h1: h.element_to_json(&h1),
            h2: h.element_to_json(&h2),
            x: action.base_group().element_to_json(&x),
        })
        .collect();

    Ok(CocycleReport {
        action: action.label().to_string(),
        h_radius,
        g_radius: g_ball.radius(),
        checked,
        uncovered,
        vacuous: nontrivial == 0,
        violations,
    })
}

/// For every x in the G-ball, checks that h ↦ c(h, x) is injective over
/// the H-ball (equivalently: the action has no nonidentity fixed point on
/// the sample). Witnesses are pairs h₁ ≠ h₂ with h₁·x = h₂·x.
pub fn audit_freeness(
    action: &TranslationAction,
    h_radius: u32,
    g_ball: &CayleyBall,
) -> Result<FreenessReport> {
    let h = action.acting_group();
    let ball = build_ball(h, h_radius, DEFAULT_VERTEX_CAP)?;

    let per_x: Vec<(u64, u64, u64, Vec<(Element, Element, Element)>)> = g_ball
        .elements()
        .par_iter()
        .map(|x| {
            let acts = act_table(action, &ball, x);
            let mut covered: Vec<(&Element, u32)> = acts
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.as_ref().map(|e| (e, i as u32)))
                .collect();
            let uncovered = (acts.len() - covered.len()) as u64;
            let nontrivial = (covered.len() - 1) as u64; // identity is always covered
            covered.sort();
            let mut violations = Vec::new();
            for w in covered.windows(2) {
                if w[0].0 == w[1].0 {
                    let (mut a, mut b) =
                        (ball.element(w[0].1).clone(), ball.element(w[1].1).clone());
                    if b < a {
                        std::mem::swap(&mut a, &mut b);
                    }
                    violations.push((a, b, x.clone()));
                }
            }
            (covered.len() as u64, nontrivial, uncovered, violations)
        })
        .collect();

    let mut checked = 0;
    let mut nontrivial = 0;
    let mut uncovered = 0;
    let mut raw: Vec<(Element, Element, Element)> = Vec::new();
    for (c, nt, u, v) in per_x {
        checked += c;
        nontrivial += nt;
        uncovered += u;
        raw.extend(v);
    }
    raw.sort();
    let violations = raw
        .into_iter()
        .map(|(h1, h2, x)| TripleWitness {
            h1: h.element_to_json(&h1),
            h2: h.element_to_json(&h2),
            x: action.base_group().element_to_json(&x),
        })
        .collect();

    Ok(FreenessReport {
        action: action.label().to_string(),
        h_radius,
        g_radius: g_ball.radius(),
        checked,
        uncovered,
        vacuous: nontrivial == 0,
        violations,
    })
}

/// Observed displacement maximum λ̂_h over a sample ball: a certified
/// lower bound for λ_h = sup_x ℓ_G(c(h, x)).
#[derive(Debug, Serialize)]
pub struct DisplacementReport {
    pub element: Value,
    pub lambda_hat: u64,
    pub samples: u64,
    pub uncovered: u64,
    /// Analytic bound when the action declares per-generator bounds
    /// (summed along h's geodesic word).
    pub declared: Option<u64>,
    pub within_declared: Option<bool>,
}

/// Word-length evaluator for displacement values: closed form when the
/// base group has one, otherwise one shared metric ball.
enum LengthOracle<'a> {
    Closed(&'a MarkedGroup),
    Ball { ball: CayleyBall, budget: u32 },
}

impl LengthOracle<'_> {
    fn new(g: &MarkedGroup, budget: u32) -> Result<LengthOracle<'_>> {
        if g.closed_form_length(&g.identity()).is_some() {
            Ok(LengthOracle::Closed(g))
        } else {
            Ok(LengthOracle::Ball { ball: build_ball(g, budget, DEFAULT_VERTEX_CAP)?, budget })
        }
    }

    fn length(&self, x: &Element, g: &MarkedGroup) -> Result<u64> {
        match self {
            LengthOracle::Closed(grp) => Ok(grp.closed_form_length(x).expect("closed form")),
            LengthOracle::Ball { ball, budget } => {
                ball.length_of(x).map(u64::from).ok_or_else(|| Error::EnlargeBall {
                    element: g.format_element(x),
                    budget: *budget,
                })
            }
        }
    }
}

/// λ̂ for a single element h, given a word for it.
fn measure_word_displacement(
    action: &TranslationAction,
    h_json: Value,
    word: &[GeneratorSymbol],
    g_ball: &CayleyBall,
    length_budget: u32,
) -> Result<DisplacementReport> {
    let g = action.base_group();
    let oracle = LengthOracle::new(g, length_budget)?;
    let mut lambda_hat = 0u64;
    let mut samples = 0u64;
    let mut uncovered = 0u64;
    for x in g_ball.elements() {
        match action.apply_word(word, x) {
            None => uncovered += 1,
            Some(hx) => {
                let c = g.multiply(&g.invert(&hx), x);
                lambda_hat = lambda_hat.max(oracle.length(&c, g)?);
                samples += 1;
            }
        }
    }
    let declared = word
        .iter()
        .map(|&s| action.declared_lambda(s))
        .try_fold(0u64, |acc, d| d.map(|d| acc + d));
    let within_declared = declared.map(|d| lambda_hat <= d);
    Ok(DisplacementReport {
        element: h_json,
        lambda_hat,
        samples,
        uncovered,
        declared,
        within_declared,
    })
}

/// λ̂_h = max over x in the ball of ℓ_G(c(h, x)); requires h in the H-ball.
pub fn measure_displacement(
    action: &TranslationAction,
    h_ball: &CayleyBall,
    h: &Element,
    g_ball: &CayleyBall,
    length_budget: u32,
) -> Result<DisplacementReport> {
    let idx = h_ball
        .index_of(h)
        .ok_or_else(|| Error::NotInBall(action.acting_group().format_element(h)))?;
    let word = h_ball.word_to(idx);
    measure_word_displacement(
        action,
        action.acting_group().element_to_json(h),
        &word,
        g_ball,
        length_budget,
    )
}

/// λ̂_s for every generator of S.
pub fn generator_displacements(
    action: &TranslationAction,
    g_ball: &CayleyBall,
    length_budget: u32,
) -> Result<Vec<(GeneratorSymbol, DisplacementReport)>> {
    action
        .acting_group()
        .generators()
        .iter()
        .map(|&s| {
            let h = action.acting_group().generator_element(s);
            let report = measure_word_displacement(
                action,
                action.acting_group().element_to_json(&h),
                &[s],
                g_ball,
                length_budget,
            )?;
            Ok((s, report))
        })
        .collect()
}
