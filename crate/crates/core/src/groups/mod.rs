//! Marked groups: exact arithmetic and canonical forms for the built-in
//! finitely generated groups, together with the word-length contract the
//! rest of the crate consumes.
//!
//! Built-ins and their standard symmetric generating sets:
//! - `zd:<d>`  — free abelian Z^d, T = {±e₁, …, ±e_d}
//! - `free:<k>` — free group F_k, T = {a_i^{±1}}
//! - `lamplighter` — (Z/2Z) ≀ Z, T = {t, t⁻¹, a} with a² = e
//! - `bs1n:<n>` — Baumslag–Solitar BS(1, n) = ⟨s, t | s t s⁻¹ = tⁿ⟩,
//!   T = {t, t⁻¹, s, s⁻¹}, elements stored as affine maps x ↦ nᵏx + q

mod affine;
mod lamp;
mod word;

pub use affine::Affine;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;

/// One member of the symmetric generating set T, by position.
///
/// `inverse_index` is an involution on 0..#T; a self-inverse generator pairs
/// with itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub index: u16,
    pub inverse_index: u16,
}

impl GeneratorSymbol {
    pub fn is_self_inverse(self) -> bool {
        self.index == self.inverse_index
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    FreeAbelian(usize),
    Free(usize),
    Lamplighter,
    /// BS(1, n) with n ≥ 2.
    BaumslagSolitar(u64),
}

/// Canonical normal form of a group element. Equal elements compare
/// bit-identical, so `Eq`/`Hash`/`Ord` are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Z^d: coordinate vector.
    Abelian(Vec<i64>),
    /// Free group: reduced word of generator indices (2i = letter, 2i+1 = inverse).
    Word(Vec<u16>),
    /// Lamplighter: sorted lit-lamp positions and cursor offset.
    Lamp { lamps: Vec<i64>, pos: i64 },
    /// BS(1, n): normalized affine map.
    Affine(Affine),
}

/// A group with a fixed marking. Immutable after construction; all
/// operations are pure, so instances are freely shareable across threads.
#[derive(Clone, Debug)]
pub struct MarkedGroup {
    kind: GroupKind,
    gens: Vec<GeneratorSymbol>,
    names: Vec<String>,
}

pub fn make_group(kind: GroupKind) -> Result<MarkedGroup> {
    let (gens, names) = match kind {
        GroupKind::FreeAbelian(d) => {
            if d == 0 {
                return Err(Error::Parameter("zd requires d >= 1".into()));
            }
            paired_marking((0..d).map(|i| (format!("+e{}", i + 1), format!("-e{}", i + 1))))
        }
        GroupKind::Free(k) => {
            if k == 0 {
                return Err(Error::Parameter("free requires k >= 1".into()));
            }
            paired_marking((0..k).map(|i| {
                if k <= 26 {
                    let c = (b'a' + i as u8) as char;
                    (c.to_string(), c.to_ascii_uppercase().to_string())
                } else {
                    (format!("g{}", i + 1), format!("G{}", i + 1))
                }
            }))
        }
        GroupKind::Lamplighter => {
            let gens = vec![
                GeneratorSymbol { index: 0, inverse_index: 1 },
                GeneratorSymbol { index: 1, inverse_index: 0 },
                GeneratorSymbol { index: 2, inverse_index: 2 },
            ];
            (gens, vec!["t".into(), "T".into(), "a".into()])
        }
        GroupKind::BaumslagSolitar(n) => {
            if n <= 1 {
                return Err(Error::Parameter("bs1n requires n >= 2".into()));
            }
            paired_marking([("t".to_string(), "T".to_string()), ("s".into(), "S".into())])
        }
    };
    Ok(MarkedGroup { kind, gens, names })
}

fn paired_marking(
    pairs: impl IntoIterator<Item = (String, String)>,
) -> (Vec<GeneratorSymbol>, Vec<String>) {
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for (i, (fwd, inv)) in pairs.into_iter().enumerate() {
        let a = (2 * i) as u16;
        gens.push(GeneratorSymbol { index: a, inverse_index: a + 1 });
        gens.push(GeneratorSymbol { index: a + 1, inverse_index: a });
        names.push(fwd);
        names.push(inv);
    }
    (gens, names)
}

/// Parses a group spec string: `zd:<d>`, `free:<k>`, `lamplighter`, `bs1n:<n>`.
pub fn group_from_spec(spec: &str) -> Result<MarkedGroup> {
    let bad = || Error::GroupSpec(spec.to_string());
    let kind = match spec.split_once(':') {
        None => match spec {
            "lamplighter" => GroupKind::Lamplighter,
            _ => return Err(bad()),
        },
        Some(("zd", d)) => GroupKind::FreeAbelian(d.parse().map_err(|_| bad())?),
        Some(("free", k)) => GroupKind::Free(k.parse().map_err(|_| bad())?),
        Some(("bs1n", n)) => GroupKind::BaumslagSolitar(n.parse().map_err(|_| bad())?),
        Some(_) => return Err(bad()),
    };
    make_group(kind)
}

impl MarkedGroup {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// The spec string this group round-trips through (`zd:2`, `bs1n:3`, …).
    pub fn spec(&self) -> String {
        match self.kind {
            GroupKind::FreeAbelian(d) => format!("zd:{d}"),
            GroupKind::Free(k) => format!("free:{k}"),
            GroupKind::Lamplighter => "lamplighter".into(),
            GroupKind::BaumslagSolitar(n) => format!("bs1n:{n}"),
        }
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.gens
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_name(&self, sym: GeneratorSymbol) -> &str {
        &self.names[sym.index as usize]
    }

    pub fn generator_by_name(&self, name: &str) -> Result<GeneratorSymbol> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.gens[i])
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn inverse_symbol(&self, sym: GeneratorSymbol) -> GeneratorSymbol {
        self.gens[sym.inverse_index as usize]
    }

    pub fn identity(&self) -> Element {
        match self.kind {
            GroupKind::FreeAbelian(d) => Element::Abelian(vec![0; d]),
            GroupKind::Free(_) => Element::Word(Vec::new()),
            GroupKind::Lamplighter => Element::Lamp { lamps: Vec::new(), pos: 0 },
            GroupKind::BaumslagSolitar(_) => Element::Affine(Affine::identity()),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        match (self.kind, x, y) {
            (GroupKind::FreeAbelian(_), Element::Abelian(a), Element::Abelian(b)) => {
                Element::Abelian(
                    a.iter()
                        .zip(b)
                        .map(|(&u, &v)| u.checked_add(v).expect("Z^d coordinate overflow"))
                        .collect(),
                )
            }
            (GroupKind::Free(_), Element::Word(a), Element::Word(b)) => {
                Element::Word(word::concat(a, b))
            }
            (
                GroupKind::Lamplighter,
                Element::Lamp { lamps: l1, pos: p1 },
                Element::Lamp { lamps: l2, pos: p2 },
            ) => {
                let (lamps, pos) = lamp::multiply(l1, *p1, l2, *p2);
                Element::Lamp { lamps, pos }
            }
            (GroupKind::BaumslagSolitar(n), Element::Affine(a), Element::Affine(b)) => {
                Element::Affine(a.multiply(b, n))
            }
            _ => panic!("element does not belong to group {}", self.spec()),
        }
    }

    pub fn invert(&self, x: &Element) -> Element {
        match (self.kind, x) {
            (GroupKind::FreeAbelian(_), Element::Abelian(a)) => Element::Abelian(
                a.iter()
                    .map(|&u| u.checked_neg().expect("Z^d coordinate overflow"))
                    .collect(),
            ),
            (GroupKind::Free(_), Element::Word(w)) => Element::Word(word::invert(w)),
            (GroupKind::Lamplighter, Element::Lamp { lamps, pos }) => {
                let (lamps, pos) = lamp::invert(lamps, *pos);
                Element::Lamp { lamps, pos }
            }
            (GroupKind::BaumslagSolitar(n), Element::Affine(a)) => Element::Affine(a.invert(n)),
            _ => panic!("element does not belong to group {}", self.spec()),
        }
    }

    pub fn generator_element(&self, sym: GeneratorSymbol) -> Element {
        self.apply_generator(&self.identity(), sym)
    }

    /// Right multiplication by one generator; the hot path of ball BFS.
    pub fn apply_generator(&self, x: &Element, sym: GeneratorSymbol) -> Element {
        let idx = sym.index as usize;
        match (self.kind, x) {
            (GroupKind::FreeAbelian(_), Element::Abelian(a)) => {
                let mut out = a.clone();
                let coord = idx / 2;
                let delta = if idx % 2 == 0 { 1 } else { -1 };
                out[coord] = out[coord].checked_add(delta).expect("Z^d coordinate overflow");
                Element::Abelian(out)
            }
            (GroupKind::Free(_), Element::Word(w)) => {
                let mut out = w.clone();
                word::push_reduced(&mut out, sym.index);
                Element::Word(out)
            }
            (GroupKind::Lamplighter, Element::Lamp { lamps, pos }) => match idx {
                0 => Element::Lamp { lamps: lamps.clone(), pos: pos + 1 },
                1 => Element::Lamp { lamps: lamps.clone(), pos: pos - 1 },
                2 => Element::Lamp { lamps: lamp::toggle(lamps, *pos), pos: *pos },
                _ => unreachable!(),
            },
            (GroupKind::BaumslagSolitar(n), Element::Affine(a)) => {
                let gen = match idx {
                    0 => Affine::translation(),
                    1 => Affine::translation().invert(n),
                    2 => Affine::scaling(),
                    3 => Affine::scaling().invert(n),
                    _ => unreachable!(),
                };
                Element::Affine(a.multiply(&gen, n))
            }
            _ => panic!("element does not belong to group {}", self.spec()),
        }
    }

    /// Left-to-right product of generators.
    pub fn evaluate_word(&self, w: &[GeneratorSymbol]) -> Element {
        w.iter().fold(self.identity(), |acc, &s| self.apply_generator(&acc, s))
    }

    /// Re-normalizes an element; identity on canonical input.
    pub fn canonicalize(&self, x: &Element) -> Element {
        match (self.kind, x) {
            (GroupKind::FreeAbelian(_), Element::Abelian(a)) => Element::Abelian(a.clone()),
            (GroupKind::Free(_), Element::Word(w)) => {
                Element::Word(word::reduce(w.iter().copied()))
            }
            (GroupKind::Lamplighter, Element::Lamp { lamps, pos }) => {
                let mut sorted = lamps.clone();
                sorted.sort_unstable();
                sorted.dedup();
                Element::Lamp { lamps: sorted, pos: *pos }
            }
            (GroupKind::BaumslagSolitar(n), Element::Affine(a)) => Element::Affine(
                Affine::normalize(a.q_num.clone(), a.q_exp, a.shift, n),
            ),
            _ => panic!("element does not belong to group {}", self.spec()),
        }
    }

    /// Checks the element's shape against this group (for external input).
    pub fn validate(&self, x: &Element) -> Result<()> {
        let ok = match (self.kind, x) {
            (GroupKind::FreeAbelian(d), Element::Abelian(a)) => a.len() == d,
            (GroupKind::Free(k), Element::Word(w)) => {
                word::is_reduced(w) && w.iter().all(|&l| (l as usize) < 2 * k)
            }
            (GroupKind::Lamplighter, Element::Lamp { lamps, .. }) => {
                lamps.windows(2).all(|p| p[0] < p[1])
            }
            (GroupKind::BaumslagSolitar(n), Element::Affine(a)) => a.is_normalized(n),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                expected: self.spec(),
                found: format!("{x:?}"),
            })
        }
    }

    /// Exact word length where a closed form exists (Z^d: L1 norm; free
    /// groups: reduced length). Cross-validated against the BFS oracle in
    /// tests; other groups answer through `cayley`.
    pub fn closed_form_length(&self, x: &Element) -> Option<u64> {
        match (self.kind, x) {
            (GroupKind::FreeAbelian(_), Element::Abelian(a)) => {
                Some(a.iter().map(|&u| u.unsigned_abs()).sum())
            }
            (GroupKind::Free(_), Element::Word(w)) => Some(w.len() as u64),
            _ => None,
        }
    }

    /// Defining relators of the presentation (free groups: none; Z^d:
    /// commutators; lamplighter: a² and [a, tᵏ a t⁻ᵏ] for small k; BS(1,n):
    /// s t s⁻¹ t⁻ⁿ).
    pub fn defining_relators(&self) -> Vec<Vec<GeneratorSymbol>> {
        let g = |i: usize| self.gens[i];
        match self.kind {
            GroupKind::FreeAbelian(d) => {
                let mut rels = Vec::new();
                for i in 0..d {
                    for j in (i + 1)..d {
                        rels.push(vec![g(2 * i), g(2 * j), g(2 * i + 1), g(2 * j + 1)]);
                    }
                }
                rels
            }
            GroupKind::Free(_) => Vec::new(),
            GroupKind::Lamplighter => {
                let (t, tinv, a) = (g(0), g(1), g(2));
                let mut rels = vec![vec![a, a]];
                for k in 1..=3usize {
                    // [a, t^k a t^-k]
                    let mut r = vec![a];
                    r.extend(std::iter::repeat(t).take(k));
                    r.push(a);
                    r.extend(std::iter::repeat(tinv).take(k));
                    r.push(a);
                    r.extend(std::iter::repeat(t).take(k));
                    r.push(a);
                    r.extend(std::iter::repeat(tinv).take(k));
                    rels.push(r);
                }
                rels
            }
            GroupKind::BaumslagSolitar(n) => {
                let (t, tinv, s, sinv) = (g(0), g(1), g(2), g(3));
                let mut r = vec![s, t, sinv];
                r.extend(std::iter::repeat(tinv).take(n as usize));
                vec![r]
            }
        }
    }

    /// Human-readable element rendering for summaries and error messages.
    pub fn format_element(&self, x: &Element) -> String {
        match x {
            Element::Abelian(a) => format!(
                "({})",
                a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
            Element::Word(w) => {
                if w.is_empty() {
                    "e".into()
                } else {
                    w.iter().map(|&l| self.names[l as usize].clone()).collect()
                }
            }
            Element::Lamp { lamps, pos } => format!(
                "({{{}}},{})",
                lamps.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                pos
            ),
            Element::Affine(a) => {
                if a.q_exp == 0 {
                    format!("({},{})", a.q_num, a.shift)
                } else {
                    format!("({}/n^{},{})", a.q_num, a.q_exp, a.shift)
                }
            }
        }
    }

    /// Serializes an element to the stable JSON form
    /// `{"group": <spec>, "repr": <payload>}`.
    pub fn element_to_json(&self, x: &Element) -> Value {
        let repr = match x {
            Element::Abelian(a) => json!(a),
            Element::Word(w) => {
                // signed letters: +(i+1) for a_i, −(i+1) for its inverse
                let signed: Vec<i64> = w
                    .iter()
                    .map(|&l| {
                        let base = i64::from(l / 2) + 1;
                        if l % 2 == 0 { base } else { -base }
                    })
                    .collect();
                json!(signed)
            }
            Element::Lamp { lamps, pos } => json!({"lamps": lamps, "pos": pos}),
            Element::Affine(a) => json!({
                "q_num": a.q_num.to_string(),
                "q_exp": a.q_exp,
                "k": a.shift,
            }),
        };
        json!({"group": self.spec(), "repr": repr})
    }

    /// Parses the payload half of the element JSON against this group.
    pub fn element_from_repr(&self, repr: &Value) -> Result<Element> {
        let bad = |msg: &str| Error::ElementJson(format!("{msg}: {repr}"));
        let elem = match self.kind {
            GroupKind::FreeAbelian(d) => {
                let coords: Vec<i64> = serde_json::from_value(repr.clone())
                    .map_err(|_| bad("expected an integer vector"))?;
                if coords.len() != d {
                    return Err(bad(&format!("expected {d} coordinates")));
                }
                Element::Abelian(coords)
            }
            GroupKind::Free(k) => {
                let signed: Vec<i64> = serde_json::from_value(repr.clone())
                    .map_err(|_| bad("expected a signed letter list"))?;
                let mut letters = Vec::with_capacity(signed.len());
                for v in signed {
                    let base = v.unsigned_abs();
                    if v == 0 || base as usize > k {
                        return Err(bad(&format!("letter {v} out of range for free:{k}")));
                    }
                    let l = (2 * (base - 1)) as u16 + u16::from(v < 0);
                    letters.push(l);
                }
                Element::Word(word::reduce(letters))
            }
            GroupKind::Lamplighter => {
                #[derive(serde::Deserialize)]
                struct Repr {
                    lamps: Vec<i64>,
                    pos: i64,
                }
                let r: Repr = serde_json::from_value(repr.clone())
                    .map_err(|_| bad("expected {lamps, pos}"))?;
                let mut lamps = r.lamps;
                lamps.sort_unstable();
                lamps.dedup();
                Element::Lamp { lamps, pos: r.pos }
            }
            GroupKind::BaumslagSolitar(n) => {
                #[derive(serde::Deserialize)]
                struct Repr {
                    q_num: String,
                    q_exp: u32,
                    k: i64,
                }
                let r: Repr = serde_json::from_value(repr.clone())
                    .map_err(|_| bad("expected {q_num, q_exp, k}"))?;
                let q_num: BigInt =
                    r.q_num.parse().map_err(|_| bad("q_num is not an integer"))?;
                Element::Affine(Affine::normalize(q_num, r.q_exp, r.k, n))
            }
        };
        self.validate(&elem)?;
        Ok(elem)
    }
}

/// Parses a full element JSON object, deriving the group from its
/// `group` field. Round-trips with [`MarkedGroup::element_to_json`].
pub fn element_from_json(value: &Value) -> Result<(MarkedGroup, Element)> {
    let spec = value
        .get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::ElementJson(format!("missing \"group\" field: {value}")))?;
    let group = group_from_spec(spec)?;
    let repr = value
        .get("repr")
        .ok_or_else(|| Error::ElementJson(format!("missing \"repr\" field: {value}")))?;
    let elem = group.element_from_repr(repr)?;
    Ok((group, elem))
}

/// Outcome of the randomized group-law and relator audit.
#[derive(Debug, Serialize)]
pub struct RelationReport {
    pub group: String,
    pub samples: usize,
    pub max_len: usize,
    pub triples_checked: usize,
    pub relators_checked: usize,
    pub violations: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks group axioms on random words up to `max_len` and the defining
/// relators; returns counterexample words on failure.
pub fn audit_relations(
    g: &MarkedGroup,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> RelationReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let e = g.identity();

    let mut relators_checked = 0;
    for rel in g.defining_relators() {
        relators_checked += 1;
        let val = g.evaluate_word(&rel);
        if val != e {
            violations.push(format!(
                "relator {} evaluates to {}",
                format_word(g, &rel),
                g.format_element(&val)
            ));
        }
    }

    let mut triples_checked = 0;
    for _ in 0..samples {
        let wx = random_word(g, &mut rng, max_len);
        let wy = random_word(g, &mut rng, max_len);
        let wz = random_word(g, &mut rng, max_len);
        let (x, y, z) = (g.evaluate_word(&wx), g.evaluate_word(&wy), g.evaluate_word(&wz));
        triples_checked += 1;

        let xy = g.multiply(&x, &y);
        if g.multiply(&xy, &z) != g.multiply(&x, &g.multiply(&y, &z)) {
            violations.push(format!(
                "associativity fails at ({}, {}, {})",
                format_word(g, &wx),
                format_word(g, &wy),
                format_word(g, &wz)
            ));
        }
        if g.multiply(&x, &e) != x || g.multiply(&e, &x) != x {
            violations.push(format!("identity law fails at {}", format_word(g, &wx)));
        }
        let xinv = g.invert(&x);
        if g.multiply(&x, &xinv) != e || g.multiply(&xinv, &x) != e {
            violations.push(format!("inverse law fails at {}", format_word(g, &wx)));
        }
        if g.canonicalize(&x) != x {
            violations.push(format!(
                "canonical form not idempotent at {}",
                format_word(g, &wx)
            ));
        }
    }

    RelationReport {
        group: g.spec(),
        samples,
        max_len,
        triples_checked,
        relators_checked,
        violations,
    }
}

pub fn random_word(g: &MarkedGroup, rng: &mut impl Rng, max_len: usize) -> Vec<GeneratorSymbol> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| g.gens[rng.random_range(0..g.gens.len())])
        .collect()
}

fn format_word(g: &MarkedGroup, w: &[GeneratorSymbol]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|&s| g.generator_name(s).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::FreeAbelian(d) => write!(f, "Z^{d}"),
            GroupKind::Free(k) => write!(f, "F_{k}"),
            GroupKind::Lamplighter => write!(f, "(Z/2Z) wr Z"),
            GroupKind::BaumslagSolitar(n) => write!(f, "BS(1,{n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zd(d: usize) -> MarkedGroup {
        make_group(GroupKind::FreeAbelian(d)).unwrap()
    }

    fn sym(g: &MarkedGroup, name: &str) -> GeneratorSymbol {
        g.generator_by_name(name).unwrap()
    }

    #[test]
    fn standard_markings_have_expected_sizes() {
        assert_eq!(zd(2).generator_count(), 4);
        assert_eq!(make_group(GroupKind::Free(2)).unwrap().generator_count(), 4);
        let lamp = make_group(GroupKind::Lamplighter).unwrap();
        assert_eq!(lamp.generator_count(), 3);
        assert!(sym(&lamp, "a").is_self_inverse());
        assert_eq!(
            make_group(GroupKind::BaumslagSolitar(2)).unwrap().generator_count(),
            4
        );
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(make_group(GroupKind::FreeAbelian(0)).is_err());
        assert!(make_group(GroupKind::Free(0)).is_err());
        assert!(make_group(GroupKind::BaumslagSolitar(1)).is_err());
    }

    #[test]
    fn inverse_index_is_an_involution() {
        for spec in ["zd:3", "free:2", "lamplighter", "bs1n:2"] {
            let g = group_from_spec(spec).unwrap();
            for s in g.generators() {
                let inv = g.inverse_symbol(*s);
                assert_eq!(g.inverse_symbol(inv).index, s.index);
                // the generator's inverse is in T and multiplies to e
                let prod = g.multiply(&g.generator_element(*s), &g.generator_element(inv));
                assert!(g.is_identity(&prod));
            }
        }
    }

    #[test]
    fn z2_basic_products() {
        let g = zd(2);
        let x = Element::Abelian(vec![1, 0]);
        let y = Element::Abelian(vec![0, 1]);
        assert_eq!(g.multiply(&x, &y), Element::Abelian(vec![1, 1]));
        assert_eq!(g.invert(&Element::Abelian(vec![3, -1])), Element::Abelian(vec![-3, 1]));
        let w = [sym(&g, "+e1"), sym(&g, "+e2"), sym(&g, "-e1")];
        assert_eq!(g.evaluate_word(&w), Element::Abelian(vec![0, 1]));
    }

    #[test]
    fn free_group_reduction_and_inversion() {
        let g = make_group(GroupKind::Free(2)).unwrap();
        let (a, b_inv) = (sym(&g, "a"), sym(&g, "B"));
        // (a b⁻¹)⁻¹ = b a⁻¹
        let x = g.evaluate_word(&[a, b_inv]);
        let want = g.evaluate_word(&[sym(&g, "b"), sym(&g, "A")]);
        assert_eq!(g.invert(&x), want);
        // a a⁻¹ = e
        assert!(g.is_identity(&g.evaluate_word(&[a, sym(&g, "A")])));
    }

    #[test]
    fn lamplighter_square_and_inverse() {
        let g = make_group(GroupKind::Lamplighter).unwrap();
        let a = Element::Lamp { lamps: vec![0], pos: 0 };
        assert!(g.is_identity(&g.multiply(&a, &a)));
        let x = Element::Lamp { lamps: vec![2], pos: 1 };
        assert_eq!(g.invert(&x), Element::Lamp { lamps: vec![1], pos: -1 });
    }

    #[test]
    fn bs12_relator_and_conjugation() {
        let g = make_group(GroupKind::BaumslagSolitar(2)).unwrap();
        let (s, t, s_inv, t_inv) = (sym(&g, "s"), sym(&g, "t"), sym(&g, "S"), sym(&g, "T"));
        // s t s⁻¹ = t²
        let conj = g.evaluate_word(&[s, t, s_inv]);
        let t2 = g.evaluate_word(&[t, t]);
        assert_eq!(conj, t2);
        // s t s⁻¹ t⁻¹ t⁻¹ = e
        assert!(g.is_identity(&g.evaluate_word(&[s, t, s_inv, t_inv, t_inv])));
    }

    #[test]
    fn element_json_round_trips() {
        let cases = [
            ("zd:2", Element::Abelian(vec![3, -2])),
            ("free:2", Element::Word(vec![0, 2, 1])),
            ("lamplighter", Element::Lamp { lamps: vec![-1, 4], pos: 2 }),
        ];
        for (spec, x) in cases {
            let g = group_from_spec(spec).unwrap();
            g.validate(&x).unwrap();
            let j = g.element_to_json(&x);
            let (g2, back) = element_from_json(&j).unwrap();
            assert_eq!(g2.spec(), g.spec());
            assert_eq!(back, x);
        }
        let g = group_from_spec("bs1n:2").unwrap();
        let x = g.evaluate_word(&[
            g.generator_by_name("s").unwrap(),
            g.generator_by_name("t").unwrap(),
            g.generator_by_name("S").unwrap(),
        ]);
        let (_, back) = element_from_json(&g.element_to_json(&x)).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn audit_relations_passes_for_all_builtins() {
        for spec in ["zd:2", "free:2", "lamplighter", "bs1n:2"] {
            let g = group_from_spec(spec).unwrap();
            let report = audit_relations(&g, 500, 8, 42);
            assert!(report.passed(), "{spec}: {:?}", report.violations);
        }
    }

    #[test]
    fn exhaustive_laws_on_short_words() {
        // all pairs of words of length <= 2, all built-ins
        for spec in ["zd:2", "free:2", "lamplighter", "bs1n:2"] {
            let g = group_from_spec(spec).unwrap();
            let mut words: Vec<Vec<GeneratorSymbol>> = vec![vec![]];
            for s in g.generators() {
                words.push(vec![*s]);
                for u in g.generators() {
                    words.push(vec![*s, *u]);
                }
            }
            let elems: Vec<Element> = words.iter().map(|w| g.evaluate_word(w)).collect();
            let e = g.identity();
            for x in &elems {
                assert_eq!(g.multiply(x, &e), *x);
                assert_eq!(g.multiply(&e, x), *x);
                assert!(g.is_identity(&g.multiply(x, &g.invert(x))));
                for y in &elems {
                    for z in &elems {
                        assert_eq!(
                            g.multiply(&g.multiply(x, y), z),
                            g.multiply(x, &g.multiply(y, z))
                        );
                    }
                }
            }
        }
    }
}
