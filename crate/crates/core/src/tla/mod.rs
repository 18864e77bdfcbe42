//! Translation-like actions represented through their cocycles.
//!
//! A left action * of H on G determines L(h, x) = x⁻¹(h·x) and the cocycle
//! c(h, x) = L(h, x)⁻¹ with c(h₁h₂, x) = c(h₁, h₂·x)·c(h₂, x). The audits
//! in [`audit`] check freeness and bounded displacement (the two
//! translation-like conditions) on finite samples.

pub mod audit;
pub mod snake;

use crate::cayley::CayleyBall;
use crate::error::{Error, Result};
use crate::groups::{
    element_from_json, group_from_spec, make_group, Element, GeneratorSymbol, GroupKind,
    MarkedGroup,
};
use serde_json::Value;
use std::collections::HashMap;

/// How many H-ball radii the subgroup constructor checks injectivity on.
const SUBGROUP_FREENESS_RADIUS: u32 = 6;
/// Word-length budget for declared λ_s of subgroup images; escalated in
/// steps so exponential-growth base groups only pay for what the image
/// needs.
const IMAGE_LENGTH_BUDGETS: [u32; 4] = [4, 8, 12, 16];

enum Backend {
    /// s·x := x·φ(s)⁻¹ for an embedding φ: H → G; stores φ(s)⁻¹ per symbol.
    Subgroup { inverse_images: Vec<Element>, images: Vec<Element> },
    /// The transitive free Z-action n·x = P(P⁻¹(x) + n) on Z².
    GridSnake,
    /// Partial action from user-supplied (s, x, s·x) triples.
    Table { map: HashMap<(u16, Element), Element> },
}

/// An acting group H with generating set S, a base group G, and evaluators
/// for the generator actions, derived act(h, x) and cocycle c(h, x).
pub struct TranslationAction {
    h: MarkedGroup,
    g: MarkedGroup,
    backend: Backend,
    declared_lambda: Vec<Option<u64>>,
    label: String,
}

impl TranslationAction {
    pub fn acting_group(&self) -> &MarkedGroup {
        &self.h
    }

    pub fn base_group(&self) -> &MarkedGroup {
        &self.g
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Declared analytic displacement bound for a generator, if the action
    /// ships with one.
    pub fn declared_lambda(&self, s: GeneratorSymbol) -> Option<u64> {
        self.declared_lambda[s.index as usize]
    }

    /// s·x for one generator; None when x is outside a partial domain.
    pub fn apply_gen(&self, s: GeneratorSymbol, x: &Element) -> Option<Element> {
        match &self.backend {
            Backend::Subgroup { inverse_images, .. } => {
                Some(self.g.multiply(x, &inverse_images[s.index as usize]))
            }
            Backend::GridSnake => {
                let Element::Abelian(v) = x else { unreachable!() };
                let step = if s.index == 0 { 1 } else { -1 };
                let (nx, ny) = snake::path(snake::index(v[0], v[1]) + step);
                Some(Element::Abelian(vec![nx, ny]))
            }
            Backend::Table { map } => map.get(&(s.index, x.clone())).cloned(),
        }
    }

    /// h·x evaluated right-to-left over a word for h, so that
    /// (h₁h₂)·x = h₁·(h₂·x).
    pub fn apply_word(&self, word: &[GeneratorSymbol], x: &Element) -> Option<Element> {
        let mut cur = x.clone();
        for &s in word.iter().rev() {
            cur = self.apply_gen(s, &cur)?;
        }
        Some(cur)
    }

    /// act(h, x) through h's canonical geodesic word in the ball.
    pub fn act(&self, h_ball: &CayleyBall, h: &Element, x: &Element) -> Result<Option<Element>> {
        let idx = h_ball
            .index_of(h)
            .ok_or_else(|| Error::NotInBall(self.h.format_element(h)))?;
        Ok(self.apply_word(&h_ball.word_to(idx), x))
    }

    /// c(h, x) = (x⁻¹·(h·x))⁻¹ = (h·x)⁻¹·x.
    pub fn cocycle(&self, h_ball: &CayleyBall, h: &Element, x: &Element) -> Result<Option<Element>> {
        Ok(self
            .act(h_ball, h, x)?
            .map(|hx| self.g.multiply(&self.g.invert(&hx), x)))
    }
}

/// The natural (right-multiplication) translation-like action of an
/// embedded subgroup: s·x := x·φ(s)⁻¹, so c(h, x) = φ(h) for all x.
///
/// `images` maps each H-generator (by symbol) to φ(s) ∈ G. Inverse
/// generators may be omitted; when present they must equal φ(s)⁻¹. The
/// constructor checks that φ respects H's defining relators and that
/// h ↦ φ(h) is injective on a ball (freeness), and declares λ_s = ℓ_G(φ(s)).
pub fn subgroup_action(
    h: MarkedGroup,
    g: MarkedGroup,
    images: &[(GeneratorSymbol, Element)],
) -> Result<TranslationAction> {
    let mut by_index: Vec<Option<Element>> = vec![None; h.generator_count()];
    for (s, img) in images {
        g.validate(img)?;
        by_index[s.index as usize] = Some(img.clone());
    }
    // fill or cross-check inverse generators
    for s in h.generators() {
        let (i, j) = (s.index as usize, s.inverse_index as usize);
        match (&by_index[i], &by_index[j]) {
            (Some(a), Some(b)) => {
                if g.invert(a) != *b {
                    return Err(Error::NotAHomomorphism {
                        relator: format!(
                            "{} {}",
                            h.generator_name(*s),
                            h.generator_name(h.inverse_symbol(*s))
                        ),
                        image: g.format_element(&g.multiply(a, b)),
                    });
                }
            }
            (Some(a), None) => by_index[j] = Some(g.invert(a)),
            (None, Some(b)) => by_index[i] = Some(g.invert(b)),
            (None, None) => {
                return Err(Error::Parameter(format!(
                    "missing image for generator {}",
                    h.generator_name(*s)
                )))
            }
        }
    }
    let images: Vec<Element> = by_index.into_iter().map(Option::unwrap).collect();

    // φ must kill the defining relators of H
    for rel in h.defining_relators() {
        let img = rel.iter().fold(g.identity(), |acc, s| {
            g.multiply(&acc, &images[s.index as usize])
        });
        if !g.is_identity(&img) {
            let rel_str: Vec<&str> = rel.iter().map(|&s| h.generator_name(s)).collect();
            return Err(Error::NotAHomomorphism {
                relator: rel_str.join(" "),
                image: g.format_element(&img),
            });
        }
    }

    // verified, not assumed: φ injective on the test ball
    let h_ball = crate::cayley::build_ball(&h, SUBGROUP_FREENESS_RADIUS, 1 << 20)?;
    let mut seen: HashMap<Element, u32> = HashMap::new();
    for v in 0..h_ball.len() as u32 {
        let img = h_ball
            .word_to(v)
            .iter()
            .fold(g.identity(), |acc, s| g.multiply(&acc, &images[s.index as usize]));
        if let Some(&w) = seen.get(&img) {
            return Err(Error::NotFree(format!(
                "phi({}) = phi({}) = {}",
                h.format_element(h_ball.element(w)),
                h.format_element(h_ball.element(v)),
                g.format_element(&img)
            )));
        }
        seen.insert(img, v);
    }

    let mut declared_lambda = Vec::with_capacity(images.len());
    for img in &images {
        let mut found = None;
        for budget in IMAGE_LENGTH_BUDGETS {
            if let Some(l) = crate::cayley::word_length(&g, img, budget)? {
                found = Some(l);
                break;
            }
        }
        match found {
            Some(l) => declared_lambda.push(Some(l)),
            None => {
                return Err(Error::EnlargeBall {
                    element: g.format_element(img),
                    budget: *IMAGE_LENGTH_BUDGETS.last().unwrap(),
                })
            }
        }
    }

    let inverse_images = images.iter().map(|e| g.invert(e)).collect();
    let label = format!("subgroup({} <= {})", h.spec(), g.spec());
    Ok(TranslationAction {
        h,
        g,
        backend: Backend::Subgroup { inverse_images, images },
        declared_lambda,
        label,
    })
}

/// Images of the subgroup embedding, for consumers that know the backend.
impl TranslationAction {
    pub fn subgroup_images(&self) -> Option<&[Element]> {
        match &self.backend {
            Backend::Subgroup { images, .. } => Some(images),
            _ => None,
        }
    }
}

/// The transitive free Z-action on Z² along the C-shell snake path, with
/// declared λ_{±1} = 1 (consecutive path cells are L1-adjacent).
pub fn grid_snake_action() -> TranslationAction {
    let h = make_group(GroupKind::FreeAbelian(1)).expect("Z is valid");
    let g = make_group(GroupKind::FreeAbelian(2)).expect("Z^2 is valid");
    TranslationAction {
        h,
        g,
        backend: Backend::GridSnake,
        declared_lambda: vec![Some(1), Some(1)],
        label: "snake".into(),
    }
}

/// Parses an action table: a `groups <h-spec> <g-spec>` header followed by
/// lines `s <x-json> <y-json>` meaning s·x = y. `#` starts a comment.
/// The result is a partial action: evaluators answer None off the table.
pub fn action_from_table(text: &str) -> Result<TranslationAction> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::TableFormat { line: 0, reason: "empty table".into() })?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("groups") {
        return Err(Error::TableFormat {
            line: lineno,
            reason: "expected header `groups <h-spec> <g-spec>`".into(),
        });
    }
    let h = group_from_spec(parts.next().ok_or_else(|| Error::TableFormat {
        line: lineno,
        reason: "missing H spec".into(),
    })?)?;
    let g = group_from_spec(parts.next().ok_or_else(|| Error::TableFormat {
        line: lineno,
        reason: "missing G spec".into(),
    })?)?;

    let mut map: HashMap<(u16, Element), Element> = HashMap::new();
    for (lineno, line) in lines {
        let bad = |reason: String| Error::TableFormat { line: lineno, reason };
        let (name, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| bad("expected `s <x-json> <y-json>`".into()))?;
        let s = h.generator_by_name(name)?;
        let mut stream = serde_json::Deserializer::from_str(rest).into_iter::<Value>();
        let x_json = stream
            .next()
            .transpose()
            .map_err(|e| bad(format!("bad x JSON: {e}")))?
            .ok_or_else(|| bad("missing x JSON".into()))?;
        let y_json = stream
            .next()
            .transpose()
            .map_err(|e| bad(format!("bad y JSON: {e}")))?
            .ok_or_else(|| bad("missing y JSON".into()))?;
        let (gx, x) = element_from_json(&x_json)?;
        let (gy, y) = element_from_json(&y_json)?;
        for parsed in [&gx, &gy] {
            if parsed.spec() != g.spec() {
                return Err(Error::GroupMismatch { expected: g.spec(), found: parsed.spec() });
            }
        }
        if let Some(prev) = map.get(&(s.index, x.clone())) {
            if *prev != y {
                return Err(Error::TableInconsistent {
                    gen: name.to_string(),
                    x: g.format_element(&x),
                    y1: g.format_element(prev),
                    y2: g.format_element(&y),
                });
            }
        }
        map.insert((s.index, x), y);
    }

    let declared_lambda = vec![None; h.generator_count()];
    Ok(TranslationAction {
        h,
        g,
        backend: Backend::Table { map },
        declared_lambda,
        label: "table".into(),
    })
}

/// Renders an action's full orbit data over a G-ball as a table file
/// (the inverse of [`action_from_table`], restricted to the ball).
pub fn table_from_action(
    action: &TranslationAction,
    g_ball: &CayleyBall,
) -> String {
    use std::fmt::Write as _;
    let mut out = format!(
        "groups {} {}\n",
        action.acting_group().spec(),
        action.base_group().spec()
    );
    for &s in action.acting_group().generators() {
        for x in g_ball.elements() {
            if let Some(y) = action.apply_gen(s, x) {
                writeln!(
                    out,
                    "{} {} {}",
                    action.acting_group().generator_name(s),
                    action.base_group().element_to_json(x),
                    action.base_group().element_to_json(&y)
                )
                .unwrap();
            }
        }
    }
    out
}

/// Parses an action spec: `snake`, `subgroup:<json>`, or `table:<path>`.
///
/// The subgroup JSON is `{"h": "<h-spec>", "images": {"<gen>": <element-json>}}`;
/// the base group is inferred from the image elements.
pub fn action_from_spec(spec: &str) -> Result<TranslationAction> {
    if spec == "snake" {
        return Ok(grid_snake_action());
    }
    if let Some(json_str) = spec.strip_prefix("subgroup:") {
        let v: Value = serde_json::from_str(json_str)
            .map_err(|e| Error::Parameter(format!("bad subgroup JSON: {e}")))?;
        let h_spec = v
            .get("h")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parameter("subgroup JSON needs an \"h\" group spec".into()))?;
        let h = group_from_spec(h_spec)?;
        let images_obj = v
            .get("images")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parameter("subgroup JSON needs an \"images\" object".into()))?;
        let mut g: Option<MarkedGroup> = None;
        let mut images = Vec::new();
        for (name, elem_json) in images_obj {
            let s = h.generator_by_name(name)?;
            let (gg, elem) = element_from_json(elem_json)?;
            if let Some(prev) = &g {
                if prev.spec() != gg.spec() {
                    return Err(Error::GroupMismatch { expected: prev.spec(), found: gg.spec() });
                }
            } else {
                g = Some(gg);
            }
            images.push((s, elem));
        }
        let g = g.ok_or_else(|| Error::Parameter("images object is empty".into()))?;
        return subgroup_action(h, g, &images);
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path)?;
        return action_from_table(&text);
    }
    Err(Error::Parameter(format!(
        "unknown action spec `{spec}` (expected snake, subgroup:<json>, or table:<path>)"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_ball;

    fn z() -> MarkedGroup {
        make_group(GroupKind::FreeAbelian(1)).unwrap()
    }

    fn z_gen(h: &MarkedGroup) -> GeneratorSymbol {
        h.generator_by_name("+e1").unwrap()
    }

    #[test]
    fn subgroup_action_on_f2_has_constant_cocycle() {
        let h = z();
        let g = group_from_spec("free:2").unwrap();
        let a = g.generator_element(g.generator_by_name("a").unwrap());
        let act = subgroup_action(h.clone(), g.clone(), &[(z_gen(&h), a.clone())]).unwrap();

        let h_ball = build_ball(&h, 6, 1 << 16).unwrap();
        let g_ball = build_ball(&g, 4, 1 << 16).unwrap();
        let n3 = Element::Abelian(vec![3]);
        // c(3, x) = a³ for every x
        let expect = g.evaluate_word(&[g.generator_by_name("a").unwrap(); 3]);
        for x in g_ball.elements().iter().step_by(5) {
            let c = act.cocycle(&h_ball, &n3, x).unwrap().unwrap();
            assert_eq!(c, expect);
        }
        assert_eq!(act.declared_lambda(z_gen(&h)), Some(1));
    }

    #[test]
    fn subgroup_action_on_z2_shifts() {
        let h = z();
        let g = group_from_spec("zd:2").unwrap();
        let e1 = Element::Abelian(vec![1, 0]);
        let act = subgroup_action(h.clone(), g, &[(z_gen(&h), e1)]).unwrap();
        let h_ball = build_ball(&h, 6, 1 << 16).unwrap();
        let x = Element::Abelian(vec![4, 7]);
        let n = Element::Abelian(vec![5]);
        let c = act.cocycle(&h_ball, &n, &x).unwrap().unwrap();
        assert_eq!(c, Element::Abelian(vec![5, 0]));
    }

    #[test]
    fn subgroup_action_into_bs12_via_t_is_free() {
        let h = z();
        let g = group_from_spec("bs1n:2").unwrap();
        let t = g.generator_element(g.generator_by_name("t").unwrap());
        assert!(subgroup_action(h, g, &[(z_gen(&z()), t)]).is_ok());
    }

    #[test]
    fn relator_violation_is_rejected() {
        // map BS(1,2)'s s and t into Z: relator s t s⁻¹ t⁻² dies only if t ↦ 0
        let h = group_from_spec("bs1n:2").unwrap();
        let g = z();
        let one = Element::Abelian(vec![1]);
        let images = vec![
            (h.generator_by_name("t").unwrap(), one.clone()),
            (h.generator_by_name("s").unwrap(), one.clone()),
        ];
        match subgroup_action(h, g, &images) {
            Err(Error::NotAHomomorphism { .. }) => {}
            other => panic!("expected NotAHomomorphism, got {:?}", other.err()),
        }
    }

    #[test]
    fn non_injective_embedding_is_rejected() {
        // Z -> Z^2 with generator mapped to the identity is maximally non-free
        let h = z();
        let g = group_from_spec("zd:2").unwrap();
        let zero = Element::Abelian(vec![0, 0]);
        match subgroup_action(h, g, &[(z_gen(&z()), zero)]) {
            Err(Error::NotFree(_)) => {}
            other => panic!("expected NotFree, got {:?}", other.err()),
        }
    }

    #[test]
    fn snake_action_is_transitive_on_orbit() {
        let act = grid_snake_action();
        let h_ball = build_ball(act.acting_group(), 10, 1 << 16).unwrap();
        let x = Element::Abelian(vec![0, 0]);
        let mut seen = std::collections::HashSet::new();
        for n in -10..=10i64 {
            let y = act
                .act(&h_ball, &Element::Abelian(vec![n]), &x)
                .unwrap()
                .unwrap();
            seen.insert(y);
        }
        assert_eq!(seen.len(), 21); // 2N+1 distinct cells
    }

    #[test]
    fn table_round_trips_against_source_action() {
        let act = grid_snake_action();
        let g_ball = build_ball(act.base_group(), 4, 1 << 16).unwrap();
        let text = table_from_action(&act, &g_ball);
        let table_act = action_from_table(&text).unwrap();
        for &s in act.acting_group().generators() {
            for x in g_ball.elements() {
                assert_eq!(table_act.apply_gen(s, x), act.apply_gen(s, x));
            }
        }
        // off-table points are None
        let far = Element::Abelian(vec![100, 100]);
        let s = act.acting_group().generators()[0];
        assert_eq!(table_act.apply_gen(s, &far), None);
    }

    #[test]
    fn inconsistent_table_is_rejected() {
        let text = r#"groups zd:1 zd:2
+e1 {"group":"zd:2","repr":[0,0]} {"group":"zd:2","repr":[0,1]}
+e1 {"group":"zd:2","repr":[0,0]} {"group":"zd:2","repr":[1,0]}
"#;
        match action_from_table(text) {
            Err(Error::TableInconsistent { .. }) => {}
            other => panic!("expected TableInconsistent, got {:?}", other.err()),
        }
    }

    #[test]
    fn empty_table_has_empty_domain() {
        let act = action_from_table("groups zd:1 zd:2\n").unwrap();
        let s = act.acting_group().generators()[0];
        assert_eq!(act.apply_gen(s, &Element::Abelian(vec![0, 0])), None);
    }
}
