//! Lamplighter (Z/2Z) ≀ Z arithmetic.
//!
//! An element is a pair (lamps, pos): the finite set of lit lamp positions
//! plus the lamplighter's offset. Canonical form keeps `lamps` sorted and
//! duplicate-free.

/// (L₁, p₁)·(L₂, p₂) = (L₁ Δ (L₂ + p₁), p₁ + p₂).
pub fn multiply(l1: &[i64], p1: i64, l2: &[i64], p2: i64) -> (Vec<i64>, i64) {
    let shifted = l2.iter().map(|&x| {
        x.checked_add(p1).expect("lamplighter lamp position overflow")
    });
    (sym_diff(l1.iter().copied(), shifted), checked_pos(p1, p2))
}

/// (L, p)⁻¹ = (L − p, −p).
pub fn invert(lamps: &[i64], pos: i64) -> (Vec<i64>, i64) {
    let shifted = lamps
        .iter()
        .map(|&x| x.checked_sub(pos).expect("lamplighter lamp position overflow"))
        .collect();
    (shifted, -pos)
}

/// Toggles the lamp at `at`, preserving sortedness.
pub fn toggle(lamps: &[i64], at: i64) -> Vec<i64> {
    let mut out = lamps.to_vec();
    match out.binary_search(&at) {
        Ok(i) => {
            out.remove(i);
        }
        Err(i) => out.insert(i, at),
    }
    out
}

fn checked_pos(p1: i64, p2: i64) -> i64 {
    p1.checked_add(p2).expect("lamplighter position overflow")
}

/// Symmetric difference of two sorted streams.
fn sym_diff(
    mut a: impl Iterator<Item = i64>,
    mut b: impl Iterator<Item = i64>,
) -> Vec<i64> {
    let mut out = Vec::new();
    let (mut x, mut y) = (a.next(), b.next());
    loop {
        match (x, y) {
            (Some(u), Some(v)) => {
                if u < v {
                    out.push(u);
                    x = a.next();
                } else if v < u {
                    out.push(v);
                    y = b.next();
                } else {
                    x = a.next();
                    y = b.next();
                }
            }
            (Some(u), None) => {
                out.push(u);
                x = a.next();
            }
            (None, Some(v)) => {
                out.push(v);
                y = b.next();
            }
            (None, None) => return out,
        }
    }
}
