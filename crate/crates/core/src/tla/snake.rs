//! Bi-infinite unit-step Hamiltonian path on Z² built from two half-plane
//! C-shell boustrophedons.
//!
//! The right half-plane {x ≥ 0} is enumerated outward from P(0) = (0,0)
//! through shells {max(x, |y|) = r}; shell r is a C of 4r+1 cells
//! (cumulative count (r+1)(2r+1)), traversed top→bottom for odd r and
//! bottom→top for even r so that consecutive cells are always at
//! L1-distance 1. The left half-plane {x ≤ −1} is the mirror image
//! x ↦ −1−x anchored at P(−1) = (−1, 0). Both directions are closed-form
//! shell-index arithmetic; no tables.

/// Cumulative cell count of right-half shells 0..=r.
fn shell_cumulative(r: i64) -> i64 {
    (r + 1) * (2 * r + 1)
}

/// Largest r with shell_cumulative(r−1) ≤ k, i.e. the shell containing
/// right-half index k.
fn shell_of(k: i64) -> i64 {
    // solve 2r² + 3r + 1 > k: r ≈ (isqrt(8k+1) − 3) / 4, then fix up
    let mut r = (((8 * k + 1).isqrt()) - 3) / 4;
    r = r.max(0);
    while shell_cumulative(r) <= k {
        r += 1;
    }
    while r > 0 && shell_cumulative(r - 1) > k {
        r -= 1;
    }
    r
}

/// Position of offset j within shell r in the top→bottom frame.
fn shell_cell(r: i64, j: i64) -> (i64, i64) {
    debug_assert!((0..=4 * r).contains(&j));
    if j <= r {
        (j, r)
    } else if j <= 3 * r {
        (r, 2 * r - j)
    } else {
        (4 * r - j, -r)
    }
}

fn right_path(k: i64) -> (i64, i64) {
    debug_assert!(k >= 0);
    if k == 0 {
        return (0, 0);
    }
    let r = shell_of(k);
    let j = k - shell_cumulative(r - 1);
    let (x, y) = shell_cell(r, j);
    if r % 2 == 1 {
        (x, y)
    } else {
        (x, -y)
    }
}

fn right_index(x: i64, y: i64) -> i64 {
    debug_assert!(x >= 0);
    let r = x.max(y.abs());
    if r == 0 {
        return 0;
    }
    let yy = if r % 2 == 1 { y } else { -y };
    let j = if yy == r {
        x
    } else if x == r {
        2 * r - yy
    } else {
        4 * r - x
    };
    shell_cumulative(r - 1) + j
}

/// P(k): the k-th cell of the path.
pub fn path(k: i64) -> (i64, i64) {
    if k >= 0 {
        right_path(k)
    } else {
        let (x, y) = right_path(-1 - k);
        (-1 - x, y)
    }
}

/// P⁻¹(x, y): the index of a cell.
pub fn index(x: i64, y: i64) -> i64 {
    if x >= 0 {
        right_index(x, y)
    } else {
        -1 - right_index(-1 - x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn anchors() {
        assert_eq!(path(0), (0, 0));
        assert_eq!(path(-1), (-1, 0));
    }

    #[test]
    fn first_shell_sequence() {
        let expected = [(0, 0), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (0, -2)];
        for (k, &cell) in expected.iter().enumerate() {
            assert_eq!(path(k as i64), cell, "k={k}");
        }
    }

    #[test]
    fn consecutive_cells_at_l1_distance_one() {
        for k in -100_000..100_000i64 {
            let (x0, y0) = path(k);
            let (x1, y1) = path(k + 1);
            assert_eq!((x1 - x0).abs() + (y1 - y0).abs(), 1, "step at k={k}");
        }
    }

    #[test]
    fn index_inverts_path_on_large_range() {
        for k in -100_000..=100_000i64 {
            let (x, y) = path(k);
            assert_eq!(index(x, y), k, "P^-1(P({k}))");
        }
    }

    #[test]
    fn halves_stay_in_their_half_planes() {
        for k in 0..10_000i64 {
            assert!(path(k).0 >= 0);
            assert!(path(-1 - k).0 <= -1);
        }
    }

    proptest! {
        #[test]
        fn path_of_index_is_identity(x in -2000i64..2000, y in -2000i64..2000) {
            let k = index(x, y);
            prop_assert_eq!(path(k), (x, y));
        }
    }
}
