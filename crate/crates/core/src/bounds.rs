//! The certified size bounds and where each of the two terms wins.
//!
//! Every dominating set this crate constructs is checked against
//! `domination_bound(n) = max{⌈2n/7⌉, ⌊5n/16⌋}`. The two terms come from the
//! two construction branches (hat-cycle reduction and outerplanar side
//! solving); the max is what the whole pipeline certifies.
//!
//! The ⌈2n/7⌉ term is the larger one only for nine small sizes
//! (`TWO_SEVENTHS_DOMINANT_SIZES`); from n = 26 on, ⌊5n/16⌋ dominates
//! forever (5/16 > 2/7, and the rounding gap is closed by then).

use serde::Serialize;

/// ⌈2n/7⌉.
pub fn bound_two_sevenths(n: usize) -> usize {
    (2 * n).div_ceil(7)
}

/// ⌊5n/16⌋.
pub fn bound_five_sixteenths(n: usize) -> usize {
    5 * n / 16
}

/// max{⌈2n/7⌉, ⌊5n/16⌋} — the size every certificate is checked against.
pub fn domination_bound(n: usize) -> usize {
    bound_two_sevenths(n).max(bound_five_sixteenths(n))
}

/// One row of the bound table: both terms, their max, and which one won.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub n: usize,
    pub two_sevenths: usize,
    pub five_sixteenths: usize,
    pub max: usize,
    /// True when ⌈2n/7⌉ is the strictly larger term.
    pub exceptional: bool,
}

/// Evaluate both bound terms at `n`.
pub fn bound_table(n: usize) -> BoundTable {
    let two_sevenths = bound_two_sevenths(n);
    let five_sixteenths = bound_five_sixteenths(n);
    BoundTable {
        n,
        two_sevenths,
        five_sixteenths,
        max: two_sevenths.max(five_sixteenths),
        exceptional: two_sevenths > five_sixteenths,
    }
}

/// The sizes n ≥ 6 where ⌈2n/7⌉ > ⌊5n/16⌋, checked exhaustively in tests.
/// (δ ≥ 4 forces n ≥ 6, so smaller n are out of domain; arithmetically
/// n = 1..5 also favor the first term.) Note that 18 belongs here — it is
/// often dropped from quoted versions of this list, but ⌈36/7⌉ = 6 > 5 =
/// ⌊90/16⌋.
pub const TWO_SEVENTHS_DOMINANT_SIZES: [usize; 10] = [6, 8, 9, 11, 12, 15, 18, 19, 22, 25];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_by_hand() {
        // (n, ⌈2n/7⌉, ⌊5n/16⌋)
        let table = [
            (3, 1, 0),
            (6, 2, 1),
            (7, 2, 2),
            (14, 4, 4),
            (16, 5, 5),
            (25, 8, 7),
            (26, 8, 8),
            (32, 10, 10),
        ];
        for (n, a, b) in table {
            assert_eq!(bound_two_sevenths(n), a, "⌈2·{n}/7⌉");
            assert_eq!(bound_five_sixteenths(n), b, "⌊5·{n}/16⌋");
            assert_eq!(domination_bound(n), a.max(b));
        }
    }

    #[test]
    fn table_rows_agree_with_the_scalar_functions() {
        for n in 1..200 {
            let row = bound_table(n);
            assert_eq!(row.max, domination_bound(n));
            assert_eq!(
                row.exceptional,
                TWO_SEVENTHS_DOMINANT_SIZES.contains(&n) || (n < 6 && n > 0),
                "exceptional flag at n = {n}"
            );
        }
    }

    #[test]
    fn dominant_sizes_are_exactly_the_listed_ten() {
        let found: Vec<usize> = (6..=10_000)
            .filter(|&n| bound_two_sevenths(n) > bound_five_sixteenths(n))
            .collect();
        assert_eq!(
            found,
            TWO_SEVENTHS_DOMINANT_SIZES.to_vec(),
            "the ⌈2n/7⌉ term must win exactly at the listed sizes"
        );
        assert!(
            (26..=10_000).all(|n| bound_two_sevenths(n) <= bound_five_sixteenths(n)),
            "from 26 on, ⌊5n/16⌋ always wins"
        );
    }
}
