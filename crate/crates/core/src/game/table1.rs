//! The published example game.
//!
//! Each player's utilities are printed as a 4×4 grid of 2×2 blocks: grid
//! rows are `(x_C, x_B)`, grid columns are `(y_C, y_B)`, and inside a block
//! rows are `x_A` and columns are `y_A`. The grids below are copied in that
//! layout and converted once into the dense canonical table.

use super::{ActionProfile, PlayerId, UtilityTable};
use crate::rational::Rational;

type Block = [&'static str; 4];
type Grid = [[Block; 4]; 4];

#[rustfmt::skip]
const U_A: Grid = [
    // x_C=0, x_B=0
    [["2", "0", "2", "1"], ["3/2", "1", "0", "2"], ["3/2", "1", "0", "2"], ["4", "1", "4", "19/3"]],
    // x_C=0, x_B=1
    [["0", "-1", "-1", "1"], ["-1/2", "2", "1", "0"], ["1", "-1", "1/2", "0"], ["-2", "-19/6", "-1", "-1/2"]],
    // x_C=1, x_B=0
    [["0", "-1", "-1", "1"], ["1", "-1", "1/2", "0"], ["-1/2", "2", "1", "0"], ["-2", "-19/6", "-1", "-1/2"]],
    // x_C=1, x_B=1
    [["2", "2", "0", "-2"], ["1", "1", "2", "1/2"], ["1", "1", "2", "1/2"], ["0", "4", "-1", "2/3"]],
];

#[rustfmt::skip]
const U_B: Grid = [
    [["2", "3/2", "0", "-1/2"], ["0", "1", "-1", "2"], ["3/2", "4", "1", "-2"], ["1", "1", "-1", "-19/6"]],
    [["2", "0", "-1", "1"], ["1", "2", "1", "0"], ["0", "4", "1/2", "-1"], ["2", "19/3", "0", "-1/2"]],
    [["0", "1", "2", "1"], ["-1", "-1", "2", "1"], ["-1/2", "-2", "1", "0"], ["2", "-19/6", "1", "4"]],
    [["-1", "1/2", "0", "2"], ["1", "0", "-2", "1/2"], ["1", "-1", "2", "-1"], ["0", "-1/2", "1/2", "2/3"]],
];

#[rustfmt::skip]
const U_C: Grid = [
    [["2", "3/2", "0", "-1/2"], ["3/2", "4", "1", "-2"], ["0", "1", "-1", "2"], ["1", "1", "-1", "-19/6"]],
    [["0", "1", "2", "1"], ["-1/2", "-2", "1", "0"], ["-1", "-1", "2", "1"], ["2", "-19/6", "1", "4"]],
    [["2", "0", "-1", "1"], ["0", "4", "1/2", "-1"], ["1", "2", "1", "0"], ["2", "19/3", "0", "-1/2"]],
    [["-1", "1/2", "0", "2"], ["1", "-1", "2", "-1"], ["1", "0", "-2", "1/2"], ["0", "-1/2", "1/2", "2/3"]],
];

fn lookup(grid: &Grid, x: [u8; 3], y: [u8; 3]) -> Rational {
    let [xa, xb, xc] = x.map(usize::from);
    let [ya, yb, yc] = y.map(usize::from);
    grid[2 * xc + xb][2 * yc + yb][2 * xa + ya]
        .parse()
        .expect("table entries are valid rationals")
}

pub(super) fn table1() -> UtilityTable {
    UtilityTable::from_fn(|p, x, y| {
        let grid = match p {
            PlayerId::A => &U_A,
            PlayerId::B => &U_B,
            PlayerId::C => &U_C,
        };
        lookup(grid, x.bits(), ActionProfile::bits(y))
    })
}
