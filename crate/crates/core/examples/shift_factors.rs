//! Shift factors checked by applying the operator and comparing.

use bc1::ops::Realization;
use bc1::rational::fmt_rat;
use bc1::shift::{check_action, shift_factor, ShiftFactor};
use bc1::{Multiplicity, Shift};

fn main() -> bc1::Result<()> {
    let k = Multiplicity::ints(2, 1);
    for l in [Shift::G_PLUS, Shift::G_MINUS, Shift::E_PLUS, Shift::E_MINUS] {
        for r in [Realization::Sym, Realization::MatU, Realization::Nonsym] {
            let idx = if r == Realization::Nonsym { -1 } else { 2 };
            let f = match shift_factor(r, l, idx, &k)? {
                ShiftFactor::Scalar(c) => fmt_rat(&c),
                ShiftFactor::Matrix(m) => format!("[[{}, {}], [{}, {}]]", fmt_rat(&m[0][0]), fmt_rat(&m[0][1]), fmt_rat(&m[1][0]), fmt_rat(&m[1][1])),
            };
            println!("{r:?} {l} at {idx}: {f}  verified={}", check_action(r, l, idx, &k)?);
        }
    }
    Ok(())
}
