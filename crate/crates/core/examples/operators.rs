//! Cherednik operator, fundamental shift operators and their transmutation property.

use bc1::ops::{cherednik, composite_shift, fundamental, hat_e_plus, transmutes, AnyOp, Realization};
use bc1::polynomials::nonsym_jacobi;
use bc1::rational::int;
use bc1::{Label, Multiplicity, Shift};

fn main() -> bc1::Result<()> {
    let k = Multiplicity::ints(2, 1);
    let d = cherednik(&k);
    println!("D_k = {d}");
    let e = nonsym_jacobi(2, &k)?;
    println!("D_k E(2) = {}  (λ̃ = {})", d.apply(&e)?, Label(2).tilde(&k));

    for r in Realization::ALL {
        for l in [Shift::G_PLUS, Shift::G_MINUS, Shift::E_PLUS, Shift::E_MINUS] {
            println!("{r:?} {l}: transmutes = {}", transmutes(r, &fundamental(r, l, &k), l, &k));
        }
    }
    let l = Shift::new(2, 1)?;
    println!("composite {l} (order {}): {}", l.order(), transmutes(Realization::Nonsym, &composite_shift(Realization::Nonsym, l, &k)?, l, &k));

    // only γ = −1 gives a shift operator
    for g in [-1, 0, 1] {
        let op = AnyOp::Matrix(hat_e_plus(&k, &int(g)));
        println!("Ê_+(γ={g}) transmutes: {}", transmutes(Realization::Mat, &op, Shift::E_PLUS, &k));
    }
    Ok(())
}
