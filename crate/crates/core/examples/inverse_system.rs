//! The tower H_3 → H_2 → H_1 under ν, coherent sequences, and the action
//! of truncated p-adic exponents.

use radical_hopf::cyclotomic::FieldDescriptor;
use radical_hopf::profinite::{delta_inf_action, inverse_system_check, nu_h, CoherentH, PadicTrunc};
use radical_hopf::{HElt, Result};

fn main() -> Result<()> {
    let field = FieldDescriptor::new(3, 3)?;
    for i in [0, 3, 9, 10] {
        let h2 = nu_h(3, &HElt::basis(field, i))?;
        let h1 = nu_h(2, &h2)?;
        println!("e_{{3,{i:>2}}} ↦ {h2:?} ↦ {h1:?}");
    }

    let top = HElt::basis(field, 9);
    let levels = vec![nu_h(2, &nu_h(3, &top)?)?, nu_h(3, &top)?, top];
    let c = CoherentH::make_coherent(levels)?;
    println!("\ncoherent sequence: {}", c.to_json());
    let d = PadicTrunc::delta_power(3, 3, 1)?;
    let moved = delta_inf_action(&d, &c)?;
    println!("fixed by δ: {}", moved == c);

    let outcome = inverse_system_check(3, 3)?;
    println!("\ninverse-system suite at p = 3, L = 3: {}", if outcome.passed { "pass" } else { "fail" });
    Ok(())
}
