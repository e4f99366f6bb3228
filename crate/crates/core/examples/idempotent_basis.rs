//! The idempotent basis e_{n,i} of H_n: coefficients, duality with the
//! group elements σ^k, and the Hopf structure maps.

use radical_hopf::hopf::{dual_pairing, e_basis, h_antipode, h_comul, h_counit};
use radical_hopf::Result;

fn main() -> Result<()> {
    let (p, n) = (3, 1);
    for i in 0..3 {
        let e = e_basis(p, n, i)?;
        println!(
            "e_{{{n},{i}}} = Σ_j c_j σ^j with c = {:?}",
            e.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }

    println!("\npairing ê_i(σ^k) at p = 3, n = 2:");
    for i in 0..9 {
        let row: Vec<String> =
            (0..9).map(|k| dual_pairing(i, k, 3, 2).map(|r| r.to_string())).collect::<Result<_>>()?;
        println!("  {}", row.join(" "));
    }

    let i = 4;
    println!("\nΔ(e_{{2,{i}}}) = Σ e_a ⊗ e_b over {:?}", h_comul(i, 3, 2)?);
    println!("ε(e_{{2,{i}}}) = {}", h_counit(i));
    println!("S(e_{{2,{i}}}) = e_{{2,{}}}", h_antipode(i, 3, 2)?);
    Ok(())
}
