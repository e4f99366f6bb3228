//! The p Hopf algebras H_{n,i} = K[N_{n,i}]^Γ acting on Q(ζ_1, w_n)/Q(ζ_1),
//! one for each normal complement of Δ in Γ_{n,1}.

use radical_hopf::variants::{containment_matrix, h_variant, hopf_galois_check, normal_complements, VariantGroup};
use radical_hopf::{Rat, Result};

fn main() -> Result<()> {
    let (p, n, a) = (3, 2, Rat::from_int(2));
    let group = VariantGroup::new(p, n, 1)?;
    println!("|Γ_{{2,1}}| = {}, β multiplier c = {}", group.order(), group.beta_multiplier());

    for (i, tau) in normal_complements(p, n)?.iter().enumerate() {
        let h = h_variant(p, n, i as u64, &a)?;
        let check = hopf_galois_check(&h)?;
        println!(
            "N_{{2,{i}}} = ⟨σ^{}β^{}⟩  dim_Q = {}  rank = {}  Hopf-Galois: {}",
            tau.s(),
            tau.b(),
            h.q_dimension(),
            h.base_rank(),
            check.passed
        );
    }

    println!("\nfixed-field containments E_{{2,i}} ⊆ E_{{3,j}}:");
    for row in containment_matrix(p, 3, &a)? {
        println!("  {row:?}");
    }
    Ok(())
}
