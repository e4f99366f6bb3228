//! Counting Hopf-Galois structures on Q(ζ_r, a^{1/p^n})/Q(ζ_r) by
//! enumerating regular subgroups normalized by Γ, and on an arbitrary pair.

use radical_hopf::gp_enum::{census, enumerate_regular_normalized, SearchConfig};
use radical_hopf::perm::{FiniteGroup, Perm};
use radical_hopf::Result;

fn main() -> Result<()> {
    let config = SearchConfig::default();
    println!(" p n r  |S|  |Γ|  found  expected  almost classical");
    for (p, n, r) in [(3, 1, 0), (5, 1, 0), (3, 2, 0), (3, 2, 1), (3, 2, 2), (3, 3, 1)] {
        let c = census(p, n, r, &config)?;
        println!(
            " {p} {n} {r} {:>4} {:>4} {:>6} {:>9} {:>10} of {}",
            c.degree,
            c.gamma_order,
            c.count(),
            c.expected,
            c.structures.iter().filter(|s| s.almost_classical).count(),
            c.expected_almost_classical
        );
    }

    let s3 = FiniteGroup::generate(3, vec![Perm::new(vec![1, 2, 0])?, Perm::new(vec![1, 0, 2])?])?;
    let trivial = s3.subgroup(vec![])?;
    let found = enumerate_regular_normalized(&s3, &trivial, &config)?;
    println!(
        "\nGalois S_3 extension: {} structures, {} cyclic",
        found.len(),
        found.iter().filter(|s| s.cyclic).count()
    );
    Ok(())
}
