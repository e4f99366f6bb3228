//! Q(w_n) # H_n ≅ End_Q(Q(w_n)): the matrices of w^j # e_i, a product in the
//! smash product, and the decomposition of an arbitrary endomorphism.

use radical_hopf::smash::{decompose_endomorphism, iso_check, smash_mult, QMatrix, SmashElt, DEFAULT_SEED};
use radical_hopf::suite::render_nine_matrices;
use radical_hopf::{Rat, Result};

fn main() -> Result<()> {
    let a = Rat::from_int(2);
    println!("matrices of w^j # e_i on Q(2^(1/3)), j-major:\n{}", render_nine_matrices());

    let x = SmashElt::basis(3, 1, a.clone(), 1, 2);
    let y = SmashElt::basis(3, 1, a.clone(), 2, 0);
    println!("(w # e_2)(w² # e_0) = {:?}", smash_mult(&x, &y)?);

    // the linear map fixing 1 and swapping w and w²
    let m = QMatrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])?;
    println!("\ndecomposition of\n{m}as {:?}", decompose_endomorphism(&m, 3, 1, &a)?);

    println!("isomorphism check at (3,2): {}", iso_check(3, 2, &a, DEFAULT_SEED, 16)?.passed);
    Ok(())
}
