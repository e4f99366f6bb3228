//! H_n acting on Q(w_n), w_n = a^{1/p^n}: each e_{n,i} projects onto the
//! line through w^i, the action measures products, and the fixed field is Q.

use radical_hopf::cyclotomic::FieldDescriptor;
use radical_hopf::hopf::{act, fixed_field_check, measuring_check};
use radical_hopf::{HElt, RadicalElt, Rat, Result};

fn main() -> Result<()> {
    let (p, n, a) = (3, 2, Rat::from_int(2));
    let field = FieldDescriptor::new(p, n)?;
    let x = RadicalElt::new(p, n, a.clone(), (1..=9).map(|k| Rat::new(k, 2)).collect())?;
    println!("x = {x:?}");
    for i in [0, 4, 8] {
        println!("e_{{2,{i}}}·x = {:?}", act(&HElt::basis(field, i), &x)?);
    }

    let w = RadicalElt::w_pow(p, n, a.clone(), 1)?;
    let w8 = RadicalElt::w_pow(p, n, a.clone(), 8)?;
    println!("\nw·w^8 = {:?}  (w^9 = a)", w.try_mul(&w8)?);

    println!("measuring: {:?}", measuring_check(p, n, &a)?.passed);
    println!("fixed field is Q: {:?}", fixed_field_check(p, n, &a)?.passed);
    Ok(())
}
