//! Exact cyclotomic arithmetic: roots of unity, conjugation, real and
//! imaginary parts, certified signs, and the canonical text form.
//!
//! Run with: cargo run --example field_arithmetic

use sylvester::cyclofield::{cyclotomic_polynomial, parse_element, CycloElement};

fn main() -> sylvester::Result<()> {
    // The 12th cyclotomic polynomial, the minimal polynomial of zeta_12.
    let phi12 = cyclotomic_polynomial(12);
    println!("Phi_12 coefficients (ascending): {phi12:?}");

    // omega = zeta_3 lives in Q(zeta_12) as zeta_12^4.
    let omega = CycloElement::zeta_pow(12, 4)?;
    let one = CycloElement::one(12);
    println!("omega           = {omega}");
    println!("omega^3         = {}", &(&omega * &omega) * &omega);
    println!("conj(omega)     = {}", omega.conj());
    println!("1/(1 + omega)   = {}", (&one + &omega).inv()?);

    // Real and imaginary parts are exact field elements.
    let re = omega.re()?;
    let im = omega.im()?;
    println!("re(omega)       = {re}");
    println!("im(omega)       = {im}  (this is sqrt(3)/2, not a rational)");

    // Certified signs: zero exactly by canonical form, nonzero by adaptive
    // interval evaluation.
    let z = CycloElement::zeta(12)?;
    println!("sign re(omega)  = {}", re.sign_real()?);
    println!("sign re(zeta12) = {}", z.re()?.sign_real()?);
    println!("sign re(i)      = {}", CycloElement::i(12)?.re()?.sign_real()?);

    // The canonical serialization round-trips exactly.
    let text = im.to_string();
    let back = parse_element(&text, 12).expect("canonical text parses");
    assert_eq!(back, im);
    println!("parse(\"{text}\") round-trips exactly");
    Ok(())
}
