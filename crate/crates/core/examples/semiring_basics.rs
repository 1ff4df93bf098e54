//! Scalar arithmetic in each semiring, and the deformation of ordinary
//! addition into max as h shrinks.

use idempotent::semiring::{deq_add, dequantize, quantize, DeqParams};
use idempotent::{Scalar, SemiringId};

fn main() -> idempotent::Result<()> {
    let (a, b) = (Scalar::Finite(3.0), Scalar::Finite(-2.0));
    for s in [
        SemiringId::MaxPlus,
        SemiringId::MinPlus,
        SemiringId::MaxMin,
        SemiringId::IntMaxPlus,
    ] {
        println!(
            "{s:>10}: 3 ⊕ -2 = {}, 3 ⊙ -2 = {}, zero = {}, one = {}",
            s.format_scalar(s.add(a, b)),
            s.format_scalar(s.mul(a, b)),
            s.format_scalar(s.zero()),
            s.format_scalar(s.one()),
        );
    }
    let s = SemiringId::MaxPlus;
    println!("inverse of 3 in maxplus: {}", s.format_scalar(s.inv(a)?));
    println!("cube root of 3 in maxplus: {}", s.format_scalar(s.nth_root(a, 3)?));
    println!("inverting zero: {}", s.inv(s.zero()).unwrap_err());

    let b = SemiringId::Boolean;
    let (t, f) = (b.one(), b.zero());
    println!("boolean: 1 ⊕ 0 = {}, 1 ⊙ 0 = {}", b.format_scalar(b.add(t, f)), b.format_scalar(b.mul(t, f)));

    println!("\nh,1 ⊕_h 0.5,e^(2/h) back to 2");
    for h in [1.0, 0.5, 0.1, 0.01] {
        let p = DeqParams::new(h)?;
        let round_trip = dequantize(quantize(Scalar::Finite(2.0), p), p)?;
        println!("{h},{:.6},{}", deq_add(1.0, 0.5, p), s.format_scalar(round_trip));
    }
    Ok(())
}
