//! Truncated Laurent series over a finite field: parsing, arithmetic,
//! precision tracking and square roots near 1.

use bruhat_frattini::local_field::{hensel_sqrt, Gf, Series};

fn main() -> bruhat_frattini::Result<()> {
    let f = Gf::get(5, 1)?;
    let a = Series::parse(f, "2*t^-1 + 1 + 3*t^2 + O(t^10)", "t")?;
    let b = Series::parse(f, "1 + t", "t")?;
    println!("a = {a}");
    println!("a·b = {}", &a * &b);
    println!("a / b = {}", a.div(&b)?);
    println!("ω(a) = {:?}, precision {}", a.valuation()?, a.prec());

    let s = Series::parse(f, "t + 4*t^3 + O(t^12)", "t")?;
    let r = hensel_sqrt(&s)?;
    let one = Series::one(f);
    println!("(1 + r)² - (1 + s) = {}", &(&(&one + &r) * &(&one + &r)) - &(&one + &s));

    let f9 = Gf::get(3, 2)?;
    println!("F_9 modulus {:?}", f9.modulus());
    Ok(())
}
