//! Exact arithmetic on polynomials in an infinitesimal.
//!
//!     cargo run --example lex_values

use dualgomory::exact::{rat, LexValue, Mixed};

fn main() {
    let a = LexValue::new(vec![rat(1, 1), rat(-5, 1)]);
    let b = LexValue::new(vec![rat(1, 1), rat(0, 1), rat(7, 1)]);
    let c = LexValue::new(vec![rat(1, 1), rat(0, 1)]);
    println!("{a} vs {c}: {:?}", a.lex_cmp(&c).unwrap());
    println!("{b} vs {a}: {:?}", b.lex_cmp(&a));

    let d = a.scale_add(&rat(3, 2), &c).unwrap();
    println!("{a} + 3/2 {c} = {d}");
    println!(
        "positive: {}, negative: {}",
        d.is_positive(),
        LexValue::new(vec![rat(0, 1), rat(-1, 3)]).is_negative()
    );
    println!("927/2 = {}", Mixed(&rat(927, 2)));
}
