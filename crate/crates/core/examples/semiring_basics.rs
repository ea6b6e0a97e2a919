//! The five semirings side by side on the same pair of values.

use tropical::{Semiring, TropicalValue};

fn main() {
    let (a, b) = (TropicalValue::new(3), TropicalValue::new(5));
    println!("{:<8} {:>6} {:>6} {:>6} {:>6}  a≤b", "semiring", "a⊕b", "a⊗b", "zero", "one");
    for s in Semiring::ALL {
        let (a, b) = (s.normalize(a), s.normalize(b));
        println!(
            "{:<8} {:>6} {:>6} {:>6} {:>6}  {}",
            s.token(),
            s.add(a, b).to_string(),
            s.mul(a, b).to_string(),
            s.zero().to_string(),
            s.one().to_string(),
            s.natural_leq(a, b)
        );
    }

    // sentinels absorb instead of wrapping
    let s = Semiring::MaxPlus;
    let big = TropicalValue::new(i32::MAX - 10);
    println!("\nmax-plus: {big} ⊗ 100 = {}", s.mul(big, TropicalValue::new(100)));
    println!("max-plus: -inf ⊗ 7 = {}", s.mul(TropicalValue::NEG_INF, TropicalValue::new(7)));
}
