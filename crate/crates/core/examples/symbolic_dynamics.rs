//! The baker map on exact dyadic points and its symbolic description as a
//! shift of binary digits.

use quantum_baker::classical::{baker_step, inverse_baker_step, symbolic_shift, SymbolicString};

fn main() -> quantum_baker::Result<()> {
    let mut s = SymbolicString::new(vec![1, 0, 1], vec![0, 1, 1, 0, 1])?;
    let mut point = s.decode();
    println!("start: q = {}, p = {}", point.q, point.p);
    for step in 1..=5 {
        s = symbolic_shift(&s)?;
        point = baker_step(&point);
        let decoded = s.decode();
        let note = if decoded == point {
            "shift agrees"
        } else {
            "q = 1/2 boundary: the map takes the left branch, the shift the right"
        };
        println!(
            "step {step}: q = {:<8} p = {:<8} {note}",
            point.q.to_string(),
            point.p.to_string()
        );
    }
    match symbolic_shift(&s) {
        Ok(_) => println!("unexpected: more digits"),
        Err(e) => println!("after the last digit: {e}"),
    }
    let back = (0..5).fold(point, |pt, _| inverse_baker_step(&pt));
    println!("five inverse steps: q = {}, p = {}", back.q, back.p);
    Ok(())
}
