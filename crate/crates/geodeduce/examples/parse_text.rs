//! Translate natural-language problem text into pseudo formal literals.

use geodeduce::formal_lang::print_literal;
use geodeduce::text_parser::parse_text;

fn main() {
    let samples = [
        "N Q ∥ O P. Find length of Q P.",
        "m∠ABC = 40°. AB ⊥ BC. Find m∠ABD.",
        "x1 = x2 = x3",
        "Circle O has radius 5. Find the circumference of circle O.",
        "Find the area of the shaded region",
    ];
    for text in samples {
        println!("text: {}", text);
        let out = parse_text(text);
        for lit in &out.literals {
            println!("  {}", print_literal(lit));
        }
        if !out.unmatched.is_empty() {
            println!("  (unmatched: {})", out.unmatched.join(" "));
        }
    }
}
