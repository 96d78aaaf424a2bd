//! Tour the compiled-in theorem registry.

use geodeduce::theorems::registry;

fn main() {
    let rules = registry();
    println!("{} theorems registered:\n", rules.len());
    for r in rules {
        println!("{}\n    {}\n", r.name, r.statement);
    }
}
