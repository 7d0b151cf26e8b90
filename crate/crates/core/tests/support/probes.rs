//! Random probe blocks over the pizza sample.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

pub const CLASSES: &[&str] = &[
    "Pizza",
    "Food",
    "PizzaTopping",
    "CheeseTopping",
    "FishTopping",
    "VegetarianPizza",
    "CajunPizza",
    "MargheritaPizza",
    "CheesyPizza",
    "NamedPizza",
    "Hot",
    "Spiciness",
];
const PROPERTIES: &[&str] = &["hasTopping", "hasBase", "hasIngredient"];

fn pick(rng: &mut impl Rng, names: &[String]) -> String {
    if !names.is_empty() && rng.gen_bool(0.3) {
        names.choose(rng).unwrap().clone()
    } else {
        CLASSES.choose(rng).unwrap().to_string()
    }
}

fn class_expr(rng: &mut impl Rng, names: &[String], depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.5) {
        return pick(rng, names);
    }
    match rng.gen_range(0..5) {
        0 => format!("(owland {} {})", class_expr(rng, names, depth - 1), class_expr(rng, names, depth - 1)),
        1 => format!("(owlor {} {})", class_expr(rng, names, depth - 1), class_expr(rng, names, depth - 1)),
        2 => format!("(owlnot {})", class_expr(rng, names, depth - 1)),
        3 => format!("(owlonly {} {})", PROPERTIES.choose(rng).unwrap(), class_expr(rng, names, depth - 1)),
        _ => format!("(owlsome {} {})", PROPERTIES.choose(rng).unwrap(), class_expr(rng, names, depth - 1)),
    }
}

fn assertion(rng: &mut impl Rng, names: &[String], depth: u32, counter: &mut usize) -> String {
    match rng.gen_range(0..if depth == 0 { 3 } else { 5 }) {
        0 => "(coherent?)".to_string(),
        1 => {
            let a = names.choose(rng).cloned().unwrap_or_else(|| "Pizza".into());
            let b = CLASSES.choose(rng).unwrap();
            let flag = if rng.gen_bool(0.3) { " :reflexive" } else { "" };
            format!("(isuperclass? {a} {b}{flag})")
        }
        2 => {
            if rng.gen_bool(0.1) {
                "(isuperclass? NoSuchClass Pizza)".to_string()
            } else {
                format!("(isuperclass? {} {})", CLASSES.choose(rng).unwrap(), CLASSES.choose(rng).unwrap())
            }
        }
        3 => format!("(not {})", assertion(rng, names, depth - 1, counter)),
        _ => block(rng, names, depth - 1, counter),
    }
}

/// A `(with-probe-entities ...)` form. Some blocks deliberately fail part
/// way through, by naming an unknown class or reusing an existing name.
pub fn block(rng: &mut impl Rng, outer: &[String], depth: u32, counter: &mut usize) -> String {
    let mut names = outer.to_vec();
    let mut bindings = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        *counter += 1;
        let name = format!("p{counter}");
        let label = match rng.gen_range(0..20) {
            0 => "Pizza".to_string(),
            _ => format!("Probe{counter}"),
        };
        let mut opts = String::new();
        if rng.gen_bool(0.8) {
            let n = rng.gen_range(1..=2);
            let sups: Vec<String> = (0..n).map(|_| class_expr(rng, &names, 2)).collect();
            opts.push_str(&format!(" :subclass {}", sups.join(" ")));
        }
        if rng.gen_bool(0.3) {
            opts.push_str(&format!(" :equivalent {}", class_expr(rng, &names, 2)));
        }
        if rng.gen_bool(0.2) {
            opts.push_str(&format!(" :label \"probe {counter}\""));
        }
        if rng.gen_bool(0.05) {
            opts.push_str(" :subclass Undefined");
        }
        bindings.push(format!("{name} (owlclass \"{label}\"{opts})"));
        names.push(name);
    }
    let body = assertion(rng, &names, depth, counter);
    format!("(with-probe-entities [{}] {body})", bindings.join(" "))
}
