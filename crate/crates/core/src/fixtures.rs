//! Bundled curves used by the tests, the acceptance suite and the CLI.

use crate::json::parse_descriptor;
use crate::tower::TowerDescriptor;

macro_rules! fixture {
    ($name:ident, $file:literal) => {
        pub fn $name() -> TowerDescriptor {
            parse_descriptor(include_str!(concat!("../fixtures/", $file))).expect(concat!("bundled fixture ", $file))
        }
    };
}

fixture!(as_genus_two, "as_genus_two.json");
fixture!(elliptic_f5, "elliptic_f5.json");
fixture!(mixed_tower_e, "mixed_tower_e.json");
fixture!(artin_mumford, "artin_mumford.json");
fixture!(hermitian_chart, "hermitian_chart.json");
fixture!(fermat_n3_f7, "fermat_n3_f7.json");
fixture!(gcd_counterexample, "gcd_counterexample.json");

/// Every fixture that passes validation, by name.
pub fn validated() -> Vec<(&'static str, TowerDescriptor)> {
    vec![
        ("as_genus_two", as_genus_two()),
        ("elliptic_f5", elliptic_f5()),
        ("mixed_tower_e", mixed_tower_e()),
        ("artin_mumford", artin_mumford()),
        ("hermitian_chart", hermitian_chart()),
        ("fermat_n3_f7", fermat_n3_f7()),
    ]
}

pub fn all() -> Vec<(&'static str, TowerDescriptor)> {
    let mut v = validated();
    v.push(("gcd_counterexample", gcd_counterexample()));
    v
}

pub fn by_name(name: &str) -> Option<TowerDescriptor> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, d)| d)
}
