//! Prints the nominal scenario as TOML, a starting point for custom configs.

fn main() {
    print!("{}", ftgd_core::ScenarioConfig::nominal().to_toml_string());
}
